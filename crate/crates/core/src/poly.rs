//! Univariate and multivariate polynomials over a [`Scalar`].

use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Dense univariate polynomial, coefficients lowest degree first, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `λ - r`
    pub fn linear_root(r: S) -> Self {
        Self::new(vec![-r, S::one()])
    }

    /// `∏ (λ - r_i)`
    pub fn from_roots(roots: &[S]) -> Self {
        roots.iter().fold(Self::constant(S::one()), |acc, r| acc.mul(&Self::linear_root(r.clone())))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * S::from_i64(k as i64)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Resultant as the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> Result<S> {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Ok(S::zero());
        };
        if m == 0 && n == 0 {
            return Ok(S::one());
        }
        let size = m + n;
        let mut syl = Matrix::zeros(size, size);
        // rows 0..n: shifts of self (highest degree first); rows n..n+m: shifts of other
        for r in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                syl[(r, r + k)] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                syl[(n + r, r + k)] = c.clone();
            }
        }
        syl.determinant()
    }

    /// `disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lc(p)`; constant and linear
    /// polynomials have discriminant 1.
    pub fn discriminant(&self) -> Result<S> {
        let n = match self.degree() {
            None => return Ok(S::zero()),
            Some(0) | Some(1) => return Ok(S::one()),
            Some(n) => n,
        };
        let res = self.resultant(&self.derivative())?;
        let signed = if (n * (n - 1) / 2) % 2 == 1 { -res } else { res };
        Ok(signed / self.leading())
    }
}

/// Sparse multivariate polynomial keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<S> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: S) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, S::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn add_term(&mut self, exps: Vec<u32>, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.remove(&exps).unwrap_or_else(S::zero) + c;
        if !entry.is_zero() {
            self.terms.insert(exps, entry);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, S::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(S::zero(), |acc, (e, c)| {
            let mono = e.iter().zip(point).fold(c.clone(), |m, (&k, x)| (0..k).fold(m, |m, _| m * x.clone()));
            acc + mono
        })
    }

    /// Substitute `x_i ↦ Σ_j m[i][j] t_j`, i.e. return `p(M t)`.
    pub fn linear_substitute(&self, m: &Matrix<S>) -> Self {
        assert_eq!(m.rows(), self.nvars);
        let n = m.cols();
        let images: Vec<MultiPoly<S>> = (0..self.nvars)
            .map(|i| (0..n).fold(Self::zero(n), |acc, j| acc.add(&Self::var(n, j).scale(&m[(i, j)]))))
            .collect();
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let term = e.iter().zip(&images).fold(Self::constant(n, c.clone()), |acc, (&k, img)| acc.mul(&img.pow(k)));
            out = out.add(&term);
        }
        out
    }

    /// Elementary symmetric polynomial `e_k` in `n` variables.
    pub fn elementary_symmetric(n: usize, k: usize) -> Self {
        let mut out = Self::zero(n);
        for subset in k_subsets(n, k) {
            let mut e = vec![0; n];
            for i in subset {
                e[i] = 1;
            }
            out.add_term(e, S::one());
        }
        out
    }

    /// Elementary symmetric polynomial `e_k` of the squares `t_i^2`.
    pub fn elementary_symmetric_of_squares(n: usize, k: usize) -> Self {
        let mut out = Self::zero(n);
        for subset in k_subsets(n, k) {
            let mut e = vec![0; n];
            for i in subset {
                e[i] = 2;
            }
            out.add_term(e, S::one());
        }
        out
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first for readability
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (idx, (e, c)) in items.into_iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;
    use num_rational::BigRational;

    fn p(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[-2, 0, 1]).discriminant().unwrap(), qi(8));
        assert_eq!(p(&[2, -3, 1]).discriminant().unwrap(), qi(1));
        assert_eq!(p(&[0, 0, 1]).discriminant().unwrap(), qi(0));
        // λ³ - λ - 1: -4(-1)^3 - 27 = -23
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant().unwrap(), qi(-23));
    }

    #[test]
    fn from_roots_expands() {
        assert_eq!(Poly::from_roots(&[qi(1), qi(2)]), p(&[2, -3, 1]));
    }

    #[test]
    fn symmetric_functions() {
        let e2 = MultiPoly::<BigRational>::elementary_symmetric(3, 2);
        assert_eq!(e2.eval(&[qi(1), qi(2), qi(3)]), qi(11));
        assert_eq!(k_subsets(4, 2).len(), 6);
        let sq = MultiPoly::<BigRational>::elementary_symmetric_of_squares(2, 2);
        assert_eq!(sq.eval(&[qi(2), qi(3)]), qi(36));
    }

    #[test]
    fn linear_substitution_swaps() {
        let t1 = MultiPoly::<BigRational>::var(2, 0);
        let swap = Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]]).unwrap();
        assert_eq!(t1.linear_substitute(&swap), MultiPoly::var(2, 1));
    }
}
