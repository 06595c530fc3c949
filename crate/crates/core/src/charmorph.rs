//! The characteristic morphism `χ: g → t//W` through fundamental
//! W-invariants, and its `gl_n` realization by characteristic polynomials.
//!
//! Points of `t` are given in ambient coordinates: `n` coordinates for
//! `gl_n`, B, C and D; `n+1` coordinates summing to zero for `A_n`; three
//! coordinates summing to zero for `G2`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::MultiPoly;
use crate::rootsys::{CartanType, Family, RootSystem};
use crate::scalar::{qi, Scalar};
use crate::Rational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Type of the group whose adjoint quotient is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharType {
    /// `gl_n`: torus of diagonal matrices, `W = S_n`.
    Gl(usize),
    Cartan(CartanType),
}

impl CharType {
    /// Number of torus coordinates.
    pub fn nvars(&self) -> usize {
        match self {
            CharType::Gl(n) => *n,
            CharType::Cartan(t) => t.ambient_dim(),
        }
    }

    /// Number of fundamental invariants.
    pub fn rank(&self) -> usize {
        match self {
            CharType::Gl(n) => *n,
            CharType::Cartan(t) => t.rank(),
        }
    }

    /// Weyl-group matrices on the torus coordinates.
    pub fn weyl_matrices(&self) -> Vec<Matrix<Rational>> {
        match self {
            CharType::Gl(1) => vec![Matrix::identity(1)],
            CharType::Gl(n) => {
                let rs = RootSystem::build(CartanType::new(Family::A, n - 1).expect("gl_n with supported n"));
                rs.weyl_group().iter().map(|w| rs.weyl_matrix(w)).collect()
            }
            CharType::Cartan(t) => {
                let rs = RootSystem::build(*t);
                rs.weyl_group().iter().map(|w| rs.weyl_matrix(w)).collect()
            }
        }
    }

    /// Linear conditions cutting `t` out of the ambient coordinates.
    fn on_torus<S: Scalar>(&self, point: &[S]) -> bool {
        match self {
            CharType::Cartan(t) if matches!(t.family(), Family::A | Family::G) => {
                point.iter().fold(S::zero(), |acc, x| acc + x.clone()).is_negligible(1.0)
            }
            _ => true,
        }
    }
}

impl fmt::Display for CharType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharType::Gl(n) => write!(f, "gl_{n}"),
            CharType::Cartan(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for CharType {
    type Err = Error;

    /// `gl_n` / `gln` (1 ≤ n ≤ 5) or any supported Cartan type.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("gl") {
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            return match rest.parse::<usize>() {
                Ok(n) if (1..=5).contains(&n) => Ok(CharType::Gl(n)),
                _ => Err(Error::UnsupportedType(s.to_string())),
            };
        }
        Ok(CharType::Cartan(s.parse()?))
    }
}

/// A W-invariant polynomial on the torus coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPolynomial {
    pub poly: MultiPoly<Rational>,
    pub degree: u32,
}

/// Point of `t//W` in the coordinates given by the fundamental invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoint<S> {
    pub values: Vec<S>,
}

fn inv(poly: MultiPoly<Rational>) -> InvariantPolynomial {
    let degree = poly.total_degree();
    InvariantPolynomial { poly, degree }
}

/// Algebraically independent generators of the invariant ring.
pub fn fundamental_invariants(t: &CharType) -> Vec<InvariantPolynomial> {
    let n = t.nvars();
    let es = |k| MultiPoly::<Rational>::elementary_symmetric(n, k);
    let sq = |k| MultiPoly::<Rational>::elementary_symmetric_of_squares(n, k);
    match t {
        CharType::Gl(_) => (1..=n).map(|k| inv(es(k))).collect(),
        CharType::Cartan(c) => match c.family() {
            Family::A => (2..=n).map(|k| inv(es(k))).collect(),
            Family::B | Family::C => (1..=n).map(|k| inv(sq(k))).collect(),
            Family::D => {
                let mut v: Vec<_> = (1..n).map(|k| inv(sq(k))).collect();
                v.push(inv(es(n)));
                v
            }
            Family::G => vec![inv(sq(1)), inv(es(3).pow(2))],
        },
    }
}

fn eval_generic<S: Scalar>(p: &MultiPoly<Rational>, point: &[S]) -> S {
    p.terms().fold(S::zero(), |acc, (e, c)| {
        let mono = e.iter().zip(point).fold(S::from_rational(c), |m, (&k, x)| (0..k).fold(m, |m, _| m * x.clone()));
        acc + mono
    })
}

/// Evaluate the fundamental invariants at a torus point.
pub fn chi_torus<S: Scalar>(t: &CharType, point: &[S]) -> Result<CharPoint<S>> {
    if point.len() != t.nvars() {
        return Err(Error::DimensionMismatch { expected: t.nvars(), got: point.len() });
    }
    if !t.on_torus(point) {
        return Err(Error::InvalidArgument(format!("point is not in the Cartan subalgebra of {t}")));
    }
    let values = fundamental_invariants(t).iter().map(|f| eval_generic(&f.poly, point)).collect();
    Ok(CharPoint { values })
}

/// `(c_1, …, c_n)` with `det(λI − A) = λⁿ − c_1 λ^{n−1} + c_2 λ^{n−2} − … + (−1)ⁿ c_n`.
pub fn chi_gl<S: Scalar>(a: &Matrix<S>) -> Result<CharPoint<S>> {
    let coeffs = a.char_poly()?;
    let n = a.rows();
    let values = (1..=n)
        .map(|k| {
            let c = coeffs[n - k].clone();
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(CharPoint { values })
}

/// `(1/|W|) Σ_w w·t^e`.
pub fn reynolds_symmetrize(t: &CharType, monomial: &[u32]) -> Result<InvariantPolynomial> {
    let n = t.nvars();
    if monomial.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: monomial.len() });
    }
    let m = MultiPoly::monomial(n, monomial.to_vec(), qi(1));
    let mats = t.weyl_matrices();
    let order = qi(mats.len() as i64);
    let sum = mats.iter().fold(MultiPoly::zero(n), |acc, w| acc.add(&m.linear_substitute(w)));
    Ok(InvariantPolynomial { poly: sum.scale(&(qi(1) / order)), degree: monomial.iter().sum() })
}

/// `p(w·t) = p(t)` for every `w ∈ W`.
/// For `A_n` and `G2` the comparison is made on the sum-zero hyperplane.
pub fn is_w_invariant(t: &CharType, p: &MultiPoly<Rational>) -> bool {
    let n = t.nvars();
    let restrict = match t {
        CharType::Cartan(c) if matches!(c.family(), Family::A | Family::G) => Matrix::from_fn(n, n, |i, j| {
            if i == n - 1 {
                if j == n - 1 {
                    Rational::zero()
                } else {
                    -Rational::one()
                }
            } else if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }),
        _ => Matrix::identity(n),
    };
    let base = p.linear_substitute(&restrict);
    t.weyl_matrices().iter().all(|w| p.linear_substitute(&w.mul(&restrict)) == base)
}

fn partial(p: &MultiPoly<Rational>, i: usize) -> MultiPoly<Rational> {
    let n = p.nvars();
    p.terms().fold(MultiPoly::zero(n), |acc, (e, c)| {
        if e[i] == 0 {
            return acc;
        }
        let mut e2 = e.clone();
        e2[i] -= 1;
        acc.add(&MultiPoly::monomial(n, e2, c * qi(e[i] as i64)))
    })
}

/// Rank of the Jacobian of the invariants along `t` at `point` (equal to
/// the rank of the type exactly when the invariants are independent there).
pub fn jacobian_rank(t: &CharType, invariants: &[InvariantPolynomial], point: &[Rational]) -> Result<usize> {
    if point.len() != t.nvars() {
        return Err(Error::DimensionMismatch { expected: t.nvars(), got: point.len() });
    }
    let n = t.nvars();
    let tangent: Vec<Vec<Rational>> = match t {
        CharType::Cartan(c) if matches!(c.family(), Family::A | Family::G) => {
            RootSystem::build(*c).simple().iter().map(|r| r.coords().to_vec()).collect()
        }
        _ => (0..n).map(|i| (0..n).map(|j| qi(i64::from(i == j))).collect()).collect(),
    };
    let grads: Vec<Vec<Rational>> =
        invariants.iter().map(|f| (0..n).map(|i| partial(&f.poly, i).eval(point)).collect()).collect();
    let jac = Matrix::from_fn(grads.len(), tangent.len(), |i, j| {
        grads[i].iter().zip(&tangent[j]).fold(Rational::zero(), |acc, (g, v)| acc + g * v)
    });
    Ok(jac.rank())
}

/// Power sums `p_1..p_n` from elementary symmetric values `e_1..e_n`.
pub fn power_sums_from_elementary<S: Scalar>(e: &[S]) -> Vec<S> {
    let mut p: Vec<S> = Vec::with_capacity(e.len());
    for k in 1..=e.len() {
        let mut acc = S::from_i64(k as i64) * e[k - 1].clone();
        if k % 2 == 0 {
            acc = -acc;
        }
        for i in 1..k {
            let term = e[i - 1].clone() * p[k - i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        p.push(acc);
    }
    p
}

/// Inverse of [`power_sums_from_elementary`].
pub fn elementary_from_power_sums<S: Scalar>(p: &[S]) -> Vec<S> {
    let mut e: Vec<S> = Vec::with_capacity(p.len());
    for k in 1..=p.len() {
        let mut acc = S::zero();
        for i in 1..=k {
            let prev = if i == k { S::one() } else { e[k - i - 1].clone() };
            let term = prev * p[i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        e.push(acc / S::from_i64(k as i64));
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn ct(s: &str) -> CharType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_types() {
        assert_eq!(ct("gl_3"), CharType::Gl(3));
        assert_eq!(ct("GL2"), CharType::Gl(2));
        assert!(matches!(ct("B2"), CharType::Cartan(_)));
        assert!("gl_9".parse::<CharType>().is_err());
        assert!("E8".parse::<CharType>().is_err());
    }

    #[test]
    fn gl2_invariants() {
        let inv = fundamental_invariants(&CharType::Gl(2));
        assert_eq!(inv[0].poly.to_string(), "t1 + t2");
        assert_eq!(inv[1].poly.to_string(), "t1*t2");
    }

    #[test]
    fn b2_invariants_match_reynolds() {
        let t = ct("B2");
        let inv = fundamental_invariants(&t);
        assert_eq!(inv[0].poly.to_string(), "t1^2 + t2^2");
        assert_eq!(inv[1].poly.to_string(), "t1^2*t2^2");
        // Reynolds of t1^2 is (t1^2 + t2^2)/2
        let r = reynolds_symmetrize(&t, &[2, 0]).unwrap();
        assert_eq!(r.poly, inv[0].poly.scale(&q(1, 2)));
        assert!(reynolds_symmetrize(&t, &[1, 0]).unwrap().poly.is_zero());
    }

    #[test]
    fn degrees_are_classical() {
        let degs = |s: &str| fundamental_invariants(&ct(s)).iter().map(|f| f.degree).collect::<Vec<_>>();
        assert_eq!(degs("A3"), vec![2, 3, 4]);
        assert_eq!(degs("C3"), vec![2, 4, 6]);
        assert_eq!(degs("D4"), vec![2, 4, 6, 4]);
        assert_eq!(degs("G2"), vec![2, 6]);
        assert_eq!(degs("gl_4"), vec![1, 2, 3, 4]);
    }

    #[test]
    fn invariants_are_invariant_and_independent() {
        let points: Vec<i64> = vec![10, -3, 1, 7, 20];
        for t in CartanType::all_supported() {
            let ct = CharType::Cartan(t);
            let inv = fundamental_invariants(&ct);
            assert_eq!(inv.len(), ct.rank());
            for f in &inv {
                assert!(is_w_invariant(&ct, &f.poly), "{t}");
            }
            let n = ct.nvars();
            let mut pt: Vec<Rational> = points[..n].iter().map(|&x| qi(x)).collect();
            if matches!(t.family(), Family::A | Family::G) {
                let s = pt[..n - 1].iter().fold(Rational::zero(), |a, b| a + b);
                pt[n - 1] = -s;
            }
            assert_eq!(jacobian_rank(&ct, &inv, &pt).unwrap(), ct.rank(), "{t}");
        }
    }

    #[test]
    fn g2_reynolds_degree_six() {
        let t = ct("G2");
        let r = reynolds_symmetrize(&t, &[2, 2, 2]).unwrap();
        assert!(is_w_invariant(&t, &r.poly));
        assert_eq!(r.degree, 6);
    }

    #[test]
    fn chi_examples() {
        let p = chi_torus(&CharType::Gl(3), &[qi(1), qi(2), qi(3)]).unwrap();
        assert_eq!(p.values, vec![qi(6), qi(11), qi(6)]);
        let a = Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(2), qi(0)]]).unwrap();
        assert_eq!(chi_gl(&a).unwrap().values, vec![qi(0), qi(-2)]);
        let comp =
            Matrix::from_rows(vec![vec![qi(0), qi(0), qi(1)], vec![qi(1), qi(0), qi(1)], vec![qi(0), qi(1), qi(0)]])
                .unwrap();
        assert_eq!(chi_gl(&comp).unwrap().values, vec![qi(0), qi(-1), qi(1)]);
        assert!(chi_torus(&CharType::Gl(3), &[qi(1)]).is_err());
        assert!(chi_torus(&ct("A1"), &[qi(1), qi(1)]).is_err());
        let nonsq = Matrix::from_rows(vec![vec![qi(1), qi(2)]]).unwrap();
        assert!(matches!(chi_gl(&nonsq), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn newton_round_trip() {
        let e = vec![qi(6), qi(11), qi(6)];
        let p = power_sums_from_elementary(&e);
        assert_eq!(p, vec![qi(6), qi(14), qi(36)]);
        assert_eq!(elementary_from_power_sums(&p), e);
    }
}
