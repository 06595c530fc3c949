//! Finite fields `F_p[t]/(m(t))` and factorization patterns of polynomials
//! over them (square-free decomposition followed by distinct-degree
//! factorization).
//!
//! Only the degrees and multiplicities of the irreducible factors are needed
//! downstream, so equal-degree splitting is never performed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Element of a finite field: coefficients in `F_p` of `1, t, ..., t^{k-1}`.
pub type FfElem = Vec<u64>;

/// Polynomial over a finite field, lowest degree first, trimmed.
pub type FfPoly = Vec<FfElem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    /// Monic irreducible modulus over `F_p`, lowest degree first.
    modulus: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_below(limit: u64) -> Vec<u64> {
    (2..limit).filter(|&n| is_prime(n)).collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        FiniteField { p, modulus: vec![0, 1] }
    }

    /// `F_p[t]/(m)` for a monic irreducible `m`. Irreducibility is checked.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Option<Self> {
        if !is_prime(p) || modulus.last() != Some(&1) || modulus.len() < 2 {
            return None;
        }
        let base = Self::prime(p);
        let m: FfPoly = modulus.iter().map(|&c| vec![c % p]).collect();
        let pattern = base.factor_pattern(&m);
        if pattern != vec![(modulus.len() - 1, 1)] {
            return None;
        }
        Some(FiniteField { p, modulus: modulus.iter().map(|c| c % p).collect() })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FfElem {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> FfElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, x: u64) -> FfElem {
        let mut e = self.zero();
        e[0] = x % self.p;
        e
    }

    pub fn from_bigint(&self, x: &BigInt) -> FfElem {
        let r = x.mod_floor(&BigInt::from(self.p));
        self.from_u64(r.to_u64().unwrap())
    }

    /// Reduce a rational whose denominator is prime to `p`.
    pub fn from_rational(&self, x: &BigRational) -> Option<FfElem> {
        let d = self.from_bigint(x.denom());
        if self.is_zero(&d) {
            return None;
        }
        Some(self.mul(&self.from_bigint(x.numer()), &self.inv(&d)))
    }

    /// The class of `t` (for `F_p` itself this is the root of the modulus, 0).
    pub fn generator(&self) -> FfElem {
        if self.degree() == 1 {
            return self.from_u64(self.p - self.modulus[0] % self.p);
        }
        let mut e = self.zero();
        e[1] = 1;
        e
    }

    pub fn is_zero(&self, a: &FfElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &FfElem) -> FfElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let k = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
            }
        }
        // reduce by the monic modulus
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + p - mulmod(c, m, p)) % p;
            }
        }
        prod.truncate(k);
        prod
    }

    pub fn pow(&self, a: &FfElem, mut e: u128) -> FfElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: &FfElem) -> FfElem {
        assert!(!self.is_zero(a), "inverse of zero");
        if self.degree() == 1 {
            return vec![powmod(a[0], self.p - 2, self.p)];
        }
        self.pow(a, self.order() - 2)
    }

    /// All field elements; intended for small fields.
    pub fn elements(&self) -> Vec<FfElem> {
        let k = self.degree();
        let mut out = vec![self.zero()];
        for pos in 0..k {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for e in &out {
                for c in 0..self.p {
                    let mut x = e.clone();
                    x[pos] = c;
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    // ---- polynomials over the field ----

    fn trim(&self, mut f: FfPoly) -> FfPoly {
        while f.last().is_some_and(|c| self.is_zero(c)) {
            f.pop();
        }
        f
    }

    pub fn poly_eval(&self, f: &FfPoly, x: &FfElem) -> FfElem {
        f.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    fn poly_is_one(&self, f: &FfPoly) -> bool {
        f.len() == 1 && f[0] == self.one()
    }

    fn poly_sub(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        self.trim((0..n).map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    fn poly_mul(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    fn poly_divrem(&self, a: &FfPoly, b: &FfPoly) -> (FfPoly, FfPoly) {
        let b = self.trim(b.clone());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = self.trim(a.clone());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv_lead = self.inv(b.last().unwrap());
        let mut q = vec![self.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.mul(r.last().unwrap(), &inv_lead);
            for (j, bc) in b.iter().enumerate() {
                r[shift + j] = self.sub(&r[shift + j], &self.mul(&c, bc));
            }
            q[shift] = c;
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    fn poly_monic(&self, f: &FfPoly) -> FfPoly {
        match f.last() {
            None => Vec::new(),
            Some(lead) => {
                let inv = self.inv(lead);
                f.iter().map(|c| self.mul(c, &inv)).collect()
            }
        }
    }

    fn poly_gcd(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        let mut a = self.trim(a.clone());
        let mut b = self.trim(b.clone());
        while !b.is_empty() {
            let (_, r) = self.poly_divrem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    fn poly_derivative(&self, f: &FfPoly) -> FfPoly {
        self.trim(f.iter().enumerate().skip(1).map(|(k, c)| self.mul(c, &self.from_u64(k as u64 % self.p))).collect())
    }

    fn poly_powmod(&self, base: &FfPoly, mut e: u128, m: &FfPoly) -> FfPoly {
        let mut acc = self.poly_divrem(&vec![self.one()], m).1;
        let mut b = self.poly_divrem(base, m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_divrem(&self.poly_mul(&acc, &b), m).1;
            }
            b = self.poly_divrem(&self.poly_mul(&b, &b), m).1;
            e >>= 1;
        }
        acc
    }

    /// `g` with `g^p = f`, for `f` whose derivative vanishes.
    fn poly_pth_root(&self, f: &FfPoly) -> FfPoly {
        let p = self.p as usize;
        let frob_inv = (self.p as u128).pow(self.degree() as u32 - 1);
        self.trim(f.iter().step_by(p).map(|c| self.pow(c, frob_inv)).collect())
    }

    /// Square-free decomposition: pairs `(g, m)` with `f = lc · ∏ g^m`.
    fn square_free(&self, f: &FfPoly) -> Vec<(FfPoly, usize)> {
        let f = self.poly_monic(f);
        let mut out = Vec::new();
        if f.len() <= 1 {
            return out;
        }
        let df = self.poly_derivative(&f);
        let mut c = self.poly_gcd(&f, &df);
        let mut w = self.poly_divrem(&f, &c).0;
        let mut i = 1;
        while !self.poly_is_one(&w) {
            let y = self.poly_gcd(&w, &c);
            let z = self.poly_divrem(&w, &y).0;
            if z.len() > 1 {
                out.push((z, i));
            }
            i += 1;
            c = self.poly_divrem(&c, &y).0;
            w = y;
        }
        if c.len() > 1 {
            let root = self.poly_pth_root(&c);
            for (g, m) in self.square_free(&root) {
                out.push((g, m * self.p as usize));
            }
        }
        out
    }

    /// Degrees of the irreducible factors of a square-free monic `f`.
    fn distinct_degree(&self, f: &FfPoly) -> Vec<usize> {
        let q = self.order();
        let x: FfPoly = vec![self.zero(), self.one()];
        let mut rest = f.clone();
        let mut h = x.clone();
        let mut degrees = Vec::new();
        let mut i = 1;
        while rest.len() > 2 * i {
            h = self.poly_powmod(&h, q, &rest);
            let d = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            let dd = d.len() - 1;
            if dd > 0 {
                degrees.extend(std::iter::repeat_n(i, dd / i));
                rest = self.poly_divrem(&rest, &d).0;
                h = self.poly_divrem(&h, &rest).1;
            }
            i += 1;
        }
        if rest.len() > 1 {
            degrees.push(rest.len() - 1);
        }
        degrees
    }

    /// Factorization pattern of a nonzero polynomial: sorted list of
    /// `(degree, multiplicity)`, one entry per irreducible factor.
    pub fn factor_pattern(&self, f: &FfPoly) -> Vec<(usize, usize)> {
        let f = self.trim(f.clone());
        assert!(!f.is_empty(), "factor pattern of the zero polynomial");
        let mut out = Vec::new();
        for (g, m) in self.square_free(&f) {
            for d in self.distinct_degree(&g) {
                out.push((d, m));
            }
        }
        out.sort();
        out
    }

    /// Roots of `f` in the field by exhaustive evaluation.
    pub fn roots_by_enumeration(&self, f: &FfPoly) -> Vec<FfElem> {
        self.elements().into_iter().filter(|x| self.is_zero(&self.poly_eval(f, x))).collect()
    }

    pub fn poly_from_u64(&self, coeffs: &[u64]) -> FfPoly {
        self.trim(coeffs.iter().map(|&c| self.from_u64(c)).collect())
    }

    /// Reduce a rational polynomial; `None` when a denominator vanishes mod p.
    pub fn poly_from_rationals(&self, coeffs: &[BigRational]) -> Option<FfPoly> {
        let v: Option<FfPoly> = coeffs.iter().map(|c| self.from_rational(c)).collect();
        v.map(|v| self.trim(v))
    }

    pub fn poly_is_zero(&self, f: &FfPoly) -> bool {
        self.trim(f.clone()).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_patterns() {
        let f5 = FiniteField::prime(5);
        // λ² - 2 is irreducible mod 5
        assert_eq!(f5.factor_pattern(&f5.poly_from_u64(&[3, 0, 1])), vec![(2, 1)]);
        let f7 = FiniteField::prime(7);
        assert_eq!(f7.factor_pattern(&f7.poly_from_u64(&[5, 0, 1])), vec![(1, 1), (1, 1)]);
        let f2 = FiniteField::prime(2);
        assert_eq!(f2.factor_pattern(&f2.poly_from_u64(&[0, 0, 1])), vec![(1, 2)]);
    }

    #[test]
    fn inseparable_power() {
        // (x+1)^4 (x^2+x+1) over F_2
        let f2 = FiniteField::prime(2);
        let a = f2.poly_from_u64(&[1, 0, 0, 0, 1]);
        let b = f2.poly_from_u64(&[1, 1, 1]);
        let f = f2.poly_mul(&a, &b);
        assert_eq!(f2.factor_pattern(&f), vec![(1, 4), (2, 1)]);
        // x^3 - 2 over F_3 = (x - 2)^3... x^3 + 1 = (x+1)^3
        let f3 = FiniteField::prime(3);
        assert_eq!(f3.factor_pattern(&f3.poly_from_u64(&[1, 0, 0, 1])), vec![(1, 3)]);
    }

    #[test]
    fn quadratic_extension() {
        // F_9 = F_3[t]/(t^2 + 1)
        let f9 = FiniteField::extension(3, vec![1, 0, 1]).unwrap();
        assert_eq!(f9.order(), 9);
        let t = f9.generator();
        assert_eq!(f9.mul(&t, &t), f9.from_u64(2));
        assert_eq!(f9.mul(&t, &f9.inv(&t)), f9.one());
        // λ² + 1 splits over F_9
        assert_eq!(f9.factor_pattern(&f9.poly_from_u64(&[1, 0, 1])), vec![(1, 1), (1, 1)]);
        assert!(FiniteField::extension(5, vec![1, 0, 1]).is_none()); // t²+1 reducible mod 5
        assert_eq!(f9.elements().len(), 9);
    }

    #[test]
    fn pattern_degrees_sum() {
        let f11 = FiniteField::prime(11);
        for seed in 0..50u64 {
            let coeffs: Vec<u64> = (0..5).map(|i| (seed * 7 + i * 13 + seed * i) % 11).chain([1]).collect();
            let f = f11.poly_from_u64(&coeffs);
            let total: usize = f11.factor_pattern(&f).iter().map(|(d, m)| d * m).sum();
            assert_eq!(total, 5);
        }
    }
}
