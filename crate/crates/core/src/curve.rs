//! Spectral and cameral curves of `gl_n`-Higgs fields over ℚ or a quadratic
//! field: integrality of the characteristic point, discriminants, fibers over
//! primes and the `|W| : 1` covering check.

use crate::arakelov::{factor_prime, primes_above, FieldElem, FractionalIdeal, NumberField, PrimeAbove};
use crate::charmorph::chi_gl;
use crate::error::{Error, Result};
use crate::finite_field::{is_prime, primes_below, FfPoly, FiniteField};
use crate::linalg::Matrix;
use crate::poly::{MultiPoly, Poly};
use crate::scalar::{as_integer, qi};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `φ ∈ gl_n(O_F) ⊗ L` with the coordinates of every entry over a ℤ-basis of `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct HiggsField {
    pub field: NumberField,
    pub matrix: Matrix<FieldElem>,
    pub twist: FractionalIdeal,
    pub entry_membership: Vec<Vec<Vec<BigInt>>>,
}

impl HiggsField {
    pub fn new(field: NumberField, matrix: Matrix<FieldElem>, twist: FractionalIdeal) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NonSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if matrix.rows() == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        if twist.field() != field {
            return Err(Error::InvalidArgument("twist is over a different field".into()));
        }
        let n = matrix.rows();
        let matrix = Matrix::from_rows(
            matrix
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.in_field(field)).collect())
                .collect::<Result<_>>()?,
        )?;
        let mut membership = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let x = &matrix[(i, j)];
                let c = twist
                    .coords(x)
                    .ok_or_else(|| Error::MembershipFailure(format!("entry ({i},{j}) = {x} is not in the twist")))?;
                row.push(c);
            }
            membership.push(row);
        }
        Ok(HiggsField { field, matrix, twist, entry_membership: membership })
    }

    /// `L = O_F`.
    pub fn untwisted(field: NumberField, matrix: Matrix<FieldElem>) -> Result<Self> {
        Self::new(field, matrix, FractionalIdeal::unit(field))
    }

    pub fn from_rational_matrix(matrix: &Matrix<Rational>) -> Result<Self> {
        Self::untwisted(NumberField::rationals(), matrix.map(|x| FieldElem::rational(x.clone())))
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }
}

/// Invariants `c_1..c_n` of `φ` with, for each `k`, the coordinates of `c_k`
/// over a ℤ-basis of `L^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedCharPoint {
    pub values: Vec<FieldElem>,
    pub ideal_powers: Vec<FractionalIdeal>,
    pub certificates: Vec<Vec<BigInt>>,
}

impl CertifiedCharPoint {
    /// Re-check each certificate by exact membership.
    pub fn verify(&self) -> bool {
        self.values.iter().zip(&self.ideal_powers).zip(&self.certificates).all(|((v, ideal), cert)| {
            let basis = ideal.z_basis();
            let sum = basis.iter().zip(cert).fold(FieldElem::zero(), |acc, (b, c)| {
                acc + b.clone() * FieldElem::rational(Rational::from_integer(c.clone()))
            });
            ideal.contains(v) && sum == *v
        })
    }
}

pub fn characteristic_point(phi: &HiggsField) -> Result<CertifiedCharPoint> {
    let values: Vec<FieldElem> =
        chi_gl(&phi.matrix)?.values.into_iter().map(|v| v.in_field(phi.field)).collect::<Result<_>>()?;
    let mut ideal_powers = Vec::new();
    let mut certificates = Vec::new();
    let mut power = FractionalIdeal::unit(phi.field);
    for (k, v) in values.iter().enumerate() {
        power = power.mul(&phi.twist)?;
        let cert =
            power.coords(v).ok_or_else(|| Error::NotIntegral(format!("c_{} = {v} is not in L^{}", k + 1, k + 1)))?;
        ideal_powers.push(power.clone());
        certificates.push(cert);
    }
    Ok(CertifiedCharPoint { values, ideal_powers, certificates })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Spectral,
    Cameral,
}

impl CurveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveKind::Spectral => "spectral",
            CurveKind::Cameral => "cameral",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicCurve {
    pub kind: CurveKind,
    pub base: NumberField,
    pub n: usize,
    /// `p_φ(λ) = det(λI − φ)`, lowest degree first.
    pub poly: Poly<FieldElem>,
    pub char_point: CertifiedCharPoint,
    pub discriminant: FieldElem,
    pub degenerate: bool,
}

fn spectral_poly(n: usize, a: &[FieldElem]) -> Poly<FieldElem> {
    // λⁿ − c_1 λ^{n−1} + c_2 λ^{n−2} − …
    let mut coeffs = vec![FieldElem::zero(); n + 1];
    coeffs[n] = FieldElem::one();
    for (k, c) in a.iter().enumerate() {
        let k = k + 1;
        coeffs[n - k] = if k % 2 == 1 { -c.clone() } else { c.clone() };
    }
    Poly::new(coeffs)
}

fn build_curve(phi: &HiggsField, kind: CurveKind) -> Result<CharacteristicCurve> {
    let cp = characteristic_point(phi)?;
    let n = phi.n();
    let poly = spectral_poly(n, &cp.values);
    let discriminant = poly.discriminant()?.in_field(phi.field)?;
    let degenerate = discriminant.is_zero();
    Ok(CharacteristicCurve { kind, base: phi.field, n, poly, char_point: cp, discriminant, degenerate })
}

/// `O_F[λ]/(p_φ)`.
pub fn spectral_curve(phi: &HiggsField) -> Result<CharacteristicCurve> {
    build_curve(phi, CurveKind::Spectral)
}

/// `O_F[λ_1..λ_n]/(e_k(λ) − a_k)`.
pub fn cameral_curve(phi: &HiggsField) -> Result<CharacteristicCurve> {
    build_curve(phi, CurveKind::Cameral)
}

pub fn discriminant(phi: &HiggsField) -> Result<FieldElem> {
    Ok(spectral_curve(phi)?.discriminant)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl CharacteristicCurve {
    /// `n` for spectral curves, `n!` for cameral ones.
    pub fn degree(&self) -> usize {
        match self.kind {
            CurveKind::Spectral => self.n,
            CurveKind::Cameral => factorial(self.n),
        }
    }

    /// Coefficients highest degree first.
    pub fn coefficients_high_to_low(&self) -> Vec<FieldElem> {
        self.poly.coeffs().iter().rev().cloned().collect()
    }

    /// Generators `e_k(λ_1..λ_n) − a_k` of the cameral ideal.
    pub fn cameral_equations(&self) -> Vec<MultiPoly<FieldElem>> {
        let n = self.n;
        self.char_point
            .values
            .iter()
            .enumerate()
            .map(|(k, a)| MultiPoly::elementary_symmetric(n, k + 1).sub(&MultiPoly::constant(n, a.clone())))
            .collect()
    }

    fn is_integral(&self) -> bool {
        self.poly.coeffs().iter().all(FieldElem::is_integral)
    }

    fn reduce_at(&self, pr: &PrimeAbove) -> Result<(FiniteField, FfPoly)> {
        let ff = pr.residue_field();
        let coeffs: Option<FfPoly> = self.poly.coeffs().iter().map(|c| pr.reduce(c)).collect();
        let coeffs = coeffs.ok_or_else(|| Error::NotIntegral(format!("coefficients are not {}-integral", pr.p)))?;
        Ok((ff, coeffs))
    }

    /// Factorization pattern `(degree, multiplicity)` of `p_φ` modulo a
    /// prime of `O_F`, relative to its residue field.
    pub fn fiber_at(&self, pr: &PrimeAbove) -> Result<Vec<(usize, usize)>> {
        let (ff, f) = self.reduce_at(pr)?;
        Ok(ff.factor_pattern(&f))
    }

    /// Fiber over the rational prime `p` as `(residue degree f, ramification
    /// e)` over ℚ, so that `Σ e·f = n·[F:ℚ]`. Over ℚ this is the factorization
    /// pattern of `p_φ mod p`.
    pub fn fiber(&self, p: u64) -> Result<Vec<(usize, usize)>> {
        if self.degenerate {
            return Err(Error::DegenerateCurve);
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if !self.is_integral() {
            return Err(Error::NotIntegral("fiber analysis needs integral coefficients".into()));
        }
        let mut out = Vec::new();
        for pr in primes_above(&self.base, p)? {
            for (d, m) in self.fiber_at(&pr)? {
                out.push((d * pr.residue_degree, m * pr.ramification));
            }
        }
        out.sort();
        Ok(out)
    }

    /// `p_φ` has a repeated factor modulo some prime above `p`.
    pub fn is_ramified_at(&self, p: u64) -> Result<bool> {
        if !self.is_integral() {
            return Err(Error::NotIntegral("fiber analysis needs integral coefficients".into()));
        }
        for pr in primes_above(&self.base, p)? {
            if self.fiber_at(&pr)?.iter().any(|&(_, m)| m > 1) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `p` divides the norm of the discriminant (equivalently some prime
    /// above `p` contains it).
    pub fn prime_divides_discriminant(&self, p: u64) -> bool {
        if self.discriminant.is_zero() {
            return true;
        }
        let nrm = self.base.norm_of(&self.discriminant);
        match as_integer(&nrm) {
            Some(z) => (z % BigInt::from(p)).is_zero(),
            None => false,
        }
    }

    /// Ramification data for primes below `pmax`.
    pub fn ramification_report(&self, pmax: u64) -> Result<RamificationReport> {
        if self.degenerate {
            return Err(Error::DegenerateCurve);
        }
        let mut ramified = Vec::new();
        for p in primes_below(pmax) {
            if self.is_ramified_at(p)? {
                ramified.push(RamifiedPrime { p, pattern: self.fiber(p)? });
            }
        }
        let archimedean_collisions = self.base.abs_at_places(&self.discriminant).iter().map(|v| *v == 0.0).collect();
        Ok(RamificationReport { discriminant: self.discriminant.clone(), ramified, archimedean_collisions })
    }

    /// Count fiber points at the smallest prime `p ≥ 3` above which `p_φ`
    /// splits into distinct linear factors, with `p` prime to the
    /// discriminant and to the field discriminant. Spectral points are the
    /// roots in `F_p`; cameral points are the tuples in `F_pⁿ` solving
    /// `e_k(λ) = a_k`, found by enumeration.
    pub fn covering_degree_check(&self) -> Result<CoveringCheck> {
        if self.degenerate {
            return Err(Error::DegenerateCurve);
        }
        if !self.is_integral() {
            return Err(Error::NotIntegral("covering check needs integral coefficients".into()));
        }
        let field_disc = self.base.discriminant();
        for p in primes_below(100_000).into_iter().skip(1) {
            if self.prime_divides_discriminant(p) || field_disc % p as i64 == 0 {
                continue;
            }
            if factor_prime(&self.base, p)?.splitting.len() != self.base.degree() {
                continue;
            }
            let pr = &primes_above(&self.base, p)?[0];
            let (ff, f) = self.reduce_at(pr)?;
            if ff.factor_pattern(&f) != vec![(1, 1); self.n] {
                continue;
            }
            let roots = ff.roots_by_enumeration(&f);
            let a: Vec<u64> = self
                .char_point
                .values
                .iter()
                .map(|v| pr.reduce(v).map(|e| e[0]))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::NotIntegral("characteristic point".into()))?;
            let cameral = cameral_points_mod_p(p, &a);
            let mut root_set: Vec<u64> = roots.iter().map(|r| r[0]).collect();
            root_set.sort_unstable();
            let compatible = cameral.iter().all(|pt| {
                let mut s = pt.clone();
                s.sort_unstable();
                s == root_set
            });
            let spectral_points = roots.len();
            let cameral_points = cameral.len();
            let ok = spectral_points == self.n && cameral_points == factorial(self.n) && compatible;
            return Ok(CoveringCheck { prime: p, spectral_points, cameral_points, compatible, ok });
        }
        Err(Error::InvalidArgument("no totally split prime found below 100000".into()))
    }

    /// Points of the cameral fiber over ℚ when every root of `p_φ` is
    /// rational (and the base is ℚ): all orderings of the roots.
    pub fn rational_cameral_points(&self) -> Result<Vec<Vec<Rational>>> {
        let coeffs = rational_coeffs(&self.poly)?;
        let roots = rational_roots(&coeffs);
        if roots.len() != self.n {
            return Ok(Vec::new());
        }
        Ok(orderings(&roots))
    }

    /// Roots of `p_φ` in `K` when `p_φ` has rational coefficients: rational
    /// roots, plus the roots of a remaining quadratic factor if they lie in
    /// `K`. Returned with multiplicity.
    pub fn roots_in(&self, k: &NumberField) -> Result<Vec<FieldElem>> {
        let coeffs = rational_coeffs(&self.poly)?;
        let mut rest = Poly::new(coeffs);
        let mut out = Vec::new();
        for r in rational_roots(rest.coeffs()) {
            out.push(k.from_rational(r.clone()));
            rest = deflate(&rest, &r);
        }
        if rest.degree() == Some(2) {
            let c = rest.coeffs();
            let (a, b, cc) = (c[2].clone(), c[1].clone(), c[0].clone());
            let disc = &b * &b - qi(4) * &a * &cc;
            if let Some(s) = sqrt_in(k, &disc) {
                let two_a = FieldElem::rational(qi(2) * a);
                let mb = FieldElem::rational(-b);
                out.push((mb.clone() + s.clone()) / two_a.clone());
                out.push((mb - s) / two_a);
            }
        }
        Ok(out)
    }

    /// Cameral points over `K`: all orderings of the roots in `K` if `p_φ`
    /// splits completely there.
    pub fn cameral_points_in(&self, k: &NumberField) -> Result<Vec<Vec<FieldElem>>> {
        let roots = self.roots_in(k)?;
        if roots.len() != self.n {
            return Ok(Vec::new());
        }
        Ok(orderings(&roots))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamifiedPrime {
    pub p: u64,
    pub pattern: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamificationReport {
    pub discriminant: FieldElem,
    pub ramified: Vec<RamifiedPrime>,
    /// Per archimedean place: `σ(p_φ)` has a repeated root.
    pub archimedean_collisions: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringCheck {
    pub prime: u64,
    pub spectral_points: usize,
    pub cameral_points: usize,
    /// Every cameral point is an ordering of the spectral roots.
    pub compatible: bool,
    pub ok: bool,
}

/// Tuples `(λ_1..λ_n) ∈ F_pⁿ` with `e_k(λ) = a_k mod p`; `λ_n` is fixed by `e_1`.
pub fn cameral_points_mod_p(p: u64, a: &[u64]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut prefix = vec![0u64; n - 1];
    loop {
        let s: u64 = prefix.iter().fold(0, |acc, &x| (acc + x) % p);
        let last = (a[0] % p + p - s) % p;
        let mut pt = prefix.clone();
        pt.push(last);
        // e_k via the product Π(1 + λ_i t)
        let mut e = vec![0u64; n + 1];
        e[0] = 1;
        for &x in &pt {
            for k in (1..=n).rev() {
                e[k] = (e[k] + e[k - 1] * x) % p;
            }
        }
        if (1..=n).all(|k| e[k] == a[k - 1] % p) {
            out.push(pt);
        }
        // next prefix
        let mut i = 0;
        loop {
            if i == n - 1 {
                return out;
            }
            prefix[i] += 1;
            if prefix[i] < p {
                break;
            }
            prefix[i] = 0;
            i += 1;
        }
    }
}

fn rational_coeffs(p: &Poly<FieldElem>) -> Result<Vec<Rational>> {
    p.coeffs()
        .iter()
        .map(|c| {
            if c.is_rational() {
                Ok(c.a.clone())
            } else {
                Err(Error::InvalidArgument("polynomial has irrational coefficients".into()))
            }
        })
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let limit = n.sqrt();
    let mut d = BigInt::one();
    while d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

/// Distinct rational roots with multiplicity (rational root theorem).
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut poly = Poly::new(coeffs.to_vec());
    let mut out = Vec::new();
    // zero roots first
    while poly.degree().unwrap_or(0) > 0 && poly.coeff(0).is_zero() {
        out.push(Rational::zero());
        poly = Poly::new(poly.coeffs()[1..].to_vec());
    }
    if poly.degree().unwrap_or(0) == 0 {
        return out;
    }
    let den = poly.coeffs().iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> =
        poly.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let cands_num = divisors(&ints[0]);
    let cands_den = divisors(ints.last().unwrap());
    let mut cands: Vec<Rational> = Vec::new();
    for a in &cands_num {
        for b in &cands_den {
            for s in [1, -1] {
                let r = Rational::new(a * BigInt::from(s), b.clone());
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        while poly.degree().unwrap_or(0) > 0 && poly.eval(&r).is_zero() {
            out.push(r.clone());
            poly = deflate(&poly, &r);
        }
    }
    out
}

fn deflate(p: &Poly<Rational>, r: &Rational) -> Poly<Rational> {
    // synthetic division by (λ − r)
    let c = p.coeffs();
    let n = c.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (0..n).rev() {
        carry = &c[k + 1] + carry * r;
        q[k] = carry.clone();
    }
    Poly::new(q)
}

/// `√x` in `K` for rational `x`, if it exists.
fn sqrt_in(k: &NumberField, x: &Rational) -> Option<FieldElem> {
    if x.is_zero() {
        return Some(FieldElem::zero());
    }
    let rational_sqrt = |q: &Rational| -> Option<Rational> {
        if q.is_negative() {
            return None;
        }
        let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
        (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
    };
    if let Some(s) = rational_sqrt(x) {
        return Some(k.from_rational(s));
    }
    if k.is_rational() {
        return None;
    }
    // x = d·y² ⇒ √x = y·√d
    let y2 = x / qi(k.disc_param());
    let y = rational_sqrt(&y2)?;
    Some(k.sqrt_d() * FieldElem::rational(y))
}

fn orderings<T: Clone + PartialEq>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out: Vec<Vec<T>> = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, head.clone());
            if !out.contains(&tail) {
                out.push(tail);
            }
        }
    }
    out
}
