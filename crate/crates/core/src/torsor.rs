//! Metrics on `gl_n` at archimedean places, Cartan involutions and
//! compatibility of metrics, the group action on compatible metrics, and
//! arithmetic `GL_n`-torsors with their slopes.
//!
//! Coordinates on `gl_n(ℝ)` are the entries `E_ij` (index `i·n + j`). At a
//! complex place `gl_n(ℂ)` is viewed as a real Lie algebra of dimension
//! `2n²`: `X = A + iB` has coordinates `(A, B)`.

use crate::arakelov::{arithmetic_degree, FractionalIdeal, MetrizedLineBundle, NumberField};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{OrderedScalar, Scalar};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Real,
    Complex,
}

/// Square matrix with real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<S> {
    pub re: Matrix<S>,
    pub im: Matrix<S>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn real(re: Matrix<S>) -> Self {
        let im = Matrix::zeros(re.rows(), re.cols());
        CMatrix { re, im }
    }

    pub fn new(re: Matrix<S>, im: Matrix<S>) -> Result<Self> {
        if re.rows() != im.rows() || re.cols() != im.cols() {
            return Err(Error::DimensionMismatch { expected: re.rows() * re.cols(), got: im.rows() * im.cols() });
        }
        Ok(CMatrix { re, im })
    }

    pub fn identity(n: usize) -> Self {
        Self::real(Matrix::identity(n))
    }

    pub fn size(&self) -> usize {
        self.re.rows()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero_matrix()
    }

    pub fn mul(&self, o: &Self) -> Self {
        CMatrix { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }

    pub fn add(&self, o: &Self) -> Self {
        CMatrix { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CMatrix { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    /// Inverse via the real `2n × 2n` realization `[[A, −B], [B, A]]`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.size();
        if !self.re.is_square() {
            return Err(Error::NonSquare { rows: self.re.rows(), cols: self.re.cols() });
        }
        if self.is_real() {
            return Ok(Self::real(self.re.inverse()?));
        }
        let big = Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => self.re[(i, j)].clone(),
            (true, false) => -self.im[(i, j - n)].clone(),
            (false, true) => self.im[(i - n, j)].clone(),
            (false, false) => self.re[(i - n, j - n)].clone(),
        });
        let inv = big.inverse()?;
        Ok(CMatrix {
            re: Matrix::from_fn(n, n, |i, j| inv[(i, j)].clone()),
            im: Matrix::from_fn(n, n, |i, j| inv[(i + n, j)].clone()),
        })
    }

    fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

/// The standard Cartan involution and invariant form on `gl_n` at one
/// place, with the form on the center scaled by `center_scale`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanData<S> {
    pub n: usize,
    pub place: Place,
    pub center_scale: S,
    /// `H_K(X, Y) = Re Tr(X₀Y₀) + c·Re(tr X · tr Y)/n`, `X₀` the trace-free part.
    pub h_k: Matrix<S>,
    /// `X ↦ −Xᵀ` (real) or `X ↦ −X*` (complex).
    pub theta_k: Matrix<S>,
    /// The positive form `(X, Y) = −H_K(X, θ_K Y)`.
    pub h_can: Matrix<S>,
}

impl<S: Scalar> CartanData<S> {
    pub fn dim(&self) -> usize {
        match self.place {
            Place::Real => self.n * self.n,
            Place::Complex => 2 * self.n * self.n,
        }
    }

    /// Coordinates → matrix.
    pub fn to_matrix(&self, v: &[S]) -> CMatrix<S> {
        let n = self.n;
        let re = Matrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        let im = match self.place {
            Place::Real => Matrix::zeros(n, n),
            Place::Complex => Matrix::from_fn(n, n, |i, j| v[n * n + i * n + j].clone()),
        };
        CMatrix { re, im }
    }

    /// Matrix → coordinates.
    pub fn to_vector(&self, x: &CMatrix<S>) -> Vec<S> {
        let mut v: Vec<S> = x.re.to_rows().into_iter().flatten().collect();
        if self.place == Place::Complex {
            v.extend(x.im.to_rows().into_iter().flatten());
        }
        v
    }

    fn basis_matrix(&self, k: usize) -> CMatrix<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[k] = S::one();
        self.to_matrix(&v)
    }

    /// Matrix of `Ad(g): X ↦ g X g⁻¹` in the coordinates.
    pub fn ad(&self, g: &CMatrix<S>) -> Result<Matrix<S>> {
        if g.size() != self.n || !g.re.is_square() {
            return Err(Error::DimensionMismatch { expected: self.n, got: g.size() });
        }
        if self.place == Place::Real && !g.is_real() {
            return Err(Error::InvalidArgument("complex group element at a real place".into()));
        }
        let ginv = g.inverse()?;
        let dim = self.dim();
        let cols: Vec<Vec<S>> = (0..dim).map(|k| self.to_vector(&g.mul(&self.basis_matrix(k)).mul(&ginv))).collect();
        Ok(Matrix::from_fn(dim, dim, |i, j| cols[j][i].clone()))
    }

    /// Bracket in coordinates.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.to_vector(&self.to_matrix(x).bracket(&self.to_matrix(y)))
    }
}

/// `CartanData` with `center_scale = 1`, so `H_K(X, Y) = Re Tr(XY)`.
pub fn canonical_form<S: Scalar>(n: usize, place: Place) -> Result<CartanData<S>> {
    cartan_data_with_center_scale(n, place, S::one())
}

pub fn cartan_data_with_center_scale<S: Scalar>(n: usize, place: Place, c: S) -> Result<CartanData<S>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let nn = n * n;
    let shift = (c.clone() - S::one()) / S::from_i64(n as i64);
    // real block: Tr(E_ij E_kl) + shift·δ_ij δ_kl
    let real_h = Matrix::from_fn(nn, nn, |a, b| {
        let (i, j, k, l) = (a / n, a % n, b / n, b % n);
        let mut v = if j == k && i == l { S::one() } else { S::zero() };
        if i == j && k == l {
            v = v + shift.clone();
        }
        v
    });
    let real_theta = Matrix::from_fn(nn, nn, |a, b| {
        let (i, j, k, l) = (a / n, a % n, b / n, b % n);
        if i == l && j == k {
            -S::one()
        } else {
            S::zero()
        }
    });
    let (h_k, theta_k) = match place {
        Place::Real => (real_h, real_theta),
        Place::Complex => {
            let d = 2 * nn;
            let h = Matrix::from_fn(d, d, |a, b| match (a < nn, b < nn) {
                (true, true) => real_h[(a, b)].clone(),
                (false, false) => -real_h[(a - nn, b - nn)].clone(),
                _ => S::zero(),
            });
            let t = Matrix::from_fn(d, d, |a, b| match (a < nn, b < nn) {
                (true, true) => real_theta[(a, b)].clone(),
                (false, false) => -real_theta[(a - nn, b - nn)].clone(),
                _ => S::zero(),
            });
            (h, t)
        }
    };
    let h_can = h_k.mul(&theta_k).scale(&-S::one());
    Ok(CartanData { n, place, center_scale: c, h_k, theta_k, h_can })
}

/// `θ_H = −H_K⁻¹ H`.
pub fn fine_involution<S: Scalar>(cd: &CartanData<S>, h: &Matrix<S>) -> Result<Matrix<S>> {
    if h.rows() != cd.dim() || !h.is_square() {
        return Err(Error::DimensionMismatch { expected: cd.dim(), got: h.rows() });
    }
    let inv = cd.h_k.inverse().map_err(|_| Error::SingularForm)?;
    Ok(inv.mul(h).scale(&-S::one()))
}

/// Per-clause outcome of the compatibility check. Residuals are maximum
/// absolute entries, relative to `max(1, ‖H‖)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompatibilityReport {
    pub spd: bool,
    pub theta_squared: bool,
    pub theta_squared_residual: f64,
    pub h_k_h_inv_h_k: bool,
    pub h_k_h_inv_h_k_residual: f64,
    pub eigenspaces: bool,
    pub k_dim: usize,
    pub p_dim: usize,
    pub k_negative_definite: bool,
    pub p_positive_definite: bool,
    pub k_p_orthogonal: bool,
    pub isometry: bool,
    pub isometry_residual: f64,
    pub automorphism: bool,
    pub automorphism_residual: f64,
    pub passed: bool,
}

fn within<S: Scalar>(residual: f64) -> bool {
    if S::is_exact() {
        residual == 0.0
    } else {
        residual <= S::TOLERANCE
    }
}

pub fn verify_compatibility<S: OrderedScalar>(cd: &CartanData<S>, h: &Matrix<S>) -> Result<CompatibilityReport> {
    let dim = cd.dim();
    if h.rows() != dim || !h.is_square() {
        return Err(Error::DimensionMismatch { expected: dim, got: h.rows() });
    }
    let scale = h.max_abs().max(1.0);
    let spd = h.is_symmetric() && h.is_positive_definite();
    let theta = fine_involution(cd, h)?;
    let id = Matrix::identity(dim);

    let theta_squared_residual = theta.mul(&theta).max_abs_diff(&id);
    let theta_squared = within::<S>(theta_squared_residual);

    let (h_k_h_inv_h_k_residual, isometry_residual) = match h.inverse() {
        Ok(hinv) => {
            let r2 = cd.h_k.mul(&hinv).mul(&cd.h_k).max_abs_diff(h) / scale;
            let r4 = cd.h_k.transpose().mul(&hinv).mul(&cd.h_k).max_abs_diff(h) / scale;
            (r2, r4)
        }
        Err(_) => (f64::INFINITY, f64::INFINITY),
    };

    // eigenspaces of θ_H from the projectors (1 ± θ)/2
    let half = S::one() / S::from_i64(2);
    let kb = id.add(&theta).scale(&half).column_basis();
    let pb = id.sub(&theta).scale(&half).column_basis();
    let (k_dim, p_dim) = (kb.cols(), pb.cols());
    let eig_ok = k_dim + p_dim == dim
        && within::<S>(theta.mul(&kb).max_abs_diff(&kb) / scale)
        && within::<S>(theta.mul(&pb).max_abs_diff(&pb.scale(&-S::one())) / scale);
    let k_form = kb.transpose().mul(&cd.h_k).mul(&kb);
    let p_form = pb.transpose().mul(&cd.h_k).mul(&pb);
    let k_negative_definite = k_dim == 0 || k_form.is_negative_definite();
    let p_positive_definite = p_dim == 0 || p_form.is_positive_definite();
    let cross = kb.transpose().mul(&cd.h_k).mul(&pb);
    let k_p_orthogonal = k_dim == 0 || p_dim == 0 || within::<S>(cross.max_abs() / scale);
    let eigenspaces = eig_ok && k_negative_definite && p_positive_definite && k_p_orthogonal;

    // θ_H[X, Y] = [θ_H X, θ_H Y] on basis pairs
    let mut automorphism_residual: f64 = 0.0;
    let cols: Vec<Vec<S>> = (0..dim).map(|j| theta.column(j)).collect();
    for i in 0..dim {
        let ei = {
            let mut v = vec![S::zero(); dim];
            v[i] = S::one();
            v
        };
        for j in i + 1..dim {
            let mut ej = vec![S::zero(); dim];
            ej[j] = S::one();
            let lhs = theta.mul_vec(&cd.bracket(&ei, &ej));
            let rhs = cd.bracket(&cols[i], &cols[j]);
            for (a, b) in lhs.iter().zip(&rhs) {
                automorphism_residual = automorphism_residual.max((a.clone() - b.clone()).magnitude());
            }
        }
    }
    let automorphism_residual = automorphism_residual / scale;

    let h_k_h_inv_h_k = within::<S>(h_k_h_inv_h_k_residual);
    let isometry = within::<S>(isometry_residual);
    let automorphism = within::<S>(automorphism_residual);
    let passed = spd && theta_squared && h_k_h_inv_h_k && eigenspaces && isometry && automorphism;
    Ok(CompatibilityReport {
        spd,
        theta_squared,
        theta_squared_residual,
        h_k_h_inv_h_k,
        h_k_h_inv_h_k_residual,
        eigenspaces,
        k_dim,
        p_dim,
        k_negative_definite,
        p_positive_definite,
        k_p_orthogonal,
        isometry,
        isometry_residual,
        automorphism,
        automorphism_residual,
        passed,
    })
}

/// A metric on `gl_n`, optionally with a witness `g` such that
/// `H = Ad(g)ᵀ H_can Ad(g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibleMetric<S> {
    pub h: Matrix<S>,
    pub witness: Option<CMatrix<S>>,
}

impl<S: Scalar> CompatibleMetric<S> {
    pub fn canonical(cd: &CartanData<S>) -> Self {
        CompatibleMetric { h: cd.h_can.clone(), witness: Some(CMatrix::identity(cd.n)) }
    }

    pub fn from_witness(cd: &CartanData<S>, g: &CMatrix<S>) -> Result<Self> {
        act(cd, g, &Self::canonical(cd))
    }
}

/// Right action `H ↦ Ad(g)ᵀ H Ad(g)`.
pub fn act<S: Scalar>(cd: &CartanData<S>, g: &CMatrix<S>, h: &CompatibleMetric<S>) -> Result<CompatibleMetric<S>> {
    let ad = cd.ad(g)?;
    let new_h = ad.transpose().mul(&h.h).mul(&ad);
    let witness = h.witness.as_ref().map(|w| w.mul(g));
    Ok(CompatibleMetric { h: new_h, witness })
}

/// Change of basis from `E_ij` coordinates to (trace-free basis, identity):
/// off-diagonal `E_ij`, then `E_ii − E_{i+1,i+1}`, then `I`.
fn block_basis<S: Scalar>(n: usize) -> Matrix<S> {
    let nn = n * n;
    let mut cols: Vec<Vec<S>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![S::zero(); nn];
                v[i * n + j] = S::one();
                cols.push(v);
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut v = vec![S::zero(); nn];
        v[i * n + i] = S::one();
        v[(i + 1) * n + i + 1] = -S::one();
        cols.push(v);
    }
    let mut v = vec![S::zero(); nn];
    for i in 0..n {
        v[i * n + i] = S::one();
    }
    cols.push(v);
    Matrix::from_fn(nn, nn, |i, j| cols[j][i].clone())
}

/// Split a real-place metric into its restriction to the trace-free part
/// and to the center. Fails if the two are not orthogonal.
pub fn split_metric<S: Scalar>(cd: &CartanData<S>, h: &Matrix<S>) -> Result<(Matrix<S>, S)> {
    if cd.place != Place::Real {
        return Err(Error::InvalidArgument("block splitting is implemented for real places".into()));
    }
    let dim = cd.dim();
    if h.rows() != dim || !h.is_square() {
        return Err(Error::DimensionMismatch { expected: dim, got: h.rows() });
    }
    let p = block_basis::<S>(cd.n);
    let hb = p.transpose().mul(h).mul(&p);
    let last = dim - 1;
    let scale = h.max_abs().max(1.0);
    if (0..last).any(|a| !hb[(a, last)].is_negligible(scale) || !hb[(last, a)].is_negligible(scale)) {
        return Err(Error::InvalidArgument("metric is not block diagonal along g' + z".into()));
    }
    let ss = Matrix::from_fn(last, last, |i, j| hb[(i, j)].clone());
    Ok((ss, hb[(last, last)].clone()))
}

/// Inverse of [`split_metric`].
pub fn join_metric<S: Scalar>(cd: &CartanData<S>, ss: &Matrix<S>, center: &S) -> Result<Matrix<S>> {
    if cd.place != Place::Real {
        return Err(Error::InvalidArgument("block splitting is implemented for real places".into()));
    }
    let dim = cd.dim();
    if ss.rows() + 1 != dim || !ss.is_square() {
        return Err(Error::DimensionMismatch { expected: dim - 1, got: ss.rows() });
    }
    let last = dim - 1;
    let hb = Matrix::from_fn(dim, dim, |i, j| {
        if i < last && j < last {
            ss[(i, j)].clone()
        } else if i == last && j == last {
            center.clone()
        } else {
            S::zero()
        }
    });
    let pinv = block_basis::<S>(cd.n).inverse()?;
    Ok(pinv.transpose().mul(&hb).mul(&pinv))
}

/// Cholesky factor `U` (upper triangular) with `G = UᵀU`.
pub fn cholesky_upper(g: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = g.rows();
    if !g.is_square() {
        return Err(Error::NonSquare { rows: g.rows(), cols: g.cols() });
    }
    if !g.is_symmetric() {
        return Err(Error::InvalidArgument("Gram matrix must be symmetric".into()));
    }
    let mut u = Matrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let s: f64 = g[(i, j)] - (0..i).map(|k| u[(k, i)] * u[(k, j)]).sum::<f64>();
            if i == j {
                if s <= 0.0 {
                    return Err(Error::InvalidArgument("Gram matrix must be positive definite".into()));
                }
                u[(i, i)] = s.sqrt();
            } else {
                u[(i, j)] = s / u[(i, i)];
            }
        }
    }
    Ok(u)
}

/// A `GL_n`-torsor over `O_F` given by a pseudo-basis `(I_1, …, I_n)` and,
/// per archimedean place, the Gram matrix of a metric on the standard
/// representation.
#[derive(Clone, Debug, PartialEq)]
pub struct ArithmeticTorsor {
    pub field: NumberField,
    pub rank: usize,
    pub ideals: Vec<FractionalIdeal>,
    pub grams: Vec<Matrix<f64>>,
}

impl ArithmeticTorsor {
    pub fn new(field: NumberField, ideals: Vec<FractionalIdeal>, grams: Vec<Matrix<f64>>) -> Result<Self> {
        let rank = ideals.len();
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        if ideals.iter().any(|i| i.field() != field) {
            return Err(Error::InvalidArgument("ideal over a different field".into()));
        }
        if grams.len() != field.num_places() {
            return Err(Error::DimensionMismatch { expected: field.num_places(), got: grams.len() });
        }
        for g in &grams {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: g.rows() });
            }
            cholesky_upper(g)?;
        }
        Ok(ArithmeticTorsor { field, rank, ideals, grams })
    }

    /// `(O_F)ⁿ` with the standard metric at every place.
    pub fn trivial(field: NumberField, rank: usize) -> Self {
        ArithmeticTorsor {
            field,
            rank,
            ideals: vec![FractionalIdeal::unit(field); rank],
            grams: vec![Matrix::identity(rank); field.num_places()],
        }
    }

    pub fn places(&self) -> Vec<Place> {
        let (r1, r2) = self.field.signature();
        std::iter::repeat_n(Place::Real, r1).chain(std::iter::repeat_n(Place::Complex, r2)).collect()
    }

    /// Frame `g_σ` with `G_σ = g_σᵀ g_σ`.
    pub fn frame(&self, place: usize) -> Result<Matrix<f64>> {
        cholesky_upper(&self.grams[place])
    }

    /// The metric on `gl_n` at `place`, witnessed by the frame.
    pub fn metric(&self, place: usize) -> Result<CompatibleMetric<f64>> {
        let cd = canonical_form::<f64>(self.rank, self.places()[place])?;
        CompatibleMetric::from_witness(&cd, &CMatrix::real(self.frame(place)?))
    }

    /// `det` of the torsor: product ideal, `ρ_σ = √det G_σ`.
    pub fn det_bundle(&self) -> Result<MetrizedLineBundle> {
        let ideal = self.ideals.iter().try_fold(FractionalIdeal::unit(self.field), |acc, i| acc.mul(i))?;
        let metrics = self.grams.iter().map(|g| g.determinant().map(f64::sqrt)).collect::<Result<Vec<_>>>()?;
        MetrizedLineBundle::new(ideal, metrics)
    }

    /// `⟨det^k, μ⟩ = k · deg_ar(det bundle)`.
    pub fn slope(&self, k: i64) -> Result<f64> {
        Ok(k as f64 * arithmetic_degree(&self.field, &self.det_bundle()?))
    }
}

/// Perfect pairing between characters and cocharacters of a split torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterLattice {
    pub rank: usize,
    pub pairing_matrix: Vec<Vec<i64>>,
}

impl CocharacterLattice {
    pub fn new(pairing_matrix: Vec<Vec<i64>>) -> Result<Self> {
        let rank = pairing_matrix.len();
        if pairing_matrix.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidArgument("pairing matrix must be square".into()));
        }
        let m = Matrix::from_fn(rank, rank, |i, j| crate::scalar::qi(pairing_matrix[i][j]));
        if rank > 0 && m.determinant()? == num_traits::Zero::zero() {
            return Err(Error::InvalidArgument("pairing is degenerate".into()));
        }
        Ok(CocharacterLattice { rank, pairing_matrix })
    }

    /// Diagonal torus of `GL_n` with the standard bases.
    pub fn gl(n: usize) -> Self {
        CocharacterLattice {
            rank: n,
            pairing_matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn pair(&self, chi: &[i64], mu: &[i64]) -> Result<i64> {
        for v in [chi, mu] {
            if v.len() != self.rank {
                return Err(Error::DimensionMismatch { expected: self.rank, got: v.len() });
            }
        }
        Ok((0..self.rank)
            .map(|i| (0..self.rank).map(|j| chi[i] * self.pairing_matrix[i][j] * mu[j]).sum::<i64>())
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use crate::Rational;

    fn rmat(rows: &[&[f64]]) -> Matrix<f64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn canonical_gl2_entries() {
        let cd = canonical_form::<Rational>(2, Place::Real).unwrap();
        // E_12 = index 1, E_21 = index 2
        assert_eq!(cd.h_can[(1, 1)], qi(1));
        assert_eq!(cd.h_k[(1, 2)], qi(1));
        assert!(cd.h_can.is_positive_definite());
        assert_eq!(cd.theta_k.mul(&cd.theta_k), Matrix::identity(4));
        // Fix(θ_K) has dimension n(n-1)/2
        let fix = cd.theta_k.sub(&Matrix::identity(4));
        assert_eq!(4 - fix.rank(), 1);
    }

    #[test]
    fn n1_center() {
        let cd = canonical_form::<Rational>(1, Place::Real).unwrap();
        assert_eq!(cd.h_can, Matrix::identity(1));
    }

    #[test]
    fn ad_invariance_exact() {
        let cd = canonical_form::<Rational>(3, Place::Real).unwrap();
        let x: Vec<Rational> = (0..9).map(|i| qi(i - 4)).collect();
        let y: Vec<Rational> = (0..9).map(|i| qi((i * i) % 5 - 2)).collect();
        let z: Vec<Rational> = (0..9).map(|i| q(i + 1, 3)).collect();
        let lhs = cd.h_k.bilinear(&cd.bracket(&x, &y), &z);
        let rhs = cd.h_k.bilinear(&x, &cd.bracket(&y, &z));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_is_compatible_both_places() {
        for place in [Place::Real, Place::Complex] {
            let cd = canonical_form::<f64>(2, place).unwrap();
            let rep = verify_compatibility(&cd, &cd.h_can).unwrap();
            assert!(rep.passed, "{place:?}: {rep:?}");
            assert_eq!(fine_involution(&cd, &cd.h_can).unwrap(), cd.theta_k);
        }
    }

    #[test]
    fn diag_witness_exact() {
        let cd = canonical_form::<Rational>(2, Place::Real).unwrap();
        let g = CMatrix::real(Matrix::diagonal(&[qi(2), qi(1)]));
        let m = CompatibleMetric::from_witness(&cd, &g).unwrap();
        let theta = fine_involution(&cd, &m.h).unwrap();
        assert_eq!(theta.mul(&theta), Matrix::identity(4));
        assert!(verify_compatibility(&cd, &m.h).unwrap().passed);
    }

    #[test]
    fn perturbation_detected() {
        let cd = canonical_form::<f64>(2, Place::Real).unwrap();
        let mut h = cd.h_can.clone();
        h[(0, 1)] += 0.1;
        h[(1, 0)] += 0.1;
        let rep = verify_compatibility(&cd, &h).unwrap();
        assert!(rep.spd);
        assert!(!rep.theta_squared);
        assert!(!rep.passed);
    }

    #[test]
    fn center_rescaling() {
        let cd1 = canonical_form::<Rational>(2, Place::Real).unwrap();
        let (ss, c) = split_metric(&cd1, &cd1.h_can).unwrap();
        let doubled = join_metric(&cd1, &ss, &(c * qi(2))).unwrap();
        assert!(!verify_compatibility(&cd1, &doubled).unwrap().passed);
        let cd2 = cartan_data_with_center_scale(2, Place::Real, qi(2)).unwrap();
        assert_eq!(cd2.h_can, doubled);
        assert!(verify_compatibility(&cd2, &doubled).unwrap().passed);
    }

    #[test]
    fn split_join_round_trip() {
        let cd = canonical_form::<Rational>(3, Place::Real).unwrap();
        let g =
            Matrix::from_rows(vec![vec![qi(1), qi(2), qi(0)], vec![qi(0), qi(1), qi(3)], vec![qi(1), qi(0), qi(1)]])
                .unwrap();
        let m = CompatibleMetric::from_witness(&cd, &CMatrix::real(g)).unwrap();
        let (ss, c) = split_metric(&cd, &m.h).unwrap();
        assert_eq!(join_metric(&cd, &ss, &c).unwrap(), m.h);
    }

    #[test]
    fn right_action() {
        let cd = canonical_form::<Rational>(2, Place::Real).unwrap();
        let g1 = CMatrix::real(Matrix::from_rows(vec![vec![qi(1), qi(1)], vec![qi(0), qi(2)]]).unwrap());
        let g2 = CMatrix::real(Matrix::from_rows(vec![vec![qi(3), qi(0)], vec![qi(1), qi(1)]]).unwrap());
        let h = CompatibleMetric::canonical(&cd);
        let lhs = act(&cd, &g2, &act(&cd, &g1, &h).unwrap()).unwrap();
        let rhs = act(&cd, &g1.mul(&g2), &h).unwrap();
        assert_eq!(lhs.h, rhs.h);
        assert!(act(&cd, &CMatrix::real(Matrix::zeros(2, 2)), &h).is_err());
    }

    #[test]
    fn orthogonal_stabilizes_exactly() {
        // rational rotation (3/5, -4/5; 4/5, 3/5)
        let cd = canonical_form::<Rational>(2, Place::Real).unwrap();
        let k = CMatrix::real(Matrix::from_rows(vec![vec![q(3, 5), q(-4, 5)], vec![q(4, 5), q(3, 5)]]).unwrap());
        let h = CompatibleMetric::canonical(&cd);
        assert_eq!(act(&cd, &k, &h).unwrap().h, cd.h_can);
    }

    #[test]
    fn complex_place_witness() {
        let cd = canonical_form::<f64>(2, Place::Complex).unwrap();
        let g = CMatrix::new(rmat(&[&[1.0, 0.5], &[0.0, 2.0]]), rmat(&[&[0.0, 1.0], &[-0.3, 0.0]])).unwrap();
        let m = CompatibleMetric::from_witness(&cd, &g).unwrap();
        assert!(verify_compatibility(&cd, &m.h).unwrap().passed);
    }

    #[test]
    fn slope_examples() {
        let qf = NumberField::rationals();
        assert!(ArithmeticTorsor::trivial(qf, 3).slope(1).unwrap().abs() < 1e-12);
        let t = 2.5f64;
        let gl1 = ArithmeticTorsor::new(qf, vec![FractionalIdeal::unit(qf)], vec![rmat(&[&[t * t]])]).unwrap();
        assert!((gl1.slope(1).unwrap() + t.ln()).abs() < 1e-12);
        let k: NumberField = "Q(sqrt(-5))".parse().unwrap();
        let p2 = FractionalIdeal::from_generators(k, &[k.from_int(2), k.parse_elem("1 + w").unwrap()]).unwrap();
        let tor = ArithmeticTorsor::new(k, vec![FractionalIdeal::unit(k), p2], vec![Matrix::identity(2)]).unwrap();
        assert!((tor.slope(1).unwrap() + 2f64.ln()).abs() < 1e-12);
        assert!((tor.slope(3).unwrap() - 3.0 * tor.slope(1).unwrap()).abs() < 1e-12);
        assert!(tor.metric(0).unwrap().h == canonical_form::<f64>(2, Place::Complex).unwrap().h_can);
    }

    #[test]
    fn cochar_pairings() {
        assert_eq!(CocharacterLattice::gl(1).pair(&[1], &[1]).unwrap(), 1);
        assert_eq!(CocharacterLattice::gl(4).pair(&[1, 1, 1, 1], &[1, 1, 1, 1]).unwrap(), 4);
        assert_eq!(CocharacterLattice::gl(2).pair(&[3, -1], &[0, 0]).unwrap(), 0);
        assert!(CocharacterLattice::gl(2).pair(&[1], &[1, 1]).is_err());
        assert!(CocharacterLattice::new(vec![vec![1, 2], vec![2, 4]]).is_err());
    }
}
