//! Split root systems of types A1–A4, B2–B4, C2–C4, D3–D4 and G2 over exact
//! rationals, with their Weyl groups.
//!
//! Roots live in an orthonormal ambient space with the inner product
//! `(u, v) = s · Σ u_i v_i`, where the scale `s` makes short roots have squared
//! length 2 (`s = 2` for type B, `1` otherwise). Realizations:
//!
//! | type | ambient | simple roots |
//! |------|---------|--------------|
//! | A_n  | Q^{n+1} | e_i - e_{i+1} |
//! | B_n  | Q^n     | e_i - e_{i+1}, e_n |
//! | C_n  | Q^n     | e_i - e_{i+1}, 2e_n |
//! | D_n  | Q^n     | e_i - e_{i+1}, e_{n-1} + e_n |
//! | G2   | Q^3     | e_1 - e_2, -2e_1 + e_2 + e_3 |

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::qi;
use crate::Rational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=4).contains(&rank),
            Family::B | Family::C => (2..=4).contains(&rank),
            Family::D => (3..=4).contains(&rank),
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every supported type, in a fixed order.
    pub fn all_supported() -> Vec<CartanType> {
        let mut out = Vec::new();
        for (f, ranks) in
            [(Family::A, 1..=4), (Family::B, 2..=4), (Family::C, 2..=4), (Family::D, 3..=4), (Family::G, 2..=2)]
        {
            for r in ranks {
                out.push(CartanType { family: f, rank: r });
            }
        }
        out
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::G => 3,
            _ => self.rank,
        }
    }

    fn form_scale(&self) -> Rational {
        match self.family {
            Family::B => qi(2),
            _ => qi(1),
        }
    }

    /// Number of roots from the classical formulas.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::G => 12,
        }
    }

    /// Order of the Weyl group from the classical formulas.
    pub fn weyl_order(&self) -> usize {
        let n = self.rank;
        let fact: usize = (1..=n).product();
        match self.family {
            Family::A => fact * (n + 1),
            Family::B | Family::C => (1 << n) * fact,
            Family::D => (1 << (n - 1)) * fact,
            Family::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnsupportedType(s.to_string()))?;
        CartanType::new(family, rank).map_err(|_| Error::UnsupportedType(s.to_string()))
    }
}

/// A vector of the ambient rational space; roots are the vectors in Φ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<Rational>);

impl Root {
    pub fn from_ints(v: &[i64]) -> Self {
        Root(v.iter().map(|&x| qi(x)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x.clone()).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Root {
        Root(self.0.iter().map(|a| a * s).collect())
    }
}

/// Element of the Weyl group: a reduced word in the simple reflections and the
/// permutation of root indices it induces (`perm[i]` is the index of `w(Φ_i)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    form_scale: Rational,
    simple: Vec<Root>,
    /// Positive roots first (height, then decreasing simple coordinates), then
    /// their negatives in the same order.
    all: Vec<Root>,
    simple_coords: Vec<Vec<i64>>,
    gram: Matrix<Rational>,
    index: HashMap<Root, usize>,
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn simple_roots(t: CartanType) -> Vec<Root> {
    let n = t.rank();
    let d = t.ambient_dim();
    let diff = |i: usize, j: usize| {
        let mut v = vec![0i64; d];
        v[i] = 1;
        v[j] = -1;
        Root::from_ints(&v)
    };
    match t.family() {
        Family::A => (0..n).map(|i| diff(i, i + 1)).collect(),
        Family::B => {
            let mut s: Vec<Root> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
            s.push(Root::from_ints(&unit(d, n - 1, 1)));
            s
        }
        Family::C => {
            let mut s: Vec<Root> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
            s.push(Root::from_ints(&unit(d, n - 1, 2)));
            s
        }
        Family::D => {
            let mut s: Vec<Root> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
            let mut last = vec![0; d];
            last[n - 2] = 1;
            last[n - 1] = 1;
            s.push(Root::from_ints(&last));
            s
        }
        Family::G => vec![Root::from_ints(&[1, -1, 0]), Root::from_ints(&[-2, 1, 1])],
    }
}

impl RootSystem {
    pub fn build(t: CartanType) -> RootSystem {
        let simple = simple_roots(t);
        let form_scale = t.form_scale();
        let inner = |u: &Root, v: &Root| -> Rational {
            u.0.iter().zip(&v.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b) * &form_scale
        };
        let reflect = |v: &Root, a: &Root| -> Root {
            let c = qi(2) * inner(v, a) / inner(a, a);
            v.sub(&a.scale(&c))
        };

        // close Δ under the simple reflections
        let mut seen: HashSet<Root> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Root> = simple.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for a in &simple {
                let s = reflect(&r, a);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }

        let rank = simple.len();
        let gram = Matrix::from_fn(rank, rank, |i, j| inner(&simple[i], &simple[j]));
        let gram_inv = gram.inverse().expect("simple roots are independent");
        let simple_coords_of = |r: &Root| -> Vec<i64> {
            let b: Vec<Rational> = simple.iter().map(|a| inner(r, a)).collect();
            gram_inv
                .mul_vec(&b)
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "root with non-integral simple coordinates");
                    c.to_integer().to_i64().unwrap()
                })
                .collect()
        };

        let mut positive: Vec<(Vec<i64>, Root)> =
            seen.iter().map(|r| (simple_coords_of(r), r.clone())).filter(|(c, _)| c.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let mut all = Vec::with_capacity(2 * positive.len());
        let mut simple_coords = Vec::with_capacity(2 * positive.len());
        for (c, r) in &positive {
            all.push(r.clone());
            simple_coords.push(c.clone());
        }
        for (c, r) in &positive {
            all.push(r.neg());
            simple_coords.push(c.iter().map(|x| -x).collect());
        }
        let index = all.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        RootSystem { cartan_type: t, form_scale, simple, all, simple_coords, gram, index }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cartan_type.ambient_dim()
    }

    pub fn simple(&self) -> &[Root] {
        &self.simple
    }

    pub fn positive(&self) -> &[Root] {
        &self.all[..self.num_positive()]
    }

    pub fn roots(&self) -> &[Root] {
        &self.all
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.all[i]
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.all.len() / 2
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    /// Index of `-Φ_i`.
    pub fn negative_index(&self, i: usize) -> usize {
        let np = self.num_positive();
        if i < np {
            i + np
        } else {
            i - np
        }
    }

    /// Index of the `k`-th simple root.
    pub fn simple_index(&self, k: usize) -> usize {
        k
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Coordinates of `Φ_i` in the basis Δ.
    pub fn simple_coords(&self, i: usize) -> &[i64] {
        &self.simple_coords[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.simple_coords[i].iter().sum()
    }

    pub fn inner(&self, u: &Root, v: &Root) -> Rational {
        u.0.iter().zip(&v.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b) * &self.form_scale
    }

    pub fn norm2(&self, u: &Root) -> Rational {
        self.inner(u, u)
    }

    /// `2(v, β)/(β, β)` for arbitrary `v` and a root `β`.
    pub fn pairing(&self, v: &Root, beta: &Root) -> Result<Rational> {
        self.check_dim(v)?;
        if self.index_of(beta).is_none() {
            return Err(Error::NotARoot);
        }
        Ok(qi(2) * self.inner(v, beta) / self.norm2(beta))
    }

    /// Cartan integer `<α, β> = 2(α, β)/(β, β)`.
    pub fn cartan_integer(&self, alpha: &Root, beta: &Root) -> Result<i64> {
        let v = self.pairing(alpha, beta)?;
        if !v.is_integer() {
            return Err(Error::NotIntegral(v.to_string()));
        }
        Ok(v.to_integer().to_i64().unwrap())
    }

    /// Cartan matrix `A_ij = <α_i, α_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan_integer(&self.simple[i], &self.simple[j]).unwrap()).collect())
            .collect()
    }

    fn check_dim(&self, v: &Root) -> Result<()> {
        if v.0.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: v.0.len() });
        }
        Ok(())
    }

    /// `σ_α(v) = v - (2(v, α)/(α, α)) α`.
    pub fn reflect(&self, v: &Root, alpha: &Root) -> Result<Root> {
        let c = self.pairing(v, alpha)?;
        Ok(v.sub(&alpha.scale(&c)))
    }

    /// `(ℓ, κ)` for the α-string `β - ℓα, …, β + κα` through β.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<(usize, usize)> {
        if self.index_of(alpha).is_none() || self.index_of(beta).is_none() {
            return Err(Error::NotARoot);
        }
        if alpha == beta || *alpha == beta.neg() {
            return Err(Error::ProportionalRoots);
        }
        let mut down = 0;
        let mut cur = beta.sub(alpha);
        while self.index_of(&cur).is_some() {
            down += 1;
            cur = cur.sub(alpha);
        }
        let mut up = 0;
        let mut cur = beta.add(alpha);
        while self.index_of(&cur).is_some() {
            up += 1;
            cur = cur.add(alpha);
        }
        Ok((down, up))
    }

    /// Index of `Φ_i + Φ_j` if it is a root.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.all[i].add(&self.all[j]))
    }

    /// Root-index permutation induced by the simple reflection `s_k`.
    pub fn simple_reflection_perm(&self, k: usize) -> Vec<usize> {
        let a = &self.simple[k];
        self.all
            .iter()
            .map(|r| self.index_of(&self.reflect(r, a).unwrap()).expect("Φ closed under reflections"))
            .collect()
    }

    /// Matrix of `σ_α` on the ambient space.
    pub fn reflection_matrix(&self, alpha: &Root) -> Matrix<Rational> {
        let d = self.ambient_dim();
        let n2 = self.norm2(alpha);
        Matrix::from_fn(d, d, |i, j| {
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            delta - qi(2) * &alpha.0[i] * &alpha.0[j] * &self.form_scale / &n2
        })
    }

    /// Matrix of `s_{w_1} s_{w_2} ⋯ s_{w_k}` on the ambient space.
    pub fn weyl_matrix(&self, w: &WeylElement) -> Matrix<Rational> {
        w.word
            .iter()
            .fold(Matrix::identity(self.ambient_dim()), |acc, &k| acc.mul(&self.reflection_matrix(&self.simple[k])))
    }

    pub fn weyl_apply(&self, w: &WeylElement, v: &Root) -> Root {
        Root(self.weyl_matrix(w).mul_vec(&v.0))
    }

    /// Breadth-first enumeration of W by words in the simple reflections;
    /// the identity comes first and every word is of minimal length.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let gens: Vec<Vec<usize>> = (0..self.rank()).map(|k| self.simple_reflection_perm(k)).collect();
        let id = WeylElement { word: Vec::new(), perm: (0..self.len()).collect() };
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.perm.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for (k, s) in gens.iter().enumerate() {
                let perm: Vec<usize> = s.iter().map(|&i| w.perm[i]).collect();
                if seen.insert(perm.clone()) {
                    let mut word = w.word.clone();
                    word.push(k);
                    let e = WeylElement { word, perm };
                    out.push(e.clone());
                    queue.push_back(e);
                }
            }
        }
        out
    }

    /// Coefficients of the coroot `2α/(α,α)` in the simple coroots.
    pub fn coroot_coords(&self, i: usize) -> Vec<i64> {
        let alpha = &self.all[i];
        let n2 = self.norm2(alpha);
        self.simple_coords[i]
            .iter()
            .zip(&self.simple)
            .map(|(&c, s)| {
                // α^∨ = Σ c_k α_k (α_k,α_k)/(α,α) · α_k^∨
                let coeff = qi(c) * self.norm2(s) / &n2;
                assert!(coeff.is_integer());
                coeff.to_integer().to_i64().unwrap()
            })
            .collect()
    }

    /// Index of the highest root.
    pub fn highest_root(&self) -> usize {
        self.num_positive() - 1
    }

    /// Exact rational scale of the ambient form (2 for type B, else 1).
    pub fn form_scale(&self) -> &Rational {
        &self.form_scale
    }
}

/// Build a root system for a supported type.
pub fn build_root_system(t: CartanType) -> RootSystem {
    RootSystem::build(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    #[test]
    fn counts_match_classical() {
        for t in CartanType::all_supported() {
            let r = RootSystem::build(t);
            assert_eq!(r.len(), t.root_count(), "{t}");
            assert_eq!(r.weyl_group().len(), t.weyl_order(), "{t}");
        }
    }

    #[test]
    fn a1_and_a2() {
        let a1 = rs("A1");
        assert_eq!(a1.len(), 2);
        let a2 = rs("A2");
        assert_eq!(a2.len(), 6);
        let pos: Vec<_> = (0..3).map(|i| a2.simple_coords(i).to_vec()).collect();
        assert_eq!(pos, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn g2_lengths() {
        let g2 = rs("G2");
        let short = g2.roots().iter().filter(|r| g2.norm2(r) == qi(2)).count();
        let long = g2.roots().iter().filter(|r| g2.norm2(r) == qi(6)).count();
        assert_eq!((short, long), (6, 6));
    }

    #[test]
    fn cartan_integers() {
        let a2 = rs("A2");
        let s = a2.simple();
        assert_eq!(a2.cartan_integer(&s[0], &s[0]).unwrap(), 2);
        assert_eq!(a2.cartan_integer(&s[0], &s[1]).unwrap(), -1);
        let g2 = rs("G2");
        let s = g2.simple();
        assert_eq!(g2.cartan_integer(&s[1], &s[0]).unwrap(), -3);
        assert_eq!(g2.cartan_integer(&s[0], &s[1]).unwrap(), -1);
        assert_eq!(a2.cartan_integer(&s[0], &Root::from_ints(&[1, 1, 1])), Err(Error::NotARoot));
    }

    #[test]
    fn reflections() {
        let a2 = rs("A2");
        let s = a2.simple();
        assert_eq!(a2.reflect(&s[0], &s[0]).unwrap(), s[0].neg());
        assert_eq!(a2.reflect(&s[1], &s[0]).unwrap(), s[0].add(&s[1]));
        let perp = Root::from_ints(&[1, 1, 1]);
        assert_eq!(a2.reflect(&perp, &s[0]).unwrap(), perp);
    }

    #[test]
    fn root_strings() {
        let a2 = rs("A2");
        let s = a2.simple();
        assert_eq!(a2.root_string(&s[0], &s[1]).unwrap(), (0, 1));
        assert_eq!(a2.root_string(&s[0], &s[0]), Err(Error::ProportionalRoots));
        let g2 = rs("G2");
        let s = g2.simple();
        assert_eq!(g2.root_string(&s[0], &s[1]).unwrap(), (0, 3));
    }

    #[test]
    fn unsupported_types() {
        assert!("E8".parse::<CartanType>().is_err());
        assert!("A5".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert_eq!("b3".parse::<CartanType>().unwrap().to_string(), "B3");
    }

    #[test]
    fn coroots_of_b2() {
        let b2 = rs("B2");
        // long simple α1 = e1 - e2, short α2 = e2; highest root e1 + e2 (long)
        for i in 0..b2.len() {
            let c = b2.coroot_coords(i);
            let back: Vec<i64> = b2.coroot_coords(b2.negative_index(i)).iter().map(|x| -x).collect();
            assert_eq!(c, back);
        }
    }
}
