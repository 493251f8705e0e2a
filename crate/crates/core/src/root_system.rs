//! Irreducible crystallographic root systems built from Cartan data.
//!
//! Roots are integer coordinate vectors in the simple-root basis. The Cartan
//! matrix is stored with `cartan[i][j] = <alpha_j, alpha_i^vee>` (row index is
//! the coroot), so for `x = sum x_j alpha_j` the pairing with a simple coroot is
//! `(x, alpha_i^vee) = sum_j cartan[i][j] * x_j`. Every pairing in the crate is
//! routed through this matrix; no floating point is involved.
//!
//! Simple roots follow Bourbaki's numbering for every family. Squared norms
//! are normalized so that short roots have norm 1.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A validated (family, rank) pair, e.g. `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            let reason = match family {
                Family::A => "A_n needs n >= 1",
                Family::B => "B_n needs n >= 2",
                Family::C => "C_n needs n >= 2",
                Family::D => "D_n needs n >= 4",
                Family::E => "E_n needs 6 <= n <= 8",
                Family::F => "F only exists in rank 4",
                Family::G => "G only exists in rank 2",
            };
            return Err(Error::InvalidType {
                family: family.letter().to_string(),
                rank,
                reason,
            });
        }
        Ok(CartanType { family, rank })
    }

    /// Squared norms of the simple roots and the Dynkin edges (0-based).
    fn dynkin(&self) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.rank;
        let chain: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        match self.family {
            Family::A => (vec![1; n], chain),
            Family::B => {
                let mut norms = vec![2; n];
                norms[n - 1] = 1;
                (norms, chain)
            }
            Family::C => {
                let mut norms = vec![1; n];
                norms[n - 1] = 2;
                (norms, chain)
            }
            Family::D => {
                let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                edges.push((n - 3, n - 1));
                (vec![1; n], edges)
            }
            Family::E => {
                // 1-3-4-5-6-7-8 with 2 attached to 4 (Bourbaki, 1-based).
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((3..n).map(|i| (i - 1, i)));
                (vec![1; n], edges)
            }
            Family::F => (vec![2, 2, 1, 1], chain),
            Family::G => (vec![1, 3], chain),
        }
    }

    /// `C[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_j, alpha_i) / (alpha_i, alpha_i)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let (norms, edges) = self.dynkin();
        let n = self.rank;
        // Twice the Gram matrix; adjacent simple roots have
        // (alpha_i, alpha_j) = -max(|alpha_i|^2, |alpha_j|^2) / 2.
        let mut gram2 = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram2[i][i] = 2 * norms[i];
        }
        for &(i, j) in &edges {
            let v = -norms[i].max(norms[j]);
            gram2[i][j] = v;
            gram2[j][i] = v;
        }
        (0..n)
            .map(|i| (0..n).map(|j| 2 * gram2[i][j] / gram2[i][i]).collect())
            .collect()
    }

    pub(crate) fn simple_norms(&self) -> Vec<i64> {
        self.dynkin().0
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnparsableType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::UnparsableType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// Coordinates of a root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A root `±beta_index` where `beta_index` is a positive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: usize,
    pub negative: bool,
}

impl SignedRoot {
    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

/// Immutable root-system data. Positive roots are stored in canonical order:
/// ascending height, then coordinate vectors in descending lexicographic
/// order (so the simple roots come first, in index order).
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    root_index: HashMap<Vec<i64>, usize>,
    coroot_coords: Vec<Vec<i64>>,
    coroot_index: HashMap<Vec<i64>, usize>,
    norms_sq: Vec<Rational64>,
    heights: Vec<i64>,
    coheights: Vec<i64>,
    highest_root: usize,
    highest_short_root: usize,
    fundamental_weights: Vec<Vec<Rational64>>,
    index_of_connection: i64,
    /// `reflections[a][b] = s_{beta_a}(beta_b)`.
    reflections: Vec<Vec<SignedRoot>>,
}

impl RootSystem {
    pub fn build(cartan_type: CartanType) -> RootSystem {
        let n = cartan_type.rank;
        let cartan = cartan_type.cartan_matrix();
        let simple_norms = cartan_type.simple_norms();

        // Close the simple roots under simple reflections, staying positive.
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while let Some(r) = queue.pop() {
            if !found.insert(r.clone()) {
                continue;
            }
            for i in 0..n {
                let p: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                if p == 0 {
                    continue;
                }
                let mut img = r.clone();
                img[i] -= p;
                if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) {
                    queue.push(img);
                }
            }
        }

        let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let root_index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

        // |theta|^2 = 1/2 theta^T G2 theta with G2 twice the Gram matrix,
        // G2[i][j] = C[i][j] * |alpha_i|^2.
        let norm_of = |r: &[i64]| -> i64 {
            let mut s = 0i64;
            for i in 0..n {
                for j in 0..n {
                    s += r[i] * cartan[i][j] * simple_norms[i] * r[j];
                }
            }
            debug_assert!(s % 2 == 0);
            s / 2
        };
        let norms_int: Vec<i64> = roots.iter().map(|r| norm_of(r)).collect();
        let norms_sq: Vec<Rational64> = norms_int.iter().map(|&v| Rational64::from_integer(v)).collect();

        let coroot_coords: Vec<Vec<i64>> = roots
            .iter()
            .zip(&norms_int)
            .map(|(r, &nr)| {
                (0..n)
                    .map(|i| {
                        let num = r[i] * simple_norms[i];
                        assert!(
                            num % nr == 0,
                            "coroot coordinate of {r:?} is not integral"
                        );
                        num / nr
                    })
                    .collect()
            })
            .collect();
        let coroot_index = coroot_coords
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();

        let heights: Vec<i64> = roots.iter().map(|r| r.iter().sum()).collect();
        let coheights: Vec<i64> = coroot_coords.iter().map(|d| d.iter().sum()).collect();

        let highest_root = (0..roots.len()).max_by_key(|&i| heights[i]).unwrap();
        let min_norm = *norms_int.iter().min().unwrap();
        let highest_short_root = (0..roots.len())
            .filter(|&i| norms_int[i] == min_norm)
            .max_by_key(|&i| heights[i])
            .unwrap();

        let inv = linalg::rational_inverse(&cartan).expect("Cartan matrix is invertible");
        // omega_j solves C x = e_j, i.e. it is column j of C^{-1}.
        let fundamental_weights: Vec<Vec<Rational64>> =
            (0..n).map(|j| (0..n).map(|i| inv[i][j]).collect()).collect();
        let index_of_connection = linalg::determinant(&cartan);

        let mut rs = RootSystem {
            cartan_type,
            cartan,
            positive_roots: roots.into_iter().map(Root).collect(),
            root_index,
            coroot_coords,
            coroot_index,
            norms_sq,
            heights,
            coheights,
            highest_root,
            highest_short_root,
            fundamental_weights,
            index_of_connection,
            reflections: Vec::new(),
        };
        rs.reflections = (0..rs.num_positive())
            .map(|a| {
                (0..rs.num_positive())
                    .map(|b| {
                        let img = rs.reflect_coords(a, rs.positive_roots[b].coords());
                        rs.lookup(&img).expect("root system closed under reflections")
                    })
                    .collect()
            })
            .collect();
        rs
    }

    pub fn from_type(family: Family, rank: usize) -> Result<RootSystem> {
        Ok(RootSystem::build(CartanType::new(family, rank)?))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.positive_roots[index]
    }

    /// Index of the simple root `alpha_{i+1}` (0-based `i`) in canonical order.
    pub fn simple_root_index(&self, i: usize) -> usize {
        // Simple roots occupy the first `rank` slots, in index order.
        debug_assert_eq!(self.positive_roots[i].0.iter().sum::<i64>(), 1);
        debug_assert_eq!(self.positive_roots[i].0[i], 1);
        i
    }

    pub fn is_simple(&self, index: usize) -> bool {
        index < self.rank()
    }

    /// Resolve a coordinate vector to `±beta_k`.
    pub fn lookup(&self, coords: &[i64]) -> Option<SignedRoot> {
        if let Some(&index) = self.root_index.get(coords) {
            return Some(SignedRoot { index, negative: false });
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.root_index
            .get(&neg)
            .map(|&index| SignedRoot { index, negative: true })
    }

    /// Index of a positive root given by its coroot coordinates.
    pub fn lookup_coroot(&self, coroot_coords: &[i64]) -> Option<usize> {
        self.coroot_index.get(coroot_coords).copied()
    }

    /// `(x, alpha_i^vee)` for every simple root.
    pub fn simple_pairings(&self, x: &[i64]) -> Vec<i64> {
        self.cartan
            .iter()
            .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
            .collect()
    }

    /// `(x, beta_index^vee)` for a positive root given by index.
    pub fn pairing_index(&self, x: &[i64], index: usize) -> i64 {
        let sp = self.simple_pairings(x);
        self.coroot_coords[index]
            .iter()
            .zip(&sp)
            .map(|(d, p)| d * p)
            .sum()
    }

    /// `(x, theta^vee)` for `theta` any root (positive or negative).
    pub fn pairing(&self, x: &[i64], theta: &Root) -> Result<i64> {
        self.check_dim(x.len())?;
        let r = self
            .lookup(theta.coords())
            .ok_or_else(|| Error::NotARoot(theta.0.clone()))?;
        Ok(r.sign() * self.pairing_index(x, r.index))
    }

    fn reflect_coords(&self, theta: usize, gamma: &[i64]) -> Vec<i64> {
        let p = self.pairing_index(gamma, theta);
        gamma
            .iter()
            .zip(self.positive_roots[theta].coords())
            .map(|(g, t)| g - p * t)
            .collect()
    }

    /// `s_theta(gamma) = gamma - (gamma, theta^vee) theta`.
    pub fn reflect(&self, theta: &Root, gamma: &Root) -> Result<Root> {
        let t = self
            .lookup(theta.coords())
            .ok_or_else(|| Error::NotARoot(theta.0.clone()))?;
        if self.lookup(gamma.coords()).is_none() {
            return Err(Error::NotARoot(gamma.0.clone()));
        }
        Ok(Root(self.reflect_coords(t.index, gamma.coords())))
    }

    /// `s_{beta_a}(beta_b)` as a signed index, from the precomputed table.
    pub fn reflect_index(&self, a: usize, b: usize) -> SignedRoot {
        self.reflections[a][b]
    }

    /// Coordinates `d` of `theta^vee = sum d_i alpha_i^vee`.
    pub fn coroot_coordinates(&self, index: usize) -> &[i64] {
        &self.coroot_coords[index]
    }

    pub fn norm_sq(&self, index: usize) -> Rational64 {
        self.norms_sq[index]
    }

    /// `(h(theta), h(theta^vee))`.
    pub fn heights(&self, index: usize) -> (i64, i64) {
        (self.heights[index], self.coheights[index])
    }

    pub fn coheight(&self, index: usize) -> i64 {
        self.coheights[index]
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    pub fn highest_root_index(&self) -> usize {
        self.highest_root
    }

    /// The highest short root, written `-alpha_0` in the affine setting.
    pub fn highest_short_root(&self) -> &Root {
        &self.positive_roots[self.highest_short_root]
    }

    pub fn highest_short_root_index(&self) -> usize {
        self.highest_short_root
    }

    pub fn fundamental_weights(&self) -> &[Vec<Rational64>] {
        &self.fundamental_weights
    }

    /// `(x, alpha_i^vee)` for a rational vector `x`.
    pub fn rational_simple_pairings(&self, x: &[Rational64]) -> Vec<Rational64> {
        self.cartan
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .map(|(&c, &v)| Rational64::from_integer(c) * v)
                    .sum()
            })
            .collect()
    }

    pub fn index_of_connection(&self) -> i64 {
        self.index_of_connection
    }

    /// `n! * prod c_i` where the highest root is `sum c_i alpha_i`.
    pub fn component_count(&self) -> u128 {
        let fact: u128 = (1..=self.rank() as u128).product();
        let prod: u128 = self
            .highest_root()
            .coords()
            .iter()
            .map(|&c| c as u128)
            .product();
        fact * prod
    }

    /// `|W| = f * n! * prod c_i`.
    pub fn weyl_group_order(&self) -> u128 {
        self.component_count() * self.index_of_connection as u128
    }

    pub(crate) fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: len,
            });
        }
        Ok(())
    }

    pub fn to_document(&self) -> RootSystemDoc {
        RootSystemDoc {
            family: self.cartan_type.family,
            rank: self.rank(),
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.iter().map(|r| r.0.clone()).collect(),
            coroots: self.coroot_coords.clone(),
            norms_sq: self.norms_sq.iter().map(|r| r.to_integer()).collect(),
            heights: self.heights.clone(),
            coheights: self.coheights.clone(),
            highest_root: self.highest_root().0.clone(),
            highest_short_root: self.highest_short_root().0.clone(),
            fundamental_weights: self
                .fundamental_weights
                .iter()
                .map(|w| w.iter().map(|q| q.to_string()).collect())
                .collect(),
            index_of_connection: self.index_of_connection,
        }
    }
}

/// JSON form of a root system, used for golden files and `info --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDoc {
    pub family: Family,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub norms_sq: Vec<i64>,
    pub heights: Vec<i64>,
    pub coheights: Vec<i64>,
    pub highest_root: Vec<i64>,
    pub highest_short_root: Vec<i64>,
    /// Exact rationals rendered as `p` or `p/q`.
    pub fundamental_weights: Vec<Vec<String>>,
    pub index_of_connection: i64,
}
