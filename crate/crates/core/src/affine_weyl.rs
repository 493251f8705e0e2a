//! The affine Weyl group `W_a = ZPhi x| W` in normal form `tau_x . w`, and the
//! Shi coefficient map `w -> (k(w, theta))_{theta in Phi+}`.
//!
//! Generator `0` is `s_0 = tau_{theta_s} s_{theta_s}` with `theta_s` the highest
//! short root; generators `1..=n` are the simple reflections. Left
//! multiplication `u w` acts on the alcove `A_w` by the isometry `u`; right
//! multiplication `w s` crosses a wall of `A_w`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mat_mul, mat_vec};
use crate::root_system::{CartanType, Family, RootSystem};
use crate::shi_characterization::ShiValidator;

/// An element of the finite Weyl group, as its integer matrix on simple-root
/// coordinates (row-major). The inverse matrix is carried alongside.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteWeylElement {
    rank: usize,
    matrix: Vec<i64>,
    inverse: Vec<i64>,
}

impl FiniteWeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut m = vec![0; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        FiniteWeylElement {
            rank,
            inverse: m.clone(),
            matrix: m,
        }
    }

    /// The reflection `s_theta` for the positive root with index `theta`.
    pub fn reflection(rs: &RootSystem, theta: usize) -> Self {
        let n = rs.rank();
        let root = rs.root(theta).coords();
        let mut m = vec![0; n * n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let p = rs.pairing_index(&e, theta);
            for i in 0..n {
                m[i * n + j] = e[i] - p * root[i];
            }
        }
        FiniteWeylElement {
            rank: n,
            inverse: m.clone(),
            matrix: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, x, self.rank)
    }

    pub fn apply_inverse(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.inverse, x, self.rank)
    }

    pub fn compose(&self, other: &Self) -> Self {
        FiniteWeylElement {
            rank: self.rank,
            matrix: mat_mul(&self.matrix, &other.matrix, self.rank),
            inverse: mat_mul(&other.inverse, &self.inverse, self.rank),
        }
    }

    pub fn inverse(&self) -> Self {
        FiniteWeylElement {
            rank: self.rank,
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank)
    }
}

/// `tau_x . w`: first apply the finite part, then translate by `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub translation: Vec<i64>,
    pub finite: FiniteWeylElement,
}

impl AffineElement {
    pub fn identity(rank: usize) -> Self {
        AffineElement {
            translation: vec![0; rank],
            finite: FiniteWeylElement::identity(rank),
        }
    }

    pub fn pure_translation(x: Vec<i64>) -> Self {
        let rank = x.len();
        AffineElement {
            translation: x,
            finite: FiniteWeylElement::identity(rank),
        }
    }

    pub fn from_finite(finite: FiniteWeylElement) -> Self {
        AffineElement {
            translation: vec![0; finite.rank()],
            finite,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&c| c == 0) && self.finite.is_identity()
    }

    /// `(x, u)(y, v) = (x + u(y), uv)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let uy = self.finite.apply(&other.translation);
        AffineElement {
            translation: self.translation.iter().zip(uy).map(|(a, b)| a + b).collect(),
            finite: self.finite.compose(&other.finite),
        }
    }

    pub fn inverse(&self) -> Self {
        let ux = self.finite.apply_inverse(&self.translation);
        AffineElement {
            translation: ux.into_iter().map(|c| -c).collect(),
            finite: self.finite.inverse(),
        }
    }
}

/// `(k(w, theta))` in canonical positive-root order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiVector(pub Vec<i64>);

impl ShiVector {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `sum |k(w, theta)|`, which is the length of `w`.
    pub fn abs_sum(&self) -> u64 {
        self.0.iter().map(|k| k.unsigned_abs()).sum()
    }
}

impl fmt::Display for ShiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// Shi vector with a header naming the root system and the positive-root order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiVectorDoc {
    pub family: Family,
    pub rank: usize,
    pub order: Vec<Vec<i64>>,
    pub entries: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    pub fn of(k: i64) -> Self {
        match k.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector(pub Vec<Sign>);

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s.symbol())?;
        }
        f.write_str(")")
    }
}

/// An element reached by breadth-first search, with the word that reached it.
#[derive(Debug, Clone)]
pub struct BallElement {
    pub element: AffineElement,
    pub word: Vec<usize>,
}

impl BallElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// An affine Weyl group with its root system, generators and alcove validator.
#[derive(Debug, Clone)]
pub struct AffineWeylGroup {
    rs: RootSystem,
    validator: ShiValidator,
    generators: Vec<AffineElement>,
    /// Positive root whose reflection is the finite part of each generator.
    generator_roots: Vec<usize>,
}

impl AffineWeylGroup {
    pub fn new(rs: RootSystem) -> Self {
        let n = rs.rank();
        let theta_s = rs.highest_short_root_index();
        let mut generator_roots = vec![theta_s];
        generator_roots.extend((0..n).map(|i| rs.simple_root_index(i)));

        let generators = generator_roots
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let finite = FiniteWeylElement::reflection(&rs, r);
                let translation = if i == 0 {
                    rs.root(theta_s).coords().to_vec()
                } else {
                    vec![0; n]
                };
                AffineElement { translation, finite }
            })
            .collect();

        AffineWeylGroup {
            validator: ShiValidator::new(&rs),
            rs,
            generators,
            generator_roots,
        }
    }

    pub fn from_type(ct: CartanType) -> Self {
        Self::new(RootSystem::build(ct))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn validator(&self) -> &ShiValidator {
        &self.validator
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_generators(&self) -> usize {
        self.rs.rank() + 1
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement::identity(self.rank())
    }

    pub fn generator(&self, i: usize) -> Result<&AffineElement> {
        self.generators.get(i).ok_or(Error::GeneratorOutOfRange {
            index: i,
            rank: self.rank(),
        })
    }

    /// Positive root index of the finite part of generator `i`.
    pub fn generator_root(&self, i: usize) -> usize {
        self.generator_roots[i]
    }

    pub fn multiply(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        a.multiply(b)
    }

    pub fn inverse(&self, a: &AffineElement) -> AffineElement {
        a.inverse()
    }

    pub fn from_word(&self, word: &[usize]) -> Result<AffineElement> {
        let mut w = self.identity();
        for &i in word {
            w = w.multiply(self.generator(i)?);
        }
        Ok(w)
    }

    pub fn translation(&self, x: Vec<i64>) -> Result<AffineElement> {
        self.rs.check_dim(x.len())?;
        Ok(AffineElement::pure_translation(x))
    }

    /// `s_{theta,p} = tau_{p theta} s_theta` for the positive root `theta`.
    pub fn affine_reflection(&self, theta: usize, p: i64) -> AffineElement {
        AffineElement {
            translation: self.rs.root(theta).coords().iter().map(|c| p * c).collect(),
            finite: FiniteWeylElement::reflection(&self.rs, theta),
        }
    }

    /// `k(tau_x w, theta) = (x, theta^vee) + k(w, theta)`, with
    /// `k(w, theta) = -1` iff `w^{-1}(theta)` is negative.
    pub fn shi_vector(&self, w: &AffineElement) -> ShiVector {
        let sp = self.rs.simple_pairings(&w.translation);
        let entries = (0..self.rs.num_positive())
            .map(|t| {
                let pair: i64 = self
                    .rs
                    .coroot_coordinates(t)
                    .iter()
                    .zip(&sp)
                    .map(|(d, p)| d * p)
                    .sum();
                let pre = w.finite.apply_inverse(self.rs.root(t).coords());
                let finite_part = if pre.iter().any(|&c| c < 0) { -1 } else { 0 };
                pair + finite_part
            })
            .collect();
        ShiVector(entries)
    }

    pub fn shi_document(&self, v: &ShiVector) -> ShiVectorDoc {
        ShiVectorDoc {
            family: self.rs.cartan_type().family,
            rank: self.rank(),
            order: self.rs.positive_roots().iter().map(|r| r.0.clone()).collect(),
            entries: v.0.clone(),
        }
    }

    pub fn length(&self, w: &AffineElement) -> u64 {
        self.shi_vector(w).abs_sum()
    }

    pub fn sign_vector(&self, w: &AffineElement) -> SignVector {
        sign_vector_of(&self.shi_vector(w))
    }

    /// `k(s w, theta) = k(w, sbar(theta)) + k(s, theta)` without validating `v`.
    pub(crate) fn left_mul_shi_unchecked(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let r = self.generator_roots[i];
        let theta_s = self.rs.highest_short_root_index();
        (0..v.len())
            .map(|t| {
                let img = self.rs.reflect_index(r, t);
                let k = img.sign() * v[img.index];
                let ks = if i == 0 {
                    i64::from(t == theta_s)
                } else {
                    -i64::from(t == r)
                };
                k + ks
            })
            .collect()
    }

    /// Shi vector of `s_i w` computed from the Shi vector of `w` alone.
    pub fn left_mul_shi(&self, i: usize, v: &ShiVector) -> Result<ShiVector> {
        if i > self.rank() {
            return Err(Error::GeneratorOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        self.validator.require_alcove(&v.0)?;
        Ok(ShiVector(self.left_mul_shi_unchecked(i, &v.0)))
    }

    /// A reduced word `i_1 ... i_k` with `w = s_{i_1} ... s_{i_k}` for the
    /// alcove with Shi vector `v`. Strips left descents, smallest index first.
    pub fn reduced_word(&self, v: &ShiVector) -> Result<Vec<usize>> {
        self.validator.require_alcove(&v.0)?;
        let mut cur = v.0.clone();
        let mut len = v.abs_sum();
        let mut word = Vec::with_capacity(len as usize);
        while len > 0 {
            let step = (0..=self.rank()).find_map(|i| {
                let next = self.left_mul_shi_unchecked(i, &cur);
                let nl: u64 = next.iter().map(|k| k.unsigned_abs()).sum();
                (nl < len).then_some((i, next, nl))
            });
            let (i, next, nl) = step.ok_or_else(|| {
                Error::Invariant(format!("no left descent for nonzero alcove vector {cur:?}"))
            })?;
            word.push(i);
            cur = next;
            len = nl;
        }
        Ok(word)
    }

    /// Inverse of the Shi coefficient map.
    pub fn element_from_shi_vector(&self, v: &ShiVector) -> Result<AffineElement> {
        let word = self.reduced_word(v)?;
        self.from_word(&word)
    }

    /// All elements of length `<= max_len`, by breadth-first search over right
    /// multiplication, deduplicated on the normal form.
    pub fn ball(&self, max_len: usize) -> Vec<BallElement> {
        let mut seen: HashSet<AffineElement> = HashSet::new();
        let mut out = vec![BallElement {
            element: self.identity(),
            word: Vec::new(),
        }];
        seen.insert(self.identity());
        let mut start = 0;
        for _ in 0..max_len {
            let end = out.len();
            for idx in start..end {
                for g in 0..self.num_generators() {
                    let next = out[idx].element.multiply(&self.generators[g]);
                    if seen.insert(next.clone()) {
                        let mut word = out[idx].word.clone();
                        word.push(g);
                        out.push(BallElement { element: next, word });
                    }
                }
            }
            start = end;
        }
        out
    }

    /// The finite Weyl group with a reduced word (in generators `1..=n`) for
    /// each element, in breadth-first order.
    pub fn finite_group(&self, limit: u128) -> Result<Vec<(FiniteWeylElement, Vec<usize>)>> {
        let order = self.rs.weyl_group_order();
        if order > limit {
            return Err(Error::ResourceGuard {
                what: "finite Weyl group order",
                size: order,
                limit,
                flag: "--allow-huge",
            });
        }
        let n = self.rank();
        let gens: Vec<FiniteWeylElement> = (1..=n).map(|i| self.generators[i].finite.clone()).collect();
        let mut index: HashMap<FiniteWeylElement, usize> = HashMap::new();
        let mut out = vec![(FiniteWeylElement::identity(n), Vec::new())];
        index.insert(FiniteWeylElement::identity(n), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for (g, s) in gens.iter().enumerate() {
                let next = out[idx].0.compose(s);
                if !index.contains_key(&next) {
                    let mut word = out[idx].1.clone();
                    word.push(g + 1);
                    index.insert(next.clone(), out.len());
                    queue.push_back(out.len());
                    out.push((next, word));
                }
            }
        }
        Ok(out)
    }
}

pub fn sign_vector_of(v: &ShiVector) -> SignVector {
    SignVector(v.0.iter().map(|&k| Sign::of(k)).collect())
}

/// Parse a word: a string of digits for rank <= 9, otherwise integers
/// separated by whitespace or commas. The empty string is the identity.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let word: Vec<usize> = if rank <= 9 && !s.contains([' ', ',']) {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::MalformedWord(s.to_string()))?
    } else {
        s.split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::MalformedWord(s.to_string()))?
    };
    if let Some(&bad) = word.iter().find(|&&i| i > rank) {
        return Err(Error::GeneratorOutOfRange { index: bad, rank });
    }
    Ok(word)
}

pub fn format_word(word: &[usize], rank: usize) -> String {
    if rank <= 9 {
        word.iter().map(|i| char::from(b'0' + *i as u8)).collect()
    } else {
        word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    }
}
