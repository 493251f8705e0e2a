//! The `Phi+`-representation: each element of `W_a` acts on `Z^m`
//! (`m = |Phi+|`) by a signed permutation followed by an integer translation,
//! in such a way that `F(w)(iota(x)) = iota(w x)`.
//!
//! For an affine reflection `s_{alpha,p}`:
//!
//! * `L_alpha` has entry `(j, i)` equal to `±1` when `s_alpha(beta_i) = ±beta_j`;
//! * `v_{p,alpha}(gamma) = -p (alpha, s_alpha(gamma)^vee)`, minus a further 1
//!   when `s_alpha(gamma)` is negative.
//!
//! General elements are handled by composing generator images along a reduced
//! word.

use serde::{Deserialize, Serialize};

use crate::affine_weyl::{AffineElement, AffineWeylGroup, ShiVector};
use crate::error::{Error, Result};
use crate::linalg::mat_mul;
use crate::root_system::RootSystem;

/// `x -> linear * x + translation` on `Z^m`. `linear` is dense, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineIsometry {
    dim: usize,
    linear: Vec<i64>,
    translation: Vec<i64>,
}

impl AffineIsometry {
    pub fn identity(dim: usize) -> Self {
        let mut linear = vec![0; dim * dim];
        for i in 0..dim {
            linear[i * dim + i] = 1;
        }
        AffineIsometry {
            dim,
            linear,
            translation: vec![0; dim],
        }
    }

    pub fn new(dim: usize, linear: Vec<i64>, translation: Vec<i64>) -> Result<Self> {
        if linear.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: linear.len(),
            });
        }
        if translation.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: translation.len(),
            });
        }
        Ok(AffineIsometry {
            dim,
            linear,
            translation,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn linear(&self) -> &[i64] {
        &self.linear
    }

    pub fn linear_entry(&self, row: usize, col: usize) -> i64 {
        self.linear[row * self.dim + col]
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn apply(&self, point: &[i64]) -> Result<Vec<i64>> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: point.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                let row = &self.linear[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(point).map(|(a, b)| a * b).sum::<i64>() + self.translation[i]
            })
            .collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let translation = self.apply(&other.translation).expect("matching dimensions");
        AffineIsometry {
            dim: self.dim,
            linear: mat_mul(&self.linear, &other.linear, self.dim),
            translation,
        }
    }

    /// Inverse of a signed-permutation isometry: `L^{-1} = L^T`.
    pub fn inverse(&self) -> Self {
        let n = self.dim;
        let mut linear = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                linear[j * n + i] = self.linear[i * n + j];
            }
        }
        let mut inv = AffineIsometry {
            dim: n,
            linear,
            translation: vec![0; n],
        };
        let t = inv.apply(&self.translation).expect("matching dimensions");
        inv.translation = t.into_iter().map(|c| -c).collect();
        inv
    }

    /// Exactly one nonzero entry, equal to ±1, in every row and column.
    pub fn is_signed_permutation(&self) -> bool {
        let n = self.dim;
        let mut col_hits = vec![0usize; n];
        for row in self.linear.chunks(n) {
            let mut hits = 0;
            for (c, &x) in col_hits.iter_mut().zip(row) {
                match x {
                    0 => {}
                    1 | -1 => {
                        hits += 1;
                        *c += 1;
                    }
                    _ => return false,
                }
            }
            if hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.linear[i * n + j] == self.linear[j * n + i]))
    }
}

/// The `Phi+`-representation of an affine Weyl group.
#[derive(Debug, Clone)]
pub struct PhiRepresentation<'a> {
    group: &'a AffineWeylGroup,
    generators: Vec<AffineIsometry>,
}

impl<'a> PhiRepresentation<'a> {
    pub fn new(group: &'a AffineWeylGroup) -> Self {
        // s_i = s_{alpha_i, 0}; s_0 = s_{theta_s, 1}.
        let generators = (0..group.num_generators())
            .map(|i| {
                let p = i64::from(i == 0);
                reflection_isometry(group.root_system(), group.generator_root(i), p)
            })
            .collect();
        PhiRepresentation { group, generators }
    }

    pub fn group(&self) -> &AffineWeylGroup {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.group.root_system().num_positive()
    }

    /// `L_alpha` for the positive root with index `alpha`.
    pub fn matrix_l(&self, alpha: usize) -> AffineIsometry {
        matrix_l(self.group.root_system(), alpha)
    }

    /// `v_{p,alpha}`.
    pub fn vector_v(&self, p: i64, alpha: usize) -> Vec<i64> {
        vector_v(self.group.root_system(), p, alpha)
    }

    /// `F(s_{alpha,p})(x) = L_alpha(x) + v_{p,alpha}`.
    pub fn reflection_isometry(&self, alpha: usize, p: i64) -> AffineIsometry {
        reflection_isometry(self.group.root_system(), alpha, p)
    }

    pub fn generator_isometry(&self, i: usize) -> Result<&AffineIsometry> {
        self.generators.get(i).ok_or(Error::GeneratorOutOfRange {
            index: i,
            rank: self.group.rank(),
        })
    }

    /// `F(s_{i_1}) ∘ ... ∘ F(s_{i_k})` for a word in the generators.
    pub fn isometry_of_word(&self, word: &[usize]) -> Result<AffineIsometry> {
        let mut f = AffineIsometry::identity(self.dim());
        for &i in word {
            f = f.compose(self.generator_isometry(i)?);
        }
        Ok(f)
    }

    /// `F(s_{i_1} ... s_{i_k})(x)`, applying generator images right to left
    /// without forming the composite matrix.
    pub fn apply_word(&self, word: &[usize], point: &[i64]) -> Result<Vec<i64>> {
        let mut x = point.to_vec();
        for &i in word.iter().rev() {
            x = self.generator_isometry(i)?.apply(&x)?;
        }
        Ok(x)
    }

    pub fn isometry_of(&self, w: &AffineElement) -> AffineIsometry {
        let word = self
            .group
            .reduced_word(&self.group.shi_vector(w))
            .expect("Shi vectors of group elements are alcove vectors");
        self.isometry_of_word(&word).expect("reduced words use valid generators")
    }

    pub fn apply(&self, f: &AffineIsometry, point: &ShiVector) -> Result<ShiVector> {
        f.apply(&point.0).map(ShiVector)
    }
}

fn matrix_l(rs: &RootSystem, alpha: usize) -> AffineIsometry {
    let m = rs.num_positive();
    let mut linear = vec![0; m * m];
    for i in 0..m {
        let img = rs.reflect_index(alpha, i);
        linear[img.index * m + i] = img.sign();
    }
    AffineIsometry {
        dim: m,
        linear,
        translation: vec![0; m],
    }
}

fn vector_v(rs: &RootSystem, p: i64, alpha: usize) -> Vec<i64> {
    let alpha_coords = rs.root(alpha).coords();
    (0..rs.num_positive())
        .map(|gamma| {
            let img = rs.reflect_index(alpha, gamma);
            // (alpha, -b^vee) = -(alpha, b^vee)
            let pair = img.sign() * rs.pairing_index(alpha_coords, img.index);
            if img.negative {
                -1 - p * pair
            } else {
                -p * pair
            }
        })
        .collect()
}

fn reflection_isometry(rs: &RootSystem, alpha: usize, p: i64) -> AffineIsometry {
    let mut f = matrix_l(rs, alpha);
    f.translation = vector_v(rs, p, alpha);
    f
}
