//! Deciding whether a tuple of integers indexed by the positive roots is the
//! Shi coefficient vector of an alcove.
//!
//! Two independent criteria are implemented. The coroot form checks
//! `k_a + k_b <= k_c <= k_a + k_b + 1` whenever `c^vee = a^vee + b^vee`; the
//! norm form checks
//!
//! ```text
//! |a|^2 k_a + |b|^2 k_b + 1 <= |a+b|^2 (k_{a+b} + 1)
//!                           <= |a|^2 k_a + |b|^2 k_b + |a|^2 + |b|^2 + |a+b|^2 - 1
//! ```
//!
//! whenever `a + b` is a root. They share nothing beyond the root system, so
//! agreement between them is a real cross-check.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::RootSystem;

/// Positions `(a, b, c)` in canonical order with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Coroot,
    Norm,
}

/// Which inequality of a triple failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub criterion: Criterion,
    pub triple: Triple,
    pub side: Side,
}

/// Constraint hypergraphs for both criteria, precomputed once per root system.
#[derive(Debug, Clone)]
pub struct AlcoveTriples {
    pub coroot: Vec<Triple>,
    pub norm: Vec<Triple>,
}

impl AlcoveTriples {
    pub fn new(rs: &RootSystem) -> Self {
        let m = rs.num_positive();
        let mut coroot = Vec::new();
        let mut norm = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let dsum: Vec<i64> = rs
                    .coroot_coordinates(a)
                    .iter()
                    .zip(rs.coroot_coordinates(b))
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(c) = rs.lookup_coroot(&dsum) {
                    coroot.push(Triple { a, b, c });
                }
                let rsum: Vec<i64> = rs
                    .root(a)
                    .coords()
                    .iter()
                    .zip(rs.root(b).coords())
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(r) = rs.lookup(&rsum) {
                    if !r.negative {
                        norm.push(Triple { a, b, c: r.index });
                    }
                }
            }
        }
        AlcoveTriples { coroot, norm }
    }
}

/// Validator bundling a root system's norms with its triples.
#[derive(Debug, Clone)]
pub struct ShiValidator {
    m: usize,
    norms: Vec<Rational64>,
    triples: AlcoveTriples,
}

impl ShiValidator {
    pub fn new(rs: &RootSystem) -> Self {
        ShiValidator {
            m: rs.num_positive(),
            norms: (0..rs.num_positive()).map(|i| rs.norm_sq(i)).collect(),
            triples: AlcoveTriples::new(rs),
        }
    }

    pub fn triples(&self) -> &AlcoveTriples {
        &self.triples
    }

    pub fn dimension(&self) -> usize {
        self.m
    }

    fn check_len(&self, t: &[i64]) -> Result<()> {
        if t.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                actual: t.len(),
            });
        }
        Ok(())
    }

    /// First violated coroot-form inequality, if any.
    pub fn coroot_violation(&self, t: &[i64]) -> Option<Violation> {
        self.triples.coroot.iter().find_map(|&tr| {
            let lo = t[tr.a] + t[tr.b];
            let side = if t[tr.c] < lo {
                Side::Lower
            } else if t[tr.c] > lo + 1 {
                Side::Upper
            } else {
                return None;
            };
            Some(Violation {
                criterion: Criterion::Coroot,
                triple: tr,
                side,
            })
        })
    }

    /// First violated norm-form inequality, if any. Exact rational arithmetic.
    pub fn norm_violation(&self, t: &[i64]) -> Option<Violation> {
        self.triples.norm.iter().find_map(|&tr| {
            let (na, nb, nc) = (self.norms[tr.a], self.norms[tr.b], self.norms[tr.c]);
            let one = Rational64::from_integer(1);
            let ka = Rational64::from_integer(t[tr.a]);
            let kb = Rational64::from_integer(t[tr.b]);
            let kc = Rational64::from_integer(t[tr.c]);
            let base = na * ka + nb * kb;
            let mid = nc * (kc + one);
            let side = if base + one > mid {
                Side::Lower
            } else if mid > base + na + nb + nc - one {
                Side::Upper
            } else {
                return None;
            };
            Some(Violation {
                criterion: Criterion::Norm,
                triple: tr,
                side,
            })
        })
    }

    pub fn is_alcove_coroot_form(&self, t: &[i64]) -> bool {
        t.len() == self.m && self.coroot_violation(t).is_none()
    }

    pub fn is_alcove_norm_form(&self, t: &[i64]) -> bool {
        t.len() == self.m && self.norm_violation(t).is_none()
    }

    /// Length-checked verdict with the first violated triple.
    pub fn check(&self, t: &[i64], criterion: Criterion) -> Result<Option<Violation>> {
        self.check_len(t)?;
        Ok(match criterion {
            Criterion::Coroot => self.coroot_violation(t),
            Criterion::Norm => self.norm_violation(t),
        })
    }

    /// `Ok(())` when `t` passes the coroot form, otherwise a typed error.
    pub fn require_alcove(&self, t: &[i64]) -> Result<()> {
        self.check_len(t)?;
        match self.coroot_violation(t) {
            None => Ok(()),
            Some(v) => Err(Error::NotAnAlcove(format!(
                "{:?} inequality fails on positions ({}, {}, {})",
                v.side, v.triple.a, v.triple.b, v.triple.c
            ))),
        }
    }
}


#[cfg(test)]
mod equivalence {
    use super::*;

    fn sweep(t: &str, bound: i64) -> usize {
        let rs = RootSystem::build(t.parse().unwrap());
        let v = ShiValidator::new(&rs);
        let m = rs.num_positive();
        let width = (2 * bound + 1) as usize;
        let mut tuple = vec![-bound; m];
        let mut disagreements = 0;
        for _ in 0..width.pow(m as u32) {
            if v.is_alcove_coroot_form(&tuple) != v.is_alcove_norm_form(&tuple) {
                disagreements += 1;
            }
            for slot in tuple.iter_mut() {
                *slot += 1;
                if *slot > bound {
                    *slot = -bound;
                } else {
                    break;
                }
            }
        }
        disagreements
    }

    #[test]
    fn criteria_agree_on_small_boxes() {
        assert_eq!(sweep("A2", 2), 0);
        assert_eq!(sweep("B2", 2), 0);
        assert_eq!(sweep("G2", 1), 0);
        assert_eq!(sweep("A3", 1), 0);
        assert_eq!(sweep("B3", 1), 0);
    }
}
