//! The Shi variety: the decomposition `k(w, theta) = P_theta(w) + lambda_theta(w)`,
//! admissible and admitted vectors, and the irreducible components.
//!
//! `P_theta` is the linear form `sum_i d_i X_{alpha_i}` where
//! `theta^vee = sum_i d_i alpha_i^vee`, so `lambda_theta(w) = k(w, theta) -
//! sum_i d_i k(w, alpha_i)`. Components are indexed by admitted vectors; the
//! representative of a component is the unique alcove of the fundamental
//! parallelepiped `P_H` (all simple entries zero) whose Shi vector is `lambda`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::io;
use std::sync::OnceLock;

use num_rational::Rational64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine_weyl::{format_word, AffineElement, AffineWeylGroup, FiniteWeylElement, ShiVector};
use crate::error::{Error, Result};
use crate::phi_rep::PhiRepresentation;
use crate::root_system::{CartanType, RootSystem};

/// Finite Weyl group elements with a reduced word, grouped by `lambda`.
pub type FiniteByComponent = BTreeMap<Vec<i64>, Vec<(FiniteWeylElement, Vec<usize>)>>;

/// Default bound on `|W|` for sweeps over the finite Weyl group.
pub const DEFAULT_FINITE_GROUP_LIMIT: u128 = 1_000_000;
/// Default bound on the number of components enumerated by search.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000;

/// Coefficients of `P_theta` over `X_{alpha_1}, ..., X_{alpha_n}`, per positive root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearPart(pub Vec<Vec<i64>>);

impl LinearPart {
    pub fn new(rs: &RootSystem) -> Self {
        LinearPart(
            (0..rs.num_positive())
                .map(|t| rs.coroot_coordinates(t).to_vec())
                .collect(),
        )
    }

    pub fn coefficients(&self, theta: usize) -> &[i64] {
        &self.0[theta]
    }

    /// `P_theta` evaluated at the simple entries of `k`.
    pub fn evaluate(&self, theta: usize, k: &[i64]) -> i64 {
        self.0[theta].iter().zip(k).map(|(d, x)| d * x).sum()
    }
}

/// `lambda` with `0 <= lambda_theta <= h(theta^vee) - 1` for every positive root.
/// Equality, hashing and ordering look at the entries only.
#[derive(Debug, Clone)]
pub struct AdmissibleVector {
    entries: Vec<i64>,
    admitted: OnceLock<bool>,
}

impl AdmissibleVector {
    pub fn new(rs: &RootSystem, entries: Vec<i64>) -> Result<Self> {
        rs_check_len(rs, entries.len())?;
        for (t, &v) in entries.iter().enumerate() {
            let max = rs.coheight(t) - 1;
            if !(0..=max).contains(&v) {
                return Err(Error::NotAdmissible {
                    position: t,
                    value: v,
                    max,
                });
            }
        }
        Ok(AdmissibleVector {
            entries,
            admitted: OnceLock::new(),
        })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn zero(rs: &RootSystem) -> Self {
        AdmissibleVector {
            entries: vec![0; rs.num_positive()],
            admitted: OnceLock::new(),
        }
    }

    pub fn as_shi_vector(&self) -> ShiVector {
        ShiVector(self.entries.clone())
    }
}

impl PartialEq for AdmissibleVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for AdmissibleVector {}

impl Hash for AdmissibleVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl PartialOrd for AdmissibleVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdmissibleVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl fmt::Display for AdmissibleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ShiVector(self.entries.clone()).fmt(f)
    }
}

fn rs_check_len(rs: &RootSystem, len: usize) -> Result<()> {
    if len != rs.num_positive() {
        return Err(Error::DimensionMismatch {
            expected: rs.num_positive(),
            actual: len,
        });
    }
    Ok(())
}

/// Every admissible vector, in lexicographic order. The count is
/// `prod_theta h(theta^vee)`, so this is only usable for small ranks.
pub fn admissible_vectors(rs: &RootSystem) -> impl Iterator<Item = Vec<i64>> + '_ {
    let m = rs.num_positive();
    let maxes: Vec<i64> = (0..m).map(|t| rs.coheight(t) - 1).collect();
    let mut cur = Some(vec![0i64; m]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        for t in (0..m).rev() {
            if next[t] < maxes[t] {
                next[t] += 1;
                cur = Some(next);
                break;
            }
            next[t] = 0;
        }
        Some(out)
    })
}

/// Number of admissible vectors, `prod_theta h(theta^vee)`.
pub fn admissible_count(rs: &RootSystem) -> u128 {
    (0..rs.num_positive())
        .map(|t| rs.coheight(t) as u128)
        .product()
}

/// Options for [`ShiVariety::enumerate_admitted`].
#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Lift the enumeration and finite-group guards.
    pub allow_huge: bool,
    pub enumeration_limit: u128,
    pub finite_group_limit: u128,
    /// Attach the finite Weyl group elements of each component.
    pub representatives: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            allow_huge: false,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            finite_group_limit: DEFAULT_FINITE_GROUP_LIMIT,
            representatives: false,
        }
    }
}

/// One irreducible component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRow {
    pub lambda: Vec<i64>,
    /// Reduced words of the finite Weyl group elements in the component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_elements: Option<Vec<String>>,
    /// Number of `ZPhi`-orbits of integral points in the component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_orbits: Option<usize>,
}

/// The components of the Shi variety of one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentTable {
    pub cartan_type: CartanType,
    pub positive_roots: Vec<Vec<i64>>,
    /// `n! prod c_i`.
    pub formula_count: u64,
    pub index_of_connection: i64,
    /// Number of enumerated components; absent for formula-only tables.
    pub count: Option<u64>,
    pub components: Vec<ComponentRow>,
}

#[derive(Serialize)]
struct CsvRow {
    lambda: String,
    finite_elements: String,
    lattice_orbits: String,
}

impl ComponentTable {
    pub fn formula_only(rs: &RootSystem) -> Self {
        ComponentTable {
            cartan_type: rs.cartan_type(),
            positive_roots: rs.positive_roots().iter().map(|r| r.0.clone()).collect(),
            formula_count: u64::try_from(rs.component_count()).expect("component counts fit in u64"),
            index_of_connection: rs.index_of_connection(),
            count: None,
            components: Vec::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.count == Some(self.formula_count)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("component tables serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One row per component: `lambda`, finite elements (`;`-separated
    /// words, `e` for the identity) and lattice-orbit count.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        for row in &self.components {
            wtr.serialize(CsvRow {
                lambda: ShiVector(row.lambda.clone()).to_string(),
                finite_elements: row
                    .finite_elements
                    .as_ref()
                    .map(|ws| ws.join(";"))
                    .unwrap_or_default(),
                lattice_orbits: row.lattice_orbits.map(|o| o.to_string()).unwrap_or_default(),
            })?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

/// Class of a point of a component under translation by `ZPhi`: translating by
/// `x` adds `C x` to the simple entries, so `C^{-1} k_Delta mod 1` is invariant
/// and separates orbits within one component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitKey(Vec<Rational64>);

/// Result of [`ShiVariety::lattice_orbits_in_component`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    /// Number of sampled points `tau_x w` lying in the component.
    pub points: usize,
    /// Number of distinct orbits met by the sample.
    pub orbits: usize,
    /// Number of finite Weyl group elements in each orbit, ordered by key.
    pub finite_per_orbit: Vec<usize>,
}

/// Shi variety of an affine Weyl group.
#[derive(Debug, Clone)]
pub struct ShiVariety {
    group: AffineWeylGroup,
    linear: LinearPart,
}

impl ShiVariety {
    pub fn new(group: AffineWeylGroup) -> Self {
        let linear = LinearPart::new(group.root_system());
        ShiVariety { group, linear }
    }

    pub fn from_type(ct: CartanType) -> Self {
        Self::new(AffineWeylGroup::from_type(ct))
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn linear_part(&self) -> &LinearPart {
        &self.linear
    }

    /// `lambda` computed from an alcove vector.
    pub fn lambda_of_shi(&self, v: &ShiVector) -> Result<AdmissibleVector> {
        self.group.validator().require_alcove(&v.0)?;
        let n = self.group.rank();
        let entries: Vec<i64> = (0..v.0.len())
            .map(|t| v.0[t] - self.linear.evaluate(t, &v.0[..n]))
            .collect();
        AdmissibleVector::new(self.root_system(), entries).map_err(|e| {
            Error::Invariant(format!("lambda of alcove {v} is out of bounds: {e}"))
        })
    }

    pub fn lambda_vector(&self, w: &AffineElement) -> AdmissibleVector {
        self.lambda_of_shi(&self.group.shi_vector(w))
            .expect("Shi vectors of group elements decompose with admissible lambda")
    }

    /// Whether `v` satisfies the alcove inequalities, i.e. indexes a component.
    pub fn is_admitted(&self, v: &AdmissibleVector) -> bool {
        *v.admitted
            .get_or_init(|| self.group.validator().is_alcove_coroot_form(&v.entries))
    }

    pub fn is_admitted_entries(&self, entries: &[i64]) -> Result<bool> {
        let v = AdmissibleVector::new(self.root_system(), entries.to_vec())?;
        Ok(self.is_admitted(&v))
    }

    pub fn admitted(&self, entries: Vec<i64>) -> Result<AdmissibleVector> {
        let v = AdmissibleVector::new(self.root_system(), entries)?;
        if self.is_admitted(&v) {
            Ok(v)
        } else {
            Err(Error::NotAdmitted(v.entries))
        }
    }

    /// Admitted vectors found by filtering every admissible vector.
    pub fn brute_force_admitted(&self, limit: u128) -> Result<Vec<AdmissibleVector>> {
        let rs = self.root_system();
        let total = admissible_count(rs);
        if total > limit {
            return Err(Error::ResourceGuard {
                what: "admissible vector count",
                size: total,
                limit,
                flag: "--allow-huge",
            });
        }
        let validator = self.group.validator();
        Ok(admissible_vectors(rs)
            .filter(|v| validator.is_alcove_coroot_form(v))
            .map(|entries| AdmissibleVector {
                entries,
                admitted: OnceLock::from(true),
            })
            .collect())
    }

    /// Admitted vectors by breadth-first search over the alcoves of `P_H`.
    ///
    /// Each level's neighbours are generated in parallel; deduplication against
    /// the visited set happens in a sequential merge, so the visited set is
    /// never shared across threads. The output is sorted.
    pub fn enumerate_admitted(&self, opts: EnumerationOptions) -> Result<ComponentTable> {
        let rs = self.root_system();
        let expected = rs.component_count();
        if !opts.allow_huge && expected > opts.enumeration_limit {
            return Err(Error::ResourceGuard {
                what: "component count",
                size: expected,
                limit: opts.enumeration_limit,
                flag: "--allow-huge",
            });
        }
        let n = self.group.rank();
        let gens: Vec<AffineElement> = (0..self.group.num_generators())
            .map(|i| self.group.generator(i).expect("generator in range").clone())
            .collect();

        let key = |v: &ShiVector| -> Vec<u8> { v.0.iter().map(|&k| k as u8).collect() };
        let identity = self.group.identity();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        seen.insert(key(&self.group.shi_vector(&identity)));
        let mut found = vec![self.group.shi_vector(&identity)];
        let mut frontier = vec![identity];

        while !frontier.is_empty() {
            let candidates: Vec<(ShiVector, AffineElement)> = frontier
                .par_iter()
                .flat_map_iter(|w| {
                    gens.iter().filter_map(move |g| {
                        let next = w.multiply(g);
                        let v = self.group.shi_vector(&next);
                        v.0[..n].iter().all(|&k| k == 0).then_some((v, next))
                    })
                })
                .collect();
            frontier = Vec::new();
            for (v, w) in candidates {
                if seen.insert(key(&v)) {
                    found.push(v);
                    frontier.push(w);
                }
            }
        }
        found.sort();

        let mut table = ComponentTable::formula_only(rs);
        table.count = Some(found.len() as u64);
        table.components = found
            .into_iter()
            .map(|v| ComponentRow {
                lambda: v.0,
                finite_elements: None,
                lattice_orbits: None,
            })
            .collect();

        if opts.representatives {
            let limit = if opts.allow_huge { u128::MAX } else { opts.finite_group_limit };
            let grouped = self.finite_elements_by_component(limit)?;
            let rank = self.group.rank();
            for row in &mut table.components {
                let members = grouped.get(&row.lambda).cloned().unwrap_or_default();
                let keys: HashSet<OrbitKey> = members
                    .iter()
                    .map(|(w, _)| self.orbit_key(&self.group.shi_vector(&AffineElement::from_finite(w.clone()))))
                    .collect();
                row.lattice_orbits = Some(keys.len());
                row.finite_elements = Some(
                    members
                        .iter()
                        .map(|(_, word)| display_word(word, rank))
                        .collect(),
                );
            }
        }
        Ok(table)
    }

    /// Finite Weyl group elements with their words, grouped by `lambda`.
    pub fn finite_elements_by_component(&self, limit: u128) -> Result<FiniteByComponent> {
        let mut out = FiniteByComponent::new();
        for (w, word) in self.group.finite_group(limit)? {
            let lambda = self.lambda_vector(&AffineElement::from_finite(w.clone()));
            out.entry(lambda.entries).or_default().push((w, word));
        }
        Ok(out)
    }

    /// The finite Weyl group elements lying in the component of `lambda`.
    pub fn finite_elements_in_component(
        &self,
        lambda: &AdmissibleVector,
        limit: u128,
    ) -> Result<Vec<(FiniteWeylElement, Vec<usize>)>> {
        self.require_admitted(lambda)?;
        Ok(self
            .group
            .finite_group(limit)?
            .into_iter()
            .filter(|(w, _)| self.lambda_vector(&AffineElement::from_finite(w.clone())) == *lambda)
            .collect())
    }

    pub fn orbit_key(&self, v: &ShiVector) -> OrbitKey {
        let rs = self.root_system();
        let n = rs.rank();
        let mut y = vec![Rational64::zero(); n];
        for (i, w) in rs.fundamental_weights().iter().enumerate() {
            for (yj, &c) in y.iter_mut().zip(w) {
                *yj += c * Rational64::from_integer(v.0[i]);
            }
        }
        OrbitKey(y.into_iter().map(|q| q - q.floor()).collect())
    }

    /// Samples `tau_x w` for `w` in `W` and `x` in the box `[-radius, radius]^n`
    /// of root coordinates, keeps those in the component of `lambda`, and
    /// counts their `ZPhi`-orbits.
    pub fn lattice_orbits_in_component(
        &self,
        lambda: &AdmissibleVector,
        radius: i64,
        limit: u128,
    ) -> Result<OrbitSummary> {
        self.require_admitted(lambda)?;
        let finite = self.group.finite_group(limit)?;
        let n = self.group.rank();
        let side = (2 * radius + 1) as usize;
        let mut per_orbit: BTreeMap<OrbitKey, usize> = BTreeMap::new();
        let mut points = 0;
        for (w, _) in &finite {
            let wbar = AffineElement::from_finite(w.clone());
            for idx in 0..side.pow(n as u32) {
                let mut rem = idx;
                let x: Vec<i64> = (0..n)
                    .map(|_| {
                        let c = (rem % side) as i64 - radius;
                        rem /= side;
                        c
                    })
                    .collect();
                let is_finite = x.iter().all(|&c| c == 0);
                let u = AffineElement::pure_translation(x).multiply(&wbar);
                let v = self.group.shi_vector(&u);
                if self.lambda_of_shi(&v)? != *lambda {
                    continue;
                }
                points += 1;
                let count = per_orbit.entry(self.orbit_key(&v)).or_insert(0);
                if is_finite {
                    *count += 1;
                }
            }
        }
        Ok(OrbitSummary {
            points,
            orbits: per_orbit.len(),
            finite_per_orbit: per_orbit.into_values().collect(),
        })
    }

    /// `w <> lambda`: the component containing `F(w)` applied to the
    /// representative of `lambda`.
    pub fn act_on_component(&self, w: &AffineElement, lambda: &AdmissibleVector) -> Result<AdmissibleVector> {
        self.require_admitted(lambda)?;
        let rep = PhiRepresentation::new(&self.group);
        let word = self.group.reduced_word(&self.group.shi_vector(w))?;
        let image = rep.apply_word(&word, &lambda.entries)?;
        let out = self.lambda_of_shi(&ShiVector(image))?;
        let _ = out.admitted.set(true);
        Ok(out)
    }

    /// `lambda(s_i)` for every generator `i = 0..=n`.
    pub fn generator_components(&self) -> Vec<AdmissibleVector> {
        (0..self.group.num_generators())
            .map(|i| self.lambda_vector(self.group.generator(i).expect("generator in range")))
            .collect()
    }

    fn require_admitted(&self, lambda: &AdmissibleVector) -> Result<()> {
        rs_check_len(self.root_system(), lambda.entries.len())?;
        if self.is_admitted(lambda) {
            Ok(())
        } else {
            Err(Error::NotAdmitted(lambda.entries.clone()))
        }
    }
}

/// `e` for the empty word, otherwise the usual word notation.
pub fn display_word(word: &[usize], rank: usize) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        format_word(word, rank)
    }
}
