//! Finite binary-relation algebra.
//!
//! A [`Relation`] is a homogeneous binary relation on a [`FiniteIndexedSet`],
//! stored as a dense bit matrix so that closure computations reduce to
//! word-parallel row operations. [`NeighborhoodStructure`] carries a
//! per-point neighborhood-filter basis; [`topological_closure`] evaluates the
//! closure criterion "every basis product meets the relation" against it.

use fixedbitset::FixedBitSet;
use std::fmt;

/// Error type for relation-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelError {
    #[error("carrier mismatch: left has size {left}, right has size {right}")]
    CarrierMismatch { left: usize, right: usize },
    #[error("index {index} out of bounds for carrier of size {size}")]
    IndexOutOfBounds { index: usize, size: usize },
    #[error("labels invalid: {0}")]
    BadLabels(String),
    #[error("neighborhood basis invalid at point {point}: {reason}")]
    BadBasis { point: usize, reason: String },
    #[error("map assignment has length {got}, domain has size {want}")]
    BadAssignmentLength { got: usize, want: usize },
}

/// A finite set of indices `0..size`, optionally labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteIndexedSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FiniteIndexedSet {
    pub fn new(size: usize) -> Self {
        FiniteIndexedSet { size, labels: None }
    }

    /// Labels must be pairwise distinct and match the carrier size.
    pub fn with_labels(labels: Vec<String>) -> Result<Self, RelError> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(RelError::BadLabels(format!("duplicate label {l:?}")));
            }
        }
        Ok(FiniteIndexedSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|ls| ls.get(i)).map(|s| s.as_str())
    }
}

/// A homogeneous binary relation on a finite indexed set, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    carrier: FiniteIndexedSet,
    rows: Vec<FixedBitSet>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({} pts; {:?})", self.size(), self.iter_pairs().collect::<Vec<_>>())
    }
}

impl Relation {
    pub fn empty(carrier: FiniteIndexedSet) -> Self {
        let n = carrier.size();
        Relation {
            carrier,
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn empty_of_size(n: usize) -> Self {
        Self::empty(FiniteIndexedSet::new(n))
    }

    /// The identity (diagonal) relation.
    pub fn diagonal(n: usize) -> Self {
        let mut r = Self::empty_of_size(n);
        for i in 0..n {
            r.rows[i].insert(i);
        }
        r
    }

    /// The full relation `X × X`.
    pub fn full(n: usize) -> Self {
        let mut r = Self::empty_of_size(n);
        for row in &mut r.rows {
            row.insert_range(..);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, RelError> {
        let mut r = Self::empty_of_size(n);
        for &(x, y) in pairs {
            r.insert(x, y)?;
        }
        Ok(r)
    }

    pub fn carrier(&self) -> &FiniteIndexedSet {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn insert(&mut self, x: usize, y: usize) -> Result<(), RelError> {
        let n = self.size();
        if x >= n {
            return Err(RelError::IndexOutOfBounds { index: x, size: n });
        }
        if y >= n {
            return Err(RelError::IndexOutOfBounds { index: y, size: n });
        }
        self.rows[x].insert(y);
        Ok(())
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.size() && y < self.size() && self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    pub fn union(&self, other: &Relation) -> Result<Relation, RelError> {
        self.check_carrier(other)?;
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
        Ok(out)
    }

    pub fn is_subset_of(&self, other: &Relation) -> Result<bool, RelError> {
        self.check_carrier(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter_pairs().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.iter_pairs().all(|(x, y)| x == y || !self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        // row(x) must absorb row(y) for every y related to x
        (0..self.size()).all(|x| {
            self.rows[x]
                .ones()
                .all(|y| self.rows[y].is_subset(&self.rows[x]))
        })
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// Equivalence classes, assuming the relation is reflexive, symmetric and
    /// transitive. Each class is reported once, ordered by least member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for x in 0..n {
            if seen.contains(x) {
                continue;
            }
            let mut members: Vec<usize> = self.rows[x].ones().collect();
            if members.is_empty() {
                members.push(x);
            }
            for &m in &members {
                seen.insert(m);
            }
            out.push(members);
        }
        out
    }

    fn check_carrier(&self, other: &Relation) -> Result<(), RelError> {
        if self.carrier != other.carrier {
            return Err(RelError::CarrierMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(())
    }
}

/// Transpose: `(y, x)` is in the result iff `(x, y)` is in the input.
pub fn transpose(r: &Relation) -> Relation {
    let mut out = Relation::empty(r.carrier.clone());
    for (x, y) in r.iter_pairs() {
        out.rows[y].insert(x);
    }
    out
}

/// Symmetric closure `s(R) = R ∪ Rᵀ`.
pub fn symmetric_closure(r: &Relation) -> Relation {
    r.union(&transpose(r)).expect("same carrier")
}

/// Reflexive-transitive closure, by Warshall's algorithm on bit rows.
pub fn reflexive_transitive_closure(r: &Relation) -> Relation {
    let n = r.size();
    let mut out = r.clone();
    for i in 0..n {
        out.rows[i].insert(i);
    }
    for k in 0..n {
        let row_k = out.rows[k].clone();
        for x in 0..n {
            if out.rows[x].contains(k) {
                out.rows[x].union_with(&row_k);
            }
        }
    }
    out
}

/// A per-point neighborhood-filter basis on a finite carrier.
///
/// Every basis list is nonempty and every basis set contains its point;
/// whether the family generates an honest topology is not required, only
/// checked on demand via [`NeighborhoodStructure::is_filter_base`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodStructure {
    carrier: FiniteIndexedSet,
    basis: Vec<Vec<FixedBitSet>>,
}

impl NeighborhoodStructure {
    pub fn new(carrier: FiniteIndexedSet, basis: Vec<Vec<Vec<usize>>>) -> Result<Self, RelError> {
        let n = carrier.size();
        if basis.len() != n {
            return Err(RelError::BadBasis {
                point: basis.len(),
                reason: format!("basis lists for {} points, carrier has {}", basis.len(), n),
            });
        }
        let mut sets = Vec::with_capacity(n);
        for (p, lists) in basis.into_iter().enumerate() {
            if lists.is_empty() {
                return Err(RelError::BadBasis {
                    point: p,
                    reason: "empty basis list".into(),
                });
            }
            let mut per_point = Vec::with_capacity(lists.len());
            for members in lists {
                let mut bs = FixedBitSet::with_capacity(n);
                for m in members {
                    if m >= n {
                        return Err(RelError::IndexOutOfBounds { index: m, size: n });
                    }
                    bs.insert(m);
                }
                if !bs.contains(p) {
                    return Err(RelError::BadBasis {
                        point: p,
                        reason: "basis set does not contain its point".into(),
                    });
                }
                per_point.push(bs);
            }
            sets.push(per_point);
        }
        Ok(NeighborhoodStructure { carrier, basis: sets })
    }

    pub(crate) fn from_bitsets(carrier: FiniteIndexedSet, basis: Vec<Vec<FixedBitSet>>) -> Self {
        NeighborhoodStructure { carrier, basis }
    }

    /// Discrete structure: the basis of each point is the singleton `{p}`.
    pub fn discrete(n: usize) -> Self {
        let carrier = FiniteIndexedSet::new(n);
        let basis = (0..n)
            .map(|p| {
                let mut bs = FixedBitSet::with_capacity(n);
                bs.insert(p);
                vec![bs]
            })
            .collect();
        NeighborhoodStructure { carrier, basis }
    }

    /// Indiscrete structure: the single basis set of each point is the whole carrier.
    pub fn indiscrete(n: usize) -> Self {
        let carrier = FiniteIndexedSet::new(n);
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        NeighborhoodStructure {
            carrier,
            basis: vec![vec![all]; n],
        }
    }

    /// Minimal-open-neighborhood structure of a preorder: the basis of `p`
    /// is the single up-set `{q : (p, q) ∈ order}`.
    pub fn from_preorder(order: &Relation) -> Result<Self, RelError> {
        if !order.is_preorder() {
            return Err(RelError::BadBasis {
                point: 0,
                reason: "relation is not a preorder".into(),
            });
        }
        let n = order.size();
        let basis = (0..n).map(|p| vec![order.row(p).clone()]).collect();
        Ok(NeighborhoodStructure {
            carrier: order.carrier().clone(),
            basis,
        })
    }

    pub fn carrier(&self) -> &FiniteIndexedSet {
        &self.carrier
    }

    pub fn basis_sets(&self, p: usize) -> &[FixedBitSet] {
        &self.basis[p]
    }

    /// Filter-base condition: any two basis sets of a point contain a third
    /// basis set of that point. Single-set bases satisfy it trivially.
    pub fn is_filter_base(&self) -> bool {
        self.basis.iter().all(|sets| {
            sets.iter().enumerate().all(|(i, a)| {
                sets.iter().enumerate().all(|(j, b)| {
                    i == j || sets.iter().any(|c| c.is_subset(a) && c.is_subset(b))
                })
            })
        })
    }
}

/// Topological closure of `r` with respect to the declared basis:
/// `(x, y)` is in the result iff every basis product `A × B` with
/// `A ∈ basis(x)`, `B ∈ basis(y)` intersects `r`.
pub fn topological_closure(r: &Relation, nbhd: &NeighborhoodStructure) -> Result<Relation, RelError> {
    if r.carrier() != nbhd.carrier() {
        return Err(RelError::CarrierMismatch {
            left: r.size(),
            right: nbhd.carrier().size(),
        });
    }
    let n = r.size();
    let mut out = Relation::empty(r.carrier.clone());
    for x in 0..n {
        for y in 0..n {
            let hit = nbhd.basis_sets(x).iter().all(|a| {
                nbhd.basis_sets(y)
                    .iter()
                    .all(|b| a.ones().any(|p| !r.rows[p].is_disjoint(b)))
            });
            if hit {
                out.rows[x].insert(y);
            }
        }
    }
    Ok(out)
}

/// A total function between finite indexed sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMap {
    domain: FiniteIndexedSet,
    codomain: FiniteIndexedSet,
    assignment: Vec<usize>,
}

impl RelationMap {
    pub fn new(
        domain: FiniteIndexedSet,
        codomain: FiniteIndexedSet,
        assignment: Vec<usize>,
    ) -> Result<Self, RelError> {
        if assignment.len() != domain.size() {
            return Err(RelError::BadAssignmentLength {
                got: assignment.len(),
                want: domain.size(),
            });
        }
        for &v in &assignment {
            if v >= codomain.size() {
                return Err(RelError::IndexOutOfBounds {
                    index: v,
                    size: codomain.size(),
                });
            }
        }
        Ok(RelationMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(set: FiniteIndexedSet) -> Self {
        let assignment = (0..set.size()).collect();
        RelationMap {
            domain: set.clone(),
            codomain: set,
            assignment,
        }
    }

    pub fn domain(&self) -> &FiniteIndexedSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteIndexedSet {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self) -> FixedBitSet {
        let mut img = FixedBitSet::with_capacity(self.codomain.size());
        for &v in &self.assignment {
            img.insert(v);
        }
        img
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.codomain.size());
        for &v in &self.assignment {
            if seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        true
    }

    /// `self ∘ inner`, applying `inner` first.
    pub fn compose(&self, inner: &RelationMap) -> Result<RelationMap, RelError> {
        if inner.codomain != self.domain {
            return Err(RelError::CarrierMismatch {
                left: inner.codomain.size(),
                right: self.domain.size(),
            });
        }
        let assignment = inner.assignment.iter().map(|&x| self.assignment[x]).collect();
        RelationMap::new(inner.domain.clone(), self.codomain.clone(), assignment)
    }
}

fn check_map_relations(f: &RelationMap, rx: &Relation, ry: &Relation) -> Result<(), RelError> {
    if f.domain() != rx.carrier() {
        return Err(RelError::CarrierMismatch {
            left: f.domain().size(),
            right: rx.size(),
        });
    }
    if f.codomain() != ry.carrier() {
        return Err(RelError::CarrierMismatch {
            left: f.codomain().size(),
            right: ry.size(),
        });
    }
    Ok(())
}

/// `f` preserves the relations: `(x, y) ∈ R_X` implies `(f x, f y) ∈ R_Y`.
pub fn preserves(f: &RelationMap, rx: &Relation, ry: &Relation) -> Result<bool, RelError> {
    check_map_relations(f, rx, ry)?;
    Ok(rx.iter_pairs().all(|(x, y)| ry.contains(f.apply(x), f.apply(y))))
}

/// `f` reflects the relations: `(f x, f y) ∈ R_Y` implies `(x, y) ∈ R_X`.
pub fn reflects(f: &RelationMap, rx: &Relation, ry: &Relation) -> Result<bool, RelError> {
    check_map_relations(f, rx, ry)?;
    let n = rx.size();
    for x in 0..n {
        for y in 0..n {
            if ry.contains(f.apply(x), f.apply(y)) && !rx.contains(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
