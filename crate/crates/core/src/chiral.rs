//! Chiral structure on lattice patches.
//!
//! The right-moving reachability relation of a patch joins points along
//! gap-free runs of constant first coordinate; its dual moves along the
//! second. Morphisms act per component by a pair of strictly increasing
//! coordinate maps, the discrete stand-in for orientation- and
//! time-orientation-preserving conformal maps, and must keep each run inside
//! a single target run.
//!
//! On top of this the module provides the chiral hierarchy classifier,
//! chiral convexity and Cauchy sets, the chiral category builder, the
//! quotient to bundles of finite chains with its induced maps, a scalar
//! transport demo, and a toy solution-space assignment on bundles.

use crate::causal::{causal_relation, is_globally_hyperbolic};
use crate::disjoint::DisjointnessTable;
use crate::fincat::{FiniteCategory, MorphismData};
use crate::lattice::{Coord, LatticeError, LatticePatch};
use crate::relcore::{
    reflexive_transitive_closure, symmetric_closure, topological_closure, Relation,
};
use fixedbitset::FixedBitSet;
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChiralError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("coordinate map for component {component} is not strictly increasing")]
    NotIncreasing { component: usize },
    #[error("coordinate map for component {component} is missing value {value}")]
    MissingValue { component: usize, value: i64 },
    #[error("a run of component {component} maps across run boundaries in the target")]
    RunTorn { component: usize },
    #[error("expected {want} component actions, got {got}")]
    ActionCount { want: usize, got: usize },
    #[error("patch is not chiral-initial: {0}")]
    NotInitial(&'static str),
    #[error("quotient order has a cycle")]
    CyclicQuotient,
    #[error("morphism endpoints do not match for composition")]
    ComposeMismatch,
    #[error("generator {index} refers to object {object} of {count}")]
    BadGenerator { index: usize, object: usize, count: usize },
    #[error("category generation exceeded the morphism cap of {0}")]
    TooManyMorphisms(usize),
    #[error("initial data does not match the Cauchy set: {0}")]
    BadInitialData(String),
    #[error("the given set is not a chiral Cauchy set: {0}")]
    NotCauchySet(String),
}

/// Which null direction the structure follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Chirality {
    Right,
    Left,
}

impl Chirality {
    /// Unit step along the moving coordinate.
    pub fn step(self) -> Coord {
        match self {
            Chirality::Right => (0, 1),
            Chirality::Left => (1, 0),
        }
    }

    /// The coordinate held fixed along a run.
    pub fn fixed_coord(self, p: Coord) -> i64 {
        match self {
            Chirality::Right => p.0,
            Chirality::Left => p.1,
        }
    }

    pub fn moving_coord(self, p: Coord) -> i64 {
        match self {
            Chirality::Right => p.1,
            Chirality::Left => p.0,
        }
    }

    pub fn dual(self) -> Chirality {
        match self {
            Chirality::Right => Chirality::Left,
            Chirality::Left => Chirality::Right,
        }
    }
}

/// Chiral classification levels, ordered by strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum ChiralLevel {
    None,
    Causal,
    Simple,
    Initial,
    GloballyHyperbolic,
}

/// Maximal runs of a patch along a chirality: the step-connected pieces of
/// each constant-coordinate line, ordered along the moving coordinate.
#[derive(Debug, Clone)]
pub struct Runs {
    pub run_of: Vec<usize>,
    /// Points of each run in step order (an arbitrary rotation for cycles).
    pub runs: Vec<Vec<usize>>,
    pub cyclic: Vec<bool>,
}

pub fn chiral_runs(patch: &LatticePatch, chirality: Chirality) -> Runs {
    let n = patch.len();
    let step = chirality.step();
    let mut run_of = vec![usize::MAX; n];
    let mut runs = Vec::new();
    let mut cyclic = Vec::new();
    for start in 0..n {
        if run_of[start] != usize::MAX {
            continue;
        }
        // walk backwards to the run's beginning (or detect a cycle)
        let mut first = start;
        let mut is_cycle = false;
        loop {
            let p = patch.coord(first);
            match patch.index_of((p.0 - step.0, p.1 - step.1)) {
                Some(prev) if prev == start => {
                    is_cycle = true;
                    break;
                }
                Some(prev) => first = prev,
                None => break,
            }
        }
        let id = runs.len();
        let mut members = Vec::new();
        let mut cur = first;
        loop {
            run_of[cur] = id;
            members.push(cur);
            let p = patch.coord(cur);
            match patch.index_of((p.0 + step.0, p.1 + step.1)) {
                Some(next) if run_of[next] == id => break, // wrapped around
                Some(next) => cur = next,
                None => break,
            }
        }
        runs.push(members);
        cyclic.push(is_cycle);
    }
    Runs { run_of, runs, cyclic }
}

/// A patch with its chiral reachability relation, symmetric closure, runs,
/// and the shared diamond neighborhood basis.
#[derive(Debug, Clone)]
pub struct ChiralStructure {
    pub patch: LatticePatch,
    pub chirality: Chirality,
    pub reach: Relation,
    pub sym_reach: Relation,
    pub neighborhoods: crate::relcore::NeighborhoodStructure,
    pub runs: Runs,
}

/// The chiral one-step relation.
pub fn chiral_step_relation(patch: &LatticePatch, chirality: Chirality) -> Relation {
    let n = patch.len();
    let step = chirality.step();
    let mut r = Relation::empty_of_size(n);
    for i in 0..n {
        let p = patch.coord(i);
        if let Some(j) = patch.index_of((p.0 + step.0, p.1 + step.1)) {
            r.insert(i, j).expect("in bounds");
        }
    }
    r
}

/// Build the chiral structure for the given null direction.
pub fn chiral_relation(patch: &LatticePatch, chirality: Chirality) -> ChiralStructure {
    let reach = reflexive_transitive_closure(&chiral_step_relation(patch, chirality));
    let sym_reach = symmetric_closure(&reach);
    let neighborhoods = crate::causal::diamond_basis(patch);
    let runs = chiral_runs(patch, chirality);
    ChiralStructure {
        patch: patch.clone(),
        chirality,
        reach,
        sym_reach,
        neighborhoods,
        runs,
    }
}

impl ChiralStructure {
    pub fn is_chi_causal(&self) -> bool {
        self.reach.is_antisymmetric()
    }

    pub fn closed_reach(&self) -> Relation {
        topological_closure(&self.reach, &self.neighborhoods).expect("same carrier")
    }

    pub fn closed_sym_reach(&self) -> Relation {
        topological_closure(&self.sym_reach, &self.neighborhoods).expect("same carrier")
    }

    pub fn is_chi_simple(&self) -> bool {
        self.is_chi_causal() && self.closed_reach() == self.reach
    }

    /// The discrete chiral-initial property: no closed runs, each run of a
    /// component sits on its own constant-coordinate line, and the induced
    /// order of a component's runs is a finite chain (no periodic
    /// wrap-around of the quotient).
    pub fn is_chi_initial(&self) -> bool {
        self.chi_initial_obstruction().is_none()
    }

    pub fn chi_initial_obstruction(&self) -> Option<&'static str> {
        if !self.is_chi_causal() {
            return Some("closed chiral runs exist");
        }
        let comp_count = self.patch.component_count();
        // fixed-coordinate value per run, grouped by patch component
        let mut per_component: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
        let mut run_component = vec![usize::MAX; self.runs.runs.len()];
        for (rid, members) in self.runs.runs.iter().enumerate() {
            let comp = self.patch.component_of(members[0]);
            run_component[rid] = comp;
            per_component[comp].push(rid);
        }
        for runs in &per_component {
            let mut values: Vec<i64> = runs
                .iter()
                .map(|&rid| self.chirality.fixed_coord(self.patch.coord(self.runs.runs[rid][0])))
                .collect();
            values.sort_unstable();
            if values.windows(2).any(|w| w[0] == w[1]) {
                return Some("a constant-coordinate line splits into several runs");
            }
        }
        // quotient acyclicity: a connected component's run graph must be a tree
        let mut edges: std::collections::BTreeSet<(usize, usize)> = Default::default();
        let cross_step = self.chirality.dual().step();
        for i in 0..self.patch.len() {
            let p = self.patch.coord(i);
            if let Some(j) = self.patch.index_of((p.0 + cross_step.0, p.1 + cross_step.1)) {
                let a = self.runs.run_of[i];
                let b = self.runs.run_of[j];
                if a != b {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
        for (comp, runs) in per_component.iter().enumerate() {
            let edge_count = edges
                .iter()
                .filter(|&&(a, _)| run_component[a] == comp)
                .count();
            if !runs.is_empty() && edge_count + 1 != runs.len() {
                return Some("the quotient order wraps around");
            }
        }
        None
    }
}

/// Classify a patch in the chiral hierarchy for the structure's direction.
/// The strongest satisfied level is returned; the globally hyperbolic level
/// additionally requires the causal classifier's, so it never outranks a
/// failing chiral-initial property.
pub fn classify_chiral(cs: &ChiralStructure) -> ChiralLevel {
    if !cs.is_chi_causal() {
        return ChiralLevel::None;
    }
    if cs.is_chi_initial() {
        if is_globally_hyperbolic(&causal_relation(&cs.patch)) {
            return ChiralLevel::GloballyHyperbolic;
        }
        return ChiralLevel::Initial;
    }
    if cs.is_chi_simple() {
        return ChiralLevel::Simple;
    }
    ChiralLevel::Causal
}

/// Chiral convexity: every run segment with endpoints in the subset stays
/// inside it. Returns the first witness outside.
pub fn chi_convexity_witness(cs: &ChiralStructure, subset: &FixedBitSet) -> Option<usize> {
    for r in 0..cs.patch.len() {
        if subset.contains(r) {
            continue;
        }
        let has_pred = subset.ones().any(|p| cs.reach.contains(p, r));
        if !has_pred {
            continue;
        }
        if subset.ones().any(|q| cs.reach.contains(r, q)) {
            return Some(r);
        }
    }
    None
}

pub fn is_chi_convex(cs: &ChiralStructure, subset: &FixedBitSet) -> bool {
    chi_convexity_witness(cs, subset).is_none()
}

/// Does the set meet every maximal run exactly once?
pub fn is_chi_cauchy_set(cs: &ChiralStructure, set: &FixedBitSet) -> bool {
    if !cs.is_chi_causal() {
        return false;
    }
    cs.runs
        .runs
        .iter()
        .all(|members| members.iter().filter(|&&p| set.contains(p)).count() == 1)
}

/// Enumerate chiral Cauchy sets, up to `limit` (the product of per-run
/// choices, in index order).
pub fn chi_cauchy_sets(cs: &ChiralStructure, limit: usize) -> Vec<Vec<usize>> {
    if !cs.is_chi_causal() {
        return Vec::new();
    }
    let mut results: Vec<Vec<usize>> = vec![Vec::new()];
    for members in &cs.runs.runs {
        let mut next = Vec::new();
        'outer: for base in &results {
            for &p in members {
                let mut s = base.clone();
                s.push(p);
                next.push(s);
                if next.len() >= limit {
                    break 'outer;
                }
            }
        }
        results = next;
    }
    for r in &mut results {
        r.sort_unstable();
    }
    results
}

/// Per-component action of a chiral morphism: either a translation or a pair
/// of strictly increasing coordinate maps keyed on the occurring values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiralAction {
    Translate(Coord),
    Monotone {
        map_u: BTreeMap<i64, i64>,
        map_v: BTreeMap<i64, i64>,
    },
}

impl ChiralAction {
    pub fn identity() -> Self {
        ChiralAction::Translate((0, 0))
    }

    fn apply(&self, p: Coord, component: usize) -> Result<Coord, ChiralError> {
        match self {
            ChiralAction::Translate(t) => Ok((p.0 + t.0, p.1 + t.1)),
            ChiralAction::Monotone { map_u, map_v } => {
                let u = *map_u
                    .get(&p.0)
                    .ok_or(ChiralError::MissingValue { component, value: p.0 })?;
                let v = *map_v
                    .get(&p.1)
                    .ok_or(ChiralError::MissingValue { component, value: p.1 })?;
                Ok((u, v))
            }
        }
    }

    fn is_increasing(&self) -> bool {
        match self {
            ChiralAction::Translate(_) => true,
            ChiralAction::Monotone { map_u, map_v } => {
                let inc = |m: &BTreeMap<i64, i64>| {
                    m.values()
                        .zip(m.values().skip(1))
                        .all(|(a, b)| a < b)
                };
                inc(map_u) && inc(map_v)
            }
        }
    }
}

/// An orientation- and time-orientation-preserving conformal-like map:
/// per-component strictly increasing coordinate maps whose images lie in the
/// target, keep every run inside one target run, and keep disjoint component
/// images apart.
#[derive(Debug, Clone)]
pub struct ChiralMorphism {
    pub source: LatticePatch,
    pub target: LatticePatch,
    pub actions: Vec<ChiralAction>,
    point_map: Vec<usize>,
}

impl ChiralMorphism {
    pub fn new(
        source: LatticePatch,
        target: LatticePatch,
        actions: Vec<ChiralAction>,
    ) -> Result<Self, ChiralError> {
        if actions.len() != source.component_count() {
            return Err(ChiralError::ActionCount {
                want: source.component_count(),
                got: actions.len(),
            });
        }
        for (c, action) in actions.iter().enumerate() {
            if !action.is_increasing() {
                return Err(ChiralError::NotIncreasing { component: c });
            }
        }
        let mut point_map = Vec::with_capacity(source.len());
        for i in 0..source.len() {
            let comp = source.component_of(i);
            let image = actions[comp].apply(source.coord(i), comp)?;
            match target.index_of(image) {
                Some(j) => point_map.push(j),
                None => return Err(LatticeError::ImageOutside(image, source.coord(i)).into()),
            }
        }

        // runs map into single target runs, for both null directions
        for chirality in [Chirality::Right, Chirality::Left] {
            let src_runs = chiral_runs(&source, chirality);
            let tgt_runs = chiral_runs(&target, chirality);
            for members in &src_runs.runs {
                let target_run = tgt_runs.run_of[point_map[members[0]]];
                if members.iter().any(|&p| tgt_runs.run_of[point_map[p]] != target_run) {
                    return Err(ChiralError::RunTorn {
                        component: source.component_of(members[0]),
                    });
                }
            }
        }

        // disjoint component images must not touch (see PatchMorphism)
        let k = source.component_count();
        let mut images: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..source.len() {
            images[source.component_of(i)].push(point_map[i]);
        }
        for c1 in 0..k {
            for c2 in (c1 + 1)..k {
                let disjoint = images[c1].iter().all(|a| !images[c2].contains(a));
                if disjoint {
                    let touch = images[c1].iter().any(|&a| {
                        images[c2]
                            .iter()
                            .any(|&b| target.adjacent(target.coord(a), target.coord(b)))
                    });
                    if touch {
                        return Err(LatticeError::ComponentsCollide(c1, c2).into());
                    }
                }
            }
        }

        Ok(ChiralMorphism {
            source,
            target,
            actions,
            point_map,
        })
    }

    pub fn identity(patch: LatticePatch) -> Self {
        let actions = vec![ChiralAction::identity(); patch.component_count()];
        ChiralMorphism::new(patch.clone(), patch, actions).expect("identity is valid")
    }

    pub fn inclusion(sub: LatticePatch, ambient: LatticePatch) -> Result<Self, ChiralError> {
        let actions = vec![ChiralAction::identity(); sub.component_count()];
        ChiralMorphism::new(sub, ambient, actions)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.point_map[i]
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &j in &self.point_map {
            if seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    /// Do consecutive run points map to consecutive target points, for both
    /// directions? Stretching maps (which skip lattice points) do not; their
    /// images are refinement embeddings rather than sub-patches.
    pub fn has_interval_images(&self) -> bool {
        for chirality in [Chirality::Right, Chirality::Left] {
            let step = chirality.step();
            for i in 0..self.source.len() {
                let p = self.source.coord(i);
                if let Some(j) = self.source.index_of((p.0 + step.0, p.1 + step.1)) {
                    let a = self.target.coord(self.point_map[i]);
                    let b = self.target.coord(self.point_map[j]);
                    if self.target.periodicity().reduce((a.0 + step.0, a.1 + step.1)) != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &ChiralMorphism) -> Result<ChiralMorphism, ChiralError> {
        if inner.target != self.source {
            return Err(ChiralError::ComposeMismatch);
        }
        // derive composite monotone maps from the realized point images
        let mut actions = Vec::with_capacity(inner.source.component_count());
        for c in 0..inner.source.component_count() {
            let mut map_u = BTreeMap::new();
            let mut map_v = BTreeMap::new();
            for i in 0..inner.source.len() {
                if inner.source.component_of(i) != c {
                    continue;
                }
                let p = inner.source.coord(i);
                let q = self.target.coord(self.point_map[inner.point_map[i]]);
                map_u.insert(p.0, q.0);
                map_v.insert(p.1, q.1);
            }
            actions.push(ChiralAction::Monotone { map_u, map_v });
        }
        ChiralMorphism::new(inner.source.clone(), self.target.clone(), actions)
    }
}

/// Image of a chiral morphism over the target's points.
pub fn chiral_image_bitset(f: &ChiralMorphism) -> FixedBitSet {
    let mut img = FixedBitSet::with_capacity(f.target.len());
    for i in 0..f.source.len() {
        img.insert(f.apply(i));
    }
    img
}

/// Chiral Cauchy map: the image meets every maximal run of the target, so it
/// contains a set meeting each exactly once.
pub fn is_chi_cauchy_map(f: &ChiralMorphism, target_cs: &ChiralStructure) -> bool {
    if !target_cs.is_chi_causal() {
        return false;
    }
    let img = chiral_image_bitset(f);
    target_cs
        .runs
        .runs
        .iter()
        .all(|members| members.iter().any(|&p| img.contains(p)))
}

/// Plain reflection of a relation along a chiral morphism's point map.
pub fn chiral_reflects_relation(f: &ChiralMorphism, src_rel: &Relation, tgt_rel: &Relation) -> bool {
    let n = f.source.len();
    for p in 0..n {
        for q in 0..n {
            if tgt_rel.contains(f.apply(p), f.apply(q)) && !src_rel.contains(p, q) {
                return false;
            }
        }
    }
    true
}

/// The three faces of chiral disjointness for two image sets.
pub fn chiral_disjointness_faces(
    cs: &ChiralStructure,
    a: &FixedBitSet,
    b: &FixedBitSet,
) -> (bool, bool, bool) {
    let face_sym = a.ones().all(|p| cs.sym_reach.row(p).is_disjoint(b));
    let face_reach = a.ones().all(|p| cs.reach.row(p).is_disjoint(b))
        && b.ones().all(|p| cs.reach.row(p).is_disjoint(a));
    // run-connectivity face: no maximal run touches both sets
    let face_run = cs.runs.runs.iter().all(|members| {
        let hits_a = members.iter().any(|&p| a.contains(p));
        let hits_b = members.iter().any(|&p| b.contains(p));
        !(hits_a && hits_b)
    });
    (face_sym, face_reach, face_run)
}

/// A finite category of patches and conformal-like maps carrying the chiral
/// disjointness relation for the structure's direction.
#[derive(Debug, Clone)]
pub struct ChiralCategory {
    pub chirality: Chirality,
    pub category: FiniteCategory,
    pub table: DisjointnessTable,
    pub patches: Vec<LatticePatch>,
    pub structures: Vec<ChiralStructure>,
    pub morphisms: Vec<ChiralMorphism>,
    pub main_objects: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ChiralMorphismSpec {
    pub source: usize,
    pub target: usize,
    pub actions: Vec<ChiralAction>,
}

#[derive(Debug, Clone, Copy)]
pub struct ChiralCategoryOptions {
    pub add_basis_probes: bool,
    /// Reject family patches that are not chiral-initial.
    pub require_initial: bool,
    pub max_morphisms: usize,
}

impl Default for ChiralCategoryOptions {
    fn default() -> Self {
        ChiralCategoryOptions {
            add_basis_probes: false,
            require_initial: false,
            max_morphisms: 4000,
        }
    }
}

type PatchKey = (Vec<Coord>, Option<i64>, Option<i64>);
type MorphismKey = (usize, usize, Vec<usize>);

fn patch_key(patch: &LatticePatch) -> PatchKey {
    (
        patch.points().to_vec(),
        patch.periodicity().u,
        patch.periodicity().v,
    )
}

pub fn build_chiral_category(
    chirality: Chirality,
    family: Vec<LatticePatch>,
    generators: Vec<ChiralMorphismSpec>,
    options: ChiralCategoryOptions,
) -> Result<ChiralCategory, ChiralError> {
    if options.require_initial {
        for patch in &family {
            let cs = chiral_relation(patch, chirality);
            if let Some(reason) = cs.chi_initial_obstruction() {
                return Err(ChiralError::NotInitial(reason));
            }
        }
    }

    let mut patches: Vec<LatticePatch> = Vec::new();
    let mut object_index: HashMap<PatchKey, usize> = HashMap::new();
    let mut family_objects = Vec::new();
    for patch in family {
        let key = patch_key(&patch);
        let idx = *object_index.entry(key).or_insert_with(|| {
            patches.push(patch);
            patches.len() - 1
        });
        family_objects.push(idx);
    }
    let main_objects: Vec<usize> = {
        let mut v = family_objects.clone();
        v.sort_unstable();
        v.dedup();
        v
    };

    struct Pending {
        source: usize,
        target: usize,
        morphism: ChiralMorphism,
    }
    let mut pending: Vec<Pending> = Vec::new();
    for (gi, spec) in generators.iter().enumerate() {
        let src = *family_objects.get(spec.source).ok_or(ChiralError::BadGenerator {
            index: gi,
            object: spec.source,
            count: family_objects.len(),
        })?;
        let tgt = *family_objects.get(spec.target).ok_or(ChiralError::BadGenerator {
            index: gi,
            object: spec.target,
            count: family_objects.len(),
        })?;
        let m = ChiralMorphism::new(patches[src].clone(), patches[tgt].clone(), spec.actions.clone())?;
        pending.push(Pending { source: src, target: tgt, morphism: m });
    }

    if options.add_basis_probes {
        let base_count = patches.len();
        for o in 0..base_count {
            let patch = patches[o].clone();
            for i in 0..patch.len() {
                let p = patch.coord(i);
                let mut members = Vec::new();
                for du in -1..=1 {
                    for dv in -1..=1 {
                        if let Some(j) = patch.index_of((p.0 + du, p.1 + dv)) {
                            members.push(j);
                        }
                    }
                }
                let probe = patch.sub_patch(&members);
                let key = patch_key(&probe);
                let probe_obj = *object_index.entry(key).or_insert_with(|| {
                    patches.push(probe.clone());
                    patches.len() - 1
                });
                let incl = ChiralMorphism::inclusion(patches[probe_obj].clone(), patch.clone())?;
                pending.push(Pending { source: probe_obj, target: o, morphism: incl });
            }
        }
    }

    let mut morphisms: Vec<ChiralMorphism> = Vec::new();
    let mut endpoints: Vec<MorphismData> = Vec::new();
    let mut morphism_index: HashMap<MorphismKey, usize> = HashMap::new();
    let add = |source: usize,
                   target: usize,
                   m: ChiralMorphism,
                   morphisms: &mut Vec<ChiralMorphism>,
                   endpoints: &mut Vec<MorphismData>,
                   morphism_index: &mut HashMap<MorphismKey, usize>|
     -> usize {
        let key = (source, target, m.point_map().to_vec());
        if let Some(&i) = morphism_index.get(&key) {
            return i;
        }
        morphism_index.insert(key, morphisms.len());
        morphisms.push(m);
        endpoints.push(MorphismData { source, target });
        morphisms.len() - 1
    };

    let mut identities = Vec::with_capacity(patches.len());
    for (o, patch) in patches.iter().enumerate() {
        let id = add(o, o, ChiralMorphism::identity(patch.clone()), &mut morphisms, &mut endpoints, &mut morphism_index);
        identities.push(id);
    }
    for p in pending {
        add(p.source, p.target, p.morphism, &mut morphisms, &mut endpoints, &mut morphism_index);
    }

    loop {
        let count = morphisms.len();
        if count > options.max_morphisms {
            return Err(ChiralError::TooManyMorphisms(options.max_morphisms));
        }
        let mut added = false;
        for g in 0..count {
            for f in 0..count {
                if endpoints[f].target != endpoints[g].source {
                    continue;
                }
                let composed = morphisms[g].compose(&morphisms[f])?;
                let key = (endpoints[f].source, endpoints[g].target, composed.point_map().to_vec());
                if !morphism_index.contains_key(&key) {
                    add(endpoints[f].source, endpoints[g].target, composed, &mut morphisms, &mut endpoints, &mut morphism_index);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    if morphisms.len() > options.max_morphisms {
        return Err(ChiralError::TooManyMorphisms(options.max_morphisms));
    }

    let m = morphisms.len();
    let mut composites = Vec::new();
    for g in 0..m {
        for f in 0..m {
            if endpoints[f].target != endpoints[g].source {
                continue;
            }
            let composed = morphisms[g].compose(&morphisms[f])?;
            let key = (endpoints[f].source, endpoints[g].target, composed.point_map().to_vec());
            composites.push((g, f, morphism_index[&key]));
        }
    }
    let names = (0..patches.len()).map(|o| format!("P{o}")).collect();
    let category = FiniteCategory::new(names, endpoints, identities, &composites)
        .expect("generated indices are in range");

    let structures: Vec<ChiralStructure> =
        patches.iter().map(|p| chiral_relation(p, chirality)).collect();
    let images: Vec<FixedBitSet> = morphisms.iter().map(chiral_image_bitset).collect();
    let related = category.conterminous_pairs().into_iter().filter(|&(f1, f2)| {
        let tgt = category.target(f1);
        images[f1]
            .ones()
            .all(|p| structures[tgt].sym_reach.row(p).is_disjoint(&images[f2]))
    });
    let table = DisjointnessTable::new(&category, related).expect("pairs are conterminous");

    Ok(ChiralCategory {
        chirality,
        category,
        table,
        patches,
        structures,
        morphisms,
        main_objects,
    })
}

/// Swap the lightcone coordinates, exchanging the two chiralities.
pub fn orientation_reversal_patch(patch: &LatticePatch) -> LatticePatch {
    let pts: Vec<Coord> = patch.points().iter().map(|&(u, v)| (v, u)).collect();
    let periodicity = crate::lattice::Periodicity {
        u: patch.periodicity().v,
        v: patch.periodicity().u,
    };
    LatticePatch::new(pts, periodicity).expect("swap preserves distinctness")
}

/// Swap the coordinate maps of an action.
pub fn orientation_reversal_action(action: &ChiralAction) -> ChiralAction {
    match action {
        ChiralAction::Translate((a, b)) => ChiralAction::Translate((*b, *a)),
        ChiralAction::Monotone { map_u, map_v } => ChiralAction::Monotone {
            map_u: map_v.clone(),
            map_v: map_u.clone(),
        },
    }
}

/// A finite disjoint union of finite chains: the quotient of a patch by its
/// symmetric chiral reachability, one chain per patch component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrderBundle {
    /// Lengths of the chains.
    pub chains: Vec<usize>,
}

impl LinearOrderBundle {
    pub fn total_elements(&self) -> usize {
        self.chains.iter().sum()
    }
}

/// The quotient data of a chiral-initial patch: the bundle shape, the class
/// of each point and the (chain, position) of each class.
#[derive(Debug, Clone)]
pub struct QuotientObject {
    pub bundle: LinearOrderBundle,
    pub class_of_point: Vec<usize>,
    /// Class id -> (chain index, position along the chain).
    pub placement: Vec<(usize, usize)>,
}

/// Quotient a chiral-initial patch to its bundle of classes, chains ordered
/// by the fixed coordinate within each component.
pub fn quotient_object(cs: &ChiralStructure) -> Result<QuotientObject, ChiralError> {
    if let Some(reason) = cs.chi_initial_obstruction() {
        return Err(ChiralError::NotInitial(reason));
    }
    let comp_count = cs.patch.component_count();
    let mut per_component: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
    for (rid, members) in cs.runs.runs.iter().enumerate() {
        per_component[cs.patch.component_of(members[0])].push(rid);
    }
    let mut placement = vec![(usize::MAX, usize::MAX); cs.runs.runs.len()];
    let mut chains = Vec::new();
    for runs in per_component.iter_mut() {
        if runs.is_empty() {
            continue;
        }
        runs.sort_by_key(|&rid| cs.chirality.fixed_coord(cs.patch.coord(cs.runs.runs[rid][0])));
        let chain_index = chains.len();
        for (pos, &rid) in runs.iter().enumerate() {
            placement[rid] = (chain_index, pos);
        }
        chains.push(runs.len());
    }
    Ok(QuotientObject {
        bundle: LinearOrderBundle { chains },
        class_of_point: cs.runs.run_of.clone(),
        placement,
    })
}

/// A map of bundles: each source chain lands in one target chain by a
/// strictly increasing position map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleMap {
    pub source: LinearOrderBundle,
    pub target: LinearOrderBundle,
    pub chain_map: Vec<usize>,
    /// Per source chain, the target positions of its elements.
    pub position_map: Vec<Vec<usize>>,
}

impl BundleMap {
    pub fn identity(bundle: LinearOrderBundle) -> Self {
        let chain_map = (0..bundle.chains.len()).collect();
        let position_map = bundle.chains.iter().map(|&len| (0..len).collect()).collect();
        BundleMap {
            source: bundle.clone(),
            target: bundle,
            chain_map,
            position_map,
        }
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.position_map
            .iter()
            .all(|m| m.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: std::collections::BTreeSet<(usize, usize)> = Default::default();
        for (chain, positions) in self.position_map.iter().enumerate() {
            for &p in positions {
                if !seen.insert((self.chain_map[chain], p)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective()
            && self
                .position_map
                .iter()
                .map(|m| m.len())
                .sum::<usize>()
                == self.target.total_elements()
    }

    /// Flattened element map, for the concrete-category view.
    pub fn element_map(&self) -> Vec<usize> {
        let offset = |bundle: &LinearOrderBundle, chain: usize| -> usize {
            bundle.chains[..chain].iter().sum()
        };
        let mut out = Vec::new();
        for (chain, positions) in self.position_map.iter().enumerate() {
            let tchain = self.chain_map[chain];
            for &p in positions {
                out.push(offset(&self.target, tchain) + p);
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &BundleMap) -> Result<BundleMap, ChiralError> {
        if inner.target != self.source {
            return Err(ChiralError::ComposeMismatch);
        }
        let chain_map = inner.chain_map.iter().map(|&c| self.chain_map[c]).collect();
        let position_map = inner
            .position_map
            .iter()
            .enumerate()
            .map(|(chain, positions)| {
                let mid = inner.chain_map[chain];
                positions.iter().map(|&p| self.position_map[mid][p]).collect()
            })
            .collect();
        Ok(BundleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            chain_map,
            position_map,
        })
    }
}

/// The induced map of quotients: `[p] ↦ [f p]`.
pub fn quotient_morphism(
    f: &ChiralMorphism,
    src: &QuotientObject,
    tgt: &QuotientObject,
) -> Result<BundleMap, ChiralError> {
    let src_classes = src.placement.len();
    let mut class_image = vec![usize::MAX; src_classes];
    for i in 0..f.source.len() {
        let c = src.class_of_point[i];
        let image_class = tgt.class_of_point[f.apply(i)];
        if class_image[c] == usize::MAX {
            class_image[c] = image_class;
        } else if class_image[c] != image_class {
            return Err(ChiralError::RunTorn { component: f.source.component_of(i) });
        }
    }
    let chain_count = src.bundle.chains.len();
    let mut chain_map = vec![usize::MAX; chain_count];
    let mut position_map: Vec<Vec<usize>> =
        src.bundle.chains.iter().map(|&len| vec![usize::MAX; len]).collect();
    for (class, &image_class) in class_image.iter().enumerate() {
        let (chain, pos) = src.placement[class];
        let (tchain, tpos) = tgt.placement[image_class];
        if chain_map[chain] == usize::MAX {
            chain_map[chain] = tchain;
        } else if chain_map[chain] != tchain {
            return Err(ChiralError::RunTorn { component: chain });
        }
        position_map[chain][pos] = tpos;
    }
    let map = BundleMap {
        source: src.bundle.clone(),
        target: tgt.bundle.clone(),
        chain_map,
        position_map,
    };
    if !map.is_strictly_increasing() {
        return Err(ChiralError::NotIncreasing { component: 0 });
    }
    Ok(map)
}

/// A scalar field constant on each symmetric chiral class.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionField {
    /// One value per point, constant on classes.
    pub values: Vec<f64>,
}

impl FermionField {
    pub fn value_at(&self, point: usize) -> f64 {
        self.values[point]
    }
}

/// Transport initial data off a chiral Cauchy set: the unique field constant
/// on each class and agreeing with the data on the set.
pub fn fermion_transport(
    cs: &ChiralStructure,
    cauchy_set: &[usize],
    initial: &[f64],
) -> Result<FermionField, ChiralError> {
    if cauchy_set.len() != initial.len() {
        return Err(ChiralError::BadInitialData(format!(
            "{} data values for {} points",
            initial.len(),
            cauchy_set.len()
        )));
    }
    let mut class_value: Vec<Option<f64>> = vec![None; cs.runs.runs.len()];
    for (&p, &v) in cauchy_set.iter().zip(initial) {
        let class = cs.runs.run_of[p];
        if class_value[class].is_some() {
            return Err(ChiralError::NotCauchySet(format!(
                "class of point {p} is valued twice"
            )));
        }
        class_value[class] = Some(v);
    }
    let mut values = Vec::with_capacity(cs.patch.len());
    for i in 0..cs.patch.len() {
        match class_value[cs.runs.run_of[i]] {
            Some(v) => values.push(v),
            None => {
                return Err(ChiralError::NotCauchySet(format!(
                    "class of point {i} is unvalued"
                )))
            }
        }
    }
    Ok(FermionField { values })
}

/// The toy solution-space assignment on bundles: a bundle maps to the space
/// of one scalar per chain element, and a bundle map to the 0/1 matrix
/// summing a source element's value into its image slot.
pub fn solution_space_matrix(map: &BundleMap) -> Vec<Vec<i64>> {
    let rows = map.target.total_elements();
    let cols = map.source.total_elements();
    let mut matrix = vec![vec![0i64; cols]; rows];
    for (col, &row) in map.element_map().iter().enumerate() {
        matrix[row][col] += 1;
    }
    matrix
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn matrix_rank(matrix: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, p);
        for r in 0..rows {
            if r != pivot_row && m[r][col] != 0 {
                let (a, b) = (m[pivot_row][col], m[r][col]);
                for c in 0..cols {
                    m[r][c] = m[r][c] * a - m[pivot_row][c] * b;
                }
            }
        }
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Column support of the solution-space matrix: the target slots a source
/// generator can reach.
pub fn matrix_support(matrix: &[Vec<i64>]) -> Vec<usize> {
    let mut rows = Vec::new();
    for (r, row) in matrix.iter().enumerate() {
        if row.iter().any(|&x| x != 0) {
            rows.push(r);
        }
    }
    rows
}

/// Quotient data for every chiral-initial object of a category, with the
/// induced bundle map for every morphism between such objects.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub objects: Vec<Option<QuotientObject>>,
    pub maps: Vec<Option<BundleMap>>,
}

pub fn quotient_data(site: &ChiralCategory) -> QuotientData {
    let objects: Vec<Option<QuotientObject>> = site
        .structures
        .iter()
        .map(|cs| quotient_object(cs).ok())
        .collect();
    let maps = (0..site.category.morphism_count())
        .map(|f| {
            let src = site.category.source(f);
            let tgt = site.category.target(f);
            match (&objects[src], &objects[tgt]) {
                (Some(qs), Some(qt)) => quotient_morphism(&site.morphisms[f], qs, qt).ok(),
                _ => None,
            }
        })
        .collect();
    QuotientData { objects, maps }
}

/// Exhaustive checks of the quotient assignment on a chiral category:
/// functoriality, that it preserves and reflects the disjointness relation
/// (related pairs are exactly those with disjoint quotient images), that
/// bundle maps are overlap-monic for setwise disjointness iff injective,
/// that chiral Cauchy maps are exactly those with invertible quotient, and
/// the 2-of-6 property of the Cauchy class.
pub fn verify_q_properties(site: &ChiralCategory) -> crate::fincat::ValidationReport {
    use crate::fincat::ValidationReport;
    let mut report = ValidationReport::default();
    let q = quotient_data(site);
    let cat = &site.category;

    // functoriality on composable pairs of quotientable morphisms
    for g in 0..cat.morphism_count() {
        for f in 0..cat.morphism_count() {
            let Some(gf) = cat.compose(g, f) else { continue };
            if let (Some(qg), Some(qf), Some(qgf)) = (&q.maps[g], &q.maps[f], &q.maps[gf]) {
                report.checks += 1;
                match qg.compose(qf) {
                    Ok(composed) if &composed == qgf => {}
                    _ => report.push(
                        "quotient-functorial",
                        vec![g, f, gf],
                        format!("Q({g} ∘ {f}) differs from Q{g} ∘ Q{f}"),
                    ),
                }
            }
        }
    }
    for o in 0..cat.object_count() {
        if let Some(qid) = &q.maps[cat.identity(o)] {
            report.checks += 1;
            if *qid != BundleMap::identity(qid.source.clone()) {
                report.push("quotient-identity", vec![o], format!("Q(id) is not the identity on object {o}"));
            }
        }
    }

    // disjointness transport: related iff the quotient images are disjoint
    for (f1, f2) in cat.conterminous_pairs() {
        if let (Some(q1), Some(q2)) = (&q.maps[f1], &q.maps[f2]) {
            report.checks += 1;
            let im1: std::collections::BTreeSet<usize> = q1.element_map().into_iter().collect();
            let im2: std::collections::BTreeSet<usize> = q2.element_map().into_iter().collect();
            let disjoint = im1.is_disjoint(&im2);
            if disjoint != site.table.related(f1, f2) {
                report.push(
                    "quotient-preserves-reflects",
                    vec![f1, f2],
                    format!(
                        "pair ({f1}, {f2}): related={} quotient-images-disjoint={}",
                        site.table.related(f1, f2),
                        disjoint
                    ),
                );
            }
        }
    }

    // bundle maps are setwise overlap-monic iff injective, checked in a
    // concrete category enriched with singleton probes
    {
        use crate::fincat::{build_concrete_category, ConcreteBuildOptions, GeneratingMap};
        use crate::relcore::{FiniteIndexedSet, RelationMap};
        let mut object_of: Vec<Option<usize>> = vec![None; cat.object_count()];
        let mut sets = Vec::new();
        for (o, qo) in q.objects.iter().enumerate() {
            if let Some(qo) = qo {
                object_of[o] = Some(sets.len());
                sets.push(FiniteIndexedSet::new(qo.bundle.total_elements()));
            }
        }
        let mut maps = Vec::new();
        for f in 0..cat.morphism_count() {
            if let Some(qf) = &q.maps[f] {
                let (src, tgt) = (
                    object_of[cat.source(f)].expect("source quotientable"),
                    object_of[cat.target(f)].expect("target quotientable"),
                );
                maps.push(GeneratingMap {
                    source: src,
                    target: tgt,
                    map: RelationMap::new(sets[src].clone(), sets[tgt].clone(), qf.element_map())
                        .expect("element map in range"),
                });
            }
        }
        if let Ok((bcat, bconcrete)) = build_concrete_category(
            sets,
            None,
            None,
            maps,
            ConcreteBuildOptions {
                close_under_composition: true,
                adjoin_singleton_probes: true,
            },
        ) {
            if let Ok(table) = crate::disjoint::builtin_setwise(&bcat, &bconcrete) {
                for h in 0..bcat.morphism_count() {
                    report.checks += 1;
                    let monic = crate::disjoint::is_overlap_monic(&bcat, &table, h).monic;
                    if monic != bconcrete.maps[h].is_injective() {
                        report.push(
                            "bundle-monic-injective",
                            vec![h],
                            format!("bundle morphism {h}: monic={monic} injective={}", bconcrete.maps[h].is_injective()),
                        );
                    }
                }
            }
        }
    }

    // inside the monic subcategory: Cauchy iff invertible quotient, and the
    // Cauchy class satisfies 2-of-6
    let monic: Vec<bool> = (0..cat.morphism_count())
        .map(|f| crate::disjoint::is_overlap_monic(cat, &site.table, f).monic)
        .collect();
    let cauchy: Vec<Option<bool>> = (0..cat.morphism_count())
        .map(|f| {
            let tgt = cat.target(f);
            q.objects[tgt]
                .is_some()
                .then(|| is_chi_cauchy_map(&site.morphisms[f], &site.structures[tgt]))
        })
        .collect();
    for f in 0..cat.morphism_count() {
        if !monic[f] {
            continue;
        }
        if let (Some(is_cauchy), Some(qf)) = (cauchy[f], &q.maps[f]) {
            report.checks += 1;
            if is_cauchy != qf.is_bijective() {
                report.push(
                    "cauchy-iff-quotient-iso",
                    vec![f],
                    format!("morphism {f}: cauchy={is_cauchy} quotient-bijective={}", qf.is_bijective()),
                );
            }
        }
    }
    for h in 0..cat.morphism_count() {
        for g in 0..cat.morphism_count() {
            if cat.target(g) != cat.source(h) {
                continue;
            }
            let Some(hg) = cat.compose(h, g) else { continue };
            for f in 0..cat.morphism_count() {
                if cat.target(f) != cat.source(g) {
                    continue;
                }
                let Some(gf) = cat.compose(g, f) else { continue };
                if !(monic[f] && monic[g] && monic[h]) {
                    continue;
                }
                let (Some(c_gf), Some(c_hg)) = (cauchy[gf], cauchy[hg]) else { continue };
                if !(c_gf && c_hg) {
                    continue;
                }
                let hgf = cat.compose(h, gf).expect("composable");
                report.checks += 1;
                let all = [f, g, h, hgf]
                    .into_iter()
                    .all(|m| cauchy[m] == Some(true));
                if !all {
                    report.push(
                        "two-of-six",
                        vec![f, g, h],
                        "gf and hg are Cauchy but not all of f, g, h, hgf are".to_string(),
                    );
                }
            }
        }
    }

    report
}

/// Checks of the toy solution-space assignment composed with the quotient:
/// chiral Cauchy maps get invertible matrices and related pairs get
/// assignments with disjoint supports.
pub fn verify_solution_space(site: &ChiralCategory) -> crate::fincat::ValidationReport {
    let mut report = crate::fincat::ValidationReport::default();
    let q = quotient_data(site);
    let cat = &site.category;
    for f in 0..cat.morphism_count() {
        let Some(qf) = &q.maps[f] else { continue };
        let matrix = solution_space_matrix(qf);
        let tgt = cat.target(f);
        if is_chi_cauchy_map(&site.morphisms[f], &site.structures[tgt]) && qf.is_injective() {
            report.checks += 1;
            let dim = qf.target.total_elements();
            if matrix.len() != dim || matrix_rank(&matrix) != dim {
                report.push(
                    "time-slice-invertible",
                    vec![f],
                    format!("Cauchy morphism {f} has solution-space rank {} of {dim}", matrix_rank(&matrix)),
                );
            }
        }
    }
    for (f1, f2) in cat.conterminous_pairs() {
        if !site.table.related(f1, f2) {
            continue;
        }
        if let (Some(q1), Some(q2)) = (&q.maps[f1], &q.maps[f2]) {
            report.checks += 1;
            let s1 = matrix_support(&solution_space_matrix(q1));
            let s2 = matrix_support(&solution_space_matrix(q2));
            if s1.iter().any(|r| s2.contains(r)) {
                report.push(
                    "causality-disjoint-supports",
                    vec![f1, f2],
                    format!("related pair ({f1}, {f2}) has overlapping generator supports"),
                );
            }
        }
    }
    report
}

/// The solution-space assignment pre-composed with the quotient: one matrix
/// per morphism with quotientable endpoints.
pub fn solution_space_assignment(site: &ChiralCategory) -> Vec<Option<Vec<Vec<i64>>>> {
    quotient_data(site)
        .maps
        .iter()
        .map(|m| m.as_ref().map(solution_space_matrix))
        .collect()
}

/// Build the category of chiral-initial patches under the chiral
/// disjointness relation and restrict it to its orthogonal subcategory.
pub fn build_chiloc_category(
    chirality: Chirality,
    family: Vec<LatticePatch>,
    generators: Vec<ChiralMorphismSpec>,
    options: ChiralCategoryOptions,
) -> Result<(ChiralCategory, crate::disjoint::OrthogonalCategory), ChiralError> {
    let site = build_chiral_category(
        chirality,
        family,
        generators,
        ChiralCategoryOptions { require_initial: true, ..options },
    )?;
    let ortho = crate::disjoint::overlap_monic_subcategory(&site.category, &site.table)
        .expect("generated chiral tables satisfy the axioms");
    Ok((site, ortho))
}



#[cfg(test)]
mod cauchy_relationship_tests {
    use super::*;

    // The continuum inclusion "Cauchy maps are chiral Cauchy maps" holds
    // discretely for separating antichains like the middle antidiagonal, but
    // fails at a finite-patch artifact: every maximal chain of a block
    // passes its corners, so a corner alone is chain-Cauchy while missing
    // whole runs. The converse counterexample is a single column.
    #[test]
    fn discrete_cauchy_inclusion_and_its_boundary_artifact() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let chiral = chiral_relation(&p, Chirality::Right);
        let causal = crate::causal::causal_relation(&p);

        // middle antidiagonal: Cauchy in both senses
        let diag: Vec<usize> = (0..p.len()).filter(|&i| p.coord(i).0 + p.coord(i).1 == 2).collect();
        let diag_chiral = ChiralMorphism::inclusion(p.sub_patch(&diag), p.clone()).unwrap();
        let diag_causal =
            crate::lattice::PatchMorphism::inclusion(p.sub_patch(&diag), p.clone()).unwrap();
        assert!(crate::causal::is_cauchy_map(&diag_causal, &causal));
        assert!(is_chi_cauchy_map(&diag_chiral, &chiral));

        // the corner artifact: chain-Cauchy but misses two runs
        let corner = vec![p.index_of((0, 0)).unwrap()];
        let corner_causal =
            crate::lattice::PatchMorphism::inclusion(p.sub_patch(&corner), p.clone()).unwrap();
        let corner_chiral = ChiralMorphism::inclusion(p.sub_patch(&corner), p.clone()).unwrap();
        assert!(crate::causal::is_cauchy_map(&corner_causal, &causal));
        assert!(!is_chi_cauchy_map(&corner_chiral, &chiral));

        // the stored converse counterexample: one column is chirally Cauchy
        // but not causally Cauchy
        let col: Vec<usize> = (0..p.len()).filter(|&i| p.coord(i).1 == 1).collect();
        let col_causal =
            crate::lattice::PatchMorphism::inclusion(p.sub_patch(&col), p.clone()).unwrap();
        let col_chiral = ChiralMorphism::inclusion(p.sub_patch(&col), p.clone()).unwrap();
        assert!(is_chi_cauchy_map(&col_chiral, &chiral));
        assert!(!crate::causal::is_cauchy_map(&col_causal, &causal));
    }
}
