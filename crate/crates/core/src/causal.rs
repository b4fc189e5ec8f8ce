//! Causal structure on lattice patches.
//!
//! The reachability relation of a patch is the reflexive-transitive closure
//! of its in-patch unit steps; chains (monotone staircases) stand in for
//! future-directed causal curves. On top of this the module provides the
//! causal hierarchy classifier, order-convexity, Cauchy antichains and
//! Cauchy maps, and a builder producing a finite category of patches
//! equipped with the causal disjointness relation.

use crate::disjoint::DisjointnessTable;
use crate::fincat::{FiniteCategory, MorphismData};
use crate::lattice::{ComponentAction, Coord, LatticeError, LatticePatch, PatchMorphism};
use crate::relcore::{
    reflexive_transitive_closure, symmetric_closure, topological_closure, FiniteIndexedSet,
    NeighborhoodStructure, Relation,
};
use fixedbitset::FixedBitSet;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CausalError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("patch is not causal; {0} is undefined on closed chains")]
    NotCausal(&'static str),
    #[error("morphism generator {index} refers to object {object} of {count}")]
    BadGenerator { index: usize, object: usize, count: usize },
    #[error("category generation exceeded the morphism cap of {0}")]
    TooManyMorphisms(usize),
    #[error("maximal-chain enumeration exceeded the cap of {0}")]
    TooManyChains(usize),
}

/// Causal classification levels, ordered by strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum CausalLevel {
    None,
    Causal,
    CausallySimple,
    GloballyHyperbolic,
}

/// A patch with its causal reachability relation, the symmetric closure,
/// and the declared neighborhood basis (radius-1 diamonds).
#[derive(Debug, Clone)]
pub struct CausalStructure {
    pub patch: LatticePatch,
    pub reach: Relation,
    pub sym_reach: Relation,
    pub neighborhoods: NeighborhoodStructure,
}

/// The radius-1 diamond of each point intersected with the patch, as the
/// single declared basis set.
pub fn diamond_basis(patch: &LatticePatch) -> NeighborhoodStructure {
    let n = patch.len();
    let carrier = FiniteIndexedSet::new(n);
    let mut basis = Vec::with_capacity(n);
    for i in 0..n {
        let p = patch.coord(i);
        let mut set = FixedBitSet::with_capacity(n);
        for du in -1..=1 {
            for dv in -1..=1 {
                if let Some(j) = patch.index_of((p.0 + du, p.1 + dv)) {
                    set.insert(j);
                }
            }
        }
        basis.push(vec![set]);
    }
    NeighborhoodStructure::from_bitsets(carrier, basis)
}

/// The one-step relation: `p → p + e` for either unit step, within the patch.
pub fn step_relation(patch: &LatticePatch) -> Relation {
    let n = patch.len();
    let mut r = Relation::empty_of_size(n);
    for i in 0..n {
        let p = patch.coord(i);
        for step in [(1, 0), (0, 1)] {
            if let Some(j) = patch.index_of((p.0 + step.0, p.1 + step.1)) {
                r.insert(i, j).expect("in bounds");
            }
        }
    }
    r
}

/// Build the causal structure of a patch: reachability as the
/// reflexive-transitive closure of unit steps, its symmetric closure, and the
/// diamond basis.
pub fn causal_relation(patch: &LatticePatch) -> CausalStructure {
    let reach = reflexive_transitive_closure(&step_relation(patch));
    let sym_reach = symmetric_closure(&reach);
    let neighborhoods = diamond_basis(patch);
    CausalStructure {
        patch: patch.clone(),
        reach,
        sym_reach,
        neighborhoods,
    }
}

impl CausalStructure {
    pub fn is_causal(&self) -> bool {
        self.reach.is_antisymmetric()
    }

    /// Topological closure of the symmetric reachability relation under the
    /// declared basis.
    pub fn closed_sym_reach(&self) -> Relation {
        topological_closure(&self.sym_reach, &self.neighborhoods).expect("same carrier")
    }

    pub fn closed_reach(&self) -> Relation {
        topological_closure(&self.reach, &self.neighborhoods).expect("same carrier")
    }
}

/// Maximal chains of a causal patch: maximal paths in the cover digraph from
/// minimal to maximal points. Errors when the patch is not causal.
pub fn maximal_chains(cs: &CausalStructure) -> Result<Vec<Vec<usize>>, CausalError> {
    maximal_chains_capped(cs, 200_000)
}

#[allow(clippy::needless_range_loop)]
pub fn maximal_chains_capped(cs: &CausalStructure, cap: usize) -> Result<Vec<Vec<usize>>, CausalError> {
    if !cs.is_causal() {
        return Err(CausalError::NotCausal("maximal chains"));
    }
    let n = cs.patch.len();
    let reach = &cs.reach;
    // cover digraph: strict pairs with no strictly-between point
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut has_pred = vec![false; n];
    for p in 0..n {
        for q in reach.row(p).ones() {
            if q == p {
                continue;
            }
            let between = reach
                .row(p)
                .ones()
                .any(|r| r != p && r != q && reach.contains(r, q));
            if !between {
                covers[p].push(q);
                has_pred[q] = true;
            }
        }
    }
    let mut chains = Vec::new();
    let mut stack = Vec::new();
    fn dfs(
        p: usize,
        covers: &[Vec<usize>],
        stack: &mut Vec<usize>,
        chains: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), CausalError> {
        stack.push(p);
        if covers[p].is_empty() {
            if chains.len() >= cap {
                return Err(CausalError::TooManyChains(cap));
            }
            chains.push(stack.clone());
        } else {
            for &q in &covers[p] {
                dfs(q, covers, stack, chains, cap)?;
            }
        }
        stack.pop();
        Ok(())
    }
    for p in 0..n {
        if !has_pred[p] {
            dfs(p, &covers, &mut stack, &mut chains, cap)?;
        }
    }
    Ok(chains)
}

/// Is the subset order-convex: every reachability interval with endpoints in
/// the subset stays inside it? Returns the first witness point outside.
pub fn causal_convexity_witness(cs: &CausalStructure, subset: &FixedBitSet) -> Option<usize> {
    let n = cs.patch.len();
    for r in 0..n {
        if subset.contains(r) {
            continue;
        }
        let has_pred = cs.reach.iter_pairs().next().is_some() // cheap guard for empty relations
            && subset.ones().any(|p| cs.reach.contains(p, r));
        if !has_pred {
            continue;
        }
        let has_succ = subset.ones().any(|q| cs.reach.contains(r, q));
        if has_succ {
            return Some(r);
        }
    }
    None
}

pub fn is_causally_convex(cs: &CausalStructure, subset: &FixedBitSet) -> bool {
    causal_convexity_witness(cs, subset).is_none()
}

/// Search for antichains meeting every maximal chain exactly once, restricted
/// to the allowed point set, up to `limit` results.
pub fn cauchy_antichains_within(
    cs: &CausalStructure,
    allowed: &FixedBitSet,
    limit: usize,
) -> Result<Vec<Vec<usize>>, CausalError> {
    let chains = maximal_chains(cs)?;
    let mut results: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();

    fn incomparable(reach: &Relation, a: usize, b: usize) -> bool {
        a != b && !reach.contains(a, b) && !reach.contains(b, a)
    }

    fn search(
        idx: usize,
        chains: &[Vec<usize>],
        reach: &Relation,
        allowed: &FixedBitSet,
        chosen: &mut Vec<usize>,
        results: &mut Vec<Vec<usize>>,
        seen: &mut std::collections::BTreeSet<Vec<usize>>,
        limit: usize,
    ) {
        if results.len() >= limit {
            return;
        }
        if idx == chains.len() {
            let mut set = chosen.clone();
            set.sort_unstable();
            if seen.insert(set.clone()) {
                results.push(set);
            }
            return;
        }
        let chain = &chains[idx];
        if chain.iter().any(|p| chosen.contains(p)) {
            search(idx + 1, chains, reach, allowed, chosen, results, seen, limit);
            return;
        }
        for &p in chain {
            if !allowed.contains(p) {
                continue;
            }
            if chosen.iter().all(|&c| incomparable(reach, c, p)) {
                chosen.push(p);
                search(idx + 1, chains, reach, allowed, chosen, results, seen, limit);
                chosen.pop();
                if results.len() >= limit {
                    return;
                }
            }
        }
    }

    search(0, &chains, &cs.reach, allowed, &mut chosen, &mut results, &mut seen, limit);
    Ok(results)
}

/// All Cauchy antichains of a causal patch, up to `limit`.
pub fn cauchy_antichains(cs: &CausalStructure, limit: usize) -> Result<Vec<Vec<usize>>, CausalError> {
    let mut all = FixedBitSet::with_capacity(cs.patch.len());
    all.insert_range(..);
    cauchy_antichains_within(cs, &all, limit)
}

/// Does the patch admit a Cauchy antichain at all?
pub fn has_cauchy_antichain(cs: &CausalStructure) -> bool {
    !cs.is_causal() && false
        || cs.is_causal() && matches!(cauchy_antichains(cs, 1), Ok(v) if !v.is_empty())
}

/// Does a given set qualify as a Cauchy antichain?
pub fn is_cauchy_antichain(cs: &CausalStructure, set: &FixedBitSet) -> Result<bool, CausalError> {
    let chains = maximal_chains(cs)?;
    for a in set.ones() {
        for b in set.ones() {
            if a != b && cs.reach.contains(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(chains
        .iter()
        .all(|chain| chain.iter().filter(|p| set.contains(**p)).count() == 1))
}

/// Classify a patch in the causal hierarchy. The three predicates are
/// evaluated independently and the strongest satisfied level is returned.
pub fn classify_causal(cs: &CausalStructure) -> CausalLevel {
    if !cs.is_causal() {
        return CausalLevel::None;
    }
    if has_cauchy_antichain(cs) {
        return CausalLevel::GloballyHyperbolic;
    }
    if cs.closed_reach() == cs.reach {
        return CausalLevel::CausallySimple;
    }
    CausalLevel::Causal
}

/// Is the patch causally simple: causal with topologically closed reach?
pub fn is_causally_simple(cs: &CausalStructure) -> bool {
    cs.is_causal() && cs.closed_reach() == cs.reach
}

/// Is the patch globally hyperbolic in the discrete sense: causal with a
/// Cauchy antichain?
pub fn is_globally_hyperbolic(cs: &CausalStructure) -> bool {
    cs.is_causal() && has_cauchy_antichain(cs)
}

/// Image of a morphism as a bitset over the target's points.
pub fn image_bitset(f: &PatchMorphism) -> FixedBitSet {
    let mut img = FixedBitSet::with_capacity(f.target.len());
    for i in 0..f.source.len() {
        img.insert(f.apply(i));
    }
    img
}

/// Cauchy map: the image contains a Cauchy antichain of the target. False
/// when the target is not causal (no qualifying antichain exists).
pub fn is_cauchy_map(f: &PatchMorphism, target_cs: &CausalStructure) -> bool {
    if !target_cs.is_causal() {
        return false;
    }
    let img = image_bitset(f);
    matches!(
        cauchy_antichains_within(target_cs, &img, 1),
        Ok(v) if !v.is_empty()
    )
}

/// Does `f` reflect causal reachability up to time-orientation reversal:
/// whenever the images are related, the points lie in one source component
/// and relate in the source in the direction given by that component's
/// reversal flag?
pub fn reflects_reach_up_to_reversal(
    f: &PatchMorphism,
    src: &CausalStructure,
    tgt: &CausalStructure,
) -> bool {
    let n = f.source.len();
    for p in 0..n {
        for q in 0..n {
            if !tgt.reach.contains(f.apply(p), f.apply(q)) {
                continue;
            }
            let cp = f.source.component_of(p);
            if cp != f.source.component_of(q) {
                return false;
            }
            let ok = if f.reverses_on(cp) {
                src.reach.contains(q, p)
            } else {
                src.reach.contains(p, q)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Plain reflection of a relation along the point map.
pub fn reflects_relation(f: &PatchMorphism, src_rel: &Relation, tgt_rel: &Relation) -> bool {
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

/// The three equivalent faces of causal disjointness for two image sets:
/// (i) the symmetric reach misses `A × B`; (ii) the reach misses both
/// `A × B` and `B × A`; (iii) no chain connects `A` and `B`, decided by a
/// breadth-first search over unit steps.
pub fn causal_disjointness_faces(
    cs: &CausalStructure,
    a: &FixedBitSet,
    b: &FixedBitSet,
) -> (bool, bool, bool) {
    let face_sym = a.ones().all(|p| cs.sym_reach.row(p).is_disjoint(b));
    let face_reach = a.ones().all(|p| cs.reach.row(p).is_disjoint(b))
        && b.ones().all(|p| cs.reach.row(p).is_disjoint(a));

    // BFS over unit steps from A forwards, and from B forwards
    let steps = step_relation(&cs.patch);
    let bfs_hits = |from: &FixedBitSet, to: &FixedBitSet| -> bool {
        let mut visited = from.clone();
        let mut frontier: Vec<usize> = from.ones().collect();
        if frontier.iter().any(|&p| to.contains(p)) {
            return true;
        }
        while let Some(p) = frontier.pop() {
            for q in steps.row(p).ones() {
                if !visited.contains(q) {
                    if to.contains(q) {
                        return true;
                    }
                    visited.insert(q);
                    frontier.push(q);
                }
            }
        }
        false
    };
    let face_curve = !bfs_hits(a, b) && !bfs_hits(b, a);
    (face_sym, face_reach, face_curve)
}

/// A finite category of patches and structure-preserving maps carrying the
/// causal disjointness relation. Indices into `patches`/`structures` are the
/// category's object indices; `morphisms[i]` realizes category morphism `i`.
#[derive(Debug, Clone)]
pub struct CausalCategory {
    pub category: FiniteCategory,
    pub table: DisjointnessTable,
    pub patches: Vec<LatticePatch>,
    pub structures: Vec<CausalStructure>,
    pub morphisms: Vec<PatchMorphism>,
    /// Objects present in the input family (as opposed to generated probes).
    pub main_objects: Vec<usize>,
}

/// Options controlling category generation.
#[derive(Debug, Clone, Copy)]
pub struct CausalCategoryOptions {
    /// Add each point's diamond as a sub-patch object with its inclusion,
    /// providing the neighborhood probes the overlap-monic checks quantify
    /// over.
    pub add_basis_probes: bool,
    pub max_morphisms: usize,
}

impl Default for CausalCategoryOptions {
    fn default() -> Self {
        CausalCategoryOptions {
            add_basis_probes: false,
            max_morphisms: 4000,
        }
    }
}

/// A generating morphism between family patches.
#[derive(Debug, Clone)]
pub struct MorphismSpec {
    pub source: usize,
    pub target: usize,
    pub actions: Vec<ComponentAction>,
}

type PatchKey = (Vec<Coord>, Option<i64>, Option<i64>);
/// Dedup key of a morphism: endpoints plus the realized point map.
type MorphismKey = (usize, usize, Vec<usize>);

fn patch_key(patch: &LatticePatch) -> PatchKey {
    (
        patch.points().to_vec(),
        patch.periodicity().u,
        patch.periodicity().v,
    )
}

pub fn build_causal_category(
    family: Vec<LatticePatch>,
    generators: Vec<MorphismSpec>,
    options: CausalCategoryOptions,
) -> Result<CausalCategory, CausalError> {
    // objects: the family, deduplicated, then probe sub-patches
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

    struct PendingMorphism {
        source: usize,
        target: usize,
        morphism: PatchMorphism,
    }
    let mut pending: Vec<PendingMorphism> = Vec::new();

    for (gi, spec) in generators.iter().enumerate() {
        let src = *family_objects.get(spec.source).ok_or(CausalError::BadGenerator {
            index: gi,
            object: spec.source,
            count: family_objects.len(),
        })?;
        let tgt = *family_objects.get(spec.target).ok_or(CausalError::BadGenerator {
            index: gi,
            object: spec.target,
            count: family_objects.len(),
        })?;
        let m = PatchMorphism::new(patches[src].clone(), patches[tgt].clone(), spec.actions.clone())?;
        pending.push(PendingMorphism { source: src, target: tgt, morphism: m });
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
                let incl = PatchMorphism::inclusion(patches[probe_obj].clone(), patch.clone())?;
                pending.push(PendingMorphism { source: probe_obj, target: o, morphism: incl });
            }
        }
    }

    // morphism pool with dedup by (source, target, point map)
    let mut morphisms: Vec<PatchMorphism> = Vec::new();
    let mut endpoints: Vec<MorphismData> = Vec::new();
    let mut morphism_index: HashMap<MorphismKey, usize> = HashMap::new();
    let add_morphism = |source: usize,
                            target: usize,
                            m: PatchMorphism,
                            morphisms: &mut Vec<PatchMorphism>,
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
        let id = add_morphism(
            o,
            o,
            PatchMorphism::identity(patch.clone()),
            &mut morphisms,
            &mut endpoints,
            &mut morphism_index,
        );
        identities.push(id);
    }
    for pm in pending {
        add_morphism(
            pm.source,
            pm.target,
            pm.morphism,
            &mut morphisms,
            &mut endpoints,
            &mut morphism_index,
        );
    }

    // close under composition
    loop {
        let count = morphisms.len();
        if count > options.max_morphisms {
            return Err(CausalError::TooManyMorphisms(options.max_morphisms));
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
                    add_morphism(
                        endpoints[f].source,
                        endpoints[g].target,
                        composed,
                        &mut morphisms,
                        &mut endpoints,
                        &mut morphism_index,
                    );
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    if morphisms.len() > options.max_morphisms {
        return Err(CausalError::TooManyMorphisms(options.max_morphisms));
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

    let structures: Vec<CausalStructure> = patches.iter().map(causal_relation).collect();
    let images: Vec<FixedBitSet> = morphisms.iter().map(image_bitset).collect();
    let related = category.conterminous_pairs().into_iter().filter(|&(f1, f2)| {
        let tgt = category.target(f1);
        images[f1]
            .ones()
            .all(|p| structures[tgt].sym_reach.row(p).is_disjoint(&images[f2]))
    });
    let table = DisjointnessTable::new(&category, related).expect("pairs are conterminous");

    Ok(CausalCategory {
        category,
        table,
        patches,
        structures,
        morphisms,
        main_objects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Periodicity;

    fn punctured_block() -> LatticePatch {
        LatticePatch::punctured_rect(-2, 2, -2, 2, &[(0, 0)])
    }

    #[test]
    fn single_point_reach_is_reflexive_only() {
        let p = LatticePatch::new([(3, 4)], Periodicity::NONE).unwrap();
        let cs = causal_relation(&p);
        assert_eq!(cs.reach, Relation::diagonal(1));
    }

    #[test]
    fn block_reach_is_product_order() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let cs = causal_relation(&p);
        for i in 0..p.len() {
            for j in 0..p.len() {
                let (a, b) = (p.coord(i), p.coord(j));
                let expected = a.0 <= b.0 && a.1 <= b.1;
                assert_eq!(cs.reach.contains(i, j), expected, "{a:?} -> {b:?}");
            }
        }
    }

    /// Independent oracle: breadth-first search over unit steps.
    fn bfs_reach(patch: &LatticePatch) -> Relation {
        let n = patch.len();
        let steps = step_relation(patch);
        let mut r = Relation::empty_of_size(n);
        for s in 0..n {
            let mut frontier = vec![s];
            r.insert(s, s).unwrap();
            while let Some(p) = frontier.pop() {
                for q in steps.row(p).ones() {
                    if !r.contains(s, q) {
                        r.insert(s, q).unwrap();
                        frontier.push(q);
                    }
                }
            }
        }
        r
    }

    #[test]
    fn punctured_block_reach_matches_bfs_oracle() {
        let p = punctured_block();
        let cs = causal_relation(&p);
        assert_eq!(cs.reach, bfs_reach(&p));

        // the hole blocks the null line but not the timelike diagonal
        let a = p.index_of((0, -1)).unwrap();
        let b = p.index_of((0, 1)).unwrap();
        assert!(!cs.reach.contains(a, b));
        let c = p.index_of((-1, -1)).unwrap();
        let d = p.index_of((1, 1)).unwrap();
        assert!(cs.reach.contains(c, d));
    }

    #[test]
    fn reach_matches_bfs_on_random_patches() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..30 {
            let mut pts = Vec::new();
            for u in 0..4 {
                for v in 0..4 {
                    if rng.gen_bool(0.7) {
                        pts.push((u, v));
                    }
                }
            }
            let periodic = rng.gen_bool(0.3);
            let patch = LatticePatch::new(
                pts.clone(),
                Periodicity { u: None, v: periodic.then_some(4) },
            );
            let patch = match patch {
                Ok(p) => p,
                Err(_) => continue,
            };
            assert_eq!(causal_relation(&patch).reach, bfs_reach(&patch));
        }
    }

    #[test]
    fn non_periodic_patches_are_at_least_causal() {
        let p = punctured_block();
        let cs = causal_relation(&p);
        assert!(cs.is_causal());
        assert!(classify_causal(&cs) >= CausalLevel::Causal);
    }

    #[test]
    fn forward_periodic_cylinder_is_not_causal() {
        let p = LatticePatch::cylinder(2, 3, false, true).unwrap();
        let cs = causal_relation(&p);
        // oracle: find an explicit closed chain by search
        let steps = step_relation(&p);
        let mut cycle_found = false;
        for s in 0..p.len() {
            let mut frontier: Vec<usize> = steps.row(s).ones().collect();
            let mut visited = FixedBitSet::with_capacity(p.len());
            while let Some(q) = frontier.pop() {
                if q == s {
                    cycle_found = true;
                    break;
                }
                if !visited.contains(q) {
                    visited.insert(q);
                    frontier.extend(steps.row(q).ones());
                }
            }
            if cycle_found {
                break;
            }
        }
        assert!(cycle_found);
        assert_eq!(classify_causal(&cs), CausalLevel::None);
    }

    #[test]
    fn full_block_is_globally_hyperbolic_with_antidiagonal_cauchy_sets() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let cs = causal_relation(&p);
        assert_eq!(classify_causal(&cs), CausalLevel::GloballyHyperbolic);

        // every constant-(u+v) maximal antichain qualifies
        for t in 0..=4i64 {
            let mut set = FixedBitSet::with_capacity(p.len());
            for i in 0..p.len() {
                let c = p.coord(i);
                if c.0 + c.1 == t {
                    set.insert(i);
                }
            }
            if set.count_ones(..) == 0 {
                continue;
            }
            // antidiagonals with max breadth are Cauchy; narrow corner ones are not
            let expected = t == 2;
            if expected {
                assert!(is_cauchy_antichain(&cs, &set).unwrap(), "t={t}");
            }
        }

        let found = cauchy_antichains(&cs, 100).unwrap();
        assert!(!found.is_empty());
        // the middle antidiagonal must be among them
        let mid: Vec<usize> = (0..p.len()).filter(|&i| p.coord(i).0 + p.coord(i).1 == 2).collect();
        assert!(found.contains(&mid));
    }

    #[test]
    fn whole_patch_is_convex() {
        let p = punctured_block();
        let cs = causal_relation(&p);
        let mut all = FixedBitSet::with_capacity(p.len());
        all.insert_range(..);
        assert!(is_causally_convex(&cs, &all));
    }

    #[test]
    fn time_slab_is_convex() {
        let p = LatticePatch::rect(0, 3, 0, 3);
        let cs = causal_relation(&p);
        let mut slab = FixedBitSet::with_capacity(p.len());
        for i in 0..p.len() {
            let c = p.coord(i);
            if (2..=4).contains(&(c.0 + c.1)) {
                slab.insert(i);
            }
        }
        assert!(is_causally_convex(&cs, &slab));
    }

    #[test]
    fn spatial_strip_in_a_fat_block_is_not_order_convex() {
        // the continuum strip is open but not causally convex; the discrete
        // strip likewise fails order-convexity once the block is wide enough
        // for a staircase to exit and re-enter
        let p = LatticePatch::rect(0, 3, 0, 3);
        let cs = causal_relation(&p);
        let mut strip = FixedBitSet::with_capacity(p.len());
        for i in 0..p.len() {
            let c = p.coord(i);
            if (-1..=1).contains(&(c.0 - c.1)) {
                strip.insert(i);
            }
        }
        let witness = causal_convexity_witness(&cs, &strip);
        assert!(witness.is_some());
        let w = p.coord(witness.unwrap());
        assert!(!(-1..=1).contains(&(w.0 - w.1)));
    }

    #[test]
    fn two_timelike_points_are_not_convex_with_midpoint_witness() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let cs = causal_relation(&p);
        let mut set = FixedBitSet::with_capacity(p.len());
        set.insert(p.index_of((0, 0)).unwrap());
        set.insert(p.index_of((2, 2)).unwrap());
        let witness = causal_convexity_witness(&cs, &set).unwrap();
        let w = p.coord(witness);
        assert!(w.0 >= 0 && w.0 <= 2 && w.1 >= 0 && w.1 <= 2);
        assert_ne!(w, (0, 0));
        assert_ne!(w, (2, 2));
    }

    #[test]
    fn identity_is_a_cauchy_map() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let cs = causal_relation(&p);
        let f = PatchMorphism::identity(p);
        assert!(is_cauchy_map(&f, &cs));
    }

    #[test]
    fn antidiagonal_inclusion_is_a_cauchy_map() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let cs = causal_relation(&p);
        let diag: Vec<usize> = (0..p.len()).filter(|&i| p.coord(i).0 + p.coord(i).1 == 2).collect();
        let sub = p.sub_patch(&diag);
        let f = PatchMorphism::inclusion(sub, p.clone()).unwrap();
        assert!(is_cauchy_map(&f, &cs));
    }

    #[test]
    fn short_subblock_inclusion_is_not_a_cauchy_map() {
        // the off-corner sub-block misses the maximal chain running along
        // the far edge, so no antichain inside it can meet every chain
        let p = LatticePatch::rect(0, 3, 0, 3);
        let cs = causal_relation(&p);
        let sub = LatticePatch::rect(1, 2, 0, 1);
        let f = PatchMorphism::inclusion(sub, p.clone()).unwrap();
        assert!(!is_cauchy_map(&f, &cs));

        // while the bottom corner alone lies on every maximal chain
        let corner = p.sub_patch(&[p.index_of((0, 0)).unwrap()]);
        let g = PatchMorphism::inclusion(corner, p.clone()).unwrap();
        assert!(is_cauchy_map(&g, &cs));
    }

    #[test]
    fn convex_inclusion_reflects_reach_up_to_reversal() {
        let big = LatticePatch::rect(0, 3, 0, 3);
        let sub = LatticePatch::rect(1, 2, 1, 2);
        let f = PatchMorphism::inclusion(sub.clone(), big.clone()).unwrap();
        let src = causal_relation(&sub);
        let tgt = causal_relation(&big);
        assert!(reflects_reach_up_to_reversal(&f, &src, &tgt));
    }

    #[test]
    fn covering_map_does_not_reflect_reach() {
        let line = LatticePatch::new((0..6).map(|v| (0, v)), Periodicity::NONE).unwrap();
        let cyl = LatticePatch::cylinder(1, 3, false, true).unwrap();
        let f = PatchMorphism::new(line.clone(), cyl.clone(), vec![ComponentAction::IDENTITY]).unwrap();
        let src = causal_relation(&line);
        let tgt = causal_relation(&cyl);
        assert!(!reflects_reach_up_to_reversal(&f, &src, &tgt));
    }

    #[test]
    fn reflection_morphism_reflects_with_reversal_branch() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let f = PatchMorphism::new(p.clone(), p.clone(), vec![ComponentAction::reflection((2, 2))]).unwrap();
        let cs = causal_relation(&p);
        assert!(f.reverses_on(0));
        assert!(reflects_reach_up_to_reversal(&f, &cs, &cs));
    }

    #[test]
    fn disjointness_faces_agree_on_examples() {
        let p = LatticePatch::rect(0, 3, 0, 3);
        let cs = causal_relation(&p);
        // two spacelike-separated corners
        let mut a = FixedBitSet::with_capacity(p.len());
        a.insert(p.index_of((0, 3)).unwrap());
        let mut b = FixedBitSet::with_capacity(p.len());
        b.insert(p.index_of((3, 0)).unwrap());
        let (s1, s2, s3) = causal_disjointness_faces(&cs, &a, &b);
        assert!(s1 && s2 && s3);
        // overlapping sets share a point and are never disjoint
        let (t1, t2, t3) = causal_disjointness_faces(&cs, &a, &a);
        assert!(!t1 && !t2 && !t3);
    }

    #[test]
    fn category_of_two_separated_subblocks_relates_their_inclusions() {
        let big = LatticePatch::rect(0, 3, 0, 3);
        let left = LatticePatch::rect(0, 0, 2, 3);
        let right = LatticePatch::rect(2, 3, 0, 0);
        let cat = build_causal_category(
            vec![big, left, right],
            vec![
                MorphismSpec { source: 1, target: 0, actions: vec![ComponentAction::IDENTITY] },
                MorphismSpec { source: 2, target: 0, actions: vec![ComponentAction::IDENTITY] },
            ],
            CausalCategoryOptions::default(),
        )
        .unwrap();
        assert!(crate::fincat::validate_category(&cat.category).is_valid());
        // find the two inclusions
        let f1 = (0..cat.category.morphism_count())
            .find(|&f| cat.category.source(f) == 1 && cat.category.target(f) == 0)
            .unwrap();
        let f2 = (0..cat.category.morphism_count())
            .find(|&f| cat.category.source(f) == 2 && cat.category.target(f) == 0)
            .unwrap();
        assert!(cat.table.related(f1, f2));

        // overlapping sub-blocks are never related
        let id0 = cat.category.identity(0);
        assert!(!cat.table.related(id0, f1));
        assert!(!cat.table.related(f1, f1));

        // the three disjointness faces agree on every conterminous pair
        let images: Vec<FixedBitSet> = cat.morphisms.iter().map(image_bitset).collect();
        for (a, b) in cat.category.conterminous_pairs() {
            let tgt = cat.category.target(a);
            let (s1, s2, s3) = causal_disjointness_faces(&cat.structures[tgt], &images[a], &images[b]);
            assert_eq!(s1, s2);
            assert_eq!(s2, s3);
            assert_eq!(cat.table.related(a, b), s1);
        }
    }

    #[test]
    fn axioms_hold_for_generated_causal_tables() {
        let big = LatticePatch::rect(0, 2, 0, 2);
        let small = LatticePatch::rect(0, 1, 0, 1);
        let cat = build_causal_category(
            vec![big, small],
            vec![
                MorphismSpec { source: 1, target: 0, actions: vec![ComponentAction::IDENTITY] },
                MorphismSpec { source: 1, target: 0, actions: vec![ComponentAction::translation((1, 1))] },
            ],
            CausalCategoryOptions { add_basis_probes: true, ..Default::default() },
        )
        .unwrap();
        let report = crate::disjoint::verify_disjointness_axioms(&cat.category, &cat.table);
        assert!(report.is_valid(), "{:?}", report.violations);
    }
}
