//! Exhaustive theorem suites over generated patch categories.
//!
//! Each suite runs a biconditional or stability statement against every
//! morphism of a generated category and reports counterexamples instead of
//! panicking, so the CLI can render failures with witnesses.

use crate::causal::{
    build_causal_category, causal_disjointness_faces, image_bitset, is_causally_convex,
    is_causally_simple, is_globally_hyperbolic, reflects_reach_up_to_reversal, reflects_relation,
    CausalCategory, CausalCategoryOptions, CausalError, MorphismSpec,
};
use crate::disjoint::{is_overlap_monic, verify_disjointness_axioms, DisjointnessTable};
use crate::fincat::FiniteCategory;
use crate::lattice::{ComponentAction, LatticePatch, Periodicity};
use crate::relcore::Relation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Outcome of one suite over one or many instances.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    pub checks: usize,
    pub counterexamples: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn note_failure(&mut self, msg: String) {
        if self.counterexamples.len() < 32 {
            self.counterexamples.push(msg);
        }
    }

    pub fn merge(&mut self, other: &SuiteReport) {
        self.instances += other.instances;
        self.checks += other.checks;
        for c in &other.counterexamples {
            self.note_failure(c.clone());
        }
    }
}

/// Closed symmetric-reach relations per object, cached.
fn closed_sym_reach_all(site: &CausalCategory) -> Vec<Relation> {
    site.structures.iter().map(|s| s.closed_sym_reach()).collect()
}

/// The theorem suites quantify over morphisms between family patches; probe
/// objects (the basis sub-patches the generator adjoins) serve as the test
/// morphisms inside the overlap-monic quantifier, not as spacetimes under
/// test themselves.
fn is_family_morphism(site: &CausalCategory, f: usize) -> bool {
    site.main_objects.contains(&site.category.source(f))
        && site.main_objects.contains(&site.category.target(f))
}

/// Suite A: a morphism is overlap-monic for the causal disjointness relation
/// iff it reflects the topological closure of the symmetric reach.
pub fn causal_suite_a(site: &CausalCategory, report: &mut SuiteReport) {
    let closed = closed_sym_reach_all(site);
    report.instances += 1;
    for f in 0..site.category.morphism_count() {
        if !is_family_morphism(site, f) {
            continue;
        }
        report.checks += 1;
        let monic = is_overlap_monic(&site.category, &site.table, f).monic;
        let src = site.category.source(f);
        let tgt = site.category.target(f);
        let reflects = reflects_relation(&site.morphisms[f], &closed[src], &closed[tgt]);
        if monic != reflects {
            report.note_failure(format!(
                "morphism {f}: P{src}->P{tgt}: monic={monic} reflects-closed-sym-reach={reflects}"
            ));
        }
    }
}

/// Suite B: between causally simple patches, overlap-monic iff the morphism
/// reflects reachability up to time-orientation reversal.
pub fn causal_suite_b(site: &CausalCategory, report: &mut SuiteReport) {
    let simple: Vec<bool> = site.structures.iter().map(is_causally_simple).collect();
    report.instances += 1;
    for f in 0..site.category.morphism_count() {
        if !is_family_morphism(site, f) {
            continue;
        }
        let src = site.category.source(f);
        let tgt = site.category.target(f);
        if !simple[src] || !simple[tgt] {
            continue;
        }
        report.checks += 1;
        let monic = is_overlap_monic(&site.category, &site.table, f).monic;
        let reflects = reflects_reach_up_to_reversal(&site.morphisms[f], &site.structures[src], &site.structures[tgt]);
        if monic != reflects {
            report.note_failure(format!(
                "morphism {f}: P{src}->P{tgt}: monic={monic} reflects-reach-up-to-reversal={reflects}"
            ));
        }
    }
}

/// Suite C: between globally hyperbolic patches, overlap-monic iff injective
/// with order-convex image.
pub fn causal_suite_c(site: &CausalCategory, report: &mut SuiteReport) {
    let hyperbolic: Vec<bool> = site.structures.iter().map(is_globally_hyperbolic).collect();
    report.instances += 1;
    for f in 0..site.category.morphism_count() {
        if !is_family_morphism(site, f) {
            continue;
        }
        let src = site.category.source(f);
        let tgt = site.category.target(f);
        if !hyperbolic[src] || !hyperbolic[tgt] {
            continue;
        }
        report.checks += 1;
        let monic = is_overlap_monic(&site.category, &site.table, f).monic;
        let m = &site.morphisms[f];
        let convex_injective =
            m.is_injective() && is_causally_convex(&site.structures[tgt], &image_bitset(m));
        if monic != convex_injective {
            report.note_failure(format!(
                "morphism {f}: P{src}->P{tgt}: monic={monic} injective-with-convex-image={convex_injective}"
            ));
        }
    }
}

/// The three faces of causal disjointness agree on every conterminous pair,
/// and the generated table matches them.
pub fn causal_faces_suite(site: &CausalCategory, report: &mut SuiteReport) {
    report.instances += 1;
    let images: Vec<_> = site.morphisms.iter().map(image_bitset).collect();
    for (f1, f2) in site.category.conterminous_pairs() {
        report.checks += 1;
        let tgt = site.category.target(f1);
        let (a, b, c) = causal_disjointness_faces(&site.structures[tgt], &images[f1], &images[f2]);
        let t = site.table.related(f1, f2);
        if !(a == b && b == c && c == t) {
            report.note_failure(format!(
                "pair ({f1}, {f2}): faces sym={a} reach={b} curve={c} table={t}"
            ));
        }
    }
}

/// The generated causal table satisfies the disjointness axioms.
pub fn causal_axiom_suite(site: &CausalCategory, report: &mut SuiteReport) {
    report.instances += 1;
    let axioms = verify_disjointness_axioms(&site.category, &site.table);
    report.checks += axioms.checks;
    for v in &axioms.violations {
        report.note_failure(format!("axiom {} witnesses {:?}", v.law, v.witnesses));
    }
}

/// Union stability: when the basis probes of the source cover it and every
/// restriction of `f1` along a probe is disjoint from `f2`, so is `f1`.
pub fn causal_union_stability_suite(site: &CausalCategory, report: &mut SuiteReport) {
    report.instances += 1;
    let m = site.category.morphism_count();
    for f1 in 0..m {
        let src = site.category.source(f1);
        // covering family: inclusions into src whose images cover it
        let mut cover: Vec<usize> = Vec::new();
        let mut covered = fixedbitset::FixedBitSet::with_capacity(site.patches[src].len());
        for i in 0..m {
            if site.category.target(i) == src && i != site.category.identity(src) {
                cover.push(i);
                covered.union_with(&image_bitset(&site.morphisms[i]));
            }
        }
        if covered.count_ones(..) != site.patches[src].len() {
            continue;
        }
        for f2 in 0..m {
            if site.category.target(f2) != site.category.target(f1) {
                continue;
            }
            report.checks += 1;
            let all_restrictions_related = cover.iter().all(|&i| {
                let fi = site.category.compose(f1, i).expect("composable");
                site.table.related(fi, f2)
            });
            if all_restrictions_related && !site.table.related(f1, f2) {
                report.note_failure(format!(
                    "morphism {f1} with covering family related to {f2} piecewise but not globally"
                ));
            }
        }
    }
}

/// Antisymmetry consequences: with a causal codomain, reflecting the
/// symmetric reach coincides with reflecting reach up to reversal; with a
/// causal domain, reflecting up to reversal forces injectivity.
pub fn causal_antisymmetry_suite(site: &CausalCategory, report: &mut SuiteReport) {
    report.instances += 1;
    for f in 0..site.category.morphism_count() {
        let src = site.category.source(f);
        let tgt = site.category.target(f);
        let m = &site.morphisms[f];
        if site.structures[tgt].is_causal() {
            report.checks += 1;
            let refl_sym = reflects_relation(m, &site.structures[src].sym_reach, &site.structures[tgt].sym_reach);
            let refl_rev = reflects_reach_up_to_reversal(m, &site.structures[src], &site.structures[tgt]);
            if refl_sym != refl_rev {
                report.note_failure(format!(
                    "morphism {f}: causal codomain but reflects-sym={refl_sym} reflects-up-to-reversal={refl_rev}"
                ));
            }
        }
        if site.structures[src].is_causal() {
            report.checks += 1;
            let refl_rev = reflects_reach_up_to_reversal(m, &site.structures[src], &site.structures[tgt]);
            if refl_rev && !m.is_injective() {
                report.note_failure(format!("morphism {f}: causal domain, reflects up to reversal, not injective"));
            }
        }
    }
}

/// Restriction to a full subcategory of a category-with-table.
pub fn full_subcategory(
    cat: &FiniteCategory,
    table: &DisjointnessTable,
    keep_object: &[bool],
) -> (FiniteCategory, DisjointnessTable, Vec<usize>) {
    let mut object_map = Vec::new(); // new -> old
    let mut object_new = vec![usize::MAX; cat.object_count()];
    for o in 0..cat.object_count() {
        if keep_object[o] {
            object_new[o] = object_map.len();
            object_map.push(o);
        }
    }
    let mut morphism_map = Vec::new(); // new -> old
    let mut morphism_new = vec![usize::MAX; cat.morphism_count()];
    for f in 0..cat.morphism_count() {
        if keep_object[cat.source(f)] && keep_object[cat.target(f)] {
            morphism_new[f] = morphism_map.len();
            morphism_map.push(f);
        }
    }
    let morphisms = morphism_map
        .iter()
        .map(|&f| crate::fincat::MorphismData {
            source: object_new[cat.source(f)],
            target: object_new[cat.target(f)],
        })
        .collect();
    let identities = object_map.iter().map(|&o| morphism_new[cat.identity(o)]).collect::<Vec<_>>();
    let mut composites = Vec::new();
    for (gi, &g) in morphism_map.iter().enumerate() {
        for (fi, &f) in morphism_map.iter().enumerate() {
            if cat.target(f) == cat.source(g) {
                let gf = cat.compose(g, f).expect("composable");
                composites.push((gi, fi, morphism_new[gf]));
            }
        }
    }
    let names = object_map.iter().map(|&o| cat.object_name(o).to_string()).collect();
    let sub = FiniteCategory::new(names, morphisms, identities, &composites)
        .expect("full subcategory construction is index-safe");
    let related = table
        .pairs()
        .filter(|&(a, b)| morphism_new[a] != usize::MAX && morphism_new[b] != usize::MAX)
        .map(|(a, b)| (morphism_new[a], morphism_new[b]));
    let sub_table = DisjointnessTable::new(&sub, related).expect("pairs stay conterminous");
    (sub, sub_table, morphism_map)
}

/// Inclusion stability: overlap-monic status is unchanged by restriction to
/// the full subcategory of causally simple (and of globally hyperbolic)
/// patches.
pub fn causal_inclusion_stability_suite(site: &CausalCategory, report: &mut SuiteReport) {
    report.instances += 1;
    for keep in [
        site.structures.iter().map(is_causally_simple).collect::<Vec<bool>>(),
        site.structures.iter().map(is_globally_hyperbolic).collect::<Vec<bool>>(),
    ] {
        let (sub, sub_table, morphism_map) = full_subcategory(&site.category, &site.table, &keep);
        for (new_f, &old_f) in morphism_map.iter().enumerate() {
            report.checks += 1;
            let in_sub = is_overlap_monic(&sub, &sub_table, new_f).monic;
            let in_full = is_overlap_monic(&site.category, &site.table, old_f).monic;
            if in_sub != in_full {
                report.note_failure(format!(
                    "morphism {old_f}: monic-in-subcategory={in_sub} monic-in-full={in_full}"
                ));
            }
        }
    }
}

/// Classification nesting: the definitional implications between hierarchy
/// predicates hold on every patch of the site.
pub fn causal_nesting_suite(site: &CausalCategory, report: &mut SuiteReport) {
    report.instances += 1;
    for s in &site.structures {
        report.checks += 1;
        let causal = s.is_causal();
        if (is_causally_simple(s) || is_globally_hyperbolic(s)) && !causal {
            report.note_failure("a non-causal patch classified above causal".to_string());
        }
    }
}

/// One randomly generated causal site: a family of patches and structure
/// maps, with basis probes adjoined.
pub fn random_causal_site(seed: u64) -> Result<CausalCategory, CausalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family: Vec<LatticePatch> = Vec::new();
    let mut generators: Vec<MorphismSpec> = Vec::new();

    // main patch
    let style = rng.gen_range(0..4u8);
    let main = match style {
        0 => LatticePatch::rect(0, rng.gen_range(2..=3), 0, rng.gen_range(2..=3)),
        1 => {
            let w = rng.gen_range(3..=4);
            LatticePatch::punctured_rect(0, w, 0, w, &[(w / 2, w / 2)])
        }
        2 => {
            // sparse constellation: pairwise Chebyshev distance at least 3
            let mut pts = Vec::new();
            for _ in 0..rng.gen_range(2..=4) {
                for _ in 0..20 {
                    let cand = (rng.gen_range(0..9i64), rng.gen_range(0..9i64));
                    if pts.iter().all(|&(u, v): &(i64, i64)| {
                        (cand.0 - u).abs().max((cand.1 - v).abs()) >= 3
                    }) {
                        pts.push(cand);
                        break;
                    }
                }
            }
            LatticePatch::new(pts, Periodicity::NONE).expect("sparse points distinct")
        }
        _ => LatticePatch::cylinder(rng.gen_range(2..=3), rng.gen_range(2..=3), false, true)
            .expect("modulus at least 2"),
    };
    family.push(main.clone());

    // secondary patch: a full sub-rectangle for block-like mains (bounding
    // box kept clear of holes so thin rows never straddle one), or a
    // sub-constellation for sparse mains
    let secondary = if style == 2 {
        let point_count = main.len();
        if point_count >= 2 {
            let k = rng.gen_range(1..point_count);
            let mut indices: Vec<usize> = (0..point_count).collect();
            for i in (1..indices.len()).rev() {
                indices.swap(i, rng.gen_range(0..=i));
            }
            indices.truncate(k);
            indices.sort_unstable();
            Some(main.sub_patch(&indices))
        } else {
            None
        }
    } else {
        let mut found = None;
        for _ in 0..20 {
            let u0 = rng.gen_range(0..=3i64);
            let v0 = rng.gen_range(0..=3i64);
            let u1 = u0 + rng.gen_range(0..=2i64);
            let v1 = v0 + rng.gen_range(0..=2i64);
            let mut pts = Vec::new();
            let mut complete = true;
            for u in u0..=u1 {
                for v in v0..=v1 {
                    if main.contains((u, v)) {
                        pts.push((u, v));
                    } else {
                        complete = false;
                    }
                }
            }
            if complete && !pts.is_empty() {
                found = Some(LatticePatch::new(pts, Periodicity::NONE).expect("rectangle"));
                break;
            }
        }
        found
    };
    if let Some(sub) = secondary {
        family.push(sub.clone());
        let actions = vec![ComponentAction::IDENTITY; sub.component_count()];
        if crate::lattice::PatchMorphism::new(sub.clone(), main.clone(), actions.clone()).is_ok() {
            generators.push(MorphismSpec { source: 1, target: 0, actions });
        }
        // a random translate of the sub-patch when it stays inside
        let offset = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        let translated = vec![ComponentAction::translation(offset); sub.component_count()];
        if crate::lattice::PatchMorphism::new(sub.clone(), main.clone(), translated.clone()).is_ok() {
            generators.push(MorphismSpec { source: 1, target: 0, actions: translated });
        }
    }

    // occasional reflection self-map of the main patch
    if style == 0 && rng.gen_bool(0.5) {
        let (u1, v1) = main.points().iter().fold((0, 0), |acc, p| (acc.0.max(p.0), acc.1.max(p.1)));
        let refl = vec![ComponentAction::reflection((u1, v1)); main.component_count()];
        if crate::lattice::PatchMorphism::new(main.clone(), main.clone(), refl.clone()).is_ok() {
            generators.push(MorphismSpec { source: 0, target: 0, actions: refl });
        }
    }

    // occasional covering of a cylinder by an unwrapped block
    if style == 3 && rng.gen_bool(0.7) {
        let height = main.points().iter().map(|p| p.1).max().unwrap_or(0) + 1;
        let width = main.points().iter().map(|p| p.0).max().unwrap_or(0);
        let unwrapped = LatticePatch::rect(0, width, 0, 2 * height - 1);
        family.push(unwrapped.clone());
        let actions = vec![ComponentAction::IDENTITY; unwrapped.component_count()];
        let idx = family.len() - 1;
        if crate::lattice::PatchMorphism::new(unwrapped, main.clone(), actions.clone()).is_ok() {
            generators.push(MorphismSpec { source: idx, target: 0, actions });
        }
    }

    build_causal_category(
        family,
        generators,
        CausalCategoryOptions {
            add_basis_probes: true,
            max_morphisms: 150,
        },
    )
}

/// Run every causal suite on `count` generated sites.
pub fn run_causal_suites(seed: u64, count: usize) -> Vec<SuiteReport> {
    let mut a = SuiteReport::new("causal-suite-a");
    let mut b = SuiteReport::new("causal-suite-b");
    let mut c = SuiteReport::new("causal-suite-c");
    let mut faces = SuiteReport::new("causal-disjointness-faces");
    let mut axioms = SuiteReport::new("causal-table-axioms");
    let mut unions = SuiteReport::new("causal-union-stability");
    let mut antisym = SuiteReport::new("causal-antisymmetry-consequences");
    let mut stability = SuiteReport::new("causal-inclusion-stability");
    let mut nesting = SuiteReport::new("causal-nesting");
    let mut generated = 0usize;
    let mut attempt = 0u64;
    while generated < count {
        let site = match random_causal_site(seed.wrapping_add(attempt)) {
            Ok(site) => site,
            Err(_) => {
                attempt += 1;
                continue;
            }
        };
        attempt += 1;
        generated += 1;
        causal_suite_a(&site, &mut a);
        causal_suite_b(&site, &mut b);
        causal_suite_c(&site, &mut c);
        causal_faces_suite(&site, &mut faces);
        causal_axiom_suite(&site, &mut axioms);
        causal_union_stability_suite(&site, &mut unions);
        causal_antisymmetry_suite(&site, &mut antisym);
        causal_inclusion_stability_suite(&site, &mut stability);
        causal_nesting_suite(&site, &mut nesting);
    }
    vec![a, b, c, faces, axioms, unions, antisym, stability, nesting]
}

// ---------------------------------------------------------------------------
// abstract-category suites: axioms, complements, builtin characterisations
// ---------------------------------------------------------------------------

use crate::fincat::{
    build_concrete_category, build_poset_category, ConcreteBuildOptions, ConcreteStructure,
    GeneratingMap,
};
use crate::relcore::{FiniteIndexedSet, RelationMap};

/// A random small category: either the thin category of a random preorder or
/// a concrete category generated by random maps, capped in size.
pub fn random_small_category(seed: u64) -> FiniteCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if rng.gen_bool(0.5) {
            let n = rng.gen_range(1..=5);
            let mut rel = Relation::empty_of_size(n);
            for x in 0..n {
                for y in 0..n {
                    if rng.gen_bool(0.3) {
                        rel.insert(x, y).unwrap();
                    }
                }
            }
            let order = crate::relcore::reflexive_transitive_closure(&rel);
            let cat = build_poset_category(&order).expect("closure is a preorder");
            if cat.morphism_count() <= 30 {
                return cat;
            }
        } else if let Some((cat, _)) = random_concrete_instance(rng.gen(), false) {
            if cat.object_count() <= 5 && cat.morphism_count() <= 30 {
                return cat;
            }
        }
    }
}

/// A random concrete category of plain sets and maps, optionally with
/// singleton probes adjoined.
pub fn random_concrete_instance(
    seed: u64,
    adjoin_probes: bool,
) -> Option<(FiniteCategory, ConcreteStructure)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let object_count = rng.gen_range(2..=4usize);
    let sets: Vec<FiniteIndexedSet> = (0..object_count)
        .map(|_| FiniteIndexedSet::new(rng.gen_range(1..=3)))
        .collect();
    let mut maps = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let source = rng.gen_range(0..object_count);
        let target = rng.gen_range(0..object_count);
        let assignment: Vec<usize> = (0..sets[source].size())
            .map(|_| rng.gen_range(0..sets[target].size()))
            .collect();
        maps.push(GeneratingMap {
            source,
            target,
            map: RelationMap::new(sets[source].clone(), sets[target].clone(), assignment).ok()?,
        });
    }
    let (cat, concrete) = build_concrete_category(
        sets,
        None,
        None,
        maps,
        ConcreteBuildOptions {
            close_under_composition: true,
            adjoin_singleton_probes: adjoin_probes,
        },
    )
    .ok()?;
    (cat.morphism_count() <= 60).then_some((cat, concrete))
}

/// A random table on a category: a random subset of conterminous pairs, with
/// a bias towards valid tables by occasionally intersecting a setwise table.
pub fn random_table(cat: &FiniteCategory, seed: u64) -> DisjointnessTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.gen_range(0.0..1.0);
    let pairs: Vec<(usize, usize)> = cat
        .conterminous_pairs()
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    DisjointnessTable::new(cat, pairs).expect("pairs are conterminous")
}

/// Criterion: the axioms hold exactly when the complement conditions do,
/// both sides evaluated independently.
pub fn axiom_complement_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("axiom-complement-equivalence");
    for i in 0..samples as u64 {
        report.instances += 1;
        let cat = random_small_category(seed.wrapping_add(i.wrapping_mul(3)));
        let table = if i % 4 == 0 {
            // exercise the both-valid branch with a structurally valid table
            match random_concrete_instance(seed ^ i, true) {
                Some((ccat, concrete)) if ccat.morphism_count() <= 60 => {
                    let t = crate::disjoint::builtin_setwise(&ccat, &concrete).expect("concrete");
                    report.checks += 1;
                    let axioms = verify_disjointness_axioms(&ccat, &t).is_valid();
                    let complement = crate::disjoint::verify_complement_conditions(&ccat, &t).is_valid();
                    if axioms != complement {
                        report.note_failure(format!("sample {i}: axioms={axioms} complement={complement}"));
                    }
                    continue;
                }
                _ => random_table(&cat, seed.wrapping_add(i)),
            }
        } else {
            random_table(&cat, seed.wrapping_add(i))
        };
        report.checks += 1;
        let axioms = verify_disjointness_axioms(&cat, &table).is_valid();
        let complement = crate::disjoint::verify_complement_conditions(&cat, &table).is_valid();
        if axioms != complement {
            report.note_failure(format!("sample {i}: axioms={axioms} complement={complement}"));
        }
    }
    report
}

/// Criterion: on concrete categories with singleton probes, the setwise
/// overlap-monics are exactly the injective morphisms.
pub fn setwise_characterisation_suite(seed: u64, instances: usize) -> SuiteReport {
    let mut report = SuiteReport::new("setwise-monics-are-injective");
    let mut produced = 0;
    let mut attempt = 0u64;
    while produced < instances {
        attempt += 1;
        let Some((cat, concrete)) = random_concrete_instance(seed.wrapping_add(attempt), true) else {
            continue;
        };
        produced += 1;
        report.instances += 1;
        let table = crate::disjoint::builtin_setwise(&cat, &concrete).expect("concrete");
        for h in 0..cat.morphism_count() {
            report.checks += 1;
            let monic = is_overlap_monic(&cat, &table, h).monic;
            if monic != concrete.maps[h].is_injective() {
                report.note_failure(format!(
                    "instance {attempt}, morphism {h}: monic={monic} injective={}",
                    concrete.maps[h].is_injective()
                ));
            }
        }
    }
    report
}

/// A random relational instance: sets with symmetric relations and
/// relation-preserving maps, singleton probes adjoined.
fn random_sbin_instance(seed: u64) -> Option<(FiniteCategory, ConcreteStructure)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let object_count = rng.gen_range(2..=3usize);
    let sets: Vec<FiniteIndexedSet> = (0..object_count)
        .map(|_| FiniteIndexedSet::new(rng.gen_range(1..=3)))
        .collect();
    let rels: Vec<Relation> = sets
        .iter()
        .map(|s| {
            let mut r = Relation::empty_of_size(s.size());
            for x in 0..s.size() {
                for y in 0..=x {
                    if rng.gen_bool(0.4) {
                        r.insert(x, y).unwrap();
                        r.insert(y, x).unwrap();
                    }
                }
            }
            r
        })
        .collect();
    let mut maps = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let source = rng.gen_range(0..object_count);
        let target = rng.gen_range(0..object_count);
        // rejection-sample a relation-preserving assignment
        for _ in 0..30 {
            let assignment: Vec<usize> = (0..sets[source].size())
                .map(|_| rng.gen_range(0..sets[target].size()))
                .collect();
            let map =
                RelationMap::new(sets[source].clone(), sets[target].clone(), assignment).ok()?;
            if crate::relcore::preserves(&map, &rels[source], &rels[target]) == Ok(true) {
                maps.push(GeneratingMap { source, target, map });
                break;
            }
        }
    }
    if maps.is_empty() {
        return None;
    }
    let (cat, concrete) = build_concrete_category(
        sets,
        Some(rels),
        None,
        maps,
        ConcreteBuildOptions {
            close_under_composition: true,
            adjoin_singleton_probes: true,
        },
    )
    .ok()?;
    (cat.morphism_count() <= 60 && concrete.validate(&cat).is_valid()).then_some((cat, concrete))
}

/// A random component-labelled instance with component-respecting maps.
fn random_pi0_instance(seed: u64) -> Option<(FiniteCategory, ConcreteStructure)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let object_count = rng.gen_range(2..=3usize);
    let sets: Vec<FiniteIndexedSet> = (0..object_count)
        .map(|_| FiniteIndexedSet::new(rng.gen_range(1..=4)))
        .collect();
    let comps: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let k = rng.gen_range(1..=s.size());
            (0..s.size()).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect()
        })
        .collect();
    let mut maps = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let source = rng.gen_range(0..object_count);
        let target = rng.gen_range(0..object_count);
        // send each source component into one target component
        let src_comp_count = comps[source].iter().max().map(|m| m + 1).unwrap_or(0);
        let tgt_elements_by_comp: Vec<Vec<usize>> = {
            let tgt_comp_count = comps[target].iter().max().map(|m| m + 1).unwrap_or(0);
            (0..tgt_comp_count)
                .map(|c| (0..sets[target].size()).filter(|&i| comps[target][i] == c).collect())
                .collect()
        };
        let images: Vec<usize> = (0..src_comp_count)
            .map(|_| rng.gen_range(0..tgt_elements_by_comp.len()))
            .collect();
        let assignment: Vec<usize> = (0..sets[source].size())
            .map(|i| {
                let pool = &tgt_elements_by_comp[images[comps[source][i]]];
                pool[rng.gen_range(0..pool.len())]
            })
            .collect();
        maps.push(GeneratingMap {
            source,
            target,
            map: RelationMap::new(sets[source].clone(), sets[target].clone(), assignment).ok()?,
        });
    }
    let (cat, concrete) = build_concrete_category(
        sets,
        None,
        Some(comps),
        maps,
        ConcreteBuildOptions {
            close_under_composition: true,
            adjoin_singleton_probes: true,
        },
    )
    .ok()?;
    (cat.morphism_count() <= 60).then_some((cat, concrete))
}

/// Criterion: relational overlap-monics are exactly the relation-reflecting
/// morphisms, and component overlap-monics exactly those with injective
/// induced component maps.
pub fn relational_characterisation_suite(seed: u64, instances: usize) -> SuiteReport {
    let mut report = SuiteReport::new("relational-and-component-monics");
    let mut produced = 0;
    let mut attempt = 0u64;
    while produced < instances {
        attempt += 1;
        let Some((cat, concrete)) = random_sbin_instance(seed.wrapping_add(attempt)) else {
            continue;
        };
        produced += 1;
        report.instances += 1;
        let table = crate::disjoint::builtin_sbin(&cat, &concrete).expect("relations present");
        let rels = concrete.object_relations.as_ref().unwrap();
        for h in 0..cat.morphism_count() {
            report.checks += 1;
            let monic = is_overlap_monic(&cat, &table, h).monic;
            let reflects = crate::relcore::reflects(
                &concrete.maps[h],
                &rels[cat.source(h)],
                &rels[cat.target(h)],
            )
            .expect("carriers match");
            if monic != reflects {
                report.note_failure(format!(
                    "relational instance {attempt}, morphism {h}: monic={monic} reflects={reflects}"
                ));
            }
        }
    }
    produced = 0;
    while produced < instances {
        attempt += 1;
        let Some((cat, concrete)) = random_pi0_instance(seed.wrapping_add(attempt)) else {
            continue;
        };
        produced += 1;
        report.instances += 1;
        let table = crate::disjoint::builtin_pi0(&cat, &concrete).expect("components present");
        let comps = concrete.components.as_ref().unwrap();
        for h in 0..cat.morphism_count() {
            report.checks += 1;
            let monic = is_overlap_monic(&cat, &table, h).monic;
            // induced component map and its injectivity, by direct unfolding
            let mut induced: std::collections::BTreeMap<usize, usize> = Default::default();
            for x in 0..concrete.sets[cat.source(h)].size() {
                induced.insert(comps[cat.source(h)][x], comps[cat.target(h)][concrete.maps[h].apply(x)]);
            }
            let mut seen = std::collections::BTreeSet::new();
            let injective = induced.values().all(|&v| seen.insert(v));
            if monic != injective {
                report.note_failure(format!(
                    "component instance {attempt}, morphism {h}: monic={monic} component-injective={injective}"
                ));
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// chiral suites
// ---------------------------------------------------------------------------

use crate::chiral::{
    build_chiral_category, chi_convexity_witness, chiral_disjointness_faces, chiral_image_bitset,
    chiral_reflects_relation, classify_chiral, verify_q_properties,
    verify_solution_space, ChiralAction, ChiralCategory, ChiralCategoryOptions, ChiralError,
    ChiralLevel, ChiralMorphismSpec, Chirality,
};

fn is_chiral_family_morphism(site: &ChiralCategory, f: usize) -> bool {
    site.main_objects.contains(&site.category.source(f))
        && site.main_objects.contains(&site.category.target(f))
}

/// Chiral suite A: overlap-monic for the chiral disjointness relation iff
/// the morphism reflects the closed symmetric chiral reach.
pub fn chiral_suite_a(site: &ChiralCategory, report: &mut SuiteReport) {
    let closed: Vec<Relation> = site.structures.iter().map(|s| s.closed_sym_reach()).collect();
    report.instances += 1;
    for f in 0..site.category.morphism_count() {
        if !is_chiral_family_morphism(site, f) {
            continue;
        }
        report.checks += 1;
        let monic = is_overlap_monic(&site.category, &site.table, f).monic;
        let src = site.category.source(f);
        let tgt = site.category.target(f);
        let reflects = chiral_reflects_relation(&site.morphisms[f], &closed[src], &closed[tgt]);
        if monic != reflects {
            report.note_failure(format!(
                "morphism {f}: P{src}->P{tgt}: monic={monic} reflects-closed-sym-chi={reflects}"
            ));
        }
    }
}

/// Chiral suites for the simple and initial levels: monic iff the morphism
/// reflects the chiral reach; for interval-image morphisms also iff it is
/// injective with chirally convex image.
pub fn chiral_suite_levels(site: &ChiralCategory, min_level: ChiralLevel, report: &mut SuiteReport) {
    let levels: Vec<ChiralLevel> = site.structures.iter().map(classify_chiral).collect();
    report.instances += 1;
    for f in 0..site.category.morphism_count() {
        if !is_chiral_family_morphism(site, f) {
            continue;
        }
        let src = site.category.source(f);
        let tgt = site.category.target(f);
        if levels[src] < min_level || levels[tgt] < min_level {
            continue;
        }
        report.checks += 1;
        let monic = is_overlap_monic(&site.category, &site.table, f).monic;
        let m = &site.morphisms[f];
        let reflects = chiral_reflects_relation(m, &site.structures[src].reach, &site.structures[tgt].reach);
        if monic != reflects {
            report.note_failure(format!(
                "morphism {f}: P{src}->P{tgt}: monic={monic} reflects-chi={reflects}"
            ));
        }
        if m.has_interval_images() {
            report.checks += 1;
            let convex_injective = m.is_injective()
                && chi_convexity_witness(&site.structures[tgt], &chiral_image_bitset(m)).is_none();
            if monic != convex_injective {
                report.note_failure(format!(
                    "morphism {f}: P{src}->P{tgt}: monic={monic} injective-with-chi-convex-image={convex_injective}"
                ));
            }
        }
    }
}

/// Faces of chiral disjointness agree with the generated table.
pub fn chiral_faces_suite(site: &ChiralCategory, report: &mut SuiteReport) {
    report.instances += 1;
    let images: Vec<_> = site.morphisms.iter().map(chiral_image_bitset).collect();
    for (f1, f2) in site.category.conterminous_pairs() {
        report.checks += 1;
        let tgt = site.category.target(f1);
        let (a, b, c) = chiral_disjointness_faces(&site.structures[tgt], &images[f1], &images[f2]);
        let t = site.table.related(f1, f2);
        if !(a == b && b == c && c == t) {
            report.note_failure(format!(
                "pair ({f1}, {f2}): faces sym={a} reach={b} run={c} table={t}"
            ));
        }
    }
}

pub fn chiral_axiom_suite(site: &ChiralCategory, report: &mut SuiteReport) {
    report.instances += 1;
    let axioms = verify_disjointness_axioms(&site.category, &site.table);
    report.checks += axioms.checks;
    for v in &axioms.violations {
        report.note_failure(format!("axiom {} witnesses {:?}", v.law, v.witnesses));
    }
}

/// Union stability of the chiral relation over covering families.
pub fn chiral_union_stability_suite(site: &ChiralCategory, report: &mut SuiteReport) {
    report.instances += 1;
    let m = site.category.morphism_count();
    for f1 in 0..m {
        let src = site.category.source(f1);
        let mut cover: Vec<usize> = Vec::new();
        let mut covered = fixedbitset::FixedBitSet::with_capacity(site.patches[src].len());
        for i in 0..m {
            if site.category.target(i) == src && i != site.category.identity(src) {
                cover.push(i);
                covered.union_with(&chiral_image_bitset(&site.morphisms[i]));
            }
        }
        if covered.count_ones(..) != site.patches[src].len() {
            continue;
        }
        for f2 in 0..m {
            if site.category.target(f2) != site.category.target(f1) {
                continue;
            }
            report.checks += 1;
            let piecewise = cover.iter().all(|&i| {
                let fi = site.category.compose(f1, i).expect("composable");
                site.table.related(fi, f2)
            });
            if piecewise && !site.table.related(f1, f2) {
                report.note_failure(format!(
                    "morphism {f1} with covering family related to {f2} piecewise but not globally"
                ));
            }
        }
    }
}

/// Q-functor and time-slice properties, run when quotients exist.
pub fn chiral_q_suite(site: &ChiralCategory, report: &mut SuiteReport) {
    report.instances += 1;
    let q = verify_q_properties(site);
    report.checks += q.checks;
    for v in &q.violations {
        report.note_failure(format!("{} witnesses {:?}: {}", v.law, v.witnesses, v.detail));
    }
    let s = verify_solution_space(site);
    report.checks += s.checks;
    for v in &s.violations {
        report.note_failure(format!("{} witnesses {:?}: {}", v.law, v.witnesses, v.detail));
    }
}


/// Orientation reversal exchanges the two chiralities: classifications swap
/// and overlap-monic sets correspond under the induced isomorphism.
pub fn chiral_reversal_suite(site: &ChiralCategory, report: &mut SuiteReport) {
    use crate::chiral::{orientation_reversal_action, orientation_reversal_patch};
    report.instances += 1;

    // rebuild the whole site with coordinates swapped
    let reversed_patches: Vec<LatticePatch> =
        site.patches.iter().map(orientation_reversal_patch).collect();
    let mut generators = Vec::new();
    for f in 0..site.category.morphism_count() {
        if site.category.is_identity(f) {
            continue;
        }
        generators.push(ChiralMorphismSpec {
            source: site.category.source(f),
            target: site.category.target(f),
            actions: site.morphisms[f]
                .actions
                .iter()
                .map(orientation_reversal_action)
                .collect(),
        });
    }
    let reversed = match build_chiral_category(
        site.chirality.dual(),
        reversed_patches,
        generators,
        ChiralCategoryOptions {
            add_basis_probes: false,
            require_initial: false,
            max_morphisms: 8000,
        },
    ) {
        Ok(r) => r,
        Err(e) => {
            report.note_failure(format!("reversal failed to build: {e}"));
            return;
        }
    };

    // classifications swap chirality
    for (o, s) in site.structures.iter().enumerate() {
        report.checks += 1;
        let direct = classify_chiral(s);
        let dual = classify_chiral(&reversed.structures[o]);
        if direct != dual {
            report.note_failure(format!("object {o}: level {direct:?} became {dual:?} under reversal"));
        }
    }

    // monic sets correspond: match morphisms by endpoints and reversed maps
    for f in 0..site.category.morphism_count() {
        let src = site.category.source(f);
        let tgt = site.category.target(f);
        // expected reversed point map via the coordinate swap
        let expected: Vec<usize> = (0..reversed.patches[src].len())
            .map(|i| {
                let (u, v) = reversed.patches[src].coord(i);
                let orig = site.patches[src].index_of((v, u)).expect("swapped point");
                let (a, b) = site.patches[tgt].coord(site.morphisms[f].apply(orig));
                reversed.patches[tgt].index_of((b, a)).expect("swapped image")
            })
            .collect();
        let Some(rf) = (0..reversed.category.morphism_count()).find(|&g| {
            reversed.category.source(g) == src
                && reversed.category.target(g) == tgt
                && reversed.morphisms[g].point_map() == expected.as_slice()
        }) else {
            report.note_failure(format!("morphism {f} has no counterpart after reversal"));
            continue;
        };
        report.checks += 1;
        let direct = is_overlap_monic(&site.category, &site.table, f).monic;
        let dual = is_overlap_monic(&reversed.category, &reversed.table, rf).monic;
        if direct != dual {
            report.note_failure(format!("morphism {f}: monic={direct} but reversed counterpart has {dual}"));
        }
    }
}

/// Nesting of classification levels across both hierarchies.
pub fn chiral_nesting_suite(site: &ChiralCategory, report: &mut SuiteReport) {
    report.instances += 1;
    for (o, s) in site.structures.iter().enumerate() {
        report.checks += 1;
        let causal = crate::causal::causal_relation(&site.patches[o]);
        // a causal patch is chi-causal: chiral steps are causal steps
        if causal.is_causal() && !s.is_chi_causal() {
            report.note_failure(format!("object {o}: causal but not chi-causal"));
        }
        let level = classify_chiral(s);
        if level >= ChiralLevel::Simple && !s.is_chi_causal() {
            report.note_failure(format!("object {o}: classified {level:?} but not chi-causal"));
        }
        if level >= ChiralLevel::GloballyHyperbolic && !s.is_chi_initial() {
            report.note_failure(format!("object {o}: classified hyperbolic without the initial property"));
        }
    }
}

/// One randomly generated chiral site.
pub fn random_chiral_site(seed: u64) -> Result<ChiralCategory, ChiralError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family: Vec<LatticePatch> = Vec::new();
    let mut generators: Vec<ChiralMorphismSpec> = Vec::new();

    let style = rng.gen_range(0..5u8);
    let main = match style {
        0 => LatticePatch::rect(0, rng.gen_range(2..=3), 0, rng.gen_range(2..=3)),
        1 => {
            let w = rng.gen_range(3..=4);
            LatticePatch::punctured_rect(0, w, 0, w, &[(w / 2, w / 2)])
        }
        2 => {
            let mut pts = Vec::new();
            for _ in 0..rng.gen_range(2..=4) {
                for _ in 0..20 {
                    let cand = (rng.gen_range(0..9i64), rng.gen_range(0..9i64));
                    if pts.iter().all(|&(u, v): &(i64, i64)| {
                        (cand.0 - u).abs().max((cand.1 - v).abs()) >= 3
                    }) {
                        pts.push(cand);
                        break;
                    }
                }
            }
            LatticePatch::new(pts, Periodicity::NONE).expect("sparse points distinct")
        }
        // backward-periodic cylinder: chi-causal with a wrapping quotient
        3 => LatticePatch::cylinder(rng.gen_range(2..=3), rng.gen_range(2..=3), true, false)
            .expect("modulus at least 2"),
        // forward-periodic cylinder: closed chiral runs
        _ => LatticePatch::cylinder(rng.gen_range(2..=3), rng.gen_range(2..=3), false, true)
            .expect("modulus at least 2"),
    };
    family.push(main.clone());

    let secondary = if style == 2 {
        let point_count = main.len();
        if point_count >= 2 {
            let k = rng.gen_range(1..point_count);
            let mut indices: Vec<usize> = (0..point_count).collect();
            for i in (1..indices.len()).rev() {
                indices.swap(i, rng.gen_range(0..=i));
            }
            indices.truncate(k);
            indices.sort_unstable();
            Some(main.sub_patch(&indices))
        } else {
            None
        }
    } else {
        let mut found = None;
        for _ in 0..20 {
            let u0 = rng.gen_range(0..=3i64);
            let v0 = rng.gen_range(0..=3i64);
            let u1 = u0 + rng.gen_range(0..=2i64);
            let v1 = v0 + rng.gen_range(0..=2i64);
            let mut pts = Vec::new();
            let mut complete = true;
            for u in u0..=u1 {
                for v in v0..=v1 {
                    if main.contains((u, v)) {
                        pts.push((u, v));
                    } else {
                        complete = false;
                    }
                }
            }
            if complete && !pts.is_empty() {
                found = Some(LatticePatch::new(pts, Periodicity::NONE).expect("rectangle"));
                break;
            }
        }
        found
    };
    if let Some(sub) = secondary {
        family.push(sub.clone());
        let ident = vec![ChiralAction::identity(); sub.component_count()];
        if crate::chiral::ChiralMorphism::new(sub.clone(), main.clone(), ident.clone()).is_ok() {
            generators.push(ChiralMorphismSpec { source: 1, target: 0, actions: ident });
        }
        let offset = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        let translated = vec![ChiralAction::Translate(offset); sub.component_count()];
        if crate::chiral::ChiralMorphism::new(sub.clone(), main.clone(), translated.clone()).is_ok() {
            generators.push(ChiralMorphismSpec { source: 1, target: 0, actions: translated });
        }
        // an occasional stretch along the moving coordinate
        if rng.gen_bool(0.3) && sub.component_count() == 1 {
            let vs: Vec<i64> = {
                let mut v: Vec<i64> = sub.points().iter().map(|p| p.1).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let us: Vec<i64> = {
                let mut u: Vec<i64> = sub.points().iter().map(|p| p.0).collect();
                u.sort_unstable();
                u.dedup();
                u
            };
            let map_u: std::collections::BTreeMap<i64, i64> = us.iter().map(|&u| (u, u)).collect();
            let map_v: std::collections::BTreeMap<i64, i64> =
                vs.iter().map(|&v| (v, 2 * v)).collect();
            let stretch = vec![ChiralAction::Monotone { map_u, map_v }];
            if crate::chiral::ChiralMorphism::new(sub.clone(), main.clone(), stretch.clone()).is_ok() {
                generators.push(ChiralMorphismSpec { source: 1, target: 0, actions: stretch });
            }
        }
    }

    if style == 4 && rng.gen_bool(0.7) {
        let height = main.points().iter().map(|p| p.1).max().unwrap_or(0) + 1;
        let width = main.points().iter().map(|p| p.0).max().unwrap_or(0);
        let unwrapped = LatticePatch::rect(0, width, 0, 2 * height - 1);
        family.push(unwrapped.clone());
        let actions = vec![ChiralAction::identity(); unwrapped.component_count()];
        let idx = family.len() - 1;
        if crate::chiral::ChiralMorphism::new(unwrapped, main.clone(), actions.clone()).is_ok() {
            generators.push(ChiralMorphismSpec { source: idx, target: 0, actions });
        }
    }

    build_chiral_category(
        Chirality::Right,
        family,
        generators,
        ChiralCategoryOptions {
            add_basis_probes: true,
            require_initial: false,
            max_morphisms: 150,
        },
    )
}

/// Run every chiral suite on `count` generated sites.
pub fn run_chiral_suites(seed: u64, count: usize) -> Vec<SuiteReport> {
    let mut a = SuiteReport::new("chiral-suite-closure");
    let mut sim = SuiteReport::new("chiral-suite-simple");
    let mut init = SuiteReport::new("chiral-suite-initial");
    let mut faces = SuiteReport::new("chiral-disjointness-faces");
    let mut axioms = SuiteReport::new("chiral-table-axioms");
    let mut unions = SuiteReport::new("chiral-union-stability");
    let mut q = SuiteReport::new("chiral-quotient-properties");
    let mut reversal = SuiteReport::new("chiral-orientation-reversal");
    let mut nesting = SuiteReport::new("chiral-nesting");
    let mut generated = 0usize;
    let mut attempt = 0u64;
    while generated < count {
        let site = match random_chiral_site(seed.wrapping_add(attempt)) {
            Ok(site) => site,
            Err(_) => {
                attempt += 1;
                continue;
            }
        };
        attempt += 1;
        generated += 1;
        chiral_suite_a(&site, &mut a);
        chiral_suite_levels(&site, ChiralLevel::Simple, &mut sim);
        chiral_suite_levels(&site, ChiralLevel::Initial, &mut init);
        chiral_faces_suite(&site, &mut faces);
        chiral_axiom_suite(&site, &mut axioms);
        chiral_union_stability_suite(&site, &mut unions);
        chiral_q_suite(&site, &mut q);
        chiral_reversal_suite(&site, &mut reversal);
        chiral_nesting_suite(&site, &mut nesting);
    }
    vec![a, sim, init, faces, axioms, unions, q, reversal, nesting]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn causal_suites_pass_on_generated_sites() {
        let reports = run_causal_suites(0xA11CE, 25);
        for r in &reports {
            assert!(
                r.passed(),
                "suite {} failed with {} counterexamples: {:?}",
                r.name,
                r.counterexamples.len(),
                &r.counterexamples[..r.counterexamples.len().min(5)]
            );
        }
        // suites B and C must not be vacuous across the batch
        let b = reports.iter().find(|r| r.name == "causal-suite-b").unwrap();
        let c = reports.iter().find(|r| r.name == "causal-suite-c").unwrap();
        assert!(b.checks > 0);
        assert!(c.checks > 0);
    }

    #[test]
    fn chiral_suites_pass_on_generated_sites() {
        let reports = run_chiral_suites(0xB0B, 25);
        for r in &reports {
            assert!(
                r.passed(),
                "suite {} failed with {} counterexamples: {:?}",
                r.name,
                r.counterexamples.len(),
                &r.counterexamples[..r.counterexamples.len().min(5)]
            );
        }
        let sim = reports.iter().find(|r| r.name == "chiral-suite-simple").unwrap();
        let init = reports.iter().find(|r| r.name == "chiral-suite-initial").unwrap();
        let q = reports.iter().find(|r| r.name == "chiral-quotient-properties").unwrap();
        assert!(sim.checks > 0);
        assert!(init.checks > 0);
        assert!(q.checks > 0);
    }

    #[test]
    fn abstract_suites_pass() {
        let a = axiom_complement_suite(0xFEED, 120);
        assert!(a.passed(), "{:?}", &a.counterexamples[..a.counterexamples.len().min(3)]);
        let s = setwise_characterisation_suite(0x5E7, 15);
        assert!(s.passed(), "{:?}", &s.counterexamples[..s.counterexamples.len().min(3)]);
        let r = relational_characterisation_suite(0xB1B, 10);
        assert!(r.passed(), "{:?}", &r.counterexamples[..r.counterexamples.len().min(3)]);
    }

    #[test]
    fn punctured_fixture_suite_a_consistency() {
        // the inclusion of the punctured block into the full block: monic
        // and closure-reflection fail together, keeping the biconditional
        let big = LatticePatch::rect(-2, 2, -2, 2);
        let punctured = LatticePatch::punctured_rect(-2, 2, -2, 2, &[(0, 0)]);
        let site = build_causal_category(
            vec![big, punctured],
            vec![MorphismSpec { source: 1, target: 0, actions: vec![ComponentAction::IDENTITY] }],
            CausalCategoryOptions { add_basis_probes: true, max_morphisms: 4000 },
        )
        .unwrap();
        let mut report = SuiteReport::new("a");
        causal_suite_a(&site, &mut report);
        assert!(report.passed(), "{:?}", report.counterexamples);
    }
}
