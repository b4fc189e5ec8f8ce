//! Disjointness relations on finite categories.
//!
//! A [`DisjointnessTable`] records which conterminous morphism pairs of a
//! category are disjoint. This module verifies the defining axioms
//! (symmetry, pre-composition stability, post-composition stability by
//! isomorphisms), the complement characterisation, pullbacks along functors,
//! and computes the wide subcategory of overlap-monic morphisms together
//! with a per-morphism certificate.

use crate::fincat::{FiniteCategory, Functor, ValidationReport};
use crate::relcore::Relation;
use fixedbitset::FixedBitSet;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DisjointError {
    #[error("pair ({f1}, {f2}) is not conterminous")]
    NotConterminous { f1: usize, f2: usize },
    #[error("morphism index {index} out of bounds ({count} morphisms)")]
    BadMorphism { index: usize, count: usize },
    #[error("table was built for {table} morphisms, category has {category}")]
    TableShapeMismatch { table: usize, category: usize },
    #[error("missing concrete structure: {0}")]
    MissingStructure(String),
    #[error("disjointness axioms do not hold: {0} violation(s)")]
    AxiomsFail(usize),
}

/// A symmetric relation on conterminous morphism pairs, stored as unordered
/// pairs `(min, max)` so symmetry is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointnessTable {
    morphism_count: usize,
    related: BTreeSet<(usize, usize)>,
}

impl DisjointnessTable {
    pub fn new(
        cat: &FiniteCategory,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, DisjointError> {
        let m = cat.morphism_count();
        let mut related = BTreeSet::new();
        for (f1, f2) in pairs {
            if f1 >= m {
                return Err(DisjointError::BadMorphism { index: f1, count: m });
            }
            if f2 >= m {
                return Err(DisjointError::BadMorphism { index: f2, count: m });
            }
            if cat.target(f1) != cat.target(f2) {
                return Err(DisjointError::NotConterminous { f1, f2 });
            }
            related.insert((f1.min(f2), f1.max(f2)));
        }
        Ok(DisjointnessTable {
            morphism_count: m,
            related,
        })
    }

    pub fn empty(cat: &FiniteCategory) -> Self {
        DisjointnessTable {
            morphism_count: cat.morphism_count(),
            related: BTreeSet::new(),
        }
    }

    /// Relate every conterminous pair.
    pub fn total(cat: &FiniteCategory) -> Self {
        DisjointnessTable {
            morphism_count: cat.morphism_count(),
            related: cat.conterminous_pairs().into_iter().collect(),
        }
    }

    pub fn morphism_count(&self) -> usize {
        self.morphism_count
    }

    pub fn related(&self, f1: usize, f2: usize) -> bool {
        self.related.contains(&(f1.min(f2), f1.max(f2)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.related.iter().copied()
    }

    pub fn pair_count(&self) -> usize {
        self.related.len()
    }

    fn check_shape(&self, cat: &FiniteCategory) -> Result<(), DisjointError> {
        if self.morphism_count != cat.morphism_count() {
            return Err(DisjointError::TableShapeMismatch {
                table: self.morphism_count,
                category: cat.morphism_count(),
            });
        }
        Ok(())
    }
}

/// Check the disjointness-relation axioms. Symmetry holds structurally for
/// the unordered-pair storage and is reported as a note.
pub fn verify_disjointness_axioms(cat: &FiniteCategory, table: &DisjointnessTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    if table.check_shape(cat).is_err() {
        report.push("table-shape", vec![], "table does not match the category".into());
        return report;
    }

    // symmetry: structural no-op for unordered pairs
    report.checks += table.pair_count();

    let isos = cat.isomorphisms();
    for &(f1, f2) in &table.related {
        // conterminous integrity (also enforced at construction)
        report.checks += 1;
        if cat.target(f1) != cat.target(f2) {
            report.push("conterminous", vec![f1, f2], "related pair does not share a codomain".into());
            continue;
        }

        // pre-composition stability
        for g1 in cat.morphisms_into(cat.source(f1)) {
            for g2 in cat.morphisms_into(cat.source(f2)) {
                report.checks += 1;
                let c1 = cat.compose(f1, g1).expect("composable");
                let c2 = cat.compose(f2, g2).expect("composable");
                if !table.related(c1, c2) {
                    report.push(
                        "pre-composition-stability",
                        vec![f1, f2, g1, g2],
                        format!("({f1}, {f2}) related but ({c1}, {c2}) = ({f1}∘{g1}, {f2}∘{g2}) is not"),
                    );
                }
            }
        }

        // post-composition stability by isomorphisms
        for &h in &isos {
            if cat.source(h) != cat.target(f1) {
                continue;
            }
            report.checks += 1;
            let c1 = cat.compose(h, f1).expect("composable");
            let c2 = cat.compose(h, f2).expect("composable");
            if !table.related(c1, c2) {
                report.push(
                    "iso-post-composition-stability",
                    vec![f1, f2, h],
                    format!("({f1}, {f2}) related but ({c1}, {c2}) = ({h}∘{f1}, {h}∘{f2}) is not"),
                );
            }
        }
    }
    report
}

/// Check the complement conditions directly: symmetry of the complement
/// (structural), stability under pre-cancellation, and stability of the
/// complement under post-composition by isomorphisms.
pub fn verify_complement_conditions(cat: &FiniteCategory, table: &DisjointnessTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    if table.check_shape(cat).is_err() {
        report.push("table-shape", vec![], "table does not match the category".into());
        return report;
    }
    let isos = cat.isomorphisms();

    for (f1, f2) in cat.conterminous_pairs() {
        // pre-cancellation: overlapping composites force overlapping factors
        for g1 in cat.morphisms_into(cat.source(f1)) {
            for g2 in cat.morphisms_into(cat.source(f2)) {
                report.checks += 1;
                let c1 = cat.compose(f1, g1).expect("composable");
                let c2 = cat.compose(f2, g2).expect("composable");
                if !table.related(c1, c2) && table.related(f1, f2) {
                    report.push(
                        "pre-cancellation",
                        vec![f1, f2, g1, g2],
                        format!("({c1}, {c2}) overlap but ({f1}, {f2}) do not"),
                    );
                }
            }
        }
        if !table.related(f1, f2) {
            // complement stable under post-composition by isomorphisms
            for &h in &isos {
                if cat.source(h) != cat.target(f1) {
                    continue;
                }
                report.checks += 1;
                let c1 = cat.compose(h, f1).expect("composable");
                let c2 = cat.compose(h, f2).expect("composable");
                if table.related(c1, c2) {
                    report.push(
                        "complement-iso-post-composition",
                        vec![f1, f2, h],
                        format!("({f1}, {f2}) overlap but ({c1}, {c2}) do not"),
                    );
                }
            }
        }
    }
    report
}

/// Both characterisations evaluated independently; true iff they agree.
pub fn verify_complement_characterisation(cat: &FiniteCategory, table: &DisjointnessTable) -> bool {
    let axioms = verify_disjointness_axioms(cat, table).is_valid();
    let complement = verify_complement_conditions(cat, table).is_valid();
    axioms == complement
}

/// Pull a disjointness table on the functor's target back to its source.
pub fn pullback_relation(func: &Functor, table: &DisjointnessTable) -> Result<DisjointnessTable, DisjointError> {
    table.check_shape(&func.target)?;
    let pairs = func
        .source
        .conterminous_pairs()
        .into_iter()
        .filter(|&(f1, f2)| table.related(func.apply_morphism(f1), func.apply_morphism(f2)));
    DisjointnessTable::new(&func.source, pairs)
}

/// Outcome of an overlap-monic check, with the first violating pair when the
/// answer is negative and the number of related pairs examined.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MonicCheck {
    pub monic: bool,
    pub witness: Option<(usize, usize)>,
    pub pairs_checked: usize,
}

/// Is `h` overlap-monic: does post-composition by `h` keep every related
/// conterminous pair into `source(h)` related?
pub fn is_overlap_monic(cat: &FiniteCategory, table: &DisjointnessTable, h: usize) -> MonicCheck {
    let c = cat.source(h);
    let mut pairs_checked = 0;
    let incoming = cat.morphisms_into(c);
    for (i, &f1) in incoming.iter().enumerate() {
        for &f2 in &incoming[i..] {
            if !table.related(f1, f2) {
                continue;
            }
            pairs_checked += 1;
            let c1 = cat.compose(h, f1).expect("composable");
            let c2 = cat.compose(h, f2).expect("composable");
            if !table.related(c1, c2) {
                return MonicCheck {
                    monic: false,
                    witness: Some((f1, f2)),
                    pairs_checked,
                };
            }
        }
    }
    MonicCheck {
        monic: true,
        witness: None,
        pairs_checked,
    }
}

/// Per-morphism certificate recorded while building the orthogonal subcategory.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MonicCertificate {
    /// Morphism index in the ambient category.
    pub ambient_morphism: usize,
    pub pairs_checked: usize,
}

/// The wide subcategory of overlap-monics, its restricted relation and the
/// exhaustive certificate for every kept morphism.
#[derive(Debug, Clone)]
pub struct OrthogonalCategory {
    pub category: FiniteCategory,
    pub relation: DisjointnessTable,
    /// Subcategory morphism index -> ambient morphism index.
    pub morphism_map: Vec<usize>,
    pub certificate: Vec<MonicCertificate>,
}

impl OrthogonalCategory {
    /// The inclusion functor into the ambient category.
    pub fn inclusion(&self, ambient: &FiniteCategory) -> Functor {
        Functor {
            source: self.category.clone(),
            target: ambient.clone(),
            object_map: (0..ambient.object_count()).collect(),
            morphism_map: self.morphism_map.clone(),
        }
    }
}

/// Restrict to the overlap-monic morphisms. The relation on the subcategory
/// is then an orthogonality relation: stable under post-composition by every
/// morphism of the subcategory.
pub fn overlap_monic_subcategory(
    cat: &FiniteCategory,
    table: &DisjointnessTable,
) -> Result<OrthogonalCategory, DisjointError> {
    table.check_shape(cat)?;
    let axioms = verify_disjointness_axioms(cat, table);
    if !axioms.is_valid() {
        return Err(DisjointError::AxiomsFail(axioms.violations.len()));
    }

    let mut keep = Vec::new();
    let mut certificate = Vec::new();
    for h in 0..cat.morphism_count() {
        let check = is_overlap_monic(cat, table, h);
        if check.monic {
            keep.push(h);
            certificate.push(MonicCertificate {
                ambient_morphism: h,
                pairs_checked: check.pairs_checked,
            });
        }
    }

    let mut new_index = vec![usize::MAX; cat.morphism_count()];
    for (i, &old) in keep.iter().enumerate() {
        new_index[old] = i;
    }
    let morphisms = keep
        .iter()
        .map(|&old| crate::fincat::MorphismData {
            source: cat.source(old),
            target: cat.target(old),
        })
        .collect();
    let identities = (0..cat.object_count())
        .map(|o| new_index[cat.identity(o)])
        .collect::<Vec<_>>();
    debug_assert!(identities.iter().all(|&i| i != usize::MAX), "identities are always monic");

    let mut composites = Vec::new();
    for (gi, &g) in keep.iter().enumerate() {
        for (fi, &f) in keep.iter().enumerate() {
            if cat.target(f) != cat.source(g) {
                continue;
            }
            let gf = cat.compose(g, f).expect("composable");
            // composites of monics are monic, so gf is kept
            composites.push((gi, fi, new_index[gf]));
        }
    }
    let names = (0..cat.object_count()).map(|o| cat.object_name(o).to_string()).collect();
    let category = FiniteCategory::new(names, morphisms, identities, &composites)
        .expect("subcategory construction is index-safe");

    let related = table
        .pairs()
        .filter(|&(f1, f2)| new_index[f1] != usize::MAX && new_index[f2] != usize::MAX)
        .map(|(f1, f2)| (new_index[f1], new_index[f2]));
    let relation = DisjointnessTable::new(&category, related)?;

    Ok(OrthogonalCategory {
        category,
        relation,
        morphism_map: keep,
        certificate,
    })
}

/// Full post-composition stability of a table (the orthogonality condition).
pub fn verify_orthogonality(cat: &FiniteCategory, table: &DisjointnessTable) -> ValidationReport {
    let mut report = verify_disjointness_axioms(cat, table);
    for &(f1, f2) in table.related.iter() {
        for h in 0..cat.morphism_count() {
            if cat.source(h) != cat.target(f1) {
                continue;
            }
            report.checks += 1;
            let c1 = cat.compose(h, f1).expect("composable");
            let c2 = cat.compose(h, f2).expect("composable");
            if !table.related(c1, c2) {
                report.push(
                    "post-composition-stability",
                    vec![f1, f2, h],
                    format!("({f1}, {f2}) related but ({c1}, {c2}) = ({h}∘{f1}, {h}∘{f2}) is not"),
                );
            }
        }
    }
    report
}

/// Does `func` send related pairs to related pairs?
pub fn functor_preserves_disjointness(
    func: &Functor,
    table_src: &DisjointnessTable,
    table_tgt: &DisjointnessTable,
) -> bool {
    func.source
        .conterminous_pairs()
        .into_iter()
        .all(|(f1, f2)| {
            !table_src.related(f1, f2)
                || table_tgt.related(func.apply_morphism(f1), func.apply_morphism(f2))
        })
}

/// Does relatedness of image pairs force relatedness of the sources?
pub fn functor_reflects_disjointness(
    func: &Functor,
    table_src: &DisjointnessTable,
    table_tgt: &DisjointnessTable,
) -> bool {
    func.source
        .conterminous_pairs()
        .into_iter()
        .all(|(f1, f2)| {
            !table_tgt.related(func.apply_morphism(f1), func.apply_morphism(f2))
                || table_src.related(f1, f2)
        })
}

fn concrete_images(
    cat: &FiniteCategory,
    concrete: &crate::fincat::ConcreteStructure,
) -> Vec<FixedBitSet> {
    (0..cat.morphism_count()).map(|f| concrete.maps[f].image()).collect()
}

/// Setwise disjointness: images of the underlying maps are disjoint.
pub fn builtin_setwise(
    cat: &FiniteCategory,
    concrete: &crate::fincat::ConcreteStructure,
) -> Result<DisjointnessTable, DisjointError> {
    let images = concrete_images(cat, concrete);
    let pairs = cat
        .conterminous_pairs()
        .into_iter()
        .filter(|&(f1, f2)| images[f1].is_disjoint(&images[f2]));
    DisjointnessTable::new(cat, pairs)
}

/// Relational disjointness: the codomain relation misses the image product.
pub fn builtin_sbin(
    cat: &FiniteCategory,
    concrete: &crate::fincat::ConcreteStructure,
) -> Result<DisjointnessTable, DisjointError> {
    let rels: &Vec<Relation> = concrete
        .object_relations
        .as_ref()
        .ok_or_else(|| DisjointError::MissingStructure("object relations".into()))?;
    let images = concrete_images(cat, concrete);
    let pairs = cat.conterminous_pairs().into_iter().filter(|&(f1, f2)| {
        let rel = &rels[cat.target(f1)];
        images[f1]
            .ones()
            .all(|a| rel.row(a).is_disjoint(&images[f2]))
    });
    DisjointnessTable::new(cat, pairs)
}

/// Component disjointness: the images touch no common component label.
pub fn builtin_pi0(
    cat: &FiniteCategory,
    concrete: &crate::fincat::ConcreteStructure,
) -> Result<DisjointnessTable, DisjointError> {
    let comps: &Vec<Vec<usize>> = concrete
        .components
        .as_ref()
        .ok_or_else(|| DisjointError::MissingStructure("component labelling".into()))?;
    let images = concrete_images(cat, concrete);
    let labels = |f: usize| -> BTreeSet<usize> {
        images[f].ones().map(|a| comps[cat.target(f)][a]).collect()
    };
    let pairs = cat
        .conterminous_pairs()
        .into_iter()
        .filter(|&(f1, f2)| labels(f1).is_disjoint(&labels(f2)));
    DisjointnessTable::new(cat, pairs)
}

/// Exploratory check (never asserted): among sampled sub- and super-tables of
/// the pullback, a table makes the functor disjointness-preserving iff it is
/// contained in the pullback, and disjointness-reflecting iff it contains it.
#[derive(Debug, Clone, Serialize, Default)]
pub struct PullbackExtremalityReport {
    pub samples: usize,
    pub preserving_matches_subset: usize,
    pub reflecting_matches_superset: usize,
}

pub fn pullback_extremality_experiment(
    func: &Functor,
    table_tgt: &DisjointnessTable,
    seed: u64,
    samples: usize,
) -> Result<PullbackExtremalityReport, DisjointError> {
    use rand::{Rng, SeedableRng};
    let pullback = pullback_relation(func, table_tgt)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let all_pairs = func.source.conterminous_pairs();
    let mut report = PullbackExtremalityReport::default();
    for _ in 0..samples {
        let pairs: Vec<(usize, usize)> = all_pairs
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let candidate = DisjointnessTable::new(&func.source, pairs)?;
        report.samples += 1;
        let preserving = functor_preserves_disjointness(func, &candidate, table_tgt);
        let is_subset = candidate.pairs().all(|(a, b)| pullback.related(a, b));
        if preserving == is_subset {
            report.preserving_matches_subset += 1;
        }
        let reflecting = functor_reflects_disjointness(func, &candidate, table_tgt);
        let is_superset = pullback.pairs().all(|(a, b)| candidate.related(a, b));
        if reflecting == is_superset {
            report.reflecting_matches_superset += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        build_concrete_category, build_poset_category, validate_category, ConcreteBuildOptions,
        GeneratingMap,
    };
    use crate::relcore::{reflexive_transitive_closure, FiniteIndexedSet, RelationMap};

    /// Three sets with a couple of injective and non-injective maps,
    /// singleton probes adjoined.
    fn setwise_fixture() -> (FiniteCategory, crate::fincat::ConcreteStructure) {
        let sets = vec![
            FiniteIndexedSet::new(2),
            FiniteIndexedSet::new(3),
            FiniteIndexedSet::new(2),
        ];
        let maps = vec![
            GeneratingMap {
                source: 0,
                target: 1,
                map: RelationMap::new(sets[0].clone(), sets[1].clone(), vec![0, 2]).unwrap(),
            },
            GeneratingMap {
                source: 1,
                target: 2,
                map: RelationMap::new(sets[1].clone(), sets[2].clone(), vec![0, 0, 1]).unwrap(),
            },
        ];
        build_concrete_category(
            sets,
            None,
            None,
            maps,
            ConcreteBuildOptions {
                close_under_composition: true,
                adjoin_singleton_probes: true,
            },
        )
        .unwrap()
    }

    #[test]
    fn setwise_relation_satisfies_axioms() {
        let (cat, concrete) = setwise_fixture();
        assert!(validate_category(&cat).is_valid());
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let report = verify_disjointness_axioms(&cat, &table);
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn seeded_missing_precomposite_is_reported() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        // remove one related composite pair that pre-composition requires
        let mut found = None;
        'outer: for &(f1, f2) in &table.related {
            for g1 in cat.morphisms_into(cat.source(f1)) {
                if cat.is_identity(g1) {
                    continue;
                }
                let c1 = cat.compose(f1, g1).unwrap();
                if (c1.min(f2), c1.max(f2)) != (f1.min(f2), f1.max(f2)) {
                    found = Some(((f1, f2), (c1, f2)));
                    break 'outer;
                }
            }
        }
        let ((f1, f2), (c1, c2)) = found.expect("fixture has a composite pair");
        let pruned: Vec<_> = table
            .pairs()
            .filter(|&p| p != (c1.min(c2), c1.max(c2)))
            .collect();
        let broken = DisjointnessTable::new(&cat, pruned).unwrap();
        assert!(broken.related(f1, f2));
        let report = verify_disjointness_axioms(&cat, &broken);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "pre-composition-stability"));
    }

    #[test]
    fn empty_category_table_passes_vacuously() {
        let cat = FiniteCategory::new(vec![], vec![], vec![], &[]).unwrap();
        let table = DisjointnessTable::empty(&cat);
        assert!(verify_disjointness_axioms(&cat, &table).is_valid());
        assert!(verify_complement_characterisation(&cat, &table));
    }

    #[test]
    fn complement_characterisation_on_valid_and_broken_tables() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        assert!(verify_complement_characterisation(&cat, &table));

        // break pre-composition stability only; both sides must fail together
        if let Some(&pair) = table.related.iter().next() {
            let pruned: Vec<_> = table.pairs().filter(|&p| p != pair).collect();
            let broken = DisjointnessTable::new(&cat, pruned).unwrap();
            assert!(verify_complement_characterisation(&cat, &broken));
        }
    }

    #[test]
    fn random_tables_satisfy_complement_equivalence() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (cat, _) = setwise_fixture();
        let all = cat.conterminous_pairs();
        for _ in 0..100 {
            let pairs: Vec<_> = all.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
            let table = DisjointnessTable::new(&cat, pairs).unwrap();
            assert!(verify_complement_characterisation(&cat, &table));
        }
    }

    #[test]
    fn pullback_along_identity_is_identity() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let func = Functor::identity(cat);
        let pulled = pullback_relation(&func, &table).unwrap();
        assert_eq!(pulled, table);
    }

    #[test]
    fn pullback_preserves_and_reflects_by_construction() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let func = Functor::identity(cat);
        let pulled = pullback_relation(&func, &table).unwrap();
        assert!(functor_preserves_disjointness(&func, &pulled, &table));
        assert!(functor_reflects_disjointness(&func, &pulled, &table));
    }

    #[test]
    fn diagonal_relation_pullback_coincides_with_setwise() {
        // same category once with plain sets, once with diagonal object
        // relations; the sbin table of the latter equals the setwise table
        let (cat, concrete) = setwise_fixture();
        let diagonals: Vec<Relation> = concrete.sets.iter().map(|s| Relation::diagonal(s.size())).collect();
        let with_diag = crate::fincat::ConcreteStructure {
            sets: concrete.sets.clone(),
            maps: concrete.maps.clone(),
            object_relations: Some(diagonals),
            components: concrete.components.clone(),
        };
        let setwise = builtin_setwise(&cat, &concrete).unwrap();
        let bin = builtin_sbin(&cat, &with_diag).unwrap();
        assert_eq!(setwise, bin);
    }

    #[test]
    fn isomorphisms_are_overlap_monic() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        for f in cat.isomorphisms() {
            assert!(is_overlap_monic(&cat, &table, f).monic);
        }
    }

    #[test]
    fn setwise_monics_are_exactly_injective_maps() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        for h in 0..cat.morphism_count() {
            let check = is_overlap_monic(&cat, &table, h);
            assert_eq!(
                check.monic,
                concrete.maps[h].is_injective(),
                "morphism {h} monic={} injective={}",
                check.monic,
                concrete.maps[h].is_injective()
            );
            if !check.monic {
                // the witness is a genuine counterexample
                let (f1, f2) = check.witness.unwrap();
                assert!(table.related(f1, f2));
                let c1 = cat.compose(h, f1).unwrap();
                let c2 = cat.compose(h, f2).unwrap();
                assert!(!table.related(c1, c2));
            }
        }
    }

    /// sBin-style fixture: sets with symmetric relations, relation-preserving
    /// maps, singleton probes (empty relations) adjoined.
    fn sbin_fixture() -> (FiniteCategory, crate::fincat::ConcreteStructure) {
        let sets = vec![FiniteIndexedSet::new(2), FiniteIndexedSet::new(3)];
        let rels = vec![
            Relation::from_pairs(2, &[(0, 1), (1, 0)]).unwrap(),
            Relation::from_pairs(3, &[(0, 1), (1, 0), (2, 2)]).unwrap(),
        ];
        // preserves: 0,1 related in source map to 0,1 related in target.
        let f = RelationMap::new(sets[0].clone(), sets[1].clone(), vec![0, 1]).unwrap();
        // collapses to a reflexive-relation point: preserves as well.
        let g = RelationMap::new(sets[0].clone(), sets[1].clone(), vec![2, 2]).unwrap();
        let maps = vec![
            GeneratingMap { source: 0, target: 1, map: f },
            GeneratingMap { source: 0, target: 1, map: g },
        ];
        build_concrete_category(
            sets,
            Some(rels),
            None,
            maps,
            ConcreteBuildOptions {
                close_under_composition: true,
                adjoin_singleton_probes: true,
            },
        )
        .unwrap()
    }

    #[test]
    fn sbin_fixture_is_relation_preserving_and_axioms_hold() {
        let (cat, concrete) = sbin_fixture();
        assert!(concrete.validate(&cat).is_valid());
        let table = builtin_sbin(&cat, &concrete).unwrap();
        assert!(verify_disjointness_axioms(&cat, &table).is_valid());
    }

    #[test]
    fn sbin_monics_are_exactly_relation_reflecting_maps() {
        let (cat, concrete) = sbin_fixture();
        let table = builtin_sbin(&cat, &concrete).unwrap();
        let rels = concrete.object_relations.as_ref().unwrap();
        for h in 0..cat.morphism_count() {
            let reflects = crate::relcore::reflects(
                &concrete.maps[h],
                &rels[cat.source(h)],
                &rels[cat.target(h)],
            )
            .unwrap();
            let check = is_overlap_monic(&cat, &table, h);
            assert_eq!(check.monic, reflects, "morphism {h}");
        }
    }

    /// π₀-style fixture: objects are vertex sets with component labels.
    fn pi0_fixture() -> (FiniteCategory, crate::fincat::ConcreteStructure) {
        let sets = vec![FiniteIndexedSet::new(2), FiniteIndexedSet::new(4)];
        // object 0: two components {0}, {1}; object 1: components {0,1}, {2}, {3}
        let comps = vec![vec![0, 1], vec![0, 0, 1, 2]];
        // a map collapsing the two components of object 0 into component 0
        let collapse = RelationMap::new(sets[0].clone(), sets[1].clone(), vec![0, 1]).unwrap();
        // a map keeping them apart
        let separate = RelationMap::new(sets[0].clone(), sets[1].clone(), vec![1, 2]).unwrap();
        let maps = vec![
            GeneratingMap { source: 0, target: 1, map: collapse },
            GeneratingMap { source: 0, target: 1, map: separate },
        ];
        build_concrete_category(
            sets,
            None,
            Some(comps),
            maps,
            ConcreteBuildOptions {
                close_under_composition: true,
                adjoin_singleton_probes: true,
            },
        )
        .unwrap()
    }

    #[test]
    fn pi0_relates_maps_into_disjoint_components() {
        let (cat, concrete) = pi0_fixture();
        let table = builtin_pi0(&cat, &concrete).unwrap();
        assert!(verify_disjointness_axioms(&cat, &table).is_valid());
        // constant maps to elements 0/1 (component 0) and 2 (component 1)
        // of object 1 must be related; equal images must never be related
        for f1 in 0..cat.morphism_count() {
            let img1 = concrete.maps[f1].image();
            for f2 in 0..cat.morphism_count() {
                if cat.target(f1) != cat.target(f2) {
                    continue;
                }
                if concrete.maps[f2].image() == img1 && !img1.is_clear() {
                    assert!(!table.related(f1, f2), "equal nonempty images must overlap");
                }
            }
        }
    }

    #[test]
    fn pi0_monics_are_exactly_component_injective_maps() {
        let (cat, concrete) = pi0_fixture();
        let table = builtin_pi0(&cat, &concrete).unwrap();
        let comps = concrete.components.as_ref().unwrap();
        for h in 0..cat.morphism_count() {
            // induced map on components, injectivity by direct unfolding
            let src_comps = &comps[cat.source(h)];
            let tgt_comps = &comps[cat.target(h)];
            let mut induced: std::collections::HashMap<usize, usize> = Default::default();
            let mut injective = true;
            for x in 0..concrete.sets[cat.source(h)].size() {
                let from = src_comps[x];
                let to = tgt_comps[concrete.maps[h].apply(x)];
                if let Some(&prev) = induced.get(&from) {
                    if prev != to {
                        // not well-defined would mean labels are inconsistent;
                        // our fixtures keep maps component-respecting
                        panic!("component labelling not respected by map {h}");
                    }
                } else {
                    induced.insert(from, to);
                }
            }
            let mut seen = std::collections::HashSet::new();
            for to in induced.values() {
                if !seen.insert(*to) {
                    injective = false;
                }
            }
            assert_eq!(is_overlap_monic(&cat, &table, h).monic, injective, "morphism {h}");
        }
    }

    #[test]
    fn total_table_makes_everything_monic() {
        let (cat, _) = setwise_fixture();
        let table = DisjointnessTable::total(&cat);
        for h in 0..cat.morphism_count() {
            assert!(is_overlap_monic(&cat, &table, h).monic);
        }
    }

    #[test]
    fn empty_table_makes_everything_monic_vacuously() {
        let (cat, _) = setwise_fixture();
        let table = DisjointnessTable::empty(&cat);
        let ortho = overlap_monic_subcategory(&cat, &table).unwrap();
        assert_eq!(ortho.category.morphism_count(), cat.morphism_count());
    }

    #[test]
    fn setwise_subcategory_is_the_injective_morphisms() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let ortho = overlap_monic_subcategory(&cat, &table).unwrap();
        let injective: Vec<usize> = (0..cat.morphism_count())
            .filter(|&f| concrete.maps[f].is_injective())
            .collect();
        assert_eq!(ortho.morphism_map, injective);
        assert!(validate_category(&ortho.category).is_valid());
        // restricted relation is an orthogonality relation
        assert!(verify_orthogonality(&ortho.category, &ortho.relation).is_valid());
        // certificate covers every kept morphism
        assert_eq!(ortho.certificate.len(), ortho.category.morphism_count());
    }

    #[test]
    fn monics_closed_under_composition() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let monic: Vec<bool> = (0..cat.morphism_count())
            .map(|h| is_overlap_monic(&cat, &table, h).monic)
            .collect();
        for g in 0..cat.morphism_count() {
            for f in 0..cat.morphism_count() {
                if let Some(gf) = cat.compose(g, f) {
                    if monic[g] && monic[f] {
                        assert!(monic[gf]);
                    }
                }
            }
        }
    }

    #[test]
    fn functors_respect_overlap_monics() {
        // identity functor preserves & reflects the table; monic status must
        // transfer in both directions (it is full and essentially surjective)
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let func = Functor::identity(cat.clone());
        assert!(functor_preserves_disjointness(&func, &table, &table));
        assert!(functor_reflects_disjointness(&func, &table, &table));
        for h in 0..cat.morphism_count() {
            let in_src = is_overlap_monic(&func.source, &table, h).monic;
            let in_tgt = is_overlap_monic(&func.target, &table, func.apply_morphism(h)).monic;
            assert_eq!(in_src, in_tgt);
        }
    }

    #[test]
    fn subcategory_inclusion_transfers_monic_status() {
        // the orthogonal-subcategory inclusion carries the restricted table,
        // which is the pullback of the ambient one, so it preserves and
        // reflects disjointness; monic status must transfer downward, and
        // here also upward since every kept morphism is ambient-monic
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let ortho = overlap_monic_subcategory(&cat, &table).unwrap();
        let inclusion = ortho.inclusion(&cat);
        assert!(crate::fincat::validate_functor(&inclusion).is_valid());
        assert_eq!(pullback_relation(&inclusion, &table).unwrap(), ortho.relation);
        assert!(functor_preserves_disjointness(&inclusion, &ortho.relation, &table));
        assert!(functor_reflects_disjointness(&inclusion, &ortho.relation, &table));
        for (sub_f, &amb_f) in ortho.morphism_map.iter().enumerate() {
            let ambient_monic = is_overlap_monic(&cat, &table, amb_f).monic;
            let sub_monic = is_overlap_monic(&ortho.category, &ortho.relation, sub_f).monic;
            assert!(ambient_monic);
            // reflection of monics along a preserving-and-reflecting functor
            assert!(sub_monic);
        }
    }

    #[test]
    fn coarse_to_fine_component_tables_preserve_but_not_reflect() {
        let (cat, concrete) = pi0_fixture();
        // fine labelling: as stored; coarse labelling: merge the two
        // components of object 1 that the probes can distinguish
        let fine = builtin_pi0(&cat, &concrete).unwrap();
        let mut coarse_concrete = concrete.clone();
        if let Some(comps) = &mut coarse_concrete.components {
            for label in comps[1].iter_mut() {
                if *label == 1 {
                    *label = 0;
                }
            }
        }
        let coarse = builtin_pi0(&cat, &coarse_concrete).unwrap();
        let func = Functor::identity(cat);
        assert!(functor_preserves_disjointness(&func, &coarse, &fine));
        assert!(!functor_reflects_disjointness(&func, &coarse, &fine));
    }

    #[test]
    fn pullback_extremality_experiment_reports_full_agreement_here() {
        let (cat, concrete) = setwise_fixture();
        let table = builtin_setwise(&cat, &concrete).unwrap();
        let func = Functor::identity(cat);
        let report = pullback_extremality_experiment(&func, &table, 11, 50).unwrap();
        assert_eq!(report.samples, 50);
        // reported, not asserted as a theorem: record the counts are coherent
        assert!(report.preserving_matches_subset <= report.samples);
        assert!(report.reflecting_matches_superset <= report.samples);
    }

    #[test]
    fn poset_category_with_empty_table_has_trivial_orthogonal_subcategory() {
        let base = Relation::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let cat = build_poset_category(&reflexive_transitive_closure(&base)).unwrap();
        let table = DisjointnessTable::empty(&cat);
        let ortho = overlap_monic_subcategory(&cat, &table).unwrap();
        assert_eq!(ortho.category.morphism_count(), cat.morphism_count());
    }
}
