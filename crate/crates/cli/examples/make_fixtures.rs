//! Regenerates the bundled JSON fixtures from the library builders.

use disjoint_kit::disjoint::builtin_setwise;
use disjoint_kit::fincat::{
    build_concrete_category, ConcreteBuildOptions, ConcreteStructure, FiniteCategory,
    GeneratingMap,
};
use disjoint_kit::relcore::{FiniteIndexedSet, RelationMap};
use disjoint_kit_cli::schema::{
    CategoryBody, ConcreteSchema, DisjointnessFile, ModelFile, MorphismSchema, FORMAT_VERSION,
};

fn category_body(cat: &FiniteCategory, concrete: &ConcreteStructure) -> CategoryBody {
    let mut composition = Vec::new();
    for g in 0..cat.morphism_count() {
        for f in 0..cat.morphism_count() {
            if let Some(gf) = cat.compose(g, f) {
                composition.push((g, f, gf));
            }
        }
    }
    CategoryBody {
        objects: (0..cat.object_count()).map(|o| cat.object_name(o).to_string()).collect(),
        morphisms: (0..cat.morphism_count())
            .map(|f| MorphismSchema { source: cat.source(f), target: cat.target(f) })
            .collect(),
        identities: (0..cat.object_count()).map(|o| cat.identity(o)).collect(),
        composition,
        concrete: Some(ConcreteSchema {
            sets: concrete.sets.iter().map(|s| s.size()).collect(),
            maps: concrete.maps.iter().map(|m| m.assignment().to_vec()).collect(),
            object_relations: None,
            components: None,
        }),
    }
}

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");

    // small setwise example: two singleton generalized points mapping into a
    // two-point set, plus a collapsing endomap
    let sets = vec![
        FiniteIndexedSet::new(1),
        FiniteIndexedSet::new(1),
        FiniteIndexedSet::new(2),
    ];
    let maps = vec![
        GeneratingMap {
            source: 0,
            target: 2,
            map: RelationMap::new(sets[0].clone(), sets[2].clone(), vec![0]).unwrap(),
        },
        GeneratingMap {
            source: 1,
            target: 2,
            map: RelationMap::new(sets[1].clone(), sets[2].clone(), vec![1]).unwrap(),
        },
        GeneratingMap {
            source: 2,
            target: 2,
            map: RelationMap::new(sets[2].clone(), sets[2].clone(), vec![0, 0]).unwrap(),
        },
    ];
    let (cat, concrete) = build_concrete_category(
        sets,
        None,
        None,
        maps,
        ConcreteBuildOptions { close_under_composition: true, adjoin_singleton_probes: false },
    )
    .unwrap();
    let table = builtin_setwise(&cat, &concrete).unwrap();

    let valid = ModelFile::Disjointness(DisjointnessFile {
        version: FORMAT_VERSION.into(),
        category: category_body(&cat, &concrete),
        related: table.pairs().collect(),
    });
    std::fs::write(
        dir.join("setwise_small.json"),
        serde_json::to_string_pretty(&valid).unwrap(),
    )
    .unwrap();

    // seeded violation: drop a pair that pre-composition stability requires
    let mut dropped = None;
    'outer: for (a, b) in table.pairs() {
        for (f1, f2) in [(a, b), (b, a)] {
            for g1 in cat.morphisms_into(cat.source(f1)) {
                if cat.is_identity(g1) {
                    continue;
                }
                let c1 = cat.compose(f1, g1).unwrap();
                let candidate = (c1.min(f2), c1.max(f2));
                if candidate != (f1.min(f2), f1.max(f2)) && table.related(c1, f2) {
                    dropped = Some(candidate);
                    break 'outer;
                }
            }
        }
    }
    let dropped = dropped.expect("fixture has a composite pair to drop");
    let broken = ModelFile::Disjointness(DisjointnessFile {
        version: FORMAT_VERSION.into(),
        category: category_body(&cat, &concrete),
        related: table.pairs().filter(|&p| p != dropped).collect(),
    });
    std::fs::write(
        dir.join("seeded_violation.json"),
        serde_json::to_string_pretty(&broken).unwrap(),
    )
    .unwrap();

    // the empty category
    let empty = ModelFile::Disjointness(DisjointnessFile {
        version: FORMAT_VERSION.into(),
        category: CategoryBody {
            objects: vec![],
            morphisms: vec![],
            identities: vec![],
            composition: vec![],
            concrete: None,
        },
        related: vec![],
    });
    std::fs::write(
        dir.join("empty_category.json"),
        serde_json::to_string_pretty(&empty).unwrap(),
    )
    .unwrap();

    println!("fixtures written to {}", dir.display());
}
