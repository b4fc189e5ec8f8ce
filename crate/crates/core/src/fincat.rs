//! Explicit finite categories and functors, validated by exhaustive search.
//!
//! A [`FiniteCategory`] tabulates objects, morphisms with endpoints, chosen
//! identities and a composition table `comp[g][f]` defined exactly when
//! `target(f) = source(g)`. All categorical laws are decidable here and
//! [`validate_category`] checks them, reporting violations with witnesses
//! instead of failing.

use crate::relcore::{FiniteIndexedSet, Relation, RelationMap};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FincatError {
    #[error("object index {index} out of bounds ({count} objects)")]
    BadObject { index: usize, count: usize },
    #[error("morphism index {index} out of bounds ({count} morphisms)")]
    BadMorphism { index: usize, count: usize },
    #[error("relation is not a preorder")]
    NotAPreorder,
    #[error("composite of morphisms {g} ∘ {f} escapes the given family")]
    CompositionEscape { g: usize, f: usize },
    #[error("map for morphism {index} does not match its endpoint sets")]
    MapEndpointMismatch { index: usize },
    #[error("disjointness pair ({f}, {g}) is not conterminous")]
    NotConterminous { f: usize, g: usize },
    #[error("{0}")]
    Invalid(String),
}

/// One failed law instance, with the morphism/object indices that witness it.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witnesses: Vec<usize>,
    pub detail: String,
}

/// Result of a law check: empty iff everything holds.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Number of individual law instances examined.
    pub checks: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: &str, witnesses: Vec<usize>, detail: String) {
        self.violations.push(Violation {
            law: law.to_string(),
            witnesses,
            detail,
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.checks += other.checks;
    }
}

/// Endpoints of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MorphismData {
    pub source: usize,
    pub target: usize,
}

/// An explicitly tabulated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    object_names: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: Vec<usize>,
    /// Row-major `comp[g * m + f]`, `Some` exactly when `target(f) = source(g)`.
    composition: Vec<Option<usize>>,
}

impl FiniteCategory {
    pub fn new(
        object_names: Vec<String>,
        morphisms: Vec<MorphismData>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self, FincatError> {
        let n_obj = object_names.len();
        let m = morphisms.len();
        for md in &morphisms {
            if md.source >= n_obj {
                return Err(FincatError::BadObject { index: md.source, count: n_obj });
            }
            if md.target >= n_obj {
                return Err(FincatError::BadObject { index: md.target, count: n_obj });
            }
        }
        if identities.len() != n_obj {
            return Err(FincatError::Invalid(format!(
                "{} identities for {} objects",
                identities.len(),
                n_obj
            )));
        }
        for &i in &identities {
            if i >= m {
                return Err(FincatError::BadMorphism { index: i, count: m });
            }
        }
        let mut composition = vec![None; m * m];
        for &(g, f, gf) in composites {
            for &i in &[g, f, gf] {
                if i >= m {
                    return Err(FincatError::BadMorphism { index: i, count: m });
                }
            }
            composition[g * m + f] = Some(gf);
        }
        Ok(FiniteCategory {
            object_names,
            morphisms,
            identities,
            composition,
        })
    }

    /// The category with one object and its identity.
    pub fn terminal() -> Self {
        FiniteCategory {
            object_names: vec!["*".into()],
            morphisms: vec![MorphismData { source: 0, target: 0 }],
            identities: vec![0],
            composition: vec![Some(0)],
        }
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.object_names[o]
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f && self.morphisms[f].source == self.morphisms[f].target
    }

    /// `g ∘ f` (apply `f` first), defined when `target(f) = source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition[g * self.morphisms.len() + f]
    }

    pub fn morphisms_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&f| self.source(f) == source && self.target(f) == target)
            .collect()
    }

    pub fn morphisms_into(&self, target: usize) -> Vec<usize> {
        (0..self.morphism_count()).filter(|&f| self.target(f) == target).collect()
    }

    /// Pairs of morphisms sharing a codomain, in index order with `f1 <= f2`.
    pub fn conterminous_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.morphism_count();
        let mut out = Vec::new();
        for f1 in 0..m {
            for f2 in f1..m {
                if self.target(f1) == self.target(f2) {
                    out.push((f1, f2));
                }
            }
        }
        out
    }

    pub fn is_isomorphism_morphism(&self, f: usize) -> bool {
        let s = self.source(f);
        let t = self.target(f);
        (0..self.morphism_count()).any(|g| {
            self.source(g) == t
                && self.target(g) == s
                && self.compose(g, f) == Some(self.identity(s))
                && self.compose(f, g) == Some(self.identity(t))
        })
    }

    pub fn isomorphisms(&self) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&f| self.is_isomorphism_morphism(f))
            .collect()
    }

    pub fn objects_isomorphic(&self, a: usize, b: usize) -> bool {
        a == b
            || self
                .morphisms_between(a, b)
                .iter()
                .any(|&f| self.is_isomorphism_morphism(f))
    }
}

/// Check every categorical law on `cat`, reporting all violations.
pub fn validate_category(cat: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = cat.morphism_count();

    for o in 0..cat.object_count() {
        report.checks += 1;
        let id = cat.identity(o);
        if cat.source(id) != o || cat.target(id) != o {
            report.push(
                "identity-endpoints",
                vec![o, id],
                format!("identity of object {o} has endpoints ({}, {})", cat.source(id), cat.target(id)),
            );
        }
    }

    for g in 0..m {
        for f in 0..m {
            report.checks += 1;
            let composable = cat.target(f) == cat.source(g);
            match cat.compose(g, f) {
                None if composable => {
                    report.push("composition-total", vec![g, f], format!("missing composite for {g} ∘ {f}"));
                }
                Some(gf) if !composable => {
                    report.push(
                        "composition-domain",
                        vec![g, f, gf],
                        format!("composite defined for non-composable pair {g} ∘ {f}"),
                    );
                }
                Some(gf) if composable
                    && (cat.source(gf) != cat.source(f) || cat.target(gf) != cat.target(g)) => {
                        report.push(
                            "composition-endpoints",
                            vec![g, f, gf],
                            format!(
                                "{g} ∘ {f} = {gf} has endpoints ({}, {}), expected ({}, {})",
                                cat.source(gf),
                                cat.target(gf),
                                cat.source(f),
                                cat.target(g)
                            ),
                        );
                    }
                _ => {}
            }
        }
    }

    for f in 0..m {
        report.checks += 2;
        let id_src = cat.identity(cat.source(f));
        let id_tgt = cat.identity(cat.target(f));
        if cat.compose(f, id_src) != Some(f) {
            report.push("identity-right", vec![f, id_src], format!("{f} ∘ id ≠ {f}"));
        }
        if cat.compose(id_tgt, f) != Some(f) {
            report.push("identity-left", vec![id_tgt, f], format!("id ∘ {f} ≠ {f}"));
        }
    }

    for h in 0..m {
        for g in 0..m {
            if cat.target(g) != cat.source(h) {
                continue;
            }
            for f in 0..m {
                if cat.target(f) != cat.source(g) {
                    continue;
                }
                report.checks += 1;
                let left = cat.compose(h, g).and_then(|hg| cat.compose(hg, f));
                let right = cat.compose(g, f).and_then(|gf| cat.compose(h, gf));
                if left != right || left.is_none() {
                    report.push(
                        "associativity",
                        vec![h, g, f],
                        format!("(h ∘ g) ∘ f = {left:?} but h ∘ (g ∘ f) = {right:?}"),
                    );
                }
            }
        }
    }

    report
}

/// Thin category of a preorder: one object per point, one morphism per
/// related pair, composition forced by uniqueness.
pub fn build_poset_category(order: &Relation) -> Result<FiniteCategory, FincatError> {
    if !order.is_preorder() {
        return Err(FincatError::NotAPreorder);
    }
    let n = order.size();
    let object_names = (0..n)
        .map(|i| order.carrier().label(i).map(str::to_string).unwrap_or_else(|| format!("p{i}")))
        .collect();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    for (x, y) in order.iter_pairs() {
        index.insert((x, y), morphisms.len());
        morphisms.push(MorphismData { source: x, target: y });
    }
    let identities = (0..n).map(|x| index[&(x, x)]).collect();
    let mut composites = Vec::new();
    for (&(x, y), &f) in index.iter() {
        for (&(y2, z), &g) in index.iter() {
            if y == y2 {
                composites.push((g, f, index[&(x, z)]));
            }
        }
    }
    FiniteCategory::new(object_names, morphisms, identities, &composites)
}

/// Underlying sets, maps, and optional relational/component structure for a
/// concrete category. Indices run parallel to the category's objects and
/// morphisms.
#[derive(Debug, Clone)]
pub struct ConcreteStructure {
    pub sets: Vec<FiniteIndexedSet>,
    pub maps: Vec<RelationMap>,
    /// Per-object symmetric relation, for sBin-style categories.
    pub object_relations: Option<Vec<Relation>>,
    /// Per-object component label per element, for π₀-style categories.
    pub components: Option<Vec<Vec<usize>>>,
}

impl ConcreteStructure {
    /// Check that the concrete data matches the category shape: maps compose
    /// as the category composes, morphism maps fit their endpoint sets, and
    /// when relations are present they are symmetric and preserved.
    pub fn validate(&self, cat: &FiniteCategory) -> ValidationReport {
        let mut report = ValidationReport::default();
        for f in 0..cat.morphism_count() {
            report.checks += 1;
            let map = &self.maps[f];
            if map.domain() != &self.sets[cat.source(f)] || map.codomain() != &self.sets[cat.target(f)] {
                report.push("map-endpoints", vec![f], format!("map of morphism {f} does not match endpoint sets"));
            }
        }
        for g in 0..cat.morphism_count() {
            for f in 0..cat.morphism_count() {
                if let Some(gf) = cat.compose(g, f) {
                    report.checks += 1;
                    match self.maps[g].compose(&self.maps[f]) {
                        Ok(composed) if composed == self.maps[gf] => {}
                        _ => report.push(
                            "map-composition",
                            vec![g, f, gf],
                            format!("underlying maps of {g} ∘ {f} do not compose to those of {gf}"),
                        ),
                    }
                }
            }
        }
        if let Some(rels) = &self.object_relations {
            for (o, rel) in rels.iter().enumerate() {
                report.checks += 1;
                if !rel.is_symmetric() {
                    report.push("object-relation-symmetric", vec![o], format!("relation on object {o} is not symmetric"));
                }
            }
            for f in 0..cat.morphism_count() {
                report.checks += 1;
                let ok = crate::relcore::preserves(
                    &self.maps[f],
                    &rels[cat.source(f)],
                    &rels[cat.target(f)],
                );
                if !matches!(ok, Ok(true)) {
                    report.push("map-preserves-relation", vec![f], format!("morphism {f} does not preserve object relations"));
                }
            }
        }
        report
    }
}

/// Options for [`build_concrete_category`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ConcreteBuildOptions {
    /// Close the family under composition instead of rejecting escapes.
    pub close_under_composition: bool,
    /// Adjoin a singleton object (with empty relation / fresh component)
    /// and every constant map from it, providing generalized elements.
    pub adjoin_singleton_probes: bool,
}

/// A generating map between two objects of a concrete family.
#[derive(Debug, Clone)]
pub struct GeneratingMap {
    pub source: usize,
    pub target: usize,
    pub map: RelationMap,
}

/// Assemble a concrete category from sets and generating maps. Identities are
/// always added; composites are added or rejected per the options.
pub fn build_concrete_category(
    sets: Vec<FiniteIndexedSet>,
    object_relations: Option<Vec<Relation>>,
    components: Option<Vec<Vec<usize>>>,
    maps: Vec<GeneratingMap>,
    options: ConcreteBuildOptions,
) -> Result<(FiniteCategory, ConcreteStructure), FincatError> {
    let mut sets = sets;
    let mut object_relations = object_relations;
    let mut components = components;
    let mut generating = maps;

    if options.adjoin_singleton_probes {
        let star = sets.len();
        sets.push(FiniteIndexedSet::new(1));
        if let Some(rels) = &mut object_relations {
            rels.push(Relation::empty_of_size(1));
        }
        if let Some(comps) = &mut components {
            comps.push(vec![0]);
        }
        for (o, set) in sets.iter().enumerate().take(star) {
            for elem in 0..set.size() {
                generating.push(GeneratingMap {
                    source: star,
                    target: o,
                    map: RelationMap::new(FiniteIndexedSet::new(1), set.clone(), vec![elem])
                        .expect("constant map"),
                });
            }
        }
    }

    let n_obj = sets.len();
    for gm in &generating {
        if gm.source >= n_obj {
            return Err(FincatError::BadObject { index: gm.source, count: n_obj });
        }
        if gm.target >= n_obj {
            return Err(FincatError::BadObject { index: gm.target, count: n_obj });
        }
    }

    // Morphisms are identified by (source object, target object, assignment).
    let mut morphisms: Vec<MorphismData> = Vec::new();
    let mut maps: Vec<RelationMap> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let add = |source: usize, target: usize, map: RelationMap,
                   morphisms: &mut Vec<MorphismData>,
                   maps: &mut Vec<RelationMap>,
                   index: &mut HashMap<(usize, usize, Vec<usize>), usize>|
     -> usize {
        let key = (source, target, map.assignment().to_vec());
        if let Some(&i) = index.get(&key) {
            return i;
        }
        let i = morphisms.len();
        index.insert(key, i);
        morphisms.push(MorphismData { source, target });
        maps.push(map);
        i
    };

    let mut identities = Vec::with_capacity(n_obj);
    for (o, set) in sets.iter().enumerate() {
        let id = add(o, o, RelationMap::identity(set.clone()), &mut morphisms, &mut maps, &mut index);
        identities.push(id);
    }
    for (gi, gm) in generating.iter().enumerate() {
        if gm.map.domain() != &sets[gm.source] || gm.map.codomain() != &sets[gm.target] {
            return Err(FincatError::MapEndpointMismatch { index: gi });
        }
        add(gm.source, gm.target, gm.map.clone(), &mut morphisms, &mut maps, &mut index);
    }

    // Close under composition, or verify the family is already closed.
    loop {
        let m = morphisms.len();
        let mut added = false;
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].target != morphisms[g].source {
                    continue;
                }
                let composed = maps[g].compose(&maps[f]).expect("endpoints match");
                let key = (morphisms[f].source, morphisms[g].target, composed.assignment().to_vec());
                if !index.contains_key(&key) {
                    if !options.close_under_composition {
                        return Err(FincatError::CompositionEscape { g, f });
                    }
                    add(morphisms[f].source, morphisms[g].target, composed, &mut morphisms, &mut maps, &mut index);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    let m = morphisms.len();
    let mut composites = Vec::new();
    for g in 0..m {
        for f in 0..m {
            if morphisms[f].target != morphisms[g].source {
                continue;
            }
            let composed = maps[g].compose(&maps[f]).expect("endpoints match");
            let key = (morphisms[f].source, morphisms[g].target, composed.assignment().to_vec());
            composites.push((g, f, index[&key]));
        }
    }

    let object_names = (0..n_obj).map(|o| format!("X{o}")).collect();
    let cat = FiniteCategory::new(object_names, morphisms, identities, &composites)?;
    let concrete = ConcreteStructure {
        sets,
        maps,
        object_relations,
        components,
    };
    Ok((cat, concrete))
}

/// A functor between explicitly tabulated categories.
#[derive(Debug, Clone)]
pub struct Functor {
    pub source: FiniteCategory,
    pub target: FiniteCategory,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl Functor {
    pub fn identity(cat: FiniteCategory) -> Self {
        let object_map = (0..cat.object_count()).collect();
        let morphism_map = (0..cat.morphism_count()).collect();
        Functor {
            source: cat.clone(),
            target: cat,
            object_map,
            morphism_map,
        }
    }

    pub fn apply_object(&self, o: usize) -> usize {
        self.object_map[o]
    }

    pub fn apply_morphism(&self, f: usize) -> usize {
        self.morphism_map[f]
    }
}

/// Check functor laws: endpoint preservation, identities, composition.
pub fn validate_functor(func: &Functor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let src = &func.source;
    let tgt = &func.target;

    if func.object_map.len() != src.object_count() || func.morphism_map.len() != src.morphism_count() {
        report.push("functor-shape", vec![], "object or morphism map has wrong length".into());
        return report;
    }

    for f in 0..src.morphism_count() {
        report.checks += 1;
        let ff = func.apply_morphism(f);
        if ff >= tgt.morphism_count() {
            report.push("functor-range", vec![f, ff], format!("image morphism {ff} out of range"));
            continue;
        }
        if tgt.source(ff) != func.apply_object(src.source(f))
            || tgt.target(ff) != func.apply_object(src.target(f))
        {
            report.push("functor-endpoints", vec![f, ff], format!("morphism {f} maps to {ff} with wrong endpoints"));
        }
    }

    for o in 0..src.object_count() {
        report.checks += 1;
        if func.apply_morphism(src.identity(o)) != tgt.identity(func.apply_object(o)) {
            report.push("functor-identity", vec![o], format!("identity of object {o} not preserved"));
        }
    }

    for g in 0..src.morphism_count() {
        for f in 0..src.morphism_count() {
            if let Some(gf) = src.compose(g, f) {
                report.checks += 1;
                let lhs = tgt.compose(func.apply_morphism(g), func.apply_morphism(f));
                if lhs != Some(func.apply_morphism(gf)) {
                    report.push(
                        "functor-composition",
                        vec![g, f, gf],
                        format!("F({g} ∘ {f}) ≠ F{g} ∘ F{f}"),
                    );
                }
            }
        }
    }

    report
}

/// Compose two functors (`second ∘ first`).
pub fn compose_functors(second: &Functor, first: &Functor) -> Functor {
    let object_map = first.object_map.iter().map(|&o| second.object_map[o]).collect();
    let morphism_map = first.morphism_map.iter().map(|&f| second.morphism_map[f]).collect();
    Functor {
        source: first.source.clone(),
        target: second.target.clone(),
        object_map,
        morphism_map,
    }
}

/// Fullness: every target morphism between image objects is hit.
pub fn is_full(func: &Functor) -> bool {
    full_witness(func).is_none()
}

/// A witness hom-set `(c, c′, g)` showing the functor is not full.
pub fn full_witness(func: &Functor) -> Option<(usize, usize, usize)> {
    for c1 in 0..func.source.object_count() {
        for c2 in 0..func.source.object_count() {
            let fc1 = func.apply_object(c1);
            let fc2 = func.apply_object(c2);
            for g in func.target.morphisms_between(fc1, fc2) {
                let hit = func
                    .source
                    .morphisms_between(c1, c2)
                    .iter()
                    .any(|&f| func.apply_morphism(f) == g);
                if !hit {
                    return Some((c1, c2, g));
                }
            }
        }
    }
    None
}

/// Essential surjectivity: every target object is isomorphic to an image.
pub fn is_essentially_surjective(func: &Functor) -> bool {
    (0..func.target.object_count()).all(|d| {
        (0..func.source.object_count()).any(|c| func.target.objects_isomorphic(func.apply_object(c), d))
    })
}
