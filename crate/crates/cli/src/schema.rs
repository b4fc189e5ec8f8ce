//! Versioned JSON model files and their conversions to core types.

use disjoint_kit::causal::{CausalCategoryOptions, CausalError, MorphismSpec};
use disjoint_kit::chiral::ChiralError;
use disjoint_kit::disjoint::{DisjointError, DisjointnessTable};
use disjoint_kit::fincat::{FiniteCategory, MorphismData};
use disjoint_kit::lattice::{ComponentAction, LatticeError, LatticePatch, Periodicity};
use disjoint_kit::relcore::{FiniteIndexedSet, RelError, Relation, RelationMap};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("unsupported format version {0:?} (expected \"1\")")]
    Version(String),
    #[error("file has kind {got}, expected {want}")]
    WrongKind { got: &'static str, want: &'static str },
    #[error("invalid patch: {0}")]
    Patch(#[from] LatticeError),
    #[error("invalid relation data: {0}")]
    Relation(#[from] RelError),
    #[error("invalid category data: {0}")]
    Category(#[from] disjoint_kit::fincat::FincatError),
    #[error("invalid disjointness data: {0}")]
    Disjointness(#[from] DisjointError),
    #[error("invalid causal data: {0}")]
    Causal(#[from] CausalError),
    #[error("invalid chiral data: {0}")]
    Chiral(#[from] ChiralError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelFile {
    Relation(RelationFile),
    Category(CategoryFile),
    Disjointness(DisjointnessFile),
    CausalPatch(PatchFile),
    ChiralPatch(PatchFile),
    Bundle(BundleFile),
    Suite(SuiteFile),
}

impl ModelFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelFile::Relation(_) => "relation",
            ModelFile::Category(_) => "category",
            ModelFile::Disjointness(_) => "disjointness",
            ModelFile::CausalPatch(_) => "causal_patch",
            ModelFile::ChiralPatch(_) => "chiral_patch",
            ModelFile::Bundle(_) => "bundle",
            ModelFile::Suite(_) => "suite",
        }
    }

    pub fn version(&self) -> &str {
        match self {
            ModelFile::Relation(f) => &f.version,
            ModelFile::Category(f) => &f.version,
            ModelFile::Disjointness(f) => &f.version,
            ModelFile::CausalPatch(f) => &f.version,
            ModelFile::ChiralPatch(f) => &f.version,
            ModelFile::Bundle(f) => &f.version,
            ModelFile::Suite(f) => &f.version,
        }
    }
}

pub fn load(path: &std::path::Path) -> Result<ModelFile, SchemaError> {
    let text = std::fs::read_to_string(path).map_err(|source| SchemaError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: ModelFile = serde_json::from_str(&text).map_err(|source| SchemaError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    if file.version() != FORMAT_VERSION {
        return Err(SchemaError::Version(file.version().to_string()));
    }
    Ok(file)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationFile {
    pub version: String,
    pub carrier: CarrierSchema,
    pub pairs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<usize>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CarrierSchema {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl CarrierSchema {
    pub fn to_core(&self) -> Result<FiniteIndexedSet, SchemaError> {
        match &self.labels {
            Some(labels) => {
                if labels.len() != self.size {
                    return Err(SchemaError::Invalid(format!(
                        "carrier size {} does not match {} labels",
                        self.size,
                        labels.len()
                    )));
                }
                Ok(FiniteIndexedSet::with_labels(labels.clone())?)
            }
            None => Ok(FiniteIndexedSet::new(self.size)),
        }
    }
}

impl RelationFile {
    pub fn to_core(&self) -> Result<(Relation, Option<disjoint_kit::relcore::NeighborhoodStructure>), SchemaError> {
        let carrier = self.carrier.to_core()?;
        let mut rel = Relation::empty(carrier.clone());
        for &(x, y) in &self.pairs {
            rel.insert(x, y)?;
        }
        let basis = match &self.basis {
            Some(b) => Some(disjoint_kit::relcore::NeighborhoodStructure::new(carrier, b.clone())?),
            None => None,
        };
        Ok((rel, basis))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryBody {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSchema>,
    pub identities: Vec<usize>,
    pub composition: Vec<(usize, usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concrete: Option<ConcreteSchema>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismSchema {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConcreteSchema {
    pub sets: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_relations: Option<Vec<Vec<(usize, usize)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryFile {
    pub version: String,
    #[serde(flatten)]
    pub body: CategoryBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DisjointnessFile {
    pub version: String,
    pub category: CategoryBody,
    pub related: Vec<(usize, usize)>,
}

impl CategoryBody {
    pub fn to_core(&self) -> Result<(FiniteCategory, Option<disjoint_kit::fincat::ConcreteStructure>), SchemaError> {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorphismData { source: m.source, target: m.target })
            .collect();
        let cat = FiniteCategory::new(
            self.objects.clone(),
            morphisms,
            self.identities.clone(),
            &self.composition,
        )?;
        let concrete = match &self.concrete {
            None => None,
            Some(c) => {
                let sets: Vec<FiniteIndexedSet> =
                    c.sets.iter().map(|&s| FiniteIndexedSet::new(s)).collect();
                if c.maps.len() != cat.morphism_count() {
                    return Err(SchemaError::Invalid(format!(
                        "{} concrete maps for {} morphisms",
                        c.maps.len(),
                        cat.morphism_count()
                    )));
                }
                let mut maps = Vec::with_capacity(c.maps.len());
                for (f, assignment) in c.maps.iter().enumerate() {
                    maps.push(RelationMap::new(
                        sets[cat.source(f)].clone(),
                        sets[cat.target(f)].clone(),
                        assignment.clone(),
                    )?);
                }
                let object_relations = match &c.object_relations {
                    None => None,
                    Some(rels) => {
                        let mut out = Vec::with_capacity(rels.len());
                        for (o, pairs) in rels.iter().enumerate() {
                            out.push(Relation::from_pairs(sets[o].size(), pairs)?);
                        }
                        Some(out)
                    }
                };
                Some(disjoint_kit::fincat::ConcreteStructure {
                    sets,
                    maps,
                    object_relations,
                    components: c.components.clone(),
                })
            }
        };
        Ok((cat, concrete))
    }
}

impl DisjointnessFile {
    pub fn to_core(
        &self,
    ) -> Result<(FiniteCategory, DisjointnessTable, Option<disjoint_kit::fincat::ConcreteStructure>), SchemaError> {
        let (cat, concrete) = self.category.to_core()?;
        let table = DisjointnessTable::new(&cat, self.related.iter().copied())?;
        Ok((cat, table, concrete))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatchFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<(i64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rect: Option<RectSchema>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic: Option<PeriodicSchema>,
    /// Per-component (orientation, time-orientation) flags.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_flags: Option<Vec<(bool, bool)>>,
    /// Optional extra patches and maps for building a category around the
    /// main patch.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub family: Vec<FamilyPatchSchema>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<ActionSchema>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RectSchema {
    pub u0: i64,
    pub u1: i64,
    pub v0: i64,
    pub v1: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicSchema {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyPatchSchema {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<(i64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rect: Option<RectSchema>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<(i64, i64)>,
}

/// A family morphism: per-component translation or reflection records.
/// Object index 0 is the main patch; family patches follow in order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionSchema {
    pub source: usize,
    pub target: usize,
    pub actions: Vec<ComponentActionSchema>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentActionSchema {
    #[serde(default)]
    pub reflect: bool,
    pub offset: (i64, i64),
}

fn build_patch(
    points: &Option<Vec<(i64, i64)>>,
    rect: &Option<RectSchema>,
    holes: &[(i64, i64)],
    periodic: &Option<PeriodicSchema>,
) -> Result<LatticePatch, SchemaError> {
    let mut pts: Vec<(i64, i64)> = match (points, rect) {
        (Some(p), None) => p.clone(),
        (None, Some(r)) => {
            let mut v = Vec::new();
            for u in r.u0..=r.u1 {
                for w in r.v0..=r.v1 {
                    v.push((u, w));
                }
            }
            v
        }
        (Some(p), Some(r)) => {
            let mut v = p.clone();
            for u in r.u0..=r.u1 {
                for w in r.v0..=r.v1 {
                    v.push((u, w));
                }
            }
            v.sort_unstable();
            v.dedup();
            v
        }
        (None, None) => {
            return Err(SchemaError::Invalid(
                "patch needs either \"points\" or \"rect\"".into(),
            ))
        }
    };
    pts.retain(|p| !holes.contains(p));
    let periodicity = match periodic {
        Some(p) => Periodicity { u: p.u, v: p.v },
        None => Periodicity::NONE,
    };
    Ok(LatticePatch::new(pts, periodicity)?)
}

impl PatchFile {
    pub fn to_patch(&self) -> Result<LatticePatch, SchemaError> {
        let mut patch = build_patch(&self.points, &self.rect, &self.holes, &self.periodic)?;
        if let Some(flags) = &self.component_flags {
            if flags.len() != patch.component_count() {
                return Err(SchemaError::Invalid(format!(
                    "{} component flags for {} components",
                    flags.len(),
                    patch.component_count()
                )));
            }
            for (c, &(orientation, time_orientation)) in flags.iter().enumerate() {
                patch.set_component_flags(c, orientation, time_orientation);
            }
        }
        Ok(patch)
    }

    /// The main patch together with its declared family, as a causal
    /// category (basis probes included).
    pub fn to_causal_category(&self) -> Result<disjoint_kit::causal::CausalCategory, SchemaError> {
        let main = self.to_patch()?;
        let mut family = vec![main];
        for f in &self.family {
            family.push(build_patch(&f.points, &f.rect, &f.holes, &None)?);
        }
        let generators = self
            .morphisms
            .iter()
            .map(|m| MorphismSpec {
                source: m.source,
                target: m.target,
                actions: m
                    .actions
                    .iter()
                    .map(|a| {
                        if a.reflect {
                            ComponentAction::reflection(a.offset)
                        } else {
                            ComponentAction::translation(a.offset)
                        }
                    })
                    .collect(),
            })
            .collect();
        Ok(disjoint_kit::causal::build_causal_category(
            family,
            generators,
            CausalCategoryOptions {
                add_basis_probes: true,
                max_morphisms: 600,
            },
        )?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleFile {
    pub version: String,
    pub chains: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteFile {
    pub version: String,
    pub members: Vec<SuiteMember>,
}

/// One suite-manifest entry: a named runner with its parameters and time
/// budget.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "runner", rename_all = "kebab-case")]
pub enum SuiteMember {
    AxiomComplement {
        name: String,
        seed: u64,
        samples: usize,
        max_seconds: u64,
    },
    SetwiseCharacterisation {
        name: String,
        seed: u64,
        instances: usize,
        max_seconds: u64,
    },
    RelationalCharacterisation {
        name: String,
        seed: u64,
        instances: usize,
        max_seconds: u64,
    },
    CausalTheorems {
        name: String,
        seed: u64,
        instances: usize,
        max_seconds: u64,
    },
    HierarchyStability {
        name: String,
        seed: u64,
        instances: usize,
        max_seconds: u64,
    },
    ChiralTheorems {
        name: String,
        seed: u64,
        instances: usize,
        max_seconds: u64,
    },
    OrientationReversal {
        name: String,
        seed: u64,
        instances: usize,
        max_seconds: u64,
    },
    FermionDemo {
        name: String,
        size: i64,
        max_seconds: u64,
    },
    Determinism {
        name: String,
    },
    VerifyAxiomsFile {
        name: String,
        path: String,
        expect_pass: bool,
    },
}

impl SuiteMember {
    pub fn name(&self) -> &str {
        match self {
            SuiteMember::AxiomComplement { name, .. }
            | SuiteMember::SetwiseCharacterisation { name, .. }
            | SuiteMember::RelationalCharacterisation { name, .. }
            | SuiteMember::CausalTheorems { name, .. }
            | SuiteMember::HierarchyStability { name, .. }
            | SuiteMember::ChiralTheorems { name, .. }
            | SuiteMember::OrientationReversal { name, .. }
            | SuiteMember::FermionDemo { name, .. }
            | SuiteMember::Determinism { name }
            | SuiteMember::VerifyAxiomsFile { name, .. } => name,
        }
    }
}
