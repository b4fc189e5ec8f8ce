//! Finite patches of the 2D integer lightcone lattice and the maps between
//! them.
//!
//! Points carry lightcone coordinates `(u, v)`; a unit step raises one
//! coordinate by one. Patches may be periodic along either axis (cylinder
//! quotients). Morphisms act per connected component as a translation or a
//! point reflection, the discrete stand-ins for local isometries and
//! time-orientation reversal.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("periodic modulus {0} is too small (must be at least 2)")]
    ModulusTooSmall(i64),
    #[error("image point {0:?} of source point {1:?} is outside the target patch")]
    ImageOutside((i64, i64), (i64, i64)),
    #[error("action for component {component} is not well-defined modulo the target periodicity")]
    ActionNotPeriodic { component: usize },
    #[error("expected {want} component actions, got {got}")]
    ActionCount { want: usize, got: usize },
    #[error("components {0} and {1} have disjoint images that touch in the target")]
    ComponentsCollide(usize, usize),
    #[error("point {0:?} appears twice after periodic reduction")]
    DuplicatePoint((i64, i64)),
    #[error("morphism endpoints do not match for composition")]
    ComposeMismatch,
}

/// A coordinate pair `(u, v)` on the lightcone lattice.
pub type Coord = (i64, i64);

/// Optional periodic modulus per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Periodicity {
    pub u: Option<i64>,
    pub v: Option<i64>,
}

impl Periodicity {
    pub const NONE: Periodicity = Periodicity { u: None, v: None };

    pub fn reduce(&self, p: Coord) -> Coord {
        let u = match self.u {
            Some(m) => p.0.rem_euclid(m),
            None => p.0,
        };
        let v = match self.v {
            Some(m) => p.1.rem_euclid(m),
            None => p.1,
        };
        (u, v)
    }
}

/// A finite set of lattice points with optional periodic identifications,
/// partitioned into step-connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePatch {
    points: Vec<Coord>,
    index: HashMap<Coord, usize>,
    periodicity: Periodicity,
    component_of: Vec<usize>,
    component_count: usize,
    orientation: Vec<bool>,
    time_orientation: Vec<bool>,
}

impl LatticePatch {
    pub fn new(points: impl IntoIterator<Item = Coord>, periodicity: Periodicity) -> Result<Self, LatticeError> {
        for m in [periodicity.u, periodicity.v].into_iter().flatten() {
            if m < 2 {
                return Err(LatticeError::ModulusTooSmall(m));
            }
        }
        let mut reduced: Vec<Coord> = points.into_iter().map(|p| periodicity.reduce(p)).collect();
        reduced.sort_unstable();
        for w in reduced.windows(2) {
            if w[0] == w[1] {
                return Err(LatticeError::DuplicatePoint(w[0]));
            }
        }
        let index: HashMap<Coord, usize> = reduced.iter().copied().enumerate().map(|(i, p)| (p, i)).collect();

        // components by union-find over unit steps
        let n = reduced.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (i, &p) in reduced.iter().enumerate() {
            for step in [(1, 0), (0, 1)] {
                let q = periodicity.reduce((p.0 + step.0, p.1 + step.1));
                if let Some(&j) = index.get(&q) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut component_of = vec![usize::MAX; n];
        let mut component_count = 0;
        for i in 0..n {
            let root = find(&mut parent, i);
            if component_of[root] == usize::MAX {
                component_of[root] = component_count;
                component_count += 1;
            }
            component_of[i] = component_of[root];
        }

        Ok(LatticePatch {
            points: reduced,
            index,
            periodicity,
            component_of,
            component_count,
            orientation: vec![true; component_count],
            time_orientation: vec![true; component_count],
        })
    }

    /// Rectangle `[u0, u1] × [v0, v1]`, inclusive.
    pub fn rect(u0: i64, u1: i64, v0: i64, v1: i64) -> Self {
        let mut pts = Vec::new();
        for u in u0..=u1 {
            for v in v0..=v1 {
                pts.push((u, v));
            }
        }
        LatticePatch::new(pts, Periodicity::NONE).expect("rectangle is duplicate-free")
    }

    /// Rectangle with the listed points removed.
    pub fn punctured_rect(u0: i64, u1: i64, v0: i64, v1: i64, holes: &[Coord]) -> Self {
        let mut pts = Vec::new();
        for u in u0..=u1 {
            for v in v0..=v1 {
                if !holes.contains(&(u, v)) {
                    pts.push((u, v));
                }
            }
        }
        LatticePatch::new(pts, Periodicity::NONE).expect("rectangle is duplicate-free")
    }

    /// Cylinder: a full fundamental domain, periodic along the given axes.
    pub fn cylinder(u_extent: i64, v_extent: i64, periodic_u: bool, periodic_v: bool) -> Result<Self, LatticeError> {
        let mut pts = Vec::new();
        for u in 0..u_extent {
            for v in 0..v_extent {
                pts.push((u, v));
            }
        }
        LatticePatch::new(
            pts,
            Periodicity {
                u: periodic_u.then_some(u_extent),
                v: periodic_v.then_some(v_extent),
            },
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Coord] {
        &self.points
    }

    pub fn coord(&self, i: usize) -> Coord {
        self.points[i]
    }

    pub fn index_of(&self, p: Coord) -> Option<usize> {
        self.index.get(&self.periodicity.reduce(p)).copied()
    }

    pub fn contains(&self, p: Coord) -> bool {
        self.index_of(p).is_some()
    }

    pub fn periodicity(&self) -> Periodicity {
        self.periodicity
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component_of[i]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn orientation_flag(&self, component: usize) -> bool {
        self.orientation[component]
    }

    pub fn time_orientation_flag(&self, component: usize) -> bool {
        self.time_orientation[component]
    }

    pub fn set_component_flags(&mut self, component: usize, orientation: bool, time_orientation: bool) {
        self.orientation[component] = orientation;
        self.time_orientation[component] = time_orientation;
    }

    /// Sub-patch on a subset of points, inheriting periodicity.
    pub fn sub_patch(&self, point_indices: &[usize]) -> LatticePatch {
        let mut pts: Vec<Coord> = point_indices.iter().map(|&i| self.points[i]).collect();
        pts.sort_unstable();
        pts.dedup();
        LatticePatch::new(pts, self.periodicity).expect("subset of valid patch")
    }

    /// Are `p` and `q` one unit step apart (in either direction)?
    pub fn adjacent(&self, p: Coord, q: Coord) -> bool {
        for step in [(1i64, 0i64), (0, 1), (-1, 0), (0, -1)] {
            if self.periodicity.reduce((p.0 + step.0, p.1 + step.1)) == self.periodicity.reduce(q) {
                return true;
            }
        }
        false
    }
}

/// Per-component action of a patch morphism: `p ↦ offset + p` or, with
/// `reflect`, `p ↦ offset − p` (total reflection, reversing time-orientation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentAction {
    pub reflect: bool,
    pub offset: Coord,
}

impl ComponentAction {
    pub fn translation(offset: Coord) -> Self {
        ComponentAction { reflect: false, offset }
    }

    pub fn reflection(offset: Coord) -> Self {
        ComponentAction { reflect: true, offset }
    }

    pub const IDENTITY: ComponentAction = ComponentAction { reflect: false, offset: (0, 0) };

    pub fn apply(&self, p: Coord) -> Coord {
        if self.reflect {
            (self.offset.0 - p.0, self.offset.1 - p.1)
        } else {
            (self.offset.0 + p.0, self.offset.1 + p.1)
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ComponentAction) -> ComponentAction {
        let offset = self.apply(other.offset);
        ComponentAction {
            reflect: self.reflect ^ other.reflect,
            offset,
        }
    }
}

/// A structure-preserving map between patches: per-component translations or
/// reflections whose images lie in the target.
///
/// Two validity conditions beyond image containment: the action must be
/// well-defined modulo the source periodicity (so quotient points have a
/// single image), and disjoint images of distinct components must not touch
/// (a separation visible at lattice scale, standing in for the disjointness
/// of open images of an embedding's components).
#[derive(Debug, Clone)]
pub struct PatchMorphism {
    pub source: LatticePatch,
    pub target: LatticePatch,
    pub actions: Vec<ComponentAction>,
    point_map: Vec<usize>,
    reverses: Vec<bool>,
}

impl PatchMorphism {
    pub fn new(
        source: LatticePatch,
        target: LatticePatch,
        actions: Vec<ComponentAction>,
    ) -> Result<Self, LatticeError> {
        if actions.len() != source.component_count() {
            return Err(LatticeError::ActionCount {
                want: source.component_count(),
                got: actions.len(),
            });
        }

        // well-defined modulo source periodicity: shifting a source point by
        // a source modulus must not move its image
        for (c, action) in actions.iter().enumerate() {
            let mut shifts = vec![];
            if let Some(m) = source.periodicity().u {
                shifts.push((m, 0));
            }
            if let Some(m) = source.periodicity().v {
                shifts.push((0, m));
            }
            for s in shifts {
                // representative point of the component, if any
                if let Some(i) = (0..source.len()).find(|&i| source.component_of(i) == c) {
                    let p = source.coord(i);
                    let a = target.periodicity().reduce(action.apply(p));
                    let b = target
                        .periodicity()
                        .reduce(action.apply((p.0 + s.0, p.1 + s.1)));
                    if a != b {
                        return Err(LatticeError::ActionNotPeriodic { component: c });
                    }
                }
            }
        }

        let mut point_map = Vec::with_capacity(source.len());
        for i in 0..source.len() {
            let p = source.coord(i);
            let image = actions[source.component_of(i)].apply(p);
            match target.index_of(image) {
                Some(j) => point_map.push(j),
                None => return Err(LatticeError::ImageOutside(image, p)),
            }
        }

        // separation of disjoint component images
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
                        return Err(LatticeError::ComponentsCollide(c1, c2));
                    }
                }
            }
        }

        let reverses = actions.iter().map(|a| a.reflect).collect();
        Ok(PatchMorphism {
            source,
            target,
            actions,
            point_map,
            reverses,
        })
    }

    pub fn identity(patch: LatticePatch) -> Self {
        let actions = vec![ComponentAction::IDENTITY; patch.component_count()];
        PatchMorphism::new(patch.clone(), patch, actions).expect("identity is always valid")
    }

    /// Inclusion of a sub-patch (identity action on every component).
    pub fn inclusion(sub: LatticePatch, ambient: LatticePatch) -> Result<Self, LatticeError> {
        let actions = vec![ComponentAction::IDENTITY; sub.component_count()];
        PatchMorphism::new(sub, ambient, actions)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.point_map[i]
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn image_points(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.point_map.clone();
        img.sort_unstable();
        img.dedup();
        img
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

    /// Does the morphism reverse time-orientation on the given component?
    pub fn reverses_on(&self, component: usize) -> bool {
        self.reverses[component]
    }

    /// `self ∘ inner` (apply `inner` first). The composite action on a source
    /// component is the affine composition through the component its image
    /// lands in.
    pub fn compose(&self, inner: &PatchMorphism) -> Result<PatchMorphism, LatticeError> {
        if inner.target != self.source {
            return Err(LatticeError::ComposeMismatch);
        }
        let mut actions = Vec::with_capacity(inner.source.component_count());
        for c in 0..inner.source.component_count() {
            let mid_component = (0..inner.source.len())
                .find(|&i| inner.source.component_of(i) == c)
                .map(|i| self.source.component_of(inner.apply(i)));
            let composed = match mid_component {
                Some(mid) => self.actions[mid].compose(&inner.actions[c]),
                // empty component cannot occur: components are nonempty
                None => inner.actions[c],
            };
            actions.push(composed);
        }
        PatchMorphism::new(inner.source.clone(), self.target.clone(), actions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_points_and_components() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        assert_eq!(p.len(), 9);
        assert_eq!(p.component_count(), 1);
    }

    #[test]
    fn punctured_line_splits_into_two_components() {
        let p = LatticePatch::new((-2..=2).filter(|&v| v != 0).map(|v| (0, v)), Periodicity::NONE).unwrap();
        assert_eq!(p.component_count(), 2);
    }

    #[test]
    fn cylinder_reduces_coordinates() {
        let p = LatticePatch::cylinder(3, 2, true, false).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.index_of((4, 0)), p.index_of((1, 0)));
        assert_eq!(p.component_count(), 1);
    }

    #[test]
    fn small_modulus_rejected() {
        let err = LatticePatch::new([(0, 0)], Periodicity { u: Some(1), v: None }).unwrap_err();
        assert_eq!(err, LatticeError::ModulusTooSmall(1));
    }

    #[test]
    fn translation_morphism_maps_points() {
        let small = LatticePatch::rect(0, 1, 0, 1);
        let big = LatticePatch::rect(0, 3, 0, 3);
        let f = PatchMorphism::new(small.clone(), big.clone(), vec![ComponentAction::translation((1, 2))]).unwrap();
        assert!(f.is_injective());
        let i = small.index_of((1, 1)).unwrap();
        assert_eq!(big.coord(f.apply(i)), (2, 3));
    }

    #[test]
    fn image_outside_rejected() {
        let small = LatticePatch::rect(0, 1, 0, 1);
        let big = LatticePatch::rect(0, 2, 0, 2);
        let err = PatchMorphism::new(small, big, vec![ComponentAction::translation((2, 0))]).unwrap_err();
        assert!(matches!(err, LatticeError::ImageOutside(..)));
    }

    #[test]
    fn reflection_composes_to_translation() {
        let r1 = ComponentAction::reflection((0, 0));
        let r2 = ComponentAction::reflection((2, 2));
        let t = r2.compose(&r1);
        assert!(!t.reflect);
        assert_eq!(t.apply((1, 1)), (3, 3));
    }

    #[test]
    fn reflection_morphism_reverses() {
        let p = LatticePatch::rect(0, 2, 0, 2);
        let f = PatchMorphism::new(p.clone(), p, vec![ComponentAction::reflection((2, 2))]).unwrap();
        assert!(f.reverses_on(0));
        assert!(f.is_injective());
    }

    #[test]
    fn covering_map_onto_cylinder() {
        let line = LatticePatch::new((0..6).map(|v| (0, v)), Periodicity::NONE).unwrap();
        let cyl = LatticePatch::cylinder(1, 3, false, true).unwrap();
        let f = PatchMorphism::new(line, cyl, vec![ComponentAction::IDENTITY]).unwrap();
        assert!(!f.is_injective());
    }

    #[test]
    fn adjacent_disjoint_component_images_rejected() {
        let two = LatticePatch::new([(0, 0), (0, 5)], Periodicity::NONE).unwrap();
        assert_eq!(two.component_count(), 2);
        let row = LatticePatch::new((0..4).map(|v| (0, v)), Periodicity::NONE).unwrap();
        // map the far component next to the near one
        let actions = vec![
            ComponentAction::IDENTITY,
            ComponentAction::translation((0, -4)),
        ];
        let err = PatchMorphism::new(two.clone(), row.clone(), actions).unwrap_err();
        assert!(matches!(err, LatticeError::ComponentsCollide(..)));
        // overlapping images are allowed
        let overlap = vec![ComponentAction::IDENTITY, ComponentAction::translation((0, -5))];
        assert!(PatchMorphism::new(two.clone(), row.clone(), overlap).is_ok());
        // separated images are allowed
        let apart = vec![ComponentAction::IDENTITY, ComponentAction::translation((0, -3))];
        assert!(PatchMorphism::new(two, row, apart).is_ok());
    }

    #[test]
    fn composition_tracks_actions_and_points() {
        let a = LatticePatch::rect(0, 1, 0, 1);
        let b = LatticePatch::rect(0, 2, 0, 2);
        let c = LatticePatch::rect(0, 4, 0, 4);
        let f = PatchMorphism::new(a.clone(), b.clone(), vec![ComponentAction::translation((1, 0))]).unwrap();
        let g = PatchMorphism::new(b, c.clone(), vec![ComponentAction::reflection((3, 3))]).unwrap();
        let gf = g.compose(&f).unwrap();
        for i in 0..a.len() {
            assert_eq!(gf.apply(i), g.apply(f.apply(i)));
        }
        assert!(gf.reverses_on(0));
    }

    #[test]
    fn periodicity_well_definedness_enforced() {
        let cyl = LatticePatch::cylinder(1, 4, false, true).unwrap();
        let big = LatticePatch::rect(0, 0, 0, 7);
        // a map out of a cylinder into a non-periodic row cannot be well-defined
        let err = PatchMorphism::new(cyl.clone(), big, vec![ComponentAction::IDENTITY]).unwrap_err();
        assert!(matches!(err, LatticeError::ActionNotPeriodic { .. }));
        // but into a cylinder with the same modulus it is
        let same = PatchMorphism::new(cyl.clone(), cyl, vec![ComponentAction::translation((0, 1))]);
        assert!(same.is_ok());
    }
}
