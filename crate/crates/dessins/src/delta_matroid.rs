//! Delta-matroids: the symmetric exchange axiom, the delta-matroid of a map
//! by two independent algorithms, twists and duals, the matroid test, and
//! isomorphism of small delta-matroids.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::dessin::CleanDessin;
use crate::partial_dual::{edge_product, EdgeSubset};

/// Edge bound for the `2^m` feasibility scans.
pub const MAX_SCAN_EDGES: usize = 20;

/// Ground-size bound for the isomorphism backtracker.
pub const MAX_ISO_GROUND: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaMatroidError {
    #[error("feasible family must be nonempty")]
    EmptyFamily,
    #[error("element {element} out of ground range 1..={ground}")]
    ElementOutOfRange { element: usize, ground: usize },
    #[error("family violates the symmetric exchange axiom")]
    AxiomViolated,
    #[error("map has {found} edges; feasibility scans are bounded at {max}", max = MAX_SCAN_EDGES)]
    TooManyEdges { found: usize },
    #[error("ground size {found} exceeds the isomorphism bound {max}", max = MAX_ISO_GROUND)]
    GroundTooLarge { found: usize },
}

/// A delta-matroid: a ground set `{1..m}` and a nonempty family of feasible
/// subsets satisfying the symmetric exchange axiom.
#[derive(Clone, PartialEq, Eq)]
pub struct DeltaMatroid {
    ground: usize,
    feasible: BTreeSet<EdgeSubset>,
}

impl DeltaMatroid {
    /// Validates range, nonemptiness and the symmetric exchange axiom.
    pub fn new(
        ground: usize,
        feasible: impl IntoIterator<Item = EdgeSubset>,
    ) -> Result<DeltaMatroid, DeltaMatroidError> {
        let feasible: BTreeSet<EdgeSubset> = feasible.into_iter().collect();
        let family: Vec<EdgeSubset> = feasible.iter().cloned().collect();
        if !check_symmetric_axiom(ground, &family)? {
            return Err(DeltaMatroidError::AxiomViolated);
        }
        Ok(DeltaMatroid { ground, feasible })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn feasible_sets(&self) -> impl Iterator<Item = &EdgeSubset> {
        self.feasible.iter()
    }

    pub fn feasible_count(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_feasible_set(&self, f: &EdgeSubset) -> bool {
        self.feasible.contains(f)
    }

    /// Feasible sets ordered by cardinality, then lexicographically.
    pub fn sorted_feasible(&self) -> Vec<EdgeSubset> {
        let mut sets: Vec<EdgeSubset> = self.feasible.iter().cloned().collect();
        sets.sort_by_key(|f| (f.len(), f.iter().copied().collect::<Vec<_>>()));
        sets
    }

    /// The twist `Δ*S`: replaces each feasible `F` by `F △ S`. An involution.
    pub fn twist(&self, s: &EdgeSubset) -> Result<DeltaMatroid, DeltaMatroidError> {
        for &x in s {
            if x == 0 || x > self.ground {
                return Err(DeltaMatroidError::ElementOutOfRange {
                    element: x,
                    ground: self.ground,
                });
            }
        }
        let twisted = self
            .feasible
            .iter()
            .map(|f| f.symmetric_difference(s).copied().collect());
        DeltaMatroid::new(self.ground, twisted)
    }

    /// The dual delta-matroid: the twist by the full ground set, i.e. the
    /// family of complements.
    pub fn dual(&self) -> DeltaMatroid {
        let full: EdgeSubset = (1..=self.ground).collect();
        self.twist(&full).expect("full ground set is in range")
    }

    /// True iff the feasible sets are the bases of a matroid: equicardinal
    /// and closed under the basis exchange axiom.
    pub fn is_matroid(&self) -> bool {
        let mut sizes = self.feasible.iter().map(|f| f.len());
        let first = sizes.next().expect("family is nonempty");
        if sizes.any(|s| s != first) {
            return false;
        }
        for b1 in &self.feasible {
            for b2 in &self.feasible {
                for &x in b1.difference(b2) {
                    let found = b2.difference(b1).any(|&y| {
                        let mut candidate = b1.clone();
                        candidate.remove(&x);
                        candidate.insert(y);
                        self.feasible.contains(&candidate)
                    });
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// JSON export: `{"ground": m, "feasible": [[..], ..]}` with feasible
    /// sets sorted by size then lexicographically.
    pub fn to_json(&self) -> Value {
        let feasible: Vec<Value> = self
            .sorted_feasible()
            .into_iter()
            .map(|f| Value::from(f.into_iter().collect::<Vec<_>>()))
            .collect();
        json!({ "ground": self.ground, "feasible": feasible })
    }
}

impl fmt::Display for DeltaMatroid {
    /// Family notation: `{{1}, {2}}`, with each set as `{..}` and the empty
    /// set as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, set) in self.sorted_feasible().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (k, x) in set.into_iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeltaMatroid(ground={}, {})", self.ground, self)
    }
}

/// Exhaustive check of the symmetric exchange axiom: for all feasible
/// `F1, F2` and `x ∈ F1 △ F2` there is `y ∈ F1 △ F2` (possibly `y = x`)
/// with `F1 △ {x,y}` feasible.
pub fn check_symmetric_axiom(
    ground: usize,
    family: &[EdgeSubset],
) -> Result<bool, DeltaMatroidError> {
    if family.is_empty() {
        return Err(DeltaMatroidError::EmptyFamily);
    }
    for f in family {
        for &x in f {
            if x == 0 || x > ground {
                return Err(DeltaMatroidError::ElementOutOfRange {
                    element: x,
                    ground,
                });
            }
        }
    }
    let members: BTreeSet<&EdgeSubset> = family.iter().collect();
    for f1 in family {
        for f2 in family {
            let diff: Vec<usize> = f1.symmetric_difference(f2).copied().collect();
            for &x in &diff {
                let ok = diff.iter().any(|&y| {
                    let mut candidate = f1.clone();
                    toggle(&mut candidate, x);
                    if y != x {
                        toggle(&mut candidate, y);
                    }
                    members.contains(&candidate)
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn toggle(set: &mut EdgeSubset, x: usize) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

/// Feasibility of `F` for the map `d`: the partial dual with respect to the
/// complement of `F` has exactly one face, i.e. `c((∏_{j∉F} c_j)·φ) = 1`.
pub(crate) fn is_feasible(d: &CleanDessin, f: &EdgeSubset) -> bool {
    let m = d.edge_count();
    let complement: EdgeSubset = (1..=m).filter(|j| !f.contains(j)).collect();
    let c_s = edge_product(d, &complement).expect("indices in range");
    c_s.compose(d.phi()).cycle_structure().count() == 1
}

/// The delta-matroid of a map: `F ⊆ E` is feasible iff `∂_{E∖F} d` is a
/// one-face map, scanning all `2^m` subsets.
pub fn delta_matroid_of_map(d: &CleanDessin) -> Result<DeltaMatroid, DeltaMatroidError> {
    let m = d.edge_count();
    if m > MAX_SCAN_EDGES {
        return Err(DeltaMatroidError::TooManyEdges { found: m });
    }
    let mut family = Vec::new();
    for mask in 0u32..(1 << m) {
        let f: EdgeSubset = (1..=m).filter(|j| mask & (1 << (j - 1)) != 0).collect();
        if is_feasible(d, &f) {
            family.push(f);
        }
    }
    DeltaMatroid::new(m, family)
}

/// Independent oracle for the same delta-matroid: `F` is feasible iff the
/// sub-map spanned by the edges of `F` touches every vertex, is connected,
/// and traces exactly one boundary cycle (`c(σ_F·α_F) = 1`). The empty
/// restriction counts as one face, so `∅` is feasible exactly for one-vertex
/// maps.
pub fn quasi_tree_oracle(d: &CleanDessin) -> Result<DeltaMatroid, DeltaMatroidError> {
    let m = d.edge_count();
    if m > MAX_SCAN_EDGES {
        return Err(DeltaMatroidError::TooManyEdges { found: m });
    }
    let mut family = Vec::new();
    for mask in 0u32..(1 << m) {
        let f: EdgeSubset = (1..=m).filter(|j| mask & (1 << (j - 1)) != 0).collect();
        if restriction_is_quasi_tree(d, &f) {
            family.push(f);
        }
    }
    DeltaMatroid::new(m, family)
}

fn restriction_is_quasi_tree(d: &CleanDessin, f: &EdgeSubset) -> bool {
    let n = d.n_darts();
    if f.is_empty() {
        return d.black_vertex_count() == 1;
    }
    let mut in_restriction = vec![false; n + 1];
    for &j in f {
        let (a, b) = d.edges()[j - 1];
        in_restriction[a] = true;
        in_restriction[b] = true;
    }
    // every sigma-cycle must carry a dart of the restriction
    for cycle in d.sigma().cycle_structure().cycles() {
        if !cycle.iter().any(|&x| in_restriction[x]) {
            return false;
        }
    }
    // sigma restricted to the sub-map: skip deleted darts in cyclic order
    let mut sigma_f = vec![0usize; n + 1];
    for x in 1..=n {
        if !in_restriction[x] {
            continue;
        }
        let mut y = d.sigma().apply(x);
        while !in_restriction[y] {
            y = d.sigma().apply(y);
        }
        sigma_f[x] = y;
    }
    let alpha = d.alpha();
    let darts: Vec<usize> = (1..=n).filter(|&x| in_restriction[x]).collect();
    // connectivity of the restriction under sigma_F and alpha
    let mut seen = vec![false; n + 1];
    let mut stack = vec![darts[0]];
    seen[darts[0]] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for y in [sigma_f[x], alpha.apply(x)] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    if reached != darts.len() {
        return false;
    }
    // exactly one boundary cycle: c(sigma_F · alpha_F) = 1
    let mut visited = vec![false; n + 1];
    let mut cycles = 0;
    for &start in &darts {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        loop {
            visited[x] = true;
            x = alpha.apply(sigma_f[x]);
            if x == start {
                break;
            }
        }
    }
    cycles == 1
}

/// Delta-matroid isomorphism: a ground-set bijection preserving feasible
/// sets, found by backtracking with per-element feasible-membership-count
/// pruning.
pub fn delta_isomorphic(a: &DeltaMatroid, b: &DeltaMatroid) -> Result<bool, DeltaMatroidError> {
    let m = a.ground_size();
    if m > MAX_ISO_GROUND || b.ground_size() > MAX_ISO_GROUND {
        return Err(DeltaMatroidError::GroundTooLarge {
            found: m.max(b.ground_size()),
        });
    }
    if m != b.ground_size() || a.feasible_count() != b.feasible_count() {
        return Ok(false);
    }
    let mut sizes_a: Vec<usize> = a.feasible_sets().map(|f| f.len()).collect();
    let mut sizes_b: Vec<usize> = b.feasible_sets().map(|f| f.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Ok(false);
    }
    let masks_a: Vec<u32> = a.feasible_sets().map(to_mask).collect();
    let masks_b: BTreeSet<u32> = b.feasible_sets().map(to_mask).collect();
    // signature of an element: how many feasible sets of each size contain it
    let signature = |delta: &DeltaMatroid, x: usize| -> Vec<usize> {
        let mut counts = vec![0usize; m + 1];
        for f in delta.feasible_sets() {
            if f.contains(&x) {
                counts[f.len()] += 1;
            }
        }
        counts
    };
    let sig_a: Vec<Vec<usize>> = (1..=m).map(|x| signature(a, x)).collect();
    let sig_b: Vec<Vec<usize>> = (1..=m).map(|x| signature(b, x)).collect();
    let mut image = vec![0usize; m + 1];
    let mut used = vec![false; m + 1];
    Ok(assign(
        1,
        m,
        &mut image,
        &mut used,
        &sig_a,
        &sig_b,
        &masks_a,
        &masks_b,
    ))
}

fn to_mask(f: &EdgeSubset) -> u32 {
    f.iter().fold(0u32, |acc, &x| acc | 1 << (x - 1))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    x: usize,
    m: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    sig_a: &[Vec<usize>],
    sig_b: &[Vec<usize>],
    masks_a: &[u32],
    masks_b: &BTreeSet<u32>,
) -> bool {
    if x > m {
        return masks_a.iter().all(|&fa| {
            let mut fb = 0u32;
            for j in 1..=m {
                if fa & (1 << (j - 1)) != 0 {
                    fb |= 1 << (image[j] - 1);
                }
            }
            masks_b.contains(&fb)
        });
    }
    for y in 1..=m {
        if used[y] || sig_a[x - 1] != sig_b[y - 1] {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if assign(x + 1, m, image, used, sig_a, sig_b, masks_a, masks_b) {
            return true;
        }
        used[y] = false;
        image[x] = 0;
    }
    false
}

/// True iff the delta-matroid is isomorphic to its dual.
pub fn delta_self_dual(delta: &DeltaMatroid) -> Result<bool, DeltaMatroidError> {
    delta_isomorphic(delta, &delta.dual())
}
