//! Partial duality of maps and hypermaps, and the constructive one-face
//! partial dual.
//!
//! For a map with edge transpositions `c_1..c_m`, the partial dual with
//! respect to `S` is `(σ·c_S, α, c_S·φ)` where `c_S = ∏_{j∈S} c_j`. Dart
//! labels are preserved, so `∂_∅` is the identity and `∂_E` is geometric
//! duality.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::delta_matroid;
use crate::dessin::{CleanDessin, Dessin, DessinError};
use crate::perm::Perm;

/// A set of 1-based edge indices of a map.
pub type EdgeSubset = BTreeSet<usize>;

/// Product of the edge transpositions indexed by `s`.
pub(crate) fn edge_product(d: &CleanDessin, s: &EdgeSubset) -> Result<Perm, DessinError> {
    let n = d.n_darts();
    let m = d.edge_count();
    let mut images: Vec<usize> = (1..=n).collect();
    for &j in s {
        if j == 0 || j > m {
            return Err(DessinError::EdgeIndexOutOfRange { index: j, edges: m });
        }
        let (a, b) = d.edges()[j - 1];
        images.swap(a - 1, b - 1);
    }
    Ok(Perm::from_images_unchecked(images))
}

/// Partial dual `∂_j d = (σ c_j, α, c_j φ)` with respect to a single edge.
pub fn partial_dual_edge(d: &CleanDessin, j: usize) -> Result<CleanDessin, DessinError> {
    partial_dual_set(d, &EdgeSubset::from([j]))
}

/// Partial dual with respect to a set of edges. The transpositions are
/// disjoint, so the order of multiplication is immaterial.
pub fn partial_dual_set(d: &CleanDessin, s: &EdgeSubset) -> Result<CleanDessin, DessinError> {
    let c_s = edge_product(d, s)?;
    let sigma = d.sigma().compose(&c_s);
    let phi = c_s.compose(d.phi());
    Dessin::new(d.n_darts(), sigma, d.alpha().clone(), Some(phi))?.as_clean()
}

/// Hypermap partial dual with respect to the `k`-th α-cycle `c` (cycles
/// ordered by minimal element, fixed points included):
/// `∂_k d = (σc, c⁻¹α̂, cφ)` where `α̂` is α with the cycle `c` removed.
pub fn hypermap_partial_dual(d: &Dessin, k: usize) -> Result<Dessin, DessinError> {
    let structure = d.alpha().cycle_structure();
    let cycles = structure.cycles();
    let cycle = cycles
        .get(k.wrapping_sub(1))
        .ok_or(DessinError::CycleIndexOutOfRange {
            index: k,
            cycles: cycles.len(),
        })?;
    let n = d.n_darts();
    let c = Perm::from_cycles(n, &[cycle.clone()]).expect("cycle of a valid permutation");
    let alpha_hat = d.alpha().compose(&c.inverse());
    let sigma = d.sigma().compose(&c);
    let alpha = c.inverse().compose(&alpha_hat);
    let phi = c.compose(d.phi());
    Dessin::new(n, sigma, alpha, Some(phi))
}

/// Finds a partial dual with exactly one face.
///
/// A map that already has one face is its own witness, via the empty set.
/// Otherwise the feasible sets of the map's delta-matroid are scanned by
/// increasing cardinality, then lexicographically; the first feasible `F`
/// yields `S = E∖F`, and `∂_S d` is a one-face map.
pub fn one_face_partial_dual(d: &CleanDessin) -> (EdgeSubset, CleanDessin) {
    if d.face_count() == 1 {
        return (EdgeSubset::new(), d.clone());
    }
    let m = d.edge_count();
    for k in 0..=m {
        for combo in (1..=m).combinations(k) {
            let f: EdgeSubset = combo.into_iter().collect();
            if delta_matroid::is_feasible(d, &f) {
                let s: EdgeSubset = (1..=m).filter(|j| !f.contains(j)).collect();
                let result = partial_dual_set(d, &s).expect("indices are in range");
                debug_assert_eq!(result.face_count(), 1);
                return (s, result);
            }
        }
    }
    unreachable!("a map's delta-matroid is never empty")
}
