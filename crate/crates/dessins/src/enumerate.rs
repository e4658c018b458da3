//! Exhaustive enumeration of clean dessins on a fixed number of darts, up
//! to isomorphism.
//!
//! Every map with `m` edges is isomorphic to one with
//! `α = (1 2)(3 4)⋯(n−1 n)`, and two such maps are isomorphic exactly when
//! their σ's are conjugate by an element of the centralizer of α (the
//! hyperoctahedral group of order `2^m·m!`). Scanning σ in lexicographic
//! image order and skipping everything in the centralizer orbit of an
//! already-emitted σ therefore yields each class once, represented by the
//! lexicographically minimal σ, in sorted order.

use std::collections::HashSet;

use itertools::Itertools;
use thiserror::Error;

use crate::dessin::{CleanDessin, Dessin};
use crate::perm::{is_transitive, Perm};

/// Dart bound for exhaustive enumeration.
pub const MAX_ENUMERATION_DARTS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("clean dessins need an even positive dart count, got {found}")]
    OddDartCount { found: usize },
    #[error("enumeration is bounded at {max} darts, got {found}", max = MAX_ENUMERATION_DARTS)]
    TooManyDarts { found: usize },
}

/// The fixed involution `(1 2)(3 4)⋯(n−1 n)`.
pub fn standard_involution(n: usize) -> Perm {
    let images = (1..=n)
        .map(|x| if x % 2 == 1 { x + 1 } else { x - 1 })
        .collect();
    Perm::from_images_unchecked(images)
}

/// The centralizer of the standard involution: block permutations combined
/// with within-block flips, `2^{n/2}·(n/2)!` elements.
pub fn involution_centralizer(n: usize) -> Vec<Perm> {
    let m = n / 2;
    let mut out = Vec::with_capacity((1 << m) * (1..=m).product::<usize>());
    for block_perm in (0..m).permutations(m) {
        for flips in 0u32..(1 << m) {
            let mut images = vec![0usize; n];
            for (i, &j) in block_perm.iter().enumerate() {
                let flip = flips & (1 << i) != 0;
                let (first, second) = if flip {
                    (2 * j + 2, 2 * j + 1)
                } else {
                    (2 * j + 1, 2 * j + 2)
                };
                images[2 * i] = first;
                images[2 * i + 1] = second;
            }
            out.push(Perm::from_images_unchecked(images));
        }
    }
    out
}

/// All clean dessins on `n` darts, pairwise non-isomorphic and complete,
/// sorted by the canonical form (lexicographically minimal σ image sequence
/// under the α-centralizer).
pub fn enumerate_clean_dessins(n: usize) -> Result<Vec<CleanDessin>, EnumerateError> {
    if n == 0 || n % 2 != 0 {
        return Err(EnumerateError::OddDartCount { found: n });
    }
    if n > MAX_ENUMERATION_DARTS {
        return Err(EnumerateError::TooManyDarts { found: n });
    }
    let alpha = standard_involution(n);
    let centralizer = involution_centralizer(n);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for images in (1..=n).permutations(n) {
        if seen.contains(&pack(&images)) {
            continue;
        }
        let sigma = Perm::from_images_unchecked(images);
        if !is_transitive(&[sigma.clone(), alpha.clone()], n) {
            continue;
        }
        for g in &centralizer {
            seen.insert(pack(sigma.conjugate(g).images()));
        }
        let dessin = Dessin::new(n, sigma, alpha.clone(), None)
            .expect("transitive pair with fixed involution is a valid map");
        out.push(dessin.as_clean().expect("alpha is the standard involution"));
    }
    Ok(out)
}

/// Packs an image sequence into a `u64`, 4 bits per dart (degree ≤ 16).
fn pack(images: &[usize]) -> u64 {
    images
        .iter()
        .fold(0u64, |acc, &v| (acc << 4) | (v as u64 - 1))
}
