#![allow(dead_code)]

//! Helpers shared by the integration suites.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dessins::dessin::{CleanDessin, Dessin};
use dessins::enumerate::standard_involution;
use dessins::partial_dual::EdgeSubset;
use dessins::perm::{is_transitive, Perm};
use dessins::text::parse_permutation;

pub fn p(n: usize, s: &str) -> Perm {
    parse_permutation(s, n).unwrap()
}

pub fn dessin(n: usize, sigma: &str, alpha: &str) -> Dessin {
    Dessin::new(n, p(n, sigma), p(n, alpha), None).unwrap()
}

pub fn clean(n: usize, sigma: &str, alpha: &str) -> CleanDessin {
    dessin(n, sigma, alpha).as_clean().unwrap()
}

/// The digon: two vertices joined by two parallel edges, on the sphere.
pub fn digon() -> CleanDessin {
    dessin(4, "(1 4)(2 3)", "(1 2)(3 4)").as_clean().unwrap()
}

/// All subsets of `{1..m}`.
pub fn subsets(m: usize) -> Vec<EdgeSubset> {
    (0u32..(1 << m))
        .map(|mask| (1..=m).filter(|j| mask & (1 << (j - 1)) != 0).collect())
        .collect()
}

/// Deterministic random maps on `n` darts with the standard involution.
pub fn random_maps(n: usize, count: usize, seed: u64) -> Vec<CleanDessin> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = standard_involution(n);
    let mut out = Vec::with_capacity(count);
    let mut images: Vec<usize> = (1..=n).collect();
    while out.len() < count {
        images.shuffle(&mut rng);
        let sigma = Perm::from_images(images.clone()).unwrap();
        if !is_transitive(&[sigma.clone(), alpha.clone()], n) {
            continue;
        }
        let map = Dessin::new(n, sigma, alpha.clone(), None)
            .unwrap()
            .as_clean()
            .unwrap();
        out.push(map);
    }
    out
}

/// Deterministic random permutation of `{1..n}`.
pub fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Perm {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}
