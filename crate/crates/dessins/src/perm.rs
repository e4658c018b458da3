//! Permutations on the dart set `{1..n}` and the group-theoretic primitives
//! built on them: orbits, transitivity, exact group order via a stabilizer
//! chain, abelianness and simultaneous conjugacy of generator pairs.
//!
//! Products are taken left to right throughout: `x^(pq) = (x^p)^q`, so
//! `compose(p, q)` applies `p` first. Darts are 1-indexed.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Degree bound above which `group_order` refuses to compute.
pub const MAX_ORDER_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images of length {len} are not a bijection of {{1..{len}}}: {reason}")]
    InvalidImages { len: usize, reason: String },
    #[error("dart label {label} out of range 1..={degree}")]
    LabelOutOfRange { label: usize, degree: usize },
    #[error("dart label {label} appears twice in cycle notation")]
    DuplicateLabel { label: usize },
    #[error("degree {found} exceeds the exact order bound {max}", max = MAX_ORDER_DEGREE)]
    DegreeTooLarge { found: usize },
    #[error("generator pair does not act transitively")]
    NotTransitive,
}

/// A permutation of `{1..n}`, stored as the image sequence.
///
/// `images[i]` is the image of dart `i + 1`; all values lie in `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// The identity on `{1..n}`.
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its 1-indexed image sequence.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(PermError::InvalidImages {
                    len: n,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(PermError::InvalidImages {
                    len: n,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles.
    ///
    /// Omitted labels are fixed points. Labels must be in range and pairwise
    /// distinct across all cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm, PermError> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n + 1];
        for cycle in cycles {
            for (i, &label) in cycle.iter().enumerate() {
                if label == 0 || label > n {
                    return Err(PermError::LabelOutOfRange { label, degree: n });
                }
                if seen[label] {
                    return Err(PermError::DuplicateLabel { label });
                }
                seen[label] = true;
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 || next > n {
                    return Err(PermError::LabelOutOfRange {
                        label: next,
                        degree: n,
                    });
                }
                images[label - 1] = next;
            }
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of dart `x` (1-indexed).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Left-to-right product: the result maps `x` to `q(p(x))`.
    ///
    /// Panics if the degrees differ.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in permutation product"
        );
        let images = self.images.iter().map(|&v| other.apply(v)).collect();
        Perm::from_images_unchecked(images)
    }

    pub fn inverse(&self) -> Perm {
        let n = self.degree();
        let mut images = vec![0; n];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Perm::from_images_unchecked(images)
    }

    /// Conjugate `g⁻¹ · self · g`, i.e. `self` with darts relabelled by `g`.
    ///
    /// Panics if the degrees differ.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            g.degree(),
            "degree mismatch in conjugation"
        );
        let n = self.degree();
        let mut images = vec![0; n];
        for x in 1..=n {
            images[g.apply(x) - 1] = g.apply(self.apply(x));
        }
        Perm::from_images_unchecked(images)
    }

    /// Canonical cycle decomposition, fixed points included.
    pub fn cycle_structure(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            loop {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    /// Cycle lengths in decreasing order; a partition of the degree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self
            .cycle_structure()
            .cycles()
            .iter()
            .map(|c| c.len())
            .collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with fixed points omitted; the identity prints empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycle_structure().cycles() {
            if cycle.len() < 2 {
                continue;
            }
            write!(f, "(")?;
            for (i, label) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{label}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "Perm(id/{})", self.degree())
        } else {
            write!(f, "Perm({}/{})", self, self.degree())
        }
    }
}

/// Disjoint cycles of a permutation: every cycle starts at its minimal
/// element and cycles are sorted by that element, so the decomposition is
/// canonical. Length-1 cycles (fixed points) are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn count(&self) -> usize {
        self.cycles.len()
    }
}

/// Orbit of `start` under the generators, as a sorted list of darts.
pub fn orbit(gens: &[Perm], start: usize) -> Vec<usize> {
    let n = gens.first().map_or(start, Perm::degree);
    let mut in_orbit = vec![false; n + 1];
    in_orbit[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !in_orbit[y] {
                in_orbit[y] = true;
                stack.push(y);
            }
        }
    }
    (1..=n).filter(|&x| in_orbit[x]).collect()
}

/// True iff the generated group acts transitively on `{1..n}`.
///
/// Panics if a generator has degree other than `n`, or if `gens` is empty
/// with `n > 1` (an empty generator set only makes sense on a single dart).
pub fn is_transitive(gens: &[Perm], n: usize) -> bool {
    assert!(
        !gens.is_empty() || n <= 1,
        "transitivity of an empty generator set on {n} darts"
    );
    for g in gens {
        assert_eq!(g.degree(), n, "generator degree differs from {n}");
    }
    if n <= 1 {
        return true;
    }
    orbit(gens, 1).len() == n
}

/// Exact order of a generated permutation group, or a signal that it
/// exceeds `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Exact(u64),
    ExceedsCap,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Exact(k) => write!(f, "{k}"),
            GroupOrder::ExceedsCap => write!(f, "exceeds cap"),
        }
    }
}

/// Default cap for group orders reported by fingerprints.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000_000;

/// Exact order of `⟨gens⟩` by a stabilizer-chain computation.
///
/// Degrees are capped at [`MAX_ORDER_DEGREE`], where the order always fits
/// in a `u64`. Orders above `cap` are reported as [`GroupOrder::ExceedsCap`].
pub fn group_order(gens: &[Perm], cap: u64) -> Result<GroupOrder, PermError> {
    assert!(cap > 0, "order cap must be positive");
    let n = gens.first().map_or(1, Perm::degree);
    if n > MAX_ORDER_DEGREE {
        return Err(PermError::DegreeTooLarge { found: n });
    }
    for g in gens {
        assert_eq!(g.degree(), n, "generator degree differs from {n}");
    }
    let chain = StabilizerChain::build(gens, n);
    let order = chain.order();
    Ok(if order > cap {
        GroupOrder::ExceedsCap
    } else {
        GroupOrder::Exact(order)
    })
}

/// True iff every pair of generators commutes.
pub fn is_abelian(gens: &[Perm]) -> bool {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.compose(b) != b.compose(a) {
                return false;
            }
        }
    }
    true
}

/// Finds `g` with `pair1.0^g = pair2.0` and `pair1.1^g = pair2.1` (conjugation
/// relabelling), or `None` when the pairs are not simultaneously conjugate.
///
/// Seeds the image of dart 1 on each candidate and propagates
/// `g(x^p) = g(x)^q` across the orbit, so `⟨pair1⟩` must be transitive.
pub fn find_simultaneous_conjugator(
    pair1: (&Perm, &Perm),
    pair2: (&Perm, &Perm),
) -> Result<Option<Perm>, PermError> {
    let n = pair1.0.degree();
    assert_eq!(pair1.1.degree(), n, "degree mismatch in pair1");
    assert_eq!(pair2.0.degree(), n, "degree mismatch between pairs");
    assert_eq!(pair2.1.degree(), n, "degree mismatch in pair2");
    if !is_transitive(&[pair1.0.clone(), pair1.1.clone()], n) {
        return Err(PermError::NotTransitive);
    }
    for seed in 1..=n {
        if let Some(g) = propagate_conjugator(pair1, pair2, seed) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Counts the conjugators from a transitive pair to itself, i.e. the order
/// of the centralizer of `⟨p, q⟩` in the symmetric group.
pub(crate) fn count_self_conjugators(p: &Perm, q: &Perm) -> usize {
    let n = p.degree();
    (1..=n)
        .filter(|&seed| propagate_conjugator((p, q), (p, q), seed).is_some())
        .count()
}

fn propagate_conjugator(
    pair1: (&Perm, &Perm),
    pair2: (&Perm, &Perm),
    seed: usize,
) -> Option<Perm> {
    let n = pair1.0.degree();
    let mut image = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    image[1] = seed;
    used[seed] = true;
    let mut stack = vec![1usize];
    let mut assigned = 1usize;
    while let Some(x) = stack.pop() {
        for (p, q) in [(pair1.0, pair2.0), (pair1.1, pair2.1)] {
            let xp = p.apply(x);
            let want = q.apply(image[x]);
            if image[xp] == 0 {
                if used[want] {
                    return None;
                }
                image[xp] = want;
                used[want] = true;
                assigned += 1;
                stack.push(xp);
            } else if image[xp] != want {
                return None;
            }
        }
    }
    if assigned < n {
        // orbit of 1 under pair1 is not everything; caller checks transitivity
        return None;
    }
    let g = Perm::from_images_unchecked(image[1..].to_vec());
    debug_assert_eq!(&pair1.0.conjugate(&g), pair2.0);
    debug_assert_eq!(&pair1.1.conjugate(&g), pair2.1);
    Some(g)
}

/// One level of a stabilizer chain: a base point, the generators of the
/// current stabilizer subgroup, and the transversal mapping each orbit
/// point to a coset representative that sends the base point there.
struct Level {
    beta: usize,
    gens: Vec<Perm>,
    transversal: BTreeMap<usize, Perm>,
}

struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    fn build(gens: &[Perm], n: usize) -> StabilizerChain {
        let mut chain = StabilizerChain {
            n,
            levels: Vec::new(),
        };
        let nontrivial: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if let Some(first) = nontrivial.first() {
            let beta = first_moved(first);
            chain.levels.push(Level {
                beta,
                gens: nontrivial.clone(),
                transversal: BTreeMap::new(),
            });
            chain.complete(0);
        }
        chain
    }

    fn order(&self) -> u64 {
        self.levels
            .iter()
            .map(|l| l.transversal.len() as u64)
            .product()
    }

    /// Re-establishes the chain invariant from level `k` down: recomputes
    /// the transversal and sifts every Schreier generator; residues that do
    /// not sift to the identity become generators one level deeper.
    fn complete(&mut self, k: usize) {
        self.recompute_transversal(k);
        let beta = self.levels[k].beta;
        let gens: Vec<Perm> = self.levels[k].gens.clone();
        let transversal: Vec<(usize, Perm)> = self.levels[k]
            .transversal
            .iter()
            .map(|(&p, u)| (p, u.clone()))
            .collect();
        for (_, u) in &transversal {
            for s in &gens {
                let us = u.compose(s);
                let img = us.apply(beta);
                let rep = self.levels[k].transversal[&img].clone();
                let schreier = us.compose(&rep.inverse());
                let residue = self.strip(k + 1, schreier);
                if !residue.is_identity() {
                    if k + 1 == self.levels.len() {
                        let beta2 = first_moved(&residue);
                        self.levels.push(Level {
                            beta: beta2,
                            gens: Vec::new(),
                            transversal: BTreeMap::new(),
                        });
                    }
                    self.levels[k + 1].gens.push(residue);
                    self.complete(k + 1);
                }
            }
        }
    }

    fn recompute_transversal(&mut self, k: usize) {
        let beta = self.levels[k].beta;
        let mut transversal = BTreeMap::new();
        transversal.insert(beta, Perm::identity(self.n));
        let mut queue = std::collections::VecDeque::from([beta]);
        while let Some(delta) = queue.pop_front() {
            for s in &self.levels[k].gens {
                let img = s.apply(delta);
                if !transversal.contains_key(&img) {
                    let rep = transversal[&delta].compose(s);
                    transversal.insert(img, rep);
                    queue.push_back(img);
                }
            }
        }
        self.levels[k].transversal = transversal;
    }

    /// Sifts `g` through levels `k..`, returning the residue.
    fn strip(&self, mut k: usize, mut g: Perm) -> Perm {
        while k < self.levels.len() {
            let img = g.apply(self.levels[k].beta);
            match self.levels[k].transversal.get(&img) {
                None => return g,
                Some(u) => {
                    g = g.compose(&u.inverse());
                    k += 1;
                }
            }
        }
        g
    }
}

fn first_moved(g: &Perm) -> usize {
    (1..=g.degree())
        .find(|&x| g.apply(x) != x)
        .expect("non-identity permutation moves a point")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        crate::text::parse_permutation(s, n).unwrap()
    }

    #[test]
    fn compose_digon_edge() {
        // (1 4)(2 3) then (1 2) on 4 points
        let sigma = p(4, "(1 4)(2 3)");
        let c1 = p(4, "(1 2)");
        assert_eq!(sigma.compose(&c1), p(4, "(1 4 2 3)"));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let q = p(8, "(1 3 5 7 8 6 2 4)");
        assert!(q.compose(&q.inverse()).is_identity());
    }

    #[test]
    fn compose_eight_cycle_with_transposition() {
        let sigma = p(8, "(1 3 5 7 8 6 2 4)");
        let c1 = p(8, "(1 2)");
        assert_eq!(sigma.compose(&c1), p(8, "(1 3 5 7 8 6)(2 4)"));
    }

    #[test]
    #[should_panic(expected = "degree mismatch")]
    fn compose_degree_mismatch_panics() {
        let _ = p(4, "(1 2)").compose(&p(5, "(1 2)"));
    }

    #[test]
    fn inverse_of_identity() {
        assert!(Perm::identity(6).inverse().is_identity());
    }

    #[test]
    fn inverse_of_involution() {
        let a = p(4, "(1 2)(3 4)");
        assert_eq!(a.inverse(), a);
    }

    #[test]
    fn inverse_reverses_cycle() {
        let q = p(8, "(1 6 3 2 4)");
        assert_eq!(q.inverse(), p(8, "(1 4 2 3 6)"));
        assert!(q.compose(&q.inverse()).is_identity());
    }

    #[test]
    fn conjugate_by_identity() {
        let q = p(3, "(1 2 3)");
        assert_eq!(q.conjugate(&Perm::identity(3)), q);
    }

    #[test]
    fn conjugate_relabels_cycles() {
        let q = p(4, "(1 4)(2 3)");
        assert_eq!(q.conjugate(&p(4, "(3 4)")), p(4, "(1 3)(2 4)"));
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        let q = p(7, "(1 2 3)(4 5)");
        let g = p(7, "(1 7 4 2)(3 6)");
        assert_eq!(q.conjugate(&g).cycle_type(), q.cycle_type());
    }

    #[test]
    fn cycle_structure_of_figure_four_sigma() {
        let sigma = p(5, "(2 3 4)");
        let cycles = sigma.cycle_structure();
        assert_eq!(
            cycles.cycles(),
            &[vec![1], vec![2, 3, 4], vec![5]]
        );
    }

    #[test]
    fn cycle_structure_of_identity() {
        let cycles = Perm::identity(3).cycle_structure();
        assert_eq!(cycles.cycles(), &[vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn cycle_type_partitions_degree() {
        let q = p(8, "(1 6 3 2 4)(5 8)");
        assert_eq!(q.cycle_type(), vec![5, 2, 1]);
        assert_eq!(q.cycle_type().iter().sum::<usize>(), 8);
    }

    #[test]
    fn transitive_pair_on_six() {
        let gens = [p(6, "(1 2)(3 4)(5 6)"), p(6, "(1 3 5)(2 4 6)")];
        assert!(is_transitive(&gens, 6));
    }

    #[test]
    fn identity_not_transitive_on_two() {
        assert!(!is_transitive(&[Perm::identity(2)], 2));
    }

    #[test]
    fn two_orbits_not_transitive() {
        let gens = [p(4, "(1 2)"), p(4, "(3 4)")];
        assert!(!is_transitive(&gens, 4));
    }

    #[test]
    #[should_panic(expected = "empty generator set")]
    fn empty_generators_panic() {
        is_transitive(&[], 2);
    }

    #[test]
    fn order_of_figure_four_monodromy_is_s5() {
        let gens = [p(5, "(2 3 4)"), p(5, "(1 2)(3 5 4)")];
        assert_eq!(
            group_order(&gens, DEFAULT_ORDER_CAP).unwrap(),
            GroupOrder::Exact(120)
        );
    }

    #[test]
    fn order_of_z6_pair() {
        let gens = [p(6, "(1 2)(3 4)(5 6)"), p(6, "(1 3 5)(2 4 6)")];
        assert_eq!(
            group_order(&gens, DEFAULT_ORDER_CAP).unwrap(),
            GroupOrder::Exact(6)
        );
    }

    #[test]
    fn order_of_trivial_group() {
        assert_eq!(
            group_order(&[Perm::identity(4)], DEFAULT_ORDER_CAP).unwrap(),
            GroupOrder::Exact(1)
        );
    }

    #[test]
    fn order_of_full_symmetric_group_s16() {
        let gens = [
            p(16, "(1 2)"),
            p(16, "(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16)"),
        ];
        // 16! exceeds the default cap
        assert_eq!(
            group_order(&gens, DEFAULT_ORDER_CAP).unwrap(),
            GroupOrder::ExceedsCap
        );
        assert_eq!(
            group_order(&gens, u64::MAX).unwrap(),
            GroupOrder::Exact(20_922_789_888_000)
        );
    }

    #[test]
    fn order_rejects_degree_above_bound() {
        let gens = [Perm::identity(17)];
        assert_eq!(
            group_order(&gens, DEFAULT_ORDER_CAP),
            Err(PermError::DegreeTooLarge { found: 17 })
        );
    }

    #[test]
    fn single_cycle_order_is_its_length() {
        for m in 1..=10 {
            let cycle: Vec<usize> = (1..=m).collect();
            let g = Perm::from_cycles(m, &[cycle]).unwrap();
            assert_eq!(
                group_order(&[g], DEFAULT_ORDER_CAP).unwrap(),
                GroupOrder::Exact(m as u64)
            );
        }
    }

    #[test]
    fn abelian_checks() {
        let z6 = [p(6, "(1 2)(3 4)(5 6)"), p(6, "(1 3 5)(2 4 6)")];
        assert!(is_abelian(&z6));
        let s5 = [p(5, "(2 3 4)"), p(5, "(1 2)(3 5 4)")];
        assert!(!is_abelian(&s5));
        assert!(is_abelian(&[p(9, "(1 2 3 4 5 6 7 8 9)")]));
    }

    #[test]
    fn conjugator_pair_with_itself() {
        let pair = (p(4, "(1 2 3 4)"), p(4, "(1 2)(3 4)"));
        let g = find_simultaneous_conjugator((&pair.0, &pair.1), (&pair.0, &pair.1))
            .unwrap()
            .unwrap();
        assert_eq!(pair.0.conjugate(&g), pair.0);
        assert_eq!(pair.1.conjugate(&g), pair.1);
    }

    #[test]
    fn conjugator_between_digon_and_dual() {
        let pair1 = (p(4, "(1 4)(2 3)"), p(4, "(1 2)(3 4)"));
        let pair2 = (p(4, "(1 3)(2 4)"), p(4, "(1 2)(3 4)"));
        let g = find_simultaneous_conjugator((&pair1.0, &pair1.1), (&pair2.0, &pair2.1))
            .unwrap()
            .unwrap();
        assert_eq!(g, p(4, "(3 4)"));
    }

    #[test]
    fn conjugator_none_when_cycle_types_differ() {
        let pair1 = (p(2, "(1 2)"), p(2, "(1 2)"));
        let pair2 = (p(2, "(1 2)"), Perm::identity(2));
        assert_eq!(
            find_simultaneous_conjugator((&pair1.0, &pair1.1), (&pair2.0, &pair2.1)).unwrap(),
            None
        );
    }

    #[test]
    fn conjugator_requires_transitive_first_pair() {
        let pair1 = (p(4, "(1 2)"), p(4, "(1 2)"));
        let pair2 = (p(4, "(3 4)"), p(4, "(3 4)"));
        assert_eq!(
            find_simultaneous_conjugator((&pair1.0, &pair1.1), (&pair2.0, &pair2.1)),
            Err(PermError::NotTransitive)
        );
    }
}
