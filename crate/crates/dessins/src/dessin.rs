//! Validated permutation triples `(σ, α, φ)` with `σαφ = 1`, their numeric
//! and structural invariants, duality, the clean double, isomorphism, and
//! the underlying multigraph with its spanning trees.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::perm::{
    self, find_simultaneous_conjugator, group_order, is_abelian, is_transitive, GroupOrder, Perm,
    PermError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DessinError {
    #[error("permutation degree {found} does not match the dart count {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("dart count must be positive")]
    EmptyDartSet,
    #[error("product sigma·alpha·phi is not the identity")]
    ProductNotIdentity,
    #[error("the triple does not act transitively on the darts")]
    NotTransitive,
    #[error("Euler characteristic {chi} is not an even integer at most 2; the triple is corrupt")]
    GenusComputation { chi: i64 },
    #[error("alpha is not a fixed-point-free involution")]
    NotClean,
    #[error("edge index {index} out of range 1..={edges}")]
    EdgeIndexOutOfRange { index: usize, edges: usize },
    #[error("alpha-cycle index {index} out of range 1..={cycles}")]
    CycleIndexOutOfRange { index: usize, cycles: usize },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A dessin d'enfant: a transitive triple `(σ, α, φ)` on `{1..n}` with
/// `σαφ = 1`. σ rotates darts around black vertices, α around white
/// vertices, φ around faces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dessin {
    sigma: Perm,
    alpha: Perm,
    phi: Perm,
}

impl Dessin {
    /// Validates and builds a dessin. When `phi` is absent it is derived as
    /// `(σα)⁻¹`; when given, the product condition is re-checked rather than
    /// trusted.
    pub fn new(
        n: usize,
        sigma: Perm,
        alpha: Perm,
        phi: Option<Perm>,
    ) -> Result<Dessin, DessinError> {
        if n == 0 {
            return Err(DessinError::EmptyDartSet);
        }
        for p in [&sigma, &alpha].into_iter().chain(phi.as_ref()) {
            if p.degree() != n {
                return Err(DessinError::DegreeMismatch {
                    expected: n,
                    found: p.degree(),
                });
            }
        }
        let phi = match phi {
            Some(phi) => {
                if !sigma.compose(&alpha).compose(&phi).is_identity() {
                    return Err(DessinError::ProductNotIdentity);
                }
                phi
            }
            None => sigma.compose(&alpha).inverse(),
        };
        if !is_transitive(&[sigma.clone(), alpha.clone()], n) {
            return Err(DessinError::NotTransitive);
        }
        let d = Dessin { sigma, alpha, phi };
        // 2 - 2g = c(σ) + c(α) + c(φ) - n; fails only on an internal fault
        let chi = d.euler_characteristic();
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(DessinError::GenusComputation { chi });
        }
        Ok(d)
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.degree()
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    pub fn alpha(&self) -> &Perm {
        &self.alpha
    }

    pub fn phi(&self) -> &Perm {
        &self.phi
    }

    pub fn black_vertex_count(&self) -> usize {
        self.sigma.cycle_structure().count()
    }

    pub fn white_vertex_count(&self) -> usize {
        self.alpha.cycle_structure().count()
    }

    pub fn face_count(&self) -> usize {
        self.phi.cycle_structure().count()
    }

    fn euler_characteristic(&self) -> i64 {
        let c = self.black_vertex_count() + self.white_vertex_count() + self.face_count();
        c as i64 - self.n_darts() as i64
    }

    /// Genus of the underlying surface: `2 - 2g = c(σ) + c(α) + c(φ) - n`.
    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    pub fn passport(&self) -> Passport {
        Passport {
            sigma: self.sigma.cycle_type(),
            alpha: self.alpha.cycle_type(),
            phi: self.phi.cycle_type(),
        }
    }

    /// The dual dessin `(φ⁻¹, α⁻¹, σ⁻¹)`, swapping black vertices and faces.
    pub fn dual(&self) -> Dessin {
        Dessin {
            sigma: self.phi.inverse(),
            alpha: self.alpha.inverse(),
            phi: self.sigma.inverse(),
        }
    }

    /// Simultaneous conjugation by `g`: relabels all darts.
    pub fn conjugated(&self, g: &Perm) -> Dessin {
        Dessin::new(
            self.n_darts(),
            self.sigma.conjugate(g),
            self.alpha.conjugate(g),
            Some(self.phi.conjugate(g)),
        )
        .expect("conjugation preserves validity")
    }

    /// Refines into a clean dessin (a map). Fails unless α is a
    /// fixed-point-free involution.
    pub fn as_clean(&self) -> Result<CleanDessin, DessinError> {
        let n = self.n_darts();
        for x in 1..=n {
            let y = self.alpha.apply(x);
            if y == x || self.alpha.apply(y) != x {
                return Err(DessinError::NotClean);
            }
        }
        let edges = (1..=n)
            .filter(|&x| x < self.alpha.apply(x))
            .map(|x| (x, self.alpha.apply(x)))
            .collect();
        Ok(CleanDessin {
            inner: self.clone(),
            edges,
        })
    }

    /// The clean dessin on `2n` darts obtained by colouring white vertices
    /// black and adding new white vertices at dart midpoints. Its monodromy
    /// group is the cartography group of `self`. Genus is preserved.
    pub fn clean_double(&self) -> CleanDessin {
        let n = self.n_darts();
        let mut sigma_images = Vec::with_capacity(2 * n);
        sigma_images.extend((1..=n).map(|x| self.sigma.apply(x)));
        sigma_images.extend((1..=n).map(|x| self.alpha.apply(x) + n));
        let sigma = Perm::from_images_unchecked(sigma_images);
        let alpha_images = (1..=2 * n)
            .map(|x| if x <= n { x + n } else { x - n })
            .collect();
        let alpha = Perm::from_images_unchecked(alpha_images);
        Dessin::new(2 * n, sigma, alpha, None)
            .expect("clean double of a valid dessin is valid")
            .as_clean()
            .expect("clean double has an involution alpha")
    }

    /// Order of the monodromy group `⟨σ, α⟩`.
    pub fn monodromy_order(&self, cap: u64) -> Result<GroupOrder, PermError> {
        group_order(&[self.sigma.clone(), self.alpha.clone()], cap)
    }

    pub fn monodromy_is_abelian(&self) -> bool {
        is_abelian(&[self.sigma.clone(), self.alpha.clone()])
    }

    /// Number of dessin automorphisms: permutations commuting with both σ
    /// and α. The centralizer of a transitive group is semiregular, so the
    /// count is at most `n`.
    pub fn automorphism_count(&self) -> usize {
        perm::count_self_conjugators(&self.sigma, &self.alpha)
    }

    /// A dessin is regular when its automorphism group acts transitively,
    /// i.e. `|Aut| = n`.
    pub fn is_regular(&self) -> bool {
        self.automorphism_count() == self.n_darts()
    }

    /// Isomorphism is simultaneous conjugacy of `(σ, α)`; φ follows.
    pub fn is_isomorphic(&self, other: &Dessin) -> bool {
        if self.n_darts() != other.n_darts() {
            return false;
        }
        find_simultaneous_conjugator(
            (&self.sigma, &self.alpha),
            (&other.sigma, &other.alpha),
        )
        .expect("validated dessins are transitive")
        .is_some()
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_isomorphic(&self.dual())
    }

    /// The bipartite multigraph of the dessin: one vertex per σ-cycle, then
    /// one per α-cycle; dart `d` becomes edge `d` joining its σ-cycle to
    /// its α-cycle.
    pub fn underlying_graph(&self) -> Multigraph {
        let n = self.n_darts();
        let black = cycle_index(&self.sigma);
        let white = cycle_index(&self.alpha);
        let blacks = self.black_vertex_count();
        let edges = (1..=n)
            .map(|d| (black[d], blacks + white[d]))
            .collect();
        Multigraph {
            vertex_count: blacks + self.white_vertex_count(),
            edges,
        }
    }
}

impl fmt::Debug for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Dessin(n={}, sigma={}, alpha={}, phi={})",
            self.n_darts(),
            self.sigma,
            self.alpha,
            self.phi
        )
    }
}

/// Maps each dart to the 0-based index of its cycle (cycles ordered by
/// minimal element). Index 0 of the returned vec is unused.
fn cycle_index(p: &Perm) -> Vec<usize> {
    let mut index = vec![0; p.degree() + 1];
    for (i, cycle) in p.cycle_structure().cycles().iter().enumerate() {
        for &d in cycle {
            index[d] = i;
        }
    }
    index
}

/// A clean dessin, i.e. a map: α is a fixed-point-free involution, so its
/// cycles are the edges. Edge `j` (1-based) is the `j`-th transposition in
/// minimal-dart order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CleanDessin {
    inner: Dessin,
    edges: Vec<(usize, usize)>,
}

impl CleanDessin {
    pub fn as_dessin(&self) -> &Dessin {
        &self.inner
    }

    pub fn into_dessin(self) -> Dessin {
        self.inner
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge transpositions `(a, b)` with `a < b`, sorted by `a`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The transposition `c_j` as a permutation of all darts.
    pub fn edge_transposition(&self, j: usize) -> Result<Perm, DessinError> {
        let (a, b) = *self
            .edges
            .get(j.wrapping_sub(1))
            .ok_or(DessinError::EdgeIndexOutOfRange {
                index: j,
                edges: self.edge_count(),
            })?;
        Ok(Perm::from_cycles(self.n_darts(), &[vec![a, b]]).expect("edge darts are in range"))
    }

    /// The classical map graph: one vertex per σ-cycle, one edge per
    /// α-transposition joining the σ-cycles of its two darts. Edge `j` of
    /// the graph is edge `j` of the map.
    pub fn edge_graph(&self) -> Multigraph {
        let black = cycle_index(self.inner.sigma());
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (black[a], black[b]))
            .collect();
        Multigraph {
            vertex_count: self.inner.black_vertex_count(),
            edges,
        }
    }
}

impl Deref for CleanDessin {
    type Target = Dessin;

    fn deref(&self) -> &Dessin {
        &self.inner
    }
}

impl fmt::Debug for CleanDessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clean{:?}", self.inner)
    }
}

/// The passport `[λσ, λα, λφ]`: cycle types as decreasing partitions of the
/// dart count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passport {
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
    pub phi: Vec<usize>,
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}]",
            format_partition(&self.sigma),
            format_partition(&self.alpha),
            format_partition(&self.phi)
        )
    }
}

/// Compact partition notation: `17 = 3+3+3+3+2+1+1+1` renders as
/// `3^4 2 1^3`, and double-digit parts are parenthesised, so `23 = 11+11+1`
/// renders as `(11)^2 1`.
pub fn format_partition(parts: &[usize]) -> String {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut pieces = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let part = sorted[i];
        let mut mult = 1;
        while i + mult < sorted.len() && sorted[i + mult] == part {
            mult += 1;
        }
        let base = if part >= 10 {
            format!("({part})")
        } else {
            part.to_string()
        };
        if mult > 1 {
            pieces.push(format!("{base}^{mult}"));
        } else {
            pieces.push(base);
        }
        i += mult;
    }
    pieces.join(" ")
}

/// A multigraph with loops and parallel edges, 0-based vertices and stable
/// 1-based edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Multigraph, DessinError> {
        for &(a, b) in &edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(DessinError::EdgeIndexOutOfRange {
                    index: a.max(b),
                    edges: vertex_count,
                });
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `j` (1-based).
    pub fn edge(&self, j: usize) -> (usize, usize) {
        self.edges[j - 1]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.component_count()
    }
}

/// All spanning trees of a connected multigraph, as sets of 1-based edge
/// indices, enumerated exhaustively over subsets of size `V - 1`.
pub fn spanning_trees(g: &Multigraph) -> Result<Vec<BTreeSet<usize>>, DessinError> {
    if !g.is_connected() {
        return Err(DessinError::DisconnectedGraph);
    }
    let v = g.vertex_count();
    let e = g.edge_count();
    if v == 1 {
        return Ok(vec![BTreeSet::new()]);
    }
    let mut trees = Vec::new();
    let mut subset: Vec<usize> = (1..=v - 1).collect();
    loop {
        let mut uf = UnionFind::new(v);
        let mut acyclic = true;
        for &j in &subset {
            let (a, b) = g.edge(j);
            if !uf.union(a, b) {
                acyclic = false;
                break;
            }
        }
        if acyclic && uf.component_count() == 1 {
            trees.push(subset.iter().copied().collect());
        }
        // next (v-1)-combination of {1..e} in lexicographic order
        let k = subset.len();
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(trees);
            }
            i -= 1;
            if subset[i] < e - (k - 1 - i) {
                subset[i] += 1;
                for t in i + 1..k {
                    subset[t] = subset[t - 1] + 1;
                }
                break;
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    fn component_count(&self) -> usize {
        self.components
    }
}
