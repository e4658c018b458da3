//! Monodromy graphs: leveled trivalent multigraphs recording how the cycles
//! of σ merge and split while multiplying in the edge transpositions of a
//! map one at a time, their Betti numbers, the derived abstract tropical
//! curves, and small unlabeled multigraph isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::dessin::{CleanDessin, Multigraph};
use crate::perm::Perm;

/// Vertex bound for the multigraph isomorphism backtracker.
pub const MAX_ISO_VERTICES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("order must be a permutation of the edge indices 1..={edges}")]
    InvalidOrder { edges: usize },
    #[error("graph has {found} vertices; isomorphism is bounded at {max}", max = MAX_ISO_VERTICES)]
    TooManyVertices { found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Level 0, one per σ-cycle.
    Source,
    /// Level `t`, the merge or split performed at step `t`.
    Event,
    /// Final level, one per cycle of `σα = φ⁻¹`.
    Sink,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKind::Source => write!(f, "source"),
            VertexKind::Event => write!(f, "event"),
            VertexKind::Sink => write!(f, "sink"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyVertex {
    pub kind: VertexKind,
    pub level: usize,
}

/// An edge is a maximal run of levels over which one cycle of the evolving
/// permutation stays untouched; its label is that cycle at run start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyEdge {
    pub from: usize,
    pub to: usize,
    /// The labelling cycle, rotated to start at its minimal dart.
    pub cycle: Vec<usize>,
    /// Level span `(start, end]` of the run.
    pub span: (usize, usize),
}

impl MonodromyEdge {
    /// Sorted support of the labelling cycle.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.cycle.clone();
        s.sort_unstable();
        s
    }

    pub fn length(&self) -> usize {
        self.cycle.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyGraph {
    vertices: Vec<MonodromyVertex>,
    edges: Vec<MonodromyEdge>,
}

/// Builds the monodromy graph of a map for a chosen multiplication order of
/// its edges. Starting from `π = σ`, step `t` multiplies by `c_{order[t]}`:
/// a transposition with darts in two distinct π-cycles merges them, one with
/// both darts in a single cycle splits it, and every untouched cycle extends
/// its current edge. After all steps `π = σα` and one sink closes each
/// remaining cycle.
pub fn build_monodromy_graph(
    d: &CleanDessin,
    order: &[usize],
) -> Result<MonodromyGraph, MonodromyError> {
    let m = d.edge_count();
    {
        let mut seen = vec![false; m + 1];
        if order.len() != m {
            return Err(MonodromyError::InvalidOrder { edges: m });
        }
        for &j in order {
            if j == 0 || j > m || seen[j] {
                return Err(MonodromyError::InvalidOrder { edges: m });
            }
            seen[j] = true;
        }
    }

    let mut vertices = Vec::new();
    let mut edges: Vec<MonodromyEdge> = Vec::new();
    // open runs: cycle (keyed by its minimal dart) -> pending edge index
    let mut open: BTreeMap<usize, usize> = BTreeMap::new();

    let mut pi = d.sigma().clone();
    for cycle in pi.cycle_structure().cycles() {
        let v = vertices.len();
        vertices.push(MonodromyVertex {
            kind: VertexKind::Source,
            level: 0,
        });
        let e = edges.len();
        edges.push(MonodromyEdge {
            from: v,
            to: usize::MAX,
            cycle: cycle.clone(),
            span: (0, usize::MAX),
        });
        open.insert(cycle[0], e);
    }

    for (t, &j) in order.iter().enumerate() {
        let level = t + 1;
        let (a, b) = d.edges()[j - 1];
        let cycle_a = cycle_through(&pi, a);
        let cycle_b = cycle_through(&pi, b);
        let event = vertices.len();
        vertices.push(MonodromyVertex {
            kind: VertexKind::Event,
            level,
        });
        let c_j = Perm::from_cycles(d.n_darts(), &[vec![a, b]]).expect("edge darts in range");
        let in_same_cycle = cycle_a[0] == cycle_b[0];
        pi = pi.compose(&c_j);
        if in_same_cycle {
            // split: one run ends, two begin
            close_run(&mut edges, &mut open, cycle_a[0], event, level);
            let mut halves = [cycle_through(&pi, a), cycle_through(&pi, b)];
            halves.sort_by_key(|c| c[0]);
            for half in halves {
                open_run(&mut edges, &mut open, event, half, level);
            }
        } else {
            // merge: two runs end, one begins
            let mut ends = [cycle_a[0], cycle_b[0]];
            ends.sort_unstable();
            for key in ends {
                close_run(&mut edges, &mut open, key, event, level);
            }
            open_run(&mut edges, &mut open, event, cycle_through(&pi, a), level);
        }
    }

    debug_assert_eq!(pi, d.sigma().compose(d.alpha()));
    let final_level = m + 1;
    let keys: Vec<usize> = open.keys().copied().collect();
    for key in keys {
        let sink = vertices.len();
        vertices.push(MonodromyVertex {
            kind: VertexKind::Sink,
            level: final_level,
        });
        close_run(&mut edges, &mut open, key, sink, final_level);
    }

    Ok(MonodromyGraph { vertices, edges })
}

fn cycle_through(p: &Perm, start: usize) -> Vec<usize> {
    let mut cycle = vec![start];
    let mut x = p.apply(start);
    while x != start {
        cycle.push(x);
        x = p.apply(x);
    }
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(min_pos);
    cycle
}

fn close_run(
    edges: &mut [MonodromyEdge],
    open: &mut BTreeMap<usize, usize>,
    key: usize,
    to: usize,
    level: usize,
) {
    let e = open.remove(&key).expect("every live cycle has an open run");
    edges[e].to = to;
    edges[e].span.1 = level;
}

fn open_run(
    edges: &mut Vec<MonodromyEdge>,
    open: &mut BTreeMap<usize, usize>,
    from: usize,
    cycle: Vec<usize>,
    level: usize,
) {
    let e = edges.len();
    open.insert(cycle[0], e);
    edges.push(MonodromyEdge {
        from,
        to: usize::MAX,
        cycle,
        span: (level, usize::MAX),
    });
}

impl MonodromyGraph {
    pub fn vertices(&self) -> &[MonodromyVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[MonodromyEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.from == v) as usize + (e.to == v) as usize)
            .sum()
    }

    /// First Betti number `E - V + C`.
    pub fn betti_number(&self) -> usize {
        self.to_multigraph().betti_number()
    }

    /// Forgets levels and labels, keeping the unlabeled multigraph.
    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph::new(
            self.vertex_count(),
            self.edges.iter().map(|e| (e.from, e.to)).collect(),
        )
        .expect("endpoints in range")
    }

    /// Decorates the graph into an abstract tropical curve: edges touching
    /// a degree-1 vertex get length ∞, all others the length of their cycle.
    pub fn to_tropical_curve(&self) -> TropicalCurve {
        let degrees: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| TropicalEdge {
                from: e.from,
                to: e.to,
                support: e.support(),
                length: if degrees[e.from] == 1 || degrees[e.to] == 1 {
                    Length::Infinite
                } else {
                    Length::Finite(e.length() as f64)
                },
            })
            .collect();
        TropicalCurve {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// DOT rendering; node labels are vertex kinds, edge labels are
    /// `support:length`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph monodromy {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{}\"];\n", v.kind));
        }
        for e in &self.edges {
            let support = join_spaced(&e.support());
            out.push_str(&format!(
                "  v{} -- v{} [label=\"{}:{}\"];\n",
                e.from,
                e.to,
                support,
                e.length()
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self
                .vertices
                .iter()
                .map(|v| json!({ "kind": v.kind.to_string(), "level": v.level }))
                .collect::<Vec<_>>(),
            "edges": self
                .edges
                .iter()
                .map(|e| json!({
                    "from": e.from,
                    "to": e.to,
                    "cycle": e.cycle,
                    "length": e.length(),
                    "span": [e.span.0, e.span.1],
                }))
                .collect::<Vec<_>>(),
            "betti": self.betti_number(),
        })
    }
}

impl Multigraph {
    /// First Betti number `E - V + C`.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count()
    }
}

/// Edge length of a tropical curve: a positive real or ∞. The builder only
/// emits integer lengths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Length {
    Finite(f64),
    Infinite,
}

impl Length {
    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(x) => write!(f, "{x}"),
            Length::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TropicalEdge {
    pub from: usize,
    pub to: usize,
    pub support: Vec<usize>,
    pub length: Length,
}

/// An abstract tropical curve shaped like a monodromy graph: a connected
/// multigraph without degree-2 vertices, edges decorated by lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalCurve {
    vertices: Vec<MonodromyVertex>,
    edges: Vec<TropicalEdge>,
}

/// The order-independent counts of a tropical curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TropicalInvariants {
    pub finite_edges: usize,
    pub infinite_edges: usize,
    pub trivalent_vertices: usize,
    pub betti: usize,
}

impl TropicalCurve {
    pub fn vertices(&self) -> &[MonodromyVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TropicalEdge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.from == v) as usize + (e.to == v) as usize)
            .sum()
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph::new(
            self.vertices.len(),
            self.edges.iter().map(|e| (e.from, e.to)).collect(),
        )
        .expect("endpoints in range")
    }

    pub fn invariants(&self) -> TropicalInvariants {
        let finite = self.edges.iter().filter(|e| e.length.is_finite()).count();
        let trivalent = (0..self.vertices.len())
            .filter(|&v| self.degree(v) == 3)
            .count();
        TropicalInvariants {
            finite_edges: finite,
            infinite_edges: self.edges.len() - finite,
            trivalent_vertices: trivalent,
            betti: self.to_multigraph().betti_number(),
        }
    }

    /// DOT rendering; finite edges are labelled `support:length`, infinite
    /// edges `∞`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tropical {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{}\"];\n", v.kind));
        }
        for e in &self.edges {
            let label = match e.length {
                Length::Finite(x) => format!("{}:{}", join_spaced(&e.support), x),
                Length::Infinite => "∞".to_string(),
            };
            out.push_str(&format!(
                "  v{} -- v{} [label=\"{label}\"];\n",
                e.from, e.to
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let inv = self.invariants();
        json!({
            "vertices": self
                .vertices
                .iter()
                .map(|v| json!({ "kind": v.kind.to_string(), "level": v.level }))
                .collect::<Vec<_>>(),
            "edges": self
                .edges
                .iter()
                .map(|e| {
                    let length = match e.length {
                        Length::Finite(x) => json!(x),
                        Length::Infinite => json!("inf"),
                    };
                    json!({ "from": e.from, "to": e.to, "support": e.support, "length": length })
                })
                .collect::<Vec<_>>(),
            "invariants": json!({
                "betti": inv.betti,
                "finite_edges": inv.finite_edges,
                "infinite_edges": inv.infinite_edges,
                "trivalent_vertices": inv.trivalent_vertices,
            }),
        })
    }
}

fn join_spaced(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Unlabeled multigraph isomorphism by degree-partition backtracking.
/// Multiplicities and loops are respected. Bounded at
/// [`MAX_ISO_VERTICES`] vertices.
pub fn multigraph_isomorphic(a: &Multigraph, b: &Multigraph) -> Result<bool, MonodromyError> {
    let n = a.vertex_count();
    if n > MAX_ISO_VERTICES || b.vertex_count() > MAX_ISO_VERTICES {
        return Err(MonodromyError::TooManyVertices {
            found: n.max(b.vertex_count()),
        });
    }
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let adj_a = adjacency(a);
    let adj_b = adjacency(b);
    let deg = |adj: &Vec<Vec<usize>>, v: usize| -> usize {
        adj[v].iter().sum::<usize>() + adj[v][v]
    };
    let mut degs_a: Vec<usize> = (0..n).map(|v| deg(&adj_a, v)).collect();
    let mut degs_b: Vec<usize> = (0..n).map(|v| deg(&adj_b, v)).collect();
    let deg_a = degs_a.clone();
    let deg_b = degs_b.clone();
    degs_a.sort_unstable();
    degs_b.sort_unstable();
    if degs_a != degs_b {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(match_vertices(
        0, n, &adj_a, &adj_b, &deg_a, &deg_b, &mut image, &mut used,
    ))
}

fn adjacency(g: &Multigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![0usize; n]; n];
    for &(u, v) in g.edges() {
        if u == v {
            adj[u][v] += 1;
        } else {
            adj[u][v] += 1;
            adj[v][u] += 1;
        }
    }
    adj
}

#[allow(clippy::too_many_arguments)]
fn match_vertices(
    v: usize,
    n: usize,
    adj_a: &Vec<Vec<usize>>,
    adj_b: &Vec<Vec<usize>>,
    deg_a: &[usize],
    deg_b: &[usize],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v == n {
        return true;
    }
    'candidates: for w in 0..n {
        if used[w] || deg_a[v] != deg_b[w] || adj_a[v][v] != adj_b[w][w] {
            continue;
        }
        for u in 0..v {
            if adj_a[v][u] != adj_b[w][image[u]] {
                continue 'candidates;
            }
        }
        image[v] = w;
        used[w] = true;
        if match_vertices(v + 1, n, adj_a, adj_b, deg_a, deg_b, image, used) {
            return true;
        }
        used[w] = false;
        image[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessin::Dessin;
    use crate::perm::Perm;

    fn p(n: usize, s: &str) -> Perm {
        crate::text::parse_permutation(s, n).unwrap()
    }

    fn clean(n: usize, sigma: &str, alpha: &str) -> CleanDessin {
        Dessin::new(n, p(n, sigma), p(n, alpha), None)
            .unwrap()
            .as_clean()
            .unwrap()
    }

    fn example_seven_one() -> CleanDessin {
        clean(8, "(1 3 5 7 8 6 2 4)", "(1 2)(3 4)(5 6)(7 8)")
    }

    fn path_map() -> CleanDessin {
        clean(4, "(2 3)", "(1 2)(3 4)")
    }

    #[test]
    fn example_graph_in_default_order() {
        let g = build_monodromy_graph(&example_seven_one(), &[1, 2, 3, 4]).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.betti_number(), 1);
        // final-level labels are the cycles of phi⁻¹ = σα
        let final_level = 5;
        let mut finals: Vec<Vec<usize>> = g
            .edges()
            .iter()
            .filter(|e| e.span.1 == final_level)
            .map(|e| e.cycle.clone())
            .collect();
        finals.sort();
        assert_eq!(finals, vec![vec![1, 4, 2, 3, 6], vec![5, 8], vec![7]]);
        // a double edge between the first two events
        let mg = g.to_multigraph();
        let double = (0..g.vertex_count()).any(|u| {
            (0..g.vertex_count()).any(|v| {
                u < v && mg.edges().iter().filter(|&&e| e == (u, v) || e == (v, u)).count() >= 2
            })
        });
        assert!(double);
    }

    #[test]
    fn example_graph_in_swapped_order_has_triangle() {
        let g = build_monodromy_graph(&example_seven_one(), &[1, 3, 2, 4]).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.betti_number(), 1);
        let adj = adjacency(&g.to_multigraph());
        let n = g.vertex_count();
        let triangle = (0..n).any(|u| {
            (u + 1..n).any(|v| {
                (v + 1..n)
                    .any(|w| adj[u][v] >= 1 && adj[v][w] >= 1 && adj[u][w] >= 1)
            })
        });
        assert!(triangle);
    }

    #[test]
    fn the_two_example_graphs_are_not_isomorphic() {
        let g1 = build_monodromy_graph(&example_seven_one(), &[1, 2, 3, 4]).unwrap();
        let g2 = build_monodromy_graph(&example_seven_one(), &[1, 3, 2, 4]).unwrap();
        assert!(!multigraph_isomorphic(&g1.to_multigraph(), &g2.to_multigraph()).unwrap());
    }

    #[test]
    fn path_map_graph_is_a_tree() {
        let g = build_monodromy_graph(&path_map(), &[1, 2]).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.betti_number(), 0);
    }

    #[test]
    fn path_map_graphs_agree_for_both_orders() {
        let g1 = build_monodromy_graph(&path_map(), &[1, 2]).unwrap();
        let g2 = build_monodromy_graph(&path_map(), &[2, 1]).unwrap();
        assert!(multigraph_isomorphic(&g1.to_multigraph(), &g2.to_multigraph()).unwrap());
    }

    #[test]
    fn graph_isomorphic_to_itself() {
        let g = build_monodromy_graph(&example_seven_one(), &[4, 3, 2, 1]).unwrap();
        let mg = g.to_multigraph();
        assert!(multigraph_isomorphic(&mg, &mg).unwrap());
    }

    #[test]
    fn invalid_orders_are_rejected() {
        let d = path_map();
        for order in [vec![1], vec![1, 1], vec![1, 3], vec![0, 1]] {
            assert_eq!(
                build_monodromy_graph(&d, &order),
                Err(MonodromyError::InvalidOrder { edges: 2 })
            );
        }
    }

    #[test]
    fn tropical_curve_of_the_example() {
        let g = build_monodromy_graph(&example_seven_one(), &[1, 2, 3, 4]).unwrap();
        let t = g.to_tropical_curve();
        let mut finite: Vec<f64> = t
            .edges()
            .iter()
            .filter_map(|e| match e.length {
                Length::Finite(x) => Some(x),
                Length::Infinite => None,
            })
            .collect();
        finite.sort_by(f64::total_cmp);
        assert_eq!(finite, vec![2.0, 3.0, 6.0, 8.0]);
        assert_eq!(t.invariants(), TropicalInvariants {
            finite_edges: 4,
            infinite_edges: 4,
            trivalent_vertices: 4,
            betti: 1,
        });
    }

    #[test]
    fn tropical_curve_of_the_path_map() {
        let g = build_monodromy_graph(&path_map(), &[1, 2]).unwrap();
        let t = g.to_tropical_curve();
        let internal: Vec<&TropicalEdge> =
            t.edges().iter().filter(|e| e.length.is_finite()).collect();
        assert_eq!(internal.len(), 1);
        assert_eq!(internal[0].support, vec![1, 2, 3]);
        assert_eq!(internal[0].length, Length::Finite(3.0));
        assert_eq!(t.invariants(), TropicalInvariants {
            finite_edges: 1,
            infinite_edges: 4,
            trivalent_vertices: 2,
            betti: 0,
        });
    }

    #[test]
    fn tropical_curve_of_the_single_edge_map() {
        // two sources merge at one event and run to one sink: every edge
        // touches a leaf, so all lengths are infinite
        let g = build_monodromy_graph(&clean(2, "", "(1 2)"), &[1]).unwrap();
        let t = g.to_tropical_curve();
        assert!(t.edges().iter().all(|e| !e.length.is_finite()));
        assert_eq!(t.invariants(), TropicalInvariants {
            finite_edges: 0,
            infinite_edges: 3,
            trivalent_vertices: 1,
            betti: 0,
        });
    }

    #[test]
    fn no_degree_two_vertices() {
        for order in [[1, 2, 3, 4], [2, 4, 1, 3], [4, 3, 2, 1]] {
            let g = build_monodromy_graph(&example_seven_one(), &order).unwrap();
            for v in 0..g.vertex_count() {
                assert_ne!(g.degree(v), 2);
            }
        }
    }

    #[test]
    fn dot_and_json_are_deterministic() {
        let g = build_monodromy_graph(&path_map(), &[1, 2]).unwrap();
        assert_eq!(g.to_dot(), g.to_dot());
        assert!(g.to_dot().starts_with("graph monodromy {"));
        let json = g.to_json().to_string();
        assert!(json.contains("\"betti\":0"));
        let t = g.to_tropical_curve();
        assert!(t.to_dot().contains("\"∞\""));
        assert!(t.to_json().to_string().contains("\"length\":\"inf\""));
    }

    #[test]
    fn multigraph_multiplicity_respected() {
        let single = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let double = Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(!multigraph_isomorphic(&single, &double).unwrap());
        let loop_a = Multigraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        let loop_b = Multigraph::new(2, vec![(1, 1), (1, 0)]).unwrap();
        assert!(multigraph_isomorphic(&loop_a, &loop_b).unwrap());
    }

    #[test]
    fn iso_vertex_bound() {
        let big = Multigraph::new(21, vec![]).unwrap();
        assert!(matches!(
            multigraph_isomorphic(&big, &big),
            Err(MonodromyError::TooManyVertices { found: 21 })
        ));
    }
}
