//! Small fixture graphs. Planar members carry clockwise rotation systems read
//! off a straight-line (or, for parallel edges, hand-drawn) plane embedding.

use crate::graph::{HalfEdge, Multigraph};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: Multigraph,
    /// Rotation is the clockwise order of a plane embedding.
    pub plane_clockwise: bool,
    /// Proper edge colourings of the regular graph all share one sign under
    /// the attached rotation (asserted, never computed).
    pub pfaffian_compatible: bool,
}

fn h(edge: usize, end: u8) -> HalfEdge {
    HalfEdge::new(edge, end)
}

/// Clockwise rotation of a straight-line drawing without parallel edges.
fn clockwise(graph: Multigraph, coords: &[(f64, f64)]) -> Multigraph {
    let orders = (0..graph.vertex_count())
        .map(|v| {
            let mut around: Vec<(f64, HalfEdge)> = graph
                .half_edges_at(v)
                .iter()
                .map(|&he| {
                    let w = graph.vertex_of(he.twin());
                    let (dx, dy) = (coords[w].0 - coords[v].0, coords[w].1 - coords[v].1);
                    (dy.atan2(dx), he)
                })
                .collect();
            around.sort_by(|a, b| b.0.total_cmp(&a.0));
            around.into_iter().map(|(_, he)| he).collect()
        })
        .collect();
    graph.with_rotation(orders).expect("rotation from drawing covers every block")
}

fn lexicographic(graph: Multigraph) -> Multigraph {
    let orders = (0..graph.vertex_count()).map(|v| graph.half_edges_at(v).to_vec()).collect();
    graph.with_rotation(orders).expect("lexicographic rotation is valid")
}

pub fn single_edge() -> Multigraph {
    lexicographic(Multigraph::new(2, vec![(0, 1)]).unwrap())
}

pub fn single_loop() -> Multigraph {
    Multigraph::new(1, vec![(0, 0)]).unwrap().with_rotation(vec![vec![h(0, 0), h(0, 1)]]).unwrap()
}

/// Two vertices, two parallel edges, oriented as a directed 2-cycle.
pub fn digon() -> Multigraph {
    Multigraph::new(2, vec![(0, 1), (1, 0)])
        .unwrap()
        .with_rotation(vec![vec![h(0, 0), h(1, 1)], vec![h(1, 0), h(0, 1)]])
        .unwrap()
}

/// Oriented cyclically 0 → 1 → 2 → 0.
pub fn triangle() -> Multigraph {
    let g = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
    clockwise(g, &[(0.0, 1.0), (-0.87, -0.5), (0.87, -0.5)])
}

pub fn c4() -> Multigraph {
    let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    clockwise(g, &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

/// Two vertices joined by three parallel edges.
pub fn theta() -> Multigraph {
    Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)])
        .unwrap()
        .with_rotation(vec![vec![h(0, 0), h(1, 0), h(2, 0)], vec![h(2, 1), h(1, 1), h(0, 1)]])
        .unwrap()
}

pub fn k4() -> Multigraph {
    let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    clockwise(g, &[(0.0, 0.0), (0.0, 2.0), (-1.7, -1.0), (1.7, -1.0)])
}

pub fn prism() -> Multigraph {
    let g = Multigraph::new(
        6,
        vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    clockwise(
        g,
        &[(0.0, 3.0), (-2.6, -1.5), (2.6, -1.5), (0.0, 1.0), (-0.87, -0.5), (0.87, -0.5)],
    )
}

pub fn k33() -> Multigraph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    lexicographic(Multigraph::new(6, edges).unwrap())
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    lexicographic(Multigraph::new(10, edges).unwrap())
}

pub fn fixtures() -> Vec<Fixture> {
    let f = |name, graph, plane_clockwise: bool| Fixture {
        name,
        graph,
        plane_clockwise,
        pfaffian_compatible: plane_clockwise,
    };
    vec![
        f("edge", single_edge(), true),
        f("loop", single_loop(), false),
        f("digon", digon(), true),
        f("triangle", triangle(), true),
        f("c4", c4(), true),
        f("theta", theta(), true),
        f("k4", k4(), true),
        f("prism", prism(), true),
        f("k33", k33(), false),
        f("petersen", petersen(), false),
    ]
}

pub fn all() -> Vec<(&'static str, Multigraph)> {
    fixtures().into_iter().map(|f| (f.name, f.graph)).collect()
}

pub fn by_name(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}
