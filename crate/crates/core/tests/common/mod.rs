//! Shared graph corpus for the integration and acceptance suites.

#![allow(dead_code)]

use lapmu_core::{Generator, Graph};

pub struct Named {
    pub name: String,
    pub graph: Graph,
}

fn named(kind: Generator) -> Named {
    Named {
        name: format!("{kind:?}"),
        graph: kind.build().expect("corpus generator"),
    }
}

/// Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Every named family at sizes up to 12.
pub fn named_graphs() -> Vec<Named> {
    use Generator::*;
    let mut out = Vec::new();
    for n in [2, 3, 4, 5, 6, 7, 8, 10, 12] {
        out.push(named(Complete(n)));
    }
    for (s, t) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (2, 5), (3, 5), (4, 4), (5, 5), (6, 6)] {
        out.push(named(CompleteBipartite(s, t)));
    }
    for n in [2, 3, 4, 5, 6, 8, 12] {
        out.push(named(Path(n)));
    }
    for n in [3, 4, 5, 6, 7, 8, 9, 12] {
        out.push(named(Cycle(n)));
    }
    for k in [3, 5, 11] {
        out.push(named(Star(k)));
    }
    out.push(Named {
        name: "Petersen".into(),
        graph: petersen(),
    });
    out
}

/// Twenty seeded random graphs with `n <= 12`, probabilities cycling through
/// 0.3, 0.5, 0.8. A draw without edges moves on to the next seed.
pub fn random_graphs() -> Vec<Named> {
    let probs = [0.3, 0.5, 0.8];
    let mut out = Vec::new();
    let mut seed = 1000u64;
    for i in 0..20 {
        let n = 4 + (i % 9);
        let edge_probability = probs[i % 3];
        loop {
            let kind = Generator::Random {
                n,
                edge_probability,
                seed,
            };
            seed += 1;
            let g = kind.build().unwrap();
            if g.edge_count() > 0 {
                out.push(Named {
                    name: format!("{kind:?}"),
                    graph: g,
                });
                break;
            }
        }
    }
    out
}

pub fn corpus() -> Vec<Named> {
    let mut c = named_graphs();
    c.extend(random_graphs());
    c
}
