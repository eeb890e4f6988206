mod common;

use common::{corpus, petersen, Named};
use lapmu_core::{
    grid_oracle, has_spanning_balanced_biclique, max_cut_bruteforce, mu_complete_bipartite,
    mu_one, mu_two, Generator, Graph,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for &(a, b) in g.edges() {
        m[(a, a)] += 1.0;
        m[(b, b)] += 1.0;
        m[(a, b)] -= 1.0;
        m[(b, a)] -= 1.0;
    }
    m
}

fn top_eigenvalue(g: &Graph) -> f64 {
    dense_laplacian(g)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn mu_two_matches_dense_eigensolver() {
    for Named { name, graph } in corpus() {
        let est = mu_two(&graph).unwrap();
        let reference = top_eigenvalue(&graph);
        assert!(
            (est.value - reference).abs() <= 1e-9 * reference.max(1.0),
            "{name}: {} vs {reference}",
            est.value
        );
        assert!(est.converged, "{name}");
    }
}

#[test]
fn mu_two_eigenvector_is_consistent() {
    for Named { name, graph } in corpus() {
        let est = mu_two(&graph).unwrap();
        let norm: f64 = est.vector.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-9, "{name}");
        let rq = lapmu_core::kernels::quadratic_form(&graph, &est.vector).unwrap();
        assert!((rq - est.value).abs() < 1e-8, "{name}");
    }
}

#[test]
fn known_spectra() {
    for n in 2..=12 {
        let k = Generator::Complete(n).build().unwrap();
        assert!((mu_two(&k).unwrap().value - n as f64).abs() < 1e-9);
        let star = Generator::Star(n).build().unwrap();
        assert!((mu_two(&star).unwrap().value - (n + 1) as f64).abs() < 1e-9);
    }
    let p = petersen();
    assert!((mu_two(&p).unwrap().value - 5.0).abs() < 1e-9);
    assert_eq!(max_cut_bruteforce(&p).unwrap().cut_size, 12);
}

fn brute_biclique(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 || n % 2 == 1 {
        return false;
    }
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == n / 2 && m & 1 == 1)
        .any(|m| {
            (0..n).all(|i| {
                (0..n).all(|j| (m >> i) & 1 == 1 || (m >> j) & 1 == 0 || g.has_edge(i, j))
            })
        })
}

#[test]
fn biclique_certificate_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut positives = 0;
    for trial in 0..600 {
        let n = 2 + trial % 9;
        let prob = [0.5, 0.75, 0.9][trial % 3];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < prob {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        let expected = brute_biclique(&g);
        positives += expected as usize;
        assert_eq!(has_spanning_balanced_biclique(&g), expected, "{:?}", g.edges());
    }
    assert!(positives > 20, "too few positive instances: {positives}");
}

#[test]
fn closed_form_agrees_with_eigenvalue_and_is_symmetric() {
    for s in 1..=6 {
        for t in 1..=6 {
            let g = Generator::CompleteBipartite(s, t).build().unwrap();
            let closed = mu_complete_bipartite(s, t, 2.0).unwrap().value;
            assert!((closed - (s + t) as f64).abs() < 1e-9, "K_{s},{t}");
            assert!((closed - mu_two(&g).unwrap().value).abs() < 1e-9);
            for p in [2.0, 3.0, 7.5, 40.0] {
                let a = mu_complete_bipartite(s, t, p).unwrap();
                let b = mu_complete_bipartite(t, s, p).unwrap();
                assert!((a.value - b.value).abs() <= 1e-12 * a.value, "K_{s},{t} p={p}");
                let x = a.vector();
                let f = lapmu_core::kernels::quadratic_form(&g, &x).unwrap();
                assert!((f - a.value).abs() <= 1e-9 * a.value);
            }
        }
    }
    assert!(mu_complete_bipartite(2, 3, 1.5).is_err());
}

#[test]
fn exact_oracle_ordering() {
    for Named { name, graph } in corpus() {
        let n = graph.n() as f64;
        let mu1 = mu_one(&graph).unwrap().value as f64;
        let mu2 = mu_two(&graph).unwrap().value;
        let mu_inf = 4.0 * max_cut_bruteforce(&graph).unwrap().cut_size as f64;
        assert!(mu1 < mu2 + 1e-12, "{name}");
        assert!(mu2 <= n + 1e-9, "{name}");
        assert!(mu_inf >= mu2 - 1e-9, "{name}");
        assert!(mu_inf <= n * n, "{name}");
    }
}

#[test]
fn grid_oracle_brackets_exact_values() {
    for kind in [Generator::Complete(3), Generator::Path(4), Generator::Star(3)] {
        let g = kind.build().unwrap();
        let grid = grid_oracle(&g, 2.0, 101).unwrap();
        let exact = mu_two(&g).unwrap().value;
        assert!(grid <= exact + 1e-12, "{kind:?}");
        assert!(exact - grid < 2e-2, "{kind:?}");
    }
    let big = Generator::Path(5).build().unwrap();
    assert!(grid_oracle(&big, 2.0, 101).is_err());
}
