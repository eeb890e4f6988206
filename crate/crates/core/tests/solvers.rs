mod common;

use common::{random_graphs, Named};
use lapmu_core::kernels::{normalize, p_norm, quadratic_form};
use lapmu_core::{
    kkt_residual, max_cut_bruteforce, mu_complete_bipartite, multistart, power_iterate,
    projected_gradient, threshold_cut, upper_bound, Generator, Method, SolverConfig,
};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

#[test]
fn single_edge_optimum() {
    let k2 = Generator::Complete(2).build().unwrap();
    for p in [1.5, 2.0, 3.0, 10.0] {
        let x0 = normalize(&[0.9, -0.4], p).unwrap();
        let est = if p < 2.0 {
            projected_gradient(&k2, p, &x0, &cfg()).unwrap()
        } else {
            power_iterate(&k2, p, &x0, &cfg()).unwrap()
        };
        let expected = 4.0 * 2f64.powf(-2.0 / p);
        assert!((est.value - expected).abs() < 1e-9, "p={p}: {}", est.value);
        assert!((est.x[0] + est.x[1]).abs() < 1e-6);
    }
}

#[test]
fn bipartite_optimizer_has_opposite_signs_on_the_sides() {
    for (s, t) in [(1, 3), (2, 5), (3, 3)] {
        let g = Generator::CompleteBipartite(s, t).build().unwrap();
        for p in [3.0, 6.0] {
            let est = multistart(&g, p, &cfg()).unwrap();
            let closed = mu_complete_bipartite(s, t, p).unwrap().value;
            assert!((est.value - closed).abs() <= 1e-6 * closed);
            let sign = est.x[0].signum();
            assert!(est.x[..s].iter().all(|v| v.signum() == sign));
            assert!(est.x[s..].iter().all(|v| v.signum() == -sign));
        }
    }
}

#[test]
fn estimates_lie_on_the_sphere_below_the_bound() {
    for Named { name, graph } in random_graphs() {
        for p in [1.5, 2.5, 4.0] {
            let est = multistart(&graph, p, &cfg()).unwrap();
            assert!((p_norm(&est.x, p).unwrap() - 1.0).abs() < 1e-9, "{name}");
            let f = quadratic_form(&graph, &est.x).unwrap();
            assert!((f - est.value).abs() <= 1e-12 * f.max(1.0), "{name}");
            if p >= 2.0 {
                assert!(est.value <= upper_bound(graph.n(), p).unwrap() + 1e-8, "{name}");
            }
            assert!(est.worst_decrease <= 1e-12, "{name}");
            let expected = if p < 2.0 {
                Method::ProjectedGradient
            } else {
                Method::PowerIteration
            };
            assert_eq!(est.method, expected);
        }
    }
}

#[test]
fn multistart_is_deterministic() {
    let g = Generator::Random {
        n: 11,
        edge_probability: 0.5,
        seed: 3,
    }
    .build()
    .unwrap();
    for p in [1.5, 3.0] {
        let a = multistart(&g, p, &cfg()).unwrap();
        let b = multistart(&g, p, &cfg()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.x, b.x);
        assert_eq!(a.iterations, b.iterations);
        let other = multistart(&g, p, &SolverConfig { seed: 99, ..cfg() }).unwrap();
        assert!((other.value - a.value).abs() < 1e-6);
    }
}

#[test]
fn converged_points_are_stationary() {
    for Named { name, graph } in random_graphs().into_iter().take(8) {
        for p in [1.5, 3.0] {
            let est = multistart(&graph, p, &cfg()).unwrap();
            assert!(est.converged, "{name}");
            let r = kkt_residual(&graph, p, &est.x).unwrap();
            assert!(r < 1e-6, "{name} p={p}: residual {r}");
            assert!((r - est.residual).abs() < 1e-15);
        }
    }
}

#[test]
fn large_p_rounds_to_a_maximum_cut() {
    for kind in [Generator::Cycle(7), Generator::Path(6), Generator::Complete(5)] {
        let g = kind.build().unwrap();
        let est = multistart(&g, 40.0, &cfg()).unwrap();
        let cut = threshold_cut(&g, &est.x).unwrap();
        assert_eq!(cut.cut_size, max_cut_bruteforce(&g).unwrap().cut_size, "{kind:?}");
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    let g = Generator::Path(3).build().unwrap();
    let x0 = normalize(&[1.0, 0.0, -1.0], 3.0).unwrap();
    assert!(power_iterate(&g, 3.0, &[1.0, 0.0, -1.0], &cfg()).is_err());
    assert!(power_iterate(&g, 3.0, &x0[..2], &cfg()).is_err());
    for bad in [
        SolverConfig { tol: 0.0, ..cfg() },
        SolverConfig { max_iter: 0, ..cfg() },
        SolverConfig { restarts: 0, ..cfg() },
        SolverConfig { step: -1.0, ..cfg() },
    ] {
        assert!(multistart(&g, 3.0, &bad).is_err());
    }
    assert!(multistart(&g, 1.0, &cfg()).is_err());
    assert!(multistart(&g, f64::INFINITY, &cfg()).is_err());
}
