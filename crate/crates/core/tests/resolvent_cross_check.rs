//! The reduced resolvent of the delta Hamiltonian at the well, checked
//! against a finite-difference resolvent of the same operator.
//!
//! On the grid, the ground vector φ₀ (inverse iteration) is projected out
//! of the source and of the solution, so the ground-state pole drops out
//! even though λ₀ is only known to about `‖T‖·ε_machine`. Averaging the
//! shifts `λ₀ ± ε` leaves the reduced resolvent plus `O(ε²)`, which a
//! Richardson step in ε removes.

use magnion::delta_model::DeltaGround;
use magnion::oracle_fd::{FdGrid, Tridiagonal, EIGEN_TOLERANCE};

/// Grid reduced resolvent at `(a, a)` for cells of width `a/(m + ½)`, so
/// that the well sits on a cell centre.
fn grid_reduced_resolvent(g: &DeltaGround, m: usize) -> f64 {
    let a = g.half_separation;
    let h = a / (m as f64 + 0.5);
    let n = ((a + 30.0 / g.alpha) / h).ceil() as usize;
    let grid = FdGrid::new(n as f64 * h, n).unwrap();
    let mut t = Tridiagonal::schrodinger(&grid, &|_z: f64| 0.0);
    t.diag[m] -= 1.0 / h;
    let ground = t.lowest_eigenvalue(EIGEN_TOLERANCE);

    let mut phi = vec![1.0; n];
    for _ in 0..4 {
        phi = t.solve_shifted(ground - 1e-6, &phi).unwrap();
        let norm = phi.iter().map(|p| p * p).sum::<f64>().sqrt();
        phi.iter_mut().for_each(|p| *p /= norm);
    }
    let project = |v: &mut Vec<f64>| {
        let overlap: f64 = v.iter().zip(&phi).map(|(x, p)| x * p).sum();
        v.iter_mut().zip(&phi).for_each(|(x, p)| *x -= overlap * p);
    };

    let mut rhs = vec![0.0; n];
    rhs[m] = 1.0 / h;
    project(&mut rhs);
    let average = |eps: f64| {
        let mut up = t.solve_shifted(ground + eps, &rhs).unwrap();
        let mut down = t.solve_shifted(ground - eps, &rhs).unwrap();
        project(&mut up);
        project(&mut down);
        0.5 * (up[m] + down[m])
    };
    let eps = 1e-3;
    (4.0 * average(eps) - average(2.0 * eps)) / 3.0
}

#[test]
fn reduced_resolvent_at_the_well_matches_finite_differences() {
    let g = DeltaGround::solve(1.0).unwrap();
    let exact = g.reduced_resolvent().unwrap().eval(1.0, 1.0);

    let coarse = grid_reduced_resolvent(&g, 1000);
    let fine = grid_reduced_resolvent(&g, 2000);
    let gap_coarse = (coarse - exact).abs();
    let gap_fine = (fine - exact).abs();
    assert!(gap_fine < gap_coarse, "{coarse} {fine} vs {exact}");
    assert!(gap_fine < 1e-4, "{fine} vs {exact}");
    // Second-order convergence: extrapolating the pair lands much closer.
    let extrapolated = (4.0 * fine - coarse) / 3.0;
    assert!(
        (extrapolated - exact).abs() < 1e-6,
        "{extrapolated} vs {exact}"
    );
}

#[test]
fn reduced_resolvent_at_other_separations() {
    for a in [0.3, 3.0] {
        let g = DeltaGround::solve(a).unwrap();
        let exact = g.reduced_resolvent().unwrap().eval(a, a);
        let coarse = grid_reduced_resolvent(&g, 1000);
        let fine = grid_reduced_resolvent(&g, 2000);
        let extrapolated = (4.0 * fine - coarse) / 3.0;
        assert!(
            (extrapolated - exact).abs() < 1e-5,
            "a={a}: {extrapolated} vs {exact}"
        );
    }
}
