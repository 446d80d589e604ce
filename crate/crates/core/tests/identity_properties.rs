//! Structural properties of the determinant identities: double periodicity,
//! alternating symmetry, the degeneration that anchors the induction from n
//! to n-1, and the Abel-sum vanishing of the bordered determinant.

use num_complex::Complex64;
use sigmadet::{
    fs_matrix, fs_residual, hermite_residual, r_vanishing_check, CellSampler, Lattice,
    SquareMatrix, Weierstrass,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lattices() -> Vec<Lattice> {
    vec![
        Lattice::new(c(2.0, 0.0), c(0.0, 2.0)).unwrap(),
        Lattice::new(c(2.0, 0.0), c(1.0, 3f64.sqrt())).unwrap(),
        Lattice::new(c(2.0, 0.0), c(0.6, 2.2)).unwrap(),
    ]
}

fn fs_points(sampler: &mut CellSampler, count: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let points = sampler
        .safe_tuple(2 * count, |ps| {
            let (us, vs) = ps.split_at(count);
            let mut extra: Vec<Complex64> = us
                .iter()
                .flat_map(|&u| vs.iter().map(move |&v| u + v))
                .collect();
            extra.push(ps.iter().sum());
            extra
        })
        .unwrap()
        .expect("sampler budget");
    let (us, vs) = points.split_at(count);
    (us.to_vec(), vs.to_vec())
}

#[test]
fn jacobi_case_holds_at_one_hundred_samples() {
    // n = 1 of the bordered identity.
    let lat = Lattice::new(c(2.0, 0.0), c(0.0, 2.0)).unwrap();
    let w = Weierstrass::new(lat).unwrap();
    let mut sampler = CellSampler::new(lat, 17);
    for _ in 0..100 {
        let (us, vs) = fs_points(&mut sampler, 2);
        let report = fs_residual(&w, &us, &vs).unwrap();
        assert!(
            report.relative_residual < 1e-9,
            "residual {} at digest {}",
            report.relative_residual,
            report.inputs_digest
        );
    }
}

#[test]
fn bordered_determinant_is_doubly_periodic_in_each_argument() {
    for lat in lattices() {
        let w = Weierstrass::new(lat).unwrap();
        let mut sampler = CellSampler::new(lat, 23);
        let n = 2usize;
        let (us, vs) = fs_points(&mut sampler, n + 1);
        let base = -fs_matrix(&w, &us, &vs).unwrap().det().value;
        for index in 0..=n {
            for period in [lat.omega1(), lat.omega2()] {
                let mut shifted_us = us.clone();
                shifted_us[index] += period;
                let shifted = -fs_matrix(&w, &shifted_us, &vs).unwrap().det().value;
                assert!(
                    (shifted - base).norm() <= 1e-8 * base.norm(),
                    "u[{index}] + period changed det: {base} vs {shifted}"
                );
                let mut shifted_vs = vs.clone();
                shifted_vs[index] += period;
                let shifted = -fs_matrix(&w, &us, &shifted_vs).unwrap().det().value;
                assert!(
                    (shifted - base).norm() <= 1e-8 * base.norm(),
                    "v[{index}] + period changed det"
                );
            }
        }
    }
}

// Multiplying the last row by (u_n + v_n) and letting u_n -> -v_n collapses
// the n-instance onto the (n-1)-instance: scaled lhs_n -> lhs_(n-1).
#[test]
fn degeneration_connects_consecutive_orders() {
    for lat in lattices() {
        let w = Weierstrass::new(lat).unwrap();
        let mut sampler = CellSampler::new(lat, 31);
        for n in [1usize, 2, 3] {
            let (mut us, mut vs) = fs_points(&mut sampler, n);
            let lower = fs_residual(&w, &us, &vs).unwrap();

            let epsilon = lat.omega1() * 1e-6;
            let v_extra = sampler.safe_tuple(1, |_| vec![]).unwrap().unwrap()[0];
            us.push(-v_extra + epsilon);
            vs.push(v_extra);
            let full_det = -fs_matrix(&w, &us, &vs).unwrap().det().value;
            let scaled = epsilon * full_det;
            assert!(
                (scaled - lower.lhs).norm() <= 1e-4 * lower.lhs.norm(),
                "n = {n}: scaled {} vs lower-order {}",
                scaled,
                lower.lhs
            );
        }
    }
}

#[test]
fn hermite_lhs_alternates_exactly_under_row_swap() {
    let lat = Lattice::new(c(2.0, 0.0), c(0.6, 2.2)).unwrap();
    let w = Weierstrass::new(lat).unwrap();
    let mut sampler = CellSampler::new(lat, 37);
    let points = sampler
        .safe_tuple(4, |ps| vec![ps.iter().sum()])
        .unwrap()
        .unwrap();
    let matrix = SquareMatrix::from_fn(points.len(), |row, col| {
        if col == 0 {
            Ok(c(1.0, 0.0))
        } else {
            w.pe_derivative(points[row], col as u32 - 1)
        }
    })
    .unwrap();
    let mut swapped = matrix.clone();
    swapped.swap_rows(0, 2);
    let d = matrix.det().value;
    let ds = swapped.det().value;
    assert!((d + ds).norm() <= 1e-12 * d.norm());

    // The sigma side flips sign with the swap (sigma odd).
    let report = hermite_residual(&w, &points).unwrap();
    let mut swapped_points = points.clone();
    swapped_points.swap(0, 2);
    let swapped_report = hermite_residual(&w, &swapped_points).unwrap();
    assert!(
        (report.rhs + swapped_report.rhs).norm() <= 1e-10 * report.rhs.norm(),
        "rhs did not alternate: {} vs {}",
        report.rhs,
        swapped_report.rhs
    );
}

#[test]
fn abel_vanishing_across_lattices() {
    for lat in lattices() {
        let w = Weierstrass::new(lat).unwrap();
        let mut sampler = CellSampler::new(lat, 41);
        for _ in 0..10 {
            let points = sampler.safe_tuple(3, |_| vec![]).unwrap().unwrap();
            let rest = [points[0]];
            let vs = [points[1], points[2]];
            let Ok((_, value)) = r_vanishing_check(&w, &rest, &vs) else {
                // The constructed u_0 may land unsafely close to a pole;
                // that sample carries no information.
                continue;
            };
            assert!(value < 1e-9, "vanishing check {value}");
        }
    }
}
