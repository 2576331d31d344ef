//! Independent dense eigensolve oracle: nalgebra's symmetric eigensolver
//! recomputes the spectra of the assembled characteristic matrices and the
//! results are compared against the closed-form root multisets and against
//! the in-crate Jacobi solver used by the verification suites.

use nalgebra::DMatrix;
use qgln::characteristic::{build_char_matrix, char_roots_f64, CharKind};
use qgln::patterns::{weyl_dim, HighestWeight};
use qgln::representations::{build_irrep, Operators};
use qgln::verification::jacobi_eigenvalues;

const Q: f64 = 1.5;

fn to_na(m: &qgln::Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| *m.get(i, j))
}

fn expected_spectrum(kind: CharKind, hw: &HighestWeight) -> Vec<f64> {
    let roots = char_roots_f64(kind, hw.entries(), Q);
    let delta = if kind == CharKind::A { -1 } else { 1 };
    let mut out = Vec::new();
    for (r, &v) in roots.iter().enumerate() {
        let mult = hw
            .shifted(r + 1, delta)
            .map(|w| weyl_dim(&w))
            .unwrap_or(0);
        for _ in 0..mult {
            out.push(v);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn spectra_match_tensor_decomposition() {
    for entries in [vec![1, 0], vec![2, 1, 0], vec![1, 1, 0], vec![2, 1, 1, 0]] {
        let hw = HighestWeight::new(entries).unwrap();
        let rep = build_irrep(&hw, Q, 2000).unwrap();
        let ops = Operators::new(&rep);
        for kind in [CharKind::Atilde, CharKind::A, CharKind::Abar] {
            let assembled = build_char_matrix(&ops, kind, hw.n()).assembled();
            let na = to_na(&assembled);
            // symmetric at real q in the Gelfand-Tsetlin basis
            assert!((na.clone() - na.transpose()).norm() < 1e-9);
            let mut eigs: Vec<f64> =
                na.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            eigs.sort_by(f64::total_cmp);
            let expect = expected_spectrum(kind, &hw);
            assert_eq!(eigs.len(), expect.len());
            for (a, b) in eigs.iter().zip(&expect) {
                assert!((a - b).abs() < 1e-9, "{kind:?} on {hw}: {a} vs {b}");
            }
            // the in-crate Jacobi solver agrees with nalgebra
            let mut jac = jacobi_eigenvalues(&assembled);
            jac.sort_by(f64::total_cmp);
            for (a, b) in jac.iter().zip(&eigs) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}
