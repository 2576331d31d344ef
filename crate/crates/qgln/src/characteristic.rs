//! The three characteristic matrices Abar, Atilde and A as n x n blocks of
//! operators on V(Lambda): construction, polynomial identities, projection
//! operators (full and subalgebra level), q-traces and partition checks.

use crate::matrix::Matrix;
use crate::patterns::{adjoint_root_value, adjoint_root_value_f64, root_value, root_value_f64, RootSet};
use crate::representations::{Irrep, Operators};
use crate::scalars::QRat;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharError {
    #[error("coincident characteristic roots {0} and {1}")]
    CoincidentRoots(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharKind {
    /// Adjoint matrix from R^T R with the vector representation.
    Abar,
    /// Alternative matrix from the inverse R-matrix pair.
    Atilde,
    /// Vector matrix from the pseudo-vector representation.
    A,
}

impl CharKind {
    pub fn name(&self) -> &'static str {
        match self {
            CharKind::Abar => "abar",
            CharKind::Atilde => "atilde",
            CharKind::A => "a",
        }
    }

    pub fn parse(s: &str) -> Option<CharKind> {
        match s.to_ascii_lowercase().as_str() {
            "abar" => Some(CharKind::Abar),
            "atilde" => Some(CharKind::Atilde),
            "a" => Some(CharKind::A),
            _ => None,
        }
    }
}

/// level x level array of operators on a dim-dimensional module.
#[derive(Debug, Clone)]
pub struct BlockMatrix {
    pub level: usize,
    pub dim: usize,
    blocks: Vec<Matrix<f64>>,
}

impl BlockMatrix {
    pub fn zeros(level: usize, dim: usize) -> Self {
        BlockMatrix {
            level,
            dim,
            blocks: vec![Matrix::zeros(dim, dim); level * level],
        }
    }

    pub fn identity(level: usize, dim: usize) -> Self {
        let mut m = BlockMatrix::zeros(level, dim);
        for i in 1..=level {
            *m.block_mut(i, i) = Matrix::identity(dim);
        }
        m
    }

    /// 1-based block access.
    pub fn block(&self, i: usize, j: usize) -> &Matrix<f64> {
        &self.blocks[(i - 1) * self.level + (j - 1)]
    }

    pub fn block_mut(&mut self, i: usize, j: usize) -> &mut Matrix<f64> {
        &mut self.blocks[(i - 1) * self.level + (j - 1)]
    }

    pub fn mul(&self, rhs: &BlockMatrix) -> BlockMatrix {
        assert_eq!(self.level, rhs.level);
        assert_eq!(self.dim, rhs.dim);
        let mut out = BlockMatrix::zeros(self.level, self.dim);
        for i in 1..=self.level {
            for j in 1..=self.level {
                let mut acc = Matrix::zeros(self.dim, self.dim);
                for k in 1..=self.level {
                    acc = &acc + &self.block(i, k).matmul(rhs.block(k, j));
                }
                *out.block_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &BlockMatrix) -> BlockMatrix {
        let mut out = self.clone();
        for (a, b) in out.blocks.iter_mut().zip(&rhs.blocks) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, rhs: &BlockMatrix) -> BlockMatrix {
        let mut out = self.clone();
        for (a, b) in out.blocks.iter_mut().zip(&rhs.blocks) {
            *a = &*a - b;
        }
        out
    }

    pub fn scale(&self, c: f64) -> BlockMatrix {
        BlockMatrix {
            level: self.level,
            dim: self.dim,
            blocks: self.blocks.iter().map(|b| b.scale(&c)).collect(),
        }
    }

    /// self - c * (identity block matrix)
    pub fn sub_scalar(&self, c: f64) -> BlockMatrix {
        let mut out = self.clone();
        for i in 1..=self.level {
            *out.block_mut(i, i) = out.block(i, i).sub_scaled_identity(c);
        }
        out
    }

    /// self - diag(d) acting per module state in every diagonal block.
    pub fn sub_state_diag(&self, d: &[f64]) -> BlockMatrix {
        assert_eq!(d.len(), self.dim);
        let mut out = self.clone();
        for i in 1..=self.level {
            let b = out.block_mut(i, i);
            for (s, v) in d.iter().enumerate() {
                let cur = *b.get(s, s) - v;
                b.set(s, s, cur);
            }
        }
        out
    }

    /// Right-multiply every block by diag(d) over module states.
    pub fn mul_state_diag_right(&self, d: &[f64]) -> BlockMatrix {
        BlockMatrix {
            level: self.level,
            dim: self.dim,
            blocks: self.blocks.iter().map(|b| b.mul_diag_right(d)).collect(),
        }
    }

    pub fn pow(&self, m: usize) -> BlockMatrix {
        let mut acc = BlockMatrix::identity(self.level, self.dim);
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn frobenius(&self) -> f64 {
        self.blocks.iter().map(|b| b.frobenius().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().fold(0.0, |m, b| m.max(b.max_abs()))
    }

    /// Dense (level*dim) square matrix, block index major.
    pub fn assembled(&self) -> Matrix<f64> {
        let nd = self.level * self.dim;
        Matrix::from_fn(nd, nd, |a, b| {
            let (i, s) = (a / self.dim, a % self.dim);
            let (j, t) = (b / self.dim, b % self.dim);
            *self.block(i + 1, j + 1).get(s, t)
        })
    }

    /// Block transpose combined with entrywise operator transpose; equals the
    /// adjoint at real q.
    pub fn adjoint(&self) -> BlockMatrix {
        let mut out = BlockMatrix::zeros(self.level, self.dim);
        for i in 1..=self.level {
            for j in 1..=self.level {
                *out.block_mut(i, j) = self.block(j, i).transpose();
            }
        }
        out
    }

    /// Weighted block trace sum_i w_i M_{ii}.
    pub fn weighted_trace(&self, w: &[f64]) -> Matrix<f64> {
        assert_eq!(w.len(), self.level);
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for i in 1..=self.level {
            acc = &acc + &self.block(i, i).scale(&w[i - 1]);
        }
        acc
    }
}

/// Exact characteristic roots attached to a weight row (row length = level).
pub fn char_roots_exact(kind: CharKind, row: &[i64]) -> Vec<QRat> {
    let roots = RootSet::of_row(row);
    match kind {
        CharKind::Abar => roots.alphabar.iter().map(|&x| adjoint_root_value(x)).collect(),
        CharKind::Atilde => roots.alphabar.iter().map(|&x| root_value(x)).collect(),
        CharKind::A => roots.alpha.iter().map(|&x| root_value(x)).collect(),
    }
}

pub fn char_roots_f64(kind: CharKind, row: &[i64], q: f64) -> Vec<f64> {
    let roots = RootSet::of_row(row);
    match kind {
        CharKind::Abar => roots.alphabar.iter().map(|&x| adjoint_root_value_f64(x, q)).collect(),
        CharKind::Atilde => roots.alphabar.iter().map(|&x| root_value_f64(x, q)).collect(),
        CharKind::A => roots.alpha.iter().map(|&x| root_value_f64(x, q)).collect(),
    }
}

/// Build the characteristic matrix of the given kind at subalgebra level
/// `level` (level = n is the full matrix); entries use only Uq(level)
/// operators, so lower levels give the embedded subalgebra matrices.
pub fn build_char_matrix(ops: &Operators, kind: CharKind, level: usize) -> BlockMatrix {
    let rep = ops.irrep;
    assert!(level >= 1 && level <= rep.n);
    let c = 1.0 / (rep.q - 1.0 / rep.q);
    let mut out = BlockMatrix::zeros(level, rep.dim);
    for i in 1..=level {
        for j in 1..=level {
            let mut sum = Matrix::zeros(rep.dim, rep.dim);
            match kind {
                CharKind::Abar => {
                    for k in i.max(j)..=level {
                        sum = &sum + &ops.hat_e(k, i).matmul(&ops.hat_e(j, k));
                    }
                }
                CharKind::Atilde => {
                    for k in 1..=i.min(j) {
                        sum = &sum + &ops.antipode_hat_e(k, i, -1).matmul(&ops.antipode_hat_e(j, k, 1));
                    }
                }
                CharKind::A => {
                    let w = rep.q.powi(i as i32 - j as i32); // q^{(rho, eps_j - eps_i)}
                    for k in 1..=i.min(j) {
                        sum = &sum
                            + &ops
                                .antipode_hat_e(i, k, -1)
                                .matmul(&ops.antipode_hat_e(k, j, -1))
                                .scale(&w);
                    }
                }
            }
            let mut block = sum.scale(&-c);
            if i == j {
                block = &block + &Matrix::identity(rep.dim).scale(&c);
            }
            *out.block_mut(i, j) = block;
        }
    }
    out
}

/// Frobenius norm of prod_r (M - a_r), evaluated left to right.
pub fn char_identity_residual(m: &BlockMatrix, roots: &[f64]) -> f64 {
    let mut acc = BlockMatrix::identity(m.level, m.dim);
    for &a in roots {
        acc = acc.mul(&m.sub_scalar(a));
    }
    acc.frobenius()
}

/// Lagrange projectors P_r = prod_{l != r} (M - a_l)/(a_r - a_l).
pub fn projectors(m: &BlockMatrix, roots: &[f64]) -> Result<Vec<BlockMatrix>, CharError> {
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            if i < j && (a - b).abs() < 1e-12 {
                return Err(CharError::CoincidentRoots(i + 1, j + 1));
            }
        }
    }
    let mut out = Vec::with_capacity(roots.len());
    for (r, &ar) in roots.iter().enumerate() {
        let mut acc = BlockMatrix::identity(m.level, m.dim);
        for (l, &al) in roots.iter().enumerate() {
            if l != r {
                acc = acc.mul(&m.sub_scalar(al)).scale(1.0 / (ar - al));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Per-state root diagonal: the r-th characteristic root of each basis
/// state's level-`level` row (kind selects the a / atilde family).
pub fn level_root_diag(irrep: &Irrep, kind: CharKind, level: usize, r: usize) -> Vec<f64> {
    irrep
        .basis
        .iter()
        .map(|p| {
            let row = p.row(level);
            match kind {
                CharKind::A => {
                    let alpha = row[r - 1] + level as i64 - r as i64;
                    root_value_f64(alpha, irrep.q)
                }
                CharKind::Atilde => {
                    let ab = row[r - 1] + 1 - r as i64;
                    root_value_f64(ab, irrep.q)
                }
                CharKind::Abar => {
                    let ab = row[r - 1] + 1 - r as i64;
                    adjoint_root_value_f64(ab, irrep.q)
                }
            }
        })
        .collect()
}

/// Subalgebra projector family built from a level-m characteristic matrix
/// with state-dependent roots; m0 must have been built at the same level.
pub fn subalgebra_projectors(irrep: &Irrep, kind: CharKind, m0: &BlockMatrix) -> Vec<BlockMatrix> {
    let level = m0.level;
    let diags: Vec<Vec<f64>> =
        (1..=level).map(|r| level_root_diag(irrep, kind, level, r)).collect();
    let mut out = Vec::with_capacity(level);
    for r in 0..level {
        let mut acc = BlockMatrix::identity(level, m0.dim);
        for l in 0..level {
            if l != r {
                let inv: Vec<f64> =
                    diags[r].iter().zip(&diags[l]).map(|(a, b)| 1.0 / (a - b)).collect();
                acc = acc.mul(&m0.sub_state_diag(&diags[l])).mul_state_diag_right(&inv);
            }
        }
        out.push(acc);
    }
    out
}

/// Weights q^{sign (2rho, eps_i)} with (2rho, eps_i) = level + 1 - 2i;
/// Atilde carries the +(2rho) weight, A and Abar the -(2rho) weight.
pub fn qtrace_weights(kind: CharKind, level: usize, q: f64) -> Vec<f64> {
    let sign = match kind {
        CharKind::Atilde => 1,
        _ => -1,
    };
    (1..=level)
        .map(|i| q.powi(sign * (level as i32 + 1 - 2 * i as i32)))
        .collect()
}

/// sum_i q^{-+(2rho, eps_i)} (M^power)_{ii} as an operator on the module.
pub fn qtrace_power(m: &BlockMatrix, kind: CharKind, power: usize, q: f64) -> Matrix<f64> {
    let w = qtrace_weights(kind, m.level, q);
    m.pow(power).weighted_trace(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::HighestWeight;
    use crate::representations::{build_irrep, DEFAULT_DIM_CAP};

    fn hw(v: &[i64]) -> HighestWeight {
        HighestWeight::new(v.to_vec()).unwrap()
    }

    const Q: f64 = 1.5;

    fn eval_roots(kind: CharKind, row: &[i64]) -> Vec<f64> {
        char_roots_f64(kind, row, Q)
    }

    #[test]
    fn trivial_module_matrices() {
        let rep = build_irrep(&hw(&[0, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        // Atilde and A vanish on the trivial module; Abar too (abar_1 = 0)
        for kind in [CharKind::Atilde, CharKind::A, CharKind::Abar] {
            let m = build_char_matrix(&ops, kind, 2);
            assert!(m.frobenius() < 1e-14, "{kind:?} nonzero on trivial module");
        }
    }

    #[test]
    fn characteristic_identities_vector_module() {
        let rep = build_irrep(&hw(&[1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        for kind in [CharKind::Atilde, CharKind::A, CharKind::Abar] {
            let m = build_char_matrix(&ops, kind, 2);
            let roots = eval_roots(kind, rep.hw.entries());
            let res = char_identity_residual(&m, &roots);
            assert!(res < 1e-10, "{kind:?} residual {res}");
            // wrong roots must not satisfy the identity on this module
            let wrong: Vec<f64> = roots.iter().map(|r| r + 1.0).collect();
            assert!(char_identity_residual(&m, &wrong) > 0.1, "{kind:?} perturbation");
        }
    }

    #[test]
    fn eigenvalue_multiplicities_vector_module() {
        // Atilde on V(1,0): eigenvalue atilde_1 = q^{-1} with multiplicity
        // dim V(2,0) = 3, eigenvalue atilde_2 = -q with multiplicity dim V(1,1) = 1
        let rep = build_irrep(&hw(&[1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        let m = build_char_matrix(&ops, CharKind::Atilde, 2);
        let roots = eval_roots(CharKind::Atilde, rep.hw.entries());
        let ps = projectors(&m, &roots).unwrap();
        let rank1 = ps[0].assembled().trace().round() as i64;
        let rank2 = ps[1].assembled().trace().round() as i64;
        assert_eq!((rank1, rank2), (3, 1));
        assert!((roots[0] - 1.0 / Q).abs() < 1e-12);
        assert!((roots[1] + Q).abs() < 1e-12);
    }

    #[test]
    fn projector_algebra() {
        let rep = build_irrep(&hw(&[2, 1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        for kind in [CharKind::Atilde, CharKind::A] {
            let m = build_char_matrix(&ops, kind, 3);
            let roots = eval_roots(kind, rep.hw.entries());
            let ps = projectors(&m, &roots).unwrap();
            let scale = 1e-9 * (3.0 * rep.dim as f64);
            // idempotent, orthogonal, complete, and eigen-projectors
            let mut sum = BlockMatrix::zeros(3, rep.dim);
            for (r, p) in ps.iter().enumerate() {
                assert!(p.mul(p).sub(p).frobenius() < scale);
                assert!(m.mul(p).sub(&p.scale(roots[r])).frobenius() < scale);
                for (l, p2) in ps.iter().enumerate() {
                    if l != r {
                        assert!(p.mul(p2).frobenius() < scale);
                    }
                }
                sum = sum.add(p);
            }
            assert!(sum.sub(&BlockMatrix::identity(3, rep.dim)).frobenius() < scale);
        }
    }

    #[test]
    fn blockwise_self_adjointness() {
        let rep = build_irrep(&hw(&[2, 1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        for kind in [CharKind::Atilde, CharKind::A] {
            let m = build_char_matrix(&ops, kind, 3);
            assert!(
                m.sub(&m.adjoint()).frobenius() < 1e-10 * (1.0 + m.frobenius()),
                "{kind:?} not blockwise self-adjoint"
            );
        }
    }

    #[test]
    fn abar_corner_is_subalgebra_invariant_but_block_structure_fails() {
        // The nn entry of Abar commutes with Uq(n-1); the upper-left block
        // nevertheless differs from the level-(n-1) matrix.
        let rep = build_irrep(&hw(&[2, 1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        let full = build_char_matrix(&ops, CharKind::Abar, 3);
        let corner = full.block(3, 3);
        for g in [rep.e(1), rep.f(1)] {
            assert!(corner.commutator(g).frobenius() < 1e-10);
        }
        let sub = build_char_matrix(&ops, CharKind::Abar, 2);
        let mut diff: f64 = 0.0;
        for i in 1..=2 {
            for j in 1..=2 {
                diff = diff.max((&full.block(i, j).clone() - sub.block(i, j)).frobenius());
            }
        }
        assert!(diff > 1e-3, "Abar unexpectedly partitions");
    }

    #[test]
    fn atilde_partitions_into_subalgebra_matrix() {
        for lam in [hw(&[2, 1, 0]), hw(&[1, 1, 0]), hw(&[2, 1, 1, 0])] {
            let rep = build_irrep(&lam, Q, DEFAULT_DIM_CAP).unwrap();
            let ops = Operators::new(&rep);
            let n = lam.n();
            for kind in [CharKind::Atilde, CharKind::A] {
                let full = build_char_matrix(&ops, kind, n);
                let sub = build_char_matrix(&ops, kind, n - 1);
                for i in 1..=n - 1 {
                    for j in 1..=n - 1 {
                        let d = (&full.block(i, j).clone() - sub.block(i, j)).frobenius();
                        assert!(d < 1e-10 * (1.0 + full.max_abs()), "{kind:?} block {i}{j} at {lam}: {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn a_diagonal_on_highest_weight_vector() {
        // A_ii v_+ = (1 - q^{-2 (Lambda, eps_i)})/(q - q^{-1}) v_+; the
        // highest weight state is the first basis vector in descending order
        for lam in [hw(&[2, 1, 0]), hw(&[1, 1, 0]), hw(&[2, 0])] {
            let rep = build_irrep(&lam, Q, DEFAULT_DIM_CAP).unwrap();
            assert_eq!(rep.weights[0], lam.entries().to_vec());
            let ops = Operators::new(&rep);
            let a = build_char_matrix(&ops, CharKind::A, lam.n());
            for i in 1..=lam.n() {
                let expect = crate::patterns::root_value_f64(lam.entry(i), Q);
                let col = a.block(i, i);
                assert!((col.get(0, 0) - expect).abs() < 1e-12, "A_{i}{i} eigenvalue at {lam}");
                for s in 1..rep.dim {
                    assert!(col.get(s, 0).abs() < 1e-12, "A_{i}{i} leaks off v_+ at {lam}");
                }
            }
        }
    }

    #[test]
    fn trivial_module_projectors() {
        // V_0 x V(0) = V(eps_1): the first Atilde projector is the identity
        let rep = build_irrep(&hw(&[0, 0, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        let m = build_char_matrix(&ops, CharKind::Atilde, 3);
        let roots = eval_roots(CharKind::Atilde, rep.hw.entries());
        let ps = projectors(&m, &roots).unwrap();
        assert!(ps[0].sub(&BlockMatrix::identity(3, 1)).frobenius() < 1e-12);
        for p in &ps[1..] {
            assert!(p.frobenius() < 1e-12);
        }
    }

    #[test]
    fn coincident_root_guard() {
        let rep = build_irrep(&hw(&[1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        let m = build_char_matrix(&ops, CharKind::Atilde, 2);
        let err = projectors(&m, &[0.5, 0.5]).unwrap_err();
        assert!(matches!(err, CharError::CoincidentRoots(1, 2)));
    }

    #[test]
    fn subalgebra_projector_family() {
        let rep = build_irrep(&hw(&[2, 1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        let m0 = build_char_matrix(&ops, CharKind::Atilde, 2);
        let ps = subalgebra_projectors(&rep, CharKind::Atilde, &m0);
        let scale = 1e-9 * (2.0 * rep.dim as f64);
        let mut sum = BlockMatrix::zeros(2, rep.dim);
        for p in &ps {
            assert!(p.mul(p).sub(p).frobenius() < scale);
            sum = sum.add(p);
        }
        assert!(sum.sub(&BlockMatrix::identity(2, rep.dim)).frobenius() < scale);
    }
}
