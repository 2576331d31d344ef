//! Generator matrices of Uq(gl(n)) on V(Lambda) in the Gelfand-Tsetlin basis,
//! plus the composite operators E_{ij}, E'_{ij}, Ehat_{ij} and their antipode
//! images needed by the characteristic matrices.
//!
//! Matrix elements of e_m and f_m are square roots, so generator matrices
//! live in the numeric backend; their exact squares are available separately
//! for cross-checks and the classical limit.

use crate::matrix::Matrix;
use crate::patterns::{enumerate_patterns, GTPattern, HighestWeight, RootSet};
use crate::scalars::{qnumber, qnumber_f64, HalfInt, QRat};
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("module dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: u64, cap: u64 },
    #[error("numeric backend needs q > 0 and q != 1, got {0}")]
    BadQ(f64),
}

/// Exact squared matrix element of e_m: |<p + eps_{r,m}| e_m |p>|^2.
///
/// Computed as the sign-correct invariant product mu~ w~ for the row data of
/// p, with the q-power prefactor that normalises the generator (rather than
/// the characteristic-matrix entry); after the root-to-bracket rewrite the
/// q-powers cancel and the value is (-1)^m times the bracket product.
/// Invalid raises return exact zero.
pub fn squared_raise(p: &GTPattern, r: usize, m: usize) -> QRat {
    assert!(r >= 1 && r <= m && m < p.n(), "need 1 <= r <= m < n");
    if p.raise(r, m).is_none() {
        return QRat::zero();
    }
    let up = RootSet::of_row(p.row(m + 1)).alphabar;
    let mid = RootSet::of_row(p.row(m)).alphabar;
    let ab_r = mid[r - 1];
    let mut num = QRat::one();
    for &ab in &up {
        num = &num * &qnumber(ab - ab_r);
    }
    if m >= 2 {
        for &ab in &RootSet::of_row(p.row(m - 1)).alphabar {
            num = &num * &qnumber(ab_r - ab + 1);
        }
    }
    let mut den = QRat::one();
    for (l, &ab) in mid.iter().enumerate() {
        if l != r - 1 {
            den = &den * &qnumber(ab_r - ab + 1);
            den = &den * &qnumber(ab_r - ab);
        }
    }
    let signed = &num / &den;
    if m % 2 == 0 {
        signed
    } else {
        -&signed
    }
}

/// Exact squared matrix element of f_m: |<p - eps_{r,m}| f_m |p>|^2,
/// from the plain-root invariant product mu w. Invalid lowers return zero.
pub fn squared_lower(p: &GTPattern, r: usize, m: usize) -> QRat {
    assert!(r >= 1 && r <= m && m < p.n(), "need 1 <= r <= m < n");
    if p.lower(r, m).is_none() {
        return QRat::zero();
    }
    let up = RootSet::of_row(p.row(m + 1)).alpha;
    let mid = RootSet::of_row(p.row(m)).alpha;
    let a_r = mid[r - 1];
    let mut num = QRat::one();
    for &a in &up {
        num = &num * &qnumber(a - a_r);
    }
    if m >= 2 {
        for &a in &RootSet::of_row(p.row(m - 1)).alpha {
            num = &num * &qnumber(a_r - a - 1);
        }
    }
    let mut den = QRat::one();
    for (l, &a) in mid.iter().enumerate() {
        if l != r - 1 {
            den = &den * &qnumber(a_r - a);
            den = &den * &qnumber(a_r - a - 1);
        }
    }
    let signed = &num / &den;
    if m % 2 == 0 {
        signed
    } else {
        -&signed
    }
}

/// (-1)^m prod_k [up_k - x] prod_l [x - dn_l + shift] / prod_{l != r} [x - mid_l + shift][x - mid_l]
/// with x = mid[r-1]; shift = +1 for the raise (alphabar) route, -1 for the
/// lower (alpha) route.
fn bracket_product_f64(q: f64, up: &[i64], mid: &[i64], down: Option<&[i64]>, r: usize, shift: i64, m: usize) -> f64 {
    let x = mid[r - 1];
    let mut val = 1.0;
    for &u in up {
        val *= qnumber_f64(u - x, q);
    }
    if let Some(dn) = down {
        for &d in dn {
            val *= qnumber_f64(x - d + shift, q);
        }
    }
    for (l, &mm) in mid.iter().enumerate() {
        if l != r - 1 {
            val /= qnumber_f64(x - mm + shift, q) * qnumber_f64(x - mm, q);
        }
    }
    if m % 2 == 1 {
        val = -val;
    }
    val
}

/// Numeric squared matrix element of e_m at real q (the raise route).
pub fn squared_raise_f64(p: &GTPattern, r: usize, m: usize, q: f64) -> f64 {
    if p.raise(r, m).is_none() {
        return 0.0;
    }
    let up = RootSet::of_row(p.row(m + 1)).alphabar;
    let mid = RootSet::of_row(p.row(m)).alphabar;
    let down = (m >= 2).then(|| RootSet::of_row(p.row(m - 1)).alphabar);
    bracket_product_f64(q, &up, &mid, down.as_deref(), r, 1, m)
}

/// Numeric squared matrix element of f_m at real q (the lower route).
pub fn squared_lower_f64(p: &GTPattern, r: usize, m: usize, q: f64) -> f64 {
    if p.lower(r, m).is_none() {
        return 0.0;
    }
    let up = RootSet::of_row(p.row(m + 1)).alpha;
    let mid = RootSet::of_row(p.row(m)).alpha;
    let down = (m >= 2).then(|| RootSet::of_row(p.row(m - 1)).alpha);
    bracket_product_f64(q, &up, &mid, down.as_deref(), r, -1, m)
}

/// The exact invariant product mu~_{r,m} w~_{r,m} on the rows of p, assembled
/// literally from characteristic root values (the raise route of the
/// characteristic-matrix element). Zero on invalid raises.
pub fn mu_omega_tilde_product(p: &GTPattern, r: usize, m: usize) -> QRat {
    if p.raise(r, m).is_none() {
        return QRat::zero();
    }
    let t = crate::patterns::root_value;
    let q2 = crate::scalars::qpow(HalfInt::from_int(2));
    let up = RootSet::of_row(p.row(m + 1)).alphabar;
    let mid = RootSet::of_row(p.row(m)).alphabar;
    let a_r = t(mid[r - 1]);
    let mut num = QRat::one();
    for &ab in &up {
        num = &num * &(&t(ab) - &a_r);
    }
    if m >= 2 {
        for &ab in &RootSet::of_row(p.row(m - 1)).alphabar {
            // a_r - q^2 a_l + q
            let factor = &(&a_r - &(&q2 * &t(ab))) + &crate::scalars::qpow(HalfInt::from_int(1));
            num = &num * &factor;
        }
    }
    let mut den = QRat::one();
    for (l, &ab) in mid.iter().enumerate() {
        if l != r - 1 {
            let f1 = &(&a_r - &(&q2 * &t(ab))) + &crate::scalars::qpow(HalfInt::from_int(1));
            let f2 = &a_r - &t(ab);
            den = &den * &(&f1 * &f2);
        }
    }
    let signed = &num / &den;
    if m % 2 == 0 {
        signed
    } else {
        -&signed
    }
}

/// The exact invariant product mu_{r,m} w_{r,m} (plain roots, lower route).
pub fn mu_omega_product(p: &GTPattern, r: usize, m: usize) -> QRat {
    if p.lower(r, m).is_none() {
        return QRat::zero();
    }
    let t = crate::patterns::root_value;
    let qm2 = crate::scalars::qpow(HalfInt::from_int(-2));
    let qm1 = crate::scalars::qpow(HalfInt::from_int(-1));
    let up = RootSet::of_row(p.row(m + 1)).alpha;
    let mid = RootSet::of_row(p.row(m)).alpha;
    let a_r = t(mid[r - 1]);
    let mut num = QRat::one();
    for &a in &up {
        num = &num * &(&t(a) - &a_r);
    }
    if m >= 2 {
        for &a in &RootSet::of_row(p.row(m - 1)).alpha {
            // a_r - q^{-2} a_l - q^{-1}
            let factor = &(&a_r - &(&qm2 * &t(a))) - &qm1;
            num = &num * &factor;
        }
    }
    let mut den = QRat::one();
    for (l, &a) in mid.iter().enumerate() {
        if l != r - 1 {
            let f1 = &(&a_r - &(&qm2 * &t(a))) - &qm1;
            let f2 = &a_r - &t(a);
            den = &den * &(&f1 * &f2);
        }
    }
    let signed = &num / &den;
    if m % 2 == 0 {
        signed
    } else {
        -&signed
    }
}

/// q-power exponent relating the invariant products to generator squares:
/// N^2 = q^e mu~w~ with e = 4 alphabar_{r,m} - 1 - (nu_m - nu_{m+1}).
pub fn raise_prefactor_exponent(p: &GTPattern, r: usize, m: usize) -> i64 {
    let nu = p.weight();
    let ab = RootSet::of_row(p.row(m)).alphabar[r - 1];
    4 * ab - 1 - (nu[m - 1] - nu[m])
}

/// Nbar^2 = q^e mu w with e = 4 alpha_{r,m} + 1 - (nu_m - nu_{m+1}).
pub fn lower_prefactor_exponent(p: &GTPattern, r: usize, m: usize) -> i64 {
    let nu = p.weight();
    let a = RootSet::of_row(p.row(m)).alpha[r - 1];
    4 * a + 1 - (nu[m - 1] - nu[m])
}

/// Matrix element <raise(p,r,m)| e_m |p> with the positive phase convention.
pub fn matrix_element_e(p: &GTPattern, r: usize, m: usize, q: f64) -> f64 {
    let sq = squared_raise_f64(p, r, m, q);
    assert!(
        sq > -1e-9,
        "negative squared raise coefficient {sq} at p={p}, r={r}, m={m}: convention bug"
    );
    sq.max(0.0).sqrt()
}

/// Matrix element <lower(p,r,m)| f_m |p> with the positive phase convention.
pub fn matrix_element_f(p: &GTPattern, r: usize, m: usize, q: f64) -> f64 {
    let sq = squared_lower_f64(p, r, m, q);
    assert!(
        sq > -1e-9,
        "negative squared lower coefficient {sq} at p={p}, r={r}, m={m}: convention bug"
    );
    sq.max(0.0).sqrt()
}

/// An irreducible Uq(gl(n)) module in the Gelfand-Tsetlin basis at fixed
/// numeric q: generator matrices e_m, f_m and the diagonal weight data.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub hw: HighestWeight,
    pub n: usize,
    pub q: f64,
    pub s: f64,
    pub dim: usize,
    pub basis: Vec<GTPattern>,
    pub weights: Vec<Vec<i64>>,
    index: HashMap<GTPattern, usize>,
    e_ops: Vec<Matrix<f64>>,
    f_ops: Vec<Matrix<f64>>,
}

pub const DEFAULT_DIM_CAP: u64 = 2000;

/// Build every generator matrix of V(hw) at numeric q.
pub fn build_irrep(hw: &HighestWeight, q: f64, dim_cap: u64) -> Result<Irrep, RepError> {
    if q <= 0.0 || q == 1.0 {
        return Err(RepError::BadQ(q));
    }
    let dim_w = crate::patterns::weyl_dim(hw);
    if dim_w > dim_cap {
        return Err(RepError::DimensionCap { dim: dim_w, cap: dim_cap });
    }
    let n = hw.n();
    let basis = enumerate_patterns(hw);
    let dim = basis.len();
    let weights: Vec<Vec<i64>> = basis.iter().map(|p| p.weight()).collect();
    let index: HashMap<GTPattern, usize> =
        basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

    let mut e_ops = Vec::with_capacity(n - 1);
    let mut f_ops = Vec::with_capacity(n - 1);
    for m in 1..n {
        let mut e = Matrix::zeros(dim, dim);
        let mut f = Matrix::zeros(dim, dim);
        for (col, p) in basis.iter().enumerate() {
            for r in 1..=m {
                if let Some(up) = p.raise(r, m) {
                    let row = index[&up];
                    e.set(row, col, matrix_element_e(p, r, m, q));
                }
                if let Some(dn) = p.lower(r, m) {
                    let row = index[&dn];
                    f.set(row, col, matrix_element_f(p, r, m, q));
                }
            }
        }
        e_ops.push(e);
        f_ops.push(f);
    }
    Ok(Irrep {
        hw: hw.clone(),
        n,
        q,
        s: q.sqrt(),
        dim,
        basis,
        weights,
        index,
        e_ops,
        f_ops,
    })
}

impl Irrep {
    pub fn index_of(&self, p: &GTPattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// e_m, 1 <= m < n.
    pub fn e(&self, m: usize) -> &Matrix<f64> {
        &self.e_ops[m - 1]
    }

    /// f_m, 1 <= m < n.
    pub fn f(&self, m: usize) -> &Matrix<f64> {
        &self.f_ops[m - 1]
    }

    /// Diagonal matrix q^{f(nu)} over basis weights, f valued in half-integers.
    pub fn qdiag(&self, f: impl Fn(&[i64]) -> HalfInt) -> Matrix<f64> {
        Matrix::diag(&self.qdiag_entries(f))
    }

    pub fn qdiag_entries(&self, f: impl Fn(&[i64]) -> HalfInt) -> Vec<f64> {
        self.weights
            .iter()
            .map(|w| {
                let h = f(w);
                match h.as_integer() {
                    Some(k) => self.q.powi(k as i32),
                    None => self.s.powi(h.twice() as i32),
                }
            })
            .collect()
    }

    /// q^{E_ii} (1-based i).
    pub fn kdiag(&self, i: usize) -> Matrix<f64> {
        self.qdiag(|w| HalfInt::from_int(w[i - 1]))
    }

    pub fn kdiag_inv(&self, i: usize) -> Matrix<f64> {
        self.qdiag(|w| HalfInt::from_int(-w[i - 1]))
    }

    /// q^{+-h_m/2} with h_m = E_mm - E_{m+1,m+1}.
    pub fn half_cartan(&self, m: usize, sign: i64) -> Matrix<f64> {
        self.qdiag(|w| HalfInt::half(sign * (w[m - 1] - w[m])))
    }

    pub fn zero_op(&self) -> Matrix<f64> {
        Matrix::zeros(self.dim, self.dim)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum OpKey {
    E(usize, usize),
    EPrime(usize, usize),
    AntipodeE(usize, usize, i8),
}

/// Memoised composite-operator workspace over one irrep.
pub struct Operators<'a> {
    pub irrep: &'a Irrep,
    cache: RefCell<HashMap<OpKey, Matrix<f64>>>,
}

impl<'a> Operators<'a> {
    pub fn new(irrep: &'a Irrep) -> Self {
        Operators { irrep, cache: RefCell::new(HashMap::new()) }
    }

    fn cached(&self, key: OpKey, build: impl FnOnce(&Self) -> Matrix<f64>) -> Matrix<f64> {
        if let Some(m) = self.cache.borrow().get(&key) {
            return m.clone();
        }
        let m = build(self);
        self.cache.borrow_mut().insert(key, m.clone());
        m
    }

    /// E_{ij} = E_{ik}E_{kj} - q^{-1}E_{kj}E_{ik}, pivot k adjacent to j.
    pub fn composite_e(&self, i: usize, j: usize) -> Matrix<f64> {
        assert_ne!(i, j);
        self.cached(OpKey::E(i, j), |ops| ops.composite_with_pivot(i, j, None, false))
    }

    /// Same recursion with an explicit pivot, used by the pivot-independence test.
    pub fn composite_e_pivot(&self, i: usize, j: usize, k: usize) -> Matrix<f64> {
        self.composite_with_pivot(i, j, Some(k), false)
    }

    /// E'_{ij} = E'_{ik}E'_{kj} - q E'_{kj}E'_{ik}.
    pub fn composite_eprime(&self, i: usize, j: usize) -> Matrix<f64> {
        assert_ne!(i, j);
        self.cached(OpKey::EPrime(i, j), |ops| ops.composite_with_pivot(i, j, None, true))
    }

    fn composite_with_pivot(&self, i: usize, j: usize, pivot: Option<usize>, primed: bool) -> Matrix<f64> {
        let rep = self.irrep;
        if i + 1 == j {
            return rep.e(i).clone();
        }
        if i == j + 1 {
            return rep.f(j).clone();
        }
        let k = pivot.unwrap_or(if i < j { j - 1 } else { j + 1 });
        assert!((i < k && k < j) || (j < k && k < i), "pivot must lie strictly between i and j");
        let (ik, kj) = if pivot.is_some() {
            (self.composite_with_pivot(i, k, None, primed), self.composite_with_pivot(k, j, None, primed))
        } else if primed {
            (self.composite_eprime(i, k), self.composite_eprime(k, j))
        } else {
            (self.composite_e(i, k), self.composite_e(k, j))
        };
        let coeff = if primed { rep.q } else { 1.0 / rep.q };
        &ik.matmul(&kj) - &kj.matmul(&ik).scale(&coeff)
    }

    /// pi(S^{+1}(E_{ij})) or pi(S^{-1}(E_{ij})) by the anti-homomorphism recursion.
    pub fn antipode_e(&self, i: usize, j: usize, power: i8) -> Matrix<f64> {
        assert_ne!(i, j);
        assert!(power == 1 || power == -1);
        self.cached(OpKey::AntipodeE(i, j, power), |ops| {
            let rep = ops.irrep;
            if i + 1 == j {
                // S(e_i) = -q^{-1} e_i, S^{-1}(e_i) = -q e_i
                let c = if power == 1 { -1.0 / rep.q } else { -rep.q };
                return rep.e(i).scale(&c);
            }
            if i == j + 1 {
                // S(f_i) = -q f_i, S^{-1}(f_i) = -q^{-1} f_i
                let c = if power == 1 { -rep.q } else { -1.0 / rep.q };
                return rep.f(j).scale(&c);
            }
            let k = if i < j { j - 1 } else { j + 1 };
            let skj = ops.antipode_e(k, j, power);
            let sik = ops.antipode_e(i, k, power);
            let qinv = 1.0 / rep.q;
            &skj.matmul(&sik) - &sik.matmul(&skj).scale(&qinv)
        })
    }

    /// Ehat_{ij}: (q - q^{-1}) q^{(E_ii + E_jj - 1)/2} E_{ij} for i != j, q^{E_ii} on the diagonal.
    pub fn hat_e(&self, i: usize, j: usize) -> Matrix<f64> {
        let rep = self.irrep;
        if i == j {
            return rep.kdiag(i);
        }
        let coeff = rep.q - 1.0 / rep.q;
        let prefactor = rep.qdiag_entries(|w| HalfInt::half(w[i - 1] + w[j - 1] - 1));
        self.composite_e(i, j).mul_diag_left(&prefactor).scale(&coeff)
    }

    /// S^{+-1}(Ehat_{ij}). The antipode sends the q-power prefactor of
    /// Ehat_{ij} to q^{-(E_ii+E_jj+1)/2}; the scalar half-power does not flip.
    pub fn antipode_hat_e(&self, i: usize, j: usize, power: i8) -> Matrix<f64> {
        let rep = self.irrep;
        if i == j {
            return rep.kdiag_inv(i);
        }
        let coeff = rep.q - 1.0 / rep.q;
        let prefactor = rep.qdiag_entries(|w| HalfInt::half(-(w[i - 1] + w[j - 1] + 1)));
        self.antipode_e(i, j, power).mul_diag_right(&prefactor).scale(&coeff)
    }

    /// Etilde_{ij}: -(q - q^{-1}) q^{-(E_ii+E_jj-1)/2} E'_{ij} for i != j,
    /// q^{-E_ii} on the diagonal.
    pub fn tilde_e(&self, i: usize, j: usize) -> Matrix<f64> {
        let rep = self.irrep;
        if i == j {
            return rep.kdiag_inv(i);
        }
        let coeff = -(rep.q - 1.0 / rep.q);
        let prefactor = rep.qdiag_entries(|w| HalfInt::half(-(w[i - 1] + w[j - 1] - 1)));
        self.composite_eprime(i, j).mul_diag_left(&prefactor).scale(&coeff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::GTPattern;

    fn hw(v: &[i64]) -> HighestWeight {
        HighestWeight::new(v.to_vec()).unwrap()
    }

    fn pat(rows: &[&[i64]]) -> GTPattern {
        GTPattern::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    const Q: f64 = 1.5;

    #[test]
    fn vector_rep_is_undeformed() {
        let rep = build_irrep(&hw(&[1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(rep.dim, 2);
        // e_1 and f_1 are matrix units; kdiag = diag(q,1), diag(1,q)
        assert!((rep.e(1).get(0, 1) - 1.0).abs() < 1e-14);
        assert!((rep.e(1).get(1, 0)).abs() < 1e-14);
        assert!((rep.f(1).get(1, 0) - 1.0).abs() < 1e-14);
        assert!((rep.kdiag(1).get(0, 0) - Q).abs() < 1e-14);
        assert!((rep.kdiag(1).get(1, 1) - 1.0).abs() < 1e-14);
        assert!((rep.kdiag(2).get(0, 0) - 1.0).abs() < 1e-14);
        assert!((rep.kdiag(2).get(1, 1) - Q).abs() < 1e-14);
    }

    #[test]
    fn trivial_and_determinant_modules() {
        let rep = build_irrep(&hw(&[0, 0, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(rep.dim, 1);
        for m in 1..3 {
            assert_eq!(rep.e(m).frobenius(), 0.0);
            assert_eq!(rep.f(m).frobenius(), 0.0);
        }
        assert!((rep.kdiag(2).get(0, 0) - 1.0).abs() < 1e-14);

        let det = build_irrep(&hw(&[1, 1]), Q, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(det.dim, 1);
        assert_eq!(det.e(1).frobenius(), 0.0);
        assert_eq!(det.f(1).frobenius(), 0.0);
        assert!((det.kdiag(1).get(0, 0) - Q).abs() < 1e-14);
        assert!((det.kdiag(2).get(0, 0) - Q).abs() < 1e-14);
    }

    #[test]
    fn squared_elements_examples() {
        // vector module: raise coefficient 1
        let p = pat(&[&[1, 0], &[0]]);
        assert_eq!(squared_raise(&p, 1, 1), QRat::one());
        // invalid raise -> 0
        let p2 = pat(&[&[1, 0], &[1]]);
        assert!(squared_raise(&p2, 1, 1).is_zero());
        // one-dimensional weight string: [0]_q factor kills e_1 on V(1,1)
        let p3 = pat(&[&[1, 1], &[1]]);
        assert!(squared_raise(&p3, 1, 1).is_zero());
        // hermitian mirror on the vector module
        assert_eq!(squared_lower(&p2, 1, 1), QRat::one());
        assert!(squared_lower(&p, 1, 1).is_zero());
        // trivial module
        let p0 = pat(&[&[0, 0], &[0]]);
        assert!(squared_lower(&p0, 1, 1).is_zero());
    }

    #[test]
    fn spin_one_string_matches_sl2_q_numbers() {
        // V(2,0) of Uq(2): e-string coefficients sqrt([1][2]), sqrt([2][1])
        let rep = build_irrep(&hw(&[2, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let top = pat(&[&[2, 0], &[2]]);
        let mid = pat(&[&[2, 0], &[1]]);
        let bot = pat(&[&[2, 0], &[0]]);
        let (it, im, ib) = (
            rep.index_of(&top).unwrap(),
            rep.index_of(&mid).unwrap(),
            rep.index_of(&bot).unwrap(),
        );
        let two = qnumber_f64(2, Q);
        assert!((rep.e(1).get(it, im) - two.sqrt()).abs() < 1e-12);
        assert!((rep.e(1).get(im, ib) - two.sqrt()).abs() < 1e-12);
        // [e,f] = (K - K^{-1})/(q - q^{-1}) on the top state
        let k = rep.kdiag(1).matmul(&rep.kdiag_inv(2));
        let kinv = rep.kdiag_inv(1).matmul(&rep.kdiag(2));
        let lhs = rep.e(1).commutator(rep.f(1));
        let rhs = (&k - &kinv).scale(&(1.0 / (Q - 1.0 / Q)));
        assert!((&lhs - &rhs).frobenius() < 1e-12);
    }

    #[test]
    fn exact_and_numeric_squares_agree() {
        for lam in [hw(&[2, 1, 0]), hw(&[2, 2, 1]), hw(&[1, 0, -1])] {
            for p in enumerate_patterns(&lam) {
                for m in 1..lam.n() {
                    for r in 1..=m {
                        let exact = squared_raise(&p, r, m).eval_at(Q).unwrap();
                        let numeric = squared_raise_f64(&p, r, m, Q);
                        assert!(
                            (exact - numeric).abs() <= 1e-9 * exact.abs().max(1.0),
                            "raise mismatch at {p} r={r} m={m}"
                        );
                        let exact = squared_lower(&p, r, m).eval_at(Q).unwrap();
                        let numeric = squared_lower_f64(&p, r, m, Q);
                        assert!(
                            (exact - numeric).abs() <= 1e-9 * exact.abs().max(1.0),
                            "lower mismatch at {p} r={r} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn invariant_products_carry_the_generator_squares() {
        // dual route: q^e mu~w~ equals squared_raise exactly, and likewise for
        // the plain-root products (the root-to-bracket rewrite, exactly)
        use crate::scalars::qpow;
        for lam in [hw(&[2, 1, 0]), hw(&[2, 2, 0]), hw(&[1, 1, 0, 0])] {
            for p in enumerate_patterns(&lam) {
                for m in 1..lam.n() {
                    for r in 1..=m {
                        let e = raise_prefactor_exponent(&p, r, m);
                        let lhs = &qpow(HalfInt::from_int(e)) * &mu_omega_tilde_product(&p, r, m);
                        assert_eq!(lhs, squared_raise(&p, r, m), "raise at {p} r={r} m={m}");
                        let e = lower_prefactor_exponent(&p, r, m);
                        let lhs = &qpow(HalfInt::from_int(e)) * &mu_omega_product(&p, r, m);
                        assert_eq!(lhs, squared_lower(&p, r, m), "lower at {p} r={r} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn hermiticity_of_squares() {
        // squared_lower(p) = squared_raise(lower(p)) exactly
        for lam in [hw(&[2, 1, 0]), hw(&[3, 1, 0]), hw(&[2, 1, 1, 0])] {
            for p in enumerate_patterns(&lam) {
                for m in 1..lam.n() {
                    for r in 1..=m {
                        if let Some(dn) = p.lower(r, m) {
                            assert_eq!(
                                squared_lower(&p, r, m),
                                squared_raise(&dn, r, m),
                                "at {p} r={r} m={m}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composite_operators_on_vector_rep() {
        let rep = build_irrep(&hw(&[1, 0, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        // E_{13} = e_{13} matrix unit on the undeformed vector module
        let e13 = ops.composite_e(1, 3);
        let mut expect = rep.zero_op();
        expect.set(0, 2, 1.0);
        assert!((&e13 - &expect).frobenius() < 1e-12);
        let e13p = ops.composite_eprime(1, 3);
        assert!((&e13p - &expect).frobenius() < 1e-12);
        // E_{12} base case
        assert_eq!(&ops.composite_e(1, 2), rep.e(1));
        assert_eq!(&ops.composite_eprime(1, 2), rep.e(1));
        // E_{31} on the trivial module
        let triv = build_irrep(&hw(&[0, 0, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let tops = Operators::new(&triv);
        assert_eq!(tops.composite_e(3, 1).frobenius(), 0.0);
        assert_eq!(tops.composite_eprime(1, 3).frobenius(), 0.0);
    }

    #[test]
    fn composite_weight_additivity() {
        // nonzero entries of E_{ij} connect weights differing by eps_i - eps_j
        let rep = build_irrep(&hw(&[2, 1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        for i in 1..=3usize {
            for j in 1..=3usize {
                if i == j {
                    continue;
                }
                let m = ops.composite_e(i, j);
                for a in 0..rep.dim {
                    for b in 0..rep.dim {
                        if m.get(a, b).abs() > 1e-12 {
                            let mut expect = rep.weights[b].clone();
                            expect[i - 1] += 1;
                            expect[j - 1] -= 1;
                            assert_eq!(rep.weights[a], expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pivot_independence_n4() {
        for lam in [hw(&[1, 0, 0, 0]), hw(&[1, 1, 0, 0]), hw(&[2, 1, 1, 0])] {
            let rep = build_irrep(&lam, Q, DEFAULT_DIM_CAP).unwrap();
            let ops = Operators::new(&rep);
            let via2 = ops.composite_e_pivot(1, 4, 2);
            let via3 = ops.composite_e_pivot(1, 4, 3);
            assert!(
                (&via2 - &via3).frobenius() < 1e-10 * (1.0 + via2.frobenius()),
                "pivot dependence for {lam}"
            );
            let lo2 = ops.composite_e_pivot(4, 1, 2);
            let lo3 = ops.composite_e_pivot(4, 1, 3);
            assert!((&lo2 - &lo3).frobenius() < 1e-10 * (1.0 + lo2.frobenius()));
        }
    }

    #[test]
    fn hat_e_examples() {
        let rep = build_irrep(&hw(&[1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        // diagonal case
        assert_eq!(ops.hat_e(1, 1), rep.kdiag(1));
        // hatE(1,2) = (q - q^{-1}) q^{(nu_1+nu_2-1)/2} e_{12}; the only entry
        // sits in row (1,0) where the prefactor is q^0
        let h12 = ops.hat_e(1, 2);
        let c = Q - 1.0 / Q;
        assert!((h12.get(0, 1) - c).abs() < 1e-13);
        assert!(h12.get(1, 0).abs() < 1e-13);
        // trivial rep, i != j -> 0
        let triv = build_irrep(&hw(&[0, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let tops = Operators::new(&triv);
        assert_eq!(tops.hat_e(1, 2).frobenius(), 0.0);
    }

    #[test]
    fn antipode_composites() {
        // S^{-1}(E_{12}) = -q e_1 = -q E'_{12}
        let rep = build_irrep(&hw(&[1, 0]), Q, DEFAULT_DIM_CAP).unwrap();
        let ops = Operators::new(&rep);
        let lhs = ops.antipode_e(1, 2, -1);
        let rhs = rep.e(1).scale(&-Q);
        assert!((&lhs - &rhs).frobenius() < 1e-13);

        // S^{-1}(E_{13}) = -q E'_{13} on Uq(3) modules
        for lam in [hw(&[1, 0, 0]), hw(&[2, 1, 0])] {
            let rep = build_irrep(&lam, Q, DEFAULT_DIM_CAP).unwrap();
            let ops = Operators::new(&rep);
            let lhs = ops.antipode_e(1, 3, -1);
            let rhs = ops.composite_eprime(1, 3).scale(&-Q);
            assert!((&lhs - &rhs).frobenius() < 1e-11, "at {lam}");
            // S^{-1}(E_{31}) = -q^{(2rho,eps_3-eps_1)+1} E'_{31} = -q^{-3} E'_{31}
            let lhs = ops.antipode_e(3, 1, -1);
            let rhs = ops.composite_eprime(3, 1).scale(&-Q.powi(-3));
            assert!((&lhs - &rhs).frobenius() < 1e-11, "at {lam}");
        }

        // n = 2: S^{-1}(E_{21}) = -q^{-1} E'_{21}
        let lhs = ops.antipode_e(2, 1, -1);
        let rhs = ops.composite_eprime(2, 1).scale(&(-1.0 / Q));
        assert!((&lhs - &rhs).frobenius() < 1e-13);
    }

    #[test]
    fn antipode_hat_e_matches_tilde() {
        for lam in [hw(&[1, 0]), hw(&[2, 1]), hw(&[2, 0])] {
            let rep = build_irrep(&lam, Q, DEFAULT_DIM_CAP).unwrap();
            let ops = Operators::new(&rep);
            // i = j
            assert_eq!(ops.antipode_hat_e(1, 1, -1), rep.kdiag_inv(1));
            // S^{-1}(Ehat_{12}) = Etilde_{12}
            let lhs = ops.antipode_hat_e(1, 2, -1);
            let rhs = ops.tilde_e(1, 2);
            assert!((&lhs - &rhs).frobenius() < 1e-12, "at {lam}");
            // S^{-1}(Ehat_{21}) = q^{(2rho,eps_2-eps_1)} Etilde_{21} = q^{-2} Etilde_{21}
            let lhs = ops.antipode_hat_e(2, 1, -1);
            let rhs = ops.tilde_e(2, 1).scale(&Q.powi(-2));
            assert!((&lhs - &rhs).frobenius() < 1e-12, "at {lam}");
        }
    }

    #[test]
    fn adjointness_at_real_q() {
        for lam in [hw(&[2, 1, 0]), hw(&[1, 1, 0])] {
            let rep = build_irrep(&lam, Q, DEFAULT_DIM_CAP).unwrap();
            for m in 1..lam.n() {
                let diff = (&rep.e(m).transpose() - rep.f(m)).frobenius();
                assert!(diff < 1e-12 * rep.dim as f64, "e{m}^T != f{m} on {lam}");
            }
        }
    }

    #[test]
    fn dimension_cap() {
        let err = build_irrep(&hw(&[3, 2, 1, 0]), Q, 10).unwrap_err();
        assert!(matches!(err, RepError::DimensionCap { .. }));
        assert!(matches!(build_irrep(&hw(&[1, 0]), -2.0, 100), Err(RepError::BadQ(_))));
        assert!(matches!(build_irrep(&hw(&[1, 0]), 1.0, 100), Err(RepError::BadQ(_))));
    }
}
