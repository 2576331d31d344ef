//! Gelfand-Tsetlin patterns: enumeration, betweenness, weights, and the
//! characteristic root bookkeeping attached to each subalgebra level.

use crate::scalars::{qnumber, qnumber_f64, qpow, HalfInt, QRat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PatternError {
    #[error("weight {0:?} is not dominant (entries must be non-increasing)")]
    NotDominant(Vec<i64>),
    #[error("row lengths must decrease from n down to 1, got {0:?}")]
    BadShape(Vec<usize>),
    #[error("betweenness violated at level {level}, position {pos}")]
    Betweenness { level: usize, pos: usize },
    #[error("expected weight lengths n and n-1, got {0} and {1}")]
    LengthMismatch(usize, usize),
}

/// Dominant integral highest weight of gl(n): non-increasing integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HighestWeight {
    entries: Vec<i64>,
}

impl HighestWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self, PatternError> {
        if entries.is_empty() || entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(PatternError::NotDominant(entries));
        }
        Ok(HighestWeight { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> i64 {
        self.entries[i - 1]
    }

    /// Weight shifted by +/- epsilon_r (1-based); None if the result is not dominant.
    pub fn shifted(&self, r: usize, delta: i64) -> Option<HighestWeight> {
        let mut v = self.entries.clone();
        v[r - 1] += delta;
        HighestWeight::new(v).ok()
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Triangular Gelfand-Tsetlin pattern, rows stored top (length n) first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTPattern {
    rows: Vec<Vec<i64>>,
}

impl Serialize for GTPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

impl GTPattern {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, PatternError> {
        let n = rows.len();
        let shape_ok = rows.iter().enumerate().all(|(i, r)| r.len() == n - i);
        if n == 0 || !shape_ok {
            return Err(PatternError::BadShape(rows.iter().map(|r| r.len()).collect()));
        }
        let p = GTPattern { rows };
        p.check_betweenness()?;
        Ok(p)
    }

    fn check_betweenness(&self) -> Result<(), PatternError> {
        let n = self.n();
        for m in (2..=n).rev() {
            let upper = self.row(m);
            let lower = self.row(m - 1);
            for k in 0..m - 1 {
                if !(upper[k] >= lower[k] && lower[k] >= upper[k + 1]) {
                    return Err(PatternError::Betweenness { level: m - 1, pos: k + 1 });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Row at subalgebra level m (1-based, length m); row n is the highest weight.
    pub fn row(&self, m: usize) -> &[i64] {
        &self.rows[self.rows.len() - m]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, k: usize, m: usize) -> i64 {
        self.row(m)[k - 1]
    }

    /// Weight nu: nu_m = |row m| - |row m-1|.
    pub fn weight(&self) -> Vec<i64> {
        let n = self.n();
        let mut prev = 0i64;
        (1..=n)
            .map(|m| {
                let s: i64 = self.row(m).iter().sum();
                let v = s - prev;
                prev = s;
                v
            })
            .collect()
    }

    fn shift(&self, r: usize, m: usize, delta: i64) -> Option<GTPattern> {
        debug_assert!(m < self.n() && r >= 1 && r <= m, "shift index out of range");
        let mut rows = self.rows.clone();
        let idx = self.rows.len() - m;
        rows[idx][r - 1] += delta;
        GTPattern::from_rows(rows).ok()
    }

    /// Increment Lambda_{r,m}; None when betweenness fails.
    pub fn raise(&self, r: usize, m: usize) -> Option<GTPattern> {
        self.shift(r, m, 1)
    }

    /// Decrement Lambda_{r,m}; None when betweenness fails.
    pub fn lower(&self, r: usize, m: usize) -> Option<GTPattern> {
        self.shift(r, m, -1)
    }
}

impl fmt::Display for GTPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// All patterns with top row `hw`, in descending lexicographic order on the
/// concatenated rows (top row first, each row left to right).
pub fn enumerate_patterns(hw: &HighestWeight) -> Vec<GTPattern> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i64>> = vec![hw.entries().to_vec()];
    fill(&mut rows, &mut out);
    out
}

fn fill(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GTPattern>) {
    let upper = rows.last().unwrap().clone();
    let m = upper.len();
    if m == 1 {
        out.push(GTPattern { rows: rows.clone() });
        return;
    }
    // Entries of the next row range independently: upper[k] >= x_k >= upper[k+1].
    let mut next: Vec<i64> = upper[..m - 1].to_vec();
    loop {
        rows.push(next.clone());
        fill(rows, out);
        rows.pop();
        // descending-lex successor within the box constraints
        let mut k = m - 1;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if next[k] > upper[k + 1] {
                next[k] -= 1;
                for j in k + 1..m - 1 {
                    next[j] = upper[j];
                }
                break;
            }
        }
    }
}

/// theta(Lambda, Lambda0) = sum(Lambda) - sum(Lambda0), the n-th weight
/// component of the semi-maximal state.
pub fn theta(hw: &HighestWeight, hw0: &HighestWeight) -> i64 {
    assert_eq!(
        hw.n(),
        hw0.n() + 1,
        "theta expects weights of lengths n and n-1"
    );
    hw.sum() - hw0.sum()
}

/// Does lam0 interlace lam (branching admissibility Lambda_k >= Lambda0_k >= Lambda_{k+1})?
pub fn interlaces(lam: &HighestWeight, lam0: &HighestWeight) -> bool {
    lam.n() == lam0.n() + 1
        && (1..lam0.n() + 1).all(|k| lam.entry(k) >= lam0.entry(k) && lam0.entry(k) >= lam.entry(k + 1))
}

/// All admissible level-(n-1) rows of V(Lambda), descending lexicographic.
pub fn branch_rows(hw: &HighestWeight) -> Vec<HighestWeight> {
    let n = hw.n();
    assert!(n >= 2, "branching needs n >= 2");
    let mut out = Vec::new();
    let mut cur: Vec<i64> = hw.entries()[..n - 1].to_vec();
    let upper = hw.entries();
    loop {
        out.push(HighestWeight::new(cur.clone()).expect("interlaced rows are dominant"));
        let mut k = n - 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] > upper[k + 1] {
                cur[k] -= 1;
                for j in k + 1..n - 1 {
                    cur[j] = upper[j];
                }
                break;
            }
        }
    }
}

/// Classical characteristic roots of a level-m row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    /// alpha_{k,m} = Lambda_{k,m} + m - k
    pub alpha: Vec<i64>,
    /// alphabar_{k,m} = Lambda_{k,m} + 1 - k
    pub alphabar: Vec<i64>,
}

impl RootSet {
    pub fn of_row(row: &[i64]) -> RootSet {
        let m = row.len() as i64;
        RootSet {
            alpha: row.iter().enumerate().map(|(i, x)| x + m - (i as i64 + 1)).collect(),
            alphabar: row.iter().enumerate().map(|(i, x)| x + 1 - (i as i64 + 1)).collect(),
        }
    }
}

/// Which characteristic root family a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// a_{k,m} built from alpha
    Plain,
    /// atilde_{k,m} built from alphabar
    Bar,
}

/// `(1 - q^{-2x})/(q - q^{-1}) = q^{-x}[x]_q`; the scalar behind both a and atilde.
pub fn root_value(x: i64) -> QRat {
    &qpow(HalfInt::from_int(-x)) * &qnumber(x)
}

/// `(1 - q^{2x})/(q - q^{-1}) = -q^{x}[x]_q`; the adjoint-matrix root.
pub fn adjoint_root_value(x: i64) -> QRat {
    -&(&qpow(HalfInt::from_int(x)) * &qnumber(x))
}

pub fn root_value_f64(x: i64, q: f64) -> f64 {
    q.powi(-x as i32) * qnumber_f64(x, q)
}

pub fn adjoint_root_value_f64(x: i64, q: f64) -> f64 {
    -q.powi(x as i32) * qnumber_f64(x, q)
}

/// Root bookkeeping for a weight row: the integer roots together with the
/// exact scalar root values a_{k,m} (kind Plain) or atilde_{k,m} (kind Bar).
pub fn char_root_values(row: &[i64], kind: RootKind) -> (RootSet, Vec<QRat>) {
    let roots = RootSet::of_row(row);
    let vals = match kind {
        RootKind::Plain => roots.alpha.iter().map(|&x| root_value(x)).collect(),
        RootKind::Bar => roots.alphabar.iter().map(|&x| root_value(x)).collect(),
    };
    (roots, vals)
}

/// Weyl dimension of V(Lambda): prod_{i<j} (L_i - L_j + j - i)/(j - i).
pub fn weyl_dim(hw: &HighestWeight) -> u64 {
    let n = hw.n();
    let mut acc = BigRational::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let num = hw.entry(i) - hw.entry(j) + (j as i64) - (i as i64);
            let den = (j as i64) - (i as i64);
            acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
    debug_assert!(acc.is_integer() && !acc.is_negative());
    acc.to_integer().to_u64().expect("dimension fits in u64")
}
