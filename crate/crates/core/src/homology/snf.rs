//! Smith normal form over the integers. Runs on `i64` with checked
//! arithmetic and restarts on big integers if anything overflows.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait SnfInt: Clone + PartialEq + Sized {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn quot(&self, other: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    /// self - q * x
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn add(&self, x: &Self) -> Option<Self>;
    fn to_big_abs(&self) -> BigInt;
}

impl SnfInt for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)
    }
    fn divides(&self, other: &Self) -> bool {
        self.unsigned_abs() == 1 || other.checked_rem(*self).is_some_and(|r| r == 0)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        self.checked_add(*x)
    }
    fn to_big_abs(&self) -> BigInt {
        BigInt::from(*self).abs()
    }
}

impl SnfInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }
    fn to_big_abs(&self) -> BigInt {
        self.abs()
    }
}

/// Nonzero invariant factors d1 | d2 | ... of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one, the torsion part of a cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| f.to_u8() != Some(1)).cloned().collect()
    }
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> SmithForm {
    if let Some(f) = snf_generic(a.to_vec()) {
        return SmithForm { factors: f };
    }
    let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    SmithForm { factors: snf_generic(big).expect("big integers do not overflow") }
}

fn snf_generic<T: SnfInt>(mut a: Vec<Vec<T>>) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].quot(&a[t][t])?;
            for j in t..cols {
                let v = a[i][j].sub_mul(&q, &a[t][j])?;
                a[i][j] = v;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].quot(&a[t][t])?;
            for i in t..rows {
                let v = a[i][j].sub_mul(&q, &a[i][t])?;
                a[i][j] = v;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[t][t].divides(&a[i][j])));
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[t][j].add(&a[i][j])?;
                a[t][j] = v;
            }
            continue;
        }
        out.push(a[t][t].to_big_abs());
        t += 1;
    }
    Some(out)
}
