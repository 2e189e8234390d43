//! The counting chain behind the exponential bound, evaluated for one
//! (d, N). Large ceilings are kept as base-2 exponents.

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::construction::replay::RoundPartition;
use crate::construction::tree::{closed_form_d, closed_form_n_d3};

type Q = Ratio<i64>;

fn q_str(q: &Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn q_f64(q: &Q) -> f64 {
    q.to_f64().unwrap()
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTerm {
    pub m: usize,
    /// Bound on (d-3)-faces available to this round; absent for the first.
    pub l: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundChain {
    pub d: usize,
    pub n: usize,
    pub big_d: String,
    pub n_d3: String,
    /// Exponent of the per-tree bound.
    pub exponent: String,
    pub log2_tree_bound: f64,
    pub log2_de_bound: f64,
    pub log2_total_bound: f64,
    pub log2_intermediate: f64,
    pub log2_ceiling: f64,
    pub count: u128,
    pub log2_count: Option<f64>,
    pub rounds: Vec<RoundTerm>,
    pub verdicts: BoundVerdicts,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundVerdicts {
    pub count_below_ceiling: bool,
    pub count_below_total_bound: bool,
    /// N_{d-3} + D(d(d-1)/2 - 1) + 4D + (D - 1) equals the exponent.
    pub exponent_identity: bool,
    /// Sum of binom(D-1, f-1) over f = 1..D equals 2^(D-1); none when D is not an integer.
    pub binomial_identity: Option<bool>,
    pub tree_base_below_de: bool,
    /// These two only hold for N large enough.
    pub total_below_intermediate: bool,
    pub intermediate_below_ceiling: bool,
    pub rounds_sum_to_2d: Option<bool>,
}

pub fn exponent(d: usize, n: usize) -> Q {
    let (d, n) = (d as i64, n as i64);
    Q::new(n * (d - 1) * (5 * d * d - 7 * d + 24), 12) + Q::from(d * (d - 1) + 3)
}

/// Sum of binom(D-1, f-1) for f = 1..D, computed term by term.
pub fn composition_sum(big_d: u64) -> BigUint {
    (1..=big_d).map(|f| binomial(BigUint::from(big_d - 1), BigUint::from(f - 1))).fold(BigUint::zero(), |a, b| a + b)
}

pub fn bound_report(d: usize, n: usize, count: u128) -> BoundChain {
    bound_report_with_rounds(d, n, count, None)
}

pub fn bound_report_with_rounds(d: usize, n: usize, count: u128, rounds: Option<&RoundPartition>) -> BoundChain {
    assert!(d >= 2, "the chain needs d >= 2");
    let big_d = closed_form_d(d, n);
    let n_d3 = closed_form_n_d3(d, n);
    let e = exponent(d, n);
    let half = Q::new((d * (d - 1)) as i64, 2) - Q::one();
    let lhs = n_d3 + big_d * half + big_d * 4 + (big_d - Q::one());
    let binomial_identity = big_d.is_integer().then(|| {
        let dd = big_d.to_integer() as u64;
        composition_sum(dd) == BigUint::one() << (dd - 1)
    });
    let df = d as f64;
    let nf = n as f64;
    let tree_base = df * (df / (df - 1.0)).powf(df - 1.0);
    let de = df * std::f64::consts::E;
    let log2_tree_bound = nf * tree_base.log2();
    let log2_de_bound = nf * de.log2();
    let log2_total_bound = log2_de_bound + q_f64(&e);
    let tail = (d * (d - 1) + 3) as f64;
    let log2_intermediate = 5.0 * df.powi(3) * nf / 12.0 + tail;
    let log2_ceiling = df.powi(3) * nf / 2.0;
    let log2_count = (count > 0).then(|| (count as f64).log2());
    let lc = log2_count.unwrap_or(f64::NEG_INFINITY);
    let mut terms = Vec::new();
    let mut rounds_sum = None;
    if let Some(rp) = rounds {
        let mut prev: Option<usize> = None;
        for r in &rp.rounds {
            let l = prev.map(|m| q_str(&(Q::new(m as i64, 2) * half)));
            terms.push(RoundTerm { m: r.m, l });
            prev = Some(r.m);
        }
        rounds_sum = Some(rp.sums_match());
    }
    BoundChain {
        d,
        n,
        big_d: q_str(&big_d),
        n_d3: q_str(&n_d3),
        exponent: q_str(&e),
        log2_tree_bound,
        log2_de_bound,
        log2_total_bound,
        log2_intermediate,
        log2_ceiling,
        count,
        log2_count,
        rounds: terms,
        verdicts: BoundVerdicts {
            count_below_ceiling: lc < log2_ceiling,
            count_below_total_bound: lc <= log2_total_bound,
            exponent_identity: lhs == e,
            binomial_identity,
            tree_base_below_de: tree_base < de,
            total_below_intermediate: log2_total_bound < log2_intermediate,
            intermediate_below_ceiling: log2_intermediate < log2_ceiling,
            rounds_sum_to_2d: rounds_sum,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d3_n5() {
        let r = bound_report(3, 5, 1);
        assert_eq!(r.big_d, "6");
        assert_eq!(r.log2_ceiling, 67.5);
        assert!(r.verdicts.count_below_ceiling && r.verdicts.exponent_identity);
        assert_eq!(r.verdicts.binomial_identity, Some(true));
        // per-tree base 3 (3/2)^2 = 6.75 against 3e
        assert!(r.verdicts.tree_base_below_de);
        assert!((r.log2_tree_bound - 5.0 * 6.75f64.log2()).abs() < 1e-9, "{}", r.log2_tree_bound);
    }

    #[test]
    fn half_integer_d() {
        let r = bound_report(4, 3, 0);
        assert_eq!(r.big_d, "11/2");
        assert_eq!(r.verdicts.binomial_identity, None);
        assert!(r.verdicts.exponent_identity);
    }
}
