//! Closed-form counting.
//!
//! Everything here is exact integer arithmetic; any overflow is reported as
//! [`Error::Overflow`] instead of wrapping.

use serde::{Deserialize, Serialize};

use crate::config::{ComponentKind, SchemeConfig};
use crate::error::{Error, Result};

/// `C(n, k)`, checked.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) is divisible by i at every step
        acc = acc
            .checked_mul(n as u128 - k as u128 + i)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / i;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial coefficient"))
}

fn add(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

/// Ambient projective dimension and form degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientParams {
    pub n: u32,
    pub d: u32,
}

impl AmbientParams {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n < 2 || d < 1 {
            return Err(Error::OutOfRange(format!("need n >= 2 and d >= 1, got n={n}, d={d}")));
        }
        Ok(Self { n, d })
    }

    /// Number of degree-`d` monomials in `n + 1` variables.
    pub fn monomial_count(&self) -> Result<u64> {
        binomial(self.n as u64 + self.d as u64, self.n as u64)
    }
}

/// Number of conditions an `m`-fold `r`-plane imposes on degree-`d` forms in
/// `P^n`: the number of degree-`d` monomials whose degree in the `n - r`
/// normal variables is below `m`.
pub fn fat_space_conditions(n: u32, d: u32, r: u32, m: u32) -> Result<u64> {
    if r >= n || m == 0 || m > d + 1 {
        return Err(Error::OutOfRange(format!(
            "fat space needs 0 <= r < n and 1 <= m <= d+1, got n={n}, d={d}, r={r}, m={m}"
        )));
    }
    let (n, d, r) = (n as u64, d as u64, r as u64);
    let mut total = 0u64;
    for i in 0..m as u64 {
        let tangential = binomial(r + d - i, r)?;
        let normal = binomial(n + i - r - 1, i)?;
        total = add(total, mul(tangential, normal, "fat space conditions")?, "fat space conditions")?;
    }
    Ok(total)
}

/// Conditions imposed in degree `d` by one component of the given kind.
pub fn component_conditions(n: u32, d: u32, kind: ComponentKind) -> Result<u64> {
    let d64 = d as u64;
    match kind {
        ComponentKind::Line => Ok(d64 + 1),
        ComponentKind::FatLinearSpace { dim, mult } => fat_space_conditions(n, d, dim, mult),
        ComponentKind::FatPoint { mult } => {
            if mult == 0 {
                return Err(Error::OutOfRange("fat point of multiplicity 0".into()));
            }
            binomial(mult as u64 - 1 + n as u64, n as u64)
        }
        ComponentKind::CollinearPoints { count } => Ok(count as u64),
        ComponentKind::Sundial => mul(2, d64 + 1, "sundial conditions"),
        ComponentKind::DegenerateConic => Ok(2 * d64 + 1),
    }
}

/// Form count, condition count and the expected cohomology they predict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCounts {
    /// `C(n + d, n)`.
    pub ambient: u64,
    /// Sum of per-component condition counts.
    pub conditions: u64,
    pub exp_h0: u64,
    pub exp_h1: u64,
    /// `ambient - conditions`, unclamped.
    pub virtual_h0: i64,
}

impl ExpectedCounts {
    pub fn from_totals(ambient: u64, conditions: u64) -> Result<Self> {
        let virtual_h0 = i64::try_from(ambient as i128 - conditions as i128)
            .map_err(|_| Error::Overflow("virtual h0"))?;
        Ok(Self {
            ambient,
            conditions,
            exp_h0: ambient.saturating_sub(conditions),
            exp_h1: conditions.saturating_sub(ambient),
            virtual_h0,
        })
    }

    /// The largest rank the evaluation map can have.
    pub fn max_rank(&self) -> u64 {
        self.ambient.min(self.conditions)
    }
}

/// Expected counts of a configuration. Constraints only affect sampling.
pub fn expected_counts(config: &SchemeConfig) -> Result<ExpectedCounts> {
    let ambient = binomial(config.n as u64 + config.d as u64, config.n as u64)?;
    let mut conditions = 0u64;
    for c in &config.components {
        conditions = add(conditions, component_conditions(config.n, config.d, c.kind)?, "condition total")?;
    }
    ExpectedCounts::from_totals(ambient, conditions)
}

// ---------------------------------------------------------------------------
// Square-case parameters and the auxiliary schedules of the induction.

/// Lines `r` and collinear points `q` that make one double line plus `r`
/// lines plus `q` collinear points impose exactly `C(d+n, n)` conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareParams {
    pub r: u64,
    pub q: u64,
}

pub fn th2_parameters(n: u32, d: u32) -> Result<SquareParams> {
    if n < 3 || d < 3 {
        return Err(Error::OutOfRange(format!("square parameters need n, d >= 3, got n={n}, d={d}")));
    }
    let (r, q) = square_split(n as u64, d as u64)?;
    Ok(SquareParams { r, q })
}

fn square_split(n: u64, d: u64) -> Result<(u64, u64)> {
    let forms = binomial(d + n, n)?;
    let rest = forms
        .checked_sub(n * d + 1)
        .ok_or_else(|| Error::OutOfRange("fewer forms than double-line conditions".into()))?;
    Ok((rest / (d + 1), rest % (d + 1)))
}

/// Parameters of the first residual step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualParams {
    pub r_prime: i64,
    pub q_prime: i64,
    /// `r - r' - 2q'`: lines placed in the hyperplane.
    pub x: i64,
}

fn in_residual_range(n: u32, d: u32) -> bool {
    (n >= 5 && d >= 3) || (n == 4 && d >= 5)
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("schedule parameter"))
}

fn binom_i(n: u64, k: u64) -> Result<i128> {
    binomial(n, k).map(i128::from)
}

pub fn residual_parameters(n: u32, d: u32) -> Result<ResidualParams> {
    if !in_residual_range(n, d) {
        return Err(Error::OutOfRange(format!(
            "residual schedule needs n >= 5, d >= 3 or n = 4, d >= 5; got n={n}, d={d}"
        )));
    }
    let (n, d) = (n as u64, d as u64);
    let (r, q) = square_split(n, d)?;
    let num = binom_i(d - 1 + n, n)? - (n * (d - 1) + 1) as i128 - q as i128;
    let r_prime = floor_div(num, d as i128);
    let q_prime = num - r_prime * d as i128;
    let x = r as i128 - r_prime - 2 * q_prime;
    Ok(ResidualParams { r_prime: to_i64(r_prime)?, q_prime: to_i64(q_prime)?, x: to_i64(x)? })
}

/// Trace parameters `(r_bar, q_bar)` for `n >= 5`.
pub fn trace_parameters_pn(n: u32, d: u32) -> Result<(i64, i64)> {
    if n < 5 || d < 3 {
        return Err(Error::OutOfRange(format!("trace schedule needs n >= 5, d >= 3; got n={n}, d={d}")));
    }
    let res = residual_parameters(n, d)?;
    let (n, d) = (n as u64, d as u64);
    let (r, _) = square_split(n, d)?;
    let num = binom_i(d + n - 2, n - 2)? - (n as i128 - 1) - r as i128 + res.r_prime as i128;
    let r_bar = floor_div(num, d as i128);
    let q_bar = num - r_bar * d as i128;
    Ok((to_i64(r_bar)?, to_i64(q_bar)?))
}

/// Quadric-trace parameters `(r_hat, q_hat)` in `P4`.
pub fn trace_parameters_p4(d: u32) -> Result<(i64, i64)> {
    if d < 5 {
        return Err(Error::OutOfRange(format!("P4 quadric schedule needs d >= 5, got d={d}")));
    }
    let res = residual_parameters(4, d)?;
    let d = d as i128;
    let num = (d + 1) * (d + 1) - (d + 2) * res.q_prime as i128 - 2 * res.x as i128;
    let r_hat = floor_div(num, d - 1);
    let q_hat = num - (d - 1) * r_hat;
    Ok((to_i64(r_hat)?, to_i64(q_hat)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofSchedule {
    pub n: u32,
    pub d: u32,
    pub r: u64,
    pub q: u64,
    pub r_prime: i64,
    pub q_prime: i64,
    pub x: i64,
    pub r_bar: Option<i64>,
    pub q_bar: Option<i64>,
    pub r_hat: Option<i64>,
    pub q_hat: Option<i64>,
}

pub fn proof_schedule(n: u32, d: u32) -> Result<ProofSchedule> {
    let square = th2_parameters(n, d)?;
    let res = residual_parameters(n, d)?;
    let (r_bar, q_bar) = if n >= 5 {
        let (a, b) = trace_parameters_pn(n, d)?;
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    let (r_hat, q_hat) = if n == 4 {
        let (a, b) = trace_parameters_p4(d)?;
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    Ok(ProofSchedule {
        n,
        d,
        r: square.r,
        q: square.q,
        r_prime: res.r_prime,
        q_prime: res.q_prime,
        x: res.x,
        r_bar,
        q_bar,
        r_hat,
        q_hat,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecklistReport {
    pub schedule: ProofSchedule,
    pub checks: Vec<NamedCheck>,
}

impl ChecklistReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}

/// Evaluates every inequality and identity the induction relies on.
pub fn verify_schedule(n: u32, d: u32) -> Result<ChecklistReport> {
    let s = proof_schedule(n, d)?;
    let mut checks = Vec::new();
    let mut check = |name: &str, statement: &str, holds: bool| {
        checks.push(NamedCheck { name: name.into(), statement: statement.into(), holds });
    };
    let (r, rp, qp, x) = (s.r as i128, s.r_prime as i128, s.q_prime as i128, s.x as i128);
    let (n64, d64) = (n as u64, d as u64);
    let di = d as i128;

    check("residual-count", "r' >= 0", rp >= 0);
    check("residual-excess", "r - r' - 2q' >= 0", x >= 0);

    if let (Some(rb), Some(qb)) = (s.r_bar, s.q_bar) {
        let (rb, qb) = (rb as i128, qb as i128);
        let lhs = binom_i(d64 + n64 - 2, n64 - 1)? - (r - rp - rb) * di;
        check("pn-trace-count", "r_bar >= 0", rb >= 0);
        check("pn-trace-fits", "r_bar <= r - r' - 2q'", rb <= x);
        check("pn-trace-points", "r' >= q' + q_bar", rp >= qp + qb);
        check(
            "pn-trace-identity",
            "C(d+n-2, n-1) - (r - r' - r_bar)d = r' - q' - q_bar + 1",
            lhs == rp - qp - qb + 1,
        );
    }
    if let (Some(rh), Some(qh)) = (s.r_hat, s.q_hat) {
        let (rh, qh) = (rh as i128, qh as i128);
        let rhs = binom_i(d64 + 1, 3)? - 4 - (di - 1) * (r - rp - rh - qp);
        check("p4-trace-count", "r_hat >= 0", rh >= 0);
        check("p4-trace-fits", "r_hat <= r - r' - 2q'", rh <= x);
        check("p4-leftover", "q_hat <= r'", qh <= rp);
        check("p4-ruling-room", "q' + r_hat <= d", qp + rh <= di);
        check("p4-trace-identity", "r' - q_hat = C(d+1, 3) - 4 - (d-1)(r - r' - r_hat - q')", rp - qh == rhs);
    }
    Ok(ChecklistReport { schedule: s, checks })
}

// ---------------------------------------------------------------------------

/// Admissibility of `alpha` first-ruling lines, `beta` points, `gamma` points
/// on one more first-ruling line and `delta` double points on a smooth
/// quadric, in bidegree `(d, d)`. When this holds the scheme imposes
/// independent conditions and no `(d, d)` form contains it.
pub fn hh_admissible(alpha: u64, beta: u64, gamma: u64, delta: u64, d: u64) -> bool {
    let total = |a: u64, b: u64, g: u64, dl: u64| -> Option<u64> {
        a.checked_mul(d + 1)?.checked_add(b)?.checked_add(g)?.checked_add(dl.checked_mul(3)?)
    };
    let Some(lhs) = total(alpha, beta, gamma, delta) else {
        return false;
    };
    let fills = lhs == (d + 1) * (d + 1);
    let few_double = delta <= d + 1;
    let few_on_line = gamma <= d + 1;
    let spread = if d > alpha {
        // delta <= (d + 1 - gamma)/2 + (d - alpha - 1) * floor((d + 1)/2), doubled
        few_on_line
            && 2 * delta as i128
                <= (d + 1 - gamma) as i128 + 2 * (d - alpha - 1) as i128 * d.div_ceil(2) as i128
    } else {
        delta == 0
    };
    fills && few_double && few_on_line && spread
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionClass {
    pub exceptional: bool,
    /// `h0 - (N - HP)` predicted for the configuration.
    pub virtual_defect: u64,
}

/// Classifies one `m`-fold `r`-plane plus `s` generic lines in `P^n`,
/// degree `d`.
pub fn classify_exception(n: u32, d: u32, r: u32, m: u32, s: u32) -> Result<ExceptionClass> {
    if r < 1 || n < r + 2 || m < 1 {
        return Err(Error::OutOfRange(format!(
            "classification needs n >= r+2 >= 3 and m >= 1, got n={n}, r={r}, m={m}"
        )));
    }
    exception_rule(n, d, r, m, s)
}

/// Same rule, also accepting `r = 0` (one fat point plus lines, `n >= 3`),
/// where the exceptional family is `n = 3, m = d, 2 <= s <= d`.
pub fn exception_rule(n: u32, d: u32, r: u32, m: u32, s: u32) -> Result<ExceptionClass> {
    if n < 3 || n < r + 2 {
        return Err(Error::OutOfRange(format!("need n >= max(3, r+2), got n={n}, r={r}")));
    }
    let exceptional = n == r + 3 && m == d && (2..=d).contains(&s);
    let virtual_defect = if exceptional { binomial(s as u64, 2)? } else { 0 };
    Ok(ExceptionClass { exceptional, virtual_defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ComponentKind as K, SchemeConfig};

    /// Counts degree-d monomials in n+1 variables whose degree in the last
    /// n-r variables is below m, by enumeration.
    fn brute_fat_count(n: u32, d: u32, r: u32, m: u32) -> u64 {
        fn rec(vars_left: u32, deg_left: u32, normal_from: u32, idx: u32, normal: u32, m: u32) -> u64 {
            if vars_left == 0 {
                return u64::from(deg_left == 0 && normal < m);
            }
            (0..=deg_left)
                .map(|e| {
                    let nd = if idx >= normal_from { normal + e } else { normal };
                    rec(vars_left - 1, deg_left - e, normal_from, idx + 1, nd, m)
                })
                .sum()
        }
        rec(n + 1, d, r + 1, 0, 0, m)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3).unwrap(), 20);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(67, 33).unwrap(), 14226520737620288370);
        assert!(matches!(binomial(200, 100), Err(Error::Overflow(_))));
    }

    #[test]
    fn ambient_params() {
        assert!(AmbientParams::new(1, 3).is_err());
        assert!(AmbientParams::new(3, 0).is_err());
        assert_eq!(AmbientParams::new(4, 7).unwrap().monomial_count().unwrap(), 330);
    }

    #[test]
    fn fat_space_examples() {
        assert_eq!(fat_space_conditions(3, 4, 1, 2).unwrap(), 13);
        for (n, d) in [(2, 1), (3, 5), (7, 2)] {
            assert_eq!(fat_space_conditions(n, d, 0, 1).unwrap(), 1);
        }
        // brute-force count and the closed form C(8,5) - C(5,2) agree
        assert_eq!(brute_fat_count(5, 3, 2, 3), 46);
        assert_eq!(binomial(8, 5).unwrap() - binomial(5, 2).unwrap(), 46);
        assert_eq!(fat_space_conditions(5, 3, 2, 3).unwrap(), 46);
    }

    #[test]
    fn fat_space_errors() {
        assert!(matches!(fat_space_conditions(3, 3, 3, 1), Err(Error::OutOfRange(_))));
        assert!(matches!(fat_space_conditions(3, 3, 1, 0), Err(Error::OutOfRange(_))));
        assert!(matches!(fat_space_conditions(3, 3, 1, 5), Err(Error::OutOfRange(_))));
        assert!(matches!(fat_space_conditions(60, 60, 30, 61), Err(Error::Overflow(_))));
    }

    #[test]
    fn fat_space_matches_enumeration() {
        for n in 2..=5 {
            for d in 0..=5 {
                for r in 0..n {
                    for m in 1..=d + 1 {
                        assert_eq!(fat_space_conditions(n, d, r, m).unwrap(), brute_fat_count(n, d, r, m));
                    }
                }
            }
        }
    }

    #[test]
    fn fat_space_special_values() {
        for n in 2..=8u32 {
            for d in 1..=8u32 {
                for r in 0..n {
                    assert_eq!(
                        fat_space_conditions(n, d, r, 1).unwrap(),
                        binomial((r + d) as u64, r as u64).unwrap()
                    );
                }
                for m in 1..=d + 1 {
                    assert_eq!(
                        fat_space_conditions(n, d, 0, m).unwrap(),
                        component_conditions(n, d, K::FatPoint { mult: m }).unwrap()
                    );
                }
                assert_eq!(fat_space_conditions(n, d, 1, 2).unwrap(), (n * d + 1) as u64);
            }
        }
    }

    #[test]
    fn alpha_identity_at_d_equals_m() {
        for n in 2..=9u64 {
            for r in 0..n {
                for m in 1..=7u64 {
                    let lhs = fat_space_conditions(n as u32, m as u32, r as u32, m as u32).unwrap();
                    let rhs = binomial(n + m, n).unwrap() - binomial(n + m - r - 1, n - r - 1).unwrap();
                    assert_eq!(lhs, rhs, "n={n} r={r} m={m}");
                }
            }
        }
    }

    #[test]
    fn expected_counts_examples() {
        let e = expected_counts(&SchemeConfig::double_line_and_lines(4, 2, 2)).unwrap();
        assert_eq!((e.ambient, e.conditions, e.exp_h0, e.exp_h1, e.virtual_h0), (15, 15, 0, 0, 0));

        let e = expected_counts(&SchemeConfig::new(3, 3)).unwrap();
        assert_eq!((e.ambient, e.conditions, e.exp_h0), (20, 0, 20));

        let e = expected_counts(&SchemeConfig::double_line_and_lines(3, 4, 3)).unwrap();
        assert_eq!(e.exp_h0, 7);

        let e = expected_counts(&SchemeConfig::new(3, 2).push(K::Line, 5)).unwrap();
        assert_eq!((e.exp_h0, e.exp_h1, e.virtual_h0), (0, 5, -5));
        assert_eq!(e.exp_h0 as i64 - e.exp_h1 as i64, e.virtual_h0);
    }

    #[test]
    fn square_parameters() {
        let p = |n, d| {
            let s = th2_parameters(n, d).unwrap();
            (s.r, s.q)
        };
        assert_eq!(p(3, 3), (2, 2));
        assert_eq!(p(4, 4), (10, 3));
        assert_eq!(p(4, 3), (5, 2));
        assert!(th2_parameters(2, 5).is_err());
        assert!(th2_parameters(3, 2).is_err());
    }

    #[test]
    fn square_reconstruction_sweep() {
        for n in 3..=12u32 {
            for d in 3..=25u32 {
                let s = th2_parameters(n, d).unwrap();
                assert!(s.q <= d as u64);
                let total = (n * d + 1) as u64 + s.r * (d as u64 + 1) + s.q;
                assert_eq!(total, binomial((n + d) as u64, n as u64).unwrap());
            }
        }
    }

    #[test]
    fn residual_examples() {
        let r = |n, d| {
            let p = residual_parameters(n, d).unwrap();
            (p.r_prime, p.q_prime, p.x)
        };
        assert_eq!(r(4, 5), (10, 0, 7));
        assert_eq!(r(4, 7), (25, 5, 2));
        assert_eq!(r(5, 3), (3, 1, 5));
        assert!(matches!(residual_parameters(4, 4), Err(Error::OutOfRange(_))));
        assert!(residual_parameters(3, 9).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_parameters_pn(5, 3).unwrap(), (3, 0));
        // r_bar = 5 per the tabulated check; q_bar from the remainder: 25 - 21 + 10 - 4 - 20 = 0
        assert_eq!(trace_parameters_pn(5, 4).unwrap(), (5, 0));
        // n=6, d=3: C(7,4) - 5 - 16 + 4 = 18 = 6*3 + 0
        assert_eq!(trace_parameters_pn(6, 3).unwrap(), (6, 0));
        assert!(trace_parameters_pn(4, 5).is_err());

        assert_eq!(trace_parameters_p4(5).unwrap(), (5, 2));
        // d=7: 64 - 9*5 - 2*2 = 15 = 6*2 + 3
        assert_eq!(trace_parameters_p4(7).unwrap(), (2, 3));
        // d=10: 121 - 12*5 - 2*10 = 41 = 9*4 + 5
        assert_eq!(trace_parameters_p4(10).unwrap(), (4, 5));
        assert_eq!(residual_parameters(4, 10).unwrap().q_prime, 5);
        assert!(trace_parameters_p4(4).is_err());
    }

    #[test]
    fn schedule_examples() {
        let rep = verify_schedule(4, 7).unwrap();
        assert!(rep.all_hold());
        assert_eq!((rep.schedule.r_hat, rep.schedule.x), (Some(2), 2));

        let rep = verify_schedule(5, 3).unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.checks.len(), 6);

        let rep = verify_schedule(4, 6).unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.schedule.q_prime + rep.schedule.r_hat.unwrap(), 6);

        assert!(verify_schedule(4, 4).is_err());
    }

    #[test]
    fn schedule_sweep_all_true() {
        let range = (5..=30).map(|d| (4, d)).chain((5..=10).flat_map(|n| (3..=20).map(move |d| (n, d))));
        for (n, d) in range {
            let rep = verify_schedule(n, d).unwrap();
            assert!(rep.all_hold(), "n={n} d={d}: {:?}", rep.checks);
        }
    }

    #[test]
    fn hh_examples() {
        assert!(hh_admissible(3, 4, 0, 2, 4));
        assert!(hh_admissible(5, 8, 0, 2, 6));
        for d in 1..20 {
            assert!(hh_admissible(0, (d + 1) * (d + 1), 0, 0, d));
        }
        assert!(!hh_admissible(0, 0, 0, 0, 3));
    }

    #[test]
    fn hh_boundary_d_equals_alpha_requires_no_double_points() {
        // alpha = d = 2: 2*3 + 0 + 0 + 3*1 = 9 fills, but delta must be 0
        assert!(!hh_admissible(2, 0, 0, 1, 2));
        assert!(hh_admissible(2, 3, 0, 0, 2));
    }

    #[test]
    fn hh_beta_shift_breaks_fill() {
        for d in 0..=8u64 {
            for alpha in 0..=d + 1 {
                for gamma in 0..=d + 1 {
                    for delta in 0..=d + 1 {
                        let used = alpha * (d + 1) + gamma + 3 * delta;
                        let Some(beta) = ((d + 1) * (d + 1)).checked_sub(used) else { continue };
                        if hh_admissible(alpha, beta, gamma, delta, d) {
                            assert!(!hh_admissible(alpha, beta + 1, gamma, delta, d));
                            if beta > 0 {
                                assert!(!hh_admissible(alpha, beta - 1, gamma, delta, d));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exception_examples() {
        let c = classify_exception(4, 2, 1, 2, 2).unwrap();
        assert_eq!((c.exceptional, c.virtual_defect), (true, 1));
        let c = classify_exception(4, 3, 1, 3, 3).unwrap();
        assert_eq!((c.exceptional, c.virtual_defect), (true, 3));
        let c = classify_exception(5, 4, 1, 2, 7).unwrap();
        assert_eq!((c.exceptional, c.virtual_defect), (false, 0));
        assert!(classify_exception(3, 3, 0, 3, 2).is_err());
        assert!(classify_exception(3, 3, 2, 3, 2).is_err());
        // the fat-point family goes through the unrestricted rule
        assert!(exception_rule(3, 3, 0, 3, 2).unwrap().exceptional);
    }
}
