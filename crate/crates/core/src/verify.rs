//! Cross-engine verification suite.
//!
//! Each check compares two independent routes to the same numbers and
//! reports PASS or FAIL together with the first disagreement it met.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::oracle::{self, OracleReport, WeightConvention};
use crate::perm::circular_target;
use crate::recurrence::{check_conjectures, ASequence, Recurrences};
use crate::series::{
    a_vu_series, b1u_series, c1u_series, rational, Argument, GfBundle, TruncatedSeries,
};

/// a_1 … a_30 as published.
pub const PUBLISHED_A: [&str; 30] = [
    "1",
    "2",
    "5",
    "15",
    "50",
    "180",
    "690",
    "2792",
    "11857",
    "52633",
    "243455",
    "1170525",
    "5837934",
    "30151474",
    "161021581",
    "888001485",
    "5051014786",
    "29600662480",
    "178541105770",
    "1107321666920",
    "7055339825171",
    "46142654894331",
    "309513540865544",
    "2127744119042216",
    "14979904453920111",
    "107932371558460341",
    "795363217306369817",
    "5990768203554158167",
    "46094392105916344968",
    "362092868720288824992",
];

pub fn published_a() -> Vec<BigUint> {
    PUBLISHED_A
        .iter()
        .map(|s| s.parse().expect("decimal literal"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, failure: Option<String>, ok: String) -> Self {
        match failure {
            Some(detail) => Self {
                name: name.into(),
                passed: false,
                detail,
            },
            None => Self {
                name: name.into(),
                passed: true,
                detail: ok,
            },
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaultTable {
    B,
    C,
}

/// A recurrence cell to corrupt before checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub table: FaultTable,
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl Fault {
    pub fn apply(&self, rec: &mut Recurrences) {
        match self.table {
            FaultTable::B => rec.b.0.inject_fault(self.n, self.i, self.j),
            FaultTable::C => rec.c.0.inject_fault(self.n, self.i, self.j),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Oracle comparisons run for 2 ≤ n ≤ oracle_max.
    pub oracle_max: usize,
    pub reduction_max: usize,
    /// Length of the recurrence table.
    pub table_n: usize,
    pub order: usize,
    pub weighted_max: usize,
    pub weights: Vec<i64>,
    pub bivariate: (i64, i64),
    pub bivariate_pin: usize,
    pub bivariate_max: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            oracle_max: 9,
            reduction_max: 8,
            table_n: 30,
            order: 32,
            weighted_max: 12,
            weights: vec![2, 3, 5],
            bivariate: (2, 3),
            bivariate_pin: 6,
            bivariate_max: 8,
            fault: None,
        }
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn as_rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// First index where two coefficient lists differ.
fn first_difference(label: &str, got: &[BigRational], want: &[BigRational], from: usize) -> Option<String> {
    (from..got.len().min(want.len()))
        .find(|&k| got[k] != want[k])
        .map(|k| format!("{label} at x^{k}: series {}, expected {}", got[k], want[k]))
}

/// The published table against the recurrence and against A(x).
pub fn check_published(a: &ASequence, a_gf: &TruncatedSeries) -> CheckOutcome {
    let published = published_a();
    let mut failure = None;
    if a.len() < published.len() {
        failure = Some(format!("recurrence table has only {} terms", a.len()));
    }
    if failure.is_none() {
        failure = (1..=published.len())
            .find(|&n| a.get(n) != &published[n - 1])
            .map(|n| format!("a_{n}: recurrence {}, published {}", a.get(n), published[n - 1]));
    }
    if failure.is_none() {
        if a_gf.order() < published.len() + 1 {
            failure = Some(format!("A(x) computed only to order {}", a_gf.order()));
        } else {
            failure = (1..=published.len())
                .find(|&n| a_gf.coeff(n + 1) != &as_rational(&published[n - 1]))
                .map(|n| format!("a_{n}: A(x) gives {}, published {}", a_gf.coeff(n + 1), published[n - 1]));
        }
    }
    CheckOutcome::new(
        "published table",
        failure,
        format!(
            "a_1..a_30 reproduced by recurrence and A(x); a_30 = {}",
            published[29]
        ),
    )
}

/// Every recurrence cell against the exhaustive scan, plus both counting
/// identities.
pub fn check_oracle_vs_dp(rec: &Recurrences, max: usize) -> CheckOutcome {
    let mut failure = None;
    'outer: for n in 2..=max {
        let o = OracleReport::compute(n);
        for i in 1..=n {
            for j in 1..=n {
                let (b_dp, b_or) = (rec.b.get(n, i, j), big(o.b_cell(i, j)));
                if *b_dp != b_or {
                    failure = Some(format!("b({n},{i},{j}): recurrence {b_dp}, oracle {b_or}"));
                    break 'outer;
                }
                let (c_dp, c_or) = (rec.c.get(n, i, j), big(o.c_cell(i, j)));
                if *c_dp != c_or {
                    failure = Some(format!("c({n},{i},{j}): recurrence {c_dp}, oracle {c_or}"));
                    break 'outer;
                }
            }
            let (v_dp, v_or) = (rec.v.get(n, i), big(o.v_cell(i)));
            if *v_dp != v_or {
                failure = Some(format!("v({n},{i}): recurrence {v_dp}, oracle {v_or}"));
                break 'outer;
            }
        }
        if *rec.a.get(n) != big(o.a) {
            failure = Some(format!("|L_{n}|: recurrence {}, oracle {}", rec.a.get(n), o.a));
            break;
        }
        if *rec.a.get(n - 1) != big(o.circular) {
            failure = Some(format!(
                "|A_{n}|: oracle {}, recurrence a_{} = {}",
                o.circular,
                n - 1,
                rec.a.get(n - 1)
            ));
            break;
        }
    }
    CheckOutcome::new(
        "oracle vs recurrence",
        failure,
        format!("every b, c, v cell, |L_n| and |A_n| agree for 2 <= n <= {max}"),
    )
}

pub fn check_reduction(max: usize) -> CheckOutcome {
    let failure = (2..=max).find_map(|n| {
        oracle::first_reduction_counterexample(n).map(|p| format!("n = {n}: class of {p} breaks the reduction"))
    });
    CheckOutcome::new(
        "reduction",
        failure,
        format!(
            "circular {} avoidance equals the linear pair condition for 2 <= n <= {max}",
            circular_target()
        ),
    )
}

/// Marginal sums and the structurally zero cells of the recurrence tables.
pub fn check_dp_structure(rec: &Recurrences) -> CheckOutcome {
    let n_max = rec.max_n();
    let mut failure = None;
    for n in 1..=n_max {
        if let Some(j) = rec.b.0.marginal_violations(n).first() {
            failure = Some(format!("b({n},·,{j}) does not sum to its marginal"));
            break;
        }
        if let Some(j) = rec.c.0.marginal_violations(n).first() {
            failure = Some(format!("c({n},·,{j}) does not sum to its marginal"));
            break;
        }
    }
    if failure.is_none() {
        failure = rec
            .b
            .structural_violations()
            .first()
            .map(|(n, i, j)| format!("b({n},{i},{j}) should be zero"))
            .or_else(|| {
                rec.c
                    .structural_violations()
                    .first()
                    .map(|(n, i, j)| format!("c({n},{i},{j}) should be zero"))
            });
    }
    CheckOutcome::new(
        "recurrence structure",
        failure,
        format!("marginals and zero cells consistent for n <= {n_max}"),
    )
}

fn naturals(xs: impl Iterator<Item = BigUint>) -> Vec<BigRational> {
    xs.map(|x| as_rational(&x)).collect()
}

/// A, B11, C11 and V1 coefficientwise against the recurrence totals.
pub fn check_series_vs_dp(rec: &Recurrences, gf: &GfBundle) -> CheckOutcome {
    let top = gf.order.min(rec.max_n());
    let a_top = gf.order.min(rec.max_n() + 1);
    let want_a: Vec<BigRational> = std::iter::once(BigRational::zero())
        .chain(std::iter::once(BigRational::one()))
        .chain(naturals((1..a_top).map(|n| rec.a.get(n).clone())))
        .collect();
    let totals = |f: &dyn Fn(usize) -> BigUint| -> Vec<BigRational> {
        std::iter::once(BigRational::zero())
            .chain(naturals((1..=top).map(f)))
            .collect()
    };
    let failure = first_difference("A", gf.a.coeffs(), &want_a, 0)
        .or_else(|| first_difference("B(x,1,1)", gf.b11.coeffs(), &totals(&|n| rec.b.total(n)), 0))
        .or_else(|| first_difference("C(x,1,1)", gf.c11.coeffs(), &totals(&|n| rec.c.total(n)), 0))
        .or_else(|| first_difference("V(x,1)", gf.v1.coeffs(), &totals(&|n| rec.v.total(n)), 0));
    CheckOutcome::new(
        "series vs recurrence",
        failure,
        format!("A, B(x,1,1), C(x,1,1), V(x,1) agree with the tables through x^{a_top}"),
    )
}

/// V0 = x + x V1, and the u = 1 and (v,u) = (1,1) specializations.
pub fn check_gf_identities(gf: &GfBundle) -> CheckOutcome {
    let order = gf.order;
    let rhs = gf
        .v1
        .shift_up(1)
        .add(&TruncatedSeries::monomial(order, 1))
        .expect("same order");
    let one = Argument::one();
    let mut failure = first_difference("V(x,0) - x - xV(x,1)", gf.v0.coeffs(), rhs.coeffs(), 0);
    if failure.is_none() {
        failure = match c1u_series(&one, order) {
            Ok(s) => first_difference("C(x,1,u) at u=1 vs C(x,1,1)", s.coeffs(), gf.c11.coeffs(), 0),
            Err(e) => Some(format!("C(x,1,u) at u=1: {e}")),
        };
    }
    if failure.is_none() {
        failure = match b1u_series(&one, order) {
            Ok(s) => first_difference("B(x,1,u) at u=1 vs B(x,1,1)", s.coeffs(), gf.b11.coeffs(), 0),
            Err(e) => Some(format!("B(x,1,u) at u=1: {e}")),
        };
    }
    if failure.is_none() {
        failure = match a_vu_series(&one, &one, order) {
            Ok(s) => first_difference("A(x,v,u) at (1,1) vs A(x)", s.coeffs(), gf.a.coeffs(), 0),
            Err(e) => Some(format!("A(x,v,u) at (1,1): {e}")),
        };
    }
    CheckOutcome::new(
        "generating-function identities",
        failure,
        format!("V(x,0) = x + xV(x,1), C(x,1,1), B(x,1,1), A(x,1,1) = A(x) through x^{order}"),
    )
}

fn weighted_dp(marginal: impl Fn(usize) -> BigUint, n: usize, u: &BigRational, shift: i32) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, j| {
        let e = j as i32 - shift;
        let w = if e >= 0 {
            num_traits::pow(u.clone(), e as usize)
        } else {
            num_traits::pow(u.recip(), (-e) as usize)
        };
        acc + as_rational(&marginal(j)) * w
    })
}

/// B(x,1,u) and C(x,1,u) at scalar u against u-weighted recurrence marginals.
pub fn check_weighted_marginals(rec: &Recurrences, max: usize, weights: &[i64]) -> CheckOutcome {
    let mut failure = None;
    for &u in weights {
        let uq = rational(u);
        let arg = Argument::int(u);
        let b = b1u_series(&arg, max);
        let c = c1u_series(&arg, max);
        let (b, c) = match (b, c) {
            (Ok(b), Ok(c)) => (b, c),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(format!("u = {u}: {e}"));
                break;
            }
        };
        for n in 1..=max.min(rec.max_n()) {
            let wb = weighted_dp(|j| rec.b.marginal(n as i64, j as i64).clone(), n, &uq, 1);
            if b.coeff(n) != &wb {
                failure = Some(format!("u = {u}, n = {n}: B(x,1,u) gives {}, sum b(n,j)u^(j-1) = {wb}", b.coeff(n)));
                break;
            }
            let wc = weighted_dp(|j| rec.c.marginal(n as i64, j as i64).clone(), n, &uq, 2);
            if c.coeff(n) != &wc {
                failure = Some(format!("u = {u}, n = {n}: C(x,1,u) gives {}, sum c(n,j)u^(j-2) = {wc}", c.coeff(n)));
                break;
            }
        }
        if failure.is_some() {
            break;
        }
    }
    let us: Vec<String> = weights.iter().map(|u| u.to_string()).collect();
    CheckOutcome::new(
        "weighted marginals",
        failure,
        format!("B(x,1,u), C(x,1,u) match weighted marginals at u in {{{}}} for n <= {max}", us.join(",")),
    )
}

pub fn check_integrality(gf: &GfBundle) -> CheckOutcome {
    let failure = [("A", &gf.a), ("B(x,1,1)", &gf.b11), ("C(x,1,1)", &gf.c11), ("V(x,1)", &gf.v1)]
        .into_iter()
        .find_map(|(name, s)| {
            s.to_naturals()
                .err()
                .map(|k| format!("{name} has coefficient {} at x^{k}", s.coeff(k)))
        });
    CheckOutcome::new(
        "integrality",
        failure,
        format!("A, B(x,1,1), C(x,1,1), V(x,1) are non-negative integers through x^{}", gf.order),
    )
}

pub fn check_conjecture(a: &ASequence) -> CheckOutcome {
    let report = check_conjectures(a);
    let failure = report
        .first_failure()
        .map(|n| format!("a_{n}^{} >= a_{}^{n}", n + 1, n + 1));
    let ratios = if report.ratios_increasing() {
        "ratios a_(n+1)/a_n strictly increase"
    } else {
        "ratios a_(n+1)/a_n do not strictly increase"
    };
    CheckOutcome::new(
        "conjectured inequality",
        failure,
        format!(
            "a_n^(n+1) < a_(n+1)^n for all n < {} (checked, not proven); {ratios} (observation)",
            a.len()
        ),
    )
}

/// Decides which weight convention A(x,v,u) follows on the small sizes,
/// then asserts it on the larger ones.
pub fn pin_convention(series: &TruncatedSeries, v: &BigRational, u: &BigRational, pin: usize) -> Option<WeightConvention> {
    let matches = |conv| {
        (1..=pin.min(series.order())).all(|n| series.coeff(n) == &oracle::weighted_circular_sum(n, v, u, conv))
    };
    let two = matches(WeightConvention::LetterMinusTwo);
    let one = matches(WeightConvention::LetterMinusOne);
    match (two, one) {
        (true, false) => Some(WeightConvention::LetterMinusTwo),
        (false, true) => Some(WeightConvention::LetterMinusOne),
        _ => None,
    }
}

pub fn check_bivariate(v: i64, u: i64, pin: usize, max: usize) -> CheckOutcome {
    let (vq, uq) = (rational(v), rational(u));
    let name = "bivariate specialization";
    let series = match a_vu_series(&Argument::int(v), &Argument::int(u), max) {
        Ok(s) => s,
        Err(e) => return CheckOutcome::new(name, Some(format!("A(x,{v},{u}): {e}")), String::new()),
    };
    let Some(conv) = pin_convention(&series, &vq, &uq, pin) else {
        return CheckOutcome::new(
            name,
            Some(format!("no single weight convention matches A(x,{v},{u}) for n <= {pin}")),
            String::new(),
        );
    };
    let failure = (3..=max).find_map(|n| {
        let want = oracle::weighted_circular_sum(n, &vq, &uq, conv);
        (series.coeff(n) != &want).then(|| format!("n = {n}: A(x,{v},{u}) gives {}, oracle {want}", series.coeff(n)))
    });
    let label = match conv {
        WeightConvention::LetterMinusTwo => "letter - 2",
        WeightConvention::LetterMinusOne => "letter - 1",
    };
    CheckOutcome::new(
        name,
        failure,
        format!("exponent = {label} (pinned at n <= {pin}); A(x,{v},{u}) matches the oracle for 3 <= n <= {max}"),
    )
}

/// Runs the whole suite.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let n = cfg.table_n.max(cfg.oracle_max).max(cfg.weighted_max).max(1);
    let mut rec = Recurrences::compute(n);
    if let Some(f) = cfg.fault {
        f.apply(&mut rec);
    }
    let mut outcomes = vec![check_dp_structure(&rec), check_oracle_vs_dp(&rec, cfg.oracle_max)];
    outcomes.push(check_reduction(cfg.reduction_max));
    match GfBundle::compute(cfg.order) {
        Ok(gf) => {
            if cfg.table_n >= PUBLISHED_A.len() && cfg.order > PUBLISHED_A.len() {
                outcomes.push(check_published(&rec.a, &gf.a));
            }
            outcomes.push(check_series_vs_dp(&rec, &gf));
            outcomes.push(check_gf_identities(&gf));
            outcomes.push(check_integrality(&gf));
        }
        Err(e) => outcomes.push(CheckOutcome::new("generating functions", Some(e.to_string()), String::new())),
    }
    outcomes.push(check_weighted_marginals(&rec, cfg.weighted_max, &cfg.weights));
    outcomes.push(check_conjecture(&rec.a));
    let (v, u) = cfg.bivariate;
    outcomes.push(check_bivariate(v, u, cfg.bivariate_pin, cfg.bivariate_max));
    VerifyReport { outcomes }
}
