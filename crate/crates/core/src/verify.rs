//! Registry of identity checks and the report they produce.
//!
//! Each check is evaluated for ascending `n` over its range and stops at the
//! first violation, so a failure witness always carries the smallest failing
//! `n`. Formula-only checks (`FormulaEq`, `Divisibility`) use the formula
//! range; every other kind consults the enumerator and uses the oracle range.

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arrangement::{Arrangement, Family};
use crate::classes::{self, ClassPartition, PartitionSource};
use crate::enumeration::{self, EnumConfig, EnumError};
use crate::formulas::{self, FormulaError, Recursion};
use crate::maps::{self, MapError};

pub const DEFAULT_FORMULA_MAX: usize = 30;
pub const DEFAULT_ORACLE_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    FormulaEq,
    OracleEq,
    Divisibility,
    Bijection,
    Partition,
    EmpiricalReport,
}

impl CheckKind {
    pub fn uses_oracle(self) -> bool {
        !matches!(self, CheckKind::FormulaEq | CheckKind::Divisibility)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Reported,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// The formulas under test. Swapping an entry lets a test confirm that the
/// harness catches a wrong formula.
#[derive(Clone, Copy)]
pub struct FormulaBook {
    pub derangement: fn(u64) -> BigUint,
    pub d_big: fn(u64) -> BigUint,
    pub d_small: fn(u64) -> Result<BigUint, FormulaError>,
    pub d_big_recursive: fn(u64, Recursion) -> Result<BigUint, FormulaError>,
    pub dn1_count: fn(u64) -> Result<BigUint, FormulaError>,
    pub exact_fixed: fn(u64, u64) -> Result<BigUint, FormulaError>,
}

impl Default for FormulaBook {
    fn default() -> Self {
        FormulaBook {
            derangement: formulas::derangement,
            d_big: formulas::d_big,
            d_small: formulas::d_small,
            d_big_recursive: formulas::d_big_recursive,
            dn1_count: formulas::dn1_count,
            exact_fixed: formulas::exact_fixed_formula,
        }
    }
}

impl fmt::Debug for FormulaBook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FormulaBook { .. }")
    }
}

/// Outcome of a check at one `n`.
enum Step {
    Hold(Option<Value>),
    Violated(Value),
}

#[derive(Debug, Error)]
enum CheckError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Map(#[from] MapError),
}

type Eval = fn(&Ctx, u64) -> Result<Step, CheckError>;

pub struct IdentityCheck {
    pub id: &'static str,
    /// The identity being checked, stated in the crate's notation.
    pub statement: &'static str,
    pub kind: CheckKind,
    pub min_n: usize,
    eval: Eval,
}

impl fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCheck")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("min_n", &self.min_n)
            .finish()
    }
}

struct Ctx {
    book: FormulaBook,
    cfg: EnumConfig,
}

fn eq_witness(n: u64, lhs: impl ToString, rhs: impl ToString) -> Step {
    Step::Violated(json!({ "n": n, "lhs": lhs.to_string(), "rhs": rhs.to_string() }))
}

fn check_eq<T: PartialEq + ToString>(n: u64, lhs: T, rhs: T) -> Step {
    if lhs == rhs {
        Step::Hold(None)
    } else {
        eq_witness(n, lhs, rhs)
    }
}

fn divides(n: u64, divisor: u64, value: BigInt) -> Step {
    if value.is_multiple_of(&BigInt::from(divisor)) {
        Step::Hold(None)
    } else {
        Step::Violated(json!({ "n": n, "divisor": divisor, "value": value.to_string() }))
    }
}

fn partition_witness(n: u64, p: &ClassPartition, note: &str) -> Step {
    Step::Violated(json!({
        "n": n,
        "class_sizes": p.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "note": note,
    }))
}

fn count(ctx: &Ctx, n: u64, f: Family) -> Result<BigUint, CheckError> {
    Ok(enumeration::count(n as usize, f, &ctx.cfg)?)
}

fn partition_of(ctx: &Ctx, n: u64, f: Family) -> Result<ClassPartition, CheckError> {
    Ok(classes::partition(n as usize, PartitionSource::Family(f), &ctx.cfg)?)
}

fn big(v: BigUint) -> BigInt {
    BigInt::from(v)
}

/// Every nonempty class has `size`, and the classes in `empty` are empty.
fn classes_have_size(n: u64, p: &ClassPartition, size: &BigUint, empty: &[usize]) -> Step {
    for (i, s) in p.class_sizes.iter().enumerate() {
        let digit = i + 1;
        let ok = if empty.contains(&digit) { s.is_zero() } else { s == size };
        if !ok {
            return partition_witness(n, p, &format!("class {digit} has size {s}, expected {size}"));
        }
    }
    Step::Hold(None)
}

fn set_eq(a: &[Arrangement], b: &[Arrangement]) -> bool {
    a.len() == b.len() && a.iter().collect::<HashSet<_>>() == b.iter().collect::<HashSet<_>>()
}

// Formula identities.

fn lemma_2_3(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let b = &ctx.book;
    Ok(check_eq(n, (b.d_small)(n)?, (b.derangement)(n) + (b.derangement)(n - 1)))
}

fn prop_2_4(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let b = &ctx.book;
    Ok(check_eq(n, big((b.d_big)(n)), big((b.derangement)(n)) + formulas::sign(n - 1)))
}

fn eq_1(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let der = (ctx.book.derangement)(n);
    let by_recursion = formulas::derangement_by_recursion(n);
    if der != by_recursion {
        return Ok(eq_witness(n, der, by_recursion));
    }
    Ok(check_eq(n, der, count(ctx, n, Family::Derangement)?))
}

fn eq_2(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(check_eq(n, (ctx.book.d_big)(n), count(ctx, n, Family::BigD)?))
}

fn eq_em(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    for m in 0..=n {
        let formula = (ctx.book.exact_fixed)(n, m)?;
        let counted = count(ctx, n, Family::ExactFixed(m as usize))?;
        if formula != counted {
            return Ok(Step::Violated(json!({
                "n": n, "m": m, "lhs": formula.to_string(), "rhs": counted.to_string()
            })));
        }
    }
    Ok(check_eq(n, count(ctx, n, Family::All)?, formulas::factorial(n)))
}

fn eq_e1(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(check_eq(n, (ctx.book.exact_fixed)(n, 1)?, (ctx.book.d_big)(n)))
}

fn prop_6_1(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let h = ctx.book.exact_fixed;
    let one_fixed = h(n, 1)?;
    let step = check_eq(n, one_fixed.clone(), h(n - 1, 0)? * n);
    if let Step::Violated(_) = step {
        return Ok(step);
    }
    Ok(check_eq(n, one_fixed, (ctx.book.d_big)(n)))
}

fn lemma_3_1(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(check_eq(n, (ctx.book.d_big)(n), (ctx.book.derangement)(n - 1) * n))
}

fn cor_3_2(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(check_eq(n, (ctx.book.d_big_recursive)(n, Recursion::MulShift)?, (ctx.book.d_big)(n)))
}

fn cor_3_3(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(check_eq(n, (ctx.book.d_big_recursive)(n, Recursion::TwoTerm)?, (ctx.book.d_big)(n)))
}

fn lemma_3_6(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(check_eq(n, (ctx.book.derangement)(n), (ctx.book.d_small)(n - 1)? * (n - 1)))
}

// Divisibility.

fn cor_3_4(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(divides(n, n, big((ctx.book.d_big)(n))))
}

fn prop_3_5(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let der = big((ctx.book.derangement)(n));
    let shifted = if n % 2 == 0 { der - 1 } else { der + 1 };
    Ok(divides(n, n, shifted))
}

fn cor_3_7(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(divides(n, n - 1, big((ctx.book.derangement)(n))))
}

fn cor_4_10(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    Ok(divides(n, n - 1, big((ctx.book.dn1_count)(n)?)))
}

// Enumeration-backed identities and bijections.

fn lemma_2_1(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let b = &ctx.book;
    let small = count(ctx, n, Family::SmallD)?;
    let big_now = count(ctx, n, Family::BigD)?;
    let big_prev = count(ctx, n - 1, Family::BigD)?;
    let dn1 = count(ctx, n, Family::Dn1)?;
    let checks = [
        (small.clone(), &big_prev + &big_now),
        (small.clone(), &big_now + &dn1),
        ((b.d_small)(n)?, small),
        ((b.d_small)(n)?, (b.d_big)(n - 1) + (b.d_big)(n)),
    ];
    for (lhs, rhs) in checks {
        if lhs != rhs {
            return Ok(eq_witness(n, lhs, rhs));
        }
    }
    if n >= 2 {
        if (b.dn1_count)(n)? != dn1 {
            return Ok(eq_witness(n, (b.dn1_count)(n)?, dn1));
        }
        if let Some(w) = insertion_exception(n as usize, &ctx.cfg)? {
            return Ok(Step::Violated(json!({ "n": n, "source": w.to_string() })));
        }
    }
    Ok(Step::Hold(None))
}

/// The first word of `S_{n-1}` outside `{D_{n-1}}` whose insertion image is
/// succession-avoiding, if any. Words in `{d_{n-1}} \ {D_{n-1}}` must gain the
/// succession `(n-1, n)`; words outside `{d_{n-1}}` must keep one of theirs.
pub fn insertion_exception(n: usize, cfg: &EnumConfig) -> Result<Option<Arrangement>, EnumError> {
    let prev = (n - 1) as u8;
    for w in enumeration::enumerate(n - 1, Family::All, cfg)? {
        if w.in_family(Family::BigD) {
            continue;
        }
        let image = maps::insert_before_one(&w);
        let bad = if w.in_family(Family::SmallD) {
            !image.digits().windows(2).any(|p| p[0] == prev && p[1] == prev + 1)
        } else {
            image.is_succession_avoiding()
        };
        if bad {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn cor_2_2(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let cert = maps::certify_phi(n as usize, &ctx.cfg)?;
    let expected = (ctx.book.d_big)(n - 1);
    let pairs = BigUint::from(cert.pairs.len());
    if !cert.is_bijective() || pairs != expected {
        return Ok(Step::Violated(json!({
            "n": n,
            "pairs": cert.pairs.len(),
            "expected": expected.to_string(),
            "injective": cert.injective,
            "surjective": cert.surjective,
        })));
    }
    for (src, img) in &cert.pairs {
        if &maps::phi_inverse(img)? != src {
            return Ok(Step::Violated(json!({ "n": n, "source": src.to_string() })));
        }
    }
    Ok(Step::Hold(Some(json!({ "n": n, "pairs": cert.pairs.len() }))))
}

fn closed_under_inverse(ctx: &Ctx, n: u64, f: Family) -> Result<Step, CheckError> {
    let members = enumeration::enumerate(n as usize, f, &ctx.cfg)?;
    let images = maps::inverse_image_family(n as usize, f, &ctx.cfg)?;
    if set_eq(&members, &images) {
        return Ok(Step::Hold(None));
    }
    let member_set: HashSet<_> = members.iter().collect();
    let outside = images.iter().find(|w| !member_set.contains(w));
    Ok(Step::Violated(json!({
        "n": n,
        "image_outside_family": outside.map(|w| w.to_string()),
    })))
}

fn prop_5_1(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    closed_under_inverse(ctx, n, Family::SmallD)
}

fn prop_5_5(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    closed_under_inverse(ctx, n, Family::Derangement)
}

// Partitions.

fn prop_4_3(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::BigD)?;
    if !p.is_equidistributed() || p.nonempty_classes() != n as usize {
        return Ok(partition_witness(n, &p, "expected n equal nonempty classes"));
    }
    // Each class d is entered by the prefix "1n" (d = 1) or "d(d-1)".
    let members = enumeration::enumerate(n as usize, Family::BigD, &ctx.cfg)?;
    for d in 1..=n as u8 {
        let second = if d == 1 { n as u8 } else { d - 1 };
        if !members.iter().any(|w| w.digits()[..2] == [d, second]) {
            return Ok(Step::Violated(json!({ "n": n, "missing_prefix": format!("{d}{second}") })));
        }
    }
    Ok(Step::Hold(None))
}

fn cor_4_4(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::BigD)?;
    Ok(classes_have_size(n, &p, &(ctx.book.derangement)(n - 1), &[]))
}

fn prop_4_5(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::Derangement)?;
    let class_one_empty = p.size_of(1).is_some_and(Zero::is_zero);
    if !p.is_equidistributed() || !class_one_empty || p.nonempty_classes() != n as usize - 1 {
        return Ok(partition_witness(n, &p, "expected class 1 empty and n-1 equal classes"));
    }
    Ok(Step::Hold(None))
}

fn cor_4_6(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::Derangement)?;
    Ok(classes_have_size(n, &p, &(ctx.book.d_small)(n - 1)?, &[1]))
}

fn lemma_4_7(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::Dn1)?;
    if p.size_of(1).is_some_and(Zero::is_zero) {
        Ok(Step::Hold(None))
    } else {
        Ok(partition_witness(n, &p, "class 1 is not empty"))
    }
}

fn lemma_4_8(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::Dn1)?;
    let size = (ctx.book.derangement)(n - 2);
    if p.total() != &size * (n - 1) {
        return Ok(eq_witness(n, p.total(), &size * (n - 1)));
    }
    Ok(classes_have_size(n, &p, &size, &[1]))
}

fn prop_4_9(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::Dn1)?;
    if p.is_equidistributed() && p.nonempty_classes() == n as usize - 1 {
        Ok(Step::Hold(None))
    } else {
        Ok(partition_witness(n, &p, "expected n-1 equal nonempty classes"))
    }
}

fn prop_4_11(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = partition_of(ctx, n, Family::SmallD)?;
    if p.is_equidistributed() {
        return Ok(partition_witness(n, &p, "unexpectedly equidistributed"));
    }
    let first = &p.class_sizes[0];
    if p.class_sizes[1..].iter().any(|s| s <= first) {
        return Ok(partition_witness(n, &p, "class 1 is not strictly smallest"));
    }
    Ok(Step::Hold(None))
}

fn prop_5_6(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = classes::partition(
        n as usize,
        PartitionSource::InverseImage(Family::Derangement),
        &ctx.cfg,
    )?;
    if p.is_equidistributed() {
        Ok(Step::Hold(None))
    } else {
        Ok(partition_witness(n, &p, "inverse images of derangements not equidistributed"))
    }
}

fn prop_5_3(ctx: &Ctx, n: u64) -> Result<Step, CheckError> {
    let p = classes::partition(n as usize, PartitionSource::InverseImage(Family::BigD), &ctx.cfg)?;
    Ok(Step::Hold(Some(json!({
        "n": n,
        "class_sizes": p.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "equidistributed": p.is_equidistributed(),
    }))))
}

macro_rules! check {
    ($id:literal, $kind:ident, $min:literal, $eval:ident, $statement:literal) => {
        IdentityCheck {
            id: $id,
            statement: $statement,
            kind: CheckKind::$kind,
            min_n: $min,
            eval: $eval,
        }
    };
}

/// Every registered check, in report order.
pub static REGISTRY: &[IdentityCheck] = &[
    check!("eq-1", OracleEq, 0, eq_1,
        "Der(n) = sum_{k=0..n} (-1)^k n!/k! = n Der(n-1) + (-1)^n = #derangements"),
    check!("lemma-2.1", OracleEq, 1, lemma_2_1,
        "d(n) = D(n-1) + D(n); {d_n} = {d_n1} + {D_n} disjointly; insertion fails outside {D_(n-1)}"),
    check!("cor-2.2", Bijection, 2, cor_2_2,
        "phi: {D_(n-1)} -> {d_n1} is a bijection, so d_n1 = D(n-1)"),
    check!("lemma-2.3", FormulaEq, 1, lemma_2_3,
        "d(n) = Der(n) + Der(n-1)"),
    check!("prop-2.4", FormulaEq, 1, prop_2_4,
        "D(n) = Der(n) + (-1)^(n-1)"),
    check!("eq-2", OracleEq, 0, eq_2,
        "D(n) = sum_{k=0..n-1} (-1)^k n!/k! = #{D_n}"),
    check!("lemma-3.1", FormulaEq, 1, lemma_3_1,
        "D(n) = n Der(n-1)"),
    check!("cor-3.2", FormulaEq, 1, cor_3_2,
        "D(n) = n [D(n-1) + (-1)^(n-1)]"),
    check!("cor-3.3", FormulaEq, 2, cor_3_3,
        "D(n) = (n-1)[D(n-1) + D(n-2)] + (-1)^(n-1)"),
    check!("cor-3.4", Divisibility, 1, cor_3_4,
        "n divides D(n)"),
    check!("prop-3.5", Divisibility, 1, prop_3_5,
        "n divides Der(n) - 1 for even n, Der(n) + 1 for odd n"),
    check!("lemma-3.6", FormulaEq, 2, lemma_3_6,
        "Der(n) = (n-1) d(n-1)"),
    check!("cor-3.7", Divisibility, 2, cor_3_7,
        "n-1 divides Der(n)"),
    check!("prop-4.3", Partition, 3, prop_4_3,
        "{D_n} is equidistributed over n nonempty leading-digit classes"),
    check!("cor-4.4", Partition, 3, cor_4_4,
        "each class of {D_n} has Der(n-1) members"),
    check!("prop-4.5", Partition, 2, prop_4_5,
        "{Der_n} is equidistributed, class 1 empty, n-1 nonempty classes"),
    check!("cor-4.6", Partition, 2, cor_4_6,
        "each nonempty class of {Der_n} has d(n-1) members"),
    check!("lemma-4.7", Partition, 2, lemma_4_7,
        "class 1 of {d_n1} is empty"),
    check!("lemma-4.8", Partition, 2, lemma_4_8,
        "each nonempty class of {d_n1} has Der(n-2) members; d_n1 = (n-1) Der(n-2)"),
    check!("prop-4.9", Partition, 4, prop_4_9,
        "{d_n1} is equidistributed over n-1 nonempty classes"),
    check!("cor-4.10", Divisibility, 2, cor_4_10,
        "n-1 divides d_n1"),
    check!("prop-4.11", Partition, 4, prop_4_11,
        "{d_n} is not equidistributed; class 1 is strictly smallest"),
    check!("prop-5.1", Bijection, 2, prop_5_1,
        "{d_n} is closed under inversion"),
    check!("prop-5.3", EmpiricalReport, 3, prop_5_3,
        "leading-digit classes of inverse-image({D_n}) (claimed not equidistributed)"),
    check!("prop-5.5", Bijection, 2, prop_5_5,
        "{Der_n} is closed under inversion"),
    check!("prop-5.6", Partition, 2, prop_5_6,
        "inverse-image({Der_n}) is equidistributed"),
    check!("eq-em", OracleEq, 0, eq_em,
        "E_m = sum_{j=m..n} (-1)^(j-m) C(j, j-m) C(n, j)(n-j)! = #{exactly m fixed points}"),
    check!("eq-e1", FormulaEq, 1, eq_e1,
        "E_1 = D(n)"),
    check!("prop-6.1", FormulaEq, 1, prop_6_1,
        "h(n,1) = n h(n-1,0) = D(n)"),
];

pub fn lookup(id: &str) -> Result<&'static IdentityCheck, VerifyError> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| VerifyError::UnknownIdentity(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub paper_ref: String,
    pub kind: CheckKind,
    pub status: Status,
    /// Inclusive `[lo, hi]` after clamping to the check's minimum `n`.
    pub range: [usize; 2],
    pub n_tested: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub data: Vec<Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    fn from_records(checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Reported => summary.reported += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        VerificationReport { checks, summary }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Pretty JSON with keys in sorted order and timing omitted.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is always serializable");
        serde_json::to_string_pretty(&value).expect("value is always serializable")
    }
}

/// Runs registered checks against a formula book and enumeration config.
#[derive(Debug, Clone, Default)]
pub struct Verifier {
    pub book: FormulaBook,
    pub cfg: EnumConfig,
}

impl Verifier {
    pub fn new(book: FormulaBook, cfg: EnumConfig) -> Self {
        Verifier { book, cfg }
    }

    pub fn run_all(&self, formula_n_max: usize, oracle_n_max: usize) -> VerificationReport {
        let jobs: Vec<_> = REGISTRY
            .iter()
            .map(|c| {
                let hi = if c.kind.uses_oracle() { oracle_n_max } else { formula_n_max };
                (c, 0..=hi)
            })
            .collect();
        self.run_jobs(jobs)
    }

    pub fn run_one(&self, id: &str, range: RangeInclusive<usize>) -> Result<VerificationReport, VerifyError> {
        let check = lookup(id)?;
        Ok(self.run_jobs(vec![(check, range)]))
    }

    /// Runs the given ids, each over the default range for its kind.
    pub fn run_ids(
        &self,
        ids: &[&str],
        formula_n_max: usize,
        oracle_n_max: usize,
    ) -> Result<VerificationReport, VerifyError> {
        let jobs = ids
            .iter()
            .map(|id| {
                let c = lookup(id)?;
                let hi = if c.kind.uses_oracle() { oracle_n_max } else { formula_n_max };
                Ok((c, 0..=hi))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.run_jobs(jobs))
    }

    fn run_jobs(&self, jobs: Vec<(&'static IdentityCheck, RangeInclusive<usize>)>) -> VerificationReport {
        #[cfg(feature = "parallel")]
        if self.cfg.workers > 1 && jobs.len() > 1 {
            use rayon::prelude::*;
            // Checks run concurrently; each searches single-threaded.
            let inner = Ctx { book: self.book, cfg: self.cfg.with_workers(1) };
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(self.cfg.workers).build() {
                let records = pool.install(|| {
                    jobs.par_iter().map(|(c, r)| run_check(&inner, c, r.clone())).collect()
                });
                return VerificationReport::from_records(records);
            }
        }
        let ctx = Ctx { book: self.book, cfg: self.cfg };
        let records = jobs.into_iter().map(|(c, r)| run_check(&ctx, c, r)).collect();
        VerificationReport::from_records(records)
    }
}

fn run_check(ctx: &Ctx, check: &IdentityCheck, range: RangeInclusive<usize>) -> CheckRecord {
    let start = Instant::now();
    let lo = (*range.start()).max(check.min_n);
    let hi = *range.end();
    let mut record = CheckRecord {
        id: check.id.to_string(),
        paper_ref: check.statement.to_string(),
        kind: check.kind,
        status: Status::Pass,
        range: [lo, hi],
        n_tested: 0,
        witness: None,
        reason: None,
        data: Vec::new(),
        elapsed: Duration::ZERO,
    };
    if lo > hi {
        record.status = Status::Skipped;
        record.reason = Some(format!("empty range: check needs n >= {}", check.min_n));
        return record;
    }
    for n in lo..=hi {
        match (check.eval)(ctx, n as u64) {
            Ok(Step::Hold(note)) => {
                record.n_tested += 1;
                record.data.extend(note);
            }
            Ok(Step::Violated(w)) => {
                record.n_tested += 1;
                record.status = Status::Fail;
                record.witness = Some(w);
                break;
            }
            Err(e) => {
                record.status = Status::Skipped;
                record.reason = Some(format!("n = {n}: {e}"));
                break;
            }
        }
    }
    if check.kind == CheckKind::EmpiricalReport && record.status == Status::Pass {
        record.status = Status::Reported;
    }
    record.elapsed = start.elapsed();
    record
}

/// Runs every registered check with the default formula book.
pub fn run_all(formula_n_max: usize, oracle_n_max: usize, cfg: &EnumConfig) -> VerificationReport {
    Verifier::new(FormulaBook::default(), *cfg).run_all(formula_n_max, oracle_n_max)
}

pub fn run_one(
    id: &str,
    range: RangeInclusive<usize>,
    cfg: &EnumConfig,
) -> Result<VerificationReport, VerifyError> {
    Verifier::new(FormulaBook::default(), *cfg).run_one(id, range)
}
