//! Bounded exhaustive enumeration and the verification suites.
//!
//! Every suite walks a finite, lexicographically ordered family of cases,
//! evaluates them in parallel and reports them in enumeration order, so the
//! output is identical from run to run.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hc::{conjugate_dual, HcParam, LiftContext, Signature};
use crate::ktypes::{correspond_ktype, KType};
use crate::lifting::{aq_infinitesimal_character, aq_to_discrete_series, lift, lift_down, lift_up};
use crate::nonvanishing::{c_count, invariants, k0_for, li_sufficient, occurs};
use crate::packets::{
    eta_from_pi, eta_prime_sign_ok, pi_from_eta, sigma_from_eta_prime, ACharacter, AParameter,
    LParameter,
};
use crate::transfer::{epsilon_of_signature, lift_via_packet, verify_globalization};
use crate::{Half, Sign};

/// Bounds of an enumeration: `n ≤ max_n`, `m − n ≤ max_m_minus_n` and
/// `|entry| ≤ height` for the shifted entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationBounds {
    pub max_n: usize,
    pub max_m_minus_n: usize,
    pub height: Half,
}

impl EnumerationBounds {
    pub fn new(max_n: usize, max_m_minus_n: usize, height: Half) -> Result<Self> {
        if max_n == 0 || max_m_minus_n == 0 || !height.is_positive() {
            return Err(Error::PreconditionViolation(
                "enumeration bounds must be positive".into(),
            ));
        }
        Ok(Self {
            max_n,
            max_m_minus_n,
            height,
        })
    }

    /// `n ≤ 5`, `m − n ≤ 8`, `|λ₀| ≤ 11/2`.
    pub fn standard() -> Self {
        Self {
            max_n: 5,
            max_m_minus_n: 8,
            height: Half::from_twice(11),
        }
    }
}

/// Doubled values `v ≡ parity (mod 2)` with `|v| ≤ 2·height`, decreasing.
fn coset_values(parity: i64, height: Half) -> Vec<i64> {
    let top = height.twice();
    (-top..=top)
        .rev()
        .filter(|v| (v - parity).rem_euclid(2) == 0)
        .collect()
}

/// All parameters of signatures `(p,q)` with `p + q = n` whose shifted
/// entries `λ − m0/2` are bounded by `height`, for targets of parity `m0`.
///
/// Ordered by the entry set (lexicographically, largest entries first) and
/// then by the bit mask placing entries in the `q`-part.
pub fn parameters(n: usize, m0: i64, height: Half) -> Vec<HcParam> {
    let k0 = k0_for(n, m0.rem_euclid(2) as usize);
    let values = coset_values(k0 - 1, height);
    let mut out = Vec::new();
    for combo in values.iter().combinations(n) {
        for mask in 0..1u32 << n {
            let (mut p_part, mut q_part) = (Vec::new(), Vec::new());
            for (i, &&v) in combo.iter().enumerate() {
                let entry = Half::from_twice(v + m0);
                if mask >> i & 1 == 0 {
                    p_part.push(entry);
                } else {
                    q_part.push(entry);
                }
            }
            out.push(HcParam::from_parts(p_part, q_part).expect("enumerated parameter is valid"));
        }
    }
    out
}

/// The verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    TwoPath,
    RoundTrip,
    Duality,
    Persistence,
    Li,
    EtaPrime,
    Packets,
    Globalization,
    KTypes,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::TwoPath,
        Suite::RoundTrip,
        Suite::Duality,
        Suite::Persistence,
        Suite::Li,
        Suite::EtaPrime,
        Suite::Packets,
        Suite::Globalization,
        Suite::KTypes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::TwoPath => "two_path",
            Suite::RoundTrip => "round_trip",
            Suite::Duality => "duality",
            Suite::Persistence => "persistence",
            Suite::Li => "li",
            Suite::EtaPrime => "eta_prime",
            Suite::Packets => "packets",
            Suite::Globalization => "globalization",
            Suite::KTypes => "ktypes",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> std::result::Result<Self, UnknownSuite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Totals of a suite run. `notes` counts cases that are neither passes nor
/// failures in the usual sense (skipped, ambiguous, vanishing, …).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub cases: u64,
    pub failures: u64,
    pub notes: BTreeMap<String, u64>,
    #[serde(skip)]
    pub first_failures: Vec<Value>,
}

impl SuiteSummary {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.as_str().to_string(),
            cases: 0,
            failures: 0,
            notes: BTreeMap::new(),
            first_failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn note(&self, key: &str) -> u64 {
        self.notes.get(key).copied().unwrap_or(0)
    }

    fn bump(&mut self, key: &str, by: u64) {
        if by > 0 {
            *self.notes.entry(key.to_string()).or_default() += by;
        }
    }
}

/// Result of one case.
struct Outcome {
    counted: bool,
    pass: bool,
    notes: Vec<(&'static str, u64)>,
    record: Option<Value>,
}

impl Outcome {
    /// Failing cases always carry their record.
    fn new(want: bool, pass: bool, record: impl FnOnce() -> Value) -> Self {
        Self {
            counted: true,
            pass,
            notes: Vec::new(),
            record: (want || !pass).then(record),
        }
    }

    fn noted(mut self, key: &'static str, by: u64) -> Self {
        self.notes.push((key, by));
        self
    }

    /// Outside the scope of the suite; only tallied under `key`.
    fn skipped(key: &'static str) -> Self {
        Self {
            counted: false,
            pass: true,
            notes: vec![(key, 1)],
            record: None,
        }
    }
}

const KEEP_FAILURES: usize = 8;

type Sink<'a> = Option<&'a mut dyn FnMut(&Value)>;

struct Runner<'a> {
    summary: SuiteSummary,
    sink: Sink<'a>,
}

impl Runner<'_> {
    fn want(&self) -> bool {
        self.sink.is_some()
    }

    fn run<T, F>(&mut self, items: &[T], f: F)
    where
        T: Sync,
        F: Fn(&T, bool) -> Vec<Outcome> + Sync,
    {
        let want = self.want();
        let batches: Vec<Vec<Outcome>> = items.par_iter().map(|t| f(t, want)).collect();
        for o in batches.into_iter().flatten() {
            for (key, by) in o.notes {
                self.summary.bump(key, by);
            }
            if !o.counted {
                continue;
            }
            self.summary.cases += 1;
            if !o.pass {
                self.summary.failures += 1;
                if self.summary.first_failures.len() < KEEP_FAILURES {
                    self.summary.first_failures.extend(o.record.clone());
                }
            }
            if let (Some(sink), Some(rec)) = (self.sink.as_mut(), o.record.as_ref()) {
                sink(rec);
            }
        }
    }
}

fn err_json(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// `(n, m)` pairs with `1 ≤ n ≤ max_n` and `m` in the given offset range.
fn dims(bounds: &EnumerationBounds, lo: i64, hi: i64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=bounds.max_n {
        for d in lo..=hi {
            let m = n as i64 + d;
            if m >= 1 {
                out.push((n, m as usize));
            }
        }
    }
    out
}

/// Runs a suite, streaming one JSON record per case into `sink` when given.
pub fn run_suite(suite: Suite, bounds: &EnumerationBounds, sink: Sink<'_>) -> SuiteSummary {
    let mut runner = Runner {
        summary: SuiteSummary::new(suite),
        sink,
    };
    let dm = bounds.max_m_minus_n as i64;
    match suite {
        Suite::TwoPath => lift_family(&mut runner, bounds, 1, dm, two_path_case),
        Suite::RoundTrip => lift_family(
            &mut runner,
            bounds,
            -(bounds.max_n as i64),
            -1,
            round_trip_case,
        ),
        Suite::Duality => lift_family(
            &mut runner,
            bounds,
            -(bounds.max_n as i64),
            dm,
            duality_case,
        ),
        Suite::Persistence => lift_family(
            &mut runner,
            bounds,
            -(bounds.max_n as i64),
            dm,
            persistence_case,
        ),
        Suite::Li => lift_family(&mut runner, bounds, 0, dm, li_case),
        Suite::Globalization => lift_family(&mut runner, bounds, 1, dm, globalization_case),
        Suite::EtaPrime => eta_prime_suite(&mut runner, bounds),
        Suite::Packets => packets_suite(&mut runner, bounds),
        Suite::KTypes => ktypes_suite(&mut runner),
    }
    runner.summary
}

type LiftCase = fn(&HcParam, &LiftContext, Signature, bool) -> Outcome;

/// Every parameter against every target of every admissible dimension.
fn lift_family(
    runner: &mut Runner<'_>,
    bounds: &EnumerationBounds,
    lo: i64,
    hi: i64,
    case: LiftCase,
) {
    for (n, m) in dims(bounds, lo, hi) {
        let ctx = LiftContext::minimal(n, m);
        let params = parameters(n, ctx.m0(), bounds.height);
        runner.run(&params, |lam, want| {
            Signature::all_of_dim(m)
                .map(|target| case(lam, &ctx, target, want))
                .collect()
        });
    }
}

fn two_path_case(lam: &HcParam, ctx: &LiftContext, target: Signature, want: bool) -> Outcome {
    match occurs(lam, ctx.m0(), target) {
        Ok(o) if !o.nonzero => return Outcome::skipped("vanishing"),
        Ok(_) => {}
        Err(e) => {
            return Outcome::new(
                want,
                false,
                || json!({"lambda": lam, "target": target, "error": e.to_string()}),
            )
        }
    }
    let a = lift_up(lam, ctx, target);
    let b = lift_via_packet(lam, ctx, target);
    let equal = matches!((&a, &b), (Ok(x), Ok(Some(y))) if x == y);
    Outcome::new(want, equal, || {
        let path_a = match &a {
            Ok(aq) => to_json(&aq.blocks()),
            Err(e) => err_json(e),
        };
        let path_b = match &b {
            Ok(Some(aq)) => to_json(&aq.blocks()),
            Ok(None) => Value::Null,
            Err(e) => err_json(e),
        };
        json!({"lambda": lam, "target": target, "path_a": path_a, "path_b": path_b, "equal": equal})
    })
}

fn round_trip_case(lam: &HcParam, ctx: &LiftContext, target: Signature, want: bool) -> Outcome {
    match occurs(lam, ctx.m0(), target) {
        Ok(o) if !o.nonzero => return Outcome::skipped("vanishing"),
        Ok(_) => {}
        Err(e) => {
            return Outcome::new(
                want,
                false,
                || json!({"lambda": lam, "target": target, "error": e.to_string()}),
            )
        }
    }
    let back = ctx.reversed();
    let result = lift_down(lam, ctx, target).and_then(|sigma| {
        let aq = lift_up(&sigma, &back, lam.sig())?;
        Ok((sigma, aq))
    });
    let (sigma, aq) = match result {
        Ok(v) => v,
        Err(e) => {
            return Outcome::new(
                want,
                false,
                || json!({"lambda": lam, "target": target, "error": e.to_string()}),
            )
        }
    };
    let infl_ok = aq_infinitesimal_character(&aq) == lam.sorted_entries();
    let recovered = aq_to_discrete_series(&aq);
    let (recovered_ok, note) = match &recovered {
        Ok(mu) => (mu == lam, None),
        Err(Error::ChamberAmbiguous) => (true, Some("chamber_ambiguous")),
        Err(Error::NotGoodRange) => (true, Some("not_good_range")),
        Err(Error::NotCompactLevi { .. }) => (true, Some("noncompact_levi")),
        Err(_) => (false, None),
    };
    let pass = infl_ok && recovered_ok;
    let out = Outcome::new(want, pass, || {
        let rec = match &recovered {
            Ok(mu) => to_json(mu),
            Err(e) => err_json(e),
        };
        json!({
            "lambda": lam, "target": target, "down": sigma, "up": aq.blocks(),
            "infinitesimal_character": infl_ok, "recovered": rec, "pass": pass,
        })
    });
    match note {
        Some(key) => out.noted(key, 1),
        None => out.noted("recovered", recovered.is_ok() as u64),
    }
}

fn duality_case(lam: &HcParam, ctx: &LiftContext, target: Signature, want: bool) -> Outcome {
    let dual = conjugate_dual(lam, ctx.m0());
    let k0 = ctx.k0();
    let check = || -> Result<(bool, bool, bool)> {
        let a = occurs(lam, ctx.m0(), target)?.nonzero;
        let b = occurs(&dual, ctx.m0(), target.swapped())?.nonzero;
        let i = invariants(lam, ctx.m0(), k0)?;
        let j = invariants(&dual, ctx.m0(), k0)?;
        let inv_ok =
            i.k_lambda == j.k_lambda && (i.r_lambda, i.s_lambda) == (j.s_lambda, j.r_lambda);
        let involution = conjugate_dual(&dual, ctx.m0()) == *lam;
        Ok((a == b, inv_ok, involution))
    };
    match check() {
        Ok((occ, inv, inv2)) => {
            let pass = occ && inv && inv2;
            Outcome::new(
                want,
                pass,
                || json!({"lambda": lam, "target": target, "dual": dual, "occurs_symmetric": occ, "invariants_swap": inv, "involution": inv2}),
            )
        }
        Err(e) => Outcome::new(
            want,
            false,
            || json!({"lambda": lam, "target": target, "error": e.to_string()}),
        ),
    }
}

fn persistence_case(lam: &HcParam, ctx: &LiftContext, target: Signature, want: bool) -> Outcome {
    let up = Signature::new(target.p + 1, target.q + 1);
    let check = || -> Result<Option<bool>> {
        if !occurs(lam, ctx.m0(), target)?.nonzero {
            return Ok(None);
        }
        Ok(Some(occurs(lam, ctx.m0(), up)?.nonzero))
    };
    match check() {
        Ok(None) => Outcome::skipped("vanishing"),
        Ok(Some(next)) => Outcome::new(
            want,
            next,
            || json!({"lambda": lam, "target": target, "next": up, "persists": next}),
        ),
        Err(e) => Outcome::new(
            want,
            false,
            || json!({"lambda": lam, "target": target, "error": e.to_string()}),
        ),
    }
}

fn li_case(lam: &HcParam, ctx: &LiftContext, target: Signature, want: bool) -> Outcome {
    if !li_sufficient(lam, ctx.m0(), target) {
        return Outcome::skipped("li_fails");
    }
    let o = match occurs(lam, ctx.m0(), target) {
        Ok(o) => o,
        Err(e) => {
            return Outcome::new(
                want,
                false,
                || json!({"lambda": lam, "target": target, "error": e.to_string()}),
            )
        }
    };
    let window = o.position.l + o.position.t;
    let (plus, minus) = if target.dim() > lam.n() {
        (
            c_count(&o.invariants, Sign::Plus, window),
            c_count(&o.invariants, Sign::Minus, window),
        )
    } else {
        (0, 0)
    };
    let pass = o.nonzero && plus == 0 && minus == 0;
    Outcome::new(
        want,
        pass,
        || json!({"lambda": lam, "target": target, "occurs": o.nonzero, "c_plus": plus, "c_minus": minus}),
    )
}

fn globalization_case(lam: &HcParam, ctx: &LiftContext, target: Signature, want: bool) -> Outcome {
    match occurs(lam, ctx.m0(), target) {
        Ok(o) if !o.nonzero => return Outcome::skipped("vanishing"),
        Ok(_) => {}
        Err(e) => {
            return Outcome::new(
                want,
                false,
                || json!({"lambda": lam, "target": target, "error": e.to_string()}),
            )
        }
    }
    let gap = (target.dim() - lam.n()) as i64;
    let t = (gap + 2) / 2 + 1;
    match verify_globalization(lam, ctx, target, t) {
        Ok(report) => Outcome::new(
            want,
            report.passed(),
            || json!({"lambda": lam, "target": target, "report": report, "pass": report.passed()}),
        ),
        Err(e) => Outcome::new(
            want,
            false,
            || json!({"lambda": lam, "target": target, "error": e.to_string()}),
        ),
    }
}

fn eta_prime_suite(runner: &mut Runner<'_>, bounds: &EnumerationBounds) {
    for (n, m) in dims(bounds, 1, bounds.max_m_minus_n as i64) {
        let mu_values = coset_values(m as i64 - 1, bounds.height);
        let mu0_values = coset_values(n as i64, bounds.height);
        let mus: Vec<Vec<Half>> = mu_values
            .iter()
            .combinations(n)
            .map(|c| c.into_iter().map(|&v| Half::from_twice(v)).collect())
            .collect();
        runner.run(&mus, |mus, want| {
            let mut out = Vec::new();
            for &mu0 in &mu0_values {
                let phi = AParameter::new(mus.clone(), Half::from_twice(mu0), m)
                    .expect("enumerated A-parameter is valid");
                for target in Signature::all_of_dim(m) {
                    out.push(eta_prime_case(&phi, target, want));
                }
            }
            out
        });
    }
}

fn eta_prime_case(phi: &AParameter, target: Signature, want: bool) -> Outcome {
    let mut malformed = 0u64;
    let mut mismatches = 0u64;
    let mut checked = 0u64;
    let mut members = Vec::new();
    for eta in ACharacter::all(phi.n()) {
        match eta_prime_sign_ok(phi, &eta, target) {
            Err(Error::MalformedCharacter(_)) => {
                malformed += 1;
                continue;
            }
            Err(_) => mismatches += 1,
            Ok(_) => {}
        }
        checked += 1;
        if let Ok(Some(sigma)) = sigma_from_eta_prime(phi, &eta, target) {
            members.push(sigma);
        }
    }
    let nonzero = members.len();
    members.sort_by_key(|s| format!("{:?}", s.blocks()));
    let injective = members.windows(2).all(|w| w[0] != w[1]);
    let pass = mismatches == 0 && injective;
    Outcome::new(want, pass, || {
        json!({
            "mus": phi.mus(), "mu0": phi.mu0(), "m": phi.m(), "i0": phi.i0(), "target": target,
            "characters": checked, "malformed": malformed, "nonzero": nonzero,
            "mismatches": mismatches, "injective": injective,
        })
    })
    .noted("characters", checked)
    .noted("malformed_skipped", malformed)
}

fn packets_suite(runner: &mut Runner<'_>, bounds: &EnumerationBounds) {
    for n in 1..=bounds.max_n {
        let values = coset_values(n as i64 - 1, bounds.height);
        let phis: Vec<LParameter> = values
            .iter()
            .combinations(n)
            .map(|c| {
                LParameter::new(c.into_iter().map(|&v| Half::from_twice(v)).collect()).unwrap()
            })
            .collect();
        runner.run(&phis, |phi, want| {
            (0..1u32 << n)
                .map(|bits| {
                    let eta: Vec<Sign> = (0..n)
                        .map(|i| {
                            if bits >> i & 1 == 0 {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            }
                        })
                        .collect();
                    packets_case(phi, &eta, want)
                })
                .collect()
        });
    }
}

fn packets_case(phi: &LParameter, eta: &[Sign], want: bool) -> Outcome {
    let lam = match pi_from_eta(phi, eta) {
        Ok(lam) => lam,
        Err(e) => {
            return Outcome::new(
                want,
                false,
                || json!({"kappas": phi, "eta": eta, "error": e.to_string()}),
            )
        }
    };
    let sig = lam.sig();
    let sign_ok = Sign::product(eta.iter().copied()) == epsilon_of_signature(sig.p, sig.q);
    let (phi_back, eta_back) = eta_from_pi(&lam);
    let inverse_ok = phi_back == *phi && eta_back == eta;
    let roundtrip_ok = pi_from_eta(&phi_back, &eta_back).as_ref() == Ok(&lam);
    let pass = sign_ok && inverse_ok && roundtrip_ok;
    Outcome::new(want, pass, || {
        json!({
            "kappas": phi, "eta": eta, "p": sig.p, "q": sig.q, "lambda": lam,
            "sign_identity": sign_ok, "inverse": inverse_ok && roundtrip_ok,
        })
    })
}

/// Largest run length and weight height of the K-type grid.
const KTYPE_RUN: usize = 2;
const KTYPE_HEIGHT: i64 = 3;

/// Weakly decreasing sequences of length `len` with entries in `lo..=hi`.
fn weak_sequences(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (lo..=hi).rev().combinations_with_replacement(len).collect()
}

#[derive(Debug)]
struct KTypeCase {
    ctx: LiftContext,
    target: Signature,
    mu: KType,
}

fn ktype_cases() -> Vec<KTypeCase> {
    let mut out = Vec::new();
    let runs: Vec<(usize, usize, usize, usize)> = (0..=KTYPE_RUN)
        .cartesian_product(0..=KTYPE_RUN)
        .cartesian_product((0..=KTYPE_RUN).cartesian_product(0..=KTYPE_RUN))
        .map(|((x, y), (z, w))| (x, y, z, w))
        .collect();
    for (x, y, z, w) in runs {
        for (p0, q0, r0, s0) in itertools::iproduct!(0..=1, 0..=1, 0..=1, 0..=1) {
            let sig = Signature::new(x + y + p0, z + w + q0);
            let target = Signature::new(x + w + r0, z + y + s0);
            if sig.dim() == 0 || target.dim() == 0 {
                continue;
            }
            let ctx = LiftContext::minimal(sig.dim(), target.dim());
            let (r, s) = (target.p as i64, target.q as i64);
            let da = (r - s + ctx.m0()) / 2;
            let db = (s - r + ctx.m0()) / 2;
            for (a, b, c, d) in itertools::iproduct!(
                weak_sequences(x, 1, KTYPE_HEIGHT),
                weak_sequences(y, -KTYPE_HEIGHT, -1),
                weak_sequences(z, 1, KTYPE_HEIGHT),
                weak_sequences(w, -KTYPE_HEIGHT, -1)
            ) {
                let pa = a
                    .iter()
                    .copied()
                    .chain(std::iter::repeat_n(0, p0))
                    .chain(b)
                    .map(|v| v + da)
                    .collect();
                let pb = c
                    .iter()
                    .copied()
                    .chain(std::iter::repeat_n(0, q0))
                    .chain(d)
                    .map(|v| v + db)
                    .collect();
                let mu = KType::new(pa, pb).expect("pattern weights are dominant");
                out.push(KTypeCase { ctx, target, mu });
            }
        }
    }
    out
}

/// Positive and negative runs of `μ′` after removing its `(p−q+n0)/2` shift.
fn ktype_pattern(mu_p: &KType, ctx: &LiftContext, source: Signature) -> (Vec<i64>, Vec<i64>) {
    let (p, q) = (source.p as i64, source.q as i64);
    let da = (p - q + ctx.n0()) / 2;
    let db = (q - p + ctx.n0()) / 2;
    let a: Vec<i64> = mu_p
        .a()
        .iter()
        .map(|v| v - da)
        .filter(|&v| v != 0)
        .collect();
    let b: Vec<i64> = mu_p
        .b()
        .iter()
        .map(|v| v - db)
        .filter(|&v| v != 0)
        .collect();
    (a, b)
}

fn ktypes_suite(runner: &mut Runner<'_>) {
    let cases = ktype_cases();
    runner.run(&cases, |case, want| vec![ktype_case(case, want)]);
}

fn ktype_case(case: &KTypeCase, want: bool) -> Outcome {
    let KTypeCase { ctx, target, mu } = case;
    let source = mu.sig();
    let check = || -> Result<(Option<KType>, bool, bool)> {
        let Some(mu_p) = correspond_ktype(mu, ctx, *target)? else {
            return Ok((None, false, false));
        };
        let back = correspond_ktype(&mu_p, &ctx.reversed(), source)?;
        let round_trip = back.as_ref() == Some(mu);
        let wider = Signature::new(target.p + 1, target.q + 1);
        let wider_ctx = LiftContext::new(ctx.m0(), ctx.n0(), ctx.source_dim(), wider.dim())?;
        let shifted = correspond_ktype(mu, &wider_ctx, wider)?;
        let same_pattern = shifted.as_ref().is_some_and(|w| {
            ktype_pattern(w, &wider_ctx, source) == ktype_pattern(&mu_p, ctx, source)
        });
        Ok((Some(mu_p), round_trip, same_pattern))
    };
    match check() {
        Ok((mu_p, round_trip, same_pattern)) => {
            let pass = mu_p.is_some() && round_trip && same_pattern;
            Outcome::new(want, pass, || {
                json!({
                    "source": source, "target": target, "mu": mu, "mu_prime": mu_p,
                    "round_trip": round_trip, "depends_on_r_minus_s": same_pattern,
                })
            })
        }
        Err(e) => Outcome::new(
            want,
            false,
            || json!({"mu": mu, "target": target, "error": e.to_string()}),
        ),
    }
}

/// Streams `{"lambda", "target", "occurs", "lift"}` for every parameter and
/// every target with `1 ≤ m ≤ n + max_m_minus_n`; returns the record count.
pub fn enumerate_lifts(bounds: &EnumerationBounds, sink: &mut dyn FnMut(&Value)) -> Result<u64> {
    let mut count = 0;
    for (n, m) in dims(bounds, 1 - bounds.max_n as i64, bounds.max_m_minus_n as i64) {
        let ctx = LiftContext::minimal(n, m);
        let params = parameters(n, ctx.m0(), bounds.height);
        let rows: Vec<Result<Vec<Value>>> = params
            .par_iter()
            .map(|lam| {
                Signature::all_of_dim(m)
                    .map(|target| {
                        let result = lift(lam, &ctx, target)?;
                        Ok(json!({
                            "lambda": lam, "target": target,
                            "occurs": result != crate::lifting::LiftResult::Vanishes,
                            "lift": result,
                        }))
                    })
                    .collect()
            })
            .collect();
        for row in rows {
            for rec in row? {
                sink(&rec);
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_enumeration_is_valid_and_complete() {
        let h = Half::from_twice(3);
        // n = 1, m even: λ₀ ∈ Z ∩ [−3/2, 3/2], two signatures each
        let ps = parameters(1, 0, h);
        assert_eq!(ps.len(), 3 * 2);
        // n = 1, m odd: λ₀ ∈ Z + 1/2
        assert_eq!(parameters(1, 1, h).len(), 4 * 2);
        // n = 2, m odd: λ₀ ∈ Z ∩ [−1, 1], λ = λ₀ + 1/2
        let ps = parameters(2, 1, Half::from_int(1));
        assert_eq!(ps.len(), 3 * 4);
        assert!(ps
            .iter()
            .all(|l| l.entries().iter().all(|v| !v.is_integer())));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let bounds = EnumerationBounds::new(2, 2, Half::from_twice(3)).unwrap();
        for suite in Suite::ALL {
            let summary = run_suite(suite, &bounds, None);
            assert!(summary.passed(), "{suite}: {:?}", summary.first_failures);
        }
    }
}
