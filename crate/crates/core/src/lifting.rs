//! Explicit theta lifts of discrete series.
//!
//! For `m > n` the lift is `A_q(λ')` in the weakly fair range and is returned
//! as ordered θ-stable block data. For `m ≤ n` it is again a discrete series
//! and the Harish-Chandra parameter is returned.

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hc::{split_abgd, AbgdSplit, HcParam, LiftContext, Signature, SplitMode};
use crate::nonvanishing::occurs;
use crate::Half;

/// One Levi factor `U(p_i, q_i)` with the exponent `λ_i` of `det^{λ_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AqBlock {
    pub p: usize,
    pub q: usize,
    pub lambda: Half,
}

impl AqBlock {
    pub fn new(p: usize, q: usize, lambda: Half) -> Self {
        Self { p, q, lambda }
    }

    pub fn size(&self) -> usize {
        self.p + self.q
    }
}

/// θ-stable parabolic `q_{p,q}` (blocks in decreasing order of the defining
/// element) together with the one-dimensional `λ` on its Levi.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AqLambdaData {
    target: Signature,
    blocks: Vec<AqBlock>,
}

impl AqLambdaData {
    /// Validates that the blocks are nonempty, fill `target` and carry
    /// integral exponents.
    pub fn new(target: Signature, blocks: Vec<AqBlock>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.size() == 0) {
            return Err(Error::InvalidBlocks(format!("empty block {:?}", b)));
        }
        let (r, s) = blocks.iter().fold((0, 0), |(r, s), b| (r + b.p, s + b.q));
        if (r, s) != (target.p, target.q) {
            return Err(Error::InvalidBlocks(format!(
                "blocks fill ({r},{s}), target is {target}"
            )));
        }
        if let Some(b) = blocks.iter().find(|b| !b.lambda.is_integer()) {
            return Err(Error::InvalidBlocks(format!(
                "block exponent {} is not an integer",
                b.lambda
            )));
        }
        Ok(Self { target, blocks })
    }

    pub fn target(&self) -> Signature {
        self.target
    }

    pub fn blocks(&self) -> &[AqBlock] {
        &self.blocks
    }

    /// `λ_i − λ_{i+1} ≥ −(p_i+q_i+p_{i+1}+q_{i+1})/2` for all consecutive blocks.
    pub fn is_weakly_fair(&self) -> bool {
        self.blocks.windows(2).all(|w| {
            let diff = w[0].lambda - w[1].lambda;
            diff.twice() >= -((w[0].size() + w[1].size()) as i64)
        })
    }

    /// `λ_i − λ_{i+1} > −1` for all consecutive blocks.
    pub fn is_good_range(&self) -> bool {
        self.blocks
            .windows(2)
            .all(|w| (w[0].lambda - w[1].lambda).twice() > -2)
    }
}

/// Outcome of [`lift`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftResult {
    Vanishes,
    DiscreteSeries(HcParam),
    WeaklyFairAq(AqLambdaData),
}

impl Serialize for LiftResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match self {
            LiftResult::Vanishes => {
                map.serialize_entry("status", "vanishes")?;
            }
            LiftResult::DiscreteSeries(lam) => {
                map.serialize_entry("status", "nonzero")?;
                map.serialize_entry("kind", "discrete_series")?;
                map.serialize_entry("param", lam)?;
            }
            LiftResult::WeaklyFairAq(aq) => {
                map.serialize_entry("status", "nonzero")?;
                map.serialize_entry("kind", "aq_weakly_fair")?;
                map.serialize_entry("blocks", aq.blocks())?;
            }
        }
        map.end()
    }
}

fn require_nonzero(lam: &HcParam, ctx: &LiftContext, target: Signature) -> Result<()> {
    if !occurs(lam, ctx.m0(), target)?.nonzero {
        return Err(Error::PreconditionViolation(format!(
            "theta lift of {lam:?} to U{target} vanishes"
        )));
    }
    Ok(())
}

/// Lift to a larger group (`m > n`) as weakly fair `A_q(λ')` data.
pub fn lift_up(lam: &HcParam, ctx: &LiftContext, target: Signature) -> Result<AqLambdaData> {
    ctx.check(lam, target)?;
    if target.dim() <= lam.n() {
        return Err(Error::PreconditionViolation(format!(
            "lift_up needs m > n, got m = {}, n = {}",
            target.dim(),
            lam.n()
        )));
    }
    require_nonzero(lam, ctx, target)?;
    lift_up_unchecked(lam, ctx, target)
}

fn count_gt(xs: &[Half], v: Half) -> i64 {
    xs.iter().filter(|&&u| u > v).count() as i64
}

fn count_lt(xs: &[Half], v: Half) -> i64 {
    xs.iter().filter(|&&u| u < v).count() as i64
}

pub(crate) fn lift_up_unchecked(
    lam: &HcParam,
    ctx: &LiftContext,
    target: Signature,
) -> Result<AqLambdaData> {
    let n = lam.n() as i64;
    let m = target.dim() as i64;
    let split = split_abgd(lam, ctx.m0(), SplitMode::Lax)?;
    let AbgdSplit {
        alpha,
        beta,
        gamma,
        delta,
        ..
    } = &split;
    let (x, y, z, w) = (split.x(), split.y(), split.z(), split.w());
    if x + w > target.p || z + y > target.q {
        return Err(Error::SignatureMismatch {
            r: target.p,
            s: target.q,
            expected_r: x + w,
            expected_s: z + y,
        });
    }
    let out_shift = Half::from_twice(ctx.n0());
    let up = Half::from_twice(-(m + 1)); // −(m+1)/2
    let down = Half::from_twice(m - 1); // (m−1)/2

    // positive values, one block each, merged in decreasing order
    let mut pos: Vec<(Half, AqBlock)> = Vec::with_capacity(x + z);
    for (i, &a) in alpha.iter().enumerate() {
        let v = (a + up).add_int(i as i64 + 1 + count_gt(gamma, a)) + out_shift;
        pos.push((a, AqBlock::new(1, 0, v)));
    }
    for (k, &c) in gamma.iter().enumerate() {
        let v = (c + up).add_int(k as i64 + 1 + count_gt(alpha, c)) + out_shift;
        pos.push((c, AqBlock::new(0, 1, v)));
    }
    pos.sort_unstable_by_key(|&(v, _)| std::cmp::Reverse(v));

    let mut neg: Vec<(Half, AqBlock)> = Vec::with_capacity(y + w);
    for (j, &b) in beta.iter().enumerate() {
        let v = (b + down).add_int(j as i64 + 1 - y as i64 - count_lt(delta, b)) + out_shift;
        neg.push((b, AqBlock::new(0, 1, v)));
    }
    for (l, &d) in delta.iter().enumerate() {
        let v = (d + down).add_int(l as i64 + 1 - w as i64 - count_lt(beta, d)) + out_shift;
        neg.push((d, AqBlock::new(1, 0, v)));
    }
    neg.sort_unstable_by_key(|&(v, _)| std::cmp::Reverse(v));

    // ε' = x + z − n/2
    let eps = Half::from_twice(2 * (x + z) as i64 - n) + out_shift;
    let middle = AqBlock::new(target.p - x - w, target.q - z - y, eps);

    let blocks: Vec<AqBlock> = pos
        .into_iter()
        .map(|(_, b)| b)
        .chain(std::iter::once(middle))
        .chain(neg.into_iter().map(|(_, b)| b))
        .collect();
    let aq = AqLambdaData::new(target, blocks)?;
    if !aq.is_weakly_fair() {
        return Err(Error::InternalWeaklyFairViolation);
    }
    Ok(aq)
}

/// Lift to a group of the same or smaller dimension (`m ≤ n`); the result
/// is a discrete series of `U(r,s)`.
pub fn lift_down(lam: &HcParam, ctx: &LiftContext, target: Signature) -> Result<HcParam> {
    ctx.check(lam, target)?;
    if target.dim() > lam.n() {
        return Err(Error::PreconditionViolation(format!(
            "lift_down needs m ≤ n, got m = {}, n = {}",
            target.dim(),
            lam.n()
        )));
    }
    let out = lift_down_unchecked(lam, ctx, target)?;
    require_nonzero(lam, ctx, target)?;
    Ok(out)
}

pub(crate) fn lift_down_unchecked(
    lam: &HcParam,
    ctx: &LiftContext,
    target: Signature,
) -> Result<HcParam> {
    let k = lam.n() - target.dim();
    let split = split_abgd(lam, ctx.m0(), SplitMode::Strict { chain: k })?;
    let (r, s) = (split.x() + split.w(), split.z() + split.y());
    if (r, s) != (target.p, target.q) {
        return Err(Error::SignatureMismatch {
            r: target.p,
            s: target.q,
            expected_r: r,
            expected_s: s,
        });
    }
    let shift = Half::from_twice(ctx.n0());
    let p_part = split
        .alpha
        .iter()
        .chain(&split.delta)
        .map(|&v| v + shift)
        .collect();
    let q_part = split
        .gamma
        .iter()
        .chain(&split.beta)
        .map(|&v| v + shift)
        .collect();
    HcParam::from_parts(p_part, q_part)
}

/// Theta lift of the discrete series with parameter `λ` to `U(r,s)`.
pub fn lift(lam: &HcParam, ctx: &LiftContext, target: Signature) -> Result<LiftResult> {
    ctx.check(lam, target)?;
    if !occurs(lam, ctx.m0(), target)?.nonzero {
        return Ok(LiftResult::Vanishes);
    }
    if target.dim() <= lam.n() {
        lift_down_unchecked(lam, ctx, target).map(LiftResult::DiscreteSeries)
    } else {
        lift_up_unchecked(lam, ctx, target).map(LiftResult::WeaklyFairAq)
    }
}

/// Infinitesimal character of `A_q(λ)`: block constants expanded in block
/// order plus `ρ = ((m−1)/2, …, −(m−1)/2)`, returned in decreasing order.
pub fn aq_infinitesimal_character(aq: &AqLambdaData) -> Vec<Half> {
    let m = aq.target().dim() as i64;
    let mut out: Vec<Half> = aq
        .blocks()
        .iter()
        .flat_map(|b| std::iter::repeat_n(b.lambda, b.size()))
        .enumerate()
        .map(|(i, v)| v + Half::from_twice(m - 1 - 2 * i as i64))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Harish-Chandra parameter `λ″ + ρ(Ψ)` of `A_q(λ″)` when the Levi is
/// compact and `λ″` is in the good range.
///
/// `Ψ` contains the compact positive roots and every noncompact root positive
/// on `λ″`; a noncompact root vanishing on `λ″` leaves `Ψ` undetermined and
/// is reported as [`Error::ChamberAmbiguous`].
pub fn aq_to_discrete_series(aq: &AqLambdaData) -> Result<HcParam> {
    if let Some(b) = aq.blocks().iter().find(|b| b.p > 0 && b.q > 0) {
        return Err(Error::NotCompactLevi { p: b.p, q: b.q });
    }
    if !aq.is_good_range() {
        return Err(Error::NotGoodRange);
    }
    let expand = |side: fn(&AqBlock) -> usize| -> Vec<Half> {
        aq.blocks()
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.lambda, side(b)))
            .collect()
    };
    let p_side = expand(|b| b.p);
    let q_side = expand(|b| b.q);
    if p_side.iter().any(|v| q_side.contains(v)) {
        return Err(Error::ChamberAmbiguous);
    }
    let r = p_side.len();
    let m = aq.target().dim();

    // coordinates ordered by a regular element in the chamber of Ψ
    let mut order: Vec<usize> = (0..m).collect();
    let value = |i: usize| if i < r { p_side[i] } else { q_side[i - r] };
    order.sort_by(|&i, &j| value(j).cmp(&value(i)).then(i.cmp(&j)));
    let mut entries = vec![Half::zero(); m];
    for (rank, &i) in order.iter().enumerate() {
        entries[i] = value(i) + Half::from_twice(m as i64 - 1 - 2 * rank as i64);
    }
    HcParam::new(aq.target(), &entries).map_err(|e| {
        Error::InvalidBlocks(format!("λ″ + ρ(Ψ) is not a Harish-Chandra parameter: {e}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> Half {
        Half::from_twice(t)
    }

    fn param(p: &[i64], q: &[i64]) -> HcParam {
        HcParam::from_parts(
            p.iter().map(|&t| h(t)).collect(),
            q.iter().map(|&t| h(t)).collect(),
        )
        .unwrap()
    }

    fn blocks(bs: &[(usize, usize, i64)]) -> Vec<AqBlock> {
        bs.iter()
            .map(|&(p, q, l)| AqBlock::new(p, q, Half::from_int(l)))
            .collect()
    }

    #[test]
    fn lift_up_worked_cases() {
        let lam = param(&[4], &[]);
        let ctx = LiftContext::new(1, 1, 1, 3).unwrap();
        let aq = lift_up(&lam, &ctx, Signature::new(2, 1)).unwrap();
        assert_eq!(aq.blocks(), blocks(&[(1, 0, 1), (1, 1, 1)]));

        let lam = param(&[1], &[-1]);
        let ctx = LiftContext::new(0, 0, 2, 4).unwrap();
        let aq = lift_up(&lam, &ctx, Signature::new(3, 1)).unwrap();
        assert_eq!(aq.blocks(), blocks(&[(1, 0, -1), (1, 1, 0), (1, 0, 1)]));
        assert!(aq.is_weakly_fair());
        assert!(!aq.is_good_range());

        let lam = param(&[], &[4]);
        let ctx = LiftContext::new(1, 1, 1, 3).unwrap();
        let aq = lift_up(&lam, &ctx, Signature::new(2, 1)).unwrap();
        assert_eq!(aq.blocks(), blocks(&[(0, 1, 1), (2, 0, 1)]));
    }

    #[test]
    fn lift_up_rejects_vanishing_and_small_targets() {
        let lam = param(&[1], &[-1]);
        let ctx = LiftContext::new(0, 0, 2, 4).unwrap();
        assert!(matches!(
            lift_up(&lam, &ctx, Signature::new(4, 0)),
            Err(Error::PreconditionViolation(_))
        ));
        let ctx = LiftContext::new(0, 0, 2, 2).unwrap();
        assert!(matches!(
            lift_up(&lam, &ctx, Signature::new(2, 0)),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn lift_down_worked_cases() {
        let lam = param(&[2, 0], &[4]);
        let ctx = LiftContext::new(1, 1, 3, 1).unwrap();
        let sigma = lift_down(&lam, &ctx, Signature::new(0, 1)).unwrap();
        assert_eq!(sigma, param(&[], &[4]));

        let lam = param(&[1], &[-1]);
        let ctx = LiftContext::new(0, 0, 2, 2).unwrap();
        let sigma = lift_down(&lam, &ctx, Signature::new(2, 0)).unwrap();
        assert_eq!(sigma, param(&[1, -1], &[]));
    }

    #[test]
    fn lift_down_errors() {
        let lam = param(&[2, 0], &[4]);
        let ctx = LiftContext::new(1, 1, 3, 1).unwrap();
        assert!(matches!(
            lift_down(&lam, &ctx, Signature::new(1, 0)),
            Err(Error::SignatureMismatch { .. })
        ));
        // λ₀ = (3/2 | 1/2, -1/2) with m0 = 1 on (1,2): chain of length 2 lives in q
        let lam = param(&[4], &[2, 0]);
        let s = lift_down(&lam, &ctx, Signature::new(1, 0)).unwrap();
        assert_eq!(s, param(&[4], &[]));
        let lam = param(&[4, 2], &[0]);
        assert_eq!(
            lift_down(&lam, &ctx, Signature::new(1, 0)),
            Err(Error::ChainNotPresent(2))
        );
    }

    #[test]
    fn lift_dispatch() {
        let lam = param(&[1], &[-1]);
        let ctx = LiftContext::minimal(2, 4);
        assert_eq!(
            lift(&lam, &ctx, Signature::new(4, 0)).unwrap(),
            LiftResult::Vanishes
        );
        let ctx = LiftContext::minimal(2, 2);
        assert_eq!(
            lift(&lam, &ctx, Signature::new(2, 0)).unwrap(),
            LiftResult::DiscreteSeries(param(&[1, -1], &[]))
        );
        let lam = param(&[4], &[]);
        let ctx = LiftContext::new(1, 1, 1, 3).unwrap();
        assert_eq!(
            lift(&lam, &ctx, Signature::new(2, 1)).unwrap(),
            LiftResult::WeaklyFairAq(
                AqLambdaData::new(Signature::new(2, 1), blocks(&[(1, 0, 1), (1, 1, 1)])).unwrap()
            )
        );
    }

    #[test]
    fn lift_result_json() {
        assert_eq!(
            serde_json::to_string(&LiftResult::Vanishes).unwrap(),
            r#"{"status":"vanishes"}"#
        );
        let aq = AqLambdaData::new(Signature::new(2, 1), blocks(&[(1, 0, 1), (1, 1, 1)])).unwrap();
        assert_eq!(
            serde_json::to_string(&LiftResult::WeaklyFairAq(aq)).unwrap(),
            r#"{"status":"nonzero","kind":"aq_weakly_fair","blocks":[{"p":1,"q":0,"lambda":"1"},{"p":1,"q":1,"lambda":"1"}]}"#
        );
    }

    #[test]
    fn infinitesimal_characters() {
        let aq = AqLambdaData::new(Signature::new(2, 1), blocks(&[(0, 1, 1), (2, 0, 1)])).unwrap();
        assert_eq!(aq_infinitesimal_character(&aq), vec![h(4), h(2), h(0)]);
        let aq = AqLambdaData::new(Signature::new(2, 1), blocks(&[(1, 0, 1), (1, 1, 1)])).unwrap();
        assert_eq!(aq_infinitesimal_character(&aq), vec![h(4), h(2), h(0)]);
        let aq = AqLambdaData::new(Signature::new(2, 2), blocks(&[(2, 2, 5)])).unwrap();
        assert_eq!(
            aq_infinitesimal_character(&aq),
            vec![h(13), h(11), h(9), h(7)]
        );
    }

    #[test]
    fn discrete_series_from_compact_levi() {
        let aq = AqLambdaData::new(Signature::new(3, 0), blocks(&[(3, 0, 2)])).unwrap();
        assert_eq!(aq_to_discrete_series(&aq).unwrap(), param(&[6, 4, 2], &[]));

        let aq = AqLambdaData::new(Signature::new(2, 1), blocks(&[(0, 1, 1), (2, 0, 1)])).unwrap();
        assert_eq!(aq_to_discrete_series(&aq), Err(Error::ChamberAmbiguous));

        let aq = AqLambdaData::new(Signature::new(2, 1), blocks(&[(1, 1, 1), (1, 0, 1)])).unwrap();
        assert!(matches!(
            aq_to_discrete_series(&aq),
            Err(Error::NotCompactLevi { .. })
        ));

        let aq = AqLambdaData::new(Signature::new(2, 0), blocks(&[(1, 0, 0), (1, 0, 1)])).unwrap();
        assert_eq!(aq_to_discrete_series(&aq), Err(Error::NotGoodRange));
    }

    #[test]
    fn block_validation() {
        assert!(AqLambdaData::new(Signature::new(1, 0), vec![AqBlock::new(1, 0, h(1))]).is_err());
        assert!(AqLambdaData::new(Signature::new(2, 0), blocks(&[(1, 0, 0)])).is_err());
        assert!(AqLambdaData::new(Signature::new(0, 0), blocks(&[(0, 0, 0)])).is_err());
    }
}
