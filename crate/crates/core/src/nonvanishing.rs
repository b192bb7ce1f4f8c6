//! Combinatorial invariants `k_λ, r_λ, s_λ, X_λ, C±_λ(t)` of a discrete
//! series parameter and the resulting nonvanishing criterion for theta lifts.
//!
//! The criterion is evaluated on the orientation with
//! `r − r_λ ≥ s − s_λ`; otherwise `(λ, (r,s))` is replaced by
//! `(conjugate_dual(λ), (s,r))` first. Writing `l = s − s_λ` and
//! `r − r_λ − l = 2t + 1` (if `k_λ = −1`) or `2t` (if `k_λ ≥ 0`), the lift is
//! nonzero iff `l ≥ 0` when `t = 0`, and iff `l ≥ max(k_λ, 0)` together with
//! `#C±_λ(l+t) ≤ l` when `t ≥ 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hc::{
    centered_chain, conjugate_dual, split_abgd, AbgdSplit, HcParam, Signature, SplitMode,
};
use crate::{Half, Sign};

/// One element `(ξ, ±1)` of `X_λ`.
pub type Marked = (Half, Sign);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NvInvariants {
    pub k0: i64,
    pub k_lambda: i64,
    pub r_lambda: usize,
    pub s_lambda: usize,
    /// `X_λ`, decreasing in value.
    pub x: Vec<Marked>,
    /// Fixpoint `X_λ^{(∞)}` of the pair-removal iteration, decreasing in value.
    pub x_inf: Vec<Marked>,
    /// Number of removal rounds that removed something.
    pub rounds: usize,
    #[serde(skip)]
    pub split: AbgdSplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Chain,
}

fn largest_chain(part: &[Half], start: usize) -> Option<usize> {
    let mut best = None;
    let mut k = start;
    loop {
        let chain = centered_chain(k);
        if chain.iter().all(|c| part.contains(c)) {
            best = Some(k);
            k += 2;
        } else {
            return best;
        }
    }
}

/// Computes `k_λ, r_λ, s_λ, X_λ, X_λ^{(∞)}` relative to `m0` and `k0`.
pub fn invariants(lam: &HcParam, m0: i64, k0: i64) -> Result<NvInvariants> {
    if k0 != 0 && k0 != -1 {
        return Err(Error::InvalidK0(k0));
    }
    let n = lam.n() as i64;
    if (m0 - n - k0).rem_euclid(2) != 0 {
        return Err(Error::ParityMismatch {
            what: "m0",
            value: m0,
            dim: (n + k0).rem_euclid(2) as usize,
        });
    }
    let shifted = lam.shifted(m0);
    let (pp, qp) = shifted.split_at(lam.sig().p);

    let start = if k0 == -1 { 1 } else { 2 };
    let k_lambda = largest_chain(pp, start)
        .max(largest_chain(qp, start))
        .map_or(k0, |k| k as i64);

    let split = split_abgd(
        lam,
        m0,
        SplitMode::Strict {
            chain: k_lambda.max(0) as usize,
        },
    )?;
    let r_lambda = split.x() + split.w();
    let s_lambda = split.z() + split.y();

    let role_of = |v: Half, sign: Sign| -> Role {
        let (pos, neg) = match sign {
            Sign::Plus => (&split.alpha, &split.beta),
            Sign::Minus => (&split.gamma, &split.delta),
        };
        match (pos.contains(&v), neg.contains(&v), sign) {
            (true, _, Sign::Plus) => Role::Alpha,
            (true, _, Sign::Minus) => Role::Gamma,
            (_, true, Sign::Plus) => Role::Beta,
            (_, true, Sign::Minus) => Role::Delta,
            _ => Role::Chain,
        }
    };

    let mut tagged: Vec<(Half, Sign, Role)> = pp
        .iter()
        .map(|&v| (v, Sign::Plus))
        .chain(qp.iter().map(|&v| (v, Sign::Minus)))
        .map(|(v, s)| (v, s, role_of(v, s)))
        .collect();
    tagged.sort_unstable_by_key(|&(v, _, _)| std::cmp::Reverse(v));
    let x: Vec<Marked> = tagged.iter().map(|&(v, s, _)| (v, s)).collect();

    let mut rounds = 0;
    loop {
        let mut drop = vec![false; tagged.len()];
        let mut any = false;
        for i in 0..tagged.len().saturating_sub(1) {
            let pair = (tagged[i].2, tagged[i + 1].2);
            if matches!(pair, (Role::Alpha, Role::Gamma) | (Role::Beta, Role::Delta)) {
                drop[i] = true;
                drop[i + 1] = true;
                any = true;
            }
        }
        if !any {
            break;
        }
        rounds += 1;
        let mut keep = drop.iter().map(|d| !d);
        tagged.retain(|_| keep.next().unwrap());
    }
    let x_inf = tagged.iter().map(|&(v, s, _)| (v, s)).collect();

    Ok(NvInvariants {
        k0,
        k_lambda,
        r_lambda,
        s_lambda,
        x,
        x_inf,
        rounds,
        split,
    })
}

/// `#C^±_λ(t)`.
pub fn c_count(inv: &NvInvariants, sign: Sign, t: i64) -> usize {
    if t <= 0 {
        return 0;
    }
    let base = inv.k_lambda - 1;
    inv.x_inf
        .iter()
        .filter(|&&(_, s)| s == sign)
        .filter(|&&(xi, _)| {
            // doubled value of (k_λ − 1)/2 ± ξ
            let v = match sign {
                Sign::Plus => base + xi.twice(),
                Sign::Minus => base - xi.twice(),
            };
            (0..2 * t).contains(&v)
        })
        .count()
}

/// Where a target sits in the theta tower of `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TowerPosition {
    pub l: i64,
    pub t: i64,
    /// True if the criterion was evaluated on `(conjugate_dual(λ), (s,r))`.
    pub swapped: bool,
}

/// Which condition of the criterion failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Vanishing {
    /// `l < 0`.
    NegativeLevel,
    /// `t ≥ 1` and `l < k_λ`.
    BelowChain { k_lambda: i64 },
    /// `#C^±(l+t) > l`.
    WindowOverflow { sign: Sign, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub nonzero: bool,
    pub position: TowerPosition,
    pub failure: Option<Vanishing>,
    /// Invariants of the parameter the criterion was evaluated on.
    pub invariants: NvInvariants,
}

/// `k0 ∈ {-1, 0}` with `m ≡ n + k0 (mod 2)`.
pub fn k0_for(n: usize, m: usize) -> i64 {
    -(((n + m) % 2) as i64)
}

/// Decides whether the theta lift of `λ` to `U(r,s)` is nonzero.
pub fn occurs(lam: &HcParam, m0: i64, target: Signature) -> Result<Occurrence> {
    let m = target.dim();
    if (m0 - m as i64).rem_euclid(2) != 0 {
        return Err(Error::ParityMismatch {
            what: "m0",
            value: m0,
            dim: m,
        });
    }
    let k0 = k0_for(lam.n(), m);
    let mut inv = invariants(lam, m0, k0)?;
    let (mut r, mut s) = (target.p as i64, target.q as i64);
    let mut swapped = false;
    if r - (inv.r_lambda as i64) < s - (inv.s_lambda as i64) {
        swapped = true;
        inv = invariants(&conjugate_dual(lam, m0), m0, k0)?;
        std::mem::swap(&mut r, &mut s);
    }
    let l = s - inv.s_lambda as i64;
    let d = r - inv.r_lambda as i64 - l;
    let t = if inv.k_lambda == -1 {
        debug_assert!(d.rem_euclid(2) == 1);
        (d - 1).div_euclid(2)
    } else {
        debug_assert!(d.rem_euclid(2) == 0);
        d.div_euclid(2)
    };
    let position = TowerPosition { l, t, swapped };

    let failure = if l < 0 || t < 0 {
        Some(Vanishing::NegativeLevel)
    } else if t == 0 {
        None
    } else if inv.k_lambda >= 1 && l < inv.k_lambda {
        Some(Vanishing::BelowChain {
            k_lambda: inv.k_lambda,
        })
    } else {
        [Sign::Plus, Sign::Minus].into_iter().find_map(|sign| {
            let count = c_count(&inv, sign, l + t);
            (count as i64 > l).then_some(Vanishing::WindowOverflow { sign, count })
        })
    };
    Ok(Occurrence {
        nonzero: failure.is_none(),
        position,
        failure,
        invariants: inv,
    })
}

/// Regularity condition under which the lift is known to be nonzero:
/// `m ≥ n`, `x+w ≤ r`, `z+y ≤ s` and `α_x, −β₁, γ_z, −δ₁ ≥ (m−n+1)/2` on the
/// lax split. Returns false whenever one of the hypotheses fails.
pub fn li_sufficient(lam: &HcParam, m0: i64, target: Signature) -> bool {
    let (n, m) = (lam.n(), target.dim());
    if m < n {
        return false;
    }
    let Ok(split) = split_abgd(lam, m0, SplitMode::Lax) else {
        return false;
    };
    if split.x() + split.w() > target.p || split.z() + split.y() > target.q {
        return false;
    }
    let bound = Half::from_twice((m - n + 1) as i64);
    let ok_pos = |xs: &[Half]| xs.last().is_none_or(|&v| v >= bound);
    let ok_neg = |xs: &[Half]| xs.first().is_none_or(|&v| -v >= bound);
    ok_pos(&split.alpha) && ok_pos(&split.gamma) && ok_neg(&split.beta) && ok_neg(&split.delta)
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

    #[test]
    fn invariants_small_cases() {
        let lam = param(&[1], &[-1]);
        let inv = invariants(&lam, 0, 0).unwrap();
        assert_eq!(inv.k_lambda, 0);
        assert_eq!((inv.r_lambda, inv.s_lambda), (2, 0));
        assert_eq!(inv.x, vec![(h(1), Sign::Plus), (h(-1), Sign::Minus)]);
        assert_eq!(inv.x_inf, inv.x);

        let lam = param(&[1, -1], &[]);
        let inv = invariants(&lam, 0, 0).unwrap();
        assert_eq!(inv.k_lambda, 2);
        assert_eq!((inv.r_lambda, inv.s_lambda), (0, 0));

        let lam = param(&[4], &[]);
        let inv = invariants(&lam, 0, -1).unwrap();
        assert_eq!(inv.k_lambda, -1);
        assert_eq!((inv.r_lambda, inv.s_lambda), (1, 0));
    }

    #[test]
    fn invariants_reject_bad_input() {
        let lam = param(&[1], &[-1]);
        assert!(matches!(
            invariants(&lam, 1, 0),
            Err(Error::ParityMismatch { .. })
        ));
        assert_eq!(invariants(&lam, 0, 1), Err(Error::InvalidK0(1)));
    }

    #[test]
    fn pair_removal_alpha_gamma() {
        // λ₀ = (5/2, -3/2 | 3/2, -5/2): α=5/2 is followed by γ=3/2 and
        // β=-3/2 by δ=-5/2, so both pairs go in a single round.
        let lam = param(&[5, -3], &[3, -5]);
        let inv = invariants(&lam, 0, 0).unwrap();
        assert_eq!(inv.rounds, 1);
        assert!(inv.x_inf.is_empty());

        // nested removal: α=7/2, α=5/2, γ=3/2, γ=1/2 → (5/2,3/2) first, then (7/2,1/2)
        let lam = param(&[7, 5], &[3, 1]);
        let inv = invariants(&lam, 0, 0).unwrap();
        assert_eq!(inv.rounds, 2);
        assert!(inv.x_inf.is_empty());
    }

    #[test]
    fn chain_blocks_removal() {
        // m0 = 1, λ₀ = (1, 0, -1 | 2): the chain separates γ from everything else
        let lam = param(&[3, 1, -1], &[5]);
        let inv = invariants(&lam, 1, -1).unwrap();
        assert_eq!(inv.k_lambda, 3);
        assert_eq!(inv.x_inf.len(), 4);
    }

    #[test]
    fn window_counts() {
        let lam = param(&[1], &[-1]);
        let inv = invariants(&lam, 0, 0).unwrap();
        assert_eq!(c_count(&inv, Sign::Plus, 1), 1);
        assert_eq!(c_count(&inv, Sign::Minus, 1), 1);
        assert_eq!(c_count(&inv, Sign::Plus, 0), 0);
        assert_eq!(c_count(&inv, Sign::Minus, -3), 0);
    }

    #[test]
    fn occurs_examples() {
        let lam = param(&[1], &[-1]);
        let o = occurs(&lam, 0, Signature::new(2, 0)).unwrap();
        assert!(o.nonzero);
        assert_eq!((o.position.l, o.position.t), (0, 0));

        let o = occurs(&lam, 0, Signature::new(4, 0)).unwrap();
        assert!(!o.nonzero);
        assert_eq!((o.position.l, o.position.t), (0, 1));
        assert_eq!(
            o.failure,
            Some(Vanishing::WindowOverflow {
                sign: Sign::Plus,
                count: 1
            })
        );

        let lam = param(&[2, 0], &[4]);
        let o = occurs(&lam, 1, Signature::new(0, 1)).unwrap();
        assert!(o.nonzero);
        assert_eq!(o.invariants.k_lambda, 2);
        assert_eq!((o.position.l, o.position.t), (0, 0));
    }

    #[test]
    fn occurs_swaps_orientation() {
        let lam = param(&[1], &[-1]);
        let o = occurs(&lam, 0, Signature::new(0, 2)).unwrap();
        assert!(o.position.swapped);
        assert!(!o.nonzero);
        assert!(occurs(&lam, 0, Signature::new(2, 0)).unwrap().nonzero);
        let dual = conjugate_dual(&lam, 0);
        assert!(occurs(&dual, 0, Signature::new(0, 2)).unwrap().nonzero);
        assert!(matches!(
            occurs(&lam, 1, Signature::new(1, 1)),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn li_examples() {
        let lam = param(&[7], &[-7]);
        assert!(li_sufficient(&lam, 0, Signature::new(3, 1)));
        let lam = param(&[1], &[-1]);
        assert!(!li_sufficient(&lam, 0, Signature::new(3, 1)));
        // m = n boundary: bound is 1/2
        assert!(li_sufficient(&lam, 0, Signature::new(2, 0)));
        // m < n never qualifies
        assert!(!li_sufficient(&lam, 1, Signature::new(1, 0)));
    }
}
