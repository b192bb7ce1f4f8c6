use proptest::prelude::*;

use thetalift::hc::centered_chain;
use thetalift::lifting::aq_infinitesimal_character;
use thetalift::nonvanishing::k0_for;
use thetalift::suites::parameters;
use thetalift::{
    conjugate_dual, eta_from_pi, invariants, lift, lift_up, make_regular_deformation, occurs, Half,
    HcParam, LiftContext, LiftResult, Signature,
};

fn sorted_desc(mut v: Vec<Half>) -> Vec<Half> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Infinitesimal character of a nonzero lift to a larger group:
/// `(λ − m0/2) ∪ chain(m − n)`, all shifted by `n0/2`.
fn expected_infinitesimal_character(lam: &HcParam, ctx: &LiftContext) -> Vec<Half> {
    let n0 = Half::from_twice(ctx.n0());
    let chain = centered_chain(ctx.target_dim() - ctx.source_dim());
    sorted_desc(
        lam.shifted(ctx.m0())
            .into_iter()
            .chain(chain)
            .map(|v| v + n0)
            .collect(),
    )
}

#[test]
fn up_lifts_have_the_predicted_infinitesimal_character() {
    let height = Half::from_twice(7);
    let mut checked = 0;
    for n in 1..=4 {
        for m in n + 1..=n + 4 {
            let ctx = LiftContext::minimal(n, m);
            for lam in parameters(n, ctx.m0(), height) {
                for target in Signature::all_of_dim(m) {
                    if !occurs(&lam, ctx.m0(), target).unwrap().nonzero {
                        continue;
                    }
                    let aq = lift_up(&lam, &ctx, target).unwrap();
                    assert_eq!(
                        aq_infinitesimal_character(&aq),
                        expected_infinitesimal_character(&lam, &ctx),
                        "{lam} -> {target}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

/// `k_λ` by scanning every chain length directly.
fn brute_k_lambda(lam: &HcParam, m0: i64, k0: i64) -> i64 {
    let shifted = lam.shifted(m0);
    let (p, q) = shifted.split_at(lam.sig().p);
    let mut best = k0;
    let mut k = if k0 == 0 { 2 } else { 1 };
    while k <= lam.n() {
        let chain = centered_chain(k);
        if chain.iter().all(|c| p.contains(c)) || chain.iter().all(|c| q.contains(c)) {
            best = k as i64;
        }
        k += 2;
    }
    best
}

#[test]
fn k_lambda_matches_brute_force() {
    let height = Half::from_twice(9);
    for n in 1..=5 {
        for m0 in 0..2 {
            let k0 = k0_for(n, m0 as usize);
            for lam in parameters(n, m0, height) {
                let inv = invariants(&lam, m0, k0).unwrap();
                assert_eq!(inv.k_lambda, brute_k_lambda(&lam, m0, k0), "{lam}");
                assert_eq!(
                    inv.r_lambda + inv.s_lambda + inv.k_lambda.max(0) as usize,
                    n,
                    "{lam}"
                );
            }
        }
    }
}

#[test]
fn equal_rank_lifts_land_in_exactly_one_target() {
    let height = Half::from_twice(7);
    for n in 1..=4 {
        let ctx = LiftContext::minimal(n, n);
        for lam in parameters(n, ctx.m0(), height) {
            let hits: Vec<_> = Signature::all_of_dim(n)
                .filter(|&t| occurs(&lam, ctx.m0(), t).unwrap().nonzero)
                .collect();
            assert_eq!(hits.len(), 1, "{lam}: {hits:?}");
        }
    }
}

fn arb_param() -> impl Strategy<Value = (HcParam, i64)> {
    (1usize..=5, 0i64..2).prop_flat_map(|(n, m0)| {
        let params = parameters(n, m0, Half::from_twice(9));
        (0..params.len()).prop_map(move |i| (params[i].clone(), m0))
    })
}

proptest! {
    #[test]
    fn conjugate_dual_is_an_involution((lam, m0) in arb_param()) {
        let dual = conjugate_dual(&lam, m0);
        prop_assert_eq!(conjugate_dual(&dual, m0), lam.clone());
        let neg: Vec<Half> = lam.shifted(m0).iter().map(|&v| -v).collect();
        prop_assert_eq!(sorted_desc(dual.shifted(m0)), sorted_desc(neg));
    }

    #[test]
    fn deformation_keeps_the_sign_character((lam, m0) in arb_param(), t in 1i64..6) {
        let plus = make_regular_deformation(&lam, m0, t).unwrap();
        prop_assert_eq!(eta_from_pi(&plus).1, eta_from_pi(&lam).1);
        prop_assert_eq!(plus.sig(), lam.sig());
    }

    #[test]
    fn lift_results_are_stable_under_json((lam, m0) in arb_param(), extra in 0usize..4, r in 0usize..10) {
        let n = lam.n();
        let m = n + extra + 1;
        prop_assume!(m % 2 == m0 as usize);
        let target = Signature::new(r.min(m), m - r.min(m));
        let ctx = LiftContext::minimal(n, m);
        let result = lift(&lam, &ctx, target).unwrap();
        let json = serde_json::to_value(&result).unwrap();
        match result {
            LiftResult::Vanishes => prop_assert_eq!(json["status"].as_str(), Some("vanishes")),
            _ => prop_assert_eq!(json["status"].as_str(), Some("nonzero")),
        }
        let back: HcParam = serde_json::from_value(serde_json::to_value(&lam).unwrap()).unwrap();
        prop_assert_eq!(back, lam);
    }
}
