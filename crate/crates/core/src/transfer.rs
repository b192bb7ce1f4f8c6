//! Sign bookkeeping between the L-packet character of `λ` and the A-packet
//! character of its lift, plus the two-place consistency check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hc::{make_regular_deformation, HcParam, LiftContext, Signature};
use crate::lifting::{lift_up_unchecked, AqLambdaData};
use crate::nonvanishing::{li_sufficient, occurs};
use crate::packets::{eta_from_pi, sigma_from_eta_prime, ACharacter, AParameter, LParameter};
use crate::{Half, Sign};

/// `ε(V_{p,q}) = (−1)^{(p−q)(p−q−1)/2}`.
pub fn epsilon_of_signature(p: usize, q: usize) -> Sign {
    let d = p as i64 - q as i64;
    Sign::pow_neg_one(d * (d - 1) / 2)
}

/// Archimedean ε-sign attached to `χ_κ` and its conjugate dual: `+` for
/// integral or positive `κ`, `−` otherwise.
pub fn eps_half_conjdual(kappa: Half) -> Sign {
    if kappa.is_integer() || kappa.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaSigns {
    zetas: Vec<Sign>,
    zeta0: Sign,
}

impl ZetaSigns {
    pub fn new(zetas: Vec<Sign>) -> Self {
        let zeta0 = Sign::product(zetas.iter().copied());
        Self { zetas, zeta0 }
    }

    pub fn zetas(&self) -> &[Sign] {
        &self.zetas
    }

    pub fn zeta0(&self) -> Sign {
        self.zeta0
    }
}

/// `ζ_i = +` for `i < i0` and `−` for `i ≥ i0` when `m ≡ n (mod 2)`;
/// all `+` otherwise.
pub fn zeta_signs(m: usize, n: usize, i0: usize) -> ZetaSigns {
    debug_assert!(m > n && n >= 1 && (1..=n + 1).contains(&i0));
    let zetas = (1..=n)
        .map(|i| {
            if (m + n).is_multiple_of(2) && i >= i0 {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .collect();
    ZetaSigns::new(zetas)
}

/// Shape `⊕ Φ_i ⊠ S_{d_i}` of a global parameter as `(n_i, d_i)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalShape {
    summands: Vec<(usize, usize)>,
}

impl GlobalShape {
    pub fn new(summands: Vec<(usize, usize)>) -> Result<Self> {
        if summands.iter().any(|&(n, d)| n == 0 || d == 0) {
            return Err(Error::PreconditionViolation(
                "summand dimensions and SL2 sizes must be positive".into(),
            ));
        }
        Ok(Self { summands })
    }

    /// The shape of a discrete L-parameter: `n` characters, each with `d = 1`.
    pub fn tempered(n: usize) -> Self {
        Self {
            summands: vec![(1, 1); n],
        }
    }

    pub fn summands(&self) -> &[(usize, usize)] {
        &self.summands
    }

    /// The global ε-character when it is known to be trivial (every
    /// `d_i = 1`); `None` otherwise.
    pub fn epsilon_character(&self) -> Option<Sign> {
        self.summands
            .iter()
            .all(|&(_, d)| d == 1)
            .then_some(Sign::Plus)
    }
}

/// `μ_i = κ_i − (m0 − n0)/2`, `μ₀ = n0/2`.
pub fn build_a_parameter(phi: &LParameter, ctx: &LiftContext) -> Result<AParameter> {
    let shift = Half::from_twice(ctx.m0() - ctx.n0());
    let mus = phi.kappas().iter().map(|&k| k - shift).collect();
    AParameter::new(mus, Half::from_twice(ctx.n0()), ctx.target_dim())
}

fn require_up(lam: &HcParam, ctx: &LiftContext, target: Signature) -> Result<()> {
    ctx.check(lam, target)?;
    if target.dim() <= lam.n() {
        return Err(Error::PreconditionViolation(format!(
            "need m > n, got m = {}, n = {}",
            target.dim(),
            lam.n()
        )));
    }
    Ok(())
}

/// A-parameter of the lift of `λ` to `U(r,s)` together with the character
/// `η′(e_i′) = ζ_i η(e_i)`, `η′(e₀′) = ζ₀ ε(V_{r,s}) ε(W_{p,q})`.
pub fn transfer_eta(
    lam: &HcParam,
    ctx: &LiftContext,
    target: Signature,
) -> Result<(AParameter, ACharacter)> {
    require_up(lam, ctx, target)?;
    if !occurs(lam, ctx.m0(), target)?.nonzero {
        return Err(Error::PreconditionViolation(format!(
            "theta lift of {lam:?} to U{target} vanishes"
        )));
    }
    transfer_eta_unchecked(lam, ctx, target)
}

fn transfer_eta_unchecked(
    lam: &HcParam,
    ctx: &LiftContext,
    target: Signature,
) -> Result<(AParameter, ACharacter)> {
    let (phi, eta) = eta_from_pi(lam);
    let phi_p = build_a_parameter(&phi, ctx)?;
    let zeta = zeta_signs(target.dim(), lam.n(), phi_p.i0());
    let values = eta.iter().zip(zeta.zetas()).map(|(&e, &z)| e * z).collect();
    let sig = lam.sig();
    let e0 = zeta.zeta0()
        * epsilon_of_signature(target.p, target.q)
        * epsilon_of_signature(sig.p, sig.q);
    Ok((phi_p, ACharacter::new(values, e0)))
}

/// The lift of `λ` computed through its A-packet: `σ(φ′, η′)` with `η′` from
/// [`transfer_eta`].
pub fn lift_via_packet(
    lam: &HcParam,
    ctx: &LiftContext,
    target: Signature,
) -> Result<Option<AqLambdaData>> {
    let (phi_p, eta_p) = transfer_eta(lam, ctx, target)?;
    sigma_from_eta_prime(&phi_p, &eta_p, target)
}

/// Outcome of [`verify_globalization`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalizationReport {
    pub deformed: HcParam,
    pub t: i64,
    /// `η` of `λ₊` equals `η` of `λ`.
    pub character_preserved: bool,
    /// The regularity condition holds for `λ₊`.
    pub li_holds: bool,
    /// The lift of `λ` matches the packet member picked by the signs of `λ₊`.
    pub lift_matches: bool,
    /// The same comparison carried out for `λ₊` itself.
    pub deformed_lift_matches: bool,
    /// The global ε-character is trivial for the tempered shape.
    pub epsilon_trivial: bool,
}

impl GlobalizationReport {
    pub fn passed(&self) -> bool {
        self.character_preserved
            && self.li_holds
            && self.lift_matches
            && self.deformed_lift_matches
            && self.epsilon_trivial
    }
}

/// Deforms `λ` to `λ₊` (step `t ≥ (m−n+1)/2`), where the lift is known to be
/// nonzero, and checks that the character read off at `λ₊` reproduces the
/// lift of `λ`.
pub fn verify_globalization(
    lam: &HcParam,
    ctx: &LiftContext,
    target: Signature,
    t: i64,
) -> Result<GlobalizationReport> {
    require_up(lam, ctx, target)?;
    let gap = (target.dim() - lam.n()) as i64;
    if 2 * t < gap + 1 {
        return Err(Error::PreconditionViolation(format!(
            "deformation step t = {t} is below (m−n+1)/2 = {}/2",
            gap + 1
        )));
    }
    if !occurs(lam, ctx.m0(), target)?.nonzero {
        return Err(Error::PreconditionViolation(format!(
            "theta lift of {lam:?} to U{target} vanishes"
        )));
    }
    let plus = make_regular_deformation(lam, ctx.m0(), t)?;
    let (phi, eta) = eta_from_pi(lam);
    let character_preserved = eta_from_pi(&plus).1 == eta;
    let li_holds = li_sufficient(&plus, ctx.m0(), target);

    let (phi_plus, eta_plus) = transfer_eta_unchecked(&plus, ctx, target)?;
    let phi_p = build_a_parameter(&phi, ctx)?;
    let direct = lift_up_unchecked(lam, ctx, target)?;
    let lift_matches = sigma_from_eta_prime(&phi_p, &eta_plus, target)? == Some(direct);

    let deformed_lift_matches = match lift_up_unchecked(&plus, ctx, target) {
        Ok(direct_plus) => sigma_from_eta_prime(&phi_plus, &eta_plus, target)? == Some(direct_plus),
        Err(_) => false,
    };
    let epsilon_trivial = GlobalShape::tempered(lam.n()).epsilon_character() == Some(Sign::Plus);

    Ok(GlobalizationReport {
        deformed: plus,
        t,
        character_preserved,
        li_holds,
        lift_matches,
        deformed_lift_matches,
        epsilon_trivial,
    })
}
