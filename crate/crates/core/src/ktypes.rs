//! Highest weights of `U(p) × U(q)` and the joint-harmonics correspondence of
//! K-types for the pair `(U(p,q), U(r,s))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hc::{LiftContext, Signature};

/// Highest weight `(a₁ ≥ ⋯ ≥ a_p ; b₁ ≥ ⋯ ≥ b_q)` of `U(p) × U(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "KTypeRepr")]
pub struct KType {
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
struct KTypeRepr {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl TryFrom<KTypeRepr> for KType {
    type Error = Error;
    fn try_from(r: KTypeRepr) -> Result<Self> {
        KType::new(r.a, r.b)
    }
}

fn weakly_decreasing(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

impl KType {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if !weakly_decreasing(&a) || !weakly_decreasing(&b) {
            return Err(Error::InvalidKType(format!(
                "weights {a:?}; {b:?} are not weakly decreasing"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn sig(&self) -> Signature {
        Signature::new(self.a.len(), self.b.len())
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    fn shifted(&self, da: i64, db: i64) -> (Vec<i64>, Vec<i64>) {
        (
            self.a.iter().map(|v| v + da).collect(),
            self.b.iter().map(|v| v + db).collect(),
        )
    }
}

/// `(a, 0…0, b)` with `a > 0 > b`, split into its positive and negative runs.
fn runs(xs: &[i64]) -> (&[i64], &[i64]) {
    let pos = xs.iter().take_while(|&&v| v > 0).count();
    let neg = xs.iter().rev().take_while(|&&v| v < 0).count();
    (&xs[..pos], &xs[xs.len() - neg..])
}

fn padded(head: &[i64], zeros: usize, tail: &[i64], shift: i64) -> Vec<i64> {
    head.iter()
        .copied()
        .chain(std::iter::repeat_n(0, zeros))
        .chain(tail.iter().copied())
        .map(|v| v + shift)
        .collect()
}

/// Half of an even difference.
fn half(v: i64) -> i64 {
    debug_assert!(v % 2 == 0);
    v / 2
}

fn check_dims(mu: &KType, ctx: &LiftContext, target: Signature) -> Result<()> {
    if mu.sig().dim() != ctx.source_dim() || target.dim() != ctx.target_dim() {
        return Err(Error::PreconditionViolation(format!(
            "K-type of U{} and target U{target} do not match the lift context",
            mu.sig()
        )));
    }
    Ok(())
}

/// The K-type `μ′` of `U(r) × U(s)` corresponding to `μ`, or `None` when `μ`
/// does not occur in the joint harmonics.
///
/// The reverse correspondence is obtained with [`LiftContext::reversed`].
pub fn correspond_ktype(mu: &KType, ctx: &LiftContext, target: Signature) -> Result<Option<KType>> {
    check_dims(mu, ctx, target)?;
    let (p, q) = (mu.sig().p as i64, mu.sig().q as i64);
    let (r, s) = (target.p as i64, target.q as i64);
    let (na, nb) = mu.shifted(-half(r - s + ctx.m0()), -half(s - r + ctx.m0()));
    let (a, b) = runs(&na);
    let (c, d) = runs(&nb);
    let (x, y, z, w) = (a.len(), b.len(), c.len(), d.len());
    if x + w > target.p || z + y > target.q {
        return Ok(None);
    }
    let out = KType {
        a: padded(a, target.p - x - w, d, half(p - q + ctx.n0())),
        b: padded(c, target.q - z - y, b, half(q - p + ctx.n0())),
    };
    debug_assert!(weakly_decreasing(&out.a) && weakly_decreasing(&out.b));
    Ok(Some(out))
}

/// Splits `μ` into `μ₁ ⊗ μ₂` along the compact pairs `(U(p)×U(q), U(r))` and
/// `(U(p)×U(q), U(s))` with characters `det^{m₁/2}` and `det^{m₂/2}`.
///
/// Requires `m₁ ≡ r`, `m₂ ≡ s (mod 2)` and `m₁ + m₂ = m0`.
pub fn split_mu(
    mu: &KType,
    ctx: &LiftContext,
    target: Signature,
    m1: i64,
    m2: i64,
) -> Result<(KType, KType)> {
    check_dims(mu, ctx, target)?;
    let (r, s) = (target.p as i64, target.q as i64);
    if (m1 - r).rem_euclid(2) != 0 || (m2 - s).rem_euclid(2) != 0 || m1 + m2 != ctx.m0() {
        return Err(Error::PatternMismatch);
    }
    if correspond_ktype(mu, ctx, target)?.is_none() {
        return Err(Error::PatternMismatch);
    }
    let (p, q) = (mu.sig().p, mu.sig().q);
    let (na, nb) = mu.shifted(-half(r - s + ctx.m0()), -half(s - r + ctx.m0()));
    let (a, b) = runs(&na);
    let (c, d) = runs(&nb);
    let mu1 = KType {
        a: padded(a, p - a.len(), &[], half(r + m1)),
        b: padded(&[], q - d.len(), d, half(m1 - r)),
    };
    let mu2 = KType {
        a: padded(&[], p - b.len(), b, half(m2 - s)),
        b: padded(c, q - c.len(), &[], half(s + m2)),
    };
    Ok((mu1, mu2))
}
