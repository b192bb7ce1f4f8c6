//! Harish-Chandra parameters of discrete series of `U(p,q)` and the sign
//! split `(α, β, γ, δ)` of a shifted parameter.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Half;

/// Signature `(p,q)` of a Hermitian or skew-Hermitian space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub const fn new(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    pub const fn dim(self) -> usize {
        self.p + self.q
    }

    pub const fn swapped(self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    /// All signatures of a given dimension, `(d,0), (d-1,1), …, (0,d)`.
    pub fn all_of_dim(d: usize) -> impl Iterator<Item = Signature> {
        (0..=d).rev().map(move |p| Signature::new(p, d - p))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A validated Harish-Chandra parameter `(λ₁ … λ_p | λ_{p+1} … λ_n)`.
///
/// Entries lie in a single coset `ℤ + (n-1)/2`, are pairwise distinct, and
/// strictly decrease within each block.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "HcParamRepr", try_from = "HcParamRepr")]
pub struct HcParam {
    sig: Signature,
    entries: Vec<Half>,
}

#[derive(Serialize, Deserialize)]
struct HcParamRepr {
    p: usize,
    q: usize,
    p_part: Vec<Half>,
    q_part: Vec<Half>,
}

impl From<HcParam> for HcParamRepr {
    fn from(lam: HcParam) -> Self {
        Self {
            p: lam.sig.p,
            q: lam.sig.q,
            p_part: lam.p_part().to_vec(),
            q_part: lam.q_part().to_vec(),
        }
    }
}

impl TryFrom<HcParamRepr> for HcParam {
    type Error = Error;
    fn try_from(r: HcParamRepr) -> Result<Self> {
        if r.p_part.len() != r.p || r.q_part.len() != r.q {
            return Err(Error::WrongLength {
                expected: r.p + r.q,
                got: r.p_part.len() + r.q_part.len(),
            });
        }
        HcParam::from_parts(r.p_part, r.q_part)
    }
}

/// Checks the three conditions on a Harish-Chandra parameter and returns the
/// validated value.
pub fn validate_hc(sig: Signature, entries: &[Half]) -> Result<HcParam> {
    let n = sig.dim();
    if n == 0 {
        return Err(Error::EmptySignature { p: sig.p, q: sig.q });
    }
    if entries.len() != n {
        return Err(Error::WrongLength {
            expected: n,
            got: entries.len(),
        });
    }
    let coset = Half::from_twice(n as i64 - 1);
    if let Some(&bad) = entries.iter().find(|e| !e.same_coset(coset)) {
        return Err(Error::WrongParityClass {
            entry: bad,
            n_minus_one: n - 1,
        });
    }
    let mut seen = BTreeSet::new();
    for &e in entries {
        if !seen.insert(e) {
            return Err(Error::RepeatedEntry(e));
        }
    }
    let (pp, qp) = entries.split_at(sig.p);
    if !strictly_decreasing(pp) || !strictly_decreasing(qp) {
        return Err(Error::NotDominant);
    }
    Ok(HcParam {
        sig,
        entries: entries.to_vec(),
    })
}

pub(crate) fn strictly_decreasing(xs: &[Half]) -> bool {
    xs.windows(2).all(|w| w[0] > w[1])
}

impl HcParam {
    pub fn new(sig: Signature, entries: &[Half]) -> Result<Self> {
        validate_hc(sig, entries)
    }

    pub fn from_parts(p_part: Vec<Half>, q_part: Vec<Half>) -> Result<Self> {
        let sig = Signature::new(p_part.len(), q_part.len());
        let mut entries = p_part;
        entries.extend(q_part);
        validate_hc(sig, &entries)
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn n(&self) -> usize {
        self.sig.dim()
    }

    pub fn entries(&self) -> &[Half] {
        &self.entries
    }

    pub fn p_part(&self) -> &[Half] {
        &self.entries[..self.sig.p]
    }

    pub fn q_part(&self) -> &[Half] {
        &self.entries[self.sig.p..]
    }

    /// All entries, sorted in decreasing order.
    pub fn sorted_entries(&self) -> Vec<Half> {
        let mut v = self.entries.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// `λ − (m0/2, …, m0/2)`, still block-ordered.
    pub fn shifted(&self, m0: i64) -> Vec<Half> {
        let s = Half::from_twice(m0);
        self.entries.iter().map(|&e| e - s).collect()
    }
}

impl fmt::Display for HcParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Half]| {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "({} | {})", join(self.p_part()), join(self.q_part()))
    }
}

impl fmt::Debug for HcParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HcParam{}{}", self.sig, self)
    }
}

/// The character data `χ_V = (z/|z|)^{m0}`, `χ_W = (z/|z|)^{n0}` for a lift
/// from an `n`-dimensional source to an `m`-dimensional target.
///
/// `m0` always has the parity of the target dimension (it is the splitting
/// offset) and `n0` that of the source dimension (the output shift). A
/// reverse lift swaps both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftContext {
    m0: i64,
    n0: i64,
    source_dim: usize,
    target_dim: usize,
}

impl LiftContext {
    pub fn new(m0: i64, n0: i64, source_dim: usize, target_dim: usize) -> Result<Self> {
        if (m0 - target_dim as i64).rem_euclid(2) != 0 {
            return Err(Error::ParityMismatch {
                what: "m0",
                value: m0,
                dim: target_dim,
            });
        }
        if (n0 - source_dim as i64).rem_euclid(2) != 0 {
            return Err(Error::ParityMismatch {
                what: "n0",
                value: n0,
                dim: source_dim,
            });
        }
        Ok(Self {
            m0,
            n0,
            source_dim,
            target_dim,
        })
    }

    /// `m0 = m mod 2`, `n0 = n mod 2`.
    pub fn minimal(source_dim: usize, target_dim: usize) -> Self {
        Self {
            m0: (target_dim % 2) as i64,
            n0: (source_dim % 2) as i64,
            source_dim,
            target_dim,
        }
    }

    pub fn m0(&self) -> i64 {
        self.m0
    }

    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Context for lifting back from the target to the source.
    pub fn reversed(&self) -> Self {
        Self {
            m0: self.n0,
            n0: self.m0,
            source_dim: self.target_dim,
            target_dim: self.source_dim,
        }
    }

    /// `k0 ∈ {-1, 0}` with `m ≡ n + k0 (mod 2)`.
    pub fn k0(&self) -> i64 {
        -(((self.target_dim + self.source_dim) % 2) as i64)
    }

    pub(crate) fn check(&self, lam: &HcParam, target: Signature) -> Result<()> {
        if lam.n() != self.source_dim {
            return Err(Error::PreconditionViolation(format!(
                "parameter has dimension {}, context expects {}",
                lam.n(),
                self.source_dim
            )));
        }
        if target.dim() != self.target_dim {
            return Err(Error::PreconditionViolation(format!(
                "target {} has dimension {}, context expects {}",
                target,
                target.dim(),
                self.target_dim
            )));
        }
        if target.dim() == 0 {
            return Err(Error::EmptySignature {
                p: target.p,
                q: target.q,
            });
        }
        Ok(())
    }
}

/// How zeros and the centered chain are handled by [`split_abgd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    /// `α, γ > 0 ≥ β, δ`; zeros go to β or δ.
    Lax,
    /// `α, γ > 0 > β, δ` after removing the centered chain of the given
    /// length (0 for none).
    Strict { chain: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainSide {
    P,
    Q,
    None,
}

/// `λ − m0/2 = (α, [chain], β | γ, [chain], δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbgdSplit {
    pub alpha: Vec<Half>,
    pub beta: Vec<Half>,
    pub gamma: Vec<Half>,
    pub delta: Vec<Half>,
    pub chain_k: usize,
    pub chain_side: ChainSide,
}

impl AbgdSplit {
    pub fn x(&self) -> usize {
        self.alpha.len()
    }
    pub fn y(&self) -> usize {
        self.beta.len()
    }
    pub fn z(&self) -> usize {
        self.gamma.len()
    }
    pub fn w(&self) -> usize {
        self.delta.len()
    }
}

/// `{(k-1)/2, (k-3)/2, …, -(k-1)/2}` in decreasing order.
pub fn centered_chain(k: usize) -> Vec<Half> {
    (0..k)
        .map(|j| Half::from_twice(k as i64 - 1 - 2 * j as i64))
        .collect()
}

fn contains_all(part: &[Half], chain: &[Half]) -> bool {
    // both decreasing
    let mut it = part.iter();
    chain.iter().all(|c| it.any(|p| p == c))
}

pub fn split_abgd(lam: &HcParam, m0: i64, mode: SplitMode) -> Result<AbgdSplit> {
    let shifted = lam.shifted(m0);
    let (pp, qp) = shifted.split_at(lam.sig().p);

    let (chain_k, chain_side) = match mode {
        SplitMode::Lax | SplitMode::Strict { chain: 0 } => (0, ChainSide::None),
        SplitMode::Strict { chain } => {
            let c = centered_chain(chain);
            if contains_all(pp, &c) {
                (chain, ChainSide::P)
            } else if contains_all(qp, &c) {
                (chain, ChainSide::Q)
            } else {
                return Err(Error::ChainNotPresent(chain));
            }
        }
    };
    let chain = centered_chain(chain_k);
    let strict = matches!(mode, SplitMode::Strict { .. });

    let classify = |part: &[Half], side: ChainSide| -> Result<(Vec<Half>, Vec<Half>)> {
        let mut pos = Vec::new();
        let mut nonpos = Vec::new();
        for &v in part {
            if side == chain_side && chain.contains(&v) {
                continue;
            }
            if v.is_positive() {
                pos.push(v);
            } else if v.is_zero() && strict {
                return Err(Error::UnclassifiableZero);
            } else {
                nonpos.push(v);
            }
        }
        Ok((pos, nonpos))
    };
    let (alpha, beta) = classify(pp, ChainSide::P)?;
    let (gamma, delta) = classify(qp, ChainSide::Q)?;
    Ok(AbgdSplit {
        alpha,
        beta,
        gamma,
        delta,
        chain_k,
        chain_side,
    })
}

/// Harish-Chandra parameter of `π̄ ⊗ (χ_V ∘ det)`:
/// each block becomes `(m0 − λ_last, …, m0 − λ_first)`.
pub fn conjugate_dual(lam: &HcParam, m0: i64) -> HcParam {
    let c = Half::from_int(m0);
    let flip = |xs: &[Half]| xs.iter().rev().map(|&v| c - v).collect::<Vec<_>>();
    let mut entries = flip(lam.p_part());
    entries.extend(flip(lam.q_part()));
    HcParam {
        sig: lam.sig(),
        entries,
    }
}

/// `λ₊ = λ + (t,…,t, −t,…,−t | t,…,t, −t,…,−t)` on the lax split.
pub fn make_regular_deformation(lam: &HcParam, m0: i64, t: i64) -> Result<HcParam> {
    if t < 1 {
        return Err(Error::PreconditionViolation(format!(
            "deformation step t = {t} must be a positive integer"
        )));
    }
    let zero = Half::from_twice(m0);
    let entries: Vec<Half> = lam
        .entries()
        .iter()
        .map(|&v| {
            if v > zero {
                v.add_int(t)
            } else {
                v.add_int(-t)
            }
        })
        .collect();
    let out = HcParam {
        sig: lam.sig(),
        entries,
    };
    debug_assert!(validate_hc(out.sig, &out.entries).is_ok());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> Half {
        Half::from_twice(t)
    }

    #[test]
    fn validates_examples() {
        assert!(validate_hc(Signature::new(1, 1), &[h(1), h(-1)]).is_ok());
        assert!(validate_hc(Signature::new(2, 1), &[h(2), h(0), h(4)]).is_ok());
        assert_eq!(
            validate_hc(Signature::new(1, 1), &[h(1), h(1)]),
            Err(Error::RepeatedEntry(h(1)))
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            validate_hc(Signature::new(2, 0), &[h(2), h(0)]),
            Err(Error::WrongParityClass { .. })
        ));
        assert_eq!(
            validate_hc(Signature::new(2, 0), &[h(-1), h(1)]),
            Err(Error::NotDominant)
        );
        assert!(matches!(
            validate_hc(Signature::new(0, 0), &[]),
            Err(Error::EmptySignature { .. })
        ));
        assert!(matches!(
            validate_hc(Signature::new(1, 1), &[h(1)]),
            Err(Error::WrongLength { .. })
        ));
    }

    #[test]
    fn lax_split_small() {
        let lam = HcParam::from_parts(vec![h(1)], vec![h(-1)]).unwrap();
        let s = split_abgd(&lam, 0, SplitMode::Lax).unwrap();
        assert_eq!(s.alpha, vec![h(1)]);
        assert_eq!(s.delta, vec![h(-1)]);
        assert_eq!((s.x(), s.y(), s.z(), s.w()), (1, 0, 0, 1));

        let lam = HcParam::from_parts(vec![h(4)], vec![]).unwrap();
        let s = split_abgd(&lam, 0, SplitMode::Lax).unwrap();
        assert_eq!(s.alpha, vec![h(4)]);
        assert_eq!((s.y(), s.z(), s.w()), (0, 0, 0));
    }

    #[test]
    fn strict_split_removes_chain() {
        // λ = (1, 0 | 2), m0 = 1: λ₀ = (1/2, -1/2 | 3/2)
        let lam = HcParam::from_parts(vec![h(2), h(0)], vec![h(4)]).unwrap();
        let s = split_abgd(&lam, 1, SplitMode::Strict { chain: 2 }).unwrap();
        assert_eq!(s.chain_side, ChainSide::P);
        assert_eq!(s.gamma, vec![h(3)]);
        assert_eq!((s.x(), s.y(), s.z(), s.w()), (0, 0, 1, 0));

        assert_eq!(
            split_abgd(&lam, 1, SplitMode::Strict { chain: 4 }),
            Err(Error::ChainNotPresent(4))
        );
    }

    #[test]
    fn strict_split_rejects_stray_zero() {
        let lam = HcParam::from_parts(vec![h(0)], vec![]).unwrap();
        assert_eq!(
            split_abgd(&lam, 0, SplitMode::Strict { chain: 0 }),
            Err(Error::UnclassifiableZero)
        );
        let s = split_abgd(&lam, 0, SplitMode::Strict { chain: 1 }).unwrap();
        assert_eq!((s.x(), s.y(), s.z(), s.w()), (0, 0, 0, 0));
        // lax mode puts the zero into β
        let s = split_abgd(&lam, 0, SplitMode::Lax).unwrap();
        assert_eq!(s.beta, vec![h(0)]);
    }

    #[test]
    fn conjugate_dual_examples() {
        let lam = HcParam::from_parts(vec![h(4)], vec![]).unwrap();
        assert_eq!(conjugate_dual(&lam, 0).entries(), &[h(-4)]);
        let lam = HcParam::from_parts(vec![h(1)], vec![h(-1)]).unwrap();
        let d = conjugate_dual(&lam, 0);
        assert_eq!((d.p_part(), d.q_part()), (&[h(-1)][..], &[h(1)][..]));
        let lam = HcParam::from_parts(vec![h(2), h(0)], vec![h(4)]).unwrap();
        let d = conjugate_dual(&lam, 1);
        assert_eq!(d.p_part(), &[h(2), h(0)]);
        assert_eq!(d.q_part(), &[h(-2)]);
        // λ₀ of the dual is −λ₀ reversed
        assert_eq!(d.shifted(1), vec![h(1), h(-1), h(-3)]);
        assert_eq!(conjugate_dual(&d, 1), lam);
    }

    #[test]
    fn deformation_examples() {
        let lam = HcParam::from_parts(vec![h(1)], vec![h(-1)]).unwrap();
        let plus = make_regular_deformation(&lam, 0, 3).unwrap();
        assert_eq!(plus.entries(), &[h(7), h(-7)]);
        let lam = HcParam::from_parts(vec![h(4)], vec![]).unwrap();
        assert_eq!(
            make_regular_deformation(&lam, 0, 1).unwrap().entries(),
            &[h(6)]
        );
        assert!(make_regular_deformation(&lam, 0, 0).is_err());
    }

    #[test]
    fn context_parities() {
        assert!(LiftContext::new(1, 1, 1, 3).is_ok());
        assert!(matches!(
            LiftContext::new(0, 1, 1, 3),
            Err(Error::ParityMismatch { what: "m0", .. })
        ));
        let ctx = LiftContext::new(1, 0, 2, 3).unwrap();
        assert_eq!(ctx.k0(), -1);
        let rev = ctx.reversed();
        assert_eq!((rev.m0(), rev.n0()), (0, 1));
        assert_eq!((rev.source_dim(), rev.target_dim()), (3, 2));
    }

    #[test]
    fn param_json_shape() {
        let lam = HcParam::from_parts(vec![h(2), h(0)], vec![h(4)]).unwrap();
        let js = serde_json::to_string(&lam).unwrap();
        assert_eq!(js, r#"{"p":2,"q":1,"p_part":["1","0"],"q_part":["2"]}"#);
        let back: HcParam = serde_json::from_str(&js).unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<HcParam>(
            r#"{"p":1,"q":1,"p_part":["1/2"],"q_part":["1/2"]}"#
        )
        .is_err());
    }
}
