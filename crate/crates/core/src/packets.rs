//! L-packets of discrete series and the A-packet members attached to the
//! parameters of theta lifts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hc::{strictly_decreasing, HcParam, Signature};
use crate::lifting::{AqBlock, AqLambdaData};
use crate::transfer::epsilon_of_signature;
use crate::{Half, Sign};

/// `φ = χ_{κ₁} ⊕ ⋯ ⊕ χ_{κ_n}` with `κ₁ > ⋯ > κ_n` in `ℤ + (n−1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Half>", into = "Vec<Half>")]
pub struct LParameter {
    kappas: Vec<Half>,
}

impl TryFrom<Vec<Half>> for LParameter {
    type Error = Error;
    fn try_from(kappas: Vec<Half>) -> Result<Self> {
        Self::new(kappas)
    }
}

impl From<LParameter> for Vec<Half> {
    fn from(phi: LParameter) -> Self {
        phi.kappas
    }
}

impl LParameter {
    pub fn new(kappas: Vec<Half>) -> Result<Self> {
        let n = kappas.len();
        if n == 0 {
            return Err(Error::InvalidLParameter("no characters".into()));
        }
        let parity = Half::from_twice(n as i64 - 1);
        if let Some(&k) = kappas.iter().find(|k| !k.same_coset(parity)) {
            return Err(Error::InvalidLParameter(format!(
                "κ = {k} is not in Z + {}/2",
                n - 1
            )));
        }
        if !strictly_decreasing(&kappas) {
            return Err(Error::InvalidLParameter(
                "κ must be strictly decreasing".into(),
            ));
        }
        Ok(Self { kappas })
    }

    pub fn n(&self) -> usize {
        self.kappas.len()
    }

    pub fn kappas(&self) -> &[Half] {
        &self.kappas
    }
}

/// A character of the component group, `η(e_i)` for `i = 1..n`.
pub type SignCharacter = Vec<Sign>;

/// Character of the component group of an A-parameter: `η′(e_i′)` for
/// `i = 1..n` and the extra generator `e₀′`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ACharacter {
    pub values: Vec<Sign>,
    pub e0: Sign,
}

impl ACharacter {
    pub fn new(values: Vec<Sign>, e0: Sign) -> Self {
        Self { values, e0 }
    }

    /// All `2^{n+1}` characters, `e₀′` varying slowest.
    pub fn all(n: usize) -> impl Iterator<Item = ACharacter> {
        (0..1u64 << (n + 1)).map(move |bits| {
            let values = (0..n)
                .map(|i| {
                    if bits >> i & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect();
            let e0 = if bits >> n & 1 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            ACharacter { values, e0 }
        })
    }

    pub fn product(&self) -> Sign {
        self.e0 * Sign::product(self.values.iter().copied())
    }
}

/// `φ′ = χ_{μ₁} ⊕ ⋯ ⊕ (χ_{μ₀} ⊠ S_{m−n}) ⊕ ⋯ ⊕ χ_{μ_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AParameter {
    mus: Vec<Half>,
    mu0: Half,
    m: usize,
    i0: usize,
}

impl AParameter {
    pub fn new(mus: Vec<Half>, mu0: Half, m: usize) -> Result<Self> {
        let n = mus.len();
        if n == 0 {
            return Err(Error::InvalidAParameter("no characters".into()));
        }
        if m <= n {
            return Err(Error::InvalidAParameter(format!(
                "need m > n, got m = {m}, n = {n}"
            )));
        }
        let parity = Half::from_twice(m as i64 - 1);
        if let Some(&mu) = mus.iter().find(|mu| !mu.same_coset(parity)) {
            return Err(Error::InvalidAParameter(format!(
                "μ = {mu} is not in Z + {}/2",
                m - 1
            )));
        }
        if !mu0.same_coset(Half::from_twice(n as i64)) {
            return Err(Error::InvalidAParameter(format!(
                "μ₀ = {mu0} is not in Z + {n}/2"
            )));
        }
        if !strictly_decreasing(&mus) {
            return Err(Error::InvalidAParameter(
                "μ must be strictly decreasing".into(),
            ));
        }
        let i0 = 1 + mus.iter().filter(|&&mu| mu > mu0).count();
        Ok(Self { mus, mu0, m, i0 })
    }

    pub fn mus(&self) -> &[Half] {
        &self.mus
    }

    pub fn mu0(&self) -> Half {
        self.mu0
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.mus.len()
    }

    /// `μ_{i0−1} > μ₀ ≥ μ_{i0}` (1-based).
    pub fn i0(&self) -> usize {
        self.i0
    }

    /// `S_{φ′} ≠ S̃_{φ′}`: `μ₀` coincides with `μ_{i0}` and `m − n = 1`.
    pub fn has_collision(&self) -> bool {
        self.m - self.n() == 1 && self.mus.get(self.i0 - 1) == Some(&self.mu0)
    }

    pub fn check_character(&self, eta: &ACharacter) -> Result<()> {
        if eta.values.len() != self.n() {
            return Err(Error::MalformedCharacter(format!(
                "expected {} values, got {}",
                self.n(),
                eta.values.len()
            )));
        }
        if self.has_collision() && eta.e0 != eta.values[self.i0 - 1] {
            return Err(Error::MalformedCharacter(format!(
                "μ₀ = μ_{} with m − n = 1 forces η′(e₀′) = η′(e_{}′)",
                self.i0, self.i0
            )));
        }
        Ok(())
    }
}

/// The member `π(φ, η)`: `I⁺ = {i : η(e_i) = (−1)^{i−1}}` indexes the
/// `p`-part.
pub fn pi_from_eta(phi: &LParameter, eta: &[Sign]) -> Result<HcParam> {
    if eta.len() != phi.n() {
        return Err(Error::MalformedCharacter(format!(
            "expected {} values, got {}",
            phi.n(),
            eta.len()
        )));
    }
    let (mut p_part, mut q_part) = (Vec::new(), Vec::new());
    for (i, (&k, &e)) in phi.kappas().iter().zip(eta).enumerate() {
        if e == Sign::pow_neg_one(i as i64) {
            p_part.push(k);
        } else {
            q_part.push(k);
        }
    }
    let (p, q) = (p_part.len(), q_part.len());
    assert_eq!(
        Sign::product(eta.iter().copied()),
        epsilon_of_signature(p, q),
        "determinant sign identity"
    );
    HcParam::from_parts(p_part, q_part)
}

/// Inverse of [`pi_from_eta`].
pub fn eta_from_pi(lam: &HcParam) -> (LParameter, SignCharacter) {
    let p = lam.p_part();
    let kappas = lam.sorted_entries();
    let eta = kappas
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let from_p = p.contains(k);
            Sign::pow_neg_one(i as i64 + if from_p { 0 } else { 1 })
        })
        .collect();
    let phi = LParameter { kappas };
    (phi, eta)
}

/// Block sizes `(r_i, s_i)` in index order, together with the remainders
/// `(r_{i0}, s_{i0})` which may be negative.
fn packet_shape(
    phi: &AParameter,
    eta: &ACharacter,
    target: Signature,
) -> (Vec<(i64, i64)>, i64, i64) {
    let (n, m, i0) = (phi.n() as i64, phi.m() as i64, phi.i0());
    let mut shape = vec![(0, 0); phi.n() + 1];
    let (mut r_used, mut s_used) = (0, 0);
    for i in 1..=phi.n() + 1 {
        if i == i0 {
            continue;
        }
        let ii = i as i64;
        let p_side = if i < i0 {
            eta.values[i - 1] == Sign::pow_neg_one(ii - 1)
        } else {
            eta.values[i - 2] == Sign::pow_neg_one(ii + m - n - 2)
        };
        shape[i - 1] = if p_side { (1, 0) } else { (0, 1) };
        r_used += shape[i - 1].0;
        s_used += shape[i - 1].1;
    }
    let r_i0 = target.p as i64 - r_used;
    let s_i0 = target.q as i64 - s_used;
    shape[i0 - 1] = (r_i0, s_i0);
    (shape, r_i0, s_i0)
}

fn sign_conditions(phi: &AParameter, eta: &ACharacter, target: Signature) -> (Sign, Sign) {
    let (_, r_i0, s_i0) = packet_shape(phi, eta, target);
    let (i0, dmn) = (phi.i0() as i64, (phi.m() - phi.n()) as i64);
    let product_form = eta.product() * epsilon_of_signature(target.p, target.q);
    let closed = Sign::pow_neg_one(r_i0 * (i0 - 1) + s_i0 * i0 + dmn * (dmn - 1) / 2);
    (product_form, eta.e0 * closed)
}

/// The sign condition `η′(e₁′ + ⋯ + e_n′ + e₀′) = (−1)^{(r−s)(r−s−1)/2}`,
/// evaluated both as a product and through its closed form for `η′(e₀′)`.
pub fn eta_prime_sign_ok(phi: &AParameter, eta: &ACharacter, target: Signature) -> Result<bool> {
    phi.check_character(eta)?;
    check_target(phi, target)?;
    let (product_form, closed_form) = sign_conditions(phi, eta, target);
    if product_form != closed_form {
        return Err(Error::InternalLemmaMismatch);
    }
    Ok(product_form == Sign::Plus)
}

fn check_target(phi: &AParameter, target: Signature) -> Result<()> {
    if target.dim() != phi.m() {
        return Err(Error::PreconditionViolation(format!(
            "target {target} does not have dimension {}",
            phi.m()
        )));
    }
    Ok(())
}

/// The A-packet member `σ(φ′, η′)` of `U(r,s)`, or `None` when it is zero.
pub fn sigma_from_eta_prime(
    phi: &AParameter,
    eta: &ACharacter,
    target: Signature,
) -> Result<Option<AqLambdaData>> {
    phi.check_character(eta)?;
    check_target(phi, target)?;
    let (shape, r_i0, s_i0) = packet_shape(phi, eta, target);
    if r_i0 < 0 || s_i0 < 0 || !eta_prime_sign_ok(phi, eta, target)? {
        return Ok(None);
    }
    let (n, m, i0) = (phi.n() as i64, phi.m() as i64, phi.i0());
    let top = Half::from_twice(m - 1);
    let blocks = shape
        .iter()
        .enumerate()
        .map(|(idx, &(ri, si))| {
            let i = idx + 1;
            let ii = i as i64;
            let lambda = if i < i0 {
                (phi.mus()[i - 1] - top).add_int(ii - 1)
            } else if i == i0 {
                (phi.mu0() - Half::from_twice(n)).add_int(ii - 1)
            } else {
                (phi.mus()[i - 2] - top).add_int(ii + m - n - 2)
            };
            AqBlock::new(ri as usize, si as usize, lambda)
        })
        .collect();
    AqLambdaData::new(target, blocks).map(Some)
}
