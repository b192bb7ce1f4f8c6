//! Exact elements of ½ℤ.
//!
//! A [`HalfInt`] stores twice its value in a signed primitive integer, so
//! every comparison and every sum is exact. The storage type is generic; the
//! rest of the crate works with the [`Half`](crate::Half) alias (`i64`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{PrimInt, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Element of ½ℤ, stored as its double.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HalfInt<T = i64> {
    twice: T,
}

impl<T: PrimInt + Signed> HalfInt<T> {
    #[inline]
    pub fn from_twice(twice: T) -> Self {
        Self { twice }
    }

    #[inline]
    pub fn from_int(value: T) -> Self {
        Self {
            twice: value + value,
        }
    }

    pub fn zero() -> Self {
        Self { twice: T::zero() }
    }

    /// `num / 2`.
    #[inline]
    pub fn halves(num: T) -> Self {
        Self::from_twice(num)
    }

    #[inline]
    pub fn twice(self) -> T {
        self.twice
    }

    #[inline]
    pub fn is_integer(self) -> bool {
        (self.twice % (T::one() + T::one())).is_zero()
    }

    /// True if `self` lies in ℤ + `other`, i.e. both share the parity of
    /// their doubled representation.
    #[inline]
    pub fn same_coset(self, other: Self) -> bool {
        ((self.twice - other.twice) % (T::one() + T::one())).is_zero()
    }

    /// The integer value, if `self` is integral.
    pub fn to_integer(self) -> Option<T> {
        if self.is_integer() {
            Some(self.twice / (T::one() + T::one()))
        } else {
            None
        }
    }

    pub fn is_positive(self) -> bool {
        self.twice > T::zero()
    }

    pub fn is_negative(self) -> bool {
        self.twice < T::zero()
    }

    pub fn is_zero(self) -> bool {
        self.twice.is_zero()
    }

    pub fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    /// Smallest integer ≥ `self`.
    pub fn ceil(self) -> T {
        let two = T::one() + T::one();
        let q = self.twice / two;
        if self.twice > T::zero() && !(self.twice % two).is_zero() {
            q + T::one()
        } else {
            q
        }
    }

    /// Adds an integer.
    #[inline]
    pub fn add_int(self, k: T) -> Self {
        Self {
            twice: self.twice + k + k,
        }
    }
}

impl<T: PrimInt + Signed> Add for HalfInt<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::from_twice(self.twice + rhs.twice)
    }
}

impl<T: PrimInt + Signed> Sub for HalfInt<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::from_twice(self.twice - rhs.twice)
    }
}

impl<T: PrimInt + Signed> Neg for HalfInt<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::from_twice(T::zero() - self.twice)
    }
}

impl<T: PrimInt + Signed> AddAssign for HalfInt<T> {
    fn add_assign(&mut self, rhs: Self) {
        self.twice = self.twice + rhs.twice;
    }
}

impl<T: PrimInt + Signed> SubAssign for HalfInt<T> {
    fn sub_assign(&mut self, rhs: Self) {
        self.twice = self.twice - rhs.twice;
    }
}

impl<T: PrimInt> PartialOrd for HalfInt<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: PrimInt> Ord for HalfInt<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl<T: PrimInt + Signed + fmt::Display> fmt::Display for HalfInt<T> {
    /// Lowest terms: `"3"`, `"-3/2"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

impl<T: PrimInt + Signed + fmt::Display> fmt::Debug for HalfInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed half-integer {0:?}: expected \"a\" or \"a/2\"")]
pub struct ParseHalfError(pub String);

impl<T: PrimInt + Signed + FromStr> FromStr for HalfInt<T> {
    type Err = ParseHalfError;

    /// Accepts `"a"` and `"a/2"` (any integer `a`); the Unicode minus sign is
    /// accepted in place of `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfError(s.to_string());
        let norm = s.trim().replace('\u{2212}', "-");
        match norm.split_once('/') {
            None => {
                let v: T = norm.parse().map_err(|_| err())?;
                v.checked_add(&v).map(Self::from_twice).ok_or_else(err)
            }
            Some((num, den)) => {
                if den.trim() != "2" {
                    return Err(err());
                }
                let v: T = num.trim().parse().map_err(|_| err())?;
                Ok(Self::from_twice(v))
            }
        }
    }
}

impl<T: PrimInt + Signed + fmt::Display> Serialize for HalfInt<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, T: PrimInt + Signed + FromStr> Deserialize<'de> for HalfInt<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
