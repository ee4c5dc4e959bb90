//! The generalized divisor function τ_s(n): the number of ordered s-tuples of
//! positive integers whose product is n. Multiplicative, with
//! τ_s(l^k) = C(k + s - 1, s - 1); values are exact big integers since they
//! outgrow 64 bits quickly as s rises.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::factorize;

/// C(s - 1 + k, k), built incrementally so every division is exact.
fn binomial_rising(s: u64, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=k as u64 {
        acc = acc * (s - 1 + i) / i;
    }
    acc
}

/// τ_s(n) for n >= 1, s >= 1, exact.
pub fn tau_s(n: u64, s: u64) -> BigUint {
    assert!(n >= 1 && s >= 1, "tau_s is defined for n >= 1, s >= 1");
    factorize(n)
        .pairs
        .iter()
        .map(|&(_, k)| binomial_rising(s, k))
        .product()
}

/// τ_s(n) next to the main term exp(ln n · ln s / ln ln n) of its upper
/// bound, plus the growth exponent ln τ_s(n) / ln n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauRecord {
    pub n: u64,
    pub s: u64,
    /// Exact value, kept as a decimal string in serialized form.
    #[serde(with = "biguint_decimal")]
    pub tau: BigUint,
    /// exp(ln n · ln s / ln ln n).
    pub bound_main_term: f64,
    /// ln τ_s(n) / ln n.
    pub exponent: f64,
}

/// Natural log of a big integer; exact conversion when it fits an f64, top
/// bits plus a power-of-two scaling otherwise.
fn ln_big(x: &BigUint) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v.ln();
        }
    }
    let bits = x.bits();
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit value fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// The record for (n, s). The main term needs ln ln n > 0, so n >= 3.
pub fn tau_bound_report(n: u64, s: u64) -> Result<TauRecord> {
    if n <= 2 {
        return Err(Error::Domain(format!(
            "the main term exp(ln n ln s / ln ln n) needs n >= 3, got {n}"
        )));
    }
    assert!(s >= 1, "tau_s is defined for s >= 1");
    let tau = tau_s(n, s);
    let ln_n = (n as f64).ln();
    let bound_main_term = (ln_n * (s as f64).ln() / ln_n.ln()).exp();
    let exponent = ln_big(&tau) / ln_n;
    Ok(TauRecord { n, s, tau, bound_main_term, exponent })
}

mod biguint_decimal {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(D::Error::custom)
    }
}
