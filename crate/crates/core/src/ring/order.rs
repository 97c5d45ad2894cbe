//! Brute-force multiplicative order of a unit of `ZG`, with Berman's
//! criterion as an early certificate of infinite order: a normalised torsion
//! unit with nonzero identity coefficient is `1`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::IntElement;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfiniteWitness {
    /// Least `t` such that `±u^t` is normalised, different from 1, and has
    /// nonzero trace, if one was found.
    pub berman_power: Option<usize>,
    /// Powers examined before giving up.
    pub checked_up_to: usize,
    /// Largest absolute coefficient of the last power computed.
    pub max_coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderResult {
    Finite(usize),
    Infinite(InfiniteWitness),
}

impl OrderResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrderResult::Finite(_))
    }
}

pub fn element_order_bruteforce(u: &IntElement, u_inv: &IntElement, max_order: usize) -> Result<OrderResult> {
    let one = IntElement::one(u.group());
    if u.try_mul(u_inv)? != one || u_inv.try_mul(u)? != one {
        return Err(Error::NotAUnit);
    }
    let mut p = one.clone();
    for t in 1..=max_order {
        p = &p * u;
        if p == one {
            return Ok(OrderResult::Finite(t));
        }
        let normalised = if p.augmentation().is_one() { p.clone() } else { -&p };
        if !normalised.trace().is_zero() && normalised != one {
            return Ok(OrderResult::Infinite(InfiniteWitness {
                berman_power: Some(t),
                checked_up_to: t,
                max_coeff: p.max_abs_coeff().to_string(),
            }));
        }
    }
    Ok(OrderResult::Infinite(InfiniteWitness {
        berman_power: None,
        checked_up_to: max_order,
        max_coeff: p.max_abs_coeff().to_string(),
    }))
}
