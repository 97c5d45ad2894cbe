//! Idempotents of `QG`: stabilisers and the integrality index `n_e`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::RatElement;
use crate::error::{Error, Result};
use crate::group::Subgroup;

#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentRecord {
    pub element: RatElement,
    pub is_central: bool,
    /// `S_G(e) = { g : g e = e }`.
    pub stabilizer: Subgroup,
    /// Least positive integer `n` with `n e` in `ZG`.
    pub n_e: BigInt,
}

pub fn idempotent_record(e: &RatElement) -> Result<IdempotentRecord> {
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let g = e.group();
    let fixed: Vec<usize> = g.elements().filter(|&x| e.left_mul_element(x) == *e).collect();
    let n_e = e
        .terms()
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    Ok(IdempotentRecord {
        element: e.clone(),
        is_central: e.is_central(),
        stabilizer: Subgroup::generated(g, &fixed),
        n_e,
    })
}
