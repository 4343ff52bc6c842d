use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::recurrence::LatticePoint;

/// Morton order: coordinate `j` takes scalar bits `j, j + d, j + 2d, ...`,
/// coordinate 0 taking the least significant bit.
pub fn z_encode(u: &BigUint, rank: usize) -> Result<LatticePoint> {
    if rank == 0 {
        return Err(Error::Argument("rank must be positive".into()));
    }
    let mut coords = vec![BigUint::zero(); rank];
    for bit in 0..u.bits() {
        if u.bit(bit) {
            coords[(bit % rank as u64) as usize].set_bit(bit / rank as u64, true);
        }
    }
    Ok(LatticePoint::new(coords))
}

pub fn z_decode(p: &LatticePoint) -> BigUint {
    let rank = p.rank() as u64;
    let mut u = BigUint::zero();
    for (j, c) in p.coords().iter().enumerate() {
        for bit in 0..c.bits() {
            if c.bit(bit) {
                u.set_bit(bit * rank + j as u64, true);
            }
        }
    }
    u
}
