//! Digit conversions between big integers and small radices.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub(crate) fn pow(base: u64, exp: u64) -> BigUint {
    let exp = u32::try_from(exp).expect("exponent exceeds u32");
    BigUint::from(base).pow(exp)
}

/// Little-endian digits of `n` in `base`, padded with zeros to at least `min_len`.
pub(crate) fn digits_le(n: &BigUint, base: u64, min_len: usize) -> Vec<u64> {
    debug_assert!(base >= 2);
    let mut out = Vec::with_capacity(min_len);
    if let Some(mut small) = n.to_u64() {
        while small > 0 {
            out.push(small % base);
            small /= base;
        }
    } else {
        // Peel off as many digits per big division as fit in a u64.
        let mut per_chunk = 1u32;
        let mut chunk = base;
        while let Some(next) = chunk.checked_mul(base) {
            chunk = next;
            per_chunk += 1;
        }
        let divisor = BigUint::from(chunk);
        let mut rest = n.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&divisor);
            let mut r = r.to_u64().expect("remainder below divisor");
            if q.is_zero() {
                while r > 0 {
                    out.push(r % base);
                    r /= base;
                }
            } else {
                for _ in 0..per_chunk {
                    out.push(r % base);
                    r /= base;
                }
            }
            rest = q;
        }
    }
    if out.len() < min_len {
        out.resize(min_len, 0);
    }
    out
}

/// Big integer from most-significant-first digits.
pub(crate) fn from_digits_be(digits: &[u64], base: u64) -> BigUint {
    if base <= 256 {
        let bytes: Vec<u8> = digits.iter().map(|&d| d as u8).collect();
        return BigUint::from_radix_be(&bytes, base as u32).unwrap_or_default();
    }
    let b = BigUint::from(base);
    digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * &b + BigUint::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_small_and_large() {
        assert_eq!(digits_le(&BigUint::from(13u32), 2, 0), vec![1, 0, 1, 1]);
        assert_eq!(digits_le(&BigUint::zero(), 9, 3), vec![0, 0, 0]);
        let big = pow(9, 40) + BigUint::from(5u32);
        let d = digits_le(&big, 9, 0);
        assert_eq!(d.len(), 41);
        assert_eq!(d[0], 5);
        assert_eq!(d[40], 1);
        assert!(d[1..40].iter().all(|&x| x == 0));
    }

    #[test]
    fn digits_roundtrip_large_radix() {
        let n = pow(1000, 7) - BigUint::from(1u32);
        let mut d = digits_le(&n, 1000, 0);
        d.reverse();
        assert_eq!(from_digits_be(&d, 1000), n);
        let mut d = digits_le(&n, 7, 0);
        d.reverse();
        assert_eq!(from_digits_be(&d, 7), n);
    }
}
