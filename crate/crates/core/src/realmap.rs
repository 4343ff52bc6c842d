//! Unit-cube space-filling maps over exact rationals.
//!
//! [`unit_forward`] and [`unit_inverse`] scale the integer recurrence to
//! `[0,1)` at a resolution of `n` digit groups. [`mid_forward`] and
//! [`mid_inverse`] evaluate the non-terminating real recurrence cut off after
//! a fixed number of levels; the forward form lands on sub-cell centres. The
//! `centered_*` functions shift both domain and range by one half.
//!
//! Everything is exact, so no epsilon is ever added before taking a floor.
//! A floating-point port would need one (around `1e-9`) wherever a floor of a
//! scaled value is taken.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cells::Cell;
use crate::error::{Error, Result};
use crate::radix::pow;
use crate::recurrence::{apply_alignment, apply_inverse_alignment, decode_levels, encode_at_groups, LatticePoint};

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint(Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    pub fn from_lattice(p: &LatticePoint) -> Self {
        Self(p.coords().iter().map(|c| BigRational::from_integer(BigInt::from(c.clone()))).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    fn shifted(&self, by: &BigRational) -> Self {
        Self(self.0.iter().map(|c| c + by).collect())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RationalPoint {
    type Err = Error;

    /// Comma-separated rationals, e.g. `1/2,0,3/9`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',').map(parse_rational).collect::<Result<_>>().map(Self)
    }
}

/// Parses `p/q` or a plain integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Argument(format!("{text:?} is not a rational of the form p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn rational(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn check_unit(y: &BigRational, what: &str) -> Result<()> {
    if y.is_negative() || y >= &BigRational::one() {
        return Err(Error::Domain(format!("{what} {y} outside [0, 1)")));
    }
    Ok(())
}

fn check_point(p: &RationalPoint, cell: &Cell) -> Result<()> {
    if p.rank() != cell.rank() {
        return Err(Error::Argument(format!("point has rank {}, cell has rank {}", p.rank(), cell.rank())));
    }
    p.coords().iter().try_for_each(|c| check_unit(c, "coordinate"))
}

fn check_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument(format!("{what} must be positive")));
    }
    Ok(())
}

fn floor_nonneg(x: &BigRational) -> BigUint {
    x.floor().to_integer().to_biguint().expect("non-negative")
}

/// `F` at resolution `n`: `Q(floor(y s^(d^2 n))) / s^(d n)`.
pub fn unit_forward(y: &BigRational, n: u64, cell: &Cell) -> Result<RationalPoint> {
    check_unit(y, "argument")?;
    check_positive(n, "resolution")?;
    let d = cell.rank() as u64;
    let s = cell.side() as u64;
    let u = floor_nonneg(&(y * rational(pow(s, d * d * n))));
    let p = encode_at_groups(&u, n, cell)?;
    let scale = rational(pow(s, d * n));
    Ok(RationalPoint(p.coords().iter().map(|c| rational(c.clone()) / &scale).collect()))
}

/// `f` at resolution `n`: `q(floor(Y s^(d n))) / s^(d^2 n)`.
pub fn unit_inverse(y: &RationalPoint, n: u64, cell: &Cell) -> Result<BigRational> {
    check_point(y, cell)?;
    check_positive(n, "resolution")?;
    let d = cell.rank() as u64;
    let s = cell.side() as u64;
    let scale = rational(pow(s, d * n));
    let v: Vec<BigUint> = y.coords().iter().map(|c| floor_nonneg(&(c * &scale))).collect();
    let u = decode_levels(&v, (d * n) as usize, cell)?;
    Ok(rational(u) / rational(pow(s, d * d * n)))
}

/// The real recurrence cut off after `depth` levels. Each level consumes one
/// base-`s^d` digit of `y`; the last level returns the centre of its sub-cell.
/// Depths that are multiples of `d` line up with whole digit groups.
pub fn mid_forward(y: &BigRational, depth: u64, cell: &Cell) -> Result<RationalPoint> {
    check_unit(y, "argument")?;
    check_positive(depth, "depth")?;
    let side = rational(BigUint::from(cell.side()));
    let radix = rational(BigUint::from(cell.len()));

    let mut digits = Vec::with_capacity(depth as usize);
    let mut rest = y.clone();
    for _ in 0..depth {
        let scaled = rest * &radix;
        let t = scaled.floor();
        digits.push(t.to_integer().to_usize().expect("digit below s^d"));
        rest = scaled - t;
    }

    let node_plus = |t: usize, offsets: Vec<BigRational>| -> Vec<BigRational> {
        cell.node(t)
            .iter()
            .zip(offsets)
            .map(|(&h, o)| (rational(BigUint::from(h)) + o) / &side)
            .collect()
    };
    let last = *digits.last().expect("depth >= 1");
    let mut v = node_plus(last, vec![half(); cell.rank()]);
    let one = BigRational::one();
    for &t in digits.iter().rev().skip(1) {
        let aligned = apply_alignment(&v, t, cell, |c| &one - c);
        v = node_plus(t, aligned);
    }
    Ok(RationalPoint(v))
}

/// Inverse real recurrence cut off after `depth` levels: the truncated
/// base-`s^d` expansion of the scalar.
pub fn mid_inverse(y: &RationalPoint, depth: u64, cell: &Cell) -> Result<BigRational> {
    check_point(y, cell)?;
    check_positive(depth, "depth")?;
    let side = rational(BigUint::from(cell.side()));
    let one = BigRational::one();
    let mut v = y.coords().to_vec();
    let mut acc = BigUint::zero();
    let mut local = vec![0u32; cell.rank()];
    for _ in 0..depth {
        let scaled: Vec<BigRational> = v.iter().map(|c| c * &side).collect();
        for (slot, c) in local.iter_mut().zip(&scaled) {
            *slot = c.floor().to_integer().to_u32().expect("digit below side");
        }
        let t = cell.index_of(&local).expect("digits below side");
        acc = acc * cell.len() + t;
        let frac: Vec<BigRational> = scaled
            .into_iter()
            .zip(&local)
            .map(|(c, &l)| c - rational(BigUint::from(l)))
            .collect();
        v = apply_inverse_alignment(&frac, t, cell, |c| &one - c);
    }
    Ok(rational(acc) / rational(pow(cell.len() as u64, depth)))
}

fn check_centered_scalar(y: &BigRational) -> Result<BigRational> {
    let shifted = y + half();
    check_unit(&shifted, "centered argument + 1/2").map(|_| shifted)
}

fn centered_point(y: &RationalPoint) -> RationalPoint {
    y.shifted(&half())
}

/// `F'(y) = F(y + 1/2) - (1/2, ..., 1/2)` for `y` in `[-1/2, 1/2)`.
pub fn centered_forward(y: &BigRational, n: u64, cell: &Cell) -> Result<RationalPoint> {
    let p = unit_forward(&check_centered_scalar(y)?, n, cell)?;
    Ok(p.shifted(&-half()))
}

/// `f'(Y) = f(Y + (1/2, ..., 1/2)) - 1/2`.
pub fn centered_inverse(y: &RationalPoint, n: u64, cell: &Cell) -> Result<BigRational> {
    Ok(unit_inverse(&centered_point(y), n, cell)? - half())
}

/// `E'` at a fixed depth.
pub fn centered_mid_forward(y: &BigRational, depth: u64, cell: &Cell) -> Result<RationalPoint> {
    let p = mid_forward(&check_centered_scalar(y)?, depth, cell)?;
    Ok(p.shifted(&-half()))
}

/// `e'` at a fixed depth.
pub fn centered_mid_inverse(y: &RationalPoint, depth: u64, cell: &Cell) -> Result<BigRational> {
    Ok(mid_inverse(&centered_point(y), depth, cell)? - half())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::AlignmentVariant;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn hilbert() -> Cell {
        Cell::serpentine(2, 2, AlignmentVariant::Adjacent).unwrap()
    }

    #[test]
    fn forward_examples() {
        let h = hilbert();
        assert_eq!(unit_forward(&r(0, 1), 3, &h).unwrap(), RationalPoint::new(vec![r(0, 1), r(0, 1)]));
        assert_eq!(unit_forward(&r(1, 4), 1, &h).unwrap(), RationalPoint::new(vec![r(0, 1), r(1, 2)]));
        assert!(matches!(unit_forward(&r(1, 1), 1, &h), Err(Error::Domain(_))));
        assert!(matches!(unit_forward(&r(-1, 3), 1, &h), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_examples() {
        let h = hilbert();
        let origin = RationalPoint::new(vec![r(0, 1), r(0, 1)]);
        assert_eq!(unit_inverse(&origin, 2, &h).unwrap(), r(0, 1));
        // (1/2, 0) lands on lattice node (2, 0) of the 4x4 grid, the 15th node.
        let p = RationalPoint::new(vec![r(1, 2), r(0, 1)]);
        assert_eq!(unit_inverse(&p, 1, &h).unwrap(), r(7, 8));
        let p = RationalPoint::new(vec![r(1, 4), r(0, 1)]);
        assert_eq!(unit_inverse(&p, 1, &h).unwrap(), r(1, 16));
        let outside = RationalPoint::new(vec![r(1, 1), r(0, 1)]);
        assert!(matches!(unit_inverse(&outside, 1, &h), Err(Error::Domain(_))));
    }

    #[test]
    fn mid_forward_examples() {
        let h = hilbert();
        assert_eq!(mid_forward(&r(0, 1), 2, &h).unwrap(), RationalPoint::new(vec![r(1, 8), r(1, 8)]));
        assert_eq!(mid_forward(&r(0, 1), 1, &h).unwrap(), RationalPoint::new(vec![r(1, 4), r(1, 4)]));
        let origin = RationalPoint::new(vec![r(0, 1), r(0, 1)]);
        assert_eq!(mid_inverse(&origin, 4, &h).unwrap(), r(0, 1));
    }

    #[test]
    fn mid_roundtrip_on_grid() {
        let p = Cell::serpentine(2, 3, AlignmentVariant::PrecessOffsetDiagonal).unwrap();
        for k in 0..81 {
            let y = r(k, 81);
            let v = mid_forward(&y, 2, &p).unwrap();
            assert_eq!(mid_inverse(&v, 2, &p).unwrap(), y);
        }
    }

    #[test]
    fn centered_peano_origin() {
        let p = Cell::serpentine(2, 3, AlignmentVariant::PlainDiagonal).unwrap();
        let f = centered_forward(&r(0, 1), 1, &p).unwrap();
        assert_eq!(f, RationalPoint::new(vec![r(-1, 18), r(-1, 18)]));
        assert_eq!(centered_inverse(&f, 1, &p).unwrap(), r(40, 81) - r(1, 2));
        assert!(matches!(centered_forward(&r(1, 2), 1, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("40/81").unwrap(), r(40, 81));
        assert_eq!(parse_rational("-3").unwrap(), r(-3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        let p: RationalPoint = "1/2, 0".parse().unwrap();
        assert_eq!(p, RationalPoint::new(vec![r(1, 2), r(0, 1)]));
        assert_eq!(p.to_string(), "1/2,0");
    }
}
