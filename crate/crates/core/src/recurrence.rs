//! The integer recurrences: scalar to lattice point ([`encode`]) and back
//! ([`decode`]), the interpolated curve, and the centered variants that
//! extend both maps to all integers.
//!
//! The scalar is read as base-`s^d` digits, most significant first, and each
//! digit selects a node of the cell. A digit group is `d` digits, so every
//! evaluation runs over `d * l` levels where `l` is [`group_length`]. Rather
//! than recursing and aligning whole sub-results, the evaluation carries the
//! composed alignment (a coordinate permutation plus per-axis reflection) down
//! the levels and emits one base-`s` digit per coordinate per level.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cells::Cell;
use crate::error::{Error, Result};
use crate::radix::{digits_le, from_digits_be, pow};
use crate::realmap::RationalPoint;

/// Non-negative lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<BigUint>);

impl LatticePoint {
    pub fn new(coords: Vec<BigUint>) -> Self {
        Self(coords)
    }

    pub fn from_u64(coords: &[u64]) -> Self {
        Self(coords.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// Fails with [`Error::Range`] on any negative coordinate.
    pub fn try_from_signed(coords: &[BigInt]) -> Result<Self> {
        coords
            .iter()
            .map(|c| c.to_biguint().ok_or_else(|| Error::Range(format!("negative coordinate {c}"))))
            .collect::<Result<_>>()
            .map(Self)
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigUint> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.0.iter().map(num_traits::ToPrimitive::to_u64).collect()
    }

    pub fn l1_distance(&self, other: &Self) -> BigUint {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| if a > b { a - b } else { b - a })
            .sum()
    }

    pub fn squared_distance(&self, other: &Self) -> BigUint {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                let diff = if a > b { a - b } else { b - a };
                &diff * &diff
            })
            .sum()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

/// Lattice coordinates of either sign, produced by the centered maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPoint(Vec<BigInt>);

impl SignedPoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.0.iter().map(num_traits::ToPrimitive::to_i64).collect()
    }

    pub fn l1_distance(&self, other: &Self) -> BigUint {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).magnitude().clone())
            .sum()
    }
}

impl fmt::Display for SignedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// Rotates by `sigma(t)` then reflects the axes set in `N(t)`.
pub(crate) fn apply_alignment<T: Clone>(v: &[T], t: usize, cell: &Cell, reflect: impl Fn(&T) -> T) -> Vec<T> {
    let d = v.len();
    let sigma = cell.sigma()[t];
    (0..d)
        .map(|j| {
            let src = &v[(j + sigma) % d];
            if cell.entry_bit(t, j) {
                reflect(src)
            } else {
                src.clone()
            }
        })
        .collect()
}

/// Undoes [`apply_alignment`]: reflects by `N(t)` first, then rotates back.
pub(crate) fn apply_inverse_alignment<T: Clone>(
    v: &[T],
    t: usize,
    cell: &Cell,
    reflect: impl Fn(&T) -> T,
) -> Vec<T> {
    let d = v.len();
    let sigma = cell.sigma()[t];
    (0..d)
        .map(|j| {
            let src = (j + d - sigma) % d;
            if cell.entry_bit(t, src) {
                reflect(&v[src])
            } else {
                v[src].clone()
            }
        })
        .collect()
}

fn check_align_args(v: &LatticePoint, t: usize, w: &BigUint, cell: &Cell) -> Result<()> {
    if v.rank() != cell.rank() {
        return Err(Error::Argument(format!("point has rank {}, cell has rank {}", v.rank(), cell.rank())));
    }
    if t >= cell.len() {
        return Err(Error::Argument(format!("node index {t} outside the cell")));
    }
    if let Some(c) = v.coords().iter().find(|&c| c > w) {
        return Err(Error::Range(format!("coordinate {c} exceeds {w}")));
    }
    Ok(())
}

/// Orients a sub-cell point `v` (coordinates in `[0, w]`) for node `t`.
pub fn align(v: &LatticePoint, t: usize, w: &BigUint, cell: &Cell) -> Result<LatticePoint> {
    check_align_args(v, t, w, cell)?;
    Ok(LatticePoint(apply_alignment(v.coords(), t, cell, |c| w - c)))
}

/// Inverse of [`align`] for the same `t` and `w`.
pub fn align_inv(v: &LatticePoint, t: usize, w: &BigUint, cell: &Cell) -> Result<LatticePoint> {
    check_align_args(v, t, w, cell)?;
    Ok(LatticePoint(apply_inverse_alignment(v.coords(), t, cell, |c| w - c)))
}

fn group_size(cell: &Cell) -> BigUint {
    let d = cell.rank() as u64;
    pow(cell.side() as u64, d * d)
}

/// Number of digit groups needed for `u`: the smallest `l >= 1` with
/// `u < s^(d^2 l)`.
pub fn group_length(u: &BigUint, cell: &Cell) -> u64 {
    let group = group_size(cell);
    let mut bound = group.clone();
    let mut l = 1;
    while u >= &bound {
        bound *= &group;
        l += 1;
    }
    l
}

/// Composed alignment carried from one level to the next: output axis `j`
/// reads local axis `src[j]`, complemented when `flip[j]`.
struct Frame {
    src: Vec<usize>,
    flip: Vec<bool>,
}

impl Frame {
    fn identity(d: usize) -> Self {
        Self { src: (0..d).collect(), flip: vec![false; d] }
    }
}

fn encode_levels(u: &BigUint, levels: usize, cell: &Cell) -> LatticePoint {
    let d = cell.rank();
    let s = cell.side() as u64;
    let digits = digits_le(u, cell.len() as u64, levels);
    debug_assert_eq!(digits.len(), levels);

    let mut frame = Frame::identity(d);
    let mut out: Vec<Vec<u64>> = vec![Vec::with_capacity(levels); d];
    for &digit in digits.iter().rev() {
        let t = digit as usize;
        let node = cell.node(t);
        let sigma = cell.sigma()[t];
        for (j, coord) in out.iter_mut().enumerate() {
            let local = frame.src[j];
            let c = node[local] as u64;
            coord.push(if frame.flip[j] { s - 1 - c } else { c });
            frame.flip[j] ^= cell.entry_bit(t, local);
            frame.src[j] = (local + sigma) % d;
        }
    }
    LatticePoint(out.iter().map(|c| from_digits_be(c, s)).collect())
}

/// `Q(u)`: the lattice point at position `u` along the curve.
pub fn encode(u: &BigUint, cell: &Cell) -> LatticePoint {
    let groups = group_length(u, cell) as usize;
    encode_levels(u, groups * cell.rank(), cell)
}

/// `Q(u)` evaluated over exactly `groups` digit groups. Extra leading groups
/// are zero digits and leave the result unchanged.
pub fn encode_at_groups(u: &BigUint, groups: u64, cell: &Cell) -> Result<LatticePoint> {
    if groups == 0 || u >= &group_size(cell).pow(groups as u32) {
        return Err(Error::Range(format!("{u} does not fit in {groups} digit groups")));
    }
    Ok(encode_levels(u, groups as usize * cell.rank(), cell))
}

pub(crate) fn decode_levels(v: &[BigUint], levels: usize, cell: &Cell) -> Result<BigUint> {
    let d = cell.rank();
    let s = cell.side() as u64;
    let digits: Vec<Vec<u64>> = v.iter().map(|c| digits_le(c, s, levels)).collect();
    if digits.iter().any(|c| c.len() > levels) {
        return Err(Error::Range(format!("coordinates exceed {levels} base-{s} digits")));
    }

    let mut frame = Frame::identity(d);
    let mut next = Frame::identity(d);
    let mut local = vec![0u32; d];
    let mut out = Vec::with_capacity(levels);
    for k in (0..levels).rev() {
        for (c, slot) in local.iter_mut().enumerate() {
            let g = digits[frame.src[c]][k];
            *slot = (if frame.flip[c] { s - 1 - g } else { g }) as u32;
        }
        let t = cell.index_of(&local).expect("digits below side");
        out.push(t as u64);
        let sigma = cell.sigma()[t];
        for j in 0..d {
            let c = (j + d - sigma) % d;
            next.src[j] = frame.src[c];
            next.flip[j] = frame.flip[c] ^ cell.entry_bit(t, c);
        }
        std::mem::swap(&mut frame, &mut next);
    }
    Ok(from_digits_be(&out, cell.len() as u64))
}

fn check_rank(rank: usize, cell: &Cell) -> Result<()> {
    if rank != cell.rank() {
        return Err(Error::Argument(format!("point has rank {rank}, cell has rank {}", cell.rank())));
    }
    Ok(())
}

/// `q(V)`: the scalar whose image under [`encode`] is `v`.
///
/// Defined for every non-negative tuple; the result is meaningful as an
/// inverse only for points that [`encode`] can produce.
pub fn decode(v: &LatticePoint, cell: &Cell) -> Result<BigUint> {
    check_rank(v.rank(), cell)?;
    let d = cell.rank() as u64;
    let scale = pow(cell.side() as u64, d);
    let max = v.coords().iter().max().cloned().unwrap_or_default();
    let mut bound = scale.clone();
    let mut l = 1usize;
    while max >= bound {
        bound *= &scale;
        l += 1;
    }
    decode_levels(v.coords(), l * cell.rank(), cell)
}

/// `C(y)`: linear interpolation between `Q(floor(y))` and `Q(floor(y) + 1)`.
pub fn curve_point(y: &BigRational, cell: &Cell) -> Result<RationalPoint> {
    if y.is_negative() {
        return Err(Error::Domain(format!("curve parameter {y} is negative")));
    }
    let floor = y.floor();
    let frac = y - &floor;
    let base = floor.to_integer().to_biguint().expect("non-negative");
    let lo = encode(&base, cell);
    if frac.is_zero() {
        return Ok(RationalPoint::from_lattice(&lo));
    }
    let hi = encode(&(base + 1u32), cell);
    let keep = BigRational::one() - &frac;
    let coords = lo
        .coords()
        .iter()
        .zip(hi.coords())
        .map(|(a, b)| {
            let a = BigRational::from_integer(BigInt::from(a.clone()));
            let b = BigRational::from_integer(BigInt::from(b.clone()));
            &keep * a + &frac * b
        })
        .collect();
    Ok(RationalPoint::new(coords))
}

fn require_diagonal(cell: &Cell) -> Result<()> {
    if cell.class().is_diagonal() {
        Ok(())
    } else {
        Err(Error::UnsupportedClass)
    }
}

fn half_floor(n: &BigUint) -> BigInt {
    BigInt::from(n >> 1u32)
}

/// `Q'(u)`: the curve re-centred so that `u = 0` sits at the origin and
/// every integer `u` maps to a distinct integer point. Diagonal cells only.
pub fn encode_centered(u: &BigInt, cell: &Cell) -> Result<SignedPoint> {
    require_diagonal(cell)?;
    let need = (u.magnitude() + 1u32) * 2u32;
    let group = group_size(cell);
    let mut bound = group.clone();
    let mut groups = 1;
    while bound < need {
        bound *= &group;
        groups += 1;
    }
    encode_centered_at_groups(u, groups, cell)
}

/// [`encode_centered`] over a fixed number of digit groups; any count large
/// enough to hold `u` gives the same point.
pub fn encode_centered_at_groups(u: &BigInt, groups: u64, cell: &Cell) -> Result<SignedPoint> {
    require_diagonal(cell)?;
    let d = cell.rank() as u64;
    let span = group_size(cell).pow(groups as u32);
    let shifted = u + half_floor(&span);
    let shifted = match shifted.to_biguint() {
        Some(v) if groups > 0 && v < span => v,
        _ => return Err(Error::Range(format!("{u} does not fit in {groups} centered digit groups"))),
    };
    let offset = half_floor(&pow(cell.side() as u64, d * groups));
    let p = encode_levels(&shifted, groups as usize * cell.rank(), cell);
    Ok(SignedPoint(
        p.into_coords().into_iter().map(|c| BigInt::from(c) - &offset).collect(),
    ))
}

/// `q'(V)`: inverse of [`encode_centered`]. Diagonal cells only.
pub fn decode_centered(v: &SignedPoint, cell: &Cell) -> Result<BigInt> {
    require_diagonal(cell)?;
    check_rank(v.rank(), cell)?;
    let d = cell.rank() as u64;
    let scale = pow(cell.side() as u64, d);
    let max = v.coords().iter().map(|c| c.magnitude().clone()).max().unwrap_or_default();
    let need = (max + 1u32) * 2u32;
    let mut width = scale.clone();
    let mut l = 1u64;
    while width < need {
        width *= &scale;
        l += 1;
    }
    let offset = half_floor(&width);
    let shifted: Vec<BigUint> = v
        .coords()
        .iter()
        .map(|c| (c + &offset).to_biguint().expect("offset covers magnitude"))
        .collect();
    let u = decode_levels(&shifted, (l * d) as usize, cell)?;
    let span_half = half_floor(&pow(cell.side() as u64, d * d * l));
    Ok(BigInt::from_biguint(Sign::Plus, u) - span_half)
}

/// Floor division of every coordinate, used by the self-similarity checks.
pub fn floor_div(v: &LatticePoint, divisor: &BigUint) -> LatticePoint {
    LatticePoint(v.coords().iter().map(|c| c.div_floor(divisor)).collect())
}
