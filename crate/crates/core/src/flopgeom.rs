//! Coordinate checks for the stratified Mukai flop of `T*G(2,4)`: the map into
//! Plücker space, the Klein quadric, its indeterminacy locus, the
//! determinantal local model and Springer fibre dimensions.
//!
//! Everything is generic over [`Scalar`], implemented for exact rationals,
//! prime fields ([`ModP`]) and integer polynomials ([`Poly`]); the polynomial
//! instance turns the pointwise checks into symbolic identities.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub trait Scalar:
    Clone + PartialEq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

/// Element of `F_p` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP {
    value: u64,
    modulus: u64,
}

impl ModP {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        ModP { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn random<R: Rng>(rng: &mut R, modulus: u64) -> Self {
        ModP { value: rng.gen_range(0..modulus), modulus }
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let mut result = ModP::new(1, self.modulus);
        let mut base = self;
        let mut e = self.modulus - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        Some(result)
    }

    fn check(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl Add for ModP {
    type Output = ModP;
    fn add(self, o: ModP) -> ModP {
        self.check(o);
        ModP { value: (self.value + o.value) % self.modulus, modulus: self.modulus }
    }
}

impl Sub for ModP {
    type Output = ModP;
    fn sub(self, o: ModP) -> ModP {
        self.check(o);
        ModP { value: (self.value + self.modulus - o.value) % self.modulus, modulus: self.modulus }
    }
}

impl Mul for ModP {
    type Output = ModP;
    fn mul(self, o: ModP) -> ModP {
        self.check(o);
        let v = (self.value as u128 * o.value as u128) % self.modulus as u128;
        ModP { value: v as u64, modulus: self.modulus }
    }
}

impl Neg for ModP {
    type Output = ModP;
    fn neg(self) -> ModP {
        ModP { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl Scalar for ModP {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Integer polynomial in `N` variables, stored as exponent vector -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<[u32; N], BigInt>,
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.push([0; N], BigInt::from(c));
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        let mut p = Self::zero();
        p.push(e, BigInt::from(1));
        p
    }

    fn push(&mut self, e: [u32; N], c: BigInt) {
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&e);
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

impl<const N: usize> Add for Poly<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (e, c) in o.terms {
            self.push(e, c);
        }
        self
    }
}

impl<const N: usize> Neg for Poly<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<const N: usize> Sub for Poly<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const N: usize> Mul for Poly<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for (x, y) in e.iter_mut().zip(e2) {
                    *x += y;
                }
                out.push(e, c1 * c2);
            }
        }
        out
    }
}

impl<const N: usize> Scalar for Poly<N> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Homogeneous coordinates `(alpha : x : y : z : w)` on a fibre of `P(E(H))`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoint5<S> {
    pub alpha: S,
    pub x: S,
    pub y: S,
    pub z: S,
    pub w: S,
}

impl<S: Scalar> AffinePoint5<S> {
    pub fn new([alpha, x, y, z, w]: [S; 5]) -> Self {
        AffinePoint5 { alpha, x, y, z, w }
    }

    pub fn is_all_zero(&self) -> bool {
        [&self.alpha, &self.x, &self.y, &self.z, &self.w].iter().all(|c| c.is_zero())
    }
}

/// Plücker coordinates `(p12, p13, p14, p23, p24, p34)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlueckerPoint<S> {
    pub coords: [S; 6],
}

impl<S: Scalar> PlueckerPoint<S> {
    pub fn is_all_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// `(alpha^2 : alpha z : alpha w : -alpha x : -alpha y : xw - yz)`.
pub fn gamma_map<S: Scalar>(pt: &AffinePoint5<S>) -> PlueckerPoint<S> {
    let AffinePoint5 { alpha, x, y, z, w } = pt.clone();
    PlueckerPoint {
        coords: [
            alpha.clone() * alpha.clone(),
            alpha.clone() * z.clone(),
            alpha.clone() * w.clone(),
            -(alpha.clone() * x.clone()),
            -(alpha * y.clone()),
            x * w - y * z,
        ],
    }
}

/// `p12 p34 - p13 p24 + p14 p23`.
pub fn quadric_value<S: Scalar>(pt: &PlueckerPoint<S>) -> S {
    let [p12, p13, p14, p23, p24, p34] = pt.coords.clone();
    p12 * p34 - p13 * p24 + p14 * p23
}

/// True on the locus `alpha = xw - yz = 0` where the map is undefined.
pub fn is_indeterminate<S: Scalar>(pt: &AffinePoint5<S>) -> Result<bool> {
    if pt.is_all_zero() {
        return Err(Error::InvalidParameter("the zero vector is not a projective point".into()));
    }
    Ok(gamma_map(pt).is_all_zero())
}

/// Entries `(x, y, z, w, v, t, u, s)` of the matrix
/// `[[x, y, z, w], [-v, t, u, -s]]`; true when all 2x2 minors vanish.
pub fn determinantal_membership<S: Scalar>(p8: &[S; 8]) -> bool {
    let [x, y, z, w, v, t, u, s] = p8.clone();
    let top = [x, y, z, w];
    let bottom = [-v, t, u, -s];
    (0..4).all(|i| {
        (i + 1..4).all(|j| (top[i].clone() * bottom[j].clone() - top[j].clone() * bottom[i].clone()).is_zero())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpringerFiber {
    /// The fibre is `G(t - i, h - 2i)`.
    pub grassmann: [usize; 2],
    pub dim: usize,
}

/// Fibre of the Springer map over a rank-`i` point: `G(t - i, h - 2i)`.
pub fn springer_fiber(t: usize, h: usize, i: usize) -> Result<SpringerFiber> {
    if !(i <= t && 2 * t <= h) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= i <= t <= h/2, got t={t}, h={h}, i={i}"
        )));
    }
    Ok(SpringerFiber { grassmann: [t - i, h - 2 * i], dim: (t - i) * (h - t - i) })
}

/// The map and quadric over five polynomial variables.
pub fn symbolic_quadric_of_gamma() -> Poly<5> {
    let vars: [Poly<5>; 5] = std::array::from_fn(Poly::var);
    quadric_value(&gamma_map(&AffinePoint5::new(vars)))
}
