//! Exact coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! A [`Field`] is a small value object that performs arithmetic on its
//! element type. Elements never carry their field, so prime-field residues
//! are plain `u32`s and rationals are `BigRational`s in lowest terms.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The prime used by `field fp default`.
pub const DEFAULT_PRIME: u32 = 32003;

/// Range of the integers drawn when a "general" rational is needed.
const RATIONAL_SAMPLE_BOUND: i64 = 24;

/// Describes a field for file formats and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FieldKind {
    Rational,
    Prime(u32),
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "q"),
            FieldKind::Prime(p) => write!(f, "fp {p}"),
        }
    }
}

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// A "general" element: uniform in `F_p`, a small random integer in `Q`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Parses a scalar literal (`-3`, `17`, and `2/3` over `Q`).
    fn parse_literal(&self, s: &str) -> Result<Self::Elem>;
    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    /// True if the printed form starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Scalar turning the given coefficients into coprime integers; one for
    /// fields without a notion of integrality.
    fn primitive_scale<'a>(&self, coeffs: impl Iterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        let _ = coeffs;
        self.one()
    }

    fn display<'a>(&'a self, a: &'a Self::Elem) -> ElemDisplay<'a, Self> {
        ElemDisplay { field: self, elem: a }
    }
}

pub struct ElemDisplay<'a, F: Field> {
    field: &'a F,
    elem: &'a F::Elem,
}

impl<F: Field> Display for ElemDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.field.fmt_elem(self.elem, f)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn parse_literal(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid rational literal `{s}`"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }
    fn fmt_elem(&self, a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if a.denom().is_one() {
            write!(f, "{}", a.numer())
        } else {
            write!(f, "{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn primitive_scale<'a>(&self, coeffs: impl Iterator<Item = &'a BigRational>) -> BigRational {
        let coeffs: Vec<&BigRational> = coeffs.collect();
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let content = coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
        if content.is_zero() {
            return BigRational::one();
        }
        BigRational::new(den, content)
    }
}

/// The prime field `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn default_prime() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        r.to_u32().expect("residue fits in u32")
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i64(t0))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn parse_literal(&self, s: &str) -> Result<u32> {
        let v: BigInt = s.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("invalid integer literal `{s}`"),
        })?;
        Ok(self.from_bigint(&v))
    }
    fn fmt_elem(&self, a: &u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative
        if *a > self.p / 2 {
            write!(f, "-{}", self.p - *a)
        } else {
            write!(f, "{a}")
        }
    }
    fn is_negative(&self, a: &u32) -> bool {
        *a > self.p / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.add(a, &f.neg(a)), f.zero());
        assert_eq!(f.sub(a, b), f.add(a, &f.neg(b)));
        if let Some(ai) = f.inv(a) {
            assert!(f.is_one(&f.mul(a, &ai)));
        } else {
            assert!(f.is_zero(a));
        }
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fp = PrimeField::default_prime();
        let small = PrimeField::new(7).unwrap();
        for _ in 0..10_000 {
            let (a, b, c) = (fp.random(&mut rng), fp.random(&mut rng), fp.random(&mut rng));
            check_axioms(&fp, &a, &b, &c);
            let (a, b, c) = (small.random(&mut rng), small.random(&mut rng), small.random(&mut rng));
            check_axioms(&small, &a, &b, &c);
        }
        let q = Rationals;
        for _ in 0..10_000 {
            let mk = |rng: &mut ChaCha8Rng| {
                let n: i64 = rng.gen_range(-1000..1000);
                let d: i64 = rng.gen_range(1..50);
                BigRational::new(n.into(), d.into())
            };
            let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            check_axioms(&q, &a, &b, &c);
        }
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Rationals;
        let x = q.parse_literal("6/-4").unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert!(q.parse_literal("1/0").is_err());
    }

    #[test]
    fn modular_values_are_reduced() {
        let f = PrimeField::default_prime();
        assert_eq!(f.from_i64(-1), 32002);
        assert_eq!(f.parse_literal("64007").unwrap(), 1);
        assert_eq!(f.inv(&2).unwrap(), 16002);
        assert_eq!(format!("{}", f.display(&32002)), "-1");
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2147483647).is_ok());
    }
}
