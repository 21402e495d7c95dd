//! Scalar rings: traits tying into `num_traits`, the Gaussian rationals, and
//! parsing/formatting of the canonical scalar strings.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// A commutative ring with exact arithmetic. Everything the dense matrix
/// type needs; blanket-implemented so that `BigInt`, `BigRational`, `i64`
/// and [`GaussRat`] all qualify.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Marker for scalars forming a field; enables inversion, kernels and
/// row reduction. Deliberately not blanket-implemented: `i64` and `BigInt`
/// have truncating `Div`.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::degenerate("division by zero"));
        }
        Ok(Self::one() / self.clone())
    }
}

impl Field for Rat {}
impl Field for GaussRat {}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Canonical form `a/b` with reduced fraction and positive denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `a` or `a/b`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num.trim())
        .map_err(|_| Error::parse(format!("bad rational numerator in {s:?}")))?;
    let d = BigInt::from_str(den.trim())
        .map_err(|_| Error::parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Element of the field ℚ(i): a pair of rationals with conjugation as the
/// nontrivial automorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    re: Rat,
    im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(rat_int(re), rat_int(im))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`, a nonnegative rational.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Extracts the rational value, rejecting scalars with nonzero
    /// imaginary part.
    pub fn to_rat(&self) -> Result<Rat> {
        if !self.is_real() {
            return Err(Error::domain(format!("{self} is not real")));
        }
        Ok(self.re.clone())
    }

    /// Canonical form `a/b+c/d*i` (or `a/b-c/d*i`), no spaces.
    pub fn to_canonical_string(&self) -> String {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        let imabs = self.im.abs();
        format!(
            "{}{}{}/{}*i",
            rat_to_string(&self.re),
            sign,
            imabs.numer(),
            imabs.denom()
        )
    }

    /// Accepts the canonical form as well as plain rationals (`a/b`), pure
    /// imaginary parts (`c/d*i`, `i`, `-i`) and integer shorthands.
    pub fn parse(s: &str) -> Result<GaussRat> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse("empty Gaussian rational"));
        }
        // Split at the last top-level '+' or '-' that is not a leading sign.
        let bytes = s.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && bytes[idx - 1] as char != '/' {
                split = Some(idx);
                break;
            }
        }
        let parse_imag = |part: &str| -> Result<Rat> {
            // `c/d*i`, `c*i`, `i`, `-i`, `+i`
            let body = part
                .strip_suffix("*i")
                .or_else(|| part.strip_suffix('i'))
                .ok_or_else(|| Error::parse(format!("bad imaginary part {part:?}")))?;
            match body {
                "" | "+" => Ok(Rat::one()),
                "-" => Ok(-Rat::one()),
                b => rat_from_str(b),
            }
        };
        if s.ends_with('i') {
            match split {
                Some(idx) => {
                    let re = rat_from_str(&s[..idx])?;
                    let imtext = &s[idx..];
                    let im = parse_imag(imtext)?;
                    Ok(GaussRat::new(re, im))
                }
                None => Ok(GaussRat::new(Rat::zero(), parse_imag(&s)?)),
            }
        } else {
            Ok(GaussRat::from_rat(rat_from_str(&s)?))
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussRat::new(re, im)
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division of Gaussian rational by zero");
        let c = rhs.conj();
        let prod = self * c;
        GaussRat::new(prod.re / n.clone(), prod.im / n)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::from_rat(r)
    }
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        GaussRat::from_ints(v, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_field_ops() {
        let z = GaussRat::new(rat(1, 2), rat(-3, 4));
        let w = GaussRat::new(rat(2, 1), rat(5, 7));
        let p = z.clone() * w.clone();
        assert_eq!(p.clone() / w.clone(), z);
        assert_eq!(z.clone() * z.conj(), GaussRat::from_rat(z.norm()));
        assert_eq!((z.clone() - z.clone()), GaussRat::zero());
    }

    #[test]
    fn conjugation_is_involution() {
        let z = GaussRat::new(rat(22, 7), rat(-1, 3));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn canonical_strings_round_trip() {
        let cases = [
            GaussRat::from_ints(0, 0),
            GaussRat::from_ints(-3, 2),
            GaussRat::new(rat(1, 2), rat(-5, 9)),
            GaussRat::i(),
        ];
        for z in cases {
            let s = z.to_canonical_string();
            assert_eq!(GaussRat::parse(&s).unwrap(), z, "{s}");
        }
        assert_eq!(GaussRat::parse("i").unwrap(), GaussRat::i());
        assert_eq!(GaussRat::parse("-i").unwrap(), -GaussRat::i());
        assert_eq!(GaussRat::parse("3/5+4/5*i").unwrap().norm(), Rat::one());
        assert_eq!(GaussRat::parse("7").unwrap(), GaussRat::from_ints(7, 0));
    }

    #[test]
    fn rational_string_forms() {
        assert_eq!(rat_from_str("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(rat_to_string(&rat(-2, 3)), "-2/3");
        assert_eq!(rat_to_string(&rat_int(5)), "5/1");
        assert!(rat_from_str("1/0").is_err());
    }
}
