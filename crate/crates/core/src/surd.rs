//! Exact elements of ℚ(√2, √3), enough to hold sums of root lengths for
//! every crystallographic root system (squared lengths are 1, 2, 3, 4 or 6
//! times a rational square).

use std::fmt;
use std::ops::{Add, Mul};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{q_to_f64, q_to_string, Q};

/// `a + b√2 + c√3 + d√6` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SurdSum {
    pub rational: Q,
    pub sqrt2: Q,
    pub sqrt3: Q,
    pub sqrt6: Q,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_parts(rational: Q, sqrt2: Q, sqrt3: Q, sqrt6: Q) -> Self {
        SurdSum {
            rational,
            sqrt2,
            sqrt3,
            sqrt6,
        }
    }

    pub fn rational(x: Q) -> Self {
        SurdSum {
            rational: x,
            ..Self::default()
        }
    }

    /// `√x` for rational `x ≥ 0`, provided its squarefree part is one of
    /// 1, 2, 3, 6. Returns `None` otherwise.
    pub fn sqrt_of(x: &Q) -> Option<Self> {
        if x.is_negative() {
            return None;
        }
        if x.is_zero() {
            return Some(Self::zero());
        }
        // √(a/b) = √(ab)/b
        let ab = (x.numer() * x.denom()).to_u64()?;
        let (square_root, free) = split_square(ab);
        let coeff = Q::new(square_root.into(), x.denom().clone());
        let mut out = Self::zero();
        match free {
            1 => out.rational = coeff,
            2 => out.sqrt2 = coeff,
            3 => out.sqrt3 = coeff,
            6 => out.sqrt6 = coeff,
            _ => return None,
        }
        Some(out)
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.rational)
            + q_to_f64(&self.sqrt2) * 2f64.sqrt()
            + q_to_f64(&self.sqrt3) * 3f64.sqrt()
            + q_to_f64(&self.sqrt6) * 6f64.sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt2.is_zero() && self.sqrt3.is_zero() && self.sqrt6.is_zero()
    }
}

/// Writes `n = s² · f` with `f` squarefree, returning `(s, f)`.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * n)
}

impl Add for &SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: &SurdSum) -> SurdSum {
        SurdSum {
            rational: &self.rational + &rhs.rational,
            sqrt2: &self.sqrt2 + &rhs.sqrt2,
            sqrt3: &self.sqrt3 + &rhs.sqrt3,
            sqrt6: &self.sqrt6 + &rhs.sqrt6,
        }
    }
}

impl Mul for &SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &SurdSum) -> SurdSum {
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        let six = BigRational::from_integer(6.into());
        let (a1, b1, c1, d1) = (&self.rational, &self.sqrt2, &self.sqrt3, &self.sqrt6);
        let (a2, b2, c2, d2) = (&rhs.rational, &rhs.sqrt2, &rhs.sqrt3, &rhs.sqrt6);
        // √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2
        SurdSum {
            rational: a1 * a2 + &two * b1 * b2 + &three * c1 * c2 + &six * d1 * d2,
            sqrt2: a1 * b2 + b1 * a2 + &three * (c1 * d2 + d1 * c2),
            sqrt3: a1 * c2 + c1 * a2 + &two * (b1 * d2 + d1 * b2),
            sqrt6: a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        }
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (c, tag) in [
            (&self.sqrt2, "√2"),
            (&self.sqrt3, "√3"),
            (&self.sqrt6, "√6"),
            (&self.rational, ""),
        ] {
            if c.is_zero() {
                continue;
            }
            let body = if c.is_one() && !tag.is_empty() {
                tag.to_string()
            } else if !tag.is_empty() && c.is_integer() {
                format!("{}{}", q_to_string(c), tag)
            } else if !tag.is_empty() {
                format!("({}){}", q_to_string(c), tag)
            } else {
                q_to_string(c)
            };
            terms.push(body);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qi};

    #[test]
    fn sqrt_of_classifies() {
        assert_eq!(SurdSum::sqrt_of(&qi(4)).unwrap(), SurdSum::rational(qi(2)));
        assert_eq!(SurdSum::sqrt_of(&qi(8)).unwrap().sqrt2, qi(2));
        assert_eq!(SurdSum::sqrt_of(&q(1, 2)).unwrap().sqrt2, q(1, 2));
        assert_eq!(SurdSum::sqrt_of(&qi(6)).unwrap().sqrt6, qi(1));
        assert_eq!(SurdSum::sqrt_of(&q(2, 3)).unwrap().sqrt6, q(1, 3));
        assert!(SurdSum::sqrt_of(&qi(5)).is_none());
        assert!(SurdSum::sqrt_of(&qi(-1)).is_none());
    }

    #[test]
    fn product_matches_float() {
        let a = SurdSum::from_parts(q(1, 2), qi(3), q(-2, 5), qi(1));
        let b = SurdSum::from_parts(qi(-1), q(1, 3), qi(2), q(7, 4));
        let exact = (&a * &b).to_f64();
        assert!((exact - a.to_f64() * b.to_f64()).abs() < 1e-12);
    }

    #[test]
    fn display() {
        let s = SurdSum::from_parts(qi(4), qi(2), qi(0), qi(0));
        assert_eq!(s.to_string(), "2√2 + 4");
        assert_eq!(SurdSum::from_parts(qi(0), qi(3), qi(0), qi(3)).to_string(), "3√2 + 3√6");
    }
}
