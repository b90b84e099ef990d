//! Integer polynomials with checked arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A polynomial with `i64` coefficients, lowest degree first, trailing zeros trimmed.
///
/// Arithmetic panics on coefficient overflow rather than wrapping.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct Poly(Vec<i64>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![1])
    }

    pub fn new(mut coeffs: Vec<i64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// `c · x^d`.
    pub fn monomial(c: i64, d: usize) -> Poly {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Poly::new(v)
    }

    /// `(1 + x)^n`.
    pub fn one_plus_x_pow(n: usize) -> Poly {
        Poly::new((0..=n).map(|i| binomial(n as i64, i as i64)).collect())
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Multiply by `x^d`.
    pub fn shift(&self, d: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; d];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.0.iter().rev().fold(0i64, |acc, &c| {
            acc.checked_mul(x)
                .and_then(|t| t.checked_add(c))
                .expect("polynomial overflow")
        })
    }

    /// Coefficients padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<i64> {
        let mut v = self.0.clone();
        v.resize(len.max(v.len()), 0);
        v
    }
}

impl From<Vec<i64>> for Poly {
    fn from(v: Vec<i64>) -> Poly {
        Poly::new(v)
    }
}

impl From<Poly> for Vec<i64> {
    fn from(p: Poly) -> Vec<i64> {
        p.0
    }
}

fn zip_with(a: &Poly, b: &Poly, f: impl Fn(i64, i64) -> Option<i64>) -> Poly {
    let len = a.0.len().max(b.0.len());
    Poly::new(
        (0..len)
            .map(|i| f(a.coeff(i), b.coeff(i)).expect("polynomial overflow"))
            .collect(),
    )
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, i64::checked_add)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, i64::checked_sub)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in rhs.0.iter().enumerate() {
                out[i + j] = a
                    .checked_mul(b)
                    .and_then(|t| t.checked_add(out[i + j]))
                    .expect("polynomial overflow");
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, _) => mag.to_string(),
                (_, 1) => String::new(),
                _ => mag.to_string(),
            };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if first {
                write!(f, "{sign}{body}{var}")?;
            } else {
                write!(f, " {sign} {body}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Binomial coefficient with `C(a, b) = 0` whenever `b < 0`, `a < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> i64 {
    if a < 0 || b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    i64::try_from(acc).expect("binomial overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn trimming_and_display() {
        let p = Poly::new(vec![1, -2, 0, 0]);
        assert_eq!(p.coeffs(), &[1, -2]);
        assert_eq!(p.to_string(), "1 - 2x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::new(vec![0, 0, 3]).to_string(), "3x^2");
    }

    proptest! {
        #[test]
        fn ring_laws(a in proptest::collection::vec(-50i64..50, 0..6),
                     b in proptest::collection::vec(-50i64..50, 0..6),
                     x in -3i64..4) {
            let (a, b) = (Poly::new(a), Poly::new(b));
            prop_assert_eq!((&a * &b).eval(x), a.eval(x) * b.eval(x));
            prop_assert_eq!((&a + &b).eval(x), a.eval(x) + b.eval(x));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(a.shift(2).eval(x), a.eval(x) * x * x);
        }

        #[test]
        fn pascal(n in 1i64..40, k in 1i64..40) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}
