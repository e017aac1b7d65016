//! Exact arithmetic in the polynomial ring over the integers in one
//! indeterminate `d`, the loop parameter.
//!
//! Coefficients are arbitrary precision, so no operation can overflow.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial `c0 + c1 d + c2 d^2 + ...` with integer coefficients.
///
/// The highest stored coefficient is never zero, so equal polynomials
/// have identical representations and derived equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaPoly {
    coeffs: Vec<BigInt>,
}

impl DeltaPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The indeterminate `d` itself.
    pub fn delta() -> Self {
        Self::delta_pow(1)
    }

    /// `d^k`.
    pub fn delta_pow(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// Builds a polynomial from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `d^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Returns `Some(k)` when the polynomial is exactly `d^k`.
    pub fn as_delta_power(&self) -> Option<usize> {
        let k = self.degree()?;
        let monomial = self.coeffs[k].is_one() && self.coeffs[..k].iter().all(Zero::is_zero);
        monomial.then_some(k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl From<i64> for DeltaPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add for &DeltaPoly {
    type Output = DeltaPoly;
    fn add(self, rhs: &DeltaPoly) -> DeltaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        DeltaPoly::from_coeffs(coeffs)
    }
}

impl Add for DeltaPoly {
    type Output = DeltaPoly;
    fn add(self, rhs: DeltaPoly) -> DeltaPoly {
        &self + &rhs
    }
}

impl AddAssign<&DeltaPoly> for DeltaPoly {
    fn add_assign(&mut self, rhs: &DeltaPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl Neg for &DeltaPoly {
    type Output = DeltaPoly;
    fn neg(self) -> DeltaPoly {
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for DeltaPoly {
    type Output = DeltaPoly;
    fn neg(self) -> DeltaPoly {
        -&self
    }
}

impl Sub for &DeltaPoly {
    type Output = DeltaPoly;
    fn sub(self, rhs: &DeltaPoly) -> DeltaPoly {
        self + &(-rhs)
    }
}

impl Sub for DeltaPoly {
    type Output = DeltaPoly;
    fn sub(self, rhs: DeltaPoly) -> DeltaPoly {
        &self - &rhs
    }
}

impl Mul for &DeltaPoly {
    type Output = DeltaPoly;
    fn mul(self, rhs: &DeltaPoly) -> DeltaPoly {
        if self.is_zero() || rhs.is_zero() {
            return DeltaPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        DeltaPoly::from_coeffs(coeffs)
    }
}

impl Mul for DeltaPoly {
    type Output = DeltaPoly;
    fn mul(self, rhs: DeltaPoly) -> DeltaPoly {
        &self * &rhs
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    f.write_str("d")?;
                    if deg > 1 {
                        write!(f, "^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Syntax error with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid polynomial at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

/// Largest exponent the parser accepts.
pub const MAX_DEGREE: usize = 1 << 16;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn err(&self, msg: &str) -> ParsePolyError {
        ParsePolyError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }
}

impl FromStr for DeltaPoly {
    type Err = ParsePolyError;

    /// Accepts sums of terms `c`, `c d`, `c d^k`, `d^k`, `c*d^k` with `+`
    /// or `-` between them; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut acc = DeltaPoly::zero();
        let mut first = true;
        loop {
            let mut negative = false;
            if !first {
                match cur.peek() {
                    None => break,
                    Some(b'+') => cur.pos += 1,
                    Some(b'-') => {
                        cur.pos += 1;
                        negative = true;
                    }
                    Some(_) => return Err(cur.err("expected '+' or '-'")),
                }
            }
            if cur.eat(b'-') {
                negative = !negative;
            }
            let coeff = cur.digits().map(|t| t.parse::<BigInt>().unwrap());
            let has_coeff = coeff.is_some();
            cur.eat(b'*');
            let deg = if cur.eat(b'd') {
                if cur.eat(b'^') {
                    let exp = cur.digits().map(|t| t.parse::<usize>());
                    match exp {
                        Some(Ok(e)) if e <= MAX_DEGREE => e,
                        Some(Ok(_)) => return Err(cur.err("exponent too large")),
                        Some(Err(_)) => return Err(cur.err("exponent too large")),
                        None => return Err(cur.err("expected exponent")),
                    }
                } else {
                    1
                }
            } else if has_coeff {
                0
            } else {
                return Err(cur.err("expected a coefficient or 'd'"));
            };
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            let mut coeffs = vec![BigInt::zero(); deg + 1];
            coeffs[deg] = c;
            acc += &DeltaPoly::from_coeffs(coeffs);
            first = false;
        }
        if first {
            return Err(cur.err("empty polynomial"));
        }
        Ok(acc)
    }
}
