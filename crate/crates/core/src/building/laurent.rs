//! Laurent polynomials in `t` over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::parse::parse_raw;
use crate::algebra::Rational;
use crate::error::ParseError;

/// `t^low · Σ coeffs[i] t^i`; zero has no coefficients, otherwise the first
/// and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Laurent::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        Laurent::from_coeffs(e, vec![c])
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Laurent::monomial(Rational::one(), e)
    }

    pub fn from_coeffs(low: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        if coeffs.is_empty() {
            return Laurent::zero();
        }
        Laurent {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The t-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// A monomial `c t^e` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        (self.coeffs.len() == 1).then(|| (&self.coeffs[0], self.low))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        let i = e - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Laurent::from_coeffs(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Value at `t = c`. Panics for `c = 0` if negative powers occur.
    pub fn eval(&self, c: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, a) in self.terms() {
            let p = if e >= 0 {
                c.pow(e as u32)
            } else {
                c.recip().pow((-e) as u32)
            };
            acc += &(a * &p);
        }
        acc
    }

    /// Exact quotient, if `other` divides `self` in Q[t, t⁻¹].
    pub fn div_exact(&self, other: &Laurent) -> Option<Laurent> {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let n = &self.coeffs;
        let d = &other.coeffs;
        if n.len() < d.len() {
            return None;
        }
        let mut rem = n.clone();
        let mut q = vec![Rational::zero(); n.len() - d.len() + 1];
        let lead = d.last().unwrap();
        for i in (0..q.len()).rev() {
            let c = &rem[i + d.len() - 1] / lead;
            if !c.is_zero() {
                for (k, dk) in d.iter().enumerate() {
                    let v = &rem[i + k] - &(&c * dk);
                    rem[i + k] = v;
                }
            }
            q[i] = c;
        }
        rem.iter()
            .all(|c| c.is_zero())
            .then(|| Laurent::from_coeffs(self.low - other.low, q))
    }

    /// Division with remainder in Q[t]; both operands must be polynomials.
    pub fn div_rem(&self, d: &Laurent) -> (Laurent, Laurent) {
        assert!(!d.is_zero(), "division by zero");
        let dd = d.degree().unwrap();
        let lead = d.coeff(dd);
        let mut q = Laurent::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let m = Laurent::monomial(&r.coeff(rd) / &lead, rd - dd);
            r = &r - &(&m * d);
            q = &q + &m;
        }
        (q, r)
    }

    /// Monic gcd of the polynomial parts, normalized to valuation 0.
    pub fn gcd(a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        let mut x = a.normalized();
        let mut y = b.normalized();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r.normalized();
        }
        x
    }

    /// `self · t^{-val}` made monic.
    fn normalized(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let lead = self.coeffs.last().unwrap().recip();
        Laurent::from_coeffs(0, self.coeffs.iter().map(|c| c * &lead).collect())
    }

    /// Remainder of polynomial division with both read at valuation 0.
    fn rem(&self, other: &Laurent) -> Laurent {
        let mut rem = self.coeffs.clone();
        let d = &other.coeffs;
        let lead = d.last().unwrap();
        while rem.len() >= d.len() {
            let c = rem.last().unwrap() / lead;
            let off = rem.len() - d.len();
            for (k, dk) in d.iter().enumerate() {
                let v = &rem[off + k] - &(&c * dk);
                rem[off + k] = v;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Laurent::from_coeffs(0, rem)
    }

    pub fn parse(text: &str) -> Result<Laurent, ParseError> {
        let mut acc = Laurent::zero();
        for (c, factors) in parse_raw(text)? {
            let mut e = 0i64;
            for (name, k) in factors {
                if name != "t" {
                    return Err(ParseError::new(0, format!("unexpected variable `{name}`")));
                }
                e += k;
            }
            acc = &acc + &Laurent::monomial(c, e);
        }
        Ok(acc)
    }
}

impl From<i64> for Laurent {
    fn from(n: i64) -> Self {
        Laurent::constant(Rational::from_int(n))
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let coeffs = (low..=high).map(|e| &self.coeff(e) + &rhs.coeff(e)).collect();
        Laurent::from_coeffs(low, coeffs)
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Laurent::from_coeffs(self.low + rhs.low, out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<(i64, &Rational)> = self.terms().collect();
        for (k, (e, c)) in terms.into_iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            match (a.is_one(), e) {
                (_, 0) => write!(f, "{a}")?,
                (true, 1) => f.write_str("t")?,
                (true, _) => write!(f, "t^{e}")?,
                (false, 1) => write!(f, "{a}*t")?,
                (false, _) => write!(f, "{a}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Laurent {
        Laurent::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_and_valuation() {
        let a = l("1 + t");
        let b = l("t^-1 - 2*t");
        let (q, r) = Laurent::parse("t^3 + 2*t + 1").unwrap().div_rem(&Laurent::parse("t + 1").unwrap());
        assert_eq!(q, Laurent::parse("t^2 - t + 3").unwrap());
        assert_eq!(r, Laurent::constant((-2).into()));
        assert_eq!((&a * &b).to_string(), "-2*t^2 - 2*t + 1 + t^-1");
        assert_eq!((&a - &a), Laurent::zero());
        assert_eq!(b.valuation(), Some(-1));
        assert_eq!(l("3*t^2").as_monomial().map(|(_, e)| e), Some(2));
    }

    #[test]
    fn gcd_and_division() {
        let a = l("t^2 - 1");
        let b = l("t^3 + t^2");
        assert_eq!(Laurent::gcd(&a, &b), l("t + 1"));
        assert_eq!(a.div_exact(&l("t - 1")), Some(l("t + 1")));
        assert_eq!(a.div_exact(&l("t")), Some(l("t - t^-1")));
        assert!(l("t^2 + 1").div_exact(&l("t + 1")).is_none());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "-t", "3/2*t^2 - t^-3", "t + 1"] {
            assert_eq!(l(s).to_string(), s);
        }
    }
}
