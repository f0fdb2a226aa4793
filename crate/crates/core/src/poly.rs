//! Dense univariate polynomials over [`Scalar`], stored constant term first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `a_0 + a_1 x + ... + a_n x^n` with `a_n != 0`; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Scalar::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Polynomial::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, a| acc * x + a)
    }

    /// `(c - x) * self`, i.e. `a_k = c b_k - b_{k-1}`.
    pub fn mul_linear(&self, c: &Scalar) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("multiplication by (c - x)"));
        }
        let n = self.coeffs.len();
        let out = (0..=n)
            .map(|k| {
                let here = self.coeffs.get(k).map(|b| c * b).unwrap_or_default();
                match k.checked_sub(1).and_then(|j| self.coeffs.get(j)) {
                    Some(prev) => here - prev,
                    None => here,
                }
            })
            .collect();
        Ok(Polynomial::new(out))
    }

    /// Divides by `(c - x)`: returns `(q, r)` with `self = (c - x) q + r` and
    /// `r = self(c)`.
    pub fn div_linear(&self, c: &Scalar) -> Result<(Polynomial, Scalar)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("division by (c - x)"));
        }
        // Synthetic division by (x - c), then flip the quotient's sign.
        let n = self.coeffs.len() - 1;
        let mut quotient = vec![Scalar::zero(); n];
        let mut carry = Scalar::zero();
        for k in (1..=n).rev() {
            carry = &self.coeffs[k] + c * &carry;
            quotient[k - 1] = -&carry;
        }
        let remainder = &self.coeffs[0] + c * &carry;
        Ok((Polynomial::new(quotient), remainder))
    }

    /// `self(c x)`: coefficient `i` is multiplied by `c^i`.
    pub fn scale_argument(&self, c: &Scalar) -> Result<Polynomial> {
        if !c.is_positive() {
            return Err(Error::NotPositive {
                what: "scaling factor",
                value: Box::new(c.clone()),
            });
        }
        let mut power = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power = power * c;
        }
        Ok(Polynomial::new(out))
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Scalar::from(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Divides through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip().expect("leading coefficient is nonzero")),
            None => Polynomial::zero(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?.recip()?;
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + d] * &lead;
            if factor.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &factor * b;
            }
            quot[k] = factor;
        }
        rem.truncate(d);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact quotient; fails if `divisor` leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Precondition(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// `1 + max_{i<n} |a_i| / |a_n|`; every complex root has modulus below it.
    pub fn cauchy_bound(&self) -> Result<Scalar> {
        match self.degree() {
            None => return Err(Error::ZeroPolynomial("the Cauchy bound")),
            Some(0) => return Err(Error::ConstantPolynomial("the Cauchy bound")),
            Some(_) => {}
        }
        let (lead, rest) = self.coeffs.split_last().expect("nonzero");
        let lead = lead.abs();
        let max = rest
            .iter()
            .map(|a| a.abs() / &lead)
            .max()
            .unwrap_or_default();
        Ok(Scalar::one() + max)
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of 0 as a root.
    pub fn low_order_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|a| a.is_zero()).count()
    }

    /// Drops the factor `x^k` where `k` is [`low_order_zeros`](Self::low_order_zeros).
    pub fn strip_zero_roots(&self) -> Polynomial {
        Polynomial::new(self.coeffs[self.low_order_zeros()..].to_vec())
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Scalar::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Scalar multiple with coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        use num_traits::{One, Zero};
        let Some(lead) = self.leading() else {
            return Polynomial::zero();
        };
        let den_lcm = self
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|a| a.numer() * (&den_lcm / a.denom()))
            .collect();
        let content = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, a| acc.gcd(a));
        let content = if lead.is_negative() {
            -content
        } else {
            content
        };
        Polynomial::new(
            ints.into_iter()
                .map(|a| Scalar::from(a / &content))
                .collect(),
        )
    }

    /// Coefficients listed highest degree first.
    pub fn descending(&self) -> Vec<Scalar> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

/// Prefix sums `b_k = a_0 + ... + a_k` for `k < n`: the coefficients of the
/// `g` with `(1 - x) g = f`, valid exactly when the `a_i` sum to zero.
pub fn partial_sum_transform(a: &[Scalar]) -> Result<Vec<Scalar>> {
    if a.len() < 2 {
        return Err(Error::Precondition(format!(
            "need at least two coefficients, got {}",
            a.len()
        )));
    }
    if a.last().is_some_and(Scalar::is_zero) {
        return Err(Error::Precondition("last coefficient is zero".into()));
    }
    let mut acc = Scalar::zero();
    let mut out = Vec::with_capacity(a.len() - 1);
    for x in &a[..a.len() - 1] {
        acc = acc + x;
        out.push(acc.clone());
    }
    let total = acc + &a[a.len() - 1];
    if !total.is_zero() {
        return Err(Error::NonzeroSum(total));
    }
    Ok(out)
}

/// Monic gcd by Euclidean remainders.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        // keep the remainders monic so coefficient growth stays tame
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// Serialized as the ascending coefficient list.
impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl fmt::Display for Polynomial {
    /// Space-separated ascending coefficients, the same form the parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_string().replace(' ', ", "))
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Polynomial::new(
            s.split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<Scalar>>>()?,
        ))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| -a).collect())
    }
}
