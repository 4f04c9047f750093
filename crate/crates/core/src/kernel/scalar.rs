//! Laurent polynomials in `q` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `Q[q, q^-1]`.
///
/// Terms are kept sorted by exponent and no stored coefficient is zero, so
/// structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: Vec<(i32, BigRational)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::monomial(BigRational::new(BigInt::from(num), BigInt::from(den)), 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(r, 0)
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// `c · q^k`.
    pub fn monomial(c: BigRational, k: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: vec![(k, c)] }
        }
    }

    /// Builds a scalar from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let mut out = Scalar::zero();
        for (k, c) in terms {
            out.add_monomial(k, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms as `(exponent, coefficient)`, ascending exponent.
    pub fn terms(&self) -> &[(i32, BigRational)] {
        &self.terms
    }

    /// The constant term if the scalar has no `q` dependence.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// `(k, c)` when the scalar is the monomial `c·q^k`; these are exactly
    /// the units of the ring.
    pub fn as_monomial(&self) -> Option<(i32, &BigRational)> {
        match self.terms.as_slice() {
            [(k, c)] => Some((*k, c)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    /// Lowest and highest exponents; `None` for zero.
    pub fn exponent_range(&self) -> Option<(i32, i32)> {
        Some((self.terms.first()?.0, self.terms.last()?.0))
    }

    /// Sign of the lowest-exponent coefficient.
    pub fn leading_is_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_negative())
    }

    fn add_monomial(&mut self, k: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(pos) => {
                self.terms[pos].1 += c;
                if self.terms[pos].1.is_zero() {
                    self.terms.remove(pos);
                }
            }
            Err(pos) => self.terms.insert(pos, (k, c.clone())),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// Inverse of a unit `c·q^k`; `None` for non-units.
    pub fn inverse_unit(&self) -> Option<Self> {
        let (k, c) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -k))
    }

    /// Division by a unit. Returns `None` when `d` is not a monomial.
    pub fn div_unit(&self, d: &Scalar) -> Option<Self> {
        Some(self * &d.inverse_unit()?)
    }

    /// Exact division in `Q[q, q^-1]`. Returns `None` if `d` is zero or does
    /// not divide `self`.
    pub fn div_exact(&self, d: &Scalar) -> Option<Self> {
        let (dlo, dhi) = d.exponent_range()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = &d.terms.last().expect("nonzero").1;
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        // Long division from the top degree down; the remainder's span shrinks
        // each step until it is narrower than the divisor.
        while let Some((rlo, rhi)) = rem.exponent_range() {
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let c = &rem.terms.last().expect("nonzero").1 / lead;
            let k = rhi - dhi;
            let step = Scalar::monomial(c, k);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a nonzero rational value of `q`.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            let p = if *k >= 0 {
                num_traits::pow(q.clone(), *k as usize)
            } else {
                num_traits::pow(q.recip(), (-*k) as usize)
            };
            acc += c * p;
        }
        acc
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders `c·q^k` for `c > 0`.
fn fmt_positive_monomial(k: i32, c: &BigRational) -> String {
    let q = match k {
        0 => return fmt_rational(c),
        1 => "q".to_string(),
        _ => format!("q^{k}"),
    };
    if c.is_one() {
        q
    } else {
        format!("{}{}", fmt_rational(c), q)
    }
}

impl fmt::Display for Scalar {
    /// Ascending exponents, e.g. `q^-1 − 2 + 3/2q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let body = fmt_positive_monomial(*k, &c.abs());
            match (idx, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "−{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " − {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Scalar {
    /// Rendering as a coefficient in front of a basis word: bare when the
    /// expression grammar can read it back unparenthesized (a rational or
    /// `q^k`), parenthesized otherwise.
    pub fn coefficient_string(&self) -> String {
        match self.terms.as_slice() {
            [(0, c)] => fmt_rational(c),
            [(k, c)] if c.is_one() => fmt_positive_monomial(*k, c),
            _ => format!("({self})"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (a, b) = (&self.terms[i], &rhs.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a.1 + &b.1;
                    if !s.is_zero() {
                        out.push((a.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Scalar { terms: out }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if let [(k, c)] = rhs.terms.as_slice() {
            if c.is_one() {
                return self.shift(*k);
            }
        }
        if let [(k, c)] = self.terms.as_slice() {
            if c.is_one() {
                return rhs.shift(*k);
            }
        }
        let mut out = Scalar::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_monomial(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}
