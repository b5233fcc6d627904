//! Truncated formal power series with exact rational coefficients.
//!
//! A series of truncation `T` stores `a_0..=a_T`; binary operations on
//! series of different truncations produce the smaller one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

/// First index at which two series differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}: {} != {}", self.index, format_rational(&self.lhs), format_rational(&self.rhs))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `"p/q"` in lowest terms, or `"n"` when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(int(s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

impl RationalSeries {
    pub fn zero(t: usize) -> Self {
        RationalSeries { coeffs: vec![BigRational::zero(); t + 1] }
    }

    pub fn one(t: usize) -> Self {
        Self::monomial(t, 0, BigRational::one())
    }

    /// `c q^k`, or zero when `k > t`.
    pub fn monomial(t: usize, k: usize, c: BigRational) -> Self {
        let mut s = Self::zero(t);
        if k <= t {
            s.coeffs[k] = c;
        }
        s
    }

    /// Panics on an empty vector; a series always has `a_0`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        RationalSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate_to(&self, t: usize) -> Self {
        let mut coeffs: Vec<BigRational> = self.coeffs.iter().take(t + 1).cloned().collect();
        coeffs.resize(t + 1, BigRational::zero());
        RationalSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Formal derivative; `None` at truncation 0 where nothing survives.
    pub fn derivative(&self) -> Option<Self> {
        if self.truncation() == 0 {
            return None;
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(n, a)| a * int(n as i64)).collect();
        Some(RationalSeries { coeffs })
    }

    /// Substitutes `q ↦ q^r`.
    pub fn dilate(&self, r: usize) -> Self {
        assert!(r >= 1);
        let t = self.truncation();
        let mut out = Self::zero(t);
        for (n, a) in self.coeffs.iter().enumerate() {
            if n * r > t {
                break;
            }
            out.coeffs[n * r] = a.clone();
        }
        out
    }

    /// `exp(f)` for `a_0 = 0`, from `n F_n = Σ_{k=1}^n k f_k F_{n-k}`.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm { expected: 0, found: format_rational(&self.coeffs[0]) });
        }
        let t = self.truncation();
        let mut out = vec![BigRational::one()];
        for n in 1..=t {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k] * int(k as i64);
                }
            }
            out.push(acc / int(n as i64));
        }
        Ok(RationalSeries { coeffs: out })
    }

    /// `log(f)` for `a_0 = 1`, from `n g_n = n f_n - Σ_{k=1}^{n-1} k g_k f_{n-k}`.
    pub fn log_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm { expected: 1, found: format_rational(&self.coeffs[0]) });
        }
        let t = self.truncation();
        let mut g = vec![BigRational::zero()];
        for n in 1..=t {
            let mut acc = &self.coeffs[n] * int(n as i64);
            for k in 1..n {
                if !g[k].is_zero() {
                    acc -= &g[k] * &self.coeffs[n - k] * int(k as i64);
                }
            }
            g.push(acc / int(n as i64));
        }
        Ok(RationalSeries { coeffs: g })
    }

    /// `(1 - q^r)^{-c}` as `exp(c Σ_m q^{rm}/m)`; `c` may be any rational.
    pub fn geom_power(r: usize, c: &BigRational, t: usize) -> Self {
        assert!(r >= 1, "geom_power needs r >= 1");
        let mut log = Self::zero(t);
        let mut m = 1;
        while r * m <= t {
            log.coeffs[r * m] = c / int(m as i64);
            m += 1;
        }
        log.exp_series().expect("constant term is zero")
    }

    /// Product of finitely many series at truncation `t`; empty product is 1.
    pub fn product_family(factors: &[RationalSeries], t: usize) -> Self {
        factors.iter().fold(Self::one(t), |acc, f| &acc * f)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

/// Exact comparison up to the smaller truncation.
pub fn series_equal(f: &RationalSeries, g: &RationalSeries) -> std::result::Result<(), Mismatch> {
    for (index, (a, b)) in f.coeffs.iter().zip(&g.coeffs).enumerate() {
        if a != b {
            return Err(Mismatch { index, lhs: a.clone(), rhs: b.clone() });
        }
    }
    Ok(())
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = format_rational(&a.abs());
            match n {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}·")?;
                    }
                    if n == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{n}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation() + 1)
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        RationalSeries { coeffs }
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        RationalSeries { coeffs }
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        RationalSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        let t = self.truncation().min(rhs.truncation());
        let mut coeffs = vec![BigRational::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(t + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        RationalSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factorial(n: i64) -> i64 {
        (1..=n).product()
    }

    #[test]
    fn one_plus_q_times_one_minus_q() {
        let a = RationalSeries::from_ints(&[1, 1, 0]);
        let b = RationalSeries::from_ints(&[1, -1, 0]);
        assert_eq!(&a * &b, RationalSeries::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn derivative_of_exp_q_is_itself_shifted() {
        let e = RationalSeries::from_coeffs((0..6).map(|n| rat(1, factorial(n))).collect());
        let d = e.derivative().unwrap();
        assert_eq!(d, e.truncate_to(4));
        assert!(RationalSeries::one(0).derivative().is_none());
    }

    #[test]
    fn scale_by_zero() {
        let a = RationalSeries::from_ints(&[3, 1, 4]);
        assert!(a.scale(&int(0)).is_zero());
    }

    #[test]
    fn exp_of_q_and_2q() {
        let q = RationalSeries::from_ints(&[0, 1, 0, 0]);
        assert_eq!(q.exp_series().unwrap().coeffs(), &[int(1), int(1), rat(1, 2), rat(1, 6)]);
        let two_q = RationalSeries::from_ints(&[0, 2, 0, 0, 0, 0]);
        let e = two_q.exp_series().unwrap();
        for n in 0..6 {
            assert_eq!(e.coeff(n), &rat(1 << n, factorial(n as i64)));
        }
    }

    #[test]
    fn log_of_geometric_series() {
        let g = RationalSeries::from_ints(&[1; 7]);
        let l = g.log_series().unwrap();
        assert_eq!(l.coeff(0), &int(0));
        for n in 1..7 {
            assert_eq!(l.coeff(n), &rat(1, n as i64));
        }
    }

    #[test]
    fn constant_term_errors() {
        let a = RationalSeries::from_ints(&[1, 1]);
        assert!(matches!(a.exp_series(), Err(Error::BadConstantTerm { expected: 0, .. })));
        let b = RationalSeries::from_ints(&[2, 1]);
        assert!(matches!(b.log_series(), Err(Error::BadConstantTerm { expected: 1, .. })));
    }

    #[test]
    fn geometric_powers() {
        assert_eq!(RationalSeries::geom_power(1, &int(1), 5), RationalSeries::from_ints(&[1; 6]));
        assert_eq!(RationalSeries::geom_power(1, &int(2), 4), RationalSeries::from_ints(&[1, 2, 3, 4, 5]));
        assert_eq!(RationalSeries::geom_power(2, &int(2), 4), RationalSeries::from_ints(&[1, 0, 2, 0, 3]));
    }

    #[test]
    fn product_of_squared_euler_factors() {
        let factors: Vec<_> = (1..=4).map(|r| RationalSeries::geom_power(r, &int(2), 4)).collect();
        assert_eq!(RationalSeries::product_family(&factors, 4), RationalSeries::from_ints(&[1, 2, 5, 10, 20]));
        assert_eq!(RationalSeries::product_family(&[], 3), RationalSeries::one(3));
    }

    #[test]
    fn first_mismatch_is_reported() {
        let a = RationalSeries::from_ints(&[1, 2, 3]);
        let b = RationalSeries::from_ints(&[1, 2, 4]);
        let m = series_equal(&a, &b).unwrap_err();
        assert_eq!((m.index, m.lhs, m.rhs), (2, int(3), int(4)));
        assert!(series_equal(&a, &a).is_ok());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(RationalSeries::from_ints(&[1, -1, 0, 2]).to_string(), "1 - q + 2·q^3 + O(q^4)");
    }

    fn series(t: usize, constant: Option<i64>) -> impl Strategy<Value = RationalSeries> {
        prop::collection::vec((-9i64..10, 1i64..6), t + 1).prop_map(move |v| {
            let mut coeffs: Vec<BigRational> = v.into_iter().map(|(p, q)| rat(p, q)).collect();
            if let Some(c) = constant {
                coeffs[0] = int(c);
            }
            RationalSeries::from_coeffs(coeffs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in series(8, None), b in series(8, None), c in series(8, None)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &(-&a), RationalSeries::zero(8));
        }

        #[test]
        fn exp_log_roundtrip(f in series(8, Some(1)), g in series(8, Some(0))) {
            prop_assert_eq!(f.log_series().unwrap().exp_series().unwrap(), f);
            prop_assert_eq!(g.exp_series().unwrap().log_series().unwrap(), g);
        }

        #[test]
        fn exp_is_a_homomorphism(f in series(8, Some(0)), g in series(8, Some(0))) {
            let lhs = (&f + &g).exp_series().unwrap();
            let rhs = &f.exp_series().unwrap() * &g.exp_series().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn geom_power_is_additive_in_exponent(r in 1usize..4, p1 in -5i64..6, q1 in 1i64..4, p2 in -5i64..6, q2 in 1i64..4) {
            let (c1, c2) = (rat(p1, q1), rat(p2, q2));
            let lhs = RationalSeries::geom_power(r, &(&c1 + &c2), 8);
            let rhs = &RationalSeries::geom_power(r, &c1, 8) * &RationalSeries::geom_power(r, &c2, 8);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn geom_power_matches_binomial(r in 1usize..4, c in 0i64..6) {
            let s = RationalSeries::geom_power(r, &int(c), 8);
            for n in 0..=8usize {
                let expected = if n % r == 0 {
                    let k = (n / r) as i64;
                    // C(c+k-1, k)
                    let mut b = BigInt::one();
                    for i in 0..k {
                        b = b * BigInt::from(c + i) / BigInt::from(i + 1);
                    }
                    BigRational::from_integer(b)
                } else {
                    BigRational::zero()
                };
                prop_assert_eq!(s.coeff(n), &expected);
            }
        }
    }
}
