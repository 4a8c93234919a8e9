//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A [`Scalar`] stores its coordinates in the power basis `1, ζ, …, ζ^{φ(N)-1}`
//! after reduction modulo the N-th cyclotomic polynomial, so equality of
//! values is equality of coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("cannot embed order {from} into order {to}: {from} does not divide {to}")]
    NotDivisor { from: u32, to: u32 },
    #[error("expected {expected} coefficients for order {order}, got {got}")]
    BadLength { order: u32, expected: usize, got: usize },
    #[error("bad rational literal {0:?}")]
    Parse(String),
    #[error("singular matrix")]
    Singular,
}

/// Cached data for one cyclotomic field.
struct Field {
    n: u32,
    /// Coefficients of Φ_n, lowest degree first, monic.
    poly: Vec<BigInt>,
    /// `powers[k]` is ζ^k reduced to the power basis, for `0 <= k < n`.
    powers: Vec<Vec<BigRational>>,
}

impl Field {
    fn phi(&self) -> usize {
        self.poly.len() - 1
    }
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<Field>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field(n: u32) -> Arc<Field> {
    if let Some(f) = field_cache().read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(n as usize);
    let mut cur = vec![BigRational::zero(); phi];
    cur[0] = BigRational::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ and reduce x^phi = -Σ c_i x^i
        let top = cur[phi - 1].clone();
        let mut next = vec![BigRational::zero(); phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, c) in poly.iter().take(phi).enumerate() {
                next[i] -= &top * BigRational::from_integer(c.clone());
            }
        }
        cur = next;
    }
    let f = Arc::new(Field { n, poly, powers });
    field_cache()
        .write()
        .expect("field cache poisoned")
        .insert(n, f.clone());
    f
}

/// Φ_n with integer coefficients, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_poly(0)");
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // b is monic
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Euler's totient, i.e. the degree of Q(ζ_n) over Q.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An element of Q(ζ_N) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero(order: u32) -> Scalar {
        let f = field(order.max(1));
        Scalar {
            order: f.n,
            coeffs: vec![BigRational::zero(); f.phi()],
        }
    }

    pub fn one(order: u32) -> Scalar {
        Scalar::from_int(1, order)
    }

    pub fn from_int(v: i64, order: u32) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(v)), order)
    }

    pub fn from_ratio(num: i64, den: i64, order: u32) -> Scalar {
        Scalar::from_rational(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            order,
        )
    }

    pub fn from_rational(v: BigRational, order: u32) -> Scalar {
        let mut s = Scalar::zero(order);
        s.coeffs[0] = v;
        s
    }

    /// ζ_N^k.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Scalar, ScalarError> {
        if n == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        let f = field(n);
        let idx = k.rem_euclid(n as i64) as usize;
        Ok(Scalar {
            order: n,
            coeffs: f.powers[idx].clone(),
        })
    }

    /// Builds a scalar from coefficients on `ζ^0 … ζ^{m-1}` (any length),
    /// reducing modulo Φ_N.
    pub fn from_power_coeffs(order: u32, coeffs: &[BigRational]) -> Result<Scalar, ScalarError> {
        if order == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        let f = field(order);
        let mut out = vec![BigRational::zero(); f.phi()];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&f.powers[k % order as usize]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Ok(Scalar { order, coeffs: out })
    }

    /// Builds a scalar from an already reduced coefficient vector.
    pub fn from_reduced(order: u32, coeffs: Vec<BigRational>) -> Result<Scalar, ScalarError> {
        if order == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        let expected = field(order).phi();
        if coeffs.len() != expected {
            return Err(ScalarError::BadLength {
                order,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Scalar { order, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.order != other.order {
            Err(ScalarError::ConductorMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(Scalar {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(Scalar {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let f = field(self.order);
        let phi = f.phi();
        if phi == 1 {
            return Ok(Scalar {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let n = self.order as usize;
        let mut acc = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % n] += a * b;
            }
        }
        let mut out = vec![BigRational::zero(); phi];
        for (k, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&f.powers[k]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Ok(Scalar {
            order: self.order,
            coeffs: out,
        })
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conjugate(&self) -> Scalar {
        let f = field(self.order);
        let n = self.order as usize;
        let mut out = vec![BigRational::zero(); f.phi()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&f.powers[(n - k) % n]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Scalar {
            order: self.order,
            coeffs: out,
        }
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let phi = self.coeffs.len();
        if phi == 1 {
            return Ok(Scalar {
                order: self.order,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // columns: self * ζ^j
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let z = Scalar::root_of_unity(self.order, j as i64)?;
            cols.push(self.try_mul(&z)?.coeffs);
        }
        // augmented matrix rows: [M | e_0]
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(ScalarError::DivisionByZero)?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &factor * p;
                    }
                }
            }
        }
        Ok(Scalar {
            order: self.order,
            coeffs: m.into_iter().map(|row| row[phi].clone()).collect(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut result = Scalar::one(self.order);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.try_mul(&b)?;
            }
            b = b.try_mul(&b)?;
            k >>= 1;
        }
        Ok(result)
    }

    /// Re-expresses the value in Q(ζ_M) for a multiple M of the order.
    pub fn embed(&self, target: u32) -> Result<Scalar, ScalarError> {
        if target == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        if target % self.order != 0 {
            return Err(ScalarError::NotDivisor {
                from: self.order,
                to: target,
            });
        }
        let step = (target / self.order) as usize;
        let mut spread = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            spread[(k * step) % target as usize] += c;
        }
        Scalar::from_power_coeffs(target, &spread)
    }

    /// Numerical value under ζ_N ↦ exp(2πi/N). Display only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        Complex64::new(re, im)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Scalar>>(order: u32, items: I) -> Scalar {
        items
            .into_iter()
            .fold(Scalar::zero(order), |acc, x| &acc + x)
    }
}

/// Inverts a square matrix over Q(ζ_N) by Gauss-Jordan elimination.
pub fn invert_matrix(m: &[Vec<Scalar>], order: u32) -> Result<Vec<Vec<Scalar>>, ScalarError> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one(order)
                } else {
                    Scalar::zero(order)
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(ScalarError::Singular)?;
        a.swap(col, piv);
        let inv = a[col][col].inverse()?;
        for x in a[col].iter_mut() {
            *x = x.try_mul(&inv)?;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.try_sub(&factor.try_mul(p)?)?;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `root_of_unity(N, k)` as a free function.
pub fn root_of_unity(n: u32, k: i64) -> Result<Scalar, ScalarError> {
    Scalar::root_of_unity(n, k)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn subscript(n: u32) -> String {
    const D: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| D[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn superscript(n: usize) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| D[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for Scalar {
    /// Canonical cyclotomic syntax, e.g. `(1+ζ₄)/2`, `-3`, `ζ₅²+ζ₅³`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut terms: Vec<(BigInt, usize)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let v = c.numer() * (&den / c.denom());
                terms.push((v, k));
            }
        }
        let zeta = format!("ζ{}", subscript(self.order));
        let mut body = String::new();
        for (i, (v, k)) in terms.iter().enumerate() {
            let neg = v.is_negative();
            let mag = v.abs();
            if neg {
                body.push('-');
            } else if i > 0 {
                body.push('+');
            }
            let mono = match k {
                0 => String::new(),
                1 => zeta.clone(),
                _ => format!("{zeta}{}", superscript(*k)),
            };
            if mono.is_empty() {
                body.push_str(&mag.to_string());
            } else if mag.is_one() {
                body.push_str(&mono);
            } else {
                body.push_str(&format!("{mag}{mono}"));
            }
        }
        if den.is_one() {
            write!(f, "{body}")
        } else if terms.len() == 1 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [Q(ζ{})]", self.order)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| BigRational::from_str(s.trim()).map_err(|_| ScalarError::Parse(s.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Scalar::from_reduced(r.order, coeffs).map_err(serde::de::Error::custom)
    }
}
