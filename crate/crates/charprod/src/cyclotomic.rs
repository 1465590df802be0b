//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! A [`CycNumber`] is stored as a rational coefficient vector of length
//! phi(n) over the power basis {zeta_n^j : 0 <= j < phi(n)}, reduced modulo
//! the n-th cyclotomic polynomial. All operations are exact; there is no
//! floating point anywhere. Mixed conductors are reconciled by lifting to
//! the least common multiple via zeta_m = zeta_n^{n/m}.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num::bigint::BigInt;
use num::integer::lcm;
use num::{BigRational, One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Monic integer coefficients of the n-th cyclotomic polynomial, ascending.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                out[i + j] += ai * bj;
            }
        }
        out
    }
    // Exact division of a by monic b.
    fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut rem: Vec<BigInt> = a.to_vec();
        let db = b.len() - 1;
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = rem[i + db].clone();
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    rem[i + j] -= &c * bj;
                }
            }
            quot[i] = c;
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()));
        quot
    }
    assert!(n >= 1);
    let mut cache: HashMap<u64, Vec<BigInt>> = HashMap::new();
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        // x^d - 1
        let mut xd = vec![BigInt::zero(); d as usize + 1];
        xd[0] = BigInt::from(-1);
        xd[d as usize] = BigInt::one();
        let mut denom = vec![BigInt::one()];
        for (e, phi_e) in &cache {
            if d % e == 0 && *e < d {
                denom = poly_mul(&denom, phi_e);
            }
        }
        cache.insert(d, poly_div_exact(&xd, &denom));
    }
    cache.remove(&n).unwrap()
}

/// Per-conductor reduction data: zeta_n^e over the power basis for every
/// exponent that can arise from multiplication or conjugation.
struct CycloTable {
    phi: usize,
    powers: Vec<Vec<Rat>>,
}

impl CycloTable {
    fn new(n: u64) -> CycloTable {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        // zeta^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1}), Phi_n monic.
        let top: Vec<Rat> = poly[..phi]
            .iter()
            .map(|c| -Rat::from_integer(c.clone()))
            .collect();
        let max_exp = std::cmp::max(n as usize, 2 * phi).max(1);
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(max_exp);
        for e in 0..max_exp {
            if e < phi {
                let mut v = vec![Rat::zero(); phi];
                v[e] = Rat::one();
                powers.push(v);
            } else {
                let prev = &powers[e - 1];
                let carry = prev[phi - 1].clone();
                let mut v = vec![Rat::zero(); phi];
                for j in 1..phi {
                    v[j] = prev[j - 1].clone();
                }
                if !carry.is_zero() {
                    for j in 0..phi {
                        v[j] += &carry * &top[j];
                    }
                }
                powers.push(v);
            }
        }
        CycloTable { phi, powers }
    }
}

static TABLES: Lazy<Mutex<HashMap<u64, Arc<CycloTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn table(n: u64) -> Arc<CycloTable> {
    let mut map = TABLES.lock().unwrap();
    map.entry(n).or_insert_with(|| Arc::new(CycloTable::new(n))).clone()
}

/// Exact element of Q(zeta_n) in canonical reduced form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "CycRepr", try_from = "CycRepr")]
pub struct CycNumber {
    conductor: u64,
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    conductor: u64,
    coeffs: Vec<(String, String)>,
}

impl From<CycNumber> for CycRepr {
    fn from(c: CycNumber) -> CycRepr {
        CycRepr {
            conductor: c.conductor,
            coeffs: c
                .coeffs
                .iter()
                .map(|r| (r.numer().to_string(), r.denom().to_string()))
                .collect(),
        }
    }
}

impl TryFrom<CycRepr> for CycNumber {
    type Error = String;
    fn try_from(r: CycRepr) -> std::result::Result<CycNumber, String> {
        let t = table(r.conductor);
        if r.coeffs.len() != t.phi {
            return Err(format!(
                "conductor {} expects {} coefficients, got {}",
                r.conductor,
                t.phi,
                r.coeffs.len()
            ));
        }
        let mut coeffs = Vec::with_capacity(r.coeffs.len());
        for (num, den) in &r.coeffs {
            let n = BigInt::from_str(num).map_err(|e| e.to_string())?;
            let d = BigInt::from_str(den).map_err(|e| e.to_string())?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            coeffs.push(Rat::new(n, d));
        }
        Ok(CycNumber { conductor: r.conductor, coeffs })
    }
}

impl CycNumber {
    pub fn zero() -> CycNumber {
        CycNumber { conductor: 1, coeffs: vec![Rat::zero()] }
    }

    pub fn one() -> CycNumber {
        CycNumber { conductor: 1, coeffs: vec![Rat::one()] }
    }

    pub fn from_rational(r: Rat) -> CycNumber {
        CycNumber { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_integer(k: i64) -> CycNumber {
        CycNumber::from_rational(Rat::from_integer(BigInt::from(k)))
    }

    /// zeta_n^k with k reduced mod n.
    pub fn root_of_unity(n: u64, k: i64) -> CycNumber {
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as usize;
        let t = table(n);
        CycNumber { conductor: n, coeffs: t.powers[k].clone() }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lift to conductor m (self.conductor must divide m).
    fn lift(&self, m: u64) -> CycNumber {
        if m == self.conductor {
            return self.clone();
        }
        debug_assert!(m % self.conductor == 0);
        let step = (m / self.conductor) as usize;
        let t = table(m);
        let mut coeffs = vec![Rat::zero(); t.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &t.powers[j * step];
            for (out, pc) in coeffs.iter_mut().zip(p.iter()) {
                *out += c * pc;
            }
        }
        CycNumber { conductor: m, coeffs }
    }

    fn lift_pair(&self, other: &CycNumber) -> (CycNumber, CycNumber, u64) {
        let m = lcm(self.conductor, other.conductor);
        (self.lift(m), other.lift(m), m)
    }

    pub fn add(&self, other: &CycNumber) -> CycNumber {
        let (mut a, b, m) = self.lift_pair(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        CycNumber { conductor: m, coeffs: a.coeffs }
    }

    pub fn sub(&self, other: &CycNumber) -> CycNumber {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNumber) -> CycNumber {
        let (a, b, m) = self.lift_pair(other);
        let t = table(m);
        let phi = t.phi;
        // Convolution, then reduction of the high part through the table.
        let mut conv = vec![Rat::zero(); 2 * phi - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                conv[i + j] += ai * bj;
            }
        }
        let mut out = vec![Rat::zero(); phi];
        for (e, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < phi {
                out[e] += c;
            } else {
                for (o, pc) in out.iter_mut().zip(t.powers[e].iter()) {
                    *o += &c * pc;
                }
            }
        }
        CycNumber { conductor: m, coeffs: out }
    }

    pub fn scale(&self, r: &Rat) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycNumber {
        let mut base = self.clone();
        let mut acc = CycNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Complex conjugation: the Galois map zeta_n -> zeta_n^{n-1}.
    pub fn conjugate(&self) -> CycNumber {
        let n = self.conductor;
        if n <= 2 {
            return self.clone();
        }
        let t = table(n);
        let mut out = vec![Rat::zero(); t.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((n as usize) - j) % n as usize;
            for (o, pc) in out.iter_mut().zip(t.powers[e].iter()) {
                *o += c * pc;
            }
        }
        CycNumber { conductor: n, coeffs: out }
    }

    /// The rational value, if this number lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The integer value, if this number is a rational integer.
    pub fn as_rational_integer(&self) -> Result<i64> {
        let r = self
            .as_rational()
            .ok_or_else(|| Error::NotAnInteger(self.to_string()))?;
        if !r.is_integer() {
            return Err(Error::NotAnInteger(self.to_string()));
        }
        let n = r.to_integer();
        i64::try_from(&n).map_err(|_| Error::NotAnInteger(self.to_string()))
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &CycNumber) -> bool {
        let (a, b, _) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && j > 0 {
                String::new()
            } else if (-c).is_one() && j > 0 {
                "-".to_string()
            } else {
                c.to_string()
            };
            let term = match j {
                0 => c.to_string(),
                1 => format!("{}z{}", coeff, self.conductor),
                _ => format!("{}z{}^{}", coeff, self.conductor, j),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u64, k: i64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    #[test]
    fn roots_of_unity_basic() {
        assert_eq!(zeta(1, 0), CycNumber::one());
        assert_eq!(zeta(4, 2), CycNumber::from_integer(-1));
        let sum = zeta(3, 0).add(&zeta(3, 1)).add(&zeta(3, 2));
        assert!(sum.is_zero());
    }

    #[test]
    fn ring_identities() {
        assert_eq!(zeta(3, 1).add(&zeta(3, 2)), CycNumber::from_integer(-1));
        assert_eq!(zeta(5, 2).mul(&zeta(5, 3)), CycNumber::one());
        assert!(zeta(8, 3).mul(&CycNumber::zero()).is_zero());
    }

    #[test]
    fn conjugation() {
        assert_eq!(zeta(8, 1).conjugate(), zeta(8, 7));
        let r = CycNumber::from_rational(Rat::new(BigInt::from(3), BigInt::from(7)));
        assert_eq!(r.conjugate(), r);
        let a = zeta(9, 2).add(&zeta(9, 5).scale(&Rat::new(BigInt::from(1), BigInt::from(2))));
        assert_eq!(a.conjugate().conjugate(), a);
        for k in 0..12 {
            assert_eq!(zeta(12, k).mul(&zeta(12, k).conjugate()), CycNumber::one());
        }
    }

    #[test]
    fn rational_integer_extraction() {
        assert_eq!(CycNumber::from_integer(3).as_rational_integer().unwrap(), 3);
        assert!(zeta(3, 1).as_rational_integer().is_err());
        let x = zeta(3, 1).add(&zeta(3, 2)).add(&CycNumber::from_integer(2));
        assert_eq!(x.as_rational_integer().unwrap(), 1);
    }

    #[test]
    fn cyclotomic_polynomial_vanishes_at_primitive_root() {
        for n in [2u64, 3, 4, 5, 8, 9, 16, 25, 27] {
            let poly = cyclotomic_polynomial(n);
            let z = zeta(n, 1);
            let mut acc = CycNumber::zero();
            for (e, c) in poly.iter().enumerate() {
                let term = z.pow(e as u64).scale(&Rat::from_integer(c.clone()));
                acc = acc.add(&term);
            }
            assert!(acc.is_zero(), "Phi_{}(zeta_{}) != 0", n, n);
        }
    }

    #[test]
    fn prime_power_polynomial_shape() {
        // Phi_{p^a}(x) = sum_{j<p} x^{j p^{a-1}}
        let poly = cyclotomic_polynomial(9);
        let expect: Vec<BigInt> =
            [1, 0, 0, 1, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(poly, expect);
        let poly = cyclotomic_polynomial(8);
        let expect: Vec<BigInt> = [1, 0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(poly, expect);
    }

    #[test]
    fn conductor_lift_round_trip() {
        let a = zeta(3, 1).add(&CycNumber::from_integer(2));
        let lifted = a.lift(9);
        assert_eq!(lifted, a);
        assert_eq!(lifted.add(&CycNumber::zero()), a);
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        // zeta_2 = -1 reconciles with conductor-1 rationals.
        let m1 = zeta(2, 1);
        assert_eq!(m1, CycNumber::from_integer(-1));
        // zeta_4^2 = zeta_2
        assert_eq!(zeta(4, 1).mul(&zeta(4, 1)), zeta(2, 1));
    }

    #[test]
    fn serde_round_trip() {
        let a = zeta(12, 5).add(&zeta(4, 1).scale(&Rat::new(BigInt::from(-2), BigInt::from(3))));
        let json = serde_json::to_string(&a).unwrap();
        let b: CycNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(a, b);
    }
}
