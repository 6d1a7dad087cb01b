//! Real numbers in cyclotomic fields.
//!
//! An element of `Q(ζ_m)`, `ζ_m = exp(2πi/m)`, is stored in the power basis
//! `1, ζ, …, ζ^(φ(m)-1)` as an integer coefficient vector over a common
//! positive denominator, reduced modulo the cyclotomic polynomial `Φ_m`.
//! That reduction is canonical, so the zero test is a coefficient check.
//!
//! Only real elements are supported (all public constructors produce real
//! values and the field operations preserve realness). The sign of a nonzero
//! real element is found by evaluating `Σ c_j cos(2πj/m)` with fixed-point
//! interval arithmetic, doubling the precision from 64 bits until the
//! enclosure excludes zero.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fixed::cos_table;
use super::{Rational, Scalar, ScalarKind};

/// Precomputed data for `Q(ζ_m)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// Nonzero low coefficients `(i, c_i)` of the monic `Φ_m`.
    modulus_tail: Vec<(usize, i64)>,
    /// `ζ^e` reduced into the power basis, for `e = 0..m`, sparse.
    powers: Vec<Vec<(usize, i64)>>,
    /// Units `k` with `1 <= k <= m/2`; `x ↦ σ_k(x)` ranges over the Galois
    /// group of the real subfield.
    real_automorphisms: Vec<u32>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both little-endian, den monic.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Integer coefficients of `Φ_m`, little-endian.
fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    // x^m - 1 = Π_{d | m} Φ_d
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

impl CyclotomicField {
    fn build(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi_poly = cyclotomic_polynomial(order);
        let degree = phi_poly.len() - 1;
        let modulus_tail: Vec<(usize, i64)> = phi_poly[..degree]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();

        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..order {
            powers.push(
                current
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect(),
            );
            // multiply by x and reduce
            let top = current[degree - 1];
            for i in (1..degree).rev() {
                current[i] = current[i - 1];
            }
            current[0] = 0;
            if top != 0 {
                for &(i, c) in &modulus_tail {
                    current[i] -= top * c;
                }
            }
        }

        let real_automorphisms = (1..=order.max(2) / 2)
            .filter(|&k| k.gcd(&order) == 1)
            .collect::<Vec<_>>();
        let real_automorphisms = if real_automorphisms.is_empty() {
            vec![1]
        } else {
            real_automorphisms
        };

        CyclotomicField {
            order,
            degree,
            modulus_tail,
            powers,
            real_automorphisms,
        }
    }

    /// Shared field data for order `m`.
    pub fn get(order: u32) -> Arc<CyclotomicField> {
        static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(f) = fields.read().unwrap().get(&order) {
            return f.clone();
        }
        let field = Arc::new(CyclotomicField::build(order));
        fields
            .write()
            .unwrap()
            .entry(order)
            .or_insert(field)
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(m)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    fn reduce(&self, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        for k in (d..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[k]);
            for &(i, m) in &self.modulus_tail {
                coeffs[k - d + i] -= &c * m;
            }
        }
        coeffs.truncate(d);
        coeffs.resize(d, BigInt::zero());
        coeffs
    }

    /// Accumulates `c * ζ^e` into `acc`.
    fn add_power(&self, acc: &mut [BigInt], c: &BigInt, e: u64) {
        for &(i, m) in &self.powers[(e % self.order as u64) as usize] {
            acc[i] += c * m;
        }
    }
}

/// A real element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn normalized(field: Arc<CyclotomicField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            return Cyclotomic {
                field,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        Cyclotomic { field, num, den }
    }

    fn constant(q: &Rational) -> Self {
        Cyclotomic {
            field: CyclotomicField::get(1),
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        }
    }

    /// Builds `Σ coeffs[j] ζ_m^j`. Fails if there are more than `φ(m)`
    /// coefficients or the value is not real.
    pub fn from_coefficients(order: u32, coeffs: &[Rational]) -> Option<Self> {
        let field = CyclotomicField::get(order);
        if coeffs.len() > field.degree {
            return None;
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        num.resize(field.degree, BigInt::zero());
        let value = Cyclotomic::normalized(field, num, den);
        value.is_real().then_some(value)
    }

    /// `cos(2πe/m)` as an element of `Q(ζ_m)`.
    pub fn cos_turn(order: u32, e: i64) -> Self {
        let field = CyclotomicField::get(order);
        let m = order as i64;
        let mut num = vec![BigInt::zero(); field.degree];
        let one = BigInt::one();
        field.add_power(&mut num, &one, e.rem_euclid(m) as u64);
        field.add_power(&mut num, &one, (-e).rem_euclid(m) as u64);
        Cyclotomic::normalized(field, num, BigInt::from(2))
    }

    /// `sin(2πe/m)`; requires `4 | m` so that the value is `cos(2π(e - m/4)/m)`.
    pub fn sin_turn(order: u32, e: i64) -> Self {
        assert!(order.is_multiple_of(4), "sin_turn needs an order divisible by 4");
        Cyclotomic::cos_turn(order, e - order as i64 / 4)
    }

    /// Order `m` of the field the value is stored in.
    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Power-basis coefficients.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Coefficients after embedding into `Q(ζ_order)`; `None` if the stored
    /// field is not a subfield of it.
    pub fn coefficients_in(&self, order: u32) -> Option<Vec<Rational>> {
        if !order.is_multiple_of(self.field.order) {
            return None;
        }
        let target = CyclotomicField::get(order);
        Some(self.lift(&target).coefficients())
    }

    /// `[c0 c1 … ]` in the power basis of `Q(ζ_order)`.
    pub fn to_bracket_string(&self, order: u32) -> Option<String> {
        let coeffs = self.coefficients_in(order)?;
        let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        Some(format!("[{}]", parts.join(" ")))
    }

    fn is_rational(&self) -> bool {
        self.field.degree == 1
    }

    fn as_rational(&self) -> Rational {
        debug_assert!(self.is_rational());
        BigRational::new(self.num[0].clone(), self.den.clone())
    }

    fn lift(&self, target: &Arc<CyclotomicField>) -> Cyclotomic {
        if Arc::ptr_eq(&self.field, target) {
            return self.clone();
        }
        debug_assert_eq!(target.order % self.field.order, 0);
        let mut num = vec![BigInt::zero(); target.degree];
        if self.is_rational() {
            // order 1 or 2: the single coefficient is the value
            num[0] = self.num[0].clone();
        } else {
            let step = (target.order / self.field.order) as u64;
            for (j, c) in self.num.iter().enumerate() {
                if !c.is_zero() {
                    target.add_power(&mut num, c, j as u64 * step);
                }
            }
        }
        Cyclotomic::normalized(target.clone(), num, self.den.clone())
    }

    fn common_field(&self, other: &Cyclotomic) -> Arc<CyclotomicField> {
        if Arc::ptr_eq(&self.field, &other.field) {
            return self.field.clone();
        }
        let l = self.field.order.lcm(&other.field.order);
        CyclotomicField::get(l)
    }

    fn scale(&self, q: &Rational) -> Cyclotomic {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Cyclotomic::normalized(self.field.clone(), num, &self.den * q.denom())
    }

    /// Galois conjugate `σ_k: ζ ↦ ζ^k`.
    fn conjugate(&self, k: u32) -> Cyclotomic {
        if k == 1 || self.is_rational() {
            return self.clone();
        }
        let field = &self.field;
        let mut num = vec![BigInt::zero(); field.degree];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                field.add_power(&mut num, c, j as u64 * k as u64);
            }
        }
        Cyclotomic::normalized(field.clone(), num, self.den.clone())
    }

    /// Exact realness test: the value equals its complex conjugate.
    pub fn is_real(&self) -> bool {
        if self.is_rational() {
            return true;
        }
        let conj = self.conjugate(self.field.order - 1);
        conj.num == self.num && conj.den == self.den
    }

    fn same_value(&self, other: &Cyclotomic) -> bool {
        if Arc::ptr_eq(&self.field, &other.field) {
            return self.num == other.num && self.den == other.den;
        }
        let f = self.common_field(other);
        let a = self.lift(&f);
        let b = other.lift(&f);
        a.num == b.num && a.den == b.den
    }

    fn sign_by_intervals(&self) -> i8 {
        let m = self.field.order;
        let d = self.field.degree;
        let mut prec = 64u32;
        loop {
            let table = cos_table(m, d, prec);
            let mut lo = BigInt::zero();
            let mut hi = BigInt::zero();
            for (c, (clo, chi)) in self.num.iter().zip(table.iter()) {
                if c.is_zero() {
                    continue;
                }
                if c.is_positive() {
                    lo += c * clo;
                    hi += c * chi;
                } else {
                    lo += c * chi;
                    hi += c * clo;
                }
            }
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            assert!(
                prec < (1 << 16),
                "sign undecided at {prec} bits; value is not real"
            );
            prec *= 2;
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self} in Q(ζ_{}) ≈ {})", self.order(), self.to_f64())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

impl Scalar for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::constant(&<Rational as Zero>::zero())
    }

    fn one() -> Self {
        Cyclotomic::constant(&<Rational as One>::one())
    }

    fn from_rational(q: &Rational) -> Self {
        Cyclotomic::constant(q)
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn signum(&self) -> i8 {
        if Scalar::is_zero(self) {
            0
        } else if self.is_rational() {
            if self.num[0].is_positive() {
                1
            } else {
                -1
            }
        } else {
            self.sign_by_intervals()
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        if Scalar::is_zero(rhs) {
            return self.clone();
        }
        if Scalar::is_zero(self) {
            return rhs.clone();
        }
        let field = self.common_field(rhs);
        let a = self.lift(&field);
        let b = rhs.lift(&field);
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return Cyclotomic::normalized(field, num, a.den);
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Cyclotomic::normalized(field, num, &a.den * &b.den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if Scalar::is_zero(self) || Scalar::is_zero(rhs) {
            return Scalar::zero();
        }
        if rhs.is_rational() {
            return self.scale(&rhs.as_rational());
        }
        if self.is_rational() {
            return rhs.scale(&self.as_rational());
        }
        let field = self.common_field(rhs);
        let a = self.lift(&field);
        let b = rhs.lift(&field);
        let d = field.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        let b_nz: Vec<(usize, &BigInt)> =
            b.num.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &b_nz {
                prod[i + j] += x * y;
            }
        }
        let num = field.reduce(prod);
        Cyclotomic::normalized(field, num, a.den * b.den)
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    fn inv(&self) -> Self {
        assert!(!Scalar::is_zero(self), "division by zero");
        if self.is_rational() {
            return Cyclotomic::constant(&self.as_rational().recip());
        }
        // x⁻¹ = Π_{other conjugates} / N(x), over the distinct conjugates of x
        // under the Galois group of the real subfield.
        let mut orbit: Vec<Cyclotomic> = vec![self.clone()];
        for &k in &self.field.real_automorphisms[1..] {
            let c = self.conjugate(k);
            if !orbit.iter().any(|o| o.num == c.num && o.den == c.den) {
                orbit.push(c);
            }
        }
        let others = orbit[1..]
            .iter()
            .fold(Cyclotomic::one(), |acc, c| acc.mul(c));
        let norm = self.mul(&others);
        debug_assert!(norm.num[1..].iter().all(Zero::is_zero), "norm not rational");
        let norm = BigRational::new(norm.num[0].clone(), norm.den.clone());
        others.scale(&norm.recip())
    }

    fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    fn to_f64(&self) -> f64 {
        let m = self.field.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        self.num
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.to_f64().unwrap_or(f64::NAN) * (2.0 * std::f64::consts::PI * j as f64 / m).cos()
            })
            .sum::<f64>()
            / den
    }

    fn to_exact_string(&self) -> String {
        self.to_string()
    }

    fn to_exact_string_in(&self, kind: ScalarKind) -> String {
        match kind {
            ScalarKind::Cyclotomic(m) => self
                .to_bracket_string(m)
                .unwrap_or_else(|| self.to_string()),
            ScalarKind::Rational => self.to_string(),
        }
    }

    fn kind(&self) -> ScalarKind {
        ScalarKind::Cyclotomic(self.field.order)
    }
}
