//! Arithmetic in an imaginary quadratic field `M = Q(sqrt D)` and its
//! maximal order: elements, ideals, principal generators, square classes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{kronecker_symbol, norm_form_solutions, rational, rational_sqrt};
use crate::error::{Error, Result};
use crate::forms::artin_vector;
use crate::Rational;

/// `x + y sqrt(D)` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QElement {
    pub d: i64,
    pub x: Rational,
    pub y: Rational,
}

impl QElement {
    pub fn new(d: i64, x: Rational, y: Rational) -> Self {
        QElement { d, x, y }
    }

    pub fn from_ints(d: i64, x: i64, y: i64) -> Self {
        QElement { d, x: rational(x), y: rational(y) }
    }

    pub fn from_rational(d: i64, x: Rational) -> Self {
        QElement { d, x, y: Rational::zero() }
    }

    pub fn zero(d: i64) -> Self {
        Self::from_ints(d, 0, 0)
    }

    pub fn one(d: i64) -> Self {
        Self::from_ints(d, 1, 0)
    }

    /// `sqrt(D)` itself.
    pub fn sqrt_d(d: i64) -> Self {
        Self::from_ints(d, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QElement { d: self.d, x: self.x.clone(), y: -self.y.clone() }
    }

    pub fn norm(&self) -> Rational {
        &self.x * &self.x - rational(self.d) * &self.y * &self.y
    }

    pub fn trace(&self) -> Rational {
        &self.x + &self.x
    }

    /// Integral over `Z`: trace and norm are integers.
    pub fn is_integral(&self) -> bool {
        self.trace().is_integer() && self.norm().is_integer()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QElement { d: self.d, x: &self.x * r, y: &self.y * r }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        let n = self.norm();
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn div(&self, other: &QElement) -> Result<Self> {
        check_same(self.d, other.d)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QElement::one(self.d);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root in `M`, if `self` is a square.
    pub fn sqrt(&self) -> Option<QElement> {
        let d = rational(self.d);
        if self.y.is_zero() {
            if let Some(r) = rational_sqrt(&self.x) {
                return Some(QElement::from_rational(self.d, r));
            }
            // (v sqrt D)^2 = v^2 D
            return rational_sqrt(&(&self.x / &d)).map(|v| QElement::new(self.d, Rational::zero(), v));
        }
        // (u + v sqrt D)^2 = x + y sqrt D with u v != 0: u^2 = (x +- sqrt N) / 2
        let s = rational_sqrt(&self.norm())?;
        let two = rational(2);
        for cand in [(&self.x + &s) / &two, (&self.x - &s) / &two] {
            if let Some(u) = rational_sqrt(&cand) {
                if u.is_zero() {
                    continue;
                }
                let v = &self.y / (&two * &u);
                let r = QElement::new(self.d, u, v);
                if &(&r * &r) == self {
                    return Some(r);
                }
            }
        }
        None
    }

    /// Coordinates over the integral basis `{1, omega}`.
    pub fn integral_coords(&self) -> Option<(BigInt, BigInt)> {
        let par = rational(self.d.rem_euclid(2));
        let v = &self.y + &self.y;
        let u = &self.x - &self.y * &par;
        if u.is_integer() && v.is_integer() {
            Some((u.to_integer(), v.to_integer()))
        } else {
            None
        }
    }

    /// `u + v omega` with `omega = (D mod 2 + sqrt D) / 2`.
    pub fn from_coords(d: i64, u: i128, v: i128) -> Self {
        // u + v (par + sqrt D) / 2
        let par = d.rem_euclid(2) as i128;
        let x = Rational::new(BigInt::from(2 * u + v * par), BigInt::from(2));
        let y = Rational::new(BigInt::from(v), BigInt::from(2));
        QElement { d, x, y }
    }
}

fn check_same(a: i64, b: i64) -> Result<()> {
    if a == b { Ok(()) } else { Err(Error::FieldMismatch) }
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
    }
}

impl Add for &QElement {
    type Output = QElement;
    fn add(self, rhs: &QElement) -> QElement {
        assert_eq!(self.d, rhs.d, "field tags differ");
        QElement { d: self.d, x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub for &QElement {
    type Output = QElement;
    fn sub(self, rhs: &QElement) -> QElement {
        assert_eq!(self.d, rhs.d, "field tags differ");
        QElement { d: self.d, x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Mul for &QElement {
    type Output = QElement;
    fn mul(self, rhs: &QElement) -> QElement {
        assert_eq!(self.d, rhs.d, "field tags differ");
        let d = rational(self.d);
        QElement {
            d: self.d,
            x: &self.x * &rhs.x + d * &self.y * &rhs.y,
            y: &self.x * &rhs.y + &self.y * &rhs.x,
        }
    }
}

impl Neg for &QElement {
    type Output = QElement;
    fn neg(self) -> QElement {
        QElement { d: self.d, x: -self.x.clone(), y: -self.y.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

pub fn splitting_type(d: i64, p: u64) -> Result<SplittingType> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(match kronecker_symbol(d, p as i64)? {
        1 => SplittingType::Split,
        -1 => SplittingType::Inert,
        _ => SplittingType::Ramified,
    })
}

/// Nonzero ideal of the maximal order, as the lattice `a Z + (b + c omega) Z`
/// in Hermite normal form (`a, c > 0`, `0 <= b < a`), where
/// `omega = (D mod 2 + sqrt D) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QIdeal {
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QIdeal {
    /// HNF of the `Z`-span of integral vectors `(u, v)`; must have full rank.
    fn from_z_span(d: i64, vecs: &[(i128, i128)]) -> Result<Self> {
        let mut pivot: Option<(i128, i128)> = None;
        let mut first_col = 0i128;
        for &(u, v) in vecs {
            if v == 0 {
                first_col = first_col.gcd(&u);
                continue;
            }
            match pivot {
                None => pivot = Some((u, v)),
                Some((pu, pv)) => {
                    let g = pv.extended_gcd(&v);
                    let merged = (g.x * pu + g.y * u, g.gcd);
                    let killed = (v / g.gcd) * pu - (pv / g.gcd) * u;
                    first_col = first_col.gcd(&killed);
                    pivot = Some(merged);
                }
            }
        }
        let (mut pu, mut pv) = pivot.ok_or_else(|| Error::Internal("ideal lattice is not of full rank".into()))?;
        if pv < 0 {
            pu = -pu;
            pv = -pv;
        }
        if first_col == 0 {
            return Err(Error::Internal("ideal lattice is not of full rank".into()));
        }
        let a = first_col.abs();
        let b = pu.rem_euclid(a);
        let to_i64 = |z: i128| i64::try_from(z).map_err(|_| Error::Internal("ideal entries overflow".into()));
        Ok(QIdeal { d, a: to_i64(a)?, b: to_i64(b)?, c: to_i64(pv)? })
    }

    fn coords(alpha: &QElement) -> Result<(i128, i128)> {
        let (u, v) = alpha.integral_coords().ok_or_else(|| Error::Internal(format!("{alpha} is not integral")))?;
        match (u.to_i128(), v.to_i128()) {
            (Some(u), Some(v)) => Ok((u, v)),
            _ => Err(Error::Internal("coordinates overflow".into())),
        }
    }

    /// `Z`-basis of the ideal.
    pub fn basis(&self) -> [QElement; 2] {
        [
            QElement::from_coords(self.d, self.a as i128, 0),
            QElement::from_coords(self.d, self.b as i128, self.c as i128),
        ]
    }

    /// The ideal generated by integral elements.
    pub fn generated_by(d: i64, gens: &[QElement]) -> Result<Self> {
        let omega = QElement::from_coords(d, 0, 1);
        let mut vecs = Vec::new();
        for g in gens {
            check_same(d, g.d)?;
            vecs.push(Self::coords(g)?);
            vecs.push(Self::coords(&(g * &omega))?);
        }
        Self::from_z_span(d, &vecs)
    }

    pub fn principal(alpha: &QElement) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::Zero);
        }
        Self::generated_by(alpha.d, std::slice::from_ref(alpha))
    }

    pub fn unit(d: i64) -> Self {
        QIdeal { d, a: 1, b: 0, c: 1 }
    }

    pub fn norm(&self) -> u64 {
        (self.a * self.c) as u64
    }

    pub fn contains(&self, alpha: &QElement) -> bool {
        if alpha.d != self.d {
            return false;
        }
        let Ok((u, v)) = Self::coords(alpha) else { return false };
        if v % self.c as i128 != 0 {
            return false;
        }
        let k = v / self.c as i128;
        (u - k * self.b as i128) % self.a as i128 == 0
    }

    pub fn mul(&self, other: &QIdeal) -> Result<QIdeal> {
        check_same(self.d, other.d)?;
        let mut vecs = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                vecs.push(Self::coords(&(&x * &y))?);
            }
        }
        Self::from_z_span(self.d, &vecs)
    }

    pub fn pow(&self, e: u32) -> Result<QIdeal> {
        let mut acc = QIdeal::unit(self.d);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn conj(&self) -> QIdeal {
        let vecs: Vec<(i128, i128)> =
            self.basis().iter().map(|g| Self::coords(&g.conj()).expect("conjugate of integral element")).collect();
        Self::from_z_span(self.d, &vecs).expect("conjugate lattice has full rank")
    }

    /// Generator of a principal ideal, normalized to `y > 0`, or `x > 0`
    /// when `y = 0`. `None` if the ideal is not principal.
    pub fn principal_generator(&self) -> Result<Option<QElement>> {
        if self.d >= -4 {
            return Err(Error::Unsupported(format!("unit group of Q(sqrt {}) is larger than +-1", self.d)));
        }
        let n = self.norm();
        for (x, y) in norm_form_solutions(self.d.unsigned_abs(), 4 * n) {
            let xs: &[i64] = if x == 0 { &[0] } else { &[x as i64, -(x as i64)] };
            for &sx in xs {
                let alpha = QElement::new(self.d, Rational::new(sx.into(), 2.into()), Rational::new((y as i64).into(), 2.into()));
                if !alpha.is_integral() || !self.contains(&alpha) {
                    continue;
                }
                return Ok(Some(alpha));
            }
        }
        Ok(None)
    }

    pub fn is_principal(&self) -> Result<bool> {
        Ok(self.principal_generator()?.is_some())
    }
}

impl fmt::Display for QIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [g0, g1] = self.basis();
        write!(f, "<{g0}, {g1}>")
    }
}

/// The primes of `M` above `p`: for split `p` both conjugates, for
/// ramified `p` the unique `P` with `P^2 = (p)`, for inert `p` the ideal `(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimesAbove {
    pub kind: SplittingType,
    pub prime: QIdeal,
    pub conjugate: Option<QIdeal>,
}

pub fn prime_above(d: i64, p: u64) -> Result<PrimesAbove> {
    let kind = splitting_type(d, p)?;
    if kind == SplittingType::Inert {
        let prime = QIdeal::principal(&QElement::from_ints(d, p as i64, 0))?;
        return Ok(PrimesAbove { kind, prime, conjugate: None });
    }
    let p_i = p as i64;
    let b = (0..2 * p_i)
        .find(|b| (b * b - d).rem_euclid(4 * p_i) == 0)
        .ok_or_else(|| Error::Internal(format!("no square root of {d} mod {}", 4 * p)))?;
    // p Z + (b + sqrt D)/2 Z
    let beta = QElement::new(d, Rational::new(b.into(), 2.into()), Rational::new(1.into(), 2.into()));
    let prime = QIdeal::generated_by(d, &[QElement::from_ints(d, p_i, 0), beta])?;
    let conjugate = (kind == SplittingType::Split).then(|| prime.conj());
    Ok(PrimesAbove { kind, prime, conjugate })
}

/// A class in `M^x / (M^x)^2`, optionally modulo `-1` as well.
#[derive(Debug, Clone)]
pub struct SquareClass {
    pub rep: QElement,
    pub modulo_sign: bool,
    /// Squarefree integer in the class when the representative is rational.
    pub rational_tag: Option<i64>,
}

impl SquareClass {
    pub fn new(rep: QElement, modulo_sign: bool) -> Result<Self> {
        if rep.is_zero() {
            return Err(Error::Zero);
        }
        let rational_tag = if rep.is_rational() { Some(crate::arith::squarefree_part(&rep.x)?) } else { None };
        Ok(SquareClass { rep, modulo_sign, rational_tag })
    }

    pub fn same_class(&self, other: &SquareClass) -> bool {
        if self.rep.d != other.rep.d {
            return false;
        }
        let prod = &self.rep * &other.rep;
        prod.sqrt().is_some() || ((self.modulo_sign || other.modulo_sign) && (-&prod).sqrt().is_some())
    }
}

/// Whether `alpha / target` (or `-alpha / target` when `allow_sign`) is a
/// square in `M^x`.
pub fn square_class_test(alpha: &QElement, target: &Rational, allow_sign: bool) -> Result<bool> {
    if target.is_zero() || alpha.is_zero() {
        return Err(Error::Zero);
    }
    let beta = alpha.scale(target);
    Ok(beta.sqrt().is_some() || (allow_sign && (-&beta).sqrt().is_some()))
}

/// Frobenius sign vector on the genus field of a degree-1 unramified prime.
pub fn frobenius_class(prime: &QIdeal) -> Result<[i8; 3]> {
    let p = prime.norm();
    if !crate::arith::is_prime(p) {
        return Err(Error::WrongSplitting { disc: prime.d, p, kind: "not of degree one" });
    }
    artin_vector(prime.d, p)
}

/// `(p)` as an element, for convenience.
pub fn rational_element(d: i64, n: i64) -> QElement {
    QElement::from_ints(d, n, 0)
}

/// `alpha` is a unit of the maximal order.
pub fn is_unit(alpha: &QElement) -> bool {
    alpha.is_integral() && alpha.norm().abs().is_one()
}
