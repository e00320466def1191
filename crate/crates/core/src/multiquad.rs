//! Multiquadratic fields `Q(sqrt m_1, ..., sqrt m_r)`, `r <= 3`, and relative
//! quadratic extensions `k = H(sqrt delta)` described by their gamma table
//! and sign cocycle.
//!
//! Basis vectors and Galois elements are both indexed by bitmasks: basis
//! vector `e` is `prod_{t in e} sqrt m_t`, and Galois element `s` negates
//! every `sqrt m_t` with `t in s`, so it scales basis vector `e` by
//! `(-1)^{|e & s|}`.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::arith::{factorize, rational, rational_sqrt};
use crate::error::{Error, Result};
use crate::Rational;

pub type GalElem = u8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiQuadField {
    pub radicands: Vec<i64>,
}

impl MultiQuadField {
    pub fn new(radicands: Vec<i64>) -> Result<Arc<Self>> {
        if radicands.is_empty() || radicands.len() > 3 {
            return Err(Error::Unsupported(format!("rank {} multiquadratic field", radicands.len())));
        }
        // independence modulo squares
        for mask in 1u8..(1 << radicands.len()) {
            let p = radicand_product(&radicands, mask);
            if p == 0 || rational_sqrt(&rational(p)).is_some() {
                return Err(Error::Unsupported(format!("radicands {radicands:?} are dependent modulo squares")));
            }
        }
        Ok(Arc::new(MultiQuadField { radicands }))
    }

    pub fn rank(&self) -> usize {
        self.radicands.len()
    }

    pub fn degree(&self) -> usize {
        1 << self.rank()
    }

    pub fn galois_group(&self) -> impl Iterator<Item = GalElem> {
        0..self.degree() as GalElem
    }

    /// Product of the radicands selected by `mask`.
    pub fn radicand(&self, mask: u8) -> i64 {
        radicand_product(&self.radicands, mask)
    }

    /// Galois elements fixing `sqrt(radicand(mask))`.
    pub fn fixing_group(&self, mask: u8) -> Vec<GalElem> {
        self.galois_group().filter(|g| (g & mask).count_ones() % 2 == 0).collect()
    }
}

fn radicand_product(ms: &[i64], mask: u8) -> i64 {
    ms.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, m)| *m).product()
}

#[inline]
fn sign(e: usize, s: GalElem) -> bool {
    (e as u32 & s as u32).count_ones() % 2 == 1
}

/// Product of basis vectors `i` and `j`: `(coefficient, index)`.
fn basis_mul(ms: &[i64], i: usize, j: usize) -> (i64, usize) {
    (radicand_product(ms, (i & j) as u8), i ^ j)
}

fn mul_coords(ms: &[i64], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    let mut z = vec![Rational::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let (c, k) = basis_mul(ms, i, j);
            z[k] += xi * yj * rational(c);
        }
    }
    z
}

fn act_coords(s: GalElem, x: &[Rational]) -> Vec<Rational> {
    x.iter().enumerate().map(|(e, c)| if sign(e, s) { -c.clone() } else { c.clone() }).collect()
}

fn is_zero_coords(x: &[Rational]) -> bool {
    x.iter().all(Zero::is_zero)
}

fn inv_coords(ms: &[i64], x: &[Rational]) -> Option<Vec<Rational>> {
    if is_zero_coords(x) {
        return None;
    }
    let n = x.len();
    let mut num = vec![Rational::zero(); n];
    num[0] = rational(1);
    for s in 1..n as GalElem {
        num = mul_coords(ms, &num, &act_coords(s, x));
    }
    let norm = mul_coords(ms, &num, x)[0].clone();
    Some(num.into_iter().map(|c| c / &norm).collect())
}

/// Square root by descent: `beta = A + B sqrt m` over the subfield without
/// the top radicand, `gamma = u + v sqrt m`.
fn sqrt_coords(ms: &[i64], beta: &[Rational]) -> Option<Vec<Rational>> {
    if ms.is_empty() {
        return rational_sqrt(&beta[0]).map(|r| vec![r]);
    }
    let half = beta.len() / 2;
    let sub = &ms[..ms.len() - 1];
    let m = rational(ms[ms.len() - 1]);
    let a = &beta[..half];
    let b = &beta[half..];
    let join = |u: Vec<Rational>, v: Vec<Rational>| -> Vec<Rational> { u.into_iter().chain(v).collect() };
    let zero = vec![Rational::zero(); half];

    let candidate = if is_zero_coords(b) {
        if let Some(u) = sqrt_coords(sub, a) {
            Some(join(u, zero))
        } else {
            let a_over_m: Vec<Rational> = a.iter().map(|c| c / &m).collect();
            sqrt_coords(sub, &a_over_m).map(|v| join(zero, v))
        }
    } else {
        // u^2 + m v^2 = A, 2 u v = B, so u^2 = (A +- sqrt(A^2 - m B^2)) / 2
        let a2 = mul_coords(sub, a, a);
        let b2 = mul_coords(sub, b, b);
        let norm: Vec<Rational> = a2.iter().zip(&b2).map(|(x, y)| x - &m * y).collect();
        let n = sqrt_coords(sub, &norm)?;
        let two = rational(2);
        let mut found = None;
        for sgn in [1i64, -1] {
            let half_sum: Vec<Rational> = a.iter().zip(&n).map(|(x, y)| (x + y * rational(sgn)) / &two).collect();
            if is_zero_coords(&half_sum) {
                continue;
            }
            let Some(u) = sqrt_coords(sub, &half_sum) else { continue };
            let Some(u_inv) = inv_coords(sub, &u) else { continue };
            let v: Vec<Rational> = mul_coords(sub, b, &u_inv).into_iter().map(|c| c / &two).collect();
            found = Some(join(u, v));
            break;
        }
        found
    }?;
    (mul_coords(ms, &candidate, &candidate) == beta).then_some(candidate)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MQElement {
    pub field: Arc<MultiQuadField>,
    pub coords: Vec<Rational>,
}

impl MQElement {
    pub fn new(field: &Arc<MultiQuadField>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::Internal(format!("expected {} coordinates, got {}", field.degree(), coords.len())));
        }
        Ok(MQElement { field: field.clone(), coords })
    }

    pub fn from_rational(field: &Arc<MultiQuadField>, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = r;
        MQElement { field: field.clone(), coords }
    }

    pub fn one(field: &Arc<MultiQuadField>) -> Self {
        Self::from_rational(field, rational(1))
    }

    /// `r * sqrt(radicand(mask))`.
    pub fn monomial(field: &Arc<MultiQuadField>, mask: u8, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[mask as usize] = r;
        MQElement { field: field.clone(), coords }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_coords(&self.coords)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        is_zero_coords(&self.coords[1..]).then(|| self.coords[0].clone())
    }

    fn check(&self, other: &MQElement) -> Result<()> {
        if self.field == other.field { Ok(()) } else { Err(Error::FieldMismatch) }
    }

    pub fn add(&self, other: &MQElement) -> Result<MQElement> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(MQElement { field: self.field.clone(), coords })
    }

    pub fn sub(&self, other: &MQElement) -> Result<MQElement> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(MQElement { field: self.field.clone(), coords })
    }

    pub fn neg(&self) -> MQElement {
        MQElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &MQElement) -> Result<MQElement> {
        self.check(other)?;
        Ok(MQElement { field: self.field.clone(), coords: mul_coords(&self.field.radicands, &self.coords, &other.coords) })
    }

    pub fn scale(&self, r: &Rational) -> MQElement {
        MQElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn inv(&self) -> Result<MQElement> {
        let coords = inv_coords(&self.field.radicands, &self.coords).ok_or(Error::Zero)?;
        Ok(MQElement { field: self.field.clone(), coords })
    }

    pub fn div(&self, other: &MQElement) -> Result<MQElement> {
        self.mul(&other.inv()?)
    }

    pub fn act(&self, s: GalElem) -> MQElement {
        MQElement { field: self.field.clone(), coords: act_coords(s, &self.coords) }
    }

    /// Norm from `H` to `Q`.
    pub fn norm(&self) -> Rational {
        let mut acc = MQElement::one(&self.field);
        for s in self.field.galois_group() {
            acc = acc.mul(&self.act(s)).expect("same field");
        }
        acc.coords[0].clone()
    }

    /// Product of the conjugates under a subgroup (the norm to its fixed field).
    pub fn relative_norm(&self, subgroup: &[GalElem]) -> MQElement {
        let mut acc = MQElement::one(&self.field);
        for &s in subgroup {
            acc = acc.mul(&self.act(s)).expect("same field");
        }
        acc
    }

    /// Square root in `H`, normalized so the first nonzero coordinate is positive.
    pub fn sqrt(&self) -> Option<MQElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut coords = sqrt_coords(&self.field.radicands, &self.coords)?;
        if coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            coords = coords.into_iter().map(|c| -c).collect();
        }
        Some(MQElement { field: self.field.clone(), coords })
    }
}

impl fmt::Display for MQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e == 0 {
                terms.push(c.to_string());
            } else {
                terms.push(format!("{c}*sqrt({})", self.field.radicand(e as u8)));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Where `delta` came from in the search: `u + v sqrt(radicand(subfield))`,
/// plus `w sqrt(radicand(extra_mask))` in the biquadratic fallback.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaSpec {
    pub subfield: u8,
    pub u: i64,
    pub v: i64,
    pub extra: Option<(u8, i64)>,
}

impl DeltaSpec {
    pub fn element(&self, field: &Arc<MultiQuadField>) -> MQElement {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = rational(self.u);
        coords[self.subfield as usize] = rational(self.v);
        if let Some((mask, w)) = self.extra {
            coords[mask as usize] = rational(w);
        }
        MQElement { field: field.clone(), coords }
    }
}

/// `k = H(sqrt delta)`, Galois over `Q`, recorded through `gamma_s` with
/// `s(delta) = delta * gamma_s^2` and the cocycle
/// `c(s, t) = gamma_s * s(gamma_t) / gamma_{st}` in `{+1, -1}`.
#[derive(Debug, Clone)]
pub struct RelQuadExt {
    pub field: Arc<MultiQuadField>,
    pub delta: MQElement,
    pub spec: Option<DeltaSpec>,
    pub gamma: Vec<MQElement>,
    pub cocycle: Vec<Vec<i8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GalStructure {
    C4,
    C2xC2,
}

impl fmt::Display for GalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalStructure::C4 => write!(f, "C4"),
            GalStructure::C2xC2 => write!(f, "C2 x C2"),
        }
    }
}

impl RelQuadExt {
    /// `None` when some `s(delta)/delta` is not a square in `H`
    /// (then `k/Q` is not Galois).
    pub fn new(delta: MQElement) -> Result<Option<Self>> {
        if delta.is_zero() {
            return Err(Error::Zero);
        }
        let field = delta.field.clone();
        let delta_inv = delta.inv()?;
        let mut gamma = Vec::with_capacity(field.degree());
        for s in field.galois_group() {
            let ratio = delta.act(s).mul(&delta_inv)?;
            match ratio.sqrt() {
                Some(g) => gamma.push(g),
                None => return Ok(None),
            }
        }
        let cocycle = cocycle_from_gamma(&gamma)?;
        Ok(Some(RelQuadExt { field, delta, spec: None, gamma, cocycle }))
    }

    pub fn c(&self, s: GalElem, t: GalElem) -> i8 {
        self.cocycle[s as usize][t as usize]
    }

    /// `c(s, t) = c(t, s)` on the subgroup, i.e. its preimage in `Gal(k/Q)`
    /// is abelian.
    pub fn is_symmetric_on(&self, subgroup: &[GalElem]) -> bool {
        subgroup.iter().all(|&s| subgroup.iter().all(|&t| self.c(s, t) == self.c(t, s)))
    }

    /// Structure of `Gal(k/L)` where `Gal(H/L) = {1, s}`.
    pub fn gal_structure_over_l(&self, s: GalElem) -> Result<GalStructure> {
        if s == 0 || s as usize >= self.field.degree() {
            return Err(Error::Unsupported(format!("{s} is not a nontrivial Galois element")));
        }
        let g = &self.gamma[s as usize];
        let n = g.mul(&g.act(s))?.as_rational().ok_or_else(|| Error::Internal("relative norm of gamma is not rational".into()))?;
        if n == rational(1) {
            Ok(GalStructure::C2xC2)
        } else if n == rational(-1) {
            Ok(GalStructure::C4)
        } else {
            Err(Error::Internal(format!("relative norm of gamma is {n}, not +-1")))
        }
    }

    /// Whether `k/F` is abelian for `F = Q(sqrt(radicand(f_mask)))`.
    pub fn is_abelian_over(&self, f_mask: u8) -> Result<bool> {
        if f_mask == 0 || f_mask as usize >= self.field.degree() {
            return Err(Error::Unsupported(format!("mask {f_mask} is not a quadratic subfield")));
        }
        Ok(self.is_symmetric_on(&self.field.fixing_group(f_mask)))
    }

    /// Primes dividing `2 * N_{H/Q}(delta)` (numerator and denominator).
    pub fn support(&self) -> Vec<u64> {
        let n = self.delta.norm();
        let mut ps: Vec<u64> = vec![2];
        for part in [n.numer(), n.denom()] {
            let v: u64 = num_traits::ToPrimitive::to_u64(&part.abs()).unwrap_or(0);
            if v > 1 {
                ps.extend(factorize(v).into_iter().map(|(p, _)| p));
            }
        }
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

fn cocycle_from_gamma(gamma: &[MQElement]) -> Result<Vec<Vec<i8>>> {
    let n = gamma.len();
    let inv: Vec<MQElement> = gamma.iter().map(|g| g.inv()).collect::<Result<_>>()?;
    let mut c = vec![vec![0i8; n]; n];
    for s in 0..n {
        for t in 0..n {
            let v = gamma[s].mul(&gamma[t].act(s as GalElem))?.mul(&inv[s ^ t])?;
            c[s][t] = match v.as_rational() {
                Some(r) if r == rational(1) => 1,
                Some(r) if r == rational(-1) => -1,
                _ => return Err(Error::Internal(format!("cocycle value {v} is not +-1"))),
            };
        }
    }
    Ok(c)
}

/// Whether `r` lies in the subgroup of `Q^x / Q^x^2` generated by the radicands.
fn in_radicand_span(field: &MultiQuadField, r: &Rational) -> bool {
    (0..field.degree() as u8).any(|mask| rational_sqrt(&(r / rational(field.radicand(mask)))).is_some())
}

/// Search for `delta` with `k = H(sqrt delta)` Galois over `Q` and
/// non-abelian over `M`, where `Gal(H/M)` is the fixing group of `m_mask`.
///
/// Order: subfield masks ascending, then `(|u| + |v|, u, v)`
/// lexicographically with `|u|, |v| <= bound`, `v != 0`. The `skip`-th hit
/// (0-based) is returned. On exhaustion, `delta = u + v sqrt a + w sqrt b`
/// over pairs of masks is tried in the same style before giving up.
pub fn find_delta(field: &Arc<MultiQuadField>, m_mask: u8, bound: i64, skip: usize) -> Result<RelQuadExt> {
    let gal_m = field.fixing_group(m_mask);
    let mut hits = 0usize;
    let mut accept = |spec: DeltaSpec| -> Result<Option<RelQuadExt>> {
        let Some(mut k) = RelQuadExt::new(spec.element(field))? else { return Ok(None) };
        if k.is_symmetric_on(&gal_m) {
            return Ok(None);
        }
        if hits == skip {
            k.spec = Some(spec);
            return Ok(Some(k));
        }
        hits += 1;
        Ok(None)
    };

    for s in 1..field.degree() as u8 {
        let m = field.radicand(s);
        for total in 1..=2 * bound {
            for u in -bound..=bound {
                let av = total - u.abs();
                if av <= 0 || av > bound {
                    continue;
                }
                for v in [-av, av] {
                    let n = rational(u * u - m * v * v);
                    if n.is_zero() || !in_radicand_span(field, &n) {
                        continue;
                    }
                    if let Some(k) = accept(DeltaSpec { subfield: s, u, v, extra: None })? {
                        return Ok(k);
                    }
                }
            }
        }
    }

    for s1 in 1..field.degree() as u8 {
        for s2 in s1 + 1..field.degree() as u8 {
            for total in 2..=3 * bound {
                for u in -bound..=bound {
                    for v in -bound..=bound {
                        let aw = total - u.abs() - v.abs();
                        if v == 0 || aw <= 0 || aw > bound {
                            continue;
                        }
                        for w in [-aw, aw] {
                            if let Some(k) = accept(DeltaSpec { subfield: s1, u, v, extra: Some((s2, w)) })? {
                                return Ok(k);
                            }
                        }
                    }
                }
            }
        }
    }
    Err(Error::DeltaSearchExhausted(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_frac;
    use proptest::prelude::*;

    fn q23() -> Arc<MultiQuadField> {
        MultiQuadField::new(vec![2, 3]).unwrap()
    }

    fn el(f: &Arc<MultiQuadField>, c: &[i64]) -> MQElement {
        MQElement::new(f, c.iter().map(|&x| rational(x)).collect()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f = q23();
        let a = el(&f, &[0, 1, 1, 0]);
        let b = el(&f, &[0, 1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), el(&f, &[-1, 0, 0, 0]));
        let f5 = MultiQuadField::new(vec![5]).unwrap();
        let s5 = el(&f5, &[0, 1]);
        assert_eq!(s5.inv().unwrap().coords, vec![rational(0), rational_frac(1, 5)]);
        assert_eq!(el(&f, &[1, 1, 1, 0]).norm(), rational(-8));
        assert!(MQElement::from_rational(&f, rational(0)).inv().is_err());
        assert!(MultiQuadField::new(vec![2, 8]).is_err());
        assert!(MultiQuadField::new(vec![2, 3, 6]).is_err());
        let other = MultiQuadField::new(vec![2, 5]).unwrap();
        assert_eq!(a.mul(&el(&other, &[1, 0, 0, 0])), Err(Error::FieldMismatch));
    }

    #[test]
    fn sqrt_examples() {
        let f = q23();
        assert_eq!(el(&f, &[5, 0, 0, 2]).sqrt(), Some(el(&f, &[0, 1, 1, 0])));
        let f3 = MultiQuadField::new(vec![3]).unwrap();
        assert_eq!(el(&f3, &[2, 0]).sqrt(), None);
        assert_eq!(el(&f3, &[3, 0]).sqrt(), Some(el(&f3, &[0, 1])));
        // 6 = (sqrt 6)^2 lives on a mixed basis vector
        assert_eq!(el(&f, &[6, 0, 0, 0]).sqrt(), Some(el(&f, &[0, 0, 0, 1])));
        let h = MultiQuadField::new(vec![-3, -1, -7]).unwrap();
        assert_eq!(MQElement::from_rational(&h, rational(21)).sqrt(), Some(MQElement::monomial(&h, 0b101, rational(1))));
        assert_eq!(MQElement::from_rational(&h, rational(-1)).sqrt(), Some(MQElement::monomial(&h, 0b010, rational(1))));
        assert_eq!(MQElement::from_rational(&h, rational(2)).sqrt(), None);
    }

    #[test]
    fn rank_one_cyclic_quartic() {
        let f = MultiQuadField::new(vec![2]).unwrap();
        let delta = el(&f, &[2, 1]);
        let k = RelQuadExt::new(delta).unwrap().unwrap();
        // gamma_sigma = +-(sqrt 2 - 1)
        let g = &k.gamma[1];
        assert!(*g == el(&f, &[-1, 1]) || *g == el(&f, &[1, -1]));
        assert_eq!(k.gal_structure_over_l(1).unwrap(), GalStructure::C4);
        assert_eq!(k.c(1, 1), -1);
        // 3 + sqrt 2 has norm 7, not a square class of Q(sqrt 2)
        assert!(RelQuadExt::new(el(&f, &[3, 1])).unwrap().is_none());
    }

    #[test]
    fn biquadratic_over_l() {
        let f = q23();
        // delta rational: gamma = 1 everywhere
        let k = RelQuadExt::new(el(&f, &[5, 0, 0, 0])).unwrap().unwrap();
        for s in 1..4 {
            assert_eq!(k.gal_structure_over_l(s).unwrap(), GalStructure::C2xC2);
        }
        assert!(k.is_symmetric_on(&[0, 1, 2, 3]));
        assert!(k.is_abelian_over(1).unwrap());
        assert!(k.is_abelian_over(0).is_err());
    }

    fn check_cocycle(k: &RelQuadExt) {
        let n = k.field.degree() as u8;
        for s in 0..n {
            assert_eq!(k.c(0, s), 1);
            assert_eq!(k.c(s, 0), 1);
            assert_eq!(k.delta.act(s), k.delta.mul(&k.gamma[s as usize].mul(&k.gamma[s as usize]).unwrap()).unwrap());
            for t in 0..n {
                let lhs = k.gamma[s as usize].mul(&k.gamma[t as usize].act(s)).unwrap();
                let rhs = k.gamma[(s ^ t) as usize].scale(&rational(k.c(s, t) as i64));
                assert_eq!(lhs, rhs);
                for r in 0..n {
                    assert_eq!(k.c(r ^ s, t) * k.c(r, s), k.c(r, s ^ t) * k.c(s, t));
                }
            }
        }
    }

    #[test]
    fn delta_for_minus_84() {
        let h = MultiQuadField::new(vec![-3, -1, -7]).unwrap();
        let k = find_delta(&h, 0b111, 60, 0).unwrap();
        assert_eq!(k.spec, Some(DeltaSpec { subfield: 1, u: 0, v: -1, extra: None }));
        check_cocycle(&k);
        assert!(!k.is_symmetric_on(&h.fixing_group(0b111)));
        let k2 = find_delta(&h, 0b111, 60, 1).unwrap();
        assert_ne!(k2.spec, k.spec);
        check_cocycle(&k2);
    }

    #[test]
    fn delta_exhaustion_is_reported() {
        // over Q(sqrt 2, sqrt 3) with "M" = Q(sqrt 6) no small delta works
        let f = q23();
        assert!(matches!(find_delta(&f, 0b11, 1, 0), Err(Error::DeltaSearchExhausted(1))));
    }

    fn small_element(rank: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-9i64..10, 1 << rank)
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 200, rng_seed: proptest::test_runner::RngSeed::Fixed(11), ..ProptestConfig::default() })]

        #[test]
        fn sqrt_round_trip(c in small_element(3)) {
            let h = MultiQuadField::new(vec![-3, 5, 13]).unwrap();
            let x = el(&h, &c);
            let r = x.mul(&x).unwrap().sqrt().unwrap();
            prop_assert!(r == x || r == x.neg());
        }

        #[test]
        fn field_axioms(a in small_element(3), b in small_element(3), c in small_element(3)) {
            let h = MultiQuadField::new(vec![-1, 5, 17]).unwrap();
            let (a, b, c) = (el(&h, &a), el(&h, &b), el(&h, &c));
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), MQElement::one(&h));
            }
            for s in 0..8u8 {
                prop_assert_eq!(a.mul(&b).unwrap().act(s), a.act(s).mul(&b.act(s)).unwrap());
            }
        }
    }
}
