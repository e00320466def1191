//! c-representations over cyclotomic fields: `rho(s) rho(t) = rho(st) c(s,t)`
//! with `c` scalar-valued.
//!
//! Exact arithmetic in `Q(zeta_n)` for `n <= 24`, elements in the power
//! basis modulo the `n`-th cyclotomic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::rational;
use crate::cocycle::SmallGroup;
use crate::{Error, Rational, Result};

pub const MAX_CONDUCTOR: u32 = 24;

#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    pub n: u32,
    /// Monic `Phi_n`, constant term first.
    phi: Vec<i64>,
}

fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// exact division by a monic polynomial
fn poly_div_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0; num.len() - dd];
    for k in (0..q.len()).rev() {
        let lead = rem[k + dd];
        q[k] = lead;
        for (j, c) in den.iter().enumerate() {
            rem[k + j] -= lead * c;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut den = vec![1i64];
    for d in 1..n {
        if n % d == 0 {
            den = poly_mul_int(&den, &cyclotomic_poly(d));
        }
    }
    poly_div_int(&num, &den)
}

impl CycloField {
    pub fn new(n: u32) -> Result<Arc<Self>> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::Unsupported(format!("cyclotomic conductor {n}")));
        }
        Ok(Arc::new(CycloField { n, phi: cyclotomic_poly(n) }))
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclo {
    pub field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl Cyclo {
    fn reduce(field: &Arc<CycloField>, mut c: Vec<Rational>) -> Self {
        let deg = field.degree();
        while c.len() > deg {
            let lead = c.pop().expect("nonempty");
            if lead.is_zero() {
                continue;
            }
            let k = c.len() - deg;
            for (j, p) in field.phi[..deg].iter().enumerate() {
                c[k + j] -= &lead * rational(*p);
            }
        }
        c.resize(deg, Rational::zero());
        Cyclo { field: field.clone(), coeffs: c }
    }

    pub fn from_rational(field: &Arc<CycloField>, r: Rational) -> Self {
        Self::reduce(field, vec![r])
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, rational(n))
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta(field: &Arc<CycloField>, k: i64) -> Self {
        let e = k.rem_euclid(field.n as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::reduce(field, c)
    }

    /// A primitive `r`-th root of unity, `zeta_n^(n/r)`.
    pub fn root_of_unity(field: &Arc<CycloField>, r: u32) -> Result<Self> {
        if r == 0 || field.n % r != 0 {
            return Err(Error::Unsupported(format!("no primitive {r}-th root in Q(zeta_{})", field.n)));
        }
        Ok(Self::zeta(field, (field.n / r) as i64))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let mut acc = Cyclo::zero(&self.field);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Cyclo::zeta(&self.field, -(j as i64)).scale(c);
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        // solve (mult by self) x = 1 over Q
        let deg = self.field.degree();
        let cols: Vec<Cyclo> = (0..deg).map(|j| self * &Cyclo::zeta(&self.field, j as i64)).collect();
        let mut m: Vec<Vec<Rational>> = (0..deg)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..deg {
            let piv = (col..deg).find(|&r| !m[r][col].is_zero()).ok_or(Error::Zero)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..deg {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=deg {
                        let sub = &f * &m[col][k];
                        m[r][k] -= sub;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|row| row[deg].clone()).collect();
        Ok(Cyclo { field: self.field.clone(), coeffs })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclo::one(&self.field);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// If `self = +-1`, the sign.
    pub fn as_sign(&self) -> Option<i8> {
        let r = self.as_rational()?;
        if r.is_one() {
            Some(1)
        } else if (-r).is_one() {
            Some(-1)
        } else {
            None
        }
    }
}

fn check_field(a: &Cyclo, b: &Cyclo) {
    assert_eq!(a.field.n, b.field.n, "cyclotomic field mismatch");
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        check_field(self, o);
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        check_field(self, o);
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        check_field(self, o);
        let mut c = vec![Rational::zero(); 2 * self.coeffs.len()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Cyclo::reduce(&self.field, c)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.to_string(),
                1 => format!("{c}*z{}", self.field.n),
                _ => format!("{c}*z{}^{j}", self.field.n),
            })
            .collect();
        if terms.is_empty() { write!(f, "0") } else { write!(f, "{}", terms.join(" + ")) }
    }
}

/// Square matrix over a cyclotomic field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub dim: usize,
    entries: Vec<Cyclo>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<Cyclo>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotCRep("matrix must be square and nonempty"));
        }
        Ok(Mat { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn scalar(dim: usize, x: &Cyclo) -> Self {
        let z = Cyclo::zero(&x.field);
        let entries = (0..dim * dim).map(|k| if k / dim == k % dim { x.clone() } else { z.clone() }).collect();
        Mat { dim, entries }
    }

    pub fn identity(field: &Arc<CycloField>, dim: usize) -> Self {
        Self::scalar(dim, &Cyclo::one(field))
    }

    pub fn diag(xs: &[Cyclo]) -> Self {
        let dim = xs.len();
        let z = Cyclo::zero(&xs[0].field);
        let entries = (0..dim * dim).map(|k| if k / dim == k % dim { xs[k / dim].clone() } else { z.clone() }).collect();
        Mat { dim, entries }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.entries[0].field
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Cyclo::zero(self.field());
                for k in 0..n {
                    let (x, y) = (self.get(i, k), o.get(k, j));
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                entries.push(acc);
            }
        }
        Mat { dim: n, entries }
    }

    pub fn scale(&self, x: &Cyclo) -> Mat {
        Mat { dim: self.dim, entries: self.entries.iter().map(|e| e * x).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.dim;
        Mat { dim: n, entries: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect() }
    }

    /// Kronecker product; index `(i, j)` of the product space is `i * other.dim + j`.
    pub fn kron(&self, o: &Mat) -> Mat {
        let (m, n) = (self.dim, o.dim);
        let dim = m * n;
        let entries = (0..dim * dim)
            .map(|k| {
                let (r, c) = (k / dim, k % dim);
                self.get(r / n, c / n) * o.get(r % n, c % n)
            })
            .collect();
        Mat { dim, entries }
    }

    pub fn trace(&self) -> Cyclo {
        (0..self.dim).fold(Cyclo::zero(self.field()), |acc, i| &acc + self.get(i, i))
    }

    pub fn inverse(&self) -> Result<Mat> {
        let n = self.dim;
        let field = self.field().clone();
        let mut a: Vec<Vec<Cyclo>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut inv: Vec<Vec<Cyclo>> =
            (0..n).map(|i| (0..n).map(|j| Cyclo::from_int(&field, i64::from(i == j))).collect()).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::NotCRep("singular matrix"))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv()?;
            for k in 0..n {
                a[col][k] = &a[col][k] * &p;
                inv[col][k] = &inv[col][k] * &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for k in 0..n {
                        a[r][k] = &a[r][k] - &(&f * &a[col][k]);
                        inv[r][k] = &inv[r][k] - &(&f * &inv[col][k]);
                    }
                }
            }
        }
        Ok(Mat { dim: n, entries: inv.into_iter().flatten().collect() })
    }

    pub fn pow(&self, e: u32) -> Mat {
        (0..e).fold(Mat::identity(self.field(), self.dim), |acc, _| acc.mul(self))
    }

    /// `Some(x)` if `self = x I`.
    pub fn as_scalar(&self) -> Option<Cyclo> {
        let x = self.get(0, 0).clone();
        (*self == Mat::scalar(self.dim, &x)).then_some(x)
    }

    /// Permutation `P` with `P (A kron B) P^-1 = B kron A` for `A` of size
    /// `m` and `B` of size `n`.
    pub fn commutation(field: &Arc<CycloField>, m: usize, n: usize) -> Mat {
        let dim = m * n;
        let mut entries = vec![Cyclo::zero(field); dim * dim];
        for i in 0..m {
            for j in 0..n {
                entries[(j * m + i) * dim + (i * n + j)] = Cyclo::one(field);
            }
        }
        Mat { dim, entries }
    }
}

#[derive(Debug, Clone)]
pub struct CRep {
    pub group: SmallGroup,
    pub dim: usize,
    mats: Vec<Mat>,
    cocycle: Vec<Cyclo>,
}

impl CRep {
    /// Derives `c(s,t)` from `rho(s) rho(t) rho(st)^-1`, which must be scalar.
    pub fn from_matrices(group: SmallGroup, mats: Vec<Mat>) -> Result<Self> {
        let n = group.order();
        if mats.len() != n {
            return Err(Error::NotCRep("one matrix per group element"));
        }
        let dim = mats[0].dim;
        if mats.iter().any(|m| m.dim != dim || m.field().n != mats[0].field().n) {
            return Err(Error::NotCRep("matrices of different shapes or fields"));
        }
        if mats[group.identity()] != Mat::identity(mats[0].field(), dim) {
            return Err(Error::NotCRep("identity must act trivially"));
        }
        let invs = mats.iter().map(Mat::inverse).collect::<Result<Vec<_>>>()?;
        let mut cocycle = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let q = mats[s].mul(&mats[t]).mul(&invs[group.mul(s, t)]);
                cocycle.push(q.as_scalar().ok_or(Error::NotCRep("rho(s) rho(t) rho(st)^-1 is not scalar"))?);
            }
        }
        Ok(CRep { group, dim, mats, cocycle })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.mats[0].field()
    }

    pub fn rho(&self, s: usize) -> &Mat {
        &self.mats[s]
    }

    pub fn c(&self, s: usize, t: usize) -> &Cyclo {
        &self.cocycle[s * self.group.order() + t]
    }

    /// The defining identity for every pair.
    pub fn verify(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|s| {
            (0..g.order()).all(|t| self.rho(s).mul(self.rho(t)) == self.rho(g.mul(s, t)).scale(self.c(s, t)))
        })
    }

    pub fn is_honest(&self) -> bool {
        self.cocycle.iter().all(Cyclo::is_one)
    }

    /// `rho(s^-1) = rho(s)^-1 c(s^-1, s)` and `c(s, s^-1) = c(s^-1, s)`.
    pub fn inverse_identities(&self) -> Result<bool> {
        for s in 0..self.group.order() {
            let si = self.group.inverse(s);
            let inv = self.rho(s).inverse()?;
            if *self.rho(si) != inv.scale(self.c(si, s)) || self.c(s, si) != self.c(si, s) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn trivial(group: &SmallGroup, field: &Arc<CycloField>) -> Result<CRep> {
        CRep::from_matrices(group.clone(), vec![Mat::identity(field, 1); group.order()])
    }

    /// Inverse transposes.
    pub fn dual(&self) -> Result<CRep> {
        let mats = self.mats.iter().map(|m| m.inverse().map(|i| i.transpose())).collect::<Result<Vec<_>>>()?;
        CRep::from_matrices(self.group.clone(), mats)
    }

    fn check_compatible(&self, o: &CRep) -> Result<()> {
        if self.group != o.group {
            return Err(Error::GroupMismatch);
        }
        if self.field().n != o.field().n {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn tensor(&self, o: &CRep) -> Result<CRep> {
        self.check_compatible(o)?;
        let mats = self.mats.iter().zip(&o.mats).map(|(a, b)| a.kron(b)).collect();
        CRep::from_matrices(self.group.clone(), mats)
    }

    /// `Hom(self, o)` acting by `f -> rho_o(s) f rho_self(s)^-1`, in the basis
    /// of elementary maps `E_ab` (`a` indexing `o`, `b` indexing `self`),
    /// ordered `a * self.dim + b`.
    pub fn hom(&self, o: &CRep) -> Result<CRep> {
        self.check_compatible(o)?;
        let (m, n) = (o.dim, self.dim);
        let dim = m * n;
        let field = self.field().clone();
        let mut mats = Vec::with_capacity(self.group.order());
        for s in 0..self.group.order() {
            let w = o.rho(s);
            let vinv = self.rho(s).inverse()?;
            // column (a, b) is the image of E_ab, i.e. w[:, a] * vinv[b, :]
            let mut entries = vec![Cyclo::zero(&field); dim * dim];
            for a in 0..m {
                for b in 0..n {
                    let col = a * n + b;
                    for i in 0..m {
                        for j in 0..n {
                            entries[(i * n + j) * dim + col] = w.get(i, a) * vinv.get(b, j);
                        }
                    }
                }
            }
            mats.push(Mat { dim, entries });
        }
        CRep::from_matrices(self.group.clone(), mats)
    }

    /// `p rho_self(s) p^-1 = rho_o(s)` for all `s`, with equal cocycles.
    pub fn is_isomorphic_via(&self, o: &CRep, p: &Mat) -> Result<bool> {
        self.check_compatible(o)?;
        if self.dim != o.dim || p.dim != self.dim {
            return Ok(false);
        }
        let pinv = p.inverse()?;
        Ok(self.cocycle == o.cocycle
            && (0..self.group.order()).all(|s| p.mul(self.rho(s)).mul(&pinv) == *o.rho(s)))
    }
}

/// `Q(zeta_lcm(r, 8))`.
pub fn scenario_field(r: u32) -> Result<Arc<CycloField>> {
    CycloField::new(r.lcm(&8))
}

/// c-representation of the cyclic group of order `2r` generated by `s`,
/// with `rho(s) = diag(alpha, zeta_r alpha)` and cocycle inflated from the
/// quotient of order 2: `c(s^a, s^b) = c` when `a, b` are both odd, else 1,
/// where `c = omega alpha^2` and `omega = zeta_r^omega_exp`.
pub fn cyclic_lift_crep(r: u32, alpha: &Cyclo, omega_exp: u32) -> Result<(CRep, Cyclo)> {
    let field = alpha.field.clone();
    let zeta = Cyclo::root_of_unity(&field, r)?;
    let omega = zeta.pow(omega_exp as i64)?;
    let c = &omega * &(alpha * alpha);
    let cinv = c.inv()?;
    let rho_s = Mat::diag(&[alpha.clone(), &zeta * alpha]);
    let order = 2 * r as usize;
    let group = SmallGroup::cyclic(order)?;
    let mut mats = Vec::with_capacity(order);
    let mut cur = Mat::identity(&field, 2);
    for k in 0..order {
        mats.push(cur.clone());
        cur = cur.mul(&rho_s);
        if k % 2 == 1 {
            cur = cur.scale(&cinv);
        }
    }
    Ok((CRep::from_matrices(group, mats)?, c))
}

#[derive(Debug, Clone)]
pub struct TraceScenario {
    pub r: u32,
    pub trace: Cyclo,
    /// `2 + zeta_r + zeta_r^-1`.
    pub expected: Cyclo,
    /// The trace is fixed by complex conjugation.
    pub conj_fixed: bool,
    pub hom_is_honest: bool,
}

impl TraceScenario {
    pub fn holds(&self) -> bool {
        self.trace == self.expected && self.conj_fixed && self.hom_is_honest && self.trace.as_rational().is_some()
    }
}

/// Trace of `s` on `Hom(V, V)` for `rho_V(s) = diag(alpha, zeta_r alpha)`,
/// with `alpha = zeta_8`.
pub fn trace_scenario_rho_r(r: u32) -> Result<TraceScenario> {
    if ![1, 2, 3, 4, 6].contains(&r) {
        return Err(Error::Unsupported(format!("element order {r}")));
    }
    let field = scenario_field(r)?;
    let alpha = Cyclo::root_of_unity(&field, 8)?;
    let (v, _) = cyclic_lift_crep(r, &alpha, 0)?;
    let hom = v.hom(&v)?;
    let trace = hom.rho(1).trace();
    let zeta = Cyclo::root_of_unity(&field, r)?;
    let expected = &(&Cyclo::from_int(&field, 2) + &zeta) + &zeta.inv()?;
    Ok(TraceScenario { r, conj_fixed: trace.conj() == trace, trace, expected, hom_is_honest: hom.is_honest() })
}

#[derive(Debug, Clone)]
pub struct ObstructionScenario {
    pub r: u32,
    pub c: Cyclo,
    /// `rho(s)^(2r) = c^r`.
    pub prodmagic: bool,
    /// `(2 + zeta + zeta^-1) c = (alpha + beta)^2 omega zeta^-1`.
    pub closing_identity: bool,
    /// `omega zeta^-1` when it is `+-1`.
    pub unit_sign: Option<i8>,
    /// `sign (2 + zeta + zeta^-1) c = (alpha + beta)^2` checked when the
    /// unit is `+-1`.
    pub pm_square: Option<bool>,
}

impl ObstructionScenario {
    pub fn holds(&self) -> bool {
        self.prodmagic && self.closing_identity && self.pm_square != Some(false)
    }
}

pub fn obstruction_scenario(r: u32, alpha: &Cyclo, omega_exp: u32) -> Result<ObstructionScenario> {
    if r != 4 && r != 6 {
        return Err(Error::Unsupported(format!("obstruction for order {r}")));
    }
    if alpha.field.n != scenario_field(r)?.n {
        return Err(Error::FieldMismatch);
    }
    let field = alpha.field.clone();
    let (v, c) = cyclic_lift_crep(r, alpha, omega_exp)?;
    if !v.verify() {
        return Err(Error::Internal("lifted c-representation fails its identity".into()));
    }
    let rho_s = v.rho(1);
    let prodmagic = rho_s.pow(2 * r) == Mat::scalar(2, &c.pow(r as i64)?);
    let zeta = Cyclo::root_of_unity(&field, r)?;
    let zinv = zeta.inv()?;
    let omega = zeta.pow(omega_exp as i64)?;
    let beta = &zeta * alpha;
    let sum = alpha + &beta;
    let sum2 = &sum * &sum;
    let k = &(&Cyclo::from_int(&field, 2) + &zeta) + &zinv;
    let lhs = &k * &c;
    let unit = &omega * &zinv;
    let closing_identity = lhs == &(&sum2 * &omega) * &zinv;
    let unit_sign = unit.as_sign();
    let pm_square = unit_sign.map(|sg| lhs.scale(&rational(sg as i64)) == sum2);
    Ok(ObstructionScenario { r, c, prodmagic, closing_identity, unit_sign, pm_square })
}

fn random_unit_root<R: Rng>(rng: &mut R, field: &Arc<CycloField>) -> Cyclo {
    Cyclo::zeta(field, rng.gen_range(0..field.n as i64))
}

// a + b zeta^j with small integers
fn random_small<R: Rng>(rng: &mut R, field: &Arc<CycloField>) -> Cyclo {
    let a = Cyclo::from_int(field, rng.gen_range(-2i64..=2));
    let b = rng.gen_range(-1i64..=1);
    &a + &Cyclo::zeta(field, rng.gen_range(0..field.n as i64)).scale(&rational(b))
}

/// Random 2-dimensional c-representation of the Klein group: an honest
/// sum of two characters or the twisted representation, scaled by a
/// random `+-1` cochain (or by roots of unity when `roots` is set) and
/// conjugated by a random unimodular matrix.
pub fn random_klein_crep<R: Rng>(rng: &mut R, field: &Arc<CycloField>, roots: bool) -> Result<CRep> {
    let g = SmallGroup::klein();
    let one = Cyclo::one(field);
    let m1 = Cyclo::from_int(field, -1);
    let zero = Cyclo::zero(field);
    let chi = |mask: usize, x: usize| if (mask & x).count_ones() % 2 == 1 { m1.clone() } else { one.clone() };
    let base: Vec<Mat> = if rng.gen_bool(0.5) {
        let (a, b) = (rng.gen_range(0..4usize), rng.gen_range(0..4usize));
        (0..4).map(|x| Mat::diag(&[chi(a, x), chi(b, x)])).collect()
    } else {
        let r1 = Mat::diag(&[one.clone(), m1.clone()]);
        let r2 = Mat::from_rows(vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]])?;
        let r3 = r1.mul(&r2);
        vec![Mat::identity(field, 2), r1, r2, r3]
    };
    // unimodular, so conjugation keeps entries in Z[zeta] and small
    let upper = Mat::from_rows(vec![vec![one.clone(), random_small(rng, field)], vec![zero.clone(), one.clone()]])?;
    let lower = Mat::from_rows(vec![vec![one.clone(), zero.clone()], vec![random_small(rng, field), one.clone()]])?;
    let p = upper.mul(&lower);
    let pinv = p.inverse()?;
    let mut mats = Vec::with_capacity(4);
    for (x, m) in base.iter().enumerate() {
        let lam = if x == 0 {
            one.clone()
        } else if roots {
            random_unit_root(rng, field)
        } else if rng.gen_bool(0.5) {
            m1.clone()
        } else {
            one.clone()
        };
        mats.push(p.mul(m).mul(&pinv).scale(&lam));
    }
    CRep::from_matrices(g, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(CycloField::new(24).unwrap().degree(), 8);
        assert!(CycloField::new(25).is_err());
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in 1..=24u32 {
            let f = CycloField::new(n).unwrap();
            let z = Cyclo::zeta(&f, 1);
            for k in 1..n {
                assert!(!z.pow(k as i64).unwrap().is_one(), "n={n} k={k}");
            }
            assert!(z.pow(n as i64).unwrap().is_one());
        }
    }

    #[test]
    fn field_arithmetic() {
        let f = CycloField::new(12).unwrap();
        let x = &Cyclo::zeta(&f, 1) + &Cyclo::from_int(&f, 3);
        assert!((&x * &x.inv().unwrap()).is_one());
        // zeta_6 + zeta_6^-1 = 1, zeta_4 + zeta_4^-1 = 0
        let z6 = Cyclo::root_of_unity(&f, 6).unwrap();
        assert_eq!((&z6 + &z6.conj()).as_rational(), Some(rational(1)));
        let i = Cyclo::root_of_unity(&f, 4).unwrap();
        assert!((&i + &i.conj()).is_zero());
        assert_eq!((&i * &i).as_sign(), Some(-1));
    }

    #[test]
    fn honest_dual_and_double_dual() {
        let f = CycloField::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let v = random_klein_crep(&mut rng, &f, false).unwrap();
            assert!(v.verify());
            assert!(v.inverse_identities().unwrap());
            let d = v.dual().unwrap();
            assert!(d.verify());
            for s in 0..4 {
                for t in 0..4 {
                    assert_eq!(*d.c(s, t), v.c(s, t).inv().unwrap());
                }
            }
            let dd = d.dual().unwrap();
            assert_eq!(dd.mats, v.mats);
            if v.is_honest() {
                assert!(d.is_honest());
            }
        }
    }

    #[test]
    fn tensor_and_hom_cocycles() {
        let f = CycloField::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for k in 0..10 {
            let v = random_klein_crep(&mut rng, &f, k % 2 == 0).unwrap();
            let w = random_klein_crep(&mut rng, &f, false).unwrap();
            let t = v.tensor(&w).unwrap();
            let h = v.hom(&w).unwrap();
            for s in 0..4 {
                for u in 0..4 {
                    assert_eq!(*t.c(s, u), v.c(s, u) * w.c(s, u));
                    assert_eq!(*h.c(s, u), &v.c(s, u).inv().unwrap() * w.c(s, u));
                }
            }
            // Hom(V, W) = W (x) V* by the identity, = V* (x) W up to the swap
            let wv = w.tensor(&v.dual().unwrap()).unwrap();
            assert!(h.is_isomorphic_via(&wv, &Mat::identity(&f, 4)).unwrap());
            let vw = v.dual().unwrap().tensor(&w).unwrap();
            assert!(wv.is_isomorphic_via(&vw, &Mat::commutation(&f, 2, 2)).unwrap());
            assert!(v.hom(&v).unwrap().is_honest());
            let triv = CRep::trivial(&v.group, &f).unwrap();
            assert_eq!(v.tensor(&triv).unwrap().mats, v.mats);
        }
    }

    #[test]
    fn mismatched_groups_rejected() {
        let f = CycloField::new(8).unwrap();
        let a = CRep::trivial(&SmallGroup::klein(), &f).unwrap();
        let b = CRep::trivial(&SmallGroup::cyclic(4).unwrap(), &f).unwrap();
        assert!(matches!(a.tensor(&b), Err(Error::GroupMismatch)));
        let g = CycloField::new(12).unwrap();
        let c = CRep::trivial(&SmallGroup::klein(), &g).unwrap();
        assert!(matches!(a.hom(&c), Err(Error::FieldMismatch)));
    }

    #[test]
    fn non_scalar_defect_rejected() {
        let f = CycloField::new(4).unwrap();
        let one = Cyclo::one(&f);
        let m1 = Cyclo::from_int(&f, -1);
        let z = Cyclo::zero(&f);
        let a = Mat::diag(&[one.clone(), m1.clone()]);
        let b = Mat::from_rows(vec![vec![one.clone(), one.clone()], vec![z, m1]]).unwrap();
        let mats = vec![Mat::identity(&f, 2), a, b.clone(), b];
        assert!(CRep::from_matrices(SmallGroup::klein(), mats).is_err());
    }

    #[test]
    fn traces() {
        let expect = [(1, 4), (2, 0), (3, 1), (4, 2), (6, 3)];
        for (r, t) in expect {
            let s = trace_scenario_rho_r(r).unwrap();
            assert!(s.holds(), "r={r}");
            assert_eq!(s.trace.as_rational(), Some(rational(t)));
        }
        assert!(trace_scenario_rho_r(5).is_err());
    }

    #[test]
    fn obstructions() {
        let f8 = scenario_field(4).unwrap();
        let one = Cyclo::one(&f8);
        let s = obstruction_scenario(4, &one, 0).unwrap();
        assert!(s.holds());
        // omega zeta^-1 = -i, so only the unit-twisted identity applies
        assert_eq!(s.unit_sign, None);
        assert!(s.c.is_one());
        let (v, _) = cyclic_lift_crep(4, &one, 0).unwrap();
        assert!(v.is_honest());
        let s = obstruction_scenario(4, &one, 1).unwrap();
        assert_eq!(s.unit_sign, Some(1));
        assert_eq!(s.pm_square, Some(true));

        let f24 = scenario_field(6).unwrap();
        for k in 0..24 {
            let alpha = &Cyclo::zeta(&f24, k) + &Cyclo::from_int(&f24, 2);
            for w in 0..6 {
                let s = obstruction_scenario(6, &alpha, w).unwrap();
                assert!(s.holds(), "k={k} w={w}");
                assert_eq!(s.unit_sign.is_some(), w == 1 || w == 4);
            }
        }
        assert!(matches!(obstruction_scenario(6, &one, 0), Err(Error::FieldMismatch)));
    }
}
