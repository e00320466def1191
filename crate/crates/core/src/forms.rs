//! Positive definite binary quadratic forms and class groups of imaginary
//! quadratic orders, plus the genus-field data for class group `C2 x C2`.
//!
//! Completeness of discriminant sweeps below the default bound relies on the
//! published tables of imaginary quadratic fields with small class number
//! (Watkins, 2004): every `C2 x C2` discriminant has `|D| <= 1435`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{is_fundamental_discriminant, kronecker_symbol, prime_discriminant_factorization, squarefree_part_int};
use crate::error::{Error, Result};

/// Default bound for discriminant sweeps.
pub const DEFAULT_SWEEP_BOUND: u64 = 5000;

/// The form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: i64) -> Self {
        let b = d.rem_euclid(2);
        QuadForm { a: 1, b, c: (b * b - d) / 4 }
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }

    pub fn is_principal(&self) -> bool {
        self.a == 1
    }

    pub fn inverse(&self) -> Self {
        QuadForm { a: self.a, b: -self.b, c: self.c }.reduce().expect("inverse of a definite form")
    }

    /// The unique reduced form properly equivalent to `self`.
    pub fn reduce(&self) -> Result<Self> {
        let QuadForm { mut a, mut b, mut c } = *self;
        let d = self.discriminant();
        if d >= 0 || a <= 0 {
            return Err(Error::NotPositiveDefinite { a, b, c });
        }
        loop {
            if b > a || b <= -a {
                // normalize b into (-a, a]
                let two_a = 2 * a;
                let shift = Integer::div_floor(&(a - b), &two_a);
                let b_new = b + two_a * shift;
                c = (b_new * b_new - d) / (4 * a);
                b = b_new;
            }
            if a > c || (a == c && b < 0) {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if b > a || b <= -a {
                continue;
            }
            return Ok(QuadForm { a, b, c });
        }
    }

    /// Gauss composition (Shanks' formulation), returning the reduced product.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm> {
        let d = self.discriminant();
        if d != other.discriminant() {
            return Err(Error::DiscriminantMismatch(d, other.discriminant()));
        }
        let (f1, f2) = if self.a > other.a { (other, self) } else { (self, other) };
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, dd) = if a2 % a1 == 0 {
            (0i128, a1)
        } else {
            let g = a2.extended_gcd(&a1);
            (g.x, g.gcd)
        };
        let (x2, y2, d1) = if s % dd == 0 {
            (0i128, -1i128, dd)
        } else {
            let g = s.extended_gcd(&dd);
            (g.x, -g.y, g.gcd)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 * b3 - d as i128) / (4 * a3);
        QuadForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce()
    }

    pub fn pow(&self, mut e: u64) -> Result<QuadForm> {
        let mut result = QuadForm::principal(self.discriminant());
        let mut base = self.reduce()?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base)?;
            }
            base = base.compose(&base)?;
            e >>= 1;
        }
        Ok(result)
    }

    pub fn order(&self) -> Result<u64> {
        let one = QuadForm::principal(self.discriminant());
        let f = self.reduce()?;
        let mut acc = f;
        let mut k = 1;
        while acc != one {
            acc = acc.compose(&f)?;
            k += 1;
        }
        Ok(k)
    }

    /// Whether the form represents `n` properly or improperly with
    /// `|x|, |y| <= bound`.
    pub fn represents(&self, n: i64, bound: i64) -> bool {
        (-bound..=bound).any(|x| (-bound..=bound).any(|y| (x, y) != (0, 0) && self.a * x * x + self.b * x * y + self.c * y * y == n))
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Invariant factors of a finite abelian group, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupStructure(pub Vec<u64>);

impl GroupStructure {
    pub fn trivial() -> Self {
        GroupStructure(Vec::new())
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 1 { Self::trivial() } else { GroupStructure(vec![n]) }
    }

    pub fn klein() -> Self {
        GroupStructure(vec![2, 2])
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn is_klein(&self) -> bool {
        self.0 == [2, 2]
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.0.iter().map(|n| format!("C{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub disc: i64,
    /// All reduced forms; the principal form comes first.
    pub elements: Vec<QuadForm>,
    pub structure: GroupStructure,
    pub generators: Vec<QuadForm>,
}

impl ClassGroup {
    pub fn class_number(&self) -> usize {
        self.elements.len()
    }
}

/// Every reduced form of discriminant `d < 0` (primitive ones only).
pub fn reduced_forms(d: i64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = QuadForm { a, b, c };
            if f.is_reduced() && a.gcd(&b).gcd(&c) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

fn invariant_factors(orders: &[u64]) -> GroupStructure {
    // |G[p^j]| / |G[p^(j-1)]| = p^(number of cyclic p-factors of order >= p^j)
    let h = orders.len() as u64;
    let mut primes = crate::arith::prime_divisors(h);
    primes.sort_unstable();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for p in primes {
        let mut at_least: Vec<u32> = Vec::new();
        let mut prev = 1u64;
        let mut pj = p;
        loop {
            let count = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            let mut k = 0u32;
            let mut q = count / prev;
            while q > 1 {
                q /= p;
                k += 1;
            }
            if k == 0 {
                break;
            }
            at_least.push(k);
            prev = count;
            pj *= p;
        }
        // exponents of the cyclic p-factors, largest first
        let n = at_least.first().copied().unwrap_or(0) as usize;
        let parts: Vec<u64> = (0..n)
            .map(|i| p.pow(at_least.iter().filter(|&&c| c as usize > i).count() as u32))
            .collect();
        columns.push(parts);
    }
    let len = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(1)).product())
        .collect();
    factors.reverse();
    GroupStructure(factors)
}

/// Class group of the maximal order of `Q(sqrt d)`, `d < 0` fundamental.
pub fn class_group(d: i64) -> Result<ClassGroup> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    let elements = reduced_forms(d);
    let orders: Vec<u64> = elements.iter().map(|f| f.order()).collect::<Result<_>>()?;
    let structure = invariant_factors(&orders);

    // greedy generating set, largest order first
    let mut by_order: Vec<(u64, QuadForm)> = orders.iter().copied().zip(elements.iter().copied()).collect();
    by_order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut generators = Vec::new();
    let mut span = vec![QuadForm::principal(d)];
    for (_, f) in by_order {
        if span.len() == elements.len() {
            break;
        }
        if span.contains(&f) {
            continue;
        }
        generators.push(f);
        span = subgroup_span(&span, &f)?;
    }
    Ok(ClassGroup { disc: d, elements, structure, generators })
}

fn subgroup_span(span: &[QuadForm], g: &QuadForm) -> Result<Vec<QuadForm>> {
    let mut out = span.to_vec();
    let mut power = *g;
    while !span.contains(&power) {
        for s in span {
            let x = s.compose(&power)?;
            if !out.contains(&x) {
                out.push(x);
            }
        }
        power = power.compose(g)?;
    }
    Ok(out)
}

/// All fundamental `d` with `-bound <= d < 0` whose class group has the
/// given structure, ascending by `|d|`.
pub fn discriminants_with_class_group(target: &GroupStructure, bound: u64) -> Vec<i64> {
    (1..=bound as i64)
        .map(|n| -n)
        .filter(|&d| is_fundamental_discriminant(d))
        .filter(|&d| class_group(d).map(|g| &g.structure == target).unwrap_or(false))
        .collect()
}

/// `d = -4 p_1 ... p_{t-1}` with `t >= 2` and every `p_i = 1 mod 4`.
pub fn is_exceptional(d: i64) -> bool {
    if d >= 0 || d % 4 != 0 {
        return false;
    }
    let m = -d / 4;
    if m <= 1 || m % 2 == 0 {
        return false;
    }
    crate::arith::factorize(m as u64).iter().all(|&(p, e)| e == 1 && p % 4 == 1)
}

/// Prime discriminant factorization and genus-field radicands for a
/// discriminant with class group `C2 x C2`. The Hilbert class field is
/// `Q(sqrt m_1, sqrt m_2, sqrt m_3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusData {
    pub disc: i64,
    pub prime_discriminants: [i64; 3],
    pub radicands: [i64; 3],
}

pub fn genus_data(d: i64) -> Result<GenusData> {
    let group = class_group(d)?;
    if !group.structure.is_klein() {
        return Err(Error::WrongClassGroup { disc: d, structure: group.structure.to_string() });
    }
    let pd = prime_discriminant_factorization(d)?;
    if pd.len() != 3 {
        return Err(Error::Internal(format!("{d}: expected 3 prime discriminants, got {pd:?}")));
    }
    let prime_discriminants = [pd[0], pd[1], pd[2]];
    let radicands = prime_discriminants.map(|x| squarefree_part_int(x).expect("nonzero"));
    Ok(GenusData { disc: d, prime_discriminants, radicands })
}

/// Frobenius sign vector of a split prime `p` on the genus field.
pub fn artin_vector(d: i64, p: u64) -> Result<[i8; 3]> {
    let genus = genus_data(d)?;
    artin_vector_for(&genus, p)
}

pub fn artin_vector_for(genus: &GenusData, p: u64) -> Result<[i8; 3]> {
    let d = genus.disc;
    if p == 2 || d.unsigned_abs() % p == 0 {
        return Err(Error::WrongSplitting { disc: d, p, kind: "ramified" });
    }
    if kronecker_symbol(d, p as i64)? != 1 {
        return Err(Error::WrongSplitting { disc: d, p, kind: "inert" });
    }
    let mut v = [0i8; 3];
    for (slot, &pd) in v.iter_mut().zip(genus.prime_discriminants.iter()) {
        *slot = kronecker_symbol(pd, p as i64)?;
    }
    Ok(v)
}
