//! Finite 2-cocycles on small groups with trivial action, and the
//! square-class arithmetic attached to Klein class groups.
//!
//! Values live either in `{+-1}` or in `M^x / +-(M^x)^2`. Groups are given
//! by multiplication tables on `0..n`.

use std::collections::BTreeMap;

use crate::arith::{is_prime, prime_divisors, rational};
use crate::forms::{artin_vector, class_group, is_exceptional};
use crate::quad::{prime_above, splitting_type, QElement, QIdeal, SplittingType, SquareClass};
use crate::{Error, Result};

/// Largest group handled by the exhaustive coboundary search.
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;
pub const DEFAULT_CONIC_BOUND: i64 = 200;
pub const CONIC_BOUND_CAP: i64 = 1600;
/// The `(a, b)` pairs over `Q(sqrt -85)` whose algebras must split.
pub const CLAIM_ALGEBRAS: [(i64, i64); 3] = [(85, 5), (85, 17), (17, 5)];
pub const CLAIM_DISC: i64 = -340;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl SmallGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty group"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not n x n over 0..n"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::InvalidGroup("no identity"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup("not associative"));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or(Error::InvalidGroup("missing inverse"))?;
            inverses.push(inv);
        }
        Ok(SmallGroup { names, table, identity, inverses })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let names = (0..n).map(|i| format!("s^{i}")).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(names, table)
    }

    /// `(Z/2)^rank`, elements as bitmasks.
    pub fn elementary_abelian(rank: u32) -> Result<Self> {
        let n = 1usize << rank;
        let names = (0..n).map(|i| format!("e{i:0w$b}", w = rank as usize)).collect();
        let table = (0..n).map(|i| (0..n).map(|j| i ^ j).collect()).collect();
        Self::from_table(names, table)
    }

    pub fn klein() -> Self {
        Self::elementary_abelian(2).expect("klein table is valid")
    }

    /// Dihedral group of order `2m`; element `k + m e` is `s^k t^e`, with
    /// `t s t = s^-1`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("dihedral of order 0"));
        }
        let n = 2 * m;
        let names = (0..n).map(|i| if i < m { format!("s^{i}") } else { format!("s^{} t", i - m) }).collect();
        let mut table = vec![vec![0; n]; n];
        for (x, row) in table.iter_mut().enumerate() {
            let (a, e) = (x % m, x / m);
            for (y, out) in row.iter_mut().enumerate() {
                let (b, f) = (y % m, y / m);
                // s^a t^e s^b t^f = s^(a +- b) t^(e+f)
                let k = if e == 0 { (a + b) % m } else { (a + m - b) % m };
                *out = k + m * ((e + f) % 2);
            }
        }
        Self::from_table(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Coefficients with trivial group action.
pub trait CocycleValue: Clone {
    fn mul(&self, other: &Self) -> Self;
    fn equiv(&self, other: &Self) -> bool;
    fn is_one(&self) -> bool;
}

impl CocycleValue for i8 {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn equiv(&self, other: &Self) -> bool {
        self == other
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl CocycleValue for SquareClass {
    fn mul(&self, other: &Self) -> Self {
        SquareClass::new(&self.rep * &other.rep, self.modulo_sign || other.modulo_sign)
            .expect("product of nonzero classes is nonzero")
    }
    fn equiv(&self, other: &Self) -> bool {
        self.same_class(other)
    }
    fn is_one(&self) -> bool {
        self.rep.sqrt().is_some() || (self.modulo_sign && (-&self.rep).sqrt().is_some())
    }
}

#[derive(Debug, Clone)]
pub struct TwoCocycle<V> {
    pub group: SmallGroup,
    /// `values[s * n + t] = c(s, t)`.
    values: Vec<V>,
}

impl<V: CocycleValue> TwoCocycle<V> {
    pub fn new(group: SmallGroup, values: Vec<V>) -> Result<Self> {
        if values.len() != group.order() * group.order() {
            return Err(Error::InvalidGroup("cocycle needs one value per pair"));
        }
        Ok(TwoCocycle { group, values })
    }

    pub fn from_fn(group: SmallGroup, mut f: impl FnMut(usize, usize) -> V) -> Self {
        let n = group.order();
        let values = (0..n * n).map(|k| f(k / n, k % n)).collect();
        TwoCocycle { group, values }
    }

    pub fn c(&self, s: usize, t: usize) -> &V {
        &self.values[s * self.group.order() + t]
    }

    pub fn set(&mut self, s: usize, t: usize, v: V) {
        let n = self.group.order();
        self.values[s * n + t] = v;
    }

    pub fn is_normalized(&self) -> bool {
        let e = self.group.identity();
        (0..self.group.order()).all(|s| self.c(e, s).is_one() && self.c(s, e).is_one())
    }
}

/// Cocycle identity `c(t,r) c(st,r)^-1 c(s,tr) c(s,t)^-1 = 1` for every
/// triple (trivial action), together with normalization.
pub fn verify_cocycle<V: CocycleValue>(c: &TwoCocycle<V>) -> bool {
    let g = &c.group;
    let n = g.order();
    if !c.is_normalized() {
        return false;
    }
    for s in 0..n {
        for t in 0..n {
            for r in 0..n {
                let lhs = c.c(t, r).mul(c.c(s, g.mul(t, r)));
                let rhs = c.c(g.mul(s, t), r).mul(c.c(s, t));
                if !lhs.equiv(&rhs) {
                    return false;
                }
            }
        }
    }
    true
}

/// `(df)(s,t) = f(s) f(t) / f(st)` for a `+-1` cochain.
pub fn coboundary(group: &SmallGroup, f: &[i8]) -> TwoCocycle<i8> {
    TwoCocycle::from_fn(group.clone(), |s, t| f[s] * f[t] * f[group.mul(s, t)])
}

/// A normalized `+-1` cochain whose coboundary is `c`, if any.
pub fn is_coboundary_pm1(c: &TwoCocycle<i8>) -> Result<Option<Vec<i8>>> {
    let g = &c.group;
    let n = g.order();
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::Unsupported(format!("exhaustive coboundary search on a group of order {n}")));
    }
    let e = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    for bits in 0u32..(1 << others.len()) {
        let mut f = vec![1i8; n];
        for (k, &x) in others.iter().enumerate() {
            if bits >> k & 1 == 1 {
                f[x] = -1;
            }
        }
        let d = coboundary(g, &f);
        if d.values == c.values {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Element of the Klein class group attached to a split prime: bit `i`
/// set when the prime is inert in `Q(sqrt r_i)` for the first two genus
/// radicands.
pub fn class_mask(d: i64, p: u64) -> Result<usize> {
    let v = artin_vector(d, p)?;
    Ok(usize::from(v[0] == -1) | usize::from(v[1] == -1) << 1)
}

fn check_klein_scope(disc: i64) -> Result<()> {
    let cg = class_group(disc)?;
    if !cg.structure.is_klein() {
        return Err(Error::WrongClassGroup { disc, structure: cg.structure.to_string() });
    }
    if is_exceptional(disc) {
        return Err(Error::Exceptional(disc));
    }
    Ok(())
}

/// Degree datum of one class.
#[derive(Debug, Clone)]
pub struct DegreeEntry {
    pub mask: usize,
    /// Smallest split rational prime whose primes lie in the class.
    pub prime: u64,
    pub ideal: QIdeal,
    /// Generator of `ideal^2`.
    pub alpha: QElement,
    /// Smallest positive divisor of `D`, not `+-` a square in `M`, with
    /// `+-d alpha` a square; `None` if there is none.
    pub d: Option<i64>,
}

/// Positive squarefree divisors of `|D|` other than 1 whose class is not
/// trivial modulo `+-(M^x)^2`, ascending.
pub fn nonsquare_divisors(disc: i64) -> Result<Vec<i64>> {
    let ps = prime_divisors(disc.unsigned_abs());
    let one = QElement::one(disc);
    let mut out = Vec::new();
    for bits in 1u32..(1 << ps.len()) {
        let d: i64 = ps.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &p)| p as i64).product();
        if !crate::quad::square_class_test(&one, &rational(d), true)? {
            out.push(d);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// For each nontrivial class of the Klein class group, the smallest split
/// prime in it, the generator of its square and the matching divisor of `D`.
/// Entries are ordered by mask `1, 2, 3`.
pub fn degree_component(disc: i64) -> Result<Vec<DegreeEntry>> {
    check_klein_scope(disc)?;
    let divisors = nonsquare_divisors(disc)?;
    let mut found: BTreeMap<usize, DegreeEntry> = BTreeMap::new();
    let mut p = 2u64;
    while found.len() < 3 {
        if p > crate::nakamura::PRIME_SEARCH_BOUND {
            return Err(Error::PrimeSearchExhausted(p));
        }
        if is_prime(p) && splitting_type(disc, p)? == SplittingType::Split {
            let mask = class_mask(disc, p)?;
            if mask != 0 && !found.contains_key(&mask) {
                let ideal = prime_above(disc, p)?.prime;
                let alpha = ideal
                    .pow(2)?
                    .principal_generator()?
                    .ok_or_else(|| Error::Internal(format!("square of a prime above {p} is not principal")))?;
                let mut d = None;
                for &cand in &divisors {
                    if crate::quad::square_class_test(&alpha, &rational(cand), true)? {
                        d = Some(cand);
                        break;
                    }
                }
                found.insert(mask, DegreeEntry { mask, prime: p, ideal, alpha, d });
            }
        }
        p += 1;
    }
    Ok(found.into_values().collect())
}

/// Whether `d_s d_t` and `d_st` agree modulo `+-(M^x)^2` for all classes.
pub fn degree_is_homomorphism(disc: i64, entries: &[DegreeEntry]) -> Result<bool> {
    let d_of = |mask: usize| -> Option<i64> {
        if mask == 0 { Some(1) } else { entries.iter().find(|e| e.mask == mask).and_then(|e| e.d) }
    };
    for s in 1..4usize {
        for t in 1..4usize {
            let (Some(ds), Some(dt), Some(dst)) = (d_of(s), d_of(t), d_of(s ^ t)) else {
                return Ok(false);
            };
            if !crate::quad::square_class_test(&QElement::from_ints(disc, ds * dt, 0), &rational(dst), true)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cocycle on the Klein class group built from the ideal representatives
/// `a_s` of [`degree_component`]: `c(s,t)` generates `a_s a_t a_st^-1`.
/// Values are square classes modulo sign.
pub fn ideal_cocycle(disc: i64) -> Result<TwoCocycle<SquareClass>> {
    let entries = degree_component(disc)?;
    let mut reps = vec![QIdeal::unit(disc); 4];
    for e in &entries {
        reps[e.mask] = e.ideal.clone();
    }
    let group = SmallGroup::klein();
    let mut values = Vec::with_capacity(16);
    for s in 0..4usize {
        for t in 0..4usize {
            let st = s ^ t;
            let ideal = reps[s].mul(&reps[t])?.mul(&reps[st].conj())?;
            let gen = ideal
                .principal_generator()?
                .ok_or_else(|| Error::Internal(format!("cocycle ideal {ideal} is not principal")))?;
            let val = gen.scale(&rational(reps[st].norm() as i64).recip());
            values.push(SquareClass::new(val, true)?);
        }
    }
    TwoCocycle::new(group, values)
}

#[derive(Debug, Clone)]
pub struct LemmaEntry {
    pub mask: usize,
    pub prime: u64,
    pub d: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub disc: i64,
    pub entries: Vec<LemmaEntry>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.entries.len() == 3 && self.entries.iter().all(|e| e.d.is_some())
    }
}

/// For every nontrivial class, checks that the diagonal cocycle value
/// `c(s,s)` is `+-d` times a square for a divisor `d` of `D` that is not
/// itself `+-` a square in `M`.
pub fn lemma_p_mid_d_check(disc: i64) -> Result<LemmaReport> {
    let cocycle = ideal_cocycle(disc)?;
    let divisors = nonsquare_divisors(disc)?;
    let mut entries = Vec::new();
    for e in degree_component(disc)? {
        let diag = &cocycle.c(e.mask, e.mask).rep;
        let mut d = None;
        for &cand in &divisors {
            if crate::quad::square_class_test(diag, &rational(cand), true)? {
                d = Some(cand);
                break;
            }
        }
        entries.push(LemmaEntry { mask: e.mask, prime: e.prime, d });
    }
    Ok(LemmaReport { disc, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralCheck {
    /// `2 | D` for `r = 4`, `3 | D` for `r = 6`.
    pub divides: bool,
    /// Some nontrivial class has degree component `+-q` modulo squares,
    /// `q = 2` or `3`.
    pub degree_class_found: bool,
}

impl DihedralCheck {
    pub fn holds(&self) -> bool {
        self.divides && self.degree_class_found
    }
}

/// Necessary condition for a dihedral `Gal(K/M)` of order `2r`.
pub fn dihedral_divisibility_check(disc: i64, r: u32) -> Result<DihedralCheck> {
    let q: i64 = match r {
        4 => 2,
        6 => 3,
        _ => return Err(Error::Unsupported(format!("dihedral order 2*{r}"))),
    };
    if is_exceptional(disc) {
        return Err(Error::Exceptional(disc));
    }
    let divides = disc % q == 0;
    let mut degree_class_found = false;
    for e in degree_component(disc)? {
        if crate::quad::square_class_test(&e.alpha, &rational(q), true)? {
            degree_class_found = true;
        }
    }
    Ok(DihedralCheck { divides, degree_class_found })
}

/// Nonzero solution of `z^2 = a x^2 + b y^2` over `O_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicWitness {
    pub a: i64,
    pub b: i64,
    pub x: QElement,
    pub y: QElement,
    pub z: QElement,
    /// Largest absolute coordinate of `x, y` over `{1, omega}`.
    pub height: i64,
}

impl ConicWitness {
    pub fn verify(&self) -> bool {
        let lhs = &self.z * &self.z;
        let rhs = &(&self.x * &self.x).scale(&rational(self.a)) + &(&self.y * &self.y).scale(&rational(self.b));
        lhs == rhs && !(self.x.is_zero() && self.y.is_zero() && self.z.is_zero())
    }
}

/// `0, 1, -1, 2, -2, ...`
fn ordered_values(h: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=h).flat_map(|k| [k, -k]))
}

// u + v omega as plain integers; omega^2 = t omega - n
#[derive(Clone, Copy)]
struct IntBasis {
    t: i128,
    n: i128,
}

impl IntBasis {
    fn new(disc: i64) -> Self {
        let t = disc.rem_euclid(2) as i128;
        IntBasis { t, n: (t - disc as i128) / 4 }
    }
    fn mul(&self, a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
        let w2 = a.1 * b.1;
        (a.0 * b.0 - self.n * w2, a.0 * b.1 + a.1 * b.0 + self.t * w2)
    }
    fn norm(&self, a: (i128, i128)) -> i128 {
        a.0 * a.0 + self.t * a.0 * a.1 + self.n * a.1 * a.1
    }
}

fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(1)..=r + 1).any(|k| k >= 0 && k * k == n)
}

/// Searches heights `from..=bound` in increasing order, tuples within a
/// height in lexicographic `(y1, y0, x1, x0)` order over `0, 1, -1, ...`.
fn conic_search(a: i64, b: i64, disc: i64, from: i64, bound: i64) -> Option<ConicWitness> {
    let basis = IntBasis::new(disc);
    let (a, b) = (a as i128, b as i128);
    for h in from..=bound {
        for y1 in ordered_values(h) {
            for y0 in ordered_values(h) {
                for x1 in ordered_values(h) {
                    for x0 in ordered_values(h) {
                        let m = x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs());
                        if m != h || (h == 0) {
                            continue;
                        }
                        let (x, y) = ((x0 as i128, x1 as i128), (y0 as i128, y1 as i128));
                        let x2 = basis.mul(x, x);
                        let y2 = basis.mul(y, y);
                        let rhs = (a * x2.0 + b * y2.0, a * x2.1 + b * y2.1);
                        if !is_square_i128(basis.norm(rhs)) {
                            continue;
                        }
                        let rhs_el = QElement::from_coords(disc, rhs.0, rhs.1);
                        if let Some(z) = rhs_el.sqrt() {
                            let w = ConicWitness {
                                a: a as i64,
                                b: b as i64,
                                x: QElement::from_coords(disc, x.0, x.1),
                                y: QElement::from_coords(disc, y.0, y.1),
                                z,
                                height: h,
                            };
                            if w.z.is_integral() && w.verify() {
                                return Some(w);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// First witness of height at most `bound`; `None` is inconclusive.
pub fn conic_witness(a: i64, b: i64, disc: i64, bound: i64) -> Result<Option<ConicWitness>> {
    if a == 0 || b == 0 {
        return Err(Error::Zero);
    }
    if bound < 0 {
        return Err(Error::Unsupported(format!("negative search bound {bound}")));
    }
    Ok(conic_search(a, b, disc, 1, bound))
}

/// [`conic_witness`] at the default bound, doubled on a miss up to the cap.
pub fn conic_witness_auto(a: i64, b: i64, disc: i64) -> Result<Option<ConicWitness>> {
    if a == 0 || b == 0 {
        return Err(Error::Zero);
    }
    let mut from = 1;
    let mut bound = DEFAULT_CONIC_BOUND;
    loop {
        if let Some(w) = conic_search(a, b, disc, from, bound) {
            return Ok(Some(w));
        }
        if bound >= CONIC_BOUND_CAP {
            return Ok(None);
        }
        from = bound + 1;
        bound = (2 * bound).min(CONIC_BOUND_CAP);
    }
}

/// Witnesses for the three algebras over `Q(sqrt -85)`, in order.
pub fn claim_witnesses() -> Result<Vec<Option<ConicWitness>>> {
    CLAIM_ALGEBRAS.iter().map(|&(a, b)| conic_witness(a, b, CLAIM_DISC, DEFAULT_CONIC_BOUND)).collect()
}

/// Diagonal values `c(s,s)` of a `+-1` cocycle, for reading off which
/// elements lift to order 4.
pub fn diagonal_signs(c: &TwoCocycle<i8>) -> Vec<i8> {
    (0..c.group.order()).map(|s| *c.c(s, s)).collect()
}

/// The class of `c(s,s)` is trivial in `M^x / (M^x)^2`, sign allowed.
pub fn diagonal_is_pm_square(c: &TwoCocycle<SquareClass>, s: usize) -> bool {
    let v = &c.c(s, s).rep;
    !v.is_zero() && (v.sqrt().is_some() || (-v).sqrt().is_some())
}
