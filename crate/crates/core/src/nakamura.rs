//! The eight endomorphism algebras of the restrictions of scalars of Gross
//! Q-curves over `M` with class group `C2 x C2`: four biquadratic fields
//! and four quaternion algebras over `Q`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{kronecker_symbol, primes_up_to, quaternion_ramification, squarefree_part_int, RamifiedSet};
use crate::error::{Error, Result};
use crate::forms::{genus_data, is_exceptional, GenusData};
use crate::hecke::{n_value, HeckeSpec};
use crate::multiquad::{find_delta, DeltaSpec, GalElem, GalStructure, MultiQuadField, RelQuadExt};

pub const DEFAULT_DELTA_BOUND: i64 = 60;
pub const PRIME_SEARCH_BOUND: u64 = 10_000;

/// Biquadratic field as its three nontrivial square classes, sorted by
/// `(sign, |n|)`.
pub type BiquadTriple = [i64; 3];

pub fn biquad_triple(n1: i64, n2: i64) -> Result<BiquadTriple> {
    let mut t = [n1, n2, squarefree_part_int(n1 * n2)?];
    t.sort_by_key(|x| (x.signum(), x.abs()));
    if t[0] == t[1] || t[1] == t[2] || t.contains(&1) {
        return Err(Error::Internal(format!("({n1}, {n2}) does not give a biquadratic field")));
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndoAlgebra {
    Biquadratic(BiquadTriple),
    Quaternion(RamifiedSet),
}

impl fmt::Display for EndoAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoAlgebra::Biquadratic(t) => write!(f, "Q(sqrt {}, sqrt {})", t[0], t[1]),
            EndoAlgebra::Quaternion(r) if r.is_split() => write!(f, "M2(Q)"),
            EndoAlgebra::Quaternion(r) => write!(f, "quaternion algebra of discriminant {}", r.discriminant()),
        }
    }
}

/// Which of the admissible choices to use: the `delta_skip`-th `delta` of the
/// search and the `prime_skip`-th admissible prime pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Choices {
    pub delta_skip: usize,
    pub prime_skip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFields {
    /// Frobenius as a Galois element of `H`.
    pub frobenius: GalElem,
    /// Masks of the three quadratic subfields of `L`.
    pub l_subfields: Vec<u8>,
    /// Mask of the real quadratic subfield `F` of `L`.
    pub f_mask: u8,
}

/// Per-character data behind one quaternion algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionData {
    pub spec: HeckeSpec,
    pub n: [i64; 2],
    pub structure: [GalStructure; 2],
    pub abelian_over_f: [bool; 2],
    pub t: [i64; 2],
    pub algebra: RamifiedSet,
}

#[derive(Debug, Clone)]
pub struct GrossClassResult {
    pub disc: i64,
    /// In character order `(a, b) = (0,0), (1,0), (0,1), (1,1)`.
    pub biquadratics: Vec<BiquadTriple>,
    pub quaternions: Vec<RamifiedSet>,
    pub quaternion_data: Vec<QuaternionData>,
    pub primes: (u64, u64),
    pub delta: DeltaSpec,
}

impl GrossClassResult {
    pub fn algebras(&self) -> Vec<EndoAlgebra> {
        self.biquadratics
            .iter()
            .map(|t| EndoAlgebra::Biquadratic(*t))
            .chain(self.quaternions.iter().map(|q| EndoAlgebra::Quaternion(q.clone())))
            .collect()
    }

    pub fn sorted_biquadratics(&self) -> Vec<BiquadTriple> {
        let mut v = self.biquadratics.clone();
        v.sort();
        v
    }

    pub fn sorted_quaternion_discs(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.quaternions.iter().map(RamifiedSet::discriminant).collect();
        v.sort_unstable();
        v
    }

    pub fn has_split_quaternion(&self) -> bool {
        self.quaternions.iter().any(RamifiedSet::is_split)
    }

    /// Same algebras regardless of choices.
    pub fn same_algebras(&self, other: &GrossClassResult) -> bool {
        self.disc == other.disc
            && self.sorted_biquadratics() == other.sorted_biquadratics()
            && self.sorted_quaternion_discs() == other.sorted_quaternion_discs()
    }
}

/// `A4`: some quaternion algebra splits, giving a simple abelian surface;
/// `W2`: none does, giving a simple fourfold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decomposition {
    A4,
    W2,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decomposition::A4 => write!(f, "A^4"),
            Decomposition::W2 => write!(f, "W^2"),
        }
    }
}

/// Genus field, the extension `k`, and the Galois data shared by all
/// characters of one discriminant.
#[derive(Debug, Clone)]
pub struct GrossSetup {
    pub genus: GenusData,
    pub field: Arc<MultiQuadField>,
    pub k: RelQuadExt,
}

/// `M = Q(sqrt(m_1 m_2 m_3))` in the radicand basis of `H`.
pub const M_MASK: u8 = 0b111;

pub fn setup(d: i64, delta_skip: usize, bound: i64) -> Result<GrossSetup> {
    if is_exceptional(d) {
        return Err(Error::Exceptional(d));
    }
    let genus = genus_data(d)?;
    let field = MultiQuadField::new(genus.radicands.to_vec())?;
    let k = find_delta(&field, M_MASK, bound, delta_skip)?;
    Ok(GrossSetup { genus, field, k })
}

fn frobenius_mask(v: [i8; 3]) -> GalElem {
    v.iter().enumerate().filter(|(_, s)| **s == -1).fold(0, |acc, (t, _)| acc | 1 << t)
}

fn frobenius_vector(genus: &GenusData, p: u64) -> Result<[i8; 3]> {
    crate::forms::artin_vector_for(genus, p)
}

/// Split primes avoiding `avoid`, with nontrivial Frobenius, in ascending order.
fn candidate_primes<'a>(genus: &'a GenusData, avoid: &'a [u64]) -> impl Iterator<Item = (u64, [i8; 3])> + 'a {
    primes_up_to(PRIME_SEARCH_BOUND).filter_map(move |p| {
        if avoid.contains(&p) || genus.disc % p as i64 == 0 || kronecker_symbol(genus.disc, p as i64).ok()? != 1 {
            return None;
        }
        let v = frobenius_vector(genus, p).ok()?;
        (v != [1, 1, 1]).then_some((p, v))
    })
}

/// The `skip`-th pair `p < q` (lexicographic) of admissible primes whose
/// classes generate the class group.
pub fn choose_primes(genus: &GenusData, avoid: &[u64], skip: usize) -> Result<(u64, u64)> {
    let cands: Vec<(u64, [i8; 3])> = candidate_primes(genus, avoid).collect();
    cands
        .iter()
        .enumerate()
        .flat_map(|(i, a)| cands[i + 1..].iter().filter(move |b| b.1 != a.1).map(move |b| (a.0, b.0)))
        .nth(skip)
        .ok_or(Error::PrimeSearchExhausted(PRIME_SEARCH_BOUND))
}

/// `L`: fixed field of the Frobenius of `p` in `H`; `F`: its real quadratic subfield.
pub fn decomposition_fields(setup: &GrossSetup, p: u64) -> Result<DecompositionFields> {
    let v = frobenius_vector(&setup.genus, p)?;
    let frobenius = frobenius_mask(v);
    if frobenius == 0 {
        return Err(Error::Unsupported(format!("prime {p} has trivial Frobenius in H")));
    }
    let l_subfields: Vec<u8> = (1..8u8).filter(|e| (e & frobenius).count_ones() % 2 == 0).collect();
    let real: Vec<u8> = l_subfields.iter().copied().filter(|&e| e != M_MASK && setup.field.radicand(e) > 0).collect();
    match real.as_slice() {
        [f_mask] => Ok(DecompositionFields { frobenius, l_subfields, f_mask: *f_mask }),
        _ => Err(Error::Internal(format!("L for p = {p} has {} real quadratic subfields", real.len()))),
    }
}

/// `t = n, D n, -n, -D n` according to `Gal(k/L)` and whether `k/F` is abelian.
pub fn t_value(d: i64, n: i64, structure: GalStructure, abelian: bool) -> Result<i64> {
    let t = match (structure, abelian) {
        (GalStructure::C2xC2, true) => n,
        (GalStructure::C2xC2, false) => d * n,
        (GalStructure::C4, true) => -n,
        (GalStructure::C4, false) => -d * n,
    };
    squarefree_part_int(t)
}

pub fn quaternion_for(setup: &GrossSetup, spec: HeckeSpec, primes: (u64, u64)) -> Result<QuaternionData> {
    let d = setup.genus.disc;
    let eta = spec.character()?;
    let mut n = [0i64; 2];
    let mut structure = [GalStructure::C2xC2; 2];
    let mut abelian_over_f = [true; 2];
    let mut t = [0i64; 2];
    for (i, p) in [primes.0, primes.1].into_iter().enumerate() {
        n[i] = n_value(&eta, p)?.n;
        let fields = decomposition_fields(setup, p)?;
        structure[i] = setup.k.gal_structure_over_l(fields.frobenius)?;
        abelian_over_f[i] = setup.k.is_abelian_over(fields.f_mask)?;
        t[i] = t_value(d, n[i], structure[i], abelian_over_f[i])?;
    }
    let algebra = quaternion_ramification(t[0], t[1])?;
    Ok(QuaternionData { spec, n, structure, abelian_over_f, t, algebra })
}

fn label(spec: &HeckeSpec) -> impl FnOnce(Error) -> Error + '_ {
    move |e| Error::Labelled { label: spec.label(), source: Box::new(e) }
}

pub fn compute_with(d: i64, choices: Choices) -> Result<GrossClassResult> {
    let setup = setup(d, choices.delta_skip, DEFAULT_DELTA_BOUND)?;
    let mut avoid: Vec<u64> = setup.k.support();
    avoid.extend(crate::arith::prime_divisors(d.unsigned_abs()));
    let primes = choose_primes(&setup.genus, &avoid, choices.prime_skip)?;

    let specs = HeckeSpec::enumerate(d);
    let mut biquadratics = Vec::with_capacity(4);
    let mut quaternion_data = Vec::with_capacity(4);
    for spec in &specs {
        if spec.twist {
            quaternion_data.push(quaternion_for(&setup, *spec, primes).map_err(label(spec))?);
        } else {
            let run = || -> Result<BiquadTriple> {
                let eta = spec.character()?;
                biquad_triple(n_value(&eta, primes.0)?.n, n_value(&eta, primes.1)?.n)
            };
            biquadratics.push(run().map_err(label(spec))?);
        }
    }
    let quaternions = quaternion_data.iter().map(|q| q.algebra.clone()).collect();
    let delta = setup.k.spec.clone().ok_or_else(|| Error::Internal("delta without search record".into()))?;
    Ok(GrossClassResult { disc: d, biquadratics, quaternions, quaternion_data, primes, delta })
}

pub fn compute_all(d: i64) -> Result<GrossClassResult> {
    compute_with(d, Choices::default())
}

pub fn decomposition_report(result: &GrossClassResult) -> Decomposition {
    if result.has_split_quaternion() { Decomposition::A4 } else { Decomposition::W2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples() {
        assert_eq!(biquad_triple(-14, -2).unwrap(), [-2, -14, 7]);
        assert_eq!(biquad_triple(-14, 42).unwrap(), [-3, -14, 42]);
        assert!(biquad_triple(5, 5).is_err());
        assert!(biquad_triple(5, 20).is_err());
    }

    #[test]
    fn t_rules() {
        assert_eq!(t_value(-84, 2, GalStructure::C2xC2, true).unwrap(), 2);
        assert_eq!(t_value(-84, 2, GalStructure::C2xC2, false).unwrap(), -42);
        assert_eq!(t_value(-84, 2, GalStructure::C4, true).unwrap(), -2);
        assert_eq!(t_value(-84, 6, GalStructure::C4, false).unwrap(), 14);
    }

    #[test]
    fn prime_choice_minus_84() {
        let s = setup(-84, 0, DEFAULT_DELTA_BOUND).unwrap();
        let mut avoid = s.k.support();
        avoid.extend([2, 3, 7]);
        assert_eq!(choose_primes(&s.genus, &avoid, 0).unwrap(), (5, 11));
        let (p, q) = choose_primes(&s.genus, &avoid, 1).unwrap();
        assert_ne!(frobenius_vector(&s.genus, p).unwrap(), frobenius_vector(&s.genus, q).unwrap());
    }

    #[test]
    fn decomposition_fields_contain_m() {
        let s = setup(-340, 0, 8).err();
        assert_eq!(s, Some(Error::Exceptional(-340)));
        let s = setup(-84, 0, DEFAULT_DELTA_BOUND).unwrap();
        for p in [5u64, 11, 17] {
            let f = decomposition_fields(&s, p).unwrap();
            assert!(f.l_subfields.contains(&M_MASK));
            assert_eq!(f.l_subfields.len(), 3);
            assert!(s.field.radicand(f.f_mask) > 0);
            assert_eq!(84 % s.field.radicand(f.f_mask), 0);
        }
    }

    #[test]
    fn row_minus_84() {
        let r = compute_all(-84).unwrap();
        assert_eq!(r.primes, (5, 11));
        let mut expected = vec![
            biquad_triple(-14, -2).unwrap(),
            biquad_triple(-6, 2).unwrap(),
            biquad_triple(-6, -42).unwrap(),
            biquad_triple(-14, 42).unwrap(),
        ];
        expected.sort();
        assert_eq!(r.sorted_biquadratics(), expected);
        assert_eq!(r.sorted_quaternion_discs(), vec![1, 1, 2, 2]);
        assert_eq!(r.algebras().len(), 8);
        assert_eq!(decomposition_report(&r), Decomposition::A4);
    }
}
