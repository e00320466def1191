//! Expected table of endomorphism algebras, per-row diffing, the JSON
//! record format with its on-disk cache, and the full classification of
//! geometric endomorphism algebras of geometrically split abelian surfaces
//! over `Q`.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{discriminants_with_class_group, is_exceptional, GroupStructure};
use crate::nakamura::{biquad_triple, compute_all, BiquadTriple, Decomposition, GrossClassResult};

pub const SCHEMA: &str = "qsplit/1";
pub const CACHE_ENV: &str = "QSPLIT_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table1Row {
    pub disc: i64,
    /// Generators `(n1, n2)` of the four biquadratic fields as printed.
    pub biquadratics: [(i64, i64); 4],
    pub quaternions: [u64; 4],
}

/// Expected rows, including the corrected `(-14, 42)` entry for `-84`.
pub const TABLE1: [Table1Row; 23] = [
    row(-84, [(-14, -2), (-6, 2), (-6, -42), (-14, 42)], [2, 1, 2, 1]),
    row(-120, [(-5, 10), (5, -10), (-5, -10), (5, 10)], [1, 6, 3, 1]),
    row(-132, [(22, -2), (-6, -2), (6, -66), (-22, -66)], [1, 2, 1, 2]),
    row(-168, [(-14, -2), (3, -21), (14, 21), (-3, 2)], [2, 1, 1, 1]),
    row(-195, [(13, -5), (-13, -5), (-13, 5), (13, 5)], [13, 39, 26, 39]),
    row(-228, [(-38, -2), (6, -2), (-6, -114), (38, -114)], [2, 1, 2, 1]),
    row(-280, [(-10, -5), (-10, 5), (10, -5), (10, 5)], [2, 1, 14, 14]),
    row(-312, [(13, -26), (-13, 26), (-13, -26), (13, 26)], [13, 39, 26, 39]),
    row(-372, [(-62, 31), (-6, -3), (-6, 31), (-62, -3)], [2, 1, 2, 1]),
    row(-408, [(-17, 34), (-17, -34), (17, -34), (17, 34)], [2, 1, 1, 1]),
    row(-435, [(-29, -5), (-29, 5), (29, -5), (29, 5)], [2, 1, 1, 1]),
    row(-483, [(-23, 7), (23, -69), (-21, -7), (21, 69)], [2, 1, 1, 1]),
    row(-520, [(-13, -5), (13, -5), (-13, 5), (13, 5)], [1, 1, 1, 2]),
    row(-532, [(-38, -19), (-14, 7), (-14, -19), (-38, 7)], [1, 2, 1, 2]),
    row(-555, [(37, -5), (-37, -5), (-37, 5), (37, 5)], [37, 111, 74, 111]),
    row(-595, [(-17, 85), (17, -85), (-17, -85), (17, 85)], [7, 1, 1, 14]),
    row(-627, [(19, -11), (-19, -57), (-33, 11), (33, 57)], [1, 2, 1, 1]),
    row(-708, [(118, -59), (-6, 3), (6, -59), (-118, 3)], [1, 2, 1, 2]),
    row(-715, [(-13, -65), (13, -65), (-13, 65), (13, 65)], [5, 10, 55, 55]),
    row(-760, [(-10, 5), (10, -5), (-10, -5), (10, 5)], [5, 95, 10, 95]),
    row(-795, [(-53, -5), (53, -5), (-53, 5), (53, 5)], [6, 1, 1, 3]),
    row(-1012, [(-46, 23), (-22, -11), (-22, 23), (-46, -11)], [2, 1, 2, 1]),
    row(-1435, [(-41, 205), (-41, -205), (41, -205), (41, 205)], [2, 1, 1, 1]),
];

const fn row(disc: i64, biquadratics: [(i64, i64); 4], quaternions: [u64; 4]) -> Table1Row {
    Table1Row { disc, biquadratics, quaternions }
}

/// Discriminants with class group `C2 x C2` admitting an abelian surface
/// over `Q` geometrically isogenous to the square of a CM curve.
pub const ADMISSIBLE_KLEIN: [i64; 18] =
    [-84, -120, -132, -168, -228, -280, -372, -408, -435, -483, -520, -532, -595, -627, -708, -795, -1012, -1435];

/// Those that do not (including the exceptional `-340`).
pub const EXCLUDED_KLEIN: [i64; 6] = [-195, -312, -340, -555, -715, -760];

impl Table1Row {
    pub fn sorted_biquadratics(&self) -> Result<Vec<BiquadTriple>> {
        let mut v: Vec<BiquadTriple> = self.biquadratics.iter().map(|&(a, b)| biquad_triple(a, b)).collect::<Result<_>>()?;
        v.sort();
        Ok(v)
    }

    pub fn sorted_quaternions(&self) -> Vec<u64> {
        let mut v = self.quaternions.to_vec();
        v.sort_unstable();
        v
    }
}

pub fn table1_row(disc: i64) -> Option<&'static Table1Row> {
    TABLE1.iter().find(|r| r.disc == disc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDiff {
    pub disc: i64,
    pub biquadratics_match: bool,
    pub quaternions_match: bool,
    pub expected_biquadratics: Vec<BiquadTriple>,
    pub computed_biquadratics: Vec<BiquadTriple>,
    pub expected_quaternions: Vec<u64>,
    pub computed_quaternions: Vec<u64>,
}

impl RowDiff {
    pub fn is_clean(&self) -> bool {
        self.biquadratics_match && self.quaternions_match
    }
}

impl fmt::Display for RowDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "{}: ok", self.disc);
        }
        write!(f, "{}:", self.disc)?;
        if !self.biquadratics_match {
            write!(f, " biquadratics expected {:?} got {:?};", self.expected_biquadratics, self.computed_biquadratics)?;
        }
        if !self.quaternions_match {
            write!(f, " quaternions expected {:?} got {:?};", self.expected_quaternions, self.computed_quaternions)?;
        }
        Ok(())
    }
}

/// Multiset comparison of a computed row against the expected table.
pub fn diff_row(result: &GrossClassResult) -> Result<RowDiff> {
    let expected = table1_row(result.disc).ok_or_else(|| Error::Unsupported(format!("{} is not a table row", result.disc)))?;
    let expected_biquadratics = expected.sorted_biquadratics()?;
    let expected_quaternions = expected.sorted_quaternions();
    let computed_biquadratics = result.sorted_biquadratics();
    let computed_quaternions = result.sorted_quaternion_discs();
    Ok(RowDiff {
        disc: result.disc,
        biquadratics_match: expected_biquadratics == computed_biquadratics,
        quaternions_match: expected_quaternions == computed_quaternions,
        expected_biquadratics,
        computed_biquadratics,
        expected_quaternions,
        computed_quaternions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRecord {
    pub subfield: u8,
    pub u: String,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<(u8, String)>,
}

/// Serialized form of a [`GrossClassResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrossRecord {
    pub schema: String,
    pub disc: i64,
    pub biquadratics: Vec<[i64; 3]>,
    pub quaternions: Vec<u64>,
    pub primes: [u64; 2],
    pub delta: DeltaRecord,
}

impl From<&GrossClassResult> for GrossRecord {
    fn from(r: &GrossClassResult) -> Self {
        GrossRecord {
            schema: SCHEMA.to_string(),
            disc: r.disc,
            biquadratics: r.biquadratics.clone(),
            quaternions: r.quaternions.iter().map(|q| q.discriminant()).collect(),
            primes: [r.primes.0, r.primes.1],
            delta: DeltaRecord {
                subfield: r.delta.subfield,
                u: r.delta.u.to_string(),
                v: r.delta.v.to_string(),
                extra: r.delta.extra.map(|(m, w)| (m, w.to_string())),
            },
        }
    }
}

impl GrossRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: GrossRecord = serde_json::from_str(s).map_err(|e| Error::Internal(format!("bad record: {e}")))?;
        if rec.schema != SCHEMA {
            return Err(Error::Unsupported(format!("schema {}", rec.schema)));
        }
        Ok(rec)
    }

    pub fn has_split_quaternion(&self) -> bool {
        self.quaternions.contains(&1)
    }
}

/// File store of records, one file per discriminant and code version.
#[derive(Debug, Clone)]
pub struct ResultCache {
    pub dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache { dir: dir.into() }
    }

    /// `$QSPLIT_CACHE_DIR`, else the platform temp dir.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("qsplit-cache"));
        Self::new(dir)
    }

    pub fn path_for(&self, disc: i64) -> PathBuf {
        let schema = SCHEMA.replace('/', "-");
        self.dir.join(format!("{schema}-v{}-d{}.json", env!("CARGO_PKG_VERSION"), disc.unsigned_abs()))
    }

    pub fn load(&self, disc: i64) -> Option<GrossRecord> {
        let text = fs::read_to_string(self.path_for(disc)).ok()?;
        GrossRecord::from_json(&text).ok().filter(|r| r.disc == disc)
    }

    /// Write via a temporary file and rename, so concurrent writers never
    /// leave a torn file.
    pub fn store(&self, rec: &GrossRecord) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path_for(rec.disc);
        let tmp = self.dir.join(format!(".{}.{}.tmp", target.file_name().and_then(|n| n.to_str()).unwrap_or("rec"), std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(rec.to_json().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        Ok(target)
    }

    /// Cached record, computing and storing it on a miss.
    pub fn get_or_compute(&self, disc: i64) -> Result<GrossRecord> {
        if let Some(r) = self.load(disc) {
            return Ok(r);
        }
        let rec = GrossRecord::from(&compute_all(disc)?);
        // a read-only cache directory is not fatal
        let _ = self.store(&rec);
        Ok(rec)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algebra {
    /// `Q x Q`
    QxQ,
    /// `Q x M`
    QxM(i64),
    /// `M1 x M2`
    MxM(i64, i64),
    /// `M2(Q)`
    MatQ,
    /// `M2(M)`
    MatM(i64),
}

impl Algebra {
    pub fn is_product(&self) -> bool {
        matches!(self, Algebra::QxQ | Algebra::QxM(_) | Algebra::MxM(..))
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::QxQ => write!(f, "Q x Q"),
            Algebra::QxM(d) => write!(f, "Q x Q(sqrt {d})"),
            Algebra::MxM(a, b) => write!(f, "Q(sqrt {a}) x Q(sqrt {b})"),
            Algebra::MatQ => write!(f, "M2(Q)"),
            Algebra::MatM(d) => write!(f, "M2(Q(sqrt {d}))"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub class_number_one: Vec<i64>,
    pub class_group_c2: Vec<i64>,
    pub klein_admissible: Vec<i64>,
    pub klein_excluded: Vec<i64>,
    pub product_algebras: Vec<Algebra>,
    pub matrix_algebras: Vec<Algebra>,
}

impl ClassificationReport {
    pub fn total(&self) -> usize {
        self.product_algebras.len() + self.matrix_algebras.len()
    }
}

/// Assemble the classification. `records` supplies the computed algebras of
/// every non-exceptional `C2 x C2` discriminant.
pub fn classify_with(records: &[GrossRecord]) -> Result<ClassificationReport> {
    let class_number_one = discriminants_with_class_group(&GroupStructure::trivial(), 200);
    let class_group_c2 = discriminants_with_class_group(&GroupStructure::cyclic(2), 500);
    let klein = discriminants_with_class_group(&GroupStructure::klein(), 1500);

    let mut klein_admissible = Vec::new();
    let mut klein_excluded = Vec::new();
    for &d in &klein {
        let admissible = if is_exceptional(d) {
            false
        } else {
            let rec = records.iter().find(|r| r.disc == d).ok_or_else(|| Error::Internal(format!("no record for {d}")))?;
            rec.has_split_quaternion()
        };
        if admissible { klein_admissible.push(d) } else { klein_excluded.push(d) }
    }
    if klein_admissible != ADMISSIBLE_KLEIN || klein_excluded != EXCLUDED_KLEIN {
        return Err(Error::Internal(format!(
            "admissible C2 x C2 set {klein_admissible:?} differs from the expected {ADMISSIBLE_KLEIN:?}"
        )));
    }

    let mut product_algebras = vec![Algebra::QxQ];
    product_algebras.extend(class_number_one.iter().map(|&d| Algebra::QxM(d)));
    for (i, &a) in class_number_one.iter().enumerate() {
        for &b in &class_number_one[i + 1..] {
            product_algebras.push(Algebra::MxM(a, b));
        }
    }
    let mut matrix_algebras = vec![Algebra::MatQ];
    matrix_algebras.extend(class_number_one.iter().chain(&class_group_c2).chain(&klein_admissible).map(|&d| Algebra::MatM(d)));

    Ok(ClassificationReport { class_number_one, class_group_c2, klein_admissible, klein_excluded, product_algebras, matrix_algebras })
}

/// Records for every non-exceptional `C2 x C2` discriminant, in ascending `|D|`.
pub fn compute_records(cache: Option<&ResultCache>) -> Result<Vec<GrossRecord>> {
    discriminants_with_class_group(&GroupStructure::klein(), 1500)
        .into_iter()
        .filter(|&d| !is_exceptional(d))
        .map(|d| match cache {
            Some(c) => c.get_or_compute(d),
            None => compute_all(d).map(|r| GrossRecord::from(&r)),
        })
        .collect()
}

pub fn classify(cache: Option<&ResultCache>) -> Result<ClassificationReport> {
    classify_with(&compute_records(cache)?)
}

pub fn decomposition_of(record: &GrossRecord) -> Decomposition {
    if record.has_split_quaternion() { Decomposition::A4 } else { Decomposition::W2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_consistent() {
        assert_eq!(TABLE1.len(), 23);
        for r in &TABLE1 {
            assert!(!is_exceptional(r.disc));
            assert_eq!(r.sorted_biquadratics().unwrap().len(), 4);
            let split = r.quaternions.contains(&1);
            assert_eq!(split, ADMISSIBLE_KLEIN.contains(&r.disc));
        }
        let row = table1_row(-84).unwrap();
        assert!(row.biquadratics.contains(&(-14, 42)));
    }

    #[test]
    fn record_round_trip_and_cache() {
        let r = compute_all(-84).unwrap();
        let rec = GrossRecord::from(&r);
        let mut q = rec.quaternions.clone();
        q.sort_unstable();
        assert_eq!(q, vec![1, 1, 2, 2]);
        assert_eq!(rec.primes, [5, 11]);
        assert_eq!((rec.delta.subfield, rec.delta.u.as_str(), rec.delta.v.as_str()), (1, "0", "-1"));
        let json = rec.to_json();
        assert!(json.starts_with("{\n  \"schema\": \"qsplit/1\""));
        assert_eq!(GrossRecord::from_json(&json).unwrap(), rec);

        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path());
        assert!(cache.load(-84).is_none());
        let stored = cache.get_or_compute(-84).unwrap();
        assert_eq!(stored, rec);
        let text = fs::read_to_string(cache.path_for(-84)).unwrap();
        assert_eq!(text, json);
        assert_eq!(cache.load(-84).unwrap(), rec);
        assert!(GrossRecord::from_json(&json.replace("qsplit/1", "qsplit/0")).is_err());
    }

    #[test]
    fn classification_counts_from_expected_rows() {
        let records: Vec<GrossRecord> = TABLE1
            .iter()
            .map(|r| GrossRecord {
                schema: SCHEMA.into(),
                disc: r.disc,
                biquadratics: r.sorted_biquadratics().unwrap(),
                quaternions: r.quaternions.to_vec(),
                primes: [0, 0],
                delta: DeltaRecord { subfield: 0, u: "0".into(), v: "0".into(), extra: None },
            })
            .collect();
        let rep = classify_with(&records).unwrap();
        assert_eq!(rep.product_algebras.len(), 46);
        assert_eq!(rep.matrix_algebras.len(), 46);
        assert_eq!(rep.total(), 92);
        assert!(rep.product_algebras.iter().all(Algebra::is_product));
        assert!(!rep.matrix_algebras.iter().any(Algebra::is_product));
    }
}
