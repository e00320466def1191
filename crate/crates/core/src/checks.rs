//! Named pass/fail suites over the cocycle, c-representation and conic code.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cocycle::{
    claim_witnesses, degree_component, degree_is_homomorphism, ideal_cocycle, lemma_p_mid_d_check, verify_cocycle,
    CLAIM_ALGEBRAS,
};
use crate::crep::{obstruction_scenario, random_klein_crep, scenario_field, trace_scenario_rho_r, CRep, Cyclo, CycloField, Mat};
use crate::report::TABLE1;
use crate::Result;

pub const CREP_SEED: u64 = 0x5eed_c0c7;
pub const CREP_INSTANCES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => CheckLine::new(name, passed, detail),
            Err(e) => CheckLine::new(name, false, format!("error: {e}")),
        }
    }
}

pub fn all_passed(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.passed)
}

/// Divisor lemma, cocycle identity and degree homomorphism on every row.
pub fn cocycle_suite() -> Vec<CheckLine> {
    let mut out = Vec::new();
    for row in &TABLE1 {
        let d = row.disc;
        out.push(CheckLine::from_result(format!("divisor-lemma {d}"), {
            lemma_p_mid_d_check(d).map(|rep| {
                let ds: Vec<String> = rep
                    .entries
                    .iter()
                    .map(|e| format!("{}:{}", e.prime, e.d.map_or("none".into(), |x| x.to_string())))
                    .collect();
                (rep.passed(), ds.join(" "))
            })
        }));
        out.push(CheckLine::from_result(format!("ideal-cocycle {d}"), {
            ideal_cocycle(d).map(|c| (verify_cocycle(&c), String::new()))
        }));
        out.push(CheckLine::from_result(format!("degree-homomorphism {d}"), {
            degree_component(d).and_then(|e| degree_is_homomorphism(d, &e)).map(|ok| (ok, String::new()))
        }));
    }
    out
}

/// Conic witnesses over `Q(sqrt -85)`.
pub fn claims_suite() -> Vec<CheckLine> {
    match claim_witnesses() {
        Err(e) => vec![CheckLine::new("claims", false, format!("error: {e}"))],
        Ok(ws) => CLAIM_ALGEBRAS
            .iter()
            .zip(ws)
            .map(|(&(a, b), w)| {
                let name = format!("conic ({a}, {b})");
                match w {
                    Some(w) => {
                        let detail = format!("x={} y={} z={}", w.x, w.y, w.z);
                        CheckLine::new(name, w.verify(), detail)
                    }
                    None => CheckLine::new(name, false, "no witness within the bound"),
                }
            })
            .collect(),
    }
}

fn pairwise<F: Fn(usize, usize) -> bool>(n: usize, f: F) -> bool {
    (0..n).all(|s| (0..n).all(|t| f(s, t)))
}

fn crep_random_checks(v: &CRep, w: &CRep, f: &std::sync::Arc<CycloField>) -> Result<[bool; 7]> {
    let n = v.group.order();
    let dual = v.dual()?;
    let tensor = v.tensor(w)?;
    let hom = v.hom(w)?;
    let wv = w.tensor(&dual)?;
    let triv = CRep::trivial(&v.group, f)?;
    Ok([
        v.verify() && w.verify() && dual.verify() && tensor.verify() && hom.verify(),
        v.inverse_identities()? && hom.inverse_identities()?,
        pairwise(n, |s, t| (dual.c(s, t) * v.c(s, t)).is_one()),
        pairwise(n, |s, t| *tensor.c(s, t) == v.c(s, t) * w.c(s, t)),
        pairwise(n, |s, t| hom.c(s, t) * v.c(s, t) == *w.c(s, t)),
        v.hom(v)?.is_honest() && hom.is_isomorphic_via(&wv, &Mat::identity(f, v.dim * w.dim))?,
        v.tensor(&triv)?.is_isomorphic_via(v, &Mat::identity(f, v.dim))?,
    ])
}

/// Random c-representation identities plus the trace and obstruction
/// scenarios.
pub fn crep_suite(instances: usize) -> Vec<CheckLine> {
    const NAMES: [&str; 7] =
        ["defining identity", "inverse identities", "dual cocycle", "tensor cocycle", "hom cocycle", "hom(V,V) honest and hom = W x V*", "tensor with trivial"];
    let mut out = Vec::new();
    let field = match CycloField::new(8) {
        Ok(f) => f,
        Err(e) => return vec![CheckLine::new("crep", false, format!("error: {e}"))],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(CREP_SEED);
    let mut fails = [0usize; 7];
    let mut errors = 0usize;
    for k in 0..instances {
        let pair = random_klein_crep(&mut rng, &field, k % 2 == 1)
            .and_then(|v| random_klein_crep(&mut rng, &field, false).map(|w| (v, w)));
        match pair.and_then(|(v, w)| crep_random_checks(&v, &w, &field)) {
            Ok(res) => {
                for (i, ok) in res.iter().enumerate() {
                    if !ok {
                        fails[i] += 1;
                    }
                }
            }
            Err(_) => errors += 1,
        }
    }
    for (i, name) in NAMES.iter().enumerate() {
        let failed = fails[i] + errors;
        out.push(CheckLine::new(format!("crep {name}"), failed == 0, format!("{failed}/{instances} failed")));
    }
    for r in [1, 2, 3, 4, 6] {
        out.push(CheckLine::from_result(format!("trace r={r}"), {
            trace_scenario_rho_r(r).map(|s| (s.holds(), format!("Tr = {}", s.trace)))
        }));
    }
    for r in [4u32, 6] {
        out.push(CheckLine::from_result(format!("obstruction r={r}"), {
            scenario_field(r).and_then(|f| {
                let alphas = [Cyclo::one(&f), &Cyclo::zeta(&f, 1) + &Cyclo::from_int(&f, 2)];
                let mut ok = true;
                for alpha in &alphas {
                    for w in 0..r {
                        ok &= obstruction_scenario(r, alpha, w)?.holds();
                    }
                }
                Ok((ok, String::new()))
            })
        }));
    }
    out
}
