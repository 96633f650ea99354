//! The fixed verification matrix behind `galela selftest`.
//!
//! Every case is recomputed from scratch and reported as plain JSON values,
//! with no timings, so two runs print identical bytes.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bruckbose::verify_bruckbose;
use crate::combinat::{gaussian_binomial, theta_u64};
use crate::elation::{
    conjugator, count_classes, enumerate_subgroups, enumerated_class_counts, equivalence_classes,
    find_conjugator_exhaustive, no_conjugation_witness, scalar_equivalent, verify_correspondence,
    ElationGroup,
};
use crate::error::Result;
use crate::pspace::{is_cover, SubspaceFamily};
use crate::singer::{orbit_census, predicted_free_orbit_count, predicted_orbit_count, OrbitCensus};

/// `(s, d, q)` for the census criteria.
pub const CENSUS_CASES: [(u32, u32, u64); 9] = [
    (2, 1, 2),
    (3, 1, 2),
    (4, 2, 2),
    (4, 2, 3),
    (6, 2, 2),
    (6, 3, 2),
    (4, 2, 4),
    (2, 1, 8),
    (2, 1, 9),
];

/// `(p, h, m, n)` for the correspondence criterion.
pub const CORRESPONDENCE_CASES: [(u64, u32, u32, u32); 5] = [
    (2, 4, 2, 1),
    (2, 4, 2, 2),
    (2, 6, 2, 1),
    (2, 6, 3, 1),
    (3, 2, 1, 1),
];

/// `(r, p, h, n)` for the field-reduction criterion.
pub const BRUCKBOSE_CASES: [(usize, u64, u32, u32); 4] =
    [(2, 2, 4, 1), (2, 2, 4, 2), (3, 2, 4, 2), (2, 3, 2, 1)];

/// Classification sweep: these primes and degrees, with subgroup counts up to the limit.
pub const CLASSIFICATION_PRIMES: [u64; 2] = [2, 3];
pub const CLASSIFICATION_DEGREES: [u32; 4] = [2, 3, 4, 6];
pub const CLASSIFICATION_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub cases: Vec<Value>,
}

impl Criterion {
    fn from_cases(id: u32, name: &str, cases: Vec<Value>) -> Criterion {
        let pass = cases.iter().all(|c| c["pass"] == Value::Bool(true));
        Criterion {
            id,
            name: name.to_string(),
            pass,
            cases,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub pass: bool,
    pub criteria: Vec<Criterion>,
}

fn failed(mut base: Value, err: impl ToString) -> Value {
    base["pass"] = Value::Bool(false);
    base["error"] = Value::String(err.to_string());
    base
}

fn censuses(cap: u64) -> Vec<((u32, u32, u64), Result<OrbitCensus>)> {
    CENSUS_CASES
        .iter()
        .map(|&(s, d, q)| ((s, d, q), orbit_census(s as usize, d as usize, q, cap)))
        .collect()
}

fn census_counts(s: u32, d: u32, q: u64, census: &OrbitCensus) -> Result<Value> {
    let eq2 = predicted_orbit_count(s, d, q)?;
    let eq3 = predicted_free_orbit_count(s, d, q)?;
    let orbits = census.orbits.len();
    let free = census.free_orbits();
    Ok(json!({
        "s": s, "d": d, "q": q,
        "orbits": orbits, "free_orbits": free,
        "predicted_orbits": eq2.to_string(), "predicted_free_orbits": eq3.to_string(),
        "pass": eq2 == BigUint::from(orbits) && eq3 == BigUint::from(free),
    }))
}

fn census_structure(s: u32, d: u32, q: u64, census: &OrbitCensus) -> Value {
    let small = census.group.reduction().small().clone();
    let theta_s = theta_u64(s, q);
    let mut covers = true;
    let mut u_divides = true;
    let mut sizes = true;
    for orbit in &census.orbits {
        let rec = &orbit.record;
        let fam = match SubspaceFamily::new(orbit.members.clone()) {
            Ok(f) => f,
            Err(e) => return failed(json!({ "s": s, "t": d, "q": q }), e),
        };
        covers &= is_cover(&small, &fam, theta_u64(d, q) / theta_u64(rec.u, q));
        u_divides &= d.gcd(&s).is_multiple_of(rec.u);
        sizes &= rec.size * theta_u64(rec.u, q) == theta_s;
    }
    let spreads = census.records().filter(|r| r.is_spread).count();
    let spread_ok = spreads == usize::from(s.is_multiple_of(d));
    json!({
        "s": s, "t": d, "q": q,
        "covers": covers, "u_divides_gcd": u_divides, "orbit_sizes": sizes, "spread_orbits": spreads,
        "pass": covers && u_divides && sizes && spread_ok,
    })
}

/// Orbit counts against the closed formulas, and the structure of every orbit.
pub fn census_criteria(cap: u64) -> (Criterion, Criterion) {
    let mut counts = Vec::new();
    let mut structure = Vec::new();
    for ((s, d, q), census) in censuses(cap) {
        let base = json!({ "s": s, "d": d, "q": q });
        match census {
            Ok(c) => {
                counts.push(census_counts(s, d, q, &c).unwrap_or_else(|e| failed(base.clone(), e)));
                structure.push(census_structure(s, d, q, &c));
            }
            Err(e) => {
                counts.push(failed(base.clone(), &e));
                structure.push(failed(base, e));
            }
        }
    }
    (
        Criterion::from_cases(1, "orbit census vs closed formulas", counts),
        Criterion::from_cases(2, "orbit structure", structure),
    )
}

/// Every `(p, h, m, n)` of the classification sweep, in order.
pub fn classification_params() -> Vec<(u64, u32, u32, u32)> {
    let mut out = Vec::new();
    for p in CLASSIFICATION_PRIMES {
        for h in CLASSIFICATION_DEGREES {
            for m in 1..=h {
                if gaussian_binomial(h, m, p)
                    .map_or(true, |g| g > BigUint::from(CLASSIFICATION_LIMIT))
                {
                    continue;
                }
                for n in crate::gf::divisors_u32(m.gcd(&h)) {
                    out.push((p, h, m, n));
                }
            }
        }
    }
    out
}

fn classification_case(p: u64, h: u32, m: u32, n: u32, cap: u64) -> Result<Value> {
    let (closed, minimal) = enumerated_class_counts(p, h, m, n, cap)?;
    let eq2 = count_classes(p, h, m, n, false)?;
    let eq3 = count_classes(p, h, m, n, true)?;
    Ok(json!({
        "p": p, "h": h, "m": m, "n": n,
        "classes": closed, "minimal_classes": minimal,
        "predicted": eq2.to_string(), "predicted_minimal": eq3.to_string(),
        "pass": eq2 == BigUint::from(closed) && eq3 == BigUint::from(minimal),
    }))
}

pub fn classification_criterion(cap: u64) -> Criterion {
    let cases = classification_params()
        .into_iter()
        .map(|(p, h, m, n)| {
            classification_case(p, h, m, n, cap)
                .unwrap_or_else(|e| failed(json!({ "p": p, "h": h, "m": m, "n": n }), e))
        })
        .collect();
    Criterion::from_cases(3, "elation classification vs closed formulas", cases)
}

pub fn correspondence_criterion(cap: u64) -> Criterion {
    let cases = CORRESPONDENCE_CASES
        .iter()
        .map(|&(p, h, m, n)| {
            let base = json!({ "p": p, "h": h, "m": m, "n": n });
            match verify_correspondence(p, h, m, n, cap) {
                Ok(r) => json!({
                    "p": p, "h": h, "m": m, "n": n,
                    "classes": r.classes, "orbits": r.orbits,
                    "minimal_classes": r.minimal_classes, "free_orbits": r.free_orbits,
                    "pass": true,
                }),
                Err(e) => failed(base, e),
            }
        })
        .collect();
    Criterion::from_cases(4, "classes correspond to Singer orbits", cases)
}

/// Every ordered pair of subgroups of GF(p^h) with orders in `orders`:
/// equivalent pairs get a verified conjugator (and the exhaustive search
/// agrees), inequivalent pairs have none in PGL(r, p^h).
pub fn conjugacy_case(p: u64, h: u32, orders: &[u32], r: usize, cap: u64) -> Result<Value> {
    let mut groups: Vec<ElationGroup> = Vec::new();
    for &m in orders {
        for g in enumerate_subgroups(p, h, m, cap)? {
            groups.push(g.with_r(r)?);
        }
    }
    let mut equivalent = 0usize;
    let mut inequivalent = 0usize;
    let mut pass = true;
    for a in &groups {
        for b in &groups {
            if scalar_equivalent(a, b)?.is_some() {
                equivalent += 1;
                conjugator(a, b, r)?;
                pass &= find_conjugator_exhaustive(a, b, r, cap)?.is_some();
            } else {
                inequivalent += 1;
                pass &= no_conjugation_witness(a, b, r, cap)?;
            }
        }
    }
    Ok(json!({
        "p": p, "h": h, "orders": orders, "r": r,
        "equivalent_pairs": equivalent, "inequivalent_pairs": inequivalent,
        "pass": pass,
    }))
}

/// Same-order inequivalent pairs: one representative per class of order `p^m`.
pub fn converse_case(p: u64, h: u32, m: u32, r: usize, cap: u64) -> Result<Value> {
    let reps: Vec<ElationGroup> = equivalence_classes(p, h, m, cap)?
        .into_iter()
        .map(|c| c.representative.with_r(r))
        .collect::<Result<_>>()?;
    let mut pairs = 0usize;
    let mut pass = true;
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            pairs += 1;
            pass &= scalar_equivalent(a, b)?.is_none() && no_conjugation_witness(a, b, r, cap)?;
        }
    }
    Ok(
        json!({ "p": p, "h": h, "m": m, "r": r, "inequivalent_pairs": pairs, "pass": pass && pairs > 0 }),
    )
}

pub fn conjugacy_criterion(cap: u64) -> Criterion {
    let mut cases = Vec::new();
    for r in [2, 3] {
        cases.push(
            conjugacy_case(2, 2, &[1, 2], r, cap)
                .unwrap_or_else(|e| failed(json!({ "p": 2, "h": 2, "r": r }), e)),
        );
    }
    cases.push(
        converse_case(2, 4, 2, 2, cap)
            .unwrap_or_else(|e| failed(json!({ "p": 2, "h": 4, "m": 2, "r": 2 }), e)),
    );
    Criterion::from_cases(5, "scalar equivalence is PGL-conjugacy", cases)
}

pub fn bruckbose_criterion(seed: u64, cap: u64) -> Criterion {
    let cases = BRUCKBOSE_CASES
        .iter()
        .map(|&(r, p, h, n)| {
            let base = json!({ "r": r, "p": p, "h": h, "n": n });
            match verify_bruckbose(r, p, h, n, None, seed, false, cap) {
                Ok(rep) => json!({
                    "r": r, "p": p, "h": h, "n": n,
                    "spread_size": rep.spread_size, "exhaustive": rep.exhaustive,
                    "sampled_points": rep.sampled_points, "incidence_lines": rep.incidence_lines,
                    "sweeps": rep.sweeps,
                    "pass": true,
                }),
                Err(e) => failed(base, e),
            }
        })
        .collect();
    Criterion::from_cases(
        6,
        "orbits are affine subspaces of the field-reduction model",
        cases,
    )
}

/// Runs criteria 1 to 6.
pub fn run_selftest(cap: u64) -> SelftestReport {
    let (c1, c2) = census_criteria(cap);
    let criteria = vec![
        c1,
        c2,
        classification_criterion(cap),
        correspondence_criterion(cap),
        conjugacy_criterion(cap),
        bruckbose_criterion(0, cap),
    ];
    SelftestReport {
        pass: criteria.iter().all(|c| c.pass),
        criteria,
    }
}
