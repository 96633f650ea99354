//! Singer groups of PG(s−1, q) and their orbits on subspaces.
//!
//! The generator is the companion matrix of the minimal polynomial over GF(q)
//! of the primitive element of GF(q^s). In the basis `1, μ, …, μ^(s−1)` it is
//! exactly multiplication by `μ`, acting on column vectors.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rayon::prelude::*;

use crate::combinat::{divisors, exact_div, gaussian_binomial, moebius, theta, theta_u64};
use crate::error::{Error, Result};
use crate::gf::{make_field, prime_power, Elem, FieldReduction, FieldTower};
use crate::matrix::Matrix;
use crate::pspace::{enumerate_subspaces, fills, is_cover, Subspace, SubspaceFamily};

/// Default bound on `gaussian_binomial(s, t, q)` for a full census.
pub const DEFAULT_CENSUS_CAP: u64 = 1_000_000;

// explicit power iteration below this projective order, prime-factor descent above
const ITERATION_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct SingerGroup {
    s: usize,
    q: u64,
    reduction: FieldReduction,
    min_poly: Vec<Elem>,
    generator: Matrix,
    projective_order: u64,
}

impl SingerGroup {
    pub fn new(s: usize, q: u64) -> Result<SingerGroup> {
        if s == 0 {
            return Err(Error::InvalidParameter("Singer group needs s >= 1".into()));
        }
        let (p, n) = prime_power(q)?;
        let big = Arc::new(make_field(p as u64, n * s as u32)?);
        let reduction = FieldReduction::new(big.clone(), n)?;
        let f = reduction.small().clone();
        let mp_big = big.minimal_polynomial(big.mu(), n)?;
        if mp_big.len() != s + 1 {
            return Err(Error::Verification(format!(
                "minimal polynomial of mu has degree {}",
                mp_big.len() - 1
            )));
        }
        let min_poly: Vec<Elem> = mp_big
            .iter()
            .map(|&c| reduction.to_small(c))
            .collect::<Result<_>>()?;
        let mut c = Matrix::zeros(s, s);
        for i in 1..s {
            c[(i, i - 1)] = f.one();
        }
        for i in 0..s {
            c[(i, s - 1)] = f.neg(min_poly[i]);
        }
        let theta_s = theta_u64(s as u32, q);
        let projective_order = if theta_s <= ITERATION_LIMIT {
            projective_order_by_iteration(&f, &c, theta_s)
        } else {
            projective_order_by_factors(&f, &c, theta_s)
        };
        if projective_order != theta_s {
            return Err(Error::Verification(format!(
                "companion matrix has projective order {projective_order}, expected {theta_s}"
            )));
        }
        Ok(SingerGroup {
            s,
            q,
            reduction,
            min_poly,
            generator: c,
            projective_order,
        })
    }

    pub fn field(&self) -> &Arc<FieldTower> {
        self.reduction.small()
    }

    /// The field reduction GF(q^s) → GF(q)^s underlying the generator.
    pub fn reduction(&self) -> &FieldReduction {
        &self.reduction
    }

    pub fn ambient(&self) -> usize {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `m(X)` over GF(q), ascending, monic.
    pub fn min_poly(&self) -> &[Elem] {
        &self.min_poly
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn projective_order(&self) -> u64 {
        self.projective_order
    }

    /// `σ^k` as a matrix, `k` taken modulo the projective order.
    pub fn power(&self, k: i64) -> Matrix {
        let k = k.rem_euclid(self.projective_order as i64) as u64;
        self.generator.pow(self.field(), k)
    }

    pub fn act(&self, x: &Subspace, k: i64) -> Result<Subspace> {
        self.check_ambient(x)?;
        x.transform(self.field(), &self.power(k))
    }

    fn check_ambient(&self, x: &Subspace) -> Result<()> {
        if x.ambient() != self.s {
            return Err(Error::AmbientMismatch(format!(
                "subspace of GF(q)^{} under Singer group of PG({}, {})",
                x.ambient(),
                self.s - 1,
                self.q
            )));
        }
        Ok(())
    }

    /// Orbit of `x` by closure under the generator.
    pub fn orbit(&self, x: &Subspace) -> Result<Orbit> {
        self.check_ambient(x)?;
        let f = self.field();
        let mut members = vec![x.clone()];
        let mut cur = x.transform(f, &self.generator)?;
        while &cur != x {
            if members.len() as u64 >= self.projective_order {
                return Err(Error::Verification("orbit longer than the group".into()));
            }
            let next = cur.transform(f, &self.generator)?;
            members.push(cur);
            cur = next;
        }
        members.sort();
        let size = members.len() as u64;
        let u = self.stabilizer_parameter(size, x.dim())?;
        let fixer = self.power((self.projective_order / theta_u64(u, self.q)) as i64);
        for m in &members {
            if &m.transform(f, &fixer)? != m {
                return Err(Error::Verification(format!(
                    "σ^(θ_s/θ_{u}) moves an orbit member"
                )));
            }
        }
        let record = OrbitRecord {
            representative: members[0].clone(),
            size,
            u,
            is_spread: u as usize == x.dim(),
        };
        Ok(Orbit { record, members })
    }

    /// `u` with `size · θ_u = θ_s`, checked to divide `gcd(t, s)`.
    fn stabilizer_parameter(&self, size: u64, t: usize) -> Result<u32> {
        if !self.projective_order.is_multiple_of(size) {
            return Err(Error::Verification(format!(
                "orbit size {size} does not divide {}",
                self.projective_order
            )));
        }
        let stab = self.projective_order / size;
        let u = (1..=self.s as u32)
            .find(|&u| theta_u64(u, self.q) == stab)
            .ok_or_else(|| {
                Error::Verification(format!("stabilizer order {stab} is not a point count"))
            })?;
        if !(t as u32).gcd(&(self.s as u32)).is_multiple_of(u) {
            return Err(Error::Verification(format!(
                "u = {u} does not divide gcd({t}, {})",
                self.s
            )));
        }
        Ok(u)
    }
}

fn projective_order_by_iteration(f: &FieldTower, c: &Matrix, bound: u64) -> u64 {
    let mut m = c.clone();
    for k in 1..=bound {
        if m.as_scalar().is_some() {
            return k;
        }
        m = m.mul(f, c);
    }
    0
}

fn projective_order_by_factors(f: &FieldTower, c: &Matrix, theta_s: u64) -> u64 {
    if c.pow(f, theta_s).as_scalar().is_none() {
        return 0;
    }
    let mut order = theta_s;
    for l in crate::gf::prime_factors(theta_s) {
        while order.is_multiple_of(l) && c.pow(f, order / l).as_scalar().is_some() {
            order /= l;
        }
    }
    order
}

/// Summary of one orbit: its smallest member, size and stabilizer parameter
/// (the stabilizer in the Singer group has order `θ_u(q)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub representative: Subspace,
    pub size: u64,
    pub u: u32,
    pub is_spread: bool,
}

impl OrbitRecord {
    /// Number of orbit members through each point: `θ_t / θ_u`.
    pub fn cover_degree(&self, q: u64) -> u64 {
        theta_u64(self.representative.dim() as u32, q) / theta_u64(self.u, q)
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub record: OrbitRecord,
    /// Sorted; the first member is the representative.
    pub members: Vec<Subspace>,
}

/// Partition of all (t−1)-subspaces of PG(s−1, q) into Singer orbits,
/// sorted by `(u, representative)`.
#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub s: usize,
    pub t: usize,
    pub q: u64,
    pub group: SingerGroup,
    pub orbits: Vec<Orbit>,
    index: HashMap<Subspace, usize>,
}

impl OrbitCensus {
    pub fn records(&self) -> impl Iterator<Item = &OrbitRecord> {
        self.orbits.iter().map(|o| &o.record)
    }

    /// Position in `orbits` of the orbit containing `x`.
    pub fn orbit_of(&self, x: &Subspace) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn total(&self) -> u64 {
        self.orbits.iter().map(|o| o.record.size).sum()
    }

    pub fn free_orbits(&self) -> usize {
        self.orbits.iter().filter(|o| o.record.u == 1).count()
    }
}

/// Full census with every structural check: sizes sum to the Gaussian
/// binomial, each orbit is a (t−1, θ_t/θ_u)-cover by exact incidence tally,
/// and a spread orbit occurs exactly when `t | s`, and then only once.
pub fn orbit_census(s: usize, t: usize, q: u64, cap: u64) -> Result<OrbitCensus> {
    let group = SingerGroup::new(s, q)?;
    let f = group.field().clone();
    let family = enumerate_subspaces(&f, s, t, cap)?;
    let mut index: HashMap<Subspace, usize> = HashMap::with_capacity(family.len());
    let mut orbits = Vec::new();
    for x in family.members() {
        if index.contains_key(x) {
            continue;
        }
        let orbit = group.orbit(x)?;
        for m in &orbit.members {
            index.insert(m.clone(), orbits.len());
        }
        orbits.push(orbit);
    }
    let expected = gaussian_binomial(s as u32, t as u32, q)?;
    let total: u64 = orbits.iter().map(|o| o.record.size).sum();
    if BigUint::from(total) != expected {
        return Err(Error::Verification(format!(
            "orbit sizes sum to {total}, expected {expected}"
        )));
    }

    let cover_failures: Vec<String> = orbits
        .par_iter()
        .filter_map(|o| {
            let fam = SubspaceFamily::new(o.members.clone()).ok()?;
            let k = o.record.cover_degree(q);
            let spread = is_cover(&f, &fam, 1);
            if !is_cover(&f, &fam, k) || spread != o.record.is_spread {
                Some(format!(
                    "orbit of size {} (u = {}) is not a ({}, {k})-cover",
                    o.record.size,
                    o.record.u,
                    t - 1
                ))
            } else {
                None
            }
        })
        .collect();
    if let Some(msg) = cover_failures.into_iter().next() {
        return Err(Error::Verification(msg));
    }
    let spreads = orbits.iter().filter(|o| o.record.is_spread).count();
    let want = usize::from(s.is_multiple_of(t));
    if spreads != want {
        return Err(Error::Verification(format!(
            "{spreads} spread orbits for t = {t}, s = {s}"
        )));
    }

    orbits.sort_by(|a, b| {
        (a.record.u, &a.record.representative).cmp(&(b.record.u, &b.record.representative))
    });
    for (i, o) in orbits.iter().enumerate() {
        for m in &o.members {
            index.insert(m.clone(), i);
        }
    }
    Ok(OrbitCensus {
        s,
        t,
        q,
        group,
        orbits,
        index,
    })
}

fn check_count_params(s: u32, d: u32) -> Result<()> {
    if d == 0 || d > s {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= d <= s, got d = {d}, s = {s}"
        )));
    }
    Ok(())
}

/// Number of Singer orbits on (d−1)-subspaces of PG(s−1, q):
/// `θ_s⁻¹ Σ_{t | (d,s)} [s/t, d/t]_{q^t} Σ_{u | t} μ(t/u) θ_u(q)`.
pub fn predicted_orbit_count(s: u32, d: u32, q: u64) -> Result<BigUint> {
    check_count_params(s, d)?;
    let mut sum = BigInt::from(0);
    for t in divisors(d.gcd(&s) as u64) {
        let t32 = t as u32;
        let qt = q
            .checked_pow(t32)
            .ok_or_else(|| Error::InvalidParameter("q^t overflows".into()))?;
        let gb = BigInt::from(gaussian_binomial(s / t32, d / t32, qt)?);
        let mut inner = BigInt::from(0);
        for u in divisors(t) {
            inner += BigInt::from(moebius(t / u)?) * BigInt::from(theta(u as u32, q));
        }
        sum += gb * inner;
    }
    let n = exact_div(&sum, &BigInt::from(theta(s, q)))?;
    Ok(n.to_biguint().expect("orbit counts are non-negative"))
}

/// Number of orbits with trivial stabilizer (u = 1):
/// `θ_s⁻¹ Σ_{t | (d,s)} μ(t) [s/t, d/t]_{q^t}`.
pub fn predicted_free_orbit_count(s: u32, d: u32, q: u64) -> Result<BigUint> {
    check_count_params(s, d)?;
    let mut sum = BigInt::from(0);
    for t in divisors(d.gcd(&s) as u64) {
        let t32 = t as u32;
        let qt = q
            .checked_pow(t32)
            .ok_or_else(|| Error::InvalidParameter("q^t overflows".into()))?;
        sum += BigInt::from(moebius(t)?) * BigInt::from(gaussian_binomial(s / t32, d / t32, qt)?);
    }
    let n = exact_div(&sum, &BigInt::from(theta(s, q)))?;
    n.to_biguint()
        .ok_or_else(|| Error::Verification("negative free-orbit count".into()))
}

/// Maximum number of member pairs whose span is tested by [`spread_orbit`].
const FILL_SAMPLE_PAIRS: usize = 16;

/// The unique orbit that is a (t−1)-spread, with a fills check against the
/// spans of sampled pairs of its members.
pub fn spread_orbit(s: usize, t: usize, q: u64, cap: u64) -> Result<Orbit> {
    if t == 0 || !s.is_multiple_of(t) {
        return Err(Error::NotDivisor {
            n: t as u64,
            of: s as u64,
        });
    }
    let census = orbit_census(s, t, q, cap)?;
    let f = census.group.field().clone();
    let orbit = census
        .orbits
        .into_iter()
        .find(|o| o.record.is_spread)
        .ok_or_else(|| Error::Verification("no spread orbit".into()))?;
    if orbit.record.u as usize != t {
        return Err(Error::Verification(format!(
            "spread orbit has u = {}, expected {t}",
            orbit.record.u
        )));
    }
    let family = SubspaceFamily::new(orbit.members.clone())?;
    let pairs = (1..orbit.members.len())
        .map(|j| (0, j))
        .take(FILL_SAMPLE_PAIRS);
    for (i, j) in pairs {
        let w = orbit.members[i].join(&f, &orbit.members[j]);
        if !fills(&f, &family, &w) {
            return Err(Error::Verification(format!(
                "spread does not fill the span of members {i} and {j}"
            )));
        }
    }
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pspace::{enumerate_points, ProjPoint};

    #[test]
    fn generator_for_pg1_2() {
        let g = SingerGroup::new(2, 2).unwrap();
        let f = g.field();
        assert_eq!(g.min_poly(), &[f.one(), f.one(), f.one()]);
        assert_eq!(g.generator().data(), &[f.zero(), f.one(), f.one(), f.one()]);
        assert_eq!(g.projective_order(), 3);
        assert_eq!(SingerGroup::new(2, 4).unwrap().projective_order(), 5);
    }

    #[test]
    fn point_orbit_in_pg3_2() {
        let g = SingerGroup::new(4, 2).unwrap();
        let f = g.field().clone();
        assert_eq!(g.projective_order(), 15);
        let start = ProjPoint::normalize(&f, &[f.one(), f.zero(), f.zero(), f.zero()]).unwrap();
        let mut v = start.coords().to_vec();
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..15 {
            seen.insert(ProjPoint::normalize(&f, &v).unwrap());
            v = g.generator().apply(&f, &v);
        }
        assert_eq!(seen.len(), 15);
        assert_eq!(ProjPoint::normalize(&f, &v).unwrap(), start);
    }

    #[test]
    fn act_identities() {
        let g = SingerGroup::new(4, 2).unwrap();
        let f = g.field().clone();
        let lines = enumerate_subspaces(&f, 4, 2, 1000).unwrap();
        for x in lines.members() {
            assert_eq!(&g.act(x, 0).unwrap(), x);
            assert_eq!(&g.act(x, 15).unwrap(), x);
            assert_eq!(g.act(&g.act(x, 4).unwrap(), -4).unwrap(), *x);
        }
        let bad = enumerate_subspaces(&f, 3, 1, 10).unwrap();
        assert!(matches!(
            g.act(&bad.members()[0], 1),
            Err(Error::AmbientMismatch(_))
        ));
    }

    #[test]
    fn line_orbits_of_pg3_2() {
        let g = SingerGroup::new(4, 2).unwrap();
        let f = g.field().clone();
        let red = g.reduction();
        let big = red.big().clone();
        // the GF(4)-line: the GF(2)-span of coords of GF(4) = {0,1,γ,γ²}
        let gamma = big.subfield_generator(2).unwrap();
        let spread_line =
            Subspace::canonicalize(&f, &[red.coords(big.one()), red.coords(gamma)]).unwrap();
        let o = g.orbit(&spread_line).unwrap();
        assert_eq!(
            (o.record.size, o.record.u, o.record.is_spread),
            (5, 2, true)
        );
        // advancing a spread line keeps it in the spread
        assert!(o.members.contains(&g.act(&spread_line, 3).unwrap()));
        let generic =
            Subspace::canonicalize(&f, &[red.coords(big.one()), red.coords(big.mu())]).unwrap();
        let o = g.orbit(&generic).unwrap();
        assert_eq!((o.record.size, o.record.u), (15, 1));
    }

    #[test]
    fn fano_points_form_one_orbit() {
        let g = SingerGroup::new(3, 2).unwrap();
        let f = g.field().clone();
        let p = Subspace::from_point(&enumerate_points(&f, 3)[0]);
        let o = g.orbit(&p).unwrap();
        assert_eq!((o.record.size, o.record.u), (7, 1));
    }

    #[test]
    fn census_pg3_2_lines() {
        let c = orbit_census(4, 2, 2, DEFAULT_CENSUS_CAP).unwrap();
        let sizes: Vec<u64> = c.records().map(|r| r.size).collect();
        assert_eq!(sizes, vec![15, 15, 5]);
        assert_eq!(c.records().filter(|r| r.is_spread).count(), 1);
        assert_eq!(c.free_orbits(), 2);
    }

    #[test]
    fn predicted_counts() {
        let n = |x: u64| BigUint::from(x);
        assert_eq!(predicted_orbit_count(4, 2, 2).unwrap(), n(3));
        assert_eq!(predicted_free_orbit_count(4, 2, 2).unwrap(), n(2));
        assert_eq!(predicted_orbit_count(6, 2, 2).unwrap(), n(11));
        assert_eq!(predicted_free_orbit_count(6, 2, 2).unwrap(), n(10));
        for s in 1..6 {
            assert_eq!(predicted_orbit_count(s, 1, 3).unwrap(), n(1));
        }
        assert!(predicted_orbit_count(2, 3, 2).is_err());
    }

    #[test]
    fn spread_orbits() {
        let o = spread_orbit(4, 2, 2, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!((o.members.len(), o.record.u), (5, 2));
        assert!(matches!(
            spread_orbit(5, 2, 2, DEFAULT_CENSUS_CAP),
            Err(Error::NotDivisor { .. })
        ));
    }
}
