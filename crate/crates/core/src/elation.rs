//! (z, A)-elation groups of PG(r−1, p^h).
//!
//! With center `z = (0, …, 0, 1)` and axis `A: X₀ = 0`, every elation is the
//! matrix `M_λ` (identity plus `λ` in the bottom-left corner) and a group of
//! them is the additive subgroup `H_E = {λ}` of GF(p^h). Groups are stored as
//! GF(p)-subspaces of GF(p)^h in echelon form, so they sort and hash canonically.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{gaussian_binomial, theta_u64};
use crate::error::{Error, Result};
use crate::gf::{divisors_u32, make_field, Elem, FieldReduction, FieldTower};
use crate::matrix::Matrix;
use crate::pspace::{enumerate_points, enumerate_subspaces, is_cover, Subspace, SubspaceFamily};
use crate::singer::{orbit_census, predicted_free_orbit_count, predicted_orbit_count};

/// Ambient rank used when none is given: the smallest with a proper center–axis incidence.
pub const DEFAULT_R: usize = 3;

/// Bound on |PGL(r, p^h)| for the exhaustive conjugacy search.
pub const DEFAULT_PGL_CAP: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct ElationGroup {
    tower: Arc<FieldTower>,
    prime: Arc<FieldTower>,
    r: usize,
    basis: Subspace,
}

impl PartialEq for ElationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.r == other.r && self.basis == other.basis
    }
}

impl Eq for ElationGroup {}

impl ElationGroup {
    /// The group generated additively by `generators`.
    pub fn from_elements(
        tower: Arc<FieldTower>,
        r: usize,
        generators: &[Elem],
    ) -> Result<ElationGroup> {
        let prime = Arc::new(make_field(tower.characteristic() as u64, 1)?);
        Self::with_prime(tower, prime, r, generators)
    }

    fn with_prime(
        tower: Arc<FieldTower>,
        prime: Arc<FieldTower>,
        r: usize,
        generators: &[Elem],
    ) -> Result<ElationGroup> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!(
                "r must be at least 2, got {r}"
            )));
        }
        let rows: Vec<Vec<Elem>> = generators
            .iter()
            .map(|&g| to_prime_row(&tower, g))
            .collect();
        let basis = Subspace::span(&prime, tower.degree() as usize, &rows)
            .ok_or_else(|| Error::InvalidParameter("trivial elation group".into()))?;
        Ok(ElationGroup {
            tower,
            prime,
            r,
            basis,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn with_r(mut self, r: usize) -> Result<ElationGroup> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!(
                "r must be at least 2, got {r}"
            )));
        }
        self.r = r;
        Ok(self)
    }

    /// `m`, where the group has order `p^m`.
    pub fn log_order(&self) -> u32 {
        self.basis.dim() as u32
    }

    pub fn order(&self) -> u64 {
        (self.tower.characteristic() as u64).pow(self.log_order())
    }

    /// GF(p)-echelon basis as a subspace of GF(p)^h.
    pub fn as_subspace(&self) -> &Subspace {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<Elem> {
        (0..self.basis.dim())
            .map(|i| from_prime_row(&self.tower, self.basis.row(i)))
            .collect()
    }

    /// All `p^m` elements of `H_E`, ascending.
    pub fn elements(&self) -> Vec<Elem> {
        let basis = self.basis_elements();
        let p = self.tower.characteristic() as u64;
        let mut out = Vec::with_capacity(self.order() as usize);
        for k in 0..self.order() {
            let mut x = k;
            let mut acc = self.tower.zero();
            for &b in &basis {
                let c = self.tower.constant(x % p);
                x /= p;
                acc = self.tower.add(acc, self.tower.mul(c, b));
            }
            out.push(acc);
        }
        out.sort();
        out
    }

    pub fn contains(&self, lambda: Elem) -> bool {
        self.basis
            .contains_vector(&self.prime, &to_prime_row(&self.tower, lambda))
    }

    /// `α · H_E`.
    pub fn scale(&self, alpha: Elem) -> Result<ElationGroup> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("scaling by zero".into()));
        }
        let gens: Vec<Elem> = self
            .basis_elements()
            .into_iter()
            .map(|b| self.tower.mul(alpha, b))
            .collect();
        Self::with_prime(self.tower.clone(), self.prime.clone(), self.r, &gens)
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.elements()
            .into_iter()
            .map(|l| elation_matrix(&self.tower, l, self.r).expect("r >= 2"))
            .collect()
    }

    /// Subfields GF(p^n) over which `H_E` is a vector space, checked by closure
    /// under multiplication by the subfield generator.
    pub fn dimension_profile(&self) -> DimensionProfile {
        let m = self.log_order();
        let h = self.tower.degree();
        let basis = self.basis_elements();
        let admissible: Vec<(u32, u32)> = divisors_u32(m.gcd(&h))
            .into_iter()
            .filter(|&n| {
                let gamma = self.tower.subfield_generator(n).expect("n | h");
                basis
                    .iter()
                    .all(|&x| self.contains(self.tower.mul(gamma, x)))
            })
            .map(|n| (n, m / n))
            .collect();
        let &(minimal_n, minimal_d) = admissible.last().expect("n = 1 is always admissible");
        DimensionProfile {
            admissible,
            minimal_n,
            minimal_d,
        }
    }

    pub fn is_closed_over(&self, n: u32) -> bool {
        self.dimension_profile()
            .admissible
            .iter()
            .any(|&(a, _)| a == n)
    }
}

fn to_prime_row(tower: &FieldTower, x: Elem) -> Vec<Elem> {
    tower
        .coeffs(x)
        .into_iter()
        .map(Elem::from_index_unchecked)
        .collect()
}

fn from_prime_row(tower: &FieldTower, row: &[Elem]) -> Elem {
    let c: Vec<u32> = row.iter().map(|e| e.index()).collect();
    tower.from_coeffs(&c).expect("row over GF(p) of length h")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionProfile {
    /// `(n, d)` pairs with `H_E` a `d`-dimensional GF(p^n)-space, ascending in `n`.
    pub admissible: Vec<(u32, u32)>,
    pub minimal_n: u32,
    pub minimal_d: u32,
}

/// `M_λ`: the r×r identity with `λ` at row r, column 1.
pub fn elation_matrix(tower: &FieldTower, lambda: Elem, r: usize) -> Result<Matrix> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "r must be at least 2, got {r}"
        )));
    }
    let mut m = Matrix::identity(tower, r);
    m[(r - 1, 0)] = lambda;
    Ok(m)
}

/// All subgroups of order `p^m` of (GF(p^h), +), in canonical order.
pub fn enumerate_subgroups(p: u64, h: u32, m: u32, cap: u64) -> Result<Vec<ElationGroup>> {
    if m == 0 || m > h {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= h, got m = {m}, h = {h}"
        )));
    }
    let tower = Arc::new(make_field(p, h)?);
    let prime = Arc::new(make_field(p, 1)?);
    let family = enumerate_subspaces(&prime, h as usize, m as usize, cap)?;
    Ok(family
        .into_members()
        .into_iter()
        .map(|basis| ElationGroup {
            tower: tower.clone(),
            prime: prime.clone(),
            r: DEFAULT_R,
            basis,
        })
        .collect())
}

/// Some `α ≠ 0` with `α · H1 = H2`, searching `α = μ^k` over coset
/// representatives of GF(p^h)* modulo GF(p)*.
pub fn scalar_equivalent(h1: &ElationGroup, h2: &ElationGroup) -> Result<Option<Elem>> {
    if h1.tower != h2.tower {
        return Err(Error::AmbientMismatch(
            "subgroups of different fields".into(),
        ));
    }
    if h1.log_order() != h2.log_order() {
        return Ok(None);
    }
    let tower = &h1.tower;
    let reps = theta_u64(tower.degree(), tower.characteristic() as u64);
    for k in 0..reps {
        let alpha = tower.mu_pow(k);
        if h1.scale(alpha)?.basis == h2.basis {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// A scalar-equivalence class, i.e. a conjugacy class of elation groups.
#[derive(Clone, Debug)]
pub struct EquivalenceClass {
    /// Smallest member in canonical order.
    pub representative: ElationGroup,
    /// Sorted; `members[i] = witness_scalars[i] · representative`.
    pub members: Vec<ElationGroup>,
    pub witness_scalars: Vec<Elem>,
    pub profile: DimensionProfile,
}

/// Partition of the order-`p^m` subgroups under multiplication by `μ`.
pub fn equivalence_classes(p: u64, h: u32, m: u32, cap: u64) -> Result<Vec<EquivalenceClass>> {
    let groups = enumerate_subgroups(p, h, m, cap)?;
    let mut seen: HashMap<Subspace, usize> = HashMap::with_capacity(groups.len());
    let mut classes = Vec::new();
    for g in &groups {
        if seen.contains_key(&g.basis) {
            continue;
        }
        let tower = g.tower.clone();
        let mu = tower.mu();
        let mut walk = vec![(g.clone(), tower.one())];
        let mut cur = g.scale(mu)?;
        let mut alpha = mu;
        while cur.basis != g.basis {
            let next = cur.scale(mu)?;
            walk.push((cur, alpha));
            alpha = tower.mul(alpha, mu);
            cur = next;
        }
        walk.sort_by(|a, b| a.0.basis.cmp(&b.0.basis));
        let profile = g.dimension_profile();
        for (member, _) in &walk {
            if member.dimension_profile() != profile {
                return Err(Error::Verification(
                    "dimension profile differs within an equivalence class".into(),
                ));
            }
            seen.insert(member.basis.clone(), classes.len());
        }
        let (members, witness_scalars): (Vec<_>, Vec<_>) = walk.into_iter().unzip();
        classes.push(EquivalenceClass {
            representative: members[0].clone(),
            members,
            witness_scalars,
            profile,
        });
    }
    Ok(classes)
}

fn check_projective_conjugation(
    tower: &FieldTower,
    g: &Matrix,
    g_inv: &Matrix,
    lambda: Elem,
    image: Elem,
    r: usize,
) -> Result<()> {
    let lhs = g
        .mul(tower, &elation_matrix(tower, lambda, r)?)
        .mul(tower, g_inv);
    let rhs = elation_matrix(tower, image, r)?;
    if !lhs.projectively_equal(tower, &rhs) {
        return Err(Error::Verification(format!(
            "g·M_λ·g⁻¹ ≠ M_αλ for λ = {lambda}"
        )));
    }
    Ok(())
}

/// The lower-triangular conjugator `diag(1, …, 1, α)` with `α · H1 = H2`,
/// checked against every `λ ∈ H1`.
pub fn conjugator(h1: &ElationGroup, h2: &ElationGroup, r: usize) -> Result<Matrix> {
    let alpha = scalar_equivalent(h1, h2)?.ok_or(Error::Inequivalent)?;
    let tower = &h1.tower;
    let mut g = elation_matrix(tower, tower.zero(), r)?;
    g[(r - 1, r - 1)] = alpha;
    let g_inv = g.inverse(tower)?;
    for lambda in h1.elements() {
        let image = tower.mul(alpha, lambda);
        if !h2.contains(image) {
            return Err(Error::Verification(format!("αλ ∉ H2 for λ = {lambda}")));
        }
        check_projective_conjugation(tower, &g, &g_inv, lambda, image, r)?;
    }
    Ok(g)
}

/// |PGL(r, q)|, saturating.
pub fn pgl_order(r: usize, q: u64) -> u64 {
    let qr = (q as u128).pow(r as u32);
    let mut total: u128 = 1;
    for i in 0..r {
        total = total.saturating_mul(qr - (q as u128).pow(i as u32));
    }
    u64::try_from(total / (q as u128 - 1)).unwrap_or(u64::MAX)
}

/// Whether `g E1 g⁻¹ ⊆ E2` as sets of projective matrices (with |E1| = |E2|).
fn conjugates_into(
    tower: &FieldTower,
    g: &Matrix,
    e1: &[Elem],
    h2: &ElationGroup,
    r: usize,
) -> bool {
    let Ok(g_inv) = g.inverse(tower) else {
        return false;
    };
    e1.iter().all(|&lambda| {
        let n = g
            .mul(tower, &elation_matrix(tower, lambda, r).expect("r >= 2"))
            .mul(tower, &g_inv);
        let lead = n[(0, 0)];
        let Ok(inv) = tower.inv(lead) else {
            return false;
        };
        let n = n.scale(tower, inv);
        let image = n[(r - 1, 0)];
        n == elation_matrix(tower, image, r).expect("r >= 2") && h2.contains(image)
    })
}

/// Exhaustive search over PGL(r, p^h) for some `g` with `g E1 g⁻¹ = E2`.
/// Matrices are enumerated row by row with the first row normalized, which
/// visits every projective class exactly once; the first hit in that order is returned.
pub fn find_conjugator_exhaustive(
    h1: &ElationGroup,
    h2: &ElationGroup,
    r: usize,
    cap: u64,
) -> Result<Option<Matrix>> {
    if h1.tower != h2.tower {
        return Err(Error::AmbientMismatch(
            "subgroups of different fields".into(),
        ));
    }
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "r must be at least 2, got {r}"
        )));
    }
    let tower = h1.tower.clone();
    let q = tower.order() as u64;
    let size = pgl_order(r, q);
    if size > cap {
        return Err(Error::CapExceeded {
            needed: size.to_string(),
            cap,
        });
    }
    let e1 = h1.elements();
    let same_order = h1.log_order() == h2.log_order();
    let vectors: Vec<Vec<Elem>> = (1..q.pow(r as u32))
        .map(|k| {
            let mut x = k;
            (0..r)
                .map(|_| {
                    let e = Elem::from_index_unchecked((x % q) as u32);
                    x /= q;
                    e
                })
                .collect()
        })
        .collect();
    let first_rows = enumerate_points(&tower, r);
    let found = first_rows.par_iter().find_map_first(|row0| {
        let mut rows = vec![row0.coords().to_vec()];
        search_rows(&tower, &vectors, &mut rows, r, &|g| {
            same_order && conjugates_into(&tower, g, &e1, h2, r)
        })
    });
    Ok(found)
}

fn search_rows(
    tower: &FieldTower,
    vectors: &[Vec<Elem>],
    rows: &mut Vec<Vec<Elem>>,
    r: usize,
    accept: &dyn Fn(&Matrix) -> bool,
) -> Option<Matrix> {
    if rows.len() == r {
        let g = Matrix::from_rows(rows);
        return accept(&g).then_some(g);
    }
    let span = Subspace::span(tower, r, rows).expect("rows are independent");
    for v in vectors {
        if span.contains_vector(tower, v) {
            continue;
        }
        rows.push(v.clone());
        let hit = search_rows(tower, vectors, rows, r, accept);
        rows.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// True iff no element of PGL(r, p^h) conjugates E1 onto E2.
pub fn no_conjugation_witness(
    h1: &ElationGroup,
    h2: &ElationGroup,
    r: usize,
    cap: u64,
) -> Result<bool> {
    Ok(find_conjugator_exhaustive(h1, h2, r, cap)?.is_none())
}

/// The (d−1)-subspace of z* = PG(h/n − 1, p^n) determined by `H_E`: the
/// GF(p^n)-span of the coordinate vectors of its elements.
pub fn subspace_of_center(h: &ElationGroup, red: &FieldReduction) -> Result<Subspace> {
    if **red.big() != *h.tower {
        return Err(Error::AmbientMismatch(
            "reduction built over a different field".into(),
        ));
    }
    let n = red.n();
    if !h.is_closed_over(n) {
        return Err(Error::InvalidParameter(format!(
            "H_E is not a GF(p^{n})-space"
        )));
    }
    let rows: Vec<Vec<Elem>> = h
        .basis_elements()
        .into_iter()
        .map(|x| red.coords(x))
        .collect();
    let sub = Subspace::span(red.small(), red.dprime(), &rows).expect("nontrivial group");
    let d = (h.log_order() / n) as usize;
    if sub.dim() != d {
        return Err(Error::Verification(format!(
            "image has dimension {}, expected {d}",
            sub.dim()
        )));
    }
    Ok(sub)
}

/// Inverse of [`subspace_of_center`].
pub fn group_from_subspace(x: &Subspace, red: &FieldReduction, r: usize) -> Result<ElationGroup> {
    if x.ambient() != red.dprime() {
        return Err(Error::AmbientMismatch(format!(
            "subspace of GF(q)^{}, expected {}",
            x.ambient(),
            red.dprime()
        )));
    }
    let big = red.big();
    let gamma = red.gamma();
    let mut gens = Vec::new();
    for row in x.basis() {
        let e = red.from_coords(&row)?;
        for j in 0..red.n() {
            gens.push(big.mul(big.pow(gamma, j as u64), e));
        }
    }
    ElationGroup::from_elements(big.clone(), r, &gens)
}

fn check_class_params(h: u32, m: u32, n: u32) -> Result<()> {
    if m == 0 || m > h {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= h, got m = {m}, h = {h}"
        )));
    }
    if n == 0 || !m.gcd(&h).is_multiple_of(n) {
        return Err(Error::InvalidParameter(format!(
            "n = {n} does not divide gcd({m}, {h})"
        )));
    }
    Ok(())
}

/// Closed-form number of conjugacy classes of elation groups of order `p^m`
/// and dimension `m/n` over GF(p^n), or of minimal dimension `m/n` when `minimal`.
pub fn count_classes(p: u64, h: u32, m: u32, n: u32, minimal: bool) -> Result<BigUint> {
    if !crate::gf::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_class_params(h, m, n)?;
    let q = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidParameter("p^n overflows".into()))?;
    if minimal {
        predicted_free_orbit_count(h / n, m / n, q)
    } else {
        predicted_orbit_count(h / n, m / n, q)
    }
}

/// Class counts found by enumeration: `(GF(p^n)-closed classes, those of minimal dimension m/n)`.
pub fn enumerated_class_counts(p: u64, h: u32, m: u32, n: u32, cap: u64) -> Result<(usize, usize)> {
    check_class_params(h, m, n)?;
    let classes = equivalence_classes(p, h, m, cap)?;
    let closed: Vec<_> = classes
        .iter()
        .filter(|c| c.profile.admissible.iter().any(|&(a, _)| a == n))
        .collect();
    let minimal = closed.iter().filter(|c| c.profile.minimal_n == n).count();
    Ok((closed.len(), minimal))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondencePair {
    pub class_size: usize,
    pub orbit_size: u64,
    pub u: u32,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub p: u64,
    pub h: u32,
    pub m: u32,
    pub n: u32,
    pub d: u32,
    pub q: u64,
    pub classes: usize,
    pub orbits: usize,
    pub minimal_classes: usize,
    pub free_orbits: usize,
    pub pairs: Vec<CorrespondencePair>,
}

/// Checks that `subspace_of_center` carries the equivalence classes of
/// GF(p^n)-closed subgroups of order `p^m` bijectively onto the Singer orbits
/// of (d−1)-subspaces of PG(h/n − 1, p^n), and that minimal-dimension classes
/// land exactly on the orbits that are (d−1, θ_d)-covers.
pub fn verify_correspondence(
    p: u64,
    h: u32,
    m: u32,
    n: u32,
    cap: u64,
) -> Result<CorrespondenceReport> {
    check_class_params(h, m, n)?;
    let d = m / n;
    let dprime = h / n;
    let q = p.pow(n);
    let classes: Vec<EquivalenceClass> = equivalence_classes(p, h, m, cap)?
        .into_iter()
        .filter(|c| c.profile.admissible.iter().any(|&(a, _)| a == n))
        .collect();
    let census = orbit_census(dprime as usize, d as usize, q, cap)?;
    let red = census.group.reduction();
    let small = red.small().clone();
    let mut hit: Vec<Option<usize>> = vec![None; census.orbits.len()];
    let mut pairs = Vec::with_capacity(classes.len());
    for (ci, class) in classes.iter().enumerate() {
        let mut orbit_id = None;
        for member in &class.members {
            let image = subspace_of_center(member, red)?;
            let back = group_from_subspace(&image, red, member.r())?;
            if back.basis != member.basis {
                return Err(Error::Verification(format!(
                    "class {ci}: subgroup does not round-trip through z*"
                )));
            }
            let id = census.orbit_of(&image).ok_or_else(|| {
                Error::Verification(format!("class {ci}: image is not a (d−1)-subspace of z*"))
            })?;
            match orbit_id {
                None => orbit_id = Some(id),
                Some(prev) if prev != id => {
                    return Err(Error::Verification(format!(
                        "class {ci} meets orbits {prev} and {id}"
                    )));
                }
                _ => {}
            }
        }
        let id = orbit_id.expect("classes are nonempty");
        if let Some(other) = hit[id] {
            return Err(Error::Verification(format!(
                "classes {other} and {ci} both map to orbit {id}"
            )));
        }
        hit[id] = Some(ci);
        let orbit = &census.orbits[id];
        if orbit.record.size != class.members.len() as u64 {
            return Err(Error::Verification(format!(
                "class {ci} has {} members but orbit {id} has {}",
                class.members.len(),
                orbit.record.size
            )));
        }
        let minimal = class.profile.minimal_n == n;
        if minimal != (orbit.record.u == 1) {
            return Err(Error::Verification(format!(
                "class {ci} minimal = {minimal} but orbit has u = {}",
                orbit.record.u
            )));
        }
        if minimal {
            let fam = SubspaceFamily::new(orbit.members.clone())?;
            if !is_cover(&small, &fam, theta_u64(d, q)) {
                return Err(Error::Verification(format!(
                    "orbit {id} is not a ({}, θ_{d})-cover",
                    d - 1
                )));
            }
        }
        pairs.push(CorrespondencePair {
            class_size: class.members.len(),
            orbit_size: orbit.record.size,
            u: orbit.record.u,
            minimal,
        });
    }
    if let Some(id) = hit.iter().position(Option::is_none) {
        return Err(Error::Verification(format!(
            "orbit {id} corresponds to no class"
        )));
    }
    let expected = gaussian_binomial(h, m, p)?;
    let total: usize = equivalence_total(&classes);
    if n == 1 && BigUint::from(total) != expected {
        return Err(Error::Verification(format!(
            "class sizes sum to {total}, expected {expected}"
        )));
    }
    Ok(CorrespondenceReport {
        p,
        h,
        m,
        n,
        d,
        q,
        classes: classes.len(),
        orbits: census.orbits.len(),
        minimal_classes: pairs.iter().filter(|x| x.minimal).count(),
        free_orbits: census.free_orbits(),
        pairs,
    })
}

fn equivalence_total(classes: &[EquivalenceClass]) -> usize {
    classes.iter().map(|c| c.members.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singer::SingerGroup;

    fn gf(p: u64, h: u32) -> Arc<FieldTower> {
        Arc::new(make_field(p, h).unwrap())
    }

    #[test]
    fn matrix_law() {
        let f = gf(2, 4);
        assert_eq!(
            elation_matrix(&f, f.zero(), 3).unwrap(),
            Matrix::identity(&f, 3)
        );
        for a in f.elements() {
            for b in f.elements() {
                let prod = elation_matrix(&f, a, 3)
                    .unwrap()
                    .mul(&f, &elation_matrix(&f, b, 3).unwrap());
                assert_eq!(prod, elation_matrix(&f, f.add(a, b), 3).unwrap());
            }
        }
        assert!(elation_matrix(&f, f.one(), 1).is_err());
    }

    #[test]
    fn elations_fix_axis_and_lines_through_center() {
        let f = gf(2, 2);
        let pts = enumerate_points(&f, 3);
        let z = vec![f.zero(), f.zero(), f.one()];
        for lambda in f.elements() {
            let m = elation_matrix(&f, lambda, 3).unwrap();
            for pt in &pts {
                let img = m.apply(&f, pt.coords());
                if pt.coords()[0].is_zero() {
                    assert_eq!(img, pt.coords());
                }
                // image lies on the line through z and pt
                let line = Subspace::span(&f, 3, &[z.clone(), pt.coords().to_vec()]).unwrap();
                assert!(line.contains_vector(&f, &img));
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(
            enumerate_subgroups(2, 4, 2, DEFAULT_PGL_CAP).unwrap().len(),
            35
        );
        assert_eq!(
            enumerate_subgroups(2, 4, 4, DEFAULT_PGL_CAP).unwrap().len(),
            1
        );
        assert_eq!(
            enumerate_subgroups(3, 2, 1, DEFAULT_PGL_CAP).unwrap().len(),
            4
        );
        assert!(enumerate_subgroups(2, 4, 5, DEFAULT_PGL_CAP).is_err());
    }

    #[test]
    fn profiles() {
        let f = gf(2, 4);
        let sub4 = f.subfield_elements(2).unwrap();
        let h = ElationGroup::from_elements(f.clone(), 3, &sub4).unwrap();
        let prof = h.dimension_profile();
        assert_eq!(prof.admissible, vec![(1, 2), (2, 1)]);
        assert_eq!((prof.minimal_n, prof.minimal_d), (2, 1));
        let h = ElationGroup::from_elements(f.clone(), 3, &[f.one(), f.mu()]).unwrap();
        assert_eq!(h.dimension_profile().admissible, vec![(1, 2)]);
        assert_eq!(h.dimension_profile().minimal_d, 2);
        let h = ElationGroup::from_elements(f.clone(), 3, &[f.one(), f.mu(), f.pow(f.mu(), 2)])
            .unwrap();
        assert_eq!(h.dimension_profile().admissible, vec![(1, 3)]);
    }

    #[test]
    fn scalar_equivalence() {
        let f = gf(2, 4);
        let sub4 = f.subfield_elements(2).unwrap();
        let h = ElationGroup::from_elements(f.clone(), 3, &sub4).unwrap();
        assert_eq!(scalar_equivalent(&h, &h).unwrap(), Some(f.one()));
        let hm = h.scale(f.mu()).unwrap();
        assert_eq!(scalar_equivalent(&h, &hm).unwrap(), Some(f.mu()));
        let other = ElationGroup::from_elements(f.clone(), 3, &[f.one(), f.mu()]).unwrap();
        assert_eq!(scalar_equivalent(&h, &other).unwrap(), None);
    }

    #[test]
    fn classes_of_gf16_pairs() {
        let classes = equivalence_classes(2, 4, 2, DEFAULT_PGL_CAP).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![5, 15, 15]);
        assert_eq!(
            classes.iter().filter(|c| c.profile.minimal_n == 2).count(),
            1
        );
        for c in &classes {
            for (m, &a) in c.members.iter().zip(&c.witness_scalars) {
                assert_eq!(&c.representative.scale(a).unwrap(), m);
            }
            assert_eq!(c.representative, c.members[0]);
        }
        assert_eq!(
            equivalence_classes(3, 2, 1, DEFAULT_PGL_CAP).unwrap().len(),
            1
        );
    }

    #[test]
    fn conjugators() {
        let f = gf(2, 2);
        let h =
            ElationGroup::from_elements(f.clone(), 3, &f.elements().collect::<Vec<_>>()).unwrap();
        assert_eq!(conjugator(&h, &h, 3).unwrap(), Matrix::identity(&f, 3));
        let h1 = ElationGroup::from_elements(f.clone(), 3, &[f.one()]).unwrap();
        let h2 = h1.scale(f.mu()).unwrap();
        let g = conjugator(&h1, &h2, 3).unwrap();
        assert_eq!(g[(2, 2)], f.mu());
        let g2 = conjugator(&h1, &h2, 2).unwrap();
        assert_eq!(g2.data(), &[f.one(), f.zero(), f.zero(), f.mu()]);
        let big = gf(2, 4);
        let a = ElationGroup::from_elements(big.clone(), 2, &big.subfield_elements(2).unwrap())
            .unwrap();
        let b = ElationGroup::from_elements(big.clone(), 2, &[big.one(), big.mu()]).unwrap();
        assert_eq!(conjugator(&a, &b, 2).unwrap_err(), Error::Inequivalent);
    }

    #[test]
    fn exhaustive_search_in_pgl2_16() {
        let f = gf(2, 4);
        let a =
            ElationGroup::from_elements(f.clone(), 2, &f.subfield_elements(2).unwrap()).unwrap();
        let b = ElationGroup::from_elements(f.clone(), 2, &[f.one(), f.mu()]).unwrap();
        assert_eq!(pgl_order(2, 16), 4080);
        assert!(no_conjugation_witness(&a, &b, 2, DEFAULT_PGL_CAP).unwrap());
        let am = a.scale(f.mu()).unwrap();
        assert!(!no_conjugation_witness(&a, &am, 2, DEFAULT_PGL_CAP).unwrap());
        assert!(!no_conjugation_witness(&a, &a, 2, DEFAULT_PGL_CAP).unwrap());
        assert!(matches!(
            no_conjugation_witness(&a, &b, 3, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn center_subspaces() {
        let f = gf(2, 4);
        let red = FieldReduction::new(f.clone(), 2).unwrap();
        let h =
            ElationGroup::from_elements(f.clone(), 3, &f.subfield_elements(2).unwrap()).unwrap();
        let x = subspace_of_center(&h, &red).unwrap();
        assert_eq!(x.basis(), vec![vec![red.small().one(), red.small().zero()]]);
        let not_closed = ElationGroup::from_elements(f.clone(), 3, &[f.one(), f.mu()]).unwrap();
        assert!(matches!(
            subspace_of_center(&not_closed, &red),
            Err(Error::InvalidParameter(_))
        ));

        let red1 = FieldReduction::new(f.clone(), 1).unwrap();
        let groups = enumerate_subgroups(2, 4, 2, DEFAULT_PGL_CAP).unwrap();
        let images: std::collections::BTreeSet<Subspace> = groups
            .iter()
            .map(|g| subspace_of_center(g, &red1).unwrap())
            .collect();
        assert_eq!(images.len(), 35);
        for g in &groups {
            let x = subspace_of_center(g, &red1).unwrap();
            assert_eq!(
                group_from_subspace(&x, &red1, 3).unwrap().as_subspace(),
                g.as_subspace()
            );
        }
    }

    #[test]
    fn scalar_action_is_the_singer_action() {
        let singer = SingerGroup::new(4, 2).unwrap();
        let red = singer.reduction();
        for g in enumerate_subgroups(2, 4, 2, DEFAULT_PGL_CAP).unwrap() {
            let lhs = subspace_of_center(&g.scale(g.tower().mu()).unwrap(), red).unwrap();
            let rhs = singer
                .act(&subspace_of_center(&g, red).unwrap(), 1)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn class_counts() {
        let n = |x: u64| BigUint::from(x);
        assert_eq!(count_classes(2, 4, 2, 1, false).unwrap(), n(3));
        assert_eq!(count_classes(2, 4, 2, 1, true).unwrap(), n(2));
        assert_eq!(count_classes(2, 4, 2, 2, false).unwrap(), n(1));
        assert_eq!(count_classes(2, 6, 2, 1, false).unwrap(), n(11));
        assert!(matches!(
            count_classes(2, 4, 2, 3, false),
            Err(Error::InvalidParameter(_))
        ));
        assert_eq!(
            enumerated_class_counts(2, 4, 2, 1, DEFAULT_PGL_CAP).unwrap(),
            (3, 2)
        );
    }

    #[test]
    fn correspondence_small() {
        let r = verify_correspondence(2, 4, 2, 1, DEFAULT_PGL_CAP).unwrap();
        assert_eq!(
            (r.classes, r.orbits, r.minimal_classes, r.free_orbits),
            (3, 3, 2, 2)
        );
        let r = verify_correspondence(2, 4, 2, 2, DEFAULT_PGL_CAP).unwrap();
        assert_eq!((r.classes, r.orbits), (1, 1));
    }
}
