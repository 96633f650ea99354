//! The André/Bruck–Bose model of PG(r−1, p^h) inside PG((r−1)d', p^n), d' = h/n.
//!
//! Affine points `(1, x_1, …, x_{r−1})` become `(1, coords(x_1), …, coords(x_{r−1}))`
//! and a point of the axis becomes the (d'−1)-space of the field-reduction
//! spread in the hyperplane `X₀₀ = 0`. Coordinates are in the power basis of
//! `μ` over GF(p^n), the same basis the elation and Singer modules use.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::theta_u64;
use crate::elation::{elation_matrix, enumerate_subgroups, subspace_of_center, ElationGroup};
use crate::error::{Error, Result};
use crate::gf::{make_field, Elem, FieldReduction, FieldTower};
use crate::matrix::Matrix;
use crate::pspace::{enumerate_points, is_spread, ProjPoint, Subspace, SubspaceFamily};

/// Affine point counts up to this are swept exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;
/// Size of the seeded sample used above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLE_SIZE: usize = 256;

#[derive(Clone, Debug)]
pub struct StarFrame {
    r: usize,
    red: FieldReduction,
    zstar: Subspace,
    astar: Subspace,
    spread: Vec<Subspace>,
}

impl StarFrame {
    pub fn new(r: usize, p: u64, h: u32, n: u32) -> Result<StarFrame> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!(
                "r must be at least 2, got {r}"
            )));
        }
        let tower = Arc::new(make_field(p, h)?);
        let red = FieldReduction::new(tower.clone(), n)?;
        let small = red.small().clone();
        let dprime = red.dprime();
        let dim = (r - 1) * dprime + 1;
        let unit = |i: usize| {
            let mut v = vec![Elem::ZERO; dim];
            v[i] = small.one();
            v
        };
        let zstar =
            Subspace::canonicalize(&small, &(dim - dprime..dim).map(unit).collect::<Vec<_>>())?;
        let astar = Subspace::canonicalize(&small, &(1..dim).map(unit).collect::<Vec<_>>())?;
        let mut frame = StarFrame {
            r,
            red,
            zstar,
            astar,
            spread: Vec::new(),
        };
        let spread = enumerate_points(&tower, r - 1)
            .iter()
            .map(|pt| {
                let mut v = vec![Elem::ZERO];
                v.extend_from_slice(pt.coords());
                frame.star_infinite(&v)
            })
            .collect::<Result<Vec<_>>>()?;
        frame.spread = spread;
        Ok(frame)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn reduction(&self) -> &FieldReduction {
        &self.red
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        self.red.big()
    }

    pub fn small(&self) -> &Arc<FieldTower> {
        self.red.small()
    }

    pub fn dprime(&self) -> usize {
        self.red.dprime()
    }

    /// Vector dimension `(r−1)d' + 1` of the big space.
    pub fn dim(&self) -> usize {
        (self.r - 1) * self.dprime() + 1
    }

    pub fn zstar(&self) -> &Subspace {
        &self.zstar
    }

    pub fn astar(&self) -> &Subspace {
        &self.astar
    }

    /// Spread elements, one per point of the axis, in the order of those points.
    pub fn spread(&self) -> &[Subspace] {
        &self.spread
    }

    fn check_len(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.r {
            return Err(Error::AmbientMismatch(format!(
                "point with {} coordinates in PG({}, q)",
                x.len(),
                self.r - 1
            )));
        }
        Ok(())
    }

    /// `x*` for an affine point `x` (first coordinate nonzero).
    pub fn star_point(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(x)?;
        let tower = self.tower();
        if x[0].is_zero() {
            return Err(Error::InvalidParameter(
                "point on the axis; use star_infinite".into(),
            ));
        }
        let inv = tower.inv(x[0])?;
        let mut out = vec![self.small().one()];
        for &xi in &x[1..] {
            out.extend(self.red.coords(tower.mul(xi, inv)));
        }
        Ok(out)
    }

    /// Inverse of [`StarFrame::star_point`], normalized with first coordinate 1.
    pub fn unstar_point(&self, y: &[Elem]) -> Result<Vec<Elem>> {
        if y.len() != self.dim() {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {}, expected {}",
                y.len(),
                self.dim()
            )));
        }
        if y[0].is_zero() {
            return Err(Error::InvalidParameter("point at infinity".into()));
        }
        let small = self.small();
        let inv = small.inv(y[0])?;
        let scaled: Vec<Elem> = y.iter().map(|&c| small.mul(c, inv)).collect();
        let mut out = vec![self.tower().one()];
        for block in scaled[1..].chunks(self.dprime()) {
            out.push(self.red.from_coords(block)?);
        }
        Ok(out)
    }

    /// The spread element `{ (0, coords(c·x_1), …, coords(c·x_{r−1})) : c ∈ GF(p^h) }`
    /// of a point `x` on the axis.
    pub fn star_infinite(&self, x: &[Elem]) -> Result<Subspace> {
        self.check_len(x)?;
        if !x[0].is_zero() {
            return Err(Error::InvalidParameter(
                "affine point; use star_point".into(),
            ));
        }
        if x.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidParameter("zero vector".into()));
        }
        let tower = self.tower();
        let rows: Vec<Vec<Elem>> = (0..self.dprime())
            .map(|i| {
                let c = tower.mu_pow(i as u64);
                let mut v = vec![Elem::ZERO];
                for &xi in &x[1..] {
                    v.extend(self.red.coords(tower.mul(c, xi)));
                }
                v
            })
            .collect();
        Subspace::canonicalize(self.small(), &rows)
    }

    /// The map induced on the big space by `e_λ`: a translation fixing `A*` pointwise.
    pub fn star_elation_matrix(&self, lambda: Elem) -> Matrix {
        let small = self.small();
        let dim = self.dim();
        let mut m = Matrix::identity(small, dim);
        for (i, c) in self.red.coords(lambda).into_iter().enumerate() {
            m[(dim - self.dprime() + i, 0)] = c;
        }
        m
    }

    /// A subspace of z* = PG(d'−1, p^n) placed in the last coordinate block.
    pub fn embed_in_zstar(&self, x: &Subspace) -> Result<Subspace> {
        if x.ambient() != self.dprime() {
            return Err(Error::AmbientMismatch(format!(
                "subspace of GF(q)^{}, expected {}",
                x.ambient(),
                self.dprime()
            )));
        }
        let pad = self.dim() - self.dprime();
        let rows: Vec<Vec<Elem>> = x
            .basis()
            .into_iter()
            .map(|r| {
                let mut v = vec![Elem::ZERO; pad];
                v.extend(r);
                v
            })
            .collect();
        Subspace::canonicalize(self.small(), &rows)
    }

    /// `H̄`: the (d−1)-space of z* defined by `H_E`.
    pub fn center_subspace(&self, e: &ElationGroup) -> Result<Subspace> {
        self.embed_in_zstar(&subspace_of_center(e, &self.red)?)
    }

    /// Star image of the orbit `x^E`, checked to be the affine part of the
    /// d-space `⟨x*, H̄⟩`.
    pub fn orbit_image(&self, x: &[Elem], e: &ElationGroup) -> Result<OrbitImage> {
        let hbar = self.center_subspace(e)?;
        self.orbit_image_with(x, e, &hbar)
    }

    fn orbit_image_with(
        &self,
        x: &[Elem],
        e: &ElationGroup,
        hbar: &Subspace,
    ) -> Result<OrbitImage> {
        self.check_len(x)?;
        let tower = self.tower();
        let small = self.small();
        let d = hbar.dim();
        let images: BTreeSet<Vec<Elem>> = e
            .elements()
            .into_iter()
            .map(|lambda| {
                let y = elation_matrix(tower, lambda, self.r)?.apply(tower, x);
                self.star_point(&y)
            })
            .collect::<Result<_>>()?;
        if images.len() as u64 != e.order() {
            return Err(Error::Verification(format!(
                "orbit has {} points, expected {}",
                images.len(),
                e.order()
            )));
        }
        let rows: Vec<Vec<Elem>> = images.iter().cloned().collect();
        let closure = Subspace::span(small, self.dim(), &rows).expect("affine points are nonzero");
        if closure.dim() != d + 1 {
            return Err(Error::Verification(format!(
                "orbit spans a {}-space, expected {d}",
                closure.dim() - 1
            )));
        }
        let affine: BTreeSet<Vec<Elem>> = closure
            .points(small)
            .into_iter()
            .filter(|pt| !pt.coords()[0].is_zero())
            .map(|pt| pt.coords().to_vec())
            .collect();
        if affine != images {
            return Err(Error::Verification(
                "orbit image is not the affine part of its span".into(),
            ));
        }
        let expected = Subspace::span(small, self.dim(), &[self.star_point(x)?])
            .expect("nonzero")
            .join(small, hbar);
        if expected != closure {
            return Err(Error::Verification(
                "orbit image differs from ⟨x*, H̄⟩".into(),
            ));
        }
        let points = images
            .iter()
            .map(|v| ProjPoint::normalize(small, v).expect("nonzero"))
            .collect();
        Ok(OrbitImage {
            closure,
            points,
            affine: true,
        })
    }

    /// Every sampled orbit image meets z* in the same (d−1)-space `H̄`, and
    /// each `e ∈ E` fixes `A*` pointwise.
    pub fn common_intersection_check(
        &self,
        e: &ElationGroup,
        sample: &[Vec<Elem>],
    ) -> Result<bool> {
        if sample.is_empty() {
            return Err(Error::InvalidParameter("empty sample".into()));
        }
        let hbar = self.center_subspace(e)?;
        for x in sample {
            let img = self.orbit_image_with(x, e, &hbar)?;
            if img.closure.intersect(self.small(), &self.zstar).as_ref() != Some(&hbar) {
                return Ok(false);
            }
        }
        Ok(self.fixes_astar(e))
    }

    /// Each `e_λ` acts as the identity on the vectors of `A*`.
    pub fn fixes_astar(&self, e: &ElationGroup) -> bool {
        let small = self.small();
        e.elements().into_iter().all(|lambda| {
            let t = self.star_elation_matrix(lambda);
            self.astar.basis().iter().all(|v| &t.apply(small, v) == v)
        })
    }

    /// `star(e_λ x) = T_λ star(x)` for every sampled `x` and `λ ∈ H_E`.
    pub fn commutes(&self, e: &ElationGroup, sample: &[Vec<Elem>]) -> Result<bool> {
        let tower = self.tower();
        let small = self.small();
        for lambda in e.elements() {
            let m = elation_matrix(tower, lambda, self.r)?;
            let t = self.star_elation_matrix(lambda);
            for x in sample {
                if self.star_point(&m.apply(tower, x))? != t.apply(small, &self.star_point(x)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// For each sampled pair of points of PG(r−1, p^h), the star images of
    /// their joining line form a d'-space through one spread element (affine
    /// line) or lie in the (2d'−1)-space spanned by two spread elements (line
    /// of the axis).
    pub fn incidence_check(&self, lines: &[(Vec<Elem>, Vec<Elem>)]) -> Result<bool> {
        let tower = self.tower();
        let small = self.small();
        let dp = self.dprime();
        for (a, b) in lines {
            self.check_len(a)?;
            self.check_len(b)?;
            let line = Subspace::span(tower, self.r, &[a.clone(), b.clone()])
                .filter(|l| l.dim() == 2)
                .ok_or_else(|| {
                    Error::InvalidParameter("the two points do not span a line".into())
                })?;
            let (affine, infinite): (Vec<ProjPoint>, Vec<ProjPoint>) = line
                .points(tower)
                .into_iter()
                .partition(|pt| !pt.coords()[0].is_zero());
            if infinite.len() == 1 {
                let at_inf = self.star_infinite(infinite[0].coords())?;
                let mut rows = at_inf.basis();
                for pt in &affine {
                    rows.push(self.star_point(pt.coords())?);
                }
                let w = Subspace::span(small, self.dim(), &rows).expect("nonzero");
                if w.dim() != dp + 1 || w.intersect(small, &self.astar).as_ref() != Some(&at_inf) {
                    return Ok(false);
                }
            } else {
                let elems: Vec<Subspace> = infinite
                    .iter()
                    .map(|pt| self.star_infinite(pt.coords()))
                    .collect::<Result<_>>()?;
                let w = elems[0].join(small, &elems[1]);
                if w.dim() != 2 * dp || !elems.iter().all(|x| w.contains_subspace(small, x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn affine_point_count(&self) -> u64 {
        (self.tower().order() as u64).pow(self.r as u32 - 1)
    }

    /// All affine points when there are at most [`EXHAUSTIVE_LIMIT`] (or when
    /// `exhaustive`), otherwise [`SAMPLE_SIZE`] points drawn with `seed`.
    pub fn sample_affine_points(&self, seed: u64, exhaustive: bool) -> Vec<Vec<Elem>> {
        let tower = self.tower();
        let q = tower.order() as u64;
        let total = self.affine_point_count();
        let point = |idx: &[u64]| {
            let mut v = vec![tower.one()];
            v.extend(
                idx.iter()
                    .map(|&i| tower.from_index(i as u32).expect("index below field order")),
            );
            v
        };
        if exhaustive || total <= EXHAUSTIVE_LIMIT {
            (0..total)
                .map(|k| {
                    let idx: Vec<u64> = (0..self.r - 1).map(|j| k / q.pow(j as u32) % q).collect();
                    point(&idx)
                })
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..SAMPLE_SIZE)
                .map(|_| {
                    let idx: Vec<u64> = (0..self.r - 1).map(|_| rng.gen_range(0..q)).collect();
                    point(&idx)
                })
                .collect()
        }
    }

    /// Lines for [`StarFrame::incidence_check`]: consecutive sampled affine
    /// points, affine points paired with points of the axis, and lines of the axis.
    pub fn sample_lines(&self, sample: &[Vec<Elem>]) -> Vec<(Vec<Elem>, Vec<Elem>)> {
        let tower = self.tower();
        let infinite: Vec<Vec<Elem>> = enumerate_points(tower, self.r - 1)
            .into_iter()
            .take(SAMPLE_SIZE)
            .map(|pt| {
                let mut v = vec![Elem::ZERO];
                v.extend_from_slice(pt.coords());
                v
            })
            .collect();
        let mut lines: Vec<(Vec<Elem>, Vec<Elem>)> = sample
            .windows(2)
            .filter(|w| w[0] != w[1])
            .take(SAMPLE_SIZE)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        lines.extend(
            sample
                .iter()
                .take(SAMPLE_SIZE)
                .enumerate()
                .map(|(i, x)| (x.clone(), infinite[i % infinite.len()].clone())),
        );
        lines.extend(
            infinite
                .windows(2)
                .take(64)
                .map(|w| (w[0].clone(), w[1].clone())),
        );
        lines
    }
}

#[derive(Clone, Debug)]
pub struct OrbitImage {
    /// Projective closure, a d-space.
    pub closure: Subspace,
    /// The `p^m` star images, normalized and sorted.
    pub points: Vec<ProjPoint>,
    pub affine: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSweep {
    pub m: u32,
    pub d: u32,
    pub groups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruckBoseReport {
    pub r: usize,
    pub p: u64,
    pub h: u32,
    pub n: u32,
    pub dprime: usize,
    pub ambient_dim: usize,
    pub spread_size: usize,
    pub exhaustive: bool,
    pub sampled_points: usize,
    pub incidence_lines: usize,
    pub sweeps: Vec<GroupSweep>,
}

/// Runs every check of this module for all GF(p^n)-closed elation groups of
/// order `p^m` (every `m` with `n | m` when `m` is `None`).
#[allow(clippy::too_many_arguments)]
pub fn verify_bruckbose(
    r: usize,
    p: u64,
    h: u32,
    n: u32,
    m: Option<u32>,
    seed: u64,
    exhaustive: bool,
    cap: u64,
) -> Result<BruckBoseReport> {
    let frame = StarFrame::new(r, p, h, n)?;
    let small = frame.small().clone();
    let dp = frame.dprime();

    let in_astar: Vec<Subspace> = frame
        .spread()
        .iter()
        .map(|x| {
            let rows: Vec<Vec<Elem>> = x.basis().into_iter().map(|v| v[1..].to_vec()).collect();
            Subspace::canonicalize(&small, &rows)
        })
        .collect::<Result<_>>()?;
    let family = SubspaceFamily::new(in_astar)?;
    let axis_points = theta_u64(r as u32 - 1, frame.tower().order() as u64) as usize;
    if family.len() != axis_points || !is_spread(&small, &family) {
        return Err(Error::Verification(format!(
            "{} spread elements do not partition A*",
            family.len()
        )));
    }
    if !frame.spread().contains(frame.zstar()) {
        return Err(Error::Verification("z* is not a spread element".into()));
    }

    let ms: Vec<u32> = match m {
        Some(m) => {
            if m == 0 || m > h || m % n != 0 {
                return Err(Error::InvalidParameter(format!(
                    "m = {m} must satisfy n | m <= h"
                )));
            }
            vec![m]
        }
        None => (1..=h).filter(|m| m % n == 0).collect(),
    };
    let sample = frame.sample_affine_points(seed, exhaustive);
    let mut sweeps = Vec::new();
    for m in ms {
        let groups: Vec<ElationGroup> = enumerate_subgroups(p, h, m, cap)?
            .into_iter()
            .filter(|g| g.is_closed_over(n))
            .map(|g| g.with_r(r))
            .collect::<Result<_>>()?;
        for g in &groups {
            if !frame.common_intersection_check(g, &sample)? {
                return Err(Error::Verification(format!(
                    "orbit images of a group of order {p}^{m} miss the common H̄"
                )));
            }
            if !frame.commutes(g, &sample)? {
                return Err(Error::Verification(
                    "star map does not intertwine the elation action".into(),
                ));
            }
        }
        sweeps.push(GroupSweep {
            m,
            d: m / n,
            groups: groups.len(),
        });
    }
    let lines = frame.sample_lines(&sample);
    if !frame.incidence_check(&lines)? {
        return Err(Error::Verification(
            "line images violate the incidence structure".into(),
        ));
    }
    Ok(BruckBoseReport {
        r,
        p,
        h,
        n,
        dprime: dp,
        ambient_dim: frame.dim() - 1,
        spread_size: frame.spread().len(),
        exhaustive: exhaustive || frame.affine_point_count() <= EXHAUSTIVE_LIMIT,
        sampled_points: sample.len(),
        incidence_lines: lines.len(),
        sweeps,
    })
}
