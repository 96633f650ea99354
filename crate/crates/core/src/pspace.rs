//! Points and subspaces of PG(s−1, q) in canonical form.
//!
//! A subspace is stored as the reduced row-echelon basis of its underlying
//! vector space, which is unique. Ordering compares the basis row-major by
//! element index, so the smallest member of a family is its canonical
//! representative.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::combinat::{gaussian_binomial, theta_u64};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};
use crate::matrix::Matrix;

/// Default bound on the number of subspaces a single enumeration may produce.
pub const DEFAULT_SUBSPACE_CAP: u64 = 10_000_000;

/// A nonzero vector scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Elem>,
}

impl ProjPoint {
    /// Returns `None` for the zero vector.
    pub fn normalize(f: &FieldTower, v: &[Elem]) -> Option<ProjPoint> {
        let lead = *v.iter().find(|x| !x.is_zero())?;
        let inv = f.inv(lead).expect("nonzero");
        Some(ProjPoint {
            coords: v.iter().map(|&x| f.mul(x, inv)).collect(),
        })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    /// Base-`q` integer encoding of the normalized vector.
    pub fn key(&self, q: u32) -> u64 {
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, e| acc * q as u64 + e.index() as u64)
    }
}

/// A `t`-dimensional vector subspace of GF(q)^s, i.e. a (t−1)-space of PG(s−1, q).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    s: usize,
    t: usize,
    rows: Vec<Elem>,
}

impl Subspace {
    /// Canonical form of the row space of a `t × s` matrix of rank `t`.
    pub fn canonicalize(f: &FieldTower, rows: &[Vec<Elem>]) -> Result<Subspace> {
        let t = rows.len();
        if t == 0 {
            return Err(Error::RankDeficient {
                rank: 0,
                expected: 1,
            });
        }
        let s = rows[0].len();
        if rows.iter().any(|r| r.len() != s) {
            return Err(Error::AmbientMismatch("ragged rows".into()));
        }
        let sub = Subspace::span(f, s, rows).ok_or(Error::RankDeficient {
            rank: 0,
            expected: t,
        })?;
        if sub.t != t {
            return Err(Error::RankDeficient {
                rank: sub.t,
                expected: t,
            });
        }
        Ok(sub)
    }

    /// Row space of arbitrary vectors of length `s`; `None` if they span only zero.
    pub fn span(f: &FieldTower, s: usize, vectors: &[Vec<Elem>]) -> Option<Subspace> {
        if vectors.is_empty() {
            return None;
        }
        let mut m = Matrix::from_rows(vectors);
        assert_eq!(m.cols(), s);
        let rank = m.rref_in_place(f).len();
        if rank == 0 {
            return None;
        }
        Some(Subspace {
            s,
            t: rank,
            rows: m.data()[..rank * s].to_vec(),
        })
    }

    pub fn from_point(pt: &ProjPoint) -> Subspace {
        Subspace {
            s: pt.ambient(),
            t: 1,
            rows: pt.coords.clone(),
        }
    }

    /// Vector dimension `t`.
    pub fn dim(&self) -> usize {
        self.t
    }

    pub fn ambient(&self) -> usize {
        self.s
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.s..(i + 1) * self.s]
    }

    pub fn basis(&self) -> Vec<Vec<Elem>> {
        (0..self.t).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.t)
            .map(|i| {
                self.row(i)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("rank t")
            })
            .collect()
    }

    /// Reduces `v` against the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, f: &FieldTower, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (i, c) in self.pivots().into_iter().enumerate() {
            let factor = v[c];
            if factor.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(self.row(i)) {
                *x = f.sub(*x, f.mul(factor, r));
            }
        }
        v
    }

    pub fn contains_vector(&self, f: &FieldTower, v: &[Elem]) -> bool {
        v.len() == self.s && self.reduce(f, v).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, f: &FieldTower, pt: &ProjPoint) -> Result<bool> {
        if pt.ambient() != self.s {
            return Err(Error::AmbientMismatch(format!(
                "point in {} coordinates, subspace in {}",
                pt.ambient(),
                self.s
            )));
        }
        Ok(self.contains_vector(f, pt.coords()))
    }

    pub fn contains_subspace(&self, f: &FieldTower, other: &Subspace) -> bool {
        other.s == self.s && (0..other.t).all(|i| self.contains_vector(f, other.row(i)))
    }

    /// Smallest subspace containing both.
    pub fn join(&self, f: &FieldTower, other: &Subspace) -> Subspace {
        let mut rows = self.basis();
        rows.extend(other.basis());
        Subspace::span(f, self.s, &rows).expect("nonzero")
    }

    /// Intersection by the Zassenhaus sum-intersection algorithm; `None` if trivial.
    pub fn intersect(&self, f: &FieldTower, other: &Subspace) -> Option<Subspace> {
        let s = self.s;
        let mut rows = Vec::with_capacity(self.t + other.t);
        for i in 0..self.t {
            let mut r = self.row(i).to_vec();
            r.extend_from_slice(self.row(i));
            rows.push(r);
        }
        for i in 0..other.t {
            let mut r = other.row(i).to_vec();
            r.extend(std::iter::repeat_n(Elem::ZERO, s));
            rows.push(r);
        }
        let mut m = Matrix::from_rows(&rows);
        let rank = m.rref_in_place(f).len();
        let inter: Vec<Vec<Elem>> = (0..rank)
            .map(|i| m.row(i))
            .filter(|r| r[..s].iter().all(|x| x.is_zero()))
            .map(|r| r[s..].to_vec())
            .collect();
        Subspace::span(f, s, &inter)
    }

    /// All `theta(t, q)` points, in the order of their combination coefficients.
    pub fn points(&self, f: &FieldTower) -> Vec<ProjPoint> {
        let q = f.order();
        let total = (q as u64).pow(self.t as u32);
        let mut out = Vec::new();
        for k in 1..total {
            // coefficient vector: base-q digits of k; keep those whose first nonzero digit is 1
            let mut coeffs = Vec::with_capacity(self.t);
            let mut x = k;
            for _ in 0..self.t {
                coeffs.push(Elem::from_index_unchecked((x % q as u64) as u32));
                x /= q as u64;
            }
            coeffs.reverse();
            if coeffs.iter().find(|c| !c.is_zero()) != Some(&f.one()) {
                continue;
            }
            let mut v = vec![Elem::ZERO; self.s];
            for (i, &c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (x, &r) in v.iter_mut().zip(self.row(i)) {
                    *x = f.add(*x, f.mul(c, r));
                }
            }
            out.push(ProjPoint { coords: v });
        }
        out
    }

    /// Applies `m` to every basis row (as a column vector) and re-canonicalizes.
    pub fn transform(&self, f: &FieldTower, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.s || m.rows() != self.s {
            return Err(Error::AmbientMismatch(format!(
                "{}x{} matrix on PG({}, q)",
                m.rows(),
                m.cols(),
                self.s - 1
            )));
        }
        let rows: Vec<Vec<Elem>> = (0..self.t).map(|i| m.apply(f, self.row(i))).collect();
        Subspace::canonicalize(f, &rows)
    }
}

/// A set of subspaces of equal dimension in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    s: usize,
    t: usize,
    members: Vec<Subspace>,
}

impl SubspaceFamily {
    /// Sorts and deduplicates; all members must share `(s, t)`.
    pub fn new(mut members: Vec<Subspace>) -> Result<SubspaceFamily> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty family".into()))?;
        let (s, t) = (first.s, first.t);
        if members.iter().any(|m| m.s != s || m.t != t) {
            return Err(Error::AmbientMismatch(
                "family members differ in dimension".into(),
            ));
        }
        members.sort();
        members.dedup();
        Ok(SubspaceFamily { s, t, members })
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    pub fn into_members(self) -> Vec<Subspace> {
        self.members
    }
}

pub fn enumerate_points(f: &FieldTower, s: usize) -> Vec<ProjPoint> {
    let q = f.order() as u64;
    let mut out = Vec::with_capacity(theta_u64(s as u32, q) as usize);
    // leading 1 at position i, arbitrary entries after it
    for lead in 0..s {
        let free = s - lead - 1;
        for k in 0..q.pow(free as u32) {
            let mut v = vec![Elem::ZERO; s];
            v[lead] = f.one();
            let mut x = k;
            for j in (lead + 1..s).rev() {
                v[j] = Elem::from_index_unchecked((x % q) as u32);
                x /= q;
            }
            out.push(ProjPoint { coords: v });
        }
    }
    out.sort();
    out
}

/// All `t`-dimensional subspaces of GF(q)^s, generated pattern by pattern
/// from the pivot columns of their echelon forms, returned sorted.
pub fn enumerate_subspaces(f: &FieldTower, s: usize, t: usize, cap: u64) -> Result<SubspaceFamily> {
    if t == 0 || t > s {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= s, got t = {t}, s = {s}"
        )));
    }
    let q = f.order() as u64;
    let expected = gaussian_binomial(s as u32, t as u32, q)?;
    if expected > cap.into() {
        return Err(Error::CapExceeded {
            needed: expected.to_string(),
            cap,
        });
    }
    let mut members = Vec::with_capacity(expected.to_usize().unwrap_or(0));
    for pivots in combinations(s, t) {
        // free positions: row i, column j > pivots[i], j not a pivot column
        let free: Vec<(usize, usize)> = (0..t)
            .flat_map(|i| {
                ((pivots[i] + 1)..s)
                    .filter(|j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let count = q.pow(free.len() as u32);
        for k in 0..count {
            let mut rows = vec![Elem::ZERO; t * s];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i * s + pc] = f.one();
            }
            let mut x = k;
            for &(i, j) in free.iter().rev() {
                rows[i * s + j] = Elem::from_index_unchecked((x % q) as u32);
                x /= q;
            }
            members.push(Subspace { s, t, rows });
        }
    }
    members.sort();
    Ok(SubspaceFamily { s, t, members })
}

/// How many members of `family` pass through each point of the ambient space.
pub fn incidence_tally(f: &FieldTower, family: &[Subspace]) -> HashMap<u64, u64> {
    let q = f.order();
    let mut tally = HashMap::new();
    for x in family {
        for pt in x.points(f) {
            *tally.entry(pt.key(q)).or_insert(0) += 1;
        }
    }
    tally
}

/// True iff every point of PG(s−1, q) lies on exactly `k` members.
pub fn is_cover(f: &FieldTower, family: &SubspaceFamily, k: u64) -> bool {
    let Some(first) = family.members.first() else {
        return false;
    };
    let tally = incidence_tally(f, &family.members);
    let points = theta_u64(first.s as u32, f.order() as u64);
    tally.len() as u64 == points && tally.values().all(|&c| c == k)
}

pub fn is_spread(f: &FieldTower, family: &SubspaceFamily) -> bool {
    is_cover(f, family, 1)
}

/// True iff each member of `spread` lies in `w` or meets it trivially.
pub fn fills(f: &FieldTower, spread: &SubspaceFamily, w: &Subspace) -> bool {
    spread.members.iter().all(|x| {
        let joined = x.join(f, w).dim();
        joined == w.dim() || joined == w.dim() + x.dim()
    })
}

/// Ascending `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}
