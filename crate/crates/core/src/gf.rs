//! Finite fields GF(p^h) with explicit log/antilog tables.
//!
//! Elements are stored by index: the coefficient vector `(c_0, …, c_{h-1})` of
//! the polynomial representative is read as the base-`p` integer
//! `c_0 + c_1 p + … + c_{h-1} p^{h-1}`. All "smallest" selections (modulus,
//! primitive element, subfield roots) use this integer order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order handled by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of a [`FieldTower`], identified by its base-`p` coefficient index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Callers guarantee `idx` is below the order of the field in use.
    pub(crate) fn from_index_unchecked(idx: u32) -> Elem {
        Elem(idx)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// GF(p^h) together with its primitive element `mu` and the data needed to
/// move between the field and its subfields GF(p^n), n | h.
#[derive(Clone)]
pub struct FieldTower {
    p: u32,
    h: u32,
    size: u32,
    modulus: Vec<u32>,
    mu: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    subfield_gens: BTreeMap<u32, Elem>,
    // per n | h: inverse over GF(p) of the basis {γ^j μ^i} (column i*n + j)
    coord_inv: BTreeMap<u32, Vec<Vec<u32>>>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("modulus", &self.modulus)
            .field("mu", &self.mu)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.h == other.h
            && self.modulus == other.modulus
            && self.mu == other.mu
    }
}

impl Eq for FieldTower {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^n` into `(p, n)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    let fs = prime_factors(q);
    if q < 2 || fs.len() != 1 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let p = fs[0];
    let mut n = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        n += 1;
    }
    Ok((p as u32, n))
}

pub fn divisors_u32(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

// Dense polynomial helpers over GF(p), ascending coefficients.

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let lead_inv = inv_mod(b[db], p) as u64;
    for dr in (db..r.len()).rev() {
        let c = r[dr] as u64 * lead_inv % p as u64;
        if c == 0 {
            continue;
        }
        let shift = dr - db;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
    }
    r.truncate(db.max(1));
    r
}

fn poly_is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn digits(mut k: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (k % p as u64) as u32;
        k /= p as u64;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p` digits of `k`.
fn monic_from_index(k: u64, p: u32, deg: usize) -> Vec<u32> {
    let mut c = digits(k, p, deg);
    c.push(1);
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    for e in 1..=deg / 2 {
        let count = (p as u64).pow(e as u32);
        for k in 0..count {
            let g = monic_from_index(k, p, e);
            if poly_is_zero(&poly_rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

/// Slow multiplication modulo the defining polynomial, used only while the
/// tables are being built.
fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let h = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * h];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(h, 0);
    r
}

fn powmod_poly(a: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let h = modulus.len() - 1;
    let mut r = vec![0; h];
    r[0] = 1;
    let mut b = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, modulus, p);
        }
        b = mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    r
}

/// Gauss–Jordan inverse of a square matrix over GF(p).
fn invert_mod_p(m: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p) as u64;
        for x in a[col].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = a[r][col] as u64;
                let pivot_row = a[col].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                    let t = (c * y as u64 % p as u64) as u32;
                    *x = (*x + p - t) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Builds GF(p^h) deterministically: the modulus is the first monic irreducible
/// of degree `h` in index order and `mu` the first element of full order.
pub fn make_field(p: u64, h: u32) -> Result<FieldTower> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if h == 0 {
        return Err(Error::ZeroDegree);
    }
    let size = (p as u128).pow(h);
    if size > MAX_FIELD_ORDER as u128 {
        return Err(Error::CapExceeded {
            needed: format!("{p}^{h}"),
            cap: MAX_FIELD_ORDER,
        });
    }
    let p32 = p as u32;
    let size = size as u32;
    let hh = h as usize;

    let modulus = (0..size as u64)
        .map(|k| monic_from_index(k, p32, hh))
        .find(|f| is_irreducible(f, p32))
        .expect("an irreducible polynomial of every degree exists");

    let group = size as u64 - 1;
    let factors = prime_factors(group);
    let mut mu_coeffs = None;
    for idx in 1..size {
        let a = digits(idx as u64, p32, hh);
        let one = {
            let mut o = vec![0; hh];
            o[0] = 1;
            o
        };
        if powmod_poly(&a, group, &modulus, p32) != one {
            continue;
        }
        if factors
            .iter()
            .all(|&l| powmod_poly(&a, group / l, &modulus, p32) != one)
        {
            mu_coeffs = Some(a);
            break;
        }
    }
    let mu_coeffs = mu_coeffs.expect("multiplicative group is cyclic");
    let mu = Elem(undigits(&mu_coeffs, p32));

    let mut exp = Vec::with_capacity(group as usize);
    let mut log = vec![0u32; size as usize];
    let mut cur = vec![0u32; hh];
    cur[0] = 1;
    for k in 0..group {
        let idx = undigits(&cur, p32);
        exp.push(idx);
        log[idx as usize] = k as u32;
        cur = mulmod(&cur, &mu_coeffs, &modulus, p32);
    }

    let mut tower = FieldTower {
        p: p32,
        h,
        size,
        modulus,
        mu,
        exp,
        log,
        subfield_gens: BTreeMap::new(),
        coord_inv: BTreeMap::new(),
    };
    for n in divisors_u32(h) {
        let q_n = p.pow(n);
        let gamma = tower.pow(mu, group / (q_n - 1));
        tower.subfield_gens.insert(n, gamma);
        let dprime = h / n;
        let mut cols = Vec::with_capacity(hh);
        for i in 0..dprime {
            for j in 0..n {
                let b = tower.mul(tower.pow(gamma, j as u64), tower.pow(mu, i as u64));
                cols.push(tower.coeffs(b));
            }
        }
        let rows: Vec<Vec<u32>> = (0..hh)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let inv = invert_mod_p(&rows, p32).ok_or_else(|| {
            Error::Verification(format!("power basis of mu over GF({p}^{n}) is singular"))
        })?;
        tower.coord_inv.insert(n, inv);
    }
    Ok(tower)
}

impl FieldTower {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.h
    }

    /// Number of elements, `p^h`.
    pub fn order(&self) -> u32 {
        self.size
    }

    /// Defining polynomial over GF(p), ascending, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn mu(&self) -> Elem {
        self.mu
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// The prime-field element `c mod p`.
    pub fn constant(&self, c: u64) -> Elem {
        Elem((c % self.p as u64) as u32)
    }

    pub fn from_index(&self, idx: u32) -> Result<Elem> {
        if idx >= self.size {
            return Err(Error::BadElement(format!("index {idx} >= {}", self.size)));
        }
        Ok(Elem(idx))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.h as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem> {
        if c.len() != self.h as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::BadElement(format!(
                "{c:?} over GF({}^{})",
                self.p, self.h
            )));
        }
        Ok(Elem(undigits(c, self.p)))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        let g = self.size - 1;
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % g as u64;
        Elem(self.exp[k as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let g = self.size - 1;
        Ok(Elem(self.exp[((g - self.log[a.0 as usize]) % g) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a.0 == 0 {
            return if e == 0 { Elem(1) } else { Elem(0) };
        }
        let g = (self.size - 1) as u128;
        let k = (self.log[a.0 as usize] as u128 * e as u128) % g;
        Elem(self.exp[k as usize])
    }

    /// Discrete logarithm to base `mu`.
    pub fn log(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.log[a.0 as usize] as u64)
    }

    /// `mu^k`, with `k` reduced modulo `p^h - 1`.
    pub fn mu_pow(&self, k: u64) -> Elem {
        Elem(self.exp[(k % (self.size as u64 - 1)) as usize])
    }

    /// Multiplicative order, found by stripping prime factors off `p^h - 1`.
    pub fn element_order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let mut order = self.size as u64 - 1;
        for l in prime_factors(order) {
            while order.is_multiple_of(l) && self.pow(a, order / l) == self.one() {
                order /= l;
            }
        }
        Ok(order)
    }

    fn check_divisor(&self, n: u32) -> Result<()> {
        if n == 0 || !self.h.is_multiple_of(n) {
            return Err(Error::NotDivisor {
                n: n as u64,
                of: self.h as u64,
            });
        }
        Ok(())
    }

    /// `a ↦ a^(p^n)`.
    pub fn frobenius(&self, a: Elem, n: u32) -> Elem {
        self.pow(a, (self.p as u64).pow(n))
    }

    /// `mu^((p^h-1)/(p^n-1))`, a primitive element of the subfield GF(p^n).
    pub fn subfield_generator(&self, n: u32) -> Result<Elem> {
        self.check_divisor(n)?;
        Ok(self.subfield_gens[&n])
    }

    pub fn in_subfield(&self, a: Elem, n: u32) -> bool {
        self.frobenius(a, n) == a
    }

    /// The `p^n` fixed points of `x ↦ x^(p^n)`, ascending by index.
    pub fn subfield_elements(&self, n: u32) -> Result<Vec<Elem>> {
        self.check_divisor(n)?;
        Ok(self
            .elements()
            .filter(|&x| self.in_subfield(x, n))
            .collect())
    }

    /// Minimal polynomial of `a` over GF(p^n), as ascending coefficients in this
    /// field (all lying in the subfield). Monic.
    pub fn minimal_polynomial(&self, a: Elem, n: u32) -> Result<Vec<Elem>> {
        self.check_divisor(n)?;
        let mut conj = vec![a];
        let mut c = self.frobenius(a, n);
        while c != a {
            conj.push(c);
            c = self.frobenius(c, n);
        }
        let mut poly = vec![self.one()];
        for &r in &conj {
            // poly *= (X - r)
            let mut next = vec![self.zero(); poly.len() + 1];
            for (i, &ci) in poly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], ci);
                next[i] = self.sub(next[i], self.mul(ci, r));
            }
            poly = next;
        }
        if let Some(bad) = poly.iter().find(|&&c| !self.in_subfield(c, n)) {
            return Err(Error::Verification(format!(
                "minimal polynomial coefficient {bad} outside GF({}^{n})",
                self.p
            )));
        }
        Ok(poly)
    }

    /// Coordinates of `a` in the basis `1, mu, …, mu^(d'-1)` over GF(p^n), d' = h/n.
    /// The coordinates are subfield elements of this field.
    pub fn coords(&self, a: Elem, n: u32) -> Result<Vec<Elem>> {
        self.check_divisor(n)?;
        let inv = &self.coord_inv[&n];
        let v = self.coeffs(a);
        let p = self.p as u64;
        let b: Vec<u32> = inv
            .iter()
            .map(|row| {
                (row.iter()
                    .zip(&v)
                    .map(|(&x, &y)| x as u64 * y as u64)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect();
        let gamma = self.subfield_gens[&n];
        let dprime = (self.h / n) as usize;
        let n = n as usize;
        Ok((0..dprime)
            .map(|i| {
                (0..n).fold(self.zero(), |acc, j| {
                    let c = self.constant(b[i * n + j] as u64);
                    self.add(acc, self.mul(c, self.pow(gamma, j as u64)))
                })
            })
            .collect())
    }

    /// Inverse of [`FieldTower::coords`].
    pub fn from_coords(&self, c: &[Elem], n: u32) -> Result<Elem> {
        self.check_divisor(n)?;
        if c.len() != (self.h / n) as usize {
            return Err(Error::BadElement(format!(
                "expected {} coordinates",
                self.h / n
            )));
        }
        if let Some(bad) = c.iter().find(|&&x| !self.in_subfield(x, n)) {
            return Err(Error::BadElement(format!(
                "{bad} not in GF({}^{n})",
                self.p
            )));
        }
        Ok(c.iter().enumerate().fold(self.zero(), |acc, (i, &ci)| {
            self.add(acc, self.mul(ci, self.pow(self.mu, i as u64)))
        }))
    }
}

/// Identifies the subfield GF(p^n) of a big field with the standalone field
/// `make_field(p, n)`, and exposes coordinates over it.
#[derive(Clone, Debug)]
pub struct FieldReduction {
    big: Arc<FieldTower>,
    small: Arc<FieldTower>,
    n: u32,
    gamma: Elem,
    // index in small field -> element of big field
    to_big: Vec<Elem>,
    beta_log: u64,
}

impl FieldReduction {
    /// The generator `γ` of the subfield is sent to the smallest-index root of
    /// its minimal polynomial over GF(p) in the small field.
    pub fn new(big: Arc<FieldTower>, n: u32) -> Result<Self> {
        let small = Arc::new(make_field(big.p as u64, n)?);
        let gamma = big.subfield_generator(n)?;
        let mp: Vec<Elem> = big.minimal_polynomial(gamma, 1)?;
        let mp_small: Vec<Elem> = mp
            .iter()
            .map(|c| small.constant(c.index() as u64))
            .collect();
        let beta = small
            .elements()
            .find(|&x| {
                let v = mp_small
                    .iter()
                    .rev()
                    .fold(small.zero(), |acc, &c| small.add(small.mul(acc, x), c));
                v.is_zero()
            })
            .ok_or_else(|| Error::Verification("subfield generator has no image".into()))?;
        let q1 = small.order() as u64 - 1;
        let mut to_big = vec![Elem::ZERO; small.order() as usize];
        for k in 0..q1 {
            to_big[small.pow(beta, k).index() as usize] = big.pow(gamma, k);
        }
        let beta_log = small.log(beta)?;
        Ok(FieldReduction {
            big,
            small,
            n,
            gamma,
            to_big,
            beta_log,
        })
    }

    pub fn big(&self) -> &Arc<FieldTower> {
        &self.big
    }

    pub fn small(&self) -> &Arc<FieldTower> {
        &self.small
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `d' = h / n`.
    pub fn dprime(&self) -> usize {
        (self.big.h / self.n) as usize
    }

    pub fn gamma(&self) -> Elem {
        self.gamma
    }

    pub fn to_small(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Ok(Elem::ZERO);
        }
        let c = (self.big.size as u64 - 1) / (self.small.size as u64 - 1);
        let la = self.big.log(a)?;
        if la % c != 0 {
            return Err(Error::BadElement(format!(
                "{a} not in GF({}^{})",
                self.big.p, self.n
            )));
        }
        Ok(self.small.pow(self.small.mu_pow(self.beta_log), la / c))
    }

    pub fn to_big(&self, b: Elem) -> Elem {
        self.to_big[b.index() as usize]
    }

    /// Coordinates over the standalone GF(p^n).
    pub fn coords(&self, a: Elem) -> Vec<Elem> {
        self.big
            .coords(a, self.n)
            .expect("n divides h")
            .into_iter()
            .map(|c| self.to_small(c).expect("coordinates lie in the subfield"))
            .collect()
    }

    pub fn from_coords(&self, c: &[Elem]) -> Result<Elem> {
        let big: Vec<Elem> = c.iter().map(|&x| self.to_big(x)).collect();
        self.big.from_coords(&big, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_selection() {
        assert_eq!(make_field(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(make_field(2, 21), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn gf4_mu_squared() {
        let f = make_field(2, 2).unwrap();
        let mu = f.mu();
        assert_eq!(f.mul(mu, mu), f.add(mu, f.one()));
    }

    #[test]
    fn orders_in_gf16() {
        let f = make_field(2, 4).unwrap();
        assert_eq!(f.element_order(f.one()).unwrap(), 1);
        assert_eq!(f.element_order(f.mu()).unwrap(), 15);
        assert_eq!(f.element_order(f.pow(f.mu(), 5)).unwrap(), 3);
        assert_eq!(f.element_order(f.zero()), Err(Error::ZeroInverse));
        assert_eq!(f.inv(f.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn subfields_of_gf16() {
        let f = make_field(2, 4).unwrap();
        assert_eq!(f.subfield_elements(1).unwrap(), vec![f.zero(), f.one()]);
        let mut expect = vec![f.zero(), f.one(), f.pow(f.mu(), 5), f.pow(f.mu(), 10)];
        expect.sort();
        assert_eq!(f.subfield_elements(2).unwrap(), expect);
        assert_eq!(f.subfield_elements(4).unwrap().len(), 16);
        assert!(matches!(
            f.subfield_elements(3),
            Err(Error::NotDivisor { .. })
        ));
        for n in [1, 2, 4] {
            let g = f.subfield_generator(n).unwrap();
            assert_eq!(g, f.pow(f.mu(), 15 / (2u64.pow(n) - 1)));
            assert!(f.in_subfield(g, n));
        }
    }

    #[test]
    fn minimal_polynomials() {
        let f = make_field(2, 2).unwrap();
        let mp = f.minimal_polynomial(f.mu(), 1).unwrap();
        assert_eq!(mp, vec![f.one(), f.one(), f.one()]);
        let g = make_field(2, 4).unwrap();
        let a = g.pow(g.mu(), 5);
        assert_eq!(g.minimal_polynomial(a, 2).unwrap(), vec![g.neg(a), g.one()]);
        for n in [1, 2, 4] {
            assert_eq!(
                g.minimal_polynomial(g.mu(), n).unwrap().len() as u32 - 1,
                4 / n
            );
        }
    }

    #[test]
    fn coords_basics() {
        let f = make_field(2, 4).unwrap();
        for n in [1, 2] {
            let d = (4 / n) as usize;
            assert_eq!(f.coords(f.zero(), n).unwrap(), vec![f.zero(); d]);
            let mut e1 = vec![f.zero(); d];
            e1[1] = f.one();
            assert_eq!(f.coords(f.mu(), n).unwrap(), e1);
            for a in f.elements() {
                assert_eq!(f.from_coords(&f.coords(a, n).unwrap(), n).unwrap(), a);
            }
        }
    }

    #[test]
    fn reduction_is_a_field_isomorphism() {
        let big = Arc::new(make_field(2, 6).unwrap());
        for n in [1, 2, 3, 6] {
            let red = FieldReduction::new(big.clone(), n).unwrap();
            let s = red.small().clone();
            for a in s.elements() {
                assert_eq!(red.to_small(red.to_big(a)).unwrap(), a);
                for b in s.elements() {
                    assert_eq!(
                        red.to_big(s.mul(a, b)),
                        big.mul(red.to_big(a), red.to_big(b))
                    );
                    assert_eq!(
                        red.to_big(s.add(a, b)),
                        big.add(red.to_big(a), red.to_big(b))
                    );
                }
            }
        }
        let red = FieldReduction::new(big.clone(), 6).unwrap();
        assert_eq!(red.to_big(big.mu()), big.mu());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(2).unwrap(), (2, 1));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
    }
}
