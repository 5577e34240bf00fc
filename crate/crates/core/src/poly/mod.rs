//! Sparse multivariate polynomials in up to three main variables.
//!
//! Terms are keyed by exponent vector in graded-lex order (total degree
//! first, then lexicographic with the first variable largest), so
//! iteration, printing and leading-term extraction are canonical.
//! Coefficient symbols of the active ring (t, w1, w2) behave as
//! constants throughout.

mod gcd;
mod root;

pub use gcd::gcd_multivar;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ring::{Rat, RingElem, RingId};

pub const MAX_VARS: usize = 3;

/// Exponent vector; slots beyond the ambient variable count stay zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExpVec {
    e: [u16; MAX_VARS],
}

impl ExpVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        ExpVec { e }
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        ExpVec { e }
    }

    pub fn get(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn total(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.total() == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] + other.e[i];
        }
        ExpVec { e }
    }

    /// Componentwise difference, or None if any entry would go negative.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i].checked_sub(other.e[i])?;
        }
        Some(ExpVec { e })
    }

    pub fn pow(&self, n: u16) -> Self {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] * n;
        }
        ExpVec { e }
    }

    pub fn with(&self, i: usize, v: u16) -> Self {
        let mut e = self.e;
        e[i] = v;
        ExpVec { e }
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.e.cmp(&other.e))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer weights for the main variables; ring symbols weigh zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightVec {
    w: [i64; MAX_VARS],
}

impl WeightVec {
    pub fn new(weights: &[i64]) -> Self {
        let mut w = [0i64; MAX_VARS];
        w[..weights.len()].copy_from_slice(weights);
        WeightVec { w }
    }

    pub fn standard() -> Self {
        WeightVec { w: [1, 1, 1] }
    }

    pub fn get(&self, i: usize) -> i64 {
        self.w[i]
    }

    pub fn weight(&self, exp: &ExpVec) -> i64 {
        (0..MAX_VARS).map(|i| self.w[i] * exp.e[i] as i64).sum()
    }

    pub fn as_slice(&self) -> &[i64; MAX_VARS] {
        &self.w
    }
}

/// Sparse polynomial over one of the coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: RingId,
    nvars: usize,
    terms: BTreeMap<ExpVec, RingElem>,
}

impl Poly {
    pub fn zero(ring: RingId, nvars: usize) -> Self {
        Poly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: RingId, nvars: usize, c: RingElem) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !c.is_zero() {
            p.terms.insert(ExpVec::zero(), c);
        }
        p
    }

    pub fn from_rat(ring: RingId, nvars: usize, r: Rat) -> Self {
        Self::constant(ring, nvars, RingElem::from_rat(ring, r))
    }

    pub fn from_i64(ring: RingId, nvars: usize, n: i64) -> Self {
        Self::constant(ring, nvars, RingElem::from_i64(ring, n))
    }

    pub fn var(ring: RingId, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(ring, nvars, ExpVec::var(i), RingElem::one(ring))
    }

    pub fn monomial(ring: RingId, nvars: usize, exp: ExpVec, c: RingElem) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVec) -> RingElem {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(self.ring))
    }

    /// Leading term under graded-lex, None for zero.
    pub fn leading(&self) -> Option<(&ExpVec, &RingElem)> {
        self.terms.iter().next_back()
    }

    /// The polynomial as a ring element, when it is constant.
    pub fn as_ring_elem(&self) -> Option<RingElem> {
        match self.terms.len() {
            0 => Some(RingElem::zero(self.ring)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.is_unit() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn compat(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.name().into(),
                other.ring.name().into(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::Invalid(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    fn insert_term(&mut self, exp: ExpVec, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = Self::zero(self.ring, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_term(e1.mul(e2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut result = Self::constant(self.ring, self.nvars, RingElem::one(self.ring));
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring, self.nvars);
        }
        Poly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter_map(|(e, a)| {
                    let p = a.mul(c);
                    if p.is_zero() {
                        None
                    } else {
                        Some((*e, p))
                    }
                })
                .collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(&RingElem::from_rat(self.ring, c.clone()))
    }

    /// Formal partial derivative; ring symbols are constants.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.ring, self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k == 0 {
                continue;
            }
            let ne = e.with(var, k - 1);
            out.insert_term(ne, c.scale(&crate::ring::rat(k as i64)));
        }
        out
    }

    /// Simultaneous substitution of every variable; images must agree in
    /// ring and variable count among themselves.
    pub fn substitute(&self, images: &[Poly]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Invalid(format!(
                "substitution needs {} images, got {}",
                self.nvars,
                images.len()
            )));
        }
        let (ring, nvars) = if let Some(first) = images.first() {
            for im in images {
                first.compat(im)?;
            }
            if first.ring != self.ring {
                return Err(Error::RingMismatch(
                    self.ring.name().into(),
                    first.ring.name().into(),
                ));
            }
            (first.ring, first.nvars)
        } else {
            (self.ring, self.nvars)
        };
        // Power caches, one per variable.
        let mut caches: Vec<Vec<Poly>> = images
            .iter()
            .map(|im| vec![Poly::constant(ring, nvars, RingElem::one(ring)), im.clone()])
            .collect();
        let mut out = Poly::zero(ring, nvars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(ring, nvars, c.clone());
            for (i, cache) in caches.iter_mut().enumerate() {
                let k = e.get(i) as usize;
                while cache.len() <= k {
                    let next = cache.last().unwrap().mul(&images[i])?;
                    cache.push(next);
                }
                if k > 0 {
                    term = term.mul(&cache[k])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Weighted degree; None encodes minus infinity (the zero poly).
    pub fn weighted_degree(&self, w: &WeightVec) -> Option<i64> {
        self.terms.keys().map(|e| w.weight(e)).max()
    }

    /// Decomposition into weighted-homogeneous parts.
    pub fn weighted_parts(&self, w: &WeightVec) -> BTreeMap<i64, Poly> {
        let mut parts: BTreeMap<i64, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = w.weight(e);
            parts
                .entry(d)
                .or_insert_with(|| Poly::zero(self.ring, self.nvars))
                .insert_term(*e, c.clone());
        }
        parts
    }

    /// The unique weighted degree when homogeneous; None otherwise
    /// (including the zero polynomial).
    pub fn is_homogeneous(&self, w: &WeightVec) -> Option<i64> {
        let mut degree = None;
        for e in self.terms.keys() {
            let d = w.weight(e);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// Maximal-weight homogeneous part; zero for the zero polynomial.
    pub fn top_part(&self, w: &WeightVec) -> Poly {
        match self.weighted_degree(w) {
            None => Self::zero(self.ring, self.nvars),
            Some(d) => {
                let mut out = Self::zero(self.ring, self.nvars);
                for (e, c) in &self.terms {
                    if w.weight(e) == d {
                        out.insert_term(*e, c.clone());
                    }
                }
                out
            }
        }
    }

    /// Exact quotient self / divisor, or NotDivisible.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.compat(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisorZero);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.ring, self.nvars);
        let (ge, gc) = {
            let (e, c) = divisor.leading().unwrap();
            (*e, c.clone())
        };
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let me = re.div(&ge).ok_or(Error::NotDivisible)?;
            let mc = rc.exact_div(&gc).ok_or(Error::NotDivisible)?;
            let mono = Self::monomial(self.ring, self.nvars, me, mc);
            rem = rem.sub(&mono.mul(divisor)?)?;
            quot = quot.add(&mono)?;
        }
        Ok(quot)
    }

    /// Greedy n-th root with final verification; None when no root
    /// exists over the ring.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        root::nth_root(self, n)
    }

    /// Exponent support in two chosen variables, always containing the
    /// origin.
    pub fn support_points(&self, vars: (usize, usize)) -> BTreeSet<(i64, i64)> {
        let mut pts = BTreeSet::new();
        pts.insert((0i64, 0i64));
        for e in self.terms.keys() {
            pts.insert((e.get(vars.0) as i64, e.get(vars.1) as i64));
        }
        pts
    }

    /// Degree in a single variable; None for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    /// Coefficient of var^k, as a polynomial with the same ambient
    /// variables (exponent of `var` zeroed).
    pub fn coeff_of_power(&self, var: usize, k: u16) -> Poly {
        let mut out = Self::zero(self.ring, self.nvars);
        for (e, c) in &self.terms {
            if e.get(var) == k {
                out.insert_term(e.with(var, 0), c.clone());
            }
        }
        out
    }

    /// True when no term involves the given variable.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.keys().all(|e| e.get(var) == 0)
    }

    /// Substitute zero for one variable and forget its slot, producing a
    /// polynomial in one fewer variable. Variables above `var` shift
    /// down by one.
    pub fn drop_var(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.ring, self.nvars - 1);
        for (e, c) in &self.terms {
            if e.get(var) != 0 {
                continue;
            }
            let mut ne = [0u16; MAX_VARS];
            let mut j = 0;
            for i in 0..self.nvars {
                if i != var {
                    ne[j] = e.get(i);
                    j += 1;
                }
            }
            out.insert_term(ExpVec { e: ne }, c.clone());
        }
        out
    }

    /// Embed into a larger variable set, keeping exponents in place.
    pub fn widen(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            ring: self.ring,
            nvars,
            terms: self.terms.clone(),
        }
    }

    /// Multivariate gcd over Q or Q[t]; see `gcd_multivar`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        gcd_multivar(self, other)
    }

    /// Canonical rendering: graded-lex descending, explicit `*` and `^`.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono = render_mono(e, names, self.nvars);
            let (sign_neg, body) = match c.sign_split() {
                Some((neg, abs)) => {
                    let body = if mono.is_empty() {
                        abs.render()
                    } else if abs.is_one() {
                        mono
                    } else {
                        format!("{}*{}", abs.render(), mono)
                    };
                    (neg, body)
                }
                None => {
                    let body = if mono.is_empty() {
                        format!("({})", c.render())
                    } else {
                        format!("({})*{}", c.render(), mono)
                    };
                    (false, body)
                }
            };
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else if sign_neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

fn render_mono(e: &ExpVec, names: &[&str], nvars: usize) -> String {
    let mut parts = Vec::new();
    for i in 0..nvars {
        let k = e.get(i);
        let name = names.get(i).copied().unwrap_or("?");
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{}^{}", name, k)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn x() -> Poly {
        Poly::var(RingId::Q, 3, 0)
    }
    fn y() -> Poly {
        Poly::var(RingId::Q, 3, 1)
    }
    fn z() -> Poly {
        Poly::var(RingId::Q, 3, 2)
    }

    /// Y^2 + XZ, the recurring quadric.
    fn quadric() -> Poly {
        y().pow(2).unwrap().add(&x().mul(&z()).unwrap()).unwrap()
    }

    #[test]
    fn binomial_square() {
        // (Y^2 + XZ)^2 = Y^4 + 2XY^2Z + X^2Z^2
        let sq = quadric().pow(2).unwrap();
        let expect = y()
            .pow(4)
            .unwrap()
            .add(
                &x().mul(&y().pow(2).unwrap())
                    .unwrap()
                    .mul(&z())
                    .unwrap()
                    .scale_rat(&rat(2)),
            )
            .unwrap()
            .add(&x().pow(2).unwrap().mul(&z().pow(2).unwrap()).unwrap())
            .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn mul_by_zero() {
        let f = quadric();
        let prod = f.mul(&Poly::zero(RingId::Q, 3)).unwrap();
        assert!(prod.is_zero());
        assert_eq!(prod.num_terms(), 0);
    }

    #[test]
    fn partials() {
        // d/dY (Y^2 + XZ) = 2Y
        assert_eq!(quadric().partial(1), y().scale_rat(&rat(2)));
        // d/dX (Y^3) = 0
        assert!(y().pow(3).unwrap().partial(0).is_zero());
    }

    #[test]
    fn substitution_example_one_f() {
        // F = uw - v^2 under u = x, v = ty, w = tz + x gives
        // x(tz + x) - t^2 y^2.
        let ring = RingId::PolyT;
        let u = Poly::var(ring, 3, 0);
        let v = Poly::var(ring, 3, 1);
        let w = Poly::var(ring, 3, 2);
        let t = Poly::constant(ring, 3, RingElem::symbol(ring, "t").unwrap());
        let f_uvw = u.mul(&w).unwrap().sub(&v.pow(2).unwrap()).unwrap();
        let images = [
            u.clone(),
            t.mul(&v).unwrap(),
            t.mul(&w).unwrap().add(&u).unwrap(),
        ];
        let f = f_uvw.substitute(&images).unwrap();
        let expect = u
            .mul(&t.mul(&w).unwrap().add(&u).unwrap())
            .unwrap()
            .sub(&t.pow(2).unwrap().mul(&v.pow(2).unwrap()).unwrap())
            .unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn identity_substitution() {
        let f = quadric();
        let id = [x(), y(), z()];
        assert_eq!(f.substitute(&id).unwrap(), f);
    }

    #[test]
    fn weighted_parts_standard() {
        let w = WeightVec::standard();
        assert_eq!(quadric().is_homogeneous(&w), Some(2));
        let one = Poly::from_i64(RingId::Q, 3, 1);
        assert_eq!(one.is_homogeneous(&w), Some(0));
    }

    #[test]
    fn weighted_top_part() {
        // P = (Y^2 + XZ)^2 + X^3 Y under weights (0, 1, 2): the square is
        // the top part at weight 4, the tail sits at weight 1.
        let p = quadric()
            .pow(2)
            .unwrap()
            .add(&x().pow(3).unwrap().mul(&y()).unwrap())
            .unwrap();
        let w = WeightVec::new(&[0, 1, 2]);
        assert_eq!(p.top_part(&w), quadric().pow(2).unwrap());
        let parts = p.weighted_parts(&w);
        assert_eq!(parts.len(), 2);
        let mut sum = Poly::zero(RingId::Q, 3);
        for part in parts.values() {
            sum = sum.add(part).unwrap();
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn exact_division() {
        // (XY^2 + X^2 Z) / X = Y^2 + XZ
        let f = x().mul(&quadric()).unwrap();
        assert_eq!(f.exact_divide(&x()).unwrap(), quadric());
        assert_eq!(quadric().exact_divide(&x()), Err(Error::NotDivisible));
        assert_eq!(
            quadric().exact_divide(&Poly::zero(RingId::Q, 3)),
            Err(Error::DivisorZero)
        );
    }

    #[test]
    fn support_and_drop() {
        let f = quadric();
        let pts = f.support_points((1, 2));
        let expect: BTreeSet<(i64, i64)> = [(0, 0), (2, 0), (0, 1)].into_iter().collect();
        assert_eq!(pts, expect);
        let constant = Poly::from_i64(RingId::Q, 3, 7);
        assert_eq!(constant.support_points((0, 1)).len(), 1);
    }

    #[test]
    fn support_of_expanded_square() {
        let p = quadric()
            .pow(2)
            .unwrap()
            .add(&x().pow(3).unwrap().mul(&y()).unwrap())
            .unwrap();
        let pts = p.support_points((1, 2));
        let expect: BTreeSet<(i64, i64)> = [(0, 0), (4, 0), (2, 1), (0, 2), (1, 0)]
            .into_iter()
            .collect();
        assert_eq!(pts, expect);
    }

    #[test]
    fn render_canonical() {
        let p = quadric()
            .pow(2)
            .unwrap()
            .add(&x().pow(3).unwrap().mul(&y()).unwrap())
            .unwrap();
        assert_eq!(
            p.render(&["x", "y", "z"]),
            "x^3*y + x^2*z^2 + 2*x*y^2*z + y^4"
        );
    }

    #[test]
    fn circle_poly_mul_reduces() {
        // (1 - w2) * (w1 Y^2 + (1 + w2) X Z) = (1 - w2) w1 Y^2 + (1 - w2^2) X Z
        // and the latter coefficient equals w1^2.
        let ring = RingId::Circle;
        let xx = Poly::var(ring, 3, 0);
        let yy = Poly::var(ring, 3, 1);
        let zz = Poly::var(ring, 3, 2);
        let w1 = RingElem::symbol(ring, "w1").unwrap();
        let w2 = RingElem::symbol(ring, "w2").unwrap();
        let one = RingElem::one(ring);
        let f2 = yy
            .pow(2)
            .unwrap()
            .scale(&w1)
            .add(&xx.mul(&zz).unwrap().scale(&one.add(&w2)))
            .unwrap();
        let prod = f2.scale(&one.sub(&w2));
        let xz_coeff = prod.coeff(&ExpVec::from_slice(&[1, 0, 1]));
        assert_eq!(xz_coeff, w1.mul(&w1));
    }
}
