//! Dense univariate polynomials over the rationals.
//!
//! One representation serves three roles: elements of Q[t] (the PID
//! coefficient ring), the component polynomials in w2 of circle-ring
//! elements, and scratch polynomials in the parameter variable used by
//! the circle-ring root extraction.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere in the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact n-th root of a rational, if one exists.
///
/// For even n the nonnegative root is returned.
pub fn rat_nth_root(x: &Rat, n: u32) -> Option<Rat> {
    if n == 0 {
        return None;
    }
    if n == 1 || x.is_zero() {
        return Some(x.clone());
    }
    if x.is_negative() && n % 2 == 0 {
        return None;
    }
    let sign_flip = x.is_negative();
    let abs = x.abs();
    let nr = abs.numer().nth_root(n);
    let dr = abs.denom().nth_root(n);
    if Pow::pow(&nr, n) != *abs.numer() || Pow::pow(&dr, n) != *abs.denom() {
        return None;
    }
    let root = BigRational::new(nr, dr);
    Some(if sign_flip { -root } else { root })
}

/// Dense univariate polynomial with rational coefficients.
///
/// `coeffs[i]` is the coefficient of the i-th power; the top entry is
/// nonzero unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    /// The generator (t, w2 or s depending on context).
    pub fn var() -> Self {
        UniPoly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    /// Build from a low-to-high coefficient list, trimming zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiply by the e-th power of the generator.
    pub fn shift_up(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisorZero);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading_coeff().recip();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff() * &lead_inv;
            let shift = rd - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem.coeffs[shift + i] -= &factor * c;
            }
            rem.trim();
            quot[shift] = factor;
        }
        Ok((Self::from_coeffs(quot), rem))
    }

    /// Exact division; None if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    fn make_monic(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let inv = self.leading_coeff().recip();
        self.scale(&inv)
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*other = g, g the
    /// monic gcd. Errors if both inputs are zero.
    pub fn gcd_bezout(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = Self::one();
        let mut u1 = Self::zero();
        let mut v0 = Self::zero();
        let mut v1 = Self::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        let lc = r0.leading_coeff();
        let inv = lc.recip();
        Ok((r0.scale(&inv), u0.scale(&inv), v0.scale(&inv)))
    }

    /// Greedy n-th root with final verification; None if no root exists.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let deg = self.degree().unwrap();
        if deg % (n as usize) != 0 {
            return None;
        }
        let root_deg = deg / n as usize;
        let lead_root = rat_nth_root(&self.leading_coeff(), n)?;
        let mut root = UniPoly::from_coeffs({
            let mut v = vec![Rat::zero(); root_deg + 1];
            v[root_deg] = lead_root.clone();
            v
        });
        // n * lead^(n-1) divides each successive matched coefficient.
        let denom = rat(n as i64) * Pow::pow(&lead_root, n - 1);
        loop {
            let diff = self.sub(&root.pow(n));
            if diff.is_zero() {
                return Some(root);
            }
            let dd = diff.degree().unwrap();
            // Next undetermined coefficient sits at dd - (n-1)*root_deg.
            let offset = (n as usize - 1) * root_deg;
            if dd < offset {
                return None;
            }
            let idx = dd - offset;
            if idx >= root_deg {
                return None;
            }
            let c = diff.leading_coeff() / &denom;
            if root.coeffs.len() <= idx {
                root.coeffs.resize(idx + 1, Rat::zero());
            }
            if !root.coeffs[idx].is_zero() {
                return None;
            }
            root.coeffs[idx] = c;
        }
    }

    /// Some((exponent, coefficient)) when exactly one term is present.
    pub fn single_monomial(&self) -> Option<(usize, Rat)> {
        let mut found = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() {
                return None;
            }
            found = Some((k, c.clone()));
        }
        found
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Render with the given variable name, high powers first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let body = if k == 0 {
                format!("{}", mag)
            } else {
                let pow = if k == 1 {
                    var.to_string()
                } else {
                    format!("{}^{}", var, k)
                };
                if mag.is_one() {
                    pow
                } else {
                    format!("{}*{}", mag, pow)
                }
            };
            out.push_str(&body);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divrem_basic() {
        // (t^2 - 1) / (t - 1) = t + 1
        let (q, r) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_euclid_by_hand() {
        // gcd(t^2 - 1, t - 1) = t - 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn bezout_t_and_one_minus_t() {
        // t + (1 - t) = 1
        let (g, u, v) = p(&[0, 1]).gcd_bezout(&p(&[1, -1])).unwrap();
        assert!(g.is_one());
        let check = u.mul(&p(&[0, 1])).add(&v.mul(&p(&[1, -1])));
        assert!(check.is_one());
    }

    #[test]
    fn bezout_powers() {
        // gcd(t^2, t^3) = t^2 with u = 1, v = 0
        let (g, u, v) = p(&[0, 0, 1]).gcd_bezout(&p(&[0, 0, 0, 1])).unwrap();
        assert_eq!(g, p(&[0, 0, 1]));
        let check = u.mul(&p(&[0, 0, 1])).add(&v.mul(&p(&[0, 0, 0, 1])));
        assert_eq!(check, g);
    }

    #[test]
    fn bezout_identity_holds() {
        let a = p(&[2, 0, 3, 1]);
        let b = p(&[-1, 4, 2]);
        let (g, u, v) = a.gcd_bezout(&b).unwrap();
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert!(a.exact_div(&g).is_some());
        assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn nth_root_square() {
        let f = p(&[1, 2, 3]); // 3t^2+2t+1
        let sq = f.mul(&f);
        assert_eq!(sq.nth_root(2), Some(f));
    }

    #[test]
    fn nth_root_rejects_non_power() {
        assert_eq!(p(&[1, 1, 1]).nth_root(2), None);
        assert_eq!(p(&[0, 1]).nth_root(2), None);
    }

    #[test]
    fn nth_root_cube() {
        let f = p(&[-2, 1]);
        assert_eq!(f.pow(3).nth_root(3), Some(f));
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rat_nth_root(&rat_frac(8, 27), 3), Some(rat_frac(2, 3)));
        assert_eq!(rat_nth_root(&rat(-8), 3), Some(rat(-2)));
        assert_eq!(rat_nth_root(&rat(-4), 2), None);
        assert_eq!(rat_nth_root(&rat(2), 2), None);
    }

    #[test]
    fn render_roundtrip_shape() {
        assert_eq!(p(&[1, -1]).render("t"), "-t + 1");
        assert_eq!(p(&[0, 0, 2]).render("t"), "2*t^2");
        assert_eq!(UniPoly::zero().render("t"), "0");
    }
}
