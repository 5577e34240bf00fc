//! The circle ring Q[w1, w2] / (w1^2 + w2^2 - 1).
//!
//! Elements carry the canonical form a(w2) + b(w2)*w1: the rewrite
//! w1^2 -> 1 - w2^2 has been applied to exhaustion, so equality is
//! representational. The ring is a Dedekind domain, not a UFD; exact
//! division goes through the conjugate and the norm, and n-th roots go
//! through the rational parametrization
//!   w1 = (1 - s^2)/(1 + s^2),  w2 = 2s/(1 + s^2),
//! which identifies the ring with a subring of Q[s][1/(1+s^2)].

use num::traits::{One, Signed, Zero};

use super::unipoly::{Rat, UniPoly};

/// Canonical element a(w2) + b(w2)*w1 of the circle ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CircleElem {
    a: UniPoly,
    b: UniPoly,
}

impl CircleElem {
    pub fn new(a: UniPoly, b: UniPoly) -> Self {
        CircleElem { a, b }
    }

    pub fn zero() -> Self {
        CircleElem {
            a: UniPoly::zero(),
            b: UniPoly::zero(),
        }
    }

    pub fn one() -> Self {
        CircleElem {
            a: UniPoly::one(),
            b: UniPoly::zero(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        CircleElem {
            a: UniPoly::constant(c),
            b: UniPoly::zero(),
        }
    }

    pub fn w1() -> Self {
        CircleElem {
            a: UniPoly::zero(),
            b: UniPoly::one(),
        }
    }

    pub fn w2() -> Self {
        CircleElem {
            a: UniPoly::var(),
            b: UniPoly::zero(),
        }
    }

    /// Component without w1.
    pub fn part_a(&self) -> &UniPoly {
        &self.a
    }

    /// Component multiplying w1.
    pub fn part_b(&self) -> &UniPoly {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.b.is_zero() {
            self.a.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CircleElem {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    pub fn neg(&self) -> Self {
        CircleElem {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, reduced by w1^2 = 1 - w2^2.
    pub fn mul(&self, other: &Self) -> Self {
        let w1sq = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), -Rat::one()]);
        let a = self.a.mul(&other.a).add(&self.b.mul(&other.b).mul(&w1sq));
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a));
        CircleElem { a, b }
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

    /// Conjugate under w1 -> -w1.
    pub fn conj(&self) -> Self {
        CircleElem {
            a: self.a.clone(),
            b: self.b.neg(),
        }
    }

    /// Norm x * conj(x) = a^2 - b^2 (1 - w2^2), an element of Q[w2].
    pub fn norm(&self) -> UniPoly {
        let w1sq = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), -Rat::one()]);
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&w1sq))
    }

    /// Units are the nonzero rational constants.
    pub fn inverse(&self) -> Option<Self> {
        let c = self.as_rational()?;
        if c.is_zero() {
            None
        } else {
            Some(Self::constant(c.recip()))
        }
    }

    /// Exact division: Some(q) with q * divisor = self, if q exists.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // self / divisor = self * conj(divisor) / norm(divisor); the
        // quotient lies in the ring iff both components divide exactly.
        let num = self.mul(&divisor.conj());
        let den = divisor.norm();
        let qa = num.a.exact_div(&den)?;
        let qb = num.b.exact_div(&den)?;
        Some(CircleElem { a: qa, b: qb })
    }

    /// Positive-sign normal form: the leading rational of the first
    /// nonzero component is positive.
    pub fn is_sign_canonical(&self) -> bool {
        let lead = if !self.a.is_zero() {
            self.a.leading_coeff()
        } else {
            self.b.leading_coeff()
        };
        lead.is_positive()
    }

    /// Image under the parametrization, as (numerator in s, exponent e)
    /// with sigma(x) = F(s)/(1+s^2)^e, reduced so that e = 0 or
    /// (1+s^2) does not divide F.
    pub fn to_param(&self) -> (UniPoly, usize) {
        if self.is_zero() {
            return (UniPoly::zero(), 0);
        }
        let da = self.a.degree().unwrap_or(0);
        let db = self.b.degree().map(|d| d + 1).unwrap_or(0);
        let e = if self.a.is_zero() { db } else { da.max(db) };
        let one_plus = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), Rat::one()]);
        let one_minus = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), -Rat::one()]);
        let two_s = UniPoly::from_coeffs(vec![Rat::zero(), super::unipoly::rat(2)]);
        let mut num = UniPoly::zero();
        for (j, c) in self.a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = two_s.pow(j as u32).mul(&one_plus.pow((e - j) as u32));
            num = num.add(&term.scale(c));
        }
        for (j, c) in self.b.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = two_s
                .pow(j as u32)
                .mul(&one_minus)
                .mul(&one_plus.pow((e - 1 - j) as u32));
            num = num.add(&term.scale(c));
        }
        let mut f = num;
        let mut e = e;
        while e > 0 {
            match f.exact_div(&one_plus) {
                Some(q) => {
                    f = q;
                    e -= 1;
                }
                None => break,
            }
        }
        (f, e)
    }

    /// Inverse of the parametrization: recover a + b*w1 from
    /// F(s)/(1+s^2)^e, if the fraction lies in the ring image.
    pub fn from_param(f: &UniPoly, e: usize) -> Option<Self> {
        if f.is_zero() {
            return Some(Self::zero());
        }
        if f.degree().unwrap_or(0) > 2 * e {
            return None;
        }
        let one_plus = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), Rat::one()]);
        let one_minus = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), -Rat::one()]);
        let two_s = UniPoly::from_coeffs(vec![Rat::zero(), super::unipoly::rat(2)]);
        // Unknowns: a_0..a_e, then b_0..b_{e-1}.
        let ncols = 2 * e + 1;
        let nrows = 2 * e + 1;
        let mut cols: Vec<UniPoly> = Vec::with_capacity(ncols);
        for j in 0..=e {
            cols.push(two_s.pow(j as u32).mul(&one_plus.pow((e - j) as u32)));
        }
        for j in 0..e {
            cols.push(
                two_s
                    .pow(j as u32)
                    .mul(&one_minus)
                    .mul(&one_plus.pow((e - 1 - j) as u32)),
            );
        }
        let mut mat = vec![vec![Rat::zero(); ncols + 1]; nrows];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..nrows {
                mat[r][c] = col.coeff(r);
            }
        }
        for r in 0..nrows {
            mat[r][ncols] = f.coeff(r);
        }
        let sol = solve_square(mat, ncols)?;
        let a = UniPoly::from_coeffs(sol[..=e].to_vec());
        let b = UniPoly::from_coeffs(sol[e + 1..].to_vec());
        Some(CircleElem { a, b })
    }

    /// Exact n-th root within the ring, if one exists. For even n the
    /// sign-canonical root is returned.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let (f, e) = self.to_param();
        if e % (n as usize) != 0 {
            return None;
        }
        let g = f.nth_root(n)?;
        let mut root = Self::from_param(&g, e / n as usize)?;
        if n % 2 == 0 && !root.is_sign_canonical() {
            root = root.neg();
        }
        if root.pow(n) == *self {
            Some(root)
        } else {
            None
        }
    }

    /// Render as an expression in w1, w2.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(self.a.render("w2"));
        }
        if !self.b.is_zero() {
            let simple = self
                .b
                .single_monomial()
                .map_or(false, |(_, c)| c.is_positive());
            if self.b.is_one() {
                parts.push("w1".to_string());
            } else if simple {
                parts.push(format!("{}*w1", self.b.render("w2")));
            } else {
                parts.push(format!("({})*w1", self.b.render("w2")));
            }
        }
        parts.join(" + ")
    }
}

/// Solve a square rational linear system given as rows of
/// [coefficients..., rhs]; None when inconsistent. Free variables, if
/// the system is singular but consistent, are set to zero.
fn solve_square(mut mat: Vec<Vec<Rat>>, ncols: usize) -> Option<Vec<Rat>> {
    let nrows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else { continue };
        mat.swap(row, p);
        let inv = mat[row][col].clone().recip();
        for c in col..=ncols {
            mat[row][c] = &mat[row][c] * &inv;
        }
        for r in 0..nrows {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..=ncols {
                    let sub = &factor * &mat[row][c];
                    mat[r][c] = &mat[r][c] - &sub;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == nrows {
            break;
        }
    }
    for r in row..nrows {
        if !mat[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (col, p) in pivot_of_col.iter().enumerate() {
        if let Some(r) = p {
            sol[col] = mat[*r][ncols].clone();
        }
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::unipoly::rat;

    fn w1() -> CircleElem {
        CircleElem::w1()
    }

    fn w2() -> CircleElem {
        CircleElem::w2()
    }

    fn c(n: i64) -> CircleElem {
        CircleElem::constant(rat(n))
    }

    #[test]
    fn defining_relation() {
        // w1 * w1 = 1 - w2^2
        let prod = w1().mul(&w1());
        let expect = c(1).sub(&w2().mul(&w2()));
        assert_eq!(prod, expect);
    }

    #[test]
    fn w1_squared_times_w2() {
        let prod = w1().mul(&w1()).mul(&w2());
        // w2 - w2^3
        let expect = w2().sub(&w2().pow(3));
        assert_eq!(prod, expect);
        assert!(prod.part_b().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let prod = c(1).sub(&w2()).mul(&c(1).add(&w2()));
        assert_eq!(prod, c(1).sub(&w2().mul(&w2())));
    }

    #[test]
    fn one_minus_w2_not_unit() {
        assert!(c(1).sub(&w2()).inverse().is_none());
        assert_eq!(c(5).inverse(), Some(CircleElem::constant(rat_frac(1, 5))));
    }

    use crate::ring::unipoly::rat_frac;

    #[test]
    fn exact_div_comaximal_identity() {
        // (1 - w2)(1 + w2) = w1 * w1, so w1*w1 / (1 - w2) = 1 + w2.
        let num = w1().mul(&w1());
        let q = num.exact_div(&c(1).sub(&w2())).unwrap();
        assert_eq!(q, c(1).add(&w2()));
        // w1 does not divide (1 - w2) alone.
        assert!(c(1).sub(&w2()).exact_div(&w1()).is_none());
    }

    #[test]
    fn param_roundtrip() {
        let samples = [
            w1(),
            w2(),
            c(3),
            c(1).sub(&w2()).mul(&w1()).add(&w2().pow(2)),
            w1().mul(&w2()).sub(&c(7)),
        ];
        for x in &samples {
            let (f, e) = x.to_param();
            let back = CircleElem::from_param(&f, e).unwrap();
            assert_eq!(&back, x);
        }
    }

    #[test]
    fn nth_root_recovers() {
        let y = w1().mul(&w2()).add(&c(1).sub(&w2()));
        assert_eq!(y.pow(3).nth_root(3), Some(y.clone()));
        let sq = y.pow(2);
        let r = sq.nth_root(2).unwrap();
        assert!(r == y || r == y.neg());
        assert_eq!(r.pow(2), sq);
    }

    #[test]
    fn nth_root_rejects() {
        // w1 is not a square: its parametrization exponent is odd in the
        // relevant sense, and verification catches the rest.
        assert_eq!(w1().nth_root(2), None);
        assert_eq!(c(1).sub(&w2()).nth_root(2), None);
    }

    #[test]
    fn product_of_nonzero_is_nonzero() {
        let x = c(1).sub(&w2());
        let y = c(1).add(&w2());
        assert!(!x.mul(&y).is_zero());
    }
}
