//! Coefficient rings: Q, Q[t] and the circle ring.
//!
//! `RingElem` is a tagged union over the three rings. Arithmetic is
//! only defined between elements of the same ring; the polynomial and
//! derivation layers check tags at their boundaries and surface
//! `Error::RingMismatch`, so the element-level operations here panic on
//! a mismatch rather than threading results through every inner loop.

pub mod circle;
pub mod unipoly;

use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use circle::CircleElem;
pub use unipoly::{rat, rat_frac, rat_nth_root, Rat, UniPoly};

/// Tag identifying the active coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingId {
    /// The rationals.
    Q,
    /// Q[t], a PID.
    PolyT,
    /// Q[w1, w2]/(w1^2 + w2^2 - 1), a Dedekind domain.
    Circle,
}

impl RingId {
    pub fn name(&self) -> &'static str {
        match self {
            RingId::Q => "Q",
            RingId::PolyT => "Q[t]",
            RingId::Circle => "circle",
        }
    }

    /// Coefficient symbols admitted by the parser for this ring.
    pub fn symbols(&self) -> &'static [&'static str] {
        match self {
            RingId::Q => &[],
            RingId::PolyT => &["t"],
            RingId::Circle => &["w1", "w2"],
        }
    }
}

impl std::fmt::Display for RingId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Canonical element of one of the three coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElem {
    Q(Rat),
    PolyT(UniPoly),
    Circle(CircleElem),
}

impl RingElem {
    pub fn ring_id(&self) -> RingId {
        match self {
            RingElem::Q(_) => RingId::Q,
            RingElem::PolyT(_) => RingId::PolyT,
            RingElem::Circle(_) => RingId::Circle,
        }
    }

    pub fn zero(ring: RingId) -> Self {
        match ring {
            RingId::Q => RingElem::Q(Rat::zero()),
            RingId::PolyT => RingElem::PolyT(UniPoly::zero()),
            RingId::Circle => RingElem::Circle(CircleElem::zero()),
        }
    }

    pub fn one(ring: RingId) -> Self {
        match ring {
            RingId::Q => RingElem::Q(Rat::one()),
            RingId::PolyT => RingElem::PolyT(UniPoly::one()),
            RingId::Circle => RingElem::Circle(CircleElem::one()),
        }
    }

    pub fn from_rat(ring: RingId, r: Rat) -> Self {
        match ring {
            RingId::Q => RingElem::Q(r),
            RingId::PolyT => RingElem::PolyT(UniPoly::constant(r)),
            RingId::Circle => RingElem::Circle(CircleElem::constant(r)),
        }
    }

    pub fn from_i64(ring: RingId, n: i64) -> Self {
        Self::from_rat(ring, rat(n))
    }

    /// The coefficient symbol with the given name, if the ring has it.
    pub fn symbol(ring: RingId, name: &str) -> Option<Self> {
        match (ring, name) {
            (RingId::PolyT, "t") => Some(RingElem::PolyT(UniPoly::var())),
            (RingId::Circle, "w1") => Some(RingElem::Circle(CircleElem::w1())),
            (RingId::Circle, "w2") => Some(RingElem::Circle(CircleElem::w2())),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Q(r) => r.is_zero(),
            RingElem::PolyT(p) => p.is_zero(),
            RingElem::Circle(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Q(r) => r.is_one(),
            RingElem::PolyT(p) => p.is_one(),
            RingElem::Circle(c) => c.is_one(),
        }
    }

    /// The element as a rational, when it is a rational constant.
    pub fn as_rational(&self) -> Option<Rat> {
        match self {
            RingElem::Q(r) => Some(r.clone()),
            RingElem::PolyT(p) => p.as_constant(),
            RingElem::Circle(c) => c.as_rational(),
        }
    }

    fn mismatch(a: &Self, b: &Self) -> ! {
        panic!(
            "ring mismatch in element arithmetic: {} vs {}",
            a.ring_id(),
            b.ring_id()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (RingElem::Q(a), RingElem::Q(b)) => RingElem::Q(a + b),
            (RingElem::PolyT(a), RingElem::PolyT(b)) => RingElem::PolyT(a.add(b)),
            (RingElem::Circle(a), RingElem::Circle(b)) => RingElem::Circle(a.add(b)),
            _ => Self::mismatch(self, other),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            RingElem::Q(a) => RingElem::Q(-a),
            RingElem::PolyT(a) => RingElem::PolyT(a.neg()),
            RingElem::Circle(a) => RingElem::Circle(a.neg()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (RingElem::Q(a), RingElem::Q(b)) => RingElem::Q(a * b),
            (RingElem::PolyT(a), RingElem::PolyT(b)) => RingElem::PolyT(a.mul(b)),
            (RingElem::Circle(a), RingElem::Circle(b)) => RingElem::Circle(a.mul(b)),
            _ => Self::mismatch(self, other),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        match self {
            RingElem::Q(a) => {
                let mut acc = Rat::one();
                for _ in 0..n {
                    acc *= a;
                }
                RingElem::Q(acc)
            }
            RingElem::PolyT(a) => RingElem::PolyT(a.pow(n)),
            RingElem::Circle(a) => RingElem::Circle(a.pow(n)),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul(&Self::from_rat(self.ring_id(), c.clone()))
    }

    /// Some(inverse) when the element is a unit of its ring.
    ///
    /// Q: any nonzero element. Q[t]: nonzero constants. Circle ring:
    /// nonzero rational constants, which is the full unit group there.
    pub fn inverse(&self) -> Option<Self> {
        match self {
            RingElem::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(RingElem::Q(a.recip()))
                }
            }
            RingElem::PolyT(a) => {
                let c = a.as_constant()?;
                if c.is_zero() {
                    None
                } else {
                    Some(RingElem::PolyT(UniPoly::constant(c.recip())))
                }
            }
            RingElem::Circle(a) => a.inverse().map(RingElem::Circle),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Exact division within the ring; None when not divisible.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        match (self, divisor) {
            (RingElem::Q(a), RingElem::Q(b)) => Some(RingElem::Q(a / b)),
            (RingElem::PolyT(a), RingElem::PolyT(b)) => a.exact_div(b).map(RingElem::PolyT),
            (RingElem::Circle(a), RingElem::Circle(b)) => a.exact_div(b).map(RingElem::Circle),
            _ => Self::mismatch(self, divisor),
        }
    }

    /// Exact n-th root within the ring; for even n the sign-canonical
    /// root is returned.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        match self {
            RingElem::Q(a) => rat_nth_root(a, n).map(RingElem::Q),
            RingElem::PolyT(a) => {
                let mut r = a.nth_root(n)?;
                if n % 2 == 0 && r.leading_coeff().is_negative() {
                    r = r.neg();
                }
                Some(RingElem::PolyT(r))
            }
            RingElem::Circle(a) => a.nth_root(n).map(RingElem::Circle),
        }
    }

    /// True when the element is in positive-sign normal form.
    pub fn is_sign_canonical(&self) -> bool {
        match self {
            RingElem::Q(a) => a.is_positive(),
            RingElem::PolyT(a) => a.leading_coeff().is_positive(),
            RingElem::Circle(a) => a.is_sign_canonical(),
        }
    }

    /// Printable form, unambiguous under the session grammar.
    pub fn render(&self) -> String {
        match self {
            RingElem::Q(a) => format!("{}", a),
            RingElem::PolyT(a) => a.render("t"),
            RingElem::Circle(a) => a.render(),
        }
    }

    /// Split off the sign when the element is a single signed monomial;
    /// the returned part renders without parentheses inside a product.
    pub fn sign_split(&self) -> Option<(bool, RingElem)> {
        match self {
            RingElem::Q(a) => Some((a.is_negative(), RingElem::Q(a.abs()))),
            RingElem::PolyT(a) => {
                let (_, c) = a.single_monomial()?;
                if c.is_negative() {
                    Some((true, RingElem::PolyT(a.neg())))
                } else {
                    Some((false, self.clone()))
                }
            }
            RingElem::Circle(a) => {
                let (part, other_zero) = if a.part_b().is_zero() {
                    (a.part_a(), true)
                } else if a.part_a().is_zero() {
                    (a.part_b(), true)
                } else {
                    (a.part_a(), false)
                };
                if !other_zero {
                    return None;
                }
                let (_, c) = part.single_monomial()?;
                if c.is_negative() {
                    Some((true, RingElem::Circle(a.neg())))
                } else {
                    Some((false, self.clone()))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_rational() {
        let x = RingElem::Q(rat_frac(4, 6));
        assert_eq!(x, RingElem::Q(rat_frac(2, 3)));
    }

    #[test]
    fn polyt_add_cancels() {
        // t^2 + (1 - t^2) = 1
        let t = RingElem::symbol(RingId::PolyT, "t").unwrap();
        let t2 = t.pow(2);
        let sum = t2.add(&RingElem::one(RingId::PolyT).sub(&t2));
        assert!(sum.is_one());
    }

    #[test]
    fn units_by_ring() {
        let five = RingElem::from_i64(RingId::PolyT, 5);
        let inv = five.inverse().unwrap();
        assert!(five.mul(&inv).is_one());
        let t = RingElem::symbol(RingId::PolyT, "t").unwrap();
        assert!(!t.is_unit());
        let w2 = RingElem::symbol(RingId::Circle, "w2").unwrap();
        let one_minus_w2 = RingElem::one(RingId::Circle).sub(&w2);
        assert!(!one_minus_w2.is_unit());
    }

    #[test]
    fn circle_mul_two_routes_agree() {
        // (1 - w2)(1 + w2) = w1^2 whichever way the reduction runs.
        let w1 = RingElem::symbol(RingId::Circle, "w1").unwrap();
        let w2 = RingElem::symbol(RingId::Circle, "w2").unwrap();
        let one = RingElem::one(RingId::Circle);
        let lhs = one.sub(&w2).mul(&one.add(&w2));
        assert_eq!(lhs, w1.mul(&w1));
    }

    #[test]
    #[should_panic(expected = "ring mismatch")]
    fn mismatch_panics() {
        let a = RingElem::one(RingId::Q);
        let b = RingElem::one(RingId::PolyT);
        let _ = a.add(&b);
    }
}
