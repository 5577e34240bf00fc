//! Multivariate gcd by primitive pseudo-remainder sequences.
//!
//! Recurses on the highest active variable; contents live in the
//! one-fewer-variable ring and bottom out in the coefficient ring.
//! Restricted to Q and Q[t], which are UFDs; the circle ring is not
//! factorial in the needed sense.

use super::Poly;
use crate::error::{Error, Result};
use crate::ring::{RingElem, RingId};

/// Gcd of two polynomials, normalized primitive with the leading
/// graded-lex coefficient monic. gcd(0, g) is normalized g.
pub fn gcd_multivar(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.ring_id() != g.ring_id() {
        return Err(Error::RingMismatch(
            f.ring_id().name().into(),
            g.ring_id().name().into(),
        ));
    }
    if f.ring_id() == RingId::Circle {
        return Err(Error::UnsupportedRing(
            "gcd over the circle ring is undefined (not a UFD)".into(),
        ));
    }
    Ok(normalize(gcd_rec(f, g)))
}

fn normalize(p: Poly) -> Poly {
    match p.leading() {
        None => p,
        Some((_, lead)) => match lead {
            RingElem::Q(_) => {
                let inv = lead.inverse().expect("nonzero leading coefficient");
                p.scale(&inv)
            }
            RingElem::PolyT(u) => {
                let lc = u.leading_coeff();
                p.scale_rat(&lc.recip())
            }
            RingElem::Circle(_) => unreachable!("circle gcd rejected earlier"),
        },
    }
}

fn gcd_rec(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let v = match main_var(f, g) {
        Some(v) => v,
        None => return base_gcd(f, g),
    };
    let df = f.degree_in(v).unwrap_or(0);
    let dg = g.degree_in(v).unwrap_or(0);
    if df == 0 {
        return gcd_rec(f, &content(g, v));
    }
    if dg == 0 {
        return gcd_rec(&content(f, v), g);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd_rec(&cf, &cg);
    let fp = f.exact_divide(&cf).expect("content divides");
    let gp = g.exact_divide(&cg).expect("content divides");
    let (mut a, mut b) = if df >= dg { (fp, gp) } else { (gp, fp) };
    loop {
        if b.degree_in(v).unwrap_or(0) == 0 {
            // A common divisor of a primitive and a v-free polynomial is
            // a unit, so only the content part survives.
            return c;
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            let pp = r_primitive(&b, v);
            return c.mul(&pp).expect("same ring");
        }
        let r = r_primitive(&r, v);
        a = b;
        b = r;
    }
}

/// Highest variable index in which either argument has positive degree.
fn main_var(f: &Poly, g: &Poly) -> Option<usize> {
    (0..f.nvars())
        .rev()
        .find(|&v| f.degree_in(v).unwrap_or(0) > 0 || g.degree_in(v).unwrap_or(0) > 0)
}

/// Gcd of two nonzero constants in the coefficient ring.
fn base_gcd(f: &Poly, g: &Poly) -> Poly {
    let a = f.as_ring_elem().expect("constant");
    let b = g.as_ring_elem().expect("constant");
    let elem = match (a, b) {
        (RingElem::Q(_), RingElem::Q(_)) => RingElem::one(RingId::Q),
        (RingElem::PolyT(p), RingElem::PolyT(q)) => RingElem::PolyT(p.gcd(&q)),
        _ => unreachable!("ring checked at entry"),
    };
    Poly::constant(f.ring_id(), f.nvars(), elem)
}

/// Gcd of the coefficients with respect to one variable.
fn content(f: &Poly, v: usize) -> Poly {
    let top = f.degree_in(v).unwrap_or(0);
    let mut acc = Poly::zero(f.ring_id(), f.nvars());
    for k in 0..=top {
        let coeff = f.coeff_of_power(v, k);
        if coeff.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &coeff);
        if let Some(e) = acc.as_ring_elem() {
            if e.is_unit() {
                break;
            }
        }
    }
    acc
}

fn r_primitive(f: &Poly, v: usize) -> Poly {
    let c = content(f, v);
    f.exact_divide(&c).expect("content divides")
}

/// Pseudo-remainder of a by b in the variable v.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v).expect("b nonzero");
    let lcb = b.coeff_of_power(v, db);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < db {
            break;
        }
        let lcr = r.coeff_of_power(v, dr);
        let shift = Poly::monomial(
            a.ring_id(),
            a.nvars(),
            super::ExpVec::var(v).pow(dr - db),
            RingElem::one(a.ring_id()),
        );
        let sub = b.mul(&lcr).and_then(|p| p.mul(&shift)).expect("same ring");
        r = r.mul(&lcb).and_then(|p| p.sub(&sub)).expect("same ring");
        if r.is_zero() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(RingId::Q, 3, 0)
    }
    fn y() -> Poly {
        Poly::var(RingId::Q, 3, 1)
    }
    fn z() -> Poly {
        Poly::var(RingId::Q, 3, 2)
    }

    #[test]
    fn monomial_gcd() {
        // gcd(X^2 Y, X Y^2) = XY
        let f = x().pow(2).unwrap().mul(&y()).unwrap();
        let g = x().mul(&y().pow(2).unwrap()).unwrap();
        let expect = x().mul(&y()).unwrap();
        assert_eq!(gcd_multivar(&f, &g).unwrap(), expect);
    }

    #[test]
    fn content_in_t() {
        // gcd(t^2 X, t Y) = t over Q[t]
        let ring = RingId::PolyT;
        let t = Poly::constant(ring, 3, RingElem::symbol(ring, "t").unwrap());
        let f = t.pow(2).unwrap().mul(&Poly::var(ring, 3, 0)).unwrap();
        let g = t.mul(&Poly::var(ring, 3, 1)).unwrap();
        assert_eq!(gcd_multivar(&f, &g).unwrap(), t);
    }

    #[test]
    fn common_factor_from_multiples() {
        // gcd(F X, F Y) = F with F = Y^2 + XZ
        let f0 = y().pow(2).unwrap().add(&x().mul(&z()).unwrap()).unwrap();
        let a = f0.mul(&x()).unwrap();
        let b = f0.mul(&y()).unwrap();
        assert_eq!(gcd_multivar(&a, &b).unwrap(), f0);
    }

    #[test]
    fn zero_cases() {
        let f = x().mul(&y()).unwrap().scale_rat(&crate::ring::rat(-3));
        let zero = Poly::zero(RingId::Q, 3);
        assert_eq!(gcd_multivar(&zero, &f).unwrap(), x().mul(&y()).unwrap());
        assert!(gcd_multivar(&zero, &zero).unwrap().is_zero());
    }

    #[test]
    fn circle_rejected() {
        let f = Poly::var(RingId::Circle, 3, 0);
        assert!(matches!(
            gcd_multivar(&f, &f),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn coprime_gives_one() {
        // gcd(X^2, 3Y^2 + 2XY) = 1
        let f = x().pow(2).unwrap();
        let g = y()
            .pow(2)
            .unwrap()
            .scale_rat(&crate::ring::rat(3))
            .add(&x().mul(&y()).unwrap().scale_rat(&crate::ring::rat(2)))
            .unwrap();
        let one = Poly::from_i64(RingId::Q, 3, 1);
        assert_eq!(gcd_multivar(&f, &g).unwrap(), one);
    }
}
