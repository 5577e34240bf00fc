//! Exact n-th roots of sparse polynomials.
//!
//! Greedy leading-term matching: the leading exponent must divide by n
//! and the leading coefficient must be an exact n-th power in the ring;
//! lower terms are determined one at a time by matching the leading
//! term of the running difference. The loop demands strictly decreasing
//! candidate exponents, and success requires the difference to vanish,
//! so the greedy phase is fallible without being unsound.

use super::{ExpVec, Poly};
use crate::ring::{rat, RingElem};

pub(super) fn nth_root(f: &Poly, n: u32) -> Option<Poly> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(f.clone());
    }
    if f.is_zero() {
        return Some(f.clone());
    }
    let (lead_exp, lead_coeff) = f.leading().map(|(e, c)| (*e, c.clone()))?;
    let root_exp = divide_exp(&lead_exp, n)?;
    let root_coeff = lead_coeff.nth_root(n)?;
    let ring = f.ring_id();
    let nvars = f.nvars();
    let mut root = Poly::monomial(ring, nvars, root_exp, root_coeff.clone());
    // Each new coefficient divides by n * lead^(n-1).
    let denom = root_coeff
        .pow(n - 1)
        .mul(&RingElem::from_rat(ring, rat(n as i64)));
    let mut last_exp: Option<ExpVec> = None;
    loop {
        let diff = f.sub(&root.pow(n).ok()?).ok()?;
        if diff.is_zero() {
            return Some(root);
        }
        let (de, dc) = diff.leading().map(|(e, c)| (*e, c.clone()))?;
        let shift = root_exp.pow((n - 1) as u16);
        let te = de.div(&shift)?;
        if te >= root_exp {
            return None;
        }
        if let Some(prev) = last_exp {
            if te >= prev {
                return None;
            }
        }
        last_exp = Some(te);
        let c = dc.exact_div(&denom)?;
        root = root.add(&Poly::monomial(ring, nvars, te, c)).ok()?;
    }
}

fn divide_exp(e: &ExpVec, n: u32) -> Option<ExpVec> {
    let mut out = [0u16; super::MAX_VARS];
    for (i, slot) in out.iter_mut().enumerate() {
        let v = e.get(i);
        if v as u32 % n != 0 {
            return None;
        }
        *slot = (v as u32 / n) as u16;
    }
    Some(ExpVec::from_slice(&out))
}
