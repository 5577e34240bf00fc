//! Fraction-free linear algebra over the coefficient rings.
//!
//! Elimination is Bareiss-style: every division is exact by Sylvester's
//! identity, so matrices over Q[t] or the circle ring never leave the
//! ring. Nullspace vectors are assembled from maximal minors
//! (cross-multiplied Cramer solutions), again without division, then
//! brought to a content-normalized form per ring.

use num::traits::Zero;
use num::Integer;

use crate::ring::{Rat, RingElem, RingId, UniPoly};

/// Reduce to row echelon form; returns the reduced rows and the pivot
/// column indices in order.
pub fn row_echelon(mut rows: Vec<Vec<RingElem>>, ncols: usize) -> (Vec<Vec<RingElem>>, Vec<usize>) {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut prev: Option<RingElem> = None;
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let mut num = rows[r][c]
                    .mul(&rows[i][j])
                    .sub(&rows[i][c].mul(&rows[r][j]));
                if let Some(d) = &prev {
                    num = num.exact_div(d).expect("Bareiss division is exact");
                }
                rows[i][j] = num;
            }
            rows[i][c] = RingElem::zero(rows[i][c].ring_id());
        }
        prev = Some(rows[r][c].clone());
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<RingElem>>, ncols: usize) -> usize {
    row_echelon(rows, ncols).1.len()
}

/// Determinant of a small square matrix by Laplace expansion.
fn det(m: &[Vec<RingElem>], ring: RingId) -> RingElem {
    let n = m.len();
    match n {
        0 => RingElem::one(ring),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = RingElem::zero(ring);
            for (j, entry) in m[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RingElem>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = entry.mul(&det(&minor, ring));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

/// Basis of the right nullspace of the row system, one vector per free
/// column, with cleared denominators and content normalization. The
/// order follows the free columns ascending.
pub fn nullspace(rows: Vec<Vec<RingElem>>, ncols: usize, ring: RingId) -> Vec<Vec<RingElem>> {
    let (ech, pivots) = row_echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let pivot_mat: Vec<Vec<RingElem>> = ech
        .iter()
        .map(|row| pivots.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let d = det(&pivot_mat, ring);
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![RingElem::zero(ring); ncols];
        v[f] = d.clone();
        for (i, &pc) in pivots.iter().enumerate() {
            let replaced: Vec<Vec<RingElem>> = ech
                .iter()
                .map(|row| {
                    pivots
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| {
                            if k == i {
                                row[f].clone()
                            } else {
                                row[c].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            v[pc] = det(&replaced, ring).neg();
        }
        basis.push(normalize_vector(v));
    }
    basis
}

/// Gcd of two rationals as a positive rational.
fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return abs_rat(b);
    }
    if b.is_zero() {
        return abs_rat(a);
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rat::new(num, den)
}

fn abs_rat(a: &Rat) -> Rat {
    use num::Signed;
    a.abs()
}

fn rat_content_uni(p: &UniPoly, acc: &mut Rat) {
    for c in p.coeffs() {
        *acc = rat_gcd(acc, c);
    }
}

/// Scale and divide a vector to its canonical representative: over Q
/// the first nonzero entry becomes 1; over Q[t] the vector is divided
/// by its polynomial content and rational content; over the circle ring
/// by its rational content. Sign follows the first nonzero entry.
pub fn normalize_vector(v: Vec<RingElem>) -> Vec<RingElem> {
    let Some(first) = v.iter().find(|e| !e.is_zero()) else {
        return v;
    };
    match first.ring_id() {
        RingId::Q => {
            let inv = first.inverse().expect("nonzero rational");
            v.iter().map(|e| e.mul(&inv)).collect()
        }
        RingId::PolyT => {
            let mut content = UniPoly::zero();
            for e in &v {
                if let RingElem::PolyT(p) = e {
                    content = content.gcd(p);
                }
            }
            let content = RingElem::PolyT(content);
            let mut out: Vec<RingElem> = v
                .iter()
                .map(|e| {
                    if e.is_zero() {
                        e.clone()
                    } else {
                        e.exact_div(&content).expect("content divides")
                    }
                })
                .collect();
            let mut rc = Rat::zero();
            for e in &out {
                if let RingElem::PolyT(p) = e {
                    rat_content_uni(p, &mut rc);
                }
            }
            if !rc.is_zero() {
                let inv = rc.recip();
                out = out.iter().map(|e| e.scale(&inv)).collect();
            }
            flip_to_canonical(out)
        }
        RingId::Circle => {
            let mut rc = Rat::zero();
            for e in &v {
                if let RingElem::Circle(c) = e {
                    rat_content_uni(c.part_a(), &mut rc);
                    rat_content_uni(c.part_b(), &mut rc);
                }
            }
            let mut out = if rc.is_zero() {
                v
            } else {
                let inv = rc.recip();
                v.iter().map(|e| e.scale(&inv)).collect()
            };
            out = reduce_circle_common_divisors(out);
            flip_to_canonical(out)
        }
    }
}

/// Strip common circle-ring divisors from a vector. The ring is not
/// factorial, so this is a normalization pass, not a full content gcd:
/// candidate divisors are the entries themselves and the atoms w1,
/// 1 - w2, 1 + w2, which cover the factors that cross-multiplied
/// elimination introduces here.
fn reduce_circle_common_divisors(mut v: Vec<RingElem>) -> Vec<RingElem> {
    let ring = RingId::Circle;
    let w1 = RingElem::symbol(ring, "w1").expect("circle symbol");
    let w2 = RingElem::symbol(ring, "w2").expect("circle symbol");
    let one = RingElem::one(ring);
    let atoms = [w1, one.sub(&w2), one.add(&w2)];
    'outer: loop {
        let mut candidates: Vec<RingElem> = v
            .iter()
            .filter(|e| !e.is_zero() && !e.is_unit())
            .cloned()
            .collect();
        candidates.extend(atoms.iter().cloned());
        for cand in candidates {
            let quotients: Option<Vec<RingElem>> = v
                .iter()
                .map(|e| {
                    if e.is_zero() {
                        Some(e.clone())
                    } else {
                        e.exact_div(&cand)
                    }
                })
                .collect();
            if let Some(q) = quotients {
                v = q;
                continue 'outer;
            }
        }
        return v;
    }
}

fn flip_to_canonical(v: Vec<RingElem>) -> Vec<RingElem> {
    let flip = v
        .iter()
        .find(|e| !e.is_zero())
        .map(|e| !e.is_sign_canonical())
        .unwrap_or(false);
    if flip {
        v.iter().map(|e| e.neg()).collect()
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn q(n: i64) -> RingElem {
        RingElem::from_i64(RingId::Q, n)
    }

    #[test]
    fn echelon_rank() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(rows, 3), 2);
    }

    #[test]
    fn nullspace_simple() {
        // x + 2y + 3z = 0, y + z = 0 -> (-1, -1, 1) direction
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]];
        let ns = nullspace(rows, 3, RingId::Q);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // normalized: first nonzero entry is 1
        assert!(v[0].is_one());
        let check = v[0].mul(&q(1)).add(&v[1].mul(&q(2))).add(&v[2].mul(&q(3)));
        assert!(check.is_zero());
    }

    #[test]
    fn nullspace_no_constraints() {
        let ns = nullspace(Vec::new(), 3, RingId::Q);
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            assert!(v[i].is_one());
        }
    }

    #[test]
    fn circle_nullspace_stays_in_ring() {
        // a(1 - w2) - b w1 = 0 has kernel direction (w1, 1 - w2).
        let ring = RingId::Circle;
        let w1 = RingElem::symbol(ring, "w1").unwrap();
        let w2 = RingElem::symbol(ring, "w2").unwrap();
        let one = RingElem::one(ring);
        let rows = vec![vec![one.sub(&w2), w1.neg(), RingElem::zero(ring)]];
        let ns = nullspace(rows, 3, ring);
        assert_eq!(ns.len(), 2);
        // The vector supported on the first two columns must satisfy the
        // proportionality a (1 - w2) = b w1.
        let v = &ns[0];
        let check = v[0].mul(&one.sub(&w2)).sub(&v[1].mul(&w1));
        assert!(check.is_zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn polyt_content_normalization() {
        let t = RingElem::symbol(RingId::PolyT, "t").unwrap();
        let v = vec![
            t.mul(&t).scale(&rat(2)),
            t.scale(&rat(4)),
            RingElem::zero(RingId::PolyT),
        ];
        let n = normalize_vector(v);
        assert_eq!(n[0], t);
        assert_eq!(n[1], RingElem::from_i64(RingId::PolyT, 2));
    }
}
