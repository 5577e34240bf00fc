//! Derivations on R[X1..Xn] and the quantities attached to them:
//! application by the Leibniz rule, nilpotence certification, the
//! degree functions deg_D and the monomial-wise variant, homogeneity
//! degree, Jacobian derivations, kernel and local-slice tests,
//! irreducibility, the linear-degree filtration, and rank upper bounds
//! with per-ring certificates.

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{ExpVec, Poly, WeightVec};
use crate::ring::{RingElem, RingId, UniPoly};

/// R-derivation given by one image polynomial per main variable; the
/// extension to the whole ring is by the Leibniz rule, with coefficient
/// symbols annihilated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: RingId,
    nvars: usize,
    images: Vec<Poly>,
}

impl Derivation {
    pub fn new(ring: RingId, nvars: usize, images: Vec<Poly>) -> Result<Self> {
        if images.len() != nvars {
            return Err(Error::Invalid(format!(
                "expected {} images, got {}",
                nvars,
                images.len()
            )));
        }
        for im in &images {
            if im.ring_id() != ring {
                return Err(Error::RingMismatch(
                    ring.name().into(),
                    im.ring_id().name().into(),
                ));
            }
            if im.nvars() != nvars {
                return Err(Error::Invalid(
                    "image variable count differs from the derivation".into(),
                ));
            }
        }
        Ok(Derivation {
            ring,
            nvars,
            images,
        })
    }

    pub fn zero(ring: RingId, nvars: usize) -> Self {
        Derivation {
            ring,
            nvars,
            images: (0..nvars).map(|_| Poly::zero(ring, nvars)).collect(),
        }
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|p| p.is_zero())
    }

    /// D(f) = sum over variables of (df/dXi) * D(Xi).
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.ring_id() != self.ring {
            return Err(Error::RingMismatch(
                self.ring.name().into(),
                f.ring_id().name().into(),
            ));
        }
        if f.nvars() != self.nvars {
            return Err(Error::Invalid(
                "polynomial variable count differs from the derivation".into(),
            ));
        }
        let mut out = Poly::zero(self.ring, self.nvars);
        for i in 0..self.nvars {
            let part = f.partial(i);
            if part.is_zero() || self.images[i].is_zero() {
                continue;
            }
            out = out.add(&part.mul(&self.images[i])?)?;
        }
        Ok(out)
    }

    /// Certify nilpotence on the generators within the bound; by the
    /// Leibniz rule this extends to the whole ring.
    pub fn certify_nilpotent(&self, bound: usize) -> NilpotenceCert {
        let mut orders = Vec::with_capacity(self.nvars);
        let mut witness = None;
        for i in 0..self.nvars {
            let mut g = Poly::var(self.ring, self.nvars, i);
            let mut order = None;
            for n in 1..=bound {
                g = self.apply(&g).expect("images are compatible");
                if g.is_zero() {
                    order = Some(n);
                    break;
                }
            }
            if order.is_none() && witness.is_none() {
                witness = Some((i, g.clone()));
            }
            orders.push(order);
        }
        NilpotenceCert {
            certified: orders.iter().all(|o| o.is_some()),
            orders,
            witness,
        }
    }

    /// deg_D(f) = max n with D^n(f) nonzero; 0 exactly on nonzero kernel
    /// elements. The zero polynomial is rejected (its degree is minus
    /// infinity by convention).
    pub fn deg_d(&self, f: &Poly, bound: usize) -> Result<usize> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut g = f.clone();
        for n in 1..=bound {
            g = self.apply(&g)?;
            if g.is_zero() {
                return Ok(n - 1);
            }
        }
        Err(Error::BoundExceeded {
            bound,
            context: "deg_D iteration did not reach zero".into(),
        })
    }

    /// Monomial-wise degree: the maximum of deg_D over the terms of f.
    /// Always at least deg_D(f).
    pub fn mu_bar(&self, f: &Poly, bound: usize) -> Result<usize> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut best = 0;
        for (e, c) in f.terms() {
            let mono = Poly::monomial(self.ring, self.nvars, *e, c.clone());
            best = best.max(self.deg_d(&mono, bound)?);
        }
        Ok(best)
    }

    /// The unique d such that every nonzero image of Xi is homogeneous
    /// of weight w(Xi) + d; None when images disagree or all vanish.
    pub fn homogeneity_degree(&self, w: &WeightVec) -> Option<i64> {
        let mut degree = None;
        for (i, im) in self.images.iter().enumerate() {
            if im.is_zero() {
                continue;
            }
            let d = im.is_homogeneous(w)? - w.get(i);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// The Jacobian derivation of the pair (F, G): each variable maps to
    /// the determinant of the Jacobian of (F, G, that variable). F and G
    /// lie in the kernel of the result.
    pub fn jacobian(f: &Poly, g: &Poly) -> Result<Derivation> {
        if f.nvars() != 3 || g.nvars() != 3 {
            return Err(Error::DimensionError(f.nvars().max(g.nvars())));
        }
        if f.ring_id() != g.ring_id() {
            return Err(Error::RingMismatch(
                f.ring_id().name().into(),
                g.ring_id().name().into(),
            ));
        }
        let fx = f.partial(0);
        let fy = f.partial(1);
        let fz = f.partial(2);
        let gx = g.partial(0);
        let gy = g.partial(1);
        let gz = g.partial(2);
        let img_x = fy.mul(&gz)?.sub(&fz.mul(&gy)?)?;
        let img_y = fz.mul(&gx)?.sub(&fx.mul(&gz)?)?;
        let img_z = fx.mul(&gy)?.sub(&fy.mul(&gx)?)?;
        Derivation::new(f.ring_id(), 3, vec![img_x, img_y, img_z])
    }

    pub fn kernel_member(&self, f: &Poly) -> Result<bool> {
        Ok(self.apply(f)?.is_zero())
    }

    /// Local slice: Df is a nonzero kernel element.
    pub fn is_local_slice(&self, f: &Poly) -> Result<bool> {
        let df = self.apply(f)?;
        if df.is_zero() {
            return Ok(false);
        }
        Ok(self.apply(&df)?.is_zero())
    }

    /// Irreducible: the gcd of the images is a unit. The zero derivation
    /// is not irreducible.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.ring == RingId::Circle {
            return Err(Error::UnsupportedRing(
                "irreducibility needs gcd, undefined over the circle ring".into(),
            ));
        }
        if self.is_zero() {
            return Ok(false);
        }
        let mut acc = Poly::zero(self.ring, self.nvars);
        for im in &self.images {
            if im.is_zero() {
                continue;
            }
            acc = acc.gcd(im)?;
        }
        Ok(acc.as_ring_elem().map_or(false, |e| e.is_unit()))
    }

    /// Rewrite the derivation in the coordinates of the change.
    pub fn conjugate(&self, change: &CoordChange) -> Result<Derivation> {
        let mut images = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            // D(U_i) in old coordinates, then rewritten in the new ones.
            let mut d_ui = Poly::zero(self.ring, self.nvars);
            for j in 0..self.nvars {
                d_ui = d_ui.add(&self.images[j].scale(&change.forward[i][j]))?;
            }
            images.push(change.to_new_coords(&d_ui)?);
        }
        Derivation::new(self.ring, self.nvars, images)
    }

    /// Cache of iterated images D^k(Xi) for k up to each variable's
    /// nilpotence order.
    fn variable_iterates(&self, bound: usize) -> Result<Vec<Vec<Poly>>> {
        let cert = self.certify_nilpotent(bound);
        if !cert.certified {
            return Err(Error::BoundExceeded {
                bound,
                context: "nilpotence not certified on the generators".into(),
            });
        }
        let mut iterates = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let mut chain = vec![Poly::var(self.ring, self.nvars, i)];
            while !chain.last().unwrap().is_zero() {
                let next = self.apply(chain.last().unwrap())?;
                chain.push(next);
            }
            iterates.push(chain);
        }
        Ok(iterates)
    }

    /// Strata of linear forms by deg_D threshold. For each m starting at
    /// zero, the forms L with D^{m+1}(L) = 0 make a subspace over the
    /// fraction field; its dimension and a cleared-denominator basis are
    /// recorded until the whole space is reached.
    pub fn linear_filtration(&self, bound: usize) -> Result<LinearFiltration> {
        let iterates = self.variable_iterates(bound)?;
        let mut strata = Vec::new();
        let mut m = 0;
        loop {
            let basis = self.form_stratum_basis(&iterates, m + 1);
            let dim = basis.len();
            strata.push(Stratum { m, dim, basis });
            if dim == self.nvars {
                break;
            }
            m += 1;
        }
        Ok(LinearFiltration { strata })
    }

    /// Basis of { (a_i) : sum a_i D^k(Xi) = 0 }, cleared denominators.
    fn form_stratum_basis(&self, iterates: &[Vec<Poly>], k: usize) -> Vec<LinearForm> {
        let mut monomials = std::collections::BTreeSet::new();
        let polys: Vec<Poly> = iterates
            .iter()
            .map(|chain| {
                chain
                    .get(k)
                    .cloned()
                    .unwrap_or_else(|| Poly::zero(self.ring, self.nvars))
            })
            .collect();
        for p in &polys {
            for (e, _) in p.terms() {
                monomials.insert(*e);
            }
        }
        let rows: Vec<Vec<RingElem>> = monomials
            .iter()
            .map(|e| polys.iter().map(|p| p.coeff(e)).collect())
            .collect();
        linalg::nullspace(rows, self.nvars, self.ring)
            .into_iter()
            .map(|coeffs| LinearForm {
                ring: self.ring,
                coeffs,
            })
            .collect()
    }

    /// Three linearly independent forms with strictly increasing deg_D,
    /// when the filtration has three distinct jump thresholds.
    pub fn strict_triple(&self, bound: usize) -> Result<Option<StrictTriple>> {
        let filtration = self.linear_filtration(bound)?;
        let jumps = filtration.jumps();
        if jumps.len() < self.nvars {
            return Ok(None);
        }
        let mut forms = Vec::new();
        let mut degrees = Vec::new();
        for &m in &jumps {
            let stratum = filtration
                .strata
                .iter()
                .find(|s| s.m == m)
                .expect("jump indexes a stratum");
            let prev_basis: Vec<Vec<RingElem>> = if m == 0 {
                Vec::new()
            } else {
                filtration
                    .strata
                    .iter()
                    .find(|s| s.m == m - 1)
                    .map(|s| s.basis.iter().map(|f| f.coeffs.clone()).collect())
                    .unwrap_or_default()
            };
            let prev_rank = linalg::rank(prev_basis.clone(), self.nvars);
            let mut candidates: Vec<&LinearForm> = stratum.basis.iter().collect();
            candidates.sort_by_key(|f| f.first_nonzero());
            let chosen = candidates.into_iter().find(|f| {
                let mut rows = prev_basis.clone();
                rows.push(f.coeffs.clone());
                linalg::rank(rows, self.nvars) > prev_rank
            });
            match chosen {
                Some(f) => {
                    forms.push(f.clone());
                    degrees.push(m);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(StrictTriple { forms, degrees }))
    }

    /// Rank upper bound from kernel linear forms, with per-ring
    /// certificates: over Q every nonzero form is a variable; over Q[t]
    /// the content-normalized row is certified unimodular by a Bezout
    /// chain; over the circle ring only rows with a unit entry certify a
    /// variable, the rest are reported undecided.
    pub fn rank_upper(&self, bound: usize) -> Result<RankReport> {
        let filtration = self.linear_filtration(bound)?;
        let kernel_forms = filtration.strata[0].basis.clone();
        let mut certified = Vec::new();
        let mut undecided = Vec::new();
        for form in &kernel_forms {
            match self.ring {
                RingId::Q => certified.push((form.clone(), RowCertificate::FieldNonzero)),
                RingId::PolyT => match bezout_chain(&form.coeffs) {
                    Some(cofactors) => {
                        certified.push((form.clone(), RowCertificate::Unimodular { cofactors }))
                    }
                    None => undecided.push(form.clone()),
                },
                RingId::Circle => match form.coeffs.iter().position(|c| c.is_unit()) {
                    Some(idx) => certified
                        .push((form.clone(), RowCertificate::UnitCoefficient { index: idx })),
                    None => undecided.push(form.clone()),
                },
            }
        }
        Ok(RankReport {
            rank_bound: self.nvars - certified.len(),
            kernel_forms,
            certified,
            undecided,
        })
    }
}

/// Bezout cofactors certifying that the row generates the unit ideal of
/// Q[t]; None when the gcd of the entries is not 1.
fn bezout_chain(coeffs: &[RingElem]) -> Option<Vec<UniPoly>> {
    let polys: Vec<UniPoly> = coeffs
        .iter()
        .map(|c| match c {
            RingElem::PolyT(p) => p.clone(),
            _ => unreachable!("ring checked by caller"),
        })
        .collect();
    let mut g = UniPoly::zero();
    let mut cofactors: Vec<UniPoly> = Vec::new();
    for p in &polys {
        if p.is_zero() {
            cofactors.push(UniPoly::zero());
            continue;
        }
        if g.is_zero() {
            let lc = p.leading_coeff();
            g = p.scale(&lc.clone().recip());
            cofactors = cofactors.iter().map(|_| UniPoly::zero()).collect();
            cofactors.push(UniPoly::constant(lc.recip()));
            continue;
        }
        let (g2, u, v) = g.gcd_bezout(p).ok()?;
        for c in cofactors.iter_mut() {
            *c = c.mul(&u);
        }
        cofactors.push(v);
        g = g2;
    }
    if !g.is_one() {
        return None;
    }
    // Exact check of the certificate before handing it out.
    let mut acc = UniPoly::zero();
    for (c, p) in cofactors.iter().zip(&polys) {
        acc = acc.add(&c.mul(p));
    }
    if acc.is_one() {
        Some(cofactors)
    } else {
        None
    }
}

/// Outcome of nilpotence certification on the generators.
#[derive(Debug, Clone)]
pub struct NilpotenceCert {
    pub certified: bool,
    /// Minimal n with D^n(Xi) = 0, per variable; None when the bound ran
    /// out first.
    pub orders: Vec<Option<usize>>,
    /// A surviving iterate for the first uncertified variable.
    pub witness: Option<(usize, Poly)>,
}

/// Linear form over the ring (cleared denominators) in the ambient
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    ring: RingId,
    coeffs: Vec<RingElem>,
}

impl LinearForm {
    pub fn new(ring: RingId, coeffs: Vec<RingElem>) -> Self {
        LinearForm { ring, coeffs }
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn first_nonzero(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        let mut p = Poly::zero(self.ring, nvars);
        for (i, c) in self.coeffs.iter().enumerate() {
            p = p
                .add(&Poly::monomial(self.ring, nvars, ExpVec::var(i), c.clone()))
                .expect("same ring");
        }
        p
    }

    pub fn render(&self, names: &[&str]) -> String {
        self.to_poly(self.coeffs.len()).render(names)
    }

    /// Proportionality over the fraction field, by cross-multiplication.
    pub fn proportional_to(&self, other: &LinearForm) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        for i in 0..self.coeffs.len() {
            for j in i + 1..self.coeffs.len() {
                let lhs = self.coeffs[i].mul(&other.coeffs[j]);
                let rhs = self.coeffs[j].mul(&other.coeffs[i]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        !self.is_zero() && !other.is_zero()
    }
}

/// One threshold of the filtration: forms with deg_D at most m.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub m: usize,
    pub dim: usize,
    pub basis: Vec<LinearForm>,
}

/// Filtration of the linear forms by deg_D.
#[derive(Debug, Clone)]
pub struct LinearFiltration {
    pub strata: Vec<Stratum>,
}

impl LinearFiltration {
    /// Thresholds where the dimension increases; these are exactly the
    /// deg_D values taken by linear forms.
    pub fn jumps(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prev = 0;
        for s in &self.strata {
            if s.dim > prev {
                out.push(s.m);
                prev = s.dim;
            }
        }
        out
    }

    pub fn kernel_forms(&self) -> &[LinearForm] {
        &self.strata[0].basis
    }
}

/// Three forms with strictly increasing deg_D.
#[derive(Debug, Clone)]
pub struct StrictTriple {
    pub forms: Vec<LinearForm>,
    pub degrees: Vec<usize>,
}

/// How a kernel row was certified to be a variable.
#[derive(Debug, Clone)]
pub enum RowCertificate {
    /// Over a field any nonzero form extends to a coordinate system.
    FieldNonzero,
    /// Bezout cofactors witnessing the unit ideal over Q[t].
    Unimodular { cofactors: Vec<UniPoly> },
    /// A unit coefficient makes the row trivially completable.
    UnitCoefficient { index: usize },
}

/// Rank upper bound together with its evidence.
#[derive(Debug, Clone)]
pub struct RankReport {
    pub rank_bound: usize,
    pub kernel_forms: Vec<LinearForm>,
    pub certified: Vec<(LinearForm, RowCertificate)>,
    pub undecided: Vec<LinearForm>,
}

/// Invertible linear change of coordinates with an exact inverse; the
/// determinant must be a unit of the ring.
#[derive(Debug, Clone)]
pub struct CoordChange {
    ring: RingId,
    nvars: usize,
    /// forward[i][j]: coefficient of old Xj in the new Ui.
    forward: Vec<Vec<RingElem>>,
    /// inverse[j][i]: coefficient of new Ui in the old Xj.
    inverse: Vec<Vec<RingElem>>,
}

impl CoordChange {
    pub fn new(ring: RingId, nvars: usize, forward: Vec<Vec<RingElem>>) -> Result<Self> {
        let det = det_matrix(&forward, ring);
        let det_inv = det.inverse().ok_or(Error::NotInvertible)?;
        let n = nvars;
        let mut inverse = vec![vec![RingElem::zero(ring); n]; n];
        for j in 0..n {
            for i in 0..n {
                // Adjugate entry: cofactor of (i, j).
                let minor: Vec<Vec<RingElem>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| forward[r][c].clone())
                            .collect()
                    })
                    .collect();
                let mut cof = det_matrix(&minor, ring);
                if (i + j) % 2 == 1 {
                    cof = cof.neg();
                }
                inverse[j][i] = cof.mul(&det_inv);
            }
        }
        Ok(CoordChange {
            ring,
            nvars,
            forward,
            inverse,
        })
    }

    pub fn identity(ring: RingId, nvars: usize) -> Self {
        let mut forward = vec![vec![RingElem::zero(ring); nvars]; nvars];
        for (i, row) in forward.iter_mut().enumerate() {
            row[i] = RingElem::one(ring);
        }
        Self::new(ring, nvars, forward).expect("identity is invertible")
    }

    pub fn from_forms(ring: RingId, forms: &[LinearForm]) -> Result<Self> {
        let forward = forms.iter().map(|f| f.coeffs.clone()).collect();
        Self::new(ring, forms.len(), forward)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The new coordinates as linear forms in the old ones.
    pub fn new_forms(&self) -> Vec<LinearForm> {
        self.forward
            .iter()
            .map(|row| LinearForm::new(self.ring, row.clone()))
            .collect()
    }

    /// Rewrite a polynomial in the new coordinates.
    pub fn to_new_coords(&self, f: &Poly) -> Result<Poly> {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|j| LinearForm::new(self.ring, self.inverse[j].clone()).to_poly(self.nvars))
            .collect();
        f.substitute(&images)
    }

    /// Rewrite a polynomial of the new coordinates back in the old ones.
    pub fn to_old_coords(&self, f: &Poly) -> Result<Poly> {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| LinearForm::new(self.ring, self.forward[i].clone()).to_poly(self.nvars))
            .collect();
        f.substitute(&images)
    }

    /// The composite change "self, then next".
    pub fn then(&self, next: &CoordChange) -> Result<CoordChange> {
        let n = self.nvars;
        let mut forward = vec![vec![RingElem::zero(self.ring); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = RingElem::zero(self.ring);
                for k in 0..n {
                    acc = acc.add(&next.forward[i][k].mul(&self.forward[k][j]));
                }
                forward[i][j] = acc;
            }
        }
        CoordChange::new(self.ring, n, forward)
    }
}

fn det_matrix(m: &[Vec<RingElem>], ring: RingId) -> RingElem {
    match m.len() {
        0 => RingElem::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = RingElem::zero(ring);
            for (j, entry) in m[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RingElem>> = (1..n)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[r][c].clone())
                            .collect()
                    })
                    .collect();
                let term = entry.mul(&det_matrix(&minor, ring));
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

/// Type data (p, q, d) of a pair of homogeneous kernel generators:
/// p <= q are the weighted degrees and d = p + q - 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelType {
    pub p: i64,
    pub q: i64,
    pub d: i64,
    /// Two linear generators leave only the zero derivation.
    pub degenerate: bool,
}

pub fn kernel_type(f: &Poly, g: &Poly, w: &WeightVec) -> crate::error::Result<KernelType> {
    let df = f
        .is_homogeneous(w)
        .ok_or_else(|| Error::NotHomogeneous("first generator".into()))?;
    let dg = g
        .is_homogeneous(w)
        .ok_or_else(|| Error::NotHomogeneous("second generator".into()))?;
    let (p, q) = if df <= dg { (df, dg) } else { (dg, df) };
    Ok(KernelType {
        p,
        q,
        d: p + q - 3,
        degenerate: p == 1 && q == 1,
    })
}
