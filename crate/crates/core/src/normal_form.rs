//! Normal forms for irreducible homogeneous rank-2 derivations:
//! reduction modulo a kernel variable, the two-variable linear data,
//! the Y^{d+2} + X q(X,Y,Z) normalization, the shape with top term
//! beta X^{i+2} Z^{d-i} and divisor condition (d-i) | (d+2), the
//! triangularizability decision, the successive-grading reduction to
//! the slice normal form, and Newton polygon checks.

use crate::derivation::{CoordChange, Derivation, LinearForm};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{ExpVec, Poly, WeightVec};
use crate::ring::{RingElem, RingId};

/// Result of the first normalization: coordinates where the kernel
/// generator is gamma * (Y^{d+2} + X q(X,Y,Z)) with no X^{d+2} monomial
/// and deg_D(X) = 0 < deg_D(Y) < deg_D(Z).
#[derive(Debug, Clone)]
pub struct SaForm {
    /// Change from the input coordinates to the normal ones.
    pub coords: CoordChange,
    /// The new coordinates as linear forms in the input variables.
    pub forms: Vec<LinearForm>,
    /// Monic normal form Y^{d+2} + X q(X,Y,Z) in the new coordinates.
    pub p: Poly,
    /// Unit scale of the kernel generator: P_new = gamma * p (after the
    /// recorded monomial strip).
    pub gamma: RingElem,
    /// Unit with D_new = gamma_d * jacobian(X, p).
    pub gamma_d: RingElem,
    /// Coefficient of the stripped X^{d+2} monomial of p, if any.
    pub stripped: Option<RingElem>,
    /// Homogeneity degree of the derivation.
    pub d: i64,
    /// The derivation rewritten in the new coordinates.
    pub derivation: Derivation,
    /// deg_D of the new Y coordinate.
    pub deg_y: usize,
}

/// Coefficient pattern of a normalized kernel generator: P = Y^{d+2} +
/// X f_{d+1} + X f_d Z + ... + X f_{i+2} Z^{d-i-1} + beta X^{i+2}
/// Z^{d-i} with (d-i) | (d+2).
#[derive(Debug, Clone)]
pub struct SbShape {
    pub d: i64,
    /// Index with top Z-degree d - i; ranges over -1..=d-1 (the lower
    /// end only for d = 0).
    pub i: i64,
    pub beta: RingElem,
    /// Pairs (j, f_j) for j = i+2..=d+1, homogeneous of degree j in X, Y.
    pub f: Vec<(usize, Poly)>,
}

impl SbShape {
    /// Top Z-degree of the pattern.
    pub fn z_degree(&self) -> i64 {
        self.d - self.i
    }

    /// Rebuild the polynomial from the recorded pieces.
    pub fn reassemble(&self, ring: RingId) -> Result<Poly> {
        let x = Poly::var(ring, 3, 0);
        let y = Poly::var(ring, 3, 1);
        let z = Poly::var(ring, 3, 2);
        let mut p = y.pow((self.d + 2) as u32)?;
        for (j, fj) in &self.f {
            let zpow = z.pow((self.d + 1 - *j as i64) as u32)?;
            p = p.add(&x.mul(fj)?.mul(&zpow)?)?;
        }
        let top = Poly::monomial(
            ring,
            3,
            ExpVec::from_slice(&[(self.i + 2) as u16, 0, (self.d - self.i) as u16]),
            self.beta.clone(),
        );
        p.add(&top)
    }
}

/// Verdict of the triangularizability test.
#[derive(Debug, Clone)]
pub struct TriangularReport {
    pub sa: SaForm,
    pub sb: SbShape,
    pub triangular: bool,
    /// Images of the derivation in the normal coordinates.
    pub images: Vec<Poly>,
    /// deg_D(Y) and deg_D(Z) in the normal coordinates; computed in the
    /// triangular case where the iterates stay two-variable.
    pub deg_y: Option<usize>,
    pub deg_z: Option<usize>,
}

/// The slice normal form P = Z~^p + c_1 X^q Z~^{p-1} + ... +
/// c_{p-1} X^{pq-q} Z~ + c_p X^{pq-1} Y with Z~ = h(X,Y) + X^{q-1} Z.
#[derive(Debug, Clone)]
pub struct NtrReport {
    pub p: u32,
    pub q: u32,
    /// Whether the roles of p and q had to be exchanged to succeed.
    pub swapped: bool,
    /// Total change from the input coordinates.
    pub coords: CoordChange,
    /// The monic kernel generator in the final coordinates.
    pub p_final: Poly,
    /// Homogeneous of degree q, monic in Y.
    pub h: Poly,
    /// c_1..c_p with c_p nonzero.
    pub c: Vec<RingElem>,
    /// h + X^{q-1} Z in the final coordinates.
    pub z_tilde: Poly,
    /// Units carried along from the first normalization.
    pub gamma: RingElem,
    pub gamma_d: RingElem,
    /// The derivation in the final coordinates.
    pub derivation: Derivation,
}

/// Convex hull of the exponent support in two chosen variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(i64, i64)>,
    /// Hull vertices, counterclockwise from the origin.
    pub vertices: Vec<(i64, i64)>,
}

/// Outcome of the triangle-with-divisibility test on a Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpCheck {
    pub triangle: bool,
    pub m: i64,
    pub n: i64,
    pub divides: bool,
    /// Support on a single axis or a point; accepted as a flat triangle.
    pub degenerate: bool,
    pub pass: bool,
}

/// Set a kernel variable to zero and forget it, producing the induced
/// derivation on the remaining two variables.
pub fn reduce_mod_var(d: &Derivation, var: usize) -> Result<Derivation> {
    if !d.image(var).is_zero() {
        return Err(Error::NotInKernel(format!("variable index {}", var)));
    }
    let ring = d.ring_id();
    let images: Vec<Poly> = (0..d.nvars())
        .filter(|&i| i != var)
        .map(|i| d.image(i).coeff_of_power(var, 0).drop_var(var))
        .collect();
    Derivation::new(ring, d.nvars() - 1, images)
}

/// Linear data of a nonzero homogeneous two-variable derivation of
/// degree d: a form V1 spanning the linear kernel and a form V2 with
/// D(V2) = V1^{d+1} after absorbing the scale factor.
pub fn rentschler_data(dbar: &Derivation, d: i64) -> Result<(LinearForm, LinearForm)> {
    if dbar.nvars() != 2 {
        return Err(Error::DimensionError(dbar.nvars()));
    }
    if dbar.is_zero() {
        return Err(Error::NoLinearKernel);
    }
    let ring = dbar.ring_id();
    // Kernel of (a, b) -> a*Dv + b*Dw.
    let mut monomials = std::collections::BTreeSet::new();
    for i in 0..2 {
        for (e, _) in dbar.image(i).terms() {
            monomials.insert(*e);
        }
    }
    let rows: Vec<Vec<RingElem>> = monomials
        .iter()
        .map(|e| vec![dbar.image(0).coeff(e), dbar.image(1).coeff(e)])
        .collect();
    let kernel = linalg::nullspace(rows, 2, ring);
    if kernel.is_empty() {
        return Err(Error::NoLinearKernel);
    }
    let v1 = LinearForm::new(ring, kernel[0].clone());
    // Solve a*Dv + b*Dw = alpha * V1^{d+1} for (a, b, alpha).
    let target = v1.to_poly(2).pow((d + 1) as u32)?;
    for (e, _) in target.terms() {
        monomials.insert(*e);
    }
    let rows: Vec<Vec<RingElem>> = monomials
        .iter()
        .map(|e| {
            vec![
                dbar.image(0).coeff(e),
                dbar.image(1).coeff(e),
                target.coeff(e).neg(),
            ]
        })
        .collect();
    let solutions = linalg::nullspace(rows, 3, ring);
    let candidate = solutions
        .iter()
        .rev()
        .find(|v| !v[2].is_zero())
        .ok_or(Error::NoPreimage)?;
    let alpha_inv = candidate[2].inverse().ok_or(Error::NoPreimage)?;
    let v2 = LinearForm::new(
        ring,
        vec![candidate[0].mul(&alpha_inv), candidate[1].mul(&alpha_inv)],
    );
    Ok((v1, v2))
}

/// Complete a nonzero form to a coordinate system, filling in standard
/// basis vectors greedily.
fn complete_to_coords(ring: RingId, nvars: usize, first: &LinearForm) -> Result<CoordChange> {
    let mut rows = vec![first.coeffs().to_vec()];
    for j in 0..nvars {
        if rows.len() == nvars {
            break;
        }
        let mut e = vec![RingElem::zero(ring); nvars];
        e[j] = RingElem::one(ring);
        let mut trial = rows.clone();
        trial.push(e.clone());
        if linalg::rank(trial, nvars) > rows.len() {
            rows.push(e);
        }
    }
    CoordChange::new(ring, nvars, rows)
}

/// Normalize the kernel generator of D = (unit) * jacobian(X, P) to
/// Y^{d+2} + X q(X,Y,Z), following the constructive proof: reduce mod
/// the kernel form, take the two-variable linear data, change
/// coordinates, extract the unit and strip the X^{d+2} monomial.
pub fn normalize_sa(d: &Derivation, x_form: &LinearForm, p: &Poly, bound: usize) -> Result<SaForm> {
    if d.nvars() != 3 {
        return Err(Error::DimensionError(d.nvars()));
    }
    let ring = d.ring_id();
    let w = WeightVec::standard();
    let degree = d
        .homogeneity_degree(&w)
        .ok_or_else(|| Error::NotHomogeneous("derivation images".into()))?;
    if degree < 0 {
        return Err(Error::Invalid("homogeneity degree is negative".into()));
    }
    let x_poly = x_form.to_poly(3);
    if !d.apply(&x_poly)?.is_zero() {
        return Err(Error::NotInKernel(x_form.render(&["v0", "v1", "v2"])));
    }
    match p.is_homogeneous(&w) {
        Some(dp) if dp == degree + 2 => {}
        _ => {
            return Err(Error::NotHomogeneous(
                "kernel generator must be homogeneous of degree d + 2".into(),
            ))
        }
    }
    // Coordinates with the kernel form first.
    let c1 = complete_to_coords(ring, 3, x_form)?;
    let d1 = d.conjugate(&c1)?;
    let p1 = c1.to_new_coords(p)?;
    // Two-variable data modulo the kernel variable.
    let dbar = reduce_mod_var(&d1, 0)?;
    let (v1, v2) = rentschler_data(&dbar, degree)?;
    let lift = |f: &LinearForm| {
        LinearForm::new(
            ring,
            vec![
                RingElem::zero(ring),
                f.coeffs()[0].clone(),
                f.coeffs()[1].clone(),
            ],
        )
    };
    let e0 = LinearForm::new(
        ring,
        vec![
            RingElem::one(ring),
            RingElem::zero(ring),
            RingElem::zero(ring),
        ],
    );
    let c2 = CoordChange::from_forms(ring, &[e0, lift(&v1), lift(&v2)])?;
    let d2 = d1.conjugate(&c2)?;
    let p2 = c2.to_new_coords(&p1)?;
    // The X-free part must be a unit multiple of Y^{d+2}.
    let x_free = p2.coeff_of_power(0, 0);
    let expected_exp = ExpVec::from_slice(&[0, (degree + 2) as u16, 0]);
    let gamma = match x_free.leading() {
        Some((e, c)) if *e == expected_exp && x_free.num_terms() == 1 => c.clone(),
        _ => {
            return Err(Error::ShapeViolation(format!(
                "part without the kernel variable is {} rather than a unit multiple of Y^{}",
                x_free.render(&["X", "Y", "Z"]),
                degree + 2
            )))
        }
    };
    let gamma_inv = gamma.inverse().ok_or_else(|| {
        Error::ShapeViolation("leading part is not a unit multiple of Y^{d+2}".into())
    })?;
    let mut p3 = p2.scale(&gamma_inv);
    // Strip the X^{d+2} monomial; it changes neither the kernel nor the
    // derivation.
    let strip_exp = ExpVec::from_slice(&[(degree + 2) as u16, 0, 0]);
    let r = p3.coeff(&strip_exp);
    let stripped = if r.is_zero() {
        None
    } else {
        p3 = p3.sub(&Poly::monomial(ring, 3, strip_exp, r.clone()))?;
        Some(r)
    };
    // Shape: every remaining term except Y^{d+2} is divisible by X.
    for (e, _) in p3.terms() {
        if e.get(0) == 0 && *e != expected_exp {
            return Err(Error::ShapeViolation(format!(
                "term with exponents ({}, {}, {}) escapes the X-multiple part",
                e.get(0),
                e.get(1),
                e.get(2)
            )));
        }
    }
    // The derivation must be a unit multiple of the Jacobian derivation
    // of (X, p3).
    let x_new = Poly::var(ring, 3, 0);
    let jac = Derivation::jacobian(&x_new, &p3)?;
    let gamma_d = unit_ratio(&d2, &jac)?;
    // Degree ordering: deg_D(Y) strictly below deg_D(Z), checked without
    // computing the larger degree in full.
    let y_new = Poly::var(ring, 3, 1);
    let z_new = Poly::var(ring, 3, 2);
    let deg_y = d2.deg_d(&y_new, bound)?;
    if deg_y == 0 {
        return Err(Error::ShapeViolation(
            "second coordinate landed in the kernel".into(),
        ));
    }
    let mut z_iter = z_new.clone();
    for _ in 0..=deg_y {
        z_iter = d2.apply(&z_iter)?;
    }
    if z_iter.is_zero() {
        return Err(Error::ShapeViolation(
            "deg_D(Z) does not exceed deg_D(Y)".into(),
        ));
    }
    let coords = c1.then(&c2)?;
    let forms = coords.new_forms();
    Ok(SaForm {
        coords,
        forms,
        p: p3,
        gamma,
        gamma_d,
        stripped,
        d: degree,
        derivation: d2,
        deg_y,
    })
}

/// The unit u with lhs = u * rhs, comparing images; errors when no such
/// unit exists.
fn unit_ratio(lhs: &Derivation, rhs: &Derivation) -> Result<RingElem> {
    let mut ratio: Option<RingElem> = None;
    for i in 0..lhs.nvars() {
        let (a, b) = (lhs.image(i), rhs.image(i));
        match (a.is_zero(), b.is_zero()) {
            (true, true) => continue,
            (false, false) => {
                let q = a.exact_divide(b).map_err(|_| {
                    Error::ShapeViolation(
                        "derivation is not a unit multiple of the Jacobian derivation".into(),
                    )
                })?;
                let u = q.as_ring_elem().ok_or_else(|| {
                    Error::ShapeViolation("image ratio is not a ring constant".into())
                })?;
                match &ratio {
                    None => {
                        if !u.is_unit() {
                            return Err(Error::ShapeViolation("image ratio is not a unit".into()));
                        }
                        ratio = Some(u);
                    }
                    Some(prev) if *prev != u => {
                        return Err(Error::ShapeViolation(
                            "images scale by different factors".into(),
                        ))
                    }
                    _ => {}
                }
            }
            _ => {
                return Err(Error::ShapeViolation(
                    "image vanishing patterns disagree".into(),
                ))
            }
        }
    }
    ratio.ok_or_else(|| Error::ShapeViolation("both derivations are zero".into()))
}

/// Read off the coefficient pattern of a normalized generator.
pub fn shape_sb(p: &Poly, d: i64) -> Result<SbShape> {
    let ring = p.ring_id();
    let w = WeightVec::standard();
    if p.is_homogeneous(&w) != Some(d + 2) {
        return Err(Error::ShapeViolation(format!(
            "polynomial is not homogeneous of degree {}",
            d + 2
        )));
    }
    let names = ["X", "Y", "Z"];
    let y_exp = ExpVec::from_slice(&[0, (d + 2) as u16, 0]);
    if !p.coeff(&y_exp).is_one() {
        return Err(Error::ShapeViolation(format!(
            "Y^{} coefficient is {} rather than 1",
            d + 2,
            p.coeff(&y_exp).render()
        )));
    }
    let e = p.degree_in(2).unwrap_or(0) as i64;
    if e == 0 {
        return Err(Error::ShapeViolation("generator does not involve Z".into()));
    }
    let i = d - e;
    if i < -1 {
        return Err(Error::ShapeViolation(format!(
            "Z-degree {} exceeds d + 1 = {}",
            e,
            d + 1
        )));
    }
    if (d + 2) % e != 0 {
        return Err(Error::ShapeViolation(format!(
            "top Z-degree {} does not divide {}",
            e,
            d + 2
        )));
    }
    // Top Z coefficient must be a unit multiple of X^{i+2}.
    let top = p.coeff_of_power(2, e as u16);
    let top_exp = ExpVec::from_slice(&[(i + 2) as u16, 0, 0]);
    let beta = match top.leading() {
        Some((te, c)) if *te == top_exp && top.num_terms() == 1 => c.clone(),
        _ => {
            return Err(Error::ShapeViolation(format!(
                "coefficient of Z^{} is {} rather than beta*X^{}",
                e,
                top.render(&names),
                i + 2
            )))
        }
    };
    if !beta.is_unit() {
        return Err(Error::ShapeViolation(
            "top coefficient is not a unit".into(),
        ));
    }
    let x = Poly::var(ring, 3, 0);
    let y = Poly::var(ring, 3, 1);
    let mut f = Vec::new();
    for m in (0..e).rev() {
        let j = (d + 1 - m) as usize;
        let mut coeff = p.coeff_of_power(2, m as u16);
        if m == 0 {
            coeff = coeff.sub(&y.pow((d + 2) as u32)?)?;
        }
        let fj = coeff.exact_divide(&x).map_err(|_| {
            Error::ShapeViolation(format!(
                "coefficient of Z^{} is not divisible by X: {}",
                m,
                coeff.render(&names)
            ))
        })?;
        if !fj.is_free_of(2) {
            return Err(Error::ShapeViolation(format!("f_{} involves Z", j)));
        }
        if !fj.is_zero() && fj.is_homogeneous(&w) != Some(j as i64) {
            return Err(Error::ShapeViolation(format!(
                "f_{} is not homogeneous of degree {}",
                j, j
            )));
        }
        f.push((j, fj));
    }
    Ok(SbShape { d, i, beta, f })
}

/// Decide triangularizability: after normalization the generator is
/// linear in Z exactly when the derivation is triangularizable, and
/// then deg_D(Y) = 1 and deg_D(Z) = d + 2.
pub fn triangular_test(
    d: &Derivation,
    x_form: &LinearForm,
    p: &Poly,
    bound: usize,
) -> Result<TriangularReport> {
    if d.ring_id() != RingId::Circle && !d.is_irreducible()? {
        return Err(Error::ShapeViolation(
            "derivation is not irreducible".into(),
        ));
    }
    let sa = normalize_sa(d, x_form, p, bound)?;
    let sb = shape_sb(&sa.p, sa.d)?;
    let triangular = sb.z_degree() == 1;
    let images = sa.derivation.images().to_vec();
    let mut deg_y = None;
    let mut deg_z = None;
    if triangular {
        if !(images[0].is_zero()
            && images[1].is_free_of(1)
            && images[1].is_free_of(2)
            && images[2].is_free_of(2))
        {
            return Err(Error::ShapeViolation(
                "images fail the triangular containments".into(),
            ));
        }
        let y = Poly::var(d.ring_id(), 3, 1);
        let z = Poly::var(d.ring_id(), 3, 2);
        deg_y = Some(sa.derivation.deg_d(&y, bound)?);
        deg_z = Some(sa.derivation.deg_d(&z, bound)?);
    }
    Ok(TriangularReport {
        sa,
        sb,
        triangular,
        images,
        deg_y,
        deg_z,
    })
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Rewrite p as a polynomial in z_tilde = h + X^{q-1} Z: coefficients
/// by descending Z-degree, each level divided exactly by the matching
/// power of X^{q-1}.
pub fn rewrite_in_slice(p: &Poly, z_tilde: &Poly, q: u32) -> Result<Vec<Poly>> {
    let ring = p.ring_id();
    let x = Poly::var(ring, 3, 0);
    let mut rem = p.clone();
    let top = p.degree_in(2).unwrap_or(0) as usize;
    let mut coeffs = vec![Poly::zero(ring, 3); top + 1];
    let mut powers = vec![Poly::from_i64(ring, 3, 1)];
    while powers.len() <= top {
        let next = powers.last().unwrap().mul(z_tilde)?;
        powers.push(next);
    }
    loop {
        if rem.is_zero() {
            break;
        }
        let e = rem.degree_in(2).unwrap() as usize;
        if e == 0 {
            coeffs[0] = coeffs[0].add(&rem)?;
            break;
        }
        let a = rem.coeff_of_power(2, e as u16);
        let x_power = x.pow(((q - 1) as usize * e) as u32)?;
        let c = a
            .exact_divide(&x_power)
            .map_err(|_| Error::RewriteNonExact { level: e })?;
        rem = rem.sub(&c.mul(&powers[e])?)?;
        coeffs[e] = coeffs[e].add(&c)?;
    }
    Ok(coeffs)
}

/// Assemble the slice normal form from its data.
pub fn assemble_slice_form(ring: RingId, h: &Poly, c: &[RingElem], p: u32, q: u32) -> Result<Poly> {
    let x = Poly::var(ring, 3, 0);
    let y = Poly::var(ring, 3, 1);
    let z = Poly::var(ring, 3, 2);
    let z_tilde = h.add(&x.pow(q - 1)?.mul(&z)?)?;
    let mut out = z_tilde.pow(p)?;
    for (idx, cj) in c.iter().enumerate() {
        let j = (idx + 1) as u32;
        if cj.is_zero() {
            continue;
        }
        let term = if j < p {
            x.pow(j * q)?.mul(&z_tilde.pow(p - j)?)?
        } else {
            x.pow(p * q - 1)?.mul(&y)?
        };
        out = out.add(&term.scale(cj))?;
    }
    Ok(out)
}

/// The triangular generator Y^{d+2} + X f_{d+1}(X,Y) + beta X^{d+1} Z.
pub fn assemble_triangular_form(
    ring: RingId,
    d: i64,
    f_top: &Poly,
    beta: &RingElem,
) -> Result<Poly> {
    let x = Poly::var(ring, 3, 0);
    let y = Poly::var(ring, 3, 1);
    let z = Poly::var(ring, 3, 2);
    y.pow((d + 2) as u32)?
        .add(&x.mul(f_top)?)?
        .add(&x.pow((d + 1) as u32)?.mul(&z)?.scale(beta))
}

/// Reduce a non-triangularizable generator of degree pq - 2 to the
/// slice normal form by successive gradings; tries (p, q) and then the
/// swapped order.
pub fn ntr_normal_form(
    d: &Derivation,
    x_form: &LinearForm,
    p: &Poly,
    pp: u32,
    qq: u32,
    bound: usize,
) -> Result<NtrReport> {
    if !is_prime(pp) || !is_prime(qq) {
        return Err(Error::Invalid(format!(
            "{} and {} must both be prime",
            pp, qq
        )));
    }
    match ntr_attempt(d, x_form, p, pp, qq, bound) {
        Ok(mut report) => {
            report.swapped = false;
            Ok(report)
        }
        Err(first_err) => {
            if pp == qq {
                return Err(first_err);
            }
            match ntr_attempt(d, x_form, p, qq, pp, bound) {
                Ok(mut report) => {
                    report.swapped = true;
                    Ok(report)
                }
                Err(_) => Err(first_err),
            }
        }
    }
}

fn ntr_attempt(
    d: &Derivation,
    x_form: &LinearForm,
    p: &Poly,
    pp: u32,
    qq: u32,
    bound: usize,
) -> Result<NtrReport> {
    let sa = normalize_sa(d, x_form, p, bound)?;
    if sa.d != (pp * qq) as i64 - 2 {
        return Err(Error::Invalid(format!(
            "homogeneity degree {} does not match pq - 2 = {}",
            sa.d,
            pp * qq - 2
        )));
    }
    let sb = shape_sb(&sa.p, sa.d)?;
    if sb.z_degree() == 1 {
        return Err(Error::ShapeViolation(
            "generator is linear in Z, the derivation is triangularizable".into(),
        ));
    }
    let ring = d.ring_id();
    let names = ["X", "Y", "Z"];
    // Stage one: top part under weights (0, 1, q) must be the p-th power
    // of Y^q + alpha X^{q-1} Z.
    let w1 = WeightVec::new(&[0, 1, qq as i64]);
    let top = sa.p.top_part(&w1);
    let mut rho = top.nth_root(pp).ok_or(Error::NotAPthPower { n: pp })?;
    let yq_exp = ExpVec::from_slice(&[0, qq as u16, 0]);
    let xz_exp = ExpVec::from_slice(&[(qq - 1) as u16, 0, 1]);
    if rho.coeff(&yq_exp).neg().is_one() && pp % 2 == 0 {
        rho = rho.neg();
    }
    if !rho.coeff(&yq_exp).is_one() || rho.num_terms() != 2 {
        return Err(Error::ShapeViolation(format!(
            "root of the top part is {} rather than Y^{} + alpha X^{} Z",
            rho.render(&names),
            qq,
            qq - 1
        )));
    }
    let alpha = rho.coeff(&xz_exp);
    if alpha.is_zero() {
        return Err(Error::ShapeViolation(
            "top-part root does not involve Z".into(),
        ));
    }
    // Rescale Z so the root is monic there too.
    let rescale = CoordChange::new(
        ring,
        3,
        vec![
            vec![
                RingElem::one(ring),
                RingElem::zero(ring),
                RingElem::zero(ring),
            ],
            vec![
                RingElem::zero(ring),
                RingElem::one(ring),
                RingElem::zero(ring),
            ],
            vec![RingElem::zero(ring), RingElem::zero(ring), alpha],
        ],
    )?;
    let derivation = sa.derivation.conjugate(&rescale)?;
    let p_final = rescale.to_new_coords(&sa.p)?;
    // The rescale changes the unit between the derivation and the
    // Jacobian derivation of the generator; recompute it.
    let x_new = Poly::var(ring, 3, 0);
    let gamma_d = unit_ratio(&derivation, &Derivation::jacobian(&x_new, &p_final)?)?;
    let x = Poly::var(ring, 3, 0);
    let y = Poly::var(ring, 3, 1);
    let z = Poly::var(ring, 3, 2);
    let mut h = y.pow(qq)?;
    let xq1z = x.pow(qq - 1)?.mul(&z)?;
    let mut z_tilde = h.add(&xq1z)?;
    let mut prev_trailing_deg = u16::MAX;
    for _round in 0..=qq {
        let coeffs = rewrite_in_slice(&p_final, &z_tilde, qq)?;
        if coeffs.len() != pp as usize + 1
            || !coeffs[pp as usize]
                .as_ring_elem()
                .map_or(false, |e| e.is_one())
        {
            return Err(Error::ShapeViolation(
                "generator is not monic of the right degree in the slice candidate".into(),
            ));
        }
        let trailing = &coeffs[0];
        let dy = match trailing.degree_in(1) {
            Some(k) => k,
            None => {
                return Err(Error::ShapeViolation(
                    "trailing coefficient vanishes; the Y-term slot is empty".into(),
                ))
            }
        };
        if dy == 1 {
            // Final shape: middle coefficients are pure powers of X,
            // trailing is c_p X^{pq-1} Y with c_p nonzero.
            let mut c = Vec::with_capacity(pp as usize);
            for j in 1..pp {
                let bj = &coeffs[(pp - j) as usize];
                if bj.is_zero() {
                    c.push(RingElem::zero(ring));
                    continue;
                }
                let expect = ExpVec::from_slice(&[(j * qq) as u16, 0, 0]);
                match bj.leading() {
                    Some((e, coeff)) if *e == expect && bj.num_terms() == 1 => {
                        c.push(coeff.clone())
                    }
                    _ => {
                        return Err(Error::ShapeViolation(format!(
                            "coefficient of the {}-th slice power is {} rather than c*X^{}",
                            pp - j,
                            bj.render(&names),
                            j * qq
                        )))
                    }
                }
            }
            let expect = ExpVec::from_slice(&[(pp * qq - 1) as u16, 1, 0]);
            let cp = match trailing.leading() {
                Some((e, coeff)) if *e == expect && trailing.num_terms() == 1 => coeff.clone(),
                _ => {
                    return Err(Error::ShapeViolation(format!(
                        "trailing coefficient is {} rather than c_p X^{} Y",
                        trailing.render(&names),
                        pp * qq - 1
                    )))
                }
            };
            if cp.is_zero() {
                return Err(Error::ShapeViolation("c_p vanishes".into()));
            }
            c.push(cp);
            // Round-trip the assembled form before reporting it.
            let rebuilt = assemble_slice_form(ring, &h, &c, pp, qq)?;
            if rebuilt != p_final {
                return Err(Error::ShapeViolation(
                    "reassembled slice form differs from the generator".into(),
                ));
            }
            return Ok(NtrReport {
                p: pp,
                q: qq,
                swapped: false,
                coords: sa.coords.then(&rescale)?,
                p_final,
                h,
                c,
                z_tilde,
                gamma: sa.gamma.clone(),
                gamma_d,
                derivation,
            });
        }
        if dy >= prev_trailing_deg {
            return Err(Error::NonTermination(qq as usize));
        }
        prev_trailing_deg = dy;
        if dy as u32 % pp != 0 {
            return Err(Error::ShapeViolation(format!(
                "trailing Y-degree {} is neither 1 nor a multiple of {}",
                dy, pp
            )));
        }
        let r = dy as i64 / pp as i64;
        // Abstract polynomial in (X, Y, W) with W standing for the
        // current slice candidate.
        let mut p_abs = Poly::zero(ring, 3);
        for (j, cj) in coeffs.iter().enumerate() {
            p_abs = p_abs.add(&cj.mul(&z.pow(j as u32)?)?)?;
        }
        let w2 = WeightVec::new(&[0, 1, r]);
        let top = p_abs.top_part(&w2);
        let mut rho = top.nth_root(pp).ok_or(Error::NotAPthPower { n: pp })?;
        let w_coeff = rho.coeff_of_power(2, 1);
        if w_coeff.as_ring_elem().map_or(false, |e| e.neg().is_one()) && pp % 2 == 0 {
            rho = rho.neg();
        }
        let good_shape = rho.degree_in(2) == Some(1)
            && rho
                .coeff_of_power(2, 1)
                .as_ring_elem()
                .map_or(false, |e| e.is_one());
        if !good_shape {
            return Err(Error::ShapeViolation(format!(
                "graded root {} is not monic linear in the slice candidate",
                rho.render(&names)
            )));
        }
        let mu = rho.coeff_of_power(2, 0);
        if !mu.is_free_of(2) {
            return Err(Error::ShapeViolation("slice correction involves Z".into()));
        }
        h = h.add(&mu)?;
        z_tilde = z_tilde.add(&mu)?;
    }
    Err(Error::NonTermination(qq as usize))
}

/// Newton polygon of f in the chosen variable pair.
pub fn newton_polygon(f: &Poly, vars: (usize, usize)) -> NewtonPolygon {
    let points: Vec<(i64, i64)> = f.support_points(vars).into_iter().collect();
    let vertices = convex_hull(&points);
    NewtonPolygon { points, vertices }
}

/// Monotone-chain convex hull, counterclockwise, collinear points
/// dropped.
fn convex_hull(sorted_points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let pts = sorted_points;
    if pts.len() <= 2 {
        return pts.to_vec();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Test for a triangle with vertices (0,0), (m,0), (0,n) and m | n or
/// n | m; support on a single axis or a point passes as degenerate.
pub fn np_check(polygon: &NewtonPolygon) -> NpCheck {
    let v = &polygon.vertices;
    let fail = NpCheck {
        triangle: false,
        m: 0,
        n: 0,
        divides: false,
        degenerate: false,
        pass: false,
    };
    match v.len() {
        1 => NpCheck {
            triangle: false,
            m: 0,
            n: 0,
            divides: true,
            degenerate: true,
            pass: v[0] == (0, 0),
        },
        2 => {
            let other = if v[0] == (0, 0) { v[1] } else { v[0] };
            if !v.contains(&(0, 0)) {
                return fail;
            }
            if other.1 == 0 {
                NpCheck {
                    triangle: false,
                    m: other.0,
                    n: 0,
                    divides: true,
                    degenerate: true,
                    pass: true,
                }
            } else if other.0 == 0 {
                NpCheck {
                    triangle: false,
                    m: 0,
                    n: other.1,
                    divides: true,
                    degenerate: true,
                    pass: true,
                }
            } else {
                fail
            }
        }
        3 => {
            if !v.contains(&(0, 0)) {
                return fail;
            }
            let mut m = None;
            let mut n = None;
            for &p in v {
                if p == (0, 0) {
                    continue;
                }
                if p.1 == 0 && p.0 > 0 {
                    m = Some(p.0);
                } else if p.0 == 0 && p.1 > 0 {
                    n = Some(p.1);
                }
            }
            match (m, n) {
                (Some(m), Some(n)) => {
                    let divides = m % n == 0 || n % m == 0;
                    NpCheck {
                        triangle: true,
                        m,
                        n,
                        divides,
                        degenerate: false,
                        pass: divides,
                    }
                }
                _ => fail,
            }
        }
        _ => fail,
    }
}

/// Formal antiderivative in one variable.
fn integrate(f: &Poly, var: usize) -> Poly {
    let ring = f.ring_id();
    let mut out = Poly::zero(ring, f.nvars());
    for (e, c) in f.terms() {
        let k = e.get(var);
        let ne = e.with(var, k + 1);
        let scaled = c.scale(&crate::ring::rat_frac(1, (k + 1) as i64));
        out = out
            .add(&Poly::monomial(ring, f.nvars(), ne, scaled))
            .expect("same ring");
    }
    out
}

/// Recover P with D = jacobian(X_v, P) from the images, up to monomials
/// in the kernel variable; errors when D is not such a Jacobian
/// derivation.
pub fn reconstruct_generator(d: &Derivation, var: usize) -> Result<Poly> {
    if d.nvars() != 3 {
        return Err(Error::DimensionError(d.nvars()));
    }
    if !d.image(var).is_zero() {
        return Err(Error::NotInKernel(format!("variable index {}", var)));
    }
    // Cyclic successors (v, a, b): D(a) = -P_b and D(b) = P_a.
    let a = (var + 1) % 3;
    let b = (var + 2) % 3;
    let p0 = integrate(d.image(b), a);
    let residue = d.image(a).neg().sub(&p0.partial(b))?;
    if !residue.is_free_of(a) {
        return Err(Error::Invalid(
            "derivation is not the Jacobian of a pair (X, P)".into(),
        ));
    }
    let p = p0.add(&integrate(&residue, b))?;
    let x_poly = Poly::var(d.ring_id(), 3, var);
    let check = Derivation::jacobian(&x_poly, &p)?;
    if &check != d {
        return Err(Error::Invalid(
            "derivation is not the Jacobian of a pair (X, P)".into(),
        ));
    }
    Ok(p)
}
