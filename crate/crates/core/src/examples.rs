//! Worked constructions over Q[t] and the circle ring, with verifiers
//! that replay every stated identity through the library's own
//! operations and collect the outcomes in a report.

use serde::Serialize;

use crate::derivation::{Derivation, LinearForm, RowCertificate};
use crate::error::{Error, Result};
use crate::normal_form::{
    assemble_slice_form, assemble_triangular_form, ntr_normal_form, rewrite_in_slice,
    triangular_test, NtrReport,
};
use crate::poly::{ExpVec, Poly, WeightVec};
use crate::ring::{RingElem, RingId};

/// One named check with a printable witness.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

/// Checks for one instance; `notes` carries facts cited from the source
/// construction that the artifact does not re-verify.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>) -> Self {
        VerificationReport {
            instance: instance.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness: witness.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

// ---------------------------------------------------------------------------
// Degree-4 construction over Q[t]
// ---------------------------------------------------------------------------

/// The degree-4 derivation on Q[t][x,y,z] whose kernel needs three
/// generators F, G, H over Q[t].
pub struct Example1 {
    pub derivation: Derivation,
    pub f: Poly,
    pub g: Poly,
    pub p: Poly,
    pub h: Poly,
    pub f1: Poly,
    pub g1: Poly,
}

pub fn build_example1() -> Example1 {
    let ring = RingId::PolyT;
    let x = Poly::var(ring, 3, 0);
    let y = Poly::var(ring, 3, 1);
    let z = Poly::var(ring, 3, 2);
    let t = Poly::constant(ring, 3, RingElem::symbol(ring, "t").unwrap());
    let m = |a: &Poly, b: &Poly| a.mul(b).unwrap();
    let add = |a: &Poly, b: &Poly| a.add(b).unwrap();
    let sub = |a: &Poly, b: &Poly| a.sub(b).unwrap();
    let pw = |a: &Poly, n: u32| a.pow(n).unwrap();
    let scale = |a: &Poly, n: i64| a.scale_rat(&crate::ring::rat(n));

    let tz_x = add(&m(&t, &z), &x);
    // F = x(tz + x) - t^2 y^2
    let f = sub(&m(&x, &tz_x), &m(&pw(&t, 2), &pw(&y, 2)));
    // G = (tz + x) F^2 + 2 t x^2 y F + x^5
    let g = add(
        &add(
            &m(&tz_x, &pw(&f, 2)),
            &scale(&m(&m(&m(&t, &pw(&x, 2)), &y), &f), 2),
        ),
        &pw(&x, 5),
    );
    // P = t y F + x^3
    let p = add(&m(&m(&t, &y), &f), &pw(&x, 3));
    // F1 = x z - t y^2
    let f1 = sub(&m(&x, &z), &m(&t, &pw(&y, 2)));
    // G1 = x^4 z + 2 t x^2 F1 z + t^2 F1^2 z + 2 x^3 F1 + t x F1^2 + 2 x^2 y F
    let g1 = {
        let a = m(&pw(&x, 4), &z);
        let b = scale(&m(&m(&m(&t, &pw(&x, 2)), &f1), &z), 2);
        let c = m(&m(&pw(&t, 2), &pw(&f1, 2)), &z);
        let d = scale(&m(&pw(&x, 3), &f1), 2);
        let e = m(&m(&t, &x), &pw(&f1, 2));
        let ff = scale(&m(&m(&pw(&x, 2), &y), &f), 2);
        add(&add(&add(&add(&add(&a, &b), &c), &d), &e), &ff)
    };
    // H = 4 x^5 G1 + t G1^2 - 20 x^8 F1 - 40 t x^6 F1^2 - 40 t^2 x^4 F1^3
    //     - 20 t^3 x^2 F1^4 - 4 t^4 F1^5
    let h = {
        let a = scale(&m(&pw(&x, 5), &g1), 4);
        let b = m(&t, &pw(&g1, 2));
        let c = scale(&m(&pw(&x, 8), &f1), -20);
        let d = scale(&m(&m(&t, &pw(&x, 6)), &pw(&f1, 2)), -40);
        let e = scale(&m(&m(&pw(&t, 2), &pw(&x, 4)), &pw(&f1, 3)), -40);
        let ff = scale(&m(&m(&pw(&t, 3), &pw(&x, 2)), &pw(&f1, 4)), -20);
        let gg = scale(&m(&pw(&t, 4), &pw(&f1, 5)), -4);
        add(&add(&add(&add(&add(&add(&a, &b), &c), &d), &e), &ff), &gg)
    };
    // Dx = -2 t^2 F P, Dy = t (6 x^2 P - G), Dz = 2 x (5 t^2 y P + t F^2) + 2 t F P
    let dx = scale(&m(&m(&pw(&t, 2), &f), &p), -2);
    let dy = m(&t, &sub(&scale(&m(&pw(&x, 2), &p), 6), &g));
    let dz = add(
        &scale(
            &m(
                &x,
                &add(&scale(&m(&m(&pw(&t, 2), &y), &p), 5), &m(&t, &pw(&f, 2))),
            ),
            2,
        ),
        &scale(&m(&m(&t, &f), &p), 2),
    );
    let derivation = Derivation::new(ring, 3, vec![dx, dy, dz]).unwrap();
    Example1 {
        derivation,
        f,
        g,
        p,
        h,
        f1,
        g1,
    }
}

/// Reduce a Q[t]-polynomial modulo t.
fn mod_t(f: &Poly) -> Poly {
    let ring = f.ring_id();
    let mut out = Poly::zero(ring, f.nvars());
    for (e, c) in f.terms() {
        if let RingElem::PolyT(u) = c {
            let c0 = u.coeff(0);
            out = out
                .add(&Poly::monomial(
                    ring,
                    f.nvars(),
                    *e,
                    RingElem::from_rat(ring, c0),
                ))
                .unwrap();
        }
    }
    out
}

/// Is lhs a constant multiple of rhs?
fn constant_multiple(lhs: &Poly, rhs: &Poly) -> bool {
    if rhs.is_zero() {
        return lhs.is_zero();
    }
    match lhs.exact_divide(rhs) {
        Ok(q) => q.as_ring_elem().is_some(),
        Err(_) => false,
    }
}

pub fn verify_example1(bound: usize) -> VerificationReport {
    let names = ["x", "y", "z"];
    let ex = build_example1();
    let d = &ex.derivation;
    let mut report = VerificationReport::new("example-1");

    let t2y2 = ExpVec::from_slice(&[0, 2, 0]);
    let coeff = ex.f.coeff(&t2y2);
    let expect = RingElem::symbol(RingId::PolyT, "t").unwrap().pow(2).neg();
    report.check(
        "F contains the -t^2 y^2 term",
        coeff == expect,
        coeff.render(),
    );

    let cert = d.certify_nilpotent(bound);
    report.check(
        "nilpotence orders (x, y, z) = (3, 7, 11)",
        cert.certified && cert.orders == vec![Some(3), Some(7), Some(11)],
        format!("{:?}", cert.orders),
    );

    for (name, poly) in [("F", &ex.f), ("G", &ex.g), ("H", &ex.h)] {
        let image = d.apply(poly).unwrap();
        report.check(
            format!("D({}) = 0", name),
            image.is_zero(),
            image.render(&names),
        );
    }

    // G^2 - 4F^5 = tH exactly.
    let t = Poly::constant(
        RingId::PolyT,
        3,
        RingElem::symbol(RingId::PolyT, "t").unwrap(),
    );
    let lhs =
        ex.g.pow(2)
            .unwrap()
            .sub(&ex.f.pow(5).unwrap().scale_rat(&crate::ring::rat(4)))
            .unwrap()
            .sub(&t.mul(&ex.h).unwrap())
            .unwrap();
    report.check("G^2 - 4F^5 - tH = 0", lhs.is_zero(), lhs.render(&names));

    let w = WeightVec::standard();
    let degree = d.homogeneity_degree(&w);
    report.check(
        "homogeneous of degree 4",
        degree == Some(4),
        format!("{:?}", degree),
    );

    match crate::derivation::kernel_type(&ex.f, &ex.g, &w) {
        Ok(kt) => report.check(
            "kernel generators have type (2, 5)",
            (kt.p, kt.q, kt.d) == (2, 5, 4),
            format!("({}, {}, {})", kt.p, kt.q, kt.d),
        ),
        Err(e) => report.check("kernel generators have type (2, 5)", false, e.to_string()),
    }

    // No identity G^2 = c F^b mod t for the smaller exponents b = 3, 4.
    let g2_mod = mod_t(&ex.g.pow(2).unwrap());
    for b in [3u32, 4] {
        let fb_mod = mod_t(&ex.f.pow(b).unwrap());
        report.check(
            format!("no relation G^2 = c*F^{} modulo t", b),
            !constant_multiple(&g2_mod, &fb_mod),
            format!("G^2 mod t = {}", g2_mod.render(&names)),
        );
    }

    report.note("kernel completeness (the kernel equals Q[t][F, G, H]) is cited, not re-verified");
    report.note(
        "rank(D) = 3 exactly is cited, not re-verified; the filtration reports evidence only",
    );
    report
}

// ---------------------------------------------------------------------------
// Circle-ring constructions
// ---------------------------------------------------------------------------

/// The rank-3 family over the circle ring: no kernel form is certified
/// as a variable.
pub struct Example2 {
    pub d: i64,
    pub derivation: Derivation,
    pub x1: Poly,
    pub x2: Poly,
    pub f: Poly,
    pub x1_form: LinearForm,
}

pub fn build_example2(d: i64) -> Example2 {
    let ring = RingId::Circle;
    let x = Poly::var(ring, 3, 0);
    let y = Poly::var(ring, 3, 1);
    let z = Poly::var(ring, 3, 2);
    let w1 = RingElem::symbol(ring, "w1").unwrap();
    let w2 = RingElem::symbol(ring, "w2").unwrap();
    let one = RingElem::one(ring);
    let one_minus_w2 = one.sub(&w2);
    let one_plus_w2 = one.add(&w2);
    // X1 = w1 X + (1 - w2) Y, X2 = (1 + w2) X + w1 Y.
    let x1 = x.scale(&w1).add(&y.scale(&one_minus_w2)).unwrap();
    let x2 = x.scale(&one_plus_w2).add(&y.scale(&w1)).unwrap();
    let x1_pow = x1.pow((d + 1) as u32).unwrap();
    let dx = x1_pow.scale(&one_minus_w2);
    let dy = x1_pow.scale(&w1).neg();
    let dz = y
        .pow((d + 1) as u32)
        .unwrap()
        .scale(&w1)
        .scale_rat(&crate::ring::rat(d + 2));
    let derivation = Derivation::new(ring, 3, vec![dx, dy, dz]).unwrap();
    // F = Y^{d+2} + X1^{d+1} Z.
    let f = y
        .pow((d + 2) as u32)
        .unwrap()
        .add(&x1_pow.mul(&z).unwrap())
        .unwrap();
    let x1_form = LinearForm::new(ring, vec![w1, one_minus_w2, RingElem::zero(ring)]);
    Example2 {
        d,
        derivation,
        x1,
        x2,
        f,
        x1_form,
    }
}

pub fn verify_example2(d: i64, bound: usize) -> VerificationReport {
    let names = ["X", "Y", "Z"];
    let ex = build_example2(d);
    let der = &ex.derivation;
    let mut report = VerificationReport::new(format!("example-2(d={})", d));

    for (name, poly) in [("X1", &ex.x1), ("X2", &ex.x2), ("F", &ex.f)] {
        let image = der.apply(poly).unwrap();
        report.check(
            format!("D({}) = 0", name),
            image.is_zero(),
            image.render(&names),
        );
    }

    let w = WeightVec::standard();
    let degree = der.homogeneity_degree(&w);
    report.check(
        format!("homogeneous of degree {}", d),
        degree == Some(d),
        format!("{:?}", degree),
    );

    let x = Poly::var(RingId::Circle, 3, 0);
    let y = Poly::var(RingId::Circle, 3, 1);
    let z = Poly::var(RingId::Circle, 3, 2);
    let degs = (
        der.deg_d(&x, bound),
        der.deg_d(&y, bound),
        der.deg_d(&z, bound),
    );
    let expected = (Ok(1), Ok(1), Ok((d + 2) as usize));
    report.check(
        format!("deg_D(X) = deg_D(Y) = 1 and deg_D(Z) = {}", d + 2),
        degs == expected,
        format!("{:?}", degs),
    );

    match der.linear_filtration(bound) {
        Ok(filt) => {
            let jumps = filt.jumps();
            report.check(
                format!("filtration jumps at exactly {{0, 1, {}}}", d + 2),
                jumps == vec![0, 1, (d + 2) as usize],
                format!("{:?}", jumps),
            );
            let stratum0 = &filt.strata[0];
            let prop = stratum0.dim == 1 && stratum0.basis[0].proportional_to(&ex.x1_form);
            report.check(
                "kernel stratum is spanned by X1",
                prop,
                stratum0
                    .basis
                    .iter()
                    .map(|f| f.render(&names))
                    .collect::<Vec<_>>()
                    .join("; "),
            );
        }
        Err(e) => report.check("filtration computed", false, e.to_string()),
    }

    // Forms with strictly increasing deg_D exist, yet no kernel row is
    // certified as a variable over the circle ring.
    match der.strict_triple(bound) {
        Ok(Some(triple)) => report.check(
            "three forms with strictly increasing deg_D exist",
            triple.degrees == vec![0, 1, (d + 2) as usize],
            format!("{:?}", triple.degrees),
        ),
        Ok(None) => report.check(
            "three forms with strictly increasing deg_D exist",
            false,
            "none",
        ),
        Err(e) => report.check(
            "three forms with strictly increasing deg_D exist",
            false,
            e.to_string(),
        ),
    }
    match der.rank_upper(bound) {
        Ok(rank) => {
            report.check(
                "kernel row is left undecided over the circle ring",
                rank.certified.is_empty() && rank.undecided.len() == 1 && rank.rank_bound == 3,
                format!(
                    "bound {}, undecided rows: {}",
                    rank.rank_bound,
                    rank.undecided
                        .iter()
                        .map(|f| f.render(&names))
                        .collect::<Vec<_>>()
                        .join("; ")
                ),
            );
        }
        Err(e) => report.check("rank evidence computed", false, e.to_string()),
    }

    report.note(
        "neither X1 nor X2 is a variable (non-principal maximal ideals); cited, not re-verified",
    );
    report.note(
        "rank(D) = 3 exactly and the kernel not being a polynomial ring are cited, not re-verified",
    );
    report
}

/// The rank-2 family over the circle ring with X in the kernel.
pub struct Example3 {
    pub d: i64,
    pub derivation: Derivation,
    pub f1: Poly,
    pub f2: Poly,
}

pub fn build_example3(d: i64) -> Example3 {
    let ring = RingId::Circle;
    let x = Poly::var(ring, 3, 0);
    let y = Poly::var(ring, 3, 1);
    let z = Poly::var(ring, 3, 2);
    let w1 = RingElem::symbol(ring, "w1").unwrap();
    let w2 = RingElem::symbol(ring, "w2").unwrap();
    let one = RingElem::one(ring);
    let dy = x.pow((d + 1) as u32).unwrap().scale(&one.add(&w2));
    let dz = y
        .mul(&x.pow(d as u32).unwrap())
        .unwrap()
        .scale(&w1)
        .scale_rat(&crate::ring::rat(-2));
    let derivation = Derivation::new(ring, 3, vec![Poly::zero(ring, 3), dy, dz]).unwrap();
    // F1 = w1 Y^2 + (1 + w2) X Z, F2 = (1 - w2) Y^2 + w1 X Z.
    let y2 = y.pow(2).unwrap();
    let xz = x.mul(&z).unwrap();
    let f1 = y2.scale(&w1).add(&xz.scale(&one.add(&w2))).unwrap();
    let f2 = y2.scale(&one.sub(&w2)).add(&xz.scale(&w1)).unwrap();
    Example3 {
        d,
        derivation,
        f1,
        f2,
    }
}

pub fn verify_example3(d: i64, bound: usize) -> VerificationReport {
    let names = ["X", "Y", "Z"];
    let ex = build_example3(d);
    let der = &ex.derivation;
    let mut report = VerificationReport::new(format!("example-3(d={})", d));

    let x = Poly::var(RingId::Circle, 3, 0);
    for (name, poly) in [("X", &x), ("F1", &ex.f1), ("F2", &ex.f2)] {
        let image = der.apply(poly).unwrap();
        report.check(
            format!("D({}) = 0", name),
            image.is_zero(),
            image.render(&names),
        );
    }

    // Patch identity (1 - w2) F1 = w1 F2.
    let w1 = RingElem::symbol(RingId::Circle, "w1").unwrap();
    let w2 = RingElem::symbol(RingId::Circle, "w2").unwrap();
    let one = RingElem::one(RingId::Circle);
    let lhs = ex.f1.scale(&one.sub(&w2)).sub(&ex.f2.scale(&w1)).unwrap();
    report.check("(1 - w2) F1 - w1 F2 = 0", lhs.is_zero(), lhs.render(&names));

    let w = WeightVec::standard();
    let degree = der.homogeneity_degree(&w);
    report.check(
        format!("homogeneous of degree {}", d),
        degree == Some(d),
        format!("{:?}", degree),
    );

    match der.rank_upper(bound) {
        Ok(rank) => {
            let via_x = rank.certified.iter().any(|(form, cert)| {
                matches!(cert, RowCertificate::UnitCoefficient { index: 0 })
                    && form.first_nonzero() == 0
            });
            report.check(
                "rank bound 2 with witness variable X",
                rank.rank_bound == 2 && via_x,
                format!("bound {}", rank.rank_bound),
            );
        }
        Err(e) => report.check("rank bound 2 with witness variable X", false, e.to_string()),
    }

    report
        .note("the kernel not being a polynomial ring in two variables is cited, not re-verified");
    report
}

// ---------------------------------------------------------------------------
// Triangular and slice-form instances
// ---------------------------------------------------------------------------

/// A generator in the triangular shape Y^{d+2} + X f_{d+1} + beta X^{d+1} Z.
pub struct TrInstance {
    pub d: i64,
    pub poly: Poly,
    pub derivation: Derivation,
}

pub fn build_tr_instance(d: i64, f_top: &Poly, beta: &RingElem) -> Result<TrInstance> {
    if d < 0 {
        return Err(Error::Invalid("degree must be nonnegative".into()));
    }
    let ring = f_top.ring_id();
    if !beta.is_unit() {
        return Err(Error::ShapeViolation("beta must be a unit".into()));
    }
    if !f_top.is_zero() {
        if !f_top.is_free_of(2) {
            return Err(Error::ShapeViolation("f must not involve Z".into()));
        }
        if f_top.is_homogeneous(&WeightVec::standard()) != Some(d + 1) {
            return Err(Error::ShapeViolation(format!(
                "f must be homogeneous of degree {}",
                d + 1
            )));
        }
    }
    let poly = assemble_triangular_form(ring, d, f_top, beta)?;
    let x = Poly::var(ring, 3, 0);
    let derivation = Derivation::jacobian(&x, &poly)?;
    Ok(TrInstance {
        d,
        poly,
        derivation,
    })
}

fn x_kernel_form(ring: RingId) -> LinearForm {
    LinearForm::new(
        ring,
        vec![
            RingElem::one(ring),
            RingElem::zero(ring),
            RingElem::zero(ring),
        ],
    )
}

pub fn verify_tr_instance(inst: &TrInstance, bound: usize) -> VerificationReport {
    let names = ["X", "Y", "Z"];
    let mut report = VerificationReport::new(format!("triangular-instance(d={})", inst.d));
    let cert = inst.derivation.certify_nilpotent(bound);
    report.check(
        "locally nilpotent on the generators",
        cert.certified,
        format!("{:?}", cert.orders),
    );
    match triangular_test(
        &inst.derivation,
        &x_kernel_form(inst.poly.ring_id()),
        &inst.poly,
        bound,
    ) {
        Ok(rep) => {
            report.check(
                "classified triangular",
                rep.triangular,
                format!("Z-degree {}", rep.sb.z_degree()),
            );
            report.check(
                "deg_D(Y) = 1",
                rep.deg_y == Some(1),
                format!("{:?}", rep.deg_y),
            );
            report.check(
                format!("deg_D(Z) = {}", inst.d + 2),
                rep.deg_z == Some((inst.d + 2) as usize),
                format!("{:?}", rep.deg_z),
            );
            match rep.sb.reassemble(inst.poly.ring_id()) {
                Ok(back) => report.check(
                    "shape data reassembles the generator",
                    back == rep.sa.p,
                    back.render(&names),
                ),
                Err(e) => {
                    report.check("shape data reassembles the generator", false, e.to_string())
                }
            }
        }
        Err(e) => report.check("classified triangular", false, e.to_string()),
    }
    report
}

/// A generator in the slice normal form of the given prime pair.
pub struct NtrInstance {
    pub p: u32,
    pub q: u32,
    pub h: Poly,
    pub c: Vec<RingElem>,
    pub poly: Poly,
    pub derivation: Derivation,
}

pub fn build_ntr_instance(p: u32, q: u32, h: &Poly, c: &[RingElem]) -> Result<NtrInstance> {
    let ring = h.ring_id();
    if c.len() != p as usize {
        return Err(Error::Invalid(format!(
            "expected {} coefficients, got {}",
            p,
            c.len()
        )));
    }
    if c[p as usize - 1].is_zero() {
        return Err(Error::ShapeViolation("c_p must be nonzero".into()));
    }
    if !h.is_free_of(2) {
        return Err(Error::ShapeViolation("h must not involve Z".into()));
    }
    if h.is_homogeneous(&WeightVec::standard()) != Some(q as i64) {
        return Err(Error::ShapeViolation(format!(
            "h must be homogeneous of degree {}",
            q
        )));
    }
    let yq = ExpVec::from_slice(&[0, q as u16, 0]);
    if !h.coeff(&yq).is_one() {
        return Err(Error::ShapeViolation("h must be monic in Y".into()));
    }
    // The recovered datum always has corrections of positive Y-degree,
    // so a pure X^q monomial in h names a non-canonical representative
    // of the same generator.
    let xq = ExpVec::from_slice(&[q as u16, 0, 0]);
    if !h.coeff(&xq).is_zero() {
        return Err(Error::ShapeViolation(
            "h must not contain the pure X^q monomial; fold it into the coefficients".into(),
        ));
    }
    let poly = assemble_slice_form(ring, h, c, p, q)?;
    let x = Poly::var(ring, 3, 0);
    let derivation = Derivation::jacobian(&x, &poly)?;
    Ok(NtrInstance {
        p,
        q,
        h: h.clone(),
        c: c.to_vec(),
        poly,
        derivation,
    })
}

/// deg_D of Y and Z computed in the three-variable model where the
/// slice candidate is an independent variable. The model is certified
/// against the original derivation by exact identities: the rewrites of
/// D(Y) and D(Z~) into slice powers expand back to the originals, and
/// the substitution W -> Z~ is injective because dZ~/dZ is a nonzero
/// power of the kernel variable.
pub fn slice_model_degrees(report: &NtrReport, bound: usize) -> Result<(usize, usize, Vec<Check>)> {
    let ring = report.p_final.ring_id();
    let names = ["X", "Y", "Z"];
    let der = &report.derivation;
    let z_tilde = &report.z_tilde;
    let mut checks = Vec::new();

    let dy = der.image(1).clone();
    let dzt = der.apply(z_tilde)?;
    let mut model_images = Vec::new();
    let w_var = Poly::var(ring, 3, 2);
    for (name, poly) in [("D(Y)", &dy), ("D(Z~)", &dzt)] {
        let coeffs = rewrite_in_slice(poly, z_tilde, report.q)?;
        let mut model = Poly::zero(ring, 3);
        for (j, cj) in coeffs.iter().enumerate() {
            model = model.add(&cj.mul(&w_var.pow(j as u32)?)?)?;
        }
        // Expanding the model image back through W -> Z~ must
        // reproduce the original image exactly.
        let x = Poly::var(ring, 3, 0);
        let y = Poly::var(ring, 3, 1);
        let back = model.substitute(&[x, y, z_tilde.clone()])?;
        checks.push(Check {
            name: format!("slice model reproduces {}", name),
            pass: back == *poly,
            witness: back.render(&names),
        });
        model_images.push(model);
    }
    let dzt_dz = z_tilde.partial(2);
    checks.push(Check {
        name: "slice candidate is independent (dZ~/dZ is a nonzero kernel element)".into(),
        pass: !dzt_dz.is_zero() && der.apply(&dzt_dz)?.is_zero(),
        witness: dzt_dz.render(&names),
    });
    let model = Derivation::new(
        ring,
        3,
        vec![
            Poly::zero(ring, 3),
            model_images[0].clone(),
            model_images[1].clone(),
        ],
    )?;
    let y = Poly::var(ring, 3, 1);
    let deg_y = model.deg_d(&y, bound)?;
    // Z = (W - h) / X^{q-1}: multiplying by a nonzero kernel element
    // leaves deg_D unchanged, so deg_D(Z) = deg of W - h in the model.
    let w_minus_h = w_var.sub(&report.h)?;
    let deg_z = model.deg_d(&w_minus_h, bound)?;
    Ok((deg_y, deg_z, checks))
}

pub fn verify_ntr_instance(inst: &NtrInstance, bound: usize) -> VerificationReport {
    let names = ["X", "Y", "Z"];
    let mut report = VerificationReport::new(format!("slice-instance(p={}, q={})", inst.p, inst.q));
    let ring = inst.poly.ring_id();
    let x_form = x_kernel_form(ring);

    match triangular_test(&inst.derivation, &x_form, &inst.poly, bound) {
        Ok(rep) => report.check(
            "classified not triangular",
            !rep.triangular,
            format!("Z-degree {}", rep.sb.z_degree()),
        ),
        Err(e) => report.check("classified not triangular", false, e.to_string()),
    }

    match ntr_normal_form(&inst.derivation, &x_form, &inst.poly, inst.p, inst.q, bound) {
        Ok(nf) => {
            report.check(
                "normal form recovers h",
                nf.h == inst.h,
                nf.h.render(&names),
            );
            let c_match = nf.c == inst.c;
            report.check(
                "normal form recovers the coefficient list",
                c_match,
                nf.c.iter()
                    .map(|c| c.render())
                    .collect::<Vec<_>>()
                    .join(", "),
            );
            match assemble_slice_form(ring, &nf.h, &nf.c, nf.p, nf.q) {
                Ok(back) => report.check(
                    "normal form round-trips the generator exactly",
                    back == nf.p_final,
                    back.render(&names),
                ),
                Err(e) => report.check(
                    "normal form round-trips the generator exactly",
                    false,
                    e.to_string(),
                ),
            }
            match slice_model_degrees(&nf, bound) {
                Ok((deg_y, deg_z, checks)) => {
                    for c in checks {
                        report.checks.push(c);
                    }
                    report.check(
                        format!("deg_D(Y) = {}", inst.p),
                        deg_y == inst.p as usize,
                        deg_y.to_string(),
                    );
                    report.check(
                        format!("deg_D(Z) = {}", inst.p * inst.q),
                        deg_z == (inst.p * inst.q) as usize,
                        deg_z.to_string(),
                    );
                }
                Err(e) => report.check("slice-model degrees computed", false, e.to_string()),
            }
        }
        Err(e) => report.check("slice normal form computed", false, e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_builds_expected_polys() {
        let ex = build_example1();
        // P = t y F + x^3 contains x^3 with coefficient 1.
        let x3 = ExpVec::from_slice(&[3, 0, 0]);
        assert!(ex.p.coeff(&x3).is_one());
        // H's top graded-lex term is 4 x^9 z from 4 x^5 G1.
        let names = ["x", "y", "z"];
        assert!(ex.h.render(&names).starts_with("8*x^9*y"));
    }

    #[test]
    fn example1_substitution_route() {
        // Under u = x, v = ty, w = tz + x the generators become
        // F = uw - v^2 and G = wF^2 + 2u^2 v F + u^5; substituting back
        // reproduces the built polynomials.
        let ring = RingId::PolyT;
        let ex = build_example1();
        let u = Poly::var(ring, 3, 0);
        let v = Poly::var(ring, 3, 1);
        let w = Poly::var(ring, 3, 2);
        let t = Poly::constant(ring, 3, RingElem::symbol(ring, "t").unwrap());
        let images = [
            u.clone(),
            t.mul(&v).unwrap(),
            t.mul(&w).unwrap().add(&u).unwrap(),
        ];
        let f_uvw = u.mul(&w).unwrap().sub(&v.pow(2).unwrap()).unwrap();
        assert_eq!(f_uvw.substitute(&images).unwrap(), ex.f);
        let g_uvw = w
            .mul(&f_uvw.pow(2).unwrap())
            .unwrap()
            .add(
                &u.pow(2)
                    .unwrap()
                    .mul(&v)
                    .unwrap()
                    .mul(&f_uvw)
                    .unwrap()
                    .scale_rat(&crate::ring::rat(2)),
            )
            .unwrap()
            .add(&u.pow(5).unwrap())
            .unwrap();
        assert_eq!(g_uvw.substitute(&images).unwrap(), ex.g);
    }

    #[test]
    fn example2_partial_of_f_recovers_x1() {
        // At d = 0 the Z-partial of F = Y^2 + X1 Z is X1 itself.
        let ex = build_example2(0);
        assert_eq!(ex.f.partial(2), ex.x1);
    }

    #[test]
    fn example3_exact_division_between_patches() {
        // (1 - w2) F1 = w1 F2, so dividing w1 F2 by (1 - w2) gives F1.
        let ex = build_example3(0);
        let w1 = RingElem::symbol(RingId::Circle, "w1").unwrap();
        let w2 = RingElem::symbol(RingId::Circle, "w2").unwrap();
        let one = RingElem::one(RingId::Circle);
        let num = ex.f2.scale(&w1);
        let denom = Poly::constant(RingId::Circle, 3, one.sub(&w2));
        assert_eq!(num.exact_divide(&denom).unwrap(), ex.f1);
    }

    #[test]
    fn constants_are_kernel_members_not_slices() {
        let ex = build_example3(1);
        let one = Poly::from_i64(RingId::Circle, 3, 1);
        assert!(ex.derivation.kernel_member(&one).unwrap());
        assert!(!ex.derivation.is_local_slice(&one).unwrap());
        assert!(ex.derivation.apply(&one).unwrap().is_zero());
        // Irreducibility is undefined over the circle ring.
        assert!(matches!(
            ex.derivation.is_irreducible(),
            Err(crate::error::Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn example1_verifies() {
        let report = verify_example1(16);
        for check in &report.checks {
            assert!(check.pass, "failed: {} ({})", check.name, check.witness);
        }
        assert!(report.pass());
        assert_eq!(report.notes.len(), 2);
    }

    #[test]
    fn example2_verifies_small_degrees() {
        for d in 0..=1 {
            let report = verify_example2(d, 32);
            for check in &report.checks {
                assert!(
                    check.pass,
                    "d={}: failed {} ({})",
                    d, check.name, check.witness
                );
            }
        }
    }

    #[test]
    fn example3_verifies_small_degrees() {
        for d in 0..=1 {
            let report = verify_example3(d, 32);
            for check in &report.checks {
                assert!(
                    check.pass,
                    "d={}: failed {} ({})",
                    d, check.name, check.witness
                );
            }
        }
    }

    #[test]
    fn tr_instance_roundtrip() {
        let ring = RingId::Q;
        let x = Poly::var(ring, 3, 0);
        let y = Poly::var(ring, 3, 1);
        let f_top = y.pow(2).unwrap().add(&x.mul(&y).unwrap()).unwrap();
        let inst = build_tr_instance(1, &f_top, &RingElem::one(ring)).unwrap();
        let report = verify_tr_instance(&inst, 32);
        for check in &report.checks {
            assert!(check.pass, "failed: {} ({})", check.name, check.witness);
        }
    }

    #[test]
    fn ntr_instance_two_two() {
        let ring = RingId::Q;
        let y = Poly::var(ring, 3, 1);
        let h = y.pow(2).unwrap();
        let c = vec![RingElem::zero(ring), RingElem::one(ring)];
        let inst = build_ntr_instance(2, 2, &h, &c).unwrap();
        let report = verify_ntr_instance(&inst, 64);
        for check in &report.checks {
            assert!(check.pass, "failed: {} ({})", check.name, check.witness);
        }
        // Cross-check the model degrees against direct iteration.
        let yv = Poly::var(ring, 3, 1);
        let zv = Poly::var(ring, 3, 2);
        assert_eq!(inst.derivation.deg_d(&yv, 64).unwrap(), 2);
        assert_eq!(inst.derivation.deg_d(&zv, 64).unwrap(), 4);
    }

    #[test]
    fn ntr_rejects_missing_cp() {
        let ring = RingId::Q;
        let y = Poly::var(ring, 3, 1);
        let h = y.pow(2).unwrap();
        let c = vec![RingElem::one(ring), RingElem::zero(ring)];
        assert!(build_ntr_instance(2, 2, &h, &c).is_err());
    }

    #[test]
    fn tr_instance_rejects_bad_f() {
        let ring = RingId::Q;
        let z = Poly::var(ring, 3, 2);
        let err = build_tr_instance(1, &z.pow(2).unwrap(), &RingElem::one(ring));
        assert!(err.is_err());
        let y = Poly::var(ring, 3, 1);
        let err = build_tr_instance(2, &y.pow(2).unwrap(), &RingElem::one(ring));
        assert!(err.is_err(), "degree mismatch must be rejected");
        let err = build_tr_instance(1, &y.pow(2).unwrap(), &RingElem::zero(ring));
        assert!(err.is_err(), "beta must be a unit");
    }

    #[test]
    fn example2_strict_triple_forms() {
        // At d = 0 the three chosen forms are X1 (up to a kernel scalar),
        // X and Z, with degrees 0 < 1 < 2.
        let ex = build_example2(0);
        let triple = ex.derivation.strict_triple(16).unwrap().unwrap();
        assert_eq!(triple.degrees, vec![0, 1, 2]);
        assert!(triple.forms[0].proportional_to(&ex.x1_form));
        assert_eq!(triple.forms[1].render(&["X", "Y", "Z"]), "X");
        assert_eq!(triple.forms[2].render(&["X", "Y", "Z"]), "Z");
    }

    #[test]
    fn example2_verifies_with_scaled_rationals() {
        // Detail check: the kernel stratum really is proportional to X1
        // and not merely nonzero.
        let ex = build_example2(0);
        let filt = ex.derivation.linear_filtration(16).unwrap();
        assert_eq!(filt.strata[0].dim, 1);
        assert!(filt.strata[0].basis[0].proportional_to(&ex.x1_form));
        let not_x1 = LinearForm::new(
            RingId::Circle,
            vec![
                RingElem::one(RingId::Circle),
                RingElem::zero(RingId::Circle),
                RingElem::zero(RingId::Circle),
            ],
        );
        assert!(!filt.strata[0].basis[0].proportional_to(&not_x1));
    }
}
