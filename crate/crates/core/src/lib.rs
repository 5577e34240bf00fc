//! Exact-arithmetic kernel for locally nilpotent derivations on
//! polynomial rings in up to three variables over Q, Q[t] and the
//! circle ring, with normal-form algorithms, worked constructions and a
//! session/report layer for the command-line front end.

pub mod derivation;
pub mod error;
pub mod examples;
mod linalg;
pub mod normal_form;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;

pub use derivation::{
    kernel_type, CoordChange, Derivation, KernelType, LinearFiltration, LinearForm, NilpotenceCert,
    RankReport, RowCertificate, Stratum, StrictTriple,
};
pub use error::{Error, Result};
pub use examples::{
    build_example1, build_example2, build_example3, build_ntr_instance, build_tr_instance,
    slice_model_degrees, verify_example1, verify_example2, verify_example3, verify_ntr_instance,
    verify_tr_instance, Check, NtrInstance, TrInstance, VerificationReport,
};
pub use normal_form::{
    assemble_slice_form, assemble_triangular_form, newton_polygon, normalize_sa, np_check,
    ntr_normal_form, reconstruct_generator, reduce_mod_var, rentschler_data, rewrite_in_slice,
    shape_sb, triangular_test, NewtonPolygon, NpCheck, NtrReport, SaForm, SbShape,
    TriangularReport,
};
pub use parse::{parse_session, Expr, SessionSpec};
pub use poly::{gcd_multivar, ExpVec, Poly, WeightVec};
pub use report::{parse_command, run_command, Command, Outcome, RunOptions, Status};
pub use ring::{CircleElem, Rat, RingElem, RingId, UniPoly};
