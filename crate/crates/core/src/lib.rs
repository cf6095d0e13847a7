//! Exact index computation, meander combinatorics and contact-form synthesis
//! for type-A seaweed subalgebras of `sl(n)`.

pub mod contact;
pub mod exact;
pub mod liealg;
pub mod meander;
pub mod seaweed;

pub use contact::{
    case1_contact, case2_contact, frobenius_plus_contact_combine, regular_form_from_meander,
    synthesize_contact, verify_certificate, verify_report, ContactCertificate, ContactError,
    OneForm, SplitForms,
};
pub use exact::{RatMatrix, Rational};
pub use liealg::{CoeffForm, ContactVerdict, LieAlgebra, LieError};
pub use meander::{
    build_meander, components, index, orient, render, Component, ComponentReport, DirectedMeander,
    Meander, MeanderView, RenderFormat,
};
pub use seaweed::{
    materialize, standard_basis, BasisLabel, Composition, SeaweedError, SeaweedSpec,
};
