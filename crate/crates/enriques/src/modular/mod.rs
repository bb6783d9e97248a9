//! Named modular and quasimodular forms and their ring structure.

mod forms;
pub(crate) mod linalg;
mod ring;

pub use forms::{
    bernoulli, cusp_quotient, delta, eisenstein_g, eta, eta_quotient, f2, f2_odd_divisor_sum,
};
pub use ring::{
    formal_dg2, monomial_basis, monomial_weight, recognize, vanishing_lemma_check, Monomial,
    Recognition, RingElement, RingTag, SURPLUS_EQUATIONS,
};
