//! Exact local computations around the GL3 new-vector Whittaker function:
//! symbolic closed forms, a p-adic integration oracle, an 8×8 model of G2,
//! the ramified zeta integral and unitary L-group factorizations.

pub mod cyclo;
pub mod g2;
pub mod lgroup;
pub mod oracle;
pub mod padic;
pub mod report;
pub mod symalg;
pub mod whittaker;
pub mod zeta;
