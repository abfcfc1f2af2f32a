//! Invariants of parabolic subgroups of `GL_n(F_q)` acting on the truncated
//! polynomial algebra `Q_m(n) = F_q[x_1..x_n]/(x_1^{q^m}, ..., x_n^{q^m})`.

pub mod basisgen;
pub mod combinat;
pub mod delta;
pub mod dickson;
pub mod error;
pub mod gfq;
pub mod groups;
pub mod identities;
pub mod mvpoly;
pub mod solver;
pub mod steenrod;

pub use error::{Error, Result};
