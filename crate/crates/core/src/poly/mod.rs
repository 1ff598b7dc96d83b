mod gcd;
mod monomial;
mod mpoly;
mod parse;

pub use gcd::{gcd, is_squarefree};
pub use monomial::{binomial2, monomial_basis, Monomial, MonomialOrder, VAR_NAMES};
pub use mpoly::{KPoly, MPoly, QPoly};
pub use parse::parse;
