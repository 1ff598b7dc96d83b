pub mod arith;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod chebyshev;
pub mod groebner;
pub mod hilbert;
pub mod interp;
pub mod syzygy;
pub mod arrangement;
