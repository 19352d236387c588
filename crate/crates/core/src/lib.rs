pub mod bigfield;
pub mod edwards;
pub mod error;
pub mod polyalg;
pub mod ratfun;
pub mod semaev;
pub mod vectors;

pub use bigfield::{counters, Field, FieldParams, FieldParamsJson, Fq, FqElement, Fqn, FqnElement};
pub use edwards::{AffinePoint, CurveJson, EdwardsCurve};
pub use error::{Error, Result};
pub use polyalg::{MultiPoly, UniPoly};
pub use ratfun::{QPoly, RatFunRep};
pub use semaev::SemaevRep;
pub use vectors::{Rep, Scheme, VectorCase, VectorFile};
