//! Combinatorics of torification: exact integer linear algebra, affine
//! toric monoids and their ideals, Hilbert bases, gradings by finitely
//! generated abelian groups, torific ideals and blowup charts, and Kato
//! fans with finite group actions.

pub mod abelian;
pub mod corpus;
pub mod error;
pub mod fan;
pub mod graded;
pub mod hilbert;
pub mod ideal;
pub mod io;
pub mod monoid;
pub mod torify;

pub use error::{Result, TorificError};
