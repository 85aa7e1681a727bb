//! Virtual radical and socle series, Ext¹ proportionality classes and tuned
//! module diagrams over finite-dimensional algebras over prime fields.

pub mod algebra;
pub mod config;
pub mod corpus;
pub mod decompose;
pub mod diagram;
pub mod error;
pub mod ext;
pub mod field;
pub mod io;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod projectives;
pub mod radical;
pub mod random;
pub mod rng;
pub mod series;
pub mod structure;
pub mod subspace;

pub use algebra::{Algebra, AlgebraKind, AlgebraSpec, GroupGenerators};
pub use config::{Config, OutputFormat};
pub use decompose::{decompose, iso_test, Summand};
pub use diagram::{central_diagram, tuned_diagram, verify_diagram, Diagram};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use matrix::MatrixFp;
pub use module::{hom_space, AModule, Morphism};
pub use par::Exec;
pub use rng::SeedStream;
pub use subspace::Subspace;
