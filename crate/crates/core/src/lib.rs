//! Bigraded Hochschild cohomology of Landau-Ginzburg orbifolds attached to ADE singularities,
//! with closed-form families and a bar-complex oracle on the Koszul dual side.

pub mod abelian;
pub mod closed_forms;
pub mod error;
pub mod lgmodel;
pub mod linalg;
pub mod milnor;
pub mod oracle;
pub mod orbifold;
pub mod polynomial;
pub mod quiver;
pub mod table;

pub use error::{Error, Result};
pub use lgmodel::{Family, LgModel, Sector};
pub use orbifold::{hh_table, HhOptions};
pub use table::BigradedTable;

/// Crate version, recorded in serialized output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
