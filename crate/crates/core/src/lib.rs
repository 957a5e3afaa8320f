pub mod crystal;
pub mod error;
pub mod geom_crystal;
pub mod io;
pub mod matrix_real;
pub mod sample;
pub mod semifield;
pub mod tropical_r;
pub mod verify;

pub use error::{Error, Result};
pub use geom_crystal::{GcPoint, GcTuple, GeomCrystal};
pub use semifield::{MaxPlus, Rational, Semifield, Trop, TropQ};
