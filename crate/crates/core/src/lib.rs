pub mod caps;
pub mod error;
pub mod group;
pub mod gspace;
pub mod identities;
pub mod sectors;
pub mod presentation;
pub mod series;

pub use caps::{Caps, Ctx};
pub use error::{Error, Result};
