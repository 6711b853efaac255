//! Error types shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A physical quantity violated its validity constraint.
    #[error("{quantity} = {value} is invalid: {constraint}")]
    Domain {
        quantity: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// Requested peak intensity exceeds the intensity at perfect focus.
    #[error("target intensity {target:.6e} W/m^2 exceeds the focused maximum {max:.6e} W/m^2")]
    UnreachableIntensity { target: f64, max: f64 },

    /// A surface frame carried too few radial samples for the stencil.
    #[error("conduction estimate needs at least 3 radial samples, frame has {0}")]
    InsufficientSamples(usize),

    /// The temperature field left the finite range; indicates a stability bug.
    #[error("temperature field became non-finite after a solver step")]
    NumericalBlowup,

    /// Configuration file failed to parse or validate.
    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(quantity: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::Domain {
            quantity,
            value,
            constraint,
        }
    }
}
