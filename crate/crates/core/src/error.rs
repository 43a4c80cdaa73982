use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input contains a non-finite coordinate")]
    NonFinite,

    #[error("rho must lie in (0, 1], got {0}")]
    InvalidRho(f64),

    #[error("omega must lie in the closed unit disc, got modulus {0}")]
    OmegaOutsideDisc(f64),

    #[error("omega must be non-zero")]
    ZeroOmega,

    #[error("the zero vector does not define a projective class")]
    ZeroVector,

    #[error("line direction must be non-zero")]
    ZeroDirection,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "boundary point matches none of the non-smooth parametrizations \
         (best residual {residual:e}); tolerance too tight or invalid input"
    )]
    InconsistentBoundary { residual: f64 },

    #[error("degenerate boundary case between {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
