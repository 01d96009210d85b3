use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which side of a lab/boosted comparison produced an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Lab,
    Boosted,
}

impl std::fmt::Display for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Frame::Lab => write!(f, "lab frame"),
            Frame::Boosted => write!(f, "boosted frame"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("states live on different grids")]
    GridMismatch,

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("wave packet reaches the guard band (probability {probability:.3e}{})",
        .time.map(|t| format!(" at t = {t}")).unwrap_or_default())]
    DomainOverflow { probability: f64, time: Option<f64> },

    #[error("non-finite amplitudes after step {step}")]
    NumericalBlowup { step: usize },

    #[error("dense oracle limited to 128 grid points, got {n}")]
    OracleSize { n: usize },

    #[error("dense oracle requires a time-independent Hamiltonian")]
    TimeDependentOracle,

    #[error("overlap magnitude {overlap:.3e} is below the floor; phase undefined")]
    OrthogonalStates { overlap: f64 },

    #[error("phase step {phase:.3} rad at sample {index} exceeds the unwrapping limit; resample finer")]
    Resolution { index: usize, phase: f64 },

    #[error("too few samples: need {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("trajectory is not cyclic (defect {defect:.3e} >= tolerance {tolerance:.1e})")]
    NotCyclic { defect: f64, tolerance: f64 },

    #[error("dynamic phase forms disagree: overlaps {from_overlaps}, energy {from_energy}")]
    DynamicPhaseMismatch { from_overlaps: f64, from_energy: f64 },

    #[error("trajectory has no Hamiltonian attached")]
    MissingHamiltonian,

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{frame}: {source}")]
    InFrame {
        frame: Frame,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_frame(self, frame: Frame) -> Error {
        Error::InFrame {
            frame,
            source: Box::new(self),
        }
    }

    /// Strips any frame context.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFrame { source, .. } => source.root(),
            e => e,
        }
    }
}
