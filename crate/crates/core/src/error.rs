use std::fmt;

use crate::classes::ClassId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Direction of a [`Plan`](crate::plan::Plan).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Target state towards the uniform superposition.
    Reduce,
    /// Uniform superposition towards the target state.
    Build,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Reduce => Direction::Build,
            Direction::Build => Direction::Reduce,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Reduce => "reduce",
            Direction::Build => "build",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a target needs at least 2 qubits, got {0}")]
    TooFewQubits(usize),

    #[error("{0} qubits is more than this build supports (max {max})", max = crate::target::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("invalid class table: {0}")]
    InvalidTable(String),

    #[error("invalid class structure: {0}")]
    InvalidClasses(String),

    #[error("no class with id {0}")]
    UnknownClass(ClassId),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("state is already uniform")]
    AlreadyUniform,

    #[error("no merging angle exists for this pair (sufficient condition fails: {condition:e})")]
    NoRoot { condition: f64 },

    #[error("forecast needs exactly two classes, got {0}")]
    NotTwoClass(usize),

    #[error("amplification budget of {budget} iterations exceeded (per-run bound is {bound})")]
    IterationBudgetExceeded { budget: u64, bound: u64 },

    #[error("classes {lo} and {hi} did not merge after the equalizing step (|diff| = {diff:e})")]
    MergeFailed { lo: ClassId, hi: ClassId, diff: f64 },

    #[error("a {controls}-control gate needs an idle qubit and none was given")]
    NoIdleQubit { controls: usize },

    #[error("qubit index {index} out of range for a {qubits}-qubit register")]
    IndexOutOfRange { index: usize, qubits: usize },

    #[error("gate acts on qubit {0} more than once")]
    RepeatedQubit(usize),

    #[error("{requested} qubits exceeds the simulator cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },

    #[error("expected a {expected} plan, found a {found} plan")]
    WrongDirection {
        expected: Direction,
        found: Direction,
    },

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
