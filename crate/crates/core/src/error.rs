use std::fmt;

use thiserror::Error;

/// Structural errors: violated preconditions on shapes, alphabets and specs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements are expressed over different alphabets")]
    AlphabetMismatch,
    #[error("position {position} is out of range for a word of length {length}")]
    PositionOutOfRange { position: usize, length: usize },
    #[error("no table entry for letter pair ({left}, {right})")]
    MissingTableEntry { left: u32, right: u32 },
    #[error("word of length {found} where length {expected} is required")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("braiding block of size {size} exceeds the elimination cap {cap}")]
    DimensionCap { size: usize, cap: usize },
    #[error("algebra has no unit letter")]
    NotUnital,
    #[error("algebra already has a unit letter")]
    AlreadyUnital,
    #[error("element is not right coinvariant: {0}")]
    NotCoinvariant(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("precondition failed: {0}")]
    Precondition(Box<Counterexample>),
}

/// The first witness found by a checker, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub check: String,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(
        check: impl Into<String>,
        witness: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        Counterexample {
            check: check.into(),
            witness: witness.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} failed at {}", self.check, self.witness)?;
        writeln!(f, "  lhs: {}", self.lhs)?;
        write!(f, "  rhs: {}", self.rhs)
    }
}

/// Outcome of an axiom or identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Counterexample),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(c) => Some(c),
        }
    }

    /// Runs `next` only if `self` passed.
    pub fn and_then<F: FnOnce() -> Verdict>(self, next: F) -> Verdict {
        match self {
            Verdict::Pass => next(),
            fail => fail,
        }
    }
}

impl From<Result<(), Counterexample>> for Verdict {
    fn from(r: Result<(), Counterexample>) -> Self {
        match r {
            Ok(()) => Verdict::Pass,
            Err(c) => Verdict::Fail(c),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(c) => write!(f, "{c}"),
        }
    }
}
