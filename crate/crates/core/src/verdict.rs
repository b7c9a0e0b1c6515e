use std::fmt;

/// Outcome of a validator or recognizer.
///
/// Precondition violations are reported through [`crate::Error`] instead;
/// a `Reject` always means the input was well formed but is not in the
/// recognized class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<C> {
    Accept(C),
    Reject(Rejection),
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// Short machine-friendly name of the check that failed.
    pub stage: String,
    pub reason: String,
    /// Vertices, elements, or indices that exhibit the failure.
    pub witness: Vec<usize>,
}

impl Rejection {
    pub fn new(stage: impl Into<String>, reason: impl Into<String>) -> Self {
        Rejection {
            stage: stage.into(),
            reason: reason.into(),
            witness: Vec::new(),
        }
    }

    pub fn with_witness(mut self, witness: impl Into<Vec<usize>>) -> Self {
        self.witness = witness.into();
        self
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.stage, self.reason)?;
        if !self.witness.is_empty() {
            write!(f, " (witness {:?})", self.witness)?;
        }
        Ok(())
    }
}

impl<C> Verdict<C> {
    pub fn reject(stage: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict::Reject(Rejection::new(stage, reason))
    }

    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept(_))
    }

    pub fn is_reject(&self) -> bool {
        matches!(self, Verdict::Reject(_))
    }

    pub fn accepted(self) -> Option<C> {
        match self {
            Verdict::Accept(c) => Some(c),
            _ => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Reject(r) => Some(r),
            _ => None,
        }
    }

    pub fn map<D>(self, f: impl FnOnce(C) -> D) -> Verdict<D> {
        match self {
            Verdict::Accept(c) => Verdict::Accept(f(c)),
            Verdict::Reject(r) => Verdict::Reject(r),
            Verdict::Unsupported(s) => Verdict::Unsupported(s),
        }
    }

    /// Short label used in reports: `accept`, `reject`, or `unsupported`.
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Accept(_) => "accept",
            Verdict::Reject(_) => "reject",
            Verdict::Unsupported(_) => "unsupported",
        }
    }
}

impl<C> From<Rejection> for Verdict<C> {
    fn from(r: Rejection) -> Self {
        Verdict::Reject(r)
    }
}
