use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::{format_rational, Rational};

/// Errors raised by models, allocators, mechanisms and audits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A profile or bid vector has the wrong number of players.
    PlayerCount { expected: usize, found: usize },
    /// An element id is outside the ground set.
    UnknownElement { element: usize, ground_size: usize },
    /// A node label or id does not exist in a graph.
    UnknownNode(String),
    /// A tabular model has no entry for the queried profile.
    MissingEntry(String),
    /// Structural problem with a model definition.
    InvalidModel(String),
    /// The requested budgets cannot be met.
    InfeasibleBids { bids: Vec<usize>, ground_size: usize },
    /// The operation requires an exact oracle and was given a sampled one.
    InexactModel,
    /// Exhaustive enumeration would exceed the configured cap.
    TooLarge { what: &'static str, count: u128, limit: u128 },
    /// A precondition the caller must establish was violated.
    Precondition(String),
    /// The two linear monotonicity constraints admit no mixing weight.
    EmptyAlphaInterval(AlphaFailure),
    /// An internal construction invariant broke (a model violating preconditions).
    Invariant(String),
    /// A parameter is outside its admissible range.
    Parameter(String),
    UnknownName(String),
}

/// Full state of a failed mixing-weight selection at table entry `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaFailure {
    pub a: usize,
    pub b: usize,
    pub w1: (Rational, Rational),
    pub w0: (Rational, Rational),
    pub lower_a: Rational,
    pub lower_b: Rational,
}

impl fmt::Display for AlphaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({}, {}): W1=({}, {}) W0=({}, {}) need w^A >= {} and w^B >= {}",
            self.a,
            self.b,
            format_rational(&self.w1.0),
            format_rational(&self.w1.1),
            format_rational(&self.w0.0),
            format_rational(&self.w0.1),
            format_rational(&self.lower_a),
            format_rational(&self.lower_b),
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PlayerCount { expected, found } => {
                write!(f, "expected {expected} players, found {found}")
            }
            Error::UnknownElement { element, ground_size } => {
                write!(f, "element {element} outside ground set of size {ground_size}")
            }
            Error::UnknownNode(node) => write!(f, "unknown node {node:?}"),
            Error::MissingEntry(profile) => write!(f, "no tabulated utilities for profile {profile}"),
            Error::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
            Error::InfeasibleBids { bids, ground_size } => {
                write!(f, "bids {bids:?} exceed ground set of size {ground_size}")
            }
            Error::InexactModel => f.write_str("operation requires an exact oracle"),
            Error::TooLarge { what, count, limit } => {
                write!(f, "{what}: {count} cases exceeds limit {limit}")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::EmptyAlphaInterval(state) => write!(f, "no feasible mixing weight at {state}"),
            Error::Invariant(msg) => write!(f, "construction invariant broken: {msg}"),
            Error::Parameter(msg) => write!(f, "parameter out of range: {msg}"),
            Error::UnknownName(name) => write!(f, "unknown name {name:?}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
