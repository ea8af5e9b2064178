use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("{what}: budget of {budget} exceeded")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("invalid coefficient module: {0}")]
    InvalidModule(String),

    #[error("cochain is not a cocycle (coboundary nonzero at tuple {tuple:?})")]
    NotACocycle { tuple: Vec<usize> },

    #[error("cochain shape mismatch: {0}")]
    Shape(String),

    #[error("phi({g})phi({h})phi({g}{h})^-1 is not an inner automorphism")]
    NotInner { g: usize, h: usize },

    #[error("conjugation by the section value at {g} moves element {n} out of the normal subgroup")]
    ConjugationEscapesN { g: String, n: String },

    #[error("not a section: {0}")]
    NotASection(String),

    #[error("target lift does not project to the induced outer action at {g}")]
    NoLift { g: usize },

    #[error("cocycles carry different automorphism tables (first difference at {g})")]
    DifferentPhi { g: usize },

    #[error("unknown symbolic family {0:?}")]
    UnknownFamily(String),

    #[error("3-cocycle is not normalized (nonzero at degenerate tuple {tuple:?})")]
    NotNormalized { tuple: Vec<usize> },

    #[error("symbol alphabet too large: |M| = {order} (at most 6 supported)")]
    SymbolBudgetExceeded { order: usize },

    #[error("window of radius {radius} needs {pairs} pairs, budget is {budget}")]
    WindowTooLarge { radius: usize, pairs: u64, budget: u64 },

    #[error("value at {0} is not central")]
    NotCentral(String),

    #[error("integer does not fit the cochain coordinate range")]
    CoordinateOverflow,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Input(String),
}
