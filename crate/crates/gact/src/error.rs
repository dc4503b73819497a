//! Error types shared across the workbench.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not a Latin square at row {0}")]
    NotLatinSquare(usize),
    #[error("no identity element in multiplication table")]
    NoIdentity,
    #[error("associativity fails at triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("table shape does not match declared order")]
    BadShape,
    #[error("element index {0} out of range")]
    BadElement(usize),
    #[error("member set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("map is not a homomorphism at pair ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("subgroup is not normal: conjugation by {0} leaves it")]
    NotNormal(usize),
    #[error("unknown built-in group name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("action of {g:?} is not a permutation of the universe")]
    ActionNotPermutation { g: String },
    #[error("action of identity is not the identity permutation")]
    IdentityActs,
    #[error("action composition law fails at ({g:?}, {h:?})")]
    ActionComposition { g: String, h: String },
    #[error("action of {g:?} does not preserve the relation")]
    NotAutomorphism { g: String },
    #[error("relation pair ({0}, {1}) out of range")]
    BadPair(usize, usize),
    #[error("graph relation must be irreflexive, loop at {0}")]
    Reflexive(usize),
    #[error("order relation is not a strict total order")]
    NotTotalOrder,
    #[error("unknown element {0}")]
    UnknownElement(usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("embedding is not a G-equivariant partial isomorphism: {0}")]
    BadEmbedding(String),
    #[error("search budget exceeded ({0} nodes)")]
    BudgetExceeded(usize),
    #[error("signature mismatch: expected {expected:?}")]
    SignatureMismatch { expected: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("term index {0} out of range")]
    BadTerm(usize),
    #[error("base literal set is contradictory: {0}")]
    ContradictoryBase(String),
    #[error("entry count {got} does not match term set ({want})")]
    BadEntryCount { got: usize, want: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenericError {
    #[error("embeddings disagree with the actions on the base: {0}")]
    ActionMismatchOnBase(String),
    #[error("structures carry different groups")]
    GroupMismatch,
    #[error("operation requires {0:?} signature")]
    WrongSignature(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown group element {0:?}")]
    UnknownGroupElement(String),
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
    #[error("variable {0:?} has no assigned value")]
    UnassignedVariable(String),
    #[error("formula does not fit the structure signature: {0}")]
    SignatureMismatch(String),
    #[error("unsupported signature for this operation: {0}")]
    UnsupportedSignature(String),
    #[error("formula has free variables: {0:?}")]
    NotASentence(Vec<String>),
    #[error("generators {0:?} do not generate the group")]
    NotGenerating(Vec<usize>),
    #[error("formula contains group applications, expected a plain relational formula")]
    NotPlainFormula,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndepError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("element index {0} out of range")]
    BadElement(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("extension exceeds the configured bound ({size} > {bound})")]
    BoundExceeded { size: usize, bound: usize },
    #[error("sets violate A \u{2286} B \u{2286} C")]
    NotNested,
    #[error("permutations do not form a subgroup of the automorphism group")]
    NotSubgroup,
    #[error("base must equal the invariants of the structure")]
    BaseNotInvariants,
    #[error("element {0} outside the extension")]
    BadElement(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoolError {
    #[error("variable block count must equal the group order")]
    BlockCountMismatch,
    #[error("ideal is not G-invariant (generator {gen}, group element {g})")]
    NotInvariant { gen: usize, g: usize },
    #[error("ideals are not properly nested (need I \u{2282} J)")]
    NotProperlyContained,
    #[error("point scan too large: {0} points exceed the cap")]
    SearchTooLarge(u128),
    #[error("witness construction needs a nonzero element")]
    ZeroElement,
    #[error("polynomial arity mismatch: expected e={e}, n={n}")]
    ArityMismatch { e: usize, n: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("ring has too many atoms ({0}), limit is 16")]
    TooManyAtoms(usize),
}
