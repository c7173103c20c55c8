//! Abstract syntax for boolean and Łukasiewicz formulas.
//!
//! Both formula types are plain trees. They share one shape (variables,
//! one unary connective, binary connectives), which [`Formula::view`]
//! exposes so that printing and length accounting are written once.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a propositional variable `X_i`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct VarId(u32);

impl VarId {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(Self(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for VarId {
    type Error = String;

    fn try_from(index: u32) -> std::result::Result<Self, String> {
        VarId::new(index).ok_or_else(|| "variable index must be at least 1".to_string())
    }
}

impl From<VarId> for u32 {
    fn from(v: VarId) -> u32 {
        v.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

fn var_id(index: u32) -> VarId {
    VarId::new(index).expect("variable index must be at least 1")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolFormula {
    Var(VarId),
    Not(Box<BoolFormula>),
    And(Box<BoolFormula>, Box<BoolFormula>),
    Or(Box<BoolFormula>, Box<BoolFormula>),
}

impl BoolFormula {
    /// Variable `X_index`. Panics on index 0.
    pub fn var(index: u32) -> Self {
        BoolFormula::Var(var_id(index))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: BoolFormula) -> Self {
        BoolFormula::Not(Box::new(a))
    }

    pub fn and(a: BoolFormula, b: BoolFormula) -> Self {
        BoolFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolFormula, b: BoolFormula) -> Self {
        BoolFormula::Or(Box::new(a), Box::new(b))
    }

    /// Same tree read with the Łukasiewicz connectives `¬`, `∧`, `∨`.
    pub fn embed(&self) -> LukFormula {
        match self {
            BoolFormula::Var(v) => LukFormula::Var(*v),
            BoolFormula::Not(a) => LukFormula::neg(a.embed()),
            BoolFormula::And(a, b) => LukFormula::meet(a.embed(), b.embed()),
            BoolFormula::Or(a, b) => LukFormula::join(a.embed(), b.embed()),
        }
    }

    /// Applies `rename` to every variable occurrence.
    pub fn map_vars(&self, rename: &impl Fn(VarId) -> VarId) -> BoolFormula {
        match self {
            BoolFormula::Var(v) => BoolFormula::Var(rename(*v)),
            BoolFormula::Not(a) => BoolFormula::not(a.map_vars(rename)),
            BoolFormula::And(a, b) => BoolFormula::and(a.map_vars(rename), b.map_vars(rename)),
            BoolFormula::Or(a, b) => BoolFormula::or(a.map_vars(rename), b.map_vars(rename)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LukFormula {
    Var(VarId),
    Neg(Box<LukFormula>),
    Oplus(Box<LukFormula>, Box<LukFormula>),
    Otimes(Box<LukFormula>, Box<LukFormula>),
    Meet(Box<LukFormula>, Box<LukFormula>),
    Join(Box<LukFormula>, Box<LukFormula>),
}

impl LukFormula {
    /// Variable `X_index`. Panics on index 0.
    pub fn var(index: u32) -> Self {
        LukFormula::Var(var_id(index))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: LukFormula) -> Self {
        LukFormula::Neg(Box::new(a))
    }

    pub fn oplus(a: LukFormula, b: LukFormula) -> Self {
        LukFormula::Oplus(Box::new(a), Box::new(b))
    }

    pub fn otimes(a: LukFormula, b: LukFormula) -> Self {
        LukFormula::Otimes(Box::new(a), Box::new(b))
    }

    pub fn meet(a: LukFormula, b: LukFormula) -> Self {
        LukFormula::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: LukFormula, b: LukFormula) -> Self {
        LukFormula::Join(Box::new(a), Box::new(b))
    }
}

/// `a → b`, which abbreviates `b ⊕ ¬a`.
pub fn implies(a: LukFormula, b: LukFormula) -> LukFormula {
    LukFormula::oplus(b, LukFormula::neg(a))
}

/// `a ↔ b`, which abbreviates `(a → b) ⊙ (b → a)`.
pub fn iff(a: LukFormula, b: LukFormula) -> LukFormula {
    LukFormula::otimes(implies(a.clone(), b.clone()), implies(b, a))
}

/// Iterated strong conjunction `a ⊙ a ⊙ … ⊙ a` (k copies, left-nested).
pub fn power(a: &LukFormula, k: u32) -> Result<LukFormula> {
    chain(a, k, LukFormula::otimes)
}

/// Iterated strong disjunction `a ⊕ a ⊕ … ⊕ a` (k copies, left-nested).
pub fn multiple(k: u32, a: &LukFormula) -> Result<LukFormula> {
    chain(a, k, LukFormula::oplus)
}

fn chain(
    a: &LukFormula,
    k: u32,
    op: fn(LukFormula, LukFormula) -> LukFormula,
) -> Result<LukFormula> {
    if k == 0 {
        return Err(Error::ZeroRepetition);
    }
    Ok((1..k).fold(a.clone(), |acc, _| op(acc, a.clone())))
}

/// Left-nested fold of a nonempty list with a binary connective.
pub(crate) fn fold_nonempty(
    items: impl IntoIterator<Item = LukFormula>,
    op: fn(LukFormula, LukFormula) -> LukFormula,
) -> Option<LukFormula> {
    items.into_iter().reduce(op)
}

/// Binary connectives shared by both formula types.
///
/// `And`/`Or` are the idempotent connectives (`∧`, `∨`); in a
/// Łukasiewicz formula they are `Meet`/`Join`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Oplus,
    Otimes,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "/\\",
            BinOp::Or => "\\/",
            BinOp::Oplus => "(+)",
            BinOp::Otimes => "(*)",
        }
    }

    /// Binding strength; higher binds tighter. Negation sits above all of these.
    pub fn level(self) -> u8 {
        match self {
            BinOp::And | BinOp::Or => 1,
            BinOp::Oplus => 2,
            BinOp::Otimes => 3,
        }
    }
}

const ATOM_LEVEL: u8 = 4;

pub enum View<'a, F> {
    Var(VarId),
    Not(&'a F),
    Bin(BinOp, &'a F, &'a F),
}

/// Length of a formula under its canonical fully parenthesized rendering,
/// where every connective node (unary or binary) carries its own pair of
/// parentheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FormulaLength {
    /// Surface tokens: `X7` is one token.
    pub token_count: u64,
    /// Symbols in the unary-bar alphabet: `X_i` is `X` followed by `i` bars.
    pub paper_symbol_count: u64,
}

impl std::ops::Add for FormulaLength {
    type Output = FormulaLength;

    fn add(self, rhs: Self) -> Self {
        FormulaLength {
            token_count: self.token_count + rhs.token_count,
            paper_symbol_count: self.paper_symbol_count + rhs.paper_symbol_count,
        }
    }
}

impl std::iter::Sum for FormulaLength {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(FormulaLength::default(), |a, b| a + b)
    }
}

pub trait Formula: Sized {
    fn view(&self) -> View<'_, Self>;

    fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        collect_vars(self, &mut out);
        out
    }

    fn variable_occurrences(&self) -> usize {
        match self.view() {
            View::Var(_) => 1,
            View::Not(a) => a.variable_occurrences(),
            View::Bin(_, a, b) => a.variable_occurrences() + b.variable_occurrences(),
        }
    }

    fn connective_count(&self) -> usize {
        match self.view() {
            View::Var(_) => 0,
            View::Not(a) => 1 + a.connective_count(),
            View::Bin(_, a, b) => 1 + a.connective_count() + b.connective_count(),
        }
    }

    fn length(&self) -> FormulaLength {
        match self.view() {
            View::Var(v) => FormulaLength {
                token_count: 1,
                paper_symbol_count: 1 + u64::from(v.index()),
            },
            View::Not(a) => {
                let l = a.length();
                FormulaLength {
                    token_count: l.token_count + 3,
                    paper_symbol_count: l.paper_symbol_count + 3,
                }
            }
            View::Bin(_, a, b) => {
                let l = a.length() + b.length();
                FormulaLength {
                    token_count: l.token_count + 3,
                    paper_symbol_count: l.paper_symbol_count + 3,
                }
            }
        }
    }

    /// Fully parenthesized rendering, the one [`Formula::length`] counts.
    fn canonical(&self) -> String {
        let mut out = String::new();
        write_canonical(self, &mut out);
        out
    }
}

pub fn measure<F: Formula>(f: &F) -> FormulaLength {
    f.length()
}

fn collect_vars<F: Formula>(f: &F, out: &mut BTreeSet<VarId>) {
    match f.view() {
        View::Var(v) => {
            out.insert(v);
        }
        View::Not(a) => collect_vars(a, out),
        View::Bin(_, a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

impl Formula for BoolFormula {
    fn view(&self) -> View<'_, Self> {
        match self {
            BoolFormula::Var(v) => View::Var(*v),
            BoolFormula::Not(a) => View::Not(a),
            BoolFormula::And(a, b) => View::Bin(BinOp::And, a, b),
            BoolFormula::Or(a, b) => View::Bin(BinOp::Or, a, b),
        }
    }
}

impl Formula for LukFormula {
    fn view(&self) -> View<'_, Self> {
        match self {
            LukFormula::Var(v) => View::Var(*v),
            LukFormula::Neg(a) => View::Not(a),
            LukFormula::Oplus(a, b) => View::Bin(BinOp::Oplus, a, b),
            LukFormula::Otimes(a, b) => View::Bin(BinOp::Otimes, a, b),
            LukFormula::Meet(a, b) => View::Bin(BinOp::And, a, b),
            LukFormula::Join(a, b) => View::Bin(BinOp::Or, a, b),
        }
    }
}

fn write_canonical<F: Formula>(f: &F, out: &mut String) {
    match f.view() {
        View::Var(v) => out.push_str(&v.to_string()),
        View::Not(a) => {
            out.push_str("(~");
            write_canonical(a, out);
            out.push(')');
        }
        View::Bin(op, a, b) => {
            out.push('(');
            write_canonical(a, out);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_canonical(b, out);
            out.push(')');
        }
    }
}

fn level<F: Formula>(f: &F) -> u8 {
    match f.view() {
        View::Var(_) | View::Not(_) => ATOM_LEVEL,
        View::Bin(op, _, _) => op.level(),
    }
}

fn bin_op<F: Formula>(f: &F) -> Option<BinOp> {
    match f.view() {
        View::Bin(op, _, _) => Some(op),
        _ => None,
    }
}

// Minimal parentheses: chains associate to the left, and `/\` and `\/`
// never appear unparenthesized next to each other.
fn write_minimal<F: Formula>(f: &F, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f.view() {
        View::Var(v) => write!(out, "{v}"),
        View::Not(a) => {
            out.write_str("~")?;
            write_wrapped(a, level(a) < ATOM_LEVEL, out)
        }
        View::Bin(op, a, b) => {
            let lvl = op.level();
            let left_parens = level(a) < lvl || (lvl == 1 && bin_op(a).is_some_and(|o| o != op));
            write_wrapped(a, left_parens, out)?;
            write!(out, " {} ", op.symbol())?;
            write_wrapped(b, level(b) <= lvl, out)
        }
    }
}

fn write_wrapped<F: Formula>(f: &F, parens: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parens {
        out.write_str("(")?;
        write_minimal(f, out)?;
        out.write_str(")")
    } else {
        write_minimal(f, out)
    }
}

impl fmt::Display for BoolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_minimal(self, f)
    }
}

impl fmt::Display for LukFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_minimal(self, f)
    }
}
