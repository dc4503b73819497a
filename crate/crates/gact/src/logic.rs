//! Formulas over a group-action language: AST, parser, finite-model
//! evaluation, quantifier elimination for the two supported model companions,
//! sentence decision, and relativization to the invariants.
//!
//! Terms apply exactly one group element to a variable; nested applications
//! normalize through the group multiplication.

use crate::config::{Configuration, Entry, TermSet};
use crate::error::LogicError;
use crate::generic::{SaturationState, TheoryKind};
use crate::group::FiniteGroup;
use crate::structure::{GStructure, SignatureKind};
use std::collections::BTreeSet;
use std::fmt;

/// sigma_g(x); `g` is an element index of the ambient group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    pub g: usize,
    pub var: String,
}

impl Term {
    /// sigma_k applied on top: sigma_k(sigma_g(x)) = sigma_{k*g}(x).
    pub fn apply(&self, k: usize, group: &FiniteGroup) -> Term {
        Term { g: group.mul(k, self.g), var: self.var.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    Rel(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }
    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::True | Formula::False => BTreeSet::new(),
            Formula::Eq(a, b) | Formula::Rel(a, b) => {
                [a.var.clone(), b.var.clone()].into_iter().collect()
            }
            Formula::Not(f) => f.free_vars(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Rel(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.quantifier_depth() == 0
    }

    pub fn uses_rel(&self) -> bool {
        match self {
            Formula::Rel(..) => true,
            Formula::True | Formula::False | Formula::Eq(..) => false,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.uses_rel(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.uses_rel() || b.uses_rel()
            }
        }
    }

    fn max_group_index(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Eq(a, b) | Formula::Rel(a, b) => a.g.max(b.g),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.max_group_index(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.max_group_index().max(b.max_group_index())
            }
        }
    }

    fn substitute(&self, var: &str, t: &Term, group: &FiniteGroup) -> Formula {
        let subst_term = |u: &Term| -> Term {
            if u.var == var {
                Term { g: group.mul(u.g, t.g), var: t.var.clone() }
            } else {
                u.clone()
            }
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Eq(a, b) => Formula::Eq(subst_term(a), subst_term(b)),
            Formula::Rel(a, b) => Formula::Rel(subst_term(a), subst_term(b)),
            Formula::Not(f) => Formula::not(f.substitute(var, t, group)),
            Formula::And(a, b) => {
                Formula::and(a.substitute(var, t, group), b.substitute(var, t, group))
            }
            Formula::Or(a, b) => {
                Formula::or(a.substitute(var, t, group), b.substitute(var, t, group))
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute(var, t, group), b.substitute(var, t, group))
            }
            Formula::Exists(v, f) if v != var => {
                Formula::Exists(v.clone(), Box::new(f.substitute(var, t, group)))
            }
            Formula::Forall(v, f) if v != var => {
                Formula::Forall(v.clone(), Box::new(f.substitute(var, t, group)))
            }
            q => q.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// display (re-parseable text form)
// ---------------------------------------------------------------------------

pub struct FormulaDisplay<'a> {
    pub formula: &'a Formula,
    pub group: &'a FiniteGroup,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.formula, self.group)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, group: &FiniteGroup) -> fmt::Result {
    if t.g != group.identity {
        write!(f, "{}*", group.names[t.g])?;
    }
    write!(f, "{}", t.var)
}

/// A quantifier extends as far right as possible, so it needs parentheses in
/// operand position.
fn write_operand(f: &mut fmt::Formatter<'_>, phi: &Formula, group: &FiniteGroup) -> fmt::Result {
    if matches!(phi, Formula::Exists(..) | Formula::Forall(..)) {
        write!(f, "(")?;
        write_formula(f, phi, group)?;
        write!(f, ")")
    } else {
        write_formula(f, phi, group)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula, group: &FiniteGroup) -> fmt::Result {
    match phi {
        Formula::True => write!(f, "true"),
        Formula::False => write!(f, "false"),
        Formula::Eq(a, b) => {
            write_term(f, a, group)?;
            write!(f, " = ")?;
            write_term(f, b, group)
        }
        Formula::Rel(a, b) => {
            write!(f, "R(")?;
            write_term(f, a, group)?;
            write!(f, ", ")?;
            write_term(f, b, group)?;
            write!(f, ")")
        }
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Eq(a, b) => {
                write_term(f, a, group)?;
                write!(f, " != ")?;
                write_term(f, b, group)
            }
            other => {
                write!(f, "!(")?;
                write_formula(f, other, group)?;
                write!(f, ")")
            }
        },
        Formula::And(a, b) => {
            write!(f, "(")?;
            write_operand(f, a, group)?;
            write!(f, " & ")?;
            write_operand(f, b, group)?;
            write!(f, ")")
        }
        Formula::Or(a, b) => {
            write!(f, "(")?;
            write_operand(f, a, group)?;
            write!(f, " | ")?;
            write_operand(f, b, group)?;
            write!(f, ")")
        }
        Formula::Implies(a, b) => {
            write!(f, "(")?;
            write_operand(f, a, group)?;
            write!(f, " -> ")?;
            write_operand(f, b, group)?;
            write!(f, ")")
        }
        Formula::Exists(v, inner) => {
            write!(f, "E {v}. ")?;
            write_formula(f, inner, group)
        }
        Formula::Forall(v, inner) => {
            write!(f, "A {v}. ")?;
            write_formula(f, inner, group)
        }
    }
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    group: &'a FiniteGroup,
    scope: Vec<String>,
}

/// Parse a formula against a group (element names resolve to indices).
///
/// Grammar: formula := quant | impl; quant := ("E"|"A") VAR "." formula;
/// impl := or ("->" or)?; or := and ("|" and)*; and := unary ("&" unary)*;
/// unary := "!" unary | atom | "(" formula ")"; atom := term ("="|"!=") term
/// | "R(" term "," term ")" | "true" | "false"; term := (ELT ("*"|"\u{b7}"))? VAR.
pub fn parse(text: &str, group: &FiniteGroup) -> Result<Formula, LogicError> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, group, scope: Vec::new() };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> LogicError {
        LogicError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && (self.text[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() {
            let c = self.text[self.pos] as char;
            let ok = if self.pos == start {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        self.skip_ws();
        let save = self.pos;
        if let Some(id) = self.ident() {
            if (id == "E" || id == "A") && self.peek().is_some() {
                let var = self.ident().ok_or_else(|| self.err("expected variable after quantifier"))?;
                if !self.eat(".") {
                    return Err(self.err("expected '.' after quantified variable"));
                }
                if self.scope.contains(&var) {
                    return Err(LogicError::Syntax {
                        pos: self.pos,
                        msg: format!("variable {var:?} rebound in nested quantifier"),
                    });
                }
                self.scope.push(var.clone());
                let body = self.formula()?;
                self.scope.pop();
                return Ok(if id == "E" {
                    Formula::exists(&var, body)
                } else {
                    Formula::forall(&var, body)
                });
            }
            self.pos = save;
        }
        self.implication()
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.disjunction()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut f = self.conjunction()?;
        loop {
            self.skip_ws();
            // do not consume "->"'s dash or "|" ambiguity: only single '|'
            if self.peek() == Some(b'|') {
                self.pos += 1;
                let rhs = self.conjunction()?;
                f = Formula::or(f, rhs);
            } else {
                return Ok(f);
            }
        }
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut f = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            f = Formula::and(f, rhs);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        self.skip_ws();
        if self.eat("!") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let f = self.formula()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(f);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        self.skip_ws();
        let save = self.pos;
        if let Some(id) = self.ident() {
            match id.as_str() {
                "true" => return Ok(Formula::True),
                "false" => return Ok(Formula::False),
                "R" => {
                    if self.eat("(") {
                        let t1 = self.term()?;
                        if !self.eat(",") {
                            return Err(self.err("expected ',' in R(...)"));
                        }
                        let t2 = self.term()?;
                        if !self.eat(")") {
                            return Err(self.err("expected ')' after R(...)"));
                        }
                        return Ok(Formula::Rel(t1, t2));
                    }
                    self.pos = save;
                }
                _ => {
                    self.pos = save;
                }
            }
        }
        let t1 = self.term()?;
        self.skip_ws();
        if self.eat("!=") {
            let t2 = self.term()?;
            return Ok(Formula::not(Formula::Eq(t1, t2)));
        }
        if self.eat("=") {
            let t2 = self.term()?;
            return Ok(Formula::Eq(t1, t2));
        }
        Err(self.err("expected '=' or '!=' after term"))
    }

    fn term(&mut self) -> Result<Term, LogicError> {
        self.skip_ws();
        let save = self.pos;
        let first = self.ident().ok_or_else(|| self.err("expected a term"))?;
        self.skip_ws();
        let applied = if self.text[self.pos..].starts_with("\u{b7}".as_bytes()) {
            self.pos += "\u{b7}".len();
            true
        } else if self.peek() == Some(b'*') {
            self.pos += 1;
            true
        } else {
            false
        };
        if applied {
            let g = self
                .group
                .element_index(&first)
                .ok_or(LogicError::UnknownGroupElement(first))?;
            let var = self.ident().ok_or_else(|| self.err("expected variable after group element"))?;
            self.check_var(&var)?;
            Ok(Term { g, var })
        } else {
            self.pos = save;
            let var = self.ident().unwrap();
            self.check_var(&var)?;
            Ok(Term { g: self.group.identity, var })
        }
    }

    fn check_var(&self, var: &str) -> Result<(), LogicError> {
        // a variable is fine if quantified in scope or globally free;
        // only clashes with group element names are rejected
        if self.group.element_index(var).is_some() && !self.scope.contains(&var.to_string()) {
            return Err(LogicError::UnboundVariable(var.to_string()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

pub type Assignment = Vec<(String, usize)>;

fn lookup(asg: &Assignment, var: &str) -> Option<usize> {
    asg.iter().rev().find(|(v, _)| v == var).map(|(_, x)| *x)
}

fn term_value(m: &GStructure, t: &Term, asg: &Assignment) -> Result<usize, LogicError> {
    let x = lookup(asg, &t.var).ok_or_else(|| LogicError::UnassignedVariable(t.var.clone()))?;
    if t.g >= m.group().order {
        return Err(LogicError::SignatureMismatch("group element out of range".into()));
    }
    Ok(m.act(t.g, x))
}

/// Standard Tarski satisfaction in the finite structure.
pub fn eval(m: &GStructure, phi: &Formula, asg: &Assignment) -> Result<bool, LogicError> {
    match phi {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::Eq(a, b) => Ok(term_value(m, a, asg)? == term_value(m, b, asg)?),
        Formula::Rel(a, b) => {
            if m.signature() == SignatureKind::Empty {
                return Err(LogicError::SignatureMismatch("R in an empty signature".into()));
            }
            Ok(m.has_rel(term_value(m, a, asg)?, term_value(m, b, asg)?))
        }
        Formula::Not(f) => Ok(!eval(m, f, asg)?),
        Formula::And(a, b) => Ok(eval(m, a, asg)? && eval(m, b, asg)?),
        Formula::Or(a, b) => Ok(eval(m, a, asg)? || eval(m, b, asg)?),
        Formula::Implies(a, b) => Ok(!eval(m, a, asg)? || eval(m, b, asg)?),
        Formula::Exists(v, f) => {
            let mut asg2 = asg.clone();
            for x in 0..m.len() {
                asg2.push((v.clone(), x));
                if eval(m, f, &asg2)? {
                    return Ok(true);
                }
                asg2.pop();
            }
            Ok(false)
        }
        Formula::Forall(v, f) => {
            let mut asg2 = asg.clone();
            for x in 0..m.len() {
                asg2.push((v.clone(), x));
                if !eval(m, f, &asg2)? {
                    return Ok(false);
                }
                asg2.pop();
            }
            Ok(true)
        }
    }
}

/// Birth-stratified evaluation on a saturation chain: a quantifier at nesting
/// depth d ranges over the elements born in the first `base_round + d`
/// rounds. For assignments into the early fragment this matches the generic
/// model's truth on formulas within the served saturation bounds.
pub fn eval_stratified(
    state: &SaturationState,
    phi: &Formula,
    asg: &Assignment,
    base_round: usize,
) -> Result<bool, LogicError> {
    fn go(
        st: &SaturationState,
        phi: &Formula,
        asg: &mut Assignment,
        level: usize,
    ) -> Result<bool, LogicError> {
        match phi {
            Formula::Not(f) => Ok(!go(st, f, asg, level)?),
            Formula::And(a, b) => Ok(go(st, a, asg, level)? && go(st, b, asg, level)?),
            Formula::Or(a, b) => Ok(go(st, a, asg, level)? || go(st, b, asg, level)?),
            Formula::Implies(a, b) => Ok(!go(st, a, asg, level)? || go(st, b, asg, level)?),
            Formula::Exists(v, f) => {
                for x in (0..st.structure.len()).rev() {
                    if st.birth_round[x] > level + 1 {
                        continue;
                    }
                    asg.push((v.clone(), x));
                    let r = go(st, f, asg, level + 1)?;
                    asg.pop();
                    if r {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Forall(v, f) => {
                for x in 0..st.structure.len() {
                    if st.birth_round[x] > level + 1 {
                        continue;
                    }
                    asg.push((v.clone(), x));
                    let r = go(st, f, asg, level + 1)?;
                    asg.pop();
                    if !r {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            leaf => eval(&st.structure, leaf, asg),
        }
    }
    let mut asg = asg.clone();
    go(state, phi, &mut asg, base_round)
}

// ---------------------------------------------------------------------------
// quantifier elimination
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ElimStep {
    pub var: String,
    /// the witness-block configurations (no parameters, one y variable) used
    /// by the satisfiable disjuncts
    pub configs: Vec<Configuration>,
}

#[derive(Debug, Clone)]
pub struct QEResult {
    pub input: Formula,
    pub output: Formula,
    pub certificate: Vec<ElimStep>,
}

/// Quantifier elimination modulo the model companion of G-graphs.
pub fn qe_graph(phi: &Formula, group: &FiniteGroup) -> Result<QEResult, LogicError> {
    qe(phi, group, TheoryKind::GraphG)
}

/// Quantifier elimination modulo the model companion of the empty theory.
pub fn qe_empty(phi: &Formula, group: &FiniteGroup) -> Result<QEResult, LogicError> {
    if phi.uses_rel() {
        return Err(LogicError::UnsupportedSignature("empty theory has no relation".into()));
    }
    qe(phi, group, TheoryKind::EmptyG)
}

pub fn qe(phi: &Formula, group: &FiniteGroup, theory: TheoryKind) -> Result<QEResult, LogicError> {
    if phi.max_group_index() >= group.order {
        return Err(LogicError::SignatureMismatch("group element out of range".into()));
    }
    let mut cert = Vec::new();
    let output = eliminate(phi, group, theory, &mut cert);
    Ok(QEResult { input: phi.clone(), output: simplify(&output, theory), certificate: cert })
}

/// Decide a sentence in the chosen model companion by iterated elimination.
pub fn decide_sentence(
    theory: TheoryKind,
    group: &FiniteGroup,
    sentence: &Formula,
) -> Result<bool, LogicError> {
    let free: Vec<String> = sentence.free_vars().into_iter().collect();
    if !free.is_empty() {
        return Err(LogicError::NotASentence(free));
    }
    let result = match theory {
        TheoryKind::GraphG => qe_graph(sentence, group)?,
        TheoryKind::EmptyG => qe_empty(sentence, group)?,
    };
    match result.output {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        other => unreachable!("sentence elimination left {other:?}"),
    }
}

fn eliminate(
    phi: &Formula,
    group: &FiniteGroup,
    theory: TheoryKind,
    cert: &mut Vec<ElimStep>,
) -> Formula {
    match phi {
        Formula::Not(f) => Formula::not(eliminate(f, group, theory, cert)),
        Formula::And(a, b) => {
            Formula::and(eliminate(a, group, theory, cert), eliminate(b, group, theory, cert))
        }
        Formula::Or(a, b) => {
            Formula::or(eliminate(a, group, theory, cert), eliminate(b, group, theory, cert))
        }
        Formula::Implies(a, b) => {
            Formula::implies(eliminate(a, group, theory, cert), eliminate(b, group, theory, cert))
        }
        Formula::Exists(v, f) => {
            let inner = eliminate(f, group, theory, cert);
            eliminate_exists(v, &inner, group, theory, cert)
        }
        Formula::Forall(v, f) => {
            let inner = eliminate(f, group, theory, cert);
            let ex = eliminate_exists(v, &Formula::not(inner), group, theory, cert);
            Formula::not(ex)
        }
        leaf => leaf.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Literal {
    positive: bool,
    is_rel: bool,
    left: Term,
    right: Term,
}

impl Literal {
    fn to_formula(&self) -> Formula {
        let atom = if self.is_rel {
            Formula::Rel(self.left.clone(), self.right.clone())
        } else {
            Formula::Eq(self.left.clone(), self.right.clone())
        };
        if self.positive {
            atom
        } else {
            Formula::not(atom)
        }
    }
}

/// Negation normal form, then distribute to a list of literal conjunctions.
fn dnf(phi: &Formula) -> Option<Vec<Vec<Literal>>> {
    fn go(phi: &Formula, neg: bool) -> Option<Vec<Vec<Literal>>> {
        match phi {
            Formula::True => Some(if neg { vec![] } else { vec![vec![]] }),
            Formula::False => Some(if neg { vec![vec![]] } else { vec![] }),
            Formula::Eq(a, b) => Some(vec![vec![Literal {
                positive: !neg,
                is_rel: false,
                left: a.clone(),
                right: b.clone(),
            }]]),
            Formula::Rel(a, b) => Some(vec![vec![Literal {
                positive: !neg,
                is_rel: true,
                left: a.clone(),
                right: b.clone(),
            }]]),
            Formula::Not(f) => go(f, !neg),
            Formula::And(a, b) if !neg => cross(go(a, false)?, go(b, false)?),
            Formula::And(a, b) => union(go(a, true)?, go(b, true)?),
            Formula::Or(a, b) if !neg => union(go(a, false)?, go(b, false)?),
            Formula::Or(a, b) => cross(go(a, true)?, go(b, true)?),
            Formula::Implies(a, b) if !neg => union(go(a, true)?, go(b, false)?),
            Formula::Implies(a, b) => cross(go(a, false)?, go(b, true)?),
            Formula::Exists(..) | Formula::Forall(..) => None,
        }
    }
    fn union(mut a: Vec<Vec<Literal>>, b: Vec<Vec<Literal>>) -> Option<Vec<Vec<Literal>>> {
        a.extend(b);
        Some(a)
    }
    fn cross(a: Vec<Vec<Literal>>, b: Vec<Vec<Literal>>) -> Option<Vec<Vec<Literal>>> {
        let mut out = Vec::new();
        for x in &a {
            for y in &b {
                let mut z = x.clone();
                z.extend(y.iter().cloned());
                z.sort();
                z.dedup();
                out.push(z);
            }
        }
        Some(out)
    }
    let mut disjuncts = go(phi, false)?;
    for d in &mut disjuncts {
        d.sort();
        d.dedup();
    }
    disjuncts.dedup();
    Some(disjuncts)
}

/// Eliminate one existential over a quantifier-free matrix.
fn eliminate_exists(
    var: &str,
    matrix: &Formula,
    group: &FiniteGroup,
    theory: TheoryKind,
    cert: &mut Vec<ElimStep>,
) -> Formula {
    let disjuncts = dnf(matrix).expect("matrix is quantifier-free after inner elimination");
    let mut out: Option<Formula> = None;
    let mut configs = Vec::new();
    for lits in &disjuncts {
        let piece = eliminate_from_conjunction(var, lits, group, theory, &mut configs);
        let piece = simplify(&piece, theory);
        out = Some(match out {
            None => piece,
            Some(acc) => Formula::or(acc, piece),
        });
    }
    configs.sort();
    configs.dedup();
    cert.push(ElimStep { var: var.to_string(), configs });
    simplify(&out.unwrap_or(Formula::False), theory)
}

/// Core per-disjunct elimination. Either a positive equality pins the witness
/// to a parameter term (substitution case), or the witness can be taken in a
/// fresh orbit with stabilizer H0 generated by the demanded fixed-point
/// equations; the residue is a conjunction of parameter inequalities guarding
/// against pos/neg edge-demand collisions on the quotient.
fn eliminate_from_conjunction(
    var: &str,
    lits: &[Literal],
    group: &FiniteGroup,
    theory: TheoryKind,
    cert_configs: &mut Vec<Configuration>,
) -> Formula {
    let e = group.order;
    let mentions = |t: &Term| t.var == var;
    let mut psi_x: Vec<Literal> = Vec::new();
    let mut stab_pos: BTreeSet<usize> = BTreeSet::new(); // sigma_g(y) = y
    let mut stab_neg: BTreeSet<usize> = BTreeSet::new(); // sigma_g(y) != y
    let mut internal: Vec<(usize, usize, bool)> = Vec::new(); // R(sigma_a y, sigma_b y)
    let mut cross: Vec<(usize, Term, bool)> = Vec::new(); // R(sigma_a y, t)
    let mut subst: Option<Term> = None;

    for lit in lits {
        let ly = mentions(&lit.left);
        let ry = mentions(&lit.right);
        match (ly, ry, lit.is_rel) {
            (false, false, _) => psi_x.push(lit.clone()),
            (true, true, false) => {
                // sigma_a(y) ~ sigma_b(y): rewrite to sigma_{b^-1 a}(y) ~ y
                let d = group.mul(group.inv(lit.right.g), lit.left.g);
                if lit.positive {
                    if d != group.identity {
                        stab_pos.insert(d);
                    }
                } else if d == group.identity {
                    return Formula::False; // y != y
                } else {
                    stab_neg.insert(d);
                }
            }
            (true, true, true) => internal.push((lit.left.g, lit.right.g, lit.positive)),
            (true, false, false) | (false, true, false) => {
                let (gy, t) = if ly {
                    (lit.left.g, lit.right.clone())
                } else {
                    (lit.right.g, lit.left.clone())
                };
                // sigma_gy(y) ~ t normalizes to y ~ sigma_{gy^-1}(t)
                let t0 = t.apply(group.inv(gy), group);
                if lit.positive {
                    if subst.is_none() {
                        subst = Some(t0);
                    } else {
                        // keep the first; the rest re-checks after substitution
                    }
                } else {
                    // y != t: satisfiable by freshness, no residue
                }
            }
            (true, false, true) | (false, true, true) => {
                let (gy, t) = if ly {
                    (lit.left.g, lit.right.clone())
                } else {
                    (lit.right.g, lit.left.clone())
                };
                let t0 = t.apply(group.inv(gy), group);
                cross.push((group.identity, t0, lit.positive));
            }
        }
    }

    if let Some(t0) = subst {
        // witness equals a parameter term: substitute it everywhere
        let mut out = Formula::True;
        for lit in lits {
            let f = lit.to_formula().substitute(var, &t0, group);
            out = Formula::and(out, f);
        }
        return out;
    }

    // fresh-witness case: smallest admissible stabilizer
    let h0: BTreeSet<usize> =
        group.generated_subgroup(&stab_pos.iter().copied().collect::<Vec<_>>()).into_iter().collect();
    if stab_neg.iter().any(|g| h0.contains(g)) {
        return Formula::False;
    }
    let same_coset = |a: usize, b: usize| h0.contains(&group.mul(group.inv(b), a));

    if theory == TheoryKind::GraphG {
        // internal edge demands on the quotient orbit G/H0
        for &(a, b, pos) in &internal {
            if pos && same_coset(a, b) {
                return Formula::False; // loop demanded
            }
        }
        for &(a, b, pos) in &internal {
            if !pos {
                continue;
            }
            for &(c, d, neg_pos) in &internal {
                if neg_pos {
                    continue;
                }
                // same unordered class pair up to the diagonal G-action
                for k in 0..e {
                    let (ka, kb) = (group.mul(k, a), group.mul(k, b));
                    if (same_coset(ka, c) && same_coset(kb, d))
                        || (same_coset(ka, d) && same_coset(kb, c))
                    {
                        return Formula::False;
                    }
                }
            }
        }
    } else {
        debug_assert!(internal.is_empty() && cross.is_empty());
    }

    // residue: psi_x plus the cross-demand collision guards
    let mut out = Formula::True;
    for lit in &psi_x {
        out = Formula::and(out, lit.to_formula());
    }
    for (_, t_pos, p) in cross.iter().filter(|(_, _, p)| *p) {
        let _ = p;
        for (_, t_neg, _) in cross.iter().filter(|(_, _, p)| !*p) {
            for h in &h0 {
                let ht = t_pos.apply(*h, group);
                out = Formula::and(out, Formula::not(Formula::Eq(ht, t_neg.clone())));
            }
        }
    }

    // certificate: the witness-block configuration actually used
    let terms = TermSet::new(group.clone(), 0, 1);
    let cfg = Configuration::build(terms, |i, j| {
        // term index == group element index for the single y variable
        if same_coset(i, j) {
            Entry::Eq
        } else {
            let edge = internal.iter().any(|&(a, b, pos)| {
                pos && (0..e).any(|k| {
                    let (ka, kb) = (group.mul(k, a), group.mul(k, b));
                    (same_coset(ka, i) && same_coset(kb, j))
                        || (same_coset(ka, j) && same_coset(kb, i))
                })
            });
            if edge {
                Entry::Edge
            } else {
                Entry::NoEdge
            }
        }
    })
    .expect("witness block configuration");
    cert_configs.push(cfg);
    out
}

/// Constant folding plus theory-level literal folding (t = t, loops).
pub fn simplify(phi: &Formula, theory: TheoryKind) -> Formula {
    match phi {
        Formula::Eq(a, b) if a == b => Formula::True,
        Formula::Rel(a, b) if a == b && theory == TheoryKind::GraphG => Formula::False,
        Formula::Not(f) => match simplify(f, theory) {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(inner) => *inner,
            g => Formula::not(g),
        },
        Formula::And(a, b) => match (simplify(a, theory), simplify(b, theory)) {
            (Formula::False, _) | (_, Formula::False) => Formula::False,
            (Formula::True, g) => g,
            (f, Formula::True) => f,
            (f, g) if f == g => f,
            (f, g) => Formula::and(f, g),
        },
        Formula::Or(a, b) => match (simplify(a, theory), simplify(b, theory)) {
            (Formula::True, _) | (_, Formula::True) => Formula::True,
            (Formula::False, g) => g,
            (f, Formula::False) => f,
            (f, g) if f == g => f,
            (f, g) => Formula::or(f, g),
        },
        Formula::Implies(a, b) => match (simplify(a, theory), simplify(b, theory)) {
            (Formula::False, _) => Formula::True,
            (Formula::True, g) => g,
            (_, Formula::True) => Formula::True,
            (f, Formula::False) => simplify(&Formula::not(f), theory),
            (f, g) => Formula::implies(f, g),
        },
        Formula::Exists(v, f) => match simplify(f, theory) {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            g => Formula::Exists(v.clone(), Box::new(g)),
        },
        Formula::Forall(v, f) => match simplify(f, theory) {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            g => Formula::Forall(v.clone(), Box::new(g)),
        },
        leaf => leaf.clone(),
    }
}

// ---------------------------------------------------------------------------
// relativization to the invariants
// ---------------------------------------------------------------------------

/// The translation phi -> phi^G: atoms gain fixed-point guards for their
/// variables, existentials guard the bound variable conjunctively, universals
/// by implication.
pub fn relativize_to_invariants(
    phi: &Formula,
    group: &FiniteGroup,
    generators: &[usize],
) -> Result<Formula, LogicError> {
    if !plain(phi, group) {
        return Err(LogicError::NotPlainFormula);
    }
    let span = group.generated_subgroup(generators);
    if span.len() != group.order {
        return Err(LogicError::NotGenerating(generators.to_vec()));
    }
    Ok(relativize(phi, group, generators))
}

fn plain(phi: &Formula, group: &FiniteGroup) -> bool {
    match phi {
        Formula::True | Formula::False => true,
        Formula::Eq(a, b) | Formula::Rel(a, b) => a.g == group.identity && b.g == group.identity,
        Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => plain(f, group),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            plain(a, group) && plain(b, group)
        }
    }
}

fn fixed_point_guard(var: &str, group: &FiniteGroup, generators: &[usize]) -> Formula {
    let mut out: Option<Formula> = None;
    for &g in generators {
        let eq = Formula::Eq(Term { g, var: var.to_string() }, Term {
            g: group.identity,
            var: var.to_string(),
        });
        out = Some(match out {
            None => eq,
            Some(acc) => Formula::and(acc, eq),
        });
    }
    out.unwrap_or(Formula::True)
}

fn relativize(phi: &Formula, group: &FiniteGroup, generators: &[usize]) -> Formula {
    match phi {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Eq(a, b) | Formula::Rel(a, b) => {
            let mut out = phi.clone();
            let mut vars: Vec<&String> = vec![&a.var];
            if b.var != a.var {
                vars.push(&b.var);
            }
            for v in vars {
                out = Formula::and(out, fixed_point_guard(v, group, generators));
            }
            out
        }
        Formula::Not(f) => Formula::not(relativize(f, group, generators)),
        Formula::And(a, b) => {
            Formula::and(relativize(a, group, generators), relativize(b, group, generators))
        }
        Formula::Or(a, b) => {
            Formula::or(relativize(a, group, generators), relativize(b, group, generators))
        }
        Formula::Implies(a, b) => {
            Formula::implies(relativize(a, group, generators), relativize(b, group, generators))
        }
        Formula::Exists(v, f) => Formula::Exists(
            v.clone(),
            Box::new(Formula::and(
                fixed_point_guard(v, group, generators),
                relativize(f, group, generators),
            )),
        ),
        Formula::Forall(v, f) => Formula::Forall(
            v.clone(),
            Box::new(Formula::implies(
                fixed_point_guard(v, group, generators),
                relativize(f, group, generators),
            )),
        ),
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;
    use crate::structure::GStructure;

    fn z2() -> FiniteGroup {
        builtin::cyclic(2)
    }

    fn swap_graph() -> GStructure {
        GStructure::new(
            SignatureKind::Graph,
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1)],
            z2(),
            vec![vec![0, 1, 2], vec![1, 0, 2]],
        )
        .unwrap()
    }

    #[test]
    fn parse_basic() {
        let g = z2();
        let f = parse("E y. R(y, s*x) & s*y = y", &g).unwrap();
        assert_eq!(
            f,
            Formula::exists(
                "y",
                Formula::and(
                    Formula::Rel(Term { g: 0, var: "y".into() }, Term { g: 1, var: "x".into() }),
                    Formula::Eq(Term { g: 1, var: "y".into() }, Term { g: 0, var: "y".into() }),
                )
            )
        );
        // the unicode middle dot works too
        assert_eq!(parse("s\u{b7}x = x", &g).unwrap(), parse("s*x = x", &g).unwrap());
        let f = parse("A x. E y. R(x,y)", &g).unwrap();
        assert!(matches!(f, Formula::Forall(_, _)));
    }

    #[test]
    fn parse_errors_carry_position() {
        let g = z2();
        assert!(matches!(parse("E y. q*y = y", &g), Err(LogicError::UnknownGroupElement(_))));
        match parse("E y. (y = y", &g) {
            Err(LogicError::Syntax { pos, .. }) => assert!(pos > 0),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn display_round_trips() {
        let g = z2();
        for text in ["E y. (R(y, s*x) & s*y = y)", "A x. E y. R(x, y)", "(x != y | s*x = y)"] {
            let f = parse(text, &g).unwrap();
            let shown = format!("{}", FormulaDisplay { formula: &f, group: &g });
            assert_eq!(parse(&shown, &g).unwrap(), f);
        }
    }

    #[test]
    fn eval_examples() {
        let m = swap_graph();
        let g = m.group().clone();
        let f = parse("R(x, y)", &g).unwrap();
        assert!(eval(&m, &f, &vec![("x".into(), 0), ("y".into(), 1)]).unwrap());
        assert!(eval(&m, &parse("x = x", &g).unwrap(), &vec![("x".into(), 2)]).unwrap());
        assert!(!eval(&m, &parse("s*x = x", &g).unwrap(), &vec![("x".into(), 0)]).unwrap());
        assert!(eval(&m, &parse("s*x = x", &g).unwrap(), &vec![("x".into(), 2)]).unwrap());
        assert!(matches!(
            eval(&m, &f, &vec![("x".into(), 0)]),
            Err(LogicError::UnassignedVariable(_))
        ));
    }

    #[test]
    fn qe_graph_spec_examples() {
        let g = z2();
        // E y. (y != x & !R(y,x) & !R(y, s*x) & s*y = y)  ->  true
        let f = parse("E y. (y != x & !R(y,x) & !R(y,s*x) & s*y = y)", &g).unwrap();
        assert_eq!(qe_graph(&f, &g).unwrap().output, Formula::True);
        // E y. s*y = x  ->  true by substitution
        let f = parse("E y. s*y = x", &g).unwrap();
        assert_eq!(qe_graph(&f, &g).unwrap().output, Formula::True);
        // E y. (s*y = y & s*y != y)  ->  false
        let f = parse("E y. (s*y = y & s*y != y)", &g).unwrap();
        assert_eq!(qe_graph(&f, &g).unwrap().output, Formula::False);
    }

    #[test]
    fn qe_empty_spec_examples() {
        let g = z2();
        let f = parse("E y. (s*y != y & y != x)", &g).unwrap();
        assert_eq!(qe_empty(&f, &g).unwrap().output, Formula::True);
        let f = parse("E y. (s*y = y & s*y != y)", &g).unwrap();
        assert_eq!(qe_empty(&f, &g).unwrap().output, Formula::False);
        // E y. (y = x & s*y != y)  ->  s*x != x
        let f = parse("E y. (y = x & s*y != y)", &g).unwrap();
        let out = qe_empty(&f, &g).unwrap().output;
        assert_eq!(out, parse("s*x != x", &g).unwrap());
        // R is rejected for the empty theory
        let f = parse("E y. R(y, x)", &g).unwrap();
        assert!(matches!(qe_empty(&f, &g), Err(LogicError::UnsupportedSignature(_))));
    }

    #[test]
    fn qe_output_is_quantifier_free_and_idempotent() {
        let g = z2();
        for text in [
            "E y. (R(y,x) & !R(y, s*x))",
            "A y. (R(y,x) -> s*y != y)",
            "E y. A w. (R(y,w) | y = w)",
            "E y. (R(x, y) & R(s*x, y) & s*y = y)",
        ] {
            let f = parse(text, &g).unwrap();
            let r = qe_graph(&f, &g).unwrap();
            assert!(r.output.is_quantifier_free(), "{text}");
            let again = qe_graph(&r.output, &g).unwrap();
            assert_eq!(again.output, r.output, "{text}");
        }
    }

    #[test]
    fn decide_sentences() {
        let g = z2();
        assert!(decide_sentence(TheoryKind::EmptyG, &g, &parse("E y. s*y != y", &g).unwrap()).unwrap());
        assert!(decide_sentence(TheoryKind::EmptyG, &g, &parse("A x. x = x", &g).unwrap()).unwrap());
        assert!(decide_sentence(TheoryKind::GraphG, &g, &parse("A x. E y. R(x,y)", &g).unwrap()).unwrap());
        assert!(
            !decide_sentence(TheoryKind::GraphG, &g, &parse("A x. A y. R(x,y)", &g).unwrap()).unwrap()
        );
        assert!(decide_sentence(TheoryKind::GraphG, &g, &parse("E y. R(y, s*y)", &g).unwrap()).unwrap());
        assert!(matches!(
            decide_sentence(TheoryKind::EmptyG, &g, &parse("x = x", &g).unwrap()),
            Err(LogicError::NotASentence(_))
        ));
    }

    #[test]
    fn term_normalization_is_an_action() {
        let g = builtin::symmetric(3);
        let t = Term { g: g.identity, var: "x".into() };
        for a in 0..g.order {
            for b in 0..g.order {
                let one = t.apply(b, &g).apply(a, &g);
                let two = t.apply(g.mul(a, b), &g);
                assert_eq!(one, two);
            }
        }
    }

    #[test]
    fn relativization_examples() {
        let g = z2();
        let f = parse("R(x, y)", &g).unwrap();
        let rel = relativize_to_invariants(&f, &g, &[1]).unwrap();
        let expected = parse("(R(x,y) & s*x = x) & s*y = y", &g).unwrap();
        assert_eq!(rel, expected);

        let f = parse("E y. R(x, y)", &g).unwrap();
        let rel = relativize_to_invariants(&f, &g, &[1]).unwrap();
        let expected = parse("E y. (s*y = y & ((R(x,y) & s*x = x) & s*y = y))", &g).unwrap();
        assert_eq!(rel, expected);

        // generators must generate
        let v4 = builtin::by_name("z2xz2").unwrap();
        let f = parse("x = y", &v4).unwrap();
        assert!(matches!(
            relativize_to_invariants(&f, &v4, &[1]),
            Err(LogicError::NotGenerating(_))
        ));
        // sigma applications are rejected
        let f = parse("s*x = y", &g).unwrap();
        assert!(matches!(relativize_to_invariants(&f, &g, &[1]), Err(LogicError::NotPlainFormula)));
    }

    #[test]
    fn relativization_soundness_on_structures() {
        let m = swap_graph();
        let g = m.group().clone();
        // invariants of m: just vertex 2; restriction has no edges
        let inv: Vec<usize> = m.invariants().into_iter().collect();
        let (restricted, old) = {
            // restriction carries the same group with the trivial action
            let labels: Vec<String> = inv.iter().map(|&i| m.labels()[i].clone()).collect();
            let action = vec![(0..inv.len()).collect::<Vec<_>>(); g.order];
            (
                GStructure::new(SignatureKind::Graph, labels, &[], g.clone(), action).unwrap(),
                inv.clone(),
            )
        };
        for phi_text in ["E y. R(x, y)", "A y. y = x", "E y. y != x"] {
            let phi = parse(phi_text, &g).unwrap();
            let phi_g = relativize_to_invariants(&phi, &g, &[1]).unwrap();
            for (pos, &elem) in old.iter().enumerate() {
                let lhs = eval(&restricted, &phi, &vec![("x".into(), pos)]).unwrap();
                let rhs = eval(&m, &phi_g, &vec![("x".into(), elem)]).unwrap();
                assert_eq!(lhs, rhs, "{phi_text}");
            }
        }
    }
}
