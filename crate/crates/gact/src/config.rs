//! The configuration calculus for graphs with a G-action.
//!
//! A configuration assigns one of `=`, `R`, `notR` to every pair of closed
//! terms over variables x_1..x_n (the parameter block Z0) and y_1..y_n' (the
//! witness block), where the closed terms are sigma_g applied to a variable.
//! Consistency means realizability in a G-graph; it reduces to three finite
//! checks (equivalence + congruence, equivariance, quotient well-formedness),
//! and the canonical quotient is the witness.

use crate::error::ConfigError;
use crate::group::FiniteGroup;
use crate::structure::{GStructure, SignatureKind};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Closed-term index space for a parameter/witness variable split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSet {
    pub group: FiniteGroup,
    pub n: usize,
    pub n_prime: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VarKind {
    X,
    Y,
}

/// sigma_g(x_var) or sigma_g(y_var), canonically indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConfigTerm {
    pub kind: VarKind,
    pub var: usize,
    pub g: usize,
}

impl TermSet {
    pub fn new(group: FiniteGroup, n: usize, n_prime: usize) -> Self {
        TermSet { group, n, n_prime }
    }

    pub fn z_size(&self) -> usize {
        self.group.order * (self.n + self.n_prime)
    }

    pub fn z0_size(&self) -> usize {
        self.group.order * self.n
    }

    pub fn term(&self, idx: usize) -> ConfigTerm {
        let e = self.group.order;
        let (block, g) = (idx / e, idx % e);
        if block < self.n {
            ConfigTerm { kind: VarKind::X, var: block, g }
        } else {
            ConfigTerm { kind: VarKind::Y, var: block - self.n, g }
        }
    }

    pub fn index(&self, t: ConfigTerm) -> usize {
        let e = self.group.order;
        match t.kind {
            VarKind::X => t.var * e + t.g,
            VarKind::Y => (self.n + t.var) * e + t.g,
        }
    }

    /// Term action: sigma_k applied to sigma_g(v) is sigma_{k*g}(v).
    pub fn apply(&self, k: usize, idx: usize) -> usize {
        let t = self.term(idx);
        self.index(ConfigTerm { g: self.group.mul(k, t.g), ..t })
    }

    pub fn is_x(&self, idx: usize) -> bool {
        idx < self.z0_size()
    }

    fn pair_count(&self) -> usize {
        let z = self.z_size();
        z * (z + 1) / 2
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        let (a, b) = (i.min(j), i.max(j));
        let z = self.z_size();
        a * z - a * (a + 1) / 2 + b
    }
}

/// Pair entry: equal, edge, or distinct-without-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Entry {
    Eq,
    Edge,
    NoEdge,
}

impl Entry {
    pub fn as_str(&self) -> &'static str {
        match self {
            Entry::Eq => "eq",
            Entry::Edge => "r",
            Entry::NoEdge => "nr",
        }
    }

    pub fn parse(s: &str) -> Option<Entry> {
        match s {
            "eq" | "=" => Some(Entry::Eq),
            "r" | "R" => Some(Entry::Edge),
            "nr" | "NR" | "!R" => Some(Entry::NoEdge),
            _ => None,
        }
    }
}

/// Total symmetric entry assignment on the closed term set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub terms: TermSet,
    entries: Vec<Entry>,
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Configuration {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.terms.n, self.terms.n_prime, &self.entries).cmp(&(
            other.terms.n,
            other.terms.n_prime,
            &other.entries,
        ))
    }
}

impl Configuration {
    pub fn build(terms: TermSet, f: impl Fn(usize, usize) -> Entry) -> Result<Self, ConfigError> {
        let z = terms.z_size();
        let mut entries = vec![Entry::Eq; terms.pair_count()];
        for i in 0..z {
            for j in i..z {
                entries[terms.pair_index(i, j)] = if i == j { Entry::Eq } else { f(i, j) };
            }
        }
        let c = Configuration { terms, entries };
        Ok(c)
    }

    pub fn from_entries(terms: TermSet, entries: Vec<Entry>) -> Result<Self, ConfigError> {
        if entries.len() != terms.pair_count() {
            return Err(ConfigError::BadEntryCount { got: entries.len(), want: terms.pair_count() });
        }
        let z = terms.z_size();
        for i in 0..z {
            if entries[terms.pair_index(i, i)] != Entry::Eq {
                return Err(ConfigError::ContradictoryBase(format!("diagonal at term {i}")));
            }
        }
        Ok(Configuration { terms, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[self.terms.pair_index(i, j)]
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Serialization form: ordered (term, term, entry) triples.
    pub fn to_triples(&self) -> Vec<(usize, usize, String)> {
        let z = self.terms.z_size();
        let mut out = Vec::new();
        for i in 0..z {
            for j in i..z {
                out.push((i, j, self.get(i, j).as_str().to_string()));
            }
        }
        out
    }

    /// Restriction of the entry table to the parameter block Z0.
    pub fn z0_restriction(&self) -> Vec<(usize, usize, Entry)> {
        let z0 = self.terms.z0_size();
        let mut out = Vec::new();
        for i in 0..z0 {
            for j in i..z0 {
                out.push((i, j, self.get(i, j)));
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub witness: Option<GStructure>,
    /// class vertex of each term in the witness
    pub term_class: Option<Vec<usize>>,
    pub violation: Option<String>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Realizability check. On success the report carries the canonical quotient
/// witness and the term-to-vertex map.
pub fn is_consistent(q: &Configuration) -> ConsistencyReport {
    let terms = &q.terms;
    let z = terms.z_size();
    let e = terms.group.order;
    let fail = |msg: String| ConsistencyReport {
        consistent: false,
        witness: None,
        term_class: None,
        violation: Some(msg),
    };

    // (b) equivariance under the term action
    for k in 0..e {
        for i in 0..z {
            for j in i..z {
                let (ki, kj) = (terms.apply(k, i), terms.apply(k, j));
                if q.get(i, j) != q.get(ki, kj) {
                    return fail(format!(
                        "equivariance fails: entry({i},{j}) != entry under sigma_{k}"
                    ));
                }
            }
        }
    }

    // (a) equalities form an equivalence relation and a congruence
    let mut uf = UnionFind::new(z);
    for i in 0..z {
        for j in i + 1..z {
            if q.get(i, j) == Entry::Eq {
                uf.union(i, j);
            }
        }
    }
    for i in 0..z {
        for j in i + 1..z {
            if uf.find(i) == uf.find(j) && q.get(i, j) != Entry::Eq {
                return fail(format!("equality is not transitive at pair ({i},{j})"));
            }
        }
    }
    for i in 0..z {
        for j in 0..z {
            for t in 0..z {
                if uf.find(i) == uf.find(j) && q.get(i, t) != q.get(j, t) {
                    return fail(format!(
                        "entries are not well-defined on classes: ({i},{t}) vs ({j},{t})"
                    ));
                }
            }
        }
    }

    // (c) quotient graph with the induced action
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; z];
    for t in 0..z {
        let r = uf.find(t);
        let pos = match reps.iter().position(|&x| x == r) {
            Some(p) => p,
            None => {
                reps.push(r);
                reps.len() - 1
            }
        };
        class_of[t] = pos;
    }
    let nv = reps.len();
    let mut edges = Vec::new();
    for i in 0..z {
        for j in i + 1..z {
            if q.get(i, j) == Entry::Edge {
                edges.push((class_of[i], class_of[j]));
            }
        }
    }
    let labels = (0..nv).map(|c| format!("c{c}")).collect();
    let mut action = vec![vec![0usize; nv]; e];
    for (k, row) in action.iter_mut().enumerate() {
        for c in 0..nv {
            row[c] = class_of[terms.apply(k, reps[c])];
        }
    }
    let witness = match GStructure::new(SignatureKind::Graph, labels, &edges, terms.group.clone(), action) {
        Ok(w) => w,
        Err(e) => return fail(format!("quotient is not a valid G-graph: {e}")),
    };
    // the witness realizes the configuration by construction; verify anyway
    for i in 0..z {
        for j in i + 1..z {
            let (ci, cj) = (class_of[i], class_of[j]);
            let actual = if ci == cj {
                Entry::Eq
            } else if witness.has_rel(ci, cj) {
                Entry::Edge
            } else {
                Entry::NoEdge
            };
            assert_eq!(actual, q.get(i, j), "witness must realize the configuration");
        }
    }
    ConsistencyReport {
        consistent: true,
        witness: Some(witness),
        term_class: Some(class_of),
        violation: None,
    }
}

/// Read the configuration of concrete tuples off a G-graph.
pub fn configuration_of(
    m: &GStructure,
    xs: &[usize],
    ys: &[usize],
) -> Result<Configuration, ConfigError> {
    assert_eq!(m.signature(), SignatureKind::Graph, "configurations live on graphs");
    let terms = TermSet::new(m.group().clone(), xs.len(), ys.len());
    let value = |idx: usize| -> usize {
        let t = terms.term(idx);
        let base = match t.kind {
            VarKind::X => xs[t.var],
            VarKind::Y => ys[t.var],
        };
        m.act(t.g, base)
    };
    Configuration::build(terms.clone(), |i, j| {
        let (a, b) = (value(i), value(j));
        if a == b {
            Entry::Eq
        } else if m.has_rel(a, b) {
            Entry::Edge
        } else {
            Entry::NoEdge
        }
    })
}

/// Base literal for partial configurations.
pub type BaseLiteral = (usize, usize, Entry);

/// All consistent configurations extending the base literals, in canonical
/// (lexicographic entry vector) order.
pub fn enumerate_extensions(
    base: &[BaseLiteral],
    terms: &TermSet,
) -> Result<Vec<Configuration>, ConfigError> {
    search_extensions(base, terms, &|_, _, _| true, None)
}

/// First consistent extension whose witness block stays disjoint from the
/// parameter block (no equality between a y-term and an x-term).
pub fn first_fresh_extension(
    base: &[BaseLiteral],
    terms: &TermSet,
) -> Result<Option<Configuration>, ConfigError> {
    let allowed = |i: usize, j: usize, v: Entry| -> bool {
        !(v == Entry::Eq && terms.is_x(i) != terms.is_x(j))
    };
    Ok(search_extensions(base, terms, &allowed, Some(1))?.into_iter().next())
}

/// First consistent extension subject to an arbitrary per-pair entry filter.
pub(crate) fn first_extension_with(
    base: &[BaseLiteral],
    terms: &TermSet,
    allowed: &dyn Fn(usize, usize, Entry) -> bool,
) -> Result<Option<Configuration>, ConfigError> {
    Ok(search_extensions(base, terms, allowed, Some(1))?.into_iter().next())
}

fn search_extensions(
    base: &[BaseLiteral],
    terms: &TermSet,
    allowed: &dyn Fn(usize, usize, Entry) -> bool,
    limit: Option<usize>,
) -> Result<Vec<Configuration>, ConfigError> {
    let z = terms.z_size();
    let e = terms.group.order;
    let pairs = terms.pair_count();
    let mut assigned: Vec<Option<Entry>> = vec![None; pairs];
    for i in 0..z {
        assigned[terms.pair_index(i, i)] = Some(Entry::Eq);
    }

    // assign with equivariance closure; returns trail of pair indices set
    let assign = |assigned: &mut Vec<Option<Entry>>, i: usize, j: usize, v: Entry| -> Result<Vec<usize>, ()> {
        let mut trail = Vec::new();
        for k in 0..e {
            let (ki, kj) = (terms.apply(k, i), terms.apply(k, j));
            let p = terms.pair_index(ki, kj);
            match assigned[p] {
                Some(old) => {
                    if old != v {
                        for &t in &trail {
                            assigned[t] = None;
                        }
                        return Err(());
                    }
                }
                None => {
                    if !allowed(ki, kj, v) {
                        for &t in &trail {
                            assigned[t] = None;
                        }
                        return Err(());
                    }
                    assigned[p] = Some(v);
                    trail.push(p);
                }
            }
        }
        Ok(trail)
    };

    for &(i, j, v) in base {
        if i >= z || j >= z {
            return Err(ConfigError::BadTerm(i.max(j)));
        }
        if i == j && v != Entry::Eq {
            return Err(ConfigError::ContradictoryBase(format!("term {i} must equal itself")));
        }
        if assign(&mut assigned, i, j, v).is_err() {
            return Err(ConfigError::ContradictoryBase(format!(
                "literal ({i},{j},{}) conflicts under equivariance",
                v.as_str()
            )));
        }
    }

    // base-level equivalence/congruence closure check
    {
        let mut uf = UnionFind::new(z);
        for i in 0..z {
            for j in i + 1..z {
                if assigned[terms.pair_index(i, j)] == Some(Entry::Eq) {
                    uf.union(i, j);
                }
            }
        }
        for i in 0..z {
            for j in 0..z {
                if uf.find(i) != uf.find(j) {
                    continue;
                }
                let pij = terms.pair_index(i, j);
                if matches!(assigned[pij], Some(v) if v != Entry::Eq) {
                    return Err(ConfigError::ContradictoryBase(format!(
                        "equalities in the base force ({i},{j}) to be eq"
                    )));
                }
                for t in 0..z {
                    let (a, b) = (assigned[terms.pair_index(i, t)], assigned[terms.pair_index(j, t)]);
                    if let (Some(a), Some(b)) = (a, b) {
                        if a != b {
                            return Err(ConfigError::ContradictoryBase(format!(
                                "base entries disagree across the equality class of ({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
    }

    // local triple check around a freshly assigned pair
    let triples_ok = |assigned: &Vec<Option<Entry>>, i: usize, j: usize| -> bool {
        for t in 0..z {
            let e_ij = assigned[terms.pair_index(i, j)];
            let e_it = assigned[terms.pair_index(i, t)];
            let e_jt = assigned[terms.pair_index(j, t)];
            let bad = |x: Option<Entry>, y: Option<Entry>, z_: Option<Entry>| {
                x == Some(Entry::Eq) && y.is_some() && z_.is_some() && y != z_
            };
            if bad(e_ij, e_it, e_jt) || bad(e_it, e_ij, e_jt) || bad(e_jt, e_ij, e_it) {
                return false;
            }
        }
        true
    };

    let pair_of = |p: usize| -> (usize, usize) {
        // inverse of pair_index over the packed triangle
        let mut i = 0usize;
        let mut acc = 0usize;
        loop {
            let row = z - i;
            if p < acc + row {
                return (i, i + (p - acc));
            }
            acc += row;
            i += 1;
        }
    };

    let mut out: Vec<Configuration> = Vec::new();
    let mut stack: Vec<(usize, Vec<Entry>, Vec<usize>)> = Vec::new(); // (pair, remaining values, trail)
    let mut cursor = 0usize;
    loop {
        if limit.map_or(false, |l| out.len() >= l) {
            break;
        }
        // advance cursor to next unassigned pair
        while cursor < pairs && assigned[cursor].is_some() {
            cursor += 1;
        }
        if cursor == pairs {
            let entries: Vec<Entry> = assigned.iter().map(|x| x.unwrap()).collect();
            let cand = Configuration { terms: terms.clone(), entries };
            if is_consistent(&cand).consistent {
                out.push(cand);
            }
            // backtrack
            match backtrack(&mut stack, &mut assigned, terms, allowed, &triples_ok, &pair_of) {
                Some(c) => cursor = c,
                None => break,
            }
            continue;
        }
        stack.push((cursor, vec![Entry::NoEdge, Entry::Edge, Entry::Eq], Vec::new()));
        match backtrack(&mut stack, &mut assigned, terms, allowed, &triples_ok, &pair_of) {
            Some(c) => cursor = c,
            None => break,
        }
    }
    out.sort();
    Ok(out)
}

/// Pop values/frames until a branchable value is placed; returns the cursor
/// to resume from.
fn backtrack(
    stack: &mut Vec<(usize, Vec<Entry>, Vec<usize>)>,
    assigned: &mut Vec<Option<Entry>>,
    terms: &TermSet,
    allowed: &dyn Fn(usize, usize, Entry) -> bool,
    triples_ok: &dyn Fn(&Vec<Option<Entry>>, usize, usize) -> bool,
    pair_of: &dyn Fn(usize) -> (usize, usize),
) -> Option<usize> {
    let e = terms.group.order;
    while let Some((pair, values, trail)) = stack.last_mut() {
        // undo previous attempt at this frame
        for &t in trail.iter() {
            assigned[t] = None;
        }
        trail.clear();
        let (i, j) = pair_of(*pair);
        let mut placed = false;
        while let Some(v) = values.pop() {
            // try assign with equivariance
            let mut local = Vec::new();
            let mut ok = true;
            for k in 0..e {
                let (ki, kj) = (terms.apply(k, i), terms.apply(k, j));
                let p = terms.pair_index(ki, kj);
                match assigned[p] {
                    Some(old) => {
                        if old != v {
                            ok = false;
                            break;
                        }
                    }
                    None => {
                        if !allowed(ki, kj, v) {
                            ok = false;
                            break;
                        }
                        assigned[p] = Some(v);
                        local.push(p);
                    }
                }
            }
            if ok {
                for &p in &local {
                    let (a, b) = pair_of(p);
                    if !triples_ok(assigned, a, b) {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                *trail = local;
                placed = true;
                break;
            } else {
                for &t in &local {
                    assigned[t] = None;
                }
            }
        }
        if placed {
            let resume = *pair + 1;
            return Some(resume);
        }
        stack.pop();
    }
    None
}
