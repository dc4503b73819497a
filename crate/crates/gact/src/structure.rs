//! Finite first-order structures carrying a group action by automorphisms.
//!
//! Supported signatures: pure equality, one irreflexive symmetric binary
//! relation (graphs), one strict linear order. A [`GStructure`] validates the
//! action axioms on construction (identity acts as identity, composition law,
//! each action map an automorphism), so no operation can observe an invalid
//! structure.

use crate::error::StructureError;
use crate::group::FiniteGroup;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SignatureKind {
    Empty,
    Graph,
    Order,
}

impl SignatureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignatureKind::Empty => "empty",
            SignatureKind::Graph => "graph",
            SignatureKind::Order => "order",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "empty" => Some(SignatureKind::Empty),
            "graph" => Some(SignatureKind::Graph),
            "order" => Some(SignatureKind::Order),
            _ => None,
        }
    }
}

/// A finite structure with a G-action by automorphisms.
///
/// For `Graph` the relation set holds each undirected edge once, normalized
/// as `(min, max)`. For `Order` it holds every pair `(i, j)` with `i < j` in
/// the order. For `Empty` it is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GStructure {
    signature: SignatureKind,
    labels: Vec<String>,
    rel: BTreeSet<(usize, usize)>,
    group: FiniteGroup,
    action: Vec<Vec<usize>>,
}

impl GStructure {
    pub fn new(
        signature: SignatureKind,
        labels: Vec<String>,
        rel_pairs: &[(usize, usize)],
        group: FiniteGroup,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, StructureError> {
        let n = labels.len();
        {
            let mut seen = BTreeSet::new();
            for l in &labels {
                if !seen.insert(l.clone()) {
                    return Err(StructureError::DuplicateLabel(l.clone()));
                }
            }
        }
        for &(i, j) in rel_pairs {
            if i >= n || j >= n {
                return Err(StructureError::BadPair(i, j));
            }
        }
        let rel: BTreeSet<(usize, usize)> = match signature {
            SignatureKind::Empty => {
                if !rel_pairs.is_empty() {
                    return Err(StructureError::SignatureMismatch { expected: "empty".into() });
                }
                BTreeSet::new()
            }
            SignatureKind::Graph => {
                let mut set = BTreeSet::new();
                for &(i, j) in rel_pairs {
                    if i == j {
                        return Err(StructureError::Reflexive(i));
                    }
                    set.insert((i.min(j), i.max(j)));
                }
                set
            }
            SignatureKind::Order => {
                let set: BTreeSet<(usize, usize)> = rel_pairs.iter().copied().collect();
                for i in 0..n {
                    if set.contains(&(i, i)) {
                        return Err(StructureError::NotTotalOrder);
                    }
                    for j in 0..n {
                        if i != j && set.contains(&(i, j)) == set.contains(&(j, i)) {
                            return Err(StructureError::NotTotalOrder);
                        }
                    }
                }
                for &(i, j) in &set {
                    for k in 0..n {
                        if set.contains(&(j, k)) && !set.contains(&(i, k)) {
                            return Err(StructureError::NotTotalOrder);
                        }
                    }
                }
                set
            }
        };
        if action.len() != group.order {
            return Err(StructureError::ActionNotPermutation { g: "<missing>".into() });
        }
        for (g, perm) in action.iter().enumerate() {
            let distinct: BTreeSet<usize> = perm.iter().copied().collect();
            if perm.len() != n || distinct.len() != n || perm.iter().any(|&x| x >= n) {
                return Err(StructureError::ActionNotPermutation { g: group.names[g].clone() });
            }
        }
        if action[group.identity] != (0..n).collect::<Vec<_>>() {
            return Err(StructureError::IdentityActs);
        }
        for g in 0..group.order {
            for h in 0..group.order {
                let gh = group.mul(g, h);
                for x in 0..n {
                    if action[g][action[h][x]] != action[gh][x] {
                        return Err(StructureError::ActionComposition {
                            g: group.names[g].clone(),
                            h: group.names[h].clone(),
                        });
                    }
                }
            }
        }
        let m = GStructure { signature, labels, rel, group, action };
        for g in 0..m.group.order {
            for i in 0..n {
                for j in 0..n {
                    if m.has_rel(i, j) != m.has_rel(m.action[g][i], m.action[g][j]) {
                        return Err(StructureError::NotAutomorphism { g: m.group.names[g].clone() });
                    }
                }
            }
        }
        Ok(m)
    }

    /// Structure with no elements.
    pub fn empty(signature: SignatureKind, group: FiniteGroup) -> Self {
        let order = group.order;
        GStructure::new(signature, vec![], &[], group, vec![vec![]; order]).unwrap()
    }

    /// Assembly without the quadratic validation pass, for constructions that
    /// are correct by construction (free amalgams in the saturation loop).
    /// Graph pairs must already be normalized as (min, max). Small results are
    /// still fully validated as a guard.
    pub(crate) fn assemble_unchecked(
        signature: SignatureKind,
        labels: Vec<String>,
        rel: BTreeSet<(usize, usize)>,
        group: FiniteGroup,
        action: Vec<Vec<usize>>,
    ) -> Self {
        if labels.len() <= 64 {
            let pairs: Vec<(usize, usize)> = rel.iter().copied().collect();
            return GStructure::new(signature, labels, &pairs, group, action)
                .expect("small assembled structure must validate");
        }
        GStructure { signature, labels, rel, group, action }
    }

    pub fn signature(&self) -> SignatureKind {
        self.signature
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rel_pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.rel
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn action_maps(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn has_rel(&self, i: usize, j: usize) -> bool {
        match self.signature {
            SignatureKind::Empty => false,
            SignatureKind::Graph => i != j && self.rel.contains(&(i.min(j), i.max(j))),
            SignatureKind::Order => self.rel.contains(&(i, j)),
        }
    }

    /// G-orbit closure of a set of elements.
    pub fn orbit(&self, set: &BTreeSet<usize>) -> Result<BTreeSet<usize>, StructureError> {
        let mut out = BTreeSet::new();
        for &x in set {
            if x >= self.len() {
                return Err(StructureError::UnknownElement(x));
            }
            for g in 0..self.group.order {
                out.insert(self.action[g][x]);
            }
        }
        Ok(out)
    }

    pub fn orbit_of(&self, x: usize) -> BTreeSet<usize> {
        (0..self.group.order).map(|g| self.action[g][x]).collect()
    }

    /// Elements fixed by every action map.
    pub fn invariants(&self) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&x| (0..self.group.order).all(|g| self.action[g][x] == x))
            .collect()
    }

    /// Full atomic diagram of the orbit closure of a tuple, over the terms
    /// sigma_g(x_i). Equalities once per unordered term pair, relation facts
    /// for every ordered pair.
    pub fn atomic_diagram(&self, tuple: &[usize]) -> Result<Vec<DiagramLiteral>, StructureError> {
        for &x in tuple {
            if x >= self.len() {
                return Err(StructureError::UnknownElement(x));
            }
        }
        let terms: Vec<DiagramTerm> = (0..tuple.len())
            .flat_map(|var| (0..self.group.order).map(move |g| DiagramTerm { g, var }))
            .collect();
        let value = |t: &DiagramTerm| self.action[t.g][tuple[t.var]];
        let mut out = Vec::new();
        for (a, t1) in terms.iter().enumerate() {
            for (b, t2) in terms.iter().enumerate() {
                if a <= b {
                    out.push(DiagramLiteral::Eq(*t1, *t2, value(t1) == value(t2)));
                }
                if self.signature != SignatureKind::Empty && a != b {
                    out.push(DiagramLiteral::Rel(*t1, *t2, self.has_rel(value(t1), value(t2))));
                }
            }
        }
        Ok(out)
    }

    /// Substructure induced on an action-closed subset, with the index map
    /// back into `self`.
    pub fn induced(&self, subset: &BTreeSet<usize>) -> Result<(GStructure, Vec<usize>), StructureError> {
        let closed = self.orbit(subset)?;
        if &closed != subset {
            return Err(StructureError::BadEmbedding("subset is not action-closed".into()));
        }
        let old: Vec<usize> = subset.iter().copied().collect();
        let pos: BTreeMap<usize, usize> = old.iter().enumerate().map(|(p, &o)| (o, p)).collect();
        let labels = old.iter().map(|&o| self.labels[o].clone()).collect();
        let rel: Vec<(usize, usize)> = self
            .rel
            .iter()
            .filter(|(i, j)| pos.contains_key(i) && pos.contains_key(j))
            .map(|(i, j)| (pos[i], pos[j]))
            .collect();
        let action = (0..self.group.order)
            .map(|g| old.iter().map(|&o| pos[&self.action[g][o]]).collect())
            .collect();
        let m = GStructure::new(self.signature, labels, &rel, self.group.clone(), action)?;
        Ok((m, old))
    }

    pub fn relational_view(&self) -> RelationalView {
        let n = self.len();
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                adj[i][j] = self.has_rel(i, j);
            }
        }
        RelationalView { n, adj }
    }

    /// Relational view of the induced substructure on any subset (no
    /// action-closedness needed; the action is ignored).
    pub fn relational_view_of(&self, subset: &[usize]) -> RelationalView {
        let n = subset.len();
        let mut adj = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                adj[a][b] = self.has_rel(subset[a], subset[b]);
            }
        }
        RelationalView { n, adj }
    }
}

/// The term sigma_g(x_var) over some ambient tuple of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramTerm {
    pub g: usize,
    pub var: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramLiteral {
    /// Eq(t1, t2, holds)
    Eq(DiagramTerm, DiagramTerm, bool),
    /// Rel(t1, t2, holds)
    Rel(DiagramTerm, DiagramTerm, bool),
}

// ---------------------------------------------------------------------------
// bijection search engine
// ---------------------------------------------------------------------------

/// Plain relational data (no action): adjacency matrix over positions.
#[derive(Debug, Clone)]
pub struct RelationalView {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

pub(crate) struct MapSearch<'a> {
    pub from: &'a RelationalView,
    pub to: &'a RelationalView,
    /// optional action maps over positions; a found map f must satisfy
    /// f(act_from[g][x]) = act_to[g][f(x)]
    pub act_from: Option<&'a [Vec<usize>]>,
    pub act_to: Option<&'a [Vec<usize>]>,
}

impl<'a> MapSearch<'a> {
    fn degree(v: &RelationalView, i: usize) -> (usize, usize) {
        let out = v.adj[i].iter().filter(|&&b| b).count();
        let inn = (0..v.n).filter(|&j| v.adj[j][i]).count();
        (out, inn)
    }

    fn compatible(&self, map: &[Option<usize>], i: usize, c: usize) -> bool {
        for (j, mj) in map.iter().enumerate() {
            if let Some(d) = mj {
                if self.from.adj[i][j] != self.to.adj[c][*d] || self.from.adj[j][i] != self.to.adj[*d][c] {
                    return false;
                }
            }
        }
        true
    }

    /// Assign i -> c and close under the action constraint. Returns the list
    /// of assignments made; on conflict everything is rolled back.
    fn assign(
        &self,
        map: &mut [Option<usize>],
        used: &mut [bool],
        i: usize,
        c: usize,
    ) -> Option<Vec<usize>> {
        let mut made = Vec::new();
        let mut queue = vec![(i, c)];
        while let Some((x, y)) = queue.pop() {
            match map[x] {
                Some(old) => {
                    if old != y {
                        Self::undo(map, used, &made);
                        return None;
                    }
                    continue;
                }
                None => {
                    if used[y] || !self.compatible(map, x, y) {
                        Self::undo(map, used, &made);
                        return None;
                    }
                    map[x] = Some(y);
                    used[y] = true;
                    made.push(x);
                    if let (Some(af), Some(at)) = (self.act_from, self.act_to) {
                        for g in 0..af.len() {
                            queue.push((af[g][x], at[g][y]));
                        }
                    }
                }
            }
        }
        Some(made)
    }

    fn undo(map: &mut [Option<usize>], used: &mut [bool], made: &[usize]) {
        for &x in made {
            if let Some(y) = map[x].take() {
                used[y] = false;
            }
        }
    }

    /// Depth-first search for bijections extending `partial`.
    /// Collects up to `limit` complete maps (None = first only).
    pub fn search(
        &self,
        partial: &[(usize, usize)],
        limit: Option<usize>,
        rng: Option<&mut ChaCha8Rng>,
    ) -> Vec<Vec<usize>> {
        if self.from.n != self.to.n {
            return vec![];
        }
        let n = self.from.n;
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        let mut seed_assignments = Vec::new();
        for &(i, c) in partial {
            match self.assign(&mut map, &mut used, i, c) {
                Some(made) => seed_assignments.extend(made),
                None => return vec![],
            }
        }
        let deg_from: Vec<(usize, usize)> = (0..n).map(|i| Self::degree(self.from, i)).collect();
        let deg_to: Vec<(usize, usize)> = (0..n).map(|i| Self::degree(self.to, i)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        if let Some(r) = rng {
            order.shuffle(r);
        }
        let mut out = Vec::new();
        self.dfs(&mut map, &mut used, &deg_from, &deg_to, &order, limit, &mut out);
        out
    }

    fn dfs(
        &self,
        map: &mut [Option<usize>],
        used: &mut [bool],
        deg_from: &[(usize, usize)],
        deg_to: &[(usize, usize)],
        order: &[usize],
        limit: Option<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if let Some(l) = limit {
            if out.len() >= l {
                return;
            }
        } else if !out.is_empty() {
            return;
        }
        let next = (0..map.len()).find(|&i| map[i].is_none());
        let i = match next {
            None => {
                out.push(map.iter().map(|x| x.unwrap()).collect());
                return;
            }
            Some(i) => i,
        };
        for &c in order {
            if used[c] || deg_from[i] != deg_to[c] {
                continue;
            }
            if let Some(made) = self.assign(map, used, i, c) {
                self.dfs(map, used, deg_from, deg_to, order, limit, out);
                Self::undo(map, used, &made);
                if limit.map_or(!out.is_empty(), |l| out.len() >= l) {
                    return;
                }
            }
        }
    }
}

/// First automorphism of `m` (as an L-structure, or as an L^G-structure when
/// `respect_action`) extending the given partial map, if any.
pub fn find_automorphism(
    m: &GStructure,
    partial: &[(usize, usize)],
    respect_action: bool,
) -> Option<Vec<usize>> {
    let view = m.relational_view();
    let search = MapSearch {
        from: &view,
        to: &view,
        act_from: respect_action.then(|| m.action_maps()),
        act_to: respect_action.then(|| m.action_maps()),
    };
    search.search(partial, None, None).into_iter().next()
}

/// A pseudo-random automorphism, deterministic in the rng state.
pub fn random_automorphism(m: &GStructure, respect_action: bool, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let view = m.relational_view();
    let search = MapSearch {
        from: &view,
        to: &view,
        act_from: respect_action.then(|| m.action_maps()),
        act_to: respect_action.then(|| m.action_maps()),
    };
    search
        .search(&[], None, Some(rng))
        .into_iter()
        .next()
        .expect("identity always exists")
}

/// First G-equivariant isomorphism between two structures over the same group.
pub fn find_g_isomorphism(m1: &GStructure, m2: &GStructure) -> Option<Vec<usize>> {
    if m1.group() != m2.group() || m1.signature() != m2.signature() || m1.len() != m2.len() {
        return None;
    }
    let v1 = m1.relational_view();
    let v2 = m2.relational_view();
    let search = MapSearch {
        from: &v1,
        to: &v2,
        act_from: Some(m1.action_maps()),
        act_to: Some(m2.action_maps()),
    };
    search.search(&[], None, None).into_iter().next()
}

// ---------------------------------------------------------------------------
// extension pairs and the finite-scale extension predicates
// ---------------------------------------------------------------------------

/// An embedding small -> big of G-structures, validated on construction.
#[derive(Debug, Clone)]
pub struct ExtensionPair {
    pub small: GStructure,
    pub big: GStructure,
    pub embedding: Vec<usize>,
}

impl ExtensionPair {
    pub fn new(small: GStructure, big: GStructure, embedding: Vec<usize>) -> Result<Self, StructureError> {
        if small.group() != big.group() || small.signature() != big.signature() {
            return Err(StructureError::BadEmbedding("signature or group mismatch".into()));
        }
        if embedding.len() != small.len() {
            return Err(StructureError::BadEmbedding("length mismatch".into()));
        }
        let distinct: BTreeSet<usize> = embedding.iter().copied().collect();
        if distinct.len() != embedding.len() || embedding.iter().any(|&x| x >= big.len()) {
            return Err(StructureError::BadEmbedding("not injective into big".into()));
        }
        for i in 0..small.len() {
            for j in 0..small.len() {
                if small.has_rel(i, j) != big.has_rel(embedding[i], embedding[j]) {
                    return Err(StructureError::BadEmbedding(format!(
                        "relation not preserved/reflected at ({i}, {j})"
                    )));
                }
            }
            for g in 0..small.group().order {
                if embedding[small.act(g, i)] != big.act(g, embedding[i]) {
                    return Err(StructureError::BadEmbedding(format!(
                        "does not commute with the action at element {i}"
                    )));
                }
            }
        }
        Ok(ExtensionPair { small, big, embedding })
    }

    pub fn identity(m: &GStructure) -> Self {
        ExtensionPair {
            small: m.clone(),
            big: m.clone(),
            embedding: (0..m.len()).collect(),
        }
    }
}

/// Witnessing system returned when an extension fails to be existentially
/// closed: a conjunction of literals over parameter variables (the orbit
/// representatives of the small structure, listed in `params`) and
/// `witness_vars` existential variables. Variable indices below
/// `params.len()` are parameters, the rest are existential.
#[derive(Debug, Clone)]
pub struct WitnessSystem {
    pub params: Vec<usize>,
    pub witness_vars: usize,
    pub literals: Vec<DiagramLiteral>,
}

#[derive(Debug, Clone)]
pub struct EcOutcome {
    pub closed: bool,
    pub counterexample: Option<WitnessSystem>,
    pub nodes: usize,
}

/// Existential closedness of `pair.small` in `pair.big`, exhaustively over
/// realized quantifier-free types with at most `var_bound` witness variables.
pub fn is_existentially_closed(
    pair: &ExtensionPair,
    var_bound: usize,
    node_cap: usize,
) -> Result<EcOutcome, StructureError> {
    let small = &pair.small;
    let big = &pair.big;
    let image: Vec<usize> = pair.embedding.clone();
    let e = small.group().order;
    let mut nodes = 0usize;

    let tuple_matches = |btuple: &[usize], atuple: &[usize]| -> bool {
        let m = btuple.len();
        // closed-term values on both sides
        let bval = |g: usize, k: usize| big.act(g, btuple[k]);
        let aval = |g: usize, k: usize| small.act(g, atuple[k]);
        for g in 0..e {
            for k in 0..m {
                for h in 0..e {
                    for l in 0..m {
                        if (bval(g, k) == bval(h, l)) != (aval(g, k) == aval(h, l)) {
                            return false;
                        }
                        if big.has_rel(bval(g, k), bval(h, l)) != small.has_rel(aval(g, k), aval(h, l)) {
                            return false;
                        }
                    }
                }
                for s in 0..small.len() {
                    if (bval(g, k) == image[s]) != (aval(g, k) == s) {
                        return false;
                    }
                    if big.has_rel(bval(g, k), image[s]) != small.has_rel(aval(g, k), s) {
                        return false;
                    }
                }
            }
        }
        true
    };

    for m in 1..=var_bound {
        let mut btuple = vec![0usize; m];
        'outer: loop {
            if big.len() == 0 {
                break;
            }
            nodes += 1;
            if nodes > node_cap {
                return Err(StructureError::BudgetExceeded(nodes));
            }
            // look for a matching tuple in small
            let mut atuple = vec![0usize; m];
            let mut found = small.len() > 0;
            if found {
                found = false;
                'inner: loop {
                    if tuple_matches(&btuple, &atuple) {
                        found = true;
                        break;
                    }
                    let mut i = m;
                    loop {
                        if i == 0 {
                            break 'inner;
                        }
                        i -= 1;
                        atuple[i] += 1;
                        if atuple[i] < small.len() {
                            break;
                        }
                        atuple[i] = 0;
                    }
                }
            }
            if !found {
                // orbit representatives of small, in index order
                let mut params = Vec::new();
                let mut covered: BTreeSet<usize> = BTreeSet::new();
                for s in 0..small.len() {
                    if !covered.contains(&s) {
                        params.push(s);
                        covered.extend(small.orbit_of(s));
                    }
                }
                let p = params.len();
                // literals mentioning witness terms, against params and other witnesses
                let mut literals = Vec::new();
                let bval = |g: usize, k: usize| big.act(g, btuple[k]);
                let pval = |g: usize, i: usize| big.act(g, image[params[i]]);
                for k in 0..m {
                    for g in 0..e {
                        let t1 = DiagramTerm { g, var: p + k };
                        for l in k..m {
                            for h in 0..e {
                                if l == k && h < g {
                                    continue;
                                }
                                let t2 = DiagramTerm { g: h, var: p + l };
                                literals.push(DiagramLiteral::Eq(t1, t2, bval(g, k) == bval(h, l)));
                                if big.signature() != SignatureKind::Empty && (l != k || h != g) {
                                    literals.push(DiagramLiteral::Rel(
                                        t1,
                                        t2,
                                        big.has_rel(bval(g, k), bval(h, l)),
                                    ));
                                }
                            }
                        }
                        for (i, _) in params.iter().enumerate() {
                            for h in 0..e {
                                let t2 = DiagramTerm { g: h, var: i };
                                literals.push(DiagramLiteral::Eq(t1, t2, bval(g, k) == pval(h, i)));
                                if big.signature() != SignatureKind::Empty {
                                    literals.push(DiagramLiteral::Rel(
                                        t1,
                                        t2,
                                        big.has_rel(bval(g, k), pval(h, i)),
                                    ));
                                }
                            }
                        }
                    }
                }
                return Ok(EcOutcome {
                    closed: false,
                    counterexample: Some(WitnessSystem { params, witness_vars: m, literals }),
                    nodes,
                });
            }
            // next big tuple
            let mut i = m;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                btuple[i] += 1;
                if btuple[i] < big.len() {
                    break;
                }
                btuple[i] = 0;
            }
        }
    }
    Ok(EcOutcome { closed: true, counterexample: None, nodes })
}

// ---------------------------------------------------------------------------
// closure oracles and extension predicates
// ---------------------------------------------------------------------------

/// Definable/algebraic closure supplied by the ambient theory. Finite
/// structures have degenerate closures, so the predicates below take the
/// theory-level oracle explicitly.
pub trait ClosureOps {
    fn dcl(&self, m: &GStructure, a: &BTreeSet<usize>) -> BTreeSet<usize>;
    fn acl(&self, m: &GStructure, a: &BTreeSet<usize>) -> BTreeSet<usize>;
}

/// dcl(A) \cap acl(E) \subseteq dcl(E), for E \subseteq A.
pub fn is_regular_extension(
    m: &GStructure,
    e: &BTreeSet<usize>,
    a: &BTreeSet<usize>,
    oracle: &dyn ClosureOps,
) -> bool {
    assert!(e.is_subset(a), "regularity is about E \u{2286} A");
    let dcl_a = oracle.dcl(m, a);
    let acl_e = oracle.acl(m, e);
    let dcl_e = oracle.dcl(m, e);
    dcl_a.intersection(&acl_e).all(|x| dcl_e.contains(x))
}

/// Every automorphism of `ambient` fixing `a` pointwise maps `c` into `c`.
pub fn is_normal_extension(
    a: &BTreeSet<usize>,
    c: &BTreeSet<usize>,
    ambient: &GStructure,
) -> Result<bool, StructureError> {
    for &x in a {
        if !c.contains(&x) {
            return Err(StructureError::BadEmbedding("A must be contained in C".into()));
        }
    }
    for &x in c {
        if x >= ambient.len() {
            return Err(StructureError::UnknownElement(x));
        }
    }
    let fixed: Vec<(usize, usize)> = a.iter().map(|&x| (x, x)).collect();
    for &ci in c {
        for d in 0..ambient.len() {
            if c.contains(&d) {
                continue;
            }
            let mut partial = fixed.clone();
            partial.push((ci, d));
            if find_automorphism(ambient, &partial, false).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Validator for the order signature: every action map must be the identity
/// (an order-preserving bijection of finite order is the identity).
pub fn order_rigidity_check(m: &GStructure) -> bool {
    assert_eq!(m.signature(), SignatureKind::Order, "needs the order signature");
    (0..m.group().order).all(|g| (0..m.len()).all(|x| m.act(g, x) == x))
}

// ---------------------------------------------------------------------------
// file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GroupFile {
    order: usize,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    signature: String,
    group: GroupFile,
    universe: Vec<String>,
    relations: BTreeMap<String, Vec<(usize, usize)>>,
    action: BTreeMap<String, Vec<usize>>,
}

impl GStructure {
    /// Canonical JSON, byte-stable for equal structures.
    pub fn to_canonical_json(&self) -> String {
        let rel_key = match self.signature {
            SignatureKind::Empty => None,
            SignatureKind::Graph => Some("R"),
            SignatureKind::Order => Some("<"),
        };
        let mut relations = BTreeMap::new();
        if let Some(k) = rel_key {
            relations.insert(k.to_string(), self.rel.iter().copied().collect());
        }
        let action: BTreeMap<String, Vec<usize>> = (0..self.group.order)
            .map(|g| (self.group.names[g].clone(), self.action[g].clone()))
            .collect();
        let file = StructureFile {
            signature: self.signature.as_str().to_string(),
            group: GroupFile {
                order: self.group.order,
                names: self.group.names.clone(),
                table: self.group.table.clone(),
            },
            universe: self.labels.clone(),
            relations,
            action,
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: StructureFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let signature = SignatureKind::parse(&file.signature)
            .ok_or_else(|| format!("unknown signature {:?}", file.signature))?;
        let group = FiniteGroup::new(file.group.names, file.group.table).map_err(|e| e.to_string())?;
        if group.order != file.group.order {
            return Err("declared group order does not match the table".into());
        }
        let mut pairs = Vec::new();
        for v in file.relations.values() {
            pairs.extend(v.iter().copied());
        }
        let mut action = vec![Vec::new(); group.order];
        for (name, perm) in &file.action {
            let g = group
                .element_index(name)
                .ok_or_else(|| format!("action key {name:?} is not a group element"))?;
            action[g] = perm.clone();
        }
        GStructure::new(signature, file.universe, &pairs, group, action).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    pub(crate) fn swap_pair(sig: SignatureKind, with_edge: bool) -> GStructure {
        let z2 = builtin::cyclic(2);
        let rel: &[(usize, usize)] = if with_edge { &[(0, 1)] } else { &[] };
        GStructure::new(
            sig,
            vec!["a".into(), "b".into()],
            rel,
            z2,
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_action() {
        let z2 = builtin::cyclic(2);
        // non-permutation
        assert!(GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into()],
            &[],
            z2.clone(),
            vec![vec![0, 1], vec![0, 0]],
        )
        .is_err());
        // identity must act as identity
        assert!(GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into()],
            &[],
            z2.clone(),
            vec![vec![1, 0], vec![0, 1]],
        )
        .is_err());
        // action map must preserve edges
        assert!(matches!(
            GStructure::new(
                SignatureKind::Graph,
                vec!["a".into(), "b".into(), "c".into()],
                &[(0, 1)],
                z2,
                vec![vec![0, 1, 2], vec![0, 2, 1]],
            ),
            Err(StructureError::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn order_must_be_total_and_rigid() {
        let z2 = builtin::cyclic(2);
        // 2-chain with the swap action: the swap is not order preserving
        assert!(GStructure::new(
            SignatureKind::Order,
            vec!["a".into(), "b".into()],
            &[(0, 1)],
            z2.clone(),
            vec![vec![0, 1], vec![1, 0]],
        )
        .is_err());
        let chain = GStructure::new(
            SignatureKind::Order,
            (0..5).map(|i| format!("c{i}")).collect(),
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            z2,
            vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3, 4]],
        )
        .unwrap();
        assert!(order_rigidity_check(&chain));
    }

    #[test]
    fn orbits_and_invariants() {
        let m = swap_pair(SignatureKind::Empty, false);
        assert_eq!(m.orbit(&[0].into()).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(m.orbit(&BTreeSet::new()).unwrap(), BTreeSet::new());
        assert!(m.invariants().is_empty());

        let s3 = builtin::symmetric(3);
        // free orbit of S3: 6 points permuted regularly (left translation)
        let action: Vec<Vec<usize>> = (0..6).map(|g| (0..6).map(|x| s3.mul(g, x)).collect()).collect();
        let labels = (0..6).map(|i| format!("p{i}")).collect();
        let free = GStructure::new(SignatureKind::Empty, labels, &[], s3, action).unwrap();
        assert_eq!(free.orbit(&[0].into()).unwrap().len(), 6);
        assert!(free.invariants().is_empty());

        let mixed = swap_pair(SignatureKind::Graph, true);
        assert_eq!(mixed.invariants().len(), 0);
        let z2 = builtin::cyclic(2);
        let with_fixed = GStructure::new(
            SignatureKind::Graph,
            vec!["a".into(), "b".into(), "c".into()],
            &[],
            z2,
            vec![vec![0, 1, 2], vec![1, 0, 2]],
        )
        .unwrap();
        assert_eq!(with_fixed.invariants(), BTreeSet::from([2]));
        // orbit is a closure operator
        let o1 = with_fixed.orbit(&[0].into()).unwrap();
        assert_eq!(with_fixed.orbit(&o1).unwrap(), o1);
        assert!(o1.contains(&0));
    }

    #[test]
    fn diagram_examples() {
        let m = swap_pair(SignatureKind::Graph, true);
        let lits = m.atomic_diagram(&[0]).unwrap();
        // must contain R(x0, s·x0) positively
        assert!(lits.iter().any(|l| matches!(
            l,
            DiagramLiteral::Rel(DiagramTerm { g: 0, var: 0 }, DiagramTerm { g: 1, var: 0 }, true)
        )));
        let trivial = GStructure::new(
            SignatureKind::Graph,
            vec!["a".into(), "b".into()],
            &[(0, 1)],
            builtin::trivial(),
            vec![vec![0, 1]],
        )
        .unwrap();
        let lits = trivial.atomic_diagram(&[0, 1]).unwrap();
        assert!(lits.iter().any(|l| matches!(
            l,
            DiagramLiteral::Rel(DiagramTerm { g: 0, var: 0 }, DiagramTerm { g: 0, var: 1 }, true)
        )));
        assert!(lits.iter().any(|l| matches!(
            l,
            DiagramLiteral::Eq(DiagramTerm { g: 0, var: 0 }, DiagramTerm { g: 0, var: 1 }, false)
        )));
    }

    #[test]
    fn diagram_equality_gives_equivariant_iso() {
        // two tuples with equal diagrams admit a G-equivariant isomorphism
        let z2 = builtin::cyclic(2);
        let m = GStructure::new(
            SignatureKind::Graph,
            (0..4).map(|i| format!("v{i}")).collect(),
            &[(0, 1), (2, 3)],
            z2,
            vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
        )
        .unwrap();
        assert_eq!(m.atomic_diagram(&[0]).unwrap(), m.atomic_diagram(&[2]).unwrap());
        let (s1, _) = m.induced(&m.orbit(&[0].into()).unwrap()).unwrap();
        let (s2, _) = m.induced(&m.orbit(&[2].into()).unwrap()).unwrap();
        assert!(find_g_isomorphism(&s1, &s2).is_some());
    }

    #[test]
    fn identity_pair_is_closed() {
        let m = swap_pair(SignatureKind::Graph, true);
        let pair = ExtensionPair::identity(&m);
        let out = is_existentially_closed(&pair, 2, 100_000).unwrap();
        assert!(out.closed);
    }

    #[test]
    fn missing_orbit_type_is_detected() {
        // empty theory: small = one free Z2-orbit, big = small + one fixed point
        let z2 = builtin::cyclic(2);
        let small = GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into()],
            &[],
            z2.clone(),
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let big = GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into(), "c".into()],
            &[],
            z2,
            vec![vec![0, 1, 2], vec![1, 0, 2]],
        )
        .unwrap();
        let pair = ExtensionPair::new(small, big, vec![0, 1]).unwrap();
        let out = is_existentially_closed(&pair, 1, 100_000).unwrap();
        assert!(!out.closed);
        let w = out.counterexample.unwrap();
        assert_eq!(w.witness_vars, 1);
        // the witness demands sigma(y) = y, i.e. a fixed point
        assert!(w.literals.iter().any(|l| matches!(
            l,
            DiagramLiteral::Eq(DiagramTerm { g: 0, var }, DiagramTerm { g: 1, var: var2 }, true)
            if var == var2 && *var >= w.params.len()
        )));
    }

    #[test]
    fn proper_extension_fails_by_freshness() {
        // a finite proper extension is never existentially closed: the system
        // demanding a point off every parameter is solvable only in big
        let z2 = builtin::cyclic(2);
        let orbits = |k: usize| {
            let labels = (0..2 * k).map(|i| format!("v{i}")).collect();
            let mut a0: Vec<usize> = Vec::new();
            let mut a1: Vec<usize> = Vec::new();
            for o in 0..k {
                a0.extend([2 * o, 2 * o + 1]);
                a1.extend([2 * o + 1, 2 * o]);
            }
            GStructure::new(SignatureKind::Empty, labels, &[], z2.clone(), vec![a0, a1]).unwrap()
        };
        let small = orbits(2);
        let big = orbits(3);
        let pair = ExtensionPair::new(small, big, vec![0, 1, 2, 3]).unwrap();
        let out = is_existentially_closed(&pair, 1, 1_000_000).unwrap();
        assert!(!out.closed);
        let w = out.counterexample.unwrap();
        // the witnessing system demands inequality with every parameter term
        let p = w.params.len();
        assert!(w.literals.iter().any(|l| matches!(
            l,
            DiagramLiteral::Eq(t1, t2, false)
            if (t1.var >= p) != (t2.var >= p)
        )));
    }

    #[test]
    fn normal_extension_examples() {
        let m = GStructure::new(
            SignatureKind::Empty,
            (0..4).map(|i| format!("p{i}")).collect(),
            &[],
            builtin::trivial(),
            vec![(0..4).collect()],
        )
        .unwrap();
        let all: BTreeSet<usize> = (0..4).collect();
        assert!(is_normal_extension(&BTreeSet::new(), &all, &m).unwrap());
        let two: BTreeSet<usize> = [0, 1].into();
        assert!(!is_normal_extension(&BTreeSet::new(), &two, &m).unwrap());
        assert!(is_normal_extension(&two, &two, &m).unwrap());
    }

    #[test]
    fn json_round_trip_is_stable() {
        let m = swap_pair(SignatureKind::Graph, true);
        let text = m.to_canonical_json();
        let back = GStructure::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_canonical_json(), text);
    }
}
