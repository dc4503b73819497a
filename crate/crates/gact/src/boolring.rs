//! G-transformal Boolean rings: finite rings of exponent 2 represented as
//! powersets of explicit atoms, multilinear polynomial rings R[t_1..t_e]/I2,
//! truncation, G-invariant ideals, the diamond-scheme instance checker, and
//! the atom-splitting extension.
//!
//! Ring elements are atom bitmasks: + is symmetric difference, * is
//! intersection. Every finite Boolean ring has this form, so ideal membership
//! decomposes per atom, where it reduces to a zero-set comparison over the
//! two-element field.

use crate::error::BoolError;
use crate::group::FiniteGroup;
use std::collections::BTreeMap;

pub type RingElem = u64;

/// A finite Boolean ring with a G-action by ring automorphisms, given as atom
/// permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanRing {
    pub atom_names: Vec<String>,
    pub group: FiniteGroup,
    pub atom_action: Vec<Vec<usize>>,
}

impl BooleanRing {
    pub fn new(
        atom_names: Vec<String>,
        group: FiniteGroup,
        atom_action: Vec<Vec<usize>>,
    ) -> Result<Self, BoolError> {
        let k = atom_names.len();
        if k > 16 {
            return Err(BoolError::TooManyAtoms(k));
        }
        if atom_action.len() != group.order {
            return Err(BoolError::BlockCountMismatch);
        }
        for perm in &atom_action {
            let mut seen = vec![false; k];
            if perm.len() != k {
                return Err(BoolError::BlockCountMismatch);
            }
            for &p in perm {
                if p >= k || seen[p] {
                    return Err(BoolError::BlockCountMismatch);
                }
                seen[p] = true;
            }
        }
        if atom_action[group.identity] != (0..k).collect::<Vec<_>>() {
            return Err(BoolError::BlockCountMismatch);
        }
        for g in 0..group.order {
            for h in 0..group.order {
                let gh = group.mul(g, h);
                for a in 0..k {
                    if atom_action[g][atom_action[h][a]] != atom_action[gh][a] {
                        return Err(BoolError::BlockCountMismatch);
                    }
                }
            }
        }
        Ok(BooleanRing { atom_names, group, atom_action })
    }

    /// Powerset ring with the trivial action.
    pub fn powerset(k: usize, group: FiniteGroup) -> Result<Self, BoolError> {
        let names = (1..=k).map(|i| i.to_string()).collect();
        let order = group.order;
        BooleanRing::new(names, group, vec![(0..k).collect(); order])
    }

    pub fn atoms(&self) -> usize {
        self.atom_names.len()
    }

    pub fn size(&self) -> u64 {
        1u64 << self.atoms()
    }

    pub fn zero(&self) -> RingElem {
        0
    }

    pub fn one(&self) -> RingElem {
        (1u64 << self.atoms()) - 1
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        a ^ b
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        a & b
    }

    /// sigma_g applied to a ring element (the induced automorphism).
    pub fn sigma(&self, g: usize, x: RingElem) -> RingElem {
        let mut out = 0u64;
        for a in 0..self.atoms() {
            if x & (1 << a) != 0 {
                out |= 1 << self.atom_action[g][a];
            }
        }
        out
    }

    /// Parse a coefficient / ring element literal: "0", "1", or "{i,j,...}"
    /// with 1-based atom indices.
    pub fn parse_elem(&self, text: &str) -> Result<RingElem, BoolError> {
        let t = text.trim();
        match t {
            "0" => Ok(0),
            "1" => Ok(self.one()),
            _ => {
                let inner = t
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| BoolError::Parse(format!("bad element literal {t:?}")))?;
                let mut out = 0u64;
                for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
                    let i: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| BoolError::Parse(format!("bad atom index {part:?}")))?;
                    if i == 0 || i > self.atoms() {
                        return Err(BoolError::Parse(format!("atom index {i} out of range")));
                    }
                    out |= 1 << (i - 1);
                }
                Ok(out)
            }
        }
    }

    pub fn elem_to_string(&self, x: RingElem) -> String {
        if x == 0 {
            return "0".into();
        }
        if x == self.one() {
            return "1".into();
        }
        let atoms: Vec<String> =
            (0..self.atoms()).filter(|a| x & (1 << a) != 0).map(|a| (a + 1).to_string()).collect();
        format!("{{{}}}", atoms.join(","))
    }
}

/// Multilinear polynomial over a Boolean ring in variables t_{i,j} for block
/// i < e and slot j < n. Monomials are variable bitmasks (bit i*n + j);
/// coefficients are ring elements, zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoolPolynomial {
    pub e: usize,
    pub n: usize,
    pub coeffs: BTreeMap<u32, RingElem>,
}

impl BoolPolynomial {
    pub fn zero(e: usize, n: usize) -> Self {
        BoolPolynomial { e, n, coeffs: BTreeMap::new() }
    }

    pub fn constant(e: usize, n: usize, c: RingElem) -> Self {
        let mut p = Self::zero(e, n);
        if c != 0 {
            p.coeffs.insert(0, c);
        }
        p
    }

    pub fn variable(e: usize, n: usize, block: usize, slot: usize, one: RingElem) -> Self {
        assert!(block < e && slot < n);
        let mut p = Self::zero(e, n);
        p.coeffs.insert(1 << (block * n + slot), one);
        p
    }

    pub fn var_count(&self) -> usize {
        self.e * self.n
    }

    fn insert(&mut self, mono: u32, c: RingElem) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(mono).or_insert(0);
        *entry ^= c;
        if *entry == 0 {
            self.coeffs.remove(&mono);
        }
    }

    pub fn add(&self, other: &BoolPolynomial) -> BoolPolynomial {
        assert_eq!((self.e, self.n), (other.e, other.n));
        let mut out = self.clone();
        for (&m, &c) in &other.coeffs {
            out.insert(m, c);
        }
        out
    }

    pub fn mul(&self, other: &BoolPolynomial, ring: &BooleanRing) -> BoolPolynomial {
        assert_eq!((self.e, self.n), (other.e, other.n));
        let mut out = BoolPolynomial::zero(self.e, self.n);
        for (&m1, &c1) in &self.coeffs {
            for (&m2, &c2) in &other.coeffs {
                out.insert(m1 | m2, ring.mul(c1, c2));
            }
        }
        out
    }

    /// Evaluate at a full point (one ring element per variable index).
    pub fn eval(&self, ring: &BooleanRing, point: &[RingElem]) -> RingElem {
        assert_eq!(point.len(), self.var_count());
        let mut acc = 0u64;
        for (&mono, &c) in &self.coeffs {
            let mut term = c;
            for v in 0..self.var_count() {
                if mono & (1 << v) != 0 {
                    term = ring.mul(term, point[v]);
                }
            }
            acc = ring.add(acc, term);
        }
        acc
    }

    /// Degree of the largest monomial (number of variables in it).
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }
}

/// A polynomial with explicit exponents, the input form for truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentPoly {
    pub e: usize,
    pub n: usize,
    /// terms: coefficient and a list of (variable index, exponent >= 1)
    pub terms: Vec<(RingElem, Vec<(usize, u32)>)>,
}

impl ExponentPoly {
    /// Literal evaluation with repeated multiplication.
    pub fn eval(&self, ring: &BooleanRing, point: &[RingElem]) -> RingElem {
        let mut acc = 0u64;
        for (c, vars) in &self.terms {
            let mut term = *c;
            for &(v, k) in vars {
                for _ in 0..k {
                    term = ring.mul(term, point[v]);
                }
            }
            acc = ring.add(acc, term);
        }
        acc
    }
}

/// Reduce every exponent to one; evaluation agrees at every point of a
/// Boolean ring.
pub fn truncate(f: &ExponentPoly) -> BoolPolynomial {
    let mut out = BoolPolynomial::zero(f.e, f.n);
    for (c, vars) in &f.terms {
        let mut mono = 0u32;
        for &(v, k) in vars {
            assert!(k >= 1);
            mono |= 1 << v;
        }
        out.insert(mono, *c);
    }
    out
}

/// The induced action on polynomials: coefficients through the ring
/// automorphism, block i re-indexed to k*i.
pub fn sigma_on_poly(ring: &BooleanRing, k: usize, f: &BoolPolynomial) -> BoolPolynomial {
    let g = &ring.group;
    assert_eq!(f.e, g.order, "block count must equal the group order");
    let mut out = BoolPolynomial::zero(f.e, f.n);
    for (&mono, &c) in &f.coeffs {
        let mut new_mono = 0u32;
        for i in 0..f.e {
            for j in 0..f.n {
                if mono & (1 << (i * f.n + j)) != 0 {
                    let ni = g.mul(k, i);
                    new_mono |= 1 << (ni * f.n + j);
                }
            }
        }
        out.insert(new_mono, ring.sigma(k, c));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformalIdeal {
    pub generators: Vec<BoolPolynomial>,
}

impl TransformalIdeal {
    pub fn new(generators: Vec<BoolPolynomial>) -> Self {
        TransformalIdeal { generators }
    }

    fn arity(&self) -> Option<(usize, usize)> {
        self.generators.first().map(|p| (p.e, p.n))
    }
}

/// All points of {0,1}^vars as masks, for the per-atom zero-set analysis.
fn eval_table(ring: &BooleanRing, p: &BoolPolynomial) -> Vec<RingElem> {
    let vars = p.var_count();
    let mut out = Vec::with_capacity(1 << vars);
    for v in 0u32..(1 << vars) {
        // point: variable i gets 0 or 1 (the full mask)
        let point: Vec<RingElem> =
            (0..vars).map(|i| if v & (1 << i) != 0 { ring.one() } else { 0 }).collect();
        out.push(p.eval(ring, &point));
    }
    out
}

/// Ideal membership by the zero-set criterion: in a finite product of copies
/// of the two-element field, p lies in (g_1..g_k) iff p vanishes at every
/// point (atom coordinate, 0/1-assignment) where all generators vanish.
pub fn ideal_contains(
    ring: &BooleanRing,
    ideal: &TransformalIdeal,
    p: &BoolPolynomial,
) -> Result<bool, BoolError> {
    if let Some((e, n)) = ideal.arity() {
        if (p.e, p.n) != (e, n) {
            return Err(BoolError::ArityMismatch { e, n });
        }
    }
    let vars = p.var_count();
    if vars > 20 {
        return Err(BoolError::SearchTooLarge(1u128 << vars));
    }
    let p_tab = eval_table(ring, p);
    let gen_tabs: Vec<Vec<RingElem>> =
        ideal.generators.iter().map(|g| eval_table(ring, g)).collect();
    for v in 0..(1usize << vars) {
        // atoms where every generator vanishes at this 0/1 point
        let mut all_zero = ring.one();
        for t in &gen_tabs {
            all_zero &= !t[v];
        }
        if p_tab[v] & all_zero != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_g_invariant_ideal(ring: &BooleanRing, ideal: &TransformalIdeal) -> Result<bool, BoolError> {
    for (gi, p) in ideal.generators.iter().enumerate() {
        for g in 0..ring.group.order {
            let image = sigma_on_poly(ring, g, p);
            if !ideal_contains(ring, ideal, &image)? {
                let _ = gi;
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The evaluation point sigma-bar(r): variable t_{i,j} takes sigma_{g_i}(r_j).
pub fn sigma_bar_point(ring: &BooleanRing, e: usize, n: usize, r: &[RingElem]) -> Vec<RingElem> {
    assert_eq!(r.len(), n);
    let mut out = vec![0; e * n];
    for i in 0..e {
        for j in 0..n {
            out[i * n + j] = ring.sigma(i, r[j]);
        }
    }
    out
}

fn vanishes_at(ring: &BooleanRing, ideal: &TransformalIdeal, point: &[RingElem]) -> bool {
    ideal.generators.iter().all(|g| g.eval(ring, point) == 0)
}

/// All r in R^n with sigma-bar(r) on the variety of the ideal, in canonical
/// (lexicographic mask tuple) order.
pub fn variety_points(
    ring: &BooleanRing,
    ideal: &TransformalIdeal,
    n: usize,
    cap: u128,
) -> Result<Vec<Vec<RingElem>>, BoolError> {
    let e = ring.group.order;
    if let Some((ge, gn)) = ideal.arity() {
        if (ge, gn) != (e, n) {
            return Err(BoolError::ArityMismatch { e: ge, n: gn });
        }
    }
    let total = (ring.size() as u128).pow(n as u32);
    if total > cap {
        return Err(BoolError::SearchTooLarge(total));
    }
    let mut out = Vec::new();
    let mut r = vec![0u64; n];
    loop {
        let point = sigma_bar_point(ring, e, n, &r);
        if vanishes_at(ring, ideal, &point) {
            out.push(r.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            r[i] += 1;
            if r[i] < ring.size() {
                break;
            }
            r[i] = 0;
        }
    }
}

/// One instance of the model-companion scheme: for G-invariant I properly
/// inside J, find r with sigma-bar(r) on V(I) but off V(J). Returns the first
/// witness in canonical order, or None (diagnostic: this R fails the
/// instance).
pub fn check_diamond_axiom(
    ring: &BooleanRing,
    ideal_i: &TransformalIdeal,
    ideal_j: &TransformalIdeal,
    n: usize,
    cap: u128,
) -> Result<Option<Vec<RingElem>>, BoolError> {
    let e = ring.group.order;
    for (idx, p) in ideal_i.generators.iter().chain(ideal_j.generators.iter()).enumerate() {
        if (p.e, p.n) != (e, n) {
            let _ = idx;
            return Err(BoolError::ArityMismatch { e, n });
        }
    }
    if !is_g_invariant_ideal(ring, ideal_i)? {
        return Err(BoolError::NotInvariant { gen: 0, g: 0 });
    }
    // I properly contained in J: every I-generator in (J), some J-generator not in (I)
    for p in &ideal_i.generators {
        if !ideal_contains(ring, ideal_j, p)? {
            return Err(BoolError::NotProperlyContained);
        }
    }
    let strictly_bigger = {
        let mut bigger = false;
        for q in &ideal_j.generators {
            if !ideal_contains(ring, ideal_i, q)? {
                bigger = true;
                break;
            }
        }
        bigger
    };
    if !strictly_bigger {
        return Err(BoolError::NotProperlyContained);
    }
    let total = (ring.size() as u128).pow(n as u32);
    if total > cap {
        return Err(BoolError::SearchTooLarge(total));
    }
    let mut r = vec![0u64; n];
    loop {
        let point = sigma_bar_point(ring, e, n, &r);
        if vanishes_at(ring, ideal_i, &point) && !vanishes_at(ring, ideal_j, &point) {
            return Ok(Some(r));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            r[i] += 1;
            if r[i] < ring.size() {
                break;
            }
            r[i] = 0;
        }
    }
}

/// Result of the atom-splitting construction: the extended ring, the
/// embedding of the old ring (per old atom, its image), the image of r, and
/// the witness y (the identity-block variable's image).
#[derive(Debug, Clone)]
pub struct NonAtomWitness {
    pub extended: BooleanRing,
    pub atom_embed: Vec<RingElem>,
    pub r_image: RingElem,
    pub y: RingElem,
}

impl NonAtomWitness {
    pub fn embed(&self, x: RingElem) -> RingElem {
        let mut out = 0u64;
        for (a, &img) in self.atom_embed.iter().enumerate() {
            if x & (1 << a) != 0 {
                out |= img;
            }
        }
        out
    }
}

/// Extend R by generic parts below the translates of r: the quotient
/// R[t_1..t_e] / (I2 + (t_i * sigma_i(r) - t_i : i <= e)) forces each t_i
/// below sigma_i(r), so y := t_identity is a part of r that every nonzero r
/// properly splits. The extension is a G-equivariant ring embedding.
pub fn find_non_atom_witness(
    ring: &BooleanRing,
    r: RingElem,
) -> Result<NonAtomWitness, BoolError> {
    if r == 0 {
        return Err(BoolError::ZeroElement);
    }
    let e = ring.group.order;
    let k = ring.atoms();
    // atoms of R': (old atom a, assignment eps of the t_i with
    // eps_i <= [a in sigma_i(r)])
    let translates: Vec<RingElem> = (0..e).map(|i| ring.sigma(i, r)).collect();
    let mut new_atoms: Vec<(usize, u32)> = Vec::new();
    for a in 0..k {
        let allowed: Vec<usize> = (0..e).filter(|&i| translates[i] & (1 << a) != 0).collect();
        for mask in 0u32..(1 << allowed.len()) {
            let mut eps = 0u32;
            for (bit, &i) in allowed.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    eps |= 1 << i;
                }
            }
            new_atoms.push((a, eps));
        }
    }
    if new_atoms.len() > 16 {
        return Err(BoolError::TooManyAtoms(new_atoms.len()));
    }
    new_atoms.sort();
    let index_of = |a: usize, eps: u32| new_atoms.binary_search(&(a, eps)).unwrap();
    let names = new_atoms
        .iter()
        .map(|&(a, eps)| format!("{}.{:0width$b}", ring.atom_names[a], eps, width = e))
        .collect();
    // sigma_g maps (a, eps) to (g a, eps') with eps'_{g*i} = eps_i
    let atom_action: Vec<Vec<usize>> = (0..e)
        .map(|g| {
            new_atoms
                .iter()
                .map(|&(a, eps)| {
                    let ga = ring.atom_action[g][a];
                    let mut eps2 = 0u32;
                    for i in 0..e {
                        if eps & (1 << i) != 0 {
                            eps2 |= 1 << ring.group.mul(g, i);
                        }
                    }
                    index_of(ga, eps2)
                })
                .collect()
        })
        .collect();
    let extended = BooleanRing::new(names, ring.group.clone(), atom_action)?;
    let atom_embed: Vec<RingElem> = (0..k)
        .map(|a| {
            let mut img = 0u64;
            for (pos, &(na, _)) in new_atoms.iter().enumerate() {
                if na == a {
                    img |= 1 << pos;
                }
            }
            img
        })
        .collect();
    let witness = NonAtomWitness { extended, atom_embed, r_image: 0, y: 0 };
    let r_image = witness.embed(r);
    let id = ring.group.identity;
    let mut y = 0u64;
    for (pos, &(_, eps)) in new_atoms.iter().enumerate() {
        if eps & (1 << id) != 0 {
            y |= 1 << pos;
        }
    }
    Ok(NonAtomWitness { r_image, y, ..witness })
}

/// Text format for polynomials: terms joined by '+', each term a '*'-joined
/// list of a coefficient literal and variables t[i,j] (1-based i, j).
pub fn parse_poly(
    ring: &BooleanRing,
    e: usize,
    n: usize,
    text: &str,
) -> Result<BoolPolynomial, BoolError> {
    let mut out = BoolPolynomial::zero(e, n);
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let mut coeff = ring.one();
        let mut mono = 0u32;
        for factor in term.split('*') {
            let f = factor.trim();
            if let Some(rest) = f.strip_prefix("t[") {
                let inner =
                    rest.strip_suffix(']').ok_or_else(|| BoolError::Parse(format!("bad variable {f:?}")))?;
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 2 {
                    return Err(BoolError::Parse(format!("bad variable {f:?}")));
                }
                let i: usize = parts[0]
                    .trim()
                    .parse()
                    .map_err(|_| BoolError::Parse(format!("bad block index {f:?}")))?;
                let j: usize = parts[1]
                    .trim()
                    .parse()
                    .map_err(|_| BoolError::Parse(format!("bad slot index {f:?}")))?;
                if i == 0 || i > e || j == 0 || j > n {
                    return Err(BoolError::Parse(format!("variable {f:?} out of range")));
                }
                mono |= 1 << ((i - 1) * n + (j - 1));
            } else {
                coeff = ring.mul(coeff, ring.parse_elem(f)?);
            }
        }
        out.insert(mono, coeff);
    }
    Ok(out)
}

pub fn poly_to_string(ring: &BooleanRing, p: &BoolPolynomial) -> String {
    if p.coeffs.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (&mono, &c) in &p.coeffs {
        let mut parts = vec![ring.elem_to_string(c)];
        for v in 0..p.var_count() {
            if mono & (1 << v) != 0 {
                parts.push(format!("t[{},{}]", v / p.n + 1, v % p.n + 1));
            }
        }
        terms.push(parts.join("*"));
    }
    terms.join(" + ")
}
