//! Finite groups as explicit multiplication tables.
//!
//! Everything downstream (actions, Galois groups, Boolean rings) works over a
//! [`FiniteGroup`], so this module also carries the group-theoretic predicates
//! the rest of the workbench reduces to at finite scale: full subgroup
//! enumeration, cosets, Frattini covers, supplements and index counting.

use crate::error::GroupError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A finite group given by its full multiplication table.
///
/// `table[a][b]` is the index of `a * b`. Construction validates the Latin
/// square property, the identity and associativity, so a value of this type
/// is always an actual group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub identity: usize,
}

/// A subgroup, stored as a sorted member-index set of some parent group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

/// A homomorphism between two table groups, given pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let order = names.len();
        if order == 0 || table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(GroupError::BadShape);
        }
        for row in &table {
            for &v in row {
                if v >= order {
                    return Err(GroupError::BadElement(v));
                }
            }
        }
        // Latin square: every row and column is a permutation.
        for i in 0..order {
            let row: BTreeSet<usize> = table[i].iter().copied().collect();
            let col: BTreeSet<usize> = (0..order).map(|j| table[j][i]).collect();
            if row.len() != order || col.len() != order {
                return Err(GroupError::NotLatinSquare(i));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, names, table, identity })
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.table[a][b] == self.identity).unwrap()
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Closure of a generating set, as a sorted member list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = [self.identity].into();
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                for prod in [self.mul(a, g), self.mul(g, a)] {
                    if members.insert(prod) {
                        frontier.push(prod);
                    }
                }
            }
        }
        members.into_iter().collect()
    }

    /// Every subgroup, each exactly once, sorted by (size, members).
    ///
    /// Grows subgroups one generator at a time from the trivial group; every
    /// subgroup is reachable this way, so the enumeration is complete.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let trivial = vec![self.identity];
        let mut seen: BTreeSet<Vec<usize>> = [trivial.clone()].into();
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for g in 0..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let grown = self.generated_subgroup(&gens);
                if seen.insert(grown.clone()) {
                    frontier.push(grown);
                }
            }
        }
        let mut out: Vec<Subgroup> = seen.into_iter().map(|members| Subgroup { members }).collect();
        out.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
        out
    }

    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        for &m in &set {
            if m >= self.order {
                return Err(GroupError::BadElement(m));
            }
        }
        if !set.contains(&self.identity) {
            return Err(GroupError::NotSubgroup("missing identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!("not closed at {a}*{b}")));
                }
            }
            if !set.contains(&self.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("missing inverse of {a}")));
            }
        }
        Ok(Subgroup { members: set.into_iter().collect() })
    }

    /// Left cosets of `h`, the coset of the identity first, the rest in order
    /// of their least member.
    pub fn cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut placed = vec![false; self.order];
        for g in 0..self.order {
            if placed[g] {
                continue;
            }
            let mut coset: Vec<usize> = h.members.iter().map(|&m| self.mul(g, m)).collect();
            coset.sort_unstable();
            for &c in &coset {
                placed[c] = true;
            }
            out.push(coset);
        }
        // identity coset is found first since g runs from 0 and h contains e;
        // still, order by "contains identity, then least member" explicitly.
        out.sort_by_key(|c| (!c.contains(&self.identity), c[0]));
        out
    }

    pub fn is_normal(&self, h: &Subgroup) -> Result<(), GroupError> {
        let set: BTreeSet<usize> = h.members.iter().copied().collect();
        for g in 0..self.order {
            for &m in &set {
                if !set.contains(&self.mul(self.mul(g, m), self.inv(g))) {
                    return Err(GroupError::NotNormal(g));
                }
            }
        }
        Ok(())
    }

    /// Intersection of all maximal proper subgroups (the whole group when
    /// there are none, i.e. for the trivial group).
    pub fn frattini_subgroup(&self) -> Subgroup {
        let subs = self.subgroups();
        let proper: Vec<&Subgroup> = subs.iter().filter(|s| s.members.len() < self.order).collect();
        let maximal: Vec<&&Subgroup> = proper
            .iter()
            .filter(|s| {
                !proper.iter().any(|t| {
                    t.members.len() > s.members.len() && is_subset(&s.members, &t.members)
                })
            })
            .collect();
        if maximal.is_empty() {
            return Subgroup { members: (0..self.order).collect() };
        }
        let mut inter: BTreeSet<usize> = maximal[0].members.iter().copied().collect();
        for m in &maximal[1..] {
            let set: BTreeSet<usize> = m.members.iter().copied().collect();
            inter = inter.intersection(&set).copied().collect();
        }
        Subgroup { members: inter.into_iter().collect() }
    }

    /// Number of subgroups of index exactly `n`; zero when n does not divide
    /// the order.
    pub fn count_subgroups_of_index(&self, n: usize) -> usize {
        if n == 0 || self.order % n != 0 {
            return 0;
        }
        let size = self.order / n;
        self.subgroups().iter().filter(|s| s.members.len() == size).count()
    }

    /// Smallest proper subgroup G0 with G0 * N = G, if any. N must be normal.
    pub fn exists_proper_supplement(&self, n: &Subgroup) -> Result<Option<Subgroup>, GroupError> {
        self.is_normal(n)?;
        let nset: BTreeSet<usize> = n.members.iter().copied().collect();
        for cand in self.subgroups() {
            if cand.members.len() == self.order {
                continue;
            }
            let mut product: BTreeSet<usize> = BTreeSet::new();
            for &a in &cand.members {
                for &b in &nset {
                    product.insert(self.mul(a, b));
                }
            }
            if product.len() == self.order {
                return Ok(Some(cand));
            }
        }
        Ok(None)
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let order = self.order * other.order;
        let idx = |a: usize, b: usize| a * other.order + b;
        let mut table = vec![vec![0; order]; order];
        let mut names = Vec::with_capacity(order);
        for a in 0..self.order {
            for b in 0..other.order {
                names.push(format!("{}_{}", self.names[a], other.names[b]));
            }
        }
        for a1 in 0..self.order {
            for b1 in 0..other.order {
                for a2 in 0..self.order {
                    for b2 in 0..other.order {
                        table[idx(a1, b1)][idx(a2, b2)] = idx(self.mul(a1, a2), other.mul(b1, b2));
                    }
                }
            }
        }
        FiniteGroup::new(names, table).expect("product of groups is a group")
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let bs: BTreeSet<usize> = b.iter().copied().collect();
    a.iter().all(|x| bs.contains(x))
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order {
            return Err(GroupError::BadShape);
        }
        for &v in &map {
            if v >= target.order {
                return Err(GroupError::BadElement(v));
            }
        }
        if map[source.identity] != target.identity {
            return Err(GroupError::NotHomomorphism(source.identity, source.identity));
        }
        for a in 0..source.order {
            for b in 0..source.order {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn is_surjective(&self) -> bool {
        let image: BTreeSet<usize> = self.map.iter().copied().collect();
        image.len() == self.target.order
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.source.order)
            .filter(|&a| self.map[a] == self.target.identity)
            .collect();
        Subgroup { members }
    }
}

/// Frattini-cover test for a surjection, per the subgroup-surjectivity
/// definition, cross-checked against the kernel-inside-Frattini criterion.
pub fn is_frattini_cover(pi: &GroupHom) -> Result<bool, GroupError> {
    if !pi.is_surjective() {
        return Err(GroupError::NotSurjective);
    }
    let target_all: BTreeSet<usize> = (0..pi.target.order).collect();
    let by_subgroups = pi.source.subgroups().iter().all(|h| {
        let image: BTreeSet<usize> = h.members.iter().map(|&a| pi.map[a]).collect();
        image != target_all || h.members.len() == pi.source.order
    });
    let frattini: BTreeSet<usize> = pi.source.frattini_subgroup().members.iter().copied().collect();
    let by_kernel = pi.kernel().members.iter().all(|k| frattini.contains(k));
    assert_eq!(by_subgroups, by_kernel, "frattini criteria must agree");
    Ok(by_subgroups)
}

/// All homomorphisms source -> target, found by assigning images to a fixed
/// generating sequence and validating the induced map.
pub fn all_homs(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    // small generating sequence by greedy growth
    let mut gens: Vec<usize> = Vec::new();
    let mut span = source.generated_subgroup(&gens);
    while span.len() < source.order {
        let g = (0..source.order).find(|g| span.binary_search(g).is_err()).unwrap();
        gens.push(g);
        span = source.generated_subgroup(&gens);
    }
    // express each element as a word over the generators via BFS
    let mut word: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    word.insert(source.identity, vec![]);
    let mut frontier = vec![source.identity];
    while let Some(a) = frontier.pop() {
        for &g in &gens {
            let b = source.mul(a, g);
            if !word.contains_key(&b) {
                let mut w = word[&a].clone();
                w.push(g);
                word.insert(b, w);
                frontier.push(b);
            }
        }
    }
    let mut out = Vec::new();
    let k = gens.len();
    let mut assignment = vec![0usize; k];
    loop {
        let mut map = vec![0usize; source.order];
        for (elem, w) in &word {
            let mut acc = target.identity;
            for g in w {
                let pos = gens.iter().position(|x| x == g).unwrap();
                acc = target.mul(acc, assignment[pos]);
            }
            map[*elem] = acc;
        }
        if let Ok(hom) = GroupHom::new(source.clone(), target.clone(), map) {
            out.push(hom);
        }
        // next assignment in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < target.order {
                break;
            }
            assignment[i] = 0;
        }
        if k == 0 {
            return out; // only the trivial hom from the trivial group
        }
    }
}

pub mod builtin {
    use super::FiniteGroup;
    use crate::error::GroupError;

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::new(vec!["e".into()], vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| if i == 0 { "e".to_string() } else if i == 1 { "s".to_string() } else { format!("s{i}") })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(names, table).unwrap()
    }

    /// Symmetric group on {0..n-1} with elements in lexicographic one-line order.
    pub fn symmetric(n: usize) -> FiniteGroup {
        assert!((1..=4).contains(&n));
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for i in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, i);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let names = perms
            .iter()
            .map(|p| {
                let digits: String = p.iter().map(|x| x.to_string()).collect();
                format!("p{digits}")
            })
            .collect();
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a o b)(x) = a(b(x))
                        let comp: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                        index(&comp)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, table).unwrap()
    }

    /// Dihedral group of order 2n: r^n = f^2 = e, f r f = r^-1.
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 2);
        let order = 2 * n;
        // element 2i = r^i, element 2i+1 = r^i f
        let names = (0..order)
            .map(|k| {
                let (i, fl) = (k / 2, k % 2 == 1);
                match (i, fl) {
                    (0, false) => "e".into(),
                    (i, false) => format!("r{i}"),
                    (0, true) => "f".into(),
                    (i, true) => format!("r{i}f"),
                }
            })
            .collect();
        let idx = |i: usize, fl: bool| 2 * (i % n) + fl as usize;
        let mut table = vec![vec![0; order]; order];
        for a in 0..order {
            for b in 0..order {
                let (i, fi) = (a / 2, a % 2 == 1);
                let (j, fj) = (b / 2, b % 2 == 1);
                // (r^i f^fi)(r^j f^fj) = r^(i + j or i - j) f^(fi xor fj)
                let k = if fi { (n + i - j % n) % n } else { (i + j) % n };
                table[a][b] = idx(k, fi ^ fj);
            }
        }
        FiniteGroup::new(names, table).unwrap()
    }

    /// Quaternion group of order 8.
    pub fn quaternion() -> FiniteGroup {
        let names: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        // encode q = sign * unit, units 1,i,j,k = 0,1,2,3; index = 2*unit + (sign<0)
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) => (x, false),
                (x, 0) => (x, false),
                (1, 1) => (0, true),
                (2, 2) => (0, true),
                (3, 3) => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut table = vec![vec![0; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (ua, sa) = (a / 2, a % 2 == 1);
                let (ub, sb) = (b / 2, b % 2 == 1);
                let (u, neg) = unit_mul(ua, ub);
                let sign = sa ^ sb ^ neg;
                table[a][b] = 2 * u + sign as usize;
            }
        }
        FiniteGroup::new(names, table).unwrap()
    }

    /// Alternating group A4 as even permutations of {0,1,2,3}.
    pub fn alternating4() -> FiniteGroup {
        let s4 = symmetric(4);
        // filter even permutations and rebuild the table over them
        let perm_of = |name: &str| -> Vec<usize> {
            name.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect()
        };
        let parity = |p: &[usize]| -> bool {
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            inv % 2 == 0
        };
        let keep: Vec<usize> = (0..s4.order)
            .filter(|&i| parity(&perm_of(&s4.names[i])))
            .collect();
        let pos = |i: usize| keep.binary_search(&i).unwrap();
        let names = keep.iter().map(|&i| s4.names[i].clone()).collect();
        let table = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| pos(s4.mul(a, b))).collect())
            .collect();
        FiniteGroup::new(names, table).unwrap()
    }

    /// Resolve a CLI group name.
    pub fn by_name(name: &str) -> Result<FiniteGroup, GroupError> {
        match name {
            "z1" | "trivial" => Ok(trivial()),
            "z2" => Ok(cyclic(2)),
            "z3" => Ok(cyclic(3)),
            "z4" => Ok(cyclic(4)),
            "z5" => Ok(cyclic(5)),
            "z6" => Ok(cyclic(6)),
            "z7" => Ok(cyclic(7)),
            "z8" => Ok(cyclic(8)),
            "z2xz2" => Ok(cyclic(2).direct_product(&cyclic(2))),
            "z2xz4" => Ok(cyclic(2).direct_product(&cyclic(4))),
            "z2xz2xz2" => Ok(cyclic(2).direct_product(&cyclic(2)).direct_product(&cyclic(2))),
            "z3xz3" => Ok(cyclic(3).direct_product(&cyclic(3))),
            "s3" => Ok(symmetric(3)),
            "s4" => Ok(symmetric(4)),
            "d4" => Ok(dihedral(4)),
            "d6" => Ok(dihedral(6)),
            "q8" => Ok(quaternion()),
            "a4" => Ok(alternating4()),
            other => Err(GroupError::UnknownName(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;

    /// brute-force oracle: scan all member subsets for closure
    fn subgroups_by_subset_scan(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << g.order) {
            if mask & (1 << g.identity) == 0 {
                continue;
            }
            let members: Vec<usize> = (0..g.order).filter(|i| mask & (1 << i) != 0).collect();
            if g.subgroup(&members).is_ok() {
                out.push(members);
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    #[test]
    fn subgroup_counts_match_oracle() {
        for name in ["z2", "z3", "z4", "z2xz2", "s3", "z6", "d4", "q8", "z8"] {
            let g = by_name(name).unwrap();
            let fast: Vec<Vec<usize>> = g.subgroups().into_iter().map(|s| s.members).collect();
            let slow = subgroups_by_subset_scan(&g);
            assert_eq!(fast, slow, "subgroups of {name}");
        }
    }

    #[test]
    fn subgroup_counts_examples() {
        assert_eq!(by_name("z2").unwrap().subgroups().len(), 2);
        assert_eq!(by_name("z2xz2").unwrap().subgroups().len(), 5);
        assert_eq!(by_name("s3").unwrap().subgroups().len(), 6);
        // A4 has 10 subgroups and none of order 6
        let a4 = by_name("a4").unwrap();
        let subs = a4.subgroups();
        assert_eq!(subs.len(), 10);
        assert!(subs.iter().all(|s| s.members.len() != 6));
    }

    #[test]
    fn subgroups_are_closed() {
        for name in ["z4", "s3", "d4", "a4", "z2xz2xz2"] {
            let g = by_name(name).unwrap();
            for h in g.subgroups() {
                for &a in &h.members {
                    for &b in &h.members {
                        assert!(h.members.binary_search(&g.mul(a, b)).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn cosets_partition() {
        let z4 = by_name("z4").unwrap();
        let h = z4.subgroup(&[0, 2]).unwrap();
        assert_eq!(z4.cosets(&h), vec![vec![0, 2], vec![1, 3]]);
        let g = by_name("s3").unwrap();
        let whole = g.subgroup(&(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.cosets(&whole).len(), 1);
        let triv = g.subgroup(&[g.identity]).unwrap();
        assert_eq!(g.cosets(&triv).len(), 6);
    }

    #[test]
    fn index_counts() {
        let s3 = by_name("s3").unwrap();
        assert_eq!(s3.count_subgroups_of_index(2), 1);
        assert_eq!(s3.count_subgroups_of_index(3), 3);
        assert_eq!(s3.count_subgroups_of_index(1), 1);
        assert_eq!(s3.count_subgroups_of_index(4), 0);
        let total: usize = (1..=s3.order).map(|n| s3.count_subgroups_of_index(n)).sum();
        assert_eq!(total, s3.subgroups().len());
    }

    #[test]
    fn frattini_cover_examples() {
        let z4 = by_name("z4").unwrap();
        let z2 = by_name("z2").unwrap();
        let pi = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(is_frattini_cover(&pi), Ok(true));

        let v4 = by_name("z2xz2").unwrap();
        let proj = GroupHom::new(v4, z2.clone(), vec![0, 0, 1, 1]).unwrap();
        assert_eq!(is_frattini_cover(&proj), Ok(false));

        let idm = GroupHom::new(z2.clone(), z2.clone(), vec![0, 1]).unwrap();
        assert_eq!(is_frattini_cover(&idm), Ok(true));

        let not_onto = GroupHom::new(z2.clone(), z4, vec![0, 0]).unwrap();
        assert!(matches!(
            is_frattini_cover(&GroupHom { source: not_onto.source, target: not_onto.target, map: not_onto.map }),
            Err(GroupError::NotSurjective)
        ));
    }

    #[test]
    fn supplements() {
        let v4 = by_name("z2xz2").unwrap();
        // {0}xZ2 in (names order): elements (0,0)=0,(0,1)=1,(1,0)=2,(1,1)=3
        let n = v4.subgroup(&[0, 1]).unwrap();
        let supp = v4.exists_proper_supplement(&n).unwrap();
        assert_eq!(supp, Some(Subgroup { members: vec![0, 2] }));

        let z4 = by_name("z4").unwrap();
        let n = z4.subgroup(&[0, 2]).unwrap();
        assert_eq!(z4.exists_proper_supplement(&n).unwrap(), None);

        // N = G: smallest supplement is the trivial subgroup
        let s3 = by_name("s3").unwrap();
        let whole = s3.subgroup(&(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(
            s3.exists_proper_supplement(&whole).unwrap(),
            Some(Subgroup { members: vec![s3.identity] })
        );

        // non-normal N rejected
        let h = s3.subgroups().into_iter().find(|h| h.members.len() == 2).unwrap();
        assert!(matches!(s3.exists_proper_supplement(&h), Err(GroupError::NotNormal(_))));
    }

    #[test]
    fn all_homs_counts() {
        let z2 = by_name("z2").unwrap();
        let z4 = by_name("z4").unwrap();
        // homs Z4 -> Z2: two (trivial, mod 2)
        assert_eq!(all_homs(&z4, &z2).len(), 2);
        // homs Z2 -> Z4: two (0, 2)
        assert_eq!(all_homs(&z2, &z4).len(), 2);
        // endomorphisms of S3: 10 (1 trivial + 3 sign-like + 6 inner)
        let s3 = by_name("s3").unwrap();
        assert_eq!(all_homs(&s3, &s3).len(), 10);
    }

    #[test]
    fn builtin_tables_are_groups() {
        for name in ["z1", "z5", "z7", "d6", "q8", "a4", "s4", "z3xz3", "z2xz4"] {
            let g = by_name(name).unwrap();
            assert_eq!(FiniteGroup::new(g.names.clone(), g.table.clone()).unwrap(), g);
        }
    }
}
