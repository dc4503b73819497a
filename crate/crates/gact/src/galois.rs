//! Finite-scale Galois machinery: automorphism groups of finite extensions,
//! the correspondence maps alpha/beta with their connection laws, and the
//! orbit and generator checks that tie the action to the Galois group.
//!
//! Automorphisms here are plain relational automorphisms of the induced
//! substructure; the G-action is not required to be preserved.

use crate::error::GaloisError;
use crate::group::FiniteGroup;
use crate::structure::{GStructure, MapSearch};
use std::collections::BTreeSet;

/// A base-and-whole pair inside an ambient structure (the finite stand-in for
/// the closure the maps act on).
#[derive(Debug, Clone)]
pub struct FiniteExtension<'a> {
    pub ambient: &'a GStructure,
    pub base: BTreeSet<usize>,
    pub whole: BTreeSet<usize>,
    pub bound: usize,
}

impl<'a> FiniteExtension<'a> {
    pub fn new(
        ambient: &'a GStructure,
        base: BTreeSet<usize>,
        whole: BTreeSet<usize>,
    ) -> Result<Self, GaloisError> {
        if !base.is_subset(&whole) {
            return Err(GaloisError::NotNested);
        }
        if let Some(&x) = whole.iter().find(|&&x| x >= ambient.len()) {
            return Err(GaloisError::BadElement(x));
        }
        Ok(FiniteExtension { ambient, base, whole, bound: 12 })
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    fn domain(&self) -> Vec<usize> {
        self.whole.iter().copied().collect()
    }
}

/// A permutation group on a subset of the ambient universe. Permutations map
/// positions of `domain` to positions of `domain`; `elements` is the full
/// sorted enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    pub domain: Vec<usize>,
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn from_elements(domain: Vec<usize>, mut elements: Vec<Vec<usize>>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let generators = greedy_generators(domain.len(), &elements);
        PermGroup { domain, elements, generators }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.domain == other.domain
            && self.elements.iter().all(|p| other.elements.binary_search(p).is_ok())
    }

    /// Fixed points, as ambient element indices.
    pub fn fixed_points(&self) -> BTreeSet<usize> {
        (0..self.domain.len())
            .filter(|&p| self.elements.iter().all(|f| f[p] == p))
            .map(|p| self.domain[p])
            .collect()
    }

    /// Multiplication-table group over the element list (composition).
    pub fn to_table_group(&self) -> FiniteGroup {
        let n = self.elements.len();
        let names = (0..n).map(|i| format!("f{i}")).collect();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let comp = compose(&self.elements[i], &self.elements[j]);
                        self.elements.binary_search(&comp).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, table).expect("a permutation group is a group")
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn close_perms(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = [identity.clone()].into();
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

fn greedy_generators(n: usize, elements: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut span = close_perms(n, &gens);
    for p in elements {
        if span.binary_search(p).is_err() {
            gens.push(p.clone());
            span = close_perms(n, &gens);
            if span.len() == elements.len() {
                break;
            }
        }
    }
    gens
}

/// All relational automorphisms of the induced substructure on C fixing A
/// pointwise, with a deterministic generator set.
pub fn aut_group(ext: &FiniteExtension) -> Result<PermGroup, GaloisError> {
    if ext.whole.len() > ext.bound {
        return Err(GaloisError::BoundExceeded { size: ext.whole.len(), bound: ext.bound });
    }
    let domain = ext.domain();
    let view = ext.ambient.relational_view_of(&domain);
    let fixed: Vec<(usize, usize)> = domain
        .iter()
        .enumerate()
        .filter(|(_, x)| ext.base.contains(x))
        .map(|(p, _)| (p, p))
        .collect();
    let search = MapSearch { from: &view, to: &view, act_from: None, act_to: None };
    let elements = search.search(&fixed, Some(usize::MAX), None);
    Ok(PermGroup::from_elements(domain, elements))
}

/// alpha(B) = the pointwise stabilizer of B inside Aut(C/A).
pub fn alpha(ext: &FiniteExtension, b: &BTreeSet<usize>) -> Result<PermGroup, GaloisError> {
    if !ext.base.is_subset(b) || !b.is_subset(&ext.whole) {
        return Err(GaloisError::NotNested);
    }
    let aut = aut_group(ext)?;
    Ok(stabilizer_of(&aut, b))
}

fn stabilizer_of(aut: &PermGroup, b: &BTreeSet<usize>) -> PermGroup {
    let positions: Vec<usize> = aut
        .domain
        .iter()
        .enumerate()
        .filter(|(_, x)| b.contains(x))
        .map(|(p, _)| p)
        .collect();
    let elements: Vec<Vec<usize>> = aut
        .elements
        .iter()
        .filter(|f| positions.iter().all(|&p| f[p] == p))
        .cloned()
        .collect();
    PermGroup::from_elements(aut.domain.clone(), elements)
}

/// beta(H) = the fixed points of H in C. H must be a subgroup of Aut(C/A).
pub fn beta(ext: &FiniteExtension, h: &PermGroup) -> Result<BTreeSet<usize>, GaloisError> {
    let aut = aut_group(ext)?;
    if !h.is_subgroup_of(&aut) {
        return Err(GaloisError::NotSubgroup);
    }
    if close_perms(h.domain.len(), &h.elements).len() != h.elements.len() {
        return Err(GaloisError::NotSubgroup);
    }
    Ok(h.fixed_points())
}

#[derive(Debug, Clone)]
pub struct ConnectionReport {
    /// alpha . beta . alpha = alpha over every intermediate set
    pub aba_holds: bool,
    /// beta . alpha . beta = beta over every subgroup
    pub bab_holds: bool,
    /// beta . alpha = id on intermediates AND alpha . beta = id on subgroups
    pub full_correspondence: bool,
    pub intermediates_checked: usize,
    pub subgroups_checked: usize,
    pub failures: Vec<String>,
}

/// Check the unconditional Galois-connection laws on every intermediate set
/// and every subgroup, and report (never assert) the full correspondence.
pub fn galois_connection_check(ext: &FiniteExtension) -> Result<ConnectionReport, GaloisError> {
    let aut = aut_group(ext)?;
    let free: Vec<usize> = ext.whole.difference(&ext.base).copied().collect();
    assert!(free.len() <= 20, "intermediate enumeration needs |C \\ A| <= 20");
    let alpha_of = |b: &BTreeSet<usize>| stabilizer_of(&aut, b);
    let beta_of = |h: &PermGroup| h.fixed_points();

    let mut report = ConnectionReport {
        aba_holds: true,
        bab_holds: true,
        full_correspondence: true,
        intermediates_checked: 0,
        subgroups_checked: 0,
        failures: Vec::new(),
    };

    for mask in 0u64..(1 << free.len()) {
        let mut b = ext.base.clone();
        for (i, &x) in free.iter().enumerate() {
            if mask & (1 << i) != 0 {
                b.insert(x);
            }
        }
        report.intermediates_checked += 1;
        let a1 = alpha_of(&b);
        let closure = beta_of(&a1);
        let a2 = alpha_of(&closure);
        if a1 != a2 {
            report.aba_holds = false;
            report.failures.push(format!("alpha-beta-alpha differs at B={b:?}"));
        }
        if closure != b {
            report.full_correspondence = false;
        }
    }

    let table = aut.to_table_group();
    for sub in table.subgroups() {
        report.subgroups_checked += 1;
        let h = PermGroup::from_elements(
            aut.domain.clone(),
            sub.members.iter().map(|&i| aut.elements[i].clone()).collect(),
        );
        let fixed = beta_of(&h);
        let h2 = alpha_of(&fixed);
        let fixed2 = beta_of(&h2);
        if fixed != fixed2 {
            report.bab_holds = false;
            report.failures.push(format!("beta-alpha-beta differs at H of order {}", h.order()));
        }
        if h2 != h {
            report.full_correspondence = false;
        }
    }
    Ok(report)
}

/// Orbit comparison: the automorphisms of the ambient fixing the invariants
/// of N move b exactly along its G-orbit.
pub fn n_galois_orbit_check(
    ambient: &GStructure,
    n_subset: &BTreeSet<usize>,
    b: usize,
    bound: usize,
) -> Result<bool, GaloisError> {
    if ambient.len() > bound {
        return Err(GaloisError::BoundExceeded { size: ambient.len(), bound });
    }
    if !n_subset.contains(&b) {
        return Err(GaloisError::BadElement(b));
    }
    // invariants of the action restricted to N
    let invariants: BTreeSet<usize> = n_subset
        .iter()
        .copied()
        .filter(|&x| (0..ambient.group().order).all(|g| ambient.act(g, x) == x))
        .collect();
    let view = ambient.relational_view();
    let fixed: Vec<(usize, usize)> = invariants.iter().map(|&x| (x, x)).collect();
    let search = MapSearch { from: &view, to: &view, act_from: None, act_to: None };
    let elements = search.search(&fixed, Some(usize::MAX), None);
    let aut_orbit: BTreeSet<usize> = elements.iter().map(|f| f[b]).collect();
    let g_orbit = ambient.orbit_of(b);
    Ok(aut_orbit == g_orbit)
}

/// Batch variant over every element of N.
pub fn n_galois_orbit_check_all(
    ambient: &GStructure,
    n_subset: &BTreeSet<usize>,
    bound: usize,
) -> Result<bool, GaloisError> {
    for &b in n_subset {
        if !n_galois_orbit_check(ambient, n_subset, b, bound)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the restrictions of the action maps generate the whole
/// automorphism group of F over its invariants.
pub fn generated_by_action_check(
    f: &GStructure,
    base: &BTreeSet<usize>,
) -> Result<bool, GaloisError> {
    if *base != f.invariants() {
        return Err(GaloisError::BaseNotInvariants);
    }
    let ext = FiniteExtension::new(f, base.clone(), (0..f.len()).collect())?.with_bound(f.len());
    let aut = aut_group(&ext)?;
    // positions coincide with indices since the domain is the whole universe
    let action_perms: Vec<Vec<usize>> = f.action_maps().to_vec();
    let generated = close_perms(f.len(), &action_perms);
    Ok(generated.len() == aut.order()
        && generated.iter().all(|p| aut.elements.binary_search(p).is_ok()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;
    use crate::structure::{is_normal_extension, SignatureKind};

    fn pure_set(n: usize) -> GStructure {
        GStructure::new(
            SignatureKind::Empty,
            (0..n).map(|i| format!("p{i}")).collect(),
            &[],
            builtin::trivial(),
            vec![(0..n).collect()],
        )
        .unwrap()
    }

    #[test]
    fn aut_group_examples() {
        let m = pure_set(3);
        // C = A: trivial group
        let ext = FiniteExtension::new(&m, [0].into(), [0].into()).unwrap();
        assert_eq!(aut_group(&ext).unwrap().order(), 1);
        // pure 3-set over the empty base: S3
        let ext = FiniteExtension::new(&m, BTreeSet::new(), [0, 1, 2].into()).unwrap();
        assert_eq!(aut_group(&ext).unwrap().order(), 6);

        // edge + isolated vertex: only the edge swap
        let g = GStructure::new(
            SignatureKind::Graph,
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1)],
            builtin::trivial(),
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        let ext = FiniteExtension::new(&g, BTreeSet::new(), [0, 1, 2].into()).unwrap();
        let aut = aut_group(&ext).unwrap();
        assert_eq!(aut.order(), 2);
        assert_eq!(aut.generators.len(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let m = pure_set(14);
        let ext = FiniteExtension::new(&m, BTreeSet::new(), (0..14).collect()).unwrap();
        assert!(matches!(aut_group(&ext), Err(GaloisError::BoundExceeded { .. })));
    }

    #[test]
    fn alpha_beta_examples() {
        let m = pure_set(3);
        let ext = FiniteExtension::new(&m, BTreeSet::new(), [0, 1, 2].into()).unwrap();
        let whole: BTreeSet<usize> = [0, 1, 2].into();
        assert_eq!(alpha(&ext, &whole).unwrap().order(), 1);
        let aut = aut_group(&ext).unwrap();
        let trivial = PermGroup::from_elements(aut.domain.clone(), vec![vec![0, 1, 2]]);
        assert_eq!(beta(&ext, &trivial).unwrap(), whole);
        // H = <(01)>: fixed points are {2}
        let h = PermGroup::from_elements(aut.domain.clone(), vec![vec![0, 1, 2], vec![1, 0, 2]]);
        assert_eq!(beta(&ext, &h).unwrap(), BTreeSet::from([2]));
        // a non-subgroup is rejected
        let bad = PermGroup {
            domain: aut.domain.clone(),
            elements: vec![vec![1, 2, 0]],
            generators: vec![],
        };
        assert!(matches!(beta(&ext, &bad), Err(GaloisError::NotSubgroup)));
    }

    #[test]
    fn antitone_laws() {
        let g = GStructure::new(
            SignatureKind::Graph,
            (0..5).map(|i| format!("v{i}")).collect(),
            &[(0, 1), (1, 2), (3, 4)],
            builtin::trivial(),
            vec![(0..5).collect()],
        )
        .unwrap();
        let ext = FiniteExtension::new(&g, BTreeSet::new(), (0..5).collect()).unwrap();
        let b1: BTreeSet<usize> = [0].into();
        let b2: BTreeSet<usize> = [0, 1].into();
        let a1 = alpha(&ext, &b1).unwrap();
        let a2 = alpha(&ext, &b2).unwrap();
        assert!(a2.is_subgroup_of(&a1));
        let f1 = beta(&ext, &a1).unwrap();
        let f2 = beta(&ext, &a2).unwrap();
        assert!(f1.is_subset(&f2));
    }

    #[test]
    fn curated_pure_three_set_report() {
        let m = pure_set(3);
        let ext = FiniteExtension::new(&m, BTreeSet::new(), [0, 1, 2].into()).unwrap();
        let report = galois_connection_check(&ext).unwrap();
        assert!(report.aba_holds && report.bab_holds);
        // Aut(C/C^H) = S3 for H = <3-cycle>, so the full correspondence fails
        assert!(!report.full_correspondence);

        // C = A trivially satisfies everything
        let ext = FiniteExtension::new(&m, [0].into(), [0].into()).unwrap();
        let report = galois_connection_check(&ext).unwrap();
        assert!(report.full_correspondence);

        // graph path a-b-c over the middle point
        let path = GStructure::new(
            SignatureKind::Graph,
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (1, 2)],
            builtin::trivial(),
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        let ext = FiniteExtension::new(&path, [1].into(), [0, 1, 2].into()).unwrap();
        let report = galois_connection_check(&ext).unwrap();
        assert!(report.aba_holds && report.bab_holds);
    }

    #[test]
    fn intersection_law_via_closure() {
        // alpha(closure(B1 u B2)) = alpha(B1) n alpha(B2), closure = beta . alpha
        let g = GStructure::new(
            SignatureKind::Graph,
            (0..6).map(|i| format!("v{i}")).collect(),
            &[(0, 1), (2, 3), (4, 5)],
            builtin::trivial(),
            vec![(0..6).collect()],
        )
        .unwrap();
        let ext = FiniteExtension::new(&g, BTreeSet::new(), (0..6).collect()).unwrap();
        let b1: BTreeSet<usize> = [0].into();
        let b2: BTreeSet<usize> = [2].into();
        let union: BTreeSet<usize> = b1.union(&b2).copied().collect();
        let closure = beta(&ext, &alpha(&ext, &union).unwrap()).unwrap();
        let lhs = alpha(&ext, &closure).unwrap();
        let a2 = alpha(&ext, &b2).unwrap();
        let inter: Vec<Vec<usize>> = alpha(&ext, &b1)
            .unwrap()
            .elements
            .iter()
            .filter(|p| a2.elements.binary_search(p).is_ok())
            .cloned()
            .collect();
        let rhs = PermGroup::from_elements(lhs.domain.clone(), inter);
        assert_eq!(lhs.elements, rhs.elements);
    }

    #[test]
    fn n_galois_examples() {
        // Z/2 swap pair as its own closure stand-in: Aut = S2 matches G
        let z2 = builtin::cyclic(2);
        let pair = GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into()],
            &[],
            z2.clone(),
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let all: BTreeSet<usize> = [0, 1].into();
        assert!(n_galois_orbit_check_all(&pair, &all, 12).unwrap());

        // ambient strictly larger, with extra automorphisms moving b off its
        // G-orbit: the pair plus a fixed extra point, all indistinguishable
        let bigger = GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into(), "c".into()],
            &[],
            z2,
            vec![vec![0, 1, 2], vec![1, 0, 2]],
        )
        .unwrap();
        let n: BTreeSet<usize> = [0, 1].into();
        assert!(!n_galois_orbit_check(&bigger, &n, 0, 12).unwrap());

        // rigid singleton with the trivial group
        let dot = pure_set(1);
        assert!(n_galois_orbit_check(&dot, &[0].into(), 0, 12).unwrap());
    }

    #[test]
    fn generated_by_action_examples() {
        let z2 = builtin::cyclic(2);
        let pair = GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into()],
            &[],
            z2.clone(),
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert!(generated_by_action_check(&pair, &BTreeSet::new()).unwrap());

        // base must equal the invariants
        let two_fixed = GStructure::new(
            SignatureKind::Empty,
            vec!["a".into(), "b".into()],
            &[],
            z2.clone(),
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        assert!(matches!(
            generated_by_action_check(&two_fixed, &BTreeSet::new()),
            Err(GaloisError::BaseNotInvariants)
        ));

        // F = invariants(F): both groups trivial
        let rigid = GStructure::new(
            SignatureKind::Graph,
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1)],
            z2.clone(),
            vec![vec![0, 1, 2], vec![0, 1, 2]],
        )
        .unwrap();
        assert!(generated_by_action_check(&rigid, &(0..3).collect()).unwrap());

        // Aut over the (empty) invariants is S4 but the action is only Z/2
        let m = GStructure::new(
            SignatureKind::Empty,
            (0..4).map(|i| format!("v{i}")).collect(),
            &[],
            z2,
            vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
        )
        .unwrap();
        assert!(!generated_by_action_check(&m, &BTreeSet::new()).unwrap());
    }

    #[test]
    fn normality_bridge() {
        // normal extension: restrictions of ambient automorphisms land in Aut(C/A)
        let m = pure_set(4);
        let a: BTreeSet<usize> = BTreeSet::new();
        let c: BTreeSet<usize> = (0..4).collect();
        assert!(is_normal_extension(&a, &c, &m).unwrap());
        let ext = FiniteExtension::new(&m, a, c.clone()).unwrap();
        let aut_c = aut_group(&ext).unwrap();
        let view = m.relational_view();
        let search = MapSearch { from: &view, to: &view, act_from: None, act_to: None };
        for f in search.search(&[], Some(usize::MAX), None) {
            let restricted: Vec<usize> = (0..4).map(|p| f[p]).collect();
            assert!(aut_c.elements.binary_search(&restricted).is_ok());
        }
    }
}
