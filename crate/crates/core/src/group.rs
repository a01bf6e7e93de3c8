//! Permutation groups given by generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::{CycleType, Permutation};

/// Default cap on `|G|` for element enumeration.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;
/// Default cap on `|G|` for exhaustive conjugator searches.
pub const DEFAULT_CONJUGATOR_CAP: u64 = 100_000;

/// A conjugacy class of elements: representative and class size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementClass {
    pub representative: Permutation,
    pub size: u64,
}

/// A permutation group with an eagerly built stabilizer chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabChain>,
    classes: Arc<OnceLock<Vec<ElementClass>>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(
            f,
            "PermGroup(degree {}, order {}, <{}>)",
            self.degree,
            self.order(),
            gens.join(", ")
        )
    }
}

/// A `G`-stable partition of the domain into equal cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    pub block_size: usize,
}

impl BlockSystem {
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.block_size == 1
    }

    /// True if every generator maps each cell onto some cell.
    pub fn is_stable_under(&self, gens: &[Permutation]) -> bool {
        let degree: usize = self.blocks.iter().map(Vec::len).sum();
        let mut cell_of = vec![usize::MAX; degree];
        for (c, block) in self.blocks.iter().enumerate() {
            for &x in block {
                cell_of[x] = c;
            }
        }
        gens.iter().all(|g| {
            self.blocks.iter().all(|block| {
                let target = cell_of[g.apply(block[0])];
                block.iter().all(|&x| cell_of[g.apply(x)] == target)
            })
        })
    }
}

impl PermGroup {
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGeneratorList)?;
        let degree = first.degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut chain = StabChain::new(degree, degree);
        for g in &gens {
            chain.add_generator(g.clone())?;
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            chain: Arc::new(chain),
            classes: Arc::new(OnceLock::new()),
        })
    }

    /// Parses 1-based cycle-notation generators.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::from_generators(perms)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_generators(vec![Permutation::identity(degree)]).expect("identity")
    }

    /// `S_n` from a transposition and an `n`-cycle.
    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return PermGroup::trivial(n.max(1));
        }
        let cycle: Vec<usize> = (0..n).collect();
        PermGroup::from_generators(vec![
            Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[cycle]).unwrap(),
        ])
        .unwrap()
    }

    /// `A_n` from the 3-cycles `(1,2,k)`.
    pub fn alternating(n: usize) -> Self {
        if n < 3 {
            return PermGroup::trivial(n.max(1));
        }
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermGroup::from_generators(gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let cycle: Vec<usize> = (0..n).collect();
        PermGroup::from_generators(vec![Permutation::from_cycles(n, &[cycle]).unwrap()]).unwrap()
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
        let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        PermGroup::from_generators(vec![rot, refl]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain.strong_generators()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        Ok(self.chain.contains(p))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.chain.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// True if every generator is an even permutation.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(Permutation::is_even)
    }

    /// `G ∩ A_n`, from Schreier generators for the transversal `{1, t}`
    /// with `t` an odd generator.
    pub fn even_subgroup(&self) -> PermGroup {
        let Some(t) = self.generators.iter().find(|g| !g.is_even()) else {
            return self.clone();
        };
        let t_inv = t.inverse();
        let mut builder = SubgroupBuilder::new(self.degree);
        for s in &self.generators {
            if s.is_even() {
                builder.add(s.clone());
                builder.add(t.mul(s).mul(&t_inv));
            } else {
                builder.add(s.mul(&t_inv));
                builder.add(t.mul(s));
            }
        }
        builder.finish()
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::OutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// Orbits of the group, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !done[x] {
                let o = self.orbit(x).unwrap();
                for &y in &o {
                    done[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0)
            .map(|o| o.len() == self.degree)
            .unwrap_or(false)
    }

    /// Finest `G`-stable partition with `a` and `b` in one cell.
    pub fn minimal_block(&self, a: usize, b: usize) -> Result<BlockSystem> {
        for &x in &[a, b] {
            if x >= self.degree {
                return Err(Error::OutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
        }
        if a == b {
            return Err(Error::EqualPoints);
        }
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(minimal_block_system(self.degree, &self.generators, a, b))
    }

    /// Primitivity of the natural action; a 1-point domain counts as primitive.
    pub fn is_primitive(&self) -> bool {
        if self.degree == 1 {
            return true;
        }
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree)
            .all(|b| minimal_block_system(self.degree, &self.generators, 0, b).is_trivial())
    }

    /// A nontrivial block system if one exists.
    pub fn block_witness(&self) -> Option<BlockSystem> {
        if self.degree == 1 || !self.is_transitive() {
            return None;
        }
        (1..self.degree)
            .map(|b| minimal_block_system(self.degree, &self.generators, 0, b))
            .find(|bs| !bs.is_trivial())
    }

    /// Transitive, and the stabilizer of a point is transitive on the rest.
    pub fn is_two_transitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree <= 2 {
            return true;
        }
        let stab = self.point_stabilizer(0);
        stab.orbit(1)
            .map(|o| o.len() == self.degree - 1)
            .unwrap_or(false)
    }

    /// Stabilizer of `point` via Schreier generators.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let n = self.degree;
        let mut transversal: Vec<Option<Permutation>> = vec![None; n];
        transversal[point] = Some(self.identity());
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if transversal[y].is_none() {
                    transversal[y] = Some(transversal[x].as_ref().unwrap().mul(g));
                    orbit.push(y);
                }
            }
            i += 1;
        }
        let mut builder = SubgroupBuilder::new(n);
        for &x in &orbit {
            let ux = transversal[x].as_ref().unwrap();
            for g in &self.generators {
                let y = g.apply(x);
                let sg = ux.mul(g).mul(&transversal[y].as_ref().unwrap().inverse());
                builder.add(sg);
            }
        }
        builder.finish()
    }

    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.elements_with_cap(DEFAULT_ORDER_CAP)
    }

    /// All elements in chain order; fails if `|G|` exceeds `cap`.
    pub fn elements_with_cap(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap {
            return Err(Error::OrderCapExceeded { order, cap });
        }
        let mut out = Vec::with_capacity(order as usize);
        self.chain.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let positions: Vec<usize> = self
            .chain
            .orbit_sizes()
            .iter()
            .map(|&s| rng.gen_range(0..s))
            .collect();
        self.chain.element_at(&positions)
    }

    /// Conjugacy classes, ordered by element order then image array; each
    /// representative is the lexicographically least element of its class.
    pub fn conjugacy_class_reps(&self) -> Result<Vec<ElementClass>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        let classes = self.compute_classes()?;
        Ok(self.classes.get_or_init(|| classes).clone())
    }

    fn compute_classes(&self) -> Result<Vec<ElementClass>> {
        let elements = self.elements()?;
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let inverses: Vec<Permutation> = self.generators.iter().map(|g| g.inverse()).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = &elements[members[i]];
                for (g, gi) in self.generators.iter().zip(&inverses) {
                    let y = gi.mul(x).mul(g);
                    let j = index[&y];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                    }
                }
                i += 1;
            }
            let rep = members.iter().map(|&j| &elements[j]).min().unwrap().clone();
            classes.push(ElementClass {
                representative: rep,
                size: members.len() as u64,
            });
        }
        classes.sort_by(|a, b| {
            (a.representative.order(), &a.representative)
                .cmp(&(b.representative.order(), &b.representative))
        });
        Ok(classes)
    }

    /// Smallest normal subgroup of `self` containing `s`.
    pub fn normal_closure(&self, s: &[Permutation]) -> Result<PermGroup> {
        for p in s {
            self.check_degree(p)?;
        }
        let mut builder = SubgroupBuilder::new(self.degree);
        let mut queue: Vec<Permutation> = s.to_vec();
        while let Some(x) = queue.pop() {
            if builder.add(x.clone()) {
                for g in &self.generators {
                    queue.push(x.conjugate_by(g));
                }
            }
        }
        // Conjugates of new generators by group generators were queued on
        // insertion, so the closure is normal once the queue drains.
        Ok(builder.finish())
    }

    /// Element cycle-type multiset, used as a conjugacy invariant.
    pub fn cycle_type_census(&self) -> Result<BTreeMap<CycleType, u64>> {
        if self.order() > DEFAULT_ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                order: self.order(),
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let mut census = BTreeMap::new();
        self.chain.for_each_element(|g| {
            *census.entry(g.cycle_type()).or_insert(0) += 1;
        });
        Ok(census)
    }

    fn orbit_size_profile(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    /// A conjugator `g ∈ self` with `g⁻¹ h1 g = h2`, if any.
    pub fn subgroups_conjugate(
        &self,
        h1: &PermGroup,
        h2: &PermGroup,
    ) -> Result<Option<Permutation>> {
        self.subgroups_conjugate_with_cap(h1, h2, DEFAULT_CONJUGATOR_CAP)
    }

    pub fn subgroups_conjugate_with_cap(
        &self,
        h1: &PermGroup,
        h2: &PermGroup,
        cap: u64,
    ) -> Result<Option<Permutation>> {
        if !h1.is_subgroup_of(self) || !h2.is_subgroup_of(self) {
            return Err(Error::NotASubgroup);
        }
        if self.order() > cap {
            return Err(Error::OrderCapExceeded {
                order: self.order(),
                cap,
            });
        }
        if h1.order() != h2.order() || h1.orbit_size_profile() != h2.orbit_size_profile() {
            return Ok(None);
        }
        if h1.cycle_type_census()? != h2.cycle_type_census()? {
            return Ok(None);
        }
        let mut found = None;
        let gens = h1.generators();
        // Early exit is not available through for_each_element, so scan a Vec.
        for g in self.elements_with_cap(cap)? {
            let gi = g.inverse();
            if gens.iter().all(|h| h2.chain.contains(&gi.mul(h).mul(&g))) {
                found = Some(g);
                break;
            }
        }
        Ok(found)
    }

    /// `self^g = g⁻¹ self g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        PermGroup::from_generators(self.generators.iter().map(|h| h.conjugate_by(g)).collect())
            .expect("conjugate of valid group")
    }
}

/// Incremental subgroup construction that only keeps generators which
/// enlarge the group.
pub(crate) struct SubgroupBuilder {
    degree: usize,
    chain: StabChain,
    gens: Vec<Permutation>,
}

impl SubgroupBuilder {
    pub(crate) fn new(degree: usize) -> Self {
        SubgroupBuilder {
            degree,
            chain: StabChain::new(degree, degree),
            gens: Vec::new(),
        }
    }

    /// Returns true if `g` was new.
    pub(crate) fn add(&mut self, g: Permutation) -> bool {
        if self.chain.contains(&g) {
            return false;
        }
        self.chain
            .add_generator(g.clone())
            .expect("plain chains cannot fail the homomorphism check");
        self.gens.push(g);
        true
    }

    pub(crate) fn order(&self) -> u64 {
        self.chain.order()
    }

    pub(crate) fn finish(self) -> PermGroup {
        let gens = if self.gens.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            self.gens
        };
        PermGroup {
            degree: self.degree,
            generators: gens,
            chain: Arc::new(self.chain),
            classes: Arc::new(OnceLock::new()),
        }
    }
}

/// Atkinson's union–find refinement: finest partition stable under `gens`
/// with `a ~ b`.
pub(crate) fn minimal_block_system(
    degree: usize,
    gens: &[Permutation],
    a: usize,
    b: usize,
) -> BlockSystem {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = vec![(a, b)];
    let ra = find(&mut parent, a);
    let rb = find(&mut parent, b);
    parent[ra.max(rb)] = ra.min(rb);
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let gx = find(&mut parent, g.apply(x));
            let gy = find(&mut parent, g.apply(y));
            if gx != gy {
                parent[gx.max(gy)] = gx.min(gy);
                queue.push((gx, gy));
            }
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..degree {
        let r = find(&mut parent, x);
        cells.entry(r).or_default().push(x);
    }
    let blocks: Vec<Vec<usize>> = cells.into_values().collect();
    let block_size = blocks[0].len();
    BlockSystem { blocks, block_size }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    /// Brute-force closure used as an independent order oracle.
    fn closure_order(gens: &[Permutation]) -> usize {
        let mut seen = std::collections::HashSet::new();
        let id = Permutation::identity(gens[0].degree());
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in gens {
                let y = x.mul(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn construction_examples() {
        assert_eq!(g(5, &["(1,2)", "(1,2,3,4,5)"]).order(), 120);
        let a5 = g(5, &["(1,2,3)", "(3,4,5)"]);
        assert_eq!(a5.order(), 60);
        assert_eq!(closure_order(a5.generators()), 60);
        assert_eq!(g(5, &["()"]).order(), 1);
        assert_eq!(
            PermGroup::from_generators(vec![]).unwrap_err(),
            Error::EmptyGeneratorList
        );
        assert!(matches!(
            PermGroup::from_generators(vec![p("(1,2)", 3), p("(1,2)", 4)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn orders_of_standard_groups() {
        for n in 2..=9usize {
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(PermGroup::symmetric(n).order(), fact);
            if n >= 3 {
                assert_eq!(PermGroup::alternating(n).order(), fact / 2);
            }
        }
        assert_eq!(PermGroup::symmetric(7).order(), 5040);
        assert_eq!(PermGroup::alternating(6).order(), 360);
        assert_eq!(PermGroup::cyclic(5).order(), 5);
    }

    #[test]
    fn membership() {
        let a5 = PermGroup::alternating(5);
        assert!(!a5.contains(&p("(1,2)", 5)).unwrap());
        assert!(a5.contains(&p("(1,2,3)", 5)).unwrap());
        let c5 = PermGroup::cyclic(5);
        assert!(c5.contains(&p("(1,3,5,2,4)", 5)).unwrap());
        assert!(a5.contains(&p("(1,2)", 4)).is_err());
    }

    #[test]
    fn orbits_and_transitivity() {
        assert_eq!(
            PermGroup::symmetric(5).orbit(0).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(g(4, &["(1,2)"]).orbit(2).unwrap(), vec![2]);
        assert_eq!(g(4, &["(1,2)(3,4)"]).orbit(0).unwrap(), vec![0, 1]);
        assert!(g(4, &["(1,2)"]).orbit(4).is_err());
        assert!(PermGroup::symmetric(5).is_transitive());
        assert!(!g(3, &["(1,2)"]).is_transitive());
        assert!(g(5, &["(1,2,3)", "(3,4,5)"]).is_transitive());
    }

    #[test]
    fn blocks_and_primitivity() {
        let c4 = g(4, &["(1,2,3,4)"]);
        let bs = c4.minimal_block(0, 2).unwrap();
        assert_eq!(bs.blocks, vec![vec![0, 2], vec![1, 3]]);
        assert!(bs.is_stable_under(c4.generators()));
        let s4 = PermGroup::symmetric(4);
        assert_eq!(
            s4.minimal_block(0, 1).unwrap().blocks,
            vec![vec![0, 1, 2, 3]]
        );
        assert_eq!(
            g(4, &["(1,2)", "(3,4)"]).minimal_block(0, 1),
            Err(Error::NotTransitive)
        );
        assert_eq!(s4.minimal_block(1, 1), Err(Error::EqualPoints));
        assert!(PermGroup::symmetric(5).is_primitive());
        assert!(!c4.is_primitive());
        assert!(PermGroup::alternating(4).is_primitive());
        assert!(PermGroup::trivial(1).is_primitive());
        assert!(!g(4, &["(1,2)"]).is_primitive());
    }

    #[test]
    fn elements_enumeration() {
        assert_eq!(
            PermGroup::trivial(3).elements().unwrap(),
            vec![Permutation::identity(3)]
        );
        assert_eq!(g(3, &["(1,2)"]).elements().unwrap().len(), 2);
        let els = PermGroup::symmetric(4).elements().unwrap();
        let distinct: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(distinct.len(), 24);
        assert!(matches!(
            PermGroup::symmetric(6).elements_with_cap(100),
            Err(Error::OrderCapExceeded {
                order: 720,
                cap: 100
            })
        ));
    }

    #[test]
    fn class_reps() {
        let s3: Vec<u64> = PermGroup::symmetric(3)
            .conjugacy_class_reps()
            .unwrap()
            .iter()
            .map(|c| c.size)
            .collect();
        assert_eq!(s3, vec![1, 3, 2]);
        let s5 = PermGroup::symmetric(5).conjugacy_class_reps().unwrap();
        assert_eq!(s5.len(), 7);
        assert_eq!(s5.iter().map(|c| c.size).sum::<u64>(), 120);
        assert_eq!(
            PermGroup::trivial(4).conjugacy_class_reps().unwrap().len(),
            1
        );
    }

    #[test]
    fn normal_closures() {
        let s5 = PermGroup::symmetric(5);
        let n = s5.normal_closure(&[p("(1,2,3)", 5)]).unwrap();
        assert_eq!(n.order(), 60);
        assert!(n.same_group(&PermGroup::alternating(5)));
        assert_eq!(
            s5.normal_closure(&[Permutation::identity(5)])
                .unwrap()
                .order(),
            1
        );
        let a5 = PermGroup::alternating(5);
        assert_eq!(a5.normal_closure(&[p("(1,2,3)", 5)]).unwrap().order(), 60);
    }

    #[test]
    fn subgroup_conjugacy() {
        let s4 = PermGroup::symmetric(4);
        let t1 = g(4, &["(1,2)"]);
        let t2 = g(4, &["(3,4)"]);
        let c = s4.subgroups_conjugate(&t1, &t2).unwrap().unwrap();
        assert!(t1.conjugate(&c).same_group(&t2));
        assert_eq!(
            s4.subgroups_conjugate(&t1, &g(4, &["(1,2)(3,4)"])).unwrap(),
            None
        );
        let v = g(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let w = g(4, &["(1,2)", "(3,4)"]);
        assert_eq!(v.order(), 4);
        assert_eq!(w.order(), 4);
        assert_eq!(s4.subgroups_conjugate(&v, &w).unwrap(), None);
        let a4 = PermGroup::alternating(4);
        assert_eq!(a4.subgroups_conjugate(&t1, &t2), Err(Error::NotASubgroup));
    }

    #[test]
    fn two_transitive_groups_are_primitive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..200 {
            let n = rng.gen_range(3..=7);
            let s = PermGroup::symmetric(n);
            let gens: Vec<Permutation> = (0..2).map(|_| s.random_element(&mut rng)).collect();
            let grp = PermGroup::from_generators(gens).unwrap();
            if grp.is_two_transitive() {
                checked += 1;
                assert!(grp.is_primitive(), "{grp:?}");
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn normal_subgroups_of_primitive_groups_are_transitive_or_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        for _ in 0..300 {
            let n = rng.gen_range(3..=7);
            let s = PermGroup::symmetric(n);
            let gens: Vec<Permutation> = (0..2).map(|_| s.random_element(&mut rng)).collect();
            let grp = PermGroup::from_generators(gens).unwrap();
            if !grp.is_primitive() {
                continue;
            }
            let x = grp.random_element(&mut rng);
            let nc = grp.normal_closure(&[x]).unwrap();
            checked += 1;
            assert!(nc.is_transitive() || nc.is_trivial(), "{grp:?} / {nc:?}");
        }
        assert!(checked > 20);
    }

    #[test]
    fn block_systems_are_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(4..=8);
            let s = PermGroup::symmetric(n);
            let grp = PermGroup::from_generators(vec![
                s.random_element(&mut rng),
                s.random_element(&mut rng),
            ])
            .unwrap();
            if !grp.is_transitive() {
                continue;
            }
            for b in 1..n {
                let bs = grp.minimal_block(0, b).unwrap();
                assert!(bs.is_stable_under(grp.generators()));
                assert!(bs.blocks.iter().all(|c| c.len() == bs.block_size));
                assert_eq!(n % bs.block_size, 0);
            }
        }
    }

    #[test]
    fn random_elements_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a6 = PermGroup::alternating(6);
        for _ in 0..50 {
            assert!(a6.contains(&a6.random_element(&mut rng)).unwrap());
        }
    }
}
