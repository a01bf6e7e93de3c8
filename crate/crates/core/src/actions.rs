//! Finite `G`-sets: natural, coset and subset actions, with fixed point
//! ratios, indices, minimal index, kernels and `G`-set isomorphism.
//!
//! An action stores one image permutation per generator of `G` and a
//! stabilizer chain of `G` whose elements carry their images on the action
//! points, so any element of `G` can be evaluated on the `G`-set.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::{minimal_block_system, BlockSystem, PermGroup, SubgroupBuilder};
use crate::perm::Permutation;

pub type Rational = Ratio<i64>;

/// Default cap on the number of points of a coset action.
pub const DEFAULT_INDEX_CAP: u64 = 100_000;

/// Renders `p/q` in lowest terms with `q > 0`, including `0/1` and `1/1`.
pub fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let bad = || Error::Input(format!("not a rational: {text}"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// What the points of an action are.
#[derive(Clone, Debug)]
pub enum ActionLabels {
    /// The group's own domain.
    Points,
    /// Right cosets `H x`, labelled by their representatives `x`.
    Cosets(Vec<Permutation>),
    /// Sorted subsets of the domain.
    Subsets(Vec<Vec<usize>>),
}

#[derive(Clone, Debug)]
pub struct GroupAction {
    group: PermGroup,
    size: usize,
    generator_images: Vec<Permutation>,
    labels: ActionLabels,
    chain: Arc<StabChain>,
}

/// Fixed points, fixed point ratio, orbit count and index of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionElementReport {
    pub element: Permutation,
    pub size: usize,
    pub fixed_points: usize,
    pub fpr: Rational,
    pub orbit_count: usize,
    pub ind: usize,
}

/// An extremal value over nontrivial elements together with an element attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum<T> {
    pub value: T,
    pub witness: Permutation,
}

impl GroupAction {
    /// Builds an action from one image per generator of `group`. Fails with
    /// `NotAHomomorphism` if the images violate a relation of the group.
    pub fn from_generator_images(
        group: PermGroup,
        images: Vec<Permutation>,
        labels: ActionLabels,
    ) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::Input(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        let size = images.first().map(Permutation::degree).unwrap_or(1);
        for img in &images {
            if img.degree() != size {
                return Err(Error::DegreeMismatch {
                    left: size,
                    right: img.degree(),
                });
            }
        }
        let n = group.degree();
        let mut chain = StabChain::new(n + size, n);
        for (g, img) in group.generators().iter().zip(&images) {
            chain.add_generator(g.direct_sum(img))?;
        }
        debug_assert_eq!(chain.order(), group.order());
        Ok(GroupAction {
            group,
            size,
            generator_images: images,
            labels,
            chain: Arc::new(chain),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    pub fn labels(&self) -> &ActionLabels {
        &self.labels
    }

    /// The permutation of the action points induced by `g ∈ G`.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        if !self.group.contains(g)? {
            return Err(Error::NotInGroup);
        }
        Ok(self.chain.payload_of(g).expect("member sifts fully"))
    }

    pub fn element_report(&self, g: &Permutation) -> Result<ActionElementReport> {
        let img = self.image(g)?;
        let fixed_points = img.fixed_point_count();
        let orbit_count = img.cycle_type().cycle_count();
        Ok(ActionElementReport {
            element: g.clone(),
            size: self.size,
            fixed_points,
            fpr: Rational::new(fixed_points as i64, self.size as i64),
            orbit_count,
            ind: self.size - orbit_count,
        })
    }

    /// Reports for every conjugacy class representative of `G`.
    pub fn class_reports(&self) -> Result<Vec<ActionElementReport>> {
        self.group
            .conjugacy_class_reps()?
            .iter()
            .map(|c| self.element_report(&c.representative))
            .collect()
    }

    fn prime_order_reports(&self) -> Result<Vec<ActionElementReport>> {
        if self.group.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        self.group
            .conjugacy_class_reps()?
            .iter()
            .filter(|c| is_prime(c.representative.order()))
            .map(|c| self.element_report(&c.representative))
            .collect()
    }

    /// Minimal index over nontrivial elements.
    ///
    /// Only prime-order class representatives are examined: `ind` is a class
    /// function, and every orbit of `g^m` lies inside an orbit of `g`, so
    /// `ind(g) ≥ ind(g^m)` and some power of any `g ≠ 1` has prime order.
    pub fn min_index(&self) -> Result<Extremum<usize>> {
        let reports = self.prime_order_reports()?;
        let best = reports
            .iter()
            .min_by_key(|r| r.ind)
            .expect("nontrivial group has a prime-order element");
        Ok(Extremum {
            value: best.ind,
            witness: best.element.clone(),
        })
    }

    /// Maximal fixed point ratio over nontrivial elements, restricted to
    /// prime-order class representatives since `Fix(g) ⊆ Fix(g^m)`.
    pub fn max_fpr(&self) -> Result<Extremum<Rational>> {
        let reports = self.prime_order_reports()?;
        let mut best = &reports[0];
        for r in &reports[1..] {
            if r.fpr > best.fpr {
                best = r;
            }
        }
        Ok(Extremum {
            value: best.fpr,
            witness: best.element.clone(),
        })
    }

    /// Elements of `G` acting trivially.
    pub fn kernel(&self) -> Result<PermGroup> {
        let trivial: Vec<Permutation> = self
            .group
            .conjugacy_class_reps()?
            .into_iter()
            .map(|c| c.representative)
            .filter(|g| self.image(g).map(|i| i.is_identity()).unwrap_or(false))
            .collect();
        self.group.normal_closure(&trivial)
    }

    pub fn is_faithful(&self) -> Result<bool> {
        Ok(self.kernel()?.is_trivial())
    }

    fn orbit_with_transversal(&self, point: usize) -> (Vec<usize>, Vec<Option<Permutation>>) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.size];
        transversal[point] = Some(self.group.identity());
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for (g, img) in self.group.generators().iter().zip(&self.generator_images) {
                let y = img.apply(x);
                if transversal[y].is_none() {
                    transversal[y] = Some(transversal[x].as_ref().unwrap().mul(g));
                    orbit.push(y);
                }
            }
            i += 1;
        }
        (orbit, transversal)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_with_transversal(0).0.len() == self.size
    }

    /// `Stab_G(point)` as a subgroup of `G`, from Schreier generators.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.size {
            return Err(Error::OutOfRange {
                point,
                degree: self.size,
            });
        }
        let (orbit, transversal) = self.orbit_with_transversal(point);
        let mut builder = SubgroupBuilder::new(self.group.degree());
        let target = self.group.order() / orbit.len() as u64;
        'outer: for &x in &orbit {
            let ux = transversal[x].as_ref().unwrap();
            for (g, img) in self.group.generators().iter().zip(&self.generator_images) {
                if builder.order() == target {
                    break 'outer;
                }
                let y = img.apply(x);
                let sg = ux.mul(g).mul(&transversal[y].as_ref().unwrap().inverse());
                builder.add(sg);
            }
        }
        Ok(builder.finish())
    }

    /// A nontrivial block system on the action points, if the action is
    /// transitive but imprimitive.
    pub fn block_witness(&self) -> Result<Option<BlockSystem>> {
        if self.size <= 2 || !self.is_transitive() {
            return Ok(None);
        }
        let stab = self.point_stabilizer(0)?;
        let stab_images: Vec<Permutation> = stab
            .generators()
            .iter()
            .map(|h| self.image(h))
            .collect::<Result<_>>()?;
        // One candidate partner per suborbit of the point stabilizer.
        let mut seen = vec![false; self.size];
        seen[0] = true;
        for b in 1..self.size {
            if seen[b] {
                continue;
            }
            let mut stack = vec![b];
            seen[b] = true;
            while let Some(x) = stack.pop() {
                for h in &stab_images {
                    let y = h.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            let bs = minimal_block_system(self.size, &self.generator_images, 0, b);
            if !bs.is_trivial() {
                return Ok(Some(bs));
            }
        }
        Ok(None)
    }

    /// Primitivity of the permutation group induced on the action points.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.size == 1 {
            return Ok(true);
        }
        if !self.is_transitive() {
            return Ok(false);
        }
        Ok(self.block_witness()?.is_none())
    }

    /// The induced permutation group on the action points.
    pub fn image_group(&self) -> Result<PermGroup> {
        PermGroup::from_generators(self.generator_images.clone())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `G` acting on its own domain.
pub fn natural_action(group: &PermGroup) -> GroupAction {
    GroupAction::from_generator_images(
        group.clone(),
        group.generators().to_vec(),
        ActionLabels::Points,
    )
    .expect("identity homomorphism")
}

pub fn coset_action(group: &PermGroup, subgroup: &PermGroup) -> Result<GroupAction> {
    coset_action_with_cap(group, subgroup, DEFAULT_INDEX_CAP)
}

/// `G` acting on the right cosets `H x` by right multiplication. Fixed point
/// counts, orbit counts, kernels and primitivity agree with the left-coset
/// action `g H ↦ x g H` via `Hx ↦ x⁻¹H`.
pub fn coset_action_with_cap(
    group: &PermGroup,
    subgroup: &PermGroup,
    cap: u64,
) -> Result<GroupAction> {
    if !subgroup.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    let index = group.order() / subgroup.order();
    if index > cap {
        return Err(Error::IndexCapExceeded { index, cap });
    }
    let h_elements = subgroup.elements()?;
    let canonical =
        |x: &Permutation| -> Permutation { h_elements.iter().map(|h| h.mul(x)).min().unwrap() };
    let mut reps = vec![group.identity()];
    let mut lookup: HashMap<Permutation, usize> = HashMap::new();
    lookup.insert(canonical(&reps[0]), 0);
    let gens = group.generators();
    let mut images: Vec<Vec<usize>> = vec![Vec::with_capacity(index as usize); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = reps[i].mul(g);
            let key = canonical(&y);
            let next = lookup.len();
            let j = *lookup.entry(key).or_insert_with(|| {
                reps.push(y);
                next
            });
            images[s].push(j);
        }
        i += 1;
    }
    debug_assert_eq!(reps.len() as u64, index);
    let images = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    GroupAction::from_generator_images(group.clone(), images, ActionLabels::Cosets(reps))
}

/// `G ≤ S_n` acting on the `ell`-element subsets of `{0, .., n-1}`, for
/// `1 ≤ ell < n/2`, subsets in lexicographic order.
pub fn omega_ell_action(n: usize, ell: usize, group: &PermGroup) -> Result<GroupAction> {
    if ell == 0 || 2 * ell >= n {
        return Err(Error::BadEll { ell, degree: n });
    }
    if group.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: group.degree(),
        });
    }
    let subsets = combinations(n, ell);
    let lookup: HashMap<&[usize], usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let images = group
        .generators()
        .iter()
        .map(|g| {
            let img: Vec<usize> = subsets
                .iter()
                .map(|s| {
                    let mut t: Vec<usize> = s.iter().map(|&x| g.apply(x)).collect();
                    t.sort_unstable();
                    lookup[t.as_slice()]
                })
                .collect();
            Permutation::from_images(img)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupAction::from_generator_images(group.clone(), images, ActionLabels::Subsets(subsets))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Isomorphism of transitive `G`-sets: point stabilizers conjugate in `G`.
pub fn actions_isomorphic(a: &GroupAction, b: &GroupAction) -> Result<bool> {
    if !a.group.same_group(&b.group) {
        return Err(Error::DifferentGroups);
    }
    if !a.is_transitive() || !b.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if a.size != b.size {
        return Ok(false);
    }
    let sa = a.point_stabilizer(0)?;
    let sb = b.point_stabilizer(0)?;
    Ok(a.group.subgroups_conjugate(&sa, &sb)?.is_some())
}

/// Isomorphism up to an automorphism of `G`: for faithful transitive actions
/// this holds iff the two image groups are conjugate in `Sym(Ω)`. Decided by
/// search over `Sym(Ω)`, so `|Ω|!` is subject to the conjugator cap.
pub fn actions_permutation_isomorphic(a: &GroupAction, b: &GroupAction) -> Result<bool> {
    if !a.group.same_group(&b.group) {
        return Err(Error::DifferentGroups);
    }
    if !a.is_transitive() || !b.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if a.size != b.size {
        return Ok(false);
    }
    if actions_isomorphic(a, b)? {
        return Ok(true);
    }
    if !a.is_faithful()? || !b.is_faithful()? {
        return Ok(false);
    }
    let sym = PermGroup::symmetric(a.size);
    Ok(sym
        .subgroups_conjugate(&a.image_group()?, &b.image_group()?)?
        .is_some())
}
