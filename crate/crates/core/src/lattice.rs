//! Conjugacy classes of subgroups of small permutation groups.
//!
//! Enumeration works on element indices: every subgroup is a bitset over the
//! elements of `G`. Starting from the trivial subgroup, each class
//! representative `H` is extended to `⟨H, x⟩` for elements `x` of prime-power
//! order; when a new subgroup appears, all of its `G`-conjugates are recorded
//! at once, so later hits are identified by a hash lookup. Any subgroup
//! `K ≠ 1` contains a maximal subgroup `M`, and some prime-power part of an
//! element of `K \ M` already generates `K` together with `M`, so this
//! reaches every class.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::actions::coset_action_with_cap;
use crate::actions::DEFAULT_INDEX_CAP;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default cap on `|G|` for lattice enumeration.
pub const DEFAULT_LATTICE_CAP: u64 = 10_000;

/// Maximality flags of a subgroup class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MaximalIn {
    /// Maximal in the parent group `G`.
    pub parent: bool,
    /// Contained in and maximal in `G ∩ A_n` (only set when `G` has odd elements).
    pub even_part: bool,
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    pub order: u64,
    pub index_in_parent: u64,
    pub is_transitive: bool,
    pub maximal_in: MaximalIn,
    pub class_size: u64,
    pub name_hint: String,
}

impl SubgroupClass {
    pub fn is_even(&self) -> bool {
        self.representative.is_even()
    }
}

/// Which ambient group a maximal-subgroup query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MaximalMode {
    /// Transitive, maximal in `S_n`, and not `A_n`.
    InSnNotAn,
    /// Transitive and maximal in `A_n`; classes are up to `S_n`-conjugacy.
    InAn,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    #[inline]
    fn get(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: u32) {
        self.0[i as usize / 64] |= 1 << (i % 64);
    }
    fn count(&self) -> u64 {
        self.0.iter().map(|w| w.count_ones() as u64).sum()
    }
    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros();
                bits &= bits - 1;
                Some(w as u32 * 64 + t)
            })
        })
    }
}

/// Elements of a group with fast index lookup and multiplication.
struct ElementTable {
    degree: usize,
    elements: Vec<Permutation>,
    dense: Option<Vec<u32>>,
    sparse: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    order: Vec<u64>,
    identity: u32,
}

impl ElementTable {
    fn new(group: &PermGroup, cap: u64) -> Result<Self> {
        let elements = group.elements_with_cap(cap)?;
        let degree = group.degree();
        let dense_len = (degree as u64)
            .checked_pow(degree as u32)
            .filter(|&l| l <= 1 << 22);
        let mut table = ElementTable {
            degree,
            dense: dense_len.map(|l| vec![u32::MAX; l as usize]),
            sparse: HashMap::new(),
            inverse: Vec::new(),
            order: elements.iter().map(Permutation::order).collect(),
            identity: 0,
            elements,
        };
        for i in 0..table.elements.len() {
            let key = table.elements[i].clone();
            match &mut table.dense {
                Some(d) => d[encode(&key, degree)] = i as u32,
                None => {
                    table.sparse.insert(key, i as u32);
                }
            }
        }
        table.inverse = (0..table.elements.len())
            .map(|i| table.index(&table.elements[i].inverse()))
            .collect();
        table.identity = table.index(&Permutation::identity(degree));
        Ok(table)
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn index(&self, p: &Permutation) -> u32 {
        match &self.dense {
            Some(d) => d[encode(p, self.degree)],
            None => self.sparse[p],
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.index(&self.elements[a as usize].mul(&self.elements[b as usize]))
    }

    #[inline]
    fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inverse[g as usize], x), g)
    }

    /// Subgroup generated by `gens`, as a bitset.
    fn closure(&self, gens: &[u32]) -> Bits {
        let mut bits = Bits::new(self.len());
        bits.set(self.identity);
        let mut queue = vec![self.identity];
        while let Some(e) = queue.pop() {
            for &s in gens {
                let y = self.mul(e, s);
                if !bits.get(y) {
                    bits.set(y);
                    queue.push(y);
                }
            }
        }
        bits
    }

    fn conjugate_bits(&self, bits: &Bits, g: u32) -> Bits {
        let mut out = Bits::new(self.len());
        for x in bits.iter() {
            out.set(self.conj(x, g));
        }
        out
    }
}

#[inline]
fn encode(p: &Permutation, n: usize) -> usize {
    p.images()
        .iter()
        .fold(0usize, |acc, &x| acc * n + x as usize)
}

fn is_prime_power(mut n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct RawClass {
    gens: Vec<u32>,
    bits: Bits,
    conjugates: Vec<Bits>,
}

/// All conjugacy classes of subgroups of a group, plus every individual
/// subgroup (as element bitsets) for containment queries.
pub struct Lattice {
    group: PermGroup,
    table: ElementTable,
    classes: Vec<SubgroupClass>,
    members: Vec<Vec<Bits>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("group_order", &self.group.order())
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl Lattice {
    pub fn build(group: &PermGroup) -> Result<Self> {
        Lattice::build_with_caps(group, DEFAULT_LATTICE_CAP, DEFAULT_INDEX_CAP)
    }

    pub fn build_with_caps(group: &PermGroup, lattice_cap: u64, index_cap: u64) -> Result<Self> {
        let order = group.order();
        if order > lattice_cap {
            return Err(Error::LatticeCapExceeded {
                order,
                cap: lattice_cap,
            });
        }
        let table = ElementTable::new(group, lattice_cap)?;
        let group_gens: Vec<u32> = group.generators().iter().map(|g| table.index(g)).collect();
        let mut raw = enumerate_classes(&table, &group_gens);
        for c in &mut raw {
            c.gens = reduce_generators(&table, &c.gens);
        }
        let gen_perms = |c: &RawClass| -> Vec<Permutation> {
            let mut v: Vec<Permutation> = c
                .gens
                .iter()
                .map(|&i| table.elements[i as usize].clone())
                .collect();
            v.sort();
            v
        };
        raw.sort_by_key(|a| (a.bits.count(), gen_perms(a)));

        let even_part = if group.is_even() {
            None
        } else {
            Some(group.even_subgroup())
        };

        let reps: Vec<PermGroup> = raw
            .iter()
            .map(|c| {
                let gens = gen_perms(c);
                if gens.is_empty() {
                    PermGroup::trivial(group.degree())
                } else {
                    PermGroup::from_generators(gens).expect("subgroup generators")
                }
            })
            .collect();

        let flags: Vec<Result<MaximalIn>> = reps
            .par_iter()
            .map(|h| {
                let parent = h.order() < order && is_maximal_with_cap(group, h, index_cap)?;
                let even = match &even_part {
                    Some(ev) if h.is_even() && h.order() < ev.order() => {
                        is_maximal_with_cap(ev, h, index_cap)?
                    }
                    _ => false,
                };
                Ok(MaximalIn {
                    parent,
                    even_part: even,
                })
            })
            .collect();

        let mut classes = Vec::with_capacity(raw.len());
        let mut members = Vec::with_capacity(raw.len());
        let mut per_order: HashMap<u64, usize> = HashMap::new();
        for ((c, rep), flag) in raw.into_iter().zip(reps).zip(flags) {
            let maximal_in = flag?;
            let sub_order = rep.order();
            let is_transitive = rep.is_transitive();
            let ordinal = per_order.entry(sub_order).or_insert(0);
            *ordinal += 1;
            let name_hint = name_hint(group, &rep, is_transitive, maximal_in, *ordinal);
            classes.push(SubgroupClass {
                order: sub_order,
                index_in_parent: order / sub_order,
                is_transitive,
                maximal_in,
                class_size: c.conjugates.len() as u64,
                name_hint,
                representative: rep,
            });
            members.push(c.conjugates);
        }
        Ok(Lattice {
            group: group.clone(),
            table,
            classes,
            members,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn total_subgroups(&self) -> u64 {
        self.classes.iter().map(|c| c.class_size).sum()
    }

    /// Maximality by inspecting the lattice: no subgroup `K` with
    /// `H ⊊ K ⊊ G`. Independent of the coset-action route.
    pub fn interval_maximal(&self, class: usize) -> bool {
        let rep_bits = &self.members[class][0];
        let h_order = self.classes[class].order;
        let g_order = self.group.order();
        if h_order == g_order {
            return false;
        }
        !self.classes.iter().enumerate().any(|(j, k)| {
            k.order > h_order
                && k.order < g_order
                && self.members[j].iter().any(|kb| rep_bits.is_subset_of(kb))
        })
    }

    /// Whether some conjugate of class `inner` lies inside the representative of `outer`.
    pub fn contained_up_to_conjugacy(&self, inner: usize, outer: usize) -> bool {
        let outer_bits = &self.members[outer][0];
        self.members[inner]
            .iter()
            .any(|b| b.is_subset_of(outer_bits))
    }

    /// The class of an arbitrary subgroup of `G`.
    pub fn class_of(&self, h: &PermGroup) -> Result<usize> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotASubgroup);
        }
        let gens: Vec<u32> = h.generators().iter().map(|g| self.table.index(g)).collect();
        let bits = self.table.closure(&gens);
        self.members
            .iter()
            .position(|m| m.contains(&bits))
            .ok_or(Error::NotASubgroup)
    }
}

fn enumerate_classes(table: &ElementTable, group_gens: &[u32]) -> Vec<RawClass> {
    let n = table.len();
    let candidates: Vec<u32> = (0..n as u32)
        .filter(|&i| is_prime_power(table.order[i as usize]))
        .collect();
    let mut known: HashMap<Bits, usize> = HashMap::new();
    let mut classes: Vec<RawClass> = Vec::new();

    let register = |gens: Vec<u32>,
                    bits: Bits,
                    known: &mut HashMap<Bits, usize>,
                    classes: &mut Vec<RawClass>| {
        let id = classes.len();
        let mut conjugates = vec![bits.clone()];
        known.insert(bits.clone(), id);
        let mut i = 0;
        while i < conjugates.len() {
            for &s in group_gens {
                let c = table.conjugate_bits(&conjugates[i], s);
                if let std::collections::hash_map::Entry::Vacant(e) = known.entry(c.clone()) {
                    e.insert(id);
                    conjugates.push(c);
                }
            }
            i += 1;
        }
        classes.push(RawClass {
            gens,
            bits,
            conjugates,
        });
    };

    let trivial = table.closure(&[]);
    register(Vec::new(), trivial, &mut known, &mut classes);

    let mut next = 0;
    while next < classes.len() {
        let h_gens = classes[next].gens.clone();
        let h_bits = classes[next].bits.clone();
        next += 1;
        if h_bits.count() as usize == n {
            continue;
        }
        let normalizer_gens = normalizer_generators(table, &h_gens, &h_bits);
        let mut tried = h_bits.clone();
        for &x in &candidates {
            if tried.get(x) {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(x);
            let k = table.closure(&gens);
            if !known.contains_key(&k) {
                register(gens, k, &mut known, &mut classes);
            }
            mark_equivalent(table, x, &h_gens, &normalizer_gens, &mut tried);
        }
    }
    classes
}

/// Marks every `y` for which `⟨H, y⟩` is an `N_G(H)`-conjugate of `⟨H, x⟩`.
fn mark_equivalent(table: &ElementTable, x: u32, h_gens: &[u32], n_gens: &[u32], tried: &mut Bits) {
    let mut stack = vec![x];
    tried.set(x);
    while let Some(y) = stack.pop() {
        let push = |z: u32, tried: &mut Bits, stack: &mut Vec<u32>| {
            if !tried.get(z) {
                tried.set(z);
                stack.push(z);
            }
        };
        for &h in h_gens {
            push(table.mul(h, y), tried, &mut stack);
        }
        for &g in n_gens {
            push(table.conj(y, g), tried, &mut stack);
        }
        let ord = table.order[y as usize];
        let mut pw = y;
        for k in 2..ord {
            pw = table.mul(pw, y);
            if gcd(k, ord) == 1 {
                push(pw, tried, &mut stack);
            }
        }
    }
}

fn normalizer_generators(table: &ElementTable, h_gens: &[u32], h_bits: &Bits) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut closure = table.closure(&[]);
    for g in 0..table.len() as u32 {
        if closure.get(g) {
            continue;
        }
        if h_gens.iter().all(|&h| h_bits.get(table.conj(h, g))) {
            gens.push(g);
            closure = table.closure(&gens);
        }
    }
    gens
}

fn reduce_generators(table: &ElementTable, gens: &[u32]) -> Vec<u32> {
    let mut kept: Vec<u32> = Vec::new();
    let mut closure = table.closure(&[]);
    for &g in gens {
        if !closure.get(g) {
            kept.push(g);
            closure = table.closure(&kept);
        }
    }
    kept
}

pub fn all_subgroup_classes(group: &PermGroup) -> Result<Vec<SubgroupClass>> {
    Ok(Lattice::build(group)?.classes)
}

/// Maximality of a proper subgroup, decided by primitivity of the coset action.
pub fn is_maximal(group: &PermGroup, h: &PermGroup) -> Result<bool> {
    if !h.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    if h.order() == group.order() {
        return Err(Error::NotProper);
    }
    is_maximal_with_cap(group, h, DEFAULT_INDEX_CAP)
}

fn is_maximal_with_cap(group: &PermGroup, h: &PermGroup, cap: u64) -> Result<bool> {
    coset_action_with_cap(group, h, cap)?.is_primitive()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn name_hint(
    parent: &PermGroup,
    h: &PermGroup,
    transitive: bool,
    maximal: MaximalIn,
    ordinal: usize,
) -> String {
    let n = h.degree();
    let order = h.order();
    if order == 1 {
        return "1".into();
    }
    if order == factorial(n) {
        return format!("S_{n}");
    }
    if order == factorial(n) / 2 && h.is_even() && n >= 3 {
        return format!("A_{n}");
    }
    // Maximal in A_n, whichever lattice we are in.
    let max_an = if parent.is_even() {
        maximal.parent && parent.order() * 2 == factorial(n)
    } else {
        maximal.even_part
    };
    let max_sn = !parent.is_even() && parent.order() == factorial(n) && maximal.parent;
    let known = match (n, order, transitive, max_sn, max_an) {
        (5, 10, true, _, true) => Some("D_5"),
        (5, 20, true, true, _) => Some("F_5"),
        (6, 24, true, _, true) => Some("S_4"),
        (6, 36, true, _, true) => Some("C_3^2:C_4"),
        (6, 60, true, _, true) => Some("A_5"),
        (6, 48, true, true, _) => Some("C_2xS_4"),
        (6, 72, true, true, _) => Some("S_3wrC_2"),
        (6, 120, true, true, _) => Some("S_5"),
        (7, 42, true, true, _) => Some("F_7"),
        (7, 168, true, _, true) => Some("PSL(2,7)"),
        _ => None,
    };
    if let Some(name) = known {
        return name.into();
    }
    let elements = h.elements().unwrap_or_default();
    if elements.iter().any(|g| g.order() == order) {
        return format!("C_{order}");
    }
    // Young subgroups and their even parts, read off the orbit sizes.
    let mut sizes: Vec<usize> = h
        .orbits()
        .iter()
        .map(|o| o.len())
        .filter(|&k| k > 1)
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let young: u64 = sizes.iter().map(|&k| factorial(k)).product();
    let label = sizes
        .iter()
        .map(|k| format!("S_{k}"))
        .collect::<Vec<_>>()
        .join("x");
    if order == young {
        return label;
    }
    if order * 2 == young && h.is_even() {
        return match sizes.as_slice() {
            [k] => format!("A_{k}"),
            _ => format!("({label})+"),
        };
    }
    let involutions = elements.iter().filter(|g| g.order() == 2).count() as u64;
    if involutions + 1 == order {
        return format!("C_2^{}", order.trailing_zeros());
    }
    // Dihedral: a cyclic subgroup of index 2 and involutions everywhere else.
    if let Some(r) = elements.iter().find(|g| g.order() * 2 == order) {
        let rotations: Vec<Permutation> = (0..order / 2).map(|k| r.pow(k)).collect();
        if elements
            .iter()
            .filter(|g| !rotations.contains(g))
            .all(|g| g.order() == 2)
        {
            return format!("D_{}", order / 2);
        }
    }
    format!("order-{order} class #{ordinal}")
}

type LatticeKey = (usize, bool);
type LatticeCache = Mutex<HashMap<LatticeKey, Arc<OnceLock<Arc<Lattice>>>>>;

fn cache() -> &'static LatticeCache {
    static CACHE: OnceLock<LatticeCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(n: usize, alternating: bool) -> Result<Arc<Lattice>> {
    let cell = {
        let mut map = cache().lock().unwrap();
        map.entry((n, alternating)).or_default().clone()
    };
    if let Some(l) = cell.get() {
        return Ok(l.clone());
    }
    let group = if alternating {
        PermGroup::alternating(n)
    } else {
        PermGroup::symmetric(n)
    };
    let built = Arc::new(Lattice::build(&group)?);
    Ok(cell.get_or_init(|| built).clone())
}

/// Lattice of `S_n`, built once per process.
pub fn symmetric_lattice(n: usize) -> Result<Arc<Lattice>> {
    cached(n, false)
}

/// Lattice of `A_n`, built once per process.
pub fn alternating_lattice(n: usize) -> Result<Arc<Lattice>> {
    cached(n, true)
}

pub(crate) fn check_small_degree(n: usize) -> Result<()> {
    if (5..=7).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(n, "5 <= n <= 7"))
    }
}

/// Transitive subgroup classes of `S_n` that are maximal in the requested
/// ambient group, for `5 ≤ n ≤ 7`.
pub fn maximal_transitive_subgroups(n: usize, mode: MaximalMode) -> Result<Vec<SubgroupClass>> {
    check_small_degree(n)?;
    let lattice = symmetric_lattice(n)?;
    let half = factorial(n) / 2;
    Ok(lattice
        .classes()
        .iter()
        .filter(|c| c.is_transitive)
        .filter(|c| match mode {
            MaximalMode::InSnNotAn => c.maximal_in.parent && !(c.order == half && c.is_even()),
            MaximalMode::InAn => c.maximal_in.even_part,
        })
        .cloned()
        .collect())
}

/// Distinct subgroups in a set of classes, by brute force: used to cross-check
/// class sizes in tests.
#[doc(hidden)]
pub fn distinct_subgroups_of_classes(lattice: &Lattice) -> usize {
    let mut all = HashSet::new();
    for m in &lattice.members {
        for b in m {
            all.insert(b.clone());
        }
    }
    all.len()
}
