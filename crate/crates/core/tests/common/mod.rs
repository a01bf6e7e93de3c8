//! Brute-force oracles shared by the integration tests. Everything here works
//! on explicit element lists and never touches stabilizer chains.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use primcover_core::{PermGroup, Permutation, Rational};

pub type Subgroup = BTreeSet<Permutation>;

pub fn p(text: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(text, n).unwrap()
}

/// Closure of a generating set by repeated right multiplication.
pub fn closure(degree: usize, gens: &[Permutation]) -> Subgroup {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn elements(g: &PermGroup) -> Vec<Permutation> {
    closure(g.degree(), g.generators()).into_iter().collect()
}

/// Every subgroup of a group all of whose subgroups are 2-generated.
pub fn all_subgroups_2gen(elements: &[Permutation]) -> HashSet<Subgroup> {
    let degree = elements[0].degree();
    let mut out = HashSet::new();
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i..] {
            out.insert(closure(degree, &[a.clone(), b.clone()]));
        }
    }
    out
}

pub fn conjugate_set(h: &Subgroup, g: &Permutation) -> Subgroup {
    h.iter().map(|x| x.conjugate_by(g)).collect()
}

/// Subgroups grouped into conjugacy classes under `elements`.
pub fn classes(subgroups: &HashSet<Subgroup>, elements: &[Permutation]) -> Vec<Vec<Subgroup>> {
    let mut left: HashSet<Subgroup> = subgroups.clone();
    let mut out = Vec::new();
    let mut sorted: Vec<&Subgroup> = subgroups.iter().collect();
    sorted.sort_by_key(|s| (s.len(), (*s).clone()));
    for h in sorted {
        if !left.contains(h) {
            continue;
        }
        let class: BTreeSet<Subgroup> = elements.iter().map(|g| conjugate_set(h, g)).collect();
        for c in &class {
            left.remove(c);
        }
        out.push(class.into_iter().collect());
    }
    out
}

/// Fixed cosets of `g` on right cosets `Hx`: `Hxg = Hx` iff `x g x⁻¹ ∈ H`.
pub fn coset_fix(elements: &[Permutation], h: &Subgroup, g: &Permutation) -> usize {
    let count = elements
        .iter()
        .filter(|x| h.contains(&x.mul(g).mul(&x.inverse())))
        .count();
    assert_eq!(count % h.len(), 0);
    count / h.len()
}

/// `(fix, fpr, ind)` on `G/H`, orbits of `⟨g⟩` counted by Burnside.
pub fn coset_stats(
    elements: &[Permutation],
    h: &Subgroup,
    g: &Permutation,
) -> (usize, Rational, usize) {
    let m = elements.len() / h.len();
    let fix = coset_fix(elements, h, g);
    let order = g.order();
    let total: usize = (0..order).map(|k| coset_fix(elements, h, &g.pow(k))).sum();
    assert_eq!(total as u64 % order, 0);
    let orbits = total / order as usize;
    (fix, Rational::new(fix as i64, m as i64), m - orbits)
}

/// Largest normal subgroup of `G` inside `H`.
pub fn normal_core(elements: &[Permutation], h: &Subgroup) -> Subgroup {
    h.iter()
        .filter(|x| elements.iter().all(|g| h.contains(&x.conjugate_by(g))))
        .cloned()
        .collect()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for k in (1..=max.min(n)).rev() {
        prefix.push(k);
        partitions(n - k, k, prefix, out);
        prefix.pop();
    }
}

/// One element per cycle type of `S_n`, cycles laid out on consecutive points.
pub fn cycle_type_reps(n: usize) -> Vec<Permutation> {
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    parts
        .iter()
        .map(|shape| {
            let mut start = 0;
            let cycles: Vec<Vec<usize>> = shape
                .iter()
                .map(|&k| {
                    let c = (start..start + k).collect();
                    start += k;
                    c
                })
                .filter(|c: &Vec<usize>| c.len() > 1)
                .collect();
            Permutation::from_cycles(n, &cycles).unwrap()
        })
        .collect()
}

/// Representatives of every `A_n`-class: even cycle types, each also
/// conjugated by `(1,2)` to catch classes that split.
pub fn even_class_reps(n: usize) -> Vec<Permutation> {
    let t = Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
    let mut out = Vec::new();
    for g in cycle_type_reps(n).into_iter().filter(|g| g.is_even()) {
        out.push(g.conjugate_by(&t));
        out.push(g);
    }
    out
}
