//! Monodromy tuples of Galois covers of the line and genera of their subcovers.
//!
//! A tuple `(σ₁, …, σ_r)` of nontrivial elements of `G` with `σ₁σ₂⋯σ_r = 1`
//! (left to right) that generates `G` describes a `G`-cover branched over
//! `r` points. The subcover fixed by `H ≤ G` has genus
//! `1 − [G:H] + ½ Σ ind(σᵢ, G/H)`. Branch points carry no coordinates here.

mod table;
mod verify;

pub use table::{table1, Table1Row};
pub use verify::{
    verify_bg, verify_index_fpr, verify_lemma_fpr, verify_lemma_ind, verify_lemmas, verify_primmax,
    verify_primmax_lattice, Check, VerifyReport,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::actions::{coset_action, GroupAction, Rational};
use crate::error::{Error, Result};
use crate::group::{PermGroup, SubgroupBuilder};
use crate::perm::Permutation;

/// A validated monodromy tuple over its group.
#[derive(Clone, Debug)]
pub struct MonodromyTuple {
    group: PermGroup,
    branches: Vec<Permutation>,
}

/// Genus of a subcover `D_H` together with the data it was assembled from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub subgroup_index: u64,
    pub branch_indices: Vec<usize>,
    pub genus: u64,
    /// `ind(G, G/H) / [G:H]`.
    pub rho: Rational,
}

impl MonodromyTuple {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn branches(&self) -> &[Permutation] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }
}

/// Checks nontriviality, product one and generation.
pub fn validate_tuple(group: &PermGroup, sigmas: Vec<Permutation>) -> Result<MonodromyTuple> {
    let n = group.degree();
    let mut product = Permutation::identity(n);
    for (i, s) in sigmas.iter().enumerate() {
        if s.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: s.degree(),
            });
        }
        if s.is_identity() {
            return Err(Error::TrivialBranch(i + 1));
        }
        if !group.contains(s)? {
            return Err(Error::NotInGroup);
        }
        product = product.mul(s);
    }
    if !product.is_identity() {
        return Err(Error::ProductNotIdentity);
    }
    let mut generated = SubgroupBuilder::new(n);
    for s in &sigmas {
        generated.add(s.clone());
    }
    if generated.order() != group.order() {
        return Err(Error::DoesNotGenerate);
    }
    Ok(MonodromyTuple {
        group: group.clone(),
        branches: sigmas,
    })
}

/// Genus of the subcover fixed by `h`.
pub fn genus_subcover(tuple: &MonodromyTuple, h: &PermGroup) -> Result<GenusReport> {
    let action = coset_action(&tuple.group, h)?;
    genus_from_action(tuple, &action)
}

/// Genus of the subcover whose points are those of `action` (a coset
/// action of the tuple's group, or any transitive `G`-set).
pub fn genus_from_action(tuple: &MonodromyTuple, action: &GroupAction) -> Result<GenusReport> {
    if !action.group().same_group(&tuple.group) {
        return Err(Error::DifferentGroups);
    }
    let index = action.size() as u64;
    let branch_indices = tuple
        .branches
        .iter()
        .map(|s| action.element_report(s).map(|r| r.ind))
        .collect::<Result<Vec<_>>>()?;
    let total: i64 = branch_indices.iter().map(|&i| i as i64).sum();
    let twice_genus = 2 - 2 * index as i64 + total;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::NonIntegralGenus(twice_genus));
    }
    let rho = if tuple.group.is_trivial() {
        Rational::from_integer(0)
    } else {
        Rational::new(action.min_index()?.value as i64, index as i64)
    };
    Ok(GenusReport {
        subgroup_index: index,
        branch_indices,
        genus: (twice_genus / 2) as u64,
        rho,
    })
}

/// Genus of the degree-`n` cover given by the natural action, straight from
/// cycle types: `2g − 2 = −2n + Σᵢ Σ_cycles (e − 1)`.
pub fn genus_natural_oracle(tuple: &MonodromyTuple) -> Result<u64> {
    if !tuple.group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = tuple.group.degree() as i64;
    let ramification: i64 = tuple
        .branches
        .iter()
        .map(|s| {
            s.cycle_type()
                .parts()
                .iter()
                .map(|&e| e as i64 - 1)
                .sum::<i64>()
        })
        .sum();
    let twice_genus = 2 - 2 * n + ramification;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::NonIntegralGenus(twice_genus));
    }
    Ok((twice_genus / 2) as u64)
}

/// Least number of branch points a degree-`n` map from a genus-`g` curve
/// to the line can have: the least `r` with `−2n + r(n − 1) ≥ 2g − 2`.
pub fn branch_lower_bound(n: u64, g: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::BadDegree(n as usize));
    }
    let numer = 2 * g + 2 * n - 2;
    Ok(numer.div_ceil(n - 1))
}

/// `⌊1 + (r·ρ/2 − 1)·[G:H]⌋`, evaluated exactly.
pub fn genus_lower_bound(rho: Rational, r: u64, index: u64) -> i64 {
    let one = Rational::from_integer(1);
    let bound = one
        + (Rational::from_integer(r as i64) * rho / Rational::from_integer(2) - one)
            * Rational::from_integer(index as i64);
    bound.floor().to_integer()
}

/// `ρ > 2/(2n + 1)`.
pub fn genus_criterion_holds(rho: Rational, n: u64) -> bool {
    rho > Rational::new(2, 2 * n as i64 + 1)
}

/// Rejection sampler: `r − 1` uniform nontrivial elements, closed off by the
/// inverse of their product; rejected if that is trivial or the tuple does
/// not generate `G`.
pub fn sample_tuple<R: Rng + ?Sized>(
    group: &PermGroup,
    r: usize,
    rng: &mut R,
) -> Result<MonodromyTuple> {
    const ATTEMPTS: usize = 10_000;
    if group.is_trivial() || r < 2 {
        return Err(Error::SamplerExhausted(0));
    }
    for _ in 0..ATTEMPTS {
        let mut sigmas = Vec::with_capacity(r);
        let mut product = group.identity();
        while sigmas.len() < r - 1 {
            let x = group.random_element(rng);
            if x.is_identity() {
                continue;
            }
            product = product.mul(&x);
            sigmas.push(x);
        }
        let last = product.inverse();
        if last.is_identity() {
            continue;
        }
        sigmas.push(last);
        match validate_tuple(group, sigmas) {
            Ok(t) => return Ok(t),
            Err(Error::DoesNotGenerate) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplerExhausted(ATTEMPTS))
}

/// [`sample_tuple`] driven by a ChaCha8 stream seeded with `seed`.
pub fn sample_tuple_seeded(group: &PermGroup, r: usize, seed: u64) -> Result<MonodromyTuple> {
    sample_tuple(group, r, &mut ChaCha8Rng::seed_from_u64(seed))
}
