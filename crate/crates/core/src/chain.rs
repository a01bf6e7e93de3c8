//! Deterministic Schreier–Sims stabilizer chains.
//!
//! A chain may carry a *payload*: stored permutations act on
//! `base_domain + payload` points, but base points, orbits and the identity
//! test only look at the first `base_domain` points. The payload rides along
//! as the image under a homomorphism, which is how coset and subset actions
//! evaluate arbitrary group elements.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[δ]` maps the base point to `δ`; stored with its inverse.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    /// (orbit point, generator index) pairs whose Schreier generator sifted.
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(base: usize, base_domain: usize, degree: usize) -> Self {
        let mut transversal = vec![None; base_domain];
        let id = Permutation::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            checked: HashSet::new(),
        }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let newest = self.gens.len() - 1;
        let old_len = self.orbit.len();
        for idx in 0..old_len {
            self.extend_from(idx, newest);
        }
        let mut idx = old_len;
        while idx < self.orbit.len() {
            for s in 0..self.gens.len() {
                self.extend_from(idx, s);
            }
            idx += 1;
        }
    }

    fn extend_from(&mut self, idx: usize, s: usize) {
        let beta = self.orbit[idx];
        let img = self.gens[s].apply(beta);
        if self.transversal[img].is_none() {
            let u = self.transversal[beta]
                .as_ref()
                .unwrap()
                .0
                .mul(&self.gens[s]);
            let inv = u.inverse();
            self.transversal[img] = Some((u, inv));
            self.orbit.push(img);
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    base_domain: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, base_domain: usize) -> Self {
        assert!(base_domain <= degree);
        StabChain {
            degree,
            base_domain,
            levels: Vec::new(),
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }

    /// Sifts `g` from level `start`. Returns the residue and the level at
    /// which sifting stopped (`levels.len()` when it went all the way).
    fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut r = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let delta = r.apply(level.base);
            match &level.transversal[delta] {
                Some((_, inv)) => r = r.mul(inv),
                None => return (r, j),
            }
        }
        (r, self.levels.len())
    }

    fn is_trivial_residue(&self, r: &Permutation) -> Result<bool> {
        if !r.fixes_prefix(self.base_domain) {
            return Ok(false);
        }
        if r.is_identity() {
            Ok(true)
        } else {
            Err(Error::NotAHomomorphism)
        }
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        let (r, _) = self.strip(g, 0);
        r.fixes_prefix(self.base_domain) && r.is_identity()
    }

    /// Payload image of an element of the group: the restriction of the
    /// unique stored element agreeing with `g` on the base domain.
    pub fn payload_of(&self, g: &Permutation) -> Option<Permutation> {
        let payload = self.degree - self.base_domain;
        let lifted = g.direct_sum(&Permutation::identity(payload));
        let (r, _) = self.strip(&lifted, 0);
        if !r.fixes_prefix(self.base_domain) {
            return None;
        }
        // r = g · u₁⁻¹ ⋯ u_k⁻¹; its payload is the inverse of the payload we want
        // when `g` carries an identity payload.
        Some(r.slice(self.base_domain, payload).inverse())
    }

    /// Adds a generator and restores the Schreier–Sims invariants.
    pub fn add_generator(&mut self, g: Permutation) -> Result<()> {
        assert_eq!(g.degree(), self.degree);
        let (r, j) = self.strip(&g, 0);
        if self.is_trivial_residue(&r)? {
            return Ok(());
        }
        self.insert_residue(r, 0, j);
        self.complete()
    }

    /// Adds residue `y` (which fixes the bases of levels `< stop`) to levels
    /// `from..=stop`, creating a new level when needed.
    fn insert_residue(&mut self, y: Permutation, from: usize, stop: usize) {
        if stop == self.levels.len() {
            let base = y
                .first_moved_below(self.base_domain)
                .expect("nontrivial residue moves a base-domain point");
            self.levels
                .push(Level::new(base, self.base_domain, self.degree));
        }
        for l in from..=stop {
            self.levels[l].add_gen(y.clone());
        }
    }

    fn complete(&mut self) -> Result<()> {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let mut pos = 0;
            while pos < self.levels[lvl].orbit.len() {
                let beta = self.levels[lvl].orbit[pos];
                for s in 0..self.levels[lvl].gens.len() {
                    if self.levels[lvl].checked.contains(&(beta, s)) {
                        continue;
                    }
                    let level = &self.levels[lvl];
                    let x = &level.gens[s];
                    let img = x.apply(beta);
                    let u_beta = &level.transversal[beta].as_ref().unwrap().0;
                    let u_img_inv = &level.transversal[img].as_ref().unwrap().1;
                    let h = u_beta.mul(x).mul(u_img_inv);
                    let (y, j) = self.strip(&h, lvl + 1);
                    self.levels[lvl].checked.insert((beta, s));
                    if !self.is_trivial_residue(&y)? {
                        self.insert_residue(y, lvl + 1, j);
                        i = j + 1;
                        continue 'outer;
                    }
                }
                pos += 1;
            }
            i -= 1;
        }
        Ok(())
    }

    /// Every group element exactly once, as `u_k ⋯ u_1` over transversal
    /// choices, outer loop on the first level.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(levels: &[Level], depth: usize, acc: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            if depth == levels.len() {
                f(acc);
                return;
            }
            let level = &levels[depth];
            for &pt in &level.orbit {
                let u = &level.transversal[pt].as_ref().unwrap().0;
                rec(levels, depth + 1, &u.mul(acc), f);
            }
        }
        rec(&self.levels, 0, &Permutation::identity(self.degree), &mut f);
    }

    /// Element from a sequence of orbit positions, one per level.
    pub fn element_at(&self, positions: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for (level, &p) in self.levels.iter().zip(positions) {
            let pt = level.orbit[p % level.orbit.len()];
            acc = level.transversal[pt].as_ref().unwrap().0.mul(&acc);
        }
        acc
    }
}
