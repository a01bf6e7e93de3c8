//! Permutations of `{0, .., n-1}`.
//!
//! Products are read left to right: `p.compose(&q)` applies `p` first and
//! then `q`, so `(p * q)(i) = q(p(i))`. Text I/O uses 1-based disjoint cycle
//! notation such as `(1,2,3)(4,5)`; the identity is written `()`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// Multiset of cycle lengths, fixed points included, sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.parts.len()
    }

    pub fn fixed_points(&self) -> usize {
        self.parts.iter().filter(|&&e| e == 1).count()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 0-based image array.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::ZeroDegree);
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::OutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if seen[x] {
                return Err(Error::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::OutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if seen[x] {
                    return Err(Error::RepeatedPoint(x + 1));
                }
                seen[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation, e.g. `"(1,2,3)(4,5)"` or `"()"`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// True if the first `prefix` points are fixed.
    pub(crate) fn fixes_prefix(&self, prefix: usize) -> bool {
        self.images[..prefix]
            .iter()
            .enumerate()
            .all(|(i, &x)| i as u32 == x)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked left-to-right product; panics on degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.inverse().mul(self).mul(h)
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles (0-based), fixed points included, each starting at
    /// its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// Least `m ≥ 1` with `self^m = 1`.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions.is_multiple_of(2)
    }

    /// Smallest moved point among the first `prefix` points.
    pub(crate) fn first_moved_below(&self, prefix: usize) -> Option<usize> {
        (0..prefix).find(|&i| self.images[i] as usize != i)
    }

    /// Direct sum: `self` on the first `degree()` points, `other` on the rest.
    pub(crate) fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.images.len() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Permutation { images }
    }

    /// Restriction to the points `start..start+len`, which must be invariant.
    pub(crate) fn slice(&self, start: usize, len: usize) -> Permutation {
        let base = start as u32;
        Permutation {
            images: self.images[start..start + len]
                .iter()
                .map(|&x| x - base)
                .collect(),
        }
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let malformed = || Error::MalformedCycle(text.to_string());
    if compact == "()" {
        return Ok(Vec::new());
    }
    if compact.is_empty() {
        return Err(malformed());
    }
    let mut cycles = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(malformed)?;
        if !rest.starts_with('(') {
            return Err(malformed());
        }
        let body = &rest[1..body_end];
        if body.contains('(') {
            return Err(malformed());
        }
        let mut cycle = Vec::new();
        for entry in body.split(',') {
            let value: usize = entry.parse().map_err(|_| malformed())?;
            if value == 0 {
                return Err(Error::OutOfRange {
                    point: 0,
                    degree: 0,
                });
            }
            cycle.push(value - 1);
        }
        if cycle.len() < 2 {
            return Err(malformed());
        }
        cycles.push(cycle);
        rest = &rest[body_end + 1..];
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            let body: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(","))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses `"<degree>:<cycles>"`, e.g. `"5:(1,2)"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (deg, cycles) = s
            .split_once(':')
            .ok_or_else(|| Error::MalformedCycle(s.to_string()))?;
        let degree: usize = deg
            .trim()
            .parse()
            .map_err(|_| Error::MalformedCycle(s.to_string()))?;
        Permutation::parse_cycles(cycles, degree)
    }
}
