//! Bruhat order and the rational-smoothness oracle.
//!
//! The oracle materializes one Weyl group by breadth-first closure and
//! answers interval queries by downward search through reflection covers:
//! `u` is covered by `w` exactly when `u = wt` for a reflection `t` with
//! `l(u) = l(w) - 1`. Rational smoothness is palindromicity of the rank
//! generating function of `[e, w]` (Carrell-Peterson).
//!
//! Group sizes grow fast, so construction is gated behind a configurable
//! rank cap; exceeding it is a reported capability error, never silent.

use super::{enumerate_group, GroupElement, WeylFamily};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Default rank cap for oracle construction.
pub const DEFAULT_ORACLE_RANK_CAP: usize = 5;

/// Hard bound on materialized group size, whatever the rank cap says.
const MAX_ELEMENTS: u64 = 10_000_000;

#[derive(Debug)]
pub struct Oracle {
    family: WeylFamily,
    rank: usize,
    /// Every reflection of the group, as elements.
    reflections: Vec<GroupElement>,
    /// Length of each element, keyed by window.
    lengths: HashMap<Vec<i32>, u32>,
}

impl Oracle {
    pub fn new(family: WeylFamily, rank: usize, rank_cap: usize) -> Result<Oracle> {
        if rank > rank_cap {
            return Err(Error::capability(
                format!("oracle rank for {}_{rank}", family.as_str()),
                rank_cap as u64,
                rank as u64,
            ));
        }
        let order = family.order(rank).unwrap_or(u64::MAX);
        if order > MAX_ELEMENTS {
            return Err(Error::capability(
                format!("oracle group size for {}_{rank}", family.as_str()),
                MAX_ELEMENTS,
                order,
            ));
        }
        let elements = enumerate_group(family, rank, MAX_ELEMENTS)?;
        let mut lengths = HashMap::with_capacity(elements.len());
        for w in &elements {
            lengths.insert(w.window().to_vec(), w.length() as u32);
        }
        Ok(Oracle {
            family,
            rank,
            reflections: reflections(family, rank)?,
            lengths,
        })
    }

    pub fn family(&self) -> WeylFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_elements(&self) -> usize {
        self.lengths.len()
    }

    fn check_host(&self, w: &GroupElement) -> Result<()> {
        if w.family() != self.family || w.rank() != self.rank {
            return Err(Error::HostMismatch(format!(
                "oracle built for {}_{}, element in {}_{}",
                self.family.as_str(),
                self.rank,
                w.family().as_str(),
                w.rank()
            )));
        }
        Ok(())
    }

    fn len_of(&self, w: &GroupElement) -> u32 {
        self.lengths[w.window()]
    }

    /// The full lower Bruhat interval `[e, w]`, grouped by length.
    fn interval_by_length(&self, w: &GroupElement) -> Result<Vec<Vec<GroupElement>>> {
        self.check_host(w)?;
        let lw = self.len_of(w) as usize;
        let mut levels: Vec<Vec<GroupElement>> = vec![Vec::new(); lw + 1];
        let mut seen: std::collections::HashSet<Vec<i32>> =
            std::collections::HashSet::from([w.window().to_vec()]);
        levels[lw].push(w.clone());
        for l in (1..=lw).rev() {
            // Split borrows: covers found at level l populate level l-1.
            let (lower, upper) = levels.split_at_mut(l);
            for x in &upper[0] {
                for t in &self.reflections {
                    let y = x.mul(t);
                    if self.len_of(&y) == l as u32 - 1 && seen.insert(y.window().to_vec()) {
                        lower[l - 1].push(y);
                    }
                }
            }
        }
        Ok(levels)
    }

    /// Rank counts of the Bruhat interval: entry `k` is the number of
    /// `u <= w` with `l(u) = k`.
    pub fn poincare(&self, w: &GroupElement) -> Result<Vec<u64>> {
        Ok(self
            .interval_by_length(w)?
            .iter()
            .map(|lvl| lvl.len() as u64)
            .collect())
    }

    /// Rank symmetry of `[e, w]` with respect to length.
    pub fn is_rationally_smooth(&self, w: &GroupElement) -> Result<bool> {
        let p = self.poincare(w)?;
        Ok((0..p.len() / 2).all(|k| p[k] == p[p.len() - 1 - k]))
    }

    /// Bruhat order, decided by downward search from `w`.
    pub fn bruhat_leq(&self, u: &GroupElement, w: &GroupElement) -> Result<bool> {
        self.check_host(u)?;
        self.check_host(w)?;
        let (lu, lw) = (self.len_of(u), self.len_of(w));
        if lu > lw {
            return Ok(false);
        }
        if lu == lw {
            return Ok(u == w);
        }
        // Search only down to the level of u.
        let mut frontier = vec![w.clone()];
        let mut seen: std::collections::HashSet<Vec<i32>> =
            std::collections::HashSet::from([w.window().to_vec()]);
        for l in ((lu + 1)..=lw).rev() {
            let mut next = Vec::new();
            for x in &frontier {
                for t in &self.reflections {
                    let y = x.mul(t);
                    if self.len_of(&y) == l - 1 && seen.insert(y.window().to_vec()) {
                        if y == *u {
                            return Ok(true);
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(false)
    }

    /// Count of rationally smooth elements in the whole group.
    pub fn rationally_smooth_count(&self) -> Result<u64> {
        let mut count = 0;
        for w in enumerate_group(self.family, self.rank, MAX_ELEMENTS)? {
            if self.is_rationally_smooth(&w)? {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// All reflections of the group, enumerated directly in window form:
/// transpositions for type A; transpositions, sign-flipping transpositions,
/// and single sign changes for type BC; the first two kinds for type D.
pub fn reflections(family: WeylFamily, rank: usize) -> Result<Vec<GroupElement>> {
    let id = GroupElement::identity(family, rank)?;
    let m = id.window().len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut w: Vec<i32> = (1..=m as i32).collect();
            w.swap(i, j);
            out.push(GroupElement::from_window(family, rank, w.clone())?);
            if family != WeylFamily::A {
                w[i] = -w[i];
                w[j] = -w[j];
                out.push(GroupElement::from_window(family, rank, w)?);
            }
        }
    }
    if family == WeylFamily::BC {
        for i in 0..m {
            let mut w: Vec<i32> = (1..=m as i32).collect();
            w[i] = -w[i];
            out.push(GroupElement::from_window(family, rank, w)?);
        }
    }
    let expected = match family {
        WeylFamily::A => rank * (rank + 1) / 2,
        WeylFamily::BC => rank * rank,
        WeylFamily::D => rank * rank - rank,
    };
    debug_assert_eq!(out.len(), expected, "reflection count mismatch");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{
        avoids_patterns_type_a, enumerate_group, longest_element, GroupElement, WeylFamily,
    };
    use super::*;
    use crate::vertexset::VertexSet;

    #[test]
    fn reflection_counts() {
        assert_eq!(reflections(WeylFamily::A, 4).unwrap().len(), 10);
        assert_eq!(reflections(WeylFamily::BC, 3).unwrap().len(), 9);
        assert_eq!(reflections(WeylFamily::D, 4).unwrap().len(), 12);
        // Reflections are involutions of odd length.
        for t in reflections(WeylFamily::BC, 3).unwrap() {
            assert!(t.mul(&t).is_identity());
            assert_eq!(t.length() % 2, 1);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = Oracle::new(WeylFamily::BC, 6, 5).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(Oracle::new(WeylFamily::BC, 5, 5).is_ok());
    }

    #[test]
    fn poincare_of_longest_a2() {
        let oracle = Oracle::new(WeylFamily::A, 2, 5).unwrap();
        let w = longest_element(WeylFamily::A, 2, VertexSet::range(1, 2)).unwrap();
        assert_eq!(oracle.poincare(&w).unwrap(), vec![1, 2, 2, 1]);
        assert!(oracle.is_rationally_smooth(&w).unwrap());
    }

    #[test]
    fn pattern_3412_is_singular() {
        let oracle = Oracle::new(WeylFamily::A, 3, 5).unwrap();
        let w = GroupElement::from_window(WeylFamily::A, 3, vec![3, 4, 1, 2]).unwrap();
        assert!(!oracle.is_rationally_smooth(&w).unwrap());
        let p = oracle.poincare(&w).unwrap();
        assert_eq!(p[0], 1);
        assert_eq!(*p.last().unwrap(), 1);
    }

    #[test]
    fn bruhat_basics() {
        let oracle = Oracle::new(WeylFamily::A, 2, 5).unwrap();
        let e = GroupElement::identity(WeylFamily::A, 2).unwrap();
        let s1 = GroupElement::generator(WeylFamily::A, 2, 1).unwrap();
        let w0 = GroupElement::from_word(WeylFamily::A, 2, &[1, 2, 1]).unwrap();
        for w in enumerate_group(WeylFamily::A, 2, 100).unwrap() {
            assert!(oracle.bruhat_leq(&e, &w).unwrap());
            assert!(oracle.bruhat_leq(&w, &w0).unwrap());
            assert!(oracle.bruhat_leq(&w, &w).unwrap());
        }
        assert!(oracle.bruhat_leq(&s1, &w0).unwrap());
        let s2 = GroupElement::generator(WeylFamily::A, 2, 2).unwrap();
        assert!(!oracle.bruhat_leq(&s1, &s2).unwrap());
    }

    /// Independent subword-criterion oracle: u <= w iff u appears as a
    /// subword of a fixed reduced word for w. Cross-checked against the
    /// cover-search implementation on every pair in S_4 and B_3.
    #[test]
    fn bruhat_agrees_with_subword_criterion() {
        for (wf, n) in [(WeylFamily::A, 3), (WeylFamily::BC, 3)] {
            let oracle = Oracle::new(wf, n, 5).unwrap();
            let all = enumerate_group(wf, n, 10_000).unwrap();
            for w in &all {
                let word = w.reduced_word();
                // DP closure: all elements representable as subwords.
                let mut reach: std::collections::HashSet<Vec<i32>> =
                    std::collections::HashSet::new();
                let id = GroupElement::identity(wf, n).unwrap();
                reach.insert(id.window().to_vec());
                let mut frontier: Vec<GroupElement> = vec![id];
                let mut all_reach = frontier.clone();
                for &s in &word {
                    let mut added = Vec::new();
                    for x in &all_reach {
                        let y = x.times_generator(s);
                        if reach.insert(y.window().to_vec()) {
                            added.push(y);
                        }
                    }
                    all_reach.append(&mut added);
                    frontier.clear();
                }
                for u in &all {
                    let by_subword = reach.contains(u.window());
                    assert_eq!(
                        oracle.bruhat_leq(u, w).unwrap(),
                        by_subword,
                        "disagreement at u={u:?} w={w:?}"
                    );
                }
            }
        }
    }

    /// Bruhat order refines length and is inverse-invariant; rational
    /// smoothness is inverse-invariant.
    #[test]
    fn bruhat_and_smoothness_invariants() {
        let oracle = Oracle::new(WeylFamily::BC, 3, 5).unwrap();
        let all = enumerate_group(WeylFamily::BC, 3, 10_000).unwrap();
        for w in &all {
            assert_eq!(
                oracle.is_rationally_smooth(w).unwrap(),
                oracle.is_rationally_smooth(&w.inverse()).unwrap()
            );
        }
        for u in all.iter().take(12) {
            for w in &all {
                if oracle.bruhat_leq(u, w).unwrap() {
                    assert!(u.length() <= w.length());
                    assert!(oracle.bruhat_leq(&u.inverse(), &w.inverse()).unwrap());
                }
            }
        }
    }

    /// Type A: palindromicity equals Lakshmibai-Sandhya pattern avoidance,
    /// exhaustively over S_5.
    #[test]
    fn smoothness_equals_pattern_avoidance_s5() {
        let oracle = Oracle::new(WeylFamily::A, 4, 5).unwrap();
        for w in enumerate_group(WeylFamily::A, 4, 10_000).unwrap() {
            assert_eq!(
                oracle.is_rationally_smooth(&w).unwrap(),
                avoids_patterns_type_a(&w).unwrap(),
                "mismatch at {w:?}"
            );
        }
    }

    #[test]
    fn smooth_counts_small() {
        // a_n for n = 1..4 and d counts via Peterson's theorem.
        for (n, expect) in [(1usize, 2u64), (2, 6), (3, 22), (4, 88)] {
            let oracle = Oracle::new(WeylFamily::A, n, 5).unwrap();
            assert_eq!(oracle.rationally_smooth_count().unwrap(), expect);
        }
        let oracle = Oracle::new(WeylFamily::BC, 2, 5).unwrap();
        assert_eq!(oracle.rationally_smooth_count().unwrap(), 8);
    }
}
