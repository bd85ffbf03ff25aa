//! Coxeter kernel for the classical Weyl groups.
//!
//! Elements are one-line windows: a permutation of `1..=n+1` for `A_n`, a
//! signed permutation of `1..=n` for `B_n`/`C_n` (one group, called `BC`
//! here), and an even-signed permutation for `D_n`.
//!
//! Generator conventions (these must match the Dynkin graphs in
//! [`crate::graphs`], where the type-B double edge sits at `{n-1, n}` and
//! the type-D fork hangs the leaves `1` and `2` off vertex `3`):
//!
//! * `A_n`: `s_i` is the transposition of window positions `i, i+1`.
//! * `BC_n`: `s_i` (`i < n`) as in type A on `n` positions; `s_n` negates
//!   the last coordinate.
//! * `D_n`: the fork generators act on the last two coordinates -- `s_1`
//!   swaps positions `n-1, n` and `s_2` maps `(x_{n-1}, x_n)` to
//!   `(-x_n, -x_{n-1})` -- while `s_k` (`k >= 3`) swaps positions
//!   `n-k+1, n-k+2`, so the chain walks down to the first coordinate.
//!   This matches the standard positive system `{e_i - e_j, e_i + e_j}`,
//!   which the one-line descent tests rely on.
//!
//! The mapping is validated by tests checking group orders, longest-element
//! lengths, and the full Coxeter matrix against the graph.

pub mod oracle;

pub use oracle::Oracle;

use crate::error::{Error, Result};
use crate::graphs::Family;
use crate::vertexset::VertexSet;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

/// Host Weyl-group family. `B_n` and `C_n` share a Coxeter system and are
/// represented once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylFamily {
    A,
    BC,
    D,
}

impl WeylFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeylFamily::A => "A",
            WeylFamily::BC => "BC",
            WeylFamily::D => "D",
        }
    }

    pub fn from_graph_family(f: Family) -> Result<WeylFamily> {
        match f {
            Family::A => Ok(WeylFamily::A),
            Family::B | Family::C => Ok(WeylFamily::BC),
            Family::D => Ok(WeylFamily::D),
            Family::Custom => Err(Error::UnsupportedGraph(
                String::from("the Coxeter kernel only supports classical families"),
            )),
        }
    }

    fn min_rank(&self) -> usize {
        match self {
            WeylFamily::A | WeylFamily::BC => 1,
            WeylFamily::D => 3,
        }
    }

    fn window_len(&self, rank: usize) -> usize {
        match self {
            WeylFamily::A => rank + 1,
            WeylFamily::BC | WeylFamily::D => rank,
        }
    }

    /// Group order, if it fits in a u64.
    pub fn order(&self, rank: usize) -> Option<u64> {
        let fact = |k: usize| -> Option<u64> {
            (1..=k as u64).try_fold(1u64, |acc, i| acc.checked_mul(i))
        };
        match self {
            WeylFamily::A => fact(rank + 1),
            WeylFamily::BC => fact(rank)?.checked_mul(1u64.checked_shl(rank as u32)?),
            WeylFamily::D => fact(rank)?.checked_mul(1u64.checked_shl(rank as u32 - 1)?),
        }
    }

    /// Length of the longest element.
    pub fn longest_length(&self, rank: usize) -> usize {
        match self {
            WeylFamily::A => rank * (rank + 1) / 2,
            WeylFamily::BC => rank * rank,
            WeylFamily::D => rank * rank - rank,
        }
    }
}

/// An element of a classical Weyl group in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    family: WeylFamily,
    rank: usize,
    /// `window[i]` is the image of `i+1`; negative entries encode sign
    /// flips. Type A windows are plain permutations.
    window: Vec<i32>,
}

fn check_rank(family: WeylFamily, rank: usize) -> Result<()> {
    if rank < family.min_rank() || rank > 32 {
        return Err(Error::argument(format!(
            "rank {rank} out of range for family {}",
            family.as_str()
        )));
    }
    Ok(())
}

/// `e_a - e_b` is a negative vector (signed basis convention `e_{-k} = -e_k`).
fn neg_diff(a: i32, b: i32) -> bool {
    if (a > 0) == (b > 0) {
        a > b
    } else {
        a < 0
    }
}

/// `e_a + e_b` is a negative vector.
fn neg_sum(a: i32, b: i32) -> bool {
    if a < 0 && b < 0 {
        true
    } else if (a > 0) == (b > 0) {
        false
    } else {
        a + b > 0
    }
}

impl GroupElement {
    pub fn identity(family: WeylFamily, rank: usize) -> Result<GroupElement> {
        check_rank(family, rank)?;
        let m = family.window_len(rank);
        Ok(GroupElement {
            family,
            rank,
            window: (1..=m as i32).collect(),
        })
    }

    /// Build an element from an explicit window, validating the family's
    /// sign constraints.
    pub fn from_window(family: WeylFamily, rank: usize, window: Vec<i32>) -> Result<GroupElement> {
        check_rank(family, rank)?;
        let m = family.window_len(rank);
        if window.len() != m {
            return Err(Error::argument(format!(
                "window length {} does not match rank {rank}",
                window.len()
            )));
        }
        let mut seen = vec![false; m + 1];
        let mut negatives = 0usize;
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > m || seen[a] {
                return Err(Error::argument(format!("window {window:?} is not a bijection")));
            }
            seen[a] = true;
            if v < 0 {
                negatives += 1;
            }
        }
        match family {
            WeylFamily::A => {
                if negatives > 0 {
                    return Err(Error::argument("type A windows must be positive"));
                }
            }
            WeylFamily::BC => {}
            WeylFamily::D => {
                if negatives % 2 != 0 {
                    return Err(Error::argument(
                        "type D windows need an even number of sign flips",
                    ));
                }
            }
        }
        Ok(GroupElement {
            family,
            rank,
            window,
        })
    }

    pub fn generator(family: WeylFamily, rank: usize, i: usize) -> Result<GroupElement> {
        check_rank(family, rank)?;
        if i < 1 || i > rank {
            return Err(Error::argument(format!("generator index {i} out of range")));
        }
        let mut e = GroupElement::identity(family, rank)?;
        e.right_multiply_generator(i);
        Ok(e)
    }

    pub fn from_word(family: WeylFamily, rank: usize, word: &[usize]) -> Result<GroupElement> {
        let mut e = GroupElement::identity(family, rank)?;
        for &i in word {
            if i < 1 || i > rank {
                return Err(Error::argument(format!("generator index {i} out of range")));
            }
            e.right_multiply_generator(i);
        }
        Ok(e)
    }

    pub fn family(&self) -> WeylFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i32 + 1)
    }

    fn same_host(&self, other: &GroupElement) -> Result<()> {
        if self.family != other.family || self.rank != other.rank {
            return Err(Error::HostMismatch(format!(
                "{}_{} vs {}_{}",
                self.family.as_str(),
                self.rank,
                other.family.as_str(),
                other.rank
            )));
        }
        Ok(())
    }

    /// Image of the signed point `v` under the element.
    fn apply(&self, v: i32) -> i32 {
        if v > 0 {
            self.window[v as usize - 1]
        } else {
            -self.window[(-v) as usize - 1]
        }
    }

    /// Group product `self * rhs` (composition: `(ab)(x) = a(b(x))`).
    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs).expect("host groups must match")
    }

    pub fn try_mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.same_host(rhs)?;
        let window = rhs.window.iter().map(|&v| self.apply(v)).collect();
        Ok(GroupElement {
            family: self.family,
            rank: self.rank,
            window,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let mut window = vec![0i32; self.window.len()];
        for (i, &v) in self.window.iter().enumerate() {
            let a = v.unsigned_abs() as usize;
            window[a - 1] = if v > 0 { i as i32 + 1 } else { -(i as i32 + 1) };
        }
        GroupElement {
            family: self.family,
            rank: self.rank,
            window,
        }
    }

    /// In-place right multiplication by the simple generator `s_i`.
    pub fn right_multiply_generator(&mut self, i: usize) {
        match self.family {
            WeylFamily::A => self.window.swap(i - 1, i),
            WeylFamily::BC => {
                if i < self.rank {
                    self.window.swap(i - 1, i);
                } else {
                    let n = self.rank;
                    self.window[n - 1] = -self.window[n - 1];
                }
            }
            WeylFamily::D => {
                let n = self.rank;
                match i {
                    1 => self.window.swap(n - 2, n - 1),
                    2 => {
                        let (a, b) = (self.window[n - 2], self.window[n - 1]);
                        self.window[n - 2] = -b;
                        self.window[n - 1] = -a;
                    }
                    _ => self.window.swap(n - i, n - i + 1),
                }
            }
        }
    }

    /// `self * s_i` as a new element.
    pub fn times_generator(&self, i: usize) -> GroupElement {
        let mut out = self.clone();
        out.right_multiply_generator(i);
        out
    }

    /// `s_i * self` as a new element.
    pub fn generator_times(&self, i: usize) -> GroupElement {
        // (s w)(x) = s(w(x)): apply the generator to window values.
        let mut out = self.clone();
        match self.family {
            WeylFamily::A => {
                let (a, b) = (i as i32, i as i32 + 1);
                for v in out.window.iter_mut() {
                    if *v == a {
                        *v = b;
                    } else if *v == b {
                        *v = a;
                    }
                }
            }
            WeylFamily::BC => {
                if i < self.rank {
                    let (a, b) = (i as i32, i as i32 + 1);
                    for v in out.window.iter_mut() {
                        if v.abs() == a {
                            *v = v.signum() * b;
                        } else if v.abs() == b {
                            *v = v.signum() * a;
                        }
                    }
                } else {
                    let n = self.rank as i32;
                    for v in out.window.iter_mut() {
                        if v.abs() == n {
                            *v = -*v;
                        }
                    }
                }
            }
            WeylFamily::D => {
                let n = self.rank as i32;
                match i {
                    1 => {
                        for v in out.window.iter_mut() {
                            if v.abs() == n - 1 {
                                *v = v.signum() * n;
                            } else if v.abs() == n {
                                *v = v.signum() * (n - 1);
                            }
                        }
                    }
                    2 => {
                        for v in out.window.iter_mut() {
                            if v.abs() == n - 1 {
                                *v = -v.signum() * n;
                            } else if v.abs() == n {
                                *v = -v.signum() * (n - 1);
                            }
                        }
                    }
                    _ => {
                        let (a, b) = (n - i as i32 + 1, n - i as i32 + 2);
                        for v in out.window.iter_mut() {
                            if v.abs() == a {
                                *v = v.signum() * b;
                            } else if v.abs() == b {
                                *v = v.signum() * a;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether `s_i` is a right descent: `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let w = &self.window;
        match self.family {
            WeylFamily::A => w[i - 1] > w[i],
            WeylFamily::BC => {
                if i < self.rank {
                    neg_diff(w[i - 1], w[i])
                } else {
                    w[self.rank - 1] < 0
                }
            }
            WeylFamily::D => {
                let n = self.rank;
                match i {
                    1 => neg_diff(w[n - 2], w[n - 1]),
                    2 => neg_sum(w[n - 2], w[n - 1]),
                    _ => neg_diff(w[n - i], w[n - i + 1]),
                }
            }
        }
    }

    pub fn right_descents(&self) -> VertexSet {
        VertexSet::from_iter((1..=self.rank).filter(|&i| self.has_right_descent(i)))
    }

    pub fn left_descents(&self) -> VertexSet {
        self.inverse().right_descents()
    }

    /// Coxeter length, computed by stripping right descents.
    pub fn length(&self) -> usize {
        let mut x = self.clone();
        let mut len = 0;
        'outer: loop {
            for i in 1..=self.rank {
                if x.has_right_descent(i) {
                    x.right_multiply_generator(i);
                    len += 1;
                    continue 'outer;
                }
            }
            debug_assert!(x.is_identity());
            return len;
        }
    }

    /// A reduced word, built by stripping the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut x = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 1..=self.rank {
                if x.inverse().has_right_descent(i) {
                    word.push(i);
                    x = x.generator_times(i);
                    continue 'outer;
                }
            }
            debug_assert!(x.is_identity());
            return word;
        }
    }

    /// Support: the generators appearing in any reduced expression.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_iter(self.reduced_word())
    }

    /// `(length, left descents, right descents, support)` in one call.
    pub fn length_descents_support(&self) -> (usize, VertexSet, VertexSet, VertexSet) {
        (
            self.length(),
            self.left_descents(),
            self.right_descents(),
            self.support(),
        )
    }
}

/// The longest element of the standard parabolic subgroup `W_J`.
///
/// All subsets of a finite Weyl group are spherical, so this always exists;
/// it is found by greedily appending non-descents from `J`.
pub fn longest_element(family: WeylFamily, rank: usize, j: VertexSet) -> Result<GroupElement> {
    let mut w = GroupElement::identity(family, rank)?;
    if let Some(bad) = j.iter().find(|&s| s < 1 || s > rank) {
        return Err(Error::argument(format!("generator {bad} out of range")));
    }
    'outer: loop {
        for s in j.iter() {
            if !w.has_right_descent(s) {
                w.right_multiply_generator(s);
                continue 'outer;
            }
        }
        return Ok(w);
    }
}

/// Unique parabolic factorization `w = v u` with `v` in `W^J` (no right
/// descents inside `J`) and `u` in `W_J`; lengths add.
pub fn parabolic_decompose(w: &GroupElement, j: VertexSet) -> (GroupElement, GroupElement) {
    let mut v = w.clone();
    let mut u = GroupElement::identity(w.family, w.rank).unwrap();
    'outer: loop {
        for s in j.iter() {
            if v.has_right_descent(s) {
                v.right_multiply_generator(s);
                u = u.generator_times(s);
                continue 'outer;
            }
        }
        return (v, u);
    }
}

/// Billey-Postnikov test: the parabolic decomposition `w = vu` with respect
/// to `J` satisfies `S(v) n J <= D_L(u)`.
pub fn is_bp_decomposition(w: &GroupElement, j: VertexSet) -> bool {
    let (v, u) = parabolic_decompose(w, j);
    v.support().intersect(j).is_subset(u.left_descents())
}

/// `bp(w)`: generators `s` of `S(w)` such that `w` has a BP decomposition
/// with respect to `S(w) - {s}`.
pub fn bp_set(w: &GroupElement) -> VertexSet {
    let s_w = w.support();
    VertexSet::from_iter(
        s_w.iter()
            .filter(|&s| is_bp_decomposition(w, s_w.difference(VertexSet::singleton(s)))),
    )
}

/// Maximality class of a nonidentity element within `W_{S(w)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maximality {
    /// `w` is the longest element of `W_{S(w)}`.
    Maximal,
    /// Both `w` and its inverse are nearly-maximal.
    AlmostMaximal,
    /// `w` has a Grassmannian BP decomposition `w = vu` with `S(u)` strictly
    /// inside `S(v)` (and `w` is not maximal).
    NearlyMaximal,
    None,
}

fn is_nearly_maximal_nonmax(w: &GroupElement) -> bool {
    let s_w = w.support();
    let found = s_w.iter().any(|s| {
        let j = s_w.difference(VertexSet::singleton(s));
        let (v, u) = parabolic_decompose(w, j);
        v.support().intersect(j).is_subset(u.left_descents())
            && u.support().is_strict_subset(v.support())
    });
    found
}

pub fn classify_maximality(w: &GroupElement) -> Result<Maximality> {
    if w.is_identity() {
        return Err(Error::argument("maximality is defined for nonidentity elements"));
    }
    let s_w = w.support();
    if *w == longest_element(w.family, w.rank, s_w)? {
        return Ok(Maximality::Maximal);
    }
    if is_nearly_maximal_nonmax(w) {
        if is_nearly_maximal_nonmax(&w.inverse()) {
            Ok(Maximality::AlmostMaximal)
        } else {
            Ok(Maximality::NearlyMaximal)
        }
    } else {
        Ok(Maximality::None)
    }
}

/// Maximal or nearly-maximal: the condition a nearly-maximal labelling puts
/// on each block label.
pub fn is_max_or_nearly_maximal(w: &GroupElement) -> bool {
    if w.is_identity() {
        return false;
    }
    let s_w = w.support();
    *w == longest_element(w.family, w.rank, s_w).unwrap() || is_nearly_maximal_nonmax(w)
}

/// Lakshmibai-Sandhya pattern test for type A: smooth iff the window avoids
/// 3412 and 4231.
pub fn avoids_patterns_type_a(w: &GroupElement) -> Result<bool> {
    if w.family != WeylFamily::A {
        return Err(Error::argument("pattern avoidance applies to type A only"));
    }
    let v = &w.window;
    let m = v.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for l in k + 1..m {
                    let (a, b, c, d) = (v[i], v[j], v[k], v[l]);
                    // 3412: c < d < a < b
                    if c < d && d < a && a < b {
                        return Ok(false);
                    }
                    // 4231: d < b < c < a
                    if d < b && b < c && c < a {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Enumerate the whole group by breadth-first closure, each element once.
pub fn enumerate_group(
    family: WeylFamily,
    rank: usize,
    budget: u64,
) -> Result<Vec<GroupElement>> {
    check_rank(family, rank)?;
    let order = family.order(rank).unwrap_or(u64::MAX);
    if order > budget {
        return Err(Error::capability(
            format!("group order for {}_{rank}", family.as_str()),
            budget,
            order,
        ));
    }
    let id = GroupElement::identity(family, rank)?;
    let mut seen: HashSet<Vec<i32>> = HashSet::from([id.window.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(w) = queue.pop_front() {
        for i in 1..=rank {
            let next = w.times_generator(i);
            if seen.insert(next.window.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    debug_assert_eq!(out.len() as u64, order);
    Ok(out)
}

/// Enumerate the standard parabolic subgroup `W_J` (closure over the
/// generators in `J` only).
pub fn enumerate_parabolic(
    family: WeylFamily,
    rank: usize,
    j: VertexSet,
    budget: u64,
) -> Result<Vec<GroupElement>> {
    let id = GroupElement::identity(family, rank)?;
    let mut seen: HashSet<Vec<i32>> = HashSet::from([id.window.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(w) = queue.pop_front() {
        for i in j.iter() {
            let next = w.times_generator(i);
            if seen.insert(next.window.clone()) {
                if out.len() as u64 >= budget {
                    return Err(Error::capability("parabolic subgroup order", budget, budget + 1));
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::build_dynkin;

    fn we(family: WeylFamily, rank: usize, word: &[usize]) -> GroupElement {
        GroupElement::from_word(family, rank, word).unwrap()
    }

    /// The window realizations must reproduce the graph's Coxeter matrix.
    #[test]
    fn coxeter_matrix_matches_graphs() {
        for (wf, gf, lo) in [
            (WeylFamily::A, Family::A, 1),
            (WeylFamily::BC, Family::B, 1),
            (WeylFamily::D, Family::D, 3),
        ] {
            for n in lo..=6 {
                let g = build_dynkin(gf, n).unwrap();
                for i in 1..=n {
                    for j in 1..=n {
                        let gi = GroupElement::generator(wf, n, i).unwrap();
                        let gj = GroupElement::generator(wf, n, j).unwrap();
                        let prod = gi.mul(&gj);
                        let mut pow = prod.clone();
                        let mut order = 1;
                        while !pow.is_identity() {
                            pow = pow.mul(&prod);
                            order += 1;
                            assert!(order <= 8, "generator product order diverged");
                        }
                        assert_eq!(
                            order,
                            g.coxeter_m(i, j),
                            "m({i},{j}) wrong in {}_{n}",
                            wf.as_str()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn group_orders_and_longest_lengths() {
        for (wf, lo) in [(WeylFamily::A, 1), (WeylFamily::BC, 1), (WeylFamily::D, 3)] {
            for n in lo..=5 {
                let all = enumerate_group(wf, n, 1_000_000).unwrap();
                assert_eq!(all.len() as u64, wf.order(n).unwrap());
                let w0 = longest_element(wf, n, VertexSet::range(1, n)).unwrap();
                assert_eq!(w0.length(), wf.longest_length(n));
                assert_eq!(w0.right_descents(), VertexSet::range(1, n));
                assert_eq!(w0.left_descents(), VertexSet::range(1, n));
                assert!(w0.mul(&w0).is_identity());
            }
        }
        assert_eq!(enumerate_group(WeylFamily::A, 3, 10).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn braid_relations() {
        assert_eq!(
            we(WeylFamily::A, 2, &[1, 2, 1]),
            we(WeylFamily::A, 2, &[2, 1, 2])
        );
        assert_eq!(
            we(WeylFamily::BC, 2, &[1, 2, 1, 2]),
            we(WeylFamily::BC, 2, &[2, 1, 2, 1])
        );
        assert_ne!(
            we(WeylFamily::BC, 2, &[1, 2, 1]),
            we(WeylFamily::BC, 2, &[2, 1, 2])
        );
        assert_eq!(
            we(WeylFamily::A, 3, &[1, 2, 3]).inverse(),
            we(WeylFamily::A, 3, &[3, 2, 1])
        );
    }

    #[test]
    fn lengths_and_descents() {
        let id = GroupElement::identity(WeylFamily::A, 4).unwrap();
        let (l, dl, dr, s) = id.length_descents_support();
        assert_eq!((l, dl, dr, s), (0, VertexSet::empty(), VertexSet::empty(), VertexSet::empty()));

        let u12 = we(WeylFamily::A, 2, &[1, 2, 1]);
        let (l, dl, dr, s) = u12.length_descents_support();
        assert_eq!(l, 3);
        assert_eq!(dl, VertexSet::from_iter([1, 2]));
        assert_eq!(dr, VertexSet::from_iter([1, 2]));
        assert_eq!(s, VertexSet::from_iter([1, 2]));

        // w = s4 * s1 s2 s1 in A_4: left descents {1, 2, 4}.
        let w = we(WeylFamily::A, 4, &[4, 1, 2, 1]);
        assert_eq!(w.left_descents(), VertexSet::from_iter([1, 2, 4]));
        assert_eq!(w.length(), 4);
    }

    /// l(w s) = l(w) +- 1, with the sign matching the descent test.
    #[test]
    fn descent_consistency_exhaustive() {
        for (wf, n) in [(WeylFamily::A, 3), (WeylFamily::BC, 3), (WeylFamily::D, 3)] {
            for w in enumerate_group(wf, n, 10_000).unwrap() {
                let lw = w.length();
                for i in 1..=n {
                    let ws = w.times_generator(i);
                    if w.has_right_descent(i) {
                        assert_eq!(ws.length(), lw - 1);
                    } else {
                        assert_eq!(ws.length(), lw + 1);
                    }
                }
                // D_L(w) = D_R(w^{-1}) and support is inverse-invariant.
                assert_eq!(w.left_descents(), w.inverse().right_descents());
                assert_eq!(w.support(), w.inverse().support());
                assert_eq!(
                    GroupElement::from_word(wf, n, &w.reduced_word()).unwrap(),
                    w
                );
                assert_eq!(w.reduced_word().len(), lw);
            }
        }
    }

    /// Greedy descent-stripping length equals true shortest-word length
    /// (breadth-first depth from the identity).
    #[test]
    fn lengths_match_bfs_depth() {
        use std::collections::{HashMap, VecDeque};
        for (wf, n) in [(WeylFamily::A, 3), (WeylFamily::BC, 3), (WeylFamily::D, 4)] {
            let id = GroupElement::identity(wf, n).unwrap();
            let mut depth: HashMap<Vec<i32>, usize> = HashMap::from([(id.window().to_vec(), 0)]);
            let mut queue = VecDeque::from([id]);
            while let Some(w) = queue.pop_front() {
                let d = depth[w.window()];
                for i in 1..=n {
                    let x = w.times_generator(i);
                    if !depth.contains_key(x.window()) {
                        depth.insert(x.window().to_vec(), d + 1);
                        queue.push_back(x);
                    }
                }
            }
            for w in enumerate_group(wf, n, 10_000).unwrap() {
                assert_eq!(w.length(), depth[w.window()], "length wrong at {w:?}");
            }
        }
    }

    #[test]
    fn longest_parabolic() {
        let u = longest_element(WeylFamily::A, 4, VertexSet::from_iter([1, 2])).unwrap();
        assert_eq!(u, we(WeylFamily::A, 4, &[1, 2, 1]));
        assert_eq!(u.length(), 3);

        let ub2 = longest_element(WeylFamily::BC, 2, VertexSet::from_iter([1, 2])).unwrap();
        assert_eq!(ub2.length(), 4);

        let e = longest_element(WeylFamily::A, 3, VertexSet::empty()).unwrap();
        assert!(e.is_identity());

        // Component lengths add: J = {1, 3} in A_4.
        let u13 = longest_element(WeylFamily::A, 4, VertexSet::from_iter([1, 3])).unwrap();
        assert_eq!(u13.length(), 2);
        assert_eq!(u13.left_descents(), VertexSet::from_iter([1, 3]));
    }

    #[test]
    fn parabolic_decomposition_examples() {
        // w = s2 s3 s4 s1 s2 s1 in A_4 with J = {1,2,4}: v = s2 s3,
        // u = s4 s1 s2 s1.
        let w = we(WeylFamily::A, 4, &[2, 3, 4, 1, 2, 1]);
        let j = VertexSet::from_iter([1, 2, 4]);
        let (v, u) = parabolic_decompose(&w, j);
        assert_eq!(v, we(WeylFamily::A, 4, &[2, 3]));
        assert_eq!(u, we(WeylFamily::A, 4, &[4, 1, 2, 1]));
        assert_eq!(v.length() + u.length(), w.length());
        assert!(v.right_descents().intersect(j).is_empty());
        assert!(is_bp_decomposition(&w, j));

        // w inside W_J: v = e; J empty: u = e.
        let w2 = we(WeylFamily::A, 4, &[1, 2]);
        let (v2, u2) = parabolic_decompose(&w2, VertexSet::from_iter([1, 2]));
        assert!(v2.is_identity());
        assert_eq!(u2, w2);
        let (v3, u3) = parabolic_decompose(&w2, VertexSet::empty());
        assert_eq!(v3, w2);
        assert!(u3.is_identity());

        // Grassmannian BP from the same example.
        assert!(is_bp_decomposition(
            &we(WeylFamily::A, 4, &[4, 1, 2, 1]),
            VertexSet::from_iter([1, 2])
        ));
    }

    /// Lengths add for every (w, J) in small groups.
    #[test]
    fn parabolic_lengths_add_exhaustive() {
        for (wf, n) in [(WeylFamily::A, 3), (WeylFamily::BC, 3), (WeylFamily::D, 4)] {
            for w in enumerate_group(wf, n, 10_000).unwrap() {
                for jmask in 0u64..(1 << n) {
                    let j = VertexSet::from_iter((1..=n).filter(|i| jmask >> (i - 1) & 1 == 1));
                    let (v, u) = parabolic_decompose(&w, j);
                    assert_eq!(v.length() + u.length(), w.length());
                    assert_eq!(v.mul(&u), w);
                    assert!(u.support().is_subset(j));
                    assert!(v.right_descents().intersect(j).is_empty());
                }
            }
        }
    }

    #[test]
    fn bp_sets() {
        // u_S is maximal, so every Grassmannian decomposition is BP.
        let u_s = we(WeylFamily::A, 2, &[1, 2, 1]);
        assert_eq!(bp_set(&u_s), VertexSet::from_iter([1, 2]));

        let w = we(WeylFamily::A, 2, &[1, 2]);
        assert_eq!(bp_set(&w), VertexSet::singleton(1));

        let s = GroupElement::generator(WeylFamily::A, 3, 2).unwrap();
        assert_eq!(bp_set(&s), VertexSet::singleton(2));

        // The 3412 pattern has an empty bp set.
        let w3412 = we(WeylFamily::A, 3, &[2, 1, 3, 2]);
        assert_eq!(w3412.window(), &[3, 4, 1, 2]);
        assert_eq!(bp_set(&w3412), VertexSet::empty());
    }

    #[test]
    fn maximality_classes() {
        let u_s = we(WeylFamily::A, 2, &[1, 2, 1]);
        assert_eq!(classify_maximality(&u_s).unwrap(), Maximality::Maximal);

        // s1 s2 in A_2 admits no Grassmannian BP decomposition with nested
        // supports, so it is in no maximality class.
        let w = we(WeylFamily::A, 2, &[1, 2]);
        assert_eq!(classify_maximality(&w).unwrap(), Maximality::None);

        // lambda_1 of the block {2,3} in BC_3 is s2 s3 s2: almost-maximal
        // with both descent sets {2}.
        let l1 = we(WeylFamily::BC, 3, &[2, 3, 2]);
        assert_eq!(l1.right_descents(), VertexSet::singleton(2));
        assert_eq!(l1.left_descents(), VertexSet::singleton(2));
        assert_eq!(classify_maximality(&l1).unwrap(), Maximality::AlmostMaximal);

        assert!(classify_maximality(&GroupElement::identity(WeylFamily::A, 2).unwrap()).is_err());
    }

    /// Brute-force check of the nearly-maximal definition over S_3 and S_4.
    #[test]
    fn maximality_brute_force() {
        for n in [2usize, 3] {
            for w in enumerate_group(WeylFamily::A, n, 10_000).unwrap() {
                if w.is_identity() {
                    continue;
                }
                let s_w = w.support();
                let expect_nearly = s_w.iter().any(|s| {
                    let j = s_w.difference(VertexSet::singleton(s));
                    let (v, u) = parabolic_decompose(&w, j);
                    is_bp_decomposition(&w, j) && u.support().is_strict_subset(v.support())
                }) && w != longest_element(WeylFamily::A, n, s_w).unwrap();
                let c = classify_maximality(&w).unwrap();
                let got_nearly =
                    c == Maximality::NearlyMaximal || c == Maximality::AlmostMaximal;
                assert_eq!(got_nearly, expect_nearly);
            }
        }
    }

    #[test]
    fn pattern_avoidance() {
        let w3412 = GroupElement::from_window(WeylFamily::A, 3, vec![3, 4, 1, 2]).unwrap();
        assert!(!avoids_patterns_type_a(&w3412).unwrap());
        let w4231 = GroupElement::from_window(WeylFamily::A, 3, vec![4, 2, 3, 1]).unwrap();
        assert!(!avoids_patterns_type_a(&w4231).unwrap());
        let id = GroupElement::identity(WeylFamily::A, 3).unwrap();
        assert!(avoids_patterns_type_a(&id).unwrap());
    }

    #[test]
    fn window_validation() {
        assert!(GroupElement::from_window(WeylFamily::A, 2, vec![1, 3, 2]).is_ok());
        assert!(GroupElement::from_window(WeylFamily::A, 2, vec![-1, 3, 2]).is_err());
        assert!(GroupElement::from_window(WeylFamily::BC, 2, vec![-2, 1]).is_ok());
        assert!(GroupElement::from_window(WeylFamily::D, 3, vec![-2, 1, 3]).is_err());
        assert!(GroupElement::from_window(WeylFamily::D, 3, vec![-2, -1, 3]).is_ok());
        assert!(GroupElement::from_window(WeylFamily::A, 2, vec![1, 1, 2]).is_err());
        let a = GroupElement::identity(WeylFamily::A, 2).unwrap();
        let b = GroupElement::identity(WeylFamily::A, 3).unwrap();
        assert!(a.try_mul(&b).is_err());
    }
}
