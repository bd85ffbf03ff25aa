use std::fmt;

/// A set of graph vertices, stored as a bitmask over ids `1..=63`.
///
/// Vertex ids are the 1-based integers used throughout the crate (the
/// classical Dynkin graphs label their simple generators `s_1..s_n`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v >= 1 && v < 64);
        VertexSet(1 << v)
    }

    /// Contiguous range `lo..=hi` of vertex ids.
    pub fn range(lo: usize, hi: usize) -> Self {
        let mut s = VertexSet::empty();
        for v in lo..=hi {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v >= 1 && v < 64);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(&self, other: VertexSet) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    pub fn intersects(&self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min(self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max(self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn bits(&self) -> u64 {
        self.0
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_iter(iter)
    }
}
