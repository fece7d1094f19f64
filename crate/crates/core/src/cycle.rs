use std::fmt;

use serde::{Serialize, Serializer};

/// A bijection on `{0, 1, ..., N}`, used for the cycle products `C_π` and
/// `D_π`. Products compose as maps, right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclePermutation {
    map: Vec<usize>,
}

impl CyclePermutation {
    pub fn identity(size: usize) -> Self {
        Self {
            map: (0..size).collect(),
        }
    }

    /// Builds the permutation from a total image table. Panics if `map` is not
    /// a bijection of `0..map.len()`.
    pub fn from_map(map: Vec<usize>) -> Self {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            assert!(v < map.len() && !seen[v], "not a bijection: {map:?}");
            seen[v] = true;
        }
        Self { map }
    }

    /// Product of the given cycles on `{0..size-1}`; unmentioned points are fixed.
    pub fn from_cycles(size: usize, cycles: &[Vec<usize>]) -> Self {
        let mut map: Vec<usize> = (0..size).collect();
        for cycle in cycles {
            for (i, &from) in cycle.iter().enumerate() {
                map[from] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_map(map)
    }

    /// Number of points in the domain, `N + 1`.
    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point]
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Self, inner: &Self) -> Self {
        assert_eq!(outer.size(), inner.size());
        Self {
            map: inner.map.iter().map(|&i| outer.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.size()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Self { map }
    }

    /// Conjugates by a relabelling: every point `i` is renamed `label(i)`.
    pub fn relabel(&self, label: impl Fn(usize) -> usize) -> Self {
        let mut map = vec![0; self.size()];
        for (i, &v) in self.map.iter().enumerate() {
            map[label(i)] = label(v);
        }
        Self::from_map(map)
    }

    /// Canonical disjoint-cycle decomposition: every cycle starts at its
    /// minimum and cycles are sorted by minimum. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.map[v];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// The cycle through `point`, read starting at `point`.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut out = vec![point];
        let mut v = self.map[point];
        while v != point {
            out.push(v);
            v = self.map[v];
        }
        out
    }

    pub fn same_cycle(&self, a: usize, b: usize) -> bool {
        self.orbit(a).contains(&b)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.map[point] == point
    }

    /// The points strictly between `from` and `to` when walking the cycle of
    /// `from`, or `None` if the two lie in different cycles.
    pub fn segment(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let orbit = self.orbit(from);
        let end = orbit.iter().position(|&v| v == to)?;
        Some(orbit[1..end].to_vec())
    }
}

impl fmt::Display for CyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Serialize for CyclePermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
