//! Sparse exact echelon forms over `Rational`.

use std::collections::BTreeMap;

use crate::scalars::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `v += s * w`, dropping zeros.
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, s: &Rational, w: &SparseVec<K>) {
    if s.is_zero() {
        return;
    }
    for (k, c) in w {
        let e = v.entry(k.clone()).or_insert_with(Rational::zero);
        *e += s * c;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction<K> {
    /// Canonical representative modulo the span (no pivot coordinates).
    pub remainder: SparseVec<K>,
    /// Coefficients on the inserted generators with `v - remainder = Σ c_i g_i`.
    pub combo: SparseVec<usize>,
}

/// Incremental row echelon form; each row's pivot is its smallest key and
/// rows are kept fully reduced against each other.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: BTreeMap<K, Row<K>>,
    generators: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), generators: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduced rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values().map(|r| &r.vec)
    }

    fn reduce_row(&self, v: &SparseVec<K>) -> Row<K> {
        let mut vec = v.clone();
        let mut combo = SparseVec::new();
        // Rows are mutually reduced, so clearing each pivot once suffices.
        let pivots: Vec<K> = vec.keys().filter(|k| self.rows.contains_key(*k)).cloned().collect();
        for k in pivots {
            let c = vec.get(&k).cloned().expect("pivot entries are never cancelled");
            let row = &self.rows[&k];
            let s = -c;
            axpy(&mut vec, &s, &row.vec);
            axpy(&mut combo, &s, &row.combo);
        }
        Row { vec, combo }
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> Reduction<K> {
        let r = self.reduce_row(v);
        let combo = r.combo.into_iter().map(|(k, c)| (k, -c)).collect();
        Reduction { remainder: r.vec, combo }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce_row(v).vec.is_empty()
    }

    /// Adds generator number `generators()`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let id = self.generators;
        self.generators += 1;
        let mut row = self.reduce_row(v);
        row.combo.insert(id, Rational::one());
        let Some((pivot, lead)) = row.vec.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        for c in row.vec.values_mut() {
            *c = &*c * &inv;
        }
        for c in row.combo.values_mut() {
            *c = &*c * &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(c) = other.vec.get(&pivot).cloned() {
                let s = -c;
                axpy(&mut other.vec, &s, &row.vec);
                axpy(&mut other.combo, &s, &row.combo);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    /// Coefficients `c` on the inserted generators with `Σ c_i g_i = v`, if any.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let r = self.reduce(v);
        r.remainder.is_empty().then_some(r.combo)
    }
}
