//! Precomputed subspace-lattice tables for the exhaustive suites.
//!
//! The lattice of an ambient (p, n) does not depend on any structure, so it
//! is built once and shared: subspaces in canonical order, containment
//! masks, sum and intersection tables, and the Λ² image of every subspace.
//! A [`StructureTable`] then adds the per-structure δ values and everything
//! derived from them. The public operations in [`crate::closure`] compute
//! the same quantities by direct enumeration; the two routes are checked
//! against each other in tests.

use std::collections::HashMap;

use crate::enumerate::{self, Guardrail};
use crate::error::Result;
use crate::subspace::Subspace;
use crate::vector::FpVector;
use crate::wedge;

/// Fixed-width bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

/// Structure-independent tables for the subspace lattice of F_p^n.
pub(crate) struct AmbientLattice {
    /// All subspaces in canonical (dimension-major) order.
    pub subspaces: Vec<Subspace>,
    pub dims: Vec<usize>,
    /// All ambient vectors in enumeration order.
    pub vectors: Vec<FpVector>,
    /// vec_mask[i] = vectors contained in subspaces[i].
    pub vec_mask: Vec<Bits>,
    /// up[i] = indices of superspaces of i (including i).
    pub up: Vec<Bits>,
    /// down[i] = indices of subspaces of i (including i).
    pub down: Vec<Bits>,
    /// sum[i][j] = index of subspaces[i] + subspaces[j].
    pub sum: Vec<Vec<u32>>,
    /// inter[i][j] = index of subspaces[i] ∩ subspaces[j].
    pub inter: Vec<Vec<u32>>,
    /// line_of[v] = index of the span of vectors[v].
    pub line_of: Vec<u32>,
    /// lambda2[i] = the image of Λ² subspaces[i] in the wedge ambient.
    pub lambda2: Vec<Subspace>,
}

impl AmbientLattice {
    pub fn build(p: u64, n: usize, guard: &Guardrail) -> Result<Self> {
        guard.check(enumerate::subspace_count(p, n))?;
        guard.check(enumerate::vector_count(p, n))?;
        let subspaces = enumerate::subspaces(p, n, guard)?;
        let vectors: Vec<FpVector> = enumerate::vectors(p, n, guard)?.collect();
        let s_count = subspaces.len();
        let v_count = vectors.len();

        let dims: Vec<usize> = subspaces.iter().map(Subspace::dim).collect();

        let mut vec_mask = Vec::with_capacity(s_count);
        for s in &subspaces {
            let mut bits = Bits::new(v_count);
            for (vi, v) in vectors.iter().enumerate() {
                if s.contains(v)? {
                    bits.set(vi);
                }
            }
            vec_mask.push(bits);
        }

        // A subspace is contained in another exactly when its vector set is.
        let mut up = vec![Bits::new(s_count); s_count];
        let mut down = vec![Bits::new(s_count); s_count];
        for i in 0..s_count {
            for j in 0..s_count {
                if vec_mask[i].is_subset(&vec_mask[j]) {
                    up[i].set(j);
                    down[j].set(i);
                }
            }
        }

        // Intersections come from vector-mask intersection; the sum is the
        // first common superspace in dimension-major order, which is the
        // unique minimal one.
        let mask_index: HashMap<&Bits, u32> = vec_mask
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i as u32))
            .collect();
        let mut sum = vec![vec![0u32; s_count]; s_count];
        let mut inter = vec![vec![0u32; s_count]; s_count];
        for i in 0..s_count {
            for j in 0..s_count {
                let meet = vec_mask[i].and(&vec_mask[j]);
                inter[i][j] = *mask_index
                    .get(&meet)
                    .expect("intersection of subspaces is a subspace");
                sum[i][j] = up[i]
                    .and(&up[j])
                    .first_one()
                    .expect("the full space contains everything")
                    as u32;
            }
        }

        let mut line_of = Vec::with_capacity(v_count);
        for v in &vectors {
            let line = Subspace::span(p, n, std::slice::from_ref(v))?;
            let idx = subspaces
                .binary_search(&line)
                .expect("lines are enumerated subspaces");
            line_of.push(idx as u32);
        }

        let lambda2 = subspaces.iter().map(wedge::lambda2_embed).collect();

        Ok(Self {
            subspaces,
            dims,
            vectors,
            vec_mask,
            up,
            down,
            sum,
            inter,
            line_of,
            lambda2,
        })
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }
}

#[cfg(test)]
impl AmbientLattice {
    /// Lattice index of a canonical subspace, via the sorted order.
    pub fn index_of(&self, s: &Subspace) -> Option<u32> {
        self.subspaces.binary_search(s).ok().map(|i| i as u32)
    }
}

/// dim N(H) for every subspace of the lattice, for a given relation space.
pub(crate) fn relation_dims(lat: &AmbientLattice, relations: &Subspace) -> Result<Vec<u8>> {
    lat.lambda2
        .iter()
        .map(|l2| Ok(relations.intersect(l2)?.dim() as u8))
        .collect()
}

/// Per-structure δ table and everything derived from it.
pub(crate) struct StructureTable {
    /// Scaled predimension k·dim(H) - dim(N(H)) per subspace index.
    pub delta: Vec<i64>,
    pub ss: Vec<bool>,
    /// Index of the selfsufficient closure per subspace.
    pub css_of: Vec<u32>,
    /// δ of the closure: the d_k value of each subspace.
    pub dk_of: Vec<i64>,
}

impl StructureTable {
    pub fn build(lat: &AmbientLattice, k: u64, n_dims: &[u8]) -> Self {
        let count = lat.len();
        let delta: Vec<i64> = (0..count)
            .map(|i| k as i64 * lat.dims[i] as i64 - n_dims[i] as i64)
            .collect();

        let mut ss = vec![false; count];
        for i in 0..count {
            ss[i] = lat.up[i].iter_ones().all(|j| delta[j] >= delta[i]);
        }

        // The minimum-δ superspace of minimal dimension is the closure;
        // the up-sets iterate in canonical dimension-major order.
        let css_of: Vec<u32> = (0..count)
            .map(|i| {
                let min = lat.up[i]
                    .iter_ones()
                    .map(|j| delta[j])
                    .min()
                    .expect("i is a superspace of itself");
                lat.up[i]
                    .iter_ones()
                    .find(|&j| delta[j] == min)
                    .expect("minimum is attained") as u32
            })
            .collect();

        let dk_of: Vec<i64> = (0..count).map(|i| delta[css_of[i] as usize]).collect();

        Self {
            delta,
            ss,
            css_of,
            dk_of,
        }
    }

    /// Vectors v with d_k(H + ⟨v⟩) = d_k(H), as a mask over the vector list.
    pub fn closure_mask(&self, lat: &AmbientLattice, i: usize) -> Bits {
        let base = self.dk_of[i];
        let mut bits = Bits::new(lat.vectors.len());
        for v in 0..lat.vectors.len() {
            let join = lat.sum[i][lat.line_of[v] as usize] as usize;
            if self.dk_of[join] == base {
                bits.set(v);
            }
        }
        bits
    }

    /// Minimal extensions of a selfsufficient subspace, as lattice indices
    /// in canonical order.
    pub fn minimal_extensions(&self, lat: &AmbientLattice, i: usize) -> Vec<u32> {
        debug_assert!(self.ss[i]);
        let d = self.delta[i];
        let mut out = Vec::new();
        'candidates: for j in lat.up[i].iter_ones() {
            if j == i || self.delta[j] != d || !self.ss[j] {
                continue;
            }
            let between = lat.up[i].and(&lat.down[j]);
            for l in between.iter_ones() {
                if l != i && l != j && self.delta[l] <= d {
                    continue 'candidates;
                }
            }
            out.push(j as u32);
        }
        out
    }
}

#[cfg(test)]
impl StructureTable {
    pub fn from_structure(
        lat: &AmbientLattice,
        s: &crate::structure::BilinearStructure,
    ) -> Result<Self> {
        let n_dims = relation_dims(lat, s.relations())?;
        Ok(Self::build(lat, s.k(), &n_dims))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure;
    use crate::structure::BilinearStructure;

    fn lat(p: u64, n: usize) -> AmbientLattice {
        AmbientLattice::build(p, n, &Guardrail::default()).unwrap()
    }

    #[test]
    fn bits_basics() {
        let mut b = Bits::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert!(b.get(64));
        assert!(!b.get(63));
        assert_eq!(b.iter_ones().count(), 3);
        assert_eq!(b.first_one(), Some(0));
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        let mut c = Bits::new(130);
        c.set(64);
        assert!(c.is_subset(&b));
        assert!(!b.is_subset(&c));
        assert_eq!(b.and(&c), c);
    }

    #[test]
    fn lattice_tables_agree_with_direct_operations() {
        for (p, n) in [(2u64, 3usize), (3, 2)] {
            let lat = lat(p, n);
            for i in 0..lat.len() {
                for j in 0..lat.len() {
                    let s = lat.subspaces[i].sum(&lat.subspaces[j]).unwrap();
                    let m = lat.subspaces[i].intersect(&lat.subspaces[j]).unwrap();
                    assert_eq!(lat.sum[i][j], lat.index_of(&s).unwrap());
                    assert_eq!(lat.inter[i][j], lat.index_of(&m).unwrap());
                    assert_eq!(
                        lat.up[i].get(j),
                        lat.subspaces[j].contains_subspace(&lat.subspaces[i]).unwrap()
                    );
                }
            }
            for (vi, v) in lat.vectors.iter().enumerate() {
                let line = Subspace::span(p, n, std::slice::from_ref(v)).unwrap();
                assert_eq!(lat.line_of[vi], lat.index_of(&line).unwrap());
            }
        }
    }

    #[test]
    fn table_agrees_with_public_closure_operations() {
        let guard = Guardrail::default();
        let structures = vec![
            BilinearStructure::parse("p 2\ndim 3\nk 1\nrel 1 0 0\n").unwrap(),
            BilinearStructure::parse("p 2\ndim 3\nk 1\nrel 1 0 0\nrel 0 1 0\nrel 0 0 1\n")
                .unwrap(),
            BilinearStructure::parse("p 2\ndim 3\nk 2\nrel 1 1 0\nrel 0 0 1\n").unwrap(),
            BilinearStructure::parse("p 3\ndim 3\nk 1\nrel 1 0 2\n").unwrap(),
            BilinearStructure::parse(
                "p 2\ndim 4\nk 1\nrel 1 0 0 0 0 1\nrel 0 1 1 0 0 0\n",
            )
            .unwrap(),
        ];
        for s in structures {
            let lat = lat(s.p(), s.n());
            let table = StructureTable::from_structure(&lat, &s).unwrap();
            for (i, h) in lat.subspaces.iter().enumerate() {
                assert_eq!(table.delta[i], s.delta(h).unwrap().value(), "delta at {h}");
                assert_eq!(
                    table.ss[i],
                    closure::is_selfsufficient(&s, h, &guard).unwrap(),
                    "ss at {h}"
                );
                assert_eq!(
                    &lat.subspaces[table.css_of[i] as usize],
                    &closure::css(&s, h, &guard).unwrap(),
                    "css at {h}"
                );
                if table.ss[i] {
                    let me: Vec<&Subspace> = table
                        .minimal_extensions(&lat, i)
                        .iter()
                        .map(|&j| &lat.subspaces[j as usize])
                        .collect();
                    let public = closure::minimal_extensions(&s, h, &guard).unwrap();
                    assert_eq!(me.len(), public.len(), "minext count at {h}");
                    for (a, b) in me.iter().zip(&public) {
                        assert_eq!(*a, b);
                    }
                    let mask = table.closure_mask(&lat, i);
                    let set = closure::closure_set(&s, h, &guard).unwrap();
                    let from_mask: Vec<&FpVector> =
                        mask.iter_ones().map(|v| &lat.vectors[v]).collect();
                    assert_eq!(from_mask.len(), set.members.len(), "closure at {h}");
                    for (a, b) in from_mask.iter().zip(&set.members) {
                        assert_eq!(*a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn free_structure_table() {
        // With zero relations δ = k·dim, so everything is selfsufficient
        // and closures are trivial.
        let s = BilinearStructure::new(2, 3, 2, Subspace::zero(2, 3).unwrap()).unwrap();
        let lat = lat(2, 3);
        let table = StructureTable::from_structure(&lat, &s).unwrap();
        for i in 0..lat.len() {
            assert_eq!(table.delta[i], 2 * lat.dims[i] as i64);
            assert!(table.ss[i]);
            assert_eq!(table.css_of[i] as usize, i);
            assert_eq!(table.closure_mask(&lat, i), lat.vec_mask[i]);
        }
    }
}
