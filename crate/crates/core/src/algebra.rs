//! Linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed into `u64` words. Elimination always
//! pivots on the lowest set bit, so reduced forms are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc & 1 == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense matrix over F2, stored row-major with bit-packed rows.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = BitVec::zeros(other.cols);
            for k in self.data[r].ones() {
                acc.xor_assign(&other.data[k]);
            }
            out.data[r] = acc;
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    m.set(ri, ci, true);
                }
            }
        }
        m
    }

    /// Rank by row reduction; the receiver is left untouched.
    pub fn rank(&self) -> usize {
        let mut basis = Echelon::new(self.cols, 0);
        let mut rank = 0;
        for row in &self.data {
            if basis.insert(row.clone(), BitVec::zeros(0)).is_none() {
                rank += 1;
            }
        }
        rank
    }

    /// Basis of the null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut basis = Echelon::new(self.rows, self.cols);
        let mut out = Vec::new();
        for c in 0..self.cols {
            if let Some(tag) = basis.insert(self.column(c), BitVec::unit(self.cols, c)) {
                out.push(tag);
            }
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Incrementally built echelon basis. Each stored vector carries a tag
/// vector that records how it was combined from inserted inputs.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    tag_len: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl Echelon {
    pub fn new(dim: usize, tag_len: usize) -> Self {
        Self {
            dim,
            tag_len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis, returning the residual and the XOR of
    /// tags of the basis vectors used.
    pub fn reduce(&self, mut v: BitVec) -> (BitVec, BitVec) {
        debug_assert_eq!(v.len(), self.dim);
        let mut tag = BitVec::zeros(self.tag_len);
        for (pivot, row, row_tag) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
        (v, tag)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).0.is_zero()
    }

    /// Inserts `v` with tag `tag`. If `v` is already in the span, returns the
    /// combined tag of the dependency (`tag` plus the tags used to reach zero).
    pub fn insert(&mut self, v: BitVec, tag: BitVec) -> Option<BitVec> {
        let (residual, mut acc) = self.reduce(v);
        acc.xor_assign(&tag);
        match residual.first_one() {
            None => Some(acc),
            Some(pivot) => {
                self.rows.push((pivot, residual, acc));
                None
            }
        }
    }
}

/// F2 rank of a matrix.
pub fn f2_rank(m: &BitMatrix) -> usize {
    m.rank()
}

/// Homology at the middle of `C_{k+1} --d_in--> C_k --d_out--> C_{k-1}`.
pub fn chain_homology(d_in: &BitMatrix, d_out: &BitMatrix) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNonzero);
    }
    let kernel = d_out.cols() - d_out.rank();
    Ok(kernel - d_in.rank())
}

/// Ranks indexed by Maslov grading. Zero ranks are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradedHomology {
    pub ranks: BTreeMap<i64, usize>,
}

impl GradedHomology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, grading: i64, rank: usize) {
        if rank > 0 {
            *self.ranks.entry(grading).or_insert(0) += rank;
        }
    }

    pub fn rank_at(&self, grading: i64) -> usize {
        self.ranks.get(&grading).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// The same ranks with every grading moved by `by`.
    pub fn shifted(&self, by: i64) -> Self {
        Self {
            ranks: self.ranks.iter().map(|(&g, &r)| (g + by, r)).collect(),
        }
    }
}

impl FromIterator<(i64, usize)> for GradedHomology {
    fn from_iter<I: IntoIterator<Item = (i64, usize)>>(iter: I) -> Self {
        let mut h = Self::new();
        for (g, r) in iter {
            h.add(g, r);
        }
        h
    }
}

impl fmt::Display for GradedHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .ranks
            .iter()
            .rev()
            .map(|(g, r)| {
                if *r == 1 {
                    format!("F_{{{g}}}")
                } else {
                    format!("F_{{{g}}}^{r}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A finite complex with a homogeneous basis: `gradings[k]` is the degree of
/// basis vector `k` and `differential[t][s] = 1` when `s` maps to `t`.
/// The differential must lower the grading by exactly one.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub gradings: Vec<i64>,
    pub differential: BitMatrix,
}

impl GradedComplex {
    pub fn new(gradings: Vec<i64>, differential: BitMatrix) -> Self {
        assert_eq!(differential.rows(), gradings.len());
        assert_eq!(differential.cols(), gradings.len());
        Self {
            gradings,
            differential,
        }
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    fn indices_at(&self, g: i64) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.gradings[k] == g).collect()
    }

    fn distinct_gradings(&self) -> Vec<i64> {
        let mut gs = self.gradings.clone();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    /// Checks the differential squares to zero and respects the grading.
    pub fn is_valid(&self) -> bool {
        let d = &self.differential;
        for s in 0..self.len() {
            for t in d.column(s).ones() {
                if self.gradings[t] != self.gradings[s] - 1 {
                    return false;
                }
            }
        }
        d.mul(d).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// Graded homology ranks.
    pub fn homology(&self) -> GradedHomology {
        let mut h = GradedHomology::new();
        let gs = self.distinct_gradings();
        let mut out_rank: BTreeMap<i64, usize> = BTreeMap::new();
        for &g in &gs {
            let src = self.indices_at(g);
            let dst = self.indices_at(g - 1);
            out_rank.insert(g, self.differential.select(&dst, &src).rank());
        }
        for &g in &gs {
            let n = self.indices_at(g).len();
            let r_out = out_rank[&g];
            let r_in = out_rank.get(&(g + 1)).copied().unwrap_or(0);
            h.add(g, n - r_out - r_in);
        }
        h
    }

    pub fn total_homology(&self) -> usize {
        self.homology().total()
    }

    /// Homology with explicit homogeneous representatives.
    pub fn homology_basis(&self) -> HomologyBasis {
        let n = self.len();
        let mut classes = Vec::new();
        for g in self.distinct_gradings() {
            let here = self.indices_at(g);
            let below = self.indices_at(g - 1);
            let above = self.indices_at(g + 1);
            let d_out = self.differential.select(&below, &here);
            let d_in = self.differential.select(&here, &above);
            let mut span = Echelon::new(here.len(), 0);
            for c in 0..d_in.cols() {
                span.insert(d_in.column(c), BitVec::zeros(0));
            }
            for z in d_out.kernel() {
                if span.insert(z.clone(), BitVec::zeros(0)).is_none() {
                    let mut full = BitVec::zeros(n);
                    for k in z.ones() {
                        full.set(here[k], true);
                    }
                    classes.push((g, full));
                }
            }
        }
        let h = classes.len();
        let mut echelon = Echelon::new(n, h);
        for c in 0..n {
            let col = self.differential.column(c);
            if !col.is_zero() {
                echelon.insert(col, BitVec::zeros(h));
            }
        }
        for (idx, (_, rep)) in classes.iter().enumerate() {
            let dependent = echelon.insert(rep.clone(), BitVec::unit(h, idx));
            debug_assert!(dependent.is_none());
        }
        HomologyBasis {
            gradings: classes.iter().map(|(g, _)| *g).collect(),
            reps: classes.into_iter().map(|(_, v)| v).collect(),
            echelon,
        }
    }
}

/// Representatives for a homology basis plus a solver expressing any cycle
/// in that basis.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub gradings: Vec<i64>,
    pub reps: Vec<BitVec>,
    echelon: Echelon,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `cycle`; `None` if `cycle` is not in the
    /// span of cycles (that is, it is not a cycle).
    pub fn coordinates(&self, cycle: &BitVec) -> Option<BitVec> {
        let (residual, tag) = self.echelon.reduce(cycle.clone());
        residual.is_zero().then_some(tag)
    }

    pub fn graded(&self) -> GradedHomology {
        self.gradings.iter().map(|&g| (g, 1)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(f2_rank(&BitMatrix::zeros(0, 0)), 0);
        assert_eq!(f2_rank(&BitMatrix::identity(2)), 2);
        assert_eq!(f2_rank(&BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]])), 1);
    }

    #[test]
    fn rank_leaves_input_alone() {
        let m = BitMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]);
        let before = m.clone();
        assert_eq!(m.rank(), 2);
        assert_eq!(m, before);
    }

    #[test]
    fn homology_examples() {
        let zero_in = BitMatrix::zeros(3, 0);
        let zero_out = BitMatrix::zeros(0, 3);
        assert_eq!(chain_homology(&zero_in, &zero_out).unwrap(), 3);

        let d_out = BitMatrix::from_rows(&[vec![1, 1]]);
        let d_in = BitMatrix::zeros(2, 0);
        assert_eq!(chain_homology(&d_in, &d_out).unwrap(), 1);
    }

    #[test]
    fn homology_rejects_nonzero_composition() {
        let d_in = BitMatrix::from_rows(&[vec![1]]);
        let d_out = BitMatrix::from_rows(&[vec![1]]);
        assert_eq!(
            chain_homology(&d_in, &d_out),
            Err(Error::CompositionNonzero)
        );
    }

    #[test]
    fn homology_rejects_mismatched_shapes() {
        let d_in = BitMatrix::zeros(2, 1);
        let d_out = BitMatrix::zeros(1, 3);
        assert!(matches!(
            chain_homology(&d_in, &d_out),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = BitMatrix::from_rows(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.apply(&v).is_zero());
        }
    }

    #[test]
    fn graded_homology_of_a_square() {
        // a -> b, a -> c, b -> d, c -> d with gradings 2, 1, 1, 0.
        let mut d = BitMatrix::zeros(4, 4);
        d.set(1, 0, true);
        d.set(2, 0, true);
        d.set(3, 1, true);
        d.set(3, 2, true);
        let c = GradedComplex::new(vec![2, 1, 1, 0], d);
        assert!(c.is_valid());
        assert!(c.homology().is_zero());
        assert_eq!(c.homology_basis().rank(), 0);
    }

    #[test]
    fn homology_basis_coordinates() {
        // a -> b; c is free. H = <c> in grading 0.
        let mut d = BitMatrix::zeros(3, 3);
        d.set(1, 0, true);
        let c = GradedComplex::new(vec![1, 0, 0], d);
        let hb = c.homology_basis();
        assert_eq!(hb.rank(), 1);
        assert_eq!(hb.graded(), [(0, 1)].into_iter().collect());
        let b = BitVec::unit(3, 1);
        assert!(hb.coordinates(&b).unwrap().is_zero());
        let cv = BitVec::unit(3, 2);
        assert!(hb.coordinates(&cv).unwrap().get(0));
        let mut bc = cv.clone();
        bc.xor_assign(&b);
        assert!(hb.coordinates(&bc).unwrap().get(0));
    }
}
