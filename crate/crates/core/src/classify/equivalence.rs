//! Filtered chain homotopy equivalence of small complexes.
//!
//! Two reduced complexes are filtered homotopy equivalent exactly when some
//! filtered, grading-preserving chain map between them has invertible
//! associated graded part. Chain maps form a linear space over F2, found by
//! solving `phi d_a = d_b phi`; the search then runs over the image of that
//! space in the bidegree-preserving blocks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BitMatrix, BitVec, Echelon};
use crate::complex::{reduce, KnotComplex};
use crate::error::{Error, Result};
use crate::regions::fingerprint;

/// Largest reduced complex accepted by [`filtered_equivalent`].
pub const MAX_GENERATORS: usize = 14;
const EXHAUSTIVE_BITS: usize = 22;
const RANDOM_TRIALS: usize = 1 << 16;

fn extent(c: &KnotComplex) -> i64 {
    c.generators
        .iter()
        .map(|g| g.alexander.abs())
        .max()
        .unwrap_or(0)
}

fn graded_multiset(c: &KnotComplex) -> Vec<(i64, i64)> {
    let mut v: Vec<_> = c
        .generators
        .iter()
        .map(|g| (g.alexander, g.maslov))
        .collect();
    v.sort_unstable();
    v
}

/// Whether `a` and `b` are filtered chain homotopy equivalent.
pub fn filtered_equivalent(a: &KnotComplex, b: &KnotComplex) -> Result<bool> {
    let ra = reduce(a)?;
    let rb = reduce(b)?;
    for r in [&ra, &rb] {
        if r.len() > MAX_GENERATORS {
            return Err(Error::TooLarge(r.len(), MAX_GENERATORS));
        }
    }
    if graded_multiset(&ra) != graded_multiset(&rb) {
        return Ok(false);
    }
    let g = extent(&ra).max(extent(&rb));
    if fingerprint(&ra, g)? != fingerprint(&rb, g)? {
        return Ok(false);
    }
    search(&ra, &rb)
}

fn search(a: &KnotComplex, b: &KnotComplex) -> Result<bool> {
    let n = a.len();
    if n == 0 {
        return Ok(true);
    }
    let da = a.differential()?;
    let db = b.differential()?;
    // Variable for each allowed entry phi[y][x]: y in b, x in a.
    let mut var = vec![vec![None; n]; n];
    let mut vars = Vec::new();
    for (x, gx) in a.generators.iter().enumerate() {
        for (y, gy) in b.generators.iter().enumerate() {
            let dm = gx.maslov - gy.maslov;
            if dm < 0 || dm % 2 != 0 {
                continue;
            }
            let c = dm / 2;
            if gy.alexander - c <= gx.alexander {
                var[y][x] = Some(vars.len());
                vars.push((y, x, c == 0 && gy.alexander == gx.alexander));
            }
        }
    }
    let nv = vars.len();
    // Equation (y, x): sum_w phi[y][w] da[w][x] + sum_w db[y][w] phi[w][x] = 0.
    let mut rows = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for y in 0..n {
        for x in 0..n {
            let mut eq = BitVec::zeros(nv);
            for w in 0..n {
                if da.get(w, x) {
                    if let Some(v) = var[y][w] {
                        eq.flip(v);
                    }
                }
                if db.get(y, w) {
                    if let Some(v) = var[w][x] {
                        eq.flip(v);
                    }
                }
            }
            if !eq.is_zero() {
                rows.push(eq);
            }
        }
    }
    let mut system = BitMatrix::zeros(rows.len(), nv);
    for (r, eq) in rows.iter().enumerate() {
        for v in eq.ones() {
            system.set(r, v, true);
        }
    }
    let solutions = system.kernel();

    // Blocks of bidegree-preserving entries, keyed by (A, M).
    let diag: Vec<usize> = (0..nv).filter(|&v| vars[v].2).collect();
    let mut buckets: BTreeMap<(i64, i64), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (x, g) in a.generators.iter().enumerate() {
        buckets
            .entry((g.alexander, g.maslov))
            .or_default()
            .0
            .push(x);
    }
    for (y, g) in b.generators.iter().enumerate() {
        buckets
            .entry((g.alexander, g.maslov))
            .or_default()
            .1
            .push(y);
    }
    let project = |s: &BitVec| {
        let mut p = BitVec::zeros(diag.len());
        for (k, &v) in diag.iter().enumerate() {
            if s.get(v) {
                p.set(k, true);
            }
        }
        p
    };
    let invertible = |p: &BitVec| {
        let mut full = vec![vec![false; n]; n];
        for (k, &v) in diag.iter().enumerate() {
            if p.get(k) {
                let (y, x, _) = vars[v];
                full[y][x] = true;
            }
        }
        buckets.values().all(|(xs, ys)| {
            let mut m = BitMatrix::zeros(ys.len(), xs.len());
            for (r, &y) in ys.iter().enumerate() {
                for (c, &x) in xs.iter().enumerate() {
                    if full[y][x] {
                        m.set(r, c, true);
                    }
                }
            }
            m.rank() == xs.len()
        })
    };

    // Independent generators of the projected solution space.
    let mut span = Echelon::new(diag.len(), 0);
    let mut basis = Vec::new();
    for s in &solutions {
        let p = project(s);
        if span.insert(p.clone(), BitVec::zeros(0)).is_none() {
            basis.push(p);
        }
    }
    let k = basis.len();
    let combine = |mask: &dyn Fn(usize) -> bool| {
        let mut p = BitVec::zeros(diag.len());
        for (i, v) in basis.iter().enumerate() {
            if mask(i) {
                p.xor_assign(v);
            }
        }
        p
    };
    if k <= EXHAUSTIVE_BITS {
        for bits in 0u64..(1u64 << k) {
            if invertible(&combine(&|i| bits >> i & 1 == 1)) {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_TRIALS {
        let bits: Vec<bool> = (0..k).map(|_| rng.gen()).collect();
        if invertible(&combine(&|i| bits[i])) {
            return Ok(true);
        }
    }
    Err(Error::SearchBudget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{box_complex, direct_sum, mirror, staircase, tensor};

    #[test]
    fn trefoil_squared_is_staircase_plus_box() {
        let t3 = staircase(&[1, 1]).unwrap();
        let t = tensor(&t3, &t3).unwrap();
        let model = direct_sum(&staircase(&[1, 1, 1, 1]).unwrap(), &box_complex(1, -1));
        assert!(filtered_equivalent(&t, &model).unwrap());
    }

    #[test]
    fn renaming_is_equivalent() {
        let t3 = staircase(&[1, 1]).unwrap();
        assert!(filtered_equivalent(&t3, &t3.renamed("g")).unwrap());
    }

    #[test]
    fn mirror_is_not_equivalent() {
        let t3 = staircase(&[1, 1]).unwrap();
        assert!(!filtered_equivalent(&t3, &mirror(&t3).unwrap()).unwrap());
    }

    #[test]
    fn mirror_of_box_is_box() {
        let b = box_complex(1, 1);
        assert!(filtered_equivalent(&mirror(&b).unwrap(), &b).unwrap());
    }

    #[test]
    fn same_gradings_different_complexes() {
        let fig8 = crate::complex::figure_eight();
        let free = KnotComplex::new(fig8.generators.clone(), vec![]);
        assert!(!filtered_equivalent(&fig8, &free).unwrap());
    }

    #[test]
    fn caps_size() {
        let big = direct_sum(
            &staircase(&[1, 1, 1, 1, 1, 1, 1, 1]).unwrap(),
            &direct_sum(&box_complex(1, -3), &box_complex(1, -3)),
        );
        assert!(matches!(
            filtered_equivalent(&big, &big),
            Err(Error::TooLarge(17, 14))
        ));
    }
}
