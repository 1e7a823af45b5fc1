//! Knot-level invariants read off a complex.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::GradedHomology;
use crate::complex::{reduce, KnotComplex};
use crate::error::{Error, Result};
use crate::regions::{exact_triangle, region_homology, Region};

/// Ranks of HFK-hat, by Alexander grading then Maslov grading.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfkTable {
    pub by_alexander: BTreeMap<i64, GradedHomology>,
}

impl HfkTable {
    pub fn rank(&self, s: i64, d: i64) -> usize {
        self.by_alexander.get(&s).map_or(0, |h| h.rank_at(d))
    }

    pub fn rank_at(&self, s: i64) -> usize {
        self.by_alexander.get(&s).map_or(0, GradedHomology::total)
    }

    pub fn total(&self) -> usize {
        self.by_alexander.values().map(GradedHomology::total).sum()
    }

    /// `rank(s, d) = rank(-s, d - 2s)` for every entry.
    pub fn is_skew_symmetric(&self) -> bool {
        self.by_alexander
            .iter()
            .all(|(&s, h)| h.ranks.iter().all(|(&d, &r)| self.rank(-s, d - 2 * s) == r))
    }
}

/// HFK-hat: generator counts of the reduced complex.
pub fn hfk(c: &KnotComplex) -> Result<HfkTable> {
    let r = reduce(c)?;
    let mut t = HfkTable::default();
    for g in &r.generators {
        t.by_alexander
            .entry(g.alexander)
            .or_default()
            .add(g.maslov, 1);
    }
    Ok(t)
}

/// Largest Alexander grading with nonzero HFK-hat.
pub fn genus(c: &KnotComplex) -> Result<i64> {
    hfk(c)?
        .by_alexander
        .keys()
        .next_back()
        .copied()
        .ok_or(Error::EmptyComplex)
}

/// Smallest `s` for which `C({i=0, j<=s})` surjects onto the homology of the column.
pub fn tau(c: &KnotComplex) -> Result<i64> {
    let column = Region::column(0);
    let h = region_homology(c, &column)?;
    if h.total() != 1 {
        return Err(Error::NotKnotLike(h.total()));
    }
    let lo = c.generators.iter().map(|g| g.alexander).min().unwrap_or(0) - 1;
    let hi = c.max_alexander().unwrap_or(0);
    for s in lo..=hi {
        if exact_triangle(c, &Region::column_below(s), &column)?.inclusion_rank == 1 {
            return Ok(s);
        }
    }
    unreachable!("the full column surjects onto itself")
}

/// Ranks of the hook complexes for `|s| <= genus`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookProfile {
    pub genus: i64,
    pub ranks: BTreeMap<i64, usize>,
    /// Rank one at `s = ±(genus + 1)`, hence for all `|s| > genus`.
    pub stable: bool,
}

impl HookProfile {
    /// Rank at `s`; ranks beyond the genus are one.
    pub fn rank(&self, s: i64) -> usize {
        self.ranks.get(&s).copied().unwrap_or(1)
    }

    /// The `N + sum (rank - 1)` excess over an L-space.
    pub fn excess(&self) -> i64 {
        self.ranks.values().map(|&r| r as i64 - 1).sum()
    }
}

impl std::fmt::Display for HookProfile {
    /// `{0:3, ±1:1}`, pairing `±s` when the ranks agree.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for s in 0..=self.genus {
            let (up, down) = (self.rank(s), self.rank(-s));
            if s == 0 {
                parts.push(format!("0:{up}"));
            } else if up == down {
                parts.push(format!("±{s}:{up}"));
            } else {
                parts.push(format!("{s}:{up}"));
                parts.push(format!("-{s}:{down}"));
            }
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn hook_profile(c: &KnotComplex) -> Result<HookProfile> {
    let g = genus(c)?;
    let ranks = (-g..=g)
        .into_par_iter()
        .map(|s| region_homology(c, &Region::hook(s)).map(|h| (s, h.total())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let stable = [-g - 1, g + 1]
        .iter()
        .map(|&s| region_homology(c, &Region::hook(s)).map(|h| h.total() == 1))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    Ok(HookProfile {
        genus: g,
        ranks,
        stable,
    })
}

fn large_threshold(g: i64) -> i64 {
    (2 * g - 1).max(1)
}

/// Rank of HF-hat of `N` surgery for `N >= max(2g - 1, 1)`.
pub fn large_surgery_rank(c: &KnotComplex, n: i64) -> Result<i64> {
    let profile = hook_profile(c)?;
    let min = large_threshold(profile.genus);
    if n < min {
        return Err(Error::NTooSmall { n, min });
    }
    Ok(n + profile.excess())
}

/// Hook rank attached to each residue `[s] mod N`, using the representative
/// of least absolute value (the nonnegative one on ties).
pub fn spinc_labels(c: &KnotComplex, n: i64) -> Result<Vec<(i64, usize)>> {
    let profile = hook_profile(c)?;
    let min = large_threshold(profile.genus);
    if n < min {
        return Err(Error::NTooSmall { n, min });
    }
    Ok((0..n)
        .map(|r| {
            let s = if r <= n - r { r } else { r - n };
            (r, profile.rank(s))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{figure_eight, mirror, staircase, tensor};

    #[test]
    fn hfk_of_trefoil() {
        let t = hfk(&staircase(&[1, 1]).unwrap()).unwrap();
        assert_eq!(t.rank(1, 0), 1);
        assert_eq!(t.rank(0, -1), 1);
        assert_eq!(t.rank(-1, -2), 1);
        assert_eq!(t.total(), 3);
        assert!(t.is_skew_symmetric());
    }

    #[test]
    fn hfk_of_figure_eight() {
        let t = hfk(&figure_eight()).unwrap();
        let ranks: Vec<usize> = (-1..=1).rev().map(|s| t.rank_at(s)).collect();
        assert_eq!(ranks, vec![1, 3, 1]);
    }

    #[test]
    fn hfk_matches_point_regions() {
        let t3 = staircase(&[1, 1]).unwrap();
        let c = tensor(&t3, &t3).unwrap();
        let t = hfk(&c).unwrap();
        for s in -3..=3 {
            let h = region_homology(&c, &Region::point(0, s)).unwrap();
            assert_eq!(t.by_alexander.get(&s).cloned().unwrap_or_default(), h);
        }
    }

    #[test]
    fn genus_examples() {
        let t3 = staircase(&[1, 1]).unwrap();
        assert_eq!(genus(&t3).unwrap(), 1);
        assert_eq!(genus(&tensor(&t3, &t3).unwrap()).unwrap(), 2);
        assert_eq!(genus(&crate::complex::free_generator("u")).unwrap(), 0);
        assert_eq!(genus(&KnotComplex::default()), Err(Error::EmptyComplex));
    }

    #[test]
    fn tau_examples() {
        let t3 = staircase(&[1, 1]).unwrap();
        assert_eq!(tau(&t3).unwrap(), 1);
        assert_eq!(tau(&mirror(&t3).unwrap()).unwrap(), -1);
        assert_eq!(tau(&figure_eight()).unwrap(), 0);
        let two = crate::complex::direct_sum(&t3, &t3);
        assert_eq!(tau(&two), Err(Error::NotKnotLike(2)));
    }

    #[test]
    fn hook_profiles() {
        let t3 = staircase(&[1, 1]).unwrap();
        let p = hook_profile(&t3).unwrap();
        assert!(p.ranks.values().all(|&r| r == 1));
        assert!(p.stable);
        let expected: BTreeMap<i64, usize> = [(-1, 1), (0, 3), (1, 1)].into_iter().collect();
        assert_eq!(hook_profile(&figure_eight()).unwrap().ranks, expected);
        assert_eq!(hook_profile(&mirror(&t3).unwrap()).unwrap().ranks, expected);
        assert_eq!(
            hook_profile(&figure_eight()).unwrap().to_string(),
            "{0:3, ±1:1}"
        );
    }

    #[test]
    fn large_surgery_examples() {
        assert_eq!(large_surgery_rank(&figure_eight(), 1).unwrap(), 3);
        let t5 = staircase(&[1, 1, 1, 1]).unwrap();
        assert_eq!(large_surgery_rank(&t5, 3).unwrap(), 3);
        assert_eq!(
            large_surgery_rank(&t5, 2),
            Err(Error::NTooSmall { n: 2, min: 3 })
        );
        assert_eq!(
            large_surgery_rank(&staircase(&[1, 1]).unwrap(), 1).unwrap(),
            1
        );
    }

    #[test]
    fn spinc_labels_sum_to_rank() {
        let c = figure_eight();
        for n in 1..6 {
            let labels = spinc_labels(&c, n).unwrap();
            let total: usize = labels.iter().map(|&(_, r)| r).sum();
            assert_eq!(total as i64, large_surgery_rank(&c, n).unwrap());
            assert_eq!(labels[0], (0, 3));
        }
    }
}
