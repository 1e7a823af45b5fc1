//! Exhaustive search over small reduced complexes with almost L-space
//! hook ranks, and a replay of the classification over the results.
//!
//! Every complex has a vertically simplified basis, so the search fixes the
//! power-zero arrows to a matching of the generators with one survivor in
//! Maslov grading zero. The remaining arrows (all with positive `U` power)
//! are chosen by backtracking with `d^2 = 0` checked as soon as each entry
//! of `d^2` is fully decided. Survivors are filtered by the row homology,
//! `symmetry_check` and `detect`, then deduplicated up to filtered homotopy.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::BitMatrix;
use crate::classify::{classify, delta0_check, filtered_equivalent, Class};
use crate::complex::{serialize, Generator, KnotComplex};
use crate::error::{Error, Result};
use crate::invariants::{genus, hfk, HfkTable};
use crate::regions::{
    double_triangle, fingerprint, point_triangle, region_homology, symmetry_check, Region,
};
use crate::surgery::{detect, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    /// Largest genus searched; every genus from 1 up is included.
    pub genus: i64,
    /// Bound on both the `i` drop and the `j` drop of every arrow.
    pub max_step: i64,
    /// Allowed generator counts at `|s| = 1`.
    pub ranks_one: Vec<usize>,
    /// Allowed generator counts at `s = 0`.
    pub ranks_zero: Vec<usize>,
    /// Generators with `A >= 0` have Maslov grading in `[-bound, bound]`.
    pub maslov_bound: i64,
    /// Detector verdict a candidate must receive.
    pub verdict: Verdict,
}

impl SearchSpec {
    pub fn new(genus: i64, max_step: i64) -> Self {
        Self {
            genus,
            max_step,
            ranks_one: vec![1, 2],
            ranks_zero: vec![1, 3],
            maslov_bound: 2 * genus + 2,
            verdict: Verdict::AlmostLSpace,
        }
    }
}

/// Multisets of size `k` from `lo..=hi`, as nondecreasing vectors.
fn multisets(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in multisets(k - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(rank at A)` for `A = g, g-1, ..., 0`, one entry per allowed profile.
fn rank_profiles(spec: &SearchSpec, g: i64) -> Vec<Vec<usize>> {
    let mut profiles: Vec<Vec<usize>> = vec![vec![]];
    for a in (0..=g).rev() {
        let choices: Vec<usize> = match a {
            0 => spec.ranks_zero.clone(),
            1 => spec.ranks_one.clone(),
            _ if a == g => vec![1],
            _ => vec![0, 1],
        };
        profiles = profiles
            .into_iter()
            .flat_map(|p| {
                choices.iter().map(move |&r| {
                    let mut q = p.clone();
                    q.push(r);
                    q
                })
            })
            .collect();
    }
    profiles
}

/// Graded generators for one rank profile and one Maslov choice per
/// Alexander grading `A >= 0`; negative gradings follow by symmetry.
fn graded_generators(g: i64, maslov: &[Vec<i64>]) -> Vec<(i64, i64)> {
    let mut gens = Vec::new();
    for (k, ms) in maslov.iter().enumerate() {
        let a = g - k as i64;
        for &m in ms {
            gens.push((a, m));
            if a > 0 {
                gens.push((-a, m - 2 * a));
            }
        }
    }
    gens.sort_unstable_by(|x, y| y.cmp(x));
    gens
}

fn maslov_profiles(spec: &SearchSpec, g: i64, ranks: &[usize]) -> Vec<Vec<(i64, i64)>> {
    let b = spec.maslov_bound;
    let mut choices: Vec<Vec<Vec<i64>>> = vec![vec![]];
    for &r in ranks {
        let options = multisets(r, -b, b);
        choices = choices
            .into_iter()
            .flat_map(|p| {
                options.iter().map(move |o| {
                    let mut q = p.clone();
                    q.push(o.clone());
                    q
                })
            })
            .collect();
    }
    choices
        .into_iter()
        .map(|ms| graded_generators(g, &ms))
        .filter(|gens| {
            // The column homology is one copy of F in grading zero.
            gens.iter()
                .map(|&(_, m)| if m % 2 == 0 { 1 } else { -1 })
                .sum::<i64>()
                == 1
        })
        .collect()
}

/// Vertical matchings: pairs `src -> dst` of power zero with `A` dropping by
/// `1..=max_step` and Maslov by one, leaving one generator at Maslov zero.
fn vertical_matchings(gens: &[(i64, i64)], max_step: i64) -> Vec<Vec<(usize, usize)>> {
    fn go(
        gens: &[(i64, i64)],
        max_step: i64,
        used: &mut Vec<bool>,
        survivor: bool,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(x) = used.iter().position(|u| !u) else {
            if survivor {
                out.push(pairs.clone());
            }
            return;
        };
        used[x] = true;
        if !survivor && gens[x].1 == 0 {
            go(gens, max_step, used, true, pairs, out);
        }
        let mut tried = Vec::new();
        for y in x + 1..gens.len() {
            if used[y] || tried.contains(&gens[y]) {
                continue;
            }
            let (ax, mx) = gens[x];
            let (ay, my) = gens[y];
            // Generators are sorted by decreasing A, so x is the source.
            if ax - ay >= 1 && ax - ay <= max_step && mx - my == 1 {
                tried.push(gens[y]);
                used[y] = true;
                pairs.push((x, y));
                go(gens, max_step, used, survivor, pairs, out);
                pairs.pop();
                used[y] = false;
            }
        }
        used[x] = false;
    }
    let mut out = Vec::new();
    go(
        gens,
        max_step,
        &mut vec![false; gens.len()],
        false,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Arrows of positive power allowed between graded generators.
fn free_arrows(gens: &[(i64, i64)], max_step: i64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (s, &(as_, ms)) in gens.iter().enumerate() {
        for (t, &(at, mt)) in gens.iter().enumerate() {
            let dm = mt - ms + 1;
            if s == t || dm <= 0 || dm % 2 != 0 {
                continue;
            }
            let a = dm / 2;
            let jdrop = as_ - at + a;
            if a <= max_step && (0..=max_step).contains(&jdrop) {
                out.push((s, t));
            }
        }
    }
    out
}

/// All differentials containing the fixed arrows, drawn from `free`, with
/// `d^2 = 0`. Columns are bitmasks of targets.
fn differentials(n: usize, fixed: &[(usize, usize)], free: &[(usize, usize)]) -> Vec<Vec<u32>> {
    // Entry (z, s) of d^2 is settled once every arrow out of s and into z is.
    let mut settled: Vec<Vec<(usize, usize)>> = vec![Vec::new(); free.len() + 1];
    for s in 0..n {
        for z in 0..n {
            let last = free
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == s || b == z)
                .map(|(k, _)| k + 1)
                .max()
                .unwrap_or(0);
            settled[last].push((s, z));
        }
    }
    let mut cols = vec![0u32; n];
    for &(s, t) in fixed {
        cols[s] |= 1 << t;
    }
    let square_entry = |cols: &[u32], s: usize, z: usize| {
        let mut bit = 0;
        let mut m = cols[s];
        while m != 0 {
            let y = m.trailing_zeros() as usize;
            m &= m - 1;
            bit ^= cols[y] >> z & 1;
        }
        bit
    };
    let mut out = Vec::new();
    fn go(
        k: usize,
        cols: &mut Vec<u32>,
        free: &[(usize, usize)],
        settled: &[Vec<(usize, usize)>],
        square_entry: &dyn Fn(&[u32], usize, usize) -> u32,
        out: &mut Vec<Vec<u32>>,
    ) {
        if settled[k]
            .iter()
            .any(|&(s, z)| square_entry(cols, s, z) != 0)
        {
            return;
        }
        if k == free.len() {
            out.push(cols.clone());
            return;
        }
        let (s, t) = free[k];
        go(k + 1, cols, free, settled, square_entry, out);
        cols[s] ^= 1 << t;
        go(k + 1, cols, free, settled, square_entry, out);
        cols[s] ^= 1 << t;
    }
    go(0, &mut cols, free, &settled, &square_entry, &mut out);
    out
}

fn build(gens: &[(i64, i64)], cols: &[u32]) -> KnotComplex {
    let n = gens.len();
    let generators: Vec<Generator> = gens
        .iter()
        .enumerate()
        .map(|(k, &(a, m))| Generator::new(format!("g{k}"), a, m))
        .collect();
    let mut d = BitMatrix::zeros(n, n);
    for (s, &col) in cols.iter().enumerate() {
        for t in 0..n {
            if col >> t & 1 == 1 {
                d.set(t, s, true);
            }
        }
    }
    KnotComplex::from_matrix(generators, &d)
}

fn accept(c: &KnotComplex, verdict: Verdict) -> Result<bool> {
    let row = region_homology(c, &Region::row(0))?;
    if row.total() != 1 || row.rank_at(0) != 1 {
        return Ok(false);
    }
    if !symmetry_check(c)?.is_symmetric() {
        return Ok(false);
    }
    Ok(detect(c)?.verdict == verdict)
}

type Bucket = (Vec<(i64, i64)>, Vec<crate::algebra::GradedHomology>);

fn bucket_key(c: &KnotComplex) -> Result<Bucket> {
    let mut graded: Vec<_> = c
        .generators
        .iter()
        .map(|g| (g.alexander, g.maslov))
        .collect();
    graded.sort_unstable();
    let g = genus(c)?;
    Ok((graded, fingerprint(c, g)?))
}

/// Candidates found in one graded-generator profile.
fn search_profile(gens: &[(i64, i64)], spec: &SearchSpec) -> Result<Vec<KnotComplex>> {
    let free = free_arrows(gens, spec.max_step);
    let mut found = Vec::new();
    for matching in vertical_matchings(gens, spec.max_step) {
        for cols in differentials(gens.len(), &matching, &free) {
            let c = build(gens, &cols);
            if accept(&c, spec.verdict)? {
                found.push(c);
            }
        }
    }
    Ok(found)
}

fn dedupe(candidates: Vec<KnotComplex>) -> Result<Vec<KnotComplex>> {
    let mut buckets: BTreeMap<Bucket, Vec<KnotComplex>> = BTreeMap::new();
    for c in candidates {
        let key = bucket_key(&c)?;
        let reps = buckets.entry(key).or_default();
        let mut seen = false;
        for r in reps.iter() {
            if filtered_equivalent(r, &c)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(c);
        }
    }
    let mut out: Vec<KnotComplex> = buckets.into_values().flatten().collect();
    out.sort_by_cached_key(serialize);
    Ok(out)
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("FLOERKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))
}

/// Every reduced complex within the bounds, one per filtered homotopy class,
/// ordered by serialization. Parallelism is capped by `FLOERKIT_THREADS`.
pub fn enumerate_candidates(spec: &SearchSpec) -> Result<Vec<KnotComplex>> {
    let mut profiles = Vec::new();
    for g in 1..=spec.genus {
        for ranks in rank_profiles(spec, g) {
            profiles.extend(maslov_profiles(spec, g, &ranks));
        }
    }
    let pool = thread_pool()?;
    let found: Vec<Vec<KnotComplex>> = pool.install(|| {
        profiles
            .par_iter()
            .map(|gens| search_profile(gens, spec))
            .collect::<Result<_>>()
    })?;
    dedupe(found.into_iter().flatten().collect())
}

/// The eight patterns for `HFK-hat` in Alexander gradings one and zero,
/// keyed by the parity of the Maslov grading `m` of the generator `x` in the
/// least Alexander grading `A > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MaslovCase {
    OddAI,
    OddAII,
    OddBI,
    OddBII,
    EvenAI,
    EvenAII,
    EvenBI,
    EvenBII,
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

fn gradings(table: &HfkTable, s: i64) -> Vec<i64> {
    let mut out = Vec::new();
    if let Some(h) = table.by_alexander.get(&s) {
        for (&m, &r) in &h.ranks {
            out.extend(std::iter::repeat_n(m, r));
        }
    }
    out
}

/// Matches the gradings at `A = 1, 0` against the eight patterns. `None` when
/// the genus is below two, `x` is not unique, or no pattern fits.
pub fn maslov_case(c: &KnotComplex) -> Result<Option<MaslovCase>> {
    let table = hfk(c)?;
    let Some((&a, h)) = table
        .by_alexander
        .iter()
        .find(|(&s, h)| s > 1 && !h.is_zero())
    else {
        return Ok(None);
    };
    if h.total() != 1 {
        return Ok(None);
    }
    let m = *h.ranks.keys().next().expect("nonzero homology");
    let h1 = sorted(gradings(&table, 1));
    let h0 = sorted(gradings(&table, 0));
    let fits = |one: Vec<i64>, zero: Vec<i64>| sorted(one) == h1 && sorted(zero) == h0;
    let free = |k: usize| h1.get(k).copied();
    use MaslovCase::*;
    let mut cases = Vec::new();
    if m.rem_euclid(2) == 1 {
        cases.push((OddAI, fits(vec![m + 1], vec![m])));
        cases.push((
            OddAII,
            h1.len() == 1 && {
                let d = h1[0];
                fits(vec![d], vec![m - 1, d - 1, d - 1])
            },
        ));
        cases.push((OddBI, fits(vec![m - 1, m - 2], vec![m - 3])));
        cases.push((
            OddBII,
            (0..h1.len()).any(|k| {
                let a = free(k).unwrap();
                fits(vec![a, m - 1], vec![a - 1, m - 2, a - 1])
            }),
        ));
    } else {
        let k0 = m - 2 * a;
        cases.push((EvenAI, fits(vec![k0 + 1], vec![k0])));
        cases.push((
            EvenAII,
            h1.len() == 1 && {
                let b = h1[0];
                fits(vec![b], vec![k0 + 1, b - 1, b - 1])
            },
        ));
        cases.push((EvenBI, fits(vec![k0 + 1, k0], vec![k0 + 1])));
        cases.push((
            EvenBII,
            (0..h1.len()).any(|k| {
                let b = free(k).unwrap();
                fits(vec![b, k0 + 3], vec![b - 1, b - 1, k0 + 2])
            }),
        ));
    }
    Ok(cases.into_iter().find(|&(_, ok)| ok).map(|(c, _)| c))
}

/// When `rank H(X_m ∪ Y_m) = 1` and `rank H(UX_m ∪ Y_m) = 3`, requires
/// `1 <= rank H(X_m) <= 2`. Returns the offending `m` values.
pub fn x_rank_bound_failures(c: &KnotComplex) -> Result<Vec<i64>> {
    let g = genus(c)?;
    let mut bad = Vec::new();
    for m in -(g + 1)..=g + 1 {
        let xy = region_homology(c, &Region::x(m).union(&Region::y(m)))?.total();
        let uxy = region_homology(c, &Region::ux(m).union(&Region::y(m)))?.total();
        if xy == 1 && uxy == 3 {
            let x = region_homology(c, &Region::x(m))?.total();
            if !(1..=2).contains(&x) {
                bad.push(m);
            }
        }
    }
    Ok(bad)
}

/// Runs the double triangle and the point triangle for every `|m| <= g + 1`.
pub fn triangle_suite(c: &KnotComplex) -> Result<()> {
    let g = genus(c)?;
    for m in -(g + 1)..=g + 1 {
        double_triangle(c, m)?;
        point_triangle(c, m)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub complex: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub candidates: usize,
    pub by_class: BTreeMap<String, usize>,
    pub overlaps: usize,
    pub by_case: BTreeMap<String, usize>,
    /// Classification failures: Unknown or NotAlmostLSpace verdicts.
    pub violations: Vec<Violation>,
    /// Genus at least two with no matching Maslov pattern.
    pub uncovered: Vec<Violation>,
    /// Staircase-plus-box candidates failing `delta0_check`.
    pub delta0_failures: Vec<Violation>,
    pub x_rank_failures: Vec<Violation>,
    pub triangle_failures: Vec<Violation>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.uncovered.is_empty()
            && self.delta0_failures.is_empty()
            && self.x_rank_failures.is_empty()
            && self.triangle_failures.is_empty()
    }
}

struct Checked {
    class: Class,
    overlap: bool,
    case: Option<MaslovCase>,
    violation: Option<String>,
    uncovered: bool,
    delta0: Option<String>,
    x_rank: Option<String>,
    triangle: Option<String>,
}

fn check(c: &KnotComplex) -> Result<Checked> {
    let cl = classify(c)?;
    let violation = matches!(cl.verdict, Class::Unknown | Class::NotAlmostLSpace)
        .then(|| format!("classified as {}", cl.verdict));
    let g = genus(c)?;
    let case = maslov_case(c)?;
    let delta0 = if cl.verdict == Class::StaircasePlusBox {
        match delta0_check(c) {
            Ok(true) => None,
            Ok(false) => Some("HFK-hat in grading zero spans several Maslov gradings".into()),
            Err(e) => Some(e.to_string()),
        }
    } else {
        None
    };
    let bad = x_rank_bound_failures(c)?;
    let x_rank = (!bad.is_empty()).then(|| format!("m = {bad:?}"));
    let triangle = triangle_suite(c).err().map(|e| e.to_string());
    Ok(Checked {
        class: cl.verdict,
        overlap: cl.overlap,
        case,
        violation,
        uncovered: g >= 2 && case.is_none(),
        delta0,
        x_rank,
        triangle,
    })
}

/// Enumerates and replays classification, Maslov patterns, `delta0_check`,
/// the `X_m` rank bound and the triangle suite on every candidate.
pub fn verify_theorem(spec: &SearchSpec) -> Result<TheoremReport> {
    let candidates = enumerate_candidates(spec)?;
    let pool = thread_pool()?;
    let checked: Vec<Checked> =
        pool.install(|| candidates.par_iter().map(check).collect::<Result<_>>())?;
    let mut report = TheoremReport {
        candidates: candidates.len(),
        ..Default::default()
    };
    for (c, k) in candidates.iter().zip(checked) {
        let text = serialize(c);
        let note = |reason: String| Violation {
            complex: text.clone(),
            reason,
        };
        *report.by_class.entry(k.class.to_string()).or_default() += 1;
        report.overlaps += k.overlap as usize;
        if let Some(case) = k.case {
            *report.by_case.entry(format!("{case:?}")).or_default() += 1;
        }
        if let Some(r) = k.violation {
            report.violations.push(note(r));
        }
        if k.uncovered {
            report
                .uncovered
                .push(note("no Maslov pattern matches".into()));
        }
        if let Some(r) = k.delta0 {
            report.delta0_failures.push(note(r));
        }
        if let Some(r) = k.x_rank {
            report.x_rank_failures.push(note(r));
        }
        if let Some(r) = k.triangle {
            report.triangle_failures.push(note(r));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{
        almost_staircase_1, almost_staircase_2, box_complex, direct_sum, figure_eight, mirror,
        staircase, tensor,
    };

    fn contains(found: &[KnotComplex], c: &KnotComplex) -> bool {
        found.iter().any(|f| filtered_equivalent(f, c).unwrap())
    }

    #[test]
    fn multisets_count() {
        assert_eq!(multisets(2, 0, 3).len(), 10);
        assert_eq!(multisets(0, 0, 3), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn genus_zero_is_empty() {
        assert!(enumerate_candidates(&SearchSpec::new(0, 1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn genus_one_almost_l_space() {
        let found = enumerate_candidates(&SearchSpec::new(1, 1)).unwrap();
        let t3 = staircase(&[1, 1]).unwrap();
        assert!(contains(&found, &figure_eight()));
        assert!(contains(&found, &mirror(&t3).unwrap()));
        // The box with a trefoil staircase, HFK ranks (2, 3, 2).
        assert!(contains(&found, &direct_sum(&t3, &box_complex(1, 1))));
        // Boxes sit at every Maslov offset the bound allows.
        for c in &found {
            let v = classify(c).unwrap().verdict;
            assert!(
                matches!(v, Class::StaircasePlusBox | Class::AlmostStaircase1),
                "{v}"
            );
        }
    }

    #[test]
    fn larger_steps_keep_candidates() {
        let small = enumerate_candidates(&SearchSpec::new(1, 1)).unwrap();
        let large = enumerate_candidates(&SearchSpec::new(1, 2)).unwrap();
        for c in &small {
            assert!(contains(&large, c), "{}", serialize(c));
        }
    }

    #[test]
    fn genus_one_l_space() {
        let mut spec = SearchSpec::new(1, 1);
        spec.verdict = Verdict::LSpace;
        let found = enumerate_candidates(&spec).unwrap();
        assert_eq!(found.len(), 1);
        assert!(filtered_equivalent(&found[0], &staircase(&[1, 1]).unwrap()).unwrap());
    }

    #[test]
    fn maslov_cases_of_models() {
        let t3 = staircase(&[1, 1]).unwrap();
        assert_eq!(
            maslov_case(&tensor(&t3, &t3).unwrap()).unwrap(),
            Some(MaslovCase::EvenBII)
        );
        assert_eq!(
            maslov_case(&almost_staircase_2(2, &[1, 1, 1]).unwrap()).unwrap(),
            Some(MaslovCase::OddBI)
        );
        assert_eq!(maslov_case(&figure_eight()).unwrap(), None);
    }

    #[test]
    fn x_rank_bound_on_models() {
        for c in [
            figure_eight(),
            almost_staircase_1(1, &[1, 1]).unwrap(),
            almost_staircase_2(2, &[1, 1, 1]).unwrap(),
        ] {
            assert!(x_rank_bound_failures(&c).unwrap().is_empty());
            triangle_suite(&c).unwrap();
        }
    }
}
