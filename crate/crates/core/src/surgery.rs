//! Surgery ranks: pegboard parameters, the rational rank formula,
//! L-space and almost L-space detection.

use serde::{Deserialize, Serialize};

use crate::complex::{mirror, KnotComplex};
use crate::error::{Error, Result};
use crate::invariants::{genus, hook_profile, large_surgery_rank, HookProfile};

/// Slope `m` of the non-vertical segment and count `n` of vertical segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PegboardParams {
    pub m: i64,
    pub n: i64,
}

/// Reads `(m, n)` off large surgeries on the complex and its mirror.
pub fn pegboard_params(c: &KnotComplex) -> Result<PegboardParams> {
    let dual = mirror(c)?;
    let big = 2 * genus(c)?.max(genus(&dual)?) + 1;
    let r_plus = large_surgery_rank(c, big)? - big;
    let r_minus = large_surgery_rank(&dual, big)? - big;
    let diff = r_minus - r_plus;
    if diff % 2 != 0 {
        return Err(Error::ParityFailure(diff));
    }
    let m = diff / 2;
    let n = (r_plus + r_minus) / 2;
    if (n - m) % 2 != 0 {
        return Err(Error::ParityFailure(n - m));
    }
    Ok(PegboardParams { m, n })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Puts the sign into `p` and checks `gcd(p, q) = 1`.
pub fn canonical_slope(p: i64, q: i64) -> Result<(i64, i64)> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok((p, q))
}

/// `|p - q m| + n q`.
pub fn surgery_rank(params: PegboardParams, p: i64, q: i64) -> Result<i64> {
    let (p, q) = canonical_slope(p, q)?;
    Ok((p - q * params.m).abs() + params.n * q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    LSpace,
    AlmostLSpace,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub verdict: Verdict,
    pub witness: HookProfile,
}

/// Classifies large surgeries by hook ranks.
pub fn detect(c: &KnotComplex) -> Result<Detection> {
    let witness = hook_profile(c)?;
    let all_one = witness.ranks.values().all(|&r| r == 1);
    let almost = witness.rank(0) == 3 && witness.ranks.iter().all(|(&s, &r)| s == 0 || r == 1);
    let verdict = if !witness.stable {
        Verdict::Neither
    } else if all_one {
        Verdict::LSpace
    } else if almost {
        Verdict::AlmostLSpace
    } else {
        Verdict::Neither
    };
    Ok(Detection { verdict, witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleResult {
    pub p: i64,
    pub q: i64,
    pub rank: i64,
    pub expected: i64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub genus: i64,
    pub params: PegboardParams,
    pub samples: Vec<SampleResult>,
    /// Integer surgery at `2g - 2`, checked for L-space inputs of genus above one.
    pub boundary: Option<SampleResult>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.ok) && self.boundary.as_ref().is_none_or(|b| b.ok)
    }

    pub fn failures(&self) -> Vec<&SampleResult> {
        self.samples
            .iter()
            .chain(self.boundary.as_ref())
            .filter(|s| !s.ok)
            .collect()
    }
}

/// Checks `rank = p + 2q` (almost L-space) or `rank = p` (L-space) at every
/// sample `p/q >= 2g - 1`.
pub fn stability_check(c: &KnotComplex, samples: &[(i64, i64)]) -> Result<StabilityReport> {
    let detection = detect(c)?;
    let verdict = detection.verdict;
    if verdict == Verdict::Neither {
        return Err(Error::WrongClass {
            expected: "LSpace or AlmostLSpace".into(),
            got: "Neither".into(),
        });
    }
    let g = detection.witness.genus;
    let params = pegboard_params(c)?;
    let mut results = Vec::new();
    for &(p, q) in samples {
        if p <= 0 || q <= 0 || p < (2 * g - 1) * q {
            return Err(Error::InvalidSample(format!(
                "{p}/{q} is not a positive slope at least 2g - 1 = {}",
                2 * g - 1
            )));
        }
        let rank = surgery_rank(params, p, q)?;
        let expected = match verdict {
            Verdict::AlmostLSpace => p + 2 * q,
            _ => p,
        };
        results.push(SampleResult {
            p,
            q,
            rank,
            expected,
            ok: rank == expected,
        });
    }
    // 0-surgery is not a rational homology sphere, so genus one is skipped.
    let boundary = if verdict == Verdict::LSpace && 2 * g - 2 > 0 {
        let p = 2 * g - 2;
        let rank = surgery_rank(params, p, 1)?;
        Some(SampleResult {
            p,
            q: 1,
            rank,
            expected: 2 * g,
            ok: rank == 2 * g,
        })
    } else {
        None
    };
    Ok(StabilityReport {
        verdict,
        genus: g,
        params,
        samples: results,
        boundary,
    })
}
