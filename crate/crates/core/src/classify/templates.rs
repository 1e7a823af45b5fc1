//! Template families and their parameters as read off Alexander gradings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{
    almost_staircase_1, almost_staircase_2, box_complex, direct_sum, free_generator, staircase,
    KnotComplex,
};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Template {
    /// Steps `[h1, v1, ...]`; empty for the single generator.
    Staircase(Vec<i64>),
    /// A staircase plus the centered box with `x1` in Maslov grading `box_maslov`.
    StaircasePlusBox {
        steps: Vec<i64>,
        box_maslov: i64,
    },
    AlmostStaircase1 {
        n: usize,
        steps: Vec<i64>,
    },
    AlmostStaircase2 {
        n: usize,
        steps: Vec<i64>,
    },
}

fn staircase_or_point(steps: &[i64]) -> Result<KnotComplex> {
    if steps.is_empty() {
        Ok(free_generator("y1"))
    } else {
        staircase(steps)
    }
}

impl Template {
    pub fn build(&self) -> Result<KnotComplex> {
        match self {
            Template::Staircase(steps) => staircase_or_point(steps),
            Template::StaircasePlusBox { steps, box_maslov } => Ok(direct_sum(
                &staircase_or_point(steps)?,
                &box_complex(1, *box_maslov),
            )),
            Template::AlmostStaircase1 { n, steps } => almost_staircase_1(*n, steps),
            Template::AlmostStaircase2 { n, steps } => almost_staircase_2(*n, steps),
        }
    }
}

fn diffs(values: &[i64]) -> Vec<i64> {
    values.windows(2).map(|w| w[0] - w[1]).collect()
}

/// Steps of the staircase whose generators sit at these Alexander gradings.
fn staircase_steps(mut alex: Vec<i64>) -> Option<Vec<i64>> {
    alex.sort_unstable_by(|a, b| b.cmp(a));
    if alex.len().is_multiple_of(2) || alex.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(diffs(&alex))
}

fn remove_one(values: &mut Vec<i64>, v: i64) -> bool {
    match values.iter().position(|&x| x == v) {
        Some(k) => {
            values.remove(k);
            true
        }
        None => false,
    }
}

/// Negative gradings in decreasing order with one copy of `-1` removed.
fn arm(alex: &[i64]) -> Option<Vec<i64>> {
    let mut neg: Vec<i64> = alex.iter().copied().filter(|&a| a < 0).collect();
    neg.sort_unstable_by(|a, b| b.cmp(a));
    remove_one(&mut neg, -1).then_some(neg)
}

/// Arm `[-e1, ...]` to steps `[e1, d1, d2, ...]`, all positive.
fn arm_steps(arm: &[i64]) -> Option<Vec<i64>> {
    let mut steps = Vec::with_capacity(arm.len());
    if let Some(&first) = arm.first() {
        steps.push(-first);
        steps.extend(diffs(arm));
    }
    steps.iter().all(|&s| s > 0).then_some(steps)
}

pub fn infer_staircase(c: &KnotComplex) -> Option<Template> {
    staircase_steps(c.alexanders()).map(Template::Staircase)
}

/// Every staircase-plus-box, type 1 and type 2 template compatible with the
/// graded generators of a reduced complex.
pub fn infer_almost(c: &KnotComplex) -> Vec<Template> {
    let alex = c.alexanders();
    let mut out = Vec::new();

    let mut rest = alex.clone();
    if [1, 0, 0, -1].iter().all(|&v| remove_one(&mut rest, v)) {
        if let Some(steps) = staircase_steps(rest) {
            let top: BTreeMap<i64, ()> = c
                .generators
                .iter()
                .filter(|g| g.alexander == 1)
                .map(|g| (g.maslov, ()))
                .collect();
            for &box_maslov in top.keys() {
                out.push(Template::StaircasePlusBox {
                    steps: steps.clone(),
                    box_maslov,
                });
            }
        }
    }

    if let Some(arm) = arm(&alex) {
        if arm.len() % 2 == 0 {
            if let Some(steps) = arm_steps(&arm) {
                out.push(Template::AlmostStaircase1 {
                    n: arm.len() / 2,
                    steps,
                });
            }
        } else if let Some(steps) = arm_steps(&arm) {
            out.push(Template::AlmostStaircase2 {
                n: arm.len().div_ceil(2),
                steps,
            });
        }
    }
    out
}

/// Whether a bijection of generators preserving `(A, M)` carries the arrows
/// of `a` exactly onto those of `b`.
pub fn literally_isomorphic(a: &KnotComplex, b: &KnotComplex) -> Result<bool> {
    let n = a.len();
    if n != b.len() {
        return Ok(false);
    }
    let da = a.differential()?;
    let db = b.differential()?;
    let key = |c: &KnotComplex, k: usize| (c.generators[k].alexander, c.generators[k].maslov);
    let mut ka: Vec<_> = (0..n).map(|k| key(a, k)).collect();
    let mut kb: Vec<_> = (0..n).map(|k| key(b, k)).collect();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        x: usize,
        a: &KnotComplex,
        b: &KnotComplex,
        da: &crate::algebra::BitMatrix,
        db: &crate::algebra::BitMatrix,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if x == n {
            return true;
        }
        let gx = &a.generators[x];
        for y in 0..n {
            let gy = &b.generators[y];
            if used[y] || gy.alexander != gx.alexander || gy.maslov != gx.maslov {
                continue;
            }
            let consistent = (0..x).all(|w| {
                let v = image[w];
                da.get(w, x) == db.get(v, y) && da.get(x, w) == db.get(y, v)
            }) && da.get(x, x) == db.get(y, y);
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(x + 1, a, b, da, db, image, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }

    Ok(extend(0, a, b, &da, &db, &mut image, &mut used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{figure_eight, mirror, reduce, tensor};

    #[test]
    fn staircase_round_trip() {
        for steps in [vec![1, 1], vec![1, 2, 2, 1], vec![3, 1, 1, 3]] {
            let c = staircase(&steps).unwrap();
            assert_eq!(infer_staircase(&c), Some(Template::Staircase(steps)));
        }
    }

    #[test]
    fn almost_staircase_round_trip() {
        let cases = [
            Template::AlmostStaircase1 {
                n: 0,
                steps: vec![],
            },
            Template::AlmostStaircase1 {
                n: 1,
                steps: vec![1, 1],
            },
            Template::AlmostStaircase1 {
                n: 2,
                steps: vec![2, 1, 1, 2],
            },
            Template::AlmostStaircase2 {
                n: 1,
                steps: vec![1],
            },
            Template::AlmostStaircase2 {
                n: 2,
                steps: vec![1, 2, 1],
            },
        ];
        for t in cases {
            let c = t.build().unwrap();
            let inferred = infer_almost(&c);
            assert!(inferred.contains(&t), "{t:?} not in {inferred:?}");
            assert!(literally_isomorphic(&c, &t.build().unwrap().renamed("q")).unwrap());
        }
    }

    #[test]
    fn staircase_plus_box_inference() {
        let t3 = staircase(&[1, 1]).unwrap();
        let r = reduce(&tensor(&t3, &t3).unwrap()).unwrap();
        let inferred = infer_almost(&r);
        assert!(inferred.contains(&Template::StaircasePlusBox {
            steps: vec![1, 1, 1, 1],
            box_maslov: -1
        }));
        let fig8 = infer_almost(&figure_eight());
        assert!(fig8.contains(&Template::StaircasePlusBox {
            steps: vec![],
            box_maslov: 1
        }));
    }

    #[test]
    fn isomorphism_respects_arrows() {
        let t3 = staircase(&[1, 1]).unwrap();
        assert!(!literally_isomorphic(&t3, &mirror(&t3).unwrap()).unwrap());
        let bare = KnotComplex::new(t3.generators.clone(), vec![]);
        assert!(!literally_isomorphic(&t3, &bare).unwrap());
    }
}
