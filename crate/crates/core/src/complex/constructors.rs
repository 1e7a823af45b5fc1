//! Template complexes: staircases, boxes and the two almost staircase types.
//!
//! Templates are laid out as in the plane picture. Each generator gets a
//! position `(i, j)`; its Alexander grading is `j - i` and an arrow between
//! two positions carries power `i_src - i_dst`. Relative Maslov gradings
//! follow from the arrows and are then shifted so the `i = 0` column has
//! homology in Maslov grading zero.

use std::collections::VecDeque;

use super::{Arrow, Generator, KnotComplex};
use crate::error::{Error, Result};

type Pos = (i64, i64);

fn sigma((i, j): Pos) -> Pos {
    (j, i)
}

fn from_positions(names: &[String], pos: &[Pos], arrows: &[(usize, usize)]) -> Result<KnotComplex> {
    let n = names.len();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for &(s, t) in arrows {
        let a = pos[s].0 - pos[t].0;
        // M(t) = M(s) - 1 + 2a
        adj[s].push((t, 2 * a - 1));
        adj[t].push((s, 1 - 2 * a));
    }
    let mut maslov: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if maslov[root].is_some() {
            continue;
        }
        maslov[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mv = maslov[v].expect("visited");
            for &(w, delta) in &adj[v] {
                match maslov[w] {
                    None => {
                        maslov[w] = Some(mv + delta);
                        queue.push_back(w);
                    }
                    Some(mw) if mw != mv + delta => {
                        return Err(Error::BadSteps(format!(
                            "inconsistent Maslov gradings around {}",
                            names[w]
                        )));
                    }
                    _ => {}
                }
            }
        }
    }
    let generators = (0..n)
        .map(|k| {
            Generator::new(
                names[k].clone(),
                pos[k].1 - pos[k].0,
                maslov[k].unwrap_or(0),
            )
        })
        .collect();
    let arrows = arrows
        .iter()
        .map(|&(s, t)| Arrow::new(names[s].clone(), names[t].clone(), pos[s].0 - pos[t].0))
        .collect();
    let mut c = KnotComplex::new(generators, arrows).canonical();
    normalize_maslov(&mut c)?;
    Ok(c)
}

/// Shifts Maslov gradings so the column homology sits in grading zero.
fn normalize_maslov(c: &mut KnotComplex) -> Result<()> {
    let h = c.column_homology()?;
    if h.total() != 1 {
        return Err(Error::BadSteps(format!(
            "column homology has rank {}, expected 1",
            h.total()
        )));
    }
    let (&g, _) = h.ranks.iter().next().expect("rank one");
    c.shift_maslov(-g);
    Ok(())
}

fn check_steps(steps: &[i64]) -> Result<()> {
    if let Some(bad) = steps.iter().find(|&&s| s <= 0) {
        return Err(Error::BadSteps(format!("step {bad} is not positive")));
    }
    Ok(())
}

/// A single generator at the origin in grading zero.
pub fn free_generator(name: &str) -> KnotComplex {
    KnotComplex::new(vec![Generator::new(name, 0, 0)], vec![])
}

/// The staircase with steps `[h1, v1, h2, v2, ...]`: `x_k` has a horizontal
/// arrow of length `h_k` to `y_k` and a vertical arrow of length `v_k` to
/// `y_{k+1}`. The top generator `y1` sits at Alexander grading `h1 + h2 + ...`.
pub fn staircase(steps: &[i64]) -> Result<KnotComplex> {
    if steps.is_empty() || steps.len() % 2 == 1 {
        return Err(Error::BadSteps(format!(
            "staircase needs a nonempty even-length step list, got {} entries",
            steps.len()
        )));
    }
    check_steps(steps)?;
    let top: i64 = steps.iter().step_by(2).sum();
    let mut names = vec!["y1".to_string()];
    let mut pos = vec![(0, top)];
    let mut arrows = Vec::new();
    let (mut i, mut j) = (0, top);
    for (k, pair) in steps.chunks(2).enumerate() {
        let (h, v) = (pair[0], pair[1]);
        let y_prev = names.len() - 1;
        i += h;
        names.push(format!("x{}", k + 1));
        pos.push((i, j));
        j -= v;
        names.push(format!("y{}", k + 2));
        pos.push((i, j));
        let x = names.len() - 2;
        arrows.push((x, y_prev));
        arrows.push((x, x + 1));
    }
    from_positions(&names, &pos, &arrows)
}

/// The unit box. `top_alexander`/`top_maslov` place the generator of
/// largest Alexander grading, `x1`; the others follow from the arrows
/// `d x2 = U x1 + x4`, `d x1 = x3`, `d x4 = U x3`.
pub fn box_complex(top_alexander: i64, top_maslov: i64) -> KnotComplex {
    let (a, m) = (top_alexander, top_maslov);
    KnotComplex::new(
        vec![
            Generator::new("x2", a - 1, m - 1),
            Generator::new("x1", a, m),
            Generator::new("x4", a - 2, m - 2),
            Generator::new("x3", a - 1, m - 1),
        ],
        vec![
            Arrow::new("x2", "x1", 1),
            Arrow::new("x2", "x4", 0),
            Arrow::new("x1", "x3", 0),
            Arrow::new("x4", "x3", 1),
        ],
    )
}

/// A free generator at the origin plus the centered box: the model
/// complex of the figure-eight knot.
pub fn figure_eight() -> KnotComplex {
    super::ops::direct_sum(&free_generator("a"), &box_complex(1, 1))
}

/// Type 1 almost staircase with `2N + 2` x-generators, `2N` y-generators and
/// `z`. `steps = [e1, v1, h2, v2, ..., hN, vN]`: `y1 -> x1` has length
/// `e1 + 1`, `y_k -> x_{k+1}` is vertical of length `v_k` and `y_k -> x_k`
/// horizontal of length `h_k` for `k >= 2`. The negative arm is the mirror
/// image under `(i, j) -> (j, i)`.
pub fn almost_staircase_1(n: usize, steps: &[i64]) -> Result<KnotComplex> {
    if steps.len() != 2 * n {
        return Err(Error::BadSteps(format!(
            "type 1 with N = {n} needs {} steps, got {}",
            2 * n,
            steps.len()
        )));
    }
    check_steps(steps)?;
    let mut names = vec!["z".to_string(), "x1".to_string(), "x-1".to_string()];
    let mut pos: Vec<Pos> = vec![(0, 0), (0, 1), (1, 0)];
    let mut arrows = vec![(1, 0), (2, 0)];
    let (mut i, mut j) = (0, 1);
    // index of x_k on the positive arm, for k = 1..
    let mut x_prev = 1;
    for k in 1..=n {
        let (h, v) = if k == 1 {
            (steps[0] + 1, steps[1])
        } else {
            (steps[2 * k - 2], steps[2 * k - 1])
        };
        i += h;
        let y = names.len();
        names.push(format!("y{k}"));
        pos.push((i, j));
        names.push(format!("y-{k}"));
        pos.push(sigma((i, j)));
        j -= v;
        let x = names.len();
        names.push(format!("x{}", k + 1));
        pos.push((i, j));
        names.push(format!("x-{}", k + 1));
        pos.push(sigma((i, j)));
        let x_prev_neg = if k == 1 { 2 } else { x_prev + 1 };
        arrows.push((y, x_prev));
        arrows.push((y + 1, x_prev_neg));
        arrows.push((y, x));
        arrows.push((y + 1, x + 1));
        if k == 1 {
            arrows.push((y, 2));
            arrows.push((y + 1, 1));
        }
        x_prev = x;
    }
    from_positions(&names, &pos, &arrows)
}

/// Type 2 almost staircase with `N >= 1`: generators `z`, `y_{+-k}` and
/// `x_{+-k}` for `k = 1..N`. `steps = [e1, h2, v2, ..., hN, vN]`: `y1 -> x1`
/// is vertical of length `e1 + 1`, `y_k -> x_{k-1}` horizontal of length
/// `h_k` and `y_k -> x_k` vertical of length `v_k` for `k >= 2`.
pub fn almost_staircase_2(n: usize, steps: &[i64]) -> Result<KnotComplex> {
    if n == 0 {
        return Err(Error::BadSteps("type 2 needs N >= 1".into()));
    }
    if steps.len() != 2 * n - 1 {
        return Err(Error::BadSteps(format!(
            "type 2 with N = {n} needs {} steps, got {}",
            2 * n - 1,
            steps.len()
        )));
    }
    check_steps(steps)?;
    let e1 = steps[0];
    let mut names: Vec<String> = ["z", "y1", "y-1", "x1", "x-1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let x1 = (-1, -e1 - 1);
    let mut pos: Vec<Pos> = vec![(0, 0), (-1, 0), (0, -1), x1, sigma(x1)];
    let mut arrows = vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)];
    let (mut i, mut j) = x1;
    let mut x_prev = 3;
    for k in 2..=n {
        let (h, v) = (steps[2 * k - 3], steps[2 * k - 2]);
        i += h;
        let y = names.len();
        names.push(format!("y{k}"));
        pos.push((i, j));
        names.push(format!("y-{k}"));
        pos.push(sigma((i, j)));
        j -= v;
        let x = names.len();
        names.push(format!("x{k}"));
        pos.push((i, j));
        names.push(format!("x-{k}"));
        pos.push(sigma((i, j)));
        arrows.push((y, x_prev));
        arrows.push((y + 1, x_prev + 1));
        arrows.push((y, x));
        arrows.push((y + 1, x + 1));
        x_prev = x;
    }
    from_positions(&names, &pos, &arrows)
}
