//! Mirror, tensor product, direct sum and reduction.

use std::collections::HashSet;

use super::{Arrow, Generator, KnotComplex};
use crate::algebra::BitMatrix;
use crate::error::Result;

/// The dual complex: gradings negated, arrows reversed with the same power.
pub fn mirror(c: &KnotComplex) -> Result<KnotComplex> {
    c.require_valid()?;
    let generators = c
        .generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), -g.alexander, -g.maslov))
        .collect();
    let arrows = c
        .arrows
        .iter()
        .map(|a| Arrow::new(a.dst.clone(), a.src.clone(), a.u_power))
        .collect();
    Ok(KnotComplex::new(generators, arrows).canonical())
}

fn uniquify(names: &mut [String]) {
    let mut taken: HashSet<String> = HashSet::new();
    for name in names.iter_mut() {
        if taken.contains(name.as_str()) {
            let mut k = 2;
            while taken.contains(&format!("{name}_{k}")) {
                k += 1;
            }
            *name = format!("{name}_{k}");
        }
        taken.insert(name.clone());
    }
}

/// Tensor product. Generator `x*y` has gradings summed.
pub fn tensor(a: &KnotComplex, b: &KnotComplex) -> Result<KnotComplex> {
    let arrows_a = a.indexed_arrows()?;
    let arrows_b = b.indexed_arrows()?;
    let nb = b.len();
    let mut names = Vec::with_capacity(a.len() * nb);
    let mut generators = Vec::with_capacity(a.len() * nb);
    for x in &a.generators {
        for y in &b.generators {
            names.push(format!("{}*{}", x.name, y.name));
            generators.push(Generator::new(
                String::new(),
                x.alexander + y.alexander,
                x.maslov + y.maslov,
            ));
        }
    }
    uniquify(&mut names);
    for (g, n) in generators.iter_mut().zip(&names) {
        g.name = n.clone();
    }
    let mut arrows = Vec::new();
    for &(s, t, p) in &arrows_a {
        for y in 0..nb {
            arrows.push((s * nb + y, t * nb + y, p));
        }
    }
    for x in 0..a.len() {
        for &(s, t, p) in &arrows_b {
            arrows.push((x * nb + s, x * nb + t, p));
        }
    }
    arrows.sort_unstable();
    let arrows = arrows
        .into_iter()
        .map(|(s, t, p)| Arrow::new(names[s].clone(), names[t].clone(), p))
        .collect();
    Ok(KnotComplex::new(generators, arrows))
}

/// Disjoint union. Names of `b` that collide get a `_2`, `_3`, ... suffix.
pub fn direct_sum(a: &KnotComplex, b: &KnotComplex) -> KnotComplex {
    let mut names: Vec<String> = a
        .generators
        .iter()
        .chain(&b.generators)
        .map(|g| g.name.clone())
        .collect();
    uniquify(&mut names);
    let renamed_b = b.with_names(&names[a.len()..]);
    let mut out = a.clone();
    out.generators.extend(renamed_b.generators);
    out.arrows.extend(renamed_b.arrows);
    out
}

/// Cancels bidegree-preserving arrows (power zero, equal Alexander grading)
/// until none remain, always taking the lexicographically first by
/// `(source name, target name)`.
pub fn reduce(c: &KnotComplex) -> Result<KnotComplex> {
    c.require_valid()?;
    let mut gens = c.generators.clone();
    let mut d = c.differential()?;
    loop {
        let n = gens.len();
        let mut best: Option<(usize, usize)> = None;
        for s in 0..n {
            for t in d.column(s).ones() {
                let preserving =
                    gens[t].alexander == gens[s].alexander && gens[t].maslov == gens[s].maslov - 1;
                if !preserving {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bs, bt)) => {
                        (&gens[s].name, &gens[t].name) < (&gens[bs].name, &gens[bt].name)
                    }
                };
                if better {
                    best = Some((s, t));
                }
            }
        }
        let Some((b, cc)) = best else { break };
        // d'(w) = d(w) + <d(w), c> d(b)
        let col_b = d.column(b);
        let row_c = d.row(cc).clone();
        for w in row_c.ones() {
            for v in col_b.ones() {
                d.flip(v, w);
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&k| k != b && k != cc).collect();
        d = d.select(&keep, &keep);
        gens = keep.iter().map(|&k| gens[k].clone()).collect();
    }
    Ok(KnotComplex::from_matrix(gens, &d))
}

/// Matrix of the associated graded part: entries that preserve both filtrations.
pub fn bidegree_preserving(c: &KnotComplex) -> Result<BitMatrix> {
    let mut d = BitMatrix::zeros(c.len(), c.len());
    for (s, t, p) in c.indexed_arrows()? {
        if p == 0 && c.generators[s].alexander == c.generators[t].alexander {
            d.flip(t, s);
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{box_complex, figure_eight, free_generator, staircase};

    fn am(c: &KnotComplex) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = c
            .generators
            .iter()
            .map(|g| (g.alexander, g.maslov))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn mirror_of_trefoil() {
        let m = mirror(&staircase(&[1, 1]).unwrap()).unwrap();
        assert_eq!(am(&m), vec![(-1, 0), (0, 1), (1, 2)]);
        assert!(m.validate().is_valid());
    }

    #[test]
    fn mirror_is_an_involution() {
        let c = staircase(&[1, 2, 2, 1]).unwrap();
        assert_eq!(mirror(&mirror(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn mirror_of_box_is_a_box() {
        let m = mirror(&box_complex(1, 1)).unwrap();
        assert_eq!(am(&m), am(&box_complex(1, 1)));
    }

    #[test]
    fn tensor_with_unknot() {
        let c = staircase(&[1, 1]).unwrap();
        let t = tensor(&free_generator("u"), &c).unwrap();
        assert!(t.validate().is_valid());
        assert_eq!(am(&t), am(&c));
        assert_eq!(t.arrows.len(), c.arrows.len());
    }

    #[test]
    fn trefoil_squared() {
        let t3 = staircase(&[1, 1]).unwrap();
        let t = tensor(&t3, &t3).unwrap();
        assert_eq!(t.len(), 9);
        assert!(t.validate().is_valid());
        let top = t.generators.iter().max_by_key(|g| g.alexander).unwrap();
        assert_eq!((top.alexander, top.maslov), (2, 0));
    }

    #[test]
    fn direct_sum_renames_collisions() {
        let s = direct_sum(&box_complex(0, 0), &box_complex(0, 0));
        assert_eq!(s.len(), 8);
        assert!(s.validate().is_valid());
        assert_eq!(s.generators[4].name, "x2_2");
        let empty = KnotComplex::default();
        assert_eq!(direct_sum(&s, &empty), s);
    }

    #[test]
    fn reduce_cancels_preserving_arrows() {
        let c = KnotComplex::new(
            vec![
                Generator::new("a", 0, 1),
                Generator::new("b", 0, 0),
                Generator::new("c", 0, 0),
            ],
            vec![Arrow::new("a", "b", 0)],
        );
        let r = reduce(&c).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.generators[0].name, "c");
    }

    #[test]
    fn reduce_keeps_reduced_complexes() {
        let c = figure_eight();
        assert_eq!(reduce(&c).unwrap(), c.canonical());
        let t3 = staircase(&[1, 1]).unwrap();
        let t = tensor(&t3, &t3).unwrap();
        let r = reduce(&t).unwrap();
        assert!(r.validate().is_valid());
        assert_eq!(reduce(&r).unwrap(), r);
    }

    #[test]
    fn reduce_composes_through_cancelled_pair() {
        // w -> c (power 1), b -> c cancels, b -> v (power 0) yields w -> v.
        let c = KnotComplex::new(
            vec![
                Generator::new("w", 1, 1),
                Generator::new("b", 0, 1),
                Generator::new("c", 0, 0),
                Generator::new("v", -1, 0),
            ],
            vec![
                Arrow::new("w", "c", 0),
                Arrow::new("b", "c", 0),
                Arrow::new("b", "v", 0),
            ],
        );
        assert!(c.validate().is_valid());
        let r = reduce(&c).unwrap();
        assert_eq!(r.arrows, vec![Arrow::new("w", "v", 0)]);
    }
}
