//! Random complexes and a brute-force homology count shared by the oracle
//! tests and the acceptance run.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use floerkit::algebra::GradedComplex;
use floerkit::classify::{change_basis, BasisChange};
use floerkit::complex::{
    almost_staircase_1, almost_staircase_2, box_complex, direct_sum, figure_eight, staircase,
    tensor,
};
use floerkit::{Arrow, BitMatrix, BitVec, Generator, KnotComplex};

/// A graded complex with `d^2 = 0`: random pairs `x -> y` plus free
/// generators, scrambled by grading-preserving changes of basis.
pub fn random_graded(rng: &mut ChaCha8Rng) -> GradedComplex {
    let n = rng.gen_range(1..=12);
    let mut gradings = Vec::with_capacity(n);
    let mut d = BitMatrix::zeros(n, n);
    while gradings.len() < n {
        let g = rng.gen_range(-2..=2);
        if gradings.len() + 2 <= n && rng.gen_bool(0.6) {
            let k = gradings.len();
            gradings.push(g);
            gradings.push(g - 1);
            d.set(k + 1, k, true);
        } else {
            gradings.push(g);
        }
    }
    for _ in 0..3 * n {
        let (from, to) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if from == to || gradings[from] != gradings[to] {
            continue;
        }
        for r in 0..n {
            if d.get(r, from) {
                d.flip(r, to);
            }
        }
        let row_to = d.row(to).clone();
        for c in row_to.ones() {
            d.flip(from, c);
        }
    }
    GradedComplex::new(gradings, d)
}

/// `log2 |cycles| - log2 |boundaries|` by listing every chain.
pub fn brute_force(c: &GradedComplex, k: i64) -> usize {
    let at = |g: i64| -> Vec<usize> {
        (0..c.gradings.len())
            .filter(|&x| c.gradings[x] == g)
            .collect()
    };
    let (here, above) = (at(k), at(k + 1));
    let n = c.gradings.len();
    let chain = |support: &[usize], mask: u32| {
        let mut v = BitVec::zeros(n);
        for (b, &x) in support.iter().enumerate() {
            if mask >> b & 1 == 1 {
                v.set(x, true);
            }
        }
        v
    };
    let cycles = (0..1u32 << here.len())
        .filter(|&m| c.differential.apply(&chain(&here, m)).is_zero())
        .count();
    let boundaries: HashSet<Vec<bool>> = (0..1u32 << above.len())
        .map(|m| {
            let v = c.differential.apply(&chain(&above, m));
            (0..n).map(|x| v.get(x)).collect()
        })
        .collect();
    (cycles / boundaries.len()).trailing_zeros() as usize
}

pub fn block(c: &GradedComplex, from: i64, to: i64) -> BitMatrix {
    let at = |g: i64| -> Vec<usize> {
        (0..c.gradings.len())
            .filter(|&x| c.gradings[x] == g)
            .collect()
    };
    c.differential.select(&at(to), &at(from))
}

pub fn models() -> Vec<KnotComplex> {
    let t3 = staircase(&[1, 1]).unwrap();
    vec![
        t3.clone(),
        staircase(&[1, 2, 2, 1]).unwrap(),
        figure_eight(),
        direct_sum(&staircase(&[1, 1, 1, 1]).unwrap(), &box_complex(1, -1)),
        almost_staircase_1(1, &[1, 1]).unwrap(),
        almost_staircase_2(2, &[1, 1, 1]).unwrap(),
        tensor(&t3, &figure_eight()).unwrap(),
    ]
}

/// A pair `p -> q` of power zero in one bidegree: acyclic in every region.
fn cancelling_pair(rng: &mut ChaCha8Rng, tag: usize) -> KnotComplex {
    let a = rng.gen_range(-2..=2);
    let m = rng.gen_range(-3..=3);
    let (p, q) = (format!("p{tag}"), format!("q{tag}"));
    KnotComplex::new(
        vec![
            Generator::new(p.clone(), a, m),
            Generator::new(q.clone(), a, m - 1),
        ],
        vec![Arrow::new(p, q, 0)],
    )
}

/// A model padded with cancelling pairs and scrambled by filtered moves.
pub fn scrambled(rng: &mut ChaCha8Rng) -> KnotComplex {
    let all = models();
    let mut c = all[rng.gen_range(0..all.len())].clone();
    for tag in 0..rng.gen_range(0..=2) {
        c = direct_sum(&c, &cancelling_pair(rng, tag));
    }
    for _ in 0..2 * c.len() {
        let (from, to) = (rng.gen_range(0..c.len()), rng.gen_range(0..c.len()));
        let (gf, gt) = (&c.generators[from], &c.generators[to]);
        let dm = gf.maslov - gt.maslov;
        if from == to || dm < 0 || dm % 2 != 0 {
            continue;
        }
        let change = BasisChange {
            from: gf.name.clone(),
            to: gt.name.clone(),
            power: dm / 2,
        };
        if let Ok(next) = change_basis(&c, &change) {
            c = next;
        }
    }
    c
}
