//! Filtered changes of basis toward a vertically and horizontally simplified
//! basis, followed by greedy removal of diagonal arrows.

use serde::{Deserialize, Serialize};

use crate::algebra::BitMatrix;
use crate::complex::{Generator, KnotComplex};
use crate::error::{Error, Result};

/// The substitution `to -> to + U^power from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisChange {
    pub from: String,
    pub to: String,
    pub power: i64,
}

impl std::fmt::Display for BasisChange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.power {
            0 => write!(f, "{} -> {} + {}", self.to, self.to, self.from),
            p => write!(f, "{} -> {} + U^{p} {}", self.to, self.to, self.from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplified {
    pub complex: KnotComplex,
    pub log: Vec<BasisChange>,
    /// The move budget ran out before a fixed point.
    pub partial: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Vertical,
    Horizontal,
    Diagonal,
}

/// Working state: generators plus the matrix with implied powers.
#[derive(Clone)]
pub(crate) struct Basis {
    pub gens: Vec<Generator>,
    pub d: BitMatrix,
}

impl Basis {
    pub fn new(c: &KnotComplex) -> Result<Self> {
        Ok(Self {
            gens: c.generators.clone(),
            d: c.differential()?,
        })
    }

    pub fn complex(&self) -> KnotComplex {
        KnotComplex::from_matrix(self.gens.clone(), &self.d)
    }

    fn power(&self, src: usize, dst: usize) -> i64 {
        (self.gens[dst].maslov - self.gens[src].maslov + 1).div_euclid(2)
    }

    fn kind(&self, src: usize, dst: usize) -> Kind {
        let a = self.power(src, dst);
        if a == 0 {
            Kind::Vertical
        } else if self.gens[dst].alexander - a == self.gens[src].alexander {
            Kind::Horizontal
        } else {
            Kind::Diagonal
        }
    }

    /// Power of the move `to -> to + U^c from`, if filtered.
    pub fn move_power(&self, from: usize, to: usize) -> Option<i64> {
        if from == to {
            return None;
        }
        let dm = self.gens[from].maslov - self.gens[to].maslov;
        if dm < 0 || dm % 2 != 0 {
            return None;
        }
        let c = dm / 2;
        (self.gens[from].alexander - c <= self.gens[to].alexander).then_some(c)
    }

    /// Applies `to -> to + U^c from`.
    pub fn apply(&mut self, from: usize, to: usize) {
        let n = self.gens.len();
        // d(to') = d(to) + d(from), in old coordinates.
        for r in 0..n {
            if self.d.get(r, from) {
                self.d.flip(r, to);
            }
        }
        // old to = to' + from, so the from-coordinate picks up the to-coordinate.
        let row_to = self.d.row(to).clone();
        for c in row_to.ones() {
            self.d.flip(from, c);
        }
    }

    fn arrows_of(&self, kind: Kind) -> Vec<(usize, usize)> {
        let n = self.gens.len();
        let mut out = Vec::new();
        for s in 0..n {
            for t in self.d.column(s).ones() {
                if self.kind(s, t) == kind {
                    out.push((s, t));
                }
            }
        }
        out
    }

    fn length(&self, kind: Kind, s: usize, t: usize) -> i64 {
        match kind {
            Kind::Vertical => self.gens[s].alexander - self.gens[t].alexander,
            _ => self.power(s, t),
        }
    }

    /// Generators with two or more outgoing or incoming arrows of `kind`.
    fn violations(&self, kind: Kind) -> usize {
        let n = self.gens.len();
        let mut out = vec![0usize; n];
        let mut inc = vec![0usize; n];
        for (s, t) in self.arrows_of(kind) {
            out[s] += 1;
            inc[t] += 1;
        }
        out.iter().chain(&inc).filter(|&&k| k > 1).count()
    }

    fn diagonal_count(&self) -> usize {
        self.arrows_of(Kind::Diagonal).len()
    }

    fn objective(&self) -> (usize, usize) {
        (
            self.violations(Kind::Vertical) + self.violations(Kind::Horizontal),
            self.diagonal_count(),
        )
    }
}

struct Run {
    basis: Basis,
    log: Vec<BasisChange>,
    budget: usize,
}

impl Run {
    fn apply(&mut self, from: usize, to: usize) -> bool {
        let Some(power) = self.basis.move_power(from, to) else {
            return false;
        };
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        self.basis.apply(from, to);
        debug_assert!(self.basis.d.mul(&self.basis.d).unwrap().is_zero());
        self.log.push(BasisChange {
            from: self.basis.gens[from].name.clone(),
            to: self.basis.gens[to].name.clone(),
            power,
        });
        true
    }

    /// Shortest-arrow-first pairing for vertical or horizontal arrows.
    fn pass(&mut self, kind: Kind) -> bool {
        let n = self.basis.gens.len();
        let mut paired = vec![false; n];
        let mut changed = false;
        loop {
            let next = self
                .basis
                .arrows_of(kind)
                .into_iter()
                .filter(|&(s, t)| !paired[s] && !paired[t])
                .min_by_key(|&(s, t)| (self.basis.length(kind, s, t), s, t));
            let Some((s, t)) = next else { break };
            let others: Vec<usize> = self
                .basis
                .arrows_of(kind)
                .into_iter()
                .filter(|&(s2, t2)| s2 == s && t2 != t)
                .map(|(_, u)| u)
                .collect();
            for u in others {
                changed |= self.apply(u, t);
            }
            let sources: Vec<usize> = self
                .basis
                .arrows_of(kind)
                .into_iter()
                .filter(|&(w, t2)| t2 == t && w != s)
                .map(|(w, _)| w)
                .collect();
            for w in sources {
                changed |= self.apply(s, w);
            }
            paired[s] = true;
            paired[t] = true;
            if self.budget == 0 {
                break;
            }
        }
        changed
    }

    /// Applies the first filtered move that lowers the objective.
    fn improve(&mut self) -> bool {
        let n = self.basis.gens.len();
        let before = self.basis.objective();
        for from in 0..n {
            for to in 0..n {
                if self.basis.move_power(from, to).is_none() {
                    continue;
                }
                let mut trial = self.basis.clone();
                trial.apply(from, to);
                if trial.objective() < before {
                    return self.apply(from, to);
                }
            }
        }
        false
    }
}

/// Simplifies a valid reduced complex. Each round runs the shortest-first
/// vertical and horizontal passes (kept only if they help) and then single
/// moves that lower `(simplification violations, diagonal arrows)`. The move
/// budget is `10 n^2`.
pub fn simplify(c: &KnotComplex) -> Result<Simplified> {
    let n = c.len();
    let mut run = Run {
        basis: Basis::new(c)?,
        log: Vec::new(),
        budget: 10 * n * n,
    };
    loop {
        let start = run.basis.objective();
        let saved = (run.basis.clone(), run.log.len(), run.budget);
        run.pass(Kind::Vertical);
        run.pass(Kind::Horizontal);
        if run.basis.objective() >= start {
            run.basis = saved.0;
            run.log.truncate(saved.1);
            run.budget = saved.2;
        }
        while run.budget > 0 && run.improve() {}
        if run.basis.objective() >= start || run.budget == 0 {
            break;
        }
    }
    let partial = run.budget == 0;
    Ok(Simplified {
        complex: run.basis.complex(),
        log: run.log,
        partial,
    })
}

/// Applies one filtered change of basis. The power must be the one implied
/// by the Maslov gradings, and the move must respect the filtration.
pub fn change_basis(c: &KnotComplex, change: &BasisChange) -> Result<KnotComplex> {
    let mut b = Basis::new(c)?;
    let find = |name: &str| {
        c.index_of(name)
            .ok_or_else(|| Error::InvalidComplex(format!("unknown generator {name}")))
    };
    let (from, to) = (find(&change.from)?, find(&change.to)?);
    if b.move_power(from, to) != Some(change.power) {
        return Err(Error::InvalidComplex(format!(
            "{change} is not a filtered move"
        )));
    }
    b.apply(from, to);
    Ok(b.complex())
}

/// Whether each generator has at most one incoming and one outgoing arrow
/// of each of the vertical and horizontal kinds.
pub fn is_simplified(c: &KnotComplex) -> Result<bool> {
    let b = Basis::new(c)?;
    Ok(b.violations(Kind::Vertical) == 0 && b.violations(Kind::Horizontal) == 0)
}
