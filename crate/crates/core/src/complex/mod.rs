//! The CFK-infinity data model.
//!
//! A complex is stored as finitely many generators at U-power zero plus
//! decorated arrows. The translate `U^k x` sits at `(i, j) = (-k, A(x) - k)`
//! with Maslov grading `M(x) - 2k`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{BitMatrix, GradedComplex, GradedHomology};
use crate::error::{Error, Result};

pub mod constructors;
pub mod format;
pub mod ops;

pub use constructors::{
    almost_staircase_1, almost_staircase_2, box_complex, figure_eight, free_generator, staircase,
};
pub use format::{parse, serialize};
pub use ops::{direct_sum, mirror, reduce, tensor};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub alexander: i64,
    pub maslov: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, alexander: i64, maslov: i64) -> Self {
        Self {
            name: name.into(),
            alexander,
            maslov,
        }
    }
}

/// `src -> dst` with power `a` means `U^a dst` is a component of `d(src)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub src: String,
    pub dst: String,
    pub u_power: i64,
}

impl Arrow {
    pub fn new(src: impl Into<String>, dst: impl Into<String>, u_power: i64) -> Self {
        Self {
            src: src.into(),
            dst: dst.into(),
            u_power,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotComplex {
    pub generators: Vec<Generator>,
    pub arrows: Vec<Arrow>,
}

/// The translate `U^k` of generator number `generator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub generator: usize,
    pub k: i64,
}

impl LatticePoint {
    pub fn position(&self, c: &KnotComplex) -> (i64, i64) {
        (-self.k, c.generators[self.generator].alexander - self.k)
    }

    pub fn maslov(&self, c: &KnotComplex) -> i64 {
        c.generators[self.generator].maslov - 2 * self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    DuplicateName(String),
    UnknownGenerator {
        arrow: usize,
        name: String,
    },
    NegativePower {
        arrow: usize,
    },
    AlexanderViolation {
        arrow: usize,
    },
    MaslovViolation {
        arrow: usize,
    },
    DuplicateArrow {
        arrow: usize,
    },
    /// An odd number of two-step paths from `src` to `dst` of total power `power`.
    DSquaredNonzero {
        src: String,
        dst: String,
        power: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateName(n) => write!(f, "duplicate generator name {n}"),
            Violation::UnknownGenerator { arrow, name } => {
                write!(f, "arrow #{arrow} refers to unknown generator {name}")
            }
            Violation::NegativePower { arrow } => write!(f, "arrow #{arrow} has negative U-power"),
            Violation::AlexanderViolation { arrow } => {
                write!(f, "arrow #{arrow} raises the j-filtration")
            }
            Violation::MaslovViolation { arrow } => {
                write!(f, "arrow #{arrow} does not lower Maslov grading by one")
            }
            Violation::DuplicateArrow { arrow } => write!(f, "arrow #{arrow} is a duplicate"),
            Violation::DSquaredNonzero { src, dst, power } => {
                write!(f, "d^2 {src} has nonzero component U^{power} {dst}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl KnotComplex {
    pub fn new(generators: Vec<Generator>, arrows: Vec<Arrow>) -> Self {
        Self { generators, arrows }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn alexanders(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.alexander).collect()
    }

    pub fn maslovs(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.maslov).collect()
    }

    /// Checks every arrow invariant and `d^2 = 0`, listing all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (k, g) in self.generators.iter().enumerate() {
            if index.insert(g.name.as_str(), k).is_some() {
                violations.push(Violation::DuplicateName(g.name.clone()));
            }
        }
        let mut seen = HashSet::new();
        let mut resolved = Vec::new();
        for (k, a) in self.arrows.iter().enumerate() {
            let src = index.get(a.src.as_str()).copied();
            let dst = index.get(a.dst.as_str()).copied();
            for (name, found) in [(&a.src, src), (&a.dst, dst)] {
                if found.is_none() {
                    violations.push(Violation::UnknownGenerator {
                        arrow: k,
                        name: name.clone(),
                    });
                }
            }
            if a.u_power < 0 {
                violations.push(Violation::NegativePower { arrow: k });
            }
            if !seen.insert((a.src.as_str(), a.dst.as_str(), a.u_power)) {
                violations.push(Violation::DuplicateArrow { arrow: k });
            }
            let (Some(s), Some(t)) = (src, dst) else {
                continue;
            };
            let (gs, gt) = (&self.generators[s], &self.generators[t]);
            if gt.alexander - a.u_power > gs.alexander {
                violations.push(Violation::AlexanderViolation { arrow: k });
            }
            if gt.maslov - 2 * a.u_power != gs.maslov - 1 {
                violations.push(Violation::MaslovViolation { arrow: k });
            }
            resolved.push((s, t, a.u_power));
        }
        let mut out: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.len()];
        for &(s, t, p) in &resolved {
            out[s].push((t, p));
        }
        let mut parity: BTreeMap<(usize, usize, i64), bool> = BTreeMap::new();
        for (x, edges) in out.iter().enumerate() {
            for &(y, p) in edges {
                for &(z, q) in &out[y] {
                    let e = parity.entry((x, z, p + q)).or_insert(false);
                    *e = !*e;
                }
            }
        }
        for ((x, z, t), odd) in parity {
            if odd {
                violations.push(Violation::DSquaredNonzero {
                    src: self.generators[x].name.clone(),
                    dst: self.generators[z].name.clone(),
                    power: t,
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidComplex(v.to_string())),
        }
    }

    /// Arrows as `(src, dst, power)` index triples. Fails on unknown names.
    pub fn indexed_arrows(&self) -> Result<Vec<(usize, usize, i64)>> {
        let index: HashMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| (g.name.as_str(), k))
            .collect();
        self.arrows
            .iter()
            .map(|a| {
                let s = index.get(a.src.as_str());
                let t = index.get(a.dst.as_str());
                match (s, t) {
                    (Some(&s), Some(&t)) => Ok((s, t, a.u_power)),
                    _ => Err(Error::InvalidComplex(format!(
                        "arrow {} -> {} names an unknown generator",
                        a.src, a.dst
                    ))),
                }
            })
            .collect()
    }

    /// The differential as a matrix with `D[dst][src] = 1`. The U-power of an
    /// entry is implied by the Maslov gradings, see [`KnotComplex::implied_power`].
    pub fn differential(&self) -> Result<BitMatrix> {
        let mut d = BitMatrix::zeros(self.len(), self.len());
        for (s, t, p) in self.indexed_arrows()? {
            if p != self.implied_power(s, t) {
                return Err(Error::InvalidComplex(format!(
                    "arrow {} -> {} violates the Maslov rule",
                    self.generators[s].name, self.generators[t].name
                )));
            }
            d.flip(t, s);
        }
        Ok(d)
    }

    /// The U-power that an arrow `src -> dst` must carry.
    pub fn implied_power(&self, src: usize, dst: usize) -> i64 {
        (self.generators[dst].maslov - self.generators[src].maslov + 1).div_euclid(2)
    }

    /// Rebuilds arrows from a matrix, in canonical `(src, dst)` order.
    pub fn from_matrix(generators: Vec<Generator>, d: &BitMatrix) -> Self {
        let mut c = Self::new(generators, Vec::new());
        for s in 0..c.len() {
            for t in d.column(s).ones() {
                let p = c.implied_power(s, t);
                c.arrows.push(Arrow::new(
                    c.generators[s].name.clone(),
                    c.generators[t].name.clone(),
                    p,
                ));
            }
        }
        c
    }

    /// Sorts arrows by source index, then target index, then power.
    pub fn canonical(&self) -> Self {
        let mut c = self.clone();
        let index: HashMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| (g.name.as_str(), k))
            .collect();
        let key = |a: &Arrow| {
            (
                index.get(a.src.as_str()).copied().unwrap_or(usize::MAX),
                index.get(a.dst.as_str()).copied().unwrap_or(usize::MAX),
                a.u_power,
            )
        };
        c.arrows.sort_by_key(key);
        c
    }

    /// Homology of the `i = 0` column, by Maslov grading.
    pub fn column_homology(&self) -> Result<GradedHomology> {
        let mut d = BitMatrix::zeros(self.len(), self.len());
        for (s, t, p) in self.indexed_arrows()? {
            if p == 0 {
                d.flip(t, s);
            }
        }
        Ok(GradedComplex::new(self.maslovs(), d).homology())
    }

    /// Shifts every Maslov grading by `by`.
    pub fn shift_maslov(&mut self, by: i64) {
        for g in &mut self.generators {
            g.maslov += by;
        }
    }

    /// Renames generators to `prefix0, prefix1, ...` in order.
    pub fn renamed(&self, prefix: &str) -> Self {
        let names: Vec<String> = (0..self.len()).map(|k| format!("{prefix}{k}")).collect();
        self.with_names(&names)
    }

    /// Replaces generator names positionally, rewriting arrows to match.
    pub fn with_names(&self, names: &[String]) -> Self {
        assert_eq!(names.len(), self.len());
        let map: HashMap<&str, &str> = self
            .generators
            .iter()
            .zip(names)
            .map(|(g, n)| (g.name.as_str(), n.as_str()))
            .collect();
        let rename = |n: &str| map.get(n).map_or_else(|| n.to_string(), |s| s.to_string());
        Self {
            generators: self
                .generators
                .iter()
                .zip(names)
                .map(|(g, n)| Generator::new(n.clone(), g.alexander, g.maslov))
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow::new(rename(&a.src), rename(&a.dst), a.u_power))
                .collect(),
        }
    }

    /// Largest Alexander grading, or `None` for the empty complex.
    pub fn max_alexander(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.alexander).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> KnotComplex {
        KnotComplex::new(
            vec![
                Generator::new("y1", 1, 0),
                Generator::new("x1", 0, -1),
                Generator::new("y2", -1, -2),
            ],
            vec![Arrow::new("x1", "y1", 1), Arrow::new("x1", "y2", 0)],
        )
    }

    #[test]
    fn trefoil_is_valid() {
        assert!(trefoil().validate().is_valid());
    }

    #[test]
    fn single_generator_is_valid() {
        let c = KnotComplex::new(vec![Generator::new("a", 0, 0)], vec![]);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn maslov_violation_is_reported() {
        let mut c = trefoil();
        c.arrows[1].u_power = 1;
        let report = c.validate();
        assert!(report
            .violations
            .contains(&Violation::MaslovViolation { arrow: 1 }));
    }

    #[test]
    fn every_violation_is_listed() {
        let c = KnotComplex::new(
            vec![Generator::new("a", 0, 0), Generator::new("a", 0, 0)],
            vec![
                Arrow::new("a", "b", -1),
                Arrow::new("a", "a", 0),
                Arrow::new("a", "a", 0),
            ],
        );
        let v = c.validate().violations;
        assert!(v.contains(&Violation::DuplicateName("a".into())));
        assert!(v.contains(&Violation::UnknownGenerator {
            arrow: 0,
            name: "b".into()
        }));
        assert!(v.contains(&Violation::NegativePower { arrow: 0 }));
        assert!(v.contains(&Violation::DuplicateArrow { arrow: 2 }));
        assert!(v.contains(&Violation::MaslovViolation { arrow: 1 }));
    }

    #[test]
    fn odd_two_step_paths_are_reported() {
        let c = KnotComplex::new(
            vec![
                Generator::new("a", 0, 2),
                Generator::new("b", 0, 1),
                Generator::new("c", 0, 0),
            ],
            vec![Arrow::new("a", "b", 0), Arrow::new("b", "c", 0)],
        );
        assert_eq!(
            c.validate().violations,
            vec![Violation::DSquaredNonzero {
                src: "a".into(),
                dst: "c".into(),
                power: 0
            }]
        );
    }

    #[test]
    fn matrix_round_trip() {
        let c = trefoil();
        let d = c.differential().unwrap();
        assert_eq!(KnotComplex::from_matrix(c.generators.clone(), &d), c);
    }

    #[test]
    fn column_homology_of_trefoil() {
        let h = trefoil().column_homology().unwrap();
        assert_eq!(h, [(0, 1)].into_iter().collect());
    }

    #[test]
    fn lattice_point_coordinates() {
        let c = trefoil();
        let p = LatticePoint { generator: 0, k: 1 };
        assert_eq!(p.position(&c), (-1, 0));
        assert_eq!(p.maslov(&c), -2);
    }
}
