//! Subquotient complexes cut out of the plane picture by axis constraints.
//!
//! A region is a union of clauses, each clause a conjunction of constraints
//! on `i` or `j`. It is usable only if it is convex for the product order
//! (equivalently, a difference of two downward-closed sets) and meets every
//! generator's diagonal `{(-k, A - k)}` in finitely many points.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{BitMatrix, BitVec, GradedComplex, GradedHomology, HomologyBasis};
use crate::complex::{KnotComplex, LatticePoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    I,
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constraint {
    pub axis: Axis,
    pub relation: Relation,
    pub value: i64,
}

impl Constraint {
    pub fn new(axis: Axis, relation: Relation, value: i64) -> Self {
        Self {
            axis,
            relation,
            value,
        }
    }

    fn holds(&self, i: i64, j: i64) -> bool {
        let x = match self.axis {
            Axis::I => i,
            Axis::J => j,
        };
        match self.relation {
            Relation::Le => x <= self.value,
            Relation::Eq => x == self.value,
            Relation::Ge => x >= self.value,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = match self.axis {
            Axis::I => "i",
            Axis::J => "j",
        };
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        };
        write!(f, "{axis}{rel}{}", self.value)
    }
}

/// Union of conjunctions of axis constraints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub clauses: Vec<Vec<Constraint>>,
}

use Axis::{I, J};
use Relation::{Eq as EQ, Ge, Le};

fn c(axis: Axis, relation: Relation, value: i64) -> Constraint {
    Constraint::new(axis, relation, value)
}

impl Region {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn clause(constraints: Vec<Constraint>) -> Self {
        Self {
            clauses: vec![constraints],
        }
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        Region { clauses }
    }

    /// `{i <= 0, j = m}`
    pub fn x(m: i64) -> Self {
        Self::clause(vec![c(I, Le, 0), c(J, EQ, m)])
    }

    /// `{i = 0, j <= m - 1}`
    pub fn y(m: i64) -> Self {
        Self::clause(vec![c(I, EQ, 0), c(J, Le, m - 1)])
    }

    /// `{i < 0, j = m - 1}`
    pub fn ux(m: i64) -> Self {
        Self::clause(vec![c(I, Le, -1), c(J, EQ, m - 1)])
    }

    /// `{max(i, j - s) = 0}`, written as `{i = 0, j <= s} | {i <= 0, j = s}`.
    pub fn hook(s: i64) -> Self {
        Self {
            clauses: vec![
                vec![c(I, EQ, 0), c(J, Le, s)],
                vec![c(I, Le, 0), c(J, EQ, s)],
            ],
        }
    }

    pub fn point(i: i64, j: i64) -> Self {
        Self::clause(vec![c(I, EQ, i), c(J, EQ, j)])
    }

    /// `{i = v}`
    pub fn column(v: i64) -> Self {
        Self::clause(vec![c(I, EQ, v)])
    }

    /// `{j = v}`
    pub fn row(v: i64) -> Self {
        Self::clause(vec![c(J, EQ, v)])
    }

    /// `{i = 0, j <= s}`
    pub fn column_below(s: i64) -> Self {
        Self::clause(vec![c(I, EQ, 0), c(J, Le, s)])
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        self.clauses
            .iter()
            .any(|cl| cl.iter().all(|k| k.holds(i, j)))
    }

    /// The image under `(i, j) -> (j, i)`.
    pub fn sigma(&self) -> Region {
        Region {
            clauses: self
                .clauses
                .iter()
                .map(|cl| {
                    cl.iter()
                        .map(|k| Constraint {
                            axis: match k.axis {
                                I => J,
                                J => I,
                            },
                            ..*k
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn constants(&self, axis: Axis) -> Vec<i64> {
        self.clauses
            .iter()
            .flatten()
            .filter(|k| k.axis == axis)
            .map(|k| k.value)
            .collect()
    }

    /// Parses `i<=0,j=2 | i=0,j<=1`. Strict `<` and `>` are shifted by one.
    /// The empty string (or `empty`) is the empty region.
    pub fn parse(text: &str) -> Result<Region> {
        let err = |column: usize, message: &str| Error::Parse {
            line: 1,
            column,
            message: message.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "empty" {
            return Ok(Region::empty());
        }
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut clauses = Vec::new();
        let mut clause = Vec::new();
        loop {
            skip(&mut pos);
            let axis = match chars.get(pos) {
                Some('i') => I,
                Some('j') => J,
                _ => return Err(err(pos + 1, "expected `i` or `j`")),
            };
            pos += 1;
            skip(&mut pos);
            let op_start = pos;
            let mut op = String::new();
            while pos < chars.len() && "<>=".contains(chars[pos]) {
                op.push(chars[pos]);
                pos += 1;
            }
            skip(&mut pos);
            let num_start = pos;
            let mut num = String::new();
            if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                num.push(chars[pos]);
                pos += 1;
            }
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                num.push(chars[pos]);
                pos += 1;
            }
            let value: i64 = num
                .parse()
                .map_err(|_| err(num_start + 1, "expected an integer"))?;
            let (relation, value) = match op.as_str() {
                "<=" => (Le, value),
                "<" => (
                    Le,
                    value
                        .checked_sub(1)
                        .ok_or_else(|| err(num_start + 1, "integer out of range"))?,
                ),
                ">=" => (Ge, value),
                ">" => (
                    Ge,
                    value
                        .checked_add(1)
                        .ok_or_else(|| err(num_start + 1, "integer out of range"))?,
                ),
                "=" | "==" => (EQ, value),
                _ => return Err(err(op_start + 1, "expected one of <=, <, =, >=, >")),
            };
            clause.push(Constraint::new(axis, relation, value));
            skip(&mut pos);
            match chars.get(pos) {
                None => {
                    clauses.push(clause);
                    break;
                }
                Some(',') => pos += 1,
                Some('|') => {
                    pos += 1;
                    clauses.push(std::mem::take(&mut clause));
                }
                Some(_) => return Err(err(pos + 1, "expected `,`, `|` or end of input")),
            }
        }
        Ok(Region { clauses })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|cl| {
                cl.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

/// Representative coordinates: membership is constant between them.
fn grid(constants: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut v: BTreeSet<i64> = BTreeSet::new();
    for k in constants {
        v.insert(k.saturating_sub(1));
        v.insert(k);
        v.insert(k.saturating_add(1));
    }
    let lo = v.iter().next().copied().unwrap_or(0).saturating_sub(2);
    let hi = v.iter().next_back().copied().unwrap_or(0).saturating_add(2);
    v.insert(lo);
    v.insert(hi);
    v.into_iter().collect()
}

/// Cell membership table for a predicate on the compressed grid.
fn table(gi: &[i64], gj: &[i64], member: &dyn Fn(i64, i64) -> bool) -> Vec<Vec<bool>> {
    gi.iter()
        .map(|&i| gj.iter().map(|&j| member(i, j)).collect())
        .collect()
}

fn down_closure(t: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let (n, m) = (t.len(), t.first().map_or(0, Vec::len));
    let mut d = t.to_vec();
    for a in (0..n).rev() {
        for b in (0..m).rev() {
            let mut v = t[a][b];
            if a + 1 < n {
                v |= d[a + 1][b];
            }
            if b + 1 < m {
                v |= d[a][b + 1];
            }
            d[a][b] = v;
        }
    }
    d
}

fn up_closure(t: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let (n, m) = (t.len(), t.first().map_or(0, Vec::len));
    let mut u = t.to_vec();
    for a in 0..n {
        for b in 0..m {
            let mut v = t[a][b];
            if a > 0 {
                v |= u[a - 1][b];
            }
            if b > 0 {
                v |= u[a][b - 1];
            }
            u[a][b] = v;
        }
    }
    u
}

fn is_convex(t: &[Vec<bool>]) -> bool {
    let d = down_closure(t);
    let u = up_closure(t);
    t.iter().zip(d.iter().zip(&u)).all(|(row, (dr, ur))| {
        row.iter()
            .zip(dr.iter().zip(ur))
            .all(|(&x, (&y, &z))| x == (y && z))
    })
}

/// Checks that `r` is a difference of downward-closed sets.
pub fn check_subquotient(r: &Region) -> Result<()> {
    let gi = grid(r.constants(I));
    let gj = grid(r.constants(J));
    let t = table(&gi, &gj, &|i, j| r.contains(i, j));
    if is_convex(&t) {
        Ok(())
    } else {
        Err(Error::NotSubquotient(r.to_string()))
    }
}

/// k-range of a clause on a generator of Alexander grading `a`, with `None`
/// for an unbounded end. Returns `None` when the clause misses the diagonal.
fn clause_range(clause: &[Constraint], a: i64) -> Option<(Option<i64>, Option<i64>)> {
    let mut lows = Vec::new();
    let mut highs = Vec::new();
    for k in clause {
        // i = -k and j = a - k
        let base = match k.axis {
            I => -k.value,
            J => a - k.value,
        };
        match k.relation {
            Le => lows.push(base),
            Ge => highs.push(base),
            EQ => {
                lows.push(base);
                highs.push(base);
            }
        }
    }
    let lo = lows.into_iter().max();
    let hi = highs.into_iter().min();
    if let (Some(l), Some(h)) = (lo, hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

/// Lattice points of `c` inside `r`, sorted by generator then translate.
pub fn region_points(c: &KnotComplex, r: &Region) -> Result<Vec<LatticePoint>> {
    check_subquotient(r)?;
    let mut points = Vec::new();
    for (g, gen) in c.generators.iter().enumerate() {
        let mut ks = BTreeSet::new();
        for clause in &r.clauses {
            match clause_range(clause, gen.alexander) {
                None => {}
                Some((Some(lo), Some(hi))) => ks.extend(lo..=hi),
                Some(_) => return Err(Error::Infinite(gen.name.clone())),
            }
        }
        points.extend(ks.into_iter().map(|k| LatticePoint { generator: g, k }));
    }
    Ok(points)
}

/// A finite complex on lattice points with the induced differential.
#[derive(Clone, Debug)]
pub struct RegionComplex {
    pub points: Vec<LatticePoint>,
    pub maslov: Vec<i64>,
    /// `differential[t][s] = 1` when point `s` maps to point `t`.
    pub differential: BitMatrix,
}

impl RegionComplex {
    fn build(c: &KnotComplex, arrows: &[(usize, usize, i64)], points: Vec<LatticePoint>) -> Self {
        let index: HashMap<LatticePoint, usize> =
            points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut by_src: Vec<Vec<(usize, i64)>> = vec![Vec::new(); c.len()];
        for &(s, t, a) in arrows {
            by_src[s].push((t, a));
        }
        let mut d = BitMatrix::zeros(points.len(), points.len());
        for (col, p) in points.iter().enumerate() {
            for &(t, a) in &by_src[p.generator] {
                let q = LatticePoint {
                    generator: t,
                    k: p.k + a,
                };
                if let Some(&row) = index.get(&q) {
                    d.flip(row, col);
                }
            }
        }
        let maslov = points.iter().map(|p| p.maslov(c)).collect();
        Self {
            points,
            maslov,
            differential: d,
        }
    }

    pub fn graded(&self) -> GradedComplex {
        GradedComplex::new(self.maslov.clone(), self.differential.clone())
    }

    pub fn homology(&self) -> GradedHomology {
        self.graded().homology()
    }

    pub fn homology_basis(&self) -> HomologyBasis {
        self.graded().homology_basis()
    }
}

/// The complex `C(r)`.
pub fn region_complex(c: &KnotComplex, r: &Region) -> Result<RegionComplex> {
    let arrows = c.indexed_arrows()?;
    let points = region_points(c, r)?;
    Ok(RegionComplex::build(c, &arrows, points))
}

/// Maslov-graded homology of `C(r)`.
pub fn region_homology(c: &KnotComplex, r: &Region) -> Result<GradedHomology> {
    Ok(region_complex(c, r)?.homology())
}

/// Homology ranks of the triangle `H(sub) -> H(total) -> H(total \ sub)`
/// with the induced maps. Each map is a matrix from source basis (columns)
/// to target basis (rows).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TriangleReport {
    pub sub: GradedHomology,
    pub total: GradedHomology,
    pub quotient: GradedHomology,
    pub inclusion_rank: usize,
    pub projection_rank: usize,
    pub connecting_rank: usize,
    #[serde(skip)]
    pub inclusion: BitMatrix,
    #[serde(skip)]
    pub projection: BitMatrix,
    #[serde(skip)]
    pub connecting: BitMatrix,
}

fn lift(
    v: &BitVec,
    from: &[LatticePoint],
    to: &HashMap<LatticePoint, usize>,
    len: usize,
) -> BitVec {
    let mut out = BitVec::zeros(len);
    for k in v.ones() {
        out.set(to[&from[k]], true);
    }
    out
}

fn restrict(
    v: &BitVec,
    from: &[LatticePoint],
    to: &HashMap<LatticePoint, usize>,
    len: usize,
) -> BitVec {
    let mut out = BitVec::zeros(len);
    for k in v.ones() {
        if let Some(&t) = to.get(&from[k]) {
            out.set(t, true);
        }
    }
    out
}

fn index_map(points: &[LatticePoint]) -> HashMap<LatticePoint, usize> {
    points.iter().enumerate().map(|(k, &p)| (p, k)).collect()
}

fn map_matrix(
    source: &HomologyBasis,
    target: &HomologyBasis,
    image: impl Fn(&BitVec) -> BitVec,
    shift: i64,
    label: &str,
) -> Result<BitMatrix> {
    let mut m = BitMatrix::zeros(target.rank(), source.rank());
    for (col, rep) in source.reps.iter().enumerate() {
        let coords = target.coordinates(&image(rep)).ok_or_else(|| {
            Error::ExactnessFailure(format!("{label}: image of a cycle is not a cycle"))
        })?;
        for row in coords.ones() {
            if target.gradings[row] != source.gradings[col] + shift {
                return Err(Error::ExactnessFailure(format!(
                    "{label} moves Maslov grading {} to {}, expected a shift of {shift}",
                    source.gradings[col], target.gradings[row]
                )));
            }
            m.set(row, col, true);
        }
    }
    Ok(m)
}

/// Computes and verifies the long exact sequence of `sub ⊆ total`.
pub fn exact_triangle(c: &KnotComplex, sub: &Region, total: &Region) -> Result<TriangleReport> {
    let arrows = c.indexed_arrows()?;
    let sub_pts = region_points(c, sub)?;
    let tot_pts = region_points(c, total)?;
    let sub_set: BTreeSet<LatticePoint> = sub_pts.iter().copied().collect();
    let tot_set: BTreeSet<LatticePoint> = tot_pts.iter().copied().collect();
    if !sub_set.is_subset(&tot_set) {
        return Err(Error::NotSubquotient(format!(
            "{sub} is not contained in {total}"
        )));
    }
    check_sub_in_total(sub, total)?;
    let quo_pts: Vec<LatticePoint> = tot_pts
        .iter()
        .copied()
        .filter(|p| !sub_set.contains(p))
        .collect();

    let sub_cx = RegionComplex::build(c, &arrows, sub_pts);
    let tot_cx = RegionComplex::build(c, &arrows, tot_pts);
    let quo_cx = RegionComplex::build(c, &arrows, quo_pts);
    let (hs, ht, hq) = (
        sub_cx.homology_basis(),
        tot_cx.homology_basis(),
        quo_cx.homology_basis(),
    );
    let (sub_ix, tot_ix, quo_ix) = (
        index_map(&sub_cx.points),
        index_map(&tot_cx.points),
        index_map(&quo_cx.points),
    );
    let (ns, nt, nq) = (
        sub_cx.points.len(),
        tot_cx.points.len(),
        quo_cx.points.len(),
    );

    let inclusion = map_matrix(
        &hs,
        &ht,
        |v| lift(v, &sub_cx.points, &tot_ix, nt),
        0,
        "inclusion",
    )?;
    let projection = map_matrix(
        &ht,
        &hq,
        |v| restrict(v, &tot_cx.points, &quo_ix, nq),
        0,
        "projection",
    )?;
    let connecting = map_matrix(
        &hq,
        &hs,
        |v| {
            let up = lift(v, &quo_cx.points, &tot_ix, nt);
            let boundary = tot_cx.differential.apply(&up);
            restrict(&boundary, &tot_cx.points, &sub_ix, ns)
        },
        -1,
        "connecting map",
    )?;

    for (name, a, b) in [
        ("projection after inclusion", &projection, &inclusion),
        ("connecting after projection", &connecting, &projection),
        ("inclusion after connecting", &inclusion, &connecting),
    ] {
        let composite = a
            .mul(b)
            .map_err(|e| Error::ExactnessFailure(e.to_string()))?;
        if !composite.is_zero() {
            return Err(Error::ExactnessFailure(format!("{name} is nonzero")));
        }
    }
    let (ri, rp, rd) = (inclusion.rank(), projection.rank(), connecting.rank());
    let (h_s, h_t, h_q) = (hs.rank(), ht.rank(), hq.rank());
    if ri + rp != h_t || rp + rd != h_q || rd + ri != h_s {
        return Err(Error::ExactnessFailure(format!(
            "ranks do not fit: H = ({h_s}, {h_t}, {h_q}), maps = ({ri}, {rp}, {rd})"
        )));
    }
    Ok(TriangleReport {
        sub: hs.graded(),
        total: ht.graded(),
        quotient: hq.graded(),
        inclusion_rank: ri,
        projection_rank: rp,
        connecting_rank: rd,
        inclusion,
        projection,
        connecting,
    })
}

/// `sub` must be closed downward inside `total`.
fn check_sub_in_total(sub: &Region, total: &Region) -> Result<()> {
    let gi = grid(sub.constants(I).into_iter().chain(total.constants(I)));
    let gj = grid(sub.constants(J).into_iter().chain(total.constants(J)));
    let s = table(&gi, &gj, &|i, j| sub.contains(i, j));
    let t = table(&gi, &gj, &|i, j| total.contains(i, j));
    let d = down_closure(&s);
    for a in 0..gi.len() {
        for b in 0..gj.len() {
            if s[a][b] && !t[a][b] {
                return Err(Error::NotSubquotient(format!(
                    "{sub} is not contained in {total}"
                )));
            }
            if t[a][b] && d[a][b] && !s[a][b] {
                return Err(Error::NotSubquotient(format!(
                    "{sub} is not a subcomplex of {total}"
                )));
            }
        }
    }
    Ok(())
}

/// The pair of triangles from `0 -> C(UX_m) -> C(UX_m ∪ Y_m) -> C(Y_m) -> 0`
/// and `0 -> C(Y_m) -> C(X_m ∪ Y_m) -> C(X_m) -> 0`, plus the composite of
/// their connecting maps `H(X_m) -> H(Y_m) -> H(UX_m)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleTriangle {
    pub m: i64,
    pub lower: TriangleReport,
    pub upper: TriangleReport,
    pub composite_zero: bool,
}

pub fn double_triangle(c: &KnotComplex, m: i64) -> Result<DoubleTriangle> {
    let (x, y, ux) = (Region::x(m), Region::y(m), Region::ux(m));
    let lower = exact_triangle(c, &ux, &ux.union(&y))?;
    let upper = exact_triangle(c, &y, &x.union(&y))?;
    let composite = lower
        .connecting
        .mul(&upper.connecting)
        .map_err(|e| Error::ExactnessFailure(e.to_string()))?;
    if !composite.is_zero() {
        return Err(Error::ExactnessFailure(format!(
            "composite of connecting maps is nonzero at m = {m}"
        )));
    }
    Ok(DoubleTriangle {
        m,
        lower,
        upper,
        composite_zero: true,
    })
}

/// `0 -> C({i<0, j=m}) -> C({i<=0, j=m}) -> C({(0, m)}) -> 0`
pub fn point_triangle(c: &KnotComplex, m: i64) -> Result<TriangleReport> {
    let sub = Region::clause(vec![Constraint::new(I, Le, -1), Constraint::new(J, EQ, m)]);
    exact_triangle(c, &sub, &Region::x(m))
}

fn extent(c: &KnotComplex) -> i64 {
    c.generators
        .iter()
        .map(|g| g.alexander.abs())
        .max()
        .unwrap_or(0)
}

/// Regions whose homologies are compared under `(i, j) -> (j, i)`.
pub fn standard_suite(g: i64) -> Vec<Region> {
    let r = g + 1;
    let mut suite = Vec::new();
    for m in -r..=r {
        suite.push(Region::x(m));
        suite.push(Region::y(m));
        suite.push(Region::ux(m));
        suite.push(Region::hook(m));
    }
    for i in -r..=r {
        for j in -r..=r {
            suite.push(Region::point(i, j));
        }
    }
    suite.push(Region::column(0));
    suite.push(Region::row(0));
    suite
}

/// Graded homology of every region in the standard suite for extent `g`.
pub fn fingerprint(c: &KnotComplex, g: i64) -> Result<Vec<GradedHomology>> {
    standard_suite(g)
        .iter()
        .map(|r| region_homology(c, r))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryFailure {
    pub region: String,
    pub homology: GradedHomology,
    pub swapped: GradedHomology,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub checked: usize,
    pub failures: Vec<SymmetryFailure>,
}

impl SymmetryReport {
    pub fn is_symmetric(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `H(S)` with `H(σS)` over the standard suite.
pub fn symmetry_check(c: &KnotComplex) -> Result<SymmetryReport> {
    let mut report = SymmetryReport::default();
    for r in standard_suite(extent(c)) {
        let h = region_homology(c, &r)?;
        let hs = region_homology(c, &r.sigma())?;
        report.checked += 1;
        if h != hs {
            report.failures.push(SymmetryFailure {
                region: r.to_string(),
                homology: h,
                swapped: hs,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{box_complex, figure_eight, staircase};

    fn trefoil() -> KnotComplex {
        staircase(&[1, 1]).unwrap()
    }

    fn h(pairs: &[(i64, usize)]) -> GradedHomology {
        pairs.iter().copied().collect()
    }

    #[test]
    fn parse_and_display() {
        let r = Region::parse("i<=0,j=2 | i=0,j<=1").unwrap();
        assert_eq!(r.clauses.len(), 2);
        assert_eq!(r.to_string(), "i<=0,j=2 | i=0,j<=1");
        assert_eq!(Region::parse(&r.to_string()).unwrap(), r);
        let s = Region::parse(" i < 0 , j > -2 ").unwrap();
        assert_eq!(s, Region::clause(vec![c(I, Le, -1), c(J, Ge, -1)]));
        assert_eq!(Region::parse("").unwrap(), Region::empty());
        assert_eq!(Region::parse("empty").unwrap(), Region::empty());
        assert!(Region::parse("k=0").is_err());
        assert!(Region::parse("i=0,").is_err());
        assert!(Region::parse("i=>0").is_err());
        assert!(Region::parse("i<-9223372036854775808").is_err());
    }

    #[test]
    fn trefoil_x0() {
        let pts = region_points(&trefoil(), &Region::x(0)).unwrap();
        assert_eq!(pts.len(), 2);
        // U y1 at (-1, 0) and x1 at (0, 0), joined by x1 -> U y1: acyclic.
        let hx = region_homology(&trefoil(), &Region::x(0)).unwrap();
        assert!(hx.is_zero());
        // The swapped region {i = 0, j <= 0} holds x1 -> y2 and is acyclic too.
        assert!(region_homology(&trefoil(), &Region::column_below(0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn top_row_point_has_zero_differential() {
        let cx =
            region_complex(&trefoil(), &Region::clause(vec![c(I, EQ, 0), c(J, EQ, 1)])).unwrap();
        assert_eq!(cx.points.len(), 1);
        assert!(cx.differential.is_zero());
    }

    #[test]
    fn diagonal_is_infinite() {
        // {j = i} written as a union would not be convex; a half-plane shows
        // the finiteness failure.
        let r = Region::clause(vec![c(I, Le, 0)]);
        assert!(matches!(
            region_points(&trefoil(), &r),
            Err(Error::Infinite(_))
        ));
    }

    #[test]
    fn nonconvex_region_is_rejected() {
        let r = Region::point(0, 0).union(&Region::point(1, 1));
        assert!(matches!(
            region_points(&trefoil(), &r),
            Err(Error::NotSubquotient(_))
        ));
    }

    #[test]
    fn column_homology() {
        assert_eq!(
            region_homology(&trefoil(), &Region::column(0)).unwrap(),
            h(&[(0, 1)])
        );
        assert!(region_homology(&trefoil(), &Region::empty())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn hook_on_figure_eight() {
        let r = region_homology(&figure_eight(), &Region::hook(0)).unwrap();
        assert_eq!(r.total(), 3);
    }

    #[test]
    fn hook_has_one_point_per_generator() {
        let c = staircase(&[1, 2, 2, 1]).unwrap();
        for s in -4..=4 {
            let pts = region_points(&c, &Region::hook(s)).unwrap();
            assert_eq!(pts.len(), c.len());
            for p in &pts {
                let a = c.generators[p.generator].alexander;
                assert_eq!(p.k, (a - s).max(0));
            }
        }
    }

    #[test]
    fn trefoil_triangles() {
        let c = trefoil();
        exact_triangle(&c, &Region::ux(1), &Region::ux(1).union(&Region::y(1))).unwrap();
        let same = exact_triangle(&c, &Region::x(0), &Region::x(0)).unwrap();
        assert!(same.quotient.is_zero());
        for m in -3..=3 {
            double_triangle(&c, m).unwrap();
            point_triangle(&c, m).unwrap();
        }
    }

    #[test]
    fn figure_eight_point_triangle() {
        let r = point_triangle(&figure_eight(), 0).unwrap();
        assert_eq!(r.quotient.total(), 3);
    }

    #[test]
    fn triangle_rejects_non_subcomplex() {
        let c = trefoil();
        let err = exact_triangle(&c, &Region::point(0, 0), &Region::x(0)).unwrap_err();
        assert!(matches!(err, Error::NotSubquotient(_)));
    }

    #[test]
    fn symmetry() {
        assert!(symmetry_check(&trefoil()).unwrap().is_symmetric());
        assert!(symmetry_check(&figure_eight()).unwrap().is_symmetric());
        assert!(!symmetry_check(&staircase(&[2, 1]).unwrap())
            .unwrap()
            .is_symmetric());
        let lone_box = box_complex(1, 1);
        assert!(symmetry_check(&lone_box).unwrap().is_symmetric());
    }
}
