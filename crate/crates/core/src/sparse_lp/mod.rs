//! Sparse-resultant construction of the same matrix: Newton polytopes of
//! `δf1, δf2, f1, f2` in `(y, y1, y2)`, the row-content linear program for
//! each lattice point of the perturbed Minkowski sum, the induced partition
//! of the column set, and the moves that turn it into the divisibility
//! partition.
//!
//! Points are exponent vectors `(e_y, e_y1, e_y2)`. Lattice points of
//! `Q + δ` are `(1,1,1) + E`.

pub mod simplex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffsys::{self, SystemSpec, YMonomial};
use crate::error::{Error, Result};
use crate::macaulay::{self, PolyMatrix};
use crate::monomial_sets::{self, MainMonomials, Partition, Provenance};
pub use simplex::{LpSolution, Q};

pub type Point = [i64; 3];

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn point_of(m: &YMonomial) -> Point {
    [m.y as i64, m.y1 as i64, m.y2 as i64]
}

fn monomial_of(p: &Point) -> YMonomial {
    YMonomial::new(p[0] as u32, p[1] as u32, p[2] as u32)
}

/// Lattice point of `Q + δ` for a column monomial.
pub fn lattice_point_of(m: &YMonomial) -> Point {
    let p = point_of(m);
    [p[0] + 1, p[1] + 1, p[2] + 1]
}

/// Column monomial of a lattice point of `Q + δ`.
pub fn column_of(p: &Point) -> YMonomial {
    monomial_of(&[p[0] - 1, p[1] - 1, p[2] - 1])
}

/// Support points and vertices of one Newton polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub points: Vec<Point>,
    pub vertices: Vec<Point>,
}

/// Vertex lists `V1..V4` as printed, with their positional duplicates when
/// a degree is one. Position `j` is the variable `λ_{i,j+1}`.
pub fn vertex_lists(spec: &SystemSpec) -> [Vec<Point>; 4] {
    let v12 = |d: i64| vec![[0, 0, 0], [0, 0, 1], [0, d - 1, 1], [0, d, 0], [d - 1, 0, 1], [d, 0, 0]];
    let v34 = |d: i64| vec![[0, 0, 0], [0, d, 0], [d, 0, 0]];
    let (d1, d2) = (spec.d1 as i64, spec.d2 as i64);
    [v12(d1), v12(d2), v34(d1), v34(d2)]
}

/// True when `p` is a convex combination of `pts`, decided exactly by LP.
pub fn in_hull(p: &Point, pts: &[Point]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let mut a: Vec<Vec<Q>> = (0..3).map(|k| pts.iter().map(|v| q(v[k])).collect()).collect();
    a.push(vec![Q::one(); pts.len()]);
    let b = vec![q(p[0]), q(p[1]), q(p[2]), Q::one()];
    simplex::feasible(&a, &b)
}

/// Newton polytopes of `δf1, δf2, f1, f2`, with vertices computed as the
/// support points outside the hull of the others, in printed order.
pub fn newton_data(spec: &SystemSpec) -> [Polytope; 4] {
    let polys = diffsys::row_polynomials(spec);
    let lists = vertex_lists(spec);
    [0, 1, 2, 3].map(|i| {
        let points: Vec<Point> = polys[i].support().iter().map(point_of).collect();
        let extreme: BTreeSet<Point> = points
            .iter()
            .filter(|p| {
                let others: Vec<Point> = points.iter().filter(|o| o != p).copied().collect();
                !in_hull(p, &others)
            })
            .copied()
            .collect();
        let mut vertices = Vec::new();
        for v in lists[i].iter().chain(extreme.iter()) {
            if extreme.contains(v) && !vertices.contains(v) {
                vertices.push(*v);
            }
        }
        Polytope { points, vertices }
    })
}

/// Lifting vectors `l_i = (L_i1, L_i2, L_i3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Liftings {
    pub l: [[i64; 3]; 4],
}

impl Liftings {
    /// `l1 = (7,-4,-5), l2 = (5,-9,5), l3 = (6,2,1), l4 = (8,4,7)`.
    pub fn paper() -> Self {
        Self { l: [[7, -4, -5], [5, -9, 5], [6, 2, 1], [8, 4, 7]] }
    }

    pub fn from_flat(v: &[i64]) -> Result<Self> {
        if v.len() != 12 {
            return Err(Error::Parse(format!("expected 12 lifting values, got {}", v.len())));
        }
        let mut l = [[0; 3]; 4];
        for (k, x) in v.iter().enumerate() {
            l[k / 3][k % 3] = *x;
        }
        Ok(Self { l })
    }

    /// `L_ij` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.l[i - 1][j - 1]
    }
}

impl Default for Liftings {
    fn default() -> Self {
        Self::paper()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftingReport {
    pub violated: Vec<String>,
    /// Inequalities that hold only with equality.
    pub non_strict: Vec<String>,
}

impl LiftingReport {
    pub fn is_valid(&self) -> bool {
        self.violated.is_empty()
    }
}

/// Checks the merged lifting conditions: one inequality combination, the
/// chains `L13 <= L23`, `L21 <= L31 <= L11 <= L41`, `L22 <= L12 <= L32 <= L42`
/// and the equality `L31 = L32 + L41 - L42`.
pub fn validate_liftings(lift: &Liftings) -> LiftingReport {
    let l = |i, j| lift.get(i, j);
    let le = [
        ("L11-L12-L21+L22 <= 0", l(1, 1) - l(1, 2) - l(2, 1) + l(2, 2), 0),
        ("L13 <= L23", l(1, 3), l(2, 3)),
        ("L21 <= L31", l(2, 1), l(3, 1)),
        ("L31 <= L11", l(3, 1), l(1, 1)),
        ("L11 <= L41", l(1, 1), l(4, 1)),
        ("L22 <= L12", l(2, 2), l(1, 2)),
        ("L12 <= L32", l(1, 2), l(3, 2)),
        ("L32 <= L42", l(3, 2), l(4, 2)),
    ];
    let mut report = LiftingReport::default();
    for (name, lhs, rhs) in le {
        if lhs > rhs {
            report.violated.push(name.to_string());
        } else if lhs == rhs {
            report.non_strict.push(name.to_string());
        }
    }
    if l(3, 1) != l(3, 2) + l(4, 1) - l(4, 2) {
        report.violated.push("L31 = L32 + L41 - L42".to_string());
    }
    report
}

/// Exact perturbation vector with `0 < δ_k < 1`.
pub type Perturbation = [Q; 3];

/// `(1/100, 1/100, 1/100)`.
pub fn default_delta() -> Perturbation {
    [(); 3].map(|_| Q::new(1.into(), 100.into()))
}

pub fn check_delta(delta: &Perturbation) -> Result<()> {
    if delta.iter().all(|d| d.is_positive() && *d < Q::one()) {
        Ok(())
    } else {
        Err(Error::InvalidPerturbation)
    }
}

/// The variable `λ_ij` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarLabel {
    pub i: u8,
    pub j: u8,
}

impl VarLabel {
    pub const fn new(i: u8, j: u8) -> Self {
        Self { i, j }
    }

    /// Two-digit code `ij`, as in `13` for `λ13`.
    pub const fn code(code: u8) -> Self {
        Self { i: code / 10, j: code % 10 }
    }

    /// Column of this variable in the LP.
    pub fn index(&self) -> usize {
        let offset = [0, 6, 12, 15][(self.i - 1) as usize];
        offset + (self.j - 1) as usize
    }
}

impl fmt::Display for VarLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{}{}", self.i, self.j)
    }
}

impl FromStr for VarLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim_start_matches("λ").trim_start_matches("lambda");
        let bad = || Error::Parse(format!("bad variable {s:?}"));
        let code: u8 = digits.parse().map_err(|_| bad())?;
        let v = VarLabel::code(code);
        let sizes = [6, 6, 3, 3];
        if !(1..=4).contains(&v.i) || v.j == 0 || v.j > sizes[(v.i - 1) as usize] {
            return Err(bad());
        }
        Ok(v)
    }
}

impl Serialize for VarLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The 18 LP variables in column order.
pub fn var_labels() -> Vec<VarLabel> {
    let sizes = [6u8, 6, 3, 3];
    (1..=4u8).flat_map(|i| (1..=sizes[(i - 1) as usize]).map(move |j| VarLabel::new(i, j))).collect()
}

/// One LP instance: minimize `c·λ` subject to `A λ = b`, `λ >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub point: Point,
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
    pub labels: Vec<VarLabel>,
}

/// The `7 x 18` constraint matrix: three coordinate rows, then one
/// convexity row per polytope.
pub fn constraint_matrix(spec: &SystemSpec) -> Vec<Vec<Q>> {
    let lists = vertex_lists(spec);
    let labels = var_labels();
    let mut a = vec![vec![Q::zero(); labels.len()]; 7];
    for v in &labels {
        let vert = lists[(v.i - 1) as usize][(v.j - 1) as usize];
        for k in 0..3 {
            a[k][v.index()] = q(vert[k]);
        }
        a[3 + (v.i - 1) as usize][v.index()] = Q::one();
    }
    a
}

/// Cost of `λ_ij` is `l_i · V_ij`.
pub fn costs(spec: &SystemSpec, lift: &Liftings) -> Vec<Q> {
    let lists = vertex_lists(spec);
    var_labels()
        .iter()
        .map(|v| {
            let vert = lists[(v.i - 1) as usize][(v.j - 1) as usize];
            let l = lift.l[(v.i - 1) as usize];
            q((0..3).map(|k| l[k] * vert[k]).sum())
        })
        .collect()
}

fn rhs(point: &Point, delta: &Perturbation) -> Vec<Q> {
    let mut b: Vec<Q> = (0..3).map(|k| q(point[k]) - &delta[k]).collect();
    b.extend((0..4).map(|_| Q::one()));
    b
}

pub fn build_lp(point: Point, spec: &SystemSpec, lift: &Liftings, delta: &Perturbation) -> LpInstance {
    LpInstance { point, a: constraint_matrix(spec), b: rhs(&point, delta), c: costs(spec, lift), labels: var_labels() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCheck {
    pub feasible: bool,
    pub strictly_positive: bool,
    pub optimal: bool,
    /// Full solution vector, nonbasic entries zero.
    pub x: Vec<Q>,
    pub objective: Q,
}

/// Basis submatrix of `A` for the given variables.
pub fn basis_matrix(a: &[Vec<Q>], basis: &[VarLabel]) -> Vec<Vec<Q>> {
    a.iter().map(|row| basis.iter().map(|v| row[v.index()].clone()).collect()).collect()
}

/// Checks `x_B = B^-1 b >= 0` and `c_B B^-1 A - c <= 0`.
pub fn verify_basis(inst: &LpInstance, basis: &[VarLabel]) -> Result<BasisCheck> {
    let m = inst.a.len();
    if basis.len() != m {
        return Err(Error::SingularBasis);
    }
    let bm = basis_matrix(&inst.a, basis);
    let xb = simplex::solve_square(&bm, &inst.b).ok_or(Error::SingularBasis)?;
    // y = c_B B^-1, from B^T y = c_B
    let bt: Vec<Vec<Q>> = (0..m).map(|r| (0..m).map(|c| bm[c][r].clone()).collect()).collect();
    let cb: Vec<Q> = basis.iter().map(|v| inst.c[v.index()].clone()).collect();
    let y = simplex::solve_square(&bt, &cb).ok_or(Error::SingularBasis)?;
    let optimal = (0..inst.c.len()).all(|j| {
        let z: Q = (0..m).map(|r| &y[r] * &inst.a[r][j]).sum();
        z - &inst.c[j] <= Q::zero()
    });
    let mut x = vec![Q::zero(); inst.c.len()];
    for (v, val) in basis.iter().zip(&xb) {
        x[v.index()] = val.clone();
    }
    let objective = x.iter().zip(&inst.c).map(|(a, b)| a * b).sum();
    Ok(BasisCheck {
        feasible: xb.iter().all(|v| !v.is_negative()),
        strictly_positive: xb.iter().all(|v| v.is_positive()),
        optimal,
        x,
        objective,
    })
}

pub fn simplex_solve(inst: &LpInstance) -> Result<LpSolution> {
    simplex::solve(&inst.a, &inst.b, &inst.c)
}

/// Lattice points of `Q + δ`, found by scanning `[0, 2d1 + 2d2]^3` and
/// testing feasibility of the LP constraints exactly.
pub fn lattice_points(spec: &SystemSpec, delta: &Perturbation) -> Result<BTreeSet<Point>> {
    check_delta(delta)?;
    let hi = 2 * (spec.d1 + spec.d2) as i64;
    let a = constraint_matrix(spec);
    let mut candidates = Vec::new();
    for x in 0..=hi {
        for y in 0..=hi {
            for z in 0..=hi {
                candidates.push([x, y, z]);
            }
        }
    }
    Ok(candidates.into_par_iter().filter(|p| simplex::feasible(&a, &rhs(p, delta))).collect())
}

/// Named bases of the four cases, in printed order.
pub const VET_LISTS: [(&str, [u8; 7]); 22] = [
    ("vet11", [13, 23, 24, 32, 33, 41, 43]),
    ("vet12", [13, 23, 24, 31, 32, 33, 41]),
    ("vet13", [13, 23, 24, 32, 33, 41, 42]),
    ("vet14", [13, 23, 24, 33, 41, 42, 43]),
    ("vet21", [13, 14, 24, 31, 32, 33, 41]),
    ("vet22", [13, 14, 24, 33, 41, 42, 43]),
    ("vet23", [13, 14, 24, 32, 33, 41, 43]),
    ("vet24", [13, 14, 24, 32, 33, 41, 42]),
    ("vet25", [11, 12, 13, 24, 31, 33, 41]),
    ("vet26", [13, 14, 15, 24, 33, 41, 43]),
    ("vet27", [12, 13, 14, 15, 24, 33, 41]),
    ("vet31", [15, 16, 24, 26, 33, 41, 43]),
    ("vet32", [13, 15, 23, 24, 33, 41, 43]),
    ("vet33", [15, 23, 24, 25, 33, 41, 43]),
    ("vet34", [12, 13, 15, 23, 24, 33, 41]),
    ("vet41", [11, 12, 21, 24, 26, 31, 41]),
    ("vet42", [11, 12, 24, 26, 31, 33, 41]),
    ("vet43", [11, 12, 15, 24, 26, 33, 41]),
    ("vet44", [12, 13, 23, 24, 31, 33, 41]),
    ("vet45", [12, 23, 24, 25, 31, 33, 41]),
    ("vet46", [12, 21, 22, 23, 25, 31, 41]),
    ("vet47", [12, 15, 23, 25, 26, 33, 41]),
];

pub fn vet_basis(codes: &[u8; 7]) -> Vec<VarLabel> {
    codes.iter().map(|&c| VarLabel::code(c)).collect()
}

/// Case number `1..=4` of a named basis.
pub fn vet_case(name: &str) -> usize {
    (name.as_bytes()[3] - b'0') as usize
}

/// Variable whose unit value selects the main monomial of `p_i`:
/// `λ13 <-> y2 y1^(d1-1)`, `λ24 <-> y1^d2`, `λ33 <-> y^d1`, `λ41 <-> 1`.
pub fn case_target(i: usize) -> VarLabel {
    [VarLabel::code(13), VarLabel::code(24), VarLabel::code(33), VarLabel::code(41)][i - 1]
}

/// Row-content choice for one lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrcAssignment {
    pub point: Point,
    pub monomial: YMonomial,
    /// Chosen `(i, j0)` with `λ_{i j0} = 1`.
    pub var: VarLabel,
    /// Certified basis from the case lists, if one is optimal.
    pub basis: Option<&'static str>,
    /// Every case-list basis certified feasible and optimal at this point.
    pub optimal_bases: Vec<&'static str>,
    pub lambda: Vec<Q>,
    pub objective: Q,
}

impl GrcAssignment {
    /// Block index `0..4` of the partition.
    pub fn block(&self) -> usize {
        (self.var.i - 1) as usize
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "point": self.point,
            "monomial": self.monomial.to_string(),
            "grc": [self.var.i, self.var.j],
            "basis": self.basis,
            "optimal_bases": self.optimal_bases,
            "lambda": self.lambda.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "objective": self.objective.to_string(),
        })
    }
}

/// Chooses the row content of one LP.
///
/// The first case-list basis (printed order) that is feasible and optimal
/// decides: its case `i` and target variable give the choice. Without one,
/// the simplex optimum is used and the smallest `i` with a unit `λ_ij`
/// wins, preferring the case target when it is a unit.
pub fn grc_assign(inst: &LpInstance) -> Result<GrcAssignment> {
    let sol = simplex_solve(inst)?;
    let mut optimal_bases = Vec::new();
    let mut chosen: Option<(&'static str, VarLabel, Vec<Q>)> = None;
    for (name, codes) in VET_LISTS.iter() {
        let Ok(check) = verify_basis(inst, &vet_basis(codes)) else {
            continue;
        };
        if check.feasible && check.optimal {
            if check.objective != sol.objective {
                return Err(Error::InvalidPartition(format!(
                    "{name} certified optimal with objective {} but simplex found {}",
                    check.objective, sol.objective
                )));
            }
            optimal_bases.push(*name);
            let target = case_target(vet_case(name));
            if chosen.is_none() && check.x[target.index()].is_one() {
                chosen = Some((*name, target, check.x));
            }
        }
    }
    let (basis, var, lambda) = match chosen {
        Some((n, v, x)) => (Some(n), v, x),
        None => {
            let units: Vec<VarLabel> = inst.labels.iter().copied().filter(|v| sol.x[v.index()].is_one()).collect();
            let pick = units
                .iter()
                .find(|v| **v == case_target(v.i as usize))
                .or_else(|| units.first())
                .copied()
                .ok_or(Error::NoVertexOptimum(inst.point))?;
            (None, pick, sol.x.clone())
        }
    };
    Ok(GrcAssignment {
        point: inst.point,
        monomial: column_of(&inst.point),
        var,
        basis,
        optimal_bases,
        lambda,
        objective: sol.objective,
    })
}

#[derive(Clone, Debug)]
pub struct GrcResult {
    pub partition: Partition,
    pub assignments: Vec<GrcAssignment>,
}

/// Partition of `E` by row content over all lattice points of `Q + δ`.
pub fn grc_partition(spec: &SystemSpec, lift: &Liftings, delta: &Perturbation) -> Result<GrcResult> {
    let report = validate_liftings(lift);
    if !report.is_valid() {
        return Err(Error::InvalidSpec(format!("liftings violate {}", report.violated.join(", "))));
    }
    let points: Vec<Point> = lattice_points(spec, delta)?.into_iter().collect();
    let assignments: Vec<GrcAssignment> = points
        .par_iter()
        .map(|p| grc_assign(&build_lp(*p, spec, lift, delta)))
        .collect::<Result<_>>()?;
    let mut sets: [BTreeSet<YMonomial>; 4] = Default::default();
    for a in &assignments {
        sets[a.block()].insert(a.monomial);
    }
    Ok(GrcResult { partition: Partition::new(sets, Provenance::LpDriven), assignments })
}

/// Moves `monomial` from block `from` to block `to` (both 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub monomial: YMonomial,
    pub from: usize,
    pub to: usize,
}

/// The three move groups that take the `(2,2)` row-content partition to
/// the divisibility partition.
pub fn paper_moves() -> Vec<Move> {
    let mv = |m: [u32; 3], from, to| Move { monomial: YMonomial::from(m), from, to };
    vec![
        mv([3, 1, 1], 3, 1),
        mv([2, 1, 1], 3, 1),
        mv([2, 0, 1], 4, 3),
        mv([2, 1, 0], 4, 3),
        mv([3, 0, 0], 4, 3),
        mv([2, 0, 0], 4, 3),
        mv([1, 1, 1], 4, 1),
        mv([0, 1, 1], 4, 1),
    ]
}

/// Applies moves in order. Each target block's main monomial must divide
/// the moved monomial and the shifted row must stay inside `E`.
pub fn apply_moves(part: &Partition, moves: &[Move], spec: &SystemSpec) -> Result<Partition> {
    let e = monomial_sets::column_set(spec);
    let mm = MainMonomials::for_spec(spec);
    let polys = diffsys::row_polynomials(spec);
    let mut sets = part.sets.clone();
    for mv in moves {
        if !(1..=4).contains(&mv.from) || !(1..=4).contains(&mv.to) {
            return Err(Error::IllegalMove { monomial: mv.monomial, reason: "blocks are numbered 1 to 4".into() });
        }
        let (from, to) = (mv.from - 1, mv.to - 1);
        if !sets[from].contains(&mv.monomial) {
            return Err(Error::IllegalMove { monomial: mv.monomial, reason: format!("not in S{}", mv.from) });
        }
        if let Some(esc) = monomial_sets::closure_escape(&mv.monomial, &mm.get(to), &polys[to], &e)? {
            return Err(Error::IllegalMove { monomial: mv.monomial, reason: format!("row escapes E at {esc}") });
        }
        sets[from].remove(&mv.monomial);
        sets[to].insert(mv.monomial);
    }
    Ok(Partition::new(sets, part.provenance))
}

/// Matrix with rows `(q / mm_i) * p_i` for `q ∈ S_i`.
pub fn build_sparse_matrix(part: &Partition, spec: &SystemSpec) -> Result<PolyMatrix> {
    part.validate(&monomial_sets::column_set(spec))?;
    macaulay::build_from_partition(spec, part, &MainMonomials::for_spec(spec))
}

/// Lattice points in the first printed range of case 1:
/// `ε3 = 2`, `ε2 = d1+d2-1 ..= 2d1+d2-2`, `ε1+ε2 = 2d1+d2-1 ..= 2d1+2d2-2`.
pub fn case1_first_range(spec: &SystemSpec, points: &BTreeSet<Point>) -> Vec<Point> {
    let (d1, d2) = (spec.d1 as i64, spec.d2 as i64);
    points
        .iter()
        .filter(|p| {
            p[2] == 2
                && (d1 + d2 - 1..=2 * d1 + d2 - 2).contains(&p[1])
                && (2 * d1 + d2 - 1..=2 * d1 + 2 * d2 - 2).contains(&(p[0] + p[1]))
        })
        .copied()
        .collect()
}

/// Lattice points in the first printed range of case 3:
/// `ε3 = 1`, `ε2 = 1 ..= d2`, `ε1+ε2 = 2d1+d2 ..= 2d1+2d2-1`.
pub fn case3_first_range(spec: &SystemSpec, points: &BTreeSet<Point>) -> Vec<Point> {
    let (d1, d2) = (spec.d1 as i64, spec.d2 as i64);
    points
        .iter()
        .filter(|p| p[2] == 1 && (1..=d2).contains(&p[1]) && (2 * d1 + d2..=2 * d1 + 2 * d2 - 1).contains(&(p[0] + p[1])))
        .copied()
        .collect()
}

/// Per-block comparison of two partitions: `(only in a, only in b)`.
pub fn partition_diff(a: &Partition, b: &Partition) -> [(Vec<YMonomial>, Vec<YMonomial>); 4] {
    [0, 1, 2, 3].map(|i| {
        (
            a.sets[i].difference(&b.sets[i]).copied().collect(),
            b.sets[i].difference(&a.sets[i]).copied().collect(),
        )
    })
}

/// Assignment summary keyed by column monomial.
pub fn assignments_by_monomial(r: &GrcResult) -> BTreeMap<YMonomial, &GrcAssignment> {
    r.assignments.iter().map(|a| (a.monomial, a)).collect()
}
