//! Assembly of the square matrix `D_{d1,d2}` and the rectangular Carrà Ferro
//! matrix `M(δ, n, m)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diffsys::{self, DiffPoly, SystemSpec, YMonomial};
use crate::error::{Error, Result};
use crate::monomial_sets::{self, MainMonomials, MonomialSet, Partition};
use crate::symcore::{CoeffSymbol, Specialization, SymPoly, System};

/// `δ^deriv f_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowPoly {
    pub system: System,
    pub deriv: u32,
}

impl RowPoly {
    pub const DF1: RowPoly = RowPoly { system: System::F1, deriv: 1 };
    pub const DF2: RowPoly = RowPoly { system: System::F2, deriv: 1 };
    pub const F1: RowPoly = RowPoly { system: System::F1, deriv: 0 };
    pub const F2: RowPoly = RowPoly { system: System::F2, deriv: 0 };

    /// Row families of the square matrix in block order `p1..p4`.
    pub const BLOCKS: [RowPoly; 4] = [Self::DF1, Self::DF2, Self::F1, Self::F2];
}

impl fmt::Display for RowPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = match self.system {
            System::F1 => 1,
            System::F2 => 2,
        };
        match self.deriv {
            0 => write!(f, "f{idx}"),
            1 => write!(f, "df{idx}"),
            n => write!(f, "d{n}f{idx}"),
        }
    }
}

impl FromStr for RowPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad row polynomial {s:?}"));
        let (deriv, rest) = if let Some(r) = s.strip_prefix("df") {
            (1, r)
        } else if let Some(r) = s.strip_prefix('f') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('d') {
            let pos = r.find('f').ok_or_else(bad)?;
            (r[..pos].parse().map_err(|_| bad())?, &r[pos + 1..])
        } else {
            return Err(bad());
        };
        let system = match rest {
            "1" => System::F1,
            "2" => System::F2,
            _ => return Err(bad()),
        };
        Ok(RowPoly { system, deriv })
    }
}

/// A row is `multiplier * poly`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowLabel {
    pub poly: RowPoly,
    pub multiplier: YMonomial,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.multiplier, self.poly)
    }
}

/// Labeled sparse matrix with symbolic entries. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<RowLabel>,
    cols: Vec<YMonomial>,
    entries: Vec<BTreeMap<usize, SymPoly>>,
}

impl PolyMatrix {
    /// Builds the matrix of the given row polynomials over `cols`.
    ///
    /// Fails with `ClosureViolation` if a row has a monomial outside `cols`.
    pub fn from_rows(rows: Vec<(RowLabel, DiffPoly)>, cols: Vec<YMonomial>) -> Result<Self> {
        let index: HashMap<YMonomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut labels = Vec::with_capacity(rows.len());
        let mut entries = Vec::with_capacity(rows.len());
        for (label, poly) in rows {
            let mut row = BTreeMap::new();
            for (m, c) in poly.terms() {
                let j = *index
                    .get(m)
                    .ok_or(Error::ClosureViolation { row: label.to_string(), monomial: *m })?;
                row.insert(j, c.clone());
            }
            labels.push(label);
            entries.push(row);
        }
        Ok(Self { rows: labels, cols, entries })
    }

    pub fn from_entries(rows: Vec<RowLabel>, cols: Vec<YMonomial>, entries: Vec<BTreeMap<usize, SymPoly>>) -> Self {
        assert_eq!(rows.len(), entries.len());
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self { rows, cols, entries }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn rows(&self) -> &[RowLabel] {
        &self.rows
    }

    pub fn cols(&self) -> &[YMonomial] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&SymPoly> {
        self.entries[r].get(&c)
    }

    /// Nonzero entries of row `r` as `(column, entry)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &SymPoly)> {
        self.entries[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn col_index(&self, m: &YMonomial) -> Option<usize> {
        self.cols.iter().position(|c| c == m)
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    /// Reassembles row `r` as a polynomial in `(y, y1, y2)`.
    pub fn row_poly(&self, r: usize) -> DiffPoly {
        let mut p = DiffPoly::zero();
        for (c, v) in &self.entries[r] {
            p.add_term(self.cols[*c], v.clone());
        }
        p
    }

    pub fn symbols(&self) -> BTreeSet<CoeffSymbol> {
        self.entries.iter().flat_map(|r| r.values().flat_map(|v| v.symbols())).collect()
    }

    /// Applies `f` to every nonzero entry.
    pub fn map_entries(&self, f: impl Fn(&SymPoly) -> SymPoly) -> PolyMatrix {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|(c, v)| (*c, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        PolyMatrix { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    /// Submatrix keeping the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let remap: HashMap<usize, usize> = cols.iter().enumerate().map(|(new, old)| (*old, new)).collect();
        let entries = rows
            .iter()
            .map(|&r| {
                self.entries[r]
                    .iter()
                    .filter_map(|(c, v)| remap.get(c).map(|nc| (*nc, v.clone())))
                    .collect()
            })
            .collect();
        PolyMatrix {
            rows: rows.iter().map(|&r| self.rows[r]).collect(),
            cols: cols.iter().map(|&c| self.cols[c]).collect(),
            entries,
        }
    }

    /// Dense numeric matrix under `s`.
    pub fn specialize(&self, s: &Specialization) -> Result<Vec<Vec<BigRational>>> {
        let mut out = vec![vec![BigRational::zero(); self.ncols()]; self.nrows()];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.eval(s)?;
            }
        }
        Ok(out)
    }

    /// Columns with no nonzero entry, in column order.
    pub fn zero_columns(&self) -> Vec<YMonomial> {
        let mut used = vec![false; self.ncols()];
        for row in &self.entries {
            for c in row.keys() {
                used[*c] = true;
            }
        }
        self.cols.iter().zip(used).filter(|(_, u)| !u).map(|(m, _)| *m).collect()
    }

    /// Labeled rows as `(label, polynomial)`, for order-free comparison.
    pub fn labeled_rows(&self) -> BTreeMap<RowLabel, DiffPoly> {
        (0..self.nrows()).map(|r| (self.rows[r], self.row_poly(r))).collect()
    }

    pub fn to_json(&self, spec: serde_json::Value) -> serde_json::Value {
        let doc = MatrixJson {
            spec,
            rows: self
                .rows
                .iter()
                .map(|l| RowJson { poly: l.poly.to_string(), multiplier: l.multiplier.exponents() })
                .collect(),
            cols: self.cols.iter().map(|m| m.exponents()).collect(),
            entries: self
                .entries
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.to_string())))
                .collect(),
        };
        serde_json::to_value(doc).expect("matrix serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<(PolyMatrix, serde_json::Value)> {
        let doc: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = doc
            .rows
            .iter()
            .map(|r| Ok(RowLabel { poly: r.poly.parse()?, multiplier: r.multiplier.into() }))
            .collect::<Result<Vec<_>>>()?;
        let cols: Vec<YMonomial> = doc.cols.iter().map(|&e| e.into()).collect();
        let mut entries = vec![BTreeMap::new(); rows.len()];
        for (r, c, s) in doc.entries {
            if r >= rows.len() || c >= cols.len() {
                return Err(Error::Parse(format!("entry ({r}, {c}) out of range")));
            }
            entries[r].insert(c, s.parse::<SymPoly>()?);
        }
        Ok((PolyMatrix::from_entries(rows, cols, entries), doc.spec))
    }

    /// Row-major CSV of the specialized matrix with a header of column
    /// monomials.
    pub fn to_csv(&self, s: &Specialization) -> Result<String> {
        let dense = self.specialize(s)?;
        let mut out = String::new();
        out.push_str(&self.cols.iter().map(YMonomial::csv_label).collect::<Vec<_>>().join(","));
        out.push('\n');
        for row in dense {
            out.push_str(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    poly: String,
    multiplier: [u32; 3],
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    spec: serde_json::Value,
    rows: Vec<RowJson>,
    cols: Vec<[u32; 3]>,
    entries: Vec<(usize, usize, String)>,
}

/// Matrix whose rows are `(q / mm_i) * p_i` for `q ∈ S_i`, blocks in the
/// order `δf1, δf2, f1, f2`, multipliers descending within a block, and
/// columns `E` in descending order.
pub fn build_from_partition(spec: &SystemSpec, part: &Partition, mm: &MainMonomials) -> Result<PolyMatrix> {
    let e = monomial_sets::column_set(spec);
    let polys = diffsys::row_polynomials(spec);
    let mut rows = Vec::with_capacity(e.len());
    for (i, block) in part.sets.iter().enumerate() {
        for q in block.iter().rev() {
            let mult = mm.get(i).quotient_of(q).ok_or_else(|| {
                Error::InvalidPartition(format!("mm(p{}) = {} does not divide {q}", i + 1, mm.get(i)))
            })?;
            rows.push((RowLabel { poly: RowPoly::BLOCKS[i], multiplier: mult }, polys[i].shift(&mult)));
        }
    }
    PolyMatrix::from_rows(rows, e.descending())
}

/// The square matrix `D_{d1,d2}`: rows `B_3^(D-d1)·δf1`, `B_3^(D-d2)·δf2`,
/// `T1·f1`, `T2·f2`.
pub fn build_square_matrix(spec: &SystemSpec) -> Result<PolyMatrix> {
    let closed = monomial_sets::closed_form_sets(spec);
    let polys = diffsys::row_polynomials(spec);
    let mut rows = Vec::with_capacity(spec.big_n());
    for (i, mults) in closed.multipliers().iter().enumerate() {
        for mult in mults.iter().rev() {
            rows.push((RowLabel { poly: RowPoly::BLOCKS[i], multiplier: *mult }, polys[i].shift(mult)));
        }
    }
    PolyMatrix::from_rows(rows, monomial_sets::column_set(spec).descending())
}

/// `M(δ, n, m)` together with its size parameters.
#[derive(Clone, Debug)]
pub struct CarraFerro {
    pub matrix: PolyMatrix,
    pub big_d: u32,
    pub l: usize,
    pub l1: usize,
    pub l2: usize,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Power products of degree `<= deg` in the first `nvars` of `(y, y1, y2)`.
fn power_products(nvars: u32, deg: u32) -> MonomialSet {
    monomial_sets::bset(nvars + 1, deg)
}

/// Carrà Ferro's matrix for `p1` of order `m`, degree `d1` and `p2` of
/// order `n`, degree `d2`. Rows are `Y^a δ^j p1` (`j = n..0`) then
/// `Y^a δ^j p2` (`j = m..0`), columns all power products of degree `<= D`.
///
/// Only `m, n <= 1` fit the `(y, y1, y2)` alphabet.
pub fn build_carra_ferro(d1: u32, d2: u32, n: u32, m: u32) -> Result<CarraFerro> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidSpec("degrees must be positive".into()));
    }
    if m > 1 || n > 1 {
        return Err(Error::OrderOverflow(format!("orders (m, n) = ({m}, {n}) exceed the y, y1, y2 alphabet")));
    }
    let big_d = 1 + (n + 1) * (d1 - 1) + (m + 1) * (d2 - 1);
    let nvars = m + n + 1;
    let generic = |system, order, d| {
        if order == 0 {
            diffsys::generic_poly_order0(system, d)
        } else {
            diffsys::generic_poly(system, d)
        }
    };
    let p1 = generic(System::F1, m, d1);
    let p2 = generic(System::F2, n, d2);
    let cols = power_products(nvars, big_d);
    let mut rows = Vec::new();
    for (system, p, top, d) in [(System::F1, &p1, n, d1), (System::F2, &p2, m, d2)] {
        let mults = power_products(nvars, big_d - d);
        for j in (0..=top).rev() {
            let dp = diffsys::delta_n(p, j)?;
            for mult in mults.iter().rev() {
                rows.push((RowLabel { poly: RowPoly { system, deriv: j }, multiplier: *mult }, dp.shift(mult)));
            }
        }
    }
    let matrix = PolyMatrix::from_rows(rows, cols.descending())?;
    let k = (nvars) as usize;
    let bd = big_d as usize;
    Ok(CarraFerro {
        matrix,
        big_d,
        l: binomial(k + bd, k),
        l1: binomial(k + bd - d1 as usize, k),
        l2: binomial(k + bd - d2 as usize, k),
    })
}

/// Columns with no nonzero entry.
pub fn zero_columns(m: &PolyMatrix) -> Vec<YMonomial> {
    m.zero_columns()
}
