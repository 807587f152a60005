//! Column monomial set, main monomials and the four-way row partition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diffsys::{DiffPoly, SystemSpec, YMonomial};
use crate::error::{Error, Result};

/// Labeled set of power products in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSet {
    pub label: String,
    pub elems: BTreeSet<YMonomial>,
}

impl MonomialSet {
    pub fn new(label: impl Into<String>, elems: impl IntoIterator<Item = YMonomial>) -> Self {
        Self { label: label.into(), elems: elems.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, m: &YMonomial) -> bool {
        self.elems.contains(m)
    }

    /// Ascending canonical order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &YMonomial> {
        self.elems.iter()
    }

    /// Descending canonical order (the column order of the matrices).
    pub fn descending(&self) -> Vec<YMonomial> {
        self.elems.iter().rev().copied().collect()
    }

    /// `m * self`.
    pub fn shifted(&self, m: &YMonomial, label: impl Into<String>) -> MonomialSet {
        MonomialSet::new(label, self.elems.iter().map(|e| e.mul(m)))
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a YMonomial;
    type IntoIter = std::collections::btree_set::Iter<'a, YMonomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl IntoIterator for MonomialSet {
    type Item = YMonomial;
    type IntoIter = std::collections::btree_set::IntoIter<YMonomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.into_iter()
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.descending().iter().map(|m| m.to_string()).collect();
        write!(f, "{} ({}): {{{}}}", self.label, self.len(), items.join(", "))
    }
}

/// `B_i^j`: monomials of total degree `<= j` in the first `i` elements of
/// `{1, y, y1, y2}`.
///
/// # Panics
/// If `i` is not in `2..=4`.
pub fn bset(i: u32, j: u32) -> MonomialSet {
    assert!((2..=4).contains(&i), "bset index must be 2, 3 or 4");
    let mut out = BTreeSet::new();
    let max1 = if i >= 3 { j } else { 0 };
    let max2 = if i >= 4 { j } else { 0 };
    for e2 in 0..=max2 {
        for e1 in 0..=max1.min(j - e2) {
            for e0 in 0..=(j - e2 - e1) {
                out.insert(YMonomial::new(e0, e1, e2));
            }
        }
    }
    MonomialSet::new(format!("B{i}^{j}"), out)
}

/// The column set `E = B_3^D ∪ y2 B_3^(D-1)`.
pub fn column_set(spec: &SystemSpec) -> MonomialSet {
    let d = spec.big_d();
    let mut elems = bset(3, d).elems;
    elems.extend(bset(3, d - 1).iter().map(|m| m.mul(&YMonomial::new(0, 0, 1))));
    MonomialSet::new("E", elems)
}

/// Main monomials of `p1 = δf1, p2 = δf2, p3 = f1, p4 = f2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainMonomials {
    pub mm: [YMonomial; 4],
}

impl MainMonomials {
    /// `y2 y1^(d1-1)`, `y1^d2`, `y^d1`, `1`.
    pub fn for_spec(spec: &SystemSpec) -> Self {
        Self {
            mm: [
                YMonomial::new(0, spec.d1 - 1, 1),
                YMonomial::new(0, spec.d2, 0),
                YMonomial::new(spec.d1, 0, 0),
                YMonomial::ONE,
            ],
        }
    }

    pub fn get(&self, i: usize) -> YMonomial {
        self.mm[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    DivisibilityCascade,
    ClosedForm,
    LpDriven,
    External,
}

/// Disjoint split `E = S1 ∪ S2 ∪ S3 ∪ S4`; `S_i` holds the monomials whose
/// row is built from `p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub sets: [BTreeSet<YMonomial>; 4],
    pub provenance: Provenance,
}

impl Partition {
    pub fn new(sets: [BTreeSet<YMonomial>; 4], provenance: Provenance) -> Self {
        Self { sets, provenance }
    }

    pub fn sizes(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.sets[i].len())
    }

    /// Index of the block holding `m`.
    pub fn block_of(&self, m: &YMonomial) -> Option<usize> {
        (0..4).find(|&i| self.sets[i].contains(m))
    }

    /// Pairwise disjoint and exhausting `e`.
    pub fn validate(&self, e: &MonomialSet) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (i, s) in self.sets.iter().enumerate() {
            for m in s {
                if !seen.insert(*m) {
                    return Err(Error::InvalidPartition(format!("{m} appears twice (block {})", i + 1)));
                }
                if !e.contains(m) {
                    return Err(Error::InvalidPartition(format!("{m} is not in E")));
                }
            }
        }
        if seen.len() != e.len() {
            return Err(Error::InvalidPartition(format!("covers {} of {} monomials", seen.len(), e.len())));
        }
        Ok(())
    }

    /// Every `q ∈ S_i` is divisible by `mm_i`.
    pub fn check_divisibility(&self, mm: &MainMonomials) -> Result<()> {
        for (i, s) in self.sets.iter().enumerate() {
            if let Some(q) = s.iter().find(|q| !mm.get(i).divides(q)) {
                return Err(Error::InvalidPartition(format!("mm(p{}) = {} does not divide {q}", i + 1, mm.get(i))));
            }
        }
        Ok(())
    }
}

/// The cascade: `S1` divisible by `mm1`; `S2` not by `mm1` but by `mm2`;
/// `S3` by neither but by `mm3`; `S4` the rest.
pub fn partition_divisibility(e: &MonomialSet, mm: &MainMonomials) -> Partition {
    let mut sets: [BTreeSet<YMonomial>; 4] = Default::default();
    for q in e {
        let i = (0..3).find(|&i| mm.get(i).divides(q)).unwrap_or(3);
        sets[i].insert(*q);
    }
    Partition::new(sets, Provenance::DivisibilityCascade)
}

/// Multiplier sets `B_3^(D-d1)`, `B_3^(D-d2)`, `T1`, `T2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForms {
    pub b1: MonomialSet,
    pub b2: MonomialSet,
    pub t1: MonomialSet,
    pub t2: MonomialSet,
}

impl ClosedForms {
    /// `(n1, n2, n3, n4)`.
    pub fn sizes(&self) -> [usize; 4] {
        [self.b1.len(), self.b2.len(), self.t1.len(), self.t2.len()]
    }

    pub fn multipliers(&self) -> [&MonomialSet; 4] {
        [&self.b1, &self.b2, &self.t1, &self.t2]
    }

    /// `S_i = multipliers_i * mm_i`.
    pub fn partition(&self, mm: &MainMonomials) -> Partition {
        let sets = [0, 1, 2, 3].map(|i| self.multipliers()[i].iter().map(|m| m.mul(&mm.get(i))).collect());
        Partition::new(sets, Provenance::ClosedForm)
    }
}

fn union_y1_layers(out: &mut BTreeSet<YMonomial>, y2: u32, count: u32, degree_at: impl Fn(u32) -> u32) {
    for i in 0..count {
        for m in &bset(2, degree_at(i)) {
            out.insert(m.mul(&YMonomial::new(0, i, y2)));
        }
    }
}

/// Closed forms of the multiplier sets.
///
/// The `y2`-indexed unions run over `i = 0..=d1-2` and are empty when
/// `d1 = 1`.
pub fn closed_form_sets(spec: &SystemSpec) -> ClosedForms {
    let (d1, d2, d) = (spec.d1, spec.d2, spec.big_d());
    let mut t1 = BTreeSet::new();
    union_y1_layers(&mut t1, 0, d2, |i| d - d1 - i);
    union_y1_layers(&mut t1, 1, d1 - 1, |i| d - d1 - 1 - i);
    let mut t2 = BTreeSet::new();
    union_y1_layers(&mut t2, 0, d2, |_| d1 - 1);
    union_y1_layers(&mut t2, 1, d1 - 1, |_| d1 - 1);
    ClosedForms {
        b1: MonomialSet::new(format!("B3^{}", d - d1), bset(3, d - d1).elems),
        b2: MonomialSet::new(format!("B3^{}", d - d2), bset(3, d - d2).elems),
        t1: MonomialSet::new("T1", t1),
        t2: MonomialSet::new("T2", t2),
    }
}

/// First monomial of `(q / mm) * p` outside `e`, or `None` when the row
/// closes inside `e`. Errors if `mm` does not divide `q`.
pub fn closure_escape(q: &YMonomial, mm: &YMonomial, p: &DiffPoly, e: &MonomialSet) -> Result<Option<YMonomial>> {
    let mult = mm.quotient_of(q).ok_or_else(|| Error::IllegalMove {
        monomial: *q,
        reason: format!("main monomial {mm} does not divide it"),
    })?;
    Ok(p.support().iter().map(|m| m.mul(&mult)).find(|m| !e.contains(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffsys::row_polynomials;

    fn m(y: u32, y1: u32, y2: u32) -> YMonomial {
        YMonomial::new(y, y1, y2)
    }

    fn set(ms: &[YMonomial]) -> BTreeSet<YMonomial> {
        ms.iter().copied().collect()
    }

    fn shift(s: &MonomialSet, by: YMonomial) -> BTreeSet<YMonomial> {
        s.iter().map(|x| x.mul(&by)).collect()
    }

    #[test]
    fn bset_examples() {
        assert_eq!(bset(2, 2).elems, set(&[m(0, 0, 0), m(1, 0, 0), m(2, 0, 0)]));
        let b33 = bset(3, 3);
        assert_eq!(b33.len(), 10);
        assert!(b33.contains(&m(0, 2, 0)) && b33.contains(&m(1, 1, 0)));
        assert_eq!(bset(4, 0).elems, set(&[YMonomial::ONE]));
        for j in 0..6 {
            let j_ = j as usize;
            assert_eq!(bset(2, j).len(), j_ + 1);
            assert_eq!(bset(3, j).len(), (j_ + 1) * (j_ + 2) / 2);
            assert_eq!(bset(4, j).len(), (j_ + 1) * (j_ + 2) * (j_ + 3) / 6);
        }
    }

    #[test]
    fn column_set_examples() {
        let e = column_set(&SystemSpec::new(1, 1).unwrap());
        assert_eq!(e.elems, set(&[m(0, 0, 0), m(1, 0, 0), m(0, 1, 0), m(0, 0, 1)]));
        assert_eq!(column_set(&SystemSpec::new(2, 2).unwrap()).len(), 36);
        assert_eq!(column_set(&SystemSpec::new(2, 3).unwrap()).len(), 64);
        assert!(column_set(&SystemSpec::new(3, 4).unwrap()).iter().all(|x| x.y2 <= 1));
    }

    #[test]
    fn divisibility_partition_linear_case() {
        let spec = SystemSpec::new(1, 1).unwrap();
        let p = partition_divisibility(&column_set(&spec), &MainMonomials::for_spec(&spec));
        assert_eq!(p.sets, [set(&[m(0, 0, 1)]), set(&[m(0, 1, 0)]), set(&[m(1, 0, 0)]), set(&[m(0, 0, 0)])]);
    }

    #[test]
    fn divisibility_partition_degree_two() {
        let spec = SystemSpec::new(2, 2).unwrap();
        let p = partition_divisibility(&column_set(&spec), &MainMonomials::for_spec(&spec));
        let b33 = bset(3, 3);
        assert_eq!(p.sets[0], shift(&b33, m(0, 1, 1)));
        assert_eq!(p.sets[1], shift(&b33, m(0, 2, 0)));
        let mut s3 = bset(2, 3).elems;
        s3.extend(shift(&bset(2, 2), m(0, 1, 0)));
        s3.extend(shift(&bset(2, 2), m(0, 0, 1)));
        let s3: BTreeSet<_> = s3.iter().map(|x| x.mul(&m(2, 0, 0))).collect();
        assert_eq!(p.sets[2], s3);
        let mut s4 = bset(2, 1).elems;
        s4.extend(shift(&bset(2, 1), m(0, 1, 0)));
        s4.extend(shift(&bset(2, 1), m(0, 0, 1)));
        assert_eq!(p.sets[3], s4);
        assert_eq!(p.sizes(), [10, 10, 10, 6]);
    }

    #[test]
    fn closed_form_sizes() {
        let s22 = SystemSpec::new(2, 2).unwrap();
        assert_eq!(closed_form_sets(&s22).sizes(), [10, 10, 10, 6]);
        assert_eq!(closed_form_sets(&SystemSpec::new(1, 1).unwrap()).sizes(), [1, 1, 1, 1]);
    }

    #[test]
    fn closed_forms_agree_with_cascade() {
        for d1 in 1..=6 {
            for d2 in d1..=6 {
                let spec = SystemSpec::new(d1, d2).unwrap();
                let e = column_set(&spec);
                let mm = MainMonomials::for_spec(&spec);
                let cascade = partition_divisibility(&e, &mm);
                let closed = closed_form_sets(&spec);
                assert_eq!(cascade.sets, closed.partition(&mm).sets, "spec {spec}");
                assert_eq!(closed.sizes().iter().sum::<usize>(), spec.big_n());
                assert_eq!(e.len(), spec.big_n());
                assert_eq!(spec.big_n(), spec.degree_bound());
                cascade.validate(&e).unwrap();
            }
        }
    }

    #[test]
    fn rows_close_inside_column_set() {
        for d1 in 1..=4 {
            for d2 in d1..=4 {
                let spec = SystemSpec::new(d1, d2).unwrap();
                let e = column_set(&spec);
                let mm = MainMonomials::for_spec(&spec);
                let polys = row_polynomials(&spec);
                let part = partition_divisibility(&e, &mm);
                for i in 0..4 {
                    for q in &part.sets[i] {
                        assert_eq!(closure_escape(q, &mm.get(i), &polys[i], &e).unwrap(), None);
                    }
                }
            }
        }
    }

    #[test]
    fn validate_rejects_bad_partitions() {
        let spec = SystemSpec::new(1, 1).unwrap();
        let e = column_set(&spec);
        let mut p = partition_divisibility(&e, &MainMonomials::for_spec(&spec));
        p.sets[0].insert(m(0, 1, 0));
        assert!(p.validate(&e).is_err());
        p.sets[0].clear();
        assert!(p.validate(&e).is_err());
    }
}
