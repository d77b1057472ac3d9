//! Finite magmas as multiplication tables, and loops on top of them.
//!
//! Elements are dense indices `0..n`. A [`MagmaTable`] is any n-by-n
//! table over those indices; a [`FiniteLoop`] is a table verified to be a
//! Latin square with a two-sided neutral element. All constructed loops
//! in this crate place the neutral at index 0.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Which of the three Moufang identities to check.
///
/// The three identities are equivalent on quasigroups; checking them
/// separately lets tests confirm that agreement on real tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoufangVariant {
    /// xy * zx = x(yz * x)
    First,
    /// x(y * xz) = (xy * x)z
    Second,
    /// x(y * zy) = (xy * z)y
    Third,
}

impl MoufangVariant {
    pub const ALL: [MoufangVariant; 3] = [
        MoufangVariant::First,
        MoufangVariant::Second,
        MoufangVariant::Third,
    ];

    /// Numeric label 1..=3, as used on the command line.
    pub fn index(self) -> u8 {
        match self {
            MoufangVariant::First => 1,
            MoufangVariant::Second => 2,
            MoufangVariant::Third => 3,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("table is {rows} rows but order is {order}")]
    BadShape { order: usize, rows: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("duplicate element name {name:?}")]
    DuplicateName { name: String },
    #[error("expected {expected} names, got {got}")]
    BadNameCount { expected: usize, got: usize },
    #[error("row {index} is not a permutation")]
    RowNotPermutation { index: usize },
    #[error("column {index} is not a permutation")]
    ColumnNotPermutation { index: usize },
    #[error("element {claimed} is not a two-sided neutral")]
    NotNeutral { claimed: usize },
    #[error("element {element} has no two-sided inverse")]
    NoTwoSidedInverse { element: usize },
    #[error("subset is not closed under the product")]
    NotClosed,
}

/// A finite magma: order, multiplication table, and display names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagmaTable {
    order: usize,
    table: Vec<Vec<usize>>,
    names: Vec<String>,
}

impl MagmaTable {
    pub fn new(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, LoopError> {
        let order = table.len();
        if names.len() != order {
            return Err(LoopError::BadNameCount {
                expected: order,
                got: names.len(),
            });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(LoopError::BadShape {
                    order,
                    rows: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(LoopError::EntryOutOfRange { row, col, value });
                }
            }
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(LoopError::DuplicateName { name: name.clone() });
            }
        }
        Ok(MagmaTable {
            order,
            table,
            names,
        })
    }

    /// Builds a table with names "0", "1", ... (used by exhaustive
    /// Latin-square scans where names carry no meaning).
    pub fn with_default_names(table: Vec<Vec<usize>>) -> Result<Self, LoopError> {
        let names = (0..table.len()).map(|i| i.to_string()).collect();
        MagmaTable::new(table, names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    /// True iff every row and every column is a permutation of `0..n`.
    pub fn is_quasigroup(&self) -> bool {
        self.latin_violation().is_none()
    }

    /// First row or column that fails the Latin-square property.
    pub fn latin_violation(&self) -> Option<LoopError> {
        let n = self.order;
        let mut seen = vec![false; n];
        for (i, row) in self.table.iter().enumerate() {
            seen.fill(false);
            for &v in row {
                if seen[v] {
                    return Some(LoopError::RowNotPermutation { index: i });
                }
                seen[v] = true;
            }
        }
        for col in 0..n {
            seen.fill(false);
            for row in 0..n {
                let v = self.table[row][col];
                if seen[v] {
                    return Some(LoopError::ColumnNotPermutation { index: col });
                }
                seen[v] = true;
            }
        }
        None
    }

    /// The unique two-sided neutral element, if one exists.
    pub fn find_neutral(&self) -> Option<usize> {
        (0..self.order).find(|&e| {
            (0..self.order).all(|a| self.mul(e, a) == a && self.mul(a, e) == a)
        })
    }

    /// First triple violating the chosen Moufang identity, in
    /// lexicographic index order; `None` when the identity holds.
    pub fn moufang_counterexample(&self, variant: MoufangVariant) -> Option<[usize; 3]> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let holds = match variant {
                        MoufangVariant::First => {
                            self.mul(self.mul(x, y), self.mul(z, x))
                                == self.mul(x, self.mul(self.mul(y, z), x))
                        }
                        MoufangVariant::Second => {
                            self.mul(x, self.mul(y, self.mul(x, z)))
                                == self.mul(self.mul(self.mul(x, y), x), z)
                        }
                        MoufangVariant::Third => {
                            self.mul(x, self.mul(y, self.mul(z, y)))
                                == self.mul(self.mul(self.mul(x, y), z), y)
                        }
                    };
                    if !holds {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// First triple with (ab)c != a(bc), in lexicographic index order.
    pub fn associativity_counterexample(&self) -> Option<[usize; 3]> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

/// A finite loop: a quasigroup table with a verified two-sided neutral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLoop {
    magma: MagmaTable,
    neutral: usize,
}

impl FiniteLoop {
    /// Verifies the Latin-square property and the claimed neutral.
    pub fn new(magma: MagmaTable, neutral: usize) -> Result<Self, LoopError> {
        if let Some(err) = magma.latin_violation() {
            return Err(err);
        }
        let n = magma.order();
        if neutral >= n
            || (0..n).any(|a| magma.mul(neutral, a) != a || magma.mul(a, neutral) != a)
        {
            return Err(LoopError::NotNeutral { claimed: neutral });
        }
        Ok(FiniteLoop { magma, neutral })
    }

    /// Like [`FiniteLoop::new`] but locates the neutral by scanning.
    pub fn from_magma(magma: MagmaTable) -> Result<Self, LoopError> {
        let neutral = magma.find_neutral().ok_or(LoopError::NotNeutral { claimed: 0 })?;
        FiniteLoop::new(magma, neutral)
    }

    pub fn magma(&self) -> &MagmaTable {
        &self.magma
    }

    pub fn order(&self) -> usize {
        self.magma.order()
    }

    pub fn neutral(&self) -> usize {
        self.neutral
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.magma.mul(a, b)
    }

    pub fn name(&self, a: usize) -> &str {
        self.magma.name(a)
    }

    pub fn names(&self) -> &[String] {
        self.magma.names()
    }

    pub fn moufang_counterexample(&self, variant: MoufangVariant) -> Option<[usize; 3]> {
        self.magma.moufang_counterexample(variant)
    }

    pub fn is_moufang(&self, variant: MoufangVariant) -> bool {
        self.magma.moufang_counterexample(variant).is_none()
    }

    pub fn associativity_counterexample(&self) -> Option<[usize; 3]> {
        self.magma.associativity_counterexample()
    }

    pub fn is_associative(&self) -> bool {
        self.magma.associativity_counterexample().is_none()
    }

    /// The two-sided inverse of `a`. Fails when the left and right
    /// inverses differ, which can happen in non-Moufang loops.
    pub fn inverse(&self, a: usize) -> Result<usize, LoopError> {
        let left = (0..self.order())
            .find(|&b| self.mul(b, a) == self.neutral)
            .expect("Latin square has a left inverse");
        if self.mul(a, left) == self.neutral {
            Ok(left)
        } else {
            Err(LoopError::NoTwoSidedInverse { element: a })
        }
    }

    /// Smallest subset containing the seeds and the neutral, closed
    /// under the table product.
    pub fn generate_subloop(&self, seeds: &[usize]) -> BTreeSet<usize> {
        let mut members = vec![false; self.order()];
        members[self.neutral] = true;
        let mut list = vec![self.neutral];
        for &s in seeds {
            if !members[s] {
                members[s] = true;
                list.push(s);
            }
        }
        let mut frontier = 0;
        while frontier < list.len() {
            let a = list[frontier];
            frontier += 1;
            // Products with everything found so far, in both orders.
            for i in 0..list.len() {
                let b = list[i];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !members[p] {
                        members[p] = true;
                        list.push(p);
                    }
                }
            }
        }
        list.into_iter().collect()
    }

    /// Restriction of the table to a product-closed subset, reindexed in
    /// ascending element order. Names are inherited.
    pub fn subloop(&self, elements: &BTreeSet<usize>) -> Result<FiniteLoop, LoopError> {
        let order: Vec<usize> = elements.iter().copied().collect();
        let position = |e: usize| order.iter().position(|&x| x == e);
        let mut table = vec![vec![0; order.len()]; order.len()];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                table[i][j] = position(self.mul(a, b)).ok_or(LoopError::NotClosed)?;
            }
        }
        let names = order.iter().map(|&e| self.name(e).to_string()).collect();
        let neutral = position(self.neutral).ok_or(LoopError::NotClosed)?;
        FiniteLoop::new(MagmaTable::new(table, names)?, neutral)
    }

    /// True iff every two-generated subloop is associative.
    pub fn is_diassociative(&self) -> bool {
        let n = self.order();
        for a in 0..n {
            for b in a..n {
                let sub = self.generate_subloop(&[a, b]);
                match self.subloop(&sub) {
                    Ok(s) => {
                        if !s.is_associative() {
                            return false;
                        }
                    }
                    Err(_) => return false,
                }
            }
        }
        true
    }

    /// Order of `a` as the smallest k >= 1 with the left-associated
    /// power a^k equal to the neutral. For diassociative loops this is
    /// the usual element order; otherwise it is a pruning heuristic.
    pub fn element_order(&self, a: usize) -> usize {
        let mut power = a;
        let mut k = 1;
        while power != self.neutral {
            power = self.mul(power, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders, as (order, count) pairs.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for a in 0..self.order() {
            *counts.entry(self.element_order(a)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Left-associated power a^k for k >= 0.
    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut out = self.neutral;
        for _ in 0..k {
            out = self.mul(out, a);
        }
        out
    }
}

impl fmt::Display for FiniteLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.names().iter().map(|s| s.len()).max().unwrap_or(1);
        write!(f, "{:width$} |", "*")?;
        for b in 0..self.order() {
            write!(f, " {:width$}", self.name(b))?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat((width + 1) * (self.order() + 1) + 1))?;
        for a in 0..self.order() {
            write!(f, "{:width$} |", self.name(a))?;
            for b in 0..self.order() {
                write!(f, " {:width$}", self.name(self.mul(a, b)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// All 2x2 intercalates (row pair, column pair spanning a constant-swap
/// subsquare) that avoid the neutral's row and column, as
/// `[r1, r2, c1, c2]` in lexicographic order. Flipping one keeps the
/// Latin property and the neutral, so each is a minimal loop perturbation.
pub fn intercalates_avoiding_neutral(l: &FiniteLoop) -> Vec<[usize; 4]> {
    let n = l.order();
    let e = l.neutral();
    let mut found = Vec::new();
    for r1 in 0..n {
        if r1 == e {
            continue;
        }
        for r2 in r1 + 1..n {
            if r2 == e {
                continue;
            }
            for c1 in 0..n {
                if c1 == e {
                    continue;
                }
                for c2 in c1 + 1..n {
                    if c2 == e {
                        continue;
                    }
                    let (a, b) = (l.mul(r1, c1), l.mul(r1, c2));
                    if a != b && l.mul(r2, c1) == b && l.mul(r2, c2) == a {
                        found.push([r1, r2, c1, c2]);
                    }
                }
            }
        }
    }
    found
}

/// Swaps the two values across an intercalate's four cells.
pub fn flip_intercalate(l: &FiniteLoop, quad: [usize; 4]) -> FiniteLoop {
    let [r1, r2, c1, c2] = quad;
    let (a, b) = (l.mul(r1, c1), l.mul(r1, c2));
    let mut table = l.magma().rows().to_vec();
    table[r1][c1] = b;
    table[r1][c2] = a;
    table[r2][c1] = a;
    table[r2][c2] = b;
    let magma = MagmaTable::new(table, l.names().to_vec()).expect("names unchanged");
    FiniteLoop::new(magma, l.neutral()).expect("intercalate flips preserve the loop axioms")
}

/// Flips the lexicographically first intercalate that avoids the
/// neutral's row and column, when one exists. The result is still a
/// loop, but the swap destroys the Moufang property in every case
/// exercised by the tests.
pub fn perturb_first_intercalate(l: &FiniteLoop) -> Option<FiniteLoop> {
    intercalates_avoiding_neutral(l)
        .first()
        .map(|&quad| flip_intercalate(l, quad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_table(n: usize) -> MagmaTable {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        MagmaTable::with_default_names(table).unwrap()
    }

    /// Subtraction mod 3: a Latin square with a left neutral row but no
    /// two-sided neutral.
    fn shift_square() -> MagmaTable {
        let table = (0..3)
            .map(|i| (0..3).map(|j| (3 + j - i) % 3).collect())
            .collect();
        MagmaTable::with_default_names(table).unwrap()
    }

    #[test]
    fn cyclic_groups_are_quasigroups() {
        assert!(cyclic_table(3).is_quasigroup());
        assert!(cyclic_table(4).is_quasigroup());
    }

    #[test]
    fn repeated_column_entry_is_not_a_quasigroup() {
        let m = MagmaTable::with_default_names(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!m.is_quasigroup());
    }

    #[test]
    fn find_neutral_on_cyclic_group() {
        assert_eq!(cyclic_table(4).find_neutral(), Some(0));
    }

    #[test]
    fn shift_square_has_no_neutral() {
        let m = shift_square();
        assert!(m.is_quasigroup());
        assert_eq!(m.find_neutral(), None);
    }

    #[test]
    fn loop_construction_rejects_bad_neutral() {
        assert!(FiniteLoop::new(shift_square(), 0).is_err());
        assert!(FiniteLoop::new(cyclic_table(3), 1).is_err());
        assert!(FiniteLoop::new(cyclic_table(3), 0).is_ok());
    }

    #[test]
    fn groups_satisfy_all_moufang_variants() {
        let l = FiniteLoop::new(cyclic_table(5), 0).unwrap();
        for v in MoufangVariant::ALL {
            assert_eq!(l.moufang_counterexample(v), None);
        }
    }

    #[test]
    fn inverse_on_cyclic_group() {
        let l = FiniteLoop::new(cyclic_table(5), 0).unwrap();
        assert_eq!(l.inverse(0).unwrap(), 0);
        assert_eq!(l.inverse(2).unwrap(), 3);
    }

    #[test]
    fn subloop_generation_on_cyclic_group() {
        let l = FiniteLoop::new(cyclic_table(6), 0).unwrap();
        assert_eq!(
            l.generate_subloop(&[2]),
            BTreeSet::from([0, 2, 4])
        );
        assert_eq!(l.generate_subloop(&[]), BTreeSet::from([0]));
        let sub = l.subloop(&l.generate_subloop(&[2])).unwrap();
        assert_eq!(sub.order(), 3);
        assert!(sub.is_associative());
    }

    #[test]
    fn element_orders_in_cyclic_group() {
        let l = FiniteLoop::new(cyclic_table(6), 0).unwrap();
        assert_eq!(l.element_order(0), 1);
        assert_eq!(l.element_order(1), 6);
        assert_eq!(l.element_order(2), 3);
        assert_eq!(l.element_order(3), 2);
        assert_eq!(l.order_profile(), vec![(1, 1), (2, 1), (3, 2), (6, 2)]);
    }

    #[test]
    fn perturbation_keeps_latin_and_neutral() {
        let l = FiniteLoop::new(cyclic_table(6), 0).unwrap();
        let p = perturb_first_intercalate(&l).expect("an intercalate exists");
        assert!(p.magma().is_quasigroup());
        assert_eq!(p.magma().find_neutral(), Some(0));
        assert_ne!(p, l);
    }
}
