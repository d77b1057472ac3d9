//! Finite groups with a designated generator pair, a catalog of small
//! groups, and evaluation of free-group words against a group.
//!
//! Generator conventions are fixed per catalog family, because loop
//! presentations are generator-sensitive:
//! - dihedral: x = reflection, y = rotation;
//! - dicyclic: x = the order-2m generator a, y = the twisting generator b;
//! - symmetric3: x = a transposition, y = a 3-cycle;
//! - alternating4: x = a double transposition, y = a 3-cycle;
//! - cyclic: x generates, y = e (the two-generated requirement relaxes
//!   to one-generated for this family);
//! - product of two cyclic groups: x and y generate the factors.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::table::{FiniteLoop, LoopError, MagmaTable};
use crate::word::{GroupWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not associative at ({0}, {1}, {2})", witness[0], witness[1], witness[2])]
    NotAssociative { witness: [usize; 3] },
    #[error("designated generators do not generate the group")]
    NotGenerated,
    #[error("generator index {index} out of range")]
    GeneratorOutOfRange { index: usize },
    #[error(transparent)]
    Loop(#[from] LoopError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("parameter {parameter} out of range for {family} (orders up to 32)")]
    OutOfRange { family: &'static str, parameter: usize },
    #[error("malformed group selector {0:?}")]
    BadSelector(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite group: an associative loop together with a generator pair
/// (x, y) whose closure is the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: FiniteLoop,
    gen_x: usize,
    gen_y: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(table: FiniteLoop, gen_x: usize, gen_y: usize) -> Result<Self, GroupError> {
        if gen_x >= table.order() {
            return Err(GroupError::GeneratorOutOfRange { index: gen_x });
        }
        if gen_y >= table.order() {
            return Err(GroupError::GeneratorOutOfRange { index: gen_y });
        }
        if let Some(witness) = table.associativity_counterexample() {
            return Err(GroupError::NotAssociative { witness });
        }
        if table.generate_subloop(&[gen_x, gen_y]).len() != table.order() {
            return Err(GroupError::NotGenerated);
        }
        let inverses = (0..table.order())
            .map(|a| table.inverse(a).expect("groups have two-sided inverses"))
            .collect();
        Ok(FiniteGroup {
            table,
            gen_x,
            gen_y,
            inverses,
        })
    }

    /// Wraps an associative loop, picking the first generator pair
    /// (in index order, y = neutral allowed) that generates it.
    pub fn from_loop(table: FiniteLoop) -> Result<Self, GroupError> {
        let n = table.order();
        for x in 0..n {
            for y in 0..n {
                if table.generate_subloop(&[x, y]).len() == n {
                    return FiniteGroup::new(table, x, y);
                }
            }
        }
        Err(GroupError::NotGenerated)
    }

    pub fn as_loop(&self) -> &FiniteLoop {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn neutral(&self) -> usize {
        self.table.neutral()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        self.table.name(a)
    }

    pub fn generator_x(&self) -> usize {
        self.gen_x
    }

    pub fn generator_y(&self) -> usize {
        self.gen_y
    }

    pub fn generator(&self, letter: Letter) -> usize {
        match letter {
            Letter::X => self.gen_x,
            Letter::Y => self.gen_y,
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.table.element_order(a)
    }

    /// a^k for any integer k.
    pub fn power(&self, a: usize, k: i32) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = self.neutral();
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    /// Left-to-right product of generator powers.
    pub fn evaluate_word(&self, word: &GroupWord) -> usize {
        let mut out = self.neutral();
        for s in word.syllables() {
            out = self.mul(out, self.power(self.generator(s.letter), s.exponent));
        }
        out
    }

    /// True iff every relator evaluates to the neutral element.
    pub fn check_relations(&self, relators: &[GroupWord]) -> bool {
        self.first_failing_relator(relators).is_none()
    }

    /// Equational form: each pair must evaluate to equal elements.
    /// A pair (l, r) is the relator l r^-1.
    pub fn check_relation_pairs(&self, pairs: &[(GroupWord, GroupWord)]) -> bool {
        pairs
            .iter()
            .all(|(l, r)| self.evaluate_word(l) == self.evaluate_word(r))
    }

    pub fn first_failing_relator<'a>(&self, relators: &'a [GroupWord]) -> Option<&'a GroupWord> {
        relators
            .iter()
            .find(|r| self.evaluate_word(r) != self.neutral())
    }
}

/// A catalog entry selector, e.g. `dihedral:4` or `product:2x3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupName {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Symmetric3,
    Alternating4,
    Product(usize, usize),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupName::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupName::Dicyclic(m) => write!(f, "dicyclic:{m}"),
            GroupName::Symmetric3 => write!(f, "symmetric3"),
            GroupName::Alternating4 => write!(f, "alternating4"),
            GroupName::Product(m, k) => write!(f, "product:{m}x{k}"),
        }
    }
}

impl FromStr for GroupName {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.splitn(2, ':');
        let family = parts.next().unwrap_or_default();
        let parameter = parts.next();
        let parse_num = |text: &str| {
            text.parse::<usize>()
                .map_err(|_| CatalogError::BadSelector(s.to_string()))
        };
        match (family, parameter) {
            ("cyclic", Some(p)) => Ok(GroupName::Cyclic(parse_num(p)?)),
            ("dihedral", Some(p)) => Ok(GroupName::Dihedral(parse_num(p)?)),
            ("dicyclic", Some(p)) => Ok(GroupName::Dicyclic(parse_num(p)?)),
            ("symmetric3", None) => Ok(GroupName::Symmetric3),
            ("alternating4", None) => Ok(GroupName::Alternating4),
            ("product", Some(p)) => {
                let (m, k) = p
                    .split_once('x')
                    .ok_or_else(|| CatalogError::BadSelector(s.to_string()))?;
                Ok(GroupName::Product(parse_num(m)?, parse_num(k)?))
            }
            ("cyclic" | "dihedral" | "dicyclic" | "product", None) => {
                Err(CatalogError::BadSelector(s.to_string()))
            }
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

impl GroupName {
    pub fn order(&self) -> usize {
        match *self {
            GroupName::Cyclic(m) => m,
            GroupName::Dihedral(k) => 2 * k,
            GroupName::Dicyclic(m) => 4 * m,
            GroupName::Symmetric3 => 6,
            GroupName::Alternating4 => 12,
            GroupName::Product(m, k) => m * k,
        }
    }
}

const MAX_CATALOG_ORDER: usize = 32;

/// Builds the named group with its canonical generator pair. Every
/// entry comes back verified: associative, neutral at index 0, and
/// generated by (x, y).
pub fn catalog(name: &GroupName) -> Result<FiniteGroup, CatalogError> {
    let order = name.order();
    if order == 0 || order > MAX_CATALOG_ORDER {
        let (family, parameter) = match *name {
            GroupName::Cyclic(m) => ("cyclic", m),
            GroupName::Dihedral(k) => ("dihedral", k),
            GroupName::Dicyclic(m) => ("dicyclic", m),
            GroupName::Product(m, k) => ("product", m * k),
            _ => unreachable!("fixed-order families are in range"),
        };
        return Err(CatalogError::OutOfRange { family, parameter });
    }
    let group = match *name {
        GroupName::Cyclic(m) => cyclic(m),
        GroupName::Dihedral(k) => {
            if k < 2 {
                return Err(CatalogError::OutOfRange {
                    family: "dihedral",
                    parameter: k,
                });
            }
            dihedral(k)
        }
        GroupName::Dicyclic(m) => {
            if m < 2 {
                return Err(CatalogError::OutOfRange {
                    family: "dicyclic",
                    parameter: m,
                });
            }
            dicyclic(m)
        }
        GroupName::Symmetric3 => symmetric3(),
        GroupName::Alternating4 => alternating4(),
        GroupName::Product(m, k) => {
            if m < 2 || k < 2 {
                return Err(CatalogError::OutOfRange {
                    family: "product",
                    parameter: m.min(k),
                });
            }
            product(m, k)
        }
    }?;
    Ok(group)
}

/// Parses a selector string and builds the group.
pub fn catalog_selector(selector: &str) -> Result<FiniteGroup, CatalogError> {
    catalog(&selector.parse()?)
}

/// Defining relator sets matching the catalog's generator conventions.
pub fn standard_relators(name: &GroupName) -> Vec<GroupWord> {
    let parse = |s: &str| s.parse::<GroupWord>().expect("fixed relator strings parse");
    match *name {
        GroupName::Cyclic(m) => vec![parse(&format!("x^{m}")), parse("y")],
        GroupName::Dihedral(k) => vec![parse("x^2"), parse(&format!("y^{k}")), parse("(xy)^2")],
        GroupName::Dicyclic(m) => vec![
            parse(&format!("x^{}", 2 * m)),
            parse(&format!("y^2x^-{m}")),
            parse("y^-1xyx"),
        ],
        GroupName::Symmetric3 => vec![parse("x^2"), parse("y^3"), parse("(xy)^2")],
        GroupName::Alternating4 => vec![parse("x^2"), parse("y^3"), parse("(xy)^3")],
        GroupName::Product(m, k) => vec![
            parse(&format!("x^{m}")),
            parse(&format!("y^{k}")),
            parse("xyx^-1y^-1"),
        ],
    }
}

/// All catalog entries of order at most `max_order`, smallest order
/// first. Within one order: the named groups, then dihedral, dicyclic,
/// cyclic, and cyclic products. Entries may repeat up to isomorphism
/// (dihedral:3 and symmetric3 are the same group); censuses that care
/// deduplicate with the isomorphism search.
pub fn catalog_groups_up_to(max_order: usize) -> Vec<(GroupName, FiniteGroup)> {
    let mut names = Vec::new();
    for order in 1..=max_order.min(MAX_CATALOG_ORDER) {
        if order == 6 {
            names.push(GroupName::Symmetric3);
        }
        if order == 12 {
            names.push(GroupName::Alternating4);
        }
        if order % 2 == 0 && order >= 4 {
            names.push(GroupName::Dihedral(order / 2));
        }
        if order % 4 == 0 && order >= 8 {
            names.push(GroupName::Dicyclic(order / 4));
        }
        names.push(GroupName::Cyclic(order));
        for m in 2..=order {
            if order % m == 0 {
                let k = order / m;
                if k >= m {
                    names.push(GroupName::Product(m, k));
                }
            }
        }
    }
    names
        .into_iter()
        .map(|n| {
            let g = catalog(&n).expect("enumerated parameters are in range");
            (n, g)
        })
        .collect()
}

fn group_from_table(
    table: Vec<Vec<usize>>,
    names: Vec<String>,
    gen_x: usize,
    gen_y: usize,
) -> Result<FiniteGroup, CatalogError> {
    let magma = MagmaTable::new(table, names).map_err(GroupError::from)?;
    let table = FiniteLoop::new(magma, 0).map_err(GroupError::from)?;
    Ok(FiniteGroup::new(table, gen_x, gen_y)?)
}

fn cyclic(m: usize) -> Result<FiniteGroup, CatalogError> {
    let table = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
    let names = (0..m)
        .map(|i| GroupWord::syllable(Letter::X, i as i32).to_string())
        .collect();
    group_from_table(table, names, if m > 1 { 1 } else { 0 }, 0)
}

/// Order 2k, elements x^d y^i with x a reflection and y a rotation of
/// order k. Index (d, i) -> d*k + i.
fn dihedral(k: usize) -> Result<FiniteGroup, CatalogError> {
    let order = 2 * k;
    let idx = |d: usize, i: usize| d * k + i;
    let mut table = vec![vec![0; order]; order];
    for d in 0..2 {
        for i in 0..k {
            for e in 0..2 {
                for j in 0..k {
                    // (x^d y^i)(x^e y^j): moving x^e left inverts y^i.
                    let rot = if e == 1 { (k + j - i % k) % k } else { (i + j) % k };
                    table[idx(d, i)][idx(e, j)] = idx((d + e) % 2, rot);
                }
            }
        }
    }
    let mut names = Vec::with_capacity(order);
    for d in 0..2 {
        for i in 0..k {
            let word = GroupWord::syllable(Letter::X, d as i32)
                .mul(&GroupWord::syllable(Letter::Y, i as i32));
            names.push(word.to_string());
        }
    }
    group_from_table(table, names, idx(1, 0), idx(0, 1))
}

/// Order 4m, generators a = x of order 2m and b = y with y^2 = x^m and
/// y^-1 x y = x^-1. Elements x^i y^d, index (i, d) -> d*2m + i.
fn dicyclic(m: usize) -> Result<FiniteGroup, CatalogError> {
    let two_m = 2 * m;
    let order = 4 * m;
    let idx = |i: usize, d: usize| d * two_m + i;
    let mut table = vec![vec![0; order]; order];
    for i in 0..two_m {
        for d in 0..2 {
            for j in 0..two_m {
                for e in 0..2 {
                    // (x^i y^d)(x^j y^e): moving y^d past x^j inverts it;
                    // a leftover y^2 becomes x^m.
                    let (power, flips) = if d == 1 {
                        ((two_m + i - j % two_m) % two_m, 1 + e)
                    } else {
                        ((i + j) % two_m, e)
                    };
                    table[idx(i, d)][idx(j, e)] = if flips == 2 {
                        idx((power + m) % two_m, 0)
                    } else {
                        idx(power, flips)
                    };
                }
            }
        }
    }
    let mut names = Vec::with_capacity(order);
    for d in 0..2 {
        for i in 0..two_m {
            let word = GroupWord::syllable(Letter::X, i as i32)
                .mul(&GroupWord::syllable(Letter::Y, d as i32));
            names.push(word.to_string());
        }
    }
    group_from_table(table, names, idx(1, 0), idx(0, 1))
}

fn product(m: usize, k: usize) -> Result<FiniteGroup, CatalogError> {
    let order = m * k;
    let idx = |i: usize, j: usize| i * k + j;
    let mut table = vec![vec![0; order]; order];
    for i in 0..m {
        for j in 0..k {
            for p in 0..m {
                for q in 0..k {
                    table[idx(i, j)][idx(p, q)] = idx((i + p) % m, (j + q) % k);
                }
            }
        }
    }
    let mut names = Vec::with_capacity(order);
    for i in 0..m {
        for j in 0..k {
            let word = GroupWord::syllable(Letter::X, i as i32)
                .mul(&GroupWord::syllable(Letter::Y, j as i32));
            names.push(word.to_string());
        }
    }
    group_from_table(table, names, idx(1, 0), idx(0, 1))
}

/// Composes permutations left-to-right: apply `p`, then `q`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

/// Builds a permutation group by breadth-first closure from (x, y),
/// naming each element by the first word that reaches it.
fn permutation_group(
    x: Vec<usize>,
    y: Vec<usize>,
    expected_order: usize,
) -> Result<FiniteGroup, CatalogError> {
    let degree = x.len();
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut words = vec![GroupWord::identity()];
    for (perm, letter) in [(x.clone(), Letter::X), (y.clone(), Letter::Y)] {
        if !elements.contains(&perm) {
            elements.push(perm);
            words.push(GroupWord::letter(letter));
        }
    }
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        let word = words[frontier].clone();
        frontier += 1;
        for (gen, letter) in [(&x, Letter::X), (&y, Letter::Y)] {
            let next = compose(&current, gen);
            if !elements.contains(&next) {
                elements.push(next);
                words.push(word.mul(&GroupWord::letter(letter)));
            }
        }
    }
    assert_eq!(elements.len(), expected_order, "closure has the expected order");
    let index_of = |p: &Vec<usize>| elements.iter().position(|q| q == p).unwrap();
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index_of(&compose(a, b))).collect())
        .collect();
    let names = words.iter().map(|w| w.to_string()).collect();
    group_from_table(table, names, index_of(&x), index_of(&y))
}

fn symmetric3() -> Result<FiniteGroup, CatalogError> {
    permutation_group(vec![1, 0, 2], vec![1, 2, 0], 6)
}

fn alternating4() -> Result<FiniteGroup, CatalogError> {
    permutation_group(vec![1, 0, 3, 2], vec![1, 2, 0, 3], 12)
}
