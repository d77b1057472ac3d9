//! A visual model of the smallest non-associative Moufang loop, the
//! order-12 Chein double of S3.
//!
//! The model has twelve elements: e, nine involutions x_0..x_8, and an
//! order-3 pair y, y^-1. Its multiplication is generated by a handful
//! of picture rules: nine triangles on the involutions (the product of
//! two triangle vertices is the third), the index-shift products
//! x_i x_(i+3) = y and x_i x_(i-3) = y^-1, and the postulated shifts
//! x_i y = y^-1 x_i = x_(i+3) and y x_i = x_i y^-1 = x_(i-3), all
//! indices mod 9. The triangles themselves are recovered from the
//! doubled table rather than read off a drawing.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::chein::{chein_construct, chein_index, CheinElement};
use crate::group::{catalog, FiniteGroup, GroupName};
use crate::iso::find_isomorphism;
use crate::table::{FiniteLoop, MagmaTable};
use crate::word::GroupWord;

/// Index layout of the visual loop: e, then x_0..x_8, then y, y^-1.
pub const NEUTRAL: usize = 0;
pub const Y: usize = 10;
pub const Y_INV: usize = 11;

pub const fn involution(i: usize) -> usize {
    1 + i
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VisualError {
    #[error("product of x_{i} and x_{j} is {name}, not an involution")]
    NotInvolution { i: usize, j: usize, name: String },
    #[error("triangle set is malformed: {0}")]
    BadTriangles(String),
    #[error("rule conflict at ({row}, {col}): {existing} vs {new}")]
    RuleConflict {
        row: usize,
        col: usize,
        existing: usize,
        new: usize,
    },
    #[error("cell ({row}, {col}) is not determined by any rule")]
    IncompleteTable { row: usize, col: usize },
    #[error("rules do not produce a loop: {0}")]
    NotALoop(String),
}

/// The triangle data of the model: labels 0..8 for the involutions and
/// nine unordered triples. Two labels are *linked* when they differ
/// mod 3; every linked pair lies in exactly one triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VisualSpec {
    pub triangles: Vec<[usize; 3]>,
}

impl VisualSpec {
    pub fn validate(&self) -> Result<(), VisualError> {
        if self.triangles.len() != 9 {
            return Err(VisualError::BadTriangles(format!(
                "expected 9 triangles, got {}",
                self.triangles.len()
            )));
        }
        let mut seen_pairs = BTreeSet::new();
        for t in &self.triangles {
            let [a, b, c] = *t;
            if a >= b || b >= c || c > 8 {
                return Err(VisualError::BadTriangles(format!(
                    "triangle {t:?} is not a sorted triple over 0..9"
                )));
            }
            for (i, j) in [(a, b), (a, c), (b, c)] {
                if i % 3 == j % 3 {
                    return Err(VisualError::BadTriangles(format!(
                        "triangle {t:?} contains the linked pair ({i}, {j})"
                    )));
                }
                if !seen_pairs.insert((i, j)) {
                    return Err(VisualError::BadTriangles(format!(
                        "pair ({i}, {j}) appears in more than one triangle"
                    )));
                }
            }
        }
        // 27 distinct eligible pairs = all of them, each exactly once.
        if seen_pairs.len() != 27 {
            return Err(VisualError::BadTriangles(format!(
                "triangles cover {} pairs, expected 27",
                seen_pairs.len()
            )));
        }
        Ok(())
    }

    /// The triangle containing the pair {i, j}, if any.
    pub fn triangle_of(&self, i: usize, j: usize) -> Option<[usize; 3]> {
        self.triangles
            .iter()
            .copied()
            .find(|t| t.contains(&i) && t.contains(&j))
    }
}

/// The doubled table of S3 together with the label map from visual
/// indices to indices of the double.
pub struct ReferenceModel {
    pub group: FiniteGroup,
    pub doubled: FiniteLoop,
    /// `labeling[v]` is the index in `doubled` of visual element `v`.
    pub labeling: [usize; 12],
}

/// Builds the doubled table of S3 and the labeling x = x_0, u = x_1,
/// under which the nine involutions are x_0, x_8, x_7, ... as dictated
/// by the index-shift rules.
pub fn reference_model() -> ReferenceModel {
    let group = catalog(&GroupName::Symmetric3).expect("catalog has S3");
    let doubled = chein_construct(&group);
    let n = group.order();
    let at = |word: &str, flag: bool| {
        let element = group.evaluate_word(&word.parse::<GroupWord>().expect("fixed word"));
        chein_index(
            n,
            if flag {
                CheinElement::doubled(element)
            } else {
                CheinElement::group(element)
            },
        )
    };
    let mut labeling = [0usize; 12];
    labeling[NEUTRAL] = at("e", false);
    labeling[involution(0)] = at("x", false);
    labeling[involution(1)] = at("e", true);
    labeling[involution(2)] = at("yx", true);
    labeling[involution(3)] = at("xy", false);
    labeling[involution(4)] = at("y^-1", true);
    labeling[involution(5)] = at("xy", true);
    labeling[involution(6)] = at("yx", false);
    labeling[involution(7)] = at("y", true);
    labeling[involution(8)] = at("x", true);
    labeling[Y] = at("y", false);
    labeling[Y_INV] = at("y^-1", false);
    ReferenceModel {
        group,
        doubled,
        labeling,
    }
}

/// Recovers the nine triangles from the doubled table: for each pair of
/// involution labels i, j with i != j mod 3, the third vertex is the
/// product x_i * x_j.
pub fn derive_triangles() -> Result<VisualSpec, VisualError> {
    let model = reference_model();
    let position_of = |index: usize| model.labeling.iter().position(|&m| m == index);
    let mut triangles = BTreeSet::new();
    for i in 0..9 {
        for j in (i + 1)..9 {
            if i % 3 == j % 3 {
                continue;
            }
            let product = model
                .doubled
                .mul(model.labeling[involution(i)], model.labeling[involution(j)]);
            let third = match position_of(product) {
                Some(v) if (1..=9).contains(&v) => v - 1,
                _ => {
                    return Err(VisualError::NotInvolution {
                        i,
                        j,
                        name: model.doubled.name(product).to_string(),
                    })
                }
            };
            let mut triple = [i, j, third];
            triple.sort_unstable();
            triangles.insert(triple);
        }
    }
    let spec = VisualSpec {
        triangles: triangles.into_iter().collect(),
    };
    spec.validate()?;
    Ok(spec)
}

/// Display names of the twelve visual elements.
pub fn visual_names() -> Vec<String> {
    let mut names = vec!["e".to_string()];
    names.extend((0..9).map(|i| format!("x{i}")));
    names.push("y".to_string());
    names.push("y^-1".to_string());
    names
}

/// The full rule set as explicit cell assignments (row, column, value).
fn rule_assignments(spec: &VisualSpec) -> Vec<(usize, usize, usize)> {
    let mut rules = Vec::new();
    // Neutral element.
    for a in 0..12 {
        rules.push((NEUTRAL, a, a));
        rules.push((a, NEUTRAL, a));
    }
    // Involutions square to e; {e, y, y^-1} is a copy of C3.
    for i in 0..9 {
        rules.push((involution(i), involution(i), NEUTRAL));
    }
    rules.push((Y, Y, Y_INV));
    rules.push((Y_INV, Y_INV, Y));
    rules.push((Y, Y_INV, NEUTRAL));
    rules.push((Y_INV, Y, NEUTRAL));
    // Triangle rule: the product of two triangle vertices is the third.
    for t in &spec.triangles {
        let [a, b, c] = *t;
        for (i, j, k) in [(a, b, c), (a, c, b), (b, c, a)] {
            rules.push((involution(i), involution(j), involution(k)));
            rules.push((involution(j), involution(i), involution(k)));
        }
    }
    // Index-shift products land in {y, y^-1}.
    for i in 0..9 {
        rules.push((involution(i), involution((i + 3) % 9), Y));
        rules.push((involution(i), involution((i + 6) % 9), Y_INV));
    }
    // Postulated shifts: x_i y = y^-1 x_i = x_(i+3), y x_i = x_i y^-1 = x_(i-3).
    for i in 0..9 {
        let up = involution((i + 3) % 9);
        let down = involution((i + 6) % 9);
        rules.push((involution(i), Y, up));
        rules.push((Y_INV, involution(i), up));
        rules.push((Y, involution(i), down));
        rules.push((involution(i), Y_INV, down));
    }
    rules
}

fn apply_rules(
    rules: &[(usize, usize, usize)],
) -> Result<Vec<Vec<usize>>, VisualError> {
    let mut cells: Vec<Vec<Option<usize>>> = vec![vec![None; 12]; 12];
    for &(row, col, value) in rules {
        match cells[row][col] {
            Some(existing) if existing != value => {
                return Err(VisualError::RuleConflict {
                    row,
                    col,
                    existing,
                    new: value,
                });
            }
            _ => cells[row][col] = Some(value),
        }
    }
    let mut table = vec![vec![0; 12]; 12];
    for (row, row_cells) in cells.iter().enumerate() {
        for (col, cell) in row_cells.iter().enumerate() {
            table[row][col] = cell.ok_or(VisualError::IncompleteTable { row, col })?;
        }
    }
    Ok(table)
}

/// Builds the 12x12 table from the rules alone and verifies it is a
/// loop with neutral e.
pub fn build_visual_loop(spec: &VisualSpec) -> Result<FiniteLoop, VisualError> {
    spec.validate()?;
    let table = apply_rules(&rule_assignments(spec))?;
    let magma = MagmaTable::new(table, visual_names())
        .map_err(|e| VisualError::NotALoop(e.to_string()))?;
    FiniteLoop::new(magma, NEUTRAL).map_err(|e| VisualError::NotALoop(e.to_string()))
}

/// Outcome of checking the visual loop's claims against the double.
#[derive(Debug, Clone, Serialize)]
pub struct VisualReport {
    /// (x0 x1) x3 printed by name.
    pub witness_left: String,
    /// x0 (x1 x3) printed by name.
    pub witness_right: String,
    pub non_associative_witness_ok: bool,
    /// The four case identities on the subgroup {e, x0, y, x3, x6, y^-1}
    /// with u = x1, and that subgroup being a copy of S3.
    pub case_identities_ok: bool,
    pub isomorphic_to_double: bool,
    /// Two-generated subloops: S3 when the labels agree mod 3, V4 otherwise.
    pub subloop_profile_ok: bool,
    /// 1 neutral, 9 involutions, 2 elements of order 3.
    pub order_census_ok: bool,
    /// Entry-for-entry match with the relabeled doubled table.
    pub matches_relabeled_double: bool,
    pub failures: Vec<String>,
}

impl VisualReport {
    pub fn all_pass(&self) -> bool {
        self.non_associative_witness_ok
            && self.case_identities_ok
            && self.isomorphic_to_double
            && self.subloop_profile_ok
            && self.order_census_ok
            && self.matches_relabeled_double
    }
}

impl fmt::Display for VisualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "non-associativity witness (x0 x1)x3 = {} vs x0(x1 x3) = {}: {}",
            self.witness_left,
            self.witness_right,
            line(self.non_associative_witness_ok)
        )?;
        writeln!(
            f,
            "case identities on <x0, y> with u = x1: {}",
            line(self.case_identities_ok)
        )?;
        writeln!(
            f,
            "isomorphic to the doubled table of S3: {}",
            line(self.isomorphic_to_double)
        )?;
        writeln!(
            f,
            "subloop profile (S3 iff labels agree mod 3, else V4): {}",
            line(self.subloop_profile_ok)
        )?;
        writeln!(
            f,
            "order census 1 neutral / 9 involutions / 2 of order 3: {}",
            line(self.order_census_ok)
        )?;
        writeln!(
            f,
            "table equals the relabeled double entry-for-entry: {}",
            line(self.matches_relabeled_double)
        )?;
        for failure in &self.failures {
            writeln!(f, "  detail: {failure}")?;
        }
        Ok(())
    }
}

/// Runs every claim check against a visual loop table.
pub fn verify_visual_claims(l: &FiniteLoop) -> VisualReport {
    let model = reference_model();
    let mut failures = Vec::new();

    // Non-associativity witness: (x0 x1) x3 = x7 but x0 (x1 x3) = x4.
    let left = l.mul(l.mul(involution(0), involution(1)), involution(3));
    let right = l.mul(involution(0), l.mul(involution(1), involution(3)));
    let non_associative_witness_ok = left == involution(7) && right == involution(4);
    if !non_associative_witness_ok {
        failures.push(format!(
            "witness products are {} and {}",
            l.name(left),
            l.name(right)
        ));
    }

    // The embedded subgroup and the case identities.
    let subgroup = [NEUTRAL, involution(0), Y, involution(3), involution(6), Y_INV];
    let u = involution(1);
    let mut case_identities_ok = true;
    let in_subgroup = |e: usize| subgroup.contains(&e);
    for &a in &subgroup {
        for &b in &subgroup {
            if !in_subgroup(l.mul(a, b)) {
                case_identities_ok = false;
                failures.push(format!(
                    "subgroup not closed: {} * {}",
                    l.name(a),
                    l.name(b)
                ));
                continue;
            }
            let inv_b = l.inverse(b).expect("subgroup elements invert");
            let au = l.mul(a, u);
            let bu = l.mul(b, u);
            let case2 = l.mul(au, b) == l.mul(l.mul(a, inv_b), u);
            let case3 = l.mul(a, bu) == l.mul(l.mul(b, a), u);
            let case4 = l.mul(au, bu) == l.mul(inv_b, a);
            if !(case2 && case3 && case4) {
                case_identities_ok = false;
                failures.push(format!(
                    "case identity fails at g = {}, h = {}",
                    l.name(a),
                    l.name(b)
                ));
            }
        }
    }
    if case_identities_ok {
        let sub = l
            .subloop(&subgroup.iter().copied().collect())
            .expect("subgroup is closed");
        if find_isomorphism(&sub, model.group.as_loop()).is_none() {
            case_identities_ok = false;
            failures.push("embedded subgroup is not a copy of S3".to_string());
        }
    }

    // Isomorphism with the double.
    let isomorphic_to_double = find_isomorphism(l, &model.doubled).is_some();
    if !isomorphic_to_double {
        failures.push("no isomorphism onto the doubled table".to_string());
    }

    // Subloop profile over every involution pair.
    let s3 = model.group.as_loop();
    let v4 = catalog(&GroupName::Product(2, 2)).expect("catalog has C2 x C2");
    let mut subloop_profile_ok = true;
    for i in 0..9 {
        for j in (i + 1)..9 {
            let members = l.generate_subloop(&[involution(i), involution(j)]);
            let sub = match l.subloop(&members) {
                Ok(sub) => sub,
                Err(e) => {
                    subloop_profile_ok = false;
                    failures.push(format!("subloop <x{i}, x{j}>: {e}"));
                    continue;
                }
            };
            let ok = if i % 3 == j % 3 {
                sub.order() == 6 && find_isomorphism(&sub, s3).is_some()
            } else {
                sub.order() == 4 && find_isomorphism(&sub, v4.as_loop()).is_some()
            };
            if !ok {
                subloop_profile_ok = false;
                failures.push(format!(
                    "subloop <x{i}, x{j}> has order {}",
                    sub.order()
                ));
            }
        }
    }

    // Order census.
    let order_census_ok = l.order_profile() == vec![(1, 1), (2, 9), (3, 2)];
    if !order_census_ok {
        failures.push(format!("order profile is {:?}", l.order_profile()));
    }

    // Entry-for-entry agreement with the relabeled double.
    let mut matches_relabeled_double = l.order() == 12;
    'outer: for a in 0..12 {
        for b in 0..12 {
            if model.labeling[l.mul(a, b)] != model.doubled.mul(model.labeling[a], model.labeling[b])
            {
                matches_relabeled_double = false;
                failures.push(format!(
                    "cell ({}, {}) disagrees with the double",
                    l.name(a),
                    l.name(b)
                ));
                break 'outer;
            }
        }
    }

    VisualReport {
        witness_left: l.name(left).to_string(),
        witness_right: l.name(right).to_string(),
        non_associative_witness_ok,
        case_identities_ok,
        isomorphic_to_double,
        subloop_profile_ok,
        order_census_ok,
        matches_relabeled_double,
        failures,
    }
}

/// Renders the triangle data as a DOT graph: nine involution nodes,
/// solid edges for the 27 triangle sides and dotted edges for the nine
/// {i, i+3} pairs. Triangles are packed greedily into at most four
/// vertex-disjoint clusters; the grouping is presentational only, the
/// mathematics depends just on the triangle set.
pub fn emit_diagram(spec: &VisualSpec) -> String {
    let mut groups: Vec<Vec<[usize; 3]>> = Vec::new();
    let mut sorted = spec.triangles.clone();
    sorted.sort_unstable();
    for triangle in sorted {
        let fits = |group: &Vec<[usize; 3]>| {
            group
                .iter()
                .all(|t| t.iter().all(|v| !triangle.contains(v)))
        };
        if let Some(group) = groups.iter_mut().find(|g| fits(g)) {
            group.push(triangle);
        } else if groups.len() < 4 {
            groups.push(vec![triangle]);
        } else {
            // No disjoint slot left; fall back to the smallest cluster.
            let group = groups
                .iter_mut()
                .min_by_key(|g| g.len())
                .expect("at least one cluster exists");
            group.push(triangle);
        }
    }
    let mut out = String::from("graph m12 {\n  node [shape=circle];\n");
    for i in 0..9 {
        out.push_str(&format!("  x{i};\n"));
    }
    for (index, group) in groups.iter().enumerate() {
        let numeral = ["I", "II", "III", "IV"][index];
        out.push_str(&format!(
            "  subgraph cluster_{index} {{\n    label=\"{numeral}\";\n"
        ));
        for t in group {
            let [a, b, c] = *t;
            out.push_str(&format!("    x{a} -- x{b};\n"));
            out.push_str(&format!("    x{a} -- x{c};\n"));
            out.push_str(&format!("    x{b} -- x{c};\n"));
        }
        out.push_str("  }\n");
    }
    for i in 0..9 {
        let j = (i + 3) % 9;
        if i < j {
            out.push_str(&format!("  x{i} -- x{j} [style=dotted];\n"));
        }
    }
    // The wrapped pairs {0,6}, {1,7}, {2,8} written small-index first.
    for i in 6..9 {
        out.push_str(&format!("  x{} -- x{i} [style=dotted];\n", i - 6));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The nine triangles, frozen from a by-hand reading of the doubled
    /// S3 table under the x = x_0, u = x_1 labeling.
    const EXPECTED_TRIANGLES: [[usize; 3]; 9] = [
        [0, 1, 8],
        [0, 2, 7],
        [0, 4, 5],
        [1, 2, 6],
        [1, 3, 5],
        [2, 3, 4],
        [3, 7, 8],
        [4, 6, 8],
        [5, 6, 7],
    ];

    #[test]
    fn derived_triangles_match_the_frozen_set() {
        let spec = derive_triangles().unwrap();
        assert_eq!(spec.triangles, EXPECTED_TRIANGLES.to_vec());
    }

    #[test]
    fn triangle_of_pair_01_is_8_and_31_is_5() {
        let spec = derive_triangles().unwrap();
        assert_eq!(spec.triangle_of(0, 1), Some([0, 1, 8]));
        assert_eq!(spec.triangle_of(1, 3), Some([1, 3, 5]));
        assert_eq!(spec.triangle_of(0, 3), None);
    }

    #[test]
    fn visual_loop_is_a_loop_with_the_expected_cells() {
        let l = build_visual_loop(&derive_triangles().unwrap()).unwrap();
        assert!(l.magma().is_quasigroup());
        assert_eq!(l.magma().find_neutral(), Some(NEUTRAL));
        // x0 * x3 = y and x0 * y = x3.
        assert_eq!(l.mul(involution(0), involution(3)), Y);
        assert_eq!(l.mul(involution(0), Y), involution(3));
        assert_eq!(l.mul(Y, involution(0)), involution(6));
    }

    #[test]
    fn all_claims_pass() {
        let l = build_visual_loop(&derive_triangles().unwrap()).unwrap();
        let report = verify_visual_claims(&l);
        assert!(report.all_pass(), "{report}");
        assert_eq!(report.witness_left, "x7");
        assert_eq!(report.witness_right, "x4");
    }

    #[test]
    fn rules_are_order_independent() {
        let spec = derive_triangles().unwrap();
        let rules = rule_assignments(&spec);
        let forward = apply_rules(&rules).unwrap();
        let mut reversed = rules.clone();
        reversed.reverse();
        assert_eq!(apply_rules(&reversed).unwrap(), forward);
        // An interleaved order.
        let mut interleaved: Vec<_> = rules.iter().copied().step_by(2).collect();
        interleaved.extend(rules.iter().copied().skip(1).step_by(2));
        assert_eq!(apply_rules(&interleaved).unwrap(), forward);
    }

    #[test]
    fn triangle_closure_forms_klein_four_subtables() {
        let spec = derive_triangles().unwrap();
        let l = build_visual_loop(&spec).unwrap();
        for t in &spec.triangles {
            let [a, b, c] = *t;
            let members: BTreeSet<usize> =
                [NEUTRAL, involution(a), involution(b), involution(c)]
                    .into_iter()
                    .collect();
            for &p in &members {
                for &q in &members {
                    assert!(members.contains(&l.mul(p, q)));
                }
            }
        }
    }

    #[test]
    fn conflicting_triangles_are_rejected() {
        let mut spec = derive_triangles().unwrap();
        // Claim pair (0, 1) closes on vertex 5 instead of 8: pair
        // coverage breaks.
        spec.triangles[0] = [0, 1, 5];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn diagram_has_the_expected_shape() {
        let spec = derive_triangles().unwrap();
        let dot = emit_diagram(&spec);
        let solid = dot
            .lines()
            .filter(|l| l.contains("--") && !l.contains("dotted"))
            .count();
        let dotted = dot.lines().filter(|l| l.contains("dotted")).count();
        let nodes = dot.lines().filter(|l| l.trim().ends_with(';') && l.contains('x') && !l.contains("--") && !l.contains('[')).count();
        assert_eq!(solid, 27);
        assert_eq!(dotted, 9);
        assert_eq!(nodes, 9);
        // The nine triangles pack into three vertex-disjoint clusters.
        assert_eq!(dot.matches("subgraph").count(), 3);
    }
}
