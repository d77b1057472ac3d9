//! The Chein double of a finite group G: the loop of order 2|G| on
//! pairs g·u^a (a = 0, 1) with the twisted product
//!
//! ```text
//! g u^a * h u^b  =  (g^s h^t)^s u^(a+b),   s = (-1)^b, t = (-1)^(a+b),
//! ```
//!
//! exponents taken mod 2. The double is Moufang, and it is associative
//! exactly when G is commutative. G embeds as the a = 0 half.

use crate::group::FiniteGroup;
use crate::table::{FiniteLoop, MagmaTable};

/// An element g·u^flag of the double.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheinElement {
    /// Index of g in the underlying group.
    pub group_index: usize,
    /// True for the u-coset (the new half), false for the embedded copy of G.
    pub flag: bool,
}

impl CheinElement {
    pub fn group(g: usize) -> Self {
        CheinElement {
            group_index: g,
            flag: false,
        }
    }

    pub fn doubled(g: usize) -> Self {
        CheinElement {
            group_index: g,
            flag: true,
        }
    }
}

/// Index of an element in the doubled table: the embedded copy of G
/// keeps its indices, the u-coset follows as `n..2n`.
pub fn chein_index(group_order: usize, e: CheinElement) -> usize {
    if e.flag {
        group_order + e.group_index
    } else {
        e.group_index
    }
}

pub fn chein_element(group_order: usize, index: usize) -> CheinElement {
    if index < group_order {
        CheinElement::group(index)
    } else {
        CheinElement::doubled(index - group_order)
    }
}

/// The closed product formula. Sign exponents are applied through group
/// inversion, never through index arithmetic.
pub fn chein_mul(g: &FiniteGroup, a: CheinElement, b: CheinElement) -> CheinElement {
    let left = if b.flag { g.inv(a.group_index) } else { a.group_index };
    let right = if a.flag != b.flag {
        g.inv(b.group_index)
    } else {
        b.group_index
    };
    let product = g.mul(left, right);
    CheinElement {
        group_index: if b.flag { g.inv(product) } else { product },
        flag: a.flag != b.flag,
    }
}

/// The same product as [`chein_mul`], written as the four flag cases:
/// g*h = gh, gu*h = gh^-1 u, g*hu = hg u, gu*hu = h^-1 g.
fn chein_mul_cases(g: &FiniteGroup, a: CheinElement, b: CheinElement) -> CheinElement {
    match (a.flag, b.flag) {
        (false, false) => CheinElement::group(g.mul(a.group_index, b.group_index)),
        (true, false) => CheinElement::doubled(g.mul(a.group_index, g.inv(b.group_index))),
        (false, true) => CheinElement::doubled(g.mul(b.group_index, a.group_index)),
        (true, true) => CheinElement::group(g.mul(g.inv(b.group_index), a.group_index)),
    }
}

/// Builds the full doubled table. The closed formula and the four-case
/// dispatch are computed independently and compared on every pair; the
/// sign juggling in the formula is the main error surface, so the
/// construction refuses to hand out a table they disagree on.
pub fn chein_construct(g: &FiniteGroup) -> FiniteLoop {
    let n = g.order();
    let order = 2 * n;
    let mut table = vec![vec![0; order]; order];
    for i in 0..order {
        for j in 0..order {
            let a = chein_element(n, i);
            let b = chein_element(n, j);
            let closed = chein_mul(g, a, b);
            let cases = chein_mul_cases(g, a, b);
            assert_eq!(closed, cases, "product formula and case dispatch agree");
            table[i][j] = chein_index(n, closed);
        }
    }
    let mut names: Vec<String> = g.as_loop().names().to_vec();
    for i in 0..n {
        if i == g.neutral() {
            names.push("u".to_string());
        } else {
            names.push(format!("{}u", g.name(i)));
        }
    }
    let magma = MagmaTable::new(table, names).expect("construction stays in range");
    FiniteLoop::new(magma, g.neutral()).expect("the double is a loop")
}

/// True iff the four case identities hold between `table` and G on all
/// pairs. Takes a raw table so corrupted candidates can be rescanned.
pub fn case_identities_hold(g: &FiniteGroup, table: &MagmaTable) -> bool {
    let n = g.order();
    if table.order() != 2 * n {
        return false;
    }
    let idx = |e: CheinElement| chein_index(n, e);
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            let a_binv = g.mul(a, g.inv(b));
            let ba = g.mul(b, a);
            let binv_a = g.mul(g.inv(b), a);
            let ok = table.mul(a, b) == ab
                && table.mul(idx(CheinElement::doubled(a)), b)
                    == idx(CheinElement::doubled(a_binv))
                && table.mul(a, idx(CheinElement::doubled(b))) == idx(CheinElement::doubled(ba))
                && table.mul(
                    idx(CheinElement::doubled(a)),
                    idx(CheinElement::doubled(b)),
                ) == binv_a;
            if !ok {
                return false;
            }
        }
    }
    true
}

pub fn case_identities_check(g: &FiniteGroup) -> bool {
    case_identities_hold(g, chein_construct(g).magma())
}

/// True iff u^2 = e and g*u = u*g^-1 hold in `table` for every g in G.
pub fn short_presentation_holds(g: &FiniteGroup, table: &MagmaTable) -> bool {
    let n = g.order();
    if table.order() != 2 * n {
        return false;
    }
    let u = chein_index(n, CheinElement::doubled(g.neutral()));
    if table.mul(u, u) != g.neutral() {
        return false;
    }
    (0..n).all(|a| table.mul(a, u) == table.mul(u, g.inv(a)))
}

pub fn short_presentation_check(g: &FiniteGroup) -> bool {
    short_presentation_holds(g, chein_construct(g).magma())
}

/// True iff the flag-0 block of `table` is exactly G's table, index for
/// index.
pub fn subgroup_embedding_holds(g: &FiniteGroup, table: &MagmaTable) -> bool {
    let n = g.order();
    if table.order() != 2 * n {
        return false;
    }
    (0..n).all(|a| (0..n).all(|b| table.mul(a, b) == g.mul(a, b)))
}

pub fn subgroup_embedding_check(g: &FiniteGroup) -> bool {
    subgroup_embedding_holds(g, chein_construct(g).magma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, GroupName};
    use crate::table::MoufangVariant;

    fn s3_double() -> (FiniteGroup, FiniteLoop) {
        let g = catalog(&GroupName::Symmetric3).unwrap();
        let l = chein_construct(&g);
        (g, l)
    }

    #[test]
    fn double_of_c2_is_the_klein_four_group() {
        let g = catalog(&GroupName::Cyclic(2)).unwrap();
        let l = chein_construct(&g);
        assert_eq!(l.order(), 4);
        assert!(l.is_associative());
        let v4 = catalog(&GroupName::Product(2, 2)).unwrap();
        assert!(crate::iso::find_isomorphism(&l, v4.as_loop()).is_some());
    }

    #[test]
    fn double_of_s3_is_moufang_but_not_associative() {
        let (_, l) = s3_double();
        assert_eq!(l.order(), 12);
        assert!(l.magma().is_quasigroup());
        assert_eq!(l.magma().find_neutral(), Some(0));
        for v in MoufangVariant::ALL {
            assert!(l.is_moufang(v));
        }
        assert!(l.associativity_counterexample().is_some());
    }

    #[test]
    fn double_of_d4_is_a_nonassociative_moufang_loop_of_order_16() {
        let g = catalog(&GroupName::Dihedral(4)).unwrap();
        let l = chein_construct(&g);
        assert_eq!(l.order(), 16);
        assert!(l.is_moufang(MoufangVariant::First));
        assert!(!l.is_associative());
    }

    #[test]
    fn unit_element_products() {
        let (g, _) = s3_double();
        let u = CheinElement::doubled(g.neutral());
        assert_eq!(chein_mul(&g, u, u), CheinElement::group(g.neutral()));
        let h = CheinElement::group(2);
        let gh = chein_mul(&g, CheinElement::group(1), h);
        assert_eq!(gh, CheinElement::group(g.mul(1, 2)));
    }

    #[test]
    fn doubled_times_group_matches_the_case_formula() {
        // In S3: (x, u-coset) * (xy, plain) = (x (xy)^-1, u-coset) = (y, u-coset).
        let (g, _) = s3_double();
        let x = g.generator_x();
        let xy = g.mul(x, g.generator_y());
        let lhs = chein_mul(&g, CheinElement::doubled(x), CheinElement::group(xy));
        assert_eq!(lhs, CheinElement::doubled(g.generator_y()));
    }

    #[test]
    fn structural_checks_pass_for_catalog_groups()  {
        for name in [
            GroupName::Symmetric3,
            GroupName::Cyclic(4),
            GroupName::Alternating4,
            GroupName::Dicyclic(2),
        ] {
            let g = catalog(&name).unwrap();
            assert!(case_identities_check(&g), "{name} case identities");
            assert!(short_presentation_check(&g), "{name} short presentation");
            assert!(subgroup_embedding_check(&g), "{name} embedding");
        }
    }

    #[test]
    fn corrupted_table_fails_the_structural_checks() {
        let (g, l) = s3_double();

        // One entry changed in the u-block breaks the case identities
        // and the short presentation.
        let mut rows = l.magma().rows().to_vec();
        rows[7][2] = if rows[7][2] == 0 { 1 } else { 0 };
        let broken = MagmaTable::new(rows, l.names().to_vec()).unwrap();
        assert!(!case_identities_hold(&g, &broken));

        let mut rows = l.magma().rows().to_vec();
        let u = chein_index(g.order(), CheinElement::doubled(g.neutral()));
        rows[2][u] = if rows[2][u] == 0 { 1 } else { 0 };
        let broken = MagmaTable::new(rows, l.names().to_vec()).unwrap();
        assert!(!short_presentation_holds(&g, &broken));

        // One entry changed in the embedded block breaks the embedding.
        let mut rows = l.magma().rows().to_vec();
        rows[1][2] = if rows[1][2] == 0 { 1 } else { 0 };
        let broken = MagmaTable::new(rows, l.names().to_vec()).unwrap();
        assert!(!subgroup_embedding_holds(&g, &broken));
    }

    #[test]
    fn involution_census_of_the_order_12_double() {
        let (_, l) = s3_double();
        // 1 neutral, 9 involutions, 2 elements of order 3.
        assert_eq!(l.order_profile(), vec![(1, 1), (2, 9), (3, 2)]);
    }

    #[test]
    fn inverse_of_the_order_3_generator_is_its_square() {
        let (g, l) = s3_double();
        let y = g.generator_y();
        assert_eq!(l.inverse(y).unwrap(), g.mul(y, y));
    }

    #[test]
    fn double_of_s3_is_not_isomorphic_to_the_dihedral_group_of_order_12() {
        let (_, l) = s3_double();
        let d6 = catalog(&GroupName::Dihedral(6)).unwrap();
        assert!(crate::iso::find_isomorphism(&l, d6.as_loop()).is_none());
    }

    #[test]
    fn formula_and_case_dispatch_agree_everywhere() {
        for name in [GroupName::Symmetric3, GroupName::Dicyclic(3)] {
            let g = catalog(&name).unwrap();
            let n = g.order();
            for i in 0..2 * n {
                for j in 0..2 * n {
                    let a = chein_element(n, i);
                    let b = chein_element(n, j);
                    assert_eq!(chein_mul(&g, a, b), chein_mul_cases(&g, a, b));
                }
            }
        }
    }
}
