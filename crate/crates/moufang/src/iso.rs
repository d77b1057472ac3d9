//! Isomorphism testing for loop tables by backtracking over generator
//! images, pruned by element-order profiles.

use crate::table::FiniteLoop;

/// A verified multiplicative bijection between two loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    /// `mapping[a]` is the image of element `a`.
    pub mapping: Vec<usize>,
}

impl IsoWitness {
    /// Direct n^2 verification of the homomorphism property plus
    /// bijectivity and neutral preservation.
    pub fn verify(&self, a: &FiniteLoop, b: &FiniteLoop) -> bool {
        let n = a.order();
        if b.order() != n || self.mapping.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &image in &self.mapping {
            if image >= n || hit[image] {
                return false;
            }
            hit[image] = true;
        }
        if self.mapping[a.neutral()] != b.neutral() {
            return false;
        }
        for p in 0..n {
            for q in 0..n {
                if self.mapping[a.mul(p, q)] != b.mul(self.mapping[p], self.mapping[q]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Searches for an isomorphism from `a` onto `b`.
///
/// A greedy generating sequence of `a` is chosen in index order; the
/// search backtracks over images of those generators, filtered by
/// element order, and extends each assignment multiplicatively. The
/// result is deterministic for a fixed element ordering of the inputs.
pub fn find_isomorphism(a: &FiniteLoop, b: &FiniteLoop) -> Option<IsoWitness> {
    if a.order() != b.order() {
        return None;
    }
    if a.order_profile() != b.order_profile() {
        return None;
    }
    let generators = generating_sequence(a);
    let orders_a: Vec<usize> = (0..a.order()).map(|e| a.element_order(e)).collect();
    let orders_b: Vec<usize> = (0..b.order()).map(|e| b.element_order(e)).collect();

    let mut images = Vec::with_capacity(generators.len());
    let found = assign(a, b, &generators, &orders_a, &orders_b, &mut images);
    found.filter(|w| w.verify(a, b))
}

/// Greedy generating sequence: repeatedly adjoin the smallest element
/// outside the closure of what was picked so far.
fn generating_sequence(l: &FiniteLoop) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = l.generate_subloop(&[]);
    while closure.len() < l.order() {
        let next = (0..l.order())
            .find(|e| !closure.contains(e))
            .expect("closure is a proper subset");
        gens.push(next);
        closure = l.generate_subloop(&gens);
    }
    gens
}

fn assign(
    a: &FiniteLoop,
    b: &FiniteLoop,
    generators: &[usize],
    orders_a: &[usize],
    orders_b: &[usize],
    images: &mut Vec<usize>,
) -> Option<IsoWitness> {
    if images.len() == generators.len() {
        return extend(a, b, generators, images);
    }
    let gen = generators[images.len()];
    for candidate in 0..b.order() {
        if orders_b[candidate] != orders_a[gen] {
            continue;
        }
        if images.contains(&candidate) {
            continue;
        }
        images.push(candidate);
        if let Some(witness) = assign(a, b, generators, orders_a, orders_b, images) {
            return Some(witness);
        }
        images.pop();
    }
    None
}

/// Extends generator images to a full map by closing under products.
/// Every element of `a` is a product expression in the generators, so
/// the extension is forced; any conflict rules the assignment out.
fn extend(
    a: &FiniteLoop,
    b: &FiniteLoop,
    generators: &[usize],
    images: &[usize],
) -> Option<IsoWitness> {
    let n = a.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let set = |map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, from: usize, to: usize| {
        match map[from] {
            Some(existing) => existing == to,
            None => {
                if used[to] {
                    false
                } else {
                    map[from] = Some(to);
                    used[to] = true;
                    true
                }
            }
        }
    };
    if !set(&mut map, &mut used, a.neutral(), b.neutral()) {
        return None;
    }
    for (&g, &img) in generators.iter().zip(images) {
        if !set(&mut map, &mut used, g, img) {
            return None;
        }
    }
    let mut defined: Vec<usize> = (0..n).filter(|&e| map[e].is_some()).collect();
    let mut frontier = 0;
    while frontier < defined.len() {
        let p = defined[frontier];
        frontier += 1;
        for i in 0..defined.len() {
            let q = defined[i];
            for (from, to) in [
                (a.mul(p, q), b.mul(map[p].unwrap(), map[q].unwrap())),
                (a.mul(q, p), b.mul(map[q].unwrap(), map[p].unwrap())),
            ] {
                let fresh = map[from].is_none();
                if !set(&mut map, &mut used, from, to) {
                    return None;
                }
                if fresh {
                    defined.push(from);
                }
            }
        }
    }
    if defined.len() < n {
        return None;
    }
    Some(IsoWitness {
        mapping: map.into_iter().map(|m| m.unwrap()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::MagmaTable;

    fn cyclic(n: usize) -> FiniteLoop {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteLoop::new(MagmaTable::with_default_names(table).unwrap(), 0).unwrap()
    }

    /// C4 with elements listed in a shuffled order.
    fn cyclic4_relabeled() -> FiniteLoop {
        let perm = [2usize, 0, 3, 1]; // old index -> new index
        let mut table = vec![vec![0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                table[perm[a]][perm[b]] = perm[(a + b) % 4];
            }
        }
        FiniteLoop::new(MagmaTable::with_default_names(table).unwrap(), perm[0]).unwrap()
    }

    fn klein_four() -> FiniteLoop {
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        FiniteLoop::new(MagmaTable::with_default_names(table).unwrap(), 0).unwrap()
    }

    #[test]
    fn relabeled_cyclic_group_is_isomorphic() {
        let witness = find_isomorphism(&cyclic(4), &cyclic4_relabeled()).expect("isomorphic");
        assert!(witness.verify(&cyclic(4), &cyclic4_relabeled()));
    }

    #[test]
    fn c4_and_v4_are_not_isomorphic() {
        assert!(find_isomorphism(&cyclic(4), &klein_four()).is_none());
    }

    #[test]
    fn different_orders_are_not_isomorphic() {
        assert!(find_isomorphism(&cyclic(4), &cyclic(5)).is_none());
    }

    #[test]
    fn identity_map_is_found_on_equal_tables() {
        let witness = find_isomorphism(&klein_four(), &klein_four()).unwrap();
        assert!(witness.verify(&klein_four(), &klein_four()));
    }
}
