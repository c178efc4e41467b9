//! Finite groups as multiplication tables, with the small constructors the
//! corpus and the category machinery need.

use crate::error::{Error, Result};
use crate::words::Word;

/// A finite group given by its multiplication table. Element 0 is the
/// identity. The group laws are validated on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::Invalid("empty multiplication table".into()));
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Invalid("multiplication table is not square over 0..n".into()));
            }
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(Error::Invalid("element 0 is not an identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a][b] == 0 {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX || mul[inv[a]][a] != 0 {
                return Err(Error::Invalid(format!("element {a} has no two-sided inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Invalid(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { mul, inv })
    }

    pub fn trivial() -> Self {
        FiniteGroup { mul: vec![vec![0]], inv: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv[a] } else { a };
        let mut out = 0;
        for _ in 0..e.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv[by], x), by)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Closure of a subset into a subgroup (sorted element list).
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order()];
        in_set[0] = true;
        let mut elements = vec![0usize];
        let mut queue: Vec<usize> = seed.to_vec();
        while let Some(x) = queue.pop() {
            if in_set[x] {
                continue;
            }
            in_set[x] = true;
            elements.push(x);
            queue.push(self.inv[x]);
            let snapshot = elements.clone();
            for &y in &snapshot {
                queue.push(self.mul(x, y));
                queue.push(self.mul(y, x));
            }
        }
        // One more saturation pass: products of everything found so far.
        loop {
            let mut added = false;
            let snapshot = elements.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    let p = self.mul(x, y);
                    if !in_set[p] {
                        in_set[p] = true;
                        elements.push(p);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        elements.sort_unstable();
        elements
    }

    /// All subgroups, as sorted element lists (only practical for tiny groups).
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut found: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        found.insert(vec![0]);
        // Closing under single and double generators reaches every subgroup
        // of the tiny groups used here only when iterated; saturate instead.
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        while let Some(sub) = frontier.pop() {
            for g in 0..n {
                if sub.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seed = sub.clone();
                seed.push(g);
                let closed = self.subgroup_closure(&seed);
                if found.insert(closed.clone()) {
                    frontier.push(closed);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        subgroup.iter().all(|&x| {
            (0..self.order()).all(|g| subgroup.binary_search(&self.conjugate(x, g)).is_ok())
        })
    }

    /// Direct product, elements indexed as a * |B| + b.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut mul = vec![vec![0usize; n]; n];
        for x1 in 0..na {
            for y1 in 0..nb {
                for x2 in 0..na {
                    for y2 in 0..nb {
                        mul[x1 * nb + y1][x2 * nb + y2] = a.mul(x1, x2) * nb + b.mul(y1, y2);
                    }
                }
            }
        }
        FiniteGroup::from_table(mul).expect("direct product is a group")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(mul).expect("cyclic group table")
    }

    /// Quotient by a normal subgroup: returns (quotient, projection).
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for &h in normal {
                coset_of[self.mul(g, h)] = c;
            }
            reps.push(g);
        }
        // Identity coset must be index 0; element 0 is in the coset of reps[coset_of[0]].
        if coset_of[0] != 0 {
            let zero = coset_of[0];
            for c in coset_of.iter_mut() {
                if *c == 0 {
                    *c = zero;
                } else if *c == zero {
                    *c = 0;
                }
            }
            reps.swap(0, zero);
        }
        let m = reps.len();
        let mut mul = vec![vec![0usize; m]; m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i][j] = coset_of[self.mul(a, b)];
            }
        }
        Ok((FiniteGroup::from_table(mul)?, coset_of))
    }
}

impl FiniteGroup {
    /// A smallest generating subset, found by brute force over subsets in
    /// increasing size (practical only for tiny groups).
    pub fn minimal_generating_set(&self) -> Vec<usize> {
        let n = self.order();
        if n == 1 {
            return Vec::new();
        }
        for size in 1..n {
            let mut found: Option<Vec<usize>> = None;
            subsets_of_size(n - 1, size, &mut |combo| {
                if found.is_some() {
                    return;
                }
                let candidate: Vec<usize> = combo.iter().map(|&i| i + 1).collect();
                if self.subgroup_closure(&candidate).len() == n {
                    found = Some(candidate);
                }
            });
            if let Some(gens) = found {
                return gens;
            }
        }
        (1..n).collect()
    }

    /// Express every element as a word in the given generators (indices into
    /// `gens`), by breadth-first search.
    pub fn words_in_generators(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (i, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().expect("visited");
                    w.push(i);
                    words[y] = Some(w);
                    queue.push(y);
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators generate")).collect()
    }
}

/// All homomorphisms source -> target, as element maps. Enumerates image
/// tuples on a minimal generating set and keeps the consistent extensions.
pub fn all_homs(source: &FiniteGroup, target: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = source.minimal_generating_set();
    let words = source.words_in_generators(&gens);
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    loop {
        let map: Vec<usize> = words
            .iter()
            .map(|w| w.iter().fold(target.identity(), |acc, &i| target.mul(acc, images[i])))
            .collect();
        let is_hom = (0..source.order())
            .all(|x| (0..source.order()).all(|y| map[source.mul(x, y)] == target.mul(map[x], map[y])));
        if is_hom {
            out.push(map);
        }
        let mut i = gens.len();
        let mut done = true;
        while i > 0 {
            i -= 1;
            images[i] += 1;
            if images[i] < target.order() {
                done = false;
                break;
            }
            images[i] = 0;
        }
        if done || gens.is_empty() {
            break;
        }
    }
    out
}

/// The automorphism group of a tiny group: the table of Aut(A) under
/// composition (mul(i, j) applies j first) plus the automorphisms themselves.
pub fn automorphism_group(a: &FiniteGroup) -> (FiniteGroup, Vec<Vec<usize>>) {
    let mut autos: Vec<Vec<usize>> = all_homs(a, a)
        .into_iter()
        .filter(|map| {
            let mut seen = vec![false; a.order()];
            map.iter().all(|&x| {
                if seen[x] {
                    false
                } else {
                    seen[x] = true;
                    true
                }
            })
        })
        .collect();
    // Identity automorphism first, so it sits at index 0 of the table.
    let id: Vec<usize> = (0..a.order()).collect();
    let pos = autos.iter().position(|m| *m == id).expect("identity is an automorphism");
    autos.swap(0, pos);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        autos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let n = autos.len();
    let mut mul = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let composed: Vec<usize> = (0..a.order()).map(|x| autos[i][autos[j][x]]).collect();
            mul[i][j] = index[&composed];
        }
    }
    (FiniteGroup::from_table(mul).expect("Aut is a group"), autos)
}

fn subsets_of_size(n: usize, size: usize, visit: &mut impl FnMut(&[usize])) {
    let mut combo: Vec<usize> = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: usize, combo: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if combo.len() == size {
            visit(combo);
            return;
        }
        for i in start..n {
            combo.push(i);
            rec(n, size, i + 1, combo, visit);
            combo.pop();
        }
    }
    rec(n, size, 0, &mut combo, visit);
}

/// A finite group generated by permutations, with one shortest word lift per
/// element recorded during the closure.
pub struct PermutationGroup {
    pub group: FiniteGroup,
    /// Word in the abstract generators lifting each element.
    pub lifts: Vec<Word>,
}

/// Breadth-first closure of the permutation generators. Element 0 is the
/// identity; elements are numbered in discovery order.
pub fn from_permutation_generators(degree: usize, generators: &[Vec<usize>]) -> Result<PermutationGroup> {
    for g in generators {
        if g.len() != degree {
            return Err(Error::Invalid("permutation degree mismatch".into()));
        }
        let mut seen = vec![false; degree];
        for &img in g {
            if img >= degree || seen[img] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[img] = true;
        }
    }
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> {
        // (a then b): x -> b[a[x]]
        a.iter().map(|&x| b[x]).collect()
    };
    let id: Vec<usize> = (0..degree).collect();
    let mut elements: Vec<Vec<usize>> = vec![id.clone()];
    let mut index: std::collections::HashMap<Vec<usize>, usize> = std::collections::HashMap::new();
    index.insert(id, 0);
    let mut lifts: Vec<Word> = vec![Word::identity()];
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        for (gi, g) in generators.iter().enumerate() {
            let next = compose(&current, g);
            if !index.contains_key(&next) {
                index.insert(next.clone(), elements.len());
                lifts.push(lifts[head].mul(&Word::generator(gi)));
                elements.push(next);
            }
        }
        head += 1;
    }
    let n = elements.len();
    let mut mul = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = compose(&elements[a], &elements[b]);
            mul[a][b] = index[&p];
        }
    }
    Ok(PermutationGroup { group: FiniteGroup::from_table(mul)?, lifts })
}

/// S₃ generated by x = (0 1 2) and y = (0 1).
pub fn symmetric3() -> PermutationGroup {
    from_permutation_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]]).expect("S3")
}

/// Dihedral group of order 8, x a rotation of order 4, y a reflection.
pub fn dihedral8() -> PermutationGroup {
    from_permutation_generators(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).expect("D4")
}

/// Quaternion group of order 8 via its regular action: elements
/// {1, i, j, k, -1, -i, -j, -k}, x = i, y = j.
pub fn quaternion8() -> PermutationGroup {
    // Right multiplication by i and j on the ordering above.
    // 1·i=i, i·i=-1, j·i=-k, k·i=j, -1·i=-i, -i·i=1, -j·i=k, -k·i=-j
    let right_i = vec![1, 4, 7, 2, 5, 0, 3, 6];
    // 1·j=j, i·j=k, j·j=-1, k·j=-i, -1·j=-j, -i·j=-k, -j·j=1, -k·j=i
    let right_j = vec![2, 3, 4, 5, 6, 7, 0, 1];
    let pg = from_permutation_generators(8, &[right_i, right_j]).expect("Q8");
    assert_eq!(pg.group.order(), 8);
    pg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_product() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.element_order(1), 2);
        let v4 = FiniteGroup::direct_product(&c2, &c2);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert_eq!(v4.all_subgroups().len(), 5);
    }

    #[test]
    fn named_groups_have_expected_structure() {
        let s3 = symmetric3();
        assert_eq!(s3.group.order(), 6);
        assert!(!s3.group.is_abelian());
        assert_eq!(s3.group.center().len(), 1);

        let d4 = dihedral8();
        assert_eq!(d4.group.order(), 8);
        assert_eq!(d4.group.center().len(), 2);
        // x has order 4, y order 2, (xy)² = 1.
        let x = 1;
        assert_eq!(d4.lifts[x], Word::generator(0));
        assert_eq!(d4.group.element_order(x), 4);

        let q8 = quaternion8();
        assert_eq!(q8.group.order(), 8);
        assert_eq!(q8.group.center().len(), 2);
        // Every element of order 4, except ±1.
        let orders: Vec<usize> = (0..8).map(|e| q8.group.element_order(e)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
    }

    #[test]
    fn q8_relators_hold() {
        let q8 = quaternion8();
        let g = &q8.group;
        // Find x, y as the images of the two generators.
        let x = (0..8).find(|&e| q8.lifts[e] == Word::generator(0)).unwrap();
        let y = (0..8).find(|&e| q8.lifts[e] == Word::generator(1)).unwrap();
        // x⁴ = 1, y² = x², y⁻¹xyx = 1
        assert_eq!(g.pow(x, 4), 0);
        assert_eq!(g.pow(y, 2), g.pow(x, 2));
        let conj = g.mul(g.mul(g.inv(y), x), y);
        assert_eq!(g.mul(conj, x), 0);
    }

    #[test]
    fn quotient_of_d4_by_center() {
        let d4 = dihedral8().group;
        let center = d4.center();
        let (q, proj) = d4.quotient(&center).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert_eq!(proj[0], 0);
        // Klein four group: every nontrivial element has order 2.
        assert!((1..4).all(|e| q.element_order(e) == 2));
    }

    #[test]
    fn broken_table_is_rejected() {
        // 2×2 table that is not associative / lacks identity structure.
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(bad).is_err());
    }
}
