//! Truncated integral group-ring arithmetic for free groups, lattice models
//! of the ideals r and rf modulo f^n, and dimension subgroup membership both
//! upstairs (free presentation) and downstairs (finite group ring).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fingroup::FiniteGroup;
use crate::intlin::{FgAbelian, IntMatrix, Lattice};
use crate::words::{FreePresentation, Word};

/// A noncommutative monomial in the degree generators X_j = x_j - 1;
/// the empty monomial is 1. Ordered by degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree 1..order-1 over `gens` generators, in graded
/// lexicographic order. This is the coordinate basis of f/f^order.
pub fn monomial_basis(gens: usize, order: usize) -> Vec<Monomial> {
    (1..order).flat_map(|d| monomials_of_degree(gens, d)).collect()
}

/// Element of Z<X_1..X_k>/f^n: finitely many monomials of degree < n with
/// integer coefficients; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedElement {
    gens: usize,
    order: usize,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl TruncatedElement {
    pub fn zero(gens: usize, order: usize) -> Self {
        assert!(order >= 2);
        TruncatedElement { gens, order, coeffs: BTreeMap::new() }
    }

    pub fn one(gens: usize, order: usize) -> Self {
        let mut e = TruncatedElement::zero(gens, order);
        e.coeffs.insert(Monomial::one(), BigInt::one());
        e
    }

    /// X_j = x_j - 1.
    pub fn degree_generator(gens: usize, order: usize, j: usize) -> Self {
        assert!(j < gens);
        let mut e = TruncatedElement::zero(gens, order);
        e.coeffs.insert(Monomial(vec![j]), BigInt::one());
        e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.coeffs.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(&mut self, m: Monomial, c: BigInt) {
        if m.degree() >= self.order || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::TruncationMismatch { left: self.order, right: other.order });
        }
        if self.gens != other.gens {
            return Err(Error::RankMismatch { left: self.gens, right: other.gens });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.insert(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = TruncatedElement::zero(self.gens, self.order);
        for (m, c) in &self.coeffs {
            out.coeffs.insert(m.clone(), -c.clone());
        }
        out
    }

    /// Noncommutative product with all degree >= order terms dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = TruncatedElement::zero(self.gens, self.order);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if ma.degree() + mb.degree() >= self.order {
                    continue;
                }
                out.insert(ma.concat(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut out = TruncatedElement::one(self.gens, self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(out)
    }

    /// Inverse of a unit 1 + u with u of positive minimal degree, via the
    /// truncated Neumann series.
    pub fn inverse_of_unit(&self) -> Result<Self> {
        let one = TruncatedElement::one(self.gens, self.order);
        if self.coefficient(&Monomial::one()) != BigInt::one() {
            return Err(Error::Invalid("can only invert units with constant term 1".into()));
        }
        let u = one.sub(self)?; // 1 - self, positive degree
        let mut out = TruncatedElement::one(self.gens, self.order);
        let mut term = TruncatedElement::one(self.gens, self.order);
        for _ in 1..self.order {
            term = term.mul(&u)?;
            if term.is_zero() {
                break;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Part of degree strictly below `degree`.
    pub fn truncate_below(&self, degree: usize) -> Self {
        let mut out = TruncatedElement::zero(self.gens, degree.max(2));
        for (m, c) in &self.coeffs {
            if m.degree() < degree {
                out.coeffs.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficients on the degree-d monomials, in graded-lex order.
    pub fn homogeneous_coords(&self, degree: usize) -> Vec<BigInt> {
        let mut digits = vec![0usize; degree];
        let mut out = Vec::new();
        if degree == 0 {
            return vec![self.coefficient(&Monomial::one())];
        }
        loop {
            out.push(self.coefficient(&Monomial(digits.clone())));
            let mut i = degree;
            let mut overflow = true;
            while i > 0 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < self.gens {
                    overflow = false;
                    break;
                }
                digits[i] = 0;
            }
            if overflow {
                break;
            }
        }
        out
    }

    /// Coordinates over the full monomial basis of f/f^order (degrees 1..order-1).
    pub fn ideal_coords(&self, basis: &[Monomial]) -> Vec<BigInt> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }
}

/// The full image of a word w: 1 + (w - 1) in Z<X>/f^n, with x_j mapped to
/// 1 + X_j and inverses expanded by the truncated geometric series.
pub fn expand_word(word: &Word, gens: usize, order: usize) -> Result<TruncatedElement> {
    let mut out = TruncatedElement::one(gens, order);
    for &(g, e) in word.letters() {
        if g >= gens {
            return Err(Error::GeneratorIndex { index: g, count: gens });
        }
        let base = TruncatedElement::one(gens, order)
            .add(&TruncatedElement::degree_generator(gens, order, g))?;
        let factor = if e >= 0 { base.pow(e as u64)? } else { base.inverse_of_unit()?.pow((-e) as u64)? };
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// Which ideal to model: r = (R-1)Z[F] or rf.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdealMode {
    R,
    Rf,
}

/// Lattice model of (r + f^n)/f^n or (rf + f^n)/f^n in the monomial
/// coordinates of f/f^n.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub gens: usize,
    pub order: usize,
    pub lattice: Lattice,
}

/// Spanning set: m_L · (expand(relator) - 1) · m_R over monomial pairs with
/// deg m_L + deg m_R <= n - 2 (and deg m_R >= 1 in rf mode). Left and right
/// multiplication by group elements reduces to monomial multiplication
/// modulo higher degree, so this spans the whole ideal image.
pub fn relator_ideal_lattice(p: &FreePresentation, order: usize, mode: IdealMode) -> Result<IdealLattice> {
    if order < 2 {
        return Err(Error::Invalid("truncation order must be at least 2".into()));
    }
    let gens = p.rank();
    let basis = monomial_basis(gens, order);
    let ambient = basis.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut lattice = Lattice::zero(ambient);
    let one = TruncatedElement::one(gens, order);
    for relator in p.relators() {
        let expanded = expand_word(relator, gens, order)?.sub(&one)?;
        if expanded.is_zero() {
            continue;
        }
        for dl in 0..=order.saturating_sub(2) {
            for dr in 0..=(order - 2 - dl) {
                if mode == IdealMode::Rf && dr == 0 {
                    continue;
                }
                for ml in monomials_of_degree(gens, dl) {
                    let left = monomial_element(gens, order, &ml).mul(&expanded)?;
                    for mr in monomials_of_degree(gens, dr) {
                        let product = left.mul(&monomial_element(gens, order, &mr))?;
                        if product.is_zero() {
                            continue;
                        }
                        rows.push(product.ideal_coords(&basis));
                        // Keep the working set compact.
                        if rows.len() >= 4 * ambient.max(8) {
                            let mut all = lattice.basis_rows();
                            all.append(&mut rows);
                            lattice = Lattice::from_rows(ambient, all);
                        }
                    }
                }
            }
        }
    }
    let mut all = lattice.basis_rows();
    all.append(&mut rows);
    Ok(IdealLattice { gens, order, lattice: Lattice::from_rows(ambient, all) })
}

fn monomials_of_degree(gens: usize, degree: usize) -> Vec<Monomial> {
    if degree == 0 {
        return vec![Monomial::one()];
    }
    if gens == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; degree];
    loop {
        out.push(Monomial(digits.clone()));
        let mut i = degree;
        let mut overflow = true;
        while i > 0 {
            i -= 1;
            digits[i] += 1;
            if digits[i] < gens {
                overflow = false;
                break;
            }
            digits[i] = 0;
        }
        if overflow {
            break;
        }
    }
    out
}

fn monomial_element(gens: usize, order: usize, m: &Monomial) -> TruncatedElement {
    let mut out = TruncatedElement::zero(gens, order);
    if m.degree() < order {
        out.coeffs.insert(m.clone(), BigInt::one());
    }
    out
}

/// Membership of w - 1 in (r + f^n)/f^n (or rf mode): decides whether the
/// image of w lies in D_n(G) when mode is `R`.
pub fn dimension_membership_free(
    ideal: &IdealLattice,
    word: &Word,
) -> Result<bool> {
    let expanded = expand_word(word, ideal.gens, ideal.order)?
        .sub(&TruncatedElement::one(ideal.gens, ideal.order))?;
    let basis = monomial_basis(ideal.gens, ideal.order);
    Ok(ideal.lattice.member(&expanded.ideal_coords(&basis)))
}

/// The augmentation-power lattice g^n inside Z^{|G|} and the dimension
/// subgroup D_n(G) = {g : g - 1 in g^n} of a finite group.
pub fn dimension_subgroup_finite(group: &FiniteGroup, order: usize, cap: u64) -> Result<Vec<usize>> {
    let n = group.order();
    if n as u64 > cap {
        return Err(Error::CapExceeded { size: n as u128, cap: cap as u128 });
    }
    let aug_rows: Vec<Vec<BigInt>> = (1..n).map(|g| element_minus_one(n, g)).collect();
    let aug = Lattice::from_rows(n, aug_rows.clone());
    let mut power = aug.clone();
    for _ in 1..order {
        let mut rows = Vec::new();
        for b in power.basis_rows() {
            for a in &aug_rows {
                rows.push(ring_multiply(group, &b, a));
            }
        }
        power = Lattice::from_rows(n, rows);
    }
    let mut members = Vec::new();
    for g in 0..n {
        if power.member(&element_minus_one(n, g)) {
            members.push(g);
        }
    }
    Ok(members)
}

fn element_minus_one(n: usize, g: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[g] += BigInt::one();
    v[0] -= BigInt::one();
    v
}

fn ring_multiply(group: &FiniteGroup, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = group.order();
    let mut out = vec![BigInt::zero(); n];
    for (g, cg) in a.iter().enumerate() {
        if cg.is_zero() {
            continue;
        }
        for (h, ch) in b.iter().enumerate() {
            if ch.is_zero() {
                continue;
            }
            out[group.mul(g, h)] += cg * ch;
        }
    }
    out
}

/// Invariant factors of the quotient f/f^n divided by the ideal lattice,
/// used by the monoadditivity check.
pub fn ideal_quotient_invariants(ideal: &IdealLattice) -> FgAbelian {
    ideal.lattice.quotient_invariants()
}

/// Matrix of the map induced on monomial coordinates by a generator
/// substitution x_j -> image word, i.e. X_m -> prod (expand(image) - 1).
pub fn induced_coordinate_matrix(
    source_gens: usize,
    target_gens: usize,
    order: usize,
    images: &[Word],
) -> Result<IntMatrix> {
    let source_basis = monomial_basis(source_gens, order);
    let target_basis = monomial_basis(target_gens, order);
    let one = TruncatedElement::one(target_gens, order);
    let expanded: Vec<TruncatedElement> = images
        .iter()
        .map(|w| Ok(expand_word(w, target_gens, order)?.sub(&one)?))
        .collect::<Result<_>>()?;
    let mut m = IntMatrix::zero(source_basis.len(), target_basis.len());
    for (row, monomial) in source_basis.iter().enumerate() {
        let mut value = TruncatedElement::one(target_gens, order);
        for &g in &monomial.0 {
            let factor = expanded.get(g).ok_or(Error::ArityMismatch {
                provided: images.len(),
                index: g,
            })?;
            value = value.mul(factor)?;
        }
        for (col, coeff) in value.ideal_coords(&target_basis).into_iter().enumerate() {
            m[(row, col)] = coeff;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup;
    use crate::words::Word;
    use num_bigint::BigInt;

    fn w(raw: &[(usize, i64)]) -> Word {
        Word::reduce(raw.iter().copied())
    }

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn trunc_multiply_examples() {
        let x = TruncatedElement::degree_generator(2, 3, 0);
        let y = TruncatedElement::degree_generator(2, 3, 1);
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.coefficient(&Monomial(vec![0, 1])), bi(1));

        // (1+X)(1-X+X²) = 1 at n = 3
        let one = TruncatedElement::one(1, 3);
        let xx = TruncatedElement::degree_generator(1, 3, 0);
        let a = one.add(&xx).unwrap();
        let b = one.sub(&xx).unwrap().add(&xx.mul(&xx).unwrap()).unwrap();
        assert_eq!(a.mul(&b).unwrap(), one);

        // X² · X = 0 at n = 3
        let x2 = xx.mul(&xx).unwrap();
        assert!(x2.mul(&xx).unwrap().is_zero());
    }

    #[test]
    fn expand_examples() {
        // x -> 1 + X
        let e = expand_word(&Word::generator(0), 1, 3).unwrap();
        assert_eq!(e.coefficient(&Monomial::one()), bi(1));
        assert_eq!(e.coefficient(&Monomial(vec![0])), bi(1));

        // x⁻¹ at n=3 -> 1 - X + X²
        let e = expand_word(&w(&[(0, -1)]), 1, 3).unwrap();
        assert_eq!(e.coefficient(&Monomial(vec![0])), bi(-1));
        assert_eq!(e.coefficient(&Monomial(vec![0, 0])), bi(1));

        // [x,y] at n=3 -> 1 + XY - YX  (oracle: direct truncated product)
        let comm = Word::commutator(&Word::generator(0), &Word::generator(1));
        let direct = {
            let one = TruncatedElement::one(2, 3);
            let x = one.add(&TruncatedElement::degree_generator(2, 3, 0)).unwrap();
            let y = one.add(&TruncatedElement::degree_generator(2, 3, 1)).unwrap();
            x.inverse_of_unit()
                .unwrap()
                .mul(&y.inverse_of_unit().unwrap())
                .unwrap()
                .mul(&x)
                .unwrap()
                .mul(&y)
                .unwrap()
        };
        let e = expand_word(&comm, 2, 3).unwrap();
        assert_eq!(e, direct);
        assert_eq!(e.coefficient(&Monomial::one()), bi(1));
        assert_eq!(e.coefficient(&Monomial(vec![0, 1])), bi(1));
        assert_eq!(e.coefficient(&Monomial(vec![1, 0])), bi(-1));
        assert_eq!(e.coefficient(&Monomial(vec![0])), bi(0));
    }

    #[test]
    fn expand_is_multiplicative_on_random_words() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..500 {
            let len = rng.gen_range(0..6);
            let u = Word::reduce((0..len).map(|_| (rng.gen_range(0..2), rng.gen_range(-2..=2i64))));
            let v = Word::reduce((0..len).map(|_| (rng.gen_range(0..2), rng.gen_range(-2..=2i64))));
            let lhs = expand_word(&u.mul(&v), 2, 4).unwrap();
            let rhs = expand_word(&u, 2, 4).unwrap().mul(&expand_word(&v, 2, 4).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn truncation_coherence() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..100 {
            let u = Word::reduce((0..5).map(|_| (rng.gen_range(0..2), rng.gen_range(-3..=3i64))));
            let big = expand_word(&u, 2, 5).unwrap();
            for m in 2..5 {
                let small = expand_word(&u, 2, m).unwrap();
                assert_eq!(big.truncate_below(m), small.truncate_below(m));
            }
        }
    }

    #[test]
    fn relator_lattice_examples() {
        // No relators -> zero lattice.
        let free = FreePresentation::new(vec!["x".into()], vec![]).unwrap();
        let l = relator_ideal_lattice(&free, 3, IdealMode::R).unwrap();
        assert_eq!(l.lattice.rank(), 0);

        // <x | x²> at n=2: x² - 1 = 2X mod deg 2, so the lattice is 2Z.
        let c2 = FreePresentation::new(vec!["x".into()], vec![w(&[(0, 2)])]).unwrap();
        let l = relator_ideal_lattice(&c2, 2, IdealMode::R).unwrap();
        assert_eq!(l.lattice.basis_rows(), vec![vec![bi(2)]]);

        // <x | x> (trivial group): full lattice at any n.
        let trivial = FreePresentation::new(vec!["x".into()], vec![Word::generator(0)]).unwrap();
        for n in 2..=4 {
            let l = relator_ideal_lattice(&trivial, n, IdealMode::R).unwrap();
            assert_eq!(l.lattice.rank(), n - 1, "full rank at n={n}");
            assert!(l.lattice.contains(&Lattice::full(n - 1)));
        }
    }

    #[test]
    fn rf_mode_is_sublattice_of_r_mode() {
        let p = FreePresentation::new(
            vec!["x".into(), "y".into()],
            vec![w(&[(0, 2)]), w(&[(1, 3)])],
        )
        .unwrap();
        for n in 2..=4 {
            let r = relator_ideal_lattice(&p, n, IdealMode::R).unwrap();
            let rf = relator_ideal_lattice(&p, n, IdealMode::Rf).unwrap();
            assert!(r.lattice.contains(&rf.lattice));
        }
    }

    #[test]
    fn dimension_membership_free_examples() {
        let c2 = FreePresentation::new(vec!["x".into()], vec![w(&[(0, 2)])]).unwrap();
        let ideal = relator_ideal_lattice(&c2, 2, IdealMode::R).unwrap();
        // D₂(C₂) is trivial: X not in 2Z.
        assert!(!dimension_membership_free(&ideal, &Word::generator(0)).unwrap());
        assert!(dimension_membership_free(&ideal, &Word::identity()).unwrap());
        // Words in γ_n(F) always pass.
        let ideal4 = relator_ideal_lattice(&c2, 4, IdealMode::R).unwrap();
        let x = Word::generator(0);
        let gamma2 = Word::commutator(&x, &x.pow(3));
        assert!(dimension_membership_free(&ideal4, &gamma2).unwrap());
    }

    #[test]
    fn dimension_subgroup_finite_examples() {
        let trivial = FiniteGroup::trivial();
        assert_eq!(dimension_subgroup_finite(&trivial, 2, 4096).unwrap(), vec![0]);

        // Oracle: direct lattice computation in Z[C₂]: g² = 2(x-1)Z, x-1 not in it.
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(dimension_subgroup_finite(&c2, 2, 4096).unwrap(), vec![0]);

        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(dimension_subgroup_finite(&c4, 2, 4096).unwrap(), vec![0]);

        // D_n is a normal subgroup containing γ_n; for abelian groupsγ₂ = 1.
        let q8 = fingroup::quaternion8().group;
        let d2 = dimension_subgroup_finite(&q8, 2, 4096).unwrap();
        // D₂ = γ₂ classically; γ₂(Q₈) = {1, -1}.
        assert_eq!(d2.len(), 2);
        let cap = dimension_subgroup_finite(&q8, 2, 4);
        assert!(cap.is_err());
    }

    #[test]
    fn monomial_basis_shape() {
        let basis = monomial_basis(2, 4);
        assert_eq!(basis.len(), 2 + 4 + 8);
        // Graded then lexicographic by generator index.
        assert_eq!(basis[0], Monomial(vec![0]));
        assert_eq!(basis[1], Monomial(vec![1]));
        assert_eq!(basis[2], Monomial(vec![0, 0]));
        assert!(basis.windows(2).all(|p| p[0] < p[1]));
    }
}
