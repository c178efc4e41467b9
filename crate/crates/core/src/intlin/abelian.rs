//! Finitely generated abelian groups in invariant-factor form, presented
//! abelian groups with chosen generators, and the functor calculus on them:
//! tensor, Tor, symmetric powers, and the third Lie cube.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::lattice::{preimage_lattice, Lattice};
use super::matrix::{smith_normal_form, solve_left, IntMatrix};
use crate::error::{Error, Result};

/// Canonical form: torsion invariants d₁ | d₂ | … (each ≥ 2) plus free rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgAbelian {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FgAbelian {
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        for pair in torsion.windows(2) {
            assert!((&pair[1] % &pair[0]).is_zero(), "invariant factors must divide");
        }
        for d in &torsion {
            assert!(*d >= BigInt::from(2), "torsion invariants must be >= 2");
        }
        FgAbelian { torsion, free_rank }
    }

    pub fn trivial() -> Self {
        FgAbelian { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelian { torsion: Vec::new(), free_rank: rank }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order >= 1);
        if order == 1 {
            FgAbelian::trivial()
        } else {
            FgAbelian { torsion: vec![BigInt::from(order)], free_rank: 0 }
        }
    }

    /// Canonicalize an arbitrary list of cyclic orders (0 meaning Z).
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().collect();
        let n = orders.len();
        let mut diag = IntMatrix::zero(n, n);
        for (i, d) in orders.iter().enumerate() {
            diag[(i, i)] = d.clone();
        }
        Lattice::from_matrix(&diag).quotient_invariants()
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Number of generators in the canonical decomposition.
    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of the canonical generator at `index` (zero for a free factor).
    pub fn generator_order(&self, index: usize) -> BigInt {
        if index < self.torsion.len() {
            self.torsion[index].clone()
        } else {
            BigInt::zero()
        }
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }
}

impl std::fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// An abelian group presented as Z^rank modulo an explicit relation lattice,
/// keeping the chosen generators so that natural maps can be written on them.
#[derive(Clone, Debug)]
pub struct PresentedAbelian {
    rank: usize,
    relations: Lattice,
}

impl PresentedAbelian {
    pub fn new(rank: usize, relations: Lattice) -> Self {
        assert_eq!(relations.ambient_rank(), rank, "relation lattice rank mismatch");
        PresentedAbelian { rank, relations }
    }

    pub fn free(rank: usize) -> Self {
        PresentedAbelian { rank, relations: Lattice::zero(rank) }
    }

    pub fn from_relation_rows(rank: usize, rows: Vec<Vec<BigInt>>) -> Self {
        PresentedAbelian { rank, relations: Lattice::from_rows(rank, rows) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn invariants(&self) -> FgAbelian {
        self.relations.quotient_invariants()
    }

    /// Do two coordinate vectors represent the same element?
    pub fn same_element(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.relations.member(&diff)
    }

    /// Kernel of the map to `target` given by `matrix` (row i = image of
    /// generator i). Returns the kernel as a presented group together with
    /// the inclusion of its generators, as vectors in Z^self.rank.
    pub fn kernel_of_map(&self, matrix: &IntMatrix, target: &PresentedAbelian) -> (PresentedAbelian, Vec<Vec<BigInt>>) {
        assert_eq!(matrix.rows(), self.rank);
        assert_eq!(matrix.cols(), target.rank);
        let pre = preimage_lattice(matrix, &target.relations);
        // Kernel group = pre / self.relations, presented on pre's basis.
        let gens = pre.basis_rows();
        let rels = self
            .relations
            .basis_rows()
            .into_iter()
            .map(|r| {
                solve_left(pre.basis(), &r).expect("relations lie inside the preimage lattice")
            })
            .collect();
        (PresentedAbelian::from_relation_rows(gens.len(), rels), gens)
    }

    /// Cokernel of the map from a free group of `source_rank` generators
    /// landing in this group via `matrix`.
    pub fn cokernel_of_map(&self, matrix: &IntMatrix) -> PresentedAbelian {
        assert_eq!(matrix.cols(), self.rank);
        let image_rows = (0..matrix.rows()).map(|i| matrix.row(i)).collect();
        let image = Lattice::from_rows(self.rank, image_rows);
        PresentedAbelian::new(self.rank, self.relations.sum(&image).expect("same ambient"))
    }

    /// Smith decomposition: canonical invariants plus coordinate transforms.
    pub fn smith_basis(&self) -> SmithBasis {
        let rel = if self.relations.rank() == 0 {
            IntMatrix::zero(1.max(1), self.rank)
        } else {
            self.relations.basis().clone()
        };
        let snf = smith_normal_form(&rel);
        // Z^rank / rowspan(R) ≅ Z^rank / rowspan(R·V) via x ↦ x·V, and R·V = U⁻¹·D
        // has row span equal to that of D.
        let mut orders: Vec<BigInt> = Vec::new();
        let diag_len = rel.rows().min(self.rank);
        for i in 0..self.rank {
            if i < diag_len {
                orders.push(snf.d[(i, i)].clone());
            } else {
                orders.push(BigInt::zero());
            }
        }
        // Keep only coordinates with order != 1.
        let kept: Vec<usize> = (0..self.rank).filter(|&i| !orders[i].is_one()).collect();
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for &i in &kept {
            if orders[i].is_zero() {
                free_rank += 1;
            } else {
                torsion.push(orders[i].clone());
            }
        }
        SmithBasis {
            invariants: FgAbelian::new(torsion, free_rank),
            orders: kept.iter().map(|&i| orders[i].clone()).collect(),
            kept,
            v: snf.v,
            v_inv: snf.v_inv,
        }
    }
}

/// Coordinates of a presented group in canonical (Smith) form.
#[derive(Clone, Debug)]
pub struct SmithBasis {
    pub invariants: FgAbelian,
    /// Orders of the kept canonical coordinates (0 = free).
    pub orders: Vec<BigInt>,
    kept: Vec<usize>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithBasis {
    /// Canonical coordinates of a presentation vector.
    pub fn express(&self, vector: &[BigInt]) -> Vec<BigInt> {
        let full = self.v.apply_row(vector);
        self.kept
            .iter()
            .zip(self.orders.iter())
            .map(|(&i, order)| {
                if order.is_zero() {
                    full[i].clone()
                } else {
                    full[i].mod_floor(order)
                }
            })
            .collect()
    }

    /// Presentation vector representing canonical generator `index`.
    pub fn generator_vector(&self, index: usize) -> Vec<BigInt> {
        self.v_inv.row(self.kept[index])
    }
}

/// A map between canonical-form groups; row j is the image of source
/// generator j in the target's canonical coordinates.
#[derive(Clone, Debug)]
pub struct AbelianMap {
    pub source: FgAbelian,
    pub target: FgAbelian,
    pub matrix: IntMatrix,
}

impl AbelianMap {
    /// Validates that each generator image has order dividing the source
    /// generator's order.
    pub fn new(source: FgAbelian, target: FgAbelian, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != source.generator_count() || matrix.cols() != target.generator_count() {
            return Err(Error::RankMismatch { left: matrix.rows(), right: source.generator_count() });
        }
        for j in 0..source.generator_count() {
            let d = source.generator_order(j);
            if d.is_zero() {
                continue;
            }
            for t in 0..target.generator_count() {
                let m = target.generator_order(t);
                let scaled = &d * &matrix[(j, t)];
                let ok = if m.is_zero() { scaled.is_zero() } else { (&scaled % &m).is_zero() };
                if !ok {
                    return Err(Error::NotHomomorphism(format!(
                        "image of generator {j} has order not dividing {d}"
                    )));
                }
            }
        }
        Ok(AbelianMap { source, target, matrix })
    }
}

/// Tensor product and Tor of canonical-form groups, by bilinearity from
/// Z/a ⊗ Z/b = Tor(Z/a, Z/b) = Z/gcd(a,b), Z ⊗ A = A and Tor(Z, A) = 0.
pub fn tensor_and_tor(a: &FgAbelian, b: &FgAbelian) -> (FgAbelian, FgAbelian) {
    let mut tensor_orders = Vec::new();
    let mut tor_orders = Vec::new();
    let a_orders: Vec<BigInt> = (0..a.generator_count()).map(|i| a.generator_order(i)).collect();
    let b_orders: Vec<BigInt> = (0..b.generator_count()).map(|i| b.generator_order(i)).collect();
    for x in &a_orders {
        for y in &b_orders {
            if x.is_zero() && y.is_zero() {
                tensor_orders.push(BigInt::zero());
            } else if x.is_zero() {
                tensor_orders.push(y.clone());
            } else if y.is_zero() {
                tensor_orders.push(x.clone());
            } else {
                tensor_orders.push(x.gcd(y));
                tor_orders.push(x.gcd(y));
            }
        }
    }
    (
        FgAbelian::from_cyclic_orders(tensor_orders),
        FgAbelian::from_cyclic_orders(tor_orders),
    )
}

/// Multisets of size `k` over `0..n`, in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

fn multiset_index(multisets: &[Vec<usize>], m: &[usize]) -> usize {
    let mut sorted = m.to_vec();
    sorted.sort_unstable();
    multisets.binary_search(&sorted).expect("multiset in range")
}

/// Symmetric power S^k of a presented group, k in {2, 3}. For a presentation
/// Z^m -> Z^n -> A -> 0 this is the cokernel of
/// Z^m ⊗ S^{k-1}(Z^n) -> S^k(Z^n), generators indexed by degree-k multisets.
pub fn sym_power(a: &PresentedAbelian, k: usize) -> PresentedAbelian {
    assert!(k == 2 || k == 3, "only S^2 and S^3 are supported");
    let n = a.rank();
    let basis = multisets(n, k);
    let lower = multisets(n, k - 1);
    let mut rows = Vec::new();
    for rel in a.relations().basis_rows() {
        for mu in &lower {
            let mut row = vec![BigInt::zero(); basis.len()];
            for (i, coeff) in rel.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut m = mu.clone();
                m.push(i);
                row[multiset_index(&basis, &m)] += coeff;
            }
            rows.push(row);
        }
    }
    PresentedAbelian::from_relation_rows(basis.len(), rows)
}

/// S²(A) ⊗ A as a presented group, with generators indexed by
/// (2-multiset, factor index) pairs in lexicographic order.
pub fn sym2_tensor_self(a: &PresentedAbelian) -> PresentedAbelian {
    sym2_tensor(a, a)
}

/// S²(A) ⊗ B with B presented; generators (2-multiset over A, B-generator).
pub fn sym2_tensor(a: &PresentedAbelian, b: &PresentedAbelian) -> PresentedAbelian {
    let s2 = sym_power(a, 2);
    let pairs = multisets(a.rank(), 2);
    let rank = pairs.len() * b.rank();
    let mut rows = Vec::new();
    for rel in s2.relations().basis_rows() {
        for l in 0..b.rank() {
            let mut row = vec![BigInt::zero(); rank];
            for (p, coeff) in rel.iter().enumerate() {
                row[p * b.rank() + l] = coeff.clone();
            }
            rows.push(row);
        }
    }
    for rel in b.relations().basis_rows() {
        for p in 0..pairs.len() {
            let mut row = vec![BigInt::zero(); rank];
            for (l, coeff) in rel.iter().enumerate() {
                row[p * b.rank() + l] = coeff.clone();
            }
            rows.push(row);
        }
    }
    PresentedAbelian::from_relation_rows(rank, rows)
}

/// Multiplication map S²(A) ⊗ A -> S³(A) on presentation generators.
pub fn sym2_tensor_multiplication(a: &PresentedAbelian) -> IntMatrix {
    let n = a.rank();
    let pairs = multisets(n, 2);
    let triples = multisets(n, 3);
    let mut m = IntMatrix::zero(pairs.len() * n, triples.len());
    for (p, pair) in pairs.iter().enumerate() {
        for l in 0..n {
            let mut t = pair.clone();
            t.push(l);
            m[(p * n + l, multiset_index(&triples, &t))] = BigInt::one();
        }
    }
    m
}

/// The third Lie cube L³(A), realized as the kernel of the multiplication
/// map S²(A) ⊗ A -> S³(A), together with its inclusion.
pub fn lie_cube(a: &PresentedAbelian) -> Result<(FgAbelian, AbelianMap)> {
    let t = sym2_tensor_self(a);
    let s3 = sym_power(a, 3);
    let mult = sym2_tensor_multiplication(a);
    let (kernel, gens) = t.kernel_of_map(&mult, &s3);
    let kernel_basis = kernel.smith_basis();
    let target_basis = t.smith_basis();
    let count = kernel_basis.invariants.generator_count();
    let mut matrix = IntMatrix::zero(count, target_basis.invariants.generator_count());
    for i in 0..count {
        // Canonical kernel generator, lifted to T's presentation coordinates.
        let coeffs = kernel_basis.generator_vector(i);
        let mut lift = vec![BigInt::zero(); t.rank()];
        for (c, g) in coeffs.iter().zip(gens.iter()) {
            for (l, gi) in lift.iter_mut().zip(g.iter()) {
                *l += c * gi;
            }
        }
        for (j, value) in target_basis.express(&lift).into_iter().enumerate() {
            matrix[(i, j)] = value;
        }
    }
    let witness = AbelianMap::new(
        kernel_basis.invariants.clone(),
        target_basis.invariants,
        matrix,
    )?;
    Ok((kernel_basis.invariants, witness))
}
