//! Integer sublattices of Z^n in canonical row Hermite form, with the
//! membership, sum, intersection and quotient operations used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::abelian::FgAbelian;
use super::matrix::{hermite_normal_form, left_kernel, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient: usize,
    /// HNF basis, nonzero rows only.
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::zero(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Self {
        for row in &rows {
            assert_eq!(row.len(), ambient, "row length mismatch");
        }
        let m = IntMatrix::from_rows(ambient, rows);
        Lattice::from_matrix(&m)
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        let hnf = hermite_normal_form(m);
        let rank = hnf.pivots.len();
        let basis = IntMatrix::from_rows(m.cols(), (0..rank).map(|i| hnf.h.row(i)).collect());
        Lattice { ambient: m.cols(), basis, pivots: hnf.pivots }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|i| self.basis.row(i)).collect()
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::RankMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// Exact membership by division down the echelon.
    pub fn member(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut residue = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if residue[p].is_zero() {
                continue;
            }
            let (q, r) = residue[p].div_rem(&self.basis[(row, p)]);
            if !r.is_zero() {
                return false;
            }
            for j in p..self.ambient {
                let delta = &q * &self.basis[(row, j)];
                residue[j] -= delta;
            }
        }
        residue.iter().all(Zero::is_zero)
    }

    /// Canonical coset representative: entries at pivot columns reduced into
    /// `[0, pivot)` by floor division.
    pub fn reduce_mod(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut residue = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let q = residue[p].div_floor(&self.basis[(row, p)]);
            if q.is_zero() {
                continue;
            }
            for j in p..self.ambient {
                let delta = &q * &self.basis[(row, j)];
                residue[j] -= delta;
            }
        }
        residue
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        Ok(Lattice::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis);
        let kernel = left_kernel(&stacked);
        let rows = kernel
            .into_iter()
            .map(|k| self.basis.apply_row(&k[..self.rank()]))
            .collect();
        Ok(Lattice::from_rows(self.ambient, rows))
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|i| self.member(&other.basis.row(i)))
    }

    /// Invariant factors of Z^ambient / self.
    pub fn quotient_invariants(&self) -> FgAbelian {
        if self.rank() == 0 {
            return FgAbelian::free(self.ambient);
        }
        let snf = smith_normal_form(&self.basis);
        let mut torsion = Vec::new();
        let mut nonzero = 0;
        for i in 0..self.rank().min(self.ambient) {
            let d = &snf.d[(i, i)];
            if d.is_zero() {
                continue;
            }
            nonzero += 1;
            if *d != BigInt::from(1) {
                torsion.push(d.clone());
            }
        }
        FgAbelian::new(torsion, self.ambient - nonzero)
    }

    /// Image lattice of this lattice under v ↦ v·M.
    pub fn image(&self, m: &IntMatrix) -> Lattice {
        assert_eq!(m.rows(), self.ambient, "map domain mismatch");
        let rows = (0..self.rank()).map(|i| m.apply_row(&self.basis.row(i))).collect();
        Lattice::from_rows(m.cols(), rows)
    }

    /// Invariant factors of self / sub for a sublattice `sub` ⊆ self: express
    /// the sublattice over this basis and read off the quotient.
    pub fn quotient_by(&self, sub: &Lattice) -> Result<FgAbelian> {
        self.check_ambient(sub)?;
        let rows: Vec<Vec<BigInt>> = sub
            .basis_rows()
            .into_iter()
            .map(|r| {
                super::matrix::solve_left(&self.basis, &r)
                    .ok_or(Error::NotSubgroup)
            })
            .collect::<Result<_>>()?;
        Ok(Lattice::from_rows(self.rank(), rows).quotient_invariants())
    }
}

/// `{v in Z^m : v·M in target}` for an m×n matrix `M`.
pub fn preimage_lattice(m: &IntMatrix, target: &Lattice) -> Lattice {
    assert_eq!(m.cols(), target.ambient_rank(), "map codomain mismatch");
    let stacked = m.vstack(target.basis());
    let kernel = left_kernel(&stacked);
    let rows = kernel.into_iter().map(|k| k[..m.rows()].to_vec()).collect();
    Lattice::from_rows(m.rows(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn vec_i64(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| bi(x)).collect()
    }

    #[test]
    fn member_examples() {
        let two_z2 = Lattice::from_rows(2, vec![vec_i64(&[2, 0]), vec_i64(&[0, 2])]);
        assert!(!two_z2.member(&vec_i64(&[1, 0])));
        assert!(two_z2.member(&vec_i64(&[4, -2])));
        assert_eq!(
            two_z2.quotient_invariants(),
            FgAbelian::new(vec![bi(2), bi(2)], 0)
        );
    }

    #[test]
    fn intersect_2z_3z_is_6z() {
        // Oracle: brute scan of small integers.
        let a = Lattice::from_rows(1, vec![vec_i64(&[2])]);
        let b = Lattice::from_rows(1, vec![vec_i64(&[3])]);
        let mut expected = 0;
        for n in 1..100 {
            if n % 2 == 0 && n % 3 == 0 {
                expected = n;
                break;
            }
        }
        assert_eq!(expected, 6);
        let inter = a.intersect(&b).unwrap();
        assert_eq!(inter.basis_rows(), vec![vec_i64(&[6])]);
    }

    #[test]
    fn member_agrees_with_small_enumeration() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..30 {
            let ambient = rng.gen_range(1..=4);
            let nrows = rng.gen_range(1..=3);
            let rows: Vec<Vec<BigInt>> = (0..nrows)
                .map(|_| (0..ambient).map(|_| bi(rng.gen_range(-10..=10))).collect())
                .collect();
            let lat = Lattice::from_rows(ambient, rows.clone());
            // Brute force: all combinations with coefficients in [-8, 8].
            let mut reachable = std::collections::HashSet::new();
            let mut coeffs = vec![-8i64; nrows];
            loop {
                let mut v = vec![BigInt::zero(); ambient];
                for (c, row) in coeffs.iter().zip(rows.iter()) {
                    for (vi, ri) in v.iter_mut().zip(row.iter()) {
                        *vi += bi(*c) * ri;
                    }
                }
                reachable.insert(v);
                let mut i = 0;
                loop {
                    if i == nrows {
                        break;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] <= 8 {
                        break;
                    }
                    coeffs[i] = -8;
                    i += 1;
                }
                if i == nrows {
                    break;
                }
            }
            // Sample small vectors and compare membership with reachability;
            // vectors found reachable must be members, and small members with
            // small coordinates must be reachable.
            for _ in 0..40 {
                let v: Vec<BigInt> = (0..ambient).map(|_| bi(rng.gen_range(-6..=6))).collect();
                if reachable.contains(&v) {
                    assert!(lat.member(&v));
                }
            }
            for v in reachable.iter().take(200) {
                assert!(lat.member(v));
            }
        }
    }

    #[test]
    fn quotient_invariants_examples() {
        let full = Lattice::full(3);
        assert!(full.quotient_invariants().is_trivial());
        let zero = Lattice::zero(2);
        assert_eq!(zero.quotient_invariants(), FgAbelian::free(2));
    }

    #[test]
    fn preimage_and_sum() {
        // map Z² -> Z², (a,b) -> (a+b, 2b); target = 2Z x 2Z
        let m = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 2]]);
        let target = Lattice::from_rows(2, vec![vec_i64(&[2, 0]), vec_i64(&[0, 2])]);
        let pre = preimage_lattice(&m, &target);
        // (a,b) with a+b even and 2b even: a+b even.
        assert!(pre.member(&vec_i64(&[1, 1])));
        assert!(pre.member(&vec_i64(&[2, 0])));
        assert!(!pre.member(&vec_i64(&[1, 0])));
        let s = target.sum(&pre).unwrap();
        assert!(s.contains(&target));
        assert!(s.contains(&pre));
    }
}
