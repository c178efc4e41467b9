//! Dense arbitrary-precision integer matrices with Hermite and Smith normal
//! forms. Vectors are rows throughout; a map Z^m -> Z^n is an m×n matrix
//! acting by v ↦ v·M.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, value) in row.into_iter().enumerate() {
                m[(i, j)] = value;
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn row_slice(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += p;
                    }
                }
            }
        }
        out
    }

    /// v·M for a row vector v of length `rows`.
    pub fn apply_row(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let m = &self[(i, j)];
                if !m.is_zero() {
                    out[j] += vi * m;
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// row_i -= q * row_r
    fn sub_scaled_row(&mut self, i: usize, r: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * &self[(r, j)];
            self[(i, j)] -= delta;
        }
    }
}

/// Result of a row Hermite normal form computation: `u * input = h` with `u`
/// unimodular, `h` in row echelon form with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

/// Euclidean row reduction with reduction modulo the current pivot.
pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        // Euclid over the entries of column c in rows r.. until one survives.
        loop {
            let mut best: Option<usize> = None;
            for i in r..h.rows() {
                if !h[(i, c)].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h[(i, c)].abs() < h[(b, c)].abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..h.rows() {
                if !h[(i, c)].is_zero() {
                    let q = h[(i, c)].div_floor(&h[(r, c)]);
                    h.sub_scaled_row(i, r, &q);
                    u.sub_scaled_row(i, r, &q);
                    if !h[(i, c)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.sub_scaled_row(i, r, &q);
            u.sub_scaled_row(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Result of a Smith normal form computation: `u * input * v = d` with `u`,
/// `v` unimodular and `d` diagonal with d₁ | d₂ | …. `v_inv` is the inverse
/// of `v`, accumulated alongside.
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let mut v_inv = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    // col_j += q * col_r in d and v; the inverse op on v_inv (row r -= q row j).
    let add_scaled_col = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, j: usize, r: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for i in 0..d.rows() {
            let delta = q * &d[(i, r)];
            d[(i, j)] += delta;
        }
        for i in 0..v.rows() {
            let delta = q * &v[(i, r)];
            v[(i, j)] += delta;
        }
        v_inv.sub_scaled_row(r, j, q);
    };
    let swap_cols = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..d.rows() {
            let tmp = d[(i, a)].clone();
            d[(i, a)] = d[(i, b)].clone();
            d[(i, b)] = tmp;
        }
        for i in 0..v.rows() {
            let tmp = v[(i, a)].clone();
            v[(i, a)] = v[(i, b)].clone();
            v[(i, b)] = tmp;
        }
        v_inv.swap_rows(a, b);
    };

    let mut t = 0;
    while t < n {
        // Find the nonzero entry of least absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows() {
            for j in t..d.cols() {
                if !d[(i, j)].is_zero() {
                    pivot = match pivot {
                        None => Some((i, j)),
                        Some(p) if d[(i, j)].abs() < d[p].abs() => Some((i, j)),
                        keep => keep,
                    };
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        swap_cols(&mut d, &mut v, &mut v_inv, t, pj);

        let mut clean = true;
        for i in t + 1..d.rows() {
            if !d[(i, t)].is_zero() {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.sub_scaled_row(i, t, &q);
                u.sub_scaled_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..d.cols() {
            if !d[(t, j)].is_zero() {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                add_scaled_col(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility d_t | d[(i,j)] for the trailing block.
        let mut divides = true;
        'outer: for i in t + 1..d.rows() {
            for j in t + 1..d.cols() {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    // Fold row i into row t and restart the pivot step.
                    let one = BigInt::one();
                    d.sub_scaled_row(t, i, &-one.clone());
                    u.sub_scaled_row(t, i, &-one);
                    divides = false;
                    break 'outer;
                }
            }
        }
        if !divides {
            continue;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { d, u, v, v_inv }
}

/// Kernel of v ↦ v·M: rows spanning `{v : v·M = 0}`, read off the HNF rows
/// of `u` that correspond to zero rows of `h`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let hnf = hermite_normal_form(m);
    let rank = hnf.pivots.len();
    (rank..m.rows()).map(|i| hnf.u.row(i)).collect()
}

/// One solution x of x·M = b, if any.
pub fn solve_left(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let hnf = hermite_normal_form(m);
    let mut residue = b.to_vec();
    let mut y = vec![BigInt::zero(); m.rows()];
    for (row, &p) in hnf.pivots.iter().enumerate() {
        let (q, r) = residue[p].div_rem(&hnf.h[(row, p)]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for j in 0..m.cols() {
                let delta = &q * &hnf.h[(row, j)];
                residue[j] -= delta;
            }
            y[row] = q;
        }
    }
    if residue.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(hnf.u.apply_row(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hnf_identity_fixed() {
        let m = IntMatrix::identity(2);
        let hnf = hermite_normal_form(&m);
        assert_eq!(hnf.h, IntMatrix::identity(2));
        assert_eq!(hnf.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_zero_matrix() {
        let m = IntMatrix::zero(3, 2);
        let hnf = hermite_normal_form(&m);
        assert!(hnf.h.is_zero());
        assert!(hnf.pivots.is_empty());
    }

    // Oracle: enumerate the sublattices of Z² of index 2 in upper-triangular
    // canonical form and pick the one containing both generators.
    #[test]
    fn hnf_matches_sublattice_enumeration() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4], &[1, 1]]);
        let hnf = hermite_normal_form(&m);
        // |det (2,4),(1,1)| = 2, so the row lattice has index 2 in Z².
        let contains = |a: i64, b: i64, d: i64, v: (i64, i64)| -> bool {
            // rows (a,b),(0,d): solve x*(a,b) + y*(0,d) = v over Z
            v.0 % a == 0 && (v.1 - v.0 / a * b) % d == 0
        };
        let mut matches = Vec::new();
        for (a, b, d) in [(1i64, 0i64, 2i64), (1, 1, 2), (2, 0, 1)] {
            if contains(a, b, d, (2, 4)) && contains(a, b, d, (1, 1)) {
                matches.push((a, b, d));
            }
        }
        assert_eq!(matches, vec![(1, 1, 2)]);
        let expected = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(hnf.h[(i, j)], expected[(i, j)]);
            }
        }
        assert_eq!(hnf.u.mul(&m), hnf.h);
    }

    #[test]
    fn snf_diag_2_3_gives_1_6() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d[(0, 0)], bi(1));
        assert_eq!(snf.d[(1, 1)], bi(6));
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(2));
    }

    #[test]
    fn snf_trivial_cases() {
        let id = IntMatrix::identity(3);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.d, id);
        let z = IntMatrix::zero(2, 2);
        assert!(smith_normal_form(&z).d.is_zero());
    }

    #[test]
    fn snf_divisibility_and_det_on_random_matrices() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=4);
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| bi(rng.gen_range(-9..=9))).collect())
                .collect();
            let m = IntMatrix::from_rows(n, rows);
            let snf = smith_normal_form(&m);
            assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
            assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(n));
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert!(snf.d[(i, j)].is_zero());
                    }
                }
            }
            for i in 1..n {
                let prev = &snf.d[(i - 1, i - 1)];
                let cur = &snf.d[(i, i)];
                if prev.is_zero() {
                    assert!(cur.is_zero());
                } else {
                    assert!((cur % prev).is_zero());
                }
            }
            // |det| preservation: product of diagonal = |det M|.
            let det_d: BigInt = (0..n).map(|i| snf.d[(i, i)].clone()).product();
            let det_m = naive_det(&m);
            assert_eq!(det_d, det_m.abs());
        }
    }

    fn naive_det(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        let mut det = BigInt::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p, sign| {
            let term: BigInt = (0..n).map(|i| m[(i, p[i])].clone()).product();
            if sign {
                det += term;
            } else {
                det -= term;
            }
        });
        det
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
        let n = p.len();
        if k == n {
            let mut sign = true;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        sign = !sign;
                    }
                }
            }
            f(p, sign);
            return;
        }
        for i in k..n {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn left_kernel_and_solve() {
        // map Z² -> Z, (a,b) -> a + b: kernel spanned by (1,-1)
        let m = IntMatrix::from_i64_rows(&[&[1], &[1]]);
        let ker = left_kernel(&m);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert!(v[0] == bi(1) && v[1] == bi(-1) || v[0] == bi(-1) && v[1] == bi(1));

        let m = IntMatrix::from_i64_rows(&[&[2, 1], &[0, 3]]);
        let b = vec![bi(4), bi(8)];
        let x = solve_left(&m, &b).unwrap();
        assert_eq!(m.apply_row(&x), b);
        assert!(solve_left(&IntMatrix::from_i64_rows(&[&[2]]), &[bi(3)]).is_none());
    }

    #[test]
    fn hnf_canonical_under_unimodular_rewrites() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=4);
            let m = IntMatrix::from_rows(
                cols,
                (0..rows).map(|_| (0..cols).map(|_| bi(rng.gen_range(-6..=6))).collect()).collect(),
            );
            let h1 = hermite_normal_form(&m).h;
            // Random unimodular rewrite: shear + swap + sign.
            let mut m2 = m.clone();
            for _ in 0..6 {
                let a = rng.gen_range(0..rows);
                let b = rng.gen_range(0..rows);
                if a != b {
                    let q = bi(rng.gen_range(-3..=3i64));
                    m2.sub_scaled_row(a, b, &q);
                }
                if rng.gen_bool(0.3) {
                    let a = rng.gen_range(0..rows);
                    m2.negate_row(a);
                }
            }
            let h2 = hermite_normal_form(&m2).h;
            assert_eq!(h1, h2);
        }
    }
}
