//! Weighted polycyclic presentations for finitely generated nilpotent groups
//! of class <= 4: collection-based normal forms, subgroups via induced
//! generating sequences, normal closures, commutator subgroups, quotients,
//! and the lower central series.

mod free;
mod quotient;
mod subgroup;

pub use free::{free_nilpotent_pc, witt_number, BasicCommutator, FreeNilpotent};
pub use quotient::{quotient_pc, PcHom, PcQuotient};
pub use subgroup::{PcSubgroup, SectionPresentation};

use crate::config::CLASS_CAP;
use crate::error::{Error, Result};

pub(crate) fn div_floor_i(a: i128, b: i128) -> i128 {
    num_integer::Integer::div_floor(&a, &b)
}

/// Exponent vector of an element in pc-generator normal form. Entries at
/// coordinates with finite relative order lie in [0, order).
pub type PcVec = Vec<i128>;

/// A weighted polycyclic presentation: generators a_1..a_s with
/// nondecreasing weights, power relations a_i^{e_i} = tail for finite
/// relative orders, and commutator relations [a_j, a_i] = tail (j > i) whose
/// tails involve only generators of weight >= weight(i) + weight(j).
#[derive(Clone, Debug)]
pub struct PcPresentation {
    pub weights: Vec<usize>,
    pub orders: Vec<Option<i128>>,
    pub power_tails: Vec<Option<PcVec>>,
    /// comm_tails[j][i] for j > i; `None` means the commutator is trivial.
    pub comm_tails: Vec<Vec<Option<PcVec>>>,
    pub class: usize,
}

impl PcPresentation {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn comm_tail(&self, j: usize, i: usize) -> Option<&PcVec> {
        self.comm_tails[j][i].as_ref()
    }

    fn structural_check(&self) -> Result<()> {
        let s = self.len();
        if self.orders.len() != s || self.power_tails.len() != s || self.comm_tails.len() != s {
            return Err(Error::Inconsistent("field lengths disagree".into()));
        }
        for w in self.weights.windows(2) {
            if w[0] > w[1] {
                return Err(Error::Inconsistent("weights must be nondecreasing".into()));
            }
        }
        if self.weights.iter().any(|&w| w == 0 || w > self.class) {
            return Err(Error::Inconsistent("weights must lie in 1..=class".into()));
        }
        if self.class > CLASS_CAP {
            return Err(Error::ClassCap { requested: self.class, cap: CLASS_CAP });
        }
        for i in 0..s {
            match (self.orders[i], &self.power_tails[i]) {
                (Some(m), tail) => {
                    if m < 2 {
                        return Err(Error::Inconsistent(format!("relative order {m} < 2")));
                    }
                    if let Some(t) = tail {
                        if t.len() != s || t.iter().take(i + 1).any(|&x| x != 0) {
                            return Err(Error::Inconsistent(format!(
                                "power tail of generator {i} must sit in higher generators"
                            )));
                        }
                    }
                }
                (None, Some(_)) => {
                    return Err(Error::Inconsistent(format!(
                        "generator {i} has a power tail but infinite order"
                    )));
                }
                (None, None) => {}
            }
            if self.comm_tails[i].len() != i {
                return Err(Error::Inconsistent("commutator table shape mismatch".into()));
            }
            for j2 in 0..i {
                if let Some(t) = &self.comm_tails[i][j2] {
                    if t.len() != s {
                        return Err(Error::Inconsistent("commutator tail length mismatch".into()));
                    }
                    let min_weight = self.weights[i] + self.weights[j2];
                    for (p, &x) in t.iter().enumerate() {
                        if x != 0 && (p <= i || self.weights[p] < min_weight) {
                            return Err(Error::Inconsistent(format!(
                                "commutator tail [{i},{j2}] has support at generator {p}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A consistent weighted pc presentation together with its collection data.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    /// conj[g][j - g - 1] = normal form of a_g^{-1} a_j a_g.
    conj: Vec<Vec<PcVec>>,
    /// conj_inv[g][j - g - 1] = normal form of a_g a_j a_g^{-1}.
    conj_inv: Vec<Vec<PcVec>>,
    /// Whether conjugation by a_g fixes every deeper generator.
    conj_trivial: Vec<bool>,
}

impl PcGroup {
    /// Validates the presentation: structure, tail shapes, and the collection
    /// overlap tests (triple overlaps and power-commutator compatibility).
    pub fn new(pres: PcPresentation) -> Result<PcGroup> {
        pres.structural_check()?;
        let group = PcGroup::new_unchecked(pres);
        group.check_overlaps()?;
        Ok(group)
    }

    fn new_unchecked(pres: PcPresentation) -> PcGroup {
        let s = pres.len();
        let conj_trivial: Vec<bool> =
            (0..s).map(|g| (g + 1..s).all(|j| pres.comm_tail(j, g).is_none())).collect();
        let mut group =
            PcGroup { pres, conj: vec![Vec::new(); s], conj_inv: vec![Vec::new(); s], conj_trivial };
        // Positive conjugates come straight off the table.
        for g in 0..s {
            let mut images = Vec::with_capacity(s - g - 1);
            for j in g + 1..s {
                let mut img = vec![0i128; s];
                img[j] = 1;
                if let Some(t) = group.pres.comm_tail(j, g) {
                    for (p, &x) in t.iter().enumerate() {
                        img[p] += x;
                    }
                }
                images.push(img);
            }
            group.conj[g] = images;
        }
        // Inverse conjugates need collection at strictly deeper positions,
        // so fill them in from the last generator backwards.
        for g in (0..s).rev() {
            group.conj_inv[g] = vec![vec![0i128; s]; s - g - 1];
            for j in (g + 1..s).rev() {
                // a_g a_j a_g^{-1} = a_j · (a_g t^{-1} a_g^{-1}) with t the
                // commutator tail; the correction lives above weight(j).
                let mut img = vec![0i128; s];
                img[j] = 1;
                if let Some(t) = group.pres.comm_tail(j, g) {
                    let t_inv = group.inv(t);
                    let corrected = group.conj_power(&t_inv, g, -1);
                    img = group.mul(&img, &corrected);
                }
                group.conj_inv[g][j - g - 1] = img;
            }
        }
        group
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn len(&self) -> usize {
        self.pres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pres.is_empty()
    }

    pub fn class(&self) -> usize {
        self.pres.class
    }

    pub fn identity(&self) -> PcVec {
        vec![0; self.len()]
    }

    pub fn generator(&self, i: usize) -> PcVec {
        let mut v = self.identity();
        v[i] = 1;
        v
    }

    pub fn is_identity(&self, x: &PcVec) -> bool {
        x.iter().all(|&e| e == 0)
    }

    pub fn lead(&self, x: &PcVec) -> Option<usize> {
        x.iter().position(|&e| e != 0)
    }

    /// Multiply two normal forms.
    pub fn mul(&self, x: &PcVec, y: &PcVec) -> PcVec {
        let mut out = x.clone();
        for g in 0..self.len() {
            if y[g] != 0 {
                out = self.mul_gen_power(out, g, y[g]);
            }
        }
        out
    }

    /// x · a_g^e, the elementary collection step.
    fn mul_gen_power(&self, x: PcVec, g: usize, e: i128) -> PcVec {
        if e == 0 {
            return x;
        }
        let s = self.len();
        // x = A · a_g^{x_g} · S with A below g and S above g.
        let mut suffix = vec![0i128; s];
        let mut has_suffix = false;
        for p in g + 1..s {
            suffix[p] = x[p];
            if x[p] != 0 {
                has_suffix = true;
            }
        }
        let conjugated = if has_suffix { self.conj_power(&suffix, g, e) } else { suffix };
        let mut out = x;
        for p in g + 1..s {
            out[p] = 0;
        }
        let total = out[g] + e;
        match self.pres.orders[g] {
            None => {
                out[g] = total;
                self.mul_into_tail(out, conjugated)
            }
            Some(m) => {
                let q = div_floor_i(total, m);
                out[g] = total - q * m;
                let wrapped = if q == 0 {
                    conjugated
                } else {
                    let tail = match &self.pres.power_tails[g] {
                        Some(t) => t.clone(),
                        None => vec![0i128; s],
                    };
                    self.mul(&self.pow(&tail, q), &conjugated)
                };
                self.mul_into_tail(out, wrapped)
            }
        }
    }

    /// out already normal, tail supported strictly above out's last nonzero
    /// entry is not guaranteed, so multiply properly.
    fn mul_into_tail(&self, out: PcVec, tail: PcVec) -> PcVec {
        if tail.iter().all(|&e| e == 0) {
            return out;
        }
        // The support of `tail` lies strictly above every position touched in
        // `out` so far only at the current collection level; concatenation is
        // valid because `out` has no entries above g and `tail` none at or
        // below g.
        let mut merged = out;
        for (p, &e) in tail.iter().enumerate() {
            debug_assert!(e == 0 || merged[p] == 0, "tail overlaps collected prefix");
            if e != 0 {
                merged[p] = e;
            }
        }
        merged
    }

    /// Conjugation a_g^{-e} · S · a_g^{e} for S supported above g: repeated
    /// table application for small |e|, binary powering of the automorphism
    /// beyond that.
    fn conj_power(&self, s_vec: &PcVec, g: usize, e: i128) -> PcVec {
        if e == 0 || self.conj_trivial[g] || s_vec.iter().skip(g + 1).all(|&x| x == 0) {
            return s_vec.clone();
        }
        let base = if e > 0 { &self.conj[g] } else { &self.conj_inv[g] };
        let n = e.unsigned_abs();
        if n <= 16 {
            let mut out = self.apply_table(base, s_vec, g);
            for _ in 1..n {
                out = self.apply_table(base, &out, g);
            }
            return out;
        }
        let mut n = n;
        let mut acc: Option<Vec<PcVec>> = None;
        let mut cur = base.clone();
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => cur.clone(),
                    Some(a) => self.compose_tables(&a, &cur, g),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            cur = self.compose_tables(&cur, &cur, g);
        }
        self.apply_table(&acc.expect("e != 0"), s_vec, g)
    }

    /// (a ∘ b)(a_j) = a(b(a_j)) for image tables over generators above g.
    fn compose_tables(&self, a: &[PcVec], b: &[PcVec], g: usize) -> Vec<PcVec> {
        b.iter().map(|img| self.apply_table(a, img, g)).collect()
    }

    fn apply_table(&self, table: &[PcVec], x: &PcVec, g: usize) -> PcVec {
        let mut out = self.identity();
        for j in g + 1..self.len() {
            if x[j] == 0 {
                continue;
            }
            let image = &table[j - g - 1];
            if image[j] == 1 && image.iter().enumerate().all(|(p, &v)| p == j || v == 0) {
                out = self.mul_gen_power(out, j, x[j]);
            } else {
                out = self.mul(&out, &self.pow(image, x[j]));
            }
        }
        out
    }

    pub fn inv(&self, x: &PcVec) -> PcVec {
        let mut out = self.identity();
        for j in (0..self.len()).rev() {
            if x[j] != 0 {
                out = self.mul_gen_power(out, j, -x[j]);
            }
        }
        out
    }

    pub fn pow(&self, x: &PcVec, e: i128) -> PcVec {
        if e == 0 {
            return self.identity();
        }
        // Single-letter powers collapse to one collection step.
        let mut support = x.iter().enumerate().filter(|&(_, &v)| v != 0);
        if let (Some((j, &c)), None) = (support.next(), support.next()) {
            return self.mul_gen_power(self.identity(), j, c * e);
        }
        let base = if e < 0 { self.inv(x) } else { x.clone() };
        let mut n = e.unsigned_abs();
        let mut acc: Option<PcVec> = None;
        let mut cur = base;
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => cur.clone(),
                    Some(a) => self.mul(&a, &cur),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            cur = self.mul(&cur, &cur);
        }
        acc.expect("e != 0")
    }

    /// [x, y] = x⁻¹ y⁻¹ x y.
    pub fn comm(&self, x: &PcVec, y: &PcVec) -> PcVec {
        let a = self.mul(&self.inv(x), &self.inv(y));
        let b = self.mul(x, y);
        self.mul(&a, &b)
    }

    /// y⁻¹ x y.
    pub fn conjugate(&self, x: &PcVec, y: &PcVec) -> PcVec {
        self.mul(&self.mul(&self.inv(y), x), y)
    }

    /// Normal form of an arbitrary word in the pc generators.
    pub fn collect(&self, word: &[(usize, i128)]) -> PcVec {
        let mut out = self.identity();
        for &(g, e) in word {
            assert!(g < self.len(), "pc letter out of range");
            if e != 0 {
                out = self.mul_gen_power(out, g, e);
            }
        }
        out
    }

    /// The collection overlap tests: associativity overlaps a_k(a_j a_i) =
    /// (a_k a_j) a_i and power-commutator compatibility. Triples whose weight
    /// sum exceeds the class commute trivially and are skipped when the
    /// presentation is large.
    fn check_overlaps(&self) -> Result<()> {
        let s = self.len();
        let filter_by_weight = s > 40;
        for k in 0..s {
            for j in 0..k {
                for i in 0..j {
                    if filter_by_weight
                        && self.pres.weights[i] + self.pres.weights[j] + self.pres.weights[k]
                            > self.pres.class
                    {
                        continue;
                    }
                    let (ak, aj, ai) = (self.generator(k), self.generator(j), self.generator(i));
                    let lhs = self.mul(&ak, &self.mul(&aj, &ai));
                    let rhs = self.mul(&self.mul(&ak, &aj), &ai);
                    if lhs != rhs {
                        return Err(Error::Inconsistent(format!(
                            "triple overlap failed at ({k}, {j}, {i})"
                        )));
                    }
                }
            }
        }
        for j in 0..s {
            let Some(m) = self.pres.orders[j] else { continue };
            let aj = self.generator(j);
            // a_j^{m} a_j = a_j a_j^{m}
            let pow_m = self.pow(&aj, m);
            if self.mul(&pow_m, &aj) != self.mul(&aj, &pow_m) {
                return Err(Error::Inconsistent(format!("power overlap failed at {j}")));
            }
            for i in 0..j {
                let ai = self.generator(i);
                let lhs = self.mul(&pow_m, &ai);
                let rhs = self.mul(&self.pow(&aj, m - 1), &self.mul(&aj, &ai));
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "power-commutator overlap failed at ({j}, {i})"
                    )));
                }
            }
            for k in j + 1..s {
                let ak = self.generator(k);
                let lhs = self.mul(&ak, &pow_m);
                let rhs = self.mul(&self.mul(&ak, &aj), &self.pow(&aj, m - 1));
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "commutator-power overlap failed at ({k}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Relative order of the subgroup coordinate led by position `lead` with
    /// leading exponent `f`: e_lead / f for finite coordinates.
    pub(crate) fn coordinate_order(&self, lead: usize, f: i128) -> Option<i128> {
        self.pres.orders[lead].map(|m| m / f)
    }

    /// All elements when every relative order is finite.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<PcVec>> {
        let mut total: u128 = 1;
        for &o in &self.pres.orders {
            match o {
                None => return Err(Error::Infinite),
                Some(m) => {
                    total = total.saturating_mul(m as u128);
                    if total > cap as u128 {
                        return Err(Error::CapExceeded { size: total, cap: cap as u128 });
                    }
                }
            }
        }
        let s = self.len();
        let mut out = Vec::with_capacity(total as usize);
        let mut current = vec![0i128; s];
        loop {
            out.push(current.clone());
            let mut i = s;
            let mut done = true;
            while i > 0 {
                i -= 1;
                current[i] += 1;
                if current[i] < self.pres.orders[i].expect("finite") {
                    done = false;
                    break;
                }
                current[i] = 0;
            }
            if done {
                break;
            }
        }
        Ok(out)
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for &o in &self.pres.orders {
            total = total.saturating_mul(o? as u128);
        }
        Some(total)
    }
}

/// The free abelian pc group of the given rank (class 1, no relations).
pub fn free_abelian_pc(rank: usize) -> PcGroup {
    let pres = PcPresentation {
        weights: vec![1; rank],
        orders: vec![None; rank],
        power_tails: vec![None; rank],
        comm_tails: (0..rank).map(|j| vec![None; j]).collect(),
        class: 1,
    };
    PcGroup::new(pres).expect("free abelian presentation is consistent")
}
