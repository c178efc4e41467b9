//! Subgroups of pc groups as canonical induced generating sequences:
//! echelonized exponent vectors ordered by leading generator, with leading
//! entries positive (dividing the relative order at finite coordinates) and
//! entries above each leading entry reduced modulo it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{PcGroup, PcVec};
use crate::error::{Error, Result};
use crate::intlin::{Lattice, PresentedAbelian};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PcSubgroup {
    rows: Vec<PcVec>,
}

impl PcSubgroup {
    pub fn trivial() -> Self {
        PcSubgroup { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[PcVec] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows whose leading generator has weight >= `min_weight`. Because the
    /// echelon respects the weight filtration, this is the intersection with
    /// the span of generators of weight >= min_weight (e.g. with γ_i in a
    /// free nilpotent group).
    pub fn rows_with_lead_weight_at_least(&self, group: &PcGroup, min_weight: usize) -> PcSubgroup {
        let rows = self
            .rows
            .iter()
            .filter(|r| {
                let lead = r.iter().position(|&e| e != 0).expect("rows are nonzero");
                group.presentation().weights[lead] >= min_weight
            })
            .cloned()
            .collect();
        PcSubgroup { rows }
    }
}

impl PcGroup {
    /// Canonical induced generating sequence of the subgroup generated by
    /// `gens`. Beyond sifting the generators, the sequence is saturated with
    /// commutators of its rows so that membership by successive division
    /// characterizes the generated subgroup.
    pub fn subgroup_closure(&self, gens: &[PcVec]) -> PcSubgroup {
        let mut igs: Vec<Option<PcVec>> = vec![None; self.len()];
        let mut work: Vec<PcVec> = gens.to_vec();
        // Rows already commutator-checked against the sequence; replaced rows
        // are fresh and re-enter the loop. A final full sweep certifies the
        // saturation regardless of the incremental bookkeeping. Pairs whose
        // lead weights sum beyond the class commute identically and are
        // skipped throughout.
        let mut checked: std::collections::BTreeSet<PcVec> = std::collections::BTreeSet::new();
        loop {
            while let Some(x) = work.pop() {
                self.igs_insert(&mut igs, x, &mut work);
            }
            let current: Vec<PcVec> = igs.iter().flatten().cloned().collect();
            let fresh: Vec<PcVec> =
                current.iter().filter(|r| !checked.contains(*r)).cloned().collect();
            if fresh.is_empty() {
                let mut clean = true;
                'sweep: for (ai, a) in current.iter().enumerate() {
                    for b in current.iter().skip(ai + 1) {
                        if self.comm_weight_exceeds_class(a, b) {
                            continue;
                        }
                        for c in [self.comm(a, b), self.comm(b, a)] {
                            if !self.sift_is_identity(&igs, &c) {
                                work.push(c);
                                clean = false;
                            }
                        }
                        if !clean {
                            checked.clear();
                            break 'sweep;
                        }
                    }
                }
                if clean {
                    break;
                }
                continue;
            }
            for a in &fresh {
                for b in &current {
                    if a == b || self.comm_weight_exceeds_class(a, b) {
                        continue;
                    }
                    for c in [self.comm(a, b), self.comm(b, a)] {
                        if !self.sift_is_identity(&igs, &c) {
                            work.push(c);
                        }
                    }
                }
            }
            checked.extend(fresh);
        }
        let mut rows: Vec<PcVec> = igs.into_iter().flatten().collect();
        // Reduce entries above each leading entry, later rows first so that
        // earlier reductions stay intact.
        for t in 0..rows.len() {
            let lead = rows[t].iter().position(|&e| e != 0).expect("nonzero row");
            let f = rows[t][lead];
            for r in 0..t {
                let q = crate::nilpotent::div_floor_i(rows[r][lead], f);
                if q != 0 {
                    rows[r] = self.mul(&self.pow(&rows[t], -q), &rows[r]);
                }
            }
        }
        PcSubgroup { rows }
    }

    /// Weight of the leading generator, if the element is nontrivial.
    pub fn lead_weight(&self, x: &PcVec) -> Option<usize> {
        self.lead(x).map(|i| self.presentation().weights[i])
    }

    /// Elements with lead weights summing beyond the class commute: each lies
    /// in the lower central term of its lead weight.
    fn comm_weight_exceeds_class(&self, a: &PcVec, b: &PcVec) -> bool {
        match (self.lead_weight(a), self.lead_weight(b)) {
            (Some(wa), Some(wb)) => wa + wb > self.class(),
            _ => true,
        }
    }

    fn sift_is_identity(&self, igs: &[Option<PcVec>], x: &PcVec) -> bool {
        let mut x = x.clone();
        while let Some(i) = self.lead(&x) {
            let Some(h) = &igs[i] else { return false };
            let f = h[i];
            if x[i] % f != 0 {
                return false;
            }
            x = self.mul(&self.pow(h, -(x[i] / f)), &x);
        }
        true
    }

    fn igs_insert(&self, igs: &mut Vec<Option<PcVec>>, x: PcVec, work: &mut Vec<PcVec>) {
        let mut x = x;
        loop {
            let Some(i) = self.lead(&x) else { return };
            let e = x[i];
            match &igs[i] {
                None => {
                    match self.presentation().orders[i] {
                        None => {
                            let row = if e < 0 { self.inv(&x) } else { x };
                            igs[i] = Some(row);
                        }
                        Some(m) => {
                            // e in (0, m); normalize the leading exponent to
                            // gcd(e, m), which divides m.
                            let g = e.gcd(&m);
                            if g == e {
                                igs[i] = Some(x.clone());
                                work.push(self.pow(&x, m / g));
                            } else {
                                let inverse = modular_inverse(e / g, m / g);
                                let row = self.pow(&x, inverse);
                                debug_assert_eq!(row[i], g);
                                igs[i] = Some(row.clone());
                                work.push(self.pow(&row, m / g));
                                work.push(x);
                            }
                        }
                    }
                    return;
                }
                Some(h) => {
                    let f = h[i];
                    let q = crate::nilpotent::div_floor_i(e, f);
                    let reduced = self.mul(&self.pow(h, -q), &x);
                    if reduced.get(i).copied().unwrap_or(0) == 0 {
                        x = reduced;
                        continue;
                    }
                    // 0 < reduced[i] < f: swap the smaller leading exponent in.
                    let old = igs[i].take().expect("row present");
                    work.push(old);
                    x = reduced;
                }
            }
        }
    }

    /// Coordinates of `x` over the induced sequence, if `x` is a member.
    pub fn subgroup_coords(&self, subgroup: &PcSubgroup, x: &PcVec) -> Option<Vec<i128>> {
        let mut coords = vec![0i128; subgroup.rank()];
        let mut x = x.clone();
        let leads: Vec<usize> = subgroup
            .rows
            .iter()
            .map(|r| r.iter().position(|&e| e != 0).expect("nonzero row"))
            .collect();
        while let Some(l) = self.lead(&x) {
            let row_index = leads.iter().position(|&p| p == l)?;
            let f = subgroup.rows[row_index][l];
            let e = x[l];
            if e % f != 0 {
                return None;
            }
            let q = e / f;
            x = self.mul(&self.pow(&subgroup.rows[row_index], -q), &x);
            coords[row_index] = q;
        }
        Some(coords)
    }

    pub fn subgroup_member(&self, subgroup: &PcSubgroup, x: &PcVec) -> bool {
        self.subgroup_coords(subgroup, x).is_some()
    }

    /// Π rows[i]^{coords[i]}.
    pub fn subgroup_element(&self, subgroup: &PcSubgroup, coords: &[i128]) -> PcVec {
        let mut out = self.identity();
        for (row, &c) in subgroup.rows.iter().zip(coords) {
            if c != 0 {
                out = self.mul(&out, &self.pow(row, c));
            }
        }
        out
    }

    /// Smallest normal subgroup containing `gens`: conjugate the induced
    /// sequence by all pc generators until stable. Conjugation by a_g fixes
    /// rows when the lead weight plus weight(g) exceeds the class.
    pub fn normal_closure(&self, gens: &[PcVec]) -> PcSubgroup {
        let mut sub = self.subgroup_closure(gens);
        let mut processed: std::collections::BTreeSet<PcVec> = std::collections::BTreeSet::new();
        loop {
            let mut new_gens: Vec<PcVec> = Vec::new();
            for row in sub.rows() {
                if processed.contains(row) {
                    continue;
                }
                let lw = self.lead_weight(row).expect("rows are nonzero");
                for g in 0..self.len() {
                    if lw + self.presentation().weights[g] > self.class() {
                        continue;
                    }
                    let a = self.generator(g);
                    for conj in [self.conjugate(row, &a), self.conjugate(row, &self.inv(&a))] {
                        if !self.subgroup_member(&sub, &conj) {
                            new_gens.push(conj);
                        }
                    }
                }
            }
            processed = sub.rows.iter().cloned().collect();
            if new_gens.is_empty() {
                return sub;
            }
            new_gens.extend(sub.rows.iter().cloned());
            sub = self.subgroup_closure(&new_gens);
        }
    }

    /// The mutual commutator subgroup [H, K], generated by commutators of the
    /// induced generators and closed under conjugation by H and K.
    pub fn mutual_commutator(&self, h: &PcSubgroup, k: &PcSubgroup) -> PcSubgroup {
        let mut gens: Vec<PcVec> = Vec::new();
        for hr in h.rows() {
            for kr in k.rows() {
                if self.comm_weight_exceeds_class(hr, kr) {
                    continue;
                }
                let c = self.comm(hr, kr);
                if !self.is_identity(&c) {
                    gens.push(c);
                }
            }
        }
        let mut sub = self.subgroup_closure(&gens);
        let mut processed: std::collections::BTreeSet<PcVec> = std::collections::BTreeSet::new();
        loop {
            let mut new_gens: Vec<PcVec> = Vec::new();
            for row in sub.rows() {
                if processed.contains(row) {
                    continue;
                }
                for by in h.rows().iter().chain(k.rows().iter()) {
                    if self.comm_weight_exceeds_class(row, by) {
                        continue;
                    }
                    for conj in [self.conjugate(row, by), self.conjugate(row, &self.inv(by))] {
                        if !self.subgroup_member(&sub, &conj) {
                            new_gens.push(conj);
                        }
                    }
                }
            }
            processed = sub.rows.iter().cloned().collect();
            if new_gens.is_empty() {
                return sub;
            }
            new_gens.extend(sub.rows.iter().cloned());
            sub = self.subgroup_closure(&new_gens);
        }
    }

    /// The whole group as a subgroup.
    pub fn full_subgroup(&self) -> PcSubgroup {
        let gens: Vec<PcVec> = (0..self.len()).map(|i| self.generator(i)).collect();
        self.subgroup_closure(&gens)
    }

    /// γ_i: γ_1 is the whole group, γ_{i+1} = [γ_i, G].
    pub fn lower_central_term(&self, i: usize) -> PcSubgroup {
        assert!(i >= 1);
        let mut term = self.full_subgroup();
        let whole = self.full_subgroup();
        for _ in 1..i {
            if term.is_trivial() {
                return term;
            }
            term = self.mutual_commutator(&term, &whole);
        }
        term
    }

    /// The chain γ_1 ⊇ γ_2 ⊇ … ⊇ γ_{class+1} = 1.
    pub fn lower_central_chain(&self) -> Vec<PcSubgroup> {
        let mut chain = vec![self.full_subgroup()];
        let whole = self.full_subgroup();
        for _ in 1..=self.class() {
            let next = self.mutual_commutator(chain.last().expect("nonempty"), &whole);
            chain.push(next);
        }
        chain
    }

    pub fn subgroup_is_normal(&self, sub: &PcSubgroup) -> bool {
        sub.rows().iter().all(|row| {
            let lw = self.lead_weight(row).expect("rows are nonzero");
            (0..self.len()).all(|g| {
                if lw + self.presentation().weights[g] > self.class() {
                    return true;
                }
                let a = self.generator(g);
                self.subgroup_member(sub, &self.conjugate(row, &a))
                    && self.subgroup_member(sub, &self.conjugate(row, &self.inv(&a)))
            })
        })
    }

    pub fn subgroup_contains(&self, outer: &PcSubgroup, inner: &PcSubgroup) -> bool {
        inner.rows().iter().all(|r| self.subgroup_member(outer, r))
    }

    /// All elements of a finite subgroup, from the coordinate ranges of its
    /// induced sequence.
    pub fn subgroup_elements(&self, sub: &PcSubgroup, cap: u64) -> Result<Vec<PcVec>> {
        let mut ranges: Vec<i128> = Vec::with_capacity(sub.rank());
        let mut total: u128 = 1;
        for row in sub.rows() {
            let lead = row.iter().position(|&e| e != 0).expect("nonzero row");
            match self.coordinate_order(lead, row[lead]) {
                None => return Err(Error::Infinite),
                Some(o) => {
                    ranges.push(o);
                    total = total.saturating_mul(o as u128);
                    if total > cap as u128 {
                        return Err(Error::CapExceeded { size: total, cap: cap as u128 });
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut coords = vec![0i128; sub.rank()];
        loop {
            out.push(self.subgroup_element(sub, &coords));
            let mut i = sub.rank();
            let mut done = true;
            while i > 0 {
                i -= 1;
                coords[i] += 1;
                if coords[i] < ranges[i] {
                    done = false;
                    break;
                }
                coords[i] = 0;
            }
            if done {
                break;
            }
        }
        Ok(out)
    }

    /// Presentation of the abelian section H/K on the induced generators of
    /// H: relation rows are the K-rows in H-coordinates plus one torsion row
    /// per H-row of finite relative order.
    pub fn section_presentation(&self, h: &PcSubgroup, k: &PcSubgroup) -> Result<SectionPresentation> {
        if !self.subgroup_contains(h, k) {
            return Err(Error::NotSubgroup);
        }
        for kr in k.rows() {
            for hr in h.rows() {
                if self.comm_weight_exceeds_class(kr, hr) {
                    continue;
                }
                if !self.subgroup_member(k, &self.conjugate(kr, hr))
                    || !self.subgroup_member(k, &self.conjugate(kr, &self.inv(hr)))
                {
                    return Err(Error::NotNormal);
                }
            }
        }
        for a in h.rows() {
            for b in h.rows() {
                if self.comm_weight_exceeds_class(a, b) {
                    continue;
                }
                if !self.subgroup_member(k, &self.comm(a, b)) {
                    return Err(Error::NotAbelian);
                }
            }
        }
        let rank = h.rank();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for kr in k.rows() {
            let coords = self.subgroup_coords(h, kr).expect("K row lies in H");
            rows.push(coords.iter().map(|&c| BigInt::from(c)).collect());
        }
        for (t, hr) in h.rows().iter().enumerate() {
            let lead = hr.iter().position(|&e| e != 0).expect("nonzero row");
            if let Some(o) = self.coordinate_order(lead, hr[lead]) {
                let power = self.pow(hr, o);
                let coords = self
                    .subgroup_coords(h, &power)
                    .expect("power of an H row lies in H");
                let mut row: Vec<BigInt> = coords.iter().map(|&c| -BigInt::from(c)).collect();
                row[t] += BigInt::from(o);
                rows.push(row);
            }
        }
        Ok(SectionPresentation { rank, relations: Lattice::from_rows(rank, rows) })
    }

    /// Kernel of a homomorphism from the subgroup Γ into an abelian group,
    /// given by the images of Γ's induced generators in the target's
    /// presentation coordinates. The kernel is generated by [Γ, Γ] together
    /// with lifts of the integer kernel of the image matrix.
    pub fn kernel_to_abelian(
        &self,
        gamma: &PcSubgroup,
        images: &[Vec<BigInt>],
        target_relations: &Lattice,
    ) -> PcSubgroup {
        assert_eq!(images.len(), gamma.rank());
        let commutators = self.mutual_commutator(gamma, gamma);
        let mut gens: Vec<PcVec> = commutators.rows().to_vec();
        let matrix = crate::intlin::IntMatrix::from_rows(
            target_relations.ambient_rank(),
            images.to_vec(),
        );
        let kernel_lattice = crate::intlin::preimage_lattice(&matrix, target_relations);
        for row in kernel_lattice.basis_rows() {
            let coords: Vec<i128> = row
                .iter()
                .map(|c| c.to_i128().expect("kernel coefficient fits in i128"))
                .collect();
            gens.push(self.subgroup_element(gamma, &coords));
        }
        self.subgroup_closure(&gens)
    }
}

/// Abelian section H/K presented on H's induced generators.
#[derive(Clone, Debug)]
pub struct SectionPresentation {
    pub rank: usize,
    pub relations: Lattice,
}

impl SectionPresentation {
    pub fn presented(&self) -> PresentedAbelian {
        PresentedAbelian::new(self.rank, self.relations.clone())
    }
}

/// Extended-gcd based inverse of `a` modulo `m` (gcd(a, m) = 1), returned in
/// (0, m).
fn modular_inverse(a: i128, m: i128) -> i128 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.mod_floor(&m)
}
