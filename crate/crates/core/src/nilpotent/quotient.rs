//! Quotients of pc groups by normal subgroups, and validated homomorphisms
//! between pc groups.

use super::subgroup::PcSubgroup;
use super::{PcGroup, PcPresentation, PcVec};
use crate::error::{Error, Result};

/// A homomorphism between pc groups, stored as generator images and
/// validated against the source presentation on construction.
#[derive(Clone, Debug)]
pub struct PcHom {
    images: Vec<PcVec>,
}

impl PcHom {
    pub fn new(source: &PcGroup, target: &PcGroup, images: Vec<PcVec>) -> Result<PcHom> {
        if images.len() != source.len() {
            return Err(Error::RankMismatch { left: images.len(), right: source.len() });
        }
        let hom = PcHom { images };
        let pres = source.presentation();
        for i in 0..source.len() {
            if let Some(m) = pres.orders[i] {
                let lhs = target.pow(&hom.images[i], m);
                let tail = pres.power_tails[i].clone().unwrap_or_else(|| vec![0; source.len()]);
                let rhs = hom.apply(target, &tail);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "power relation of generator {i} is not preserved"
                    )));
                }
            }
            for j in 0..i {
                let lhs = target.comm(&hom.images[i], &hom.images[j]);
                let tail = pres.comm_tails[i][j].clone().unwrap_or_else(|| vec![0; source.len()]);
                let rhs = hom.apply(target, &tail);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "commutator relation [{i}, {j}] is not preserved"
                    )));
                }
            }
        }
        Ok(hom)
    }

    pub fn images(&self) -> &[PcVec] {
        &self.images
    }

    pub fn apply(&self, target: &PcGroup, x: &PcVec) -> PcVec {
        let mut out = target.identity();
        for (i, &e) in x.iter().enumerate() {
            if e != 0 {
                out = target.mul(&out, &target.pow(&self.images[i], e));
            }
        }
        out
    }
}

/// A quotient G/N with its canonical data: the new pc group, the parent
/// position of each quotient generator, and the projection.
#[derive(Clone, Debug)]
pub struct PcQuotient {
    pub group: PcGroup,
    /// Parent position of each quotient generator.
    pub kept: Vec<usize>,
    /// Projection as images of every parent generator.
    pub projection: PcHom,
}

impl PcQuotient {
    pub fn project(&self, target_of: &PcGroup, x: &PcVec) -> PcVec {
        self.projection.apply(target_of, x)
    }
}

/// Canonical coset representative: sift `x` through the rows of `n`, taking
/// remainders at each leading coordinate.
fn coset_representative(g: &PcGroup, n: &PcSubgroup, x: &PcVec) -> PcVec {
    let mut x = x.clone();
    for row in n.rows() {
        let lead = row.iter().position(|&e| e != 0).expect("nonzero row");
        let f = row[lead];
        let q = num_integer::Integer::div_floor(&x[lead], &f);
        if q != 0 {
            x = g.mul(&g.pow(row, -q), &x);
        }
    }
    x
}

/// Quotient of a pc group by a normal subgroup. The quotient generators are
/// the parent generators whose image survives; relative orders at leading
/// coordinates of N become the leading exponents of its induced sequence.
pub fn quotient_pc(g: &PcGroup, n: &PcSubgroup) -> Result<PcQuotient> {
    if !g.subgroup_is_normal(n) {
        return Err(Error::NotNormal);
    }
    let s = g.len();
    let pres = g.presentation();
    // Leading data of N per parent position.
    let mut n_lead: Vec<Option<i128>> = vec![None; s];
    for row in n.rows() {
        let lead = row.iter().position(|&e| e != 0).expect("nonzero row");
        n_lead[lead] = Some(row[lead]);
    }
    // New relative order per parent position; None = infinite, Some(1) = drop.
    let quotient_order = |p: usize| -> Option<i128> {
        match n_lead[p] {
            Some(f) => Some(f),
            None => pres.orders[p],
        }
    };
    let kept: Vec<usize> = (0..s).filter(|&p| quotient_order(p) != Some(1)).collect();
    let position_of: std::collections::BTreeMap<usize, usize> =
        kept.iter().enumerate().map(|(q, &p)| (p, q)).collect();
    let t = kept.len();

    let to_quotient = |rep: &PcVec| -> PcVec {
        // Canonical representatives have zero entries at dropped positions.
        let mut v = vec![0i128; t];
        for (p, &e) in rep.iter().enumerate() {
            if e != 0 {
                v[*position_of.get(&p).expect("entry at a kept position")] = e;
            }
        }
        v
    };

    let mut weights = Vec::with_capacity(t);
    let mut orders = Vec::with_capacity(t);
    let mut power_tails: Vec<Option<PcVec>> = Vec::with_capacity(t);
    let mut comm_tails: Vec<Vec<Option<PcVec>>> = Vec::with_capacity(t);
    for (q, &p) in kept.iter().enumerate() {
        weights.push(pres.weights[p]);
        let order = quotient_order(p);
        orders.push(order);
        let tail = match order {
            None => None,
            Some(m) => {
                let power = g.pow(&g.generator(p), m);
                let rep = coset_representative(g, n, &power);
                if g.is_identity(&rep) {
                    None
                } else {
                    Some(to_quotient(&rep))
                }
            }
        };
        power_tails.push(tail);
        let mut row_tails: Vec<Option<PcVec>> = Vec::with_capacity(q);
        for &p2 in kept.iter().take(q) {
            let c = g.comm(&g.generator(p), &g.generator(p2));
            let rep = coset_representative(g, n, &c);
            row_tails.push(if g.is_identity(&rep) { None } else { Some(to_quotient(&rep)) });
        }
        comm_tails.push(row_tails);
    }
    let class = weights.iter().copied().max().unwrap_or(1);
    let quotient = PcGroup::new(PcPresentation { weights, orders, power_tails, comm_tails, class })?;

    // Projection: image of each parent generator is its coset representative.
    let images: Vec<PcVec> = (0..s)
        .map(|p| to_quotient(&coset_representative(g, n, &g.generator(p))))
        .collect();
    let projection = PcHom::new(g, &quotient, images)?;
    // Kernel sanity: N rows project to the identity.
    for row in n.rows() {
        if !quotient.is_identity(&projection.apply(&quotient, row)) {
            return Err(Error::Inconsistent("normal subgroup does not map to 1".into()));
        }
    }
    Ok(PcQuotient { group: quotient, kept, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::FgAbelian;
    use crate::nilpotent::free_abelian_pc;

    fn heisenberg() -> PcGroup {
        let mut tail = vec![0i128; 3];
        tail[2] = 1;
        let pres = PcPresentation {
            weights: vec![1, 1, 2],
            orders: vec![None, None, None],
            power_tails: vec![None, None, None],
            comm_tails: vec![vec![], vec![Some(tail)], vec![None, None]],
            class: 2,
        };
        PcGroup::new(pres).unwrap()
    }

    #[test]
    fn quotient_by_whole_and_by_trivial() {
        let h = heisenberg();
        let whole = h.full_subgroup();
        let q = quotient_pc(&h, &whole).unwrap();
        assert_eq!(q.group.len(), 0);
        let trivial = PcSubgroup::trivial();
        let q = quotient_pc(&h, &trivial).unwrap();
        assert_eq!(q.group.len(), 3);
        assert_eq!(q.group.order(), None);
        // Layer invariants match the original.
        for i in 1..=2 {
            let a = h.section_presentation(&h.lower_central_term(i), &h.lower_central_term(i + 1)).unwrap();
            let b = q
                .group
                .section_presentation(&q.group.lower_central_term(i), &q.group.lower_central_term(i + 1))
                .unwrap();
            assert_eq!(a.presented().invariants(), b.presented().invariants());
        }
    }

    #[test]
    fn heisenberg_mod_center_is_z2() {
        let h = heisenberg();
        let center = h.subgroup_closure(&[h.generator(2)]);
        let q = quotient_pc(&h, &center).unwrap();
        assert_eq!(q.group.len(), 2);
        // Abelian with two infinite cyclic generators.
        let full = q.group.full_subgroup();
        let derived = q.group.mutual_commutator(&full, &full);
        assert!(derived.is_trivial());
        let inv = q
            .group
            .section_presentation(&full, &derived)
            .unwrap()
            .presented()
            .invariants();
        assert_eq!(inv, FgAbelian::free(2));
    }

    #[test]
    fn quotient_kernel_is_exactly_n() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let h = heisenberg();
        let mut rng = StdRng::seed_from_u64(71);
        for _ in 0..20 {
            let gens: Vec<PcVec> = (0..2)
                .map(|_| {
                    h.collect(&[
                        (rng.gen_range(0..3), rng.gen_range(-2..=2i128)),
                        (rng.gen_range(0..3), rng.gen_range(-2..=2i128)),
                    ])
                })
                .collect();
            let n = h.normal_closure(&gens);
            let q = quotient_pc(&h, &n).unwrap();
            for _ in 0..30 {
                let x = h.collect(&[
                    (rng.gen_range(0..3), rng.gen_range(-3..=3i128)),
                    (rng.gen_range(0..3), rng.gen_range(-3..=3i128)),
                ]);
                let image = q.projection.apply(&q.group, &x);
                assert_eq!(q.group.is_identity(&image), h.subgroup_member(&n, &x));
            }
        }
    }

    #[test]
    fn projection_is_surjective_hom_on_finite_quotients() {
        let h = heisenberg();
        // Kill squares of the weight-1 generators.
        let n = h.normal_closure(&[h.pow(&h.generator(0), 2), h.pow(&h.generator(1), 2)]);
        let q = quotient_pc(&h, &n).unwrap();
        let order = q.group.order().unwrap();
        // F/<<x², y²>> in class 2: x², y², [x,y]² all die -> order 8.
        assert_eq!(order, 8);
        let elements = q.group.enumerate(64).unwrap();
        let mut image: std::collections::BTreeSet<PcVec> = std::collections::BTreeSet::new();
        for w0 in 0..2i128 {
            for w1 in 0..2i128 {
                for w2 in 0..2i128 {
                    let x = h.collect(&[(0, w0), (1, w1), (2, w2)]);
                    image.insert(q.projection.apply(&q.group, &x));
                }
            }
        }
        assert_eq!(image.len(), elements.len());
    }

    #[test]
    fn pc_hom_validation_rejects_non_homomorphisms() {
        let z = free_abelian_pc(1);
        let h = heisenberg();
        // x -> a1 is a fine hom Z -> H.
        assert!(PcHom::new(&z, &h, vec![h.generator(0)]).is_ok());
        // Heisenberg -> Z collapsing both weight-1 generators to the same
        // image is a hom only if the commutator dies; sending a3 -> 1 works.
        let images = vec![vec![1], vec![1], vec![0]];
        assert!(PcHom::new(&h, &z, images).is_ok());
        // Sending a3 to a nonzero element is not a hom.
        let images = vec![vec![1], vec![1], vec![1]];
        assert!(PcHom::new(&h, &z, images).is_err());
    }
}
