//! Category and functor builders: the small named examples used in tests
//! and the seed-deterministic random instances used by the verification
//! suites.

use rand::rngs::StdRng;
use rand::Rng;

use super::{FiniteCategory, GroupFunctor, SubFunctor};
use crate::fingroup::{all_homs, automorphism_group, dihedral8, FiniteGroup};

pub fn one_object_identity() -> FiniteCategory {
    FiniteCategory::new(
        vec!["*".into()],
        vec!["id".into()],
        vec![0],
        vec![0],
        vec![0],
        vec![vec![Some(0)]],
    )
    .expect("point category")
}

/// a -> b with identities.
pub fn arrow_category() -> FiniteCategory {
    let mut compose = vec![vec![None; 3]; 3];
    compose[0][0] = Some(0);
    compose[1][1] = Some(1);
    compose[2][0] = Some(2);
    compose[1][2] = Some(2);
    FiniteCategory::new(
        vec!["a".into(), "b".into()],
        vec!["id_a".into(), "id_b".into(), "f".into()],
        vec![0, 1, 0],
        vec![0, 1, 1],
        vec![0, 1],
        compose,
    )
    .expect("arrow category")
}

/// a ⇉ b: two parallel arrows with identities.
pub fn parallel_pair() -> FiniteCategory {
    let mut compose = vec![vec![None; 4]; 4];
    compose[0][0] = Some(0);
    compose[1][1] = Some(1);
    compose[2][0] = Some(2);
    compose[1][2] = Some(2);
    compose[3][0] = Some(3);
    compose[1][3] = Some(3);
    FiniteCategory::new(
        vec!["a".into(), "b".into()],
        vec!["id_a".into(), "id_b".into(), "f".into(), "g".into()],
        vec![0, 1, 0, 0],
        vec![0, 1, 1, 1],
        vec![0, 1],
        compose,
    )
    .expect("parallel pair")
}

/// BG: one object, morphisms the elements of G, composition the group law.
pub fn bg(group: &FiniteGroup) -> FiniteCategory {
    let n = group.order();
    let compose = (0..n).map(|g| (0..n).map(|f| Some(group.mul(g, f))).collect()).collect();
    FiniteCategory::new(
        vec!["*".into()],
        (0..n).map(|g| format!("g{g}")).collect(),
        vec![0; n],
        vec![0; n],
        vec![0],
        compose,
    )
    .expect("BG is a category")
}

/// BG together with the coefficient group A carrying the trivial action.
pub fn bg_with_trivial_action(group: &FiniteGroup, coeff: &FiniteGroup) -> (FiniteCategory, GroupFunctor) {
    let cat = bg(group);
    let id_map: Vec<usize> = (0..coeff.order()).collect();
    let f = GroupFunctor::new(&cat, vec![coeff.clone()], vec![id_map; group.order()])
        .expect("trivial action is functorial");
    (cat, f)
}

/// BG with the action of G on A through a homomorphism into Aut(A), given as
/// one automorphism per group element.
pub fn bg_with_action(
    group: &FiniteGroup,
    coeff: &FiniteGroup,
    action: Vec<Vec<usize>>,
) -> crate::error::Result<(FiniteCategory, GroupFunctor)> {
    let cat = bg(group);
    let f = GroupFunctor::new(&cat, vec![coeff.clone()], action)?;
    Ok((cat, f))
}

/// BC₂ with constant value D₄ acted on by conjugation by a reflection, and
/// the central order-2 subfunctor.
pub fn dihedral_with_central_subfunctor() -> (FiniteCategory, GroupFunctor, SubFunctor) {
    let d4 = dihedral8().group;
    let c2 = FiniteGroup::cyclic(2);
    // Conjugation by a reflection is an automorphism of order 2.
    let reflection = (0..8).find(|&e| d4.element_order(e) == 2 && !d4.center().contains(&e)).expect("reflection");
    let conj: Vec<usize> = (0..8).map(|x| d4.conjugate(x, reflection)).collect();
    let id: Vec<usize> = (0..8).collect();
    let (cat, f) = bg_with_action(&c2, &d4, vec![id, conj]).expect("conjugation action");
    let mut center = d4.center();
    center.sort_unstable();
    let sub = SubFunctor::new(&cat, &f, vec![center]).expect("center is compatible");
    (cat, f, sub)
}

/// BC₂ acting by the swap on C₂ × C₂... kept simple: trivial action with the
/// first factor as a (split) normal subfunctor.
pub fn split_extension_example() -> (FiniteCategory, GroupFunctor, SubFunctor) {
    let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let (cat, f) = bg_with_trivial_action(&FiniteGroup::cyclic(2), &v4);
    // First factor: elements with second coordinate zero, i.e. {0, 2}.
    let sub = SubFunctor::new(&cat, &f, vec![vec![0, 2]]).expect("factor subfunctor");
    (cat, f, sub)
}

/// A poset category from a forest: object i > 0 may have a parent, and
/// morphisms go from each node to each of its ancestors. Paths are unique,
/// so any assignment of maps along cover edges is functorial.
pub fn forest_poset(parents: &[Option<usize>]) -> FiniteCategory {
    let n = parents.len();
    for (i, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            assert!(*p < i, "parents must precede children");
        }
    }
    let mut ancestors: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut chain = Vec::new();
        let mut cur = parents[i];
        while let Some(a) = cur {
            chain.push(a);
            cur = parents[a];
        }
        ancestors.push(chain);
    }
    let mut names = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut identity = Vec::new();
    // Morphism index per (from, to) pair.
    let mut pair_index: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    for c in 0..n {
        identity.push(names.len());
        pair_index.insert((c, c), names.len());
        names.push(format!("id{c}"));
        dom.push(c);
        cod.push(c);
    }
    for c in 0..n {
        for &a in &ancestors[c] {
            pair_index.insert((c, a), names.len());
            names.push(format!("m{c}_{a}"));
            dom.push(c);
            cod.push(a);
        }
    }
    let m = names.len();
    let mut compose = vec![vec![None; m]; m];
    for g in 0..m {
        for f in 0..m {
            if dom[g] == cod[f] {
                compose[g][f] = Some(pair_index[&(dom[f], cod[g])]);
            }
        }
    }
    FiniteCategory::new((0..n).map(|i| format!("c{i}")).collect(), names, dom, cod, identity, compose)
        .expect("forest poset is a category")
}

fn random_abelian_group(rng: &mut StdRng) -> FiniteGroup {
    match rng.gen_range(0..7) {
        0 => FiniteGroup::cyclic(2),
        1 => FiniteGroup::cyclic(3),
        2 => FiniteGroup::cyclic(4),
        3 => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        4 => FiniteGroup::cyclic(6),
        5 => FiniteGroup::cyclic(8),
        _ => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
    }
}

fn random_group(rng: &mut StdRng) -> FiniteGroup {
    match rng.gen_range(0..9) {
        0..=5 => random_abelian_group(rng),
        6 => crate::fingroup::symmetric3().group,
        7 => dihedral8().group,
        _ => crate::fingroup::quaternion8().group,
    }
}

/// A random category (≤ 4 objects, ≤ 12 morphisms) with an abelian-valued
/// functor of group orders ≤ 8.
pub fn random_abelian_instance(rng: &mut StdRng) -> (FiniteCategory, GroupFunctor) {
    random_instance_with(rng, &mut random_abelian_group)
}

/// A random category with a group-valued functor (possibly non-abelian).
pub fn random_group_instance(rng: &mut StdRng) -> (FiniteCategory, GroupFunctor) {
    random_instance_with(rng, &mut random_group)
}

fn random_instance_with(
    rng: &mut StdRng,
    group_of: &mut impl FnMut(&mut StdRng) -> FiniteGroup,
) -> (FiniteCategory, GroupFunctor) {
    match rng.gen_range(0..4) {
        0 => {
            // Forest poset on 2..=4 objects with random maps on cover edges.
            let n = rng.gen_range(2..=4);
            let parents: Vec<Option<usize>> = (0..n)
                .map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) })
                .collect();
            let cat = forest_poset(&parents);
            let values: Vec<FiniteGroup> = (0..n).map(|_| group_of(rng)).collect();
            // Maps on cover edges; composites along the unique paths.
            let cover_map: Vec<Option<Vec<usize>>> = (0..n)
                .map(|c| {
                    parents[c].map(|p| {
                        let homs = all_homs(&values[c], &values[p]);
                        homs[rng.gen_range(0..homs.len())].clone()
                    })
                })
                .collect();
            let maps: Vec<Vec<usize>> = (0..cat.morphisms())
                .map(|m| {
                    let (mut at, target) = (cat.dom(m), cat.cod(m));
                    let mut map: Vec<usize> = (0..values[at].order()).collect();
                    while at != target {
                        let parent = parents[at].expect("path exists");
                        let step = cover_map[at].as_ref().expect("cover map");
                        map = map.into_iter().map(|x| step[x]).collect();
                        at = parent;
                    }
                    map
                })
                .collect();
            let f = GroupFunctor::new(&cat, values, maps).expect("forest functor");
            (cat, f)
        }
        1 => {
            // BG with a random action through Aut(A).
            let g = match rng.gen_range(0..3) {
                0 => FiniteGroup::cyclic(2),
                1 => FiniteGroup::cyclic(3),
                _ => FiniteGroup::cyclic(4),
            };
            let a = group_of(rng);
            let (aut, autos) = automorphism_group(&a);
            let homs = all_homs(&g, &aut);
            let phi = &homs[rng.gen_range(0..homs.len())];
            let action: Vec<Vec<usize>> = (0..g.order()).map(|x| autos[phi[x]].clone()).collect();
            bg_with_action(&g, &a, action).expect("action instance")
        }
        2 => {
            // Parallel pair with two random homs.
            let cat = parallel_pair();
            let a = group_of(rng);
            let b = group_of(rng);
            let homs = all_homs(&a, &b);
            let id_a: Vec<usize> = (0..a.order()).collect();
            let id_b: Vec<usize> = (0..b.order()).collect();
            let f1 = homs[rng.gen_range(0..homs.len())].clone();
            let f2 = homs[rng.gen_range(0..homs.len())].clone();
            let f = GroupFunctor::new(&cat, vec![a, b], vec![id_a, id_b, f1, f2])
                .expect("parallel pair functor");
            (cat, f)
        }
        _ => {
            // Fan: one root mapping to 1..=3 leaves.
            let leaves = rng.gen_range(1..=3);
            let parents: Vec<Option<usize>> =
                std::iter::once(None).chain((0..leaves).map(|_| Some(0))).collect();
            // Reverse the forest direction by building the poset with the
            // root as the common ancestor: leaves point to the root.
            let cat = forest_poset(&parents);
            let values: Vec<FiniteGroup> = (0..=leaves).map(|_| group_of(rng)).collect();
            let maps: Vec<Vec<usize>> = (0..cat.morphisms())
                .map(|m| {
                    if cat.is_identity(m) {
                        (0..values[cat.dom(m)].order()).collect()
                    } else {
                        let homs = all_homs(&values[cat.dom(m)], &values[cat.cod(m)]);
                        homs[rng.gen_range(0..homs.len())].clone()
                    }
                })
                .collect();
            let f = GroupFunctor::new(&cat, values, maps).expect("fan functor");
            (cat, f)
        }
    }
}

/// A random compatible subfunctor; `central` restricts the per-object choice
/// to central subgroups. Retries a few times before giving up.
pub fn random_subfunctor(
    rng: &mut StdRng,
    cat: &FiniteCategory,
    f: &GroupFunctor,
    central: bool,
) -> Option<SubFunctor> {
    let candidates: Vec<Vec<Vec<usize>>> = (0..cat.objects())
        .map(|c| {
            let g = &f.values[c];
            let center: std::collections::BTreeSet<usize> = g.center().into_iter().collect();
            g.all_subgroups()
                .into_iter()
                .filter(|s| !central || s.iter().all(|x| center.contains(x)))
                .collect()
        })
        .collect();
    for _ in 0..60 {
        let pick: Vec<Vec<usize>> = candidates
            .iter()
            .map(|options| options[rng.gen_range(0..options.len())].clone())
            .collect();
        if let Ok(sub) = SubFunctor::new(cat, f, pick) {
            return Some(sub);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn forest_poset_shapes() {
        let cat = forest_poset(&[None, Some(0), Some(1), Some(0)]);
        assert_eq!(cat.objects(), 4);
        // Identities + (1->0), (2->1), (2->0), (3->0).
        assert_eq!(cat.morphisms(), 8);
    }

    #[test]
    fn random_instances_validate_and_fit_the_size_bounds() {
        let mut rng = StdRng::seed_from_u64(1234);
        for _ in 0..30 {
            let (cat, f) = random_abelian_instance(&mut rng);
            assert!(cat.objects() <= 4);
            assert!(cat.morphisms() <= 12);
            assert!(f.is_abelian());
            assert!(f.values.iter().all(|g| g.order() <= 8));
        }
        for _ in 0..15 {
            let (cat, f) = random_group_instance(&mut rng);
            assert!(cat.objects() <= 4 && cat.morphisms() <= 12);
            let _ = f;
        }
    }

    #[test]
    fn random_subfunctors_exist_for_most_instances() {
        let mut rng = StdRng::seed_from_u64(77);
        let mut found = 0;
        for _ in 0..20 {
            let (cat, f) = random_group_instance(&mut rng);
            if random_subfunctor(&mut rng, &cat, &f, false).is_some() {
                found += 1;
            }
        }
        assert!(found >= 15, "only {found} subfunctor instances found");
    }
}
