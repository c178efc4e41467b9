//! Finite small categories with composition tables, functors to finite
//! groups, the nerve, and the machinery for derived limits: the standard
//! cochain complex for abelian coefficients and the non-abelian Z¹/Lim¹
//! with its connecting map and exactness checkers.

mod abelian;
pub mod instances;
mod nonabelian;

pub use abelian::{cochain_complex, lim_n, AbelianFunctor, CochainComplex, CochainLevel, TablePresentation};
pub use nonabelian::{
    check_exact_seq1, check_exact_seq2, connecting_delta, lim0_direct, lim1_nonabelian,
    z1_nonabelian, Cocycle1, ExactnessReport, Lim1, PositionReport, SubFunctor,
};

use crate::error::{Error, Result};
use crate::fingroup::FiniteGroup;

/// A finite category: objects, morphisms with domain/codomain, identities,
/// and a total composition table on composable pairs. All laws are validated
/// on construction.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identity: Vec<usize>,
    /// compose[g][f] = g∘f, defined exactly when dom(g) = cod(f).
    compose: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
    pub fn new(
        object_names: Vec<String>,
        morphism_names: Vec<String>,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identity: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let cat = FiniteCategory { object_names, morphism_names, dom, cod, identity, compose };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let n_obj = self.object_names.len();
        let n_mor = self.morphism_names.len();
        if self.dom.len() != n_mor || self.cod.len() != n_mor {
            return Err(Error::CategoryLaw("dom/cod tables have wrong length".into()));
        }
        if self.dom.iter().chain(self.cod.iter()).any(|&o| o >= n_obj) {
            return Err(Error::CategoryLaw("dom/cod out of range".into()));
        }
        if self.identity.len() != n_obj {
            return Err(Error::CategoryLaw("one identity per object required".into()));
        }
        for (c, &e) in self.identity.iter().enumerate() {
            if e >= n_mor || self.dom[e] != c || self.cod[e] != c {
                return Err(Error::CategoryLaw(format!("identity of object {c} is not an endomorphism")));
            }
        }
        if self.compose.len() != n_mor || self.compose.iter().any(|row| row.len() != n_mor) {
            return Err(Error::CategoryLaw("composition table has wrong shape".into()));
        }
        for g in 0..n_mor {
            for f in 0..n_mor {
                match self.compose[g][f] {
                    Some(gf) => {
                        if self.dom[g] != self.cod[f] {
                            return Err(Error::CategoryLaw(format!(
                                "composite defined on non-composable pair ({g}, {f})"
                            )));
                        }
                        if gf >= n_mor || self.dom[gf] != self.dom[f] || self.cod[gf] != self.cod[g]
                        {
                            return Err(Error::CategoryLaw(format!(
                                "composite of ({g}, {f}) has wrong endpoints"
                            )));
                        }
                    }
                    None => {
                        if self.dom[g] == self.cod[f] {
                            return Err(Error::CategoryLaw(format!(
                                "missing composite for composable pair ({g}, {f})"
                            )));
                        }
                    }
                }
            }
        }
        for f in 0..n_mor {
            if self.compose[self.identity[self.cod[f]]][f] != Some(f)
                || self.compose[f][self.identity[self.dom[f]]] != Some(f)
            {
                return Err(Error::CategoryLaw(format!("identity law fails at morphism {f}")));
            }
        }
        for h in 0..n_mor {
            for g in 0..n_mor {
                if self.dom[h] != self.cod[g] {
                    continue;
                }
                for f in 0..n_mor {
                    if self.dom[g] != self.cod[f] {
                        continue;
                    }
                    let left = self.compose[self.compose[h][g].expect("composable")][f];
                    let right = self.compose[h][self.compose[g][f].expect("composable")];
                    if left != right {
                        return Err(Error::CategoryLaw(format!(
                            "associativity fails on ({h}, {g}, {f})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn morphisms(&self) -> usize {
        self.morphism_names.len()
    }

    pub fn object_name(&self, c: usize) -> &str {
        &self.object_names[c]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphism_names[f]
    }

    pub fn dom(&self, f: usize) -> usize {
        self.dom[f]
    }

    pub fn cod(&self, f: usize) -> usize {
        self.cod[f]
    }

    pub fn identity_of(&self, c: usize) -> usize {
        self.identity[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom[f]] == f
    }

    /// g∘f (apply f first).
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// All composable n-tuples (α₁,…,α_n) with dom(α_i) = cod(α_{i+1}),
    /// identities included (the unnormalized nerve). Level 0 lists one empty
    /// tuple per object, in object order.
    pub fn nerve_chains(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return (0..self.objects()).map(|_| Vec::new()).collect();
        }
        let mut chains: Vec<Vec<usize>> = (0..self.morphisms()).map(|f| vec![f]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for chain in &chains {
                let last = *chain.last().expect("nonempty chain");
                for f in 0..self.morphisms() {
                    if self.dom(last) == self.cod(f) {
                        let mut longer = chain.clone();
                        longer.push(f);
                        next.push(longer);
                    }
                }
            }
            chains = next;
        }
        chains
    }

    /// Codomain object of a chain: cod(α₁), or the object itself at level 0.
    pub fn chain_target(&self, level: usize, index: usize, chain: &[usize]) -> usize {
        if level == 0 {
            index
        } else {
            self.cod(chain[0])
        }
    }

    /// Face maps for chains of length >= 2: d₀ drops the first morphism,
    /// d_i composes the i-th pair, d_n drops the last. Faces of 1-chains are
    /// objects (dom for d₀'s chain side, cod for d₁) and are handled by the
    /// cochain construction directly.
    pub fn face(&self, chain: &[usize], i: usize) -> Vec<usize> {
        let n = chain.len();
        assert!(n >= 2 && i <= n);
        if i == 0 {
            chain[1..].to_vec()
        } else if i == n {
            chain[..n - 1].to_vec()
        } else {
            let mut out = Vec::with_capacity(n - 1);
            out.extend_from_slice(&chain[..i - 1]);
            out.push(self.compose(chain[i - 1], chain[i]).expect("chain is composable"));
            out.extend_from_slice(&chain[i + 1..]);
            out
        }
    }
}

/// A functor to finite groups: one group table per object, one element map
/// per morphism. Functoriality is validated exhaustively.
#[derive(Clone, Debug)]
pub struct GroupFunctor {
    pub values: Vec<FiniteGroup>,
    /// maps[f][x] = F(f)(x).
    pub maps: Vec<Vec<usize>>,
}

impl GroupFunctor {
    pub fn new(cat: &FiniteCategory, values: Vec<FiniteGroup>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if values.len() != cat.objects() || maps.len() != cat.morphisms() {
            return Err(Error::FunctorLaw("value/map counts do not match the category".into()));
        }
        let f = GroupFunctor { values, maps };
        f.validate(cat)?;
        Ok(f)
    }

    fn validate(&self, cat: &FiniteCategory) -> Result<()> {
        for m in 0..cat.morphisms() {
            let src = &self.values[cat.dom(m)];
            let tgt = &self.values[cat.cod(m)];
            let map = &self.maps[m];
            if map.len() != src.order() || map.iter().any(|&x| x >= tgt.order()) {
                return Err(Error::FunctorLaw(format!(
                    "map of morphism {m} has the wrong shape"
                )));
            }
            for a in 0..src.order() {
                for b in 0..src.order() {
                    if map[src.mul(a, b)] != tgt.mul(map[a], map[b]) {
                        return Err(Error::FunctorLaw(format!(
                            "map of morphism {m} is not a homomorphism"
                        )));
                    }
                }
            }
        }
        for c in 0..cat.objects() {
            let id = cat.identity_of(c);
            if (0..self.values[c].order()).any(|x| self.maps[id][x] != x) {
                return Err(Error::FunctorLaw(format!("F(id) is not the identity at object {c}")));
            }
        }
        for g in 0..cat.morphisms() {
            for f in 0..cat.morphisms() {
                if let Some(gf) = cat.compose(g, f) {
                    for x in 0..self.values[cat.dom(f)].order() {
                        if self.maps[gf][x] != self.maps[g][self.maps[f][x]] {
                            return Err(Error::FunctorLaw(format!(
                                "F({g}∘{f}) differs from F({g})∘F({f})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, morphism: usize, x: usize) -> usize {
        self.maps[morphism][x]
    }

    pub fn is_abelian(&self) -> bool {
        self.values.iter().all(FiniteGroup::is_abelian)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcoh::instances;

    #[test]
    fn trivial_category_validates() {
        let cat = instances::one_object_identity();
        assert_eq!(cat.objects(), 1);
        assert_eq!(cat.morphisms(), 1);
        for n in 0..4 {
            assert_eq!(cat.nerve_chains(n).len(), 1);
        }
    }

    #[test]
    fn broken_composition_is_diagnosed() {
        // Two objects, one arrow a -> b plus identities; break the identity law.
        let names = vec!["a".into(), "b".into()];
        let morph = vec!["ida".into(), "idb".into(), "f".into()];
        let dom = vec![0, 1, 0];
        let cod = vec![0, 1, 1];
        let identity = vec![0, 1];
        let mut compose = vec![vec![None; 3]; 3];
        compose[0][0] = Some(0);
        compose[1][1] = Some(1);
        compose[2][0] = Some(2);
        compose[1][2] = Some(1); // wrong: idb ∘ f should be f
        let err = FiniteCategory::new(names, morph, dom, cod, identity, compose).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("identity law") || msg.contains("wrong endpoints"), "{msg}");
    }

    #[test]
    fn bg_for_a_finite_group_validates() {
        let (cat, f) = instances::bg_with_trivial_action(
            &crate::fingroup::FiniteGroup::cyclic(2),
            &crate::fingroup::FiniteGroup::cyclic(3),
        );
        assert_eq!(cat.objects(), 1);
        assert_eq!(cat.morphisms(), 2);
        assert!(f.is_abelian());
        // |(NC)_n| = 2^n for BC₂.
        for n in 0..5 {
            assert_eq!(cat.nerve_chains(n).len(), 2usize.pow(n as u32).max(1));
        }
    }

    #[test]
    fn arrow_category_chain_count() {
        let cat = instances::arrow_category();
        assert_eq!(cat.morphisms(), 3);
        assert_eq!(cat.nerve_chains(1).len(), 3);
    }
}
