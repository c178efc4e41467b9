//! Free nilpotent groups of class <= 4 on Hall basic commutators. The
//! structure constants are not transcribed from anywhere: each commutator
//! tail is computed by expanding the commutator word in the truncated free
//! associative ring (generators map to 1 + X_j) and solving for normal-form
//! exponents layer by layer. The expansion is faithful on F/γ_{c+1}(F) and
//! the degree-w leading terms of the weight-w basic commutators form a basis
//! of the free Lie layer, so the solve is exact and unique.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{PcGroup, PcPresentation, PcVec};
use crate::config::CLASS_CAP;
use crate::error::{Error, Result};
use crate::groupring::{expand_word, TruncatedElement};
use crate::intlin::{solve_left, IntMatrix};
use crate::words::Word;

/// A Hall basic commutator: a generator, or [u, v] with u, v previous
/// basics, weight(u) + weight(v) = weight, u > v, and right(u) <= v when u
/// is composite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasicCommutator {
    Gen(usize),
    Comm(usize, usize),
}

/// The free nilpotent group of the given rank and class, with its basic
/// commutator data and the expansion machinery kept for reuse.
#[derive(Clone, Debug)]
pub struct FreeNilpotent {
    pub group: PcGroup,
    pub rank: usize,
    pub class: usize,
    pub basics: Vec<BasicCommutator>,
    pub words: Vec<Word>,
    expansions: Vec<TruncatedElement>,
    /// Per weight w (1-indexed), the solver data: indices of the weight-w
    /// basics and the matrix of their degree-w expansion coefficients.
    layers: Vec<LayerSolver>,
}

#[derive(Clone, Debug)]
struct LayerSolver {
    positions: Vec<usize>,
    matrix: IntMatrix,
}

/// Witt's formula: the number of basic commutators of weight w on k
/// generators, (1/w) Σ_{d|w} μ(d) k^{w/d}.
pub fn witt_number(k: usize, w: usize) -> usize {
    assert!(w >= 1);
    let moebius = |n: usize| -> i64 {
        let mut n = n;
        let mut mu = 1i64;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if n > 1 {
            mu = -mu;
        }
        mu
    };
    let mut sum = 0i64;
    for d in 1..=w {
        if w % d == 0 {
            sum += moebius(d) * (k as i64).pow((w / d) as u32);
        }
    }
    (sum / w as i64) as usize
}

fn generate_basics(rank: usize, class: usize) -> (Vec<BasicCommutator>, Vec<usize>) {
    let mut basics: Vec<BasicCommutator> = (0..rank).map(BasicCommutator::Gen).collect();
    let mut weights: Vec<usize> = vec![1; rank];
    for w in 2..=class {
        let upto = basics.len();
        for v in 0..upto {
            for u in v + 1..upto {
                if weights[u] + weights[v] != w {
                    continue;
                }
                let hall_ok = match basics[u] {
                    BasicCommutator::Gen(_) => true,
                    BasicCommutator::Comm(_, right) => right <= v,
                };
                if hall_ok {
                    basics.push(BasicCommutator::Comm(u, v));
                    weights.push(w);
                }
            }
        }
    }
    (basics, weights)
}

fn basic_word(basics: &[BasicCommutator], index: usize, cache: &mut Vec<Option<Word>>) -> Word {
    if let Some(w) = &cache[index] {
        return w.clone();
    }
    let word = match basics[index] {
        BasicCommutator::Gen(g) => Word::generator(g),
        BasicCommutator::Comm(u, v) => {
            let wu = basic_word(basics, u, cache);
            let wv = basic_word(basics, v, cache);
            Word::commutator(&wu, &wv)
        }
    };
    cache[index] = Some(word.clone());
    word
}

/// Build the free nilpotent pc presentation of the given rank and class.
pub fn free_nilpotent_pc(rank: usize, class: usize) -> Result<FreeNilpotent> {
    if class == 0 || class > CLASS_CAP {
        return Err(Error::ClassCap { requested: class, cap: CLASS_CAP });
    }
    let (basics, weights) = generate_basics(rank, class);
    let s = basics.len();
    let mut cache = vec![None; s];
    let words: Vec<Word> = (0..s).map(|i| basic_word(&basics, i, &mut cache)).collect();
    let order = class + 1;
    let expansions: Vec<TruncatedElement> =
        words.iter().map(|w| expand_word(w, rank, order)).collect::<Result<_>>()?;

    let mut layers = Vec::with_capacity(class);
    for w in 1..=class {
        let positions: Vec<usize> = (0..s).filter(|&i| weights[i] == w).collect();
        let cols = rank.pow(w as u32);
        let rows: Vec<Vec<BigInt>> =
            positions.iter().map(|&i| expansions[i].homogeneous_coords(w)).collect();
        let matrix = IntMatrix::from_rows(cols, rows);
        layers.push(LayerSolver { positions, matrix });
    }

    let scaffold = FreeNilpotent {
        group: PcGroup::new(PcPresentation {
            weights: weights.clone(),
            orders: vec![None; s],
            power_tails: vec![None; s],
            comm_tails: (0..s).map(|j| vec![None; j]).collect(),
            class,
        })
        .unwrap_or_else(|_| unreachable!("trivial tails are consistent")),
        rank,
        class,
        basics,
        words,
        expansions,
        layers,
    };

    // Commutator tails, weight-bounded; everything deeper is trivial.
    let mut comm_tails: Vec<Vec<Option<PcVec>>> = (0..s).map(|j| vec![None; j]).collect();
    for j in 0..s {
        for i in 0..j {
            if weights[i] + weights[j] > class {
                continue;
            }
            let e = scaffold.ring_commutator(j, i)?;
            let tail = scaffold.normal_form_from_expansion(&e)?;
            debug_assert!(tail
                .iter()
                .enumerate()
                .all(|(p, &x)| x == 0 || weights[p] >= weights[i] + weights[j]));
            if tail.iter().any(|&x| x != 0) {
                comm_tails[j][i] = Some(tail);
            }
        }
    }
    let group = PcGroup::new(PcPresentation {
        weights,
        orders: vec![None; s],
        power_tails: vec![None; s],
        comm_tails,
        class,
    })?;
    Ok(FreeNilpotent { group, ..scaffold })
}

impl FreeNilpotent {
    /// Ring expansion of [b_j, b_i] = b_j⁻¹ b_i⁻¹ b_j b_i.
    fn ring_commutator(&self, j: usize, i: usize) -> Result<TruncatedElement> {
        let ej = &self.expansions[j];
        let ei = &self.expansions[i];
        ej.inverse_of_unit()?
            .mul(&ei.inverse_of_unit()?)?
            .mul(ej)?
            .mul(ei)
    }

    /// Solve for the normal form of a group element given its full expansion,
    /// peeling one weight layer at a time.
    pub fn normal_form_from_expansion(&self, e: &TruncatedElement) -> Result<PcVec> {
        let s = self.basics.len();
        let mut exponents = vec![0i128; s];
        let mut value = e.clone();
        for w in 1..=self.class {
            let target = value.homogeneous_coords(w);
            if target.iter().all(Zero::is_zero) {
                continue;
            }
            let solver = &self.layers[w - 1];
            let solution = solve_left(&solver.matrix, &target).ok_or_else(|| {
                Error::Inconsistent(format!("degree-{w} part is not a Lie element"))
            })?;
            let mut prefix = TruncatedElement::one(self.rank, self.class + 1);
            for (&pos, coeff) in solver.positions.iter().zip(&solution) {
                let c = coeff.to_i128().expect("exponent fits in i128");
                if c == 0 {
                    continue;
                }
                exponents[pos] = c;
                let factor = if c > 0 {
                    self.expansions[pos].pow(c as u64)?
                } else {
                    self.expansions[pos].inverse_of_unit()?.pow((-c) as u64)?
                };
                prefix = prefix.mul(&factor)?;
            }
            value = prefix.inverse_of_unit()?.mul(&value)?;
        }
        // A genuine group expansion is now trivial below the truncation.
        let one = TruncatedElement::one(self.rank, self.class + 1);
        if value != one {
            return Err(Error::Inconsistent("expansion is not a group element".into()));
        }
        Ok(exponents)
    }

    /// Normal form of a free-group word by collection.
    pub fn embed_word(&self, w: &Word) -> PcVec {
        let letters: Vec<(usize, i128)> =
            w.letters().iter().map(|&(g, e)| (g, e as i128)).collect();
        self.group.collect(&letters)
    }

    /// Normal form of a free-group word through the Magnus expansion; an
    /// independent route used as an oracle for collection.
    pub fn embed_word_via_expansion(&self, w: &Word) -> Result<PcVec> {
        let e = expand_word(w, self.rank, self.class + 1)?;
        self.normal_form_from_expansion(&e)
    }

    /// The word in the free group realizing a pc generator.
    pub fn generator_word(&self, index: usize) -> &Word {
        &self.words[index]
    }

    /// The word realizing an arbitrary normal form.
    pub fn word_for(&self, x: &PcVec) -> Word {
        let mut out = Word::identity();
        for (i, &e) in x.iter().enumerate() {
            if e != 0 {
                out = out.mul(&self.words[i].pow(e as i64));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn witt_numbers_small() {
        assert_eq!(witt_number(2, 1), 2);
        assert_eq!(witt_number(2, 2), 1);
        assert_eq!(witt_number(2, 3), 2);
        assert_eq!(witt_number(2, 4), 3);
        assert_eq!(witt_number(3, 2), 3);
        assert_eq!(witt_number(3, 3), 8);
        assert_eq!(witt_number(4, 4), 60);
    }

    #[test]
    fn generator_counts_match_witt_formula() {
        for k in 1..=4usize {
            for c in 1..=4usize {
                if k.pow(c as u32) > 300 {
                    continue;
                }
                let f = free_nilpotent_pc(k, c).unwrap();
                for w in 1..=c {
                    let count = f
                        .group
                        .presentation()
                        .weights
                        .iter()
                        .filter(|&&x| x == w)
                        .count();
                    assert_eq!(count, witt_number(k, w), "rank {k} class {c} weight {w}");
                }
            }
        }
    }

    #[test]
    fn rank_one_is_infinite_cyclic() {
        for c in 1..=4 {
            let f = free_nilpotent_pc(1, c).unwrap();
            assert_eq!(f.group.len(), 1);
            assert_eq!(f.group.presentation().orders[0], None);
        }
    }

    #[test]
    fn rank2_class2_is_heisenberg() {
        let f = free_nilpotent_pc(2, 2).unwrap();
        assert_eq!(f.group.len(), 3);
        assert_eq!(f.group.presentation().weights, vec![1, 1, 2]);
        // [a2, a1] = a3.
        let c = f.group.comm(&f.group.generator(1), &f.group.generator(0));
        assert_eq!(c, f.group.generator(2));
    }

    #[test]
    fn rank2_class3_shape() {
        let f = free_nilpotent_pc(2, 3).unwrap();
        assert_eq!(f.group.presentation().weights, vec![1, 1, 2, 3, 3]);
        // γ₃ has rank 2 = (2³ - 2)/3.
        let gamma3 = f.group.lower_central_term(3);
        assert_eq!(gamma3.rank(), 2);
        // Weight grading: γ_i = span of weight >= i generators.
        for i in 1..=4 {
            let term = f.group.lower_central_term(i);
            let span = f.group.full_subgroup().rows_with_lead_weight_at_least(&f.group, i);
            assert_eq!(term, span);
        }
    }

    #[test]
    fn collection_matches_magnus_expansion() {
        let mut rng = StdRng::seed_from_u64(81);
        for (k, c) in [(1usize, 3usize), (2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = free_nilpotent_pc(k, c).unwrap();
            for _ in 0..40 {
                let len = rng.gen_range(0..8);
                let w = Word::reduce(
                    (0..len).map(|_| (rng.gen_range(0..k), rng.gen_range(-3..=3i64))),
                );
                assert_eq!(
                    f.embed_word(&w),
                    f.embed_word_via_expansion(&w).unwrap(),
                    "word {w:?} in F_{k}/γ_{}",
                    c + 1
                );
            }
        }
    }

    #[test]
    fn gamma_words_collect_into_weight_span() {
        // Products of basic commutators of weight >= i land in γ_i.
        let f = free_nilpotent_pc(2, 3).unwrap();
        let mut rng = StdRng::seed_from_u64(82);
        for _ in 0..50 {
            let i = rng.gen_range(2..=3usize);
            let candidates: Vec<usize> = (0..f.group.len())
                .filter(|&p| f.group.presentation().weights[p] >= i)
                .collect();
            let mut word = Word::identity();
            for _ in 0..3 {
                let p = candidates[rng.gen_range(0..candidates.len())];
                word = word.mul(&f.words[p].pow(rng.gen_range(-2..=2i64)));
            }
            let v = f.embed_word(&word);
            let gamma = f.group.lower_central_term(i);
            assert!(f.group.subgroup_member(&gamma, &v));
        }
    }

    #[test]
    fn word_for_rebuilds_elements() {
        let f = free_nilpotent_pc(2, 3).unwrap();
        let mut rng = StdRng::seed_from_u64(83);
        for _ in 0..30 {
            let len = rng.gen_range(0..6);
            let w =
                Word::reduce((0..len).map(|_| (rng.gen_range(0..2), rng.gen_range(-2..=2i64))));
            let v = f.embed_word(&w);
            let rebuilt = f.embed_word(&f.word_for(&v));
            assert_eq!(rebuilt, v);
        }
    }
}
