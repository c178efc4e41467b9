//! Free-group words, presentations, homomorphism data, and the coproduct
//! in the category of presentations of a group.
//!
//! Words are stored run-length encoded as (generator index, exponent) pairs
//! and kept freely reduced at all times: adjacent pairs have distinct
//! generator indices and no exponent is zero.

use crate::error::{Error, Result};

/// A freely reduced word over indexed generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(index: usize) -> Self {
        Word { letters: vec![(index, 1)] }
    }

    pub fn generator_power(index: usize, exponent: i64) -> Self {
        if exponent == 0 {
            Word::identity()
        } else {
            Word { letters: vec![(index, exponent)] }
        }
    }

    /// Free reduction of an arbitrary run of signed letters.
    pub fn reduce(raw: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut letters: Vec<(usize, i64)> = Vec::new();
        for (gen, exp) in raw {
            if exp == 0 {
                continue;
            }
            match letters.last_mut() {
                Some((g, e)) if *g == gen => {
                    *e += exp;
                    if *e == 0 {
                        letters.pop();
                    }
                }
                _ => letters.push((gen, exp)),
            }
        }
        Word { letters }
    }

    /// Reduction with a generator-count check, for user-supplied input.
    pub fn reduce_checked(raw: impl IntoIterator<Item = (usize, i64)>, generators: usize) -> Result<Self> {
        let raw: Vec<(usize, i64)> = raw.into_iter().collect();
        for &(gen, _) in &raw {
            if gen >= generators {
                return Err(Error::GeneratorIndex { index: gen, count: generators });
            }
        }
        Ok(Word::reduce(raw))
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total letter length counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word::reduce(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().mul(self).mul(by)
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Rename generators through `map[g]`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Word {
        Word::reduce(self.letters.iter().map(|&(g, e)| (map(g), e)))
    }
}

/// A presentation F -> G of a group by generators and relators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreePresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl FreePresentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for name in &generator_names {
            if !seen.insert(name.clone()) {
                return Err(Error::Invalid(format!("duplicate generator `{name}`")));
            }
        }
        let count = generator_names.len();
        for relator in &relators {
            if let Some(max) = relator.max_generator() {
                if max >= count {
                    return Err(Error::GeneratorIndex { index: max, count });
                }
            }
        }
        Ok(FreePresentation { generator_names, relators })
    }

    pub fn rank(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The coproduct P ⊔ P in the category of presentations of G, together
    /// with the two injections.
    ///
    /// Generators are doubled (x_j and x'_j); relators are both copies of the
    /// original relators plus the identifications x_j·x'_j⁻¹, so that the
    /// relator set normally generates the kernel of the fold map F∗F -> G.
    pub fn coproduct(&self) -> (FreePresentation, GroupMap, GroupMap) {
        let k = self.rank();
        let mut names = Vec::with_capacity(2 * k);
        names.extend(self.generator_names.iter().cloned());
        names.extend(self.generator_names.iter().map(|n| format!("{n}'")));
        let mut relators = Vec::new();
        relators.extend(self.relators.iter().cloned());
        relators.extend(self.relators.iter().map(|r| r.relabel(|g| g + k)));
        for j in 0..k {
            relators.push(Word::reduce([(j, 1), (j + k, -1)]));
        }
        let doubled = FreePresentation { generator_names: names, relators };
        let iota1 = GroupMap::new((0..k).map(Word::generator).collect());
        let iota2 = GroupMap::new((0..k).map(|j| Word::generator(j + k)).collect());
        (doubled, iota1, iota2)
    }
}

/// A homomorphism between free groups, given by generator images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupMap {
    images: Vec<Word>,
}

impl GroupMap {
    pub fn new(images: Vec<Word>) -> Self {
        GroupMap { images }
    }

    pub fn identity(rank: usize) -> Self {
        GroupMap { images: (0..rank).map(Word::generator).collect() }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Substitute generator images into `word` and reduce.
    pub fn apply(&self, word: &Word) -> Result<Word> {
        let mut out = Word::identity();
        for &(gen, exp) in word.letters() {
            let image = self.images.get(gen).ok_or(Error::ArityMismatch {
                provided: self.images.len(),
                index: gen,
            })?;
            out = out.mul(&image.pow(exp));
        }
        Ok(out)
    }
}
