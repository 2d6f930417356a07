//! Module generating sets and the basis catalogs built from them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::braid::{special, BraidWord, Letter};
use crate::error::{Error, Result};

/// An ordered generating set, split into named strata.
#[derive(Clone, Debug)]
pub struct GenSet {
    pub name: &'static str,
    pub words: Vec<BraidWord>,
    pub strata: Vec<(&'static str, usize)>,
}

impl GenSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn stratum_counts(&self) -> Vec<usize> {
        self.strata.iter().map(|s| s.1).collect()
    }
}

struct Builder {
    name: &'static str,
    n: usize,
    words: Vec<BraidWord>,
    strata: Vec<(&'static str, usize)>,
    open: usize,
}

impl Builder {
    fn new(name: &'static str, n: usize) -> Self {
        Builder {
            name,
            n,
            words: Vec::new(),
            strata: Vec::new(),
            open: 0,
        }
    }

    fn push(&mut self, parts: &[&[Letter]]) {
        let letters: Vec<Letter> = parts.concat();
        self.words.push(
            BraidWord::new(self.n, letters)
                .expect("generator word in range")
                .free_reduce(),
        );
    }

    fn close(&mut self, stratum: &'static str, expected: usize) -> Result<()> {
        let found = self.words.len() - self.open;
        if found != expected {
            return Err(Error::CountMismatch {
                name: format!("{}:{stratum}", self.name),
                expected,
                found,
            });
        }
        self.strata.push((stratum, found));
        self.open = self.words.len();
        Ok(())
    }

    fn finish(self, expected: usize) -> Result<GenSet> {
        if self.words.len() != expected {
            return Err(Error::CountMismatch {
                name: self.name.into(),
                expected,
                found: self.words.len(),
            });
        }
        Ok(GenSet {
            name: self.name,
            words: self.words,
            strata: self.strata,
        })
    }
}

const SIGNS: [Letter; 2] = [1, -1];
const POWERS: [&[Letter]; 3] = [&[], &[1], &[-1]];

fn pw(l: Letter, e: &[Letter]) -> Vec<Letter> {
    e.iter().map(|s| s * l).collect()
}

/// `{1, s_1, s_1^-1}`
pub fn gens_t2() -> Result<GenSet> {
    let mut b = Builder::new("T2", 2);
    for e in POWERS {
        b.push(&[e]);
    }
    b.close("all", 3)?;
    b.finish(3)
}

/// Right coset words of `A_2` in `A_3`.
pub fn gens_t3() -> Result<GenSet> {
    let mut b = Builder::new("T3", 3);
    b.push(&[]);
    b.close("1", 1)?;
    for s in SIGNS {
        for e in POWERS {
            b.push(&[&[2 * s], &pw(1, e)]);
        }
    }
    b.close("single", 6)?;
    b.push(&[&[-2, 1, -2]]);
    b.close("double", 1)?;
    b.finish(8)
}

/// The 27 generators of `A_4` as an `A_3`-module.
pub fn gens_a() -> Result<GenSet> {
    let mut b = Builder::new("A", 4);
    b.push(&[]);
    b.push(&[&special("w_minus", 4)?.letters]);
    b.push(&[&special("w_plus", 4)?.letters]);
    b.push(&[&[3]]);
    b.push(&[&[-3]]);
    for x in SIGNS {
        for y in SIGNS {
            b.push(&[&[3 * x, 2 * y]]);
        }
    }
    for x in SIGNS {
        for y in SIGNS {
            for z in SIGNS {
                b.push(&[&[3 * x, 2 * y, z]]);
            }
        }
    }
    for x in SIGNS {
        b.push(&[&[3 * x, -2, 1, -2]]);
    }
    b.push(&[&[3, -2, 3]]);
    for x in SIGNS {
        b.push(&[&[3, -2, 3, x]]);
    }
    b.push(&[&[3, -2, 3, 1, -2, 1]]);
    for x in SIGNS {
        for y in SIGNS {
            b.push(&[&[3, -2, 3, x, 2 * y]]);
        }
    }
    b.close("all", 27)?;
    b.finish(27)
}

/// Image of [`gens_a`] under `s_1 ↔ s_3`.
pub fn gens_aprime() -> Result<GenSet> {
    let a = gens_a()?;
    let mut b = Builder::new("A'", 4);
    for w in &a.words {
        b.push(&[&w.ad_delta()?.letters]);
    }
    b.close("all", 27)?;
    b.finish(27)
}

/// The 72 generators of `A_4` as a `<s_1, s_3>`-module.
pub fn gens_b() -> Result<GenSet> {
    let mut b = Builder::new("B", 4);
    b.push(&[]);
    for s in SIGNS {
        for e1 in POWERS {
            for e3 in POWERS {
                b.push(&[&[2 * s], &pw(1, e1), &pw(3, e3)]);
            }
        }
    }
    b.close("1", 19)?;
    b.push(&[&[2, 1, 3, 2]]);
    b.push(&[&[-2, -1, -3, -2]]);
    for e in POWERS {
        b.push(&[&[2, -1, 2], &pw(3, e)]);
    }
    for e in POWERS {
        b.push(&[&[2, -3, 2], &pw(1, e)]);
    }
    for e in POWERS {
        b.push(&[&[2, 1, -3, -2], &pw(1, e)]);
    }
    for e in POWERS {
        b.push(&[&[2, -1, 3, -2], &pw(3, e)]);
    }
    for x in [
        &[2, -1, 3, 2][..],
        &[2, -1, -3, 2],
        &[2, -1, -3, -2],
        &[-2, 1, 3, -2],
    ] {
        for e1 in POWERS {
            for e3 in POWERS {
                b.push(&[x, &pw(1, e1), &pw(3, e3)]);
            }
        }
    }
    b.close("2", 50)?;
    for name in ["x_plus", "x_minus", "y_minus_word"] {
        b.push(&[&special(name, 4)?.letters]);
    }
    b.close("3", 3)?;
    b.finish(72)
}

/// The 240 generators of `A_5` as an `A_4`-module.
pub fn gens_t5() -> Result<GenSet> {
    let a = gens_a()?;
    let ap = gens_aprime()?;
    let bset = gens_b()?;
    let w0 = special("w0", 4)?;
    let w0i = w0.inverse();
    let wp = special("w_plus", 4)?.letters;
    let wm = special("w_minus", 4)?.letters;
    let mut b = Builder::new("T5", 5);
    b.push(&[]);
    b.close("0", 1)?;
    for s in SIGNS {
        for x in &a.words {
            b.push(&[&[4 * s], &x.letters]);
        }
    }
    b.close("1", 54)?;
    for x in &bset.words {
        b.push(&[&[4, -3, 4], &x.letters]);
    }
    b.close("2", 72)?;
    for head in [&[4, 3, 2, 2, 3, 4][..], &[-4, -3, -2, -2, -3, -4]] {
        for x in &ap.words {
            b.push(&[head, &x.letters]);
        }
    }
    b.close("3", 54)?;
    b.push(&[&[4], &w0.letters, &[4]]);
    b.push(&[&[-4], &w0i.letters, &[-4]]);
    for (s, w) in [(4, &w0i), (-4, &w0)] {
        for x in &a.words {
            b.push(&[&[s], &w.letters, &[s], &x.letters]);
        }
    }
    b.close("4", 56)?;
    b.push(&[&[4], &wm, &[4], &wm, &[4]]);
    b.push(&[&[4], &wp, &[-4], &wp, &[4]]);
    b.push(&[&[-4], &wm, &[4], &wm, &[-4]]);
    b.close("5", 3)?;
    b.finish(240)
}

/// The generating set `T_n` with `A_n = ⊕_{t ∈ T_n} A_{n-1} t`.
pub fn tower_gens(n: usize) -> Result<GenSet> {
    match n {
        2 => gens_t2(),
        3 => gens_t3(),
        4 => gens_a(),
        5 => gens_t5(),
        _ => Err(Error::LevelOutOfRange(n)),
    }
}

/// Ordered canonical basis words of `A_n`.
#[derive(Debug)]
pub struct BasisCatalog {
    pub n: usize,
    pub words: Vec<BraidWord>,
    /// `|T_n|`; index `i` factors as `(i / width, i % width)`.
    pub width: usize,
    index: HashMap<Vec<Letter>, usize>,
}

impl BasisCatalog {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, letters: &[Letter]) -> Option<usize> {
        self.index.get(letters).copied()
    }

    pub fn word(&self, i: usize) -> &BraidWord {
        &self.words[i]
    }

    /// `(outer index, generator index)`
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.width, i % self.width)
    }

    fn build(n: usize) -> Result<BasisCatalog> {
        let gens = tower_gens(n)?;
        let outer: Vec<BraidWord> = if n == 2 {
            vec![BraidWord::identity(2)]
        } else {
            basis_words(n - 1)?
                .words
                .iter()
                .map(|w| w.widen(n))
                .collect::<Result<_>>()?
        };
        let mut words = Vec::with_capacity(outer.len() * gens.len());
        for u in &outer {
            for t in &gens.words {
                let mut letters = u.letters.clone();
                letters.extend_from_slice(&t.letters);
                words.push(BraidWord { n, letters });
            }
        }
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.free_reduce().len() != w.len() {
                return Err(Error::Integrity(format!(
                    "basis word {w} is not freely reduced"
                )));
            }
            if index.insert(w.letters.clone(), i).is_some() {
                return Err(Error::Integrity(format!("duplicate basis word {w}")));
            }
        }
        Ok(BasisCatalog {
            n,
            words,
            width: gens.len(),
            index,
        })
    }
}

/// The catalog for `A_n`, built once per process.
pub fn basis_words(n: usize) -> Result<Arc<BasisCatalog>> {
    static CACHE: [OnceLock<Arc<BasisCatalog>>; 4] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    if !(2..=5).contains(&n) {
        return Err(Error::LevelOutOfRange(n));
    }
    if let Some(c) = CACHE[n - 2].get() {
        return Ok(c.clone());
    }
    let built = Arc::new(BasisCatalog::build(n)?);
    Ok(CACHE[n - 2].get_or_init(|| built).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(gens_a().unwrap().len(), 27);
        assert_eq!(gens_aprime().unwrap().len(), 27);
        assert_eq!(gens_b().unwrap().stratum_counts(), vec![19, 50, 3]);
        assert_eq!(
            gens_t5().unwrap().stratum_counts(),
            vec![1, 54, 72, 54, 56, 3]
        );
        let sizes: Vec<usize> = (2..=5).map(|n| basis_words(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![3, 24, 648, 155520]);
    }

    #[test]
    fn catalog_shape() {
        let b3 = basis_words(3).unwrap();
        assert_eq!(b3.word(0).len(), 0);
        assert_eq!(b3.index_of(&[-2, 1, -2]), Some(7));
        assert_eq!(b3.index_of(&[1, -2, 1, -2]), Some(15));
        let t5 = gens_t5().unwrap();
        assert_eq!(t5.words[239].len(), 13);
        assert!(gens_a()
            .unwrap()
            .words
            .iter()
            .any(|w| w.letters == vec![3, -2, 1, -2, 3]));
    }
}
