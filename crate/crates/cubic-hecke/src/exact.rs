//! The exact algebras `A_2 .. A_4` over `R`, built once per process.

use std::sync::OnceLock;

use crate::braid::{BraidWord, Letter};
use crate::derive::derive_transitions;
use crate::enumerate::{signed_relators, Relator, SVec};
use crate::error::{Error, Result};
use crate::rewrite::{rewriter, ReductionTrace, Rewriter};
use crate::scalar::{Exact, Scalars};
use crate::tower::{Algebra, AlgebraElement, Element};

/// Seed of the interpolation nodes for level 4.
pub const DERIVE_SEED: u64 = 7;

static LEVELS: [OnceLock<Algebra<Exact>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];

/// `A_n` over `R` for `n ≤ 4`. Level 4 is certified before it is returned.
pub fn exact_algebra(n: usize) -> Result<&'static Algebra<Exact>> {
    if !(2..=4).contains(&n) {
        return Err(Error::LevelOutOfRange(n));
    }
    let cell = &LEVELS[n - 2];
    if let Some(alg) = cell.get() {
        return Ok(alg);
    }
    let alg = match n {
        2 | 3 => rewriter(n)?.algebra()?,
        _ => {
            let lower = exact_algebra(3)?;
            let alg = Algebra::from_transitions(lower, &derive_transitions(lower, DERIVE_SEED)?)?;
            certify(&alg)?;
            alg
        }
    };
    Ok(cell.get_or_init(|| alg))
}

/// Relators over signed letters, named, for `s_1 .. s_{n-1}`.
pub fn named_relators<S: Scalars>(s: &S, n: usize) -> Vec<(String, Relator<S::Elem>)> {
    let m = n - 1;
    let mut names = Vec::new();
    for i in 1..=m {
        names.push(format!("inverse.{i}"));
        names.push(format!("cubic.{i}"));
    }
    for i in 1..=m {
        for j in i + 2..=m {
            names.push(format!("commute.{i}.{j}"));
        }
    }
    for i in 1..m {
        names.push(format!("braid.{i}"));
    }
    names.into_iter().zip(signed_relators(s, m)).collect()
}

/// Enumerator letter to braid letter.
pub fn letter_of(l: u8) -> Letter {
    let g = (l / 2 + 1) as Letter;
    if l % 2 == 1 {
        -g
    } else {
        g
    }
}

/// The value of a relator on basis vector `k`.
pub fn relator_residue<S: Scalars>(
    alg: &Algebra<S>,
    rel: &Relator<S::Elem>,
    k: usize,
) -> SVec<S::Elem> {
    let e = vec![(k as u32, alg.s.one())];
    let mut total = Vec::new();
    for (c, w) in rel {
        let letters: Vec<Letter> = w.iter().map(|&l| letter_of(l)).collect();
        let img = alg.apply_word(&e, &letters);
        total = crate::tower::add(&alg.s, &total, &crate::tower::scale(&alg.s, &img, c));
    }
    total
}

/// First basis vector on which the relator fails, with its value there.
pub fn relator_failure<S: Scalars>(
    alg: &Algebra<S>,
    rel: &Relator<S::Elem>,
) -> Option<(usize, SVec<S::Elem>)> {
    (0..alg.dim()).find_map(|k| {
        let r = relator_residue(alg, rel, k);
        (!r.is_empty()).then_some((k, r))
    })
}

/// Relations on every basis vector and `1 · w = e_w` for every basis word.
pub fn certify<S: Scalars>(alg: &Algebra<S>) -> Result<()> {
    for (name, rel) in named_relators(&alg.s, alg.n) {
        if let Some((k, _)) = relator_failure(alg, &rel) {
            return Err(Error::Integrity(format!(
                "relation {name} fails on basis vector {k}"
            )));
        }
    }
    let words: Vec<&[Letter]> = alg.catalog.words.iter().map(|w| &w.letters[..]).collect();
    for (k, img) in alg
        .apply_words(&alg.one().terms, &words)
        .into_iter()
        .enumerate()
    {
        let unit = Element {
            n: alg.n,
            terms: vec![(k as u32, alg.s.one())],
        };
        if img != unit.terms {
            return Err(Error::Integrity(format!(
                "basis word {k} does not reduce to itself"
            )));
        }
    }
    Ok(())
}

/// Normal form of a word over `R`: by the rules for `n ≤ 3`, by the tables at level 4.
pub fn reduce_word(
    w: &BraidWord,
    depth_limit: Option<usize>,
) -> Result<(AlgebraElement, Option<ReductionTrace>)> {
    match w.n {
        2 | 3 => {
            let (x, trace) = match depth_limit {
                Some(d) => {
                    let mut r = Rewriter::new(w.n);
                    r.depth_limit = d;
                    r.normal_form(w)?
                }
                None => rewriter(w.n)?.normal_form(w)?,
            };
            Ok((x, Some(trace)))
        }
        4 => Ok((exact_algebra(4)?.word_element(w)?, None)),
        n => Err(Error::LevelOutOfRange(n)),
    }
}
