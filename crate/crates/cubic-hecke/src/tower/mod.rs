//! Basis catalogs, action tables and arithmetic in `A_n`.

mod gens;

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::json;

pub use gens::{
    basis_words, gens_a, gens_aprime, gens_b, gens_t2, gens_t3, gens_t5, tower_gens, BasisCatalog,
    GenSet,
};

use crate::braid::{BraidWord, Letter};
use crate::enumerate::{combine, SVec};
use crate::error::{Error, Result};
use crate::ring::LaurentCoeff;
use crate::ring::SpecPoint;
use crate::scalar::{Exact, ModP, Scalars};

/// A linear combination of basis words of `A_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<E> {
    pub n: usize,
    /// `(basis index, coefficient)`, sorted by index, no zeros.
    pub terms: SVec<E>,
}

pub type AlgebraElement = Element<LaurentCoeff>;

impl<E: Clone> Element<E> {
    pub fn zero(n: usize) -> Self {
        Element {
            n,
            terms: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, i: usize) -> Option<&E> {
        self.terms
            .binary_search_by_key(&(i as u32), |t| t.0)
            .ok()
            .map(|k| &self.terms[k].1)
    }
}

impl AlgebraElement {
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let cat = basis_words(self.n)?;
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(i, c)| json!({"word": cat.word(*i as usize).letters, "coeff": c.to_json()}))
            .collect();
        Ok(json!({"n": self.n, "terms": terms}))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("element: {m}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let cat = basis_words(n)?;
        let mut raw = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let letters: Vec<Letter> = serde_json::from_value(t["word"].clone())?;
            let i = cat
                .index_of(&letters)
                .ok_or_else(|| bad("word is not a basis word"))?;
            raw.push((i as u32, LaurentCoeff::from_json(&t["coeff"])?));
        }
        Ok(Element {
            n,
            terms: combine(&Exact, raw),
        })
    }
}

pub fn add<S: Scalars>(s: &S, x: &SVec<S::Elem>, y: &SVec<S::Elem>) -> SVec<S::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push(y[j].clone());
            j += 1;
        } else {
            let v = s.add(&x[i].1, &y[j].1);
            if !s.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<S: Scalars>(s: &S, x: &SVec<S::Elem>, k: &S::Elem) -> SVec<S::Elem> {
    if s.is_zero(k) {
        return Vec::new();
    }
    x.iter()
        .map(|(i, v)| (*i, s.mul(v, k)))
        .filter(|(_, v)| !s.is_zero(v))
        .collect()
}

pub fn sub<S: Scalars>(s: &S, x: &SVec<S::Elem>, y: &SVec<S::Elem>) -> SVec<S::Elem> {
    add(s, x, &scale(s, y, &s.neg(&s.one())))
}

/// Right multiplication by one signed generator, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionTable<E> {
    pub n: usize,
    pub gen: Letter,
    /// `cols[j]` is `basis_j · gen`, sorted by row.
    pub cols: Vec<SVec<E>>,
}

impl<E: Clone> ActionTable<E> {
    /// `x · gen`
    pub fn apply<S: Scalars<Elem = E>>(&self, s: &S, x: &SVec<E>) -> SVec<E> {
        let mut raw = Vec::new();
        for (j, c) in x {
            for (i, d) in &self.cols[*j as usize] {
                raw.push((*i, s.mul(c, d)));
            }
        }
        combine(s, raw)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }
}

impl ActionTable<LaurentCoeff> {
    /// Entrywise image under a specialization.
    pub fn specialize<S: Scalars>(&self, s: &S) -> ActionTable<S::Elem> {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, x)| (*i, s.embed(x)))
                    .filter(|(_, x)| !s.is_zero(x))
                    .collect()
            })
            .collect();
        ActionTable {
            n: self.n,
            gen: self.gen,
            cols,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cols: Vec<Vec<_>> = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, x)| json!({"row": i, "coeff": x.to_json()}))
                    .collect()
            })
            .collect();
        json!({"n": self.n, "gen": self.gen, "cols": cols})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("table: {m}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let gen = v["gen"].as_i64().ok_or_else(|| bad("missing gen"))? as Letter;
        let mut cols = Vec::new();
        for c in v["cols"].as_array().ok_or_else(|| bad("missing cols"))? {
            let mut col = Vec::new();
            for e in c.as_array().ok_or_else(|| bad("column is not an array"))? {
                let row = e["row"].as_u64().ok_or_else(|| bad("missing row"))? as u32;
                col.push((row, LaurentCoeff::from_json(&e["coeff"])?));
            }
            cols.push(col);
        }
        Ok(ActionTable { n, gen, cols })
    }
}

impl ActionTable<u64> {
    pub fn to_json(&self) -> serde_json::Value {
        let cols: Vec<Vec<_>> = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, x)| json!({"row": i, "coeff": x.to_string()}))
                    .collect()
            })
            .collect();
        json!({"n": self.n, "gen": self.gen, "cols": cols})
    }
}

/// The table reduced at a point, coefficients in `F_p`.
pub fn specialize_table(t: &ActionTable<LaurentCoeff>, pt: &SpecPoint) -> Result<ActionTable<u64>> {
    Ok(t.specialize(&ModP::from_point(pt)?))
}

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Engine version, dimension and generator strata of level `n`.
pub fn header(n: usize) -> Result<serde_json::Value> {
    let cat = basis_words(n)?;
    let gens = tower_gens(n)?;
    let strata: Vec<_> = gens
        .strata
        .iter()
        .map(|(name, k)| json!({"name": name, "count": k}))
        .collect();
    Ok(json!({
        "engine": format!("cubic-hecke {ENGINE_VERSION}"),
        "n": n,
        "dim": cat.len(),
        "generators": {"name": gens.name, "count": gens.len(), "strata": strata},
    }))
}

fn slot(g: Letter) -> usize {
    2 * (g.unsigned_abs() as usize - 1) + (g < 0) as usize
}

/// `A_n` over a coefficient domain, realized by its right action tables.
#[derive(Clone, Debug)]
pub struct Algebra<S: Scalars> {
    pub s: S,
    pub n: usize,
    pub catalog: Arc<BasisCatalog>,
    tables: Vec<ActionTable<S::Elem>>,
}

impl<S: Scalars> Algebra<S> {
    /// From the tables of `s_1 .. s_{n-1}`; inverse tables follow from the cubic relation.
    pub fn from_tables(s: S, n: usize, positive: Vec<ActionTable<S::Elem>>) -> Result<Self> {
        let catalog = basis_words(n)?;
        if positive.len() != n - 1 || positive.iter().any(|t| t.dim() != catalog.len()) {
            return Err(Error::Integrity(format!(
                "table shapes do not match level {n}"
            )));
        }
        let mut tables = Vec::with_capacity(2 * (n - 1));
        for t in positive {
            let inv = inverse_table(&s, &t);
            tables.push(t);
            tables.push(inv);
        }
        Ok(Algebra {
            s,
            n,
            catalog,
            tables,
        })
    }

    /// Level `n` from level `n-1` and the products `t · s_g` for `t ∈ T_n`.
    ///
    /// `trans[g-1][t]` holds `t · s_g` in level-`n` coordinates.
    pub fn from_transitions(lower: &Algebra<S>, trans: &[Vec<SVec<S::Elem>>]) -> Result<Self> {
        let n = lower.n + 1;
        let s = lower.s.clone();
        let catalog = basis_words(n)?;
        let width = catalog.width;
        if trans.len() != n - 1 || trans.iter().any(|tr| tr.len() != width) {
            return Err(Error::Integrity(
                "transition data has the wrong shape".into(),
            ));
        }
        // products of lower basis words, e_u · u'
        let words: Vec<&[Letter]> = lower.catalog.words.iter().map(|w| &w.letters[..]).collect();
        let prods: Vec<Vec<SVec<S::Elem>>> = (0..lower.dim())
            .map(|u| lower.apply_words(&vec![(u as u32, s.one())], &words))
            .collect();
        let lift = |g: Letter, tr: &[SVec<S::Elem>]| {
            let mut cols = Vec::with_capacity(catalog.len());
            for pu in &prods {
                for col_t in tr {
                    let mut raw = Vec::new();
                    for (k, c) in col_t {
                        let (u2, t2) = catalog.split(*k as usize);
                        for (v, d) in &pu[u2] {
                            raw.push((*v * width as u32 + t2 as u32, s.mul(c, d)));
                        }
                    }
                    cols.push(combine(&s, raw));
                }
            }
            ActionTable { n, gen: g, cols }
        };
        let (ci, a, b) = (s.c_inv(), s.a(), s.b());
        let mut tables = Vec::with_capacity(2 * (n - 1));
        for (g, tr) in trans.iter().enumerate() {
            let pos = lift(g as Letter + 1, tr);
            // t · s^-1 = c^-1 (t s^2 - a t s - b t)
            let inv: Vec<SVec<S::Elem>> = tr
                .iter()
                .enumerate()
                .map(|(t, col)| {
                    let mut raw: Vec<(u32, S::Elem)> = pos.apply(&s, col);
                    raw.extend(col.iter().map(|(i, x)| (*i, s.neg(&s.mul(x, &a)))));
                    raw.push((t as u32, s.neg(&b)));
                    let raw = raw.into_iter().map(|(i, x)| (i, s.mul(&x, &ci))).collect();
                    combine(&s, raw)
                })
                .collect();
            tables.push(pos);
            tables.push(lift(-(g as Letter + 1), &inv));
        }
        Ok(Algebra {
            s,
            n,
            catalog,
            tables,
        })
    }

    /// The first `|T_n|` columns of each positive table.
    pub fn transitions(&self) -> Vec<Vec<SVec<S::Elem>>> {
        self.positive_tables()
            .map(|t| t.cols[..self.catalog.width].to_vec())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.catalog.len()
    }

    pub fn table(&self, g: Letter) -> &ActionTable<S::Elem> {
        &self.tables[slot(g)]
    }

    pub fn positive_tables(&self) -> impl Iterator<Item = &ActionTable<S::Elem>> {
        self.tables.iter().step_by(2)
    }

    pub fn one(&self) -> Element<S::Elem> {
        Element {
            n: self.n,
            terms: vec![(0, self.s.one())],
        }
    }

    pub fn basis_element(&self, i: usize) -> Element<S::Elem> {
        Element {
            n: self.n,
            terms: vec![(i as u32, self.s.one())],
        }
    }

    pub fn mul_letter(&self, x: &SVec<S::Elem>, g: Letter) -> SVec<S::Elem> {
        self.table(g).apply(&self.s, x)
    }

    pub fn apply_word(&self, x: &SVec<S::Elem>, letters: &[Letter]) -> SVec<S::Elem> {
        letters
            .iter()
            .fold(x.clone(), |acc, &g| self.mul_letter(&acc, g))
    }

    /// `x · w` for each word, sharing common prefixes.
    pub fn apply_words(&self, x: &SVec<S::Elem>, words: &[&[Letter]]) -> Vec<SVec<S::Elem>> {
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_by(|&i, &j| words[i].cmp(words[j]));
        let mut out = vec![Vec::new(); words.len()];
        // stack of (prefix length, value)
        let mut stack: Vec<(usize, SVec<S::Elem>)> = vec![(0, x.clone())];
        let mut prev: &[Letter] = &[];
        for &i in &order {
            let w = words[i];
            let common = prev.iter().zip(w).take_while(|(a, b)| a == b).count();
            while stack.last().unwrap().0 > common {
                stack.pop();
            }
            let mut depth = stack.last().unwrap().0;
            while depth < w.len() {
                let next = self.mul_letter(&stack.last().unwrap().1, w[depth]);
                depth += 1;
                stack.push((depth, next));
            }
            out[i] = stack.last().unwrap().1.clone();
            prev = w;
        }
        out
    }

    /// The image of a braid word: `1 · w`.
    pub fn word_element(&self, w: &BraidWord) -> Result<Element<S::Elem>> {
        self.check_word(w)?;
        Ok(Element {
            n: self.n,
            terms: self.apply_word(&self.one().terms, &w.free_reduce().letters),
        })
    }

    fn check_word(&self, w: &BraidWord) -> Result<()> {
        if w.n != self.n {
            return Err(Error::StrandMismatch(w.n, self.n));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element<S::Elem>, y: &Element<S::Elem>) -> Result<Element<S::Elem>> {
        if x.n != self.n || y.n != self.n {
            return Err(Error::StrandMismatch(x.n.max(y.n), self.n));
        }
        let s = &self.s;
        // y = Σ_t (Σ_u c_{u,t} u) t, so x·y = Σ_t (Σ_u c_{u,t} x·u)·t
        let mut outer: Vec<u32> = y
            .terms
            .iter()
            .map(|(j, _)| (*j as usize / self.catalog.width) as u32)
            .collect();
        outer.sort_unstable();
        outer.dedup();
        let pos: HashMap<u32, usize> = outer.iter().enumerate().map(|(k, u)| (*u, k)).collect();
        let width = self.catalog.width;
        let words: Vec<&[Letter]> = outer
            .iter()
            .map(|&u| &self.catalog.word(u as usize * width).letters[..])
            .collect();
        let xu = self.apply_words(&x.terms, &words);
        let mut by_t: Vec<Vec<(u32, S::Elem)>> = vec![Vec::new(); width];
        for (j, c) in &y.terms {
            let (u, t) = self.catalog.split(*j as usize);
            by_t[t].push((pos[&(u as u32)] as u32, c.clone()));
        }
        let gens = tower_gens(self.n)?;
        let mut total = Vec::new();
        for (t, coeffs) in by_t.iter().enumerate() {
            if coeffs.is_empty() {
                continue;
            }
            let mut z: SVec<S::Elem> = Vec::new();
            for (k, c) in coeffs {
                z = add(s, &z, &scale(s, &xu[*k as usize], c));
            }
            let zt = self.apply_word(&z, &gens.words[t].letters);
            total = add(s, &total, &zt);
        }
        Ok(Element {
            n: self.n,
            terms: total,
        })
    }
}

fn inverse_table<S: Scalars>(s: &S, t: &ActionTable<S::Elem>) -> ActionTable<S::Elem> {
    // s^-1 = c^-1 (s^2 - a s - b)
    let ci = s.c_inv();
    let ka = s.neg(&s.mul(&s.a(), &ci));
    let kb = s.neg(&s.mul(&s.b(), &ci));
    let cols = (0..t.dim())
        .map(|j| {
            let col = &t.cols[j];
            let sq = t.apply(s, col);
            let mut raw: Vec<(u32, S::Elem)> =
                sq.into_iter().map(|(i, x)| (i, s.mul(&x, &ci))).collect();
            raw.extend(col.iter().map(|(i, x)| (*i, s.mul(x, &ka))));
            raw.push((j as u32, kb.clone()));
            combine(s, raw)
        })
        .collect();
    ActionTable {
        n: t.n,
        gen: -t.gen,
        cols,
    }
}

impl Algebra<Exact> {
    pub fn specialize<S: Scalars>(&self, s: S) -> Algebra<S> {
        let tables = self.tables.iter().map(|t| t.specialize(&s)).collect();
        Algebra {
            s,
            n: self.n,
            catalog: self.catalog.clone(),
            tables,
        }
    }

    /// `Φ`: `s_i ↦ s_i^-1` with the coefficient twist.
    pub fn phi(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.twisted(x, |w| w.flip_signs())
    }

    /// `Ψ`: the anti-automorphism `s_i ↦ s_i^-1` with the coefficient twist.
    pub fn psi(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.twisted(x, |w| w.inverse())
    }

    /// Word reversal with coefficients fixed.
    pub fn reversal(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let mut total = Vec::new();
        for (i, c) in &x.terms {
            let w = self.word_element(&self.catalog.word(*i as usize).reversed())?;
            total = add(&self.s, &total, &scale(&self.s, &w.terms, c));
        }
        Ok(Element {
            n: self.n,
            terms: total,
        })
    }

    fn twisted(
        &self,
        x: &AlgebraElement,
        f: impl Fn(&BraidWord) -> BraidWord,
    ) -> Result<AlgebraElement> {
        let mut total = Vec::new();
        for (i, c) in &x.terms {
            let w = self.word_element(&f(self.catalog.word(*i as usize)))?;
            total = add(&self.s, &total, &scale(&self.s, &w.terms, &c.phi_coeff()));
        }
        Ok(Element {
            n: self.n,
            terms: total,
        })
    }
}

/// The embedding `A_n → A_{n+1}`: basis word `u` goes to `u · 1`.
pub fn include<E: Clone>(x: &Element<E>) -> Result<Element<E>> {
    let upper = basis_words(x.n + 1)?;
    let w = upper.width as u32;
    Ok(Element {
        n: x.n + 1,
        terms: x.terms.iter().map(|(i, c)| (i * w, c.clone())).collect(),
    })
}
