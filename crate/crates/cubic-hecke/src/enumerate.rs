//! Vector enumeration: linear closure of a finitely presented module.
//!
//! The algebra is generated by `s_1 .. s_m` (inverses are polynomials in
//! `s_i` by the cubic relation). A module is presented by seed vectors, some
//! prescribed seed actions, and relators `Σ k_j w_j` that must vanish on
//! every vector. Vectors are defined on demand as images of earlier ones;
//! nonzero relator values are coincidences that eliminate a vector.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::scalar::Scalars;

/// Sparse vector sorted by index.
pub type SVec<E> = Vec<(u32, E)>;

/// One relator: `Σ coeff · word`, words over zero-based letters.
pub type Relator<E> = Vec<(E, Vec<u8>)>;

/// Braid, commutation and cubic relators for `s_1 .. s_m`.
pub fn hecke_relators<S: Scalars>(s: &S, m: usize) -> Vec<Relator<S::Elem>> {
    let mut rels = Vec::new();
    for i in 0..m as u8 {
        rels.push(vec![
            (s.one(), vec![i, i, i]),
            (s.neg(&s.a()), vec![i, i]),
            (s.neg(&s.b()), vec![i]),
            (s.neg(&s.c()), vec![]),
        ]);
    }
    for i in 0..m as u8 {
        for j in i + 2..m as u8 {
            rels.push(vec![(s.one(), vec![i, j]), (s.neg(&s.one()), vec![j, i])]);
        }
    }
    for i in 0..(m as u8).saturating_sub(1) {
        rels.push(vec![
            (s.one(), vec![i, i + 1, i]),
            (s.neg(&s.one()), vec![i + 1, i, i + 1]),
        ]);
    }
    rels
}

/// Relators over signed letters: `2i` is `s_{i+1}`, `2i+1` its inverse.
pub fn signed_relators<S: Scalars>(s: &S, m: usize) -> Vec<Relator<S::Elem>> {
    let pos = |i: u8| 2 * i;
    let mut rels = Vec::new();
    for i in 0..m as u8 {
        let (x, y) = (pos(i), pos(i) + 1);
        // s^-1 = c^-1 (s^2 - a s - b)
        let ci = s.c_inv();
        rels.push(vec![
            (s.one(), vec![y]),
            (s.neg(&ci), vec![x, x]),
            (s.mul(&s.a(), &ci), vec![x]),
            (s.mul(&s.b(), &ci), vec![]),
        ]);
        rels.push(vec![
            (s.one(), vec![x, x, x]),
            (s.neg(&s.a()), vec![x, x]),
            (s.neg(&s.b()), vec![x]),
            (s.neg(&s.c()), vec![]),
        ]);
    }
    for i in 0..m as u8 {
        for j in i + 2..m as u8 {
            rels.push(vec![
                (s.one(), vec![pos(i), pos(j)]),
                (s.neg(&s.one()), vec![pos(j), pos(i)]),
            ]);
        }
    }
    for i in 0..(m as u8).saturating_sub(1) {
        let (x, y) = (pos(i), pos(i + 1));
        rels.push(vec![
            (s.one(), vec![x, y, x]),
            (s.neg(&s.one()), vec![y, x, y]),
        ]);
    }
    rels
}

/// Enumerator letter of a signed generator.
pub fn signed_letter(g: i8) -> u8 {
    2 * (g.unsigned_abs() - 1) + (g < 0) as u8
}

pub fn combine<S: Scalars>(s: &S, mut raw: Vec<(u32, S::Elem)>) -> SVec<S::Elem> {
    raw.sort_unstable_by_key(|e| e.0);
    let mut out: SVec<S::Elem> = Vec::with_capacity(raw.len());
    for (j, c) in raw {
        match out.last_mut() {
            Some((k, d)) if *k == j => *d = s.add(d, &c),
            _ => out.push((j, c)),
        }
    }
    out.retain(|(_, c)| !s.is_zero(c));
    out
}

/// A finished module: right action matrices stored by rows.
#[derive(Clone, Debug)]
pub struct Module<E> {
    pub dim: usize,
    /// `actions[l][v]` is `v · s_{l+1}`.
    pub actions: Vec<Vec<SVec<E>>>,
    /// Images of the seed vectors.
    pub seeds: Vec<SVec<E>>,
}

impl<E: Clone> Module<E> {
    pub fn apply<S: Scalars<Elem = E>>(&self, s: &S, v: &SVec<E>, letter: usize) -> SVec<E> {
        let mut raw = Vec::new();
        for (u, c) in v {
            for (k, d) in &self.actions[letter][*u as usize] {
                raw.push((*k, s.mul(c, d)));
            }
        }
        combine(s, raw)
    }

    /// Action of a signed generator, `s^-1 = c^-1 (s^2 - a s - b)`.
    pub fn apply_signed<S: Scalars<Elem = E>>(&self, s: &S, v: &SVec<E>, letter: i8) -> SVec<E> {
        let l = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            return self.apply(s, v, l);
        }
        let v1 = self.apply(s, v, l);
        let v2 = self.apply(s, &v1, l);
        let ci = s.c_inv();
        let (ka, kb) = (s.neg(&s.mul(&s.a(), &ci)), s.neg(&s.mul(&s.b(), &ci)));
        let mut raw: Vec<(u32, E)> = v2.into_iter().map(|(j, x)| (j, s.mul(&x, &ci))).collect();
        raw.extend(v1.into_iter().map(|(j, x)| (j, s.mul(&x, &ka))));
        raw.extend(v.iter().map(|(j, x)| (*j, s.mul(x, &kb))));
        combine(s, raw)
    }

    pub fn apply_word<S: Scalars<Elem = E>>(&self, s: &S, v: &SVec<E>, word: &[i8]) -> SVec<E> {
        word.iter()
            .fold(v.clone(), |acc, &l| self.apply_signed(s, &acc, l))
    }

    /// Check every relator on every basis vector.
    pub fn check_relators<S: Scalars<Elem = E>>(&self, s: &S, rels: &[Relator<E>]) -> Result<()> {
        for v in 0..self.dim {
            let e = vec![(v as u32, s.one())];
            for (ri, rel) in rels.iter().enumerate() {
                let mut raw = Vec::new();
                for (k, w) in rel {
                    let img = w
                        .iter()
                        .fold(e.clone(), |acc, &l| self.apply(s, &acc, l as usize));
                    raw.extend(img.into_iter().map(|(j, x)| (j, s.mul(&x, k))));
                }
                if !combine(s, raw).is_empty() {
                    return Err(Error::ClosureFailure(format!(
                        "relator {ri} fails on vector {v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Seed vectors with optional prescribed actions (`actions[l][i]` = seed `i` times `s_{l+1}`, over seeds).
pub struct Seeds<E> {
    pub count: usize,
    pub actions: Vec<Option<Vec<SVec<E>>>>,
}

/// Dense scratch accumulator for sparse sums.
struct Acc<E> {
    vals: Vec<Option<E>>,
    touched: Vec<u32>,
}

impl<E: Clone> Acc<E> {
    fn add<S: Scalars<Elem = E>>(&mut self, s: &S, j: u32, c: E) {
        let j = j as usize;
        if j >= self.vals.len() {
            self.vals.resize(j + 1, None);
        }
        match &mut self.vals[j] {
            Some(d) => *d = s.add(d, &c),
            slot => {
                *slot = Some(c);
                self.touched.push(j as u32);
            }
        }
    }

    fn take<S: Scalars<Elem = E>>(&mut self, s: &S) -> SVec<E> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &j in &self.touched {
            let c = self.vals[j as usize].take().expect("touched");
            if !s.is_zero(&c) {
                out.push((j, c));
            }
        }
        self.touched.clear();
        out
    }
}

pub struct Enumerator<'a, S: Scalars> {
    s: &'a S,
    letters: usize,
    relators: &'a [Relator<S::Elem>],
    images: Vec<Vec<Option<SVec<S::Elem>>>>,
    dead: Vec<Option<SVec<S::Elem>>>,
    alive: usize,
    queue: VecDeque<SVec<S::Elem>>,
    protected: Vec<bool>,
    acc: Acc<S::Elem>,
    limit: usize,
    /// Most vectors alive at once.
    pub peak: usize,
}

impl<'a, S: Scalars> Enumerator<'a, S> {
    pub fn new(s: &'a S, letters: usize, relators: &'a [Relator<S::Elem>], limit: usize) -> Self {
        Enumerator {
            s,
            letters,
            relators,
            images: Vec::new(),
            dead: Vec::new(),
            alive: 0,
            queue: VecDeque::new(),
            protected: Vec::new(),
            acc: Acc {
                vals: Vec::new(),
                touched: Vec::new(),
            },
            limit,
            peak: 0,
        }
    }

    fn new_vector(&mut self) -> Result<u32> {
        if self.alive >= self.limit {
            return Err(Error::ClosureFailure(format!(
                "more than {} live vectors",
                self.limit
            )));
        }
        self.images.push(vec![None; self.letters]);
        self.dead.push(None);
        self.protected.push(false);
        self.alive += 1;
        self.peak = self.peak.max(self.alive);
        Ok((self.images.len() - 1) as u32)
    }

    fn is_dead(&self, j: u32) -> bool {
        self.dead[j as usize].is_some()
    }

    fn normalize(&mut self, v: SVec<S::Elem>) -> SVec<S::Elem> {
        if v.iter().all(|(j, _)| !self.is_dead(*j)) {
            return v;
        }
        for (j, _) in &v {
            if self.is_dead(*j) {
                self.resolve(*j);
            }
        }
        for (j, c) in v {
            match &self.dead[j as usize] {
                None => self.acc.add(self.s, j, c),
                Some(rep) => {
                    for (k, d) in rep {
                        self.acc.add(self.s, *k, self.s.mul(&c, d));
                    }
                }
            }
        }
        self.acc.take(self.s)
    }

    fn resolve(&mut self, j: u32) -> SVec<S::Elem> {
        let rep = self.dead[j as usize].take().expect("dead vector");
        let rep = self.normalize(rep);
        self.dead[j as usize] = Some(rep.clone());
        rep
    }

    fn image(&mut self, u: u32, l: usize) -> Result<SVec<S::Elem>> {
        match self.images[u as usize][l].take() {
            None => {
                let w = self.new_vector()?;
                let img = vec![(w, self.s.one())];
                self.images[u as usize][l] = Some(img.clone());
                Ok(img)
            }
            Some(img) => {
                let img = self.normalize(img);
                self.images[u as usize][l] = Some(img.clone());
                Ok(img)
            }
        }
    }

    fn apply(&mut self, v: &SVec<S::Elem>, l: usize) -> Result<SVec<S::Elem>> {
        let mut imgs = Vec::with_capacity(v.len());
        for (u, _) in v {
            imgs.push(self.image(*u, l)?);
        }
        for ((_, c), img) in v.iter().zip(imgs) {
            for (k, d) in img {
                self.acc.add(self.s, k, self.s.mul(c, &d));
            }
        }
        Ok(self.acc.take(self.s))
    }

    fn trace(&mut self, v: u32, rel: &[(S::Elem, Vec<u8>)]) -> Result<SVec<S::Elem>> {
        let mut parts = Vec::with_capacity(rel.len());
        for (k, w) in rel {
            let mut cur = vec![(v, self.s.one())];
            for &l in w {
                cur = self.apply(&cur, l as usize)?;
                cur = self.normalize(cur);
            }
            parts.push((k, cur));
        }
        for (k, cur) in parts {
            for (j, x) in cur {
                self.acc.add(self.s, j, self.s.mul(&x, k));
            }
        }
        let r = self.acc.take(self.s);
        Ok(self.normalize(r))
    }

    fn coincidence(&mut self, r: SVec<S::Elem>) -> Result<()> {
        let s = self.s;
        let mut best: Option<((usize, usize), u32, usize)> = None;
        for (pos, (j, c)) in r.iter().enumerate() {
            if s.inv(c).is_none() {
                continue;
            }
            let key = (self.protected[*j as usize] as usize, s.weight(c), *j);
            let better = match best {
                None => true,
                Some((w, bj, _)) => (key.0, key.1) < w || ((key.0, key.1) == w && key.2 > bj),
            };
            if better {
                best = Some(((key.0, key.1), key.2, pos));
            }
        }
        let Some((_, p, pos)) = best else {
            return Err(Error::ClosureFailure(
                "relation without an invertible coefficient".into(),
            ));
        };
        let minus_inv = s.neg(&s.inv(&r[pos].1).unwrap());
        let rep: SVec<S::Elem> = r
            .iter()
            .filter(|(j, _)| *j != p)
            .map(|(j, c)| (*j, s.mul(c, &minus_inv)))
            .collect();
        let old = std::mem::take(&mut self.images[p as usize]);
        self.dead[p as usize] = Some(rep.clone());
        self.alive -= 1;
        for (l, img) in old.into_iter().enumerate() {
            let Some(img) = img else { continue };
            if let [(j, d)] = rep.as_slice() {
                if self.images[*j as usize][l].is_none() {
                    if let Some(di) = s.inv(d) {
                        let moved = img.into_iter().map(|(k, x)| (k, s.mul(&x, &di))).collect();
                        self.images[*j as usize][l] = Some(moved);
                        continue;
                    }
                }
            }
            let other = self.apply(&rep, l)?;
            for (k, x) in img {
                self.acc.add(s, k, x);
            }
            for (k, x) in other {
                self.acc.add(s, k, s.neg(&x));
            }
            let r = self.acc.take(s);
            self.queue.push_back(r);
        }
        Ok(())
    }

    fn drain(&mut self) -> Result<()> {
        while let Some(r) = self.queue.pop_front() {
            let r = self.normalize(r);
            if !r.is_empty() {
                self.coincidence(r)?;
            }
        }
        Ok(())
    }

    fn plant(&mut self, seeds: &Seeds<S::Elem>) -> Result<()> {
        for _ in 0..seeds.count {
            self.new_vector()?;
        }
        for (l, act) in seeds.actions.iter().enumerate() {
            if let Some(rows) = act {
                for (i, row) in rows.iter().enumerate() {
                    self.images[i][l] = Some(row.clone());
                }
            }
        }
        Ok(())
    }

    /// Run to closure.
    pub fn run(mut self, seeds: &Seeds<S::Elem>) -> Result<Module<S::Elem>> {
        self.plant(seeds)?;
        self.close()?;
        self.finish(seeds.count)
    }

    /// Run to closure keeping the vectors `σ_j · w_k` as the basis.
    ///
    /// Returns the module and the final index of `σ_j · w_k` at position
    /// `j · words.len() + k`. Fails unless those vectors form a basis.
    pub fn run_with_basis(
        mut self,
        seeds: &Seeds<S::Elem>,
        words: &[Vec<u8>],
    ) -> Result<(Module<S::Elem>, Vec<u32>)> {
        self.plant(seeds)?;
        let mut ids = Vec::with_capacity(seeds.count * words.len());
        for j in 0..seeds.count as u32 {
            let mut known: std::collections::HashMap<&[u8], u32> = std::collections::HashMap::new();
            for w in words {
                let mut cur = j;
                for k in 1..=w.len() {
                    if let Some(&v) = known.get(&w[..k]) {
                        cur = v;
                        continue;
                    }
                    let img = self.image(cur, w[k - 1] as usize)?;
                    match img.as_slice() {
                        [(v, x)] if *x == self.s.one() => cur = *v,
                        _ => {
                            return Err(Error::ClosureFailure(
                                "basis word is not a fresh definition".into(),
                            ))
                        }
                    }
                    known.insert(&w[..k], cur);
                }
                if self.protected[cur as usize] {
                    return Err(Error::ClosureFailure("basis words repeat".into()));
                }
                self.protected[cur as usize] = true;
                ids.push(cur);
            }
        }
        self.close()?;
        let total = self.images.len();
        let mut index = vec![u32::MAX; total];
        let mut next = 0;
        for (v, slot) in index.iter_mut().enumerate() {
            if !self.is_dead(v as u32) {
                *slot = next;
                next += 1;
            }
        }
        let mut out = Vec::with_capacity(ids.len());
        for v in ids {
            if self.is_dead(v) {
                return Err(Error::ClosureFailure(
                    "basis words are linearly dependent".into(),
                ));
            }
            out.push(index[v as usize]);
        }
        let module = self.finish(seeds.count)?;
        if module.dim != out.len() {
            return Err(Error::ClosureFailure(format!(
                "basis words span {} of {} dimensions",
                out.len(),
                module.dim
            )));
        }
        Ok((module, out))
    }

    fn close(&mut self) -> Result<()> {
        let relators = self.relators;
        let mut cur = 0u32;
        while (cur as usize) < self.images.len() {
            for rel in relators {
                if self.is_dead(cur) {
                    break;
                }
                let r = self.trace(cur, rel)?;
                if !r.is_empty() {
                    self.coincidence(r)?;
                    self.drain()?;
                }
            }
            cur += 1;
        }
        Ok(())
    }

    fn finish(mut self, nseeds: usize) -> Result<Module<S::Elem>> {
        let total = self.images.len();
        let mut index = vec![u32::MAX; total];
        let mut live = Vec::new();
        for v in 0..total as u32 {
            if !self.is_dead(v) {
                index[v as usize] = live.len() as u32;
                live.push(v);
            }
        }
        let mut actions = vec![Vec::with_capacity(live.len()); self.letters];
        for &v in &live {
            for (l, act) in actions.iter_mut().enumerate() {
                let img = self.images[v as usize][l]
                    .take()
                    .ok_or_else(|| Error::ClosureFailure(format!("vector {v} lacks an image")))?;
                let img = self.normalize(img);
                let mut row: SVec<S::Elem> = img
                    .into_iter()
                    .map(|(j, x)| (index[j as usize], x))
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                act.push(row);
            }
        }
        let mut seed_images = Vec::with_capacity(nseeds);
        for i in 0..nseeds as u32 {
            let v = self.normalize(vec![(i, self.s.one())]);
            seed_images.push(v.into_iter().map(|(j, x)| (index[j as usize], x)).collect());
        }
        Ok(Module {
            dim: live.len(),
            actions,
            seeds: seed_images,
        })
    }
}

/// Enumerate the module presented by `seeds` under the Hecke relators on `m` letters.
pub fn enumerate<S: Scalars>(
    s: &S,
    m: usize,
    seeds: &Seeds<S::Elem>,
    limit: usize,
) -> Result<Module<S::Elem>> {
    let rels = hecke_relators(s, m);
    let module = Enumerator::new(s, m, &rels, limit).run(seeds)?;
    module.check_relators(s, &rels)?;
    Ok(module)
}

/// The regular module of `A_n`: one seed, no prescribed actions.
pub fn regular<S: Scalars>(s: &S, n: usize, limit: usize) -> Result<Module<S::Elem>> {
    enumerate(
        s,
        n - 1,
        &Seeds {
            count: 1,
            actions: vec![None; n - 1],
        },
        limit,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, ModP};

    #[test]
    fn dimensions_mod_p() {
        let s = ModP::new(65521, 3, 5, 7).unwrap();
        assert_eq!(regular(&s, 2, 100).unwrap().dim, 3);
        assert_eq!(regular(&s, 3, 1000).unwrap().dim, 24);
    }

    #[test]
    fn group_point() {
        let s = ModP::new(7, 0, 0, 1).unwrap();
        assert_eq!(regular(&s, 3, 1000).unwrap().dim, 24);
    }

    #[test]
    fn exact_small() {
        assert_eq!(regular(&Exact, 2, 100).unwrap().dim, 3);
    }
}
