//! `A_5` over a point of `F_p`, assembled from the simple modules of `A_4`.
//!
//! With `A_4 = ⊕ End(V)` at a split semisimple point, `A_5 = ⊕ Ind(V)^{dim V}`
//! as right modules, where `Ind(V)` has basis `σ_j · t` (`t ∈ T_5`). An element
//! `x = Σ y_t t` is stored as the rows `σ_i · x`, whose `(t, j)` entries are
//! `ρ_V(y_t)_{ij}`; this takes exactly `|basis(5)|` numbers.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::braid::{BraidWord, Letter};
use crate::enumerate::{combine, signed_letter, signed_relators, Enumerator, Relator, SVec, Seeds};
use crate::error::{Error, Result};
use crate::scalar::{ModP, Scalars};
use crate::semisimple::{simple_modules, to_sparse, Simple, Wedderburn};
use crate::tower::{basis_words, tower_gens, Algebra, BasisCatalog, Element};

/// `Ind(V)` with right action matrices in the basis `σ_j · t`, index `t·d + j`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Induced {
    pub d: usize,
    /// `actions[slot(g)][k]` is `(basis k) · g`.
    pub actions: Vec<Vec<SVec<u64>>>,
}

impl Induced {
    pub fn new(s: &ModP, v: &Simple, limit: usize) -> Result<Induced> {
        let d = v.dim;
        let mut seed_actions = Vec::new();
        for m in &v.rho {
            seed_actions.push(Some((0..d).map(|i| to_sparse(m.row(i))).collect()));
        }
        seed_actions.push(None);
        seed_actions.push(None);
        let gens = tower_gens(5)?;
        let width = gens.len();
        let words: Vec<Vec<u8>> = gens
            .words
            .iter()
            .map(|w| w.letters.iter().map(|&l| signed_letter(l)).collect())
            .collect();
        let rels = signed_relators(s, 4);
        let (module, ids) = Enumerator::new(s, 8, &rels, limit).run_with_basis(
            &Seeds {
                count: d,
                actions: seed_actions,
            },
            &words,
        )?;
        // ids[j·width + t] is the module index of σ_j · t
        let mut canon = vec![0u32; module.dim];
        for j in 0..d {
            for t in 0..width {
                canon[ids[j * width + t] as usize] = (t * d + j) as u32;
            }
        }
        let mut actions = vec![vec![Vec::new(); module.dim]; 8];
        for (l, rows) in module.actions.into_iter().enumerate() {
            for (k, row) in rows.into_iter().enumerate() {
                let mut r: SVec<u64> = row
                    .into_iter()
                    .map(|(i, x)| (canon[i as usize], x))
                    .collect();
                r.sort_unstable_by_key(|e| e.0);
                actions[l][canon[k] as usize] = r;
            }
        }
        Ok(Induced { d, actions })
    }

    pub fn dim(&self) -> usize {
        self.actions[0].len()
    }

    pub fn nnz(&self) -> usize {
        self.actions.iter().flatten().map(|r| r.len()).sum()
    }

    /// `x · g` for a dense row vector.
    pub fn apply(&self, s: &ModP, x: &[u64], g: Letter, out: &mut [u64]) {
        out.iter_mut().for_each(|o| *o = 0);
        let rows = &self.actions[signed_letter(g) as usize];
        for (k, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, y) in &rows[k] {
                let o = &mut out[*i as usize];
                *o = s.f.mul_add(*o, c, *y);
            }
        }
    }

    /// First basis vector on which the relator does not vanish.
    pub fn relator_failure(&self, s: &ModP, rel: &Relator<u64>) -> Option<usize> {
        (0..self.dim()).find(|&v| {
            let e = vec![(v as u32, 1u64)];
            let mut raw = Vec::new();
            for (k, w) in rel {
                let img = w.iter().fold(e.clone(), |acc, &l| {
                    let mut r = Vec::new();
                    for (u, c) in &acc {
                        r.extend(
                            self.actions[l as usize][*u as usize]
                                .iter()
                                .map(|(j, x)| (*j, s.mul(c, x))),
                        );
                    }
                    combine(s, r)
                });
                raw.extend(img.into_iter().map(|(j, x)| (j, s.mul(&x, k))));
            }
            !combine(s, raw).is_empty()
        })
    }
}

/// An element of `A_5` at the point, as the rows `σ_i · x` of every `Ind(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointElement {
    pub data: Vec<u64>,
}

/// `A_5` at one point.
pub struct Level5 {
    pub s: ModP,
    pub a4: Algebra<ModP>,
    pub wedderburn: Wedderburn,
    pub induced: Vec<Induced>,
    pub catalog: Arc<BasisCatalog>,
    width: usize,
    offsets: Vec<usize>,
}

impl Level5 {
    /// Build from the level-4 algebra specialized at the point.
    pub fn new(a4: Algebra<ModP>, rng: &mut ChaCha8Rng) -> Result<Level5> {
        Level5::build(a4, rng, None, |_, _| {})
    }

    /// As [`Level5::new`], reusing and filling a checkpoint directory.
    /// `progress(k, total)` runs after each induced module.
    pub fn build(
        a4: Algebra<ModP>,
        rng: &mut ChaCha8Rng,
        checkpoint: Option<&Path>,
        mut progress: impl FnMut(usize, usize),
    ) -> Result<Level5> {
        if a4.n != 4 {
            return Err(Error::LevelOutOfRange(a4.n));
        }
        let s = a4.s;
        let stem = checkpoint.map(|d| d.join(point_stem(&s)));
        let simples = match stem.as_ref().map(|p| with_ext(p, "simples")) {
            Some(path) if path.exists() => load(&path)?,
            other => {
                let simples = simple_modules(&a4, rng)?;
                if let Some(path) = other {
                    store(&path, &simples)?;
                }
                simples
            }
        };
        let wedderburn = Wedderburn::new(&a4, simples)?;
        let catalog = basis_words(5)?;
        let width = catalog.width;
        let mut induced = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        let count = wedderburn.simples.len();
        for (k, v) in wedderburn.simples.iter().enumerate() {
            let ind = match stem.as_ref().map(|p| with_ext(p, &format!("ind{k}"))) {
                Some(path) if path.exists() => load(&path)?,
                other => {
                    let ind = Induced::new(&s, v, 40 * width * v.dim)?;
                    if let Some(path) = other {
                        store(&path, &ind)?;
                    }
                    ind
                }
            };
            if ind.d != v.dim || ind.dim() != width * v.dim {
                return Err(Error::Checkpoint(format!(
                    "induced module {k} has the wrong shape"
                )));
            }
            offsets.push(total);
            total += v.dim * ind.dim();
            induced.push(ind);
            progress(k + 1, count);
        }
        if total != catalog.len() {
            return Err(Error::Integrity(format!(
                "induced modules give {total} coordinates"
            )));
        }
        Ok(Level5 {
            s,
            a4,
            wedderburn,
            induced,
            catalog,
            width,
            offsets,
        })
    }

    pub fn dim(&self) -> usize {
        self.catalog.len()
    }

    fn rows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        // (block, row, offset of the row)
        self.induced.iter().enumerate().flat_map(move |(b, ind)| {
            let len = ind.dim();
            (0..ind.d).map(move |i| (b, i, self.offsets[b] + i * len))
        })
    }

    pub fn zero(&self) -> PointElement {
        PointElement {
            data: vec![0; self.dim()],
        }
    }

    pub fn one(&self) -> PointElement {
        let mut x = self.zero();
        for (_, i, off) in self.rows() {
            x.data[off + i] = 1;
        }
        x
    }

    pub fn add(&self, x: &PointElement, y: &PointElement) -> PointElement {
        PointElement {
            data: x
                .data
                .iter()
                .zip(&y.data)
                .map(|(a, b)| self.s.f.add(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, x: &PointElement, k: u64) -> PointElement {
        PointElement {
            data: x.data.iter().map(|a| self.s.f.mul(*a, k)).collect(),
        }
    }

    pub fn mul_letter(&self, x: &PointElement, g: Letter) -> PointElement {
        let mut out = self.zero();
        for (b, _, off) in self.rows() {
            let ind = &self.induced[b];
            let len = ind.dim();
            ind.apply(
                &self.s,
                &x.data[off..off + len],
                g,
                &mut out.data[off..off + len],
            );
        }
        out
    }

    pub fn apply_word(&self, x: &PointElement, w: &[Letter]) -> PointElement {
        w.iter().fold(x.clone(), |acc, &g| self.mul_letter(&acc, g))
    }

    /// From coordinates in the basis `u · t`.
    pub fn from_basis(&self, x: &Element<u64>) -> Result<PointElement> {
        if x.n != 5 {
            return Err(Error::StrandMismatch(x.n, 5));
        }
        let f = &self.s.f;
        let mut out = self.zero();
        for (idx, c) in &x.terms {
            let (u, t) = self.catalog.split(*idx as usize);
            for (b, i, off) in self.rows() {
                let d = self.induced[b].d;
                let base = self.wedderburn.offsets[b] + i * d;
                for j in 0..d {
                    let r = self.wedderburn.map.at(base + j, u);
                    if r != 0 {
                        let o = &mut out.data[off + t * d + j];
                        *o = f.mul_add(*o, *c, r);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coordinates in the basis `u · t`.
    pub fn to_basis(&self, x: &PointElement) -> Element<u64> {
        let f = &self.s.f;
        let n4 = self.a4.dim();
        let mut terms = Vec::new();
        for t in 0..self.width {
            let mut blocks = vec![0u64; n4];
            for (b, i, off) in self.rows() {
                let d = self.induced[b].d;
                let base = self.wedderburn.offsets[b] + i * d;
                blocks[base..base + d].copy_from_slice(&x.data[off + t * d..off + (t + 1) * d]);
            }
            if blocks.iter().all(|v| *v == 0) {
                continue;
            }
            for (u, c) in self.wedderburn.from_blocks(f, &blocks) {
                terms.push((u * self.width as u32 + t as u32, c));
            }
        }
        terms.sort_unstable_by_key(|e| e.0);
        Element { n: 5, terms }
    }

    /// `1 · w`
    pub fn word(&self, w: &BraidWord) -> Result<PointElement> {
        if w.n != 5 {
            return Err(Error::StrandMismatch(w.n, 5));
        }
        Ok(self.apply_word(&self.one(), &w.free_reduce().letters))
    }

    /// `x · y` with `y` in the basis `u · t`.
    pub fn multiply(&self, x: &PointElement, y: &Element<u64>) -> Result<PointElement> {
        if y.n != 5 {
            return Err(Error::StrandMismatch(y.n, 5));
        }
        let gens = tower_gens(5)?;
        let mut by_t: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.width];
        for (idx, c) in &y.terms {
            let (u, t) = self.catalog.split(*idx as usize);
            by_t[t].push((u, *c));
        }
        let mut us: Vec<usize> = by_t.iter().flatten().map(|e| e.0).collect();
        us.sort_unstable();
        us.dedup();
        // x · u along a prefix trie of the level-4 words
        let words: Vec<&[Letter]> = us
            .iter()
            .map(|&u| &self.a4.catalog.word(u).letters[..])
            .collect();
        let mut order: Vec<usize> = (0..us.len()).collect();
        order.sort_by(|&i, &j| words[i].cmp(words[j]));
        let mut xu: Vec<Option<PointElement>> = vec![None; us.len()];
        let mut stack: Vec<(usize, PointElement)> = vec![(0, x.clone())];
        let mut prev: &[Letter] = &[];
        for &i in &order {
            let w = words[i];
            let common = prev.iter().zip(w).take_while(|(a, b)| a == b).count();
            while stack.last().unwrap().0 > common {
                stack.pop();
            }
            while stack.last().unwrap().0 < w.len() {
                let (depth, top) = stack.last().unwrap();
                let next = self.mul_letter(top, w[*depth]);
                stack.push((depth + 1, next));
            }
            xu[i] = Some(stack.last().unwrap().1.clone());
            prev = w;
        }
        let pos = |u: usize| us.binary_search(&u).unwrap();
        let mut total = self.zero();
        for (t, terms) in by_t.iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let mut z = self.zero();
            for (u, c) in terms {
                let v = xu[pos(*u)].as_ref().unwrap();
                for (o, a) in z.data.iter_mut().zip(&v.data) {
                    *o = self.s.f.mul_add(*o, *c, *a);
                }
            }
            let zt = self.apply_word(&z, &gens.words[t].letters);
            total = self.add(&total, &zt);
        }
        Ok(total)
    }

    /// Product of two elements given in the basis `u · t`.
    pub fn multiply_basis(&self, x: &Element<u64>, y: &Element<u64>) -> Result<Element<u64>> {
        let xb = self.from_basis(x)?;
        Ok(self.to_basis(&self.multiply(&xb, y)?))
    }
}

fn point_stem(s: &ModP) -> String {
    format!(
        "v{}-p{}-a{}-b{}-c{}",
        env!("CARGO_PKG_VERSION"),
        s.f.p(),
        s.a,
        s.b,
        s.c
    )
}

fn with_ext(stem: &Path, ext: &str) -> PathBuf {
    let mut name = stem.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{ext}.bin"));
    stem.with_file_name(name)
}

fn store<T: serde::Serialize>(path: &Path, x: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    let file = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
    bincode::serialize_into(file, x).map_err(|e| Error::Checkpoint(e.to_string()))?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    bincode::deserialize_from(file)
        .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
}
