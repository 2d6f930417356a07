//! Simple modules of a split semisimple specialization of `A_n`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::braid::Letter;
use crate::enumerate::SVec;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::{charpoly, nullspace, poly_roots, rref, Lu, Mat};
use crate::scalar::ModP;
use crate::tower::Algebra;

pub fn to_dense(v: &SVec<u64>, n: usize) -> Vec<u64> {
    let mut d = vec![0; n];
    for (i, x) in v {
        d[*i as usize] = *x;
    }
    d
}

pub fn to_sparse(v: &[u64]) -> SVec<u64> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| **x != 0)
        .map(|(i, x)| (i as u32, *x))
        .collect()
}

/// Coordinates with respect to linearly independent vectors.
pub struct Span {
    pub basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Span {
    /// Basis of the span of `vectors`.
    pub fn new(f: &Fp, vectors: &[Vec<u64>]) -> Span {
        let n = vectors.first().map_or(0, |v| v.len());
        let mut m = Mat::from_rows(vectors);
        m.cols = n;
        let pivots = rref(f, &mut m);
        // rows in echelon form restrict to the identity on the pivots
        let basis: Vec<Vec<u64>> = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Span { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x`, or `None` when `x` is outside the span.
    pub fn coords(&self, f: &Fp, x: &[u64]) -> Option<Vec<u64>> {
        let c: Vec<u64> = self.pivots.iter().map(|&p| x[p]).collect();
        let mut back = vec![0u64; x.len()];
        for (k, b) in c.iter().zip(&self.basis) {
            for (d, &y) in back.iter_mut().zip(b) {
                *d = f.mul_add(*d, *k, y);
            }
        }
        (back == x).then_some(c)
    }

    pub fn combine(&self, f: &Fp, c: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.basis.first().map_or(0, |b| b.len())];
        for (k, b) in c.iter().zip(&self.basis) {
            for (d, &y) in out.iter_mut().zip(b) {
                *d = f.mul_add(*d, *k, y);
            }
        }
        out
    }
}

/// A simple right module, as matrices of the signed generators acting on row vectors.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Simple {
    pub dim: usize,
    /// `rho[slot(g)]` for `g = 1, -1, 2, -2, ...`: row `i` is `σ_i · g`.
    pub rho: Vec<Mat>,
}

impl Simple {
    pub fn gen(&self, g: Letter) -> &Mat {
        &self.rho[2 * (g.unsigned_abs() as usize - 1) + (g < 0) as usize]
    }

    /// Matrix of a word.
    pub fn word(&self, f: &Fp, w: &[Letter]) -> Mat {
        w.iter()
            .fold(Mat::identity(self.dim), |m, &g| m.mul(f, self.gen(g)))
    }
}

fn random_element(alg: &Algebra<ModP>, rng: &mut ChaCha8Rng) -> SVec<u64> {
    let p = alg.s.f.p();
    (0..alg.dim() as u32)
        .map(|i| (i, rng.gen_range(0..p)))
        .filter(|e| e.1 != 0)
        .collect()
}

/// Column `k` is `y · w_k`.
fn left_matrix(alg: &Algebra<ModP>, y: &SVec<u64>) -> Mat {
    let n = alg.dim();
    let refs: Vec<&[Letter]> = alg.catalog.words.iter().map(|w| &w.letters[..]).collect();
    let mut m = Mat::zeros(n, n);
    for (k, v) in alg.apply_words(y, &refs).iter().enumerate() {
        for (r, x) in v {
            m.set(*r as usize, k, *x);
        }
    }
    m
}

fn restrict(f: &Fp, l: &Mat, span: &Span) -> Result<Mat> {
    let d = span.dim();
    let mut out = Mat::zeros(d, d);
    for (k, b) in span.basis.iter().enumerate() {
        let c = span
            .coords(f, &l.mul_vec(f, b))
            .ok_or_else(|| Error::Integrity("subspace is not stable".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            out.set(i, k, x);
        }
    }
    Ok(out)
}

/// All simple modules of the specialized algebra, up to isomorphism.
///
/// Fails unless the algebra is split semisimple at the point.
pub fn simple_modules(alg: &Algebra<ModP>, rng: &mut ChaCha8Rng) -> Result<Vec<Simple>> {
    let f = alg.s.f;
    let n = alg.dim();
    let gens = alg.n - 1;
    // center: z s_g = s_g z
    let mut m = Mat::zeros(gens * n, n);
    for g in 1..=gens as Letter {
        let left = left_matrix(alg, &alg.mul_letter(&alg.one().terms, g));
        for k in 0..n {
            let right = to_dense(&alg.table(g).cols[k], n);
            for (r, &x) in right.iter().enumerate() {
                m.set((g as usize - 1) * n + r, k, f.sub(x, left.at(r, k)));
            }
        }
    }
    let center = Span::new(&f, &nullspace(&f, &m));
    let r = center.dim();
    // a random central element and its multiplication on the center
    let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..f.p())).collect();
    let z = to_sparse(&center.combine(&f, &coeffs));
    let mz = restrict(&f, &left_matrix(alg, &z), &center)?;
    let roots = poly_roots(&f, &charpoly(&f, &mz), rng);
    if roots.len() != r {
        return Err(Error::BadPoint(
            "the center does not split into distinct blocks".into(),
        ));
    }
    let unit = center
        .coords(&f, &to_dense(&alg.one().terms, n))
        .expect("identity is central");
    let y = random_element(alg, rng);
    let ly = left_matrix(alg, &y);
    let mut out = Vec::new();
    for (vi, &lam) in roots.iter().enumerate() {
        // central idempotent: Π (z - μ) / (λ - μ)
        let mut v = unit.clone();
        for (wi, &mu) in roots.iter().enumerate() {
            if wi == vi {
                continue;
            }
            let mut next = mz.mul_vec(&f, &v);
            let inv = f.inv(f.sub(lam, mu));
            for (x, y) in next.iter_mut().zip(&v) {
                *x = f.mul(f.sub(*x, f.mul(mu, *y)), inv);
            }
            v = next;
        }
        let e = to_sparse(&center.combine(&f, &v));
        out.push(simple_in_block(alg, &e, &ly, rng)?);
    }
    out.sort_by_key(|s| s.dim);
    Ok(out)
}

fn simple_in_block(
    alg: &Algebra<ModP>,
    e: &SVec<u64>,
    ly: &Mat,
    rng: &mut ChaCha8Rng,
) -> Result<Simple> {
    let f = alg.s.f;
    let n = alg.dim();
    // the block e·A
    let le = left_matrix(alg, e);
    let mut vecs: Vec<Vec<u64>> = Vec::new();
    let mut block = Span::new(&f, &[]);
    loop {
        for _ in 0..(block.dim() / 2).max(4) {
            let y: Vec<u64> = (0..n).map(|_| rng.gen_range(0..f.p())).collect();
            vecs.push(le.mul_vec(&f, &y));
        }
        let next = Span::new(&f, &vecs);
        if next.dim() == block.dim() {
            break;
        }
        block = next;
    }
    let dd = block.dim();
    let d = (1..=dd).find(|d| d * d >= dd).unwrap_or(1);
    if d * d != dd {
        return Err(Error::BadPoint(format!(
            "block of dimension {dd} is not a full matrix algebra"
        )));
    }
    let mut ly = ly.clone();
    for _ in 0..32 {
        let l = restrict(&f, &ly, &block)?;
        for mu in poly_roots(&f, &charpoly(&f, &l), rng) {
            let mut shifted = l.clone();
            for i in 0..dd {
                shifted.set(i, i, f.sub(shifted.at(i, i), mu));
            }
            let ker = nullspace(&f, &shifted);
            if ker.len() != d {
                continue;
            }
            let vectors: Vec<Vec<u64>> = ker.iter().map(|c| block.combine(&f, c)).collect();
            let v = Span::new(&f, &vectors);
            let mut rho = Vec::new();
            for g in 1..alg.n as Letter {
                for sg in [g, -g] {
                    let mut m = Mat::zeros(d, d);
                    for (i, b) in v.basis.iter().enumerate() {
                        let img = alg.mul_letter(&to_sparse(b), sg);
                        let c = v.coords(&f, &to_dense(&img, n)).ok_or_else(|| {
                            Error::Integrity("kernel is not a right ideal".into())
                        })?;
                        m.row_mut(i).copy_from_slice(&c);
                    }
                    rho.push(m);
                }
            }
            return Ok(Simple { dim: d, rho });
        }
        ly = left_matrix(alg, &random_element(alg, rng));
    }
    Err(Error::BadPoint(
        "no rational eigenvector found in a block".into(),
    ))
}

/// `x ↦ (ρ_V(x))_V` on the basis words, with its inverse.
pub struct Wedderburn {
    pub simples: Vec<Simple>,
    /// Column `w` lists the entries of `ρ_V(w)` for every `V`, row-major.
    pub map: Mat,
    lu: Lu,
    /// Offset of each block in the flattened coordinates.
    pub offsets: Vec<usize>,
}

impl Wedderburn {
    pub fn new(alg: &Algebra<ModP>, simples: Vec<Simple>) -> Result<Wedderburn> {
        let f = alg.s.f;
        let n = alg.dim();
        let mut offsets = Vec::new();
        let mut total = 0;
        for s in &simples {
            offsets.push(total);
            total += s.dim * s.dim;
        }
        if total != n {
            return Err(Error::Integrity(format!(
                "simple modules account for {total} of {n} dimensions"
            )));
        }
        let mut map = Mat::zeros(n, n);
        for (k, w) in alg.catalog.words.iter().enumerate() {
            for (s, off) in simples.iter().zip(&offsets) {
                let m = s.word(&f, &w.letters);
                for (i, x) in m.data.iter().enumerate() {
                    map.set(off + i, k, *x);
                }
            }
        }
        let lu = Lu::new(&f, &map)
            .ok_or_else(|| Error::Integrity("algebra is not semisimple here".into()))?;
        Ok(Wedderburn {
            simples,
            map,
            lu,
            offsets,
        })
    }

    pub fn to_blocks(&self, f: &Fp, x: &SVec<u64>) -> Vec<u64> {
        let mut out = vec![0u64; self.map.rows];
        for (k, c) in x {
            for (r, o) in out.iter_mut().enumerate() {
                let y = self.map.at(r, *k as usize);
                if y != 0 {
                    *o = f.mul_add(*o, *c, y);
                }
            }
        }
        out
    }

    pub fn from_blocks(&self, f: &Fp, b: &[u64]) -> SVec<u64> {
        to_sparse(&self.lu.solve(f, b))
    }
}
