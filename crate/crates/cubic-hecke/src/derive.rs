//! Transition data of the tower from evaluations at points of `F_p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{enumerate, Module, SVec, Seeds};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::{Lu, Mat};
use crate::ring::LaurentCoeff;
use crate::scalar::{Exact, ModP};
use crate::tower::{basis_words, tower_gens, Algebra};

/// The module induced from a module of `A_{n-1}` with the basis `σ_i · t`.
pub struct Induced {
    pub module: Module<u64>,
    /// Column `i·|T_n| + t` is `σ_i · t`.
    pub basis: Lu,
    pub seeds: usize,
}

impl Induced {
    /// `seed_actions[l][i] = σ_i · s_{l+1}` over the seeds, for `l < n-2`.
    pub fn new(
        s: &ModP,
        n: usize,
        seed_actions: Vec<Vec<SVec<u64>>>,
        limit: usize,
    ) -> Result<Induced> {
        let count = seed_actions.first().map_or(1, |a| a.len());
        let mut actions: Vec<Option<Vec<SVec<u64>>>> = seed_actions.into_iter().map(Some).collect();
        actions.push(None);
        let module = enumerate(s, n - 1, &Seeds { count, actions }, limit)?;
        let gens = tower_gens(n)?;
        let dim = count * gens.len();
        if module.dim != dim {
            return Err(Error::Integrity(format!(
                "induced module has dimension {}, expected {dim}",
                module.dim
            )));
        }
        let mut m = Mat::zeros(dim, dim);
        for i in 0..count {
            for (t, w) in gens.words.iter().enumerate() {
                let v = module.apply_word(s, &module.seeds[i], &w.letters);
                for (r, x) in v {
                    m.set(r as usize, i * gens.len() + t, x);
                }
            }
        }
        let basis = Lu::new(&s.f, &m)
            .ok_or_else(|| Error::Integrity("induced words are not a basis".into()))?;
        Ok(Induced {
            module,
            basis,
            seeds: count,
        })
    }

    fn dense(&self, v: &SVec<u64>) -> Vec<u64> {
        let mut d = vec![0; self.module.dim];
        for (i, x) in v {
            d[*i as usize] = *x;
        }
        d
    }

    /// Coordinates of `σ_i · w` in the basis `σ_j · t`.
    pub fn coords(&self, s: &ModP, i: usize, w: &[i8]) -> Vec<u64> {
        let v = self.module.apply_word(s, &self.module.seeds[i], w);
        self.basis.solve(&s.f, &self.dense(&v))
    }
}

/// `t · s_g` for every `t ∈ T_n` and positive `g`, as dense level-`n` coordinates.
pub fn transitions_at(lower: &Algebra<ModP>) -> Result<Vec<Vec<Vec<u64>>>> {
    let s = lower.s;
    let n = lower.n + 1;
    let seed_actions = lower.positive_tables().map(|t| t.cols.clone()).collect();
    let ind = Induced::new(&s, n, seed_actions, 4 * basis_words(n)?.len())?;
    let gens = tower_gens(n)?;
    Ok((1..n as i8)
        .map(|g| {
            gens.words
                .iter()
                .map(|t| {
                    let mut w = t.letters.clone();
                    w.push(g);
                    ind.coords(&s, 0, &w)
                })
                .collect()
        })
        .collect())
}

/// All transition values at `(a, b, 1)`, flattened by `(g, t, row)`.
pub fn sample(lower: &Algebra<Exact>, p: u64, a: u64, b: u64) -> Result<Vec<u64>> {
    let s = ModP::new(p, a, b, 1)?;
    let tr = transitions_at(&lower.specialize(s))?;
    Ok(tr.into_iter().flatten().flatten().collect())
}

/// Newton interpolation on distinct nodes, returning monomial coefficients.
pub fn interpolate(f: &Fp, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = f.sub(dd[i], dd[i - 1]);
            dd[i] = f.mul(num, f.inv(f.sub(xs[i], xs[i - k])));
        }
    }
    let mut poly = vec![0u64; n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![0u64; n];
        for i in 0..n {
            if poly[i] == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = f.add(next[i + 1], poly[i]);
            }
            next[i] = f.sub(next[i], f.mul(poly[i], xs[k]));
        }
        next[0] = f.add(next[0], dd[k]);
        poly = next;
    }
    poly
}

/// Degree of a function of one variable, probed with random nodes until the
/// interpolant of `d+1` nodes predicts `extra` more.
pub fn probe_degree(
    f: &Fp,
    rng: &mut ChaCha8Rng,
    max: usize,
    extra: usize,
    mut eval: impl FnMut(u64) -> Result<u64>,
) -> Result<usize> {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut agree = 0;
    while xs.len() <= max + extra {
        let x = rng.gen_range(2..f.p());
        if xs.contains(&x) {
            continue;
        }
        let y = eval(x)?;
        if !xs.is_empty() {
            let poly = interpolate(f, &xs, &ys);
            let pred = poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
            agree = if pred == y { agree + 1 } else { 0 };
        }
        xs.push(x);
        ys.push(y);
        if agree >= extra {
            return Ok(xs.len() - 1 - extra);
        }
    }
    Err(Error::Integrity(format!("degree exceeds {max}")))
}

/// Random seeded generator for the interpolation nodes.
pub fn node_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn degree(letters: &[i8]) -> i64 {
    letters.iter().map(|l| l.signum() as i64).sum()
}

/// Interpolation prime.
pub const PRIME: u64 = 2_147_483_647;

/// Exact transition data of `A_n` over `R` by interpolation in `(a, b)` at `c = 1`.
///
/// Coefficients are homogeneous (`deg a = 1, deg b = 2, deg c = 3`), so the
/// power of `c` is fixed by the weight. The result still has to be certified.
pub fn derive_transitions(
    lower: &Algebra<Exact>,
    seed: u64,
) -> Result<Vec<Vec<SVec<LaurentCoeff>>>> {
    let n = lower.n + 1;
    let f = Fp::new(PRIME);
    let mut rng = node_rng(seed);
    let first = sample(
        lower,
        PRIME,
        rng.gen_range(2..PRIME),
        rng.gen_range(2..PRIME),
    )?;
    let weights: Vec<u64> = first.iter().map(|_| rng.gen_range(1..PRIME)).collect();
    let comb = |v: &[u64]| {
        v.iter()
            .zip(&weights)
            .fold(0, |acc, (x, y)| f.mul_add(acc, *x, *y))
    };
    let pivot = rng.gen_range(2..PRIME);
    let da = probe_degree(&f, &mut rng, 40, 2, |a| {
        Ok(comb(&sample(lower, PRIME, a, pivot)?))
    })?;
    let db = probe_degree(&f, &mut rng, 40, 2, |b| {
        Ok(comb(&sample(lower, PRIME, pivot, b)?))
    })?;
    let nodes = |rng: &mut ChaCha8Rng, k: usize| {
        let mut v: Vec<u64> = Vec::new();
        while v.len() < k {
            let x = rng.gen_range(2..PRIME);
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    };
    // one spare node per direction: the top coefficients must vanish
    let (an, bn) = (nodes(&mut rng, da + 2), nodes(&mut rng, db + 2));
    let grid: Vec<Vec<Vec<u64>>> = bn
        .iter()
        .map(|&b| an.iter().map(|&a| sample(lower, PRIME, a, b)).collect())
        .collect::<Result<_>>()?;
    let len = first.len();
    let support: Vec<usize> = (0..len)
        .filter(|&e| grid.iter().any(|row| row.iter().any(|v| v[e] != 0)))
        .collect();
    let cat = basis_words(n)?;
    let gens = tower_gens(n)?;
    let (width, dim) = (gens.len(), cat.len());
    let mut out: Vec<Vec<SVec<LaurentCoeff>>> = vec![vec![Vec::new(); width]; n - 1];
    for e in support {
        let (g, t, row) = (e / (width * dim), (e / dim) % width, e % dim);
        // coefficients of a^i for each b node, then interpolate in b
        let in_a: Vec<Vec<u64>> = grid
            .iter()
            .map(|r| interpolate(&f, &an, &r.iter().map(|v| v[e]).collect::<Vec<_>>()))
            .collect();
        let weight = degree(&gens.words[t].letters) + 1 - degree(&cat.word(row).letters);
        let mut x = LaurentCoeff::zero();
        for i in 0..an.len() {
            let in_b = interpolate(&f, &bn, &in_a.iter().map(|c| c[i]).collect::<Vec<_>>());
            for (j, &k) in in_b.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if i > da || j > db {
                    return Err(Error::Integrity("interpolation did not stabilize".into()));
                }
                let rest = weight - i as i64 - 2 * j as i64;
                if rest % 3 != 0 {
                    return Err(Error::Integrity(format!(
                        "inhomogeneous coefficient at {e}"
                    )));
                }
                x = &x + &LaurentCoeff::monomial(i as i32, j as i32, (rest / 3) as i32, f.lift(k))?;
            }
        }
        if !x.is_zero() {
            out[g][t].push((row as u32, x));
        }
    }
    Ok(out)
}
