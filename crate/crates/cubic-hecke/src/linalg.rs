//! Dense linear algebra and univariate polynomials over `F_p`.

use rand::Rng;

use crate::field::Fp;

/// Row-major dense matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Fp, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        let mut acc = vec![0u128; o.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let x = self.at(i, k);
                if x == 0 {
                    continue;
                }
                for (a, &y) in acc.iter_mut().zip(o.row(k)) {
                    *a += (x as u128) * (y as u128);
                }
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|a| *a %= f.p() as u128);
                }
            }
            for (dst, a) in out.row_mut(i).iter_mut().zip(&acc) {
                *dst = (*a % f.p() as u128) as u64;
            }
        }
        out
    }

    /// `v · self` for a row vector `v`.
    pub fn vec_mul(&self, f: &Fp, v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u128; self.cols];
        for (k, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (a, &y) in acc.iter_mut().zip(self.row(k)) {
                *a += (x as u128) * (y as u128);
            }
            if k % 1024 == 1023 {
                acc.iter_mut().for_each(|a| *a %= f.p() as u128);
            }
        }
        acc.into_iter()
            .map(|a| (a % f.p() as u128) as u64)
            .collect()
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, f: &Fp, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                let mut a: u128 = 0;
                for (k, (&x, &y)) in self.row(i).iter().zip(v).enumerate() {
                    a += (x as u128) * (y as u128);
                    if k % 1024 == 1023 {
                        a %= f.p() as u128;
                    }
                }
                (a % f.p() as u128) as u64
            })
            .collect()
    }
}

fn axpy(f: &Fp, dst: &mut [u64], k: u64, src: &[u64]) {
    if k == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.mul_add(*d, k, s);
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &Fp, m: &mut Mat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.at(r, c));
        for x in m.row_mut(r) {
            *x = f.mul(*x, inv);
        }
        let prow = m.row(r).to_vec();
        for i in 0..m.rows {
            if i != r {
                let k = m.at(i, c);
                if k != 0 {
                    axpy(f, m.row_mut(i), f.neg(k), &prow);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Fp, m: &Mat) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(f: &Fp, m: &Mat) -> Vec<Vec<u64>> {
    let mut w = m.clone();
    let pivots = rref(f, &mut w);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(w.at(r, free));
        }
        out.push(v);
    }
    out
}

/// LU factorization with partial pivoting, for repeated solves.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Mat,
    perm: Vec<usize>,
}

impl Lu {
    /// `None` when singular.
    pub fn new(f: &Fp, m: &Mat) -> Option<Lu> {
        assert_eq!(m.rows, m.cols);
        let n = m.rows;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let pr = (k..n).find(|&i| lu.at(i, k) != 0)?;
            if pr != k {
                perm.swap(pr, k);
                for j in 0..n {
                    lu.data.swap(pr * n + j, k * n + j);
                }
            }
            let inv = f.inv(lu.at(k, k));
            let pivot_row: Vec<u64> = lu.row(k)[k + 1..].to_vec();
            for i in k + 1..n {
                let l = f.mul(lu.at(i, k), inv);
                lu.set(i, k, l);
                if l != 0 {
                    axpy(f, &mut lu.row_mut(i)[k + 1..], f.neg(l), &pivot_row);
                }
            }
        }
        Some(Lu { n, lu, perm })
    }

    /// Solve `m x = b`.
    pub fn solve(&self, f: &Fp, b: &[u64]) -> Vec<u64> {
        let n = self.n;
        let mut y: Vec<u64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let mut s = y[i];
            for j in 0..i {
                if row[j] != 0 {
                    s = f.sub(s, f.mul(row[j], y[j]));
                }
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut s = y[i];
            for j in i + 1..n {
                if row[j] != 0 {
                    s = f.sub(s, f.mul(row[j], y[j]));
                }
            }
            y[i] = f.mul(s, f.inv(row[i]));
        }
        y
    }
}

/// Characteristic polynomial, coefficients from degree 0 upward (monic).
pub fn charpoly(f: &Fp, m: &Mat) -> Vec<u64> {
    let n = m.rows;
    let mut h = m.clone();
    // reduce to upper Hessenberg form by similarity
    for k in 0..n.saturating_sub(2) {
        let Some(pr) = (k + 1..n).find(|&i| h.at(i, k) != 0) else {
            continue;
        };
        if pr != k + 1 {
            for j in 0..n {
                h.data.swap(pr * n + j, (k + 1) * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + pr, i * n + k + 1);
            }
        }
        let inv = f.inv(h.at(k + 1, k));
        for i in k + 2..n {
            let l = f.mul(h.at(i, k), inv);
            if l == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.at(i, j), f.mul(l, h.at(k + 1, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = f.add(h.at(r, k + 1), f.mul(l, h.at(r, i)));
                h.set(r, k + 1, v);
            }
        }
    }
    // recurrence on leading principal minors
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = poly_mul(f, &polys[k], &[f.neg(h.at(k, k)), 1]);
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = f.mul(prod, h.at(i + 1, i));
            let coef = f.mul(prod, h.at(i, k));
            if coef != 0 {
                let term = poly_scale(f, &polys[i], f.neg(coef));
                next = poly_add(f, &next, &term);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn poly_add(f: &Fp, x: &[u64], y: &[u64]) -> Vec<u64> {
    let n = x.len().max(y.len());
    trim(
        (0..n)
            .map(|i| f.add(*x.get(i).unwrap_or(&0), *y.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn poly_scale(f: &Fp, x: &[u64], k: u64) -> Vec<u64> {
    trim(x.iter().map(|&v| f.mul(v, k)).collect())
}

pub fn poly_mul(f: &Fp, x: &[u64], y: &[u64]) -> Vec<u64> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            out[i + j] = f.mul_add(out[i + j], a, b);
        }
    }
    trim(out)
}

/// `(quotient, remainder)`
pub fn poly_divrem(f: &Fp, x: &[u64], y: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let y = trim(y.to_vec());
    assert!(!y.is_empty(), "division by zero polynomial");
    let mut r = trim(x.to_vec());
    if r.len() < y.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(*y.last().unwrap());
    let mut q = vec![0; r.len() - y.len() + 1];
    while r.len() >= y.len() {
        let shift = r.len() - y.len();
        let k = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = k;
        for (i, &b) in y.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(k, b));
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

pub fn poly_gcd(f: &Fp, x: &[u64], y: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (trim(x.to_vec()), trim(y.to_vec()));
    while !b.is_empty() {
        let r = poly_divrem(f, &a, &b).1;
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        a = poly_scale(f, &a, f.inv(l));
    }
    a
}

fn poly_powmod(f: &Fp, base: &[u64], mut e: u128, modulus: &[u64]) -> Vec<u64> {
    let mut result = vec![1];
    let mut b = poly_divrem(f, base, modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_divrem(f, &poly_mul(f, &result, &b), modulus).1;
        }
        b = poly_divrem(f, &poly_mul(f, &b, &b), modulus).1;
        e >>= 1;
    }
    result
}

/// Distinct roots in `F_p` (odd `p`).
pub fn poly_roots<R: Rng>(f: &Fp, x: &[u64], rng: &mut R) -> Vec<u64> {
    let x = trim(x.to_vec());
    if x.len() <= 1 {
        return Vec::new();
    }
    let xp = poly_powmod(f, &[0, 1], f.p() as u128, &x);
    let split = poly_gcd(f, &x, &poly_add(f, &xp, &[0, f.neg(1)]));
    let mut out = Vec::new();
    let mut stack = vec![split];
    while let Some(g) = stack.pop() {
        match g.len() {
            0 | 1 => {}
            2 => out.push(f.neg(f.mul(g[0], f.inv(g[1])))),
            _ => loop {
                let shift = rng.gen_range(0..f.p());
                let h = poly_powmod(f, &[shift, 1], ((f.p() - 1) / 2) as u128, &g);
                let d = poly_gcd(f, &g, &poly_add(f, &h, &[f.neg(1)]));
                if d.len() > 1 && d.len() < g.len() {
                    let other = poly_divrem(f, &g, &d).0;
                    stack.push(d);
                    stack.push(other);
                    break;
                }
            },
        }
    }
    out.sort_unstable();
    out
}

/// Roots with multiplicity check: returns the squarefree part's roots and
/// whether every irreducible factor of `x` is linear.
pub fn splits<R: Rng>(f: &Fp, x: &[u64], rng: &mut R) -> (Vec<u64>, bool) {
    let roots = poly_roots(f, x, rng);
    let mut rest = trim(x.to_vec());
    for &r in &roots {
        loop {
            let (q, rem) = poly_divrem(f, &rest, &[f.neg(r), 1]);
            if !rem.is_empty() {
                break;
            }
            rest = q;
        }
    }
    (roots, rest.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_and_solve() {
        let f = Fp::new(101);
        let m = Mat::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let lu = Lu::new(&f, &m).unwrap();
        let x = lu.solve(&f, &[1, 2, 3]);
        assert_eq!(m.mul_vec(&f, &x), vec![1, 2, 3]);
        assert_eq!(rank(&f, &m), 3);
        let sing = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(Lu::new(&f, &sing).is_none());
        assert_eq!(nullspace(&f, &sing).len(), 1);
    }

    #[test]
    fn characteristic_polynomial() {
        let f = Fp::new(101);
        // eigenvalues 1, 2, 3 after a similarity
        let d = Mat::from_rows(&[vec![1, 5, 7], vec![0, 2, 9], vec![0, 0, 3]]);
        let p = Mat::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let pi = {
            let lu = Lu::new(&f, &p).unwrap();
            let cols: Vec<Vec<u64>> = (0..3)
                .map(|j| lu.solve(&f, &(0..3).map(|i| (i == j) as u64).collect::<Vec<_>>()))
                .collect();
            Mat::from_rows(&cols).transpose()
        };
        let m = p.mul(&f, &d).mul(&f, &pi);
        let cp = charpoly(&f, &m);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(poly_roots(&f, &cp, &mut rng), vec![1, 2, 3]);
        let (_, all) = splits(&f, &[1, 0, 1], &mut rng); // x^2 + 1 is irreducible mod 103? check mod 101: -1 is a square
        assert!(all);
        let f7 = Fp::new(7);
        let (r, all) = splits(&f7, &[1, 0, 1], &mut rng);
        assert!(r.is_empty() && !all);
    }
}
