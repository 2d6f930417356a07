//! Prime fields with a runtime modulus.

/// Arithmetic in `F_p` for an odd prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Fp {
        assert!((2..(1 << 63)).contains(&p), "modulus out of range");
        Fp { p }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if self.p < (1 << 32) {
            x * y % self.p
        } else {
            ((x as u128 * y as u128) % self.p as u128) as u64
        }
    }

    /// `acc + x*y`
    #[inline]
    pub fn mul_add(&self, acc: u64, x: u64, y: u64) -> u64 {
        self.add(acc, self.mul(x, y))
    }

    pub fn pow(&self, mut x: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        x %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, x: u64) -> u64 {
        assert!(!x.is_multiple_of(self.p), "inverse of zero");
        self.pow(x, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            -((self.p - x) as i64)
        } else {
            x as i64
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let f = Fp { p: n };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A primitive cube root of unity, when `p ≡ 1 mod 3`.
pub fn cube_root_of_unity(f: &Fp) -> Option<u64> {
    if f.p() % 3 != 1 {
        return None;
    }
    (2..f.p())
        .map(|g| f.pow(g, (f.p() - 1) / 3))
        .find(|&z| z != 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_ops() {
        let f = Fp::new(7);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.mul(6, 6), 1);
        assert_eq!(f.lift(6), -1);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn primality() {
        assert!(is_prime(65521));
        assert!(is_prime(2147483647));
        assert!(is_prime(1000000009));
        assert!(!is_prime(65535));
        assert!(is_prime(2305843009213693951));
    }

    #[test]
    fn cube_roots() {
        let f = Fp::new(7);
        let z = cube_root_of_unity(&f).unwrap();
        assert_eq!(f.pow(z, 3), 1);
        assert_ne!(z, 1);
        assert!(cube_root_of_unity(&Fp::new(5)).is_none());
    }
}
