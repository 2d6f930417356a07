//! Braid words and the named elements used throughout the tower.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Signed generator: `i` is `s_i`, `-i` is `s_i^-1`.
pub type Letter = i8;

/// A word in the Artin generators of the braid group on `n` strands.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    pub n: usize,
    #[serde(rename = "word")]
    pub letters: Vec<Letter>,
}

fn check_letters(n: usize, letters: &[Letter]) -> Result<()> {
    for &l in letters {
        if l == 0 || l.unsigned_abs() as usize >= n {
            return Err(Error::IndexOutOfRange {
                index: l as i32,
                strands: n,
            });
        }
    }
    Ok(())
}

/// Cancel adjacent inverse pairs until none remain.
pub fn free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if !(2..=16).contains(&n) {
            return Err(Error::LevelOutOfRange(n));
        }
        check_letters(n, &letters)?;
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord {
            n,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn free_reduce(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: free_reduce_letters(&self.letters),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        Ok(BraidWord {
            n: self.n,
            letters: free_reduce_letters(&v),
        })
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `s_i ↦ s_{i+1}`, one more strand.
    pub fn shift(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .map(|&l| if l > 0 { l + 1 } else { l - 1 })
            .collect();
        BraidWord {
            n: self.n + 1,
            letters,
        }
    }

    /// `s_i ↦ s_{n-i}`.
    pub fn mirror(&self) -> Self {
        let n = self.n as i8;
        let letters = self
            .letters
            .iter()
            .map(|&l| l.signum() * (n - l.abs()))
            .collect();
        BraidWord { n: self.n, letters }
    }

    /// Conjugation by the Garside element of `B_4`: swaps `s_1` and `s_3`.
    pub fn ad_delta(&self) -> Result<Self> {
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            letters.push(match l.abs() {
                1 => 3 * l.signum(),
                2 => l,
                3 => l.signum(),
                _ => {
                    return Err(Error::IndexOutOfRange {
                        index: l as i32,
                        strands: 4,
                    })
                }
            });
        }
        Ok(BraidWord { n: self.n, letters })
    }

    /// Same letters on more strands.
    pub fn widen(&self, n: usize) -> Result<Self> {
        BraidWord::new(n, self.letters.clone())
    }

    /// Letterwise sign flip, the word part of the involution `s_i ↦ s_i^-1`.
    pub fn flip_signs(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let v: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
            if v == 0 || v.unsigned_abs() as usize >= n {
                return Err(Error::Parse(format!(
                    "letter {v} out of range for {n} strands"
                )));
            }
            letters.push(v as Letter);
        }
        BraidWord::new(n, letters)
    }

    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn max_index(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}{}", self.n, self)
    }
}

/// Names accepted by [`special`].
pub const SPECIAL_NAMES: &[&str] = &[
    "delta_garside",
    "w0",
    "w_plus",
    "w_minus",
    "delta5",
    "c_n",
    "y_n",
    "x_plus",
    "x_minus",
    "y_plus_word",
    "y_minus_word",
];

fn need(n: usize, want: usize, name: &str) -> Result<()> {
    if n < want {
        return Err(Error::UnknownName(format!(
            "{name} needs at least {want} strands"
        )));
    }
    Ok(())
}

/// `s_{n-1} ... s_2 s_1^2 s_2 ... s_{n-1}`
fn y_word(n: usize) -> Vec<Letter> {
    let top = (n - 1) as Letter;
    let mut v: Vec<Letter> = (2..=top).rev().collect();
    v.push(1);
    v.push(1);
    v.extend(2..=top);
    v
}

/// Named braid elements.
pub fn special(name: &str, n: usize) -> Result<BraidWord> {
    const S: Letter = 2;
    const P: [Letter; 2] = [1, 3];
    const PI: [Letter; 2] = [-1, -3];
    let letters: Vec<Letter> = match name {
        "delta_garside" => {
            need(n, 4, name)?;
            vec![1, 2, 3, 1, 2, 1]
        }
        "w0" => {
            need(n, 4, name)?;
            y_word(4)
        }
        "w_plus" => {
            need(n, 4, name)?;
            vec![3, -2, 1, -2, 3]
        }
        "w_minus" => {
            need(n, 4, name)?;
            vec![-3, 2, -1, 2, -3]
        }
        "delta5" => {
            need(n, 5, name)?;
            y_word(5)
        }
        "y_n" => {
            need(n, 2, name)?;
            y_word(n)
        }
        "c_n" => {
            need(n, 2, name)?;
            let row: Vec<Letter> = (1..n as Letter).collect();
            row.iter().cycle().take(row.len() * n).copied().collect()
        }
        "x_plus" | "x_minus" | "y_plus_word" | "y_minus_word" => {
            need(n, 4, name)?;
            let (s, si) = (S, -S);
            let cat = |parts: &[&[Letter]]| parts.concat();
            match name {
                "x_plus" => cat(&[&[s], &P, &[si], &P, &[s]]),
                "x_minus" => cat(&[&[si], &PI, &[s], &PI, &[si]]),
                "y_plus_word" => cat(&[&[s], &PI, &[s], &PI, &[s]]),
                _ => cat(&[&[si], &P, &[si], &P, &[si]]),
            }
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    BraidWord::new(n, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[Letter]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn reductions() {
        assert!(w(3, &[1, -1]).free_reduce().is_empty());
        assert_eq!(w(3, &[1, 2, -2, 1]).free_reduce(), w(3, &[1, 1]));
        assert_eq!(w(3, &[1, 2, -2, -1, 2]).free_reduce(), w(3, &[2]));
    }

    #[test]
    fn group_ops() {
        assert!(w(2, &[1]).concat(&w(2, &[-1])).unwrap().is_empty());
        assert_eq!(w(3, &[1, -2]).inverse(), w(3, &[2, -1]));
        assert!(matches!(
            w(2, &[1]).concat(&w(3, &[1])),
            Err(Error::StrandMismatch(2, 3))
        ));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(w(3, &[1, -2]).shift(), w(4, &[2, -3]));
        assert_eq!(w(3, &[1]).shift().shift(), w(5, &[3]));
        assert_eq!(w(4, &[1, -3]).mirror(), w(4, &[3, -1]));
        assert_eq!(w(4, &[2]).mirror(), w(4, &[2]));
        assert_eq!(
            special("w_plus", 4).unwrap().ad_delta().unwrap(),
            w(4, &[1, -2, 3, -2, 1])
        );
        assert!(w(5, &[4]).ad_delta().is_err());
    }

    #[test]
    fn named() {
        assert_eq!(special("w0", 4).unwrap().letters, vec![3, 2, 1, 1, 2, 3]);
        assert_eq!(
            special("delta5", 5).unwrap().letters,
            vec![4, 3, 2, 1, 1, 2, 3, 4]
        );
        assert_eq!(special("c_n", 3).unwrap().letters, vec![1, 2, 1, 2, 1, 2]);
        assert_eq!(
            special("x_plus", 4).unwrap().letters,
            vec![2, 1, 3, -2, 1, 3, 2]
        );
        assert_eq!(
            special("y_minus_word", 4).unwrap().letters,
            vec![-2, 1, 3, -2, 1, 3, -2]
        );
        assert!(special("nope", 4).is_err());
    }

    #[test]
    fn text_round_trip() {
        let x = BraidWord::parse(4, "3 -2 1 -2 3").unwrap();
        assert_eq!(x, special("w_plus", 4).unwrap());
        assert_eq!(BraidWord::parse(4, &x.to_text()).unwrap(), x);
        assert!(BraidWord::parse(3, "1 x").is_err());
        assert!(BraidWord::parse(3, "3").is_err());
    }
}
