//! Reduced words in a free group.

use serde::Serialize;

use crate::group::Group;

/// A freely reduced word; each letter is `(symbol, ±1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(s: usize) -> Self {
        Self { letters: vec![(s, 1)] }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (s, e) in letters {
            debug_assert!(e == 1 || e == -1, "exponent must be ±1");
            match out.last() {
                Some(&(t, f)) if t == s && f == -e => {
                    out.pop();
                }
                _ => out.push((s, e)),
            }
        }
        Self { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut a = self.letters.clone();
        let mut k = 0;
        while k < other.letters.len() {
            match a.last() {
                Some(&(s, e)) if (s, -e) == other.letters[k] => {
                    a.pop();
                    k += 1;
                }
                _ => break,
            }
        }
        a.extend_from_slice(&other.letters[k..]);
        FreeWord { letters: a }
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect() }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1))
    }
}

impl std::fmt::Display for FreeWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{s}")?;
            if *e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FreeGroup {
    pub rank: usize,
}

impl Group for FreeGroup {
    type Elem = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::empty()
    }

    fn mul(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b)
    }

    fn inv(&self, a: &FreeWord) -> FreeWord {
        a.inv()
    }
}
