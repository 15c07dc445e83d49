use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A finite sequence of generator indices (1-based).
///
/// Indexes both monomials `s_{i1}...s_{im}` and Fock basis tensors
/// `e_{i1} ⊗ ... ⊗ e_{im}`. The empty word is the unit (resp. the vacuum).
/// Words order by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 24]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(j: u8) -> Self {
        let mut w = SmallVec::new();
        w.push(j);
        Word(w)
    }

    /// Builds a word, checking every letter against `n`.
    pub fn new(letters: &[usize], n: usize) -> Result<Self> {
        for &j in letters {
            check_index(j, n)?;
        }
        Ok(Word(letters.iter().map(|&j| j as u8).collect()))
    }

    /// Builds a word without range checks.
    pub fn from_letters(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `left · self[..] · right` assembled in one allocation.
    pub fn concat3(a: &[u8], b: &[u8], c: &[u8]) -> Word {
        let mut v = SmallVec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v.extend_from_slice(c);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prepend(&self, j: u8) -> Word {
        let mut v = SmallVec::with_capacity(self.len() + 1);
        v.push(j);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn push(&mut self, j: u8) {
        self.0.push(j);
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// The word without its first letter.
    pub fn tail(&self) -> Word {
        Word::from_letters(self.0.get(1..).unwrap_or(&[]))
    }

    /// The word without its last letter.
    pub fn init(&self) -> Word {
        let n = self.len().saturating_sub(1);
        Word::from_letters(&self.0[..n])
    }

    /// Cyclic rotation moving the last letter to the front.
    pub fn rotate_right(&self) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            v.rotate_right(1);
        }
        Word(v)
    }

    /// Position of this word among words of the same length over `n`
    /// letters, as a base-`n` number.
    pub fn index(&self, n: usize) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &j| acc * n + (j as usize - 1))
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(mut idx: usize, len: usize, n: usize) -> Word {
        let mut v: SmallVec<[u8; 24]> = SmallVec::from_elem(0, len);
        for slot in v.iter_mut().rev() {
            *slot = (idx % n) as u8 + 1;
            idx /= n;
        }
        Word(v)
    }

    /// All words of length `len` over `n` letters, in lexicographic order.
    pub fn all_of_length(n: usize, len: usize) -> impl Iterator<Item = Word> {
        let count = n.pow(len as u32);
        (0..count).map(move |i| Word::from_index(i, len, n))
    }
}

pub(crate) fn check_index(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        Err(Error::IndexOutOfRange { index: j, n })
    } else {
        Ok(())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

/// Monomial notation, `s1^2*s2`; the empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.0.len() {
            let j = self.0[k];
            let mut run = 1;
            while k + run < self.0.len() && self.0[k + run] == j {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "s{j}")?;
            } else {
                write!(f, "s{j}^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}
