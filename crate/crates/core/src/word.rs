//! Words over signed generator ids.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator (positive) or its inverse (negative). Generator ids start at 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn gen(id: u32) -> Self {
        assert!(
            id >= 1 && id <= i32::MAX as u32,
            "generator id out of range"
        );
        Letter(id as i32)
    }

    pub fn gen_inv(id: u32) -> Self {
        Letter::gen(id).inverse()
    }

    pub fn from_signed(v: i32) -> Option<Self> {
        (v != 0).then_some(Letter(v))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn exponent(self) -> i32 {
        self.0.signum()
    }

    #[must_use]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "{}^-1", self.generator())
        } else {
            write!(f, "{}", self.generator())
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Positive word on the given generators.
    pub fn from_gens(gens: &[u32]) -> Self {
        Word(gens.iter().map(|&g| Letter::gen(g)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Generator ids in order, dropping exponents.
    pub fn gens(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.generator()).collect()
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self^k` for `k >= 0`.
    #[must_use]
    pub fn pow(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// Cancel adjacent `g g^-1` pairs until none remain.
    #[must_use]
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Reduction in a group where every generator is an involution: all
    /// exponents become `+1` and adjacent equal letters cancel.
    #[must_use]
    pub fn involutory_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            let p = Letter(l.0.abs());
            if out.last() == Some(&p) {
                out.pop();
            } else {
                out.push(p);
            }
        }
        Word(out)
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Exponent sum of each generator `1..=gens` (index `g - 1`).
    pub fn exponent_sums(&self, gens: usize) -> Result<Vec<i64>> {
        let mut v = alloc::vec![0i64; gens];
        for l in &self.0 {
            let g = l.generator() as usize;
            if g > gens {
                return Err(Error::UnknownGenerator(l.generator()));
            }
            v[g - 1] += l.exponent() as i64;
        }
        Ok(v)
    }

    /// Letters joined by spaces, inverses rendered as `g^-1`.
    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&alloc::format!("{l}"));
        }
        s
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{}]", self.to_plain())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&self.to_plain())
        }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Parses whitespace- or `·`/`*`-separated tokens: `7`, `-7`, `7^-1`, `e`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '·' || c == '*' || c == ',') {
            if tok.is_empty() || tok == "e" {
                continue;
            }
            let (body, inv) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let val: i32 = body
                .parse()
                .map_err(|_| Error::InvalidScript(alloc::format!("bad letter `{tok}`")))?;
            let l = Letter::from_signed(val)
                .ok_or_else(|| Error::InvalidScript(alloc::format!("bad letter `{tok}`")))?;
            v.push(if inv { l.inverse() } else { l });
        }
        Ok(Word(v))
    }
}
