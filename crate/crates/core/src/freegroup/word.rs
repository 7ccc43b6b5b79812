use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest rank whose words can be spelled with the `a..z` alphabet.
pub const MAX_RANK: u32 = 26;

/// A freely reduced word in the free group of rank `rank`.
///
/// Letters are nonzero signed generator indices: `i` is the `i`-th generator
/// and `-i` its inverse. No letter is ever followed by its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    rank: u32,
    letters: Vec<i32>,
}

impl ReducedWord {
    pub fn identity(rank: u32) -> Self {
        ReducedWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: u32, index: i32) -> Result<Self> {
        Self::from_letters(rank, vec![index])
    }

    /// Builds a word from letters, rejecting unreduced spellings.
    pub fn from_letters(rank: u32, letters: Vec<i32>) -> Result<Self> {
        check_letters(rank, &letters)?;
        if letters.windows(2).any(|p| p[0] == -p[1]) {
            return Err(Error::ParseWord(format!("{letters:?} is not reduced")));
        }
        Ok(ReducedWord { rank, letters })
    }

    /// Builds a word from any spelling, cancelling adjacent inverse pairs.
    pub fn reduce(rank: u32, letters: &[i32]) -> Result<Self> {
        check_letters(rank, letters)?;
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(ReducedWord { rank, letters: out })
    }

    /// Parses `a..z` / `A..Z` (capital = inverse); `1` or the empty string is
    /// the identity. Returns the reduced word and whether reduction changed it.
    pub fn parse_reducing(rank: u32, text: &str) -> Result<(Self, bool)> {
        let letters = parse_letters(text)?;
        let word = Self::reduce(rank, &letters)?;
        let changed = word.letters.len() != letters.len();
        Ok((word, changed))
    }

    pub fn parse(rank: u32, text: &str) -> Result<Self> {
        let letters = parse_letters(text)?;
        check_letters(rank, &letters)?;
        Self::from_letters(rank, letters).map_err(|_| Error::ParseWord(text.to_string()))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    /// Concatenate-then-cancel. Both factors are reduced, so cancellation
    /// only happens at the junction.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut cancel = 0;
        let (x, y) = (&self.letters, &other.letters);
        while cancel < x.len() && cancel < y.len() && x[x.len() - 1 - cancel] == -y[cancel] {
            cancel += 1;
        }
        let mut letters = Vec::with_capacity(x.len() + y.len() - 2 * cancel);
        letters.extend_from_slice(&x[..x.len() - cancel]);
        letters.extend_from_slice(&y[cancel..]);
        ReducedWord { rank: self.rank, letters }
    }

    pub fn inv(&self) -> Self {
        ReducedWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `self^n` by repeated squaring; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = ReducedWord::identity(self.rank);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `c self c^-1`.
    pub fn conjugate_by(&self, c: &Self) -> Result<Self> {
        Ok(c.mul(self)?.mul_unchecked(&c.inv()))
    }
}

fn parse_letters(text: &str) -> Result<Vec<i32>> {
    let t = text.trim();
    if t == "1" {
        return Ok(Vec::new());
    }
    t.chars()
        .map(|c| match c {
            'a'..='z' => Ok(c as i32 - 'a' as i32 + 1),
            'A'..='Z' => Ok(-(c as i32 - 'A' as i32 + 1)),
            _ => Err(Error::ParseWord(text.to_string())),
        })
        .collect()
}

fn check_letters(rank: u32, letters: &[i32]) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::Domain(format!("rank {rank} outside 1..={MAX_RANK}")));
    }
    if let Some(bad) = letters.iter().find(|l| **l == 0 || l.unsigned_abs() > rank) {
        return Err(Error::ParseWord(format!("letter {bad} outside rank {rank}")));
    }
    Ok(())
}

/// Writes letters in the `aAbB` alphabet; the identity prints as `1`.
impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.letters {
            let c = if l > 0 {
                (b'a' + (l - 1) as u8) as char
            } else {
                (b'A' + (-l - 1) as u8) as char
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    /// Parses a rank-2 word.
    fn from_str(s: &str) -> Result<Self> {
        ReducedWord::parse(2, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(w("ab").mul(&w("BA")).unwrap().is_identity());
        assert_eq!(w("ab").inv(), w("BA"));
        assert_eq!(w("ab").pow(3), w("ababab"));
    }

    #[test]
    fn pow_edge_cases() {
        assert_eq!(w("ab").pow(0), ReducedWord::identity(2));
        assert_eq!(w("ab").pow(-2), w("BABA"));
        assert_eq!(w("aBA").pow(5), w("aBBBBBA"));
        assert_eq!(w("a").pow(64).len(), 64);
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(w("abAB").to_string(), "abAB");
        assert_eq!(ReducedWord::identity(2).to_string(), "1");
        assert_eq!(w("1"), ReducedWord::identity(2));
        assert_eq!(w(""), ReducedWord::identity(2));
        assert!("aA".parse::<ReducedWord>().is_err());
        assert!("ac".parse::<ReducedWord>().is_err());
        assert!("a b".parse::<ReducedWord>().is_err());
        let (r, changed) = ReducedWord::parse_reducing(2, "abBa").unwrap();
        assert_eq!(r, w("aa"));
        assert!(changed);
        assert!(ReducedWord::parse(3, "abc").is_ok());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let x = ReducedWord::parse(3, "c").unwrap();
        assert!(matches!(x.mul(&w("a")), Err(Error::RankMismatch(3, 2))));
    }

    fn word_strategy() -> impl Strategy<Value = ReducedWord> {
        prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 0..12)
            .prop_map(|l| ReducedWord::reduce(2, &l).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn multiplication_is_associative(x in word_strategy(), y in word_strategy(), z in word_strategy()) {
            let left = x.mul(&y).unwrap().mul(&z).unwrap();
            let right = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    proptest! {
        #[test]
        fn products_stay_reduced_and_invert(x in word_strategy(), y in word_strategy()) {
            let p = x.mul(&y).unwrap();
            prop_assert!(p.letters().windows(2).all(|q| q[0] != -q[1]));
            prop_assert!(p.mul(&p.inv()).unwrap().is_identity());
            prop_assert_eq!(p.inv(), y.inv().mul(&x.inv()).unwrap());
        }
    }
}
