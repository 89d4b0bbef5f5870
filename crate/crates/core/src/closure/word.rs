use std::fmt;

use crate::error::{Error, Result};

/// A word in generator symbols: a list of `(generator index, exponent)` syllables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![(i, 1)])
    }

    /// Builds a word, merging adjacent syllables and dropping zero exponents.
    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters, counting `a^3` as three.
    pub fn len(&self) -> usize {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_syllables(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(self.0.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }

    /// Replaces every generator index through `map`.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Word {
        Word::from_syllables(self.0.iter().map(|&(g, e)| (map(g), e)))
    }

    /// Substitutes a word for each generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for &(g, e) in &self.0 {
            let base = if e < 0 { images[g].inverse() } else { images[g].clone() };
            for _ in 0..e.unsigned_abs() {
                out = out.concat(&base);
            }
        }
        out
    }

    /// Generic evaluation in any group given by identity, product and inverse.
    pub fn evaluate<T: Clone>(
        &self,
        values: &[T],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
        inv: impl Fn(&T) -> T,
    ) -> T {
        let mut acc = identity;
        for &(g, e) in &self.0 {
            let base = if e < 0 { inv(&values[g]) } else { values[g].clone() };
            for _ in 0..e.unsigned_abs() {
                acc = mul(&acc, &base);
            }
        }
        acc
    }

    /// Parses `a b^-1 c^2`; `1` (or an empty string) is the empty word.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::InvalidPresentation(format!("bad exponent in `{token}`")))?;
                    (n, e)
                }
                None => (token, 1),
            };
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator `{name}`")))?;
            syllables.push((idx, exp));
        }
        Ok(Word::from_syllables(syllables))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0)).map(|i| format!("g{}", i + 1)).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parse_and_print() {
        let w = Word::parse("b a b^-1 a", &names()).unwrap();
        assert_eq!(w.syllables(), &[(1, 1), (0, 1), (1, -1), (0, 1)]);
        assert_eq!(w.fmt_with(&names()), "b a b^-1 a");
        assert_eq!(Word::parse("1", &names()).unwrap(), Word::empty());
        assert!(Word::parse("c", &names()).is_err());
    }

    #[test]
    fn free_reduction() {
        let w = Word::parse("a b b^-1 a^-1", &names()).unwrap();
        assert!(w.is_empty());
        let v = Word::parse("a^2 b", &names()).unwrap();
        assert!(v.concat(&v.inverse()).is_empty());
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn evaluation_in_integers() {
        let w = Word::parse("a^3 b^-1 a", &names()).unwrap();
        let v = w.evaluate(&[2i64, 5], 0, |x, y| x + y, |x| -x);
        assert_eq!(v, 3);
    }
}
