use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::{ensure_within, Budget};
use crate::error::{Error, Result};
use crate::group::{subgroup_generated, FiniteGroup, Subgroup};

/// A freely reduced word. Letter `k ≥ 1` is the generator `x_k`, `-k` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    /// Builds a word, freely reducing it.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(Error::InvalidWord {
                    word: String::new(),
                    reason: "letter 0".into(),
                });
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(Word { letters: out })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of generators the word mentions, i.e. the largest index used.
    pub fn rank(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    fn concat(parts: &[&Word]) -> Word {
        Word::from_letters(parts.iter().flat_map(|w| w.letters.iter().copied()))
            .expect("nonzero letters")
    }

    /// `[u, v] = u⁻¹v⁻¹uv`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        Word::concat(&[&u.inverse(), &v.inverse(), u, v])
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let copies: Vec<&Word> = std::iter::repeat_n(&base, k.unsigned_abs() as usize).collect();
        Word::concat(&copies)
    }

    /// Parses `a..z` (generators), `A..Z` (inverses), `[u,v]` commutators,
    /// parentheses, and integer exponents `^k` / `^-k`. `1` is the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser {
            chars: &chars,
            pos: 0,
            text,
        };
        let word = parser.sequence()?;
        if parser.pos != chars.len() {
            return Err(parser.error(format!("unexpected '{}'", chars[parser.pos])));
        }
        Ok(word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.letters {
            let base = b'a' + (l.unsigned_abs() - 1) as u8;
            let c = if l > 0 {
                base
            } else {
                base.to_ascii_uppercase()
            };
            write!(f, "{}", c as char)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, reason: String) -> Error {
        Error::InvalidWord {
            word: self.text.to_string(),
            reason: format!("{reason} at position {}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == ',' || c == ']' || c == ')' {
                break;
            }
            parts.push(self.factor()?);
        }
        Ok(Word::concat(&parts.iter().collect::<Vec<_>>()))
    }

    fn factor(&mut self) -> Result<Word> {
        let c = self.peek().expect("checked by caller");
        self.pos += 1;
        let base = match c {
            'a'..='z' => Word {
                letters: vec![(c as u8 - b'a' + 1) as i32],
            },
            'A'..='Z' => Word {
                letters: vec![-((c as u8 - b'A' + 1) as i32)],
            },
            '1' => Word { letters: vec![] },
            '(' => {
                let inner = self.sequence()?;
                self.expect(')')?;
                inner
            }
            '[' => {
                let u = self.sequence()?;
                self.expect(',')?;
                let v = self.sequence()?;
                self.expect(']')?;
                Word::commutator(&u, &v)
            }
            other => {
                self.pos -= 1;
                return Err(self.error(format!("unexpected '{other}'")));
            }
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            if self.peek() == Some('-') {
                self.pos += 1;
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let k: i64 = digits
                .parse()
                .map_err(|_| self.error("bad exponent".into()))?;
            return Ok(base.power(k));
        }
        Ok(base)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }
}

/// Evaluates `w` with `x_k ↦ assignment[k-1]`.
pub fn evaluate_word(w: &Word, g: &FiniteGroup, assignment: &[usize]) -> Result<usize> {
    if assignment.len() < w.rank() {
        return Err(Error::ArityMismatch {
            expected: w.rank(),
            found: assignment.len(),
        });
    }
    Ok(evaluate_unchecked(w, g, assignment))
}

pub(crate) fn evaluate_unchecked(w: &Word, g: &FiniteGroup, assignment: &[usize]) -> usize {
    w.letters.iter().fold(0, |acc, &l| {
        let x = assignment[l.unsigned_abs() as usize - 1];
        g.mul(acc, if l > 0 { x } else { g.inv(x) })
    })
}

/// Calls `visit` on every tuple in `G^rank`, in lexicographic order.
pub(crate) fn for_each_tuple(order: usize, rank: usize, mut visit: impl FnMut(&[usize])) {
    let mut tuple = vec![0; rank];
    loop {
        visit(&tuple);
        let mut k = rank;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < order {
                break;
            }
            tuple[k] = 0;
        }
    }
}

/// The subgroup generated by all values of the words under all
/// substitutions.
pub fn verbal_subgroup(g: &FiniteGroup, words: &[Word], budget: &Budget) -> Result<Subgroup> {
    let mut values = std::collections::BTreeSet::new();
    for w in words {
        let rank = w.rank();
        ensure_within(
            "word substitutions",
            (g.order() as u128).pow(rank as u32),
            budget.max_tuples as u128,
        )?;
        for_each_tuple(g.order(), rank, |t| {
            values.insert(evaluate_unchecked(w, g, t));
        });
    }
    Ok(subgroup_generated(g, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_group;

    #[test]
    fn parsing_and_reduction() {
        assert_eq!(Word::parse("aBAb").unwrap().letters(), &[1, -2, -1, 2]);
        assert_eq!(Word::parse("[a,b]").unwrap(), Word::parse("ABab").unwrap());
        assert_eq!(Word::parse("a^3").unwrap(), Word::parse("aaa").unwrap());
        assert_eq!(Word::parse("(ab)^-1").unwrap(), Word::parse("BA").unwrap());
        assert!(Word::parse("aA").unwrap().is_empty());
        assert_eq!(Word::parse("[a,[b,c]]").unwrap().rank(), 3);
        assert!(Word::parse("a?").is_err());
        assert!(Word::parse("[a,b").is_err());
        assert_eq!(Word::parse("aBAb").unwrap().to_string(), "aBAb");
    }

    #[test]
    fn evaluation() {
        let s3 = builtin_group("symmetric:3").unwrap();
        let (t12, t13) = (
            s3.element_by_name("(1 2)").unwrap(),
            s3.element_by_name("(1 3)").unwrap(),
        );
        let c = evaluate_word(&Word::parse("[a,b]").unwrap(), &s3, &[t12, t13]).unwrap();
        assert_eq!(s3.element_order(c), 3);
        assert_eq!(c, s3.mul(s3.mul(t12, t13), s3.mul(t12, t13)));
        assert_eq!(
            evaluate_word(&Word::parse("abAB").unwrap(), &s3, &[0, 0]).unwrap(),
            0
        );

        let s4 = builtin_group("symmetric:4").unwrap();
        let x = s4.element_by_name("(1 2 3 4)").unwrap();
        let sq = evaluate_word(&Word::parse("a^2").unwrap(), &s4, &[x]).unwrap();
        assert_eq!(s4.element_name(sq), "(1 3)(2 4)");
        assert!(evaluate_word(&Word::parse("ab").unwrap(), &s4, &[x]).is_err());
    }

    #[test]
    fn verbal_examples() {
        let budget = Budget::default();
        let s4 = builtin_group("symmetric:4").unwrap();
        assert_eq!(
            verbal_subgroup(&s4, &[Word::parse("a^2").unwrap()], &budget)
                .unwrap()
                .len(),
            12
        );
        assert_eq!(
            verbal_subgroup(&s4, &[Word::parse("[a,b]").unwrap()], &budget)
                .unwrap()
                .len(),
            12
        );
        let c6 = builtin_group("cyclic:6").unwrap();
        assert_eq!(
            verbal_subgroup(&c6, &[Word::parse("a^3").unwrap()], &budget)
                .unwrap()
                .len(),
            2
        );
        assert!(verbal_subgroup(&c6, &[], &budget).unwrap().is_trivial());
    }
}
