//! Free-group words in two letters, in reduced syllable form.
//!
//! A word is a sequence of syllables `letter^exponent` with non-zero
//! exponents and no two adjacent syllables on the same letter. The
//! complexity of a word is the pair (syllable count, sum of absolute
//! exponents), ordered lexicographically; it is the well-founded measure
//! driving the derivation planner.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the two free generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }

    /// The other letter.
    pub fn other(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// A maximal run `letter^exponent` inside a reduced word; `exponent != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub letter: Letter,
    pub exponent: i32,
}

/// A reduced free-group word over {x, y}.
///
/// Invariants: no zero exponents, no two consecutive syllables with the
/// same letter. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    syllables: Vec<Syllable>,
}

/// Lexicographic word complexity: syllable count first, then the total
/// of absolute exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Complexity {
    pub syllables: usize,
    pub exponent_sum: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("unexpected character {0:?} in word")]
    UnexpectedChar(char),
    #[error("unbalanced parenthesis in word")]
    UnbalancedParen,
    #[error("malformed exponent")]
    BadExponent,
    #[error("exponent with no base")]
    DanglingExponent,
}

impl GroupWord {
    /// The empty word.
    pub fn identity() -> Self {
        GroupWord::default()
    }

    /// The one-letter word `letter`.
    pub fn letter(letter: Letter) -> Self {
        GroupWord::from_raw([(letter, 1)])
    }

    /// The one-syllable word `letter^exponent` (empty if the exponent is 0).
    pub fn syllable(letter: Letter, exponent: i32) -> Self {
        GroupWord::from_raw([(letter, exponent)])
    }

    /// Reduces a raw syllable list: merges adjacent runs of the same
    /// letter and drops zero exponents until neither applies. The result
    /// is the unique reduced form of the input.
    pub fn from_raw(raw: impl IntoIterator<Item = (Letter, i32)>) -> Self {
        let mut stack: Vec<Syllable> = Vec::new();
        for (letter, exponent) in raw {
            if exponent == 0 {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.letter == letter => {
                    top.exponent += exponent;
                    if top.exponent == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push(Syllable { letter, exponent }),
            }
        }
        GroupWord { syllables: stack }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Concatenation followed by reduction.
    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::from_raw(
            self.syllables
                .iter()
                .chain(other.syllables.iter())
                .map(|s| (s.letter, s.exponent)),
        )
    }

    /// The inverse word: syllables reversed with negated exponents.
    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    letter: s.letter,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, exponent: i32) -> GroupWord {
        if exponent < 0 {
            return self.inverse().pow(-exponent);
        }
        let mut out = GroupWord::identity();
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }

    pub fn complexity(&self) -> Complexity {
        Complexity {
            syllables: self.syllables.len(),
            exponent_sum: self
                .syllables
                .iter()
                .map(|s| s.exponent.unsigned_abs())
                .sum(),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "e");
        }
        for s in &self.syllables {
            write!(f, "{}", s.letter.symbol())?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = WordParseError;

    /// Parses word syntax: letters `x`, `y`, caret exponents, juxtaposition
    /// for products, parentheses for grouping, `e` for the empty word.
    /// Whitespace is ignored. Examples: `x^2y^-1x`, `(xy)^2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (word, rest) = parse_word(&chars)?;
        if rest < chars.len() {
            return Err(if chars[rest] == ')' {
                WordParseError::UnbalancedParen
            } else {
                WordParseError::UnexpectedChar(chars[rest])
            });
        }
        Ok(word)
    }
}

fn parse_word(chars: &[char]) -> Result<(GroupWord, usize), WordParseError> {
    let mut word = GroupWord::identity();
    let mut pos = 0;
    while pos < chars.len() {
        let base = match chars[pos] {
            'x' => {
                pos += 1;
                GroupWord::letter(Letter::X)
            }
            'y' => {
                pos += 1;
                GroupWord::letter(Letter::Y)
            }
            'e' | '1' => {
                pos += 1;
                GroupWord::identity()
            }
            '(' => {
                let (inner, consumed) = parse_word(&chars[pos + 1..])?;
                pos += 1 + consumed;
                if pos >= chars.len() || chars[pos] != ')' {
                    return Err(WordParseError::UnbalancedParen);
                }
                pos += 1;
                inner
            }
            ')' => break,
            '^' => return Err(WordParseError::DanglingExponent),
            c => return Err(WordParseError::UnexpectedChar(c)),
        };
        let factor = if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let (exp, consumed) = parse_exponent(&chars[pos..])?;
            pos += consumed;
            base.pow(exp)
        } else {
            base
        };
        word = word.mul(&factor);
    }
    Ok((word, pos))
}

fn parse_exponent(chars: &[char]) -> Result<(i32, usize), WordParseError> {
    let mut pos = 0;
    let negative = if chars.first() == Some(&'-') {
        pos += 1;
        true
    } else {
        false
    };
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return Err(WordParseError::BadExponent);
    }
    let digits: String = chars[start..pos].iter().collect();
    let value: i32 = digits.parse().map_err(|_| WordParseError::BadExponent)?;
    Ok((if negative { -value } else { value }, pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_merges_adjacent_syllables() {
        let raw = GroupWord::from_raw([(Letter::X, 1), (Letter::X, 1), (Letter::Y, -1)]);
        assert_eq!(raw, w("x^2y^-1"));
    }

    #[test]
    fn reduce_cancels_completely() {
        let raw = GroupWord::from_raw([
            (Letter::X, 1),
            (Letter::Y, 2),
            (Letter::Y, -2),
            (Letter::X, -1),
        ]);
        assert!(raw.is_empty());
    }

    #[test]
    fn reduce_cascades_merges() {
        let raw = GroupWord::from_raw([
            (Letter::X, 2),
            (Letter::Y, 1),
            (Letter::Y, -1),
            (Letter::X, 1),
        ]);
        assert_eq!(raw, w("x^3"));
    }

    #[test]
    fn complexity_of_empty_word() {
        assert_eq!(
            GroupWord::identity().complexity(),
            Complexity {
                syllables: 0,
                exponent_sum: 0
            }
        );
    }

    #[test]
    fn complexity_counts_syllables_and_exponents() {
        assert_eq!(
            w("x^2y^-1").complexity(),
            Complexity {
                syllables: 2,
                exponent_sum: 3
            }
        );
        assert_eq!(
            w("xyx^-1y").complexity(),
            Complexity {
                syllables: 4,
                exponent_sum: 4
            }
        );
    }

    #[test]
    fn complexity_orders_lexicographically() {
        // Syllable count dominates.
        assert!(w("x^9").complexity() < w("xy").complexity());
        assert!(w("xy").complexity() < w("x^2y").complexity());
    }

    #[test]
    fn parse_handles_parentheses_and_signs() {
        assert_eq!(w("(xy)^2"), w("xyxy"));
        assert_eq!(w("(xy)^-1"), w("y^-1x^-1"));
        assert_eq!(w(" x ^ 2 y"), w("x^2y"));
        assert!(w("e").is_empty());
        assert_eq!(w("x^0y^3"), w("y^3"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("z".parse::<GroupWord>().is_err());
        assert!("(xy".parse::<GroupWord>().is_err());
        assert!("x^".parse::<GroupWord>().is_err());
        assert!("^2".parse::<GroupWord>().is_err());
        assert!("xy)".parse::<GroupWord>().is_err());
    }

    #[test]
    fn display_roundtrips_through_parser() {
        for s in ["x", "y^-1", "x^2y^-1x", "xyxy", "e"] {
            let word = w(s);
            assert_eq!(w(&word.to_string()), word);
        }
    }

    #[test]
    fn inverse_and_pow_basics() {
        assert_eq!(w("x^2y").inverse(), w("y^-1x^-2"));
        assert_eq!(w("xy").pow(2), w("xyxy"));
        assert_eq!(w("xy").pow(-1), w("y^-1x^-1"));
        assert!(w("xy").mul(&w("xy").inverse()).is_empty());
    }
}
