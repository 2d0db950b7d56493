//! Trace words over the alphabet `{X, X†}`.
//!
//! A [`Word`] is the literal letter sequence inside a single trace,
//! `Tr X^{i_1} (X†)^{j_1} ... X^{i_k} (X†)^{j_k}`. Equality is literal; cyclic
//! equivalence is the separate predicate [`Word::is_rotation_of`].
//!
//! Text forms accepted by [`str::parse`]:
//! - letter form: `x` for `X`, `d` for `X†`, case-insensitive (`"xdxd"`);
//! - exponent form: `i_1,j_1;i_2,j_2;...` meaning `X^{i_1} X†^{j_1} X^{i_2} ...`
//!   (`"2,1;1,2"` is `xxdxdd`).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// One insertion in a trace word. `X` sorts before `X†`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    XDag,
}

impl Letter {
    pub fn dagger(self) -> Self {
        match self {
            Letter::X => Letter::XDag,
            Letter::XDag => Letter::X,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::XDag => 'd',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    /// `(X X†)^m`.
    pub fn alternating(m: usize) -> Self {
        Self::from_runs(&alloc::vec![(1, 1); m])
    }

    /// `X^{i_1} X†^{j_1} X^{i_2} X†^{j_2} ...` from `(i_a, j_a)` pairs.
    pub fn from_runs(runs: &[(usize, usize)]) -> Self {
        let mut letters = Vec::new();
        for &(i, j) in runs {
            letters.extend(core::iter::repeat(Letter::X).take(i));
            letters.extend(core::iter::repeat(Letter::XDag).take(j));
        }
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.count(Letter::X) == self.len()
    }

    /// `m` for a balanced word of `m` X's and `m` X†'s.
    pub fn weight(&self) -> Option<usize> {
        self.is_balanced().then(|| self.len() / 2)
    }

    /// Cyclic left rotation by `r` positions.
    pub fn rotate(&self, r: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let r = r % letters.len();
            letters.rotate_left(r);
        }
        Self { letters }
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |r| self.rotate(r))
    }

    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.len() == other.len() && self.rotations().any(|w| &w == other)
    }

    /// Lexicographically least rotation.
    pub fn canonical(&self) -> Self {
        self.rotations().min().unwrap_or_default()
    }

    /// The word of `Tr(O)†`: reversed, with `X` and `X†` exchanged.
    pub fn conjugate(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.dagger()).collect(),
        }
    }

    /// Maximal runs of equal letters as `(letter, length)` pairs, read
    /// linearly (runs are not merged across the wrap-around).
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.letters {
            match runs.last_mut() {
                Some((last, n)) if *last == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    /// True iff the word is a rotation of `(X X†)^m` for some `m`.
    pub fn is_alternating(&self) -> bool {
        !self.is_empty() && self.len() % 2 == 0 && self.letters.windows(2).all(|p| p[0] != p[1])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            fmt::Write::write_char(f, l.as_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordParseError {
    Empty,
    InvalidLetter { position: usize, found: char },
    InvalidExponents(String),
}

impl fmt::Display for WordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordParseError::Empty => f.write_str("empty word pattern"),
            WordParseError::InvalidLetter { position, found } => write!(
                f,
                "invalid letter {found:?} at position {position}; expected 'x' (X) or 'd' (X\u{2020})"
            ),
            WordParseError::InvalidExponents(s) => write!(
                f,
                "invalid exponent form {s:?}; expected i1,j1;i2,j2;... with nonnegative integers"
            ),
        }
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(WordParseError::Empty);
        }
        if s.bytes().any(|b| b.is_ascii_digit()) {
            return parse_exponent_form(s);
        }
        let letters = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c.to_ascii_lowercase() {
                'x' => Ok(Letter::X),
                'd' => Ok(Letter::XDag),
                found => Err(WordParseError::InvalidLetter { position, found }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { letters })
    }
}

fn parse_exponent_form(s: &str) -> Result<Word, WordParseError> {
    let bad = || WordParseError::InvalidExponents(String::from(s));
    let mut runs = Vec::new();
    for group in s.split(';') {
        let (i, j) = group.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        runs.push((i, j));
    }
    let word = Word::from_runs(&runs);
    if word.is_empty() {
        return Err(WordParseError::Empty);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_both_forms() {
        let a: Word = "XxDxdD".parse().unwrap();
        let b: Word = "2,1;1,2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "xxdxdd");
        assert_eq!(a.weight(), Some(3));
    }

    #[test]
    fn parse_errors() {
        assert_eq!("".parse::<Word>(), Err(WordParseError::Empty));
        assert_eq!(
            "xdy".parse::<Word>(),
            Err(WordParseError::InvalidLetter {
                position: 2,
                found: 'y'
            })
        );
        assert!(matches!(
            "1,2;3".parse::<Word>(),
            Err(WordParseError::InvalidExponents(_))
        ));
        assert_eq!("0,0".parse::<Word>(), Err(WordParseError::Empty));
    }

    #[test]
    fn rotation_and_canonical_form() {
        let w: Word = "dxdx".parse().unwrap();
        assert_eq!(w.canonical().to_string(), "xdxd");
        assert!(w.is_rotation_of(&"xdxd".parse().unwrap()));
        assert!(!w.is_rotation_of(&"xxdd".parse().unwrap()));
        assert_eq!(w.rotate(5).to_string(), "xdxd");
    }

    #[test]
    fn conjugate_reverses_and_swaps() {
        let w: Word = "xxd".parse().unwrap();
        assert_eq!(w.conjugate().to_string(), "xdd");
        assert_eq!(w.conjugate().conjugate(), w);
    }

    #[test]
    fn unbalanced_words_have_no_weight() {
        let w: Word = "xxd".parse().unwrap();
        assert!(!w.is_balanced());
        assert_eq!(w.weight(), None);
    }

    #[test]
    fn runs_and_alternation() {
        let w: Word = "xxdxdd".parse().unwrap();
        assert_eq!(
            w.runs(),
            [
                (Letter::X, 2),
                (Letter::XDag, 1),
                (Letter::X, 1),
                (Letter::XDag, 2)
            ]
        );
        assert!(Word::alternating(3).is_alternating());
        assert!("dxdx".parse::<Word>().unwrap().is_alternating());
        assert!(!w.is_alternating());
    }
}
