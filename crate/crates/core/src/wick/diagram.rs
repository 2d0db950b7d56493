use alloc::vec::Vec;
use core::fmt;

use crate::word::{Letter, Word};

/// A `(loop, offset)` address of one insertion in a [`Diagram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub loop_index: usize,
    pub offset: usize,
}

/// A product of traces, one [`Word`] per trace loop.
///
/// Insertions are also addressed by a global index running through the loops
/// in order; [`Diagram::position`] converts back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    loops: Vec<Word>,
    letters: Vec<Letter>,
    next: Vec<usize>,
    loop_of: Vec<usize>,
    starts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramError {
    NoLoops,
    EmptyLoop(usize),
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::NoLoops => f.write_str("a diagram needs at least one trace loop"),
            DiagramError::EmptyLoop(i) => write!(f, "trace loop {i} is empty"),
        }
    }
}

impl Diagram {
    pub fn new(loops: Vec<Word>) -> Result<Self, DiagramError> {
        if loops.is_empty() {
            return Err(DiagramError::NoLoops);
        }
        if let Some(i) = loops.iter().position(Word::is_empty) {
            return Err(DiagramError::EmptyLoop(i));
        }
        let total: usize = loops.iter().map(Word::len).sum();
        let mut letters = Vec::with_capacity(total);
        let mut next = Vec::with_capacity(total);
        let mut loop_of = Vec::with_capacity(total);
        let mut starts = Vec::with_capacity(loops.len());
        for (l, word) in loops.iter().enumerate() {
            let start = letters.len();
            starts.push(start);
            let len = word.len();
            for (offset, &letter) in word.letters().iter().enumerate() {
                letters.push(letter);
                next.push(start + (offset + 1) % len);
                loop_of.push(l);
            }
        }
        Ok(Self {
            loops,
            letters,
            next,
            loop_of,
            starts,
        })
    }

    /// The single-trace diagram of a word. Panics on an empty word.
    pub fn single(word: Word) -> Self {
        Self::new(alloc::vec![word]).expect("single-loop diagram needs a nonempty word")
    }

    pub fn loops(&self) -> &[Word] {
        &self.loops
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn total_insertions(&self) -> usize {
        self.letters.len()
    }

    pub fn letter(&self, global: usize) -> Letter {
        self.letters[global]
    }

    /// Global index of the insertion following `global` around its loop.
    pub fn next(&self, global: usize) -> usize {
        self.next[global]
    }

    pub fn position(&self, global: usize) -> Position {
        let loop_index = self.loop_of[global];
        Position {
            loop_index,
            offset: global - self.starts[loop_index],
        }
    }

    pub fn global(&self, position: Position) -> usize {
        self.starts[position.loop_index] + position.offset
    }

    pub fn positions_of(&self, letter: Letter) -> Vec<usize> {
        (0..self.letters.len())
            .filter(|&g| self.letters[g] == letter)
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.letters.iter().filter(|&&l| l == Letter::X).count() == self.letters.len()
    }

    /// Number of X insertions when balanced.
    pub fn weight(&self) -> Option<usize> {
        self.is_balanced().then_some(self.letters.len() / 2)
    }
}
