use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `(t_c, t_d) -> (t_d, t_{T_d^{-1}(c)})`: `c` travels right and is conjugated.
    Right,
    /// `(t_c, t_d) -> (t_{T_c(d)}, t_c)`: `d` travels left and is conjugated.
    Left,
}

impl Direction {
    pub fn inverse(self) -> Direction {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }
}

/// An elementary Hurwitz move on the adjacent pair at 1-based positions `(index, index + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub index: usize,
    pub direction: Direction,
}

impl Move {
    pub fn right(index: usize) -> Move {
        Move {
            index,
            direction: Direction::Right,
        }
    }

    pub fn left(index: usize) -> Move {
        Move {
            index,
            direction: Direction::Left,
        }
    }

    pub fn inverse(self) -> Move {
        Move {
            index: self.index,
            direction: self.direction.inverse(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            Direction::Right => 'R',
            Direction::Left => 'L',
        };
        write!(f, "{d}{}", self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Move(Move),
    /// Cyclic rotation: `R1, R2, ..., R(n-1)`, moving the first factor to the end.
    Cyclic,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Move(m) => write!(f, "{m}"),
            Step::Cyclic => write!(f, "C"),
        }
    }
}

/// A deterministic list of Hurwitz steps, written `R3,L1,C`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Schedule {
    steps: Vec<Step>,
}

impl Schedule {
    pub fn new(steps: Vec<Step>) -> Schedule {
        Schedule { steps }
    }

    pub fn from_moves(moves: impl IntoIterator<Item = Move>) -> Schedule {
        Schedule {
            steps: moves.into_iter().map(Step::Move).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Schedule> {
        text.parse()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: &Schedule) {
        self.steps.extend_from_slice(&other.steps);
    }

    /// Elementary moves for a factorization of length `n`.
    pub fn expand(&self, n: usize) -> Vec<Move> {
        let mut out = Vec::new();
        for s in &self.steps {
            match s {
                Step::Move(m) => out.push(*m),
                Step::Cyclic => out.extend((1..n).map(Move::right)),
            }
        }
        out
    }

    /// The schedule undoing this one on a factorization of length `n`.
    pub fn inverse(&self, n: usize) -> Schedule {
        Schedule::from_moves(self.expand(n).into_iter().rev().map(Move::inverse))
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(text: &str) -> Result<Schedule> {
        let mut steps = Vec::new();
        for (k, raw) in text.split(',').enumerate() {
            let tok = raw.trim();
            if tok.is_empty() {
                if text.trim().is_empty() {
                    break;
                }
                return Err(Error::Parse(format!("empty step {} in schedule", k + 1)));
            }
            if tok == "C" {
                steps.push(Step::Cyclic);
                continue;
            }
            let (dir, num) = tok.split_at(1);
            let direction = match dir {
                "R" => Direction::Right,
                "L" => Direction::Left,
                _ => {
                    return Err(Error::Parse(format!(
                        "step {}: expected R<i>, L<i> or C, got `{tok}`",
                        k + 1
                    )))
                }
            };
            let index: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("step {}: bad index in `{tok}`", k + 1)))?;
            if index == 0 {
                return Err(Error::Parse(format!("step {}: indices are 1-based", k + 1)));
            }
            steps.push(Step::Move(Move { index, direction }));
        }
        Ok(Schedule { steps })
    }
}
