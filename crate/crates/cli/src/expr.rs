//! The game expression language.
//!
//! ```text
//! expr := atom | not(expr) | or(expr, expr)
//!       | tbr_t(expr) | tbr_l(expr) | cbr_t(expr) | cbr_l(expr)
//! ```
//!
//! Whitespace between tokens is ignored. An atom is any run of characters
//! other than whitespace, parentheses and commas that is not an operator
//! name.

use std::collections::BTreeMap;
use std::fmt;

use col_core::games::{disjoin, finite_game_interface, negate};
use col_core::{make_recurrence, FiniteGame, GameRef, RecurrenceKind};

use crate::error::{ElabError, ExprError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GameExpr {
    Atom(String),
    Not(Box<GameExpr>),
    Or(Box<GameExpr>, Box<GameExpr>),
    TbrT(Box<GameExpr>),
    TbrL(Box<GameExpr>),
    CbrT(Box<GameExpr>),
    CbrL(Box<GameExpr>),
}

const UNARY: [&str; 5] = ["not", "tbr_t", "tbr_l", "cbr_t", "cbr_l"];

fn is_reserved(word: &str) -> bool {
    word == "or" || UNARY.contains(&word)
}

impl GameExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        GameExpr::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: GameExpr) -> Self {
        GameExpr::Not(Box::new(e))
    }

    pub fn or(a: GameExpr, b: GameExpr) -> Self {
        GameExpr::Or(Box::new(a), Box::new(b))
    }

    /// The recurrence at the top of the expression, if there is one.
    pub fn recurrence(&self) -> Option<(RecurrenceKind, &GameExpr)> {
        match self {
            GameExpr::TbrT(e) => Some((RecurrenceKind::TIGHT_REC, e)),
            GameExpr::TbrL(e) => Some((RecurrenceKind::LOOSE_REC, e)),
            GameExpr::CbrT(e) => Some((RecurrenceKind::TIGHT_COREC, e)),
            GameExpr::CbrL(e) => Some((RecurrenceKind::LOOSE_COREC, e)),
            _ => None,
        }
    }

    fn unary(op: &str, e: GameExpr) -> Self {
        let e = Box::new(e);
        match op {
            "not" => GameExpr::Not(e),
            "tbr_t" => GameExpr::TbrT(e),
            "tbr_l" => GameExpr::TbrL(e),
            "cbr_t" => GameExpr::CbrT(e),
            "cbr_l" => GameExpr::CbrL(e),
            _ => unreachable!("not a unary operator: {op}"),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            GameExpr::Atom(_) => 0,
            GameExpr::Or(a, b) => 1 + a.depth().max(b.depth()),
            GameExpr::Not(e)
            | GameExpr::TbrT(e)
            | GameExpr::TbrL(e)
            | GameExpr::CbrT(e)
            | GameExpr::CbrL(e) => 1 + e.depth(),
        }
    }

    /// Builds the game, resolving atoms against `defs`.
    pub fn elaborate(&self, defs: &BTreeMap<String, FiniteGame>) -> Result<GameRef, ElabError> {
        Ok(match self {
            GameExpr::Atom(name) => {
                let game = defs
                    .get(name)
                    .ok_or_else(|| ElabError::UnknownAtom(name.clone()))?;
                finite_game_interface(game.clone())
            }
            GameExpr::Not(e) => negate(e.elaborate(defs)?),
            GameExpr::Or(a, b) => disjoin(a.elaborate(defs)?, b.elaborate(defs)?),
            _ => {
                let (kind, e) = self
                    .recurrence()
                    .expect("remaining variants are recurrences");
                make_recurrence(e.elaborate(defs)?, kind)
            }
        })
    }
}

impl fmt::Display for GameExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameExpr::Atom(name) => f.write_str(name),
            GameExpr::Not(e) => write!(f, "not({e})"),
            GameExpr::Or(a, b) => write!(f, "or({a}, {b})"),
            _ => {
                let (kind, e) = self
                    .recurrence()
                    .expect("remaining variants are recurrences");
                write!(f, "{}({e})", kind.op_name())
            }
        }
    }
}

impl std::str::FromStr for GameExpr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_game_expr(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Open,
    Close,
    Comma,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
    /// Token read ahead, with the position where it starts.
    peeked: Option<(Tok, usize, usize)>,
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | ',')
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
            peeked: None,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn lex(&mut self) -> (Tok, usize, usize) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let tok = match self.chars.peek().copied() {
            None => Tok::Eof,
            Some('(') => {
                self.bump();
                Tok::Open
            }
            Some(')') => {
                self.bump();
                Tok::Close
            }
            Some(',') => {
                self.bump();
                Tok::Comma
            }
            Some(_) => {
                let mut word = String::new();
                while let Some(&c) = self.chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    word.push(c);
                    self.bump();
                }
                Tok::Word(word)
            }
        };
        (tok, line, col)
    }

    fn peek(&mut self) -> &(Tok, usize, usize) {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex());
        }
        self.peeked.as_ref().expect("just filled")
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        self.peek();
        self.peeked.take().expect("just filled")
    }

    fn expect(&mut self, want: Tok) -> Result<(), ExprError> {
        let (tok, line, col) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(ExprError::unexpected(line, col, &want.to_string(), &tok))
        }
    }

    fn expr(&mut self) -> Result<GameExpr, ExprError> {
        let (tok, line, col) = self.next();
        let word = match tok {
            Tok::Word(w) => w,
            other => {
                return Err(ExprError::unexpected(
                    line,
                    col,
                    "a game expression",
                    &other,
                ))
            }
        };
        if !is_reserved(&word) {
            return Ok(GameExpr::Atom(word));
        }
        self.expect(Tok::Open)?;
        let first = self.expr()?;
        let e = if word == "or" {
            self.expect(Tok::Comma)?;
            GameExpr::or(first, self.expr()?)
        } else {
            GameExpr::unary(&word, first)
        };
        self.expect(Tok::Close)?;
        Ok(e)
    }
}

pub fn parse_game_expr(text: &str) -> Result<GameExpr, ExprError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    let (tok, line, col) = p.next();
    if tok != Tok::Eof {
        return Err(ExprError::unexpected(line, col, "end of input", &tok));
    }
    Ok(e)
}
