//! Text grammar for lattices.
//!
//! ```text
//! expr := term ("+" term)*
//! term := atom ("(" integer ")")?
//! atom := "U" | "E8" | "<" integer ">" | "LK3" | "L2" | "Ln(" integer ")" | integer "*" atom
//! ```
//! `E8` is positive definite, so `E8(-1)` is the usual negative definite lattice.

use crate::arith::Int;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::IMatrix;
use std::fmt;

/// Repetition counts and total rank are capped so hostile input stays cheap.
pub const MAX_REPEAT: i64 = 64;
pub const MAX_RANK: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    U,
    E8,
    Diag(i64),
    LK3,
    L2,
    Ln(i64),
    Repeat(i64, Box<Atom>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub atom: Atom,
    pub scale: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub terms: Vec<Term>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::U => write!(f, "U"),
            Atom::E8 => write!(f, "E8"),
            Atom::Diag(k) => write!(f, "<{k}>"),
            Atom::LK3 => write!(f, "LK3"),
            Atom::L2 => write!(f, "L2"),
            Atom::Ln(n) => write!(f, "Ln({n})"),
            Atom::Repeat(k, a) => write!(f, "{k}*{a}"),
        }
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.atom)?;
            if let Some(s) = t.scale {
                write!(f, "({s})")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

const MAX_DEPTH: usize = 16;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && (self.src[self.pos] == b'-' || self.src[self.pos] == b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some(b'<') => {
                self.pos += 1;
                let k = self.integer()?;
                self.expect(b'>')?;
                Ok(Atom::Diag(k))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let at = self.pos;
                let k = self.integer()?;
                if !(1..=MAX_REPEAT).contains(&k) {
                    self.pos = at;
                    return self.err(format!("repeat count must be in 1..={MAX_REPEAT}"));
                }
                self.eat(b'*');
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return self.err("repetitions nested too deeply");
                }
                let inner = self.atom()?;
                self.depth -= 1;
                Ok(Atom::Repeat(k, Box::new(inner)))
            }
            _ => {
                if self.keyword("LK3") {
                    Ok(Atom::LK3)
                } else if self.keyword("Ln(") {
                    let at = self.pos;
                    let n = self.integer()?;
                    if n < 2 {
                        self.pos = at;
                        return self.err("Ln(n) needs n >= 2");
                    }
                    self.expect(b')')?;
                    Ok(Atom::Ln(n))
                } else if self.keyword("L2") {
                    Ok(Atom::L2)
                } else if self.keyword("E8") {
                    Ok(Atom::E8)
                } else if self.keyword("U") {
                    Ok(Atom::U)
                } else if self.peek().is_none() {
                    self.err("unexpected end of input")
                } else {
                    self.err("expected a lattice atom")
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let atom = self.atom()?;
        let scale = if self.eat(b'(') {
            let at = self.pos;
            let s = self.integer()?;
            if s == 0 {
                self.pos = at;
                return self.err("scale must be nonzero");
            }
            self.expect(b')')?;
            Some(s)
        } else {
            None
        };
        Ok(Term { atom, scale })
    }

    fn expr(&mut self) -> Result<LatticeSpec> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(LatticeSpec { terms })
    }
}

pub fn parse_spec(text: &str) -> Result<LatticeSpec> {
    Parser { src: text.as_bytes(), pos: 0, depth: 0 }.expr()
}

fn atom_rank(a: &Atom) -> usize {
    match a {
        Atom::U => 2,
        Atom::E8 => 8,
        Atom::Diag(_) => 1,
        Atom::LK3 => 22,
        Atom::L2 | Atom::Ln(_) => 23,
        Atom::Repeat(k, a) => (*k as usize).saturating_mul(atom_rank(a)),
    }
}

fn atom_gram(a: &Atom) -> Result<IMatrix> {
    Ok(match a {
        Atom::U => Lattice::u().gram().clone(),
        Atom::E8 => Lattice::e8().gram().clone(),
        Atom::Diag(k) => IMatrix::from_i64(&[vec![*k]]),
        Atom::LK3 => Lattice::lk3().gram().clone(),
        Atom::L2 => Lattice::l2().gram().clone(),
        Atom::Ln(n) => Lattice::ln(*n)?.gram().clone(),
        Atom::Repeat(k, inner) => {
            let g = atom_gram(inner)?;
            let parts: Vec<&IMatrix> = (0..*k).map(|_| &g).collect();
            IMatrix::block_diag(&parts)
        }
    })
}

impl LatticeSpec {
    pub fn rank(&self) -> usize {
        self.terms.iter().map(|t| atom_rank(&t.atom)).fold(0usize, |a, b| a.saturating_add(b))
    }

    pub fn build(&self) -> Result<Lattice> {
        if self.rank() > MAX_RANK {
            return Err(Error::Input(format!("rank {} exceeds the limit {MAX_RANK}", self.rank())));
        }
        let mut blocks = Vec::new();
        for t in &self.terms {
            let g = atom_gram(&t.atom)?;
            blocks.push(match t.scale {
                Some(s) => g.scale(&Int::from(s)),
                None => g,
            });
        }
        let refs: Vec<&IMatrix> = blocks.iter().collect();
        Ok(Lattice::new(IMatrix::block_diag(&refs))?.with_label(self.to_string()))
    }
}

/// Parse and build in one step.
pub fn make_lattice(text: &str) -> Result<Lattice> {
    parse_spec(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use proptest::prelude::*;

    #[test]
    fn named_lattices() {
        let u = make_lattice("U").unwrap();
        assert_eq!(u.gram(), Lattice::u().gram());
        let l2 = make_lattice("L2").unwrap();
        assert_eq!(l2.det(), int(2));
        assert_eq!(make_lattice("3U + 2E8(-1) + <-2>").unwrap().gram(), l2.gram());
        assert_eq!(make_lattice("3*U + 2*E8(-1) + <-2>").unwrap().gram(), l2.gram());
        let l3 = make_lattice("Ln(3)").unwrap();
        assert_eq!(l3.rank(), 23);
        assert_eq!(*l3.gram().get(22, 22), int(-4));
    }

    #[test]
    fn scaling_applies_to_the_term() {
        let l = make_lattice("U(2)").unwrap();
        assert_eq!(*l.gram().get(0, 1), int(2));
        assert_eq!(make_lattice("<1>(2)").unwrap().gram(), Lattice::diag(2).unwrap().gram());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_spec("U + V") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_spec("U +") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_spec("Ln(1)"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(make_lattice("<3>"), Err(Error::Odd { .. })));
        assert!(matches!(make_lattice("<0>"), Err(Error::Degenerate)));
    }

    fn arb_atom() -> impl Strategy<Value = Atom> {
        let leaf = prop_oneof![
            Just(Atom::U),
            Just(Atom::E8),
            (-6i64..6).prop_map(|k| Atom::Diag(2 * k)),
            Just(Atom::LK3),
            Just(Atom::L2),
            (2i64..9).prop_map(Atom::Ln),
        ];
        leaf.prop_recursive(2, 4, 1, |inner| (1i64..4, inner).prop_map(|(k, a)| Atom::Repeat(k, Box::new(a))))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(atoms in prop::collection::vec((arb_atom(), prop::option::of(-3i64..4)), 1..4)) {
            let spec = LatticeSpec {
                terms: atoms.into_iter().map(|(atom, s)| Term { atom, scale: s.filter(|&x| x != 0) }).collect(),
            };
            let text = spec.to_string();
            prop_assert_eq!(parse_spec(&text).unwrap(), spec);
        }
    }
}
