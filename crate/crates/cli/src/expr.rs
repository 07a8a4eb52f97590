//! Parser for element expressions such as `E1^2 F2 (x) E1 F1 (x) w1`.
//!
//! ```text
//! expr   := ['-'] tterm (('+' | '-') tterm)*
//! tterm  := side ['(x)' side] ['(x)' 'w' uint]
//! side   := item+
//! item   := rational | gen ['^' uint]
//! gen    := E | F | h1 | h2 | H1 | H2 | E1 | E2 | F1 | F2
//! ```
//!
//! Each `tterm` is a pure tensor; sums inside a side distribute over the
//! whole term, so `E1 + F2 (x) F1` means `E1 ⊗ 1 + F2 ⊗ F1`.

use std::fmt;

use su21_core::algebra::AElement;
use su21_core::clifford::{CliffElement, CliffGen};
use su21_core::enveloping::UEnvElement;
use su21_core::induction::TensorWord;
use su21_core::lie::{GElement, GGenerator};
use su21_core::rational;
use su21_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at column {column}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { column, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Gen(&'static str),
    W(usize),
    Plus,
    Minus,
    Caret,
    Tensor,
    End,
}

const NAMES: [&str; 10] = ["E1", "E2", "F1", "F2", "h1", "h2", "H1", "H2", "E", "F"];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => {
                if chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
                    out.push((Tok::Tensor, col));
                    i += 3;
                    continue;
                }
                return err(col, "expected '(x)'");
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let d = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if d == i {
                        return err(i + 1, "expected a denominator");
                    }
                }
                out.push((Tok::Num(chars[start..i].iter().collect()), col));
                continue;
            }
            'w' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return err(col, "expected an index after 'w'");
                }
                let s: String = chars[start..j].iter().collect();
                let s = s.parse::<usize>().map_err(|_| ParseError { column: col, message: "index too large".into() })?;
                out.push((Tok::W(s), col));
                i = j;
                continue;
            }
            _ if c.is_alphabetic() => {
                let rest: String = chars[i..].iter().take(2).collect();
                match NAMES.iter().find(|n| rest.starts_with(**n)) {
                    Some(n) => {
                        out.push((Tok::Gen(n), col));
                        i += n.len();
                        continue;
                    }
                    None => {
                        let word: String = chars[i..].iter().take_while(|c| c.is_alphanumeric()).collect();
                        return err(col, format!("unknown generator '{word}'"));
                    }
                }
            }
            _ => return err(col, format!("unexpected character '{c}'")),
        }
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// A parsed expression: an element of `A`, or an element of `A ⊗ W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Element(AElement),
    Tensor(TensorWord),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Element(a) => {
                struct Terms<'a>(&'a AElement);
                impl fmt::Display for Terms<'_> {
                    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                        let mut terms: Vec<_> = self.0.terms().collect();
                        terms.sort_by(|a, b| (b.0.degree(), b.0, b.1).cmp(&(a.0.degree(), a.0, a.1)));
                        rational::write_combination(f, terms.into_iter().map(|(u, c, x)| (x, format!("{u} (x) {c}"))))
                    }
                }
                write!(f, "{}", Terms(a))
            }
            Parsed::Tensor(t) if t.is_zero() => f.write_str("0 (x) 1 (x) w1"),
            Parsed::Tensor(t) => write!(f, "{t}"),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

enum Side {
    U(UEnvElement),
    C(CliffElement),
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if *self.peek() != Tok::Caret {
            return Ok(1);
        }
        self.next();
        match self.next() {
            (Tok::Num(n), col) => n.parse::<u32>().or_else(|_| err(col, "expected an unsigned integer exponent")),
            (_, col) => err(col, "expected an unsigned integer exponent"),
        }
    }

    fn side(&mut self, clifford: bool) -> Result<Side, ParseError> {
        let mut u = UEnvElement::one();
        let mut c = CliffElement::one();
        let mut items = 0;
        loop {
            match self.peek().clone() {
                Tok::Num(n) => {
                    let col = self.col();
                    self.next();
                    let r = rational::parse(&n).or_else(|_| err(col, "invalid rational"))?;
                    u = u.scaled(&r);
                    c = c.scaled(&r);
                }
                Tok::Gen(name) => {
                    let col = self.col();
                    self.next();
                    let e = self.exponent()?;
                    if clifford {
                        let g = CliffGen::ALL
                            .iter()
                            .find(|g| g.name() == name)
                            .copied()
                            .map_or_else(|| err(col, format!("'{name}' is not a Clifford generator")), Ok)?;
                        for _ in 0..e {
                            c = c.mul(&CliffElement::word(&[g]));
                        }
                    } else {
                        let x = match name {
                            "H1" => GElement::big_h1(),
                            "H2" => GElement::big_h2(),
                            _ => GElement::gen(GGenerator::from_name(name).expect("lexer only emits generator names")),
                        };
                        let ux = UEnvElement::from_g(&x);
                        for _ in 0..e {
                            u = u.mul(&ux);
                        }
                    }
                }
                _ => break,
            }
            items += 1;
        }
        if items == 0 {
            return err(self.col(), "expected a coefficient or generator");
        }
        Ok(if clifford { Side::C(c) } else { Side::U(u) })
    }

    /// One pure tensor term; returns `(a, s)`.
    fn tterm(&mut self) -> Result<(AElement, Option<(usize, usize)>), ParseError> {
        let Side::U(u) = self.side(false)? else { unreachable!() };
        let mut c = CliffElement::one();
        let mut w = None;
        if *self.peek() == Tok::Tensor {
            self.next();
            if let Tok::W(s) = *self.peek() {
                w = Some((s, self.col()));
                self.next();
            } else {
                let Side::C(cc) = self.side(true)? else { unreachable!() };
                c = cc;
                if *self.peek() == Tok::Tensor {
                    self.next();
                    match self.next() {
                        (Tok::W(s), col) => w = Some((s, col)),
                        (_, col) => return err(col, "expected a W coordinate such as 'w1'"),
                    }
                }
            }
        }
        Ok((AElement::pure(&u, &c), w))
    }
}

/// Parses an expression; `top` bounds the admissible `w` indices when given.
pub fn parse_element_expr(text: &str, top: Option<usize>) -> Result<Parsed, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut terms = Vec::new();
    let mut sign = Rational::from_integer(1.into());
    if *p.peek() == Tok::Minus {
        p.next();
        sign = -sign;
    }
    loop {
        let (a, w) = p.tterm()?;
        terms.push((sign.clone(), a, w));
        match p.next() {
            (Tok::Plus, _) => sign = Rational::from_integer(1.into()),
            (Tok::Minus, _) => sign = Rational::from_integer((-1).into()),
            (Tok::End, _) => break,
            (_, col) => return err(col, "expected '+', '-', '(x)' or end of input"),
        }
    }
    let with_w = terms.iter().filter(|t| t.2.is_some()).count();
    if with_w == 0 {
        let mut a = AElement::zero();
        for (sg, x, _) in &terms {
            a = a.add(&x.scaled(sg));
        }
        return Ok(Parsed::Element(a));
    }
    if with_w != terms.len() {
        return err(1, "either every term names a W coordinate or none does");
    }
    let mut t = TensorWord::zero();
    for (sg, a, w) in &terms {
        let (s, col) = w.expect("checked above");
        if s == 0 || top.is_some_and(|top| s > top) {
            return err(col, format!("w{s} is out of range"));
        }
        for (u, c, x) in a.terms() {
            t.add_term(*u, *c, s, &(x * sg));
        }
    }
    Ok(Parsed::Tensor(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use su21_core::clifford::CliffMonomial;
    use su21_core::enveloping::PBWMonomial;

    #[test]
    fn examples() {
        let Parsed::Tensor(t) = parse_element_expr("E1^2 F2 (x) E1 F1 (x) w1", Some(2)).unwrap() else { panic!() };
        let u = PBWMonomial::p_part(2, 0, 0, 1);
        assert_eq!(t, TensorWord::single(u, CliffMonomial::new(0b0101), 1));
        let Parsed::Element(a) = parse_element_expr("F2 E1 (x) 1", None).unwrap() else { panic!() };
        assert_eq!(format!("{}", Parsed::Element(a)), "E1 F2 (x) 1 - E (x) 1");
        let e = parse_element_expr("E1^(x)", None).unwrap_err();
        assert_eq!(e.column, 4);
        assert!(parse_element_expr("Q1", None).unwrap_err().message.contains("unknown generator"));
        assert_eq!(parse_element_expr("1 (x) F2 (x) w3", Some(2)).unwrap_err().column, 14);
        assert!(parse_element_expr("1 (x) h1", None).is_err());
    }

    #[test]
    fn round_trip() {
        for text in ["E1^2 F2 (x) E1 F1 (x) w1", "1/2 h1 H2 (x) 1 (x) w1 - F F1 (x) E2 F2 (x) w2 + 3 (x) 1 (x) w1", "-F2 E1 + E (x) F1", "0"] {
            let a = parse_element_expr(text, Some(2)).unwrap();
            let b = parse_element_expr(&a.to_string(), Some(2)).unwrap();
            assert_eq!(a, b, "{text} printed as {a}");
        }
    }
}
