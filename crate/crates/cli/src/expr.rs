//! Lexer and parser for diagram expressions.
//!
//! ```text
//! sum   := expr { ("+" | "-") expr }
//! expr  := term { ";" term }         f ; g applies f first (bottom to top)
//! term  := atom { "@" atom }
//! atom  := "x" | "cap" | "cup" | "capL" | "capR" | "cupL" | "cupR" | "empty"
//!        | "id(" word ")" | "tok(" algElem ")" | scalar "*" atom | "(" sum ")"
//! ```
//!
//! A word is a string of `u`/`d` (oriented) or a nonnegative integer
//! (unoriented). Scalars are `p`, `p/q`, `r/s i` or `p/q+r/s i`.

use superbrauer::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Gen {
    Cross,
    Cap,
    Cup,
    CapL,
    CapR,
    CupL,
    CupR,
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdWord {
    Count(usize),
    Oriented(Vec<bool>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Gen(Gen),
    Empty,
    Id(IdWord),
    /// raw algebra element text
    Tok(String),
    Scaled(Scalar, Box<Expr>),
    /// bottom first
    Compose(Vec<Expr>),
    Tensor(Vec<Expr>),
    /// signed summands
    Sum(Vec<(bool, Expr)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    /// byte offset in the source text
    pub pos: usize,
    pub node: Node,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Scalar(Scalar),
    /// contents of `id(...)` or `tok(...)`
    Call(String, String),
    Sym(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn digits(b: &[u8], mut k: usize) -> usize {
    while k < b.len() && b[k].is_ascii_digit() {
        k += 1;
    }
    k
}

/// End of an unsigned rational `p` or `p/q` starting at `k`, if any.
fn rational(b: &[u8], k: usize) -> Option<usize> {
    let e = digits(b, k);
    if e == k {
        return None;
    }
    if e < b.len() && b[e] == b'/' {
        let f = digits(b, e + 1);
        if f > e + 1 {
            return Some(f);
        }
        return None;
    }
    Some(e)
}

fn skip_spaces(b: &[u8], mut k: usize) -> usize {
    while k < b.len() && b[k].is_ascii_whitespace() {
        k += 1;
    }
    k
}

/// A trailing `i` that is not the start of an identifier.
fn imag_unit(b: &[u8], k: usize) -> Option<usize> {
    let k = skip_spaces(b, k);
    (k < b.len() && b[k] == b'i' && !(k + 1 < b.len() && b[k + 1].is_ascii_alphanumeric())).then_some(k + 1)
}

/// Length of the scalar literal at `k`: `a`, `a i`, `a+b i`, `a-b i`.
fn scalar_end(b: &[u8], k: usize) -> Option<usize> {
    let e = rational(b, k)?;
    if let Some(end) = imag_unit(b, e) {
        return Some(end);
    }
    if e < b.len() && (b[e] == b'+' || b[e] == b'-') {
        if let Some(f) = rational(b, e + 1) {
            if let Some(end) = imag_unit(b, f) {
                return Some(end);
            }
        }
    }
    Some(e)
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k];
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let e = scalar_end(b, k).ok_or_else(|| err(k, "malformed number"))?;
            let s: Scalar = text[k..e].parse().map_err(|_| err(k, format!("invalid scalar `{}`", &text[k..e])))?;
            out.push((k, Tok::Scalar(s)));
            k = e;
        } else if c.is_ascii_alphabetic() {
            let mut e = k;
            while e < b.len() && (b[e].is_ascii_alphanumeric() || b[e] == b'_') {
                e += 1;
            }
            let word = &text[k..e];
            if (word == "id" || word == "tok") && e < b.len() && b[e] == b'(' {
                let mut depth = 0;
                let mut f = e;
                while f < b.len() {
                    match b[f] {
                        b'(' => depth += 1,
                        b')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    f += 1;
                }
                if f == b.len() {
                    return Err(err(e, format!("unclosed `{word}(`")));
                }
                out.push((k, Tok::Call(word.to_string(), text[e + 1..f].trim().to_string())));
                k = f + 1;
            } else {
                out.push((k, Tok::Ident(word.to_string())));
                k = e;
            }
        } else if "();@*+-".contains(c as char) {
            out.push((k, Tok::Sym(c as char)));
            k += 1;
        } else {
            return Err(err(k, format!("unexpected character `{}`", text[k..].chars().next().unwrap())));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let neg = self.eat('-');
        let mut parts = vec![(neg, self.expr()?)];
        loop {
            if self.eat('+') {
                parts.push((false, self.expr()?));
            } else if self.eat('-') {
                parts.push((true, self.expr()?));
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 && !parts[0].0 { parts.pop().unwrap().1 } else { Expr { pos, node: Node::Sum(parts) } })
    }

    fn expr(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut parts = vec![self.term()?];
        while self.eat(';') {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr { pos, node: Node::Compose(parts) } })
    }

    fn term(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut parts = vec![self.atom()?];
        while self.eat('@') {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr { pos, node: Node::Tensor(parts) } })
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let Some(t) = self.peek().cloned() else {
            return Err(err(pos, "unexpected end of expression"));
        };
        self.at += 1;
        let node = match t {
            Tok::Ident(w) => match w.as_str() {
                "x" => Node::Gen(Gen::Cross),
                "cap" => Node::Gen(Gen::Cap),
                "cup" => Node::Gen(Gen::Cup),
                "capL" => Node::Gen(Gen::CapL),
                "capR" => Node::Gen(Gen::CapR),
                "cupL" => Node::Gen(Gen::CupL),
                "cupR" => Node::Gen(Gen::CupR),
                "empty" => Node::Empty,
                _ => return Err(err(pos, format!("unknown generator `{w}`"))),
            },
            Tok::Call(f, arg) if f == "id" => Node::Id(parse_id_word(&arg, pos)?),
            Tok::Call(_, arg) => {
                if arg.is_empty() {
                    return Err(err(pos, "empty token"));
                }
                Node::Tok(arg)
            }
            Tok::Scalar(c) => {
                if !self.eat('*') {
                    return Err(err(self.pos(), "expected `*` after a scalar"));
                }
                Node::Scaled(c, Box::new(self.atom()?))
            }
            Tok::Sym('-') => {
                // a negative scalar literal
                match self.peek().cloned() {
                    Some(Tok::Scalar(c)) => {
                        self.at += 1;
                        if !self.eat('*') {
                            return Err(err(self.pos(), "expected `*` after a scalar"));
                        }
                        Node::Scaled(-c, Box::new(self.atom()?))
                    }
                    _ => Node::Scaled(Scalar::from_int(-1), Box::new(self.atom()?)),
                }
            }
            Tok::Sym('(') => {
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected `)`"));
                }
                return Ok(inner);
            }
            Tok::Sym(c) => return Err(err(pos, format!("unexpected `{c}`"))),
        };
        Ok(Expr { pos, node })
    }
}

fn parse_id_word(arg: &str, pos: usize) -> Result<IdWord> {
    if arg.is_empty() {
        return Ok(IdWord::Oriented(Vec::new()));
    }
    if let Ok(n) = arg.parse::<usize>() {
        return Ok(IdWord::Count(n));
    }
    superbrauer::oriented::parse_word(arg)
        .map(IdWord::Oriented)
        .map_err(|_| err(pos, format!("`id({arg})`: expected a count or a word in u and d")))
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0, len: text.len() };
    let e = p.sum()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("cap @ id(1) ; x").unwrap();
        let Node::Compose(parts) = e.node else { panic!() };
        assert_eq!(parts.len(), 2);
        assert!(matches!(parts[0].node, Node::Tensor(_)));
    }

    #[test]
    fn scalars() {
        let e = parse("1/2+3 i * x").unwrap();
        let Node::Scaled(c, _) = e.node else { panic!() };
        assert_eq!(c, Scalar::gaussian(Scalar::from_frac(1, 2), Scalar::from_int(3)));
        let e = parse("x + 2 i * x").unwrap();
        let Node::Sum(parts) = e.node else { panic!() };
        assert!(matches!(&parts[1].1.node, Node::Scaled(c, _) if *c == Scalar::gaussian(Scalar::from_int(0), Scalar::from_int(2))));
        let e = parse("-1 * id(1)").unwrap();
        assert!(matches!(e.node, Node::Sum(_) | Node::Scaled(..)));
    }

    #[test]
    fn tokens_keep_their_text() {
        let e = parse("tok(1*i - 1/2*j)").unwrap();
        assert_eq!(e.node, Node::Tok("1*i - 1/2*j".into()));
    }

    #[test]
    fn errors_carry_positions() {
        for (text, at) in [("x ; ; x", 4), ("cap @", 5), ("foo", 0), ("id(12", 2), ("x $", 2), ("2 x", 2)] {
            match parse(text) {
                Err(Error::Parse { pos, .. }) => assert_eq!(pos, at, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
