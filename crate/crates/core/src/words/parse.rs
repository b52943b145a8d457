use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FlatWord, OpKind, OpToken, PowerFactor, PowerWord, Word};
use crate::error::{Error, Result};

/// Direction in which a written word is read. `Operator` means the leftmost
/// token acts last; `Temporal` lists tokens in the order they act.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReadOrder {
    #[default]
    Operator,
    Temporal,
}

impl FromStr for ReadOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operator" => Ok(ReadOrder::Operator),
            "temporal" => Ok(ReadOrder::Temporal),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown order {s:?}") }),
        }
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
    base: usize,
}

impl Lexer<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.base + self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }
}

enum Parsed {
    Unit(OpToken),
    Power(PowerFactor),
}

fn parse_token(text: &str, base: usize) -> Result<Parsed> {
    let mut lx = Lexer { bytes: text.as_bytes(), pos: 0, base };
    let kind = match lx.peek() {
        Some(b'c') => OpKind::Create,
        Some(b'a') => OpKind::Annihilate,
        Some(b'g') => OpKind::Gauge,
        _ => return Err(lx.err(format!("unknown operator in {text:?}"))),
    };
    lx.pos += 1;
    let index = lx.number()?;
    let mut power = None;
    if lx.eat(b'^') {
        if kind == OpKind::Gauge {
            return Err(lx.err("gauge operators take no power"));
        }
        power = Some(lx.number()?);
    }
    let mut weight = 0;
    if lx.eat(b'(') {
        weight = lx.number()? as u32;
        if !lx.eat(b')') {
            return Err(lx.err("expected ')'"));
        }
        if kind == OpKind::Gauge {
            return Err(lx.err("gauge operators take no weight"));
        }
    }
    let mut offset = 1;
    if lx.eat(b'@') {
        if kind != OpKind::Gauge {
            return Err(lx.err("only gauge operators take an offset"));
        }
        offset = lx.number()?;
    }
    if lx.pos != text.len() {
        return Err(lx.err(format!("trailing input in {text:?}")));
    }
    if index == 0 || offset == 0 {
        return Err(Error::Parse { pos: base, msg: "indices are 1-based".into() });
    }
    Ok(match (kind, power) {
        (OpKind::Gauge, _) => Parsed::Unit(OpToken::gauge(index, offset)),
        (_, None) => Parsed::Unit(OpToken { kind, color: index, weight, gauge: None }),
        (_, Some(k)) => {
            let k = k as i32;
            Parsed::Power(PowerFactor {
                color: index,
                exponent: if kind == OpKind::Create { k } else { -k },
                weight,
            })
        }
    })
}

/// Parses a whitespace separated word such as `"a1 a1 c1 c1"`,
/// `"a1 a1 c1^2"`, `"a1(1) c1(0)"` or `"a1 g2@3 c1"`.
///
/// Tokens: `c<i>` creation, `a<i>` annihilation, `g<m>` gauge with matrix
/// `m`, optional `^k` power, `(w)` weight and `@o` gauge offset. A word with
/// at least one power is returned as a [`PowerWord`].
pub fn parse_word(text: &str) -> Result<Word> {
    parse_word_in(text, ReadOrder::Operator)
}

impl ReadOrder {
    pub fn parse(self, text: &str) -> Result<Word> {
        parse_word_in(text, self)
    }
}

fn parse_word_in(text: &str, order: ReadOrder) -> Result<Word> {
    let mut items = Vec::new();
    let mut offset = 0;
    for piece in text.split(char::is_whitespace) {
        if !piece.is_empty() {
            items.push(parse_token(piece, offset)?);
        }
        offset += piece.len() + 1;
    }
    if order == ReadOrder::Temporal {
        items.reverse();
    }
    if items.iter().all(|p| matches!(p, Parsed::Unit(_))) {
        let tokens = items
            .into_iter()
            .map(|p| match p {
                Parsed::Unit(t) => t,
                Parsed::Power(_) => unreachable!(),
            })
            .collect();
        return Ok(Word::Flat(FlatWord(tokens)));
    }
    let mut factors = Vec::new();
    for p in items {
        match p {
            Parsed::Power(f) => factors.push(f),
            Parsed::Unit(t) => match t.kind {
                OpKind::Gauge => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "gauge operators cannot appear in a word with powers".into(),
                    })
                }
                _ => factors.push(PowerFactor {
                    color: t.color,
                    exponent: t.step() as i32,
                    weight: t.weight,
                }),
            },
        }
    }
    Ok(Word::Power(PowerWord(factors)))
}
