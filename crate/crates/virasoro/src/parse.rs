//! Parsers for the element grammar and the tensor state grammar.
//!
//! Elements: `elem := term (('+'|'-') term)*` with
//! `term := coeff ('*' factor)* | factor ('*' factor)*`,
//! `factor := 'd(' '-' int ')' ['^' int]`, `coeff := int | int '/' int`.
//! Products are interpreted in the algebra, so letters in any order are
//! normal-ordered on the way in; canonical displays round-trip unchanged.
//!
//! Tensor states append `@v(j)` to each term, with `j` a possibly negative
//! integer: `1@v(0) - 3/2*d(-2)*d(-1)@v(3)`.

use num_bigint::BigInt;

use crate::enveloping::{normal_order_word, EnvElem};
use crate::partition::Partition;
use crate::rat::Rat;
use crate::{Error, Result};

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Self {
        Parser {
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Unsigned digit run as a big integer.
    fn parse_digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.chars.get(self.pos) {
                Some(c) => self.error(format!("expected a number, found '{c}'")),
                None => self.error("expected a number, found end of input"),
            };
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("digit run parses"))
    }

    fn parse_small_uint(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        let n = self.parse_digits()?;
        match u32::try_from(&n) {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.error(format!("{what} {n} is out of range"))
            }
        }
    }

    /// `coeff := int | int '/' int`, magnitude only; signs live at the
    /// element level.
    fn parse_coeff(&mut self) -> Result<Rat> {
        let num = self.parse_digits()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let start = self.pos;
            let den = self.parse_digits()?;
            if den == BigInt::from(0) {
                self.pos = start;
                return self.error("zero denominator");
            }
            Ok(Rat::from_big(num, den))
        } else {
            Ok(Rat::from_big(num, BigInt::from(1)))
        }
    }

    /// `factor := 'd(' '-' int ')' ['^' int]`; returns the letter and its
    /// repeat count.
    fn parse_factor(&mut self) -> Result<(u32, u32)> {
        self.expect('d')?;
        self.expect('(')?;
        self.expect('-')?;
        let k = self.parse_small_uint("generator index")?;
        if k == 0 {
            self.pos -= 1;
            return self.error("generator index must be positive");
        }
        self.expect(')')?;
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            e = self.parse_small_uint("exponent")?;
            if e == 0 {
                self.pos -= 1;
                return self.error("exponent must be positive");
            }
        }
        Ok((k, e))
    }

    /// One term: unsigned coefficient and the product word, left to right.
    fn parse_term(&mut self) -> Result<(Rat, Vec<u32>)> {
        let mut word: Vec<u32> = Vec::new();
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.parse_coeff()?;
                while self.peek() == Some('*') {
                    self.pos += 1;
                    let (k, e) = self.parse_factor()?;
                    word.extend(std::iter::repeat_n(k, e as usize));
                }
                coeff
            }
            Some('d') => {
                let (k, e) = self.parse_factor()?;
                word.extend(std::iter::repeat_n(k, e as usize));
                while self.peek() == Some('*') {
                    self.pos += 1;
                    let (k, e) = self.parse_factor()?;
                    word.extend(std::iter::repeat_n(k, e as usize));
                }
                Rat::one()
            }
            Some(c) => return self.error(format!("expected a term, found '{c}'")),
            None => return self.error("expected a term, found end of input"),
        };
        Ok((coeff, word))
    }

    /// Leading or connective sign; returns the multiplier.
    fn parse_sign(&mut self, leading: bool) -> Result<Rat> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Ok(Rat::one())
            }
            Some('-') => {
                self.pos += 1;
                Ok(Rat::from_int(-1))
            }
            _ if leading => Ok(Rat::one()),
            Some(c) => self.error(format!("expected '+' or '-', found '{c}'")),
            None => self.error("expected '+' or '-', found end of input"),
        }
    }

    fn parse_v_index(&mut self) -> Result<i64> {
        self.expect('@')?;
        self.expect('v')?;
        self.expect('(')?;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let mag = self.parse_digits()?;
        let j = match i64::try_from(&mag) {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.error(format!("index {mag} is out of range"));
            }
        };
        self.expect(')')?;
        Ok(if negative { -j } else { j })
    }
}

/// Parses an element of the lowering-operator algebra.
pub fn parse_env_elem(input: &str) -> Result<EnvElem> {
    let mut p = Parser::new(input);
    let mut acc = EnvElem::zero();
    let mut leading = true;
    loop {
        let sign = p.parse_sign(leading)?;
        leading = false;
        let (coeff, word) = p.parse_term()?;
        let scale = &sign * &coeff;
        acc = &acc + &normal_order_word(&word).scale(&scale);
        if p.at_end() {
            return Ok(acc);
        }
    }
}

/// Parses a tensor state into raw `(partition, v-index, coefficient)`
/// triples; canonicalization happens in the module that receives them.
pub fn parse_tensor_state(input: &str) -> Result<Vec<(Partition, i64, Rat)>> {
    let mut p = Parser::new(input);
    let mut out: Vec<(Partition, i64, Rat)> = Vec::new();
    let mut leading = true;
    loop {
        let sign = p.parse_sign(leading)?;
        leading = false;
        let (coeff, word) = p.parse_term()?;
        let j = p.parse_v_index()?;
        let scale = &sign * &coeff;
        for (part, c) in normal_order_word(&word).terms() {
            out.push((part.clone(), j, c * &scale));
        }
        if p.at_end() {
            return Ok(out);
        }
    }
}
