//! Line-based text format.
//!
//! ```text
//! # right-handed trefoil
//! gen y1 A=1 M=0
//! gen x1 A=0 M=-1
//! gen y2 A=-1 M=-2
//! d x1 = U^1 y1 + y2
//! ```
//!
//! Only syntax is checked here; unknown or duplicate names are left for
//! [`KnotComplex::validate`].

use std::fmt::Write as _;

use super::{Arrow, Generator, KnotComplex};
use crate::error::{Error, Result};

struct Cursor<'a> {
    line: usize,
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Self {
            line,
            chars: text.char_indices().collect(),
            pos: 0,
            text,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn rest(&self) -> &'a str {
        match self.chars.get(self.pos) {
            Some(&(b, _)) => &self.text[b..],
            None => "",
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    /// Requires at least one whitespace character.
    fn require_ws(&mut self, what: &str) -> Result<()> {
        if !matches!(self.peek(), Some(c) if c.is_whitespace()) {
            return self.error(format!("expected whitespace before {what}"));
        }
        self.skip_ws();
        Ok(())
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.rest().starts_with(lit) {
            self.pos += lit.chars().count();
            Ok(())
        } else {
            self.error(format!("expected `{lit}`"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn name(&mut self) -> Result<String> {
        if self.rest().starts_with("U^") {
            return self.error("generator names may not start with `U^`");
        }
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return self.error("expected a generator name"),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || "_.'*-".contains(c)) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect())
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits = self.digits();
        if digits.is_empty() {
            self.pos = start;
            return self.error("expected an integer");
        }
        let text = if negative {
            format!("-{digits}")
        } else {
            digits
        };
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.error("integer out of range")
            }
        }
    }

    fn power(&mut self) -> Result<i64> {
        if self.peek() == Some('-') {
            return self.error("U-powers must be nonnegative");
        }
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.error("expected a U-power");
        }
        digits.parse().or_else(|_| {
            self.pos = start;
            self.error("U-power out of range")
        })
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

/// Parses the text format.
pub fn parse(text: &str) -> Result<KnotComplex> {
    let mut c = KnotComplex::default();
    for (k, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(k + 1, strip_comment(raw));
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        if cur.rest().starts_with("gen") {
            cur.expect("gen")?;
            cur.require_ws("the generator name")?;
            let name = cur.name()?;
            cur.require_ws("`A=`")?;
            cur.expect("A=")?;
            let alexander = cur.integer()?;
            cur.require_ws("`M=`")?;
            cur.expect("M=")?;
            let maslov = cur.integer()?;
            cur.skip_ws();
            if !cur.at_end() {
                return cur.error("unexpected trailing text");
            }
            c.generators.push(Generator::new(name, alexander, maslov));
        } else if cur.rest().starts_with('d') {
            cur.expect("d")?;
            cur.require_ws("the source name")?;
            let src = cur.name()?;
            cur.skip_ws();
            cur.expect("=")?;
            loop {
                cur.skip_ws();
                let u_power = if cur.rest().starts_with("U^") {
                    cur.expect("U^")?;
                    let p = cur.power()?;
                    cur.require_ws("the target name")?;
                    p
                } else {
                    0
                };
                let dst = cur.name()?;
                c.arrows.push(Arrow::new(src.clone(), dst, u_power));
                cur.skip_ws();
                if cur.at_end() {
                    break;
                }
                cur.expect("+")?;
            }
        } else {
            return cur.error("expected `gen` or `d`");
        }
    }
    Ok(c)
}

/// Serializes in generator order, one `d` line per source. Arrows whose
/// source is not a generator are written last, grouped by source.
pub fn serialize(c: &KnotComplex) -> String {
    let mut out = String::new();
    for g in &c.generators {
        let _ = writeln!(out, "gen {} A={} M={}", g.name, g.alexander, g.maslov);
    }
    let mut sources: Vec<&str> = c.generators.iter().map(|g| g.name.as_str()).collect();
    for a in &c.arrows {
        if !sources.contains(&a.src.as_str()) {
            sources.push(&a.src);
        }
    }
    let mut done = std::collections::HashSet::new();
    for src in sources {
        if !done.insert(src) {
            continue;
        }
        let terms: Vec<String> = c
            .arrows
            .iter()
            .filter(|a| a.src == src)
            .map(|a| match a.u_power {
                0 => a.dst.clone(),
                p => format!("U^{p} {}", a.dst),
            })
            .collect();
        if !terms.is_empty() {
            let _ = writeln!(out, "d {src} = {}", terms.join(" + "));
        }
    }
    out
}
