//! Text formats: exchange matrices, Cartan matrices and polynomial expressions.
//!
//! Matrices are a header line `n p m` followed by `m` rows of `n` integers;
//! rows are separated by `;` or newlines. A JSON object `{n, p, m, rows}` is
//! accepted as well. Expressions use `x1, x2, ...` with `+ - * / ^` and
//! parentheses; the canonical output of the kernel parses back to itself.

use std::fmt;

use cluster_core::laurent::{LaurentPoly, RationalFn};
use cluster_core::seed::{ExchangeMatrix, SeedProfile};
use num_bigint::BigInt;

use crate::json::MatrixJson;

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

fn error_at(text: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError { line, column, message: message.into() }
}

/// Replaces the typographic minus sign so the remaining grammar is ASCII.
fn normalize(text: &str) -> String {
    text.replace('\u{2212}', "-")
}

/// Byte offsets and text of the whitespace-separated tokens in `text[start..end]`.
fn tokens(text: &str, start: usize, end: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut tok_start = None;
    for (i, c) in text[start..end].char_indices() {
        let at = start + i;
        match (c.is_whitespace(), tok_start) {
            (false, None) => tok_start = Some(at),
            (true, Some(s)) => {
                out.push((s, &text[s..at]));
                tok_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = tok_start {
        out.push((s, &text[s..end]));
    }
    out
}

fn integer_rows(text: &str, from: usize) -> Result<Vec<(usize, Vec<BigInt>)>, ParseError> {
    let mut rows = Vec::new();
    let mut start = from;
    let bytes = text.as_bytes();
    for end in (from..=text.len()).filter(|&i| i == text.len() || bytes[i] == b';' || bytes[i] == b'\n') {
        let toks = tokens(text, start, end);
        if !toks.is_empty() {
            let row = toks
                .iter()
                .map(|&(at, t)| t.parse::<BigInt>().map_err(|_| error_at(text, at, format!("expected an integer, found '{t}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push((start, row));
        }
        start = end + 1;
    }
    Ok(rows)
}

/// Parses an exchange matrix in the text or JSON format.
pub fn parse_matrix(text: &str) -> Result<ExchangeMatrix, ParseError> {
    let text = normalize(text);
    if text.trim_start().starts_with('{') {
        let dto: MatrixJson = serde_json::from_str(&text).map_err(|e| ParseError { line: e.line(), column: e.column(), message: e.to_string() })?;
        return dto.to_matrix().map_err(|m| error_at(&text, 0, m));
    }
    let header_end = text.find(['\n', ';']).unwrap_or(text.len());
    let header = tokens(&text, 0, header_end);
    if header.len() != 3 {
        let at = header.first().map_or(0, |t| t.0);
        return Err(error_at(&text, at, "header must be 'n p m'"));
    }
    let mut dims = [0usize; 3];
    for (slot, &(at, t)) in dims.iter_mut().zip(&header) {
        *slot = t.parse().map_err(|_| error_at(&text, at, format!("expected a dimension, found '{t}'")))?;
    }
    let [n, p, m] = dims;
    let rows = integer_rows(&text, (header_end + 1).min(text.len()))?;
    if rows.len() != m {
        return Err(error_at(&text, text.len(), format!("expected {m} rows, found {}", rows.len())));
    }
    for (at, row) in &rows {
        if row.len() != n {
            return Err(error_at(&text, *at, format!("expected {n} entries in this row, found {}", row.len())));
        }
    }
    if !(m >= p && p >= n && n >= 1) {
        return Err(error_at(&text, 0, format!("dimensions must satisfy m >= p >= n >= 1, got n={n} p={p} m={m}")));
    }
    let rows = rows.into_iter().map(|(_, r)| r).collect();
    ExchangeMatrix::new(SeedProfile::new(n, p, m), rows).map_err(|e| error_at(&text, 0, e.to_string()))
}

/// Parses the integer rows of a Cartan matrix, separated by `;` or newlines.
/// The Cartan conditions are checked by [`CartanMatrix::new`].
pub fn parse_cartan(text: &str) -> Result<Vec<Vec<i64>>, ParseError> {
    let text = normalize(text);
    let rows = integer_rows(&text, 0)?;
    let mut out = Vec::with_capacity(rows.len());
    for (at, row) in rows {
        let small = row.iter().map(|v| i64::try_from(v).map_err(|_| error_at(&text, at, "entry out of range"))).collect::<Result<Vec<_>, _>>()?;
        out.push(small);
    }
    Ok(out)
}

/// Renders an exchange matrix in the text format.
pub fn render_matrix(b: &ExchangeMatrix) -> String {
    b.to_string()
}

/// Canonical text of `p` with variable `i` printed as `names[i]`.
pub fn render_with_names(p: &LaurentPoly, names: &[String]) -> String {
    use num_traits::{One, Signed};
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        out += match (i, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let factors: Vec<String> = e
            .as_slice()
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a != 0)
            .map(|(v, &a)| if a == 1 { names[v].clone() } else { format!("{}^{a}", names[v]) })
            .collect();
        let abs = c.abs();
        match (factors.is_empty(), abs.is_one()) {
            (true, _) => out += &abs.to_string(),
            (false, true) => out += &factors.join("*"),
            (false, false) => out += &format!("{abs}*{}", factors.join("*")),
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(usize, usize),
    Var(usize, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

struct ExprParser<'a> {
    text: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: usize,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::Open),
            b')' => Some(Tok::Close),
            _ => None,
        };
        if let Some(t) = single {
            out.push((i, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Int(s, i)));
        } else if c == b'x' {
            let s = i;
            i += 1;
            let d = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if d == i {
                return Err(error_at(text, s, "expected a variable index after 'x'"));
            }
            let idx: usize = text[d..i].parse().map_err(|_| error_at(text, d, "variable index too large"))?;
            if idx == 0 {
                return Err(error_at(text, s, "variables are numbered from x1"));
            }
            out.push((s, Tok::Var(s, idx)));
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(error_at(text, i, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |t| t.0)
    }

    fn fail<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(error_at(self.text, self.offset(), message))
    }

    fn kernel<T>(&self, at: usize, r: Result<T, cluster_core::KernelError>) -> Result<T, ParseError> {
        r.map_err(|e| error_at(self.text, at, e.to_string()))
    }

    fn sum(&mut self) -> Result<RationalFn, ParseError> {
        let mut acc = self.product()?;
        while let Some(op @ (Tok::Plus | Tok::Minus)) = self.peek() {
            let at = self.offset();
            self.pos += 1;
            let mut rhs = self.product()?;
            if op == Tok::Minus {
                rhs = self.kernel(at, RationalFn::from(-LaurentPoly::one(self.nvars)).mul(&rhs))?;
            }
            acc = self.kernel(at, acc.add(&rhs))?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RationalFn, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ (Tok::Star | Tok::Slash)) = self.peek() {
            let at = self.offset();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = match op {
                Tok::Star => self.kernel(at, acc.mul(&rhs))?,
                _ => self.kernel(at, acc.div(&rhs))?,
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFn, ParseError> {
        if self.peek() == Some(Tok::Minus) {
            let at = self.offset();
            self.pos += 1;
            let v = self.unary()?;
            return self.kernel(at, RationalFn::from(-LaurentPoly::one(self.nvars)).mul(&v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFn, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        self.pos += 1;
        let negative = self.peek() == Some(Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let Some(Tok::Int(s, e)) = self.peek() else {
            return self.fail("expected an integer exponent");
        };
        let k: u32 = self.text[s..e].parse().map_err(|_| error_at(self.text, s, "exponent too large"))?;
        self.pos += 1;
        let mut out = RationalFn::from(LaurentPoly::one(self.nvars));
        for _ in 0..k {
            out = self.kernel(at, out.mul(&base))?;
        }
        if negative {
            out = self.kernel(at, RationalFn::from(LaurentPoly::one(self.nvars)).div(&out))?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<RationalFn, ParseError> {
        match self.peek() {
            Some(Tok::Int(s, e)) => {
                self.pos += 1;
                let c: BigInt = self.text[s..e].parse().expect("lexer produced digits");
                Ok(LaurentPoly::constant(self.nvars, c).into())
            }
            Some(Tok::Var(s, idx)) => {
                if idx > self.nvars {
                    return Err(error_at(self.text, s, format!("x{idx} is outside x1..x{}", self.nvars)));
                }
                self.pos += 1;
                Ok(LaurentPoly::var(self.nvars, idx - 1).into())
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(Tok::Close) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(_) => self.fail("expected a number, variable or '('"),
            None => self.fail("unexpected end of input"),
        }
    }
}

fn largest_variable(toks: &[(usize, Tok)]) -> usize {
    toks.iter().filter_map(|t| if let Tok::Var(_, i) = t.1 { Some(i) } else { None }).max().unwrap_or(0)
}

/// Parses a rational expression in `x1..x{nvars}`; with `None` the ring is
/// sized by the largest variable that occurs (at least one variable).
pub fn parse_rational(text: &str, nvars: Option<usize>) -> Result<RationalFn, ParseError> {
    let text = normalize(text);
    let toks = lex(&text)?;
    let nvars = nvars.unwrap_or_else(|| largest_variable(&toks).max(1));
    let mut p = ExprParser { text: &text, toks, pos: 0, nvars };
    if p.toks.is_empty() {
        return p.fail("empty expression");
    }
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(v)
}

/// Parses a Laurent polynomial; denominators must be monomials.
pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<LaurentPoly, ParseError> {
    let r = parse_rational(text, nvars)?;
    r.to_laurent().ok_or_else(|| ParseError { line: 1, column: 1, message: format!("'{r}' is not a Laurent polynomial") })
}

/// Parses a comma-separated list of one-based mutation directions.
pub fn parse_word(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let t = part.trim();
        if !t.is_empty() {
            let k: usize = t.parse().map_err(|_| error_at(text, offset, format!("expected a direction, found '{t}'")))?;
            if k == 0 {
                return Err(error_at(text, offset, "directions are numbered from 1"));
            }
            out.push(k);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}
