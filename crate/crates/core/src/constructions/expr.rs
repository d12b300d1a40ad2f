use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;

/// A polynomial expression in generators `g_0, g_1, ...`.
///
/// The text form is prefix notation over generator names:
/// `(+ a b ...)`, `(* a b ...)`, `(- a)`, `(^ a k)`, integers and names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(usize),
    Const(BigInt),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expression parse error at byte {pos}: {message}")]
pub struct ExprParseError {
    pub pos: usize,
    pub message: String,
}

impl Expr {
    pub fn int(c: i64) -> Self {
        Expr::Const(BigInt::from(c))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Add(alloc::vec![a, Expr::Neg(Box::new(b))])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(alloc::vec![a, b])
    }

    /// `e^k`, collapsing the trivial exponents.
    pub fn pow(e: Expr, k: u32) -> Self {
        match k {
            0 => Expr::int(1),
            1 => e,
            _ => Expr::Pow(Box::new(e), k),
        }
    }

    /// Product of the factors, dropping it to a single factor or `1` when possible.
    pub fn product(mut factors: Vec<Expr>) -> Self {
        factors.retain(|f| !matches!(f, Expr::Const(c) if c.is_one()));
        match factors.len() {
            0 => Expr::int(1),
            1 => factors.pop().unwrap(),
            _ => Expr::Mul(factors),
        }
    }

    pub fn evaluate(&self, generators: &[LaurentPoly], nvars: usize) -> LaurentPoly {
        match self {
            Expr::Gen(i) => generators[*i].clone(),
            Expr::Const(c) => LaurentPoly::constant(nvars, c.clone()),
            Expr::Add(terms) => terms.iter().fold(LaurentPoly::zero(nvars), |acc, t| &acc + &t.evaluate(generators, nvars)),
            Expr::Mul(factors) => factors.iter().fold(LaurentPoly::one(nvars), |acc, t| &acc * &t.evaluate(generators, nvars)),
            Expr::Neg(e) => -e.evaluate(generators, nvars),
            Expr::Pow(e, k) => e.evaluate(generators, nvars).pow(*k),
        }
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        match self {
            Expr::Gen(i) => Some(*i),
            Expr::Const(_) => None,
            Expr::Add(v) | Expr::Mul(v) => v.iter().filter_map(Expr::max_generator).max(),
            Expr::Neg(e) | Expr::Pow(e, _) => e.max_generator(),
        }
    }

    pub fn to_prefix(&self, names: &[String]) -> String {
        let mut out = String::new();
        self.write_prefix(&mut out, names);
        out
    }

    fn write_prefix(&self, out: &mut String, names: &[String]) {
        let list = |out: &mut String, op: &str, items: &[Expr]| {
            out.push('(');
            out.push_str(op);
            for it in items {
                out.push(' ');
                it.write_prefix(out, names);
            }
            out.push(')');
        };
        match self {
            Expr::Gen(i) => out.push_str(&names[*i]),
            Expr::Const(c) => {
                let _ = write!(out, "{c}");
            }
            Expr::Add(v) => list(out, "+", v),
            Expr::Mul(v) => list(out, "*", v),
            Expr::Neg(e) => {
                out.push_str("(- ");
                e.write_prefix(out, names);
                out.push(')');
            }
            Expr::Pow(e, k) => {
                out.push_str("(^ ");
                e.write_prefix(out, names);
                let _ = write!(out, " {k})");
            }
        }
    }

    pub fn parse_prefix(text: &str, names: &[String]) -> Result<Self, ExprParseError> {
        let mut p = PrefixParser { text, pos: 0, names };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct PrefixParser<'a> {
    text: &'a str,
    pos: usize,
    names: &'a [String],
}

impl<'a> PrefixParser<'a> {
    fn error(&self, message: &str) -> ExprParseError {
        ExprParseError { pos: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn atom(&mut self) -> &'a str {
        let rest: &'a str = &self.text[self.pos..];
        let len = rest.find(|c: char| c.is_whitespace() || c == '(' || c == ')').unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn expr(&mut self) -> Result<Expr, ExprParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with('(') {
            self.pos += 1;
            self.skip_ws();
            let op_pos = self.pos;
            let op = self.atom();
            let mut args = Vec::new();
            loop {
                self.skip_ws();
                if self.text[self.pos..].starts_with(')') {
                    self.pos += 1;
                    break;
                }
                if self.pos == self.text.len() {
                    return Err(self.error("unclosed parenthesis"));
                }
                args.push(self.expr()?);
            }
            let bad = |m: &str| ExprParseError { pos: op_pos, message: m.to_string() };
            match (op, args.len()) {
                ("+", _) => Ok(Expr::Add(args)),
                ("*", _) => Ok(Expr::Mul(args)),
                ("-", 1) => Ok(Expr::Neg(Box::new(args.pop().unwrap()))),
                ("^", 2) => match args.pop().unwrap() {
                    Expr::Const(k) => {
                        let k = u32::try_from(&k).map_err(|_| bad("exponent must be a nonnegative integer"))?;
                        Ok(Expr::Pow(Box::new(args.pop().unwrap()), k))
                    }
                    _ => Err(bad("exponent must be an integer literal")),
                },
                ("-", _) => Err(bad("negation takes one argument")),
                ("^", _) => Err(bad("power takes two arguments")),
                _ => Err(bad("unknown operator")),
            }
        } else {
            let start = self.pos;
            let tok = self.atom();
            if tok.is_empty() {
                return Err(self.error("expected an expression"));
            }
            if let Ok(c) = tok.parse::<BigInt>() {
                return Ok(Expr::Const(c));
            }
            match self.names.iter().position(|n| n == tok) {
                Some(i) => Ok(Expr::Gen(i)),
                None => Err(ExprParseError { pos: start, message: alloc::format!("unknown generator '{tok}'") }),
            }
        }
    }
}

/// Sum of `c * prod g_i^{a_i}` over the given terms.
pub(crate) fn polynomial_expr(terms: impl IntoIterator<Item = (BigInt, Vec<u32>)>) -> Expr {
    let mut sum: Vec<Expr> = Vec::new();
    for (c, exps) in terms {
        if c.is_zero() {
            continue;
        }
        let mut factors: Vec<Expr> = Vec::new();
        if !c.is_one() {
            factors.push(Expr::Const(c));
        }
        for (i, &a) in exps.iter().enumerate() {
            if a > 0 {
                factors.push(Expr::pow(Expr::Gen(i), a));
            }
        }
        sum.push(Expr::product(factors));
    }
    match sum.len() {
        0 => Expr::int(0),
        1 => sum.pop().unwrap(),
        _ => Expr::Add(sum),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn names() -> Vec<String> {
        vec!["x1[0]".to_string(), "x1[1]".to_string()]
    }

    #[test]
    fn prefix_round_trip() {
        let e = Expr::sub(Expr::mul(Expr::Gen(1), Expr::Gen(0)), Expr::pow(Expr::Gen(0), 2));
        let text = e.to_prefix(&names());
        assert_eq!(text, "(+ (* x1[1] x1[0]) (- (^ x1[0] 2)))");
        assert_eq!(Expr::parse_prefix(&text, &names()).unwrap(), e);
    }

    #[test]
    fn evaluation() {
        let g = [LaurentPoly::var(2, 0), LaurentPoly::var(2, 1)];
        let e = Expr::parse_prefix("(+ 1 (* 3 x1[1]) (- x1[0]))", &names()).unwrap();
        let want = &(&LaurentPoly::one(2) + &LaurentPoly::var(2, 1).scale(&BigInt::from(3))) - &LaurentPoly::var(2, 0);
        assert_eq!(e.evaluate(&g, 2), want);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Expr::parse_prefix("(+ x1[0] y)", &names()).unwrap_err();
        assert_eq!(err.pos, 9);
        assert_eq!(Expr::parse_prefix("(^ x1[0] x1[1])", &names()).unwrap_err().pos, 1);
        assert_eq!(Expr::parse_prefix("(+ 1", &names()).unwrap_err().message, "unclosed parenthesis");
    }

    #[test]
    fn polynomial_expr_shapes() {
        let e = polynomial_expr([(BigInt::from(2), vec![1, 0]), (BigInt::from(1), vec![0, 3])]);
        assert_eq!(e.to_prefix(&names()), "(+ (* 2 x1[0]) (^ x1[1] 3))");
        assert_eq!(polynomial_expr([]), Expr::int(0));
    }
}
