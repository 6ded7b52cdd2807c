//! Recursive-descent parser and printer for polynomials in `x0, x1, …`.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var ('^' nat)? | '(' expr ')' | '-' factor
//! coeff  := '-'? nat ('/' nat)?
//! var    := 'x' nat
//! ```
//!
//! Implicit multiplication is rejected (`x0x1` is an error), input must be ASCII.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};

/// Outcome of [`parse_poly`]. Non-homogeneous input is accepted and flagged.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub poly: MultiPoly,
    pub homogeneous: bool,
    pub degree: Option<u32>,
}

#[derive(Debug)]
enum Node {
    Const(BigRational),
    Var(usize, u16),
    Neg(Box<Node>),
    Sum(Vec<(bool, Node)>),
    Product(Vec<Node>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_var: Option<usize>,
}

impl<'a> Parser<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let col = pos - before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1) + 1;
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && matches!(self.src[self.pos], b' ' | b'\t' | b'\r' | b'\n') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn describe(&self) -> String {
        match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(&b) => format!("'{}'", b as char),
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(self.pos, format!("expected a number, found {}", self.describe())));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigInt>().expect("digit string"))
    }

    fn small_nat(&mut self, what: &str, limit: usize) -> Result<usize> {
        let start = self.pos;
        let n = self.nat()?;
        usize::try_from(n)
            .ok()
            .filter(|&v| v <= limit)
            .ok_or_else(|| self.error_at(start, format!("{what} is too large")))
    }

    fn expr(&mut self) -> Result<Node> {
        let mut parts = alloc::vec![(false, self.term()?)];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    parts.push((false, self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    parts.push((true, self.term()?));
                }
                _ => break,
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part").1
        } else {
            Node::Sum(parts)
        })
    }

    fn term(&mut self) -> Result<Node> {
        let mut factors = alloc::vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Node::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Node> {
        let node = match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let idx = self.small_nat("variable index", u16::MAX as usize - 1)?;
                self.max_var = Some(self.max_var.map_or(idx, |m| m.max(idx)));
                let mut exp = 1u16;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(self.error_at(
                            self.pos,
                            format!("exponent must be a nonnegative integer, found {}", self.describe()),
                        ));
                    }
                    exp = self.small_nat("exponent", u16::MAX as usize)? as u16;
                }
                Node::Var(idx, exp)
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error_at(
                        self.pos,
                        format!("expected ')' to close the parenthesis at column {}, found {}", self.location(open).1, self.describe()),
                    ));
                }
                self.pos += 1;
                inner
            }
            Some(b'-') => {
                self.pos += 1;
                if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    Node::Neg(Box::new(self.coeff()?))
                } else {
                    Node::Neg(Box::new(self.factor()?))
                }
            }
            Some(b) if b.is_ascii_digit() => self.coeff()?,
            _ => {
                return Err(self.error_at(
                    self.pos,
                    format!("expected a coefficient, variable or '(', found {}", self.describe()),
                ))
            }
        };
        Ok(node)
    }

    fn coeff(&mut self) -> Result<Node> {
        let num = self.nat()?;
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den = self.nat()?;
            if den.is_zero() {
                return Err(self.error_at(at, "zero denominator"));
            }
            return Ok(Node::Const(BigRational::new(num, den)));
        }
        self.pos = save;
        Ok(Node::Const(BigRational::from_integer(num)))
    }
}

fn build(node: &Node, nvars: usize) -> MultiPoly {
    match node {
        Node::Const(c) => MultiPoly::constant(nvars, c.clone()),
        Node::Var(i, e) => {
            let mut exps = alloc::vec![0u16; nvars];
            exps[*i] = *e;
            MultiPoly::monomial(Monomial::from_exponents(exps), BigRational::one())
        }
        Node::Neg(inner) => -&build(inner, nvars),
        Node::Sum(parts) => parts.iter().fold(MultiPoly::zero(nvars), |acc, (neg, n)| {
            let t = build(n, nvars);
            if *neg {
                &acc - &t
            } else {
                &acc + &t
            }
        }),
        Node::Product(fs) => fs
            .iter()
            .fold(MultiPoly::one(nvars), |acc, n| &acc * &build(n, nvars)),
    }
}

/// Parses `src`. The variable count is `declared_nvars` if given (every index
/// must then be smaller), otherwise one more than the largest index used.
pub fn parse_poly(src: &str, declared_nvars: Option<usize>) -> Result<Parsed> {
    if let Some(pos) = src.bytes().position(|b| !b.is_ascii()) {
        let p = Parser { src: src.as_bytes(), pos: 0, max_var: None };
        return Err(p.error_at(pos, "non-ASCII character"));
    }
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        max_var: None,
    };
    let node = p.expr()?;
    if p.peek().is_some() {
        let msg = match p.src[p.pos] {
            b'x' | b'(' => "implicit multiplication is not allowed, use '*'".to_string(),
            b if b.is_ascii_digit() => "implicit multiplication is not allowed, use '*'".to_string(),
            _ => format!("unexpected {}", p.describe()),
        };
        return Err(p.error_at(p.pos, msg));
    }
    let used = p.max_var.map_or(0, |m| m + 1);
    let nvars = match declared_nvars {
        Some(k) if k < used => {
            return Err(Error::Usage(format!(
                "variable x{} used but only {k} variables declared",
                used - 1
            )))
        }
        Some(k) => k,
        None => used.max(1),
    };
    let poly = build(&node, nvars);
    Ok(Parsed {
        homogeneous: poly.is_homogeneous(),
        degree: poly.total_degree(),
        poly,
    })
}

pub fn parse_poly_str(src: &str) -> Result<MultiPoly> {
    parse_poly(src, None).map(|p| p.poly)
}

fn print_monomial(m: &Monomial, out: &mut String) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&format!("x{i}"));
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
}

/// Prints in descending graded-lex order, e.g. `x0^2 - 3/2*x0*x1 + x2^2`.
pub fn print_poly(f: &MultiPoly) -> String {
    let mut out = String::new();
    for (k, (m, c)) in f.terms().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            print_monomial(m, &mut out);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Printer for polynomials in the dual variables `y0, y1, …`.
pub fn print_poly_y(f: &MultiPoly) -> String {
    print_poly(f).replace('x', "y")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_the_basic_cubic() {
        let r = parse_poly("x0*x3^2 + x1*x3*x4 + x2*x4^2", None).unwrap();
        assert_eq!(r.poly.nvars(), 5);
        assert_eq!(r.poly.num_terms(), 3);
        assert!(r.homogeneous);
        assert_eq!(r.degree, Some(3));
    }

    #[test]
    fn reads_seven_variable_cubic() {
        let r = parse_poly("x0*x4*x5 + x1*x4^2 + x2*x4*x6 + x3*x5*x6", None).unwrap();
        assert_eq!(r.poly.nvars(), 7);
        assert_eq!(r.poly.num_terms(), 4);
    }

    #[test]
    fn trailing_operator_is_an_error() {
        match parse_poly("x0 + ", None) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_implicit_products_and_unicode() {
        assert!(matches!(parse_poly("x0x1", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("2x0", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x0²", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x0^-1", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x0^1/2", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x3", Some(2)), Err(Error::Usage(_))));
    }

    #[test]
    fn errors_report_lines() {
        match parse_poly("x0 +\n  x1 *\n  * x2", None) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rationals_parentheses_and_minus() {
        let f = parse_poly_str("3/2*x0^2 - (x0 - x1)*(x0 + x1)").unwrap();
        assert_eq!(print_poly(&f), "1/2*x0^2 + x1^2");
        let g = parse_poly_str("-x0 + -2*x1").unwrap();
        assert_eq!(print_poly(&g), "-x0 - 2*x1");
        let h = parse_poly("x0 - x0", None).unwrap();
        assert_eq!(print_poly(&h.poly), "0");
    }

    #[test]
    fn non_homogeneous_is_flagged() {
        let r = parse_poly("x0^2 + x1", None).unwrap();
        assert!(!r.homogeneous);
    }

    #[test]
    fn printing_and_round_trip() {
        let f = parse_poly_str("x0^2 - x1^2").unwrap();
        assert_eq!(print_poly(&f), "x0^2 - x1^2");
        assert_eq!(print_poly(&MultiPoly::zero(3)), "0");
        let c = parse_poly_str("x0*x3^2 + x1*x3*x4 + x2*x4^2 + x4*x5*x7 + x6*x7^2").unwrap();
        let again = parse_poly(&print_poly(&c), Some(c.nvars())).unwrap().poly;
        assert_eq!(again, c);
    }
}
