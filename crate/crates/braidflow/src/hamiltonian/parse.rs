//! Recursive-descent parser for the Hamiltonian expression language.
//!
//! ```text
//! Expr   := Term (('+' | '-') Term)*
//! Term   := Power (('*' | '/') Power)*
//! Power  := Factor ('^' UInt)?
//! Factor := Number | 't' | 'x' | 'y' | Func '(' Args ')' | '(' Expr ')'
//! Func   := sin | cos | exp | neg | bump
//! ```
//!
//! Numbers are unsigned decimal literals (use `neg(...)` or binary minus for
//! signs). `bump(s, a, b)` takes constant bounds `a < b`; constant
//! subexpressions such as `4/5` are folded at parse time.

use super::{Expr, ParseError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { v: f64, int: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num { v, .. } => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    start: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' | b',' => {
                let tok = match b {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                i += 1;
                toks.push(Spanned { tok, start, end: i });
            }
            b'0'..=b'9' => {
                let mut int = true;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    int = false;
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::BadNumber { offset: start });
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    int = false;
                    i += 1;
                    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                        i += 1;
                    }
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::BadNumber { offset: start });
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let v: f64 = text[start..i]
                    .parse()
                    .map_err(|_| ParseError::BadNumber { offset: start })?;
                if !v.is_finite() {
                    return Err(ParseError::BadNumber { offset: start });
                }
                toks.push(Spanned {
                    tok: Tok::Num { v, int },
                    start,
                    end: i,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push(Spanned {
                    tok: Tok::Ident(text[start..i].to_string()),
                    start,
                    end: i,
                });
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: start,
                    found: format!("`{}`", &text[start..start + 1]),
                    expected: "a token".into(),
                });
            }
        }
    }
    toks.push(Spanned {
        tok: Tok::Eof,
        start: bytes.len(),
        end: bytes.len(),
    });
    Ok(toks)
}

const FACTOR_EXPECTED: &str = "number, `t`, `x`, `y`, sin, cos, exp, neg, bump, or `(`";

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump_tok(&mut self) -> &Spanned {
        let s = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        s
    }

    fn expect(&mut self, want: &Tok, expected: &str) -> Result<(), ParseError> {
        if &self.peek().tok == want {
            self.bump_tok();
            Ok(())
        } else {
            Err(self.err_here(expected))
        }
    }

    fn err_here(&self, expected: &str) -> ParseError {
        let s = self.peek();
        ParseError::Syntax {
            offset: s.start,
            found: s.tok.describe(),
            expected: expected.to_string(),
        }
    }

    // Expr := Term (('+'|'-') Term)*
    fn expr(&mut self) -> Result<(Expr, usize, usize), ParseError> {
        let (mut lhs, start, mut end) = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump_tok();
                    let (rhs, _, e) = self.term()?;
                    end = e;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump_tok();
                    let (rhs, _, e) = self.term()?;
                    end = e;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok((lhs, start, end)),
            }
        }
    }

    // Term := Power (('*'|'/') Power)*
    fn term(&mut self) -> Result<(Expr, usize, usize), ParseError> {
        let (mut lhs, start, mut end) = self.power()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump_tok();
                    let (rhs, _, e) = self.power()?;
                    end = e;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.bump_tok();
                    let (rhs, _, e) = self.power()?;
                    end = e;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs), (start, e));
                }
                _ => return Ok((lhs, start, end)),
            }
        }
    }

    // Power := Factor ('^' UInt)?
    fn power(&mut self) -> Result<(Expr, usize, usize), ParseError> {
        let (base, start, mut end) = self.factor()?;
        if self.peek().tok == Tok::Caret {
            self.bump_tok();
            let s = self.peek();
            match s.tok {
                Tok::Num { v, int } if int && v >= 0.0 && v <= u32::MAX as f64 => {
                    end = s.end;
                    let n = v as u32;
                    self.bump_tok();
                    return Ok((Expr::Pow(Box::new(base), n), start, end));
                }
                _ => return Err(self.err_here("a non-negative integer exponent")),
            }
        }
        Ok((base, start, end))
    }

    fn factor(&mut self) -> Result<(Expr, usize, usize), ParseError> {
        let (tok, start, end) = {
            let s = self.peek();
            (s.tok.clone(), s.start, s.end)
        };
        match tok {
            Tok::Num { v, .. } => {
                self.bump_tok();
                Ok((Expr::Const(v), start, end))
            }
            Tok::Ident(name) => {
                self.bump_tok();
                match name.as_str() {
                    "t" => Ok((Expr::T, start, end)),
                    "x" => Ok((Expr::X, start, end)),
                    "y" => Ok((Expr::Y, start, end)),
                    "sin" | "cos" | "exp" | "neg" | "bump" => {
                        let args = self.args()?;
                        let close = self.toks[self.pos - 1].end;
                        self.call(&name, args, start, close)
                    }
                    _ => Err(ParseError::UnknownIdentifier {
                        name,
                        offset: start,
                    }),
                }
            }
            Tok::LParen => {
                self.bump_tok();
                let (inner, _, _) = self.expr()?;
                let close = self.peek().end;
                self.expect(&Tok::RParen, "`)`")?;
                Ok((inner, start, close))
            }
            _ => Err(self.err_here(FACTOR_EXPECTED)),
        }
    }

    fn args(&mut self) -> Result<Vec<(Expr, usize)>, ParseError> {
        self.expect(&Tok::LParen, "`(`")?;
        let mut out = Vec::new();
        loop {
            let (e, start, _) = self.expr()?;
            out.push((e, start));
            match self.peek().tok {
                Tok::Comma => {
                    self.bump_tok();
                }
                Tok::RParen => {
                    self.bump_tok();
                    return Ok(out);
                }
                _ => return Err(self.err_here("`,` or `)`")),
            }
        }
    }

    fn call(
        &self,
        name: &str,
        mut args: Vec<(Expr, usize)>,
        start: usize,
        _end: usize,
    ) -> Result<(Expr, usize, usize), ParseError> {
        let end = self.toks[self.pos - 1].end;
        let unary = |f: fn(Box<Expr>) -> Expr, mut args: Vec<(Expr, usize)>| {
            let (e, _) = args.remove(0);
            f(Box::new(e))
        };
        match name {
            "sin" | "cos" | "exp" | "neg" => {
                if args.len() != 1 {
                    return Err(ParseError::Arity {
                        func: name.to_string(),
                        want: 1,
                        got: args.len(),
                        offset: start,
                    });
                }
                let f = match name {
                    "sin" => Expr::Sin as fn(Box<Expr>) -> Expr,
                    "cos" => Expr::Cos,
                    "exp" => Expr::Exp,
                    _ => Expr::Neg,
                };
                Ok((unary(f, args), start, end))
            }
            "bump" => {
                if args.len() != 3 {
                    return Err(ParseError::Arity {
                        func: "bump".into(),
                        want: 3,
                        got: args.len(),
                        offset: start,
                    });
                }
                let (hi_e, hi_off) = args.pop().unwrap();
                let (lo_e, lo_off) = args.pop().unwrap();
                let (arg, _) = args.pop().unwrap();
                let lo = super::const_value(&lo_e)
                    .ok_or(ParseError::BumpNonConstant { offset: lo_off })?;
                let hi = super::const_value(&hi_e)
                    .ok_or(ParseError::BumpNonConstant { offset: hi_off })?;
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(ParseError::BumpBounds {
                        lo,
                        hi,
                        offset: start,
                    });
                }
                Ok((
                    Expr::Bump {
                        arg: Box::new(arg),
                        lo,
                        hi,
                    },
                    start,
                    end,
                ))
            }
            _ => unreachable!("call() only sees known functions"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let (expr, _, _) = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.err_here("`+`, `-`, `*`, `/`, `^`, or end of input"));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::super::{display, Expr, ParseError};
    use super::parse;

    #[test]
    fn parses_basic_shapes() {
        assert_eq!(parse("0").unwrap(), Expr::Const(0.0));
        assert_eq!(parse("x").unwrap(), Expr::X);
        let e = parse("0.5*sin(t)*bump(x^2+y^2, 4/5, 9/10)").unwrap();
        match &e {
            Expr::Mul(a, b) => {
                assert!(matches!(**a, Expr::Mul(..)));
                match &**b {
                    Expr::Bump { lo, hi, .. } => {
                        assert_eq!(*lo, 0.8);
                        assert_eq!(*hi, 0.9);
                    }
                    other => panic!("expected bump, got {other:?}"),
                }
            }
            other => panic!("expected product, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        // 1 - 2 - 3 = (1-2)-3; 2 + 3*4^2 = 2 + (3*(4^2)).
        let e = parse("1 - 2 - 3").unwrap();
        assert!(matches!(e, Expr::Sub(ref l, _) if matches!(**l, Expr::Sub(..))));
        let e = parse("2 + 3*4^2").unwrap();
        match e {
            Expr::Add(_, r) => match *r {
                Expr::Mul(_, p) => assert!(matches!(*p, Expr::Pow(_, 2))),
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_offsets_and_expected_sets() {
        match parse("x +* y") {
            Err(ParseError::Syntax {
                offset,
                found,
                expected,
            }) => {
                assert_eq!(offset, 3);
                assert_eq!(found, "`*`");
                assert!(expected.contains("number"));
                assert!(expected.contains("bump"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("foo(x)") {
            Err(ParseError::UnknownIdentifier { name, offset }) => {
                assert_eq!(name, "foo");
                assert_eq!(offset, 0);
            }
            other => panic!("{other:?}"),
        }
        match parse("bump(x, 1)") {
            Err(ParseError::Arity {
                func,
                want: 3,
                got: 2,
                ..
            }) => assert_eq!(func, "bump"),
            other => panic!("{other:?}"),
        }
        match parse("bump(x, y, 1)") {
            Err(ParseError::BumpNonConstant { offset }) => assert_eq!(offset, 8),
            other => panic!("{other:?}"),
        }
        match parse("bump(x, 2, 1)") {
            Err(ParseError::BumpBounds { lo, hi, .. }) => {
                assert_eq!((lo, hi), (2.0, 1.0));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("x ^ y"),
            Err(ParseError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(parse("x ^ 2.5"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse("1."),
            Err(ParseError::BadNumber { offset: 0 })
        ));
        assert!(matches!(parse("(x"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse(""),
            Err(ParseError::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            parse("x y"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "0.5*sin(t)*bump(x^2+y^2, 4/5, 9/10)",
            "neg(x)+y*(t-2)^3",
            "exp(x/(y+2))",
            "1-2-3",
            "(1-2)*(3/4)",
            "cos(t)^2+sin(t)^2",
        ] {
            let e = parse(text).unwrap();
            let printed = display(&e);
            let back = parse(&printed).unwrap_or_else(|err| {
                panic!("reparse of {printed:?} failed: {err}");
            });
            assert!(
                super::super::structurally_equal(&e, &back),
                "{text} -> {printed} -> mismatch"
            );
        }
    }
}
