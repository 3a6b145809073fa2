//! Tokenizer and recursive-descent parser for presentation files.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{Mode, Presentation};
use crate::error::{Error, Result};
use crate::exactcore::Field;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let start_col = col;
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c == '\n' {
            out.push(Token {
                tok: Tok::Newline,
                line,
                column: col,
            });
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
                col += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("digits")),
                line,
                column: start_col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[s..i].iter().collect()),
                line,
                column: start_col,
            });
            continue;
        }
        // Accept the unicode minus sign as well as ASCII.
        let sym = if c == '\u{2212}' { '-' } else { c };
        if "[],;:+-*/^()".contains(sym) {
            out.push(Token {
                tok: Tok::Sym(sym),
                line,
                column: start_col,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Syntax {
            line,
            column: col,
            message: format!("unexpected character {c:?}"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// What identifiers mean inside a polynomial expression.
struct Scope<'a> {
    field: &'a Field,
    vars: &'a [String],
    /// Whether `a` denotes the extension generator.
    generator: bool,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.err(format!("expected `{kw}`")),
        }
    }

    fn end_statement(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Sym(';') | Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.err("expected ';' or end of line"),
        }
    }

    fn expect_int(&mut self) -> Result<BigInt> {
        match self.bump() {
            Tok::Int(v) => Ok(v),
            _ => {
                self.pos -= 1;
                self.err("expected an integer")
            }
        }
    }

    // --- integer expressions, used for exponents: int | '(' intexpr ')'

    fn int_expr(&mut self) -> Result<BigInt> {
        let mut acc = self.int_term()?;
        loop {
            if self.eat_sym('+') {
                acc += self.int_term()?;
            } else if self.eat_sym('-') {
                acc -= self.int_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn int_term(&mut self) -> Result<BigInt> {
        let mut acc = self.int_atom()?;
        while self.eat_sym('*') {
            acc *= self.int_atom()?;
        }
        Ok(acc)
    }

    fn int_atom(&mut self) -> Result<BigInt> {
        if self.eat_sym('-') {
            return Ok(-self.int_atom()?);
        }
        if self.eat_sym('(') {
            let v = self.int_expr()?;
            self.expect_sym(')')?;
            return Ok(v);
        }
        self.expect_int()
    }

    fn exponent(&mut self) -> Result<u32> {
        let v = if self.eat_sym('(') {
            let v = self.int_expr()?;
            self.expect_sym(')')?;
            v
        } else {
            self.expect_int()?
        };
        if v.is_negative() {
            return self.err(format!("negative exponent {v}"));
        }
        v.to_u32()
            .filter(|&e| e <= 10_000)
            .map_or_else(|| self.err(format!("exponent {v} too large")), Ok)
    }

    // --- polynomial expressions

    fn poly_expr(&mut self, sc: &Scope) -> Result<Poly> {
        self.skip_newlines();
        let mut acc = self.poly_term(sc)?;
        loop {
            if self.eat_sym('+') {
                self.skip_newlines();
                acc = acc.add(&self.poly_term(sc)?);
            } else if self.eat_sym('-') {
                self.skip_newlines();
                acc = acc.sub(&self.poly_term(sc)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self, sc: &Scope) -> Result<Poly> {
        let mut acc = self.poly_unary(sc)?;
        loop {
            if self.eat_sym('*') {
                self.skip_newlines();
                acc = acc.mul(&self.poly_unary(sc)?);
            } else if *self.peek() == Tok::Sym('/') {
                self.bump();
                self.skip_newlines();
                let den = self.poly_unary(sc)?;
                let c = match den.terms().next() {
                    Some((m, c)) if m.is_one() && den.terms().count() == 1 => c.clone(),
                    None => return self.err("division by zero"),
                    _ => return self.err("division by a non-constant polynomial"),
                };
                let Some(inv) = sc.field.inv(&c) else {
                    return self.err("division by zero");
                };
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_unary(&mut self, sc: &Scope) -> Result<Poly> {
        if self.eat_sym('-') {
            return Ok(self.poly_unary(sc)?.neg());
        }
        if self.eat_sym('+') {
            return self.poly_unary(sc);
        }
        let base = self.poly_atom(sc)?;
        if self.eat_sym('^') {
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn poly_atom(&mut self, sc: &Scope) -> Result<Poly> {
        let n = sc.vars.len();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Poly::constant(sc.field, n, sc.field.from_bigint(&v)))
            }
            Tok::Ident(name) => {
                if let Some(i) = sc.vars.iter().position(|v| *v == name) {
                    self.bump();
                    Ok(Poly::var(sc.field, n, i))
                } else if name == "a" && sc.generator {
                    self.bump();
                    Ok(Poly::constant(sc.field, n, sc.field.generator()?))
                } else {
                    self.err(format!("unknown identifier `{name}`"))
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let p = self.poly_expr(sc)?;
                self.skip_newlines();
                self.expect_sym(')')?;
                Ok(p)
            }
            _ => self.err("expected a polynomial expression"),
        }
    }

    fn poly_list(&mut self, sc: &Scope) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        // empty list: terminator right after the colon
        if matches!(self.peek(), Tok::Sym(';') | Tok::Newline | Tok::Eof) {
            return Ok(out);
        }
        loop {
            out.push(self.poly_expr(sc)?);
            if self.eat_sym(',') {
                self.skip_newlines();
                continue;
            }
            return Ok(out);
        }
    }

    fn field(&mut self) -> Result<Field> {
        let (line, column) = self.here();
        let name = match self.bump() {
            Tok::Ident(s) => s,
            _ => {
                self.pos -= 1;
                return self.err("expected a field (Q or F_p)");
            }
        };
        if name == "Q" {
            return Ok(Field::rationals());
        }
        let Some(digits) = name.strip_prefix("F_") else {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unknown field `{name}`"),
            });
        };
        let p: u64 = digits.parse().map_err(|_| Error::Syntax {
            line,
            column,
            message: format!("malformed field `{name}`"),
        })?;
        if !crate::exactcore::is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if !self.eat_sym('^') {
            return Field::prime(p);
        }
        let m = self
            .expect_int()?
            .to_u32()
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::Field("extension degree must be a positive integer".into()))?;
        if m == 1 {
            if matches!(self.peek(), Tok::Ident(s) if s == "minpoly") {
                return self.err("minpoly given for a prime field");
            }
            return Field::prime(p);
        }
        let minpoly = if matches!(self.peek(), Tok::Ident(s) if s == "minpoly") {
            self.bump();
            let fp = Field::prime(p)?;
            let names = vec!["a".to_string()];
            let sc = Scope {
                field: &fp,
                vars: &names,
                generator: false,
            };
            let poly = self.poly_expr(&sc)?;
            let deg = poly.degree().unwrap_or(0);
            let mut coeffs = vec![0u64; deg as usize + 1];
            for (mono, c) in poly.terms() {
                coeffs[mono.degree() as usize] = fp.as_i64(c).expect("prime field") as u64;
            }
            coeffs
        } else {
            crate::exactcore::first_irreducible(p, m)
        };
        Field::extension(p, m, minpoly)
    }
}

fn ident_list(p: &mut Parser) -> Result<Vec<String>> {
    let mut vars: Vec<String> = Vec::new();
    loop {
        p.skip_newlines();
        match p.bump() {
            Tok::Ident(s) => {
                if vars.contains(&s) {
                    p.pos -= 1;
                    return p.err(format!("duplicate variable `{s}`"));
                }
                if s == "w" {
                    p.pos -= 1;
                    return p.err("`w` is reserved for family templates");
                }
                vars.push(s)
            }
            _ => {
                p.pos -= 1;
                return p.err("expected a variable name");
            }
        }
        p.skip_newlines();
        if p.eat_sym(',') {
            continue;
        }
        return Ok(vars);
    }
}

pub(super) fn parse(text: &str) -> Result<Presentation> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let skip_blank = |p: &mut Parser| {
        while matches!(p.peek(), Tok::Newline | Tok::Sym(';')) {
            p.bump();
        }
    };

    skip_blank(&mut p);
    p.expect_keyword("ring")?;
    let field = p.field()?;
    p.expect_sym('[')?;
    let vars = ident_list(&mut p)?;
    p.expect_sym(']')?;
    if field.degree() > 1 && vars.iter().any(|v| v == "a") {
        return p.err("`a` names the extension generator and cannot be a variable");
    }
    p.end_statement()?;

    skip_blank(&mut p);
    let mode = match p.peek() {
        Tok::Ident(s) if s == "local" => Mode::Local,
        Tok::Ident(s) if s == "graded" => Mode::Graded,
        _ => return p.err("expected `local` or `graded`"),
    };
    p.bump();
    p.end_statement()?;

    let sc = Scope {
        field: &field,
        vars: &vars,
        generator: field.degree() > 1,
    };
    skip_blank(&mut p);
    p.expect_keyword("ideal")?;
    p.expect_sym(':')?;
    let gens = p.poly_list(&sc)?;
    p.end_statement()?;

    skip_blank(&mut p);
    let tuple = match p.peek() {
        Tok::Ident(s) if s == "tuple" => {
            p.bump();
            p.expect_sym(':')?;
            let t = p.poly_list(&sc)?;
            p.end_statement()?;
            Some(t)
        }
        _ => None,
    };
    skip_blank(&mut p);
    if *p.peek() != Tok::Eof {
        return p.err("unexpected trailing input");
    }
    Presentation::new(field, vars, gens, mode, tuple)
}

/// Parse a single polynomial in the given variables.
pub(super) fn parse_poly(field: &Field, vars: &[String], text: &str) -> Result<Poly> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let sc = Scope {
        field,
        vars,
        generator: field.degree() > 1,
    };
    let poly = p.poly_expr(&sc)?;
    p.skip_newlines();
    if *p.peek() != Tok::Eof {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}
