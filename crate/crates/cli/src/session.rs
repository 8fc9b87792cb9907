//! Session language: lexer, parser and AST.
//!
//! The language is line-oriented with `;` terminators.  Products need an
//! explicit `*` (juxtaposition is not accepted), exponents use `^` with a
//! nonnegative integer, and coefficients are integers or fractions like
//! `-91/95`.  Parse errors carry line and column plus an expected-token hint.

use khovanskii::Rat;
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Nat(u64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Equals,
    Caret,
    Star,
    Plus,
    Minus,
    Slash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Nat(n) => write!(f, "number `{n}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Slash => write!(f, "`/`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                // Comment to end of line.
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '[' | ']' | '(' | ')' | ',' | ';' | '=' | '^' | '*' | '+' | '-' | '/' => {
                chars.next();
                col += 1;
                let tok = match c {
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '=' => Tok::Equals,
                    '^' => Tok::Caret,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '/' => Tok::Slash,
                    _ => unreachable!(),
                };
                out.push((tok, pos));
            }
            c if c.is_ascii_digit() => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(v as u64))
                            .ok_or_else(|| ParseError {
                                pos,
                                message: "number literal too large".into(),
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Nat(n), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            }
            other => {
                return Err(ParseError {
                    pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// Polynomial expression tree.
#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Number(Rat),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, PartialEq, Debug)]
pub enum OrderSpec {
    Builtin(String),
    Weight { rows: Vec<Vec<Rat>>, tiebreak: String },
    Valuation { table: String, tiebreak: String },
}

/// One command invocation: verb, positional arguments, optional binding.
#[derive(Clone, PartialEq, Debug)]
pub struct CommandStmt {
    pub verb: String,
    pub args: Vec<Arg>,
    pub bind: Option<String>,
    pub pos: Pos,
}

#[derive(Clone, PartialEq, Debug)]
pub enum Arg {
    Name(String),
    NameList(Vec<String>),
    Matrix(Vec<Vec<Rat>>),
    /// `bound <n>` or `w <matrix>` style keyword argument.
    Keyword(String, Box<Arg>),
    Nat(u64),
}

#[derive(Clone, PartialEq, Debug)]
pub enum Stmt {
    Ring { name: String, vars: Vec<String>, pos: Pos },
    Order { name: String, spec: OrderSpec, pos: Pos },
    Poly { name: String, expr: Expr, pos: Pos },
    Ideal { name: String, polys: Vec<String>, pos: Pos },
    Valuation {
        name: String,
        matrix: Vec<Vec<Rat>>,
        value_order: Vec<Vec<Rat>>,
        degrees: Option<Vec<u32>>,
        pos: Pos,
    },
    Grading { name: String, degrees: Vec<u32>, pos: Pos },
    Command(CommandStmt),
}

/// The statement list of a session file.
#[derive(Clone, PartialEq, Debug)]
pub struct Session {
    pub statements: Vec<Stmt>,
}

pub const COMMAND_VERBS: &[&str] = &[
    "groebner",
    "kernel",
    "normalform",
    "subduct",
    "sagbi-vars",
    "toric-lattice",
    "mu",
    "certificate",
    "nobody-direct",
    "nobody-alg1",
    "affine-check",
];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Pos)> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> Pos {
        self.toks
            .get(self.at)
            .map(|(_, p)| *p)
            .unwrap_or_else(|| {
                self.toks.last().map(|(_, p)| *p).unwrap_or(Pos { line: 1, col: 1 })
            })
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos(), message: message.into() }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some((t, _)) if t == tok => {
                self.at += 1;
                Ok(())
            }
            Some((t, _)) => Err(self.err(format!("expected {tok}, found {t}"))),
            None => Err(self.err(format!("expected {tok}, found end of input"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some((Tok::Ident(s), _)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            Some((t, _)) => Err(self.err(format!("expected {what}, found {t}"))),
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn nat(&mut self, what: &str) -> Result<u64, ParseError> {
        match self.peek() {
            Some((Tok::Nat(n), _)) => {
                let n = *n;
                self.at += 1;
                Ok(n)
            }
            Some((t, _)) => Err(self.err(format!("expected {what}, found {t}"))),
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    /// Signed integer or fraction.
    fn number(&mut self) -> Result<Rat, ParseError> {
        let negative = matches!(self.peek(), Some((Tok::Minus, _)));
        if negative {
            self.at += 1;
        }
        let numer = self.nat("number")? as i64;
        let mut value = Rat::from(BigInt::from(numer));
        if matches!(self.peek(), Some((Tok::Slash, _))) {
            self.at += 1;
            let denom = self.nat("denominator")?;
            if denom == 0 {
                return Err(self.err("zero denominator"));
            }
            value /= Rat::from(BigInt::from(denom));
        }
        if negative {
            value = -value;
        }
        Ok(value)
    }

    fn vector(&mut self) -> Result<Vec<Rat>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut out = vec![self.number()?];
        while matches!(self.peek(), Some((Tok::Comma, _))) {
            self.at += 1;
            out.push(self.number()?);
        }
        self.expect(&Tok::RBracket)?;
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Rat>>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut rows = vec![self.row()?];
        while matches!(self.peek(), Some((Tok::Comma, _))) {
            self.at += 1;
            rows.push(self.row()?);
        }
        self.expect(&Tok::RBracket)?;
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return Err(self.err("ragged matrix rows"));
        }
        Ok(rows)
    }

    fn row(&mut self) -> Result<Vec<Rat>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut out = vec![self.number()?];
        while matches!(self.peek(), Some((Tok::Comma, _))) {
            self.at += 1;
            out.push(self.number()?);
        }
        self.expect(&Tok::RBracket)?;
        Ok(out)
    }

    fn nat_vector(&mut self) -> Result<Vec<u32>, ParseError> {
        let v = self.vector()?;
        let mut out = Vec::with_capacity(v.len());
        for x in v {
            if !x.is_integer() || x < Rat::from(BigInt::from(0)) {
                return Err(self.err("expected a vector of nonnegative integers"));
            }
            let (_, digits) = x.to_integer().to_u32_digits();
            out.push(*digits.first().unwrap_or(&0));
        }
        Ok(out)
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some((Tok::Minus, _)) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some((Tok::Star, _)) => {
                    self.at += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some((Tok::Slash, _)) => {
                    self.at += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // factor := ['-'] base ('^' NAT)?
    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some((Tok::Minus, _))) {
            self.at += 1;
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.base()?;
        if matches!(self.peek(), Some((Tok::Caret, _))) {
            self.at += 1;
            match self.peek() {
                Some((Tok::Nat(n), _)) => {
                    let n = *n;
                    if n > u32::MAX as u64 {
                        return Err(self.err("exponent too large"));
                    }
                    self.at += 1;
                    return Ok(Expr::Pow(Box::new(base), n as u32));
                }
                Some((t, _)) => {
                    return Err(self.err(format!(
                        "expected a nonnegative integer exponent after `^`, found {t}"
                    )))
                }
                None => return Err(self.err("expected exponent after `^`")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some((Tok::Nat(_), _)) => Ok(Expr::Number(self.number()?)),
            Some((Tok::Ident(s), _)) => {
                let s = s.clone();
                self.at += 1;
                Ok(Expr::Var(s))
            }
            Some((Tok::LParen, _)) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some((t, _)) => Err(self.err(format!("expected a polynomial factor, found {t}"))),
            None => Err(self.err("expected a polynomial factor, found end of input")),
        }
    }

    fn name_list(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut names = vec![self.ident("name")?];
        while matches!(self.peek(), Some((Tok::Comma, _))) {
            self.at += 1;
            names.push(self.ident("name")?);
        }
        self.expect(&Tok::RBracket)?;
        Ok(names)
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let pos = self.pos();
        let mut head = self.ident("statement keyword or command")?;
        // Hyphenated command verbs lex as ident/minus/ident; stitch them back
        // together while they extend toward a known verb.
        while COMMAND_VERBS.iter().any(|v| v.starts_with(&format!("{head}-"))) {
            let (Some((Tok::Minus, _)), Some((Tok::Ident(next), _))) =
                (self.toks.get(self.at), self.toks.get(self.at + 1))
            else {
                break;
            };
            head = format!("{head}-{next}");
            self.at += 2;
        }
        let stmt = match head.as_str() {
            "ring" => {
                let name = self.ident("ring name")?;
                let vars_kw = self.ident("`vars`")?;
                if vars_kw != "vars" {
                    return Err(self.err(format!("expected `vars`, found `{vars_kw}`")));
                }
                let mut vars = vec![self.ident("variable name")?];
                while let Some((Tok::Ident(_), _)) = self.peek() {
                    vars.push(self.ident("variable name")?);
                }
                Stmt::Ring { name, vars, pos }
            }
            "order" => {
                let name = self.ident("order name")?;
                let kind = self.ident("order kind")?;
                let spec = match kind.as_str() {
                    "lex" | "grlex" | "grevlex" => OrderSpec::Builtin(kind),
                    "weight" => {
                        let rows = self.matrix()?;
                        let kw = self.ident("`tiebreak`")?;
                        if kw != "tiebreak" {
                            return Err(self.err(format!("expected `tiebreak`, found `{kw}`")));
                        }
                        let tiebreak = self.ident("tiebreak order name")?;
                        OrderSpec::Weight { rows, tiebreak }
                    }
                    "valuation" => {
                        let table = self.ident("valuation name")?;
                        let kw = self.ident("`tiebreak`")?;
                        if kw != "tiebreak" {
                            return Err(self.err(format!("expected `tiebreak`, found `{kw}`")));
                        }
                        let tiebreak = self.ident("tiebreak order name")?;
                        OrderSpec::Valuation { table, tiebreak }
                    }
                    other => {
                        return Err(self.err(format!(
                            "expected one of lex/grlex/grevlex/weight/valuation, found `{other}`"
                        )))
                    }
                };
                Stmt::Order { name, spec, pos }
            }
            "poly" => {
                let name = self.ident("polynomial name")?;
                self.expect(&Tok::Equals)?;
                let expr = self.expr()?;
                Stmt::Poly { name, expr, pos }
            }
            "ideal" => {
                let name = self.ident("ideal name")?;
                self.expect(&Tok::Equals)?;
                let polys = self.name_list()?;
                Stmt::Ideal { name, polys, pos }
            }
            "valuation" => {
                let name = self.ident("valuation name")?;
                let kw = self.ident("`matrix`")?;
                if kw != "matrix" {
                    return Err(self.err(format!("expected `matrix`, found `{kw}`")));
                }
                let matrix = self.matrix()?;
                let kw = self.ident("`valueorder`")?;
                if kw != "valueorder" {
                    return Err(self.err(format!("expected `valueorder`, found `{kw}`")));
                }
                let value_order = self.matrix()?;
                let degrees = if matches!(self.peek(), Some((Tok::Ident(s), _)) if s == "degrees")
                {
                    self.at += 1;
                    Some(self.nat_vector()?)
                } else {
                    None
                };
                Stmt::Valuation { name, matrix, value_order, degrees, pos }
            }
            "grading" => {
                let name = self.ident("grading name")?;
                let degrees = self.nat_vector()?;
                Stmt::Grading { name, degrees, pos }
            }
            verb if COMMAND_VERBS.contains(&verb) => {
                let mut args = Vec::new();
                let mut bind = None;
                loop {
                    match self.peek() {
                        Some((Tok::Semi, _)) | None => break,
                        Some((Tok::Ident(s), _)) if s == "as" => {
                            self.at += 1;
                            bind = Some(self.ident("binding name")?);
                            break;
                        }
                        Some((Tok::Ident(s), _)) if s == "bound" || s == "w" => {
                            let kw = s.clone();
                            self.at += 1;
                            let arg = if kw == "bound" {
                                Arg::Nat(self.nat("bound value")?)
                            } else {
                                Arg::Matrix(self.matrix()?)
                            };
                            args.push(Arg::Keyword(kw, Box::new(arg)));
                        }
                        Some((Tok::Ident(_), _)) => {
                            args.push(Arg::Name(self.ident("argument")?));
                        }
                        Some((Tok::LBracket, _)) => {
                            // Either a name list or a matrix; decide by the
                            // second token.
                            let ahead = self.toks.get(self.at + 1).map(|(t, _)| t.clone());
                            match ahead {
                                Some(Tok::LBracket) => args.push(Arg::Matrix(self.matrix()?)),
                                _ => args.push(Arg::NameList(self.name_list()?)),
                            }
                        }
                        Some((t, _)) => {
                            let t = t.clone();
                            return Err(self.err(format!("unexpected {t} in command arguments")));
                        }
                    }
                }
                Stmt::Command(CommandStmt { verb: verb.to_string(), args, bind, pos })
            }
            other => {
                return Err(ParseError {
                    pos,
                    message: format!(
                        "unknown statement `{other}`; expected ring/order/poly/ideal/valuation/grading or a command"
                    ),
                })
            }
        };
        self.expect(&Tok::Semi)?;
        Ok(stmt)
    }
}

/// Parse a whole session file.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0 };
    let mut statements = Vec::new();
    while parser.peek().is_some() {
        statements.push(parser.statement()?);
    }
    Ok(Session { statements })
}
