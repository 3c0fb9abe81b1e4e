//! Polynomial expression parser.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! atom     := INT | INT '/' INT | IDENT | '(' expr ')'
//! exponent := INT | IDENT | '(' iexpr ')'
//! iexpr    := iterm ('+' iterm)*,  iterm := iatom ('*' iatom)*
//! ```
//!
//! Multiplication is always explicit. Identifiers in exponents are integer
//! parameters (only in templates). `U` and `V` are reserved for
//! exponential-map images and must be declared as such.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::field::FieldSpec;
use crate::poly::{Polynomial, Ring};

/// Identifiers that only exponential-map contexts may use.
pub const RESERVED: [&str; 2] = ["U", "V"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {}: {message}", pos + 1)]
pub struct ParseError {
    /// Zero-based character offset.
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Rat(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "{v}"),
            Tok::Rat(v) => write!(f, "{v}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let num: BigInt = num.parse().expect("digits");
            if i < chars.len() && chars[i] == '/' {
                let slash = i;
                i += 1;
                let dstart = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if dstart == i {
                    let what = if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '(') {
                        "division by variables or expressions is not allowed"
                    } else {
                        "malformed rational: expected digits after `/`"
                    };
                    return Err(ParseError::new(slash, what));
                }
                let den: String = chars[dstart..i].iter().collect();
                let den: BigInt = den.parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(ParseError::new(slash, "malformed rational: zero denominator"));
                }
                out.push((start, Tok::Rat(BigRational::new(num, den))));
            } else {
                out.push((start, Tok::Int(num)));
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '/' => return Err(ParseError::new(i, "division by variables or expressions is not allowed")),
            _ => return Err(ParseError::new(i, format!("unexpected character `{c}`"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// Exponent expression: nonnegative integers and integer parameters.
#[derive(Clone, Debug, PartialEq)]
enum IntExpr {
    Lit(u32),
    Param(String),
    Add(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
}

impl IntExpr {
    fn eval(&self, ints: &HashMap<String, u32>) -> Option<u32> {
        match self {
            IntExpr::Lit(v) => Some(*v),
            IntExpr::Param(p) => ints.get(p).copied(),
            IntExpr::Add(a, b) => a.eval(ints)?.checked_add(b.eval(ints)?),
            IntExpr::Mul(a, b) => a.eval(ints)?.checked_mul(b.eval(ints)?),
        }
    }

    fn params(&self, out: &mut Vec<String>) {
        match self {
            IntExpr::Lit(_) => {}
            IntExpr::Param(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            IntExpr::Add(a, b) | IntExpr::Mul(a, b) => {
                a.params(out);
                b.params(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Const(usize, BigRational),
    Var(usize),
    PolyParam(usize, String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(usize, Box<Expr>, IntExpr),
}

/// Which identifiers an expression may use.
#[derive(Clone, Debug, Default)]
pub struct Grammar {
    pub vars: Vec<String>,
    pub int_params: Vec<String>,
    pub poly_params: Vec<String>,
}

impl Grammar {
    /// Plain polynomials in the given variables. `U`/`V` must not be among them.
    pub fn polynomial(vars: &[String]) -> Result<Self, ParseError> {
        if let Some(v) = vars.iter().find(|v| RESERVED.contains(&v.as_str())) {
            return Err(ParseError::new(0, format!("`{v}` is reserved for exponential-map images")));
        }
        Ok(Grammar { vars: vars.to_vec(), ..Default::default() })
    }

    /// Exponential-map images: the given variables followed by `U`.
    pub fn expmap(vars: &[String]) -> Result<Self, ParseError> {
        let mut g = Self::polynomial(vars)?;
        g.vars.push("U".to_string());
        Ok(g)
    }
}

struct Parser<'g> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    grammar: &'g Grammar,
}

impl<'g> Parser<'g> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Int(_)) | Some(Tok::Rat(_)) => {
                    return Err(ParseError::new(
                        self.pos(),
                        "implicit multiplication is not allowed; use `*`",
                    ))
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            let caret = self.pos();
            self.bump();
            let exp = self.exponent()?;
            if let Some(Tok::Caret) = self.peek() {
                return Err(ParseError::new(self.pos(), "chained `^` is ambiguous; add parentheses"));
            }
            return Ok(Expr::Pow(caret, Box::new(base), exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some((_, Tok::Int(v))) => Ok(Expr::Const(pos, BigRational::from_integer(v))),
            Some((_, Tok::Rat(v))) => Ok(Expr::Const(pos, v)),
            Some((_, Tok::Ident(name))) => self.ident(pos, name),
            Some((_, Tok::LParen)) => {
                let e = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(e),
                    _ => Err(ParseError::new(pos, "unbalanced parenthesis")),
                }
            }
            Some((p, t)) => Err(ParseError::new(p, format!("unexpected `{t}`"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }

    fn ident(&self, pos: usize, name: String) -> Result<Expr, ParseError> {
        if let Some(i) = self.grammar.vars.iter().position(|v| *v == name) {
            return Ok(Expr::Var(i));
        }
        if self.grammar.poly_params.contains(&name) {
            return Ok(Expr::PolyParam(pos, name));
        }
        if RESERVED.contains(&name.as_str()) {
            return Err(ParseError::new(
                pos,
                format!("`{name}` is reserved for exponential-map images"),
            ));
        }
        Err(ParseError::new(pos, format!("unknown identifier `{name}`")))
    }

    fn exponent(&mut self) -> Result<IntExpr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some((_, Tok::Int(v))) => int_lit(pos, &v),
            Some((_, Tok::Ident(name))) => self.int_param(pos, name),
            Some((_, Tok::LParen)) => {
                let e = self.iexpr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(e),
                    _ => Err(ParseError::new(pos, "unbalanced parenthesis in exponent")),
                }
            }
            Some((p, Tok::Minus)) => Err(ParseError::new(p, "negative exponents are not allowed")),
            Some((p, Tok::Rat(_))) => Err(ParseError::new(p, "exponents must be nonnegative integers")),
            Some((p, t)) => Err(ParseError::new(p, format!("unexpected `{t}` in exponent"))),
            None => Err(ParseError::new(pos, "missing exponent")),
        }
    }

    fn iexpr(&mut self) -> Result<IntExpr, ParseError> {
        let mut lhs = self.iterm()?;
        while let Some(Tok::Plus) = self.peek() {
            self.bump();
            lhs = IntExpr::Add(Box::new(lhs), Box::new(self.iterm()?));
        }
        if let Some(Tok::Minus) = self.peek() {
            return Err(ParseError::new(self.pos(), "subtraction is not allowed in exponents"));
        }
        Ok(lhs)
    }

    fn iterm(&mut self) -> Result<IntExpr, ParseError> {
        let mut lhs = self.iatom()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.iatom()?));
        }
        Ok(lhs)
    }

    fn iatom(&mut self) -> Result<IntExpr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some((_, Tok::Int(v))) => int_lit(pos, &v),
            Some((_, Tok::Ident(name))) => self.int_param(pos, name),
            Some((_, Tok::LParen)) => {
                let e = self.iexpr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(e),
                    _ => Err(ParseError::new(pos, "unbalanced parenthesis in exponent")),
                }
            }
            Some((p, Tok::Minus)) => Err(ParseError::new(p, "negative exponents are not allowed")),
            Some((p, t)) => Err(ParseError::new(p, format!("unexpected `{t}` in exponent"))),
            None => Err(ParseError::new(pos, "missing exponent")),
        }
    }

    fn int_param(&self, pos: usize, name: String) -> Result<IntExpr, ParseError> {
        if self.grammar.int_params.contains(&name) {
            Ok(IntExpr::Param(name))
        } else {
            Err(ParseError::new(pos, format!("`{name}` is not an integer parameter; exponents must be integers")))
        }
    }
}

fn int_lit(pos: usize, v: &BigInt) -> Result<IntExpr, ParseError> {
    u32::try_from(v)
        .map(IntExpr::Lit)
        .map_err(|_| ParseError::new(pos, "exponent too large"))
}

/// Values for template parameters.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub ints: HashMap<String, u32>,
    pub polys: HashMap<String, Polynomial>,
}

impl Expr {
    fn eval(&self, ring: Ring, b: &Bindings) -> Result<Polynomial, ParseError> {
        Ok(match self {
            Expr::Const(pos, v) => {
                let c = ring
                    .field
                    .from_rational(v)
                    .map_err(|e| ParseError::new(*pos, format!("malformed rational `{v}`: {e}")))?;
                Polynomial::constant(ring, c)
            }
            Expr::Var(i) => Polynomial::var(ring, *i),
            Expr::PolyParam(pos, name) => {
                let p = b
                    .polys
                    .get(name)
                    .ok_or_else(|| ParseError::new(*pos, format!("parameter `{name}` is unbound")))?;
                if p.ring() != ring {
                    return Err(ParseError::new(*pos, format!("parameter `{name}` lives in the wrong ring")));
                }
                p.clone()
            }
            Expr::Add(a, c) => &a.eval(ring, b)? + &c.eval(ring, b)?,
            Expr::Sub(a, c) => &a.eval(ring, b)? - &c.eval(ring, b)?,
            Expr::Mul(a, c) => &a.eval(ring, b)? * &c.eval(ring, b)?,
            Expr::Neg(a) => -a.eval(ring, b)?,
            Expr::Pow(pos, base, e) => {
                let k = e
                    .eval(&b.ints)
                    .ok_or_else(|| ParseError::new(*pos, "exponent parameter unbound or overflowing"))?;
                base.eval(ring, b)?
                    .pow(k)
                    .map_err(|err| ParseError::new(*pos, err.to_string()))?
            }
        })
    }

    fn collect_params(&self, ints: &mut Vec<String>, polys: &mut Vec<String>) {
        match self {
            Expr::Const(..) | Expr::Var(_) => {}
            Expr::PolyParam(_, name) => {
                if !polys.contains(name) {
                    polys.push(name.clone());
                }
            }
            Expr::Add(a, c) | Expr::Sub(a, c) | Expr::Mul(a, c) => {
                a.collect_params(ints, polys);
                c.collect_params(ints, polys);
            }
            Expr::Neg(a) => a.collect_params(ints, polys),
            Expr::Pow(_, base, e) => {
                base.collect_params(ints, polys);
                e.params(ints);
            }
        }
    }
}

fn parse_expr(text: &str, grammar: &Grammar) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser { toks, at: 0, end, grammar };
    let e = p.expr()?;
    match p.bump() {
        None => Ok(e),
        Some((pos, Tok::RParen)) => Err(ParseError::new(pos, "unbalanced parenthesis")),
        Some((pos, t)) => Err(ParseError::new(pos, format!("unexpected `{t}`"))),
    }
}

/// A parsed expression together with its context.
#[derive(Clone, Debug)]
pub struct ParsedExpr {
    pub source: String,
    pub polynomial: Polynomial,
    pub field: FieldSpec,
    pub vars: Vec<String>,
}

impl ParsedExpr {
    pub fn parse(text: &str, field: FieldSpec, vars: &[String]) -> Result<Self, ParseError> {
        let polynomial = parse_polynomial(text, field, vars)?;
        Ok(ParsedExpr { source: text.to_string(), polynomial, field, vars: vars.to_vec() })
    }

    /// Canonical text; re-parsing it gives back `polynomial`.
    pub fn canonical(&self) -> String {
        self.polynomial.display_with(&self.vars).to_string()
    }
}

/// Parses a polynomial in the declared variables.
pub fn parse_polynomial(text: &str, field: FieldSpec, vars: &[String]) -> Result<Polynomial, ParseError> {
    let grammar = Grammar::polynomial(vars)?;
    parse_with(text, field, &grammar)
}

/// Parses an exponential-map image: a polynomial in the declared variables
/// and `U`, living in a ring with one extra variable.
pub fn parse_expmap_image(text: &str, field: FieldSpec, vars: &[String]) -> Result<Polynomial, ParseError> {
    let grammar = Grammar::expmap(vars)?;
    parse_with(text, field, &grammar)
}

pub fn parse_with(text: &str, field: FieldSpec, grammar: &Grammar) -> Result<Polynomial, ParseError> {
    let expr = parse_expr(text, grammar)?;
    expr.eval(Ring::new(field, grammar.vars.len()), &Bindings::default())
}

/// Splits a `;`-separated list of expressions.
pub fn split_list(text: &str) -> Vec<&str> {
    text.split(';').map(str::trim).collect()
}

/// Parses a `;`-separated list of polynomials.
pub fn parse_list(text: &str, field: FieldSpec, vars: &[String]) -> Result<Vec<Polynomial>, (usize, ParseError)> {
    split_list(text)
        .into_iter()
        .enumerate()
        .map(|(i, s)| parse_polynomial(s, field, vars).map_err(|e| (i, e)))
        .collect()
}

/// A polynomial with symbolic parameters: integer parameters in exponents
/// and polynomial parameters as atoms.
#[derive(Clone, Debug)]
pub struct Template {
    source: String,
    expr: Expr,
}

impl Template {
    pub fn parse(text: &str, grammar: &Grammar) -> Result<Self, ParseError> {
        Ok(Template { source: text.trim().to_string(), expr: parse_expr(text, grammar)? })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn instantiate(&self, ring: Ring, bindings: &Bindings) -> Result<Polynomial, ParseError> {
        self.expr.eval(ring, bindings)
    }

    /// Parameters used, as (integer params, polynomial params), in order of appearance.
    pub fn params(&self) -> (Vec<String>, Vec<String>) {
        let (mut ints, mut polys) = (Vec::new(), Vec::new());
        self.expr.collect_params(&mut ints, &mut polys);
        (ints, polys)
    }
}
