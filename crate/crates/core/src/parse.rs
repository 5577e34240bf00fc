//! Session files and the expression grammar.
//!
//! A session declares the ring, the variables, optional weights, the
//! derivation images and optional query lines:
//!
//! ```text
//! ring Q[t]
//! vars x y z
//! weights 1 1 1
//! D x = -2 t^2 x y
//! degd z
//! ```
//!
//! Expressions use `+ - * ^` with juxtaposition as multiplication and
//! literal nonnegative integer exponents; `3/2` is a rational literal.
//! A parameter name (usually d) can be substituted by an integer before
//! parsing, and parenthesized constant exponents like `^(d+1)` fold to
//! literals during that pass.

use num::traits::{Signed, ToPrimitive, Zero};

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::poly::{Poly, WeightVec};
use crate::ring::{Rat, RingElem, RingId};

/// Token with its source position (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Tok {
    pub kind: TokKind,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokKind {
    Ident(String),
    Num(Rat),
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::Ident(s) => format!("identifier `{}`", s),
            TokKind::Num(r) => format!("number `{}`", r),
            TokKind::Plus => "`+`".into(),
            TokKind::Minus => "`-`".into(),
            TokKind::Star => "`*`".into(),
            TokKind::Caret => "`^`".into(),
            TokKind::Eq => "`=`".into(),
            TokKind::LParen => "`(`".into(),
            TokKind::RParen => "`)`".into(),
            TokKind::LBracket => "`[`".into(),
            TokKind::RBracket => "`]`".into(),
        }
    }
}

fn syntax_error(line: usize, col: usize, expected: &str, found: Option<&Tok>) -> Error {
    let found = match found {
        Some(t) => t.kind.describe(),
        None => "end of line".into(),
    };
    Error::Invalid(format!(
        "{}:{}: expected {}, found {}",
        line, col, expected, found
    ))
}

/// Tokenize one line; the line number is for positions only.
pub fn lex_line(text: &str, line: usize) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
            }
            '#' => break,
            '+' => {
                out.push(Tok {
                    kind: TokKind::Plus,
                    line,
                    col,
                });
                i += 1;
            }
            '-' => {
                out.push(Tok {
                    kind: TokKind::Minus,
                    line,
                    col,
                });
                i += 1;
            }
            '*' => {
                out.push(Tok {
                    kind: TokKind::Star,
                    line,
                    col,
                });
                i += 1;
            }
            '^' => {
                out.push(Tok {
                    kind: TokKind::Caret,
                    line,
                    col,
                });
                i += 1;
            }
            '=' => {
                out.push(Tok {
                    kind: TokKind::Eq,
                    line,
                    col,
                });
                i += 1;
            }
            '(' => {
                out.push(Tok {
                    kind: TokKind::LParen,
                    line,
                    col,
                });
                i += 1;
            }
            ')' => {
                out.push(Tok {
                    kind: TokKind::RParen,
                    line,
                    col,
                });
                i += 1;
            }
            '[' => {
                out.push(Tok {
                    kind: TokKind::LBracket,
                    line,
                    col,
                });
                i += 1;
            }
            ']' => {
                out.push(Tok {
                    kind: TokKind::RBracket,
                    line,
                    col,
                });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: String = chars[start..i].iter().collect();
                // Contiguous `a/b` is a rational literal.
                let mut value: Rat = numer.parse::<num::BigInt>().unwrap().into();
                if i < chars.len() && chars[i] == '/' {
                    let dstart = i + 1;
                    let mut j = dstart;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(Error::Invalid(format!(
                            "{}:{}: expected digits after `/`",
                            line,
                            i + 2
                        )));
                    }
                    let denom: String = chars[dstart..j].iter().collect();
                    let d: num::BigInt = denom.parse().unwrap();
                    if d.is_zero() {
                        return Err(Error::Invalid(format!(
                            "{}:{}: zero denominator",
                            line,
                            dstart + 1
                        )));
                    }
                    value = Rat::new(value.numer().clone(), d);
                    i = j;
                }
                out.push(Tok {
                    kind: TokKind::Num(value),
                    line,
                    col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Tok {
                    kind: TokKind::Ident(word),
                    line,
                    col,
                });
            }
            other => {
                return Err(Error::Invalid(format!(
                    "{}:{}: unexpected character `{}`",
                    line, col, other
                )))
            }
        }
    }
    Ok(out)
}

/// Substitute an integer for a parameter identifier and fold constant
/// parenthesized exponents such as `^(d+1)` into literals.
pub fn substitute_parameter(tokens: Vec<Tok>, name: &str, value: i64) -> Result<Vec<Tok>> {
    let substituted: Vec<Tok> = tokens
        .into_iter()
        .map(|t| match &t.kind {
            TokKind::Ident(s) if s == name => Tok {
                kind: TokKind::Num(crate::ring::rat(value)),
                line: t.line,
                col: t.col,
            },
            _ => t,
        })
        .collect();
    fold_exponents(substituted)
}

/// Replace `^ ( const-expr )` groups by `^ literal`.
fn fold_exponents(tokens: Vec<Tok>) -> Result<Vec<Tok>> {
    let mut out: Vec<Tok> = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        if matches!(t.kind, TokKind::Caret)
            && matches!(tokens.get(i + 1).map(|t| &t.kind), Some(TokKind::LParen))
        {
            let mut depth = 0;
            let mut j = i + 1;
            let close = loop {
                match tokens.get(j).map(|t| &t.kind) {
                    Some(TokKind::LParen) => depth += 1,
                    Some(TokKind::RParen) => {
                        depth -= 1;
                        if depth == 0 {
                            break j;
                        }
                    }
                    Some(_) => {}
                    None => {
                        return Err(syntax_error(t.line, t.col, "closing `)`", None));
                    }
                }
                j += 1;
            };
            let inner = &tokens[i + 2..close];
            let value = eval_const(inner, t.line, t.col)?;
            if value.is_negative() || !value.denom().is_one() {
                return Err(Error::Invalid(format!(
                    "{}:{}: exponent must fold to a nonnegative integer, got {}",
                    t.line, t.col, value
                )));
            }
            out.push(t.clone());
            out.push(Tok {
                kind: TokKind::Num(value),
                line: t.line,
                col: t.col,
            });
            i = close + 1;
        } else {
            out.push(t.clone());
            i += 1;
        }
    }
    Ok(out)
}

use num::One;

/// Constant folding over + - * and parentheses.
fn eval_const(tokens: &[Tok], line: usize, col: usize) -> Result<Rat> {
    struct P<'a> {
        toks: &'a [Tok],
        pos: usize,
        line: usize,
        col: usize,
    }
    impl<'a> P<'a> {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }
        fn expr(&mut self) -> Result<Rat> {
            let mut acc = if matches!(self.peek().map(|t| &t.kind), Some(TokKind::Minus)) {
                self.pos += 1;
                -self.term()?
            } else {
                self.term()?
            };
            loop {
                match self.peek().map(|t| &t.kind) {
                    Some(TokKind::Plus) => {
                        self.pos += 1;
                        acc += self.term()?;
                    }
                    Some(TokKind::Minus) => {
                        self.pos += 1;
                        acc -= self.term()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }
        fn term(&mut self) -> Result<Rat> {
            let mut acc = self.atom()?;
            loop {
                match self.peek().map(|t| &t.kind) {
                    Some(TokKind::Star) => {
                        self.pos += 1;
                        acc *= self.atom()?;
                    }
                    Some(TokKind::Num(_)) | Some(TokKind::LParen) => {
                        acc *= self.atom()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }
        fn atom(&mut self) -> Result<Rat> {
            match self.peek().cloned() {
                Some(Tok {
                    kind: TokKind::Num(r),
                    ..
                }) => {
                    self.pos += 1;
                    Ok(r)
                }
                Some(Tok {
                    kind: TokKind::LParen,
                    ..
                }) => {
                    self.pos += 1;
                    let v = self.expr()?;
                    match self.peek().map(|t| &t.kind) {
                        Some(TokKind::RParen) => {
                            self.pos += 1;
                            Ok(v)
                        }
                        _ => Err(Error::Invalid(format!(
                            "{}:{}: expected `)` in constant exponent",
                            self.line, self.col
                        ))),
                    }
                }
                other => Err(Error::Invalid(format!(
                    "{}:{}: exponent is not constant (found {})",
                    self.line,
                    self.col,
                    other
                        .map(|t| t.kind.describe())
                        .unwrap_or_else(|| "end".into())
                ))),
            }
        }
    }
    let mut p = P {
        toks: tokens,
        pos: 0,
        line,
        col,
    };
    let v = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::Invalid(format!(
            "{}:{}: trailing tokens in constant exponent",
            line, col
        )));
    }
    Ok(v)
}

/// Expression tree; `Var` indexes the session variables and `Sym` names
/// a coefficient symbol of the ring.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rat),
    Sym(String),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct ExprParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    ring: RingId,
    vars: &'a [String],
    line: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn starts_base(&self) -> bool {
        matches!(
            self.peek().map(|t| &t.kind),
            Some(TokKind::Num(_)) | Some(TokKind::Ident(_)) | Some(TokKind::LParen)
        )
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if matches!(self.peek().map(|t| &t.kind), Some(TokKind::Minus)) {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokKind::Plus) => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(TokKind::Minus) => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek().map(|t| &t.kind), Some(TokKind::Star)) {
                self.pos += 1;
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.starts_base() {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokKind::Caret)) {
            let caret = self.peek().unwrap().clone();
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok {
                    kind: TokKind::Num(r),
                    line,
                    col,
                }) => {
                    self.pos += 1;
                    if r.is_negative() || !r.denom().is_one() {
                        return Err(Error::Invalid(format!(
                            "{}:{}: exponent must be a nonnegative integer literal",
                            line, col
                        )));
                    }
                    let e = r.numer().to_u32().ok_or_else(|| {
                        Error::Invalid(format!("{}:{}: exponent too large", line, col))
                    })?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                other => Err(syntax_error(
                    caret.line,
                    caret.col + 1,
                    "a nonnegative integer exponent",
                    other.as_ref(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok {
                kind: TokKind::Num(r),
                ..
            }) => {
                self.pos += 1;
                Ok(Expr::Num(r))
            }
            Some(Tok {
                kind: TokKind::Ident(name),
                line,
                col,
            }) => {
                self.pos += 1;
                if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    Ok(Expr::Var(idx))
                } else if self.ring.symbols().contains(&name.as_str()) {
                    Ok(Expr::Sym(name))
                } else {
                    Err(Error::Invalid(format!(
                        "{}:{}: undeclared identifier `{}`",
                        line, col, name
                    )))
                }
            }
            Some(Tok {
                kind: TokKind::LParen,
                line,
                col,
            }) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek().map(|t| &t.kind) {
                    Some(TokKind::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(syntax_error(line, col, "closing `)`", self.peek())),
                }
            }
            other => Err(syntax_error(
                self.line,
                other.as_ref().map(|t| t.col).unwrap_or(1),
                "a number, identifier or `(`",
                other.as_ref(),
            )),
        }
    }
}

/// Parse an expression from tokens against a ring and variable list.
pub fn parse_expr_tokens(toks: &[Tok], ring: RingId, vars: &[String], line: usize) -> Result<Expr> {
    let mut p = ExprParser {
        toks,
        pos: 0,
        ring,
        vars,
        line,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        let t = &toks[p.pos];
        return Err(syntax_error(t.line, t.col, "end of expression", Some(t)));
    }
    Ok(e)
}

/// Lower an expression to a canonical polynomial.
pub fn lower(expr: &Expr, ring: RingId, nvars: usize) -> Result<Poly> {
    Ok(match expr {
        Expr::Num(r) => Poly::from_rat(ring, nvars, r.clone()),
        Expr::Sym(name) => Poly::constant(
            ring,
            nvars,
            RingElem::symbol(ring, name)
                .ok_or_else(|| Error::Invalid(format!("unknown symbol `{}`", name)))?,
        ),
        Expr::Var(i) => Poly::var(ring, nvars, *i),
        Expr::Neg(e) => lower(e, ring, nvars)?.neg(),
        Expr::Add(a, b) => lower(a, ring, nvars)?.add(&lower(b, ring, nvars)?)?,
        Expr::Sub(a, b) => lower(a, ring, nvars)?.sub(&lower(b, ring, nvars)?)?,
        Expr::Mul(a, b) => lower(a, ring, nvars)?.mul(&lower(b, ring, nvars)?)?,
        Expr::Pow(e, n) => lower(e, ring, nvars)?.pow(*n)?,
    })
}

/// A raw query line kept for the command layer.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryLine {
    pub line: usize,
    pub text: String,
}

/// Parsed session: ring, variables, weights, derivation images and
/// query lines.
#[derive(Debug, Clone)]
pub struct SessionSpec {
    pub ring: RingId,
    pub vars: Vec<String>,
    pub weights: WeightVec,
    pub images: Vec<Option<Poly>>,
    pub queries: Vec<QueryLine>,
}

pub const COMMAND_WORDS: &[&str] = &[
    "nilpotent",
    "degd",
    "homogeneity",
    "kernel",
    "slice",
    "jacobian",
    "filtration",
    "triple",
    "rank",
    "triangular",
    "ntr",
    "newton",
];

/// Parse a session file; `parameter` substitutes an integer for a free
/// symbol (usually d) before expressions are read.
pub fn parse_session(text: &str, parameter: Option<(&str, i64)>) -> Result<SessionSpec> {
    let mut ring: Option<RingId> = None;
    let mut vars: Vec<String> = Vec::new();
    let mut weights: Option<Vec<i64>> = None;
    let mut images: Vec<Option<Poly>> = Vec::new();
    let mut queries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let mut toks = lex_line(raw, line)?;
        if let Some((name, value)) = parameter {
            toks = substitute_parameter(toks, name, value)?;
        } else {
            toks = fold_exponents(toks)?;
        }
        if toks.is_empty() {
            continue;
        }
        let head = match &toks[0].kind {
            TokKind::Ident(s) => s.clone(),
            _ => {
                return Err(syntax_error(
                    line,
                    toks[0].col,
                    "a statement keyword",
                    Some(&toks[0]),
                ))
            }
        };
        match head.as_str() {
            "ring" => {
                let r = parse_ring_decl(&toks[1..], line)?;
                ring = Some(r);
            }
            "vars" => {
                if ring.is_none() {
                    return Err(Error::Invalid(format!(
                        "{}: `vars` before `ring` declaration",
                        line
                    )));
                }
                let r = ring.unwrap();
                vars.clear();
                for t in &toks[1..] {
                    match &t.kind {
                        TokKind::Ident(name) => {
                            if r.symbols().contains(&name.as_str()) {
                                return Err(Error::Invalid(format!(
                                    "{}:{}: `{}` is a coefficient symbol of {}",
                                    t.line, t.col, name, r
                                )));
                            }
                            if vars.contains(name) {
                                return Err(Error::Invalid(format!(
                                    "{}:{}: duplicate variable `{}`",
                                    t.line, t.col, name
                                )));
                            }
                            vars.push(name.clone());
                        }
                        _ => return Err(syntax_error(t.line, t.col, "a variable name", Some(t))),
                    }
                }
                if vars.is_empty() || vars.len() > 3 {
                    return Err(Error::Invalid(format!(
                        "{}: between 1 and 3 variables required, got {}",
                        line,
                        vars.len()
                    )));
                }
                images = vec![None; vars.len()];
            }
            "weights" => {
                let mut ws = Vec::new();
                let mut i = 1;
                while i < toks.len() {
                    let negate = if matches!(toks[i].kind, TokKind::Minus) {
                        i += 1;
                        true
                    } else {
                        false
                    };
                    match toks.get(i).map(|t| &t.kind) {
                        Some(TokKind::Num(r)) if r.denom().is_one() => {
                            let v = r.numer().to_i64().ok_or_else(|| {
                                Error::Invalid(format!("{}: weight too large", line))
                            })?;
                            ws.push(if negate { -v } else { v });
                            i += 1;
                        }
                        _ => {
                            return Err(syntax_error(
                                line,
                                toks.get(i).map(|t| t.col).unwrap_or(1),
                                "an integer weight",
                                toks.get(i),
                            ))
                        }
                    }
                }
                if ws.len() != vars.len() {
                    return Err(Error::Invalid(format!(
                        "{}: expected {} weights, got {}",
                        line,
                        vars.len(),
                        ws.len()
                    )));
                }
                weights = Some(ws);
            }
            "D" => {
                let r = ring.ok_or_else(|| {
                    Error::Invalid(format!("{}: `D` before `ring` declaration", line))
                })?;
                if vars.is_empty() {
                    return Err(Error::Invalid(format!(
                        "{}: `D` before `vars` declaration",
                        line
                    )));
                }
                let var_tok = toks
                    .get(1)
                    .ok_or_else(|| syntax_error(line, toks[0].col + 1, "a variable name", None))?;
                let var_name = match &var_tok.kind {
                    TokKind::Ident(s) => s.clone(),
                    _ => {
                        return Err(syntax_error(
                            var_tok.line,
                            var_tok.col,
                            "a variable name",
                            Some(var_tok),
                        ))
                    }
                };
                let idx = vars.iter().position(|v| *v == var_name).ok_or_else(|| {
                    Error::Invalid(format!(
                        "{}:{}: undeclared identifier `{}`",
                        var_tok.line, var_tok.col, var_name
                    ))
                })?;
                match toks.get(2).map(|t| &t.kind) {
                    Some(TokKind::Eq) => {}
                    _ => {
                        return Err(syntax_error(
                            line,
                            toks.get(2).map(|t| t.col).unwrap_or(var_tok.col + 1),
                            "`=`",
                            toks.get(2),
                        ))
                    }
                }
                let expr = parse_expr_tokens(&toks[3..], r, &vars, line)?;
                images[idx] = Some(lower(&expr, r, vars.len())?);
            }
            word if COMMAND_WORDS.contains(&word) => {
                queries.push(QueryLine {
                    line,
                    text: raw.trim().to_string(),
                });
            }
            other => {
                return Err(Error::Invalid(format!(
                    "{}:{}: unknown statement `{}`",
                    line, toks[0].col, other
                )))
            }
        }
    }
    let ring = ring.ok_or_else(|| Error::Invalid("missing `ring` declaration".into()))?;
    if vars.is_empty() {
        return Err(Error::Invalid("missing `vars` declaration".into()));
    }
    let weights = match weights {
        Some(ws) => WeightVec::new(&ws),
        None => WeightVec::new(&vec![1; vars.len()]),
    };
    Ok(SessionSpec {
        ring,
        vars,
        weights,
        images,
        queries,
    })
}

fn parse_ring_decl(toks: &[Tok], line: usize) -> Result<RingId> {
    match toks.first().map(|t| &t.kind) {
        Some(TokKind::Ident(name)) if name == "Q" => {
            if toks.len() == 1 {
                return Ok(RingId::Q);
            }
            // Q[t]
            match (
                toks.get(1).map(|t| &t.kind),
                toks.get(2).map(|t| &t.kind),
                toks.get(3).map(|t| &t.kind),
            ) {
                (Some(TokKind::LBracket), Some(TokKind::Ident(sym)), Some(TokKind::RBracket))
                    if sym == "t" && toks.len() == 4 =>
                {
                    Ok(RingId::PolyT)
                }
                _ => Err(Error::Invalid(format!(
                    "{}: ring must be Q, Q[t] or circle",
                    line
                ))),
            }
        }
        Some(TokKind::Ident(name)) if name == "circle" && toks.len() == 1 => Ok(RingId::Circle),
        _ => Err(Error::Invalid(format!(
            "{}: ring must be Q, Q[t] or circle",
            line
        ))),
    }
}

impl SessionSpec {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    /// The declared derivation; every variable needs an image.
    pub fn derivation(&self) -> Result<Derivation> {
        let mut images = Vec::with_capacity(self.vars.len());
        for (i, img) in self.images.iter().enumerate() {
            match img {
                Some(p) => images.push(p.clone()),
                None => {
                    return Err(Error::Invalid(format!(
                        "no image declared for variable `{}`",
                        self.vars[i]
                    )))
                }
            }
        }
        Derivation::new(self.ring, self.vars.len(), images)
    }

    /// Parse and lower an expression in this session's scope.
    pub fn parse_poly(&self, text: &str, parameter: Option<(&str, i64)>) -> Result<Poly> {
        let mut toks = lex_line(text, 1)?;
        if let Some((name, value)) = parameter {
            toks = substitute_parameter(toks, name, value)?;
        } else {
            toks = fold_exponents(toks)?;
        }
        if toks.is_empty() {
            return Err(Error::Invalid("empty expression".into()));
        }
        let expr = parse_expr_tokens(&toks, self.ring, &self.vars, 1)?;
        lower(&expr, self.ring, self.vars.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn session_over_polyt() {
        let text = "ring Q[t]\nvars x y z\nD x = -2 t^2 x y\nD y = t (x - y)\nD z = x^2\n";
        let s = parse_session(text, None).unwrap();
        assert_eq!(s.ring, RingId::PolyT);
        assert_eq!(s.vars, vec!["x", "y", "z"]);
        let d = s.derivation().unwrap();
        assert_eq!(d.image(0).render(&["x", "y", "z"]), "-2*t^2*x*y");
    }

    #[test]
    fn parameter_substitution() {
        let text = "ring circle\nvars X Y Z\nD X = 0\nD Y = (1+w2) X^(d+1)\nD Z = -2 w1 Y X^d\n";
        let s = parse_session(text, Some(("d", 2))).unwrap();
        let d = s.derivation().unwrap();
        assert_eq!(d.image(1).degree_in(0), Some(3));
        assert_eq!(d.image(2).degree_in(0), Some(2));
    }

    #[test]
    fn undeclared_identifier_is_positioned() {
        let text = "ring Q\nvars x y\nD x = z\n";
        let err = parse_session(text, None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("3:7"), "unexpected message: {}", msg);
        assert!(msg.contains("undeclared identifier `z`"));
    }

    #[test]
    fn undeclared_lhs_variable() {
        let text = "ring Q\nvars x y\nD z = 1\n";
        let err = parse_session(text, None).unwrap_err();
        assert!(err.to_string().contains("undeclared identifier `z`"));
    }

    #[test]
    fn rational_literals_and_juxtaposition() {
        let text = "ring Q\nvars x y z\nD x = 3/2 x y\nD y = 0\nD z = 0\n";
        let s = parse_session(text, None).unwrap();
        let d = s.derivation().unwrap();
        assert_eq!(d.image(0).render(&["x", "y", "z"]), "3/2*x*y");
    }

    #[test]
    fn print_parse_fixpoint() {
        let text = "ring circle\nvars X Y Z\n";
        let s = parse_session(text, None).unwrap();
        let samples = [
            "(1-w2) (w1 Y^2 + (1+w2) X Z)",
            "X^2 - 2 Y Z + 1/3",
            "w1 w2 X - w2^3 Z^2",
        ];
        for sample in samples {
            let p1 = s.parse_poly(sample, None).unwrap();
            let printed = p1.render(&s.var_names());
            let p2 = s.parse_poly(&printed, None).unwrap();
            assert_eq!(p1, p2, "reparse changed {}", sample);
            assert_eq!(printed, p2.render(&s.var_names()));
        }
    }

    #[test]
    fn two_variable_sessions() {
        let text = "ring Q[t]\nvars u v\nD u = 0\nD v = t u\n";
        let s = parse_session(text, None).unwrap();
        assert_eq!(s.nvars(), 2);
        let d = s.derivation().unwrap();
        let v = s.parse_poly("v", None).unwrap();
        assert_eq!(d.deg_d(&v, 8).unwrap(), 1);
        let too_many = "ring Q\nvars a b c e\n";
        assert!(parse_session(too_many, None).is_err());
    }

    #[test]
    fn queries_collected() {
        let text = "ring Q\nvars x y z\nD x = 0\nD y = x\nD z = y\ndegd z\nfiltration\n";
        let s = parse_session(text, None).unwrap();
        assert_eq!(s.queries.len(), 2);
        assert_eq!(s.queries[0].text, "degd z");
    }

    #[test]
    fn weight_arity_checked() {
        let text = "ring Q\nvars x y z\nweights 1 1\n";
        let err = parse_session(text, None).unwrap_err();
        assert!(err.to_string().contains("expected 3 weights"));
    }

    #[test]
    fn exponent_folding() {
        let toks = lex_line("X^(d+1) + X^(2 d)", 1).unwrap();
        let folded = substitute_parameter(toks, "d", 3).unwrap();
        let rendered: Vec<String> = folded.iter().map(|t| t.kind.describe()).collect();
        assert!(rendered.contains(&"number `4`".to_string()));
        assert!(rendered.contains(&"number `6`".to_string()));
    }
}
