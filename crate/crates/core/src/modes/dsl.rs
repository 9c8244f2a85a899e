//! The small language used by the bracket-table files.
//!
//! A rule reads `[A_m, B^j_n] = expr`, optionally followed by `@suspect`.
//! Expressions combine rationals, index variables, `gamma`, the central
//! element `c`, named modes written `G^k[m+s]` or `L[m+n]`, and the functions
//! `delta(a,b)`, `eps(i,j,k)`, `alphap(i,p,q)`, `alpham(i,p,q)` and
//! `sum(k=1..3, expr)`. Lines starting with `#` are provenance comments and
//! attach to the next rule.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::elem::ModeElem;
use super::named::{named_to_elem, Family, NamedMode, TableKind};
use crate::error::{Error, Result};
use crate::scalars::{Exponent, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Var(String),
    Gamma,
    Central,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(String, Vec<Expr>),
    Sum { var: String, lo: i64, hi: i64, body: Box<Expr> },
    Mode { family: Family, comp: Option<Box<Expr>>, index: Box<Expr> },
}

/// One side of a rule's left-hand bracket, e.g. `J^i_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub family: Family,
    pub comp: Option<String>,
    pub index: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub line: usize,
    pub provenance: String,
    pub left: Pattern,
    pub right: Pattern,
    pub rhs: Expr,
    pub suspect: bool,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    DotDot,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c == '.' && chars.get(i + 1) == Some(&'.') {
            out.push(Tok::DotDot);
            i += 2;
        } else if "+-*/^()[],_=".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Sym('-'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at token {} ({:?})", self.pos, self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            t => Err(Error::Parse(format!("expected a name, found {t:?}"))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.next() {
            Some(Tok::Num(n)) => {
                let v = n.to_i64().ok_or_else(|| Error::Parse("integer too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            t => Err(Error::Parse(format!("expected an integer, found {t:?}"))),
        }
    }

    fn pattern(&mut self) -> Result<Pattern> {
        let name = self.ident()?;
        let family = Family::parse(&name).ok_or_else(|| Error::Parse(format!("unknown mode family {name:?}")))?;
        let comp = if self.eat('^') { Some(self.ident()?) } else { None };
        self.expect('_')?;
        let index = self.ident()?;
        Ok(Pattern { family, comp, index })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.int()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse("negative power".into()))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Expr::Num(BigRational::from_integer(n))),
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => self.named(name),
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    fn named(&mut self, name: String) -> Result<Expr> {
        if let Some(family) = Family::parse(&name) {
            let comp = if self.eat('^') { Some(Box::new(self.atom()?)) } else { None };
            self.expect('[')?;
            let index = self.expr()?;
            self.expect(']')?;
            return Ok(Expr::Mode { family, comp, index: Box::new(index) });
        }
        match name.as_str() {
            "c" => return Ok(Expr::Central),
            "gamma" => return Ok(Expr::Gamma),
            "sum" => {
                self.expect('(')?;
                let var = self.ident()?;
                self.expect('=')?;
                let lo = self.int()?;
                if self.next() != Some(Tok::DotDot) {
                    return Err(Error::Parse("expected '..' in sum range".into()));
                }
                let hi = self.int()?;
                self.expect(',')?;
                let body = self.expr()?;
                self.expect(')')?;
                return Ok(Expr::Sum { var, lo, hi, body: Box::new(body) });
            }
            _ => {}
        }
        if self.eat('(') {
            let mut args = vec![self.expr()?];
            while self.eat(',') {
                args.push(self.expr()?);
            }
            self.expect(')')?;
            let arity = match name.as_str() {
                "delta" => 2,
                "eps" | "alphap" | "alpham" => 3,
                _ => return Err(Error::Parse(format!("unknown function {name:?}"))),
            };
            if args.len() != arity {
                return Err(Error::Parse(format!("{name} takes {arity} arguments")));
            }
            return Ok(Expr::Call(name, args));
        }
        Ok(Expr::Var(name))
    }
}

/// Parses a single rule such as `[L_m, L_n] = (m-n)*L[m+n]`.
pub fn parse_rule(src: &str) -> Result<Rule> {
    let (body, suspect) = match src.split_once('@') {
        Some((b, tag)) if tag.trim() == "suspect" => (b, true),
        Some((_, tag)) => return Err(Error::Parse(format!("unknown tag @{}", tag.trim()))),
        None => (src, false),
    };
    let mut p = Parser { toks: tokenize(body)?, pos: 0 };
    p.expect('[')?;
    let left = p.pattern()?;
    p.expect(',')?;
    let right = p.pattern()?;
    p.expect(']')?;
    p.expect('=')?;
    let rhs = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in rule {src:?}")));
    }
    Ok(Rule { line: 0, provenance: String::new(), left, right, rhs, suspect, source: body.trim().to_string() })
}

/// Parses a table file; comment lines give the provenance of the next rule.
pub fn parse_table(src: &str) -> Result<Vec<Rule>> {
    let mut rules = Vec::new();
    let mut provenance = String::new();
    for (n, raw) in src.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            provenance = c.trim().to_string();
            continue;
        }
        let mut r = parse_rule(line).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        r.line = n + 1;
        r.provenance = provenance.clone();
        rules.push(r);
    }
    Ok(rules)
}

#[derive(Clone, Debug)]
enum Val {
    Num(BigRational),
    Elem(ModeElem),
}

/// Variable bindings and the algebra the rule is read in.
pub struct Env<'a> {
    pub kind: TableKind,
    pub gamma: Option<&'a BigRational>,
    pub vars: BTreeMap<String, BigRational>,
}

fn levi_civita(i: i64, j: i64, k: i64) -> i64 {
    if [i, j, k].iter().any(|x| !(1..=3).contains(x)) {
        return 0;
    }
    (j - i) * (k - i) * (k - j) / 2
}

fn kron(a: i64, b: i64) -> i64 {
    (a == b) as i64
}

/// `α^{±i}_{pq} = ±½(δ_{ip}δ_{4q} − δ_{iq}δ_{4p}) + ½ε_{ipq}`.
pub fn alpha(sign: i64, i: i64, p: i64, q: i64) -> BigRational {
    let num = sign * (kron(i, p) * kron(4, q) - kron(i, q) * kron(4, p)) + levi_civita(i, p, q);
    BigRational::new(num.into(), 2.into())
}

fn contains_central(e: &Expr) -> bool {
    match e {
        Expr::Central => true,
        Expr::Neg(a) | Expr::Pow(a, _) => contains_central(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => contains_central(a) || contains_central(b),
        Expr::Sum { body, .. } => contains_central(body),
        _ => false,
    }
}

fn combine(x: Val, y: Val, neg: bool) -> Result<Val> {
    let negate = |v: Val| match v {
        Val::Num(q) => Val::Num(-q),
        Val::Elem(e) => Val::Elem(-&e),
    };
    let y = if neg { negate(y) } else { y };
    Ok(match (x, y) {
        (Val::Num(p), Val::Num(q)) => Val::Num(p + q),
        (Val::Elem(p), Val::Elem(q)) => Val::Elem(&p + &q),
        (Val::Num(p), v) | (v, Val::Num(p)) if p.is_zero() => v,
        (Val::Elem(x), v) | (v, Val::Elem(x)) if x.is_zero() => v,
        _ => return Err(Error::Invalid("cannot add a number and a mode".into())),
    })
}

fn as_int(q: &BigRational, what: &str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::Invalid(format!("{what} must be an integer, got {q}")));
    }
    q.to_integer().to_i64().ok_or_else(|| Error::Invalid(format!("{what} out of range")))
}

impl Env<'_> {
    fn num(&self, e: &Expr) -> Result<BigRational> {
        match self.eval(e)? {
            Val::Num(q) => Ok(q),
            Val::Elem(x) => Err(Error::Invalid(format!("expected a number, found {x}"))),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Val> {
        let central_off = !self.kind.has_central();
        Ok(match e {
            Expr::Num(q) => Val::Num(q.clone()),
            Expr::Var(v) => Val::Num(self.vars.get(v).cloned().ok_or_else(|| Error::Invalid(format!("unbound variable {v}")))?),
            Expr::Gamma => Val::Num(self.gamma.cloned().ok_or_else(|| Error::Invalid("gamma is not set".into()))?),
            Expr::Central => Val::Elem(if central_off { ModeElem::zero() } else { ModeElem::central() }),
            Expr::Neg(a) => match self.eval(a)? {
                Val::Num(q) => Val::Num(-q),
                Val::Elem(x) => Val::Elem(-&x),
            },
            Expr::Add(a, b) => combine(self.eval(a)?, self.eval(b)?, false)?,
            Expr::Sub(a, b) => combine(self.eval(a)?, self.eval(b)?, true)?,
            Expr::Mul(a, b) => {
                if central_off && (contains_central(a) || contains_central(b)) {
                    return Ok(Val::Elem(ModeElem::zero()));
                }
                match (self.eval(a)?, self.eval(b)?) {
                    (Val::Num(p), Val::Num(q)) => Val::Num(p * q),
                    (Val::Num(p), Val::Elem(x)) | (Val::Elem(x), Val::Num(p)) => Val::Elem(x.scale(&Scalar::from_rational(p))),
                    (Val::Elem(x), Val::Elem(y)) => {
                        if x.is_zero() || y.is_zero() {
                            Val::Elem(ModeElem::zero())
                        } else {
                            return Err(Error::Invalid("product of two modes".into()));
                        }
                    }
                }
            }
            Expr::Div(a, b) => {
                let d = self.num(b)?;
                if d.is_zero() {
                    return Err(Error::Invalid("division by zero".into()));
                }
                match self.eval(a)? {
                    Val::Num(p) => Val::Num(p / d),
                    Val::Elem(x) => Val::Elem(x.scale(&Scalar::from_rational(BigRational::one() / d))),
                }
            }
            Expr::Pow(a, k) => {
                let base = self.num(a)?;
                Val::Num((0..*k).fold(BigRational::one(), |acc, _| acc * &base))
            }
            Expr::Call(f, args) => {
                let v: Vec<BigRational> = args.iter().map(|a| self.num(a)).collect::<Result<_>>()?;
                let int = |i: usize| as_int(&v[i], f);
                let q = match f.as_str() {
                    "delta" => BigRational::from_integer(BigInt::from((v[0] == v[1]) as i64)),
                    "eps" => BigRational::from_integer(levi_civita(int(0)?, int(1)?, int(2)?).into()),
                    "alphap" => alpha(1, int(0)?, int(1)?, int(2)?),
                    "alpham" => alpha(-1, int(0)?, int(1)?, int(2)?),
                    _ => return Err(Error::Invalid(format!("unknown function {f}"))),
                };
                Val::Num(q)
            }
            Expr::Sum { var, lo, hi, body } => {
                let mut acc: Option<Val> = None;
                for k in *lo..=*hi {
                    let mut inner = Env { kind: self.kind, gamma: self.gamma, vars: self.vars.clone() };
                    inner.vars.insert(var.clone(), BigRational::from_integer(k.into()));
                    let v = inner.eval(body)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => combine(a, v, false)?,
                    });
                }
                acc.unwrap_or(Val::Num(BigRational::zero()))
            }
            Expr::Mode { family, comp, index } => {
                let c = match comp {
                    Some(c) => {
                        let v = as_int(&self.num(c)?, "component")?;
                        u8::try_from(v).map_err(|_| Error::Invalid(format!("component {v} out of range")))?
                    }
                    None => 0,
                };
                let k = self.num(index)?;
                let k = Exponent::new(
                    k.numer().to_i64().ok_or_else(|| Error::Invalid("index too large".into()))?,
                    k.denom().to_i64().ok_or_else(|| Error::Invalid("index too large".into()))?,
                );
                Val::Elem(named_to_elem(self.kind, &NamedMode::new(*family, c, k))?)
            }
        })
    }

    /// Evaluates a right-hand side to a mode-algebra element.
    pub fn eval_elem(&self, e: &Expr) -> Result<ModeElem> {
        match self.eval(e)? {
            Val::Elem(x) => Ok(x),
            Val::Num(q) if q.is_zero() => Ok(ModeElem::zero()),
            Val::Num(q) => Err(Error::Invalid(format!("right-hand side is the number {q}, not an element"))),
        }
    }
}

/// Output dialect of [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) | Expr::Sum { .. } => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(q) if q.is_negative() => 3,
        _ => 5,
    }
}

fn is_simple_index(e: &Expr) -> bool {
    match e {
        Expr::Var(v) => v.chars().count() == 1,
        Expr::Num(q) => q.is_integer() && !q.is_negative() && q.to_integer() < BigInt::from(10),
        _ => false,
    }
}

fn minus(style: Style) -> &'static str {
    match style {
        Style::Text => "−",
        Style::Latex => "-",
    }
}

fn wrap(e: &Expr, min: u8, style: Style) -> String {
    let s = render(e, style);
    if prec(e) < min {
        match style {
            Style::Text => format!("({s})"),
            Style::Latex => format!("\\left({s}\\right)"),
        }
    } else {
        s
    }
}

fn sub_args(args: &[Expr], style: Style) -> String {
    let parts: Vec<String> = args.iter().map(|a| render(a, style)).collect();
    if args.iter().all(is_simple_index) {
        parts.concat()
    } else {
        parts.join(",")
    }
}

fn starts_with_digit(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_digit())
}

/// Renders an expression in table typography.
pub fn render(e: &Expr, style: Style) -> String {
    let m = minus(style);
    match e {
        Expr::Num(q) => {
            let s = if q.is_integer() { q.to_integer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) };
            s.replace('-', m)
        }
        Expr::Var(v) => v.clone(),
        Expr::Gamma => match style {
            Style::Text => "γ".into(),
            Style::Latex => "\\gamma".into(),
        },
        Expr::Central => "c".into(),
        Expr::Neg(a) => format!("{m}{}", wrap(a, 3, style)),
        Expr::Add(a, b) => {
            let rb = render(b, style);
            if let Some(rest) = rb.strip_prefix(m).filter(|_| prec(b) >= 3) {
                format!("{}{m}{rest}", render(a, style))
            } else {
                format!("{}+{rb}", render(a, style))
            }
        }
        Expr::Sub(a, b) => format!("{}{m}{}", render(a, style), wrap(b, 2, style)),
        Expr::Mul(a, b) => {
            let (ra, rb) = (wrap(a, 2, style), wrap(b, 3, style));
            let sep = if starts_with_digit(&rb) || (matches!(**a, Expr::Var(_)) && matches!(**b, Expr::Var(_))) {
                match style {
                    Style::Text => "·",
                    Style::Latex => "\\cdot ",
                }
            } else if style == Style::Latex && ra.ends_with(|c: char| c.is_alphabetic()) && rb.starts_with('\\') {
                " "
            } else {
                ""
            };
            format!("{ra}{sep}{rb}")
        }
        Expr::Div(a, b) => format!("{}/{}", wrap(a, 2, style), wrap(b, 3, style)),
        Expr::Pow(a, k) => format!("{}^{k}", wrap(a, 5, style)),
        Expr::Call(f, args) => {
            let idx = sub_args(args, style);
            match (f.as_str(), style) {
                ("delta", Style::Text) => format!("δ_{{{idx}}}"),
                ("delta", Style::Latex) => format!("\\delta_{{{idx}}}"),
                ("eps", Style::Text) => format!("ε_{{{idx}}}"),
                ("eps", Style::Latex) => format!("\\epsilon_{{{idx}}}"),
                ("alphap" | "alpham", _) => {
                    let sign = if f == "alphap" { "+" } else { "-" };
                    let i = render(&args[0], style);
                    let pq = sub_args(&args[1..], style);
                    let a = if style == Style::Text { "α" } else { "\\alpha" };
                    format!("{a}^{{{sign}{i}}}_{{{pq}}}")
                }
                _ => format!("{f}({})", args.iter().map(|a| render(a, style)).collect::<Vec<_>>().join(", ")),
            }
        }
        Expr::Sum { var, lo, hi, body } => match style {
            Style::Text => format!("Σ_{{{var}={lo}..{hi}}} {}", wrap(body, 2, style)),
            Style::Latex => format!("\\sum_{{{var}={lo}}}^{{{hi}}} {}", wrap(body, 2, style)),
        },
        Expr::Mode { family, comp, index } => {
            let (name, sign) = family.text_parts();
            let name = if style == Style::Latex { family.latex() } else { name };
            let sup = match comp {
                None => String::new(),
                Some(c) => {
                    let c = render(c, style);
                    if sign.is_empty() && c.chars().count() == 1 {
                        format!("^{c}")
                    } else {
                        format!("^{{{sign}{c}}}")
                    }
                }
            };
            let idx = render(index, style);
            let sub = if is_simple_index(index) { format!("_{idx}") } else { format!("_{{{idx}}}") };
            format!("{name}{sup}{sub}")
        }
    }
}

fn render_pattern(p: &Pattern, style: Style) -> String {
    let comp = p.comp.as_ref().map(|c| Box::new(Expr::Var(c.clone())));
    render(&Expr::Mode { family: p.family, comp, index: Box::new(Expr::Var(p.index.clone())) }, style)
}

impl Rule {
    /// The rule in table typography, e.g. `[J^i_r, Φ_n] = −G^i_{r+n}`.
    pub fn render(&self, style: Style) -> String {
        let (l, r) = (render_pattern(&self.left, style), render_pattern(&self.right, style));
        format!("[{l}, {r}] = {}", render(&self.rhs, style))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let r = parse_rule("[J^i_r, Phi_n] = -G^i[r+n]").unwrap();
        assert_eq!(r.render(Style::Text), "[J^i_r, Φ_n] = −G^i_{r+n}");
        let r = parse_rule("[L_m, L_n] = (m-n)*L[m+n] + delta(m,-n)*(m^3-m)/12*c").unwrap();
        assert_eq!(r.render(Style::Text), "[L_m, L_n] = (m−n)L_{m+n}+δ_{m,−n}(m^3−m)/12c");
        let r = parse_rule("[Tp^i_m, G^p_s] = sum(q=1..4, alphap(i,p,q)*(G^q[m+s] - m*Q^q[m+s])) @suspect").unwrap();
        assert!(r.suspect);
        assert_eq!(r.left.family, Family::TPlus);
        assert!(parse_rule("[L_m, L_n] = foo(m)").is_err());
        assert!(parse_rule("[L_m L_n] = 0").is_err());
    }

    #[test]
    fn alpha_values() {
        // α^{+1}_{14} = ½, α^{-1}_{14} = −½, α^{±1}_{23} = ½.
        assert_eq!(alpha(1, 1, 1, 4), BigRational::new(1.into(), 2.into()));
        assert_eq!(alpha(-1, 1, 1, 4), BigRational::new((-1).into(), 2.into()));
        assert_eq!(alpha(1, 1, 2, 3), BigRational::new(1.into(), 2.into()));
        assert_eq!(alpha(-1, 1, 2, 3), BigRational::new(1.into(), 2.into()));
        assert_eq!(alpha(1, 2, 4, 4), BigRational::zero());
    }

    #[test]
    fn evaluation() {
        let r = parse_rule("[U_r, G^i_s] = r*Q^i[r+s]").unwrap();
        let mut vars = BTreeMap::new();
        vars.insert("r".to_string(), BigRational::new(1.into(), 2.into()));
        vars.insert("s".to_string(), BigRational::new(1.into(), 2.into()));
        vars.insert("i".to_string(), BigRational::from_integer(2.into()));
        let env = Env { kind: TableKind::TwistedOmega, gamma: None, vars };
        let x = env.eval_elem(&r.rhs).unwrap();
        let q = named_to_elem(TableKind::TwistedOmega, &NamedMode::new(Family::Q, 2, Exponent::from_integer(1))).unwrap();
        assert_eq!(x, q.scale(&Scalar::from_ratio(1, 2)));
    }
}
