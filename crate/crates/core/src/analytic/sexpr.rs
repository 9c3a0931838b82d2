//! Textual form for constraint systems.
//!
//! Grammar, s-expressions with `;` line comments:
//!
//! ```text
//! system     := "(" "system" var* clause* ")"
//! var        := "(" "var" NAME number number ")"
//! clause     := constraint | "(" "or" constraint+ ")"
//! constraint := "(" op poly ")"            op in { "<" "<=" "=" }, meaning poly op 0
//! poly       := NAME | number
//!             | "(" "+" poly+ ")" | "(" "*" poly+ ")"
//!             | "(" "-" poly poly? ")" | "(" "^" poly INTEGER ")"
//! number     := INTEGER | INTEGER "/" INTEGER | DECIMAL
//! NAME       := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! The writer emits polynomials as a canonical sum of monomial products
//! with exact rational coefficients, so write-then-parse reproduces a
//! system exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Polynomial;
use super::{
    AnalyticError, ConstraintClause, ConstraintOp, ConstraintSystem, PolyConstraint, RealVar,
};

pub fn system_to_sexpr(sys: &ConstraintSystem) -> String {
    let mut out = String::from("(system\n");
    for v in sys.vars.values() {
        out.push_str(&format!("  (var {} {} {})\n", v.name, v.lo, v.hi));
    }
    for clause in &sys.clauses {
        if clause.0.len() == 1 {
            out.push_str(&format!("  {}\n", constraint_sexpr(&clause.0[0])));
        } else {
            out.push_str("  (or");
            for c in &clause.0 {
                out.push(' ');
                out.push_str(&constraint_sexpr(c));
            }
            out.push_str(")\n");
        }
    }
    out.push_str(")\n");
    out
}

fn constraint_sexpr(c: &PolyConstraint) -> String {
    format!("({} {})", c.op.name(), poly_sexpr(&c.poly))
}

fn poly_sexpr(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = p
        .0
        .iter()
        .map(|(m, c)| {
            if m.0.is_empty() {
                return c.to_string();
            }
            let mut parts = vec![c.to_string()];
            for (v, &e) in &m.0 {
                if e == 1 {
                    parts.push(v.clone());
                } else {
                    parts.push(format!("(^ {v} {e})"));
                }
            }
            format!("(* {})", parts.join(" "))
        })
        .collect();
    if terms.len() == 1 {
        terms.into_iter().next().expect("one term")
    } else {
        format!("(+ {})", terms.join(" "))
    }
}

enum Sexp {
    Atom { text: String, at: usize },
    List { items: Vec<Sexp>, at: usize },
}

impl Sexp {
    fn at(&self) -> usize {
        match self {
            Sexp::Atom { at, .. } | Sexp::List { at, .. } => *at,
        }
    }
}

fn err(at: usize, message: impl Into<String>) -> AnalyticError {
    AnalyticError::Parse { at, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, String)>, AnalyticError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c == ';' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c == '(' || c == ')' {
            toks.push((i, c.to_string()));
            i += 1;
        } else {
            let start = i;
            while i < bytes.len() {
                let d = bytes[i] as char;
                if d.is_whitespace() || d == '(' || d == ')' || d == ';' {
                    break;
                }
                i += 1;
            }
            toks.push((start, src[start..i].to_string()));
        }
    }
    Ok(toks)
}

fn read(toks: &[(usize, String)], pos: &mut usize) -> Result<Sexp, AnalyticError> {
    let Some((at, tok)) = toks.get(*pos) else {
        return Err(err(usize::MAX, "unexpected end of input"));
    };
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos) {
                    None => return Err(err(*at, "unclosed parenthesis")),
                    Some((_, t)) if t == ")" => {
                        *pos += 1;
                        return Ok(Sexp::List { items, at: *at });
                    }
                    Some(_) => items.push(read(toks, pos)?),
                }
            }
        }
        ")" => Err(err(*at, "unmatched close parenthesis")),
        _ => Ok(Sexp::Atom { text: tok.clone(), at: *at }),
    }
}

fn parse_number(text: &str) -> Option<BigRational> {
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Ok(n) = text.parse::<BigInt>() {
        return Some(BigRational::from_integer(n));
    }
    let f: f64 = text.parse().ok()?;
    BigRational::from_float(f)
}

fn valid_name(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_poly(s: &Sexp) -> Result<Polynomial, AnalyticError> {
    match s {
        Sexp::Atom { text, at } => {
            if let Some(n) = parse_number(text) {
                return Ok(Polynomial::constant(n));
            }
            if valid_name(text) {
                return Ok(Polynomial::var(text));
            }
            Err(err(*at, format!("expected a number or variable, got {text}")))
        }
        Sexp::List { items, at } => {
            let Some(Sexp::Atom { text: head, .. }) = items.first() else {
                return Err(err(*at, "expected an operator"));
            };
            let args = &items[1..];
            match head.as_str() {
                "+" | "*" => {
                    if args.is_empty() {
                        return Err(err(*at, format!("({head}) needs at least one argument")));
                    }
                    let mut acc = parse_poly(&args[0])?;
                    for a in &args[1..] {
                        let p = parse_poly(a)?;
                        acc = if head == "+" { &acc + &p } else { &acc * &p };
                    }
                    Ok(acc)
                }
                "-" => match args {
                    [a] => Ok(-&parse_poly(a)?),
                    [a, b] => Ok(&parse_poly(a)? - &parse_poly(b)?),
                    _ => Err(err(*at, "(-) takes one or two arguments")),
                },
                "^" => match args {
                    [a, Sexp::Atom { text, at: eat }] => {
                        let e: u32 = text
                            .parse()
                            .map_err(|_| err(*eat, "exponent must be a small nonnegative integer"))?;
                        Ok(parse_poly(a)?.pow(e))
                    }
                    _ => Err(err(*at, "(^) takes a polynomial and an integer")),
                },
                other => Err(err(*at, format!("unknown operator {other}"))),
            }
        }
    }
}

fn parse_constraint(s: &Sexp) -> Result<PolyConstraint, AnalyticError> {
    let Sexp::List { items, at } = s else {
        return Err(err(s.at(), "expected a constraint list"));
    };
    let [Sexp::Atom { text: op, at: op_at }, poly] = items.as_slice() else {
        return Err(err(*at, "constraint takes an operator and a polynomial"));
    };
    let op = match op.as_str() {
        "<" => ConstraintOp::Lt,
        "<=" => ConstraintOp::Le,
        "=" => ConstraintOp::Eq,
        other => return Err(err(*op_at, format!("unknown comparison {other}"))),
    };
    Ok(PolyConstraint { poly: parse_poly(poly)?, op })
}

pub fn parse_system(src: &str) -> Result<ConstraintSystem, AnalyticError> {
    let toks = tokenize(src)?;
    let mut pos = 0;
    let root = read(&toks, &mut pos)?;
    if let Some((at, _)) = toks.get(pos) {
        return Err(err(*at, "trailing content after system"));
    }
    let Sexp::List { items, at } = root else {
        return Err(err(root.at(), "expected (system ...)"));
    };
    match items.first() {
        Some(Sexp::Atom { text, .. }) if text == "system" => {}
        _ => return Err(err(at, "expected (system ...)")),
    }

    let mut sys = ConstraintSystem::new();
    for item in &items[1..] {
        let head = match item {
            Sexp::List { items, .. } => match items.first() {
                Some(Sexp::Atom { text, .. }) => text.as_str(),
                _ => "",
            },
            Sexp::Atom { at, .. } => return Err(err(*at, "expected a var or clause list")),
        };
        match head {
            "var" => {
                let Sexp::List { items, at } = item else { unreachable!() };
                let [_, Sexp::Atom { text: name, at: name_at }, lo, hi] = items.as_slice() else {
                    return Err(err(*at, "var takes a name and two bounds"));
                };
                if !valid_name(name) {
                    return Err(err(*name_at, format!("invalid variable name {name}")));
                }
                let bound = |s: &Sexp| match s {
                    Sexp::Atom { text, at } => {
                        parse_number(text).ok_or_else(|| err(*at, format!("bad number {text}")))
                    }
                    Sexp::List { at, .. } => Err(err(*at, "bound must be a number")),
                };
                let (lo, hi) = (bound(lo)?, bound(hi)?);
                if lo > hi {
                    return Err(AnalyticError::EmptyDomain { name: name.clone() });
                }
                sys.declare(RealVar::exact(name.clone(), lo, hi));
            }
            "or" => {
                let Sexp::List { items, at } = item else { unreachable!() };
                let lits = items[1..]
                    .iter()
                    .map(parse_constraint)
                    .collect::<Result<Vec<_>, _>>()?;
                if lits.is_empty() {
                    return Err(err(*at, "(or) needs at least one constraint"));
                }
                sys.clauses.push(ConstraintClause(lits));
            }
            _ => sys.push(parse_constraint(item)?),
        }
    }
    sys.validate()?;
    Ok(sys)
}

/// Pretty form for witnesses and diagnostics: one `name = value` pair per
/// line in declaration order.
pub fn witness_to_string<S: std::fmt::Display>(w: &BTreeMap<String, S>) -> String {
    let mut out = String::new();
    for (k, v) in w {
        out.push_str(&format!("{k} = {v}\n"));
    }
    out
}
