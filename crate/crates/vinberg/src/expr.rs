//! Parser for Laurent expressions in the cluster variables of a seed.
//!
//! Grammar: integers, `+ - * /`, `^` with an integer exponent (optionally
//! negative or parenthesized), parentheses and variable names. A name with a
//! trailing `'` is the variable obtained by one mutation of the initial seed
//! at the named vertex. Division is only by monomials.

use std::collections::BTreeMap;

use vinberg_core::cluster::{mutate_state, SeedState};
use vinberg_core::laurent::LaurentPoly;
use vinberg_core::seed::Seed;
use vinberg_core::Rational;

use crate::CliError;

/// Names available to the parser.
#[derive(Clone, Debug)]
pub struct Scope {
    nvars: usize,
    vars: BTreeMap<String, LaurentPoly>,
}

impl Scope {
    pub fn new(nvars: usize) -> Self {
        Scope {
            nvars,
            vars: BTreeMap::new(),
        }
    }

    /// Initial cluster variables by name, plus `name'` for each mutable vertex.
    pub fn for_seed(seed: &Seed) -> Result<Self, CliError> {
        let mut scope = Scope::new(seed.len());
        let st = SeedState::initial(seed.clone());
        for (p, name) in seed.names().iter().enumerate() {
            scope.insert(name, st.vars[p].clone());
        }
        for p in seed.mutable_positions() {
            let m = mutate_state(&st, p)?;
            scope.insert(&format!("{}'", seed.names()[p]), m.vars[p].clone());
        }
        Ok(scope)
    }

    pub fn insert(&mut self, name: &str, value: LaurentPoly) {
        self.vars.insert(name.to_string(), value);
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>, CliError> {
    let chars: Vec<char> = src.chars().collect();
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
            let v = s
                .parse()
                .map_err(|_| CliError::Input(format!("integer too large: {s}")))?;
            out.push(Tok::Int(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CliError::Input(format!("unexpected character {c:?} at {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    scope: &'a Scope,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, CliError> {
        Err(CliError::Input(format!("{msg} at token {}", self.pos)))
    }

    fn expr(&mut self) -> Result<LaurentPoly, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let Some(inv) = d.monomial_inverse() else {
                    return self.err("division by a non-monomial");
                };
                acc = acc * inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly, CliError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return base
                .pow(e)
                .map_err(|_| CliError::Input("negative power of a non-monomial".into()));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, CliError> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let Some(Tok::Int(v)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return self.err("expected ')'");
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<LaurentPoly, CliError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(LaurentPoly::constant(self.scope.nvars, Rational::from_integer(v.into())))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                self.scope
                    .vars
                    .get(&n)
                    .cloned()
                    .ok_or_else(|| CliError::Input(format!("unknown variable {n:?}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

pub fn parse_expr(src: &str, scope: &Scope) -> Result<LaurentPoly, CliError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(CliError::Input("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, scope };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
