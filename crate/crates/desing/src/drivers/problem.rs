//! Problem files: `key: value` lines describing one run.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactpoly::{Ideal, Polynomial, Rational, Ring};
use crate::resolver::DEFAULT_MAX_STAGES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Task {
    #[default]
    Resolve,
    Principalize,
    Embedded,
    Monomial,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Resolve => "resolve",
            Task::Principalize => "principalize",
            Task::Embedded => "embedded",
            Task::Monomial => "monomial",
        }
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "resolve" => Ok(Task::Resolve),
            "principalize" => Ok(Task::Principalize),
            "embedded" => Ok(Task::Embedded),
            "monomial" => Ok(Task::Monomial),
            other => Err(format!("unknown task `{other}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub ring: Ring,
    pub ideal: Ideal,
    pub b: u64,
    pub boundary: Vec<usize>,
    pub task: Task,
    pub max_stages: usize,
    /// Multiplicities of the boundary divisors, for the monomial task.
    pub mults: Vec<(usize, u64)>,
}

impl Problem {
    pub fn new(ring: Ring, ideal: Ideal, b: u64, boundary: Vec<usize>, task: Task) -> Problem {
        Problem { ring, ideal, b, boundary, task, max_stages: DEFAULT_MAX_STAGES, mults: Vec::new() }
    }

    /// Same problem with the variables renamed and reordered: variable `i`
    /// becomes variable `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Problem {
        let n = self.ring.dim();
        let mut names = vec![String::new(); n];
        for i in 0..n {
            names[perm[i]] = self.ring.name(i).to_string();
        }
        Problem {
            ring: Ring::new(names).expect("permutation keeps names distinct"),
            ideal: self.ideal.permute(perm),
            b: self.b,
            boundary: self.boundary.iter().map(|&v| perm[v]).collect(),
            task: self.task,
            max_stages: self.max_stages,
            mults: self.mults.iter().map(|&(v, a)| (perm[v], a)).collect(),
        }
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut ideal_src: Option<(usize, usize, String)> = None;
    let mut b = 1u64;
    let mut boundary_src: Option<(usize, Vec<String>)> = None;
    let mut task: Option<Task> = None;
    let mut max_stages = DEFAULT_MAX_STAGES;
    let mut mults_src: Option<(usize, String)> = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(syntax(line, 1, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let value = &content[colon + 1..];
        let value_col = colon + 2 + (value.len() - value.trim_start().len());
        let value = value.trim();
        let parse_nat = |v: &str| v.parse::<u64>().map_err(|_| syntax(line, value_col, format!("expected a natural number, got `{v}`")));
        match key {
            "vars" => vars = Some((line, value.split_whitespace().map(String::from).collect())),
            "ideal" => ideal_src = Some((line, value_col, value.to_string())),
            "b" => b = parse_nat(value)?,
            "boundary" => boundary_src = Some((line, value.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from).collect())),
            "task" => task = Some(value.parse().map_err(|m: String| syntax(line, value_col, m))?),
            "maxStages" => max_stages = parse_nat(value)? as usize,
            "mults" => mults_src = Some((line, value.to_string())),
            other => return Err(syntax(line, 1, format!("unknown key `{other}`"))),
        }
    }

    let (vars_line, names) = vars.ok_or_else(|| Error::Invalid("missing `vars:` line".into()))?;
    let ring = Ring::new(names).map_err(|e| match e {
        Error::Invalid(m) => syntax(vars_line, 1, m),
        other => other,
    })?;
    let task = task.unwrap_or_default();
    if b == 0 {
        return Err(Error::Invalid("b must be at least 1".into()));
    }
    let mut boundary = Vec::new();
    if let Some((_, names)) = boundary_src {
        for name in names {
            let i = ring.index(&name).ok_or(Error::UnknownVariable(name))?;
            if boundary.contains(&i) {
                return Err(Error::Invalid(format!("boundary variable `{}` listed twice", ring.name(i))));
            }
            boundary.push(i);
        }
    }
    let mut mults = Vec::new();
    if let Some((line, src)) = mults_src {
        for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, a) = item
                .split_once('=')
                .ok_or_else(|| syntax(line, 1, format!("expected `name=nat`, got `{item}`")))?;
            let i = ring.index(name.trim()).ok_or_else(|| Error::UnknownVariable(name.trim().to_string()))?;
            let a = a.trim().parse::<u64>().map_err(|_| syntax(line, 1, format!("bad multiplicity in `{item}`")))?;
            mults.push((i, a));
        }
        if boundary.is_empty() {
            boundary = mults.iter().map(|m| m.0).collect();
        }
    }
    let ideal = match ideal_src {
        Some((line, col, src)) => parse_ideal(&ring, &src, line, col)?,
        None if task == Task::Monomial => {
            let n = ring.dim();
            let mono = mults
                .iter()
                .fold(Polynomial::one(n), |acc, &(v, a)| acc.mul(&Polynomial::var(n, v).pow(a)));
            Ideal::new(n, [mono])
        }
        None => return Err(Error::Invalid("missing `ideal:` line".into())),
    };
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if task == Task::Monomial {
        if mults.is_empty() {
            return Err(Error::Invalid("monomial task needs `mults:`".into()));
        }
        if let Some(&(v, _)) = mults.iter().find(|m| !boundary.contains(&m.0)) {
            return Err(Error::Invalid(format!("`{}` has a multiplicity but is not in the boundary", ring.name(v))));
        }
        let mut ordered = Vec::with_capacity(boundary.len());
        for &v in &boundary {
            let a = mults
                .iter()
                .find(|m| m.0 == v)
                .ok_or_else(|| Error::Invalid(format!("boundary `{}` has no multiplicity", ring.name(v))))?;
            ordered.push(*a);
        }
        mults = ordered;
    }
    Ok(Problem { ring, ideal, b, boundary, task, max_stages, mults })
}

/// Comma-separated polynomials; `line` and `col` locate the text for errors.
pub fn parse_ideal(ring: &Ring, src: &str, line: usize, col: usize) -> Result<Ideal> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let lead = part.len() - part.trim_start().len();
        if part.trim().is_empty() {
            return Err(syntax(line, col + offset, "empty generator"));
        }
        gens.push(parse_polynomial_at(ring, part.trim(), line, col + offset + lead)?);
        offset += part.chars().count() + 1;
    }
    Ok(Ideal::new(ring.dim(), gens))
}

pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, src, 1, 1)
}

fn parse_polynomial_at(ring: &Ring, src: &str, line: usize, col: usize) -> Result<Polynomial> {
    let mut p = Parser { ring, chars: src.chars().collect(), pos: 0, line, col };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        syntax(self.line, self.col + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let n = self.ring.dim();
        let mut acc = match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') | Some('−') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        debug_assert_eq!(acc.nvars(), n);
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return Err(self.error("division only by a nonzero constant"));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an exponent after `^`"));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let k: u64 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.ring.dim();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let value: num_bigint::BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Polynomial::constant(n, Rational::from_integer(value)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.ring.var(&name)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
