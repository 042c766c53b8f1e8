//! Integer complexity: the fewest ones needed to write `m` with `+`, `*` and
//! parentheses.
//!
//! The table uses the split/divisor recurrence. Additive splits are pruned
//! with the lower bound `c(k) >= s(k)` (at most `ell(t)` is reachable with
//! `t` ones), which leaves a handful of candidates per entry; the chosen
//! back-pointer is the same one a full scan would record.

use std::fmt;

use num_traits::One;

use crate::closed_forms::{ell, BigNat};
use crate::error::{Error, Result};
use crate::graph::{complete_graph, disjoint_union, join, Graph, MAX_VERTICES};

/// Largest table limit accepted.
pub const MAX_LIMIT: usize = 10_000_000;

/// Default memory budget for [`complexity_table`].
pub const DEFAULT_MEMORY_CAP: u64 = 512 << 20;

/// How an entry of the table attains its minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    One,
    /// `m = i + (m - i)` with `i <= m / 2`.
    Sum(u32),
    /// `m = d * (m / d)` with `d <= sqrt(m)`.
    Product(u32),
}

/// Complexities `c(1..=limit)` with one back-pointer per entry.
#[derive(Clone, Debug)]
pub struct ComplexityTable {
    limit: usize,
    c: Vec<u8>,
    choice: Vec<Choice>,
}

impl ComplexityTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `c(m)`, or `None` outside `1..=limit`.
    pub fn get(&self, m: usize) -> Option<u32> {
        (1..=self.limit).contains(&m).then(|| self.c[m] as u32)
    }

    pub fn choice(&self, m: usize) -> Option<Choice> {
        (1..=self.limit).contains(&m).then(|| self.choice[m])
    }

    /// Largest `m <= limit` with `c(m) = n`.
    pub fn max_with_complexity(&self, n: u32) -> Option<usize> {
        (1..=self.limit).rev().find(|&m| self.c[m] as u32 == n)
    }

    /// `m,c` lines for `1 <= m <= limit`, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.limit * 8);
        for m in 1..=self.limit {
            out.push_str(&format!("{m},{}\n", self.c[m]));
        }
        out
    }
}

fn estimated_bytes(limit: usize) -> u64 {
    // c (1) + choice (8) + smallest prime factor (4) + bucket entry (4)
    (limit as u64 + 1) * 17
}

pub fn complexity_table(limit: usize) -> Result<ComplexityTable> {
    complexity_table_with_cap(limit, DEFAULT_MEMORY_CAP)
}

pub fn complexity_table_with_cap(limit: usize, cap_bytes: u64) -> Result<ComplexityTable> {
    if limit == 0 {
        return Err(Error::TooSmall { what: "N", min: 1, got: 0 });
    }
    if limit > MAX_LIMIT {
        return Err(Error::TooLarge { what: "N", max: MAX_LIMIT as u64, got: limit as u64 });
    }
    let bytes = estimated_bytes(limit);
    if bytes > cap_bytes {
        return Err(Error::MemoryCap { limit, bytes, cap: cap_bytes });
    }

    let spf = smallest_prime_factors(limit);
    // ells[n-1] = ell(n), saturating; used for the s(k) lower bound
    let ells: Vec<u64> = (1..=64u32)
        .map(|n| ell(n).ok().and_then(|v| u64::try_from(v).ok()).unwrap_or(u64::MAX))
        .collect();
    let s_lower = |k: usize| ells.partition_point(|&l| l < k as u64) as u32 + 1;

    let mut c = vec![0u8; limit + 1];
    let mut choice = vec![Choice::One; limit + 1];
    // by_c[t]: all i computed so far with c(i) = t, ascending
    let mut by_c: Vec<Vec<u32>> = vec![Vec::new(); 2];
    c[1] = 1;
    by_c[1].push(1);
    let mut divisors = Vec::new();

    for m in 2..=limit {
        let mut best_prod = (u32::MAX, 0u32);
        small_divisors(m, &spf, &mut divisors);
        for &d in &divisors {
            let v = c[d as usize] as u32 + c[m / d as usize] as u32;
            if v < best_prod.0 {
                best_prod = (v, d);
            }
        }
        let bound = best_prod.0.min(c[m - 1] as u32 + 1);
        let threshold = bound.saturating_sub(s_lower(m - m / 2));
        let mut best_sum = (u32::MAX, 0u32);
        for bucket in by_c.iter().take(threshold as usize + 1).skip(1) {
            for &i in bucket.iter().take_while(|&&i| i as usize <= m / 2) {
                let v = c[i as usize] as u32 + c[m - i as usize] as u32;
                if (v, i) < best_sum {
                    best_sum = (v, i);
                }
            }
        }
        let (value, pick) = if best_sum.0 <= best_prod.0 {
            (best_sum.0, Choice::Sum(best_sum.1))
        } else {
            (best_prod.0, Choice::Product(best_prod.1))
        };
        c[m] = u8::try_from(value).expect("complexity fits in a byte below 10^7");
        choice[m] = pick;
        if by_c.len() <= value as usize {
            by_c.resize(value as usize + 1, Vec::new());
        }
        by_c[value as usize].push(m as u32);
    }
    Ok(ComplexityTable { limit, c, choice })
}

fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for p in 2..=limit {
        if spf[p] == 0 {
            let mut k = p;
            while k <= limit {
                if spf[k] == 0 {
                    spf[k] = p as u32;
                }
                k += p;
            }
        }
    }
    spf
}

/// Divisors `d` of `m` with `1 < d` and `d * d <= m`, ascending.
fn small_divisors(m: usize, spf: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.push(1);
    let mut rest = m;
    while rest > 1 {
        let p = spf[rest] as usize;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        let existing = out.len();
        let mut pk = 1usize;
        for _ in 0..e {
            pk *= p;
            for j in 0..existing {
                let d = out[j] as usize * pk;
                if d * d <= m {
                    out.push(d as u32);
                }
            }
        }
    }
    out.retain(|&d| d > 1);
    out.sort_unstable();
}

/// A `+`/`*` expression over ones, binary and right-nested when flattened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    node: Node,
    value: BigNat,
    ones: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    One,
    Sum(Box<Expression>, Box<Expression>),
    Product(Box<Expression>, Box<Expression>),
}

impl Expression {
    pub fn one() -> Self {
        Expression { node: Node::One, value: BigNat::one(), ones: 1 }
    }

    pub fn sum(a: Expression, b: Expression) -> Self {
        Expression {
            value: &a.value + &b.value,
            ones: a.ones + b.ones,
            node: Node::Sum(Box::new(a), Box::new(b)),
        }
    }

    pub fn product(a: Expression, b: Expression) -> Self {
        Expression {
            value: &a.value * &b.value,
            ones: a.ones + b.ones,
            node: Node::Product(Box::new(a), Box::new(b)),
        }
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn value(&self) -> &BigNat {
        &self.value
    }

    pub fn ones(&self) -> u32 {
        self.ones
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expression(self))
    }
}

/// A witness expression for `m` using exactly `c(m)` ones.
pub fn minimal_expression(m: usize, table: &ComplexityTable) -> Result<Expression> {
    if m == 0 {
        return Err(Error::TooSmall { what: "m", min: 1, got: 0 });
    }
    if m > table.limit {
        return Err(Error::TooLarge { what: "m", max: table.limit as u64, got: m as u64 });
    }
    Ok(rebuild(m, table))
}

fn rebuild(m: usize, table: &ComplexityTable) -> Expression {
    match table.choice[m] {
        Choice::One => Expression::one(),
        Choice::Sum(i) => Expression::sum(rebuild(i as usize, table), rebuild(m - i as usize, table)),
        Choice::Product(d) => {
            Expression::product(rebuild(d as usize, table), rebuild(m / d as usize, table))
        }
    }
}

/// Prints with `+` and juxtaposition, using `*` only where a product's right
/// operand does not start with a parenthesis. Both operators nest to the
/// right, so `1+1+1` is `1+(1+1)`.
pub fn format_expression(e: &Expression) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_expr(e: &Expression, out: &mut String) {
    match &e.node {
        Node::One => out.push('1'),
        Node::Sum(l, r) => {
            write_grouped(l, matches!(l.node, Node::Sum(..)), out);
            out.push('+');
            write_expr(r, out);
        }
        Node::Product(l, r) => {
            write_grouped(l, !matches!(l.node, Node::One), out);
            let mut right = String::new();
            write_grouped(r, matches!(r.node, Node::Sum(..)), &mut right);
            if !right.starts_with('(') {
                out.push('*');
            }
            out.push_str(&right);
        }
    }
}

fn write_grouped(e: &Expression, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

/// Parses `1`, `+`, `*`, parentheses and juxtaposition before `(`.
/// Whitespace is ignored; positions in errors are character offsets.
pub fn parse_expression(text: &str) -> Result<Expression> {
    let mut tokens = Vec::new();
    for (pos, ch) in text.chars().enumerate() {
        match ch {
            '1' | '+' | '*' | '(' | ')' => tokens.push((pos, ch)),
            c if c.is_whitespace() => {}
            c if c.is_ascii_digit() => {
                return Err(Error::Parse { pos, msg: format!("digit '{c}' not allowed, only '1'") })
            }
            c => return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") }),
        }
    }
    let mut p = Parser { tokens, at: 0, end: text.chars().count() };
    let e = p.expr()?;
    if let Some((pos, ch)) = p.peek() {
        return Err(Error::Parse { pos, msg: format!("unexpected '{ch}' after complete expression") });
    }
    Ok(e)
}

struct Parser {
    tokens: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, char)> {
        self.tokens.get(self.at).copied()
    }

    fn expr(&mut self) -> Result<Expression> {
        let left = self.term()?;
        if let Some((_, '+')) = self.peek() {
            self.at += 1;
            let right = self.expr()?;
            return Ok(Expression::sum(left, right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expression> {
        let left = self.factor()?;
        match self.peek() {
            Some((_, '*')) => {
                self.at += 1;
                Ok(Expression::product(left, self.term()?))
            }
            Some((_, '(')) => Ok(Expression::product(left, self.term()?)),
            _ => Ok(left),
        }
    }

    fn factor(&mut self) -> Result<Expression> {
        match self.peek() {
            Some((_, '1')) => {
                self.at += 1;
                if let Some((pos, '1')) = self.peek() {
                    return Err(Error::Parse {
                        pos,
                        msg: "adjacent ones need '*' or parentheses".into(),
                    });
                }
                Ok(Expression::one())
            }
            Some((open, '(')) => {
                self.at += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.at += 1;
                        Ok(e)
                    }
                    Some((pos, ch)) => Err(Error::Parse { pos, msg: format!("expected ')', found '{ch}'") }),
                    None => Err(Error::Parse {
                        pos: self.end,
                        msg: format!("unclosed '(' opened at position {open}"),
                    }),
                }
            }
            Some((pos, ch)) => Err(Error::Parse { pos, msg: format!("expected '1' or '(', found '{ch}'") }),
            None => Err(Error::Parse { pos: self.end, msg: "unexpected end of input".into() }),
        }
    }
}

/// `1` becomes `K_1`, a sum the join of its operands' graphs, a product
/// their disjoint union. The result has `ones` vertices and `value` MISes.
pub fn graph_from_expression(e: &Expression) -> Result<Graph> {
    if e.ones as usize > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "number of ones",
            max: MAX_VERTICES as u64,
            got: e.ones as u64,
        });
    }
    build_graph(e)
}

fn build_graph(e: &Expression) -> Result<Graph> {
    match &e.node {
        Node::One => complete_graph(1),
        Node::Sum(l, r) => join(&build_graph(l)?, &build_graph(r)?),
        Node::Product(l, r) => disjoint_union(&build_graph(l)?, &build_graph(r)?),
    }
}
