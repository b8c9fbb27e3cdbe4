//! Concrete simple functions, composite expressions, and their renderings.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Sin,
    Cos,
    Tan,
    Sec,
    Csc,
    Cot,
}

impl Trig {
    /// Drawing order: a draw of `i` selects `ALL[i - 1]`.
    pub const ALL: [Trig; 6] = [Trig::Sin, Trig::Cos, Trig::Tan, Trig::Sec, Trig::Csc, Trig::Cot];

    pub fn name(self) -> &'static str {
        match self {
            Trig::Sin => "sin",
            Trig::Cos => "cos",
            Trig::Tan => "tan",
            Trig::Sec => "sec",
            Trig::Csc => "csc",
            Trig::Cot => "cot",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvTrig {
    Arcsin,
    Arccos,
    Arctan,
}

impl InvTrig {
    pub const ALL: [InvTrig; 3] = [InvTrig::Arcsin, InvTrig::Arccos, InvTrig::Arctan];

    pub fn name(self) -> &'static str {
        match self {
            InvTrig::Arcsin => "arcsin",
            InvTrig::Arccos => "arccos",
            InvTrig::Arctan => "arctan",
        }
    }
}

/// Base of an exponential or logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Natural,
    General(u32),
}

/// A concrete single-variable simple function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SimpleFunction {
    Power { exponent: u32 },
    Trig { name: Trig },
    Log { base: Base },
    Exp { base: Base },
    InvTrig { name: InvTrig },
}

impl SimpleFunction {
    /// Class tag: `Power`, `Trig`, `Log`, `Exp` or `InvTrig`.
    pub fn class_name(self) -> &'static str {
        match self {
            SimpleFunction::Power { .. } => "Power",
            SimpleFunction::Trig { .. } => "Trig",
            SimpleFunction::Log { .. } => "Log",
            SimpleFunction::Exp { .. } => "Exp",
            SimpleFunction::InvTrig { .. } => "InvTrig",
        }
    }

    /// Parses a single function applied to `x`, e.g. `"sin x"`, `"x^2"`,
    /// `"\\log_3 x"`.
    pub fn parse(text: &str) -> Result<Self> {
        match parse_expression(text)? {
            Expr::Apply { func, arg } if *arg == Expr::Var => Ok(func),
            _ => Err(Error::Expression { input: text.to_owned(), detail: "expected one simple function of x".into() }),
        }
    }

    pub fn of(self, arg: Expr) -> Expr {
        Expr::Apply { func: self, arg: Box::new(arg) }
    }
}

impl fmt::Display for SimpleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_plain(&self.of(Expr::Var)))
    }
}

/// A chain of simple functions applied to `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Expr {
    Var,
    Apply { func: SimpleFunction, arg: Box<Expr> },
}

impl Expr {
    /// Composes `funcs` with the first element innermost.
    pub fn compose(funcs: impl IntoIterator<Item = SimpleFunction>) -> Expr {
        funcs.into_iter().fold(Expr::Var, |inner, f| f.of(inner))
    }

    /// Functions from innermost to outermost.
    pub fn chain(&self) -> Vec<SimpleFunction> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Expr::Apply { func, arg } = cur {
            out.push(*func);
            cur = arg;
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Latex,
    PlainText,
    Json,
}

pub fn render(expr: &Expr, format: Format) -> String {
    match format {
        Format::Latex => render_latex(expr),
        Format::PlainText => render_plain(expr),
        Format::Json => serde_json::to_string(expr).expect("expression serializes"),
    }
}

fn digits_script(n: u32) -> String {
    if n < 10 {
        n.to_string()
    } else {
        format!("{{{n}}}")
    }
}

/// LaTeX with minimal parentheses: composite arguments are parenthesised,
/// powers of composites become `(inner)^n`, exponentials `base^{inner}`.
pub fn render_latex(expr: &Expr) -> String {
    let Expr::Apply { func, arg } = expr else {
        return "x".to_owned();
    };
    let simple = **arg == Expr::Var;
    let inner = render_latex(arg);
    let applied = |name: &str| if simple { format!("\\{name} x") } else { format!("\\{name}({inner})") };
    match *func {
        SimpleFunction::Power { exponent } => {
            let base = if simple { inner } else { format!("({inner})") };
            format!("{base}^{}", digits_script(exponent))
        }
        SimpleFunction::Trig { name } => applied(name.name()),
        SimpleFunction::InvTrig { name } => applied(name.name()),
        SimpleFunction::Log { base: Base::Natural } => applied("ln"),
        SimpleFunction::Log { base: Base::General(a) } => applied(&format!("log_{}", digits_script(a))),
        SimpleFunction::Exp { base: Base::Natural } => format!("e^{{{inner}}}"),
        SimpleFunction::Exp { base: Base::General(a) } => format!("{a}^{{{inner}}}"),
    }
}

/// Plain text counterpart of [`render_latex`], e.g. `arctan(ln(x^2))`.
pub fn render_plain(expr: &Expr) -> String {
    let Expr::Apply { func, arg } = expr else {
        return "x".to_owned();
    };
    let simple = **arg == Expr::Var;
    let inner = render_plain(arg);
    let wrapped = if simple { inner.clone() } else { format!("({inner})") };
    let applied = |name: &str| if simple { format!("{name} x") } else { format!("{name}({inner})") };
    match *func {
        SimpleFunction::Power { exponent } => format!("{wrapped}^{exponent}"),
        SimpleFunction::Trig { name } => applied(name.name()),
        SimpleFunction::InvTrig { name } => applied(name.name()),
        SimpleFunction::Log { base: Base::Natural } => applied("ln"),
        SimpleFunction::Log { base: Base::General(a) } => applied(&format!("log_{a}")),
        SimpleFunction::Exp { base: Base::Natural } => format!("e^{wrapped}"),
        SimpleFunction::Exp { base: Base::General(a) } => format!("{a}^{wrapped}"),
    }
}

/// Maps LaTeX produced by [`render_latex`] onto the plain text syntax:
/// drops `\displaystyle` and backslashes, unwraps single-token brace groups
/// (`^{10}` to `^10`) and turns the others into parentheses (`^{\sin x}` to
/// `^(sin x)`).
pub fn latex_to_plain(latex: &str) -> String {
    let cleaned = latex.replace("\\displaystyle", "");
    let chars: Vec<char> = cleaned.trim().chars().collect();
    let mut pos = 0;
    let out = convert_group(&chars, &mut pos);
    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn convert_group(chars: &[char], pos: &mut usize) -> String {
    let mut out = String::new();
    while *pos < chars.len() {
        let c = chars[*pos];
        *pos += 1;
        match c {
            '\\' => {}
            '{' => {
                let inner = convert_group(chars, pos);
                let inner = inner.trim();
                if !inner.is_empty() && inner.chars().all(char::is_alphanumeric) {
                    out.push_str(inner);
                } else {
                    out.push('(');
                    out.push_str(inner);
                    out.push(')');
                }
            }
            '}' => return out,
            _ => out.push(c),
        }
    }
    out
}

/// Comparison key for LaTeX strings: no `\displaystyle`, no braces,
/// single spaces.
pub fn normalize_latex(latex: &str) -> String {
    latex
        .replace("\\displaystyle", "")
        .chars()
        .filter(|c| *c != '{' && *c != '}')
        .collect::<String>()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses plain text (or LaTeX, via [`latex_to_plain`]) back into an [`Expr`].
pub fn parse_expression(text: &str) -> Result<Expr> {
    let plain = if text.contains('\\') || text.contains('{') { latex_to_plain(text) } else { text.trim().to_owned() };
    let mut p = Parser { src: plain.as_bytes(), pos: 0, text };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, detail: &str) -> Error {
        Error::Expression { input: self.text.to_owned(), detail: format!("{detail} at byte {}", self.pos) }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_lowercase()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let (mut e, powerable) = self.primary()?;
        if powerable {
            while self.peek() == Some(b'^') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
                let exponent = self.number().ok_or_else(|| self.err("bad exponent"))?;
                e = SimpleFunction::Power { exponent }.of(e);
            }
        }
        Ok(e)
    }

    fn group(&mut self) -> Result<Expr> {
        if !self.eat(b'(') {
            return Err(self.err("expected '('"));
        }
        let e = self.expr()?;
        self.skip_ws();
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        Ok(e)
    }

    // Argument of a named function: ` x` or `(expr)`.
    fn argument(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'(') {
            return self.group();
        }
        self.skip_ws();
        if self.eat(b'x') {
            Ok(Expr::Var)
        } else {
            Err(self.err("expected argument"))
        }
    }

    // Exponent of an exponential: `x` or `(expr)`.
    fn exponent_arg(&mut self) -> Result<Expr> {
        if self.eat(b'x') {
            Ok(Expr::Var)
        } else {
            self.group()
        }
    }

    /// Returns the parsed term and whether a postfix `^n` may follow it.
    fn primary(&mut self) -> Result<(Expr, bool)> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok((Expr::Var, true))
            }
            Some(b'(') => Ok((self.group()?, true)),
            Some(c) if c.is_ascii_digit() => {
                let base = self.number().ok_or_else(|| self.err("bad base"))?;
                if !self.eat(b'^') {
                    return Err(self.err("expected '^' after base"));
                }
                if base < 2 {
                    return Err(self.err("exponential base must be at least 2"));
                }
                let arg = self.exponent_arg()?;
                Ok((SimpleFunction::Exp { base: Base::General(base) }.of(arg), false))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let word = self.word().to_owned();
                let func = match word.as_str() {
                    "e" => {
                        if !self.eat(b'^') {
                            return Err(self.err("expected '^' after e"));
                        }
                        let arg = self.exponent_arg()?;
                        return Ok((SimpleFunction::Exp { base: Base::Natural }.of(arg), false));
                    }
                    "ln" => SimpleFunction::Log { base: Base::Natural },
                    "log" => {
                        if !self.eat(b'_') {
                            return Err(self.err("expected '_' after log"));
                        }
                        let a = self.number().filter(|a| *a >= 2).ok_or_else(|| self.err("bad log base"))?;
                        SimpleFunction::Log { base: Base::General(a) }
                    }
                    other => {
                        if let Some(t) = Trig::ALL.iter().find(|t| t.name() == other) {
                            SimpleFunction::Trig { name: *t }
                        } else if let Some(t) = InvTrig::ALL.iter().find(|t| t.name() == other) {
                            SimpleFunction::InvTrig { name: *t }
                        } else {
                            return Err(self.err(&format!("unknown function {other:?}")));
                        }
                    }
                };
                let arg = self.argument()?;
                Ok((func.of(arg), false))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}
