//! A small total expression language.
//!
//! Programs are built from the input `n`, constants, de Bruijn variables,
//! exact arithmetic, pairing, bounded folds, table lookup and calls to other
//! enumerators. There is no unbounded loop, so every program is total; the
//! meter still bounds work because folds may be long.
//!
//! Concrete syntax (s-expressions):
//!
//! ```text
//! n  42  $0                       input, constant, variable
//! (let e body)                    body sees e as $0
//! (fold count init body)          body sees the index as $0 and the accumulator as $1
//! (+ a b) (- a b) (* a b) (/ a b) (% a b) (pow a b) (gcd a b)
//! (= a b) (< a b) (<= a b) (min a b) (max a b) (pair a b)
//! (fst a) (snd a) (totient a) (isqrt a) (log2 a) (num a) (den a)
//! (if c a b)                      a when c ≠ 0
//! (table (v0 v1 …) e)             v[e mod len]
//! ```
//!
//! Subtraction is truncated at 0 and division or remainder by 0 yields 0.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Enumerate, Enumerator, MachineError, Meter};
use crate::codes::{decode_fraction, pair, totient, unpair};
use crate::Nat;

/// Results of `pow` larger than this many bits are rejected.
const POW_BIT_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
    Gcd,
    Eq,
    Lt,
    Le,
    Min,
    Max,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnOp {
    Fst,
    Snd,
    Totient,
    Isqrt,
    Log2,
    FracNum,
    FracDen,
}

#[derive(Clone, Debug)]
pub enum Expr {
    Input,
    Const(Nat),
    Var(usize),
    Let(Box<Expr>, Box<Expr>),
    Fold { count: Box<Expr>, init: Box<Expr>, body: Box<Expr> },
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Un(UnOp, Box<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    Table(Vec<Nat>, Box<Expr>),
    Call(Enumerator, Box<Expr>),
}

pub(crate) fn boxed(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl Expr {
    pub fn konst(c: impl Into<Nat>) -> Expr {
        Expr::Const(c.into())
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, boxed(a), boxed(b))
    }

    pub fn un(op: UnOp, a: Expr) -> Expr {
        Expr::Un(op, boxed(a))
    }

    pub fn let_in(value: Expr, body: Expr) -> Expr {
        Expr::Let(boxed(value), boxed(body))
    }

    pub fn fold(count: Expr, init: Expr, body: Expr) -> Expr {
        Expr::Fold { count: boxed(count), init: boxed(init), body: boxed(body) }
    }

    pub fn cond(c: Expr, then: Expr, otherwise: Expr) -> Expr {
        Expr::If(boxed(c), boxed(then), boxed(otherwise))
    }

    pub fn call(e: Enumerator, arg: Expr) -> Expr {
        Expr::Call(e, boxed(arg))
    }

    /// Number of nodes; with every node visited once this is the step count.
    pub fn size(&self) -> usize {
        1 + match self {
            Expr::Input | Expr::Const(_) | Expr::Var(_) => 0,
            Expr::Let(a, b) | Expr::Bin(_, a, b) => a.size() + b.size(),
            Expr::Fold { count, init, body } => count.size() + init.size() + body.size(),
            Expr::Un(_, a) | Expr::Table(_, a) | Expr::Call(_, a) => a.size(),
            Expr::If(c, a, b) => c.size() + a.size() + b.size(),
        }
    }

    fn run(&self, input: &Nat, env: &mut Vec<Nat>, meter: &mut Meter) -> Result<Nat, MachineError> {
        meter.tick()?;
        match self {
            Expr::Input => Ok(input.clone()),
            Expr::Const(c) => Ok(c.clone()),
            Expr::Var(k) => env
                .len()
                .checked_sub(k + 1)
                .map(|i| env[i].clone())
                .ok_or(MachineError::UnboundVariable(*k)),
            Expr::Let(value, body) => {
                let v = value.run(input, env, meter)?;
                env.push(v);
                let out = body.run(input, env, meter);
                env.pop();
                out
            }
            Expr::Fold { count, init, body } => {
                let c = count.run(input, env, meter)?;
                let c = c.to_u64().ok_or(MachineError::OutOfRange { op: "fold", arg: c })?;
                let mut acc = init.run(input, env, meter)?;
                for i in 0..c {
                    env.push(acc);
                    env.push(Nat::from(i));
                    let next = body.run(input, env, meter);
                    env.pop();
                    env.pop();
                    acc = next?;
                }
                Ok(acc)
            }
            Expr::Bin(op, a, b) => {
                let x = a.run(input, env, meter)?;
                let y = b.run(input, env, meter)?;
                apply_bin(*op, x, y)
            }
            Expr::Un(op, a) => {
                let x = a.run(input, env, meter)?;
                apply_un(*op, x)
            }
            Expr::If(c, a, b) => {
                if c.run(input, env, meter)?.is_zero() {
                    b.run(input, env, meter)
                } else {
                    a.run(input, env, meter)
                }
            }
            Expr::Table(values, a) => {
                if values.is_empty() {
                    return Err(MachineError::EmptyTable);
                }
                let i = a.run(input, env, meter)? % values.len();
                Ok(values[i.to_usize().unwrap_or(0)].clone())
            }
            Expr::Call(e, a) => {
                let x = a.run(input, env, meter)?;
                e.eval_metered(&x, meter)
            }
        }
    }
}

fn truth(b: bool) -> Nat {
    Nat::from(b as u32)
}

fn apply_bin(op: BinOp, x: Nat, y: Nat) -> Result<Nat, MachineError> {
    Ok(match op {
        BinOp::Add => x + y,
        BinOp::Sub => {
            if x > y {
                x - y
            } else {
                Nat::zero()
            }
        }
        BinOp::Mul => x * y,
        BinOp::Div => {
            if y.is_zero() {
                y
            } else {
                x / y
            }
        }
        BinOp::Mod => {
            if y.is_zero() {
                y
            } else {
                x % y
            }
        }
        BinOp::Pow => {
            let e = y
                .to_u32()
                .filter(|&e| x.bits().saturating_mul(e as u64) <= POW_BIT_LIMIT)
                .ok_or(MachineError::OutOfRange { op: "pow", arg: y })?;
            x.pow(e)
        }
        BinOp::Gcd => x.gcd(&y),
        BinOp::Eq => truth(x == y),
        BinOp::Lt => truth(x < y),
        BinOp::Le => truth(x <= y),
        BinOp::Min => x.min(y),
        BinOp::Max => x.max(y),
        BinOp::Pair => pair(&x, &y),
    })
}

fn apply_un(op: UnOp, x: Nat) -> Result<Nat, MachineError> {
    Ok(match op {
        UnOp::Fst => unpair(&x).0,
        UnOp::Snd => unpair(&x).1,
        UnOp::Totient => {
            let v = x
                .to_u64()
                .ok_or_else(|| MachineError::OutOfRange { op: "totient", arg: x.clone() })?;
            Nat::from(totient(v))
        }
        UnOp::Isqrt => x.sqrt(),
        UnOp::Log2 => Nat::from(x.bits().saturating_sub(1)),
        UnOp::FracNum => {
            let q = decode_fraction(&x)?;
            q.numer().magnitude().clone()
        }
        UnOp::FracDen => {
            let q = decode_fraction(&x)?;
            q.denom().magnitude().clone()
        }
    })
}

impl Enumerate for Expr {
    fn eval(&self, n: &Nat, meter: &mut Meter) -> Result<Nat, MachineError> {
        self.run(n, &mut Vec::new(), meter)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl BinOp {
    const ALL: [BinOp; 13] = [
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
        BinOp::Mod,
        BinOp::Pow,
        BinOp::Gcd,
        BinOp::Eq,
        BinOp::Lt,
        BinOp::Le,
        BinOp::Min,
        BinOp::Max,
        BinOp::Pair,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::Pow => "pow",
            BinOp::Gcd => "gcd",
            BinOp::Eq => "=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Min => "min",
            BinOp::Max => "max",
            BinOp::Pair => "pair",
        }
    }
}

impl UnOp {
    const ALL: [UnOp; 7] = [
        UnOp::Fst,
        UnOp::Snd,
        UnOp::Totient,
        UnOp::Isqrt,
        UnOp::Log2,
        UnOp::FracNum,
        UnOp::FracDen,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            UnOp::Fst => "fst",
            UnOp::Snd => "snd",
            UnOp::Totient => "totient",
            UnOp::Isqrt => "isqrt",
            UnOp::Log2 => "log2",
            UnOp::FracNum => "num",
            UnOp::FracDen => "den",
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Input => f.write_str("n"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(k) => write!(f, "${k}"),
            Expr::Let(a, b) => write!(f, "(let {a} {b})"),
            Expr::Fold { count, init, body } => write!(f, "(fold {count} {init} {body})"),
            Expr::Bin(op, a, b) => write!(f, "({} {a} {b})", op.symbol()),
            Expr::Un(op, a) => write!(f, "({} {a})", op.symbol()),
            Expr::If(c, a, b) => write!(f, "(if {c} {a} {b})"),
            Expr::Table(values, a) => {
                f.write_str("(table (")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ") {a})")
            }
            Expr::Call(e, a) => write!(f, "(call <{}> {a})", e.describe()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {at}: {message}")]
pub struct ParseError {
    pub at: usize,
    pub message: String,
}

enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

fn tokenize(src: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in src.char_indices() {
        let delim = c == '(' || c == ')' || c.is_whitespace();
        if delim {
            if let Some(s) = start.take() {
                out.push((s, &src[s..i]));
            }
            if !c.is_whitespace() {
                out.push((i, &src[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &src[s..]));
    }
    out
}

fn err(at: usize, message: impl Into<String>) -> ParseError {
    ParseError { at, message: message.into() }
}

fn read(tokens: &[(usize, &str)], pos: &mut usize, end: usize) -> Result<Sexp, ParseError> {
    let &(at, tok) = tokens.get(*pos).ok_or_else(|| err(end, "unexpected end of input"))?;
    *pos += 1;
    match tok {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(err(at, "unclosed parenthesis")),
                    Some(&(_, ")")) => {
                        *pos += 1;
                        return Ok(Sexp::List(items, at));
                    }
                    Some(_) => items.push(read(tokens, pos, end)?),
                }
            }
        }
        ")" => Err(err(at, "unexpected ')'")),
        _ => Ok(Sexp::Atom(tok.to_string(), at)),
    }
}

fn build(s: &Sexp) -> Result<Expr, ParseError> {
    match s {
        Sexp::Atom(a, at) => {
            if a == "n" {
                Ok(Expr::Input)
            } else if let Some(k) = a.strip_prefix('$') {
                k.parse().map(Expr::Var).map_err(|_| err(*at, format!("bad variable {a}")))
            } else {
                a.parse::<Nat>()
                    .map(Expr::Const)
                    .map_err(|_| err(*at, format!("unknown atom {a}")))
            }
        }
        Sexp::List(items, at) => {
            let (head, args) = match items.split_first() {
                Some((Sexp::Atom(h, _), rest)) => (h.as_str(), rest),
                _ => return Err(err(*at, "expected an operator")),
            };
            let arity = |k: usize| {
                if args.len() == k {
                    Ok(())
                } else {
                    Err(err(*at, format!("{head} takes {k} arguments, got {}", args.len())))
                }
            };
            let sub = |i: usize| build(&args[i]).map(boxed);
            if let Some(op) = BinOp::ALL.iter().find(|o| o.symbol() == head) {
                arity(2)?;
                return Ok(Expr::Bin(*op, sub(0)?, sub(1)?));
            }
            if let Some(op) = UnOp::ALL.iter().find(|o| o.symbol() == head) {
                arity(1)?;
                return Ok(Expr::Un(*op, sub(0)?));
            }
            match head {
                "let" => {
                    arity(2)?;
                    Ok(Expr::Let(sub(0)?, sub(1)?))
                }
                "fold" => {
                    arity(3)?;
                    Ok(Expr::Fold { count: sub(0)?, init: sub(1)?, body: sub(2)? })
                }
                "if" => {
                    arity(3)?;
                    Ok(Expr::If(sub(0)?, sub(1)?, sub(2)?))
                }
                "table" => {
                    arity(2)?;
                    let values = match &args[0] {
                        Sexp::List(vs, _) => vs
                            .iter()
                            .map(|v| match v {
                                Sexp::Atom(a, at) => {
                                    a.parse::<Nat>().map_err(|_| err(*at, "table entries are numerals"))
                                }
                                Sexp::List(_, at) => Err(err(*at, "table entries are numerals")),
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                        Sexp::Atom(_, at) => return Err(err(*at, "table expects a list of numerals")),
                    };
                    if values.is_empty() {
                        return Err(err(*at, "table needs at least one entry"));
                    }
                    Ok(Expr::Table(values, sub(1)?))
                }
                _ => Err(err(*at, format!("unknown operator {head}"))),
            }
        }
    }
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(src);
        let mut pos = 0;
        let s = read(&tokens, &mut pos, src.len())?;
        if let Some(&(at, _)) = tokens.get(pos) {
            return Err(err(at, "trailing input"));
        }
        build(&s)
    }
}
