//! The `eval` mini-language.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? int)?
//! atom  := number | 'i' | 'k' | 'm' | gen | call | '(' expr ')'
//! gen   := 'L[' m ',' n ']' | 'v[' m ']' | 'M[' m ',' n ']' | 'P[' m ']' | 'A' | 'x[' m ']'
//! call  := name '(' expr (',' expr)* ')'
//! ```

use kappa_core::duality::Duality;
use kappa_core::hopfcore::{AlgebraElement, HopfPresentation, TensorElement};
use kappa_core::kminkowski::{deformed_derivative, hat_element, Deriv, NormalSymbol, XLowering};
use kappa_core::Coefficient;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("{0}")]
    Engine(String),
}

impl EvalError {
    /// Parse and type errors are usage errors; engine failures are not.
    pub fn is_usage(&self) -> bool {
        !matches!(self, EvalError::Engine(_))
    }
}

fn engine<E: std::fmt::Display>(e: E) -> EvalError {
    EvalError::Engine(e.to_string())
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(Coefficient),
    Alg(AlgebraElement),
    Grp(AlgebraElement),
    Mink(NormalSymbol),
    AlgTensor(TensorElement),
    GrpTensor(TensorElement),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "a scalar",
            Value::Alg(_) => "an algebra element",
            Value::Grp(_) => "a group element",
            Value::Mink(_) => "a kappa-Minkowski symbol",
            Value::AlgTensor(_) => "an algebra tensor",
            Value::GrpTensor(_) => "a group tensor",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, EvalError> {
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
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| EvalError::Parse { pos: start, msg: "integer too large".into() })?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(EvalError::Parse { pos: i, msg: format!("unexpected character '{}'", c) });
        }
    }
    Ok(out)
}

pub struct Evaluator {
    d: Duality,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator { d: Duality::new() }
    }

    fn alg(&self) -> &HopfPresentation {
        &self.d.alg.pres
    }

    fn grp(&self) -> &HopfPresentation {
        &self.d.grp.pres
    }

    /// Parses and evaluates `src`, returning the canonical rendering.
    pub fn eval(&self, src: &str) -> Result<String, EvalError> {
        let toks = lex(src)?;
        let mut p = Parser { toks, at: 0, end: src.chars().count(), ev: self };
        let v = p.expr()?;
        if p.at < p.toks.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(self.render(&v))
    }

    fn render(&self, v: &Value) -> String {
        match v {
            Value::Scalar(c) => c.to_string(),
            Value::Alg(e) => self.alg().render(e),
            Value::Grp(e) => self.grp().render(e),
            Value::Mink(s) => s.to_string(),
            Value::AlgTensor(t) => self.alg().render_tensor(t),
            Value::GrpTensor(t) => self.grp().render_tensor(t),
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value, EvalError> {
        use Value::*;
        Ok(match (a, b) {
            (Scalar(x), Scalar(y)) => Scalar(x.add_ref(&y)),
            (Alg(x), Alg(y)) => Alg(x.add(&y)),
            (Grp(x), Grp(y)) => Grp(x.add(&y)),
            (Mink(x), Mink(y)) => Mink(x.add(&y).map_err(engine)?),
            (AlgTensor(x), AlgTensor(y)) => AlgTensor(x.add(&y)),
            (GrpTensor(x), GrpTensor(y)) => GrpTensor(x.add(&y)),
            (Scalar(c), Alg(x)) | (Alg(x), Scalar(c)) => Alg(x.add(&AlgebraElement::scalar(c))),
            (Scalar(c), Grp(x)) | (Grp(x), Scalar(c)) => Grp(x.add(&AlgebraElement::scalar(c))),
            (Scalar(c), Mink(x)) | (Mink(x), Scalar(c)) => Mink(x.add(&NormalSymbol::scalar(c)).map_err(engine)?),
            (a, b) => return Err(EvalError::Type(format!("cannot add {} and {}", a.kind(), b.kind()))),
        })
    }

    fn scale(&self, v: Value, c: &Coefficient) -> Value {
        match v {
            Value::Scalar(x) => Value::Scalar(x.mul_ref(c)),
            Value::Alg(x) => Value::Alg(x.scale(c)),
            Value::Grp(x) => Value::Grp(x.scale(c)),
            Value::Mink(x) => Value::Mink(x.scale(c)),
            Value::AlgTensor(x) => Value::AlgTensor(x.scale(c)),
            Value::GrpTensor(x) => Value::GrpTensor(x.scale(c)),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value, EvalError> {
        use Value::*;
        Ok(match (a, b) {
            (Scalar(c), v) | (v, Scalar(c)) => self.scale(v, &c),
            (Alg(x), Alg(y)) => Alg(self.alg().multiply(&x, &y).map_err(engine)?),
            (Grp(x), Grp(y)) => Grp(self.grp().multiply(&x, &y).map_err(engine)?),
            (Mink(x), Mink(y)) => Mink(x.star(&y).map_err(engine)?),
            (AlgTensor(x), AlgTensor(y)) => AlgTensor(self.alg().tensor_mul(&x, &y).map_err(engine)?),
            (GrpTensor(x), GrpTensor(y)) => GrpTensor(self.grp().tensor_mul(&x, &y).map_err(engine)?),
            (a, b) => return Err(EvalError::Type(format!("cannot multiply {} by {}", a.kind(), b.kind()))),
        })
    }

    fn inverse(&self, v: Value) -> Result<Value, EvalError> {
        match v {
            Value::Scalar(c) => Ok(Value::Scalar(c.inv().map_err(engine)?)),
            Value::Alg(x) if x == self.d.alg.a() => Ok(Value::Alg(self.d.alg.a_inv())),
            Value::Alg(x) if x == self.d.alg.a_inv() => Ok(Value::Alg(self.d.alg.a())),
            v => Err(EvalError::Type(format!("only scalars and A can be inverted, not {}", v.kind()))),
        }
    }

    fn commutator(&self, a: Value, b: Value) -> Result<Value, EvalError> {
        let ab = self.mul(a.clone(), b.clone())?;
        let ba = self.mul(b, a)?;
        self.add(ab, self.scale(ba, &Coefficient::from_int(-1)))
    }

    fn call(&self, name: &str, args: Vec<Value>) -> Result<Value, EvalError> {
        let arity = |n: usize| -> Result<(), EvalError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(EvalError::Type(format!("{} takes {} argument(s), got {}", name, n, args.len())))
            }
        };
        let mut it = args.clone().into_iter();
        match name {
            "comm" => {
                arity(2)?;
                self.commutator(it.next().unwrap(), it.next().unwrap())
            }
            "pair" => {
                arity(2)?;
                match (it.next().unwrap(), it.next().unwrap()) {
                    (Value::Alg(x), Value::Grp(f)) => Ok(Value::Scalar(self.d.pair(&x, &f).map_err(engine)?)),
                    (a, b) => Err(EvalError::Type(format!(
                        "pair takes an algebra element and a group element, got {} and {}",
                        a.kind(),
                        b.kind()
                    ))),
                }
            }
            "delta" => {
                arity(1)?;
                match it.next().unwrap() {
                    Value::Alg(x) => Ok(Value::AlgTensor(self.alg().coproduct(&x).map_err(engine)?)),
                    Value::Grp(x) => Ok(Value::GrpTensor(self.grp().coproduct(&x).map_err(engine)?)),
                    v => Err(EvalError::Type(format!("delta is defined on algebra and group elements, not {}", v.kind()))),
                }
            }
            "S" => {
                arity(1)?;
                match it.next().unwrap() {
                    Value::Alg(x) => Ok(Value::Alg(self.alg().antipode(&x).map_err(engine)?)),
                    Value::Grp(x) => Ok(Value::Grp(self.grp().antipode(&x).map_err(engine)?)),
                    v => Err(EvalError::Type(format!("S is defined on algebra and group elements, not {}", v.kind()))),
                }
            }
            "eps" => {
                arity(1)?;
                match it.next().unwrap() {
                    Value::Alg(x) => Ok(Value::Scalar(self.alg().counit(&x).map_err(engine)?)),
                    Value::Grp(x) => Ok(Value::Scalar(self.grp().counit(&x).map_err(engine)?)),
                    Value::Scalar(c) => Ok(Value::Scalar(c)),
                    v => Err(EvalError::Type(format!("eps is defined on algebra and group elements, not {}", v.kind()))),
                }
            }
            "hat" => {
                arity(2)?;
                match (it.next().unwrap(), it.next().unwrap()) {
                    (Value::Alg(x), Value::Mink(f)) => {
                        Ok(Value::Mink(hat_element(&self.d.alg, &x, &f, XLowering::Metric).map_err(engine)?))
                    }
                    (Value::Alg(x), Value::Scalar(c)) => Ok(Value::Mink(
                        hat_element(&self.d.alg, &x, &NormalSymbol::scalar(c), XLowering::Metric).map_err(engine)?,
                    )),
                    (a, b) => Err(EvalError::Type(format!(
                        "hat takes an algebra element and a kappa-Minkowski symbol, got {} and {}",
                        a.kind(),
                        b.kind()
                    ))),
                }
            }
            "dd0" | "box" => {
                arity(1)?;
                let which = if name == "dd0" { Deriv::D0 } else { Deriv::Box };
                let f = self.symbol_arg(name, it.next().unwrap())?;
                Ok(Value::Mink(deformed_derivative(which, &f).map_err(engine)?))
            }
            "ddi" => {
                arity(2)?;
                let j = match it.next().unwrap() {
                    Value::Scalar(c) => small_index(&c).filter(|j| (1..4).contains(j)),
                    _ => None,
                }
                .ok_or_else(|| EvalError::Type("ddi takes a spatial index 1, 2 or 3 first".into()))?;
                let f = self.symbol_arg(name, it.next().unwrap())?;
                Ok(Value::Mink(deformed_derivative(Deriv::D(j), &f).map_err(engine)?))
            }
            other => Err(EvalError::Type(format!("unknown function '{}'", other))),
        }
    }

    fn symbol_arg(&self, name: &str, v: Value) -> Result<NormalSymbol, EvalError> {
        match v {
            Value::Mink(f) => Ok(f),
            Value::Scalar(c) => Ok(NormalSymbol::scalar(c)),
            v => Err(EvalError::Type(format!("{} acts on kappa-Minkowski symbols, not {}", name, v.kind()))),
        }
    }
}

fn small_index(c: &Coefficient) -> Option<usize> {
    (0..4).find(|&n| c.sub_ref(&Coefficient::from_int(n as i64)).is_zero())
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ev: &'a Evaluator,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err(&self, msg: &str) -> EvalError {
        EvalError::Parse { pos: self.pos(), msg: msg.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), EvalError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c)))
        }
    }

    fn int(&mut self) -> Result<i64, EvalError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn index(&mut self) -> Result<usize, EvalError> {
        let pos = self.pos();
        let n = self.int()?;
        if (0..4).contains(&n) {
            Ok(n as usize)
        } else {
            Err(EvalError::Parse { pos, msg: format!("index {} out of range 0..3", n) })
        }
    }

    fn indices(&mut self, n: usize) -> Result<Vec<usize>, EvalError> {
        self.expect('[')?;
        let mut out = vec![self.index()?];
        for _ in 1..n {
            self.expect(',')?;
            out.push(self.index()?);
        }
        self.expect(']')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<Value, EvalError> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                let r = self.term()?;
                v = self.ev.add(v, r)?;
            } else if self.eat('-') {
                let r = self.term()?;
                v = self.ev.add(v, self.ev.scale(r, &Coefficient::from_int(-1)))?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<Value, EvalError> {
        let mut v = self.unary()?;
        loop {
            if self.eat('*') {
                let r = self.unary()?;
                v = self.ev.mul(v, r)?;
            } else if self.eat('/') {
                let r = self.unary()?;
                let inv = self.ev.inverse(r)?;
                v = self.ev.mul(v, inv)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, EvalError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.ev.scale(v, &Coefficient::from_int(-1)));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let n = self.int()?;
        let base = if neg { self.ev.inverse(base)? } else { base };
        let mut v = Value::Scalar(Coefficient::one());
        for _ in 0..n {
            v = self.ev.mul(v, base.clone())?;
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Value, EvalError> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.at += 1;
        let ev = self.ev;
        match tok {
            Tok::Int(n) => Ok(Value::Scalar(Coefficient::from_int(n))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Sym(c) => Err(EvalError::Parse { pos, msg: format!("unexpected '{}'", c) }),
            Tok::Ident(name) => {
                if self.peek() == Some(&Tok::Sym('(')) {
                    self.at += 1;
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    return ev.call(&name, args);
                }
                match name.as_str() {
                    "i" => Ok(Value::Scalar(Coefficient::i())),
                    "k" => Ok(Value::Scalar(Coefficient::kappa())),
                    "m" => Ok(Value::Scalar(Coefficient::mass())),
                    "A" => Ok(Value::Alg(ev.d.alg.a())),
                    "P" => {
                        let ix = self.indices(1)?;
                        Ok(Value::Alg(ev.d.alg.p(ix[0])))
                    }
                    "M" => {
                        let ix = self.indices(2)?;
                        Ok(Value::Alg(ev.d.alg.m(ix[0], ix[1])))
                    }
                    "L" => {
                        let ix = self.indices(2)?;
                        Ok(Value::Grp(ev.d.grp.lambda_el(ix[0], ix[1])))
                    }
                    "v" => {
                        let ix = self.indices(1)?;
                        Ok(Value::Grp(ev.d.grp.v_el(ix[0])))
                    }
                    "x" => {
                        let ix = self.indices(1)?;
                        Ok(Value::Mink(NormalSymbol::x(ix[0])))
                    }
                    other => Err(EvalError::Parse { pos, msg: format!("unknown name '{}'", other) }),
                }
            }
        }
    }
}
