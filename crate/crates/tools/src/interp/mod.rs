//! A small interpreter for a Python subset: integers, strings, booleans,
//! lists and tuples; `if`/`while`/`for`/`def`; comprehensions; and the
//! common builtins and string/list methods. There are no floats, so true
//! division is rejected. Execution is bounded by a step budget and a
//! recursion limit.

mod ast;
mod lexer;
mod parser;
mod value;

use std::collections::HashMap;
use std::rc::Rc;

use ast::{BinOp, CmpOp, Expr, Stmt, Target};
pub use value::Value;
use value::{py_cmp, py_eq, range_len};

use crate::error::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: u64,
    pub max_depth: usize,
    pub max_len: usize,
    pub max_output: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: 5_000_000,
            max_depth: 200,
            max_len: 1_000_000,
            max_output: 100_000,
        }
    }
}

/// Runs `code` and returns captured stdout minus one trailing newline.
pub fn run(code: &str) -> Result<String, ToolError> {
    run_with_limits(code, Limits::default())
}

/// Evaluation recurses on the native stack, so it runs on its own thread
/// with room for `max_depth` nested calls.
pub fn run_with_limits(code: &str, limits: Limits) -> Result<String, ToolError> {
    let code = code.to_string();
    std::thread::Builder::new()
        .name("interp".into())
        .stack_size(STACK_BYTES)
        .spawn(move || execute(&code, limits))
        .map_err(|e| ToolError::Runtime(format!("could not start interpreter: {e}")))?
        .join()
        .unwrap_or_else(|_| Err(ToolError::Runtime("interpreter panicked".into())))
}

const STACK_BYTES: usize = 256 * 1024 * 1024;

fn execute(code: &str, limits: Limits) -> Result<String, ToolError> {
    let toks = lexer::lex(code)?;
    let program = parser::Parser::new(toks).program()?;
    let mut it = Interp {
        globals: HashMap::new(),
        frames: Vec::new(),
        out: String::new(),
        steps: 0,
        limits,
    };
    match it.block(&program)? {
        Flow::Normal => {}
        Flow::Return(_) => return Err(ToolError::Parse("'return' outside function".into())),
        Flow::Break | Flow::Continue => {
            return Err(ToolError::Parse("'break' outside loop".into()))
        }
    }
    let mut out = it.out;
    if out.ends_with('\n') {
        out.pop();
    }
    Ok(out)
}

const BUILTINS: &[&str] = &[
    "print",
    "len",
    "range",
    "sum",
    "min",
    "max",
    "abs",
    "str",
    "int",
    "bool",
    "sorted",
    "reversed",
    "list",
    "tuple",
    "enumerate",
    "zip",
    "pow",
    "divmod",
    "repr",
    "any",
    "all",
];

enum Flow {
    Normal,
    Break,
    Continue,
    Return(Value),
}

fn rt(kind: &str, msg: impl std::fmt::Display) -> ToolError {
    ToolError::Runtime(format!("{kind}: {msg}"))
}

fn type_err(msg: impl std::fmt::Display) -> ToolError {
    rt("TypeError", msg)
}

fn overflow() -> ToolError {
    rt("OverflowError", "integer result exceeds 64 bits")
}

struct Interp {
    globals: HashMap<Rc<str>, Value>,
    frames: Vec<HashMap<Rc<str>, Value>>,
    out: String,
    steps: u64,
    limits: Limits,
}

type R<T> = Result<T, ToolError>;

impl Interp {
    fn tick(&mut self) -> R<()> {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return Err(ToolError::Timeout(self.limits.max_steps));
        }
        Ok(())
    }

    fn check_len(&self, n: usize) -> R<()> {
        if n > self.limits.max_len {
            return Err(rt(
                "MemoryError",
                format!("sequence longer than {}", self.limits.max_len),
            ));
        }
        Ok(())
    }

    fn lookup(&self, name: &str) -> R<Value> {
        if let Some(v) = self.frames.last().and_then(|f| f.get(name)) {
            return Ok(v.clone());
        }
        if let Some(v) = self.globals.get(name) {
            return Ok(v.clone());
        }
        if let Some(b) = BUILTINS.iter().find(|b| **b == name) {
            return Ok(Value::Builtin(b));
        }
        Err(rt("NameError", format!("name '{name}' is not defined")))
    }

    fn bind(&mut self, name: &Rc<str>, v: Value) {
        match self.frames.last_mut() {
            Some(f) => f.insert(name.clone(), v),
            None => self.globals.insert(name.clone(), v),
        };
    }

    /// Current binding of a name in the innermost scope, for comprehension
    /// variables which must not leak.
    fn local_binding(&self, name: &str) -> Option<Value> {
        match self.frames.last() {
            Some(f) => f.get(name).cloned(),
            None => self.globals.get(name).cloned(),
        }
    }

    fn unbind(&mut self, name: &Rc<str>) {
        match self.frames.last_mut() {
            Some(f) => f.remove(name),
            None => self.globals.remove(name),
        };
    }

    fn block(&mut self, stmts: &[Stmt]) -> R<Flow> {
        for s in stmts {
            match self.stmt(s)? {
                Flow::Normal => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    fn stmt(&mut self, s: &Stmt) -> R<Flow> {
        self.tick()?;
        match s {
            Stmt::Expr(e, _) => {
                self.eval(e)?;
            }
            Stmt::Assign(targets, e, _) => {
                let v = self.eval(e)?;
                for t in targets {
                    self.assign(t, v.clone())?;
                }
            }
            Stmt::AugAssign(t, op, e, _) => match t {
                Target::Name(n) => {
                    let cur = self.lookup(n)?;
                    let rhs = self.eval(e)?;
                    let new = self.augmented(*op, cur, rhs)?;
                    self.bind(n, new);
                }
                Target::Index(obj, idx) => {
                    let o = self.eval(obj)?;
                    let i = self.eval(idx)?;
                    let cur = self.index(&o, &i)?;
                    let rhs = self.eval(e)?;
                    let new = self.augmented(*op, cur, rhs)?;
                    self.set_index(&o, &i, new)?;
                }
                Target::Tuple(_) => return Err(type_err("illegal augmented assignment")),
            },
            Stmt::If(branches, other, _) => {
                for (cond, body) in branches {
                    if self.eval(cond)?.truthy() {
                        return self.block(body);
                    }
                }
                return self.block(other);
            }
            Stmt::While(cond, body, _) => {
                while self.eval(cond)?.truthy() {
                    self.tick()?;
                    match self.block(body)? {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        Flow::Normal | Flow::Continue => {}
                    }
                }
            }
            Stmt::For(target, iter, body, _) => {
                let it = self.eval(iter)?;
                for item in self.iterate(&it)? {
                    self.tick()?;
                    self.assign(target, item)?;
                    match self.block(body)? {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        Flow::Normal | Flow::Continue => {}
                    }
                }
            }
            Stmt::Def(f, _) => self.bind(&f.name, Value::Func(f.clone())),
            Stmt::Return(e, _) => {
                if self.frames.is_empty() {
                    return Err(ToolError::Parse("'return' outside function".into()));
                }
                let v = match e {
                    Some(e) => self.eval(e)?,
                    None => Value::None,
                };
                return Ok(Flow::Return(v));
            }
            Stmt::Break => return Ok(Flow::Break),
            Stmt::Continue => return Ok(Flow::Continue),
            Stmt::Pass => {}
        }
        Ok(Flow::Normal)
    }

    /// `+=` on a list extends it in place, like `list.__iadd__`.
    fn augmented(&mut self, op: BinOp, cur: Value, rhs: Value) -> R<Value> {
        if let (BinOp::Add, Value::List(l)) = (op, &cur) {
            let items = self.iterate(&rhs)?;
            let new_len = l.borrow().len() + items.len();
            self.check_len(new_len)?;
            l.borrow_mut().extend(items);
            return Ok(cur);
        }
        self.binop(op, cur, rhs)
    }

    fn assign(&mut self, t: &Target, v: Value) -> R<()> {
        match t {
            Target::Name(n) => {
                self.bind(n, v);
                Ok(())
            }
            Target::Index(obj, idx) => {
                let o = self.eval(obj)?;
                let i = self.eval(idx)?;
                self.set_index(&o, &i, v)
            }
            Target::Tuple(targets) => {
                let items = self.iterate(&v)?;
                if items.len() != targets.len() {
                    return Err(rt(
                        "ValueError",
                        format!(
                            "expected {} values to unpack, got {}",
                            targets.len(),
                            items.len()
                        ),
                    ));
                }
                for (t, item) in targets.iter().zip(items) {
                    self.assign(t, item)?;
                }
                Ok(())
            }
        }
    }

    fn iterate(&mut self, v: &Value) -> R<Vec<Value>> {
        Ok(match v {
            Value::List(l) => l.borrow().clone(),
            Value::Tuple(t) => t.as_ref().clone(),
            Value::Str(s) => s.chars().map(|c| Value::str(c.to_string())).collect(),
            Value::Range(a, _, step) => {
                let n = range_len(v);
                self.check_len(n as usize)?;
                (0..n).map(|i| Value::Int(a + i * step)).collect()
            }
            other => {
                return Err(type_err(format!(
                    "'{}' object is not iterable",
                    other.type_name()
                )))
            }
        })
    }

    fn eval(&mut self, e: &Expr) -> R<Value> {
        Ok(match e {
            Expr::Int(v) => Value::Int(*v),
            Expr::Str(s) => Value::Str(s.clone()),
            Expr::Bool(b) => Value::Bool(*b),
            Expr::None => Value::None,
            Expr::Name(n) => self.lookup(n)?,
            Expr::List(items) => {
                let v = items.iter().map(|i| self.eval(i)).collect::<R<Vec<_>>>()?;
                Value::list(v)
            }
            Expr::Tuple(items) => Value::Tuple(Rc::new(
                items.iter().map(|i| self.eval(i)).collect::<R<Vec<_>>>()?,
            )),
            Expr::Neg(x) => match self.eval(x)?.as_int() {
                Some(v) => Value::Int(v.checked_neg().ok_or_else(overflow)?),
                None => return Err(type_err("bad operand type for unary -")),
            },
            Expr::Not(x) => Value::Bool(!self.eval(x)?.truthy()),
            Expr::Bin(op, a, b) => {
                let a = self.eval(a)?;
                let b = self.eval(b)?;
                self.binop(*op, a, b)?
            }
            Expr::And(a, b) => {
                let l = self.eval(a)?;
                if l.truthy() {
                    self.eval(b)?
                } else {
                    l
                }
            }
            Expr::Or(a, b) => {
                let l = self.eval(a)?;
                if l.truthy() {
                    l
                } else {
                    self.eval(b)?
                }
            }
            Expr::Compare(first, rest) => {
                let mut left = self.eval(first)?;
                for (op, rhs) in rest {
                    let right = self.eval(rhs)?;
                    if !self.compare(*op, &left, &right)? {
                        return Ok(Value::Bool(false));
                    }
                    left = right;
                }
                Value::Bool(true)
            }
            Expr::IfExp { cond, then, other } => {
                if self.eval(cond)?.truthy() {
                    self.eval(then)?
                } else {
                    self.eval(other)?
                }
            }
            Expr::Call { func, args, kwargs } => {
                let f = self.eval(func)?;
                let args = args.iter().map(|a| self.eval(a)).collect::<R<Vec<_>>>()?;
                let mut kw = Vec::new();
                for (k, v) in kwargs {
                    kw.push((k.clone(), self.eval(v)?));
                }
                self.call(f, args, kw)?
            }
            Expr::Method {
                obj,
                name,
                args,
                kwargs,
            } => {
                let o = self.eval(obj)?;
                let args = args.iter().map(|a| self.eval(a)).collect::<R<Vec<_>>>()?;
                let mut kw = Vec::new();
                for (k, v) in kwargs {
                    kw.push((k.clone(), self.eval(v)?));
                }
                self.method(&o, name, args, kw)?
            }
            Expr::Index(obj, idx) => {
                let o = self.eval(obj)?;
                let i = self.eval(idx)?;
                self.index(&o, &i)?
            }
            Expr::Slice { obj, lo, hi, step } => {
                let o = self.eval(obj)?;
                let mut opt = |e: &Option<Box<Expr>>| -> R<Option<i64>> {
                    match e {
                        None => Ok(None),
                        Some(e) => match self.eval(e)? {
                            Value::None => Ok(None),
                            v => v
                                .as_int()
                                .map(Some)
                                .ok_or_else(|| type_err("slice indices must be integers")),
                        },
                    }
                };
                let (lo, hi, step) = (opt(lo)?, opt(hi)?, opt(step)?);
                self.slice(&o, lo, hi, step)?
            }
            Expr::Comp { elt, gens } => {
                let names: Vec<Rc<str>> =
                    gens.iter().flat_map(|g| target_names(&g.target)).collect();
                let saved: Vec<Option<Value>> =
                    names.iter().map(|n| self.local_binding(n)).collect();
                let mut out = Vec::new();
                let res = self.comprehend(elt, gens, &mut out);
                for (n, old) in names.iter().zip(saved) {
                    match old {
                        Some(v) => self.bind(n, v),
                        None => self.unbind(n),
                    }
                }
                res?;
                Value::list(out)
            }
        })
    }

    fn comprehend(
        &mut self,
        elt: &Expr,
        gens: &[ast::Comprehension],
        out: &mut Vec<Value>,
    ) -> R<()> {
        let Some((g, rest)) = gens.split_first() else {
            self.tick()?;
            out.push(self.eval(elt)?);
            return self.check_len(out.len());
        };
        let it = self.eval(&g.iter)?;
        'items: for item in self.iterate(&it)? {
            self.tick()?;
            self.assign(&g.target, item)?;
            for c in &g.conds {
                if !self.eval(c)?.truthy() {
                    continue 'items;
                }
            }
            self.comprehend(elt, rest, out)?;
        }
        Ok(())
    }

    fn compare(&mut self, op: CmpOp, a: &Value, b: &Value) -> R<bool> {
        use std::cmp::Ordering::*;
        let ord = |x: &Value, y: &Value| {
            py_cmp(x, y).ok_or_else(|| {
                type_err(format!(
                    "'<' not supported between instances of '{}' and '{}'",
                    x.type_name(),
                    y.type_name()
                ))
            })
        };
        Ok(match op {
            CmpOp::Eq => py_eq(a, b),
            CmpOp::Ne => !py_eq(a, b),
            CmpOp::Lt => ord(a, b)? == Less,
            CmpOp::Le => ord(a, b)? != Greater,
            CmpOp::Gt => ord(a, b)? == Greater,
            CmpOp::Ge => ord(a, b)? != Less,
            CmpOp::In => self.contains(b, a)?,
            CmpOp::NotIn => !self.contains(b, a)?,
            CmpOp::Is => match (a, b) {
                (Value::None, Value::None) => true,
                (Value::Bool(x), Value::Bool(y)) => x == y,
                (Value::List(x), Value::List(y)) => Rc::ptr_eq(x, y),
                _ => false,
            },
            CmpOp::IsNot => !self.compare(CmpOp::Is, a, b)?,
        })
    }

    fn contains(&mut self, container: &Value, item: &Value) -> R<bool> {
        match (container, item) {
            (Value::Str(s), Value::Str(sub)) => Ok(s.contains(sub.as_ref())),
            (Value::Str(_), _) => Err(type_err("'in <string>' requires string as left operand")),
            (Value::Range(a, _, step), _) => Ok(match item.as_int() {
                Some(x) => {
                    let n = range_len(container);
                    (x - a) % step == 0 && (0..n).contains(&((x - a) / step))
                }
                None => false,
            }),
            _ => Ok(self.iterate(container)?.iter().any(|v| py_eq(v, item))),
        }
    }

    fn binop(&mut self, op: BinOp, a: Value, b: Value) -> R<Value> {
        if let (Some(x), Some(y)) = (a.as_int(), b.as_int()) {
            return int_op(op, x, y);
        }
        match (op, &a, &b) {
            (BinOp::Add, Value::Str(x), Value::Str(y)) => {
                self.check_len(x.len() + y.len())?;
                Ok(Value::str(format!("{x}{y}")))
            }
            (BinOp::Add, Value::List(x), Value::List(y)) => {
                let mut v = x.borrow().clone();
                v.extend(y.borrow().iter().cloned());
                self.check_len(v.len())?;
                Ok(Value::list(v))
            }
            (BinOp::Add, Value::Tuple(x), Value::Tuple(y)) => {
                let mut v = x.as_ref().clone();
                v.extend(y.iter().cloned());
                Ok(Value::Tuple(Rc::new(v)))
            }
            (BinOp::Mul, Value::Str(_), _)
            | (BinOp::Mul, Value::List(_), _)
            | (BinOp::Mul, Value::Tuple(_), _)
                if b.as_int().is_some() =>
            {
                self.repeat(&a, b.as_int().unwrap())
            }
            (BinOp::Mul, _, Value::Str(_))
            | (BinOp::Mul, _, Value::List(_))
            | (BinOp::Mul, _, Value::Tuple(_))
                if a.as_int().is_some() =>
            {
                self.repeat(&b, a.as_int().unwrap())
            }
            _ => Err(type_err(format!(
                "unsupported operand type(s) for {}: '{}' and '{}'",
                op_symbol(op),
                a.type_name(),
                b.type_name()
            ))),
        }
    }

    fn repeat(&mut self, seq: &Value, n: i64) -> R<Value> {
        let n = n.max(0) as usize;
        Ok(match seq {
            Value::Str(s) => {
                self.check_len(s.len().saturating_mul(n))?;
                Value::str(s.repeat(n))
            }
            Value::List(l) => {
                let items = l.borrow();
                self.check_len(items.len().saturating_mul(n))?;
                Value::list(
                    items
                        .iter()
                        .cloned()
                        .cycle()
                        .take(items.len() * n)
                        .collect(),
                )
            }
            Value::Tuple(t) => {
                self.check_len(t.len().saturating_mul(n))?;
                Value::Tuple(Rc::new(
                    t.iter().cloned().cycle().take(t.len() * n).collect(),
                ))
            }
            _ => unreachable!("repeat on a non-sequence"),
        })
    }

    fn norm_index(len: usize, i: &Value) -> R<usize> {
        let i = i
            .as_int()
            .ok_or_else(|| type_err("indices must be integers"))?;
        let idx = if i < 0 { i + len as i64 } else { i };
        if idx < 0 || idx >= len as i64 {
            return Err(rt("IndexError", "index out of range"));
        }
        Ok(idx as usize)
    }

    fn index(&mut self, o: &Value, i: &Value) -> R<Value> {
        match o {
            Value::List(l) => {
                let l = l.borrow();
                Ok(l[Self::norm_index(l.len(), i)?].clone())
            }
            Value::Tuple(t) => Ok(t[Self::norm_index(t.len(), i)?].clone()),
            Value::Str(s) => {
                let chars: Vec<char> = s.chars().collect();
                Ok(Value::str(
                    chars[Self::norm_index(chars.len(), i)?].to_string(),
                ))
            }
            Value::Range(a, _, step) => {
                let k = Self::norm_index(range_len(o) as usize, i)?;
                Ok(Value::Int(a + k as i64 * step))
            }
            other => Err(type_err(format!(
                "'{}' object is not subscriptable",
                other.type_name()
            ))),
        }
    }

    fn set_index(&mut self, o: &Value, i: &Value, v: Value) -> R<()> {
        match o {
            Value::List(l) => {
                let mut l = l.borrow_mut();
                let k = Self::norm_index(l.len(), i)?;
                l[k] = v;
                Ok(())
            }
            other => Err(type_err(format!(
                "'{}' object does not support item assignment",
                other.type_name()
            ))),
        }
    }

    fn slice(
        &mut self,
        o: &Value,
        lo: Option<i64>,
        hi: Option<i64>,
        step: Option<i64>,
    ) -> R<Value> {
        let step = step.unwrap_or(1);
        if step == 0 {
            return Err(rt("ValueError", "slice step cannot be zero"));
        }
        let items: Vec<Value> = match o {
            Value::List(l) => l.borrow().clone(),
            Value::Tuple(t) => t.as_ref().clone(),
            Value::Str(s) => s.chars().map(|c| Value::str(c.to_string())).collect(),
            Value::Range(..) => self.iterate(o)?,
            other => {
                return Err(type_err(format!(
                    "'{}' object is not subscriptable",
                    other.type_name()
                )))
            }
        };
        let picked: Vec<Value> = slice_indices(items.len() as i64, lo, hi, step)
            .into_iter()
            .map(|k| items[k].clone())
            .collect();
        Ok(match o {
            Value::Str(_) => Value::str(picked.iter().map(Value::to_str).collect::<String>()),
            Value::Tuple(_) => Value::Tuple(Rc::new(picked)),
            _ => Value::list(picked),
        })
    }

    fn call(&mut self, f: Value, args: Vec<Value>, kwargs: Vec<(Rc<str>, Value)>) -> R<Value> {
        match f {
            Value::Func(def) => {
                if !kwargs.is_empty() {
                    return Err(type_err(
                        "keyword arguments to user functions are not supported",
                    ));
                }
                if args.len() != def.params.len() {
                    return Err(type_err(format!(
                        "{}() takes {} positional arguments but {} were given",
                        def.name,
                        def.params.len(),
                        args.len()
                    )));
                }
                if self.frames.len() >= self.limits.max_depth {
                    return Err(rt("RecursionError", "maximum recursion depth exceeded"));
                }
                let frame: HashMap<Rc<str>, Value> = def.params.iter().cloned().zip(args).collect();
                self.frames.push(frame);
                let res = self.block(&def.body);
                self.frames.pop();
                Ok(match res? {
                    Flow::Return(v) => v,
                    _ => Value::None,
                })
            }
            Value::Builtin(name) => self.builtin(name, args, kwargs),
            other => Err(type_err(format!(
                "'{}' object is not callable",
                other.type_name()
            ))),
        }
    }

    fn builtin(&mut self, name: &str, args: Vec<Value>, kwargs: Vec<(Rc<str>, Value)>) -> R<Value> {
        let kw = |k: &str| {
            kwargs
                .iter()
                .find(|(n, _)| n.as_ref() == k)
                .map(|(_, v)| v.clone())
        };
        if let Some((k, _)) = kwargs.iter().find(|(k, _)| {
            !matches!(
                (name, k.as_ref()),
                ("print", "sep" | "end") | ("sorted", "reverse") | ("sum" | "enumerate", "start")
            )
        }) {
            return Err(type_err(format!(
                "{name}() got an unexpected keyword argument '{k}'"
            )));
        }
        let arity = |lo: usize, hi: usize| -> R<()> {
            if args.len() < lo || args.len() > hi {
                Err(type_err(format!(
                    "{name}() takes {lo} to {hi} arguments ({} given)",
                    args.len()
                )))
            } else {
                Ok(())
            }
        };
        let int_arg = |v: &Value| {
            v.as_int()
                .ok_or_else(|| type_err(format!("{name}() expects integers")))
        };
        match name {
            "print" => {
                let sep = kw("sep").map(|v| v.to_str()).unwrap_or_else(|| " ".into());
                let end = kw("end").map(|v| v.to_str()).unwrap_or_else(|| "\n".into());
                let line = args
                    .iter()
                    .map(Value::to_str)
                    .collect::<Vec<_>>()
                    .join(&sep);
                self.out.push_str(&line);
                self.out.push_str(&end);
                if self.out.len() > self.limits.max_output {
                    return Err(rt("OutputError", "output limit exceeded"));
                }
                Ok(Value::None)
            }
            "len" => {
                arity(1, 1)?;
                Ok(Value::Int(match &args[0] {
                    Value::Str(s) => s.chars().count() as i64,
                    Value::List(l) => l.borrow().len() as i64,
                    Value::Tuple(t) => t.len() as i64,
                    r @ Value::Range(..) => range_len(r),
                    other => {
                        return Err(type_err(format!(
                            "object of type '{}' has no len()",
                            other.type_name()
                        )))
                    }
                }))
            }
            "range" => {
                arity(1, 3)?;
                let v: Vec<i64> = args.iter().map(int_arg).collect::<R<_>>()?;
                let (a, b, s) = match v.as_slice() {
                    [b] => (0, *b, 1),
                    [a, b] => (*a, *b, 1),
                    [a, b, s] => (*a, *b, *s),
                    _ => unreachable!(),
                };
                if s == 0 {
                    return Err(rt("ValueError", "range() arg 3 must not be zero"));
                }
                Ok(Value::Range(a, b, s))
            }
            "sum" => {
                arity(1, 2)?;
                let mut acc = match args.get(1).cloned().or_else(|| kw("start")) {
                    Some(v) => v,
                    None => Value::Int(0),
                };
                for item in self.iterate(&args[0])? {
                    self.tick()?;
                    acc = self.binop(BinOp::Add, acc, item)?;
                }
                Ok(acc)
            }
            "min" | "max" => {
                let items = if args.len() == 1 {
                    self.iterate(&args[0])?
                } else {
                    args
                };
                let mut best: Option<Value> = None;
                for item in items {
                    best = Some(match best {
                        None => item,
                        Some(b) => {
                            let ord = py_cmp(&item, &b)
                                .ok_or_else(|| type_err("values are not comparable"))?;
                            let better = if name == "min" {
                                ord.is_lt()
                            } else {
                                ord.is_gt()
                            };
                            if better {
                                item
                            } else {
                                b
                            }
                        }
                    });
                }
                best.ok_or_else(|| rt("ValueError", format!("{name}() arg is an empty sequence")))
            }
            "abs" => {
                arity(1, 1)?;
                Ok(Value::Int(
                    int_arg(&args[0])?.checked_abs().ok_or_else(overflow)?,
                ))
            }
            "str" => {
                arity(0, 1)?;
                Ok(Value::str(
                    args.first().map(Value::to_str).unwrap_or_default(),
                ))
            }
            "repr" => {
                arity(1, 1)?;
                Ok(Value::str(args[0].repr()))
            }
            "int" => {
                arity(0, 1)?;
                match args.first() {
                    None => Ok(Value::Int(0)),
                    Some(Value::Str(s)) => s
                        .trim()
                        .replace('_', "")
                        .parse::<i64>()
                        .map(Value::Int)
                        .map_err(|_| {
                            rt(
                                "ValueError",
                                format!(
                                    "invalid literal for int(): {}",
                                    Value::Str(s.clone()).repr()
                                ),
                            )
                        }),
                    Some(v) => Ok(Value::Int(int_arg(v)?)),
                }
            }
            "bool" => {
                arity(0, 1)?;
                Ok(Value::Bool(args.first().is_some_and(Value::truthy)))
            }
            "sorted" => {
                arity(1, 1)?;
                let mut items = self.iterate(&args[0])?;
                sort_values(&mut items)?;
                if kw("reverse").is_some_and(|v| v.truthy()) {
                    items.reverse();
                }
                Ok(Value::list(items))
            }
            "reversed" => {
                arity(1, 1)?;
                let mut items = self.iterate(&args[0])?;
                items.reverse();
                Ok(Value::list(items))
            }
            "list" => {
                arity(0, 1)?;
                Ok(Value::list(match args.first() {
                    Some(v) => self.iterate(v)?,
                    None => Vec::new(),
                }))
            }
            "tuple" => {
                arity(0, 1)?;
                Ok(Value::Tuple(Rc::new(match args.first() {
                    Some(v) => self.iterate(v)?,
                    None => Vec::new(),
                })))
            }
            "enumerate" => {
                arity(1, 2)?;
                let start = match args.get(1).cloned().or_else(|| kw("start")) {
                    Some(v) => int_arg(&v)?,
                    None => 0,
                };
                let items = self.iterate(&args[0])?;
                Ok(Value::list(
                    items
                        .into_iter()
                        .enumerate()
                        .map(|(i, v)| Value::Tuple(Rc::new(vec![Value::Int(start + i as i64), v])))
                        .collect(),
                ))
            }
            "zip" => {
                let seqs = args
                    .iter()
                    .map(|a| self.iterate(a))
                    .collect::<R<Vec<_>>>()?;
                let n = seqs.iter().map(Vec::len).min().unwrap_or(0);
                Ok(Value::list(
                    (0..n)
                        .map(|i| Value::Tuple(Rc::new(seqs.iter().map(|s| s[i].clone()).collect())))
                        .collect(),
                ))
            }
            "pow" => {
                arity(2, 3)?;
                let (b, e) = (int_arg(&args[0])?, int_arg(&args[1])?);
                match args.get(2) {
                    None => int_op(BinOp::Pow, b, e),
                    Some(m) => {
                        let m = int_arg(m)?;
                        if m == 0 || e < 0 {
                            return Err(rt(
                                "ValueError",
                                "pow() with modulus needs e >= 0 and m != 0",
                            ));
                        }
                        let (mut acc, mut base, mut e) =
                            (1i128, (b as i128).rem_euclid(m as i128), e);
                        while e > 0 {
                            if e & 1 == 1 {
                                acc = acc * base % m as i128;
                            }
                            base = base * base % m as i128;
                            e >>= 1;
                        }
                        Ok(Value::Int(acc.rem_euclid(m as i128) as i64))
                    }
                }
            }
            "divmod" => {
                arity(2, 2)?;
                let (a, b) = (int_arg(&args[0])?, int_arg(&args[1])?);
                let q = int_op(BinOp::FloorDiv, a, b)?;
                let r = int_op(BinOp::Mod, a, b)?;
                Ok(Value::Tuple(Rc::new(vec![q, r])))
            }
            "any" | "all" => {
                arity(1, 1)?;
                let items = self.iterate(&args[0])?;
                Ok(Value::Bool(if name == "any" {
                    items.iter().any(Value::truthy)
                } else {
                    items.iter().all(Value::truthy)
                }))
            }
            _ => Err(rt("NameError", format!("name '{name}' is not defined"))),
        }
    }

    fn method(
        &mut self,
        o: &Value,
        name: &str,
        args: Vec<Value>,
        kwargs: Vec<(Rc<str>, Value)>,
    ) -> R<Value> {
        if !kwargs.is_empty()
            && !(name == "sort" && kwargs.iter().all(|(k, _)| k.as_ref() == "reverse"))
        {
            return Err(type_err(format!(
                "{name}() does not take keyword arguments"
            )));
        }
        let str_arg = |i: usize| -> R<Rc<str>> {
            match args.get(i) {
                Some(Value::Str(s)) => Ok(s.clone()),
                _ => Err(type_err(format!("{name}() expects a string argument"))),
            }
        };
        match o {
            Value::Str(s) => {
                let s = s.as_ref();
                Ok(match name {
                    "upper" => Value::str(s.to_uppercase()),
                    "lower" => Value::str(s.to_lowercase()),
                    "title" => Value::str(title_case(s)),
                    "capitalize" => {
                        let mut c = s.chars();
                        Value::str(match c.next() {
                            Some(f) => {
                                f.to_uppercase().collect::<String>() + &c.as_str().to_lowercase()
                            }
                            None => String::new(),
                        })
                    }
                    "strip" | "lstrip" | "rstrip" => {
                        let set: Option<Vec<char>> = match args.first() {
                            Some(Value::Str(c)) => Some(c.chars().collect()),
                            _ => None,
                        };
                        let pred = |c: char| match &set {
                            Some(cs) => cs.contains(&c),
                            None => c.is_whitespace(),
                        };
                        Value::str(match name {
                            "strip" => s.trim_matches(pred),
                            "lstrip" => s.trim_start_matches(pred),
                            _ => s.trim_end_matches(pred),
                        })
                    }
                    "split" => {
                        let parts: Vec<Value> = match args.first() {
                            None | Some(Value::None) => {
                                s.split_whitespace().map(Value::str).collect()
                            }
                            Some(_) => {
                                let sep = str_arg(0)?;
                                if sep.is_empty() {
                                    return Err(rt("ValueError", "empty separator"));
                                }
                                s.split(sep.as_ref()).map(Value::str).collect()
                            }
                        };
                        Value::list(parts)
                    }
                    "join" => {
                        let items = self.iterate(
                            args.first()
                                .ok_or_else(|| type_err("join() takes one argument"))?,
                        )?;
                        let strs = items
                            .iter()
                            .map(|v| match v {
                                Value::Str(x) => Ok(x.to_string()),
                                other => Err(type_err(format!(
                                    "sequence item: expected str, {} found",
                                    other.type_name()
                                ))),
                            })
                            .collect::<R<Vec<_>>>()?;
                        Value::str(strs.join(s))
                    }
                    "replace" => Value::str(s.replace(str_arg(0)?.as_ref(), &str_arg(1)?)),
                    "count" => {
                        let sub = str_arg(0)?;
                        Value::Int(if sub.is_empty() {
                            s.chars().count() as i64 + 1
                        } else {
                            s.matches(sub.as_ref()).count() as i64
                        })
                    }
                    "find" | "index" => {
                        let sub = str_arg(0)?;
                        match s.find(sub.as_ref()) {
                            Some(b) => Value::Int(s[..b].chars().count() as i64),
                            None if name == "find" => Value::Int(-1),
                            None => return Err(rt("ValueError", "substring not found")),
                        }
                    }
                    "startswith" => Value::Bool(s.starts_with(str_arg(0)?.as_ref())),
                    "endswith" => Value::Bool(s.ends_with(str_arg(0)?.as_ref())),
                    "isdigit" => {
                        Value::Bool(!s.is_empty() && s.chars().all(|c| c.is_ascii_digit()))
                    }
                    "isalpha" => Value::Bool(!s.is_empty() && s.chars().all(char::is_alphabetic)),
                    "isupper" => Value::Bool(
                        s.chars().any(char::is_alphabetic) && !s.chars().any(char::is_lowercase),
                    ),
                    "islower" => Value::Bool(
                        s.chars().any(char::is_alphabetic) && !s.chars().any(char::is_uppercase),
                    ),
                    _ => {
                        return Err(rt(
                            "AttributeError",
                            format!("'str' object has no attribute '{name}'"),
                        ))
                    }
                })
            }
            Value::List(l) => {
                let list = l.clone();
                Ok(match name {
                    "append" => {
                        let v = args
                            .into_iter()
                            .next()
                            .ok_or_else(|| type_err("append() takes one argument"))?;
                        let n = list.borrow().len() + 1;
                        self.check_len(n)?;
                        list.borrow_mut().push(v);
                        Value::None
                    }
                    "extend" => {
                        let items = self.iterate(
                            args.first()
                                .ok_or_else(|| type_err("extend() takes one argument"))?,
                        )?;
                        let n = list.borrow().len() + items.len();
                        self.check_len(n)?;
                        list.borrow_mut().extend(items);
                        Value::None
                    }
                    "pop" => {
                        let mut v = list.borrow_mut();
                        if v.is_empty() {
                            return Err(rt("IndexError", "pop from empty list"));
                        }
                        let k = match args.first() {
                            Some(i) => Self::norm_index(v.len(), i)?,
                            None => v.len() - 1,
                        };
                        v.remove(k)
                    }
                    "insert" => {
                        let i = args
                            .first()
                            .and_then(Value::as_int)
                            .ok_or_else(|| type_err("insert() needs an index"))?;
                        let x = args
                            .get(1)
                            .cloned()
                            .ok_or_else(|| type_err("insert() needs a value"))?;
                        let mut v = list.borrow_mut();
                        let len = v.len() as i64;
                        let k = if i < 0 { (i + len).max(0) } else { i.min(len) };
                        v.insert(k as usize, x);
                        Value::None
                    }
                    "index" | "count" | "remove" => {
                        let x = args
                            .first()
                            .ok_or_else(|| type_err(format!("{name}() takes one argument")))?;
                        let pos = list.borrow().iter().position(|v| py_eq(v, x));
                        match name {
                            "count" => Value::Int(
                                list.borrow().iter().filter(|v| py_eq(v, x)).count() as i64,
                            ),
                            "index" => Value::Int(
                                pos.ok_or_else(|| rt("ValueError", "value is not in list"))? as i64,
                            ),
                            _ => {
                                let k = pos.ok_or_else(|| {
                                    rt("ValueError", "list.remove(x): x not in list")
                                })?;
                                list.borrow_mut().remove(k);
                                Value::None
                            }
                        }
                    }
                    "reverse" => {
                        list.borrow_mut().reverse();
                        Value::None
                    }
                    "sort" => {
                        let mut items = list.borrow().clone();
                        sort_values(&mut items)?;
                        if kwargs.iter().any(|(_, v)| v.truthy()) {
                            items.reverse();
                        }
                        *list.borrow_mut() = items;
                        Value::None
                    }
                    "copy" => Value::list(list.borrow().clone()),
                    _ => {
                        return Err(rt(
                            "AttributeError",
                            format!("'list' object has no attribute '{name}'"),
                        ))
                    }
                })
            }
            other => Err(rt(
                "AttributeError",
                format!("'{}' object has no attribute '{name}'", other.type_name()),
            )),
        }
    }
}

fn title_case(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut prev_alpha = false;
    for c in s.chars() {
        if c.is_alphabetic() {
            if prev_alpha {
                out.extend(c.to_lowercase());
            } else {
                out.extend(c.to_uppercase());
            }
            prev_alpha = true;
        } else {
            out.push(c);
            prev_alpha = false;
        }
    }
    out
}

fn target_names(t: &Target) -> Vec<Rc<str>> {
    match t {
        Target::Name(n) => vec![n.clone()],
        Target::Tuple(ts) => ts.iter().flat_map(target_names).collect(),
        Target::Index(..) => Vec::new(),
    }
}

/// Stable sort; raises on mixed incomparable types like Python does.
fn sort_values(items: &mut [Value]) -> R<()> {
    for w in items.windows(2) {
        if py_cmp(&w[0], &w[1]).is_none() {
            return Err(type_err(format!(
                "'<' not supported between instances of '{}' and '{}'",
                w[1].type_name(),
                w[0].type_name()
            )));
        }
    }
    items.sort_by(|a, b| py_cmp(a, b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(())
}

fn op_symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "+",
        BinOp::Sub => "-",
        BinOp::Mul => "*",
        BinOp::Div => "/",
        BinOp::FloorDiv => "//",
        BinOp::Mod => "%",
        BinOp::Pow => "**",
    }
}

fn int_op(op: BinOp, a: i64, b: i64) -> R<Value> {
    let zero = || rt("ZeroDivisionError", "integer division or modulo by zero");
    Ok(Value::Int(match op {
        BinOp::Add => a.checked_add(b).ok_or_else(overflow)?,
        BinOp::Sub => a.checked_sub(b).ok_or_else(overflow)?,
        BinOp::Mul => a.checked_mul(b).ok_or_else(overflow)?,
        BinOp::Div => {
            return Err(rt(
                "TypeError",
                "true division produces a float, which is not supported",
            ))
        }
        BinOp::FloorDiv | BinOp::Mod => {
            if b == 0 {
                return Err(zero());
            }
            let mut q = a.checked_div(b).ok_or_else(overflow)?;
            if a % b != 0 && ((a < 0) != (b < 0)) {
                q -= 1;
            }
            if op == BinOp::FloorDiv {
                q
            } else {
                a - b * q
            }
        }
        BinOp::Pow => {
            if b < 0 {
                return Err(rt(
                    "TypeError",
                    "negative exponents produce floats, which are not supported",
                ));
            }
            let e = u32::try_from(b).map_err(|_| overflow())?;
            a.checked_pow(e).ok_or_else(overflow)?
        }
    }))
}

/// Indices selected by `[lo:hi:step]` on a sequence of length `len`.
fn slice_indices(len: i64, lo: Option<i64>, hi: Option<i64>, step: i64) -> Vec<usize> {
    let adjust = |v: i64, lower: i64, upper: i64| {
        let v = if v < 0 { v + len } else { v };
        v.clamp(lower, upper)
    };
    let (start, stop) = if step > 0 {
        (
            lo.map_or(0, |v| adjust(v, 0, len)),
            hi.map_or(len, |v| adjust(v, 0, len)),
        )
    } else {
        (
            lo.map_or(len - 1, |v| adjust(v, -1, len - 1)),
            hi.map_or(-1, |v| adjust(v, -1, len - 1)),
        )
    };
    let mut out = Vec::new();
    let mut i = start;
    while (step > 0 && i < stop) || (step < 0 && i > stop) {
        out.push(i as usize);
        i += step;
    }
    out
}
