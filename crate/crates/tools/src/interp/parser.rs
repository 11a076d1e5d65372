use std::rc::Rc;

use super::ast::*;
use super::lexer::Tok;
use crate::error::ToolError;

const KEYWORDS: &[&str] = &[
    "and", "or", "not", "in", "is", "if", "elif", "else", "while", "for", "def", "return", "break",
    "continue", "pass", "True", "False", "None", "lambda", "import", "from", "class", "global",
    "try", "except", "with", "yield", "del", "raise", "assert",
];

/// Positional and keyword arguments of a call.
type CallArgs = (Vec<Expr>, Vec<(Rc<str>, Expr)>);
pub struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    pub fn new(toks: Vec<(Tok, usize)>) -> Self {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos.min(self.toks.len() - 1)].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn line(&self) -> usize {
        self.toks[self.pos.min(self.toks.len() - 1)].1
    }

    fn err(&self, msg: impl std::fmt::Display) -> ToolError {
        ToolError::Parse(format!("line {}: {msg}", self.line()))
    }

    fn advance(&mut self) -> Tok {
        let t = self.peek().clone();
        self.pos += 1;
        t
    }

    fn is_op(&self, op: &str) -> bool {
        matches!(self.peek(), Tok::Op(o) if *o == op)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Name(n) if n == kw)
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if self.is_op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: &str) -> Result<(), ToolError> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{op}', found {:?}", self.peek())))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ToolError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{kw}', found {:?}", self.peek())))
        }
    }

    fn ident(&mut self) -> Result<Rc<str>, ToolError> {
        match self.advance() {
            Tok::Name(n) if !KEYWORDS.contains(&n.as_str()) => Ok(n.into()),
            other => Err(self.err(format!("expected a name, found {other:?}"))),
        }
    }

    pub fn program(&mut self) -> Result<Vec<Stmt>, ToolError> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            if *self.peek() == Tok::Newline {
                self.pos += 1;
                continue;
            }
            out.extend(self.statement()?);
        }
        Ok(out)
    }

    fn block(&mut self) -> Result<Vec<Stmt>, ToolError> {
        self.expect_op(":")?;
        if *self.peek() != Tok::Newline {
            return self.simple_line();
        }
        self.pos += 1;
        if *self.peek() != Tok::Indent {
            return Err(self.err("expected an indented block"));
        }
        self.pos += 1;
        let mut body = Vec::new();
        while !matches!(self.peek(), Tok::Dedent | Tok::Eof) {
            if *self.peek() == Tok::Newline {
                self.pos += 1;
                continue;
            }
            body.extend(self.statement()?);
        }
        self.eat_dedent();
        Ok(body)
    }

    fn eat_dedent(&mut self) {
        if *self.peek() == Tok::Dedent {
            self.pos += 1;
        }
    }

    fn statement(&mut self) -> Result<Vec<Stmt>, ToolError> {
        let line = self.line();
        let Tok::Name(kw) = self.peek().clone() else {
            return self.simple_line();
        };
        match kw.as_str() {
            "if" => {
                self.pos += 1;
                let mut branches = vec![(self.expr()?, self.block()?)];
                let mut other = Vec::new();
                loop {
                    if self.eat_kw("elif") {
                        branches.push((self.expr()?, self.block()?));
                    } else if self.eat_kw("else") {
                        other = self.block()?;
                        break;
                    } else {
                        break;
                    }
                }
                Ok(vec![Stmt::If(branches, other, line)])
            }
            "while" => {
                self.pos += 1;
                let cond = self.expr()?;
                Ok(vec![Stmt::While(cond, self.block()?, line)])
            }
            "for" => {
                self.pos += 1;
                let target = self.target_list()?;
                self.expect_kw("in")?;
                let iter = self.expr_list()?;
                Ok(vec![Stmt::For(target, iter, self.block()?, line)])
            }
            "def" => {
                self.pos += 1;
                let name = self.ident()?;
                self.expect_op("(")?;
                let mut params = Vec::new();
                while !self.is_op(")") {
                    params.push(self.ident()?);
                    if self.is_op("=") {
                        return Err(self.err("default parameter values are not supported"));
                    }
                    if !self.eat_op(",") {
                        break;
                    }
                }
                self.expect_op(")")?;
                let body = self.block()?;
                Ok(vec![Stmt::Def(
                    Rc::new(FuncDef { name, params, body }),
                    line,
                )])
            }
            "lambda" | "import" | "from" | "class" | "global" | "try" | "except" | "with"
            | "yield" | "del" | "raise" | "assert" => {
                Err(self.err(format!("'{kw}' is not supported")))
            }
            _ => self.simple_line(),
        }
    }

    fn simple_line(&mut self) -> Result<Vec<Stmt>, ToolError> {
        let mut out = vec![self.simple()?];
        while self.eat_op(";") {
            if matches!(self.peek(), Tok::Newline | Tok::Eof) {
                break;
            }
            out.push(self.simple()?);
        }
        match self.peek() {
            Tok::Newline => {
                self.pos += 1;
                Ok(out)
            }
            Tok::Eof | Tok::Dedent => Ok(out),
            other => Err(self.err(format!("unexpected {other:?}"))),
        }
    }

    fn simple(&mut self) -> Result<Stmt, ToolError> {
        let line = self.line();
        if self.eat_kw("pass") {
            return Ok(Stmt::Pass);
        }
        if self.eat_kw("break") {
            return Ok(Stmt::Break);
        }
        if self.eat_kw("continue") {
            return Ok(Stmt::Continue);
        }
        if self.eat_kw("return") {
            if matches!(self.peek(), Tok::Newline | Tok::Eof | Tok::Dedent) || self.is_op(";") {
                return Ok(Stmt::Return(None, line));
            }
            return Ok(Stmt::Return(Some(self.expr_list()?), line));
        }
        let first = self.expr_list()?;
        if self.is_op("=") {
            let mut targets = vec![self.to_target(first)?];
            let mut value;
            loop {
                self.expect_op("=")?;
                value = self.expr_list()?;
                if self.is_op("=") {
                    targets.push(self.to_target(value)?);
                } else {
                    break;
                }
            }
            return Ok(Stmt::Assign(targets, value, line));
        }
        let aug = match self.peek() {
            Tok::Op("+=") => Some(BinOp::Add),
            Tok::Op("-=") => Some(BinOp::Sub),
            Tok::Op("*=") => Some(BinOp::Mul),
            Tok::Op("//=") => Some(BinOp::FloorDiv),
            Tok::Op("%=") => Some(BinOp::Mod),
            Tok::Op("**=") => Some(BinOp::Pow),
            _ => None,
        };
        if let Some(op) = aug {
            self.pos += 1;
            let target = self.to_target(first)?;
            if matches!(target, Target::Tuple(_)) {
                return Err(self.err("illegal target for augmented assignment"));
            }
            let value = self.expr_list()?;
            return Ok(Stmt::AugAssign(target, op, value, line));
        }
        Ok(Stmt::Expr(first, line))
    }

    fn to_target(&self, e: Expr) -> Result<Target, ToolError> {
        match e {
            Expr::Name(n) => Ok(Target::Name(n)),
            Expr::Index(obj, idx) => Ok(Target::Index(*obj, *idx)),
            Expr::Tuple(items) | Expr::List(items) => Ok(Target::Tuple(
                items
                    .into_iter()
                    .map(|i| self.to_target(i))
                    .collect::<Result<_, _>>()?,
            )),
            other => Err(self.err(format!("cannot assign to {other:?}"))),
        }
    }

    /// Loop targets stop before `in`, so they are parsed below comparisons.
    fn target_list(&mut self) -> Result<Target, ToolError> {
        let mut items = vec![self.arith()?];
        let mut tuple = false;
        while self.eat_op(",") {
            tuple = true;
            if self.is_kw("in") {
                break;
            }
            items.push(self.arith()?);
        }
        let e = if tuple {
            Expr::Tuple(items)
        } else {
            items.pop().unwrap()
        };
        self.to_target(e)
    }

    /// Comma-separated expressions form a tuple.
    fn expr_list(&mut self) -> Result<Expr, ToolError> {
        let first = self.expr()?;
        if !self.is_op(",") {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat_op(",") {
            if self.ends_expr_list() {
                break;
            }
            items.push(self.expr()?);
        }
        Ok(Expr::Tuple(items))
    }

    fn ends_expr_list(&self) -> bool {
        matches!(self.peek(), Tok::Newline | Tok::Eof | Tok::Dedent)
            || matches!(self.peek(), Tok::Op(o) if matches!(*o, "=" | ")" | "]" | ":" | ";"))
    }

    pub fn expr(&mut self) -> Result<Expr, ToolError> {
        if self.is_kw("lambda") {
            return Err(self.err("'lambda' is not supported"));
        }
        let e = self.or_expr()?;
        if self.is_kw("if") {
            // Only a conditional expression if an `else` follows; inside a
            // comprehension a bare `if` is a filter and is left alone.
            let save = self.pos;
            self.pos += 1;
            let cond = self.or_expr()?;
            if self.eat_kw("else") {
                let other = self.expr()?;
                return Ok(Expr::IfExp {
                    cond: Box::new(cond),
                    then: Box::new(e),
                    other: Box::new(other),
                });
            }
            self.pos = save;
        }
        Ok(e)
    }

    fn or_expr(&mut self) -> Result<Expr, ToolError> {
        let mut e = self.and_expr()?;
        while self.eat_kw("or") {
            e = Expr::Or(Box::new(e), Box::new(self.and_expr()?));
        }
        Ok(e)
    }

    fn and_expr(&mut self) -> Result<Expr, ToolError> {
        let mut e = self.not_expr()?;
        while self.eat_kw("and") {
            e = Expr::And(Box::new(e), Box::new(self.not_expr()?));
        }
        Ok(e)
    }

    fn not_expr(&mut self) -> Result<Expr, ToolError> {
        if self.eat_kw("not") {
            return Ok(Expr::Not(Box::new(self.not_expr()?)));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<Expr, ToolError> {
        let first = self.arith()?;
        let mut rest = Vec::new();
        loop {
            let op = match self.peek() {
                Tok::Op("==") => CmpOp::Eq,
                Tok::Op("!=") => CmpOp::Ne,
                Tok::Op("<") => CmpOp::Lt,
                Tok::Op("<=") => CmpOp::Le,
                Tok::Op(">") => CmpOp::Gt,
                Tok::Op(">=") => CmpOp::Ge,
                Tok::Name(n) if n == "in" => CmpOp::In,
                Tok::Name(n)
                    if n == "not" && matches!(self.peek_at(1), Tok::Name(m) if m == "in") =>
                {
                    self.pos += 1;
                    CmpOp::NotIn
                }
                Tok::Name(n) if n == "is" => {
                    if matches!(self.peek_at(1), Tok::Name(m) if m == "not") {
                        self.pos += 1;
                        CmpOp::IsNot
                    } else {
                        CmpOp::Is
                    }
                }
                _ => break,
            };
            self.pos += 1;
            rest.push((op, self.arith()?));
        }
        Ok(if rest.is_empty() {
            first
        } else {
            Expr::Compare(Box::new(first), rest)
        })
    }

    fn arith(&mut self) -> Result<Expr, ToolError> {
        let mut e = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op("+") => BinOp::Add,
                Tok::Op("-") => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            e = Expr::Bin(op, Box::new(e), Box::new(self.term()?));
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr, ToolError> {
        let mut e = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op("*") => BinOp::Mul,
                Tok::Op("/") => BinOp::Div,
                Tok::Op("//") => BinOp::FloorDiv,
                Tok::Op("%") => BinOp::Mod,
                _ => break,
            };
            self.pos += 1;
            e = Expr::Bin(op, Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, ToolError> {
        if self.eat_op("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op("+") {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ToolError> {
        let base = self.postfix()?;
        if self.eat_op("**") {
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn call_args(&mut self) -> Result<CallArgs, ToolError> {
        let mut args = Vec::new();
        let mut kwargs = Vec::new();
        while !self.is_op(")") {
            if matches!(self.peek(), Tok::Name(_)) && matches!(self.peek_at(1), Tok::Op("=")) {
                let name = self.ident()?;
                self.pos += 1;
                kwargs.push((name, self.expr()?));
            } else {
                let e = self.expr()?;
                if self.is_kw("for") {
                    let gens = self.comp_clauses()?;
                    args.push(Expr::Comp {
                        elt: Box::new(e),
                        gens,
                    });
                } else {
                    args.push(e);
                }
            }
            if !self.eat_op(",") {
                break;
            }
        }
        self.expect_op(")")?;
        Ok((args, kwargs))
    }

    fn comp_clauses(&mut self) -> Result<Vec<Comprehension>, ToolError> {
        let mut gens = Vec::new();
        while self.eat_kw("for") {
            let target = self.target_list()?;
            self.expect_kw("in")?;
            let iter = self.or_expr()?;
            let mut conds = Vec::new();
            while self.eat_kw("if") {
                conds.push(self.or_expr()?);
            }
            gens.push(Comprehension {
                target,
                iter,
                conds,
            });
        }
        Ok(gens)
    }

    fn postfix(&mut self) -> Result<Expr, ToolError> {
        let mut e = self.atom()?;
        loop {
            if self.eat_op("(") {
                let (args, kwargs) = self.call_args()?;
                e = Expr::Call {
                    func: Box::new(e),
                    args,
                    kwargs,
                };
            } else if self.eat_op(".") {
                let name = self.ident()?;
                self.expect_op("(")?;
                let (args, kwargs) = self.call_args()?;
                e = Expr::Method {
                    obj: Box::new(e),
                    name,
                    args,
                    kwargs,
                };
            } else if self.eat_op("[") {
                e = self.subscript(e)?;
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn subscript(&mut self, obj: Expr) -> Result<Expr, ToolError> {
        let mut parts: Vec<Option<Box<Expr>>> = vec![None];
        let mut colons = 0;
        loop {
            if self.eat_op("]") {
                break;
            }
            if self.eat_op(":") {
                colons += 1;
                if colons > 2 {
                    return Err(self.err("invalid slice"));
                }
                parts.push(None);
                continue;
            }
            let e = self.expr()?;
            *parts.last_mut().unwrap() = Some(Box::new(e));
        }
        if colons == 0 {
            let idx = parts
                .pop()
                .flatten()
                .ok_or_else(|| self.err("empty subscript"))?;
            return Ok(Expr::Index(Box::new(obj), idx));
        }
        let mut it = parts.into_iter();
        Ok(Expr::Slice {
            obj: Box::new(obj),
            lo: it.next().flatten(),
            hi: it.next().flatten(),
            step: it.next().flatten(),
        })
    }

    fn atom(&mut self) -> Result<Expr, ToolError> {
        match self.advance() {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::Str(s) => {
                // Adjacent literals concatenate.
                let mut s = s;
                while let Tok::Str(more) = self.peek().clone() {
                    self.pos += 1;
                    s.push_str(&more);
                }
                Ok(Expr::Str(s.into()))
            }
            Tok::Name(n) => match n.as_str() {
                "True" => Ok(Expr::Bool(true)),
                "False" => Ok(Expr::Bool(false)),
                "None" => Ok(Expr::None),
                kw if KEYWORDS.contains(&kw) => Err(self.err(format!("unexpected keyword '{kw}'"))),
                _ => Ok(Expr::Name(n.into())),
            },
            Tok::Op("(") => {
                if self.eat_op(")") {
                    return Ok(Expr::Tuple(Vec::new()));
                }
                let first = self.expr()?;
                if self.is_kw("for") {
                    let gens = self.comp_clauses()?;
                    self.expect_op(")")?;
                    return Ok(Expr::Comp {
                        elt: Box::new(first),
                        gens,
                    });
                }
                if self.eat_op(")") {
                    return Ok(first);
                }
                let mut items = vec![first];
                while self.eat_op(",") {
                    if self.is_op(")") {
                        break;
                    }
                    items.push(self.expr()?);
                }
                self.expect_op(")")?;
                Ok(Expr::Tuple(items))
            }
            Tok::Op("[") => {
                if self.eat_op("]") {
                    return Ok(Expr::List(Vec::new()));
                }
                let first = self.expr()?;
                if self.is_kw("for") {
                    let gens = self.comp_clauses()?;
                    self.expect_op("]")?;
                    return Ok(Expr::Comp {
                        elt: Box::new(first),
                        gens,
                    });
                }
                let mut items = vec![first];
                while self.eat_op(",") {
                    if self.is_op("]") {
                        break;
                    }
                    items.push(self.expr()?);
                }
                self.expect_op("]")?;
                Ok(Expr::List(items))
            }
            Tok::Op("{") => Err(self.err("dict and set literals are not supported")),
            other => Err(self.err(format!("unexpected {other:?}"))),
        }
    }
}
