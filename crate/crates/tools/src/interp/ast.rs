use std::rc::Rc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    FloorDiv,
    Mod,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    In,
    NotIn,
    Is,
    IsNot,
}

#[derive(Debug, Clone)]
pub struct Comprehension {
    pub target: Target,
    pub iter: Expr,
    pub conds: Vec<Expr>,
}

#[derive(Debug, Clone)]
pub enum Expr {
    Int(i64),
    Str(Rc<str>),
    Bool(bool),
    None,
    Name(Rc<str>),
    List(Vec<Expr>),
    Tuple(Vec<Expr>),
    Neg(Box<Expr>),
    Not(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Compare(Box<Expr>, Vec<(CmpOp, Expr)>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    IfExp {
        cond: Box<Expr>,
        then: Box<Expr>,
        other: Box<Expr>,
    },
    Call {
        func: Box<Expr>,
        args: Vec<Expr>,
        kwargs: Vec<(Rc<str>, Expr)>,
    },
    Method {
        obj: Box<Expr>,
        name: Rc<str>,
        args: Vec<Expr>,
        kwargs: Vec<(Rc<str>, Expr)>,
    },
    Index(Box<Expr>, Box<Expr>),
    Slice {
        obj: Box<Expr>,
        lo: Option<Box<Expr>>,
        hi: Option<Box<Expr>>,
        step: Option<Box<Expr>>,
    },
    /// List comprehensions and generator expressions; both evaluate eagerly.
    Comp {
        elt: Box<Expr>,
        gens: Vec<Comprehension>,
    },
}

#[derive(Debug, Clone)]
pub enum Target {
    Name(Rc<str>),
    Index(Expr, Expr),
    Tuple(Vec<Target>),
}

#[derive(Debug)]
pub struct FuncDef {
    pub name: Rc<str>,
    pub params: Vec<Rc<str>>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub enum Stmt {
    Expr(Expr, usize),
    Assign(Vec<Target>, Expr, usize),
    AugAssign(Target, BinOp, Expr, usize),
    If(Vec<(Expr, Vec<Stmt>)>, Vec<Stmt>, usize),
    While(Expr, Vec<Stmt>, usize),
    For(Target, Expr, Vec<Stmt>, usize),
    Def(Rc<FuncDef>, usize),
    Return(Option<Expr>, usize),
    Break,
    Continue,
    Pass,
}
