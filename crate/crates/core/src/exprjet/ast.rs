use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

/// A node of the expression tree together with the byte offset of the
/// source text it was parsed from.
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub kind: NodeKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Num(f64),
    Var,
    Neg(Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
    /// Power with an exponent folded to a constant at parse time.
    Pow(Box<Node>, f64),
}

impl Node {
    pub(crate) fn new(kind: NodeKind, offset: usize) -> Self {
        Self { kind, offset }
    }

    pub fn contains_var(&self) -> bool {
        match &self.kind {
            NodeKind::Num(_) => false,
            NodeKind::Var => true,
            NodeKind::Neg(a) | NodeKind::Call(_, a) | NodeKind::Pow(a, _) => a.contains_var(),
            NodeKind::Binary(_, a, b) => a.contains_var() || b.contains_var(),
        }
    }

    pub(crate) fn write_sexpr(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NodeKind::Num(x) => write!(f, "{x}"),
            NodeKind::Var => f.write_str(var),
            NodeKind::Neg(a) => {
                f.write_str("(neg ")?;
                a.write_sexpr(var, f)?;
                f.write_str(")")
            }
            NodeKind::Binary(op, a, b) => {
                write!(f, "({} ", op.symbol())?;
                a.write_sexpr(var, f)?;
                f.write_str(" ")?;
                b.write_sexpr(var, f)?;
                f.write_str(")")
            }
            NodeKind::Call(func, a) => {
                write!(f, "({} ", func.name())?;
                a.write_sexpr(var, f)?;
                f.write_str(")")
            }
            NodeKind::Pow(a, e) => {
                f.write_str("(^ ")?;
                a.write_sexpr(var, f)?;
                write!(f, " {e})")
            }
        }
    }
}
