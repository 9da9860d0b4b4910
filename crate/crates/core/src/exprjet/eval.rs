use super::ast::{BinaryOp, Func, Node, NodeKind};
use super::{EvalError, Jet4};

fn check(node: &Node, op: &'static str, arg: f64, jet: Jet4) -> Result<Jet4, EvalError> {
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(EvalError::Domain {
            op,
            offset: node.offset,
            arg,
        })
    }
}

pub(crate) fn eval_node(node: &Node, at: f64) -> Result<Jet4, EvalError> {
    match &node.kind {
        NodeKind::Num(c) => Ok(Jet4::constant(*c)),
        NodeKind::Var => Ok(Jet4::variable(at)),
        NodeKind::Neg(a) => Ok(-eval_node(a, at)?),
        NodeKind::Binary(op, a, b) => {
            let x = eval_node(a, at)?;
            let y = eval_node(b, at)?;
            match op {
                BinaryOp::Add => Ok(x + y),
                BinaryOp::Sub => Ok(x - y),
                BinaryOp::Mul => Ok(x * y),
                BinaryOp::Div => {
                    if y.value() == 0.0 {
                        return Err(EvalError::Domain {
                            op: "division",
                            offset: node.offset,
                            arg: 0.0,
                        });
                    }
                    check(node, "division", y.value(), x / y)
                }
            }
        }
        NodeKind::Call(func, a) => {
            let x = eval_node(a, at)?;
            let u = x.value();
            match func {
                Func::Sin => Ok(x.sin()),
                Func::Cos => Ok(x.cos()),
                Func::Exp => check(node, "exp", u, x.exp()),
                Func::Tan => check(node, "tan", u, x.tan()),
                Func::Log => {
                    if u <= 0.0 {
                        return Err(EvalError::Domain {
                            op: "log",
                            offset: node.offset,
                            arg: u,
                        });
                    }
                    check(node, "log", u, x.ln())
                }
                Func::Sqrt => {
                    // sqrt has unbounded derivatives at 0, so the jet needs u > 0.
                    if u <= 0.0 {
                        return Err(EvalError::Domain {
                            op: "sqrt",
                            offset: node.offset,
                            arg: u,
                        });
                    }
                    check(node, "sqrt", u, x.sqrt())
                }
            }
        }
        NodeKind::Pow(a, e) => {
            let x = eval_node(a, at)?;
            let u = x.value();
            if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
                let n = *e as i32;
                if n < 0 && u == 0.0 {
                    return Err(EvalError::Domain {
                        op: "power",
                        offset: node.offset,
                        arg: u,
                    });
                }
                check(node, "power", u, x.powi(n))
            } else {
                if u <= 0.0 {
                    return Err(EvalError::Domain {
                        op: "power",
                        offset: node.offset,
                        arg: u,
                    });
                }
                check(node, "power", u, x.powf(*e))
            }
        }
    }
}
