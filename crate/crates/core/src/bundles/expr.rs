use std::fmt;

/// A virtual bundle built from the atoms of the theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleExpr {
    /// Complexified tangent bundle, rank 12.
    TC,
    /// Complexified rank-two bundle ξ.
    XiC,
    /// q¹ coefficient of the E8 generating series of bundle `i`.
    W(u8),
    /// q² coefficient of the E8 generating series of bundle `i`.
    Wbar(u8),
    /// Spinor bundle.
    Delta,
    Const(i64),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Diff(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Wedge(u32, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    /// `E − rank E`.
    Tilde(Box<BundleExpr>),
}

pub const MAX_WEDGE: u32 = 4;
pub const MAX_SYM: u32 = 2;

impl BundleExpr {
    pub fn sum(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn diff(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Diff(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn wedge(k: u32, e: BundleExpr) -> Self {
        BundleExpr::Wedge(k, Box::new(e))
    }

    pub fn sym(k: u32, e: BundleExpr) -> Self {
        BundleExpr::Sym(k, Box::new(e))
    }

    pub fn tilde(e: BundleExpr) -> Self {
        BundleExpr::Tilde(Box::new(e))
    }

    fn precedence(&self) -> u8 {
        match self {
            BundleExpr::Sum(..) | BundleExpr::Diff(..) => 1,
            BundleExpr::Tensor(..) => 2,
            BundleExpr::Const(n) if *n < 0 => 1,
            _ => 3,
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &BundleExpr, min: u8, f: &mut fmt::Formatter<'_>| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            BundleExpr::TC => f.write_str("TC"),
            BundleExpr::XiC => f.write_str("XiC"),
            BundleExpr::W(i) => write!(f, "W{i}"),
            BundleExpr::Wbar(i) => write!(f, "Wbar{i}"),
            BundleExpr::Delta => f.write_str("Delta"),
            BundleExpr::Const(n) => write!(f, "{n}"),
            BundleExpr::Sum(a, b) => {
                write!(f, "{a} + ")?;
                wrap(b, 2, f)
            }
            BundleExpr::Diff(a, b) => {
                write!(f, "{a} - ")?;
                wrap(b, 2, f)
            }
            BundleExpr::Tensor(a, b) => {
                wrap(a, 2, f)?;
                f.write_str("*")?;
                wrap(b, 3, f)
            }
            BundleExpr::Wedge(k, e) => write!(f, "wedge({k}, {e})"),
            BundleExpr::Sym(k, e) => write!(f, "sym({k}, {e})"),
            BundleExpr::Tilde(e) => write!(f, "tilde({e})"),
        }
    }
}
