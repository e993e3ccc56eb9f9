//! Density expressions and assertions.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::flag::{Flag, TypeGraph};
use crate::graph::Graph;
use crate::rational::Rational;

/// A density leaf: an unlabelled graph or a τ-flag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Atom {
    Graph(Graph),
    Flag(Flag),
}

impl Atom {
    /// Flags of the empty type are ordinary graphs.
    pub fn from_flag(f: Flag) -> Atom {
        if f.tau().size() == 0 {
            Atom::Graph(f.graph().clone())
        } else {
            Atom::Flag(f)
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Atom::Graph(g) => g.n(),
            Atom::Flag(f) => f.n(),
        }
    }

    pub fn tau(&self) -> TypeGraph {
        match self {
            Atom::Graph(_) => TypeGraph::empty(),
            Atom::Flag(f) => f.tau().clone(),
        }
    }

    pub fn as_flag(&self) -> Flag {
        match self {
            Atom::Graph(g) => Flag::unlabelled(g.clone()),
            Atom::Flag(f) => f.clone(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Graph(g) => g.fmt(f),
            Atom::Flag(fl) => fl.fmt(f),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DensityExpr {
    Atom(Atom),
    Zero,
    One,
    Const(Rational),
    Scale(Rational, Box<DensityExpr>),
    Add(Box<DensityExpr>, Box<DensityExpr>),
    Mul(Box<DensityExpr>, Box<DensityExpr>),
}

impl DensityExpr {
    pub fn graph(g: Graph) -> Self {
        DensityExpr::Atom(Atom::Graph(g))
    }

    pub fn flag(f: Flag) -> Self {
        DensityExpr::Atom(Atom::from_flag(f))
    }

    /// `0` and `1` become [`DensityExpr::Zero`] and [`DensityExpr::One`].
    pub fn constant(r: Rational) -> Self {
        if r.is_zero() {
            DensityExpr::Zero
        } else if r.is_one() {
            DensityExpr::One
        } else {
            DensityExpr::Const(r)
        }
    }

    pub fn scale(r: Rational, e: DensityExpr) -> Self {
        DensityExpr::Scale(r, Box::new(e))
    }

    pub fn add(a: DensityExpr, b: DensityExpr) -> Self {
        DensityExpr::Add(Box::new(a), Box::new(b))
    }

    /// `a - b`, i.e. `a + (-1) * b`.
    pub fn sub(a: DensityExpr, b: DensityExpr) -> Self {
        DensityExpr::add(a, DensityExpr::neg(b))
    }

    pub fn neg(e: DensityExpr) -> Self {
        DensityExpr::scale(-Rational::one(), e)
    }

    pub fn mul(a: DensityExpr, b: DensityExpr) -> Self {
        DensityExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            DensityExpr::Atom(a) => out.push(a),
            DensityExpr::Zero | DensityExpr::One | DensityExpr::Const(_) => {}
            DensityExpr::Scale(_, e) => e.collect_atoms(out),
            DensityExpr::Add(a, b) | DensityExpr::Mul(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// The common type of all atoms; `None` when there are no atoms.
    pub fn expr_type(&self) -> Result<Option<TypeGraph>> {
        let mut found: Option<TypeGraph> = None;
        for a in self.atoms() {
            let t = a.tau();
            match &found {
                None => found = Some(t),
                Some(prev) if *prev != t => {
                    return Err(Error::TypeMismatch(format!("expression mixes atoms of types {prev} and {t}")));
                }
                _ => {}
            }
        }
        Ok(found)
    }

    pub fn is_unlabelled(&self) -> Result<bool> {
        Ok(self.expr_type()?.is_none_or(|t| t.size() == 0))
    }

    pub fn contains_mul(&self) -> bool {
        match self {
            DensityExpr::Mul(..) => true,
            DensityExpr::Scale(_, e) => e.contains_mul(),
            DensityExpr::Add(a, b) => a.contains_mul() || b.contains_mul(),
            _ => false,
        }
    }

    pub fn contains_one(&self) -> bool {
        match self {
            DensityExpr::One | DensityExpr::Const(_) => true,
            DensityExpr::Scale(_, e) => e.contains_one(),
            DensityExpr::Add(a, b) | DensityExpr::Mul(a, b) => a.contains_one() || b.contains_one(),
            _ => false,
        }
    }

    fn is_numeric_leaf(&self) -> bool {
        matches!(self, DensityExpr::Zero | DensityExpr::One | DensityExpr::Const(_))
    }

    fn is_leaf(&self) -> bool {
        self.is_numeric_leaf() || matches!(self, DensityExpr::Atom(_))
    }
}

fn paren(f: &mut fmt::Formatter<'_>, e: &DensityExpr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for DensityExpr {
    /// Prints text that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityExpr::Atom(a) => a.fmt(f),
            DensityExpr::Zero => f.write_str("0"),
            DensityExpr::One => f.write_str("1"),
            DensityExpr::Const(r) => write!(f, "{r}"),
            DensityExpr::Scale(r, e) => {
                write!(f, "{r} * ")?;
                paren(f, e, matches!(**e, DensityExpr::Add(..) | DensityExpr::Scale(..)))
            }
            DensityExpr::Add(a, b) => {
                write!(f, "{a} + ")?;
                paren(f, b, matches!(**b, DensityExpr::Add(..)))
            }
            DensityExpr::Mul(a, b) => {
                let wrap_left = a.is_numeric_leaf() || matches!(**a, DensityExpr::Add(..) | DensityExpr::Scale(..));
                paren(f, a, wrap_left)?;
                f.write_str(" * ")?;
                paren(f, b, !b.is_leaf())
            }
        }
    }
}

/// Core assertion language; the other connectives are sugar.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Assertion {
    False,
    True,
    Geq(DensityExpr, DensityExpr),
    Not(Box<Assertion>),
    Or(Box<Assertion>, Box<Assertion>),
}

impl Assertion {
    pub fn geq(a: DensityExpr, b: DensityExpr) -> Self {
        Assertion::Geq(a, b)
    }

    pub fn leq(a: DensityExpr, b: DensityExpr) -> Self {
        Assertion::Geq(b, a)
    }

    pub fn not(a: Assertion) -> Self {
        Assertion::Not(Box::new(a))
    }

    pub fn or(a: Assertion, b: Assertion) -> Self {
        Assertion::Or(Box::new(a), Box::new(b))
    }

    /// `¬(¬a ∨ ¬b)`.
    pub fn and(a: Assertion, b: Assertion) -> Self {
        Assertion::not(Assertion::or(Assertion::not(a), Assertion::not(b)))
    }

    /// `¬a ∨ b`.
    pub fn implies(a: Assertion, b: Assertion) -> Self {
        Assertion::or(Assertion::not(a), b)
    }

    /// `(a ≥ b) ∧ (b ≥ a)`.
    pub fn eq(a: DensityExpr, b: DensityExpr) -> Self {
        Assertion::and(Assertion::Geq(a.clone(), b.clone()), Assertion::Geq(b, a))
    }

    /// `¬(a ≥ b)`.
    pub fn lt(a: DensityExpr, b: DensityExpr) -> Self {
        Assertion::not(Assertion::Geq(a, b))
    }

    pub fn gt(a: DensityExpr, b: DensityExpr) -> Self {
        Assertion::lt(b, a)
    }

    /// The operands of `a ∧ b`, if this node has that shape.
    pub fn as_and(&self) -> Option<(&Assertion, &Assertion)> {
        if let Assertion::Not(inner) = self {
            if let Assertion::Or(l, r) = &**inner {
                if let (Assertion::Not(a), Assertion::Not(b)) = (&**l, &**r) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The operands of `a ⟹ b`, if this node has that shape.
    pub fn as_implies(&self) -> Option<(&Assertion, &Assertion)> {
        match self {
            Assertion::Or(l, r) => match &**l {
                Assertion::Not(a) => Some((a, r)),
                _ => None,
            },
            _ => None,
        }
    }

    /// The sides of `a = b`, if this node has that shape.
    pub fn as_eq(&self) -> Option<(&DensityExpr, &DensityExpr)> {
        let (x, y) = self.as_and()?;
        match (x, y) {
            (Assertion::Geq(a, b), Assertion::Geq(c, d)) if a == d && b == c => Some((a, b)),
            _ => None,
        }
    }

    pub fn exprs(&self) -> Vec<&DensityExpr> {
        match self {
            Assertion::False | Assertion::True => Vec::new(),
            Assertion::Geq(a, b) => vec![a, b],
            Assertion::Not(a) => a.exprs(),
            Assertion::Or(a, b) => {
                let mut v = a.exprs();
                v.extend(b.exprs());
                v
            }
        }
    }

    /// Checks that both sides of every comparison have a common type.
    pub fn check_types(&self) -> Result<()> {
        for e in self.exprs() {
            e.expr_type()?;
        }
        if let Assertion::Geq(a, b) = self {
            DensityExpr::add(a.clone(), b.clone()).expr_type()?;
        }
        match self {
            Assertion::Not(a) => a.check_types(),
            Assertion::Or(a, b) => {
                a.check_types()?;
                b.check_types()
            }
            _ => Ok(()),
        }
    }

    fn prec(&self) -> u8 {
        if self.as_eq().is_some() {
            4
        } else if self.as_and().is_some() {
            2
        } else if self.as_implies().is_some() {
            0
        } else {
            match self {
                Assertion::Or(..) => 1,
                Assertion::Not(inner) if matches!(**inner, Assertion::Geq(..)) => 4,
                Assertion::Not(_) => 3,
                _ => 4,
            }
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        if let Some((a, b)) = self.as_eq() {
            return write!(f, "{a} = {b}");
        }
        if let Some((a, b)) = self.as_and() {
            a.fmt_at(f, 2)?;
            f.write_str(" & ")?;
            return b.fmt_at(f, 3);
        }
        if let Some((a, b)) = self.as_implies() {
            a.fmt_at(f, 1)?;
            f.write_str(" => ")?;
            return b.fmt_at(f, 0);
        }
        match self {
            Assertion::False => f.write_str("false"),
            Assertion::True => f.write_str("true"),
            // constants go on the right
            Assertion::Geq(a, b) if a.atoms().is_empty() && !b.atoms().is_empty() => write!(f, "{b} <= {a}"),
            Assertion::Geq(a, b) => write!(f, "{a} >= {b}"),
            Assertion::Not(inner) => match &**inner {
                Assertion::Geq(a, b) if a.atoms().is_empty() && !b.atoms().is_empty() => write!(f, "{b} > {a}"),
                Assertion::Geq(a, b) => write!(f, "{a} < {b}"),
                other => {
                    f.write_str("!")?;
                    other.fmt_at(f, 3)
                }
            },
            Assertion::Or(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" | ")?;
                b.fmt_at(f, 2)
            }
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
