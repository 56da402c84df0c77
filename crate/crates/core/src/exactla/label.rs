use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Structured basis label. Derived `Ord` gives the lexicographic order on
/// structure.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Unit,
    Atom(String),
    Dual(Box<Label>),
    Tensor(Vec<Label>),
    /// strictly increasing
    Wedge(Vec<Label>),
    /// weakly increasing
    Monomial(Vec<Label>),
    /// component of a direct sum
    Summand(usize, Box<Label>),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Label {
        Label::Atom(s.into())
    }

    /// `x ↦ x*`, with `x** = x`.
    pub fn dual(&self) -> Label {
        match self {
            Label::Dual(x) => (**x).clone(),
            Label::Unit => Label::Unit,
            x => Label::Dual(Box::new(x.clone())),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[Label], sep: &str| -> fmt::Result {
            for (k, x) in xs.iter().enumerate() {
                if k > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        match self {
            Label::Unit => f.write_str("1"),
            Label::Atom(s) => f.write_str(s),
            Label::Dual(x) => match **x {
                Label::Atom(_) | Label::Unit => write!(f, "{x}*"),
                _ => write!(f, "({x})*"),
            },
            Label::Tensor(xs) => {
                f.write_str("(")?;
                join(f, xs, "⊗")?;
                f.write_str(")")
            }
            Label::Wedge(xs) if xs.is_empty() => f.write_str("1"),
            Label::Wedge(xs) => join(f, xs, "∧"),
            Label::Monomial(xs) if xs.is_empty() => f.write_str("1"),
            Label::Monomial(xs) => join(f, xs, "·"),
            Label::Summand(k, x) => write!(f, "[{k}]{x}"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn double_dual_unwraps() {
        let x = Label::atom("e1");
        assert_eq!(x.dual().dual(), x);
        assert_eq!(x.dual().to_string(), "e1*");
        let w = Label::Wedge(vec![Label::atom("e1"), Label::atom("e2")]);
        assert_eq!(w.to_string(), "e1∧e2");
    }
}
