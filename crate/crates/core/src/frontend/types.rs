use std::fmt;
use std::sync::Arc;

/// A simple type over the base types `i` (individuals) and `o` (booleans).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    Iota,
    Bool,
    Arrow(Arc<TypeExpr>, Arc<TypeExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeClass {
    /// `i -> ... -> i` with at least one arrow; the types of function symbols.
    Functional,
    /// `o` or `rho -> pi`; the types of predicate constants.
    Predicate,
    /// `i`, which may only appear as an argument (or result of a function symbol).
    Argument,
    Invalid,
}

impl TypeExpr {
    pub fn arrow(left: TypeExpr, right: TypeExpr) -> TypeExpr {
        TypeExpr::Arrow(Arc::new(left), Arc::new(right))
    }

    /// Builds `args[0] -> args[1] -> ... -> result`.
    pub fn curried<I>(args: I, result: TypeExpr) -> TypeExpr
    where
        I: IntoIterator<Item = TypeExpr>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, arg| TypeExpr::arrow(arg, acc))
    }

    /// Splits `r1 -> ... -> rn -> t` where `t` is a base type.
    pub fn spine(&self) -> (Vec<&TypeExpr>, &TypeExpr) {
        let mut args = Vec::new();
        let mut cur = self;
        while let TypeExpr::Arrow(l, r) = cur {
            args.push(l.as_ref());
            cur = r.as_ref();
        }
        (args, cur)
    }

    pub fn arity(&self) -> usize {
        self.spine().0.len()
    }

    pub fn is_functional(&self) -> bool {
        match self {
            TypeExpr::Iota => true,
            TypeExpr::Bool => false,
            TypeExpr::Arrow(l, r) => **l == TypeExpr::Iota && r.is_functional(),
        }
    }

    pub fn is_predicate(&self) -> bool {
        match self {
            TypeExpr::Bool => true,
            TypeExpr::Iota => false,
            TypeExpr::Arrow(l, r) => l.is_argument() && r.is_predicate(),
        }
    }

    pub fn is_argument(&self) -> bool {
        *self == TypeExpr::Iota || self.is_predicate()
    }

    /// Every type obtained by stripping leading arguments, starting with `self`.
    /// These are the types of the partial applications of a constant of this type.
    pub fn suffixes(&self) -> Vec<&TypeExpr> {
        let mut out = vec![self];
        let mut cur = self;
        while let TypeExpr::Arrow(_, r) = cur {
            out.push(r.as_ref());
            cur = r.as_ref();
        }
        out
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, left_of_arrow: bool) -> fmt::Result {
        match self {
            TypeExpr::Iota => f.write_str("i"),
            TypeExpr::Bool => f.write_str("o"),
            TypeExpr::Arrow(l, r) => {
                if left_of_arrow {
                    f.write_str("(")?;
                }
                l.fmt_prec(f, true)?;
                f.write_str("->")?;
                r.fmt_prec(f, false)?;
                if left_of_arrow {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

/// Classifies a type. `i` is reported as [`TypeClass::Argument`]; predicate
/// types, which are also argument types, are reported as [`TypeClass::Predicate`].
pub fn classify_type(t: &TypeExpr) -> TypeClass {
    if *t == TypeExpr::Iota {
        TypeClass::Argument
    } else if t.is_predicate() {
        TypeClass::Predicate
    } else if t.is_functional() {
        TypeClass::Functional
    } else {
        TypeClass::Invalid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TypeExpr::{Bool as O, Iota as I};

    fn ar(l: TypeExpr, r: TypeExpr) -> TypeExpr {
        TypeExpr::arrow(l, r)
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_type(&ar(I, I)), TypeClass::Functional);
        assert_eq!(classify_type(&ar(ar(I, O), O)), TypeClass::Predicate);
        assert_eq!(classify_type(&ar(ar(I, O), I)), TypeClass::Invalid);
        assert_eq!(classify_type(&I), TypeClass::Argument);
        assert_eq!(classify_type(&O), TypeClass::Predicate);
        assert_eq!(classify_type(&ar(ar(I, I), O)), TypeClass::Invalid);
        assert_eq!(classify_type(&ar(I, ar(I, I))), TypeClass::Functional);
    }

    #[test]
    fn display_is_right_associative() {
        let t = ar(ar(I, O), ar(I, O));
        assert_eq!(t.to_string(), "(i->o)->i->o");
        assert_eq!(t.arity(), 2);
        assert_eq!(t.suffixes().len(), 3);
    }
}
