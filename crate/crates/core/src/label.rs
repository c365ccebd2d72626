//! Column labels with decorations.
//!
//! Every column of a vector space, every edge of a graph and every element
//! of a matroid ground set is identified by a [`Label`]. A label is a name
//! plus a decoration marking which copy of the underlying set it lives in:
//! the voltage copy (prime), the current copy (double prime) or a detached
//! copy used when two instances of the same object must coexist.
//!
//! Labels order lexicographically by `(name, decoration)`; this single
//! ordering drives every tie-break in the crate (pivot choice, greedy
//! extension, forest growth), which is what makes all outputs deterministic.

use std::fmt;
use std::str::FromStr;

/// Which copy of the base set a label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    /// The base set itself (graph edges, matroid elements).
    Plain,
    /// First copy, written `x'`. Voltage variables.
    Prime,
    /// Second copy, written `x"`. Current variables.
    DoublePrime,
    /// Detached copy, written `x~`, for duplicating a whole object.
    Copy,
}

impl Decoration {
    fn suffix(self) -> &'static str {
        match self {
            Decoration::Plain => "",
            Decoration::Prime => "'",
            Decoration::DoublePrime => "\"",
            Decoration::Copy => "~",
        }
    }
}

/// A decorated column identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    name: String,
    decoration: Decoration,
}

impl Label {
    pub fn new(name: impl Into<String>, decoration: Decoration) -> Self {
        Label { name: name.into(), decoration }
    }

    /// Plain label, no decoration.
    pub fn plain(name: impl Into<String>) -> Self {
        Label::new(name, Decoration::Plain)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decoration(&self) -> Decoration {
        self.decoration
    }

    pub fn with_decoration(&self, decoration: Decoration) -> Self {
        Label { name: self.name.clone(), decoration }
    }

    /// The voltage-copy label `x'`.
    pub fn primed(&self) -> Self {
        self.with_decoration(Decoration::Prime)
    }

    /// The current-copy label `x"`.
    pub fn doubled(&self) -> Self {
        self.with_decoration(Decoration::DoublePrime)
    }

    /// The detached-copy label `x~`.
    pub fn tilde(&self) -> Self {
        self.with_decoration(Decoration::Copy)
    }

    /// Strip any decoration.
    pub fn undecorated(&self) -> Self {
        self.with_decoration(Decoration::Plain)
    }

    /// Swap prime and double prime; other decorations are unchanged.
    pub fn swapped(&self) -> Self {
        match self.decoration {
            Decoration::Prime => self.doubled(),
            Decoration::DoublePrime => self.primed(),
            d => self.with_decoration(d),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.decoration.suffix())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err("empty label".to_string());
        }
        let (name, decoration) = if let Some(stem) = s.strip_suffix("''") {
            (stem, Decoration::DoublePrime)
        } else if let Some(stem) = s.strip_suffix('"') {
            (stem, Decoration::DoublePrime)
        } else if let Some(stem) = s.strip_suffix('\'') {
            (stem, Decoration::Prime)
        } else if let Some(stem) = s.strip_suffix('~') {
            (stem, Decoration::Copy)
        } else {
            (s, Decoration::Plain)
        };
        if name.is_empty() {
            return Err(format!("label `{s}` has a decoration but no name"));
        }
        Ok(Label::new(name, decoration))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_lexicographic_on_name_then_decoration() {
        let a = Label::plain("a");
        let ap = a.primed();
        let add = a.doubled();
        let b = Label::plain("b");
        assert!(a < ap);
        assert!(ap < add);
        assert!(add < b);
    }

    #[test]
    fn decoration_round_trips() {
        let a = Label::plain("x7");
        assert_eq!(a.primed().undecorated(), a);
        assert_eq!(a.doubled().undecorated(), a);
        assert_eq!(a.tilde().undecorated(), a);
        assert_eq!(a.primed().swapped(), a.doubled());
        assert_eq!(a.primed().swapped().swapped(), a.primed());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["e1", "e1'", "e1\"", "e1~"] {
            let l: Label = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert_eq!("x''".parse::<Label>().unwrap(), Label::plain("x").doubled());
        assert!("".parse::<Label>().is_err());
        assert!("'".parse::<Label>().is_err());
    }
}
