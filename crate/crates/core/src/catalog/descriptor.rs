use std::fmt;

use crate::error::{Error, Result};

/// How the complement acts in a semidirect product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Trivial,
    /// For cyclic `N = C_n` and `H = C_m`: the generator of `H` acts as
    /// `x ↦ x^k`.
    Mul(u64),
    /// For `N = Q8` and `H = C3`: the generator cycles `i → j → k`.
    Q8Rotation,
}

/// A constructor expression for a catalog group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian(u64, u32),
    Product(Box<Descriptor>, Box<Descriptor>),
    Semidirect(Box<Descriptor>, Box<Descriptor>, Action),
}

impl Descriptor {
    /// Parses forms such as `cyclic:6`, `dihedral:4`, `quaternion`,
    /// `symmetric:4`, `alternating:5`, `elementary_abelian:2:3`,
    /// `product(cyclic:2,cyclic:6)`, `semidirect(cyclic:5,cyclic:4,mul:2)`,
    /// `semidirect(quaternion,cyclic:3,q8rot)`.
    pub fn parse(text: &str) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownDescriptor(text.clone());
        if let Some(inner) = text
            .strip_prefix("product(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let parts = split_top(inner);
            if parts.len() != 2 {
                return Err(unknown());
            }
            return Ok(Descriptor::Product(
                Box::new(Self::parse(parts[0])?),
                Box::new(Self::parse(parts[1])?),
            ));
        }
        if let Some(inner) = text
            .strip_prefix("semidirect(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let parts = split_top(inner);
            if parts.len() != 3 {
                return Err(unknown());
            }
            let action = match parts[2] {
                "trivial" => Action::Trivial,
                "q8rot" => Action::Q8Rotation,
                other => {
                    let k = other
                        .strip_prefix("mul:")
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(unknown)?;
                    Action::Mul(k)
                }
            };
            return Ok(Descriptor::Semidirect(
                Box::new(Self::parse(parts[0])?),
                Box::new(Self::parse(parts[1])?),
                action,
            ));
        }
        let fields: Vec<&str> = text.split(':').collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let positive = |n: usize| if n == 0 { Err(unknown()) } else { Ok(n) };
        match fields.as_slice() {
            ["cyclic", n] => Ok(Descriptor::Cyclic(positive(num(n)?)?)),
            ["dihedral", n] => Ok(Descriptor::Dihedral(positive(num(n)?)?)),
            ["quaternion"] => Ok(Descriptor::Quaternion),
            ["symmetric", n] => Ok(Descriptor::Symmetric(positive(num(n)?)?)),
            ["alternating", n] => Ok(Descriptor::Alternating(positive(num(n)?)?)),
            ["elementary_abelian", p, k] => Ok(Descriptor::ElementaryAbelian(
                num(p)? as u64,
                num(k)? as u32,
            )),
            _ => Err(unknown()),
        }
    }
}

fn split_top(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Cyclic(n) => write!(f, "cyclic:{n}"),
            Descriptor::Dihedral(n) => write!(f, "dihedral:{n}"),
            Descriptor::Quaternion => write!(f, "quaternion"),
            Descriptor::Symmetric(n) => write!(f, "symmetric:{n}"),
            Descriptor::Alternating(n) => write!(f, "alternating:{n}"),
            Descriptor::ElementaryAbelian(p, k) => write!(f, "elementary_abelian:{p}:{k}"),
            Descriptor::Product(a, b) => write!(f, "product({a},{b})"),
            Descriptor::Semidirect(n, h, action) => {
                let action = match action {
                    Action::Trivial => "trivial".to_string(),
                    Action::Mul(k) => format!("mul:{k}"),
                    Action::Q8Rotation => "q8rot".to_string(),
                };
                write!(f, "semidirect({n},{h},{action})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for text in [
            "cyclic:6",
            "dihedral:4",
            "quaternion",
            "symmetric:4",
            "alternating:5",
            "elementary_abelian:2:3",
            "product(cyclic:2,product(cyclic:3,cyclic:3))",
            "semidirect(cyclic:5,cyclic:4,mul:2)",
            "semidirect(quaternion,cyclic:3,q8rot)",
            "semidirect(cyclic:3,cyclic:2,trivial)",
        ] {
            assert_eq!(Descriptor::parse(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            "cyclic",
            "cyclic:0",
            "cyclic:x",
            "product(cyclic:2)",
            "semidirect(cyclic:2,cyclic:2,spin)",
            "torus",
        ] {
            assert!(
                matches!(Descriptor::parse(text), Err(Error::UnknownDescriptor(_))),
                "{text}"
            );
        }
    }
}
