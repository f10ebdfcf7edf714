use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::PolyError;

/// How a constant symbol behaves under normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    /// An independent transcendental constant.
    Free,
    /// A square root: the symbol `s` obeys `s^2 = radicand`.
    Root { radicand: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstSymbol {
    pub name: String,
    pub kind: SymbolKind,
}

impl ConstSymbol {
    pub fn free(name: impl Into<String>) -> Self {
        Self { name: name.into(), kind: SymbolKind::Free }
    }

    pub fn root(name: impl Into<String>, radicand: BigRational) -> Self {
        Self { name: name.into(), kind: SymbolKind::Root { radicand } }
    }

    pub fn radicand(&self) -> Option<&BigRational> {
        match &self.kind {
            SymbolKind::Free => None,
            SymbolKind::Root { radicand } => Some(radicand),
        }
    }
}

/// Ordered set of declared constants. The declaration order fixes the
/// printing order of symbols inside a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolTable {
    symbols: Vec<ConstSymbol>,
}

/// Shared handle; every polynomial carries one.
pub type Symbols = Arc<SymbolTable>;

const RESERVED: [&str; 4] = ["X11", "X12", "X21", "X22"];

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolTable {
    pub fn new(symbols: Vec<ConstSymbol>) -> Result<Self, PolyError> {
        let mut table = SymbolTable::default();
        for s in symbols {
            table.push(s)?;
        }
        Ok(table)
    }

    /// Table of free symbols only.
    pub fn free<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(names.into_iter().map(ConstSymbol::free).collect())
    }

    pub fn empty() -> Symbols {
        Arc::new(SymbolTable::default())
    }

    fn push(&mut self, s: ConstSymbol) -> Result<(), PolyError> {
        if !valid_identifier(&s.name) || RESERVED.contains(&s.name.as_str()) {
            return Err(PolyError::BadSymbol(s.name));
        }
        if self.index_of(&s.name).is_some() {
            return Err(PolyError::DuplicateSymbol(s.name));
        }
        if let Some(r) = s.radicand() {
            if r.is_zero() {
                return Err(PolyError::BadSymbol(s.name));
            }
        }
        self.symbols.push(s);
        Ok(())
    }

    /// A new table with `extra` appended after the existing declarations.
    pub fn extended(&self, extra: Vec<ConstSymbol>) -> Result<Self, PolyError> {
        let mut t = self.clone();
        for s in extra {
            t.push(s)?;
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, index: usize) -> &ConstSymbol {
        &self.symbols[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ConstSymbol> {
        self.symbols.iter()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

impl fmt::Display for SymbolTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match &s.kind {
                SymbolKind::Free => f.write_str(&s.name)?,
                SymbolKind::Root { radicand } => write!(f, "{}=sqrt({})", s.name, radicand)?,
            }
        }
        Ok(())
    }
}

/// Holds when two handles describe the same declarations.
pub(crate) fn same_table(a: &Symbols, b: &Symbols) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
