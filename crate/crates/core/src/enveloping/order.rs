use std::fmt;

use crate::algebra::Generator;

use super::EnvelopingError;

/// A total order on modes used to define normal words.
///
/// Modes outside the trailing list are sorted by index (ascending, or
/// descending for the mirrored order) and come first; the trailing modes
/// follow in list order, rightmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrderSpec {
    descending: bool,
    trailing: Vec<Generator>,
}

impl OrderSpec {
    pub fn ascending() -> Self {
        OrderSpec::default()
    }

    pub fn descending() -> Self {
        OrderSpec {
            descending: true,
            trailing: Vec::new(),
        }
    }

    pub fn trailing(list: Vec<Generator>) -> Result<Self, EnvelopingError> {
        Self::new(false, list)
    }

    pub fn new(descending: bool, list: Vec<Generator>) -> Result<Self, EnvelopingError> {
        for (i, g) in list.iter().enumerate() {
            if list[..i].contains(g) {
                return Err(EnvelopingError::DuplicateTrailing(*g));
            }
        }
        Ok(OrderSpec {
            descending,
            trailing: list,
        })
    }

    pub fn is_descending(&self) -> bool {
        self.descending
    }

    pub fn trailing_set(&self) -> &[Generator] {
        &self.trailing
    }

    pub fn is_trailing(&self) -> bool {
        !self.trailing.is_empty()
    }

    pub fn key(&self, g: Generator) -> (u8, i64) {
        match self.trailing.iter().position(|&t| t == g) {
            Some(i) => (1, i as i64),
            None if self.descending => (0, -g.index().doubled()),
            None => (0, g.index().doubled()),
        }
    }

    pub fn precedes(&self, a: Generator, b: Generator) -> bool {
        self.key(a) < self.key(b)
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.descending { "descending" } else { "ascending" })?;
        if !self.trailing.is_empty() {
            let list: Vec<String> = self.trailing.iter().map(|g| g.to_string()).collect();
            write!(f, ", trailing [{}]", list.join(", "))?;
        }
        Ok(())
    }
}
