use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::ScalarError;

/// Ordered list of declared parameter names.
///
/// Polynomials refer to parameters by position; the names are only needed for
/// parsing, display and evaluation by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Params {
    names: Vec<String>,
}

impl Params {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Params {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn empty() -> Self {
        Params::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends names not already declared, keeping existing indices stable.
    pub fn extended<S: AsRef<str>>(&self, more: impl IntoIterator<Item = S>) -> Params {
        let mut names = self.names.clone();
        for m in more {
            if !names.iter().any(|n| n == m.as_ref()) {
                names.push(m.as_ref().to_string());
            }
        }
        Params { names }
    }

    /// Builds an assignment from a name → value map. Parameters not mentioned
    /// stay free; unknown names are rejected.
    pub fn assignment(
        &self,
        values: &BTreeMap<String, BigRational>,
    ) -> Result<Assignment, ScalarError> {
        for name in values.keys() {
            if self.index_of(name).is_none() {
                return Err(ScalarError::UnknownParameter(name.clone()));
            }
        }
        Ok(Assignment {
            names: self.names.clone(),
            values: self.names.iter().map(|n| values.get(n).cloned()).collect(),
        })
    }

    /// Assignment giving every parameter the listed value, in order.
    pub fn full_assignment(&self, values: &[BigRational]) -> Assignment {
        Assignment {
            names: self.names.clone(),
            values: self
                .names
                .iter()
                .enumerate()
                .map(|(i, _)| values.get(i).cloned())
                .collect(),
        }
    }
}

/// A (possibly partial) point in parameter space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    names: Vec<String>,
    values: Vec<Option<BigRational>>,
}

impl Assignment {
    pub fn value(&self, index: usize) -> Option<&BigRational> {
        self.values.get(index).and_then(Option::as_ref)
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn values(&self) -> &[Option<BigRational>] {
        &self.values
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, v) in self.names.iter().zip(&self.values) {
            if let Some(v) = v {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{n}={v}")?;
                first = false;
            }
        }
        Ok(())
    }
}
