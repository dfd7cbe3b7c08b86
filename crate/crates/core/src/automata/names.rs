use std::collections::HashMap;
use std::fmt;

/// Index of a state in its machine's declared state order.
pub type StateId = usize;
/// Index of a symbol in its alphabet's declared order.
pub type SymbolId = usize;

/// An ordered list of unique names with reverse lookup.
///
/// Order is declaration order; every tie-break in the crate ("lexicographic
/// by letter") refers to these indices.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Names {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Names {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table, returning the first duplicate name on failure.
    pub fn from_iter_unique<I, S>(iter: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut n = Names::new();
        for s in iter {
            let s = s.into();
            if n.index.contains_key(&s) {
                return Err(s);
            }
            n.push(s);
        }
        Ok(n)
    }

    /// Appends `name`, returning its index. Panics on duplicates; callers
    /// that take untrusted names go through [`Names::from_iter_unique`].
    pub fn push(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        assert!(!self.index.contains_key(&name), "duplicate name `{name}`");
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        id
    }

    /// Index of `name`, inserting it if absent.
    pub fn intern(&mut self, name: &str) -> usize {
        match self.index.get(name) {
            Some(&i) => i,
            None => self.push(name),
        }
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.names.iter().map(String::as_str)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.names
    }

    /// Resolves a word given as names.
    pub fn resolve<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<usize>, String> {
        word.iter()
            .map(|s| self.get(s.as_ref()).ok_or_else(|| s.as_ref().to_string()))
            .collect()
    }

    pub fn render(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&i| self.names[i].clone()).collect()
    }
}

impl fmt::Debug for Names {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Splits a whitespace-separated word into symbol names. The empty string
/// (or only whitespace) is the empty word.
pub fn tokenize_word(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}
