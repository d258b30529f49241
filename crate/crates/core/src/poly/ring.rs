use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A ring variable: a tag plus an index tuple, printed as `tag_i_j_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub tag: String,
    pub indices: Vec<u32>,
}

impl Var {
    pub fn new(tag: impl Into<String>, indices: impl Into<Vec<u32>>) -> Self {
        Var { tag: tag.into(), indices: indices.into() }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag)?;
        for i in &self.indices {
            write!(f, "_{i}")?;
        }
        Ok(())
    }
}

/// An ordered list of variables. Position in the list is the variable's
/// index everywhere else in the crate (exponent vectors, weights, maps).
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Var>,
    lookup: HashMap<Var, usize>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: Vec<Var>) -> Result<RingRef> {
        let mut lookup = HashMap::with_capacity(vars.len());
        let mut arity: HashMap<&str, usize> = HashMap::new();
        for (pos, v) in vars.iter().enumerate() {
            if v.indices.is_empty() {
                return Err(Error::DimensionMismatch(format!("variable `{}` has no index", v.tag)));
            }
            match arity.get(v.tag.as_str()) {
                Some(&a) if a != v.indices.len() => return Err(Error::MixedArity(v.tag.clone())),
                _ => {
                    arity.insert(&v.tag, v.indices.len());
                }
            }
            if lookup.insert(v.clone(), pos).is_some() {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
        }
        Ok(Arc::new(Ring { vars, lookup }))
    }

    /// One tag, one variable per index tuple, in iteration order.
    pub fn indexed<I>(tag: &str, tuples: I) -> Result<RingRef>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        Ring::new(tuples.into_iter().map(|t| Var::new(tag, t)).collect())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.vars[i]
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// Same ring: either the same allocation or identical variable lists.
    pub fn same(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || a.vars == b.vars
    }

    /// `first` followed by `second`. Variables of `second` whose name clashes
    /// with one in `first` get a `'` appended to their tag.
    pub fn concat(first: &Ring, second: &Ring) -> RingRef {
        let mut vars = first.vars.clone();
        for v in &second.vars {
            let mut v = v.clone();
            while first.lookup.contains_key(&v) {
                v.tag.push('\'');
            }
            vars.push(v);
        }
        Ring::new(vars).expect("concatenation of valid rings")
    }
}
