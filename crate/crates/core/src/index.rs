//! Finite index sets with structured labels.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A coordinate label. Composite spaces get composite labels rather than
/// flattened integers, so reports stay readable and relabelings are explicit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Atom(String),
    /// The single coordinate of the unit space.
    Unit,
    Pair(Box<Label>, Box<Label>),
    Left(Box<Label>),
    Right(Box<Label>),
    /// Sorted multiset of base labels.
    Multiset(Vec<Label>),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Self {
        Label::Atom(s.into())
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn multiset(mut items: Vec<Label>) -> Self {
        items.sort();
        Label::Multiset(items)
    }

    /// Atoms are plain JSON strings; composites are single-key objects.
    pub fn to_json(&self) -> Value {
        match self {
            Label::Atom(s) => Value::String(s.clone()),
            Label::Unit => json!({ "unit": null }),
            Label::Pair(a, b) => json!({ "pair": [a.to_json(), b.to_json()] }),
            Label::Left(a) => json!({ "inl": a.to_json() }),
            Label::Right(a) => json!({ "inr": a.to_json() }),
            Label::Multiset(v) => json!({ "ms": v.iter().map(Label::to_json).collect::<Vec<_>>() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Json(format!("bad label {v}"));
        match v {
            Value::String(s) => Ok(Label::Atom(s.clone())),
            Value::Number(n) => Ok(Label::Atom(n.to_string())),
            Value::Object(m) if m.len() == 1 => {
                let (k, inner) = m.iter().next().unwrap();
                match k.as_str() {
                    "unit" => Ok(Label::Unit),
                    "pair" => {
                        let arr = inner.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                        Ok(Label::pair(Label::from_json(&arr[0])?, Label::from_json(&arr[1])?))
                    }
                    "inl" => Ok(Label::Left(Box::new(Label::from_json(inner)?))),
                    "inr" => Ok(Label::Right(Box::new(Label::from_json(inner)?))),
                    "ms" => {
                        let arr = inner.as_array().ok_or_else(bad)?;
                        let items = arr.iter().map(Label::from_json).collect::<Result<Vec<_>>>()?;
                        Ok(Label::multiset(items))
                    }
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => write!(f, "{s}"),
            Label::Unit => write!(f, "*"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Left(a) => write!(f, "inl({a})"),
            Label::Right(a) => write!(f, "inr({a})"),
            Label::Multiset(v) => {
                write!(f, "[")?;
                for (i, l) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{l}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// An ordered list of distinct labels. Cloning is cheap.
#[derive(Clone)]
pub struct IndexSet {
    labels: Arc<Vec<Label>>,
    lookup: Arc<HashMap<Label, usize>>,
}

impl IndexSet {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate label `{l}`")));
            }
        }
        Ok(IndexSet {
            labels: Arc::new(labels),
            lookup: Arc::new(lookup),
        })
    }

    /// Atoms `0..n` (or named with a prefix).
    pub fn numbered(prefix: &str, n: usize) -> Self {
        IndexSet::new((0..n).map(|i| Label::atom(format!("{prefix}{i}"))).collect()).unwrap()
    }

    pub fn unit() -> Self {
        IndexSet::new(vec![Label::Unit]).unwrap()
    }

    pub fn empty() -> Self {
        IndexSet::new(vec![]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.lookup.get(l).copied()
    }

    /// Row-major pairs `(a, b)`.
    pub fn product(a: &IndexSet, b: &IndexSet) -> Self {
        let mut v = Vec::with_capacity(a.len() * b.len());
        for la in a.labels() {
            for lb in b.labels() {
                v.push(Label::pair(la.clone(), lb.clone()));
            }
        }
        IndexSet::new(v).unwrap()
    }

    /// Tagged union: all `inl` labels first, then `inr`.
    pub fn disjoint_union(a: &IndexSet, b: &IndexSet) -> Self {
        let v = a
            .labels()
            .iter()
            .map(|l| Label::Left(Box::new(l.clone())))
            .chain(b.labels().iter().map(|l| Label::Right(Box::new(l.clone()))))
            .collect();
        IndexSet::new(v).unwrap()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.labels.iter().map(Label::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Json("labels must be an array".into()))?;
        IndexSet::new(arr.iter().map(Label::from_json).collect::<Result<Vec<_>>>()?)
    }
}

impl PartialEq for IndexSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for IndexSet {}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter().map(|l| l.to_string())).finish()
    }
}
