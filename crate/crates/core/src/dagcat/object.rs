use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three concrete categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Rel,
    PInj,
    DStoch,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Rel, Category::PInj, Category::DStoch];

    pub fn name(self) -> &'static str {
        match self {
            Category::Rel => "rel",
            Category::PInj => "pinj",
            Category::DStoch => "dstoch",
        }
    }

    /// Rel and PInj hom-sets are finite; DStoch hom-sets are not.
    pub fn is_enumerable(self) -> bool {
        !matches!(self, Category::DStoch)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rel" => Ok(Category::Rel),
            "pinj" => Ok(Category::PInj),
            "dstoch" => Ok(Category::DStoch),
            other => Err(Error::Config(format!("unknown category `{other}`"))),
        }
    }
}

/// A finite set, identified by its size and optional label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinObject {
    pub size: usize,
    pub label: Option<Arc<str>>,
}

impl FinObject {
    pub fn new(size: usize) -> Self {
        FinObject { size, label: None }
    }

    pub fn labeled(size: usize, label: &str) -> Self {
        FinObject {
            size,
            label: Some(Arc::from(label)),
        }
    }

    /// X ⊎ A, with the elements of X first.
    pub fn disjoint_union(&self, other: &FinObject) -> FinObject {
        let label = match (&self.label, &other.label) {
            (None, None) => None,
            (a, b) => Some(Arc::from(format!(
                "{}+{}",
                a.as_deref().unwrap_or("_"),
                b.as_deref().unwrap_or("_")
            ))),
        };
        FinObject {
            size: self.size + other.size,
            label,
        }
    }
}

impl From<usize> for FinObject {
    fn from(size: usize) -> Self {
        FinObject::new(size)
    }
}

impl fmt::Display for FinObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(label) => write!(f, "{label}:{}", self.size),
            None => write!(f, "{}", self.size),
        }
    }
}

/// The hom-set C(src, dst) of a category; an object of the category of
/// functionals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomSpace {
    category: Category,
    src: FinObject,
    dst: FinObject,
}

impl HomSpace {
    pub fn new(category: Category, src: impl Into<FinObject>, dst: impl Into<FinObject>) -> Result<Self> {
        let (src, dst) = (src.into(), dst.into());
        if category == Category::DStoch && src.size != dst.size {
            return Err(Error::dims(format!(
                "dstoch hom-sets must be square, got {src} -> {dst}"
            )));
        }
        Ok(HomSpace { category, src, dst })
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn src(&self) -> &FinObject {
        &self.src
    }

    pub fn dst(&self) -> &FinObject {
        &self.dst
    }

    /// C(X, Y) ↦ C(Y, X), the space the dagger lands in.
    pub fn flipped(&self) -> HomSpace {
        HomSpace {
            category: self.category,
            src: self.dst.clone(),
            dst: self.src.clone(),
        }
    }

    pub fn is_endo_shaped(&self) -> bool {
        self.src == self.dst
    }

    pub fn cells(&self) -> usize {
        self.src.size * self.dst.size
    }
}

impl fmt::Display for HomSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.category, self.src, self.dst)
    }
}
