use std::fmt;

/// Three-valued result: a known value, or `Unknown` carrying the name of
/// the analytic datum that would be needed to decide it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tri<T> {
    Known(T),
    Unknown(String),
}

/// Three-valued truth.
pub type TriBool = Tri<bool>;

impl<T> Tri<T> {
    pub fn unknown(reason: impl Into<String>) -> Self {
        Tri::Unknown(reason.into())
    }

    pub fn is_known(&self) -> bool {
        matches!(self, Tri::Known(_))
    }

    pub fn known(&self) -> Option<&T> {
        match self {
            Tri::Known(v) => Some(v),
            Tri::Unknown(_) => None,
        }
    }

    pub fn into_known(self) -> Option<T> {
        match self {
            Tri::Known(v) => Some(v),
            Tri::Unknown(_) => None,
        }
    }

    pub fn unknown_reason(&self) -> Option<&str> {
        match self {
            Tri::Known(_) => None,
            Tri::Unknown(r) => Some(r),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Tri<U> {
        match self {
            Tri::Known(v) => Tri::Known(f(v)),
            Tri::Unknown(r) => Tri::Unknown(r),
        }
    }

    pub fn as_ref(&self) -> Tri<&T> {
        match self {
            Tri::Known(v) => Tri::Known(v),
            Tri::Unknown(r) => Tri::Unknown(r.clone()),
        }
    }
}

impl TriBool {
    pub const TRUE: TriBool = Tri::Known(true);
    pub const FALSE: TriBool = Tri::Known(false);

    pub fn is_true(&self) -> bool {
        matches!(self, Tri::Known(true))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Tri::Known(false))
    }
}

impl<T: fmt::Display> fmt::Display for Tri<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tri::Known(v) => write!(f, "{v}"),
            Tri::Unknown(r) => write!(f, "unknown ({r})"),
        }
    }
}
