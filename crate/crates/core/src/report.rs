//! Check records shared by the exact and numeric suites.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::operators::{ModelKind, ModelParams};

/// A residual or the bound it is compared against.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    /// Number of nonzero terms in an exact residual polynomial.
    Terms(usize),
    /// Largest relative error over the sampled points.
    Relative(f64),
}

impl Residual {
    fn within(&self, bound: &Residual) -> bool {
        match (self, bound) {
            (Residual::Terms(a), Residual::Terms(b)) => a <= b,
            (Residual::Relative(a), Residual::Relative(b)) => a <= b,
            (Residual::Terms(a), Residual::Relative(b)) => (*a as f64) <= *b,
            (Residual::Relative(a), Residual::Terms(b)) => *a <= *b as f64,
        }
    }
}

/// One named check with its parameters; `pass` is derived, never set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub residual: Residual,
    pub tolerance: Residual,
    pub pass: bool,
    /// Set on negative controls, which pass when the underlying check fails.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub negative_control: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Detail>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Detail {
    Text(String),
    List(Vec<String>),
}

impl std::fmt::Display for Detail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Detail::Text(s) => f.write_str(s),
            Detail::List(items) => write!(f, "[{}]", items.join(", ")),
        }
    }
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        params: BTreeMap<String, String>,
        residual: Residual,
        tolerance: Residual,
    ) -> Self {
        let pass = residual.within(&tolerance);
        CheckRecord {
            name: name.into(),
            params,
            residual,
            tolerance,
            pass,
            negative_control: false,
            details: BTreeMap::new(),
        }
    }

    /// Turns the record into a negative control: it passes exactly when the
    /// residual exceeds the tolerance.
    pub fn into_negative_control(mut self) -> Self {
        self.negative_control = true;
        self.pass = !self.residual.within(&self.tolerance);
        self
    }

    /// An exact check; passes only on a zero residual.
    pub fn exact(name: impl Into<String>, params: BTreeMap<String, String>, terms: usize) -> Self {
        Self::new(name, params, Residual::Terms(terms), Residual::Terms(0))
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.details.insert(key.into(), Detail::Text(value.to_string()));
        self
    }

    pub fn with_list<T: ToString>(mut self, key: impl Into<String>, items: &[T]) -> Self {
        self.details.insert(
            key.into(),
            Detail::List(items.iter().map(ToString::to_string).collect()),
        );
        self
    }

    /// Ordering key used to keep reports independent of evaluation order.
    pub fn sort_key(&self) -> (&str, &BTreeMap<String, String>) {
        (&self.name, &self.params)
    }
}

/// `model`, `N` and couplings as strings, rationals in `p/q` form.
pub fn model_params_map(params: &ModelParams) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    map.insert("model".into(), params.kind().name().into());
    map.insert("N".into(), params.n().to_string());
    match params.kind() {
        ModelKind::An => {
            if let Some(a) = params.alpha() {
                map.insert("alpha".into(), a.to_string());
            }
        }
        ModelKind::Bn => {
            if let Some(l) = params.lambda() {
                map.insert("lambda".into(), l.to_string());
            }
            if let Some(l) = params.lambda1() {
                map.insert("lambda1".into(), l.to_string());
            }
            if let Some(c) = params.pair_coefficient() {
                map.insert("pair_coefficient".into(), c.to_string());
            }
        }
    }
    map
}
