use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which optimization problem an [`Instance`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Minimize `c - x` under majorization, `x` the column sums, `x <= c`.
    MinRemaining,
    /// Minimize `b + x` under majorization.
    MinCombined,
    /// Minimize `d - x` with column sums capped by `c`.
    GeneralMin,
    /// Maximize `b + x` with column sums capped by `c`.
    GeneralMax,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::MinRemaining => "min_remaining",
            Variant::MinCombined => "min_combined",
            Variant::GeneralMin => "general_min",
            Variant::GeneralMax => "general_max",
        }
    }
}

/// A problem description as read from an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub variant: Variant,
    #[serde(rename = "row_sums")]
    pub r: Vec<u64>,
    #[serde(rename = "ceiling", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<u64>>,
    #[serde(rename = "base", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u64>>,
    #[serde(rename = "reference", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
}

impl Instance {
    pub fn min_remaining(c: Vec<u64>, r: Vec<u64>) -> Self {
        Self {
            variant: Variant::MinRemaining,
            r,
            c: Some(c),
            b: None,
            d: None,
        }
    }

    pub fn min_combined(b: Vec<u64>, r: Vec<u64>) -> Self {
        Self {
            variant: Variant::MinCombined,
            r,
            c: None,
            b: Some(b),
            d: None,
        }
    }

    pub fn general_min(d: Vec<u64>, c: Vec<u64>, r: Vec<u64>) -> Self {
        Self {
            variant: Variant::GeneralMin,
            r,
            c: Some(c),
            b: None,
            d: Some(d),
        }
    }

    pub fn general_max(b: Vec<u64>, c: Vec<u64>, r: Vec<u64>) -> Self {
        Self {
            variant: Variant::GeneralMax,
            r,
            c: Some(c),
            b: Some(b),
            d: None,
        }
    }

    /// Parses and validates a JSON instance document.
    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Instance = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("instance: {e}")))?;
        inst.validate()?;
        Ok(inst)
    }

    /// Checks that the fields required by the variant are present, that no
    /// unused field is set, and that all column vectors share one length n >= 1.
    ///
    /// Row sums larger than n are a property of the data, not of the file, and
    /// are reported by the solvers as infeasibility.
    pub fn validate(&self) -> Result<()> {
        let (need_c, need_b, need_d) = match self.variant {
            Variant::MinRemaining => (true, false, false),
            Variant::MinCombined => (false, true, false),
            Variant::GeneralMin => (true, false, true),
            Variant::GeneralMax => (true, true, false),
        };
        let fields = [
            ("ceiling", &self.c, need_c),
            ("base", &self.b, need_b),
            ("reference", &self.d, need_d),
        ];
        let mut n = None;
        for (name, value, needed) in fields {
            match (value, needed) {
                (None, true) => {
                    return Err(Error::InvalidInput(format!(
                        "field \"{name}\" is required for variant {}",
                        self.variant.as_str()
                    )))
                }
                (Some(_), false) => {
                    return Err(Error::InvalidInput(format!(
                        "field \"{name}\" is not used by variant {}",
                        self.variant.as_str()
                    )))
                }
                (Some(v), true) => match n {
                    None if v.is_empty() => {
                        return Err(Error::InvalidInput(format!(
                            "field \"{name}\" must have at least one entry"
                        )))
                    }
                    None => n = Some(v.len()),
                    Some(len) if len != v.len() => {
                        return Err(Error::InvalidInput(format!(
                            "field \"{name}\" has length {}, expected {len}",
                            v.len()
                        )))
                    }
                    Some(_) => {}
                },
                (None, false) => {}
            }
        }
        Ok(())
    }

    /// Number of columns.
    pub fn n(&self) -> usize {
        self.c
            .as_ref()
            .or(self.b.as_ref())
            .or(self.d.as_ref())
            .map_or(0, Vec::len)
    }

    /// Number of rows.
    pub fn m(&self) -> usize {
        self.r.len()
    }

    pub(crate) fn field(&self, name: &'static str) -> Result<&[u64]> {
        let v = match name {
            "ceiling" => &self.c,
            "base" => &self.b,
            "reference" => &self.d,
            _ => unreachable!("unknown instance field {name}"),
        };
        v.as_deref().ok_or_else(|| {
            Error::InvalidInput(format!(
                "field \"{name}\" is required for variant {}",
                self.variant.as_str()
            ))
        })
    }
}
