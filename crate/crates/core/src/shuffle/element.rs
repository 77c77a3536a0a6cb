use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::json::RingElementJson;
use crate::ring::{Model, RingElement};

/// A degree `d` together with a class on `C^d`; `symmetric` records whether
/// invariance under the symmetric group was verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleElement {
    value: RingElement,
    symmetric: bool,
}

impl ShuffleElement {
    /// Checks symmetry and fails with [`Error::NotSymmetric`] otherwise.
    pub fn new(value: RingElement) -> Result<Self> {
        if !value.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(ShuffleElement { value, symmetric: true })
    }

    /// Skips the symmetry check; the element is flagged as unchecked.
    pub fn new_unchecked(value: RingElement) -> Self {
        ShuffleElement { value, symmetric: false }
    }

    pub(crate) fn verified(value: RingElement) -> Self {
        ShuffleElement { value, symmetric: true }
    }

    /// The unit of the algebra, in degree 0.
    pub fn unit(model: &Model) -> Self {
        Self::scalar(model, RingElement::one(&model.with_factors(0)))
    }

    /// A degree-0 scalar.
    pub fn scalar(model: &Model, c: RingElement) -> Self {
        let m0 = model.with_factors(0);
        assert!(c.is_scalar());
        ShuffleElement { value: RingElement::scalar(&m0, c.scalar_part()), symmetric: true }
    }

    pub fn degree(&self) -> usize {
        self.value.model().factors()
    }

    pub fn value(&self) -> &RingElement {
        &self.value
    }

    pub fn into_value(self) -> RingElement {
        self.value
    }

    pub fn model(&self) -> &Model {
        self.value.model()
    }

    pub fn is_checked_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(ShuffleElement { value: self.value.checked_add(&other.value)?, symmetric: self.symmetric && other.symmetric })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ShuffleElement { value: -&self.value, symmetric: self.symmetric }
    }

    /// Multiplies by a class that is itself symmetric (caller's responsibility).
    pub fn scale_symmetric(&self, c: &RingElement) -> Result<Self> {
        Ok(ShuffleElement { value: self.value.checked_mul(c)?, symmetric: self.symmetric })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ShuffleElementJson::from_element(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ShuffleElementJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        j.to_element()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleElementJson {
    pub degree: usize,
    pub symmetric: bool,
    #[serde(flatten)]
    pub value: RingElementJson,
}

impl ShuffleElementJson {
    pub fn from_element(x: &ShuffleElement) -> Self {
        ShuffleElementJson { degree: x.degree(), symmetric: x.symmetric, value: RingElementJson::from_element(&x.value) }
    }

    pub fn to_element(&self) -> Result<ShuffleElement> {
        if self.degree != self.value.factors {
            return Err(Error::Json(format!("degree {} but {} factors", self.degree, self.value.factors)));
        }
        let value = self.value.to_element()?;
        if self.symmetric {
            ShuffleElement::new(value)
        } else {
            Ok(ShuffleElement::new_unchecked(value))
        }
    }
}
