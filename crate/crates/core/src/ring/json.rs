//! JSON form of ring elements:
//! `{"genus":g,"factors":d,"theory":name,"terms":[{"monomial":"a(1,1)*b(2,1)","coeff":"..."}]}`.

use serde::{Deserialize, Serialize};

use crate::algebra::parse::Lexer;
use crate::algebra::{RatFunc, Var};
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;

use super::element::RingElement;
use super::linebundle::parse_pair;
use super::model::{make_model, CurveClass, Model};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElementJson {
    pub genus: u32,
    pub factors: usize,
    pub theory: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl RingElementJson {
    pub fn from_element(x: &RingElement) -> Self {
        let m = x.model();
        RingElementJson {
            genus: m.genus(),
            factors: m.factors(),
            theory: m.fgl().theory_name(),
            extra_vars: m.extra_vars().iter().map(|v| v.to_string()).collect(),
            terms: x
                .terms()
                .map(|(mono, c)| TermJson { monomial: x.mono_string(mono), coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn model(&self) -> Result<Model> {
        let fgl: FormalGroupLaw = self.theory.parse()?;
        let extra = self
            .extra_vars
            .iter()
            .map(|s| Var::parse(s).filter(|v| v.is_extra()).ok_or_else(|| Error::Json(format!("unknown extra variable `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(make_model(self.genus, self.factors, fgl, &extra))
    }

    pub fn to_element(&self) -> Result<RingElement> {
        let model = self.model()?;
        self.to_element_in(&model)
    }

    /// Reads the terms over an existing model with matching shape.
    pub fn to_element_in(&self, model: &Model) -> Result<RingElement> {
        if model.genus() != self.genus || model.factors() != self.factors || model.fgl().theory_name() != self.theory {
            return Err(Error::ModelMismatch);
        }
        let mut acc = RingElement::zero(model);
        for t in &self.terms {
            let c: RatFunc = t.coeff.parse()?;
            if let Some(v) = c.vars().into_iter().find(|v| !model.allows_var(*v)) {
                return Err(Error::Json(format!("variable `{v}` not available in this model")));
            }
            let basis = parse_curve_monomial(model, &t.monomial)?;
            acc = &acc + &basis.scale(&c);
        }
        Ok(acc)
    }
}

/// Parses `1` or a `*`-product of `a(k,i)`, `b(k,i)`, `pt(k)`.
pub fn parse_curve_monomial(model: &Model, s: &str) -> Result<RingElement> {
    let mut lx = Lexer::new(s);
    if lx.eat(b'1') {
        if !lx.at_end() {
            return Err(lx.error("trailing input"));
        }
        return Ok(RingElement::one(model));
    }
    let mut acc = RingElement::one(model);
    loop {
        let name = lx.ident().ok_or_else(|| lx.error("expected a(k,i), b(k,i) or pt(k)"))?;
        let class = match name {
            "a" | "b" => {
                let (k, i) = parse_pair(&mut lx)?;
                let i = i as u32;
                let c = if name == "a" { CurveClass::A(i) } else { CurveClass::B(i) };
                RingElement::class(model, k, c)?
            }
            "pt" => {
                lx.expect(b'(')?;
                let k = super::linebundle::parse_index(&mut lx)?;
                lx.expect(b')')?;
                RingElement::point(model, k)?
            }
            _ => return Err(lx.error(format!("unknown class `{name}`"))),
        };
        acc = &acc * &class;
        if lx.at_end() {
            return Ok(acc);
        }
        lx.expect(b'*')?;
    }
}

pub fn to_json(x: &RingElement) -> String {
    serde_json::to_string(&RingElementJson::from_element(x)).expect("serializable")
}

pub fn from_json(s: &str) -> Result<RingElement> {
    let j: RingElementJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    j.to_element()
}
