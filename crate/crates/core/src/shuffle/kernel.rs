use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::ring::{euler, LineBundleMonomial, Model, RingElement};

/// `g(z)` for a line-bundle argument `z`, with `pair = (i, j)` selecting the
/// diagonal that `O(Δ)` refers to.
pub type KernelFn = dyn Fn(&Model, &LineBundleMonomial, (usize, usize)) -> Result<RingElement> + Send + Sync;

/// A named kernel rule with a memo table of evaluated values.
#[derive(Clone)]
pub struct Kernel {
    name: String,
    rule: Arc<KernelFn>,
    cache: Arc<Mutex<HashMap<String, RingElement>>>,
}

impl Kernel {
    pub fn custom(name: impl Into<String>, rule: impl Fn(&Model, &LineBundleMonomial, (usize, usize)) -> Result<RingElement> + Send + Sync + 'static) -> Self {
        Kernel { name: name.into(), rule: Arc::new(rule), cache: Arc::default() }
    }

    /// `e(t z^-1) e(z O(-Δ)) e(t z O(Δ)) / e(z)`.
    pub fn gc() -> Self {
        Kernel::custom("gc", |model, z, pair| {
            let t = LineBundleMonomial::t();
            let diag = LineBundleMonomial::diagonal(pair.0, pair.1);
            let a = euler(model, &t.tensor(&z.inverse()))?;
            let b = euler(model, &z.tensor(&diag.inverse()))?;
            let c = euler(model, &t.tensor(z).tensor(&diag))?;
            let d = euler(model, z)?;
            (&(&a * &b) * &c).checked_div(&d)
        })
    }

    /// `e(z O(-Δ)) e(t z O(Δ)) / (e(z) e(t z))`.
    pub fn gc_norm() -> Self {
        Kernel::custom("gcnorm", |model, z, pair| {
            let t = LineBundleMonomial::t();
            let diag = LineBundleMonomial::diagonal(pair.0, pair.1);
            let b = euler(model, &z.tensor(&diag.inverse()))?;
            let c = euler(model, &t.tensor(z).tensor(&diag))?;
            let d = euler(model, z)?;
            let e = euler(model, &t.tensor(z))?;
            (&b * &c).checked_div(&(&d * &e))
        })
    }

    pub fn trivial() -> Self {
        Kernel::custom("trivial", |model, _, _| Ok(RingElement::one(model)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `g(z)` with the diagonal of `pair`.
    pub fn eval(&self, model: &Model, z: &LineBundleMonomial, pair: (usize, usize)) -> Result<RingElement> {
        let key = format!(
            "{}|{}|{}|{:?}|{}|{:?}",
            model.genus(),
            model.factors(),
            model.fgl().theory_name(),
            model.extra_vars(),
            z,
            pair
        );
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.with_model(model));
        }
        let v = (self.rule)(model, z, pair).map_err(|e| match e {
            Error::NotInvertible | Error::DivisionByZero => {
                Error::Domain(format!("kernel `{}` undefined at {z} on slots {pair:?}", self.name))
            }
            e => e,
        })?;
        self.cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// `g(t_j / t_i)` on the slot pair `(i, j)`.
    pub fn at_pair(&self, model: &Model, i: usize, j: usize) -> Result<RingElement> {
        self.eval(model, &LineBundleMonomial::ratio(j, i), (i, j))
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernel({})", self.name)
    }
}

/// Cumulative sums `0 = d_0 <= d_1 <= ... <= d_k = d` of a composition.
pub fn cumulative(parts: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for p in parts {
        out.push(out.last().unwrap() + p);
    }
    out
}

/// Ordered pairs `(i, j)` with `i` in an earlier block than `j`.
pub fn block_pairs(parts: &[usize]) -> Vec<(usize, usize)> {
    let cum = cumulative(parts);
    let d = *cum.last().unwrap();
    let mut out = Vec::new();
    for b in 1..cum.len() {
        for i in cum[b - 1] + 1..=cum[b] {
            for j in cum[b] + 1..=d {
                out.push((i, j));
            }
        }
    }
    out
}

/// Product of `g(t_j/t_i)` over the pairs with `i` in an earlier block than `j`.
pub fn kernel_block(g: &Kernel, model: &Model, parts: &[usize]) -> Result<RingElement> {
    let total: usize = parts.iter().sum();
    if total != model.factors() {
        return Err(Error::Composition { parts: parts.to_vec(), factors: model.factors() });
    }
    let mut acc = RingElement::one(model);
    for (i, j) in block_pairs(parts) {
        acc = &acc * &g.at_pair(model, i, j)?;
    }
    Ok(acc)
}
