//! GKM classes: one polynomial per torus fixed point `w ∈ S_n`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hessenberg::{GkmGraph, HessenbergFunction};
use crate::permutation::{
    coset_decompose, factorial, max_right_rep, special_reps, Composition, Permutation, Root, Side,
};
use crate::poly::MultiPoly;

/// A map `S_n → Z[t_1, ..., t_n]` stored densely, indexed by
/// [`Permutation::rank`]. Every nonzero value is homogeneous of the same
/// degree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ClassJson", into = "ClassJson")]
pub struct GkmClass {
    n: usize,
    values: Vec<MultiPoly>,
    degree: Option<u32>,
}

impl GkmClass {
    /// Builds a class from its values listed in [`Permutation::all`] order.
    pub fn new(n: usize, values: Vec<MultiPoly>) -> Result<Self> {
        if values.len() != factorial(n) {
            return Err(Error::SizeMismatch {
                expected: factorial(n),
                found: values.len(),
            });
        }
        let mut degree = None;
        for (w, p) in Permutation::all(n).iter().zip(&values) {
            if p.nvars() != n {
                return Err(Error::SizeMismatch { expected: n, found: p.nvars() });
            }
            let Some(d) = p.degree() else { continue };
            let expected = *degree.get_or_insert(d);
            if !p.is_homogeneous() || d != expected {
                let found = if p.is_homogeneous() {
                    d
                } else {
                    p.terms().map(|(m, _)| m.degree()).find(|&x| x != expected).unwrap_or(d)
                };
                return Err(Error::NotHomogeneous {
                    w: w.to_string(),
                    expected,
                    found,
                });
            }
        }
        Ok(GkmClass { n, values, degree })
    }

    /// Evaluates `f` at every permutation, in parallel.
    pub fn from_fn<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(&Permutation) -> MultiPoly + Sync + Send,
    {
        let values: Vec<MultiPoly> = Permutation::all(n).par_iter().map(f).collect();
        Self::new(n, values)
    }

    pub fn zero(n: usize) -> Self {
        GkmClass {
            n,
            values: vec![MultiPoly::zero(n); factorial(n)],
            degree: None,
        }
    }

    /// The constant class `1`.
    pub fn one(n: usize) -> Self {
        GkmClass {
            n,
            values: vec![MultiPoly::one(n); factorial(n)],
            degree: Some(0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Common polynomial degree of the nonzero values, `None` for the zero
    /// class. The cohomological degree is twice this.
    pub fn declared_degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn value(&self, w: &Permutation) -> &MultiPoly {
        assert_eq!(w.n(), self.n, "permutation size differs from class size");
        &self.values[w.rank()]
    }

    /// Values in [`Permutation::all`] order.
    pub fn values(&self) -> &[MultiPoly] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    /// `{w : f(w) != 0}` in lexicographic order.
    pub fn support(&self) -> Vec<Permutation> {
        Permutation::all(self.n)
            .into_iter()
            .zip(&self.values)
            .filter(|(_, p)| !p.is_zero())
            .map(|(w, _)| w)
            .collect()
    }

    /// Pointwise product. Products of classes satisfying the GKM conditions
    /// satisfy them too.
    pub fn pointwise_mul(&self, other: &GkmClass) -> Result<GkmClass> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { expected: self.n, found: other.n });
        }
        let values = self
            .values
            .par_iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Self::new(self.n, values)
    }

    pub fn scale(&self, c: &MultiPoly) -> Result<GkmClass> {
        if c.nvars() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: c.nvars() });
        }
        Self::new(self.n, self.values.iter().map(|p| p * c).collect())
    }

    pub fn verify(&self, h: &HessenbergFunction) -> Result<VerificationCertificate> {
        if h.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: h.n() });
        }
        Ok(self.verify_with_graph(&GkmGraph::build(h)))
    }

    /// Checks the divisibility condition on every edge of `graph`.
    pub fn verify_with_graph(&self, graph: &GkmGraph) -> VerificationCertificate {
        assert_eq!(graph.n, self.n, "graph size differs from class size");
        let violations: Vec<Violation> = graph
            .edges
            .par_iter()
            .filter_map(|e| {
                let a = &self.values[e.source.rank()];
                let b = &self.values[e.target.rank()];
                if a == b {
                    return None;
                }
                let diff = a - b;
                if diff.divisible_by(e.label) {
                    None
                } else {
                    Some(Violation {
                        source: e.source.clone(),
                        target: e.target.clone(),
                        label: e.label,
                        difference: diff,
                    })
                }
            })
            .collect();
        VerificationCertificate {
            verdict: if violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
            edges_checked: graph.len(),
            violations,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// An edge whose endpoint difference is not divisible by its label.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub source: Permutation,
    pub target: Permutation,
    pub label: Root,
    pub difference: MultiPoly,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerificationCertificate {
    pub verdict: Verdict,
    pub edges_checked: usize,
    pub violations: Vec<Violation>,
}

impl VerificationCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// The class supported on the single right coset `S_μ v_μ` with
/// `f(w) = Π (t_{w(i)} - t_{w(j)})` over `t_i - t_j ∈ N_h^-(v_μ)`.
pub fn top_coset_class(mu: &Composition, h: &HessenbergFunction) -> Result<GkmClass> {
    let n = h.n();
    if mu.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: mu.n() });
    }
    let vmu = max_right_rep(mu);
    let roots = h.n_h_minus(&vmu)?;
    GkmClass::from_fn(n, |w| {
        let (_, v) = coset_decompose(w, mu, Side::Right).expect("sizes checked");
        if v == vmu {
            let moved: Vec<Root> = roots.iter().map(|&r| w.act_on_root(r)).collect();
            MultiPoly::product_of_roots(&moved, n).expect("roots in range")
        } else {
            MultiPoly::zero(n)
        }
    })
}

/// `S_k = v_k(N_h^-(v_k))`, the labels of the edges leaving `v_k`.
pub fn s_k_set(lambda: &Composition, k: usize, h: &HessenbergFunction) -> Result<BTreeSet<Root>> {
    let vk = special_reps(lambda, k)?;
    Ok(h.n_h_minus(&vk)?.into_iter().map(|r| vk.act_on_root(r)).collect())
}

/// The class `f_λ^(k)`: on `y v` with `v ∈ ^λS_n`, the value is
/// `Π (t_{y(a)} - t_{y(b)})` over `t_a - t_b ∈ S_k` when `v >= v_k` in Bruhat
/// order, and zero otherwise.
///
/// With `enforce_hypothesis` and `λ_1 > 1` the construction requires
/// `h(k+2) = n`, which guarantees the GKM conditions. Without it the
/// construction still runs, so that failing instances can be inspected.
pub fn f_lambda_k(
    lambda: &Composition,
    k: usize,
    h: &HessenbergFunction,
    enforce_hypothesis: bool,
) -> Result<GkmClass> {
    let n = h.n();
    if lambda.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: lambda.n() });
    }
    let (l1, _) = lambda.two_parts()?;
    let vk = special_reps(lambda, k)?;
    if enforce_hypothesis && l1 > 1 && h.get(k + 2) != n {
        return Err(Error::HypothesisViolated(format!(
            "h(k+2) = h({}) = {} but must equal n = {n}",
            k + 2,
            h.get(k + 2)
        )));
    }
    let sk = s_k_set(lambda, k, h)?;
    GkmClass::from_fn(n, |w| {
        let (y, v) = coset_decompose(w, lambda, Side::Right).expect("sizes checked");
        if vk.bruhat_leq(&v) {
            let moved: Vec<Root> = sk.iter().map(|&r| y.act_on_root(r)).collect();
            MultiPoly::product_of_roots(&moved, n).expect("roots in range")
        } else {
            MultiPoly::zero(n)
        }
    })
}

#[derive(Serialize, Deserialize)]
struct ValueJson {
    w: Permutation,
    poly: MultiPoly,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    n: usize,
    values: Vec<ValueJson>,
}

impl From<GkmClass> for ClassJson {
    fn from(c: GkmClass) -> Self {
        ClassJson {
            n: c.n,
            values: Permutation::all(c.n)
                .into_iter()
                .zip(c.values)
                .filter(|(_, p)| !p.is_zero())
                .map(|(w, poly)| ValueJson { w, poly })
                .collect(),
        }
    }
}

impl TryFrom<ClassJson> for GkmClass {
    type Error = Error;

    fn try_from(j: ClassJson) -> Result<Self> {
        let mut values = vec![MultiPoly::zero(j.n); factorial(j.n)];
        for v in j.values {
            if v.w.n() != j.n {
                return Err(Error::SizeMismatch { expected: j.n, found: v.w.n() });
            }
            values[v.w.rank()] = v.poly;
        }
        GkmClass::new(j.n, values)
    }
}
