//! The dot action `(v·f)(w) = v(f(v^{-1} w))` and its orbits.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::GkmClass;
use crate::error::{Error, Result};
use crate::permutation::{
    is_shortest_left_rep, shortest_coset_reps, special_reps, v_from_subset, young_subgroup, Composition,
    Permutation, Side,
};

pub fn dot(v: &Permutation, f: &GkmClass) -> Result<GkmClass> {
    if v.n() != f.n() {
        return Err(Error::SizeMismatch { expected: f.n(), found: v.n() });
    }
    if v.is_identity() {
        return Ok(f.clone());
    }
    let v_inv = v.inverse();
    GkmClass::from_fn(f.n(), |w| {
        f.value(&(&v_inv * w))
            .perm_action(v)
            .expect("sizes checked")
    })
}

/// Whether `y·f = f` for every `y ∈ S_μ`, checked on the generators.
pub fn is_invariant(f: &GkmClass, mu: &Composition) -> Result<bool> {
    if mu.n() != f.n() {
        return Err(Error::SizeMismatch { expected: f.n(), found: mu.n() });
    }
    for i in mu.generators() {
        if &dot(&Permutation::simple(f.n(), i), f)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The classes `v·f` for `v ∈ S_n^λ`, ordered lexicographically by `v`
/// (for two parts this is the order on the subsets `J` of `v_J`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OrbitJson", into = "OrbitJson")]
pub struct Orbit {
    pub base: GkmClass,
    pub lambda: Composition,
    pub reps: Vec<Permutation>,
    pub elements: Vec<GkmClass>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn orbit(f: &GkmClass, lambda: &Composition) -> Result<Orbit> {
    if !is_invariant(f, lambda)? {
        return Err(Error::NotInvariant {
            parts: lambda.parts().to_vec(),
        });
    }
    let reps = shortest_coset_reps(lambda, Side::Left);
    let elements = reps
        .par_iter()
        .map(|v| dot(v, f))
        .collect::<Result<Vec<_>>>()?;
    for a in 0..elements.len() {
        for b in a + 1..elements.len() {
            if elements[a] == elements[b] {
                return Err(Error::NonDistinctOrbit);
            }
        }
    }
    Ok(Orbit {
        base: f.clone(),
        lambda: lambda.clone(),
        reps,
        elements,
    })
}

/// `{v ∈ S_n : v·f = f}` in lexicographic order.
///
/// When `hint` is given and `f` is invariant under `S_hint`, only the
/// shortest left coset representatives are tested and each passing one
/// contributes its whole coset. Otherwise all of `S_n` is scanned.
pub fn stabilizer(f: &GkmClass, hint: Option<&Composition>) -> Result<Vec<Permutation>> {
    let n = f.n();
    if let Some(mu) = hint {
        if is_invariant(f, mu)? {
            let subgroup = young_subgroup(mu);
            let reps = shortest_coset_reps(mu, Side::Left);
            let fixing: Vec<Permutation> = reps
                .into_par_iter()
                .filter(|v| dot(v, f).map(|g| &g == f).unwrap_or(false))
                .collect();
            let mut out: Vec<Permutation> = fixing
                .iter()
                .flat_map(|v| subgroup.iter().map(move |y| v * y))
                .collect();
            out.sort();
            return Ok(out);
        }
    }
    let out: Vec<Permutation> = Permutation::all(n)
        .into_par_iter()
        .filter(|v| dot(v, f).map(|g| &g == f).unwrap_or(false))
        .collect();
    Ok(out)
}

/// Predicted support of `v·f_λ^(k)`: the union over `k <= j <= λ_2` of the
/// left cosets `v v_j (v_j^{-1} S_λ v_j) = v S_λ v_j`.
pub fn translate_support(v: &Permutation, lambda: &Composition, k: usize) -> Result<Vec<Permutation>> {
    let (_, l2) = lambda.two_parts()?;
    if v.n() != lambda.n() {
        return Err(Error::SizeMismatch { expected: lambda.n(), found: v.n() });
    }
    if !is_shortest_left_rep(v, lambda) {
        return Err(Error::NotShortestLeftRep {
            v: v.to_string(),
            parts: lambda.parts().to_vec(),
        });
    }
    if k > l2 {
        return Err(Error::IndexOutOfRange { k, max: l2 });
    }
    let subgroup = young_subgroup(lambda);
    let mut out = BTreeSet::new();
    for j in k..=l2 {
        let vj = special_reps(lambda, j)?;
        for y in &subgroup {
            out.insert(&(v * y) * &vj);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportOverlap {
    /// Whether the supports of `v_I·f_λ^(k)` and `v_J·f_λ^(k)` meet.
    pub overlapping: bool,
    /// For `k = λ_2 - 1`: `I = J` or `|I ∩ J| = λ_1 - 1`.
    pub rule_prediction: Option<bool>,
}

pub fn support_overlap(i: &[usize], j: &[usize], lambda: &Composition, k: usize) -> Result<SupportOverlap> {
    let (l1, l2) = lambda.two_parts()?;
    let si: BTreeSet<Permutation> = translate_support(&v_from_subset(i, lambda)?, lambda, k)?
        .into_iter()
        .collect();
    let sj = translate_support(&v_from_subset(j, lambda)?, lambda, k)?;
    let overlapping = sj.iter().any(|w| si.contains(w));
    let rule_prediction = (k + 1 == l2).then(|| {
        let a: BTreeSet<usize> = i.iter().copied().collect();
        let b: BTreeSet<usize> = j.iter().copied().collect();
        a == b || a.intersection(&b).count() + 1 == l1
    });
    Ok(SupportOverlap {
        overlapping,
        rule_prediction,
    })
}

/// Whether the supports of `v_I·f`, `v_J·f`, `v_K·f` have empty common
/// intersection, for pairwise distinct `I`, `J`, `K`.
pub fn triple_intersection_empty(
    subsets: [&[usize]; 3],
    lambda: &Composition,
    k: usize,
) -> Result<bool> {
    let sets: Vec<BTreeSet<usize>> = subsets.iter().map(|s| s.iter().copied().collect()).collect();
    if sets[0] == sets[1] || sets[1] == sets[2] || sets[0] == sets[2] {
        return Err(Error::HypothesisViolated("subsets must be pairwise distinct".into()));
    }
    let mut common: Option<BTreeSet<Permutation>> = None;
    for s in subsets {
        let supp: BTreeSet<Permutation> = translate_support(&v_from_subset(s, lambda)?, lambda, k)?
            .into_iter()
            .collect();
        common = Some(match common {
            None => supp,
            Some(c) => c.intersection(&supp).cloned().collect(),
        });
    }
    Ok(common.is_none_or(|c| c.is_empty()))
}

#[derive(Serialize, Deserialize)]
struct OrbitJson {
    base: GkmClass,
    lambda: Composition,
    reps: Vec<Permutation>,
}

impl From<Orbit> for OrbitJson {
    fn from(o: Orbit) -> Self {
        OrbitJson {
            base: o.base,
            lambda: o.lambda,
            reps: o.reps,
        }
    }
}

impl TryFrom<OrbitJson> for Orbit {
    type Error = Error;

    fn try_from(j: OrbitJson) -> Result<Self> {
        let elements = j
            .reps
            .iter()
            .map(|v| dot(v, &j.base))
            .collect::<Result<Vec<_>>>()?;
        Ok(Orbit {
            base: j.base,
            lambda: j.lambda,
            reps: j.reps,
            elements,
        })
    }
}
