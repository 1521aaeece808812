use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::{Permutation, Root};

/// A nondecreasing `h : [n] → [n]` with `h(i) >= i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct HessenbergFunction {
    values: Vec<usize>,
}

impl HessenbergFunction {
    pub fn validate(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyHessenberg);
        }
        for (k, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::HessenbergOutOfRange { index: k + 1, value: v, n });
            }
        }
        for k in 1..n {
            if values[k] < values[k - 1] {
                return Err(Error::Monotonicity { index: k });
            }
        }
        for (k, &v) in values.iter().enumerate() {
            if v < k + 1 {
                return Err(Error::DominanceViolation { index: k + 1, value: v });
            }
        }
        Ok(HessenbergFunction { values })
    }

    /// `h = (n, ..., n)`, whose variety is the full flag variety.
    pub fn full(n: usize) -> Self {
        HessenbergFunction { values: vec![n; n] }
    }

    /// Every valid Hessenberg function on `[n]`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        fn extend(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<HessenbergFunction>) {
            let i = prefix.len() + 1;
            if i > n {
                out.push(HessenbergFunction { values: prefix.clone() });
                return;
            }
            let lo = prefix.last().copied().unwrap_or(1).max(i);
            for v in lo..=n {
                prefix.push(v);
                extend(n, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        extend(n, &mut Vec::new(), &mut out);
        out
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `h(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_connected(&self) -> bool {
        (1..self.n()).all(|i| self.get(i) > i)
    }

    /// Whether the negative root `γ` lies in `Φ_h^-`.
    #[inline]
    pub fn contains(&self, gamma: Root) -> bool {
        gamma.i > gamma.j && gamma.i <= self.get(gamma.j)
    }

    /// `Φ_h^- = {t_i - t_j : i > j, i <= h(j)}`.
    pub fn phi_h_minus(&self) -> BTreeSet<Root> {
        let mut out = BTreeSet::new();
        for j in 1..=self.n() {
            for i in j + 1..=self.get(j) {
                out.insert(Root { i, j });
            }
        }
        out
    }

    /// Complex dimension of the variety, `Σ (h(i) - i) = |Φ_h^-|`.
    pub fn dimension(&self) -> usize {
        self.values.iter().enumerate().map(|(k, &v)| v - (k + 1)).sum()
    }

    /// Inverse of [`HessenbergFunction::phi_h_minus`].
    pub fn from_phi_h_minus(n: usize, roots: &BTreeSet<Root>) -> Result<Self> {
        let mut values: Vec<usize> = (1..=n).collect();
        for r in roots {
            if r.i <= r.j || r.i > n {
                return Err(Error::InvalidRoot { i: r.i, j: r.j });
            }
            values[r.j - 1] = values[r.j - 1].max(r.i);
        }
        let h = Self::validate(values)?;
        if &h.phi_h_minus() != roots {
            return Err(Error::Parse("root set is not of the form Φ_h^-".into()));
        }
        Ok(h)
    }

    /// `N_h^-(w) = N^-(w) ∩ Φ_h^-`.
    pub fn n_h_minus(&self, w: &Permutation) -> Result<BTreeSet<Root>> {
        if w.n() != self.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: w.n() });
        }
        Ok(self.n_h_minus_iter(w).collect())
    }

    fn n_h_minus_iter<'a>(&'a self, w: &'a Permutation) -> impl Iterator<Item = Root> + 'a {
        (1..=self.n()).flat_map(move |j| {
            (j + 1..=self.get(j))
                .filter(move |&i| w.get(i) < w.get(j))
                .map(move |i| Root { i, j })
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let values = parse_list(s)?;
        Self::validate(values)
    }
}

/// Parses a comma-separated list of positive integers such as `3,4,5,5,5`.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("expected a comma-separated integer list, found {s:?}")))
        })
        .collect()
}

impl TryFrom<Vec<usize>> for HessenbergFunction {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::validate(v)
    }
}

impl From<HessenbergFunction> for Vec<usize> {
    fn from(h: HessenbergFunction) -> Self {
        h.values
    }
}

/// A directed edge `source → source·s_γ` labelled by `source(γ)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub source: Permutation,
    pub target: Permutation,
    pub gamma: Root,
    pub label: Root,
}

/// The GKM graph of `Hess(S, h)`: vertices `S_n`, edges oriented from the
/// longer permutation to the shorter one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GkmGraph {
    pub n: usize,
    pub h: HessenbergFunction,
    pub edges: Vec<Edge>,
}

impl GkmGraph {
    pub fn build(h: &HessenbergFunction) -> Self {
        let n = h.n();
        let edges: Vec<Edge> = Permutation::all(n)
            .into_par_iter()
            .flat_map_iter(|w| {
                let out: Vec<Edge> = h
                    .n_h_minus_iter(&w)
                    .map(|gamma| Edge {
                        target: &w * &gamma.reflection(n),
                        label: w.act_on_root(gamma),
                        source: w.clone(),
                        gamma,
                    })
                    .collect();
                out
            })
            .collect();
        GkmGraph { n, h: h.clone(), edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn out_edges<'a>(&'a self, w: &'a Permutation) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.source == w)
    }

    /// Number of edges touching each vertex, indexed by [`Permutation::rank`].
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; crate::permutation::factorial(self.n)];
        for e in &self.edges {
            deg[e.source.rank()] += 1;
            deg[e.target.rank()] += 1;
        }
        deg
    }

    /// Graphviz rendering with labels such as `t1-t3`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gkm {\n  node [shape=plaintext];\n");
        for w in Permutation::all(self.n) {
            let _ = writeln!(s, "  \"{w}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                e.source, e.target, e.label
            );
        }
        s.push_str("}\n");
        s
    }
}
