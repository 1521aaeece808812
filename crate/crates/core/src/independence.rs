//! Linear independence over `Z[t]` and the hypothesis checkers for the two
//! orbit-independence theorems.
//!
//! A list of classes is viewed as the `n! × m` matrix `M[w][i] = f_i(w)`.
//! Specialising `t` to an integer point cannot raise the rank, so one point
//! where the evaluated matrix has rank `m` proves independence. Dependence is
//! proved by an explicit polynomial kernel vector.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::class::{f_lambda_k, GkmClass};
use crate::dot::{dot, orbit, stabilizer, Orbit};
use crate::error::{Error, Result};
use crate::hessenberg::HessenbergFunction;
use crate::linalg::{integer_echelon, integer_rank, mat_vec, poly_det, poly_echelon, signed_minor_kernel, Echelon};
use crate::permutation::{factorial, special_reps, u_k, young_subgroup, Composition, Permutation, Root};
use crate::poly::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Independent,
    Dependent,
    /// The exact rank is full but no evaluation point witnessing it was
    /// found within the trial budget.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub verdict: Verdict,
    /// Integer point with full column rank, for `Independent`.
    pub witness: Option<Vec<i64>>,
    /// Nonzero `b` with `M b = 0`, for `Dependent`.
    pub kernel: Option<Vec<MultiPoly>>,
    pub seed: u64,
    pub trials: usize,
    pub rows: usize,
    pub cols: usize,
    /// Rows in the union of supports; all other rows of `M` vanish.
    pub support_rows: usize,
}

impl IndependenceCertificate {
    /// Re-validates the certificate against `classes` from scratch.
    pub fn recheck(&self, classes: &[GkmClass]) -> Result<bool> {
        let n = common_n(classes)?;
        if classes.len() != self.cols {
            return Ok(false);
        }
        let rows = Permutation::all(n);
        match self.verdict {
            Verdict::Independent => {
                let Some(point) = &self.witness else { return Ok(false) };
                if point.len() != n {
                    return Ok(false);
                }
                let point: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
                let m = evaluate(classes, &rows, &point);
                Ok(integer_rank(&m) == classes.len())
            }
            Verdict::Dependent => {
                let Some(b) = &self.kernel else { return Ok(false) };
                if b.len() != classes.len() || b.iter().all(MultiPoly::is_zero) {
                    return Ok(false);
                }
                let m = poly_matrix(classes, &rows);
                Ok(mat_vec(&m, b, n).iter().all(MultiPoly::is_zero))
            }
            Verdict::Inconclusive => Ok(false),
        }
    }

    pub fn is_independent(&self) -> bool {
        self.verdict == Verdict::Independent
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceOptions {
    pub seed: u64,
    pub trials: usize,
    /// Coordinates are drawn from `[-bound, bound]`.
    pub bound: i64,
}

impl Default for IndependenceOptions {
    fn default() -> Self {
        IndependenceOptions {
            seed: 0,
            trials: 8,
            bound: 1 << 20,
        }
    }
}

fn common_n(classes: &[GkmClass]) -> Result<usize> {
    let first = classes.first().ok_or(Error::EmptyInput)?;
    for c in classes {
        if c.n() != first.n() {
            return Err(Error::SizeMismatch { expected: first.n(), found: c.n() });
        }
    }
    Ok(first.n())
}

fn evaluate(classes: &[GkmClass], rows: &[Permutation], point: &[BigInt]) -> Vec<Vec<BigInt>> {
    rows.par_iter()
        .map(|w| {
            classes
                .iter()
                .map(|c| c.value(w).eval(point).expect("point has n coordinates"))
                .collect()
        })
        .collect()
}

fn poly_matrix(classes: &[GkmClass], rows: &[Permutation]) -> Vec<Vec<MultiPoly>> {
    rows.iter()
        .map(|w| classes.iter().map(|c| c.value(w).clone()).collect())
        .collect()
}

/// Draws `n` distinct integers from `[-bound, bound]`.
fn random_point(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i64> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = rng.gen_range(-bound..=bound);
        if seen.insert(x) {
            out.push(x);
        }
    }
    out.shuffle(rng);
    out
}

/// Decides `Z[t]`-linear independence of `classes`.
pub fn independence(classes: &[GkmClass], opts: &IndependenceOptions) -> Result<IndependenceCertificate> {
    let n = common_n(classes)?;
    let m = classes.len();
    let support: BTreeSet<Permutation> = classes.iter().flat_map(GkmClass::support).collect();
    let rows: Vec<Permutation> = support.into_iter().collect();
    let mut cert = IndependenceCertificate {
        verdict: Verdict::Inconclusive,
        witness: None,
        kernel: None,
        seed: opts.seed,
        trials: 0,
        rows: factorial(n),
        cols: m,
        support_rows: rows.len(),
    };

    let matrix = poly_matrix(classes, &rows);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials {
        cert.trials += 1;
        let point = random_point(&mut rng, n, opts.bound);
        let big: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        let echelon = integer_echelon(&evaluate(classes, &rows, &big));
        if echelon.rank == m {
            cert.verdict = Verdict::Independent;
            cert.witness = Some(point);
            return Ok(cert);
        }
        // The evaluated pivots give a nonsingular polynomial minor; the
        // kernel built from it is only accepted after an exact check.
        if let Some(kernel) = kernel_from_pivots(&matrix, &echelon, m, n)? {
            cert.verdict = Verdict::Dependent;
            cert.kernel = Some(kernel);
            return Ok(cert);
        }
    }

    let echelon = poly_echelon(&matrix);
    if echelon.rank == m {
        return Ok(cert);
    }
    let kernel = kernel_from_pivots(&matrix, &echelon, m, n)?
        .expect("kernel from a maximal nonsingular minor annihilates every row");
    cert.verdict = Verdict::Dependent;
    cert.kernel = Some(kernel);
    Ok(cert)
}

/// Kernel vector from the signed maximal minors of the submatrix on the
/// pivot rows and the pivot columns plus the first free column. Returns
/// `None` when the candidate does not annihilate `matrix` exactly.
fn kernel_from_pivots(matrix: &[Vec<MultiPoly>], echelon: &Echelon, m: usize, n: usize) -> Result<Option<Vec<MultiPoly>>> {
    let Some(free) = (0..m).find(|c| !echelon.pivot_cols.contains(c)) else {
        return Ok(None);
    };
    let mut cols = echelon.pivot_cols.clone();
    cols.push(free);
    cols.sort_unstable();
    let sub: Vec<Vec<MultiPoly>> = echelon
        .pivot_rows
        .iter()
        .map(|&r| cols.iter().map(|&c| matrix[r][c].clone()).collect())
        .collect();
    let small = if sub.is_empty() {
        // every class vanishes, so each unit vector is a kernel vector
        vec![MultiPoly::one(n)]
    } else {
        match signed_minor_kernel(&sub, n) {
            Ok(b) => b,
            Err(Error::AllMinorsZero) => return Ok(None),
            Err(e) => return Err(e),
        }
    };
    let mut kernel = vec![MultiPoly::zero(n); m];
    for (&c, b) in cols.iter().zip(small) {
        kernel[c] = b;
    }
    let kernel = primitive_part(kernel);
    let exact = matrix
        .par_iter()
        .all(|row| mat_vec(std::slice::from_ref(row), &kernel, n)[0].is_zero());
    Ok(exact.then_some(kernel))
}

/// Removes common root factors and the integer content, and makes the
/// first nonzero entry have a positive leading coefficient.
fn primitive_part(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let Some(smallest) = v.iter().filter(|p| !p.is_zero()).min_by_key(|p| p.num_terms()).cloned() else {
        return v;
    };
    let n = smallest.nvars();
    let (_, factors) = smallest.factor_roots();
    for gamma in factors {
        if v.iter().all(|p| p.divisible_by(gamma)) {
            let form = MultiPoly::linear_form(gamma, n).expect("valid root");
            for p in v.iter_mut() {
                *p = p.exact_div(&form).expect("same n").expect("divisibility checked");
            }
        }
    }
    let content = v
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.clone()))
        .fold(BigInt::zero(), |g, c| g.gcd(&c));
    let lead_negative = v
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.terms().next().map(|(_, c)| c.is_negative()))
        .unwrap_or(false);
    let divisor = if lead_negative { -content } else { content };
    if divisor != BigInt::from(1) && !divisor.is_zero() {
        let d = MultiPoly::constant(n, divisor);
        for p in v.iter_mut() {
            *p = p.exact_div(&d).expect("same n").expect("content divides");
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub required: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremHypothesisReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    /// Identities recomputed from the constructed classes; these do not
    /// affect [`TheoremHypothesisReport::passed`].
    pub checks: Vec<Hypothesis>,
    pub derived: BTreeMap<String, serde_json::Value>,
}

impl TheoremHypothesisReport {
    fn new(theorem: &str) -> Self {
        TheoremHypothesisReport {
            theorem: theorem.into(),
            hypotheses: Vec::new(),
            checks: Vec::new(),
            derived: BTreeMap::new(),
        }
    }

    fn require(&mut self, name: &str, required: String, observed: String, passed: bool) {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            required,
            observed,
            passed,
        });
    }

    fn check(&mut self, name: &str, required: String, observed: String, passed: bool) {
        self.checks.push(Hypothesis {
            name: name.into(),
            required,
            observed,
            passed,
        });
    }

    pub fn passed(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }

    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|h| h.passed)
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().chain(&self.checks).find(|h| h.name == name)
    }
}

/// `min {b ∈ λ_1+1 ..= n-1 : λ_2 <= h(v_{λ_2-1}^{-1}(b))}`.
pub fn j0(lambda: &Composition, h: &HessenbergFunction) -> Result<usize> {
    let (l1, l2) = lambda.two_parts()?;
    let n = lambda.n();
    if l2 == 0 {
        return Err(Error::IndexOutOfRange { k: 0, max: 0 });
    }
    let v_inv = special_reps(lambda, l2 - 1)?.inverse();
    (l1 + 1..n)
        .find(|&b| l2 <= h.get(v_inv.get(b)))
        .ok_or(Error::J0Undefined { lo: l1 + 1, hi: n - 1 })
}

/// Par(λ) for an orbit after checking that every element `v·f` is fixed by
/// the conjugate `v S_λ v^{-1}` and that the orbit has `n!/|S_λ|` elements.
pub fn module_signature(orbit: &Orbit) -> Result<Vec<usize>> {
    let n = orbit.base.n();
    let lambda = &orbit.lambda;
    if orbit.len() != factorial(n) / lambda.young_order() {
        return Err(Error::StabilizerNotYoungConjugate { index: 0 });
    }
    for (index, (v, g)) in orbit.reps.iter().zip(&orbit.elements).enumerate() {
        let v_inv = v.inverse();
        for i in lambda.generators() {
            let conj = &(v * &Permutation::simple(n, i)) * &v_inv;
            if &dot(&conj, g)? != g {
                return Err(Error::StabilizerNotYoungConjugate { index });
            }
        }
    }
    Ok(lambda.to_partition())
}

/// Whether the stabilizer of every orbit element `v·f` equals `v S_λ v^{-1}`:
/// the base stabilizer is computed exhaustively and conjugated.
pub fn stabilizers_conjugate(orbit: &Orbit) -> Result<bool> {
    let subgroup = young_subgroup(&orbit.lambda);
    if stabilizer(&orbit.base, None)? != subgroup {
        return Ok(false);
    }
    Ok(module_signature(orbit).is_ok())
}

/// Checks the hypotheses of the orbit-independence theorem for `f_λ^(λ_2 - 1)`
/// and, when they hold, certifies that its orbit is independent.
pub fn theorem5_check(
    lambda: &Composition,
    h: &HessenbergFunction,
    opts: &IndependenceOptions,
) -> Result<(TheoremHypothesisReport, Option<IndependenceCertificate>)> {
    let (l1, l2) = lambda.two_parts()?;
    let n = h.n();
    if lambda.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: lambda.n() });
    }
    let mut report = TheoremHypothesisReport::new("orbit-independence");
    report.require(
        "h(1) < lambda_2",
        format!("h(1) < {l2}"),
        format!("h(1) = {}", h.get(1)),
        h.get(1) < l2,
    );
    let k = l2 - 1;
    if l1 == 1 && k == 0 {
        report.require("k >= 1 when lambda_1 = 1", "lambda_2 >= 2".into(), format!("lambda_2 = {l2}"), false);
    }
    let j0_value = match j0(lambda, h) {
        Ok(j) => Some(j),
        Err(Error::J0Undefined { .. }) if l1 == 1 => None,
        Err(e) => return Err(e),
    };
    report.derived.insert("j0".into(), json!(j0_value));
    report.derived.insert("k".into(), json!(k));
    if l1 > 1 {
        report.require(
            "h(lambda_2 + 1) = n",
            format!("h({}) = {n}", l2 + 1),
            format!("h({}) = {}", l2 + 1, h.get(l2 + 1)),
            h.get(l2 + 1) == n,
        );
        let j = j0_value.expect("defined when lambda_1 > 1");
        let v_inv = special_reps(lambda, k)?.inverse();
        let at = v_inv.get(j);
        report.require(
            "h(v^{-1}(j0)) <= lambda_2 + 1",
            format!("h({at}) <= {}", l2 + 1),
            format!("h({at}) = {}", h.get(at)),
            h.get(at) <= l2 + 1,
        );
    } else if j0_value.is_none() {
        report.derived.insert("j0_note".into(), json!("undefined; not needed when lambda_1 = 1"));
    }
    if !report.passed() {
        return Ok((report, None));
    }

    let f = f_lambda_k(lambda, k, h, true)?;
    let orb = orbit(&f, lambda)?;
    let conjugate = stabilizers_conjugate(&orb)?;
    report.check(
        "stabilizers conjugate to S_lambda",
        "Stab(v.f) = v S_lambda v^{-1} for every orbit element".into(),
        format!("{conjugate}"),
        conjugate,
    );
    report.derived.insert("orbit_size".into(), json!(orb.len()));
    report.derived.insert("degree".into(), json!(f.declared_degree()));
    if let Ok(sig) = module_signature(&orb) {
        report.derived.insert("signature".into(), json!(sig));
    }
    let cert = independence(&orb.elements, opts)?;
    Ok((report, Some(cert)))
}

/// Cardinalities of `{i < n-1 : h(i) >= n-1}` and `{i < n : h(i) = n}`, the
/// index `j` and the degree `n - j - 1`.
pub fn degree_condition(h: &HessenbergFunction) -> Result<TheoremHypothesisReport> {
    if !h.is_connected() {
        return Err(Error::NotConnected { values: h.values().to_vec() });
    }
    let n = h.n();
    let mut report = TheoremHypothesisReport::new("degree-condition");
    let a: Vec<usize> = (1..n.saturating_sub(1)).filter(|&i| h.get(i) + 1 >= n).collect();
    let b: Vec<usize> = (1..n).filter(|&i| h.get(i) == n).collect();
    report.derived.insert("first_set".into(), json!(a));
    report.derived.insert("second_set".into(), json!(b));
    report.derived.insert("first_cardinality".into(), json!(a.len()));
    report.derived.insert("second_cardinality".into(), json!(b.len()));
    report.require(
        "cardinalities agree",
        "|{i < n-1 : h(i) >= n-1}| = |{i < n : h(i) = n}|".into(),
        format!("{} vs {}", a.len(), b.len()),
        a.len() == b.len(),
    );
    match a.first() {
        Some(&j) => {
            let hits: Vec<usize> = (1..=n).filter(|&i| h.get(i) + 1 == n).collect();
            report.require(
                "h(j) = n-1 uniquely",
                format!("{{i : h(i) = {}}} = {{{j}}}", n - 1),
                format!("{hits:?}"),
                hits == [j],
            );
            report.derived.insert("j".into(), json!(j));
            report.derived.insert("deg".into(), json!(n - j - 1));
        }
        None => {
            report.require("j exists", "first set nonempty".into(), "empty".into(), false);
        }
    }
    Ok(report)
}

fn root_product(pairs: impl IntoIterator<Item = (usize, usize)>, n: usize) -> MultiPoly {
    let roots: Vec<Root> = pairs.into_iter().map(|(i, j)| Root { i, j }).collect();
    MultiPoly::product_of_roots(&roots, n).expect("roots in range")
}

/// The classes `f_i = u_i^{-1}·f_λ^(n-2)` and `g_i = u_i^{-1}·f_λ^(n-1)` for
/// `λ = (1, n-1)`, `0 <= i < n`.
pub fn two_orbit_classes(h: &HessenbergFunction) -> Result<(Vec<GkmClass>, Vec<GkmClass>)> {
    let n = h.n();
    let lambda = Composition::of(n, vec![1, n - 1])?;
    let f = f_lambda_k(&lambda, n - 2, h, true)?;
    let g = f_lambda_k(&lambda, n - 1, h, true)?;
    let fs = (0..n)
        .map(|i| dot(&u_k(n, i).inverse(), &f))
        .collect::<Result<Vec<_>>>()?;
    let gs = (0..n)
        .map(|i| dot(&u_k(n, i).inverse(), &g))
        .collect::<Result<Vec<_>>>()?;
    Ok((fs, gs))
}

/// The `2 × 3` matrices with columns `(f_0, f_{n-1}, g_0)`: `A` has rows at
/// `u_{n-1}` and `s_j u_{n-1}`, `B` at `u_{n-1}` and `s_{j+1} u_{n-1}`.
pub fn identity_matrices(
    fs: &[GkmClass],
    gs: &[GkmClass],
    j: usize,
) -> (Vec<Vec<MultiPoly>>, Vec<Vec<MultiPoly>>) {
    let n = fs[0].n();
    let top = u_k(n, n - 1);
    let cols = [&fs[0], &fs[n - 1], &gs[0]];
    let row = |w: &Permutation| -> Vec<MultiPoly> { cols.iter().map(|c| c.value(w).clone()).collect() };
    let a = vec![row(&top), row(&(&Permutation::simple(n, j) * &top))];
    let b = vec![row(&top), row(&(&Permutation::simple(n, j + 1) * &top))];
    (a, b)
}

/// Unsigned minors `(M_1, M_2, M_3)` of a `2 × 3` matrix, `M_i` dropping
/// column `i`.
pub fn minors(a: &[Vec<MultiPoly>], n: usize) -> Vec<MultiPoly> {
    (0..3)
        .map(|i| {
            let sub: Vec<Vec<MultiPoly>> = a
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, x)| x.clone()).collect())
                .collect();
            poly_det(&sub, n)
        })
        .collect()
}

/// Checks the hypotheses of the two-orbit theorem for `λ = (1, n-1)` and,
/// when they hold, certifies independence of `{f_i} ∪ {g_i}`.
pub fn theorem6_check(
    h: &HessenbergFunction,
    opts: &IndependenceOptions,
) -> Result<(TheoremHypothesisReport, Option<IndependenceCertificate>)> {
    let n = h.n();
    let mut report = TheoremHypothesisReport::new("union-of-orbits-independence");
    let connected = h.is_connected();
    report.require("h connected", "h(i) > i for i < n".into(), format!("{:?}", h.values()), connected);
    report.require(
        "h(1) < n-1",
        format!("h(1) < {}", n.saturating_sub(1)),
        format!("h(1) = {}", h.get(1)),
        h.get(1) + 1 < n,
    );
    let mut j = None;
    if connected {
        let deg = degree_condition(h)?;
        for hyp in &deg.hypotheses {
            report.hypotheses.push(hyp.clone());
        }
        if let Some(d) = deg.derived.get("deg").and_then(|v| v.as_u64()) {
            report.require("deg >= 2", "n - j - 1 >= 2".into(), format!("deg = {d}"), d >= 2);
        }
        j = deg.derived.get("j").and_then(|v| v.as_u64()).map(|x| x as usize);
        report.derived.extend(deg.derived);
    }
    if !report.passed() {
        return Ok((report, None));
    }
    let j = j.expect("degree condition passed");

    let (fs, gs) = two_orbit_classes(h)?;
    let top = u_k(n, n - 1);
    let checks = [
        ("f_0(u_{n-1}) closed form", &fs[0], root_product((j..=n - 2).map(|i| (1, i + 1)), n)),
        ("g_0(u_{n-1}) closed form", &gs[0], root_product((j + 1..=n - 1).map(|i| (1, i + 1)), n)),
        ("f_{n-1}(u_{n-1}) closed form", &fs[n - 1], root_product((j..=n - 2).map(|i| (n, i + 1)), n)),
    ];
    for (name, class, expected) in checks {
        let got = class.value(&top);
        report.check(name, expected.to_factored_string(), got.to_factored_string(), got == &expected);
    }
    let (a, b) = identity_matrices(&fs, &gs, j);
    let am = minors(&a, n);
    let bm = minors(&b, n);
    report.check(
        "A_1 = -A_3",
        (-&am[2]).to_factored_string(),
        am[0].to_factored_string(),
        !am[0].is_zero() && am[0] == -&am[2],
    );
    report.check("B_3 = 0", "0".into(), bm[2].to_factored_string(), bm[2].is_zero());
    report.check("B_1 != 0", "nonzero".into(), bm[0].to_factored_string(), !bm[0].is_zero());
    let kernel = signed_minor_kernel(&a, n)?;
    report.check(
        "signed-minor kernel annihilates A",
        "A b = 0".into(),
        "checked".into(),
        mat_vec(&a, &kernel, n).iter().all(MultiPoly::is_zero),
    );

    let mut all = fs;
    all.extend(gs);
    report.derived.insert("classes".into(), json!(all.len()));
    report.derived.insert("degree".into(), json!(all[0].declared_degree()));
    let cert = independence(&all, opts)?;
    Ok((report, Some(cert)))
}
