//! Brute-force oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hgkm_core::class::{f_lambda_k, top_coset_class};
use hgkm_core::{Composition, GkmClass, HessenbergFunction, MultiPoly, Permutation, Root};
use num_bigint::BigInt;
use rand::Rng;

/// A reduced word for `w`, read off a bubble sort.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut v = w.one_line();
    let mut word = Vec::new();
    while let Some(i) = (0..v.len().saturating_sub(1)).find(|&i| v[i] > v[i + 1]) {
        v.swap(i, i + 1);
        word.push(i + 1);
    }
    // sorting applied s_{i_1}, then s_{i_2}, ... on the right, so w = s_{i_r} ... s_{i_1}
    word.reverse();
    word
}

/// `u <= w` iff `u` is a product of a subword of a reduced word for `w`.
pub fn subword_bruhat_leq(u: &Permutation, w: &Permutation) -> bool {
    let word = reduced_word(w);
    let n = w.n();
    let mut reachable = BTreeSet::new();
    for mask in 0u32..(1 << word.len()) {
        let sub: Vec<usize> = word
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &s)| s)
            .collect();
        reachable.insert(Permutation::from_simple_word(n, &sub));
    }
    reachable.contains(u)
}

/// Divisibility by `t_a - t_b` via long division in `t_a`: each term
/// `c t_a^d m` is replaced by `c t_a^(d-1) t_b m` until no `t_a` remains.
/// The remainder is the polynomial left at the end.
pub fn long_division_remainder(p: &MultiPoly, a: usize, b: usize) -> MultiPoly {
    let n = p.nvars();
    let mut rem = p.clone();
    loop {
        let top = rem
            .terms()
            .map(|(m, _)| m.exponents()[a - 1])
            .max()
            .unwrap_or(0);
        if top == 0 {
            return rem;
        }
        let mut quotient_terms = Vec::new();
        for (m, c) in rem.terms() {
            if m.exponents()[a - 1] == top {
                let mut e = m.exponents().to_vec();
                e[a - 1] -= 1;
                quotient_terms.push((c.clone(), e));
            }
        }
        let q = MultiPoly::from_terms(n, quotient_terms).unwrap();
        let divisor = MultiPoly::linear_form(Root::new(a, b).unwrap(), n).unwrap();
        rem = &rem - &(&q * &divisor);
    }
}

pub fn random_poly<R: Rng>(rng: &mut R, n: usize) -> MultiPoly {
    let terms = rng.gen_range(0..6);
    let mut out = Vec::new();
    for _ in 0..terms {
        let c = BigInt::from(rng.gen_range(-9i64..=9));
        let e: Vec<u16> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        out.push((c, e));
    }
    MultiPoly::from_terms(n, out).unwrap()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// All two-part compositions `(l1, n - l1)`.
pub fn two_part_compositions(n: usize) -> Vec<Composition> {
    (1..n).map(|l1| Composition::new(vec![l1, n - l1]).unwrap()).collect()
}

/// All compositions of `n`.
pub fn compositions(n: usize) -> Vec<Composition> {
    fn go(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition::new(prefix.clone()).unwrap());
            return;
        }
        for p in 1..=rest {
            prefix.push(p);
            go(rest - p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

pub fn connected(n: usize) -> Vec<HessenbergFunction> {
    HessenbergFunction::all(n).into_iter().filter(|h| h.is_connected()).collect()
}

/// A class known to satisfy the GKM conditions for `h`: either a top-coset
/// class or some `f_λ^(k)` that meets the construction hypothesis.
pub fn random_valid_class<R: Rng>(rng: &mut R, h: &HessenbergFunction) -> GkmClass {
    let n = h.n();
    loop {
        if rng.gen_bool(0.3) {
            let comps = compositions(n);
            let mu = &comps[rng.gen_range(0..comps.len())];
            return top_coset_class(mu, h).unwrap();
        }
        let l1 = rng.gen_range(1..n);
        let lambda = Composition::new(vec![l1, n - l1]).unwrap();
        let k = rng.gen_range(0..=n - l1);
        if let Ok(f) = f_lambda_k(&lambda, k, h, true) {
            return f;
        }
    }
}

pub fn p(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

pub fn c(v: &[usize]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

pub fn h(v: &[usize]) -> HessenbergFunction {
    HessenbergFunction::validate(v.to_vec()).unwrap()
}

pub fn root_product(pairs: &[(usize, usize)], n: usize) -> MultiPoly {
    let roots: Vec<Root> = pairs.iter().map(|&(i, j)| Root::new(i, j).unwrap()).collect();
    MultiPoly::product_of_roots(&roots, n).unwrap()
}
