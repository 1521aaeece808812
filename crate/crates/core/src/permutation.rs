//! Symmetric-group combinatorics in one-line notation.
//!
//! Everything is 1-indexed. Composition is `(u * w)(i) = u(w(i))`, so
//! multiplying by a transposition on the right swaps positions and on the
//! left swaps values.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `S_n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &x in &one_line {
            if x == 0 || x > n || seen[x] || n > u8::MAX as usize {
                return Err(Error::InvalidPermutation { n, values: one_line });
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: one_line.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// The longest element `[n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).rev().collect(),
        }
    }

    /// The simple reflection `s_i` swapping `i` and `i+1`.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1 && a <= n && b <= n, "transposition out of range");
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_r}` of simple reflections.
    pub fn from_simple_word(n: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, &i| &acc * &Self::simple(n, i))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (pos, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (pos + 1) as u8;
        }
        Permutation { images: inv }
    }

    /// Coxeter length, the number of classical inversions.
    pub fn length(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] > v[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right descent set `{i : w(i) > w(i+1)}`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.get(i) > self.get(i + 1))
            .collect()
    }

    /// `w(γ) = t_{w(i)} - t_{w(j)}`.
    pub fn act_on_root(&self, gamma: Root) -> Root {
        Root {
            i: self.get(gamma.i),
            j: self.get(gamma.j),
        }
    }

    /// `N(w) = {t_i - t_j : i < j, w(i) > w(j)}`.
    pub fn inversion_set(&self) -> BTreeSet<Root> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.get(i) > self.get(j) {
                    out.insert(Root { i, j });
                }
            }
        }
        out
    }

    /// `N^-(w) = {γ ∈ Φ^- : w(γ) ∈ Φ^+}`.
    pub fn neg_inversion_set(&self) -> BTreeSet<Root> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for j in 1..=n {
            for i in j + 1..=n {
                if self.get(i) < self.get(j) {
                    out.insert(Root { i, j });
                }
            }
        }
        out
    }

    /// Bruhat order by the tableau criterion: compare the sorted prefixes of
    /// length `k` for each right descent `k` of `self`.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        assert_eq!(self.n(), other.n(), "bruhat_leq on different n");
        let mut a = Vec::with_capacity(self.n());
        let mut b = Vec::with_capacity(self.n());
        for k in self.right_descents() {
            a.clear();
            b.clear();
            a.extend_from_slice(&self.images[..k]);
            b.extend_from_slice(&other.images[..k]);
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }

    /// Position of `self` in [`Permutation::all`].
    pub fn rank(&self) -> usize {
        let v = &self.images;
        let n = v.len();
        let mut rank = 0;
        for a in 0..n {
            let smaller_after = v[a + 1..].iter().filter(|&&x| x < v[a]).count();
            rank = rank * (n - a) + smaller_after;
        }
        rank
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("composition of permutations of different n")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The root `t_i - t_j`, `i != j`. Serialized as the string `"t1-t3"`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 {
            return Err(Error::InvalidRoot { i, j });
        }
        Ok(Root { i, j })
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    pub fn negate(self) -> Root {
        Root { i: self.j, j: self.i }
    }

    /// The transposition `s_γ`; the same for `γ` and `-γ`.
    pub fn reflection(self, n: usize) -> Permutation {
        Permutation::transposition(n, self.i, self.j)
    }
}

impl std::str::FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a root like t1-t3, found {s:?}"));
        let (a, b) = s.trim().split_once('-').ok_or_else(bad)?;
        let index = |x: &str| -> Result<usize> {
            x.trim().strip_prefix('t').ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        Root::new(index(a)?, index(b)?)
    }
}

impl TryFrom<String> for Root {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Root> for String {
    fn from(r: Root) -> Self {
        r.to_string()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}-t{}", self.i, self.j)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A composition `(μ_1, ..., μ_ℓ)` of `n` with positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition {
                parts,
                reason: "no parts".into(),
            });
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition {
                parts,
                reason: "parts must be positive".into(),
            });
        }
        Ok(Composition { parts })
    }

    /// Like [`Composition::new`] but also requires the parts to sum to `n`.
    pub fn of(n: usize, parts: Vec<usize>) -> Result<Self> {
        let c = Self::new(parts)?;
        if c.n() != n {
            return Err(Error::InvalidComposition {
                parts: c.parts,
                reason: format!("parts do not sum to {n}"),
            });
        }
        Ok(c)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `[μ]_i = μ_1 + ... + μ_i` for `i = 0..=ℓ`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut out = vec![0];
        for &p in &self.parts {
            out.push(out.last().unwrap() + p);
        }
        out
    }

    /// `μ' = (μ_ℓ, ..., μ_1)`.
    pub fn reverse(&self) -> Composition {
        Composition {
            parts: self.parts.iter().rev().copied().collect(),
        }
    }

    /// Parts sorted in decreasing order.
    pub fn to_partition(&self) -> Vec<usize> {
        let mut p = self.parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// `(λ_1, λ_2)` for a two-part composition.
    pub fn two_parts(&self) -> Result<(usize, usize)> {
        match self.parts[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::NotTwoPart {
                parts: self.parts.clone(),
            }),
        }
    }

    /// Zero-based index of the block containing `x ∈ [n]`.
    pub fn block_of(&self, x: usize) -> usize {
        let mut acc = 0;
        for (b, &p) in self.parts.iter().enumerate() {
            acc += p;
            if x <= acc {
                return b;
            }
        }
        panic!("{x} outside composition of {}", self.n());
    }

    /// `i` is a cut point when `s_i` is not a generator of `S_μ`.
    pub fn is_cut(&self, i: usize) -> bool {
        let ps = self.partial_sums();
        ps[1..ps.len() - 1].contains(&i)
    }

    /// Simple reflections generating `S_μ`, as indices `i` of `s_i`.
    pub fn generators(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| !self.is_cut(i)).collect()
    }

    /// Order of `S_μ`, the product of `μ_i!`.
    pub fn young_order(&self) -> usize {
        self.parts.iter().map(|&p| factorial(p)).product()
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Shortest representatives of right cosets `S_μ w`, the set `^μS_n`.
    Right,
    /// Shortest representatives of left cosets `w S_μ`, the set `S_n^μ`.
    Left,
}

fn check_n(w: &Permutation, mu: &Composition) -> Result<()> {
    if w.n() != mu.n() {
        return Err(Error::SizeMismatch {
            expected: mu.n(),
            found: w.n(),
        });
    }
    Ok(())
}

pub fn in_young_subgroup(w: &Permutation, mu: &Composition) -> bool {
    (1..=w.n()).all(|i| mu.block_of(w.get(i)) == mu.block_of(i))
}

/// All elements of `S_μ`, in lexicographic order.
pub fn young_subgroup(mu: &Composition) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(mu.n())];
    let ps = mu.partial_sums();
    // product of the symmetric groups on each block
    for b in 0..mu.len() {
        let (lo, hi) = (ps[b], ps[b + 1]);
        let block_perms = Permutation::all(hi - lo);
        let mut next = Vec::with_capacity(out.len() * block_perms.len());
        for base in &out {
            for bp in &block_perms {
                let mut images = base.images.clone();
                for k in 0..hi - lo {
                    images[lo + k] = (lo + bp.get(k + 1)) as u8;
                }
                next.push(Permutation { images });
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// `v ∈ ^μS_n`: `v^{-1}(i) < v^{-1}(i+1)` whenever `s_i ∈ S_μ`.
pub fn is_shortest_right_rep(v: &Permutation, mu: &Composition) -> bool {
    let inv = v.inverse();
    mu.generators().into_iter().all(|i| inv.get(i) < inv.get(i + 1))
}

/// `v ∈ S_n^μ`: `v(i) < v(i+1)` whenever `s_i ∈ S_μ`.
pub fn is_shortest_left_rep(v: &Permutation, mu: &Composition) -> bool {
    mu.generators().into_iter().all(|i| v.get(i) < v.get(i + 1))
}

/// `^μS_n` (right) or `S_n^μ` (left), in lexicographic order.
pub fn shortest_coset_reps(mu: &Composition, side: Side) -> Vec<Permutation> {
    let left: Vec<Permutation> = Permutation::all(mu.n())
        .into_iter()
        .filter(|v| is_shortest_left_rep(v, mu))
        .collect();
    match side {
        Side::Left => left,
        Side::Right => {
            let mut right: Vec<Permutation> = left.iter().map(Permutation::inverse).collect();
            right.sort();
            right
        }
    }
}

/// Unique length-additive factorization relative to `S_μ`.
///
/// `Side::Right` returns `(y, v)` with `w = y v`, `y ∈ S_μ`, `v ∈ ^μS_n`;
/// `Side::Left` returns `(v', y')` with `w = v' y'`, `v' ∈ S_n^μ`, `y' ∈ S_μ`.
pub fn coset_decompose(
    w: &Permutation,
    mu: &Composition,
    side: Side,
) -> Result<(Permutation, Permutation)> {
    check_n(w, mu)?;
    let n = w.n();
    match side {
        Side::Right => {
            // sort the values of each block into the order of appearance
            let ps = mu.partial_sums();
            let mut next_value: Vec<usize> = ps[..mu.len()].iter().map(|&s| s + 1).collect();
            let mut images = vec![0usize; n];
            for (pos, slot) in images.iter_mut().enumerate() {
                let b = mu.block_of(w.get(pos + 1));
                *slot = next_value[b];
                next_value[b] += 1;
            }
            let v = Permutation::new(images)?;
            let y = w * &v.inverse();
            Ok((y, v))
        }
        Side::Left => {
            // sort the values in each block of positions
            let ps = mu.partial_sums();
            let mut images = w.one_line();
            for b in 0..mu.len() {
                images[ps[b]..ps[b + 1]].sort_unstable();
            }
            let v = Permutation::new(images)?;
            let y = &v.inverse() * w;
            Ok((v, y))
        }
    }
}

/// `v_μ`, the Bruhat-maximal element of `^μS_n`: the shortest right
/// representative of `S_μ w_0`.
pub fn max_right_rep(mu: &Composition) -> Permutation {
    let w0 = Permutation::longest(mu.n());
    coset_decompose(&w0, mu, Side::Right)
        .expect("w0 has the composition's size")
        .1
}

/// The left coset `rep · (σ^{-1} S_μ σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftCoset {
    pub rep: Permutation,
    pub conjugator: Permutation,
    pub mu: Composition,
}

impl LeftCoset {
    pub fn contains(&self, w: &Permutation) -> bool {
        let inner = &(&self.conjugator * &(&self.rep.inverse() * w)) * &self.conjugator.inverse();
        in_young_subgroup(&inner, &self.mu)
    }

    /// Elements in sorted order.
    pub fn elements(&self) -> Vec<Permutation> {
        let sigma_inv = self.conjugator.inverse();
        let mut out: Vec<Permutation> = young_subgroup(&self.mu)
            .iter()
            .map(|y| &self.rep * &(&(&sigma_inv * y) * &self.conjugator))
            .collect();
        out.sort();
        out
    }

    pub fn same_set(&self, other: &LeftCoset) -> bool {
        self.elements() == other.elements()
    }
}

/// The bijection `φ_σ : S_μ\S_n → S_n/S_μ^σ`, `S_μ τ ↦ τ^{-1} σ (σ^{-1} S_μ σ)`.
pub fn phi_map(sigma: &Permutation, tau: &Permutation, mu: &Composition) -> Result<LeftCoset> {
    check_n(sigma, mu)?;
    check_n(tau, mu)?;
    Ok(LeftCoset {
        rep: &tau.inverse() * sigma,
        conjugator: sigma.clone(),
        mu: mu.clone(),
    })
}

/// `u_k = s_1 s_2 ... s_k` in `S_n`.
pub fn u_k(n: usize, k: usize) -> Permutation {
    let word: Vec<usize> = (1..=k).collect();
    Permutation::from_simple_word(n, &word)
}

/// `v_k = v_0 u_k` for a two-part composition `λ`, `0 <= k <= λ_2`.
pub fn special_reps(lambda: &Composition, k: usize) -> Result<Permutation> {
    let (l1, l2) = lambda.two_parts()?;
    if k > l2 {
        return Err(Error::IndexOutOfRange { k, max: l2 });
    }
    let n = l1 + l2;
    let mut images: Vec<usize> = (l1 + 1..=l1 + k).collect();
    images.push(1);
    images.extend(l1 + k + 1..=n);
    images.extend(2..=l1);
    Permutation::new(images)
}

/// `v_J`: `J` sorted, followed by the sorted complement.
pub fn v_from_subset(subset: &[usize], lambda: &Composition) -> Result<Permutation> {
    let (l1, _) = lambda.two_parts()?;
    let n = lambda.n();
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if set.len() != subset.len() || set.len() != l1 || set.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::InvalidSubset {
            subset: subset.to_vec(),
            expected: l1,
            n,
        });
    }
    let mut images: Vec<usize> = set.iter().copied().collect();
    images.extend((1..=n).filter(|x| !set.contains(x)));
    Permutation::new(images)
}

/// The subset `J` with `v = v_J`, i.e. the first `λ_1` values of `v`, sorted.
pub fn subset_of(v: &Permutation, lambda: &Composition) -> Result<Vec<usize>> {
    let (l1, _) = lambda.two_parts()?;
    let mut j: Vec<usize> = v.one_line()[..l1].to_vec();
    j.sort_unstable();
    Ok(j)
}
