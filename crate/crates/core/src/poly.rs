//! Sparse polynomials in `Z[t_1, ..., t_n]` with big-integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::{Permutation, Root};

/// Exponent vector. Ordered graded-lexicographically, so the largest key of
/// a term map is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial in `n` variables. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(vec![0; nvars]), c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `t_i`, `1 <= i <= n`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable t{i} out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), BigInt::one());
        p
    }

    /// `t_i - t_j` for the root `(i, j)`.
    pub fn linear_form(gamma: Root, nvars: usize) -> Result<Self> {
        if gamma.i == gamma.j || gamma.i > nvars || gamma.j > nvars || gamma.i == 0 || gamma.j == 0 {
            return Err(Error::InvalidRoot {
                i: gamma.i,
                j: gamma.j,
            });
        }
        Ok(&Self::var(nvars, gamma.i) - &Self::var(nvars, gamma.j))
    }

    /// Product of the linear forms of `roots`; the empty product is 1.
    pub fn product_of_roots<'a>(roots: impl IntoIterator<Item = &'a Root>, nvars: usize) -> Result<Self> {
        let mut acc = Self::one(nvars);
        for &r in roots {
            acc = &acc * &Self::linear_form(r, nvars)?;
        }
        Ok(acc)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (BigInt, Vec<u16>)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::SizeMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::SizeMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn arith(&self, other: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = match op {
            ArithOp::Add | ArithOp::Sub => self.clone(),
            ArithOp::Mul => MultiPoly::zero(self.nvars),
        };
        match op {
            ArithOp::Add => {
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), c.clone());
                }
            }
            ArithOp::Sub => {
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), -c);
                }
            }
            ArithOp::Mul => {
                for (m1, c1) in &self.terms {
                    for (m2, c2) in &other.terms {
                        out.add_term(m1.product(m2), c1 * c2);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// The ring map `t_i ↦ t_{w(i)}`.
    pub fn perm_action(&self, w: &Permutation) -> Result<MultiPoly> {
        if w.n() != self.nvars {
            return Err(Error::SizeMismatch {
                expected: self.nvars,
                found: w.n(),
            });
        }
        if w.is_identity() {
            return Ok(self.clone());
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; self.nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[w.get(i + 1) - 1] = x;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// The ring map `t_a ↦ t_b`, other variables fixed.
    pub fn substitute(&self, a: usize, b: usize) -> Result<MultiPoly> {
        if a == b || a == 0 || b == 0 || a > self.nvars || b > self.nvars {
            return Err(Error::InvalidRoot { i: a, j: b });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[b - 1] += e[a - 1];
            e[a - 1] = 0;
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Whether `t_a - t_b` divides `self`, for `gamma = (a, b)`.
    ///
    /// The linear form is prime, so this is the vanishing of `self` after
    /// `t_a := t_b`. Only the terms that change under the substitution need
    /// to cancel, which keeps this a single pass.
    pub fn divisible_by(&self, gamma: Root) -> bool {
        let (a, b) = (gamma.i - 1, gamma.j - 1);
        assert!(a != b && a < self.nvars && b < self.nvars, "invalid root {gamma}");
        let mut collapsed: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[b] += e[a];
            e[a] = 0;
            *collapsed.entry(Monomial(e)).or_insert_with(BigInt::zero) += c;
        }
        collapsed.values().all(Zero::is_zero)
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::SizeMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_same(divisor)?;
        let (lm, lc) = match divisor.terms.iter().next_back() {
            Some(t) => t,
            None => return Err(Error::Parse("division by the zero polynomial".into())),
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let (q, r) = num_integer::Integer::div_rem(c, lc);
            if !r.is_zero() {
                return Ok(None);
            }
            let qm = m.quotient(lm);
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.product(dm), -(dc * &q));
            }
            quot.add_term(qm, q);
        }
        Ok(Some(quot))
    }

    /// Splits `self` into a constant times linear forms `t_a - t_b`
    /// (`a < b`) times a cofactor with no such linear factor.
    pub fn factor_roots(&self) -> (MultiPoly, Vec<Root>) {
        let mut rest = self.clone();
        let mut factors = Vec::new();
        if rest.is_zero() {
            return (rest, factors);
        }
        'search: loop {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            for a in 1..=self.nvars {
                for b in a + 1..=self.nvars {
                    let gamma = Root { i: a, j: b };
                    if rest.divisible_by(gamma) {
                        let form = MultiPoly::linear_form(gamma, self.nvars).expect("valid root");
                        rest = rest
                            .exact_div(&form)
                            .expect("same n")
                            .expect("divisibility was checked");
                        factors.push(gamma);
                        continue 'search;
                    }
                }
            }
            break;
        }
        (rest, factors)
    }

    /// Renders as a product of root factors where possible, such as
    /// `(t1-t3)(t2-t5)` or `-2(t1-t2)`, falling back to the expanded form.
    pub fn to_factored_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (rest, factors) = self.factor_roots();
        let body: String = factors.iter().map(|r| format!("({r})")).collect();
        if rest.degree() == Some(0) {
            let c = rest.terms.values().next().expect("nonzero constant");
            let prefix = if c.is_one() {
                String::new()
            } else if *c == -BigInt::one() {
                "-".into()
            } else {
                c.to_string()
            };
            if body.is_empty() {
                c.to_string()
            } else {
                format!("{prefix}{body}")
            }
        } else if body.is_empty() {
            rest.to_string()
        } else {
            format!("({rest}){body}")
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for &MultiPoly {
            type Output = MultiPoly;

            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.arith(rhs, $op).expect("polynomials in different numbers of variables")
            }
        }

        impl $trait for MultiPoly {
            type Output = MultiPoly;

            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    e: Vec<u16>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl From<MultiPoly> for PolyJson {
    fn from(p: MultiPoly) -> Self {
        PolyJson {
            n: p.nvars,
            terms: p
                .terms
                .into_iter()
                .rev()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.0,
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.c)))?;
            terms.push((c, t.e));
        }
        MultiPoly::from_terms(j.n, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j).unwrap()
    }

    fn lf(i: usize, j: usize, n: usize) -> MultiPoly {
        MultiPoly::linear_form(r(i, j), n).unwrap()
    }

    fn t(i: usize, n: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn arithmetic_examples() {
        assert!((lf(1, 2, 3) + lf(2, 1, 3)).is_zero());
        let expected = &(&(&t(1, 3) * &t(1, 3)) - &(&t(1, 3) * &t(2, 3))) - &(&(&t(1, 3) * &t(3, 3)) - &(&t(2, 3) * &t(3, 3)));
        assert_eq!(&lf(1, 3, 3) * &lf(1, 2, 3), expected);
        let p = lf(1, 3, 3);
        assert_eq!(&p * &MultiPoly::one(3), p);
        assert!(MultiPoly::zero(2).arith(&MultiPoly::zero(3), ArithOp::Add).is_err());
    }

    #[test]
    fn linear_forms() {
        assert_eq!(lf(3, 1, 3), -lf(1, 3, 3));
        assert!(MultiPoly::linear_form(Root { i: 2, j: 2 }, 3).is_err());
        let s1 = [r(1, 3), r(2, 5), r(2, 6)];
        let p = MultiPoly::product_of_roots(&s1, 6).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.nvars(), 6);
        assert!(p.is_homogeneous());
        assert_eq!(MultiPoly::zero(3).degree(), None);
    }

    #[test]
    fn permutation_action_examples() {
        let s1 = Permutation::simple(3, 1);
        assert_eq!(lf(1, 3, 3).perm_action(&s1).unwrap(), lf(2, 3, 3));
        let w = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(lf(1, 3, 3).perm_action(&w).unwrap(), lf(3, 2, 3));
        let p = &lf(1, 3, 3) * &t(2, 3);
        assert_eq!(p.perm_action(&Permutation::identity(3)).unwrap(), p);
    }

    #[test]
    fn divisibility_examples() {
        let p = &lf(1, 4, 6) * &lf(2, 6, 6);
        assert!(p.divisible_by(r(1, 4)));
        assert!(p.divisible_by(r(4, 1)));
        assert!(!p.divisible_by(r(1, 2)));
        let a = MultiPoly::product_of_roots(&[r(2, 5), r(2, 6), r(1, 3)], 6).unwrap();
        let b = MultiPoly::product_of_roots(&[r(2, 4), r(2, 6), r(1, 3)], 6).unwrap();
        assert!(!(&a - &b).divisible_by(r(1, 4)));
        assert!(MultiPoly::zero(4).divisible_by(r(1, 4)));
    }

    #[test]
    fn substitution_examples() {
        assert!(lf(1, 2, 2).substitute(1, 2).unwrap().is_zero());
        let p = &t(1, 3) * &t(3, 3);
        assert_eq!(p.substitute(1, 3).unwrap(), &t(3, 3) * &t(3, 3));
        assert!((&lf(1, 3, 3) * &lf(1, 2, 3)).substitute(1, 3).unwrap().is_zero());
        assert!(p.substitute(2, 2).is_err());
    }

    #[test]
    fn exact_division() {
        let p = MultiPoly::product_of_roots(&[r(1, 3), r(2, 4), r(1, 4)], 4).unwrap();
        let q = p.exact_div(&lf(2, 4, 4)).unwrap().unwrap();
        assert_eq!(q, MultiPoly::product_of_roots(&[r(1, 3), r(1, 4)], 4).unwrap());
        assert_eq!(p.exact_div(&lf(2, 3, 4)).unwrap(), None);
        assert_eq!(
            MultiPoly::constant(2, 6).exact_div(&MultiPoly::constant(2, 4)).unwrap(),
            None
        );
    }

    #[test]
    fn factored_rendering() {
        let p = MultiPoly::product_of_roots(&[r(1, 3), r(2, 5)], 5).unwrap();
        assert_eq!(p.to_factored_string(), "(t1-t3)(t2-t5)");
        assert_eq!(lf(3, 2, 3).to_factored_string(), "-(t2-t3)");
        assert_eq!(MultiPoly::one(3).to_factored_string(), "1");
        assert_eq!(MultiPoly::zero(3).to_factored_string(), "0");
        let p = &t(1, 2) * &t(1, 2) + MultiPoly::one(2);
        assert_eq!(p.to_factored_string(), "t1^2 + 1");
        assert_eq!((&lf(1, 2, 2) * &t(1, 2)).to_string(), "t1^2 - t1*t2");
    }

    #[test]
    fn json_canonical_order() {
        let p = &lf(1, 2, 2) * &t(1, 2);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":2,"terms":[{"c":"1","e":[2,0]},{"c":"-1","e":[1,1]}]}"#);
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"n":2,"terms":[{"c":"x","e":[2,0]}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((-5i64..=5, prop::collection::vec(0u16..3, n)), 0..6)
            .prop_map(move |ts| MultiPoly::from_terms(n, ts.into_iter().map(|(c, e)| (BigInt::from(c), e))).unwrap())
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn action_is_multiplicative(p in arb_poly(4), q in arb_poly(4), w in arb_perm(4)) {
            let lhs = (&p * &q).perm_action(&w).unwrap();
            let rhs = &p.perm_action(&w).unwrap() * &q.perm_action(&w).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(p.perm_action(&w).unwrap().degree(), p.degree());
        }

        #[test]
        fn action_composes(p in arb_poly(4), u in arb_perm(4), w in arb_perm(4)) {
            let lhs = p.perm_action(&(&u * &w)).unwrap();
            let rhs = p.perm_action(&w).unwrap().perm_action(&u).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reflection_difference_is_divisible(p in arb_poly(4), a in 1usize..=4, b in 1usize..=4) {
            prop_assume!(a != b);
            let s = Permutation::transposition(4, a, b);
            let d = &p - &p.perm_action(&s).unwrap();
            let gamma = Root { i: a, j: b };
            prop_assert!(d.divisible_by(gamma));
        }

        #[test]
        fn multiples_divide_back(p in arb_poly(3), a in 1usize..=3, b in 1usize..=3) {
            prop_assume!(a != b);
            let gamma = Root { i: a, j: b };
            let form = MultiPoly::linear_form(gamma, 3).unwrap();
            let prod = &p * &form;
            prop_assert!(prod.divisible_by(gamma));
            prop_assert_eq!(prod.exact_div(&form).unwrap(), Some(p));
        }

        #[test]
        fn ring_laws(p in arb_poly(3), q in arb_poly(3), s in arb_poly(3)) {
            prop_assert_eq!(&(&p + &q) * &s, &(&p * &s) + &(&q * &s));
            prop_assert!((&p - &p).is_zero());
            prop_assert_eq!(&p * &q, &q * &p);
        }
    }
}
