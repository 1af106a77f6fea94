//! Exterior forms on a fixed frame of up to nine degree-one generators.
//!
//! A basis k-form alpha_{i1...ik} (strictly increasing indices in 1..=n) is
//! encoded as a bitmask with bit i-1 set for index i. A [`KForm`] is a sparse
//! combination of basis forms whose coefficients live in any [`Coeff`] ring
//! (rationals for fixed forms, polynomials for parametric families).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::poly::MultiPoly;
use crate::rational::{format_rational, Rational};

/// Bitmask encoding of a strictly increasing index tuple.
pub type IndexMask = u16;

/// Mask for the single index `i` (1-based).
pub fn mask_of_index(i: usize) -> IndexMask {
    1 << (i - 1)
}

/// Mask of a strictly increasing tuple.
pub fn mask_of_indices(indices: &[usize]) -> IndexMask {
    let mut m = 0;
    for &i in indices {
        m |= mask_of_index(i);
    }
    m
}

/// Decode a mask into its sorted index tuple.
pub fn indices_of_mask(mask: IndexMask) -> Vec<usize> {
    (1..=16).filter(|&i| mask & mask_of_index(i) != 0).collect()
}

/// Degree of the basis form encoded by `mask`.
pub fn mask_degree(mask: IndexMask) -> usize {
    mask.count_ones() as usize
}

/// Sign of alpha_A ∧ alpha_B as a reordering of alpha_{A∪B}; None when the
/// index sets overlap. The sign counts the inversions between the two sorted
/// tuples.
pub fn wedge_sign(a: IndexMask, b: IndexMask) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let low = bb.trailing_zeros();
        // elements of `a` strictly above this element of `b`
        inversions += (a >> (low + 1)).count_ones();
        bb &= bb - 1;
    }
    Some(inversions % 2 == 1)
}

/// Full index mask 1..=n.
pub fn top_mask(n: usize) -> IndexMask {
    ((1u32 << n) - 1) as IndexMask
}

/// Human-readable name of a basis form, e.g. "a145".
pub fn mask_name(mask: IndexMask) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let digits: String = indices_of_mask(mask).iter().map(|i| i.to_string()).collect();
    format!("a{digits}")
}

/// Coefficient ring for exterior forms. Method names carry a `_c` suffix to
/// stay clear of the identically-named inherent and `num_traits` methods on
/// the implementing types.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_c() -> Self;
    fn is_zero_c(&self) -> bool;
    fn add_c(&self, other: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn mul_c(&self, other: &Self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale_c(&self, r: &Rational) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn render(&self) -> String;
}

impl Coeff for Rational {
    fn zero_c() -> Self {
        num_traits::Zero::zero()
    }
    fn is_zero_c(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_c(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_c(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Coeff for MultiPoly {
    fn zero_c() -> Self {
        MultiPoly::zero()
    }
    fn is_zero_c(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add_c(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_c(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Homogeneous exterior form of a fixed degree on n generators.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<C: Coeff> {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<IndexMask, C>,
}

impl<C: Coeff> KForm<C> {
    pub fn zero(n: usize, degree: usize) -> Self {
        KForm {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant function 1 viewed as a 0-form.
    pub fn unit(n: usize) -> Self {
        let mut f = KForm::zero(n, 0);
        f.coeffs.insert(0, C::from_rational(&crate::rational::rat_int(1)));
        f
    }

    pub fn basis(n: usize, mask: IndexMask) -> Self {
        let mut f = KForm::zero(n, mask_degree(mask));
        f.coeffs
            .insert(mask, C::from_rational(&crate::rational::rat_int(1)));
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, mask: IndexMask) -> C {
        self.coeffs.get(&mask).cloned().unwrap_or_else(C::zero_c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (IndexMask, &C)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn add_term(&mut self, mask: IndexMask, c: C) {
        debug_assert_eq!(mask_degree(mask), self.degree, "degree mismatch");
        if c.is_zero_c() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add_c(&c);
                if sum.is_zero_c() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        KForm {
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, c.neg_c())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return KForm::zero(self.n, self.degree);
        }
        KForm {
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, c.scale_c(r))).collect(),
        }
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        let mut out = KForm::zero(self.n, self.degree);
        for (m, x) in self.terms() {
            out.add_term(m, x.mul_c(c));
        }
        out
    }

    /// Exterior product. Degrees exceeding n give the zero form.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let degree = self.degree + other.degree;
        if degree > self.n {
            return KForm::zero(self.n, degree);
        }
        let mut out = KForm::zero(self.n, degree);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if let Some(negative) = wedge_sign(ma, mb) {
                    let c = ca.mul_c(cb);
                    out.add_term(ma | mb, if negative { c.neg_c() } else { c });
                }
            }
        }
        out
    }

    /// Interior product with the frame vector dual to generator `i`
    /// (contraction into the first slot).
    pub fn contract(&self, i: usize) -> Self {
        let mut out = KForm::zero(self.n, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        let bit = mask_of_index(i);
        for (m, c) in self.terms() {
            if m & bit == 0 {
                continue;
            }
            // position of i within the sorted tuple decides the sign
            let below = (m & (bit - 1)).count_ones();
            let sign_neg = below % 2 == 1;
            out.add_term(m & !bit, if sign_neg { c.neg_c() } else { c.clone() });
        }
        out
    }

    /// Coefficient vector with respect to the lex-ordered degree basis.
    pub fn to_vec(&self, basis: &[IndexMask]) -> Vec<C> {
        basis.iter().map(|&m| self.coefficient(m)).collect()
    }

    pub fn from_vec(n: usize, degree: usize, basis: &[IndexMask], v: &[C]) -> Self {
        assert_eq!(basis.len(), v.len());
        let mut out = KForm::zero(n, degree);
        for (&m, c) in basis.iter().zip(v.iter()) {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(Vec<usize>, String)> = self
            .terms()
            .map(|(m, c)| (indices_of_mask(m), format!("({})*{}", c.render(), mask_name(m))))
            .collect();
        terms.sort();
        terms
            .into_iter()
            .map(|(_, t)| t)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl KForm<Rational> {
    /// Lift a rational form into a polynomial-coefficient form.
    pub fn to_poly(&self) -> KForm<MultiPoly> {
        let mut out = KForm::zero(self.n, self.degree);
        for (m, c) in self.terms() {
            out.add_term(m, MultiPoly::constant(c.clone()));
        }
        out
    }
}

impl KForm<MultiPoly> {
    /// Evaluate every coefficient at the given parameter assignment.
    pub fn eval(&self, point: &[Rational]) -> crate::error::Result<KForm<Rational>> {
        let mut out = KForm::zero(self.n, self.degree);
        for (m, c) in self.terms() {
            out.add_term(m, c.eval(point)?);
        }
        Ok(out)
    }

    pub fn substitute(
        &self,
        var: usize,
        value: &MultiPoly,
    ) -> crate::error::Result<KForm<MultiPoly>> {
        let mut out = KForm::zero(self.n, self.degree);
        for (m, c) in self.terms() {
            out.add_term(m, c.substitute(var, value)?);
        }
        Ok(out)
    }
}

/// Lex-ordered bases of every exterior degree for a fixed n, with positional
/// lookup by mask.
#[derive(Clone, Debug)]
pub struct ComplexBasis {
    n: usize,
    by_degree: Vec<Vec<IndexMask>>,
    position: Vec<usize>,
}

impl ComplexBasis {
    pub fn new(n: usize) -> ComplexBasis {
        assert!(n <= 9, "at most 9 generators supported");
        let mut by_degree: Vec<Vec<IndexMask>> = vec![Vec::new(); n + 1];
        // enumerate tuples in lexicographic order per degree
        fn rec(n: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<IndexMask>>) {
            out[current.len()].push(mask_of_indices(current));
            if current.len() == n {
                return;
            }
            for i in start..=n {
                current.push(i);
                rec(n, i + 1, current, out);
                current.pop();
            }
        }
        let mut current = Vec::new();
        rec(n, 1, &mut current, &mut by_degree);
        for v in &mut by_degree {
            v.sort_by_key(|&m| indices_of_mask(m));
        }
        let mut position = vec![usize::MAX; 1 << n];
        for masks in &by_degree {
            for (idx, &m) in masks.iter().enumerate() {
                position[m as usize] = idx;
            }
        }
        ComplexBasis {
            n,
            by_degree,
            position,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// dim Λ^k; zero outside 0..=n.
    pub fn dim(&self, k: isize) -> usize {
        if k < 0 || k as usize > self.n {
            0
        } else {
            self.by_degree[k as usize].len()
        }
    }

    pub fn masks(&self, k: usize) -> &[IndexMask] {
        &self.by_degree[k]
    }

    pub fn position(&self, mask: IndexMask) -> usize {
        self.position[mask as usize]
    }
}
