//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are indexed 0, 1, 2, ... and displayed as the catalog letters
//! A, B, C, ... Terms are kept in graded lexicographic order (total degree
//! first, then variable-by-variable exponent comparison), which matches the
//! alphabetical parameter naming used throughout the symplectic analysis.
//! Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Display name of variable `v`: 0 -> A, 1 -> B, ...
pub fn var_name(v: usize) -> char {
    (b'A' + v as u8) as char
}

/// Inverse of [`var_name`].
pub fn var_index(c: char) -> Option<usize> {
    if c.is_ascii_uppercase() {
        Some((c as u8 - b'A') as usize)
    } else {
        None
    }
}

/// A monomial: sorted list of (variable, exponent) pairs with exponent > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(usize, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Quotient monomial, if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let oe = other.exponent(v);
            if oe > e {
                return None;
            }
            if e > oe {
                out.push((v, e - oe));
            }
        }
        for &(v, oe) in &other.0 {
            if self.exponent(v) < oe {
                return None;
            }
        }
        Some(Monomial(out))
    }

    /// Drop variable `v`, returning the removed exponent and the remainder.
    fn without(&self, v: usize) -> (u32, Monomial) {
        let e = self.exponent(v);
        let rest = Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect());
        (e, rest)
    }
}

/// Graded lexicographic order: higher total degree is larger; ties are broken
/// by the first variable whose exponents differ, larger exponent winning.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // remaining exponents in `other` sit on later variables, so
                // `self` has exponent 0 there and compares smaller on an
                // earlier position only if it also ran out
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater, // self has the earlier var
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn var(v: usize) -> Self {
        let mut p = MultiPoly::zero();
        p.terms.insert(Monomial::var(v), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn depends_on(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    fn insert_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> MultiPoly {
        if r.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * r))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; every occurring variable must be assigned.
    /// `point[v]` is the value of variable `v`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.0.iter() {
                let val = point
                    .get(*v)
                    .ok_or(Error::MissingAssignment(var_name(*v)))?;
                for _ in 0..*e {
                    t *= val;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute `value` for variable `v`. The replacement must not itself
    /// involve `v`.
    pub fn substitute(&self, v: usize, value: &MultiPoly) -> Result<MultiPoly> {
        if value.depends_on(v) {
            return Err(Error::CircularSubstitution(var_name(v)));
        }
        let mut out = MultiPoly::zero();
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            while powers.len() <= e as usize {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut term = MultiPoly::zero();
            term.insert_term(rest, c.clone());
            out = &out + &(&term * &powers[e as usize]);
        }
        Ok(out)
    }

    /// Leading (largest) term in graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns q with self = q * d, or an error when the
    /// division leaves a remainder.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (dm, dc) = d.leading_term().ok_or(Error::InexactDivision)?;
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm).ok_or(Error::InexactDivision)?;
            let qc = rc / dc;
            let mut t = MultiPoly::zero();
            t.insert_term(qm, qc);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    /// When `self = c * other` for a nonzero rational c, returns c.
    pub fn proportional_to(&self, other: &MultiPoly) -> Option<Rational> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            if ma != mb {
                return None;
            }
            let r = ca / cb;
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl num_traits::Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl num_traits::One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest term first reads like handwritten algebra
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let positive = c.is_positive();
            if i == 0 {
                if !positive {
                    write!(f, "-")?;
                }
            } else if positive {
                write!(f, " + ")?;
            } else {
                write!(f, " - ")?;
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                for (j, (v, e)) in m.0.iter().enumerate() {
                    if j > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", var_name(*v))?;
                    if *e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn v(c: char) -> MultiPoly {
        MultiPoly::var(var_index(c).unwrap())
    }

    /// ACD - B(C^2 + D^2), the running nondegeneracy example.
    fn sample_condition() -> MultiPoly {
        let acd = &(&v('A') * &v('C')) * &v('D');
        let c2d2 = &v('C').pow(2) + &v('D').pow(2);
        &acd - &(&v('B') * &c2d2)
    }

    #[test]
    fn grlex_order() {
        let a2 = Monomial::var(0).mul(&Monomial::var(0));
        let ab = Monomial::var(0).mul(&Monomial::var(1));
        let b = Monomial::var(1);
        assert!(a2 > ab);
        assert!(ab > b); // degree wins
        assert!(Monomial::var(0) > Monomial::var(1)); // A > B at equal degree
    }

    #[test]
    fn eval_condition_polynomial() {
        let p = sample_condition();
        let value = p
            .eval(&[rat_int(2), rat_int(-1), rat_int(1), rat_int(1)])
            .unwrap();
        assert_eq!(value, rat_int(4));
    }

    #[test]
    fn eval_requires_assignments() {
        let p = sample_condition();
        assert_eq!(
            p.eval(&[rat_int(1)]),
            Err(Into::into(Error::MissingAssignment('B')))
        );
    }

    #[test]
    fn eval_second_condition() {
        // AE^2 + BDE - CDE - D^3 at (1,0,0,0,1) -> 1
        let p = &(&(&v('A') * &v('E').pow(2)) + &(&(&v('B') * &v('D')) * &v('E')))
            - &(&(&(&v('C') * &v('D')) * &v('E')) + &v('D').pow(3));
        let point = [rat_int(1), rat_int(0), rat_int(0), rat_int(0), rat_int(1)];
        assert_eq!(p.eval(&point).unwrap(), rat_int(1));
    }

    #[test]
    fn zero_constant_term_at_origin() {
        let p = sample_condition();
        let zeros = vec![rat_int(0); 4];
        assert_eq!(p.eval(&zeros).unwrap(), rat_int(0));
    }

    #[test]
    fn substitute_c_equals_d() {
        // ACD - B(C^2+D^2) under C = D becomes AD^2 - 2BD^2
        let p = sample_condition();
        let sub = p.substitute(2, &v('D')).unwrap();
        let expected = &(&v('A') * &v('D').pow(2)) - &(&v('B') * &v('D').pow(2)).scale(&rat_int(2));
        assert_eq!(sub, expected);
    }

    #[test]
    fn substitute_identity_and_vanishing() {
        let p = sample_condition();
        assert_eq!(p.substitute(2, &v('C')).err(), Some(Error::CircularSubstitution('C')));
        let q = &v('C').pow(2) - &v('D').pow(2);
        assert!(q.substitute(2, &v('D')).unwrap().is_zero());
        // substituting a variable that does not occur leaves p unchanged
        assert_eq!(p.substitute(7, &v('Z')).unwrap(), p);
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let p = sample_condition();
        // C := 2D - 1
        let value = &v('D').scale(&rat_int(2)) - &MultiPoly::one();
        let sub = p.substitute(2, &value).unwrap();
        let point = [rat(1, 2), rat_int(3), rat_int(0), rat(5, 7)];
        let extended = {
            let mut q = point.to_vec();
            q[2] = value.eval(&point).unwrap();
            q
        };
        assert_eq!(sub.eval(&point).unwrap(), p.eval(&extended).unwrap());
    }

    #[test]
    fn exact_division_roundtrip() {
        let p = sample_condition();
        let d = &v('A') - &v('B').scale(&rat(3, 2));
        let prod = &p * &d;
        assert_eq!(prod.exact_div(&d).unwrap(), p);
        assert_eq!(
            (&prod + &MultiPoly::one()).exact_div(&d).err(),
            Some(Error::InexactDivision)
        );
    }

    #[test]
    fn proportionality() {
        let p = sample_condition();
        assert_eq!(p.proportional_to(&p.scale(&rat(-2, 3))), Some(rat(-3, 2)));
        assert_eq!(p.proportional_to(&v('A')), None);
    }

    #[test]
    fn display_reads_naturally() {
        let p = sample_condition();
        assert_eq!(p.to_string(), "A*C*D - B*C^2 - B*D^2");
    }
}
