//! Nilpotent Lie algebras presented by structure strings.
//!
//! A structure string such as `(0,0,12,13,23,14-25)` lists d of each dual
//! generator: entry k is either `0` or a signed sum of two-digit index pairs,
//! and every index appearing in entry k must be smaller than k. Pairs are
//! normalised at parse time, so `42` is stored as `-24`. The differential is
//! extended to the whole exterior algebra by the graded Leibniz rule, and
//! d∘d = 0 (the Jacobi identity) is checked at construction.

use crate::error::{Error, Result};
use crate::forms::{mask_of_index, mask_of_indices, Coeff, ComplexBasis, IndexMask, KForm};
use crate::matrix::Matrix;
use crate::rational::{rat_int, Rational};
use num_traits::Zero;

/// One `i<j` pair with its normalised sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedPair {
    pub i: usize,
    pub j: usize,
    pub negative: bool,
}

/// Parsed structure string: one entry of signed pairs per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub entries: Vec<Vec<SignedPair>>,
}

impl AlgebraSpec {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Canonical rendering: per-term normalised pairs in parse order.
    pub fn to_string_normalized(&self) -> String {
        let mut out = String::from("(");
        for (k, entry) in self.entries.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            if entry.is_empty() {
                out.push('0');
                continue;
            }
            for (t, pair) in entry.iter().enumerate() {
                if pair.negative {
                    out.push('-');
                } else if t > 0 {
                    out.push('+');
                }
                out.push_str(&format!("{}{}", pair.i, pair.j));
            }
        }
        out.push(')');
        out
    }
}

/// Parse a structure string. Whitespace is ignored; errors carry the byte
/// position of the offending token.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    let bytes: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut pos = 0usize;

    let err = |at: usize, msg: &str| Error::Parse {
        pos: at,
        msg: msg.to_string(),
    };
    let peek = |pos: usize| bytes.get(pos).map(|&(_, c)| c);
    let at = |pos: usize| bytes.get(pos).map(|&(i, _)| i).unwrap_or(text.len());

    if peek(pos) != Some('(') {
        return Err(err(at(pos), "expected '('"));
    }
    pos += 1;

    let mut entries: Vec<Vec<SignedPair>> = Vec::new();
    loop {
        // one entry
        let entry_index = entries.len() + 1; // 1-based generator index
        let mut entry: Vec<SignedPair> = Vec::new();
        if peek(pos) == Some('0') {
            pos += 1;
        } else {
            let mut first = true;
            loop {
                let mut negative = false;
                match peek(pos) {
                    Some('+') if !first => pos += 1,
                    Some('-') => {
                        negative = true;
                        pos += 1;
                    }
                    _ if first => {}
                    _ => break,
                }
                let d1 = peek(pos).filter(|c| c.is_ascii_digit());
                let d2 = peek(pos + 1).filter(|c| c.is_ascii_digit());
                let (Some(d1), Some(d2)) = (d1, d2) else {
                    return Err(err(at(pos), "expected two-digit index pair"));
                };
                let (mut i, mut j) = (d1 as usize - '0' as usize, d2 as usize - '0' as usize);
                if i == 0 || j == 0 {
                    return Err(err(at(pos), "index 0 is out of range 1..n"));
                }
                if i == j {
                    return Err(err(at(pos), "repeated index in pair"));
                }
                if i > j {
                    std::mem::swap(&mut i, &mut j);
                    negative = !negative;
                }
                if j >= entry_index {
                    return Err(err(
                        at(pos),
                        &format!("index {j} must be smaller than entry position {entry_index}"),
                    ));
                }
                entry.push(SignedPair { i, j, negative });
                pos += 2;
                first = false;
                match peek(pos) {
                    Some('+') | Some('-') => {}
                    _ => break,
                }
            }
            if entry.is_empty() {
                return Err(err(at(pos), "expected '0' or an index pair"));
            }
        }
        entries.push(entry);
        match peek(pos) {
            Some(',') => pos += 1,
            Some(')') => {
                pos += 1;
                break;
            }
            _ => return Err(err(at(pos), "expected ',' or ')'")),
        }
    }
    if pos != bytes.len() {
        return Err(err(at(pos), "trailing input after ')'"));
    }
    let n = entries.len();
    if n > 9 {
        return Err(Error::DimensionOverflow(n));
    }
    for entry in &entries {
        for pair in entry {
            if pair.j > n {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("index {} exceeds dimension {}", pair.j, n),
                });
            }
        }
    }
    Ok(AlgebraSpec { entries })
}

/// Parse a catalog-style file: one structure string per line, `#` comments
/// and blank lines ignored.
pub fn parse_spec_file(contents: &str) -> Result<Vec<AlgebraSpec>> {
    let mut out = Vec::new();
    for line in contents.lines() {
        let line = match line.split_once('#') {
            Some((before, _)) => before,
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_spec(line)?);
    }
    Ok(out)
}

/// A nilpotent Lie algebra with rational structure constants, presented
/// through the differential on its dual generators.
#[derive(Clone, Debug)]
pub struct NilpotentLieAlgebra {
    n: usize,
    /// d of generator k (1-based: d1[k-1]), a 2-form.
    d1: Vec<KForm<Rational>>,
    basis: ComplexBasis,
    step_length: usize,
}

impl NilpotentLieAlgebra {
    /// Build from parsed structure data, verifying d² = 0 and nilpotency.
    pub fn from_spec(spec: &AlgebraSpec) -> Result<NilpotentLieAlgebra> {
        let n = spec.dim();
        let mut d1 = Vec::with_capacity(n);
        for entry in &spec.entries {
            let mut form = KForm::zero(n, 2);
            for pair in entry {
                let c = if pair.negative { rat_int(-1) } else { rat_int(1) };
                form.add_term(mask_of_indices(&[pair.i, pair.j]), c);
            }
            d1.push(form);
        }
        NilpotentLieAlgebra::from_d1(n, d1)
    }

    /// Build directly from the differentials of the generators.
    pub fn from_d1(n: usize, d1: Vec<KForm<Rational>>) -> Result<NilpotentLieAlgebra> {
        if n > 9 {
            return Err(Error::DimensionOverflow(n));
        }
        assert_eq!(d1.len(), n);
        let basis = ComplexBasis::new(n);
        let mut algebra = NilpotentLieAlgebra {
            n,
            d1,
            basis,
            step_length: 0,
        };
        // d² = 0 on generators is exactly the Jacobi identity
        for k in 1..=n {
            let ddk = algebra.d(&algebra.d1[k - 1].clone());
            if !ddk.is_zero() {
                return Err(Error::JacobiViolation { generator: k });
            }
        }
        algebra.step_length = algebra.compute_step_length()?;
        debug_assert!(algebra.is_unimodular(), "nilpotent algebras are unimodular");
        Ok(algebra)
    }

    pub fn parse(text: &str) -> Result<NilpotentLieAlgebra> {
        NilpotentLieAlgebra::from_spec(&parse_spec(text)?)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &ComplexBasis {
        &self.basis
    }

    pub fn step_length(&self) -> usize {
        self.step_length
    }

    /// d of the k-th generator (1-based).
    pub fn d_generator(&self, k: usize) -> &KForm<Rational> {
        &self.d1[k - 1]
    }

    /// Structure constant c^{ij}_k, the coefficient of alpha_i∧alpha_j in
    /// d(alpha_k), for i < j.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.d1[k - 1].coefficient(mask_of_indices(&[i, j]))
    }

    /// Graded-Leibniz extension of the differential to arbitrary forms.
    pub fn d<C: Coeff>(&self, form: &KForm<C>) -> KForm<C> {
        let mut out = KForm::zero(self.n, form.degree() + 1);
        if form.degree() >= self.n {
            return out;
        }
        for (mask, c) in form.terms() {
            let d_basis = self.d_basis_mask(mask);
            for (m, r) in d_basis.terms() {
                out.add_term(m, c.scale_c(r));
            }
        }
        out
    }

    /// d(alpha_I) = Σ_t (−1)^{pos(t)} d(alpha_t) ∧ alpha_{I\t}.
    fn d_basis_mask(&self, mask: IndexMask) -> KForm<Rational> {
        let degree = mask.count_ones() as usize;
        let mut out = KForm::zero(self.n, degree + 1);
        let mut pos = 0;
        for t in 1..=self.n {
            let bit = mask_of_index(t);
            if mask & bit == 0 {
                continue;
            }
            let rest = KForm::<Rational>::basis(self.n, mask & !bit);
            let term = self.d1[t - 1].wedge(&rest);
            out = if pos % 2 == 0 {
                out.add(&term)
            } else {
                out.sub(&term)
            };
            pos += 1;
        }
        out
    }

    /// Matrix of d: Λ^k → Λ^{k+1} in the lex-ordered bases.
    pub fn differential_matrix(&self, k: usize) -> Matrix<Rational> {
        let domain = self.basis.masks(k).to_vec();
        let target_dim = self.basis.dim(k as isize + 1);
        let mut m = Matrix::zero(target_dim, domain.len());
        if k >= self.n {
            return m;
        }
        for (col, &mask) in domain.iter().enumerate() {
            let image = self.d_basis_mask(mask);
            for (im, c) in image.terms() {
                m.set(self.basis.position(im), col, c.clone());
            }
        }
        m
    }

    /// Direct sum, with the second summand's indices shifted.
    pub fn direct_sum(&self, other: &NilpotentLieAlgebra) -> Result<NilpotentLieAlgebra> {
        let n = self.n + other.n;
        if n > 9 {
            return Err(Error::DimensionOverflow(n));
        }
        let mut d1 = Vec::with_capacity(n);
        for k in 1..=self.n {
            let mut f = KForm::zero(n, 2);
            for (m, c) in self.d1[k - 1].terms() {
                f.add_term(m, c.clone());
            }
            d1.push(f);
        }
        for k in 1..=other.n {
            let mut f = KForm::zero(n, 2);
            for (m, c) in other.d1[k - 1].terms() {
                f.add_term(m << self.n, c.clone());
            }
            d1.push(f);
        }
        NilpotentLieAlgebra::from_d1(n, d1)
    }

    /// Embed a form on this algebra into a direct sum whose summand offset is
    /// `shift` generators and total dimension `n_total`.
    pub fn shift_form<C: Coeff>(form: &KForm<C>, shift: usize, n_total: usize) -> KForm<C> {
        let mut out = KForm::zero(n_total, form.degree());
        for (m, c) in form.terms() {
            out.add_term(m << shift, c.clone());
        }
        out
    }

    /// Length of the lower central series.
    fn compute_step_length(&self) -> Result<usize> {
        // bracket in the dual frame: [X_i, X_j] has k-coordinate
        // -c^{ij}_k; only the spans matter here.
        let bracket = |i: usize, j: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); self.n];
            if i == j {
                return v;
            }
            let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
            for k in 1..=self.n {
                let c = self.structure_constant(a, b, k);
                v[k - 1] = if flip { c } else { -c };
            }
            v
        };
        let full: Vec<Vec<Rational>> = (0..self.n)
            .map(|i| {
                let mut v = vec![Rational::zero(); self.n];
                v[i] = rat_int(1);
                v
            })
            .collect();
        let bracket_span = |vs: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            let mut images = Vec::new();
            for i in 1..=self.n {
                for v in vs {
                    let mut img = vec![Rational::zero(); self.n];
                    for (k, coeff) in v.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        for (t, b) in bracket(i, k + 1).into_iter().enumerate() {
                            img[t] += coeff * b;
                        }
                    }
                    if img.iter().any(|x| !x.is_zero()) {
                        images.push(img);
                    }
                }
            }
            reduce_span(&images, self.n)
        };
        let mut current = full;
        let mut steps = 0usize;
        loop {
            if current.is_empty() {
                return Ok(steps);
            }
            steps += 1;
            if steps > self.n + 1 {
                return Err(Error::NotNilpotent);
            }
            let next = bracket_span(&current);
            if next.len() == current.len() {
                // series stalled above zero
                return Err(Error::NotNilpotent);
            }
            current = next;
        }
    }

    /// Trace of every adjoint operator vanishes.
    fn is_unimodular(&self) -> bool {
        for i in 1..=self.n {
            let mut trace = Rational::zero();
            for k in 1..=self.n {
                // ad_{X_i}(X_k) has X_k-coordinate -c^{ik}_k (sign-adjusted)
                if i < k {
                    trace -= self.structure_constant(i, k, k);
                } else if k < i {
                    trace += self.structure_constant(k, i, k);
                }
            }
            if !trace.is_zero() {
                return false;
            }
        }
        true
    }

    /// Render the structure string of this algebra; requires ±1 structure
    /// constants (always true for parsed and direct-sum algebras).
    pub fn structure_string(&self) -> Result<String> {
        let mut entries: Vec<Vec<SignedPair>> = Vec::with_capacity(self.n);
        for k in 1..=self.n {
            let mut entry = Vec::new();
            for (m, c) in self.d1[k - 1].terms() {
                let idx = crate::forms::indices_of_mask(m);
                let negative = if c == &rat_int(1) {
                    false
                } else if c == &rat_int(-1) {
                    true
                } else {
                    return Err(Error::Precondition(
                        "structure constants must be ±1 for string rendering".into(),
                    ));
                };
                entry.push(SignedPair {
                    i: idx[0],
                    j: idx[1],
                    negative,
                });
            }
            entries.push(entry);
        }
        Ok(AlgebraSpec { entries }.to_string_normalized())
    }
}

/// Row-reduce a spanning set to an independent basis of its span.
fn reduce_span(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_columns(vectors, dim);
    let r = m.rref();
    r.pivots.iter().map(|&c| vectors[c].clone()).collect()
}

/// The k-dimensional abelian algebra.
pub fn abelian(n: usize) -> NilpotentLieAlgebra {
    NilpotentLieAlgebra::from_d1(n, (0..n).map(|_| KForm::zero(n, 2)).collect())
        .expect("abelian algebra is valid")
}

/// The 3-dimensional Heisenberg algebra (0,0,12).
pub fn heisenberg3() -> NilpotentLieAlgebra {
    NilpotentLieAlgebra::parse("(0,0,12)").expect("valid")
}

/// The Kodaira–Thurston algebra: Heisenberg₃ ⊕ R.
pub fn kodaira_thurston() -> NilpotentLieAlgebra {
    heisenberg3()
        .direct_sum(&abelian(1))
        .expect("4-dimensional sum is valid")
}
