//! Parametric symplectic structures on an even-dimensional nilpotent Lie
//! algebra.
//!
//! Every homogeneous symplectic form is, up to the choice of representative,
//! a combination ω = Σ p_i z_i of basis 2-cocycles with one parameter per
//! degree-two cohomology class. Because top-degree boundaries vanish on a
//! unimodular algebra, the coefficient of alpha_{1..2m} in ω^m is a
//! well-defined polynomial Pf in the parameters, and ω is nondegenerate at a
//! parameter point exactly when Pf is nonzero there. Lefschetz matrices
//! (cup multiplication by powers of ω on cohomology) then have polynomial
//! entries whose ranks at points, on affine strata and generically produce
//! the harmonic Betti numbers of the top three codegrees.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::NilpotentLieAlgebra;
use crate::cohomology::CohomologyRing;
use crate::error::{Error, Result};
use crate::forms::{top_mask, KForm};
use crate::matrix::Matrix;
use crate::poly::{var_name, MultiPoly};
use crate::rational::{rat_int, Rational};

/// Default deterministic seed for parameter-space sampling.
pub const DEFAULT_SEED: u64 = 0x6e69_6c66_6c65_78; // "nilflex"

/// Deterministic sampling policy for parameter points.
#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub seed: u64,
    /// How many admitted (symplectic) points a search may use.
    pub points: usize,
    /// Upper bound on raw draws before giving up.
    pub attempts: usize,
    /// Entries are drawn uniformly from [-range, range].
    pub range: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: DEFAULT_SEED,
            points: 6,
            attempts: 400,
            range: 10,
        }
    }
}

impl SampleConfig {
    pub fn with_seed(seed: u64) -> Self {
        SampleConfig {
            seed,
            ..SampleConfig::default()
        }
    }
}

/// An affine (or polynomial) elimination of one parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub var: usize,
    pub value: MultiPoly,
}

impl Constraint {
    pub fn new(var: usize, value: MultiPoly) -> Self {
        Constraint { var, value }
    }

    pub fn render(&self) -> String {
        format!("{}={}", var_name(self.var), self.value)
    }
}

/// Cup multiplication by ω^{power}: H^k → H^{2m-k} with polynomial entries.
#[derive(Clone, Debug)]
pub struct LefschetzMatrix {
    pub source_degree: usize,
    pub target_degree: usize,
    pub power: usize,
    pub matrix: Matrix<MultiPoly>,
}

/// Constraints with the generic rank on the stratum and an exact witness.
#[derive(Clone, Debug)]
pub struct RankStratum {
    pub constraints: Vec<Constraint>,
    pub rank: usize,
    pub witness: Vec<Rational>,
}

/// Two exact symplectic points with different Lefschetz ranks in one degree.
#[derive(Clone, Debug)]
pub struct FlexibilityCertificate {
    /// Cohomological degree (2m-1 or 2m-2) in which the rank varies.
    pub degree: usize,
    pub low_point: Vec<Rational>,
    pub low_rank: usize,
    pub high_point: Vec<Rational>,
    pub high_rank: usize,
}

/// Rank-formula harmonic Betti numbers of the top codegrees.
#[derive(Clone, Debug, PartialEq)]
pub struct RankBetti {
    /// h_{2m-1} = rank L^{m-1} on H¹.
    pub top_minus_1: usize,
    /// h_{2m-2} = rank L^{m-2} on H².
    pub top_minus_2: usize,
    /// h_{2m-3}: exact under the Lefschetz-type hypothesis, otherwise only
    /// the upper bound rank L^{m-3} on H³; absent when 2m < 6.
    pub top_minus_3: Option<ThirdRank>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ThirdRank {
    Exact(usize),
    /// Not determined by the rank formula; the value is an upper bound.
    UpperBound(usize),
}

/// The family ω = Σ p_i z_i over the degree-two cohomology basis.
#[derive(Clone, Debug)]
pub struct SymplecticFamily {
    ring: CohomologyRing,
    class_reps: Vec<KForm<Rational>>,
    omega: KForm<MultiPoly>,
    pf: MultiPoly,
}

impl SymplecticFamily {
    /// Family over the ring's own deterministic H² basis.
    pub fn new(ring: &CohomologyRing) -> Result<SymplecticFamily> {
        SymplecticFamily::with_basis(ring, ring.representatives(2))
    }

    /// Family over an explicit basis of 2-cocycles. The classes must span
    /// H² and be independent.
    pub fn with_basis(
        ring: &CohomologyRing,
        class_reps: Vec<KForm<Rational>>,
    ) -> Result<SymplecticFamily> {
        let algebra = ring.algebra();
        let n = algebra.dim();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        if class_reps.len() != ring.betti(2) {
            return Err(Error::ShapeMismatch(format!(
                "{} classes given, b2 = {}",
                class_reps.len(),
                ring.betti(2)
            )));
        }
        let coords: Vec<Vec<Rational>> = class_reps
            .iter()
            .map(|f| ring.class_of(f).map(|c| c.coordinates))
            .collect::<Result<_>>()?;
        if Matrix::rank_of_span(&coords, ring.betti(2)) != ring.betti(2) {
            return Err(Error::Precondition(
                "given 2-cocycles do not span H^2 independently".into(),
            ));
        }
        let mut omega = KForm::<MultiPoly>::zero(n, 2);
        for (i, rep) in class_reps.iter().enumerate() {
            let p = MultiPoly::var(i);
            for (mask, c) in rep.terms() {
                omega.add_term(mask, p.scale(c));
            }
        }
        debug_assert!(algebra.d(&omega).is_zero(), "family must be closed");
        let m = n / 2;
        let mut pow = KForm::<MultiPoly>::unit(n);
        for _ in 0..m {
            pow = pow.wedge(&omega);
        }
        let pf = pow.coefficient(top_mask(n));
        Ok(SymplecticFamily {
            ring: ring.clone(),
            class_reps,
            omega,
            pf,
        })
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.ring
    }

    pub fn algebra(&self) -> &NilpotentLieAlgebra {
        self.ring.algebra()
    }

    pub fn half_dim(&self) -> usize {
        self.algebra().dim() / 2
    }

    /// Number of parameters (= b₂).
    pub fn params(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_representatives(&self) -> &[KForm<Rational>] {
        &self.class_reps
    }

    pub fn omega(&self) -> &KForm<MultiPoly> {
        &self.omega
    }

    /// The nondegeneracy polynomial: coefficient of alpha_{1..2m} in ω^m.
    pub fn pf(&self) -> &MultiPoly {
        &self.pf
    }

    /// Whether the algebra carries any homogeneous symplectic structure.
    pub fn admits_symplectic(&self) -> bool {
        !self.pf.is_zero()
    }

    /// Dimension of the space of closed 2-forms, in which the symplectic
    /// forms are an open subset.
    pub fn moduli_dim(&self) -> Result<usize> {
        if !self.admits_symplectic() {
            return Err(Error::NoSymplecticStructure);
        }
        let d2 = self.ring.differential(2);
        Ok(d2.cols() - d2.rank())
    }

    pub fn is_symplectic_point(&self, point: &[Rational]) -> Result<bool> {
        Ok(!self.pf.eval(point)?.is_zero())
    }

    /// The 2-form at a parameter point (must be symplectic there).
    pub fn omega_at(&self, point: &[Rational]) -> Result<KForm<Rational>> {
        if !self.is_symplectic_point(point)? {
            return Err(Error::NonSymplecticPoint);
        }
        self.omega.eval(point)
    }

    /// Matrix of cup multiplication by ω^{m-k}: H^k → H^{2m-k}.
    pub fn lefschetz_matrix(&self, k: usize) -> LefschetzMatrix {
        let m = self.half_dim();
        assert!(k <= m, "source degree must not exceed the middle degree");
        let power = m - k;
        let mut pow = KForm::<MultiPoly>::unit(self.algebra().dim());
        for _ in 0..power {
            pow = pow.wedge(&self.omega);
        }
        let sources = self.ring.representatives(k);
        let target_dim = self.ring.betti(2 * m - k);
        let columns: Vec<Vec<MultiPoly>> = sources
            .iter()
            .map(|rep| self.ring.coordinates_poly(&rep.to_poly().wedge(&pow)))
            .collect();
        let matrix = Matrix::from_fn(target_dim, sources.len(), |i, j| columns[j][i].clone());
        LefschetzMatrix {
            source_degree: k,
            target_degree: 2 * m - k,
            power,
            matrix,
        }
    }

    /// Deterministically sampled points with Pf ≠ 0.
    pub fn sample_symplectic_points(
        &self,
        count: usize,
        config: &SampleConfig,
    ) -> Result<Vec<Vec<Rational>>> {
        if !self.admits_symplectic() {
            return Err(Error::NoSymplecticStructure);
        }
        let free: Vec<usize> = (0..self.params()).collect();
        self.sample_points_for(&self.pf, &free, count, config)
    }

    fn sample_points_for(
        &self,
        pf: &MultiPoly,
        free_vars: &[usize],
        count: usize,
        config: &SampleConfig,
    ) -> Result<Vec<Vec<Rational>>> {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut out = Vec::new();
        for _ in 0..config.attempts {
            if out.len() == count {
                break;
            }
            let mut point = vec![Rational::zero(); self.params()];
            for &v in free_vars {
                point[v] = rat_int(rng.gen_range(-config.range..=config.range));
            }
            if !pf.eval(&point)?.is_zero() {
                out.push(point);
            }
        }
        if out.is_empty() {
            return Err(Error::StratumOutsideSymplecticRegion);
        }
        Ok(out)
    }

    /// Rank of a Lefschetz matrix at a symplectic point.
    pub fn rank_at(&self, lm: &LefschetzMatrix, point: &[Rational]) -> Result<usize> {
        if !self.is_symplectic_point(point)? {
            return Err(Error::NonSymplecticPoint);
        }
        Ok(lm.matrix.eval(point)?.rank())
    }

    /// Rank attained on a dense open subset of the symplectic region.
    ///
    /// Exact evaluation at sampled points bounds the rank from below; when a
    /// sample reaches min(rows, cols) that already certifies the generic
    /// value, and otherwise fraction-free elimination over the parameter
    /// field settles it exactly.
    pub fn generic_rank(&self, lm: &LefschetzMatrix, config: &SampleConfig) -> Result<usize> {
        if !self.admits_symplectic() {
            return Err(Error::NoSymplecticStructure);
        }
        let free: Vec<usize> = (0..self.params()).collect();
        self.generic_rank_of(&lm.matrix, &self.pf, &free, config)
    }

    fn generic_rank_of(
        &self,
        matrix: &Matrix<MultiPoly>,
        pf: &MultiPoly,
        free_vars: &[usize],
        config: &SampleConfig,
    ) -> Result<usize> {
        let cap = matrix.rows().min(matrix.cols());
        let mut best = 0usize;
        if cap == 0 {
            return Ok(0);
        }
        let points = self.sample_points_for(pf, free_vars, config.points, config)?;
        for p in &points {
            best = best.max(matrix.eval(p)?.rank());
            if best == cap {
                return Ok(best);
            }
        }
        let symbolic = matrix.generic_rank_symbolic();
        debug_assert!(symbolic >= best);
        Ok(symbolic)
    }

    /// Substitute constraints into the family data, checking that each
    /// eliminates a fresh variable and never reintroduces a dead one.
    fn substituted(
        &self,
        base: &Matrix<MultiPoly>,
        constraints: &[Constraint],
    ) -> Result<(Matrix<MultiPoly>, MultiPoly, Vec<usize>)> {
        let mut eliminated = vec![false; self.params()];
        let mut matrix = base.clone();
        let mut pf = self.pf.clone();
        for c in constraints {
            if c.var >= self.params() {
                return Err(Error::MissingAssignment(var_name(c.var)));
            }
            if eliminated[c.var] || c.value.depends_on(c.var) {
                return Err(Error::CircularSubstitution(var_name(c.var)));
            }
            if c.value.variables().into_iter().any(|v| eliminated[v]) {
                return Err(Error::CircularSubstitution(var_name(c.var)));
            }
            matrix = matrix.substitute(c.var, &c.value)?;
            pf = pf.substitute(c.var, &c.value)?;
            eliminated[c.var] = true;
        }
        let free: Vec<usize> = (0..self.params()).filter(|&v| !eliminated[v]).collect();
        Ok((matrix, pf, free))
    }

    /// Fill in constrained coordinates of a sampled point, in reverse
    /// application order.
    fn reconstruct_witness(
        &self,
        constraints: &[Constraint],
        sample: &[Rational],
    ) -> Result<Vec<Rational>> {
        let mut point = sample.to_vec();
        for c in constraints.iter().rev() {
            point[c.var] = c.value.eval(&point)?;
        }
        Ok(point)
    }

    /// Generic rank on an affine stratum, with an exact symplectic witness
    /// achieving it.
    pub fn rank_on_stratum(
        &self,
        lm: &LefschetzMatrix,
        constraints: &[Constraint],
        config: &SampleConfig,
    ) -> Result<RankStratum> {
        let (matrix, pf, free) = self.substituted(&lm.matrix, constraints)?;
        if pf.is_zero() {
            return Err(Error::StratumOutsideSymplecticRegion);
        }
        let rank = self.generic_rank_of(&matrix, &pf, &free, config)?;
        // first sampled point achieving the stratum rank becomes the witness
        let points = self.sample_points_for(&pf, &free, config.points.max(8), config)?;
        let mut witness = None;
        for p in &points {
            if matrix.eval(p)?.rank() == rank {
                witness = Some(self.reconstruct_witness(constraints, p)?);
                break;
            }
        }
        let witness = witness.ok_or(Error::StratumOutsideSymplecticRegion)?;
        debug_assert!(self.is_symplectic_point(&witness)?);
        Ok(RankStratum {
            constraints: constraints.to_vec(),
            rank,
            witness,
        })
    }

    /// True when L^{m-1}: H¹ → H^{2m-1} is surjective at the point.
    pub fn is_lefschetz_type(&self, point: &[Rational]) -> Result<bool> {
        let lm = self.lefschetz_matrix(1);
        Ok(self.rank_at(&lm, point)? == self.ring.betti(1))
    }

    /// The rank-formula harmonic Betti numbers, at a point or generically.
    pub fn harmonic_betti_via_rank(
        &self,
        point: Option<&[Rational]>,
        config: &SampleConfig,
    ) -> Result<RankBetti> {
        let m = self.half_dim();
        let rank_of = |lm: &LefschetzMatrix| -> Result<usize> {
            match point {
                Some(p) => self.rank_at(lm, p),
                None => self.generic_rank(lm, config),
            }
        };
        let l1 = self.lefschetz_matrix(1);
        let top_minus_1 = rank_of(&l1)?;
        let top_minus_2 = rank_of(&self.lefschetz_matrix(2))?;
        let top_minus_3 = if m >= 3 {
            let r3 = rank_of(&self.lefschetz_matrix(3))?;
            let lefschetz_type = top_minus_1 == self.ring.betti(1);
            Some(if lefschetz_type {
                ThirdRank::Exact(r3)
            } else {
                ThirdRank::UpperBound(r3)
            })
        } else {
            None
        };
        Ok(RankBetti {
            top_minus_1,
            top_minus_2,
            top_minus_3,
        })
    }

    /// Check that points on the segment ω₀ + λω₁ for small dyadic λ are
    /// symplectic with rank at least rank(point1). Requires
    /// rank(point0) < rank(point1).
    pub fn segment_rank_check(
        &self,
        lm: &LefschetzMatrix,
        point0: &[Rational],
        point1: &[Rational],
        max_refinement: u32,
    ) -> Result<bool> {
        let r0 = self.rank_at(lm, point0)?;
        let r1 = self.rank_at(lm, point1)?;
        if r0 >= r1 {
            return Err(Error::Precondition(format!(
                "segment check needs rank(point0) < rank(point1), got {r0} >= {r1}"
            )));
        }
        // good tail: for all sampled λ below some threshold the combined
        // point is symplectic and the rank has already jumped
        let mut tail_good = 0usize;
        let mut lambda = rat_int(1);
        let half = crate::rational::rat(1, 2);
        let mut results = Vec::new();
        for _ in 0..max_refinement {
            lambda *= &half;
            let combined: Vec<Rational> = point0
                .iter()
                .zip(point1)
                .map(|(a, b)| a + &(b * &lambda))
                .collect();
            let ok = self.is_symplectic_point(&combined)?
                && lm.matrix.eval(&combined)?.rank() >= r1;
            results.push(ok);
        }
        for ok in results.iter().rev() {
            if *ok {
                tail_good += 1;
            } else {
                break;
            }
        }
        Ok(tail_good > 0)
    }

    /// Candidate strata for algebras without curated data: single vanishing
    /// parameters and pairwise (anti-)identifications. Coarse, but it finds
    /// coordinate-aligned rank drops.
    pub fn heuristic_strata(&self) -> Vec<Vec<Constraint>> {
        let p = self.params();
        let mut out = Vec::new();
        for v in 0..p {
            out.push(vec![Constraint::new(v, MultiPoly::zero())]);
        }
        for v in 0..p {
            for w in 0..p {
                if v == w {
                    continue;
                }
                out.push(vec![Constraint::new(v, MultiPoly::var(w))]);
                out.push(vec![Constraint::new(
                    v,
                    MultiPoly::var(w).scale(&rat_int(-1)),
                )]);
            }
        }
        out
    }

    /// Search the given strata and deterministic sample points for two
    /// symplectic points whose rank differs in codegree 1 or 2.
    pub fn flexibility_certificate(
        &self,
        strata: &[Vec<Constraint>],
        config: &SampleConfig,
    ) -> Result<Option<FlexibilityCertificate>> {
        if !self.admits_symplectic() {
            return Err(Error::NoSymplecticStructure);
        }
        let m = self.half_dim();
        for (k, degree) in [(2usize, 2 * m - 2), (1usize, 2 * m - 1)] {
            let lm = self.lefschetz_matrix(k);
            let generic = self.generic_rank(&lm, config)?;
            // high point: first sample achieving the generic rank
            let points = self.sample_symplectic_points(config.points, config)?;
            let mut high = None;
            for p in &points {
                if self.rank_at(&lm, p)? == generic {
                    high = Some(p.clone());
                    break;
                }
            }
            let Some(high_point) = high else { continue };
            // low point: a stratum witness or sampled point of smaller rank
            let mut low: Option<(Vec<Rational>, usize)> = None;
            for constraints in strata {
                match self.rank_on_stratum(&lm, constraints, config) {
                    Ok(stratum) if stratum.rank < generic => {
                        let better = match &low {
                            None => true,
                            Some((_, r)) => stratum.rank < *r,
                        };
                        if better {
                            low = Some((stratum.witness, stratum.rank));
                        }
                    }
                    Ok(_) => {}
                    Err(Error::StratumOutsideSymplecticRegion) => {}
                    Err(e) => return Err(e),
                }
            }
            if low.is_none() {
                for p in &points {
                    let r = self.rank_at(&lm, p)?;
                    if r < generic {
                        low = Some((p.clone(), r));
                        break;
                    }
                }
            }
            if let Some((low_point, low_rank)) = low {
                return Ok(Some(FlexibilityCertificate {
                    degree,
                    low_point,
                    low_rank,
                    high_point,
                    high_rank: generic,
                }));
            }
        }
        Ok(None)
    }
}

/// Parse a comma-separated parameter assignment like "A=1,B=0,C=-2/3".
pub fn parse_assignment(text: &str, params: usize) -> Result<Vec<Rational>> {
    let mut values: Vec<Option<Rational>> = vec![None; params];
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, value) = part.split_once('=').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected NAME=VALUE, got {part:?}"),
        })?;
        let name = name.trim();
        let var = name
            .chars()
            .next()
            .and_then(crate::poly::var_index)
            .filter(|_| name.len() == 1)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown parameter {name:?}"),
            })?;
        if var >= params {
            Err(Error::Parse {
                pos: 0,
                msg: format!("parameter {name} exceeds the family ({params} parameters)"),
            })?;
        }
        let r = crate::rational::parse_rational(value).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("invalid rational {value:?}"),
        })?;
        values[var] = Some(r);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or(Error::MissingAssignment(var_name(i))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, NilpotentLieAlgebra};
    use crate::forms::mask_of_indices;
    use crate::poly::var_index;

    fn family(text: &str) -> SymplecticFamily {
        let g = NilpotentLieAlgebra::parse(text).unwrap();
        let ring = CohomologyRing::compute(&g);
        SymplecticFamily::new(&ring).unwrap()
    }

    fn paper_case1_family() -> SymplecticFamily {
        let g = NilpotentLieAlgebra::parse("(0,0,12,13,23,14-25)").unwrap();
        let ring = CohomologyRing::compute(&g);
        let b = |idx: &[usize]| KForm::<Rational>::basis(6, mask_of_indices(idx));
        SymplecticFamily::with_basis(
            &ring,
            vec![
                b(&[1, 4]),
                b(&[1, 5]).add(&b(&[2, 4])),
                b(&[2, 6]).sub(&b(&[3, 4])),
                b(&[1, 6]).sub(&b(&[3, 5])),
            ],
        )
        .unwrap()
    }

    fn pv(c: char) -> MultiPoly {
        MultiPoly::var(var_index(c).unwrap())
    }

    #[test]
    fn case1_nondegeneracy_polynomial() {
        let fam = paper_case1_family();
        let expected = &(&(&pv('A') * &pv('C')) * &pv('D'))
            - &(&pv('B') * &(&pv('C').pow(2) + &pv('D').pow(2)));
        let ratio = fam.pf().proportional_to(&expected);
        assert!(ratio.is_some(), "Pf = {} not proportional", fam.pf());
    }

    #[test]
    fn no_symplectic_structure_detected() {
        let fam = family("(0,0,12,13,14+23,34+52)");
        assert!(!fam.admits_symplectic());
        assert_eq!(fam.moduli_dim().err(), Some(Error::NoSymplecticStructure));
    }

    #[test]
    fn moduli_dimensions() {
        assert_eq!(family("(0,0,0,0,0,0)").moduli_dim().unwrap(), 15);
        assert_eq!(family("(0,0,12,13,23,14-25)").moduli_dim().unwrap(), 8);
        assert_eq!(family("(0,0,12,13,14,15)").moduli_dim().unwrap(), 7);
    }

    #[test]
    fn lefschetz_power_zero_is_identity() {
        let fam = paper_case1_family();
        let l3 = fam.lefschetz_matrix(3);
        assert_eq!(l3.power, 0);
        let id = l3.matrix.eval(&vec![rat_int(0); 4]).unwrap();
        assert_eq!(id, Matrix::identity(fam.ring().betti(3)));
    }

    #[test]
    fn case1_generic_rank_and_point_rank() {
        let fam = paper_case1_family();
        let config = SampleConfig::default();
        let l2 = fam.lefschetz_matrix(2);
        assert_eq!(fam.generic_rank(&l2, &config).unwrap(), 4);
        // the point (1,0,1,2) lies in the open stratum
        let p = vec![rat_int(1), rat_int(0), rat_int(1), rat_int(2)];
        assert_eq!(fam.rank_at(&l2, &p).unwrap(), 4);
        let l1 = fam.lefschetz_matrix(1);
        assert_eq!(fam.generic_rank(&l1, &config).unwrap(), 0);
    }

    #[test]
    fn case1_strata_ranks() {
        let fam = paper_case1_family();
        let config = SampleConfig::default();
        let l2 = fam.lefschetz_matrix(2);
        let c = var_index('C').unwrap();
        let a = var_index('A').unwrap();
        // C = D
        let s1 = fam
            .rank_on_stratum(&l2, &[Constraint::new(c, pv('D'))], &config)
            .unwrap();
        assert_eq!(s1.rank, 3);
        assert!(fam.is_symplectic_point(&s1.witness).unwrap());
        // C = D, A = -2B
        let s2 = fam
            .rank_on_stratum(
                &l2,
                &[
                    Constraint::new(c, pv('D')),
                    Constraint::new(a, pv('B').scale(&rat_int(-2))),
                ],
                &config,
            )
            .unwrap();
        assert_eq!(s2.rank, 2);
        // the witness satisfies the constraints exactly
        assert_eq!(s2.witness[c], s2.witness[var_index('D').unwrap()]);
        assert_eq!(s2.witness[a], &s2.witness[var_index('B').unwrap()] * rat_int(-2));
    }

    #[test]
    fn segment_check_on_case1_certificate() {
        let fam = paper_case1_family();
        let config = SampleConfig::default();
        let l2 = fam.lefschetz_matrix(2);
        // low point from the deepest stratum, high point generic
        let low = vec![rat_int(2), rat_int(-1), rat_int(1), rat_int(1)];
        assert_eq!(fam.rank_at(&l2, &low).unwrap(), 2);
        let high = vec![rat_int(1), rat_int(0), rat_int(1), rat_int(2)];
        assert!(fam.segment_rank_check(&l2, &low, &high, 20).unwrap());
        // reversed precondition errors out
        assert!(fam.segment_rank_check(&l2, &high, &low, 20).is_err());
        assert!(fam.segment_rank_check(&l2, &low, &low, 20).is_err());
        let _ = config;
    }

    #[test]
    fn abelian_family_is_rigid() {
        let fam = family("(0,0,0,0,0,0)");
        let config = SampleConfig::default();
        let cert = fam.flexibility_certificate(&[], &config).unwrap();
        assert!(cert.is_none());
        let betti = fam.harmonic_betti_via_rank(None, &config).unwrap();
        assert_eq!(betti.top_minus_1, 6);
        assert_eq!(betti.top_minus_2, 15);
    }

    #[test]
    fn case1_flexibility_certificate() {
        let fam = paper_case1_family();
        let config = SampleConfig::default();
        let c = var_index('C').unwrap();
        let a = var_index('A').unwrap();
        let strata = vec![
            vec![Constraint::new(c, pv('D'))],
            vec![
                Constraint::new(c, pv('D')),
                Constraint::new(a, pv('B').scale(&rat_int(-2))),
            ],
        ];
        let cert = fam
            .flexibility_certificate(&strata, &config)
            .unwrap()
            .expect("flexible");
        assert_eq!(cert.degree, 4);
        assert_eq!(cert.high_rank, 4);
        assert_eq!(cert.low_rank, 2);
        let l2 = fam.lefschetz_matrix(2);
        assert!(fam
            .segment_rank_check(&l2, &cert.low_point, &cert.high_point, 20)
            .unwrap());
    }

    #[test]
    fn lefschetz_type_detection() {
        let torus = family("(0,0,0,0,0,0)");
        let p = torus
            .sample_symplectic_points(1, &SampleConfig::default())
            .unwrap()
            .remove(0);
        assert!(torus.is_lefschetz_type(&p).unwrap());

        let fam = paper_case1_family();
        let p = vec![rat_int(1), rat_int(0), rat_int(1), rat_int(2)];
        assert!(!fam.is_lefschetz_type(&p).unwrap());
    }

    #[test]
    fn semicontinuity_of_point_ranks() {
        let fam = paper_case1_family();
        let config = SampleConfig::default();
        for k in 0..=3 {
            let lm = fam.lefschetz_matrix(k);
            let generic = fam.generic_rank(&lm, &config).unwrap();
            for p in fam.sample_symplectic_points(4, &config).unwrap() {
                assert!(fam.rank_at(&lm, &p).unwrap() <= generic);
            }
        }
    }

    #[test]
    fn assignment_parsing() {
        let p = parse_assignment("A=1, B=0, C=1, D=2", 4).unwrap();
        assert_eq!(p, vec![rat_int(1), rat_int(0), rat_int(1), rat_int(2)]);
        assert_eq!(
            parse_assignment("A=1/2,B=-3", 2).unwrap(),
            vec![crate::rational::rat(1, 2), rat_int(-3)]
        );
        assert!(parse_assignment("A=1", 2).is_err()); // B missing
        assert!(parse_assignment("A=1,Z=2", 2).is_err());
        assert!(parse_assignment("A=x", 1).is_err());
    }

    #[test]
    fn case1_minor_witness_certifies_rank_four() {
        let fam = paper_case1_family();
        let l2 = fam.lefschetz_matrix(2);
        let samples = fam
            .sample_symplectic_points(3, &SampleConfig::default())
            .unwrap();
        let witness = l2.matrix.minor_nonzero_witness(4, &samples).unwrap().unwrap();
        assert_eq!(witness.row_indices.len(), 4);
        assert!(!witness.determinant.is_zero());
    }

    #[test]
    fn case1_stratum_point_ranks() {
        // (1,1,1,1) lies on C = D with A^2 != 4B^2 and is symplectic
        let fam = paper_case1_family();
        let l2 = fam.lefschetz_matrix(2);
        let p = vec![rat_int(1), rat_int(1), rat_int(1), rat_int(1)];
        assert_eq!(fam.pf().eval(&p).unwrap(), rat_int(6)); // -6 * (ACD - B(C^2+D^2))
        assert_eq!(fam.rank_at(&l2, &p).unwrap(), 3);
    }

    #[test]
    fn case1_lefschetz_image_matches_display() {
        // the column span of L: H^2 -> H^4 at a symplectic point equals the
        // span of the four displayed image vectors
        let fam = paper_case1_family();
        let ring = fam.ring().clone();
        let l2 = fam.lefschetz_matrix(2);
        let point = vec![rat_int(3), rat_int(1), rat_int(1), rat_int(2)];
        assert!(fam.is_symplectic_point(&point).unwrap());
        let numeric = l2.matrix.eval(&point).unwrap();
        let my_columns: Vec<Vec<Rational>> =
            (0..numeric.cols()).map(|j| numeric.column(j)).collect();
        let b = |idx: &[usize]| KForm::<Rational>::basis(6, mask_of_indices(idx));
        let (a, bb, c, d) = (&point[0], &point[1], &point[2], &point[3]);
        let displayed = [b(&[1, 2, 4, 6]).scale(&-c.clone()).add(&b(&[1, 2, 5, 6]).scale(d)),
            b(&[1, 2, 4, 6])
                .scale(&(d * rat_int(2)))
                .add(&b(&[1, 2, 5, 6]).scale(&(c * rat_int(-2)))),
            b(&[1, 2, 4, 6])
                .scale(&-a.clone())
                .add(&b(&[1, 2, 5, 6]).scale(&(bb * rat_int(-2))))
                .add(&b(&[1, 3, 5, 6]).scale(&(c * rat_int(-2))))
                .add(&b(&[1, 3, 4, 6]).add(&b(&[2, 3, 5, 6])).scale(&-d.clone())),
            b(&[1, 2, 4, 6])
                .scale(&(bb * rat_int(2)))
                .add(&b(&[1, 2, 5, 6]).scale(a))
                .add(&b(&[1, 3, 5, 6]).scale(&(d * rat_int(-2))))
                .add(&b(&[1, 3, 4, 6]).add(&b(&[2, 3, 5, 6])).scale(&-c.clone()))];
        let display_coords: Vec<Vec<Rational>> = displayed
            .iter()
            .map(|f| ring.class_of(f).unwrap().coordinates)
            .collect();
        let b4 = ring.betti(4);
        let dim_mine = Matrix::rank_of_span(&my_columns, b4);
        let dim_displayed = Matrix::rank_of_span(&display_coords, b4);
        let all: Vec<Vec<Rational>> = my_columns
            .iter()
            .chain(display_coords.iter())
            .cloned()
            .collect();
        assert_eq!(dim_mine, dim_displayed);
        assert_eq!(Matrix::rank_of_span(&all, b4), dim_mine);
    }

    #[test]
    fn kt_rank_betti_top_degree() {
        let g = crate::algebra::kodaira_thurston();
        let ring = CohomologyRing::compute(&g);
        let fam = SymplecticFamily::new(&ring).unwrap();
        let config = SampleConfig::default();
        let betti = fam.harmonic_betti_via_rank(None, &config).unwrap();
        // h3 = rank L: H^1 -> H^3 = 2 for the Kodaira-Thurston algebra
        assert_eq!(betti.top_minus_1, 2);
        assert_eq!(betti.top_minus_2, 4);
        assert_eq!(betti.top_minus_3, None); // only defined from dimension 6 up
    }

    #[test]
    fn torus_needs_no_symbolic_fallback() {
        let fam = family("(0,0,0,0,0,0)");
        let config = SampleConfig::default();
        let l2 = fam.lefschetz_matrix(2);
        assert_eq!(l2.matrix.rows(), 15);
        assert_eq!(fam.generic_rank(&l2, &config).unwrap(), 15);
    }

    #[test]
    fn direct_sum_symplectic_of_tori() {
        let t2 = abelian(2);
        let t4 = abelian(4);
        let sum = t2.direct_sum(&t4).unwrap();
        let ring = CohomologyRing::compute(&sum);
        let fam = SymplecticFamily::new(&ring).unwrap();
        assert!(fam.admits_symplectic());
        assert_eq!(fam.moduli_dim().unwrap(), 15);
    }
}
