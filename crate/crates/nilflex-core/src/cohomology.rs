//! Cohomology of the exterior cochain complex of a nilpotent Lie algebra,
//! with explicit representative cocycles, cup products, the top-degree
//! pairing and the odd-degree skew forms induced by a degree-two class.

use num_traits::Zero;

use crate::algebra::NilpotentLieAlgebra;
use crate::error::{Error, Result};
use crate::forms::{top_mask, KForm};
use crate::matrix::{Matrix, QuotientMap};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// A cohomology class: coordinates in the fixed quotient basis plus a
/// distinguished cocycle representative.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomClass {
    pub degree: usize,
    pub coordinates: Vec<Rational>,
    pub representative: KForm<Rational>,
}

/// Per-degree quotient data for H^*(Λ*g*, d).
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    algebra: NilpotentLieAlgebra,
    /// Differential matrices d_k: Λ^k → Λ^{k+1}, index 0..=n.
    differentials: Vec<Matrix<Rational>>,
    /// Independent image vectors of d_{k-1} inside Λ^k.
    image_bases: Vec<Vec<Vec<Rational>>>,
    quotients: Vec<QuotientMap>,
    betti: Vec<usize>,
}

impl CohomologyRing {
    /// Compute all degrees with a deterministic, pivot-ordered basis choice.
    pub fn compute(algebra: &NilpotentLieAlgebra) -> CohomologyRing {
        let n = algebra.dim();
        let differentials: Vec<Matrix<Rational>> =
            (0..=n).map(|k| algebra.differential_matrix(k)).collect();
        let mut image_bases = Vec::with_capacity(n + 1);
        let mut quotients = Vec::with_capacity(n + 1);
        let mut betti = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let dim_k = algebra.basis().dim(k as isize);
            // ker d_k; in top degree d_k has no rows, so everything is closed
            let cocycles = differentials[k].nullspace_basis();
            let boundaries: Vec<Vec<Rational>> = if k == 0 {
                Vec::new()
            } else {
                let d_prev = &differentials[k - 1];
                let r = d_prev.rref();
                r.pivots.iter().map(|&c| d_prev.column(c)).collect()
            };
            let quotient = QuotientMap::new(&cocycles, &boundaries, dim_k);
            betti.push(quotient.quotient_dim());
            image_bases.push(boundaries);
            quotients.push(quotient);
        }
        CohomologyRing {
            algebra: algebra.clone(),
            differentials,
            image_bases,
            quotients,
            betti,
        }
    }

    pub fn algebra(&self) -> &NilpotentLieAlgebra {
        &self.algebra
    }

    pub fn betti(&self, k: usize) -> usize {
        if k > self.algebra.dim() {
            0
        } else {
            self.betti[k]
        }
    }

    pub fn betti_numbers(&self) -> &[usize] {
        &self.betti
    }

    pub fn differential(&self, k: usize) -> &Matrix<Rational> {
        &self.differentials[k]
    }

    /// Independent boundary vectors inside Λ^k.
    pub fn boundary_basis(&self, k: usize) -> &[Vec<Rational>] {
        &self.image_bases[k]
    }

    pub fn quotient_map(&self, k: usize) -> &QuotientMap {
        &self.quotients[k]
    }

    /// The chosen representative cocycles spanning H^k.
    pub fn representatives(&self, k: usize) -> Vec<KForm<Rational>> {
        let masks = self.algebra.basis().masks(k);
        self.quotients[k]
            .representatives
            .iter()
            .map(|v| KForm::from_vec(self.algebra.dim(), k, masks, v))
            .collect()
    }

    /// Basis classes of H^k.
    pub fn basis_classes(&self, k: usize) -> Vec<CohomClass> {
        let b = self.betti(k);
        self.representatives(k)
            .into_iter()
            .enumerate()
            .map(|(i, rep)| {
                let mut coords = vec![Rational::zero(); b];
                coords[i] = num_traits::One::one();
                CohomClass {
                    degree: k,
                    coordinates: coords,
                    representative: rep,
                }
            })
            .collect()
    }

    /// The class of a cocycle; errors when the form is not closed.
    pub fn class_of(&self, form: &KForm<Rational>) -> Result<CohomClass> {
        let k = form.degree();
        if k > self.algebra.dim() {
            return Err(Error::ShapeMismatch("degree exceeds dimension".into()));
        }
        if !self.algebra.d(form).is_zero() {
            return Err(Error::NotACocycle);
        }
        let v = form.to_vec(self.algebra.basis().masks(k));
        let coordinates = self.quotients[k].coordinate_matrix.mul_vec(&v);
        Ok(CohomClass {
            degree: k,
            coordinates,
            representative: form.clone(),
        })
    }

    /// Class with the given quotient coordinates, using the fixed
    /// representatives.
    pub fn class_from_coordinates(&self, k: usize, coords: &[Rational]) -> CohomClass {
        assert_eq!(coords.len(), self.betti(k));
        let mut rep = KForm::zero(self.algebra.dim(), k);
        for (c, r) in coords.iter().zip(self.representatives(k)) {
            rep = rep.add(&r.scale(c));
        }
        CohomClass {
            degree: k,
            coordinates: coords.to_vec(),
            representative: rep,
        }
    }

    /// Cup product at class level; independent of the representatives.
    pub fn cup(&self, a: &CohomClass, b: &CohomClass) -> Result<CohomClass> {
        let w = a.representative.wedge(&b.representative);
        if w.degree() > self.algebra.dim() {
            return Ok(CohomClass {
                degree: w.degree(),
                coordinates: Vec::new(),
                representative: w,
            });
        }
        self.class_of(&w)
    }

    /// Coefficient of the volume form alpha_{1..n} in rep(a) ∧ rep(b); the
    /// algebraic stand-in for integration over the underlying manifold.
    pub fn poincare_pairing(&self, a: &CohomClass, b: &CohomClass) -> Rational {
        let n = self.algebra.dim();
        assert_eq!(a.degree + b.degree, n, "degrees must be complementary");
        a.representative
            .wedge(&b.representative)
            .coefficient(top_mask(n))
    }

    /// Matrix of the pairing H^k × H^{n-k} → Q in the fixed bases.
    pub fn pairing_matrix(&self, k: usize) -> Matrix<Rational> {
        let n = self.algebra.dim();
        let left = self.representatives(k);
        let right = self.representatives(n - k);
        Matrix::from_fn(left.len(), right.len(), |i, j| {
            left[i].wedge(&right[j]).coefficient(top_mask(n))
        })
    }

    /// The skew bilinear form <x, y> = p(x, L^{m-2k-1} y) on H^{2k+1} for a
    /// fixed degree-two class, together with its (even) rank.
    pub fn rho_form(&self, omega: &CohomClass, k: usize) -> Result<(Matrix<Rational>, usize)> {
        let n = self.algebra.dim();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        let m = n / 2;
        let deg = 2 * k + 1;
        if deg > m {
            return Err(Error::Precondition(format!(
                "degree {deg} exceeds middle dimension {m}"
            )));
        }
        let power = m - deg; // L^{m-2k-1}
        let mut omega_pow = KForm::unit(n);
        for _ in 0..power {
            omega_pow = omega_pow.wedge(&omega.representative);
        }
        let reps = self.representatives(deg);
        let matrix = Matrix::from_fn(reps.len(), reps.len(), |i, j| {
            reps[i].wedge(&omega_pow).wedge(&reps[j]).coefficient(top_mask(n))
        });
        // the pairing of cocycles against a fixed cocycle power is
        // skew-symmetric in odd degree
        let rank = matrix.rank();
        debug_assert_eq!(rank % 2, 0, "skew form has even rank");
        Ok((matrix, rank))
    }

    /// Quotient coordinates of a polynomial-coefficient cocycle (linearity
    /// over the scalars; closedness must hold identically).
    pub fn coordinates_poly(&self, form: &KForm<MultiPoly>) -> Vec<MultiPoly> {
        let k = form.degree();
        let v = form.to_vec(self.algebra.basis().masks(k));
        self.quotients[k].coordinates_poly(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, kodaira_thurston, NilpotentLieAlgebra};
    use crate::forms::mask_of_indices;
    use crate::rational::rat_int;

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut num = 1usize;
        let mut den = 1usize;
        for i in 0..k {
            num *= n - i;
            den *= i + 1;
        }
        num / den
    }

    #[test]
    fn abelian_betti_numbers_are_binomials() {
        let ring = CohomologyRing::compute(&abelian(6));
        for k in 0..=6 {
            assert_eq!(ring.betti(k), binomial(6, k));
        }
    }

    #[test]
    fn flexible_row_betti_numbers() {
        let g = NilpotentLieAlgebra::parse("(0,0,12,13,23,14-25)").unwrap();
        let ring = CohomologyRing::compute(&g);
        assert_eq!(ring.betti(0), 1);
        assert_eq!(ring.betti(1), 2);
        assert_eq!(ring.betti(2), 4);
        assert_eq!(ring.betti(6), 1);
        // kernel of d on Λ² has dimension b2 + dim B² = 4 + 4
        assert_eq!(ring.differential(2).nullspace_basis().len(), 8);
        // H¹ is spanned by the two closed generators
        let a1 = KForm::<Rational>::basis(6, mask_of_indices(&[1]));
        let c1 = ring.class_of(&a1).unwrap();
        assert!(c1.coordinates.iter().any(|c| !c.is_zero()));
        // alpha_12 = d(alpha_3) is exact
        let a12 = KForm::<Rational>::basis(6, mask_of_indices(&[1, 2]));
        let c12 = ring.class_of(&a12).unwrap();
        assert!(c12.coordinates.iter().all(|c| c.is_zero()));
        // the paper-style basis spans the same H²
        let paper: Vec<KForm<Rational>> = vec![
            KForm::basis(6, mask_of_indices(&[1, 4])),
            KForm::<Rational>::basis(6, mask_of_indices(&[1, 5]))
                .add(&KForm::basis(6, mask_of_indices(&[2, 4]))),
            KForm::<Rational>::basis(6, mask_of_indices(&[2, 6]))
                .sub(&KForm::basis(6, mask_of_indices(&[3, 4]))),
            KForm::<Rational>::basis(6, mask_of_indices(&[1, 6]))
                .sub(&KForm::basis(6, mask_of_indices(&[3, 5]))),
        ];
        let coords: Vec<Vec<Rational>> = paper
            .iter()
            .map(|f| ring.class_of(f).unwrap().coordinates)
            .collect();
        assert_eq!(Matrix::rank_of_span(&coords, 4), 4);
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let g = NilpotentLieAlgebra::parse("(0,0,12)").unwrap();
        let ring = CohomologyRing::compute(&g);
        let a3 = KForm::<Rational>::basis(3, mask_of_indices(&[3]));
        assert_eq!(ring.class_of(&a3).err(), Some(Error::NotACocycle));
    }

    #[test]
    fn kodaira_thurston_cup_products() {
        let ring = CohomologyRing::compute(&kodaira_thurston());
        assert_eq!(ring.betti_numbers(), &[1, 3, 4, 3, 1]);
        let x1 = ring
            .class_of(&KForm::basis(4, mask_of_indices(&[1])))
            .unwrap();
        let x2 = ring
            .class_of(&KForm::basis(4, mask_of_indices(&[2])))
            .unwrap();
        // x1 · x2 = 0 because x1∧x2 = d(x3)
        let prod = ring.cup(&x1, &x2).unwrap();
        assert!(prod.coordinates.iter().all(|c| c.is_zero()));
        // image of H¹ ⊗ H² → H³ has dimension 3
        let h1 = ring.basis_classes(1);
        let h2 = ring.basis_classes(2);
        let mut images = Vec::new();
        for a in &h1 {
            for b in &h2 {
                images.push(ring.cup(a, b).unwrap().coordinates);
            }
        }
        assert_eq!(Matrix::rank_of_span(&images, ring.betti(3)), 3);
    }

    #[test]
    fn torus_pairing_and_cup() {
        let ring = CohomologyRing::compute(&abelian(6));
        let a123 = ring
            .class_of(&KForm::basis(6, mask_of_indices(&[1, 2, 3])))
            .unwrap();
        let a456 = ring
            .class_of(&KForm::basis(6, mask_of_indices(&[4, 5, 6])))
            .unwrap();
        assert_eq!(ring.poincare_pairing(&a123, &a456), rat_int(1));
        let zero = ring.class_from_coordinates(3, &vec![rat_int(0); ring.betti(3)]);
        assert_eq!(ring.poincare_pairing(&a123, &zero), rat_int(0));
        let a1 = ring.class_of(&KForm::basis(6, mask_of_indices(&[1]))).unwrap();
        let a2 = ring.class_of(&KForm::basis(6, mask_of_indices(&[2]))).unwrap();
        let c = ring.cup(&a1, &a2).unwrap();
        assert!(c.coordinates.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn torus_rho_rank_is_full() {
        let ring = CohomologyRing::compute(&abelian(6));
        let omega = ring
            .class_of(
                &KForm::<Rational>::basis(6, mask_of_indices(&[1, 4]))
                    .add(&KForm::basis(6, mask_of_indices(&[2, 5])))
                    .add(&KForm::basis(6, mask_of_indices(&[3, 6]))),
            )
            .unwrap();
        let (m, rank) = ring.rho_form(&omega, 0).unwrap();
        assert_eq!(rank, 6);
        // skew-symmetry
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m.at(i, j), &-m.at(j, i).clone());
            }
        }
    }

    #[test]
    fn flexible_row_rho1_vanishes() {
        let g = NilpotentLieAlgebra::parse("(0,0,12,13,23,14-25)").unwrap();
        let ring = CohomologyRing::compute(&g);
        // a generic-looking symplectic class: A=1,B=0,C=1,D=2
        let omega = ring
            .class_of(
                &KForm::<Rational>::basis(6, mask_of_indices(&[1, 4]))
                    .add(
                        &KForm::<Rational>::basis(6, mask_of_indices(&[2, 6]))
                            .sub(&KForm::basis(6, mask_of_indices(&[3, 4]))),
                    )
                    .add(
                        &KForm::<Rational>::basis(6, mask_of_indices(&[1, 6]))
                            .sub(&KForm::basis(6, mask_of_indices(&[3, 5])))
                            .scale(&rat_int(2)),
                    ),
            )
            .unwrap();
        let (_, rank) = ring.rho_form(&omega, 0).unwrap();
        assert_eq!(rank, 0);
    }
}
