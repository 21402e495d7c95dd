//! The Siegel upper half space 𝔥_d⁺ (and its two-component extension 𝔥_d),
//! the symplectic similitude action, the bounded realization, and the two
//! candidate invariant metrics.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{is_negative_definite, is_positive_definite, symplectic_gram};
use crate::matrix::{
    gmat_conj, gmat_conj_transpose, gmat_re_im, gmat_to_qmat, qmat_to_gmat,
};
use crate::scalar::GaussRat;
use crate::{GMat, QMat, Rat};

/// Which component of 𝔥_d a point lies in: imaginary part positive or
/// negative definite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HalfSpace {
    Upper,
    Lower,
}

/// A symmetric complex matrix with (positive or negative) definite imaginary
/// part; `Upper` is membership in 𝔥_d⁺.
#[derive(Clone, PartialEq, Debug)]
pub struct SiegelPoint {
    d: usize,
    y: GMat,
    component: HalfSpace,
}

impl SiegelPoint {
    /// Validates symmetry and definiteness of the imaginary part.
    pub fn new(y: GMat) -> Result<Self> {
        if !y.is_square() {
            return Err(Error::shape("Siegel point must be square"));
        }
        if !y.is_symmetric() {
            return Err(Error::domain("Siegel point must be symmetric"));
        }
        let (_, im) = gmat_re_im(&y);
        let component = if is_positive_definite(&im)? {
            HalfSpace::Upper
        } else if is_negative_definite(&im)? {
            HalfSpace::Lower
        } else {
            return Err(Error::domain(
                "imaginary part is neither positive nor negative definite",
            ));
        };
        Ok(SiegelPoint {
            d: y.rows(),
            y,
            component,
        })
    }

    pub fn upper(y: GMat) -> Result<Self> {
        let p = SiegelPoint::new(y)?;
        if p.component != HalfSpace::Upper {
            return Err(Error::domain("point lies in the lower component"));
        }
        Ok(p)
    }

    /// The point i·I_d, the base point of 𝔥_d⁺.
    pub fn base_point(d: usize) -> Self {
        let y = GMat::from_fn(d, d, |r, c| {
            if r == c {
                GaussRat::i()
            } else {
                GaussRat::zero()
            }
        });
        SiegelPoint::new(y).expect("iI is a Siegel point")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &GMat {
        &self.y
    }

    pub fn component(&self) -> HalfSpace {
        self.component
    }

    pub fn imag(&self) -> QMat {
        gmat_re_im(&self.y).1
    }

    pub fn real(&self) -> QMat {
        gmat_re_im(&self.y).0
    }
}

/// An element of GSp_{2d}(ℚ): a rational 2d×2d matrix with gᵀ·M·g = c·M for
/// a nonzero multiplier c.
#[derive(Clone, PartialEq, Debug)]
pub struct SymplecticSimilitude {
    d: usize,
    g: QMat,
    multiplier: Rat,
}

impl SymplecticSimilitude {
    pub fn new(g: QMat) -> Result<Self> {
        if !g.is_square() || g.rows() % 2 != 0 {
            return Err(Error::shape("similitude must be square of even size"));
        }
        let d = g.rows() / 2;
        let m: QMat = symplectic_gram(d)?;
        let gram = g.transpose().mul_ref(&m)?.mul_ref(&g)?;
        // Read the candidate multiplier off the (0, d) slot, then verify.
        let c = gram.at(0, d).clone();
        if c.is_zero() {
            return Err(Error::domain("matrix is not a symplectic similitude"));
        }
        if gram != m.scale(&c) {
            return Err(Error::domain("matrix is not a symplectic similitude"));
        }
        Ok(SymplecticSimilitude { d, g, multiplier: c })
    }

    pub fn identity(d: usize) -> Self {
        SymplecticSimilitude {
            d,
            g: QMat::identity(2 * d),
            multiplier: Rat::one(),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &QMat {
        &self.g
    }

    pub fn multiplier(&self) -> &Rat {
        &self.multiplier
    }

    pub fn is_symplectic(&self) -> bool {
        self.multiplier.is_one()
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        SymplecticSimilitude::new(self.g.mul_ref(&rhs.g)?)
    }

    pub fn inverse(&self) -> Result<Self> {
        SymplecticSimilitude::new(self.g.inverse()?)
    }

    /// The blocks (A, B, C, D) of `[[A, B], [C, D]]`.
    pub fn blocks(&self) -> (QMat, QMat, QMat, QMat) {
        let d = self.d;
        let idx: Vec<usize> = (0..d).collect();
        let idx2: Vec<usize> = (d..2 * d).collect();
        (
            self.g.submatrix(&idx, &idx),
            self.g.submatrix(&idx, &idx2),
            self.g.submatrix(&idx2, &idx),
            self.g.submatrix(&idx2, &idx2),
        )
    }
}

/// A point of the bounded realization 𝒟_d: symmetric with I − A*A positive
/// definite.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundedPoint {
    d: usize,
    a: GMat,
}

impl BoundedPoint {
    pub fn new(a: GMat) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::shape("bounded point must be square"));
        }
        if !a.is_symmetric() {
            return Err(Error::domain("bounded point must be symmetric"));
        }
        let herm = in_disc_form(&a)?;
        if !crate::linalg::hermitian_is_positive_definite(&herm)? {
            return Err(Error::domain("I - A*A is not positive definite"));
        }
        Ok(BoundedPoint { d: a.rows(), a })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &GMat {
        &self.a
    }
}

/// I − A*A, the Hermitian matrix whose positivity defines 𝒟_d.
fn in_disc_form(a: &GMat) -> Result<GMat> {
    let prod = gmat_conj_transpose(a).mul_ref(a)?;
    GMat::identity(a.rows()).sub_ref(&prod)
}

/// The fractional-linear action (AY + B)(CY + D)⁻¹ of a symplectic
/// similitude. A positive multiplier preserves the component of 𝔥_d, a
/// negative one swaps it.
pub fn mobius_act(g: &SymplecticSimilitude, y: &SiegelPoint) -> Result<SiegelPoint> {
    if g.dim() != y.dim() {
        return Err(Error::shape("dimension mismatch in action"));
    }
    let (a, b, c, d) = g.blocks();
    let (ga, gb, gc, gd) = (
        qmat_to_gmat(&a),
        qmat_to_gmat(&b),
        qmat_to_gmat(&c),
        qmat_to_gmat(&d),
    );
    let num = ga.mul_ref(y.matrix())?.add_ref(&gb)?;
    let den = gc.mul_ref(y.matrix())?.add_ref(&gd)?;
    let den_inv = den
        .inverse()
        .map_err(|_| Error::degenerate("CY + D is singular"))?;
    let result = num.mul_ref(&den_inv)?;
    let out = SiegelPoint::new(result)?;
    let expected = match (y.component(), g.multiplier().is_positive()) {
        (c, true) => c,
        (HalfSpace::Upper, false) => HalfSpace::Lower,
        (HalfSpace::Lower, false) => HalfSpace::Upper,
    };
    if out.component() != expected {
        return Err(Error::internal("component sign violated by action"));
    }
    Ok(out)
}

/// Bounded realization Y ↦ (iI − Y)(iI + Y)⁻¹ of 𝔥_d⁺ into 𝒟_d.
pub fn cayley(y: &SiegelPoint) -> Result<BoundedPoint> {
    if y.component() != HalfSpace::Upper {
        return Err(Error::domain("cayley transform needs a point of the upper space"));
    }
    let d = y.dim();
    let i_mat = GMat::identity(d).scale(&GaussRat::i());
    let num = i_mat.sub_ref(y.matrix())?;
    let den = i_mat.add_ref(y.matrix())?;
    let den_inv = den
        .inverse()
        .map_err(|_| Error::degenerate("iI + Y is singular"))?;
    BoundedPoint::new(num.mul_ref(&den_inv)?)
}

/// Inverse bounded realization A ↦ i(I − A)(I + A)⁻¹.
pub fn cayley_inv(a: &BoundedPoint) -> Result<SiegelPoint> {
    let d = a.dim();
    let id = GMat::identity(d);
    let num = id.sub_ref(a.matrix())?.scale(&GaussRat::i());
    let den = id.add_ref(a.matrix())?;
    let den_inv = den
        .inverse()
        .map_err(|_| Error::degenerate("I + A is singular"))?;
    SiegelPoint::upper(num.mul_ref(&den_inv)?)
}

/// Which quadratic form to evaluate on a tangent vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MetricVariant {
    /// Tr(Im(Y)⁻² dY Im(Y)⁻¹ dȲ)
    Paper,
    /// Tr(Im(Y)⁻¹ dY Im(Y)⁻¹ dȲ), the classical invariant form.
    Classical,
}

/// Evaluates the chosen metric variant on a symmetric tangent direction.
/// The value is computed exactly and returned as `f64`; it is real and
/// nonnegative for the invariant variant.
pub fn metric_form(y: &SiegelPoint, dy: &GMat, variant: MetricVariant) -> Result<f64> {
    let v = metric_form_exact(y, dy, variant)?;
    if !v.im().is_zero() {
        return Err(Error::internal("metric value has nonzero imaginary part"));
    }
    v.re()
        .to_f64()
        .ok_or_else(|| Error::internal("metric value does not fit in f64"))
}

/// Exact Gaussian-rational value of the metric form.
pub fn metric_form_exact(y: &SiegelPoint, dy: &GMat, variant: MetricVariant) -> Result<GaussRat> {
    if dy.rows() != y.dim() || dy.cols() != y.dim() {
        return Err(Error::shape("tangent direction has wrong shape"));
    }
    if !dy.is_symmetric() {
        return Err(Error::shape("tangent direction must be symmetric"));
    }
    let im_inv = qmat_to_gmat(&y.imag().inverse()?);
    let first = match variant {
        MetricVariant::Paper => im_inv.mul_ref(&im_inv)?,
        MetricVariant::Classical => im_inv.clone(),
    };
    let prod = first
        .mul_ref(dy)?
        .mul_ref(&im_inv)?
        .mul_ref(&gmat_conj(dy))?;
    prod.trace()
}

/// Pushes a tangent vector forward along the action of g:
/// dY ↦ c(g) · (CY+D)⁻ᵀ dY (CY+D)⁻¹.
///
/// The multiplier factor is the derivative of the similitude action; for
/// symplectic g (c = 1) it drops out.
pub fn pushforward_tangent(
    g: &SymplecticSimilitude,
    y: &SiegelPoint,
    dy: &GMat,
) -> Result<GMat> {
    let (_, _, c, d) = g.blocks();
    let den = qmat_to_gmat(&c)
        .mul_ref(y.matrix())?
        .add_ref(&qmat_to_gmat(&d))?;
    let den_inv = den.inverse()?;
    let mult = GaussRat::from_rat(g.multiplier().clone());
    Ok(den_inv
        .transpose()
        .mul_ref(dy)?
        .mul_ref(&den_inv)?
        .scale(&mult))
}

/// Membership in K_∞ = O(2d) ∩ Sp_{2d}(ℝ): gᵀg = I and multiplier 1.
pub fn in_kinfty(g: &SymplecticSimilitude) -> bool {
    g.multiplier().is_one() && g.matrix().transpose().mul_ref(g.matrix()).unwrap().is_identity()
}

/// Embeds a unitary matrix X + iY (checked exactly) as the symplectic
/// element [[X, Y], [-Y, X]], which lies in K_∞ and fixes i·I.
pub fn embed_ud(x: &QMat, y: &QMat) -> Result<SymplecticSimilitude> {
    if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
        return Err(Error::shape("embed_ud needs square blocks of equal size"));
    }
    let d = x.rows();
    let u = GMat::from_fn(d, d, |r, c| {
        GaussRat::new(x.at(r, c).clone(), y.at(r, c).clone())
    });
    let prod = gmat_conj_transpose(&u).mul_ref(&u)?;
    if !prod.is_identity() {
        return Err(Error::domain("X + iY is not unitary"));
    }
    let g = QMat::block2x2(x, y, &y.neg_ref(), x)?;
    let sim = SymplecticSimilitude::new(g)?;
    if !in_kinfty(&sim) {
        return Err(Error::internal("embedded unitary not in K_infinity"));
    }
    Ok(sim)
}

/// Convenience: embed a 1×1 unitary scalar.
pub fn embed_circle_point(z: &GaussRat) -> Result<SymplecticSimilitude> {
    if !z.norm().is_one() {
        return Err(Error::domain("scalar is not on the unit circle"));
    }
    let x = QMat::from_fn(1, 1, |_, _| z.re().clone());
    let y = QMat::from_fn(1, 1, |_, _| z.im().clone());
    embed_ud(&x, &y)
}

/// (Y, dY) with exact invariance defect of the metric under g: the
/// difference metric(gY, g·dY) − metric(Y, dY) as a Gaussian rational.
pub fn metric_invariance_defect(
    g: &SymplecticSimilitude,
    y: &SiegelPoint,
    dy: &GMat,
    variant: MetricVariant,
) -> Result<GaussRat> {
    let moved = mobius_act(g, y)?;
    let dy2 = pushforward_tangent(g, y, dy)?;
    let a = metric_form_exact(&moved, &dy2, variant)?;
    let b = metric_form_exact(y, dy, variant)?;
    Ok(a - b)
}

/// helper: rational part of a Gaussian matrix known to be real.
pub fn expect_real(m: &GMat) -> Result<QMat> {
    gmat_to_qmat(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_siegel_point, random_sp, SplitMix64};
    use crate::scalar::{rat, rat_int};

    fn qmat(rows: Vec<Vec<i64>>) -> QMat {
        QMat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
        .unwrap()
    }

    fn g1(re: i64, im: i64) -> GaussRat {
        GaussRat::from_ints(re, im)
    }

    fn point1(re: i64, im: i64) -> SiegelPoint {
        SiegelPoint::new(GMat::from_fn(1, 1, |_, _| g1(re, im))).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let y = SiegelPoint::base_point(2);
        let id = SymplecticSimilitude::identity(2);
        assert_eq!(mobius_act(&id, &y).unwrap(), y);
    }

    #[test]
    fn inversion_fixes_i() {
        let s = SymplecticSimilitude::new(qmat(vec![vec![0, 1], vec![-1, 0]])).unwrap();
        let y = point1(0, 1);
        assert_eq!(mobius_act(&s, &y).unwrap(), y);
    }

    #[test]
    fn translation_moves_real_part() {
        let t = SymplecticSimilitude::new(qmat(vec![vec![1, 5], vec![0, 1]])).unwrap();
        let y = point1(0, 1);
        assert_eq!(mobius_act(&t, &y).unwrap(), point1(5, 1));
    }

    #[test]
    fn negative_multiplier_swaps_components() {
        // diag(1, -1) has multiplier -1.
        let g = SymplecticSimilitude::new(qmat(vec![vec![1, 0], vec![0, -1]])).unwrap();
        assert_eq!(g.multiplier(), &rat(-1, 1));
        let y = point1(0, 1);
        let moved = mobius_act(&g, &y).unwrap();
        assert_eq!(moved.component(), HalfSpace::Lower);
    }

    #[test]
    fn cocycle_law_small() {
        let mut rng = SplitMix64::new(0xc0c);
        for d in 1..=2 {
            for _ in 0..10 {
                let g = random_sp(&mut rng, d, 3);
                let h = random_sp(&mut rng, d, 3);
                let y = random_siegel_point(&mut rng, d);
                let gh = g.compose(&h).unwrap();
                let lhs = mobius_act(&gh, &y).unwrap();
                let rhs = mobius_act(&g, &mobius_act(&h, &y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cayley_examples() {
        let y = SiegelPoint::base_point(3);
        let a = cayley(&y).unwrap();
        assert!(a.matrix().entries().all(|e| e.is_zero()));

        let y2 = point1(0, 2);
        let a2 = cayley(&y2).unwrap();
        assert_eq!(a2.matrix().at(0, 0), &GaussRat::new(rat(-1, 3), rat(0, 1)));
        assert_eq!(cayley_inv(&a2).unwrap(), y2);
    }

    #[test]
    fn cayley_round_trip_random() {
        let mut rng = SplitMix64::new(0xca11e4);
        for d in 1..=3 {
            for _ in 0..10 {
                let y = random_siegel_point(&mut rng, d);
                let a = cayley(&y).unwrap();
                assert_eq!(cayley_inv(&a).unwrap(), y);
            }
        }
    }

    #[test]
    fn metric_at_base_point() {
        let y = point1(0, 1);
        let zero = GMat::zero(1, 1);
        assert_eq!(
            metric_form(&y, &zero, MetricVariant::Classical).unwrap(),
            0.0
        );
        let one = GMat::identity(1);
        assert_eq!(metric_form(&y, &one, MetricVariant::Classical).unwrap(), 1.0);
    }

    #[test]
    fn exactly_one_variant_is_invariant_at_a_probe() {
        // Probe with g = inversion at Y = 2i, dY = 1; i is too symmetric to
        // separate the variants.
        let s = SymplecticSimilitude::new(qmat(vec![vec![0, 1], vec![-1, 0]])).unwrap();
        let y = point1(0, 2);
        let dy = GMat::identity(1);
        let classical = metric_invariance_defect(&s, &y, &dy, MetricVariant::Classical).unwrap();
        let paper = metric_invariance_defect(&s, &y, &dy, MetricVariant::Paper).unwrap();
        assert!(classical.is_zero());
        assert!(!paper.is_zero());
    }

    #[test]
    fn kinfty_membership_and_embedding() {
        let id = SymplecticSimilitude::identity(2);
        assert!(in_kinfty(&id));
        // X + iY = i, i.e. X = 0, Y = 1 embeds to the standard involution.
        let g = embed_ud(&qmat(vec![vec![0]]), &qmat(vec![vec![1]])).unwrap();
        assert_eq!(g.matrix(), &qmat(vec![vec![0, 1], vec![-1, 0]]));
        // (3+4i)/5 is unitary and its embedding fixes i.
        let z = GaussRat::new(rat(3, 5), rat(4, 5));
        let g = embed_circle_point(&z).unwrap();
        assert!(in_kinfty(&g));
        let y = point1(0, 1);
        assert_eq!(mobius_act(&g, &y).unwrap(), y);
        // Non-unitary input is rejected.
        assert!(embed_ud(&qmat(vec![vec![1]]), &qmat(vec![vec![1]])).is_err());
    }

    #[test]
    fn action_preserves_membership() {
        let mut rng = SplitMix64::new(33);
        for _ in 0..20 {
            let g = random_sp(&mut rng, 2, 4);
            let y = random_siegel_point(&mut rng, 2);
            let moved = mobius_act(&g, &y).unwrap();
            assert_eq!(moved.component(), HalfSpace::Upper);
        }
    }
}
