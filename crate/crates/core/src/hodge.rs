//! Complex structures J on ℝ^{2d}, Lagrangian frames in ℂ^{2d}, the
//! bijections between 𝔥_d⁺, compatible complex structures and positive
//! Lagrangians, and condition checks for the two worked families of Shimura
//! data (symplectic similitude and unitary similitude groups).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_is_positive_definite, is_negative_definite, is_positive_definite, kernel, rank,
    rref, solve, symplectic_gram,
};
use crate::matrix::{gmat_conj, qmat_to_gmat};
use crate::scalar::{rat, rat_int, GaussRat};
use crate::siegel::{mobius_act, SiegelPoint, SymplecticSimilitude};
use crate::{GMat, QMat, Rat};

/// A rational complex structure J on ℝ^{2d} compatible with the standard
/// symplectic form: J² = −I, JᵀMJ = M, and the symmetric form
/// (v, w) ↦ ψ(v, Jw) positive definite.
///
/// The positivity convention: with ψ = [[0, I], [-I, 0]] and the J attached
/// to Y = iI, the form ψ(J·, ·) printed in condition (b) comes out negative
/// definite while ψ(·, J·) is positive definite and agrees with the
/// Lagrangian-side condition (b'); this module adopts ψ(·, J·).
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexStructure {
    d: usize,
    j: QMat,
}

impl ComplexStructure {
    pub fn new(j: QMat) -> Result<Self> {
        if !j.is_square() || j.rows() % 2 != 0 {
            return Err(Error::shape("complex structure must be square of even size"));
        }
        let d = j.rows() / 2;
        let m: QMat = symplectic_gram(d)?;
        if !j.mul_ref(&j)?.add_ref(&QMat::identity(2 * d))?.entries().all(|e| e.is_zero()) {
            return Err(Error::domain("J^2 != -I"));
        }
        if j.transpose().mul_ref(&m)?.mul_ref(&j)? != m {
            return Err(Error::domain("J does not preserve the symplectic form"));
        }
        let gram = m.mul_ref(&j)?;
        if !gram.is_symmetric() {
            return Err(Error::internal("psi(., J.) not symmetric despite (a)"));
        }
        if !is_positive_definite(&gram)? {
            return Err(Error::domain("psi(., J.) is not positive definite"));
        }
        Ok(ComplexStructure { d, j })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &QMat {
        &self.j
    }

    /// Gram matrix of the positive symmetric form ψ(·, J·).
    pub fn positivity_gram(&self) -> QMat {
        let m: QMat = symplectic_gram(self.d).expect("d >= 1");
        m.mul_ref(&self.j).expect("shapes agree")
    }
}

/// Column basis of a d-dimensional subspace E ⊂ ℂ^{2d} that is isotropic
/// for ψ and positive: the Hermitian matrix −i·Bᵀ·M·conj(B), i.e.
/// (v, w) ↦ −i ψ(v, w̄) on column pairs, is positive definite.
#[derive(Clone, PartialEq, Debug)]
pub struct LagrangianFrame {
    d: usize,
    b: GMat,
}

impl LagrangianFrame {
    pub fn new(b: GMat) -> Result<Self> {
        if b.rows() % 2 != 0 || b.cols() * 2 != b.rows() {
            return Err(Error::shape("frame must be 2d x d"));
        }
        let d = b.cols();
        if rank(&b) != d {
            return Err(Error::degenerate("frame columns are dependent"));
        }
        let m: GMat = symplectic_gram(d)?;
        let iso = b.transpose().mul_ref(&m)?.mul_ref(&b)?;
        if !iso.entries().all(|e| e.is_zero()) {
            return Err(Error::domain("frame is not isotropic"));
        }
        let h = Self::positivity_matrix_unchecked(&b, &m)?;
        if !hermitian_is_positive_definite(&h)? {
            return Err(Error::domain("frame fails the positivity condition"));
        }
        Ok(LagrangianFrame { d, b })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &GMat {
        &self.b
    }

    /// −i·Bᵀ·M·conj(B), Hermitian for isotropic frames.
    pub fn positivity_matrix(&self) -> GMat {
        let m: GMat = symplectic_gram(self.d).expect("d >= 1");
        Self::positivity_matrix_unchecked(&self.b, &m).expect("shapes agree")
    }

    fn positivity_matrix_unchecked(b: &GMat, m: &GMat) -> Result<GMat> {
        let minus_i = -GaussRat::i();
        Ok(b
            .transpose()
            .mul_ref(m)?
            .mul_ref(&gmat_conj(b))?
            .scale(&minus_i))
    }
}

/// The complex structure attached to a point of 𝔥_d⁺: the unique real J
/// with J·(Y; I) = i·(Y; I).
pub fn jmatrix_from_point(y: &SiegelPoint) -> Result<ComplexStructure> {
    if y.component() != crate::siegel::HalfSpace::Upper {
        return Err(Error::domain("J matrix construction needs the upper component"));
    }
    let d = y.dim();
    let x = y.real();
    let xi = y.imag();
    let id = QMat::identity(d);
    let z = QMat::zero(d, d);
    // J [X Ξ; I 0] = [-Ξ X; 0 I].
    let lhs = QMat::block2x2(&x, &xi, &id, &z)?;
    let rhs = QMat::block2x2(&xi.neg_ref(), &x, &z, &id)?;
    let j = rhs.mul_ref(&lhs.inverse()?)?;
    ComplexStructure::new(j)
}

/// The Lagrangian frame (Y; I) of a point of 𝔥_d⁺.
pub fn lagrangian_from_point(y: &SiegelPoint) -> Result<LagrangianFrame> {
    let d = y.dim();
    let id = GMat::identity(d);
    let b = y.matrix().vstack(&id)?;
    LagrangianFrame::new(b)
}

/// The i-eigenspace frame of a complex structure: a basis of
/// ker(J_ℂ − i·I) ⊂ ℂ^{2d}.
pub fn lagrangian_from_structure(j: &ComplexStructure) -> Result<LagrangianFrame> {
    let n = 2 * j.dim();
    let jc = qmat_to_gmat(j.matrix());
    let shifted = jc.sub_ref(&GMat::identity(n).scale(&GaussRat::i()))?;
    let ker = kernel(&shifted);
    if ker.cols() != j.dim() {
        return Err(Error::internal("i-eigenspace has wrong dimension"));
    }
    LagrangianFrame::new(ker)
}

/// Recovers the Siegel point from a frame: column-normalizes so the bottom
/// block is the identity and reads off the top block.
pub fn point_from_lagrangian(frame: &LagrangianFrame) -> Result<SiegelPoint> {
    let d = frame.dim();
    let rows_top: Vec<usize> = (0..d).collect();
    let rows_bot: Vec<usize> = (d..2 * d).collect();
    let cols: Vec<usize> = (0..d).collect();
    let top = frame.matrix().submatrix(&rows_top, &cols);
    let bot = frame.matrix().submatrix(&rows_bot, &cols);
    let bot_inv = bot
        .inverse()
        .map_err(|_| Error::degenerate("frame cannot be normalized: bottom block singular"))?;
    let y = top.mul_ref(&bot_inv)?;
    SiegelPoint::upper(y)
}

/// Checks Sp-equivariance of Y ↦ span(Y; I): the column span of g·B(Y)
/// equals the column span of B(g·Y), compared exactly by ranks of the
/// concatenation.
pub fn equivariance_check(g: &SymplecticSimilitude, y: &SiegelPoint) -> Result<bool> {
    if !g.is_symplectic() {
        return Err(Error::precondition("equivariance check needs multiplier 1"));
    }
    let b = lagrangian_from_point(y)?;
    let moved = lagrangian_from_point(&mobius_act(g, y)?)?;
    let gb = qmat_to_gmat(g.matrix()).mul_ref(b.matrix())?;
    let joint = gb.hstack(moved.matrix())?;
    Ok(rank(&joint) == y.dim())
}

/// Which reductive group a datum spec describes. The unitary family is
/// realified: ℂ^n becomes ℝ^{2n} with coordinates (Re x, Im x).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupTag {
    GSp { d: usize },
    GU { p: usize, q: usize },
}

/// Sampled morphism data for a candidate Shimura datum: the values of h at
/// the exact sample points 1, i, z₀ = (3+4i)/5 on the unit circle, plus the
/// real sample 2 used to probe the central-weight condition.
#[derive(Clone, PartialEq, Debug)]
pub struct ShimuraDatumSpec {
    tag: GroupTag,
    h_one: QMat,
    h_i: QMat,
    h_z0: QMat,
    h_two: QMat,
}

/// Verdicts for the three finitely-checkable axioms of a Shimura datum,
/// plus the eigenvalue multiplicities of the adjoint action of h(z₀)
/// (eigenvalues z₀², 1, z̄₀² in that order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DatumReport {
    pub weight_central: bool,
    pub hodge_types: bool,
    pub hodge_multiplicities: (usize, usize, usize),
    pub cartan: bool,
}

impl DatumReport {
    pub fn all_pass(&self) -> bool {
        self.weight_central && self.hodge_types && self.cartan
    }
}

impl ShimuraDatumSpec {
    /// The symplectic-similitude datum: h(a + ib) = [[aI, -bI], [bI, aI]].
    pub fn gsp(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("d must be positive"));
        }
        let h = |a: Rat, b: Rat| -> QMat {
            let id = QMat::identity(d);
            let z = id.scale(&a);
            let w = id.scale(&b);
            QMat::block2x2(&z, &w.neg_ref(), &w, &z).expect("blocks agree")
        };
        Self::with_values(
            GroupTag::GSp { d },
            h(rat_int(1), rat_int(0)),
            h(rat_int(0), rat_int(1)),
            h(rat(3, 5), rat(4, 5)),
            h(rat_int(2), rat_int(0)),
        )
    }

    /// The unitary-similitude datum: h(z) = diag(z·I_p, z̄·I_q), realified.
    pub fn gu(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::domain("p + q must be positive"));
        }
        let n = p + q;
        let h = |a: Rat, b: Rat| -> QMat {
            // complex diag(z I_p, conj(z) I_q) = A + iB with A = a·I and
            // B = diag(b·I_p, -b·I_q); realified [[A, -B], [B, A]].
            let amat = QMat::identity(n).scale(&a);
            let bmat = QMat::from_fn(n, n, |r, c| {
                if r != c {
                    Rat::zero()
                } else if r < p {
                    b.clone()
                } else {
                    -b.clone()
                }
            });
            QMat::block2x2(&amat, &bmat.neg_ref(), &bmat, &amat).expect("blocks agree")
        };
        Self::with_values(
            GroupTag::GU { p, q },
            h(rat_int(1), rat_int(0)),
            h(rat_int(0), rat_int(1)),
            h(rat(3, 5), rat(4, 5)),
            h(rat_int(2), rat_int(0)),
        )
    }

    /// Assembles a spec from explicit sample values, checking the
    /// multiplicative sample identities.
    pub fn with_values(
        tag: GroupTag,
        h_one: QMat,
        h_i: QMat,
        h_z0: QMat,
        h_two: QMat,
    ) -> Result<Self> {
        let size = h_one.rows();
        for m in [&h_one, &h_i, &h_z0, &h_two] {
            if !m.is_square() || m.rows() != size {
                return Err(Error::shape("sample matrices must be square of equal size"));
            }
        }
        if !h_one.is_identity() {
            return Err(Error::domain("h(1) must be the identity"));
        }
        let h_i2 = h_i.mul_ref(&h_i)?;
        if h_i2.mul_ref(&h_i2)? != h_one {
            return Err(Error::domain("h(i)^4 != h(1)"));
        }
        Ok(ShimuraDatumSpec {
            tag,
            h_one,
            h_i,
            h_z0,
            h_two,
        })
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn h_i(&self) -> &QMat {
        &self.h_i
    }

    pub fn h_z0(&self) -> &QMat {
        &self.h_z0
    }

    /// Basis of the rational Lie algebra of the tagged group, as matrices
    /// (the similitude-direction scalar is determined by each matrix and
    /// not stored). Computed as the kernel of the linearized defining
    /// equations at the identity.
    pub fn lie_algebra_basis(&self) -> Result<Vec<QMat>> {
        match self.tag {
            GroupTag::GSp { d } => lie_algebra_gsp(d),
            GroupTag::GU { p, q } => lie_algebra_gu(p, q),
        }
    }
}

/// gsp_{2d}: matrices X with XᵀM + MX = t·M for some scalar t.
fn lie_algebra_gsp(d: usize) -> Result<Vec<QMat>> {
    let n = 2 * d;
    let m: QMat = symplectic_gram(d)?;
    let unknowns = n * n + 1;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // Equation entries: (XᵀM + MX - tM)[a][b] = 0.
    for a in 0..n {
        for b in 0..n {
            let mut row = vec![Rat::zero(); unknowns];
            for k in 0..n {
                // (XᵀM)[a][b] = Σ_k X[k][a] M[k][b]
                row[k * n + a] = row[k * n + a].clone() + m.at(k, b).clone();
                // (MX)[a][b] = Σ_k M[a][k] X[k][b]
                row[k * n + b] = row[k * n + b].clone() + m.at(a, k).clone();
            }
            row[n * n] = -m.at(a, b).clone();
            rows.push(row);
        }
    }
    kernel_to_matrices(rows, n)
}

/// gu(p, q) realified: X commuting with the complex-structure matrix and
/// with XᵀS + SX = t·S for the realified Hermitian Gram S.
fn lie_algebra_gu(p: usize, q: usize) -> Result<Vec<QMat>> {
    let n = p + q;
    let size = 2 * n;
    let jstd = complex_mult_matrix(n);
    let s = realified_signature_gram(p, q);
    let unknowns = size * size + 1;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // X Jstd - Jstd X = 0.
    for a in 0..size {
        for b in 0..size {
            let mut row = vec![Rat::zero(); unknowns];
            for k in 0..size {
                row[a * size + k] = row[a * size + k].clone() + jstd.at(k, b).clone();
                row[k * size + b] = row[k * size + b].clone() - jstd.at(a, k).clone();
            }
            rows.push(row);
        }
    }
    // XᵀS + SX - tS = 0.
    for a in 0..size {
        for b in 0..size {
            let mut row = vec![Rat::zero(); unknowns];
            for k in 0..size {
                row[k * size + a] = row[k * size + a].clone() + s.at(k, b).clone();
                row[k * size + b] = row[k * size + b].clone() + s.at(a, k).clone();
            }
            row[size * size] = -s.at(a, b).clone();
            rows.push(row);
        }
    }
    kernel_to_matrices(rows, size)
}

/// Multiplication by i on the realified ℂ^n: [[0, -I], [I, 0]].
pub fn complex_mult_matrix(n: usize) -> QMat {
    let id = QMat::identity(n);
    let z = QMat::zero(n, n);
    QMat::block2x2(&z, &id.neg_ref(), &id, &z).expect("blocks agree")
}

/// Realified Gram of Re(x* J_sig y): diag(J_sig, J_sig) with
/// J_sig = diag(I_p, -I_q).
pub fn realified_signature_gram(p: usize, q: usize) -> QMat {
    let n = p + q;
    QMat::from_fn(2 * n, 2 * n, |r, c| {
        if r != c {
            Rat::zero()
        } else if r % n < p {
            Rat::one()
        } else {
            -Rat::one()
        }
    })
}

fn kernel_to_matrices(rows: Vec<Vec<Rat>>, size: usize) -> Result<Vec<QMat>> {
    let system = QMat::from_rows(rows)?;
    let ker = kernel(&system);
    let mut basis = Vec::new();
    for c in 0..ker.cols() {
        let v = ker.col(c);
        let m = QMat::from_vec(size, size, v[..size * size].to_vec())?;
        if m.entries().all(|e| e.is_zero()) {
            continue;
        }
        basis.push(m);
    }
    Ok(basis)
}

/// Runs the three finitely-checkable Shimura-datum conditions.
///
/// - weight: h at the real sample 2 must centralize the Lie algebra (and,
///   for the symplectic tag, literally equal 2·I).
/// - types: the adjoint action of h(z₀) on the complexified Lie algebra
///   must be annihilated by (T − z₀²)(T − 1)(T − z̄₀²), with eigenspace
///   dimensions summing to the full dimension.
/// - cartan: the Killing form of the derived algebra must be negative
///   definite on the real form fixed by X ↦ Ad(h(i))·conj(X).
pub fn check_shimura_conditions(spec: &ShimuraDatumSpec) -> Result<DatumReport> {
    let basis = spec.lie_algebra_basis()?;
    let dim = basis.len();
    if dim == 0 {
        return Err(Error::internal("empty Lie algebra"));
    }
    let size = basis[0].rows();

    // --- weight condition at the real sample.
    let mut weight_central = basis
        .iter()
        .map(|x| {
            Ok(spec.h_two.mul_ref(x)? == x.mul_ref(&spec.h_two)?)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    if let GroupTag::GSp { .. } = spec.tag {
        weight_central =
            weight_central && spec.h_two == QMat::identity(size).scale(&rat_int(2));
    }

    // --- Hodge types via the adjoint action of h(z0).
    let h = &spec.h_z0;
    let hinv = h.inverse()?;
    let basis_cols = basis_matrix(&basis, size);
    let mut ad_cols = Vec::with_capacity(dim);
    for x in &basis {
        let moved = h.mul_ref(x)?.mul_ref(&hinv)?;
        ad_cols.push(coords_in_basis(&basis_cols, &moved)?);
    }
    let ad = QMat::from_fn(dim, dim, |r, c| ad_cols[c][r].clone());
    let adg = qmat_to_gmat(&ad);
    let z0 = GaussRat::new(rat(3, 5), rat(4, 5));
    let mu_plus = z0.clone() * z0.clone();
    let mu_minus = mu_plus.conj();
    let idg = GMat::identity(dim);
    let e_plus = adg.sub_ref(&idg.scale(&mu_plus))?;
    let e_zero = adg.sub_ref(&idg)?;
    let e_minus = adg.sub_ref(&idg.scale(&mu_minus))?;
    let annihilated = e_plus
        .mul_ref(&e_zero)?
        .mul_ref(&e_minus)?
        .entries()
        .all(|e| e.is_zero());
    let m_plus = kernel(&e_plus).cols();
    let m_zero = kernel(&e_zero).cols();
    let m_minus = kernel(&e_minus).cols();
    let hodge_types = annihilated && m_plus + m_zero + m_minus == dim;

    // --- Cartan involution on the derived algebra.
    let cartan = cartan_condition(&basis, &spec.h_i)?;

    Ok(DatumReport {
        weight_central,
        hodge_types,
        hodge_multiplicities: (m_plus, m_zero, m_minus),
        cartan,
    })
}

fn basis_matrix(basis: &[QMat], size: usize) -> QMat {
    QMat::from_fn(size * size, basis.len(), |r, c| basis[c].vectorize()[r].clone())
}

fn coords_in_basis(basis_cols: &QMat, m: &QMat) -> Result<Vec<Rat>> {
    let target = QMat::from_vec(basis_cols.rows(), 1, m.vectorize())?;
    let sol = solve(basis_cols, &target)?;
    Ok(sol.col(0))
}

fn gbasis_matrix(basis: &[GMat], size: usize) -> GMat {
    GMat::from_fn(size * size, basis.len(), |r, c| basis[c].vectorize()[r].clone())
}

fn gcoords_in_basis(basis_cols: &GMat, m: &GMat) -> Result<Vec<GaussRat>> {
    let target = GMat::from_vec(basis_cols.rows(), 1, m.vectorize())?;
    let sol = solve(basis_cols, &target)?;
    Ok(sol.col(0))
}

fn bracket(a: &GMat, b: &GMat) -> Result<GMat> {
    a.mul_ref(b)?.sub_ref(&b.mul_ref(a)?)
}

/// Killing-form negativity on the θ-fixed real form of the derived algebra,
/// θ(X) = Ad(h(i))·conj(X).
fn cartan_condition(basis: &[QMat], h_i: &QMat) -> Result<bool> {
    let size = basis[0].rows();
    let complex_basis: Vec<GMat> = basis.iter().map(qmat_to_gmat).collect();

    // Derived algebra: row-reduce the span of all brackets.
    let mut bracket_rows: Vec<Vec<GaussRat>> = Vec::new();
    for (i, a) in complex_basis.iter().enumerate() {
        for b in complex_basis.iter().skip(i + 1) {
            bracket_rows.push(bracket(a, b)?.vectorize());
        }
    }
    let bracket_mat = GMat::from_rows(bracket_rows)?;
    let (reduced, pivots, _) = rref(&bracket_mat);
    let derived: Vec<GMat> = (0..pivots.len())
        .map(|r| GMat::from_vec(size, size, reduced.row(r)).expect("shape"))
        .collect();
    let k = derived.len();
    if k == 0 {
        // Derived algebra trivial: the Cartan condition is vacuous.
        return Ok(true);
    }
    let derived_cols = gbasis_matrix(&derived, size);

    // θ on the realification of the derived algebra: basis W_1..W_k, iW_1..iW_k.
    let h = qmat_to_gmat(h_i);
    let hinv = h.inverse()?;
    let mut theta = QMat::zero(2 * k, 2 * k);
    for (j, w) in derived.iter().enumerate() {
        let img = h.mul_ref(&gmat_conj(w))?.mul_ref(&hinv)?;
        let coords = gcoords_in_basis(&derived_cols, &img)?;
        for (l, c) in coords.iter().enumerate() {
            // θ(W_j) contributes re→W_l, im→iW_l.
            theta.set(l, j, c.re().clone());
            theta.set(k + l, j, c.im().clone());
            // θ(iW_j) = -i θ(W_j): coordinates -i(a+bi) = b - ai.
            theta.set(l, k + j, c.im().clone());
            theta.set(k + l, k + j, -c.re().clone());
        }
    }
    let fixed = kernel(&theta.sub_ref(&QMat::identity(2 * k))?);
    if fixed.cols() != k {
        return Err(Error::internal("theta-fixed real form has wrong dimension"));
    }

    // ad matrices of the fixed-form basis with respect to the derived basis.
    let fixed_elems: Vec<GMat> = (0..fixed.cols())
        .map(|c| {
            let v = fixed.col(c);
            let mut acc = GMat::zero(size, size);
            for l in 0..k {
                let coeff = GaussRat::new(v[l].clone(), v[k + l].clone());
                acc = acc.add_ref(&derived[l].scale(&coeff)).expect("shape");
            }
            acc
        })
        .collect();
    let mut ads = Vec::with_capacity(k);
    for x in &fixed_elems {
        let mut cols = Vec::with_capacity(k);
        for w in &derived {
            cols.push(gcoords_in_basis(&derived_cols, &bracket(x, w)?)?);
        }
        ads.push(GMat::from_fn(k, k, |r, c| cols[c][r].clone()));
    }
    let mut gram = QMat::zero(k, k);
    for a in 0..k {
        for b in a..k {
            let t = ads[a].mul_ref(&ads[b])?.trace()?;
            let t = t.to_rat().map_err(|_| {
                Error::internal("Killing form value not real on the fixed form")
            })?;
            gram.set(a, b, t.clone());
            gram.set(b, a, t);
        }
    }
    is_negative_definite(&gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_siegel_point, random_sp, SplitMix64};
    use crate::scalar::rat_int;
    use crate::ZMat;
    use num_traits::ToPrimitive;

    fn qmat(rows: Vec<Vec<i64>>) -> QMat {
        QMat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn base_point_structure() {
        let y = SiegelPoint::base_point(2);
        let j = jmatrix_from_point(&y).unwrap();
        let expected = qmat(vec![
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ]);
        assert_eq!(j.matrix(), &expected);
    }

    #[test]
    fn two_i_structure() {
        let y = SiegelPoint::new(GMat::from_fn(1, 1, |_, _| GaussRat::from_ints(0, 2))).unwrap();
        let j = jmatrix_from_point(&y).unwrap();
        assert_eq!(j.matrix().at(0, 1), &rat_int(-2));
        assert_eq!(j.matrix().at(1, 0), &rat(1, 2));
    }

    #[test]
    fn structure_invariants_random() {
        let mut rng = SplitMix64::new(0x10d9e);
        for d in 1..=3 {
            for _ in 0..8 {
                let y = random_siegel_point(&mut rng, d);
                // Constructor re-checks J² = -I, JᵀMJ = M and positivity.
                let j = jmatrix_from_point(&y).unwrap();
                assert_eq!(j.dim(), d);
            }
        }
    }

    #[test]
    fn frame_positive_at_base_point() {
        let y = SiegelPoint::base_point(2);
        let f = lagrangian_from_point(&y).unwrap();
        let h = f.positivity_matrix();
        assert_eq!(h, GMat::identity(2).scale(&GaussRat::from_ints(2, 0)));
    }

    #[test]
    fn non_symmetric_frame_fails_isotropy() {
        // (Y; I) with Y = [[i, 1], [0, i]] is not isotropic.
        let y = GMat::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) | (1, 1) => GaussRat::i(),
            (0, 1) => GaussRat::one(),
            _ => GaussRat::zero(),
        });
        let b = y.vstack(&GMat::identity(2)).unwrap();
        match LagrangianFrame::new(b) {
            Err(Error::Domain(msg)) => assert!(msg.contains("isotropic")),
            other => panic!("expected isotropy failure, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_point_frame_point() {
        let mut rng = SplitMix64::new(0xf4a3e);
        for d in 1..=3 {
            for _ in 0..6 {
                let y = random_siegel_point(&mut rng, d);
                let f = lagrangian_from_point(&y).unwrap();
                assert_eq!(point_from_lagrangian(&f).unwrap(), y);
                // Composite through the complex structure.
                let j = jmatrix_from_point(&y).unwrap();
                let f2 = lagrangian_from_structure(&j).unwrap();
                assert_eq!(point_from_lagrangian(&f2).unwrap(), y);
            }
        }
    }

    #[test]
    fn equivariance_examples() {
        let y = SiegelPoint::new(GMat::from_fn(1, 1, |_, _| GaussRat::from_ints(0, 2))).unwrap();
        let id = SymplecticSimilitude::identity(1);
        assert!(equivariance_check(&id, &y).unwrap());
        let s = SymplecticSimilitude::new(qmat(vec![vec![0, 1], vec![-1, 0]])).unwrap();
        assert!(equivariance_check(&s, &y).unwrap());
        let mut rng = SplitMix64::new(0xe9);
        for _ in 0..25 {
            let g = random_sp(&mut rng, 2, 3);
            let y = random_siegel_point(&mut rng, 2);
            assert!(equivariance_check(&g, &y).unwrap());
        }
    }

    #[test]
    fn gsp_datum_passes_all_conditions() {
        let spec = ShimuraDatumSpec::gsp(1).unwrap();
        let report = check_shimura_conditions(&spec).unwrap();
        assert!(report.all_pass(), "{report:?}");
        // dim 𝔤^{±} = d(d+1)/2 = 1 each.
        assert_eq!(report.hodge_multiplicities.0, 1);
        assert_eq!(report.hodge_multiplicities.2, 1);
    }

    #[test]
    fn gu11_datum_passes_all_conditions() {
        let spec = ShimuraDatumSpec::gu(1, 1).unwrap();
        let report = check_shimura_conditions(&spec).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn larger_families_pass_with_expected_multiplicities() {
        // gsp_4: dim 11, off-diagonal pieces of dimension d(d+1)/2 = 3.
        let gsp2 = ShimuraDatumSpec::gsp(2).unwrap();
        let report = check_shimura_conditions(&gsp2).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.hodge_multiplicities, (3, 5, 3));

        // gu(2,1): dim 10, off-diagonal pieces of dimension p·q = 2.
        let gu21 = ShimuraDatumSpec::gu(2, 1).unwrap();
        let report = check_shimura_conditions(&gu21).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.hodge_multiplicities, (2, 6, 2));
    }

    #[test]
    fn cartan_violation_detected() {
        // Replace h on the (1,1)-unitary datum by the central z ↦ z·I:
        // conjugation by h(i) is then trivial, the fixed real form is the
        // noncompact su(1,1), and the Killing form is indefinite there.
        let n = 2usize;
        let central = |a: Rat, b: Rat| -> QMat {
            let am = QMat::identity(n).scale(&a);
            let bm = QMat::identity(n).scale(&b);
            QMat::block2x2(&am, &bm.neg_ref(), &bm, &am).unwrap()
        };
        let spec = ShimuraDatumSpec::with_values(
            GroupTag::GU { p: 1, q: 1 },
            central(rat_int(1), rat_int(0)),
            central(rat_int(0), rat_int(1)),
            central(rat(3, 5), rat(4, 5)),
            central(rat_int(2), rat_int(0)),
        )
        .unwrap();
        let report = check_shimura_conditions(&spec).unwrap();
        assert!(report.weight_central);
        assert!(!report.cartan, "{report:?}");
    }

    #[test]
    fn hodge_type_violation_detected() {
        // Keep the symplectic h(1), h(i), h(2) but sample a split torus
        // element at z0: the adjoint eigenvalues 4, 1, 1/4 are not among
        // z0², 1, conj(z0)².
        let spec = ShimuraDatumSpec::with_values(
            GroupTag::GSp { d: 1 },
            QMat::identity(2),
            qmat(vec![vec![0, -1], vec![1, 0]]),
            QMat::from_rows(vec![
                vec![rat(2, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 2)],
            ])
            .unwrap(),
            QMat::identity(2).scale(&rat_int(2)),
        )
        .unwrap();
        let report = check_shimura_conditions(&spec).unwrap();
        assert!(!report.hodge_types, "{report:?}");
        assert!(report.weight_central && report.cartan);
    }

    #[test]
    fn central_weight_violation_detected() {
        // z ↦ diag(z·z̄, 1): samples h(1) = h(i) = h(z0) = I, h(2) = diag(4, 1).
        let spec = ShimuraDatumSpec::with_values(
            GroupTag::GSp { d: 1 },
            QMat::identity(2),
            QMat::identity(2),
            QMat::identity(2),
            qmat(vec![vec![4, 0], vec![0, 1]]),
        )
        .unwrap();
        let report = check_shimura_conditions(&spec).unwrap();
        assert!(!report.weight_central);
    }

    #[test]
    fn lie_algebra_dimensions() {
        let gsp = ShimuraDatumSpec::gsp(2).unwrap();
        // dim gsp_4 = 2d² + d + 1 = 11.
        assert_eq!(gsp.lie_algebra_basis().unwrap().len(), 11);
        let gu = ShimuraDatumSpec::gu(2, 1).unwrap();
        // dim gu(p, q) = n² + 1 = 10.
        assert_eq!(gu.lie_algebra_basis().unwrap().len(), 10);
        let _ = ZMat::identity(1).at(0, 0).to_i64();
    }
}
