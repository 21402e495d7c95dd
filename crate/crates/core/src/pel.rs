//! PEL data as pure integer linear algebra: an order given by structure
//! constants with a positive involution, a symplectic module with algebra
//! action, and the pair (h(1), h(i)); validation of the axioms, good-prime
//! tests, reflex-field determination by traces, and the determinant
//! polynomial on V^{-1,0}.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, is_positive_definite, kernel, solve};
use crate::matrix::{qmat_to_gmat, zmat_to_qmat};
use crate::scalar::GaussRat;
use crate::{GMat, Int, QMat, Rat, ZMat};

/// An order in a finite-dimensional ℚ-algebra, carried as a ℤ-basis
/// α₁, …, α_t with integer structure constants αᵢαⱼ = Σ_k c_{ijk} α_k and
/// an involution given by its matrix on the basis. α₁ must be the unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAlgebra {
    rank: usize,
    // structure[i][j] = coefficient vector of α_i · α_j.
    structure: Vec<Vec<Vec<Int>>>,
    // involution[k][j]: α_j^* = Σ_k involution[k][j] α_k.
    involution: ZMat,
}

impl FiniteAlgebra {
    pub fn new(structure: Vec<Vec<Vec<Int>>>, involution: ZMat) -> Result<Self> {
        let t = structure.len();
        if t == 0 {
            return Err(Error::domain("algebra must have positive rank"));
        }
        if structure.iter().any(|row| row.len() != t)
            || structure
                .iter()
                .any(|row| row.iter().any(|v| v.len() != t))
        {
            return Err(Error::shape("structure constants must be t x t x t"));
        }
        if involution.rows() != t || involution.cols() != t {
            return Err(Error::shape("involution matrix must be t x t"));
        }
        let alg = FiniteAlgebra {
            rank: t,
            structure,
            involution,
        };
        alg.check_unital()?;
        alg.check_associative()?;
        alg.check_involution()?;
        Ok(alg)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn involution_matrix(&self) -> &ZMat {
        &self.involution
    }

    /// Product of two coefficient vectors.
    pub fn mul_vec(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let t = self.rank;
        let mut out = vec![Int::zero(); t];
        for i in 0..t {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..t {
                if b[j].is_zero() {
                    continue;
                }
                for k in 0..t {
                    out[k] += a[i].clone() * b[j].clone() * self.structure[i][j][k].clone();
                }
            }
        }
        out
    }

    pub fn star_vec(&self, a: &[Int]) -> Vec<Int> {
        let t = self.rank;
        let mut out = vec![Int::zero(); t];
        for j in 0..t {
            if a[j].is_zero() {
                continue;
            }
            for k in 0..t {
                out[k] += self.involution.at(k, j).clone() * a[j].clone();
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.rank];
        v[i] = Int::one();
        v
    }

    fn check_unital(&self) -> Result<()> {
        for i in 0..self.rank {
            let e = self.basis_vec(0);
            let a = self.basis_vec(i);
            if self.mul_vec(&e, &a) != a || self.mul_vec(&a, &e) != a {
                return Err(Error::domain("basis element 1 is not a two-sided unit"));
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let t = self.rank;
        for i in 0..t {
            for j in 0..t {
                let ij = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..t {
                    let jk = self.mul_vec(&self.basis_vec(j), &self.basis_vec(k));
                    let left = self.mul_vec(&ij, &self.basis_vec(k));
                    let right = self.mul_vec(&self.basis_vec(i), &jk);
                    if left != right {
                        return Err(Error::domain("structure constants are not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_involution(&self) -> Result<()> {
        let t = self.rank;
        // Order 2.
        if self.involution.mul_ref(&self.involution)? != ZMat::identity(t) {
            return Err(Error::domain("involution is not of order 2"));
        }
        // Anti-automorphism: (ab)^* = b^* a^*.
        for i in 0..t {
            for j in 0..t {
                let ab = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                let lhs = self.star_vec(&ab);
                let rhs = self.mul_vec(
                    &self.star_vec(&self.basis_vec(j)),
                    &self.star_vec(&self.basis_vec(i)),
                );
                if lhs != rhs {
                    return Err(Error::domain("involution is not an anti-automorphism"));
                }
            }
        }
        Ok(())
    }

    /// Matrix of left multiplication by the coefficient vector `a` in the
    /// regular representation.
    pub fn left_mult_matrix(&self, a: &[Int]) -> ZMat {
        let t = self.rank;
        ZMat::from_fn(t, t, |k, j| {
            let prod = self.mul_vec(a, &self.basis_vec(j));
            prod[k].clone()
        })
    }

    /// Trace of x·y* in the regular representation; the Gram matrix of this
    /// form on the basis decides positivity of the involution.
    pub fn trace_form_star(&self) -> Result<QMat> {
        let t = self.rank;
        let mut gram = QMat::zero(t, t);
        for i in 0..t {
            for j in 0..t {
                let prod = self.mul_vec(&self.basis_vec(i), &self.star_vec(&self.basis_vec(j)));
                let tr = self.left_mult_matrix(&prod).trace()?;
                gram.set(i, j, Rat::from_integer(tr));
            }
        }
        Ok(gram)
    }

    /// Discriminant of the order: det [Tr(αᵢαⱼ)].
    pub fn discriminant(&self) -> Result<Int> {
        let t = self.rank;
        let mut gram = ZMat::zero(t, t);
        for i in 0..t {
            for j in 0..t {
                let prod = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                gram.set(i, j, self.left_mult_matrix(&prod).trace()?);
            }
        }
        det_bareiss(&gram)
    }
}

/// A PEL datum: algebra action on a rank-2N lattice, an alternating
/// pairing, and the matrices h(1), h(i).
#[derive(Clone, PartialEq, Debug)]
pub struct PelDatum {
    algebra: FiniteAlgebra,
    // action[j] = matrix of α_j on Λ = Z^{2N}.
    action: Vec<ZMat>,
    pairing: ZMat,
    h_one: QMat,
    h_i: QMat,
    type_d: bool,
}

/// Per-axiom verdicts of [`validate_pel`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PelReport {
    /// (1)+(3): the action matrices represent the algebra.
    pub action_is_representation: bool,
    /// (2): Tr(x·x*) > 0, i.e. the star trace form is positive definite.
    pub involution_positive: bool,
    /// (4): ⟨bx, y⟩ = ⟨x, b*y⟩ on the basis.
    pub pairing_compatible: bool,
    /// pairing is alternating and nondegenerate.
    pub pairing_alternating: bool,
    /// h(1) = id, h(i)² = −id, h(i) commutes with the algebra action.
    pub h_is_complex_structure: bool,
    /// (5)(a): ⟨h(z)x, y⟩ = ⟨x, h(z̄)y⟩ at z ∈ {1, i}.
    pub h_adjoint_condition: bool,
    /// (5)(b): ⟨·, h(i)·⟩ positive definite.
    pub h_positivity: bool,
}

impl PelReport {
    pub fn all_pass(&self) -> bool {
        self.action_is_representation
            && self.involution_positive
            && self.pairing_compatible
            && self.pairing_alternating
            && self.h_is_complex_structure
            && self.h_adjoint_condition
            && self.h_positivity
    }
}

impl PelDatum {
    pub fn new(
        algebra: FiniteAlgebra,
        action: Vec<ZMat>,
        pairing: ZMat,
        h_i: QMat,
        type_d: bool,
    ) -> Result<Self> {
        let t = algebra.rank();
        if action.len() != t {
            return Err(Error::shape("need one action matrix per basis element"));
        }
        let size = pairing.rows();
        if size == 0 || size % 2 != 0 || !pairing.is_square() {
            return Err(Error::shape("pairing must be square of positive even size"));
        }
        for a in &action {
            if a.rows() != size || a.cols() != size {
                return Err(Error::shape("action matrices must match the lattice rank"));
            }
        }
        if h_i.rows() != size || h_i.cols() != size {
            return Err(Error::shape("h(i) must match the lattice rank"));
        }
        Ok(PelDatum {
            algebra,
            action,
            pairing,
            h_one: QMat::identity(size),
            h_i,
            type_d,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn action(&self) -> &[ZMat] {
        &self.action
    }

    pub fn pairing(&self) -> &ZMat {
        &self.pairing
    }

    pub fn h_i(&self) -> &QMat {
        &self.h_i
    }

    pub fn has_type_d_factor(&self) -> bool {
        self.type_d
    }

    pub fn lattice_rank(&self) -> usize {
        self.pairing.rows()
    }

    fn action_of_vec(&self, a: &[Int]) -> Result<QMat> {
        let size = self.lattice_rank();
        let mut acc = QMat::zero(size, size);
        for (j, coeff) in a.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            acc = acc.add_ref(
                &zmat_to_qmat(&self.action[j]).scale(&Rat::from_integer(coeff.clone())),
            )?;
        }
        Ok(acc)
    }
}

/// Runs every finitely-checkable axiom and reports per-axiom verdicts.
pub fn validate_pel(d: &PelDatum) -> Result<PelReport> {
    let t = d.algebra.rank();
    let size = d.lattice_rank();

    // Action is a unital representation.
    let mut action_ok = d.action[0] == ZMat::identity(size);
    'rep: for i in 0..t {
        for j in 0..t {
            let prod_alg = d
                .algebra
                .mul_vec(&vec_basis(t, i), &vec_basis(t, j));
            let lhs = d.action[i].mul_ref(&d.action[j])?;
            let rhs = d.action_of_vec(&prod_alg)?;
            if zmat_to_qmat(&lhs) != rhs {
                action_ok = false;
                break 'rep;
            }
        }
    }

    let involution_positive = is_positive_definite(&d.algebra.trace_form_star()?)?;

    let pairing_alternating =
        d.pairing.is_antisymmetric() && !det_bareiss(&d.pairing)?.is_zero();

    // (4): action(b)ᵀ · P = P · action(b*).
    let mut pairing_compatible = true;
    for j in 0..t {
        let star = d.algebra.star_vec(&vec_basis(t, j));
        let lhs = zmat_to_qmat(&d.action[j].transpose().mul_ref(&d.pairing)?);
        let rhs = zmat_to_qmat(&d.pairing).mul_ref(&d.action_of_vec(&star)?)?;
        if lhs != rhs {
            pairing_compatible = false;
            break;
        }
    }

    // h is a complex structure commuting with the algebra.
    let minus_id = QMat::identity(size).neg_ref();
    let mut h_ok = d.h_one.is_identity() && d.h_i.mul_ref(&d.h_i)? == minus_id;
    if h_ok {
        for a in &d.action {
            let aq = zmat_to_qmat(a);
            if aq.mul_ref(&d.h_i)? != d.h_i.mul_ref(&aq)? {
                h_ok = false;
                break;
            }
        }
    }

    // (5)(a) at z = i: h(i)ᵀ P = P h(-i) = -P h(i).
    let pq = zmat_to_qmat(&d.pairing);
    let h_adjoint = d.h_i.transpose().mul_ref(&pq)? == pq.mul_ref(&d.h_i)?.neg_ref();

    // (5)(b): ⟨·, h(i)·⟩ = P·h(i) symmetric positive definite.
    let form = pq.mul_ref(&d.h_i)?;
    let h_positivity = form.is_symmetric() && is_positive_definite(&form)?;

    Ok(PelReport {
        action_is_representation: action_ok,
        involution_positive,
        pairing_compatible,
        pairing_alternating,
        h_is_complex_structure: h_ok,
        h_adjoint_condition: h_adjoint,
        h_positivity,
    })
}

fn vec_basis(t: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::zero(); t];
    v[i] = Int::one();
    v
}

/// Reasons a prime can fail to be good.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoodPrimeReport {
    pub good: bool,
    pub divides_discriminant: bool,
    pub divides_pairing_index: bool,
    pub two_with_type_d: bool,
}

/// A prime is good when it does not divide the discriminant of the order,
/// does not divide [Λ^∨ : Λ] = |det pairing|, and is not 2 in the presence
/// of a type-D factor.
pub fn good_prime(d: &PelDatum, p: i64) -> Result<GoodPrimeReport> {
    if p < 2 {
        return Err(Error::domain("p must be a prime"));
    }
    let pp = Int::from(p);
    let disc = d.algebra.discriminant()?;
    let divides_discriminant = (disc.clone() % pp.clone()).is_zero();
    let index = det_bareiss(&d.pairing)?.abs();
    let divides_pairing_index = (index % pp).is_zero();
    let two_with_type_d = p == 2 && d.has_type_d_factor();
    Ok(GoodPrimeReport {
        good: !divides_discriminant && !divides_pairing_index && !two_with_type_d,
        divides_discriminant,
        divides_pairing_index,
        two_with_type_d,
    })
}

/// Field of definition of V^{-1,0} as reported by traces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReflexVerdict {
    Rational,
    /// The field ℚ(i), discriminant −4 (the exact-scalar setting forces
    /// non-rational traces into ℚ(i)).
    ImaginaryQuadratic { discriminant: i64 },
}

/// Traces of the basis actions on V^{-1,0} (the i-eigenspace of h(i)) and
/// the resulting field verdict.
pub fn reflex_traces(d: &PelDatum) -> Result<(Vec<GaussRat>, ReflexVerdict)> {
    let eigen = minus_one_zero_eigenspace(d)?;
    let cols = eigen.cols();
    if cols * 2 != d.lattice_rank() {
        return Err(Error::internal("i-eigenspace of h(i) has wrong dimension"));
    }
    let mut traces = Vec::new();
    for a in &d.action {
        let restricted = restrict_to_span(&eigen, &qmat_to_gmat(&zmat_to_qmat(a)))?;
        traces.push(restricted.trace()?);
    }
    let verdict = if traces.iter().all(|t| t.is_real()) {
        ReflexVerdict::Rational
    } else {
        ReflexVerdict::ImaginaryQuadratic { discriminant: -4 }
    };
    Ok((traces, verdict))
}

/// Basis of V^{-1,0} = ker(h(i) − i) over ℚ(i), as columns.
fn minus_one_zero_eigenspace(d: &PelDatum) -> Result<GMat> {
    let size = d.lattice_rank();
    let hg = qmat_to_gmat(&d.h_i);
    let shifted = hg.sub_ref(&GMat::identity(size).scale(&GaussRat::i()))?;
    Ok(kernel(&shifted))
}

/// Matrix of an operator restricted to the span of the given columns
/// (which must be invariant).
fn restrict_to_span(basis: &GMat, op: &GMat) -> Result<GMat> {
    let moved = op.mul_ref(basis)?;
    solve(basis, &moved)
}

/// A multivariate polynomial over ℚ(i): exponent vector -> coefficient.
pub type MPoly = BTreeMap<Vec<u32>, GaussRat>;

fn mpoly_mul(a: &MPoly, b: &MPoly, vars: usize) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = vec![0u32; vars];
            for i in 0..vars {
                e[i] = ea[i] + eb[i];
            }
            let coeff = ca.clone() * cb.clone();
            let entry = out.entry(e).or_insert_with(GaussRat::zero);
            *entry = entry.clone() + coeff;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn mpoly_add(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let entry = out.entry(e.clone()).or_insert_with(GaussRat::zero);
        *entry = entry.clone() + c.clone();
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn mpoly_scale(a: &MPoly, s: &GaussRat) -> MPoly {
    if s.is_zero() {
        return MPoly::new();
    }
    a.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())).collect()
}

/// det(Σ_j X_j · (α_j acting on V^{-1,0})), an exact polynomial in
/// X₁, …, X_t with ℚ(i) coefficients.
pub fn determinant_polynomial(d: &PelDatum) -> Result<MPoly> {
    let eigen = minus_one_zero_eigenspace(d)?;
    let n = eigen.cols();
    let t = d.algebra.rank();
    // restricted[j]: n×n matrix of α_j on the eigenspace.
    let mut restricted = Vec::with_capacity(t);
    for a in &d.action {
        restricted.push(restrict_to_span(&eigen, &qmat_to_gmat(&zmat_to_qmat(a)))?);
    }
    // Entry (r, c) of Σ X_j C_j as a linear polynomial.
    let entry_poly = |r: usize, c: usize| -> MPoly {
        let mut p = MPoly::new();
        for (j, m) in restricted.iter().enumerate() {
            let coeff = m.at(r, c).clone();
            if !coeff.is_zero() {
                let mut e = vec![0u32; t];
                e[j] = 1;
                p.insert(e, coeff);
            }
        }
        p
    };
    // Cofactor expansion over the polynomial ring; n is tiny.
    fn det_rec(
        rows: &[usize],
        cols: &[usize],
        entry: &dyn Fn(usize, usize) -> MPoly,
        vars: usize,
    ) -> MPoly {
        if rows.is_empty() {
            let mut one = MPoly::new();
            one.insert(vec![0u32; vars], GaussRat::one());
            return one;
        }
        let mut acc = MPoly::new();
        let r = rows[0];
        for (k, &c) in cols.iter().enumerate() {
            let e = entry(r, c);
            if e.is_empty() {
                continue;
            }
            let sub_rows: Vec<usize> = rows[1..].to_vec();
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, &c)| c)
                .collect();
            let minor = det_rec(&sub_rows, &sub_cols, entry, vars);
            let signed = if k % 2 == 0 {
                mpoly_mul(&e, &minor, vars)
            } else {
                mpoly_scale(&mpoly_mul(&e, &minor, vars), &-GaussRat::one())
            };
            acc = mpoly_add(&acc, &signed);
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(det_rec(&rows, &cols, &entry_poly, t))
}

/// Checks that every coefficient denominator is supported on bad primes of
/// the datum (the coefficients are integral away from the bad set).
pub fn coefficients_integral_away_from_bad(d: &PelDatum, poly: &MPoly) -> Result<bool> {
    let disc = d.algebra.discriminant()?.abs();
    let idx = det_bareiss(&d.pairing)?.abs();
    let bad = disc * idx * if d.has_type_d_factor() { Int::from(2) } else { Int::one() };
    for coeff in poly.values() {
        for den in [coeff.re().denom().clone(), coeff.im().denom().clone()] {
            let mut den = den.abs();
            // Strip every factor shared with the bad product.
            loop {
                let g = den.gcd(&bad);
                if g.is_one() {
                    break;
                }
                while (den.clone() % g.clone()).is_zero() {
                    den /= g.clone();
                }
            }
            if !den.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Packaged example data.
pub mod examples {
    use super::*;

    /// The Siegel datum: 𝒪 = ℤ, trivial involution, standard symplectic
    /// pairing on ℤ^{2d}, h(a+ib) = [[aI, −bI], [bI, aI]].
    pub fn siegel(d: usize) -> Result<PelDatum> {
        let structure = vec![vec![vec![Int::one()]]];
        let algebra = FiniteAlgebra::new(structure, ZMat::identity(1))?;
        let pairing: ZMat = crate::linalg::symplectic_gram(d)?;
        let size = 2 * d;
        let action = vec![ZMat::identity(size)];
        let id = QMat::identity(d);
        let z = QMat::zero(d, d);
        let h_i = QMat::block2x2(&z, &id.neg_ref(), &id, &z)?;
        PelDatum::new(algebra, action, pairing, h_i, false)
    }

    /// Multiplication table of ℤ[i] on the basis (1, i) with conjugation.
    fn gauss_algebra() -> Result<FiniteAlgebra> {
        let z = Int::zero;
        let o = Int::one;
        // 1·1 = 1, 1·i = i, i·1 = i, i·i = -1.
        let structure = vec![
            vec![vec![o(), z()], vec![z(), o()]],
            vec![vec![z(), o()], vec![-o(), z()]],
        ];
        let involution = ZMat::from_rows(vec![
            vec![o(), z()],
            vec![z(), -o()],
        ])?;
        FiniteAlgebra::new(structure, involution)
    }

    /// The unitary datum over ℤ[i] of signature (p, q): Λ = ℤ[i]^{p+q}
    /// with the diagonal ±1 Hermitian form H, pairing Tr(i·H(x, y)) with H
    /// linear in its first argument, and h(z) = diag(z·I_p, z̄·I_q).
    ///
    /// Lattice basis: e_1, …, e_n, i·e_1, …, i·e_n.
    pub fn gaussian_unitary(p: usize, q: usize) -> Result<PelDatum> {
        let n = p + q;
        if n == 0 {
            return Err(Error::domain("signature must be positive"));
        }
        let algebra = gauss_algebra()?;
        let size = 2 * n;
        // Action of i: e_k -> i e_k, i e_k -> -e_k.
        let mut mult_i = ZMat::zero(size, size);
        for k in 0..n {
            mult_i.set(n + k, k, Int::one());
            mult_i.set(k, n + k, -Int::one());
        }
        let action = vec![ZMat::identity(size), mult_i];
        // ⟨x, y⟩ = Tr_{Q(i)/Q}(i · Σ_a σ_a x_a conj(y_a)), σ = (+1^p, -1^q),
        // evaluated on the basis: same-kind pairs vanish, mixed pairs give
        // Tr(i·(∓i)·σ_a) = ±2σ_a.
        let sigma = |a: usize| -> Int {
            if a < p {
                Int::one()
            } else {
                -Int::one()
            }
        };
        let mut pairing = ZMat::zero(size, size);
        for a in 0..n {
            // ⟨e_a, i e_a⟩ = Tr(i · σ_a · conj(i)) = Tr(i·(−i)·σ_a) = 2σ_a.
            pairing.set(a, n + a, Int::from(2) * sigma(a));
            // ⟨i e_a, e_a⟩ = Tr(i · i σ_a) = Tr(−σ_a) = −2σ_a.
            pairing.set(n + a, a, -Int::from(2) * sigma(a));
        }
        // h(i) = diag(i I_p, -i I_q) acting through the complex structure:
        // e_a -> ±i e_a, i e_a -> ∓ e_a.
        let mut h_i = QMat::zero(size, size);
        for a in 0..n {
            let s = Rat::from_integer(sigma(a));
            h_i.set(n + a, a, s.clone());
            h_i.set(a, n + a, -s);
        }
        PelDatum::new(algebra, action, pairing, h_i, false)
    }

    /// Multiplication table of the quaternion order ℤ⟨1, i, j, k⟩ with the
    /// conjugation involution.
    fn quaternion_algebra() -> Result<FiniteAlgebra> {
        let t = 4usize;
        // Basis order: 1, i, j, k with i² = j² = -1, ij = k.
        let mut structure = vec![vec![vec![Int::zero(); t]; t]; t];
        // table[a][b] = (sign, index) for basis products.
        let table: [[(i64, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        for a in 0..t {
            for b in 0..t {
                let (s, idx) = table[a][b];
                structure[a][b][idx] = Int::from(s);
            }
        }
        let mut involution = ZMat::identity(t);
        for i in 1..t {
            involution.set(i, i, -Int::one());
        }
        FiniteAlgebra::new(structure, involution)
    }

    /// The type-D quaternionic datum at n = 1: Λ = 𝒪², skew-Hermitian form
    /// with Gram [[0, 1], [-1, 0]], pairing the reduced trace of that form,
    /// h(a+ib) = [[a, -b], [b, a]] over the quaternions.
    ///
    /// Lattice basis: (β_m e_1)_{m=1..4}, (β_m e_2)_{m=1..4} with
    /// β = (1, i, j, k) acting by left multiplication.
    pub fn quaternion_type_d() -> Result<PelDatum> {
        let algebra = quaternion_algebra()?;
        let size = 8usize;
        // Left multiplication by i, j, k on the 8-dimensional lattice.
        let mut action = vec![ZMat::identity(size)];
        for gen in 1..4usize {
            let mut m = ZMat::zero(size, size);
            for e in 0..2usize {
                for b in 0..4usize {
                    let mut gv = vec![Int::zero(); 4];
                    gv[gen] = Int::one();
                    let mut bv = vec![Int::zero(); 4];
                    bv[b] = Int::one();
                    let prod = algebra.mul_vec(&gv, &bv);
                    for (k, c) in prod.iter().enumerate() {
                        if !c.is_zero() {
                            m.set(4 * e + k, 4 * e + b, c.clone());
                        }
                    }
                }
            }
            action.push(m);
        }
        // Pairing ⟨x, y⟩ = Trd(H(x, y)) with H(x, y) = conj(x₁)y₂ − conj(x₂)y₁.
        // On basis quaternions: Trd(conj(β_a) β_b) = 2δ_ab (reduced trace).
        let mut pairing = ZMat::zero(size, size);
        for a in 0..4usize {
            // x = β_a e_1, y = β_b e_2: H = conj(β_a)β_b, Trd = 2δ_ab.
            pairing.set(a, 4 + a, Int::from(2));
            // x = β_a e_2, y = β_b e_1: H = −conj(β_a)β_b.
            pairing.set(4 + a, a, -Int::from(2));
        }
        // h(i) = [[0, -1], [1, 0]] on 𝒪²: e_1 -> e_2, e_2 -> -e_1,
        // componentwise on the β-coordinates.
        let mut h_i = QMat::zero(size, size);
        for b in 0..4usize {
            h_i.set(4 + b, b, Rat::one());
            h_i.set(b, 4 + b, -Rat::one());
        }
        PelDatum::new(algebra, action, pairing, h_i, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SplitMix64;

    #[test]
    fn siegel_datum_passes() {
        let d = examples::siegel(2).unwrap();
        let report = validate_pel(&d).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn negated_pairing_fails_positivity() {
        let d = examples::siegel(1).unwrap();
        let flipped = PelDatum::new(
            d.algebra().clone(),
            d.action().to_vec(),
            d.pairing().neg_ref(),
            d.h_i().clone(),
            false,
        )
        .unwrap();
        let report = validate_pel(&flipped).unwrap();
        assert!(!report.h_positivity);
        assert!(report.pairing_alternating);
    }

    #[test]
    fn gaussian_unitary_passes() {
        for (p, q) in [(1, 1), (2, 1)] {
            let d = examples::gaussian_unitary(p, q).unwrap();
            let report = validate_pel(&d).unwrap();
            assert!(report.all_pass(), "({p},{q}): {report:?}");
        }
    }

    #[test]
    fn quaternion_datum_passes() {
        let d = examples::quaternion_type_d().unwrap();
        let report = validate_pel(&d).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn good_primes() {
        let siegel = examples::siegel(1).unwrap();
        for p in [2i64, 3, 5, 97] {
            assert!(good_prime(&siegel, p).unwrap().good);
        }
        let gauss = examples::gaussian_unitary(1, 1).unwrap();
        let at2 = good_prime(&gauss, 2).unwrap();
        assert!(!at2.good);
        assert!(at2.divides_discriminant);
        let quat = examples::quaternion_type_d().unwrap();
        let at2 = good_prime(&quat, 2).unwrap();
        assert!(!at2.good && at2.two_with_type_d);
        // Good for all p beyond the bad data.
        assert!(good_prime(&quat, 97).unwrap().good);
    }

    #[test]
    fn reflex_verdicts() {
        let (_, v) = reflex_traces(&examples::siegel(2).unwrap()).unwrap();
        assert_eq!(v, ReflexVerdict::Rational);

        let (traces, v) = reflex_traces(&examples::gaussian_unitary(2, 1).unwrap()).unwrap();
        assert_eq!(v, ReflexVerdict::ImaginaryQuadratic { discriminant: -4 });
        // Trace of the i generator on V^{-1,0} is (p−q)i = i.
        assert_eq!(traces[1], GaussRat::from_ints(0, 1));

        let (_, v) = reflex_traces(&examples::gaussian_unitary(1, 1).unwrap()).unwrap();
        assert_eq!(v, ReflexVerdict::Rational);
    }

    #[test]
    fn reflex_stable_under_basis_change() {
        // Change the 𝒪-basis of ℤ[i] by a random unimodular map and rebuild
        // the datum; the verdict must not change.
        let mut rng = SplitMix64::new(0x5eed);
        let d = examples::gaussian_unitary(2, 1).unwrap();
        let (_, v0) = reflex_traces(&d).unwrap();
        for _ in 0..5 {
            let a = rng.next_i64_in(-3, 3);
            // New basis (1, i + a·1); unimodular over Z.
            let new_action1 = d.action()[1]
                .add_ref(&d.action()[0].scale(&Int::from(a)))
                .unwrap();
            // Structure constants in the new basis: (i + a)² = -1 + 2a(i+a) - a²·1.
            let z = Int::zero;
            let structure = vec![
                vec![vec![Int::one(), z()], vec![z(), Int::one()]],
                vec![
                    vec![z(), Int::one()],
                    vec![Int::from(-1 - a * a), Int::from(2 * a)],
                ],
            ];
            // (i + a)* = -i + a = 2a·1 - (i + a).
            let involution = ZMat::from_rows(vec![
                vec![Int::one(), Int::from(2 * a)],
                vec![z(), -Int::one()],
            ])
            .unwrap();
            let algebra = FiniteAlgebra::new(structure, involution).unwrap();
            let datum = PelDatum::new(
                algebra,
                vec![d.action()[0].clone(), new_action1],
                d.pairing().clone(),
                d.h_i().clone(),
                false,
            )
            .unwrap();
            assert!(validate_pel(&datum).unwrap().all_pass());
            let (_, v) = reflex_traces(&datum).unwrap();
            assert_eq!(v, v0);
        }
    }

    #[test]
    fn determinant_polynomials() {
        // Siegel d = 1: a single variable X₁ of degree N = 1.
        let d = examples::siegel(1).unwrap();
        let poly = determinant_polynomial(&d).unwrap();
        assert_eq!(poly.len(), 1);
        assert_eq!(poly.get(&vec![1u32]).unwrap(), &GaussRat::one());

        // GU(1,1): X₁² + X₂².
        let d = examples::gaussian_unitary(1, 1).unwrap();
        let poly = determinant_polynomial(&d).unwrap();
        assert_eq!(poly.get(&vec![2, 0]).unwrap(), &GaussRat::one());
        assert_eq!(poly.get(&vec![0, 2]).unwrap(), &GaussRat::one());
        assert_eq!(poly.len(), 2);

        // GU(2,1): (X₁ + iX₂)²(X₁ − iX₂) = X₁³ + iX₁²X₂ + X₁X₂² + iX₂³.
        let d = examples::gaussian_unitary(2, 1).unwrap();
        let poly = determinant_polynomial(&d).unwrap();
        let i = GaussRat::i();
        assert_eq!(poly.get(&vec![3, 0]).unwrap(), &GaussRat::one());
        assert_eq!(poly.get(&vec![2, 1]).unwrap(), &i);
        assert_eq!(poly.get(&vec![1, 2]).unwrap(), &GaussRat::one());
        assert_eq!(poly.get(&vec![0, 3]).unwrap(), &i);
        assert!(coefficients_integral_away_from_bad(&d, &poly).unwrap());
    }

    #[test]
    fn determinant_at_unit_is_one() {
        for d in [
            examples::siegel(1).unwrap(),
            examples::siegel(2).unwrap(),
            examples::gaussian_unitary(1, 1).unwrap(),
            examples::gaussian_unitary(2, 1).unwrap(),
        ] {
            let poly = determinant_polynomial(&d).unwrap();
            // Evaluate at X = image of 1, i.e. X₁ = 1, other variables 0.
            let mut value = GaussRat::zero();
            for (exps, coeff) in &poly {
                if exps.iter().skip(1).all(|&e| e == 0) {
                    value = value + coeff.clone();
                }
            }
            assert_eq!(value, GaussRat::one());
        }
    }
}
