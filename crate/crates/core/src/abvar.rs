//! Lattice models of polarized complex abelian varieties with level
//! structures: the Weil pairing exponent, level-structure validation, Hecke
//! moves by integral similitudes, and classical reduction for d = 1.
//!
//! A torus is carried as pure linear-algebra data in a fixed ambient ℝ^{2d}:
//! a rational lattice basis, the rational complex structure J, and the Gram
//! matrix of the polarization form on that basis. The Hermitian form is
//! H(v, w) = s·(ψ(v, Jw) + i·ψ(v, w)) where ψ is the standard symplectic
//! form of the ambient and s > 0 the stored scale.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hodge::{jmatrix_from_point, lagrangian_from_structure, point_from_lagrangian, ComplexStructure};
use crate::linalg::{
    det_bareiss, is_positive_definite, lattice_column_hnf, smith_normal_form, symplectic_basis_z,
    symplectic_gram,
};
use crate::matrix::{imat_to_zmat, qmat_to_zmat, zmat_to_imat, zmat_to_qmat};
use crate::modn::{gcd_i64, inv_mod, is_invertible_mod, mat_mod, units_mod};
use crate::siegel::{HalfSpace, SiegelPoint, SymplecticSimilitude};
use crate::{IMat, Int, QMat, Rat, ZMat};

/// A lattice with complex structure and polarization data; the desk-scale
/// avatar of a polarized abelian variety (A, λ).
#[derive(Clone, PartialEq, Debug)]
pub struct PolarizedTorusData {
    d: usize,
    basis: QMat,
    j: ComplexStructure,
    scale: Rat,
    pairing: ZMat,
}

impl PolarizedTorusData {
    /// Builds the data from a lattice basis (columns, in ambient
    /// coordinates), a compatible complex structure, and the polarization
    /// scale. Checks integrality and nondegeneracy of the pairing and
    /// positivity of the Hermitian form.
    pub fn new(basis: QMat, j: ComplexStructure, scale: Rat) -> Result<Self> {
        let d = j.dim();
        if basis.rows() != 2 * d || basis.cols() != 2 * d {
            return Err(Error::shape("lattice basis must be 2d x 2d"));
        }
        if !scale.is_positive() {
            return Err(Error::domain("polarization scale must be positive"));
        }
        let m: QMat = symplectic_gram(d)?;
        let gram_q = basis
            .transpose()
            .mul_ref(&m)?
            .mul_ref(&basis)?
            .scale(&scale);
        let pairing = qmat_to_zmat(&gram_q)
            .map_err(|_| Error::domain("polarization form is not integral on the lattice"))?;
        if pairing.entries().all(|e| e.is_zero()) || det_bareiss(&pairing)?.is_zero() {
            return Err(Error::domain("polarization form is degenerate on the lattice"));
        }
        if !pairing.is_antisymmetric() {
            return Err(Error::internal("pairing Gram not alternating"));
        }
        // Positivity of H: the symmetric part s·ψ(·, J·) must be positive
        // definite; expressed on the lattice basis.
        let sym = basis
            .transpose()
            .mul_ref(&m)?
            .mul_ref(j.matrix())?
            .mul_ref(&basis)?
            .scale(&scale);
        if !is_positive_definite(&sym)? {
            return Err(Error::domain("Hermitian form is not positive definite"));
        }
        Ok(PolarizedTorusData {
            d,
            basis,
            j,
            scale,
            pairing,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn structure(&self) -> &ComplexStructure {
        &self.j
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// Integer Gram matrix of Im H on the lattice basis.
    pub fn pairing(&self) -> &ZMat {
        &self.pairing
    }

    /// Self-duality of the lattice: |det pairing| = 1.
    pub fn is_principal(&self) -> bool {
        det_bareiss(&self.pairing).map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// The Siegel point of a principal torus: rewrite the data in an
    /// integral symplectic basis of the pairing and read the point off the
    /// i-eigenspace of the complex structure.
    pub fn siegel_point(&self) -> Result<SiegelPoint> {
        if !self.is_principal() {
            return Err(Error::domain("only principal data determines a Siegel point"));
        }
        let w = symplectic_basis_z(&self.pairing)?;
        let bw = self.basis.mul_ref(&zmat_to_qmat(&w))?;
        let jb = bw.inverse()?.mul_ref(self.j.matrix())?.mul_ref(&bw)?;
        let structure = ComplexStructure::new(jb)?;
        point_from_lagrangian(&lagrangian_from_structure(&structure)?)
    }
}

/// A level-n structure candidate: an invertible matrix mod n together with
/// the exponent u of the root of unity, meaning φ(1) = ζ_n^u with
/// ζ_n = e^{−2iπ/n}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelStructure {
    n: i64,
    eta: IMat,
    zeta_exp: i64,
}

impl LevelStructure {
    pub fn new(n: i64, eta: IMat, zeta_exp: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("level must be at least 1"));
        }
        if !eta.is_square() || eta.rows() % 2 != 0 {
            return Err(Error::shape("level matrix must be square of even size"));
        }
        let eta = mat_mod(&eta, n);
        if !is_invertible_mod(&eta, n)? {
            return Err(Error::domain("level matrix is not invertible mod n"));
        }
        // The exponent must be a unit so ζ^u is a primitive n-th root.
        let zeta_exp = zeta_exp.rem_euclid(n);
        if n > 1 && gcd_i64(zeta_exp, n) != 1 {
            return Err(Error::domain("root-of-unity exponent is not a unit mod n"));
        }
        Ok(LevelStructure { n, eta, zeta_exp })
    }

    pub fn identity(d: usize, n: i64) -> Result<Self> {
        LevelStructure::new(n, IMat::identity(2 * d), 1)
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn eta(&self) -> &IMat {
        &self.eta
    }

    pub fn zeta_exp(&self) -> i64 {
        self.zeta_exp
    }
}

/// An integral symplectic similitude with positive integer multiplier whose
/// prime support divides the level; the input datum of a Hecke move.
#[derive(Clone, PartialEq, Debug)]
pub struct IntegralHeckeElement {
    d: usize,
    n: i64,
    g: ZMat,
    multiplier: Int,
}

impl IntegralHeckeElement {
    pub fn new(n: i64, g: ZMat) -> Result<Self> {
        if !g.is_square() || g.rows() % 2 != 0 {
            return Err(Error::shape("Hecke element must be square of even size"));
        }
        let d = g.rows() / 2;
        let m: ZMat = symplectic_gram(d)?;
        let gram = g.transpose().mul_ref(&m)?.mul_ref(&g)?;
        let c = gram.at(0, d).clone();
        if c.is_zero() || gram != m.scale(&c) {
            return Err(Error::domain("matrix is not a symplectic similitude over Z"));
        }
        if !c.is_positive() {
            return Err(Error::domain("Hecke multiplier must be positive"));
        }
        // Prime support of the multiplier must divide n.
        let mut rem = c.clone();
        let nn = Int::from(n);
        loop {
            let g = rem.gcd(&nn);
            if g.is_one() {
                break;
            }
            while (rem.clone() % g.clone()).is_zero() {
                rem /= g.clone();
            }
        }
        if !rem.is_one() {
            return Err(Error::precondition(
                "prime support of the multiplier does not divide the level",
            ));
        }
        Ok(IntegralHeckeElement {
            d,
            n,
            g,
            multiplier: c,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> i64 {
        self.n
    }

    pub fn matrix(&self) -> &ZMat {
        &self.g
    }

    pub fn multiplier(&self) -> &Int {
        &self.multiplier
    }
}

/// The torus of a Siegel point with its tautological level-n structure:
/// lattice ℤ^{2d} in the coordinates where the point's Lagrangian is
/// (Y; I), η = identity mod n, ζ-exponent 1.
pub fn torus_from_point(y: &SiegelPoint, n: i64) -> Result<(PolarizedTorusData, LevelStructure)> {
    if y.component() != HalfSpace::Upper {
        return Err(Error::domain("torus construction needs the upper component"));
    }
    let j = jmatrix_from_point(y)?;
    let t = PolarizedTorusData::new(QMat::identity(2 * y.dim()), j, Rat::one())?;
    let s = LevelStructure::identity(y.dim(), n)?;
    Ok((t, s))
}

/// The exponent k such that the Weil pairing of the n-torsion points with
/// lattice-basis coordinates a/n and b/n equals ζ_n^k: for principal data
/// this is the pairing Gram evaluated mod n.
pub fn weil_pairing_exp(t: &PolarizedTorusData, n: i64, a: &[i64], b: &[i64]) -> Result<i64> {
    if !t.is_principal() {
        return Err(Error::domain("Weil pairing exponent needs principal data"));
    }
    if n < 1 {
        return Err(Error::domain("modulus must be positive"));
    }
    let size = 2 * t.dim();
    if a.len() != size || b.len() != size {
        return Err(Error::shape("torsion coordinates have wrong length"));
    }
    let mut acc = Int::zero();
    for r in 0..size {
        for c in 0..size {
            acc += Int::from(a[r]) * t.pairing().at(r, c).clone() * Int::from(b[c]);
        }
    }
    Ok(acc.mod_floor(&Int::from(n)).to_i64().expect("residue fits"))
}

/// Matrix of Weil-pairing exponents on the standard n-torsion basis.
pub fn weil_pairing_matrix(t: &PolarizedTorusData, n: i64) -> Result<IMat> {
    Ok(mat_mod(&zmat_to_imat(t.pairing())?, n))
}

/// Checks the similitude condition tying (η, ζ^u) to the Weil pairing:
/// u·ψ_std(ηa, ηb) ≡ (pairing Gram) mod n on all basis pairs.
pub fn is_level_structure(t: &PolarizedTorusData, s: &LevelStructure) -> Result<bool> {
    let size = 2 * t.dim();
    if s.eta().rows() != size {
        return Err(Error::shape("level matrix size does not match the torus"));
    }
    if !t.is_principal() {
        return Err(Error::domain("level-structure check needs principal data"));
    }
    let n = s.n();
    let m: ZMat = symplectic_gram(t.dim())?;
    let e = imat_to_zmat(s.eta());
    let lhs = e
        .transpose()
        .mul_ref(&m)?
        .mul_ref(&e)?
        .scale(&Int::from(s.zeta_exp()));
    let rhs = t.pairing();
    let nn = Int::from(n);
    for r in 0..size {
        for c in 0..size {
            let diff = lhs.at(r, c).clone() - rhs.at(r, c).clone();
            if !diff.mod_floor(&nn).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Applies the Hecke move of an integral similitude: the lattice grows by
/// the lifted kernel of u∘η mod n, the polarization rescales by the
/// multiplier, and the level data is pushed through g∘η.
///
/// Requires the level to resolve g fully: the kernel size must equal
/// multiplier^d, otherwise the move is rejected (central parts of g beyond
/// level n have no moduli meaning at this level).
pub fn hecke_tg(
    t: &PolarizedTorusData,
    s: &LevelStructure,
    g: &IntegralHeckeElement,
) -> Result<(PolarizedTorusData, LevelStructure)> {
    if g.dim() != t.dim() {
        return Err(Error::shape("Hecke element dimension mismatch"));
    }
    if g.level() != s.n() {
        return Err(Error::shape("Hecke element level mismatch"));
    }
    if !is_level_structure(t, s)? {
        return Err(Error::precondition("level structure is not valid on the torus"));
    }
    let n = s.n();
    let size = 2 * t.dim();
    let nn = Int::from(n);

    let u = g.matrix().map(|v| v.mod_floor(&nn));
    let e = imat_to_zmat(s.eta());
    let ue = u.mul_ref(&e)?;

    // Solution lattice {a : (u∘η)·a ≡ 0 mod n} via the integer kernel of
    // [uE | -nI].
    let minus_n = ZMat::identity(size).scale(&-nn.clone());
    let stacked = ue.hstack(&minus_n)?;
    let kernel_basis = integer_kernel(&stacked);
    let idx_top: Vec<usize> = (0..size).collect();
    let all_cols: Vec<usize> = (0..kernel_basis.cols()).collect();
    let lk = kernel_basis.submatrix(&idx_top, &all_cols);
    if lk.cols() != size {
        return Err(Error::internal("solution lattice has wrong rank"));
    }
    let h = lattice_column_hnf(&lk);
    if h.cols() != size {
        return Err(Error::internal("solution lattice is rank deficient"));
    }

    // Kernel size = [L_K : nZ^{2d}] = n^{2d} / det(H); must equal c^d.
    let det_h = det_bareiss(&h)?.abs();
    let n_pow = nn.pow(size as u32);
    let (kernel_size, rem) = n_pow.div_rem(&det_h);
    if !rem.is_zero() {
        return Err(Error::internal("kernel index not integral"));
    }
    let c_pow_d = g.multiplier().pow(t.dim() as u32);
    if kernel_size != c_pow_d {
        return Err(Error::precondition(
            "level does not resolve the central part of g (kernel size != multiplier^d)",
        ));
    }

    // New lattice basis: Λ' = Λ + (1/n)·L_K in old-basis coordinates.
    let w = zmat_to_qmat(&h).scale(&Rat::new(Int::one(), nn.clone()));
    let new_basis = t.basis().mul_ref(&w)?;
    let new_scale = t.scale() * Rat::from_integer(g.multiplier().clone());
    let new_torus = PolarizedTorusData::new(new_basis, t.structure().clone(), new_scale)?;

    // New level matrix: η' = (g·E·H)/n mod n, with the integral g (the
    // mod-n reduction would lose central parts of g that the enlarged
    // lattice still sees).
    let geh = g.matrix().mul_ref(&e)?.mul_ref(&h)?;
    let new_eta_z = geh.try_map(|v| {
        let (q, r) = v.div_rem(&nn);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::internal("pushed level matrix not integral"))
        }
    })?;
    let new_eta = zmat_to_imat(&new_eta_z.map(|v| v.mod_floor(&nn)))?;
    let new_level = LevelStructure::new(n, new_eta, s.zeta_exp())?;
    if !is_level_structure(&new_torus, &new_level)? {
        return Err(Error::internal("Hecke output fails the level-structure law"));
    }
    Ok((new_torus, new_level))
}

/// Integer kernel of a matrix as columns, via the Smith normal form.
fn integer_kernel(m: &ZMat) -> ZMat {
    let (d, _, v) = smith_normal_form(m);
    let k = m.rows().min(m.cols());
    let mut zero_cols: Vec<usize> = (0..k)
        .filter(|&i| d.at(i, i).is_zero())
        .collect();
    zero_cols.extend(k..m.cols());
    let rows: Vec<usize> = (0..m.cols()).collect();
    v.submatrix(&rows, &zero_cols)
}

/// Index [Λ' : Λ] of a Hecke move, for degree tests: determinant ratio of
/// the bases.
pub fn lattice_index(sub: &PolarizedTorusData, sup: &PolarizedTorusData) -> Result<Rat> {
    let det_sub = det_bareiss(sub.basis())?;
    let det_sup = det_bareiss(sup.basis())?;
    if det_sup.is_zero() {
        return Err(Error::degenerate("degenerate lattice"));
    }
    Ok((det_sub / det_sup).abs())
}

/// Classical reduction for d = 1: returns the canonical representative in
/// the strip −1/2 ≤ Re < 1/2 with |τ|² ≥ 1 (ties |τ|² = 1 resolved to
/// Re ≤ 0), and the integral transformation realizing it.
pub fn reduce_sl2z(tau: &SiegelPoint) -> Result<(SiegelPoint, SymplecticSimilitude)> {
    if tau.dim() != 1 {
        return Err(Error::domain("classical reduction is defined for d = 1"));
    }
    if tau.component() != HalfSpace::Upper {
        return Err(Error::domain("classical reduction needs the upper half plane"));
    }
    let mut re = tau.matrix().at(0, 0).re().clone();
    let mut im = tau.matrix().at(0, 0).im().clone();
    // gamma = [[a, b], [c, d]] over Z, acting by (aτ + b)/(cτ + d).
    let mut gm = [
        [Int::one(), Int::zero()],
        [Int::zero(), Int::one()],
    ];
    let half = Rat::new(Int::one(), Int::from(2));
    loop {
        // Shift the real part into [-1/2, 1/2).
        let k = (re.clone() + half.clone()).floor();
        if !k.is_zero() {
            re -= k.clone();
            let kz = k.to_integer();
            // gamma <- T^{-k} · gamma with T = [[1, 1], [0, 1]].
            gm[0][0] = gm[0][0].clone() - kz.clone() * gm[1][0].clone();
            gm[0][1] = gm[0][1].clone() - kz * gm[1][1].clone();
        }
        let norm = re.clone() * re.clone() + im.clone() * im.clone();
        let needs_flip = norm < Rat::one() || (norm == Rat::one() && re.is_positive());
        if !needs_flip {
            break;
        }
        // τ <- -1/τ; gamma <- S · gamma with S = [[0, -1], [1, 0]].
        let new_re = -re.clone() / norm.clone();
        let new_im = im.clone() / norm;
        re = new_re;
        im = new_im;
        let top = [(-gm[1][0].clone()), (-gm[1][1].clone())];
        gm[1] = gm[0].clone();
        gm[0] = top;
    }
    let y = crate::GMat::from_fn(1, 1, |_, _| crate::scalar::GaussRat::new(re.clone(), im.clone()));
    let out = SiegelPoint::upper(y)?;
    let gq = QMat::from_rows(vec![
        vec![Rat::from_integer(gm[0][0].clone()), Rat::from_integer(gm[0][1].clone())],
        vec![Rat::from_integer(gm[1][0].clone()), Rat::from_integer(gm[1][1].clone())],
    ])?;
    let sim = SymplecticSimilitude::new(gq)?;
    if crate::siegel::mobius_act(&sim, tau)? != out {
        return Err(Error::internal("reduction transform does not act as computed"));
    }
    Ok((out, sim))
}

/// Normalized period of a principal torus with d = 1: the reduced Siegel
/// point of its lattice.
pub fn normalized_period(t: &PolarizedTorusData) -> Result<SiegelPoint> {
    if t.dim() != 1 {
        return Err(Error::domain("normalized period is defined for d = 1"));
    }
    let y = t.siegel_point()?;
    Ok(reduce_sl2z(&y)?.0)
}

/// All residue vectors mod n of length `len`, in lexicographic order; used
/// by exhaustive Weil-pairing tests. Budget-guarded.
pub fn residue_vectors(n: i64, len: usize, budget: u64) -> Result<Vec<Vec<i64>>> {
    let total = (n as u64).checked_pow(len as u32).ok_or_else(|| {
        Error::resource("residue vector enumeration overflows")
    })?;
    if total > budget {
        return Err(Error::resource(format!(
            "residue vector enumeration of size {total} exceeds budget {budget}"
        )));
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0i64; len];
    loop {
        out.push(cur.clone());
        let mut idx = len;
        loop {
            if idx == 0 {
                return Ok(out);
            }
            idx -= 1;
            cur[idx] += 1;
            if cur[idx] < n {
                break;
            }
            cur[idx] = 0;
        }
    }
}

/// The units u for which (identity, u) is a level structure on a torus:
/// diagnostic helper for the component-group picture.
pub fn valid_unit_exponents(t: &PolarizedTorusData, n: i64) -> Result<Vec<i64>> {
    let d = t.dim();
    let mut out = Vec::new();
    for u in units_mod(n) {
        let s = LevelStructure::new(n, IMat::identity(2 * d), u)?;
        if is_level_structure(t, &s)? {
            out.push(u);
        }
    }
    Ok(out)
}

/// Convenience: the inverse of a unit mod n (for the s(α)-twisted level
/// data of the component-group model).
pub fn unit_inverse(u: i64, n: i64) -> Result<i64> {
    inv_mod(u, n)
}
