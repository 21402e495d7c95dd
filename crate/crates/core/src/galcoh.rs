//! Real Galois cohomology of unitary groups in its finite incarnation:
//! 2-torsion sign vectors for the diagonal torus of U(p, q), the twisted
//! Weyl-group action and its orbits, the kernel to H¹(ℝ, G), local
//! ε-invariants of inner forms and the global gluing criterion.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::gmat_conj;
use crate::scalar::GaussRat;
use crate::GMat;

/// A class in H¹(ℝ, T₀) ≅ T₀(ℝ)₂ for the diagonal torus of U(p, q): the
/// subset Ξ of coordinates carrying −1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SignVector {
    p: usize,
    q: usize,
    xi: BTreeSet<usize>,
}

impl SignVector {
    /// Coordinates are 1-based, in {1, …, p+q}.
    pub fn new(p: usize, q: usize, xi: impl IntoIterator<Item = usize>) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::domain("signature must have p + q >= 1"));
        }
        let xi: BTreeSet<usize> = xi.into_iter().collect();
        if xi.iter().any(|&i| i == 0 || i > p + q) {
            return Err(Error::domain("sign coordinates out of range"));
        }
        Ok(SignVector { p, q, xi })
    }

    pub fn empty(p: usize, q: usize) -> Result<Self> {
        SignVector::new(p, q, [])
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn xi(&self) -> &BTreeSet<usize> {
        &self.xi
    }

    /// |Ξ ∩ {1..p}|.
    pub fn p_count(&self) -> usize {
        self.xi.iter().filter(|&&i| i <= self.p).count()
    }

    /// |Ξ ∩ {p+1..p+q}|.
    pub fn q_count(&self) -> usize {
        self.xi.iter().filter(|&&i| i > self.p).count()
    }

    fn mask(&self) -> u32 {
        let mut m = 0u32;
        for &i in &self.xi {
            m |= 1 << (i - 1);
        }
        m
    }

    fn from_mask(p: usize, q: usize, mask: u32) -> Self {
        let xi = (1..=p + q).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        SignVector { p, q, xi }
    }
}

/// The closed-form action of the extra Weyl reflection σ = (1, p+1): if the
/// signs at coordinates 1 and p+1 agree both flip, otherwise the vector is
/// fixed. Validated against [`sigma_action_oracle`].
pub fn sigma_action(v: &SignVector) -> Result<SignVector> {
    let (p, q) = v.signature();
    if p == 0 || q == 0 {
        return Err(Error::domain("sigma needs both p >= 1 and q >= 1"));
    }
    let a = v.xi.contains(&1);
    let b = v.xi.contains(&(p + 1));
    let mut xi = v.xi.clone();
    if a == b {
        for i in [1, p + 1] {
            if xi.contains(&i) {
                xi.remove(&i);
            } else {
                xi.insert(i);
            }
        }
    }
    SignVector::new(p, q, xi)
}

/// The realified 2(p+q) matrix representing σ in the normalizer of the
/// diagonal torus: identity 2×2 blocks except i·I₂ at block positions
/// (1, p+1) and (p+1, 1). Block layout: coordinate j occupies rows/columns
/// 2j-2, 2j-1, each complex entry a+ib realified as [[a, b], [-b, a]].
pub fn sigma_normalizer_matrix(p: usize, q: usize) -> Result<GMat> {
    if p == 0 || q == 0 {
        return Err(Error::domain("sigma needs both p >= 1 and q >= 1"));
    }
    let n = p + q;
    let mut m = GMat::zero(2 * n, 2 * n);
    for blk in 0..n {
        let (target, entry) = if blk == 0 {
            (p, GaussRat::i())
        } else if blk == p {
            (0, GaussRat::i())
        } else {
            (blk, GaussRat::one())
        };
        m.set(2 * blk, 2 * target, entry.clone());
        m.set(2 * blk + 1, 2 * target + 1, entry);
    }
    Ok(m)
}

/// Matrix oracle for the σ action: c ↦ n⁻¹·c·conj(n) on the realified
/// 2-torsion of the diagonal torus, reading the resulting ±1 blocks back
/// off the diagonal.
pub fn sigma_action_oracle(v: &SignVector) -> Result<SignVector> {
    let (p, q) = v.signature();
    let nmat = sigma_normalizer_matrix(p, q)?;
    let n = p + q;
    let mut c = GMat::zero(2 * n, 2 * n);
    for blk in 0..n {
        let sign = if v.xi.contains(&(blk + 1)) {
            -GaussRat::one()
        } else {
            GaussRat::one()
        };
        c.set(2 * blk, 2 * blk, sign.clone());
        c.set(2 * blk + 1, 2 * blk + 1, sign);
    }
    let moved = nmat.inverse()?.mul_ref(&c)?.mul_ref(&gmat_conj(&nmat))?;
    // Read back the diagonal blocks; the result must again be a sign vector.
    let mut xi = BTreeSet::new();
    for blk in 0..n {
        let e = moved.at(2 * blk, 2 * blk).clone();
        let off = moved.at(2 * blk, 2 * blk + 1);
        if !off.is_zero() {
            return Err(Error::internal("oracle image is not diagonal"));
        }
        if e == -GaussRat::one() {
            xi.insert(blk + 1);
        } else if e != GaussRat::one() {
            return Err(Error::internal("oracle image is not a sign vector"));
        }
    }
    SignVector::new(p, q, xi)
}

/// Orbits of the full twisted Weyl action (coordinate permutations within
/// the two blocks, plus σ) on all 2^{p+q} sign vectors. Deterministic
/// ordering: orbits sorted by their minimal bitmask, elements by bitmask.
pub fn orbit_decomposition(p: usize, q: usize, budget: u32) -> Result<Vec<Vec<SignVector>>> {
    let n = p + q;
    if n == 0 {
        return Err(Error::domain("signature must have p + q >= 1"));
    }
    if n as u32 > budget.min(20) {
        return Err(Error::resource(format!(
            "orbit computation over 2^{n} sign vectors exceeds the budget"
        )));
    }
    let total: u32 = 1 << n;
    let swap_bits = |mask: u32, i: usize, j: usize| -> u32 {
        let bi = (mask >> i) & 1;
        let bj = (mask >> j) & 1;
        if bi == bj {
            mask
        } else {
            mask ^ (1 << i) ^ (1 << j)
        }
    };
    // σ on bitmasks: flip bits 0 and p when they agree.
    let sigma = |mask: u32| -> u32 {
        if p == 0 || q == 0 {
            return mask;
        }
        let b0 = (mask >> 0) & 1;
        let bp = (mask >> p) & 1;
        if b0 == bp {
            mask ^ 1 ^ (1 << p)
        } else {
            mask
        }
    };
    let mut seen = vec![false; total as usize];
    let mut orbits = Vec::new();
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut stack = vec![start];
        seen[start as usize] = true;
        orbit.insert(start);
        while let Some(m) = stack.pop() {
            let mut images = Vec::new();
            for i in 0..p.saturating_sub(1) {
                images.push(swap_bits(m, i, i + 1));
            }
            for j in 0..q.saturating_sub(1) {
                images.push(swap_bits(m, p + j, p + j + 1));
            }
            images.push(sigma(m));
            for im in images {
                if !seen[im as usize] {
                    seen[im as usize] = true;
                    orbit.insert(im);
                    stack.push(im);
                }
            }
        }
        orbits.push(
            orbit
                .into_iter()
                .map(|m| SignVector::from_mask(p, q, m))
                .collect::<Vec<_>>(),
        );
    }
    orbits.sort_by_key(|o| o[0].mask());
    Ok(orbits)
}

/// Canonical orbit representatives: c_∅, the c¹_r = {1..r}, and the
/// c²_s = {p+1..p+s}; checks each orbit contains exactly one of them.
pub fn canonical_representatives(p: usize, q: usize) -> Result<Vec<SignVector>> {
    let mut reps = vec![SignVector::empty(p, q)?];
    for r in 1..=p {
        reps.push(SignVector::new(p, q, 1..=r)?);
    }
    for s in 1..=q {
        reps.push(SignVector::new(p, q, (p + 1)..=(p + s))?);
    }
    Ok(reps)
}

/// The kernel of H¹(ℝ, T₀) → H¹(ℝ, G): the orbit of the trivial class.
pub fn kernel_to_g(p: usize, q: usize, budget: u32) -> Result<Vec<SignVector>> {
    let orbits = orbit_decomposition(p, q, budget)?;
    let trivial = SignVector::empty(p, q)?;
    for orbit in orbits {
        if orbit.contains(&trivial) {
            return Ok(orbit);
        }
    }
    Err(Error::internal("trivial class missing from its own orbit"))
}

/// Local datum of an inner form of the quasi-split unitary group in n
/// variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LocalInnerFormDatum {
    /// Real place of signature (p, q), p + q = n.
    Real { p: usize, q: usize },
    /// Finite place split in the CM field: the group GL_m(D), m | n.
    FiniteSplit { m: usize },
    /// Finite place inert in the CM field: quasi-split or not.
    FiniteNonsplit { quasi_split: bool },
}

/// The local ε-invariant, defined for even n.
pub fn epsilon(datum: &LocalInnerFormDatum, n: usize) -> Result<i32> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::domain("epsilon invariants are defined for even n"));
    }
    match datum {
        LocalInnerFormDatum::Real { p, q } => {
            if p + q != n {
                return Err(Error::domain("real signature does not sum to n"));
            }
            Ok(if (n / 2).abs_diff(*p) % 2 == 0 { 1 } else { -1 })
        }
        LocalInnerFormDatum::FiniteSplit { m } => {
            if *m == 0 || n % m != 0 {
                return Err(Error::domain("split invariant m must divide n"));
            }
            Ok(if m % 2 == 0 { 1 } else { -1 })
        }
        LocalInnerFormDatum::FiniteNonsplit { quasi_split } => {
            Ok(if *quasi_split { 1 } else { -1 })
        }
    }
}

/// Global gluing: a family of local inner forms (quasi-split at every
/// unlisted place) arises from a global inner form iff n is odd or the
/// product of the ε-invariants is 1.
pub fn global_exists(data: &[LocalInnerFormDatum], n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    // Consistency of each local datum regardless of parity.
    for d in data {
        match d {
            LocalInnerFormDatum::Real { p, q } => {
                if p + q != n {
                    return Err(Error::domain("real signature does not sum to n"));
                }
            }
            LocalInnerFormDatum::FiniteSplit { m } => {
                if *m == 0 || n % m != 0 {
                    return Err(Error::domain("split invariant m must divide n"));
                }
            }
            LocalInnerFormDatum::FiniteNonsplit { .. } => {}
        }
    }
    if n % 2 == 1 {
        return Ok(true);
    }
    let mut prod = 1i32;
    for d in data {
        prod *= epsilon(d, n)?;
    }
    Ok(prod == 1)
}

/// Sufficient division-algebra criterion: if the gcd of the split-place
/// invariants m_v is 1, the underlying algebra is a division algebra.
/// A `false` answer means the criterion is inconclusive.
pub fn division_algebra_sufficient(split_ms: &[usize], n: usize) -> Result<bool> {
    for &m in split_ms {
        if m == 0 || n % m != 0 {
            return Err(Error::domain("each m must divide n"));
        }
    }
    if split_ms.is_empty() {
        return Ok(false);
    }
    let mut g = 0usize;
    for &m in split_ms {
        g = gcd_usize(g, m);
    }
    Ok(g == 1)
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(p: usize, q: usize, xi: &[usize]) -> SignVector {
        SignVector::new(p, q, xi.iter().copied()).unwrap()
    }

    #[test]
    fn sigma_examples_from_u11() {
        // σ exchanges c_∅ and c_{1,2}, fixes c_{1} and c_{2}.
        assert_eq!(sigma_action(&sv(1, 1, &[])).unwrap(), sv(1, 1, &[1, 2]));
        assert_eq!(sigma_action(&sv(1, 1, &[1, 2])).unwrap(), sv(1, 1, &[]));
        assert_eq!(sigma_action(&sv(1, 1, &[1])).unwrap(), sv(1, 1, &[1]));
        assert_eq!(sigma_action(&sv(1, 1, &[2])).unwrap(), sv(1, 1, &[2]));
    }

    #[test]
    fn sigma_example_u21() {
        assert_eq!(sigma_action(&sv(2, 1, &[1, 2, 3])).unwrap(), sv(2, 1, &[2]));
    }

    #[test]
    fn sigma_undefined_for_definite_signature() {
        assert!(sigma_action(&sv(2, 0, &[1])).is_err());
    }

    #[test]
    fn normalizer_matrix_lies_in_the_complexified_group() {
        use crate::matrix::Matrix;
        use crate::scalar::rat_int;
        use crate::QMat;
        for (p, q) in [(1usize, 1usize), (2, 1), (2, 2), (3, 1)] {
            let n = p + q;
            let nm = sigma_normalizer_matrix(p, q).unwrap();
            // Commutes with the realified complex structure (2x2 blocks of
            // the rotation by i down the diagonal).
            let jblk: QMat = Matrix::from_fn(2 * n, 2 * n, |r, c| {
                if r / 2 != c / 2 {
                    rat_int(0)
                } else if r % 2 == 0 && c % 2 == 1 {
                    rat_int(1)
                } else if r % 2 == 1 && c % 2 == 0 {
                    rat_int(-1)
                } else {
                    rat_int(0)
                }
            });
            let jg = crate::matrix::qmat_to_gmat(&jblk);
            assert_eq!(nm.mul_ref(&jg).unwrap(), jg.mul_ref(&nm).unwrap());
            // Preserves the realified Hermitian Gram exactly (transpose,
            // not conjugate transpose: these are points of the
            // complexified real group).
            let s: QMat = Matrix::from_fn(2 * n, 2 * n, |r, c| {
                if r != c {
                    rat_int(0)
                } else if r / 2 < p {
                    rat_int(1)
                } else {
                    rat_int(-1)
                }
            });
            let sg = crate::matrix::qmat_to_gmat(&s);
            let gram = nm.transpose().mul_ref(&sg).unwrap().mul_ref(&nm).unwrap();
            assert_eq!(gram, sg, "({p},{q})");
        }
    }

    #[test]
    fn closed_form_matches_matrix_oracle() {
        for p in 1..=3usize {
            for q in 1..=3usize {
                if p + q > 6 {
                    continue;
                }
                let n = p + q;
                for mask in 0u32..(1 << n) {
                    let v = SignVector::from_mask(p, q, mask);
                    let fast = sigma_action(&v).unwrap();
                    let slow = sigma_action_oracle(&v).unwrap();
                    assert_eq!(fast, slow, "p={p} q={q} mask={mask:b}");
                }
            }
        }
    }

    #[test]
    fn orbit_counts_match_p_plus_q_plus_one() {
        for p in 0..=4usize {
            for q in 0..=4usize {
                if p + q == 0 || p + q > 8 {
                    continue;
                }
                let orbits = orbit_decomposition(p, q, 20).unwrap();
                assert_eq!(orbits.len(), p + q + 1, "p={p} q={q}");
                // Exactly one canonical representative per orbit.
                let reps = canonical_representatives(p, q).unwrap();
                for orbit in &orbits {
                    let count = orbit.iter().filter(|v| reps.contains(v)).count();
                    assert_eq!(count, 1);
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_to_g(1, 1, 20).unwrap();
        assert_eq!(k, vec![sv(1, 1, &[]), sv(1, 1, &[1, 2])]);
        assert_eq!(kernel_to_g(1, 0, 20).unwrap(), vec![sv(1, 0, &[])]);
        // (2,2): all Ξ with p_Ξ = q_Ξ, count 6.
        let k22 = kernel_to_g(2, 2, 20).unwrap();
        assert_eq!(k22.len(), 6);
        for v in &k22 {
            assert_eq!(v.p_count(), v.q_count());
        }
    }

    #[test]
    fn orbit_invariant_is_p_minus_q() {
        for (p, q) in [(2, 1), (3, 2), (2, 2)] {
            let orbits = orbit_decomposition(p, q, 20).unwrap();
            for orbit in orbits {
                let base = orbit[0].p_count() as i64 - orbit[0].q_count() as i64;
                for v in &orbit {
                    assert_eq!(v.p_count() as i64 - v.q_count() as i64, base);
                }
            }
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(
            epsilon(&LocalInnerFormDatum::Real { p: 1, q: 1 }, 2).unwrap(),
            1
        );
        assert_eq!(
            epsilon(&LocalInnerFormDatum::Real { p: 2, q: 0 }, 2).unwrap(),
            -1
        );
        assert_eq!(
            epsilon(&LocalInnerFormDatum::FiniteSplit { m: 1 }, 4).unwrap(),
            -1
        );
        assert_eq!(
            epsilon(&LocalInnerFormDatum::FiniteSplit { m: 2 }, 4).unwrap(),
            1
        );
        assert!(epsilon(&LocalInnerFormDatum::Real { p: 1, q: 2 }, 3).is_err());
    }

    #[test]
    fn gluing_criterion() {
        // Odd n always glues.
        assert!(global_exists(&[LocalInnerFormDatum::FiniteSplit { m: 1 }], 3).unwrap());
        // Single real (2,0): product -1, rejected.
        assert!(!global_exists(&[LocalInnerFormDatum::Real { p: 2, q: 0 }], 2).unwrap());
        // Adding a non-quasi-split inert place fixes the parity.
        assert!(global_exists(
            &[
                LocalInnerFormDatum::Real { p: 2, q: 0 },
                LocalInnerFormDatum::FiniteNonsplit { quasi_split: false },
            ],
            2
        )
        .unwrap());
        // Invariant under permutation and default insertion.
        assert!(global_exists(
            &[
                LocalInnerFormDatum::FiniteNonsplit { quasi_split: false },
                LocalInnerFormDatum::FiniteNonsplit { quasi_split: true },
                LocalInnerFormDatum::Real { p: 2, q: 0 },
            ],
            2
        )
        .unwrap());
    }

    #[test]
    fn division_criterion() {
        assert!(division_algebra_sufficient(&[1, 4], 4).unwrap());
        assert!(!division_algebra_sufficient(&[2, 4], 4).unwrap());
        assert!(division_algebra_sufficient(&[3, 2], 6).unwrap());
        assert!(!division_algebra_sufficient(&[], 4).unwrap());
        assert!(division_algebra_sufficient(&[5], 4).is_err());
    }
}
