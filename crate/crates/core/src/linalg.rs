//! Exact dense linear algebra: fraction-free determinants, Sylvester
//! positivity tests, row reduction and kernels over a field, Hermite and
//! Smith normal forms over the integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{gmat_re_im, Matrix};
use crate::scalar::{Field, Ring};
use crate::{GMat, Int, QMat, Rat, ZMat};

/// The standard symplectic Gram matrix `[[0, I_d], [-I_d, 0]]` of size 2d.
pub fn symplectic_gram<T: Ring>(d: usize) -> Result<Matrix<T>> {
    if d == 0 {
        return Err(Error::domain("symplectic gram needs d >= 1"));
    }
    Ok(Matrix::from_fn(2 * d, 2 * d, |r, c| {
        if c == r + d {
            T::one()
        } else if r == c + d {
            -T::one()
        } else {
            T::zero()
        }
    }))
}

/// Exact determinant by fraction-free Bareiss elimination. Works over any
/// integral domain whose `Div` is exact on exact multiples (integers,
/// rationals, Gaussian rationals).
pub fn det_bareiss<T>(m: &Matrix<T>) -> Result<T>
where
    T: Ring + std::ops::Div<Output = T>,
{
    if !m.is_square() {
        return Err(Error::shape("determinant of non-square matrix"));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let pivot = ((k + 1)..n).find(|&r| !a.at(r, k).is_zero());
            match pivot {
                Some(r) => {
                    for c in 0..n {
                        let x = a.at(k, c).clone();
                        let y = a.at(r, c).clone();
                        a.set(k, c, y);
                        a.set(r, c, x);
                    }
                    sign = !sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a.at(i, j).clone() * a.at(k, k).clone()
                    - a.at(i, k).clone() * a.at(k, j).clone();
                a.set(i, j, num / prev.clone());
            }
            a.set(i, k, T::zero());
        }
        prev = a.at(k, k).clone();
    }
    let det = a.at(n - 1, n - 1).clone();
    Ok(if sign { -det } else { det })
}

/// Sylvester criterion: a symmetric rational matrix is positive definite iff
/// every leading principal minor is positive. Exact.
pub fn is_positive_definite(m: &QMat) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::shape("positive definiteness needs a square matrix"));
    }
    if !m.is_symmetric() {
        return Err(Error::shape("positive definiteness needs a symmetric matrix"));
    }
    for k in 1..=m.rows() {
        let minor = det_bareiss(&m.leading(k))?;
        if !minor.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_negative_definite(m: &QMat) -> Result<bool> {
    is_positive_definite(&m.neg_ref())
}

/// Positive definiteness of a Gaussian-Hermitian matrix, reduced to the
/// `2n × 2n` real symmetric realification `[[S, -A], [A, S]]` where
/// `H = S + iA`.
pub fn hermitian_is_positive_definite(h: &GMat) -> Result<bool> {
    if !h.is_square() {
        return Err(Error::shape("hermitian test needs a square matrix"));
    }
    let ct = crate::matrix::gmat_conj_transpose(h);
    if *h != ct {
        return Err(Error::shape("matrix is not hermitian"));
    }
    let (s, a) = gmat_re_im(h);
    let real = QMat::block2x2(&s, &a.neg_ref(), &a, &s)?;
    is_positive_definite(&real)
}

/// Reduced row echelon form over a field, returning the reduced matrix, the
/// pivot columns, and the transform `t` with `t * m = rref`.
pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>, Matrix<T>) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut t = Matrix::<T>::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a.at(i, c).is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..cols {
                let x = a.at(r, j).clone();
                let y = a.at(p, j).clone();
                a.set(r, j, y);
                a.set(p, j, x);
            }
            for j in 0..rows {
                let x = t.at(r, j).clone();
                let y = t.at(p, j).clone();
                t.set(r, j, y);
                t.set(p, j, x);
            }
        }
        let inv = a.at(r, c).clone();
        for j in 0..cols {
            a.set(r, j, a.at(r, j).clone() / inv.clone());
        }
        for j in 0..rows {
            t.set(r, j, t.at(r, j).clone() / inv.clone());
        }
        for i in 0..rows {
            if i != r && !a.at(i, c).is_zero() {
                let f = a.at(i, c).clone();
                for j in 0..cols {
                    let v = a.at(i, j).clone() - f.clone() * a.at(r, j).clone();
                    a.set(i, j, v);
                }
                for j in 0..rows {
                    let v = t.at(i, j).clone() - f.clone() * t.at(r, j).clone();
                    t.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots, t)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel, as columns of the returned matrix (possibly
/// zero columns wide).
pub fn kernel<T: Field>(m: &Matrix<T>) -> Matrix<T> {
    let (r, pivots, _) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::<T>::zero(cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        basis.set(fc, k, T::one());
        for (prow, &pc) in pivots.iter().enumerate() {
            basis.set(pc, k, -r.at(prow, fc).clone());
        }
    }
    basis
}

/// Solves `a * x = b` for `x` (matrix right-hand sides allowed). Requires
/// the system to be consistent with a unique solution on the column span,
/// i.e. `a` of full column rank; otherwise an error is returned.
pub fn solve<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.rows() != b.rows() {
        return Err(Error::shape("solve: row mismatch"));
    }
    let aug = a.hstack(b)?;
    let (r, pivots, _) = rref(&aug);
    let n = a.cols();
    if pivots.iter().any(|&p| p >= n) {
        return Err(Error::degenerate("solve: inconsistent system"));
    }
    if pivots.len() < n {
        return Err(Error::degenerate("solve: solution not unique"));
    }
    let mut x = Matrix::<T>::zero(n, b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x.set(p, c, r.at(row, n + c).clone());
        }
    }
    Ok(x)
}

/// Row Hermite normal form of an integer matrix of full row rank:
/// returns `(h, u)` with `h = u * m`, `u` unimodular, `h` in row-style HNF
/// (positive pivots strictly moving right, entries above pivots reduced into
/// `[0, pivot)`).
pub fn hermite_normal_form(m: &ZMat) -> Result<(ZMat, ZMat)> {
    let (h, u, r) = hnf_inner(m);
    if r < m.rows() {
        return Err(Error::domain("hermite normal form: matrix is rank deficient"));
    }
    Ok((h, u))
}

/// HNF allowing rank deficiency; returns `(h, u, rank)` with zero rows last.
pub fn hnf_full(m: &ZMat) -> (ZMat, ZMat, usize) {
    hnf_inner(m)
}

fn hnf_inner(m: &ZMat) -> (ZMat, ZMat, usize) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = ZMat::identity(rows);
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclidean reduction down column c, below pivot_row.
        loop {
            let mut best: Option<(usize, Int)> = None;
            for r in pivot_row..rows {
                let v = a.at(r, c).clone();
                if !v.is_zero() {
                    let abs = v.abs();
                    match &best {
                        Some((_, b)) if *b <= abs => {}
                        _ => best = Some((r, abs)),
                    }
                }
            }
            let Some((pr, _)) = best else { break };
            swap_rows_pair(&mut a, &mut u, pivot_row, pr);
            let pivot = a.at(pivot_row, c).clone();
            let mut any = false;
            for r in (pivot_row + 1)..rows {
                let v = a.at(r, c).clone();
                if !v.is_zero() {
                    let q = div_round(&v, &pivot);
                    row_axpy(&mut a, &mut u, r, pivot_row, &q);
                    if !a.at(r, c).is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if a.at(pivot_row, c).is_zero() {
            continue;
        }
        // Make the pivot positive.
        if a.at(pivot_row, c).is_negative() {
            negate_row(&mut a, &mut u, pivot_row);
        }
        // Reduce the entries above the pivot into [0, pivot).
        let pivot = a.at(pivot_row, c).clone();
        for r in 0..pivot_row {
            let v = a.at(r, c).clone();
            let q = v.div_floor(&pivot);
            if !q.is_zero() {
                row_axpy(&mut a, &mut u, r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (a, u, pivot_row)
}

fn swap_rows_pair(a: &mut ZMat, u: &mut ZMat, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for c in 0..a.cols() {
        let x = a.at(r1, c).clone();
        let y = a.at(r2, c).clone();
        a.set(r1, c, y);
        a.set(r2, c, x);
    }
    for c in 0..u.cols() {
        let x = u.at(r1, c).clone();
        let y = u.at(r2, c).clone();
        u.set(r1, c, y);
        u.set(r2, c, x);
    }
}

/// row r -= q * row src, applied to both the working matrix and transform.
fn row_axpy(a: &mut ZMat, u: &mut ZMat, r: usize, src: usize, q: &Int) {
    for c in 0..a.cols() {
        let v = a.at(r, c).clone() - q.clone() * a.at(src, c).clone();
        a.set(r, c, v);
    }
    for c in 0..u.cols() {
        let v = u.at(r, c).clone() - q.clone() * u.at(src, c).clone();
        u.set(r, c, v);
    }
}

fn negate_row(a: &mut ZMat, u: &mut ZMat, r: usize) {
    for c in 0..a.cols() {
        let v = -a.at(r, c).clone();
        a.set(r, c, v);
    }
    for c in 0..u.cols() {
        let v = -u.at(r, c).clone();
        u.set(r, c, v);
    }
}

fn div_round(v: &Int, p: &Int) -> Int {
    // Nearest-integer quotient, |v - q·p| ≤ |p|/2, exact on multiples.
    let two = Int::from(2);
    (v * &two + p).div_floor(&(p * &two))
}

/// Canonical basis of the lattice spanned by the columns of `m`
/// (column-style HNF): transpose, row-HNF, transpose back, dropping zero
/// columns.
pub fn lattice_column_hnf(m: &ZMat) -> ZMat {
    let (h, _, r) = hnf_inner(&m.transpose());
    let idx: Vec<usize> = (0..r).collect();
    let all: Vec<usize> = (0..h.cols()).collect();
    h.submatrix(&idx, &all).transpose()
}

/// Smith normal form divisors d₁ | d₂ | … (nonnegative, zero for rank
/// deficiency), without transforms.
pub fn snf_divisors(m: &ZMat) -> Vec<Int> {
    let (d, _, _) = smith_normal_form(m);
    let k = d.rows().min(d.cols());
    (0..k).map(|i| d.at(i, i).clone()).collect()
}

/// Full Smith normal form: returns `(d, u, v)` with `d = u * m * v`,
/// `u`, `v` unimodular and `d` diagonal with d₁ | d₂ | … .
pub fn smith_normal_form(m: &ZMat) -> (ZMat, ZMat, ZMat) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = ZMat::identity(rows);
    let mut v = ZMat::identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // Find the entry of smallest nonzero absolute value in the
            // trailing block and move it to (t, t).
            let mut best: Option<(usize, usize, Int)> = None;
            for r in t..rows {
                for c in t..cols {
                    let val = a.at(r, c).abs();
                    if !val.is_zero() {
                        match &best {
                            Some((_, _, b)) if *b <= val => {}
                            _ => best = Some((r, c, val)),
                        }
                    }
                }
            }
            let Some((br, bc, _)) = best else { break };
            swap_rows_pair(&mut a, &mut u, t, br);
            swap_cols_pair(&mut a, &mut v, t, bc);
            let mut dirty = false;
            let pivot = a.at(t, t).clone();
            for r in (t + 1)..rows {
                let val = a.at(r, t).clone();
                if !val.is_zero() {
                    let q = div_round(&val, &pivot);
                    row_axpy(&mut a, &mut u, r, t, &q);
                    if !a.at(r, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            let pivot = a.at(t, t).clone();
            for c in (t + 1)..cols {
                let val = a.at(t, c).clone();
                if !val.is_zero() {
                    let q = div_round(&val, &pivot);
                    col_axpy(&mut a, &mut v, c, t, &q);
                    if !a.at(t, c).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let pivot = a.at(t, t).clone();
            let mut fixed = true;
            'outer: for r in (t + 1)..rows {
                for c in (t + 1)..cols {
                    if !(a.at(r, c).clone() % pivot.clone()).is_zero() {
                        // Fold row r into row t and retry.
                        let one = Int::from(-1);
                        row_axpy(&mut a, &mut u, t, r, &one);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a.at(t, t).is_negative() {
            negate_row(&mut a, &mut u, t);
        }
    }
    (a, u, v)
}

fn swap_cols_pair(a: &mut ZMat, v: &mut ZMat, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for r in 0..a.rows() {
        let x = a.at(r, c1).clone();
        let y = a.at(r, c2).clone();
        a.set(r, c1, y);
        a.set(r, c2, x);
    }
    for r in 0..v.rows() {
        let x = v.at(r, c1).clone();
        let y = v.at(r, c2).clone();
        v.set(r, c1, y);
        v.set(r, c2, x);
    }
}

/// col c -= q * col src.
fn col_axpy(a: &mut ZMat, v: &mut ZMat, c: usize, src: usize, q: &Int) {
    for r in 0..a.rows() {
        let val = a.at(r, c).clone() - q.clone() * a.at(r, src).clone();
        a.set(r, c, val);
    }
    for r in 0..v.rows() {
        let val = v.at(r, c).clone() - q.clone() * v.at(r, src).clone();
        v.set(r, c, val);
    }
}

/// Integer symplectic Gram-Schmidt: given a unimodular alternating integer
/// Gram matrix `p` of size 2d, returns unimodular `w` with
/// `wᵀ · p · w = [[0, I], [-I, 0]]`.
pub fn symplectic_basis_z(p: &ZMat) -> Result<ZMat> {
    if !p.is_square() || p.rows() % 2 != 0 {
        return Err(Error::shape("symplectic basis needs an even-size square Gram"));
    }
    if !p.is_antisymmetric() {
        return Err(Error::domain("Gram matrix is not alternating"));
    }
    let n = p.rows();
    let d = n / 2;
    let psi = |x: &[Int], y: &[Int]| -> Int {
        let mut acc = Int::zero();
        for r in 0..n {
            for c in 0..n {
                acc += x[r].clone() * p.at(r, c).clone() * y[c].clone();
            }
        }
        acc
    };
    let mut remaining: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|r| if r == i { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut a_vecs: Vec<Vec<Int>> = Vec::new();
    let mut b_vecs: Vec<Vec<Int>> = Vec::new();
    for _ in 0..d {
        let a = remaining[0].clone();
        // ψ(a, ·) is primitive on the remaining lattice, so the value gcd is 1.
        let vals: Vec<Int> = remaining[1..].iter().map(|r| psi(&a, r)).collect();
        let (g, coeffs) = egcd_many(&vals);
        if !g.is_one() {
            return Err(Error::domain("Gram matrix is not unimodular"));
        }
        let mut b = vec![Int::zero(); n];
        for (r, c) in remaining[1..].iter().zip(coeffs.iter()) {
            for k in 0..n {
                b[k] += c.clone() * r[k].clone();
            }
        }
        debug_assert!(psi(&a, &b).is_one());
        // Project the rest into the ψ-complement of (a, b).
        let mut projected: Vec<Vec<Int>> = Vec::new();
        for w in remaining[1..].iter() {
            let wa = psi(w, &a);
            let wb = psi(w, &b);
            let mut wp = w.clone();
            for k in 0..n {
                wp[k] = wp[k].clone() - wb.clone() * a[k].clone() + wa.clone() * b[k].clone();
            }
            projected.push(wp);
        }
        a_vecs.push(a);
        b_vecs.push(b);
        if projected.iter().all(|v| v.iter().all(|x| x.is_zero())) {
            remaining = Vec::new();
        } else {
            let gen = ZMat::from_fn(n, projected.len(), |r, c| projected[c][r].clone());
            let h = lattice_column_hnf(&gen);
            remaining = (0..h.cols()).map(|c| h.col(c)).collect();
        }
    }
    let mut cols = a_vecs;
    cols.extend(b_vecs);
    let w = ZMat::from_fn(n, n, |r, c| cols[c][r].clone());
    let m: ZMat = symplectic_gram(d)?;
    if w.transpose().mul_ref(p)?.mul_ref(&w)? != m {
        return Err(Error::internal("symplectic Gram-Schmidt failed"));
    }
    Ok(w)
}

/// gcd of a list together with Bézout coefficients.
fn egcd_many(vals: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut coeffs = vec![Int::zero(); vals.len()];
    for (i, v) in vals.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = v.abs();
            coeffs[i] = if v.is_negative() { -Int::one() } else { Int::one() };
            continue;
        }
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= e.x.clone();
        }
        coeffs[i] = e.y.clone();
        g = e.gcd;
    }
    (g, coeffs)
}

/// Clears denominators: returns `(n, s)` with `m = n / s`, `s` the least
/// common multiple of all entry denominators.
pub fn qmat_clear_denominators(m: &QMat) -> (ZMat, Int) {
    let mut lcm = Int::one();
    for e in m.entries() {
        lcm = num_integer::lcm(lcm, e.denom().clone());
    }
    let n = m.map(|e| {
        let v: Rat = e * Rat::from_integer(lcm.clone());
        v.to_integer()
    });
    (n, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::zmat_to_qmat;
    use crate::sampling::SplitMix64;
    use crate::scalar::{rat, rat_int};

    fn zmat(rows: Vec<Vec<i64>>) -> ZMat {
        ZMat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Int::from).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn symplectic_gram_small() {
        let m: ZMat = symplectic_gram(1).unwrap();
        assert_eq!(m, zmat(vec![vec![0, 1], vec![-1, 0]]));
        let m3: ZMat = symplectic_gram(3).unwrap();
        assert!(m3.is_antisymmetric());
        assert!(symplectic_gram::<Int>(0).is_err());
    }

    #[test]
    fn positive_definite_examples() {
        let id = QMat::identity(2);
        assert!(is_positive_definite(&id).unwrap());
        // Minors 2 and 1.
        let good = zmat_to_qmat(&zmat(vec![vec![2, 1], vec![1, 1]]));
        assert!(is_positive_definite(&good).unwrap());
        // det = -3.
        let bad = zmat_to_qmat(&zmat(vec![vec![1, 2], vec![2, 1]]));
        assert!(!is_positive_definite(&bad).unwrap());
        let nonsym = zmat_to_qmat(&zmat(vec![vec![1, 2], vec![0, 1]]));
        assert!(is_positive_definite(&nonsym).is_err());
        let nonsquare = zmat_to_qmat(&zmat(vec![vec![1, 2]]));
        assert!(is_positive_definite(&nonsquare).is_err());
    }

    /// Floating-point eigenvalue oracle for the Sylvester test: Jacobi
    /// rotations on the f64 image of the matrix.
    fn eigenvalues_f64(m: &QMat) -> Vec<f64> {
        use num_traits::ToPrimitive;
        let n = m.rows();
        let mut a = vec![vec![0f64; n]; n];
        for r in 0..n {
            for c in 0..n {
                a[r][c] = m.at(r, c).to_f64().unwrap();
            }
        }
        for _ in 0..100 {
            let mut off = 0.0;
            for r in 0..n {
                for c in 0..n {
                    if r != c {
                        off += a[r][c] * a[r][c];
                    }
                }
            }
            if off < 1e-24 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    if a[p][q].abs() < 1e-18 {
                        continue;
                    }
                    let theta = 0.5 * (2.0 * a[p][q]).atan2(a[q][q] - a[p][p]);
                    let (s, c) = theta.sin_cos();
                    for k in 0..n {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][i]).collect()
    }

    #[test]
    fn sylvester_matches_float_eigenvalue_oracle() {
        let mut rng = SplitMix64::new(0x51e57e5);
        for _ in 0..500 {
            let n = 1 + (rng.next_u64() % 6) as usize;
            let mut m = QMat::zero(n, n);
            for r in 0..n {
                for c in r..n {
                    let v = rat(rng.next_i64_in(-6, 6), 1 + rng.next_i64_in(0, 3).abs());
                    m.set(r, c, v.clone());
                    m.set(c, r, v);
                }
            }
            let exact = is_positive_definite(&m).unwrap();
            let eig = eigenvalues_f64(&m);
            let oracle = eig.iter().all(|&l| l > 1e-9);
            assert_eq!(exact, oracle, "disagreement on {m:?} (eigs {eig:?})");
        }
    }

    #[test]
    fn hnf_examples() {
        let id = zmat(vec![vec![1, 0], vec![0, 1]]);
        let (h, u) = hermite_normal_form(&id).unwrap();
        assert_eq!(h, id);
        assert_eq!(u, id);

        let twos = zmat(vec![vec![2, 0], vec![0, 2]]);
        let (h, _) = hermite_normal_form(&twos).unwrap();
        assert_eq!(h, twos);

        let m = zmat(vec![vec![1, 2], vec![3, 4]]);
        let (h, u) = hermite_normal_form(&m).unwrap();
        assert_eq!(u.mul_ref(&m).unwrap(), h);
        assert_eq!(h.at(0, 0), &Int::from(1));
        assert_eq!(det_bareiss(&h).unwrap().abs(), Int::from(2));
        assert_eq!(det_bareiss(&u).unwrap().abs(), Int::from(1));

        let deficient = zmat(vec![vec![1, 2], vec![2, 4]]);
        assert!(hermite_normal_form(&deficient).is_err());
    }

    #[test]
    fn hnf_idempotence_random() {
        let mut rng = SplitMix64::new(0xcafe);
        for _ in 0..50 {
            let n = 2 + (rng.next_u64() % 3) as usize;
            let m = ZMat::from_fn(n, n, |_, _| Int::from(rng.next_i64_in(-9, 9)));
            if det_bareiss(&m).unwrap().is_zero() {
                continue;
            }
            let (h, _) = hermite_normal_form(&m).unwrap();
            let (h2, _) = hermite_normal_form(&h).unwrap();
            assert_eq!(h, h2);
        }
    }

    #[test]
    fn inverse_exactness_random() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..40 {
            let n = 1 + (rng.next_u64() % 4) as usize;
            let m = QMat::from_fn(n, n, |_, _| rat(rng.next_i64_in(-5, 5), 1));
            if det_bareiss(&m).unwrap().is_zero() {
                continue;
            }
            let inv = m.inverse().unwrap();
            assert!(m.mul_ref(&inv).unwrap().is_identity());
        }
    }

    #[test]
    fn kernel_and_solve() {
        let a = zmat_to_qmat(&zmat(vec![vec![1, 2, 3], vec![2, 4, 6]]));
        let k = kernel(&a);
        assert_eq!(k.cols(), 2);
        let prod = a.mul_ref(&k).unwrap();
        assert!(prod.entries().all(|e| e.is_zero()));

        let b = zmat_to_qmat(&zmat(vec![vec![5], vec![11]]));
        let m = zmat_to_qmat(&zmat(vec![vec![2, 1], vec![3, 4]]));
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_ref(&x).unwrap(), b);
    }

    #[test]
    fn smith_normal_form_shapes() {
        let m = zmat(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(u.mul_ref(&m).unwrap().mul_ref(&v).unwrap(), d);
        assert_eq!(det_bareiss(&u).unwrap().abs(), Int::one());
        assert_eq!(det_bareiss(&v).unwrap().abs(), Int::one());
        let divs = snf_divisors(&m);
        for w in divs.windows(2) {
            if !w[0].is_zero() {
                assert!((w[1].clone() % w[0].clone()).is_zero());
            }
        }
    }

    #[test]
    fn bareiss_matches_expansion() {
        let m = zmat(vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        // Cofactor expansion by hand: 3*(25-54) - 1*(5-18) + 4*(6-10) = -90.
        assert_eq!(det_bareiss(&m).unwrap(), Int::from(-90));
        let q = zmat_to_qmat(&m);
        assert_eq!(det_bareiss(&q).unwrap(), rat_int(-90));
    }

    #[test]
    fn gaussian_conjugation_distributes_over_products() {
        use crate::matrix::gmat_conj;
        use crate::scalar::GaussRat;
        use crate::GMat;
        let mut rng = SplitMix64::new(0x6a55);
        for _ in 0..30 {
            let n = 1 + (rng.next_u64() % 3) as usize;
            let sample = |rng: &mut SplitMix64| {
                GMat::from_fn(n, n, |_, _| {
                    GaussRat::new(rng.next_rat(4, 3), rng.next_rat(4, 3))
                })
            };
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let lhs = gmat_conj(&a.mul_ref(&b).unwrap());
            let rhs = gmat_conj(&a).mul_ref(&gmat_conj(&b)).unwrap();
            assert_eq!(lhs, rhs);
            // Exact inverses over Q(i) when nonsingular.
            if !det_bareiss(&a).unwrap().is_zero() {
                let inv = a.inverse().unwrap();
                assert!(a.mul_ref(&inv).unwrap().is_identity());
            }
        }
    }
}
