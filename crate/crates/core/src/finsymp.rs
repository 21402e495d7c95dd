//! GSp_{2d} and Sp_{2d} over ℤ/nℤ: validation, exact enumeration for tiny
//! parameters, integral lifting through the elementary generators, the
//! multiplier component map, and Hecke double cosets computed by sublattice
//! enumeration with HNF-canonical representatives.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, lattice_column_hnf, snf_divisors, symplectic_gram};
use crate::matrix::zmat_to_imat;
use crate::modn::{gcd_i64, mat_mod, mul_mod, units_mod};
use crate::{IMat, Int, ZMat};

pub const DEFAULT_ENUM_BUDGET: u64 = 1_000_000;

/// An element of GSp_{2d}(ℤ/nℤ): reduced matrix plus its unit multiplier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSpModN {
    d: usize,
    n: i64,
    mat: IMat,
    multiplier: i64,
}

impl GSpModN {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> i64 {
        self.n
    }

    pub fn matrix(&self) -> &IMat {
        &self.mat
    }

    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    pub fn compose(&self, rhs: &GSpModN) -> Result<GSpModN> {
        if self.d != rhs.d || self.n != rhs.n {
            return Err(Error::shape("composition of mismatched elements"));
        }
        validate(&mul_mod(&self.mat, &rhs.mat, self.n)?, self.n)
    }
}

/// Checks the similitude identity gᵀMg = c·M mod n and computes the unit c.
pub fn validate(mat: &IMat, n: i64) -> Result<GSpModN> {
    if n < 1 {
        return Err(Error::domain("modulus must be positive"));
    }
    if !mat.is_square() || mat.rows() % 2 != 0 {
        return Err(Error::shape("similitude must be square of even size"));
    }
    let d = mat.rows() / 2;
    let mat = mat_mod(mat, n);
    let m: IMat = symplectic_gram(d)?;
    let gram = mat_mod(&mat.transpose().mul_ref(&m)?.mul_ref(&mat)?, n);
    let c = *gram.at(0, d);
    if n > 1 && gcd_i64(c, n) != 1 {
        return Err(Error::domain("multiplier is not a unit mod n"));
    }
    if gram != mat_mod(&m.scale(&c), n) {
        return Err(Error::domain("matrix is not a symplectic similitude mod n"));
    }
    Ok(GSpModN {
        d,
        n,
        mat,
        multiplier: if n == 1 { 0 } else { c },
    })
}

/// The component-group invariant: the multiplier c(g) ∈ (ℤ/nℤ)ˣ. Its
/// fibers on GSp_{2d}(ℤ/nℤ) are the Sp-cosets.
pub fn component_class(g: &GSpModN) -> i64 {
    g.multiplier()
}

/// The multiplier section α ↦ [[0, αI], [-I, 0]], which satisfies
/// c(s(α)) = α exactly.
pub fn adjusted_section(alpha: i64, d: usize, n: i64) -> Result<GSpModN> {
    if n > 1 && gcd_i64(alpha, n) != 1 {
        return Err(Error::domain("section parameter must be a unit"));
    }
    let mat = IMat::from_fn(2 * d, 2 * d, |r, c| {
        if c == r + d {
            alpha
        } else if r == c + d {
            -1
        } else {
            0
        }
    });
    let g = validate(&mat, n)?;
    if n > 1 && g.multiplier() != alpha.rem_euclid(n) {
        return Err(Error::internal("section has wrong multiplier"));
    }
    Ok(g)
}

/// |Sp_{2d}(𝔽_p)| = p^{d²}·∏_{i=1}^{d}(p^{2i} − 1).
pub fn sp_order_prime(d: usize, p: i64) -> Int {
    let p = Int::from(p);
    let mut order = p.pow((d * d) as u32);
    for i in 1..=d {
        order *= p.pow(2 * i as u32) - Int::one();
    }
    order
}

/// |Sp_{2d}(ℤ/p^kℤ)| = p^{(k−1)·d(2d+1)}·|Sp_{2d}(𝔽_p)|.
pub fn sp_order_prime_power(d: usize, p: i64, k: u32) -> Int {
    let dim = d * (2 * d + 1);
    Int::from(p).pow((k - 1) * dim as u32) * sp_order_prime(d, p)
}

/// |Sp_{2d}(ℤ/nℤ)| by multiplicativity over the prime-power factors of n.
pub fn sp_order(d: usize, n: i64) -> Result<Int> {
    if n < 1 {
        return Err(Error::domain("modulus must be positive"));
    }
    let mut order = Int::one();
    for (p, k) in factorize(n) {
        order *= sp_order_prime_power(d, p, k);
    }
    Ok(order)
}

/// |GSp_{2d}(ℤ/nℤ)| = φ(n)·|Sp_{2d}(ℤ/nℤ)|.
pub fn gsp_order(d: usize, n: i64) -> Result<Int> {
    Ok(sp_order(d, n)? * Int::from(units_mod(n).len()))
}

pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exact enumeration of {g : gᵀMg = c·M mod n} by solving the Gram
/// constraints column by column with early pruning.
fn enumerate_with_multiplier(d: usize, n: i64, c: i64) -> Vec<IMat> {
    let size = 2 * d;
    let m: IMat = symplectic_gram(d).expect("d >= 1");
    let target = mat_mod(&m.scale(&c), n);
    let psi = |x: &[i64], y: &[i64]| -> i64 {
        let mut acc: i64 = 0;
        for i in 0..d {
            acc += x[i] * y[d + i] - x[d + i] * y[i];
        }
        acc.rem_euclid(n)
    };
    // All column candidates, reused at every level.
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; size];
    loop {
        all.push(cur.clone());
        let mut idx = size;
        loop {
            if idx == 0 {
                break;
            }
            idx -= 1;
            cur[idx] += 1;
            if cur[idx] < n {
                break;
            }
            cur[idx] = 0;
        }
        if cur.iter().all(|&v| v == 0) {
            break;
        }
    }
    fn rec(
        cols: &mut Vec<Vec<i64>>,
        all: &[Vec<i64>],
        size: usize,
        target: &IMat,
        psi: &dyn Fn(&[i64], &[i64]) -> i64,
        out: &mut Vec<IMat>,
    ) {
        let j = cols.len();
        if j == size {
            out.push(IMat::from_fn(size, size, |r, c| cols[c][r]));
            return;
        }
        'cand: for cand in all {
            for (i, prev) in cols.iter().enumerate() {
                if psi(prev, cand) != *target.at(i, j) {
                    continue 'cand;
                }
            }
            cols.push(cand.clone());
            rec(cols, all, size, target, psi, out);
            cols.pop();
        }
    }
    let mut out = Vec::new();
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(size);
    rec(&mut cols, &all, size, &target, &psi, &mut out);
    out
}

/// All of Sp_{2d}(ℤ/nℤ), within the element budget.
pub fn enumerate_sp(d: usize, n: i64, budget: u64) -> Result<Vec<GSpModN>> {
    let order = sp_order(d, n)?;
    if order > Int::from(budget) {
        return Err(Error::resource(format!(
            "|Sp_{}(Z/{n})| = {order} exceeds budget {budget}",
            2 * d
        )));
    }
    let elems = enumerate_with_multiplier(d, n, 1i64.rem_euclid(n));
    if Int::from(elems.len()) != order {
        return Err(Error::internal(format!(
            "enumeration found {} elements, order formula says {order}",
            elems.len()
        )));
    }
    elems.iter().map(|m| validate(m, n)).collect()
}

/// All of GSp_{2d}(ℤ/nℤ), within the element budget.
pub fn enumerate_gsp(d: usize, n: i64, budget: u64) -> Result<Vec<GSpModN>> {
    let order = gsp_order(d, n)?;
    if order > Int::from(budget) {
        return Err(Error::resource(format!(
            "|GSp_{}(Z/{n})| = {order} exceeds budget {budget}",
            2 * d
        )));
    }
    let mut out = Vec::new();
    if n == 1 {
        out.push(validate(&IMat::identity(2 * d), 1)?);
        return Ok(out);
    }
    for c in units_mod(n) {
        for m in enumerate_with_multiplier(d, n, c) {
            out.push(validate(&m, n)?);
        }
    }
    if Int::from(out.len()) != order {
        return Err(Error::internal("GSp enumeration does not match order formula"));
    }
    Ok(out)
}

/// Lifts elements of Sp_{2d}(ℤ/nℤ) to Sp_{2d}(ℤ) by factoring through the
/// elementary generators (the standard involution and the symmetric
/// translations), found by breadth-first search at the finite level. That
/// every element is reached is exactly surjectivity of the reduction map,
/// which the constructor verifies against the order formula.
pub struct IntegralLifter {
    d: usize,
    n: i64,
    generators: Vec<ZMat>,
    // element key -> (parent key, generator index applied on the left).
    parents: HashMap<Vec<i64>, Option<(Vec<i64>, usize)>>,
}

impl IntegralLifter {
    pub fn new(d: usize, n: i64, budget: u64) -> Result<Self> {
        let order = sp_order(d, n)?;
        if order > Int::from(budget) {
            return Err(Error::resource(format!(
                "lifting table for |Sp| = {order} exceeds budget {budget}"
            )));
        }
        let generators = integral_generators(d)?;
        let size = 2 * d;
        let id = IMat::identity(size);
        let key = |m: &IMat| -> Vec<i64> { m.vectorize() };
        let mut parents: HashMap<Vec<i64>, Option<(Vec<i64>, usize)>> = HashMap::new();
        parents.insert(key(&mat_mod(&id, n)), None);
        let mut queue = VecDeque::new();
        queue.push_back(mat_mod(&id, n));
        let gens_mod: Vec<IMat> = generators
            .iter()
            .map(|g| mat_mod(&zmat_to_imat(g).expect("small entries"), n))
            .collect();
        while let Some(current) = queue.pop_front() {
            let cur_key = key(&current);
            for (gi, gen) in gens_mod.iter().enumerate() {
                let next = mul_mod(gen, &current, n)?;
                let next_key = key(&next);
                if !parents.contains_key(&next_key) {
                    parents.insert(next_key, Some((cur_key.clone(), gi)));
                    queue.push_back(next);
                }
            }
        }
        if Int::from(parents.len()) != order {
            return Err(Error::internal(
                "generator closure does not reach all of Sp(Z/n); this would falsify surjectivity",
            ));
        }
        Ok(IntegralLifter {
            d,
            n,
            generators,
            parents,
        })
    }

    /// Integral symplectic lift of a multiplier-1 element: reduces to the
    /// input mod n and satisfies gᵀMg = M over ℤ exactly.
    pub fn lift(&self, g: &GSpModN) -> Result<ZMat> {
        if g.dim() != self.d || g.modulus() != self.n {
            return Err(Error::shape("lifter parameter mismatch"));
        }
        if self.n > 1 && g.multiplier() != 1 {
            return Err(Error::precondition("only multiplier-1 elements lift to Sp(Z)"));
        }
        let mut word = Vec::new();
        let mut cursor = g.matrix().vectorize();
        loop {
            match self.parents.get(&cursor) {
                None => return Err(Error::internal("element missing from closure")),
                Some(None) => break,
                Some(Some((parent, gi))) => {
                    word.push(*gi);
                    cursor = parent.clone();
                }
            }
        }
        // The walk multiplies generators on the left going g -> identity,
        // so g is the product of the recorded generators in recorded order.
        let size = 2 * self.d;
        let mut lift = ZMat::identity(size);
        for gi in word {
            lift = lift.mul_ref(&self.generators[gi])?;
        }
        let m: ZMat = symplectic_gram(self.d)?;
        if lift.transpose().mul_ref(&m)?.mul_ref(&lift)? != m {
            return Err(Error::internal("lift is not symplectic over Z"));
        }
        if reduce_zmat(&lift, self.n) != *g.matrix() {
            return Err(Error::internal("lift does not reduce to the input"));
        }
        Ok(lift)
    }
}

/// Residues of a big-integer matrix (entries of lifts can exceed i64).
pub fn reduce_zmat(m: &ZMat, n: i64) -> IMat {
    let nn = Int::from(n);
    m.map(|v| v.mod_floor(&nn).to_i64().expect("residue fits"))
}

/// The elementary integral generators of Sp_{2d}(ℤ): the standard
/// involution and the symmetric translations for a basis of symmetric
/// matrices, plus inverses.
fn integral_generators(d: usize) -> Result<Vec<ZMat>> {
    let mut gens = Vec::new();
    let j: ZMat = symplectic_gram(d)?;
    gens.push(j.clone());
    gens.push(j.neg_ref());
    let id = ZMat::identity(d);
    let z = ZMat::zero(d, d);
    let mut sym_basis = Vec::new();
    for i in 0..d {
        for k in i..d {
            let mut s = ZMat::zero(d, d);
            s.set(i, k, Int::one());
            if i != k {
                s.set(k, i, Int::one());
            }
            sym_basis.push(s);
        }
    }
    for s in sym_basis {
        gens.push(ZMat::block2x2(&id, &s, &z, &id)?);
        gens.push(ZMat::block2x2(&id, &s.neg_ref(), &z, &id)?);
    }
    Ok(gens)
}

/// One-off lift; builds the closure table for (d, n) and lifts g.
pub fn lift_to_integral(g: &GSpModN, budget: u64) -> Result<ZMat> {
    IntegralLifter::new(g.dim(), g.modulus(), budget)?.lift(g)
}

/// Identifies a Hecke double coset at a prime: the elementary divisors of
/// its lattices and the similitude multiplier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DoubleCosetLabel {
    pub divisors: Vec<Int>,
    pub multiplier: Int,
}

/// Left-coset representatives of K g K, as HNF-canonical lattice bases in
/// deterministic (lexicographic) order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetList {
    d: usize,
    prime: i64,
    label: DoubleCosetLabel,
    reps: Vec<ZMat>,
}

impl CosetList {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn prime(&self) -> i64 {
        self.prime
    }

    pub fn label(&self) -> &DoubleCosetLabel {
        &self.label
    }

    pub fn reps(&self) -> &[ZMat] {
        &self.reps
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }
}

/// Decomposes K·diag(p^{a_1},…,p^{a_{2d}})·K into left cosets by
/// enumerating sublattices of ℤ^{2d} with the prescribed elementary
/// divisors whose symplectic Gram is exactly divisible by the multiplier.
pub fn double_coset_decompose(d: usize, p: i64, exponents: &[u32]) -> Result<CosetList> {
    if exponents.len() != 2 * d {
        return Err(Error::shape("need 2d diagonal exponents"));
    }
    let f = factorize(p);
    if p < 2 || f.len() != 1 || f[0].1 != 1 {
        return Err(Error::domain("p must be prime"));
    }
    // Similitude condition for a diagonal: a_i + a_{d+i} constant.
    let m0 = exponents[0] + exponents[d];
    for i in 0..d {
        if exponents[i] + exponents[d + i] != m0 {
            return Err(Error::domain("diagonal is not a symplectic similitude"));
        }
    }
    let multiplier = Int::from(p).pow(m0);
    let mut divisors: Vec<Int> = exponents.iter().map(|&a| Int::from(p).pow(a)).collect();
    divisors.sort();
    let total_exp: u32 = exponents.iter().sum();

    let size = 2 * d;
    let m: ZMat = symplectic_gram(d)?;
    let mut reps = Vec::new();
    for diag in diagonal_tuples(total_exp, size, p) {
        let mut t = ZMat::zero(size, size);
        for i in 0..size {
            t.set(i, i, diag[i].clone());
        }
        let positions: Vec<(usize, usize)> = (0..size)
            .flat_map(|r| ((r + 1)..size).map(move |c| (r, c)))
            .collect();
        enumerate_offdiag(&mut t, &positions, 0, &diag, &mut |cand: &ZMat| {
            let mut snf = snf_divisors(cand);
            snf.sort();
            if snf != divisors {
                return Ok(());
            }
            let gram = cand.transpose().mul_ref(&m)?.mul_ref(cand)?;
            if !gram
                .entries()
                .all(|e| (e.clone() % multiplier.clone()).is_zero())
            {
                return Ok(());
            }
            let scaled = gram.map(|e| e.clone() / multiplier.clone());
            if !det_bareiss(&scaled)?.abs().is_one() {
                return Ok(());
            }
            reps.push(lattice_column_hnf(cand));
            Ok(())
        })?;
    }
    reps.sort_by_key(|m| m.vectorize());
    reps.dedup();
    Ok(CosetList {
        d,
        prime: p,
        label: DoubleCosetLabel {
            divisors,
            multiplier,
        },
        reps,
    })
}

/// All ordered tuples of p-powers with exponent sum `total`.
fn diagonal_tuples(total: u32, size: usize, p: i64) -> Vec<Vec<Int>> {
    let pp = Int::from(p);
    let mut out = Vec::new();
    let mut cur = vec![0u32; size];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, p: &Int, out: &mut Vec<Vec<Int>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.iter().map(|&e| p.pow(e)).collect());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(cur, pos + 1, left - e, p, out);
        }
    }
    rec(&mut cur, 0, total, &pp, &mut out);
    out
}

/// Visits every fill-in of the strictly-upper entries, entry (r, c) ranging
/// over [0, diag[r]).
fn enumerate_offdiag(
    t: &mut ZMat,
    positions: &[(usize, usize)],
    idx: usize,
    diag: &[Int],
    visit: &mut dyn FnMut(&ZMat) -> Result<()>,
) -> Result<()> {
    if idx == positions.len() {
        return visit(t);
    }
    let (r, c) = positions[idx];
    let bound = diag[r].to_i64().unwrap_or(i64::MAX);
    for v in 0..bound {
        t.set(r, c, Int::from(v));
        enumerate_offdiag(t, positions, idx + 1, diag, visit)?;
    }
    t.set(r, c, Int::zero());
    Ok(())
}

/// A formal ℤ-linear combination of double cosets at a common (d, p).
pub type HeckeSum = Vec<(CosetList, Int)>;

pub fn hecke_sum_of(list: CosetList) -> HeckeSum {
    vec![(list, Int::one())]
}

/// Convolution with vol(K) = 1: expand representative products, regroup the
/// product lattices into double cosets, and read off the (necessarily
/// constant) multiplicities.
pub fn hecke_convolve(f1: &HeckeSum, f2: &HeckeSum) -> Result<HeckeSum> {
    if f1.is_empty() || f2.is_empty() {
        return Ok(Vec::new());
    }
    let d = f1[0].0.d;
    let p = f1[0].0.prime;
    for (l, _) in f1.iter().chain(f2.iter()) {
        if l.d != d || l.prime != p {
            return Err(Error::shape("convolution of incompatible coset lists"));
        }
    }
    let mut acc: HashMap<Vec<Int>, (ZMat, Int)> = HashMap::new();
    for (l1, c1) in f1 {
        for (l2, c2) in f2 {
            let coeff = c1.clone() * c2.clone();
            for h1 in &l1.reps {
                for h2 in &l2.reps {
                    let prod = lattice_column_hnf(&h1.mul_ref(h2)?);
                    let key = prod.vectorize();
                    acc.entry(key)
                        .and_modify(|(_, c)| *c += coeff.clone())
                        .or_insert((prod, coeff.clone()));
                }
            }
        }
    }
    // Group by double-coset label; the multiplier of a lattice is the
    // content of its symplectic Gram.
    let m: ZMat = symplectic_gram(d)?;
    let mut groups: BTreeMap<DoubleCosetLabel, Vec<(ZMat, Int)>> = BTreeMap::new();
    for (_, (lat, coeff)) in acc {
        let gram = lat.transpose().mul_ref(&m)?.mul_ref(&lat)?;
        let content = gram_content(&gram);
        let mut divisors = snf_divisors(&lat);
        divisors.sort();
        let label = DoubleCosetLabel {
            divisors,
            multiplier: content,
        };
        groups.entry(label).or_default().push((lat, coeff));
    }
    let mut out = Vec::new();
    for (label, mut members) in groups {
        let coeff = members[0].1.clone();
        if members.iter().any(|(_, c)| *c != coeff) {
            return Err(Error::internal(
                "convolution multiplicities not constant on a double coset",
            ));
        }
        members.sort_by_key(|(l, _)| l.vectorize());
        let reps = members.into_iter().map(|(l, _)| l).collect();
        out.push((
            CosetList {
                d,
                prime: p,
                label,
                reps,
            },
            coeff,
        ));
    }
    Ok(out)
}

fn gram_content(gram: &ZMat) -> Int {
    let mut g = Int::zero();
    for e in gram.entries() {
        g = g.gcd(e);
    }
    g
}

/// The unit coset list 𝟙_K (g = identity).
pub fn unit_coset(d: usize, p: i64) -> Result<CosetList> {
    double_coset_decompose(d, p, &vec![0u32; 2 * d])
}

/// Classical T_p: diag(p,…,p,1,…,1) with d entries p.
pub fn tp_coset(d: usize, p: i64) -> Result<CosetList> {
    let mut exps = vec![1u32; d];
    exps.extend(vec![0u32; d]);
    double_coset_decompose(d, p, &exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Matrix;

    fn imat(rows: Vec<Vec<i64>>) -> IMat {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn validate_examples() {
        let id = validate(&IMat::identity(2), 5).unwrap();
        assert_eq!(id.multiplier(), 1);
        let s = adjusted_section(2, 1, 5).unwrap();
        assert_eq!(s.multiplier(), 2);
        assert!(validate(&imat(vec![vec![1, 1], vec![1, 1]]), 3).is_err());
    }

    #[test]
    fn section_multiplier_exact() {
        for n in [3i64, 4, 5, 8] {
            for alpha in units_mod(n) {
                for d in 1..=2usize {
                    let s = adjusted_section(alpha, d, n).unwrap();
                    assert_eq!(s.multiplier(), alpha);
                }
            }
        }
    }

    #[test]
    fn multiplier_is_multiplicative() {
        let g = adjusted_section(2, 1, 5).unwrap();
        let h = adjusted_section(3, 1, 5).unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.multiplier(), (2 * 3) % 5);
    }

    #[test]
    fn sp_orders_small() {
        assert_eq!(sp_order(1, 2).unwrap(), Int::from(6));
        assert_eq!(sp_order(1, 3).unwrap(), Int::from(24));
        assert_eq!(sp_order(1, 4).unwrap(), Int::from(48));
        assert_eq!(sp_order(2, 2).unwrap(), Int::from(720));
        assert_eq!(sp_order(1, 6).unwrap(), Int::from(6 * 24));
    }

    #[test]
    fn enumeration_matches_order_formula() {
        assert_eq!(enumerate_sp(1, 2, DEFAULT_ENUM_BUDGET).unwrap().len(), 6);
        assert_eq!(enumerate_sp(1, 3, DEFAULT_ENUM_BUDGET).unwrap().len(), 24);
        assert_eq!(enumerate_sp(1, 4, DEFAULT_ENUM_BUDGET).unwrap().len(), 48);
        assert!(enumerate_sp(2, 9, 1000).is_err());
    }

    #[test]
    fn component_fibers_equal() {
        let all = enumerate_gsp(1, 3, DEFAULT_ENUM_BUDGET).unwrap();
        let mut fibers: BTreeMap<i64, usize> = BTreeMap::new();
        for g in &all {
            *fibers.entry(component_class(g)).or_default() += 1;
        }
        assert_eq!(fibers.len(), 2);
        assert!(fibers.values().all(|&v| v == 24));
    }

    #[test]
    fn lift_exhaustive_small() {
        for n in [2i64, 3] {
            let lifter = IntegralLifter::new(1, n, DEFAULT_ENUM_BUDGET).unwrap();
            for g in enumerate_sp(1, n, DEFAULT_ENUM_BUDGET).unwrap() {
                let lift = lifter.lift(&g).unwrap();
                let m: ZMat = symplectic_gram(1).unwrap();
                assert_eq!(
                    lift.transpose().mul_ref(&m).unwrap().mul_ref(&lift).unwrap(),
                    m
                );
            }
        }
    }

    #[test]
    fn lift_example_mod_two() {
        let g = validate(&imat(vec![vec![0, 1], vec![1, 0]]), 2).unwrap();
        let lift = lift_to_integral(&g, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(reduce_zmat(&lift, 2), *g.matrix());
    }

    #[test]
    fn coset_degrees() {
        assert_eq!(unit_coset(1, 3).unwrap().degree(), 1);
        assert_eq!(tp_coset(1, 3).unwrap().degree(), 4);
        assert_eq!(tp_coset(2, 2).unwrap().degree(), 15);
    }

    #[test]
    fn tp_squared_decomposition() {
        let p = 3i64;
        let tp = hecke_sum_of(tp_coset(1, p).unwrap());
        let sq = hecke_convolve(&tp, &tp).unwrap();
        // T_p * T_p = T_{p²} + (p+1)·(central p).
        assert_eq!(sq.len(), 2);
        let tp2 = double_coset_decompose(1, p, &[2, 0]).unwrap();
        let central = double_coset_decompose(1, p, &[1, 1]).unwrap();
        let mut found_tp2 = false;
        let mut found_central = false;
        for (list, coeff) in &sq {
            if list.label() == tp2.label() {
                assert_eq!(coeff, &Int::one());
                assert_eq!(list.degree(), (p * p + p) as usize);
                found_tp2 = true;
            }
            if list.label() == central.label() {
                assert_eq!(coeff, &Int::from(p + 1));
                assert_eq!(list.degree(), 1);
                found_central = true;
            }
        }
        assert!(found_tp2 && found_central);
    }

    #[test]
    fn convolution_identity_and_commutativity() {
        for p in [2i64, 3] {
            let unit = hecke_sum_of(unit_coset(1, p).unwrap());
            let tp = hecke_sum_of(tp_coset(1, p).unwrap());
            let left = hecke_convolve(&unit, &tp).unwrap();
            assert_eq!(left.len(), 1);
            assert_eq!(left[0].0, tp[0].0);
            assert_eq!(left[0].1, Int::one());

            let tp2 = hecke_sum_of(double_coset_decompose(1, p, &[2, 0]).unwrap());
            let ab = hecke_convolve(&tp, &tp2).unwrap();
            let ba = hecke_convolve(&tp2, &tp).unwrap();
            assert_eq!(ab, ba);
        }
    }
}
