//! A finite-group model of the compact-quotient trace formula: the trace of
//! right convolution by a rational test function on functions on Γ\G,
//! computed three ways — directly from the kernel, as a sum of orbital
//! terms over conjugacy classes, and (for abelian G) spectrally through
//! characters with exact cyclotomic arithmetic.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{hnf_full, smith_normal_form};
use crate::matrix::Matrix;
use crate::{Int, QMat, Rat, ZMat};

/// A finite group by its multiplication table, with a designated subgroup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroupTable {
    order: usize,
    // table[a * order + b] = index of a·b.
    table: Vec<usize>,
    gamma: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    pub fn new(order: usize, table: Vec<usize>, gamma: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::shape("multiplication table has wrong size"));
        }
        if table.iter().any(|&v| v >= order) {
            return Err(Error::domain("table entry out of range"));
        }
        let op = |a: usize, b: usize| table[a * order + b];
        // Identity.
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| op(e, x) == x && op(x, e) == x))
            .ok_or_else(|| Error::domain("table has no identity"))?;
        // Inverses.
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| op(a, b) == identity && op(b, a) == identity) {
                Some(b) => inverse[a] = b,
                None => return Err(Error::domain("table has a non-invertible element")),
            }
        }
        // Associativity.
        for a in 0..order {
            for b in 0..order {
                let ab = op(a, b);
                for c in 0..order {
                    if op(ab, c) != op(a, op(b, c)) {
                        return Err(Error::domain("table is not associative"));
                    }
                }
            }
        }
        // Subgroup: nonempty, closed (finite closure implies inverses).
        let mut gamma = gamma;
        gamma.sort_unstable();
        gamma.dedup();
        if gamma.is_empty() {
            return Err(Error::domain("subgroup must be nonempty"));
        }
        if gamma.iter().any(|&g| g >= order) {
            return Err(Error::domain("subgroup index out of range"));
        }
        for &a in &gamma {
            for &b in &gamma {
                if gamma.binary_search(&op(a, b)).is_err() {
                    return Err(Error::domain("designated subgroup is not closed"));
                }
            }
        }
        Ok(FiniteGroupTable {
            order,
            table,
            gamma,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Representatives of the right cosets Γ\G, sorted by minimal element.
    pub fn right_coset_reps(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &g in &self.gamma {
                seen[self.op(g, x)] = true;
            }
        }
        reps
    }

    /// Re-designates the subgroup.
    pub fn with_gamma(&self, gamma: Vec<usize>) -> Result<Self> {
        FiniteGroupTable::new(self.order, self.table.clone(), gamma)
    }
}

fn check_function(g: &FiniteGroupTable, f: &[Rat]) -> Result<()> {
    if f.len() != g.order() {
        return Err(Error::shape("test function length does not match the group"));
    }
    Ok(())
}

/// Trace of R(f) on functions on Γ\G: builds the kernel matrix
/// K(x, y) = Σ_{γ∈Γ} f(x⁻¹γy) on coset representatives and takes its
/// trace, which equals Σ_{x∈Γ\G} Σ_{γ∈Γ} f(x⁻¹γx).
pub fn direct_trace(g: &FiniteGroupTable, f: &[Rat]) -> Result<Rat> {
    check_function(g, f)?;
    let reps = g.right_coset_reps();
    let kernel_entry = |x: usize, y: usize| -> Rat {
        let mut acc = Rat::zero();
        for &gamma in g.gamma() {
            acc += f[g.op(g.inv(x), g.op(gamma, y))].clone();
        }
        acc
    };
    let matrix: QMat = Matrix::from_fn(reps.len(), reps.len(), |i, j| {
        kernel_entry(reps[i], reps[j])
    });
    let trace = matrix.trace()?;
    // Cross-check against the closed double sum Σ_x Σ_γ f(x⁻¹γx).
    let mut double_sum = Rat::zero();
    for &x in &reps {
        for &gamma in g.gamma() {
            double_sum += f[g.op(g.op(g.inv(x), gamma), x)].clone();
        }
    }
    if trace != double_sum {
        return Err(Error::internal("kernel trace does not match the double sum"));
    }
    Ok(trace)
}

/// Γ-conjugacy classes of Γ, as (representative, class size) pairs.
fn gamma_conjugacy_classes(g: &FiniteGroupTable) -> Vec<usize> {
    let mut seen: BTreeMap<usize, bool> = g.gamma().iter().map(|&x| (x, false)).collect();
    let mut reps = Vec::new();
    for &gamma in g.gamma() {
        if seen[&gamma] {
            continue;
        }
        reps.push(gamma);
        for &delta in g.gamma() {
            let conj = g.op(g.op(delta, gamma), g.inv(delta));
            seen.insert(conj, true);
        }
    }
    reps
}

/// Geometric side: Σ over Γ-conjugacy classes γ of
/// (|G_γ| / |Γ_γ|) · Σ_{x ∈ G_γ\G} f(x⁻¹γx) with counting measure.
pub fn geometric_side(g: &FiniteGroupTable, f: &[Rat]) -> Result<Rat> {
    check_function(g, f)?;
    let mut total = Rat::zero();
    for gamma in gamma_conjugacy_classes(g) {
        let centralizer_g: Vec<usize> = (0..g.order())
            .filter(|&x| g.op(x, gamma) == g.op(gamma, x))
            .collect();
        let centralizer_gamma: Vec<usize> = g
            .gamma()
            .iter()
            .copied()
            .filter(|&x| g.op(x, gamma) == g.op(gamma, x))
            .collect();
        let volume = Rat::new(
            Int::from(centralizer_g.len() as i64),
            Int::from(centralizer_gamma.len() as i64),
        );
        // Right coset representatives of G_γ\G.
        let mut seen = vec![false; g.order()];
        let mut orbital = Rat::zero();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            for &c in &centralizer_g {
                seen[g.op(c, x)] = true;
            }
            orbital += f[g.op(g.op(g.inv(x), gamma), x)].clone();
        }
        total += volume * orbital;
    }
    Ok(total)
}

/// Cyclotomic polynomial Φ_n with integer coefficients, constant first,
/// by the recursion Φ_n = (x^n − 1) / ∏_{d|n, d<n} Φ_d.
pub fn cyclotomic_polynomial(n: usize) -> Vec<Int> {
    let mut num = vec![Int::zero(); n + 1];
    num[0] = -Int::one();
    num[n] = Int::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = zpoly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn zpoly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut num = num.to_vec();
    while num.last().map_or(false, |c| c.is_zero()) {
        num.pop();
    }
    let mut den = den.to_vec();
    while den.last().map_or(false, |c| c.is_zero()) {
        den.pop();
    }
    let mut out = vec![Int::zero(); num.len().saturating_sub(den.len()) + 1];
    let dlead = den.last().expect("nonzero divisor").clone();
    while num.len() >= den.len() && !num.is_empty() {
        let shift = num.len() - den.len();
        let (q, r) = num.last().unwrap().div_rem(&dlead);
        assert!(r.is_zero(), "inexact cyclotomic division");
        out[shift] = q.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = num[shift + i].clone() - q.clone() * dc.clone();
            num[shift + i] = v;
        }
        while num.last().map_or(false, |c| c.is_zero()) {
            num.pop();
        }
    }
    assert!(num.is_empty(), "inexact cyclotomic division");
    out
}

/// The cyclic-decomposition data of an abelian table group: invariant
/// factors d₁ | d₂ | … and the exponent map G → ⊕ ℤ/dᵢ.
struct CyclicDecomposition {
    factors: Vec<i64>,
    // classes[x] = coordinates of element x in ⊕ Z/d_i (reduced).
    classes: Vec<Vec<i64>>,
}

fn cyclic_decomposition(g: &FiniteGroupTable) -> Result<CyclicDecomposition> {
    let m = g.order();
    // Greedy generating set; for abelian groups of order n this has at
    // most log₂(n) members.
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = vec![false; m];
    closure[g.identity()] = true;
    let mut closure_count = 1usize;
    while closure_count < m {
        let new_gen = (0..m).find(|&x| !closure[x]).expect("closure incomplete");
        gens.push(new_gen);
        let mut frontier: Vec<usize> = (0..m).filter(|&x| closure[x]).collect();
        while let Some(x) = frontier.pop() {
            let y = g.op(x, new_gen);
            if !closure[y] {
                closure[y] = true;
                closure_count += 1;
                frontier.push(y);
            }
        }
    }
    let s = gens.len();
    // Word vectors: one representative w(x) ∈ Z^s with Σ w_i·gens_i = x,
    // from a breadth-first search along generator edges.
    let mut words: Vec<Option<Vec<i64>>> = vec![None; m];
    words[g.identity()] = Some(vec![0i64; s]);
    let mut queue = std::collections::VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let wx = words[x].clone().expect("visited");
        for (i, &gen) in gens.iter().enumerate() {
            let y = g.op(x, gen);
            if words[y].is_none() {
                let mut wy = wx.clone();
                wy[i] += 1;
                words[y] = Some(wy);
                queue.push_back(y);
            }
        }
    }
    // The relation lattice of the presentation on `gens` is generated by
    // the edge vectors w(x) + e_i − w(x·gen_i).
    let mut rows = Vec::with_capacity(m * s);
    for x in 0..m {
        let wx = words[x].as_ref().expect("reached");
        for (i, &gen) in gens.iter().enumerate() {
            let wy = words[g.op(x, gen)].as_ref().expect("reached");
            let mut row = vec![Int::zero(); s];
            for k in 0..s {
                row[k] = Int::from(wx[k] - wy[k]);
            }
            row[i] += Int::one();
            rows.push(row);
        }
    }
    let relations = ZMat::from_rows(rows)?;
    let (h, _, rank) = hnf_full(&relations);
    if rank != s {
        return Err(Error::internal("relation lattice is not of full rank"));
    }
    let idx: Vec<usize> = (0..s).collect();
    let reduced = h.submatrix(&idx, &idx);
    let (dmat, _, v) = smith_normal_form(&reduced);
    let mut factors = Vec::new();
    let mut factor_index = Vec::new();
    for i in 0..s {
        let d = dmat
            .at(i, i)
            .to_i64()
            .ok_or_else(|| Error::internal("invariant factor overflow"))?;
        if d == 0 {
            return Err(Error::internal("free part in a finite group presentation"));
        }
        if d > 1 {
            factors.push(d);
            factor_index.push(i);
        }
    }
    // Class of element x: the row vector w(x)·V, reduced componentwise.
    let mut classes = Vec::with_capacity(m);
    for x in 0..m {
        let wx = words[x].as_ref().expect("reached");
        let mut coords = Vec::with_capacity(factors.len());
        for (k, &i) in factor_index.iter().enumerate() {
            let mut acc = Int::zero();
            for (j, &wj) in wx.iter().enumerate() {
                acc += Int::from(wj) * v.at(j, i).clone();
            }
            coords.push(acc.mod_floor(&Int::from(factors[k])).to_i64().expect("reduced"));
        }
        classes.push(coords);
    }
    let prod: i64 = factors.iter().product();
    if prod != m as i64 {
        return Err(Error::internal("invariant factors do not multiply to |G|"));
    }
    Ok(CyclicDecomposition { factors, classes })
}

/// Spectral side for abelian G: Σ over characters χ trivial on Γ of
/// Σ_x f(x)·χ(x), with characters realized through the cyclic
/// decomposition and values accumulated exactly in ℚ(ζ_N), N the exponent.
/// The total is rational and equals the other two sides.
pub fn spectral_side_abelian(g: &FiniteGroupTable, f: &[Rat]) -> Result<Rat> {
    check_function(g, f)?;
    if !g.is_abelian() {
        return Err(Error::domain("spectral side requires an abelian group"));
    }
    let dec = cyclic_decomposition(g)?;
    let exponent = dec.factors.last().copied().unwrap_or(1);
    let n = exponent as usize;
    let phi = cyclotomic_polynomial(n);
    let phi_rat: Vec<Rat> = phi.iter().map(|c| Rat::from_integer(c.clone())).collect();

    // Exponent of χ_c(x) in ζ_N: Σ_i c_i · class_i(x) · (N / d_i).
    let zeta_exponent = |c: &[i64], x: usize| -> i64 {
        let mut acc = 0i64;
        for (i, &ci) in c.iter().enumerate() {
            acc += ci * dec.classes[x][i] * (exponent / dec.factors[i]);
        }
        acc.rem_euclid(exponent)
    };

    // Enumerate characters c ∈ ∏ Z/d_i; keep those trivial on Γ.
    let mut total_poly = vec![Rat::zero(); n.max(1)];
    let mut c = vec![0i64; dec.factors.len()];
    let mut kept = 0usize;
    loop {
        let trivial = g
            .gamma()
            .iter()
            .all(|&gamma| zeta_exponent(&c, gamma) == 0);
        if trivial {
            kept += 1;
            for x in 0..g.order() {
                if f[x].is_zero() {
                    continue;
                }
                let e = zeta_exponent(&c, x) as usize;
                total_poly[e] += f[x].clone();
            }
        }
        // Increment the character index.
        let mut idx = dec.factors.len();
        loop {
            if idx == 0 {
                // Done: reduce mod Φ_N and demand rationality.
                let reduced = rpoly_rem_rat(&total_poly, &phi_rat);
                for coeff in reduced.iter().skip(1) {
                    if !coeff.is_zero() {
                        return Err(Error::internal("spectral sum is not rational"));
                    }
                }
                // Sanity: for f = δ_e the count of kept characters is the
                // number of cosets; recorded implicitly through the result.
                let _ = kept;
                return Ok(reduced.first().cloned().unwrap_or_else(Rat::zero));
            }
            idx -= 1;
            c[idx] += 1;
            if c[idx] < dec.factors[idx] {
                break;
            }
            c[idx] = 0;
        }
    }
}

fn rpoly_rem_rat(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut num = num.to_vec();
    while num.last().map_or(false, |c| c.is_zero()) {
        num.pop();
    }
    let dlead = den.last().expect("nonzero divisor").clone();
    while num.len() >= den.len() && !num.is_empty() {
        let shift = num.len() - den.len();
        let factor = num.last().unwrap().clone() / dlead.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = num[shift + i].clone() - factor.clone() * dc.clone();
            num[shift + i] = v;
        }
        while num.last().map_or(false, |c| c.is_zero()) {
            num.pop();
        }
    }
    num
}

/// Builders for the packaged groups.
pub mod groups {
    use super::*;

    /// ℤ/n with the subgroup generated by k.
    pub fn cyclic(n: usize, subgroup_generator: usize) -> Result<FiniteGroupTable> {
        if n == 0 {
            return Err(Error::domain("order must be positive"));
        }
        let table: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        let mut gamma = Vec::new();
        let mut cur = 0usize;
        loop {
            gamma.push(cur);
            cur = (cur + subgroup_generator) % n;
            if cur == 0 {
                break;
            }
        }
        FiniteGroupTable::new(n, table, gamma)
    }

    /// Direct product, with Γ the product of the factors' subgroups.
    pub fn direct_product(
        a: &FiniteGroupTable,
        b: &FiniteGroupTable,
    ) -> Result<FiniteGroupTable> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let idx = |x: usize, y: usize| x * nb + y;
        let mut table = vec![0usize; n * n];
        for xa in 0..na {
            for xb in 0..nb {
                for ya in 0..na {
                    for yb in 0..nb {
                        table[idx(xa, xb) * n + idx(ya, yb)] =
                            idx(a.op(xa, ya), b.op(xb, yb));
                    }
                }
            }
        }
        let mut gamma = Vec::new();
        for &ga in a.gamma() {
            for &gb in b.gamma() {
                gamma.push(idx(ga, gb));
            }
        }
        FiniteGroupTable::new(n, table, gamma)
    }

    /// Group generated by permutations of {0..deg-1}; Γ generated by the
    /// listed subset of the generators.
    pub fn from_permutations(
        deg: usize,
        generators: &[Vec<usize>],
        gamma_generators: &[Vec<usize>],
    ) -> Result<FiniteGroupTable> {
        let compose = |f: &[usize], g: &[usize]| -> Vec<usize> {
            // (f∘g)(i) = f(g(i)).
            g.iter().map(|&i| f[i]).collect()
        };
        let identity: Vec<usize> = (0..deg).collect();
        for p in generators.iter().chain(gamma_generators.iter()) {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != identity {
                return Err(Error::domain("generator is not a permutation"));
            }
        }
        // Closure.
        let mut elements = vec![identity.clone()];
        let mut frontier = vec![identity.clone()];
        while let Some(cur) = frontier.pop() {
            for gen in generators {
                let next = compose(gen, &cur);
                if !elements.contains(&next) {
                    elements.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        elements.sort();
        let index_of = |p: &Vec<usize>| -> usize {
            elements.binary_search(p).expect("closed under composition")
        };
        let n = elements.len();
        let mut table = vec![0usize; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index_of(&compose(a, b));
            }
        }
        // Γ: closure of the gamma generators.
        let mut gamma = vec![index_of(&identity)];
        let mut frontier = vec![identity];
        while let Some(cur) = frontier.pop() {
            for gen in gamma_generators {
                let next = compose(gen, &cur);
                let gi = index_of(&next);
                if !gamma.contains(&gi) {
                    gamma.push(gi);
                    frontier.push(next);
                }
            }
        }
        FiniteGroupTable::new(n, table, gamma)
    }

    /// S_k as permutations, Γ the alternating-generating 3-cycle subgroup
    /// for k = 3 and the Klein four-subgroup for k = 4; for other k, Γ is
    /// trivial.
    pub fn symmetric(k: usize) -> Result<FiniteGroupTable> {
        if k < 2 {
            return Err(Error::domain("need k >= 2"));
        }
        let mut transpositions = Vec::new();
        for i in 0..k - 1 {
            let mut p: Vec<usize> = (0..k).collect();
            p.swap(i, i + 1);
            transpositions.push(p);
        }
        let gamma: Vec<Vec<usize>> = match k {
            3 => vec![vec![1, 2, 0]],
            4 => vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
            _ => vec![],
        };
        from_permutations(k, &transpositions, &gamma)
    }

    /// Dihedral group of order 2k acting on k points, Γ the rotations.
    pub fn dihedral(k: usize) -> Result<FiniteGroupTable> {
        if k < 3 {
            return Err(Error::domain("need k >= 3"));
        }
        let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        let flip: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
        from_permutations(k, &[rot.clone(), flip], &[rot])
    }

    /// The Frobenius group of order 21 = ℤ/7 ⋊ ℤ/3 acting on 7 points, Γ
    /// the normal 7-cycle subgroup.
    pub fn frobenius21() -> Result<FiniteGroupTable> {
        let seven: Vec<usize> = (0..7).map(|i| (i + 1) % 7).collect();
        let three: Vec<usize> = (0..7).map(|i| (2 * i) % 7).collect();
        from_permutations(7, &[seven.clone(), three], &[seven])
    }

    /// The quaternion group of order 8 in its regular representation, Γ
    /// the center {±1}.
    pub fn quaternion8() -> Result<FiniteGroupTable> {
        // Elements 0..7 = 1, -1, i, -i, j, -j, k, -k.
        let mul: [[usize; 8]; 8] = {
            // Encode as (sign, axis) with axis 0 = real, 1 = i, 2 = j, 3 = k.
            let enc = |sign: usize, axis: usize| axis * 2 + sign;
            let axis_mul = |a: usize, b: usize| -> (usize, usize) {
                match (a, b) {
                    (0, x) => (0, x),
                    (x, 0) => (0, x),
                    (1, 1) => (1, 0),
                    (2, 2) => (1, 0),
                    (3, 3) => (1, 0),
                    (1, 2) => (0, 3),
                    (2, 1) => (1, 3),
                    (2, 3) => (0, 1),
                    (3, 2) => (1, 1),
                    (3, 1) => (0, 2),
                    (1, 3) => (1, 2),
                    _ => unreachable!(),
                }
            };
            let mut t = [[0usize; 8]; 8];
            for a in 0..8 {
                for b in 0..8 {
                    let (sa, xa) = (a % 2, a / 2);
                    let (sb, xb) = (b % 2, b / 2);
                    let (sprod, xprod) = axis_mul(xa, xb);
                    t[a][b] = enc((sa + sb + sprod) % 2, xprod);
                }
            }
            t
        };
        let table: Vec<usize> = mul.iter().flat_map(|row| row.iter().copied()).collect();
        FiniteGroupTable::new(8, table, vec![0, 1])
    }

    /// The packaged table set: named groups of order up to 200, each with
    /// its designated subgroup.
    pub fn packaged_tables() -> Result<Vec<(&'static str, FiniteGroupTable)>> {
        Ok(vec![
            ("Z/4, Γ = 2Z/4", cyclic(4, 2)?),
            ("Z/12, Γ = 3Z/12", cyclic(12, 3)?),
            ("S3, Γ = rotations", symmetric(3)?),
            ("Q8, Γ = center", quaternion8()?),
            ("D5, Γ = rotations", dihedral(5)?),
            ("Z/7⋊Z/3, Γ = Z/7", frobenius21()?),
            ("S4, Γ = Klein four", symmetric(4)?),
            ("S3×S3", direct_product(&symmetric(3)?, &symmetric(3)?)?),
            ("Z/10×Z/10", direct_product(&cyclic(10, 5)?, &cyclic(10, 2)?)?),
            ("D50, Γ = rotations", dihedral(50)?),
            ("Z/200, Γ = 10Z/200", cyclic(200, 10)?),
        ])
    }

    /// The packaged abelian groups of order up to 64.
    pub fn packaged_abelian_tables() -> Result<Vec<(&'static str, FiniteGroupTable)>> {
        Ok(vec![
            ("Z/4, Γ = 2Z/4", cyclic(4, 2)?),
            ("Z/6, Γ = 3Z/6", cyclic(6, 3)?),
            ("Z/2×Z/2", direct_product(&cyclic(2, 1)?, &cyclic(2, 0)?)?),
            ("Z/12, Γ = 4Z/12", cyclic(12, 4)?),
            ("Z/2×Z/4", direct_product(&cyclic(2, 0)?, &cyclic(4, 2)?)?),
            ("Z/16, Γ = 4Z/16", cyclic(16, 4)?),
            ("Z/3×Z/9", direct_product(&cyclic(3, 1)?, &cyclic(9, 3)?)?),
            ("Z/60, Γ = 15Z/60", cyclic(60, 15)?),
            ("Z/8×Z/8", direct_product(&cyclic(8, 4)?, &cyclic(8, 2)?)?),
            ("Z/64, Γ = 16Z/64", cyclic(64, 16)?),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SplitMix64;
    use crate::scalar::{rat, rat_int};

    fn delta(g: &FiniteGroupTable, x: usize) -> Vec<Rat> {
        let mut f = vec![Rat::zero(); g.order()];
        f[x] = Rat::one();
        f
    }

    fn random_function(g: &FiniteGroupTable, rng: &mut SplitMix64) -> Vec<Rat> {
        (0..g.order())
            .map(|_| rng.next_rat(5, 3))
            .collect()
    }

    #[test]
    fn delta_at_identity_counts_cosets() {
        let g = groups::cyclic(12, 3).unwrap();
        let f = delta(&g, g.identity());
        let cosets = g.right_coset_reps().len();
        assert_eq!(direct_trace(&g, &f).unwrap(), rat_int(cosets as i64));
        assert_eq!(geometric_side(&g, &f).unwrap(), rat_int(cosets as i64));
        assert_eq!(spectral_side_abelian(&g, &f).unwrap(), rat_int(cosets as i64));
    }

    #[test]
    fn z4_delta_one_vanishes() {
        let g = groups::cyclic(4, 2).unwrap();
        let f = delta(&g, 1);
        assert_eq!(direct_trace(&g, &f).unwrap(), rat_int(0));
        assert_eq!(geometric_side(&g, &f).unwrap(), rat_int(0));
        assert_eq!(spectral_side_abelian(&g, &f).unwrap(), rat_int(0));
    }

    #[test]
    fn z6_delta_two_cyclotomic_cancellation() {
        let g = groups::cyclic(6, 3).unwrap();
        let f = delta(&g, 2);
        // Three characters trivial on {0, 3}; values 1 + ζ₃ + ζ₃² = 0.
        assert_eq!(spectral_side_abelian(&g, &f).unwrap(), rat_int(0));
        assert_eq!(direct_trace(&g, &f).unwrap(), rat_int(0));
    }

    #[test]
    fn s3_transposition_indicator_vanishes() {
        let g = groups::symmetric(3).unwrap();
        // Indicator of the transpositions: the three odd permutations.
        let mut f = vec![Rat::zero(); 6];
        let sgn = |p: &Vec<usize>| -> bool {
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            inv % 2 == 1
        };
        // Reconstruct element order used by the builder: sorted perms.
        let mut elements: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        elements.sort();
        for (i, p) in elements.iter().enumerate() {
            if sgn(p) {
                f[i] = Rat::one();
            }
        }
        assert_eq!(direct_trace(&g, &f).unwrap(), rat_int(0));
        assert_eq!(geometric_side(&g, &f).unwrap(), rat_int(0));
    }

    #[test]
    fn direct_equals_geometric_randomized() {
        let mut rng = SplitMix64::new(0x77ace);
        let tables = vec![
            groups::cyclic(8, 2).unwrap(),
            groups::symmetric(3).unwrap(),
            groups::symmetric(4).unwrap(),
            groups::dihedral(5).unwrap(),
            groups::quaternion8().unwrap(),
            groups::frobenius21().unwrap(),
        ];
        for g in &tables {
            for _ in 0..10 {
                let f = random_function(g, &mut rng);
                assert_eq!(
                    direct_trace(g, &f).unwrap(),
                    geometric_side(g, &f).unwrap(),
                    "group of order {}",
                    g.order()
                );
            }
        }
    }

    #[test]
    fn direct_equals_spectral_abelian_randomized() {
        let mut rng = SplitMix64::new(0xabe1);
        let z12 = groups::cyclic(12, 4).unwrap();
        let z2z4 = groups::direct_product(
            &groups::cyclic(2, 1).unwrap(),
            &groups::cyclic(4, 2).unwrap(),
        )
        .unwrap();
        for g in [&z12, &z2z4] {
            for _ in 0..10 {
                let f = random_function(g, &mut rng);
                assert_eq!(
                    direct_trace(g, &f).unwrap(),
                    spectral_side_abelian(g, &f).unwrap()
                );
            }
        }
    }

    #[test]
    fn conjugation_invariance() {
        let mut rng = SplitMix64::new(0xc0);
        let g = groups::symmetric(4).unwrap();
        let f = random_function(&g, &mut rng);
        let h = 7usize % g.order();
        let conj_f: Vec<Rat> = (0..g.order())
            .map(|x| f[g.op(g.op(g.inv(h), x), h)].clone())
            .collect();
        assert_eq!(direct_trace(&g, &f).unwrap(), direct_trace(&g, &conj_f).unwrap());
        assert_eq!(
            geometric_side(&g, &f).unwrap(),
            geometric_side(&g, &conj_f).unwrap()
        );
    }

    #[test]
    fn measure_scaling_consistency() {
        let mut rng = SplitMix64::new(0x5ca1e);
        let g = groups::dihedral(4).unwrap();
        let f = random_function(&g, &mut rng);
        let lambda = rat(3, 7);
        let scaled: Vec<Rat> = f.iter().map(|v| v.clone() * lambda.clone()).collect();
        assert_eq!(
            direct_trace(&g, &scaled).unwrap(),
            lambda.clone() * direct_trace(&g, &f).unwrap()
        );
        assert_eq!(
            geometric_side(&g, &scaled).unwrap(),
            lambda * geometric_side(&g, &f).unwrap()
        );
    }

    #[test]
    fn nonabelian_spectral_rejected() {
        let g = groups::symmetric(3).unwrap();
        let f = delta(&g, 0);
        assert!(spectral_side_abelian(&g, &f).is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-Int::one(), Int::one()]);
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![Int::one(), Int::zero(), Int::one()]
        );
        assert_eq!(
            cyclotomic_polynomial(6),
            vec![Int::one(), -Int::one(), Int::one()]
        );
    }
}
