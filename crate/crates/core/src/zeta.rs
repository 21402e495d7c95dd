//! Point counting over finite fields and exact assembly of zeta series:
//! field towers with deterministic moduli, brute-force counting of affine
//! and projective varieties, the exponential generating series, rational
//! recovery by exact linear algebra, and the fixed-point consistency check
//! via Newton identities.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::{Int, QMat, Rat};

pub const DEFAULT_COUNT_BUDGET: u64 = 100_000_000;

/// 𝔽_{p^k} presented as 𝔽_p[x]/(m(x)) with m the lexicographically least
/// monic irreducible of degree k (ordering monic polynomials by their
/// coefficient tuple (c_{k−1}, …, c₀)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteField {
    p: u64,
    k: usize,
    // Monic modulus: coefficients c_0 .. c_{k-1} of x^k + Σ c_i x^i.
    modulus: Vec<u64>,
}

/// A field element: coefficient vector of length k (little-endian).
pub type FFElem = Vec<u64>;

impl FiniteField {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        if p < 2 || !is_prime_u64(p) {
            return Err(Error::domain("characteristic must be prime"));
        }
        let modulus = least_irreducible(p, k)?;
        Ok(FiniteField { p, k, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FFElem {
        vec![0; self.k]
    }

    pub fn one(&self) -> FFElem {
        let mut e = vec![0; self.k];
        e[0] = 1;
        e
    }

    pub fn from_u64(&self, v: u64) -> FFElem {
        let mut e = vec![0; self.k];
        e[0] = v % self.p;
        e
    }

    pub fn is_zero(&self, a: &FFElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        (0..self.k).map(|i| (a[i] + b[i]) % self.p).collect()
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        (0..self.k).map(|i| (self.p - a[i]) % self.p).collect()
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * self.k - 1];
        for i in 0..self.k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % self.p;
            }
        }
        for deg in (self.k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                // x^k = -Σ m_i x^i.
                let idx = deg - self.k + i;
                prod[idx] = (prod[idx] + c * (self.p - m)) % self.p;
            }
        }
        prod.truncate(self.k);
        prod
    }

    pub fn pow(&self, a: &FFElem, mut e: u64) -> FFElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        if self.is_zero(a) {
            return Err(Error::degenerate("inverse of zero field element"));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Iterates over all field elements in lexicographic coefficient order.
    pub fn elements(&self) -> FieldIter<'_> {
        FieldIter {
            field: self,
            next: Some(self.zero()),
        }
    }

    /// The canonical embedding of a subfield: finds the lexicographically
    /// least root of the subfield modulus in this field and extends
    /// multiplicatively. Requires sub.k | self.k and equal characteristic.
    pub fn embed_from(&self, sub: &FiniteField) -> Result<Embedding> {
        if sub.p != self.p || self.k % sub.k != 0 {
            return Err(Error::domain("no embedding between these fields"));
        }
        // Scan for a root of the subfield modulus.
        let mut root = None;
        for cand in self.elements() {
            if self.is_zero(&self.eval_subfield_modulus(sub, &cand)) {
                root = Some(cand);
                break;
            }
        }
        let root =
            root.ok_or_else(|| Error::internal("subfield modulus has no root upstairs"))?;
        Ok(Embedding { root })
    }

    fn eval_subfield_modulus(&self, sub: &FiniteField, x: &FFElem) -> FFElem {
        // m(x) = x^{sub.k} + Σ c_i x^i evaluated in self.
        let mut acc = self.pow(x, sub.k as u64);
        let mut xp = self.one();
        for &c in sub.modulus.iter() {
            if c != 0 {
                acc = self.add(&acc, &self.scale(&xp, c));
            }
            xp = self.mul(&xp, x);
        }
        acc
    }

    fn scale(&self, a: &FFElem, c: u64) -> FFElem {
        a.iter().map(|&v| (v * (c % self.p)) % self.p).collect()
    }

    /// Applies an embedding to a subfield element.
    pub fn embed(&self, _sub: &FiniteField, emb: &Embedding, a: &FFElem) -> FFElem {
        let mut acc = self.zero();
        let mut xp = self.one();
        for &c in a {
            if c != 0 {
                acc = self.add(&acc, &self.scale(&xp, c));
            }
            xp = self.mul(&xp, &emb.root);
        }
        acc
    }
}

/// Image of the subfield generator under an embedding.
#[derive(Clone, Debug)]
pub struct Embedding {
    root: FFElem,
}

pub struct FieldIter<'a> {
    field: &'a FiniteField,
    next: Option<FFElem>,
}

impl Iterator for FieldIter<'_> {
    type Item = FFElem;
    fn next(&mut self) -> Option<FFElem> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut idx = self.field.k;
        loop {
            if idx == 0 {
                self.next = None;
                break;
            }
            idx -= 1;
            succ[idx] += 1;
            if succ[idx] < self.field.p {
                self.next = Some(succ);
                break;
            }
            succ[idx] = 0;
        }
        Some(cur)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The lexicographically least monic irreducible of degree k over 𝔽_p,
/// ordered by the tuple (c_{k−1}, …, c₀); coefficients returned
/// little-endian (c₀ first).
fn least_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
    if k == 1 {
        // x itself is irreducible and least.
        return Ok(vec![0]);
    }
    // Iterate over (c_{k-1}, ..., c_0) lexicographically.
    let total = (p as u128).checked_pow(k as u32).ok_or_else(|| {
        Error::resource("modulus search space too large")
    })?;
    let mut idx: u128 = 0;
    while idx < total {
        // idx = Σ c_j p^j makes ascending idx enumerate the coefficient
        // tuples (c_{k-1}, …, c_0) in lexicographic order.
        let mut coeffs = vec![0u64; k];
        let mut v = idx;
        for slot in coeffs.iter_mut() {
            *slot = (v % p as u128) as u64;
            v /= p as u128;
        }
        if poly_is_irreducible(p, &coeffs, k) {
            return Ok(coeffs);
        }
        idx += 1;
    }
    Err(Error::internal("no irreducible polynomial found"))
}

/// Irreducibility of x^k + Σ c_i x^i over 𝔽_p by the derivative-free
/// criterion: x^{p^k} ≡ x mod m and gcd(x^{p^j} − x, m) = 1 for every
/// proper prime-index divisor j of k.
fn poly_is_irreducible(p: u64, coeffs: &[u64], k: usize) -> bool {
    let field = FiniteField {
        p,
        k,
        modulus: coeffs.to_vec(),
    };
    // The reduction machinery of FiniteField works mod the candidate even
    // if it is reducible; irreducibility is what we test.
    let x = {
        let mut e = vec![0u64; k];
        if k == 1 {
            // x reduces to -c_0.
            e[0] = (p - coeffs[0] % p) % p;
        } else {
            e[1] = 1;
        }
        e
    };
    // x^{p^k} = x.
    let mut frob = x.clone();
    for _ in 0..k {
        frob = field.pow(&frob, p);
    }
    if frob != x {
        return false;
    }
    // For each prime divisor l of k: gcd(x^{p^{k/l}} - x, m) must be 1,
    // equivalently x^{p^{k/l}} - x must be a unit ... it suffices that
    // x^{p^{k/l}} ≠ x in the quotient ring and that the gcd is trivial.
    for l in prime_divisors(k) {
        let j = k / l;
        let mut fr = x.clone();
        for _ in 0..j {
            fr = field.pow(&fr, p);
        }
        let diff = field.sub(&fr, &x);
        // gcd over F_p[x] between diff (as polynomial of degree < k) and m.
        if !poly_gcd_is_one(p, &diff, coeffs, k) {
            return false;
        }
    }
    true
}

fn prime_divisors(mut k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            out.push(d);
            while k % d == 0 {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// gcd(a, m) = 1 in 𝔽_p[x], with m = x^k + Σ c_i x^i monic and deg a < k.
fn poly_gcd_is_one(p: u64, a: &[u64], m_coeffs: &[u64], _k: usize) -> bool {
    let mut m: Vec<u64> = m_coeffs.to_vec();
    m.push(1);
    let mut a: Vec<u64> = a.to_vec();
    trim(&mut a);
    trim(&mut m);
    while !a.is_empty() {
        let r = poly_rem(p, &m, &a);
        m = a;
        a = r;
    }
    m.len() == 1
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let mut num = num.to_vec();
    let dlead = *den.last().expect("nonzero divisor");
    let dinv = mod_inverse(dlead, p);
    while num.len() >= den.len() && !num.is_empty() {
        let shift = num.len() - den.len();
        let factor = (num.last().unwrap() * dinv) % p;
        for (i, &dc) in den.iter().enumerate() {
            let idx = shift + i;
            num[idx] = (num[idx] + p - (factor * dc) % p) % p;
        }
        trim(&mut num);
    }
    num
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Ambient space of a variety spec.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ambient {
    /// 𝔸^m: points are unrestricted m-tuples.
    Affine(usize),
    /// ℙ^m: points are normalized (m+1)-tuples, first nonzero = 1.
    Projective(usize),
}

/// A multivariate polynomial over the base field: list of (exponent tuple,
/// nonzero coefficient).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FFPoly {
    pub terms: Vec<(Vec<u32>, FFElem)>,
}

/// Defining data of a variety over 𝔽_q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarietySpec {
    pub base: FiniteField,
    pub ambient: Ambient,
    pub polys: Vec<FFPoly>,
}

impl VarietySpec {
    pub fn new(base: FiniteField, ambient: Ambient, polys: Vec<FFPoly>) -> Result<Self> {
        let nvars = match ambient {
            Ambient::Affine(m) => m,
            Ambient::Projective(m) => m + 1,
        };
        if nvars == 0 {
            return Err(Error::domain("ambient space must have a variable"));
        }
        for poly in &polys {
            for (exps, coeff) in &poly.terms {
                if exps.len() != nvars {
                    return Err(Error::shape("exponent tuple length mismatch"));
                }
                if coeff.len() != base.degree() {
                    return Err(Error::shape("coefficient has wrong field degree"));
                }
            }
            if let Ambient::Projective(_) = ambient {
                let degs: Vec<u32> = poly
                    .terms
                    .iter()
                    .filter(|(_, c)| !base.is_zero(c))
                    .map(|(e, _)| e.iter().sum())
                    .collect();
                if degs.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::domain(
                        "projective defining polynomials must be homogeneous",
                    ));
                }
            }
        }
        Ok(VarietySpec {
            base,
            ambient,
            polys,
        })
    }

}

/// |X(𝔽_{q^r})| by brute-force enumeration (projective points via
/// first-nonzero-is-one representatives).
pub fn count_points(v: &VarietySpec, r: usize, budget: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::domain("extension degree must be positive"));
    }
    // Budget in terms of the ambient dimension m: affine space has q^{rm}
    // points, projective space ~q^{rm} normalized representatives.
    let m = match v.ambient {
        Ambient::Affine(m) => m,
        Ambient::Projective(m) => m,
    };
    let cost = (v.base.order() as u128)
        .checked_pow((r * m) as u32)
        .unwrap_or(u128::MAX);
    if cost > budget as u128 {
        return Err(Error::resource(format!(
            "point enumeration cost q^(r·m) = {cost} exceeds budget {budget}"
        )));
    }
    let big = FiniteField::new(v.base.p(), v.base.degree() * r)?;
    let emb = big.embed_from(&v.base)?;
    // Push the coefficients up once.
    let polys: Vec<Vec<(Vec<u32>, FFElem)>> = v
        .polys
        .iter()
        .map(|poly| {
            poly.terms
                .iter()
                .map(|(e, c)| (e.clone(), big.embed(&v.base, &emb, c)))
                .collect()
        })
        .collect();
    let eval = |point: &[FFElem]| -> bool {
        polys.iter().all(|terms| {
            let mut acc = big.zero();
            for (exps, coeff) in terms {
                let mut term = coeff.clone();
                for (var, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        term = big.mul(&term, &big.pow(&point[var], e as u64));
                    }
                }
                acc = big.add(&acc, &term);
            }
            big.is_zero(&acc)
        })
    };
    let mut count = 0u64;
    match v.ambient {
        Ambient::Affine(mvars) => {
            let mut point = vec![big.zero(); mvars];
            enumerate_points(&big, &mut point, 0, &mut |pt| {
                if eval(pt) {
                    count += 1;
                }
            });
        }
        Ambient::Projective(mproj) => {
            // First nonzero coordinate normalized to 1.
            for lead in 0..=mproj {
                let free = mproj - lead;
                let mut tail = vec![big.zero(); free];
                let mut visit = |tail: &[FFElem]| {
                    let mut pt = vec![big.zero(); mproj + 1];
                    pt[lead] = big.one();
                    for (i, v) in tail.iter().enumerate() {
                        pt[lead + 1 + i] = v.clone();
                    }
                    if eval(&pt) {
                        count += 1;
                    }
                };
                if free == 0 {
                    visit(&[]);
                } else {
                    enumerate_points(&big, &mut tail, 0, &mut visit);
                }
            }
        }
    }
    Ok(count)
}

fn enumerate_points(
    field: &FiniteField,
    point: &mut Vec<FFElem>,
    idx: usize,
    visit: &mut impl FnMut(&[FFElem]),
) {
    if idx == point.len() {
        visit(point);
        return;
    }
    for e in field.elements() {
        point[idx] = e;
        enumerate_points(field, point, idx + 1, visit);
    }
}

/// Exact coefficients of Z(T) = exp(Σ_{r≥1} N_r T^r / r) up to and
/// including T^precision.
pub fn zeta_series(counts: &[u64], precision: usize) -> Result<Vec<Rat>> {
    if counts.len() < precision {
        return Err(Error::precondition(
            "need point counts up to the requested precision",
        ));
    }
    // z_0 = 1; m·z_m = Σ_{r=1}^m N_r z_{m−r} from Z' = Z·Σ N_r T^{r−1}.
    let mut z = vec![Rat::one()];
    for m in 1..=precision {
        let mut acc = Rat::zero();
        for r in 1..=m {
            acc += Rat::from_integer(Int::from(counts[r - 1])) * z[m - r].clone();
        }
        z.push(acc / Rat::from_integer(Int::from(m as i64)));
    }
    Ok(z)
}

/// Recovers the counts from a zeta series by logarithmic differentiation:
/// N_m = m·z_m − Σ_{r=1}^{m−1} N_r z_{m−r}.
pub fn counts_from_series(series: &[Rat]) -> Result<Vec<Rat>> {
    if series.is_empty() || !series[0].is_one() {
        return Err(Error::domain("zeta series must start with 1"));
    }
    let mut counts: Vec<Rat> = Vec::new();
    for m in 1..series.len() {
        let mut acc = Rat::from_integer(Int::from(m as i64)) * series[m].clone();
        for r in 1..m {
            acc -= counts[r - 1].clone() * series[m - r].clone();
        }
        counts.push(acc);
    }
    Ok(counts)
}

/// Dense polynomial with rational coefficients, constant term first.
pub type RPoly = Vec<Rat>;

fn rpoly_mul(a: &[Rat], b: &[Rat]) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca.clone() * cb.clone();
        }
    }
    out
}

fn rpoly_trim(mut v: RPoly) -> RPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact rational-function recovery: finds polynomials (P, Q) with
/// deg P ≤ dp, deg Q ≤ dq, Q(0) = 1, and Q·Z ≡ P through the full supplied
/// precision; the result is reduced (common factors cancelled) so the
/// degrees are minimal. Fails if no solution fits the bounds.
pub fn rational_recovery(series: &[Rat], dp: usize, dq: usize) -> Result<(RPoly, RPoly)> {
    if series.len() < dp + dq + 1 {
        return Err(Error::precondition(format!(
            "need at least {} series coefficients, got {}",
            dp + dq + 1,
            series.len()
        )));
    }
    // Unknowns: q_1..q_dq then p_0..p_dp; q_0 = 1 fixed.
    // Equations: for every m < series.len():
    //   Σ_{i=0..min(m,dq)} q_i z_{m-i} - [m ≤ dp] p_m = 0.
    let rows = series.len();
    let cols = dq + dp + 1;
    let mut a = QMat::zero(rows, cols);
    let mut rhs = QMat::zero(rows, 1);
    for m in 0..rows {
        for i in 1..=dq.min(m) {
            a.set(m, i - 1, series[m - i].clone());
        }
        if m <= dp {
            a.set(m, dq + m, -Rat::one());
        }
        rhs.set(m, 0, -series[m].clone());
    }
    // Solve the (possibly overdetermined) system exactly.
    let aug = a.hstack(&rhs)?;
    let (r, pivots, _) = rref(&aug);
    if pivots.iter().any(|&p| p == cols) {
        return Err(Error::domain(
            "no rational function with the given degree bounds matches the series",
        ));
    }
    // Any solution will do; set free variables to zero.
    let mut x = vec![Rat::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.at(row, cols).clone();
    }
    let mut q: RPoly = vec![Rat::one()];
    q.extend(x[..dq].to_vec());
    let mut p: RPoly = x[dq..].to_vec();
    q = rpoly_trim(q);
    p = rpoly_trim(p);
    // Verify by multiplying back across the whole precision.
    let prod = rpoly_mul(&q, series);
    for m in 0..series.len() {
        let lhs = prod.get(m).cloned().unwrap_or_else(Rat::zero);
        let rhs = p.get(m).cloned().unwrap_or_else(Rat::zero);
        if lhs != rhs {
            return Err(Error::internal("recovered fraction fails verification"));
        }
    }
    // Minimality: cancel the polynomial gcd.
    let (p, q) = reduce_fraction(p, q)?;
    Ok((p, q))
}

fn reduce_fraction(p: RPoly, q: RPoly) -> Result<(RPoly, RPoly)> {
    let g = rpoly_gcd(&p, &q);
    if g.len() <= 1 {
        return Ok((normalize_q0(p, &q)?, normalize_q0_q(q)?));
    }
    let p2 = rpoly_div_exact(&p, &g)?;
    let q2 = rpoly_div_exact(&q, &g)?;
    Ok((normalize_q0(p2, &q2)?, normalize_q0_q(q2)?))
}

fn normalize_q0_q(q: RPoly) -> Result<RPoly> {
    let c = q
        .first()
        .cloned()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::internal("denominator with zero constant term"))?;
    Ok(q.into_iter().map(|v| v / c.clone()).collect())
}

fn normalize_q0(p: RPoly, q: &RPoly) -> Result<RPoly> {
    let c = q
        .first()
        .cloned()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::internal("denominator with zero constant term"))?;
    Ok(p.into_iter().map(|v| v / c.clone()).collect())
}

fn rpoly_gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let mut a = rpoly_trim(a.clone());
    let mut b = rpoly_trim(b.clone());
    while !b.is_empty() {
        let r = rpoly_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let lead = a.last().cloned().expect("nonempty");
    a.into_iter().map(|c| c / lead.clone()).collect()
}

fn rpoly_rem(num: &RPoly, den: &RPoly) -> RPoly {
    let mut num = num.clone();
    let dlead = den.last().expect("nonzero divisor").clone();
    while num.len() >= den.len() {
        let shift = num.len() - den.len();
        let factor = num.last().expect("nonempty").clone() / dlead.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = num[shift + i].clone() - factor.clone() * dc.clone();
            num[shift + i] = v;
        }
        num = rpoly_trim(num);
    }
    num
}

fn rpoly_div_exact(num: &RPoly, den: &RPoly) -> Result<RPoly> {
    let mut num = rpoly_trim(num.clone());
    let den = rpoly_trim(den.clone());
    if den.is_empty() {
        return Err(Error::degenerate("division by the zero polynomial"));
    }
    let mut out = vec![Rat::zero(); num.len().saturating_sub(den.len()) + 1];
    let dlead = den.last().expect("nonzero").clone();
    while num.len() >= den.len() {
        let shift = num.len() - den.len();
        let factor = num.last().expect("nonempty").clone() / dlead.clone();
        out[shift] = factor.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = num[shift + i].clone() - factor.clone() * dc.clone();
            num[shift + i] = v;
        }
        num = rpoly_trim(num);
    }
    if !num.is_empty() {
        return Err(Error::internal("inexact polynomial division"));
    }
    Ok(rpoly_trim(out))
}

/// Integer polynomial with constant term first.
pub type ZPoly = Vec<Int>;

pub fn rpoly_to_zpoly(p: &RPoly) -> Result<ZPoly> {
    p.iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::domain("polynomial has non-integer coefficients"))
            }
        })
        .collect()
}

/// Power sums of the reciprocal roots of a polynomial with constant term 1,
/// via Newton's identities: for f = ∏(1 − β_j T),
/// s_r = −r·f_r − Σ_{i=1}^{r−1} f_i·s_{r−i}.
pub fn reciprocal_root_power_sums(f: &[Int], upto: usize) -> Result<Vec<Int>> {
    if f.is_empty() || !f[0].is_one() {
        return Err(Error::domain("polynomial must have constant term 1"));
    }
    let coeff = |i: usize| -> Int { f.get(i).cloned().unwrap_or_else(Int::zero) };
    let mut s: Vec<Int> = Vec::with_capacity(upto);
    for r in 1..=upto {
        let mut acc = -Int::from(r as i64) * coeff(r);
        for i in 1..r {
            acc -= coeff(i) * s[r - i - 1].clone();
        }
        s.push(acc);
    }
    Ok(s)
}

/// Fixed-point consistency: N_r = (power sums of 1/roots of Q) − (power
/// sums of 1/roots of P) for all supplied r, computed exactly with no
/// root extraction.
pub fn lefschetz_consistency(p: &ZPoly, q: &ZPoly, counts: &[u64]) -> Result<bool> {
    let upto = counts.len();
    let sq = reciprocal_root_power_sums(q, upto)?;
    let sp = reciprocal_root_power_sums(p, upto)?;
    for r in 1..=upto {
        let expected = sq[r - 1].clone() - sp[r - 1].clone();
        if expected != Int::from(counts[r - 1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Functional-equation symmetry for a genus-g numerator:
/// P(T) = q^g·T^{2g}·P(1/(qT)), i.e. p_{2g−i} = q^{g−i}·p_i.
pub fn functional_equation_symmetric(p: &ZPoly, q: u64, genus: usize) -> bool {
    let deg = 2 * genus;
    if p.len() != deg + 1 {
        return false;
    }
    let qq = Int::from(q);
    for i in 0..=genus {
        let expect = p[i].clone() * qq.pow((genus - i) as u32);
        if p[deg - i] != expect {
            return false;
        }
    }
    true
}
