//! Deterministic sample generators used by the property tests: a small
//! splitmix64 PRNG and random exact fixtures (rationals, symmetric matrices,
//! Siegel points, rational symplectic matrices).

use num_traits::{One, Zero};

use crate::linalg::{is_positive_definite, symplectic_gram};
use crate::matrix::Matrix;
use crate::scalar::{rat, GaussRat};
use crate::siegel::{SiegelPoint, SymplecticSimilitude};
use crate::{GMat, QMat, Rat};

/// splitmix64; deterministic, seedable, no dependencies.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in the inclusive range `[lo, hi]`.
    pub fn next_i64_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Small random rational with numerator in `[-bound, bound]` and
    /// denominator in `[1, dbound]`.
    pub fn next_rat(&mut self, bound: i64, dbound: i64) -> Rat {
        rat(self.next_i64_in(-bound, bound), self.next_i64_in(1, dbound))
    }
}

/// Random symmetric rational matrix with small entries.
pub fn random_symmetric(rng: &mut SplitMix64, n: usize, bound: i64) -> QMat {
    let mut m = QMat::zero(n, n);
    for r in 0..n {
        for c in r..n {
            let v = rng.next_rat(bound, 3);
            m.set(r, c, v.clone());
            m.set(c, r, v);
        }
    }
    m
}

/// Random point of the upper Siegel half space with Gaussian-rational
/// entries: X symmetric random, Im = Aᵀ·A + I for random integer A, which is
/// positive definite by construction (verified exactly anyway).
pub fn random_siegel_point(rng: &mut SplitMix64, d: usize) -> SiegelPoint {
    loop {
        let x = random_symmetric(rng, d, 3);
        let a = QMat::from_fn(d, d, |_, _| rat(rng.next_i64_in(-2, 2), 1));
        let mut im = a.transpose().mul_ref(&a).unwrap();
        im = im.add_ref(&QMat::identity(d)).unwrap();
        debug_assert!(is_positive_definite(&im).unwrap());
        let y: GMat = Matrix::from_fn(d, d, |r, c| {
            GaussRat::new(x.at(r, c).clone(), im.at(r, c).clone())
        });
        if let Ok(p) = SiegelPoint::new(y) {
            return p;
        }
    }
}

/// Random tangent direction: a symmetric Gaussian-rational matrix.
pub fn random_symmetric_complex(rng: &mut SplitMix64, d: usize, bound: i64) -> GMat {
    let re = random_symmetric(rng, d, bound);
    let im = random_symmetric(rng, d, bound);
    Matrix::from_fn(d, d, |r, c| {
        GaussRat::new(re.at(r, c).clone(), im.at(r, c).clone())
    })
}

/// Random element of Sp_{2d}(ℚ), built as a short word in the elementary
/// generators `[[I, S], [0, I]]`, `[[I, 0], [S, I]]` (S symmetric) and the
/// standard involution `[[0, I], [-I, 0]]`.
pub fn random_sp(rng: &mut SplitMix64, d: usize, factors: usize) -> SymplecticSimilitude {
    let id = QMat::identity(d);
    let z = QMat::zero(d, d);
    let mut g = QMat::identity(2 * d);
    for _ in 0..factors {
        let s = random_symmetric(rng, d, 2);
        let f = match rng.next_u64() % 3 {
            0 => QMat::block2x2(&id, &s, &z, &id).unwrap(),
            1 => QMat::block2x2(&id, &z, &s, &id).unwrap(),
            _ => QMat::block2x2(&z, &id, &id.neg_ref(), &z).unwrap(),
        };
        g = g.mul_ref(&f).unwrap();
    }
    let sim = SymplecticSimilitude::new(g).expect("word in Sp generators is symplectic");
    debug_assert!(sim.multiplier().is_one());
    sim
}

/// Random similitude with positive non-unit multiplier: a random symplectic
/// element times the diagonal similitude `diag(c·I, I)`.
pub fn random_gsp_positive(rng: &mut SplitMix64, d: usize, factors: usize) -> SymplecticSimilitude {
    let c = rat(rng.next_i64_in(1, 4), 1);
    let mut diag = QMat::identity(2 * d);
    for i in 0..d {
        diag.set(i, i, c.clone());
    }
    let g = random_sp(rng, d, factors);
    let prod = g.matrix().mul_ref(&diag).unwrap();
    SymplecticSimilitude::new(prod).expect("product of similitudes")
}

/// The Gaussian-rational unit circle points used where a generic unit
/// complex number is needed; all have exact norm 1.
pub fn unit_circle_points() -> Vec<GaussRat> {
    vec![
        GaussRat::from_ints(1, 0),
        GaussRat::i(),
        GaussRat::new(rat(3, 5), rat(4, 5)),
        GaussRat::new(rat(5, 13), rat(-12, 13)),
    ]
}

/// Checks ψ-compatibility of a rational matrix: returns its multiplier when
/// g is a symplectic similitude, used by tests that build elements by hand.
pub fn multiplier_of(g: &QMat) -> Option<Rat> {
    let d = g.rows() / 2;
    let m: QMat = symplectic_gram(d).ok()?;
    let gram = g.transpose().mul_ref(&m).ok()?.mul_ref(g).ok()?;
    let mut c: Option<Rat> = None;
    for r in 0..2 * d {
        for col in 0..2 * d {
            let target = m.at(r, col);
            let got = gram.at(r, col);
            if target.is_zero() {
                if !got.is_zero() {
                    return None;
                }
            } else {
                let ratio = got.clone() / target.clone();
                match &c {
                    None => c = Some(ratio),
                    Some(prev) if *prev == ratio => {}
                    _ => return None,
                }
            }
        }
    }
    c.filter(|v| !v.is_zero())
}

pub fn _ensure_gmat_alias(m: &GMat) -> usize {
    m.rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prng_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_sp_has_multiplier_one() {
        let mut rng = SplitMix64::new(1);
        for d in 1..=3 {
            for _ in 0..5 {
                let g = random_sp(&mut rng, d, 4);
                assert_eq!(multiplier_of(g.matrix()), Some(Rat::one()));
            }
        }
    }

    #[test]
    fn circle_points_have_norm_one() {
        for z in unit_circle_points() {
            assert!(z.norm().is_one());
        }
    }

    #[test]
    fn siegel_points_land_upstairs() {
        let mut rng = SplitMix64::new(9);
        for d in 1..=3 {
            let p = random_siegel_point(&mut rng, d);
            assert_eq!(p.dim(), d);
        }
        let _ = crate::matrix::qmat_to_gmat(&QMat::identity(2));
    }
}
