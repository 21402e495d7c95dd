//! Residue arithmetic mod n: scalar helpers and the small amount of matrix
//! machinery (determinant, inverse via adjugate lifts) the finite symplectic
//! module needs. Moduli are small, so entries are machine integers.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::det_bareiss;
use crate::matrix::imat_to_zmat;
use crate::{IMat, Int};

/// A residue in `[0, n)` together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModN {
    value: i64,
    modulus: i64,
}

impl ModN {
    pub fn new(value: i64, modulus: i64) -> Result<Self> {
        if modulus <= 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        Ok(ModN {
            value: value.rem_euclid(modulus),
            modulus,
        })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn is_unit(&self) -> bool {
        gcd_i64(self.value, self.modulus) == 1
    }

    fn check(&self, rhs: &ModN) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::shape("modulus mismatch"));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &ModN) -> Result<ModN> {
        self.check(rhs)?;
        ModN::new(self.value + rhs.value, self.modulus)
    }

    pub fn mul(&self, rhs: &ModN) -> Result<ModN> {
        self.check(rhs)?;
        ModN::new(self.value * rhs.value, self.modulus)
    }

    pub fn neg(&self) -> ModN {
        ModN::new(-self.value, self.modulus).expect("modulus unchanged")
    }

    pub fn inv(&self) -> Result<ModN> {
        let v = inv_mod(self.value, self.modulus)?;
        ModN::new(v, self.modulus)
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, x, y) with a·x + b·y = g ≥ 0.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn inv_mod(a: i64, n: i64) -> Result<i64> {
    let (g, x, _) = egcd(a.rem_euclid(n), n);
    if g != 1 {
        return Err(Error::domain(format!("{a} is not a unit mod {n}")));
    }
    Ok(x.rem_euclid(n))
}

/// Entrywise reduction into `[0, n)`.
pub fn mat_mod(m: &IMat, n: i64) -> IMat {
    m.map(|v| v.rem_euclid(n))
}

/// Product reduced mod n.
pub fn mul_mod(a: &IMat, b: &IMat, n: i64) -> Result<IMat> {
    Ok(mat_mod(&a.mul_ref(b)?, n))
}

/// Determinant mod n, computed exactly over ℤ on the reduced lift. The
/// determinant is a polynomial in the entries, so this equals the
/// determinant of the residue matrix.
pub fn det_mod(m: &IMat, n: i64) -> Result<i64> {
    let z = imat_to_zmat(&mat_mod(m, n));
    let d = det_bareiss(&z)?;
    let nn = Int::from(n);
    let r = d.mod_floor(&nn);
    Ok(r.to_i64().expect("residue fits"))
}

/// True iff the residue matrix is invertible, i.e. det is a unit mod n.
pub fn is_invertible_mod(m: &IMat, n: i64) -> Result<bool> {
    Ok(gcd_i64(det_mod(m, n)?, n) == 1)
}

/// Inverse mod n via the integer adjugate of the reduced lift.
pub fn inv_mod_matrix(m: &IMat, n: i64) -> Result<IMat> {
    let size = m.rows();
    if !m.is_square() {
        return Err(Error::shape("inverse of non-square matrix"));
    }
    let d = det_mod(m, n)?;
    let dinv = inv_mod(d, n)
        .map_err(|_| Error::degenerate(format!("matrix is not invertible mod {n}")))?;
    let z = imat_to_zmat(&mat_mod(m, n));
    // Adjugate via cofactors; sizes here are tiny (2d ≤ 8).
    let mut adj = IMat::zero(size, size);
    let idx: Vec<usize> = (0..size).collect();
    for r in 0..size {
        for c in 0..size {
            let rows: Vec<usize> = idx.iter().copied().filter(|&i| i != r).collect();
            let cols: Vec<usize> = idx.iter().copied().filter(|&j| j != c).collect();
            let minor = det_bareiss(&z.submatrix(&rows, &cols))?;
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            let val = (Int::from(sign) * minor).mod_floor(&Int::from(n));
            adj.set(c, r, val.to_i64().expect("residue fits"));
        }
    }
    Ok(mat_mod(&adj.map(|v| v * dinv), n))
}

/// Units of ℤ/nℤ in increasing order. ℤ/1ℤ has the single unit 0.
pub fn units_mod(n: i64) -> Vec<i64> {
    if n <= 1 {
        return vec![0];
    }
    (1..n).filter(|&u| gcd_i64(u, n) == 1).collect()
}
