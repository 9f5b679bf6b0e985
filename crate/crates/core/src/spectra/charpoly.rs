use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};

/// Cost guard for exact characteristic polynomials.
pub const MAX_CHARPOLY_VERTICES: usize = 24;

/// `det(xI - A)` with exact coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients as `i128`, if they fit.
    pub fn to_i128(&self) -> Option<Vec<i128>> {
        self.coeffs.iter().map(|c| i128::try_from(c).ok()).collect()
    }

    /// Divide out `(x - r)` exactly; `None` if `r` is not a root.
    pub fn deflate(&self, r: &BigInt) -> Option<Vec<BigInt>> {
        let n = self.degree();
        let mut q = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for i in (0..=n).rev() {
            let cur = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return cur.is_zero().then_some(q);
            }
            q[i - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "x".to_string(),
                (1, false) => format!("{mag}x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{mag}x^{i}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Faddeev–LeVerrier over big integers:
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
pub fn char_poly(g: &Graph) -> Result<CharPoly> {
    let n = g.order();
    if n > MAX_CHARPOLY_VERTICES {
        return Err(Error::SizeLimit {
            what: "characteristic polynomial vertex count",
            got: n,
            limit: MAX_CHARPOLY_VERTICES,
        });
    }
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| iter_bits(g.neighbors(v)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_1 = I, so A M_1 = A
    let mut m_mat: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for i in 0..n {
        m_mat[i * n + i] = BigInt::one();
    }
    for k in 1..=n {
        // am = A * M_k
        let mut am = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for &l in &nbrs[i] {
                for j in 0..n {
                    let v = &m_mat[l * n + j];
                    if !v.is_zero() {
                        am[i * n + j] += v;
                    }
                }
            }
        }
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let kk = BigInt::from(k);
        debug_assert!((&trace % &kk).is_zero());
        let c = -(trace / kk);
        coeffs[n - k] = c.clone();
        // M_{k+1} = A M_k + c_{n-k} I
        for i in 0..n {
            am[i * n + i] += &c;
        }
        m_mat = am;
    }
    let poly = CharPoly { coeffs };
    if n >= 1 {
        assert!(poly.coeffs[n].is_one(), "characteristic polynomial must be monic");
    }
    if n >= 2 {
        assert!(poly.coeffs[n - 1].is_zero(), "trace of A must vanish");
        assert_eq!(
            poly.coeffs[n - 2],
            -BigInt::from(g.size()),
            "second coefficient must be minus the edge count"
        );
    }
    Ok(poly)
}
