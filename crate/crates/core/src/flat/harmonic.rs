//! Harmonic polynomials on ℝⁿ. Restricted to the unit sphere a degree-d one
//! is an eigenfunction of the sphere Laplacian with eigenvalue d(d+n−2).

use num_traits::{One, Zero};

use super::expr::RadialPoly;
use crate::numeric::{q, Q};

/// Number of seeds served by the complex-power construction.
pub fn complex_power_seeds(n: usize, d: u32) -> usize {
    if d == 0 {
        1
    } else {
        n * (n - 1)
    }
}

/// A nonzero harmonic polynomial, homogeneous of degree d. Seeds first walk
/// through Re/Im (x_i + i·x_j)^d over pairs i < j, so seed 0 gives x₁, x₁² − x₂²,
/// x₁³ − 3x₁x₂², …; later seeds take the harmonic projection of the degree-d
/// monomials in lexicographic order.
pub fn harmonic_polynomial(n: usize, d: u32, seed: usize) -> RadialPoly {
    assert!(n >= 2, "need at least two variables");
    if d == 0 {
        return RadialPoly::one(n);
    }
    let direct = complex_power_seeds(n, d);
    if seed < direct {
        let pair = seed / 2;
        let (i, j) = nth_pair(n, pair);
        complex_power(n, d, i, j, seed % 2 == 1)
    } else {
        let monos = monomials(n, d);
        let alpha = monos[(seed - direct) % monos.len()].clone();
        harmonic_projection(&RadialPoly::monomial(n, Q::one(), alpha, Q::zero()), d)
    }
}

fn nth_pair(n: usize, k: usize) -> (usize, usize) {
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if idx == k {
                return (i, j);
            }
            idx += 1;
        }
    }
    unreachable!("pair index out of range")
}

/// Re or Im of (x_i + i·x_j)^d.
pub fn complex_power(n: usize, d: u32, i: usize, j: usize, imaginary: bool) -> RadialPoly {
    let mut out = RadialPoly::zero(n);
    let mut binom = Q::one();
    for k in 0..=d {
        if k > 0 {
            binom = binom * q((d - k + 1) as i64) / q(k as i64);
        }
        if (k % 2 == 1) != imaginary {
            continue;
        }
        // i^k = ±1 on the part we keep
        let sign = if (k / 2) % 2 == 0 { Q::one() } else { -Q::one() };
        let mut alpha = vec![0; n];
        alpha[i] = d - k;
        alpha[j] += k;
        out = &out + &RadialPoly::monomial(n, &binom * sign, alpha, Q::zero());
    }
    out
}

fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Projection of a homogeneous degree-d polynomial p onto the harmonics:
/// Σ_k (−1)^k r^{2k} L^k p / (2^k k! Π_{j=1}^{k} (n + 2d − 2 − 2j)), L = Σ∂².
pub fn harmonic_projection(p: &RadialPoly, d: u32) -> RadialPoly {
    let n = p.n() as i64;
    let d = d as i64;
    let mut out = p.clone();
    let mut lk = p.clone();
    let mut denom = Q::one();
    let mut k = 1;
    loop {
        lk = lk.sum_second_partials();
        if lk.is_empty() {
            break;
        }
        denom = denom * q(2 * k) * q(n + 2 * d - 2 - 2 * k);
        let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
        out = &out + &lk.mul_r(&q(2 * k)).scale(&(sign / &denom));
        k += 1;
    }
    out.reduced()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_harmonic(p: &RadialPoly) -> bool {
        p.sum_second_partials().is_zero()
    }

    #[test]
    fn spec_examples() {
        let n = 4;
        assert_eq!(harmonic_polynomial(n, 1, 0), RadialPoly::x(n, 0));
        let x = |i| RadialPoly::x(n, i);
        assert_eq!(harmonic_polynomial(n, 2, 0), &(&x(0) * &x(0)) - &(&x(1) * &x(1)));
        let want = &(&(&x(0) * &x(0)) * &x(0)) - &(&(&x(0) * &x(1)) * &x(1)).scale(&q(3));
        assert_eq!(harmonic_polynomial(n, 3, 0), want);
    }

    #[test]
    fn every_seed_is_harmonic_and_homogeneous() {
        for n in 3..=5 {
            for d in 0..=4u32 {
                for seed in 0..complex_power_seeds(n, d) + 6 {
                    let h = harmonic_polynomial(n, d, seed);
                    assert!(!h.is_zero(), "n={n} d={d} seed={seed}");
                    assert!(is_harmonic(&h), "n={n} d={d} seed={seed}");
                    assert_eq!(h.homogeneity(), Some(q(d as i64)));
                }
            }
        }
    }

    #[test]
    fn projection_of_square() {
        let n = 4;
        let p = &RadialPoly::x(n, 0) * &RadialPoly::x(n, 0);
        let h = harmonic_projection(&p, 2);
        assert!(is_harmonic(&h));
        let diff = &h - &p;
        let r2 = RadialPoly::r_pow(n, q(2)).scale(&-Q::new(1.into(), 4.into()));
        assert!((&diff - &r2).is_zero());
    }
}
