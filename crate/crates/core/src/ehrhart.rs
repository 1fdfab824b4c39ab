//! Ehrhart polynomials and h* vectors.
//!
//! The counting function `L(t) = #(tP ∩ Z^d)` of a lattice `d`-polytope
//! is a degree-`d` polynomial, recovered here exactly by Lagrange
//! interpolation through `t = 0..=d`. The h* vector is the coefficient
//! vector of `(1-z)^(d+1) * Σ_t L(t) z^t`; expanding `L` monomial by
//! monomial turns that series into the finite sum
//!
//! ```text
//! h*(z) = Σ_i c_i E_i(z) (1-z)^(d-i),     L(t) = Σ_i c_i t^i,
//! ```
//!
//! with `E_i` the i-th Eulerian polynomial. For a lattice polytope the
//! result has nonnegative integer entries, `h*_0 = 1`,
//! `h*_1 = L(1) - (d+1)`, and `h*_d` counts interior lattice points;
//! [`hstar`] checks all four.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::enumerate::{self, DEFAULT_POINT_BUDGET};
use crate::polytope::AlcovedPolytope;
use crate::{Error, Rational, Result};

/// Dense univariate polynomial over the rationals, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Trims trailing zeros; the zero polynomial keeps one coefficient.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, t: &BigInt) -> Rational {
        let t = Rational::from(t.clone());
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &t + c;
        }
        acc
    }

    pub fn evaluate_u64(&self, t: u64) -> Rational {
        self.evaluate(&BigInt::from(t))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (pow, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && pow == 0) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if pow == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                if pow > 0 {
                    write!(f, "*")?;
                }
            }
            match pow {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{pow}")?,
            }
        }
        Ok(())
    }
}

/// h* vector of a lattice `d`-polytope: `d + 1` nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarVector {
    entries: Vec<BigInt>,
}

impl HStarVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(HStarVector { entries })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Dimension of the underlying polytope.
    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    /// Sum of entries: the normalized volume `d! vol(P)`.
    pub fn sum(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

impl Index<usize> for HStarVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.entries[i]
    }
}

impl fmt::Display for HStarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, e) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Rows `0..=max_row` of the Eulerian triangle; row `n` has entries
/// `A(n, k)` for `k = 0..=n`, where `A(n, k)` counts permutations of `n`
/// letters with `k` ascending runs. Row 3 is `(0, 1, 4, 1)`.
pub fn eulerian_numbers(max_row: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_row + 1);
    rows.push(vec![BigInt::one()]);
    for n in 1..=max_row {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigInt::zero());
        for k in 1..=n {
            let up = BigInt::from((n - k + 1) as u64) * &prev[k - 1];
            let stay = if k < n { BigInt::from(k as u64) * &prev[k] } else { BigInt::zero() };
            row.push(up + stay);
        }
        rows.push(row);
    }
    rows
}

/// Binomial coefficient `C(n, k)` for `n >= 0`.
pub(crate) fn binomial(n: &BigInt, k: usize) -> BigInt {
    debug_assert!(!n.is_negative());
    let mut acc = BigInt::one();
    for s in 1..=k {
        acc *= n - BigInt::from((k - s) as u64);
        debug_assert!((&acc % BigInt::from(s as u64)).is_zero());
        acc /= BigInt::from(s as u64);
    }
    acc
}

/// Interpolates the Ehrhart polynomial through the exact lattice-point
/// counts of the dilates `t = 0..=dim`.
pub fn ehrhart_polynomial(p: &AlcovedPolytope) -> Result<Polynomial> {
    ehrhart_polynomial_budgeted(p, DEFAULT_POINT_BUDGET)
}

/// Same with a per-dilate cap on enumerated points.
pub fn ehrhart_polynomial_budgeted(p: &AlcovedPolytope, budget: u64) -> Result<Polynomial> {
    let d = p.dim();
    let mut values = Vec::with_capacity(d + 1);
    for t in 0..=d as u64 {
        values.push(BigInt::from(enumerate::count_dilate_budgeted(p.hrep(), t, budget)?));
    }
    let poly = lagrange(&values);
    // Full dimension forces degree exactly d with positive leading term
    // (the volume); anything else is a counting bug.
    assert_eq!(poly.degree(), d, "interpolated degree mismatch");
    assert!(poly.coeffs()[d].is_positive(), "nonpositive leading coefficient");
    Ok(poly)
}

/// Lagrange interpolation through `(t, values[t])` for `t = 0..len-1`.
fn lagrange(values: &[BigInt]) -> Polynomial {
    let n = values.len();
    let mut acc = vec![Rational::zero(); n];
    for (t, value) in values.iter().enumerate() {
        // Numerator Π_{s != t} (x - s), denominator Π_{s != t} (t - s).
        let mut num = vec![Rational::one()];
        let mut den = Rational::one();
        for s in 0..n {
            if s == t {
                continue;
            }
            num = mul_linear(&num, s as i64);
            den *= Rational::from(BigInt::from(t as i64 - s as i64));
        }
        let scale = Rational::from(value.clone()) / den;
        for (a, c) in acc.iter_mut().zip(num) {
            *a += c * &scale;
        }
    }
    Polynomial::new(acc)
}

/// Multiplies by `(x - root)`.
fn mul_linear(poly: &[Rational], root: i64) -> Vec<Rational> {
    let r = Rational::from(BigInt::from(root));
    let mut out = vec![Rational::zero(); poly.len() + 1];
    for (k, c) in poly.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c * &r;
    }
    out
}

/// Converts an Ehrhart polynomial of a lattice `dim`-polytope into its
/// h* vector. Fails with [`Error::NotLatticeEhrhart`] when the input is
/// not such a polynomial (degree too high, fractional or negative
/// entries).
pub fn ehr_to_hstar(ehr: &Polynomial, dim: usize) -> Result<HStarVector> {
    if ehr.degree() > dim {
        return Err(Error::NotLatticeEhrhart { reason: "degree exceeds the dimension" });
    }
    let eulerian = eulerian_numbers(dim);
    // h*(z) = Σ_i c_i E_i(z) (1-z)^(dim-i), accumulated over Q.
    let mut h = vec![Rational::zero(); dim + 1];
    for (i, c) in ehr.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = vec![Rational::zero(); i + 1];
        for (k, a) in eulerian[i].iter().enumerate() {
            term[k] = Rational::from(a.clone());
        }
        for _ in 0..dim - i {
            term = mul_one_minus_z(&term);
        }
        for (slot, t) in h.iter_mut().zip(term) {
            *slot += t * c;
        }
    }
    let mut entries = Vec::with_capacity(dim + 1);
    for v in h {
        if !v.is_integer() {
            return Err(Error::NotLatticeEhrhart { reason: "fractional h* entry" });
        }
        let v = v.to_integer();
        if v.is_negative() {
            return Err(Error::NotLatticeEhrhart { reason: "negative h* entry" });
        }
        entries.push(v);
    }
    HStarVector::new(entries)
}

/// Multiplies by `(1 - z)`.
fn mul_one_minus_z(poly: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); poly.len() + 1];
    for (k, c) in poly.iter().enumerate() {
        out[k] += c;
        out[k + 1] -= c;
    }
    out
}

/// h* vector of the polytope, with its defining identities checked:
/// `h*_0 = 1`, `h*_1 = L(1) - (dim+1)`, `h*_dim = #interior points`.
pub fn hstar(p: &AlcovedPolytope) -> Result<HStarVector> {
    hstar_budgeted(p, DEFAULT_POINT_BUDGET)
}

pub fn hstar_budgeted(p: &AlcovedPolytope, budget: u64) -> Result<HStarVector> {
    let d = p.dim();
    let ehr = ehrhart_polynomial_budgeted(p, budget)?;
    let h = ehr_to_hstar(&ehr, d)?;
    let points = enumerate::count_budgeted(p.hrep(), budget)?;
    let interior = enumerate::count_interior_budgeted(p.hrep(), budget)?;
    assert!(h[0].is_one(), "h*_0 = {} for {p}", h[0]);
    assert_eq!(
        h[1],
        BigInt::from(points) - BigInt::from(d as u64 + 1),
        "h*_1 disagrees with the point count for {p}"
    );
    assert_eq!(h[d], BigInt::from(interior), "h*_dim disagrees with the interior count for {p}");
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hrep::HRep;

    fn rat(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    fn rat2(n: i64, d: i64) -> Rational {
        Rational::from(BigInt::from(n)) / Rational::from(BigInt::from(d))
    }

    fn unit_cube(dim: usize) -> AlcovedPolytope {
        let mut cs: Vec<crate::hrep::Constraint> = Vec::new();
        for i in 1..=dim {
            cs.push((i, 0, 1).into());
            cs.push((0, i, 0).into());
        }
        AlcovedPolytope::validate(HRep::new(dim, cs).unwrap()).unwrap()
    }

    #[test]
    fn eulerian_rows_through_five() {
        let rows = eulerian_numbers(5);
        let expect: [&[i64]; 6] = [
            &[1],
            &[0, 1],
            &[0, 1, 1],
            &[0, 1, 4, 1],
            &[0, 1, 11, 11, 1],
            &[0, 1, 26, 66, 26, 1],
        ];
        for (row, want) in rows.iter().zip(expect) {
            let want: Vec<BigInt> = want.iter().map(|&v| BigInt::from(v)).collect();
            assert_eq!(row, &want);
        }
        // Row sums are factorials.
        assert_eq!(rows[5].iter().sum::<BigInt>(), BigInt::from(120));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(4), 0), BigInt::from(1));
        assert_eq!(binomial(&BigInt::from(3), 5), BigInt::from(0));
        assert_eq!(binomial(&BigInt::from(10), 10), BigInt::from(1));
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(Polynomial::new(vec![rat(1), rat(3), rat(3)]).to_string(), "3*t^2 + 3*t + 1");
        assert_eq!(Polynomial::new(vec![rat(0), rat(-1)]).to_string(), "-t");
        assert_eq!(Polynomial::new(vec![rat(0)]).to_string(), "0");
        assert_eq!(Polynomial::new(vec![rat2(1, 2), rat(1)]).to_string(), "t + 1/2");
    }

    #[test]
    fn interpolation_recovers_cube_polynomial() {
        // L(t) = (t + 1)^dim.
        for dim in 1..=4 {
            let ehr = ehrhart_polynomial(&unit_cube(dim)).unwrap();
            for t in 0..=2 * dim as u64 {
                let expect = BigInt::from((t + 1).pow(dim as u32));
                assert_eq!(ehr.evaluate_u64(t), Rational::from(expect));
            }
        }
    }

    #[test]
    fn minimal_reflexive_dim_two_polynomial() {
        let p = AlcovedPolytope::minimal_reflexive(2).unwrap();
        let ehr = ehrhart_polynomial(&p).unwrap();
        assert_eq!(ehr.coeffs(), &[rat(1), rat(3), rat(3)]);
    }

    #[test]
    fn cube_hstar_is_shifted_eulerian_row() {
        for dim in 1..=5 {
            let h = hstar(&unit_cube(dim)).unwrap();
            let row = eulerian_numbers(dim).pop().unwrap();
            for k in 0..dim {
                assert_eq!(h[k], row[k + 1], "dim {dim}, k {k}");
            }
            assert!(h[dim].is_zero());
        }
    }

    #[test]
    fn minimal_reflexive_hstar_vectors() {
        let h2 = hstar(&AlcovedPolytope::minimal_reflexive(2).unwrap()).unwrap();
        assert_eq!(h2.entries(), &[BigInt::from(1), BigInt::from(4), BigInt::from(1)]);
        let h3 = hstar(&AlcovedPolytope::minimal_reflexive(3).unwrap()).unwrap();
        assert_eq!(
            h3.entries(),
            &[BigInt::from(1), BigInt::from(11), BigInt::from(11), BigInt::from(1)]
        );
        assert_eq!(h3.sum(), BigInt::from(24));
    }

    #[test]
    fn hstar_round_trip_reproduces_counts() {
        // L(t) = Σ_i h*_i C(t + d - i, d) must give back the counts.
        for seed in 0..6 {
            let p = AlcovedPolytope::random(3, seed, true).unwrap();
            let d = p.dim();
            let h = hstar(&p).unwrap();
            for t in 0..=(2 * d as u64 + 1) {
                let mut expect = BigInt::zero();
                for i in 0..=d {
                    let n = BigInt::from(t) + BigInt::from((d - i) as u64);
                    expect += &h[i] * binomial(&n, d);
                }
                let count = enumerate::count_dilate(p.hrep(), t).unwrap();
                assert_eq!(expect, BigInt::from(count), "seed {seed}, t {t}");
            }
        }
    }

    #[test]
    fn non_lattice_polynomial_is_rejected() {
        // The half-open right triangle (0,0),(1,0),(1,1) scaled by 1/2:
        // t^2/2 + t/2 + 1 is no lattice Ehrhart polynomial.
        let bad = Polynomial::new(vec![rat(1), rat2(1, 2), rat2(1, 2)]);
        assert_eq!(
            ehr_to_hstar(&bad, 2),
            Err(Error::NotLatticeEhrhart { reason: "negative h* entry" })
        );
        let frac = Polynomial::new(vec![rat(1), rat2(1, 3)]);
        assert!(matches!(ehr_to_hstar(&frac, 1), Err(Error::NotLatticeEhrhart { .. })));
        let toodeep = Polynomial::new(vec![rat(1), rat(1), rat(1)]);
        assert_eq!(
            ehr_to_hstar(&toodeep, 1),
            Err(Error::NotLatticeEhrhart { reason: "degree exceeds the dimension" })
        );
    }
}
