//! Exact lower bounds on the number of maximum-genus embeddings of `K_{n,n}`.
//!
//! * `f1(n) = 2^((n-1)/2) · ((n-2)!!)^n · ((n-1)!)^n`, from v-type-edge insertion.
//! * `f2(n) = ((n-1)!)^(2n) / 4^((n-1)²/2)`, the `∏ (d(v)-1)! / 4^γ_M` bound.
//! * Stahl's bound `(d_1-5)!…(d_4-5)! · ∏_{i≥5} (d_i-2)!`, with `m! = 1` for `m ≤ 0`.
//!
//! Everything here is integer or rational arithmetic; floats appear only in
//! the optional magnitude annotation of rendered tables.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::BoundsError;

pub fn factorial_u64(m: u64) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn factorial(m: i64) -> Result<BigUint, BoundsError> {
    if m < 0 {
        return Err(BoundsError::NegativeFactorial(m));
    }
    Ok(factorial_u64(m as u64))
}

/// `m!` for `m > 0`, and 1 for every `m ≤ 0`.
pub fn stahl_factorial(m: i64) -> BigUint {
    if m <= 0 {
        BigUint::one()
    } else {
        factorial_u64(m as u64)
    }
}

/// `m·(m-2)·…`, with `(-1)!! = 0!! = 1!! = 1`.
pub fn double_factorial(m: i64) -> Result<BigUint, BoundsError> {
    if m < -1 {
        return Err(BoundsError::DoubleFactorialDomain(m));
    }
    let mut acc = BigUint::one();
    let mut k = m;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

fn require_odd(n: u64, min: u64) -> Result<(), BoundsError> {
    if n.is_multiple_of(2) {
        return Err(BoundsError::EvenN(n));
    }
    if n < min {
        return Err(BoundsError::TooSmall { n, min });
    }
    Ok(())
}

pub fn f1(n: u64) -> Result<BigUint, BoundsError> {
    require_odd(n, 1)?;
    let exp = n as u32;
    let two_pow = BigUint::one() << ((n - 1) / 2);
    let dfact = double_factorial(n as i64 - 2)?;
    let fact = factorial_u64(n - 1);
    Ok(two_pow * dfact.pow(exp) * fact.pow(exp))
}

/// Exact reduced rational; `γ_M(K_{n,n}) = (n-1)²/2` for odd `n`.
pub fn f2(n: u64) -> Result<BigRational, BoundsError> {
    require_odd(n, 3)?;
    let numer = BigInt::from(factorial_u64(n - 1).pow(2 * n as u32));
    let genus = (n - 1) * (n - 1) / 2;
    let denom = BigInt::one() << (2 * genus);
    Ok(BigRational::new(numer, denom))
}

/// Applies the degree sequence in the caller's order: the first four entries
/// take `(d-5)!`, the rest `(d-2)!`.
pub fn stahl_bound(degrees: &[u64]) -> Result<BigUint, BoundsError> {
    if degrees.is_empty() {
        return Err(BoundsError::EmptySequence);
    }
    Ok(degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| stahl_factorial(d as i64 - if i < 4 { 5 } else { 2 }))
        .product())
}

/// Ascending order, so the four smallest degrees take the `(d-5)!` penalty,
/// which maximizes the bound.
pub fn stahl_order(degrees: &[u64]) -> Vec<u64> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    sorted
}

pub fn stahl_bound_knn(n: u64) -> Result<BigUint, BoundsError> {
    stahl_bound(&vec![n; 2 * n as usize])
}

/// Values of `f1(n) - f2(n)` as printed alongside the bounds in the literature.
pub const PRINTED_F1_MINUS_F2: &[(u64, u64)] = &[(3, 16), (5, 6_772_211_712)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u64,
    pub f1: BigUint,
    pub f2: BigRational,
    pub stahl: BigUint,
    pub f1_minus_f2: BigRational,
    pub f1_vs_f2: Ordering,
    pub f1_vs_stahl: Ordering,
    /// Printed value of `f1 - f2`, where one exists.
    pub printed_difference: Option<u64>,
}

impl BoundReport {
    pub fn new(n: u64) -> Result<BoundReport, BoundsError> {
        let f1 = f1(n)?;
        let f2 = f2(n)?;
        let stahl = stahl_bound_knn(n)?;
        let f1_rational = BigRational::from_integer(BigInt::from(f1.clone()));
        let f1_minus_f2 = &f1_rational - &f2;
        Ok(BoundReport {
            n,
            f1_vs_f2: f1_rational.cmp(&f2),
            f1_vs_stahl: f1.cmp(&stahl),
            f1_minus_f2,
            printed_difference: PRINTED_F1_MINUS_F2.iter().find(|(m, _)| *m == n).map(|&(_, d)| d),
            f1,
            f2,
            stahl,
        })
    }

    /// True when a printed difference exists and the exact value disagrees.
    pub fn discrepancy(&self) -> bool {
        match self.printed_difference {
            Some(printed) => self.f1_minus_f2 != BigRational::from_integer(BigInt::from(printed)),
            None => false,
        }
    }
}

pub fn compare_table(ns: &[u64]) -> Result<Vec<BoundReport>, BoundsError> {
    ns.iter().map(|&n| BoundReport::new(n)).collect()
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ordering_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

/// ` (≈6.3e13)` for values of seven or more digits, empty otherwise.
pub fn magnitude(value: &BigUint) -> String {
    let digits = value.to_string();
    if digits.len() < 7 {
        return String::new();
    }
    format!(" (≈{}.{}e{})", &digits[..1], &digits[1..2], digits.len() - 1)
}

fn signed_magnitude(r: &BigRational) -> String {
    let int = r.to_integer();
    let sign = if int < BigInt::zero() { "-" } else { "" };
    let m = magnitude(int.magnitude());
    if m.is_empty() {
        m
    } else {
        m.replacen('≈', &format!("≈{sign}"), 1)
    }
}

pub fn render_table(rows: &[BoundReport]) -> String {
    let mut out = String::new();
    for row in rows {
        let _ = writeln!(out, "n = {}", row.n);
        let _ = writeln!(out, "  f1        {}{}", row.f1, magnitude(&row.f1));
        let _ = writeln!(out, "  f2        {}{}", rational_string(&row.f2), signed_magnitude(&row.f2));
        let _ = writeln!(out, "  stahl     {}{}", row.stahl, magnitude(&row.stahl));
        let _ = writeln!(
            out,
            "  f1 - f2   {}{}",
            rational_string(&row.f1_minus_f2),
            signed_magnitude(&row.f1_minus_f2)
        );
        let _ = writeln!(out, "  f1 vs f2      {}", ordering_word(row.f1_vs_f2));
        let _ = writeln!(out, "  f1 vs stahl   {}", ordering_word(row.f1_vs_stahl));
        if let Some(printed) = row.printed_difference {
            if row.discrepancy() {
                let _ = writeln!(
                    out,
                    "  note: printed f1 - f2 = {printed} disagrees with the exact value {}",
                    rational_string(&row.f1_minus_f2)
                );
            } else {
                let _ = writeln!(out, "  printed f1 - f2 = {printed} matches");
            }
        }
    }
    out
}

/// One `key=value` line per n.
pub fn render_records(rows: &[BoundReport]) -> String {
    let mut out = String::new();
    for row in rows {
        let _ = write!(
            out,
            "n={} f1={} f2={} stahl={} f1_minus_f2={} f1_vs_f2={} f1_vs_stahl={}",
            row.n,
            row.f1,
            rational_string(&row.f2),
            row.stahl,
            rational_string(&row.f1_minus_f2),
            ordering_word(row.f1_vs_f2),
            ordering_word(row.f1_vs_stahl),
        );
        if let Some(printed) = row.printed_difference {
            let _ = write!(out, " printed_f1_minus_f2={printed} discrepancy={}", row.discrepancy());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(7).unwrap(), big(5040));
        assert_eq!(factorial(0).unwrap(), big(1));
        assert_eq!(factorial(-1), Err(BoundsError::NegativeFactorial(-1)));
        assert_eq!(stahl_factorial(-2), big(1));
        assert_eq!(stahl_factorial(0), big(1));
        assert_eq!(stahl_factorial(4), big(24));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(3).unwrap(), big(3));
        assert_eq!(double_factorial(7).unwrap(), big(105));
        assert_eq!(double_factorial(8).unwrap(), big(384));
        for m in [-1, 0, 1] {
            assert_eq!(double_factorial(m).unwrap(), big(1));
        }
        assert_eq!(double_factorial(-2), Err(BoundsError::DoubleFactorialDomain(-2)));
    }

    #[test]
    fn f1_values() {
        assert_eq!(f1(1).unwrap(), big(1));
        assert_eq!(f1(3).unwrap(), big(16));
        assert_eq!(f1(5).unwrap(), big(7_739_670_528));
        assert_eq!(f1(4), Err(BoundsError::EvenN(4)));
    }

    #[test]
    fn f2_values() {
        assert_eq!(f2(3).unwrap(), BigRational::from_integer(4.into()));
        assert_eq!(f2(5).unwrap(), BigRational::from_integer(967_458_816u64.into()));
        assert_eq!(f2(6), Err(BoundsError::EvenN(6)));
        assert_eq!(f2(1), Err(BoundsError::TooSmall { n: 1, min: 3 }));
    }

    #[test]
    fn stahl_values() {
        assert_eq!(stahl_bound_knn(3).unwrap(), big(1));
        assert_eq!(stahl_bound_knn(7).unwrap(), big(16) * big(120).pow(10));
        assert_eq!(stahl_bound_knn(9).unwrap(), big(24).pow(4) * big(5040).pow(14));
        assert_eq!(stahl_bound(&[]), Err(BoundsError::EmptySequence));
        // Short sequences: every entry takes (d-5)!.
        assert_eq!(stahl_bound(&[7, 8]).unwrap(), big(2 * 6));
        assert_eq!(stahl_order(&[9, 3, 7, 3, 5]), vec![3, 3, 5, 7, 9]);
    }

    #[test]
    fn report_flags_printed_difference() {
        let r3 = BoundReport::new(3).unwrap();
        assert_eq!(r3.f1_minus_f2, BigRational::from_integer(12.into()));
        assert!(r3.discrepancy());
        let r5 = BoundReport::new(5).unwrap();
        assert_eq!(r5.f1_minus_f2, BigRational::from_integer(6_772_211_712u64.into()));
        assert!(!r5.discrepancy());
        let r7 = BoundReport::new(7).unwrap();
        assert_eq!(r7.printed_difference, None);
        assert!(render_table(std::slice::from_ref(&r3)).contains("disagrees"));
        assert!(render_records(&[r3]).contains("discrepancy=true"));
    }

    #[test]
    fn magnitude_annotation() {
        assert_eq!(magnitude(&big(999_999)), "");
        assert_eq!(magnitude(&big(7_739_670_528)), " (≈7.7e9)");
    }
}
