//! Closed-form bounds, evaluated in exact rational arithmetic.
//!
//! The status bounds take `n` = number of vertices *outside* the source set,
//! not the order of the whole graph.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::metrics::LevelStructure;

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(numer: i128, denom: i128) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn int(x: i64) -> Self {
        Rational(Ratio::from_integer(x as i128))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl From<i64> for Rational {
    fn from(x: i64) -> Self {
        Rational::int(x)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p: i128 = p.trim().parse().map_err(|_| err())?;
        let q: i128 = q.trim().parse().map_err(|_| err())?;
        if q == 0 {
            return Err(err());
        }
        Ok(Rational::new(p, q))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<i64> for Rational {
            type Output = Rational;
            fn $m(self, rhs: i64) -> Rational {
                Rational(self.0.$m(Ratio::from_integer(rhs as i128)))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {0} is below 4")]
    TooSmall(i64),
}

fn r(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

/// Maximum Wiener index over quadrangulations on `n` vertices:
/// `(n^3 + 14n - 24) / 12` for even `n`, `(n^3 + 11n - 12) / 12` for odd `n`.
pub fn conjectured_max(n: i64) -> Result<i64, BoundsError> {
    if n < 4 {
        return Err(BoundsError::TooSmall(n));
    }
    let m = n as i128;
    let numer = if n % 2 == 0 { m * m * m + 14 * m - 24 } else { m * m * m + 11 * m - 12 };
    debug_assert_eq!(numer % 12, 0);
    Ok((numer / 12) as i64)
}

/// `n^3/12 + 7n/6 - 2`, the even-order extremal value as a polynomial in `n`.
pub fn even_extremal_poly(n: i64) -> Rational {
    let m = n as i128;
    r(m * m * m, 12) + r(7 * m, 6) - 2
}

/// `n^3/12 + 11n/12 - 1`, the odd-order extremal value as a polynomial in `n`.
pub fn odd_extremal_poly(n: i64) -> Rational {
    let m = n as i128;
    r(m * m * m, 12) + r(11 * m, 12) - 1
}

/// Status bound when every non-terminal level holds at least 2 vertices.
pub fn level_bound_two(n: i64) -> Rational {
    let m = n as i128;
    if n % 2 == 0 {
        r(m * m + 2 * m, 4)
    } else {
        r(m * m + 2 * m + 1, 4)
    }
}

/// Status bound when non-terminal levels hold at least 2 vertices and the
/// second level at least 3.
pub fn level_bound_second_three(n: i64) -> Rational {
    let m = n as i128;
    if n % 2 == 0 {
        r(m * m + 8, 4)
    } else {
        r(m * m + 7, 4)
    }
}

/// Status bound when every non-terminal level holds at least 3 vertices:
/// `(n^2 + 3n + 2) / 6`.
pub fn level_bound_three(n: i64) -> Rational {
    let m = n as i128;
    r(m * m + 3 * m + 2, 6)
}

/// Upper bound `(n - 1)^2 / 18` on the least distance decrease of a good
/// vertex surgery.
pub fn dec_bound(n: i64) -> Rational {
    let m = n as i128 - 1;
    r(m * m, 18)
}

/// The three level-size hypotheses and their status bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelLemma {
    /// Non-terminal levels hold at least 2 vertices.
    Two,
    /// As `Two`, and level 2 exists with at least 3 vertices.
    SecondThree,
    /// Non-terminal levels hold at least 3 vertices.
    Three,
}

impl LevelLemma {
    pub const ALL: [LevelLemma; 3] = [LevelLemma::Two, LevelLemma::SecondThree, LevelLemma::Three];

    pub fn applies(&self, levels: &LevelStructure) -> bool {
        let min = levels.non_terminal().iter().map(Vec::len).min().unwrap_or(usize::MAX);
        match self {
            LevelLemma::Two => min >= 2,
            LevelLemma::SecondThree => min >= 2 && levels.levels.get(2).is_some_and(|l| l.len() >= 3),
            LevelLemma::Three => min >= 3,
        }
    }

    /// Bound for `outside` vertices beyond the source set.
    pub fn bound(&self, outside: i64) -> Rational {
        match self {
            LevelLemma::Two => level_bound_two(outside),
            LevelLemma::SecondThree => level_bound_second_three(outside),
            LevelLemma::Three => level_bound_three(outside),
        }
    }
}

/// Degree-2 deletion at even `n`: odd extremal value at `n - 1` plus the
/// two-per-level status bound at `n - 1`.
pub fn degree2_even_combination(n: i64) -> Rational {
    odd_extremal_poly(n - 1) + r(((n - 1) * (n - 1) + 2 * (n - 1) + 1) as i128, 4)
}

/// Degree-2 deletion at odd `n` with a second level of at least 3 vertices.
pub fn degree2_odd_combination(n: i64) -> Rational {
    even_extremal_poly(n - 1) + r(((n - 1) * (n - 1) + 8) as i128, 4)
}

/// Contraction case, assembled from the per-vertex contribution
/// `special` of the five vertices around the contracted pair.
pub fn contraction_combination(n: i64, special: i64) -> Rational {
    let m = n - 7;
    odd_extremal_poly(n - 2) + (n - 3) + r((m * m + 2 * m) as i128, 2) + 4 * m + special + 2
}

/// Good-vertex surgery on a graph without separating 4-cycles.
pub fn good_vertex_combination(n: i64) -> Rational {
    let m = n - 1;
    even_extremal_poly(m) + level_bound_three(m) + dec_bound(n)
}

/// `n^3/12 - n^2/36 + 53n/36 - 115/36`.
pub fn good_vertex_closed_form(n: i64) -> Rational {
    let m = n as i128;
    r(3 * m * m * m - m * m + 53 * m - 115, 36)
}

/// Separating-cycle split with `x` interior vertices, assembled term by term.
pub fn split_combination(n: i64, x: i64) -> Rational {
    let outer_rest = n - x - 4;
    even_extremal_poly(x + 4) + even_extremal_poly(n - x) - 8
        + r(x as i128, 4) * (outer_rest * outer_rest + 2 * outer_rest + 1)
        + (level_bound_three(x + 3) - 4) * outer_rest
}

/// `n^3/12 - n x^2/12 + n/2 + x^3/12 + x^2/3 + 11x/12 + 2/3`.
pub fn split_closed_form(n: i64, x: i64) -> Rational {
    let (n, x) = (n as i128, x as i128);
    r(n * n * n - n * x * x + 6 * n + x * x * x + 4 * x * x + 11 * x + 8, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjectured_max_values() {
        assert_eq!(conjectured_max(4), Ok(8));
        assert_eq!(conjectured_max(5), Ok(14));
        assert_eq!(conjectured_max(6), Ok(23));
        assert_eq!(conjectured_max(7), Ok(34));
        assert_eq!(conjectured_max(8), Ok(50));
        assert_eq!(conjectured_max(3), Err(BoundsError::TooSmall(3)));
    }

    #[test]
    fn conjectured_max_matches_polynomials() {
        for n in 4..500 {
            let poly = if n % 2 == 0 { even_extremal_poly(n) } else { odd_extremal_poly(n) };
            assert_eq!(poly, Rational::int(conjectured_max(n).unwrap()));
        }
    }

    #[test]
    fn lemma_bounds() {
        assert_eq!(level_bound_two(4), Rational::int(6));
        assert_eq!(level_bound_two(5), Rational::int(9));
        assert_eq!(level_bound_two(1), Rational::int(1));
        assert_eq!(level_bound_second_three(6), Rational::int(11));
        assert_eq!(level_bound_second_three(5), Rational::int(8));
        assert_eq!(level_bound_second_three(4), Rational::int(6));
        assert_eq!(level_bound_three(6), Rational::new(56, 6));
        assert_eq!(level_bound_three(4), Rational::int(5));
        assert_eq!(level_bound_three(1), Rational::int(1));
        assert_eq!(dec_bound(8), Rational::new(49, 18));
        assert_eq!(dec_bound(19), Rational::int(18));
        assert_eq!(dec_bound(4), Rational::new(1, 2));
    }

    #[test]
    fn level_hypotheses() {
        use crate::construct::fixture;
        use crate::metrics::level_structure;
        let cube = fixture("cube").unwrap();
        let ls = level_structure(&cube, &[0]).unwrap();
        // sizes 1, 3, 3, 1
        assert!(LevelLemma::ALL.iter().all(|l| l.applies(&ls)));
        assert!(Rational::int(ls.status()) <= LevelLemma::Three.bound(7));
        let c4 = fixture("c4").unwrap();
        let ls = level_structure(&c4, &[0]).unwrap();
        // sizes 1, 2, 1
        assert!(LevelLemma::Two.applies(&ls));
        assert!(!LevelLemma::SecondThree.applies(&ls));
        assert!(!LevelLemma::Three.applies(&ls));
    }

    #[test]
    fn rational_text_form() {
        let x = Rational::new(56, 6);
        assert_eq!(x.to_string(), "28/3");
        assert_eq!("28/3".parse::<Rational>().unwrap(), x);
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::int(5));
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"28/3\"");
    }

    #[test]
    fn exact_comparisons() {
        assert!(Rational::int(2) < dec_bound(8));
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert_eq!(Rational::new(2, 4), Rational::new(1, 2));
    }
}
