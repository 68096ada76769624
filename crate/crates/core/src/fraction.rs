use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// A reduced positive rational `num/den`, ordered by cross-multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self, GraphError> {
        if num == 0 || den == 0 {
            return Err(GraphError::InvalidParameter(format!(
                "fraction {num}/{den} must have positive parts"
            )));
        }
        let g = gcd(num, den);
        Ok(Fraction { num: num / g, den: den / g })
    }

    pub fn integer(n: u64) -> Result<Self, GraphError> {
        Self::new(n, 1)
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Largest integer not exceeding the fraction.
    pub fn floor(self) -> u64 {
        self.num / self.den
    }

    pub fn ceil(self) -> u64 {
        self.num.div_ceil(self.den)
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::InvalidParameter(format!("not a fraction: {s:?}"));
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Fraction::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_orders() {
        let a = Fraction::new(10, 4).unwrap();
        assert_eq!((a.num(), a.den()), (5, 2));
        assert!(Fraction::new(7, 3).unwrap() < a);
        assert!(Fraction::new(12, 5).unwrap() > Fraction::new(7, 3).unwrap());
        assert_eq!(Fraction::new(6, 3).unwrap(), Fraction::integer(2).unwrap());
        assert_eq!("12/5".parse::<Fraction>().unwrap().to_string(), "12/5");
        assert!(Fraction::new(0, 3).is_err());
        assert_eq!(Fraction::new(7, 3).unwrap().floor(), 2);
        assert_eq!(Fraction::new(7, 3).unwrap().ceil(), 3);
    }
}
