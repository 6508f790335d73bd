use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A positive parameter given as `p/q`, an integer or a finite decimal,
/// kept exactly alongside its float value.
#[derive(Debug, Clone, PartialEq)]
pub struct Theta {
    pub exact: BigRational,
    pub value: f64,
    text: String,
}

impl Theta {
    pub fn one() -> Self {
        "1".parse().expect("valid")
    }

    pub fn is_one(&self) -> bool {
        self.exact.is_one()
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.contains(['e', 'E']) || int.contains(['e', 'E']) {
        return Err(format!("exponents are not accepted in {s:?}; use p/q"));
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(&digits).map_err(|e| format!("bad number {s:?}: {e}"))?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(num, den))
}

impl FromStr for Theta {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let exact = parse_rational(s)?;
        if !exact.is_positive() {
            return Err(format!("{s:?} must be positive"));
        }
        let value = exact.to_f64().ok_or_else(|| format!("{s:?} out of range"))?;
        Ok(Theta { exact, value, text: s.trim().to_string() })
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Theta {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::envelope::rational_string(&self.exact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let t: Theta = "1/2".parse().unwrap();
        assert_eq!(t.value, 0.5);
        let d: Theta = "0.5".parse().unwrap();
        assert_eq!(d.exact, t.exact);
        assert!("2".parse::<Theta>().unwrap().exact == BigRational::from_integer(2.into()));
        assert!("0".parse::<Theta>().is_err());
        assert!("-1".parse::<Theta>().is_err());
        assert!("1e3".parse::<Theta>().is_err());
        assert!(Theta::one().is_one());
    }
}
