//! Floating point abstraction shared by all numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type usable for centrality scores, thresholds and models.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + FromStr + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every supported scalar can represent it
    /// (possibly rounded), so this never fails.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable")
    }

    fn from_count(count: usize) -> Self {
        Self::from_usize(count).expect("count representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Formats a value with at most six significant digits, trimming trailing
/// zeros. Integral values print without a fractional part.
pub fn format_sig6<T: Scalar>(value: T) -> String {
    let x = value.to_f64_lossy();
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".to_string() } else { x.to_string() };
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..=14).contains(&exponent) {
        let s = format!("{:.5e}", x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    if exponent >= 5 {
        let rounded: f64 = format!("{:.5e}", x).parse().expect("scientific format");
        return format!("{:.0}", rounded);
    }
    let decimals = (5 - exponent) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
