//! Shared argument parsing: families, branches, output formats and exact
//! rational values.

use clap::ValueEnum;
use num_bigint::BigInt;

use hadamard_scheme::exact::Rational;
use hadamard_scheme::families::{Branch, Family};
use hadamard_scheme::report::OutputFormat;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
}

impl From<OutputArg> for OutputFormat {
    fn from(value: OutputArg) -> Self {
        match value {
            OutputArg::Text => OutputFormat::Text,
            OutputArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BranchArg {
    Top,
    Bottom,
}

impl From<BranchArg> for Branch {
    fn from(value: BranchArg) -> Self {
        match value {
            BranchArg::Top => Branch::Top,
            BranchArg::Bottom => Branch::Bottom,
        }
    }
}

/// Parses a family tag, case-insensitively: `I`, `II` or `VI`.
pub fn parse_family(s: &str) -> Result<Family, String> {
    match s.to_ascii_uppercase().as_str() {
        "I" => Ok(Family::I),
        "II" => Ok(Family::II),
        "VI" => Ok(Family::VI),
        other => Err(format!("unknown family '{other}' (expected I, II or VI)")),
    }
}

/// Parses an exact rational from `n`, `n/d`, a decimal like `0.25`, or
/// scientific notation like `1e-30` (all interpreted exactly in base 10).
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid numerator '{num}'"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid denominator '{den}'"))?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| format!("invalid exponent '{e}'"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid fractional part '{frac_part}'"));
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits
        .parse()
        .map_err(|_| format!("invalid number '{s}'"))?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        Rational::from(n * ten.pow(shift as u32))
    } else {
        Rational::new(n, ten.pow((-shift) as u32))
    })
}

/// `1 / 10^k` as an exact rational.
pub fn pow10_tol(k: u32) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(10).pow(k))
}

/// `n / 2^k` as an exact rational.
pub fn two_pow_frac(n: &BigInt, k: u32) -> Rational {
    Rational::new(n.clone(), BigInt::from(1) << k)
}

/// Default parameter grid: `(q, m)` over `{4, 8, 16, 32} x {2, 3}`, plus
/// the extended point `(64, 2)` for the dimension analysis.
pub fn default_grid(extended: bool) -> Vec<(u64, u32)> {
    let mut grid: Vec<(u64, u32)> = [4u64, 8, 16, 32]
        .iter()
        .flat_map(|&q| [(q, 2u32), (q, 3u32)])
        .collect();
    if extended {
        grid.push((64, 2));
    }
    grid
}
