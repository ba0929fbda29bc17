//! `sturm`: exact real-root counting for rational polynomials, including
//! the recorded degree-9 polynomial whose single root in (-2, 2) seeds the
//! five-weight construction.

use clap::Args;
use num_traits::Zero;

use hadamard_scheme::exact::{rat, Rational, RealPoly};
use hadamard_scheme::families::degree_nine_reference_polynomial;
use hadamard_scheme::report::{CheckTimer, OutputFormat, Report, RunConfig};
use hadamard_scheme::{Error, Result};

use crate::opts::parse_rational;

#[derive(Args, Debug)]
pub struct SturmArgs {
    /// Ascending coefficients c0 c1 ... (integers, fractions n/d, or
    /// decimals).
    #[arg(long, num_args = 1.., allow_hyphen_values = true, value_parser = parse_rational)]
    pub coeffs: Vec<Rational>,
    /// Lower interval endpoint (open).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub lo: Option<Rational>,
    /// Upper interval endpoint.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub hi: Option<Rational>,
    /// Use the recorded degree-9 polynomial on the interval (-2, 2) and
    /// require exactly one root.
    #[arg(long, conflicts_with_all = ["coeffs", "lo", "hi"])]
    pub degree9: bool,
}

pub fn run(args: SturmArgs, precision: u32, output: OutputFormat) -> Result<Report> {
    let mut config = RunConfig::new("sturm", precision);
    config.output = output;

    let (poly, lo, hi, expected) = if args.degree9 {
        config.extra.insert("degree9".into(), "true".into());
        (degree_nine_reference_polynomial(), rat(-2), rat(2), Some(1))
    } else {
        let (lo, hi) = match (args.lo, args.hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => {
                return Err(Error::BadParameters(
                    "provide --lo and --hi, or --degree9".into(),
                ))
            }
        };
        if args.coeffs.is_empty() {
            return Err(Error::BadParameters(
                "provide --coeffs, or --degree9".into(),
            ));
        }
        let poly = RealPoly::new(args.coeffs.clone());
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        config.extra.insert(
            "coeffs".into(),
            args.coeffs
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        );
        (poly, lo, hi, None)
    };
    if lo >= hi {
        return Err(Error::BadParameters(format!(
            "empty interval ({lo}, {hi})"
        )));
    }
    config.extra.insert("lo".into(), lo.to_string());
    config.extra.insert("hi".into(), hi.to_string());
    let mut report = Report::new(config);

    // The count is taken over the half-open interval (lo', hi'] after
    // nudging any endpoint that is itself a root inward by 1/2^k (smallest
    // k that clears both endpoints); the shift is recorded.
    let mut timer = CheckTimer::start("root-count");
    let (lo_adj, hi_adj, shift) = clear_endpoints(&poly, lo, hi)?;
    if let Some(k) = shift {
        timer.note("endpoint-shift", format!("1/2^{k}"));
        timer.note("interval", format!("({lo_adj}, {hi_adj}]"));
    }
    let count = poly.count_roots_in(&lo_adj, &hi_adj)?;
    timer.note("degree", poly.degree());
    timer.note("roots", count);
    report.push(match expected {
        Some(want) => timer.verdict(
            count == want,
            format!("{count} roots in ({lo_adj}, {hi_adj}], expected {want}"),
        ),
        None => timer.pass(),
    });

    Ok(report)
}

/// Moves interval endpoints that are roots of `poly` inward by `1/2^k`,
/// using the smallest `k >= 1` that makes both endpoint values nonzero
/// while keeping the interval nonempty. Returns the adjusted endpoints and
/// the shift exponent, if a shift was needed.
fn clear_endpoints(
    poly: &RealPoly,
    lo: Rational,
    hi: Rational,
) -> Result<(Rational, Rational, Option<u32>)> {
    if !poly.eval(&lo).is_zero() && !poly.eval(&hi).is_zero() {
        return Ok((lo, hi, None));
    }
    let mut step = Rational::new(1.into(), 2.into());
    for k in 1..=64u32 {
        let lo_adj = if poly.eval(&lo).is_zero() {
            lo.clone() + step.clone()
        } else {
            lo.clone()
        };
        let hi_adj = if poly.eval(&hi).is_zero() {
            hi.clone() - step.clone()
        } else {
            hi.clone()
        };
        if lo_adj < hi_adj && !poly.eval(&lo_adj).is_zero() && !poly.eval(&hi_adj).is_zero() {
            return Ok((lo_adj, hi_adj, Some(k)));
        }
        step = step / rat(2);
    }
    Err(Error::BadParameters(
        "could not clear interval endpoints off the root set".into(),
    ))
}
