//! `hadamard`: verify that a weight family realizes a complex Hadamard
//! matrix, symbolically, in exact arithmetic, or numerically.

use clap::Args;

use hadamard_scheme::families::{
    default_anchor, family_residuals, family_residuals_at, numeric_weights, recover_weights,
    Branch, Family,
};
use hadamard_scheme::gram::{verify_family_exact, verify_family_symbolic, numeric_gram};
use hadamard_scheme::report::{CheckTimer, OutputFormat, Report, RunConfig};
use hadamard_scheme::scheme::{IntersectionTensor, SchemeParams};
use hadamard_scheme::{Error, Result};

use crate::opts::{parse_family, pow10_tol, two_pow_frac, BranchArg};

#[derive(Args, Debug)]
pub struct HadamardArgs {
    /// Weight family: I, II or VI (case-insensitive).
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Field size: a power of two, at least 4.
    #[arg(long)]
    pub q: Option<u64>,
    /// Exponent: at least 2.
    #[arg(long)]
    pub m: Option<u32>,
    /// Root branch for the numeric embedding. Family VI runs both branches
    /// when this is omitted; families I and II default to top.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    /// Force exact quadratic-extension arithmetic (families I and II only).
    #[arg(long, conflicts_with = "numeric")]
    pub exact: bool,
    /// Force high-precision complex floating point.
    #[arg(long)]
    pub numeric: bool,
    /// Verify the identities over the rational function field in (q, r)
    /// instead of at one parameter point.
    #[arg(long, conflicts_with_all = ["q", "m", "exact", "numeric", "branch"])]
    pub symbolic: bool,
}

pub fn run(args: HadamardArgs, precision: u32, output: OutputFormat) -> Result<Report> {
    let family = args.family;
    let mut config = RunConfig::new("hadamard", precision);
    config.output = output;
    config.family = Some(family.as_str().into());
    config.q = args.q;
    config.m = args.m;
    config.branch = args.branch.map(|b| Branch::from(b).to_string());
    if args.symbolic {
        config.extra.insert("symbolic".into(), "true".into());
    }

    let tensor = IntersectionTensor::compute()?;

    if args.symbolic {
        let mut report = Report::new(config);
        symbolic_checks(&mut report, family, &tensor)?;
        return Ok(report);
    }

    let (q, m) = match (args.q, args.m) {
        (Some(q), Some(m)) => (q, m),
        _ => {
            return Err(Error::BadParameters(
                "provide both --q and --m, or --symbolic".into(),
            ))
        }
    };
    let params = SchemeParams::new(q, m)?;

    // Mode resolution: families I and II default to exact arithmetic,
    // family VI (irrational pair sums) to numeric.
    let use_numeric = args.numeric || (family == Family::VI && !args.exact);
    if family == Family::VI && args.exact {
        return Err(Error::UnsupportedFamily {
            family: family.as_str().into(),
            reason: "pair sums are irrational; use the numeric mode".into(),
        });
    }
    config
        .extra
        .insert("mode".into(), if use_numeric { "numeric" } else { "exact" }.into());
    if use_numeric {
        config
            .extra
            .insert("unimodularity-tol".into(), "1e-20".into());
        config.extra.insert("gram-tol".into(), "n/2^80".into());
    }
    let mut report = Report::new(config);

    if use_numeric {
        numeric_checks(&mut report, family, &params, args.branch, precision, &tensor)?;
    } else {
        exact_checks(&mut report, family, &params, &tensor)?;
    }
    Ok(report)
}

fn symbolic_checks(report: &mut Report, family: Family, tensor: &IntersectionTensor) -> Result<()> {
    let mut timer = CheckTimer::start("generator-annihilation");
    let residuals = family_residuals(family)?;
    timer.note("generators", residuals.entries.len());
    report.push(timer.verdict(
        residuals.passed(),
        format!("nonzero residuals at {:?}", residuals.failures()),
    ));

    let mut timer = CheckTimer::start("gram-identity");
    let gram = verify_family_symbolic(family, tensor)?;
    timer.note("S_0", &gram.sums[0]);
    report.push(match gram.first_failure() {
        None => timer.pass(),
        Some(k) => timer.fail(format!("S_{k} = {} instead of 0", gram.sums[k])),
    });
    Ok(())
}

fn exact_checks(
    report: &mut Report,
    family: Family,
    params: &SchemeParams,
    tensor: &IntersectionTensor,
) -> Result<()> {
    let mut timer = CheckTimer::start("generator-annihilation");
    let residuals = family_residuals_at(family, params)?;
    timer.note("generators", residuals.len());
    let failures: Vec<&str> = residuals
        .iter()
        .filter(|(_, r)| !num_traits::Zero::is_zero(r))
        .map(|(label, _)| label.as_str())
        .collect();
    report.push(timer.verdict(
        failures.is_empty(),
        format!("nonzero residuals at {failures:?}"),
    ));

    let mut timer = CheckTimer::start("weight-recovery");
    let exact = hadamard_scheme::families::exact_weights(family, params)?;
    let anchor = default_anchor(exact.pair_sums())?;
    timer.note("anchor", format!("{anchor:?}"));
    let recovered = recover_weights(exact.pair_sums(), anchor.0, anchor.1)?;
    report.push(match recovered.violations().first() {
        None => timer.pass(),
        Some(v) => timer.fail(format!("recovered weights violate {v}")),
    });

    let mut timer = CheckTimer::start("gram-identity");
    let gram = verify_family_exact(family, params, tensor)?;
    timer.note("n", &gram.order);
    report.push(match gram.first_failure() {
        None => timer.pass(),
        Some(k) => timer.fail(format!("S_{k} = {} instead of 0", gram.sums[k])),
    });
    Ok(())
}

fn numeric_checks(
    report: &mut Report,
    family: Family,
    params: &SchemeParams,
    branch: Option<BranchArg>,
    precision: u32,
    tensor: &IntersectionTensor,
) -> Result<()> {
    let branches: Vec<Branch> = match branch {
        Some(b) => vec![b.into()],
        None if family == Family::VI => vec![Branch::Top, Branch::Bottom],
        None => vec![Branch::Top],
    };
    let unimod_tol = pow10_tol(20);
    let gram_tol = two_pow_frac(&params.n(), 80);
    let nums = tensor.specialize(params)?;

    for b in branches {
        let mut timer = CheckTimer::start(format!("unimodularity[{b}]"));
        let weights = numeric_weights(family, params, b, precision)?;
        let defect = weights.unimodularity_defect();
        timer.note("defect", defect.to_decimal(80));
        report.push(timer.verdict(
            defect.to_rational() <= unimod_tol,
            format!("|w| deviates from 1 by {}", defect.to_decimal(15)),
        ));

        let mut timer = CheckTimer::start(format!("gram-identity[{b}]"));
        let gram = numeric_gram(weights.weights(), &nums, &params.n())?;
        let defect = gram.max_defect();
        timer.note("max-defect", defect.to_decimal(80));
        report.push(timer.verdict(
            defect.to_rational() <= gram_tol,
            format!("W W* deviates from nI by {}", defect.to_decimal(15)),
        ));
    }
    Ok(())
}
