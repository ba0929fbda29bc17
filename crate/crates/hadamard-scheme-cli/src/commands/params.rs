//! `params`: the scheme-parameter layer — eigenmatrices, intersection
//! numbers, and their specializations.

use clap::Args;
use num_bigint::BigInt;

use hadamard_scheme::exact::RatFunc;
use hadamard_scheme::report::{CheckTimer, OutputFormat, Report, RunConfig};
use hadamard_scheme::scheme::{
    multiplicities, order_poly, valencies, IntersectionTensor, SchemeParams, CLASSES,
};
use hadamard_scheme::{Error, Result};

#[derive(Args, Debug)]
pub struct ParamsArgs {
    /// Field size: a power of two, at least 4.
    #[arg(long)]
    pub q: Option<u64>,
    /// Exponent: at least 2.
    #[arg(long)]
    pub m: Option<u32>,
    /// Verify only the symbolic identities in (q, r), without specializing.
    #[arg(long, conflicts_with_all = ["q", "m"])]
    pub symbolic: bool,
}

pub fn run(args: ParamsArgs, precision: u32, output: OutputFormat) -> Result<Report> {
    let params = match (args.symbolic, args.q, args.m) {
        (true, _, _) => None,
        (false, Some(q), Some(m)) => Some(SchemeParams::new(q, m)?),
        _ => {
            return Err(Error::BadParameters(
                "provide both --q and --m, or --symbolic".into(),
            ))
        }
    };

    let mut config = RunConfig::new("params", precision);
    config.output = output;
    config.q = args.q;
    config.m = args.m;
    if args.symbolic {
        config.extra.insert("symbolic".into(), "true".into());
    }
    let mut report = Report::new(config);

    let mut timer = CheckTimer::start("tensor-construction");
    let tensor = IntersectionTensor::compute()?;
    timer.note("entries", (CLASSES + 1).pow(3));
    report.push(timer.pass());

    let mut timer = CheckTimer::start("reference-tables");
    report.push(match tensor.reference_defect() {
        None => {
            timer.note("entries-compared", (CLASSES + 1).pow(3));
            timer.pass()
        }
        Some((i, j, k)) => timer.fail(format!(
            "p({i},{j},{k}) = {} differs from the recorded closed form",
            tensor.entry(i, j, k)
        )),
    });

    let timer = CheckTimer::start("associativity");
    report.push(match tensor.associativity_defect() {
        None => timer.pass(),
        Some(idx) => timer.fail(format!("associativity fails at {idx:?}")),
    });

    let timer = CheckTimer::start("commutativity");
    report.push(match tensor.commutativity_defect() {
        None => timer.pass(),
        Some(idx) => timer.fail(format!("commutativity fails at {idx:?}")),
    });

    let mut timer = CheckTimer::start("spectral-consistency");
    let total = multiplicities()?
        .iter()
        .fold(RatFunc::zero(), |acc, m| acc.add(m));
    timer.note("multiplicity-sum", &total);
    report.push(timer.verdict(
        total == RatFunc::from_poly(order_poly()),
        "sum of eigenspace multiplicities differs from the order polynomial",
    ));

    if let Some(p) = &params {
        let mut timer = CheckTimer::start("specialization");
        match tensor.specialize(p) {
            Ok(nums) => {
                timer.note("n", p.n());
                let vals: Vec<BigInt> = valencies()
                    .iter()
                    .map(|v| p.eval_integer(v))
                    .collect::<Result<_>>()?;
                timer.note("valencies", format!("{vals:?}"));
                let mut witness = String::new();
                'scan: for i in 0..=CLASSES {
                    for k in 0..=CLASSES {
                        let s: BigInt = (0..=CLASSES).map(|j| nums[i][j][k].clone()).sum();
                        if s != vals[i] {
                            witness = format!(
                                "row sum over p({i}, *, {k}) = {s} differs from valency {}",
                                vals[i]
                            );
                            break 'scan;
                        }
                    }
                }
                report.push(timer.verdict(witness.is_empty(), witness));
            }
            Err(e) => report.push(timer.fail(e.to_string())),
        }
    }

    Ok(report)
}
