//! `dense`: entry-by-entry verification of `W W* = nI` against a concrete
//! realization of the scheme, plus sampled cross-checks of the dense
//! inner products used by the dimension analysis.

use std::path::PathBuf;

use clap::Args;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hadamard_scheme::exact::{BigComplex, BigFloat, Rational};
use hadamard_scheme::families::{numeric_weights, Branch, Family, WEIGHTS};
use hadamard_scheme::gram::dense_verify;
use hadamard_scheme::nomura::{cijk_system, coupled_triangles, jones_inner_product, sample_triangle};
use hadamard_scheme::report::{CheckTimer, OutputFormat, Report, RunConfig};
use hadamard_scheme::scheme::{IntersectionTensor, SchemeInstance, SchemeParams, CLASSES};
use hadamard_scheme::{Error, Result};

use crate::opts::{parse_family, parse_rational, pow10_tol, BranchArg};

#[derive(Args, Debug)]
pub struct DenseArgs {
    /// Path to a realization file: first line `n classes`, then an n x n
    /// relation table.
    #[arg(long)]
    pub scheme: PathBuf,
    /// Weight family: I, II or VI (case-insensitive).
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Field size: a power of two, at least 4.
    #[arg(long)]
    pub q: u64,
    /// Exponent: at least 2.
    #[arg(long)]
    pub m: u32,
    /// Root branch for the numeric embedding.
    #[arg(long, value_enum, default_value = "top")]
    pub branch: BranchArg,
    /// Largest allowed |entry - target| (exact rational; decimal and
    /// scientific notation accepted). Default: 1e-30.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub tol: Option<Rational>,
    /// Seed for the sampled cross-checks.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of sampled cross-checks of each kind.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
}

pub fn run(args: DenseArgs, precision: u32, output: OutputFormat) -> Result<Report> {
    let params = SchemeParams::new(args.q, args.m)?;
    let tol = args.tol.unwrap_or_else(|| pow10_tol(30));
    if tol < Rational::zero() {
        return Err(Error::BadParameters("negative tolerance".into()));
    }
    let branch: Branch = args.branch.into();

    let mut config = RunConfig::new("dense", precision);
    config.output = output;
    config.family = Some(args.family.as_str().into());
    config.q = Some(args.q);
    config.m = Some(args.m);
    config.branch = Some(branch.to_string());
    config.tolerance = Some(tol.to_string());
    config.scheme_file = Some(args.scheme.display().to_string());
    config.seed = Some(args.seed);
    config
        .extra
        .insert("samples".into(), args.samples.to_string());
    let mut report = Report::new(config);

    let instance = SchemeInstance::from_file(&args.scheme)?;
    let tensor = IntersectionTensor::compute()?;
    let nums = tensor.specialize(&params)?;
    let weights = numeric_weights(args.family, &params, branch, precision)?;

    // Structure validation: the realization must exhibit exactly the
    // specialized intersection numbers.
    let mut timer = CheckTimer::start("instance-validation");
    timer.note("order", instance.order());
    timer.note("classes", instance.classes());
    let expected_order = params.n();
    if instance.order().to_string() != expected_order.to_string() {
        report.push(timer.fail(format!(
            "realization has {} points, parameters require n = {}",
            instance.order(),
            expected_order
        )));
    } else if instance.classes() != CLASSES {
        report.push(timer.fail(format!(
            "realization has {} classes, expected {CLASSES}",
            instance.classes()
        )));
    } else {
        match instance.verify_intersection_numbers(&nums) {
            Ok(()) => report.push(timer.pass()),
            Err(mismatch) => report.push(timer.fail(mismatch.to_string())),
        }
    }

    // The dense Gram check proper: every entry of W W* against n I.
    let mut timer = CheckTimer::start("dense-gram");
    let dense = dense_verify(&instance, weights.weights())?;
    timer.note("pairs-checked", dense.pairs_checked);
    timer.note("max-diagonal-defect", dense.max_diagonal_defect.to_decimal(80));
    timer.note(
        "max-offdiagonal-defect",
        dense.max_offdiagonal_defect.to_decimal(80),
    );
    report.push(if dense.passed(&tol) {
        timer.pass()
    } else {
        timer.fail(format!(
            "defect {} exceeds tolerance{}",
            dense.max_defect().to_decimal(15),
            dense
                .worst_pair
                .map(|p| format!("; worst off-diagonal pair {p:?}"))
                .unwrap_or_default()
        ))
    });

    // Triangle cross-check of the dimension analysis: count cubes of clique
    // triangles land on the solved candidate line and reproduce the dense
    // inner product.
    let mut timer = CheckTimer::start("triangle-cross-check");
    if args.family == Family::VI {
        report.push(timer.skip(
            "triangle prediction needs the exact candidate line; \
             families I and II only",
        ));
    } else {
        let system = cijk_system(&params, &tensor)?;
        let triangles = coupled_triangles(&instance, args.samples.max(1));
        if triangles.is_empty() {
            report.push(timer.skip("the realization has no clique triangles"));
        } else {
            let prec = weights.precision();
            let mut max_deviation = BigFloat::zero(prec);
            let mut min_inner = None::<BigFloat>;
            let mut witness = String::new();
            for &triple in &triangles {
                let sample = sample_triangle(&instance, &system, weights.weights(), triple)?;
                if !sample.counts_match {
                    witness = format!("count cube of {triple:?} leaves the candidate line");
                    break;
                }
                if sample.deviation > max_deviation {
                    max_deviation = sample.deviation.clone();
                }
                let modulus = sample.inner_product.abs();
                if min_inner.as_ref().map_or(true, |m| modulus < *m) {
                    min_inner = Some(modulus);
                }
            }
            timer.note("triangles", triangles.len());
            timer.note("max-deviation", max_deviation.to_decimal(80));
            if let Some(min) = &min_inner {
                timer.note("min-inner-product", min.to_decimal(80));
            }
            report.push(if !witness.is_empty() {
                timer.fail(witness)
            } else if max_deviation.to_rational() > tol {
                timer.fail(format!(
                    "dense inner product deviates from the predicted value by {}",
                    max_deviation.to_decimal(15)
                ))
            } else {
                timer.pass()
            });
        }
    }

    // Seeded random pairs: the squared inner product <a b | b a> must match
    // the prediction from the intersection numbers of rel(a, b).
    let mut timer = CheckTimer::start("sampled-inner-products");
    let prec = weights.precision();
    let n = instance.order();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut max_residual = BigFloat::zero(prec);
    for _ in 0..args.samples {
        let a = rng.gen_range(0..n);
        let b = loop {
            let b = rng.gen_range(0..n);
            if b != a {
                break b;
            }
        };
        let direct = jones_inner_product(&instance, weights.weights(), a, b, b, a)?;
        let k = instance.relation(a, b) as usize;
        let mut predicted = BigComplex::zero(prec);
        let w = weights.weights();
        for i in 0..WEIGHTS {
            for j in 0..WEIGHTS {
                if nums[i][j][k].is_zero() {
                    continue;
                }
                let coeff = Rational::from(nums[i][j][k].clone());
                let term = w[i].mul(&w[i]).mul(&w[j].conj()).mul(&w[j].conj());
                predicted = predicted.add(&term.mul(&BigComplex::from_rational(&coeff, prec)));
            }
        }
        let residual = direct.sub(&predicted).abs();
        if residual > max_residual {
            max_residual = residual;
        }
    }
    timer.note("samples", args.samples);
    timer.note("max-residual", max_residual.to_decimal(80));
    report.push(timer.verdict(
        max_residual.to_rational() <= tol,
        format!(
            "sampled inner product deviates from the intersection-number \
             prediction by {}",
            max_residual.to_decimal(15)
        ),
    ));

    Ok(report)
}
