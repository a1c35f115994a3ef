use std::f64::consts::PI;

use serde::Serialize;
use twolevel::lifetime::{lifetime_constants, LifetimeModel};
use twolevel::physcore::spontaneous_emission_time;
use twolevel::physcore::units::DisplayUnit;

use crate::args::{LifetimeArgs, ReportFormat};
use crate::commands::load_atom;
use crate::failure::CliError;
use crate::output::{emit, json_bytes, Provenance};

/// Rates derived with one choice of the constant in the numerator.
#[derive(Debug, Serialize)]
struct RateSet {
    constant: f64,
    gamma_l_per_s: f64,
    gamma_lg_per_s: f64,
    ratio_19: f64,
    gamma_l_display: String,
    gamma_lg_display: String,
}

#[derive(Debug, Serialize)]
struct Roots {
    pi_star: f64,
    pi_star_minus_pi: f64,
    x_small: f64,
    residual_large: f64,
    residual_small: f64,
}

#[derive(Debug, Serialize)]
struct Times {
    t_l1_s: f64,
    t_l2_s: f64,
    /// 20/π*, the factor behind t_L2.
    ratio_20: f64,
    /// 1/x_small, the alternative factor.
    inv_x_small: f64,
    t_s_over_x_small_s: f64,
    t_l1_display: String,
    t_l2_display: String,
}

#[derive(Debug, Serialize)]
struct LifetimeReport {
    provenance: Provenance,
    source: String,
    t_s_s: f64,
    gamma_s_per_s: f64,
    gamma_s_display: String,
    roots: Roots,
    pi_star_based: RateSet,
    pi_based: RateSet,
    lifetimes: Times,
}

fn report(args: &LifetimeArgs, source: String, m: &LifetimeModel) -> Result<LifetimeReport, CliError> {
    let rate = |g: f64| DisplayUnit::MegaPerSecond.format(g, 3);
    let ns = |t: f64| DisplayUnit::Nanoseconds.format(t, 3);
    Ok(LifetimeReport {
        provenance: Provenance::new("lifetime", args)?,
        source,
        t_s_s: m.t_s,
        gamma_s_per_s: m.gamma_s,
        gamma_s_display: rate(m.gamma_s),
        roots: Roots {
            pi_star: m.pi_star,
            pi_star_minus_pi: m.pi_star - PI,
            x_small: m.x_small,
            residual_large: m.residual_large,
            residual_small: m.residual_small,
        },
        pi_star_based: RateSet {
            constant: m.pi_star,
            gamma_l_per_s: m.gamma_l,
            gamma_lg_per_s: m.gamma_lg,
            ratio_19: m.ratio_19,
            gamma_l_display: rate(m.gamma_l),
            gamma_lg_display: rate(m.gamma_lg),
        },
        pi_based: RateSet {
            constant: PI,
            gamma_l_per_s: m.literal_pi.gamma_l,
            gamma_lg_per_s: m.literal_pi.gamma_lg,
            ratio_19: m.literal_pi.ratio_19,
            gamma_l_display: rate(m.literal_pi.gamma_l),
            gamma_lg_display: rate(m.literal_pi.gamma_lg),
        },
        lifetimes: Times {
            t_l1_s: m.t_l1,
            t_l2_s: m.t_l2,
            ratio_20: m.ratio_20,
            inv_x_small: m.inv_x_small,
            t_s_over_x_small_s: m.t_s * m.inv_x_small,
            t_l1_display: ns(m.t_l1),
            t_l2_display: ns(m.t_l2),
        },
    })
}

fn text(r: &LifetimeReport) -> String {
    let mut s = r.provenance.comment_lines();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k:<26}{v}\n"));
    line("source", r.source.clone());
    line("t_S", format!("{:e} s", r.t_s_s));
    line("gamma_S", format!("{:e} 1/s ({})", r.gamma_s_per_s, r.gamma_s_display));
    line("pi*", format!("{} (pi* - pi = {:.6})", r.roots.pi_star, r.roots.pi_star_minus_pi));
    line("x_small", format!("{}", r.roots.x_small));
    line(
        "residuals",
        format!("{:e} (pi*), {:e} (x_small)", r.roots.residual_large, r.roots.residual_small),
    );
    for (label, set) in [("pi*", &r.pi_star_based), ("pi", &r.pi_based)] {
        line(
            &format!("gamma_L [{label}]"),
            format!("{:e} 1/s ({})", set.gamma_l_per_s, set.gamma_l_display),
        );
        line(
            &format!("Gamma_Lg [{label}]"),
            format!("{:e} 1/s ({})", set.gamma_lg_per_s, set.gamma_lg_display),
        );
        line(&format!("19/{label}"), format!("{}", set.ratio_19));
    }
    let t = &r.lifetimes;
    line("t_L1 = t_S/pi*", format!("{:e} s ({})", t.t_l1_s, t.t_l1_display));
    line("t_L2 = t_S*20/pi*", format!("{:e} s ({})", t.t_l2_s, t.t_l2_display));
    line("t_S/x_small", format!("{:e} s", t.t_s_over_x_small_s));
    line("20/pi* vs 1/x_small", format!("{} vs {}", t.ratio_20, t.inv_x_small));
    s
}

pub fn run(args: &LifetimeArgs) -> Result<(), CliError> {
    let (source, t_s) = match (&args.atom, args.t_s_ns) {
        (Some(name), _) => {
            let atom = load_atom(name, args.presets.as_deref())?;
            (format!("atom preset '{}'", atom.name), spontaneous_emission_time(&atom)?)
        }
        (None, Some(ns)) => ("--t-s-ns".to_string(), ns / 1e9),
        (None, None) => {
            return Err(CliError::Usage("pass --t-s-ns or --atom".into()));
        }
    };
    let model = lifetime_constants(t_s)?;
    let r = report(args, source, &model)?;
    let bytes = match args.format {
        ReportFormat::Json => json_bytes(&r)?,
        ReportFormat::Text => text(&r).into_bytes(),
    };
    emit(args.out.as_deref(), &bytes)
}
