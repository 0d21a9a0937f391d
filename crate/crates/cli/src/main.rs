//! gmt: inspect distributions whose moments are products of Gamma factors.
//!
//! Targets are either catalog names (`gmt describe brownian_sup_area`,
//! `gmt density gamma:2.5 --grid 0.1:8:40`) or JSON representation files
//! (`gmt describe --file rep.json`). Numeric tables are CSV with
//! 17-significant-digit decimal values and no header row.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

use clap::{Args, Parser, Subcommand};
use gamma_moments::analysis::{params, rho_bounds, spectrum};
use gamma_moments::catalog::{self, CatalogEntry, SamplerKind};
use gamma_moments::density::{
    boundary_classification, density_mellin, density_series_from_left, density_series_from_right,
    tail_eval, tail_law_at_infinity, tail_law_at_zero, TailLaw,
};
use gamma_moments::sampler::{
    sample_many, sample_rep, verify_density, verify_double_laplace, verify_moments, McReport,
    McStat, RngStream,
};
use gamma_moments::specfun::SeriesRegime;
use gamma_moments::{Error, GammaTypeRep};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gmt",
    version,
    about = "Moments of Gamma type: parameters, densities, tails, and Monte-Carlo checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Target {
    /// Catalog name, e.g. "gamma:2.5" or "brownian_sup_area"
    name: Option<String>,
    /// JSON representation file (alternative to a catalog name)
    #[arg(long, conflicts_with = "name")]
    file: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print invariant parameters, strip, spectrum, boundary classification
    Describe {
        #[command(flatten)]
        target: Target,
        /// Spectrum window lo:hi
        #[arg(long, default_value = "-6:6", allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the density over a grid (CSV: x,f,regime)
    Density {
        #[command(flatten)]
        target: Target,
        /// Evaluation grid lo:hi:n
        #[arg(long, default_value = "0.1:3:25")]
        grid: String,
        /// One of: mellin, series, oracle
        #[arg(long, default_value = "mellin")]
        method: String,
        /// Contour abscissa for the mellin method (default: strip midpoint)
        #[arg(long, allow_negative_numbers = true)]
        sigma: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Print tail laws at 0 and infinity; optionally tabulate them
    Tails {
        #[command(flatten)]
        target: Target,
        /// Evaluate the tail laws over a grid lo:hi:n (CSV: x,at_zero,at_infinity)
        #[arg(long)]
        grid: Option<String>,
        /// Number of leading pole terms used in power-log tails (default all)
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate one residue series with diagnostics (CSV: x,value,terms,last_term,regime)
    Series {
        #[command(flatten)]
        target: Target,
        /// Which expansion: left (x -> 0) or right (x -> inf)
        #[arg(long, default_value = "left")]
        side: String,
        #[arg(long, default_value = "0.1:3:25")]
        grid: String,
        #[arg(long)]
        json: bool,
    },
    /// List catalog entries, or show one entry in detail
    Catalog {
        /// Entry to show; omit to list all names
        name: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Draw samples from an entry's stochastic model (one value per line)
    Sample {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Path steps / chain length for discretized models
        #[arg(long, default_value_t = 16384)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Monte-Carlo and cross-path verification; exits 1 on any failure
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 20000)]
        samples: usize,
        #[arg(long, default_value_t = 16384)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe goes away (e.g. | head).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Domain(format!("grid must be lo:hi:n, got {spec:?}")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid endpoint {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid endpoint {:?}", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid count {:?}", parts[2])))?;
    if n == 0 || !(hi >= lo) {
        return Err(Error::Domain(format!("empty grid {spec:?}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| lo + i as f64 * step).collect())
}

fn parse_window(spec: &str) -> Result<(f64, f64), Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::Domain(format!("window must be lo:hi, got {spec:?}")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::Domain(format!("bad window endpoint {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::Domain(format!("bad window endpoint {:?}", parts[1])))?;
    if !(hi > lo) {
        return Err(Error::Domain(format!("empty window {spec:?}")));
    }
    Ok((lo, hi))
}

/// Resolve a target into a catalog entry. File reps become anonymous
/// entries; if the rep is a recognizable Gamma product it stays samplable.
fn resolve(target: &Target) -> Result<CatalogEntry, Error> {
    match (&target.name, &target.file) {
        (Some(name), None) => catalog::make(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))?;
            let rep = GammaTypeRep::from_json(&text)?;
            let mut probe = RngStream::new(0, 0).rng();
            let sampler = sample_rep(&rep, &mut probe)
                .ok()
                .map(|_| SamplerKind::GammaProduct);
            Ok(CatalogEntry {
                name: path.clone(),
                expected: params(&rep),
                rep,
                source: "user representation".into(),
                oracle: None,
                sampler,
            })
        }
        _ => Err(Error::Domain(
            "give exactly one target: a catalog name or --file <rep.json>".into(),
        )),
    }
}

fn regime_name(r: SeriesRegime) -> &'static str {
    match r {
        SeriesRegime::Convergent => "convergent",
        SeriesRegime::AsymptoticTruncated => "asymptotic_truncated",
        SeriesRegime::Refused => "refused",
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Describe { target, window, json } => describe(&resolve(&target)?, &window, json),
        Cmd::Density { target, grid, method, sigma, json } => {
            density(&resolve(&target)?, &grid, &method, sigma, json)
        }
        Cmd::Tails { target, grid, order, json } => tails(&resolve(&target)?, grid, order, json),
        Cmd::Series { target, side, grid, json } => series(&resolve(&target)?, &side, &grid, json),
        Cmd::Catalog { name, json } => catalog_cmd(name, json),
        Cmd::Sample { target, samples, steps, seed, json } => {
            sample(&resolve(&target)?, samples, steps, seed, json)
        }
        Cmd::Verify { target, samples, steps, seed, json } => {
            verify(&resolve(&target)?, samples, steps, seed, json)
        }
    }
}

fn describe(entry: &CatalogEntry, window: &str, json: bool) -> Result<u8, Error> {
    let (lo, hi) = parse_window(window)?;
    let p = params(&entry.rep);
    let strip = rho_bounds(&entry.rep);
    let spec = spectrum(&entry.rep, lo, hi);
    let boundary = boundary_classification(&entry.rep)?;
    if json {
        let out = serde_json::json!({
            "name": entry.name,
            "source": entry.source,
            "params": p,
            "strip": strip,
            "spectrum": spec,
            "boundary": boundary,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(0);
    }
    println!("name={}", entry.name);
    println!("moments: {}", entry.source);
    println!("gamma={}", p.gamma);
    println!("gamma_prime={}", p.gamma_prime);
    println!("delta={}", p.delta);
    println!("kappa={}", p.kappa);
    println!("c1={}", p.c1);
    println!("rho_minus={}", p.rho_minus);
    println!("rho_plus={}", p.rho_plus);
    println!("strip=({}, {})", strip.lo, strip.hi);
    println!("boundary={boundary:?}");
    println!("spectrum in [{lo}, {hi}]:");
    for e in spec {
        let kind = if e.order > 0 { "pole" } else { "zero" };
        println!("  s={} {kind} order {}", e.location, e.order.abs());
    }
    Ok(0)
}

fn density(
    entry: &CatalogEntry,
    grid: &str,
    method: &str,
    sigma: Option<f64>,
    json: bool,
) -> Result<u8, Error> {
    let xs = parse_grid(grid)?;
    let mut rows: Vec<(f64, f64, String)> = Vec::with_capacity(xs.len());
    for &x in &xs {
        let (f, regime) = match method {
            "mellin" => (density_mellin(&entry.rep, x, sigma)?, "mellin".to_string()),
            "oracle" => {
                let form = entry.oracle.ok_or_else(|| {
                    Error::UnsupportedRegime(format!("{} has no closed-form density", entry.name))
                })?;
                (form.eval(x)?, "oracle".to_string())
            }
            "series" => {
                // Prefer whichever side the regime policy accepts at this x.
                let left = density_series_from_left(&entry.rep, x)?;
                if left.regime != SeriesRegime::Refused {
                    (left.value, regime_name(left.regime).to_string())
                } else {
                    let right = density_series_from_right(&entry.rep, x)?;
                    if right.regime == SeriesRegime::Refused {
                        return Err(Error::UnsupportedRegime(format!(
                            "both residue series refused at x = {x}"
                        )));
                    }
                    (right.value, regime_name(right.regime).to_string())
                }
            }
            other => {
                return Err(Error::Domain(format!(
                    "unknown method {other:?} (expected mellin, series, or oracle)"
                )))
            }
        };
        rows.push((x, f, regime));
    }
    if json {
        let out: Vec<_> = rows
            .iter()
            .map(|(x, f, r)| serde_json::json!({"x": x, "f": f, "regime": r}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for (x, f, r) in rows {
            println!("{},{},{r}", fmt(x), fmt(f));
        }
    }
    Ok(0)
}

fn tail_side(law: &Result<TailLaw, Error>) -> serde_json::Value {
    match law {
        Ok(l) => serde_json::to_value(l).unwrap_or(serde_json::Value::Null),
        Err(e) => serde_json::json!({"unavailable": e.to_string()}),
    }
}

fn tails(
    entry: &CatalogEntry,
    grid: Option<String>,
    order: Option<usize>,
    json: bool,
) -> Result<u8, Error> {
    let at_zero = tail_law_at_zero(&entry.rep);
    let at_inf = tail_law_at_infinity(&entry.rep);
    if json {
        let out = serde_json::json!({
            "name": entry.name,
            "at_zero": tail_side(&at_zero),
            "at_infinity": tail_side(&at_inf),
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for (side, law) in [("at_zero", &at_zero), ("at_infinity", &at_inf)] {
            match law {
                Ok(TailLaw::StretchedExponential { c1, rate, scale, gamma, at_infinity }) => {
                    let shape = if *at_infinity {
                        "f ~ scale * x^(c1 - 1) * exp(-rate * x^(1/gamma))"
                    } else {
                        "f ~ scale * x^(-c1 - 1) * exp(-rate * x^(-1/gamma))"
                    };
                    println!("{side}: stretched_exponential {shape}");
                    println!("  c1={c1} rate={rate} scale={scale} gamma={gamma}");
                }
                Ok(TailLaw::PowerLog { terms, .. }) => {
                    println!("{side}: power_log, {} pole term(s)", terms.len());
                    for t in terms {
                        println!("  location={} coefficients={:?}", t.location, t.coefficients);
                    }
                }
                Err(e) => println!("{side}: unavailable ({e})"),
            }
        }
    }
    if let Some(spec) = grid {
        let xs = parse_grid(&spec)?;
        let ord = order.unwrap_or(usize::MAX);
        for x in xs {
            let z = at_zero.as_ref().map(|l| tail_eval(l, x, ord)).unwrap_or(f64::NAN);
            let i = at_inf.as_ref().map(|l| tail_eval(l, x, ord)).unwrap_or(f64::NAN);
            println!("{},{},{}", fmt(x), fmt(z), fmt(i));
        }
    }
    Ok(0)
}

fn series(entry: &CatalogEntry, side: &str, grid: &str, json: bool) -> Result<u8, Error> {
    let xs = parse_grid(grid)?;
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let ev = match side {
            "left" => density_series_from_left(&entry.rep, x)?,
            "right" => density_series_from_right(&entry.rep, x)?,
            other => {
                return Err(Error::Domain(format!(
                    "side must be left or right, got {other:?}"
                )))
            }
        };
        rows.push((x, ev));
    }
    if json {
        let out: Vec<_> = rows
            .iter()
            .map(|(x, ev)| {
                serde_json::json!({
                    "x": x,
                    "value": ev.value,
                    "terms_used": ev.terms_used,
                    "last_term": ev.last_term,
                    "regime": regime_name(ev.regime),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for (x, ev) in rows {
            println!(
                "{},{},{},{},{}",
                fmt(x),
                fmt(ev.value),
                ev.terms_used,
                fmt(ev.last_term),
                regime_name(ev.regime)
            );
        }
    }
    Ok(0)
}

fn catalog_cmd(name: Option<String>, json: bool) -> Result<u8, Error> {
    match name {
        None => {
            let entries = catalog::default_entries();
            if json {
                let names: Vec<_> = entries.iter().map(|e| e.name.clone()).collect();
                println!("{}", serde_json::to_string_pretty(&names)?);
            } else {
                for e in entries {
                    println!("{}", e.name);
                }
            }
        }
        Some(n) => {
            let entry = catalog::make(&n)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&entry)?);
            } else {
                println!("name={}", entry.name);
                println!("moments: {}", entry.source);
                let e = entry.expected;
                println!(
                    "params: gamma={} gamma_prime={} delta={} kappa={} c1={} strip=({}, {})",
                    e.gamma, e.gamma_prime, e.delta, e.kappa, e.c1, e.rho_minus, e.rho_plus
                );
                println!("closed_form_density={}", entry.oracle.is_some());
                println!("sampler={}", entry.sampler.map(|s| format!("{s:?}")).unwrap_or_else(|| "none".into()));
            }
        }
    }
    Ok(0)
}

fn sample(
    entry: &CatalogEntry,
    samples: usize,
    steps: usize,
    seed: u64,
    json: bool,
) -> Result<u8, Error> {
    let xs = sample_many(entry, samples, steps, seed)?;
    if json {
        let out = serde_json::json!({
            "name": entry.name,
            "seed": seed,
            "steps": steps,
            "values": xs,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for x in xs {
            println!("{}", fmt(x));
        }
    }
    Ok(0)
}

/// Default moment abscissas: a few representative points well inside the
/// strip, with 2s inside as well so the moment estimator has finite variance.
fn default_moment_points(entry: &CatalogEntry) -> Vec<f64> {
    let strip = rho_bounds(&entry.rep);
    let margin = 0.25;
    let ok = |s: f64| {
        s != 0.0
            && s > strip.lo + margin
            && s < strip.hi - margin
            && 2.0 * s > strip.lo
            && 2.0 * s < strip.hi
    };
    let mut pts: Vec<f64> = [1.0, 2.0, 0.5, -0.5]
        .into_iter()
        .filter(|&s| ok(s))
        .take(3)
        .collect();
    if pts.is_empty() {
        let mid = match (strip.lo.is_finite(), strip.hi.is_finite()) {
            (true, true) => 0.5 * (strip.lo + strip.hi),
            (true, false) => strip.lo + 1.0,
            (false, true) => strip.hi - 1.0,
            (false, false) => 1.0,
        };
        if ok(mid) {
            pts.push(mid);
        }
    }
    pts
}

fn verify(
    entry: &CatalogEntry,
    samples: usize,
    steps: usize,
    seed: u64,
    json: bool,
) -> Result<u8, Error> {
    let pts = default_moment_points(entry);
    let mut report = verify_moments(entry, &pts, samples, steps, seed)?;

    // Density histogram between the sample quartiles, when a density path
    // exists (closed form, or Mellin inversion for gamma > 0).
    let p = params(&entry.rep);
    let has_density = entry.oracle.is_some() || p.gamma > 1e-12;
    let has_atom = matches!(entry.sampler, Some(SamplerKind::PointUniformMixture));
    if has_density && !has_atom {
        let mut xs = sample_many(entry, samples.min(20000), steps, seed)?;
        xs.sort_by(f64::total_cmp);
        let q = |t: f64| xs[((t * (xs.len() - 1) as f64) as usize).min(xs.len() - 1)];
        let window = (q(0.1), q(0.9));
        if window.1 > window.0 {
            let dens = verify_density(entry, samples, steps, seed, window)?;
            report.stats.extend(dens.stats);
        }
    }

    // Cross-path agreement: Mellin inversion against the closed form at a
    // few interior points, scored so |z| <= 4 means 1e-8 absolute.
    if let (Some(form), true) = (entry.oracle, p.gamma > 1e-12) {
        for x in [0.5, 1.0, 2.0] {
            let mellin = density_mellin(&entry.rep, x, None)?;
            let oracle = form.eval(x)?;
            report.stats.push(McStat {
                label: format!("cross-path f({x})"),
                empirical: mellin,
                predicted: oracle,
                se: 2.5e-9,
                bias: 0.0,
                z: (mellin - oracle) / 2.5e-9,
                pass: (mellin - oracle).abs() <= 1e-8,
            });
        }
    }

    // The Brownian area entry carries a double Laplace transform identity.
    if matches!(entry.sampler, Some(SamplerKind::BrownianSupArea)) {
        let dl = verify_double_laplace(8f64.sqrt() / 3.0, &[1.0])?;
        report.stats.extend(dl.stats);
    }

    let max_abs_z = report.stats.iter().map(|s| s.z.abs()).fold(0.0, f64::max);
    let pass = report.stats.iter().all(|s| s.pass);
    report.max_abs_z = max_abs_z;
    report.pass = pass;

    print_report(&report, json)?;
    Ok(if report.pass { 0 } else { 1 })
}

fn print_report(report: &McReport, json: bool) -> Result<(), Error> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        println!(
            "{}: n={} steps={} seed={}",
            report.subject, report.samples, report.steps, report.seed
        );
        for s in &report.stats {
            println!(
                "  {} {}: got {} want {} se {} z {:+.2}",
                if s.pass { "ok  " } else { "FAIL" },
                s.label,
                s.empirical,
                s.predicted,
                s.se,
                s.z
            );
        }
        println!("max |z| = {:.3} -> {}", report.max_abs_z, if report.pass { "pass" } else { "fail" });
    }
    Ok(())
}
