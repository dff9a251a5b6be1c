//! Command line front end.
//!
//! Every run prints exactly one compact JSON payload line (or CSV rows, or a
//! JSONL stream for `sample`) followed by a `meta` line with the UTC
//! timestamp; `--no-meta` drops the meta line so output can be compared byte
//! for byte. Formats are fixed per subcommand: tables can switch between
//! `json` and `csv`, event samples are always `jsonl`, everything else is
//! `json`. Usage and validation problems exit with status 2; failing
//! consistency checks exit with status 1.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use magvac::emission::{self, Cutoffs, Measure, SpectrumConfig, SpectrumTable};
use magvac::sampler::{self, CountSpec, SamplerConfig};
use magvac::specfun;
use magvac::units::{ConstantsMode, FieldStrength, PhysicalConstants, Volume};
use magvac::vacuum::{self, FermionSet};
use magvac::{astro, Error};

#[derive(Parser)]
#[command(
    name = "magvac",
    version,
    about = "Vacuum energy shifts, field screening, and photon emission in strong magnetic fields"
)]
struct Cli {
    /// JSON file overriding individual physical constants.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Constants set: rounded textbook values or CODATA values.
    #[arg(long, global = true, value_enum, default_value_t = ConstantsArg::Paper)]
    constants: ConstantsArg,

    /// Output format; each subcommand accepts a fixed subset.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Suppress the trailing meta line.
    #[arg(long, global = true)]
    no_meta: bool,

    /// JSON file with the fermion species to sum over.
    #[arg(long, global = true, value_name = "FILE")]
    fermions: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConstantsArg {
    Paper,
    Modern,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Jsonl,
}

impl FormatArg {
    fn label(self) -> &'static str {
        match self {
            FormatArg::Json => "json",
            FormatArg::Csv => "csv",
            FormatArg::Jsonl => "jsonl",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Paper,
    Exact,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Paper => Measure::Paper,
            MeasureArg::Exact => Measure::Exact,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Vacuum energy shift and field-energy comparison for a volume.
    #[command(name = "delta-e")]
    DeltaE(DeltaEArgs),
    /// Screened macroscopic field after vacuum back-reaction.
    Screen(ScreenArgs),
    /// Binned transverse-momentum photon spectrum.
    Spectrum(SpectrumArgs),
    /// Monte Carlo photon events as JSONL.
    Sample(SampleArgs),
    /// Energy-release and surface-force estimates for a compact object.
    Astro(AstroArgs),
    /// Internal numerical consistency checks.
    Check,
}

#[derive(Args)]
struct DeltaEArgs {
    /// Field strength in gauss.
    #[arg(long = "B", value_name = "GAUSS")]
    b_gauss: f64,
    /// Volume in cm^3.
    #[arg(long = "V", value_name = "CM3")]
    volume_cm3: f64,
}

#[derive(Args)]
struct ScreenArgs {
    /// Field strength in gauss.
    #[arg(long = "B", value_name = "GAUSS")]
    b_gauss: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Field strength in gauss.
    #[arg(long = "B", value_name = "GAUSS")]
    b_gauss: f64,
    /// Highest emission line to include.
    #[arg(long = "n0-max", default_value_t = 5)]
    n0_max: u32,
    /// Number of uniform k_perp bins.
    #[arg(long, default_value_t = 50)]
    bins: usize,
    /// Upper edge of the binned range in eV (defaults to the widest line).
    #[arg(long = "k-perp-max", value_name = "EV")]
    k_perp_max: Option<f64>,
    /// Spectral weight convention.
    #[arg(long, value_enum, default_value_t = MeasureArg::Paper)]
    measure: MeasureArg,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("count").required(true).multiple(false))]
struct SampleArgs {
    /// Field strength in gauss.
    #[arg(long = "B", value_name = "GAUSS")]
    b_gauss: f64,
    /// Highest emission line to include.
    #[arg(long = "n0-max", default_value_t = 5)]
    n0_max: u32,
    /// Draw exactly this many events.
    #[arg(long, group = "count")]
    events: Option<u64>,
    /// Draw a Poisson-distributed count with this mean.
    #[arg(long = "n-bar", group = "count")]
    n_bar: Option<f64>,
    /// RNG seed; generated and reported when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Spectral weight convention.
    #[arg(long, value_enum, default_value_t = MeasureArg::Paper)]
    measure: MeasureArg,
    /// Explicit |k_par| cutoff in eV (defaults to 3 sqrt(eB)).
    #[arg(long = "k-par-max", value_name = "EV")]
    k_par_max: Option<f64>,
}

#[derive(Args)]
struct AstroArgs {
    /// Surface field strength in gauss.
    #[arg(long = "B", value_name = "GAUSS")]
    b_gauss: f64,
    /// Emitting volume in cm^3 (defaults to the cube of the radius).
    #[arg(long = "V", value_name = "CM3")]
    volume_cm3: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_constants(cli: &Cli) -> Result<PhysicalConstants, Error> {
    let base = match cli.constants {
        ConstantsArg::Paper => PhysicalConstants::paper(),
        ConstantsArg::Modern => PhysicalConstants::modern(),
    };
    match &cli.config {
        Some(path) => base.with_overrides_from_file(path),
        None => Ok(base),
    }
}

fn load_fermions(cli: &Cli, consts: &PhysicalConstants, default_electron_only: bool) -> Result<FermionSet, Error> {
    match &cli.fermions {
        Some(path) => FermionSet::from_json_file(path),
        None if default_electron_only => Ok(FermionSet::electron_only(consts.m_e_ev)),
        None => Ok(FermionSet::standard_model(consts.m_e_ev)),
    }
}

fn fermions_label(cli: &Cli, default_electron_only: bool) -> Value {
    match &cli.fermions {
        Some(path) => json!(path.display().to_string()),
        None if default_electron_only => json!("electron"),
        None => json!("standard_model"),
    }
}

fn resolve_format(
    requested: Option<FormatArg>,
    allowed: &[FormatArg],
    command: &str,
) -> Result<FormatArg, String> {
    let format = requested.unwrap_or(allowed[0]);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        let names: Vec<&str> = allowed.iter().map(|f| f.label()).collect();
        Err(format!(
            "format {:?} is not available for {command}; allowed: {}",
            format.label(),
            names.join(", ")
        ))
    }
}

fn meta_line(prefix: &str) -> String {
    let now = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    format!("{prefix}{}", json!({ "meta": { "timestamp_utc": now } }))
}

fn payload(command: &str, mode: ConstantsMode, input: Value, result: Value) -> Value {
    json!({
        "schema_version": 1,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "constants_mode": mode,
        "input": input,
        "result": result,
    })
}

fn print_json_payload(cli: &Cli, command: &str, mode: ConstantsMode, input: Value, result: Value) {
    println!("{}", payload(command, mode, input, result));
    if !cli.no_meta {
        println!("{}", meta_line(""));
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Check => return run_check(cli),
        _ => {}
    }
    let consts = load_constants(cli).map_err(|e| e.to_string())?;
    match &cli.command {
        Command::DeltaE(args) => {
            resolve_format(cli.format, &[FormatArg::Json], "delta-e")?;
            let fermions = load_fermions(cli, &consts, false).map_err(|e| e.to_string())?;
            let field =
                FieldStrength::from_gauss(args.b_gauss, &consts).map_err(|e| e.to_string())?;
            let volume =
                Volume::from_cm3(args.volume_cm3, &consts).map_err(|e| e.to_string())?;
            let report = vacuum::delta_e(&field, &volume, &fermions, &consts)
                .map_err(|e| e.to_string())?;
            let input = json!({
                "B_gauss": args.b_gauss,
                "V_cm3": args.volume_cm3,
                "fermions": fermions_label(cli, false),
            });
            print_json_payload(cli, "delta-e", consts.mode, input, json!(report));
        }
        Command::Screen(args) => {
            resolve_format(cli.format, &[FormatArg::Json], "screen")?;
            let fermions = load_fermions(cli, &consts, false).map_err(|e| e.to_string())?;
            let field =
                FieldStrength::from_gauss(args.b_gauss, &consts).map_err(|e| e.to_string())?;
            let report =
                vacuum::screened_field(&field, &fermions, &consts).map_err(|e| e.to_string())?;
            let input = json!({
                "B_gauss": args.b_gauss,
                "fermions": fermions_label(cli, false),
            });
            print_json_payload(cli, "screen", consts.mode, input, json!(report));
        }
        Command::Spectrum(args) => {
            let format = resolve_format(cli.format, &[FormatArg::Json, FormatArg::Csv], "spectrum")?;
            let fermions = load_fermions(cli, &consts, true).map_err(|e| e.to_string())?;
            let field =
                FieldStrength::from_gauss(args.b_gauss, &consts).map_err(|e| e.to_string())?;
            let config = SpectrumConfig {
                n0_max: args.n0_max,
                bins: args.bins,
                k_perp_max_ev: args.k_perp_max,
                measure: args.measure.into(),
                cutoffs: Cutoffs::default(),
            };
            let table = emission::spectrum(&field, &fermions, &config, &consts)
                .map_err(|e| e.to_string())?;
            let input = json!({
                "B_gauss": args.b_gauss,
                "n0_max": args.n0_max,
                "bins": args.bins,
                "k_perp_max_eV": args.k_perp_max,
                "measure": Measure::from(args.measure),
                "fermions": fermions_label(cli, true),
            });
            match format {
                FormatArg::Json => {
                    print_json_payload(cli, "spectrum", consts.mode, input, json!(table));
                }
                FormatArg::Csv => print_spectrum_csv(cli, &table),
                FormatArg::Jsonl => unreachable!("rejected by resolve_format"),
            }
        }
        Command::Sample(args) => {
            resolve_format(cli.format, &[FormatArg::Jsonl], "sample")?;
            let fermions = load_fermions(cli, &consts, true).map_err(|e| e.to_string())?;
            let field =
                FieldStrength::from_gauss(args.b_gauss, &consts).map_err(|e| e.to_string())?;
            let seed = args.seed.unwrap_or_else(generate_seed);
            let count = match (args.events, args.n_bar) {
                (Some(n), None) => CountSpec::Events(n),
                (None, Some(mean)) => CountSpec::PoissonMean(mean),
                _ => unreachable!("enforced by the count arg group"),
            };
            let config = SamplerConfig {
                n0_max: args.n0_max,
                measure: args.measure.into(),
                cutoffs: Cutoffs { k_par_max_ev: args.k_par_max },
                k_par_cap_factor: 3.0,
                seed,
                count,
            };
            let run = sampler::sample_events(&field, &fermions, &config, &consts)
                .map_err(|e| e.to_string())?;
            print!("{}", run.to_jsonl());
            if !cli.no_meta {
                println!("{}", meta_line(""));
            }
        }
        Command::Astro(args) => {
            resolve_format(cli.format, &[FormatArg::Json], "astro")?;
            let fermions = load_fermions(cli, &consts, false).map_err(|e| e.to_string())?;
            let object = astro::CompactObject::magnetar(args.b_gauss);
            let volume_model = match args.volume_cm3 {
                Some(v) => astro::VolumeModel::ExplicitCm3(v),
                None => astro::VolumeModel::CubeOfRadius,
            };
            let release = astro::release_estimate(&object, volume_model, &fermions, &consts)
                .map_err(|e| e.to_string())?;
            let forces = astro::force_comparison(&object).map_err(|e| e.to_string())?;
            let input = json!({
                "B_gauss": args.b_gauss,
                "V_cm3": args.volume_cm3,
                "fermions": fermions_label(cli, false),
            });
            print_json_payload(
                cli,
                "astro",
                consts.mode,
                input,
                json!({ "release": release, "forces": forces }),
            );
        }
        Command::Check => unreachable!("handled above"),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_spectrum_csv(cli: &Cli, table: &SpectrumTable) {
    println!("k_perp_lo_eV,k_perp_hi_eV,number_rate,energy_rate");
    for bin in &table.bins {
        println!(
            "{},{},{},{}",
            bin.k_perp_lo_ev, bin.k_perp_hi_ev, bin.number_rate, bin.energy_rate
        );
    }
    if !cli.no_meta {
        println!("{}", meta_line("# "));
    }
}

fn generate_seed() -> u64 {
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    nanos ^ u64::from(std::process::id())
}

struct CheckOutcome {
    name: &'static str,
    residual: f64,
    threshold: f64,
}

fn run_check(cli: &Cli) -> Result<ExitCode, String> {
    let consts = match load_constants(cli) {
        Ok(c) => c,
        Err(e) => {
            // A broken constants source is itself a failed check, not a
            // usage error.
            let result = json!({
                "checks": [{
                    "name": "constants-load",
                    "pass": false,
                    "error": e.to_string(),
                }],
                "all_pass": false,
            });
            print_json_payload(
                cli,
                "check",
                ConstantsMode::Custom,
                json!({}),
                result,
            );
            return Ok(ExitCode::from(1));
        }
    };
    resolve_format(cli.format, &[FormatArg::Json], "check")?;
    let checks = collect_checks(&consts).map_err(|e| e.to_string())?;
    let mut rows = vec![json!({ "name": "constants-load", "pass": true, "residual": 0.0 })];
    let mut all_pass = true;
    for check in &checks {
        let pass = check.residual.is_finite() && check.residual <= check.threshold;
        all_pass &= pass;
        rows.push(json!({
            "name": check.name,
            "residual": check.residual,
            "threshold": check.threshold,
            "pass": pass,
        }));
    }
    let result = json!({ "checks": rows, "all_pass": all_pass });
    print_json_payload(cli, "check", consts.mode, json!({}), result);
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn collect_checks(consts: &PhysicalConstants) -> Result<Vec<CheckOutcome>, Error> {
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for q in [0.1, 0.5, 1.0, 2.5, 10.0, 100.0] {
        let z = specfun::hurwitz_zeta(-1.0, q)?;
        worst = worst.max((z + specfun::bernoulli2(q) / 2.0).abs());
    }
    checks.push(CheckOutcome { name: "zeta-closed-form", residual: worst, threshold: 1e-12 });

    let reduction = vacuum::zeta_reduction_check(-2.0, 1.0, 0.5, 200_000)?;
    checks.push(CheckOutcome {
        name: "zeta-reduction",
        residual: reduction.relative_residual,
        threshold: 1e-10,
    });

    let free = vacuum::regularized_energy_free();
    let landau = vacuum::regularized_energy_landau();
    let eb = 0.5915745355686452;
    let vol = 1.0e6;
    let expected = eb * eb * vol / (12.0 * PI * PI);
    let mut worst = 0.0f64;
    for m in [0.1, 1.0, 511000.0] {
        let diff = vacuum::pole_difference(&landau, &free, eb, m, vol);
        worst = worst.max((diff / expected - 1.0).abs());
    }
    checks.push(CheckOutcome { name: "mass-cancellation", residual: worst, threshold: 1e-12 });

    let via = vacuum::landau_pole_coeff_via_zeta(1.3, 0.7)?;
    let structural = landau.pole_residue(0.7, 1.3, 1.0);
    checks.push(CheckOutcome {
        name: "landau-pole-via-zeta",
        residual: (via / structural - 1.0).abs(),
        threshold: 1e-11,
    });

    let fermions = FermionSet::electron_only(consts.m_e_ev);
    let eb_kernel = consts.m_e_ev * consts.m_e_ev * 1.0e-2;
    let root = eb_kernel.sqrt();
    let mut worst = 0.0f64;
    for i in 1..=50 {
        let k = 3.0 * root * i as f64 / 50.0;
        let kernel = emission::rate_kernel(1, k, eb_kernel, &fermions, consts)?;
        let closed = emission::first_line_kernel_closed_form(k, eb_kernel, &fermions, consts)?;
        worst = worst.max((kernel / closed - 1.0).abs());
    }
    checks.push(CheckOutcome { name: "kernel-reduction", residual: worst, threshold: 1e-12 });

    let fourier = emission::fourier_hermite_check(3, 0.7, 0.2, 1.0)?;
    checks.push(CheckOutcome { name: "fourier-hermite", residual: fourier, threshold: 1e-6 });

    let field = FieldStrength::from_gauss(1.0e13, consts)?;
    let volume = Volume::from_cm3(1.0, consts)?;
    let set = FermionSet::standard_model(consts.m_e_ev);
    let report = vacuum::delta_e(&field, &volume, &set, consts)?;
    let natural_route = report.field_energy_ev * consts.erg_per_ev;
    checks.push(CheckOutcome {
        name: "field-energy-routes",
        residual: (natural_route / report.field_energy_erg - 1.0).abs(),
        threshold: 1e-3,
    });

    let n_bar = 4.0f64;
    let n_max = (n_bar + 40.0 * (n_bar + 1.0).sqrt()) as u64;
    let mut total = 0.0;
    for n in 0..=n_max {
        total += emission::poisson_probability(n_bar, n)?;
    }
    checks.push(CheckOutcome {
        name: "poisson-normalization",
        residual: (1.0 - total).abs(),
        threshold: 1e-12,
    });

    Ok(checks)
}
