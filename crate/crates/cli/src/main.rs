//! `tetrablock`: membership, boundary classification, separating and
//! supporting hyperplanes, slice rasters, C-convexity scans and the
//! verification suites, all emitting JSON (or key/value CSV).
//!
//! Exit status: 0 on success, 1 for a negative answer or a failed check,
//! 2 for usage and input errors.

mod output;
mod parse;

use clap::{Parser, Subcommand, ValueEnum};
use output::{Emitter, Format, Provenance};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use tetrablock::cconvexity::{cconvexity_scan, check_line, raster_slice, AffineLine, SliceTopology};
use tetrablock::domains::{
    classify_boundary_e, e_defining, g2_defining, g2rho_defining, in_drho, in_e, in_g2, in_g2rho,
    BoundaryClassification, CPoint2, CPoint3, DRhoDomain, Domain, G2RhoDomain, Polydisc, PuncturedBidisc,
    SymmetrizedBidisc, Tetrablock,
};
use tetrablock::hyperplanes::{
    gamma_e_point, gamma_g2rho, hyperplane_misses_domain, sample_ratio_slopes, separating_hyperplane_e, GammaSet,
    MissCheck, ProjClass,
};
use tetrablock::maps::{phi, psi, OmegaParam};
use tetrablock::projective::{Hyperplane, ProjVec, ProjVec2};
use tetrablock::rng::stream_rng;
use tetrablock::suites::{run_suite, SuiteReport, SuiteSizes, SUITES};
use tetrablock::{Rho, Tolerance, C64};

#[derive(Parser, Debug)]
#[command(name = "tetrablock", version, about = "Tetrablock and symmetrized bidisc geometry")]
struct Cli {
    /// Membership and projective tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Raster resolution (pixels per side).
    #[arg(long, global = true, default_value_t = 256)]
    res: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Lines per scan.
    #[arg(long, global = true, default_value_t = 10_000)]
    lines: usize,
    #[arg(long, global = true)]
    rho: Option<f64>,
    /// A parameter ω, as `re,im`.
    #[arg(long, global = true)]
    omega: Option<String>,
    /// Sample count: Γ members for `gamma`, miss-check samples for `verify`.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Leave the timestamp out of the record.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "UPPER")]
enum DomainName {
    E,
    G2,
    G2rho,
    Drho,
    Polydisc,
    Control,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Defining value and membership of a point.
    Member {
        #[arg(value_enum, ignore_case = true)]
        domain: DomainName,
        #[arg(required = true, allow_negative_numbers = true)]
        point: Vec<String>,
    },
    /// Interior, exterior, smooth or non-smooth boundary point of E.
    Classify {
        #[arg(required = true, allow_negative_numbers = true)]
        point: Vec<String>,
    },
    /// A hyperplane through a point outside E that misses E.
    Separate {
        #[arg(required = true, allow_negative_numbers = true)]
        point: Vec<String>,
    },
    /// Supporting hyperplanes at a boundary point, each checked numerically.
    Gamma {
        #[arg(long, value_enum, ignore_case = true, default_value = "E")]
        domain: DomainName,
        #[arg(required = true, allow_negative_numbers = true)]
        point: Vec<String>,
    },
    /// Rasterize the slice of a domain by a complex line.
    Slice {
        #[arg(value_enum, ignore_case = true)]
        domain: DomainName,
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        base: Vec<String>,
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        dir: Vec<String>,
        /// Output prefix for the `.pgm`, `.csv` and `.json` files.
        #[arg(long, default_value = "slice")]
        out: PathBuf,
        #[arg(long, default_value_t = tetrablock::cconvexity::DEFAULT_MIN_BLOB)]
        min_blob: usize,
    },
    /// Check random complex line slices for connectedness and holes.
    Scan {
        #[arg(value_enum, ignore_case = true)]
        domain: DomainName,
        #[arg(long, default_value_t = tetrablock::cconvexity::DEFAULT_MIN_BLOB)]
        min_blob: usize,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_parser = suite_names())]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names: Vec<&'static str> = SUITES.to_vec();
    names.push("all");
    clap::builder::PossibleValuesParser::new(names)
}

enum Failure {
    /// A negative answer or a failed check; the record was already printed.
    Negative,
    Usage(String),
}

impl From<tetrablock::Error> for Failure {
    fn from(e: tetrablock::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse_from(std::env::args_os().map(parse::guard_negative));
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn rho_arg(cli: &Cli) -> Result<Rho, Failure> {
    let r = cli.rho.ok_or_else(|| "this domain needs --rho".to_string())?;
    Ok(Rho::new(r)?)
}

fn run(cli: &Cli) -> Outcome {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err("--tol must be positive".to_string().into());
    }
    if cli.res < 16 {
        return Err("--res must be at least 16".to_string().into());
    }
    if cli.lines == 0 || cli.samples == Some(0) {
        return Err("--lines and --samples must be positive".to_string().into());
    }
    let emitter = Emitter {
        format: cli.format,
        timestamp: !cli.no_timestamp,
        provenance: Provenance {
            tol: cli.tol,
            seed: cli.seed,
            resolution: cli.res,
            lines: cli.lines,
            samples: cli.samples,
        },
    };
    match &cli.command {
        Command::Member { domain, point } => member(cli, &emitter, *domain, point),
        Command::Classify { point } => classify(cli, &emitter, point),
        Command::Separate { point } => separate(&emitter, point),
        Command::Gamma { domain, point } => gamma(cli, &emitter, *domain, point),
        Command::Slice {
            domain,
            base,
            dir,
            out,
            min_blob,
        } => slice(cli, &emitter, *domain, base, dir, out, *min_blob),
        Command::Scan { domain, min_blob, out } => scan(cli, &emitter, *domain, *min_blob, out.as_deref()),
        Command::Verify { suite, out } => verify(cli, &emitter, suite, out.as_deref()),
    }
}

#[derive(Serialize)]
struct ImageRecord {
    omega: C64,
    phi: CPoint2,
    phi_in_g2rho: bool,
    psi: CPoint2,
    psi_in_g2rho: bool,
}

#[derive(Serialize)]
struct MemberRecord {
    domain: String,
    point: Vec<C64>,
    defining: f64,
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    images: Option<ImageRecord>,
}

fn member(cli: &Cli, em: &Emitter, domain: DomainName, point: &[String]) -> Outcome {
    let rec = match domain {
        DomainName::E => {
            let x = CPoint3::from_array(parse::coords::<3>(point)?);
            let images = match &cli.omega {
                Some(w) => {
                    let omega = OmegaParam::new(parse::complex(w)?)?;
                    let rho = Rho::new(omega.norm().clamp(f64::MIN_POSITIVE, 1.0))?;
                    let (f, s) = (phi(omega, &x), psi(omega, &x));
                    Some(ImageRecord {
                        omega: omega.value(),
                        phi: f,
                        phi_in_g2rho: in_g2rho(&f, rho),
                        psi: s,
                        psi_in_g2rho: in_g2rho(&s, rho),
                    })
                }
                None => None,
            };
            MemberRecord {
                domain: "E".into(),
                point: x.to_array().to_vec(),
                defining: e_defining(&x)?,
                member: in_e(&x),
                images,
            }
        }
        DomainName::G2 => {
            let q = CPoint2::from_array(parse::coords::<2>(point)?);
            MemberRecord {
                domain: "G2".into(),
                point: q.to_array().to_vec(),
                defining: g2_defining(&q)?,
                member: in_g2(&q),
                images: None,
            }
        }
        DomainName::G2rho => {
            let q = CPoint2::from_array(parse::coords::<2>(point)?);
            let rho = rho_arg(cli)?;
            MemberRecord {
                domain: format!("G2RHO({})", rho.value()),
                point: q.to_array().to_vec(),
                defining: g2rho_defining(&q, rho)?,
                member: in_g2rho(&q, rho),
                images: None,
            }
        }
        DomainName::Drho => {
            let z = parse::coords::<2>(point)?;
            let rho = rho_arg(cli)?;
            MemberRecord {
                domain: format!("DRHO({})", rho.value()),
                point: z.to_vec(),
                defining: DRhoDomain::new(rho).defining(&z),
                member: in_drho(&CPoint2::from_array(z), rho),
                images: None,
            }
        }
        other => return Err(format!("member supports E, G2, G2RHO and DRHO, not {other:?}").into()),
    };
    em.emit("member", &rec, None)?;
    Ok(())
}

#[derive(Serialize)]
struct ClassifyRecord {
    point: CPoint3,
    defining: f64,
    classification: BoundaryClassification,
}

fn classify(cli: &Cli, em: &Emitter, point: &[String]) -> Outcome {
    let x = CPoint3::from_array(parse::coords::<3>(point)?);
    let tol = Tolerance::uniform(cli.tol)?;
    let rec = ClassifyRecord {
        point: x,
        defining: e_defining(&x)?,
        classification: classify_boundary_e(&x, &tol)?,
    };
    em.emit("classify", &rec, None)?;
    Ok(())
}

#[derive(Serialize)]
struct SeparateRecord {
    point: CPoint3,
    inside: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    hyperplane: Option<tetrablock::hyperplanes::SeparatingHyperplane>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
}

fn separate(em: &Emitter, point: &[String]) -> Outcome {
    let x = CPoint3::from_array(parse::coords::<3>(point)?);
    if in_e(&x) {
        let rec = SeparateRecord {
            point: x,
            inside: true,
            hyperplane: None,
            residual: None,
        };
        em.emit("separate", &rec, None)?;
        return Err(Failure::Negative);
    }
    let h = separating_hyperplane_e(&x)?;
    let rec = SeparateRecord {
        point: x,
        inside: false,
        residual: Some(h.residual(&x)),
        hyperplane: Some(h),
    };
    em.emit("separate", &rec, None)?;
    Ok(())
}

#[derive(Serialize)]
struct GammaMember<V: Serialize> {
    class: V,
    misses: bool,
    best_value: f64,
}

#[derive(Serialize)]
struct GammaRecord<S: Serialize, V: Serialize> {
    domain: String,
    point: Vec<C64>,
    set: S,
    miss_samples: usize,
    members: Vec<GammaMember<V>>,
}

fn gamma(cli: &Cli, em: &Emitter, domain: DomainName, point: &[String]) -> Outcome {
    let n = cli.samples.unwrap_or(8);
    let miss = |i: usize| MissCheck::with_samples(20_000, cli.seed ^ (i as u64).wrapping_mul(0x9e37_79b9));
    match domain {
        DomainName::E => {
            let x = CPoint3::from_array(parse::coords::<3>(point)?);
            let tol = Tolerance::uniform(cli.tol)?;
            let g = gamma_e_point(&x, &tol)?;
            let members = g
                .sample(n, cli.seed)?
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    let out = hyperplane_misses_domain(&Hyperplane::new(x.to_array(), v), &Tetrablock, &miss(i));
                    GammaMember {
                        class: v,
                        misses: out.misses,
                        best_value: out.best_value,
                    }
                })
                .collect();
            let rec = GammaRecord {
                domain: "E".into(),
                point: x.to_array().to_vec(),
                set: g,
                miss_samples: 20_000,
                members,
            };
            em.emit("gamma", &rec, None)?;
        }
        DomainName::G2rho => {
            let q = CPoint2::from_array(parse::coords::<2>(point)?);
            let rho = rho_arg(cli)?;
            let set = gamma_g2rho(&q, rho, cli.tol)?;
            let classes: Vec<ProjVec2> = match set {
                GammaSet::Singleton {
                    class: ProjClass::Planar(v),
                } => vec![v],
                GammaSet::RatioPredicate {
                    lambda1,
                    lambda2,
                    rho,
                    grid,
                } => {
                    let mut rng = stream_rng(cli.seed, 1);
                    let mut out = vec![ProjVec2::from_real([0.0, 1.0])?];
                    for w in sample_ratio_slopes(lambda1, lambda2, rho, &grid, n.saturating_sub(1), &mut rng)? {
                        out.push(ProjVec::new([C64::new(1.0, 0.0), -w])?);
                    }
                    out
                }
                _ => return Err("unexpected planar set".to_string().into()),
            };
            let domain = G2RhoDomain::new(rho);
            let members = classes
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    let out = hyperplane_misses_domain(&Hyperplane::new(q.to_array(), v), &domain, &miss(i));
                    GammaMember {
                        class: v,
                        misses: out.misses,
                        best_value: out.best_value,
                    }
                })
                .collect();
            let rec = GammaRecord {
                domain: domain.label(),
                point: q.to_array().to_vec(),
                set,
                miss_samples: 20_000,
                members,
            };
            em.emit("gamma", &rec, None)?;
        }
        other => return Err(format!("gamma supports E and G2RHO, not {other:?}").into()),
    }
    Ok(())
}

#[derive(Serialize)]
struct SliceRecord {
    domain: String,
    base: Vec<C64>,
    dir: Vec<C64>,
    halfwidth: f64,
    resolution: usize,
    pixels_set: usize,
    passes: bool,
    topology: SliceTopology,
    files: Vec<String>,
}

fn slice_in<const N: usize, D: Domain<N>>(
    cli: &Cli,
    em: &Emitter,
    domain: &D,
    base: &[String],
    dir: &[String],
    out: &std::path::Path,
    min_blob: usize,
) -> Outcome {
    let line = AffineLine::new(parse::coords::<N>(base)?, parse::coords::<N>(dir)?)?;
    let raster = raster_slice(domain, &line, cli.res)?;
    let (passes, topology) = check_line(domain, &line, cli.res, min_blob)?;
    let with_ext = |ext: &str| {
        let mut p = out.as_os_str().to_owned();
        p.push(format!(".{ext}"));
        PathBuf::from(p)
    };
    let (pgm, csv, json) = (with_ext("pgm"), with_ext("csv"), with_ext("json"));
    std::fs::write(&pgm, raster.to_pgm()).map_err(|e| format!("{}: {e}", pgm.display()))?;
    std::fs::write(&csv, raster.to_csv()).map_err(|e| format!("{}: {e}", csv.display()))?;
    let rec = SliceRecord {
        domain: domain.label(),
        base: raster.line.base.to_vec(),
        dir: raster.line.dir.to_vec(),
        halfwidth: raster.halfwidth,
        resolution: raster.resolution,
        pixels_set: raster.count(),
        passes,
        topology,
        files: [&pgm, &csv, &json].iter().map(|p| p.display().to_string()).collect(),
    };
    em.emit("slice", &rec, Some(&json))?;
    Ok(())
}

fn slice(
    cli: &Cli,
    em: &Emitter,
    domain: DomainName,
    base: &[String],
    dir: &[String],
    out: &std::path::Path,
    min_blob: usize,
) -> Outcome {
    match domain {
        DomainName::E => slice_in(cli, em, &Tetrablock, base, dir, out, min_blob),
        DomainName::G2 => slice_in(cli, em, &SymmetrizedBidisc, base, dir, out, min_blob),
        DomainName::G2rho => slice_in(cli, em, &G2RhoDomain::new(rho_arg(cli)?), base, dir, out, min_blob),
        DomainName::Drho => slice_in(cli, em, &DRhoDomain::new(rho_arg(cli)?), base, dir, out, min_blob),
        DomainName::Polydisc => match base.len() {
            3 => slice_in(cli, em, &Polydisc::<3>, base, dir, out, min_blob),
            _ => slice_in(cli, em, &Polydisc::<2>, base, dir, out, min_blob),
        },
        DomainName::Control => slice_in(cli, em, &PuncturedBidisc::default(), base, dir, out, min_blob),
    }
}

fn scan_in<const N: usize, D: Domain<N>>(
    cli: &Cli,
    em: &Emitter,
    domain: &D,
    min_blob: usize,
    out: Option<&std::path::Path>,
) -> Outcome {
    let report = cconvexity_scan(domain, cli.lines, cli.seed, cli.res, min_blob)?;
    em.emit("scan", &report, out)?;
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn scan(cli: &Cli, em: &Emitter, domain: DomainName, min_blob: usize, out: Option<&std::path::Path>) -> Outcome {
    match domain {
        DomainName::E => scan_in(cli, em, &Tetrablock, min_blob, out),
        DomainName::G2 => scan_in(cli, em, &SymmetrizedBidisc, min_blob, out),
        DomainName::G2rho => scan_in(cli, em, &G2RhoDomain::new(rho_arg(cli)?), min_blob, out),
        DomainName::Drho => scan_in(cli, em, &DRhoDomain::new(rho_arg(cli)?), min_blob, out),
        DomainName::Polydisc => scan_in(cli, em, &Polydisc::<3>, min_blob, out),
        DomainName::Control => scan_in(cli, em, &PuncturedBidisc::default(), min_blob, out),
    }
}

#[derive(Serialize)]
struct VerifyRecord {
    suite: String,
    passed: bool,
    sizes: SuiteSizes,
    suites: Vec<SuiteReport>,
}

fn verify(cli: &Cli, em: &Emitter, suite: &str, out: Option<&std::path::Path>) -> Outcome {
    let defaults = SuiteSizes::default();
    let sizes = SuiteSizes {
        scan_lines: cli.lines,
        resolution: cli.res,
        miss_samples: cli.samples.unwrap_or(defaults.miss_samples),
        ..defaults
    };
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    for name in names {
        let t = Instant::now();
        let rep = run_suite(name, cli.seed, &sizes)?;
        eprintln!(
            "{name}: {} ({:.1} s)",
            if rep.passed { "pass" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
        for c in rep.checks.iter().filter(|c| !c.passed) {
            eprintln!("  {}: {} of {} failed", c.name, c.failures, c.trials);
        }
        reports.push(rep);
    }
    let rec = VerifyRecord {
        suite: suite.to_string(),
        passed: reports.iter().all(|r| r.passed),
        sizes,
        suites: reports,
    };
    em.emit("verify", &rec, out)?;
    if rec.passed {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}
