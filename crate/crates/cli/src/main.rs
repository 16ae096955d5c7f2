use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dgkern::complexes::{hom_complex, homology_h, Complex};
use dgkern::cones::{cokernel_protosplit, mapping_cone, mc1, probe_family, DEFAULT_PROBE_DEPTH};
use dgkern::dgcat::{g_retraction_from_cauchy, validate_dg_category, verify_cauchy_data, weighted_colimit};
use dgkern::monoidal::tensor;
use dgkern::serial::{self, complex_to_doc, groups_to_json, to_json};
use dgkern::suite::{run_suite, SuiteConfig};
use dgkern::totals::{tot_via_weighted_colimit, total_complex};
use dgkern::Error;

#[derive(Parser)]
#[command(name = "dgkern", version, about = "Exact chain complexes over the integers and small DG-categories")]
struct Cli {
    /// Emit a JSON report instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Depth of the probe family used for universal-property checks
    #[arg(long, global = true, default_value_t = DEFAULT_PROBE_DEPTH)]
    probe_depth: usize,
    /// Window W of the category ℒ on objects -W..=W
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Seed for random test generation
    #[arg(long, global = true, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
    /// Write the report to a file instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Homology of a complex
    Homology { complex: PathBuf },
    /// Tensor product of two complexes
    Tensor { a: PathBuf, b: PathBuf },
    /// Hom complex [a, b]
    Hom { a: PathBuf, b: PathBuf },
    /// Mapping cone of a chain map
    Cone {
        #[arg(long)]
        f: PathBuf,
        /// Take the cone of the identity on the source of f (or on f itself
        /// if the file holds a complex)
        #[arg(long)]
        map_cone_of_identity: bool,
    },
    /// Cokernel of a chain map f protosplit by t
    CokernelProtosplit {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        t: PathBuf,
    },
    /// Total complex of a double complex, compared with colim(J, A)
    Tot { double: PathBuf },
    /// Weighted colimit of a left module diagram by a right module weight
    Colim { weight: PathBuf, diagram: PathBuf },
    /// Check Cauchy data and its snake identity
    VerifyCauchy { data: PathBuf },
    /// Check the DG-category axioms
    VerifyCategory { category: PathBuf },
    /// Run the acceptance criteria
    Suite,
}

struct Report {
    text: Vec<String>,
    json: Value,
    verified: bool,
}

impl Report {
    fn ok(text: Vec<String>, json: Value) -> Self {
        Report { text, json, verified: true }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, Error>) -> Result<T, Error> {
    f(&read(path)?).map_err(|e| Error::Input(format!("{}: {}", path.display(), e.to_string().trim_start_matches("invalid input: "))))
}

fn ranks_line(c: &Complex) -> String {
    if c.is_zero() {
        return "ranks: 0".into();
    }
    let parts: Vec<String> = c.rank_map().into_iter().map(|(n, r)| format!("{n}:{r}")).collect();
    format!("ranks: {}", parts.join(" "))
}

fn complex_report(label: &str, c: &Complex) -> Report {
    let h = homology_h(c);
    Report::ok(
        vec![format!("{label} {}", ranks_line(c)), h.to_string()],
        json!({ "complex": to_json(&complex_to_doc(c)), "homology": groups_to_json(&h) }),
    )
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.verb {
        Verb::Homology { complex } => {
            let c = load(complex, serial::load_complex)?;
            let h = homology_h(&c);
            Ok(Report::ok(vec![h.to_string()], json!({ "homology": groups_to_json(&h) })))
        }
        Verb::Tensor { a, b } => {
            let (a, b) = (load(a, serial::load_complex)?, load(b, serial::load_complex)?);
            Ok(complex_report("A⊗B", &tensor(&a, &b)?))
        }
        Verb::Hom { a, b } => {
            let (a, b) = (load(a, serial::load_complex)?, load(b, serial::load_complex)?);
            Ok(complex_report("[A,B]", &hom_complex(&a, &b)?))
        }
        Verb::Cone { f, map_cone_of_identity } => {
            if *map_cone_of_identity {
                let text = read(f)?;
                let a = match serial::load_proto(&text) {
                    Ok(p) => p.source().clone(),
                    Err(_) => load(f, serial::load_complex)?,
                };
                Ok(complex_report("Mc 1", &mc1(&a)?))
            } else {
                let f = load(f, serial::load_proto)?;
                Ok(complex_report("Mc f", &mapping_cone(&f)?.cone))
            }
        }
        Verb::CokernelProtosplit { f, t } => {
            let (f, t) = (load(f, serial::load_proto)?, load(t, serial::load_proto)?);
            let c = cokernel_protosplit(&f, &t)?;
            let probes = probe_family(&[f.target().clone(), c.object.clone()], cli.probe_depth)?;
            let verified = c.verify(&probes)?;
            let mut r = complex_report("coker", &c.object);
            r.text.push(format!(
                "equations and universal property against {} probes: {}",
                probes.len(),
                if verified { "hold" } else { "FAIL" }
            ));
            r.json["verified"] = verified.into();
            r.json["w"] = to_json(&serial::proto_to_doc(&c.w));
            r.json["s"] = to_json(&serial::proto_to_doc(&c.s));
            r.verified = verified;
            Ok(r)
        }
        Verb::Tot { double } => {
            let a = load(double, serial::load_double)?;
            let tot = total_complex(&a)?;
            let colim = tot_via_weighted_colimit(&a, cli.window)?;
            let iso = colim.comparison.holds();
            let mut r = complex_report("Tot", &tot);
            r.text.push(format!(
                "comparison with colim(J, A) over window {}: {}",
                colim.window,
                if iso { "chain isomorphism" } else { "FAIL" }
            ));
            r.json["window"] = colim.window.into();
            r.json["comparison"] = iso.into();
            r.verified = iso;
            Ok(r)
        }
        Verb::Colim { weight, diagram } => {
            let (w, d) = (load(weight, serial::load_module)?, load(diagram, serial::load_module)?);
            if w.base() != d.base() {
                return Err(Error::Input("weight and diagram live over different categories".into()));
            }
            let colim = weighted_colimit(&w, &d)?;
            let mut seeds = vec![colim.object.clone()];
            seeds.extend(d.values().iter().filter(|c| !c.is_zero()).cloned());
            let probes = probe_family(&seeds, cli.probe_depth.min(1))?;
            let verified = colim.verify(&probes)?;
            let mut r = complex_report("colim", &colim.object);
            r.text.push(format!(
                "universal property against {} probes: {}",
                probes.len(),
                if verified { "holds" } else { "FAIL" }
            ));
            r.json["verified"] = verified.into();
            r.verified = verified;
            Ok(r)
        }
        Verb::VerifyCauchy { data } => {
            let cd = load(data, serial::load_cauchy)?;
            let report = match verify_cauchy_data(&cd) {
                Ok(r) => r,
                Err(Error::CauchyDataInvalid(why)) => {
                    return Ok(Report {
                        text: vec![format!("structure check fails: {why}")],
                        json: json!({ "passed": false, "structure": why }),
                        verified: false,
                    })
                }
                Err(e) => return Err(e),
            };
            if let Some(w) = &report.witness {
                return Ok(Report {
                    text: vec![format!("snake identity fails: {w}")],
                    json: json!({
                        "passed": false,
                        "witness": {
                            "object": cd.base().name(w.object),
                            "degree": w.degree,
                            "index": w.index,
                            "got": w.got.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
                            "expected": w.expected.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
                        }
                    }),
                    verified: false,
                });
            }
            let mut text = vec!["snake identity holds".to_string()];
            let mut out = json!({ "passed": true });
            if cd.base().is_graded() {
                let g = g_retraction_from_cauchy(&cd)?;
                let ok = g.composite_is_identity()?;
                text.push(format!("retraction through free module: {}", if ok { "identity" } else { "FAIL" }));
                out["retraction"] = ok.into();
                if !ok {
                    return Ok(Report { text, json: out, verified: false });
                }
            }
            Ok(Report::ok(text, out))
        }
        Verb::VerifyCategory { category } => {
            let cat = load(category, serial::load_category)?;
            let report = validate_dg_category(&cat);
            let violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            let mut text = vec![format!("{} objects: {}", cat.len(), cat.objects().join(", "))];
            if violations.is_empty() {
                text.push("all DG-category axioms hold".into());
            } else {
                text.extend(violations.iter().cloned());
            }
            Ok(Report {
                text,
                json: json!({ "objects": cat.objects(), "valid": report.is_valid(), "violations": violations }),
                verified: report.is_valid(),
            })
        }
        Verb::Suite => {
            let cfg = SuiteConfig { seed: cli.seed, probe_depth: cli.probe_depth, window: cli.window };
            let results = run_suite(&cfg);
            let passed = results.iter().filter(|r| r.passed).count();
            let mut text: Vec<String> = results
                .iter()
                .map(|r| format!("criterion {:>2} {} {}: {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
                .collect();
            text.push(format!("{passed} of {} criteria passed", results.len()));
            Ok(Report {
                json: json!({ "criteria": results, "passed": passed, "total": results.len() }),
                text,
                verified: passed == results.len(),
            })
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Error> {
    match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| Error::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        let mut v = report.json;
        v["ok"] = report.verified.into();
        format!("{}\n", serde_json::to_string_pretty(&v).expect("reports serialize"))
    } else {
        report.text.iter().map(|l| format!("{l}\n")).collect()
    };
    if let Err(e) = emit(&cli, &body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
