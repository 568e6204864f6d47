use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use glpair_core::diskband::{realize, DiskBandError};
use glpair_core::goeritz::{analyze, Certificate, InvariantRecord, InvariantTriple};
use glpair_core::linkops::{self, Report};
use glpair_core::{DiskBandSurface, FramedVirtualLink, GaussCode, SymMatrix};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_COLORABLE: u8 = 2;
const EXIT_NOT_ALLOWABLE: u8 = 3;
const EXIT_HARNESS_FAIL: u8 = 4;

/// Gordon-Litherland invariants of checkerboard colorable virtual links.
#[derive(Parser)]
#[command(name = "glpair", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Signature, determinant and nullity of both checkerboard colorings.
    Invariants {
        #[arg(long)]
        gauss: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = "")]
        name: String,
    },
    /// Process a `name<TAB>gauss_code` file into JSON or CSV.
    Batch {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Quantities of a disk-band surface file. Prints everything when no flag is given.
    Surface {
        file: PathBuf,
        #[arg(long)]
        gl: bool,
        #[arg(long)]
        euler: bool,
        #[arg(long)]
        invariants: bool,
        #[arg(long)]
        kirby: bool,
    },
    /// Build a disk-band surface whose Gordon-Litherland matrix is `--matrix`.
    Realize {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Slide handle `i` over handle `j` in the framed link of a matrix.
    Slide {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        i: usize,
        j: usize,
        #[arg(long)]
        subtract: bool,
    },
    /// Run the property harness on one code or on every code of a TSV file.
    Check {
        #[arg(long, conflicts_with = "file")]
        gauss: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Command::Invariants { gauss, json, name } => cmd_invariants(&gauss, json, &name),
        Command::Batch { input, out } => cmd_batch(&input, &out),
        Command::Surface { file, gl, euler, invariants, kirby } => cmd_surface(&file, [gl, euler, invariants, kirby]),
        Command::Realize { matrix, out } => cmd_realize(&matrix, &out),
        Command::Slide { matrix, i, j, subtract } => cmd_slide(&matrix, i, j, if subtract { -1 } else { 1 }),
        Command::Check { gauss, file } => cmd_check(gauss.as_deref(), file.as_deref()),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("glpair: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<u8, (u8, String)>;

fn input_err(e: impl std::fmt::Display) -> (u8, String) {
    (EXIT_INPUT, e.to_string())
}

fn show_triple(t: &InvariantTriple) -> String {
    format!("({},{},{}) mu={}", t.sigma, t.det, t.nullity, t.mu)
}

fn cmd_invariants(text: &str, json: bool, name: &str) -> CmdResult {
    let code: GaussCode = text.parse().map_err(input_err)?;
    let rec = analyze(name, &code).map_err(input_err)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&rec).map_err(input_err)?);
    } else {
        if !rec.name.is_empty() {
            println!("name: {}", rec.name);
        }
        println!("gauss_code: {}", rec.gauss_code);
        println!("genus: {}", rec.genus);
        println!("colorable: {}", rec.colorable);
        for (label, t) in ["xi", "xi*"].iter().zip(&rec.invariants) {
            println!("{label}: {}", show_triple(t));
        }
        println!("certificate: {:?}", rec.certificate);
    }
    Ok(if rec.colorable { 0 } else { EXIT_NOT_COLORABLE })
}

#[derive(Debug, Clone, Serialize)]
struct BatchRecord {
    name: String,
    gauss_code: String,
    status: &'static str,
    genus: Option<usize>,
    colorable: Option<bool>,
    invariants: Vec<InvariantTriple>,
    certificate: Option<Certificate>,
    error: Option<String>,
}

impl BatchRecord {
    fn failed(name: &str, code: &str, err: String) -> BatchRecord {
        BatchRecord {
            name: name.to_string(),
            gauss_code: code.to_string(),
            status: "error",
            genus: None,
            colorable: None,
            invariants: Vec::new(),
            certificate: None,
            error: Some(err),
        }
    }

    fn from_record(r: InvariantRecord) -> BatchRecord {
        BatchRecord {
            status: if r.colorable { "ok" } else { "not-colorable" },
            name: r.name,
            gauss_code: r.gauss_code,
            genus: Some(r.genus),
            colorable: Some(r.colorable),
            invariants: r.invariants,
            certificate: Some(r.certificate),
            error: None,
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    gauss_code: &'a str,
    status: &'a str,
    genus: Option<usize>,
    colorable: Option<bool>,
    sigma_xi: Option<i64>,
    det_xi: Option<String>,
    nullity_xi: Option<usize>,
    mu_xi: Option<i64>,
    sigma_dual: Option<i64>,
    det_dual: Option<String>,
    nullity_dual: Option<usize>,
    mu_dual: Option<i64>,
    certificate: Option<Certificate>,
    error: Option<&'a str>,
}

impl<'a> From<&'a BatchRecord> for CsvRow<'a> {
    fn from(r: &'a BatchRecord) -> Self {
        let a = r.invariants.first();
        let b = r.invariants.get(1);
        CsvRow {
            name: &r.name,
            gauss_code: &r.gauss_code,
            status: r.status,
            genus: r.genus,
            colorable: r.colorable,
            sigma_xi: a.map(|t| t.sigma),
            det_xi: a.map(|t| t.det.to_string()),
            nullity_xi: a.map(|t| t.nullity),
            mu_xi: a.map(|t| t.mu),
            sigma_dual: b.map(|t| t.sigma),
            det_dual: b.map(|t| t.det.to_string()),
            nullity_dual: b.map(|t| t.nullity),
            mu_dual: b.map(|t| t.mu),
            certificate: r.certificate,
            error: r.error.as_deref(),
        }
    }
}

fn batch_line(line: &str) -> BatchRecord {
    let Some((name, code)) = line.split_once('\t') else {
        return BatchRecord::failed(line.trim(), "", "expected name<TAB>gauss_code".into());
    };
    let (name, code) = (name.trim(), code.trim());
    let parsed: GaussCode = match code.parse() {
        Ok(c) => c,
        Err(e) => return BatchRecord::failed(name, code, e.to_string()),
    };
    match analyze(name, &parsed) {
        Ok(r) => BatchRecord::from_record(r),
        Err(e) => BatchRecord::failed(name, code, e.to_string()),
    }
}

fn cmd_batch(input: &Path, out: &Path) -> CmdResult {
    let text = fs::read_to_string(input).map_err(|e| (EXIT_INPUT, format!("{}: {e}", input.display())))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let records: Vec<BatchRecord> = lines.par_iter().map(|l| batch_line(l)).collect();
    let csv_out = out.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let body = if csv_out {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &records {
            w.serialize(CsvRow::from(r)).map_err(input_err)?;
        }
        w.into_inner().map_err(input_err)?
    } else {
        let mut s = serde_json::to_vec_pretty(&records).map_err(input_err)?;
        s.push(b'\n');
        s
    };
    fs::write(out, body).map_err(|e| (EXIT_INPUT, format!("{}: {e}", out.display())))?;
    let errors = records.iter().filter(|r| r.status == "error").count();
    eprintln!("{} records, {} errors", records.len(), errors);
    Ok(0)
}

fn matrix_json(m: &SymMatrix) -> String {
    let rows: Vec<String> = m
        .as_matrix()
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn surface_err(e: DiskBandError) -> (u8, String) {
    match e {
        DiskBandError::NotAllowable => (EXIT_NOT_ALLOWABLE, e.to_string()),
        other => input_err(other),
    }
}

fn cmd_surface(file: &Path, flags: [bool; 4]) -> CmdResult {
    let text = fs::read_to_string(file).map_err(|e| (EXIT_INPUT, format!("{}: {e}", file.display())))?;
    let surf: DiskBandSurface = text.parse().map_err(surface_err)?;
    let all = !flags.iter().any(|&f| f);
    let [gl, euler, invariants, kirby] = flags.map(|f| f || all);
    if gl {
        println!("gl: {}", matrix_json(&surf.gl_matrix()));
    }
    if euler {
        println!("euler: {}", surf.euler_number());
    }
    if invariants {
        let t = surf.surface_invariants().map_err(surface_err)?;
        println!("invariants: {}", show_triple(&t));
    }
    if kirby {
        let k = surf.kirby_diagram();
        println!("framings: {:?}", k.framings());
        match k.diagram() {
            Some(d) => println!("kirby: {d}"),
            None => println!("kirby: empty"),
        }
    }
    Ok(0)
}

fn cmd_realize(matrix: &str, out: &Path) -> CmdResult {
    let m: SymMatrix = matrix.parse().map_err(input_err)?;
    let surf = realize(&m).map_err(surface_err)?;
    fs::write(out, surf.to_string()).map_err(|e| (EXIT_INPUT, format!("{}: {e}", out.display())))?;
    println!(
        "wrote {} bands, {} boundary component(s) to {}",
        surf.n_bands(),
        surf.n_boundary_components(),
        out.display()
    );
    Ok(0)
}

fn cmd_slide(matrix: &str, i: usize, j: usize, sign: i64) -> CmdResult {
    let m: SymMatrix = matrix.parse().map_err(input_err)?;
    let link = FramedVirtualLink::from_matrix(&m).map_err(surface_err)?;
    let slid = link.handle_slide(i, j, sign).map_err(surface_err)?;
    let lm = slid.linking_matrix().map_err(surface_err)?;
    println!("{}", matrix_json(&lm));
    Ok(0)
}

fn harness(code: &GaussCode) -> Result<Vec<Report>, String> {
    let mut out = linkops::check_mirror_properties(code).map_err(|e| e.to_string())?;
    for c in 0..code.n_crossings() {
        if code.sign(c) > 0 {
            out.extend(linkops::check_crossing_change(code, c).map_err(|e| e.to_string())?);
        }
    }
    if code.n_components() > 1 {
        for i in 0..code.n_components() {
            out.extend(linkops::check_orientation_reversal(code, i).map_err(|e| e.to_string())?);
        }
    }
    out.push(linkops::check_duality_inequality(code).map_err(|e| e.to_string())?);
    out.extend(linkops::check_region_deletion(code).map_err(|e| e.to_string())?);
    Ok(out)
}

fn cmd_check(gauss: Option<&str>, file: Option<&Path>) -> CmdResult {
    let codes: Vec<(String, String)> = match (gauss, file) {
        (Some(g), _) => vec![(String::new(), g.to_string())],
        (None, Some(f)) => {
            let text = fs::read_to_string(f).map_err(|e| (EXIT_INPUT, format!("{}: {e}", f.display())))?;
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| match l.split_once('\t') {
                    Some((n, c)) => (n.trim().to_string(), c.trim().to_string()),
                    None => (String::new(), l.trim().to_string()),
                })
                .collect()
        }
        (None, None) => return Err(input_err("give --gauss or --file")),
    };
    let results: Vec<Result<Vec<Report>, String>> = codes
        .par_iter()
        .map(|(_, c)| c.parse::<GaussCode>().map_err(|e| e.to_string()).and_then(|code| harness(&code)))
        .collect();
    let mut failed = false;
    let mut input_error = false;
    for ((name, code), res) in codes.iter().zip(results) {
        match res {
            Ok(reports) => {
                for r in reports {
                    failed |= !r.pass;
                    println!("{r}");
                }
            }
            Err(e) => {
                input_error = true;
                eprintln!("glpair: {name} {code}: {e}");
            }
        }
    }
    Ok(if failed {
        EXIT_HARNESS_FAIL
    } else if input_error {
        EXIT_INPUT
    } else {
        0
    })
}
