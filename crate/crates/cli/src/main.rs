//! `gpatlas`: classify weights, draw the region picture, regenerate the
//! contributing-eigenvalue table, evaluate Euler factors, run `q`-expansion
//! operators, and render family atlases.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 for arithmetic
//! failures (degenerate Euler factors, non-ordinary forms, table diffs).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use gpatlas::atlas::{render_atlas, AtlasError, FamilyDescriptor, FamilyRecord, Format};
use gpatlas::characters::{DirichletCharacter, WeightCharacter};
use gpatlas::euler::{
    euler_factor_f_closed_form, euler_factor_in_region, euler_factor_with_valuation, EulerError, EulerInput,
};
use gpatlas::figure;
use gpatlas::hecke_data::{GL2HeckeParams, GL2Record, GSp4HeckeParams, GSp4Record, HeckeError};
use gpatlas::on_dyn_series;
use gpatlas::panchishkin::{regenerate_table1, REFERENCE_K};
use gpatlas::qexp::{self, corpus, DynSeries, QExpError, SeriesRecord};
use gpatlas::ring::Rationals;
use gpatlas::weights_regions::{scan_bound, Region, Weights};

#[derive(Parser)]
#[command(name = "gpatlas", version, about = "Interpolation regions, Euler factors and q-expansions for GSp4 x GL2 x GL2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Region, signs and derived integers of a weight quadruple.
    Classify { k1: i64, k2: i64, c1: i64, c2: i64 },
    /// Draw the (c1, c2) plane for fixed (k1, k2).
    Figure {
        k1: i64,
        k2: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: PictureFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the contributing-eigenvalue table and compare with the printed one.
    Table1 {
        #[arg(long)]
        k1: Option<i64>,
        #[arg(long)]
        k2: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: DataFormat,
    },
    /// Evaluate the Euler factor at p for the data in a JSON file.
    Euler {
        #[arg(long)]
        input: PathBuf,
        /// `auto` or a region label; an explicit region uses its printed set.
        #[arg(long, default_value = "auto")]
        region: String,
        /// Reject parameters violating the Ramanujan bound.
        #[arg(long)]
        strict: bool,
    },
    /// Operators on serialized q-expansions.
    Qexp {
        #[command(subcommand)]
        op: QexpOp,
    },
    /// Signs, expected objects and reciprocity edges for a family.
    Atlas {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QexpOp {
    /// Zero the coefficients at multiples of p.
    Deplete {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply a_n by n^t.
    Theta {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ordinary p-stabilisation in Z/p^m.
    Stabilize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        precision: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Specialise a Lambda-adic series at weight k.
    Specialize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: i64,
        /// Exponent of the finite part on the generator of (Z/p)^x.
        #[arg(long, default_value_t = 0)]
        finite: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply T_l.
    Hecke {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the expansion of Delta.
    Delta {
        #[arg(long, default_value_t = 100)]
        terms: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PictureFormat {
    Text,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum DataFormat {
    Text,
    Json,
}

enum Failure {
    Validation(String),
    Arithmetic(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Arithmetic(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Arithmetic(m) => m,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

impl From<EulerError> for Failure {
    fn from(e: EulerError) -> Self {
        match e {
            EulerError::ZeroDenominator { .. } | EulerError::NotOrdinary(_) | EulerError::Field(_) => {
                Failure::Arithmetic(e.to_string())
            }
            EulerError::Hecke(h) => h.into(),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<HeckeError> for Failure {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::NotOrdinary(_) => Failure::Arithmetic(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<QExpError> for Failure {
    fn from(e: QExpError) -> Self {
        match e {
            QExpError::TruncationTooShort { .. }
            | QExpError::NotOrdinary(_)
            | QExpError::NotEigenform(_)
            | QExpError::PrecisionLoss { .. } => Failure::Arithmetic(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<AtlasError> for Failure {
    fn from(e: AtlasError) -> Self {
        match e {
            AtlasError::Panchishkin(_) => Failure::Arithmetic(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn classify(k1: i64, k2: i64, c1: i64, c2: i64) -> Result<(), Failure> {
    let w = Weights::new(k1, k2, c1, c2).map_err(invalid)?;
    let r = w.classify();
    let doc = json!({
        "weights": [k1, k2, c1, c2],
        "region": r,
        "sign": r.sign_infinity(),
        "signature": w.signature().0,
        "parabolic": r.parabolic(),
        "w": w.w(),
        "t": w.hodge_t(),
        "r": w.r(),
    });
    emit(&pretty(&doc), None)
}

fn table1(k1: Option<i64>, k2: Option<i64>, format: DataFormat) -> Result<(), Failure> {
    let (k1, k2) = match (k1, k2) {
        (Some(a), Some(b)) => (a, b),
        (None, None) => REFERENCE_K,
        _ => return Err(invalid("give both --k1 and --k2 or neither")),
    };
    if k2 < 2 || k1 < k2 {
        return Err(invalid(format!("need k1 >= k2 >= 2, got ({k1}, {k2})")));
    }
    let t = regenerate_table1(k1, k2);
    let text = match format {
        DataFormat::Json => pretty(&t),
        DataFormat::Text => {
            let mut s = format!("(k1, k2) = ({k1}, {k2})\n");
            s.push_str("region  weights            alpha/beta  printed     full (16)         P\n");
            for row in &t.rows {
                let rep = row.representative.map(|w| w.to_string()).unwrap_or_else(|| "(empty)".into());
                s.push_str(&format!(
                    "{:<7} {:<18} {:<11} {:<11} {:<17} {}\n",
                    row.region.label(),
                    rep,
                    row.alpha_beta.as_deref().unwrap_or("-"),
                    row.printed_alpha_beta,
                    row.full.as_deref().unwrap_or("-"),
                    row.parabolic.as_deref().unwrap_or(&row.printed_parabolic),
                ));
            }
            if t.diffs.is_empty() {
                s.push_str("no differences\n");
            }
            for d in &t.diffs {
                s.push_str(&format!("diff: {d}\n"));
            }
            s
        }
    };
    emit(&text, None)?;
    if t.diffs.is_empty() {
        Ok(())
    } else {
        Err(Failure::Arithmetic(format!("{} rows differ from the printed table", t.diffs.len())))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightsInput {
    List([i64; 4]),
    Named { k1: i64, k2: i64, c1: i64, c2: i64 },
}

#[derive(Deserialize)]
struct EulerFile {
    weights: WeightsInput,
    gsp4: GSp4Record,
    gl2_1: GL2Record,
    gl2_2: GL2Record,
}

fn euler(input: &Path, region: &str, strict: bool) -> Result<(), Failure> {
    let file: EulerFile = serde_json::from_str(&read(input)?).map_err(invalid)?;
    let [k1, k2, c1, c2] = match file.weights {
        WeightsInput::List(a) => a,
        WeightsInput::Named { k1, k2, c1, c2 } => [k1, k2, c1, c2],
    };
    let w = Weights::new(k1, k2, c1, c2).map_err(invalid)?;
    let p = file.gsp4.p;
    let gsp4 = GSp4HeckeParams::from_record(&file.gsp4)?;
    let g1 = GL2HeckeParams::from_record(&file.gl2_1, p)?;
    let g2 = GL2HeckeParams::from_record(&file.gl2_2, p)?;
    let data = EulerInput::new(w, gsp4, g1, g2)?;
    if strict {
        data.check_tempered()?;
    }
    let actual = w.classify();
    let (used, value) = if region == "auto" {
        (actual, euler_factor_with_valuation(&data, strict)?)
    } else {
        let r: Region = region.parse().map_err(invalid)?;
        (r, euler_factor_in_region(&data, r)?)
    };
    let mut doc = json!({
        "p": p,
        "weights": [k1, k2, c1, c2],
        "region_of_weights": actual,
        "region": used,
        "value": value.value,
        "valuation": value.valuation,
        "factors": value.factors,
    });
    if actual == Region::F && used == Region::F {
        let closed = euler_factor_f_closed_form(&data)?;
        doc["closed_form_agrees"] = json!(closed == value.value);
    }
    emit(&pretty(&doc), None)
}

fn load_series(path: &Path) -> Result<DynSeries, Failure> {
    let rec: SeriesRecord = serde_json::from_str(&read(path)?).map_err(invalid)?;
    Ok(DynSeries::from_record(&rec)?)
}

fn write_series(s: &DynSeries, out: Option<&Path>) -> Result<(), Failure> {
    emit(&pretty(&s.to_record()), out)
}

fn qexp_cmd(op: QexpOp) -> Result<(), Failure> {
    match op {
        QexpOp::Deplete { input, p, out } => {
            let s = load_series(&input)?;
            let r = on_dyn_series!(s, f => qexp::p_deplete(&f, p));
            write_series(&r, out.as_deref())
        }
        QexpOp::Theta { input, t, out } => {
            let s = load_series(&input)?;
            let r = on_dyn_series!(s, f => qexp::theta_power(&f, t));
            write_series(&r, out.as_deref())
        }
        QexpOp::Hecke { input, l, out } => {
            let s = load_series(&input)?;
            let r = on_dyn_series!(s, f => qexp::hecke_t(&f, l));
            write_series(&r, out.as_deref())
        }
        QexpOp::Stabilize { input, p, precision, out } => {
            let f = load_series(&input)?.into_residue(p, precision)?;
            let st = qexp::p_stabilize(&f, p)?;
            eprintln!("alpha = {} mod {p}^{precision}, beta = {}", st.alpha, st.beta);
            write_series(&DynSeries::Residue(st.form), out.as_deref())
        }
        QexpOp::Specialize { input, k, finite, out } => {
            let fam = match load_series(&input)? {
                DynSeries::Iwasawa(f) => f,
                _ => return Err(invalid("specialize needs a series over the Iwasawa ring")),
            };
            let p = fam.ring().base().p();
            let chi = if finite == 0 {
                DirichletCharacter::trivial(1)
            } else {
                DirichletCharacter::from_generator_exponent(p, 1, finite)
            }
            .map_err(invalid)?;
            let point = WeightCharacter::new(p, k, chi).map_err(invalid)?;
            let r = qexp::specialize(&fam, &point)?;
            write_series(&DynSeries::Residue(r), out.as_deref())
        }
        QexpOp::Delta { terms, out } => write_series(&DynSeries::Rational(corpus::delta(Rationals, terms)), out.as_deref()),
    }
}

fn load_family(path: &Path) -> Result<FamilyDescriptor, Failure> {
    let text = read(path)?;
    let rec: FamilyRecord = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(invalid)?
    } else {
        serde_json::from_str(&text).map_err(invalid)?
    };
    Ok(FamilyDescriptor::new(rec)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { k1, k2, c1, c2 } => classify(k1, k2, c1, c2),
        Command::Figure { k1, k2, format, out } => {
            Weights::new(k1, k2, 1, 1).or_else(|_| Weights::new(k1, k2, 1, 2)).map_err(invalid)?;
            let text = match format {
                PictureFormat::Svg => figure::svg(k1, k2),
                PictureFormat::Text => figure::ascii(k1, k2, scan_bound(k1, k2)),
            };
            emit(&text, out.as_deref())
        }
        Command::Table1 { k1, k2, format } => table1(k1, k2, format),
        Command::Euler { input, region, strict } => euler(&input, &region, strict),
        Command::Qexp { op } => qexp_cmd(op),
        Command::Atlas { input, format, out } => {
            let format: Format = format.parse().map_err(Failure::Validation)?;
            let fd = load_family(&input)?;
            emit(&render_atlas(&fd, format)?, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
