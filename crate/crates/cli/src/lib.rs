//! Argument parsing, dispatch and document rendering for the `arith-lfun`
//! binary. [`run`] is the whole program minus process exit, so tests can
//! drive it in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;

use arith_lfun::characters::{character, enumerate_characters, DirichletCharacter, Parity};
use arith_lfun::exactnum::{ComplexApprox, CyclotomicNumber};
use arith_lfun::lderiv::{log_derivative_ratio, rgenus_coeff};
use arith_lfun::lvalues::{l_value_nonpositive, lerch_nonpositive, DirichletCharacterRef, RootOfUnity};
use arith_lfun::reproductions::{
    bbk_derivation, bost_kuhn_shape, bracket, kry_derivation, CMTypeData, ColmezReport,
};
use arith_lfun::{hp, par, verify, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "arith-lfun", version, about = "Exact and numeric L-values, Lerch values and characteristic-class identities")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with_all = ["csv", "text"])]
    pub json: bool,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true, conflicts_with = "text")]
    pub csv: bool,
    /// Shorthand for `--format text`.
    #[arg(long, global = true)]
    pub text: bool,
    /// Working precision in bits for extended-precision numerics.
    #[arg(long, global = true, env = "ARITH_LFUN_PRECISION_BITS")]
    pub precision: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn output_format(&self) -> Format {
        match (self.json, self.csv, self.text) {
            (true, _, _) => Format::Json,
            (_, true, _) => Format::Csv,
            (_, _, true) => Format::Text,
            _ => self.format,
        }
    }
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[arg(long)]
    pub modulus: u64,
    /// Character index in enumeration order; all characters when omitted.
    #[arg(long = "char")]
    pub index: Option<usize>,
    #[arg(long)]
    pub l: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Dirichlet characters of a modulus.
    Characters {
        #[arg(long)]
        modulus: u64,
    },
    /// Exact `L(chi_prim, 1 - l)`.
    Lvalue(CharArgs),
    /// Exact `zeta_L(zeta_n^u, -k)`.
    Lerch {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        u: i64,
        #[arg(long)]
        k: usize,
    },
    /// `L'/L(chi_prim, 1 - l)` and the bracket `2 L'/L + H_{l-1}`.
    Logderiv(CharArgs),
    /// Coefficient of the R-genus at `zeta_n^u` in degree `k`.
    Rgenus {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        u: i64,
        #[arg(long)]
        k: u32,
    },
    /// Sweep an identity over a parameter grid.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Re-derive one of the worked examples.
    #[command(subcommand)]
    Reproduce(ReproduceCommand),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Finite Fourier identity for primitive characters.
    #[command(name = "lemma74", visible_alias = "fourier-identity")]
    FourierIdentity {
        #[arg(long, default_value_t = 24)]
        max_n: u64,
    },
    /// Logarithmic series against Lerch values.
    Maincomb {
        #[arg(long, default_value_t = 12)]
        max_n: u64,
        #[arg(long, default_value_t = 24)]
        order: usize,
    },
    /// `ch(Lambda_{-1} E) Td(E^dual) = c_top(E^dual)` on random roots.
    BorelSerre {
        /// Fixed rank; ranks 0..=4 cycle when omitted.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Equivariant Gauss–Bonnet simplification.
    GaussBonnet {
        /// Single order; 1..=6 when omitted.
        #[arg(long)]
        n: Option<u64>,
        /// Maximal rank of the normal bundle.
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        rank_z: usize,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// The kappa-class identity.
    Kappa {
        /// Single rank; 1..=3 when omitted.
        #[arg(long)]
        rank: Option<usize>,
        /// Single order; 1..=4 when omitted.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 3)]
        l: usize,
    },
    /// Alternating trace sum against `det(I - g)`.
    WoodsHole {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Entries lie in `Q(mu_n)`.
        #[arg(long, default_value_t = 8)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// R-genus Fourier identity.
    RgFourier {
        #[arg(long, default_value_t = 8)]
        max_n: u64,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReproduceCommand {
    /// Odd-character sum for an abelian CM type.
    Colmez {
        #[arg(long)]
        conductor: u64,
        /// One binary digit per unit mod the conductor, ascending.
        #[arg(long)]
        phi: String,
    },
    Kry,
    Bbk,
    BostKuhn {
        /// Set `c_1(omega) = 0`.
        #[arg(long)]
        omega_zero: bool,
    },
}

/// One row of `characters`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub modulus: u64,
    pub index: usize,
    pub conductor: u64,
    pub primitive: bool,
    pub parity: Parity,
    pub value_order: u64,
    /// `a -> k` with `chi(a) = zeta_m^k`, `m = value_order`.
    pub values: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table<T> {
    pub rows: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LValueDoc {
    pub character: DirichletCharacterRef,
    pub primitive: DirichletCharacterRef,
    pub l: u32,
    pub value: CyclotomicNumber,
    pub embedding: ComplexApprox,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LerchDoc {
    pub n: u64,
    pub u: i64,
    pub k: usize,
    pub value: CyclotomicNumber,
    pub embedding: ComplexApprox,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogDerivDoc {
    pub character: DirichletCharacterRef,
    pub primitive: DirichletCharacterRef,
    pub l: u32,
    pub ratio: ComplexApprox,
    pub bracket: ComplexApprox,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub error: ErrorBody,
}

/// Exit status and the document to emit.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("documents serialize")
}

fn usage(flag: &str, message: impl Into<String>) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        document: to_value(&ErrorDoc {
            error: ErrorBody { kind: "Usage".into(), message: message.into(), flag: Some(flag.into()) },
        }),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OrderMismatch(..) => "OrderMismatch",
        Error::DivisionByZero => "DivisionByZero",
        Error::NotCoprime(..) => "NotCoprime",
        Error::ModulusMismatch(..) => "ModulusMismatch",
        Error::PoleAtOne => "PoleAtOne",
        Error::DomainError(_) => "DomainError",
        Error::ParityMismatch { .. } => "ParityMismatch",
        Error::PrecisionFailure(_) => "PrecisionFailure",
        Error::NonInvertible(_) => "NonInvertible",
        Error::SymbolicMismatch(_) => "SymbolicMismatch",
        Error::Parse(_) => "Parse",
    }
}

/// Mathematical failures exit 2, bad inputs exit 1.
fn failure(e: Error) -> Outcome {
    let code = match e {
        Error::ParityMismatch { .. } | Error::PrecisionFailure(_) | Error::SymbolicMismatch(_) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    };
    Outcome {
        code,
        document: to_value(&ErrorDoc { error: ErrorBody { kind: error_kind(&e).into(), message: e.to_string(), flag: None } }),
    }
}

fn done<T: Serialize>(t: &T, ok: bool) -> Outcome {
    Outcome { code: if ok { EXIT_OK } else { EXIT_VERIFY }, document: to_value(t) }
}

fn characters_for(modulus: u64, index: Option<usize>) -> Result<Vec<DirichletCharacter>, Outcome> {
    if modulus == 0 {
        return Err(usage("--modulus", "modulus must be positive"));
    }
    match index {
        None => Ok(enumerate_characters(modulus)),
        Some(i) => character(modulus, i).map(|c| vec![c]).ok_or_else(|| {
            let count = enumerate_characters(modulus).len();
            usage("--char", format!("index {i} out of range: modulus {modulus} has {count} characters"))
        }),
    }
}

/// One document, or a table when several characters were requested.
fn per_character<T: Serialize + Send>(
    chars: &[DirichletCharacter],
    single: bool,
    f: impl Fn(&DirichletCharacter) -> arith_lfun::Result<T> + Sync + Send,
) -> Outcome {
    let results = par::map(chars, f);
    if single {
        return match results.into_iter().next().expect("one character") {
            Ok(t) => done(&t, true),
            Err(e) => failure(e),
        };
    }
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(t) => rows.push(t),
            Err(e) => return failure(e),
        }
    }
    done(&Table { rows }, true)
}

fn character_row(c: &DirichletCharacter) -> CharacterRow {
    CharacterRow {
        modulus: c.modulus(),
        index: c.index(),
        conductor: c.conductor(),
        primitive: c.is_primitive(),
        parity: c.parity(),
        value_order: c.value_order(),
        values: c.group().units().iter().map(|&a| (a, c.value_exp(a as i64).expect("unit"))).collect(),
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    if let Some(p) = cli.precision {
        if p < 64 {
            return usage("--precision", format!("precision must be at least 64 bits, got {p}"));
        }
        hp::set_precision_bits(p);
    }
    match &cli.command {
        Command::Characters { modulus } => match characters_for(*modulus, None) {
            Ok(cs) => done(&Table { rows: par::map(&cs, character_row) }, true),
            Err(o) => o,
        },
        Command::Lvalue(a) => {
            if a.l == 0 {
                return usage("--l", "l must be positive");
            }
            match characters_for(a.modulus, a.index) {
                Ok(cs) => per_character(&cs, a.index.is_some(), |c| {
                    let ex = l_value_nonpositive(c, a.l);
                    Ok(LValueDoc {
                        character: c.into(),
                        primitive: ex.character,
                        l: a.l,
                        embedding: ex.value.embed(1)?,
                        value: ex.value,
                    })
                }),
                Err(o) => o,
            }
        }
        Command::Lerch { n, u, k } => {
            if *n == 0 {
                return usage("--n", "n must be positive");
            }
            let z = RootOfUnity::new(*n, *u);
            let value = lerch_nonpositive(z, *k).to_minimal_order();
            match value.embed(1) {
                Ok(embedding) => done(&LerchDoc { n: *n, u: z.u, k: *k, value, embedding }, true),
                Err(e) => failure(e),
            }
        }
        Command::Logderiv(a) => {
            if a.l == 0 {
                return usage("--l", "l must be positive");
            }
            match characters_for(a.modulus, a.index) {
                Ok(cs) => per_character(&cs, a.index.is_some(), |c| {
                    Ok(LogDerivDoc {
                        character: c.into(),
                        primitive: (&c.primitive_part()).into(),
                        l: a.l,
                        ratio: log_derivative_ratio(c, a.l)?,
                        bracket: bracket(c, a.l)?,
                    })
                }),
                Err(o) => o,
            }
        }
        Command::Rgenus { n, u, k } => {
            if *n == 0 {
                return usage("--n", "n must be positive");
            }
            match rgenus_coeff(*n, *u, *k) {
                Ok(r) => done(&r, true),
                Err(e) => failure(e),
            }
        }
        Command::Verify(v) => run_verify(v),
        Command::Reproduce(r) => run_reproduce(r),
    }
}

fn run_verify(v: &VerifyCommand) -> Outcome {
    let report = match v {
        VerifyCommand::FourierIdentity { max_n } => verify::fourier_identity(*max_n),
        VerifyCommand::Maincomb { max_n, order } => verify::maincomb(*max_n, *order),
        VerifyCommand::BorelSerre { rank, degree, seed, samples } => {
            let ranks: Vec<usize> = rank.map_or_else(|| (0..=4).collect(), |r| vec![r]);
            let samples = samples.unwrap_or(if rank.is_some() { 20 } else { 100 });
            if samples == 0 {
                return usage("--samples", "samples must be positive");
            }
            verify::borel_serre(&ranks, *degree, samples, *seed)
        }
        VerifyCommand::GaussBonnet { n, rank, rank_z, degree } => {
            if *n == Some(0) {
                return usage("--n", "n must be positive");
            }
            let ns: Vec<u64> = n.map_or_else(|| (1..=6).collect(), |n| vec![n]);
            verify::gauss_bonnet(&ns, *rank, *rank_z, *degree)
        }
        VerifyCommand::Kappa { rank, n, l } => {
            if *n == Some(0) {
                return usage("--n", "n must be positive");
            }
            if *rank == Some(0) {
                return usage("--rank", "rank must be positive");
            }
            let ranks: Vec<usize> = rank.map_or_else(|| (1..=3).collect(), |r| vec![r]);
            let ns: Vec<u64> = n.map_or_else(|| (1..=4).collect(), |n| vec![n]);
            verify::kappa(&ranks, &ns, *l)
        }
        VerifyCommand::WoodsHole { samples, size, n, seed } => {
            if *size == 0 || *size > 6 {
                return usage("--size", "size must be between 1 and 6");
            }
            if *n == 0 {
                return usage("--n", "n must be positive");
            }
            verify::woods_hole(*samples, *size, *n, *seed)
        }
        VerifyCommand::RgFourier { max_n, k, tol } => verify::rg_fourier(*max_n, *k, *tol),
    };
    let ok = report.ok();
    done(&report, ok)
}

fn run_reproduce(r: &ReproduceCommand) -> Outcome {
    match r {
        ReproduceCommand::Colmez { conductor, phi } => {
            if *conductor < 3 {
                return usage("--conductor", "conductor must be at least 3 to have odd characters");
            }
            let cm = match CMTypeData::from_bits(*conductor, phi) {
                Ok(cm) => cm,
                Err(e) => return usage("--phi", e.to_string()),
            };
            match ColmezReport::compute(&cm) {
                Ok(rep) => {
                    let ok = rep.route_gap < 1e-10 && rep.value.imag.abs() < 1e-10;
                    done(&rep, ok)
                }
                Err(e) => failure(e),
            }
        }
        ReproduceCommand::Kry => match kry_derivation() {
            Ok(rep) => {
                let ok = rep.symbolic_ok;
                done(&rep, ok)
            }
            Err(e) => failure(e),
        },
        ReproduceCommand::Bbk => match bbk_derivation() {
            Ok(rep) => {
                let ok = rep.symbolic_ok && rep.factorization_residual.is_some_and(|r| r < 1e-9);
                done(&rep, ok)
            }
            Err(e) => failure(e),
        },
        ReproduceCommand::BostKuhn { omega_zero } => match bost_kuhn_shape(*omega_zero) {
            Ok(rep) => done(&rep, true),
            Err(e) => failure(e),
        },
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn render_csv(doc: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc.get("rows").and_then(Value::as_array) {
        Some(rows) if !rows.is_empty() => {
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|r| {
                    let mut f = Vec::new();
                    flatten("", r, &mut f);
                    f
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for f in &flat {
                for (k, _) in f {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            w.write_record(&header).expect("in-memory write");
            for f in &flat {
                let m: BTreeMap<&str, &str> = f.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
                w.write_record(header.iter().map(|h| m.get(h.as_str()).copied().unwrap_or(""))).expect("in-memory write");
            }
        }
        _ => {
            let mut f = Vec::new();
            flatten("", doc, &mut f);
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in f {
                w.write_record([k, v]).expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(doc).expect("json")),
        Format::Csv => render_csv(doc),
        Format::Text => {
            let mut f = Vec::new();
            flatten("", doc, &mut f);
            f.into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
        }
    }
}

/// Everything a process run produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name), dispatch and render.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let out = dispatch(&cli);
    let rendered = render(&out.document, cli.output_format());
    if out.code == EXIT_USAGE {
        RunOutput { code: out.code, stdout: String::new(), stderr: rendered }
    } else {
        RunOutput { code: out.code, stdout: rendered, stderr: String::new() }
    }
}
