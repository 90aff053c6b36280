//! Command-line front end for the workbench library.
//!
//! [`dispatch`] runs one command line in process and returns the exit code
//! with everything that would have been printed. Exit codes: 0 success,
//! 1 a "reject" or "false" answer, 2 usage or input errors.

pub mod parse;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;
use workbench::batcher::{batcher_sort, merge_schedule, sort_schedule, BatcherError};
use workbench::cellular::{ca_run, life_step, ww_ca_recognizer, Boundary, CaError};
use workbench::crypto::{
    bg_decrypt, bg_encrypt, extractor_experiment, gl_invert, gl_width, nextbit_hybrid, prg_stream, BlumKey,
    CryptoError, NoisyOracle,
};
use workbench::games::{
    halting_game, linear_chess, match_game, one_d_chess, solve_dfs, solve_retrograde, ChessPos, Game, GameError,
    MatchPos,
};
use workbench::kolmogorov::{bin, k_bounded, CensusTable, KError, C_LIT, MAX_LEN};
use workbench::machine::{
    bit_string, samples, tm_run, tm_step, tm_ww_recognizer, ww_decide, MachineError, RunLimits,
};
use workbench::numtheory::{gen_blum_prime, gen_prime_counted, is_prime_trial, miller_rabin, MrVerdict, NumError};
use workbench::randomized::{
    expected_comparisons, hc_heuristic, isolated_node_rate, philosophers_sim, quicksort_count, HcVerdict,
    RandomizedError, UGraph,
};
use workbench::rng::trial_rng;
use workbench::sumcheck::{protocol_field, soundness_rate, unpack, ArithGame, Arithmetized, Strategy, SumcheckError};
use workbench::tiling::{solve_backtrack, solve_narrow_dp, tiles_from_run, TilingError};
use workbench::utm::{encode_program, utm_run, Choice, UtmError, UtmRunner};

use parse::{GameRules, SyntaxError, TmFile};

pub const BANNER: &str = "# toy cryptography for teaching: small moduli, not secure";

/// Default position cap for the retrograde solver.
pub const DEFAULT_POSITIONS: usize = 2_000_000;
/// Default depth cap for depth-first game search.
pub const DEFAULT_DEPTH: usize = 10_000;
/// Default node budget for tiling backtracking.
pub const DEFAULT_TILING_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {err}")]
    Syntax { path: String, err: SyntaxError },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Utm(#[from] UtmError),
    #[error(transparent)]
    Ca(#[from] CaError),
    #[error(transparent)]
    Batcher(#[from] BatcherError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Sumcheck(#[from] SumcheckError),
    #[error(transparent)]
    Crypto(#[from] CryptoError),
    #[error(transparent)]
    Randomized(#[from] RandomizedError),
    #[error(transparent)]
    Kolmogorov(#[from] KError),
}

#[derive(Debug, Parser)]
#[command(name = "workbench", version, about = "Machines, games, reductions and randomized procedures at desk scale")]
struct Cli {
    /// One JSON object per output line.
    #[arg(long, global = true)]
    json: bool,
    /// Root seed; trial `i` uses ChaCha8 stream `i` of this seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Overrides search caps (positions, depth, tiling nodes).
    #[arg(long, global = true, env = "WORKBENCH_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run a binary Turing machine directly.
    RunTm(RunTm),
    /// Run a machine through the universal machine.
    RunUtm(RunUtm),
    /// Print the universal machine's tape for a program.
    EncodeUtm(EncodeUtm),
    /// Run a one-dimensional cellular automaton.
    RunCa(RunCa),
    /// Run Conway's Life on a grid file.
    Life(LifeCmd),
    /// Decide ww with the cellular automaton (or the Turing machine).
    WwCa(WwCa),
    /// Sort with Batcher's network or print its schedule.
    Batcher(BatcherCmd),
    /// Solve a game by retrograde analysis or depth-first search.
    SolveGame(SolveGame),
    /// Tiling instances and the machine-to-tiling reduction.
    #[command(subcommand)]
    Tiling(TilingCmd),
    /// Interactive proof demo: completeness and soundness rates.
    IpDemo(IpDemo),
    /// Primality testing and prime generation.
    #[command(subcommand)]
    Prime(PrimeCmd),
    /// Generate a Blum key.
    Keygen(Keygen),
    /// Blum-Goldwasser encryption.
    Encrypt(Encrypt),
    /// Blum-Goldwasser decryption.
    Decrypt(Decrypt),
    /// Bits from the squaring generator.
    Prg(Prg),
    /// Hard-core bit inversion from a noisy oracle.
    GlDemo(GlDemo),
    /// Toeplitz extractor distance from uniform.
    Extract(Extract),
    /// Hybrid argument on a generator and a test.
    Nextbit(Nextbit),
    /// Randomized Quick-Sort comparison counts.
    QsortBench(QsortBench),
    /// Isolated-node heuristic on random graphs.
    HcDemo(HcDemo),
    /// Randomized dining philosophers.
    Philosophers(Philosophers),
    /// Time-bounded Kolmogorov complexity.
    Kolmogorov(Kolmogorov),
}

/// Command name and the library module whose demo it runs.
pub const COMMANDS: &[(&str, &str)] = &[
    ("run-tm", "machine"),
    ("run-utm", "utm"),
    ("encode-utm", "utm"),
    ("run-ca", "cellular"),
    ("life", "cellular"),
    ("ww-ca", "cellular"),
    ("batcher", "batcher"),
    ("solve-game", "games"),
    ("tiling", "tiling"),
    ("ip-demo", "sumcheck"),
    ("prime", "numtheory"),
    ("keygen", "crypto"),
    ("encrypt", "crypto"),
    ("decrypt", "crypto"),
    ("prg", "crypto"),
    ("gl-demo", "crypto"),
    ("extract", "crypto"),
    ("nextbit", "crypto"),
    ("qsort-bench", "randomized"),
    ("hc-demo", "randomized"),
    ("philosophers", "randomized"),
    ("kolmogorov", "kolmogorov"),
];

/// A machine file, or `@name` for a built-in machine: `@flip`, `@ones`,
/// `@halt-left`, `@increment`, `@seek-zero`, `@ww`.
#[derive(Debug, Args)]
struct MachineArg {
    machine: String,
    /// Input bits; `-` is empty.
    #[arg(long, default_value = "-")]
    input: String,
}

#[derive(Debug, Args)]
struct RunTm {
    #[command(flatten)]
    m: MachineArg,
    #[arg(long, default_value_t = 10_000)]
    steps: u64,
    /// One line per step.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct RunUtm {
    #[command(flatten)]
    m: MachineArg,
    #[arg(long, default_value_t = 32)]
    cycles: u64,
    /// One line per cycle.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct EncodeUtm {
    #[command(flatten)]
    m: MachineArg,
}

#[derive(Debug, Args)]
struct RunCa {
    rules: PathBuf,
    #[arg(long)]
    row: String,
    #[arg(long, default_value_t = 8)]
    steps: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Edge {
    Torus,
    Dead,
}

#[derive(Debug, Args)]
struct LifeCmd {
    grid: PathBuf,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Edge::Torus)]
    boundary: Edge,
    /// Print every generation.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct WwCa {
    /// A word over {a, b}.
    word: String,
    /// Use the Turing machine recognizer instead.
    #[arg(long)]
    tm: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct BatcherMode {
    /// File of whitespace-separated integers, a power of two many.
    #[arg(long)]
    sort: Option<PathBuf>,
    /// Print the network for 2^k inputs, one layer per line.
    #[arg(long, value_name = "K")]
    emit_schedule: Option<u32>,
}

#[derive(Debug, Args)]
struct BatcherCmd {
    #[command(flatten)]
    mode: BatcherMode,
    /// With --emit-schedule, the merge network instead of the sorter.
    #[arg(long)]
    merge: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GameKind {
    Match,
    #[value(name = "1dchess")]
    OneD,
    Linchess,
    Halting,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolveMethod {
    Retro,
    Dfs,
}

#[derive(Debug, Args)]
struct SolveGame {
    #[arg(long, value_enum)]
    game: GameKind,
    /// Match Game boxes.
    #[arg(long, value_delimiter = ',', default_values_t = [3u8, 3, 3])]
    boxes: Vec<u8>,
    /// Chess game file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Halting Game machine (file or `@name`).
    #[arg(long)]
    tm: Option<String>,
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t = SolveMethod::Retro)]
    method: SolveMethod,
    /// Print `key -> value` for every reachable position.
    #[arg(long)]
    dump_values: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TilingMethod {
    Bt,
    Dp,
}

#[derive(Debug, Subcommand)]
enum TilingCmd {
    /// Decide whether a tile file's first row extends.
    Solve {
        tiles: PathBuf,
        /// Overrides the file's height.
        #[arg(long)]
        height: Option<usize>,
        #[arg(long, value_enum, default_value_t = TilingMethod::Bt)]
        method: TilingMethod,
    },
    /// Build the tile set for a machine, input and witness length.
    Reduce {
        /// Machine file or `@name`.
        #[arg(long)]
        tm: String,
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value_t = 1)]
        witness: usize,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: usize,
        #[arg(long, value_enum, default_value_t = TilingMethod::Bt)]
        method: TilingMethod,
        /// Print the tile file instead of solving it.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Debug, Args)]
struct IpDemo {
    #[arg(long, default_value_t = 4)]
    s: usize,
    #[arg(long, default_value_t = 3)]
    c: u32,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Starting position, as an s-bit number.
    #[arg(long, default_value_t = 5)]
    x: u32,
}

#[derive(Debug, Subcommand)]
enum PrimeCmd {
    /// Miller-Rabin with random bases; exits 1 on composite.
    Test {
        n: u64,
        #[arg(long, default_value_t = 20)]
        rounds: u32,
    },
    /// A random prime of exactly `bits` bits.
    Gen {
        #[arg(long)]
        bits: u32,
        /// Also require p = 3 mod 4.
        #[arg(long)]
        blum: bool,
    },
}

#[derive(Debug, Args)]
struct Keygen {
    #[arg(long, default_value_t = 32)]
    bits: u32,
    /// Only print the modulus.
    #[arg(long)]
    public: bool,
}

#[derive(Debug, Args)]
struct Encrypt {
    #[arg(long)]
    key: PathBuf,
    /// Message bits.
    #[arg(long)]
    message: String,
}

#[derive(Debug, Args)]
struct Decrypt {
    /// Private key file.
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    cipher: PathBuf,
}

#[derive(Debug, Args)]
struct Prg {
    /// Private key file; a fresh key of --bits bits otherwise.
    #[arg(long)]
    key: Option<PathBuf>,
    #[arg(long, default_value_t = 32)]
    bits: u32,
    #[arg(long, default_value_t = 64)]
    len: usize,
    #[arg(long)]
    x0: Option<u64>,
    /// Hard-core mask.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Debug, Args)]
struct GlDemo {
    #[arg(long, default_value_t = 12)]
    k: u32,
    #[arg(long, default_value_t = 0.2)]
    eps: f64,
    #[arg(long, default_value_t = 20)]
    trials: u64,
}

#[derive(Debug, Args)]
struct Extract {
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long, default_value_t = 6)]
    k: u32,
    #[arg(long, default_value_t = 2)]
    i: usize,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    draws: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NextbitGen {
    /// Coin flips whose last bit is the parity of the others.
    Parity,
    /// The squaring generator.
    Squaring,
}

#[derive(Debug, Args)]
struct Nextbit {
    #[arg(long, default_value_t = 2000)]
    trials: u64,
    #[arg(long, default_value_t = 8)]
    len: usize,
    #[arg(long, value_enum, default_value_t = NextbitGen::Parity)]
    gen: NextbitGen,
}

#[derive(Debug, Args)]
struct QsortBench {
    #[arg(long, default_value_t = 128)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

#[derive(Debug, Args)]
struct HcDemo {
    #[arg(long, default_value_t = 400)]
    n: usize,
    /// Mean degree; edges appear with probability d/n.
    #[arg(long, default_value_t = 2.0)]
    d: f64,
    #[arg(long, default_value_t = 200)]
    trials: u64,
}

#[derive(Debug, Args)]
struct Philosophers {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    max_rounds: u32,
    /// One line per round.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct KTarget {
    /// The string to describe.
    #[arg(long)]
    x: Option<String>,
    /// Instead, the rarity census of all strings of this length.
    #[arg(long, value_name = "N")]
    census: Option<usize>,
}

#[derive(Debug, Args)]
struct Kolmogorov {
    #[command(flatten)]
    target: KTarget,
    /// Condition bits.
    #[arg(long, default_value = "-")]
    cond: String,
    /// Longest program tried; defaults to |x| + 2.
    #[arg(long)]
    maxlen: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    tmax: u64,
}

/// Everything a command printed, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    json: bool,
    text: String,
}

impl Out {
    fn emit(&mut self, text: impl AsRef<str>, value: Value) {
        if self.json {
            self.text.push_str(&value.to_string());
        } else {
            self.text.push_str(text.as_ref());
        }
        self.text.push('\n');
    }

    fn banner(&mut self) {
        self.emit(BANNER, json!({ "banner": BANNER.trim_start_matches("# ") }));
    }

    /// Multi-line text; in JSON mode one object with the whole block.
    fn block(&mut self, key: &str, text: &str) {
        if self.json {
            self.text.push_str(&json!({ key: text }).to_string());
            self.text.push('\n');
        } else {
            self.text.push_str(text);
        }
    }
}

/// Runs one command line. `argv[0]` is the program name.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (msg, String::new()) } else { (String::new(), msg) };
            return Outcome { code, stdout, stderr };
        }
    };
    let mut out = Out { json: cli.json, text: String::new() };
    match run(&cli, &mut out) {
        Ok(ok) => Outcome { code: if ok { 0 } else { 1 }, stdout: out.text, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: out.text, stderr: format!("error: {e}\n") },
    }
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn syntax(path: &std::path::Path) -> impl Fn(SyntaxError) -> CliError + '_ {
    move |err| CliError::Syntax { path: path.display().to_string(), err }
}

fn input_bits(s: &str) -> Result<Vec<bool>, CliError> {
    parse::parse_bits(s).map_err(|i| CliError::Usage(format!("`{s}`: character {} is not a bit", i + 1)))
}

fn load_machine(name: &str) -> Result<TmFile, CliError> {
    let tm = match name {
        "@flip" => samples::flip_all(),
        "@ones" => samples::write_one_right(),
        "@halt-left" => samples::halt_left(),
        "@increment" => samples::increment(),
        "@seek-zero" => samples::seek_zero(),
        "@ww" => tm_ww_recognizer(),
        other if other.starts_with('@') => return Err(CliError::Usage(format!("no built-in machine `{other}`"))),
        path => {
            let path = std::path::Path::new(path);
            return parse::parse_tm(&read(path)?).map_err(syntax(path));
        }
    };
    let names = (0..tm.state_count()).map(|i| format!("q{i}")).collect();
    Ok(TmFile { tm, names })
}

fn run(cli: &Cli, out: &mut Out) -> Result<bool, CliError> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::RunTm(a) => run_tm(a, out),
        Cmd::RunUtm(a) => run_utm(a, out),
        Cmd::EncodeUtm(a) => {
            let m = load_machine(&a.m.machine)?;
            let prog = encode_program(&m.tm)?;
            let runner = UtmRunner::new(&prog, &input_bits(&a.m.input)?, Choice::A);
            let tape: String = runner.tape.symbols.iter().map(|s| s.to_char()).collect();
            let program: String = prog.tape().iter().map(|s| s.to_char()).collect();
            out.emit(&tape, json!({ "tape": tape, "program_len": program.len() }));
            Ok(true)
        }
        Cmd::RunCa(a) => {
            let ca = parse::parse_ca(&read(&a.rules)?).map_err(syntax(&a.rules))?;
            for (t, row) in ca_run(&ca, &a.row, a.steps)?.iter().enumerate() {
                out.emit(row, json!({ "step": t, "row": row }));
            }
            Ok(true)
        }
        Cmd::Life(a) => {
            let boundary = match a.boundary {
                Edge::Torus => Boundary::Torus,
                Edge::Dead => Boundary::DeadEdge,
            };
            let mut g = parse::parse_life(&read(&a.grid)?, boundary).map_err(syntax(&a.grid))?;
            for t in 1..=a.steps {
                g = life_step(&g);
                if a.trace && t < a.steps {
                    out.emit(format!("generation {t}: population {}", g.population()), json!({ "generation": t, "grid": g.to_string() }));
                    if !out.json {
                        out.block("grid", &g.to_string());
                    }
                }
            }
            out.emit(format!("generation {}: population {}", a.steps, g.population()), json!({ "generation": a.steps, "grid": g.to_string() }));
            if !out.json {
                out.block("grid", &g.to_string());
            }
            Ok(true)
        }
        Cmd::WwCa(a) => {
            let bad = || CliError::Usage(format!("`{}` is not a word over {{a, b}}", a.word));
            let (accept, cost, unit) = if a.tm {
                let v = ww_decide(&tm_ww_recognizer(), &a.word).ok_or_else(bad)?;
                (v.accept, v.steps, "steps")
            } else {
                let v = ww_ca_recognizer(&a.word).ok_or_else(bad)?;
                (v.accept, v.depth, "depth")
            };
            let word = if accept { "accept" } else { "reject" };
            out.emit(format!("{word} {unit}={cost}"), json!({ "accept": accept, unit: cost }));
            Ok(accept)
        }
        Cmd::Batcher(a) => batcher(a, out),
        Cmd::SolveGame(a) => solve_game(a, cli.budget, out),
        Cmd::Tiling(t) => tiling(t, cli.budget, out),
        Cmd::IpDemo(a) => ip_demo(a, seed, out),
        Cmd::Prime(p) => prime(p, seed, out),
        Cmd::Keygen(a) => {
            out.banner();
            let key = BlumKey::generate(a.bits, &mut trial_rng(seed, 0))?;
            let file = parse::KeyFile { n: key.n, p: (!a.public).then_some(key.p), q: (!a.public).then_some(key.q) };
            out.block("key", &parse::print_keys(&file));
            Ok(true)
        }
        Cmd::Encrypt(a) => {
            out.banner();
            let key = parse::parse_keys(&read(&a.key)?).map_err(syntax(&a.key))?;
            let c = bg_encrypt(&input_bits(&a.message)?, key.n, &mut trial_rng(seed, 0))?;
            out.block("ciphertext", &parse::print_ciphertext(&c));
            Ok(true)
        }
        Cmd::Decrypt(a) => {
            out.banner();
            let key = parse::parse_keys(&read(&a.key)?).map_err(syntax(&a.key))?;
            let key = key.private().ok_or_else(|| CliError::Usage("decryption needs p and q".into()))?;
            let c = parse::parse_ciphertext(&read(&a.cipher)?).map_err(syntax(&a.cipher))?;
            let m = bit_string(&bg_decrypt(&c, &key)?);
            out.emit(&m, json!({ "message": m }));
            Ok(true)
        }
        Cmd::Prg(a) => {
            out.banner();
            let mut rng = trial_rng(seed, 0);
            let key = match &a.key {
                Some(path) => parse::parse_keys(&read(path)?)
                    .map_err(syntax(path))?
                    .private()
                    .ok_or_else(|| CliError::Usage("the generator needs p and q".into()))?,
                None => BlumKey::generate(a.bits, &mut rng)?,
            };
            let x0 = a.x0.unwrap_or_else(|| rng.gen_range(1..key.n));
            let mask = a.p.unwrap_or_else(|| rng.gen_range(1..key.n));
            let s = bit_string(&prg_stream(x0, mask, &key, a.len)?);
            out.emit(&s, json!({ "n": key.n, "x0": x0, "p": mask, "bits": s }));
            Ok(true)
        }
        Cmd::GlDemo(a) => gl_demo(a, seed, out),
        Cmd::Extract(a) => {
            out.banner();
            if a.m > 16 || a.k as usize > a.m || a.i == 0 || a.i > a.m {
                return Err(CliError::Usage("need i, k <= m <= 16 and i >= 1".into()));
            }
            let r = extractor_experiment(a.m, a.k, a.i, a.n, a.draws, seed);
            out.emit(
                format!("mean L1 {:.6}  row L1 {:.6}  bound {:.6}", r.mean_l1, r.mean_row_l1, r.bound),
                json!({ "mean_l1": r.mean_l1, "mean_row_l1": r.mean_row_l1, "bound": r.bound }),
            );
            Ok(r.mean_l1 <= r.bound)
        }
        Cmd::Nextbit(a) => nextbit(a, seed, out),
        Cmd::QsortBench(a) => {
            let arr: Vec<usize> = (0..a.n).collect();
            let total: u64 = (0..a.trials).map(|t| quicksort_count(&arr, &mut trial_rng(seed, t)).1).sum();
            let mean = total as f64 / a.trials.max(1) as f64;
            let expected: f64 = expected_comparisons(a.n);
            let rel = if expected > 0.0 { (mean - expected).abs() / expected } else { 0.0 };
            out.emit(
                format!("n {}  trials {}  mean {mean:.3}  expected {expected:.3}  relative error {rel:.4}", a.n, a.trials),
                json!({ "n": a.n, "trials": a.trials, "mean": mean, "expected": expected, "relative_error": rel }),
            );
            Ok(true)
        }
        Cmd::HcDemo(a) => hc_demo(a, seed, out),
        Cmd::Philosophers(a) => {
            let run = philosophers_sim(a.n, a.max_rounds, &mut trial_rng(seed, 0))?;
            if a.trace {
                for (r, (st, eaters)) in run.rounds.iter().zip(&run.eaters).enumerate() {
                    out.emit(
                        format!("round {}: tried {} ate {:?} hungry {}", r + 1, st.tried, eaters, st.hungry),
                        json!({ "round": r + 1, "tried": st.tried, "ate": eaters, "hungry": st.hungry }),
                    );
                }
            }
            match run.all_ate_by {
                Some(r) => out.emit(format!("all {} ate by round {r}", a.n), json!({ "n": a.n, "all_ate_by": r })),
                None => out.emit(
                    format!("timeout after {} rounds", a.max_rounds),
                    json!({ "n": a.n, "all_ate_by": null, "rounds": a.max_rounds }),
                ),
            }
            Ok(run.all_ate_by.is_some())
        }
        Cmd::Kolmogorov(a) => kolmogorov(a, out),
    }
}

fn run_tm(a: &RunTm, out: &mut Out) -> Result<bool, CliError> {
    let m = load_machine(&a.m.machine)?;
    let input = input_bits(&a.m.input)?;
    if a.trace {
        let mut cfg = m.tm.initial(&input);
        for t in 0..=a.steps {
            let tape = bit_string(&cfg.cells);
            let state = &m.names[cfg.state];
            out.emit(
                format!("{t}: {state} head {} tape {tape}", cfg.head),
                json!({ "step": t, "state": state, "head": cfg.head, "tape": tape }),
            );
            if m.tm.is_halted(&cfg) || t == a.steps {
                break;
            }
            cfg = tm_step(&m.tm, &cfg)?;
        }
    }
    let r = tm_run(&m.tm, &input, RunLimits::steps(a.steps));
    let tape = bit_string(&r.tape.cells);
    let reason = r.reason.map(|h| format!("{h:?}"));
    out.emit(
        format!(
            "{} steps {} volume {} space {} tape {}",
            reason.as_deref().map_or("running".to_string(), |h| format!("halted ({h})")),
            r.meters.steps,
            r.meters.volume,
            r.meters.space,
            if tape.is_empty() { "-" } else { &tape },
        ),
        json!({
            "halted": r.halted, "reason": reason, "steps": r.meters.steps,
            "volume": r.meters.volume, "space": r.meters.space, "tape": tape,
        }),
    );
    Ok(true)
}

fn run_utm(a: &RunUtm, out: &mut Out) -> Result<bool, CliError> {
    let m = load_machine(&a.m.machine)?;
    let prog = encode_program(&m.tm)?;
    let r = utm_run(&prog, &input_bits(&a.m.input)?, a.cycles)?;
    if a.trace {
        for (i, s) in r.snapshots.iter().enumerate() {
            let tape = bit_string(&s.cells);
            out.emit(format!("cycle {i}: head {} tape {tape}", s.head), json!({ "cycle": i, "head": s.head, "tape": tape }));
        }
    }
    let halt = r.halt.map(|h| format!("{h:?}"));
    out.emit(
        format!("{} after {} cycles", halt.as_deref().map_or("running".to_string(), |h| format!("halted ({h})")), r.cycles),
        json!({ "halted": r.halt.is_some(), "reason": halt, "cycles": r.cycles }),
    );
    Ok(true)
}

fn batcher(a: &BatcherCmd, out: &mut Out) -> Result<bool, CliError> {
    if let Some(path) = &a.mode.sort {
        let text = read(path)?;
        let values = text
            .split_whitespace()
            .map(|w| w.parse::<i64>().map_err(|_| CliError::Usage(format!("{}: `{w}` is not an integer", path.display()))))
            .collect::<Result<Vec<_>, _>>()?;
        let (sorted, depth) = batcher_sort(&values)?;
        let line = sorted.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        out.emit(format!("{line}\ndepth {depth}"), json!({ "sorted": sorted, "depth": depth }));
        return Ok(true);
    }
    let k = a.mode.emit_schedule.expect("clap requires one mode");
    if k > 20 {
        return Err(CliError::Usage(format!("k = {k} is too large to print")));
    }
    let net = if a.merge { merge_schedule(k) } else { sort_schedule(k) };
    for (i, layer) in net.layers.iter().enumerate() {
        let text = layer.iter().map(|(lo, hi)| format!("{lo}:{hi}")).collect::<Vec<_>>().join(" ");
        out.emit(text, json!({ "layer": i, "pairs": layer }));
    }
    Ok(true)
}

fn solve<G: Game>(g: &G, start: G::Pos, a: &SolveGame, budget: Option<u64>, out: &mut Out) -> Result<i8, CliError> {
    let cap = budget.map_or(DEFAULT_POSITIONS, |b| b as usize);
    let depth = budget.map_or(DEFAULT_DEPTH, |b| b as usize);
    let table = match (a.method, a.dump_values) {
        (SolveMethod::Dfs, false) => None,
        _ => Some(solve_retrograde(g, std::slice::from_ref(&start), cap)?),
    };
    if let (true, Some(t)) = (a.dump_values, &table) {
        let mut rows: Vec<(i64, i8)> = t.values.iter().map(|(p, &v)| (g.key(p), v)).collect();
        rows.sort_unstable();
        for (k, v) in rows {
            out.emit(format!("{k} -> {v:+}"), json!({ "key": k, "value": v }));
        }
    }
    let value = match (a.method, &table) {
        (SolveMethod::Retro, Some(t)) => t.get(&start).expect("start is a seed"),
        _ => solve_dfs(g, &start, depth)?,
    };
    Ok(value)
}

fn solve_game(a: &SolveGame, budget: Option<u64>, out: &mut Out) -> Result<bool, CliError> {
    let need = |what: &str| CliError::Usage(format!("--game {:?} needs --{what}", a.game).to_lowercase());
    let (value, label) = match a.game {
        GameKind::Match => {
            let b: [u8; 3] =
                a.boxes.as_slice().try_into().map_err(|_| CliError::Usage("--boxes takes three counts".into()))?;
            let v = solve(&match_game(), MatchPos::new(b, 1), a, budget, out)?;
            (v, if v == 1 { "first player wins" } else { "second player wins" })
        }
        GameKind::OneD | GameKind::Linchess => {
            let path = a.file.as_ref().ok_or_else(|| need("file"))?;
            let f = parse::parse_game(&read(path)?).map_err(syntax(path))?;
            let g = match (&f.rules, a.game) {
                (GameRules::Linear(ts), GameKind::Linchess) => linear_chess(&f.types, ts)?,
                (GameRules::OneD(table), GameKind::OneD) => one_d_chess(&f.types, table.clone())?,
                _ => return Err(CliError::Usage(format!("{}: rules do not match --game", path.display()))),
            };
            let v = solve(&g, ChessPos::new(f.board, f.budget), a, budget, out)?;
            (v, if v == 1 { "W wins" } else { "S wins" })
        }
        GameKind::Halting => {
            let m = load_machine(a.tm.as_deref().ok_or_else(|| need("tm"))?)?;
            let g = halting_game(&m.tm, &input_bits(&a.input)?)?;
            let v = solve(&g, g.start(), a, budget, out)?;
            (v, if v == 1 { "L wins: halts in time" } else { "S wins: does not halt in time" })
        }
    };
    out.emit(format!("value {value:+} ({label})"), json!({ "value": value }));
    Ok(a.game != GameKind::Halting || value == 1)
}

fn tiling(t: &TilingCmd, budget: Option<u64>, out: &mut Out) -> Result<bool, CliError> {
    let (inst, method) = match t {
        TilingCmd::Solve { tiles, height, method } => {
            let mut inst = parse::parse_tiles(&read(tiles)?).map_err(syntax(tiles))?;
            if let Some(h) = height {
                inst.height = *h;
            }
            (inst, *method)
        }
        TilingCmd::Reduce { tm, input, witness, width, height, method, emit } => {
            let m = load_machine(tm)?;
            let v = input_bits(input)?;
            let width = width.unwrap_or(v.len() + witness);
            let inst = tiles_from_run(&m.tm, &v, *witness, width, *height)?;
            if *emit {
                out.block("tiles", &inst.to_string());
                return Ok(true);
            }
            out.emit(
                format!("{} tiles, width {}, height {}", inst.tiles.len(), inst.width(), inst.height),
                json!({ "tiles": inst.tiles.len(), "width": inst.width(), "height": inst.height }),
            );
            (inst, *method)
        }
    };
    let ok = match method {
        TilingMethod::Dp => solve_narrow_dp(&inst)?,
        TilingMethod::Bt => {
            let grid = solve_backtrack(&inst, budget.unwrap_or(DEFAULT_TILING_BUDGET))?;
            if let Some(rows) = &grid {
                for (i, row) in rows.iter().enumerate() {
                    let ids: Vec<usize> =
                        row.iter().map(|t| inst.tiles.iter().position(|u| u == t).unwrap_or(usize::MAX)).collect();
                    let text = ids.iter().map(|&i| if i == usize::MAX { "?".into() } else { i.to_string() });
                    out.emit(format!("row {i}: {}", text.collect::<Vec<_>>().join(" ")), json!({ "row": i, "tiles": ids }));
                }
            }
            grid.is_some()
        }
    };
    out.emit(if ok { "extendable" } else { "not extendable" }, json!({ "extendable": ok }));
    Ok(ok)
}

fn ip_demo(a: &IpDemo, seed: u64, out: &mut Out) -> Result<bool, CliError> {
    if a.s == 0 || a.s > 16 || a.x >= 1 << a.s {
        return Err(CliError::Usage(format!("need 1 <= s <= 16 and x < 2^s, got s = {}, x = {}", a.s, a.x)));
    }
    let field = protocol_field(a.s, &mut trial_rng(seed, u64::MAX))?;
    let p = field.p();
    let arith = Arithmetized::new(ArithGame::shift_register(a.s), field, a.c)?;
    let v = arith.value(a.c, &unpack(a.x, a.s));
    let honest = soundness_rate(&arith, a.x, a.c, v, Strategy::Honest, a.trials, seed)?;
    let cheat = soundness_rate(&arith, a.x, a.c, 1 - v, Strategy::BestResponse, a.trials, seed)?;
    out.emit(
        format!("field p = {p}, s = {}, c = {}, x = {}, rounds = {}", a.s, a.c, a.x, arith.rounds(a.c)),
        json!({ "p": p, "s": a.s, "c": a.c, "x": a.x, "rounds": arith.rounds(a.c) }),
    );
    out.emit(
        format!("true claim  V = {v}  honest         accepted {}/{}", honest.accepted, honest.trials),
        json!({ "claim": v, "strategy": "honest", "accepted": honest.accepted, "trials": honest.trials }),
    );
    out.emit(
        format!(
            "false claim V = {}  best-response  accepted {}/{}  rate {:.5}  bound {:.5}  sigma {:.5}",
            1 - v,
            cheat.accepted,
            cheat.trials,
            cheat.rate,
            cheat.bound,
            cheat.sigma
        ),
        json!({
            "claim": 1 - v, "strategy": "best-response", "accepted": cheat.accepted,
            "trials": cheat.trials, "rate": cheat.rate, "bound": cheat.bound, "sigma": cheat.sigma,
        }),
    );
    if let Some(w) = &cheat.warning {
        out.emit(format!("warning: {w}"), json!({ "warning": w }));
    }
    Ok(true)
}

fn prime(p: &PrimeCmd, seed: u64, out: &mut Out) -> Result<bool, CliError> {
    let mut rng = trial_rng(seed, 0);
    match *p {
        PrimeCmd::Test { n, rounds } => {
            let report = |out: &mut Out, prime: bool, detail: String| {
                let word = if prime { "probable prime" } else { "composite" };
                out.emit(format!("{n}: {word} ({detail})"), json!({ "n": n, "prime": prime, "detail": detail }));
                prime
            };
            if n < 5 || n % 2 == 0 {
                let prime = is_prime_trial(n);
                let detail = if n % 2 == 0 && n > 2 { "Factor(2)".to_string() } else { "small".to_string() };
                return Ok(report(out, prime, detail));
            }
            for _ in 0..rounds.max(1) {
                let x = rng.gen_range(2..=n - 2);
                match miller_rabin(x, n, n - 1)? {
                    MrVerdict::NoInfo => {}
                    v => return Ok(report(out, false, format!("base {x}: {v:?}"))),
                }
            }
            Ok(report(out, true, format!("{rounds} rounds")))
        }
        PrimeCmd::Gen { bits, blum } => {
            let (q, tries) = if blum { (gen_blum_prime(bits, &mut rng)?, None) } else {
                let (q, t) = gen_prime_counted(bits, &mut rng)?;
                (q, Some(t))
            };
            let text = match tries {
                Some(t) => format!("{q} ({t} candidates)"),
                None => q.to_string(),
            };
            out.emit(text, json!({ "prime": q, "bits": bits, "candidates": tries }));
            Ok(true)
        }
    }
}

fn gl_demo(a: &GlDemo, seed: u64, out: &mut Out) -> Result<bool, CliError> {
    out.banner();
    if !(1..=20).contains(&a.k) || !(a.eps > 0.0 && a.eps <= 1.0) {
        return Err(CliError::Usage("need 1 <= k <= 20 and 0 < eps <= 1".into()));
    }
    let mut hits = 0;
    for t in 0..a.trials {
        let mut rng = trial_rng(seed, t);
        let x = rng.gen_range(0..1u64 << a.k);
        let oracle = NoisyOracle { x, eps: a.eps, seed: rng.gen() };
        if gl_invert(&oracle, a.k, a.eps, &mut rng).contains(&x) {
            hits += 1;
        }
    }
    let j = gl_width(a.k, a.eps);
    out.emit(
        format!("k {} eps {} : planted x among 2^{j} candidates in {hits}/{} trials", a.k, a.eps, a.trials),
        json!({ "k": a.k, "eps": a.eps, "width": j, "recovered": hits, "trials": a.trials }),
    );
    Ok(true)
}

fn nextbit(a: &Nextbit, seed: u64, out: &mut Out) -> Result<bool, CliError> {
    out.banner();
    if a.len < 2 || a.len > 64 {
        return Err(CliError::Usage("need 2 <= len <= 64".into()));
    }
    let len = a.len;
    let parity = |s: &[bool]| s.iter().filter(|&&b| b).count() % 2 == 0;
    let r = match a.gen {
        NextbitGen::Parity => nextbit_hybrid(
            |rng| {
                let mut s: Vec<bool> = (0..len - 1).map(|_| rng.gen()).collect();
                s.push(s.iter().fold(false, |acc, &b| acc ^ b));
                s
            },
            parity,
            len,
            a.trials,
            seed,
        ),
        NextbitGen::Squaring => {
            let key = BlumKey::generate(32, &mut trial_rng(seed, u64::MAX))?;
            nextbit_hybrid(
                |rng| {
                    let x0 = rng.gen_range(1..key.n);
                    prg_stream(x0, 0x5555_5555, &key, len).expect("seed below n")
                },
                parity,
                len,
                a.trials,
                seed,
            )
        }
    };
    for (i, p) in r.p.iter().enumerate() {
        out.emit(format!("p_{i} {p:.4}"), json!({ "i": i, "p": p }));
    }
    out.emit(
        format!("largest gap {:.4} at bit {}; predictor correlation {:.4}", r.gap, r.position, r.correlation),
        json!({ "position": r.position, "gap": r.gap, "correlation": r.correlation }),
    );
    Ok(true)
}

fn hc_demo(a: &HcDemo, seed: u64, out: &mut Out) -> Result<bool, CliError> {
    if a.n < 3 || !(a.d >= 0.0 && a.d <= a.n as f64) {
        return Err(CliError::Usage("need n >= 3 and 0 <= d <= n".into()));
    }
    let p = a.d / a.n as f64;
    let (mut flagged, mut unsound) = (0u64, 0u64);
    for t in 0..a.trials {
        let g = UGraph::gnp(a.n, p, &mut trial_rng(seed, t));
        if hc_heuristic(&g) == HcVerdict::NoHamiltonianCycle {
            flagged += 1;
            if a.n <= 12 && g.has_hamiltonian_cycle() {
                unsound += 1;
            }
        }
    }
    let rate = flagged as f64 / a.trials.max(1) as f64;
    let model = isolated_node_rate(a.n, p);
    out.emit(
        format!("n {} d {} : no-HC answers {flagged}/{} = {rate:.4}, independent-node model {model:.4}", a.n, a.d, a.trials),
        json!({ "n": a.n, "d": a.d, "flagged": flagged, "trials": a.trials, "rate": rate, "model": model }),
    );
    if a.n <= 12 {
        out.emit(format!("brute-force check: {unsound} wrong answers"), json!({ "unsound": unsound }));
    }
    Ok(unsound == 0)
}

fn kolmogorov(a: &Kolmogorov, out: &mut Out) -> Result<bool, CliError> {
    if let Some(n) = a.target.census {
        let t = CensusTable::build(n, a.tmax)?;
        for i in -(C_LIT as i64)..=n as i64 {
            let count = t.count(i);
            let bound = 2f64.powi(n as i32 - i as i32);
            out.emit(format!("d > {i}: {count} strings (bound {bound})"), json!({ "n": n, "i": i, "count": count, "bound": bound }));
        }
        return Ok(true);
    }
    let x = input_bits(a.target.x.as_deref().expect("clap requires one target"))?;
    let y = input_bits(&a.cond)?;
    let max_len = a.maxlen.unwrap_or((x.len() + C_LIT).min(MAX_LEN));
    let k = k_bounded(&x, &y, max_len, a.tmax)?;
    let xs = bit_string(&x);
    match k {
        Some(k) => out.emit(format!("K({xs}|{}) = {k}", bit_string(&y)), json!({ "x": xs, "cond": bit_string(&y), "k": k })),
        None => out.emit(
            format!("no program of at most {max_len} bits prints {xs}"),
            json!({ "x": xs, "cond": bit_string(&y), "k": null, "maxlen": max_len }),
        ),
    }
    if y.is_empty() && x.len() <= workbench::kolmogorov::RARITY_MAX_N {
        let kn = k_bounded(&x, &bin(x.len() as u64), x.len() + C_LIT, a.tmax)?.expect("LITERAL always fits");
        let d = x.len() as i64 - kn as i64;
        out.emit(format!("rarity d = n - K(x|n) = {d}"), json!({ "rarity": d }));
    }
    Ok(k.is_some())
}
