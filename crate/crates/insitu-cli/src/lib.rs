//! Command dispatch for the `insitu` binary.
//!
//! Exit codes: 0 on success, 1 when `--strict` is set and the system is
//! inconsistent, 2 for argument, file, or parse errors.

pub mod io;

use clap::{Args, Parser, Subcommand, ValueEnum};
use insitu::{
    classify_col_method, classify_row_method, profile_col_solver, profile_row_solver,
    solve_col_lsq, solve_matrix_rhs, solve_row_minnorm, ComplexMatrix, ComplexVector,
    OnlineColOptions, OnlineColState, OnlineRowOptions, OnlineRowState, Orientation,
    SolveOptions, SolveResult,
};
use std::fs;
use std::io::BufRead;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "insitu",
    version,
    about = "Minimum-norm and least-squares solvers built on in-place orthonormalization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a linear system A x = b read from files
    Solve(SolveArgs),
    /// Solve A X = B for a block of right-hand sides with one factorization
    SolveMulti(MultiArgs),
    /// Consume rows (or columns) line by line and solve incrementally
    Stream(StreamArgs),
    /// Test the four Penrose conditions for the method's generalized inverse
    Penrose(PenroseArgs),
    /// Count operations over seeded random streams and fit the cost model
    Profile(ProfileArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Row orthonormalization: minimum-norm solution
    Row,
    /// Column orthonormalization: least-squares solution
    Col,
}

impl Mode {
    fn orientation(self) -> Orientation {
        match self {
            Mode::Row => Orientation::RowForm,
            Mode::Col => Orientation::ColumnForm,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Which side to orthonormalize
    #[arg(long, value_enum)]
    mode: Mode,
    /// Matrix file (Matrix Market or dense text)
    #[arg(long)]
    matrix: PathBuf,
    /// Right-hand side vector file
    #[arg(long)]
    rhs: PathBuf,
    /// Factorization tolerance (overrides INSITU_TOL and the default)
    #[arg(long)]
    tol: Option<f64>,
    /// Also print the generalized inverse G
    #[arg(long)]
    emit_g: bool,
    /// Also print the null-space projector P
    #[arg(long)]
    emit_p: bool,
    /// Write the solution to FILE as Matrix Market instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit 1 when the system is inconsistent
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct MultiArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    matrix: PathBuf,
    /// Right-hand side block B, one column per solve
    #[arg(long)]
    rhs: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    emit_g: bool,
    #[arg(long)]
    emit_p: bool,
    /// Write the solution block to FILE as Matrix Market
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StreamArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Input file; standard input when omitted. One vector per line,
    /// whitespace-separated entries in re+imi form; `#end` finalizes.
    /// Row mode reads augmented rows `a_1 .. a_n b`; column mode reads
    /// columns of A and takes b from --rhs.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Right-hand side file (column mode only, required there)
    #[arg(long)]
    rhs: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
    /// Print one line per push: increment and running solution norm
    #[arg(long)]
    watch: bool,
    /// Exit 1 when the stream is inconsistent
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct PenroseArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Defect threshold for a condition to count as holding
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct ProfileArgs {
    /// Stream length (rows fed in row mode)
    #[arg(long)]
    m: usize,
    /// Unknown count (row width in row mode)
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Mode::Row)]
    mode: Mode,
    /// Acquisition budget in operation units per step; reports the first
    /// step whose cost exceeds it
    #[arg(long)]
    tau: Option<f64>,
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::SolveMulti(a) => cmd_solve_multi(a),
        Cmd::Stream(a) => cmd_stream(a),
        Cmd::Penrose(a) => cmd_penrose(a),
        Cmd::Profile(a) => cmd_profile(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_matrix(path: &Path) -> Result<ComplexMatrix, String> {
    io::parse_matrix_auto(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_vector(path: &Path) -> Result<ComplexVector, String> {
    io::parse_vector_auto(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// `--tol` wins over `INSITU_TOL`, which wins over the built-in default.
fn effective_tol(flag: Option<f64>) -> Result<Option<f64>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("INSITU_TOL") {
        Ok(s) => {
            let v: f64 =
                s.trim().parse().map_err(|_| format!("INSITU_TOL is not a number: {s:?}"))?;
            Ok(Some(v))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("INSITU_TOL: {e}")),
    }
}

fn class_label(mode: Mode, rank: usize, shape: (usize, usize)) -> &'static str {
    match mode {
        Mode::Row => {
            if rank == shape.0 {
                "{1234}"
            } else {
                "{124}"
            }
        }
        Mode::Col => {
            if rank == shape.1 {
                "{1234}"
            } else {
                "{123}"
            }
        }
    }
}

fn print_vector_lines(v: &ComplexVector) {
    for k in 0..v.dim() {
        let z = v.get(k);
        println!("{} {}", z.re, z.im);
    }
}

fn print_matrix_section(label: &str, m: &ComplexMatrix) {
    println!("# {label} rows={} cols={}", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> =
            (0..m.cols()).map(|j| format!("{} {}", m.get(i, j).re, m.get(i, j).im)).collect();
        println!("{}", line.join(" "));
    }
}

fn print_solution(mode: Mode, shape: (usize, usize), sol: &SolveResult, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, io::write_vector_market(&sol.x_p))
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => print_vector_lines(&sol.x_p),
    }
    println!("# mode: {}", if mode == Mode::Row { "row" } else { "col" });
    println!("# rank: {}", sol.rank);
    println!("# residual: {:e}", sol.residual_norm);
    if let Some(d) = sol.b_projected_norm {
        println!("# b_distance: {:e}", d);
    }
    println!("# inconsistent: {}", sol.inconsistent);
    println!("# class: {}", class_label(mode, sol.rank, shape));
    println!("# tol: {:e}", sol.factor_tol);
    if let Some(g) = &sol.g {
        print_matrix_section("g", g);
    }
    if let Some(p) = &sol.p {
        print_matrix_section("p", p);
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<i32, String> {
    let a = load_matrix(&args.matrix)?;
    let b = load_vector(&args.rhs)?;
    let opts = SolveOptions {
        tol: effective_tol(args.tol)?,
        want_g: args.emit_g,
        want_p: args.emit_p,
        consistency_tol: None,
    };
    let sol = match args.mode {
        Mode::Row => solve_row_minnorm(&a, &b, &opts),
        Mode::Col => solve_col_lsq(&a, &b, &opts),
    }
    .map_err(|e| e.to_string())?;
    print_solution(args.mode, a.shape(), &sol, args.out.as_deref())?;
    Ok(if args.strict && sol.inconsistent { 1 } else { 0 })
}

fn cmd_solve_multi(args: MultiArgs) -> Result<i32, String> {
    let a = load_matrix(&args.matrix)?;
    let b = load_matrix(&args.rhs)?;
    let sol = solve_matrix_rhs(&a, &b, args.mode.orientation(), effective_tol(args.tol)?)
        .map_err(|e| e.to_string())?;
    match &args.out {
        Some(path) => fs::write(path, io::write_matrix_market(&sol.x_p))
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => print_matrix_section("x", &sol.x_p),
    }
    println!("# mode: {}", if args.mode == Mode::Row { "row" } else { "col" });
    println!("# rank: {}", sol.rank);
    println!("# rhs_columns: {}", b.cols());
    println!("# class: {}", class_label(args.mode, sol.rank, a.shape()));
    println!("# tol: {:e}", sol.factor_tol);
    if args.emit_g {
        print_matrix_section("g", &sol.g);
    }
    if args.emit_p {
        print_matrix_section("p", &sol.p);
    }
    Ok(0)
}

/// A stream line is data unless blank, `#end` (finalize), or a comment.
enum StreamLine {
    Data(Vec<insitu::ComplexScalar>),
    End,
    Skip,
}

fn classify_stream_line(line: &str, lineno: usize) -> Result<StreamLine, String> {
    let t = line.trim();
    if t == "#end" {
        return Ok(StreamLine::End);
    }
    if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
        return Ok(StreamLine::Skip);
    }
    let entries: Vec<insitu::ComplexScalar> = t
        .split_whitespace()
        .map(|tok| io::parse_complex_token(tok).map_err(|m| format!("line {lineno}: {m}")))
        .collect::<Result<_, _>>()?;
    Ok(StreamLine::Data(entries))
}

fn cmd_stream(args: StreamArgs) -> Result<i32, String> {
    let reader: Box<dyn BufRead> = match &args.input {
        Some(path) => Box::new(std::io::BufReader::new(
            fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?,
        )),
        None => Box::new(std::io::BufReader::new(std::io::stdin())),
    };
    let tol = effective_tol(args.tol)?;
    match args.mode {
        Mode::Row => stream_rows(reader, tol, &args),
        Mode::Col => stream_cols(reader, tol, &args),
    }
}

fn stream_rows(reader: Box<dyn BufRead>, tol: Option<f64>, args: &StreamArgs) -> Result<i32, String> {
    if args.rhs.is_some() {
        return Err("row streams carry b in the last entry of each line; --rhs is for column mode".into());
    }
    let mut state: Option<OnlineRowState> = None;
    for (k, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        let entries = match classify_stream_line(&line, k + 1)? {
            StreamLine::Data(e) => e,
            StreamLine::End => break,
            StreamLine::Skip => continue,
        };
        if entries.len() < 2 {
            return Err(format!("line {}: a row line needs at least one coefficient and b", k + 1));
        }
        let st = match &mut state {
            Some(st) => st,
            None => {
                let opts = OnlineRowOptions { tol, track_g: false, consistency_tol: None };
                state = Some(
                    OnlineRowState::new(entries.len() - 1, opts).map_err(|e| e.to_string())?,
                );
                state.as_mut().unwrap()
            }
        };
        let n = st.dim();
        if entries.len() != n + 1 {
            return Err(format!("line {}: expected {} entries, found {}", k + 1, n + 1, entries.len()));
        }
        let b_i = entries[n];
        let row = ComplexVector::new(entries[..n].to_vec()).map_err(|e| e.to_string())?;
        let report = st.push(&row, b_i).map_err(|e| e.to_string())?;
        if args.watch {
            println!(
                "step={} dependent={} inconsistent={} increment_norm={:e} running_norm={:e} ops={}",
                st.rows_seen(),
                report.was_dependent,
                report.inconsistent,
                report.increment.norm2(),
                st.norm_history().last().copied().unwrap_or(0.0),
                report.ops_used
            );
        }
    }
    let state = state.ok_or("stream contained no rows")?;
    let n = state.dim();
    let rows = state.rows_seen();
    let sol = state.finalize().map_err(|e| e.to_string())?;
    print_solution(Mode::Row, (rows, n), &sol, None)?;
    Ok(if args.strict && sol.inconsistent { 1 } else { 0 })
}

fn stream_cols(reader: Box<dyn BufRead>, tol: Option<f64>, args: &StreamArgs) -> Result<i32, String> {
    let rhs = args.rhs.as_ref().ok_or("column mode needs --rhs (b is used from the start)")?;
    let b = load_vector(rhs)?;
    let m = b.dim();
    let mut state = OnlineColState::new(&b, OnlineColOptions { tol, track_g: false })
        .map_err(|e| e.to_string())?;
    for (k, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        let entries = match classify_stream_line(&line, k + 1)? {
            StreamLine::Data(e) => e,
            StreamLine::End => break,
            StreamLine::Skip => continue,
        };
        if entries.len() != m {
            return Err(format!("line {}: expected {} entries, found {}", k + 1, m, entries.len()));
        }
        let col = ComplexVector::new(entries).map_err(|e| e.to_string())?;
        let report = state.push(&col).map_err(|e| e.to_string())?;
        if args.watch {
            println!(
                "step={} dependent={} increment_norm={:e} ops={}",
                state.cols_seen(),
                report.was_dependent,
                report.increment.norm2(),
                report.ops_used
            );
        }
    }
    let n = state.cols_seen();
    let sol = state.finalize().map_err(|e| e.to_string())?;
    print_solution(Mode::Col, (m, n), &sol, None)?;
    Ok(if args.strict && sol.inconsistent { 1 } else { 0 })
}

fn cmd_penrose(args: PenroseArgs) -> Result<i32, String> {
    let a = load_matrix(&args.matrix)?;
    let report = match args.mode {
        Mode::Row => classify_row_method(&a, args.tol),
        Mode::Col => classify_col_method(&a, args.tol),
    }
    .map_err(|e| e.to_string())?;
    for k in 0..4 {
        println!(
            "c{}: {} defect={:e}",
            k + 1,
            if report.holds[k] { "holds" } else { "fails" },
            report.defects[k]
        );
    }
    println!("class: {}", report.class_label);
    println!("# tol: {:e}", report.tol);
    Ok(0)
}

fn cmd_profile(args: ProfileArgs) -> Result<i32, String> {
    let report = match args.mode {
        Mode::Row => profile_row_solver(args.m, args.n, args.trials),
        Mode::Col => profile_col_solver(args.m, args.n, args.trials),
    }
    .map_err(|e| e.to_string())?;
    println!("mode: {}", if args.mode == Mode::Row { "row" } else { "col" });
    println!("m: {}", args.m);
    println!("n: {}", args.n);
    println!("trials: {}", report.trials);
    println!("steps: {}", report.steps);
    println!("total_ops: {}", report.total_ops);
    println!("per_step_slope: {:e}", report.per_step_fit.slope);
    println!("per_step_intercept: {:e}", report.per_step_fit.intercept);
    println!("lower_bound_ops: {}", report.lower_bound_ops);
    println!("upper_bound_ops: {}", report.upper_bound_ops);
    println!("model_consistent: {}", report.model_consistent);
    if let Some(tau) = args.tau {
        // per-step cost grows with each independent step; once it passes
        // the acquisition budget the solver no longer hides behind I/O
        println!("tau: {tau:e}");
        match report.per_step.iter().position(|&d| (d as f64) > tau) {
            Some(i) => println!("crossover_step: {}", i + 1),
            None => println!("crossover_step: none"),
        }
    }
    Ok(0)
}
