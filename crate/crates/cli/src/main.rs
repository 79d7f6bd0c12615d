//! Command-line interface: key generation, live identification sessions
//! over TCP or stdio, signing, signature verification, and algebra
//! inspection.
//!
//! Exit codes: 0 = accept/success, 1 = reject, 2 = usage or I/O error.
//! The environment variable `CSAZKP_SEED` overrides rng seeding (including
//! an explicit `--seed`) for reproducible runs.

use clap::{Parser, Subcommand};
use csazkp::construction::{KeyPair, PublicKey, SecretKey, Variant};
use csazkp::session::{
    run_prover_session, run_verifier_session, SessionConfig, SessionOutcome, DEFAULT_FRAME_TIMEOUT,
};
use csazkp::{
    decode_algebra, decode_element, decode_public_key, decode_secret_key, decode_signature,
    encode_element, encode_public_key, encode_secret_key, encode_signature, keygen, sign,
    verify_signature, AlgElement, DecodeError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::io::{self, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

const PUBLIC_FILE: &str = "public.cskey";
const SECRET_FILE: &str = "secret.cskey";
const DEFAULT_HEIGHT: u32 = 3;

#[derive(Parser)]
#[command(
    name = "csazkp",
    version,
    about = "Identification and signatures from structure-constant algebra isomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair into a directory (public.cskey + secret.cskey).
    Keygen {
        /// Instance construction: matrix, division, or order.
        #[arg(long)]
        variant: String,
        /// Size parameter; the algebras have dimension k^2.
        #[arg(long)]
        k: u32,
        /// Entry bound for random basis changes.
        #[arg(long)]
        height: u32,
        /// Seed for deterministic generation (CSAZKP_SEED takes precedence).
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for the key files.
        #[arg(long)]
        out: PathBuf,
        /// Entry bound for the order variant's secret basis change.
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
    /// Run the one-bit identification protocol as the prover.
    Prove {
        /// Key directory holding public.cskey and secret.cskey.
        #[arg(long)]
        key: PathBuf,
        /// Number of one-bit rounds.
        #[arg(long)]
        rounds: u32,
        /// Connect to a listening verifier at HOST:PORT.
        #[arg(long, conflicts_with = "stdio")]
        connect: Option<String>,
        /// Speak the wire protocol on stdin/stdout instead of TCP.
        #[arg(long)]
        stdio: bool,
        /// Entry bound for commitment sampling.
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u32,
    },
    /// Run the one-bit identification protocol as the verifier.
    Verify {
        /// Key directory (or file) holding public.cskey.
        #[arg(long)]
        public: PathBuf,
        /// Number of one-bit rounds.
        #[arg(long)]
        rounds: u32,
        /// Listen on HOST:PORT and serve one session.
        #[arg(long, conflicts_with = "stdio")]
        listen: Option<String>,
        /// Speak the wire protocol on stdin/stdout instead of TCP.
        #[arg(long)]
        stdio: bool,
        /// Entry bound for challenge sampling.
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u32,
    },
    /// Sign a message file with the long-challenge protocol made
    /// non-interactive.
    Sign {
        /// Key directory holding public.cskey and secret.cskey.
        #[arg(long)]
        key: PathBuf,
        /// File whose bytes are signed.
        #[arg(long)]
        message: PathBuf,
        /// Output signature file.
        #[arg(long)]
        out: PathBuf,
        /// Entry bound for commitment sampling.
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u32,
    },
    /// Verify a signature file against a message and a public key.
    VerifySig {
        /// Key directory (or file) holding public.cskey.
        #[arg(long)]
        public: PathBuf,
        /// File whose bytes were signed.
        #[arg(long)]
        message: PathBuf,
        /// Signature file to check.
        #[arg(long)]
        sig: PathBuf,
    },
    /// Print structural facts about an algebra file: dimension, identity,
    /// associativity status, and minimal polynomials.
    Inspect {
        /// File holding a canonical algebra document.
        #[arg(long)]
        algebra: PathBuf,
        /// Element (inline canonical document or a path to one) whose
        /// minimal polynomial to print.
        #[arg(long)]
        minpoly: Option<String>,
    },
}

/// Errors that end the process with exit code 2.
struct FatalError(String);

impl From<io::Error> for FatalError {
    fn from(err: io::Error) -> Self {
        FatalError(err.to_string())
    }
}

impl From<String> for FatalError {
    fn from(err: String) -> Self {
        FatalError(err)
    }
}

impl From<csazkp::KeygenError> for FatalError {
    fn from(err: csazkp::KeygenError) -> Self {
        FatalError(err.to_string())
    }
}

impl From<csazkp::SignatureError> for FatalError {
    fn from(err: csazkp::SignatureError) -> Self {
        FatalError(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(FatalError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, FatalError> {
    match command {
        Command::Keygen {
            variant,
            k,
            height,
            seed,
            out,
            bound,
        } => run_keygen(&variant, k, height, seed, &out, bound),
        Command::Prove {
            key,
            rounds,
            connect,
            stdio,
            height,
        } => run_prove(&key, rounds, connect.as_deref(), stdio, height),
        Command::Verify {
            public,
            rounds,
            listen,
            stdio,
            height,
        } => run_verify(&public, rounds, listen.as_deref(), stdio, height),
        Command::Sign {
            key,
            message,
            out,
            height,
        } => run_sign(&key, &message, &out, height),
        Command::VerifySig {
            public,
            message,
            sig,
        } => run_verify_sig(&public, &message, &sig),
        Command::Inspect { algebra, minpoly } => run_inspect(&algebra, minpoly.as_deref()),
    }
}

// ---------------------------------------------------------------------------
// Seeding and key I/O.

fn make_rng(explicit_seed: Option<u64>) -> Result<ChaCha20Rng, FatalError> {
    if let Ok(text) = std::env::var("CSAZKP_SEED") {
        let seed: u64 = text.parse().map_err(|_| {
            FatalError(format!(
                "CSAZKP_SEED must be an unsigned integer, got {text:?}"
            ))
        })?;
        if explicit_seed.is_some() {
            eprintln!("note: CSAZKP_SEED overrides --seed");
        }
        return Ok(ChaCha20Rng::seed_from_u64(seed));
    }
    Ok(match explicit_seed {
        Some(seed) => ChaCha20Rng::seed_from_u64(seed),
        None => ChaCha20Rng::from_entropy(),
    })
}

/// Accepts either the key directory or a direct path to the key file.
fn key_file(path: &Path, name: &str) -> PathBuf {
    if path.is_dir() {
        path.join(name)
    } else {
        path.to_path_buf()
    }
}

fn read_file(path: &Path) -> Result<String, FatalError> {
    std::fs::read_to_string(path).map_err(|e| FatalError(format!("{}: {e}", path.display())))
}

fn load_public(path: &Path) -> Result<PublicKey, FatalError> {
    let file = key_file(path, PUBLIC_FILE);
    decode_public_key(&read_file(&file)?)
        .map_err(|e| FatalError(format!("{}: {e}", file.display())))
}

fn load_secret(path: &Path) -> Result<SecretKey, FatalError> {
    let file = key_file(path, SECRET_FILE);
    decode_secret_key(&read_file(&file)?)
        .map_err(|e| FatalError(format!("{}: {e}", file.display())))
}

fn load_pair(dir: &Path) -> Result<KeyPair, FatalError> {
    let pair = KeyPair {
        public: load_public(dir)?,
        secret: load_secret(dir)?,
    };
    pair.validate()
        .map_err(|e| FatalError(format!("key pair in {}: {e}", dir.display())))?;
    Ok(pair)
}

// ---------------------------------------------------------------------------
// Subcommands.

fn run_keygen(
    variant: &str,
    k: u32,
    height: u32,
    seed: Option<u64>,
    out: &Path,
    bound: u64,
) -> Result<ExitCode, FatalError> {
    let variant = Variant::from_str(variant)?;
    let mut rng = make_rng(seed)?;
    let pair = keygen(variant, k, height, bound, &mut rng)?;
    std::fs::create_dir_all(out).map_err(|e| FatalError(format!("{}: {e}", out.display())))?;
    let public_path = out.join(PUBLIC_FILE);
    let secret_path = out.join(SECRET_FILE);
    std::fs::write(&public_path, encode_public_key(&pair.public))
        .map_err(|e| FatalError(format!("{}: {e}", public_path.display())))?;
    std::fs::write(&secret_path, encode_secret_key(&pair.secret))
        .map_err(|e| FatalError(format!("{}: {e}", secret_path.display())))?;
    println!(
        "generated {} key pair: k = {}, algebra dimension = {}, wrote {} and {}",
        variant,
        k,
        pair.public.a0.dim(),
        public_path.display(),
        secret_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

/// Streams the wire protocol over this process's stdin/stdout.
struct StdioTransport {
    input: io::StdinLock<'static>,
    output: io::StdoutLock<'static>,
}

impl StdioTransport {
    fn new() -> Self {
        StdioTransport {
            input: io::stdin().lock(),
            output: io::stdout().lock(),
        }
    }
}

impl Read for StdioTransport {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        self.input.read(buf)
    }
}

impl Write for StdioTransport {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.output.write(buf)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.output.flush()
    }
}

fn configure_stream(stream: &TcpStream) -> Result<(), FatalError> {
    stream.set_read_timeout(Some(DEFAULT_FRAME_TIMEOUT))?;
    stream.set_write_timeout(Some(DEFAULT_FRAME_TIMEOUT))?;
    stream.set_nodelay(true)?;
    Ok(())
}

/// Reports a finished session on stderr (safe in stdio mode) and maps it to
/// an exit code.
fn session_exit(role: &str, outcome: &SessionOutcome) -> ExitCode {
    match (&outcome.failure, outcome.accepted) {
        (Some(failure), _) => {
            eprintln!("{role}: session aborted: {failure}");
            ExitCode::from(1)
        }
        (None, true) => {
            eprintln!("{role}: verdict accept");
            ExitCode::SUCCESS
        }
        (None, false) => {
            eprintln!("{role}: verdict reject");
            ExitCode::from(1)
        }
    }
}

fn run_prove(
    key: &Path,
    rounds: u32,
    connect: Option<&str>,
    stdio: bool,
    height: u32,
) -> Result<ExitCode, FatalError> {
    let pair = load_pair(key)?;
    let config = SessionConfig::one_bit(rounds, height);
    let mut rng = make_rng(None)?;
    let outcome = match (connect, stdio) {
        (Some(addr), false) => {
            let mut stream =
                TcpStream::connect(addr).map_err(|e| FatalError(format!("connect {addr}: {e}")))?;
            configure_stream(&stream)?;
            run_prover_session(&pair, &config, &mut stream, &mut rng)
        }
        (None, true) => {
            let mut transport = StdioTransport::new();
            run_prover_session(&pair, &config, &mut transport, &mut rng)
        }
        _ => {
            return Err(FatalError(
                "exactly one of --connect and --stdio is required".into(),
            ))
        }
    };
    Ok(session_exit("prover", &outcome))
}

fn run_verify(
    public: &Path,
    rounds: u32,
    listen: Option<&str>,
    stdio: bool,
    height: u32,
) -> Result<ExitCode, FatalError> {
    let pk = load_public(public)?;
    let config = SessionConfig::one_bit(rounds, height);
    let mut rng = make_rng(None)?;
    let outcome = match (listen, stdio) {
        (Some(addr), false) => {
            let listener =
                TcpListener::bind(addr).map_err(|e| FatalError(format!("listen {addr}: {e}")))?;
            let local = listener.local_addr()?;
            println!("listening on {local}");
            io::stdout().flush()?;
            let (mut stream, peer) = listener.accept()?;
            eprintln!("verifier: session from {peer}");
            configure_stream(&stream)?;
            run_verifier_session(&pk, &config, &mut stream, &mut rng)
        }
        (None, true) => {
            let mut transport = StdioTransport::new();
            run_verifier_session(&pk, &config, &mut transport, &mut rng)
        }
        _ => {
            return Err(FatalError(
                "exactly one of --listen and --stdio is required".into(),
            ))
        }
    };
    Ok(session_exit("verifier", &outcome))
}

fn run_sign(key: &Path, message: &Path, out: &Path, height: u32) -> Result<ExitCode, FatalError> {
    let pair = load_pair(key)?;
    let bytes =
        std::fs::read(message).map_err(|e| FatalError(format!("{}: {e}", message.display())))?;
    let mut rng = make_rng(None)?;
    let signature = sign(&pair, &bytes, height, &mut rng)?;
    std::fs::write(out, encode_signature(&signature))
        .map_err(|e| FatalError(format!("{}: {e}", out.display())))?;
    println!(
        "signed {} ({} bytes) -> {}",
        message.display(),
        bytes.len(),
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn run_verify_sig(public: &Path, message: &Path, sig: &Path) -> Result<ExitCode, FatalError> {
    let pk = load_public(public)?;
    let bytes =
        std::fs::read(message).map_err(|e| FatalError(format!("{}: {e}", message.display())))?;
    let signature = match decode_signature(&read_file(sig)?) {
        Ok(signature) => signature,
        Err(e) => {
            println!("reject (malformed signature: {e})");
            return Ok(ExitCode::from(1));
        }
    };
    if verify_signature(&pk, &bytes, &signature) {
        println!("accept");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("reject");
        Ok(ExitCode::from(1))
    }
}

fn parse_element_arg(arg: &str) -> Result<AlgElement, FatalError> {
    match decode_element(arg) {
        Ok(element) => Ok(element),
        Err(inline_err) => {
            let path = Path::new(arg);
            if path.exists() {
                decode_element(&read_file(path)?)
                    .map_err(|e| FatalError(format!("{}: {e}", path.display())))
            } else {
                Err(FatalError(format!("--minpoly argument: {inline_err}")))
            }
        }
    }
}

fn run_inspect(algebra_path: &Path, minpoly: Option<&str>) -> Result<ExitCode, FatalError> {
    let text = read_file(algebra_path)?;
    let algebra = match decode_algebra(&text) {
        Ok(algebra) => algebra,
        Err(DecodeError::Validation(message)) => {
            // Structurally readable but not a valid algebra: report the
            // status instead of failing, so broken tensors can be examined.
            if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
                if let Some(dim) = value.get("dim").and_then(|d| d.as_u64()) {
                    println!("dimension: {dim}");
                }
            }
            println!("associativity: failed ({message})");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(FatalError(format!("{}: {e}", algebra_path.display()))),
    };
    println!("dimension: {}", algebra.dim());
    println!("associativity: ok");
    println!("identity: {}", encode_element(&algebra.identity_element()));
    for i in 0..algebra.dim() {
        println!(
            "minimal polynomial of b{}: {}",
            i,
            algebra.minimal_polynomial(&algebra.basis_element(i))
        );
    }
    if let Some(arg) = minpoly {
        let element = parse_element_arg(arg)?;
        if element.dim() != algebra.dim() {
            return Err(FatalError(format!(
                "element has dimension {}, algebra has dimension {}",
                element.dim(),
                algebra.dim()
            )));
        }
        println!(
            "minimal polynomial of element: {}",
            algebra.minimal_polynomial(&element)
        );
    }
    Ok(ExitCode::SUCCESS)
}
