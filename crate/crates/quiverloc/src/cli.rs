//! Command-line surface: document-driven checks and constructions plus
//! the exhaustive desk-scale verifier.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when a checked property fails, 2 on input or parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::correspondence::{
    full_cover, locality_of_quiver, quiver_of_locality, regular_hull, verify_roundtrips,
};
use crate::document::{parse_document, serialize_document, Document};
use crate::dot::emit_dot;
use crate::error::{Error, Result};
use crate::locality::LocalitySet;
use crate::oracle::{enumerate_fine_semigroups, enumerate_quivers, EnumerationBudget};
use crate::path::{check_path_semigroup_fine, enumerate_paths};
use crate::quiver::Quiver;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser)]
#[command(
    name = "quiverloc",
    version,
    about = "Locality sets, quivers and path semigroups: constructions and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a locality-set document is regular
    CheckRegular { file: PathBuf },
    /// Print the regular hull of a locality-set document
    Hull { file: PathBuf },
    /// Print the quiver of a locality-set document
    QuiverOf {
        file: PathBuf,
        /// Emit Graphviz DOT instead of a quiver document
        #[arg(long)]
        dot: bool,
    },
    /// Print the locality set of a quiver document
    LocalityOf { file: PathBuf },
    /// Check whether a quiver document is full
    CheckFull { file: PathBuf },
    /// Print the full cover of a quiver document and its projection
    FullCover {
        file: PathBuf,
        /// Emit the cover as Graphviz DOT instead of documents
        #[arg(long)]
        dot: bool,
    },
    /// List the paths of a quiver document, shortest first
    Paths {
        file: PathBuf,
        /// Maximum path length
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Check the fine axioms of a quiver or partial-semigroup document
    CheckFine {
        file: PathBuf,
        /// Length bound for path triples (quiver documents only)
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Exhaustively verify the correspondence and oracle cross-checks
    Verify {
        /// Carrier / vertex / arrow bound for the enumerations (at most 4)
        #[arg(long)]
        max_size: usize,
    },
}

/// Parses `argv` and runs one command, writing to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT_ERROR
                }
            }
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn load(path: &FsPath) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

fn expect_locality_set(doc: Document) -> Result<LocalitySet> {
    match doc {
        Document::LocalitySet(x) => Ok(x),
        other => Err(Error::input(format!(
            "expected a locality-set document, found {}",
            other.kind()
        ))),
    }
}

fn expect_quiver(doc: Document) -> Result<Quiver> {
    match doc {
        Document::Quiver(q) => Ok(q),
        other => Err(Error::input(format!(
            "expected a quiver document, found {}",
            other.kind()
        ))),
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<i32> {
    let w = |e: std::io::Error| Error::input(format!("write failed: {e}"));
    match command {
        Command::CheckRegular { file } => {
            let x = expect_locality_set(load(file)?)?;
            match x.regularity_witness() {
                None => {
                    writeln!(out, "regular").map_err(w)?;
                    Ok(EXIT_OK)
                }
                Some([a, d1, c1, b]) => {
                    writeln!(out, "not regular; witness: ({a}, {d1}, {c1}, {b})").map_err(w)?;
                    Ok(EXIT_PROPERTY_FAILED)
                }
            }
        }
        Command::Hull { file } => {
            let x = expect_locality_set(load(file)?)?;
            let hull = regular_hull(&x);
            write!(out, "{}", serialize_document(&Document::LocalitySet(hull))?).map_err(w)?;
            Ok(EXIT_OK)
        }
        Command::QuiverOf { file, dot } => {
            let x = expect_locality_set(load(file)?)?;
            let q = quiver_of_locality(&x);
            if *dot {
                write!(out, "{}", emit_dot(&q)).map_err(w)?;
            } else {
                write!(out, "{}", serialize_document(&Document::Quiver(q))?).map_err(w)?;
            }
            Ok(EXIT_OK)
        }
        Command::LocalityOf { file } => {
            let q = expect_quiver(load(file)?)?;
            let x = locality_of_quiver(&q);
            write!(out, "{}", serialize_document(&Document::LocalitySet(x))?).map_err(w)?;
            Ok(EXIT_OK)
        }
        Command::CheckFull { file } => {
            let q = expect_quiver(load(file)?)?;
            match q.fullness_witness() {
                None => {
                    writeln!(out, "full").map_err(w)?;
                    Ok(EXIT_OK)
                }
                Some((v, why)) => {
                    writeln!(out, "not full; vertex {v} {why}").map_err(w)?;
                    Ok(EXIT_PROPERTY_FAILED)
                }
            }
        }
        Command::FullCover { file, dot } => {
            let q = expect_quiver(load(file)?)?;
            let result = full_cover(&q);
            if *dot {
                write!(out, "{}", emit_dot(&result.cover)).map_err(w)?;
            } else {
                write!(
                    out,
                    "{}",
                    serialize_document(&Document::Quiver(result.cover))?
                )
                .map_err(w)?;
                writeln!(out, "\nprojection (arrows map identically):").map_err(w)?;
                for (from, to) in result.projection.vertex_map() {
                    writeln!(out, "{from} -> {to}").map_err(w)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Paths { file, max_len } => {
            let q = expect_quiver(load(file)?)?;
            for p in enumerate_paths(&q, *max_len) {
                writeln!(out, "{}", p.arrows().join(" ")).map_err(w)?;
            }
            Ok(EXIT_OK)
        }
        Command::CheckFine { file, max_len } => {
            let fine = match load(file)? {
                Document::Quiver(q) => check_path_semigroup_fine(&q, *max_len),
                Document::PartialSemigroup(s) => s.check_fine(),
                other => {
                    return Err(Error::input(format!(
                        "expected a quiver or partial-semigroup document, found {}",
                        other.kind()
                    )))
                }
            };
            if fine {
                writeln!(out, "fine").map_err(w)?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "not fine").map_err(w)?;
                Ok(EXIT_PROPERTY_FAILED)
            }
        }
        Command::Verify { max_size } => verify(*max_size, out),
    }
}

fn verify(max_size: usize, out: &mut dyn Write) -> Result<i32> {
    let w = |e: std::io::Error| Error::input(format!("write failed: {e}"));
    let mut all_hold = true;

    let report = verify_roundtrips(max_size)?;
    match &report.counterexample {
        None => {
            writeln!(
                out,
                "roundtrips: ok ({} locality sets, {} quivers)",
                report.total_locality_sets(),
                report.quivers_scanned
            )
            .map_err(w)?;
        }
        Some(cx) => {
            all_hold = false;
            writeln!(
                out,
                "roundtrips: FAILED [{}] on {}",
                cx.property, cx.witness
            )
            .map_err(w)?;
        }
    }

    let budget = EnumerationBudget {
        max_carrier: max_size,
        max_vertices: max_size,
        max_arrows: max_size,
        ..EnumerationBudget::default()
    };

    let mut quivers = 0u64;
    let mut fiber_mismatch: Option<Quiver> = None;
    for v in 0..=max_size {
        for a in 0..=max_size {
            for q in enumerate_quivers(v, a, &budget)? {
                quivers += 1;
                if q.is_full() != q.is_full_via_fibers() && fiber_mismatch.is_none() {
                    fiber_mismatch = Some(q);
                }
            }
        }
    }
    match fiber_mismatch {
        None => writeln!(out, "full-vs-fibers: ok ({quivers} quivers)").map_err(w)?,
        Some(q) => {
            all_hold = false;
            writeln!(out, "full-vs-fibers: FAILED on {q:?}").map_err(w)?;
        }
    }

    // path preservation under the cover, at the scale the bound permits
    let cap = max_size.min(3);
    let mut preserved = 0u64;
    let mut preservation_failure: Option<Quiver> = None;
    for v in 0..=cap {
        for a in 0..=cap {
            for q in enumerate_quivers(v, a, &budget)? {
                preserved += 1;
                let cover = full_cover(&q).cover;
                let original: Vec<_> = enumerate_paths(&q, 4)
                    .into_iter()
                    .map(|p| p.arrows().to_vec())
                    .collect();
                let derived: Vec<_> = enumerate_paths(&cover, 4)
                    .into_iter()
                    .map(|p| p.arrows().to_vec())
                    .collect();
                if original != derived && preservation_failure.is_none() {
                    preservation_failure = Some(q);
                }
            }
        }
    }
    match preservation_failure {
        None => writeln!(out, "path-preservation: ok ({preserved} quivers, length <= 4)")
            .map_err(w)?,
        Some(q) => {
            all_hold = false;
            writeln!(out, "path-preservation: FAILED on {q:?}").map_err(w)?;
        }
    }

    let mut fine_checked = 0u64;
    let mut fine_failure = false;
    for n in 0..=max_size.min(2) {
        for s in enumerate_fine_semigroups(n, &budget)? {
            fine_checked += 1;
            if !(s.check_fine() && s.check_chain_closure(4)) {
                fine_failure = true;
            }
        }
    }
    if max_size >= 3 {
        // deterministic sample of the size-3 stream
        for s in enumerate_fine_semigroups(3, &budget)?.step_by(17) {
            fine_checked += 1;
            if !(s.check_fine() && s.check_chain_closure(4)) {
                fine_failure = true;
            }
        }
    }
    if fine_failure {
        all_hold = false;
        writeln!(out, "fine-semigroups: FAILED").map_err(w)?;
    } else {
        writeln!(out, "fine-semigroups: ok ({fine_checked} structures)").map_err(w)?;
    }

    if all_hold {
        writeln!(out, "all checks passed").map_err(w)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "some checks FAILED").map_err(w)?;
        Ok(EXIT_PROPERTY_FAILED)
    }
}
