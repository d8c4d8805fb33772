//! Command-line surface. Every invocation prints one JSON object on stdout
//! with lexicographically sorted keys; integers that can exceed 64 bits are
//! decimal strings.
//!
//! Exit codes: 0 success or "exists", 1 "does not exist" or "not an identity
//! coloring", 2 usage or parse error, 3 size guard hit.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::autocheck::{self, AutoReport};
use crate::construct::{self, ConstructError};
use crate::count::{self, BigCount};
use crate::decide::{self, Decider, Verdict};
use crate::matrix::{ColorMatrix, MatrixError};
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Largest `s` accepted by `table`, and the most rows one call may emit.
pub const TABLE_MAX_S: u64 = 100_000;
pub const TABLE_MAX_ROWS: u64 = 1_000;

#[derive(Debug, Parser)]
#[command(
    name = "idcolor",
    version,
    about = "Identity edge colorings of K_{s,t}"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether K_{s,t} has an identity c-edge-coloring.
    Decide {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, value_parser = parse_decimal)]
        t: BigCount,
    },
    /// Build an identity c-edge-coloring of K_{s,t} in matrix text format.
    Construct {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, value_parser = parse_decimal)]
        t: BigCount,
        /// Write the matrix here instead of embedding it in the document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a matrix file encodes an identity coloring.
    Verify { file: PathBuf },
    /// Distinguishing number of K_s x K_t.
    Distnum {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        /// Also run the exhaustive oracle when the graph is small enough.
        #[arg(long)]
        cross_check: bool,
    },
    /// Feasible t intervals for each s in a range.
    Table {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        s_min: u64,
        #[arg(long)]
        s_max: u64,
    },
}

fn parse_decimal(raw: &str) -> Result<BigCount, String> {
    if raw.is_empty() || !raw.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!(
            "expected a non-negative decimal integer, got {raw:?}"
        ));
    }
    raw.parse::<BigCount>().map_err(|e| e.to_string())
}

/// Result of one invocation, kept in memory so tests need no subprocess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn document(code: i32, doc: Value) -> Outcome {
        Outcome {
            code,
            stdout: format!("{doc}\n"),
            stderr: String::new(),
        }
    }

    fn usage(command: &str, inputs: Value, msg: String) -> Outcome {
        let doc = json!({ "command": command, "inputs": inputs, "error": msg });
        Outcome {
            code: EXIT_USAGE,
            stdout: format!("{doc}\n"),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Args::try_parse_from(argv) {
        Ok(args) => execute(args),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn execute(args: Args) -> Outcome {
    match args.command {
        Command::Decide { c, s, t } => cmd_decide(c, s, &t),
        Command::Construct { c, s, t, out } => cmd_construct(c, s, &t, out),
        Command::Verify { file } => cmd_verify(file),
        Command::Distnum { s, t, cross_check } => cmd_distnum(s, t, cross_check),
        Command::Table { c, s_min, s_max } => cmd_table(c, s_min, s_max),
    }
}

fn triple_inputs(c: u64, s: u64, t: &BigCount) -> Value {
    json!({ "c": c.to_string(), "s": s.to_string(), "t": t.to_string() })
}

fn verdict_fields(doc: &mut Value, v: &Verdict) {
    doc["exists"] = json!(v.exists);
    doc["case_label"] = json!(v.case_label.as_str());
    doc["recursion_chain"] = serde_json::to_value(&v.recursion_chain).expect("chain serialises");
}

fn cmd_decide(c: u64, s: u64, t: &BigCount) -> Outcome {
    let inputs = triple_inputs(c, s, t);
    let verdict = match decide::has_identity_coloring(c, s, t) {
        Ok(v) => v,
        Err(e) => return Outcome::usage("decide", inputs, e.to_string()),
    };
    let mut doc = json!({ "command": "decide", "inputs": inputs });
    verdict_fields(&mut doc, &verdict);
    Outcome::document(if verdict.exists { EXIT_OK } else { EXIT_NO }, doc)
}

fn cmd_construct(c: u64, s: u64, t: &BigCount, out: Option<PathBuf>) -> Outcome {
    let inputs = triple_inputs(c, s, t);
    let verdict = match decide::has_identity_coloring(c, s, t) {
        Ok(v) => v,
        Err(e) => return Outcome::usage("construct", inputs, e.to_string()),
    };
    let mut doc = json!({ "command": "construct", "inputs": inputs });
    verdict_fields(&mut doc, &verdict);
    if !verdict.exists {
        doc["error"] = json!(format!("K_({s},{t}) has no identity {c}-edge-coloring"));
        return Outcome::document(EXIT_NO, doc);
    }
    let Some(t_small) = count::to_u64(t) else {
        doc["error"] = json!(format!("t={t} is too large to build"));
        return Outcome::document(EXIT_GUARD, doc);
    };
    let (matrix, trace) = match construct::identity_coloring(c, s, t_small) {
        Ok(built) => built,
        Err(
            e @ (ConstructError::TooLarge { .. }
            | ConstructError::Matrix(MatrixError::TooLarge { .. })),
        ) => {
            doc["error"] = json!(e.to_string());
            return Outcome::document(EXIT_GUARD, doc);
        }
        Err(e) => {
            doc["error"] = json!(e.to_string());
            return Outcome::document(EXIT_NO, doc);
        }
    };
    doc["trace"] = json!(trace.labels());
    let text = matrix.to_string();
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &text) {
                return Outcome::usage(
                    "construct",
                    doc["inputs"].clone(),
                    format!("{}: {e}", path.display()),
                );
            }
            doc["matrix_path"] = json!(path.display().to_string());
        }
        None => doc["matrix"] = json!(text),
    }
    Outcome::document(EXIT_OK, doc)
}

fn cmd_verify(file: PathBuf) -> Outcome {
    let inputs = json!({ "file": file.display().to_string() });
    let text = match fs::read_to_string(&file) {
        Ok(text) => text,
        Err(e) => return Outcome::usage("verify", inputs, format!("{}: {e}", file.display())),
    };
    let matrix: ColorMatrix = match text.parse() {
        Ok(m) => m,
        Err(e @ MatrixError::TooLarge { .. }) => {
            let doc = json!({ "command": "verify", "inputs": inputs, "error": e.to_string() });
            return Outcome::document(EXIT_GUARD, doc);
        }
        Err(e) => return Outcome::usage("verify", inputs, e.to_string()),
    };
    let mut doc = json!({
        "command": "verify",
        "inputs": inputs,
        "shape": {
            "c": matrix.colors().to_string(),
            "s": matrix.cols().to_string(),
            "t": matrix.rows().to_string(),
        },
    });
    match autocheck::analyze(&matrix) {
        Ok(AutoReport::TrivialOnly) => {
            doc["identity"] = json!(true);
            doc["witness"] = Value::Null;
            Outcome::document(EXIT_OK, doc)
        }
        Ok(AutoReport::Witness(w)) => {
            doc["identity"] = json!(false);
            doc["witness"] = serde_json::to_value(&w).expect("witness serialises");
            Outcome::document(EXIT_NO, doc)
        }
        Err(e) => {
            doc["identity"] = Value::Null;
            doc["error"] = json!(e.to_string());
            Outcome::document(EXIT_GUARD, doc)
        }
    }
}

fn cmd_distnum(s: u64, t: u64, cross_check: bool) -> Outcome {
    let inputs = json!({ "s": s.to_string(), "t": t.to_string() });
    if s == 0 || t == 0 {
        return Outcome::usage("distnum", inputs, "factor sizes must be positive".into());
    }
    let d = decide::distinguishing_number(s, t);
    let mut doc = json!({
        "command": "distnum",
        "inputs": inputs,
        "value": d.value.to_string(),
        "base_c": d.base_c.to_string(),
        "corollary_case": d.corollary_case,
        "corollary_value": d.corollary_value.map(|v| v.to_string()),
        "corollary_agrees": d.corollary_agrees(),
    });
    if cross_check {
        doc["cross_check"] = oracle_cross_check(s, t, d.value);
    }
    Outcome::document(EXIT_OK, doc)
}

fn oracle_cross_check(s: u64, t: u64, value: u64) -> Value {
    let sized = usize::try_from(s).ok().zip(usize::try_from(t).ok());
    let result = match sized {
        Some((s, t)) if s.saturating_mul(t) <= oracle::PRODUCT_VERTEX_LIMIT => {
            oracle::product_distinguishing_number(s, t, value)
        }
        _ => return json!({ "skipped": "product graph exceeds the oracle vertex limit" }),
    };
    match result {
        Ok(found) => json!({
            "oracle_value": found.map(|v| v.to_string()),
            "agrees": found == Some(value),
        }),
        Err(e) => json!({ "skipped": e.to_string() }),
    }
}

fn cmd_table(c: u64, s_min: u64, s_max: u64) -> Outcome {
    let inputs =
        json!({ "c": c.to_string(), "s_min": s_min.to_string(), "s_max": s_max.to_string() });
    if c < 2 {
        return Outcome::usage("table", inputs, format!("need at least 2 colors, got {c}"));
    }
    if s_min == 0 || s_min > s_max {
        return Outcome::usage(
            "table",
            inputs,
            format!("need 1 <= s-min <= s-max, got {s_min}..{s_max}"),
        );
    }
    if s_max > TABLE_MAX_S || s_max - s_min >= TABLE_MAX_ROWS {
        return Outcome::usage(
            "table",
            inputs,
            format!(
                "s-max must be at most {TABLE_MAX_S} and the range at most {TABLE_MAX_ROWS} rows"
            ),
        );
    }
    let mut decider = Decider::new();
    let mut rows = Vec::new();
    for s in s_min..=s_max {
        let row = match decide::feasible_intervals(&mut decider, c, s) {
            Ok(row) => row,
            Err(e) => return Outcome::usage("table", inputs, e.to_string()),
        };
        let intervals: Vec<Value> = row
            .intervals
            .iter()
            .map(|(a, b)| json!([a.to_string(), b.to_string()]))
            .collect();
        let adjustments: Vec<Value> = row
            .adjustments
            .iter()
            .map(|adj| {
                let mut entry = json!({ "t": adj.t.to_string() });
                verdict_fields(&mut entry, &adj.verdict);
                entry
            })
            .collect();
        rows.push(json!({
            "s": s.to_string(),
            "case_label": row.case_label.as_str(),
            "intervals": intervals,
            "adjustments": adjustments,
        }));
    }
    Outcome::document(
        EXIT_OK,
        json!({ "command": "table", "inputs": inputs, "rows": rows }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("idcolor").chain(args.iter().copied()))
    }

    fn doc(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn decide_exit_codes() {
        assert_eq!(go(&["decide", "--c", "3", "--s", "2", "--t", "8"]).code, 0);
        assert_eq!(go(&["decide", "--c", "3", "--s", "9", "--t", "2"]).code, 1);
        assert_eq!(go(&["decide", "--c", "1", "--s", "2", "--t", "2"]).code, 2);
        assert_eq!(go(&["decide", "--c", "3", "--s", "2", "--t", "-4"]).code, 2);
        assert_eq!(go(&["decide", "--c", "3", "--s", "2"]).code, 2);
    }

    #[test]
    fn decide_document() {
        let o = go(&["decide", "--c", "3", "--s", "26", "--t", "3"]);
        assert_eq!(
            o.stdout,
            "{\"case_label\":\"T1-v\",\"command\":\"decide\",\"exists\":true,\
             \"inputs\":{\"c\":\"3\",\"s\":\"26\",\"t\":\"3\"},\
             \"recursion_chain\":[[\"3\",\"26\",\"3\"],[\"3\",\"3\",\"26\"]]}\n"
        );
    }

    #[test]
    fn construct_embeds_matrix() {
        let o = go(&["construct", "--c", "3", "--s", "2", "--t", "2"]);
        assert_eq!(o.code, 0);
        let d = doc(&o);
        let m: ColorMatrix = d["matrix"].as_str().unwrap().parse().unwrap();
        assert_eq!(m, ColorMatrix::from_rows(3, 2, &[[0, 1], [0, 2]]).unwrap());
        assert_eq!(
            go(&["construct", "--c", "2", "--s", "2", "--t", "2"]).code,
            1
        );
        assert_eq!(
            go(&["construct", "--c", "3", "--s", "79", "--t", "3"]).code,
            1
        );
        assert_eq!(
            go(&["construct", "--c", "3", "--s", "79", "--t", "4"]).code,
            0
        );
        let big = go(&["construct", "--c", "2", "--s", "40", "--t", "100000000000"]);
        assert_eq!(big.code, 3);
    }

    #[test]
    fn distnum_documents() {
        let d = doc(&go(&["distnum", "--s", "2", "--t", "2"]));
        assert_eq!(d["value"], "3");
        let d = doc(&go(&["distnum", "--s", "1", "--t", "9"]));
        assert_eq!(d["value"], "9");
        let d = doc(&go(&["distnum", "--s", "3", "--t", "3", "--cross-check"]));
        assert_eq!(d["value"], "3");
        assert_eq!(d["cross_check"]["agrees"], true);
        assert_eq!(d["corollary_agrees"], false);
        assert_eq!(go(&["distnum", "--s", "0", "--t", "3"]).code, 2);
    }

    #[test]
    fn table_rows() {
        let d = doc(&go(&["table", "--c", "3", "--s-min", "2", "--s-max", "3"]));
        assert_eq!(d["rows"][0]["intervals"], json!([["1", "8"]]));
        assert_eq!(d["rows"][1]["intervals"], json!([["1", "26"]]));
        assert_eq!(
            go(&["table", "--c", "3", "--s-min", "4", "--s-max", "2"]).code,
            2
        );
        assert_eq!(
            go(&["table", "--c", "1", "--s-min", "1", "--s-max", "2"]).code,
            2
        );
    }
}
