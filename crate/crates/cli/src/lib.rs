//! Command surface: bounds reports, floor computation with optional SVG
//! and generator output, sieve values with machine-checkable witnesses,
//! singular point lists, and the survey dataset as CSV.

pub mod report;
pub mod svg;

use bianchi_core::bounds::{bounds_report, lower_bound, lower_bound_rounded_up, upper_bound};
use bianchi_core::jacobsthal::{Solver, TwoDividesReading};
use bianchi_core::qfield::{class_number, fundamental_discs, AlgInt, Disc, Ideal};
use bianchi_core::swan::{emit_generators, swan_number, SwanBudget, SwanResult};
use rayon::prelude::*;
use report::*;
use std::time::Duration;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub struct CmdOutput {
    pub stdout: String,
    pub exit: i32,
}

fn ok(stdout: String) -> CmdOutput {
    CmdOutput {
        stdout,
        exit: EXIT_OK,
    }
}

fn usage_error(msg: String) -> CmdOutput {
    CmdOutput {
        stdout: format!("error: {msg}\n"),
        exit: EXIT_USAGE,
    }
}

/// Validates a discriminant or produces a usage error naming the nearest
/// fundamental discriminants.
pub fn parse_disc(d: i64) -> Result<Disc, CmdOutput> {
    Disc::new(d).map_err(|e| {
        let below = (1..200).find_map(|k| Disc::new(d - k).ok().map(|x| x.d()));
        let above = (1..200).find_map(|k| Disc::new(d + k).ok().map(|x| x.d()));
        let mut hints = Vec::new();
        if let Some(a) = above {
            hints.push(a.to_string());
        }
        if let Some(b) = below {
            hints.push(b.to_string());
        }
        usage_error(format!(
            "{e}; nearest fundamental discriminants: {}",
            hints.join(", ")
        ))
    })
}

pub fn cmd_bounds(disc: i64, format: Format) -> CmdOutput {
    let d = match parse_disc(disc) {
        Ok(d) => d,
        Err(e) => return e,
    };
    let mut solver = Solver::new();
    let rep = match bounds_report(&d, &mut solver, None) {
        Ok(r) => r,
        Err(e) => return usage_error(format!("{e}")),
    };
    let json = BoundsJson {
        disc: rep.disc.d(),
        class_number: rep.class_number,
        delta: elem_json(&rep.delta),
        delta_norm_sq: rep.delta_norm_sq as i64,
        j: rep.j,
        lower: surd_json(&rep.lower),
        upper: surd_json(&rep.upper),
        swan_sq: None,
    };
    match format {
        Format::Json => ok(serde_json::to_string_pretty(&json).unwrap() + "\n"),
        Format::Text => ok(format!(
            "disc {}\nclass number {}\ndelta = {} with |delta|^2 = {}\nJ = {}\nlower bound = {}\nupper bound = {}\n",
            json.disc,
            json.class_number,
            rep.delta.to_string_pretty(&d),
            json.delta_norm_sq,
            json.j,
            json.lower.decimal,
            json.upper.decimal,
        )),
    }
}

pub struct SwanFlags {
    pub cap_sq: Option<i128>,
    pub budget_secs: Option<u64>,
    pub svg_path: Option<String>,
    pub generators: bool,
    pub format: Format,
}

pub fn run_swan(disc: i64, flags: &SwanFlags) -> Result<(SwanResult, Disc), CmdOutput> {
    let d = parse_disc(disc)?;
    let budget = SwanBudget {
        max_cap_sq: flags.cap_sq,
        time_limit: flags.budget_secs.map(Duration::from_secs),
    };
    Ok((swan_number(&d, &budget), d))
}

pub fn cmd_swan(disc: i64, flags: &SwanFlags) -> CmdOutput {
    let (result, d) = match run_swan(disc, flags) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let gens = if flags.generators && result.certified {
        Some(emit_generators(&result, &d).expect("certified"))
    } else {
        None
    };
    if let Some(path) = &flags.svg_path {
        let svg = svg::render_svg(&result, &d);
        if let Err(e) = std::fs::write(path, svg) {
            return usage_error(format!("cannot write {path}: {e}"));
        }
    }
    let json = swan_json(&result, &d, gens.as_deref());
    let exit = if result.certified { EXIT_OK } else { EXIT_PARTIAL };
    let stdout = match flags.format {
        Format::Json => serde_json::to_string_pretty(&json).unwrap() + "\n",
        Format::Text => {
            let mut s = format!(
                "disc {}\nswan_sq = {} ({}certified, cap {} used)\nfaces: {} with distinct |mu|^2 {:?}\nsingular points: {}\n",
                json.disc,
                json.swan_sq,
                if json.certified { "" } else { "NOT " },
                json.cap_used_sq,
                json.face_count,
                json.distinct_face_norms,
                json.singular_points
                    .iter()
                    .map(|z| z.pretty.clone())
                    .collect::<Vec<_>>()
                    .join(", "),
            );
            if let Some(gens) = &json.generators {
                s.push_str(&format!("generators: {}\n", gens.len()));
                for g in gens {
                    s.push_str(&format!(
                        "  [[({},{})/2, -({},{})/2], [-({},{})/2, ({},{})/2]]\n",
                        g.beta.a,
                        g.beta.b,
                        g.alpha.a,
                        g.alpha.b,
                        g.mu.a,
                        g.mu.b,
                        g.lambda.a,
                        g.lambda.b
                    ));
                }
            }
            s
        }
    };
    CmdOutput { stdout, exit }
}

pub fn cmd_singular(disc: i64, format: Format) -> CmdOutput {
    let d = match parse_disc(disc) {
        Ok(d) => d,
        Err(e) => return e,
    };
    let pts = bianchi_core::qfield::singular_points(&d);
    match format {
        Format::Json => {
            let js: Vec<FieldElemJson> = pts.iter().map(|z| field_elem_json(z, &d)).collect();
            ok(serde_json::to_string_pretty(&js).unwrap() + "\n")
        }
        Format::Text => {
            if pts.is_empty() {
                ok(format!(
                    "disc {}: no singular points (trivial class group)\n",
                    d.d()
                ))
            } else {
                ok(format!(
                    "disc {}: {} singular points mod translation/negation:\n{}\n",
                    d.d(),
                    pts.len(),
                    pts.iter()
                        .map(|z| format!("  {}", z.to_string_pretty(&d)))
                        .collect::<Vec<_>>()
                        .join("\n")
                ))
            }
        }
    }
}

pub enum JacobsthalCmd {
    Little { ideal: String },
    Big { x: String },
    FixedPoint,
}

pub fn cmd_jacobsthal(disc: i64, sub: &JacobsthalCmd, format: Format) -> CmdOutput {
    let d = match parse_disc(disc) {
        Ok(d) => d,
        Err(e) => return e,
    };
    let mut solver = Solver::new();
    let json = match sub {
        JacobsthalCmd::Little { ideal } => {
            let (a, b) = match parse_ideal_pair(ideal) {
                Some(p) => p,
                None => {
                    return usage_error(format!("malformed ideal '{ideal}', expected 'a,b'"))
                }
            };
            let ideal = match Ideal::new(a, b, &d) {
                Ok(i) => i,
                Err(e) => return usage_error(format!("{e}")),
            };
            let w = solver
                .little_j_ideal(1, &ideal, &d, TwoDividesReading::FullTwo)
                .expect("nonzero ideal");
            debug_assert!(w.verify_run());
            JacobsthalJson {
                disc: d.d(),
                value: w.value,
                adversary_residues: Some(w.adversary_residues.clone()),
                run_start: Some(w.run_start),
                run_length: Some(w.run_length),
            }
        }
        JacobsthalCmd::Big { x } => {
            let Some(x_sq) = parse_positive_rational_squared(x) else {
                return usage_error(format!("malformed rational '{x}'"));
            };
            let v = solver.big_j_rational_sq(&x_sq, &d);
            JacobsthalJson {
                disc: d.d(),
                value: v,
                adversary_residues: None,
                run_start: None,
                run_length: None,
            }
        }
        JacobsthalCmd::FixedPoint => {
            let (_, delta_sq) = bianchi_core::bounds::max_proper_divisor(&d);
            match solver.theorem_j(&d, delta_sq, 64) {
                Ok(j) => JacobsthalJson {
                    disc: d.d(),
                    value: j,
                    adversary_residues: None,
                    run_start: None,
                    run_length: None,
                },
                Err(e) => return usage_error(format!("{e}")),
            }
        }
    };
    match format {
        Format::Json => ok(serde_json::to_string_pretty(&json).unwrap() + "\n"),
        Format::Text => {
            let mut s = format!("disc {}: value {}\n", json.disc, json.value);
            if let (Some(res), Some(start), Some(len)) =
                (&json.adversary_residues, json.run_start, json.run_length)
            {
                s.push_str(&format!(
                    "witness: forbidden classes {:?}, blocked run [{}, {}]\n",
                    res,
                    start,
                    start + len as i64 - 1
                ));
            }
            ok(s)
        }
    }
}

fn parse_ideal_pair(s: &str) -> Option<(i128, i128)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parses "q" or "p/q" and returns x^2 as an exact rational.
fn parse_positive_rational_squared(s: &str) -> Option<bianchi_core::exact::Rat> {
    use bianchi_core::exact::rat;
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i128>().ok()?,
            d.trim().parse::<i128>().ok()?,
        ),
        None => (s.trim().parse::<i128>().ok()?, 1),
    };
    if n <= 0 || d <= 0 {
        return None;
    }
    Some(rat(n * n, d * d))
}

pub struct Figure6Flags {
    pub max_abs_disc: i64,
    pub swan_upto: i64,
    pub budget_secs: Option<u64>,
    pub threads: Option<usize>,
}

/// One row per fundamental discriminant; the Swan column is computed only
/// for |disc| <= swan_upto and left empty when uncertified within budget.
pub fn figure6_rows(flags: &Figure6Flags) -> Vec<Fig6Row> {
    let discs = fundamental_discs(flags.max_abs_disc);
    let work = |d: &Disc| -> Fig6Row {
        let mut solver = Solver::new();
        let (_, delta_sq) = bianchi_core::bounds::max_proper_divisor(d);
        let lower = lower_bound(d);
        let (upper, j) = upper_bound(d, &mut solver).expect("fixed point in range");
        let swan_sq = if d.abs() <= flags.swan_upto as i128 {
            let budget = SwanBudget {
                max_cap_sq: None,
                time_limit: flags.budget_secs.map(Duration::from_secs),
            };
            let r = swan_number(d, &budget);
            r.certified.then_some(r.swan_sq)
        } else {
            None
        };
        let rounded_lower = lower_bound_rounded_up(d);
        Fig6Row {
            disc: d.d(),
            class_number: class_number(d),
            delta_norm_sq: delta_sq as i64,
            j,
            lower_val: lower.decimal(12),
            upper_val: upper.decimal(12),
            swan_sq: swan_sq.map(|s| s as i64),
            log_lower: fmt_sig12((rounded_lower as f64).ln()),
            log_upper: fmt_sig12(upper.to_f64().ln()),
            log_swan: swan_sq.map(|s| fmt_sig12((s as f64).sqrt().ln())),
        }
    };
    match flags.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("thread pool");
            pool.install(|| discs.par_iter().map(work).collect())
        }
        None => discs.par_iter().map(work).collect(),
    }
}

pub fn figure6_csv(flags: &Figure6Flags) -> String {
    let mut out = String::from(FIG6_HEADER);
    out.push('\n');
    for row in figure6_rows(flags) {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn cmd_figure6(flags: &Figure6Flags, out_path: Option<&str>) -> CmdOutput {
    if flags.max_abs_disc < 3 {
        return usage_error("--max-abs-disc must be at least 3".to_string());
    }
    let rows = figure6_rows(flags);
    // a requested Swan column that stayed empty means the budget ran out
    let partial = rows
        .iter()
        .any(|r| -r.disc <= flags.swan_upto && r.swan_sq.is_none());
    let mut csv = String::from(FIG6_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.to_csv_line());
        csv.push('\n');
    }
    let exit = if partial { EXIT_PARTIAL } else { EXIT_OK };
    match out_path {
        Some(p) => match std::fs::write(p, &csv) {
            Ok(()) => CmdOutput {
                stdout: format!("wrote {p}\n"),
                exit,
            },
            Err(e) => usage_error(format!("cannot write {p}: {e}")),
        },
        None => CmdOutput { stdout: csv, exit },
    }
}

/// Determinant, entry-bound, and reduction audit of the generator set.
pub fn audit_generators(result: &SwanResult, d: &Disc) -> Result<usize, String> {
    let gens = emit_generators(result, d).map_err(|e| e.to_string())?;
    for g in &gens {
        if g.det(d) != AlgInt::one() {
            return Err("determinant is not one".to_string());
        }
        if g.mu.norm(d) > result.swan_sq {
            return Err("bottom-left entry norm exceeds the maximum face norm".to_string());
        }
        if !g.mu.is_zero() {
            let reduced = bianchi_core::qfield::reduce_mod(&g.beta, &g.mu, d);
            if reduced.norm(d) != g.beta.norm(d) {
                return Err("beta is not minimal in its class mod mu".to_string());
            }
        }
    }
    Ok(gens.len())
}
