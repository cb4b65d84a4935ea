use bianchi_cli::{
    cmd_bounds, cmd_figure6, cmd_jacobsthal, cmd_singular, cmd_swan, CmdOutput, Figure6Flags,
    Format, JacobsthalCmd, SwanFlags, EXIT_USAGE,
};
use std::collections::HashMap;
use std::process::ExitCode;

const USAGE: &str = "\
bianchi: exact floors, curvature bounds, and sieve values for Bianchi groups

usage:
  bianchi bounds --disc D [--format text|json]
  bianchi swan --disc D [--cap-sq N] [--budget-secs S] [--svg PATH]
               [--generators] [--format text|json]
  bianchi singular --disc D [--format text|json]
  bianchi jacobsthal --disc D little --ideal \"a,b\" [--format text|json]
  bianchi jacobsthal --disc D big --x Q [--format text|json]
  bianchi jacobsthal --disc D fixedpoint [--format text|json]
  bianchi figure6 [--max-abs-disc N] [--swan-upto M] [--budget-secs S]
                  [--out PATH]

D is a fundamental negative discriminant (e.g. -23). Exit codes: 0 on a
complete/certified result, 2 on a partial or uncertified result, 1 on a
usage or validation error.
";

struct Args {
    positional: Vec<String>,
    flags: HashMap<String, String>,
    switches: Vec<String>,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut positional = Vec::new();
    let mut flags = HashMap::new();
    let mut switches = Vec::new();
    let mut i = 0;
    while i < argv.len() {
        let a = &argv[i];
        if let Some(name) = a.strip_prefix("--") {
            match name {
                "generators" => switches.push(name.to_string()),
                _ => {
                    i += 1;
                    let v = argv
                        .get(i)
                        .ok_or_else(|| format!("flag --{name} needs a value"))?;
                    flags.insert(name.to_string(), v.clone());
                }
            }
        } else {
            positional.push(a.clone());
        }
        i += 1;
    }
    Ok(Args {
        positional,
        flags,
        switches,
    })
}

fn get_format(args: &Args) -> Result<Format, String> {
    match args.flags.get("format").map(String::as_str) {
        None | Some("text") => Ok(Format::Text),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(format!("unknown format '{other}'")),
    }
}

fn get_disc(args: &Args) -> Result<i64, String> {
    args.flags
        .get("disc")
        .ok_or_else(|| "missing --disc".to_string())?
        .parse()
        .map_err(|_| "invalid --disc value".to_string())
}

fn dispatch(argv: &[String]) -> CmdOutput {
    let usage = |msg: String| CmdOutput {
        stdout: format!("error: {msg}\n\n{USAGE}"),
        exit: EXIT_USAGE,
    };
    if argv.is_empty() {
        return CmdOutput {
            stdout: USAGE.to_string(),
            exit: EXIT_USAGE,
        };
    }
    let cmd = argv[0].clone();
    let args = match parse_args(&argv[1..]) {
        Ok(a) => a,
        Err(e) => return usage(e),
    };
    let format = match get_format(&args) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    match cmd.as_str() {
        "bounds" => match get_disc(&args) {
            Ok(d) => cmd_bounds(d, format),
            Err(e) => usage(e),
        },
        "swan" => {
            let disc = match get_disc(&args) {
                Ok(d) => d,
                Err(e) => return usage(e),
            };
            let flags = SwanFlags {
                cap_sq: args.flags.get("cap-sq").and_then(|v| v.parse().ok()),
                budget_secs: args.flags.get("budget-secs").and_then(|v| v.parse().ok()),
                svg_path: args.flags.get("svg").cloned(),
                generators: args.switches.iter().any(|s| s == "generators"),
                format,
            };
            cmd_swan(disc, &flags)
        }
        "singular" => match get_disc(&args) {
            Ok(d) => cmd_singular(d, format),
            Err(e) => usage(e),
        },
        "jacobsthal" => {
            let disc = match get_disc(&args) {
                Ok(d) => d,
                Err(e) => return usage(e),
            };
            let sub = match args.positional.first().map(String::as_str) {
                Some("little") => match args.flags.get("ideal") {
                    Some(i) => JacobsthalCmd::Little { ideal: i.clone() },
                    None => return usage("little needs --ideal \"a,b\"".to_string()),
                },
                Some("big") => match args.flags.get("x") {
                    Some(x) => JacobsthalCmd::Big { x: x.clone() },
                    None => return usage("big needs --x Q".to_string()),
                },
                Some("fixedpoint") => JacobsthalCmd::FixedPoint,
                _ => return usage("jacobsthal needs little | big | fixedpoint".to_string()),
            };
            cmd_jacobsthal(disc, &sub, format)
        }
        "figure6" => {
            let flags = Figure6Flags {
                max_abs_disc: args
                    .flags
                    .get("max-abs-disc")
                    .and_then(|v| v.parse().ok())
                    .unwrap_or(400),
                swan_upto: args
                    .flags
                    .get("swan-upto")
                    .and_then(|v| v.parse().ok())
                    .unwrap_or(0),
                budget_secs: args.flags.get("budget-secs").and_then(|v| v.parse().ok()),
                threads: None,
            };
            cmd_figure6(&flags, args.flags.get("out").map(String::as_str))
        }
        "help" | "--help" | "-h" => CmdOutput {
            stdout: USAGE.to_string(),
            exit: 0,
        },
        other => usage(format!("unknown command '{other}'")),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let out = dispatch(&argv);
    print!("{}", out.stdout);
    ExitCode::from(out.exit as u8)
}
