//! Matplotlib script generation.

use std::path::{Path, PathBuf};

use crate::commands::read_header;
use crate::config::RunConfig;
use crate::{CliError, PlotArgs};

const X_COLUMNS: [&str; 2] = ["x_hours", "r"];

/// Python string literal for a path.
fn py_str(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Script text plotting every non-x column of every file on one set of axes.
pub fn render(files: &[(PathBuf, Vec<String>)], log_log: bool, image: &Path) -> String {
    let mut s = String::new();
    s.push_str("#!/usr/bin/env python3\n");
    s.push_str("# Generated by mdsrel plotscript.\n");
    s.push_str("import csv\n\nimport matplotlib\n\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n");
    s.push_str("FILES = [\n");
    for (path, header) in files {
        let cols: Vec<String> = header[1..].iter().map(|c| py_str(c)).collect();
        s.push_str(&format!(
            "    ({}, {}, [{}]),\n",
            py_str(&path.display().to_string()),
            py_str(&header[0]),
            cols.join(", ")
        ));
    }
    s.push_str("]\n");
    s.push_str(&format!("LOG_LOG = {}\n", if log_log { "True" } else { "False" }));
    s.push_str(&format!("IMAGE = {}\n\n", py_str(&image.display().to_string())));
    s.push_str(
        r#"
def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows


fig, ax = plt.subplots(figsize=(7, 5))
for path, xcol, ycols in FILES:
    rows = load(path)
    xs = [float(r[xcol]) for r in rows]
    for col in ycols:
        ys = [float(r[col]) for r in rows]
        if LOG_LOG:
            pts = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
            if not pts:
                continue
            px, py = zip(*pts)
        else:
            px, py = xs, ys
        label = col if len(FILES) == 1 else "%s: %s" % (path, col)
        ax.plot(px, py, label=label)
if LOG_LOG:
    ax.set_xscale("log")
    ax.set_yscale("log")
ax.set_xlabel(FILES[0][1])
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.tight_layout()
fig.savefig(IMAGE, dpi=150)
print("wrote", IMAGE)
"#,
    );
    s
}

pub fn write(args: &PlotArgs) -> Result<(), CliError> {
    if args.csv.is_empty() {
        return Err(CliError::Config("plotscript needs at least one CSV file".into()));
    }
    let config_log_log = match &args.config {
        Some(p) => RunConfig::load(p)?.output.log_log,
        None => None,
    };
    let log_log = args.log_log.or(config_log_log).unwrap_or(false);

    let mut files = Vec::with_capacity(args.csv.len());
    for path in &args.csv {
        let header = read_header(path)?;
        if header.len() < 2 || !X_COLUMNS.contains(&header[0].as_str()) {
            return Err(CliError::Config(format!(
                "{}: expected a header starting with x_hours or r and at least one value column",
                path.display()
            )));
        }
        files.push((path.clone(), header));
    }
    let image = args.out.with_extension("png");
    std::fs::write(&args.out, render(&files, log_log, &image))
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", args.out.display())))
}
