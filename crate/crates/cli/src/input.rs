//! Resolving graph inputs: named specs, graph6 strings or files, edge lists.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use energy_bounds::generators::NAMED_GRAPHS;
use energy_bounds::{generate, parse_graph6, Graph, GraphSpec};

pub fn named(spec: &str) -> Result<Graph, String> {
    let parsed: GraphSpec = spec.parse().map_err(|e| format!("bad graph spec `{spec}`: {e}"))?;
    generate(&parsed).map_err(|e| format!("cannot build `{spec}`: {e}"))
}

/// `-` is stdin, an existing path is a file, anything else a literal code.
/// Only the first non-empty line is used.
pub fn graph6_single(arg: &str) -> Result<Graph, String> {
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        s
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?
    } else {
        arg.to_string()
    };
    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or("empty graph6 input")?;
    let g = parse_graph6(line).map_err(|e| format!("bad graph6 `{line}`: {e}"))?;
    Ok(g.with_name(line))
}

pub fn edge_list(path: &Path) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let g = Graph::parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(g.with_name(name))
}

/// Catalog file: one graph spec per line, `#` comments allowed.
pub fn catalog(path: Option<&Path>) -> Result<Vec<String>, String> {
    let Some(path) = path else {
        return Ok(NAMED_GRAPHS.iter().map(|s| s.to_string()).collect());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

/// Line source for streamed graph6 input.
pub fn graph6_lines(arg: &str) -> Result<Box<dyn BufRead>, String> {
    if arg == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        let f = File::open(arg).map_err(|e| format!("{arg}: {e}"))?;
        Ok(Box::new(BufReader::new(f)))
    }
}
