//! Graph arguments: inline JSON, `@path`, `-` for stdin, or a product of
//! named graphs such as `P3*e^3`.

use std::fs;
use std::io::Read;

use tropgraph::hypergraph::disjoint_union;
use tropgraph::rational::{parse_rational, Rational};
use tropgraph::Hypergraph;

use crate::CliError;

fn read_source(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    if let Some(path) = arg.strip_prefix('@') {
        return fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")));
    }
    Ok(arg.to_string())
}

fn named_product(expr: &str) -> Result<Hypergraph, CliError> {
    let mut acc: Option<Hypergraph> = None;
    for factor in expr.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let p: usize = p.trim().parse().map_err(|_| CliError::Parse(format!("bad exponent in {factor:?}")))?;
                (n.trim(), p)
            }
            None => (factor, 1),
        };
        if power == 0 {
            return Err(CliError::Parse(format!("zero exponent in {factor:?}")));
        }
        let g = Hypergraph::named(name).map_err(|_| CliError::Parse(format!("unknown graph {name:?}")))?;
        for _ in 0..power {
            acc = Some(match acc {
                None => g.clone(),
                Some(a) => disjoint_union(&a, &g)?,
            });
        }
    }
    acc.ok_or_else(|| CliError::Parse("empty graph expression".into()))
}

/// Parses one graph argument.
pub fn parse_graph(arg: &str) -> Result<Hypergraph, CliError> {
    let text = read_source(arg)?;
    let text = text.trim();
    if text.starts_with('{') {
        return Hypergraph::from_json(text).map_err(|e| CliError::Parse(e.to_string()));
    }
    named_product(text)
}

/// Parses `graph=value` pairs such as `e=7/10` or `K3=0.12`.
pub fn parse_assignment(arg: &str) -> Result<(Hypergraph, Rational), CliError> {
    let (g, v) = arg.rsplit_once('=').ok_or_else(|| CliError::Parse(format!("expected graph=value, got {arg:?}")))?;
    let value = parse_rational(v).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok((parse_graph(g)?, value))
}

/// Comma-separated rationals, e.g. `1e-1,1e-2,1/1000`.
pub fn parse_schedule(arg: &str) -> Result<Vec<Rational>, CliError> {
    arg.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_rational(s).map_err(|e| CliError::Parse(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        let g = parse_graph("e^3").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 3));
        let g = parse_graph("P3*e").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 4));
        assert!(parse_graph("nope").is_err());
        assert!(parse_graph("e^0").is_err());
    }

    #[test]
    fn inline_json() {
        let g = parse_graph(r#"{"r":2,"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.canonical_form(), Hypergraph::named("path2").unwrap());
        assert!(matches!(parse_graph(r#"{"r":2"#), Err(CliError::Parse(_))));
        assert!(matches!(parse_graph("@/nonexistent/file.json"), Err(CliError::Io(_))));
    }

    #[test]
    fn assignments_and_schedules() {
        let (g, v) = parse_assignment("K3=3/25").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(v, tropgraph::rational::rat(3, 25));
        assert_eq!(parse_schedule("1e-1, 1e-2").unwrap().len(), 2);
        assert!(parse_schedule("x").is_err());
    }
}
