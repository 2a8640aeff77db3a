//! Textual descriptor grammars — the construction contract used by the CLI.
//!
//! Orlicz functions:  `power:p | cpower:c,p | expm1 | max(D1,D2) | table:@file.csv`
//! Piecewise:         `step:l,r,h | tent:a,b | sum(T1;T2;...)` with terms `coef*D` or `D`
//! Analytic catalog:  `biexp:alpha | gauss:sigma | sinesinc2:omega,w`
//! Discrete sets:     `lattice:alpha | perturbed:gamma,seed | finite:@file.csv | sqrt | squares`
//!
//! `@file.csv` loads two-column `x,phi` tables (Orlicz) or a one-column
//! point list (sets); a header row is skipped when not numeric.

use crate::density::DiscreteSet;
use crate::orlicz::OrliczFunction;
use crate::piecewise::{linear_combine, CatalogFunction, PiecewiseFunction};
use std::path::Path;
use thiserror::Error;

pub const ORLICZ_GRAMMAR: &str = "power:p | cpower:c,p | expm1 | max(D1,D2) | table:@file.csv";
pub const PIECEWISE_GRAMMAR: &str = "step:l,r,h | tent:a,b | sum(T1;T2;...) with T = coef*D or D";
pub const CATALOG_GRAMMAR: &str = "biexp:alpha | gauss:sigma | sinesinc2:omega,w";
pub const SET_GRAMMAR: &str = "lattice:alpha | perturbed:gamma,seed | finite:@file.csv | sqrt | squares";

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("cannot parse `{input}`: {reason}; expected {grammar}")]
    Parse { input: String, reason: String, grammar: &'static str },
    #[error("cannot read `{path}`: {reason}")]
    File { path: String, reason: String },
}

fn parse_err(input: &str, reason: impl Into<String>, grammar: &'static str) -> DescriptorError {
    DescriptorError::Parse { input: input.to_string(), reason: reason.into(), grammar }
}

fn parse_f64(input: &str, tok: &str, grammar: &'static str) -> Result<f64, DescriptorError> {
    tok.trim()
        .parse::<f64>()
        .map_err(|_| parse_err(input, format!("`{tok}` is not a number"), grammar))
}

/// Split on `sep` at paren depth zero.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn read_table(path: &str) -> Result<Vec<Vec<f64>>, DescriptorError> {
    let text = std::fs::read_to_string(Path::new(path))
        .map_err(|e| DescriptorError::File { path: path.to_string(), reason: e.to_string() })?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Result<Vec<f64>, _> = line.split(',').map(|c| c.trim().parse::<f64>()).collect();
        match cells {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => continue, // header row
            Err(e) => {
                return Err(DescriptorError::File {
                    path: path.to_string(),
                    reason: format!("line {}: {e}", i + 1),
                })
            }
        }
    }
    Ok(rows)
}

pub fn parse_orlicz(input: &str) -> Result<OrliczFunction, DescriptorError> {
    let s = input.trim();
    let fail = |reason: String| parse_err(input, reason, ORLICZ_GRAMMAR);
    if s == "expm1" {
        return Ok(OrliczFunction::exp_minus_one());
    }
    if let Some(rest) = s.strip_prefix("power:") {
        let p = parse_f64(input, rest, ORLICZ_GRAMMAR)?;
        return OrliczFunction::power(p).map_err(|e| fail(e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("cpower:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(fail("cpower takes two parameters c,p".into()));
        }
        let c = parse_f64(input, parts[0], ORLICZ_GRAMMAR)?;
        let p = parse_f64(input, parts[1], ORLICZ_GRAMMAR)?;
        return OrliczFunction::power_scaled(c, p).map_err(|e| fail(e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("max(") {
        let Some(inner) = rest.strip_suffix(')') else {
            return Err(fail("unbalanced parentheses".into()));
        };
        let parts = split_top_level(inner, ',');
        if parts.len() != 2 {
            return Err(fail("max takes exactly two descriptors".into()));
        }
        let left = parse_orlicz(parts[0])?;
        let right = parse_orlicz(parts[1])?;
        return Ok(OrliczFunction::max_of(left, right));
    }
    if let Some(rest) = s.strip_prefix("table:@") {
        let rows = read_table(rest)?;
        let mut grid = Vec::with_capacity(rows.len());
        let mut values = Vec::with_capacity(rows.len());
        for row in &rows {
            if row.len() != 2 {
                return Err(fail("table rows must be x,phi pairs".into()));
            }
            grid.push(row[0]);
            values.push(row[1]);
        }
        return OrliczFunction::tabulated(grid, values).map_err(|e| fail(e.to_string()));
    }
    Err(fail("unrecognized descriptor".into()))
}

pub fn parse_piecewise(input: &str) -> Result<PiecewiseFunction, DescriptorError> {
    let s = input.trim();
    let fail = |reason: String| parse_err(input, reason, PIECEWISE_GRAMMAR);
    if let Some(rest) = s.strip_prefix("step:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 3 {
            return Err(fail("step takes three parameters l,r,h".into()));
        }
        let l = parse_f64(input, parts[0], PIECEWISE_GRAMMAR)?;
        let r = parse_f64(input, parts[1], PIECEWISE_GRAMMAR)?;
        let h = parse_f64(input, parts[2], PIECEWISE_GRAMMAR)?;
        return PiecewiseFunction::step(l, r, h).map_err(|e| fail(e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("tent:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(fail("tent takes two parameters a,b".into()));
        }
        let a = parse_f64(input, parts[0], PIECEWISE_GRAMMAR)?;
        let b = parse_f64(input, parts[1], PIECEWISE_GRAMMAR)?;
        return PiecewiseFunction::tent(a, b).map_err(|e| fail(e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("sum(") {
        let Some(inner) = rest.strip_suffix(')') else {
            return Err(fail("unbalanced parentheses".into()));
        };
        let mut terms: Vec<(f64, PiecewiseFunction)> = Vec::new();
        for part in split_top_level(inner, ';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (coef, desc) = match split_top_level(part, '*').as_slice() {
                [d] => (1.0, *d),
                [c, d] => (parse_f64(input, c, PIECEWISE_GRAMMAR)?, *d),
                _ => return Err(fail(format!("cannot parse term `{part}`"))),
            };
            terms.push((coef, parse_piecewise(desc)?));
        }
        if terms.is_empty() {
            return Err(fail("sum of no terms".into()));
        }
        let refs: Vec<(f64, &PiecewiseFunction)> = terms.iter().map(|(c, f)| (*c, f)).collect();
        return linear_combine(&refs).map_err(|e| fail(e.to_string()));
    }
    Err(fail("unrecognized descriptor".into()))
}

pub fn parse_catalog(input: &str) -> Result<CatalogFunction, DescriptorError> {
    let s = input.trim();
    let fail = |reason: String| parse_err(input, reason, CATALOG_GRAMMAR);
    if let Some(rest) = s.strip_prefix("biexp:") {
        let alpha = parse_f64(input, rest, CATALOG_GRAMMAR)?;
        return CatalogFunction::two_sided_exponential(alpha)
            .ok_or_else(|| fail(format!("alpha = {alpha} must be positive")));
    }
    if let Some(rest) = s.strip_prefix("gauss:") {
        let sigma = parse_f64(input, rest, CATALOG_GRAMMAR)?;
        return CatalogFunction::gaussian(sigma)
            .ok_or_else(|| fail(format!("sigma = {sigma} must be positive")));
    }
    if let Some(rest) = s.strip_prefix("sinesinc2:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(fail("sinesinc2 takes two parameters omega,w".into()));
        }
        let omega = parse_f64(input, parts[0], CATALOG_GRAMMAR)?;
        let w = parse_f64(input, parts[1], CATALOG_GRAMMAR)?;
        return CatalogFunction::sine_sinc_squared(omega, w)
            .ok_or_else(|| fail("parameters must be positive".into()));
    }
    Err(fail("unrecognized descriptor".into()))
}

/// A generator for verdicts: either grammar, piecewise tried first.
pub fn parse_generator(
    input: &str,
) -> Result<crate::completeness::GeneratorFunction, DescriptorError> {
    use crate::completeness::GeneratorFunction;
    if let Ok(pw) = parse_piecewise(input) {
        return Ok(GeneratorFunction::Piecewise(pw));
    }
    match parse_catalog(input) {
        Ok(cat) => Ok(GeneratorFunction::Catalog(cat)),
        Err(_) => Err(parse_err(
            input,
            "neither a piecewise nor a catalog descriptor".to_string(),
            PIECEWISE_GRAMMAR,
        )),
    }
}

pub fn parse_set(input: &str) -> Result<DiscreteSet, DescriptorError> {
    let s = input.trim();
    let fail = |reason: String| parse_err(input, reason, SET_GRAMMAR);
    match s {
        "sqrt" => return Ok(DiscreteSet::SqrtLattice),
        "squares" => return Ok(DiscreteSet::Squares),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("lattice:") {
        let alpha = parse_f64(input, rest, SET_GRAMMAR)?;
        return DiscreteSet::lattice(alpha)
            .ok_or_else(|| fail(format!("alpha = {alpha} must be positive")));
    }
    if let Some(rest) = s.strip_prefix("perturbed:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(fail("perturbed takes two parameters gamma,seed".into()));
        }
        let gamma = parse_f64(input, parts[0], SET_GRAMMAR)?;
        let seed: u64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| fail(format!("seed `{}` is not an integer", parts[1])))?;
        return DiscreteSet::perturbed_lattice(gamma, seed)
            .ok_or_else(|| fail(format!("gamma = {gamma} must lie in (0, 1)")));
    }
    if let Some(rest) = s.strip_prefix("finite:@") {
        let rows = read_table(rest)?;
        let mut points = Vec::with_capacity(rows.len());
        for row in rows {
            if row.is_empty() {
                continue;
            }
            points.push(row[0]);
        }
        return Ok(DiscreteSet::explicit(points));
    }
    Err(fail("unrecognized descriptor".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orlicz_round_trip() {
        for s in ["power:2", "cpower:0.5,2", "expm1", "max(power:1,power:2)"] {
            let phi = parse_orlicz(s).unwrap();
            let printed = phi.to_string();
            let reparsed = parse_orlicz(&printed).unwrap();
            assert_eq!(phi, reparsed, "{s} -> {printed}");
        }
    }

    #[test]
    fn nested_max_parses() {
        let phi = parse_orlicz("max(max(power:1,power:2),expm1)").unwrap();
        assert!(matches!(phi, OrliczFunction::MaxOf(..)));
    }

    #[test]
    fn piecewise_descriptors() {
        let f = parse_piecewise("step:0,1,1").unwrap();
        assert_eq!(f, PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap());
        let f = parse_piecewise("sum(step:0,1,1; step:1,2,1)").unwrap();
        assert_eq!(f, PiecewiseFunction::step(0.0, 2.0, 1.0).unwrap());
        let f = parse_piecewise("sum(0.5*step:0,2,1; -0.5*step:1,2,1)").unwrap();
        assert!((f.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((f.eval(1.5) - 0.0).abs() < 1e-15);
        assert!(parse_piecewise("tent:1,1").is_ok());
        assert!(parse_piecewise("bogus").is_err());
        assert!(parse_piecewise("step:1,0,1").is_err());
    }

    #[test]
    fn set_descriptors() {
        assert_eq!(parse_set("sqrt").unwrap(), DiscreteSet::SqrtLattice);
        assert_eq!(parse_set("lattice:2").unwrap(), DiscreteSet::lattice(2.0).unwrap());
        assert!(matches!(
            parse_set("perturbed:0.5,42").unwrap(),
            DiscreteSet::PerturbedLattice { .. }
        ));
        assert!(parse_set("lattice:-1").is_err());
        assert!(parse_set("perturbed:1.5,1").is_err());
    }

    #[test]
    fn table_files_load() {
        let dir = std::env::temp_dir().join("orlicz_lab_descriptor_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("phi.csv");
        std::fs::write(&path, "x,phi\n0,0\n1,1\n2,4\n").unwrap();
        let desc = format!("table:@{}", path.display());
        let phi = parse_orlicz(&desc).unwrap();
        assert!((phi.eval(1.5) - 2.5).abs() < 1e-15);

        let set_path = dir.join("pts.csv");
        std::fs::write(&set_path, "lambda\n0\n1.3\n7\n").unwrap();
        let set = parse_set(&format!("finite:@{}", set_path.display())).unwrap();
        assert_eq!(set, DiscreteSet::explicit(vec![0.0, 1.3, 7.0]));
    }

    #[test]
    fn generator_dispatch() {
        use crate::completeness::GeneratorFunction;
        assert!(matches!(
            parse_generator("step:0,1,1").unwrap(),
            GeneratorFunction::Piecewise(_)
        ));
        assert!(matches!(parse_generator("biexp:1").unwrap(), GeneratorFunction::Catalog(_)));
        assert!(parse_generator("nonsense").is_err());
    }
}
