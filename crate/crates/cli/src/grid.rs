//! Grid specifications on the command line.
//!
//! `default` selects the standard grid. Otherwise the argument has the form
//! `x=1e4,1e5;y=2log,log^1.5,1000`, where a y entry is an absolute value,
//! `Clog` for ⌈C·log x⌉ or `log^A` for ⌈(log x)^A⌉.

use anyhow::{anyhow, bail, Context, Result};
use friable::approx::{ScanGrid, YSpec};
use friable::primes::CountBudget;

pub fn parse_grid(spec: &str, budget: CountBudget) -> Result<ScanGrid> {
    if spec.trim() == "default" {
        return Ok(ScanGrid {
            budget,
            ..ScanGrid::default_grid()
        });
    }
    let mut xs = None;
    let mut ys = None;
    for part in spec.split(';') {
        let (key, list) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("grid part {part:?} is not KEY=LIST"))?;
        match key.trim() {
            "x" => {
                xs = Some(
                    list.split(',')
                        .map(parse_number)
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "y" => ys = Some(list.split(',').map(parse_y).collect::<Result<Vec<_>>>()?),
            other => bail!("unknown grid key {other:?}"),
        }
    }
    let x_values = xs.ok_or_else(|| anyhow!("grid spec has no x list"))?;
    let y_rule = ys.ok_or_else(|| anyhow!("grid spec has no y list"))?;
    if x_values.iter().any(|&x| !(x >= 4.0)) {
        bail!("grid x values must be at least 4");
    }
    Ok(ScanGrid {
        x_values,
        y_rule,
        budget,
    })
}

fn parse_number(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .with_context(|| format!("{s:?} is not a number"))?;
    if !v.is_finite() {
        bail!("{s:?} is not finite");
    }
    Ok(v)
}

fn parse_y(s: &str) -> Result<YSpec> {
    let s = s.trim();
    if let Some(a) = s.strip_prefix("log^") {
        return Ok(YSpec::LogPower(parse_number(a)?));
    }
    if let Some(c) = s.strip_suffix("log") {
        let c = if c.is_empty() { 1.0 } else { parse_number(c)? };
        return Ok(YSpec::LogMultiple(c));
    }
    Ok(YSpec::Absolute(parse_number(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        let b = CountBudget::default();
        assert_eq!(parse_grid("default", b).unwrap(), ScanGrid::default_grid());
        let g = parse_grid("x=1e4,1e5;y=2log,log^1.5,log,1000", b).unwrap();
        assert_eq!(g.x_values, vec![1e4, 1e5]);
        assert_eq!(
            g.y_rule,
            vec![
                YSpec::LogMultiple(2.0),
                YSpec::LogPower(1.5),
                YSpec::LogMultiple(1.0),
                YSpec::Absolute(1000.0)
            ]
        );
        assert!(parse_grid("x=1e4", b).is_err());
        assert!(parse_grid("x=abc;y=10", b).is_err());
        assert!(parse_grid("z=1;y=10", b).is_err());
    }
}
