//! Weight assignments given on the command line.

use std::collections::BTreeMap;
use std::path::Path;

use segcount::motzkin::{named_weights, WeightKind};
use segcount::{Error, Family, Rational, Result, WeightRule, WeightSpec, WeightValue};

/// Parses `all-ones`, `symbolic`, a named kind such as `b-ary:b=2,d=1`, or
/// `csv:<file>`.
pub fn parse_weights(spec: &str) -> Result<WeightSpec> {
    match spec.strip_prefix("csv:") {
        Some(path) => load_csv(Path::new(path)),
        None => Ok(named_weights(&spec.parse::<WeightKind>()?)),
    }
}

/// Reads rows `family,index,numerator,denominator`; indices that are not
/// listed get weight zero.
pub fn load_csv(path: &Path) -> Result<WeightSpec> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut t = BTreeMap::new();
    let mut s = BTreeMap::new();
    for (line, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if line == 0 && row.get(0) == Some("family") {
            continue;
        }
        let bad = || Error::Parse(format!("{}: row {} is not family,index,numerator,denominator", path.display(), line + 1));
        if row.len() != 4 {
            return Err(bad());
        }
        let index: u32 = row[1].parse().map_err(|_| bad())?;
        let num: i64 = row[2].parse().map_err(|_| bad())?;
        let den: i64 = row[3].parse().map_err(|_| bad())?;
        if index == 0 || den == 0 {
            return Err(bad());
        }
        let value = Rational::new(num.into(), den.into());
        let target = match &row[0] {
            "t" => &mut t,
            "s" => &mut s,
            _ => return Err(bad()),
        };
        if target.insert(index, value).is_some() {
            return Err(Error::Parse(format!("{}: index {index} listed twice for {}", path.display(), &row[0])));
        }
    }
    let rule = |family: Family, table: BTreeMap<u32, Rational>| {
        WeightRule::new(format!("csv {}", family_name(family)), move |i| {
            table.get(&i).cloned().map_or_else(WeightValue::zero, WeightValue::Number)
        })
    };
    Ok(WeightSpec::new(rule(Family::T, t), rule(Family::S, s)))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::T => "t",
        Family::S => "s",
    }
}
