//! Argument value parsers: reals with `pi`, grids and lists.

use std::f64::consts::PI;

use ptcs::GridSpec;

/// A real number, optionally written with `pi`: `1.5`, `pi`, `2pi`,
/// `2*pi`, `pi/2`, `3*pi/4`, `-pi`.
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let bad = || format!("invalid number '{s}'");
    let Some(idx) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let head = t[..idx].trim_end_matches('*');
    let tail = &t[idx + 2..];
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .ok_or_else(bad)?
            .parse::<f64>()
            .map_err(|_| bad())?,
    };
    let v = factor * PI / divisor;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// `start:stop:count`.
pub fn grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("grid must be start:stop:count, got '{s}'"));
    };
    let count = n
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("invalid grid count '{n}'"))?;
    GridSpec::new(real(a)?, real(b)?, count).map_err(|e| e.to_string())
}

/// Comma-separated reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

pub fn real_list(s: &str) -> Result<RealList, String> {
    s.split(',')
        .map(real)
        .collect::<Result<_, _>>()
        .map(RealList)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals() {
        assert_eq!(real("1.5").unwrap(), 1.5);
        assert_eq!(real("pi").unwrap(), PI);
        assert_eq!(real("2pi").unwrap(), 2.0 * PI);
        assert_eq!(real("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(real("pi/2").unwrap(), PI / 2.0);
        assert_eq!(real("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(real("-pi").unwrap(), -PI);
        assert!(real("pie").is_err());
        assert!(real("x").is_err());
        assert!(real("pi/0").is_err());
    }

    #[test]
    fn grids() {
        let g = grid("0:pi:5").unwrap();
        assert_eq!(g.points().len(), 5);
        assert_eq!(*g.points().last().unwrap(), PI);
        assert!(grid("0:pi").is_err());
        assert!(grid("1:0:5").is_err());
        assert!(grid("0:1:1").is_err());
        assert_eq!(real_list("0.5,2,pi").unwrap().0, vec![0.5, 2.0, PI]);
    }
}
