//! Parsing of command-line operands beyond plain polynomials.

use quatslice::error::{Error, Result};
use quatslice::point::ArrangedOrbit;
use quatslice::rational::parse_rational;
use quatslice::split::{frame_catalog, SliceFrame};
use quatslice::variety::SetEntry;
use quatslice::{Quaternion, Rational};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: 0,
        msg: msg.into(),
    }
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s.trim()).ok_or_else(|| parse_err(format!("not a rational number: {s:?}")))
}

/// `(a1, ..., an)` or `a1, ..., an`.
pub fn point(s: &str) -> Result<Vec<Quaternion>> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner.split(',').map(|c| Quaternion::parse(c.trim())).collect()
}

/// `S[(x1,y1),...,(xn,yn)]`, where `y` may be `c*sqrt(r)` with one common `r`.
pub fn orbit(s: &str) -> Result<ArrangedOrbit> {
    let body = s
        .trim()
        .strip_prefix("S[")
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| parse_err(format!("expected S[(x,y),...], got {s:?}")))?;
    let body = body.trim().trim_start_matches('(').trim_end_matches(')');
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut radicand: Option<String> = None;
    for pair in body.split("),") {
        let pair = pair.trim().trim_start_matches('(');
        let (x, y) = pair
            .split_once(',')
            .ok_or_else(|| parse_err(format!("bad orbit entry {pair:?}")))?;
        xs.push(rational(x)?);
        match y.split_once("*sqrt(") {
            Some((c, r)) => {
                let r = r.trim_end_matches(')').trim().to_string();
                if radicand.as_ref().is_some_and(|r0| *r0 != r) {
                    return Err(parse_err("orbit entries must share one radicand"));
                }
                radicand = Some(r);
                ys.push(rational(c)?);
            }
            None => ys.push(rational(y)?),
        }
    }
    let r = radicand.unwrap_or_else(|| "1".into());
    let r = r.parse().map_err(|_| parse_err(format!("bad radicand {r:?}")))?;
    ArrangedOrbit::new(xs, ys, r)
}

pub fn set_entry(s: &str) -> Result<SetEntry> {
    if s.trim_start().starts_with("S[") {
        Ok(SetEntry::Orbit(orbit(s)?))
    } else {
        Ok(SetEntry::Point(point(s)?))
    }
}

/// `builtin`, or frames `J,J'` separated by `;`.
pub fn catalog(s: &str) -> Result<Vec<SliceFrame>> {
    if s.trim() == "builtin" {
        return Ok(frame_catalog());
    }
    s.split(';')
        .map(|f| {
            let (j, jp) = f
                .split_once(',')
                .ok_or_else(|| parse_err(format!("expected J,J' in {f:?}")))?;
            SliceFrame::new(Quaternion::parse(j.trim())?, Quaternion::parse(jp.trim())?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points_and_orbits() {
        assert_eq!(
            point("(i, 2 - k)").unwrap(),
            vec![Quaternion::i(), Quaternion::from_ints(2, 0, 0, -1)]
        );
        let o = orbit("S[(0,1),(1/2,-1)]").unwrap();
        assert_eq!(o.to_string(), "S[(0,1),(1/2,-1)]");
        let o = orbit("S[(0,1*sqrt(2)),(0,3*sqrt(2))]").unwrap();
        assert_eq!(o.to_string(), "S[(0,1*sqrt(2)),(0,3*sqrt(2))]");
        assert!(orbit("S[(0,1*sqrt(2)),(0,sqrt(3))]").is_err());
        assert!(matches!(set_entry("S[(0,1)]").unwrap(), SetEntry::Orbit(_)));
    }

    #[test]
    fn parses_catalogs() {
        assert_eq!(catalog("builtin").unwrap().len(), frame_catalog().len());
        assert_eq!(catalog("i,j; 3/5i + 4/5j, -4/5i + 3/5j").unwrap().len(), 2);
        assert!(matches!(catalog("i,i"), Err(Error::InvalidFrame(_))));
    }
}
