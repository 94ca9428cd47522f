//! Line-based `key = value` curve descriptions.
//!
//! ```text
//! q = 3
//! curve = genus0
//! modulus = x^3
//! basepoint = inf
//! ```
//!
//! Elliptic curves use `a`, `b` and `modulus_points = (x1,y1);(x2,y2)`
//! instead of `modulus`, with `basepoint = O`.

use std::collections::BTreeMap;

use crate::algebra::field::{prime_power, FieldCtx};
use crate::algebra::text::{format_fe, format_poly, parse_fe, parse_poly};
use crate::elliptic::{EcPoint, EllipticSpec, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::genus0::Genus0Spec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    Genus0(Genus0Spec),
    Elliptic(EllipticSpec),
}

impl CurveSpec {
    pub fn field(&self) -> &FieldCtx {
        match self {
            CurveSpec::Genus0(s) => s.field(),
            CurveSpec::Elliptic(s) => s.field(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CurveSpec::Genus0(_) => "genus0",
            CurveSpec::Elliptic(_) => "elliptic",
        }
    }

    pub fn pi(&self) -> usize {
        match self {
            CurveSpec::Genus0(s) => s.pi(),
            CurveSpec::Elliptic(s) => s.pi(),
        }
    }

    pub fn as_genus0(&self) -> Result<&Genus0Spec> {
        match self {
            CurveSpec::Genus0(s) => Ok(s),
            CurveSpec::Elliptic(_) => {
                Err(Error::InvalidInput("this operation needs a genus0 curve".into()))
            }
        }
    }
}

const KEYS: [&str; 7] = ["q", "curve", "modulus", "basepoint", "a", "b", "modulus_points"];

/// Splits at `sep` outside brackets and parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_point(s: &str, f: &FieldCtx) -> std::result::Result<EcPoint, String> {
    let s = s.trim();
    if s == "O" {
        return Ok(EcPoint::Infinity);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("point '{s}' must look like (x,y)"))?;
    let parts = split_top(inner, ',');
    if parts.len() != 2 {
        return Err(format!("point '{s}' must have two coordinates"));
    }
    let x = parse_fe(parts[0], f).map_err(|e| e.to_string())?;
    let y = parse_fe(parts[1], f).map_err(|e| e.to_string())?;
    Ok(EcPoint::Affine(x, y))
}

pub fn parse_spec(text: &str) -> Result<CurveSpec> {
    let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let perr = |message: String| Error::Parse { line, message };
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| perr(format!("expected 'key = value', got '{content}'")))?;
        let k = k.trim();
        let key = KEYS
            .iter()
            .find(|&&known| known == k)
            .ok_or_else(|| perr(format!("unknown key '{k}'")))?;
        if entries.insert(key, (line, v.trim())).is_some() {
            return Err(perr(format!("duplicate key '{k}'")));
        }
    }
    let end = text.lines().count() + 1;
    let get = |k: &str| -> Result<(usize, &str)> {
        entries.get(k).copied().ok_or_else(|| Error::Parse {
            line: end,
            message: format!("missing key '{k}'"),
        })
    };

    let (qline, qtext) = get("q")?;
    let q: u64 = qtext
        .parse()
        .map_err(|_| Error::Parse { line: qline, message: format!("q = '{qtext}' is not an integer") })?;
    if prime_power(q).is_none() || q > u32::MAX as u64 {
        return Err(Error::Parse { line: qline, message: format!("q = {q} is not a prime power") });
    }
    let field = FieldCtx::of_order(q as u32)
        .map_err(|e| Error::Parse { line: qline, message: e.to_string() })?;

    let kind = entries.get("curve").map(|&(_, v)| v).unwrap_or("genus0");
    let kind_line = entries.get("curve").map(|&(l, _)| l).unwrap_or(end);
    let unexpected = |keys: &[&str]| -> Result<()> {
        for k in keys {
            if let Some(&(line, _)) = entries.get(k) {
                return Err(Error::Parse { line, message: format!("key '{k}' does not apply to curve = {kind}") });
            }
        }
        Ok(())
    };
    match kind {
        "genus0" => {
            unexpected(&["a", "b", "modulus_points"])?;
            if let Some(&(line, bp)) = entries.get("basepoint") {
                if bp != "inf" {
                    return Err(Error::Parse { line, message: format!("basepoint must be inf, got '{bp}'") });
                }
            }
            let (mline, mtext) = get("modulus")?;
            let m = parse_poly(mtext, &field)
                .map_err(|e| Error::Parse { line: mline, message: e.to_string() })?;
            match m.degree() {
                None | Some(0) => {
                    return Err(Error::Parse { line: mline, message: "modulus must be nonconstant".into() })
                }
                _ => {}
            }
            Ok(CurveSpec::Genus0(Genus0Spec::new(field, m)?))
        }
        "elliptic" => {
            unexpected(&["modulus"])?;
            if let Some(&(line, bp)) = entries.get("basepoint") {
                if bp != "O" {
                    return Err(Error::Parse { line, message: format!("basepoint must be O, got '{bp}'") });
                }
            }
            let fe = |k: &str| -> Result<_> {
                let (line, t) = get(k)?;
                parse_fe(t, &field).map_err(|e| Error::Parse { line, message: e.to_string() })
            };
            let curve = WeierstrassCurve::new(field.clone(), fe("a")?, fe("b")?)?;
            let (pline, ptext) = get("modulus_points")?;
            let points = split_top(ptext, ';')
                .into_iter()
                .map(|s| parse_point(s, &field))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|message| Error::Parse { line: pline, message })?;
            Ok(CurveSpec::Elliptic(EllipticSpec::new(curve, points)?))
        }
        other => Err(Error::Parse {
            line: kind_line,
            message: format!("curve must be genus0 or elliptic, got '{other}'"),
        }),
    }
}

pub fn emit_spec(spec: &CurveSpec) -> String {
    let f = spec.field();
    match spec {
        CurveSpec::Genus0(s) => format!(
            "q = {}\ncurve = genus0\nmodulus = {}\nbasepoint = inf\n",
            f.size(),
            format_poly(s.modulus(), f)
        ),
        CurveSpec::Elliptic(s) => {
            let pts: Vec<String> = s.modulus_points().iter().map(|p| p.format(f)).collect();
            format!(
                "q = {}\ncurve = elliptic\na = {}\nb = {}\nmodulus_points = {}\nbasepoint = O\n",
                f.size(),
                format_fe(s.curve().a(), f),
                format_fe(s.curve().b(), f),
                pts.join(";")
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use crate::algebra::field::Fe;
    use crate::algebra::poly::Poly;

    #[test]
    fn genus0_examples() {
        let s = parse_spec("q=3\ncurve=genus0\nmodulus=x^3\n").unwrap();
        assert_eq!(s.pi(), 2);
        assert_eq!(s.kind(), "genus0");
        let s = parse_spec("q = 3\ncurve = genus0\nmodulus = x^3 + x\nbasepoint = inf").unwrap();
        assert_eq!(s.as_genus0().unwrap().degree(), 3);
        assert!(matches!(
            parse_spec("q=3\ncurve=genus0\nmodulus=x^2"),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("q=3\nmodulus x^3", 2),
            ("q=3\n\n# c\nfoo = 1", 4),
            ("q=6\nmodulus=x^3", 1),
            ("q=3\nmodulus=x^3\nmodulus=x^4", 3),
            ("q=3\nmodulus=x^3 +", 2),
            ("q=3\ncurve=hyper\nmodulus=x^3", 2),
            ("q=3\nmodulus=x^3\nbasepoint=0", 3),
            ("q=3\nmodulus=x^3\na=1", 3),
            ("q=3", 2),
        ];
        for (text, line) in cases {
            match parse_spec(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn elliptic_spec() {
        let text = "q = 5\ncurve = elliptic\na = 1\nb = 0\nmodulus_points = (0,0);(2,0)\n";
        let s = parse_spec(text).unwrap();
        assert_eq!(emit_spec(&s), format!("{text}basepoint = O\n"));
        let CurveSpec::Elliptic(e) = &s else { panic!() };
        assert_eq!(e.modulus_points(), &[EcPoint::Affine(Fe(0), Fe(0)), EcPoint::Affine(Fe(2), Fe(0))]);
        assert!(matches!(
            parse_spec("q=5\ncurve=elliptic\na=1\nb=0\nmodulus_points=(0,0);(1,1)"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            parse_spec("q=5\ncurve=elliptic\na=0\nb=0\nmodulus_points=(0,0);(2,0)"),
            Err(Error::InvalidCurve(_))
        ));
        assert!(matches!(
            parse_spec("q=5\ncurve=elliptic\na=1\nb=0\nmodulus_points=(0,0)"),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            parse_spec("q=5\ncurve=elliptic\na=1\nb=0\nmodulus_points=(0,0;(2,0)"),
            Err(Error::Parse { line: 5, .. })
        ));
    }

    proptest! {
        #[test]
        fn round_trip_genus0(q in prop::sample::select(vec![2u32, 3, 4, 5, 9]), seed in prop::collection::vec(0u32..1000, 3..6)) {
            let f = FieldCtx::of_order(q).unwrap();
            let mut c: Vec<Fe> = seed.iter().map(|&s| Fe(s % q)).collect();
            c.push(Fe::ONE);
            let spec = CurveSpec::Genus0(Genus0Spec::new(f, Poly::new(c)).unwrap());
            let text = emit_spec(&spec);
            let back = parse_spec(&text).unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(emit_spec(&back), text);
        }
    }
}
