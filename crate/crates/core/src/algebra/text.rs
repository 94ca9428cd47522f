//! Text syntax for polynomials: `x^3 + 2*x + 1`. Coefficients are decimal
//! integers reduced mod `p`; over an extension field a coefficient is
//! written as its vector over `F_p`, `[c0,c1,...]`.

use crate::algebra::field::{Fe, FieldCtx};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

pub fn format_fe(a: Fe, ctx: &FieldCtx) -> String {
    if ctx.is_prime_field() {
        return a.0.to_string();
    }
    let mut c = ctx.coeffs(a);
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    let inner: Vec<String> = c.iter().map(|d| d.to_string()).collect();
    format!("[{}]", inner.join(","))
}

pub fn format_poly(f: &Poly, ctx: &FieldCtx) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (d, &c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{d}"),
        };
        terms.push(match (d, c == Fe::ONE) {
            (0, _) => format_fe(c, ctx),
            (_, true) => mono,
            (_, false) => format!("{}*{}", format_fe(c, ctx), mono),
        });
    }
    terms.join(" + ")
}

pub fn parse_fe(s: &str, ctx: &FieldCtx) -> Result<Fe> {
    let s = s.trim();
    let bad = |m: &str| Error::InvalidInput(format!("bad field element '{s}': {m}"));
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
        let digits = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map(|v| v.rem_euclid(ctx.p() as i64) as u32)
                    .map_err(|_| bad("not an integer"))
            })
            .collect::<Result<Vec<u32>>>()?;
        return ctx.from_coeffs(&digits);
    }
    let v: i64 = s.parse().map_err(|_| bad("not an integer"))?;
    Ok(ctx.from_int(v))
}

pub fn parse_poly(s: &str, ctx: &FieldCtx) -> Result<Poly> {
    let bad = |m: String| Error::InvalidInput(format!("bad polynomial '{}': {m}", s.trim()));
    // split into signed terms at top-level '+' / '-'
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    terms.push((negative, cur.trim().to_string()));
                } else if !terms.is_empty() || negative {
                    return Err(bad("dangling sign".into()));
                }
                cur.clear();
                negative = ch == '-';
            }
            c if c.is_whitespace() => {}
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(bad("empty term".into()));
    }
    terms.push((negative, cur.trim().to_string()));

    let mut coeffs: Vec<Fe> = Vec::new();
    for (neg, term) in terms {
        let (coef, degree) = match term.find('x') {
            None => (parse_fe(&term, ctx)?, 0usize),
            Some(pos) => {
                let head = term[..pos].trim_end_matches('*');
                let coef = if head.is_empty() { Fe::ONE } else { parse_fe(head, ctx)? };
                let tail = &term[pos + 1..];
                let degree = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .ok_or_else(|| bad(format!("unexpected '{tail}'")))?
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad exponent in '{term}'")))?
                };
                (coef, degree)
            }
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, Fe::ZERO);
        }
        let c = if neg { ctx.neg(coef) } else { coef };
        coeffs[degree] = ctx.add(coeffs[degree], c);
    }
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(parse_poly("x^3 + 2*x + 1", &f3).unwrap(), Poly::from_ints(&f3, &[1, 2, 0, 1]));
        assert_eq!(parse_poly("x^3 - 1", &f3).unwrap(), Poly::from_ints(&f3, &[2, 0, 0, 1]));
        assert_eq!(parse_poly("5x^2+x", &f3).unwrap(), Poly::from_ints(&f3, &[0, 1, 2]));
        assert!(parse_poly("x^", &f3).is_err());
        assert!(parse_poly("", &f3).is_err());
        assert!(parse_poly("x + + 1", &f3).is_err());

        let f9 = FieldCtx::new(3, 2).unwrap();
        let g = parse_poly("x^2 + [0,1]*x + [2]", &f9).unwrap();
        assert_eq!(g.coeff(1), f9.from_coeffs(&[0, 1]).unwrap());
        assert_eq!(format_poly(&g, &f9), "x^2 + [0,1]*x + [2]");
    }

    #[test]
    fn format_examples() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(format_poly(&Poly::from_ints(&f3, &[1, 2, 0, 1]), &f3), "x^3 + 2*x + 1");
        assert_eq!(format_poly(&Poly::zero(), &f3), "0");
    }

    proptest! {
        #[test]
        fn roundtrip(coeffs in proptest::collection::vec(0u32..9, 0..7)) {
            let f9 = FieldCtx::new(3, 2).unwrap();
            let f = Poly::new(coeffs.into_iter().map(Fe).collect());
            prop_assert_eq!(parse_poly(&format_poly(&f, &f9), &f9).unwrap(), f);
        }
    }
}
