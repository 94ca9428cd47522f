//! Line functions `g_{P,Q}` with divisor `(P) + (Q) - (P+Q) - (O)` and
//! their local behaviour at affine points, via power series in a local
//! uniformizer: `x - x0`, or `y` where `y0 = 0`.

use crate::algebra::field::{Fe, FieldCtx};
use crate::elliptic::curve::{EcPoint, WeierstrassCurve};
use crate::error::{Error, Result};

/// Series precision; every line or vertical has order at most 6 at a
/// point when expanded in `y` and at most 3 in `x - x0`.
const PREC: usize = 8;

type Series = Vec<Fe>;

fn s_mul(a: &Series, b: &Series, f: &FieldCtx) -> Series {
    let mut out = vec![Fe::ZERO; PREC];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(PREC - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn s_lin(a: &Series, ca: Fe, b: &Series, cb: Fe, f: &FieldCtx) -> Series {
    a.iter().zip(b).map(|(&x, &y)| f.add(f.mul(ca, x), f.mul(cb, y))).collect()
}

fn s_const(c: Fe) -> Series {
    let mut s = vec![Fe::ZERO; PREC];
    s[0] = c;
    s
}

/// `x` and `y` as series in the uniformizer at an affine point.
pub fn local_expansion(curve: &WeierstrassCurve, at: &EcPoint) -> Result<(Series, Series)> {
    let f = curve.field();
    let EcPoint::Affine(x0, y0) = *at else {
        return Err(Error::InvalidInput("expansions are taken at affine points".into()));
    };
    if !curve.contains(at) {
        return Err(Error::InvalidInput("expansion point is not on the curve".into()));
    }
    if !y0.is_zero() {
        let mut xs = s_const(x0);
        xs[1] = Fe::ONE;
        // y^2 = rhs(x0 + u), solved coefficientwise
        let rhs = {
            let x2 = s_mul(&xs, &xs, f);
            let x3 = s_mul(&x2, &xs, f);
            let ax = s_lin(&xs, curve.a(), &s_const(curve.b()), Fe::ONE, f);
            s_lin(&x3, Fe::ONE, &ax, Fe::ONE, f)
        };
        let mut ys = s_const(y0);
        let two_y0_inv = f.inv(f.add(y0, y0))?;
        for n in 1..PREC {
            let mut acc = rhs[n];
            for i in 1..n {
                acc = f.sub(acc, f.mul(ys[i], ys[n - i]));
            }
            ys[n] = f.mul(acc, two_y0_inv);
        }
        Ok((xs, ys))
    } else {
        // x = x0 + w with c1 w + c2 w^2 + w^3 = y^2
        let c1 = f.add(f.mul(f.from_int(3), f.mul(x0, x0)), curve.a());
        let c2 = f.mul(f.from_int(3), x0);
        let c1_inv = f.inv(c1).map_err(|_| Error::InvalidCurve("singular point".into()))?;
        let mut y2 = vec![Fe::ZERO; PREC];
        y2[2] = Fe::ONE;
        let mut w = vec![Fe::ZERO; PREC];
        for _ in 0..PREC {
            let w2 = s_mul(&w, &w, f);
            let w3 = s_mul(&w2, &w, f);
            let rest = s_lin(&w2, c2, &w3, Fe::ONE, f);
            w = s_lin(&y2, c1_inv, &rest, f.neg(c1_inv), f);
        }
        let mut xs = w;
        xs[0] = x0;
        let mut ys = vec![Fe::ZERO; PREC];
        ys[1] = Fe::ONE;
        Ok((xs, ys))
    }
}

/// A function `c0 + cx x + cy y`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Linear {
    c0: Fe,
    cx: Fe,
    cy: Fe,
}

impl Linear {
    fn one() -> Linear {
        Linear { c0: Fe::ONE, cx: Fe::ZERO, cy: Fe::ZERO }
    }

    /// `x - c`.
    fn vertical(c: Fe, f: &FieldCtx) -> Linear {
        Linear { c0: f.neg(c), cx: Fe::ONE, cy: Fe::ZERO }
    }

    /// Order and leading coefficient at the expansion point.
    fn leading(&self, xs: &Series, ys: &Series, f: &FieldCtx) -> Result<(usize, Fe)> {
        let s = s_lin(&s_lin(&s_const(self.c0), Fe::ONE, xs, self.cx, f), Fe::ONE, ys, self.cy, f);
        s.iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .ok_or_else(|| Error::NumericalFailure("line function vanishes to full precision".into()))
    }
}

/// `g_{P,Q} = line(P, Q) / vertical(P + Q)`, normalized so that the line
/// is monic in `y`, and `g_{P,O} = 1`.
fn line_parts(curve: &WeierstrassCurve, p: &EcPoint, q: &EcPoint) -> (Linear, Linear) {
    let f = curve.field();
    match (*p, *q) {
        (EcPoint::Infinity, _) | (_, EcPoint::Infinity) => (Linear::one(), Linear::one()),
        (EcPoint::Affine(xp, yp), _) => match curve.slope(p, q) {
            None => (Linear::vertical(xp, f), Linear::one()),
            Some(l) => {
                let line = Linear { c0: f.sub(f.mul(l, xp), yp), cx: f.neg(l), cy: Fe::ONE };
                let EcPoint::Affine(xr, _) = curve.add(p, q) else {
                    unreachable!("a non-vertical chord meets the curve in an affine third point")
                };
                (line, Linear::vertical(xr, f))
            }
        },
    }
}

/// Order and leading coefficient of `g_{P,Q}` at an affine point.
pub fn line_leading(curve: &WeierstrassCurve, p: &EcPoint, q: &EcPoint, at: &EcPoint) -> Result<(i64, Fe)> {
    let (xs, ys) = local_expansion(curve, at)?;
    line_leading_with(curve, p, q, &xs, &ys)
}

pub(crate) fn line_leading_with(
    curve: &WeierstrassCurve,
    p: &EcPoint,
    q: &EcPoint,
    xs: &Series,
    ys: &Series,
) -> Result<(i64, Fe)> {
    let f = curve.field();
    let (num, den) = line_parts(curve, p, q);
    let (on, cn) = num.leading(xs, ys, f)?;
    let (od, cd) = den.leading(xs, ys, f)?;
    Ok((on as i64 - od as i64, f.div(cn, cd)?))
}

/// Value of `g_{P,Q}` at an affine point that is neither a zero nor a pole.
pub fn miller_line_eval(curve: &WeierstrassCurve, p: &EcPoint, q: &EcPoint, at: &EcPoint) -> Result<Fe> {
    match line_leading(curve, p, q, at)? {
        (0, v) => Ok(v),
        _ => Err(Error::EvaluationAtSupport),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: i64, b: i64, q: u32) -> WeierstrassCurve {
        let f = FieldCtx::of_order(q).unwrap();
        WeierstrassCurve::new(f.clone(), f.from_int(a), f.from_int(b)).unwrap()
    }

    /// Direct evaluation of `line / vertical` from the definition.
    fn direct(e: &WeierstrassCurve, p: &EcPoint, q: &EcPoint, at: &EcPoint) -> Option<Fe> {
        let f = e.field();
        let EcPoint::Affine(xa, ya) = *at else { return None };
        let (EcPoint::Affine(xp, yp), EcPoint::Affine(..)) = (*p, *q) else {
            return Some(Fe::ONE);
        };
        match e.slope(p, q) {
            None => Some(f.sub(xa, xp)),
            Some(l) => {
                let EcPoint::Affine(xr, _) = e.add(p, q) else { unreachable!() };
                let num = f.sub(f.sub(ya, yp), f.mul(l, f.sub(xa, xp)));
                f.div(num, f.sub(xa, xr)).ok()
            }
        }
    }

    #[test]
    fn examples() {
        let e = curve(1, 0, 5);
        let f = e.field().clone();
        let pts = e.points();
        let at = EcPoint::Affine(Fe(2), Fe(0));
        let p = EcPoint::Affine(Fe(3), Fe(0));
        // Q = -P: the vertical through P
        assert_eq!(miller_line_eval(&e, &p, &e.neg(&p), &at).unwrap(), f.sub(Fe(2), Fe(3)));
        for q in &pts {
            assert_eq!(miller_line_eval(&e, &EcPoint::Infinity, q, &at).unwrap(), Fe::ONE);
        }
        // at a zero of the line
        assert_eq!(miller_line_eval(&e, &at, &p, &at), Err(Error::EvaluationAtSupport));
    }

    #[test]
    fn agrees_with_direct_evaluation() {
        for (a, b, q) in [(1, 0, 25), (2, 3, 7), (1, 1, 11)] {
            let e = curve(a, b, q);
            let pts = e.points();
            for p in pts.iter().step_by(3) {
                for qq in pts.iter().step_by(2) {
                    for at in pts.iter().skip(1).step_by(5) {
                        match (miller_line_eval(&e, p, qq, at), direct(&e, p, qq, at)) {
                            (Ok(v), Some(w)) => assert_eq!(v, w),
                            (Err(Error::EvaluationAtSupport), _) => {}
                            // 0/0 at -(P+Q), where the quotient is still a unit
                            (Ok(v), None) => assert!(!v.is_zero()),
                            (Err(err), _) => panic!("{err}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orders_match_the_divisor() {
        // ord_at g = [at = P] + [at = Q] - [at = P+Q]
        let e = curve(1, 0, 25);
        let pts = e.points();
        for p in pts.iter().skip(1).step_by(4) {
            for q in pts.iter().skip(1).step_by(3) {
                let r = e.add(p, q);
                for at in pts.iter().skip(1) {
                    let (ord, _) = line_leading(&e, p, q, at).unwrap();
                    let expect = (at == p) as i64 + (at == q) as i64 - (at == &r) as i64;
                    assert_eq!(ord, expect, "P={p:?} Q={q:?} at={at:?}");
                }
            }
        }
    }
}
