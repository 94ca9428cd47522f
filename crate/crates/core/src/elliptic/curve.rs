//! Short Weierstrass curves `y^2 = x^3 + a x + b` over `F_q`, `p > 3`.

use crate::algebra::field::{Fe, FieldCtx};
use crate::algebra::text::format_fe;
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EcPoint {
    Infinity,
    Affine(Fe, Fe),
}

impl EcPoint {
    pub fn format(&self, f: &FieldCtx) -> String {
        match self {
            EcPoint::Infinity => "O".to_string(),
            EcPoint::Affine(x, y) => format!("({},{})", format_fe(*x, f), format_fe(*y, f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    field: FieldCtx,
    a: Fe,
    b: Fe,
}

impl WeierstrassCurve {
    pub fn new(field: FieldCtx, a: Fe, b: Fe) -> Result<WeierstrassCurve> {
        if field.p() <= 3 {
            return Err(Error::InvalidCurve(format!(
                "characteristic {} is not supported (need p > 3)",
                field.p()
            )));
        }
        let f = &field;
        let a3 = f.mul(f.mul(a, a), a);
        let disc = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.mul(b, b)));
        if disc.is_zero() {
            return Err(Error::InvalidCurve("4a^3 + 27b^2 = 0".into()));
        }
        Ok(WeierstrassCurve { field, a, b })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn a(&self) -> Fe {
        self.a
    }

    pub fn b(&self) -> Fe {
        self.b
    }

    /// The same equation over a larger field, via an embedding table.
    pub fn base_change(&self, field: FieldCtx, embed: &[Fe]) -> WeierstrassCurve {
        WeierstrassCurve { field, a: embed[self.a.0 as usize], b: embed[self.b.0 as usize] }
    }

    /// `x^3 + a x + b`.
    pub fn rhs(&self, x: Fe) -> Fe {
        let f = &self.field;
        f.add(f.mul(f.add(f.mul(x, x), self.a), x), self.b)
    }

    pub fn contains(&self, p: &EcPoint) -> bool {
        match *p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &EcPoint) -> EcPoint {
        match *p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x, self.field.neg(y)),
        }
    }

    /// Slope of the chord or tangent through `p, q`, or `None` for a
    /// vertical line.
    pub fn slope(&self, p: &EcPoint, q: &EcPoint) -> Option<Fe> {
        let f = &self.field;
        match (*p, *q) {
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => {
                if x1 != x2 {
                    Some(f.div(f.sub(y2, y1), f.sub(x2, x1)).unwrap())
                } else if y1 == y2 && !y1.is_zero() {
                    let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a);
                    Some(f.div(num, f.add(y1, y1)).unwrap())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> EcPoint {
        let f = &self.field;
        match (*p, *q) {
            (EcPoint::Infinity, _) => *q,
            (_, EcPoint::Infinity) => *p,
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, _)) => match self.slope(p, q) {
                None => EcPoint::Infinity,
                Some(l) => {
                    let x3 = f.sub(f.sub(f.mul(l, l), x1), x2);
                    let y3 = f.sub(f.mul(l, f.sub(x1, x3)), y1);
                    EcPoint::Affine(x3, y3)
                }
            },
        }
    }

    pub fn mul(&self, p: &EcPoint, mut n: u64) -> EcPoint {
        let mut acc = EcPoint::Infinity;
        let mut base = *p;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// All rational points, `O` first, then affine points by encoding.
    pub fn points(&self) -> Vec<EcPoint> {
        let f = &self.field;
        let mut out = vec![EcPoint::Infinity];
        for x in f.elements() {
            if let Some(y) = f.sqrt(self.rhs(x)) {
                let z = f.neg(y);
                out.push(EcPoint::Affine(x, y.min(z)));
                if z != y {
                    out.push(EcPoint::Affine(x, y.max(z)));
                }
            }
        }
        out
    }
}
