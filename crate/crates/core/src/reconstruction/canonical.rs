//! Canonical maps between Jacobians of the same curve with moduli of equal
//! support.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::text::format_poly;
use crate::error::{Error, Result};
use crate::genus0::{reduction_map, Genus0Spec, RayClassGroup};
use crate::group::AbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalMap {
    pub exists: bool,
    /// Checked by enumerating the image at the comparison level.
    pub surjective: Option<bool>,
    pub kernel: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalReport {
    pub level: u32,
    pub orders: (u64, u64),
    pub a_to_b: CanonicalMap,
    pub b_to_a: CanonicalMap,
    pub isomorphism: bool,
    pub verdict: String,
}

fn canonical(from: &RayClassGroup, to: &RayClassGroup) -> Result<CanonicalMap> {
    if !to.modulus().divides(from.modulus(), from.field()) {
        return Ok(CanonicalMap { exists: false, surjective: None, kernel: None });
    }
    let els = from.elements()?;
    let id = to.identity_class();
    let mut image = HashSet::new();
    let mut kernel = 0u64;
    for a in &els {
        let b = reduction_map(from, to, a)?;
        if b == id {
            kernel += 1;
        }
        image.insert(b);
    }
    Ok(CanonicalMap {
        exists: true,
        surjective: Some(image.len() as u64 == to.order()),
        kernel: Some(kernel),
    })
}

pub fn verify_canonical_maps(a: &Genus0Spec, b: &Genus0Spec, level: u32, budget: u64) -> Result<CanonicalReport> {
    if a.field() != b.field() {
        return Err(Error::InvalidComparison("moduli live over different fields".into()));
    }
    let support = |s: &Genus0Spec| -> BTreeSet<Vec<u32>> {
        s.factorization()
            .factors
            .iter()
            .map(|(p, _)| p.coeffs().iter().map(|c| c.0).collect())
            .collect()
    };
    if support(a) != support(b) {
        return Err(Error::InvalidComparison(format!(
            "supports of {} and {} differ",
            format_poly(a.modulus(), a.field()),
            format_poly(b.modulus(), b.field())
        )));
    }
    let ga = RayClassGroup::new(a, level)?.with_budget(budget);
    let gb = RayClassGroup::new(b, level)?.with_budget(budget);
    let a_to_b = canonical(&ga, &gb)?;
    let b_to_a = canonical(&gb, &ga)?;
    let isomorphism = a.modulus() == b.modulus();
    let verdict = if isomorphism {
        "identity map, isomorphism".to_string()
    } else if a_to_b.exists || b_to_a.exists {
        let (src, dst) = if a_to_b.exists { (&ga, &gb) } else { (&gb, &ga) };
        format!(
            "no isomorphism: the canonical surjection shrinks order {} to {}",
            src.order(),
            dst.order()
        )
    } else {
        "no canonical map either way".to_string()
    };
    Ok(CanonicalReport { level, orders: (ga.order(), gb.order()), a_to_b, b_to_a, isomorphism, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldCtx;
    use crate::algebra::text::parse_poly;
    use crate::genus0::DEFAULT_BUDGET;

    fn spec(m: &str) -> Genus0Spec {
        let f = FieldCtx::prime(3).unwrap();
        Genus0Spec::unchecked(f.clone(), parse_poly(m, &f).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let r = verify_canonical_maps(&spec("x^2"), &spec("x^3"), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.orders, (3, 9));
        assert!(!r.a_to_b.exists);
        assert!(r.b_to_a.exists);
        assert_eq!(r.b_to_a.surjective, Some(true));
        assert_eq!(r.b_to_a.kernel, Some(3));
        assert!(!r.isomorphism);

        let r = verify_canonical_maps(&spec("x^3"), &spec("x^3"), 1, DEFAULT_BUDGET).unwrap();
        assert!(r.isomorphism);
        assert!(r.verdict.starts_with("identity"));
        assert_eq!(r.a_to_b.kernel, Some(1));
    }

    #[test]
    fn neither_divides() {
        let f = FieldCtx::prime(3).unwrap();
        let x = crate::algebra::poly::Poly::x();
        let x1 = parse_poly("x + 1", &f).unwrap();
        let m1 = x.pow(2, &f).mul(&x1, &f);
        let m2 = x.mul(&x1.pow(2, &f), &f);
        let a = Genus0Spec::new(f.clone(), m1).unwrap();
        let b = Genus0Spec::new(f.clone(), m2).unwrap();
        let r = verify_canonical_maps(&a, &b, 1, DEFAULT_BUDGET).unwrap();
        assert!(!r.a_to_b.exists && !r.b_to_a.exists);
        assert_eq!(r.orders.0, r.orders.1);
        assert!(r.verdict.contains("no canonical map"));
        assert!(matches!(
            verify_canonical_maps(&spec("x^3"), &spec("x^3 + x"), 1, DEFAULT_BUDGET),
            Err(Error::InvalidComparison(_))
        ));
    }
}
