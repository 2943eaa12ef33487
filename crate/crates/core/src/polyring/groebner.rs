//! Buchberger's algorithm under the weighted degree-then-lex order.

use std::collections::BTreeSet;

use num_traits::One;

use super::poly::{GradedPoly, Monomial};
use super::PolyError;
use crate::Q;

/// Full remainder of `p` modulo a list of monic polynomials.
pub(crate) fn reduce(p: &GradedPoly, basis: &[GradedPoly]) -> GradedPoly {
    let mut p = p.clone();
    let mut rem = GradedPoly::zero(p.vars());
    while let Some((m, c)) = p.pop_leading() {
        let divisor = basis
            .iter()
            .find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, _) = g.leading().expect("nonzero");
                let quot = lm.quotient_of(&m);
                let mut tail = g.clone();
                tail.pop_leading();
                p.add_scaled(&tail, &quot, &-c);
            }
            None => rem.push_term(m, c),
        }
    }
    rem
}

fn s_poly(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    let (la, ca) = a.leading().expect("nonzero");
    let (lb, cb) = b.leading().expect("nonzero");
    let l = la.lcm(lb, a.vars());
    let mut s = a.mul_term(&la.quotient_of(&l), &(Q::one() / ca));
    s.add_scaled(b, &lb.quotient_of(&l), &-(Q::one() / cb));
    s
}

/// Reduced Gröbner basis of a homogeneous ideal, sorted by leading monomial.
pub fn groebner_basis(relations: &[GradedPoly]) -> Result<Vec<GradedPoly>, PolyError> {
    for r in relations {
        if !r.is_homogeneous() {
            return Err(PolyError::NotHomogeneous(r.to_string()));
        }
    }
    Ok(buchberger(relations))
}

/// Same as [`groebner_basis`] without the homogeneity requirement; the order
/// is still a well-order, so the algorithm terminates.
pub(crate) fn buchberger(relations: &[GradedPoly]) -> Vec<GradedPoly> {
    let mut basis: Vec<GradedPoly> = Vec::new();
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let add = |p: GradedPoly, basis: &mut Vec<GradedPoly>, pairs: &mut BTreeSet<(Monomial, usize, usize)>| {
        let p = p.monic();
        let (lp, _) = p.leading().expect("nonzero");
        for (i, g) in basis.iter().enumerate() {
            let (lg, _) = g.leading().expect("nonzero");
            pairs.insert((lg.lcm(lp, p.vars()), i, basis.len()));
        }
        basis.push(p);
    };
    for r in relations {
        let r = reduce(r, &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs);
        }
    }
    while let Some((_, i, j)) = pairs.pop_first() {
        let (li, _) = basis[i].leading().expect("nonzero");
        let (lj, _) = basis[j].leading().expect("nonzero");
        if li.is_coprime(lj) {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs);
        }
    }
    interreduce(basis)
}

fn interreduce(mut basis: Vec<GradedPoly>) -> Vec<GradedPoly> {
    basis.sort_by(|a, b| a.leading().map(|t| t.0).cmp(&b.leading().map(|t| t.0)));
    let mut minimal: Vec<GradedPoly> = Vec::new();
    for g in basis {
        let (lg, _) = g.leading().expect("nonzero");
        if !minimal
            .iter()
            .any(|h| h.leading().is_some_and(|(lh, _)| lh.divides(lg)))
        {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GradedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut g = minimal[i].clone();
        let (lm, lc) = g.pop_leading().expect("nonzero");
        let mut reduced = reduce(&g, &others);
        reduced.push_term(lm, lc);
        out.push(reduced.monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly::{parse_poly, Variables};

    #[test]
    fn small_bases() {
        let v = Variables::new([("x", 2)]).unwrap();
        let g = groebner_basis(&[parse_poly(&v, "x^2").unwrap()]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_string(), "x^2");
        assert!(groebner_basis(&[]).unwrap().is_empty());
    }

    #[test]
    fn bundle_example_closes_s_polynomials() {
        let v = Variables::new([("f", 2), ("x", 2)]).unwrap();
        let rels = [parse_poly(&v, "f^2 - f*x").unwrap(), parse_poly(&v, "x^2").unwrap()];
        let g = groebner_basis(&rels).unwrap();
        let shown: Vec<String> = g.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["x^2", "f^2 - f*x"]);
        for a in &g {
            for b in &g {
                if a != b {
                    assert!(reduce(&s_poly(a, b), &g).is_zero());
                }
            }
        }
    }

    #[test]
    fn rejects_inhomogeneous() {
        let v = Variables::new([("x", 2)]).unwrap();
        assert!(matches!(
            groebner_basis(&[parse_poly(&v, "x^2 - 1").unwrap()]),
            Err(PolyError::NotHomogeneous(_))
        ));
    }

    #[test]
    fn input_order_does_not_matter() {
        let v = Variables::new([("x1", 2), ("x2", 4)]).unwrap();
        let a = parse_poly(&v, "x1^3 - 2*x1*x2").unwrap();
        let b = parse_poly(&v, "x1^4 - 3*x1^2*x2 + x2^2").unwrap();
        assert_eq!(
            groebner_basis(&[a.clone(), b.clone()]).unwrap(),
            groebner_basis(&[b, a]).unwrap()
        );
    }
}
