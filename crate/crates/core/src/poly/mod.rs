//! Sparse trivariate polynomials, dense univariate polynomials, resultants.

mod multi;
mod resultant;
mod uni;

pub use multi::{monomials_of_degree, poly_eval, xyz, Exponent, MultiPoly, Var};
pub(crate) use multi::require_homogeneous;
pub use resultant::{resultant, resultant_affine, sylvester, uni_resultant};
pub use uni::{Root, UniPoly};

use crate::error::Result;
use crate::field::FieldElement;
use crate::geometry::ProjLine;

/// A homogeneous polynomial restricted to a line `s*A + t*B`, dehomogenized at `t = 1`.
#[derive(Debug, Clone)]
pub struct LineRestriction {
    pub poly: UniPoly,
    /// Degree of the binary form (the degree of the input polynomial).
    pub degree: usize,
    pub a: [FieldElement; 3],
    pub b: [FieldElement; 3],
}

impl LineRestriction {
    /// Order of vanishing of the binary form at `t = 0`, i.e. at the point `A`.
    pub fn order_at_infinity(&self) -> usize {
        self.degree - self.poly.degree().unwrap_or(0)
    }

    /// Homogeneous coordinates of the parameter `s` (with `t = 1`).
    pub fn point_at(&self, s: &FieldElement) -> [FieldElement; 3] {
        [
            &(s * &self.a[0]) + &self.b[0],
            &(s * &self.a[1]) + &self.b[1],
            &(s * &self.a[2]) + &self.b[2],
        ]
    }
}

/// Parametrizes `L` by the two non-pivot standard basis vectors projected
/// onto `L`, where the pivot is the coefficient of largest embedded modulus
/// (ties to the earlier variable).
pub fn line_parametrization(l: &ProjLine) -> ([FieldElement; 3], [FieldElement; 3]) {
    let c = l.coords();
    let mut piv = 0;
    for k in 1..3 {
        if c[k].embed().norm() > c[piv].embed().norm() * (1.0 + 1e-12) {
            piv = k;
        }
    }
    let t = c[piv].tower().clone();
    let inv = c[piv].inv().expect("pivot of a line is nonzero");
    let others: Vec<usize> = (0..3).filter(|&k| k != piv).collect();
    let vec_for = |j: usize| {
        let mut v = [FieldElement::zero(&t), FieldElement::zero(&t), FieldElement::zero(&t)];
        v[j] = FieldElement::one(&t);
        v[piv] = -&(&c[j] * &inv);
        v
    };
    (vec_for(others[0]), vec_for(others[1]))
}

pub fn restrict_to_line(p: &MultiPoly, l: &ProjLine) -> Result<LineRestriction> {
    require_homogeneous(p)?;
    let (a, b) = line_parametrization(l);
    let poly = p.restrict_param(&a, &b)?;
    Ok(LineRestriction { poly, degree: p.degree().unwrap_or(0) as usize, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElement, TowerBuilder};

    #[test]
    fn fermat_on_x_eq_eps_y() {
        let t = TowerBuilder::new()
            .adjoin_int("i", -1)
            .unwrap()
            .adjoin_int("r2", 2)
            .unwrap()
            .adjoin_root_of("q2", "r2")
            .unwrap()
            .build();
        let i = t.generator("i").unwrap();
        let r2 = t.generator("r2").unwrap();
        let one = FieldElement::one(&t);
        let eps = (&(&one + &i) * &r2).scale(&crate::Rational::new(1, 2));
        let (x, y, z) = xyz(&t);
        let f = &(&x.pow(4) + &y.pow(4)) + &z.pow(4);
        let l = ProjLine::new([one.clone(), -&eps, FieldElement::zero(&t)]).unwrap();
        let r = restrict_to_line(&f, &l).unwrap();
        assert_eq!(r.degree, 4);
        assert_eq!(r.order_at_infinity(), 4);
        let p = crate::geometry::ProjPoint::new(r.a.clone()).unwrap();
        assert_eq!(p, crate::geometry::ProjPoint::new([eps, one.clone(), FieldElement::zero(&t)]).unwrap());
        let zl = ProjLine::new([FieldElement::zero(&t), FieldElement::zero(&t), one]).unwrap();
        let rz = restrict_to_line(&f, &zl).unwrap();
        assert_eq!(rz.poly.degree(), Some(4));
        assert_eq!(rz.poly.squarefree().len(), 1);
        assert_eq!(rz.poly.squarefree()[0].1, 1);
    }
}
