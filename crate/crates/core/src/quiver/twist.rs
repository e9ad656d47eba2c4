use super::GradedAlgebra;
use crate::coeff::FieldElem;
use crate::error::{Error, Result};
use crate::linalg::FqVec;
use crate::report::Report;

/// The endomorphism fixing vertices and sending each arrow `s` of class `q`
/// to `z_q·s`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub z: Vec<FqVec>,
    /// Image of each arrow.
    pub images: Vec<FqVec>,
    pub report: Report,
}

fn is_central(alg: &GradedAlgebra, z: &FqVec) -> bool {
    let gens = (0..alg.num_vertices())
        .map(|v| alg.vertex(v))
        .chain((0..alg.pres.arrows.len()).map(|a| alg.arrow(a)));
    gens.into_iter().all(|g| alg.mul(z, &g) == alg.mul(&g, z))
}

pub fn psi_twist(alg: &GradedAlgebra, z: &[FqVec]) -> Result<Twist> {
    let classes = alg.pres.arrows.iter().map(|a| a.class).max().map_or(0, |m| m + 1);
    if z.len() != classes {
        return Err(Error::Shape(format!("expected {classes} twist units, got {}", z.len())));
    }
    for (q, zq) in z.iter().enumerate() {
        if zq.len() != alg.dim() {
            return Err(Error::Shape(format!("z_{q} has wrong length")));
        }
        if zq.iter().take(alg.num_vertices()).any(|c| c.is_zero()) {
            return Err(Error::Domain(format!("z_{q} is not a unit")));
        }
        if !is_central(alg, zq) {
            return Err(Error::Domain(format!("z_{q} is not central")));
        }
    }
    let images: Vec<FqVec> = alg
        .pres
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| alg.mul(&z[arrow.class], &alg.arrow(a)))
        .collect();
    let mut report = Report::new("psi_twist");
    for r in &alg.pres.relations {
        let v = alg.evaluate(&r.terms, &|a| images[a].clone());
        report.check(format!("relation {}", r.label), v.iter().all(|c| c.is_zero()), "");
    }
    Ok(Twist { z: z.to_vec(), images, report })
}

impl Twist {
    pub fn apply(&self, alg: &GradedAlgebra, x: &FqVec) -> FqVec {
        let mut out = alg.zero();
        for (i, &c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let b = &alg.basis[i];
            let img = if b.degree == 0 {
                alg.vertex(b.source)
            } else {
                alg.evaluate(&[(FieldElem::ONE, b.path.clone())], &|a| self.images[a].clone())
            };
            out = alg.add(&out, &alg.scale(c, &img));
        }
        out
    }

    /// Whether `ψ(z)∘ψ(z′) = ψ(z·z′)` on every arrow.
    pub fn composes_with(&self, other: &Twist, alg: &GradedAlgebra) -> Result<bool> {
        let zz: Vec<FqVec> = self.z.iter().zip(&other.z).map(|(a, b)| alg.mul(a, b)).collect();
        let prod = psi_twist(alg, &zz)?;
        Ok((0..alg.pres.arrows.len()).all(|a| self.apply(alg, &other.images[a]) == prod.images[a]))
    }

    /// Whether `ψ(z)∘ψ(z′) = ψ(ψ(z)(z′)·z)` on every arrow. This always holds;
    /// it reduces to the previous identity exactly when `ψ(z)` fixes `z′`.
    pub fn composes_crossed(&self, other: &Twist, alg: &GradedAlgebra) -> Result<bool> {
        let w: Vec<FqVec> = self.z.iter().zip(&other.z).map(|(a, b)| alg.mul(&self.apply(alg, b), a)).collect();
        let prod = psi_twist(alg, &w)?;
        Ok((0..alg.pres.arrows.len()).all(|a| self.apply(alg, &other.images[a]) == prod.images[a]))
    }

    pub fn fixes(&self, alg: &GradedAlgebra, x: &FqVec) -> bool {
        self.apply(alg, x) == *x
    }

    pub fn fixes_all(&self, alg: &GradedAlgebra, xs: &[FqVec]) -> bool {
        xs.iter().all(|x| self.fixes(alg, x))
    }
}
