use std::collections::{BTreeMap, HashMap};

use super::{Path, Presentation};
use crate::coeff::{Field, FieldElem};
use crate::error::{Error, Result};
use crate::linalg::{fq_nullspace, FqEchelon, FqVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    /// Normal word; empty for the vertex idempotents.
    pub path: Path,
    pub source: usize,
    pub target: usize,
    pub degree: usize,
}

/// `kQ/I` with an explicit path basis and normal forms of all paths up to
/// the top nonzero degree.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub pres: Presentation,
    pub basis: Vec<BasisElem>,
    pub top_degree: usize,
    nf: HashMap<Path, Vec<(usize, FieldElem)>>,
}

type Component = (usize, usize, Vec<usize>);

fn component_key(pres: &Presentation, path: &[usize]) -> Component {
    let mut classes: Vec<usize> = path.iter().map(|&a| pres.arrows[a].class).collect();
    classes.sort_unstable();
    (pres.path_source(path).unwrap(), pres.path_target(path).unwrap(), classes)
}

/// Degreewise quotient of the path algebra by the two-sided ideal of the
/// (length-homogeneous) relations.
pub fn graded_quotient(pres: &Presentation) -> Result<GradedAlgebra> {
    pres.validate()?;
    let k = &pres.field;
    let nv = pres.vertices.len();
    let mut basis: Vec<BasisElem> = (0..nv)
        .map(|v| BasisElem { path: Vec::new(), source: v, target: v, degree: 0 })
        .collect();
    let mut nf: HashMap<Path, Vec<(usize, FieldElem)>> = HashMap::new();

    // all paths of each length, indexed by endpoints
    let mut by_len: Vec<Vec<Path>> = vec![Vec::new()];
    let mut from: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new()];
    let mut to: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new()];
    let mut top = 0;
    let cap = pres.grading_cap;
    for d in 1..=cap + 1 {
        let paths: Vec<Path> = if d == 1 {
            (0..pres.arrows.len()).map(|a| vec![a]).collect()
        } else {
            let mut out = Vec::new();
            for p in &by_len[d - 1] {
                let t = pres.path_target(p).unwrap();
                for (a, arrow) in pres.arrows.iter().enumerate() {
                    if arrow.source == t {
                        let mut q = p.clone();
                        q.push(a);
                        out.push(q);
                    }
                }
            }
            out
        };
        let mut f_idx: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut t_idx: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            f_idx.entry(pres.path_source(p).unwrap()).or_default().push(i);
            t_idx.entry(pres.path_target(p).unwrap()).or_default().push(i);
        }
        by_len.push(paths);
        from.push(f_idx);
        to.push(t_idx);

        // group paths into homogeneous components, largest words first
        let mut comps: BTreeMap<Component, Vec<Path>> = BTreeMap::new();
        for p in &by_len[d] {
            comps.entry(component_key(pres, p)).or_default().push(p.clone());
        }
        let mut gens: HashMap<Component, Vec<Vec<(FieldElem, Path)>>> = HashMap::new();
        for r in &pres.relations {
            let l = r.terms[0].1.len();
            if l > d {
                continue;
            }
            let (s, t) = (pres.path_source(&r.terms[0].1).unwrap(), pres.path_target(&r.terms[0].1).unwrap());
            for a in 0..=d - l {
                let b = d - l - a;
                let prefixes: Vec<&[usize]> = if a == 0 {
                    vec![&[]]
                } else {
                    to[a].get(&s).map_or(Vec::new(), |v| v.iter().map(|&i| by_len[a][i].as_slice()).collect())
                };
                let suffixes: Vec<&[usize]> = if b == 0 {
                    vec![&[]]
                } else {
                    from[b].get(&t).map_or(Vec::new(), |v| v.iter().map(|&i| by_len[b][i].as_slice()).collect())
                };
                for u in &prefixes {
                    for w in &suffixes {
                        let terms: Vec<(FieldElem, Path)> = r
                            .terms
                            .iter()
                            .map(|(c, m)| (*c, [*u, m.as_slice(), *w].concat()))
                            .collect();
                        let key = component_key(pres, &terms[0].1);
                        gens.entry(key).or_default().push(terms);
                    }
                }
            }
        }
        let mut dim_d = 0;
        for (key, mut paths) in comps {
            paths.sort_unstable_by(|a, b| b.cmp(a));
            let col: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let mut ech = FqEchelon::new();
            for g in gens.get(&key).into_iter().flatten() {
                let mut v = vec![FieldElem::ZERO; paths.len()];
                for (c, p) in g {
                    let i = col[p];
                    v[i] = k.add(v[i], *c);
                }
                if ech.rank() < paths.len() {
                    ech.insert(k, v);
                }
            }
            // non-pivot columns form the basis of this component
            let reduced: Vec<FqVec> = (0..paths.len())
                .map(|i| {
                    let mut e = vec![FieldElem::ZERO; paths.len()];
                    e[i] = FieldElem::ONE;
                    ech.reduce(k, e)
                })
                .collect();
            let mut global = vec![None; paths.len()];
            for (i, r) in reduced.iter().enumerate() {
                if r[i] == FieldElem::ONE && r.iter().enumerate().all(|(j, x)| j == i || x.is_zero()) {
                    global[i] = Some(basis.len());
                    basis.push(BasisElem {
                        path: paths[i].clone(),
                        source: key.0,
                        target: key.1,
                        degree: d,
                    });
                    dim_d += 1;
                }
            }
            for (i, r) in reduced.into_iter().enumerate() {
                let coords: Vec<(usize, FieldElem)> = r
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (global[j].expect("reduced onto basis"), x))
                    .collect();
                nf.insert(paths[i].clone(), coords);
            }
        }
        if dim_d == 0 {
            break;
        }
        if d == cap + 1 {
            return Err(Error::NotNilpotent(cap));
        }
        top = d;
    }
    Ok(GradedAlgebra { pres: pres.clone(), basis, top_degree: top, nf })
}

impl GradedAlgebra {
    pub fn field(&self) -> &Field {
        &self.pres.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.pres.vertices.len()
    }

    pub fn dims_by_degree(&self) -> Vec<usize> {
        let mut out = vec![0; self.top_degree + 1];
        for b in &self.basis {
            out[b.degree] += 1;
        }
        out
    }

    pub fn zero(&self) -> FqVec {
        vec![FieldElem::ZERO; self.dim()]
    }

    pub fn one(&self) -> FqVec {
        let mut v = self.zero();
        for x in v.iter_mut().take(self.num_vertices()) {
            *x = FieldElem::ONE;
        }
        v
    }

    pub fn unit_vector(&self, i: usize) -> FqVec {
        let mut v = self.zero();
        v[i] = FieldElem::ONE;
        v
    }

    pub fn vertex(&self, v: usize) -> FqVec {
        self.unit_vector(v)
    }

    /// Coordinates of a composable path (empty paths are not accepted).
    pub fn path_vector(&self, path: &[usize]) -> FqVec {
        let mut v = self.zero();
        if path.len() > self.top_degree || !self.pres.is_composable(path) {
            return v;
        }
        for &(i, c) in self.nf.get(path).map_or(&[][..], |x| x.as_slice()) {
            v[i] = c;
        }
        v
    }

    pub fn arrow(&self, a: usize) -> FqVec {
        self.path_vector(&[a])
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> FqVec {
        let (x, y) = (&self.basis[i], &self.basis[j]);
        if x.target != y.source {
            return self.zero();
        }
        if x.degree == 0 {
            return self.unit_vector(j);
        }
        if y.degree == 0 {
            return self.unit_vector(i);
        }
        self.path_vector(&[x.path.as_slice(), y.path.as_slice()].concat())
    }

    pub fn mul(&self, x: &FqVec, y: &FqVec) -> FqVec {
        let k = self.field();
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = k.mul(a, b);
                for (o, &c) in out.iter_mut().zip(&self.mul_basis(i, j)) {
                    if !c.is_zero() {
                        *o = k.add(*o, k.mul(ab, c));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &FqVec, y: &FqVec) -> FqVec {
        x.iter().zip(y).map(|(&a, &b)| self.field().add(a, b)).collect()
    }

    pub fn sub(&self, x: &FqVec, y: &FqVec) -> FqVec {
        x.iter().zip(y).map(|(&a, &b)| self.field().sub(a, b)).collect()
    }

    pub fn scale(&self, c: FieldElem, x: &FqVec) -> FqVec {
        x.iter().map(|&a| self.field().mul(c, a)).collect()
    }

    /// Evaluates `Σ c·path` with each arrow replaced by the given image.
    pub fn evaluate(&self, terms: &[(FieldElem, Path)], image: &dyn Fn(usize) -> FqVec) -> FqVec {
        let mut out = self.zero();
        for (c, path) in terms {
            let mut acc: Option<FqVec> = None;
            for &a in path {
                let img = image(a);
                acc = Some(match acc {
                    None => img,
                    Some(x) => self.mul(&x, &img),
                });
            }
            let term = acc.unwrap_or_else(|| self.one());
            out = self.add(&out, &self.scale(*c, &term));
        }
        out
    }

    /// `dim e_i A e_j` for all vertex pairs.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0; n]; n];
        for b in &self.basis {
            c[b.source][b.target] += 1;
        }
        c
    }

    /// Dimension of the center of the block algebra on `block`.
    pub fn center_dim(&self, block: usize) -> usize {
        self.center_basis(block).len()
    }

    /// Basis of the center of the block algebra on `block`, as elements of the
    /// whole algebra.
    pub fn center_basis(&self, block: usize) -> Vec<FqVec> {
        let in_block = |v: usize| self.pres.blocks[v] == block;
        let support: Vec<usize> =
            (0..self.dim()).filter(|&i| in_block(self.basis[i].source) && in_block(self.basis[i].target)).collect();
        let mut gens: Vec<FqVec> = (0..self.num_vertices()).filter(|&v| in_block(v)).map(|v| self.vertex(v)).collect();
        gens.extend(
            (0..self.pres.arrows.len()).filter(|&a| in_block(self.pres.arrows[a].source)).map(|a| self.arrow(a)),
        );
        // linear map z ↦ (zg − gz)_g on the block coordinates
        let mut columns: Vec<FqVec> = Vec::new();
        for &i in &support {
            let e = self.unit_vector(i);
            let mut col = Vec::new();
            for g in &gens {
                col.extend(self.sub(&self.mul(&e, g), &self.mul(g, &e)));
            }
            columns.push(col);
        }
        let nrows = columns.first().map_or(0, |c| c.len());
        let rows: Vec<FqVec> = (0..nrows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        fq_nullspace(self.field(), rows, support.len())
            .into_iter()
            .map(|v| {
                let mut z = self.zero();
                for (&i, c) in support.iter().zip(v) {
                    z[i] = c;
                }
                z
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{delta_presentation, koshita_presentation};
    use super::*;

    #[test]
    fn delta_dims() {
        let a = graded_quotient(&delta_presentation(2, 1).unwrap()).unwrap();
        assert_eq!(a.dims_by_degree(), vec![1, 1]);
        for (p, f) in [(2u64, 2u32), (2, 3), (3, 1), (3, 2), (5, 1), (2, 4), (7, 1)] {
            let q = p.pow(f) as usize;
            let a = graded_quotient(&delta_presentation(p, f).unwrap()).unwrap();
            assert_eq!(a.dim(), (q - 1) * q, "({p},{f})");
        }
    }

    #[test]
    fn koshita_two() {
        let a = graded_quotient(&koshita_presentation(2).unwrap()).unwrap();
        assert_eq!(a.dim(), 19);
        let c = a.cartan();
        assert_eq!(c, vec![vec![4, 2, 2, 0], vec![2, 2, 1, 0], vec![2, 1, 2, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn missing_relations_are_detected() {
        let mut pres = delta_presentation(2, 2).unwrap();
        pres.relations.retain(|r| !r.label.starts_with("pow"));
        assert!(matches!(graded_quotient(&pres), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn centers() {
        let a = graded_quotient(&delta_presentation(2, 2).unwrap()).unwrap();
        assert_eq!(a.center_dim(0), 4);
        let a = graded_quotient(&delta_presentation(3, 1).unwrap()).unwrap();
        assert_eq!(a.center_dim(0), 3);
        let a = graded_quotient(&delta_presentation(5, 1).unwrap()).unwrap();
        assert_eq!(a.center_dim(0), 4);
    }
}
