//! Quiver presentations and their graded quotients.

mod graded;
mod omega;
mod twist;

pub use graded::{graded_quotient, BasisElem, GradedAlgebra};
pub use omega::{omega_basis, omega_word, OmegaBasis};
pub use twist::{psi_twist, Twist};

use std::collections::HashMap;

use crate::coeff::{Field, FieldElem};
use crate::error::{Error, Result};

/// Arrow ids, composed left to right: `[a, b]` means `a` then `b`.
pub type Path = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    /// Grading class (digit position `q` or Koshita index `i`).
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub terms: Vec<(FieldElem, Path)>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub grading_cap: usize,
    /// Block id of each vertex.
    pub blocks: Vec<usize>,
}

impl Presentation {
    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn path_source(&self, path: &[usize]) -> Option<usize> {
        path.first().map(|&a| self.arrows[a].source)
    }

    pub fn path_target(&self, path: &[usize]) -> Option<usize> {
        path.last().map(|&a| self.arrows[a].target)
    }

    pub fn is_composable(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    /// Checks composability, common endpoints and length homogeneity.
    pub fn validate(&self) -> Result<()> {
        for r in &self.relations {
            let Some((_, first)) = r.terms.first() else {
                return Err(Error::Domain(format!("empty relation {}", r.label)));
            };
            for (_, t) in &r.terms {
                if t.is_empty() || t.len() != first.len() {
                    return Err(Error::Domain(format!("relation {} not homogeneous", r.label)));
                }
                if !self.is_composable(t)
                    || self.path_source(t) != self.path_source(first)
                    || self.path_target(t) != self.path_target(first)
                {
                    return Err(Error::Domain(format!("relation {} not composable", r.label)));
                }
            }
        }
        Ok(())
    }

    pub fn path_label(&self, path: &[usize]) -> String {
        path.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
    }
}

fn modp(x: i64, m: u64) -> usize {
    x.rem_euclid(m as i64) as usize
}

/// The Δ-quiver of `kΔ₂(p^f)`: vertex `i` has arrow `s_{i,q}: i → i + 2p^q`.
pub fn delta_presentation(p: u64, f: u32) -> Result<Presentation> {
    let field = Field::new(p, f)?;
    let n = field.unit_order() as u64;
    let weights: Vec<usize> = (0..f).map(|q| modp(2 * (p as i64).pow(q), n)).collect();
    let mut arrows = Vec::new();
    let mut id = HashMap::new();
    for i in 0..n as usize {
        for (q, &w) in weights.iter().enumerate() {
            id.insert((i, q), arrows.len());
            arrows.push(Arrow {
                source: i,
                target: (i + w) % n as usize,
                label: format!("s{i}_{q}"),
                class: q,
            });
        }
    }
    let one = FieldElem::ONE;
    let minus = field.neg(one);
    let mut relations = Vec::new();
    for i in 0..n as usize {
        for q in 0..f as usize {
            for r in q + 1..f as usize {
                let lhs = vec![id[&(i, q)], id[&(arrows[id[&(i, q)]].target, r)]];
                let rhs = vec![id[&(i, r)], id[&(arrows[id[&(i, r)]].target, q)]];
                relations.push(Relation {
                    label: format!("comm{i}_{q}_{r}"),
                    terms: vec![(one, lhs), (minus, rhs)],
                });
            }
            let mut path = Vec::new();
            let mut v = i;
            for _ in 0..p {
                let a = id[&(v, q)];
                path.push(a);
                v = arrows[a].target;
            }
            relations.push(Relation { label: format!("pow{i}_{q}"), terms: vec![(one, path)] });
        }
    }
    let blocks = (0..n as usize).map(|i| if p == 2 { 0 } else { i % 2 }).collect();
    let pres = Presentation {
        field,
        vertices: (0..n).map(|i| i.to_string()).collect(),
        arrows,
        relations,
        // the socle sits in degree (p−1)f
        grading_cap: (4 * f as usize).max((p as usize - 1) * f as usize),
        blocks,
    };
    pres.validate()?;
    Ok(pres)
}

pub fn subset_label(mask: usize, f: u32) -> String {
    let elems: Vec<String> = (0..f).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

/// Koshita's quiver for the basic algebra of `kSL₂(2^f)`.
///
/// Arrow `α_{i,I}` lies in `e_I Λ e_{I+{i}}` and exists when `i−1 ∉ I`;
/// paths compose left to right. The square-zero relations are the loops
/// `α_{i,I+{i}}·α_{i,I}` at `I+{i}`; for `f = 2` the remaining families are
/// vacuous and are replaced by the commutation of the two loops at `∅`.
pub fn koshita_presentation(f: u32) -> Result<Presentation> {
    if f < 2 {
        return Err(Error::Unsupported("Koshita presentation needs f >= 2".into()));
    }
    let field = Field::new(2, 1)?;
    let nv = 1usize << f;
    let fu = f as usize;
    let bit = |i: usize| 1usize << (i % fu);
    let prev = |i: usize| (i + fu - 1) % fu;
    let mut arrows = Vec::new();
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    for set in 0..nv {
        for i in 0..fu {
            if set & bit(prev(i)) == 0 {
                id.insert((i, set), arrows.len());
                arrows.push(Arrow {
                    source: set,
                    target: set ^ bit(i),
                    label: format!("a{i}_{}", subset_label(set, f)),
                    class: i,
                });
            }
        }
    }
    // word of labels starting at `set`, resolved through the quiver
    let walk = |start: usize, labels: &[usize]| -> Option<Path> {
        let mut v = start;
        let mut path = Vec::new();
        for &l in labels {
            let a = *id.get(&(l, v))?;
            path.push(a);
            v ^= bit(l);
        }
        Some(path)
    };
    let one = FieldElem::ONE;
    let mut relations = Vec::new();
    let mut push = |label: String, terms: Vec<Option<Path>>| {
        if terms.iter().all(|t| t.is_some()) {
            relations.push(Relation {
                label,
                terms: terms.into_iter().map(|t| (one, t.unwrap())).collect(),
            });
        }
    };
    for set in 0..nv {
        let has = |i: usize| set & bit(i) != 0;
        let name = subset_label(set, f);
        for i in 0..fu {
            let i1 = (i + 1) % fu;
            for j in i + 1..fu {
                let near = j == prev(i) || j == i1;
                if !has(prev(i)) && !has(prev(j)) && !near {
                    push(format!("comm{i}{j}_{name}"), vec![walk(set, &[i, j]), walk(set, &[j, i])]);
                }
            }
            if !has(i) && !has(prev(i)) {
                let start = set ^ bit(i);
                push(format!("sq{i}_{}", subset_label(start, f)), vec![walk(start, &[i, i])]);
                push(
                    format!("braid{i}_{name}"),
                    vec![walk(set, &[i1, i, i]), walk(set, &[i, i, i1])],
                );
            }
            if has(i) && !has(prev(i)) {
                let start = set ^ bit(i1);
                push(format!("zero{i}_{}", subset_label(start, f)), vec![walk(start, &[i, i1, i])]);
            }
        }
    }
    if f == 2 {
        push("loops_commute".into(), vec![walk(0, &[0, 0, 1, 1]), walk(0, &[1, 1, 0, 0])]);
    }
    let pres = Presentation {
        field,
        vertices: (0..nv).map(|s| subset_label(s, f)).collect(),
        arrows,
        relations,
        grading_cap: 4 * fu,
        blocks: vec![0; nv],
    };
    pres.validate()?;
    Ok(pres)
}

/// `δ_{ij}` plus the number of nonzero digit vectors `n ∈ {0..p−1}^f` with
/// `2·Σ n_q p^q ≡ j − i (mod p^f − 1)`.
pub fn digit_cartan(p: u64, f: u32, i: i64, j: i64) -> usize {
    let n = p.pow(f) - 1;
    let target = modp(j - i, n);
    let mut count = usize::from(modp(i, n) == modp(j, n));
    for v in 1..p.pow(f) {
        // digits of v are exactly the n_q
        if modp(2 * v as i64, n) == target {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_shapes() {
        let d = delta_presentation(2, 1).unwrap();
        assert_eq!((d.vertices.len(), d.arrows.len(), d.relations.len()), (1, 1, 1));
        let d = delta_presentation(2, 2).unwrap();
        assert_eq!((d.vertices.len(), d.arrows.len()), (3, 6));
        let targets: Vec<_> = d.arrows.iter().filter(|a| a.source == 0).map(|a| a.target).collect();
        assert_eq!(targets, vec![2, 1]);
        let d = delta_presentation(3, 1).unwrap();
        assert_eq!(d.num_blocks(), 2);
        assert!(d.arrows.iter().all(|a| a.source == a.target));
        assert_eq!(d.relations[0].terms[0].1.len(), 3);
    }

    #[test]
    fn koshita_shapes() {
        assert!(koshita_presentation(1).is_err());
        let k = koshita_presentation(2).unwrap();
        assert_eq!(k.vertices.len(), 4);
        assert_eq!(k.arrows.len(), 4);
        // {0,1} is isolated
        assert!(k.arrows.iter().all(|a| a.source != 3 && a.target != 3));
        let k = koshita_presentation(3).unwrap();
        assert_eq!(k.arrows.len(), 12);
    }

    #[test]
    fn koshita_arrow_count_oracle() {
        for f in 2..=4u32 {
            let mut count = 0;
            for set in 0..1usize << f {
                for i in 0..f {
                    let prev = (i + f - 1) % f;
                    if set >> prev & 1 == 0 {
                        count += 1;
                    }
                }
            }
            assert_eq!(koshita_presentation(f).unwrap().arrows.len(), count);
        }
    }

    #[test]
    fn digit_cartan_examples() {
        assert_eq!(digit_cartan(2, 2, 1, 1), 2);
        assert_eq!(digit_cartan(3, 1, 0, 1), 0);
        for i in 0..7 {
            assert_eq!(digit_cartan(2, 3, i, i + 1), 1);
        }
    }
}
