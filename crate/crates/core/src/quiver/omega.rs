use super::{GradedAlgebra, Path};
use crate::error::{Error, Result};
use crate::linalg::fq_rank;

/// Candidate basis `{ω_{I,T} : T ⊆ N − I}` of `e_I Λ̄ e_I`.
#[derive(Clone, Debug)]
pub struct OmegaBasis {
    pub set: usize,
    /// `(T, word)` with `T` as a bitmask.
    pub words: Vec<(usize, Path)>,
    pub rank: usize,
}

impl OmegaBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_independent(&self) -> bool {
        self.rank == self.words.len()
    }
}

/// Arrow labels of `ω_{i,I}`: `α_j α_{j+1} ⋯ α_i α_i ⋯ α_{j+1} α_j`, where
/// `j ≤ i` is minimal with `j, …, i−1 ∈ I` (so `j−1 ∉ I`).
pub fn omega_word(f: u32, i: usize, set: usize) -> Result<Vec<usize>> {
    let fu = f as usize;
    if set >> i & 1 == 1 {
        return Err(Error::Domain(format!("{i} lies in the vertex set")));
    }
    let mut j = i;
    while set >> ((j + fu - 1) % fu) & 1 == 1 {
        j = (j + fu - 1) % fu;
    }
    let mut up = Vec::new();
    let mut l = j;
    loop {
        up.push(l);
        if l == i {
            break;
        }
        l = (l + 1) % fu;
    }
    let mut word = up.clone();
    word.extend(up.iter().rev());
    Ok(word)
}

fn resolve(alg: &GradedAlgebra, start: usize, labels: &[usize]) -> Result<Path> {
    let mut v = start;
    let mut path = Vec::new();
    for &l in labels {
        let a = alg
            .pres
            .arrows
            .iter()
            .position(|a| a.source == v && a.class == l)
            .ok_or_else(|| Error::Domain(format!("no arrow α_{l} at vertex {}", alg.pres.vertices[v])))?;
        path.push(a);
        v = alg.pres.arrows[a].target;
    }
    if v != start {
        return Err(Error::Internal("ω word is not a loop".into()));
    }
    Ok(path)
}

/// Builds every `ω_{I,T}` in the Koshita algebra for `f`, reduces it and
/// records the rank of the resulting family.
pub fn omega_basis(alg: &GradedAlgebra, f: u32, set: usize) -> Result<OmegaBasis> {
    let fu = f as usize;
    let complement: Vec<usize> = (0..fu).filter(|&i| set >> i & 1 == 0).collect();
    let mut words = Vec::new();
    for t in 0..1usize << complement.len() {
        let mut labels = Vec::new();
        let mut mask = 0;
        for (b, &i) in complement.iter().enumerate() {
            if t >> b & 1 == 1 {
                labels.extend(omega_word(f, i, set)?);
                mask |= 1 << i;
            }
        }
        words.push((mask, resolve(alg, set, &labels)?));
    }
    let vectors = words
        .iter()
        .map(|(_, w)| if w.is_empty() { alg.vertex(set) } else { alg.path_vector(w) })
        .collect();
    let rank = fq_rank(alg.field(), vectors);
    Ok(OmegaBasis { set, words, rank })
}
