//! Decomposition-matrix fixtures supplied as data.

use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::subset_label;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryChar {
    pub label: String,
    pub degree: u64,
    /// Number of ordinary characters the row stands for.
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompFixture {
    pub group: String,
    pub p: u64,
    pub f: u32,
    pub ordinary: Vec<OrdinaryChar>,
    /// Simple modules, labelled by subsets such as `{0,1}`.
    pub columns: Vec<String>,
    pub rows: Vec<Vec<u32>>,
}

impl DecompFixture {
    pub fn from_json(s: &str) -> Result<DecompFixture> {
        let fx: DecompFixture = serde_json::from_str(s).map_err(|e| Error::Fixture(e.to_string()))?;
        fx.validate()?;
        Ok(fx)
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<DecompFixture> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        DecompFixture::from_json(&s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Fixture(m));
        if self.rows.len() != self.ordinary.len() {
            return bad(format!("{} rows for {} characters", self.rows.len(), self.ordinary.len()));
        }
        if self.rows.iter().any(|r| r.len() != self.columns.len()) {
            return bad("ragged decomposition matrix".into());
        }
        if self.ordinary.iter().any(|c| c.degree == 0 || c.multiplicity == 0) {
            return bad("degrees and multiplicities must be positive".into());
        }
        if self.rows.iter().flatten().any(|&x| x > 1) {
            return bad("entries must be 0 or 1".into());
        }
        if self.columns.iter().any(|c| self.column_mask(c).is_none()) {
            return bad("columns must be subset labels of {0..f-1}".into());
        }
        Ok(())
    }

    fn column_mask(&self, label: &str) -> Option<usize> {
        (0..1usize << self.f).find(|&m| subset_label(m, self.f) == label)
    }

    /// Column index of each subset mask.
    pub fn column_of_mask(&self) -> Result<Vec<usize>> {
        let n = 1usize << self.f;
        let mut out = vec![usize::MAX; n];
        for (c, label) in self.columns.iter().enumerate() {
            let m = self.column_mask(label).ok_or_else(|| Error::Fixture(format!("bad column {label}")))?;
            if out[m] != usize::MAX {
                return Err(Error::Fixture(format!("duplicate column {label}")));
            }
            out[m] = c;
        }
        if out.contains(&usize::MAX) {
            return Err(Error::Fixture(format!("need all {n} subsets as columns")));
        }
        Ok(out)
    }

    /// `|G| = Σ m·χ(1)²`.
    pub fn group_order(&self) -> u64 {
        self.ordinary.iter().map(|c| c.multiplicity as u64 * c.degree * c.degree).sum()
    }

    /// `DᵀD` with rows and columns indexed by subset masks.
    pub fn cartan_by_mask(&self) -> Result<Vec<Vec<usize>>> {
        let col = self.column_of_mask()?;
        let n = col.len();
        let mut c = vec![vec![0usize; n]; n];
        for (r, row) in self.rows.iter().enumerate() {
            let m = self.ordinary[r].multiplicity as usize;
            for a in 0..n {
                for b in 0..n {
                    c[a][b] += m * (row[col[a]] * row[col[b]]) as usize;
                }
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_4() -> DecompFixture {
        DecompFixture::from_json(include_str!("../fixtures/sl2_4.json")).unwrap()
    }

    #[test]
    fn roundtrip() {
        let fx = sl2_4();
        assert_eq!(DecompFixture::from_json(&fx.to_json()).unwrap(), fx);
        assert_eq!(fx.group_order(), 60);
    }

    #[test]
    fn cartan_f2() {
        let c = sl2_4().cartan_by_mask().unwrap();
        assert_eq!(c, vec![vec![4, 2, 2, 0], vec![2, 2, 1, 0], vec![2, 1, 2, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn rejects_bad_fixtures() {
        let mut fx = sl2_4();
        fx.rows[0][0] = 2;
        assert!(DecompFixture::from_json(&fx.to_json()).is_err());
        let mut fx = sl2_4();
        fx.rows.pop();
        assert!(fx.validate().is_err());
        let mut fx = sl2_4();
        fx.columns[0] = "{5}".into();
        assert!(fx.validate().is_err());
    }
}
