use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, solve};
use crate::error::{Error, Result};

/// Finitely presented abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`.
///
/// Generators are ordered torsion first, then free. `presentation` has one
/// column per relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FPAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub presentation: IntMatrix,
}

impl FPAbGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FPAbGroup { free_rank: rank, torsion: Vec::new(), presentation: IntMatrix::zeros(rank, 0) }
    }

    fn canonical(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let k = torsion.len();
        let n = k + free_rank;
        let mut presentation = IntMatrix::zeros(n, k);
        for (i, t) in torsion.iter().enumerate() {
            presentation.set(i, i, t.clone());
        }
        FPAbGroup { free_rank, torsion, presentation }
    }

    /// Canonical form of the group generated by the rows of `relations`
    /// subject to its columns.
    pub fn from_presentation(relations: &IntMatrix) -> Self {
        cokernel(relations).group
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FPAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FPAbGroup,
    /// Ambient coordinates to canonical generator coordinates.
    pub projection: IntMatrix,
    /// Lift of each canonical generator back to the ambient group;
    /// `projection * section = 1`.
    pub section: IntMatrix,
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let rows = m.rows();
    let mut torsion = Vec::new();
    let mut keep = Vec::new();
    for i in 0..snf.rank() {
        let d = snf.d.get(i, i);
        if !d.is_one() {
            torsion.push(d.clone());
            keep.push(i);
        }
    }
    keep.extend(snf.rank()..rows);
    let free_rank = rows - snf.rank();
    Cokernel {
        group: FPAbGroup::canonical(free_rank, torsion),
        projection: snf.u.select_rows(&keep),
        section: snf.u_inv.select_cols(&keep),
    }
}

pub fn element_equal(g: &FPAbGroup, x: &[BigInt], y: &[BigInt]) -> Result<bool> {
    let n = g.generator_count();
    if x.len() != n || y.len() != n {
        return Err(Error::Dimension(format!(
            "elements of length {} and {} in a group with {} generators",
            x.len(),
            y.len(),
            n
        )));
    }
    let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    if diff.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    Ok(solve(&g.presentation, &diff)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::matrix::{int, ints};

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&IntMatrix::from_rows(&[&[2]]));
        assert_eq!(c.group.torsion, vec![int(2)]);
        assert_eq!(c.group.free_rank, 0);
        assert!(cokernel(&IntMatrix::from_rows(&[&[1]])).group.is_trivial());
        let c = cokernel(&IntMatrix::zeros(1, 0));
        assert_eq!(c.group, FPAbGroup::free(1));
        assert!((&c.projection * &c.section).is_identity());
    }

    #[test]
    fn element_equal_examples() {
        let z2 = cokernel(&IntMatrix::from_rows(&[&[2]])).group;
        assert!(element_equal(&z2, &ints(&[1]), &ints(&[3])).unwrap());
        let z = FPAbGroup::free(1);
        assert!(!element_equal(&z, &ints(&[1]), &ints(&[2])).unwrap());
        // a raw presentation Z + Z/3 with relation column [0, 3]
        let raw = FPAbGroup {
            free_rank: 1,
            torsion: vec![int(3)],
            presentation: IntMatrix::from_rows(&[&[0], &[3]]),
        };
        assert!(element_equal(&raw, &ints(&[2, 5]), &ints(&[2, 2])).unwrap());
        assert!(!element_equal(&raw, &ints(&[2, 5]), &ints(&[2, 3])).unwrap());
        assert!(element_equal(&raw, &ints(&[1]), &ints(&[1])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(FPAbGroup::trivial().to_string(), "0");
        let g = FPAbGroup::from_presentation(&IntMatrix::from_rows(&[&[2, 0], &[0, 0], &[0, 0]]));
        assert_eq!(g.to_string(), "Z^2 + Z/2");
    }
}
