use std::collections::BTreeMap;
use std::fmt;

use super::complex::Complex;
use crate::zlinalg::{cokernel, kernel_basis, solve_matrix, FPAbGroup};

/// A finitely supported family of groups indexed by degree.
#[derive(Clone, Debug)]
pub struct GradedGroups {
    pub symbol: &'static str,
    pub groups: BTreeMap<i64, FPAbGroup>,
}

impl GradedGroups {
    pub fn at(&self, n: i64) -> FPAbGroup {
        self.groups.get(&n).cloned().unwrap_or_else(FPAbGroup::trivial)
    }

    pub fn nontrivial(&self) -> BTreeMap<i64, FPAbGroup> {
        self.groups.iter().filter(|(_, g)| !g.is_trivial()).map(|(&n, g)| (n, g.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.values().all(FPAbGroup::is_trivial)
    }

    /// Same groups moved `k` degrees up.
    pub fn shifted(&self, k: i64) -> Self {
        GradedGroups {
            symbol: self.symbol,
            groups: self.groups.iter().map(|(&n, g)| (n + k, g.clone())).collect(),
        }
    }
}

/// Equal as canonical groups in every degree.
impl PartialEq for GradedGroups {
    fn eq(&self, other: &Self) -> bool {
        self.nontrivial() == other.nontrivial()
    }
}

impl fmt::Display for GradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "{}_* = 0", self.symbol);
        }
        let parts: Vec<String> =
            self.groups.iter().map(|(n, g)| format!("{}_{n} = {g}", self.symbol)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `Z_n = ker d_n`.
pub fn cycles_z(a: &Complex) -> GradedGroups {
    let groups = a.support().map(|n| (n, FPAbGroup::free(kernel_basis(&a.d(n)).cols()))).collect();
    GradedGroups { symbol: "Z", groups }
}

/// `Z'_n = coker d_{n+1}`.
pub fn boundariesquot_zprime(a: &Complex) -> GradedGroups {
    let groups = a.support().map(|n| (n, cokernel(&a.d(n + 1)).group)).collect();
    GradedGroups { symbol: "Z'", groups }
}

/// `H_n = ker d_n / im d_{n+1}`.
pub fn homology_h(a: &Complex) -> GradedGroups {
    let groups = a.support().map(|n| (n, homology_at(a, n))).collect();
    GradedGroups { symbol: "H", groups }
}

pub fn homology_at(a: &Complex, n: i64) -> FPAbGroup {
    let z = kernel_basis(&a.d(n));
    let b = a.d(n + 1);
    // boundaries in cycle coordinates; solvable since d_n d_{n+1} = 0
    let coords = solve_matrix(&z, &b).expect("shapes agree").expect("boundaries are cycles");
    cokernel(&coords).group
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::{int, IntMatrix};

    fn m2() -> Complex {
        Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap()
    }

    #[test]
    fn homology_of_unit() {
        let h = homology_h(&Complex::point(0));
        assert_eq!(h.at(0), FPAbGroup::free(1));
        assert_eq!(h.to_string(), "H_0 = Z");
    }

    #[test]
    fn homology_of_m2() {
        let h = homology_h(&m2());
        assert_eq!(h.at(0).torsion, vec![int(2)]);
        assert!(h.at(1).is_trivial());
        assert_eq!(h.to_string(), "H_0 = Z/2, H_1 = 0");
    }

    #[test]
    fn cycles_and_quotients() {
        let z = cycles_z(&m2());
        assert_eq!(z.at(0), FPAbGroup::free(1));
        assert!(z.at(1).is_trivial());
        let zp = boundariesquot_zprime(&m2());
        assert_eq!(zp.at(0).torsion, vec![int(2)]);
        assert_eq!(zp.at(1), FPAbGroup::free(1));
    }

    #[test]
    fn suspension_shifts_homology() {
        assert_eq!(homology_h(&m2().suspend(3)), homology_h(&m2()).shifted(3));
    }
}
