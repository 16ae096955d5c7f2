//! Seeded generators for matrices, complexes, maps and double complexes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{chain_map_basis, hom_rank, Complex, Proto};
use crate::totals::DoubleComplex;
use crate::zlinalg::{kernel_basis, IntMatrix};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn size(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> IntMatrix {
        IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(self.int(-bound, bound)))
    }

    fn coeffs(&mut self, n: usize, bound: i64) -> Vec<BigInt> {
        (0..n).map(|_| BigInt::from(self.int(-bound, bound))).collect()
    }

    /// A complex with at most `max_len` degrees of rank at most `max_rank`,
    /// lowest degree in `[-2, 2]`, differential entries bounded by `bound`.
    pub fn complex(&mut self, max_len: usize, max_rank: usize, bound: i64) -> Complex {
        let lo = self.int(-2, 2);
        let len = self.size(1, max_len.max(1));
        let mut ranks: Vec<usize> = (0..len).map(|_| self.size(0, max_rank)).collect();
        if ranks.iter().all(|&r| r == 0) {
            ranks[0] = 1;
        }
        let mut diffs = BTreeMap::new();
        let mut below = IntMatrix::zeros(0, ranks[0]);
        for i in 1..len {
            let n = lo + i as i64;
            let kernel = kernel_basis(&below);
            let mut d = IntMatrix::zeros(ranks[i - 1], ranks[i]);
            for _ in 0..20 {
                let candidate = &kernel * &self.matrix(kernel.cols(), ranks[i], 1.min(bound).max(1));
                if candidate.max_abs() <= BigInt::from(bound) {
                    d = candidate;
                    break;
                }
            }
            below = d.clone();
            diffs.insert(n, d);
        }
        Complex::new(lo, ranks, diffs).expect("d² = 0 by construction")
    }

    pub fn proto(&mut self, a: &Complex, b: &Complex, degree: i64, bound: i64) -> Proto {
        let v = self.coeffs(hom_rank(a, b, degree), bound);
        Proto::from_vector(a, b, degree, &v).expect("fits")
    }

    /// A random integer combination of a basis of chain maps `a -> b`.
    pub fn chain_map(&mut self, a: &Complex, b: &Complex, bound: i64) -> Proto {
        let basis = chain_map_basis(a, b);
        let c = self.coeffs(basis.len(), bound);
        Proto::combination(&basis, &c, &Proto::zero(a, b, 0))
    }

    /// At most `max_cols` columns, each a complex of length at most
    /// `max_len`, all entries in `[-bound, bound]`.
    pub fn double_complex(&mut self, max_cols: usize, max_len: usize, bound: i64) -> DoubleComplex {
        let start = self.int(-1, 1);
        let count = self.size(1, max_cols.max(1));
        let columns: Vec<Complex> = (0..count).map(|_| self.complex(max_len, 2, bound)).collect();
        let mut deltas: BTreeMap<i64, Proto> = BTreeMap::new();
        for i in 1..count {
            let m = start + i as i64;
            let (src, tgt) = (&columns[i], &columns[i - 1]);
            let basis = chain_map_basis(src, tgt);
            let allowed: Vec<Proto> = match deltas.get(&(m - 1)) {
                Some(prev) if !basis.is_empty() => {
                    let cols: Vec<Vec<BigInt>> =
                        basis.iter().map(|b| Proto::compose(prev, b).expect("composable").to_vector()).collect();
                    let rows = cols.first().map_or(0, Vec::len);
                    let k = kernel_basis(&IntMatrix::from_columns(rows, &cols));
                    k.columns()
                        .iter()
                        .map(|c| Proto::combination(&basis, c, &Proto::zero(src, tgt, 0)))
                        .collect()
                }
                _ => basis,
            };
            let mut delta = Proto::zero(src, tgt, 0);
            for _ in 0..20 {
                let c = self.coeffs(allowed.len(), 1);
                let candidate = Proto::combination(&allowed, &c, &Proto::zero(src, tgt, 0));
                if candidate.comps().values().all(|m| m.max_abs() <= BigInt::from(bound)) {
                    delta = candidate;
                    break;
                }
            }
            deltas.insert(m, delta);
        }
        let cols = columns.into_iter().enumerate().map(|(i, c)| (start + i as i64, c)).collect();
        DoubleComplex::new(cols, deltas).expect("δ² = 0 by construction")
    }
}
