use crate::complexes::{Complex, Proto};
use crate::zlinalg::IntMatrix;

/// `A ⊕ B` with injections `i : A -> A⊕B`, `j : B -> A⊕B` and projections
/// `q : A⊕B -> A`, `p : A⊕B -> B`.
#[derive(Clone, Debug)]
pub struct DirectSumWitness {
    pub object: Complex,
    pub i: Proto,
    pub j: Proto,
    pub p: Proto,
    pub q: Proto,
}

pub fn direct_sum(a: &Complex, b: &Complex) -> DirectSumWitness {
    let object = Complex::direct_sum(a, b);
    let top = |n: i64| IntMatrix::vstack(&[&IntMatrix::identity(a.rank(n)), &IntMatrix::zeros(b.rank(n), a.rank(n))]);
    let bottom = |n: i64| IntMatrix::vstack(&[&IntMatrix::zeros(a.rank(n), b.rank(n)), &IntMatrix::identity(b.rank(n))]);
    let i = Proto::build(a.clone(), object.clone(), 0, |n, _, _| top(n)).unwrap();
    let j = Proto::build(b.clone(), object.clone(), 0, |n, _, _| bottom(n)).unwrap();
    let q = Proto::build(object.clone(), a.clone(), 0, |n, _, _| top(n).transpose()).unwrap();
    let p = Proto::build(object.clone(), b.clone(), 0, |n, _, _| bottom(n).transpose()).unwrap();
    DirectSumWitness { object, i, j, p, q }
}

impl DirectSumWitness {
    /// `p∘i = 0`, `q∘i = 1`, `p∘j = 1`, `i∘q + j∘p = 1` and `q∘j = 0`.
    pub fn equations_hold(&self) -> bool {
        let c = |g: &Proto, f: &Proto| Proto::compose(g, f).expect("witness maps compose");
        let (a, b) = (self.i.source(), self.j.source());
        c(&self.p, &self.i).is_zero()
            && c(&self.q, &self.i) == Proto::identity(a)
            && c(&self.p, &self.j) == Proto::identity(b)
            && &c(&self.i, &self.q) + &c(&self.j, &self.p) == Proto::identity(&self.object)
            && c(&self.q, &self.j).is_zero()
            && [&self.i, &self.j, &self.p, &self.q].iter().all(|m| m.is_chain_map())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::l_z;

    #[test]
    fn sum_with_zero() {
        let w = direct_sum(&l_z(), &Complex::zero());
        assert_eq!(w.object, l_z());
        assert!(w.equations_hold());
    }

    #[test]
    fn two_units() {
        let k = Complex::point(0);
        let w = direct_sum(&k, &k);
        assert_eq!(w.object.rank(0), 2);
        assert!(w.equations_hold());
    }

    #[test]
    fn mixed_supports() {
        let w = direct_sum(&l_z().suspend(3), &Complex::point(-2));
        assert!(w.equations_hold());
    }
}
