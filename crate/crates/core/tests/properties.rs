use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use dgkern::complexes::{functor_l, functor_r, hom_complex, hom_support, homology_h, Complex, Proto};
use dgkern::cones::{cokernel_protosplit, direct_sum, mapping_cone};
use dgkern::ell::{decode, encode, encode_map, ModuleMorphism};
use dgkern::monoidal::{associator, left_unitor, permutation_inverse, symmetry, tensor, tensor_layout, tensor_proto, ChainIso};
use dgkern::random::Gen;
use dgkern::totals::{dg_compose, dg_hom_differential, dg_hom_rank, embed_i, total_complex, DGHomElement};
use dgkern::zlinalg::{element_equal, kernel_basis, rank, sign, smith_normal_form, FPAbGroup, IntMatrix};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-5i64..=5, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

/// Bareiss fraction-free elimination.
fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i)).collect();
    let mut prev = BigInt::one();
    let mut s = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    s = -s;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    s * &a[n - 1][n - 1]
}

fn square_zero(c: &Complex) -> bool {
    c.support().all(|n| (&c.d(n - 1) * &c.d(n)).is_zero())
}

fn euler(c: &Complex) -> i64 {
    homology_h(c).groups.iter().map(|(n, g)| sign(*n) * g.free_rank as i64).sum()
}

fn pick(g: &mut Gen, v: &[i64]) -> i64 {
    v[g.size(0, v.len() - 1)]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn smith_form(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert_eq!(det(&s.u).abs(), BigInt::one());
        prop_assert_eq!(det(&s.v).abs(), BigInt::one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(rank(&m) + kernel_basis(&m).cols(), m.cols());
    }

    #[test]
    fn element_equality_is_an_equivalence(m in matrix(), seed in any::<u64>()) {
        let g = FPAbGroup::from_presentation(&m);
        let n = g.generator_count();
        let mut r = Gen::new(seed);
        let x: Vec<BigInt> = (0..n).map(|_| BigInt::from(r.int(-3, 3))).collect();
        let rel: Vec<BigInt> = if g.presentation.cols() > 0 { g.presentation.column(0) } else { vec![BigInt::zero(); n] };
        let y: Vec<BigInt> = x.iter().zip(&rel).map(|(a, b)| a + b * 3).collect();
        let z: Vec<BigInt> = (0..n).map(|_| BigInt::from(r.int(-3, 3))).collect();
        prop_assert!(element_equal(&g, &x, &x).unwrap());
        prop_assert!(element_equal(&g, &x, &y).unwrap() && element_equal(&g, &y, &x).unwrap());
        let (xz, yz) = (element_equal(&g, &x, &z).unwrap(), element_equal(&g, &y, &z).unwrap());
        prop_assert_eq!(xz, yz);
    }

    #[test]
    fn hom_complexes_square_to_zero(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b) = (g.complex(4, 3, 3), g.complex(4, 3, 3));
        prop_assert!(square_zero(&hom_complex(&a, &b).unwrap()));
        prop_assert!(square_zero(&tensor(&a, &b).unwrap()));
    }

    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b, c) = (g.complex(3, 2, 2), g.complex(3, 2, 2), g.complex(3, 2, 2));
        let (ab, bc): (Vec<i64>, Vec<i64>) = (hom_support(&a, &b).collect(), hom_support(&b, &c).collect());
        prop_assume!(!ab.is_empty() && !bc.is_empty());
        let (p, q) = (pick(&mut g, &bc), pick(&mut g, &ab));
        let (h, f) = (g.proto(&b, &c, p, 3), g.proto(&a, &b, q, 3));
        let lhs = Proto::compose(&h, &f).unwrap().differential();
        let rhs = &Proto::compose(&h.differential(), &f).unwrap()
            + &Proto::compose(&h, &f.differential()).unwrap().scale_i64(sign(p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn r_is_l_of_suspension(lo in -3i64..3, ranks in prop::collection::vec(0usize..3, 1..5)) {
        let x = Complex::graded(lo, ranks);
        prop_assert_eq!(functor_r(&x).unwrap(), functor_l(&x.suspend(1)).unwrap());
    }

    #[test]
    fn suspension_shifts_homology(seed in any::<u64>(), k in -3i64..=3) {
        let a = Gen::new(seed).complex(4, 3, 4);
        prop_assert_eq!(homology_h(&a.suspend(k)), homology_h(&a).shifted(k));
    }

    #[test]
    fn associator_and_unitor(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b, c) = (g.complex(3, 2, 2), g.complex(3, 2, 2), g.complex(3, 2, 2));
        let assoc = associator(&a, &b, &c).unwrap();
        let iso = ChainIso { backward: permutation_inverse(&assoc), forward: assoc };
        prop_assert!(iso.holds());
        let lu = left_unitor(&a).unwrap();
        let iso = ChainIso { backward: permutation_inverse(&lu), forward: lu };
        prop_assert!(iso.holds());
    }

    #[test]
    fn symmetry_is_natural(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b, a2, b2) = (g.complex(3, 2, 2), g.complex(3, 2, 2), g.complex(3, 2, 2), g.complex(3, 2, 2));
        let s = symmetry(&a, &b).unwrap();
        prop_assert!(s.is_chain_map());
        prop_assert_eq!(Proto::compose(&symmetry(&b, &a).unwrap(), &s).unwrap(), Proto::identity(s.source()));
        let (fs, hs): (Vec<i64>, Vec<i64>) = (hom_support(&a, &a2).collect(), hom_support(&b, &b2).collect());
        prop_assume!(!fs.is_empty() && !hs.is_empty());
        let (p, q) = (pick(&mut g, &fs), pick(&mut g, &hs));
        let (f, h) = (g.proto(&a, &a2, p, 2), g.proto(&b, &b2, q, 2));
        let lhs = Proto::compose(&symmetry(&a2, &b2).unwrap(), &tensor_proto(&f, &h).unwrap()).unwrap();
        let rhs = Proto::compose(&tensor_proto(&h, &f).unwrap(), &s).unwrap().scale_i64(sign(p * q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_distributes(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b, c) = (g.complex(3, 2, 2), g.complex(3, 2, 2), g.complex(3, 2, 2));
        let lhs = tensor(&Complex::direct_sum(&a, &b), &c).unwrap();
        let (ac, bc) = (tensor(&a, &c).unwrap(), tensor(&b, &c).unwrap());
        let rhs = Complex::direct_sum(&ac, &bc);
        prop_assert_eq!(lhs.rank_map(), rhs.rank_map());
        // a ⊗ z goes to the A⊗C summand, b ⊗ z to the B⊗C summand
        let perm = |n: i64| {
            let mut m = IntMatrix::zeros(rhs.rank(n), lhs.rank(n));
            let (la, lb) = (tensor_layout(&a, &c, n), tensor_layout(&b, &c, n));
            for blk in tensor_layout(&Complex::direct_sum(&a, &b), &c, n) {
                let ra = a.rank(blk.p);
                for i in 0..blk.left {
                    for j in 0..blk.right {
                        let row = if i < ra {
                            la.iter().find(|t| t.p == blk.p).unwrap().index(i, j)
                        } else {
                            ac.rank(n) + lb.iter().find(|t| t.p == blk.p).unwrap().index(i - ra, j)
                        };
                        m.set(row, blk.index(i, j), BigInt::one());
                    }
                }
            }
            m
        };
        for n in lhs.support() {
            prop_assert_eq!(&perm(n - 1) * &lhs.d(n), &rhs.d(n) * &perm(n));
        }
    }

    #[test]
    fn cones_and_sums(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b) = (g.complex(3, 2, 2), g.complex(3, 2, 2));
        prop_assert!(direct_sum(&a, &b).equations_hold());
        let f = g.chain_map(&a, &b, 2);
        let mc = mapping_cone(&f).unwrap();
        prop_assert!(square_zero(&mc.cone));
        prop_assert!(mc.inj.is_cycle() && mc.proj.is_cycle());
        prop_assert_eq!(euler(&mc.cone), euler(&b) - euler(&a));
        // B -> Mc f split by the projection to B
        let t = Proto::build(mc.cone.clone(), b.clone(), 0, |n, _, _| {
            IntMatrix::hstack(&[&IntMatrix::identity(b.rank(n)), &IntMatrix::zeros(b.rank(n), a.rank(n - 1))])
        }).unwrap();
        let c = cokernel_protosplit(&mc.inj, &t).unwrap();
        prop_assert!(c.equations_hold());
        for n in mc.cone.support() {
            prop_assert_eq!(&c.object.d(n) * &c.w.comp(n), &c.w.comp(n - 1) * &mc.cone.d(n));
        }
    }

    #[test]
    fn encoding_round_trips_and_is_functorial(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = g.complex(5, 3, 4);
        prop_assert_eq!(decode(&encode(&a)), a.clone());
        prop_assert_eq!(encode(&decode(&encode(&a))), encode(&a));
        let (b, c) = (g.complex(3, 2, 2), g.complex(3, 2, 2));
        let (f, h) = (g.chain_map(&a, &b, 2), g.chain_map(&b, &c, 2));
        let composite = encode_map(&Proto::compose(&h, &f).unwrap()).unwrap();
        let parts = ModuleMorphism::compose(&encode_map(&h).unwrap(), &encode_map(&f).unwrap()).unwrap();
        for n in a.support() {
            prop_assert_eq!(composite.comp(n), parts.comp(n));
        }
        prop_assert!(composite.is_natural());
    }

    #[test]
    fn totals(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = g.double_complex(3, 3, 3);
        let tot = total_complex(&a).unwrap();
        prop_assert!(square_zero(&tot));
        for n in tot.support() {
            let count: usize = a.column_range().map(|m| a.column(m).rank(n - m)).sum();
            prop_assert_eq!(tot.rank(n), count);
        }
        let x = g.complex(3, 2, 3);
        prop_assert_eq!(total_complex(&embed_i(&x)).unwrap(), x);
    }

    #[test]
    fn dg_hom_laws(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b, c) = (g.double_complex(2, 2, 2), g.double_complex(2, 2, 2), g.double_complex(2, 2, 2));
        let random = |g: &mut Gen, s, t, n| {
            let r = dg_hom_rank(s, t, n);
            let v: Vec<BigInt> = (0..r).map(|_| BigInt::from(g.int(-2, 2))).collect();
            DGHomElement::from_vector(s, t, n, &v).unwrap()
        };
        let (p, q) = (g.int(-2, 2), g.int(-2, 2));
        let f = random(&mut g, &a, &b, q);
        let h = random(&mut g, &b, &c, p);
        prop_assert!(dg_hom_differential(&dg_hom_differential(&f)).is_zero());
        let lhs = dg_hom_differential(&dg_compose(&h, &f).unwrap());
        let left = dg_compose(&dg_hom_differential(&h), &f).unwrap();
        let right = dg_compose(&h, &dg_hom_differential(&f)).unwrap();
        let rhs: Vec<BigInt> = left.to_vector().iter().zip(right.to_vector()).map(|(x, y)| x + y * sign(p)).collect();
        prop_assert_eq!(lhs.to_vector(), rhs);
    }
}
