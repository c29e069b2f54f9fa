use kuga_core::exact::lattice::IntVec;
use kuga_core::exact::{eigen_profile, quad_min, IntMatrix, QuadForm};
use kuga_core::slope::vanishing_order;
use kuga_core::{EigenProfile, FourierSupport};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Product of elementary shears, always in `GL(n, Z)`; returns it with its inverse.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let mut h = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    for &(i, j, t) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = vec![vec![0i64; n]; n];
        let mut e_inv = vec![vec![0i64; n]; n];
        for k in 0..n {
            e[k][k] = 1;
            e_inv[k][k] = 1;
        }
        e[i][j] = t;
        e_inv[i][j] = -t;
        let rows = |m: &Vec<Vec<i64>>| {
            IntMatrix::from_i64(&m.iter().map(Vec::as_slice).collect::<Vec<_>>())
        };
        h = h.checked_mul(&rows(&e)).unwrap();
        inv = rows(&e_inv).checked_mul(&inv).unwrap();
    }
    (h, inv)
}

fn gram(b: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| b.iter().map(|r| r[i] * r[j]).sum())
                .collect()
        })
        .collect()
}

fn form(t: &[Vec<i64>]) -> QuadForm {
    QuadForm::from_i64(&t.iter().map(Vec::as_slice).collect::<Vec<_>>())
}

prop_compose! {
    fn psd_form()(d in 1usize..=4)(
        b in prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=d),
        d in Just(d),
    ) -> Vec<Vec<i64>> {
        gram(&b, d)
    }
}

fn shears() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quad_min_is_a_lattice_invariant(t in psd_form(), ops in shears()) {
        let q = form(&t);
        let (h, _) = unimodular(q.dim(), &ops);
        let (m, w) = quad_min(&q).unwrap();
        let (m2, w2) = quad_min(&q.pullback(&h).unwrap()).unwrap();
        prop_assert_eq!(&m, &m2);
        prop_assert_eq!(q.eval(&w), m);
        prop_assert!(w2.iter().any(|x| *x != BigInt::from(0)));
    }

    #[test]
    fn vanishing_order_is_a_lattice_invariant(t in psd_form(), ops in shears()) {
        let d = t.len();
        let even: Vec<Vec<i64>> = t.iter().map(|r| r.iter().map(|x| 2 * x).collect()).collect();
        let q = form(&even);
        let (h, _) = unimodular(d, &ops);
        let a = vanishing_order(&FourierSupport::new(d, vec![q.clone()]).unwrap()).unwrap();
        let b = vanishing_order(&FourierSupport::new(d, vec![q.pullback(&h).unwrap()]).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn eigen_profile_is_a_conjugacy_invariant(blocks in prop::collection::vec(0usize..5, 1..=3), ops in shears()) {
        // rotation blocks of orders 1, 2, 3, 4, 6
        type Block = (&'static [&'static [i64]], &'static [(i64, u64)]);
        let catalog: [Block; 5] = [
            (&[&[1]], &[(0, 1)]),
            (&[&[-1]], &[(1, 2)]),
            (&[&[0, -1], &[1, -1]], &[(1, 3), (2, 3)]),
            (&[&[0, -1], &[1, 0]], &[(1, 4), (3, 4)]),
            (&[&[0, -1], &[1, 1]], &[(1, 6), (5, 6)]),
        ];
        let n: usize = blocks.iter().map(|&b| catalog[b].0.len()).sum();
        let mut m = vec![vec![0i64; n]; n];
        let mut fracs = Vec::new();
        let mut at = 0;
        for &b in &blocks {
            let (blk, ev) = catalog[b];
            for (i, row) in blk.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    m[at + i][at + j] = *x;
                }
            }
            fracs.extend_from_slice(ev);
            at += blk.len();
        }
        let m = IntMatrix::from_i64(&m.iter().map(Vec::as_slice).collect::<Vec<_>>());
        let (h, inv) = unimodular(n, &ops);
        let conj = inv.checked_mul(&m).unwrap().checked_mul(&h).unwrap();
        prop_assert_eq!(eigen_profile(&conj).unwrap(), EigenProfile::from_fracs(&fracs));
    }
}

#[test]
fn root_lattice_minima() {
    // root lattices: minimum 2
    let a2 = QuadForm::from_i64(&[&[2, -1], &[-1, 2]]);
    let d4 = QuadForm::from_i64(&[
        &[2, -1, 0, 0],
        &[-1, 2, -1, -1],
        &[0, -1, 2, 0],
        &[0, -1, 0, 2],
    ]);
    assert_eq!(quad_min(&a2).unwrap().0, BigInt::from(2));
    assert_eq!(quad_min(&d4).unwrap().0, BigInt::from(2));
    let w: IntVec = quad_min(&d4).unwrap().1;
    assert_eq!(d4.eval(&w), BigInt::from(2));
}
