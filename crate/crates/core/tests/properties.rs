use num_traits::{One, Zero};
use proptest::prelude::*;

use hardcore::cayley::{cayley_ratio, cayley_tree};
use hardcore::exact_arith::{contains_point, disk_in_disk, in_closure, rat, rat_int, Membership};
use hardcore::fast_impl::generate_disk;
use hardcore::graph_core::{
    brute_force_partition, implement_copies, merge_roots, ratio, tree_partition, Ratio, RootedGraph,
};
use hardcore::moebius::{classify, f_lambda, g_map, MoebiusKind};
use hardcore::regions::shearer_radius;
use hardcore::{GaussianRational, Moebius, Rational, RationalDisk, SpherePoint};

type Gq = GaussianRational;

fn rational(num: i64, den: i64) -> impl Strategy<Value = Rational> {
    (-num..=num, 1..=den).prop_map(|(n, d)| rat(n, d))
}

fn gq() -> impl Strategy<Value = Gq> {
    (rational(30, 12), rational(30, 12)).prop_map(|(a, b)| Gq::new(a, b))
}

fn nonzero_gq() -> impl Strategy<Value = Gq> {
    gq().prop_filter("nonzero", |z| !z.is_zero())
}

/// Random tree from a parent array, rooted anywhere.
fn tree(max_n: usize) -> impl Strategy<Value = RootedGraph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
            (Just(n), parents, 0..n)
        })
        .prop_map(|(n, parents, root)| {
            let edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            RootedGraph::new(n, &edges, root, n.max(1)).unwrap()
        })
}

fn moebius() -> impl Strategy<Value = Moebius<Gq>> {
    (gq(), gq(), gq(), gq())
        .prop_filter_map("degenerate", |(a, b, c, d)| Moebius::new(a, b, c, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tree_recursion_matches_brute_force(t in tree(12), lam in gq()) {
        prop_assert_eq!(tree_partition(&t, &lam).unwrap(), brute_force_partition(&t, &lam).unwrap());
    }

    #[test]
    fn positive_integer_lambda_counts(t in tree(10)) {
        let pp = tree_partition(&t, &Gq::one()).unwrap();
        prop_assert!(pp.z_in.re.is_integer() && pp.z_in.im.is_zero());
        prop_assert!(pp.z_out.re >= pp.z_in.re);
    }

    #[test]
    fn merge_law(g1 in tree(7), g2 in tree(7), lam in nonzero_gq()) {
        let m = merge_roots(&g1.with_delta(16).unwrap(), &g2).unwrap();
        let (a, b, c) = (ratio(&g1, &lam).unwrap(), ratio(&g2, &lam).unwrap(), ratio(&m, &lam).unwrap());
        if let (Ratio::Finite(a), Ratio::Finite(b), Ratio::Finite(c)) = (a, b, c) {
            prop_assert_eq!(&c * &lam, &a * &b);
        }
    }

    #[test]
    fn copies_law(g in tree(6), h in tree(5), lam in nonzero_gq()) {
        let combined = implement_copies(&g.with_delta(16).unwrap(), &h).unwrap();
        if let Ratio::Finite(mu) = ratio(&h, &lam).unwrap() {
            let lhs = ratio(&combined, &lam).unwrap();
            let rhs = ratio(&g, &mu).unwrap();
            if lhs != Ratio::Indeterminate && rhs != Ratio::Indeterminate {
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn moebius_composition_and_inverse(m1 in moebius(), m2 in moebius(), z in gq()) {
        let p = SpherePoint::Finite(z);
        prop_assert_eq!(m1.compose(&m2).apply(&p), m1.apply(&m2.apply(&p)));
        prop_assert_eq!(m1.inverse().apply(&m1.apply(&p)), p.clone());
        prop_assert!(m1.compose(&m1.inverse()).is_identity());
    }

    #[test]
    fn trace_squared_is_conjugation_invariant(m in moebius(), h in moebius()) {
        let conj = h.compose(&m).compose(&h.inverse());
        prop_assert_eq!(conj.tr_squared(), m.tr_squared());
        prop_assert_eq!(classify(&conj).kind, classify(&m).kind);
    }

    #[test]
    fn f_lambda_trace(lam in nonzero_gq()) {
        let m = f_lambda(&lam).unwrap();
        prop_assert_eq!(m.tr_squared(), -lam.inv().unwrap());
        let kind = classify(&m).kind;
        if !lam.is_real() {
            prop_assert_eq!(kind, MoebiusKind::Loxodromic);
        }
    }

    #[test]
    fn pair_map_is_composition(mu in nonzero_gq(), chi in nonzero_gq(), z in gq()) {
        let g = g_map(&mu, &chi).unwrap();
        let direct = f_lambda(&mu).unwrap().compose(&f_lambda(&chi).unwrap());
        let p = SpherePoint::Finite(z);
        prop_assert_eq!(g.apply(&p), direct.apply(&p));
    }

    #[test]
    fn field_laws(a in gq(), b in nonzero_gq()) {
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
        prop_assert_eq!((&a * &b).norm_sqr(), a.norm_sqr() * b.norm_sqr());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn generate_disk_contract(
        ca in gq(),
        ra in (1i64..40, 1i64..12),
        scale in 1i64..40,
        off in (-99i64..=99, -99i64..=99),
    ) {
        let ra = rat(ra.0, ra.1);
        let rb = &ra * rat(scale, 10);
        let cb = &ca + &Gq::new(rat(off.0, 100), rat(off.1, 100)).scale(&rb);
        let a = RationalDisk::from_center_radius(&ca, &ra).unwrap();
        let b = RationalDisk::from_center_radius(&cb, &rb).unwrap();
        prop_assume!(contains_point(&b, &ca) == Membership::Inside && !disk_in_disk(&b, &a));
        let d = generate_disk(&a, &b).unwrap();
        prop_assert!(disk_in_disk(&d, &a) && disk_in_disk(&d, &b));
        prop_assert!(d.radius_sq() * rat_int(128) >= *a.radius_sq());
        for p in d.points() {
            prop_assert!(in_closure(&a, p) && in_closure(&b, p));
        }
    }

    #[test]
    fn shearer_bound(t in tree(9), x in -1000i64..=1000, y in -1000i64..=1000) {
        let delta = t.max_degree().max(2);
        let r = shearer_radius(delta);
        let lam = Gq::new(rat(x, 1000), rat(y, 1000)).scale(&r);
        prop_assume!(!lam.is_zero() && lam.norm_sqr() < &r * &r);
        let Ratio::Finite(q) = ratio(&t, &lam).unwrap() else {
            return Err(TestCaseError::fail("infinite ratio inside the Shearer disk"));
        };
        let d = rat_int(delta as i64 - 1);
        prop_assert!(q.norm_sqr() < Rational::one() / (&d * &d));
    }

    #[test]
    fn cayley_ratio_is_tree_ratio(d in 1usize..=3, n in 0usize..=3, lam in nonzero_gq()) {
        let t = cayley_tree(d, n).unwrap();
        let expect = ratio(&t, &lam).unwrap().to_sphere();
        if let Some(e) = expect {
            prop_assert_eq!(cayley_ratio(&lam, d as u32, n), e);
        }
    }
}

#[test]
fn ratio_vanishes_at_zero() {
    let t = RootedGraph::path(4, 2).unwrap();
    assert_eq!(ratio(&t, &Gq::zero()).unwrap(), Ratio::Finite(Gq::zero()));
}
