use nckernel::cumulants::{act, act_infinitesimal, free_multiply, moments_to_cumulants, cumulants_to_moments, Brand, MomentSeq};
use nckernel::incidence::{g_bc_m, g_bc_m_t, mult_from_lambda, normalizer_theta, u, MultFn, SemiMultFn};
use nckernel::nc::{lattice, Partition};
use nckernel::verify::{random_c_to_c, random_function};
use nckernel::{Dual, MPoly, Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn lambda(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n - 1).prop_map(|rest| {
        let mut l = vec![Rational::from_int(1)];
        l.extend(rest);
        l
    })
}

fn moments(n: usize) -> impl Strategy<Value = MomentSeq<Rational>> {
    lambda(n).prop_map(|a| MomentSeq::new(a).unwrap())
}

/// Product over irreducible factors of values taken from a random function.
fn random_c_to_m(n_max: usize, seed: u64) -> SemiMultFn<Rational> {
    let base = random_function(n_max, seed).unwrap();
    SemiMultFn::from_fn(n_max, |p| {
        p.irreducible_factors()
            .iter()
            .fold(Rational::from_int(1), |acc, f| acc * base.z(f).unwrap())
    })
    .unwrap()
}

fn block_of(p: &Partition, i: usize) -> usize {
    p.blocks().iter().position(|b| b.contains(&i)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (random_function(5, a).unwrap(), random_function(5, b).unwrap(), random_function(5, c).unwrap());
        let left = f.convolve(&g).unwrap().convolve(&h).unwrap();
        let right = f.convolve(&g.convolve(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverses_are_two_sided(a in any::<u64>()) {
        let f = random_function(6, a).unwrap();
        let e = SemiMultFn::<Rational>::from_fn(6, |_| Rational::from_int(0)).unwrap();
        prop_assert_eq!(f.convolve(&f.inverse()).unwrap(), e.clone());
        prop_assert_eq!(f.inverse().convolve(&f).unwrap(), e);
    }

    #[test]
    fn multiplicative_functions_commute(l1 in lambda(6), l2 in lambda(6)) {
        let f = mult_from_lambda(l1).unwrap().to_semi().unwrap();
        let g = mult_from_lambda(l2).unwrap().to_semi().unwrap();
        let fg = f.convolve(&g).unwrap();
        prop_assert!(fg.is_multiplicative());
        prop_assert_eq!(fg.clone(), g.convolve(&f).unwrap());
        prop_assert!(f.inverse().is_multiplicative());
    }

    #[test]
    fn c_to_c_is_a_subgroup(a in any::<u64>(), b in any::<u64>()) {
        let f = random_c_to_c(6, a).unwrap();
        let g = random_c_to_c(6, b).unwrap();
        prop_assert!(f.convolve(&g).unwrap().is_c_to_c());
        prop_assert!(f.inverse().is_c_to_c());
    }

    #[test]
    fn coset_law_both_ways(a in any::<u64>()) {
        let bc = g_bc_m::<Rational>(5).unwrap();
        let g = random_c_to_c(5, a).unwrap();
        let h = g.convolve(&bc).unwrap();
        prop_assert!(h.is_c_to_m());
        prop_assert_eq!(h.right_coset_decompose().unwrap(), g);

        let h = random_c_to_m(5, a);
        prop_assert!(h.is_c_to_m());
        let g = h.right_coset_decompose().unwrap();
        prop_assert!(g.is_c_to_c());
        prop_assert_eq!(g.convolve(&bc).unwrap(), h);
    }

    #[test]
    fn c_to_c_vanishes_on_split_blocks(a in any::<u64>()) {
        let g = random_c_to_c(5, a).unwrap();
        let parts = lattice(5).unwrap().parts();
        for p in parts {
            for s in parts.iter().filter(|s| p.leq(s).unwrap()) {
                let split = s.blocks().iter().any(|w| {
                    block_of(p, w[0]) != block_of(p, *w.last().unwrap())
                });
                if split {
                    prop_assert!(g.evaluate(p, s).unwrap().is_zero(), "{} {}", p, s);
                }
            }
        }
    }

    #[test]
    fn action_is_a_right_action(m in moments(5), a in any::<u64>(), b in any::<u64>()) {
        let (g1, g2) = (random_function(5, a).unwrap(), random_function(5, b).unwrap());
        let stepwise = act(&act(&m, &g1).unwrap(), &g2).unwrap();
        prop_assert_eq!(stepwise, act(&m, &g1.convolve(&g2).unwrap()).unwrap());
    }

    #[test]
    fn dual_action_extends_plain_action(m in moments(5), psi in lambda(5), a in any::<u64>()) {
        let g = random_function(5, a).unwrap();
        let mut psi2 = psi;
        psi2[0] = Rational::from_int(0);
        let (first, second) = act_infinitesimal(&m, &psi2, &g).unwrap();
        prop_assert_eq!(&first, &act(&m, &g).unwrap());

        let d = MomentSeq::dual(&m, psi2).unwrap();
        let gd = g.map_scalars(|v| Dual::new(v.clone(), Rational::from_int(0)));
        let (plain, inf) = act(&d, &gd).unwrap().split();
        prop_assert_eq!(plain, first);
        prop_assert_eq!(inf, second);
    }

    #[test]
    fn normalizer_formula_matches_conjugation(l in lambda(6), q in rational()) {
        let f = mult_from_lambda(l.clone()).unwrap();
        let conj = f.conjugate_by_u(&q).unwrap();
        let theta = normalizer_theta(&l, &q).unwrap();
        prop_assert_eq!(conj.lambda(), theta.as_slice());
    }

    #[test]
    fn rational_brands_roundtrip(m in moments(6), t in rational()) {
        for brand in [Brand::Moments, Brand::Free, Brand::Boolean, Brand::Monotone, Brand::TBoolean(t.clone())] {
            let c = moments_to_cumulants(&m, &brand).unwrap();
            prop_assert_eq!(cumulants_to_moments(&c, &brand).unwrap(), m.clone());
        }
    }
}

#[test]
fn u_translates_t_boolean_kernels() {
    let (q, t) = (MPoly::named("q"), MPoly::named("t"));
    let lhs = u(6, q.clone()).unwrap().convolve(&g_bc_m_t(6, t.clone()).unwrap()).unwrap();
    assert_eq!(lhs, g_bc_m_t(6, q.add(&t)).unwrap());
}

#[test]
fn u_is_a_one_parameter_subgroup() {
    let (q, r) = (MPoly::named("q"), MPoly::named("r"));
    let lhs = u(6, q.clone()).unwrap().convolve(&u(6, r.clone()).unwrap()).unwrap();
    assert_eq!(lhs, u(6, q.add(&r)).unwrap());
}

#[test]
fn symbolic_brands_roundtrip() {
    let m = MomentSeq::<MPoly>::symbolic("m", 6).unwrap();
    let t = MPoly::named("t");
    for brand in [Brand::Free, Brand::Boolean, Brand::Monotone, Brand::TBoolean(t)] {
        let c = moments_to_cumulants(&m, &brand).unwrap();
        assert_eq!(cumulants_to_moments(&c, &brand).unwrap(), m);
    }
}

#[test]
fn free_multiplication_is_associative() {
    let x = MomentSeq::<MPoly>::symbolic("x", 5).unwrap();
    let y = MomentSeq::<MPoly>::symbolic("y", 5).unwrap();
    let z = MomentSeq::<MPoly>::symbolic("z", 5).unwrap();
    let left = free_multiply(&free_multiply(&x, &y).unwrap(), &z).unwrap();
    let right = free_multiply(&x, &free_multiply(&y, &z).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn multiplicative_roundtrip_through_lambda() {
    let l: Vec<Rational> = (1..=6).map(|k| Rational::from_int(k * k - 2 * k + 2)).collect();
    let f = mult_from_lambda(l.clone()).unwrap();
    assert_eq!(MultFn::from_semi(&f.to_semi().unwrap()).unwrap().lambda(), l.as_slice());
}
