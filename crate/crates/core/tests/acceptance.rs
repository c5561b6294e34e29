//! Acceptance criteria 1–11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nckernel::cumulants::{self, Brand, MomentSeq};
use nckernel::hopf::{self, Antipode, Side, SymGen, TGen};
use nckernel::incidence::{self, MultFn, SemiMultFn};
use nckernel::nc::{chains_between, lattice, Partition};
use nckernel::ring::{Generator, Poly, Tensor};
use nckernel::{MPoly, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn poly(s: &str) -> MPoly {
    s.parse().unwrap()
}

/// Set partitions of `{1..n}` as block lists, via restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().max().unwrap() + 1;
        out.push((0..k).map(|b| (1..=n).filter(|&x| rgs[x - 1] == b).collect()).collect());
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let bound = rgs[..i].iter().max().unwrap() + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

fn crosses(blocks: &[Vec<usize>]) -> bool {
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            for &p in a {
                for &q in a {
                    for &r in b {
                        for &s in b {
                            if (p < r && r < q && q < s) || (r < p && p < s && s < q) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for n in 1..=8 {
        let brute: BTreeSet<Partition> = set_partitions(n)
            .into_iter()
            .filter(|b| !crosses(b))
            .map(|b| Partition::from_blocks(n, &b).unwrap())
            .collect();
        let ours: BTreeSet<Partition> = e(lattice(n))?.parts().iter().cloned().collect();
        ensure(brute == ours, || format!("NC({n}) differs from filtered set partitions"))?;
    }
    within(start, Duration::from_secs(10))?;
    for n in 1..=6 {
        let parts = e(lattice(n))?.parts();
        for p in parts {
            let k = p.kreweras();
            ensure(p.num_blocks() + k.num_blocks() == n + 1, || format!("|{p}| + |Kr| != n + 1"))?;
            for q in parts {
                ensure(e(p.leq(q))? == e(q.kreweras().leq(&k))?, || format!("Kr not order-reversing on {p}, {q}"))?;
            }
        }
        let images: BTreeSet<Partition> = parts.iter().map(|p| p.kreweras()).collect();
        ensure(images.len() == parts.len(), || "Kr not a bijection".into())?;
    }
    Ok(())
}

fn random_fn(rng: &mut ChaCha8Rng, n_max: usize) -> SemiMultFn<Rational> {
    SemiMultFn::from_fn(n_max, |_| {
        Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())
    })
    .unwrap()
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let fs: Vec<_> = (0..50).map(|_| random_fn(&mut rng, 5)).collect();
    let unit = e(incidence::unit_e::<Rational>(5))?;
    for i in 0..50 {
        let (a, b, c) = (&fs[i], &fs[(i + 1) % 50], &fs[(i + 2) % 50]);
        let left = e(e(a.convolve(b))?.convolve(c))?;
        let right = e(a.convolve(&e(b.convolve(c))?))?;
        ensure(left == right, || format!("associativity fails for triple {i}"))?;
        let inv = a.inverse();
        ensure(e(a.convolve(&inv))? == unit && e(inv.convolve(a))? == unit, || format!("inverse fails for {i}"))?;
    }
    within(start, Duration::from_secs(30))?;
    for _ in 0..5 {
        let lam = |rng: &mut ChaCha8Rng| {
            let mut v = vec![Rational::from_int(1)];
            v.extend((1..5).map(|_| Rational::from_int(rng.gen_range(-4..=4))));
            MultFn::new(v).unwrap().to_semi().unwrap()
        };
        let (f, g) = (lam(&mut rng), lam(&mut rng));
        ensure(e(f.convolve(&g))? == e(g.convolve(&f))?, || "multiplicative functions do not commute".into())?;
    }
    let (q1, q2) = (poly("q1"), poly("q2"));
    let lhs = e(e(incidence::u(7, q1.clone()))?.convolve(&e(incidence::u(7, q2.clone()))?))?;
    ensure(lhs == e(incidence::u(7, q1.add_ref(&q2)))?, || "u_q1 * u_q2 != u_(q1+q2)".into())
}

/// `π ≪ σ` straight from the definition.
fn strongly_below(p: &Partition, s: &Partition) -> bool {
    s.blocks().iter().all(|w| {
        let owner = p.block_of(w[0]);
        w.iter().all(|&x| p.blocks()[p.block_of(x)].iter().all(|y| w.contains(y)))
            && p.block_of(*w.last().unwrap()) == owner
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_3() -> Check {
    let parts = e(lattice(6))?.parts();
    for p in parts.iter().filter(|p| p.is_irreducible()) {
        let above: Vec<&Partition> = parts.iter().filter(|s| strongly_below(p, s)).collect();
        let k = p.num_blocks();
        ensure(above.len() == 1 << (k - 1), || format!("{p}: {} strong upper bounds", above.len()))?;
        for j in 1..=k {
            let c = above.iter().filter(|s| s.num_blocks() == j).count();
            ensure(c == binomial(k - 1, j - 1), || format!("{p}: {c} with {j} blocks"))?;
        }
        ensure(above.iter().all(|s| p.ll(s).unwrap()), || format!("ll disagrees at {p}"))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let mut c2c = || {
            SemiMultFn::from_fn(6, |p| {
                if p.is_irreducible() {
                    Rational::from_int(rng.gen_range(-5..=5))
                } else {
                    Rational::from_int(0)
                }
            })
            .unwrap()
        };
        let (a, b) = (c2c(), c2c());
        ensure(e(a.convolve(&b))?.is_c_to_c() && a.inverse().is_c_to_c(), || "c-to-c not a subgroup".into())?;
    }
    let t = poly("t");
    let boolean = e(incidence::g_bc_m::<MPoly>(6))?;
    for (name, h) in [
        ("fc-m", e(incidence::g_fc_m::<MPoly>(6))?),
        ("bc-m-t", e(incidence::g_bc_m_t(6, t.clone()))?),
        ("mc-m", e(incidence::g_mc_m::<MPoly>(6))?),
    ] {
        let g = e(h.right_coset_decompose())?;
        ensure(g.is_c_to_c() && e(g.convolve(&boolean))? == h, || format!("{name} does not roundtrip"))?;
    }
    let ut = e(SemiMultFn::from_fn(6, |p| {
        if p.is_irreducible() {
            t.pow(p.num_blocks() as u32 - 1)
        } else {
            MPoly::zero()
        }
    }))?;
    ensure(e(e(incidence::g_bc_m_t(6, t.clone()))?.right_coset_decompose())? == ut, || "bc-m-t does not decompose to u_t".into())
}

fn criterion_5() -> Check {
    let lambda = e(MomentSeq::symbolic("l", 6))?.values().to_vec();
    let q = poly("q");
    let f = e(MultFn::new(lambda.clone()))?;
    let fs = e(f.to_semi())?;
    let u = e(incidence::u(6, q.clone()))?;
    let conj = e(e(u.inverse().convolve(&fs))?.convolve(&u))?;
    ensure(conj.is_multiplicative(), || "u^-1 * f * u is not multiplicative".into())?;
    let theta = e(f.conjugate_by_u(&q))?;
    let th = theta.lambda();
    ensure(th[2] == poly("l3 + q*l2"), || format!("theta_3 = {}", th[2]))?;
    ensure(th[3] == poly("l4 + 2*q*l3 + q*l2^2 + q^2*l2"), || format!("theta_4 = {}", th[3]))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let t = poly("t");
    for n in 2..=6 {
        let bx = e(MomentSeq::symbolic("x", n))?;
        let by = e(MomentSeq::symbolic("y", n))?;
        ensure(e(cumulants::t_boolean_multiply_check(&bx, &by, &t))?, || format!("fails at n = {n}"))?;
    }
    within(start, Duration::from_secs(300))
}

/// Displays from the appendix, with `ρ_k(x) = rxk` and `ρ_k(y) = ryk`.
const APPENDIX: [(usize, &str); 4] = [
    (5, "-1/12*rx2*ry2"),
    (6, "-1/4*rx2^2*ry2 - 1/4*rx2*ry2^2 - 1/3*rx2*ry3 - 1/3*rx3*ry2"),
    (
        7,
        "-rx3*ry3 - 4/3*rx2^2*ry2^2 + 7/180*rx2*ry2 - 19/12*rx2^2*ry3 - 19/12*rx3*ry2^2 \
         - 3/4*rx2*ry4 - 3/4*rx4*ry2 - 17/12*rx2*rx3*ry2 - 17/12*rx2*ry2*ry3 \
         - 1/6*rx2^3*ry2 - 1/6*rx2*ry2^3",
    ),
    (
        8,
        "7/30*rx2*ry3 + 7/30*rx3*ry2 + 43/180*rx2*ry2^2 + 43/180*rx2^2*ry2 \
         - 4/3*rx2*ry5 - 4/3*rx5*ry2 - 4/3*rx2*ry2^2*ry3 - 4/3*rx2^2*rx3*ry2 \
         - 4/3*rx2*ry3^2 - 4/3*rx3^2*ry2 - 32/3*rx2^2*ry2*ry3 - 32/3*rx2*rx3*ry2^2 \
         - 8/3*rx3*ry2^3 - 8/3*rx2^3*ry3 - 9/2*rx2^2*ry4 - 9/2*rx4*ry2^2 \
         - 20/3*rx3*ry2*ry3 - 20/3*rx2*rx3*ry3 - 2*rx2^2*ry2^3 - 2*rx2^3*ry2^2 \
         - 3*rx2*ry2*ry4 - 3*rx2*rx4*ry2 - 2*rx3*ry4 - 2*rx4*ry3",
    ),
];

fn criterion_7() -> Check {
    for n in 2..=4 {
        let d = e(cumulants::monotone_discrepancy(n))?;
        ensure(d.is_zero(), || format!("n = {n}: {d}"))?;
    }
    for (n, text) in APPENDIX {
        let start = Instant::now();
        let d = e(cumulants::monotone_discrepancy(n))?;
        ensure(d == poly(text), || format!("n = {n}: got {d}"))?;
        within(start, Duration::from_secs(120))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let mut left = Antipode::new(Side::Left);
    let mut right = Antipode::new(Side::Right);
    for n in 1..=6 {
        for p in &e(lattice(n))?.parts()[1..] {
            let g = e(TGen::new(p))?.unwrap();
            let s = left.gen(g);
            ensure(s == right.gen(g), || format!("left/right differ at {p}"))?;
            ensure(s == e(hopf::antipode_chains(p, false))?, || format!("all-chains differs at {p}"))?;
            ensure(s == e(hopf::antipode_chains(p, true))?, || format!("efficient differs at {p}"))?;
            let id_s = hopf::convolve_on_generator(g, |x| x.clone(), |x| left.apply(x));
            ensure(id_s.is_zero(), || format!("Id * S nonzero at {p}"))?;
        }
    }
    let z = Partition::zero(4);
    let s = hopf::antipode_bogoliubov(&e(hopf::x(&z))?, Side::Left);
    ensure(s.len() == 25, || format!("S(X_0_4) has {} terms", s.len()))?;
    let all = e(hopf::antipode_chain_terms(&z, false))?.len();
    ensure(all == 29, || format!("{all} all-chain summands"))
}

fn criterion_9() -> Check {
    let t = e(hopf::count_efficient_chains_0n(9))?;
    ensure(t == vec![1, 1, 4, 25, 206, 2060, 23920, 314065, 4582300], || format!("{t:?}"))?;
    for n in 2..=6 {
        let count = e(chains_between(&Partition::zero(n), &Partition::one(n), false))?
            .filter(|c| c.is_efficient())
            .count();
        ensure(count as u128 == t[n - 1], || format!("n = {n}: {count} efficient chains"))?;
    }
    ensure(hopf::series_identity_holds(&t), || "U(zU(z)) != (2 - z)U(z) - 1".into())
}

fn criterion_10() -> Check {
    let one = |m: &nckernel::ring::Monomial<TGen>| Poly::term(Rational::from_int(1), m.clone());
    for n in 1..=5 {
        for p in &e(lattice(n))?.parts()[1..] {
            let xp = e(hopf::x(p))?;
            let d = hopf::comultiply(&xp);
            let via_t = d.map(|_, m| hopf::psi_to_sym(&one(m)));
            ensure(via_t == hopf::sym_comultiply(&hopf::psi_to_sym(&xp)), || format!("Psi at {p}"))?;
            let via_t = d.map(|_, m| hopf::phi_to_z(&one(m)));
            ensure(via_t == hopf::z_comultiply(&hopf::phi_to_z(&xp)), || format!("Phi at {p}"))?;
            let g = e(TGen::new(p))?.unwrap();
            ensure(hopf::is_primitive(&xp) == (p.num_blocks() == 2), || format!("Prim at {p} (weight {})", g.weight()))?;
        }
    }
    let y = |k| Poly::var(SymGen(k));
    let mut expected = Tensor::from_factors(&[y(3), Poly::one()]);
    expected.add_assign(&Tensor::from_factors(&[y(2), y(2)]).scale(&Rational::from_int(3)));
    expected.add_assign(&Tensor::from_factors(&[Poly::one(), y(3)]));
    ensure(hopf::sym_comultiply(&y(3)) == expected, || "Delta(Y3)".into())
}

fn criterion_11() -> Check {
    let (s, t) = (poly("s"), poly("t"));
    let k = e(cumulants::transition_kernel(&Brand::TBoolean(s.clone()), &Brand::TBoolean(t.clone()), 6))?;
    for n in 1..=6 {
        for (p, v) in e(lattice(n))?.parts().iter().zip(k.row(n)) {
            let want = if p.is_irreducible() {
                s.sub_ref(&t).pow(p.num_blocks() as u32 - 1)
            } else {
                MPoly::zero()
            };
            ensure(*v == want, || format!("s->t kernel at {p}: {v}"))?;
        }
    }
    let rho = e(MomentSeq::symbolic("r", 6))?;
    let direct = e(cumulants::boolean_from_brand(&rho, &e(incidence::g_mc_m(6))?))?;
    let composite = e(cumulants::act(
        &e(cumulants::cumulants_to_moments(&rho, &Brand::Monotone))?,
        &e(incidence::g_bc_m::<MPoly>(6))?.inverse(),
    ))?;
    ensure(direct == composite, || "Boolean from monotone".into())?;
    let alpha: Vec<MPoly> = (1..=6).map(|k| poly(&format!("a{k}"))).collect();
    ensure(e(cumulants::tilde_alpha_identity_check(&alpha))?, || "tilde alpha".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("lattice and Kreweras", criterion_1),
        ("group laws", criterion_2),
        ("strong upper bound counts", criterion_3),
        ("coset structure", criterion_4),
        ("normalizer theorem", criterion_5),
        ("t-Boolean free multiplication", criterion_6),
        ("monotone discrepancy", criterion_7),
        ("antipodes", criterion_8),
        ("efficient chain counts", criterion_9),
        ("Psi, Phi and primitives", criterion_10),
        ("transition formulas", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", i + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
