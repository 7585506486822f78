//! Randomized oracle checks: Sturm counting against a sign-change
//! grid-isolation oracle, resultant vanishing against gcd degree, and
//! square-free reassembly. All comparisons are exact, zero tolerance.

use exactalg::{
    int, interpolated_resultant, rat, resultant, squarefree_decomposition, sturm_count, IntervalQ,
    MPoly, Rational, Var,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn linear_root(r: &Rational) -> MPoly {
    // u - r
    MPoly::linear(Var::U, int(1), -r.clone())
}

fn eval_u(p: &MPoly, x: &Rational) -> Rational {
    p.eval(x, x, x)
}

/// Exact root count oracle for a polynomial with known simple roots:
/// walk a rational grid finer than the minimal root gap, count sign
/// changes, and confirm each bracket by bisection.
fn grid_isolation_count(p: &MPoly, roots: &[Rational], lo: &Rational, hi: &Rational) -> usize {
    let mut min_gap = hi - lo;
    for (i, a) in roots.iter().enumerate() {
        for b in roots.iter().skip(i + 1) {
            let d = (a - b).abs();
            if d < min_gap {
                min_gap = d;
            }
        }
    }
    let step = min_gap / int(2);
    let mut count = 0usize;
    let mut x = lo.clone();
    let mut fx = eval_u(p, &x);
    assert!(!fx.is_zero(), "grid endpoint must not be a root");
    while x < *hi {
        let mut x2 = &x + &step;
        if x2 > *hi {
            x2 = hi.clone();
        }
        let mut f2 = eval_u(p, &x2);
        if f2.is_zero() {
            // nudge off the root; gaps guarantee the bracket stays clean
            x2 = (&x + &x2) / int(2);
            f2 = eval_u(p, &x2);
            assert!(!f2.is_zero());
        }
        if (fx.is_positive() && f2.is_negative()) || (fx.is_negative() && f2.is_positive()) {
            // bisect to confirm a genuine crossing
            let (mut a, mut b, mut fa) = (x.clone(), x2.clone(), fx.clone());
            for _ in 0..24 {
                let m = (&a + &b) / int(2);
                let fm = eval_u(p, &m);
                if fm.is_zero() {
                    break;
                }
                if (fa.is_positive() && fm.is_negative()) || (fa.is_negative() && fm.is_positive())
                {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            count += 1;
        }
        x = x2;
        fx = f2;
    }
    count
}

#[test]
fn sturm_count_matches_grid_isolation_oracle() {
    let mut rng = StdRng::seed_from_u64(0x5707);
    let mut done = 0;
    while done < 200 {
        // distinct rational roots, degree <= 6
        let deg = rng.gen_range(1..=6usize);
        let mut roots: Vec<Rational> = Vec::new();
        while roots.len() < deg {
            let r = rat(rng.gen_range(-20..=20), rng.gen_range(1..=8));
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut p = MPoly::constant(int(rng.gen_range(1..=5) * if rng.gen() { 1 } else { -1 }));
        for r in &roots {
            p = &p * &linear_root(r);
        }
        let lo = rat(rng.gen_range(-30..=-21), 1);
        let hi = rat(rng.gen_range(21..=30), 1);
        let sub_lo = rat(rng.gen_range(-80..=0), rng.gen_range(1..=4));
        let sub_hi = &sub_lo + rat(rng.gen_range(1..=80), rng.gen_range(1..=4));
        for (a, b) in [(lo, hi), (sub_lo, sub_hi)] {
            if roots.iter().any(|r| *r == a || *r == b) {
                continue;
            }
            let expected = grid_isolation_count(&p, &roots, &a, &b);
            let truth = roots.iter().filter(|r| a < **r && **r < b).count();
            assert_eq!(expected, truth, "oracle self-check");
            let got = sturm_count(&p, &IntervalQ::new(a, b).unwrap()).unwrap();
            assert_eq!(got, expected);
            done += 1;
        }
    }
}

fn random_upoly(rng: &mut StdRng, max_deg: usize) -> MPoly {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let mut p = MPoly::zero();
        for i in 0..=deg {
            let c = rng.gen_range(-9..=9i64);
            if c != 0 {
                p.insert_term([i as u32, 0, 0], int(c));
            }
        }
        if p.degree(Var::U) >= Some(1) {
            return p;
        }
    }
}

#[test]
fn resultant_vanishes_iff_common_root() {
    let mut rng = StdRng::seed_from_u64(0xA11CE);
    for trial in 0..200 {
        let mut p = random_upoly(&mut rng, 4);
        let mut q = random_upoly(&mut rng, 4);
        if trial % 2 == 0 {
            // plant a shared factor half the time
            let shared = linear_root(&rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
            p = &p * &shared;
            q = &q * &shared;
        }
        let res = resultant(&p, &q, Var::U).unwrap();
        let pd: Vec<Rational> = p
            .coeffs_wrt(Var::U)
            .into_iter()
            .map(|c| c.as_constant().unwrap())
            .collect();
        let qd: Vec<Rational> = q
            .coeffs_wrt(Var::U)
            .into_iter()
            .map(|c| c.as_constant().unwrap())
            .collect();
        let g = uni_gcd_degree(&pd, &qd);
        assert_eq!(
            res.is_zero(),
            g >= 1,
            "trial {trial}: res={res} gcd_deg={g} p={p} q={q}"
        );
    }
}

/// Degree of gcd via plain rational Euclid, independent of the library's
/// integer subresultant chain.
fn uni_gcd_degree(a: &[Rational], b: &[Rational]) -> usize {
    let trim = |v: &[Rational]| -> Vec<Rational> {
        let mut v = v.to_vec();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    };
    let (mut f, mut g) = (trim(a), trim(b));
    while !g.is_empty() {
        // f mod g
        let dg = g.len() - 1;
        let lg = g[dg].clone();
        while f.len() > dg {
            let df = f.len() - 1;
            let c = &f[df] / &lg;
            for i in 0..dg {
                let t = &g[i] * &c;
                f[df - dg + i] -= t;
            }
            f.pop();
            while f.last().is_some_and(Zero::is_zero) {
                f.pop();
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

#[test]
fn squarefree_reassembles_random_products() {
    let mut rng = StdRng::seed_from_u64(0x50F1);
    for _ in 0..100 {
        let nfactors = rng.gen_range(1..=3usize);
        let mut roots: Vec<Rational> = Vec::new();
        let mut p = MPoly::constant(rat(
            rng.gen_range(1..=6) * if rng.gen() { 1 } else { -1 },
            rng.gen_range(1..=3),
        ));
        for _ in 0..nfactors {
            let r = loop {
                let r = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
                if !roots.contains(&r) {
                    break r;
                }
            };
            roots.push(r.clone());
            let mult = rng.gen_range(1..=3u32);
            p = &p * &linear_root(&r).pow(mult);
        }
        let dec = squarefree_decomposition(&p).unwrap();
        let mut prod = MPoly::one();
        for (f, m) in &dec {
            // factors are square-free: gcd(f, f') is constant
            let fd = f.derivative(Var::U);
            if !fd.is_zero() {
                let r = resultant(f, &fd, Var::U).unwrap();
                assert!(!r.is_zero(), "factor must be square-free");
            }
            prod = &prod * &f.pow(*m);
        }
        let c = p.exact_div(&prod).unwrap();
        assert!(c.as_constant().is_some(), "reassembly constant");
        // pairwise coprime
        for i in 0..dec.len() {
            for j in i + 1..dec.len() {
                let r = resultant(&dec[i].0, &dec[j].0, Var::U).unwrap();
                assert!(!r.is_zero(), "factors must be pairwise coprime");
            }
        }
    }
}

// --- property tests -------------------------------------------------------

fn small_poly(vars: &'static [Var], max_deg: u32) -> impl Strategy<Value = MPoly> {
    let nv = vars.len();
    prop::collection::vec((0..=max_deg, 0..=max_deg, -9i64..=9), 1..=6).prop_map(move |terms| {
        let mut p = MPoly::zero();
        for (e1, e2, c) in terms {
            if c == 0 {
                continue;
            }
            let mut e = [0u32; 3];
            e[vars[0].index()] = e1;
            if nv > 1 {
                e[vars[1].index()] = e2;
            }
            p.insert_term(e, int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_swap_sign(
        p in small_poly(&[Var::U, Var::W], 3),
        q in small_poly(&[Var::U, Var::W], 3),
    ) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let m = p.degree(Var::U).unwrap();
        let n = q.degree(Var::U).unwrap();
        let a = resultant(&p, &q, Var::U).unwrap();
        let b = resultant(&q, &p, Var::U).unwrap();
        let expect = if (m * n) % 2 == 1 { -b } else { b };
        prop_assert_eq!(a, expect);
    }

    #[test]
    fn exact_divide_of_product(
        p in small_poly(&[Var::U, Var::W], 3),
        q in small_poly(&[Var::U, Var::W], 3),
    ) {
        prop_assume!(!q.is_zero());
        let prod = &p * &q;
        prop_assert_eq!(prod.exact_div(&q).unwrap(), p);
    }

    #[test]
    fn interpolated_equals_direct(
        p in small_poly(&[Var::U, Var::D], 3),
        q in small_poly(&[Var::U, Var::D], 3),
    ) {
        prop_assume!(p.degree(Var::U) >= Some(1) && q.degree(Var::U) >= Some(1));
        let direct = resultant(&p, &q, Var::U).unwrap();
        let interp = interpolated_resultant(&p, &q, Var::U, Var::D).unwrap();
        prop_assert_eq!(direct, interp);
    }
}
