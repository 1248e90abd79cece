//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the report is always printed; exits nonzero on any failure.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use charpreg::frobscan::{colon_degree_scan, full_scan, reg_growth_scan};
use charpreg::groebner::{bracket_power, colon, normal_form, Ideal};
use charpreg::hypersurface::determinantal::{verify_determinantal_identities, Determinantal};
use charpreg::hypersurface::{resolve_over_hypersurface, syz_over_hypersurface};
use charpreg::resolution::{regularity, resolve_quotient, FreeVector, GradedMap};
use charpreg::ring::{Monomial, MonomialOrder, Polynomial, Ring};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const CASES: [(u64, u32); 3] = [(2, 1), (2, 2), (3, 1)];

fn lead_ideals_agree(a: &[Monomial], b: &[Monomial]) -> bool {
    let covered = |xs: &[Monomial], ys: &[Monomial]| xs.iter().all(|m| ys.iter().any(|l| l.divides(m)));
    covered(a, b) && covered(b, a)
}

fn gb_of_family() -> Check {
    for (p, e) in CASES {
        let d = ok(Determinantal::new(p, e))?;
        let q = d.q();
        let target = d.target_ideal();
        let gb = ok(target.groebner_basis())?.to_vec();
        let g = d.g_family();
        let leads_gb: Vec<Monomial> = gb.iter().map(|f| *f.lead_monomial().unwrap()).collect();
        let leads_g: Vec<Monomial> = g.iter().map(|f| *f.lead_monomial().unwrap()).collect();
        ensure(lead_ideals_agree(&leads_gb, &leads_g), || format!("q={q}: lead-term ideals differ"))?;
        for f in &g {
            ensure(ok(normal_form(f, &gb))?.is_zero(), || format!("q={q}: {f} does not reduce to 0"))?;
        }
        for f in &gb {
            ensure(ok(normal_form(f, &g))?.is_zero(), || format!("q={q}: basis element {f} not reduced by G"))?;
        }
    }
    Ok("lead-term ideals and mutual reduction agree for q = 2, 4, 3".into())
}

fn identity_suite() -> Check {
    let mut total = 0;
    for (p, e) in CASES {
        let r = ok(verify_determinantal_identities(p, e))?;
        if !r.all_pass() {
            let bad: Vec<&str> = r.families.iter().filter(|f| !f.passed()).map(|f| f.name).collect();
            return Err(format!("q={}: failing families {bad:?}", r.q));
        }
        total += r.families.iter().map(|f| f.checked).sum::<usize>();
    }
    Ok(format!("7 identity families, {total} exact checks"))
}

fn same_span(
    d: &Determinantal,
    computed: &GradedMap,
    stated: Vec<Vec<Polynomial>>,
) -> Result<bool, String> {
    let s = d.hypersurface();
    let amb = computed.target().clone();
    let stated: Vec<FreeVector> = stated
        .into_iter()
        .map(|c| FreeVector::new(c, amb.clone()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let comp = computed.columns();
    Ok(ok(ok(s.submodule(&amb, &comp))?.contains_all(&stated))?
        && ok(ok(s.submodule(&amb, &stated))?.contains_all(&comp))?)
}

fn determinantal_syzygies() -> Check {
    for (p, e) in CASES {
        let d = ok(Determinantal::new(p, e))?;
        let q = d.q();
        let s = d.hypersurface();
        let first = ok(syz_over_hypersurface(&s, &d.presentation()))?;
        ensure(same_span(&d, &first, d.first_syzygy_columns())?, || {
            format!("q={q}: first syzygies differ from the stated vectors")
        })?;
        let second = ok(syz_over_hypersurface(&s, &d.m_matrix()))?;
        let (w, u) = d.w_u_vectors();
        let wu: Vec<Vec<Polynomial>> = w.into_iter().chain(u).collect();
        ensure(same_span(&d, &second, wu)?, || format!("q={q}: second syzygies differ from W_i, U_i"))?;
    }
    Ok("first and second syzygies span the stated modules over S".into())
}

fn periodic_resolution() -> Check {
    let mut seen = Vec::new();
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let d = ok(Determinantal::new(p, e))?;
        let q = d.q() as i64;
        let n = q as usize;
        let s = d.hypersurface();
        let res = ok(resolve_over_hypersurface(&s, &d.presentation(), 6))?;
        ok(res.check_complex(&s))?;
        let want: Vec<Vec<i64>> = vec![
            vec![0],
            vec![2 * q; 2],
            vec![3 * q; n + 1],
            vec![3 * q + 1; 2 * n],
            vec![3 * q + 2; 2 * n],
            vec![3 * q + 3; 2 * n],
        ];
        for (i, w) in want.iter().enumerate() {
            let got = res.predicted_twists(i).unwrap_or_default();
            ensure(&got == w, || format!("q={q}: F_{i} has twists {got:?}, expected {w:?}"))?;
        }
        ensure(res.period_start().is_some() && res.period_shift() == Some(2), || {
            format!("q={q}: no period of two detected")
        })?;
        seen.push(q);
    }
    Ok(format!("ranks, twists and period 2 match for q = {seen:?}"))
}

fn three_q_bound() -> Check {
    let mut regs = Vec::new();
    for (p, e) in [(2, 1), (2, 2)] {
        let d = ok(Determinantal::new(p, e))?;
        let q = d.q() as i64;
        let i = d.ideal();
        let b = ok(bracket_power(&i, e))?;
        for (k, g) in i.generators().iter().enumerate() {
            let j = ok(b.add_generator(g))?;
            let reg = ok(regularity(&ok(resolve_quotient(&j))?.betti()))?;
            ensure(reg <= 3 * q, || format!("q={q}, i={}: reg {reg} > {}", k + 1, 3 * q))?;
            regs.push(reg);
        }
        // I^[q] + g1 R = (g1, g2^q, g3^q)
        let j1 = ok(b.add_generator(&d.g1))?;
        ensure(ok(j1.same_ideal(&d.target_ideal()))?, || format!("q={q}: I^[q] + g1 R differs"))?;
    }
    Ok(format!("reg values {regs:?} within 3q"))
}

fn regularity_oracles() -> Check {
    let r = ok(Ring::new(5, &["x", "y"], MonomialOrder::Grevlex))?;
    let (x, y) = (var(&r, "x"), var(&r, "y"));
    let zero = ok(Ideal::new(&r, vec![]))?;
    let reg0 = ok(regularity(&ok(resolve_quotient(&zero))?.betti()))?;
    ensure(reg0 == 0, || format!("reg R = {reg0}"))?;
    let mut ideals = vec![];
    for (a, b) in [(1u32, 1u32), (2, 3), (4, 5)] {
        let i = ok(Ideal::new(&r, vec![x.pow(a), y.pow(b)]))?;
        let reg = ok(regularity(&ok(resolve_quotient(&i))?.betti()))?;
        ensure(reg == (a + b) as i64 - 2, || format!("reg R/(x^{a}, y^{b}) = {reg}"))?;
        ideals.push(i);
    }
    let r3 = ok(Ring::new(3, &["x", "y", "z"], MonomialOrder::Grevlex))?;
    let (a, b, c) = (var(&r3, "x"), var(&r3, "y"), var(&r3, "z"));
    ideals.push(ok(Ideal::new(&r3, vec![&a * &b, &b * &c, &c * &a]))?);
    ideals.push(ok(Ideal::new(&r3, vec![&(&a * &b) - &c.pow(2), a.pow(3)]))?);
    ideals.push(Determinantal::new(2, 1).unwrap().ideal());
    ideals.push(Determinantal::new(2, 1).unwrap().target_ideal());
    for i in &ideals {
        let betti = ok(resolve_quotient(i))?.betti();
        let reg = ok(regularity(&betti))?.max(1);
        let n = i.ring().arity();
        for d in 0..=(3 * reg) as u32 {
            let (lhs, rhs) = (hilbert_from_betti(&betti, n, d), hilbert_by_counting(i, d));
            ensure(lhs == rhs, || format!("Hilbert function mismatch in degree {d}: {lhs} vs {rhs}"))?;
        }
    }
    Ok(format!("{} resolutions agree with monomial counting", ideals.len()))
}

fn random_form(r: &Arc<Ring>, rng: &mut StdRng, d: u32) -> Polynomial {
    let mons = monomials_of_degree(r.arity(), d);
    let p = r.characteristic() as i64;
    let terms: Vec<(Monomial, i64)> = (0..rng.gen_range(1..=3))
        .map(|_| (mons[rng.gen_range(0..mons.len())], rng.gen_range(1..p)))
        .collect();
    Polynomial::from_terms(r, terms)
}

fn random_ideal(rng: &mut StdRng, vars: &[&str]) -> Ideal {
    let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
    let r = Ring::new(p, vars, MonomialOrder::Grevlex).unwrap();
    random_ideal_in(rng, &r)
}

fn random_ideal_in(rng: &mut StdRng, r: &Arc<Ring>) -> Ideal {
    loop {
        let count = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for _ in 0..count {
            let d = rng.gen_range(1..=3);
            let f = random_form(r, rng, d);
            if !f.is_zero() {
                gens.push(f);
            }
        }
        if !gens.is_empty() {
            return Ideal::new(r, gens).unwrap();
        }
    }
}

fn colon_oracles() -> Check {
    let mut rng = StdRng::seed_from_u64(2024);
    for k in 0..10 {
        let vars: &[&str] = if k % 2 == 0 { &["x", "y"] } else { &["x", "y", "z"] };
        let i = random_ideal(&mut rng, vars);
        let ii = ok(colon(&i, &i))?;
        ensure(ok(ii.contains(&Polynomial::one(i.ring())))?, || format!("(I:I) != 1 for {:?}", i.generators()))?;
        let unit = Ideal::unit(i.ring());
        ensure(ok(ok(colon(&i, &unit))?.same_ideal(&i))?, || format!("(I:1) != I for {:?}", i.generators()))?;
        if vars.len() == 2 {
            let j = random_ideal_in(&mut rng, i.ring());
            let c = ok(colon(&i, &j))?;
            for d in 0..=8 {
                let (got, want) = (ideal_dim(&c, d), colon_dim_brute_force(&i, &j, d));
                ensure(got == want, || format!("colon dimension {got} != {want} in degree {d}"))?;
            }
        }
    }
    // full certification for the determinantal ideal at q = 2
    let d = ok(Determinantal::new(2, 1))?;
    let i = d.ideal();
    let b = ok(bracket_power(&i, 1))?;
    let c = ok(colon(&b, &i))?;
    let mut certified = 0;
    for r in c.generators() {
        for g in i.generators() {
            ensure(ok(b.contains(&(r * g)))?, || format!("{r} * {g} not in I^[2]"))?;
            certified += 1;
        }
    }
    let rows = ok(colon_degree_scan(&i, 1))?;
    ensure(rows.iter().all(|r| r.certified), || "scan rows not certified".into())?;
    Ok(format!("10 random ideals, brute-force degrees 0..8, {certified} memberships certified"))
}

fn scan_smoke() -> Check {
    let r = ok(Ring::new(2, &["x", "y"], MonomialOrder::Grevlex))?;
    let xy = ok(Ideal::new(&r, vec![&var(&r, "x") * &var(&r, "y")]))?;
    let det = Determinantal::new(2, 1).unwrap().ideal();
    let mut summary = Vec::new();
    for (name, i) in [("(xy)", xy), ("determinantal", det)] {
        let report = ok(full_scan(&i, 2))?;
        let base = ok(regularity(&ok(resolve_quotient(&i))?.betti()))?;
        for row in report.rows.iter().filter(|r| r.e == 0) {
            ensure(row.reg == base, || format!("{name}: e=0 row reg {} != reg(R/I) = {base}", row.reg))?;
        }
        for c in &report.colon {
            ensure(c.max_degree as i64 <= c.colon_reg, || {
                format!("{name}: e={} colon degree {} > reg {}", c.e, c.max_degree, c.colon_reg)
            })?;
        }
        let c0 = report.colon_row(0).ok_or("missing e=0 colon row")?;
        ensure(c0.max_degree == 0 && c0.generator_degrees == [0], || format!("{name}: (I:I) != 1"))?;
        ensure(report.rows.len() == 3 * i.generators().len(), || format!("{name}: missing rows"))?;
        let lone = ok(reg_growth_scan(&i, 2))?;
        ensure(lone.rows == report.rows, || format!("{name}: scans disagree"))?;
        summary.push(format!("{name} C={:.2} K={:.2}", report.c, report.k.unwrap_or(0.0)));
    }
    Ok(summary.join(", "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Groebner basis of the Frobenius family", gb_of_family, Duration::from_secs(30)),
        ("polynomial identity suite", identity_suite, Duration::from_secs(5)),
        ("determinantal syzygies up to span", determinantal_syzygies, Duration::from_secs(90)),
        ("periodic resolution over the hypersurface", periodic_resolution, Duration::from_secs(180)),
        ("3q regularity bound", three_q_bound, Duration::from_secs(120)),
        ("regularity oracle suite", regularity_oracles, Duration::from_secs(10)),
        ("colon oracle suite", colon_oracles, Duration::from_secs(60)),
        ("linear-growth scan smoke", scan_smoke, Duration::from_secs(180)),
    ];
    let mut failed = 0;
    for (n, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let (status, detail) = match (&outcome, took <= *budget) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over budget {budget:?}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {}: {status} {name} [{:.2?}] ({detail})", n + 1, took);
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
