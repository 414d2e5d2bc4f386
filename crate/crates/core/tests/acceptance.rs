//! Acceptance run: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use sdkit_core::construction::{
    a3, admissible, even_neighbors, lemma1_check, proposition_check, straight_twisted,
};
use sdkit_core::frames::{
    build_gamma, classify_lattice, classify_lattice_with, classify_length, count_cliques,
    enumerate_frames, ClassifyOptions, SearchOptions,
};
use sdkit_core::gf3::{
    are_equivalent, automorphism_group as code_aut, decompose, e4, e4_power, eq2_code, g12,
    minimum_weight, p24, qr24, weight_distribution, TernaryCode,
};
use sdkit_core::lattice::{
    automorphism_group, d_n_plus, e8, is_isomorphic, min_norm, p_neighbor, root_system,
    shadow_vectors, z_n, LatticeGram,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// All codewords of `c`, by brute force over coefficient vectors.
fn codewords(c: &TernaryCode) -> Vec<Vec<u8>> {
    let g = c.generator();
    let n = c.length();
    let mut out = Vec::new();
    let mut coef = vec![0u8; g.len()];
    loop {
        let mut w = vec![0u8; n];
        for (a, row) in coef.iter().zip(g) {
            for (x, y) in w.iter_mut().zip(row) {
                *x = (*x + a * y) % 3;
            }
        }
        out.push(w);
        let Some(i) = coef.iter().position(|&a| a < 2) else {
            break;
        };
        coef[i] += 1;
        coef[..i].fill(0);
    }
    out
}

fn weight_count(words: &[Vec<u8>], w: usize) -> u64 {
    words
        .iter()
        .filter(|v| v.iter().filter(|&&x| x != 0).count() == w)
        .count() as u64
}

/// Monomial maps of length 4 as (permutation, signs).
fn monomials4() -> Vec<([usize; 4], [u8; 4])> {
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p[..i].iter().all(|&x| x != p[i])) {
                        perms.push(p);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for p in perms {
        for s in 0..16u8 {
            let signs = [0, 1, 2, 3].map(|i| if s >> i & 1 == 1 { 2 } else { 1 });
            out.push((p, signs));
        }
    }
    out
}

fn apply4(m: &([usize; 4], [u8; 4]), w: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; 4];
    for i in 0..4 {
        out[m.0[i]] = w[i] * m.1[i] % 3;
    }
    out
}

fn same_words(a: &[Vec<u8>], b: &[Vec<u8>]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

fn criterion1(codes: &mut Vec<TernaryCode>) -> Outcome {
    let l = z_n(4);
    let c = classify_lattice("Z^4", &l).map_err(e)?;
    ensure(c.codes.len() == 1, format!("{} codes", c.codes.len()))?;
    let code = &c.codes[0];
    ensure(
        code.aut_order == BigUint::from(48u32),
        format!("#Aut {}", code.aut_order),
    )?;
    ensure(c.report().mass_contribution == "8", "mass")?;
    codes.push(code.code.clone());

    // oracle: every 4-clique of norm-3 vectors of Z^4, codes by brute force
    let mut vecs = Vec::new();
    for z in 0..4 {
        for s in 0..8 {
            let mut v = [0i64; 4];
            let mut k = 0;
            for (i, x) in v.iter_mut().enumerate() {
                if i != z {
                    *x = if s >> k & 1 == 1 { -1 } else { 1 };
                    k += 1;
                }
            }
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                vecs.push(v);
            }
        }
    }
    let dot = |a: &[i64; 4], b: &[i64; 4]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let maps = monomials4();
    let e4w = codewords(&e4());
    let aut = maps
        .iter()
        .filter(|m| same_words(&e4w.iter().map(|w| apply4(m, w)).collect::<Vec<_>>(), &e4w))
        .count();
    ensure(aut == 48, format!("brute-force #Aut(E4) = {aut}"))?;
    let mut frames = 0;
    let m = vecs.len();
    for a in 0..m {
        for b in a + 1..m {
            for cc in b + 1..m {
                for d in cc + 1..m {
                    let f = [vecs[a], vecs[b], vecs[cc], vecs[d]];
                    if (0..4).any(|i| (i + 1..4).any(|j| dot(&f[i], &f[j]) != 0)) {
                        continue;
                    }
                    frames += 1;
                    // rows: ((e_j, f_i) mod 3)_i
                    let rows: Vec<Vec<u8>> = (0..4)
                        .map(|j| (0..4).map(|i| f[i][j].rem_euclid(3) as u8).collect())
                        .collect();
                    let words = codewords(&TernaryCode::span(4, &rows).map_err(e)?);
                    let hit = maps.iter().any(|mm| {
                        same_words(
                            &words.iter().map(|w| apply4(mm, w)).collect::<Vec<_>>(),
                            &e4w,
                        )
                    });
                    ensure(hit, "a frame code is not equivalent to E4")?;
                }
            }
        }
    }
    // all frames form one orbit of size #Aut(Z^4)/48
    ensure(frames == 384 / 48, format!("{frames} frames"))?;
    ensure(16 * 24 / aut == 8, "mass")?;
    Ok(format!("1 code ≅ E4, #Aut 48, mass 8, {frames} frames"))
}

fn length12_catalog() -> Vec<(String, LatticeGram)> {
    let z = z_n(12);
    let mut v = vec![0i64; 12];
    v[..8].fill(1);
    vec![
        ("Z^12".into(), z.clone()),
        ("E8+Z^4".into(), p_neighbor(&z, &v, 2).expect("2-neighbor")),
        (
            "D12+".into(),
            p_neighbor(&z, &[1; 12], 2).expect("2-neighbor"),
        ),
    ]
}

fn criterion2(codes: &mut Vec<TernaryCode>) -> Outcome {
    let cat = length12_catalog();
    let r = classify_length(12, &cat, ClassifyOptions::default()).map_err(e)?;
    ensure(
        r.mass.expected == "44817920",
        format!("N(12) = {}", r.mass.expected),
    )?;
    ensure(r.mass.total == "44817920", format!("mass {}", r.mass.total))?;
    let d12 = d_n_plus(12).map_err(e)?;
    let mut hits = 0;
    for (name, l) in &cat {
        let c = classify_lattice(name, l).map_err(e)?;
        for code in c.codes {
            if is_isomorphic(&a3(&code.code).map_err(e)?, &d12)
                .map_err(e)?
                .is_some()
            {
                hits += 1;
                ensure(
                    are_equivalent(&code.code, &g12()).map_err(e)?.is_some(),
                    "D12+ code is not G12",
                )?;
            }
            codes.push(code.code);
        }
    }
    ensure(hits == 1, format!("{hits} codes with A3 = D12+"))?;
    Ok(format!(
        "mass {} = N(12), one code for D12+ ≅ G12",
        r.mass.total
    ))
}

fn criterion3(codes: &mut Vec<TernaryCode>) -> Outcome {
    let d = d_n_plus(12).map_err(e)?;
    let c = classify_lattice("L_{24,154}", &d.direct_sum(&d)).map_err(e)?;
    ensure(c.codes.len() == 1, format!("N = {}", c.codes.len()))?;
    let code = &c.codes[0];
    ensure(
        code.aut_order == BigUint::from(72_260_812_800u64),
        format!("#Aut {}", code.aut_order),
    )?;
    let parts = decompose(&code.code);
    ensure(parts.len() == 2, format!("{} components", parts.len()))?;
    for p in &parts {
        ensure(
            are_equivalent(&p.code, &g12()).map_err(e)?.is_some(),
            "component is not G12",
        )?;
    }
    codes.push(code.code.clone());
    Ok(format!("N = 1, G12+G12, #Aut {}", code.aut_order))
}

fn criterion4(codes: &[TernaryCode]) -> Outcome {
    let mut all = codes.to_vec();
    all.extend([e4_power(6), g12().direct_sum(&g12()), eq2_code()]);
    for c in &all {
        let r = lemma1_check(c).map_err(e)?;
        ensure(
            r.alpha1 == r.beta3 && r.alpha2 == r.beta6 + 3 * r.beta3,
            format!("{r:?}"),
        )?;
    }
    Ok(format!("{} codes", all.len()))
}

fn criterion5() -> Outcome {
    let lt = straight_twisted(&eq2_code()).map_err(e)?.second.lattice;
    ensure(
        lt.is_even() && lt.is_unimodular(),
        "L_T is not even unimodular",
    )?;
    let r = root_system(&lt).map_err(e)?;
    ensure(
        r.root_count() == 24 * 25,
        format!("{} roots", r.root_count()),
    )?;
    ensure(r.to_string() == "A24", format!("root system {r}"))?;
    Ok("L_T even unimodular, 600 roots, A24".into())
}

fn criterion6() -> Outcome {
    let p = even_neighbors(&a3(&e4_power(6)).map_err(e)?).map_err(e)?;
    for nb in [&p.first, &p.second] {
        ensure(
            nb.lattice.is_even() && nb.lattice.is_unimodular(),
            "neighbor not even unimodular",
        )?;
        let r = root_system(&nb.lattice).map_err(e)?;
        ensure(
            r.to_string() == "D24" && r.root_count() == 2 * 24 * 23,
            format!("{r} with {} roots", r.root_count()),
        )?;
    }
    ensure(
        is_isomorphic(&p.first.lattice, &p.second.lattice)
            .map_err(e)?
            .is_some(),
        "neighbors not isometric",
    )?;
    Ok("both neighbors D24 (1104 roots), isometric".into())
}

fn criterion7() -> Outcome {
    let c = eq2_code();
    let a = admissible(&c).map_err(e)?;
    ensure(!a.admissible, "code is admissible")?;
    let v = a.first_negative.clone().ok_or("no negative word")?;
    let r = proposition_check(&c, &v).map_err(e)?;
    ensure(r.product == -1 && r.equal && r.isomorphic, format!("{r:?}"))?;
    Ok(format!(
        "{} of {} full-weight words have product -1; swap verified",
        a.negative, a.full_weight
    ))
}

fn criterion8(codes: &[TernaryCode]) -> Outcome {
    let mut corpus: Vec<TernaryCode> = codes.iter().filter(|c| c.length() == 24).cloned().collect();
    corpus.extend([
        e4_power(6),
        g12().direct_sum(&g12()),
        eq2_code(),
        qr24(),
        p24(),
    ]);
    corpus.push(g12().direct_sum(&e4_power(3)));
    for c in &corpus {
        ensure(c.is_self_dual(), "corpus code is not self-dual")?;
        let words = codewords(c);
        let (b3, b6, b24) = (
            weight_count(&words, 3),
            weight_count(&words, 6),
            weight_count(&words, 24),
        );
        ensure(
            b24 as i64 == 48 - 21 * b3 as i64 + b6 as i64,
            format!("β24 {b24}, β3 {b3}, β6 {b6}"),
        )?;
        let w = weight_distribution(c).map_err(e)?;
        ensure(
            (w.beta(3), w.beta(6), w.beta(24)) == (b3, b6, b24),
            "weight_distribution disagrees",
        )?;
    }
    Ok(format!("{} codes", corpus.len()))
}

fn criterion9() -> Outcome {
    let (q, p) = (qr24(), p24());
    for c in [&q, &p] {
        ensure(
            c.is_self_dual() && c.length() == 24 && c.dimension() == 12,
            "not [24,12] self-dual",
        )?;
        ensure(
            minimum_weight(c).map_err(e)? == Some(9),
            "minimum weight is not 9",
        )?;
        ensure(
            min_norm(&a3(c).map_err(e)?).map_err(e)? == 3,
            "A3 min norm is not 3",
        )?;
    }
    ensure(
        are_equivalent(&q, &p).map_err(e)?.is_none(),
        "QR24 and P24 are equivalent",
    )?;
    let (aq, ap) = (
        code_aut(&q).map_err(e)?.order,
        code_aut(&p).map_err(e)?.order,
    );
    Ok(format!("[24,12,9] inequivalent, #Aut {aq} and {ap}"))
}

fn criterion10() -> Outcome {
    // frame orthogonality
    for l in [z_n(4), d_n_plus(12).map_err(e)?, z_n(12)] {
        let c = classify_lattice("L", &l).map_err(e)?;
        for code in &c.codes {
            let f = code.frame.as_ref().ok_or("missing frame")?;
            f.validate(&l).map_err(e)?;
            for (i, x) in f.vectors.iter().enumerate() {
                for (j, y) in f.vectors.iter().enumerate() {
                    let ip = l.inner(x, y);
                    ensure(
                        ip == if i == j { 3 } else { 0 },
                        "frame vectors not orthogonal of norm 3",
                    )?;
                }
            }
        }
    }
    // shadow norms
    for l in [z_n(5), e8().direct_sum(&z_n(4)), d_n_plus(12).map_err(e)?] {
        let n = l.rank() as i64;
        for v in shadow_vectors(&l, n + 8).map_err(e)? {
            ensure(
                (v.norm - n).rem_euclid(8) == 0,
                "shadow norm outside n/4 + 2Z",
            )?;
        }
    }
    // isometry witnesses
    let l = d_n_plus(12).map_err(e)?;
    let u: Vec<Vec<i64>> = (0..12)
        .map(|i| {
            (0..12)
                .map(|j| i64::from(i == j) + i64::from(j == i + 1) * (i as i64 % 3 - 1))
                .collect()
        })
        .collect();
    let m = l.transform(&u).map_err(e)?;
    let w = is_isomorphic(&l, &m).map_err(e)?.ok_or("no witness")?;
    ensure(w.verify(&l, &m), "witness does not conjugate the Grams")?;
    // clique-orbit counting
    for l in [z_n(4), d_n_plus(12).map_err(e)?] {
        let g = build_gamma(&l).map_err(e)?;
        let all = count_cliques(&g, SearchOptions::default()).map_err(e)?;
        let en = enumerate_frames(&g).map_err(e)?;
        let aut = automorphism_group(&l).map_err(e)?.order;
        let mut sum = BigUint::from(0u32);
        for o in &en.orbits {
            let code = sdkit_core::construction::pi_frame(&l, &o.frame).map_err(e)?;
            ensure(
                &aut / code_aut(&code).map_err(e)?.order == o.orbit_size,
                "orbit size",
            )?;
            sum += &o.orbit_size;
        }
        ensure(
            sum == BigUint::from(all),
            format!("orbits cover {sum} of {all} cliques"),
        )?;
    }
    // thread-count independence
    let run = |t| -> Result<String, String> {
        let opts = ClassifyOptions {
            search: SearchOptions {
                threads: Some(t),
                ..Default::default()
            },
            ..Default::default()
        };
        let r = classify_lattice_with("D12+", &d_n_plus(12).map_err(e)?, opts)
            .map_err(e)?
            .report();
        serde_json::to_string(&r).map_err(e)
    };
    ensure(run(1)? == run(4)?, "reports differ between 1 and 4 threads")?;
    Ok("orthogonality, shadow norms, witnesses, orbit counting, thread independence".into())
}

fn report(id: usize, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let r = f();
    let dt = t.elapsed();
    let in_time = dt <= budget;
    let pass = r.is_ok() && in_time;
    let detail = match &r {
        Ok(s) => s.clone(),
        Err(s) => s.clone(),
    };
    let timing = if in_time {
        String::new()
    } else {
        format!(" (over the {}s budget)", budget.as_secs())
    };
    println!(
        "criterion {id:>2}: {} [{:.2}s] {detail}{timing}",
        if pass { "PASS" } else { "FAIL" },
        dt.as_secs_f64()
    );
    pass
}

fn main() {
    let mut codes = Vec::new();
    let mut ok = true;
    ok &= report(1, Duration::from_secs(1), || criterion1(&mut codes));
    ok &= report(2, Duration::from_secs(600), || criterion2(&mut codes));
    ok &= report(3, Duration::from_secs(1800), || criterion3(&mut codes));
    ok &= report(4, Duration::from_secs(600), || criterion4(&codes));
    ok &= report(5, Duration::from_secs(300), criterion5);
    ok &= report(6, Duration::from_secs(600), criterion6);
    ok &= report(7, Duration::from_secs(600), criterion7);
    ok &= report(8, Duration::from_secs(600), || criterion8(&codes));
    ok &= report(9, Duration::from_secs(600), criterion9);
    ok &= report(10, Duration::from_secs(1800), criterion10);
    if !ok {
        std::process::exit(1);
    }
}
