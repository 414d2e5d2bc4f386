use num_bigint::BigUint;
use sdkit_core::frames::{
    build_gamma, build_gamma_with, classify_lattice, classify_lattice_with, classify_length,
    count_cliques, enumerate_frames, ClassifyMethod, ClassifyOptions, SearchOptions,
};
use sdkit_core::gf3::{are_equivalent, e4_power, g12};
use sdkit_core::lattice::{automorphism_group, d_n_plus, e8, p_neighbor, z_n, LatticeGram};

fn length12_catalog() -> Vec<(String, LatticeGram)> {
    let z = z_n(12);
    let mut v = vec![0i64; 12];
    v[..8].fill(1);
    vec![
        ("Z^12".to_string(), z.clone()),
        ("E8+Z^4".to_string(), p_neighbor(&z, &v, 2).unwrap()),
        ("D12+".to_string(), p_neighbor(&z, &[1; 12], 2).unwrap()),
    ]
}

#[test]
fn d12_plus_single_orbit_is_golay() {
    let l = d_n_plus(12).unwrap();
    let g = build_gamma(&l).unwrap();
    let e = enumerate_frames(&g).unwrap();
    assert_eq!(e.orbits.len(), 1);
    let c = classify_lattice("D12+", &l).unwrap();
    assert_eq!(c.codes.len(), 1);
    assert!(are_equivalent(&c.codes[0].code, &g12()).unwrap().is_some());
    assert_eq!(c.codes[0].aut_order, BigUint::from(190_080u32));
}

#[test]
fn clique_orbit_counting_identity() {
    // D12+ is covered by the acceptance run
    for l in [z_n(4), z_n(8)] {
        let g = build_gamma(&l).unwrap();
        let all = count_cliques(&g, SearchOptions::default()).unwrap();
        let e = enumerate_frames(&g).unwrap();
        let aut = automorphism_group(&l).unwrap().order;
        let mut sum = BigUint::from(0u32);
        for o in &e.orbits {
            o.frame.validate(&l).unwrap();
            sum += &o.orbit_size;
            let code = sdkit_core::construction::pi_frame(&l, &o.frame).unwrap();
            let ca = sdkit_core::gf3::automorphism_group(&code).unwrap().order;
            assert_eq!(&aut / &ca, o.orbit_size);
        }
        assert_eq!(sum, BigUint::from(all));
    }
}

#[test]
fn shadow_filter_does_not_change_orbits() {
    for l in [
        z_n(4),
        d_n_plus(12).unwrap(),
        length12_catalog()[1].1.clone(),
    ] {
        let with = classify_lattice_with("L", &l, ClassifyOptions::default()).unwrap();
        let without = classify_lattice_with(
            "L",
            &l,
            ClassifyOptions {
                shadow_filter: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(with.report().codes, without.report().codes);
    }
}

#[test]
fn filter_removes_vectors_in_e8_plus_z4() {
    let l = &length12_catalog()[1].1;
    let with = build_gamma(l).unwrap();
    let without = build_gamma_with(l, false).unwrap();
    assert_eq!(without.len(), 976);
    assert_eq!(with.filtered_count(), 16);
    assert_eq!(with.len(), 960);
}

#[test]
fn length12_mass() {
    let cat = length12_catalog();
    let r = classify_length(12, &cat, ClassifyOptions::default()).unwrap();
    assert_eq!(r.mass.expected, "44817920");
    assert!(r.mass.pass, "{:?}", r.mass);
    let ns: Vec<usize> = r.lattices.iter().map(|x| x.n).collect();
    assert_eq!(ns, vec![1, 1, 1]);
    let auts: Vec<&str> = r
        .lattices
        .iter()
        .map(|x| x.codes[0].aut_order.as_str())
        .collect();
    assert_eq!(auts, vec!["663552", "62208", "190080"]);
    assert!(r.decomposition_consistent);
}

#[test]
fn z12_frames_are_e4_cubed() {
    let c = classify_lattice("Z^12", &z_n(12)).unwrap();
    assert_eq!(c.codes.len(), 1);
    assert!(are_equivalent(&c.codes[0].code, &e4_power(3))
        .unwrap()
        .is_some());
}

#[test]
fn d12_plus_pair_blockwise() {
    let d = d_n_plus(12).unwrap();
    let c = classify_lattice("L_{24,154}", &d.direct_sum(&d)).unwrap();
    assert_eq!(c.method, ClassifyMethod::Blockwise);
    assert_eq!(c.codes.len(), 1);
    assert_eq!(c.codes[0].aut_order, BigUint::from(72_260_812_800u64));
    assert!(c.codes[0].decomposable);
    assert!(are_equivalent(&c.codes[0].code, &g12().direct_sum(&g12()))
        .unwrap()
        .is_some());
}

#[test]
fn e8_summand_blocks_frames() {
    let d8 = sdkit_core::lattice::d8_pair_plus();
    let l = e8().direct_sum(&d8);
    let c = classify_lattice("L_{24,153}", &l).unwrap();
    assert!(c.codes.is_empty());
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let l = d_n_plus(12).unwrap();
    let run = |t| {
        let opts = ClassifyOptions {
            search: SearchOptions {
                threads: Some(t),
                ..Default::default()
            },
            ..Default::default()
        };
        serde_json::to_string(&classify_lattice_with("D12+", &l, opts).unwrap().report()).unwrap()
    };
    assert_eq!(run(1), run(4));
}
