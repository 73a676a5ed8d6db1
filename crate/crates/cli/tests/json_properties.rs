use std::sync::Arc;

use fgl_cli::json::*;
use fgl_core::formal_group::{reconstruct, InstanceGenerator};
use fgl_core::hopf::{AlgebraSpec, HopfAlgebra};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pick(which: usize) -> Arc<HopfAlgebra> {
    let spec = match which {
        0 => AlgebraSpec::primitive(&[("t", 1)], 5),
        1 => AlgebraSpec::builtin("qtu", 5).unwrap(),
        _ => AlgebraSpec::builtin("binomial", 5).unwrap(),
    };
    Arc::new(spec.build().unwrap())
}

fn run(args: &[&str], stdin: &str) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = fgl_cli::run(
        std::iter::once("fgl").chain(args.iter().copied()),
        &mut stdin.as_bytes(),
        &mut out,
        &mut err,
    );
    (code, out, err)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_and_tensors_round_trip(which in 0usize..3, seed: u64) {
        let alg = pick(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, c) = InstanceGenerator::new(&alg, 4).pair(&mut rng).unwrap();

        let text = serde_json::to_string(&series_to_json(&g)).unwrap();
        let back = series_from_json(&alg, &serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &g);

        let back = tensor_from_json(&alg, 2, &tensor_to_json(&c)).unwrap();
        prop_assert_eq!(&back, &c);

        let spec = alg.spec();
        let aj = AlgebraJson::from_spec(spec).unwrap();
        let text = serde_json::to_string(&aj).unwrap();
        let aj2: AlgebraJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&aj2.to_spec().unwrap(), spec);
    }

    #[test]
    fn groups_round_trip_through_the_tool(which in 0usize..3, seed: u64) {
        let alg = pick(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, c) = InstanceGenerator::new(&alg, 4).pair(&mut rng).unwrap();
        let f = reconstruct(&g, &c, 4).unwrap();
        let text = serde_json::to_string(&group_to_json(alg.spec(), &f).unwrap()).unwrap();

        // Same bytes in, same bytes out.
        let a = run(&["roundtrip", "--group", "-", "--format", "json"], &text);
        let b = run(&["roundtrip", "--group", "-", "--format", "json"], &text);
        prop_assert_eq!(a.0, 0, "{}", String::from_utf8_lossy(&a.2));
        prop_assert_eq!(&a.1, &b.1);

        let (code, out, _) = run(&["log", "--group", "-", "--format", "json"], &text);
        prop_assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        let g2 = series_from_value(&alg, 1, 1, 4, &v["result"]).unwrap();
        let agr = g2.compare(&g).unwrap();
        prop_assert!(agr.holds() && agr.through >= 4);

        let (code, out, _) = run(&["cocycle", "--group", "-", "--format", "json"], &text);
        prop_assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        prop_assert_eq!(tensor_from_json(&alg, 2, &v["result"]).unwrap(), c);
    }

    #[test]
    fn malformed_input_never_panics(text in ".{0,80}", cmd in 0usize..4) {
        let command = ["verify", "log", "roundtrip", "inverse"][cmd];
        let (code, _, _) = run(&[command, "--group", "-", "--order", "3"], &text);
        prop_assert_eq!(code, 2);
    }

    #[test]
    fn malformed_expressions_never_panic(src in "[t()x^0-9+*/ -]{0,24}") {
        let (code, _, _) = run(&["check-cocycle", "--hopf", "binomial", "--hdeg", "4", "--cocycle", &src], "");
        prop_assert!([0, 1, 2].contains(&code));
        let (code, _, _) = run(&["reconstruct", "--hopf", "trivial", "--log", &src, "--cocycle", "0", "--order", "3"], "");
        prop_assert!([0, 1, 2].contains(&code));
    }

    #[test]
    fn malformed_groups_never_panic(
        series in prop::sample::select(vec!["X", "X + Y", "Y + X*Y", "2X + Y", "1 + X + Y", "X + Y + t (x) t"]),
        order in 1u32..5,
    ) {
        let text = format!(r#"{{ "hopf": "binomial", "order": {order}, "series": "{series}" }}"#);
        for command in ["verify", "log", "cocycle", "inverse", "roundtrip", "specialize"] {
            let (code, _, _) = run(&[command, "--group", "-", "--hdeg", "4"], &text);
            prop_assert!([0, 1, 2, 3].contains(&code), "{command}: {code}");
        }
    }
}
