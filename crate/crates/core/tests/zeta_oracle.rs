mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{big, random_family, random_values};
use subset_itrans::circuit::{CircuitBuilder, DirectEval};
use subset_itrans::lattice::{down_closure, up_closure, SetFamily};
use subset_itrans::oracle::{brute_zeta, ZetaKind};
use subset_itrans::ring::{BigIntRing, Ring};
use subset_itrans::zeta::{
    down_zeta_on_targets, up_zeta_on_downclosure, zeta_by_complement, zeta_on_targets,
    IndexedFunction, ZetaVariant,
};

fn dense(f: &IndexedFunction<BigInt>) -> Vec<BigInt> {
    f.values.iter().map(|v| v.clone().unwrap_or_default()).collect()
}

fn instance(rng: &mut ChaCha8Rng) -> (SetFamily, Vec<BigInt>, SetFamily) {
    let n = rng.gen_range(1..=12);
    let density = rng.gen_range(0.1..0.6);
    let f = random_family(rng, n, 60, density);
    let gd = rng.gen_range(0.1..0.9);
    let g = random_family(rng, n, 60, gd);
    let vals = big(&random_values(rng, f.len(), -10, 10));
    (f, vals, g)
}

#[test]
fn up_zeta_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let (f, vals, _) = instance(&mut rng);
        let func = IndexedFunction::new(f.clone(), vals.clone()).unwrap();
        let got = up_zeta_on_downclosure(&mut DirectEval::new(&BigIntRing), &func);
        assert_eq!(got.domain, down_closure(&f));
        let want = brute_zeta(ZetaKind::Up, &f, &vals, &got.domain, &BigIntRing);
        assert_eq!(dense(&got), want);
    }
}

#[test]
fn down_zeta_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let (f, vals, g) = instance(&mut rng);
        let func = IndexedFunction::new(f.clone(), vals.clone()).unwrap();
        let got = down_zeta_on_targets(&mut DirectEval::new(&BigIntRing), &func, &g).unwrap();
        assert_eq!(dense(&got), brute_zeta(ZetaKind::Down, &f, &vals, &g, &BigIntRing));
    }
}

#[test]
fn all_variants_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let (f, vals, g) = instance(&mut rng);
        let func = IndexedFunction::new(f.clone(), vals.clone()).unwrap();
        let up = brute_zeta(ZetaKind::Up, &f, &vals, &g, &BigIntRing);
        let down = brute_zeta(ZetaKind::Down, &f, &vals, &g, &BigIntRing);
        for (variant, want) in [
            (ZetaVariant::UpViaUpClosure, &up),
            (ZetaVariant::UpViaDownClosure, &up),
            (ZetaVariant::DownViaDownClosure, &down),
            (ZetaVariant::DownViaUpClosure, &down),
        ] {
            let mut b = DirectEval::new(&BigIntRing);
            let got = zeta_on_targets(&mut b, variant, &func, &g).unwrap();
            assert_eq!(&dense(&got), want, "{variant:?}");
        }
    }
}

#[test]
fn complement_variant_at_n10() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let f = random_family(&mut rng, 10, 80, 0.5);
        let g = random_family(&mut rng, 10, 80, 0.3);
        let vals = big(&random_values(&mut rng, f.len(), -10, 10));
        let func = IndexedFunction::new(f.clone(), vals.clone()).unwrap();
        let got = zeta_by_complement(&mut DirectEval::new(&BigIntRing), true, &func, &g).unwrap();
        assert_eq!(dense(&got), brute_zeta(ZetaKind::Up, &f, &vals, &g, &BigIntRing));
    }
}

/// Superset sums on complemented inputs are subset sums on the originals.
#[test]
fn complement_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..50 {
        let (f, vals, g) = instance(&mut rng);
        let func = IndexedFunction::new(f.clone(), vals).unwrap();
        let mut b = DirectEval::new(&BigIntRing);
        let dual = zeta_on_targets(
            &mut b,
            ZetaVariant::UpViaUpClosure,
            &func.complemented(),
            &g.complement(),
        )
        .unwrap();
        let direct = zeta_on_targets(&mut b, ZetaVariant::DownViaUpClosure, &func, &g).unwrap();
        assert_eq!(dense(&dual.complemented().restrict_to(&g)), dense(&direct));
    }
}

#[test]
fn circuit_and_direct_modes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..30 {
        let (f, vals, g) = instance(&mut rng);
        let mut cb = CircuitBuilder::new();
        let inputs: Vec<_> = (0..f.len()).map(|_| cb.input()).collect();
        let wired = IndexedFunction::new(f.clone(), inputs).unwrap();
        let out = down_zeta_on_targets(&mut cb, &wired, &g).unwrap();
        for (k, w) in out.values.iter().enumerate() {
            if let Some(w) = w {
                cb.output(k.to_string(), *w);
            }
        }
        let circuit = cb.finish();
        let evald = circuit.evaluate(&vals, &BigIntRing).unwrap();
        let want = brute_zeta(ZetaKind::Down, &f, &vals, &g, &BigIntRing);
        for (k, w) in want.iter().enumerate() {
            let got = evald.get(&k.to_string()).cloned().unwrap_or_else(|| BigInt::from(0));
            assert_eq!(&got, w);
        }
    }
}

#[test]
fn gate_counts_are_trimmed() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let (f, _, g) = instance(&mut rng);
        let n = f.ground_size();

        let mut cb = CircuitBuilder::new();
        let inputs: Vec<_> = (0..f.len()).map(|_| cb.input()).collect();
        let wired = IndexedFunction::new(f.clone(), inputs).unwrap();
        up_zeta_on_downclosure(&mut cb, &wired);
        let extra = cb.gate_count() - f.len();
        assert!(extra <= n * down_closure(&f).len());

        let mut cb = CircuitBuilder::new();
        let inputs: Vec<_> = (0..f.len()).map(|_| cb.input()).collect();
        let wired = IndexedFunction::new(f.clone(), inputs).unwrap();
        down_zeta_on_targets(&mut cb, &wired, &g).unwrap();
        let extra = cb.gate_count() - f.len();
        assert!(extra <= n * down_closure(&g).len());

        let mut cb = CircuitBuilder::new();
        let inputs: Vec<_> = (0..f.len()).map(|_| cb.input()).collect();
        let wired = IndexedFunction::new(f.clone(), inputs).unwrap();
        zeta_on_targets(&mut cb, ZetaVariant::DownViaUpClosure, &wired, &g).unwrap();
        let extra = cb.gate_count() - f.len();
        assert!(extra <= n * up_closure(&f).len());
    }
}

#[test]
fn works_in_other_rings() {
    let ring = subset_itrans::ring::ModPrimeRing::new(1_000_003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..30 {
        let (f, vals, g) = instance(&mut rng);
        let modvals: Vec<u64> = vals.iter().map(|v| ring.reduce(v)).collect();
        let func = IndexedFunction::new(f.clone(), modvals.clone()).unwrap();
        let got = down_zeta_on_targets(&mut DirectEval::new(&ring), &func, &g).unwrap();
        let got: Vec<u64> = got.values.iter().map(|v| v.unwrap_or(ring.zero())).collect();
        assert_eq!(got, brute_zeta(ZetaKind::Down, &f, &modvals, &g, &ring));
    }
}
