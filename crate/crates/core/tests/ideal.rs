use cyclocat::arith::{CyclotomicField, Field};
use cyclocat::gradedmod::{dual, example_v, free, tensor, trivial, v_k, TensorVariant};
use cyclocat::hopf::{HnStructure, Structure};
use cyclocat::ideal::{
    is_free_over_hnk, is_in_i, is_in_ik, random_member, string_polynomial, IdealSearch, Membership, NonMembership,
    ReplayError,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = CyclotomicField;

fn structure(n: u64) -> Structure<Q> {
    HnStructure::rational(n).unwrap()
}

#[test]
fn strings_and_free_modules_are_members() {
    let s = structure(6);
    let search = IdealSearch::default();
    for k in 0..2 {
        let v = v_k(&s, k, 2).unwrap();
        let outcome = is_in_ik(&v, k, &search).unwrap();
        let cert = outcome.certificate().expect("a string is its own filtration");
        assert_eq!((cert.len(), cert.primes()), (1, vec![k]));
        assert!(cert.replay(&v).is_ok());
    }
    let h = free(&s, 0);
    for k in 0..2 {
        assert!(is_free_over_hnk(&h, k));
        assert!(is_in_ik(&h, k, &search).unwrap().is_member());
    }
}

#[test]
fn example_v_lies_in_the_second_ideal() {
    let s = structure(6);
    let v = example_v(&s).unwrap();
    let search = IdealSearch::default();
    let outcome = is_in_ik(&v, 1, &search).unwrap();
    assert_eq!(outcome.label(), "MEMBER");
    let cert = outcome.certificate().unwrap();
    assert_eq!(cert.primes(), vec![1, 1]);
    assert!(cert.replay(&v).is_ok());
    assert!(is_in_i(&v, &search).unwrap().is_member());
    assert!(!is_in_ik(&v, 0, &search).unwrap().is_member());
}

#[test]
fn non_members_carry_obstructions() {
    let s = structure(6);
    let search = IdealSearch::default();
    match is_in_i(&trivial(&s, 0), &search).unwrap() {
        Membership::NotMember(NonMembership::Divisibility { divisor, .. }) => {
            assert_eq!(divisor, "v^2 - v + 1".parse().unwrap());
        }
        other => panic!("expected a divisibility obstruction, got {}", other.label()),
    }
    let v3 = v_k(&s, 1, 0).unwrap();
    assert!(!is_free_over_hnk(&v3, 0));
    assert!(matches!(is_in_ik(&v3, 0, &search).unwrap(), Membership::NotMember(_)));
    assert_eq!(string_polynomial(&v3, 1), "1 + v^2 + v^4".parse().unwrap());
}

#[test]
fn tampered_certificates_are_rejected() {
    let s = structure(6);
    let v = example_v(&s).unwrap();
    let cert = is_in_ik(&v, 1, &IdealSearch::default()).unwrap().certificate().unwrap().clone();

    let mut short = cert.clone();
    short.steps.pop();
    assert!(matches!(short.replay(&v), Err(ReplayError::Incomplete { .. })));

    let mut wrong_prime = cert.clone();
    wrong_prime.steps[0].k = 2;
    assert_eq!(wrong_prime.replay(&v), Err(ReplayError::PrimeIndex { step: 0, k: 3 }));

    let mut repeated = cert.clone();
    repeated.steps[1] = repeated.steps[0].clone();
    assert!(matches!(repeated.replay(&v), Err(ReplayError::Degenerate { step: 1, k: 2 })));

    let mut moved = cert;
    moved.steps[0].shift += 1;
    assert!(matches!(moved.replay(&v), Err(ReplayError::Generator { step: 0 })));
}

#[test]
fn certificate_files_use_one_based_primes() {
    let s = structure(6);
    let v = example_v(&s).unwrap();
    let cert = is_in_ik(&v, 1, &IdealSearch::default()).unwrap().certificate().unwrap().clone();
    let files = cert.to_files(s.field());
    assert_eq!(files.len(), cert.len());
    for (file, step) in files.iter().zip(&cert.steps) {
        assert_eq!(file.k, step.k + 1);
        assert_eq!(file.degree, -file.shift);
        let parsed: Vec<_> = file.generator.iter().map(|x| s.field().parse(x).unwrap()).collect();
        assert_eq!(parsed, step.generator.coords);
    }
    let json = serde_json::to_string(&files).unwrap();
    assert_eq!(serde_json::from_str::<Vec<cyclocat::ideal::StepFile>>(&json).unwrap(), files);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_members_replay_and_close(seed in any::<u64>(), n in prop::sample::select(vec![6u64, 10, 12])) {
        let s = structure(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let member = random_member(&s, 14, 3, &mut rng).unwrap();
        prop_assert!(member.certificate.replay(&member.module).is_ok());
        let phi = cyclocat::arith::cyclotomic_polynomial(n).unwrap();
        prop_assert!(member.module.graded_dimension().div_exact(&phi).is_some());
        let search = IdealSearch { seed, ..IdealSearch::default() };
        let d = dual(&member.module);
        let outcome = is_in_i(&d, &search).unwrap();
        prop_assert!(!matches!(outcome, Membership::NotMember(_)));
        if let Some(cert) = outcome.certificate() {
            prop_assert!(cert.replay(&d).is_ok());
        }
        let t = tensor(&member.module, &trivial(&s, 1), TensorVariant::Q).unwrap();
        prop_assert!(!matches!(is_in_i(&t, &search).unwrap(), Membership::NotMember(_)));
    }
}
