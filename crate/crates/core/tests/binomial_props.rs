use num_bigint::BigUint;
use parry_pascal::binomial::{binom_words, PrefixTrie, Saturating};
use parry_pascal::checks::{
    all_words, integer_binomials, lucas_consistency, modular_agreement, oracle_equivalence, unary_reduction,
    zero_block_identity,
};
use parry_pascal::{
    binom_row, binom_words_exact, binom_words_mod, brute_force_count, lucas_binom_mod, NumerationSystem, Word,
};
use proptest::prelude::*;

fn phi_words(maxlen: usize) -> Vec<Word> {
    let phi = NumerationSystem::from_text("1,1").unwrap();
    phi.words(phi.u(maxlen).unwrap())
}

#[test]
fn ternary_oracle() {
    let words = all_words(3, 8);
    assert_eq!(words.len(), 9841);
    let outcome = oracle_equivalence("ternary", &words, &words).unwrap();
    assert!(outcome.passed(), "{outcome}");
}

#[test]
fn binary_and_golden_oracles() {
    let binary = all_words(2, 8);
    assert!(oracle_equivalence("binary", &binary, &binary).unwrap().passed());
    let lang = phi_words(8);
    assert_eq!(lang.len(), 55);
    assert!(oracle_equivalence("golden", &lang, &lang).unwrap().passed());
}

/// The combinations-based counter agrees with the dynamic program on the language.
#[test]
fn brute_force_counter_on_language() {
    let lang = phi_words(8);
    for u in &lang {
        let row = binom_row(u, &lang).unwrap();
        for (v, got) in lang.iter().zip(row) {
            assert_eq!(brute_force_count(u, v).unwrap(), got, "({u}, {v})");
        }
    }
}

#[test]
fn identities() {
    assert!(zero_block_identity(&phi_words(5), 4).unwrap().passed());
    for a in 1..=3 {
        assert!(unary_reduction(a, 12).unwrap().passed());
    }
    assert!(lucas_consistency(64, &[2, 3, 5]).unwrap().passed());
    for q in [2, 3, 5, 7] {
        assert!(modular_agreement(&phi_words(6), q).unwrap().passed());
    }
}

#[test]
fn large_counts() {
    // binom(1^80, 1^40) = C(80, 40)
    let u = Word::repeat(1, 80);
    let v = Word::repeat(1, 40);
    assert_eq!(
        binom_words_exact(&u, &v),
        "107507208733336176461620".parse::<BigUint>().unwrap()
    );
    assert!(binom_words::<u64>(&u, &v).is_err());
    assert_eq!(binom_words_mod(&u, &v, 2).unwrap(), 0);
    assert_eq!(binom_words_mod(&u, &v, 3).unwrap(), lucas_binom_mod(80, 40, 3).unwrap());
}

fn word(max_letter: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..=max_letter, 0..=max_len).prop_map(Word::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dp_matches_combinations(u in word(2, 12), v in word(2, 5)) {
        prop_assert_eq!(binom_words::<u64>(&u, &v).unwrap(), brute_force_count(&u, &v).unwrap());
    }

    #[test]
    fn appending_letters(u in word(2, 10), v in word(2, 6), a in 0u32..3, b in 0u32..3) {
        let lhs: u64 = binom_words(&u.pushed(a), &v.pushed(b)).unwrap();
        let rhs: u64 = binom_words::<u64>(&u, &v.pushed(b)).unwrap()
            + if a == b { binom_words::<u64>(&u, &v).unwrap() } else { 0 };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn letter_counts_sum_to_powers(u in word(2, 12), k in 0usize..4) {
        let c = integer_binomials(13);
        let vs: Vec<Word> = all_words(3, k).into_iter().filter(|w| w.len() == k).collect();
        let total: u64 = binom_row(&u, &vs).unwrap().iter().sum();
        prop_assert_eq!(total as u128, if k <= u.len() { c[u.len()][k] } else { 0 });
    }

    #[test]
    fn trie_rows_match_pairwise(u in word(2, 10), vs in prop::collection::vec(word(2, 4), 0..12)) {
        let row = PrefixTrie::new(&vs).row(&Saturating, &u).unwrap();
        for (v, got) in vs.iter().zip(row) {
            prop_assert_eq!(got, binom_words::<u64>(&u, v).unwrap());
        }
    }

    #[test]
    fn lucas_matches_exact(m in 0u64..200, n in 0u64..200, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let exact = binom_words_exact(&Word::repeat(1, m as usize), &Word::repeat(1, n as usize));
        prop_assert_eq!(BigUint::from(lucas_binom_mod(m, n, p).unwrap()), exact % p);
    }
}
