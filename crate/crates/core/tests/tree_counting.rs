use mu_lab::random::Seed;
use mu_lab::tree::brute::count_subtrees_bruteforce;
use mu_lab::tree::{ahu_code, count_subtrees_exact, count_subtrees_per_node, RootedTree, SubtreeCounter};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

fn random_tree(size: usize, rng: &mut impl Rng) -> RootedTree {
    let mut parents = vec![-1i64];
    for v in 1..size {
        parents.push(rng.random_range(0..v) as i64);
    }
    RootedTree::from_parents(&parents).unwrap()
}

fn factorial(j: usize) -> BigUint {
    (1..=j).fold(BigUint::from(1u32), |a, k| a * k)
}

#[test]
fn exact_matches_bruteforce_on_random_trees() {
    let mut rng = Seed::new(2024).rng();
    let mut forced = SubtreeCounter::new(0);
    for i in 0..1000 {
        let t = random_tree(1 + i % 14, &mut rng);
        let brute = count_subtrees_bruteforce(&t).unwrap();
        assert_eq!(count_subtrees_exact(&t), brute, "{}", t.to_parent_line());
        assert_eq!(forced.count(&t).unwrap(), brute, "counting path, {}", t.to_parent_line());
    }
}

#[test]
fn exact_count_dominates_the_product_inequality_at_every_node() {
    let mut rng = Seed::new(99).rng();
    for i in 0..300 {
        let t = random_tree(2 + i % 40, &mut rng);
        let f = count_subtrees_per_node(&t);
        for v in 0..t.size() {
            let kids = t.children(v);
            let j = kids.len();
            let prod = kids.iter().fold(BigUint::from(1u32), |a, &c| a * (&f[c as usize] + 1u32));
            // f₊(v) ≥ ∏ f₊(c) / j! + 1, multiplied through by j!
            assert!((&f[v] + 1u32) * factorial(j) >= prod + factorial(j), "node {v} of {}", t.to_parent_line());
        }
    }
}

#[test]
fn larger_trees_agree_between_explicit_and_counting_paths() {
    let mut rng = Seed::new(5).rng();
    for i in 0..60 {
        let t = random_tree(20 + i, &mut rng);
        let a = SubtreeCounter::new(0).count(&t).unwrap();
        let b = SubtreeCounter::new(1 << 16).count(&t).unwrap();
        let c = SubtreeCounter::new(7).count(&t).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

proptest! {
    #[test]
    fn ahu_code_ignores_child_order(seed in any::<u64>(), size in 1usize..30) {
        let mut rng = Seed::new(seed).rng();
        let t = random_tree(size, &mut rng);
        let shuffled = t.with_child_orders(|cs| {
            use rand::seq::SliceRandom;
            cs.shuffle(&mut rng);
        });
        prop_assert_eq!(ahu_code(&t), ahu_code(&shuffled));
    }

    #[test]
    fn adding_a_leaf_never_decreases_f(seed in any::<u64>(), size in 1usize..25) {
        let mut rng = Seed::new(seed).rng();
        let t = random_tree(size, &mut rng);
        let mut bigger = t.clone();
        bigger.add_child(rng.random_range(0..size));
        prop_assert!(count_subtrees_exact(&bigger).f >= count_subtrees_exact(&t).f);
    }
}
