use permcheck::structure::{centralizer, generated, sylow_subgroup};
use permcheck::{GroupTable, PermGroup, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn perms(n: usize, k: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(n), 1..=k)
}

fn p_part(mut n: u128, p: u128) -> u128 {
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

proptest! {
    #[test]
    fn cycle_string_round_trips(a in perm(9)) {
        let back = Permutation::parse(&a.to_string(), 9).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn composition_is_associative(a in perm(8), b in perm(8), c in perm(8)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn composition_applies_left_factor_first(a in perm(8), b in perm(8), i in 1usize..=8) {
        prop_assert_eq!((&a * &b).apply(i), b.apply(a.apply(i)));
    }

    #[test]
    fn inverse_and_powers(a in perm(10)) {
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(-1), a.inverse());
        let lengths: usize = a.cycle_lengths().iter().sum();
        prop_assert_eq!(lengths, 10);
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in perm(7), b in perm(7), g in perm(7)) {
        prop_assert_eq!((&a * &b).conjugate_by(&g), &a.conjugate_by(&g) * &b.conjugate_by(&g));
        prop_assert_eq!(a.conjugate_by(&g), &(&g.inverse() * &a) * &g);
        prop_assert_eq!(a.conjugate_by(&g).cycle_type(), a.cycle_type());
    }

    #[test]
    fn parity_is_multiplicative(a in perm(7), b in perm(7)) {
        prop_assert_eq!((&a * &b).is_even(), a.is_even() == b.is_even());
    }

    #[test]
    fn chain_order_matches_enumeration(gens in perms(6, 3)) {
        let g = PermGroup::new(6, gens.clone()).unwrap();
        let elements = g.enumerate(1_000).unwrap();
        prop_assert_eq!(elements.len() as u128, g.order());
        for x in &gens {
            prop_assert!(g.has(x));
        }
        for pair in elements.windows(2).take(50) {
            prop_assert!(g.has(&(&pair[0] * &pair[1])));
        }
    }

    #[test]
    fn sylow_orders_are_full_prime_parts(gens in perms(6, 2)) {
        let g = PermGroup::new(6, gens).unwrap();
        for p in [2u64, 3, 5].into_iter().filter(|&p| g.order() % p as u128 == 0) {
            let s = sylow_subgroup(&g, p, 1_000).unwrap();
            prop_assert_eq!(s.order(), p_part(g.order(), p as u128));
            prop_assert!(g.contains_group(&s));
        }
    }

    #[test]
    fn class_sizes_and_centralizers(gens in perms(6, 2)) {
        let g = PermGroup::new(6, gens).unwrap();
        let t = GroupTable::new(&g, 1_000).unwrap();
        let total: usize = t.classes().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, t.len());
        prop_assert!(t.classes()[0].representative.is_identity());
        for c in t.classes() {
            prop_assert_eq!(c.size as u128 * c.centralizer_order, g.order());
            let cg = centralizer(&g, &c.representative, 1_000).unwrap();
            prop_assert_eq!(cg.order(), c.centralizer_order);
            prop_assert_eq!(c.representative.order(), c.element_order);
        }
    }

    #[test]
    fn conjugator_conjugates(gens in perms(6, 2), seed in any::<u64>()) {
        let g = PermGroup::new(6, gens).unwrap();
        let t = GroupTable::new(&g, 1_000).unwrap();
        let i = (seed as usize) % t.len();
        let c = t.class_of(i);
        let members = t.class_members(c);
        let j = members[(seed as usize / 7) % members.len()] as usize;
        let conj = t.conjugator(i, j).unwrap();
        prop_assert!(g.has(&conj));
        prop_assert_eq!(t.element(i).conjugate_by(&conj), t.element(j));
    }

    #[test]
    fn two_generated_subgroups_lie_inside(gens in perms(7, 3)) {
        let g = PermGroup::new(7, gens.clone()).unwrap();
        let h = generated(7, &gens[..1]);
        prop_assert!(g.contains_group(&h));
        prop_assert_eq!(g.order() % h.order(), 0);
    }
}
