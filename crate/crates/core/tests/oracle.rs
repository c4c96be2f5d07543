mod common;

use common::{check_duality, dmr0_dim_by_orthogonality, nonempty_words, quasi_shuffle};
use dshuffle::solver::dmr0_space;
use dshuffle::{GroupSpec, YLetter, YPoly, YWord};

fn y(n: u8, s: u8) -> YLetter {
    YLetter::new(n, s)
}

#[test]
fn quasi_shuffle_small_values() {
    let g = GroupSpec::trivial();
    // y1 ⋆ y1 = 2 y1y1 + y2
    let p = quasi_shuffle(&g, &[y(1, 0)], &[y(1, 0)]);
    let want = YPoly::from_terms([
        (YWord::from_letters(&[y(1, 0), y(1, 0)]), 2.into()),
        (YWord::from_letters(&[y(2, 0)]), 1.into()),
    ]);
    assert_eq!(p, want);
    let z3 = GroupSpec::cyclic(3).unwrap();
    let p = quasi_shuffle(&z3, &[y(1, 1)], &[y(2, 2)]);
    assert_eq!(p.coeff(&YWord::from_letters(&[y(3, 0)])), 1.into());
    assert_eq!(p.len(), 3);
}

#[test]
fn quasi_shuffle_is_commutative_and_associative() {
    let g = GroupSpec::cyclic(2).unwrap();
    let words = nonempty_words(2, &g);
    for a in &words {
        for b in &words {
            assert_eq!(quasi_shuffle(&g, a.letters(), b.letters()), quasi_shuffle(&g, b.letters(), a.letters()));
            for c in words.iter().take(4) {
                let ab = quasi_shuffle(&g, a.letters(), b.letters());
                let left = ab.map_linear(|w| quasi_shuffle(&g, w.letters(), c.letters()));
                let bc = quasi_shuffle(&g, b.letters(), c.letters());
                let right = bc.map_linear(|w| quasi_shuffle(&g, a.letters(), w.letters()));
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn coproduct_is_dual_to_quasi_shuffle_small() {
    check_duality(&GroupSpec::trivial(), 5).unwrap();
    check_duality(&GroupSpec::cyclic(2).unwrap(), 3).unwrap();
    check_duality(&GroupSpec::new(vec![2, 2]).unwrap(), 2).unwrap();
}

#[test]
fn dmr0_dimensions_agree_with_orthogonality_route() {
    for n in 1..=6 {
        let via_solver = dmr0_space(n, &GroupSpec::trivial()).unwrap().dim();
        assert_eq!(dmr0_dim_by_orthogonality(n), via_solver, "n={n}");
    }
}
