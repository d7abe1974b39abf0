use girth_forge::fixtures::{fixture_ids, load_fixture, FixtureInputs};
use girth_forge::group::{semidirect_product_cyclic, FiniteGroup};

#[test]
fn every_fixture_meets_its_expectations() {
    let ids = fixture_ids();
    assert_eq!(ids.len(), 9, "{ids:?}");
    for id in ids {
        let f = load_fixture(&id).unwrap();
        assert_eq!(f.manifest.id, id);
        let (_, misses) = f.check().unwrap();
        assert!(misses.is_empty(), "{id}: {misses:?}");
    }
}

/// Looks for `y` of order `m` and `x` of order `n` in `g` with
/// `x y x^-1 = y^t`, then checks that `(a, e) -> y^a x^e` is an isomorphism
/// from the constructor's group.
fn matches_semidirect(g: &FiniteGroup, m: usize, n: usize, t: usize) -> bool {
    let c = semidirect_product_cyclic(m, n, t).unwrap();
    if c.order() != g.order() {
        return false;
    }
    for y in (0..g.order()).filter(|&y| g.elem_order(y) == m) {
        for x in (0..g.order()).filter(|&x| g.elem_order(x) == n) {
            if g.mul(g.mul(x, y), g.inv(x)) != g.pow(y, t) {
                continue;
            }
            // Constructor index of (a, e) is a * n + e.
            let phi: Vec<usize> = (0..m * n).map(|i| g.mul(g.pow(y, i / n), g.pow(x, i % n))).collect();
            let hom = (0..c.order()).all(|a| (0..c.order()).all(|b| phi[c.mul(a, b)] == g.mul(phi[a], phi[b])));
            let mut seen = phi.clone();
            seen.sort();
            seen.dedup();
            if hom && seen.len() == c.order() {
                return true;
            }
        }
    }
    false
}

#[test]
fn semidirect_tables_are_the_constructor_groups() {
    for (id, m, t) in [("n3g16-c13c9", 13, 3), ("n5g9-c31c9", 31, 25)] {
        let f = load_fixture(id).unwrap();
        let FixtureInputs::Lift { group, .. } = &f.inputs else { panic!("{id} is a lift fixture") };
        group.check_laws().unwrap();
        assert!(!group.is_abelian());
        assert!(matches_semidirect(group, m, 9, t), "{id}");
    }
}
