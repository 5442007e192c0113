use std::sync::Arc;

use pexa::exactness::{
    complete_square, ext_enumerate, is_short_exact, HyperModules, Lattices, PartialSquare, SemiringModules,
    ShortExactSequence,
};
use pexa::geometry::{en_module, is_kmodule, projective_geometry, projective_space_kmodule, quotient_geometry};
use pexa::hmod::{classify_h_morphism, quotient_hmodule};
use pexa::lattice::{
    compact_elements_module, is_geometric, quotient_lattice, s_on_morphism, saturated_submodule_lattice,
    FiniteLattice,
};
use pexa::smod::{enumerate_homs, enumerate_submodules, find_isomorphism, quotient_module, FiniteModule};
use pexa::tables::{boolean, krasner, quotient_hyperring, RingTable};
use pexa::{Mask, MorphismClass};

fn b_free(k: usize) -> Arc<FiniteModule> {
    Arc::new(FiniteModule::free(Arc::new(boolean()), k).unwrap())
}

#[test]
fn saturated_submodules_of_free_modules_form_boolean_lattices() {
    for k in 1..=3 {
        let m = b_free(k);
        let s = saturated_submodule_lattice(&m).unwrap();
        assert_eq!(s.elements.len(), 1 << k);
        let cube = Arc::new(FiniteLattice::boolean(k).unwrap());
        assert!(pexa::lattice::find_lattice_isomorphism(&s.lattice, &cube).is_some());
        let back = Arc::new(compact_elements_module(&s.lattice));
        assert!(find_isomorphism(&back, &m).is_some());
    }
}

#[test]
fn s_sends_quotients_to_normal_epis() {
    let m = b_free(2);
    for sub in enumerate_submodules(&m, true) {
        let q = quotient_module(&m, sub).unwrap();
        let f = s_on_morphism(&q.projection).unwrap();
        assert!(f.is_surjective());
        assert!(pexa::lattice::classify_lattice_morphism(&f).is_epi());
    }
}

#[test]
fn non_saturated_submodule_quotient_collapses_more() {
    // chain3 = {0 < a < b}; {0, b} is a submodule whose saturation is everything
    let chain = Arc::new(compact_elements_module(&FiniteLattice::chain(3).unwrap()));
    let top = (1..3).find(|&x| chain.add(x, 1) == x && chain.add(x, 2) == x).unwrap();
    let q = quotient_module(&chain, Mask::from_elements([0, top])).unwrap();
    assert_eq!(q.quotient.size(), 1);
}

#[test]
fn geometric_lattices() {
    assert!(is_geometric(&FiniteLattice::boolean(3).unwrap()).geometric);
    assert!(is_geometric(&FiniteLattice::diamond(3).unwrap()).geometric);
    let pentagon = is_geometric(&FiniteLattice::pentagon());
    assert!(!pentagon.geometric);
    assert!(!pentagon.jordan_dedekind);
    let chain = is_geometric(&FiniteLattice::chain(3).unwrap());
    assert!(chain.semimodular && !chain.atomistic);
}

#[test]
fn lattice_short_exact_sequence_and_its_failure() {
    let chain = Arc::new(FiniteLattice::chain(3).unwrap());
    let ideal = Mask::from_elements([0, 1]);
    let i = chain.ideal(ideal).unwrap();
    let j = quotient_lattice(&chain, ideal).unwrap().projection;
    let report = is_short_exact(&Lattices, &ShortExactSequence { i: i.clone(), j }).unwrap();
    assert!(report.exact, "{:?}", report.diagnosis);

    let top = Arc::new(FiniteLattice::chain(2).unwrap());
    let bad = pexa::Morphism::new(top.clone(), chain.clone(), vec![0, 2]).unwrap();
    let j = quotient_lattice(&chain, ideal).unwrap().projection;
    let report = is_short_exact(&Lattices, &ShortExactSequence { i: bad, j }).unwrap();
    assert!(!report.exact);
}

#[test]
fn pushout_along_a_zero_map_is_the_cokernel() {
    let cat = SemiringModules::boolean();
    let m = b_free(2);
    let i = m.submodule(Mask::from_elements([0, 1])).unwrap();
    let a = i.source().clone();
    let j = quotient_module(&a, a.all()).unwrap().projection;
    let square = complete_square(&cat, &PartialSquare::Pushout { i, j }).unwrap();
    assert!(square.commutes());
    assert_eq!(square.j_prime.target().size(), 2);
}

#[test]
fn f3_mod_units_is_krasner() {
    let f3 = RingTable::prime_field(3).unwrap();
    let q = quotient_hyperring(&f3, Mask::from_elements([1, 2])).unwrap();
    assert_eq!(q.class_of, vec![0, 1, 1]);
    assert!(q.table.find_isomorphism(&krasner()).is_some());
}

#[test]
fn collapsing_a_point_of_en_gives_k() {
    for n in 4..=6 {
        let e = Arc::new(en_module(n).unwrap());
        assert!(is_kmodule(&e).unwrap());
        let q = quotient_hmodule(&e, Mask::from_elements([0, 1])).unwrap();
        assert_eq!(q.quotient.size(), 2);
        assert_eq!(classify_h_morphism(&q.projection), MorphismClass::AdmissibleEpi);
        let quotient_points = quotient_geometry(&e, 1).unwrap().points.len();
        assert_eq!(quotient_points, 1);
    }
}

#[test]
fn projective_planes_count_flags() {
    for p in [3usize, 5] {
        let e = projective_space_kmodule(p, 2).unwrap();
        let g = projective_geometry(&e).unwrap();
        let points = p * p + p + 1;
        assert_eq!(g.points.len(), points);
        assert_eq!(g.lines.len(), points);
        assert_eq!(g.flag_count(), points * (p + 1));
        assert!(g.lines_have_four_points);
    }
}

#[test]
fn ext_over_k_of_k_by_k() {
    // no K-module has three or four elements, so the first middles are E_4 and E_5
    let cat = HyperModules::krasner();
    let k = Arc::new(pexa::hmod::HModule::regular(Arc::new(krasner())).unwrap());
    let ext = ext_enumerate(&cat, &k, &k, 6).unwrap();
    let mut sizes: Vec<usize> = ext.classes.iter().map(|c| c.representative.middle().size()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![5, 6]);
}

#[test]
fn homs_between_free_modules_are_matrices() {
    // a map B^a -> B^b is fixed by the images of the a generators
    for (a, b) in [(1, 2), (2, 2), (2, 3)] {
        let homs = enumerate_homs(&b_free(a), &b_free(b)).unwrap();
        assert_eq!(homs.len(), 1 << (a * b));
    }
}
