use std::sync::Arc;

use super::*;
use crate::enriched::{kan_extend, Map};
use crate::fixtures::{pair1, t3, z2};

fn q(s: &str) -> QValue {
    Base::RPlus.parse_value(s).unwrap()
}

fn vals(xs: &[&str]) -> Vec<QValue> {
    xs.iter().map(|s| q(s)).collect()
}

fn left(space: &Arc<Space>, xs: &[&str]) -> LeftModule {
    LeftModule::new(space.clone(), vals(xs)).unwrap()
}

fn filt(space: &Arc<Space>, names: &[&str]) -> PrincipalFilter {
    PrincipalFilter::from_names(space, names).unwrap()
}

#[test]
fn limits_over_the_generator() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    let to_c = vals(&["2", "1", "0"]);
    assert_eq!(lim_plus(&ab, &to_c), q("2"));
    assert_eq!(lim_minus(&ab, &to_c), q("1"));
    let b = filt(&t, &["b"]);
    assert_eq!(lim_plus(&b, &to_c), q("1"));
    assert_eq!(lim_minus(&b, &to_c), q("1"));
    let constant = vals(&["3", "3", "3"]);
    assert_eq!(lim_plus(&ab, &constant), q("3"));
    assert_eq!(lim_minus(&ab, &constant), q("3"));
    assert!(PrincipalFilter::new(t, vec![]).is_err());
}

#[test]
fn lower_and_upper_modules() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    assert_eq!(m_minus(&ab).values(), vals(&["0", "0", "4"]).as_slice());
    assert_eq!(m_plus(&ab).values(), vals(&["1", "2", "5"]).as_slice());
    let b = filt(&t, &["b"]);
    assert_eq!(m_minus(&b), yoneda(&t, 1).unwrap());
    assert_eq!(m_plus(&b), yoneda(&t, 1).unwrap());
    let z = z2();
    let pq = filt(&z, &["p", "q"]);
    assert!(is_cauchy(&pq));
    assert_eq!(m_minus(&pq), m_plus(&pq));
}

#[test]
fn sublevel_sets() {
    let t = t3();
    assert_eq!(gamma(&left(&t, &["0", "0", "4"]), q("1")).unwrap(), vec![0, 1]);
    assert_eq!(gamma(&left(&t, &["0", "0", "4"]), QValue::Infinity).unwrap(), vec![0, 1, 2]);
    assert_eq!(gamma(&yoneda(&t, 1).unwrap(), q("1/2")).unwrap(), vec![1]);
    assert_eq!(gamma(&yoneda(&t, 1).unwrap(), QValue::ZERO), Err(FilterError::NonPositive));
}

#[test]
fn filters_of_modules() {
    let t = t3();
    assert_eq!(filter_of_module(&left(&t, &["0", "0", "4"])).unwrap().generator(), &[0, 1]);
    assert_eq!(filter_of_module(&yoneda(&t, 0).unwrap()).unwrap(), neighborhood(&t, 0).unwrap());
    assert_eq!(filter_of_module(&yoneda(&t, 0).unwrap()).unwrap().generator(), &[0]);
    assert_eq!(filter_of_module(&left(&t, &["1/2", "1", "1"])), Err(FilterError::NoKernel));
}

#[test]
fn hierarchy_examples() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    assert!(is_weakly_flat(&ab) && !is_flat(&ab) && !is_cauchy(&ab));
    assert!(definitional::weakly_flat(&ab) && !definitional::flat(&ab) && !definitional::cauchy(&ab));
    let z = z2();
    let pq = filt(&z, &["p", "q"]);
    assert!(is_weakly_flat(&pq) && is_flat(&pq) && is_cauchy(&pq));
    let c = filt(&t, &["c"]);
    assert!(is_weakly_flat(&c) && is_flat(&c) && is_cauchy(&c));
}

#[test]
fn closures() {
    let z = z2();
    assert_eq!(closure(&filt(&z, &["p"])).generator(), &[0, 1]);
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    assert_eq!(closure(&ab), ab);
    assert_eq!(closure(&closure(&filt(&z, &["q"]))), closure(&filt(&z, &["q"])));
}

#[test]
fn morphisms() {
    let z = z2();
    let (p, qf) = (filt(&z, &["p"]), filt(&z, &["q"]));
    assert!(filter_morphism(&p, &qf).unwrap() && filter_morphism(&qf, &p).unwrap());
    let t = t3();
    let (a, b) = (filt(&t, &["a"]), filt(&t, &["b"]));
    assert!(!filter_morphism(&a, &b).unwrap());
    assert!(filter_morphism(&a, &a).unwrap());
    assert!(definitional::morphism(&p, &qf));
    assert!(!definitional::morphism(&a, &b));
}

#[test]
fn zoi_and_fac22() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    let m = left(&t, &["0", "0", "4"]);
    assert!(contains_filter_of(&ab, &m).unwrap());
    assert!(m_minus(&ab).arrow_to(&m).unwrap());
    assert!(zoi_check(&ab, &m).unwrap());
    let b = filt(&t, &["b"]);
    let ya = yoneda(&t, 0).unwrap();
    assert!(!contains_filter_of(&b, &ya).unwrap());
    assert!(!m_minus(&b).arrow_to(&ya).unwrap());
    assert!(zoi_check(&b, &ya).unwrap());
    assert!(zoi_check(&ab, &m_minus(&ab)).unwrap());

    let n = RightModule::corepresentable(&t, 0);
    assert_eq!(crate::enriched::compose_modules(&m_minus(&ab), &n).unwrap(), q("0"));
    assert_eq!(lim_minus(&ab, n.values()), q("0"));
    assert!(fac22_check(&ab, &n).unwrap());
    assert!(fac22_check(&b, &n).unwrap());
}

#[test]
fn representatives_and_convergence() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    assert!(representative(&ab).is_empty());
    assert_eq!(representative(&filt(&t, &["b"])), vec![1]);
    let z = z2();
    assert_eq!(representative(&filt(&z, &["p"])), vec![0, 1]);

    for x in 0..3 {
        assert!(!converges(&ab, x).unwrap());
        assert!(!converges_via_module(&ab, x).unwrap());
        let v = neighborhood(&t, x).unwrap();
        assert!(converges(&v, x).unwrap());
    }
    assert!(converges(&filt(&z, &["p"]), 1).unwrap());
    assert!(converges_via_module(&filt(&z, &["p"]), 1).unwrap());
}

#[test]
fn direct_images() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    assert_eq!(direct_image(&ab, &Map::identity(t.clone())).unwrap(), ab);
    let z = z2();
    let g = Map::constant(z.clone(), t.clone(), 1).unwrap();
    let pq = filt(&z, &["p", "q"]);
    let image = direct_image(&pq, &g).unwrap();
    assert_eq!(image.generator(), &[1]);
    assert_eq!(kan_extend(&m_minus(&pq), &g).unwrap(), m_minus(&image));
    assert_eq!(m_minus(&image), yoneda(&t, 1).unwrap());
}

#[test]
fn suprema() {
    let z = z2();
    let (p, qf) = (filt(&z, &["p"]), filt(&z, &["q"]));
    let sup = sup_filters(&[p.clone(), qf.clone()]).unwrap();
    assert_eq!(sup.generator(), &[0, 1]);
    assert_eq!(colimit_closed(&[p.clone(), qf]).unwrap().generator(), &[0, 1]);
    assert_eq!(sup_filters(std::slice::from_ref(&p)).unwrap(), p);
    assert_eq!(colimit_closed(std::slice::from_ref(&p)).unwrap(), closure(&p));
    let t = t3();
    let sup = sup_filters(&[filt(&t, &["a"]), filt(&t, &["b"])]).unwrap();
    assert_eq!(sup.generator(), &[0, 1]);
    assert!(is_weakly_flat(&sup));
    assert_eq!(sup_filters(&[]), Err(FilterError::EmptyFamily));
}

#[test]
fn sequences() {
    let t = t3();
    let s = EvPeriodicSequence::new(t.clone(), vec![2], vec![1]).unwrap();
    assert!(s.is_forward_cauchy());
    assert!(definitional::forward_cauchy(&s));
    assert_eq!(s.tail_filter().generator(), &[1]);
    let s = EvPeriodicSequence::new(t.clone(), vec![], vec![0, 1]).unwrap();
    assert!(!s.is_forward_cauchy());
    assert!(!definitional::forward_cauchy(&s));
    let z = z2();
    let s = EvPeriodicSequence::new(z, vec![], vec![0, 1]).unwrap();
    assert!(s.is_forward_cauchy());
    assert_eq!(s.tail_filter().generator(), &[0, 1]);
    assert!(EvPeriodicSequence::new(t, vec![0], vec![]).is_err());
}

#[test]
fn normalization() {
    let t = t3();
    let s = EvPeriodicSequence::new(t.clone(), vec![0, 1, 2], vec![1, 2, 1, 2]).unwrap().normalized();
    assert_eq!(s.preperiod(), &[0]);
    assert_eq!(s.cycle(), &[1, 2]);
    for n in 0..10 {
        let raw = EvPeriodicSequence::new(t.clone(), vec![0, 1, 2], vec![1, 2, 1, 2]).unwrap();
        assert_eq!(raw.at(n), s.at(n));
    }
}

#[test]
fn separating_sequence_examples() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    let m = left(&t, &["0", "1", "4"]);
    let s = separating_sequence(&ab, &m).unwrap();
    assert_eq!(s.preperiod(), &[] as &[usize]);
    assert_eq!(s.cycle(), &[1]);
    assert!(s.is_forward_cauchy());
    assert!(filter_morphism(&s.tail_filter(), &ab).unwrap());
    assert!(!m_minus(&s.tail_filter()).arrow_to(&m).unwrap());

    let b = filt(&t, &["b"]);
    let s = separating_sequence(&b, &yoneda(&t, 0).unwrap()).unwrap();
    assert_eq!(s.cycle(), &[1]);

    assert_eq!(separating_sequence(&ab, &m_minus(&ab)), Err(FilterError::NoSeparatingWitness));
}

#[test]
fn interpolation_examples() {
    let z = z2();
    let sp = EvPeriodicSequence::constant(z.clone(), 0).unwrap();
    let sq = EvPeriodicSequence::constant(z.clone(), 1).unwrap();
    let pq = filt(&z, &["p", "q"]);
    let zs = interpolate_sequences(&sp, &sq, &pq).unwrap();
    assert!(zs.is_forward_cauchy());
    assert!(filter_morphism(&sp.tail_filter(), &zs.tail_filter()).unwrap());
    assert!(filter_morphism(&sq.tail_filter(), &zs.tail_filter()).unwrap());
    assert!(filter_morphism(&zs.tail_filter(), &pq).unwrap());

    let same = interpolate_sequences(&sp, &sp, &pq).unwrap();
    let around = closure(&sp.tail_filter());
    assert!(same.tail_filter().generator().iter().all(|&x| around.contains(x)));

    let t = t3();
    let sb = EvPeriodicSequence::constant(t.clone(), 1).unwrap();
    let zs = interpolate_sequences(&sb, &sb, &filt(&t, &["b"])).unwrap();
    assert_eq!(zs.preperiod(), &[] as &[usize]);
    assert_eq!(zs.cycle(), &[1]);
}

#[test]
fn charffil_on_fixtures() {
    assert!(charffil_finite_check(&t3()));
    assert!(charffil_finite_check(&z2()));
}

#[test]
fn wf_hom_examples() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    let b = filt(&t, &["b"]);
    let d = wf_hom_distance(&ab, &b).unwrap();
    assert_eq!(d.via_modules, q("1"));
    assert_eq!(d.sup_inf, q("1"));
    assert!(d.consistent());
    assert_eq!(wf_hom_distance(&ab, &ab).unwrap().via_modules, q("0"));
    let z = z2();
    let (p, qf) = (filt(&z, &["p"]), filt(&z, &["q"]));
    let d = wf_hom_distance(&p, &qf).unwrap();
    assert_eq!(d.inf_sup, Some(q("0")));
    assert!(d.consistent());
}

#[test]
fn liminf_examples() {
    let t = t3();
    let ab = filt(&t, &["a", "b"]);
    let parts = [filt(&t, &["a"]), filt(&t, &["b"])];
    assert!(liminf_f_check(&ab, &parts, &vals(&["3", "1/2", "7"])).unwrap());
    assert!(liminf_f_check(&ab, std::slice::from_ref(&ab), &vals(&["3", "1/2", "7"])).unwrap());
    assert!(liminf_f_check(&ab, &parts[..1], &vals(&["0", "0", "0"])).is_err());
}

#[test]
fn clumsy_filters_miss_neighborhoods() {
    // p → q at distance 0, q → p at distance 1.
    let s = Space::from_fn("asym", Base::RPlus, vec!["p".into(), "q".into()], |x, y| {
        if x == 1 && y == 0 {
            q("1")
        } else {
            QValue::ZERO
        }
    })
    .unwrap()
    .into_ref();
    let vq = neighborhood(&s, 1).unwrap();
    assert_eq!(vq.generator(), &[0, 1]);
    assert!(is_weakly_flat(&vq));
    assert!(!is_clumsy(&vq));
    assert!(is_clumsy(&neighborhood(&s, 0).unwrap()));
    let sym = pair1();
    assert!(is_clumsy(&neighborhood(&sym, 0).unwrap()));
}

#[test]
fn filters_on_small_sets_are_principal() {
    for n in 0..=3 {
        assert!(definitional::every_filter_is_principal(n));
    }
}
