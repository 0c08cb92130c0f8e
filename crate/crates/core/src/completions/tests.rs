use std::sync::Arc;

use super::*;
use crate::flatness::{is_p1_flat, is_p2_flat};
use crate::fixtures::{antichain2, chain2, discrete, one_point, pair1, t3, z2};

/// Brute force: every function into `grid` that is a module and passes
/// `keep`, counted up to extensional equality.
fn count_modules(s: &Arc<Space>, grid: &[QValue], keep: impl Fn(&LeftModule) -> bool) -> usize {
    let n = s.len();
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        let values = idx.iter().map(|&i| grid[i]).collect();
        if let Ok(m) = LeftModule::new(s.clone(), values) {
            if keep(&m) {
                count += 1;
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            idx[k] += 1;
            if idx[k] < grid.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn rplus_grid() -> Vec<QValue> {
    (0..=5).map(QValue::int).chain([QValue::Infinity]).collect()
}

fn bool_grid() -> Vec<QValue> {
    vec![QValue::FALSE, QValue::TRUE]
}

#[test]
fn t3_completions() {
    let t = t3();
    let p1 = complete(&t, Notion::P1).unwrap();
    assert_eq!(p1.result().len(), 7);
    assert_eq!(count_modules(&t, &rplus_grid(), is_p1_flat), 7);
    let names: Vec<&str> = p1.result().points().iter().map(|s| s.as_str()).collect();
    assert_eq!(names, ["{a}", "{b}", "{c}", "{a,b}", "{a,c}", "{b,c}", "{a,b,c}"]);
    let p2 = complete(&t, Notion::P2).unwrap();
    assert!(p2.result().is_isomorphic(&t));
    assert_eq!(count_modules(&t, &rplus_grid(), is_p2_flat), 3);
    for c in [&p1, &p2] {
        assert!(c.is_fully_faithful() && c.is_separated());
    }
    assert_eq!(p1.embedding().assignment(), &[0, 1, 2]);
    // {a,b} at the point of {a}: max over a, b of the gap, here A(b,a) = 2.
    let ab = p1.result().index_of("{a,b}").unwrap();
    assert_eq!(p1.result().dist(ab, 0), QValue::int(2));
    assert_eq!(p1.result().dist(0, ab), QValue::ZERO);
}

#[test]
fn z2_completions() {
    let z = z2();
    for notion in [Notion::P0, Notion::P1, Notion::P2] {
        let c = complete(&z, notion).unwrap();
        assert_eq!(c.result().len(), 1, "{notion}");
        assert_eq!(c.result().point(0), "{p,q}");
        assert_eq!(c.embedding().assignment(), &[0, 0]);
    }
}

#[test]
fn antichain_completions() {
    let a = antichain2();
    let size = |n| complete(&a, n).unwrap().result().len();
    assert_eq!(size(Notion::FreeBool), 4);
    assert_eq!(size(Notion::DownsetsBool), 3);
    assert_eq!(size(Notion::P1), 3);
    assert_eq!(size(Notion::IdealsBool), 2);
    assert_eq!(size(Notion::P2), 2);
    assert_eq!(size(Notion::Dmn), 4);
    assert_eq!(size(Notion::P0), 2);
    assert_eq!(count_modules(&a, &bool_grid(), |_| true), 4);
    assert_eq!(count_modules(&a, &bool_grid(), is_p1_flat), 3);
    assert_eq!(count_modules(&a, &bool_grid(), is_p2_flat), 2);
    assert_eq!(count_modules(&a, &bool_grid(), is_p0_flat), 2);
    assert!(complete(&a, Notion::IdealsBool).unwrap().result().is_isomorphic(&a));
    let free = complete(&a, Notion::FreeBool).unwrap();
    assert_eq!(free.result().point(0), "{}");
}

#[test]
fn bool_notions_need_bool() {
    assert!(matches!(complete(&t3(), Notion::FreeBool), Err(CompletionError::BaseMismatch { .. })));
    assert!("ideals".parse::<Notion>().is_ok());
    assert!("p3".parse::<Notion>().is_err());
}

#[test]
fn chains_and_points() {
    let c = chain2();
    assert_eq!(complete(&c, Notion::Dmn).unwrap().result().len(), 2);
    assert_eq!(complete(&c, Notion::DownsetsBool).unwrap().result().len(), 2);
    for base in [Base::RPlus, Base::Bool] {
        let o = one_point(base);
        for notion in Notion::ALL {
            if notion.bool_only() && base != Base::Bool {
                continue;
            }
            let expected = if notion == Notion::FreeBool { 2 } else { 1 };
            assert_eq!(complete(&o, notion).unwrap().result().len(), expected, "{notion}");
        }
    }
}

#[test]
fn completeness() {
    let t = t3();
    assert!(is_complete(&t, Notion::P2).unwrap());
    assert_eq!(incompleteness_witness(&t, Notion::P1).unwrap().as_deref(), Some("{a,b}"));
    let p1 = complete(&t, Notion::P1).unwrap();
    assert!(is_complete(p1.result(), Notion::P1).unwrap());
    let free = complete(&antichain2(), Notion::FreeBool).unwrap();
    assert!(is_complete(free.result(), Notion::P1).unwrap());
    assert!(is_complete(free.result(), Notion::FreeBool).unwrap());
    assert!(!is_complete(&antichain2(), Notion::FreeBool).unwrap());
}

#[test]
fn extensions() {
    let z = z2();
    let t = t3();
    let c = complete(&z, Notion::P2).unwrap();
    let f = Map::constant(z.clone(), t.clone(), 1).unwrap();
    assert_eq!(extend_map(&f, &c).unwrap().assignment(), &[1]);

    let c = complete(&t, Notion::P1).unwrap();
    let target = c.result().clone();
    let fbar = extend_map(c.embedding(), &complete(&t, Notion::P1).unwrap()).unwrap();
    assert_eq!(fbar.assignment(), (0..target.len()).collect::<Vec<_>>().as_slice());

    let g = Map::identity(t.clone());
    assert!(matches!(extend_map(&g, &c), Err(CompletionError::Incomplete { .. })));
}

#[test]
fn extension_into_a_powerset_takes_joins() {
    let a = antichain2();
    let c = complete(&a, Notion::DownsetsBool).unwrap();
    let power = complete(&a, Notion::FreeBool).unwrap();
    let f = Map::new(a.clone(), power.result().clone(), power.embedding().assignment().to_vec()).unwrap();
    let fbar = extend_map(&f, &c).unwrap();
    let top = power.result().index_of("{x,y}").unwrap();
    assert_eq!(fbar.apply(c.result().index_of("{x,y}").unwrap()), top);
}

#[test]
fn universal_property_small_cases() {
    let z = z2();
    let t = t3();
    let r = check_universal_property(&z, Notion::P2, &t, 1_000_000).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.maps, 3);

    let o = one_point(Base::RPlus);
    let target = complete(&pair1(), Notion::P1).unwrap().result().clone();
    let r = check_universal_property(&o, Notion::P1, &target, 1_000_000).unwrap();
    assert!(r.holds());
    assert_eq!(r.maps, target.len());

    let a = antichain2();
    let target = complete(&chain2(), Notion::FreeBool).unwrap().result().clone();
    let r = check_universal_property(&a, Notion::IdealsBool, &target, 1_000_000).unwrap();
    assert!(r.holds(), "{r:?}");

    let r = check_universal_property(&t, Notion::P1, &target_chain(), 3).unwrap();
    assert!(r.budget_exhausted && !r.holds());
}

fn target_chain() -> Arc<Space> {
    let names = vec!["lo".to_string(), "hi".to_string()];
    let d = [[0, 0], [1, 0]];
    Space::from_fn("chain", Base::RPlus, names, |x, y| QValue::int(d[x][y])).unwrap().into_ref()
}

#[test]
fn hausdorff_matches_p1() {
    let d = discrete(2, QValue::int(1));
    let h = hausdorff_construction(&d).unwrap();
    assert_eq!(h.len(), 3);
    let xy = h.index_of("{x0,x1}").unwrap();
    let x = h.index_of("{x0}").unwrap();
    assert_eq!(h.dist(xy, x), QValue::int(1));
    assert_eq!(h.dist(x, xy), QValue::ZERO);
    assert!(sycomp_check(&d).unwrap());
    assert!(sycomp_check(&z2()).unwrap());
    assert_eq!(hausdorff_construction(&z2()).unwrap().len(), 1);
    assert!(sycomp_check(&one_point(Base::RPlus)).unwrap());
    assert_eq!(hausdorff_construction(&t3()), Err(CompletionError::NotSymmetric));
}

#[test]
fn bridges() {
    let a = antichain2();
    let enc = bool_bridge(&a).unwrap();
    assert_eq!(enc.dist(0, 1), QValue::Infinity);
    assert!(bridge_check(&a, Notion::P1).unwrap());
    assert!(bridge_check(&a, Notion::P2).unwrap());
    assert_eq!(complete(&enc.into_ref(), Notion::P2).unwrap().result().len(), 2);
    let c = chain2();
    assert!(bridge_check(&c, Notion::P1).unwrap());
    assert!(bridge_check(&one_point(Base::Bool), Notion::P1).unwrap());
}

#[test]
fn cuts_versus_p0() {
    let a = antichain2();
    let dmn = dedekind_mac_neille(&a).unwrap();
    let names: Vec<&str> = dmn.result().points().iter().map(|s| s.as_str()).collect();
    assert_eq!(names, ["{}", "{x}", "{y}", "{x,y}"]);
    let p0 = complete(&a, Notion::P0).unwrap();
    assert!(points_included(&p0, &dmn));
    assert_eq!(p0.result().len(), 2);
}

#[test]
fn finite_spaces_are_cauchy_complete() {
    let t = t3();
    for s in [t.clone(), z2(), pair1(), discrete(3, QValue::Infinity)] {
        let (q, _) = s.zero_quotient();
        let p2 = complete(&s, Notion::P2).unwrap();
        let p0 = complete(&s, Notion::P0).unwrap();
        let p1 = complete(&s, Notion::P1).unwrap();
        assert!(p2.result().is_isomorphic(&q));
        assert!(p0.result().is_isomorphic(&q));
        assert!(points_included(&p0, &p2) && points_included(&p2, &p1));
    }
}

#[test]
fn tables_are_stable() {
    let c = complete(&z2(), Notion::P1).unwrap();
    assert_eq!(c.point_table_tsv(), "point\tgenerator\tvalues\n{p,q}\tp q\t0 0\n");
    assert_eq!(c.embedding_tsv(), "source\timage\np\t{p,q}\nq\t{p,q}\n");
}
