use super::*;
use crate::field::{PrimeField, RationalField};
use crate::monomial::Monomial;
use crate::parse::parse_poly;
use crate::ring::PolyRing;
use proptest::prelude::*;

fn qring(names: &[&str]) -> RingRef<RationalField> {
    PolyRing::new(RationalField, names.iter().map(|s| s.to_string()).collect()).into_ref()
}

fn polys<F: Field>(r: &RingRef<F>, s: &[&str]) -> Vec<Poly<F>> {
    s.iter().map(|t| parse_poly(r, t).unwrap()).collect()
}

fn strings<F: Field>(ps: &[Poly<F>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// S-polynomial of two polynomials, computed directly from the definition.
fn spoly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let k = f.field();
    let (cf, mf) = f.leading_term().unwrap();
    let (cg, mg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&k.inv(cf).unwrap(), &l.div(mf).unwrap());
    let b = g.mul_term(&k.inv(cg).unwrap(), &l.div(mg).unwrap());
    a.sub(&b)
}

fn assert_is_groebner<F: Field>(gb: &GroebnerBasis<F>) {
    let g = gb.generators();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            assert!(gb.reduce(&spoly(&g[i], &g[j])).is_zero());
        }
        for j in 0..g.len() {
            if i != j {
                assert!(!g[j].leading_monomial().unwrap().divides(g[i].leading_monomial().unwrap()));
            }
        }
    }
}

#[test]
fn normal_form_single_step_in_lex() {
    let r = qring(&["x", "y"]);
    let r = Arc::new(r.reordered(MonomialOrder::Lex));
    let gb = buchberger(&polys(&r, &["x^2-y"]), MonomialOrder::Lex, None).unwrap();
    assert_eq!(gb.normal_form(&parse_poly(&r, "x^2").unwrap()).unwrap().to_string(), "y");
    assert!(gb.normal_form(&parse_poly(&r, "x^3-x*y").unwrap()).unwrap().is_zero());
}

#[test]
fn normal_form_of_one() {
    let r = qring(&["x", "y"]);
    let gb = groebner(&r, &polys(&r, &["x", "y"]));
    assert_eq!(gb.normal_form(&Poly::one(&r)).unwrap().to_string(), "1");
}

#[test]
fn normal_form_order_mismatch() {
    let r = qring(&["x", "y"]);
    let gb = buchberger(&polys(&r, &["x^2-y"]), MonomialOrder::Lex, None).unwrap();
    let e = gb.normal_form(&parse_poly(&r, "x^2").unwrap()).unwrap_err();
    assert_eq!(e, Error::OrderMismatch);
}

#[test]
fn principal_ideal() {
    let r = qring(&["x", "y"]);
    let gb = buchberger(&polys(&r, &["x-y"]), MonomialOrder::Grevlex, None).unwrap();
    assert_eq!(strings(gb.generators()), ["x-y"]);
    assert!(gb.is_complete());
}

#[test]
fn lex_basis_of_two_curves() {
    let r = qring(&["x", "y"]);
    let gens = polys(&r, &["x^2-y", "x*y-1"]);
    let gb = buchberger(&gens, MonomialOrder::Lex, None).unwrap();
    assert_is_groebner(&gb);
    for g in &gens {
        assert!(gb.contains(&g.with_ring(gb.ring())));
    }
    // y^3 - 1 is the eliminant: x = y^2 and x*y = 1
    let y_only: Vec<_> = gb.generators().iter().filter(|g| g.support() == vec![1]).collect();
    assert_eq!(y_only.len(), 1);
    assert_eq!(y_only[0].to_string(), "y^3-1");
}

#[test]
fn buchberger_errors() {
    let r = qring(&["x", "y"]);
    assert_eq!(buchberger::<RationalField>(&[], MonomialOrder::Grevlex, None).unwrap_err(), Error::EmptyInput);
    let e = buchberger(&[Poly::var(&r, 0), Poly::zero(&r)], MonomialOrder::Grevlex, None).unwrap_err();
    assert_eq!(e, Error::ZeroGenerator(1));
    let e = buchberger(&[Poly::var(&r, 0)], MonomialOrder::Grevlex, Some((1, 2))).unwrap_err();
    assert_eq!(e, Error::NotBigraded);
}

#[test]
fn koszul_element_is_already_a_basis() {
    let r = PolyRing::new(RationalField, ["x", "y", "Y0", "Y1"].iter().map(|s| s.to_string()).collect())
        .with_standard_bigrading(2)
        .into_ref();
    let g = polys(&r, &["x*Y1-y*Y0"]);
    let gb = buchberger(&g, r.order().clone(), Some((1, 5))).unwrap();
    assert_eq!(gb.generators().len(), 1);
    assert_eq!(gb.generators()[0].monic(), g[0].monic());
}

#[test]
fn twisted_cubic_elimination() {
    let r = qring(&["x", "y", "z"]);
    let out = eliminate(&polys(&r, &["y-x^2", "z-x^3"]), &[0]).unwrap();
    assert!(out.iter().all(|g| g.support().iter().all(|&v| v != 0)));
    let cusp = parse_poly(&r, "z^2-y^3").unwrap();
    assert!(groebner(&r, &out).contains(&cusp));
    // oracle: every output vanishes on (t, t^2, t^3)
    let t = qring(&["t"]);
    let tt = Poly::var(&t, 0);
    for g in &out {
        assert!(g.substitute(&[tt.clone(), tt.pow(2), tt.pow(3)]).unwrap().is_zero());
    }
}

#[test]
fn eliminating_everything_leaves_zero_ideal() {
    let r = qring(&["x"]);
    assert!(eliminate(&polys(&r, &["x"]), &[0]).unwrap().is_empty());
}

#[test]
fn conic_image_by_elimination() {
    let r = qring(&["x", "y", "Y0", "Y1", "Y2"]);
    let out = eliminate(&polys(&r, &["Y0-x^2", "Y1-x*y", "Y2-y^2"]), &[0, 1]).unwrap();
    assert_eq!(strings(&out), ["Y1^2-Y0*Y2"]);
}

#[test]
fn quotients() {
    let r = qring(&["x", "y"]);
    let i = polys(&r, &["x^2", "x*y"]);
    let q = ideal_quotient(&i, &Poly::var(&r, 0)).unwrap();
    assert!(ideal_equal(&r, &q, &polys(&r, &["x", "y"])));
    let q1 = ideal_quotient(&i, &Poly::one(&r)).unwrap();
    assert!(ideal_equal(&r, &q1, &i));
    let q2 = ideal_quotient(&polys(&r, &["x"]), &Poly::var(&r, 1)).unwrap();
    assert_eq!(strings(&q2), ["x"]);
    assert_eq!(ideal_quotient(&i, &Poly::zero(&r)).unwrap_err(), Error::ZeroDivisor);
}

#[test]
fn saturations() {
    let r = qring(&["x", "y"]);
    let i = polys(&r, &["x^2", "x*y"]);
    let m = polys(&r, &["x", "y"]);
    assert_eq!(strings(&saturate(&i, &m).unwrap()), ["x"]);
    assert_eq!(strings(&saturate(&m, &m).unwrap()), ["1"]);
    // both methods agree
    let a = saturate_by_element(&i, &parse_poly(&r, "x+y").unwrap()).unwrap();
    let b = super::ops::saturate_iterated(&i, &parse_poly(&r, "x+y").unwrap()).unwrap();
    assert_eq!(strings(&a), strings(&b));
}

#[test]
fn intersection_of_coordinate_ideals() {
    let r = qring(&["x", "y"]);
    let out = intersect(&polys(&r, &["x"]), &polys(&r, &["y"])).unwrap();
    assert_eq!(strings(&out), ["x*y"]);
}

#[test]
fn koszul_syzygy() {
    let r = qring(&["x", "y"]);
    let s = syzygies(&polys(&r, &["x", "y"]), &[]).unwrap();
    assert_eq!(s.ncols(), 1);
    let c = &s.columns[0];
    let neg = c[0].neg();
    assert!((c[0].to_string() == "y" && c[1].to_string() == "-x") || (neg.to_string() == "y" && c[1].to_string() == "x"));
}

#[test]
fn monomial_syzygies() {
    let r = qring(&["x", "y", "z"]);
    let f = polys(&r, &["x^2*y", "x^2*z", "x*y*z"]);
    let s = syzygies(&f, &[]).unwrap();
    for c in &s.columns {
        let dot = c.iter().zip(&f).fold(Poly::zero(&r), |acc, (a, b)| acc.add(&a.mul(b)));
        assert!(dot.is_zero());
    }
    // membership in the column span: a syzygy with a unit coefficient on the target
    let in_span = |want: [&str; 3]| {
        let mut cols = vec![polys(&r, &want)];
        cols.extend(s.columns.iter().cloned());
        let syz = syzygies_of_vectors(&r, &cols, &[]).unwrap();
        syz.iter().any(|c| c[0].is_constant() && !c[0].is_zero())
    };
    assert!(in_span(["z", "-y", "0"]));
    assert!(in_span(["0", "y", "-x"]));
    assert!(!in_span(["1", "0", "0"]));
}

#[test]
fn single_nonzerodivisor_has_no_syzygies() {
    let r = qring(&["x", "y"]);
    assert_eq!(syzygies(&polys(&r, &["x*y+1"]), &[]).unwrap().ncols(), 0);
    assert_eq!(syzygies::<RationalField>(&[], &[]).unwrap_err(), Error::EmptyInput);
}

#[test]
fn syzygies_modulo_relations() {
    // on the conic Y0*Y2 = Y1^2 the forms (Y0, Y1) satisfy Y1*Y0 - Y0*Y1 and Y2*Y0 - Y1*Y1 = 0
    let r = qring(&["Y0", "Y1", "Y2"]);
    let a = polys(&r, &["Y0*Y2-Y1^2"]);
    let f = polys(&r, &["Y0", "Y1"]);
    let s = syzygies(&f, &a).unwrap();
    let gb = groebner(&r, &a);
    for c in &s.columns {
        let dot = c[0].mul(&f[0]).add(&c[1].mul(&f[1]));
        assert!(gb.contains(&dot));
    }
    assert!(s.columns.iter().any(|c| c[0].degree() == Some(1) && c[0].support() == vec![2]));
}

#[test]
fn lifting_in_quotient_ring() {
    let r = qring(&["Y0", "Y1", "Y2"]);
    let a = polys(&r, &["Y0*Y2-Y1^2"]);
    // Y1^2 = Y0*Y2 so Y1^2 / Y0 = Y2 modulo a
    let q = lift_quotient(&parse_poly(&r, "Y1^2").unwrap(), &Poly::var(&r, 0), &a).unwrap();
    assert_eq!(q.to_string(), "Y2");
    assert!(lift_quotient(&Poly::var(&r, 1), &Poly::var(&r, 0), &a).is_none());
}

#[test]
fn truncated_matches_full_in_low_degree() {
    let r = PolyRing::new(RationalField, ["x", "y", "z", "Y0", "Y1", "Y2"].iter().map(|s| s.to_string()).collect())
        .with_standard_bigrading(3)
        .into_ref();
    // symmetric-algebra relations of (y*z, x*z, x*y) plus a second family
    let gens = polys(&r, &["x*Y0-y*Y1", "y*Y1-z*Y2", "x*Y0*Y1-z*Y2^2+y*Y1^2"]);
    let full = buchberger(&gens, r.order().clone(), None).unwrap();
    for n in 1..4 {
        let part = buchberger(&gens, r.order().clone(), Some((1, n))).unwrap();
        let low = |gb: &GroebnerBasis<RationalField>| {
            let mut v: Vec<String> = gb
                .generators()
                .iter()
                .filter(|g| {
                    let (a, b) = g.bidegree().unwrap();
                    a <= 1 && b <= n
                })
                .map(|g| g.to_string())
                .collect();
            v.sort();
            v
        };
        assert_eq!(low(&part), low(&full), "cap (1,{n})");
    }
}

#[test]
fn incremental_resumes() {
    let r = qring(&["x", "y", "z"]);
    let gens = polys(&r, &["x^2-y*z", "y^2-x*z", "z^2-x*y+x^2"]);
    let mut inc = IncrementalGroebner::new(&r, &gens);
    inc.run(Truncation::Weight(2));
    let partial = inc.basis();
    assert!(partial.len() >= 3);
    inc.run(Truncation::None);
    assert!(inc.is_complete());
    assert_eq!(strings(&inc.basis()), strings(groebner(&r, &gens).generators()));
}

fn small_poly(r: &RingRef<PrimeField>) -> impl Strategy<Value = Poly<PrimeField>> {
    let r = r.clone();
    prop::collection::vec((0u32..7, 0u16..3, 0u16..3, 0u16..3), 1..4).prop_map(move |ts| {
        let terms = ts
            .into_iter()
            .map(|(c, a, b, d)| (r.field().from_i64(c as i64), Monomial::from_exps(&[a, b, d])))
            .collect();
        Poly::from_terms(&r, terms)
    })
}

fn gf7() -> RingRef<PrimeField> {
    PolyRing::new(PrimeField::new(7).unwrap(), vec!["x".into(), "y".into(), "z".into()]).into_ref()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn basis_is_groebner_and_contains_inputs(gens in prop::collection::vec(small_poly(&gf7()), 1..4)) {
        let r = gf7();
        let gb = groebner(&r, &gens);
        assert_is_groebner(&gb);
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
    }

    #[test]
    fn combinations_are_members(
        gens in prop::collection::vec(small_poly(&gf7()), 1..3),
        mults in prop::collection::vec(small_poly(&gf7()), 3),
        other in small_poly(&gf7()),
    ) {
        let r = gf7();
        let gb = groebner(&r, &gens);
        let comb = gens.iter().zip(&mults).fold(Poly::zero(&r), |acc, (g, h)| acc.add(&g.mul(h)));
        prop_assert!(gb.contains(&comb));
        // f - nf(f) lies in the ideal, and nf is reduced
        let nf = gb.reduce(&other);
        prop_assert!(gb.contains(&other.sub(&nf)));
        for (_, m) in nf.terms() {
            prop_assert!(gb.generators().iter().all(|g| !g.leading_monomial().unwrap().divides(m)));
        }
    }

    #[test]
    fn saturation_is_idempotent(
        i in prop::collection::vec(small_poly(&gf7()), 1..3),
        j in prop::collection::vec(small_poly(&gf7()), 1..3),
    ) {
        let r = gf7();
        prop_assume!(j.iter().any(|p| !p.is_zero()));
        let s = saturate(&i, &j).unwrap();
        let s2 = saturate(&s, &j).unwrap();
        prop_assert!(ideal_equal(&r, &s, &s2));
        prop_assert!(is_subideal(&r, &i, &s));
    }

    #[test]
    fn syzygy_columns_dot_to_zero(f in prop::collection::vec(small_poly(&gf7()), 1..4)) {
        let r = gf7();
        prop_assume!(f.iter().all(|p| !p.is_zero()));
        let s = syzygies(&f, &[]).unwrap();
        for c in &s.columns {
            let dot = c.iter().zip(&f).fold(Poly::zero(&r), |acc, (a, b)| acc.add(&a.mul(b)));
            prop_assert!(dot.is_zero());
        }
    }

    #[test]
    fn eliminants_are_members(gens in prop::collection::vec(small_poly(&gf7()), 1..3)) {
        let r = gf7();
        let gb = groebner(&r, &gens);
        for e in eliminate(&gens, &[0]).unwrap() {
            prop_assert!(gb.contains(&e));
            prop_assert!(!e.support().contains(&0));
        }
    }
}
