use quatslice::ideal::{
    member, member_linear_oracle, radical_witness_check, radical_witness_find, symmetrized_ideal, Membership,
    MembershipCertificate, QuasiPrimeViolation, RadicalWitness, RightIdealBasis,
};
use quatslice::point::CommutingPoint;
use quatslice::syntax::parse_poly;
use quatslice::variety::{closure_check, vc_compute, VcOptions, VcPoint};
use quatslice::{Error, MonomialOrder, Quaternion, SlicePoly};

fn p(s: &str, n: usize) -> SlicePoly {
    parse_poly(s, n).unwrap()
}

fn ideal(gens: &[&str], n: usize, order: MonomialOrder) -> RightIdealBasis {
    RightIdealBasis::new(gens.iter().map(|s| p(s, n)).collect(), order).unwrap()
}

#[test]
fn membership_does_not_depend_on_the_order() {
    let gens = ["q1^2 + 1", "q2^2 + 1", "q1 q2 j - q2"];
    let a = ideal(&gens, 2, MonomialOrder::degrevlex());
    let b = ideal(&gens, 2, MonomialOrder::lex());
    for t in ["q1^2 - q2^2", "q1 - q2", "q1 q2 + 1", "q2 j - q1^2 q2", "q1^3 + q1"] {
        let t = p(t, 2);
        let x = member(&t, &a).unwrap().is_member();
        assert_eq!(x, member(&t, &b).unwrap().is_member());
        assert_eq!(x, member_linear_oracle(&t, &a, 6));
    }
}

#[test]
fn certificates_survive_json() {
    let i = ideal(&["q1^2 + 1", "q2^2 + 1"], 2, MonomialOrder::default());
    let Membership::Member(cert) = member(&p("q1^2 - q2^2", 2), &i).unwrap() else {
        panic!("member")
    };
    let text = serde_json::to_string(&cert).unwrap();
    let back: MembershipCertificate = serde_json::from_str(&text).unwrap();
    assert!(back.verify(i.generators()));
    let cube = ideal(&["(q+1)^3"], 1, MonomialOrder::default());
    let v = QuasiPrimeViolation::build(&p("(q+1)^2", 1), &p("q + 1", 1), &cube).unwrap();
    let back: QuasiPrimeViolation = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
    let sq = ideal(&["(q+1)^2"], 1, MonomialOrder::default());
    let w = radical_witness_find(&p("q + 1", 1), &sq, &Quaternion::from_ints(0, 1, 2, 0), 2)
        .unwrap()
        .unwrap();
    let back: RadicalWitness = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
    assert!(radical_witness_check(&back, &sq).unwrap());
}

#[test]
fn symmetrized_ideals() {
    let i = ideal(&["q - i"], 1, MonomialOrder::default());
    let s = symmetrized_ideal(&i, 2).unwrap();
    assert!(s.exact);
    assert_eq!(s.ideal.reduced_basis(), vec![p("q^2 + 1", 1)]);
    let two = ideal(&["q1^2 + 1", "q2^2 + 1"], 2, MonomialOrder::default());
    let s = symmetrized_ideal(&two, 2).unwrap();
    assert!(!s.exact);
    assert!(two.contains_ideal(&s.ideal));
}

#[test]
fn zero_sets_of_real_ideals() {
    let v = vc_compute(&ideal(&["(q+1)^2"], 1, MonomialOrder::default()), &VcOptions::default()).unwrap();
    assert_eq!(
        v.real_points,
        vec![VcPoint::Exact(
            CommutingPoint::new(vec![Quaternion::from_ints(-1, 0, 0, 0)]).unwrap()
        )]
    );
    let r = closure_check(
        &ideal(&["q1 - q2", "q2^2 + 1"], 2, MonomialOrder::default()),
        2,
        &VcOptions::default(),
    )
    .unwrap();
    assert!(r.lhs_subset_rhs);
    let unit = ideal(&["q - i", "q - j"], 1, MonomialOrder::default());
    assert!(vc_compute(&unit, &VcOptions::default()).unwrap().is_empty());
    let line = ideal(&["q1 - q2"], 2, MonomialOrder::default());
    assert!(matches!(
        vc_compute(&line, &VcOptions::default()),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn mismatched_inputs_are_rejected() {
    let i = ideal(&["q1^2 + 1"], 2, MonomialOrder::default());
    assert!(matches!(member(&p("q", 1), &i), Err(Error::NvarsMismatch { .. })));
    assert!(matches!(parse_poly("q3", 2), Err(Error::VarOutOfRange { .. })));
    assert!(matches!(parse_poly("(q + 1", 1), Err(Error::Parse { .. })));
}
