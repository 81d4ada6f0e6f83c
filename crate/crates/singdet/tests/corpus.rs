//! Cross-checks over the bundled corpus: bracket Jones polynomials against
//! tabulated ones, and the closed forms against diagram-derived matrices.

use num_traits::Signed;

use singdet::diagrams::{
    goeritz_from_diagram, jones_via_bracket, load_corpus, q_via_skein, seifert_matrix_from_diagram,
    LinkRecord, BRACKET_BUDGET, SKEIN_BUDGET,
};
use singdet::evaluate::{
    jones_at_zeta6_knot, jones_special_values, points, q_at_golden, q_at_golden_link, Cyclotomic,
    JonesSpecialValues, LaurentPolynomial,
};
use singdet::exactlinalg::{inertia, SymMatrix};
use singdet::linkform::{wall_decompose, LinkingForm};
use singdet::seifert::{classical_invariants, delta_p, delta_p_gl, singular_determinant, SeifertData};

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn corpus() -> Vec<LinkRecord> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    load_corpus(&dir).expect("corpus loads")
}

fn with_diagrams() -> Vec<LinkRecord> {
    corpus().into_iter().filter(|r| r.diagram.is_some()).collect()
}

fn i_pow(k: i64) -> Cyclotomic {
    Cyclotomic::i().pow(k.rem_euclid(4) as u32)
}

/// `i^σ det`, the Jones value at `t = -1` predicted by a symmetric form.
fn at_minus_one(m: &SymMatrix) -> Cyclotomic {
    i_pow(inertia(m).signature()).scale(&m.det().abs())
}

fn zeta6_closed_form(m: &SymMatrix) -> Cyclotomic {
    let det = m.det().abs();
    let d3 = singular_determinant(m, 3).unwrap().d_p;
    let w = wall_decompose(&LinkingForm::new(m.clone()).unwrap()).unwrap();
    jones_at_zeta6_knot(&det, d3, w.b_parity(3))
        .unwrap()
        .as_cyclo()
        .unwrap()
        .clone()
}

#[test]
fn corpus_is_complete() {
    let recs = corpus();
    let knots = recs
        .iter()
        .filter(|r| r.components == Some(1) && r.crossings().is_some_and(|c| c <= 9))
        .count();
    // unknot plus the 84 prime knots up to nine crossings
    assert_eq!(knots, 85);
    for name in ["12a_628", "12a_665", "12a_828", "12a_1044", "12n_553", "12n_553_form", "p5_17_5"] {
        assert!(recs.iter().any(|r| r.name == name), "{name} missing");
    }
}

#[test]
fn bracket_matches_tabulated_jones() {
    for r in with_diagrams() {
        let Some(text) = r.extra.get("jones") else { continue };
        let want: LaurentPolynomial = text.parse().unwrap();
        let got = jones_via_bracket(r.diagram.as_ref().unwrap(), BRACKET_BUDGET).unwrap();
        assert_eq!(got, want, "{}", r.name);
    }
}

#[test]
fn tabulated_seifert_matrices_match_bracket() {
    for r in with_diagrams() {
        let Some(a) = &r.seifert else { continue };
        let v = jones_via_bracket(r.diagram.as_ref().unwrap(), BRACKET_BUDGET).unwrap();
        let m = a.symmetrized();
        assert_eq!(
            v.eval_zeta24(points::MINUS_ONE),
            at_minus_one(m),
            "{}",
            r.name
        );
        if let Some(s) = r.extra.get("signature") {
            assert_eq!(inertia(m).signature().to_string(), *s, "{}", r.name);
        }
        if let Some(d) = r.extra.get("determinant") {
            assert_eq!(m.det().abs().to_string(), *d, "{}", r.name);
        }
    }
}

#[test]
fn diagram_seifert_matrix_matches_bracket() {
    for r in with_diagrams() {
        let d = r.diagram.as_ref().unwrap();
        if !d.is_connected() {
            continue;
        }
        let a = seifert_matrix_from_diagram(d).unwrap();
        let m = a.symmetrized();
        let v = jones_via_bracket(d, BRACKET_BUDGET).unwrap();
        assert_eq!(v.eval_zeta24(points::MINUS_ONE), at_minus_one(m), "{}", r.name);
        assert_eq!(a.mu(), d.component_count(), "{}", r.name);
        if r.components == Some(1) {
            assert_eq!(v.eval_zeta24(points::ZETA6), zeta6_closed_form(m), "{}", r.name);
        }
    }
}

// A checkerboard surface does not see orientations, so for links the two
// sides can differ (the Hopf diagrams are an example); knots only.
#[test]
fn goeritz_and_seifert_singular_determinants_agree_on_knots() {
    let mut checked = 0;
    for r in with_diagrams() {
        let d = r.diagram.as_ref().unwrap();
        if r.components != Some(1) || d.crossing_count() == 0 {
            continue;
        }
        checked += 1;
        let a = seifert_matrix_from_diagram(d).unwrap();
        let g = goeritz_from_diagram(d).unwrap();
        assert_eq!(g.r.det().abs(), a.symmetrized().det().abs(), "{}", r.name);
        for p in PRIMES {
            let want = delta_p(a.symmetrized(), p).unwrap();
            assert_eq!(delta_p_gl(&g, p).unwrap(), want, "{} p = {p}", r.name);
        }
    }
    assert!(checked >= 20);
}


/// Tabulated Seifert matrix, or one read off the diagram.
fn seifert_data(r: &LinkRecord) -> Option<SeifertData> {
    r.seifert.clone().or_else(|| {
        let d = r.diagram.as_ref()?;
        d.is_connected().then(|| seifert_matrix_from_diagram(d).unwrap())
    })
}

#[test]
fn special_values_match_bracket() {
    let mut links = 0;
    for r in with_diagrams() {
        let Some(a) = seifert_data(&r) else { continue };
        let d = r.diagram.as_ref().unwrap();
        let c = d.component_count();
        let b = classical_invariants(&a, &PRIMES).unwrap();
        assert_eq!(b.c, c, "{}", r.name);
        let got = JonesSpecialValues::from_polynomial(&jones_via_bracket(d, BRACKET_BUDGET).unwrap());
        let want = jones_special_values(&b, b.delta_p[&3], None).unwrap();
        if c == 1 {
            assert_eq!(got, want, "{}", r.name);
            continue;
        }
        links += 1;
        let mut got_rest = got.clone();
        got_rest.at_i = Cyclotomic::zero();
        assert_eq!(got_rest, want, "{}", r.name);
        // V(i) is (-√2)^{c-1} (-1)^Arf for proper links and 0 otherwise
        let base = (-Cyclotomic::sqrt2()).pow(c as u32 - 1);
        if d.is_proper() {
            assert!(got.at_i == base || got.at_i == -base, "{}", r.name);
        } else {
            assert!(got.at_i.is_zero(), "{}", r.name);
        }
    }
    assert!(links >= 5);
}

#[test]
fn skein_matches_golden_closed_forms() {
    for r in with_diagrams() {
        let Some(m) = r.symmetric_form() else { continue };
        let d = r.diagram.as_ref().unwrap();
        if d.crossing_count() > SKEIN_BUDGET {
            continue;
        }
        let q = q_via_skein(d, SKEIN_BUDGET).unwrap().eval_golden().unwrap();
        let rong = q_at_golden_link(&m).unwrap();
        assert_eq!(Some(&q), rong.as_sqrt5(), "{}", r.name);
        if r.components == Some(1) {
            let det = m.det().abs();
            let d5 = singular_determinant(&m, 5).unwrap().d_p;
            let w = wall_decompose(&LinkingForm::new(m.clone()).unwrap()).unwrap();
            let closed = q_at_golden(&det, d5, w.b_parity(5)).unwrap();
            assert_eq!(Some(&q), closed.as_sqrt5(), "{}", r.name);
        }
    }
}
