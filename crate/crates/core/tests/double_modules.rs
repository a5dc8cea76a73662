use std::collections::BTreeSet;
use std::sync::Arc;

use hoplift_core::datum::fixtures;
use hoplift_core::double::induced::{analyze, simple_dim_d, InducedFactory};
use hoplift_core::double::lattice::{analyze_lattice, LatticeError};
use hoplift_core::double::DAlgebra;
use hoplift_core::group::GammaChar;
use hoplift_core::hopf::HAlgebra;
use hoplift_core::report::Outcome;

fn double(d: &hoplift_core::datum::Datum) -> DAlgebra {
    DAlgebra::new(Arc::new(HAlgebra::new(d).unwrap())).unwrap()
}

#[test]
fn double_suite_holds_for_every_character() {
    for (name, d) in [("E1", fixtures::e1()), ("E2", fixtures::e2())] {
        let dd = double(&d);
        let factory = InducedFactory::new(&dd);
        let mut tops = BTreeSet::new();
        let lams = d.gamma_chars();
        for lam in &lams {
            let a = analyze(&factory, &dd, lam);
            if let Some(f) = a.ledger.failures().first() {
                panic!("{name} λ={lam:?}: {f}");
            }
            assert_eq!(a.ledger.count(|o| matches!(o, Outcome::NotAsserted(_))), 0);
            assert_eq!(a.loewy_length, a.s1.len() + a.s2.len() + 1);
            tops.insert(a.top_weight.clone().expect("unique primitive line"));
        }
        assert_eq!(tops.len(), lams.len(), "{name}: λ ↦ L(λ) is injective");
    }
}

#[test]
fn trivial_character_of_cyclic_example() {
    let d = fixtures::e2();
    let dd = double(&d);
    let factory = InducedFactory::new(&dd);
    let g = d.group();
    let lam = GammaChar { chi: g.trivial_char(), h: g.identity() };
    let a = analyze(&factory, &dd, &lam);
    assert_eq!(a.dim_i, 9);
    assert_eq!((a.dim_l, a.loewy_length, a.composition_length), (1, 3, Some(4)));
    assert_eq!(a.layer_dims.iter().sum::<usize>(), 9);
}

#[test]
fn simple_dimensions_sum_over_blocks() {
    // Every simple appears as a top, so the dimensions are those of the formula.
    let d = fixtures::e1();
    let dims: Vec<usize> = d.gamma_chars().iter().map(|l| simple_dim_d(&d, l)).collect();
    assert_eq!(dims.len(), 16);
    assert!(dims.iter().all(|&x| x == 1 || x == 2 || x == 4));
}

#[test]
fn not_half_clean_datum_skips_theorem_checks() {
    let d = fixtures::e3();
    assert!(!d.is_half_clean());
    let dd = double(&d);
    let factory = InducedFactory::new(&dd);
    let g = d.group();
    let lam = GammaChar { chi: g.trivial_char(), h: g.identity() };
    let a = analyze(&factory, &dd, &lam);
    assert!(a.ledger.passed());
    assert!(a.ledger.count(|o| matches!(o, Outcome::NotAsserted(_))) > 0);
    assert!(a.ledger.entries.iter().filter(|e| e.check.starts_with("oracle_")).all(|e| e.outcome == Outcome::Pass));
}

#[test]
fn classical_lattice_structure() {
    for d in [fixtures::e1(), fixtures::e2()] {
        assert!(d.is_classical());
        let dd = double(&d);
        let factory = InducedFactory::new(&dd);
        for lam in d.gamma_chars() {
            let a = analyze_lattice(&factory, &lam).unwrap();
            if let Some(f) = a.ledger.failures().first() {
                panic!("λ={lam:?}: {f}");
            }
            let s = d.singular_d(&lam);
            assert_eq!(a.locals.len(), 1 << (s.first().len() + s.second().len()));
            assert!(a.submodules_checked > 0);
        }
    }
}

#[test]
fn lattice_refuses_non_classical_data() {
    let d = fixtures::e3();
    assert!(!d.is_classical());
    let dd = double(&d);
    let factory = InducedFactory::new(&dd);
    let lam = d.gamma_chars()[0].clone();
    assert_eq!(analyze_lattice(&factory, &lam).unwrap_err(), LatticeError::NotClassical);
}

#[test]
fn two_term_decompositions_occur() {
    let d = fixtures::e2();
    let dd = double(&d);
    let factory = InducedFactory::new(&dd);
    let g = d.group();
    let lam = GammaChar { chi: g.trivial_char(), h: g.identity() };
    let a = analyze_lattice(&factory, &lam).unwrap();
    assert_eq!(a.locals.len(), 4);
    assert!(a.summands_maximal.1 >= 2);
    println!("summands maximal in N: {:?}", a.summands_maximal);
}

#[test]
fn induced_matrices_respect_products() {
    use hoplift_core::double::DLetter;
    use hoplift_core::linalg::Matrix;
    for d in [fixtures::e1(), fixtures::e2()] {
        let dd = double(&d);
        let factory = InducedFactory::new(&dd);
        let g = d.group();
        let mut gens: Vec<DLetter> = (0..d.n() as u8).flat_map(|k| [DLetter::X(k), DLetter::Eta(k), DLetter::Y(k), DLetter::Xi(k)]).collect();
        gens.extend(g.generators().into_iter().map(DLetter::G));
        gens.extend(g.char_generators().into_iter().map(DLetter::Chi));
        for lam in d.gamma_chars() {
            let dim = factory.build(&lam).dim();
            let mat = |l: DLetter| factory.letter_matrix(&dd, &lam, l);
            let act = |e: &hoplift_core::double::DElem| {
                let mut total = Matrix::zero(d.field(), dim, dim);
                for (w, c) in e.iter() {
                    let m = dd.letters(*w).into_iter().fold(Matrix::identity(d.field(), dim), |acc, l| acc.mul(&mat(l)));
                    total = total.add(&m.scale(c));
                }
                total
            };
            for &l in &gens {
                for &r in &gens {
                    let prod = dd.multiply(&dd.letter(l), &dd.letter(r));
                    assert_eq!(mat(l).mul(&mat(r)), act(&prod), "λ={lam:?} {l:?}·{r:?}");
                }
            }
        }
    }
}
