use std::collections::BTreeSet;
use std::sync::Arc;

use hoplift_core::cyclo::FieldExt;
use hoplift_core::datum::fixtures;
use hoplift_core::group::Character;
use hoplift_core::hopf::HAlgebra;
use hoplift_core::lincomb::Exps;
use hoplift_core::verma::{analyze, c_gamma_dim, simple_dim_h, VermaZ};

#[test]
fn verma_suite_holds_for_every_character() {
    for (name, d) in [("E1", fixtures::e1()), ("E2", fixtures::e2()), ("E4", fixtures::e4()), ("E3", fixtures::e3())] {
        let h = HAlgebra::new(&d).unwrap();
        let mut tops = BTreeSet::new();
        for gamma in d.group().characters() {
            let a = analyze(&h, gamma);
            for f in a.ledger.failures() {
                panic!("{name} γ={:?}: {f}", d.group().character(gamma).exps);
            }
            assert_eq!(a.loewy_length, a.singular.len() + 1);
            tops.insert(a.top_weight.expect("unique primitive line"));
        }
        assert_eq!(tops.len(), d.group().size(), "{name}: simple tops are pairwise distinct");
    }
}

#[test]
fn documented_examples() {
    let d = fixtures::e1();
    let h = HAlgebra::new(&d).unwrap();
    let g = d.group();
    let trivial = analyze(&h, g.trivial_char());
    assert_eq!((trivial.dim_l, trivial.loewy_length), (1, 2));
    assert_eq!(trivial.layers.iter().map(|l| l.iter().map(|f| f.dim).sum::<usize>()).collect::<Vec<_>>(), vec![1, 1]);
    let z = VermaZ::build(&h, g.trivial_char());
    assert_eq!(z.primitive_monomials(), { let mut v = vec![Exps::ZERO, Exps::unit(0)]; v.sort(); v });

    let generic = g.char_id(&Character { exps: vec![1, 0] }).unwrap();
    let a = analyze(&h, generic);
    assert_eq!((a.dim_l, a.loewy_length), (2, 1));
    assert_eq!(VermaZ::build(&h, generic).primitive_monomials(), vec![Exps::ZERO]);

    let mut dims: Vec<usize> = g.characters().map(|c| simple_dim_h(&d, c)).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2, 2]);

    let d2 = fixtures::e2();
    let h2 = HAlgebra::new(&d2).unwrap();
    let g2 = d2.group();
    let c1 = g2.char_id(&Character { exps: vec![1] }).unwrap();
    let c2 = g2.char_id(&Character { exps: vec![2] }).unwrap();
    assert_eq!(VermaZ::build(&h2, c1).primitive_monomials(), { let mut v = vec![Exps::ZERO, Exps::unit(0).with(0, 2)]; v.sort(); v });
    let a1 = analyze(&h2, c1);
    assert_eq!(a1.loewy_length, 2);
    assert_eq!(a1.layers.iter().map(|l| l.iter().map(|f| f.dim).sum::<usize>()).collect::<Vec<_>>(), vec![2, 1]);
    assert_eq!(analyze(&h2, c2).dim_l, 3);
}

#[test]
fn coradical_orbit_dimension_matches_simple() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let h = Arc::new(HAlgebra::new(&d).unwrap());
        for gamma in d.group().characters() {
            assert_eq!(c_gamma_dim(&h, gamma), simple_dim_h(&d, gamma));
        }
    }
}

#[test]
fn verma_splits_as_top_line_plus_augmentation() {
    for d in [fixtures::e1(), fixtures::e2(), fixtures::e4()] {
        let h = HAlgebra::new(&d).unwrap();
        for gamma in d.group().characters() {
            let z = VermaZ::build(&h, gamma);
            let seeds: Vec<_> =
                (0..d.n()).flat_map(|k| z.basis.iter().map(move |e| (k, *e))).map(|(k, e)| z.x(k).mul_vec(&z.vector(&e))).collect();
            let aug = hoplift_core::linalg::Subspace::spanned_by(d.field(), z.dim(), seeds);
            assert_eq!(aug.dim() + 1, z.dim());
            assert!(!aug.contains(&z.vector(&Exps::ZERO)));
        }
    }
}

#[test]
fn verma_matrices_respect_products() {
    use hoplift_core::hopf::{HElem, HLetter};
    use hoplift_core::linalg::Matrix;
    use hoplift_core::verma::monomial_char;
    for d in [fixtures::e1(), fixtures::e2(), fixtures::e4()] {
        let h = HAlgebra::new(&d).unwrap();
        let g = d.group();
        let n = d.n();
        for gamma in g.characters() {
            let z = VermaZ::build(&h, gamma);
            let f = d.field();
            let group_mat = |x| {
                let exps = g.elem(x).exps;
                let mut m = Matrix::identity(f, z.dim());
                for (i, e) in exps.iter().enumerate() {
                    for _ in 0..*e {
                        m = m.mul(z.group_gen(i));
                    }
                }
                m
            };
            // g acts diagonally by γχ^i(g)
            for x in g.elements() {
                let m = group_mat(x);
                for (col, e) in z.basis.iter().enumerate() {
                    for row in 0..z.dim() {
                        let expected = if row == col { d.eval(monomial_char(&d, gamma, e), x) } else { f.zero() };
                        assert_eq!(m.get(row, col), &expected);
                    }
                }
            }
            let mat = |l: HLetter| match l {
                HLetter::V(k) if (k as usize) < n => z.x(k as usize).clone(),
                HLetter::V(k) => z.y(k as usize - n).clone(),
                HLetter::G(x) => group_mat(x),
            };
            let act = |e: &HElem| {
                let mut total = Matrix::zero(f, z.dim(), z.dim());
                for (w, c) in e.iter() {
                    let m = h.letters(*w).into_iter().fold(Matrix::identity(f, z.dim()), |acc, l| acc.mul(&mat(l)));
                    total = total.add(&m.scale(c));
                }
                total
            };
            let mut gens: Vec<HLetter> = (0..2 * n as u8).map(HLetter::V).collect();
            gens.extend(g.generators().into_iter().map(HLetter::G));
            for &l in &gens {
                for &r in &gens {
                    let prod = h.multiply(&h.from_letters(&[l]), &h.from_letters(&[r]));
                    assert_eq!(mat(l).mul(&mat(r)), act(&prod), "{l:?}·{r:?}");
                }
            }
        }
    }
}
