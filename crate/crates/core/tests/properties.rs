use std::cmp::Ordering;

use proptest::prelude::*;
use suppcone::charp::{Field, FqElem, QPoly};
use suppcone::gapcheck::{graded_expand, in_omega, nu_omega, ratio_check};
use suppcone::orders::WeightOrder;
use suppcone::{Cone, RatVec, Q};

fn vec2() -> impl Strategy<Value = RatVec> {
    prop::collection::vec(-5i64..=5, 2).prop_map(|v| RatVec::from_ints(&v))
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((vec2(), (1i64..=4).prop_union(-4i64..=-1)), 1..6).prop_map(|ts| {
        let p = QPoly::from_terms(ts.into_iter().map(|(e, c)| (e, Q::from_integer(c.into()))));
        if p.is_zero() {
            QPoly::monomial(RatVec::zeros(2), Q::from_integer(1.into()))
        } else {
            p
        }
    })
}

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)])
        .prop_map(|(p, m)| Field::new(p, m).unwrap())
}

fn elems(k: usize) -> impl Strategy<Value = (Field, Vec<FqElem>)> {
    field().prop_flat_map(move |f| {
        prop::collection::vec(prop::collection::vec(0..f.p, f.m as usize), k)
            .prop_map(move |cs| (f, cs.iter().map(|c| f.elem(c).unwrap()).collect()))
    })
}

proptest! {
    #[test]
    fn nu_is_additive_on_products(f in qpoly(), g in qpoly(), w in vec2()) {
        let fg = f.mul(&g);
        prop_assert_eq!(nu_omega(&fg, &w).unwrap(), nu_omega(&f, &w).unwrap() + nu_omega(&g, &w).unwrap());
        prop_assert_eq!(in_omega(&fg, &w).unwrap(), in_omega(&f, &w).unwrap().mul(&in_omega(&g, &w).unwrap()));
    }

    #[test]
    fn graded_pieces_reassemble(f in qpoly(), w in vec2()) {
        let pieces = graded_expand(&f, &w).unwrap();
        prop_assert!(pieces.windows(2).all(|p| p[0].level < p[1].level));
        for p in &pieces {
            prop_assert!(p.piece.exponents().all(|e| e.dot(&w) == p.level));
        }
        let sum = pieces.iter().fold(QPoly::zero(), |acc, p| acc.add(&p.piece));
        prop_assert_eq!(sum, f);
    }

    /// Shifting every level by `c ≥ 0` cannot create a violation once `K ≥ 1`.
    #[test]
    fn level_shift_keeps_verdict(
        steps in prop::collection::vec(1i64..=6, 1..6),
        start in 1i64..=4,
        k in 1i64..=5,
        c in 0i64..=10,
    ) {
        let mut levels = vec![Q::from_integer(start.into())];
        for s in steps {
            let last = levels.last().unwrap().clone();
            levels.push(last + Q::from_integer(s.into()));
        }
        let kb = Q::from_integer(k.into());
        let before = ratio_check(&levels, &kb).unwrap();
        let shifted: Vec<Q> = levels.iter().map(|l| l + Q::from_integer(c.into())).collect();
        let after = ratio_check(&shifted, &kb).unwrap();
        if before.verdict {
            prop_assert!(after.verdict);
        }
    }

    #[test]
    fn weight_orders_are_preorders(ws in prop::collection::vec(vec2(), 1..3), a in vec2(), b in vec2(), c in vec2()) {
        prop_assume!(!ws[0].is_zero());
        let o = WeightOrder::rational(&ws).unwrap();
        prop_assert_eq!(o.compare(&a, &a), Ordering::Equal);
        prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
        if o.compare(&a, &b) != Ordering::Greater && o.compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(o.compare(&a, &c), Ordering::Greater);
        }
        if o.is_total() && o.compare(&a, &b) == Ordering::Equal {
            prop_assert_eq!(&a, &b);
        }
    }

    #[test]
    fn cone_invariants(gens in prop::collection::vec(
        prop::collection::vec(-3i64..=3, 3).prop_map(|v| RatVec::from_ints(&v)), 1..5)
    ) {
        let c = Cone::from_generators(3, &gens).unwrap();
        prop_assert!(gens.iter().all(|g| c.contains(g)));
        prop_assert_eq!(c.dual().dual(), c.clone());
        let d = c.dual();
        prop_assert!(d.generators().iter().all(|u| gens.iter().all(|g| u.dot(g) >= Q::from_integer(0.into()))));
        prop_assert!(c.contains(&c.relative_interior_point()));
        prop_assert_eq!(c.dim() + d.lineality().len(), 3);
    }

    #[test]
    fn field_axioms((_f, xs) in elems(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
        prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        prop_assert_eq!(a.mul(b), b.mul(a));
        prop_assert!(a.add(&a.neg()).is_zero());
        if let Some(i) = a.inv() {
            prop_assert_eq!(a.mul(&i), a.field().one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(a.add(b).frobenius(), a.frobenius().add(&b.frobenius()));
        prop_assert_eq!(a.frobenius().pth_root(), a.clone());
        if let Some(r) = a.artin_schreier_preimage() {
            prop_assert_eq!(r.frobenius().sub(&r), a.clone());
        }
    }
}
