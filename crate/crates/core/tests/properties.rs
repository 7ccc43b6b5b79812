use proptest::prelude::*;

use meyerkit::cps::{generate_patch, CutProjectScheme, Window};
use meyerkit::exact::{ratio, QuadraticField, QuadraticNumber, RationalBox};
use meyerkit::freegroup::{BrooksQM, QuasiMorphism, ReducedWord};

fn quad(a: (i64, i64), b: (i64, i64)) -> QuadraticNumber {
    QuadraticNumber::new(ratio(a.0, a.1), ratio(b.0, b.1), QuadraticField::new(5).unwrap()).unwrap()
}

fn frac() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..40, 1i64..12)
}

proptest! {
    #[test]
    fn sign_agrees_with_floats(a in frac(), b in frac()) {
        let x = quad(a, b);
        let f = a.0 as f64 / a.1 as f64 + (b.0 as f64 / b.1 as f64) * 5f64.sqrt();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn inverse_is_exact(a in frac(), b in frac()) {
        let x = quad(a, b);
        if let Some(y) = x.inv() {
            let one = &x * &y;
            prop_assert_eq!(one, QuadraticNumber::from_int(1, x.field()));
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn brooks_antisymmetric(letters in proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..12)) {
        let g = ReducedWord::reduce(2, &letters).unwrap();
        let f = BrooksQM::new("ab".parse().unwrap()).unwrap();
        prop_assert_eq!(f.eval(&g.inv()), -f.eval(&g));
    }

    #[test]
    fn patch_points_lie_in_window_and_box(lo in -30i64..30, len in 0i64..30, num in 1i64..8) {
        let s = CutProjectScheme::fibonacci();
        let w = Window::cube(1, ratio(num, 4)).unwrap();
        let bx = RationalBox::parse(&format!("{lo}..{}", lo + len)).unwrap();
        let patch = generate_patch(&s, &w, &bx).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut count = 0;
        for a in -80i64..=80 {
            for b in -80i64..=80 {
                let x = a as f64 + b as f64 * phi;
                let y = a as f64 + b as f64 * (1.0 - phi);
                let r = num as f64 / 4.0;
                if x >= lo as f64 - 1e-9 && x <= (lo + len) as f64 + 1e-9 && y.abs() <= r + 1e-9 {
                    count += 1;
                }
            }
        }
        // float tolerances only widen the count; exact ties only arise at the origin
        prop_assert!(patch.len() <= count);
        prop_assert!(count - patch.len() <= 1);
        for p in &patch.points {
            prop_assert!(w.contains(&p.internal));
        }
    }
}
