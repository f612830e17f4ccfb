use std::collections::BTreeMap;

use howe::theta_transfer::{
    block_weyl_shape, support_transfer, theta_inertial, FirstOccurrenceTable, GLFactor, InertialClass, Quad,
    Reducibility, Side,
};
use howe::Sign;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LABELS: [&str; 3] = ["a", "b", "c"];

fn tower() -> Side {
    Side::orthogonal(Sign::Minus, "u")
}

fn table() -> FirstOccurrenceTable {
    FirstOccurrenceTable::new()
        .with("pi", &tower(), 2, "sigma")
        .with("sigma", &Side::Sp, 2, "pi")
}

fn random_class(rng: &mut ChaCha8Rng) -> InertialClass {
    let factors = (0..rng.gen_range(0..4))
        .map(|_| {
            let mut f = GLFactor::new(rng.gen_range(1..=3), LABELS[rng.gen_range(0..3)]);
            f.quad = if rng.gen_bool(0.5) { Quad::Eta } else { Quad::Trivial };
            f.nr_exp = BigRational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into());
            f
        })
        .collect();
    InertialClass::new(Side::Sp, 1, "pi", factors).unwrap()
}

#[test]
fn random_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let s = random_class(&mut rng);
        let target = 2 + s.total - 1 + rng.gen_range(0..3);
        let t = support_transfer(&s, &tower(), target, &table()).unwrap();
        assert_eq!(t.support.factors.iter().map(|f| f.size).sum::<u32>() + t.support.base.size, target);
        let exps: Vec<BigRational> = (0..s.factors.len()).map(|i| BigRational::from_integer((i as i64).into())).collect();
        let twisted = s.twist_unramified(&exps).unwrap();
        assert_eq!(
            theta_inertial(&twisted, &tower(), target, &table()).unwrap(),
            theta_inertial(&s, &tower(), target, &table()).unwrap()
        );
    }
}

#[test]
fn eta_flips_on_a_nontrivial_discriminant() {
    let s = InertialClass::new(Side::Sp, 1, "pi", vec![GLFactor::new(2, "a")]).unwrap();
    let up = theta_inertial(&s, &tower(), 4, &table()).unwrap();
    assert_eq!(up.factors[0].quad, Quad::Eta);
    let red: BTreeMap<String, Reducibility> = [("a".to_string(), Reducibility::SelfdualWithParameter)].into();
    assert_eq!(block_weyl_shape(&s, &red).unwrap().rank, block_weyl_shape(&up, &red).unwrap().rank);
}
