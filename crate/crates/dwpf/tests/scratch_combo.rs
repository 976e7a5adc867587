// Temporary diagnostic: with the established fixes applied, try the two
// possible orientations of each remaining transpose-asymmetric pair and find
// the combination under which the full Yang-Baxter scan passes.

use dwpf::da::{builtin_plugin_spec, register_plugin_table};
use dwpf::verify::{ybe_residual, Model, YbeInstance, YbeSample};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;

const FIX_23_23: &str = "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*((1 - beta^2)*(1 - alpha^2*rho^2)*x^2 - (1 + rho)*x*(alpha*x - beta*rho)*(alpha - beta*x))";
// transpose image of (1,4;2,3): swap fields in its formula
const FIX_23_14: &str = "sqrt((1 - beta^2)*(1 - beta^2*rho)*(1 - alpha^2)*(1 - alpha^2*rho))*(sqrt(1 - rho^3)/sqrt(1 - rho))*x^2*(beta - alpha*x)";
// transpose image of (2,4;3,3)
const FIX_33_24: &str = "x*(sqrt((1 - rho^2)*(1 - rho^3))/(1 - rho))*sqrt((1 - beta^2*rho)*(1 - alpha^2*rho^2))*(x - alpha*beta)*(beta - alpha*x)";
// transpose image of (2,3;4,1)
const FIX_41_23: &str = "(sqrt(1 - rho^3)/sqrt(1 - rho))*sqrt((1 - beta^2)*(1 - alpha^2*rho^2))*(beta - alpha*x)*(beta - alpha*rho*x)";

// pair (3,2;4,1)/(4,1;3,2): option a fixes (4,1;3,2), option b fixes (3,2;4,1)
const A_41_32: &str = "sqrt((1 - beta^2)*(1 - beta^2*rho)*(1 - alpha^2*rho)*(1 - alpha^2*rho^2))*(sqrt(1 - rho^3)/sqrt(1 - rho))*(beta - alpha*x)";
const B_32_41: &str = "sqrt((1 - beta^2)*(1 - beta^2*rho)*(1 - alpha^2*rho)*(1 - alpha^2*rho^2))*(sqrt(1 - rho^3)/sqrt(1 - rho))*(alpha - beta*x)";

// pair (3,3;4,2)/(4,2;3,3): option a fixes (4,2;3,3), option b fixes (3,3;4,2)
const A_42_33: &str = "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*(sqrt((1 - rho^2)*(1 - rho^3))/(1 - rho))*(x - alpha*beta)*(beta - alpha*x)";
const B_33_42: &str = "sqrt((1 - alpha^2*rho^2)*(1 - beta^2*rho))*(sqrt((1 - rho^2)*(1 - rho^3))/(1 - rho))*(x - alpha*beta)*(alpha - beta*x)";

// (4,2;4,2) self-symmetric options
const C_LOW: &str = "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2)*(1 - beta^2*rho))*(x - alpha*beta)";
const C_HIGH: &str = "sqrt((1 - alpha^2*rho)*(1 - alpha^2*rho^2)*(1 - beta^2*rho)*(1 - beta^2*rho^2))*(x - alpha*beta)";

fn scan(overrides: &[((u8, u8, u8, u8), &str)]) -> (usize, f64) {
    let mut spec = builtin_plugin_spec(4, 1).unwrap();
    for e in spec.entries.iter_mut() {
        for &(key, formula) in overrides {
            if (e.iota1, e.iota2, e.kappa2, e.kappa1) == key {
                e.formula = formula.into();
            }
        }
    }
    let table = register_plugin_table(&spec).unwrap();
    let model = Model::Da(&table);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(40);
    let mut dc = |rng: &mut rand_chacha::ChaCha8Rng| {
        Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5))
    };
    let sample = YbeSample {
        rapidities: [dc(&mut rng), dc(&mut rng), dc(&mut rng)],
        fields: [dc(&mut rng), dc(&mut rng), dc(&mut rng)],
    };
    let mut failing = 0usize;
    let mut worst = 0.0f64;
    for i1 in 1..=4u8 {
        for i2 in 1..=4u8 {
            for i3 in 1..=4u8 {
                for k1 in 1..=4u8 {
                    for k2 in 1..=4u8 {
                        for k3 in 1..=4u8 {
                            let inst = YbeInstance {
                                iota: [i1, i2, i3],
                                kappa: [k1, k2, k3],
                            };
                            let r = ybe_residual(&model, &sample, &inst);
                            if r > 1e-9 {
                                failing += 1;
                            }
                            worst = worst.max(r);
                        }
                    }
                }
            }
        }
    }
    (failing, worst)
}

#[test]
fn combos() {
    let base: Vec<((u8, u8, u8, u8), &str)> = vec![
        ((2, 3, 2, 3), FIX_23_23),
        ((2, 3, 1, 4), FIX_23_14),
        ((3, 3, 2, 4), FIX_33_24),
        ((4, 1, 2, 3), FIX_41_23),
    ];
    for (pa_name, pa) in [("fix(4,1;3,2)", ((4u8, 1u8, 3u8, 2u8), A_41_32)), ("fix(3,2;4,1)", ((3, 2, 4, 1), B_32_41))] {
        for (pb_name, pb) in [("fix(4,2;3,3)", ((4u8, 2u8, 3u8, 3u8), A_42_33)), ("fix(3,3;4,2)", ((3, 3, 4, 2), B_33_42))] {
            for (pc_name, pc) in [("42;42 low", ((4u8, 2u8, 4u8, 2u8), C_LOW)), ("42;42 high", ((4, 2, 4, 2), C_HIGH)), ("42;42 verbatim", ((9, 9, 9, 9), ""))] {
                let mut ov = base.clone();
                ov.push(pa);
                ov.push(pb);
                if pc.0 .0 != 9 {
                    ov.push(pc);
                }
                let (failing, worst) = scan(&ov);
                println!("{pa_name} + {pb_name} + {pc_name}: {failing} failing, worst {worst:.2e}");
            }
        }
    }
}
