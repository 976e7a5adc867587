// Temporary diagnostic: on the single-field slices (alpha,0) and (0,beta),
// each suspect entry must be a monomial in x. Transport instances of the
// Yang-Baxter equation determine the powers; gather them for every suspect.

use std::collections::{BTreeMap, BTreeSet};

use dwpf::da::{builtin_plugin_spec, register_plugin_table, DaWeightTable};
use dwpf::VertexIndex;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;

fn vi(t: u8, r: u8, l: u8, b: u8) -> VertexIndex {
    VertexIndex::new(t, r, l, b)
}

const FIXED_23_23: &str = "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*((1 - beta^2)*(1 - alpha^2*rho^2)*x^2 - (1 + rho)*x*(alpha*x - beta*rho)*(alpha - beta*x))";

fn patched_table() -> DaWeightTable {
    let mut spec = builtin_plugin_spec(4, 1).unwrap();
    for e in spec.entries.iter_mut() {
        if (e.iota1, e.iota2, e.kappa2, e.kappa1) == (2, 3, 2, 3) {
            e.formula = FIXED_23_23.into();
        }
    }
    register_plugin_table(&spec).unwrap()
}

fn suspects() -> BTreeSet<VertexIndex> {
    [
        vi(2, 3, 1, 4),
        vi(1, 4, 2, 3),
        vi(1, 4, 3, 2),
        vi(3, 2, 1, 4),
        vi(2, 3, 4, 1),
        vi(4, 1, 2, 3),
        vi(4, 1, 3, 2),
        vi(3, 2, 4, 1),
        vi(3, 3, 2, 4),
        vi(2, 4, 3, 3),
        vi(3, 3, 4, 2),
        vi(4, 2, 3, 3),
        vi(2, 4, 4, 2),
        vi(4, 2, 2, 4),
        vi(3, 4, 4, 3),
        vi(4, 3, 3, 4),
        vi(3, 3, 3, 3),
    ]
    .into_iter()
    .collect()
}

#[test]
fn slice_transport_powers() {
    let table = patched_table();
    let sus = suspects();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5150);

    // report[(idx, slice)] -> set of integer powers seen (slice 0: (f,0),
    // slice 1: (0,f))
    let mut report: BTreeMap<(VertexIndex, usize), BTreeMap<i32, usize>> = BTreeMap::new();
    let mut nonmonomial: BTreeMap<(VertexIndex, usize), usize> = BTreeMap::new();

    for draw in 0..40 {
        let mut dc = |rng: &mut rand_chacha::ChaCha8Rng| {
            Complex64::new(rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6))
        };
        let f = dc(&mut rng);
        // slice 0: fields (f, 0, 0); slice 1: (0, f, 0) puts the X01 pair at
        // (0, f) and X12 at (f, 0). Use both patterns alternately.
        let fields = if draw % 2 == 0 {
            [f, Complex64::ZERO, Complex64::ZERO]
        } else {
            [Complex64::ZERO, f, f]
        };
        let (u, v, w) = (dc(&mut rng), dc(&mut rng), dc(&mut rng));
        let pairs = [
            (fields[0], fields[1], (u - v).exp()),
            (fields[0], fields[2], (u - w).exp()),
            (fields[1], fields[2], (v - w).exp()),
        ];
        let slice_of = |p: usize| -> Option<usize> {
            let (pa, pb, _) = pairs[p];
            match (pa == Complex64::ZERO, pb == Complex64::ZERO) {
                (false, true) => Some(0),
                (true, false) => Some(1),
                _ => None,
            }
        };
        let wval = |idx: VertexIndex, p: usize| {
            table.weight_at_x(idx, pairs[p].0, pairs[p].1, pairs[p].2)
        };

        for i1 in 1..=4u8 {
            for i2 in 1..=4u8 {
                for i3 in 1..=4u8 {
                    for k1 in 1..=4u8 {
                        for k2 in 1..=4u8 {
                            for k3 in 1..=4u8 {
                                // usable: all terms trusted or linear in ONE
                                // suspect entry (any args).
                                let mut terms: Vec<(VertexIndex, usize, Complex64)> = Vec::new();
                                let mut constant = Complex64::ZERO;
                                let mut usable = true;
                                'terms: for l1 in 1..=4u8 {
                                    for l2 in 1..=4u8 {
                                        for l3 in 1..=4u8 {
                                            let sides: [(f64, [(VertexIndex, usize); 3]); 2] = [
                                                (
                                                    1.0,
                                                    [
                                                        (vi(i1, i2, l2, l1), 0),
                                                        (vi(l1, i3, l3, k1), 1),
                                                        (vi(l2, l3, k3, k2), 2),
                                                    ],
                                                ),
                                                (
                                                    -1.0,
                                                    [
                                                        (vi(i2, i3, l3, l2), 2),
                                                        (vi(i1, l3, k3, l1), 1),
                                                        (vi(l1, l2, k2, k1), 0),
                                                    ],
                                                ),
                                            ];
                                            for (sign, slots) in sides {
                                                let mut unknown: Vec<(VertexIndex, usize)> =
                                                    Vec::new();
                                                let mut product = Complex64::new(sign, 0.0);
                                                let mut zero = false;
                                                for &(idx, p) in &slots {
                                                    if sus.contains(&idx) {
                                                        unknown.push((idx, p));
                                                    } else {
                                                        let v = wval(idx, p);
                                                        if v == Complex64::ZERO {
                                                            zero = true;
                                                            break;
                                                        }
                                                        product *= v;
                                                    }
                                                }
                                                if zero {
                                                    continue;
                                                }
                                                match unknown.len() {
                                                    0 => constant += product,
                                                    1 => terms.push((
                                                        unknown[0].0,
                                                        unknown[0].1,
                                                        product,
                                                    )),
                                                    _ => {
                                                        usable = false;
                                                        break 'terms;
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                                if !usable || constant.norm() > 1e-12 {
                                    continue;
                                }
                                // Need exactly two terms of the SAME entry at
                                // two different x-args on the SAME slice.
                                if terms.len() != 2 {
                                    continue;
                                }
                                let (e0, p0, c0) = terms[0];
                                let (e1, p1, c1) = terms[1];
                                if e0 != e1 || p0 == p1 {
                                    continue;
                                }
                                let (s0, s1) = (slice_of(p0), slice_of(p1));
                                if s0 != s1 || s0.is_none() {
                                    continue;
                                }
                                let slice = s0.unwrap();
                                if c0.norm() < 1e-9 || c1.norm() < 1e-9 {
                                    continue;
                                }
                                // c0 W(x_{p0}) + c1 W(x_{p1}) = 0
                                // => W(x0)/W(x1) = -c1/c0 = (x0/x1)^k
                                let ratio = -c1 / c0;
                                let xr = pairs[p0].2 / pairs[p1].2;
                                if (xr.norm() - 1.0).abs() < 0.05 {
                                    continue;
                                }
                                let k = ratio.norm().ln() / xr.norm().ln();
                                let k_round = k.round();
                                let phase_ok = (k - k_round).abs() < 1e-6
                                    && k_round.abs() < 9.0
                                    && (ratio / xr.powi(k_round as i32) - 1.0).norm() < 1e-6;
                                if phase_ok {
                                    *report
                                        .entry((e0, slice))
                                        .or_default()
                                        .entry(k_round as i32)
                                        .or_insert(0) += 1;
                                } else {
                                    *nonmonomial.entry((e0, slice)).or_insert(0) += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for ((idx, slice), powers) in &report {
        let side = if *slice == 0 { "(f,0)" } else { "(0,f)" };
        println!("{idx} {side}: powers {powers:?}");
    }
    for ((idx, slice), n) in &nonmonomial {
        let side = if *slice == 0 { "(f,0)" } else { "(0,f)" };
        println!("{idx} {side}: {n} NON-MONOMIAL transport relations");
    }
}
