// Temporary diagnostic: Gauss-Newton solve of the suspect N=4 entries
// (polynomial coefficients after removing radical prefactors) against the
// full Yang-Baxter equation, seeded from the verbatim formulas.

use std::collections::BTreeMap;

use dwpf::da::{builtin_plugin_spec, register_plugin_table, DaWeightTable};
use dwpf::numerics::principal_sqrt as sq;
use dwpf::VertexIndex;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;

fn vi(t: u8, r: u8, l: u8, b: u8) -> VertexIndex {
    VertexIndex::new(t, r, l, b)
}

const FIX_23_23: &str = "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*((1 - beta^2)*(1 - alpha^2*rho^2)*x^2 - (1 + rho)*x*(alpha*x - beta*rho)*(alpha - beta*x))";

fn patched_table() -> DaWeightTable {
    let mut spec = builtin_plugin_spec(4, 1).unwrap();
    for e in spec.entries.iter_mut() {
        if (e.iota1, e.iota2, e.kappa2, e.kappa1) == (2, 3, 2, 3) {
            e.formula = FIX_23_23.into();
        }
    }
    register_plugin_table(&spec).unwrap()
}

fn base_pair() -> Vec<VertexIndex> {
    vec![vi(2, 3, 1, 4), vi(3, 3, 2, 4)]
}

fn candidates() -> Vec<VertexIndex> {
    vec![
        vi(1, 4, 2, 3),
        vi(4, 1, 3, 2),
        vi(3, 3, 4, 2),
        vi(4, 2, 4, 2),
        vi(4, 1, 2, 3),
        vi(3, 2, 4, 1),
        vi(4, 2, 3, 3),
        vi(2, 4, 2, 4),
    ]
}

fn prefactor(idx: VertexIndex, a: Complex64, b: Complex64, rho: Complex64) -> Complex64 {
    let r = rho;
    let r2 = rho * rho;
    let r3 = rho * rho * rho;
    let rat3 = sq(1.0 - r3) / sq(1.0 - r);
    let rat23 = sq((1.0 - r2) * (1.0 - r3)) / (1.0 - r);
    let geo3 = (1.0 - r3) / (1.0 - r);
    match (idx.top, idx.right, idx.left, idx.bottom) {
        (2, 3, 1, 4) | (1, 4, 2, 3) => {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b) * (1.0 - b * b * r)) * rat3
        }
        (1, 4, 3, 2) | (2, 3, 4, 1) => sq((1.0 - a * a) * (1.0 - b * b * r2)) * rat3,
        (3, 2, 1, 4) | (4, 1, 2, 3) => sq((1.0 - a * a * r2) * (1.0 - b * b)) * rat3,
        (4, 1, 3, 2) | (3, 2, 4, 1) => {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b * r) * (1.0 - b * b * r2)) * rat3
        }
        (3, 3, 2, 4) => rat23 * sq((1.0 - a * a * r2) * (1.0 - b * b * r)),
        (2, 4, 3, 3) => rat23 * sq((1.0 - a * a * r) * (1.0 - b * b * r2)),
        (3, 3, 4, 2) => sq((1.0 - a * a * r) * (1.0 - b * b * r)) * rat23,
        (4, 2, 3, 3) => sq((1.0 - a * a * r2) * (1.0 - b * b * r)) * rat23,
        (2, 4, 4, 2) | (4, 2, 2, 4) | (3, 4, 4, 3) | (4, 3, 3, 4) => geo3,
        (2, 4, 2, 4) => sq(1.0 - a * a * r) * sq((1.0 - a * a * r2) * (1.0 - b * b * r) * (1.0 - b * b * r2)),
        (4, 2, 4, 2) => sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b * r) * (1.0 - b * b * r2)),
        _ => Complex64::new(1.0, 0.0),
    }
}

fn solve_dense(a: &mut [Complex64], rhs: &mut [Complex64], m: usize) {
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| a[i * m + col].norm().partial_cmp(&a[j * m + col].norm()).unwrap())
            .unwrap();
        if piv != col {
            for k in 0..m {
                a.swap(col * m + k, piv * m + k);
            }
            rhs.swap(col, piv);
        }
        let p = a[col * m + col];
        if p.norm() < 1e-250 {
            rhs[col] = Complex64::ZERO;
            continue;
        }
        for row in (col + 1)..m {
            let f = a[row * m + col] / p;
            if f == Complex64::ZERO {
                continue;
            }
            for k in col..m {
                let v = a[col * m + k];
                a[row * m + k] -= f * v;
            }
            let v = rhs[col];
            rhs[row] -= f * v;
        }
    }
    for col in (0..m).rev() {
        let p = a[col * m + col];
        if p.norm() < 1e-250 {
            rhs[col] = Complex64::ZERO;
            continue;
        }
        let mut acc = rhs[col];
        for k in (col + 1)..m {
            acc -= a[col * m + k] * rhs[k];
        }
        rhs[col] = acc / p;
    }
}

fn gn_run(sus: &[VertexIndex], iters: usize, verbose: bool) -> (f64, Vec<Complex64>) {
    let table = patched_table();
    let rho = table.rho().value();
    let sus: Vec<VertexIndex> = sus.to_vec();
    let ns = sus.len();
    let spos: BTreeMap<VertexIndex, usize> = sus.iter().enumerate().map(|(n, &i)| (i, n)).collect();
    let basis: Vec<(i32, i32, i32)> = (0..=4i32)
        .flat_map(|i| (0..=4i32).flat_map(move |j| (0..=4i32).map(move |k| (i, j, k))))
        .filter(|&(i, j, _)| i + j <= 6)
        .collect();
    let nb = basis.len();
    let nu = ns * nb;
    if verbose { println!("{ns} suspects x {nb} monomials = {nu} unknowns"); }

    // Seed coefficients from the verbatim formulas by exact interpolation.
    let mut coeffs = vec![Complex64::ZERO; nu];
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut dc = |rng: &mut rand_chacha::ChaCha8Rng| {
            Complex64::new(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7))
        };
        let pts: Vec<(Complex64, Complex64, Complex64)> = (0..(nb * 2))
            .map(|_| (dc(&mut rng), dc(&mut rng), dc(&mut rng).exp()))
            .collect();
        for (n, &idx) in sus.iter().enumerate() {
            let mut at_a = vec![Complex64::ZERO; nb * nb];
            let mut at_y = vec![Complex64::ZERO; nb];
            for &(a, b, x) in &pts {
                let q = table.weight_at_x(idx, a, b, x) / prefactor(idx, a, b, rho);
                let row: Vec<Complex64> = basis
                    .iter()
                    .map(|&(i, j, k)| a.powi(i) * b.powi(j) * x.powi(k))
                    .collect();
                for r in 0..nb {
                    let cr = row[r].conj();
                    at_y[r] += cr * q;
                    for c in 0..nb {
                        at_a[r * nb + c] += cr * row[c];
                    }
                }
            }
            solve_dense(&mut at_a, &mut at_y, nb);
            coeffs[n * nb..(n + 1) * nb].copy_from_slice(&at_y);
        }
    }

    let seed_coeffs = coeffs.clone();

    // Draws for the Gauss-Newton residuals.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7007);
    let mut dc = |rng: &mut rand_chacha::ChaCha8Rng| {
        Complex64::new(rng.random_range(-0.55..0.55), rng.random_range(-0.55..0.55))
    };
    let n_draws = 12;
    let draws: Vec<[(Complex64, Complex64, Complex64); 3]> = (0..n_draws)
        .map(|_| {
            let (a, b, g) = (dc(&mut rng), dc(&mut rng), dc(&mut rng));
            let (u, v, w) = (dc(&mut rng), dc(&mut rng), dc(&mut rng));
            [
                (a, b, (u - v).exp()),
                (a, g, (u - w).exp()),
                (b, g, (v - w).exp()),
            ]
        })
        .collect();

    let eval = |coeffs: &[Complex64], idx: VertexIndex, a: Complex64, b: Complex64, x: Complex64| -> Complex64 {
        match spos.get(&idx) {
            None => table.weight_at_x(idx, a, b, x),
            Some(&n) => {
                let mut q = Complex64::ZERO;
                for (m, &(i, j, k)) in basis.iter().enumerate() {
                    let c = coeffs[n * nb + m];
                    if c != Complex64::ZERO {
                        q += c * a.powi(i) * b.powi(j) * x.powi(k);
                    }
                }
                q * prefactor(idx, a, b, rho)
            }
        }
    };

    let mut lambda = 1e-8f64;
    let mut final_r = f64::INFINITY;
    for iter in 0..iters {
        // Accumulate damped normal equations.
        let mut jtj = vec![Complex64::ZERO; nu * nu];
        let mut jtr = vec![Complex64::ZERO; nu];
        let mut sum_r2 = 0.0f64;
        let mut max_r = 0.0f64;
        for pairs in &draws {
            for i1 in 1..=4u8 {
                for i2 in 1..=4u8 {
                    for i3 in 1..=4u8 {
                        for k1 in 1..=4u8 {
                            for k2 in 1..=4u8 {
                                for k3 in 1..=4u8 {
                                    let mut res = Complex64::ZERO;
                                    let mut grad: BTreeMap<usize, Complex64> = BTreeMap::new();
                                    for l1 in 1..=4u8 {
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
                                                    let vals: [Complex64; 3] = [
                                                        eval(&coeffs, slots[0].0, pairs[slots[0].1].0, pairs[slots[0].1].1, pairs[slots[0].1].2),
                                                        eval(&coeffs, slots[1].0, pairs[slots[1].1].0, pairs[slots[1].1].1, pairs[slots[1].1].2),
                                                        eval(&coeffs, slots[2].0, pairs[slots[2].1].0, pairs[slots[2].1].1, pairs[slots[2].1].2),
                                                    ];
                                                    let term = sign * vals[0] * vals[1] * vals[2];
                                                    if term != Complex64::ZERO || true {
                                                        res += term;
                                                    }
                                                    for s in 0..3 {
                                                        let (idx, p) = slots[s];
                                                        if let Some(&n) = spos.get(&idx) {
                                                            let others: Complex64 = (0..3)
                                                                .filter(|&o| o != s)
                                                                .map(|o| vals[o])
                                                                .product();
                                                            if others == Complex64::ZERO {
                                                                continue;
                                                            }
                                                            let (pa, pb, px) = pairs[p];
                                                            let pref = prefactor(idx, pa, pb, rho);
                                                            let base = sign * others * pref;
                                                            for (m, &(ei, ej, ek)) in
                                                                basis.iter().enumerate()
                                                            {
                                                                let g = base
                                                                    * pa.powi(ei)
                                                                    * pb.powi(ej)
                                                                    * px.powi(ek);
                                                                if g != Complex64::ZERO {
                                                                    *grad
                                                                        .entry(n * nb + m)
                                                                        .or_insert(Complex64::ZERO) += g;
                                                                }
                                                            }
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                    if grad.is_empty() && res.norm() < 1e-14 {
                                        continue;
                                    }
                                    sum_r2 += res.norm_sqr();
                                    max_r = max_r.max(res.norm());
                                    let g: Vec<(usize, Complex64)> = grad.into_iter().collect();
                                    for &(r, gr) in &g {
                                        let cr = gr.conj();
                                        jtr[r] += cr * res;
                                        for &(c, gc) in &g {
                                            jtj[r * nu + c] += cr * gc;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if verbose {
            println!("iter {iter}: |r|_max {max_r:.3e}, sum {sum_r2:.3e}, lambda {lambda:.1e}");
        }
        final_r = max_r;
        if max_r < 1e-10 {
            break;
        }
        let trace_scale: f64 =
            (0..nu).map(|d| jtj[d * nu + d].norm()).sum::<f64>() / nu as f64;
        let mu = 0.0 * trace_scale.max(1e-12);
        for d in 0..nu {
            jtj[d * nu + d] += Complex64::new(lambda * trace_scale.max(1e-12) + mu, 0.0);
        }
        let mut step = jtr.clone();
        for d in 0..nu {
            step[d] += mu * (coeffs[d] - seed_coeffs[d]);
        }
        solve_dense(&mut jtj, &mut step, nu);
        for (c, s) in coeffs.iter_mut().zip(&step) {
            *c -= s;
        }
        lambda = (lambda * 0.3).max(1e-12);
    }

    if verbose {
        for (n, &idx) in sus.iter().enumerate() {
            println!("==== {idx}");
            for (m, &(i, j, k)) in basis.iter().enumerate() {
                let c = coeffs[n * nb + m];
                if c.norm() > 1e-6 {
                    println!("  a^{i} b^{j} x^{k}: {:+.6}{:+.6}i", c.re, c.im);
                }
            }
        }
    }
    let _ = seed_coeffs;
    (final_r, coeffs)
}

#[test]
fn minimal_set_search() {
    let cands = candidates();
    for size in 1..=2usize {
        for combo in combinations(cands.len(), size) {
            let mut sus = base_pair();
            for &c in &combo {
                sus.push(cands[c]);
            }
            let (r, _) = gn_run(&sus, 8, false);
            let names: Vec<String> = sus.iter().map(|i| i.to_string()).collect();
            println!("set {:?}: residual {r:.2e}", names.join(" "));
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

