//! Derivative-free simplex minimization (reflection, expansion, contraction, shrink).

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Stop once every vertex lies within this distance of the best vertex.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions { tol: 1e-8, max_iter: 5_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` starting from the simplex `x0, x0 + step_i e_i`.
///
/// Coefficients follow the dimension-adaptive scheme of Gao and Han, which
/// reduces to the textbook values (1, 2, 1/2, 1/2) in two dimensions.
pub fn minimize<F>(mut f: F, x0: &[f64], step: &[f64], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert_eq!(step.len(), n, "one step per coordinate");
    assert!(n > 0);
    let nf = n as f64;
    let (alpha, gamma) = (1.0, 1.0 + 2.0 / nf);
    let beta = (0.75 - 0.5 / nf).max(0.5);
    let delta = (1.0 - 1.0 / nf).max(0.5);

    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evaluations)).collect();

    let mut iterations = 0;
    let mut converged = false;
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];

    loop {
        // stable order: ties keep their earlier position
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&k| simplex[k].clone()).collect();
        values = order.iter().map(|&k| values[k]).collect();

        let diameter = simplex[1..].iter().map(|v| dist(v, &simplex[0])).fold(0.0, f64::max);
        if diameter < opts.tol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iter {
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / nf;
            }
        }
        let worst = simplex[n].clone();
        let f_best = values[0];
        let f_second = values[n - 1];
        let f_worst = values[n];

        affine(&centroid, &worst, -alpha, &mut trial);
        let f_reflect = eval(&trial, &mut evaluations);
        if f_reflect < f_best {
            let reflected = trial.clone();
            affine(&centroid, &worst, -gamma, &mut trial);
            let f_expand = eval(&trial, &mut evaluations);
            if f_expand < f_reflect {
                simplex[n] = trial.clone();
                values[n] = f_expand;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflect;
            }
            continue;
        }
        if f_reflect < f_second {
            simplex[n] = trial.clone();
            values[n] = f_reflect;
            continue;
        }
        // contraction, outside when the reflection improved on the worst vertex
        let (coef, reference) = if f_reflect < f_worst { (-beta * alpha, f_reflect) } else { (beta, f_worst) };
        affine(&centroid, &worst, coef, &mut trial);
        let f_contract = eval(&trial, &mut evaluations);
        if f_contract < reference {
            simplex[n] = trial.clone();
            values[n] = f_contract;
            continue;
        }
        let best = simplex[0].clone();
        for k in 1..=n {
            for (x, b) in simplex[k].iter_mut().zip(&best) {
                *x = b + delta * (*x - b);
            }
            values[k] = eval(&simplex[k], &mut evaluations);
        }
    }

    SimplexResult { x: simplex[0].clone(), value: values[0], iterations, evaluations, converged }
}

// out = c + t (w - c)
fn affine(c: &[f64], w: &[f64], t: f64, out: &mut [f64]) {
    for ((o, ci), wi) in out.iter_mut().zip(c).zip(w) {
        *o = ci + t * (wi - ci);
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
