//! Bessel functions of the first kind, integer order.
//!
//! Small arguments use the ascending series
//! `J_n(t) = sum_m (-1)^m / (m! (m+n)!) (t/2)^{2m+n}`; everything else uses
//! Miller's backward recurrence normalized with `J_0 + 2 sum_k J_{2k} = 1`.

/// Rescaling threshold for the backward recurrence.
const BIG: f64 = 1e250;

/// `J_n(t)`.
pub fn bessel_j(n: usize, t: f64) -> f64 {
    let x = t.abs();
    let sign = if t < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let half_sq = 0.25 * x * x;
    let value = if x <= 2.0 || half_sq <= 0.5 * (n as f64 + 1.0) {
        series(n, x)
    } else {
        miller(n, x)[n]
    };
    sign * value
}

/// `J_0(t), ..., J_nmax(t)` from a single backward sweep.
pub fn bessel_j_sequence(nmax: usize, t: f64) -> Vec<f64> {
    let x = t.abs();
    if x == 0.0 {
        let mut out = vec![0.0; nmax + 1];
        out[0] = 1.0;
        return out;
    }
    let mut out = miller(nmax, x);
    if t < 0.0 {
        out.iter_mut().skip(1).step_by(2).for_each(|v| *v = -*v);
    }
    out
}

fn series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    // (x/2)^n / n!, built up factor by factor so it underflows gracefully
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut sum = term;
    let mut m = 1.0;
    loop {
        term *= -q / (m * (m + n as f64));
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
        m += 1.0;
    }
    sum
}

fn miller(nmax: usize, x: f64) -> Vec<f64> {
    let top = (nmax as f64).max(x);
    let mut start = (top + 16.0 + (40.0 * top).sqrt()) as usize;
    start += start % 2;

    let mut out = vec![0.0; nmax + 1];
    let (mut j_next, mut j_cur) = (0.0, 1e-30);
    let mut norm = 0.0;
    let two_over_x = 2.0 / x;
    for k in (1..=start).rev() {
        if k <= nmax {
            out[k] = j_cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        let j_prev = k as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > BIG {
            let s = 1.0 / BIG;
            j_cur *= s;
            j_next *= s;
            norm *= s;
            let upto = nmax.min(start);
            for v in out[k.min(upto + 1)..=upto].iter_mut() {
                *v *= s;
            }
        }
    }
    out[0] = j_cur;
    norm += j_cur;
    let inv = 1.0 / norm;
    out.iter_mut().for_each(|v| *v *= inv);
    out
}
