//! Squarefree decomposition for ideals in a single variable.

use super::gcd::gcd;
use super::poly::Polynomial;

/// Yun's algorithm: returns `q_1, q_2, …` with `f = c · Π q_i^i`, each
/// `q_i` squarefree and pairwise coprime. `f` must use only `x_v`.
pub fn yun(f: &Polynomial, v: usize) -> Vec<Polynomial> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative(v);
    let a = gcd(f, &df);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let mut c = df.exact_div(&a).expect("gcd divides");
    let mut d = c.sub(&b.derivative(v));
    loop {
        let q = gcd(&b, &d);
        out.push(q.clone());
        b = b.exact_div(&q).expect("gcd divides");
        if b.is_constant() {
            break;
        }
        c = d.exact_div(&q).expect("gcd divides");
        d = c.sub(&b.derivative(v));
    }
    while out.last().map(|q| q.is_constant()).unwrap_or(false) {
        out.pop();
    }
    out
}
