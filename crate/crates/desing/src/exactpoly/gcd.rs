//! Multivariate gcd by recursion on the highest variable.

use super::poly::Polynomial;

/// Greatest common divisor, monic under degrevlex. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = f.nvars();
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(n);
    }
    let v = match (0..n).rev().find(|&i| f.uses_var(i) || g.uses_var(i)) {
        Some(v) => v,
        None => return Polynomial::one(n),
    };
    if !f.uses_var(v) {
        return gcd(f, &content(g, v));
    }
    if !g.uses_var(v) {
        return gcd(&content(f, v), g);
    }
    let (cf, cg) = (content(f, v), content(g, v));
    let c = gcd(&cf, &cg);
    let pf = f.exact_div(&cf).expect("content divides");
    let pg = g.exact_div(&cg).expect("content divides");
    let (mut a, mut b) = if pf.degree_in(v) >= pg.degree_in(v) { (pf, pg) } else { (pg, pf) };
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = Polynomial::one(n);
            break;
        }
        a = b;
        b = primitive_part(&r, v);
    }
    c.mul(&primitive_part(&b, v)).monic()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `x_v`.
pub fn content(f: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(f.nvars());
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(f.nvars());
        }
    }
    acc
}

pub fn primitive_part(f: &Polynomial, v: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content(f, v);
    f.exact_div(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` with respect to `x_v`.
fn prem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let lb = b.coefficients_in(v).pop().expect("b nonzero");
    let n = a.nvars();
    let mut r = a.clone();
    let mut e = (a.degree_in(v) + 1).saturating_sub(db);
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).pop().expect("r nonzero");
        let shift = Polynomial::var(n, v).pow((dr - db) as u64);
        r = lb.mul(&r).sub(&lr.mul(&shift).mul(b));
        e = e.saturating_sub(1);
    }
    lb.pow(e as u64).mul(&r)
}

/// Squarefree part: `f / gcd(f, ∂f/∂x_1, …)` in characteristic zero.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    if f.is_constant() {
        return f.monic();
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        let d = f.derivative(i);
        if !d.is_zero() {
            g = gcd(&g, &d);
        }
    }
    f.exact_div(&g).expect("gcd divides").monic()
}
