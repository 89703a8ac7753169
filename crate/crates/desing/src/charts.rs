//! Affine charts of iterated blowups along coordinate subspaces.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, Ideal, Polynomial, Rational, Ring};

/// Ring automorphism used to turn a smooth hypersurface into a coordinate.
#[derive(Debug, Clone, PartialEq)]
pub enum CoordinateChange {
    /// `x ↦ A x + t`.
    AffineLinear { matrix: Vec<Vec<Rational>>, translation: Vec<Rational> },
    /// `x_target ↦ scale · x_target + shift`, with `shift` free of `x_target`.
    Triangular { target: usize, scale: Rational, shift: Polynomial },
}

impl CoordinateChange {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            CoordinateChange::AffineLinear { matrix, translation } => {
                if matrix.len() != n || translation.len() != n || matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::Arity { expected: n, got: matrix.len() });
                }
                if determinant(matrix).is_zero() {
                    return Err(Error::NonInvertible);
                }
                Ok(())
            }
            CoordinateChange::Triangular { target, scale, shift } => {
                if *target >= n {
                    return Err(Error::InvalidIndex(*target, n));
                }
                if scale.is_zero() || shift.uses_var(*target) {
                    return Err(Error::NonInvertible);
                }
                Ok(())
            }
        }
    }

    /// Images of the variables.
    pub fn images(&self, n: usize) -> Vec<Polynomial> {
        match self {
            CoordinateChange::AffineLinear { matrix, translation } => (0..n)
                .map(|i| {
                    let mut p = Polynomial::constant(n, translation[i].clone());
                    for (j, a) in matrix[i].iter().enumerate() {
                        p = p.add(&Polynomial::var(n, j).scale(a));
                    }
                    p
                })
                .collect(),
            CoordinateChange::Triangular { target, scale, shift } => (0..n)
                .map(|i| {
                    if i == *target {
                        Polynomial::var(n, i).scale(scale).add(shift)
                    } else {
                        Polynomial::var(n, i)
                    }
                })
                .collect(),
        }
    }

    pub fn inverse(&self, n: usize) -> Result<CoordinateChange> {
        self.validate(n)?;
        Ok(match self {
            CoordinateChange::AffineLinear { matrix, translation } => {
                let inv = invert(matrix).ok_or(Error::NonInvertible)?;
                let t: Vec<Rational> = (0..n)
                    .map(|i| -(0..n).map(|j| &inv[i][j] * &translation[j]).fold(Rational::zero(), |a, b| a + b))
                    .collect();
                CoordinateChange::AffineLinear { matrix: inv, translation: t }
            }
            CoordinateChange::Triangular { target, scale, shift } => {
                let s = scale.recip();
                CoordinateChange::Triangular { target: *target, scale: s.clone(), shift: shift.scale(&(-s)) }
            }
        })
    }

    pub fn describe(&self, ring: &Ring) -> String {
        let n = ring.dim();
        let images = self.images(n);
        let parts: Vec<String> = (0..n)
            .filter(|&i| images[i] != Polynomial::var(n, i))
            .map(|i| format!("{} -> {}", ring.name(i), images[i].format(ring)))
            .collect();
        if parts.is_empty() {
            "identity".into()
        } else {
            parts.join(", ")
        }
    }
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    det
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let piv = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] / &piv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A registered exceptional (or initial boundary) hyperplane `{x_var = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub label: usize,
    pub var: usize,
    pub birth: usize,
}

/// One step of a chart's substitution trail.
#[derive(Debug, Clone, PartialEq)]
pub enum TrailEntry {
    /// Chart `m` of the blowup along the coordinates `center`.
    Blowup { center: Vec<usize>, chart_var: usize },
    Change(CoordinateChange),
}

impl TrailEntry {
    pub fn describe(&self, ring: &Ring) -> String {
        match self {
            TrailEntry::Blowup { center, chart_var } => {
                let parts: Vec<String> = center
                    .iter()
                    .filter(|&&j| j != *chart_var)
                    .map(|&j| format!("{} -> {}*{}", ring.name(j), ring.name(*chart_var), ring.name(j)))
                    .collect();
                if parts.is_empty() {
                    "identity".into()
                } else {
                    parts.join(", ")
                }
            }
            TrailEntry::Change(c) => c.describe(ring),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub id: usize,
    pub parent: Option<usize>,
    /// Variable whose chart this is in the parent's blowup.
    pub branch: Option<usize>,
    /// Index of the ambient space this chart belongs to.
    pub stage: usize,
    pub nvars: usize,
    pub trail: Vec<TrailEntry>,
    pub divisors: Vec<Divisor>,
    /// Maximal-contact coordinates, outermost first.
    pub flag: Vec<usize>,
}

impl Chart {
    pub fn root(nvars: usize, boundary: &[usize]) -> Chart {
        let divisors = boundary
            .iter()
            .enumerate()
            .map(|(k, &v)| Divisor { label: k + 1, var: v, birth: 0 })
            .collect();
        Chart { id: 0, parent: None, branch: None, stage: 0, nvars, trail: Vec::new(), divisors, flag: Vec::new() }
    }

    pub fn divisor_at(&self, var: usize) -> Option<&Divisor> {
        self.divisors.iter().find(|d| d.var == var)
    }

    pub fn divisor(&self, label: usize) -> Option<&Divisor> {
        self.divisors.iter().find(|d| d.label == label)
    }

    pub fn is_exceptional_var(&self, var: usize) -> bool {
        self.divisor_at(var).is_some()
    }
}

/// Images `x_j ↦ x_m x_j` for `j ∈ M \ {m}`.
pub fn blowup_images(n: usize, center: &[usize], m: usize) -> Vec<Polynomial> {
    (0..n)
        .map(|j| {
            if j != m && center.contains(&j) {
                Polynomial::var(n, m).mul(&Polynomial::var(n, j))
            } else {
                Polynomial::var(n, j)
            }
        })
        .collect()
}

/// Fate of a coordinate hyperplane `{x_j = 0}` in chart `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperplaneFate {
    Kept(usize),
    BecameExceptional,
}

pub fn strict_transform_hyperplane(j: usize, center: &[usize], m: usize) -> HyperplaneFate {
    if j == m && center.contains(&j) {
        HyperplaneFate::BecameExceptional
    } else {
        HyperplaneFate::Kept(j)
    }
}

/// One child chart per center coordinate. The new divisor `{x_m = 0}` gets
/// `label` and birth `stage + 1`; a divisor whose hyperplane becomes the
/// exceptional one leaves the chart (this is the relabeling when |M| = 1).
pub fn blowup_coordinate_center(
    chart: &Chart,
    center: &[usize],
    stage: usize,
    label: usize,
    first_id: usize,
) -> Result<Vec<Chart>> {
    if center.is_empty() {
        return Err(Error::Invalid("empty center".into()));
    }
    if let Some(&bad) = center.iter().find(|&&v| v >= chart.nvars) {
        return Err(Error::InvalidIndex(bad, chart.nvars));
    }
    let mut out = Vec::with_capacity(center.len());
    for (k, &m) in center.iter().enumerate() {
        let mut divisors: Vec<Divisor> = chart
            .divisors
            .iter()
            .filter(|d| strict_transform_hyperplane(d.var, center, m) != HyperplaneFate::BecameExceptional)
            .cloned()
            .collect();
        divisors.push(Divisor { label, var: m, birth: stage + 1 });
        divisors.sort_by_key(|d| d.label);
        let flag = chart.flag.iter().take_while(|&&f| f != m).cloned().collect();
        out.push(Chart {
            id: first_id + k,
            parent: Some(chart.id),
            branch: Some(m),
            stage: stage + 1,
            nvars: chart.nvars,
            trail: vec![TrailEntry::Blowup { center: center.to_vec(), chart_var: m }],
            divisors,
            flag,
        });
    }
    Ok(out)
}

/// Pulled-back ideal divided by `x_exc^b`, generator by generator.
pub fn controlled_transform(pulled_back: &Ideal, b: u64, exc: usize) -> Result<Ideal> {
    let k = u32::try_from(b).map_err(|_| Error::NotDivisible(b))?;
    pulled_back.div_var_power(exc, k).ok_or(Error::NotDivisible(b))
}

/// Divides out every listed coordinate to its full valuation.
pub fn weak_transform_extract(ideal: &Ideal, excs: &[(usize, usize)]) -> Result<(Ideal, Vec<(usize, u32)>)> {
    let mut cur = ideal.clone();
    let mut mults = Vec::with_capacity(excs.len());
    for &(label, var) in excs {
        let a = cur.coordinate_valuation(var)?;
        if a > 0 {
            cur = cur.div_var_power(var, a).expect("valuation divides");
        }
        mults.push((label, a));
    }
    Ok((cur, mults))
}

/// Rewrites the ideals through the automorphism and records it.
pub fn apply_coordinate_change(chart: &Chart, change: &CoordinateChange, ideals: &[Ideal]) -> Result<(Chart, Vec<Ideal>)> {
    change.validate(chart.nvars)?;
    let images = change.images(chart.nvars);
    let out = ideals.iter().map(|i| i.substitute(&images)).collect::<Result<Vec<_>>>()?;
    let mut next = chart.clone();
    next.trail.push(TrailEntry::Change(change.clone()));
    Ok((next, out))
}

pub fn describe_rational(q: &Rational) -> String {
    format_rational(q)
}
