#![allow(dead_code)]

use std::f64::consts::PI;

use buoyancy::bases::{ratio_to_f64 as to_f64, Exact};
use num_traits::Zero;

pub fn classical(a2: f64) -> f64 {
    (PI * PI + a2).powi(3) / a2
}

pub const CLASSICAL_CRITICAL_A2: f64 = PI * PI / 2.0;

pub fn classical_critical_r2() -> f64 {
    27.0 * PI.powi(4) / 4.0
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Drops trailing zeros so power series of different stored lengths compare.
pub fn trim(p: &[Exact]) -> Vec<Exact> {
    let mut v = p.to_vec();
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn mul(a: &[Exact], b: &[Exact]) -> Vec<Exact> {
    let mut out = vec![Exact::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    out
}

pub fn sub(a: &[Exact], b: &[Exact]) -> Vec<Exact> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).copied().unwrap_or_else(Exact::zero)
                - b.get(i).copied().unwrap_or_else(Exact::zero)
        })
        .collect()
}

pub fn eval_exact(p: &[Exact], z: Exact) -> Exact {
    p.iter().rev().fold(Exact::zero(), |acc, c| acc * z + *c)
}

pub fn exact_to_f64(x: Exact) -> f64 {
    to_f64(&x)
}
