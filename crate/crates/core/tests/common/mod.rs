//! Brute-force oracles written straight from the definitions, sharing no code
//! with the library beyond table lookups.

#![allow(dead_code)]

use pregroup::{Elem, Pregroup};

pub fn oracle_bp(p: &Pregroup) -> Vec<Elem> {
    let all: Vec<Elem> = p.elements().collect();
    all.iter()
        .copied()
        .filter(|&b| all.iter().all(|&z| p.mul(z, b).is_some() && p.mul(b, z).is_some()))
        .collect()
}

/// Names of the axioms among P1–P6 that fail, by exhaustive quantification.
pub fn oracle_failing_axioms(p: &Pregroup) -> Vec<&'static str> {
    let all: Vec<Elem> = p.elements().collect();
    let one = p.identity();
    let bp = oracle_bp(p);
    let mut out = Vec::new();
    if !all.iter().all(|&u| p.mul(one, u) == Some(u) && p.mul(u, one) == Some(u)) {
        out.push("P1");
    }
    if !all.iter().all(|&u| p.mul(u, p.inv(u)) == Some(one) && p.mul(p.inv(u), u) == Some(one)) {
        out.push("P2");
    }
    let mut p3 = true;
    let mut p4 = true;
    let mut p5 = true;
    let mut p6 = true;
    for &u in &all {
        for &v in &all {
            if let Some(uv) = p.mul(u, v) {
                if p.mul(p.inv(v), p.inv(u)) != Some(p.inv(uv)) {
                    p3 = false;
                }
            }
            for &w in &all {
                let (Some(uv), Some(vw)) = (p.mul(u, v), p.mul(v, w)) else {
                    continue;
                };
                let left = p.mul(uv, w);
                let right = p.mul(u, vw);
                if left != right {
                    p4 = false;
                }
                let uvw = left.or(right);
                for &z in &all {
                    if let Some(wz) = p.mul(w, z) {
                        let vwz = p.mul(vw, z).or(p.mul(v, wz));
                        if uvw.is_none() && vwz.is_none() {
                            p5 = false;
                        }
                    }
                }
            }
        }
    }
    // P6: xa and a⁻¹y defined with xy undefined forces a ∈ B_P
    for &x in &all {
        for &a in &all {
            for &y in &all {
                if p.mul(x, a).is_some() && p.mul(p.inv(a), y).is_some() && p.mul(x, y).is_none() && !bp.contains(&a) {
                    p6 = false;
                }
            }
        }
    }
    for (ok, name) in [(p3, "P3"), (p4, "P4"), (p5, "P5"), (p6, "P6")] {
        if !ok {
            out.push(name);
        }
    }
    out
}

/// Reduce by merging the leftmost defined adjacent pair until none remains.
pub fn naive_reduce(p: &Pregroup, w: &[Elem]) -> Vec<Elem> {
    let mut w = w.to_vec();
    'outer: loop {
        for i in 0..w.len().saturating_sub(1) {
            if let Some(z) = p.mul(w[i], w[i + 1]) {
                w.splice(i..i + 2, [z]);
                continue 'outer;
            }
        }
        break;
    }
    if w.len() > 1 {
        w.retain(|&x| !p.is_identity(x));
    }
    if w.is_empty() {
        w.push(p.identity());
    }
    w
}

/// `S3` as permutations of three points: `r = (0 1 2)`, `f = (1 2)`, with
/// products composed right-to-left.
pub struct S3Perm;

pub type Perm = [u8; 3];

impl S3Perm {
    pub fn compose(a: Perm, b: Perm) -> Perm {
        [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
    }

    pub fn of_name(name: &str) -> Perm {
        let id = [0, 1, 2];
        let r = [1, 2, 0];
        let f = [0, 2, 1];
        let r2 = Self::compose(r, r);
        match name {
            "1" => id,
            "r" => r,
            "r2" => r2,
            "f" => f,
            "rf" => Self::compose(r, f),
            "r2f" => Self::compose(r2, f),
            _ => panic!("not an S3 name: {name}"),
        }
    }
}
