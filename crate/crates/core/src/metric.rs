//! Minkowski metric diag(+,-,-,-) and the Levi-Civita symbol.

/// g_{mu mu} (equal to g^{mu mu}).
pub fn g(mu: usize) -> i64 {
    if mu == 0 {
        1
    } else {
        -1
    }
}

/// g_{mu nu}.
pub fn g2(mu: usize, nu: usize) -> i64 {
    if mu == nu {
        g(mu)
    } else {
        0
    }
}

pub fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// epsilon_{ijk} for spatial indices 1..=3.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (1, 3, 2) | (3, 2, 1) | (2, 1, 3) => -1,
        _ => 0,
    }
}
