//! Closed-form Ramsey floors and ceilings, and random-coloring expectations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k)` exactly, or `None` if it does not fit in a `u128`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `ln C(n, k)`, finite for any `k <= n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

fn choose3(n: u64) -> u64 {
    binomial(n, 3).expect("C(n,3) fits in u128") as u64
}

/// Goodman's minimum number of monochromatic triangles in any red/blue
/// coloring of `K_n`, by the three residue cases of `n`.
pub fn goodman_min(n: u64) -> u64 {
    let n = n as u128;
    let v = if n.is_multiple_of(2) {
        let m = n / 2;
        if m < 2 {
            0
        } else {
            m * (m - 1) * (m - 2) / 3
        }
    } else if n % 4 == 1 {
        let m = (n - 1) / 4;
        if m == 0 {
            0
        } else {
            2 * m * (m - 1) * (4 * m + 1) / 3
        }
    } else {
        let m = (n - 3) / 4;
        2 * m * (m + 1) * (4 * m).saturating_sub(1) / 3
    };
    v as u64
}

/// Schwenk's form of the same floor:
/// `C(n,3) - floor(n/2 * floor((n-1)^2 / 4))`.
pub fn schwenk_forced(n: u64) -> u64 {
    if n < 3 {
        return 0;
    }
    let n128 = n as u128;
    let inner = (n128 - 1) * (n128 - 1) / 4;
    let removed = n128 * inner / 2;
    (choose3(n) as u128 - removed) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodmanBound {
    pub n: u64,
    pub total: u64,
    pub forced_count: u64,
    /// `forced_count / C(n, 3)`.
    pub forced_fraction: f64,
    /// Floorless approximation `1/4 - 3 / (4 (n - 2))`.
    pub approx_fraction: f64,
    /// `(n - 3) / (4 n)`.
    pub asymptotic_fraction: f64,
}

pub fn goodman_fraction(n: u64) -> Result<GoodmanBound> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "Goodman fraction needs n >= 3, got {n}"
        )));
    }
    let total = choose3(n);
    let forced = schwenk_forced(n);
    let nf = n as f64;
    Ok(GoodmanBound {
        n,
        total,
        forced_count: forced,
        forced_fraction: forced as f64 / total as f64,
        approx_fraction: 0.25 - 3.0 / (4.0 * (nf - 2.0)),
        asymptotic_fraction: (nf - 3.0) / (4.0 * nf),
    })
}

/// Thomason's upper bound `0.936 * 2^(1 - C(m, 2))` on the least achievable
/// fraction of monochromatic `K_m`.
pub fn thomason_bound(m: u32) -> Result<f64> {
    if m < 4 {
        return Err(Error::UnsupportedOrder(m as usize));
    }
    let edges = (m as i32) * (m as i32 - 1) / 2;
    Ok(0.936 * 2f64.powi(1 - edges))
}

/// Expected monochromatic `K_m` counts in a coloring where each edge is red
/// with probability `t` independently.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectationCurve {
    pub n: u64,
    pub m: u32,
    pub t: f64,
    pub expected_red: f64,
    pub expected_blue: f64,
    pub expected_mono: f64,
}

impl ExpectationCurve {
    /// Expected mono count as a fraction of `C(n, m)`.
    pub fn mono_fraction(&self) -> f64 {
        let total = ln_binomial(self.n, self.m as u64).exp();
        self.expected_mono / total
    }

    pub fn red_fraction(&self) -> f64 {
        self.expected_red / ln_binomial(self.n, self.m as u64).exp()
    }

    pub fn blue_fraction(&self) -> f64 {
        self.expected_blue / ln_binomial(self.n, self.m as u64).exp()
    }
}

pub fn expected_mono(n: u64, m: u32, t: f64) -> Result<ExpectationCurve> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidInput(format!(
            "probability {t} outside [0, 1]"
        )));
    }
    if m < 3 || n < m as u64 {
        return Err(Error::InvalidInput(format!(
            "expected_mono needs 3 <= m <= n, got n={n} m={m}"
        )));
    }
    let edges = (m * (m - 1) / 2) as i32;
    let count = |p: f64| -> f64 {
        if p == 0.0 {
            return 0.0;
        }
        match binomial(n, m as u64) {
            Some(c) if c < (1u128 << 53) => c as f64 * p.powi(edges),
            _ => (ln_binomial(n, m as u64) + edges as f64 * p.ln()).exp(),
        }
    };
    // Going through the larger of t and 1-t makes t and fl(1-t) produce
    // bit-identical mono totals.
    let hi = if t >= 0.5 { t } else { 1.0 - t };
    let lo = 1.0 - hi;
    let (red, blue) = if t >= 0.5 {
        (count(hi), count(lo))
    } else {
        (count(lo), count(hi))
    };
    Ok(ExpectationCurve {
        n,
        m,
        t,
        expected_red: red,
        expected_blue: blue,
        expected_mono: count(hi) + count(lo),
    })
}

/// Maps an integer threshold onto `[0, 1]` by its scale (the largest
/// threshold in a sweep, or the partner count for a top-k graph).
pub fn normalized_threshold(t: u64, scale: u64) -> f64 {
    t as f64 / scale as f64
}
