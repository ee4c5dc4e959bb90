/// Compensated (Kahan) accumulator. Every real-valued sum in the crate runs
/// through one of these so different groupings of the same terms agree to
/// within ~1 ulp per term.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(self) -> f64 {
        self.sum
    }
}

/// True when r^u <= x, with overflow treated as "exceeds x".
fn pow_at_most(r: u64, u: u32, x: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..u {
        acc *= r as u128;
        if acc > x as u128 {
            return false;
        }
    }
    true
}

/// Largest r with r^u <= x (integer u-th root), exact for all u64 inputs.
pub(crate) fn floor_root(x: u64, u: u32) -> u64 {
    assert!(u >= 1);
    if u == 1 || x <= 1 {
        return x;
    }
    // Float estimate, then correct by at most a step or two of exact checks.
    let mut r = (x as f64).powf(1.0 / u as f64).round() as u64;
    r = r.max(1);
    while !pow_at_most(r, u, x) {
        r -= 1;
    }
    while pow_at_most(r + 1, u, x) {
        r += 1;
    }
    r
}
