//! Compensated (Kahan) accumulation, used by every series evaluator so that
//! the certified truncation bounds are not drowned by rounding.

use crate::scalar::Field;

#[derive(Debug, Clone, Copy)]
pub struct Compensated<F: Field> {
    sum: F,
    carry: F,
}

impl<F: Field> Compensated<F> {
    pub fn new() -> Self {
        Self {
            sum: F::zero(),
            carry: F::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: F) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> F {
        self.sum
    }
}

impl<F: Field> Default for Compensated<F> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_bits() {
        // 1 + 1e-16 repeated: naive f64 accumulation stays at 1.0 per step.
        let mut acc = Compensated::<f64>::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-13);
    }

    #[test]
    fn matches_exact_small_sum() {
        let mut acc = Compensated::<f64>::new();
        for k in 1..=100 {
            acc.add(k as f64);
        }
        assert_eq!(acc.value(), 5050.0);
    }
}
