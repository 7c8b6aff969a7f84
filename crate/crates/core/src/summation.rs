/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct NeumaierSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
    count: usize,
}

impl NeumaierSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
        self.count += 1;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Bound on the accumulated rounding of the compensated sum itself.
    pub(crate) fn rounding_bound(&self) -> f64 {
        let eps = f64::EPSILON;
        2.0 * eps * self.value().abs() + 4.0 * (self.count as f64) * eps * eps * self.abs_sum
    }
}
