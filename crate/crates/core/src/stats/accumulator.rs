use super::LogNumber;

/// Running mean at one point of a sample stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub count: u64,
    pub mean: LogNumber,
}

impl Snapshot {
    fn pool(self, other: Snapshot) -> Snapshot {
        let count = self.count + other.count;
        if count == 0 {
            return Snapshot { count, mean: LogNumber::ZERO };
        }
        let total = LogNumber::from_u64(count);
        let mean = self.mean * LogNumber::from_u64(self.count) / total
            + other.mean * LogNumber::from_u64(other.count) / total;
        Snapshot { count, mean }
    }
}

/// Streaming mean and variance of nonnegative samples, kept in log space.
///
/// Updates follow Welford's recurrence (`mean`, `m2`) with signed log
/// arithmetic, and two accumulators combine with Chan's pairwise formula.
/// With a nonzero cadence the running mean is recorded every `cadence`
/// pushes for convergence checks and traces.
#[derive(Debug, Clone, Default)]
pub struct SampleAccumulator {
    count: u64,
    mean: LogNumber,
    m2: LogNumber,
    cadence: u64,
    history: Vec<Snapshot>,
}

impl SampleAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Accumulator that snapshots its running mean every `cadence` pushes.
    pub fn with_cadence(cadence: u64) -> Self {
        SampleAccumulator { cadence, ..Self::default() }
    }

    /// Adds one sample. Samples must be nonnegative.
    pub fn push(&mut self, x: LogNumber) {
        debug_assert!(x.sign() >= 0, "samples are magnitudes");
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / LogNumber::from_u64(self.count);
        self.m2 += delta * (x - self.mean);
        if self.cadence > 0 && self.count.is_multiple_of(self.cadence) {
            self.history.push(Snapshot { count: self.count, mean: self.mean });
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> LogNumber {
        self.mean
    }

    /// Running sum of the samples.
    pub fn sum(&self) -> LogNumber {
        self.mean * LogNumber::from_u64(self.count)
    }

    /// Unbiased sample variance; zero with fewer than two samples.
    pub fn variance(&self) -> LogNumber {
        if self.count < 2 {
            return LogNumber::ZERO;
        }
        // Rounding can leave a tiny negative m2 for near-constant streams.
        if self.m2.sign() < 0 {
            return LogNumber::ZERO;
        }
        self.m2 / LogNumber::from_u64(self.count - 1)
    }

    pub fn history(&self) -> &[Snapshot] {
        &self.history
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot { count: self.count, mean: self.mean }
    }

    /// Combines two independent streams.
    ///
    /// Histories are pooled index by index; where one history is shorter its
    /// final state stands in for the missing snapshots.
    pub fn merge(&self, other: &SampleAccumulator) -> SampleAccumulator {
        let count = self.count + other.count;
        let (mean, m2) = if self.count == 0 {
            (other.mean, other.m2)
        } else if other.count == 0 {
            (self.mean, self.m2)
        } else {
            let total = LogNumber::from_u64(count);
            let na = LogNumber::from_u64(self.count);
            let nb = LogNumber::from_u64(other.count);
            let delta = other.mean - self.mean;
            let mean = self.mean + delta * nb / total;
            let m2 = self.m2 + other.m2 + delta * delta * na * nb / total;
            (mean, m2)
        };
        let len = self.history.len().max(other.history.len());
        let history = (0..len)
            .map(|i| {
                let a = self.history.get(i).copied().unwrap_or_else(|| self.snapshot());
                let b = other.history.get(i).copied().unwrap_or_else(|| other.snapshot());
                a.pool(b)
            })
            .collect();
        SampleAccumulator { count, mean, m2, cadence: self.cadence.max(other.cadence), history }
    }
}
