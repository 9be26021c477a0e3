use std::ops::AddAssign;

/// Raw work and overhead counters of one solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunMetrics {
    /// Distinct paths extended: a vertex counts again only when it is
    /// extended with a distance different from its previous extension.
    pub extended_paths: u64,
    /// Barriers between relaxation rounds. A fused batch of rounds and a
    /// pull phase each count once.
    pub synchronizations: u64,
    /// Arcs examined for relaxation plus arcs carrying a pull request.
    pub traversals: u64,
    pub relax_attempts: u64,
    pub relax_successes: u64,
    /// Distance bands processed.
    pub steps: u64,
}

impl AddAssign for RunMetrics {
    fn add_assign(&mut self, rhs: Self) {
        self.extended_paths += rhs.extended_paths;
        self.synchronizations += rhs.synchronizations;
        self.traversals += rhs.traversals;
        self.relax_attempts += rhs.relax_attempts;
        self.relax_successes += rhs.relax_successes;
        self.steps += rhs.steps;
    }
}
