//! Experiment runner (placeholder during bring-up).

/// Run with full argv (including program name); returns the exit code.
pub fn run<I: IntoIterator<Item = String>>(_argv: I) -> i32 {
    2
}
