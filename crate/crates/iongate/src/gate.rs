//! Placeholder; filled in after the convention experiments.
