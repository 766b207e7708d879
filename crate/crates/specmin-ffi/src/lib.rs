//! Placeholder, filled in by upcoming commits.
