//! Acceptance harness only; see `tests/acceptance.rs`.
