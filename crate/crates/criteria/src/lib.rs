//! Acceptance criteria for the canram library live in `tests/acceptance.rs`.
