//! Acceptance suite for the apollonia workspace. The checks live in
//! `tests/acceptance.rs`; this crate has no API of its own.
