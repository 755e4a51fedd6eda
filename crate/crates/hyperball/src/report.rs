//! Artifact export.
