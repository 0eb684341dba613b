//! Closed-form and non-polynomial Hermite-function solutions of the radial
//! Schrodinger equation for the sextic oscillator, obtained through the
//! bi-confluent Heun equation, with bound-state curve tracing, a
//! quasi-exactly-solvable (QES) cross-check, and an independent Numerov
//! integrator for verification.

pub mod cli;
pub mod heun_core;
pub mod oracle;
pub mod qes;
pub mod specfun;
pub mod spectrum;
