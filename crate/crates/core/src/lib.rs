//! Exact-arithmetic toolkit for building self-orthogonal linear codes from
//! vectorial dual-bent functions over finite fields.
//!
//! The pipeline: [`galois`] provides `F_{p^n}` towers and product spaces,
//! [`cyclotomic`] the ring `Z[zeta_p]` that holds Walsh values, [`spectral`]
//! computes Walsh spectra and certifies bentness and the structural
//! conditions the code theorems need, [`catalog`] constructs the explicit
//! function families, [`codes`] enumerates defining-set codes and their exact
//! weight distributions, [`predict`] evaluates the closed-form weight
//! distributions to compare against enumeration, [`charsums`] pairs
//! character-sum closed forms with brute-force oracles, and [`derived`]
//! produces LCD codes, quantum code parameters and sphere-packing verdicts.

pub mod catalog;
pub mod charsums;
pub mod codes;
pub mod cyclotomic;
pub mod derived;
pub mod galois;
pub mod predict;
pub mod report;
pub mod spectral;
