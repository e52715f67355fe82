//! The catalog of named matrix families, their closed-form powers, and the
//! scalar sequences they give rise to.
//!
//! Closed forms are shipped in two variants where they disagree with direct
//! computation: `predicted_power` is the computation-verified form, and
//! `verbatim_power` preserves the originally printed form so its mismatch
//! can be asserted rather than silently papered over. See
//! `docs/CORRECTIONS.md` for the list.

mod bfile;
mod family;
mod seq;

pub use bfile::{oeis_crosscheck, parse_bfile, BfileData, BfileError, CrosscheckVerdict};
pub use family::{
    closedform_check, g2_jacobsthal_display, sk_square_display, ClosedFormEntry, ClosedFormReport,
    FamilyError, FamilyKind, MatrixFamily, Mismatch,
};
pub use seq::{builtin_by_name, h_value, SeqError, SeqKind, SeqMemo, SequenceDef};
