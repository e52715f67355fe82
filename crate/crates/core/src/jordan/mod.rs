//! The special-Jordan-algebra identity templates, their numeric verification
//! on arbitrary matrices, and their symbolic instantiation with catalog
//! matrices to mechanically derive scalar sequence identities.
//!
//! Each template is an equality of expression trees over three matrix slots
//! `a`, `b`, `c` and integer exponent parameters `n`, `m`, `l`, built from
//! powers, the Jordan product, the ternary product, integer scaling, and
//! addition. Numeric checking powers the slot matrices directly; symbolic
//! instantiation replaces powered slots by their catalog closed forms with
//! sequence-call entries and reads one scalar identity off each matrix
//! entry.

mod derive;
mod numeric;
mod symbolic;
mod template;

pub use derive::{derive_report, instantiate_symbolic, Assignment, DeriveEntry, DeriveReport, SlotValue};
pub use numeric::{template_check_numeric, NumericVerdict};
pub use symbolic::{literal_matrix, seq_expr_eval, symbolic_power, JordanError, LiteralMatrix, SeqExpr};
pub use template::{all_templates, template_by_id, JordanTemplate, Slot, TExpr};
