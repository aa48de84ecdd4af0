//! Structural certification and the family claims harness.

mod claims;
mod planar;
mod sp;

pub use claims::{
    claimed_bound, identify_family, table_row, verify_family_claims, verify_graph, worst_scheme_rounds, Check,
    CheckSet, Claim, GraphCheckOptions, TableRow, Verdict, VerificationReport, Witness,
};
pub use planar::{planarity_check, verify_embedding, EmbeddingReport, NonPlanar, RotationSystem};
pub use sp::{find_sp_terminals, is_sp, SpVerdict};
