//! Extensions: `Ext^1` spaces, short exact sequences and universal extensions.

mod ext;
mod ses;
mod universal;

pub use ext::{ext1, Ext1Space, ExtMode};
pub use ses::ShortExact;
pub use universal::{df_truncation_algebra, universal_extension, DfTruncation, EndAlgebra, UniversalExtension};
