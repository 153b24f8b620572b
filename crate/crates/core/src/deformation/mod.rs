//! Collections, the categories `Ex_k`, Gabriel products, and deformations of
//! a collection as flat A-objects.

mod collection;
mod ff;
mod gabriel;
mod laudal;
mod membership;

pub use collection::{is_simple_collection, Collection, SimpleVerdict};
pub use ff::{ff_criterion, FfVerdict};
pub use gabriel::{all_subreps, all_subspaces, gabriel_associativity_check, AssociativityReport, ModuleClass};
pub use laudal::{ncdef_enumerate, LaudalSpace, NcDefEnumeration, Orbit, ParamBlock};
pub use membership::{ex_membership, in_additive_closure, Layer, MembershipCertificate};
