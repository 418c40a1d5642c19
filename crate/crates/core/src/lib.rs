//! Exact arithmetic for the representation ring image of a split simple
//! group modulo its defining ideal, and the filtration of that ring induced
//! by an index assignment on the character class group.
//!
//! The pipeline: a root system and isogeny give a finite class group A with
//! one distinguished class per fundamental weight ([`root_system`]); the
//! integral group ring Z[A] modulo the ideal spanned by translates of
//! d_i (1 - e^{omega_bar_i}) is the ring of interest ([`k0`]); an index
//! assignment on A filters it by subgroups generated by binomial difference
//! powers ([`filtration`]); explicit torsion witnesses certify nontrivial
//! quotients ([`witness`]). Everything is exact: integer matrices in Hermite
//! and Smith normal form do all quotient bookkeeping ([`matrix`],
//! [`lattice`]).

pub mod abelian;
pub mod error;
pub mod filtration;
pub mod group_ring;
pub mod k0;
pub mod lattice;
pub mod matrix;
pub mod root_system;
pub mod witness;

pub use abelian::{AbElt, FinAb, QuotientMap};
pub use error::{Error, Result};
pub use filtration::{
    compare_modes, index_summary, split_filtration, twisted_filtration, BasicFactor, ClosureMode,
    Filtration, IndexAssignment, ModeComparison,
};
pub use group_ring::{GroupRing, RingElt};
pub use k0::{K0Ring, Presentation};
pub use lattice::{Lattice, QuotientShape};
pub use matrix::{hnf_rows, smith_normal_form, IntMat, Smith};
pub use root_system::{
    cartan_matrix, character_quotient, fundamental_group, orbit_size, positive_coroots,
    weyl_dimension, CharacterQuotient, IsogenySpec, RootSystemSpec, Series,
};
pub use witness::{
    chern_root, e7_special_cycle_check, hspin_witness, quadratic_pushforward, E7CycleCheck,
    HspinWitness, NamedCheck,
};
