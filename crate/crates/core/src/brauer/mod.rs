//! The walled Brauer algebra `B_{n,m}(d)`: diagrams, their matrix
//! realization as partially transposed permutations, and the Bratteli lattice
//! of mixed irrep labels.

mod bratteli;
mod diagram;
mod operator;

pub use bratteli::{bratteli_lattice, BratteliLattice};
pub use diagram::{Endpoint, Row, ScaledDiagram, WalledBrauerDiagram};
pub use operator::{
    check_commutant, check_generator_relations, diagram_to_operator, generator, homomorphism_check, mixed_action,
    transposition, Generator, RelationReport, RelationResidual,
};
