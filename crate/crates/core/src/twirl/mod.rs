//! Haar averages over the anomalous unitary and the operators built from them.

mod choi;
mod hypothesis;
mod pattern;
mod weingarten;

pub use choi::{
    choi_average, choi_average_grouped, choi_two_anomalies_closed_form, grouped_to_device_major, identity_choi,
    perm_operator, projectors, vec_identity,
};
pub use hypothesis::{basis_factors, basis_operator_e, group_to_device_major, hypothesis_choi};
pub use pattern::AnomalyPattern;
pub use weingarten::{weingarten_table, WeingartenTable};
