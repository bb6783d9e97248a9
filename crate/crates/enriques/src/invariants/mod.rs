//! Enumerative invariants and the identities relating them.

mod dt;
mod fkm;
mod genus1;
mod gw;
mod record;
mod tables;

pub use dt::{
    dt_total, f_pt, toda_log_pt, vw, vw_closed_form, vw_modularity_check, ClosedFormDt, DtSource,
    PtSeries, SudokuDt, TableDt, ZeroDt,
};
pub use fkm::{
    dg2_transport_check, f_km_coefficient_direct, f_km_series, hecke_dependence_check,
    recognize_genus_form, DependenceReport,
};
pub use genus1::{
    genus1_product_check, genus1_recursion_check, genus1_recursion_sweep, RecursionReport,
};
pub use gw::{f_km, f_km_double_sum, f_km_raw, gwpt_bridge, km_n, n_small, nq, torsion_n_minus};
pub use record::{InvariantKind, InvariantRecord, RecordArgs, RecordValue, CSV_HEADER};
pub use tables::{a_coeffs, hilb_euler, omega_table, sigma_minus_one, HilbertEuler, OmegaTable};
