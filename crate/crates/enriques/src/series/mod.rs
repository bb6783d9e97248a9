//! Exact sparse series arithmetic: q-series, Laurent polynomials in `p`,
//! two-variable `(p, q)` series, z-series and periodic pole tokens.

mod jqseries;
mod plaurent;
mod pole;
mod qseries;
mod zseries;

pub use jqseries::JQSeries;
pub(crate) use jqseries::BinomialProduct;
pub use plaurent::PLaurent;
pub use pole::PoleToken;
pub use qseries::{euler_product, QSeries};
pub use zseries::{plaurent_to_zseries, zseries_extract_genus, GenusTable, ZSeries};
