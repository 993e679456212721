//! Truncated multivariate series, the generating functions of homology-facet
//! shift vectors, the Master Theorem, and the binomial identities.

mod alignment;
mod generating;
mod identities;
mod master;
mod series;

pub use alignment::{
    check_alignment, check_g_counts, count_x_facets, AlignmentReport, AlignmentRow, GCountRow,
    SignConvention, DELTA_WINDOW, PINNED_DELTA,
};
pub use generating::{
    diagonal, series_g, series_p, series_p_closed, series_p_from_parts, series_xy,
    series_xy_closed, series_xy_from_p, xy_denominator,
};
pub use identities::{
    aigner_rhs, dixon_lhs, dixon_rhs, power_sum_lhs, three_f2_lhs, three_f2_rhs, verify_aigner,
    verify_alternating_binomial, verify_dixon, verify_three_f2, IdentityRow, IdentityTable,
};
pub use master::{
    det_i_minus_xa, determinant, master_theorem_check, row_product, vandermonde_diagonal,
    IntMatrix, MasterCheck,
};
pub use series::MSeries;
