//! Bases and regular suborbits of groups in product action.

mod formula;
mod general;
mod pairs;
mod structural;

pub use formula::{
    analyze_wreath, bc_predict, binomial, r_wreath_cyclic_prime, r_wreath_formula,
    r_wreath_symmetric, unique_regular_suborbit_test, BcPrediction, BcVerdict, PrimitiveCase,
    UniquenessReport, WreathAnalysis,
};
pub use general::{direct_base_two_witness, sufficient_base2_general, Base2Certificate, Verdict};
pub use pairs::{
    product_base_pair_test, r_wreath_brute, wreath_point_stabilizer, PairOrbitTable,
    MAX_PAIR_TABLE,
};
pub use structural::{structural_checks, StructuralCheck, StructuralReport};
