//! Witt groups `W₀(P)`: invariants, classes, natural descriptions and `GW₀`.

mod class;
mod gw;
mod invariants;
mod natural;
mod tensor_part;

pub use class::{
    e8_rows, indec_generator_forms, indec_orders, pushforward_witt_map, split_components, split_witt_map, witt_class,
    witt_group, IndecPart, WittClass, WittGroupDescription,
};
pub use gw::{gw_class, gw_group, metabolic_verdict, GWClass, GWGroupDescription, GWImage, MetabolicVerdict, Metabolicity};
pub use invariants::{arf, rho, rho_with_lift, RhoData};
pub use natural::{
    check_lambda_kernel, check_sigma_image, eql_hom, eql_witt, es_hom, es_witt, has_order_two_section,
    induced_witt_map, lambda_diagram, lambda_quotient, sigma_diagram, sigma_subgroup, DiagramReport, LambdaQuotient,
    SigmaSubgroup,
};
pub use tensor_part::{f_invariant, gamma_form};
