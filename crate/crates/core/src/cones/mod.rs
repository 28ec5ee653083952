//! Exact rational polyhedral cones: conversions between facet and ray
//! descriptions, membership with certificates, the 2x2-minor cone of a
//! moment matrix and the closed-form clique and star cones.

pub mod cone;
pub mod dd;
pub mod lp;

pub use cone::{
    binomial_membership, clique_trop_cone, facets_from_rays, minor_cone, minor_is_symbolically_zero, project_cone,
    rays_from_facets, representations_agree, star_trop_cone, RationalCone, DIMENSION_CAP,
};
pub use lp::{cone_member, cone_member_int, MembershipResult};
