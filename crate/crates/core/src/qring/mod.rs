//! Big and small quantum cohomology rings, presentations and
//! fixed-point numbers.

mod big;
mod fixed_points;
mod grassmannian;
mod presentation;
mod small;

pub use big::{big_associator, big_product, presentation_from_big, vanishes, BigElement, BigRing, CubicRelation};
pub use fixed_points::fixed_points_number;
pub use grassmannian::{grassmannian_presentation, s_r_determinant, Grassmannian};
pub use presentation::{check_pr_small_ring, pr_presentation, PrCheck, PresentationIdeal};
pub use small::{small_ring, SmallElement, SmallRing};
