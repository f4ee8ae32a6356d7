//! Root systems, Weyl groups, weights and the fundamental alcove.

pub mod alcove;
pub mod cartan;
pub mod root_system;
pub mod weights;
pub mod weyl;

pub use alcove::AlcovePoint;
pub use cartan::{CartanType, Family};
pub use root_system::{Root, RootSystem};
pub use weights::dominant_weights_in_ball;
pub use weyl::{coset_representatives, for_each_weyl_element, weyl_elements, WeylElement, DEFAULT_WEYL_BUDGET};
