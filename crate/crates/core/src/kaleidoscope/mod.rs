//! Dihedral wedges, their unfolding into full arrangements, and generators.

mod expand;
mod family;
mod fixtures;
mod wedge;

pub use expand::{
    across, expand, ray_of, side_of_ray, BeamPath, ExpandError, ExpandedArrangement, LineClass,
    LineLabel, PathStep, VertexLabel,
};
pub use family::{family_wedge, FamilyError};
pub use fixtures::{gen_near_pencil, gen_pencil, gen_simple_cyclic, FixtureError};
pub use wedge::{
    parse_wedge, serialize_wedge, BeamSpec, BounceEvent, Side, WedgeError, WedgeParseError,
    WedgeParseErrorKind, WedgeSpec,
};
