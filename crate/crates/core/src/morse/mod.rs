//! The height function `d(Z, ·)` on an apartment patch: horizontal
//! simplices, their minimal faces and depths, the subdivision along
//! horizontal simplices and descending links.

mod height;
mod registry;
mod subdivision;

pub use height::{
    classify_horizontal, down_up_sets, edge_check, height_and_gradient, split_link, split_link_by, DownUp, EdgeReport, HeightTable,
    Horizontality, LinkSplit,
};
pub use registry::{build_registry, nonempty_faces, HorizontalRegistry};
pub use subdivision::{
    descending_link, descending_link_available, filtration_check, filtration_stage, order_complex, sub_morse, subdivide, DescendingLink,
    DescendingLinkParts, FiltrationReport, SubMorseValue, SubdividedComplex,
};
