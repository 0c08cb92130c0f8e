pub mod completions;
pub mod enriched;
pub mod fixtures;
pub mod filters;
pub mod flatness;
pub mod quantale;
pub mod text;
pub mod verify;
