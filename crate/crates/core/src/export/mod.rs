//! Surface meshes, output documents and the formats written by the CLI.

mod document;
mod format;
mod mesh;
mod svg;

pub use document::{Document, DOCUMENT_SCHEMA_VERSION};
pub use format::{fnv1a64, format_g17};
pub use mesh::{
    MeshMetadata, MeshModel, SheetGrid, SurfaceMesh, Window, BRANCH_CONVENTION, CSV_HEADER, DEFAULT_RESOLUTION,
    MESH_SCHEMA_VERSION, TOOL_VERSION,
};
pub use svg::{render_svg, Component};

#[cfg(test)]
mod tests;
