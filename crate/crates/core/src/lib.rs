//! Gordon-Litherland pairings for checkerboard colorable virtual links.
//!
//! The pipeline runs from a Gauss code through the Carter surface and its
//! two checkerboard colorings to Goeritz matrices and signature, determinant
//! and nullity invariants. Disk-band surfaces give an independent route to
//! the same invariants through their Gordon-Litherland forms.

pub mod carter;
pub mod coloring;
pub mod diskband;
pub mod exactmat;
pub mod gauss_io;
pub mod goeritz;
pub mod linkops;

pub use carter::SurfaceDiagram;
pub use coloring::{Color, Coloring, CrossingType};
pub use diskband::{BandEvent, DiskBandSurface, FramedVirtualLink};
pub use exactmat::{IntMatrix, MatrixError, SymMatrix};
pub use gauss_io::{GaussCode, Pass, Strand};
pub use goeritz::{Certificate, GoeritzForm, InvariantRecord, InvariantTriple};
