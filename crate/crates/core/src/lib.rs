//! Compiles finitely presented groups over `Z₂` into binary linear system games
//! through the wagon-wheel hypergraph, and checks the supporting calculus of
//! hypergraph morphisms, retracts, constellations, and planar pictures.

pub mod dot;
pub mod fixtures;
pub mod game;
pub mod gf2;
pub mod hypergraph;
pub mod passes;
pub mod picture;
pub mod presentation;
pub mod wagonwheel;

pub use hypergraph::{GeneralizedMorphism, Hypergraph, Subhypergraph, VertexLabelling};
pub use presentation::{FreeWord, Generators, InvPresentation, InvWord, Letter, Presentation};
pub use wagonwheel::{build_wagon_wheel, WagonWheel};
