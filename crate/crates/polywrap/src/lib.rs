//! Polygonal wraps of planar point sets.
//!
//! A *polygonal wrap* is a closed index sequence over a point set that may
//! revisit points (double contacts) but never properly crosses itself. Two
//! atomic moves, *stretch* and *twang*, walk between wraps; a stretch plus a
//! twang cascade maps a simple polygonization to another one (a *forward
//! move*), and every forward move can be undone by a journaled sequence of
//! reverse stretches and twangs. On top of the move calculus sit pocket
//! analysis, pocket reduction, canonical polygonization, and the full
//! polygonization-to-polygonization transform, plus instance generators and
//! a brute-force enumeration oracle for verification.

pub mod geom;
pub mod instances;
pub mod io;
pub mod moves;
pub mod observe;
pub mod pockets;
pub mod transforms;
pub mod walks;
pub mod wrap;

pub use geom::{GeomError, GeometryStats, Orientation, Point, PointSet, RationalPoint};
pub use moves::{CascadePolicy, Journal, MoveEngine, MoveError, MoveEvent};
pub use observe::CheckLevel;
pub use wrap::{Polygonization, Wrap, WeakSimplicity};
