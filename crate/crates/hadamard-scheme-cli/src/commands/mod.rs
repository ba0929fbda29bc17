pub mod dense;
pub mod hadamard;
pub mod nomura;
pub mod params;
pub mod sturm;
