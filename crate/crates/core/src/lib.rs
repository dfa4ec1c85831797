pub mod bitangent;
pub mod fields;
pub mod kummer;
pub mod linalg;
pub mod projgeom;
pub mod quartic_curves;
pub mod scan;
pub mod poly;
