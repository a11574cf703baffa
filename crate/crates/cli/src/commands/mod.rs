pub mod bounds;
pub mod figures;
pub mod measure;
pub mod verify;
pub mod welfare;
