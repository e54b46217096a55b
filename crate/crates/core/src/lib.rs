pub mod arith;
pub mod checks;
pub mod gradedmod;
pub mod hopf;
pub mod ideal;
pub mod k0;
pub mod linalg;
pub mod stable;
