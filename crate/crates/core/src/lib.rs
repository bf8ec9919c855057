pub mod charclass;
pub mod cherednik;
pub mod cli;
pub mod cyclo;
pub mod group;
pub mod hochschild;
pub mod io;
pub mod strata;
