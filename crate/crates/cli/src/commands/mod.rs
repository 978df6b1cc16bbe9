pub mod fixtrace;
pub mod lang;
pub mod laws;
