pub mod bitset;
pub mod cli;
pub mod gf;
pub mod incidence;
pub mod projplane;
pub mod harmonic;
pub mod lifts;
pub mod rationals;
pub mod rectangle;
pub mod report;
pub mod suite;
