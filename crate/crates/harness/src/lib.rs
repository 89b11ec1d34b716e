//! Scenario files, certificates, random suites and oracle checks built on
//! `chernlab-core`.

pub mod certificate;
pub mod oracle;
pub mod primes;
pub mod random;
pub mod run;
pub mod scenario;
pub mod suite;

pub use certificate::{Certificate, Status};
pub use run::run_scenario;
pub use scenario::{LimitsSpec, Scenario};
