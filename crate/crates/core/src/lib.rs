pub mod cards;
pub mod combinatorics;
pub mod counting;
pub mod decimal;
pub mod error;
pub mod matrices;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod reference;
pub mod report;
pub mod structure;
pub mod suites;
