pub mod error;
pub mod oracle;
pub mod perm;
pub mod recurrence;
pub mod series;
pub mod verify;
