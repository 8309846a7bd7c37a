//! File formats, reports and the command-line front end for `wallscale-core`.

pub mod format;
pub mod oracle;
pub mod report;
pub mod synthspec;
