pub mod dense;
pub mod oracle;
