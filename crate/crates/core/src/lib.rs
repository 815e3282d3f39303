pub mod bounds;
pub mod code;
pub mod error;
pub mod format;
pub mod largeset;
pub mod lex;
pub mod oracle;
pub mod pipeline;
pub mod sequence;
pub mod shorten;
