pub mod analysis;
pub mod rgcmd;
pub mod survey;
pub mod sweep;
pub mod validate;
