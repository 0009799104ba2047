pub mod args;
pub mod record;
pub mod run;
