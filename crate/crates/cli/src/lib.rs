//! Library surface of the zetaval command-line tool: input-document and
//! expression parsing, pipeline orchestration, report types, and the group
//! utility subcommands. The binary in main.rs is a thin argument-parsing
//! wrapper over these modules.

pub mod abgrp;
pub mod input;
pub mod pipeline;
pub mod report;
