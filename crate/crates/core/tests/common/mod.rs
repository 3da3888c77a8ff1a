//! Shared test helpers. The oracle here is written straight from the three
//! defining conditions and shares no code with the library.

#![allow(dead_code)]

pub mod oracle;
