use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// Newline-delimited JSON, one record per result
    Json,
}

#[derive(Clone, Copy, Debug)]
pub struct Output {
    pub format: Format,
}

impl Output {
    /// Prints `text` in text mode, or `record` as one JSON line.
    pub fn emit(&self, text: impl FnOnce() -> String, record: &impl Serialize) {
        let line = match self.format {
            Format::Text => text(),
            Format::Json => serde_json::to_string(record).expect("records serialize"),
        };
        let mut out = io::stdout().lock();
        // ignore closed pipes
        let _ = writeln!(out, "{line}");
    }

    /// Text-only lines such as table headers.
    pub fn text(&self, line: impl FnOnce() -> String) {
        if self.format == Format::Text {
            let _ = writeln!(io::stdout().lock(), "{}", line());
        }
    }
}
