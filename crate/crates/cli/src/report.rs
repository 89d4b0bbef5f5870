//! Command reports in the section format or as flat `key=value` lines.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Kv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub item: String,
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, item: &str) -> Self {
        Report {
            command: command.to_string(),
            item: item.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                if self.item.is_empty() {
                    let _ = writeln!(out, "[{}]", self.command);
                } else {
                    let _ = writeln!(out, "[{} {}]", self.command, self.item);
                }
                for (k, v) in &self.entries {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
            Format::Kv => {
                let _ = writeln!(out, "command={}", self.command);
                if !self.item.is_empty() {
                    let _ = writeln!(out, "item={}", self.item);
                }
                for (k, v) in &self.entries {
                    let _ = writeln!(out, "{}={v}", k.replace(' ', "-"));
                }
            }
        }
        out
    }
}
