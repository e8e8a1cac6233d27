use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Prints `value` as JSON, or the rendered text line(s) in text mode.
pub fn emit(format: Format, value: &Value, render: impl Fn(&Value) -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => println!("{}", render(value)),
    }
}
