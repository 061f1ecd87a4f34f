//! Machine-readable report envelope shared by every subcommand.

use std::time::Instant;

use serde::Serialize;

/// Version of the report layout; bumped on any breaking field change. The
/// published schema in schemas/report.schema.json pins this value.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// Envelope around one subcommand's result: what ran, with which inputs
/// and seeds, what came out, and how long it took.
#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: serde_json::Value,
    pub result: T,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct Timing {
    pub wall_ms: f64,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, inputs: serde_json::Value, result: T, start: Instant) -> Self {
        // Timing is the one field repeated runs disagree on; the
        // RAINBOW_FIXED_TIMING environment variable pins it to zero so
        // reports can be compared byte for byte.
        let wall_ms = if std::env::var_os("RAINBOW_FIXED_TIMING").is_some() {
            0.0
        } else {
            start.elapsed().as_secs_f64() * 1e3
        };
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            result,
            timing: Timing { wall_ms },
        }
    }

    pub fn print(&self) {
        emit(format_args!(
            "{}",
            serde_json::to_string_pretty(self).expect("reports serialize")
        ));
    }
}

/// Writes one line to stdout, exiting quietly when the reader is gone
/// (output piped into head, for example).
pub fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{args}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($t:tt)*) => {
        crate::report::emit(format_args!($($t)*))
    };
}
pub(crate) use outln;
