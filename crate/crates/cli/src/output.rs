//! Deterministic rendering: fixed 12-significant-digit numbers, fixed column
//! order, no timestamps. Identical inputs produce byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use trapped_fermi::thermo::SweepTable;
use trapped_fermi::trap::{compute_partition_coefficients, DosCoefficients, TrapSpec, ZeroPointMode};

use crate::config::{CliError, CliResult, OutputFormat};

pub const TOOL_NAME: &str = "trapped-fermi";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const ZF_CONVENTION: &str = "f3(zF)=1/3";

/// 12 significant digits in scientific notation.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Minimal JSON string escaping for error messages.
pub fn json_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn mode_name(mode: ZeroPointMode) -> &'static str {
    match mode {
        ZeroPointMode::RelativeSpectrum => "relative",
        ZeroPointMode::AbsoluteSpectrum => "absolute",
    }
}

/// `key = value` pairs rendered as `# ` comments (CSV) or a metadata object
/// (JSON).
pub struct Metadata {
    entries: Vec<(String, MetaValue)>,
}

pub enum MetaValue {
    Text(String),
    Number(f64),
    Integer(i64),
}

impl Metadata {
    pub fn new() -> Self {
        let mut meta = Metadata { entries: Vec::new() };
        meta.text("tool", TOOL_NAME);
        meta.text("version", TOOL_VERSION);
        meta
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.entries.push((key.to_string(), MetaValue::Text(value.into())));
        self
    }

    pub fn number(&mut self, key: &str, value: f64) -> &mut Self {
        self.entries.push((key.to_string(), MetaValue::Number(value)));
        self
    }

    pub fn integer(&mut self, key: &str, value: i64) -> &mut Self {
        self.entries.push((key.to_string(), MetaValue::Integer(value)));
        self
    }

    pub fn trap(&mut self, trap: &TrapSpec) -> &mut Self {
        self.text(
            "omega",
            format!(
                "{},{},{}",
                sig12(trap.omega_x()),
                sig12(trap.omega_y()),
                sig12(trap.omega_z())
            ),
        );
        self.text("mode", mode_name(trap.zero_point()))
    }

    pub fn coefficients(&mut self, trap: &TrapSpec, coeffs: &DosCoefficients) -> &mut Self {
        let pc = compute_partition_coefficients(trap);
        self.number("a2", pc.a2)
            .number("a1", pc.a1)
            .number("a0", pc.a0)
            .number("a_minus1", pc.a_minus1)
            .number("b0", coeffs.b0)
            .number("b1", coeffs.b1)
            .number("b2", coeffs.b2)
            .number("eps0", coeffs.eps0)
    }

    fn csv_comments(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            match value {
                MetaValue::Text(v) => writeln!(out, "# {key} = {v}").unwrap(),
                MetaValue::Number(v) => writeln!(out, "# {key} = {}", sig12(*v)).unwrap(),
                MetaValue::Integer(v) => writeln!(out, "# {key} = {v}").unwrap(),
            }
        }
        out
    }

    fn json_object(&self, indent: &str) -> String {
        let mut parts = Vec::new();
        for (key, value) in &self.entries {
            let rendered = match value {
                MetaValue::Text(v) => format!("\"{}\"", json_escape(v)),
                MetaValue::Number(v) => sig12(*v),
                MetaValue::Integer(v) => v.to_string(),
            };
            parts.push(format!("{indent}  \"{}\": {rendered}", json_escape(key)));
        }
        format!("{{\n{}\n{indent}}}", parts.join(",\n"))
    }
}

/// A generic column-oriented table: header plus rows of pre-rendered cells.
pub struct Table {
    pub meta: Metadata,
    pub columns: Vec<&'static str>,
    pub rows: Vec<TableRow>,
}

pub enum TableRow {
    Cells(Vec<String>),
    /// Per-row failure marker with the grid value it belongs to.
    Error { at: f64, message: String },
}

impl Table {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = self.meta.csv_comments();
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            match row {
                TableRow::Cells(cells) => writeln!(out, "{}", cells.join(",")).unwrap(),
                TableRow::Error { at, message } => {
                    writeln!(out, "# error at T = {}: {message}", sig12(*at)).unwrap()
                }
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::from("{\n  \"metadata\": ");
        out.push_str(&self.meta.json_object("  "));
        out.push_str(",\n  \"rows\": [\n");
        let rendered: Vec<String> = self
            .rows
            .iter()
            .map(|row| match row {
                TableRow::Cells(cells) => {
                    let fields: Vec<String> = self
                        .columns
                        .iter()
                        .zip(cells)
                        .map(|(col, cell)| format!("\"{col}\": {cell}"))
                        .collect();
                    format!("    {{{}}}", fields.join(", "))
                }
                TableRow::Error { at, message } => format!(
                    "    {{\"T\": {}, \"error\": \"{}\"}}",
                    sig12(*at),
                    json_escape(message)
                ),
            })
            .collect();
        out.push_str(&rendered.join(",\n"));
        out.push_str("\n  ]\n}\n");
        out
    }
}

/// Sweep-table columns in their contractual order.
pub const SWEEP_COLUMNS: [&str; 8] =
    ["T", "T_over_TF0", "z", "mu", "U", "c_exact", "c_paper22", "expansion_valid"];

/// Render a sweep table with its standard metadata block.
pub fn sweep_table(table: &SweepTable, extra_meta: impl FnOnce(&mut Metadata)) -> Table {
    let mut meta = Metadata::new();
    meta.trap(&table.trap);
    meta.number("n", table.n);
    meta.text("zf_convention", ZF_CONVENTION);
    meta.coefficients(&table.trap, &table.coeffs);
    meta.number("t_f0", table.t_f0);
    extra_meta(&mut meta);

    let rows = table
        .rows
        .iter()
        .map(|row| match &row.point {
            Ok(p) => TableRow::Cells(vec![
                sig12(p.t),
                sig12(p.t_over_tf0),
                sig12(p.z),
                sig12(p.mu),
                sig12(p.u),
                sig12(p.c_exact),
                sig12(p.c_paper22),
                p.expansion_valid.to_string(),
            ]),
            Err(message) => TableRow::Error { at: row.t, message: message.clone() },
        })
        .collect();

    Table { meta, columns: SWEEP_COLUMNS.to_vec(), rows }
}

/// Write to the path, or stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
