//! Executes parsed scripts against the kernel and renders the results.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value as Json};

use oigb_core::groebner::{oi_gb, GbOptions};
use oigb_core::module::ModuleElement;
use oigb_core::par::Execution;
use oigb_core::resolution::{describe, oi_res, restrict_to_width, FreeComplex, PolyMatrix, ResOptions, RestrictedComplex};
use oigb_core::syzygy::{oi_syz, SyzOptions};

use crate::script::{CallOptions, Expr, Located, Script, ScriptError, Stmt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub verbose: bool,
    pub output: OutputFormat,
    pub pair_cap: usize,
    pub execution: Execution,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            verbose: false,
            output: OutputFormat::Text,
            pair_cap: GbOptions::default().pair_cap,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug)]
enum Value {
    Element(ModuleElement),
    Basis(Vec<ModuleElement>),
    Complex(FreeComplex),
    /// With the variable symbol used to print entries.
    Restricted(RestrictedComplex, String),
    Ranks(Vec<usize>),
    Description(FreeComplex),
}

/// One printed result.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rendered {
    pub line: usize,
    pub kind: &'static str,
    #[serde(skip)]
    pub text: String,
    pub value: Json,
}

/// Results printed before the script finished, and the error that stopped it.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub outputs: Vec<Rendered>,
    pub error: Option<ScriptError>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            // a blank line between results
            OutputFormat::Text => self.outputs.iter().map(|r| r.text.as_str()).collect::<Vec<_>>().join("\n"),
            OutputFormat::Json if self.outputs.is_empty() => String::new(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.outputs).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

struct Env<'a> {
    flags: &'a Flags,
    values: HashMap<String, Value>,
}

fn verbose(flags: &Flags, opts: &CallOptions) -> bool {
    flags.verbose || opts.verbose.unwrap_or(false)
}

impl Env<'_> {
    fn elements(&self, names: &[String]) -> Vec<ModuleElement> {
        let mut out = Vec::new();
        for n in names {
            match self.values.get(n) {
                Some(Value::Element(e)) => out.push(e.clone()),
                Some(Value::Basis(b)) => out.extend(b.iter().cloned()),
                _ => unreachable!("checked by the parser"),
            }
        }
        out
    }

    fn eval(&self, expr: &Expr) -> oigb_core::Result<Value> {
        let flags = self.flags;
        Ok(match expr {
            Expr::Name(n) => self.values[n].clone(),
            Expr::Gb { inputs, opts } => {
                let gb = oi_gb(
                    &self.elements(inputs),
                    &GbOptions {
                        verbose: verbose(flags, opts),
                        pair_cap: flags.pair_cap,
                        minimize: false,
                        execution: flags.execution,
                    },
                )?;
                Value::Basis(gb.elements)
            }
            Expr::Syz { gb, symbol, opts } => {
                let syz = oi_syz(
                    &self.elements(std::slice::from_ref(gb)),
                    symbol,
                    &SyzOptions {
                        verbose: verbose(flags, opts),
                        execution: flags.execution,
                    },
                )?;
                Value::Basis(syz.elements)
            }
            Expr::Res { inputs, degree, opts } => {
                let r = oi_res(
                    &self.elements(inputs),
                    *degree,
                    &ResOptions {
                        minimize: opts.minimize.unwrap_or(true),
                        verbose: verbose(flags, opts),
                        pair_cap: flags.pair_cap,
                        execution: flags.execution,
                        symbol: "d".into(),
                    },
                )?;
                Value::Complex(r)
            }
            Expr::Restrict { res, width } => match self.eval(res)? {
                Value::Complex(r) => {
                    let symbol = r.ambient.algebra().symbol.clone();
                    Value::Restricted(restrict_to_width(&r, *width)?, symbol)
                }
                _ => unreachable!("checked by the parser"),
            },
            Expr::Ranks(inner) => match self.eval(inner)? {
                Value::Complex(r) => Value::Ranks(r.ranks()),
                _ => unreachable!("checked by the parser"),
            },
            Expr::Describe(inner) => match self.eval(inner)? {
                Value::Complex(r) => Value::Description(r),
                _ => unreachable!("checked by the parser"),
            },
        })
    }
}

fn matrix_text(m: &PolyMatrix, symbol: &str) -> String {
    let mut s = String::new();
    for row in m.to_strings(symbol) {
        s.push_str("  [");
        s.push_str(&row.join(", "));
        s.push_str("]\n");
    }
    s
}

fn render(line: usize, value: &Value) -> Rendered {
    let (kind, text, json) = match value {
        Value::Element(e) => ("element", format!("{e}\n"), json!(e.to_string())),
        Value::Basis(b) => {
            let strings: Vec<String> = b.iter().map(|e| e.to_string()).collect();
            let text = strings.iter().map(|s| format!("{s}\n")).collect();
            ("basis", text, json!({ "elements": strings }))
        }
        Value::Ranks(r) => {
            let text = r.iter().enumerate().map(|(j, n)| format!("{j}: rank {n}\n")).collect();
            ("ranks", text, json!(r))
        }
        Value::Complex(r) | Value::Description(r) => {
            let d = describe(r);
            ("complex", d.to_text(), serde_json::to_value(&d).expect("serializable"))
        }
        Value::Restricted(rw, symbol) => {
            let mut text = format!("width {}: ranks {:?}\n", rw.width, rw.ranks());
            text.push_str("F^0 -> F\n");
            text.push_str(&matrix_text(&rw.augmentation, symbol));
            for (j, d) in rw.differentials.iter().enumerate() {
                text.push_str(&format!("F^{} -> F^{}\n", j + 1, j));
                text.push_str(&matrix_text(d, symbol));
            }
            let json = json!({
                "width": rw.width,
                "ranks": rw.ranks(),
                "augmentation": rw.augmentation.to_strings(symbol),
                "differentials": rw.differentials.iter().map(|d| d.to_strings(symbol)).collect::<Vec<_>>(),
            });
            ("restricted", text, json)
        }
    };
    Rendered {
        line,
        kind,
        text,
        value: json,
    }
}

/// Runs the statements in order, stopping at the first error.
pub fn run(script: &Script, flags: &Flags) -> Report {
    let mut env = Env {
        flags,
        values: HashMap::new(),
    };
    let mut report = Report::default();
    for Located { line, column, stmt } in &script.statements {
        let result = match stmt {
            Stmt::DefineAlgebra { .. } | Stmt::DefineModule { .. } => Ok(()),
            Stmt::DefineElement { name, element, echo } => {
                let v = Value::Element(element.clone());
                if *echo {
                    report.outputs.push(render(*line, &v));
                }
                env.values.insert(name.clone(), v);
                Ok(())
            }
            Stmt::Assign { name, expr, echo } => env.eval(expr).map(|v| {
                if *echo {
                    report.outputs.push(render(*line, &v));
                }
                env.values.insert(name.clone(), v);
            }),
            Stmt::Eval { expr, echo } => env.eval(expr).map(|v| {
                if *echo {
                    report.outputs.push(render(*line, &v));
                }
            }),
        };
        if let Err(e) = result {
            report.error = Some(ScriptError::from_kernel(e, *line, *column));
            break;
        }
    }
    report
}
