//! Command-line front end; `run` returns the exit code and captured output.

use crate::algebraside::{parse_tensors, shlp_check};
use crate::dgcalc::extend_derivation;
use crate::duality::{closed_dims, gk_check, quadratic_dual, DualOptions};
use crate::models;
use crate::presentation::*;
use crate::specfile::{self, SpecFile};
use crate::treeops::{Color, Sig};
use crate::verify;
use clap::{Parser, Subcommand};
use serde_json::json;
use std::fmt::Write;

#[derive(Parser, Debug)]
#[command(name = "operad", about = "Two-colored operads: presentations, duals, dg models and homotopy algebras")]
struct Cli {
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Dimensions of a presented operad per signature
    Dims {
        model: String,
        #[arg(long, default_value_t = 3)]
        inputs: usize,
    },
    /// Print a model in the spec-file format
    Show {
        model: String,
        #[arg(long, default_value_t = 4)]
        inputs: usize,
    },
    /// Quadratic dual, printed in the spec-file format
    Dual { model: String },
    /// Span of the relations in one signature and weight
    Span {
        model: String,
        /// signature as n,m,x with x one of c, o
        #[arg(long)]
        sig: String,
        #[arg(long, default_value_t = 2)]
        weight: usize,
    },
    /// Check d^2 = 0 on every cell of a dg model
    D2 {
        model: String,
        #[arg(long, default_value_t = 4)]
        inputs: usize,
    },
    /// Homology of a dg model per signature and degree
    Homology {
        model: String,
        #[arg(long, default_value_t = 4)]
        inputs: usize,
    },
    /// Generating-series check against the quadratic dual, closed parts
    Gk {
        model: String,
        #[arg(long, default_value_t = 7)]
        order: usize,
    },
    /// Conditions (ql1) and (ql2) of a quadratic-linear presentation
    QlCheck {
        model: String,
        #[arg(long, default_value_t = 4)]
        inputs: usize,
    },
    /// Check a set of homotopy Leibniz pair tensors
    ShlpCheck {
        file: String,
        #[arg(short = 'N', default_value_t = 4)]
        n: usize,
    },
    /// Run the structural verification suite
    VerifyPaper {
        /// check names or ids, comma separated
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load(name: &str, inputs: usize) -> Result<SpecFile, String> {
    if let Some(p) = models::builtin(name) {
        if let Some((p, d)) = models::builtin_dg(name, inputs) {
            return Ok(SpecFile::with_derivation(p, &d));
        }
        return Ok(SpecFile::new(p));
    }
    if let Some((p, d)) = models::builtin_dg(name, inputs) {
        return Ok(SpecFile::with_derivation(p, &d));
    }
    let text = std::fs::read_to_string(name).map_err(|e| {
        let mut known: Vec<&str> = models::BUILTIN_NAMES.to_vec();
        known.extend(models::DG_BUILTIN_NAMES.iter().filter(|n| !models::BUILTIN_NAMES.contains(n)));
        format!("`{}` is neither a builtin ({}) nor a readable file: {}", name, known.join(", "), e)
    })?;
    specfile::parse(&text).map_err(|e| format!("{}: {}", name, e))
}

fn parse_sig(s: &str) -> Result<Sig, String> {
    if let Some(sig) = Sig::parse(s) {
        return Ok(sig);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || format!("bad signature `{}`; expected n,m,x with x one of c, o", s);
    if parts.len() != 3 {
        return Err(bad());
    }
    let n = parts[0].parse().map_err(|_| bad())?;
    let m = parts[1].parse().map_err(|_| bad())?;
    let out = Color::from_letter(parts[2]).ok_or_else(bad)?;
    Ok(Sig::new(n, m, out))
}

fn degrees_json(h: &std::collections::BTreeMap<i64, usize>) -> serde_json::Value {
    json!(h.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>())
}

fn degrees_text(h: &std::collections::BTreeMap<i64, usize>) -> String {
    let v: Vec<String> = h.iter().filter(|(_, v)| **v > 0).map(|(k, v)| format!("{}:{}", k, v)).collect();
    format!("{{{}}}", v.join(", "))
}

fn dg_of(spec: &SpecFile, name: &str, inputs: usize) -> Result<crate::dgcalc::DgTruncation, String> {
    if !spec.is_dg() {
        return Err(format!("{} has no differential", name));
    }
    extend_derivation(Truncation::build(&spec.pres, inputs), spec.derivation()).map_err(|e| e.to_string())
}

fn execute(cli: Cli, out: &mut String) -> Result<i32, String> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Dims { model, inputs } => {
            let s = load(&model, inputs)?;
            let dims = quotient_dims(&s.pres, inputs);
            if json {
                let v: Vec<_> = dims.iter().map(|(sig, d)| json!({"sig": sig.to_string(), "dim": d})).collect();
                writeln!(out, "{}", json!({"model": s.pres.name, "inputs": inputs, "dims": v})).unwrap();
            } else {
                for (sig, d) in &dims {
                    writeln!(out, "{}{}={}", s.pres.name, sig, d).unwrap();
                }
            }
            Ok(0)
        }
        Cmd::Show { model, inputs } => {
            let s = load(&model, inputs)?;
            out.push_str(&specfile::emit(&s)?);
            Ok(0)
        }
        Cmd::Dual { model } => {
            let s = load(&model, 2)?;
            let (d, info) = quadratic_dual(&s.pres, &DualOptions::plain(&s.pres));
            if json {
                let v: Vec<_> = info.iter().map(|i| json!({"sig": i.sig.to_string(), "free": i.free_dim, "span": i.rel_dim, "perp": i.perp_dim})).collect();
                writeln!(out, "{}", json!({"dual": specfile::emit(&SpecFile::new(d))?, "signatures": v})).unwrap();
            } else {
                for i in &info {
                    writeln!(out, "# {} free {} span {} perp {}", i.sig, i.free_dim, i.rel_dim, i.perp_dim).unwrap();
                }
                out.push_str(&specfile::emit(&SpecFile::new(d))?);
            }
            Ok(0)
        }
        Cmd::Span { model, sig, weight } => {
            let s = load(&model, 2)?;
            let sig = parse_sig(&sig)?;
            let (trees, span) = relation_span(&s.pres, sig, weight);
            let basis = crate::treeops::Basis::new(trees);
            let rows: Vec<String> = span.rref_rows().iter().map(|r| basis.element(sig, r).display(&s.pres.gens)).collect();
            if json {
                writeln!(out, "{}", json!({"sig": sig.to_string(), "weight": weight, "ambient": basis.len(), "span": span.dim(), "basis": rows})).unwrap();
            } else {
                writeln!(out, "{}{} weight {}: span {} of {}", s.pres.name, sig, weight, span.dim(), basis.len()).unwrap();
                for r in rows {
                    writeln!(out, "  {}", r).unwrap();
                }
            }
            Ok(0)
        }
        Cmd::D2 { model, inputs } => {
            let s = load(&model, inputs)?;
            let dg = dg_of(&s, &model, inputs)?;
            let r = dg.verify_d_squared();
            if json {
                let v = match &r {
                    Ok(n) => json!({"ok": true, "violations": 0, "checked": n}),
                    Err(e) => json!({"ok": false, "violations": 1, "witness": e.to_string()}),
                };
                writeln!(out, "{}", v).unwrap();
            } else {
                match &r {
                    Ok(n) => writeln!(out, "OK: 0 violations ({} trees with <= {} inputs)", n, inputs).unwrap(),
                    Err(e) => writeln!(out, "FAIL: {}", e).unwrap(),
                }
            }
            Ok(if r.is_ok() { 0 } else { 1 })
        }
        Cmd::Homology { model, inputs } => {
            let s = load(&model, inputs)?;
            let dg = dg_of(&s, &model, inputs)?;
            let h = dg.homology_dims();
            if json {
                let v: Vec<_> = h.iter().map(|(sig, d)| json!({"sig": sig.to_string(), "homology": degrees_json(d)})).collect();
                writeln!(out, "{}", json!({"model": s.pres.name, "inputs": inputs, "cells": v})).unwrap();
            } else {
                for (sig, d) in &h {
                    writeln!(out, "{}{} {}", s.pres.name, sig, degrees_text(d)).unwrap();
                }
            }
            Ok(0)
        }
        Cmd::Gk { model, order } => {
            let s = load(&model, 2)?;
            let (d, _) = quadratic_dual(&s.pres, &DualOptions::plain(&s.pres));
            let a = closed_dims(&s.pres, order);
            let b = closed_dims(&d, order);
            let r = gk_check(&a, &b, order);
            let coeffs: Vec<String> = r.composite.iter().map(|q| q.to_string()).collect();
            if json {
                writeln!(out, "{}", json!({"holds": r.holds, "order": order, "dims": a, "dual_dims": b, "composite": coeffs})).unwrap();
            } else {
                writeln!(out, "dims      {:?}", &a[1..]).unwrap();
                writeln!(out, "dual dims {:?}", &b[1..]).unwrap();
                writeln!(out, "g(-g!(-t)) = [{}]", coeffs.join(", ")).unwrap();
                writeln!(out, "{}", if r.holds { format!("OK through t^{}", order) } else { format!("FAIL at t^{}", r.first_failure.unwrap_or(0)) }).unwrap();
            }
            Ok(if r.holds { 0 } else { 1 })
        }
        Cmd::QlCheck { model, inputs } => {
            let s = load(&model, 2)?;
            let r = ql_conditions(&s.pres, inputs);
            if json {
                writeln!(out, "{}", json!({"ql1": r.ql1, "ql2": r.ql2, "ql1_witness": r.ql1_witness, "ql2_witness": r.ql2_witness, "checked": r.checked.len()})).unwrap();
            } else {
                writeln!(out, "ql1: {}{}", if r.ql1 { "OK" } else { "FAIL" }, r.ql1_witness.as_ref().map(|w| format!(" ({})", w)).unwrap_or_default()).unwrap();
                writeln!(out, "ql2: {}{}", if r.ql2 { "OK" } else { "FAIL" }, r.ql2_witness.as_ref().map(|w| format!(" ({})", w)).unwrap_or_default()).unwrap();
                writeln!(out, "{} signatures with <= {} inputs", r.checked.len(), inputs).unwrap();
            }
            Ok(if r.ql1 && r.ql2 { 0 } else { 1 })
        }
        Cmd::ShlpCheck { file, n } => {
            let text = std::fs::read_to_string(&file).map_err(|e| format!("{}: {}", file, e))?;
            let h = parse_tensors(&text).map_err(|e| format!("{}: {}", file, e))?;
            let r = shlp_check(&h, n).map_err(|e| format!("{}: {}", file, e))?;
            let desc = |v: &crate::algebraside::Violation| {
                let color = if v.open.is_empty() && v.relation.starts_with('l') { Color::Closed } else { Color::Open };
                v.describe(&h.pair, color)
            };
            if json {
                let rel: Vec<String> = r.relations.iter().map(desc).collect();
                writeln!(out, "{}", json!({"passes": r.passes(), "consistent": r.consistent(), "checked": r.checked, "violations": rel})).unwrap();
            } else {
                if r.passes() {
                    writeln!(out, "OK: 0 violations ({} inputs with <= {} symbols)", r.checked, n).unwrap();
                } else {
                    writeln!(out, "FAIL: {} violations", r.relations.len()).unwrap();
                    for v in &r.relations {
                        writeln!(out, "  {}", desc(v)).unwrap();
                    }
                }
                if !r.consistent() {
                    writeln!(out, "warning: [D,D] and the relations disagree on {} inputs", r.discrepancies.len() + r.internal.len()).unwrap();
                }
            }
            Ok(if r.passes() { 0 } else { 1 })
        }
        Cmd::VerifyPaper { only } => {
            let ids = verify::select(only.as_deref())?;
            let report = verify::run(&verify::VerifyConfig::default(), &ids);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).unwrap();
            } else {
                out.push_str(&report.text());
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 { Output { code, stdout: text, stderr: String::new() } } else { Output { code, stdout: String::new(), stderr: text } };
        }
    };
    let mut out = String::new();
    match execute(cli, &mut out) {
        Ok(code) => Output { code, stdout: out, stderr: String::new() },
        Err(e) => Output { code: 2, stdout: out, stderr: format!("error: {}\n", e) },
    }
}
