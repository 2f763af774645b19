//! CSV, JSON and SVG emitters for sweep records.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::poly::Complex;
use crate::sweep::SweepRecord;

pub const CSV_HEADER: &str = "n,kind,index,re,im,modulus,flag";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Phi,
    Opa,
    Partner,
    Spurious,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Phi, Kind::Opa, Kind::Partner, Kind::Spurious];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Phi => "phi",
            Kind::Opa => "opa",
            Kind::Partner => "partner",
            Kind::Spurious => "spurious",
        }
    }
}

fn row(out: &mut String, n: usize, kind: Kind, index: usize, z: Complex, flag: &str) {
    let _ = writeln!(
        out,
        "{n},{},{index},{:.16e},{:.16e},{:.16e},{flag}",
        kind.name(),
        z.re,
        z.im,
        z.norm()
    );
}

/// Rows for the requested kinds, record by record. Flags: `phi` rows are
/// `bulk` or `spurious` (`degenerate` when `Phi_n(0) = 0`), `opa` rows are `-`
/// or `reflected-spurious` for `1/conj(xi)`,
/// `partner` rows `inside`/`outside` the unit circle, `spurious` rows `paired`/`unpaired`.
pub fn csv_string(records: &[SweepRecord], kinds: &[Kind]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        for &kind in kinds {
            match kind {
                Kind::Phi => {
                    for (i, &z) in r.phi_zeros.iter().enumerate() {
                        let flag = if r.spurious.contains(&z) {
                            "spurious"
                        } else if r.degenerate {
                            "degenerate"
                        } else {
                            "bulk"
                        };
                        row(&mut out, r.n, kind, i, z, flag);
                    }
                }
                Kind::Opa => {
                    for (i, &z) in r.opa_zeros.iter().enumerate() {
                        let mirrored = r.spurious.iter().any(|s| (s.conj().inv() - z).norm() <= 1e-8 * z.norm());
                        row(&mut out, r.n, kind, i, z, if mirrored { "reflected-spurious" } else { "-" });
                    }
                }
                Kind::Partner => {
                    for (i, &z) in r.partner_roots.iter().enumerate() {
                        row(&mut out, r.n, kind, i, z, if z.norm() < 1.0 { "inside" } else { "outside" });
                    }
                }
                Kind::Spurious => {
                    for (i, &z) in r.spurious.iter().enumerate() {
                        let paired = r.pairs.iter().any(|&(k, _)| k == i);
                        row(&mut out, r.n, kind, i, z, if paired { "paired" } else { "unpaired" });
                    }
                }
            }
        }
    }
    out
}

pub fn emit_csv(records: &[SweepRecord], kinds: &[Kind], path: &Path) -> Result<()> {
    write_file(path, csv_string(records, kinds).as_bytes())
}

pub fn json_string(records: &[SweepRecord]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(records)?;
    s.push('\n');
    Ok(s)
}

pub fn emit_json(records: &[SweepRecord], path: &Path) -> Result<()> {
    write_file(path, json_string(records)?.as_bytes())
}

pub fn read_json(path: &Path) -> Result<Vec<SweepRecord>> {
    Ok(serde_json::from_slice(&fs::read(path)?)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub name: String,
    pub color: String,
    pub radius: f64,
    pub points: Vec<Complex>,
}

impl Layer {
    pub fn new(name: &str, color: &str, radius: f64, points: Vec<Complex>) -> Self {
        Layer {
            name: name.into(),
            color: color.into(),
            radius,
            points,
        }
    }
}

/// Standard layers for one record: zeros of `Phi_n`, of `p_n`, partner roots and spurious zeros.
pub fn record_layers(r: &SweepRecord) -> Vec<Layer> {
    vec![
        Layer::new("phi", "#1f77b4", 0.018, r.phi_zeros.clone()),
        Layer::new("opa", "#ff7f0e", 0.018, r.opa_zeros.clone()),
        Layer::new("partner", "#2ca02c", 0.035, r.partner_roots.clone()),
        Layer::new("spurious", "#d62728", 0.03, r.spurious.clone()),
    ]
}

/// Scatter plot in the complex plane, imaginary axis pointing up.
pub fn svg_string(layers: &[Layer]) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"-2.2 -2.2 4.4 4.4\" width=\"600\" height=\"600\">\n",
    );
    s.push_str("<circle id=\"unit-circle\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.008\"/>\n");
    for layer in layers {
        let _ = writeln!(s, "<g id=\"{}\" fill=\"{}\">", layer.name, layer.color);
        for z in &layer.points {
            let y = if z.im == 0.0 { 0.0 } else { -z.im };
            let _ = writeln!(s, "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{}\"/>", z.re, y, layer.radius);
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

pub fn emit_svg(layers: &[Layer], path: &Path) -> Result<()> {
    write_file(path, svg_string(layers).as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    Ok(())
}
