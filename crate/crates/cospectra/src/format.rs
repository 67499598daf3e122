//! On-disk formats: JSON documents for digraphs, rewiring plans, and
//! spectra, plus Graphviz DOT output. All emitters are deterministic, so
//! equal inputs give byte-identical output.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, VertexWord};
use crate::modify::{Modification, ModifyError, Side};
use crate::spectral::{integer_spectrum, CharPoly};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Modify(#[from] ModifyError),
    #[error("not an integer coefficient: {0}")]
    BadNumber(String),
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<u8>>>,
    arcs: Vec<(usize, usize)>,
}

pub fn graph_to_json(g: &Digraph) -> String {
    let doc = GraphDoc {
        n: g.n(),
        labels: g
            .labels()
            .map(|ls| ls.iter().map(|w| w.symbols().to_vec()).collect()),
        arcs: g.arcs(),
    };
    serde_json::to_string(&doc).expect("graph documents always serialize")
}

pub fn graph_from_json(s: &str) -> Result<Digraph, FormatError> {
    let doc: GraphDoc = serde_json::from_str(s)?;
    let g = Digraph::new(doc.n, &doc.arcs)?;
    match doc.labels {
        Some(ls) => {
            let words = ls
                .into_iter()
                .map(VertexWord::from_symbols)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(g.with_labels(words)?)
        }
        None => Ok(g),
    }
}

/// Graphviz source; vertices are named by their labels when present.
pub fn graph_to_dot(g: &Digraph) -> String {
    let mut s = String::from("digraph {\n");
    for u in 0..g.n() {
        s.push_str(&format!("  \"{}\";\n", g.vertex_name(u)));
    }
    for (u, v) in g.arcs() {
        s.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            g.vertex_name(u),
            g.vertex_name(v)
        ));
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum SideDoc {
    Out,
    In,
}

#[derive(Serialize, Deserialize)]
struct PlanDoc {
    #[serde(rename = "X")]
    x: Vec<usize>,
    removed: Vec<(usize, usize)>,
    added: Vec<(usize, usize)>,
    side: SideDoc,
}

/// Plan arcs are written as (tail, head) in the host's orientation,
/// matching what [`Modification::new`] expects.
pub fn plan_to_json(m: &Modification) -> String {
    let doc = PlanDoc {
        x: m.x().to_vec(),
        removed: m.removed().to_vec(),
        added: m.added().to_vec(),
        side: match m.side() {
            Side::Out => SideDoc::Out,
            Side::In => SideDoc::In,
        },
    };
    serde_json::to_string(&doc).expect("plan documents always serialize")
}

pub fn plan_from_json(host: &Digraph, s: &str) -> Result<Modification, FormatError> {
    let doc: PlanDoc = serde_json::from_str(s)?;
    let side = match doc.side {
        SideDoc::Out => Side::Out,
        SideDoc::In => Side::In,
    };
    Ok(Modification::new(
        host.clone(),
        &doc.x,
        &doc.removed,
        &doc.added,
        side,
    )?)
}

#[derive(Serialize, Deserialize)]
struct SpectrumDoc {
    charpoly: Vec<serde_json::Number>,
    spectrum: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    residual: Option<Vec<serde_json::Number>>,
}

// serde_json's arbitrary_precision feature keeps these exact at any size
fn coeff_number(b: &BigInt) -> serde_json::Number {
    serde_json::from_str(&b.to_string()).expect("integer strings are valid JSON numbers")
}

fn number_coeff(n: &serde_json::Number) -> Result<BigInt, FormatError> {
    n.to_string()
        .parse()
        .map_err(|_| FormatError::BadNumber(n.to_string()))
}

/// Coefficients in ascending degree order plus the integer eigenvalues with
/// multiplicities; a non-splitting factor is reported verbatim under
/// `residual` and omitted when everything splits.
pub fn spectrum_to_json(p: &CharPoly) -> String {
    let spectrum = integer_spectrum(p);
    let doc = SpectrumDoc {
        charpoly: p.coeffs().iter().map(coeff_number).collect(),
        spectrum: spectrum
            .pairs()
            .iter()
            .map(|(lambda, m)| (lambda.to_string(), *m))
            .collect(),
        residual: (!spectrum.splits()).then(|| {
            spectrum
                .residual()
                .coeffs()
                .iter()
                .map(coeff_number)
                .collect()
        }),
    };
    serde_json::to_string(&doc).expect("spectrum documents always serialize")
}

pub fn spectrum_from_json(s: &str) -> Result<CharPoly, FormatError> {
    let doc: SpectrumDoc = serde_json::from_str(s)?;
    let coeffs = doc
        .charpoly
        .iter()
        .map(number_coeff)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CharPoly::from_coeffs(coeffs))
}
