use serde::{Deserialize, Serialize};

use crate::analyze::Report;
use crate::arrangement::Arrangement;
use crate::cyclo::CycloElement;
use crate::error::FormatError;
use crate::lattice::{Edge, Lattice};
use crate::oracle::{validate_oracle_table, OracleEntry};
use crate::poly::PolyQ;
use crate::rational::{rational_from_wire, rational_to_wire};
use crate::rho::{validate_witness_rules, WitnessRule};

/// One coefficient on the wire: a plain rational as a [num, den] pair of
/// decimal strings, or a cyclotomic element as the residue coefficients of
/// its defining polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffWire {
    Rational([String; 2]),
    Cyclotomic {
        order: u64,
        coeffs: Vec<[String; 2]>,
    },
}

fn coeff_to_wire(c: &CycloElement) -> CoeffWire {
    match c.as_rational() {
        Some(r) => CoeffWire::Rational(rational_to_wire(&r)),
        None => CoeffWire::Cyclotomic {
            order: c.order(),
            coeffs: c.residue().coeffs().iter().map(rational_to_wire).collect(),
        },
    }
}

fn coeff_from_wire(
    w: &CoeffWire,
    arrangement_order: u64,
    at: &str,
) -> Result<CycloElement, FormatError> {
    match w {
        CoeffWire::Rational(pair) => {
            let r = rational_from_wire(pair).map_err(|reason| FormatError::new(at, reason))?;
            Ok(CycloElement::from_rational(arrangement_order, r))
        }
        CoeffWire::Cyclotomic { order, coeffs } => {
            let parsed = coeffs
                .iter()
                .map(rational_from_wire)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|reason| FormatError::new(at, reason))?;
            CycloElement::new(*order, PolyQ::new(parsed))
                .map_err(|e| FormatError::new(at, e.to_string()))
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ArrangementWire {
    label: String,
    ambient_dim: usize,
    cyclotomic_order: u64,
    hyperplanes: Vec<Vec<CoeffWire>>,
}

/// Canonical JSON for an arrangement. Deterministic: field order is fixed
/// and coefficients are emitted in hyperplane order.
pub fn arrangement_to_json(a: &Arrangement) -> String {
    let wire = ArrangementWire {
        label: a.label().to_string(),
        ambient_dim: a.ambient_dim(),
        cyclotomic_order: a.cyclotomic_order(),
        hyperplanes: a
            .hyperplanes()
            .iter()
            .map(|h| h.coeffs().iter().map(coeff_to_wire).collect())
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&wire).expect("wire type serializes");
    s.push('\n');
    s
}

/// Parses and validates an arrangement file. Coefficients of lower
/// cyclotomic order are lifted to the declared one; normalization and
/// duplicate detection run as in direct construction.
pub fn arrangement_from_json(text: &str) -> Result<Arrangement, FormatError> {
    let wire: ArrangementWire = serde_json::from_str(text)
        .map_err(|e| FormatError::new("arrangement file", e.to_string()))?;
    let mut forms = Vec::with_capacity(wire.hyperplanes.len());
    for (i, row) in wire.hyperplanes.iter().enumerate() {
        let mut form = Vec::with_capacity(row.len());
        for (j, coeff) in row.iter().enumerate() {
            let at = format!("hyperplane {i}, coefficient {j}");
            form.push(coeff_from_wire(coeff, wire.cyclotomic_order, &at)?);
        }
        forms.push(form);
    }
    Arrangement::new(wire.label, wire.ambient_dim, wire.cyclotomic_order, forms)
        .map_err(|e| FormatError::new("arrangement file", e.to_string()))
}

#[derive(Debug, Serialize)]
struct EdgeWire {
    codim: usize,
    basis: Vec<Vec<CoeffWire>>,
    members: Vec<usize>,
    multiplicity: usize,
    support_size: usize,
    profile: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct IncidenceWire {
    j: usize,
    i: usize,
    transversal: usize,
}

#[derive(Debug, Serialize)]
struct LatticeWire {
    codim2: Vec<EdgeWire>,
    codim3: Vec<EdgeWire>,
    incidences: Vec<IncidenceWire>,
}

fn edge_to_wire(e: &Edge) -> EdgeWire {
    EdgeWire {
        codim: e.codim,
        basis: e
            .basis
            .row_vecs()
            .iter()
            .map(|row| row.iter().map(coeff_to_wire).collect())
            .collect(),
        members: e.members.clone(),
        multiplicity: e.multiplicity,
        support_size: e.support_size,
        profile: e.profile.clone(),
    }
}

/// JSON dump of the computed lattice: all codimension-2 and -3 edges in
/// canonical basis order, then the incidence pairs with their transversal
/// multiplicities.
pub fn lattice_to_json(lat: &Lattice) -> String {
    let wire = LatticeWire {
        codim2: lat.codim2.iter().map(edge_to_wire).collect(),
        codim3: lat.codim3.iter().map(edge_to_wire).collect(),
        incidences: lat
            .incidences
            .iter()
            .map(|inc| IncidenceWire {
                j: inc.j,
                i: inc.i,
                transversal: inc.transversal,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&wire).expect("wire type serializes");
    s.push('\n');
    s
}

/// Canonical JSON for an analysis report.
pub fn report_to_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

/// Parses a user oracle table and validates every entry.
pub fn oracle_table_from_json(text: &str) -> Result<Vec<OracleEntry>, FormatError> {
    let entries: Vec<OracleEntry> =
        serde_json::from_str(text).map_err(|e| FormatError::new("oracle table", e.to_string()))?;
    validate_oracle_table(&entries).map_err(|e| FormatError::new("oracle table", e.to_string()))?;
    Ok(entries)
}

pub fn oracle_table_to_json(entries: &[OracleEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("entries serialize");
    s.push('\n');
    s
}

/// Parses a witness-rule file and validates every rule. A file given on the
/// command line replaces the built-in rules entirely.
pub fn witness_rules_from_json(text: &str) -> Result<Vec<WitnessRule>, FormatError> {
    let rules: Vec<WitnessRule> =
        serde_json::from_str(text).map_err(|e| FormatError::new("witness rules", e.to_string()))?;
    validate_witness_rules(&rules).map_err(|e| FormatError::new("witness rules", e.to_string()))?;
    Ok(rules)
}

pub fn witness_rules_to_json(rules: &[WitnessRule]) -> String {
    let mut s = serde_json::to_string_pretty(rules).expect("rules serialize");
    s.push('\n');
    s
}
