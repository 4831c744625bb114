use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::cyclo::CycloElement;
use crate::error::ArrangementError;
use crate::matrix::{MatrixK, Rref};
use crate::rational::Rational;

/// A codimension-2 or codimension-3 flat of the intersection lattice.
///
/// The flat is identified by the canonical reduced row echelon basis of the
/// space of linear forms vanishing on it; `members` lists every hyperplane
/// whose form lies in that row space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub codim: usize,
    pub basis: MatrixK,
    pub pivots: Vec<usize>,
    pub members: Vec<usize>,
    pub multiplicity: usize,
    pub support_size: usize,
    pub profile: Vec<usize>,
}

impl Edge {
    pub fn rref(&self) -> Rref {
        Rref {
            matrix: self.basis.clone(),
            rank: self.codim,
            pivots: self.pivots.clone(),
        }
    }
}

/// Containment of a codimension-3 flat (index `j`) in the closure of a
/// codimension-2 flat (index `i`); `transversal` counts the hyperplanes
/// through the small flat that cut the big one transversally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub j: usize,
    pub i: usize,
    pub transversal: usize,
}

/// The rank-3 arrangement seen in a transversal slice at a codimension-3
/// flat, summarized by the combinatorial data the certification rules need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalType {
    /// Number of member hyperplanes (the local degree).
    pub degree: usize,
    /// Decomposition profile of the members.
    pub profile: Vec<usize>,
    /// Sorted multiplicity multiset of the local codimension-2 flats.
    pub codim2_multiplicities: Vec<usize>,
    /// `Some(m)` when the local combinatorics are those of the Fermat-type
    /// arrangement G(m,m,3): degree 3m, indecomposable, with exactly three
    /// flats of multiplicity m and m^2 triple points.
    pub fermat_parameter: Option<u64>,
}

impl LocalType {
    pub fn is_braid(&self) -> bool {
        self.fermat_parameter == Some(2)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LatticeOptions {
    /// Edges with more members than this refuse to compute a profile.
    pub profile_limit: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions { profile_limit: 24 }
    }
}

/// The codimension-2/3 part of the intersection lattice of an arrangement.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub codim2: Vec<Edge>,
    pub codim3: Vec<Edge>,
    pub incidences: Vec<Incidence>,
    /// For each codim-2 edge, the sorted indices of incident codim-3 edges.
    pub incident3_of: Vec<Vec<usize>>,
    /// Local type of each codim-3 edge, parallel to `codim3`.
    pub locals: Vec<LocalType>,
}

type BasisKey = Vec<Vec<Vec<(BigInt, BigInt)>>>;

fn basis_key(m: &MatrixK) -> BasisKey {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| {
                    e.residue()
                        .coeffs()
                        .iter()
                        .map(|c| (c.numer().clone(), c.denom().clone()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn rank_of_members(members: &[usize], forms: &[Vec<CycloElement>]) -> usize {
    let rows: Vec<Vec<CycloElement>> = members.iter().map(|&h| forms[h].clone()).collect();
    MatrixK::from_rows(rows)
        .expect("nonempty member set")
        .rank()
}

/// Finest partition of the member forms into groups whose ranks add up to
/// the total rank, reported as the descending multiset of group sizes.
///
/// For rank 3 every such partition either keeps all members together,
/// isolates one form whose complement has rank 2, or (with exactly three
/// members) splits into singletons: a rank-1 group is a single form because
/// proportional forms are excluded, and two disjoint groups of rank 2 would
/// exceed the total. So scanning single-form splits finds the finest
/// partition without a bipartition search.
fn decomposition_profile(
    members: &[usize],
    forms: &[Vec<CycloElement>],
    rank: usize,
    limit: usize,
) -> Result<Vec<usize>, ArrangementError> {
    let m = members.len();
    if m > limit {
        return Err(ArrangementError::ProfileUnavailable { members: m, limit });
    }
    debug_assert!(m >= rank);
    match rank {
        2 => Ok(if m == 2 { vec![1, 1] } else { vec![m] }),
        3 => {
            if m == 3 {
                return Ok(vec![1, 1, 1]);
            }
            for drop in 0..m {
                let rest: Vec<usize> = members
                    .iter()
                    .enumerate()
                    .filter_map(|(t, &h)| (t != drop).then_some(h))
                    .collect();
                if rank_of_members(&rest, forms) == 2 {
                    return Ok(vec![m - 1, 1]);
                }
            }
            Ok(vec![m])
        }
        _ => unreachable!("profiles only requested for codimension 2 and 3"),
    }
}

fn make_edge(
    rref: &Rref,
    codim: usize,
    forms: &[Vec<CycloElement>],
    limit: usize,
) -> Result<Edge, ArrangementError> {
    let members: Vec<usize> = (0..forms.len())
        .filter(|&h| rref.contains(&forms[h]))
        .collect();
    let cols = rref.matrix.cols();
    let support_size = (0..cols)
        .filter(|&c| (0..rref.rank).any(|r| !rref.matrix.get(r, c).is_zero()))
        .count();
    let profile = decomposition_profile(&members, forms, codim, limit)?;
    Ok(Edge {
        codim,
        basis: rref.matrix.clone(),
        pivots: rref.pivots.clone(),
        multiplicity: members.len(),
        members,
        support_size,
        profile,
    })
}

/// Restriction of the member forms to the flat's pivot coordinates.
///
/// Each member form lies in the row space of the canonical basis, and its
/// coordinates in that basis are just its entries at the pivot columns, so
/// the triple of pivot entries is an exact linear re-expression of the local
/// arrangement in 3 coordinates.
fn local_forms(edge: &Edge, forms: &[Vec<CycloElement>]) -> Vec<Vec<CycloElement>> {
    edge.members
        .iter()
        .map(|&h| edge.pivots.iter().map(|&c| forms[h][c].clone()).collect())
        .collect()
}

fn codim2_multiplicity_multiset(local: &[Vec<CycloElement>]) -> Vec<usize> {
    let mut groups: BTreeMap<BasisKey, std::collections::BTreeSet<usize>> = BTreeMap::new();
    for a in 0..local.len() {
        for b in a + 1..local.len() {
            let m = MatrixK::from_rows(vec![local[a].clone(), local[b].clone()])
                .expect("local forms have equal length");
            let r = m.rref();
            debug_assert_eq!(r.rank, 2, "distinct normalized forms span rank 2");
            let members = groups.entry(basis_key(&r.matrix)).or_default();
            members.insert(a);
            members.insert(b);
        }
    }
    let mut mults: Vec<usize> = groups.values().map(|s| s.len()).collect();
    mults.sort_unstable();
    mults
}

fn detect_fermat(degree: usize, profile: &[usize], mults: &[usize]) -> Option<u64> {
    if degree % 3 != 0 {
        return None;
    }
    let m = degree / 3;
    if m < 2 || profile != [degree] {
        return None;
    }
    let mut expected = vec![3usize; m * m];
    expected.extend(std::iter::repeat(m).take(3));
    expected.sort_unstable();
    (mults == expected.as_slice()).then_some(m as u64)
}

fn local_type_of(edge: &Edge, forms: &[Vec<CycloElement>]) -> LocalType {
    let local = local_forms(edge, forms);
    let mults = codim2_multiplicity_multiset(&local);
    let fermat = detect_fermat(edge.multiplicity, &edge.profile, &mults);
    LocalType {
        degree: edge.multiplicity,
        profile: edge.profile.clone(),
        codim2_multiplicities: mults,
        fermat_parameter: fermat,
    }
}

impl Lattice {
    pub fn build(arr: &Arrangement) -> Result<Lattice, ArrangementError> {
        Lattice::build_with(arr, &LatticeOptions::default())
    }

    pub fn build_with(
        arr: &Arrangement,
        opts: &LatticeOptions,
    ) -> Result<Lattice, ArrangementError> {
        let forms: Vec<Vec<CycloElement>> = arr
            .hyperplanes()
            .iter()
            .map(|h| h.coeffs().to_vec())
            .collect();
        let d = forms.len();

        // Codimension 2: group hyperplane pairs by the canonical basis of
        // their span. Any two distinct normalized forms span rank 2.
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
            .collect();
        let keyed: Vec<(BasisKey, Rref)> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let m = MatrixK::from_rows(vec![forms[a].clone(), forms[b].clone()])
                    .expect("forms share the arrangement order");
                let r = m.rref();
                (basis_key(&r.matrix), r)
            })
            .collect();
        let mut flat2: BTreeMap<BasisKey, Rref> = BTreeMap::new();
        for (key, rref) in keyed {
            flat2.entry(key).or_insert(rref);
        }
        let codim2: Vec<Edge> = flat2
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|rref| make_edge(rref, 2, &forms, opts.profile_limit))
            .collect::<Result<_, _>>()?;

        // Codimension 3: every rank-3 flat is the span of a codim-2 basis
        // plus one hyperplane outside it.
        let keyed3: Vec<(BasisKey, Rref)> = codim2
            .par_iter()
            .flat_map_iter(|edge| {
                let rref2 = edge.rref();
                let forms = &forms;
                (0..d).filter_map(move |h| {
                    if rref2.contains(&forms[h]) {
                        return None;
                    }
                    let mut rows = edge.basis.row_vecs();
                    rows.push(forms[h].clone());
                    let r = MatrixK::from_rows(rows).expect("consistent order").rref();
                    debug_assert_eq!(r.rank, 3);
                    Some((basis_key(&r.matrix), r))
                })
            })
            .collect();
        let mut flat3: BTreeMap<BasisKey, Rref> = BTreeMap::new();
        for (key, rref) in keyed3 {
            flat3.entry(key).or_insert(rref);
        }
        let codim3: Vec<Edge> = flat3
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|rref| make_edge(rref, 3, &forms, opts.profile_limit))
            .collect::<Result<_, _>>()?;

        // Incidence j < i by row-space inclusion of the canonical bases.
        let mut incidences: Vec<Incidence> = codim3
            .par_iter()
            .enumerate()
            .flat_map_iter(|(j, e3)| {
                let r3 = e3.rref();
                let codim2 = &codim2;
                (0..codim2.len())
                    .filter(move |&i| r3.contains_rows(&codim2[i].basis))
                    .map(move |i| Incidence {
                        j,
                        i,
                        transversal: e3.multiplicity - codim2[i].multiplicity,
                    })
            })
            .collect();
        incidences.sort_by_key(|inc| (inc.j, inc.i));

        let mut incident3_of = vec![Vec::new(); codim2.len()];
        for inc in &incidences {
            incident3_of[inc.i].push(inc.j);
        }
        for list in &mut incident3_of {
            list.sort_unstable();
        }

        let locals: Vec<LocalType> = codim3
            .par_iter()
            .map(|e| local_type_of(e, &forms))
            .collect();

        Ok(Lattice {
            codim2,
            codim3,
            incidences,
            incident3_of,
            locals,
        })
    }

    /// gcd of m_i and the multiplicities of all incident codim-3 edges.
    pub fn e_gcd(&self, i: usize) -> Result<u64, ArrangementError> {
        let incident = &self.incident3_of[i];
        if incident.is_empty() {
            return Err(ArrangementError::NoIncidentEdges);
        }
        let mut g = self.codim2[i].multiplicity as u64;
        for &j in incident {
            g = num_integer::gcd(g, self.codim3[j].multiplicity as u64);
        }
        Ok(g)
    }

    /// Index of the codim-3 edge whose flat is the line spanned by `point`,
    /// if that line is a flat of the lattice.
    pub fn codim3_edge_through(&self, point: &[Rational]) -> Option<usize> {
        self.codim3.iter().position(|e| {
            (0..e.basis.rows()).all(|r| {
                let mut acc = CycloElement::zero(e.basis.order());
                for (c, x) in point.iter().enumerate() {
                    acc = acc.add(&e.basis.get(r, c).scale(x));
                }
                acc.is_zero()
            })
        })
    }
}

/// (support size, multiplicity, profile) class census of a list of edges,
/// as a sorted list of distinct classes. Used by table checks and tests.
pub fn edge_classes(edges: &[Edge]) -> Vec<(usize, usize, Vec<usize>)> {
    let mut classes: Vec<(usize, usize, Vec<usize>)> = edges
        .iter()
        .map(|e| (e.support_size, e.multiplicity, e.profile.clone()))
        .collect();
    classes.sort();
    classes.dedup();
    classes
}
