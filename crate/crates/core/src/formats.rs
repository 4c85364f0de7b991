//! JSON input formats.
//!
//! Rationals are written either as JSON integers or as strings `"p/q"`.
//! Matrices are dense lists of rows; their shapes follow from the declared dimensions.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::curve::{CurveProfile, Modulus};
use crate::graph::Multigraph;
use crate::hodge::{ClemensSchmidBlock, ClemensSchmidData, DoubleComplex, Grid, StrataData};
use crate::linalg::RatMatrix;
use crate::motive::WeightBundle;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalJson::Int(v) => Ok(crate::int(*v)),
            RationalJson::Text(s) => {
                s.trim().parse::<Rational>().map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
            }
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        if r.denom().is_one() {
            if let Some(v) = r.numer().to_i64() {
                return RationalJson::Int(v);
            }
        }
        RationalJson::Text(r.to_string())
    }
}

fn rationals(values: &[RationalJson]) -> Result<Vec<Rational>> {
    values.iter().map(RationalJson::to_rational).collect()
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// `{"vertices": 3, "edges": [[0, 1], ...], "vertex_weights": [...], "edge_weights": [...]}`.
///
/// `vertex_weights` are the `beta_v`; both weight lists are optional and default to one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_weights: Option<Vec<RationalJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_weights: Option<Vec<RationalJson>>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        GraphFile {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|e| [e.tail, e.head]).collect(),
            vertex_weights: None,
            edge_weights: None,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn graph(&self) -> Result<Multigraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Multigraph::new(self.vertices, &edges)
    }

    pub fn weights(&self, g: &Multigraph) -> Result<WeightBundle> {
        let beta = match &self.vertex_weights {
            Some(v) => rationals(v)?,
            None => vec![Rational::one(); g.vertex_count()],
        };
        let w = match &self.edge_weights {
            Some(v) => rationals(v)?,
            None => vec![Rational::one(); g.edge_count()],
        };
        if beta.len() != g.vertex_count() || w.len() != g.edge_count() {
            return Err(Error::InvalidWeights(format!(
                "{} vertex and {} edge weights for a graph with {} vertices and {} edges",
                beta.len(),
                w.len(),
                g.vertex_count(),
                g.edge_count()
            )));
        }
        WeightBundle::new(beta, w)
    }
}

/// `{"genus": 0, "modulus": [["P1", 2], ["P2", 1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub genus: u32,
    #[serde(default)]
    pub modulus: Vec<(String, u32)>,
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn profile(&self) -> Result<CurveProfile> {
        Ok(CurveProfile::new(self.genus, Modulus::new(self.modulus.clone())?))
    }
}

pub type MatrixJson = Vec<Vec<RationalJson>>;

fn matrix_from_json(m: &MatrixJson, rows: usize, cols: usize, what: &str) -> Result<RatMatrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        let found_cols = m.first().map_or(0, Vec::len);
        return Err(Error::Shape(format!(
            "{what}: expected {rows}x{cols} matrix, found {} rows of length {found_cols}",
            m.len()
        )));
    }
    let data = m.iter().map(|r| rationals(r)).collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows_with_cols(data, cols)
}

pub fn matrix_to_json(m: &RatMatrix) -> MatrixJson {
    m.to_rows().iter().map(|r| r.iter().map(RationalJson::from_rational).collect()).collect()
}

/// A map at grid position `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub p: usize,
    pub q: usize,
    pub matrix: MatrixJson,
}

fn grid_dim(dims: &Grid, p: usize, q: usize) -> usize {
    dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
}

fn map_entries(
    entries: &[MapEntry],
    dims: &Grid,
    dp: usize,
    dq: usize,
    what: &str,
) -> Result<BTreeMap<(usize, usize), RatMatrix>> {
    let mut out = BTreeMap::new();
    for e in entries {
        let label = format!("{what} at ({}, {})", e.p, e.q);
        let m = matrix_from_json(&e.matrix, grid_dim(dims, e.p + dp, e.q + dq), grid_dim(dims, e.p, e.q), &label)?;
        if out.insert((e.p, e.q), m).is_some() {
            return Err(Error::Parse(format!("{label} given twice")));
        }
    }
    Ok(out)
}

fn entries_from_maps(maps: impl Iterator<Item = ((usize, usize), RatMatrix)>) -> Vec<MapEntry> {
    maps.filter(|(_, m)| !m.is_zero()).map(|((p, q), m)| MapEntry { p, q, matrix: matrix_to_json(&m) }).collect()
}

/// `{"dims": [[..], ..], "horizontal": [{"p", "q", "matrix"}], "vertical": [...]}`.
///
/// `dims[p][q]` is the dimension at column `p`, row `q`. `horizontal` maps
/// `(p, q) -> (p+1, q)` and `vertical` maps `(p, q) -> (p, q+1)`; missing maps are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleComplexFile {
    pub dims: Grid,
    #[serde(default)]
    pub horizontal: Vec<MapEntry>,
    #[serde(default)]
    pub vertical: Vec<MapEntry>,
}

impl DoubleComplexFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn complex(&self) -> Result<DoubleComplex> {
        let h = map_entries(&self.horizontal, &self.dims, 1, 0, "horizontal map")?;
        let v = map_entries(&self.vertical, &self.dims, 0, 1, "vertical map")?;
        DoubleComplex::new(self.dims.clone(), h, v)
    }

    pub fn from_complex(dc: &DoubleComplex) -> Self {
        let (w, h) = (dc.width(), dc.height());
        let cells = || (0..w).flat_map(move |p| (0..h).map(move |q| (p, q)));
        DoubleComplexFile {
            dims: dc.dims().clone(),
            horizontal: entries_from_maps(
                cells().filter(|&(p, _)| p + 1 < w).map(|(p, q)| ((p, q), dc.dh(p, q).clone())),
            ),
            vertical: entries_from_maps(
                cells().filter(|&(_, q)| q + 1 < h).map(|(p, q)| ((p, q), dc.dv(p, q).clone())),
            ),
        }
    }
}

/// `{"betti": [[b_0(D1), b_1(D1), ..], [b_0(D2), ..], ..], "restriction": [{"p", "q", "matrix"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataFile {
    pub betti: Grid,
    #[serde(default)]
    pub restriction: Vec<MapEntry>,
}

impl StrataFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn strata(&self) -> Result<StrataData> {
        let r = map_entries(&self.restriction, &self.betti, 1, 0, "restriction map")?;
        Ok(StrataData::new(self.betti.clone(), r))
    }

    pub fn from_strata(s: &StrataData) -> Self {
        StrataFile { betti: s.betti.clone(), restriction: entries_from_maps(s.restriction.clone().into_iter()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClemensSchmidBlockFile {
    pub degree: usize,
    pub homology_dim: usize,
    pub special_dim: usize,
    pub nearby_dim: usize,
    pub alpha: MatrixJson,
    pub restriction: MatrixJson,
    pub monodromy_log: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<MatrixJson>,
}

/// `{"relative_dim": n, "blocks": [...]}`. Block `j` ends with `beta` into the
/// homology node of block `j+1`; the final block has no `beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClemensSchmidFile {
    pub relative_dim: usize,
    pub blocks: Vec<ClemensSchmidBlockFile>,
}

impl ClemensSchmidFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn data(&self) -> Result<ClemensSchmidData> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (j, b) in self.blocks.iter().enumerate() {
            let m = b.degree;
            let beta = match &b.beta {
                Some(beta) => {
                    let next = self.blocks.get(j + 1).map_or(0, |n| n.homology_dim);
                    Some(matrix_from_json(beta, next, b.nearby_dim, &format!("beta in degree {m}"))?)
                }
                None => None,
            };
            blocks.push(ClemensSchmidBlock {
                degree: m,
                homology_dim: b.homology_dim,
                special_dim: b.special_dim,
                nearby_dim: b.nearby_dim,
                alpha: matrix_from_json(&b.alpha, b.special_dim, b.homology_dim, &format!("alpha in degree {m}"))?,
                restriction: matrix_from_json(
                    &b.restriction,
                    b.nearby_dim,
                    b.special_dim,
                    &format!("restriction in degree {m}"),
                )?,
                monodromy_log: matrix_from_json(
                    &b.monodromy_log,
                    b.nearby_dim,
                    b.nearby_dim,
                    &format!("N in degree {m}"),
                )?,
                beta,
            });
        }
        Ok(ClemensSchmidData { relative_dim: self.relative_dim, blocks })
    }

    pub fn from_data(d: &ClemensSchmidData) -> Self {
        ClemensSchmidFile {
            relative_dim: d.relative_dim,
            blocks: d
                .blocks
                .iter()
                .map(|b| ClemensSchmidBlockFile {
                    degree: b.degree,
                    homology_dim: b.homology_dim,
                    special_dim: b.special_dim,
                    nearby_dim: b.nearby_dim,
                    alpha: matrix_to_json(&b.alpha),
                    restriction: matrix_to_json(&b.restriction),
                    monodromy_log: matrix_to_json(&b.monodromy_log),
                    beta: b.beta.as_ref().map(matrix_to_json),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::fixtures;

    #[test]
    fn graph_round_trip() {
        let text = r#"{"vertices": 3, "edges": [[0,1],[1,2],[2,0]], "vertex_weights": [1, "2", "3/1"]}"#;
        let f = GraphFile::parse(text).unwrap();
        let g = f.graph().unwrap();
        assert_eq!(g.edge_count(), 3);
        let wb = f.weights(&g).unwrap();
        assert_eq!(wb.beta()[2], crate::int(3));
        let again = GraphFile::parse(&GraphFile::from_graph(&g).to_json()).unwrap();
        assert_eq!(again.graph().unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = GraphFile::parse("{\"vertices\": 3,\n \"edges\": [[0,1]\n").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        assert!(GraphFile::parse(r#"{"vertices": 2, "edges": [], "colour": 1}"#).is_err());
        let bad = r#"{"vertices": 2, "edges": [[0,1]], "vertex_weights": ["x", 1]}"#;
        let f = GraphFile::parse(bad).unwrap();
        assert!(f.weights(&f.graph().unwrap()).is_err());
    }

    #[test]
    fn hodge_round_trips() {
        let dc = fixtures::random_degenerate_complex(3, 3, 3);
        let f = DoubleComplexFile::from_complex(&dc);
        assert_eq!(DoubleComplexFile::parse(&f.to_json()).unwrap().complex().unwrap(), dc);

        let s = fixtures::three_planes();
        let back = StrataFile::parse(&StrataFile::from_strata(&s).to_json()).unwrap().strata().unwrap();
        assert_eq!(back, s);

        let cs = fixtures::assembled_clemens_schmid(1, 1, 3);
        let back = ClemensSchmidFile::parse(&ClemensSchmidFile::from_data(&cs).to_json()).unwrap().data().unwrap();
        assert_eq!(back, cs);
    }

    #[test]
    fn wrong_matrix_shape_rejected() {
        let text = r#"{"dims": [[1],[1]], "horizontal": [{"p":0,"q":0,"matrix":[[1,2]]}]}"#;
        let err = DoubleComplexFile::parse(text).unwrap().complex().unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }
}
