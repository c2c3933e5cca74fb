//! File formats: configuration and triangulation JSON, polytope JSON with
//! `num/den` coordinate strings, monotone-path JSON, and OFF export for
//! low-dimensional polytopes.

use crate::mpath::MonotonePathPolytope;
use crate::polytope::Polytope;
use crate::scalar::{fraction_string, parse_fraction, Scalar};
use crate::subdivision::{Cell, PointConfiguration, Subdivision, SubdivisionError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigJson {
    pub lattice_rank: usize,
    pub points: Vec<Vec<i64>>,
}

impl ConfigJson {
    pub fn into_configuration<S: Scalar>(self) -> Result<PointConfiguration<S>, SubdivisionError> {
        PointConfiguration::new(self.lattice_rank, self.points)
    }

    pub fn parse<S: Scalar>(text: &str) -> Result<PointConfiguration<S>, String> {
        let cfg: ConfigJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        cfg.into_configuration().map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellJson {
    pub vertices: Vec<usize>,
    pub marked: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub cells: Vec<CellJson>,
    pub height: Vec<String>,
}

pub fn subdivision_to_json<S: Scalar>(s: &Subdivision<S>) -> TriangulationJson {
    TriangulationJson {
        cells: s
            .cells
            .iter()
            .map(|c| CellJson { vertices: c.vertices.clone(), marked: c.marked.clone() })
            .collect(),
        height: s.height.iter().map(fraction_string).collect(),
    }
}

pub fn subdivision_from_json<S: Scalar>(t: &TriangulationJson) -> Result<Subdivision<S>, String> {
    let mut height = Vec::with_capacity(t.height.len());
    for h in &t.height {
        height.push(parse_fraction(h).ok_or_else(|| format!("bad fraction {h:?}"))?);
    }
    Ok(Subdivision {
        cells: t
            .cells
            .iter()
            .map(|c| Cell { vertices: c.vertices.clone(), marked: c.marked.clone() })
            .collect(),
        height,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<FacetJson>,
}

pub fn polytope_to_json<S: Scalar>(p: &Polytope<S>) -> PolytopeJson {
    PolytopeJson {
        ambient_dim: p.ambient_dim(),
        dim: p.dim(),
        vertices: p
            .vertices()
            .iter()
            .map(|v| v.iter().map(fraction_string).collect())
            .collect(),
        facets: p
            .facets()
            .iter()
            .map(|f| FacetJson {
                normal: f.normal.iter().map(fraction_string).collect(),
                offset: fraction_string(&f.offset),
            })
            .collect(),
        equations: p
            .equations()
            .iter()
            .map(|(n, c)| FacetJson {
                normal: n.iter().map(fraction_string).collect(),
                offset: fraction_string(c),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PathJson {
    pub vertices: Vec<usize>,
    pub coherent: bool,
    pub point: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathsJson {
    pub paths: Vec<PathJson>,
    pub mpp: PolytopeJson,
}

pub fn paths_to_json<S: Scalar>(mpp: &MonotonePathPolytope<S>) -> PathsJson {
    PathsJson {
        paths: mpp
            .paths
            .iter()
            .map(|p| PathJson {
                vertices: p.vertex_sequence.clone(),
                coherent: p.coherent,
                point: p.fiber_point.iter().map(fraction_string).collect(),
            })
            .collect(),
        mpp: polytope_to_json(&mpp.polytope),
    }
}

/// OFF export for polytopes of intrinsic dimension ≤ 3, written in intrinsic
/// coordinates (padded to 3). Faces are the facets with vertices in cyclic
/// order for 3-polytopes.
pub fn polytope_to_off<S: Scalar>(p: &Polytope<S>) -> Result<String, String> {
    let dim = p.dim();
    if dim > 3 {
        return Err(format!("OFF export requires dimension ≤ 3, polytope has dimension {dim}"));
    }
    let chart = p.chart();
    let coords: Vec<Vec<f64>> = p
        .vertices()
        .iter()
        .map(|v| {
            let c = chart.coords(v).expect("vertex lies in its own span");
            let mut xs: Vec<f64> = c.iter().map(|x| x.to_f64()).collect();
            xs.resize(3, 0.0);
            xs
        })
        .collect();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    if dim == 3 {
        for (fi, inc) in p.vertex_facet_incidence().iter().enumerate() {
            faces.push(order_face_cycle(p, fi, inc, &coords));
        }
    } else if dim == 2 {
        // single polygon: order all vertices around the centroid
        faces.push(order_polygon(&coords, &(0..coords.len()).collect::<Vec<_>>()));
    } else if dim == 1 {
        faces.push(vec![0, 1]);
    }
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} 0\n", coords.len(), faces.len()));
    for c in &coords {
        out.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
    }
    for f in &faces {
        out.push_str(&f.len().to_string());
        for v in f {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    Ok(out)
}

fn order_face_cycle<S: Scalar>(
    p: &Polytope<S>,
    facet: usize,
    inc: &[usize],
    coords: &[Vec<f64>],
) -> Vec<usize> {
    // walk the facet's vertices along polytope edges
    let edge_set: std::collections::BTreeSet<(usize, usize)> = p.edges().into_iter().collect();
    let on_facet: std::collections::BTreeSet<usize> = inc.iter().copied().collect();
    let mut cycle = vec![inc[0]];
    let mut prev = usize::MAX;
    while cycle.len() < inc.len() {
        let cur = *cycle.last().unwrap();
        let next = on_facet
            .iter()
            .copied()
            .find(|&w| {
                w != cur
                    && w != prev
                    && (edge_set.contains(&(cur.min(w), cur.max(w))))
                    && !cycle[1..].contains(&w)
            })
            .unwrap_or_else(|| panic!("facet {facet} has a broken edge cycle"));
        prev = cur;
        cycle.push(next);
    }
    let _ = coords;
    cycle
}

fn order_polygon(coords: &[Vec<f64>], idx: &[usize]) -> Vec<usize> {
    let cx: f64 = idx.iter().map(|&i| coords[i][0]).sum::<f64>() / idx.len() as f64;
    let cy: f64 = idx.iter().map(|&i| coords[i][1]).sum::<f64>() / idx.len() as f64;
    let mut sorted = idx.to_vec();
    sorted.sort_by(|&a, &b| {
        let ta = (coords[a][1] - cy).atan2(coords[a][0] - cx);
        let tb = (coords[b][1] - cy).atan2(coords[b][0] - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    sorted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::unit_cube;
    use crate::Rat;

    #[test]
    fn config_round_trip() {
        let text = r#"{"lattice_rank": 1, "points": [[0], [1], [2], [3]]}"#;
        let cfg = ConfigJson::parse::<Rat>(text).unwrap();
        assert_eq!(cfg.len(), 4);
        assert_eq!(cfg.dim(), 1);
        assert!(ConfigJson::parse::<Rat>(r#"{"lattice_rank": 2, "points": [[0,0],[0,0]]}"#).is_err());
    }

    #[test]
    fn polytope_json_shape() {
        let c = unit_cube::<Rat>(2);
        let j = polytope_to_json(&c);
        assert_eq!(j.vertices.len(), 4);
        assert_eq!(j.facets.len(), 4);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"ambient_dim\":2"));
    }

    #[test]
    fn subdivision_json_round_trip() {
        let cfg = crate::subdivision::interval_config::<Rat>(2);
        let t = cfg.placing_triangulation();
        let j = subdivision_to_json(&t);
        let back = subdivision_from_json::<Rat>(&j).unwrap();
        assert!(back.same_cells(&t));
        assert_eq!(back.height, t.height);
    }

    #[test]
    fn off_export_cube() {
        let c = unit_cube::<Rat>(3);
        let off = polytope_to_off(&c).unwrap();
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("8 6 0"));
        assert!(polytope_to_off(&unit_cube::<Rat>(4)).is_err());
    }
}
