//! Constructive descriptions of open subsets of R^n with exact membership,
//! and extraction of the obstacle set (the complement) when it is a finite
//! union of points, closed balls, and closed half-spaces.

use serde_json::Value;

use crate::error::{Error, Result};

/// Tree of primitives and boolean combinators describing an open U in R^n.
#[derive(Debug, Clone)]
pub enum RegionNode {
    All,
    /// Open ball {w : |w - center| < radius}.
    Ball { center: Vec<f64>, radius: f64 },
    /// A single point, used under Complement to puncture the space.
    Point(Vec<f64>),
    /// Open half-space {w : normal . w > offset}.
    HalfSpace { normal: Vec<f64>, offset: f64 },
    Union(Vec<RegionNode>),
    Intersection(Vec<RegionNode>),
    Complement(Box<RegionNode>),
}

#[derive(Debug, Clone)]
pub struct RegionExpr {
    pub dimension: usize,
    pub root: RegionNode,
}

/// An obstacle: a piece of the closed complement of U.
#[derive(Debug, Clone)]
pub enum Obstacle {
    Point(Vec<f64>),
    /// Closed ball of the given center and radius.
    Ball { center: Vec<f64>, radius: f64 },
    /// Closed half-space {w : normal . w <= offset} (the complement of an
    /// open half-space primitive).
    HalfSpaceComplement { normal: Vec<f64>, offset: f64 },
}

impl Obstacle {
    pub fn describe(&self) -> String {
        match self {
            Obstacle::Point(p) => format!("point {:?}", p),
            Obstacle::Ball { center, radius } => {
                format!("closed ball center {:?} radius {}", center, radius)
            }
            Obstacle::HalfSpaceComplement { normal, offset } => {
                format!("half-space complement normal {:?} offset {}", normal, offset)
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl RegionNode {
    /// Exact membership of a real point (strict inequalities for the open
    /// primitives, so no tolerance is involved).
    pub fn contains(&self, w: &[f64]) -> bool {
        match self {
            RegionNode::All => true,
            RegionNode::Ball { center, radius } => dist_sq(w, center) < radius * radius,
            RegionNode::Point(p) => dist_sq(w, p) == 0.0,
            RegionNode::HalfSpace { normal, offset } => dot(normal, w) > *offset,
            RegionNode::Union(children) => children.iter().any(|c| c.contains(w)),
            RegionNode::Intersection(children) => children.iter().all(|c| c.contains(w)),
            RegionNode::Complement(child) => !child.contains(w),
        }
    }

    fn check_dims(&self, n: usize) -> Result<()> {
        let ok = |v: &Vec<f64>| v.len() == n;
        match self {
            RegionNode::All => Ok(()),
            RegionNode::Ball { center, radius } => {
                if !ok(center) {
                    return Err(Error::DimensionMismatch { left: center.len(), right: n });
                }
                if *radius <= 0.0 {
                    return Err(Error::InvalidParameter("ball radius must be positive".into()));
                }
                Ok(())
            }
            RegionNode::Point(p) => {
                if !ok(p) {
                    return Err(Error::DimensionMismatch { left: p.len(), right: n });
                }
                Ok(())
            }
            RegionNode::HalfSpace { normal, .. } => {
                if !ok(normal) {
                    return Err(Error::DimensionMismatch { left: normal.len(), right: n });
                }
                Ok(())
            }
            RegionNode::Union(cs) | RegionNode::Intersection(cs) => {
                cs.iter().try_for_each(|c| c.check_dims(n))
            }
            RegionNode::Complement(c) => c.check_dims(n),
        }
    }

    /// Express this node, assumed to describe U, as R^n minus a finite union
    /// of obstacles. Errors outside the supported class.
    fn obstacles(&self, out: &mut Vec<Obstacle>) -> Result<()> {
        match self {
            RegionNode::All => Ok(()),
            RegionNode::HalfSpace { normal, offset } => {
                out.push(Obstacle::HalfSpaceComplement {
                    normal: normal.clone(),
                    offset: *offset,
                });
                Ok(())
            }
            RegionNode::Intersection(children) => {
                children.iter().try_for_each(|c| c.obstacles(out))
            }
            RegionNode::Complement(child) => match child.as_ref() {
                RegionNode::Point(p) => {
                    out.push(Obstacle::Point(p.clone()));
                    Ok(())
                }
                RegionNode::Ball { center, radius } => {
                    out.push(Obstacle::Ball {
                        center: center.clone(),
                        radius: *radius,
                    });
                    Ok(())
                }
                RegionNode::Union(children) => {
                    // complement of a union is the intersection of complements
                    children
                        .iter()
                        .try_for_each(|c| RegionNode::Complement(Box::new(c.clone())).obstacles(out))
                }
                other => Err(Error::UnsupportedRegion(format!(
                    "complement of {:?} is not a point/ball/half-space obstacle",
                    region_kind(other)
                ))),
            },
            other => Err(Error::UnsupportedRegion(format!(
                "node {:?} does not decompose into obstacles",
                region_kind(other)
            ))),
        }
    }
}

fn region_kind(node: &RegionNode) -> &'static str {
    match node {
        RegionNode::All => "all",
        RegionNode::Ball { .. } => "ball",
        RegionNode::Point(_) => "point",
        RegionNode::HalfSpace { .. } => "halfspace",
        RegionNode::Union(_) => "union",
        RegionNode::Intersection(_) => "intersection",
        RegionNode::Complement(_) => "complement",
    }
}

impl RegionExpr {
    pub fn new(dimension: usize, root: RegionNode) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidParameter("dimension must be >= 2".into()));
        }
        root.check_dims(dimension)?;
        Ok(RegionExpr { dimension, root })
    }

    pub fn contains(&self, w: &[f64]) -> Result<bool> {
        if w.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                left: w.len(),
                right: self.dimension,
            });
        }
        Ok(self.root.contains(w))
    }

    /// The obstacle list such that U = R^n minus their union, when the tree
    /// falls in the supported class.
    pub fn obstacles(&self) -> Result<Vec<Obstacle>> {
        let mut out = Vec::new();
        self.root.obstacles(&mut out)?;
        Ok(out)
    }

    /// Parse the JSON schema {"dimension": n, "region": <node>}.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Usage("region file must be a JSON object".into()))?;
        let dimension = obj
            .get("dimension")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Usage("missing integer field \"dimension\"".into()))?
            as usize;
        let region = obj
            .get("region")
            .ok_or_else(|| Error::Usage("missing field \"region\"".into()))?;
        RegionExpr::new(dimension, parse_node(region)?)
    }
}

fn parse_real_vec(v: &Value) -> Result<Vec<f64>> {
    v.as_array()
        .map(|a| a.iter().map(|x| x.as_f64()).collect::<Option<Vec<_>>>())
        .flatten()
        .ok_or_else(|| Error::Usage("expected an array of numbers".into()))
}

fn parse_node(value: &Value) -> Result<RegionNode> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Usage("region node must be a JSON object".into()))?;
    if obj.len() != 1 {
        return Err(Error::Usage(
            "region node must have exactly one key".into(),
        ));
    }
    let (key, val) = obj.iter().next().unwrap();
    match key.as_str() {
        "all" => Ok(RegionNode::All),
        "ball" => {
            let b = val
                .as_object()
                .ok_or_else(|| Error::Usage("\"ball\" must be an object".into()))?;
            let center = parse_real_vec(
                b.get("center")
                    .ok_or_else(|| Error::Usage("ball missing \"center\"".into()))?,
            )?;
            let radius = b
                .get("radius")
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Usage("ball missing numeric \"radius\"".into()))?;
            Ok(RegionNode::Ball { center, radius })
        }
        "point" => Ok(RegionNode::Point(parse_real_vec(val)?)),
        "halfspace" => {
            let h = val
                .as_object()
                .ok_or_else(|| Error::Usage("\"halfspace\" must be an object".into()))?;
            let normal = parse_real_vec(
                h.get("normal")
                    .ok_or_else(|| Error::Usage("halfspace missing \"normal\"".into()))?,
            )?;
            let offset = h
                .get("offset")
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Usage("halfspace missing numeric \"offset\"".into()))?;
            Ok(RegionNode::HalfSpace { normal, offset })
        }
        "union" => {
            let items = val
                .as_array()
                .ok_or_else(|| Error::Usage("\"union\" must be an array".into()))?;
            Ok(RegionNode::Union(
                items.iter().map(parse_node).collect::<Result<Vec<_>>>()?,
            ))
        }
        "intersection" => {
            let items = val
                .as_array()
                .ok_or_else(|| Error::Usage("\"intersection\" must be an array".into()))?;
            Ok(RegionNode::Intersection(
                items.iter().map(parse_node).collect::<Result<Vec<_>>>()?,
            ))
        }
        "complement" => Ok(RegionNode::Complement(Box::new(parse_node(val)?))),
        other => Err(Error::Usage(format!("unknown region node \"{}\"", other))),
    }
}

/// R^n minus a single point obstacle, the running example domain.
pub fn punctured_space(dimension: usize, puncture: Vec<f64>) -> Result<RegionExpr> {
    RegionExpr::new(
        dimension,
        RegionNode::Complement(Box::new(RegionNode::Point(puncture))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctured_space_membership() {
        let u = punctured_space(4, vec![0.0; 4]).unwrap();
        assert!(u.contains(&[1.0, 0.0, 0.0, 0.0]).unwrap());
        assert!(!u.contains(&[0.0; 4]).unwrap());
    }

    #[test]
    fn obstacle_extraction() {
        let u = RegionExpr::new(
            3,
            RegionNode::Intersection(vec![
                RegionNode::Complement(Box::new(RegionNode::Ball {
                    center: vec![1.0, 0.0, 0.0],
                    radius: 0.5,
                })),
                RegionNode::HalfSpace {
                    normal: vec![0.0, 0.0, 1.0],
                    offset: -2.0,
                },
            ]),
        )
        .unwrap();
        let obs = u.obstacles().unwrap();
        assert_eq!(obs.len(), 2);
    }

    #[test]
    fn unsupported_region_errors() {
        let u = RegionExpr::new(
            2,
            RegionNode::Union(vec![RegionNode::All, RegionNode::All]),
        )
        .unwrap();
        assert!(u.obstacles().is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dimension": 4, "region": {"complement": {"union": [
            {"point": [0.0, 0.0, 0.0, 0.0]},
            {"ball": {"center": [3.0, 0.0, 0.0, 0.0], "radius": 1.0}}
        ]}}}"#;
        let v: Value = serde_json::from_str(text).unwrap();
        let u = RegionExpr::from_json(&v).unwrap();
        assert_eq!(u.obstacles().unwrap().len(), 2);
        assert!(u.contains(&[1.0, 0.0, 0.0, 0.0]).unwrap());
        assert!(!u.contains(&[3.5, 0.0, 0.0, 0.0]).unwrap());
    }
}
