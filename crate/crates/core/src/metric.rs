//! Rational-valued metrics on finite point sets and their entourage
//! uniformities.

use std::fmt;
use std::sync::OnceLock;

use num::BigRational;
use num::Zero;

use crate::error::{CoreError, Result};
use crate::frame::FiniteFrame;
use crate::hom::FrameHom;
use crate::relation::{ProductFrame, Relation};
use crate::uniform::PreUniformLocale;

/// A finite pre-metric space with exact rational distances: symmetric, zero
/// on the diagonal, triangle inequality. Distinct points at distance zero
/// are allowed.
#[derive(Clone)]
pub struct MetricSpace {
    points: Vec<String>,
    dist: Vec<Vec<BigRational>>,
    frame: OnceLock<FiniteFrame>,
}

impl PartialEq for MetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.dist == other.dist
    }
}
impl Eq for MetricSpace {}

impl MetricSpace {
    pub fn new(points: Vec<String>, dist: Vec<Vec<BigRational>>) -> Result<MetricSpace> {
        let n = points.len();
        assert_eq!(dist.len(), n, "distance table shape");
        for row in &dist {
            assert_eq!(row.len(), n, "distance table shape");
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(CoreError::MetricAxiom {
                    axiom: "d(x,x) = 0".into(),
                    x: points[i].clone(),
                    y: points[i].clone(),
                    z: points[i].clone(),
                });
            }
            for j in 0..n {
                if dist[i][j] < BigRational::zero() {
                    return Err(CoreError::MetricAxiom {
                        axiom: "d ≥ 0".into(),
                        x: points[i].clone(),
                        y: points[j].clone(),
                        z: points[j].clone(),
                    });
                }
                if dist[i][j] != dist[j][i] {
                    return Err(CoreError::MetricAxiom {
                        axiom: "d(x,y) = d(y,x)".into(),
                        x: points[i].clone(),
                        y: points[j].clone(),
                        z: points[j].clone(),
                    });
                }
                for k in 0..n {
                    if dist[i][k] > &dist[i][j] + &dist[j][k] {
                        return Err(CoreError::MetricAxiom {
                            axiom: "d(x,z) ≤ d(x,y) + d(y,z)".into(),
                            x: points[i].clone(),
                            y: points[j].clone(),
                            z: points[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(MetricSpace {
            points,
            dist,
            frame: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn distance(&self, i: usize, j: usize) -> &BigRational {
        &self.dist[i][j]
    }

    /// Discrete frame on the points.
    pub fn frame(&self) -> FiniteFrame {
        self.frame
            .get_or_init(|| {
                let names: Vec<&str> = self.points.iter().map(|s| s.as_str()).collect();
                FiniteFrame::discrete(&names)
            })
            .clone()
    }
}

impl fmt::Debug for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MetricSpace[{}]", self.points.join(", "))
    }
}

/// The metric uniformity on the discrete frame of points.
pub struct MetricStructure {
    pub space: MetricSpace,
    pub frame: FiniteFrame,
    /// Canonical finite threshold set: the distinct positive distances with
    /// their halves and quarters, so each base entourage keeps a
    /// half-composition witness in the base.
    pub thresholds: Vec<BigRational>,
    pub structure: PreUniformLocale,
}

impl MetricStructure {
    /// `E_q` as a relation on the structure's square, for any `q`.
    pub fn entourage_at(&self, q: &BigRational) -> Relation {
        entourage_at(&self.space, self.structure.square(), q)
    }
}

fn entourage_at(space: &MetricSpace, square: &ProductFrame, q: &BigRational) -> Relation {
    let n = space.len();
    let pairs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| space.distance(i, j) < q);
    Relation::from_pairs(square, pairs)
}

/// Canonical thresholds plus the entourage base `{E_q}` they generate.
pub fn metric_uniformity(space: &MetricSpace) -> Result<MetricStructure> {
    let frame = space.frame();
    let square = ProductFrame::square(&frame)?;
    let mut thresholds: Vec<BigRational> = Vec::new();
    let push = |q: BigRational, out: &mut Vec<BigRational>| {
        if q > BigRational::zero() && !out.contains(&q) {
            out.push(q);
        }
    };
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    for i in 0..space.len() {
        for j in 0..i {
            let d = space.distance(i, j).clone();
            push(d.clone(), &mut thresholds);
            push(d.clone() / &two, &mut thresholds);
            push(d / &four, &mut thresholds);
        }
    }
    if thresholds.is_empty() {
        thresholds.push(BigRational::from_integer(1.into()));
    }
    thresholds.sort();
    let base = thresholds
        .iter()
        .map(|q| entourage_at(space, &square, q))
        .collect();
    let structure = PreUniformLocale::from_entourage_base(&frame, base)?;
    Ok(MetricStructure {
        space: space.clone(),
        frame,
        thresholds,
        structure,
    })
}

/// A point map between finite metric spaces, as the frame map of the induced
/// locale map: each target point pulls back to its fibre.
pub fn point_map_hom(
    source: &MetricStructure,
    target: &MetricStructure,
    assignment: &[usize],
) -> Result<FrameHom> {
    assert_eq!(assignment.len(), source.space.len());
    let images = (0..target.space.len())
        .map(|j| {
            source
                .frame
                .element((0..source.space.len()).filter(|&i| assignment[i] == j))
        })
        .collect();
    FrameHom::try_new(&target.frame, &source.frame, images)
}

/// Nonexpansive: never increases distances.
pub fn is_nonexpansive(source: &MetricSpace, target: &MetricSpace, assignment: &[usize]) -> bool {
    (0..source.len()).all(|i| {
        (0..source.len())
            .all(|j| target.distance(assignment[i], assignment[j]) <= source.distance(i, j))
    })
}
