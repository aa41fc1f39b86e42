//! Intersection spectra, blocking and minimality tests, pencil counts, and
//! cone recognition.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::objects::{cone, PointSet};
use crate::pg::{Geometry, Subspace};

/// How many `d`-subspaces meet a set in exactly `m` points, for every `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    d: usize,
    by_size: BTreeMap<usize, u64>,
}

impl Spectrum {
    pub fn from_counts(d: usize, by_size: BTreeMap<usize, u64>) -> Self {
        let by_size = by_size.into_iter().filter(|&(_, c)| c > 0).collect();
        Spectrum { d, by_size }
    }

    /// Dimension of the subspaces that were counted.
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn by_size(&self) -> &BTreeMap<usize, u64> {
        &self.by_size
    }

    /// `t_m`, zero for sizes that never occur.
    pub fn count(&self, m: usize) -> u64 {
        self.by_size.get(&m).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.by_size.values().sum()
    }

    /// The intersection numbers, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.by_size.keys().copied().collect()
    }

    fn merge(mut self, other: Spectrum) -> Spectrum {
        for (m, c) in other.by_size {
            *self.by_size.entry(m).or_insert(0) += c;
        }
        self
    }
}

fn check_dim(geometry: &Geometry, d: usize) -> Result<()> {
    if d + 1 > geometry.dim() {
        return Err(Error::WrongDimension { got: d as i64, expected: format!("0..={}", geometry.dim() - 1) });
    }
    Ok(())
}

pub fn spectrum(geometry: &Geometry, set: &PointSet, d: usize) -> Result<Spectrum> {
    spectrum_with_workers(geometry, set, d, 1)
}

/// Same counts as [`spectrum`] for any worker count.
pub fn spectrum_with_workers(geometry: &Geometry, set: &PointSet, d: usize, workers: usize) -> Result<Spectrum> {
    check_dim(geometry, d)?;
    let workers = workers.max(1);
    if d + 1 == geometry.dim() {
        let total = geometry.num_hyperplanes();
        let chunk = total.div_ceil(workers);
        let count_range = |lo: usize, hi: usize| {
            let mut by_size = BTreeMap::new();
            for h in lo..hi {
                *by_size.entry(geometry.incidence(h).intersection_count(set.bits())).or_insert(0) += 1;
            }
            Spectrum { d, by_size }
        };
        if workers == 1 {
            return Ok(count_range(0, total));
        }
        let parts: Vec<Spectrum> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let (lo, hi) = ((w * chunk).min(total), ((w + 1) * chunk).min(total));
                    s.spawn(move || count_range(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        return Ok(parts.into_iter().fold(Spectrum { d, ..Default::default() }, Spectrum::merge));
    }
    let parts = geometry.scan_subspaces(
        d,
        workers,
        || Spectrum { d, by_size: BTreeMap::new() },
        |acc, pts| {
            let m = pts.iter().filter(|&&p| set.contains(p)).count();
            *acc.by_size.entry(m).or_insert(0) += 1;
            ControlFlow::Continue(())
        },
    );
    Ok(parts.into_iter().fold(Spectrum { d, ..Default::default() }, Spectrum::merge))
}

pub fn is_blocking(geometry: &Geometry, set: &PointSet, d: usize) -> Result<bool> {
    is_blocking_with_workers(geometry, set, d, 1)
}

/// True iff every `d`-subspace meets the set. Stops at the first miss.
pub fn is_blocking_with_workers(geometry: &Geometry, set: &PointSet, d: usize, workers: usize) -> Result<bool> {
    check_dim(geometry, d)?;
    if d + 1 == geometry.dim() {
        return Ok((0..geometry.num_hyperplanes()).all(|h| !geometry.incidence(h).is_disjoint(set.bits())));
    }
    let parts = geometry.scan_subspaces(
        d,
        workers,
        || true,
        |blocked, pts| {
            if pts.iter().any(|&p| set.contains(p)) {
                ControlFlow::Continue(())
            } else {
                *blocked = false;
                ControlFlow::Break(())
            }
        },
    );
    Ok(parts.into_iter().all(|b| b))
}

/// Points whose removal leaves some `d`-subspace unblocked. A point is
/// essential exactly when some `d`-subspace meets the set in that point only.
pub fn essential_points(geometry: &Geometry, set: &PointSet, d: usize) -> Result<PointSet> {
    check_dim(geometry, d)?;
    let n_points = geometry.num_points();
    // (missed some subspace, essential points seen)
    let parts = geometry.scan_subspaces(
        d,
        1,
        || (false, BitSet::new(n_points)),
        |(missed, ess), pts| {
            let mut hits = pts.iter().filter(|&&p| set.contains(p));
            match (hits.next(), hits.next()) {
                (None, _) => {
                    *missed = true;
                    ControlFlow::Break(())
                }
                (Some(&p), None) => {
                    ess.insert(p);
                    ControlFlow::Continue(())
                }
                _ => ControlFlow::Continue(()),
            }
        },
    );
    let mut essential = BitSet::new(n_points);
    for (missed, ess) in parts {
        if missed {
            return Err(Error::NotBlocking(d));
        }
        essential.union_with(&ess);
    }
    Ok(PointSet::from_bitset(essential))
}

/// Intersection sizes of the `q + 1` hyperplanes through an `(n-2)`-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilProfile {
    pub axis: Subspace,
    pub u: BTreeMap<usize, u64>,
}

impl PencilProfile {
    /// `u_m`: hyperplanes of the pencil meeting the set in `m` points.
    pub fn u(&self, m: usize) -> u64 {
        self.u.get(&m).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.u.values().sum()
    }
}

/// Indices of the hyperplanes containing `subspace`.
pub fn hyperplanes_through(geometry: &Geometry, subspace: &Subspace) -> Vec<usize> {
    (0..geometry.num_hyperplanes()).filter(|&h| subspace.points().is_subset(geometry.incidence(h))).collect()
}

pub fn pencil_counts(geometry: &Geometry, set: &PointSet, axis: &Subspace) -> Result<PencilProfile> {
    let n = geometry.dim() as i64;
    if axis.dim() != n - 2 {
        return Err(Error::WrongDimension { got: axis.dim(), expected: format!("{}", n - 2) });
    }
    let mut u = BTreeMap::new();
    for h in hyperplanes_through(geometry, axis) {
        *u.entry(geometry.incidence(h).intersection_count(set.bits())).or_insert(0) += 1;
    }
    let profile = PencilProfile { axis: axis.clone(), u };
    debug_assert_eq!(profile.total(), geometry.order() + 1);
    Ok(profile)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRecognition {
    /// Span of all cone points; empty when there are none.
    pub vertex: Subspace,
    /// Complement of the vertex chosen greedily in point order.
    pub base_ambient: Subspace,
    pub base: PointSet,
    pub is_cone_over_vertex: bool,
}

/// Points `P` of the set such that every line joining `P` to another member
/// lies inside the set.
pub fn cone_points(geometry: &Geometry, set: &PointSet) -> PointSet {
    let n_points = geometry.num_points();
    let mut out = PointSet::empty(geometry);
    let mut seen = BitSet::new(n_points);
    'candidates: for p in set.iter() {
        seen.clear();
        seen.insert(p);
        for x in set.iter() {
            if seen.contains(x) {
                continue;
            }
            let line = geometry.span(&[p, x]).expect("valid indices");
            if !line.points().is_subset(set.bits()) {
                continue 'candidates;
            }
            seen.union_with(line.points());
        }
        out.insert(p);
    }
    out
}

/// Greedy complement of `vertex`: adds points in index order whenever they
/// raise the dimension, until the whole space is spanned.
pub fn complement(geometry: &Geometry, vertex: &Subspace) -> Subspace {
    let n = geometry.dim() as i64;
    let mut whole = vertex.clone();
    let mut chosen: Vec<usize> = Vec::new();
    for p in 0..geometry.num_points() {
        if whole.dim() == n {
            break;
        }
        if whole.contains(p) {
            continue;
        }
        chosen.push(p);
        let mut rows = whole.basis().to_vec();
        rows.push(geometry.point(p).to_vec());
        whole = geometry.span_vectors(&rows);
    }
    geometry.span(&chosen).expect("valid indices")
}

pub fn recognize_cone(geometry: &Geometry, set: &PointSet) -> ConeRecognition {
    let vertex = geometry.span_of_set(cone_points(geometry, set).bits());
    let base_ambient = complement(geometry, &vertex);
    let mut base_bits = set.bits().clone();
    base_bits.intersect_with(base_ambient.points());
    let base = PointSet::from_bitset(base_bits);
    let is_cone_over_vertex =
        vertex.points().is_subset(set.bits()) && cone(geometry, &vertex, &base).map(|k| &k == set).unwrap_or(false);
    ConeRecognition { vertex, base_ambient, base, is_cone_over_vertex }
}
