//! Constructions of the point sets under study: subspaces, Baer
//! subgeometries, Hermitian unitals, hyperovals, Denniston maximal arcs, and
//! cones over any of them.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::pg::{Geometry, Subspace};

/// A set of points of a fixed geometry, stored as a bitset over point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: BitSet,
    k: usize,
}

impl PointSet {
    pub fn empty(geometry: &Geometry) -> Self {
        Self::from_bitset(BitSet::new(geometry.num_points()))
    }

    pub fn full(geometry: &Geometry) -> Self {
        Self::from_bitset(BitSet::full(geometry.num_points()))
    }

    pub fn from_bitset(bits: BitSet) -> Self {
        let k = bits.count();
        PointSet { bits, k }
    }

    pub fn from_indices(geometry: &Geometry, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let len = geometry.num_points();
        let mut bits = BitSet::new(len);
        for i in indices {
            if i >= len {
                return Err(Error::PointOutOfRange { index: i, len });
            }
            bits.insert(i);
        }
        Ok(Self::from_bitset(bits))
    }

    pub fn from_subspace(subspace: &Subspace) -> Self {
        Self::from_bitset(subspace.points().clone())
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    /// Cardinality `k`.
    #[inline]
    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn contains(&self, point: usize) -> bool {
        self.bits.contains(point)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn insert(&mut self, point: usize) {
        if self.bits.insert(point) {
            self.k += 1;
        }
    }

    pub fn remove(&mut self, point: usize) {
        if self.bits.remove(point) {
            self.k -= 1;
        }
    }

    pub fn without(&self, point: usize) -> Self {
        let mut out = self.clone();
        out.remove(point);
        out
    }

    pub fn union(&self, other: &PointSet) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self::from_bitset(bits)
    }

    /// Coordinate vectors of the members, in index order.
    pub fn vectors<'g>(&'g self, geometry: &'g Geometry) -> impl Iterator<Item = &'g [Elem]> + 'g {
        self.iter().map(move |i| geometry.point(i))
    }
}

/// Vertex, the subspace holding the base, and the base itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescriptor {
    pub vertex: Subspace,
    pub base_ambient: Subspace,
    pub base: PointSet,
}

impl ConeDescriptor {
    pub fn new(geometry: &Geometry, vertex: Subspace, base_ambient: Subspace, base: PointSet) -> Result<Self> {
        if !vertex.points().is_disjoint(base_ambient.points())
            || geometry.join(&vertex, &base_ambient).dim() != vertex.dim() + base_ambient.dim() + 1
        {
            return Err(Error::VertexBaseNotDisjoint);
        }
        if !base.bits().is_subset(base_ambient.points()) {
            return Err(Error::HypothesisViolated("base is not contained in its ambient subspace".into()));
        }
        Ok(ConeDescriptor { vertex, base_ambient, base })
    }

    /// Vertex spanned by the last `r + 1` coordinate axes, base placed in the
    /// span of the first `n - r` axes by `embed_base`.
    pub fn standard(
        geometry: &Geometry,
        r: i64,
        embed_base: impl FnOnce(&Subspace) -> Result<PointSet>,
    ) -> Result<Self> {
        let n = geometry.dim() as i64;
        if r < -1 || r >= n {
            return Err(Error::WrongDimension { got: r, expected: format!("-1..{n}") });
        }
        let vertex = geometry.coordinate_subspace((n - r) as usize..=n as usize);
        let ambient = geometry.coordinate_subspace(0..(n - r) as usize);
        let base = embed_base(&ambient)?;
        Self::new(geometry, vertex, ambient, base)
    }

    pub fn points(&self, geometry: &Geometry) -> Result<PointSet> {
        cone(geometry, &self.vertex, &self.base)
    }
}

/// The vertex together with every line joining a vertex point to a base point.
pub fn cone(geometry: &Geometry, vertex: &Subspace, base: &PointSet) -> Result<PointSet> {
    if vertex.is_empty() {
        return Ok(base.clone());
    }
    let base_span = geometry.span_of_set(base.bits());
    if !base_span.points().is_disjoint(vertex.points())
        || geometry.join(vertex, &base_span).dim() != vertex.dim() + base_span.dim() + 1
    {
        return Err(Error::VertexBaseNotDisjoint);
    }
    let mut out = vertex.points().clone();
    for b in base.iter() {
        let mut rows = vertex.basis().to_vec();
        rows.push(geometry.point(b).to_vec());
        out.union_with(geometry.span_vectors(&rows).points());
    }
    let result = PointSet::from_bitset(out);
    let q = geometry.order() as usize;
    debug_assert_eq!(result.len(), base.len() * q.pow(vertex.dim() as u32 + 1) + geometry.theta(vertex.dim()));
    Ok(result)
}

/// Copies a point set of a smaller geometry into `ambient`, sending the
/// local coordinate `e_i` to the `i`-th basis vector of `ambient`.
pub fn embed(geometry: &Geometry, ambient: &Subspace, local: &Geometry, set: &PointSet) -> Result<PointSet> {
    if ambient.dim() != local.dim() as i64 || geometry.field() != local.field() {
        return Err(Error::WrongDimension { got: ambient.dim(), expected: format!("{}", local.dim()) });
    }
    let f = geometry.field();
    let mut out = PointSet::empty(geometry);
    for c in set.vectors(local) {
        let mut v = vec![0; geometry.dim() + 1];
        for (&ci, row) in c.iter().zip(ambient.basis()) {
            for (x, &b) in v.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(ci, b));
            }
        }
        out.insert(geometry.index_of(&v)?);
    }
    Ok(out)
}

fn require_plane(geometry: &Geometry) -> Result<()> {
    if geometry.dim() != 2 {
        return Err(Error::WrongDimension { got: geometry.dim() as i64, expected: "2".into() });
    }
    Ok(())
}

/// Points with all coordinates in the subfield of order `sqrt(q)` and the
/// last `n - s` coordinates zero. `s = -1` gives the empty set.
pub fn baer_subgeometry(geometry: &Geometry, s: i64) -> Result<PointSet> {
    let sub = geometry.field().subfield()?;
    let n = geometry.dim() as i64;
    if s < -1 || s > n {
        return Err(Error::WrongDimension { got: s, expected: format!("-1..={n}") });
    }
    let keep = (s + 1) as usize;
    let members = (0..geometry.num_points()).filter(|&i| {
        let v = geometry.point(i);
        v[keep..].iter().all(|&x| x == 0) && v.iter().all(|x| sub.contains(x))
    });
    PointSet::from_indices(geometry, members)
}

/// The Hermitian curve `x^(r+1) + y^(r+1) + z^(r+1) = 0`, `r = sqrt(q)`.
pub fn hermitian_unital(geometry: &Geometry) -> Result<PointSet> {
    let f = geometry.field();
    let r = f.sqrt_order().ok_or(Error::OddDegree(f.degree()))? as u64;
    require_plane(geometry)?;
    let members = (0..geometry.num_points())
        .filter(|&i| geometry.point(i).iter().fold(0, |acc, &x| f.add(acc, f.pow(x, r + 1))) == 0);
    PointSet::from_indices(geometry, members)
}

/// The conic `y z = x^2` together with its nucleus `(1,0,0)`.
pub fn hyperoval(geometry: &Geometry) -> Result<PointSet> {
    let f = geometry.field();
    if f.characteristic() != 2 {
        return Err(Error::OddOrder(f.order() as u64));
    }
    require_plane(geometry)?;
    let mut set = PointSet::from_indices(
        geometry,
        (0..geometry.num_points()).filter(|&i| {
            let v = geometry.point(i);
            f.mul(v[1], v[2]) == f.mul(v[0], v[0])
        }),
    )?;
    set.insert(geometry.index_of(&[1, 0, 0])?);
    Ok(set)
}

/// Denniston maximal arc of degree `d`: the affine points `(x, y, 1)` with
/// `x^2 + b x y + y^2` in an additive subgroup of order `d`, where
/// `X^2 + b X + 1` is irreducible.
pub fn denniston_arc(geometry: &Geometry, d: u64) -> Result<PointSet> {
    let f = geometry.field();
    let q = f.order() as u64;
    if f.characteristic() != 2 {
        return Err(Error::OddOrder(q));
    }
    if d < 2 || d > q {
        return Err(Error::DegreeOutOfRange { d, q });
    }
    if !q.is_multiple_of(d) {
        return Err(Error::DegreeNotDividingOrder { d, q });
    }
    require_plane(geometry)?;
    let b = f
        .elements()
        .find(|&b| f.elements().all(|x| f.add(f.add(f.mul(x, x), f.mul(b, x)), 1) != 0))
        .expect("an irreducible quadratic exists over every finite field");
    // in characteristic 2 the encoding makes addition bitwise xor, so 0..d is a subgroup
    let in_subgroup = |x: Elem| (x as u64) < d;
    let members = (0..geometry.num_points()).filter(|&i| {
        let v = geometry.point(i);
        if v[2] == 0 {
            return false;
        }
        let s = f.inv(v[2]);
        let (x, y) = (f.mul(v[0], s), f.mul(v[1], s));
        in_subgroup(f.add(f.add(f.mul(x, x), f.mul(b, f.mul(x, y))), f.mul(y, y)))
    });
    PointSet::from_indices(geometry, members)
}

/// Builds a planar base in a private PG(2,q) and places it in `ambient`.
fn planar_base(
    geometry: &Geometry,
    ambient: &Subspace,
    build: impl FnOnce(&Geometry) -> Result<PointSet>,
) -> Result<PointSet> {
    let plane = Geometry::new(geometry.field().clone(), 2)?;
    let local = build(&plane)?;
    embed(geometry, ambient, &plane, &local)
}

fn planar_cone(geometry: &Geometry, build: impl FnOnce(&Geometry) -> Result<PointSet>) -> Result<ConeDescriptor> {
    let r = geometry.dim() as i64 - 3;
    ConeDescriptor::standard(geometry, r, |ambient| planar_base(geometry, ambient, build))
}

impl ConeDescriptor {
    /// `(r, s)`-Baer cone: `r`-dimensional vertex over an `s`-dimensional Baer subgeometry.
    pub fn baer(geometry: &Geometry, r: i64, s: i64) -> Result<Self> {
        let n = geometry.dim() as i64;
        if r < -1 || s < -1 || r + s >= n {
            return Err(Error::HypothesisViolated(format!("need r, s >= -1 and r + s < n, got r={r} s={s} n={n}")));
        }
        let base = baer_subgeometry(geometry, s)?;
        ConeDescriptor::standard(geometry, r, |_| Ok(base))
    }

    /// Hermitian unital in a plane, vertex of dimension `n - 3`.
    pub fn unital(geometry: &Geometry) -> Result<Self> {
        planar_cone(geometry, hermitian_unital)
    }

    /// Hyperoval in a plane, vertex of dimension `n - 3`.
    pub fn hyperoval(geometry: &Geometry) -> Result<Self> {
        planar_cone(geometry, hyperoval)
    }

    /// Denniston arc of degree `d` in a plane, vertex of dimension `n - 3`.
    pub fn maximal_arc(geometry: &Geometry, d: u64) -> Result<Self> {
        planar_cone(geometry, |plane| denniston_arc(plane, d))
    }
}

pub fn baer_cone(geometry: &Geometry, r: i64, s: i64) -> Result<PointSet> {
    ConeDescriptor::baer(geometry, r, s)?.points(geometry)
}

pub fn unital_cone(geometry: &Geometry) -> Result<PointSet> {
    ConeDescriptor::unital(geometry)?.points(geometry)
}

pub fn hyperoval_cone(geometry: &Geometry) -> Result<PointSet> {
    ConeDescriptor::hyperoval(geometry)?.points(geometry)
}

pub fn maximal_arc_cone(geometry: &Geometry, d: u64) -> Result<PointSet> {
    ConeDescriptor::maximal_arc(geometry, d)?.points(geometry)
}
