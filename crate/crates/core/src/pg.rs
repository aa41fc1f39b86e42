//! The projective space PG(n,q): enumerated points and hyperplanes, incidence,
//! spans and streams of subspaces of a fixed dimension.
//!
//! Points are normalized homogeneous vectors (first nonzero coordinate 1) and
//! are numbered in lexicographic order of those vectors. Hyperplanes use the
//! same list as dual vectors, so hyperplane `i` is `{x : <v_i, x> = 0}`.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Largest number of points accepted by [`Geometry::new`].
pub const DEFAULT_MAX_POINTS: u64 = 100_000;

/// Number of points of PG(m,q), `(q^(m+1) - 1) / (q - 1)`; `theta(-1, q) = 0`.
pub fn theta(m: i64, q: u64) -> u128 {
    assert!(m >= -1, "theta is defined for m >= -1");
    (0..=m).fold(0u128, |acc, _| acc * q as u128 + 1)
}

/// Number of `r`-dimensional vector subspaces of GF(q)^m, i.e. of
/// `(r-1)`-dimensional projective subspaces of PG(m-1,q).
pub fn gaussian_binomial(m: u32, r: u32, q: u64) -> u128 {
    assert!(r <= m, "gaussian_binomial needs r <= m");
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 1..=r {
        let num = q.pow(m - r + i) - 1;
        let den = q.pow(i) - 1;
        acc = acc.checked_mul(num).expect("gaussian binomial overflow") / den;
    }
    acc
}

/// A projective subspace together with its point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: i64,
    basis: Vec<Vec<Elem>>,
    points: BitSet,
}

impl Subspace {
    pub fn empty(geometry: &Geometry) -> Self {
        Subspace { dim: -1, basis: Vec::new(), points: BitSet::new(geometry.num_points()) }
    }

    #[inline]
    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// Row-reduced echelon basis.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn points(&self) -> &BitSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.count()
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn contains(&self, point: usize) -> bool {
        self.points.contains(point)
    }
}

#[derive(Clone, Debug)]
pub struct Geometry {
    field: Field,
    n: usize,
    coords: Vec<Elem>,
    incidence: Vec<BitSet>,
    /// `q^i` for `i` in `0..=n`.
    powers: Vec<usize>,
    /// `theta(i - 1)` for `i` in `0..=n+1`.
    thetas: Vec<usize>,
}

impl Geometry {
    pub fn new(field: Field, n: usize) -> Result<Self> {
        Self::with_bound(field, n, DEFAULT_MAX_POINTS)
    }

    pub fn with_bound(field: Field, n: usize, max_points: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::WrongDimension { got: n as i64, expected: ">= 2".into() });
        }
        let q = field.order() as u64;
        let total = theta(n as i64, q);
        if total > max_points as u128 {
            return Err(Error::GeometryTooLarge { n, q, points: total, bound: max_points });
        }
        let total = total as usize;
        let qs = q as usize;
        let powers: Vec<usize> = (0..=n as u32).map(|i| qs.pow(i)).collect();
        let thetas: Vec<usize> = (-1..=n as i64).map(|m| theta(m, q) as usize).collect();

        let width = n + 1;
        let mut coords = Vec::with_capacity(total * width);
        for lead in (0..=n).rev() {
            let tail = n - lead;
            for code in 0..powers[tail] {
                coords.extend(std::iter::repeat_n(0, lead));
                coords.push(1);
                for j in (0..tail).rev() {
                    coords.push(((code / powers[j]) % qs) as Elem);
                }
            }
        }
        debug_assert_eq!(coords.len(), total * width);

        let mut geometry = Geometry { field, n, coords, incidence: Vec::new(), powers, thetas };
        geometry.incidence = (0..total)
            .map(|h| {
                let dual = geometry.point(h);
                let mut on = BitSet::new(total);
                for p in 0..total {
                    if geometry.dot(dual, geometry.point(p)) == 0 {
                        on.insert(p);
                    }
                }
                on
            })
            .collect();
        Ok(geometry)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Projective dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn num_points(&self) -> usize {
        self.thetas[self.n + 1]
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_points()
    }

    /// `theta_m` for `-1 <= m <= n`.
    pub fn theta(&self, m: i64) -> usize {
        self.thetas[(m + 1) as usize]
    }

    pub fn point(&self, index: usize) -> &[Elem] {
        let w = self.n + 1;
        &self.coords[index * w..(index + 1) * w]
    }

    /// Dual coordinates of hyperplane `index`.
    pub fn hyperplane(&self, index: usize) -> &[Elem] {
        self.point(index)
    }

    /// Points on hyperplane `index`.
    pub fn incidence(&self, index: usize) -> &BitSet {
        &self.incidence[index]
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.field.add(acc, self.field.mul(x, y)))
    }

    /// Scales a nonzero vector so its first nonzero coordinate is 1.
    pub fn normalize(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let s = self.field.inv(lead);
        Some(v.iter().map(|&x| self.field.mul(x, s)).collect())
    }

    /// Index of an already normalized vector.
    #[inline]
    fn rank_normalized(&self, v: &[Elem]) -> usize {
        let lead = v.iter().position(|&x| x != 0).expect("zero vector");
        let mut idx = self.thetas[self.n - lead];
        for (j, &x) in v.iter().enumerate().skip(lead + 1) {
            idx += x as usize * self.powers[self.n - j];
        }
        idx
    }

    /// Index of the point spanned by `v` (any nonzero representative).
    pub fn index_of(&self, v: &[Elem]) -> Result<usize> {
        if v.len() != self.n + 1 || v.iter().any(|&x| x >= self.field.order()) {
            return Err(Error::InvalidVector(v.to_vec()));
        }
        let normal = self.normalize(v).ok_or_else(|| Error::InvalidVector(v.to_vec()))?;
        Ok(self.rank_normalized(&normal))
    }

    /// Index of a vector that must already be normalized.
    pub fn index_of_normalized(&self, v: &[Elem]) -> Result<usize> {
        let index = self.index_of(v)?;
        if self.point(index) != v {
            return Err(Error::InvalidVector(v.to_vec()));
        }
        Ok(index)
    }

    /// Row-reduced echelon form of `rows`, zero rows dropped.
    pub fn rref(&self, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let mut m: Vec<Vec<Elem>> = rows.to_vec();
        let mut rank = 0;
        for col in 0..=self.n {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, piv);
            let s = f.inv(m[rank][col]);
            for x in m[rank].iter_mut() {
                *x = f.mul(*x, s);
            }
            let pivot = std::mem::take(&mut m[rank]);
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            m[rank] = pivot;
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        m.truncate(rank);
        m
    }

    /// Calls `visit` with the index of every point in the span of an RREF basis.
    fn for_each_point_of(&self, basis: &[Vec<Elem>], mut visit: impl FnMut(usize)) {
        let k = basis.len();
        let q = self.field.order();
        let width = self.n + 1;
        let mut v = vec![0; width];
        let mut coeffs = vec![0; k];
        for lead in 0..k {
            coeffs.iter_mut().for_each(|c| *c = 0);
            loop {
                v.copy_from_slice(&basis[lead]);
                for j in lead + 1..k {
                    let c = coeffs[j];
                    if c != 0 {
                        for (x, &b) in v.iter_mut().zip(&basis[j]) {
                            *x = self.field.add(*x, self.field.mul(c, b));
                        }
                    }
                }
                visit(self.rank_normalized(&v));
                let mut done = true;
                let mut j = k;
                while j > lead + 1 {
                    j -= 1;
                    coeffs[j] += 1;
                    if coeffs[j] < q {
                        done = false;
                        break;
                    }
                    coeffs[j] = 0;
                }
                if done {
                    break;
                }
            }
        }
    }

    fn subspace_from_rref(&self, basis: Vec<Vec<Elem>>) -> Subspace {
        let mut points = BitSet::new(self.num_points());
        self.for_each_point_of(&basis, |i| {
            points.insert(i);
        });
        Subspace { dim: basis.len() as i64 - 1, basis, points }
    }

    /// Smallest subspace containing the given coordinate vectors.
    pub fn span_vectors(&self, vectors: &[Vec<Elem>]) -> Subspace {
        let basis = self.rref(vectors);
        self.subspace_from_rref(basis)
    }

    /// Smallest subspace containing the given points.
    pub fn span(&self, points: &[usize]) -> Result<Subspace> {
        let total = self.num_points();
        if let Some(&bad) = points.iter().find(|&&i| i >= total) {
            return Err(Error::PointOutOfRange { index: bad, len: total });
        }
        let rows: Vec<Vec<Elem>> = points.iter().map(|&i| self.point(i).to_vec()).collect();
        Ok(self.span_vectors(&rows))
    }

    /// Span of every point in `set`, reducing incrementally so large sets stay cheap.
    pub fn span_of_set(&self, set: &BitSet) -> Subspace {
        let mut basis: Vec<Vec<Elem>> = Vec::new();
        let mut covered = BitSet::new(self.num_points());
        for p in set.iter() {
            if covered.contains(p) {
                continue;
            }
            basis.push(self.point(p).to_vec());
            basis = self.rref(&basis);
            covered = self.subspace_from_rref(basis.clone()).points;
        }
        self.subspace_from_rref(basis)
    }

    pub fn join(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let rows: Vec<Vec<Elem>> = a.basis.iter().chain(&b.basis).cloned().collect();
        self.span_vectors(&rows)
    }

    /// The intersection of two subspaces.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut common = a.points.clone();
        common.intersect_with(&b.points);
        self.span_of_set(&common)
    }

    /// Hyperplane `index` as a subspace.
    pub fn hyperplane_subspace(&self, index: usize) -> Subspace {
        self.span_of_set(&self.incidence[index])
    }

    /// Span of the coordinate axes `e_i` for `i` in `axes`.
    pub fn coordinate_subspace(&self, axes: impl IntoIterator<Item = usize>) -> Subspace {
        let rows: Vec<Vec<Elem>> = axes
            .into_iter()
            .map(|i| {
                let mut v = vec![0; self.n + 1];
                v[i] = 1;
                v
            })
            .collect();
        self.span_vectors(&rows)
    }

    /// Number of `d`-dimensional subspaces.
    pub fn count_subspaces(&self, d: usize) -> u128 {
        gaussian_binomial(self.n as u32 + 1, d as u32 + 1, self.order())
    }

    /// Every `d`-dimensional subspace exactly once, in canonical RREF order.
    pub fn subspaces(&self, d: usize) -> Result<SubspaceIter<'_>> {
        if d > self.n {
            return Err(Error::WrongDimension { got: d as i64, expected: format!("0..={}", self.n) });
        }
        Ok(SubspaceIter { geometry: self, shapes: EchelonShapes::new(self.n + 1, d + 1), current: None })
    }

    /// Visits the point lists of all `d`-subspaces, split across `workers`
    /// threads. Each worker folds into its own state; the caller combines them.
    /// Returning `Break` from `visit` stops every worker.
    pub(crate) fn scan_subspaces<S, M, V>(&self, d: usize, workers: usize, make: M, visit: V) -> Vec<S>
    where
        S: Send,
        M: Fn() -> S + Sync,
        V: Fn(&mut S, &[usize]) -> ControlFlow<()> + Sync,
    {
        assert!(d <= self.n);
        let jobs = EchelonShapes::new(self.n + 1, d + 1).jobs(self.field.order() as u64, 1 << 12);
        let workers = workers.max(1).min(jobs.len().max(1));
        let stop = AtomicBool::new(false);
        let run = |worker: usize| {
            let mut state = make();
            let mut basis = vec![vec![0; self.n + 1]; d + 1];
            let mut pts = Vec::with_capacity(self.theta(d as i64));
            'jobs: for job in jobs.iter().skip(worker).step_by(workers) {
                for code in job.start..job.end {
                    if stop.load(Ordering::Relaxed) {
                        break 'jobs;
                    }
                    job.shape.fill(code, self.field.order() as u64, &mut basis);
                    pts.clear();
                    self.for_each_point_of(&basis, |i| pts.push(i));
                    if visit(&mut state, &pts).is_break() {
                        stop.store(true, Ordering::Relaxed);
                        break 'jobs;
                    }
                }
            }
            state
        };
        if workers == 1 {
            return vec![run(0)];
        }
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|w| s.spawn(move || run(w))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    }
}

/// Pivot pattern of a reduced echelon matrix with `rank` rows and `cols` columns.
#[derive(Clone, Debug)]
struct EchelonShape {
    pivots: Vec<usize>,
    /// `(row, col)` of every free entry, most significant first.
    free: Vec<(usize, usize)>,
}

impl EchelonShape {
    fn new(pivots: Vec<usize>, cols: usize) -> Self {
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..cols {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        EchelonShape { pivots, free }
    }

    fn count(&self, q: u64) -> u64 {
        q.pow(self.free.len() as u32)
    }

    fn fill(&self, mut code: u64, q: u64, basis: &mut [Vec<Elem>]) {
        for row in basis.iter_mut() {
            row.iter_mut().for_each(|x| *x = 0);
        }
        for (row, &p) in self.pivots.iter().enumerate() {
            basis[row][p] = 1;
        }
        for &(row, col) in self.free.iter().rev() {
            basis[row][col] = (code % q) as Elem;
            code /= q;
        }
    }
}

struct EchelonShapes {
    cols: usize,
    next: Option<Vec<usize>>,
}

impl EchelonShapes {
    fn new(cols: usize, rank: usize) -> Self {
        EchelonShapes { cols, next: (rank <= cols).then(|| (0..rank).collect()) }
    }

    fn jobs(self, q: u64, chunk: u64) -> Vec<Job> {
        let mut out = Vec::new();
        for shape in self {
            let total = shape.count(q);
            let mut start = 0;
            while start < total {
                let end = (start + chunk).min(total);
                out.push(Job { shape: shape.clone(), start, end });
                start = end;
            }
        }
        out
    }
}

impl Iterator for EchelonShapes {
    type Item = EchelonShape;

    fn next(&mut self) -> Option<EchelonShape> {
        let current = self.next.take()?;
        let k = current.len();
        // advance to the next combination in lexicographic order
        let mut succ = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < self.cols - k + i {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(EchelonShape::new(current, self.cols))
    }
}

struct Job {
    shape: EchelonShape,
    start: u64,
    end: u64,
}

pub struct SubspaceIter<'g> {
    geometry: &'g Geometry,
    shapes: EchelonShapes,
    current: Option<(EchelonShape, u64)>,
}

impl Iterator for SubspaceIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let q = self.geometry.order();
        loop {
            match &mut self.current {
                Some((shape, code)) if *code < shape.count(q) => {
                    let rank = shape.pivots.len();
                    let mut basis = vec![vec![0; self.geometry.n + 1]; rank];
                    shape.fill(*code, q, &mut basis);
                    *code += 1;
                    return Some(self.geometry.subspace_from_rref(basis));
                }
                _ => {
                    let shape = self.shapes.next()?;
                    self.current = Some((shape, 0));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn pg(n: usize, q: u64) -> Geometry {
        Geometry::new(Field::from_order(q).unwrap(), n).unwrap()
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(-1, 7), 0);
        assert_eq!(theta(0, 7), 1);
        assert_eq!(theta(3, 4), 85);
        assert_eq!(theta(5, 4), 1365);
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(5, 0, 3), 1);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(6, 3, 4), 376_805);
        assert_eq!(gaussian_binomial(5, 2, 4), 5797);
        assert_eq!(gaussian_binomial(4, 4, 9), 1);
    }

    #[test]
    fn sizes_of_small_geometries() {
        let g = pg(3, 2);
        assert_eq!(g.num_points(), 15);
        for h in 0..15 {
            assert_eq!(g.incidence(h).count(), 7);
        }
        assert_eq!(pg(3, 4).num_points(), 85);
        assert_eq!(pg(5, 4).num_hyperplanes(), 1365);
    }

    #[test]
    fn points_normalized_distinct_and_lexicographic() {
        let g = pg(3, 3);
        let mut seen = HashSet::new();
        for i in 0..g.num_points() {
            let v = g.point(i);
            assert_eq!(*v.iter().find(|&&x| x != 0).unwrap(), 1);
            assert!(seen.insert(v.to_vec()));
            assert_eq!(g.index_of(v).unwrap(), i);
            if i > 0 {
                assert!(g.point(i - 1) < v);
            }
        }
    }

    #[test]
    fn index_of_rejects_garbage() {
        let g = pg(2, 4);
        assert!(g.index_of(&[0, 0, 0]).is_err());
        assert!(g.index_of(&[1, 4, 0]).is_err());
        assert!(g.index_of(&[1, 0]).is_err());
        assert!(g.index_of_normalized(&[2, 1, 0]).is_err());
        assert_eq!(g.index_of(&[2, 2, 2]).unwrap(), g.index_of(&[1, 1, 1]).unwrap());
    }

    #[test]
    fn incidence_double_count_and_pairwise_meets() {
        let g = pg(3, 3);
        let total: usize = (0..g.num_hyperplanes()).map(|h| g.incidence(h).count()).sum();
        assert_eq!(total, g.theta(3) * g.theta(2));
        for a in 0..g.num_hyperplanes() {
            for b in a + 1..g.num_hyperplanes() {
                assert_eq!(g.incidence(a).intersection_count(g.incidence(b)), g.theta(1));
            }
        }
    }

    #[test]
    fn span_examples() {
        let g = pg(3, 4);
        let empty = g.span(&[]).unwrap();
        assert_eq!(empty.dim(), -1);
        assert_eq!(empty.len(), 0);
        let one = g.span(&[17]).unwrap();
        assert_eq!(one.dim(), 0);
        assert_eq!(one.points().iter().collect::<Vec<_>>(), vec![17]);
        let line = g.span(&[3, 40]).unwrap();
        assert_eq!(line.dim(), 1);
        assert_eq!(line.len(), 5);
        // exhaustive membership: a point is on the line iff rank stays 2
        for p in 0..g.num_points() {
            let rank = g.rref(&[g.point(3).to_vec(), g.point(40).to_vec(), g.point(p).to_vec()]).len();
            assert_eq!(line.contains(p), rank == 2);
        }
        assert!(g.span(&[85]).is_err());
    }

    #[test]
    fn line_count_pg32_matches_brute_force() {
        let g = pg(3, 2);
        let mut brute = HashSet::new();
        for a in 0..15 {
            for b in a + 1..15 {
                brute.insert(g.span(&[a, b]).unwrap().points().clone());
            }
        }
        assert_eq!(brute.len(), 35);
        let streamed: HashSet<_> = g.subspaces(1).unwrap().map(|s| s.points().clone()).collect();
        assert_eq!(streamed, brute);
    }

    #[test]
    fn planes_of_pg34_are_the_hyperplanes() {
        let g = pg(3, 4);
        let planes: Vec<_> = g.subspaces(2).unwrap().collect();
        assert_eq!(planes.len(), 85);
        let a: HashSet<_> = planes.iter().map(|s| s.points().clone()).collect();
        let b: HashSet<_> = (0..85).map(|h| g.incidence(h).clone()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn lines_of_pg44() {
        let g = pg(4, 4);
        let mut count = 0u64;
        let mut distinct = HashSet::new();
        for line in g.subspaces(1).unwrap() {
            assert_eq!(line.len(), 5);
            distinct.insert(line.points().clone());
            count += 1;
        }
        assert_eq!(count, 5797);
        assert_eq!(distinct.len(), 5797);
    }

    #[test]
    fn scan_agrees_with_iterator_for_any_worker_count() {
        let g = pg(3, 3);
        for workers in [1, 3, 8] {
            let parts = g.scan_subspaces(
                1,
                workers,
                || 0usize,
                |n, pts| {
                    assert_eq!(pts.len(), 4);
                    *n += 1;
                    ControlFlow::Continue(())
                },
            );
            assert_eq!(parts.iter().sum::<usize>(), 130);
        }
    }

    #[test]
    fn hyperplane_subspace_and_meet() {
        let g = pg(3, 4);
        let h = g.hyperplane_subspace(10);
        assert_eq!(h.dim(), 2);
        assert_eq!(h.points(), g.incidence(10));
        let m = g.meet(&h, &g.hyperplane_subspace(20));
        assert_eq!(m.dim(), 1);
        let axes = g.coordinate_subspace([0, 1]);
        assert_eq!(axes.dim(), 1);
        assert_eq!(g.join(&axes, &g.coordinate_subspace([3])).dim(), 2);
    }

    #[test]
    fn geometry_bound() {
        let f = Field::from_order(4).unwrap();
        assert!(matches!(Geometry::with_bound(f.clone(), 5, 1000), Err(Error::GeometryTooLarge { .. })));
        assert!(Geometry::with_bound(f, 5, 1365).is_ok());
    }
}
