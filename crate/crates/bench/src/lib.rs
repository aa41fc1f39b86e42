//! Fixtures shared by the benchmarks.

use pgcone::objects::{maximal_arc_cone, unital_cone};
use pgcone::{Field, Geometry, PointSet};

pub fn geometry(n: usize, q: u64) -> Geometry {
    Geometry::new(Field::from_order(q).expect("prime power"), n).expect("within bounds")
}

/// Unital cone in PG(4,4), 149 points.
pub fn unital_cone_pg4_4() -> (Geometry, PointSet) {
    let g = geometry(4, 4);
    let k = unital_cone(&g).expect("q is square");
    (g, k)
}

/// Degree-2 maximal arc cone in PG(5,4), 405 points.
pub fn maxarc_cone_pg5_4() -> (Geometry, PointSet) {
    let g = geometry(5, 4);
    let k = maximal_arc_cone(&g, 2).expect("2 divides 4");
    (g, k)
}
