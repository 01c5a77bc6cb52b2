//! Fixtures shared by the benchmarks.

use wedge_core::{LatticePoint, PointConfiguration};

/// Lattice points of the closed disc of the given radius around the origin.
pub fn disc(radius: i64) -> PointConfiguration {
    let r2 = radius * radius;
    let pts = (-radius..=radius).flat_map(|x| {
        (-radius..=radius)
            .filter(move |y| x * x + y * y <= r2)
            .map(move |y| LatticePoint::xy(x, y))
    });
    PointConfiguration::new(2, pts).expect("planar points")
}

/// Lattice points of the `size`-fold standard simplex in space.
pub fn simplex(size: i64) -> PointConfiguration {
    let pts = (0..=size).flat_map(|x| {
        (0..=size - x)
            .flat_map(move |y| (0..=size - x - y).map(move |z| LatticePoint::xyz(x, y, z)))
    });
    PointConfiguration::new(3, pts).expect("spatial points")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        assert_eq!(disc(1).len(), 5);
        assert_eq!(disc(2).len(), 13);
        assert_eq!(simplex(6).len(), 84);
    }
}
