//! Enumeration of the lattice points of a sup-norm ball.

use crate::exact::LatticeVector;

/// Iterates `{ x ∈ Z^d : ‖x‖∞ ≤ radius }` shell by shell.
///
/// Shell `s` holds the points with `‖x‖∞ = s`. Within a shell the points are
/// ordered lexicographically with each coordinate ranked `0, 1, -1, 2, -2, …`,
/// so small positive coordinates come first.
#[derive(Clone, Debug)]
pub struct LatticeBall {
    dim: usize,
    radius: u64,
    shell: u64,
    // Odometer of zigzag indices into `0, 1, -1, 2, -2, …`, or `None` once the
    // current shell is exhausted.
    digits: Option<Vec<u64>>,
}

impl LatticeBall {
    pub fn new(dim: usize, radius: u64) -> Self {
        LatticeBall {
            dim,
            radius,
            shell: 0,
            digits: Some(vec![0; dim]),
        }
    }

    /// Number of points the iterator yields in total, `(2r+1)^d`.
    pub fn len(dim: usize, radius: u64) -> u128 {
        u128::from(2 * radius + 1).pow(dim as u32)
    }

    fn zigzag(i: u64) -> i64 {
        if i % 2 == 1 {
            i.div_ceil(2) as i64
        } else {
            -((i / 2) as i64)
        }
    }

    fn advance(digits: &mut [u64], max: u64) -> bool {
        for d in digits.iter_mut().rev() {
            if *d < max {
                *d += 1;
                return true;
            }
            *d = 0;
        }
        false
    }
}

impl Iterator for LatticeBall {
    type Item = LatticeVector;

    fn next(&mut self) -> Option<LatticeVector> {
        loop {
            if self.shell > self.radius {
                return None;
            }
            let max = 2 * self.shell;
            let Some(digits) = self.digits.as_mut() else {
                self.shell += 1;
                self.digits = Some(vec![0; self.dim]);
                continue;
            };
            // Zigzag indices 2s-1 and 2s are the coordinates ±s.
            let on_shell = self.shell == 0 || digits.iter().any(|&i| i + 1 >= max);
            let point = on_shell.then(|| {
                LatticeVector(digits.iter().map(|&i| Self::zigzag(i).into()).collect())
            });
            if !Self::advance(digits, max) {
                self.digits = None;
            }
            if let Some(p) = point {
                return Some(p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ball_has_every_point_once() {
        for (d, r) in [(1, 3), (2, 2), (3, 2)] {
            let pts: Vec<_> = LatticeBall::new(d, r).collect();
            assert_eq!(pts.len() as u128, LatticeBall::len(d, r));
            let set: BTreeSet<_> = pts.iter().cloned().collect();
            assert_eq!(set.len(), pts.len());
            assert!(pts.iter().all(|p| p.norm_inf() <= r.into()));
        }
    }

    #[test]
    fn shells_are_ordered() {
        let pts: Vec<_> = LatticeBall::new(2, 2).collect();
        assert_eq!(pts[0], LatticeVector::zeros(2));
        let norms: Vec<_> = pts.iter().map(LatticeVector::norm_inf).collect();
        assert!(norms.windows(2).all(|w| w[0] <= w[1]));
        // First shell-1 points put positive coordinates first.
        assert_eq!(pts[1], LatticeVector::from_ints(&[0, 1]));
        assert_eq!(pts[2], LatticeVector::from_ints(&[0, -1]));
        assert_eq!(pts[3], LatticeVector::from_ints(&[1, 0]));
        assert_eq!(pts[4], LatticeVector::from_ints(&[1, 1]));
    }

    #[test]
    fn radius_zero_is_origin() {
        let pts: Vec<_> = LatticeBall::new(3, 0).collect();
        assert_eq!(pts, vec![LatticeVector::zeros(3)]);
    }
}
