//! Small closed-form arrangements used as fixtures.

use thiserror::Error;

use crate::incidence::{CurveId, IncidenceStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("fixtures need at least 3 curves, got {0}")]
    TooFewCurves(usize),
}

fn check(n: usize) -> Result<(), FixtureError> {
    if n < 3 {
        Err(FixtureError::TooFewCurves(n))
    } else {
        Ok(())
    }
}

/// All `n` curves through one point.
pub fn gen_pencil(n: usize) -> Result<IncidenceStructure, FixtureError> {
    check(n)?;
    Ok(IncidenceStructure::new(1, n, vec![(0..n as CurveId).collect()]).expect("well formed"))
}

/// Curves `0..n-1` concurrent; curve `n-1` meets each of them separately.
pub fn gen_near_pencil(n: usize) -> Result<IncidenceStructure, FixtureError> {
    check(n)?;
    let t = (n - 1) as CurveId;
    let mut vertices = vec![(0..t).collect::<Vec<_>>()];
    vertices.extend((0..t).map(|i| vec![i, t]));
    Ok(IncidenceStructure::new(1, n, vertices).expect("well formed"))
}

/// Simple arrangement: every pair meets at its own vertex.
pub fn gen_simple_cyclic(n: usize) -> Result<IncidenceStructure, FixtureError> {
    check(n)?;
    let n32 = n as CurveId;
    let vertices = (0..n32)
        .flat_map(|a| (a + 1..n32).map(move |b| vec![a, b]))
        .collect();
    Ok(IncidenceStructure::new(1, n, vertices).expect("well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let st = gen_simple_cyclic(5).unwrap().stats().unwrap();
        assert_eq!((st.t(2), st.r), (10, 4));

        let st = gen_near_pencil(6).unwrap().stats().unwrap();
        assert_eq!(st.r, 5);
        let mut degrees = st.vertex_degrees.clone();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degrees, vec![5, 2, 2, 2, 2, 2]);

        let p = gen_pencil(4).unwrap();
        assert_eq!(p.vertex_count(), 1);
        assert_eq!(p.stats().unwrap().r, 1);
    }

    #[test]
    fn small_n_rejected() {
        assert_eq!(gen_pencil(2), Err(FixtureError::TooFewCurves(2)));
        assert!(gen_near_pencil(0).is_err());
        assert!(gen_simple_cyclic(1).is_err());
    }
}
