//! The infinite family of wedges with `m = 6j + 2` whose arrangements have
//! `18j + 7` pseudolines and no pseudoline on more than `8j + 2` vertices.
//!
//! Two beams, `red` and `blue`, each make `3j + 1` bounces (`r_1..r_{3j+1}`
//! and `b_1..b_{3j+1}`), alternating sides and starting on the top ray.
//! Every third blue bounce is a red bounce: `b_{3i} = r_i` for `i <= j`.
//!
//! Ranks come from one ordered list of bounce keys per side (farthest from
//! the apex first). The `j = 1` lists are fixed:
//!
//! ```text
//! top:    b1 r1 r3
//! bottom: b2 b4 r2 r4
//! ```
//!
//! They are the only interleaving of those seven keys whose expansion is a
//! valid arrangement with 25 curves, `r = 10` and an apex of degree 8 (the
//! exhaustive search lives in this crate's tests). Going from `j - 1` to `j`:
//!
//! * `r_{3j-1}, r_{3j}, r_{3j+1}` are appended to their sides, closer to the
//!   apex than every earlier point;
//! * `b_{3j-1}` and then `b_{3j+1}` are inserted immediately farther from the
//!   apex than `r_{j+1}` (all three share a side);
//! * `b_{3j}` reuses `r_j`.
//!
//! Earlier relative orders never change; ranks are renumbered densely.

use thiserror::Error;

use super::wedge::{BeamSpec, BounceEvent, Side, WedgeSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family index must be at least 1")]
    ZeroIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Key {
    Red(u32),
    Blue(u32),
}

/// Side of the `i`-th bounce (1-based) of either beam.
fn side_of_event(i: u32) -> Side {
    if i % 2 == 1 {
        Side::Top
    } else {
        Side::Bottom
    }
}

/// Per-side key orders for member `j`, farthest from the apex first.
fn key_orders(j: u32) -> (Vec<Key>, Vec<Key>) {
    use Key::*;
    let mut top = vec![Blue(1), Red(1), Red(3)];
    let mut bottom = vec![Blue(2), Blue(4), Red(2), Red(4)];
    for step in 2..=j {
        for i in 3 * step - 1..=3 * step + 1 {
            match side_of_event(i) {
                Side::Top => top.push(Red(i)),
                Side::Bottom => bottom.push(Red(i)),
            }
        }
        let side = match side_of_event(3 * step + 1) {
            Side::Top => &mut top,
            Side::Bottom => &mut bottom,
        };
        let anchor = side
            .iter()
            .position(|&k| k == Red(step + 1))
            .expect("r_{j+1} is placed before step j");
        side.splice(anchor..anchor, [Blue(3 * step - 1), Blue(3 * step + 1)]);
    }
    (top, bottom)
}

/// The family wedge for index `j >= 1`.
pub fn family_wedge(j: u32) -> Result<WedgeSpec, FamilyError> {
    if j == 0 {
        return Err(FamilyError::ZeroIndex);
    }
    let (top, bottom) = key_orders(j);
    let rank = |key: Key, side: Side| -> u32 {
        let list = match side {
            Side::Top => &top,
            Side::Bottom => &bottom,
        };
        list.iter()
            .position(|&k| k == key)
            .expect("every key is placed") as u32
            + 1
    };

    let events = 3 * j + 1;
    let red = (1..=events)
        .map(|i| {
            let side = side_of_event(i);
            BounceEvent::new(side, rank(Key::Red(i), side))
        })
        .collect();
    let blue = (1..=events)
        .map(|i| {
            let side = side_of_event(i);
            let key = if i % 3 == 0 && i <= 3 * j {
                Key::Red(i / 3)
            } else {
                Key::Blue(i)
            };
            BounceEvent::new(side, rank(key, side))
        })
        .collect();

    let beams = vec![
        BeamSpec {
            name: "red".into(),
            events: red,
        },
        BeamSpec {
            name: "blue".into(),
            events: blue,
        },
    ];
    Ok(WedgeSpec::new(6 * j + 2, beams).expect("family wedges satisfy the wedge invariants"))
}
