//! Brute-force searches that pin down the family's rank orders.
//!
//! The base member is searched over every interleaving of its bounce keys;
//! the second member over every way of adding the new keys to the base
//! orders. Each search must have exactly one hit, equal to `family_wedge`.

use itertools::Itertools;
use wedgework::kaleidoscope::{expand, family_wedge, BeamSpec, BounceEvent, Side, WedgeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Key {
    R(u32),
    B(u32),
}

fn side(i: u32) -> Side {
    if i % 2 == 1 {
        Side::Top
    } else {
        Side::Bottom
    }
}

/// Wedge for member `j` given explicit key orders (farthest first).
fn wedge_from_orders(j: u32, top: &[Key], bottom: &[Key]) -> WedgeSpec {
    let rank = |k: Key, s: Side| {
        let list = if s == Side::Top { top } else { bottom };
        list.iter().position(|&x| x == k).unwrap() as u32 + 1
    };
    let t = 3 * j + 1;
    let red = (1..=t)
        .map(|i| BounceEvent::new(side(i), rank(Key::R(i), side(i))))
        .collect();
    let blue = (1..=t)
        .map(|i| {
            let k = if i % 3 == 0 { Key::R(i / 3) } else { Key::B(i) };
            BounceEvent::new(side(i), rank(k, side(i)))
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
    WedgeSpec::new(6 * j + 2, beams).unwrap()
}

/// Curve count and maximum curve degree, if the wedge expands.
fn outcome(w: &WedgeSpec) -> Option<(usize, usize)> {
    let arr = expand(w).ok()?;
    let st = arr.structure.stats().ok()?;
    Some((st.n(), st.r))
}

/// All orders of `old` ∪ `new` keeping `old` in its given relative order.
fn extensions(old: &[Key], new: &[Key]) -> Vec<Vec<Key>> {
    let total = old.len() + new.len();
    let mut out = Vec::new();
    for slots in (0..total).combinations(new.len()) {
        for perm in new.iter().permutations(new.len()) {
            let mut list = Vec::with_capacity(total);
            let (mut oi, mut ni) = (0, 0);
            for pos in 0..total {
                if ni < slots.len() && slots[ni] == pos {
                    list.push(*perm[ni]);
                    ni += 1;
                } else {
                    list.push(old[oi]);
                    oi += 1;
                }
            }
            out.push(list);
        }
    }
    out
}

const TOP1: [Key; 3] = [Key::B(1), Key::R(1), Key::R(3)];
const BOTTOM1: [Key; 4] = [Key::B(2), Key::B(4), Key::R(2), Key::R(4)];

#[test]
fn base_orders_are_the_unique_interleaving() {
    let mut candidates = 0;
    let mut hits = Vec::new();
    for top in TOP1.iter().copied().permutations(3) {
        for bottom in BOTTOM1.iter().copied().permutations(4) {
            candidates += 1;
            let w = wedge_from_orders(1, &top, &bottom);
            if outcome(&w) == Some((25, 10)) {
                hits.push(w);
            }
        }
    }
    assert_eq!(candidates, 144);
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0], family_wedge(1).unwrap());
}

#[test]
fn no_interleaving_beats_the_base_member() {
    for top in TOP1.iter().copied().permutations(3) {
        for bottom in BOTTOM1.iter().copied().permutations(4) {
            if let Some((n, r)) = outcome(&wedge_from_orders(1, &top, &bottom)) {
                assert_eq!(n, 25);
                assert!(r >= 10);
            }
        }
    }
}

#[test]
fn second_member_is_the_unique_extension() {
    let new_top = [Key::R(5), Key::R(7), Key::B(5), Key::B(7)];
    let new_bottom = [Key::R(6)];
    let tops = extensions(&TOP1, &new_top);
    let bottoms = extensions(&BOTTOM1, &new_bottom);
    assert_eq!((tops.len(), bottoms.len()), (840, 5));
    let mut hits = Vec::new();
    for top in &tops {
        for bottom in &bottoms {
            let w = wedge_from_orders(2, top, bottom);
            if outcome(&w) == Some((43, 18)) {
                hits.push(w);
            }
        }
    }
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0], family_wedge(2).unwrap());
}
