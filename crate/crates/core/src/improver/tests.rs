use super::*;
use crate::generators::{named, Family};

#[test]
fn k33_needs_no_step() {
    let g = named(&Family::K33).unwrap();
    let (h, steps) = find_odd_hex(&g).unwrap();
    assert!(h.is_odd());
    assert!(steps.is_empty());
}
