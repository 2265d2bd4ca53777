use rand::Rng;

use super::{Op, Pcs};
use crate::word::Letter;

/// Size caps for [`random_model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelShape {
    pub max_states: usize,
    pub max_level: Letter,
    pub max_rules: usize,
    pub channels: usize,
}

impl Default for ModelShape {
    fn default() -> Self {
        ModelShape { max_states: 3, max_level: 2, max_rules: 4, channels: 1 }
    }
}

/// A small model drawn uniformly within `shape`; states are `s0, s1, …`,
/// channels `c0, c1, …`, and `s0` is initial.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, shape: ModelShape) -> Pcs {
    let level = rng.gen_range(0..=shape.max_level);
    let states: Vec<String> = (0..rng.gen_range(1..=shape.max_states.max(1))).map(|i| format!("s{i}")).collect();
    let channels: Vec<String> = (0..shape.channels.max(1)).map(|i| format!("c{i}")).collect();
    let mut m = Pcs::new(level, channels.clone(), states.clone()).expect("distinct names");
    for _ in 0..rng.gen_range(1..=shape.max_rules.max(1)) {
        let from = &states[rng.gen_range(0..states.len())];
        let to = &states[rng.gen_range(0..states.len())];
        let channel = &channels[rng.gen_range(0..channels.len())];
        let op = if rng.gen_bool(0.5) { Op::Write } else { Op::Read };
        m.add_rule(from, channel, op, rng.gen_range(0..=level), to).expect("in range");
    }
    m.set_initial("s0").expect("s0 exists");
    m
}
