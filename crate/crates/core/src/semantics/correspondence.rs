use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_condition, schema_valid_on_frame, ConditionName, FrameFile, SelectionFrame, WorldSet};
use crate::error::{Error, Result};
use crate::formula::Schema;

/// Largest frame size enumerated exhaustively (`4^8` frames at size 2;
/// size 3 would be `8^24`).
pub const MAX_EXHAUSTIVE_WORLDS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrespondenceMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// A frame on which the condition and the schema disagree.
#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub frame: FrameFile,
    pub condition_holds: bool,
    pub schema_valid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub condition: ConditionName,
    pub schema: String,
    pub worlds: usize,
    pub frames_checked: usize,
    /// Frames on which the condition holds (both sides agree or not).
    pub condition_frames: usize,
    pub discrepancy_count: usize,
    /// First few discrepancies, in enumeration order.
    pub discrepancies: Vec<Discrepancy>,
}

impl CorrespondenceReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancy_count == 0
    }
}

const KEPT_DISCREPANCIES: usize = 5;

/// Compare `check_condition(fr, c)` with `schema_valid_on_frame(fr, s)` on
/// every frame of the given size (exhaustive) or on sampled frames.
pub fn correspondence_check(
    worlds: usize,
    c: ConditionName,
    s: &Schema,
    mode: CorrespondenceMode,
) -> Result<CorrespondenceReport> {
    correspondence_check_filtered(worlds, c, s, mode, |_| true)
}

/// As [`correspondence_check`], restricted to frames accepted by `keep`.
pub fn correspondence_check_filtered<F>(
    worlds: usize,
    c: ConditionName,
    s: &Schema,
    mode: CorrespondenceMode,
    mut keep: F,
) -> Result<CorrespondenceReport>
where
    F: FnMut(&SelectionFrame) -> bool,
{
    let mut report = CorrespondenceReport {
        condition: c,
        schema: s.to_string(),
        worlds,
        frames_checked: 0,
        condition_frames: 0,
        discrepancy_count: 0,
        discrepancies: Vec::new(),
    };
    let mut visit = |frame: &SelectionFrame| {
        if !keep(frame) {
            return;
        }
        report.frames_checked += 1;
        let condition_holds = check_condition(frame, c).holds();
        if condition_holds {
            report.condition_frames += 1;
        }
        let schema_valid = schema_valid_on_frame(frame, s).holds();
        if condition_holds != schema_valid {
            report.discrepancy_count += 1;
            if report.discrepancies.len() < KEPT_DISCREPANCIES {
                report.discrepancies.push(Discrepancy {
                    frame: frame.to_file(None),
                    condition_holds,
                    schema_valid,
                });
            }
        }
    };
    match mode {
        CorrespondenceMode::Exhaustive => {
            if worlds == 0 || worlds > MAX_EXHAUSTIVE_WORLDS {
                return Err(Error::Frame(format!(
                    "exhaustive correspondence supports 1..={MAX_EXHAUSTIVE_WORLDS} worlds; use sampling"
                )));
            }
            for_each_frame(worlds, &mut visit);
        }
        CorrespondenceMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                visit(&sample_frame(worlds, &mut rng)?);
            }
        }
    }
    Ok(report)
}

/// Visit every selection function on `worlds` worlds.
pub fn for_each_frame<F: FnMut(&SelectionFrame)>(worlds: usize, mut visit: F) {
    let subsets = 1u32 << worlds;
    let entries = worlds << worlds;
    let mut frame = SelectionFrame::from_fn(worlds, |_, _| WorldSet::EMPTY).expect("size checked");
    let mut digits = vec![0u32; entries];
    loop {
        visit(&frame);
        let mut pos = 0;
        loop {
            if pos == entries {
                return;
            }
            digits[pos] += 1;
            let (w, x) = (pos >> worlds, WorldSet((pos & ((1 << worlds) - 1)) as u32));
            if digits[pos] < subsets {
                frame.set(w, x, WorldSet(digits[pos]));
                break;
            }
            digits[pos] = 0;
            frame.set(w, x, WorldSet::EMPTY);
            pos += 1;
        }
    }
}

/// Draw a frame from a mixture: uniformly random tables, random tables
/// respecting `g(i,X) ⊆ X`, ranking frames (`g(i,X)` = the `i`-closest
/// worlds of `X`), ranking frames with one entry perturbed, and strict
/// frames `g(i,X) = X ∩ R_i`. The mixture makes frames that satisfy the
/// stronger conditions common.
pub fn sample_frame(worlds: usize, rng: &mut ChaCha8Rng) -> Result<SelectionFrame> {
    let full = WorldSet::full(worlds);
    match rng.gen_range(0..5) {
        0 => SelectionFrame::from_fn(worlds, |_, _| WorldSet(rng.gen_range(0..=full.0))),
        1 => SelectionFrame::from_fn(worlds, |_, x| WorldSet(rng.gen::<u32>() & x.0)),
        4 => {
            let reach: Vec<u32> = (0..worlds).map(|_| rng.gen::<u32>() & full.0).collect();
            SelectionFrame::from_fn(worlds, |i, x| WorldSet(x.0 & reach[i]))
        }
        kind => {
            let centered = rng.gen_bool(0.5);
            let ranks: Vec<Vec<u32>> = (0..worlds)
                .map(|i| {
                    let mut r: Vec<u32> = (0..worlds).map(|_| rng.gen_range(1..=worlds as u32)).collect();
                    if centered {
                        r[i] = 0;
                    }
                    r
                })
                .collect();
            let mut frame = SelectionFrame::from_fn(worlds, |i, x| {
                let best = x.worlds().map(|w| ranks[i][w]).min();
                match best {
                    None => WorldSet::EMPTY,
                    Some(b) => WorldSet::from_worlds(x.worlds().filter(|w| ranks[i][*w] == b)),
                }
            })?;
            if kind == 3 {
                let w = rng.gen_range(0..worlds);
                let xs: Vec<u32> = (0..=full.0).collect();
                let x = WorldSet(*xs.choose(rng).expect("non-empty"));
                frame.set(w, x, WorldSet(rng.gen::<u32>() & x.0));
            }
            Ok(frame)
        }
    }
}
