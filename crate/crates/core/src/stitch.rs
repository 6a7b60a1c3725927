//! Curve-stitching (string-art) templates: pins plus an ordered chord list
//! whose envelope traces a curve.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::PlaneCurve;

/// Pins closer than this are the same pin.
pub const PIN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StitchError {
    #[error("rail {rail} has {points} points, fewer than the {pins} pins requested")]
    RailTooShort {
        rail: &'static str,
        points: usize,
        pins: usize,
    },
    #[error("need at least {min} pins, got {got}")]
    TooFewPins { min: usize, got: usize },
    #[error("pins {0} and {1} coincide")]
    CoincidentPins(usize, usize),
    #[error("chord {0} has zero length")]
    ZeroLengthChord(usize),
    #[error("step must satisfy 1 <= step < pins, got step {step} for {pins} pins")]
    BadStep { step: usize, pins: usize },
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
}

/// A named sequence of pins the chords run between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rail {
    pub name: String,
    pub pins: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StitchPattern {
    pub pins: Vec<[f64; 2]>,
    /// Threading order: chord `i` is stitched `i`-th.
    pub chords: Vec<[usize; 2]>,
    pub rails: Vec<Rail>,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

impl StitchPattern {
    pub fn chord_endpoints(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        let [a, b] = self.chords[i];
        (self.pins[a], self.pins[b])
    }

    /// Checks chord indices, chord lengths and pin distinctness.
    pub fn validate(&self) -> Result<(), StitchError> {
        for i in 0..self.pins.len() {
            for j in i + 1..self.pins.len() {
                if dist(self.pins[i], self.pins[j]) < PIN_TOLERANCE {
                    return Err(StitchError::CoincidentPins(i, j));
                }
            }
        }
        for (i, [a, b]) in self.chords.iter().enumerate() {
            if *a >= self.pins.len() || *b >= self.pins.len() || a == b {
                return Err(StitchError::ZeroLengthChord(i));
            }
        }
        Ok(())
    }

    /// Largest pin-to-pin distance.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.pins.iter().enumerate() {
            for q in &self.pins[i + 1..] {
                d = d.max(dist(*p, *q));
            }
        }
        d
    }
}

fn pick_pins(rail: &PlaneCurve, n: usize, name: &'static str) -> Result<Vec<[f64; 2]>, StitchError> {
    if rail.len() < n {
        return Err(StitchError::RailTooShort {
            rail: name,
            points: rail.len(),
            pins: n,
        });
    }
    let last = rail.len() - 1;
    let picked: Vec<[f64; 2]> = (0..n)
        .map(|i| rail.points[(i * last + (n - 1) / 2) / (n - 1)])
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if dist(picked[i], picked[j]) < PIN_TOLERANCE {
                return Err(StitchError::CoincidentPins(i, j));
            }
        }
    }
    Ok(picked)
}

/// Stitches `n` chords between two rails. Pins are chosen evenly by sample
/// index; chord `i` joins pin `i` of rail A to pin `i` (or `n - 1 - i` when
/// `reversed`) of rail B. Pins shared by both rails are merged.
pub fn two_rail_stitch(
    rail_a: &PlaneCurve,
    rail_b: &PlaneCurve,
    n: usize,
    reversed: bool,
) -> Result<StitchPattern, StitchError> {
    if n < 2 {
        return Err(StitchError::TooFewPins { min: 2, got: n });
    }
    let a = pick_pins(rail_a, n, "A")?;
    let b = pick_pins(rail_b, n, "B")?;
    let mut pins = a.clone();
    let rail_a_ids: Vec<usize> = (0..n).collect();
    let rail_b_ids: Vec<usize> = b
        .iter()
        .map(|p| match pins.iter().position(|q| dist(*p, *q) < PIN_TOLERANCE) {
            Some(shared) => shared,
            None => {
                pins.push(*p);
                pins.len() - 1
            }
        })
        .collect();
    let chords: Vec<[usize; 2]> = (0..n)
        .map(|i| {
            let j = if reversed { n - 1 - i } else { i };
            [rail_a_ids[i], rail_b_ids[j]]
        })
        .collect();
    if let Some(bad) = chords.iter().position(|[p, q]| p == q) {
        return Err(StitchError::ZeroLengthChord(bad));
    }
    Ok(StitchPattern {
        pins,
        chords,
        rails: vec![
            Rail { name: "A".into(), pins: rail_a_ids },
            Rail { name: "B".into(), pins: rail_b_ids },
        ],
    })
}

fn circle_pins(pins: usize, radius: f64) -> Result<Vec<[f64; 2]>, StitchError> {
    if pins < 3 {
        return Err(StitchError::TooFewPins { min: 3, got: pins });
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(StitchError::BadRadius(radius));
    }
    Ok((0..pins)
        .map(|k| {
            let a = TAU * k as f64 / pins as f64;
            [radius * a.cos(), radius * a.sin()]
        })
        .collect())
}

/// Pins evenly on a circle; chord `k` joins pin `k` to pin `(k + step) mod pins`.
/// The chords envelope a concentric circle of radius `radius * cos(pi * step / pins)`.
pub fn circle_stitch(pins: usize, step: usize, radius: f64) -> Result<StitchPattern, StitchError> {
    let points = circle_pins(pins, radius)?;
    if step == 0 || step >= pins {
        return Err(StitchError::BadStep { step, pins });
    }
    Ok(StitchPattern {
        pins: points,
        chords: (0..pins).map(|k| [k, (k + step) % pins]).collect(),
        rails: vec![Rail { name: "circle".into(), pins: (0..pins).collect() }],
    })
}

/// Times-table variant: chord `k` joins pin `k` to pin `factor * k mod pins`.
/// Factor 2 envelopes a cardioid, factor 3 a nephroid. Chords that would
/// start and end on the same pin are left out.
pub fn multiplier_stitch(pins: usize, factor: usize, radius: f64) -> Result<StitchPattern, StitchError> {
    let points = circle_pins(pins, radius)?;
    if factor < 2 {
        return Err(StitchError::BadStep { step: factor, pins });
    }
    Ok(StitchPattern {
        pins: points,
        chords: (0..pins)
            .map(|k| [k, (factor * k) % pins])
            .filter(|[a, b]| a != b)
            .collect(),
        rails: vec![Rail { name: "circle".into(), pins: (0..pins).collect() }],
    })
}
