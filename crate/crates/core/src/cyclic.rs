//! Cyclic shifts of lattice paths and the discrete Vervaat transform.

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exploration::PathProcess;

/// Lattice path of `n` steps with every increment `>= -1`.
///
/// It is a bridge when the increments sum to `-1`; operations that need the
/// bridge property check it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkipFreeBridge {
    increments: Vec<i64>,
}

impl SkipFreeBridge {
    pub fn new(increments: Vec<i64>) -> Result<Self> {
        if let Some(&bad) = increments.iter().find(|&&x| x < -1) {
            return Err(Error::NotSkipFree(bad));
        }
        Ok(SkipFreeBridge { increments })
    }

    /// The path with increments `x_j - 1`.
    pub fn from_offspring(offspring: &[usize]) -> Self {
        SkipFreeBridge {
            increments: offspring.iter().map(|&x| x as i64 - 1).collect(),
        }
    }

    pub fn increments(&self) -> &[i64] {
        &self.increments
    }

    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.increments.iter().sum()
    }

    pub fn path(&self) -> PathProcess {
        PathProcess::from_increments(&self.increments)
    }

    pub fn is_bridge(&self) -> bool {
        self.total() == -1
    }

    /// Stays `>= 0` before time `n` and ends at `-1`.
    pub fn is_excursion(&self) -> bool {
        let p = self.path();
        let n = self.len();
        n >= 1 && p.values()[..n].iter().all(|&v| v >= 0) && p.at(n) == -1
    }

    /// First time the path attains its minimum over `{0..n}`.
    pub fn argmin_time(&self) -> usize {
        argmin_time(&self.path())
    }
}

/// `θ(g, i)`: the path whose increments are those of `values` rotated left
/// by `i`, for `0 <= i <= n`. Works over any additive value type so that
/// drift-corrected paths can be shifted in exact rational arithmetic.
pub fn cyclic_shift_values<T>(values: &[T], i: usize) -> Result<Vec<T>>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T>,
{
    let n = values.len().saturating_sub(1);
    if i > n {
        return Err(Error::ShiftOutOfRange { index: i, len: n });
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = T::zero();
    out.push(acc.clone());
    for k in 0..n {
        let j = (k + i) % n;
        acc = acc + (values[j + 1].clone() - values[j].clone());
        out.push(acc.clone());
    }
    Ok(out)
}

pub fn cyclic_shift(g: &PathProcess, i: usize) -> Result<PathProcess> {
    PathProcess::from_values(cyclic_shift_values(g.values(), i)?)
}

/// First `k` with `f(k) = min_j f(j)`.
pub fn argmin_time(f: &PathProcess) -> usize {
    let values = f.values();
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = k;
        }
    }
    best
}

/// Discrete Vervaat transform: the rotation of a bridge at its first argmin.
/// The result is the unique rotation that is an excursion to `-1`.
pub fn vervaat(f: &SkipFreeBridge) -> Result<SkipFreeBridge> {
    if !f.is_bridge() {
        return Err(Error::NotABridge(f.total()));
    }
    let tau = f.argmin_time();
    let n = f.len();
    let increments = (0..n).map(|k| f.increments[(k + tau) % n]).collect();
    Ok(SkipFreeBridge { increments })
}

/// `min{t : f(t) = level}`.
pub fn first_passage(f: &PathProcess, level: i64) -> Option<usize> {
    f.values().iter().position(|&v| v == level)
}

/// Rotation indices `i` in `0..n` whose rotated path is an excursion.
pub fn excursion_rotations(f: &SkipFreeBridge) -> Vec<usize> {
    let n = f.len();
    (0..n)
        .filter(|&i| {
            let rotated = SkipFreeBridge {
                increments: (0..n).map(|k| f.increments[(k + i) % n]).collect(),
            };
            rotated.is_excursion()
        })
        .collect()
}
