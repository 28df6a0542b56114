//! Formal characters and independent power-series oracles for them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::superalgebra::roots::root_vector;
use crate::superalgebra::{Gen, Weight};

/// Weight multiplicities, valid to a depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub depth: i64,
    pub mult: BTreeMap<Weight, usize>,
}

impl Character {
    pub fn dim(&self) -> usize {
        self.mult.values().sum()
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut mult = self.mult.clone();
        for (w, m) in &other.mult {
            *mult.entry(w.clone()).or_insert(0) += m;
        }
        Character { depth: self.depth.min(other.depth), mult }
    }

    /// `λ_1,…,λ_n,multiplicity` rows under a header, highest weights first.
    pub fn to_csv(&self) -> String {
        let n = self.mult.keys().next().map_or(0, |w| w.n());
        let mut out: Vec<String> = Vec::new();
        let head: Vec<String> = (1..=n).map(|i| format!("lambda_{i}")).chain(["multiplicity".to_string()]).collect();
        out.push(head.join(","));
        for (w, m) in self.mult.iter().rev() {
            let mut row: Vec<String> = w.0.iter().map(|c| c.to_string()).collect();
            row.push(m.to_string());
            out.push(row.join(","));
        }
        out.join("\n") + "\n"
    }
}

/// Power series in root-lattice shifts `Vec<i64>` with a depth tag per term.
type Series = BTreeMap<(Vec<i64>, i64), usize>;

fn multiply_factor(s: &Series, root: &[i64], height: i64, odd: bool, depth: i64) -> Series {
    let mut out = Series::new();
    for ((shift, d), c) in s {
        let mut k = 0i64;
        loop {
            let nd = d + k * height;
            if nd > depth || (odd && k > 1) {
                break;
            }
            let ns: Vec<i64> = shift.iter().zip(root).map(|(a, b)| a + k * b).collect();
            *out.entry((ns, nd)).or_insert(0) += c;
            if height == 0 && !odd {
                break;
            }
            k += 1;
        }
    }
    out
}

fn collapse(top: &[(Weight, usize)], s: &Series, depth: i64) -> Character {
    let mut mult = BTreeMap::new();
    for (w, m) in top {
        for ((shift, _), c) in s {
            *mult.entry(w.shift(shift)).or_insert(0) += m * c;
        }
    }
    Character { depth, mult }
}

/// Expansion of `dim_top · e^λ ∏_{α>0} (1+e^{−α})/(1−e^{−α})` to depth `d`.
pub fn verma_character_series(lambda: &Weight, dim_top: usize, d: i64) -> Character {
    let n = lambda.n();
    let mut s: Series = [((vec![0; n], 0), 1)].into_iter().collect();
    for i in 0..n {
        for j in 0..i {
            let r = root_vector(Gen::e(i, j), n);
            let h = (i - j) as i64;
            s = multiply_factor(&s, &r, h, false, d);
            s = multiply_factor(&s, &r, h, true, d);
        }
    }
    collapse(&[(lambda.clone(), dim_top)], &s, d)
}

/// `ch V · ∏ (1+e^{α})/(1−e^{α})` over the given negative roots (as `(i,j)`
/// pairs for `ε_i − ε_j`), truncated by total root height.
pub fn parabolic_character_series(v: &Character, roots: &[(usize, usize)], d: i64) -> Character {
    let n = v.mult.keys().next().map_or(0, |w| w.n());
    let mut s: Series = [((vec![0; n], 0), 1)].into_iter().collect();
    for &(i, j) in roots {
        let r = root_vector(Gen::e(i, j), n);
        let h = (i as i64 - j as i64).abs();
        s = multiply_factor(&s, &r, h, false, d);
        s = multiply_factor(&s, &r, h, true, d);
    }
    let top: Vec<(Weight, usize)> = v.mult.iter().map(|(w, m)| (w.clone(), *m)).collect();
    collapse(&top, &s, d)
}

/// `ch Λ(g_1) = ∏_{odd basis} (1 + e^{wt})`.
pub fn exterior_odd_character(n: usize) -> Character {
    let mut s: Series = [((vec![0; n], 0), 1)].into_iter().collect();
    for i in 0..n {
        for j in 0..n {
            s = multiply_factor(&s, &root_vector(Gen::f(i, j), n), 0, true, 0);
        }
    }
    collapse(&[(Weight::zero(n), 1)], &s, 0)
}

/// Convolution of characters (weights add).
pub fn convolve(a: &Character, b: &Character) -> Character {
    let mut mult = BTreeMap::new();
    for (wa, ma) in &a.mult {
        for (wb, mb) in &b.mult {
            *mult.entry(wa.add(wb)).or_insert(0) += ma * mb;
        }
    }
    Character { depth: a.depth.min(b.depth), mult }
}

/// Kostant partition count for `gl(n)`: `e^λ ∏_{α>0} 1/(1−e^{−α})` to depth `d`.
pub fn even_verma_character_series(lambda: &Weight, d: i64) -> Character {
    let n = lambda.n();
    let mut s: Series = [((vec![0; n], 0), 1)].into_iter().collect();
    for i in 0..n {
        for j in 0..i {
            s = multiply_factor(&s, &root_vector(Gen::e(i, j), n), (i - j) as i64, false, d);
        }
    }
    collapse(&[(lambda.clone(), 1)], &s, d)
}
