use serde::Serialize;

use super::coeff::powered;
use super::PairValues;

/// Absolute slack for every ≥/≤ condition.
pub const CONDITION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub detail: String,
}

impl ConditionCheck {
    fn new(holds: bool, detail: String) -> Self {
        Self { holds, detail }
    }
}

/// v_j ≥ v_{j+1} for every j.
pub fn check_descending(pv: &PairValues) -> ConditionCheck {
    let v = pv.values();
    match (0..v.len().saturating_sub(1)).find(|&j| v[j] + CONDITION_TOL < v[j + 1]) {
        Some(j) => ConditionCheck::new(
            false,
            format!("not descending at position {j}: {} < {}", v[j], v[j + 1]),
        ),
        None => ConditionCheck::new(true, "values descending".into()),
    }
}

/// tails[i] = Σ_{j ≥ i} v_j^γ, with a trailing zero.
fn tails(values: &[f64], gamma: f64) -> (Vec<f64>, Vec<f64>) {
    let powered_vals: Vec<f64> = values.iter().map(|&v| powered(v, gamma)).collect();
    let mut tails = vec![0.0; values.len() + 1];
    for i in (0..values.len()).rev() {
        tails[i] = tails[i + 1] + powered_vals[i];
    }
    (powered_vals, tails)
}

/// v_i^γ ≥ Σ_{j>i} v_j^γ for i = 0, …, N−2.
pub fn check_dominance(pv: &PairValues, gamma: f64) -> ConditionCheck {
    let v = pv.values();
    let (p, t) = tails(v, gamma);
    let n = v.len();
    for i in 0..n.saturating_sub(1) {
        if p[i] + CONDITION_TOL < t[i + 1] {
            return ConditionCheck::new(
                false,
                format!(
                    "dominance fails at i={i}: v^gamma={} < tail sum {}",
                    p[i],
                    t[i + 1]
                ),
            );
        }
    }
    ConditionCheck::new(true, "each term dominates the sum of the later ones".into())
}

/// Both halves of the split condition at `m`: v_i^γ ≥ tail for i ≤ m and
/// v_j^γ ≤ tail for m < j ≤ N−2. `m = −1` leaves the first half empty.
pub fn check_split(pv: &PairValues, gamma: f64, m: i32) -> ConditionCheck {
    let v = pv.values();
    let n = v.len() as i32;
    if m < -1 {
        return ConditionCheck::new(false, format!("split point m={m} below -1"));
    }
    let (p, t) = tails(v, gamma);
    let mut flags = Vec::new();
    let mut holds = true;
    for i in 0..(n - 1).max(0) {
        let iu = i as usize;
        let ok = if i <= m {
            p[iu] + CONDITION_TOL >= t[iu + 1]
        } else {
            p[iu] <= t[iu + 1] + CONDITION_TOL
        };
        holds &= ok;
        flags.push(format!(
            "{}{}{}",
            i,
            if i <= m { ">=" } else { "<=" },
            if ok { "T" } else { "F" }
        ));
    }
    let stated_range = n >= 4 && (1..=n - 3).contains(&m);
    ConditionCheck::new(
        holds,
        format!(
            "m={m} [{}]{}",
            flags.join(","),
            if stated_range {
                ""
            } else {
                " (outside 1<=m<=N-3, N>=4)"
            }
        ),
    )
}

/// The largest m in [1, N−3] satisfying both split halves; needs N ≥ 4.
pub fn split_point(pv: &PairValues, gamma: f64) -> (Option<i32>, String) {
    let n = pv.values().len() as i32;
    if n < 4 {
        return (None, format!("N={n} < 4: no split point in 1..=N-3"));
    }
    let mut details = Vec::new();
    let mut found = None;
    for m in (1..=n - 3).rev() {
        let c = check_split(pv, gamma, m);
        details.push(c.detail.clone());
        if c.holds && found.is_none() {
            found = Some(m);
        }
    }
    (found, details.join("; "))
}

/// The largest m in [−1, N−2] satisfying both split halves. The split bound
/// at m = N−2 is the geometric bound; at m = −1 the dominance prefix is empty.
pub fn admissible_split(pv: &PairValues, gamma: f64) -> Option<i32> {
    let n = pv.values().len() as i32;
    (-1..=(n - 2).max(-1))
        .rev()
        .find(|&m| check_split(pv, gamma, m).holds)
}
