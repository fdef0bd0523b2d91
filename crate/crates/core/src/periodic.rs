//! Shared helpers for eventually periodic digit words.

/// Reduces (preperiod, period) to the unique minimal pair describing the same
/// infinite word: shortest period first, then shortest preperiod (trailing
/// preperiod digits that match the period fold into a rotation of it).
pub(crate) fn minimize(pre: &mut Vec<u32>, per: &mut Vec<u32>) {
    debug_assert!(!per.is_empty());
    let len = per.len();
    for cand in 1..=len {
        if !len.is_multiple_of(cand) {
            continue;
        }
        if (cand..len).all(|i| per[i] == per[i - cand]) {
            per.truncate(cand);
            break;
        }
    }
    while let Some(&tail) = pre.last() {
        if tail != *per.last().unwrap() {
            break;
        }
        pre.pop();
        let d = per.pop().unwrap();
        per.insert(0, d);
    }
}

/// Digit at 0-based position i of the infinite word pre ++ per ++ per ++ ...
pub(crate) fn digit_at(pre: &[u32], per: &[u32], i: u64) -> u32 {
    let p = pre.len() as u64;
    if i < p {
        pre[i as usize]
    } else {
        per[((i - p) % per.len() as u64) as usize]
    }
}
