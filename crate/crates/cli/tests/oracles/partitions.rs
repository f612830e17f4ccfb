//! Partitions as plain vectors, with the two orders written out from their
//! definitions.

pub type P = Vec<u32>;

pub fn partitions(n: u32) -> Vec<P> {
    fn rec(n: u32, max: u32, prefix: &mut P, out: &mut Vec<P>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 1..=n.min(max) {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`.
pub fn partitions_up_to(n: u32) -> Vec<P> {
    (0..=n).flat_map(partitions).collect()
}

pub fn bipartitions(n: u32) -> Vec<(P, P)> {
    let mut out = Vec::new();
    for k in 0..=n {
        for a in partitions(k) {
            for b in partitions(n - k) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

fn part(p: &P, i: usize) -> u32 {
    p.get(i).copied().unwrap_or(0)
}

/// `a ⪯ b`: `b_{i+1} ≤ a_i ≤ b_i` for all `i`.
pub fn interleaves(a: &P, b: &P) -> bool {
    (0..a.len().max(b.len()) + 1).all(|i| part(b, i + 1) <= part(a, i) && part(a, i) <= part(b, i))
}

pub fn size(p: &P) -> u32 {
    p.iter().sum()
}

pub fn text(p: &P) -> String {
    let parts: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn bitext(b: &(P, P)) -> String {
    format!("{}|{}", text(&b.0), text(&b.1))
}
