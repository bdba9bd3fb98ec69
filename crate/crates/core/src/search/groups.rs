use crate::group::Group;

fn partitions(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max_part)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

fn prime_powers(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factor lists `n₁, n₂, …` with `n_{i+1} | n_i` for all Abelian
/// groups of order `n`, in descending lexicographic order.
pub fn invariant_factor_lists(n: u32) -> Vec<Vec<u32>> {
    if n <= 1 {
        return vec![Vec::new()];
    }
    let mut lists: Vec<Vec<u32>> = vec![Vec::new()];
    for (p, e) in prime_powers(n) {
        let mut parts = Vec::new();
        partitions(e, e, &mut Vec::new(), &mut parts);
        let mut next = Vec::new();
        for list in &lists {
            for part in &parts {
                let len = list.len().max(part.len());
                let combined = (0..len)
                    .map(|i| list.get(i).copied().unwrap_or(1) * p.pow(part.get(i).copied().unwrap_or(0)))
                    .collect();
                next.push(combined);
            }
        }
        lists = next;
    }
    lists.sort_unstable_by(|a, b| b.cmp(a));
    lists
}

/// One group per isomorphism class of Abelian groups of order at most
/// `max_order`, by increasing order.
pub fn enumerate_small_groups(max_order: u32) -> Vec<Group> {
    (1..=max_order)
        .flat_map(invariant_factor_lists)
        .map(|f| Group::new(&f).expect("orders are small and non-zero"))
        .collect()
}
