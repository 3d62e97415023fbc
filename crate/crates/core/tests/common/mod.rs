//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

/// Semiprime operations on the chain `{P^0..P^d, 0}` of `K[[t]]` that extend
/// to `{P^0..P^(d+k), 0}`, found by testing every extensive table. Index
/// `i <= d` stands for `P^i` and index `d + 1` for `(0)`.
pub fn brute_force_chain_semiprime(d: usize, k: usize) -> Vec<Vec<usize>> {
    let base = chain_tables(d);
    let ext = chain_tables(d + k);
    let embed = |x: usize| if x == d + 1 { d + k + 1 } else { x };
    let mut out: Vec<Vec<usize>> = base
        .into_iter()
        .filter(|f| {
            ext.iter()
                .any(|g| (0..d + 2).all(|i| g[embed(i)] == embed(f[i])))
        })
        .collect();
    out.sort();
    out
}

/// Every extensive, monotone, idempotent table on `{P^0..P^top, 0}` that
/// satisfies `f(I) f(J) ⊆ f(IJ)` whenever `IJ` lies in the chain.
pub fn chain_tables(top: usize) -> Vec<Vec<usize>> {
    let zero = top + 1;
    let n = top + 2;
    // P^i has valuation i; (0) has valuation infinity.
    let val = |x: usize| if x == zero { usize::MAX } else { x };
    let mul = |a: usize, b: usize| -> Option<usize> {
        if a == zero || b == zero {
            Some(zero)
        } else if a + b <= top {
            Some(a + b)
        } else {
            None
        }
    };
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        let ok = (0..n).all(|i| val(f[i]) <= val(i))
            && (0..n).all(|i| f[f[i]] == f[i])
            && (0..n).all(|i| (0..n).all(|j| val(i) > val(j) || val(f[i]) <= val(f[j])))
            && (0..n).all(|i| {
                (0..n).all(|j| match mul(i, j) {
                    Some(k) => val(f[k]) <= val(f[i]).saturating_add(val(f[j])),
                    None => true,
                })
            });
        if ok {
            out.push(f.clone());
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            f[pos] += 1;
            if f[pos] < n {
                break;
            }
            f[pos] = 0;
            pos += 1;
        }
    }
}

/// Coefficients `b_1, b_3, ..., b_(2r-1)` of the normal form
/// `t^n + b_1 t^(n+1) + b_3 t^(n+3) + ...` of `(f)` in `K[[t^2, t^(2r+1)]]`,
/// where `a[i]` is the coefficient of `t^(n+i)` in the monic `f`.
///
/// `b_(2m-1)` is the signed sum over `i` and compositions `(j_1..j_k)` of
/// `m - i` of `(-1)^k a_(2i-1) a_(2 j_1) ... a_(2 j_k)`, reduced mod `p`.
pub fn principal_normal_form(a: &[i64], r: usize, p: i64) -> Vec<i64> {
    let get = |i: usize| a.get(i).copied().unwrap_or(0);
    (1..=r)
        .map(|m| {
            let mut total = 0i64;
            for i in 1..=m {
                for comp in compositions(m - i) {
                    let sign = if comp.len() % 2 == 0 { 1 } else { -1 };
                    let prod = comp
                        .iter()
                        .fold(get(2 * i - 1), |acc, &j| acc * get(2 * j) % p);
                    total += sign * prod;
                }
            }
            total.rem_euclid(p)
        })
        .collect()
}

/// All ordered compositions of `n` into positive parts (`[[]]` for 0).
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Covering pairs `(larger, smaller)` drawn as solid lines in the published
/// lattice picture of `F_2[[t^2, t^5]]`, with `a, b` ranging over `F_2`.
/// The line from `R` to `(t^4, t^5)` is omitted: `(t^2, t^5)` lies between.
pub fn pictured_covers_2_5() -> Vec<(String, String)> {
    let mut e: Vec<(String, String)> = vec![
        ("R", "(t^2, t^5)"),
        ("(t^2, t^5)", "(t^4, t^5)"),
        ("(t^2, t^5)", "(t^2)"),
        ("(t^2, t^5)", "(t^2 + t^5)"),
        ("(t^2)", "(t^4, t^7)"),
        ("(t^2 + t^5)", "(t^4, t^7)"),
        ("(t^4, t^7)", "(t^4)"),
        ("(t^4, t^7)", "(t^4 + t^7)"),
        ("(t^4, t^5)", "(t^4, t^7)"),
        ("(t^4, t^7)", "(t^6, t^7)"),
        ("(t^4, t^5)", "(t^4 + t^5, t^7)"),
        ("(t^4 + t^5, t^7)", "(t^6, t^7)"),
        ("(t^4 + t^5, t^7)", "(t^4 + t^5)"),
        ("(t^4 + t^5, t^7)", "(t^4 + t^5 + t^7)"),
        ("(t^4, t^5)", "(t^5, t^6)"),
        ("(t^5, t^6)", "(t^6, t^7)"),
        ("(t^5, t^6)", "(t^5, t^8)"),
        ("(t^5, t^6)", "(t^5 + t^6, t^8)"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    e.sort();
    e
}
