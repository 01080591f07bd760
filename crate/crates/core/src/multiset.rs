//! Size-k multisets over `0..n`, as lexicographic nondecreasing index tuples.

/// `k! / ∏ cᵢ!` for the run lengths of a nondecreasing tuple.
pub(crate) fn multinomial(sorted: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut run = 0u128;
    for (pos, w) in sorted.iter().enumerate() {
        run = if pos > 0 && sorted[pos - 1] == *w {
            run + 1
        } else {
            1
        };
        // multiply by (pos+1)/run, kept integral: running value is a
        // product of multinomials of prefixes
        acc = acc * (pos as u128 + 1) / run;
    }
    acc
}

/// Calls `f(tuple, multinomial)` for every nondecreasing `k`-tuple over `0..n`.
pub(crate) fn for_each_multiset(n: usize, k: usize, mut f: impl FnMut(&[usize], u128)) {
    if n == 0 || k == 0 {
        return;
    }
    let mut idx = vec![0usize; k];
    loop {
        f(&idx, multinomial(&idx));
        // advance: rightmost position that can grow
        let mut p = k;
        while p > 0 && idx[p - 1] == n - 1 {
            p -= 1;
        }
        if p == 0 {
            return;
        }
        let v = idx[p - 1] + 1;
        for slot in &mut idx[p - 1..] {
            *slot = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::binomial;

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[0, 0, 0]), 1);
        assert_eq!(multinomial(&[0, 0, 1]), 3);
        assert_eq!(multinomial(&[0, 1, 2]), 6);
        assert_eq!(multinomial(&[0, 0, 1, 1]), 6);
        assert_eq!(multinomial(&[2; 16]), 1);
    }

    #[test]
    fn counts_match_binomials_and_powers() {
        for n in 1..6usize {
            for k in 1..5usize {
                let mut count = 0u128;
                let mut weight = 0u128;
                for_each_multiset(n, k, |t, m| {
                    assert!(t.windows(2).all(|w| w[0] <= w[1]));
                    count += 1;
                    weight += m;
                });
                assert_eq!(count, binomial((n + k - 1) as u64, k as u64));
                // Σ multinomials = number of ordered tuples = n^k
                assert_eq!(weight, (n as u128).pow(k as u32));
            }
        }
    }
}
