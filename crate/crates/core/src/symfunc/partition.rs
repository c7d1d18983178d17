//! Integer partitions, symmetric-group characters, and the cell statistics
//! (arms, legs, n(mu)) entering the Macdonald machinery.

use std::collections::HashMap;

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let mut out = vec![0u32; cols];
        for &p in &self.0 {
            for c in 0..p as usize {
                out[c] += 1;
            }
        }
        Partition(out)
    }

    /// n(mu) = sum (i-1) mu_i.
    pub fn n_stat(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// z_lambda = prod_i i^{m_i} m_i!.
    pub fn z(&self) -> u64 {
        let mut mult: HashMap<u32, u64> = HashMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_insert(0) += 1;
        }
        let mut z = 1u64;
        for (part, m) in mult {
            for _ in 0..m {
                z *= part as u64;
            }
            for k in 1..=m {
                z *= k;
            }
        }
        z
    }

    /// Cells as (row, col), zero-indexed.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, &p) in self.0.iter().enumerate() {
            for c in 0..p as usize {
                out.push((r, c));
            }
        }
        out
    }

    /// Arm length of a cell: boxes strictly to its right in its row.
    pub fn arm(&self, cell: (usize, usize)) -> u32 {
        self.0[cell.0] - 1 - cell.1 as u32
    }

    /// Leg length of a cell: boxes strictly below it in its column.
    pub fn leg(&self, cell: (usize, usize)) -> u32 {
        self.0[cell.0 + 1..]
            .iter()
            .filter(|&&p| p as usize > cell.1)
            .count() as u32
    }

    /// Co-arm: boxes strictly to the left.
    pub fn coarm(&self, cell: (usize, usize)) -> u32 {
        cell.1 as u32
    }

    /// Co-leg: boxes strictly above.
    pub fn coleg(&self, cell: (usize, usize)) -> u32 {
        cell.0 as u32
    }

    /// Dominance order: self <= other.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let mut a = 0i64;
        let mut b = 0i64;
        for i in 0..self.0.len().max(other.0.len()) {
            a += *self.0.get(i).unwrap_or(&0) as i64;
            b += *other.0.get(i).unwrap_or(&0) as i64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Hook partition (n-k, 1^k).
    pub fn hook(n: u32, k: u32) -> Partition {
        debug_assert!(k < n);
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat(1).take(k as usize));
        Partition(parts)
    }

    pub fn single_row(n: u32) -> Partition {
        if n == 0 { Partition::empty() } else { Partition(vec![n]) }
    }

    pub fn single_column(n: u32) -> Partition {
        Partition(vec![1; n as usize])
    }

    pub fn to_key(&self) -> String {
        format!(
            "[{}]",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    pub fn from_key(s: &str) -> Option<Partition> {
        let inner = s.strip_prefix('[')?.strip_suffix(']')?;
        if inner.trim().is_empty() {
            return Some(Partition::empty());
        }
        let parts: Option<Vec<u32>> = inner.split(',').map(|x| x.trim().parse().ok()).collect();
        Some(Partition::new(parts?))
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All partitions of n in ascending lexicographic order (a linear
/// extension of dominance: (1^n) first, (n) last).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 1..=remaining.min(max_part) {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::empty());
        return out;
    }
    rec(n, n, &mut Vec::new(), &mut out);
    // Generation emits partitions by decreasing first part; sort by the
    // ascending-lex convention on the part vectors.
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Murnaghan-Nakayama character chi^lambda(rho), memoized.
pub struct CharTable {
    memo: HashMap<(Vec<u32>, Vec<u32>), i64>,
}

impl CharTable {
    pub fn new() -> Self {
        CharTable { memo: HashMap::new() }
    }

    pub fn chi(&mut self, lambda: &Partition, rho: &Partition) -> i64 {
        debug_assert_eq!(lambda.size(), rho.size());
        self.chi_rec(lambda.parts().to_vec(), rho.parts().to_vec())
    }

    fn chi_rec(&mut self, lambda: Vec<u32>, rho: Vec<u32>) -> i64 {
        if rho.is_empty() {
            return if lambda.is_empty() { 1 } else { 0 };
        }
        let key = (lambda.clone(), rho.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = rho[0];
        let rest: Vec<u32> = rho[1..].to_vec();
        let mut total = 0i64;
        // Remove a border strip of size r from lambda in all possible ways.
        // A strip is determined by its starting row; use the beta-number
        // formulation: subtract r from one first-column hook length.
        let ell = lambda.len();
        let betas: Vec<i64> = lambda
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 + (ell - 1 - i) as i64)
            .collect();
        for i in 0..ell {
            let nb = betas[i] - r as i64;
            if nb < 0 || betas.contains(&nb) {
                continue;
            }
            let mut new_betas = betas.clone();
            new_betas[i] = nb;
            new_betas.sort_unstable_by(|a, b| b.cmp(a));
            // Height of the strip = number of betas passed over.
            let height = betas.iter().filter(|&&b| nb < b && b < betas[i]).count();
            let sign = if height % 2 == 0 { 1 } else { -1 };
            let new_lambda: Vec<u32> = new_betas
                .iter()
                .enumerate()
                .map(|(j, &b)| (b - (ell - 1 - j) as i64) as u32)
                .filter(|&p| p > 0)
                .collect();
            total += sign * self.chi_rec(new_lambda, rest.clone());
        }
        self.memo.insert(key, total);
        total
    }
}
