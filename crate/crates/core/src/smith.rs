//! Smith normal form of integer relation matrices and the invariant factors of
//! the finitely generated abelian groups they present.

use std::collections::HashMap;

/// Diagonal of the Smith normal form of `rows` (each row one relation on
/// `ncols` generators). Entries are nonnegative and each divides the next;
/// trailing zeros stand for free factors.
pub fn smith_diagonal(rows: &[Vec<i64>], ncols: usize) -> Vec<i64> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "relation row has wrong width");
            r.iter().map(|&v| v as i128).collect()
        })
        .collect();
    let nrows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pi, pj)) = min_nonzero(&m, t) else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    for j in t..ncols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let p = m[t][t];
                let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| m[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in t..ncols {
                            m[t][j] += m[i][j];
                        }
                    }
                    None => break,
                }
            }
            let (pi, pj) = min_nonzero_in_cross(&m, t);
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(m[t][t].abs() as i64);
        t += 1;
    }
    diag.resize(ncols, 0);
    diag
}

fn min_nonzero(m: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, &v) in row.iter().enumerate().skip(t) {
            if v != 0 && best.is_none_or(|b| v.abs() < b.2) {
                best = Some((i, j, v.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smallest nonzero entry in row t or column t of the active block.
fn min_nonzero_in_cross(m: &[Vec<i128>], t: usize) -> (usize, usize) {
    let mut best = (t, t, m[t][t].abs());
    for (i, row) in m.iter().enumerate().skip(t) {
        let v = row[t].abs();
        if v != 0 && (best.2 == 0 || v < best.2) {
            best = (i, t, v);
        }
    }
    for (j, &v) in m[t].iter().enumerate().skip(t) {
        let v = v.abs();
        if v != 0 && (best.2 == 0 || v < best.2) {
            best = (t, j, v);
        }
    }
    (best.0, best.1)
}

/// Invariant factors d1 | d2 | ... (all > 1) of a finite abelian group given by
/// generators and relations. Panics if the presentation has a free part.
pub fn invariant_factors(rows: &[Vec<i64>], ncols: usize) -> Vec<u64> {
    let diag = smith_diagonal(rows, ncols);
    assert!(diag.iter().all(|&d| d != 0), "presentation is not of a finite group");
    diag.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect()
}

/// 2-parts of the invariant factors, dropping trivial ones.
pub fn two_parts(factors: &[u64]) -> Vec<u64> {
    factors
        .iter()
        .map(|&d| 1u64 << d.trailing_zeros())
        .filter(|&d| d > 1)
        .collect()
}

/// Generators, discrete logarithms and relations of a finite abelian group
/// given by its multiplication on element indices.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<usize>,
    /// Exponent vector of every element in terms of `generators`.
    pub logs: HashMap<usize, Vec<i64>>,
    pub relations: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors(&self.relations, self.generators.len())
    }
}

/// Greedy presentation of the abelian group on `0..order` with the given
/// operation: each new generator extends the subgroup built so far, and the
/// relation closing its coset chain is recorded.
pub fn greedy_presentation(order: usize, identity: usize, op: impl Fn(usize, usize) -> usize) -> Presentation {
    let mut logs: HashMap<usize, Vec<i64>> = HashMap::from([(identity, Vec::new())]);
    let mut generators: Vec<usize> = Vec::new();
    let mut relations: Vec<Vec<i64>> = Vec::new();
    while logs.len() < order {
        let g = (0..order).find(|x| !logs.contains_key(x)).unwrap();
        let k = generators.len();
        for v in logs.values_mut() {
            v.push(0);
        }
        for r in relations.iter_mut() {
            r.push(0);
        }
        let base: Vec<(usize, Vec<i64>)> = logs.iter().map(|(&e, v)| (e, v.clone())).collect();
        let mut power = g;
        let mut j = 1i64;
        while !logs.contains_key(&power) {
            for (e, v) in &base {
                let mut w = v.clone();
                w[k] = j;
                logs.insert(op(*e, power), w);
            }
            power = op(power, g);
            j += 1;
        }
        let mut rel: Vec<i64> = logs[&power].iter().map(|x| -x).collect();
        rel[k] += j;
        relations.push(rel);
        generators.push(g);
    }
    Presentation { generators, logs, relations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn diagonal_examples() {
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(smith_diagonal(&[vec![4, 0], vec![0, 6]], 2), vec![2, 12]);
        assert_eq!(smith_diagonal(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3), vec![2, 6, 12]);
        assert_eq!(smith_diagonal(&[vec![0, 0]], 2), vec![0, 0]);
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 4]], 2), vec![2, 4]);
        assert_eq!(two_parts(&[6, 12, 5]), vec![2, 4]);
    }

    #[test]
    fn greedy_presentation_of_cyclic_products() {
        // Z/4 x Z/6 encoded as 6a + b
        let op = |x: usize, y: usize| 6 * ((x / 6 + y / 6) % 4) + (x % 6 + y % 6) % 6;
        let p = greedy_presentation(24, 0, op);
        assert_eq!(p.invariant_factors(), vec![2, 12]);
        assert_eq!(p.logs.len(), 24);
        assert!(greedy_presentation(1, 0, |_, _| 0).invariant_factors().is_empty());
    }

    fn det(m: &[Vec<i64>]) -> i128 {
        // Bareiss fraction-free elimination
        let n = m.len();
        let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    proptest! {
        #[test]
        fn diagonal_divides_and_preserves_determinant(v in proptest::collection::vec(-9i64..10, 9)) {
            let m: Vec<Vec<i64>> = v.chunks(3).map(|c| c.to_vec()).collect();
            let d = smith_diagonal(&m, 3);
            for w in d.windows(2) {
                if w[0] != 0 {
                    prop_assert_eq!(w[1] % w[0], 0);
                } else {
                    prop_assert_eq!(w[1], 0);
                }
            }
            let prod: i128 = d.iter().map(|&x| x as i128).product();
            prop_assert_eq!(prod, det(&m).abs());
        }
    }
}
