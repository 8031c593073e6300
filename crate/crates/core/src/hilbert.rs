//! Hilbert series of monomial ideals and the graded rings they present.

use serde::Serialize;

use crate::monomial::Monomial;

/// `H(t) = h(t) / (1 - t)^dim` with `h(1) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Coefficients of `h`, constant term first.
    pub numerator: Vec<i64>,
    pub dim: usize,
}

impl HilbertSeries {
    /// `e = h(1)`.
    pub fn multiplicity(&self) -> i64 {
        self.numerator.iter().sum()
    }

    pub fn numerator_degree(&self) -> i64 {
        self.numerator.len() as i64 - 1
    }

    /// `deg h - dim`; the a-invariant of a Cohen-Macaulay ring.
    pub fn a_invariant(&self) -> i64 {
        self.numerator_degree() - self.dim as i64
    }

    /// Coefficient of `t^δ` in the series expansion.
    pub fn value(&self, delta: i64) -> i64 {
        if delta < 0 {
            return 0;
        }
        if self.dim == 0 {
            return self.numerator.get(delta as usize).copied().unwrap_or(0);
        }
        let d = self.dim as i64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| (*k as i64) <= delta)
            .map(|(k, &h)| h * binomial(delta - k as i64 + d - 1, d - 1))
            .sum()
    }
}

impl std::fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        write!(f, "(")?;
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let sep = if first { "" } else { " " };
            let abs = c.abs();
            let coef = if abs == 1 && k > 0 { String::new() } else { abs.to_string() };
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if first {
                write!(f, "{sign}{coef}{mono}")?;
            } else {
                write!(f, "{sep}{sign} {coef}{mono}")?;
            }
            first = false;
        }
        write!(f, ")/(1-t)^{}", self.dim)
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

/// Numerator `K(t)` of the Hilbert series `K(t)/(1-t)^n` of `S/M`.
fn k_polynomial(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let mut coprime = true;
    'outer: for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].is_coprime(&gens[j]) {
                coprime = false;
                break 'outer;
            }
        }
    }
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the variable occurring in the most non-linear generators
    let mut counts = [0usize; crate::monomial::MAX_VARS];
    for g in gens.iter().filter(|g| g.degree() > 1) {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let var = (0..crate::monomial::MAX_VARS).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let x = Monomial::var(var);
    let mut with_x: Vec<Monomial> = gens.iter().filter(|g| g.exp(var) == 0).copied().collect();
    with_x.push(x);
    let colon: Vec<Monomial> = gens.iter().map(|g| if g.exp(var) > 0 { x.div(g).unwrap() } else { *g }).collect();
    let mut out = k_polynomial(with_x);
    let tail = k_polynomial(colon);
    poly_add_shifted(&mut out, &tail, 1);
    out
}

/// Hilbert series of `S/M` for the monomial ideal `M` generated by `lms` in
/// `nvars` variables.
pub fn hilbert_series(lms: &[Monomial], nvars: usize) -> HilbertSeries {
    let mut h = k_polynomial(lms.to_vec());
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    let mut dim = nvars;
    while dim > 0 && h.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t)
        let mut q = vec![0i64; h.len() - 1];
        let mut acc = 0;
        for k in 0..q.len() {
            acc += h[k];
            q[k] = acc;
        }
        h = q;
        dim -= 1;
    }
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    HilbertSeries { numerator: h, dim }
}

/// Number of monomials of degree `deg` in `nvars` variables divisible by no
/// element of `lms`.
pub fn standard_monomial_count(lms: &[Monomial], nvars: usize, deg: u32) -> u64 {
    Monomial::all_of_degree(nvars, deg)
        .iter()
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn product_of_two_variables() {
        let hs = hilbert_series(&[mono(&[1, 1, 0])], 3);
        assert_eq!(hs.numerator, vec![1, 1]);
        assert_eq!(hs.dim, 2);
        assert_eq!(hs.multiplicity(), 2);
        // series of k[x,y,z]/(xy): 1, 3, 5, 7, ...
        for d in 0..8 {
            assert_eq!(hs.value(d), 2 * d + 1);
        }
    }

    #[test]
    fn polynomial_ring() {
        let hs = hilbert_series(&[], 1);
        assert_eq!(hs.numerator, vec![1]);
        assert_eq!((hs.dim, hs.multiplicity(), hs.a_invariant()), (1, 1, -1));
    }

    #[test]
    fn artinian_quotient() {
        let hs = hilbert_series(&[mono(&[2, 0]), mono(&[0, 3])], 2);
        assert_eq!(hs.dim, 0);
        assert_eq!(hs.numerator, vec![1, 2, 2, 1]);
        assert_eq!(hs.multiplicity(), 6);
    }

    #[test]
    fn series_agrees_with_standard_monomial_count() {
        let lms = vec![mono(&[2, 1, 0, 0]), mono(&[0, 2, 2, 0]), mono(&[1, 0, 1, 1]), mono(&[0, 0, 0, 3]), mono(&[3, 0, 0, 0])];
        let hs = hilbert_series(&lms, 4);
        for d in 0..=12 {
            assert_eq!(hs.value(d), standard_monomial_count(&lms, 4, d as u32) as i64, "degree {d}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, -1), 0);
    }
}
