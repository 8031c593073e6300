//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Largest number of variables a ring may have (including tag variables
/// introduced internally by elimination).
pub const MAX_VARS: usize = 12;

/// An exponent vector. Unused trailing slots are zero, so two monomials of
/// the same ring compare correctly without knowing the variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::default();
        for (i, &e) in exps.iter().enumerate() {
            let e = u16::try_from(e)
                .map_err(|_| Error::Precondition(format!("exponent {e} overflows")))?;
            m.exps[i] = e;
            m.deg += e as u32;
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Panics on exponent overflow (`u16`).
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` if `self` divides `other`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = Monomial::default();
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out.deg = other.deg - self.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::default();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::default();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Moves exponents: `out[map[i]] = self[i]`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut out = Monomial::default();
        for (i, &j) in map.iter().enumerate() {
            out.exps[j] = self.exps[i];
        }
        out.deg = self.deg;
        out
    }

    /// Degree restricted to the variables `range`.
    fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// descending lexicographic order of exponent vectors.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        let mut cur = Monomial::default();
        fill(&mut out, &mut cur, 0, nvars, deg);
        out
    }
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Monomial, var: usize, nvars: usize, left: u32) {
    if var + 1 == nvars {
        cur.exps[var] = left as u16;
        cur.deg += left;
        out.push(*cur);
        cur.deg -= left;
        cur.exps[var] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur.exps[var] = e as u16;
        cur.deg += e;
        fill(out, cur, var + 1, nvars, left - e);
        cur.deg -= e;
    }
    cur.exps[var] = 0;
}

/// Order used on the variables outside an elimination block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum BaseOrder {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Block order eliminating the first `block` variables: grevlex on the
    /// block, ties broken by `rest` on the remaining variables.
    Elimination { block: usize, rest: BaseOrder },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b, 0..MAX_VARS, a.deg, b.deg),
            MonomialOrder::Lex => lex(a, b, 0..MAX_VARS),
            MonomialOrder::Elimination { block, rest } => {
                let (da, db) = (a.partial_degree(0..block), b.partial_degree(0..block));
                grevlex(a, b, 0..block, da, db).then_with(|| match rest {
                    BaseOrder::Grevlex => grevlex(a, b, block..MAX_VARS, a.deg - da, b.deg - db),
                    BaseOrder::Lex => lex(a, b, block..MAX_VARS),
                })
            }
        }
    }

    pub fn base(&self) -> BaseOrder {
        match *self {
            MonomialOrder::Grevlex => BaseOrder::Grevlex,
            MonomialOrder::Lex => BaseOrder::Lex,
            MonomialOrder::Elimination { rest, .. } => rest,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Elimination { .. } => "elimination",
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>, da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for i in range.rev() {
            if a.exps[i] != b.exps[i] {
                // smaller exponent in the last differing variable wins
                return b.exps[i].cmp(&a.exps[i]);
            }
        }
        Ordering::Equal
    })
}

#[inline]
fn lex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    for i in range {
        if a.exps[i] != b.exps[i] {
            return a.exps[i].cmp(&b.exps[i]);
        }
    }
    Ordering::Equal
}

/// Compares two exponent vectors of equal length.
pub fn compare_monomials(m1: &[u32], m2: &[u32], order: MonomialOrder) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::LengthMismatch {
            expected: m1.len(),
            found: m2.len(),
        });
    }
    Ok(order.cmp(&Monomial::from_exponents(m1)?, &Monomial::from_exponents(m2)?))
}
