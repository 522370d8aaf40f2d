use std::cmp::Ordering;
use std::fmt;

/// Largest supported complex dimension (index sets are stored as `u16` masks).
pub const MAX_DIM: usize = 16;

/// Basis element `dz^S ∧ dz̄^T`, with `S` (holomorphic) and `T`
/// (antiholomorphic) strictly increasing index sets.
///
/// Bit `j` of each mask stands for index `j + 1`. The canonical factor order
/// is all `dz` factors (increasing) followed by all `dz̄` factors (increasing).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    holo: u16,
    anti: u16,
}

impl Monomial {
    /// The empty monomial, i.e. the constant function 1.
    pub const ONE: Monomial = Monomial { holo: 0, anti: 0 };

    pub fn from_masks(holo: u16, anti: u16) -> Self {
        Monomial { holo, anti }
    }

    /// Build from 1-based index lists. Returns `None` on a repeated or
    /// out-of-range index; the lists may be given in any order.
    pub fn from_indices(holo: &[usize], anti: &[usize]) -> Option<Self> {
        Some(Monomial { holo: mask_of(holo)?, anti: mask_of(anti)? })
    }

    pub fn holo_mask(self) -> u16 {
        self.holo
    }

    pub fn anti_mask(self) -> u16 {
        self.anti
    }

    pub fn holo_indices(self) -> Vec<usize> {
        indices_of(self.holo)
    }

    pub fn anti_indices(self) -> Vec<usize> {
        indices_of(self.anti)
    }

    pub fn p(self) -> usize {
        self.holo.count_ones() as usize
    }

    pub fn q(self) -> usize {
        self.anti.count_ones() as usize
    }

    pub fn degree(self) -> usize {
        self.p() + self.q()
    }

    /// Largest index used, 0 for the constant monomial.
    pub fn max_index(self) -> usize {
        let m = self.holo | self.anti;
        (16 - m.leading_zeros()) as usize
    }

    /// `self ∧ other = sign · (merged monomial)`, or `None` when a factor repeats.
    pub fn wedge(self, other: Monomial) -> Option<(i8, Monomial)> {
        if self.holo & other.holo != 0 || self.anti & other.anti != 0 {
            return None;
        }
        // dz^{S1} dz̄^{T1} dz^{S2} dz̄^{T2}: first move dz^{S2} left across dz̄^{T1}.
        let mut odd = (self.q() * other.p()) % 2 == 1;
        odd ^= merge_is_odd(self.holo, other.holo);
        odd ^= merge_is_odd(self.anti, other.anti);
        let sign = if odd { -1 } else { 1 };
        Some((sign, Monomial { holo: self.holo | other.holo, anti: self.anti | other.anti }))
    }

    /// Complex conjugate of the basis element: `conj(dz^S ∧ dz̄^T) = sign · dz^T ∧ dz̄^S`.
    pub fn conjugate(self) -> (i8, Monomial) {
        let sign = if (self.p() * self.q()) % 2 == 1 { -1 } else { 1 };
        (sign, Monomial { holo: self.anti, anti: self.holo })
    }

    /// The monomial `dz^{T^c} ∧ dz̄^{S^c}` complementary to `self` in dimension `n`.
    pub fn star_partner(self, n: usize) -> Monomial {
        let full = full_mask(n);
        Monomial { holo: full & !self.anti, anti: full & !self.holo }
    }

    /// All monomials of total degree `k` in dimension `n`, in canonical order.
    pub fn of_degree(n: usize, k: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for p in (0..=k.min(n)).rev() {
            let q = k - p;
            if q > n {
                continue;
            }
            out.extend(Self::of_bidegree(n, p, q));
        }
        out.sort();
        out
    }

    /// All monomials of bidegree `(p, q)` in dimension `n`, in canonical order.
    pub fn of_bidegree(n: usize, p: usize, q: usize) -> Vec<Monomial> {
        let holos = subsets(n, p);
        let antis = subsets(n, q);
        let mut out = Vec::with_capacity(holos.len() * antis.len());
        for &h in &holos {
            for &a in &antis {
                out.push(Monomial { holo: h, anti: a });
            }
        }
        out.sort();
        out
    }
}

pub(crate) fn full_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

fn mask_of(indices: &[usize]) -> Option<u16> {
    let mut m = 0u16;
    for &i in indices {
        if i == 0 || i > MAX_DIM {
            return None;
        }
        let bit = 1u16 << (i - 1);
        if m & bit != 0 {
            return None;
        }
        m |= bit;
    }
    Some(m)
}

fn indices_of(mask: u16) -> Vec<usize> {
    (0..16).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

/// Parity of the number of pairs `(a, b)`, `a ∈ A`, `b ∈ B` with `a > b`:
/// the sign of shuffling the sorted factors of `B` into those of `A`.
fn merge_is_odd(a: u16, b: u16) -> bool {
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if bit >= 15 { 0 } else { a & !((1u16 << (bit + 1)) - 1) };
        count += above.count_ones();
    }
    count % 2 == 1
}

/// All `k`-element subsets of `{1..n}` as masks.
fn subsets(n: usize, k: usize) -> Vec<u16> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for m in 0u32..(1u32 << n) {
        if m.count_ones() as usize == k {
            out.push(m as u16);
        }
    }
    out
}

/// Lexicographic rank key for index sets of equal size.
fn lex_key(mask: u16) -> u16 {
    !mask.reverse_bits()
}

/// Ordered by total degree, then holomorphic degree (descending), then the
/// index sets lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(other.p().cmp(&self.p()))
            .then(lex_key(self.holo).cmp(&lex_key(other.holo)))
            .then(lex_key(self.anti).cmp(&lex_key(other.anti)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_indices(f: &mut fmt::Formatter<'_>, idx: &[usize]) -> fmt::Result {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    write!(f, "[{}]", parts.join(","))
}

/// `dz[1,3]^dzb[2]`; the constant monomial renders as `1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.holo_indices();
        let t = self.anti_indices();
        match (s.is_empty(), t.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => {
                write!(f, "dz")?;
                write_indices(f, &s)
            }
            (true, false) => {
                write!(f, "dzb")?;
                write_indices(f, &t)
            }
            (false, false) => {
                write!(f, "dz")?;
                write_indices(f, &s)?;
                write!(f, "^dzb")?;
                write_indices(f, &t)
            }
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sign of the permutation sorting `seq` (distinct keys), by bubble sort.
    fn bubble_sign(mut seq: Vec<usize>) -> i8 {
        let mut sign = 1;
        for i in 0..seq.len() {
            for j in 0..seq.len() - 1 - i {
                if seq[j] > seq[j + 1] {
                    seq.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        sign
    }

    /// Generator position in the canonical order: dz^1..dz^n, then dz̄^1..dz̄^n.
    fn factor_keys(m: Monomial) -> Vec<usize> {
        let mut keys: Vec<usize> = m.holo_indices();
        keys.extend(m.anti_indices().into_iter().map(|i| 100 + i));
        keys
    }

    #[test]
    fn wedge_sign_matches_permutation_oracle() {
        let n = 4;
        let all: Vec<Monomial> = (0..=2 * n).flat_map(|k| Monomial::of_degree(n, k)).collect();
        assert_eq!(all.len(), 256);
        for &a in &all {
            for &b in &all {
                let mut seq = factor_keys(a);
                seq.extend(factor_keys(b));
                let mut dedup = seq.clone();
                dedup.sort();
                dedup.dedup();
                match a.wedge(b) {
                    None => assert!(dedup.len() < seq.len()),
                    Some((sign, m)) => {
                        assert_eq!(dedup.len(), seq.len());
                        assert_eq!(sign, bubble_sign(seq));
                        assert_eq!(factor_keys(m), dedup);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_sign_matches_oracle() {
        for m in (0..=6).flat_map(|k| Monomial::of_degree(3, k)) {
            let (sign, c) = m.conjugate();
            // conj(dz^S dz̄^T) = dz̄^S dz^T; sort those factors.
            let mut seq: Vec<usize> = m.holo_indices().into_iter().map(|i| 100 + i).collect();
            seq.extend(m.anti_indices());
            assert_eq!(sign, bubble_sign(seq));
            assert_eq!(c.conjugate().1, m);
        }
    }

    #[test]
    fn degree_enumeration_counts() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for n in 1..=4 {
            for k in 0..=2 * n {
                assert_eq!(Monomial::of_degree(n, k).len(), binom(2 * n, k));
            }
        }
    }

    #[test]
    fn rendering() {
        let m = Monomial::from_indices(&[3, 1], &[2]).unwrap();
        assert_eq!(m.to_string(), "dz[1,3]^dzb[2]");
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert_eq!(m.max_index(), 3);
        assert!(Monomial::from_indices(&[1, 1], &[]).is_none());
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let a = Monomial::from_indices(&[1, 4], &[]).unwrap();
        let b = Monomial::from_indices(&[2, 3], &[]).unwrap();
        assert!(a < b);
        let c = Monomial::from_indices(&[1], &[]).unwrap();
        let d = Monomial::from_indices(&[], &[1]).unwrap();
        assert!(c < d);
    }
}
