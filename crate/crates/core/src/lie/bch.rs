//! Baker-Campbell-Hausdorff product from Dynkin's commutator series.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Coeff, LieAlgebra};
use crate::rational::Rational;

/// A word in the letters X (bit 0) and Y (bit 1), read left to right from bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BchWord {
    pub len: u32,
    pub bits: u32,
}

impl BchWord {
    fn letter(&self, t: u32) -> bool {
        self.bits >> t & 1 == 1
    }

    fn suffix(&self) -> BchWord {
        BchWord { len: self.len - 1, bits: self.bits >> 1 }
    }
}

/// Coefficients `c_w` with `log(e^X e^Y) = sum_w c_w [w_0,[w_1,...[w_{m-2},w_{m-1}]]]`,
/// truncated at word length `max_len`.
#[derive(Debug, Clone)]
pub struct BchTable {
    max_len: u32,
    words: Vec<(BchWord, Rational)>,
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl BchTable {
    pub fn new(max_len: usize) -> Self {
        let max_len = max_len as u32;
        assert!(max_len < 31, "word length limited to 30");
        let mut words = Vec::new();
        for m in 1..=max_len {
            for bits in 0..(1u32 << m) {
                let w = BchWord { len: m, bits };
                if m >= 2 && w.letter(m - 1) == w.letter(m - 2) {
                    continue;
                }
                let c = dynkin_coefficient(w);
                if !c.is_zero() {
                    words.push((w, c));
                }
            }
        }
        Self { max_len, words }
    }

    pub fn max_len(&self) -> usize {
        self.max_len as usize
    }

    pub fn words(&self) -> &[(BchWord, Rational)] {
        &self.words
    }

    /// Series coefficient of a word; zero for words not in the table.
    pub fn coefficient(&self, w: BchWord) -> Rational {
        self.words
            .iter()
            .find(|(v, _)| *v == w)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn product<C: Coeff>(&self, alg: &LieAlgebra, x: &[C], y: &[C]) -> Vec<C> {
        let n = alg.dim();
        let mut memo: HashMap<BchWord, Option<Vec<C>>> = HashMap::new();
        let mut out = vec![C::vanishing(); n];
        for (w, c) in &self.words {
            if let Some(v) = nested(alg, *w, x, y, &mut memo) {
                for (o, vi) in out.iter_mut().zip(v.iter()) {
                    if !vi.vanishes() {
                        o.add_assign(&vi.scale(c));
                    }
                }
            }
        }
        out
    }
}

/// Right-nested commutator of a word, `None` when it vanishes.
fn nested<C: Coeff>(
    alg: &LieAlgebra,
    w: BchWord,
    x: &[C],
    y: &[C],
    memo: &mut HashMap<BchWord, Option<Vec<C>>>,
) -> Option<Vec<C>> {
    if let Some(v) = memo.get(&w) {
        return v.clone();
    }
    let head = if w.letter(0) { y } else { x };
    let value = if w.len == 1 {
        Some(head.to_vec())
    } else {
        nested(alg, w.suffix(), x, y, memo).and_then(|inner| {
            let v = alg.bracket_generic(head, &inner);
            if v.iter().all(Coeff::vanishes) {
                None
            } else {
                Some(v)
            }
        })
    };
    memo.insert(w, value.clone());
    value
}

/// `(1/m) sum_n (-1)^{n-1}/n * sum over splittings of w into n blocks X^r Y^s of prod 1/(r! s!)`.
fn dynkin_coefficient(w: BchWord) -> Rational {
    let m = w.len as usize;
    // Weight of the block w[a..b] if it has the shape X^r Y^s, else None.
    let block = |a: usize, b: usize| -> Option<Rational> {
        let mut r = 0u32;
        let mut s = 0u32;
        for t in a..b {
            if w.letter(t as u32) {
                s += 1;
            } else if s > 0 {
                return None;
            } else {
                r += 1;
            }
        }
        Some(Rational::new(BigInt::one(), factorial(r) * factorial(s)))
    };
    // f[n][p]: weighted count of splittings of the prefix of length p into n blocks.
    let mut f = vec![vec![Rational::zero(); m + 1]; m + 1];
    f[0][0] = Rational::one();
    for n in 1..=m {
        for p in n..=m {
            let mut acc = Rational::zero();
            for a in (n - 1)..p {
                if f[n - 1][a].is_zero() {
                    continue;
                }
                if let Some(wt) = block(a, p) {
                    acc += &f[n - 1][a] * wt;
                }
            }
            f[n][p] = acc;
        }
    }
    let mut total = Rational::zero();
    for (n, row) in f.iter().enumerate().skip(1) {
        let term = &row[m] / Rational::from_integer(BigInt::from(n));
        if n % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total / Rational::from_integer(BigInt::from(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn word(s: &str) -> BchWord {
        let bits = s.chars().enumerate().fold(0, |acc, (t, c)| acc | (u32::from(c == 'Y') << t));
        BchWord { len: s.len() as u32, bits }
    }

    #[test]
    fn low_degree_coefficients() {
        let t = BchTable::new(4);
        assert_eq!(t.coefficient(word("X")), rat(1, 1));
        assert_eq!(t.coefficient(word("Y")), rat(1, 1));
        assert_eq!(t.coefficient(word("XY")), rat(1, 4));
        assert_eq!(t.coefficient(word("YX")), rat(-1, 4));
        assert_eq!(t.coefficient(word("XXY")), rat(1, 36));
        assert_eq!(t.coefficient(word("XYX")), rat(-1, 18));
    }

    #[test]
    fn degree_three_sums_to_classical_terms() {
        // Collect the coefficients of [X,[X,Y]] and [Y,[Y,X]] using [a,[b,c]] antisymmetry in b,c:
        // XXY -> +[X,[X,Y]], XYX -> -[X,[X,Y]], YXY -> -[Y,[Y,X]], YYX -> +[Y,[Y,X]].
        let t = BchTable::new(3);
        let xxy = t.coefficient(word("XXY")) - t.coefficient(word("XYX"));
        let yyx = t.coefficient(word("YYX")) - t.coefficient(word("YXY"));
        assert_eq!(xxy, rat(1, 12));
        assert_eq!(yyx, rat(1, 12));
    }
}
