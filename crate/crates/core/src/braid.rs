//! Permutations, reduced words, braid-group lifts `T^σ_w`, the block
//! permutations `χ_ij`, the operators `β_ij` and the Yang-Baxter check.
//!
//! Conventions: a permutation acts on tensor *positions*; the letter in
//! position `k` moves to position `w(k)`. Composition `v ∘ w` applies `w`
//! first. For a reduced word `w = s_{i_1} ⋯ s_{i_l}` the lift
//! `T^σ_w = σ_{i_1} ⋯ σ_{i_l}` is applied right to left, so `σ_{i_l}` acts
//! first. With the flip braiding, `T^σ_w` is the position action of `w`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Counterexample, Error, Verdict};
use crate::kernel::matrix::{block_components, Matrix};
use crate::kernel::{apply_local, Alphabet, Element, Letter, LocalMap, Render, Word, WordPair};

/// Largest connected block of `V ⊗ V` that invertibility checking will
/// eliminate.
pub const DEFAULT_BLOCK_CAP: usize = 64;

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection of `1..=n`.
    pub fn new(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidSpec(format!("{images:?} is not a permutation")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i` of `𝔖_n`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(k)` for 1-based `k`.
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&k| self.image(k)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn inversions(&self) -> usize {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    /// Positions `k` with `w(k) > w(k+1)`.
    fn right_descents(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.len()).filter(|&k| self.image(k) > self.image(k + 1))
    }

    /// Moves the letter at position `k` to position `w(k)`.
    pub fn act<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out = items.to_vec();
        for (k, item) in items.iter().enumerate() {
            out[self.images[k] - 1] = item.clone();
        }
        out
    }

    /// Every permutation of `{1, …, n}`, lexicographically.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for v in 1..=n {
                if !used[v - 1] {
                    used[v - 1] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// A reduced word `[i_1, …, i_l]` with `w = s_{i_1} ∘ ⋯ ∘ s_{i_l}` and
/// `l` the inversion count. Peels off the smallest right descent each step,
/// so the result is deterministic.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut cur = w.clone();
    let mut rev = Vec::with_capacity(w.inversions());
    loop {
        let Some(k) = cur.right_descents().next() else {
            break;
        };
        rev.push(k);
        cur = cur.compose(&Permutation::simple(cur.len(), k));
    }
    rev.reverse();
    rev
}

/// Every reduced word of `w`.
pub fn all_reduced_words(w: &Permutation) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in w.right_descents() {
        let shorter = w.compose(&Permutation::simple(w.len(), k));
        for mut word in all_reduced_words(&shorter) {
            word.push(k);
            out.push(word);
        }
    }
    out.sort();
    out
}

/// `χ_ij ∈ 𝔖_{i+j}`: sends `1..i` to `j+1..j+i` and `i+1..i+j` to `1..j`.
pub fn chi(i: usize, j: usize) -> Permutation {
    Permutation {
        images: (j + 1..=j + i).chain(1..=j).collect(),
    }
}

/// An invertible operator `σ` on `V ⊗ V` given on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingTable {
    alphabet: Arc<Alphabet>,
    table: LocalMap,
}

impl BraidingTable {
    /// Validates totality, image shape, and invertibility (with the default
    /// block cap).
    pub fn new(alphabet: Arc<Alphabet>, table: LocalMap) -> Result<Self, Error> {
        Self::with_cap(alphabet, table, DEFAULT_BLOCK_CAP)
    }

    pub fn with_cap(alphabet: Arc<Alphabet>, table: LocalMap, cap: usize) -> Result<Self, Error> {
        let dim = alphabet.len();
        if table.dim() != dim {
            return Err(Error::InvalidSpec(format!(
                "braiding table has dimension {} but the basis has {dim} letters",
                table.dim()
            )));
        }
        for a in alphabet.letters() {
            for b in alphabet.letters() {
                let img = table.get(a, b).ok_or(Error::MissingTableEntry {
                    left: a.0,
                    right: b.0,
                })?;
                if img.alphabet() != alphabet.id() {
                    return Err(Error::AlphabetMismatch);
                }
                if let Some(w) = img.keys().find(|w| w.len() != 2) {
                    return Err(Error::LengthMismatch {
                        expected: 2,
                        found: w.len(),
                    });
                }
            }
        }
        let braiding = BraidingTable { alphabet, table };
        braiding.check_invertible(cap)?;
        Ok(braiding)
    }

    pub fn from_fn<F: FnMut(Letter, Letter) -> Element<Word>>(
        alphabet: Arc<Alphabet>,
        f: F,
    ) -> Result<Self, Error> {
        let table = LocalMap::from_fn(alphabet.len(), f);
        Self::new(alphabet, table)
    }

    /// The flip `a ⊗ b ↦ b ⊗ a`.
    pub fn flip(alphabet: Arc<Alphabet>) -> Self {
        let id = alphabet.id();
        Self::from_fn(alphabet, |a, b| Element::basis(id, Word(vec![b, a])))
            .expect("flip is invertible")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.alphabet.len()
    }

    pub fn table(&self) -> &LocalMap {
        &self.table
    }

    /// `σ(a ⊗ b)`.
    pub fn image(&self, a: Letter, b: Letter) -> &Element<Word> {
        self.table.get(a, b).expect("braiding tables are total")
    }

    fn check_invertible(&self, cap: usize) -> Result<(), Error> {
        let dim = self.dim();
        let n = dim * dim;
        let index = |w: &Word| w.0[0].index() * dim + w.0[1].index();
        let row = |i: usize| -> Vec<(usize, crate::kernel::Scalar)> {
            let img = self.image(Letter::from(i / dim), Letter::from(i % dim));
            img.iter().map(|(w, c)| (index(w), c.clone())).collect()
        };
        for (rows, cols) in block_components(n, |i| row(i).into_iter().map(|(j, _)| j).collect()) {
            if rows.len() != cols.len() {
                return Err(Error::NotInvertible(format!(
                    "braiding block with {} inputs and {} outputs",
                    rows.len(),
                    cols.len()
                )));
            }
            if rows.len() > cap {
                return Err(Error::DimensionCap {
                    size: rows.len(),
                    cap,
                });
            }
            let mut m = Matrix::zero(rows.len());
            for (ri, &r) in rows.iter().enumerate() {
                for (c, s) in row(r) {
                    let ci = cols.iter().position(|&x| x == c).expect("same component");
                    m.set(ri, ci, s);
                }
            }
            if m.determinant().is_zero() {
                let a = Letter::from(rows[0] / dim);
                let b = Letter::from(rows[0] % dim);
                return Err(Error::NotInvertible(format!(
                    "braiding has a singular block containing {}",
                    Word(vec![a, b]).render(&self.alphabet)
                )));
            }
        }
        Ok(())
    }

    /// `σ_i` on words of any length ≥ i+1.
    pub fn apply_at(&self, i: usize, x: &Element<Word>) -> Result<Element<Word>, Error> {
        apply_local(&self.table, i, x)
    }
}

/// Checks `(σ⊗id)(id⊗σ)(σ⊗id) = (id⊗σ)(σ⊗id)(id⊗σ)` on every basis word of
/// `V^⊗3`, returning the first violating word.
pub fn check_yang_baxter(sigma: &BraidingTable) -> Verdict {
    let al = sigma.alphabet();
    for w in al.words_of_length(3) {
        let x = Element::word(al.id(), w.clone());
        let side = |order: [usize; 3]| -> Element<Word> {
            order.iter().fold(x.clone(), |acc, &i| {
                sigma.apply_at(i, &acc).expect("length-3 words")
            })
        };
        let lhs = side([1, 2, 1]);
        let rhs = side([2, 1, 2]);
        if lhs != rhs {
            return Verdict::Fail(Counterexample::new(
                "Yang-Baxter equation",
                w.render(al),
                lhs.render(al),
                rhs.render(al),
            ));
        }
    }
    Verdict::Pass
}

/// Applies `σ_{i_1} ⋯ σ_{i_l}` for an explicit word (rightmost first).
pub fn lift_word(sigma: &BraidingTable, word: &[usize], x: &Element<Word>) -> Result<Element<Word>, Error> {
    word.iter()
        .rev()
        .try_fold(x.clone(), |acc, &i| sigma.apply_at(i, &acc))
}

/// `T^σ_w(x)` using [`reduced_word`]. Well-definedness requires `σ` to
/// satisfy the Yang-Baxter equation; that is the caller's contract.
pub fn lift_tw(sigma: &BraidingTable, w: &Permutation, x: &Element<Word>) -> Result<Element<Word>, Error> {
    if x.alphabet() != sigma.alphabet().id() {
        return Err(Error::AlphabetMismatch);
    }
    if let Some(bad) = x.keys().find(|u| u.len() != w.len()) {
        return Err(Error::LengthMismatch {
            expected: w.len(),
            found: bad.len(),
        });
    }
    lift_word(sigma, &reduced_word(w), x)
}

/// `β_ij` on `V^⊗i ⊗̄ V^⊗j`, with inputs written as concatenated words of
/// length `i + j`. `β_0j` and `β_i0` are the identity on the concatenation.
pub fn beta(sigma: &BraidingTable, i: usize, j: usize, x: &Element<Word>) -> Result<Element<Word>, Error> {
    if i == 0 || j == 0 {
        if let Some(bad) = x.keys().find(|u| u.len() != i + j) {
            return Err(Error::LengthMismatch {
                expected: i + j,
                found: bad.len(),
            });
        }
        return Ok(x.clone());
    }
    lift_tw(sigma, &chi(i, j), x)
}

/// `β` on `T(V) ⊗̄ T(V)`: `u ⊗̄ v ↦ T^σ_{χ_{|u|,|v|}}(uv)` split after `|v|`
/// letters; the flip when either side is empty.
pub fn beta_pair(sigma: &BraidingTable, x: &Element<WordPair>) -> Element<WordPair> {
    let id = x.alphabet();
    x.linear_map(id, |WordPair(u, v)| {
        if u.is_empty() || v.is_empty() {
            return Element::basis(id, WordPair(v.clone(), u.clone()));
        }
        let joined = Element::word(id, u.concat(v));
        let moved = beta(sigma, u.len(), v.len(), &joined).expect("lengths match by construction");
        moved.linear_map(id, |w| {
            let (a, b) = w.split_at(v.len());
            Element::basis(id, WordPair(a, b))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Scalar;

    fn letters(n: usize) -> Arc<Alphabet> {
        Alphabet::new((1..=n).map(|i| format!("v{i}")))
    }

    fn diagonal(al: &Arc<Alphabet>, h: &[&[i32]]) -> BraidingTable {
        let id = al.id();
        BraidingTable::from_fn(al.clone(), |a, b| {
            Element::term(id, Word(vec![b, a]), Scalar::q_pow(h[a.index()][b.index()]))
        })
        .unwrap()
    }

    #[test]
    fn chi_tables() {
        assert_eq!(chi(1, 1).images(), &[2, 1]);
        assert_eq!(chi(2, 1).images(), &[2, 3, 1]);
        assert!(chi(0, 3).is_identity());
        for i in 0..4 {
            for j in 0..4 {
                if i + j > 0 {
                    assert_eq!(chi(i, j).inversions(), i * j);
                }
            }
        }
    }

    #[test]
    fn reduced_words_small() {
        assert!(reduced_word(&Permutation::identity(3)).is_empty());
        assert_eq!(reduced_word(&Permutation::new(vec![2, 1]).unwrap()), vec![1]);
        assert_eq!(reduced_word(&chi(2, 1)).len(), 2);
    }

    #[test]
    fn reduced_words_multiply_back() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let word = reduced_word(&w);
                assert_eq!(word.len(), w.inversions());
                let prod = word
                    .iter()
                    .fold(Permutation::identity(n), |acc, &i| acc.compose(&Permutation::simple(n, i)));
                assert_eq!(prod, w);
            }
        }
    }

    #[test]
    fn all_reduced_words_of_longest_element() {
        // The longest element of S_4 has 16 reduced words.
        let w0 = Permutation::new(vec![4, 3, 2, 1]).unwrap();
        assert_eq!(all_reduced_words(&w0).len(), 16);
    }

    #[test]
    fn flip_and_diagonal_satisfy_yang_baxter() {
        let al = letters(3);
        assert!(check_yang_baxter(&BraidingTable::flip(al.clone())).is_pass());
        let d = diagonal(&al, &[&[1, -2, 0], &[3, 2, 1], &[0, -1, 5]]);
        assert!(check_yang_baxter(&d).is_pass());
    }

    #[test]
    fn corrupted_flip_fails_yang_baxter() {
        let al = letters(2);
        let id = al.id();
        // σ(v1⊗v1) = v1⊗v1 + v1⊗v2, flip elsewhere
        let sigma = BraidingTable::from_fn(al.clone(), |a, b| {
            let mut img = Element::word(id, Word(vec![b, a]));
            if (a.0, b.0) == (0, 0) {
                img.add_term(Word::from_indices([0, 1]), &Scalar::one());
            }
            img
        })
        .unwrap();
        let cx = check_yang_baxter(&sigma);
        let cx = cx.counterexample().expect("must fail");
        assert!(cx.witness.contains("v1"));
    }

    #[test]
    fn singular_table_is_rejected() {
        let al = letters(2);
        let id = al.id();
        let r = BraidingTable::from_fn(al.clone(), |a, b| {
            Element::basis(id, Word(vec![Letter(0), if a == b { b } else { Letter(0) }]))
        });
        assert!(matches!(r, Err(Error::NotInvertible(_))));
    }

    #[test]
    fn lifts() {
        let al = letters(3);
        let id = al.id();
        let flip = BraidingTable::flip(al.clone());
        let x = Element::word(id, Word::from_indices([0, 1, 2]));
        assert_eq!(lift_tw(&flip, &Permutation::identity(3), &x).unwrap(), x);
        assert_eq!(
            lift_tw(&flip, &chi(2, 1), &x).unwrap(),
            Element::word(id, Word::from_indices([2, 0, 1]))
        );
        let d = diagonal(&al, &[&[0, 4, 0], &[0, 0, 0], &[0, 0, 0]]);
        let x = Element::word(id, Word::from_indices([0, 1]));
        assert_eq!(
            lift_tw(&d, &chi(1, 1), &x).unwrap(),
            Element::term(id, Word::from_indices([1, 0]), Scalar::q_pow(4))
        );
        assert!(matches!(
            lift_tw(&d, &chi(2, 1), &x),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn beta_degenerate_and_pairs() {
        let al = letters(3);
        let id = al.id();
        let flip = BraidingTable::flip(al.clone());
        let x = Element::word(id, Word::from_indices([0, 1, 2]));
        assert_eq!(beta(&flip, 0, 3, &x).unwrap(), x);
        assert_eq!(
            beta(&flip, 2, 1, &x).unwrap(),
            Element::word(id, Word::from_indices([2, 0, 1]))
        );
        let p = Element::basis(id, WordPair(Word::from_indices([0, 1]), Word::from_indices([2])));
        assert_eq!(
            beta_pair(&flip, &p),
            Element::basis(id, WordPair(Word::from_indices([2]), Word::from_indices([0, 1])))
        );
    }

    #[test]
    fn flip_lift_is_position_action() {
        for n in 1..=5usize {
            let al = letters(n);
            let flip = BraidingTable::flip(al.clone());
            let word = Word::from_indices(0..n);
            for w in Permutation::all(n) {
                let x = Element::word(al.id(), word.clone());
                let expected = Word(w.act(&word.0));
                assert_eq!(lift_tw(&flip, &w, &x).unwrap(), Element::word(al.id(), expected));
            }
        }
    }

    #[test]
    fn hexagon_block_rule() {
        // (id⊗β_{j,k})(β_{i,k}⊗id) = β_{i+j,k} on V^{⊗(i+j+k)}
        let al = letters(2);
        let id = al.id();
        let d = diagonal(&al, &[&[1, -1], &[2, 3]]);
        for (i, j, k) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 2)] {
            for w in al.words_of_length(i + j + k) {
                let x = Element::word(id, w.clone());
                // β_{i,k} on the first i+k letters: word = a(i) b(j) c(k) -> first move c past b
                let step1 = x.linear_map(id, |u| {
                    let (a, rest) = u.split_at(i);
                    let y = Element::word(id, rest);
                    beta(&d, j, k, &y).unwrap().linear_map(id, |r| Element::word(id, a.concat(r)))
                });
                let step2 = step1.linear_map(id, |u| {
                    let (head, tail) = u.split_at(i + k);
                    let y = Element::word(id, head);
                    beta(&d, i, k, &y).unwrap().linear_map(id, |h| Element::word(id, h.concat(&tail)))
                });
                assert_eq!(step2, beta(&d, i + j, k, &x).unwrap(), "i={i} j={j} k={k}");
            }
        }
    }
}
