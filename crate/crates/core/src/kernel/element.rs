//! Sparse linear combinations over tensor words.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::Scalar;
use crate::error::Error;

/// Index of a basis letter in its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Letter {
    fn from(i: usize) -> Self {
        Letter(i as u32)
    }
}

/// Fingerprint of an alphabet's letter names; elements carry it so that
/// values over different bases cannot be mixed silently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlphabetId(pub u64);

/// A declared basis: an ordered list of letter names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    id: AlphabetId,
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut h = DefaultHasher::new();
        "alphabet".hash(&mut h);
        names.hash(&mut h);
        Arc::new(Alphabet {
            id: AlphabetId(h.finish()),
            names,
        })
    }

    pub fn id(&self) -> AlphabetId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(Letter::from)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter::from)
    }

    /// All words of exactly length `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| self.letters().map(move |l| w.pushed(l)))
                .collect();
        }
        out
    }

    /// All words with length in `lo..=hi`.
    pub fn words_up_to(&self, lo: usize, hi: usize) -> Vec<Word> {
        (lo..=hi).flat_map(|n| self.words_of_length(n)).collect()
    }
}

/// A basis monomial of `T(V)`: a finite sequence of letters.
///
/// Ordering is the canonical term order: longer words first, then
/// lexicographic by letter index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Word(it.into_iter().map(Letter::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn pushed(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn prepended(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, lo: usize, hi: usize) -> Word {
        Word(self.0[lo..hi].to_vec())
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (self.slice(0, k), self.slice(k, self.len()))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        other.len().cmp(&self.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rendering of basis keys in the canonical textual format.
pub trait Render {
    fn render(&self, alphabet: &Alphabet) -> String;

    /// Keys that stand for the scalar unit print as the bare coefficient.
    fn is_unit(&self) -> bool {
        false
    }
}

impl Render for Word {
    fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| alphabet.name(*l))
            .collect::<Vec<_>>()
            .join("@")
    }

    fn is_unit(&self) -> bool {
        self.is_empty()
    }
}

/// `u ⊗̄ v`: a basis element of `T(V) ⊗̄ T(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordPair(pub Word, pub Word);

impl Render for WordPair {
    fn render(&self, alphabet: &Alphabet) -> String {
        format!("{} | {}", self.0.render(alphabet), self.1.render(alphabet))
    }
}

/// An `n`-fold tensor of words, used for iterated coproducts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordTensor(pub Vec<Word>);

impl Render for WordTensor {
    fn render(&self, alphabet: &Alphabet) -> String {
        self.0
            .iter()
            .map(|w| w.render(alphabet))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// A finite linear combination of basis keys with [`Scalar`] coefficients.
///
/// No stored coefficient is zero; iteration follows the key order, which is
/// the canonical rendering order.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<K = Word> {
    alphabet: AlphabetId,
    terms: BTreeMap<K, Scalar>,
}

impl<K: fmt::Debug> fmt::Debug for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone> Element<K> {
    pub fn zero(alphabet: AlphabetId) -> Self {
        Element {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(alphabet: AlphabetId, key: K) -> Self {
        Self::term(alphabet, key, Scalar::one())
    }

    pub fn term(alphabet: AlphabetId, key: K, c: Scalar) -> Self {
        let mut e = Self::zero(alphabet);
        e.add_term(key, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(alphabet: AlphabetId, it: I) -> Self {
        let mut e = Self::zero(alphabet);
        for (k, c) in it {
            e.add_term(k, &c);
        }
        e
    }

    pub fn alphabet(&self) -> AlphabetId {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, other: &Element<K>, c: &Scalar) {
        self.check_same(other).expect("alphabet mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    fn check_same(&self, other: &Element<K>) -> Result<(), Error> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Pointwise sum; fails on elements over different alphabets.
    pub fn checked_add(&self, other: &Element<K>) -> Result<Self, Error> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.alphabet);
        }
        Element {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Re-tags the element with another alphabet id. Used when a basis is
    /// embedded into a larger one (e.g. after adjoining a unit letter).
    pub fn retag(mut self, alphabet: AlphabetId) -> Self {
        self.alphabet = alphabet;
        self
    }

    /// Linear extension of `f` from keys to elements.
    pub fn linear_map<L: Ord + Clone, F: FnMut(&K) -> Element<L>>(
        &self,
        alphabet: AlphabetId,
        mut f: F,
    ) -> Element<L> {
        let mut out = Element::zero(alphabet);
        for (k, c) in &self.terms {
            let img = f(k);
            for (l, v) in img.terms {
                out.add_term(l, &(&v * c));
            }
        }
        out
    }

    /// Fallible linear extension.
    pub fn try_linear_map<L: Ord + Clone, E, F: FnMut(&K) -> Result<Element<L>, E>>(
        &self,
        alphabet: AlphabetId,
        mut f: F,
    ) -> Result<Element<L>, E> {
        let mut out = Element::zero(alphabet);
        for (k, c) in &self.terms {
            let img = f(k)?;
            for (l, v) in img.terms {
                out.add_term(l, &(&v * c));
            }
        }
        Ok(out)
    }

    /// Bilinear extension of `f` from pairs of keys.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone, F: FnMut(&K, &L) -> Element<M>>(
        &self,
        other: &Element<L>,
        alphabet: AlphabetId,
        mut f: F,
    ) -> Element<M> {
        let mut out = Element::zero(alphabet);
        for (k, c) in &self.terms {
            for (l, d) in &other.terms {
                let cd = c * d;
                for (m, v) in f(k, l).terms {
                    out.add_term(m, &(&v * &cd));
                }
            }
        }
        out
    }

    /// Keeps the terms whose key satisfies `pred`.
    pub fn filter<F: Fn(&K) -> bool>(&self, pred: F) -> Self {
        Element {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone + Render> Element<K> {
    /// Canonical rendering: terms joined by ` + ` / ` − `, coefficient omitted
    /// when it is 1.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (i, (sign_negative, coeff, key)) in self.rendered_terms(alphabet).into_iter().enumerate() {
            let body = match (coeff.as_str(), key.as_str()) {
                ("", k) => k.to_string(),
                (c, "") => c.to_string(),
                (c, k) => format!("{c} {k}"),
            };
            match (i, sign_negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('−');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" − ");
                    out.push_str(&body)
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Terms as `(negative, coefficient text, key text)` in canonical order.
    /// An empty coefficient means 1; an empty key means the unit.
    pub fn rendered_terms(&self, alphabet: &Alphabet) -> Vec<(bool, String, String)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let neg = c.leading_is_negative();
                let c = if neg { -c } else { c.clone() };
                let key = if k.is_unit() {
                    String::new()
                } else {
                    k.render(alphabet)
                };
                let coeff = if c.is_one() && !key.is_empty() {
                    String::new()
                } else {
                    c.coefficient_string()
                };
                (neg, coeff, key)
            })
            .collect()
    }
}

impl Element<Word> {
    /// The scalar `λ` as a multiple of the empty word.
    pub fn scalar(alphabet: AlphabetId, c: Scalar) -> Self {
        Self::term(alphabet, Word::empty(), c)
    }

    pub fn word(alphabet: AlphabetId, w: Word) -> Self {
        Self::basis(alphabet, w)
    }

    /// Largest word length present (0 for scalars and for zero).
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Coefficient of the empty word.
    pub fn scalar_part(&self) -> Scalar {
        self.coeff(&Word::empty())
    }
}

impl<K: Ord + Clone> Add for &Element<K> {
    type Output = Element<K>;
    fn add(self, rhs: &Element<K>) -> Element<K> {
        self.checked_add(rhs).expect("alphabet mismatch")
    }
}

impl<K: Ord + Clone> Add for Element<K> {
    type Output = Element<K>;
    fn add(self, rhs: Element<K>) -> Element<K> {
        &self + &rhs
    }
}

impl<K: Ord + Clone> Sub for &Element<K> {
    type Output = Element<K>;
    fn sub(self, rhs: &Element<K>) -> Element<K> {
        self + &(-rhs)
    }
}

impl<K: Ord + Clone> Sub for Element<K> {
    type Output = Element<K>;
    fn sub(self, rhs: Element<K>) -> Element<K> {
        &self - &rhs
    }
}

impl<K: Ord + Clone> Neg for &Element<K> {
    type Output = Element<K>;
    fn neg(self) -> Element<K> {
        self.scale(&Scalar::from_int(-1))
    }
}

impl<K: Ord + Clone> Neg for Element<K> {
    type Output = Element<K>;
    fn neg(self) -> Element<K> {
        -&self
    }
}

/// A table of local rewrites `(a, b) ↦ element`, applied at two adjacent
/// tensor positions. Braidings (length-2 images) and multiplications
/// (length-1 images) are both local maps.
///
/// Equality treats a missing entry and a zero entry alike.
#[derive(Clone, Debug)]
pub struct LocalMap {
    dim: usize,
    entries: Vec<Option<Element<Word>>>,
}

impl PartialEq for LocalMap {
    fn eq(&self, other: &Self) -> bool {
        let nonzero = |e: &Option<Element<Word>>| e.as_ref().filter(|x| !x.is_zero()).cloned();
        self.dim == other.dim && self.entries.iter().map(nonzero).eq(other.entries.iter().map(nonzero))
    }
}

impl Eq for LocalMap {}

impl LocalMap {
    pub fn new(dim: usize) -> Self {
        LocalMap {
            dim,
            entries: vec![None; dim * dim],
        }
    }

    pub fn from_fn<F: FnMut(Letter, Letter) -> Element<Word>>(dim: usize, mut f: F) -> Self {
        let mut m = Self::new(dim);
        for a in 0..dim {
            for b in 0..dim {
                m.set(Letter::from(a), Letter::from(b), f(a.into(), b.into()));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, a: Letter, b: Letter, img: Element<Word>) {
        self.entries[a.index() * self.dim + b.index()] = Some(img);
    }

    pub fn get(&self, a: Letter, b: Letter) -> Option<&Element<Word>> {
        if a.index() >= self.dim || b.index() >= self.dim {
            return None;
        }
        self.entries[a.index() * self.dim + b.index()].as_ref()
    }

    pub fn is_total(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }
}

/// Applies `table` at positions `(i, i+1)` (1-based) of every word of `x`,
/// extended linearly.
pub fn apply_local(table: &LocalMap, i: usize, x: &Element<Word>) -> Result<Element<Word>, Error> {
    x.try_linear_map(x.alphabet(), |w| {
        if i == 0 || i + 1 > w.len() {
            return Err(Error::PositionOutOfRange {
                position: i,
                length: w.len(),
            });
        }
        let (a, b) = (w.0[i - 1], w.0[i]);
        let img = table.get(a, b).ok_or(Error::MissingTableEntry {
            left: a.0,
            right: b.0,
        })?;
        let prefix = &w.0[..i - 1];
        let suffix = &w.0[i + 1..];
        Ok(img.linear_map(x.alphabet(), |mid| {
            let mut v = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
            v.extend_from_slice(prefix);
            v.extend_from_slice(&mid.0);
            v.extend_from_slice(suffix);
            Element::basis(x.alphabet(), Word(v))
        }))
    })
}
