//! Braided algebras by structure constants and the quantum quasi-shuffle
//! algebra `T_{σ,m}(A)`: product, deconcatenation coproduct, coradical
//! filtration and the extension of degree-one maps to bialgebra morphisms.
//!
//! A graded element of `T(A)` is an [`Element<Word>`]; the empty word is the
//! scalar component.

use std::collections::HashMap;
use std::sync::Arc;

use crate::braid::{beta, beta_pair, BraidingTable};
use crate::error::{Counterexample, Error, Verdict};
use crate::kernel::{apply_local, Alphabet, Element, Letter, LocalMap, Render, Scalar, Word, WordPair, WordTensor};

/// A finite-dimensional braided algebra `(A, m, σ)` given by structure
/// constants, optionally with a unit letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedAlgebraSpec {
    alphabet: Arc<Alphabet>,
    braiding: BraidingTable,
    mult: LocalMap,
    unit: Option<Letter>,
}

impl BraidedAlgebraSpec {
    /// `mult` may be partial: missing pairs multiply to zero. Every present
    /// image must be a combination of single letters.
    pub fn new(braiding: BraidingTable, mult: LocalMap, unit: Option<Letter>) -> Result<Self, Error> {
        let alphabet = braiding.alphabet().clone();
        let dim = alphabet.len();
        if mult.dim() != dim {
            return Err(Error::InvalidSpec(format!(
                "multiplication table has dimension {} but the basis has {dim} letters",
                mult.dim()
            )));
        }
        let id = alphabet.id();
        let mut total = LocalMap::new(dim);
        for a in alphabet.letters() {
            for b in alphabet.letters() {
                let img = mult.get(a, b).cloned().unwrap_or_else(|| Element::zero(id));
                if img.alphabet() != id {
                    return Err(Error::AlphabetMismatch);
                }
                if let Some(w) = img.keys().find(|w| w.len() != 1) {
                    return Err(Error::LengthMismatch {
                        expected: 1,
                        found: w.len(),
                    });
                }
                total.set(a, b, img);
            }
        }
        if let Some(u) = unit {
            if u.index() >= dim {
                return Err(Error::InvalidSpec(format!("unit letter {} out of range", u.0)));
            }
        }
        Ok(BraidedAlgebraSpec {
            alphabet,
            braiding,
            mult: total,
            unit,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn id(&self) -> crate::kernel::AlphabetId {
        self.alphabet.id()
    }

    pub fn dim(&self) -> usize {
        self.alphabet.len()
    }

    pub fn braiding(&self) -> &BraidingTable {
        &self.braiding
    }

    pub fn mult_table(&self) -> &LocalMap {
        &self.mult
    }

    pub fn unit(&self) -> Option<Letter> {
        self.unit
    }

    /// `m(a ⊗ b)` as a combination of length-1 words.
    pub fn mult(&self, a: Letter, b: Letter) -> &Element<Word> {
        self.mult.get(a, b).expect("multiplication table is total")
    }

    /// `σ(a ⊗ b)`.
    pub fn sigma(&self, a: Letter, b: Letter) -> &Element<Word> {
        self.braiding.image(a, b)
    }

    fn merge_at(&self, i: usize, x: &Element<Word>) -> Element<Word> {
        apply_local(&self.mult, i, x).expect("multiplication table is total")
    }

    fn sigma_at(&self, i: usize, x: &Element<Word>) -> Element<Word> {
        self.braiding.apply_at(i, x).expect("braiding table is total")
    }
}

/// Verifies associativity, both braided compatibility identities
/// `(id⊗m)σ_1σ_2 = σ(m⊗id)` and `(m⊗id)σ_2σ_1 = σ(id⊗m)` on `A^⊗3`, and the
/// unit laws when a unit is declared.
pub fn check_braided_algebra(spec: &BraidedAlgebraSpec) -> Verdict {
    let al = spec.alphabet();
    let fail = |check: &str, w: &Word, l: &Element<Word>, r: &Element<Word>| {
        Verdict::Fail(Counterexample::new(check, w.render(al), l.render(al), r.render(al)))
    };
    for w in al.words_of_length(3) {
        let x = Element::word(al.id(), w.clone());
        let l = spec.merge_at(1, &spec.merge_at(1, &x));
        let r = spec.merge_at(1, &spec.merge_at(2, &x));
        if l != r {
            return fail("associativity m(m⊗id) = m(id⊗m)", &w, &l, &r);
        }
        let l = spec.merge_at(2, &spec.sigma_at(1, &spec.sigma_at(2, &x)));
        let r = spec.sigma_at(1, &spec.merge_at(1, &x));
        if l != r {
            return fail("braided compatibility (id⊗m)σ1σ2 = σ(m⊗id)", &w, &l, &r);
        }
        let l = spec.merge_at(1, &spec.sigma_at(2, &spec.sigma_at(1, &x)));
        let r = spec.sigma_at(1, &spec.merge_at(2, &x));
        if l != r {
            return fail("braided compatibility (m⊗id)σ2σ1 = σ(id⊗m)", &w, &l, &r);
        }
    }
    if let Some(u) = spec.unit() {
        let id = al.id();
        for a in al.letters() {
            let single = Element::word(id, Word(vec![a]));
            let cases = [
                ("unit law m(1⊗a) = a", Word(vec![u, a]), spec.mult(u, a).clone(), single.clone()),
                ("unit law m(a⊗1) = a", Word(vec![a, u]), spec.mult(a, u).clone(), single.clone()),
                (
                    "unit braiding σ(a⊗1) = 1⊗a",
                    Word(vec![a, u]),
                    spec.sigma(a, u).clone(),
                    Element::word(id, Word(vec![u, a])),
                ),
                (
                    "unit braiding σ(1⊗a) = a⊗1",
                    Word(vec![u, a]),
                    spec.sigma(u, a).clone(),
                    Element::word(id, Word(vec![a, u])),
                ),
            ];
            for (check, w, l, r) in cases {
                if l != r {
                    return fail(check, &w, &l, &r);
                }
            }
        }
    }
    Verdict::Pass
}

/// A letter name not already in `names`, starting from `one`.
pub fn fresh_unit_name(names: &[String]) -> String {
    let mut name = "one".to_string();
    while names.contains(&name) {
        name.push('_');
    }
    name
}

/// Adjoins a unit letter `1` (appended last): `m(1⊗a) = m(a⊗1) = a`,
/// `σ(a⊗1) = 1⊗a`, `σ(1⊗a) = a⊗1`.
pub fn adjoin_unit(spec: &BraidedAlgebraSpec) -> Result<BraidedAlgebraSpec, Error> {
    if spec.unit().is_some() {
        return Err(Error::AlreadyUnital);
    }
    let mut names = spec.alphabet().names().to_vec();
    names.push(fresh_unit_name(&names));
    let alphabet = Alphabet::new(names);
    let id = alphabet.id();
    let dim = spec.dim();
    let one = Letter::from(dim);
    let braiding = BraidingTable::from_fn(alphabet.clone(), |a, b| {
        if a == one || b == one {
            Element::word(id, Word(vec![b, a]))
        } else {
            spec.sigma(a, b).clone().retag(id)
        }
    })?;
    let mult = LocalMap::from_fn(dim + 1, |a, b| {
        if a == one {
            Element::word(id, Word(vec![b]))
        } else if b == one {
            Element::word(id, Word(vec![a]))
        } else {
            spec.mult(a, b).clone().retag(id)
        }
    });
    BraidedAlgebraSpec::new(braiding, mult, Some(one))
}

fn prepend(id: crate::kernel::AlphabetId, l: Letter, x: &Element<Word>) -> Element<Word> {
    x.linear_map(id, |w| Element::word(id, w.prepended(l)))
}

/// Word-level evaluation of `⋈_σ` with memoization.
struct QuasiShuffle<'a> {
    spec: &'a BraidedAlgebraSpec,
    general_only: bool,
    memo: HashMap<(Word, Word), Element<Word>>,
}

impl<'a> QuasiShuffle<'a> {
    fn new(spec: &'a BraidedAlgebraSpec, general_only: bool) -> Self {
        QuasiShuffle {
            spec,
            general_only,
            memo: HashMap::new(),
        }
    }

    fn id(&self) -> crate::kernel::AlphabetId {
        self.spec.id()
    }

    fn product(&mut self, x: &Element<Word>, y: &Element<Word>) -> Element<Word> {
        let id = self.id();
        let mut out = Element::zero(id);
        for (u, c) in x.iter() {
            for (v, d) in y.iter() {
                let p = self.words(u, v);
                out.add_scaled(&p, &(c * d));
            }
        }
        out
    }

    /// `u ⋈ x` for a word `u` and an element `x`.
    fn word_times(&mut self, u: &Word, x: &Element<Word>) -> Element<Word> {
        let id = self.id();
        let mut out = Element::zero(id);
        for (v, c) in x.iter() {
            let p = self.words(u, v);
            out.add_scaled(&p, c);
        }
        out
    }

    fn words(&mut self, u: &Word, v: &Word) -> Element<Word> {
        let id = self.id();
        if u.is_empty() {
            return Element::word(id, v.clone());
        }
        if v.is_empty() {
            return Element::word(id, u.clone());
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = if self.general_only {
            self.general(u, v)
        } else {
            match (u.len(), v.len()) {
                (1, 1) => self.base(u.0[0], v.0[0]),
                (1, _) => self.letter_word(u.0[0], v),
                (_, 1) => self.word_letter(u, v.0[0]),
                _ => self.general(u, v),
            }
        };
        self.memo.insert(key, out.clone());
        out
    }

    /// `a ⋈ b = a⊗b + σ(a⊗b) + m(a⊗b)`.
    fn base(&self, a: Letter, b: Letter) -> Element<Word> {
        let id = self.id();
        let mut out = Element::word(id, Word(vec![a, b]));
        out.add_scaled(self.spec.sigma(a, b), &Scalar::one());
        out.add_scaled(self.spec.mult(a, b), &Scalar::one());
        out
    }

    /// `a ⋈ (b_1⋯b_j) = (id + (id⊗⋈)(β_{1,1}⊗id) + m⊗id)(a⊗b_1⋯b_j)`.
    fn letter_word(&mut self, a: Letter, v: &Word) -> Element<Word> {
        let id = self.id();
        let (b1, rest) = (v.0[0], v.slice(1, v.len()));
        let mut out = Element::word(id, v.prepended(a));
        for (w, c) in self.spec.sigma(a, b1).clone().iter() {
            let (b_new, a_new) = (w.0[0], w.0[1]);
            let tail = self.words(&Word(vec![a_new]), &rest);
            out.add_scaled(&prepend(id, b_new, &tail), c);
        }
        for (w, c) in self.spec.mult(a, b1).iter() {
            out.add_term(rest.prepended(w.0[0]), c);
        }
        out
    }

    /// `(a_1⋯a_i) ⋈ b = (id⊗⋈ + β_{i,1} + (m⊗id)(id⊗β_{i−1,1}))(a_1⋯a_i⊗b)`.
    fn word_letter(&mut self, u: &Word, b: Letter) -> Element<Word> {
        let id = self.id();
        let sigma = self.spec.braiding();
        let (a1, rest) = (u.0[0], u.slice(1, u.len()));
        let mut out = prepend(id, a1, &self.words(&rest, &Word(vec![b])));
        let whole = Element::word(id, u.pushed(b));
        out.add_scaled(&beta(sigma, u.len(), 1, &whole).expect("lengths match"), &Scalar::one());
        let moved = beta(sigma, rest.len(), 1, &Element::word(id, rest.pushed(b))).expect("lengths match");
        for (w, c) in moved.iter() {
            let (b_new, tail) = (w.0[0], w.slice(1, w.len()));
            for (m, d) in self.spec.mult(a1, b_new).iter() {
                out.add_term(tail.prepended(m.0[0]), &(c * d));
            }
        }
        out
    }

    /// The general clause, valid for all `i, j ≥ 1`:
    /// `a_1⊗(a'⋈b) + (id⊗⋈)(β_{i,1}⊗id)(a⊗b) + (m⊗⋈)(id⊗β_{i−1,1}⊗id)(a⊗b)`.
    fn general(&mut self, u: &Word, v: &Word) -> Element<Word> {
        let id = self.id();
        let sigma = self.spec.braiding().clone();
        let (a1, a_rest) = (u.0[0], u.slice(1, u.len()));
        let (b1, b_rest) = (v.0[0], v.slice(1, v.len()));
        let b_rest_el = Element::word(id, b_rest.clone());

        let mut out = prepend(id, a1, &self.words(&a_rest, v));

        let moved = beta(&sigma, u.len(), 1, &Element::word(id, u.pushed(b1))).expect("lengths match");
        for (w, c) in moved.iter() {
            let (b_new, a_new) = (w.0[0], w.slice(1, w.len()));
            let tail = self.word_times(&a_new, &b_rest_el);
            out.add_scaled(&prepend(id, b_new, &tail), c);
        }

        let moved = beta(&sigma, a_rest.len(), 1, &Element::word(id, a_rest.pushed(b1))).expect("lengths match");
        for (w, c) in moved.iter() {
            let (b_new, a_new) = (w.0[0], w.slice(1, w.len()));
            let prods = self.spec.mult(a1, b_new).clone();
            if prods.is_zero() {
                continue;
            }
            let tail = self.word_times(&a_new, &b_rest_el);
            for (m, d) in prods.iter() {
                out.add_scaled(&prepend(id, m.0[0], &tail), &(c * d));
            }
        }
        out
    }
}

/// The quantum quasi-shuffle product `x ⋈_σ y`, dispatching on word lengths
/// over the four recursive clauses.
pub fn qsh(spec: &BraidedAlgebraSpec, x: &Element<Word>, y: &Element<Word>) -> Element<Word> {
    QuasiShuffle::new(spec, false).product(x, y)
}

/// `⋈_σ` computed from the general clause alone; an internal oracle for
/// [`qsh`].
pub fn qsh_general(spec: &BraidedAlgebraSpec, x: &Element<Word>, y: &Element<Word>) -> Element<Word> {
    QuasiShuffle::new(spec, true).product(x, y)
}

/// Deconcatenation `Δ(w) = Σ_k w_{1..k} ⊗̄ w_{k+1..n}`.
pub fn deconcat(x: &Element<Word>) -> Element<WordPair> {
    let id = x.alphabet();
    x.linear_map(id, |w| {
        Element::from_terms(
            id,
            (0..=w.len()).map(|k| {
                let (a, b) = w.split_at(k);
                (WordPair(a, b), Scalar::one())
            }),
        )
    })
}

/// `Δ̄(x) = Δ(x) − x⊗1 − 1⊗x`.
pub fn reduced_deconcat(x: &Element<Word>) -> Element<WordPair> {
    let id = x.alphabet();
    let mut out = deconcat(x);
    for (w, c) in x.iter() {
        out.add_term(WordPair(w.clone(), Word::empty()), &-c);
        out.add_term(WordPair(Word::empty(), w.clone()), &-c);
    }
    out.retag(id)
}

/// `Δ̄^{(n)}` with `n + 1` tensor factors: `Δ̄^{(0)} = id`,
/// `Δ̄^{(n+1)} = (Δ̄^{(n)} ⊗ id) Δ̄`.
pub fn iterated_reduced_deconcat(x: &Element<Word>, n: usize) -> Element<WordTensor> {
    let id = x.alphabet();
    if n == 0 {
        return x.linear_map(id, |w| Element::basis(id, WordTensor(vec![w.clone()])));
    }
    reduced_deconcat(x).linear_map(id, |WordPair(a, b)| {
        iterated_reduced_deconcat(&Element::word(id, a.clone()), n - 1).linear_map(id, |WordTensor(fs)| {
            let mut fs = fs.clone();
            fs.push(b.clone());
            Element::basis(id, WordTensor(fs))
        })
    })
}

/// Counit of the deconcatenation coalgebra: the scalar component.
pub fn counit(x: &Element<Word>) -> Scalar {
    x.scalar_part()
}

/// The product of `T(A) ⊗ T(A)` twisted by the braiding:
/// `(⋈⊗⋈)(id⊗β⊗id)(x ⊗ y)`.
pub fn braided_square_product(spec: &BraidedAlgebraSpec, x: &Element<WordPair>, y: &Element<WordPair>) -> Element<WordPair> {
    let id = spec.id();
    let mut out = Element::zero(id);
    for (WordPair(x1, x2), c) in x.iter() {
        for (WordPair(y1, y2), d) in y.iter() {
            let middle = Element::basis(id, WordPair(x2.clone(), y1.clone()));
            for (WordPair(y1b, x2b), e) in beta_pair(spec.braiding(), &middle).iter() {
                let left = qsh(spec, &Element::word(id, x1.clone()), &Element::word(id, y1b.clone()));
                let right = qsh(spec, &Element::word(id, x2b.clone()), &Element::word(id, y2.clone()));
                let pair = left.bilinear(&right, id, |l, r| Element::basis(id, WordPair(l.clone(), r.clone())));
                out.add_scaled(&pair, &(&(c * d) * e));
            }
        }
    }
    out
}

fn nonempty_words_with_total(spec: &BraidedAlgebraSpec, parts: usize, max_total: usize) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = vec![vec![]];
    for _ in 0..parts {
        let mut next = Vec::new();
        for prefix in &out {
            let used: usize = prefix.iter().map(Word::len).sum();
            let left = parts - prefix.len() - 1;
            if used + left + 1 > max_total {
                continue;
            }
            for w in spec.alphabet().words_up_to(1, max_total - used - left) {
                let mut p = prefix.clone();
                p.push(w);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// `(x⋈y)⋈z = x⋈(y⋈z)` on all triples of nonempty basis words of total
/// length at most `max_total`.
pub fn check_qsh_associativity(spec: &BraidedAlgebraSpec, max_total: usize) -> Verdict {
    let id = spec.id();
    let al = spec.alphabet();
    for t in nonempty_words_with_total(spec, 3, max_total) {
        let [x, y, z] = [0, 1, 2].map(|i| Element::word(id, t[i].clone()));
        let lhs = qsh(spec, &qsh(spec, &x, &y), &z);
        let rhs = qsh(spec, &x, &qsh(spec, &y, &z));
        if lhs != rhs {
            return Verdict::Fail(Counterexample::new(
                "quasi-shuffle associativity",
                format!("({}, {}, {})", t[0].render(al), t[1].render(al), t[2].render(al)),
                lhs.render(al),
                rhs.render(al),
            ));
        }
    }
    Verdict::Pass
}

/// `Δ(x⋈y) = (⋈⊗⋈)(id⊗β⊗id)(Δx ⊗ Δy)` on all pairs of nonempty basis
/// words of total length at most `max_total`.
pub fn check_qsh_compatibility(spec: &BraidedAlgebraSpec, max_total: usize) -> Verdict {
    let id = spec.id();
    let al = spec.alphabet();
    for t in nonempty_words_with_total(spec, 2, max_total) {
        let (x, y) = (Element::word(id, t[0].clone()), Element::word(id, t[1].clone()));
        let lhs = deconcat(&qsh(spec, &x, &y));
        let rhs = braided_square_product(spec, &deconcat(&x), &deconcat(&y));
        if lhs != rhs {
            return Verdict::Fail(Counterexample::new(
                "braided bialgebra compatibility",
                format!("({}, {})", t[0].render(al), t[1].render(al)),
                lhs.render(al),
                rhs.render(al),
            ));
        }
    }
    Verdict::Pass
}

/// Smallest `r` with `x ∈ F_r`. The scalar part lies in `F_0`; for the rest
/// this is the least `r` such that the `(r+1)`-fold reduced coproduct
/// vanishes.
pub fn filtration_degree(x: &Element<Word>) -> usize {
    let positive = x.filter(|w| !w.is_empty());
    if positive.is_zero() {
        return 0;
    }
    let mut r = 1;
    while !iterated_reduced_deconcat(&positive, r).is_zero() {
        r += 1;
    }
    r
}

/// The degree-one map of an extension: images of the letters of `B` as
/// combinations of letters of `A`.
#[derive(Clone, Debug)]
pub struct LetterMap {
    pub images: Vec<Element<Word>>,
}

impl LetterMap {
    fn apply_letter(&self, b: Letter) -> &Element<Word> {
        &self.images[b.index()]
    }

    /// `f^{⊗2}` on a length-2 word.
    fn apply_pair(&self, target: &BraidedAlgebraSpec, w: &Word) -> Element<Word> {
        let id = target.id();
        self.apply_letter(w.0[0])
            .bilinear(self.apply_letter(w.0[1]), id, |x, y| Element::word(id, x.concat(y)))
    }
}

/// Checks the three hypotheses of the extension theorem on basis pairs:
/// `f` kills the unit (the empty word; automatic for a letter map),
/// `(f⊗f)τ = σ(f⊗f)` and `m_A(f⊗f) = f m_B`.
pub fn check_letter_map(source: &BraidedAlgebraSpec, target: &BraidedAlgebraSpec, f: &LetterMap) -> Verdict {
    if f.images.len() != source.dim() {
        return Verdict::Fail(Counterexample::new(
            "letter map shape",
            format!("{} images for {} letters", f.images.len(), source.dim()),
            "",
            "",
        ));
    }
    let sal = source.alphabet();
    let tal = target.alphabet();
    let tid = target.id();
    for img in &f.images {
        if img.alphabet() != tid || img.keys().any(|w| w.len() != 1) {
            return Verdict::Fail(Counterexample::new(
                "letter map images are letters of the target",
                img.render(tal),
                "",
                "",
            ));
        }
    }
    for a in sal.letters() {
        for b in sal.letters() {
            let w = Word(vec![a, b]);
            let ff = f.apply_pair(target, &w);
            let lhs = source.sigma(a, b).linear_map(tid, |u| f.apply_pair(target, u));
            let rhs = target.braiding().apply_at(1, &ff).expect("length 2");
            if lhs != rhs {
                return Verdict::Fail(Counterexample::new(
                    "(f⊗f)τ = σ(f⊗f)",
                    w.render(sal),
                    lhs.render(tal),
                    rhs.render(tal),
                ));
            }
            let lhs = apply_local(target.mult_table(), 1, &ff).expect("total");
            let rhs = source
                .mult(a, b)
                .linear_map(tid, |u| f.apply_letter(u.0[0]).clone());
            if lhs != rhs {
                return Verdict::Fail(Counterexample::new(
                    "m_A(f⊗f) = f m_B",
                    w.render(sal),
                    lhs.render(tal),
                    rhs.render(tal),
                ));
            }
        }
    }
    Verdict::Pass
}

/// `f̄ = ε_B + Σ_{n≥1} f^{⊗n} Δ̄_B^{(n−1)}`, truncated at the filtration
/// degree of `x`; hypotheses are checked first.
pub fn extend_degree_one(
    source: &BraidedAlgebraSpec,
    target: &BraidedAlgebraSpec,
    f: &LetterMap,
    x: &Element<Word>,
) -> Result<Element<Word>, Error> {
    if let Verdict::Fail(c) = check_letter_map(source, target, f) {
        return Err(Error::Precondition(Box::new(c)));
    }
    if x.alphabet() != source.id() {
        return Err(Error::AlphabetMismatch);
    }
    let tid = target.id();
    let mut out = Element::scalar(tid, counit(x));
    for n in 1..=filtration_degree(x) {
        let pieces = iterated_reduced_deconcat(x, n - 1);
        let image = pieces.linear_map(tid, |WordTensor(fs)| {
            if fs.iter().any(|w| w.len() != 1) {
                return Element::zero(tid);
            }
            fs.iter().fold(Element::scalar(tid, Scalar::one()), |acc, w| {
                acc.bilinear(f.apply_letter(w.0[0]), tid, |u, v| Element::word(tid, u.concat(v)))
            })
        });
        out.add_scaled(&image, &Scalar::one());
    }
    Ok(out)
}
