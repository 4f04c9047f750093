//! Group algebras `𝕂[G]` of finitely generated abelian groups
//! `G = ℤ^r × ℤ/m_1 × ⋯ × ℤ/m_t`, Yetter-Drinfeld modules over them and
//! YD module algebras.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::braid::BraidingTable;
use crate::error::{Counterexample, Error, Verdict};
use crate::kernel::{Alphabet, AlphabetId, Element, Letter, LocalMap, Matrix, Render, Scalar, Word};
use crate::qalg::{check_braided_algebra, fresh_unit_name, BraidedAlgebraSpec};

/// An element of `G`, exponents of the free generators followed by the
/// torsion generators (the latter reduced into `[0, m_k)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn exps(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "K{{{}}}", parts.join(","))
    }
}

impl Render for GroupElement {
    fn render(&self, _: &Alphabet) -> String {
        self.to_string()
    }
}

/// A basis element of `H ⊗ H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupPair(pub GroupElement, pub GroupElement);

impl Render for GroupPair {
    fn render(&self, _: &Alphabet) -> String {
        format!("{} | {}", self.0, self.1)
    }
}

/// A basis element of `H ⊗ V`, the target of the left coaction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedLetter(pub GroupElement, pub Letter);

impl Render for GradedLetter {
    fn render(&self, alphabet: &Alphabet) -> String {
        format!("{} | {}", self.0, alphabet.name(self.1))
    }
}

pub type GroupAlgebraElement = Element<GroupElement>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<u32>,
    names: Vec<String>,
}

impl AbelianGroup {
    /// Generator names default to `K1..Kr` for the free part and `T1..Tt`
    /// for the torsion part.
    pub fn new(rank: usize, torsion: Vec<u32>, names: Option<Vec<String>>) -> Result<Self, Error> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidSpec(format!("torsion order {m} must be at least 2")));
        }
        let names = match names {
            Some(n) if n.len() != rank + torsion.len() => {
                return Err(Error::InvalidSpec(format!(
                    "{} generator names for {} generators",
                    n.len(),
                    rank + torsion.len()
                )))
            }
            Some(n) => n,
            None => (1..=rank)
                .map(|i| format!("K{i}"))
                .chain((1..=torsion.len()).map(|i| format!("T{i}")))
                .collect(),
        };
        Ok(AbelianGroup { rank, torsion, names })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, vec![], None).expect("free group")
    }

    pub fn cyclic(m: u32) -> Self {
        Self::new(0, vec![m], None).expect("order at least 2")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u32] {
        &self.torsion
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Tag for elements of `𝕂[G]`.
    pub fn id(&self) -> AlphabetId {
        let mut h = DefaultHasher::new();
        ("group", self.rank, &self.torsion, &self.names).hash(&mut h);
        AlphabetId(h.finish())
    }

    /// The order of generator `i`, `None` for free generators.
    pub fn order(&self, i: usize) -> Option<u32> {
        i.checked_sub(self.rank).map(|t| self.torsion[t])
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.generator_count()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.generator_count()];
        e[i] = 1;
        self.element(e).expect("shape matches")
    }

    /// Normalizes torsion exponents; errors only on a wrong length.
    pub fn element(&self, mut exps: Vec<i64>) -> Result<GroupElement, Error> {
        if exps.len() != self.generator_count() {
            return Err(Error::LengthMismatch {
                expected: self.generator_count(),
                found: exps.len(),
            });
        }
        for (t, &m) in self.torsion.iter().enumerate() {
            exps[self.rank + t] = exps[self.rank + t].rem_euclid(m as i64);
        }
        Ok(GroupElement(exps))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
            .expect("same group")
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.element(a.0.iter().map(|x| -x).collect()).expect("same group")
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        self.element(a.0.iter().map(|x| x * k).collect()).expect("same group")
    }

    pub fn product<'a, I: IntoIterator<Item = &'a GroupElement>>(&self, it: I) -> GroupElement {
        it.into_iter().fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// `g ↦ 1·g` in `𝕂[G]`.
    pub fn basis(&self, g: GroupElement) -> GroupAlgebraElement {
        Element::basis(self.id(), g)
    }

    /// Product in `𝕂[G]`.
    pub fn algebra_mul(&self, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> GroupAlgebraElement {
        x.bilinear(y, self.id(), |g, h| self.basis(self.mul(g, h)))
    }

    /// `Δ(g) = g ⊗ g`.
    pub fn coproduct(&self, x: &GroupAlgebraElement) -> Element<GroupPair> {
        x.linear_map(self.id(), |g| Element::basis(self.id(), GroupPair(g.clone(), g.clone())))
    }

    /// `ε(g) = 1`.
    pub fn counit(&self, x: &GroupAlgebraElement) -> Scalar {
        x.iter().fold(Scalar::zero(), |acc, (_, c)| &acc + c)
    }

    /// `S(g) = g^{-1}`.
    pub fn antipode(&self, x: &GroupAlgebraElement) -> GroupAlgebraElement {
        x.linear_map(self.id(), |g| self.basis(self.inverse(g)))
    }
}

/// A Yetter-Drinfeld module `V` over `𝕂[G]`: a `G`-graded basis (the
/// coaction `δ(v) = deg(v) ⊗ v`) and an action of each generator by a
/// matrix whose row `a` is the image of letter `a`. Optionally an algebra
/// structure by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdSpec {
    group: AbelianGroup,
    alphabet: Arc<Alphabet>,
    degrees: Vec<GroupElement>,
    actions: Vec<Matrix>,
    inverses: Vec<Matrix>,
    mult: Option<LocalMap>,
    unit: Option<Letter>,
}

impl YdSpec {
    /// Validates shapes and that every generator acts invertibly (free
    /// generators need a unit determinant over `Q[q, q^-1]`). The YD
    /// identity itself is left to [`check_yd`].
    pub fn new(
        group: AbelianGroup,
        alphabet: Arc<Alphabet>,
        degrees: Vec<GroupElement>,
        actions: Vec<Matrix>,
        mult: Option<LocalMap>,
        unit: Option<Letter>,
    ) -> Result<Self, Error> {
        let dim = alphabet.len();
        if degrees.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: degrees.len(),
            });
        }
        let degrees = degrees
            .into_iter()
            .map(|d| group.element(d.0))
            .collect::<Result<Vec<_>, _>>()?;
        if actions.len() != group.generator_count() {
            return Err(Error::InvalidSpec(format!(
                "{} action matrices for {} group generators",
                actions.len(),
                group.generator_count()
            )));
        }
        let mut inverses = Vec::with_capacity(actions.len());
        for (i, m) in actions.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::InvalidSpec(format!(
                    "action of {} is {}x{} on a {dim}-letter basis",
                    group.names()[i],
                    m.dim(),
                    m.dim()
                )));
            }
            let inv = m
                .inverse()
                .ok_or_else(|| Error::NotInvertible(format!("action of {}", group.names()[i])))?;
            inverses.push(inv);
        }
        if let Some(m) = &mult {
            if m.dim() != dim {
                return Err(Error::InvalidSpec("multiplication table dimension".into()));
            }
            for a in alphabet.letters() {
                for b in alphabet.letters() {
                    if let Some(img) = m.get(a, b) {
                        if img.alphabet() != alphabet.id() {
                            return Err(Error::AlphabetMismatch);
                        }
                        if let Some(w) = img.keys().find(|w| w.len() != 1) {
                            return Err(Error::LengthMismatch {
                                expected: 1,
                                found: w.len(),
                            });
                        }
                    }
                }
            }
        }
        if let Some(u) = unit {
            if u.index() >= dim || mult.is_none() {
                return Err(Error::InvalidSpec("unit needs a multiplication and a valid letter".into()));
            }
        }
        Ok(YdSpec {
            group,
            alphabet,
            degrees,
            actions,
            inverses,
            mult,
            unit,
        })
    }

    /// A spec whose generators act diagonally: `chars[i][a]` is the scalar by
    /// which generator `i` acts on letter `a`.
    pub fn diagonal(
        group: AbelianGroup,
        alphabet: Arc<Alphabet>,
        degrees: Vec<GroupElement>,
        chars: Vec<Vec<Scalar>>,
        mult: Option<LocalMap>,
        unit: Option<Letter>,
    ) -> Result<Self, Error> {
        let actions = chars.into_iter().map(Matrix::diagonal).collect();
        Self::new(group, alphabet, degrees, actions, mult, unit)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn id(&self) -> AlphabetId {
        self.alphabet.id()
    }

    pub fn dim(&self) -> usize {
        self.alphabet.len()
    }

    pub fn degree(&self, a: Letter) -> &GroupElement {
        &self.degrees[a.index()]
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn mult(&self) -> Option<&LocalMap> {
        self.mult.as_ref()
    }

    pub fn unit(&self) -> Option<Letter> {
        self.unit
    }

    /// Total degree of a word.
    pub fn word_degree(&self, w: &Word) -> GroupElement {
        self.group.product(w.0.iter().map(|l| self.degree(*l)))
    }

    /// The matrix by which `g` acts (rows are images of letters).
    pub fn action_matrix(&self, g: &GroupElement) -> Matrix {
        let mut acc = Matrix::identity(self.dim());
        for (i, &e) in g.exps().iter().enumerate() {
            let base = if e < 0 { &self.inverses[i] } else { &self.actions[i] };
            if e != 0 {
                acc = acc.mul(&base.pow(e.unsigned_abs() as u32));
            }
        }
        acc
    }

    fn diagonal_factor(&self, g: &GroupElement, a: Letter) -> Option<Scalar> {
        let mut out = Scalar::one();
        for (i, &e) in g.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if e < 0 { &self.inverses[i] } else { &self.actions[i] };
            if !base.is_diagonal() {
                return None;
            }
            out = &out * &base.get(a.index(), a.index()).pow(e.unsigned_abs() as u32);
        }
        Some(out)
    }

    /// `g · a` as a combination of length-1 words.
    pub fn act_letter(&self, g: &GroupElement, a: Letter) -> Element<Word> {
        let id = self.id();
        if let Some(c) = self.diagonal_factor(g, a) {
            return Element::term(id, Word(vec![a]), c);
        }
        let m = self.action_matrix(g);
        Element::from_terms(
            id,
            m.row(a.index())
                .iter()
                .enumerate()
                .map(|(b, c)| (Word::from_indices([b]), c.clone())),
        )
    }

    /// `g · (a_1 ⊗ ⋯ ⊗ a_n) = g·a_1 ⊗ ⋯ ⊗ g·a_n` (group-likes act diagonally).
    pub fn act_word(&self, g: &GroupElement, w: &Word) -> Element<Word> {
        let id = self.id();
        w.0.iter().fold(Element::scalar(id, Scalar::one()), |acc, &a| {
            acc.bilinear(&self.act_letter(g, a), id, |u, v| Element::word(id, u.concat(v)))
        })
    }

    pub fn act(&self, g: &GroupElement, x: &Element<Word>) -> Element<Word> {
        x.linear_map(self.id(), |w| self.act_word(g, w))
    }

    /// The underlying braided algebra with the induced braiding; a missing
    /// multiplication is the zero map.
    pub fn braided_algebra(&self) -> Result<BraidedAlgebraSpec, Error> {
        let sigma = induced_braiding(self)?;
        let mult = self.mult.clone().unwrap_or_else(|| LocalMap::new(self.dim()));
        BraidedAlgebraSpec::new(sigma, mult, self.unit)
    }
}

/// Checks that the action matrices commute, that torsion generators have
/// the right order, and evaluates the YD identity
/// `Σ h_(1)v_(−1) ⊗ h_(2)·v_(0) = Σ (h_(1)·v)_(−1)h_(2) ⊗ (h_(1)·v)_(0)`
/// for every generator `h` and letter `v`.
pub fn check_yd(spec: &YdSpec) -> Verdict {
    let group = spec.group();
    let al = spec.alphabet();
    let n = spec.dim();
    let gens = group.generator_count();
    for i in 0..gens {
        for j in i + 1..gens {
            let (a, b) = (&spec.actions[i], &spec.actions[j]);
            if a.mul(b) != b.mul(a) {
                return Verdict::Fail(Counterexample::new(
                    "action matrices commute",
                    format!("{}, {}", group.names()[i], group.names()[j]),
                    "",
                    "",
                ));
            }
        }
        if let Some(m) = group.order(i) {
            if spec.actions[i].pow(m) != Matrix::identity(n) {
                return Verdict::Fail(Counterexample::new(
                    "torsion generator acts with order dividing its order",
                    group.names()[i].clone(),
                    format!("action^{m}"),
                    "identity",
                ));
            }
        }
    }
    let gid = group.id();
    for i in 0..gens {
        let h = group.generator(i);
        for v in al.letters() {
            let moved = spec.act_letter(&h, v);
            let lhs: Element<GradedLetter> = moved.linear_map(gid, |w| {
                Element::basis(gid, GradedLetter(group.mul(&h, spec.degree(v)), w.0[0]))
            });
            let rhs: Element<GradedLetter> = moved.linear_map(gid, |w| {
                Element::basis(gid, GradedLetter(group.mul(spec.degree(w.0[0]), &h), w.0[0]))
            });
            if lhs != rhs {
                return Verdict::Fail(Counterexample::new(
                    "Yetter-Drinfeld compatibility",
                    format!("{} . {}", group.names()[i], al.name(v)),
                    lhs.render(al),
                    rhs.render(al),
                ));
            }
        }
    }
    Verdict::Pass
}

/// `σ(v ⊗ w) = deg(v)·w ⊗ v`.
pub fn induced_braiding(spec: &YdSpec) -> Result<BraidingTable, Error> {
    let id = spec.id();
    BraidingTable::from_fn(spec.alphabet().clone(), |a, b| {
        spec.act_letter(spec.degree(a), b)
            .linear_map(id, |w| Element::word(id, Word(vec![w.0[0], a])))
    })
}

/// Checks that `m` (and the unit, if declared) are morphisms of YD modules:
/// degree-preserving and equivariant for every generator; then runs
/// [`check_braided_algebra`] on the induced braiding.
pub fn check_yd_algebra(spec: &YdSpec) -> Verdict {
    let Some(mult) = spec.mult() else {
        return Verdict::Fail(Counterexample::new("YD algebra", "no multiplication declared", "", ""));
    };
    let group = spec.group();
    let al = spec.alphabet();
    let id = spec.id();
    for a in al.letters() {
        for b in al.letters() {
            let Some(img) = mult.get(a, b) else { continue };
            let expected = group.mul(spec.degree(a), spec.degree(b));
            for w in img.keys() {
                let got = spec.degree(w.0[0]);
                if got != &expected {
                    return Verdict::Fail(Counterexample::new(
                        "multiplication preserves degree",
                        format!("{} {} -> {}", al.name(a), al.name(b), al.name(w.0[0])),
                        got.to_string(),
                        expected.to_string(),
                    ));
                }
            }
        }
    }
    let product = |x: &Element<Word>| crate::kernel::apply_local(mult, 1, x).unwrap_or_else(|_| Element::zero(id));
    let full = spec.braided_algebra();
    let full = match full {
        Ok(f) => f,
        Err(e) => return Verdict::Fail(Counterexample::new("induced braiding", e.to_string(), "", "")),
    };
    for i in 0..group.generator_count() {
        let g = group.generator(i);
        for a in al.letters() {
            for b in al.letters() {
                let ab = Element::word(id, Word(vec![a, b]));
                let lhs = spec.act(&g, full.mult_table().get(a, b).expect("total"));
                let rhs = product(&spec.act(&g, &ab));
                if lhs != rhs {
                    return Verdict::Fail(Counterexample::new(
                        "multiplication is equivariant",
                        format!("{} . ({}⊗{})", group.names()[i], al.name(a), al.name(b)),
                        lhs.render(al),
                        rhs.render(al),
                    ));
                }
            }
        }
    }
    if let Some(u) = spec.unit() {
        if !group.is_identity(spec.degree(u)) {
            return Verdict::Fail(Counterexample::new(
                "unit has neutral degree",
                al.name(u).to_string(),
                spec.degree(u).to_string(),
                group.identity().to_string(),
            ));
        }
        for i in 0..group.generator_count() {
            let moved = spec.act_letter(&group.generator(i), u);
            let unit = Element::word(id, Word(vec![u]));
            if moved != unit {
                return Verdict::Fail(Counterexample::new(
                    "unit is invariant",
                    format!("{} . {}", group.names()[i], al.name(u)),
                    moved.render(al),
                    unit.render(al),
                ));
            }
        }
    }
    check_braided_algebra(&full)
}

/// Adjoins a unit letter of neutral degree with trivial action.
pub fn adjoin_unit(spec: &YdSpec) -> Result<YdSpec, Error> {
    if spec.unit().is_some() {
        return Err(Error::AlreadyUnital);
    }
    let dim = spec.dim();
    let mut names = spec.alphabet().names().to_vec();
    names.push(fresh_unit_name(&names));
    let alphabet = Alphabet::new(names);
    let id = alphabet.id();
    let one = Letter::from(dim);
    let mut degrees = spec.degrees().to_vec();
    degrees.push(spec.group().identity());
    let actions = spec
        .actions()
        .iter()
        .map(|m| {
            let mut out = Matrix::identity(dim + 1);
            for i in 0..dim {
                for j in 0..dim {
                    out.set(i, j, m.get(i, j).clone());
                }
            }
            out
        })
        .collect();
    let old = spec.mult();
    let mult = LocalMap::from_fn(dim + 1, |a, b| {
        if a == one {
            Element::word(id, Word(vec![b]))
        } else if b == one {
            Element::word(id, Word(vec![a]))
        } else {
            old.and_then(|m| m.get(a, b))
                .map(|e| e.clone().retag(id))
                .unwrap_or_else(|| Element::zero(id))
        }
    });
    YdSpec::new(spec.group().clone(), alphabet, degrees, actions, Some(mult), Some(one))
}
