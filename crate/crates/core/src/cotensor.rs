//! The Hopf bimodule `M = V ⊗ H` over `H = 𝕂[G]`, the cotensor coalgebra
//! `T^c_H(M)` and its product, and the bosonization `T(V) # H`.
//!
//! A basis element of `T^c_H(M)` is either a group element (degree 0) or a
//! chain word `(v_1,g_1)□⋯□(v_n,g_n)` with `g_k = deg(v_{k+1})·g_{k+1}`.
//! The chain condition is the cotensor condition specialised to `V ⊗ H`.

use std::cmp::Ordering;

use crate::error::{Counterexample, Error, Verdict};
use crate::grouphopf::{AbelianGroup, GroupAlgebraElement, GroupElement, YdSpec};
use crate::kernel::{Alphabet, AlphabetId, Element, Letter, Render, Scalar, Word};
use crate::qalg::{qsh, BraidedAlgebraSpec};

/// A word over `M`: pairs `(letter of V, group element)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MWord(pub Vec<(Letter, GroupElement)>);

impl MWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> Word {
        Word(self.0.iter().map(|(l, _)| *l).collect())
    }

    pub fn last_group(&self) -> Option<&GroupElement> {
        self.0.last().map(|(_, g)| g)
    }

    fn slice(&self, lo: usize, hi: usize) -> MWord {
        MWord(self.0[lo..hi].to_vec())
    }
}

impl Ord for MWord {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.letters().0.cmp(&other.letters().0))
            .then_with(|| {
                let a = self.0.iter().map(|(_, g)| g);
                let b = other.0.iter().map(|(_, g)| g);
                a.cmp(b)
            })
    }
}

impl PartialOrd for MWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Render for MWord {
    fn render(&self, alphabet: &Alphabet) -> String {
        self.0
            .iter()
            .map(|(l, g)| format!("{}.{}", alphabet.name(*l), g))
            .collect::<Vec<_>>()
            .join("[]")
    }
}

/// A basis element of `T^c_H(M)`. Words sort before group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CBasis {
    Word(MWord),
    Group(GroupElement),
}

impl CBasis {
    pub fn degree(&self) -> usize {
        match self {
            CBasis::Word(w) => w.len(),
            CBasis::Group(_) => 0,
        }
    }
}

impl Render for CBasis {
    fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            CBasis::Word(w) => w.render(alphabet),
            CBasis::Group(g) => g.to_string(),
        }
    }
}

pub type CotensorElement = Element<CBasis>;

/// A basis element of `T^c_H(M) ⊗ T^c_H(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CPair(pub CBasis, pub CBasis);

impl Render for CPair {
    fn render(&self, alphabet: &Alphabet) -> String {
        format!("{} | {}", self.0.render(alphabet), self.1.render(alphabet))
    }
}

/// An `n`-fold tensor of cotensor basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CTensor(pub Vec<CBasis>);

impl Render for CTensor {
    fn render(&self, alphabet: &Alphabet) -> String {
        self.0.iter().map(|b| b.render(alphabet)).collect::<Vec<_>>().join(" | ")
    }
}

/// `u # g`, a basis element of the smash product `T(V) # 𝕂[G]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmashKey(pub Word, pub GroupElement);

impl Render for SmashKey {
    fn render(&self, alphabet: &Alphabet) -> String {
        format!("{}#{}", self.0.render(alphabet), self.1)
    }
}

pub type SmashElement = Element<SmashKey>;

/// Key for the evaluation of `id⊗δ_L − δ_R⊗id` at one cut of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct KernelKey(usize, MWord, GroupElement);

/// `T^c_H(M)` and `T(V) # H` for a YD module algebra `V`.
#[derive(Clone, Debug)]
pub struct CotensorSpace {
    yd: YdSpec,
    alg: BraidedAlgebraSpec,
}

impl CotensorSpace {
    pub fn new(yd: YdSpec) -> Result<Self, Error> {
        let alg = yd.braided_algebra()?;
        Ok(CotensorSpace { yd, alg })
    }

    pub fn yd(&self) -> &YdSpec {
        &self.yd
    }

    pub fn algebra(&self) -> &BraidedAlgebraSpec {
        &self.alg
    }

    pub fn group(&self) -> &AbelianGroup {
        self.yd.group()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.yd.alphabet()
    }

    pub fn id(&self) -> AlphabetId {
        self.yd.id()
    }

    pub fn zero(&self) -> CotensorElement {
        Element::zero(self.id())
    }

    pub fn group_element(&self, g: GroupElement) -> CotensorElement {
        Element::basis(self.id(), CBasis::Group(g))
    }

    /// `i(h)`: the inclusion of `𝕂[G]` in degree 0.
    pub fn include(&self, h: &GroupAlgebraElement) -> CotensorElement {
        h.linear_map(self.id(), |g| self.group_element(g.clone()))
    }

    pub fn unit(&self) -> CotensorElement {
        self.group_element(self.group().identity())
    }

    pub fn m_letter(&self, v: Letter, g: GroupElement) -> CotensorElement {
        Element::basis(self.id(), CBasis::Word(MWord(vec![(v, g)])))
    }

    /// The chain word with letters `w` whose last group element is `last`.
    pub fn chain_word(&self, w: &Word, last: &GroupElement) -> MWord {
        let mut out = Vec::with_capacity(w.len());
        let mut g = last.clone();
        for (k, &v) in w.0.iter().enumerate().rev() {
            out.push((v, g.clone()));
            if k > 0 {
                g = self.group().mul(self.yd.degree(v), &g);
            }
        }
        out.reverse();
        MWord(out)
    }

    /// Every chain word of length `1..=max_len` whose last group element lies
    /// in `lasts`, plus the group elements in `lasts` themselves.
    pub fn basis_up_to(&self, max_len: usize, lasts: &[GroupElement]) -> Vec<CBasis> {
        let mut out: Vec<CBasis> = lasts.iter().cloned().map(CBasis::Group).collect();
        for w in self.alphabet().words_up_to(1, max_len) {
            for g in lasts {
                out.push(CBasis::Word(self.chain_word(&w, g)));
            }
        }
        out
    }

    fn chain_break(&self, w: &MWord) -> Option<usize> {
        (1..w.len()).find(|&k| {
            let (_, gk) = &w.0[k - 1];
            let (v, g) = &w.0[k];
            gk != &self.group().mul(self.yd.degree(*v), g)
        })
    }

    /// Checks the chain condition at every cut of every word.
    pub fn cotensor_check(&self, x: &CotensorElement) -> Verdict {
        for key in x.keys() {
            if let CBasis::Word(w) = key {
                if let Some(k) = self.chain_break(w) {
                    let (v, g) = &w.0[k];
                    return Verdict::Fail(Counterexample::new(
                        "cotensor chain condition",
                        format!("{} at cut {k}", w.render(self.alphabet())),
                        w.0[k - 1].1.to_string(),
                        self.group().mul(self.yd.degree(*v), g).to_string(),
                    ));
                }
            }
        }
        Verdict::Pass
    }

    /// Evaluates `id⊗δ_L − δ_R⊗id` at every cut (with `δ_L(v,g) =
    /// deg(v)g ⊗ (v,g)` and `δ_R(v,g) = (v,g) ⊗ g`) and checks that the
    /// result vanishes. Equivalent to [`Self::cotensor_check`].
    pub fn kernel_check(&self, x: &CotensorElement) -> Verdict {
        let id = self.id();
        let max = x.keys().map(CBasis::degree).max().unwrap_or(0);
        for cut in 1..max {
            let image: Element<KernelKey> = x.linear_map(id, |b| match b {
                CBasis::Word(w) if w.len() > cut => {
                    let (v, g) = &w.0[cut];
                    let left = self.group().mul(self.yd.degree(*v), g);
                    let right = w.0[cut - 1].1.clone();
                    let mut e = Element::basis(id, KernelKey(cut, w.clone(), left));
                    e.add_term(KernelKey(cut, w.clone(), right), &Scalar::from_int(-1));
                    e
                }
                _ => Element::zero(id),
            });
            let first = image.keys().next().cloned();
            if let Some(KernelKey(_, w, _)) = first {
                let witness = format!("{} at cut {cut}", w.render(self.alphabet()));
                return Verdict::Fail(Counterexample::new("cotensor kernel condition", witness, "nonzero", "0"));
            }
        }
        Verdict::Pass
    }

    /// `π`: the degree-0 part.
    pub fn project_h(&self, x: &CotensorElement) -> GroupAlgebraElement {
        let gid = self.group().id();
        x.linear_map(gid, |b| match b {
            CBasis::Group(g) => Element::basis(gid, g.clone()),
            CBasis::Word(_) => Element::zero(gid),
        })
    }

    /// `p`: the degree-1 part.
    pub fn project_m(&self, x: &CotensorElement) -> CotensorElement {
        x.filter(|b| b.degree() == 1)
    }

    fn boundary(&self, w: &MWord, k: usize) -> GroupElement {
        if k == 0 {
            let (v, g) = &w.0[0];
            self.group().mul(self.yd.degree(*v), g)
        } else {
            w.0[k - 1].1.clone()
        }
    }

    fn coproduct_basis(&self, b: &CBasis) -> Vec<(CBasis, CBasis)> {
        match b {
            CBasis::Group(g) => vec![(b.clone(), CBasis::Group(g.clone()))],
            CBasis::Word(w) => {
                let n = w.len();
                (0..=n)
                    .map(|k| {
                        let left = if k == 0 {
                            CBasis::Group(self.boundary(w, 0))
                        } else {
                            CBasis::Word(w.slice(0, k))
                        };
                        let right = if k == n {
                            CBasis::Group(self.boundary(w, n))
                        } else {
                            CBasis::Word(w.slice(k, n))
                        };
                        (left, right)
                    })
                    .collect()
            }
        }
    }

    /// `Δ(g) = g⊗g`; on a word, `δ_L` on the first letter, the interior
    /// deconcatenations and `δ_R` on the last letter.
    pub fn coproduct(&self, x: &CotensorElement) -> Element<CPair> {
        let id = self.id();
        x.linear_map(id, |b| {
            Element::from_terms(
                id,
                self.coproduct_basis(b)
                    .into_iter()
                    .map(|(l, r)| (CPair(l, r), Scalar::one())),
            )
        })
    }

    pub fn counit(&self, x: &CotensorElement) -> Scalar {
        x.iter()
            .filter(|(b, _)| matches!(b, CBasis::Group(_)))
            .fold(Scalar::zero(), |acc, (_, c)| &acc + c)
    }

    /// `Δ^{(n)}` with `n + 1` factors, refining the first factor each step.
    pub fn iterated_coproduct(&self, x: &CotensorElement, n: usize) -> Element<CTensor> {
        let id = self.id();
        let mut cur: Element<CTensor> = x.linear_map(id, |b| Element::basis(id, CTensor(vec![b.clone()])));
        for _ in 0..n {
            cur = cur.linear_map(id, |CTensor(fs)| {
                Element::from_terms(
                    id,
                    self.coproduct_basis(&fs[0]).into_iter().map(|(l, r)| {
                        let mut out = vec![l, r];
                        out.extend_from_slice(&fs[1..]);
                        (CTensor(out), Scalar::one())
                    }),
                )
            });
        }
        cur
    }

    /// Diagonal left action `g·((v_1,g_1)□⋯) = (g·v_1, g g_1)□⋯`.
    pub fn left_action(&self, g: &GroupElement, x: &CotensorElement) -> CotensorElement {
        let id = self.id();
        let group = self.group();
        x.linear_map(id, |b| match b {
            CBasis::Group(h) => self.group_element(group.mul(g, h)),
            CBasis::Word(w) => w.0.iter().fold(Element::basis(id, CBasis::Word(MWord(vec![]))), |acc, (v, h)| {
                let moved = self.yd.act_letter(g, *v);
                acc.bilinear(&moved, id, |prefix, u| {
                    let CBasis::Word(MWord(p)) = prefix else { unreachable!() };
                    let mut p = p.clone();
                    p.push((u.0[0], group.mul(g, h)));
                    Element::basis(id, CBasis::Word(MWord(p)))
                })
            }),
        })
    }

    /// Right action `((v_1,g_1)□⋯)·g = (v_1, g_1 g)□⋯`.
    pub fn right_action(&self, x: &CotensorElement, g: &GroupElement) -> CotensorElement {
        let id = self.id();
        let group = self.group();
        x.linear_map(id, |b| match b {
            CBasis::Group(h) => self.group_element(group.mul(h, g)),
            CBasis::Word(w) => Element::basis(
                id,
                CBasis::Word(MWord(w.0.iter().map(|(v, h)| (*v, group.mul(h, g))).collect())),
            ),
        })
    }

    /// The degree-one part of the product: `f = ·_L(π⊗p) + ·_R(p⊗π) + μ(p⊗p)`
    /// with `μ((v,g),(v',g')) = (m(v ⊗ g·v'), gg')`.
    fn f_pair(&self, a: &CBasis, b: &CBasis) -> Option<Vec<((Letter, GroupElement), Scalar)>> {
        let group = self.group();
        match (a, b) {
            (CBasis::Group(g), CBasis::Word(w)) if w.len() == 1 => {
                let (v, h) = &w.0[0];
                let gh = group.mul(g, h);
                Some(
                    self.yd
                        .act_letter(g, *v)
                        .iter()
                        .map(|(u, c)| ((u.0[0], gh.clone()), c.clone()))
                        .collect(),
                )
            }
            (CBasis::Word(w), CBasis::Group(g)) if w.len() == 1 => {
                let (v, h) = &w.0[0];
                Some(vec![((*v, group.mul(h, g)), Scalar::one())])
            }
            (CBasis::Word(w1), CBasis::Word(w2)) if w1.len() == 1 && w2.len() == 1 => {
                let ((v, g), (v2, g2)) = (&w1.0[0], &w2.0[0]);
                let gg = group.mul(g, g2);
                let mut out = Vec::new();
                for (u, c) in self.yd.act_letter(g, *v2).iter() {
                    for (m, d) in self.alg.mult(*v, u.0[0]).iter() {
                        out.push(((m.0[0], gg.clone()), c * d));
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// The bimodule product on degree one, `μ((v,g),(v',g')) = (m(v ⊗ g·v'), gg')`.
    pub fn mu(&self, v: Letter, g: &GroupElement, v2: Letter, g2: &GroupElement) -> CotensorElement {
        let a = CBasis::Word(MWord(vec![(v, g.clone())]));
        let b = CBasis::Word(MWord(vec![(v2, g2.clone())]));
        let mut out = self.zero();
        for ((l, h), c) in self.f_pair(&a, &b).unwrap_or_default() {
            out.add_term(CBasis::Word(MWord(vec![(l, h)])), &c);
        }
        out
    }

    fn star_basis(&self, a: &CBasis, b: &CBasis) -> CotensorElement {
        let id = self.id();
        let mut out = self.zero();
        if let (CBasis::Group(g), CBasis::Group(h)) = (a, b) {
            out.add_term(CBasis::Group(self.group().mul(g, h)), &Scalar::one());
        }
        let total = a.degree() + b.degree();
        let xa = Element::basis(id, a.clone());
        let xb = Element::basis(id, b.clone());
        for n in 1..=total {
            let da = self.iterated_coproduct(&xa, n - 1);
            let db = self.iterated_coproduct(&xb, n - 1);
            for (CTensor(fa), ca) in da.iter() {
                for (CTensor(fb), cb) in db.iter() {
                    self.accumulate_f(&mut out, fa, fb, &(ca * cb));
                }
            }
        }
        out
    }

    /// Adds `c · f(a_1⊗b_1) ⊗ ⋯ ⊗ f(a_n⊗b_n)` to `out`.
    fn accumulate_f(&self, out: &mut CotensorElement, fa: &[CBasis], fb: &[CBasis], c: &Scalar) {
        let mut partial: Vec<(Vec<(Letter, GroupElement)>, Scalar)> = vec![(vec![], c.clone())];
        for (a, b) in fa.iter().zip(fb) {
            let Some(terms) = self.f_pair(a, b) else { return };
            let mut next = Vec::with_capacity(partial.len() * terms.len());
            for (prefix, pc) in &partial {
                for (m, tc) in &terms {
                    let mut p = prefix.clone();
                    p.push(m.clone());
                    next.push((p, pc * tc));
                }
            }
            partial = next;
        }
        for (w, s) in partial {
            out.add_term(CBasis::Word(MWord(w)), &s);
        }
    }

    /// The product `F(x ⊗ y)` with `F = g + Σ_{n≥1} f^{⊗n} Δ^{(n−1)}`, where
    /// `Δ` is the coproduct of the tensor square and the sum stops at the
    /// total degree.
    pub fn star(&self, x: &CotensorElement, y: &CotensorElement) -> CotensorElement {
        let mut out = self.zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.star_basis(a, b), &(ca * cb));
            }
        }
        out
    }

    /// The `n`-th term `f^{⊗n} Δ^{(n−1)}(x ⊗ y)` alone.
    pub fn star_term(&self, x: &CotensorElement, y: &CotensorElement, n: usize) -> CotensorElement {
        assert!(n >= 1);
        let mut out = self.zero();
        let dx = self.iterated_coproduct(x, n - 1);
        let dy = self.iterated_coproduct(y, n - 1);
        for (CTensor(fa), ca) in dx.iter() {
            for (CTensor(fb), cb) in dy.iter() {
                self.accumulate_f(&mut out, fa, fb, &(ca * cb));
            }
        }
        out
    }

    /// Componentwise product on the tensor square (ordinary flip).
    pub fn pair_star(&self, x: &Element<CPair>, y: &Element<CPair>) -> Element<CPair> {
        let id = self.id();
        x.bilinear(y, id, |CPair(a, b), CPair(c, d)| {
            let left = self.star_basis(a, c);
            let right = self.star_basis(b, d);
            left.bilinear(&right, id, |l, r| Element::basis(id, CPair(l.clone(), r.clone())))
        })
    }

    /// `Π = id ⋆ (i S π)`: `Σ x_(1) ∗ i(S(π(x_(2))))`.
    pub fn radford_projection(&self, x: &CotensorElement) -> CotensorElement {
        let mut out = self.zero();
        for (CPair(a, b), c) in self.coproduct(x).iter() {
            if let CBasis::Group(g) = b {
                out.add_scaled(&self.star_basis(a, &CBasis::Group(self.group().inverse(g))), c);
            }
        }
        out
    }

    /// `P_R(x) = Σ x_(0) S(x_(1))` for the right coaction `(id⊗π)Δ`.
    pub fn p_r(&self, x: &CotensorElement) -> CotensorElement {
        let mut out = self.zero();
        for (CPair(a, b), c) in self.coproduct(x).iter() {
            if let CBasis::Group(g) = b {
                let moved = self.right_action(&Element::basis(self.id(), a.clone()), &self.group().inverse(g));
                out.add_scaled(&moved, c);
            }
        }
        out
    }

    /// Right-coinvariant: every word ends in the neutral element and the
    /// degree-0 part is a multiple of `1`.
    pub fn is_coinvariant(&self, x: &CotensorElement) -> bool {
        let group = self.group();
        x.keys().all(|b| match b {
            CBasis::Group(g) => group.is_identity(g),
            CBasis::Word(w) => w.last_group().is_some_and(|g| group.is_identity(g)),
        })
    }

    /// `φ`: `(v_1,g_1)□⋯□(v_n,1) ↦ v_1⊗⋯⊗v_n` on coinvariants.
    pub fn phi(&self, x: &CotensorElement) -> Result<Element<Word>, Error> {
        if !self.is_coinvariant(x) {
            return Err(Error::NotCoinvariant(x.render(self.alphabet())));
        }
        let id = self.id();
        Ok(x.linear_map(id, |b| match b {
            CBasis::Group(_) => Element::scalar(id, Scalar::one()),
            CBasis::Word(w) => Element::word(id, w.letters()),
        }))
    }

    /// `ψ(v_1⊗⋯⊗v_n) = (v_1, d_2⋯d_n)□(v_2, d_3⋯d_n)□⋯□(v_n, 1)`.
    pub fn psi(&self, x: &Element<Word>) -> CotensorElement {
        let id = self.id();
        let one = self.group().identity();
        x.linear_map(id, |w| {
            if w.is_empty() {
                self.unit()
            } else {
                Element::basis(id, CBasis::Word(self.chain_word(w, &one)))
            }
        })
    }

    /// `(x#g)(y#g') = (x ⋈ g·y) # gg'`.
    pub fn star_smash(&self, x: &SmashElement, y: &SmashElement) -> SmashElement {
        let id = self.id();
        let group = self.group();
        let mut out = Element::zero(id);
        for (SmashKey(u, g), c) in x.iter() {
            for (SmashKey(w, h), d) in y.iter() {
                let moved = self.yd.act_word(g, w);
                let prod = qsh(&self.alg, &Element::word(id, u.clone()), &moved);
                let gh = group.mul(g, h);
                for (p, e) in prod.iter() {
                    out.add_term(SmashKey(p.clone(), gh.clone()), &(&(c * d) * e));
                }
            }
        }
        out
    }

    /// `x ↦ Σ φ(Π(x_(1))) # π(x_(2))`.
    pub fn to_smash(&self, x: &CotensorElement) -> Result<SmashElement, Error> {
        let id = self.id();
        let mut out = Element::zero(id);
        for (CPair(a, b), c) in self.coproduct(x).iter() {
            if let CBasis::Group(g) = b {
                let lifted = self.phi(&self.radford_projection(&Element::basis(id, a.clone())))?;
                for (w, d) in lifted.iter() {
                    out.add_term(SmashKey(w.clone(), g.clone()), &(c * d));
                }
            }
        }
        Ok(out)
    }

    /// `x # h ↦ ψ(x) ∗ i(h)`.
    pub fn from_smash(&self, y: &SmashElement) -> CotensorElement {
        let id = self.id();
        let mut out = self.zero();
        for (SmashKey(w, g), c) in y.iter() {
            let lifted = self.psi(&Element::word(id, w.clone()));
            out.add_scaled(&self.star(&lifted, &self.group_element(g.clone())), c);
        }
        out
    }

    /// `Δ_B = (Π⊗Π)Δ` on coinvariants.
    pub fn braided_coproduct_coinv(&self, x: &CotensorElement) -> Result<Element<CPair>, Error> {
        if !self.is_coinvariant(x) {
            return Err(Error::NotCoinvariant(x.render(self.alphabet())));
        }
        let id = self.id();
        Ok(self.coproduct(x).linear_map(id, |CPair(a, b)| {
            let l = self.radford_projection(&Element::basis(id, a.clone()));
            let r = self.radford_projection(&Element::basis(id, b.clone()));
            l.bilinear(&r, id, |l, r| Element::basis(id, CPair(l.clone(), r.clone())))
        }))
    }

    /// `u ↦ u # 1`.
    pub fn smash_word(&self, w: Word, g: GroupElement) -> SmashElement {
        Element::basis(self.id(), SmashKey(w, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::LocalMap;

    /// Clifford algebra on two odd generators over `ℤ/2`.
    fn clifford2() -> CotensorSpace {
        let g = AbelianGroup::cyclic(2);
        let al = Alphabet::new(["v1", "v2", "xi11", "xi12", "xi22"]);
        let id = al.id();
        let xi = |i: usize| Element::word(id, Word::from_indices([i]));
        let mut mult = LocalMap::new(5);
        mult.set(Letter(0), Letter(0), xi(2));
        mult.set(Letter(0), Letter(1), xi(3));
        mult.set(Letter(1), Letter(1), xi(4));
        let eps = g.generator(0);
        let degrees = vec![eps.clone(), eps, g.identity(), g.identity(), g.identity()];
        let chars = vec![vec![-1, -1, 1, 1, 1].into_iter().map(Scalar::from_int).collect()];
        let yd = YdSpec::diagonal(g, al, degrees, chars, Some(mult), None).unwrap();
        CotensorSpace::new(yd).unwrap()
    }

    fn v(c: &CotensorSpace, i: usize) -> CotensorElement {
        c.psi(&Element::word(c.id(), Word::from_indices([i])))
    }

    #[test]
    fn star_of_generators_renders() {
        let c = clifford2();
        let s = c.star(&v(&c, 0), &v(&c, 1));
        assert_eq!(
            s.render(c.alphabet()),
            "v1.K{1}[]v2.K{0} − v2.K{1}[]v1.K{0} + xi12.K{0}"
        );
        let sum = &s + &c.star(&v(&c, 1), &v(&c, 0));
        assert_eq!(sum, v(&c, 3));
    }

    #[test]
    fn group_elements_multiply() {
        let c = clifford2();
        let eps = c.group().generator(0);
        let e = c.group_element(eps.clone());
        assert_eq!(c.star(&e, &e), c.unit());
        // star(i(h), m) = h·m
        let m = c.m_letter(Letter(0), c.group().identity());
        assert_eq!(c.star(&e, &m), c.left_action(&eps, &m));
        assert_eq!(c.star(&e, &m).render(c.alphabet()), "−v1.K{1}");
    }

    #[test]
    fn coproduct_shapes() {
        let c = clifford2();
        let one = c.group().identity();
        let eps = c.group().generator(0);
        let d = c.coproduct(&c.m_letter(Letter(0), one.clone()));
        let expected = Element::from_terms(
            c.id(),
            [
                (CPair(CBasis::Group(eps.clone()), CBasis::Word(MWord(vec![(Letter(0), one.clone())]))), Scalar::one()),
                (CPair(CBasis::Word(MWord(vec![(Letter(0), one.clone())])), CBasis::Group(one.clone())), Scalar::one()),
            ],
        );
        assert_eq!(d, expected);
        let w = c.psi(&Element::word(c.id(), Word::from_indices([0, 1])));
        assert_eq!(c.coproduct(&w).len(), 3);
        assert_eq!(c.counit(&w), Scalar::zero());
        assert_eq!(c.counit(&c.group_element(eps)), Scalar::one());
    }

    #[test]
    fn chain_condition_and_kernel_agree() {
        let c = clifford2();
        let one = c.group().identity();
        let bad = Element::basis(c.id(), CBasis::Word(MWord(vec![(Letter(0), one.clone()), (Letter(1), one.clone())])));
        let cx = c.cotensor_check(&bad);
        assert!(cx.counterexample().unwrap().witness.contains("cut 1"));
        assert!(!c.kernel_check(&bad).is_pass());
        let good = c.psi(&Element::word(c.id(), Word::from_indices([0, 1, 2])));
        assert!(c.cotensor_check(&good).is_pass());
        assert!(c.kernel_check(&good).is_pass());
        assert!(c.cotensor_check(&c.m_letter(Letter(0), one)).is_pass());
    }

    #[test]
    fn projection_examples() {
        let c = clifford2();
        let eps = c.group().generator(0);
        assert_eq!(c.radford_projection(&c.group_element(eps.clone())), c.unit());
        let m = c.m_letter(Letter(1), eps);
        let p = c.radford_projection(&m);
        assert_eq!(p, c.m_letter(Letter(1), c.group().identity()));
        assert_eq!(p, c.p_r(&m));
        assert_eq!(c.radford_projection(&p), p);
    }

    #[test]
    fn phi_psi() {
        let c = clifford2();
        let w = Element::word(c.id(), Word::from_indices([0, 1]));
        let lifted = c.psi(&w);
        assert_eq!(lifted.render(c.alphabet()), "v1.K{1}[]v2.K{0}");
        assert_eq!(c.phi(&lifted).unwrap(), w);
        let eps = c.group().generator(0);
        assert!(c.phi(&c.m_letter(Letter(0), eps)).is_err());
    }

    #[test]
    fn smash_examples() {
        let c = clifford2();
        let one = c.group().identity();
        let eps = c.group().generator(0);
        let v1 = c.smash_word(Word::from_indices([0]), one.clone());
        let v2 = c.smash_word(Word::from_indices([1]), one.clone());
        assert_eq!(
            c.star_smash(&v1, &v2).render(c.alphabet()),
            "v1@v2#K{0} − v2@v1#K{0} + xi12#K{0}"
        );
        let e = c.smash_word(Word::empty(), eps.clone());
        assert_eq!(c.star_smash(&e, &v1).render(c.alphabet()), "−v1#K{1}");
        assert_eq!(c.star_smash(&v1, &e), c.smash_word(Word::from_indices([0]), eps.clone()));
        assert_eq!(c.from_smash(&e), c.group_element(eps.clone()));
        assert_eq!(c.from_smash(&v1), c.m_letter(Letter(0), one));
    }

    #[test]
    fn bosonization_round_trip_and_cross_path() {
        let c = clifford2();
        let lasts = [c.group().identity(), c.group().generator(0)];
        let basis = c.basis_up_to(2, &lasts);
        for b in &basis {
            let x = Element::basis(c.id(), b.clone());
            let s = c.to_smash(&x).unwrap();
            assert_eq!(c.from_smash(&s), x, "{}", x.render(c.alphabet()));
        }
        for a in basis.iter().filter(|b| b.degree() <= 1) {
            for b in basis.iter().filter(|b| b.degree() <= 2) {
                let (x, y) = (Element::basis(c.id(), a.clone()), Element::basis(c.id(), b.clone()));
                let lhs = c.to_smash(&c.star(&x, &y)).unwrap();
                let rhs = c.star_smash(&c.to_smash(&x).unwrap(), &c.to_smash(&y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn truncation_is_exact() {
        let c = clifford2();
        let x = c.psi(&Element::word(c.id(), Word::from_indices([0, 1])));
        let y = v(&c, 0);
        assert!(c.star_term(&x, &y, 4).is_zero());
        assert!(!c.star_term(&x, &y, 3).is_zero());
    }

    #[test]
    fn braided_coproduct_of_letter() {
        let c = clifford2();
        let m = v(&c, 0);
        let d = c.braided_coproduct_coinv(&m).unwrap();
        let one = CBasis::Group(c.group().identity());
        let mb = CBasis::Word(MWord(vec![(Letter(0), c.group().identity())]));
        let expected = Element::from_terms(
            c.id(),
            [(CPair(mb.clone(), one.clone()), Scalar::one()), (CPair(one, mb), Scalar::one())],
        );
        assert_eq!(d, expected);
    }
}
