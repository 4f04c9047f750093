//! Rota-Baxter operators: `P` on the quasi-shuffle algebra, the products
//! `♥` and `♦`, the operator `Q`, and the lifts `P̃` to the smash product and
//! to the cotensor algebra.

use crate::cotensor::{CBasis, CotensorElement, CotensorSpace, SmashElement, SmashKey};
use crate::error::{Counterexample, Error, Verdict};
use crate::kernel::{Alphabet, Element, Letter, Render, Scalar, Word};
use crate::qalg::{qsh, BraidedAlgebraSpec};
use crate::braid::beta;

type Product<'a, K> = Box<dyn Fn(&Element<K>, &Element<K>) -> Element<K> + 'a>;
type Operator<'a, K> = Box<dyn Fn(&Element<K>) -> Element<K> + 'a>;

/// An algebra with an endomorphism and a weight, to be checked against
/// `P(x)P(y) = P(xP(y)) + P(P(x)y) + λP(xy)`.
pub struct RbInstance<'a, K> {
    alphabet: &'a Alphabet,
    product: Product<'a, K>,
    operator: Operator<'a, K>,
    weight: Scalar,
}

impl<'a, K: Ord + Clone + Render + 'a> RbInstance<'a, K> {
    pub fn new<F, P>(alphabet: &'a Alphabet, product: F, operator: P, weight: Scalar) -> Self
    where
        F: Fn(&Element<K>, &Element<K>) -> Element<K> + 'a,
        P: Fn(&Element<K>) -> Element<K> + 'a,
    {
        RbInstance {
            alphabet,
            product: Box::new(product),
            operator: Box::new(operator),
            weight,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.alphabet
    }

    pub fn weight(&self) -> &Scalar {
        &self.weight
    }

    pub fn mul(&self, x: &Element<K>, y: &Element<K>) -> Element<K> {
        (self.product)(x, y)
    }

    pub fn apply(&self, x: &Element<K>) -> Element<K> {
        (self.operator)(x)
    }

    /// Same product and operator, different weight.
    pub fn with_weight(self, weight: Scalar) -> Self {
        RbInstance { weight, ..self }
    }

    /// `(λP, λ·weight)`.
    pub fn scaled(self, lambda: Scalar) -> Self {
        let RbInstance {
            alphabet,
            product,
            operator,
            weight,
        } = self;
        let l = lambda.clone();
        RbInstance {
            alphabet,
            product,
            operator: Box::new(move |x| operator(x).scale(&l)),
            weight: &weight * &lambda,
        }
    }

    /// `x♥y = xP(y) + P(x)y + λxy`.
    pub fn heart(&self, x: &Element<K>, y: &Element<K>) -> Element<K> {
        let mut out = self.mul(x, &self.apply(y));
        out.add_scaled(&self.mul(&self.apply(x), y), &Scalar::one());
        out.add_scaled(&self.mul(x, y), &self.weight);
        out
    }

    /// The derived instance `(♥, P, λ)`.
    pub fn heart_instance(self) -> RbInstance<'a, K>
    where
        Self: 'a,
    {
        let alphabet = self.alphabet;
        let weight = self.weight.clone();
        let inner = std::rc::Rc::new(self);
        let op = inner.clone();
        RbInstance {
            alphabet,
            product: Box::new(move |x, y| inner.heart(x, y)),
            operator: Box::new(move |x| op.apply(x)),
            weight,
        }
    }
}

/// Evaluates both sides of the Rota-Baxter identity on every sample pair.
pub fn rb_check<K: Ord + Clone + Render>(inst: &RbInstance<'_, K>, samples: &[(Element<K>, Element<K>)]) -> Verdict {
    for (x, y) in samples {
        let px = inst.apply(x);
        let py = inst.apply(y);
        let lhs = inst.mul(&px, &py);
        let mut rhs = inst.apply(&inst.mul(x, &py));
        rhs.add_scaled(&inst.apply(&inst.mul(&px, y)), &Scalar::one());
        rhs.add_scaled(&inst.apply(&inst.mul(x, y)), inst.weight());
        if lhs != rhs {
            let al = inst.alphabet();
            return Verdict::Fail(Counterexample::new(
                format!("Rota-Baxter identity of weight {}", inst.weight()),
                format!("({}, {})", x.render(al), y.render(al)),
                lhs.render(al),
                rhs.render(al),
            ));
        }
    }
    Verdict::Pass
}

/// Checks associativity of the instance's product on sample triples.
pub fn associativity_check<K: Ord + Clone + Render>(
    inst: &RbInstance<'_, K>,
    samples: &[(Element<K>, Element<K>, Element<K>)],
) -> Verdict {
    for (x, y, z) in samples {
        let lhs = inst.mul(&inst.mul(x, y), z);
        let rhs = inst.mul(x, &inst.mul(y, z));
        if lhs != rhs {
            let al = inst.alphabet();
            return Verdict::Fail(Counterexample::new(
                "associativity",
                format!("({}, {}, {})", x.render(al), y.render(al), z.render(al)),
                lhs.render(al),
                rhs.render(al),
            ));
        }
    }
    Verdict::Pass
}

fn unit_of(spec: &BraidedAlgebraSpec) -> Result<Letter, Error> {
    spec.unit().ok_or(Error::NotUnital)
}

fn p_word(one: Letter, w: &Word) -> Word {
    w.prepended(one)
}

/// `P(λ) = λ1_A`, `P(x) = 1_A ⊗ x` on positive degree.
pub fn p_qsh(spec: &BraidedAlgebraSpec, x: &Element<Word>) -> Result<Element<Word>, Error> {
    let one = unit_of(spec)?;
    Ok(x.linear_map(spec.id(), |w| Element::word(spec.id(), p_word(one, w))))
}

/// `(T_{σ,m}(A), ⋈, P)` with weight 1.
pub fn qsh_instance(spec: &BraidedAlgebraSpec) -> Result<RbInstance<'_, Word>, Error> {
    unit_of(spec)?;
    Ok(RbInstance::new(
        spec.alphabet(),
        move |x, y| qsh(spec, x, y),
        move |x| p_qsh(spec, x).expect("unital"),
        Scalar::one(),
    ))
}

fn split_first(w: &Word) -> Result<(Letter, Word), Error> {
    match w.0.split_first() {
        Some((a, rest)) => Ok((*a, Word(rest.to_vec()))),
        None => Err(Error::LengthMismatch { expected: 1, found: 0 }),
    }
}

/// `(a⊗̄x)♦(b⊗̄y) = Σ m(a ⊗ b') ⊗̄ (x' ⋈ y)` where `β_{|x|,1}(x ⊗ b) = Σ b' ⊗ x'`.
/// Values of `A ⊗̄ T(A)` are words whose first letter is the `A` leg.
pub fn lozenge(spec: &BraidedAlgebraSpec, u: &Element<Word>, w: &Element<Word>) -> Result<Element<Word>, Error> {
    let id = spec.id();
    let mut out = Element::zero(id);
    for (uw, c) in u.iter() {
        let (a, x) = split_first(uw)?;
        for (ww, d) in w.iter() {
            let (b, y) = split_first(ww)?;
            let moved = beta(spec.braiding(), x.len(), 1, &Element::word(id, x.pushed(b)))?;
            for (mw, e) in moved.iter() {
                let (b_new, x_new) = split_first(mw)?;
                let tail = qsh(spec, &Element::word(id, x_new), &Element::word(id, y.clone()));
                for (m, f) in spec.mult(a, b_new).iter() {
                    let coeff = &(&(c * d) * e) * f;
                    for (t, g) in tail.iter() {
                        out.add_term(t.prepended(m.0[0]), &(&coeff * g));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Q(a⊗̄x) = 1_A ⊗̄ a⊗x`.
pub fn q_operator(spec: &BraidedAlgebraSpec, u: &Element<Word>) -> Result<Element<Word>, Error> {
    let one = unit_of(spec)?;
    let id = spec.id();
    u.try_linear_map(id, |w| {
        split_first(w)?;
        Ok(Element::word(id, w.prepended(one)))
    })
}

/// `(A⊗̄T(A), ♦, Q)` with weight 1.
pub fn lozenge_instance(spec: &BraidedAlgebraSpec) -> Result<RbInstance<'_, Word>, Error> {
    unit_of(spec)?;
    Ok(RbInstance::new(
        spec.alphabet(),
        move |x, y| lozenge(spec, x, y).expect("positive words"),
        move |x| q_operator(spec, x).expect("positive words"),
        Scalar::one(),
    ))
}

/// Checks `f(u ♥ w) = f(u) ⋈ f(w)` where `♥` is built from `♦` and
/// `operator`, and `f` is the identity on underlying words.
pub fn prop34_check_with<Q>(spec: &BraidedAlgebraSpec, samples: &[(Element<Word>, Element<Word>)], operator: Q) -> Verdict
where
    Q: Fn(&Element<Word>) -> Element<Word>,
{
    let al = spec.alphabet();
    for (u, w) in samples {
        let heart = || -> Result<Element<Word>, Error> {
            let mut out = lozenge(spec, u, &operator(w))?;
            out.add_scaled(&lozenge(spec, &operator(u), w)?, &Scalar::one());
            out.add_scaled(&lozenge(spec, u, w)?, &Scalar::one());
            Ok(out)
        };
        let lhs = match heart() {
            Ok(h) => h,
            Err(e) => return Verdict::Fail(Counterexample::new("♥ on A⊗T(A)", e.to_string(), "", "")),
        };
        let rhs = qsh(spec, u, w);
        if lhs != rhs {
            return Verdict::Fail(Counterexample::new(
                "f(x♥y) = f(x)⋈f(y)",
                format!("({}, {})", u.render(al), w.render(al)),
                lhs.render(al),
                rhs.render(al),
            ));
        }
    }
    Verdict::Pass
}

pub fn prop34_check(spec: &BraidedAlgebraSpec, samples: &[(Element<Word>, Element<Word>)]) -> Verdict {
    if spec.unit().is_none() {
        return Verdict::Fail(Counterexample::new("A⊗T(A) operator Q", Error::NotUnital.to_string(), "", ""));
    }
    prop34_check_with(spec, samples, |u| q_operator(spec, u).expect("unital, positive words"))
}

/// `P̃(a#h) = P(a)#h`.
pub fn p_tilde_smash(space: &CotensorSpace, x: &SmashElement) -> Result<SmashElement, Error> {
    let one = unit_of(space.algebra())?;
    let id = space.id();
    Ok(x.linear_map(id, |SmashKey(w, g)| {
        Element::basis(id, SmashKey(p_word(one, w), g.clone()))
    }))
}

/// `P̃` transported to the cotensor algebra through the bosonization.
pub fn p_tilde_cotensor(space: &CotensorSpace, x: &CotensorElement) -> Result<CotensorElement, Error> {
    let s = space.to_smash(x)?;
    Ok(space.from_smash(&p_tilde_smash(space, &s)?))
}

/// `(T(V)#H, star_smash, P̃)` with weight 1.
pub fn smash_instance(space: &CotensorSpace) -> Result<RbInstance<'_, SmashKey>, Error> {
    unit_of(space.algebra())?;
    Ok(RbInstance::new(
        space.alphabet(),
        move |x, y| space.star_smash(x, y),
        move |x| p_tilde_smash(space, x).expect("unital"),
        Scalar::one(),
    ))
}

/// `(T^c_H(M), ∗, P̃)` with weight 1.
pub fn cotensor_instance(space: &CotensorSpace) -> Result<RbInstance<'_, CBasis>, Error> {
    unit_of(space.algebra())?;
    Ok(RbInstance::new(
        space.alphabet(),
        move |x, y| space.star(x, y),
        move |x| p_tilde_cotensor(space, x).expect("unital, cotensor input"),
        Scalar::one(),
    ))
}

/// All ordered pairs of words `(u, v)` with `|u| ≤ left` and `|v| ≤ right`.
pub fn word_pairs(spec: &BraidedAlgebraSpec, left: (usize, usize), right: (usize, usize)) -> Vec<(Element<Word>, Element<Word>)> {
    let al = spec.alphabet();
    let id = spec.id();
    let us = al.words_up_to(left.0, left.1);
    let vs = al.words_up_to(right.0, right.1);
    us.iter()
        .flat_map(|u| vs.iter().map(move |v| (Element::word(id, u.clone()), Element::word(id, v.clone()))))
        .collect()
}
