#![allow(dead_code)]

use cofree_hopf::braid::{beta_pair, BraidingTable};
use cofree_hopf::grouphopf::{AbelianGroup, YdSpec};
use cofree_hopf::kernel::{Alphabet, Element, LocalMap, Scalar, Word, WordPair};
use cofree_hopf::presets::{build_clifford, build_uqg, cartan_a};
use cofree_hopf::qalg::{deconcat, qsh, BraidedAlgebraSpec};

/// Flip braiding, `x_a x_b = x_{a+b}` while the index stays in range.
pub fn hoffman(n: usize) -> BraidedAlgebraSpec {
    let al = Alphabet::new((1..=n).map(|i| format!("x{i}")));
    let id = al.id();
    let mult = LocalMap::from_fn(n, |a, b| {
        let s = a.index() + b.index() + 1;
        if s < n {
            Element::word(id, Word::from_indices([s]))
        } else {
            Element::zero(id)
        }
    });
    BraidedAlgebraSpec::new(BraidingTable::flip(al), mult, None).unwrap()
}

pub fn clifford_yd(n: usize) -> YdSpec {
    build_clifford(n).unwrap().yd
}

pub fn a1_yd() -> YdSpec {
    build_uqg(&[vec![2]]).unwrap().yd
}

pub fn a2_yd() -> YdSpec {
    build_uqg(&cartan_a(2)).unwrap().yd
}

/// The three braided algebras every algebra-level property runs on.
pub fn specs() -> Vec<(&'static str, BraidedAlgebraSpec)> {
    vec![
        ("hoffman", hoffman(3)),
        ("clifford", clifford_yd(2).braided_algebra().unwrap()),
        ("uqg-a1", a1_yd().braided_algebra().unwrap()),
    ]
}

pub fn word(spec: &BraidedAlgebraSpec, ix: &[usize]) -> Element<Word> {
    Element::word(spec.id(), Word::from_indices(ix.iter().copied()))
}

/// `(⋈⊗⋈)(id⊗β⊗id)(Δx ⊗ Δy)`.
pub fn braided_product_of_coproducts(spec: &BraidedAlgebraSpec, x: &Element<Word>, y: &Element<Word>) -> Element<WordPair> {
    let id = spec.id();
    let dx = deconcat(x);
    let dy = deconcat(y);
    let mut out = Element::zero(id);
    for (WordPair(x1, x2), c) in dx.iter() {
        for (WordPair(y1, y2), d) in dy.iter() {
            let middle = Element::basis(id, WordPair(x2.clone(), y1.clone()));
            for (WordPair(y1n, x2n), e) in beta_pair(spec.braiding(), &middle).iter() {
                let left = qsh(spec, &Element::word(id, x1.clone()), &Element::word(id, y1n.clone()));
                let right = qsh(spec, &Element::word(id, x2n.clone()), &Element::word(id, y2.clone()));
                let coeff = &(c * d) * e;
                let pair = left.bilinear(&right, id, |l, r| Element::basis(id, WordPair(l.clone(), r.clone())));
                out.add_scaled(&pair, &coeff);
            }
        }
    }
    out
}

/// A diagonal YD spec over `ℤ^rank`: `chars[i][a] = q^{e}` for generator `i`
/// on letter `a`, degrees as exponent vectors.
pub fn diagonal_yd(rank: usize, degrees: &[Vec<i64>], chars: &[Vec<i32>]) -> YdSpec {
    let g = AbelianGroup::free(rank);
    let al = Alphabet::new((1..=degrees.len()).map(|i| format!("a{i}")));
    let degrees = degrees.iter().map(|d| g.element(d.clone()).unwrap()).collect();
    let chars = chars
        .iter()
        .map(|row| row.iter().map(|&e| Scalar::q_pow(e)).collect())
        .collect();
    YdSpec::diagonal(g, al, degrees, chars, None, None).unwrap()
}
