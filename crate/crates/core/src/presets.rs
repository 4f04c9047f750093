//! The two example families: Clifford-type algebras over `ℤ/2` and the
//! quantum-group data over `ℤ^n` built from a Cartan matrix.

use crate::cotensor::{CotensorSpace, SmashElement};
use crate::error::{Counterexample, Error, Verdict};
use crate::grouphopf::{AbelianGroup, YdSpec};
use crate::kernel::{Alphabet, Element, Letter, LocalMap, Scalar, Word};

/// Outcome of one relation instance on one computation path.
#[derive(Clone, Debug)]
pub struct RelationOutcome {
    pub label: String,
    pub path: &'static str,
    pub verdict: Verdict,
}

/// The first failure among `outcomes`, or pass.
pub fn overall(outcomes: &[RelationOutcome]) -> Verdict {
    outcomes
        .iter()
        .find(|o| !o.verdict.is_pass())
        .map(|o| o.verdict.clone())
        .unwrap_or(Verdict::Pass)
}

fn compare<K: Ord + Clone + crate::kernel::Render>(
    check: &str,
    witness: String,
    al: &Alphabet,
    lhs: &Element<K>,
    rhs: &Element<K>,
) -> Verdict {
    if lhs == rhs {
        Verdict::Pass
    } else {
        Verdict::Fail(Counterexample::new(check, witness, lhs.render(al), rhs.render(al)))
    }
}

#[derive(Clone, Debug)]
pub struct CliffordConfig {
    pub n: usize,
    pub yd: YdSpec,
}

impl CliffordConfig {
    pub fn v(&self, i: usize) -> Letter {
        Letter::from(i - 1)
    }

    /// `ξ_ij` for `1 ≤ i ≤ j ≤ n`.
    pub fn xi(&self, i: usize, j: usize) -> Letter {
        clifford_xi(self.n, i, j)
    }
}

fn clifford_xi(n: usize, i: usize, j: usize) -> Letter {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    let before: usize = (1..i).map(|k| n - k + 1).sum();
    Letter::from(n + before + (j - i))
}

/// Basis `v_1..v_n, ξ_ij (i ≤ j)` over `ℤ/2 = ⟨ε⟩`: `deg v_i = ε`,
/// `deg ξ_ij = 1`, `ε·v_i = −v_i`, `ε·ξ_ij = ξ_ij`, `m(v_i⊗v_j) = ξ_ij` for
/// `i ≤ j` and all other products zero.
pub fn build_clifford(n: usize) -> Result<CliffordConfig, Error> {
    if n == 0 {
        return Err(Error::InvalidSpec("Clifford preset needs n ≥ 1".into()));
    }
    let group = AbelianGroup::new(0, vec![2], Some(vec!["eps".into()]))?;
    let mut names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    for i in 1..=n {
        for j in i..=n {
            names.push(format!("xi{i}{j}"));
        }
    }
    let alphabet = Alphabet::new(names);
    let id = alphabet.id();
    let dim = alphabet.len();
    let eps = group.generator(0);
    let degrees = (0..dim)
        .map(|k| if k < n { eps.clone() } else { group.identity() })
        .collect();
    let chars = vec![(0..dim)
        .map(|k| Scalar::from_int(if k < n { -1 } else { 1 }))
        .collect()];
    let mut mult = LocalMap::new(dim);
    for i in 1..=n {
        for j in 1..=n {
            let img = if i <= j {
                Element::word(id, Word(vec![clifford_xi(n, i, j)]))
            } else {
                Element::zero(id)
            };
            mult.set(Letter::from(i - 1), Letter::from(j - 1), img);
        }
    }
    let yd = YdSpec::diagonal(group, alphabet, degrees, chars, Some(mult), None)?;
    Ok(CliffordConfig { n, yd })
}

/// For all `i ≤ j` (at most `max_pairs` of them): `v_i∗v_j + v_j∗v_i = ξ_ij`
/// through the cotensor product and through the smash product; then the
/// smash commutation `(1#ε)(v_i#1) = −(v_i#ε)`.
pub fn check_clifford_relations(cfg: &CliffordConfig, max_pairs: usize) -> Result<Vec<RelationOutcome>, Error> {
    let space = CotensorSpace::new(cfg.yd.clone())?;
    let al = space.alphabet();
    let id = space.id();
    let one = space.group().identity();
    let eps = space.group().generator(0);
    let lift = |l: Letter| space.psi(&Element::word(id, Word(vec![l])));
    let smash = |l: Letter| space.smash_word(Word(vec![l]), one.clone());
    let mut out = Vec::new();
    let pairs = (1..=cfg.n).flat_map(|i| (i..=cfg.n).map(move |j| (i, j))).take(max_pairs);
    for (i, j) in pairs {
        let label = format!("v{i}*v{j} + v{j}*v{i} = xi{i}{j}");
        let (vi, vj, xi) = (cfg.v(i), cfg.v(j), cfg.xi(i, j));
        let lhs = &space.star(&lift(vi), &lift(vj)) + &space.star(&lift(vj), &lift(vi));
        out.push(RelationOutcome {
            label: label.clone(),
            path: "cotensor",
            verdict: compare("Clifford relation (cotensor product)", label.clone(), al, &lhs, &lift(xi)),
        });
        let lhs = &space.star_smash(&smash(vi), &smash(vj)) + &space.star_smash(&smash(vj), &smash(vi));
        out.push(RelationOutcome {
            label: label.clone(),
            path: "smash",
            verdict: compare("Clifford relation (smash product)", label, al, &lhs, &smash(xi)),
        });
    }
    for i in 1..=cfg.n {
        let label = format!("(1#eps)(v{i}#1) = -(v{i}#eps)");
        let e: SmashElement = space.smash_word(Word::empty(), eps.clone());
        let lhs = space.star_smash(&e, &smash(cfg.v(i)));
        let rhs = -space.smash_word(Word(vec![cfg.v(i)]), eps.clone());
        out.push(RelationOutcome {
            label: label.clone(),
            path: "smash",
            verdict: compare("group conjugation", label, al, &lhs, &rhs),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct UqgConfig {
    pub cartan: Vec<Vec<i64>>,
    pub yd: YdSpec,
}

impl UqgConfig {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn e(&self, i: usize) -> Letter {
        Letter::from(i - 1)
    }

    pub fn f(&self, i: usize) -> Letter {
        Letter::from(self.rank() + i - 1)
    }

    pub fn xi(&self, i: usize) -> Letter {
        Letter::from(2 * self.rank() + i - 1)
    }
}

/// Basis `E_1..E_n, F_1..F_n, ξ_1..ξ_n` over `ℤ^n = ⟨K_1..K_n⟩` with
/// `K_i·E_j = q^{c_ij}E_j`, `K_i·F_j = q^{−c_ij}F_j`, `K_i·ξ_j = ξ_j`,
/// `deg E_i = deg F_i = K_i`, `deg ξ_i = K_i²` and `m(E_i⊗F_j) = δ_ij ξ_i`.
pub fn build_uqg(cartan: &[Vec<i64>]) -> Result<UqgConfig, Error> {
    let n = cartan.len();
    if n == 0 || cartan.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidSpec("Cartan matrix must be square and nonempty".into()));
    }
    let group = AbelianGroup::free(n);
    let names: Vec<String> = ["E", "F", "xi"]
        .iter()
        .flat_map(|p| (1..=n).map(move |i| format!("{p}{i}")))
        .collect();
    let alphabet = Alphabet::new(names);
    let id = alphabet.id();
    let dim = 3 * n;
    let degrees = (0..dim)
        .map(|k| group.pow(&group.generator(k % n), if k < 2 * n { 1 } else { 2 }))
        .collect();
    let chars = (0..n)
        .map(|i| {
            (0..dim)
                .map(|k| {
                    let j = k % n;
                    let c = cartan[i][j] as i32;
                    match k / n {
                        0 => Scalar::q_pow(c),
                        1 => Scalar::q_pow(-c),
                        _ => Scalar::one(),
                    }
                })
                .collect()
        })
        .collect();
    let mut mult = LocalMap::new(dim);
    for i in 0..n {
        mult.set(Letter::from(i), Letter::from(n + i), Element::word(id, Word::from_indices([2 * n + i])));
    }
    let yd = YdSpec::diagonal(group, alphabet, degrees, chars, Some(mult), None)?;
    Ok(UqgConfig {
        cartan: cartan.to_vec(),
        yd,
    })
}

/// For all `i, j`: `E_i∗F_j − q^{−c_ij} F_j∗E_i = δ_ij ξ_i` through both
/// products; then `(1#K_i)(E_j#1)(1#K_i^{-1}) = q^{c_ij}(E_j#1)`.
pub fn check_uqg_relations(cfg: &UqgConfig) -> Result<Vec<RelationOutcome>, Error> {
    let space = CotensorSpace::new(cfg.yd.clone())?;
    let al = space.alphabet();
    let id = space.id();
    let group = space.group();
    let one = group.identity();
    let n = cfg.rank();
    let lift = |l: Letter| space.psi(&Element::word(id, Word(vec![l])));
    let smash = |l: Letter| space.smash_word(Word(vec![l]), one.clone());
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let c = cfg.cartan[i - 1][j - 1] as i32;
            let factor = Scalar::q_pow(-c);
            let label = format!("E{i}*F{j} - q^{}*F{j}*E{i} = {}", -c, if i == j { format!("xi{i}") } else { "0".into() });
            let (e, f) = (cfg.e(i), cfg.f(j));
            let lhs = &space.star(&lift(e), &lift(f)) - &space.star(&lift(f), &lift(e)).scale(&factor);
            let rhs = if i == j { lift(cfg.xi(i)) } else { space.zero() };
            out.push(RelationOutcome {
                label: label.clone(),
                path: "cotensor",
                verdict: compare("quantum-group relation (cotensor product)", label.clone(), al, &lhs, &rhs),
            });
            let lhs = &space.star_smash(&smash(e), &smash(f)) - &space.star_smash(&smash(f), &smash(e)).scale(&factor);
            let rhs = if i == j { smash(cfg.xi(i)) } else { Element::zero(id) };
            out.push(RelationOutcome {
                label: label.clone(),
                path: "smash",
                verdict: compare("quantum-group relation (smash product)", label, al, &lhs, &rhs),
            });
        }
    }
    for i in 1..=n {
        let k = group.generator(i - 1);
        let k_inv = group.inverse(&k);
        for j in 1..=n {
            let label = format!("(1#K{i})(E{j}#1)(1#K{i}^-1) = q^{}*(E{j}#1)", cfg.cartan[i - 1][j - 1]);
            let left = space.smash_word(Word::empty(), k.clone());
            let right = space.smash_word(Word::empty(), k_inv.clone());
            let lhs = space.star_smash(&space.star_smash(&left, &smash(cfg.e(j))), &right);
            let rhs = smash(cfg.e(j)).scale(&Scalar::q_pow(cfg.cartan[i - 1][j - 1] as i32));
            out.push(RelationOutcome {
                label: label.clone(),
                path: "smash",
                verdict: compare("group conjugation", label, al, &lhs, &rhs),
            });
        }
    }
    Ok(out)
}

/// The bimodule product reproduces the table
/// `m(E_i K ⊗ F_j K') = δ_ij q^{−Σ_k a_k c_kj} ξ_i KK'` for `K = ∏ K_k^{a_k}`,
/// checked for every `K, K'` with exponents in `[-bound, bound]`.
pub fn check_uqg_mtable(cfg: &UqgConfig, bound: i64) -> Result<Verdict, Error> {
    let space = CotensorSpace::new(cfg.yd.clone())?;
    let group = space.group();
    let n = cfg.rank();
    let mut exps = vec![vec![]];
    for _ in 0..n {
        exps = exps
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |e| {
                    let mut p = p.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    let elems: Vec<_> = exps.into_iter().map(|e| group.element(e)).collect::<Result<_, _>>()?;
    let sample: Vec<_> = elems.iter().step_by(1 + elems.len() / 9).cloned().collect();
    for k in &elems {
        for k2 in &sample {
            for i in 1..=n {
                for j in 1..=n {
                    let got = space.mu(cfg.e(i), k, cfg.f(j), k2);
                    let expected = if i == j {
                        let lam: i64 = (0..n).map(|t| k.exps()[t] * cfg.cartan[t][j - 1]).sum();
                        space.m_letter(cfg.xi(i), group.mul(k, k2)).scale(&Scalar::q_pow(-lam as i32))
                    } else {
                        space.zero()
                    };
                    if got != expected {
                        return Ok(Verdict::Fail(Counterexample::new(
                            "bimodule multiplication table",
                            format!("(E{i}, {k}) (F{j}, {k2})"),
                            got.render(space.alphabet()),
                            expected.render(space.alphabet()),
                        )));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// The `A_n` Cartan matrix.
pub fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}
