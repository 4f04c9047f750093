//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use cofree_hopf::braid::{all_reduced_words, check_yang_baxter, lift_tw, lift_word, BraidingTable, Permutation};
use cofree_hopf::cotensor::{CotensorElement, CotensorSpace, SmashElement};
use cofree_hopf::grouphopf::{self, check_yd, induced_braiding, AbelianGroup, GroupElement, YdSpec};
use cofree_hopf::kernel::{Alphabet, Element, LocalMap, Scalar, Word};
use cofree_hopf::presets::{
    build_clifford, build_uqg, cartan_a, check_clifford_relations, check_uqg_relations, RelationOutcome,
};
use cofree_hopf::qalg::{check_qsh_associativity, check_qsh_compatibility, qsh, BraidedAlgebraSpec};
use cofree_hopf::rotabaxter::{prop34_check, qsh_instance, rb_check, smash_instance, word_pairs};
use cofree_hopf::Verdict;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const TIME_LIMIT: Duration = Duration::from_secs(5);

fn clifford(n: usize) -> YdSpec {
    build_clifford(n).unwrap().yd
}

fn a2() -> YdSpec {
    build_uqg(&cartan_a(2)).unwrap().yd
}

fn hoffman(n: usize) -> BraidedAlgebraSpec {
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

fn verdict(what: &str, v: Verdict) -> Result<(), String> {
    match v {
        Verdict::Pass => Ok(()),
        Verdict::Fail(c) => Err(format!("{what}: {c}")),
    }
}

fn relations(outcomes: &[RelationOutcome], elapsed: Duration) -> Outcome {
    let failed: Vec<String> = outcomes
        .iter()
        .filter_map(|o| o.verdict.counterexample().map(|c| format!("[{}] {}", o.path, c)))
        .collect();
    let mut problems = failed.clone();
    if elapsed > TIME_LIMIT {
        problems.push(format!("took {elapsed:?}, limit {TIME_LIMIT:?}"));
    }
    if problems.is_empty() {
        Ok(format!("{} relation instances in {elapsed:.2?}", outcomes.len()))
    } else {
        Err(format!(
            "{} of {} relation instances fail ({elapsed:.2?})\n{}",
            failed.len(),
            outcomes.len(),
            problems.join("\n")
        ))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cfg = build_clifford(3).map_err(|e| e.to_string())?;
    let outcomes = check_clifford_relations(&cfg, usize::MAX).map_err(|e| e.to_string())?;
    relations(&outcomes, start.elapsed())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cfg = build_uqg(&cartan_a(2)).map_err(|e| e.to_string())?;
    let outcomes = check_uqg_relations(&cfg).map_err(|e| e.to_string())?;
    relations(&outcomes, start.elapsed())
}

/// Cotensor basis elements of degree at most `max_len` whose last group
/// element lies in `lasts`.
fn cotensor_basis(space: &CotensorSpace, max_len: usize, lasts: &[GroupElement]) -> Vec<(usize, CotensorElement)> {
    space
        .basis_up_to(max_len, lasts)
        .into_iter()
        .map(|b| (b.degree(), Element::basis(space.id(), b)))
        .collect()
}

/// Every pair with total degree at most `max_total`, thinned to about
/// `target` pairs by a fixed stride.
fn pairs_up_to<T: Clone>(items: &[(usize, T)], max_total: usize, target: usize) -> Vec<(T, T)> {
    let all: Vec<(T, T)> = items
        .iter()
        .flat_map(|(d, x)| {
            items
                .iter()
                .filter(move |(e, _)| d + e <= max_total)
                .map(move |(_, y)| (x.clone(), y.clone()))
        })
        .collect();
    let stride = (all.len() / target).max(1);
    all.into_iter().step_by(stride).collect()
}

fn cross_path(space: &CotensorSpace, pairs: &[(CotensorElement, CotensorElement)]) -> Result<(), String> {
    let al = space.alphabet();
    for (x, y) in pairs {
        let lhs = space.to_smash(&space.star(x, y)).map_err(|e| e.to_string())?;
        let rhs = space.star_smash(
            &space.to_smash(x).map_err(|e| e.to_string())?,
            &space.to_smash(y).map_err(|e| e.to_string())?,
        );
        if lhs != rhs {
            return Err(format!(
                "at ({}, {}): {} vs {}",
                x.render(al),
                y.render(al),
                lhs.render(al),
                rhs.render(al)
            ));
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut report = Vec::new();
    for (name, yd) in [("clifford n=2", clifford(2)), ("uqg A2", a2())] {
        let space = CotensorSpace::new(yd).map_err(|e| e.to_string())?;
        let g = space.group();
        let lasts = vec![g.identity(), g.generator(0)];
        let pairs = pairs_up_to(&cotensor_basis(&space, 3, &lasts), 3, 300);
        if pairs.len() < 100 {
            return Err(format!("{name}: only {} pairs", pairs.len()));
        }
        cross_path(&space, &pairs).map_err(|e| format!("{name}: {e}"))?;
        report.push(format!("{name}: {} pairs", pairs.len()));
    }
    Ok(report.join(", "))
}

fn random_diagonal_spec(rng: &mut StdRng, k: usize) -> YdSpec {
    let rank = rng.gen_range(1..=2);
    let dim = rng.gen_range(1..=4);
    let group = AbelianGroup::free(rank);
    let al = Alphabet::new((1..=dim).map(|i| format!("r{k}_{i}")));
    let degrees = (0..dim)
        .map(|_| group.element((0..rank).map(|_| rng.gen_range(-2..=2)).collect()).unwrap())
        .collect();
    let chars = (0..rank)
        .map(|_| (0..dim).map(|_| Scalar::q_pow(rng.gen_range(-2..=2))).collect())
        .collect();
    YdSpec::diagonal(group, al, degrees, chars, None, None).unwrap()
}

fn criterion_4() -> Outcome {
    for (name, yd) in [("clifford n=3", clifford(3)), ("uqg A1", build_uqg(&[vec![2]]).unwrap().yd), ("uqg A2", a2())] {
        let sigma = induced_braiding(&yd).map_err(|e| e.to_string())?;
        verdict(name, check_yang_baxter(&sigma))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for k in 0..20 {
        let yd = random_diagonal_spec(&mut rng, k);
        verdict(&format!("random spec {k}"), check_yd(&yd))?;
        let sigma = induced_braiding(&yd).map_err(|e| e.to_string())?;
        verdict(&format!("random spec {k}"), check_yang_baxter(&sigma))?;
    }
    // negative control: σ(E1⊗E1) gains an off-diagonal term
    let yd = a2();
    let sigma = induced_braiding(&yd).unwrap();
    let al = sigma.alphabet().clone();
    let (e1, e2) = (al.letter("E1").unwrap(), al.letter("E2").unwrap());
    let corrupted = BraidingTable::from_fn(al.clone(), |a, b| {
        let mut img = sigma.image(a, b).clone();
        if (a, b) == (e1, e1) {
            img.add_term(Word(vec![e1, e2]), &Scalar::one());
        }
        img
    })
    .map_err(|e| e.to_string())?;
    match check_yang_baxter(&corrupted) {
        Verdict::Pass => Err("corrupted table passed the Yang-Baxter check".into()),
        Verdict::Fail(c) => {
            println!("       negative control counterexample:\n       {}", c.to_string().replace('\n', "\n       "));
            Ok("3 presets and 20 random diagonal specs braid; corrupted table rejected".into())
        }
    }
}

fn criterion_5() -> Outcome {
    let sigma = induced_braiding(&a2()).map_err(|e| e.to_string())?;
    let id = sigma.alphabet().id();
    let words = sigma.alphabet().words_of_length(4);
    let stride = words.len() / 20;
    let sample: Vec<Word> = words.into_iter().step_by(stride).take(20).collect();
    let mut count = 0;
    for w in Permutation::all(4) {
        let reduced = all_reduced_words(&w);
        for u in &sample {
            let x = Element::word(id, u.clone());
            let reference = lift_tw(&sigma, &w, &x).map_err(|e| e.to_string())?;
            for r in &reduced {
                if lift_word(&sigma, r, &x).map_err(|e| e.to_string())? != reference {
                    return Err(format!("permutation {:?}, reduced word {r:?}", w.images()));
                }
                count += 1;
            }
        }
    }
    Ok(format!("24 permutations, 20 words, {count} reduced-word lifts agree"))
}

fn criterion_6() -> Outcome {
    let h = hoffman(3);
    let x1 = Element::word(h.id(), Word::from_indices([0]));
    let base = qsh(&h, &x1, &x1).render(h.alphabet());
    if base != "2 x1@x1 + x2" {
        return Err(format!("Hoffman base case gives {base}"));
    }
    let specs = [
        ("hoffman", h),
        ("clifford n=2", clifford(2).braided_algebra().unwrap()),
        ("uqg A2", a2().braided_algebra().unwrap()),
    ];
    for (name, spec) in &specs {
        verdict(name, check_qsh_associativity(spec, 4))?;
        verdict(name, check_qsh_compatibility(spec, 3))?;
    }
    Ok("associativity (total ≤ 4) and compatibility (total ≤ 3) on 3 specs; x1⋈x1 = 2 x1@x1 + x2".into())
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for (name, yd) in [("clifford n=2", clifford(2)), ("uqg A2", a2())] {
        let space = CotensorSpace::new(yd).map_err(|e| e.to_string())?;
        let (id, al) = (space.id(), space.alphabet());
        let mut lifts = Vec::new();
        for w in al.words_up_to(0, 3) {
            let x = Element::word(id, w.clone());
            let lift = space.psi(&x);
            verdict(name, space.cotensor_check(&lift))?;
            let back = space.phi(&lift).map_err(|e| e.to_string())?;
            if back != x {
                return Err(format!("{name}: φψ({}) = {}", x.render(al), back.render(al)));
            }
            lifts.push((w.len(), lift));
            count += 1;
        }
        let g = space.group();
        for (_, b) in cotensor_basis(&space, 3, &[g.identity(), g.generator(0)]) {
            let coinv = space.radford_projection(&b);
            let again = space.psi(&space.phi(&coinv).map_err(|e| e.to_string())?);
            if again != coinv {
                return Err(format!("{name}: ψφ({}) = {}", coinv.render(al), again.render(al)));
            }
            count += 1;
        }
        for (x, y) in pairs_up_to(&lifts, 3, 400) {
            verdict(name, space.cotensor_check(&space.star(&x, &y)))?;
        }
    }
    Ok(format!("{count} round trips; lifts and star outputs satisfy the chain condition"))
}

fn smash_basis(space: &CotensorSpace, max_len: usize, groups: &[GroupElement]) -> Vec<SmashElement> {
    let mut out = Vec::new();
    for w in space.alphabet().words_up_to(0, max_len) {
        for g in groups {
            out.push(space.smash_word(w.clone(), g.clone()));
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let space = CotensorSpace::new(grouphopf::adjoin_unit(&clifford(2)).unwrap()).map_err(|e| e.to_string())?;
    let spec = space.algebra();
    let pairs = word_pairs(spec, (0, 2), (0, 2));
    let inst = qsh_instance(spec).map_err(|e| e.to_string())?;
    verdict("(⋈, P)", rb_check(&inst, &pairs))?;
    for lam in [Scalar::from_int(-1), Scalar::q_pow(1)] {
        let scaled = qsh_instance(spec).map_err(|e| e.to_string())?.scaled(lam.clone());
        verdict(&format!("(⋈, {lam}·P)"), rb_check(&scaled, &pairs))?;
    }
    let g = space.group();
    let xs = smash_basis(&space, 2, &[g.identity(), g.generator(0)]);
    let smash_pairs: Vec<_> = xs.iter().flat_map(|x| xs.iter().map(move |y| (x.clone(), y.clone()))).collect();
    let inst = smash_instance(&space).map_err(|e| e.to_string())?;
    verdict("(smash, P̃)", rb_check(&inst, &smash_pairs))?;
    for lam in [Scalar::from_int(-1), Scalar::q_pow(1)] {
        let scaled = smash_instance(&space).map_err(|e| e.to_string())?.scaled(lam.clone());
        verdict(&format!("(smash, {lam}·P̃)"), rb_check(&scaled, &smash_pairs))?;
    }
    let positive = word_pairs(spec, (1, 2), (1, 2));
    verdict("lozenge", prop34_check(spec, &positive))?;
    Ok(format!(
        "{} word pairs, {} smash pairs, {} lozenge pairs",
        pairs.len(),
        smash_pairs.len(),
        positive.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut report = Vec::new();
    for (name, yd) in [("clifford n=3", clifford(3)), ("uqg A2", a2())] {
        let space = CotensorSpace::new(yd).map_err(|e| e.to_string())?;
        let al = space.alphabet();
        let g = space.group();
        let groups: Vec<GroupElement> = if g.rank() > 0 {
            vec![g.identity(), g.generator(0), g.inverse(&g.generator(1))]
        } else {
            vec![g.identity(), g.generator(0)]
        };
        let basis = cotensor_basis(&space, 2, &groups);
        for (_, x) in &basis {
            let pi = space.radford_projection(x);
            if pi != space.p_r(x) {
                return Err(format!("{name}: Π ≠ P_R at {}", x.render(al)));
            }
            if space.radford_projection(&pi) != pi {
                return Err(format!("{name}: Π not idempotent at {}", x.render(al)));
            }
        }
        let samples = smash_basis(&space, 2, &groups);
        if samples.len() < 100 {
            return Err(format!("{name}: only {} round-trip samples", samples.len()));
        }
        for y in &samples {
            let back = space.to_smash(&space.from_smash(y)).map_err(|e| e.to_string())?;
            if &back != y {
                return Err(format!("{name}: round trip of {} gives {}", y.render(al), back.render(al)));
            }
        }
        report.push(format!("{name}: {} projections, {} round trips", basis.len(), samples.len()));
    }
    Ok(report.join(", "))
}

fn cofree(args: &[&str], stdin: &str) -> Result<(i32, String), String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cofree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child
        .stdin
        .take()
        .expect("piped")
        .write_all(stdin.as_bytes())
        .map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn criterion_10() -> Outcome {
    let (code, preset) = cofree(&["preset", "clifford", "--n", "2"], "")?;
    if code != 0 {
        return Err(format!("preset exited with {code}"));
    }
    let (code, star) = cofree(&["--config", "-", "star", "v1", "v2"], &preset)?;
    let expected = "v1.K{1}[]v2.K{0} − v2.K{1}[]v1.K{0} + xi12.K{0}\n";
    if (code, star.as_str()) != (0, expected) {
        return Err(format!("star v1 v2 exited {code} with {star:?}"));
    }
    let corrupted = "[group]\nfree = 0\n[basis]\na =\nb =\n[braiding]\na a -> a@a + a@b\n";
    let (code, out) = cofree(&["--config", "-", "check", "yb"], corrupted)?;
    if code != 1 || !out.contains("failed at a@a@a") {
        return Err(format!("corrupted braiding exited {code} with {out:?}"));
    }
    let (code, _) = cofree(&["--config", "-", "star", "v1", "v1 + +"], &preset)?;
    if code != 2 {
        return Err(format!("malformed expression exited {code}"));
    }
    Ok("golden star rendering; exit codes 0, 1, 2".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Clifford relations, n = 3, cotensor and smash paths", criterion_1),
        ("quantum-group relations, A2", criterion_2),
        ("cross-path equality to_smash(x∗y) = to_smash(x)·to_smash(y)", criterion_3),
        ("Yang-Baxter suite with negative control", criterion_4),
        ("braid lifts independent of the reduced word, S4", criterion_5),
        ("quasi-shuffle associativity and bialgebra compatibility", criterion_6),
        ("coinvariant isomorphisms φψ = id, ψφ = id", criterion_7),
        ("Rota-Baxter suite on the unital Clifford data", criterion_8),
        ("Radford projection and bosonization round trip", criterion_9),
        ("CLI golden output and exit codes", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {:>2} {title} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {:>2} {title} ({secs:.2}s)", i + 1);
                for line in detail.lines() {
                    println!("       {line}");
                }
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
