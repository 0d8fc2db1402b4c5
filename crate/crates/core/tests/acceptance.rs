//! Acceptance suite. Runs as a plain binary and prints one line per criterion.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use nichols_rank2::admissibility::{fin1_expression, lambda_closed, reconstruct_tree, Scalars, Side};
use nichols_rank2::braidedalg::symmetrizer::words_of_degree;
use nichols_rank2::braidedalg::{is_zero_in_nichols, Braiding, Multidegree, NCPoly};
use nichols_rank2::classify::{fixtures, match_condition, p_table_mismatches, sample_root, Fixture};
use nichols_rank2::cyclotomic::{root_of_unity, CycNum};
use nichols_rank2::fbtree::{appendix, order_lemma_violations, random_tree, ExtNode};
use nichols_rank2::lyndon::{gamma, is_lyndon, is_lyndon_definitional, lex_cmp, shirshow, Letter, Word};
use nichols_rank2::nicholscore::{
    check_relations_vanish, count_by_degree, dimension, hilbert_prefix, mixed_relation, pbw_monomials, top_degree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn random_braiding<R: Rng>(rng: &mut R) -> Braiding {
    Braiding::new(sample_root(rng), sample_root(rng), sample_root(rng), sample_root(rng)).unwrap()
}

fn order_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut trees: Vec<_> = (1..=22).map(appendix).collect();
    trees.extend((0..1000).map(|i| random_tree(&mut rng, i % 17)));
    let mut bad = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        assert!(t.len() <= 33);
        for v in order_lemma_violations(t) {
            bad.push(format!("tree {i} ({}): {v}", t.serialize()));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} trees", trees.len()))
    } else {
        Err(format!("{} violations, first: {}", bad.len(), bad[0]))
    }
}

fn all_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0u32..(1 << len) {
            out.push(Word::from_letters(
                (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 0 { Letter::Alpha } else { Letter::Beta }),
            ));
        }
    }
    out
}

fn lyndon_suite() -> Outcome {
    let words = all_words(14);
    let mut lyndon = 0;
    for u in &words {
        let suffix = is_lyndon(u).unwrap();
        if suffix != is_lyndon_definitional(u).unwrap() {
            return Err(format!("Lyndon tests disagree on {u}"));
        }
        if !suffix || u.len() < 2 {
            continue;
        }
        lyndon += 1;
        let brute = (1..u.len())
            .filter(|&i| {
                is_lyndon_definitional(&u.slice(0, i)).unwrap()
                    && is_lyndon_definitional(&u.slice(i, u.len())).unwrap()
            })
            .min()
            .expect("a split exists");
        let (v, _) = shirshow(u).unwrap();
        if v.len() != brute {
            return Err(format!("Shirshow split of {u} at {} but minimal is {brute}", v.len()));
        }
    }
    for n in 1..=22 {
        let t = appendix(n);
        let g = gamma(&t);
        let ext: Vec<ExtNode> = g.keys().copied().collect();
        for &a in &ext {
            if g[&a].len() as u64 != t.weight(a) {
                return Err(format!("tree {n}: length of gamma({a:?}) differs from its weight"));
            }
            for &b in &ext {
                if (t.cmp_q(a, b) == Ordering::Less) != (lex_cmp(&g[&a], &g[&b]) == Ordering::Less) {
                    return Err(format!("tree {n}: gamma does not preserve the order of {a:?} and {b:?}"));
                }
            }
        }
    }
    Ok(format!("{} words, {lyndon} Lyndon words of length >= 2, 22 trees", words.len()))
}

fn lambda_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut closed, mut fin1) = (0, 0);
    for n in 1..=22 {
        let t = appendix(n);
        for _ in 0..3 {
            let b = random_braiding(&mut rng);
            let s = Scalars::new(&t, &b);
            for a in t.nodes() {
                for (side, applies) in
                    [(Side::Right, t.rgf(a) == ExtNode::Rgh), (Side::Left, t.lgf(a) == ExtNode::Lgh)]
                {
                    if !applies {
                        continue;
                    }
                    closed += 1;
                    let c = lambda_closed(&t, &b, a, side).map_err(|e| e.to_string())?;
                    if &c != s.lambda(a) {
                        return Err(format!("tree {n} node #{a} {side:?}: closed {c}, recursive {}", s.lambda(a)));
                    }
                }
                if t.is_leaf(a) {
                    continue;
                }
                let (bl, cl, expr) = fin1_expression(&s, a).expect("branching node");
                fin1 += 1;
                if (s.lambda(bl) == s.lambda(cl)) != expr.is_zero() {
                    return Err(format!("tree {n} node #{a}: boundary equivalence fails under {b:?}"));
                }
            }
        }
    }
    Ok(format!("{closed} closed-form nodes, {fin1} boundary equivalences"))
}

fn golden_tables() -> Outcome {
    let fx = fixtures();
    for f in &fx {
        let m = p_table_mismatches(f.type_id, f.case_id, &f.braiding).map_err(|e| e.to_string())?;
        if !m.is_empty() {
            return Err(format!("{}: {}", f.name, m.join("; ")));
        }
    }
    let types: std::collections::BTreeSet<u8> = fx.iter().map(|f| f.type_id).collect();
    if types.len() != 22 {
        return Err(format!("only {} types have fixtures", types.len()));
    }
    Ok(format!("{} fixtures over 22 types", fx.len()))
}

fn reconstruction() -> Outcome {
    let fx = fixtures();
    let bad: Vec<String> = fx
        .par_iter()
        .filter_map(|f| match reconstruct_tree(&f.braiding, 16) {
            Ok(r) if r.tree == appendix(f.type_id as usize) => None,
            Ok(r) => Some(format!("{} grew {}", f.name, r.tree.serialize())),
            Err(e) => Some(format!("{}: {e}", f.name)),
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} fixtures", fx.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn capped_degree(f: &Fixture) -> u32 {
    top_degree(&appendix(f.type_id as usize), &f.braiding).map_or(8, |top| top.min(8))
}

fn hilbert_agreement() -> Outcome {
    let fx = fixtures();
    let bad: Vec<String> = fx
        .par_iter()
        .filter_map(|f| {
            let d = capped_degree(f);
            let t = appendix(f.type_id as usize);
            let oracle = hilbert_prefix(&f.braiding, d);
            match pbw_monomials(&t, &f.braiding, d) {
                Ok(m) if count_by_degree(&m, d) == oracle => None,
                Ok(m) => Some(format!("{}: {:?} vs {:?}", f.name, oracle.dims, count_by_degree(&m, d).dims)),
                Err(e) => Some(format!("{}: {e}", f.name)),
            }
        })
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    for (name, scalars, type_id, total) in
        [("exterior", ["1/2", "0/1", "0/1", "1/2"], 1, 4), ("A2", ["1/3", "2/3", "0/1", "1/3"], 2, 27)]
    {
        let b = Braiding::from_strings(scalars[0], scalars[1], scalars[2], scalars[3]).unwrap();
        if !match_condition(&b).iter().any(|&(t, _)| t == type_id) {
            return Err(format!("{name} does not match type {type_id}"));
        }
        let t = appendix(type_id as usize);
        let top = top_degree(&t, &b).unwrap();
        let h = hilbert_prefix(&b, top + 1);
        let dim = dimension(&t, &b).unwrap();
        if h.dims[top as usize + 1] != 0 || h.total() != total || dim != total {
            return Err(format!("{name}: dims {:?}, dimension {dim}, expected total {total}", h.dims));
        }
    }
    Ok(format!("{} fixtures, exterior total 4, A2 total 27", fx.len()))
}

fn relation_vanishing() -> Outcome {
    let fx = fixtures();
    let bad: Vec<String> = fx
        .par_iter()
        .filter_map(|f| {
            let t = appendix(f.type_id as usize);
            match check_relations_vanish(&t, &f.braiding, capped_degree(f)) {
                Ok(true) => None,
                Ok(false) => Some(format!("{}: a relation survives", f.name)),
                Err(e) => Some(format!("{}: {e}", f.name)),
            }
        })
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let f = fx.iter().find(|f| f.name == "T4.1").expect("T4.1 fixture");
    let t = appendix(4);
    let off = mixed_relation(&t, &f.braiding, t.rch(0).unwrap(), &CycNum::from_int(2)).unwrap();
    for method in ["symmetrizer", "derivations"] {
        if is_zero_in_nichols(&f.braiding, &off, method).unwrap() {
            return Err(format!("perturbed relation vanishes under {method}"));
        }
    }
    Ok(format!("{} fixtures under both methods, perturbed control survives", fx.len()))
}

fn random_element<R: Rng>(rng: &mut R, b: &Braiding) -> NCPoly {
    let m = rng.gen_range(1..=7);
    let d1 = rng.gen_range(0..=m);
    let d = Multidegree::new(d1, m - d1);
    let words = words_of_degree(d);
    let coeff = |rng: &mut R| &CycNum::from_int(rng.gen_range(-2..=2)) * &sample_root(rng);
    if rng.gen_bool(0.5) {
        let mut p = NCPoly::zero();
        for _ in 0..rng.gen_range(1..=5) {
            p.add_term(words[rng.gen_range(0..words.len())].clone(), &coeff(rng));
        }
        return p;
    }
    // combinations of multiples of x_i^N with N the order of q_ii
    let mut p = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = &words[rng.gen_range(0..words.len())];
        let Some(pos) = (0..w.len()).find(|&s| {
            let i = w[s];
            let n = b.q(i, i).order().filter(|&n| n > 1).unwrap_or(u32::MAX) as usize;
            s + n <= w.len() && w[s..s + n].iter().all(|&x| x == i)
        }) else {
            continue;
        };
        let i = w[pos];
        let n = b.q(i, i).order().unwrap() as usize;
        let left = NCPoly::monomial(w[..pos].to_vec(), CycNum::one());
        let right = NCPoly::monomial(w[pos + n..].to_vec(), CycNum::one());
        let power = NCPoly::monomial(vec![i; n], coeff(rng));
        p = &p + &(&(&left * &power) * &right);
    }
    p
}

fn method_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases: Vec<(Braiding, NCPoly)> = (0..600)
        .map(|_| {
            let b = random_braiding(&mut rng);
            let rho = random_element(&mut rng, &b);
            (b, rho)
        })
        .collect();
    let results: Vec<Result<bool, String>> = cases
        .par_iter()
        .map(|(b, rho)| {
            let s = is_zero_in_nichols(b, rho, "symmetrizer").map_err(|e| e.to_string())?;
            let d = is_zero_in_nichols(b, rho, "derivations").map_err(|e| e.to_string())?;
            if s == d {
                Ok(s)
            } else {
                Err(format!("methods disagree on {rho} under {b:?}"))
            }
        })
        .collect();
    let mut zeros = 0;
    for r in results {
        zeros += r? as usize;
    }
    Ok(format!("{} elements, {zeros} vanish", cases.len()))
}

fn rescaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fx = fixtures();
    let trials: Vec<(Braiding, CycNum)> = (0..20)
        .map(|i| {
            let b = if i % 2 == 0 { fx[rng.gen_range(0..fx.len())].braiding.clone() } else { random_braiding(&mut rng) };
            let n = [2, 3, 4, 5, 6, 12][rng.gen_range(0..6)];
            (b, root_of_unity(rng.gen_range(1..n as i64), n))
        })
        .collect();
    trials.par_iter().try_for_each(|(b, c)| {
        let r = b.rescaled(c).map_err(|e| e.to_string())?;
        if match_condition(b) != match_condition(&r) {
            return Err(format!("match_condition changes under {c} for {b:?}"));
        }
        if hilbert_prefix(b, 6) != hilbert_prefix(&r, 6) {
            return Err(format!("Hilbert prefix changes under {c} for {b:?}"));
        }
        Ok(())
    })?;
    Ok("20 trials".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("order lemma", order_lemma),
        ("Lyndon words", lyndon_suite),
        ("lambda closed forms", lambda_consistency),
        ("golden tables", golden_tables),
        ("tree reconstruction", reconstruction),
        ("Hilbert vs PBW", hilbert_agreement),
        ("relation vanishing", relation_vanishing),
        ("zero test agreement", method_agreement),
        ("rescaling invariance", rescaling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{detail}] {secs:.1}s", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{detail}] {secs:.1}s", i + 1);
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
