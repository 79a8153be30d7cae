//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, ExitCode};

use higherar::complete::{build_m, e_chain, structural_suite, MCatalogue, DEFAULT_SLICE_CAP};
use higherar::exactla::PrimeField;
use higherar::homolog::global_dimension;
use higherar::knit::{classify_modules, enumerate_indecomposables, tag_counts, Tag, DEFAULT_KNIT_CAP};
use higherar::quivalg::named::{a2, a3_bipartite, a3_linear, d4_subspace};
use higherar::quivalg::{tensor_algebra, Alg};
use higherar::repmod::{grid, random_presented};
use higherar::seqcat::{complex_isomorphism, d_almost_split};
use higherar::tensorops::{ass_via_cone, kunneth_ext_check};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
struct Setting {
    prime: u32,
    seed: u64,
}

const BASE: Setting = Setting { prime: 32003, seed: 1 };
const ALT: Setting = Setting { prime: 10007, seed: 987 };

type Outcome = Result<String, String>;

fn alg_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "algebras", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Report {
    code: i32,
    keys: BTreeMap<String, String>,
}

impl Report {
    fn get(&self, k: &str) -> Result<&str, String> {
        self.keys.get(k).map(String::as_str).ok_or_else(|| format!("report has no `{k}`"))
    }

    fn members(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .keys
            .iter()
            .filter(|(k, _)| k.starts_with("member."))
            .map(|(_, v)| v.split_whitespace().next().unwrap_or("").to_string())
            .collect();
        v.sort();
        v
    }

    fn words(&self, k: &str) -> Result<Vec<String>, String> {
        let mut v: Vec<String> = self.get(k)?.split_whitespace().map(String::from).collect();
        v.sort();
        Ok(v)
    }
}

fn cli(s: Setting, args: &[&str]) -> Result<Report, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_higherar"))
        .args(args)
        .args(["--prime", &s.prime.to_string(), "--seed", &s.seed.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let keys = text
        .lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    Ok(Report { code: out.status.code().unwrap_or(-1), keys })
}

fn expect(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn sorted(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn a2_squared(s: Setting) -> (Alg<PrimeField>, Alg<PrimeField>) {
    let a = a2(&PrimeField::new(s.prime));
    let t = tensor_algebra(&a, &a).unwrap();
    (a, t)
}

fn catalogue(alg: &Alg<PrimeField>, d: usize, s: Setting) -> Result<MCatalogue<PrimeField>, String> {
    build_m(alg, d, DEFAULT_SLICE_CAP, s.seed).map_err(|e| e.to_string())
}

fn c1(s: Setting) -> Outcome {
    let a = alg_path("a2.alg");
    let r = cli(s, &["tensor-check", &a, &a, "--n", "1", "--m", "1"])?;
    expect(r.code == 0, || format!("exit code {}", r.code))?;
    expect(r.get("2-complete")? == "true", || "not 2-complete".into())?;
    expect(r.get("acyclic")? == "true", || "not acyclic".into())?;
    expect(r.get("2-representation-finite")? == "false", || "reported 2-representation-finite".into())?;
    let t = r.words("T")?;
    expect(t == sorted(&["0010", "1111", "0101", "1100"]), || format!("T = {t:?}"))?;
    let m = r.members();
    expect(m == sorted(&["0010", "1111", "0101", "1100", "0100"]), || format!("ind M = {m:?}"))?;
    Ok(format!("T {t:?} M {m:?}"))
}

fn c2(s: Setting) -> Outcome {
    let (a, t) = a2_squared(s);
    let ca = catalogue(&a, 1, s)?;
    let cat = catalogue(&t, 2, s)?;
    let mp = cat.m_p();
    expect(mp.len() == 1, || format!("{} sequences instead of one", mp.len()))?;
    let direct = d_almost_split(&cat.ctx, mp[0], 2).map_err(|e| e.to_string())?;
    let terms: Vec<Vec<String>> = (0..=3)
        .map(|k| {
            let mut g: Vec<String> = direct.decomposition(k).map_or(vec![], |d| d.parts.iter().map(|p| grid(&p.rep)).collect());
            g.sort();
            g
        })
        .collect();
    let want = vec![vec!["0100"], vec!["0101", "1100"], vec!["1111"], vec!["0010"]];
    expect(terms == want, || format!("direct sequence terms {terms:?}"))?;
    let y = ca.m_p()[0];
    let via = ass_via_cone(&ca, y, &ca, y, &cat).map_err(|e| e.to_string())?;
    let iso = complex_isomorphism(&direct, &via.cone.trimmed(), s.seed).map_err(|e| e.to_string())?;
    expect(via.isomorphic && iso.is_some(), || "cone is not isomorphic to the direct sequence".into())?;
    Ok(format!("{terms:?}"))
}

fn c3(s: Setting) -> Outcome {
    let (_, t) = a2_squared(s);
    let cat = catalogue(&t, 2, s)?;
    let q = enumerate_indecomposables(&t, DEFAULT_KNIT_CAP, s.seed).map_err(|e| e.to_string())?;
    let c = classify_modules(&q, &cat).map_err(|e| e.to_string())?;
    let [t_, m_, p_, o_] = tag_counts(&c);
    let summary = format!("⊗ {t_}, ⊙ {m_}, ■ {p_}, · {o_} of {}", q.modules.len());
    let perp: Vec<&str> = c.iter().filter(|m| m.tag == Tag::InPerpNotM).map(|m| q.labels[m.index].as_str()).collect();
    expect(p_ == 2, || format!("{summary}; T^⊥ minus M = {perp:?}"))?;
    expect(c.iter().filter(|m| m.tag == Tag::InPerpNotM).all(|m| m.ext_to_m && m.ext_from_m), || {
        "a module of T^⊥ minus M lacks Ext against M on one side".into()
    })?;
    expect([t_, m_, o_] == [4, 1, 4], || summary.clone())?;
    Ok(summary)
}

fn c4(s: Setting) -> Outcome {
    let r = cli(s, &["tensor-check", &alg_path("d4_subspace.alg"), &alg_path("a3_linear.alg"), "--n", "1", "--m", "1"])?;
    expect(r.code == 0, || format!("exit code {}", r.code))?;
    expect(r.get("2-complete")? == "true", || "not 2-complete".into())?;
    expect(r.get("2-representation-finite")? == "false", || "reported 2-representation-finite".into())?;
    expect(r.get("members")? == "24", || format!("{} members", r.get("members").unwrap_or("?")))?;
    let t = r.words("T")?.len();
    expect(t == 12, || format!("{t} T-summands"))?;
    expect(r.get("slices")? == "12 8 4", || format!("slices {}", r.get("slices").unwrap_or("?")))?;
    let la = r.words("factor.A.orbit_lengths")?;
    expect(la.iter().all(|l| l == "3"), || format!("A' orbit lengths {la:?}"))?;
    let mut lb = r.words("factor.B.orbit_lengths")?;
    lb.dedup();
    expect(lb == ["1", "2", "3"], || format!("B' orbit lengths {lb:?}"))?;
    Ok(format!("24 members, 12 T, slices 12 8 4, A' {la:?}, B' {lb:?}"))
}

fn c5(s: Setting) -> Outcome {
    let b = alg_path("a3_bipartite.alg");
    let r = cli(s, &["tensor-check", &b, &b, "--n", "1", "--m", "1"])?;
    expect(r.code == 0, || format!("exit code {}", r.code))?;
    expect(r.get("2-representation-finite")? == "true", || "not 2-representation-finite".into())?;
    expect(r.get("homogeneous")? == "2", || format!("homogeneous = {}", r.get("homogeneous").unwrap_or("?")))?;
    let la = r.words("factor.A.orbit_lengths")?;
    expect(la.iter().all(|l| l == "2"), || format!("factor orbit lengths {la:?}"))?;
    let direct = cli(s, &["check", &alg_path("a3_bipartite_squared.alg"), "--d", "2"])?;
    expect(direct.get("2-representation-finite")? == "true" && direct.get("homogeneous")? == "2", || {
        "check on the tensor file disagrees".into()
    })?;
    Ok("l = 2".into())
}

fn c6(s: Setting) -> Outcome {
    let f = PrimeField::new(s.prime);
    let algs = [a2(&f), a3_linear(&f), a3_bipartite(&f), d4_subspace(&f)];
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut pairs = 0;
    for a in &algs {
        for b in &algs {
            let t = tensor_algebra(a, b).map_err(|e| e.to_string())?;
            let upto = global_dimension(&t).map_err(|e| e.to_string())? + 1;
            for _ in 0..4 {
                let mut m = Vec::new();
                for alg in [a, a, b, b] {
                    m.push(random_presented(alg, 3, &mut rng).map_err(|e| e.to_string())?);
                }
                let r = kunneth_ext_check(&m[0], &m[1], &m[2], &m[3], upto, &t).map_err(|e| e.to_string())?;
                expect(r.holds(), || format!("convolution fails: {:?}", r.degrees))?;
                pairs += 1;
            }
        }
    }
    expect(pairs >= 50, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs"))
}

fn catalogues(s: Setting) -> Result<Vec<(String, MCatalogue<PrimeField>)>, String> {
    let f = PrimeField::new(s.prime);
    let (a, b, c, d4) = (a2(&f), a3_linear(&f), a3_bipartite(&f), d4_subspace(&f));
    let mut out = Vec::new();
    for (name, x) in [("A2", &a), ("A3", &b), ("A3 bipartite", &c), ("D4", &d4)] {
        out.push((name.to_string(), catalogue(x, 1, s)?));
    }
    for (name, x, y) in [("A2 ⊗ A2", &a, &a), ("D4 ⊗ A3", &d4, &b), ("A3 bipartite squared", &c, &c)] {
        out.push((name.to_string(), catalogue(&tensor_algebra(x, y).map_err(|e| e.to_string())?, 2, s)?));
    }
    Ok(out)
}

fn c7(s: Setting) -> Outcome {
    let mut done = Vec::new();
    for (name, cat) in catalogues(s)? {
        let r = structural_suite(&cat).map_err(|e| e.to_string())?;
        for (check, c) in r.checks() {
            expect(c.ok, || format!("{name}: {check}: {}", c.witness.clone().unwrap_or_default()))?;
        }
        done.push(format!("{name} ({} sequences)", r.sequence_count));
    }
    Ok(done.join(", "))
}

fn c8(s: Setting) -> Outcome {
    let mut done = Vec::new();
    for (name, cat) in catalogues(s)?.into_iter().filter(|(n, _)| n == "A2 ⊗ A2" || n == "D4 ⊗ A3") {
        let e = e_chain(&cat).map_err(|e| e.to_string())?;
        expect(e.rigid.len() == e.steps.len() && e.rigid.iter().all(|c| c.ok), || format!("{name}: rigidity fails along the chain"))?;
        expect(e.reached_t && e.tilting, || format!("{name}: chain does not end at a tilting T"))?;
        done.push(format!("{name}: {} steps", e.steps.len()));
    }
    Ok(done.join(", "))
}

type Criterion = fn(Setting) -> Outcome;

const CRITERIA: [(&str, Criterion); 8] = [
    ("tensor-check on A2 ⊗ A2", c1),
    ("the 2-almost split sequence of A2 ⊗ A2, direct and via cone", c2),
    ("classification of ind(A2 ⊗ A2) against T and M", c3),
    ("D4-subspace ⊗ A3-linear", c4),
    ("bipartite A3 squared is 2-representation-finite with l = 2", c5),
    ("Künneth formula for Ext on random pairs", c6),
    ("structural suite on every catalogue", c7),
    ("E-chain from DΛ ends at a tilting T", c8),
];

fn main() -> ExitCode {
    let mut failed = 0;
    let mut base = Vec::new();
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        let r = f(BASE);
        match &r {
            Ok(info) => println!("PASS {}: {name} [{info}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
        base.push(r);
    }
    let mut diffs = Vec::new();
    for (i, (_, f)) in CRITERIA.iter().enumerate() {
        // Künneth samples depend on the seed; only the pair count must agree.
        let alt = f(ALT);
        if alt != base[i] {
            diffs.push(format!("criterion {}: {:?} vs {:?}", i + 1, base[i], alt));
        }
    }
    let name = "seed 987 and GF(10007) reproduce every result";
    if diffs.is_empty() {
        println!("PASS 9: {name}");
    } else {
        failed += 1;
        println!("FAIL 9: {name}: {}", diffs.join("; "));
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
