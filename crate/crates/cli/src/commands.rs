use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use pregroup::axioms::{check_all, check_axiom, replay_witness};
use pregroup::cayley::genset::parse_genset;
use pregroup::cayley::{
    check_lemma_bounds, delta_4pt, delta_thin, estimate_h_constants, Ball, BallOptions, GenSet, LemmaOptions,
    ScanOptions, VertexId,
};
use pregroup::construct::random_pregroup;
use pregroup::length::{chiswell_length, tree_length_checked};
use pregroup::word::{self, is_reduced};
use pregroup::{
    parse_pregroup, serialize_pregroup, A2Bounds, AxiomTag, Elem, OrderTree, Pregroup, RandomMode, Reduced, Strategy,
    UniversalGroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::examples::example;
use crate::out::{half, Out};
use crate::{BallArgs, Cli, Command, WordArgs};

/// Runs one command; `Ok(false)` means a checked property failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let start = Instant::now();
    let (name, ok) = match &cli.command {
        Command::Check { file, axioms, a2_m, a2_alpha } => ("check", check(cli, file, axioms.as_deref(), *a2_m, *a2_alpha)?),
        Command::Bp { file } => ("bp", bp(cli, file)?),
        Command::Tree { file } => ("tree", tree(cli, file)?),
        Command::Reduce { w, strategy } => ("reduce", reduce(cli, w, strategy)?),
        Command::Mul { w } => ("mul", mul(cli, w)?),
        Command::Eq { w } => ("eq", eq(cli, w)?),
        Command::Canon { w } => ("canon", canon(cli, w)?),
        Command::Len { w } => ("len", len(cli, w)?),
        Command::Treelen { w } => ("treelen", treelen(cli, w)?),
        Command::Enum { file, max_len } => ("enum", enumerate(cli, file, *max_len)?),
        Command::Ball { b, output } => ("ball", ball(cli, b, output.as_deref())?),
        Command::Delta { b } => ("delta", delta(cli, b)?),
        Command::Hconsts { b } => ("hconsts", hconsts(cli, b)?),
        Command::Lemmas { b, max_len, triangle_len, samples, claims } => {
            ("lemmas", lemmas(cli, b, *max_len, *triangle_len, *samples, claims)?)
        }
        Command::Gen { kind, output } => ("gen", gen(cli, kind, output.as_deref())?),
        Command::Fuzz { count, size, mode } => ("fuzz", fuzz(cli, *count, *size, mode)?),
    };
    eprintln!("[pg {name}] {:.3}s", start.elapsed().as_secs_f64());
    Ok(ok)
}

fn out(cli: &Cli, cmd: &'static str) -> Out {
    Out { json: cli.json, cmd }
}

fn load(path: &Path) -> Result<Pregroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_pregroup(&text).with_context(|| format!("parsing {}", path.display()))
}

fn words(p: &Pregroup, w: &WordArgs) -> Result<Vec<Vec<Elem>>> {
    w.words.iter().map(|t| p.parse_word(t).with_context(|| format!("word `{t}`"))).collect()
}

fn one_word(p: &Pregroup, w: &WordArgs) -> Result<Vec<Elem>> {
    ensure!(w.words.len() == 1, "expected exactly one -w word, got {}", w.words.len());
    Ok(words(p, w)?.remove(0))
}

/// A precondition of the command is a checked property that fails; exits 1.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Unmet(pub String);

fn require_p6(ug: &UniversalGroup) -> Result<()> {
    if ug.p6() {
        return Ok(());
    }
    let p = ug.pregroup();
    let v = check_axiom(p, AxiomTag::P6, None)?;
    let w = v.witness.map_or(String::new(), |w| format!(" (witness: {})", p.format_word(&w)));
    Err(Unmet(format!("`{}` does not satisfy P6{w}; U(P) arithmetic needs it", p.name())).into())
}

/// Reduces a word, insisting on P6 so that reduced forms are meaningful.
fn reduced(ug: &UniversalGroup, w: &[Elem]) -> Result<Reduced> {
    require_p6(ug)?;
    Ok(ug.reduce(w))
}

fn check(cli: &Cli, file: &Path, axioms: Option<&[String]>, m: usize, alpha_max: u32) -> Result<bool> {
    let p = load(file)?;
    let tags: Vec<AxiomTag> = match axioms {
        None => vec![AxiomTag::P1, AxiomTag::P2, AxiomTag::P3, AxiomTag::P4, AxiomTag::P5, AxiomTag::P6, AxiomTag::P6Prime],
        Some([one]) if one.eq_ignore_ascii_case("all") => AxiomTag::ALL.to_vec(),
        Some([one]) if one.eq_ignore_ascii_case("pregroup") => AxiomTag::PREGROUP.to_vec(),
        Some(list) => list.iter().map(|s| s.parse::<AxiomTag>()).collect::<Result<_, _>>()?,
    };
    let verdicts = check_all(&p, &tags, Some(A2Bounds { m, alpha_max }))?;
    let o = out(cli, "check");
    for v in &verdicts {
        let rec = v.record(&p);
        o.record(&rec, || match &rec.witness {
            None => format!("{} holds", rec.axiom),
            Some(w) => {
                let note = if rec.note.is_empty() { String::new() } else { format!(" ({})", rec.note) };
                format!("{} FAILS witness: {}{note}", rec.axiom, w.join(" "))
            }
        });
    }
    Ok(verdicts.iter().all(|v| v.holds))
}

fn bp(cli: &Cli, file: &Path) -> Result<bool> {
    let p = load(file)?;
    let names = p.names_of(&p.bp().into_iter().collect::<Vec<_>>());
    out(cli, "bp").record(json!({ "bp": names }), || names.join(" "));
    Ok(true)
}

fn tree(cli: &Cli, file: &Path) -> Result<bool> {
    let p = load(file)?;
    let t = OrderTree::new(&p);
    let o = out(cli, "tree");
    for (i, class) in t.classes().iter().enumerate() {
        let members = p.names_of(class);
        let height = t.height(i);
        o.record(json!({ "class": i, "members": members, "height": height }), || {
            let h = height.map_or("∞".to_string(), |h| h.to_string());
            format!("class {i} height {h}: {}", members.join(" "))
        });
    }
    for &(a, b) in t.edges() {
        o.record(json!({ "edge": [a, b] }), || format!("edge {a} {b}"));
    }
    let metric = t.metric();
    let is_tree = metric.is_ok();
    let err = metric.err().map(|e| e.to_string());
    o.record(json!({ "tree": is_tree, "error": err }), || match &err {
        None => "tree: yes".to_string(),
        Some(e) => format!("tree: no ({e})"),
    });
    Ok(is_tree)
}

fn reduce(cli: &Cli, w: &WordArgs, strategy: &str) -> Result<bool> {
    let p = load(&w.file)?;
    let input = one_word(&p, w)?;
    let s = match strategy {
        "rightmost" => Strategy::Rightmost,
        "random" => Strategy::Random(cli.seed),
        _ => Strategy::Leftmost,
    };
    let r = word::reduce(&p, &input, s);
    let text = p.format_word(r.factors());
    out(cli, "reduce").record(json!({ "input": p.format_word(&input), "reduced": text, "length": r.len() }), || text.clone());
    Ok(true)
}

fn mul(cli: &Cli, w: &WordArgs) -> Result<bool> {
    let p = load(&w.file)?;
    let ug = UniversalGroup::new(&p);
    let product: Vec<Elem> = words(&p, w)?.concat();
    let r = reduced(&ug, &product)?;
    let text = p.format_word(r.factors());
    out(cli, "mul").record(json!({ "product": text, "length": r.len() }), || text.clone());
    Ok(true)
}

fn eq(cli: &Cli, w: &WordArgs) -> Result<bool> {
    let p = load(&w.file)?;
    let ug = UniversalGroup::new(&p);
    let ws = words(&p, w)?;
    ensure!(ws.len() == 2, "eq needs exactly two -w words, got {}", ws.len());
    require_p6(&ug)?;
    let equal = ug.equal_in_group(&ws[0], &ws[1]);
    out(cli, "eq").record(json!({ "equal": equal }), || equal.to_string());
    Ok(true)
}

fn canon(cli: &Cli, w: &WordArgs) -> Result<bool> {
    let p = load(&w.file)?;
    let ug = UniversalGroup::new(&p);
    let r = reduced(&ug, &one_word(&p, w)?)?;
    let c = ug.canonical(&r);
    let text = p.format_word(c.factors());
    out(cli, "canon").record(json!({ "canonical": text, "length": c.len() }), || text.clone());
    Ok(true)
}

fn len(cli: &Cli, w: &WordArgs) -> Result<bool> {
    let p = load(&w.file)?;
    let ug = UniversalGroup::new(&p);
    let r = reduced(&ug, &one_word(&p, w)?)?;
    let l = chiswell_length(&ug, &r);
    out(cli, "len").record(json!({ "reduced": p.format_word(r.factors()), "length": l }), || l.to_string());
    Ok(true)
}

fn treelen(cli: &Cli, w: &WordArgs) -> Result<bool> {
    let p = load(&w.file)?;
    let input = one_word(&p, w)?;
    let r = word::reduce(&p, &input, Strategy::Leftmost);
    let o = out(cli, "treelen");
    match tree_length_checked(&p, &r) {
        Ok(l) => {
            o.record(json!({ "reduced": p.format_word(r.factors()), "tree_length": l }), || l.to_string());
            Ok(true)
        }
        Err(e) => {
            let msg = e.to_string();
            o.record(json!({ "tree_length": null, "error": msg }), || format!("not a tree: {msg}"));
            Ok(false)
        }
    }
}

fn enumerate(cli: &Cli, file: &Path, max_len: usize) -> Result<bool> {
    let p = load(file)?;
    let ug = UniversalGroup::new(&p);
    require_p6(&ug)?;
    let o = out(cli, "enum");
    for e in ug.enumerate_elements(max_len) {
        let len = if e.is_identity(&p) { 0 } else { e.len() };
        let text = p.format_word(e.factors());
        o.record(json!({ "element": text, "length": len }), || text.clone());
    }
    Ok(true)
}

fn gen_set(ug: &UniversalGroup, b: &BallArgs) -> Result<GenSet> {
    Ok(match (&b.gens_elements, &b.gens) {
        (Some(names), _) => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            GenSet::from_elements(ug, &names)?
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_genset(ug, &text).with_context(|| format!("parsing {}", path.display()))?
        }
        (None, None) => GenSet::default_for(ug)?,
    })
}

fn load_ball(ug: &UniversalGroup, b: &BallArgs) -> Result<Ball> {
    let opts = BallOptions { vertex_limit: b.vertex_limit, ..BallOptions::default() };
    match (&b.ball, b.radius) {
        (Some(path), _) => {
            ensure!(b.gens.is_none() && b.gens_elements.is_none(), "generators come from the ball cache; drop -S/--gens");
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(Ball::from_text(ug, &text, opts).with_context(|| format!("loading ball {}", path.display()))?)
        }
        (None, Some(r)) => {
            let s = gen_set(ug, b)?;
            let t = Instant::now();
            let ball = Ball::build(ug, &s, r, opts)?;
            eprintln!("[pg] ball R={r}: {} vertices in {:.3}s", ball.len(), t.elapsed().as_secs_f64());
            Ok(ball)
        }
        (None, None) => bail!("give a radius with -R or a cache with --ball"),
    }
}

/// Loads the pregroup and checks the preconditions of every ball command.
fn geometry_input(b: &BallArgs) -> Result<Pregroup> {
    let p = load(&b.file)?;
    require_p6(&UniversalGroup::new(&p))?;
    Ok(p)
}

fn vertex_words(p: &Pregroup, ball: &Ball, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| p.format_word(ball.word(v).factors())).collect()
}

fn ball(cli: &Cli, b: &BallArgs, output: Option<&Path>) -> Result<bool> {
    let p = geometry_input(b)?;
    let ug = UniversalGroup::new(&p);
    let ball = load_ball(&ug, b)?;
    if let Some(path) = output {
        fs::write(path, ball.to_text(&ug)).with_context(|| format!("writing {}", path.display()))?;
    }
    let sphere: Vec<usize> = (0..=ball.radius())
        .map(|r| ball.vertices().filter(|&v| ball.dist0(v) == r).count())
        .collect();
    out(cli, "ball").record(
        json!({
            "pregroup": p.name(),
            "radius": ball.radius(),
            "gens": ball.gen_names(),
            "vertices": ball.len(),
            "edges": ball.edges().len(),
            "spheres": sphere,
        }),
        || {
            format!(
                "ball {} R={} gens={} vertices={} edges={} spheres={:?}",
                p.name(),
                ball.radius(),
                ball.gen_names().join(","),
                ball.len(),
                ball.edges().len(),
                sphere
            )
        },
    );
    Ok(true)
}

fn scan_opts(cli: &Cli) -> ScanOptions {
    ScanOptions { budget: cli.budget.unwrap_or(ScanOptions::default().budget), seed: cli.seed }
}

fn delta(cli: &Cli, b: &BallArgs) -> Result<bool> {
    let p = geometry_input(b)?;
    let ug = UniversalGroup::new(&p);
    let ball = load_ball(&ug, b)?;
    let four = delta_4pt(&ball, scan_opts(cli))?;
    let thin = delta_thin(&ball, scan_opts(cli))?;
    let four_w = four.witness.map(|w| vertex_words(&p, &ball, &w));
    let thin_w = thin.witness.as_ref().map(|w| {
        json!({ "triangle": vertex_words(&p, &ball, &w.triangle), "side": w.side, "point": vertex_words(&p, &ball, &[w.point])[0] })
    });
    let o = out(cli, "delta");
    o.record(json!({ "kind": "4pt", "report": four, "witness_words": four_w }), || {
        let w = four_w.as_ref().map_or(String::new(), |w| format!(" witness: {}", w.join(" | ")));
        format!("delta_4pt = {} ({} quadruples, {:?}){w}", quarter(four.delta_4pt_x4), four.quadruples, four.mode)
    });
    o.record(json!({ "kind": "thin", "report": thin, "witness_words": thin_w }), || {
        format!(
            "delta_thin = {} ({} triangles, {} skipped, {:?})",
            half(thin.delta_thin_x2),
            thin.triangles,
            thin.skipped,
            thin.mode
        )
    });
    Ok(true)
}

/// A multiple of ¼ from its quadrupled value.
fn quarter(x4: i64) -> String {
    match x4.rem_euclid(4) {
        0 => (x4 / 4).to_string(),
        2 => half(x4 / 2),
        _ => format!("{}", x4 as f64 / 4.0),
    }
}

fn hconsts(cli: &Cli, b: &BallArgs) -> Result<bool> {
    let p = geometry_input(b)?;
    let ug = UniversalGroup::new(&p);
    let ball = load_ball(&ug, b)?;
    let r = estimate_h_constants(&ug, &ball)?;
    out(cli, "hconsts").record(&r, || {
        let mut lines = Vec::new();
        for (name, c) in [("C0", &r.c0), ("C1", &r.c1), ("C2", &r.c2), ("C3", &r.c3)] {
            let exact = if c.exact { "exact" } else { "lower bound" };
            lines.push(format!(
                "{name} = {} ({exact}, {} instances, {} skipped) witness: {}",
                half(c.value_x2),
                c.instances,
                c.skipped,
                c.witness.join(" ")
            ));
        }
        if !r.h3_failures.is_empty() {
            lines.push(format!("H3 fails at: {}", r.h3_failures.join(", ")));
        }
        lines.join("\n")
    });
    Ok(r.h3_failures.is_empty())
}

/// Parses `C1=0`, `C0=1.5` into (index, doubled value).
fn parse_claim(s: &str) -> Result<(usize, i64)> {
    let (name, value) = s.split_once('=').with_context(|| format!("claim `{s}` is not NAME=VALUE"))?;
    let idx = match name.trim().to_ascii_uppercase().as_str() {
        "C0" => 0,
        "C1" => 1,
        "C2" => 2,
        "C3" => 3,
        other => bail!("unknown constant `{other}` (C0–C3)"),
    };
    let v: f64 = value.trim().parse().with_context(|| format!("claim value `{value}`"))?;
    let x2 = v * 2.0;
    ensure!(x2 >= 0.0 && x2.fract() == 0.0, "claim value `{value}` must be a non-negative multiple of 1/2");
    Ok((idx, x2 as i64))
}

fn lemmas(cli: &Cli, b: &BallArgs, max_len: usize, triangle_len: usize, samples: u64, claims: &[String]) -> Result<bool> {
    let mut opts = LemmaOptions { max_len, triangle_len, samples, seed: cli.seed, ..LemmaOptions::default() };
    if let Some(budget) = cli.budget {
        opts.budget = budget;
    }
    for c in claims {
        let (i, x2) = parse_claim(c)?;
        *[&mut opts.c0_x2, &mut opts.c1_x2, &mut opts.c2_x2, &mut opts.c3_x2][i] = Some(x2);
    }
    let p = geometry_input(b)?;
    let ug = UniversalGroup::new(&p);
    let ball = load_ball(&ug, b)?;
    let r = check_lemma_bounds(&ug, &ball, opts)?;
    let o = out(cli, "lemmas");
    if cli.json {
        o.record(&r, String::new);
        return Ok(r.holds());
    }
    println!(
        "constants C0={} C1={} C2={} C3={}{}",
        half(r.c0_x2),
        half(r.c1_x2),
        half(r.c2_x2),
        half(r.c3_x2),
        if r.overridden.is_empty() { String::new() } else { format!(" (claimed: {})", r.overridden.join(",")) }
    );
    for c in r.checks() {
        let bound = c.bound.as_ref().map_or("unchecked".to_string(), |t| format!("≤ {} = {}", t.expr, half(t.value_x2)));
        let verdict = if c.holds() { "ok" } else { "VIOLATED" };
        println!(
            "{:<6} {} {bound} {verdict} ({} instances, {} skipped, {:?}) witness: {}",
            c.name,
            half(c.measured_x2),
            c.instances,
            c.skipped,
            c.mode,
            c.witness.join(" ")
        );
        for v in &c.violations {
            println!("  violation {} at {}", half(v.value_x2), v.witness.join(" "));
        }
        if c.violation_count > c.violations.len() as u64 {
            println!("  … {} violations in total", c.violation_count);
        }
    }
    println!("D = {}{}", half(r.d_x2), if r.d_attained { "" } else { " (NOT attained)" });
    for n in &r.notes {
        println!("note: {n}");
    }
    println!("{}", if r.holds() { "HOLDS" } else { "VIOLATED" });
    Ok(r.holds())
}

fn gen(cli: &Cli, kind: &str, output: Option<&Path>) -> Result<bool> {
    let p = example(kind, cli.seed)?;
    let text = serialize_pregroup(&p);
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(true)
}

#[derive(Serialize)]
struct FuzzCase {
    seed: u64,
    mode: &'static str,
    size: usize,
    elements: usize,
    pregroup: bool,
    p6: Option<bool>,
    words: usize,
    problems: Vec<String>,
}

fn fuzz_one(seed: u64, size: usize, mode: RandomMode) -> FuzzCase {
    let mode_name = if mode == RandomMode::Raw { "raw" } else { "perturbed" };
    let mut case =
        FuzzCase { seed, mode: mode_name, size, elements: 0, pregroup: false, p6: None, words: 0, problems: Vec::new() };
    let p = match random_pregroup(seed, size, mode) {
        Ok(p) => p,
        Err(e) => {
            case.problems.push(format!("construction failed: {e}"));
            return case;
        }
    };
    case.elements = p.len();
    let tags = [AxiomTag::P1, AxiomTag::P2, AxiomTag::P3, AxiomTag::P4, AxiomTag::P5, AxiomTag::P6, AxiomTag::P6Prime];
    let verdicts = match check_all(&p, &tags, None) {
        Ok(v) => v,
        Err(e) => {
            case.problems.push(e.to_string());
            return case;
        }
    };
    for v in &verdicts {
        if let Some(w) = &v.witness {
            if !matches!(replay_witness(&p, v.axiom, w, None), Ok(true)) {
                case.problems.push(format!("{} witness {} does not replay", v.axiom, p.format_word(w)));
            }
        }
    }
    // The format forces identity and inverse rows, so only tables obeying
    // P1 and P2 can round-trip.
    if verdicts[0].holds && verdicts[1].holds {
        match parse_pregroup(&serialize_pregroup(&p)) {
            Ok(q) if q == p => {}
            Ok(_) => case.problems.push("serialization roundtrip changed the table".into()),
            Err(e) => case.problems.push(format!("serialized table does not parse: {e}")),
        }
    }
    case.pregroup = verdicts[..5].iter().all(|v| v.holds);
    if !case.pregroup {
        return case;
    }
    let (p6, p6p) = (verdicts[5].holds, verdicts[6].holds);
    case.p6 = Some(p6);
    if p6 != p6p {
        case.problems.push(format!("P6 = {p6} but P6' = {p6p}"));
    }
    if !p6 {
        return case;
    }
    let ug = UniversalGroup::new(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..100 {
        let n = rng.gen_range(0..=8);
        let w: Vec<Elem> = (0..n).map(|_| Elem::new(rng.gen_range(0..p.len()))).collect();
        let forms = [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(rng.gen())].map(|s| word::reduce(&p, &w, s));
        case.words += 1;
        let bad_shape = forms.iter().any(|f| !is_reduced(&p, f.factors()) || f.len() != forms[0].len());
        let bad_class = forms[1..].iter().any(|f| ug.equivalent(&forms[0], f).is_none());
        if bad_shape || bad_class {
            case.problems.push(format!("reductions of `{}` disagree", p.format_word(&w)));
            break;
        }
    }
    case
}

fn fuzz(cli: &Cli, count: u64, size: usize, mode: &str) -> Result<bool> {
    ensure!(size >= 1, "--size must be at least 1");
    let cases: Vec<FuzzCase> = (0..count)
        .into_iter()
        .map(|i| {
            let m = match mode {
                "raw" => RandomMode::Raw,
                "perturbed" => RandomMode::Perturbed,
                _ if i % 2 == 0 => RandomMode::Raw,
                _ => RandomMode::Perturbed,
            };
            fuzz_one(cli.seed.wrapping_add(i), size, m)
        })
        .collect();
    let o = out(cli, "fuzz");
    for c in &cases {
        if cli.json {
            o.record(c, String::new);
        } else {
            for problem in &c.problems {
                println!("seed {} ({}): {problem}", c.seed, c.mode);
            }
        }
    }
    let pregroups = cases.iter().filter(|c| c.pregroup).count();
    let p6_fail = cases.iter().filter(|c| c.p6 == Some(false)).count();
    let words: usize = cases.iter().map(|c| c.words).sum();
    let problems: usize = cases.iter().map(|c| c.problems.len()).sum();
    o.record(
        json!({ "summary": true, "tables": cases.len(), "pregroups": pregroups, "p6_failures": p6_fail, "words": words, "problems": problems }),
        || {
            format!(
                "{} tables, {pregroups} satisfy P1–P5, {p6_fail} of those fail P6, {words} words reduced, {problems} problems",
                cases.len()
            )
        },
    );
    Ok(problems == 0)
}
