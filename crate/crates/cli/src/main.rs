use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sghom::autom::{check_antiautomorphic, check_transitivity};
use sghom::claims::sp5_neighbor_claims;
use sghom::density::{check_mad_girth, format_rational, mad_exact};
use sghom::discharge::{degree_case_audit_sp9, detect_all, run_discharge, threshold_audit_spq, AuditTranscript};
use sghom::forbid::{
    blowup_estimate, forbid_table, max_forbidden, p24_star_check, propositions, twenty_case_audit, AuditBudget,
    ForbidOptions, ForbidResult, DEFAULT_SEED, DEFAULT_TRIALS,
};
use sghom::hom::{chi_s_exact, chi_sp_exact, hom, sp_hom, HomWitness};
use sghom::reduce::{catalog, config_reducible, configuration, parse_config_id, Check, Engine, Theorem};
use sghom::target::{check_property_p, gen_sp, minus, plus, rho, rho_sp, rho_sp_plus, sp_graph};
use sghom::{Error, Sign, SignedGraph, SwitchSet, TargetGraph};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "sghom", version, about = "Signed graph homomorphisms and verification of their case analyses")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Emit one JSON object per check instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel verifications.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for sampled modes (overrides SGHOM_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run heavy checks exhaustively instead of sampling.
    #[arg(long, global = true)]
    exhaustive: bool,
    /// Also write stdout to this file.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a target graph: sp|sp+|sp- <q>, or rho <graph>.
    Gen { kind: String, arg: String },
    /// Property report for a target graph.
    Props {
        graph: String,
        /// Use rho(G) as the target.
        #[arg(long)]
        rho: bool,
        /// Properties to check as k,n (repeatable); default lists minima for k = 1..3.
        #[arg(long = "p", value_name = "K,N")]
        props: Vec<String>,
    },
    /// Exact maximum average degree with a densest-subgraph witness.
    Mad { graph: String },
    /// Girth and the planar mad bound.
    Girth {
        graph: String,
        #[arg(long)]
        planar: bool,
    },
    /// Sign-preserving homomorphism G -> H.
    Sphom { graph: String, target: String },
    /// Homomorphism G -> H up to switching.
    Hom { graph: String, target: String },
    /// Signed (or sign-preserving) chromatic number.
    Chi {
        graph: String,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long)]
        sp: bool,
    },
    /// Switch a comma-separated vertex set.
    Switch { graph: String, set: String },
    /// Switching canonical form.
    Canon { graph: String },
    /// Switching equivalence of two graphs.
    Equiv { first: String, second: String },
    /// Run one named verification: cf, p24star, p754, p75, p77, sp5claims, cases20, reduce:<id>.
    Verify { prop: String },
    /// Reducibility of a catalog configuration.
    Reduce {
        id: String,
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Discharging report for a graph.
    Discharge {
        graph: String,
        #[arg(long, default_value = "sp5")]
        theorem: String,
    },
    /// Degree-case transcripts: sp9-degrees or spq:<q>.
    Audit { which: String },
    /// Run the full verification suite.
    VerifyAll {
        #[arg(long)]
        quick: bool,
    },
}

/// One executed check.
struct Check1 {
    id: String,
    ok: bool,
    bound: String,
    mode: String,
    detail: String,
}

impl Check1 {
    fn line(&self) -> String {
        if self.ok {
            let mut s = format!("{} OK bound={} mode={}", self.id, self.bound, self.mode);
            if !self.detail.is_empty() {
                s.push_str(&format!(" {}", self.detail));
            }
            s
        } else {
            format!("{} FAIL witness={}", self.id, self.detail)
        }
    }

    fn json(&self) -> Value {
        json!({"id": self.id, "ok": self.ok, "bound": self.bound, "mode": self.mode, "detail": self.detail})
    }
}

struct Out {
    json: bool,
    text: String,
    failed: bool,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        if !self.json {
            self.text.push_str(s.as_ref());
            self.text.push('\n');
        }
    }

    fn value(&mut self, v: Value) {
        if self.json {
            self.text.push_str(&v.to_string());
            self.text.push('\n');
        }
    }

    fn check(&mut self, c: Check1) {
        self.failed |= !c.ok;
        if self.json {
            self.value(c.json());
        } else {
            self.line(c.line());
        }
    }

    fn fail(&mut self) {
        self.failed = true;
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read_graph(path: &str) -> Res<SignedGraph> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(SignedGraph::parse(&text)?)
}

fn parse_q(s: &str) -> Res<usize> {
    s.parse().map_err(|_| usage(format!("`{s}` is not a field order")))
}

fn parse_theorem(s: &str) -> Res<Theorem> {
    let lower = s.to_ascii_lowercase();
    match lower.as_str() {
        "sp5" => Ok(Theorem::Sp5),
        "sp9" | "sp9+" => Ok(Theorem::Sp9),
        _ => match lower.strip_prefix("spq:") {
            Some(q) => Ok(Theorem::Spq(parse_q(q)?)),
            None => Err(usage(format!("unknown theorem `{s}` (sp5, sp9, spq:<q>)"))),
        },
    }
}

fn seed(global: &Global) -> Res<u64> {
    if let Some(s) = global.seed {
        return Ok(s);
    }
    match std::env::var("SGHOM_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("SGHOM_SEED=`{v}` is not an integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn hom_output(out: &mut Out, w: Option<HomWitness>) {
    match w {
        Some(w) => {
            out.line(w.line());
            out.value(json!({"found": true, "witness": w}));
        }
        None => {
            out.line("NONE");
            out.value(json!({"found": false}));
            out.fail();
        }
    }
}

fn transcript(out: &mut Out, a: &AuditTranscript) {
    out.line(&a.title);
    for l in &a.lines {
        out.line(format!("  {l}"));
    }
    let verdict = if a.passed() { "PASS" } else { "FAIL" };
    out.line(format!("{}: {verdict} ({} checked, {} skipped)", a.title, a.checked, a.skipped));
    out.value(serde_json::to_value(a).expect("serializable"));
    if !a.passed() {
        out.fail();
    }
}

fn forbid_check(id: &str, r: &ForbidResult, bound: usize) -> Check1 {
    let ok = r.max_forbidden <= bound;
    let detail = if ok {
        let kind = if r.lower_bound { "lower bound" } else { "exact" };
        format!("value={} ({kind}, {} evaluated)", r.max_forbidden, r.evaluated)
    } else {
        serde_json::to_string(&r.witness).expect("serializable")
    };
    Check1 { id: id.into(), ok, bound: bound.to_string(), mode: r.mode.to_string(), detail }
}

fn cf_rows(table: &[usize]) -> Vec<(String, usize)> {
    let mut rows = Vec::new();
    let mut start = 0;
    for c in 1..=table.len() {
        if c == table.len() || table[c] != table[start] {
            let range = if c - 1 == start { start.to_string() } else { format!("{start}-{}", c - 1) };
            rows.push((range, table[start]));
            start = c;
        }
    }
    rows
}

const CF_EXPECTED: [usize; 21] = [20, 11, 6, 4, 4, 2, 2, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0];

fn verify(out: &mut Out, prop: &str, global: &Global) -> Res<()> {
    let seed = seed(global)?;
    match prop {
        "cf" => {
            let t = rho_sp_plus(9)?;
            let table = forbid_table(&t, Sign::Positive)?;
            for (range, v) in cf_rows(&table) {
                out.line(format!("  c={range:<6} forbid={v}"));
            }
            let ok = table[..] == CF_EXPECTED[..];
            let detail = if ok { String::new() } else { format!("{table:?}") };
            out.check(Check1 { id: "cf".into(), ok, bound: "table".into(), mode: "exhaustive".into(), detail });
        }
        "p24star" => {
            let r = p24_star_check(&rho_sp_plus(9)?)?;
            let ok = r.max_forbid_full <= 2 && r.max_forbid_minus_one <= 3;
            out.check(Check1 {
                id: "p24star".into(),
                ok,
                bound: "2,3".into(),
                mode: "exhaustive".into(),
                detail: format!("full={} minus_one={} sets={}", r.max_forbid_full, r.max_forbid_minus_one, r.distinct_sets),
            });
        }
        "p754" | "19-5-4" | "p75" | "7-5" | "p77" | "7-7" => {
            let id = match prop {
                "19-5-4" => "p754",
                "7-5" => "p75",
                "7-7" => "p77",
                p => p,
            };
            let t = rho_sp_plus(9)?;
            let p = propositions().into_iter().find(|p| p.id == id).expect("known proposition");
            let opts = if global.exhaustive {
                eprintln!("{id}: blow-up estimate {} cases before orbit reduction", blowup_estimate(&t, &p.spec));
                ForbidOptions { blowup_limit: u128::MAX, ..ForbidOptions::orbit() }
            } else {
                ForbidOptions::sampled(seed, DEFAULT_TRIALS)
            };
            let r = max_forbidden(&t, &p.spec, opts)?;
            out.check(forbid_check(id, &r, p.bound));
        }
        "sp5claims" => {
            for r in sp5_neighbor_claims(&rho_sp(5)?) {
                out.check(Check1 {
                    id: format!("sp5claims:{}", r.gadget),
                    ok: r.holds,
                    bound: r.bound.to_string(),
                    mode: "exhaustive".into(),
                    detail: if r.holds { format!("max={}", r.max_forbidden) } else { r.line() },
                });
            }
        }
        "cases20" => {
            let t = rho_sp_plus(9)?;
            let budget = if global.exhaustive {
                AuditBudget { seed, ..AuditBudget::exhaustive() }
            } else {
                AuditBudget { seed, ..AuditBudget::default() }
            };
            for o in twenty_case_audit(&t, budget)? {
                let mut c = forbid_check(&format!("cases20:{} {}", o.case, o.spec), &o.result, o.bound);
                if c.ok {
                    c.detail.push_str(&format!(" estimate={}", o.estimate));
                }
                out.check(c);
            }
        }
        p => match p.strip_prefix("reduce:") {
            Some(id) => reduce(out, id, Engine::Auto, true)?,
            None => return Err(usage(format!("unknown verification `{p}`"))),
        },
    }
    Ok(())
}

fn reduce(out: &mut Out, id: &str, engine: Engine, as_check: bool) -> Res<()> {
    let cfg = configuration(id)?;
    if let Check::Forbidding = cfg.check {
        out.check(Check1 {
            id: format!("reduce:{}", cfg.id),
            ok: true,
            bound: "-".into(),
            mode: "forbidding".into(),
            detail: "covered by verify p754, p75, p77 and cases20".into(),
        });
        return Ok(());
    }
    let r = config_reducible(id, engine)?;
    if !as_check {
        for l in r.transcript() {
            out.line(l);
        }
    }
    let min = r.variants.iter().filter_map(|v| v.min_choices).min();
    let mode = r.variants.first().map(|v| format!("{:?}", v.engine).to_lowercase()).unwrap_or_default();
    let detail = if r.reducible {
        format!("{} variants", r.variants.len())
    } else {
        r.variants.iter().filter(|v| !v.reducible).map(|v| v.line().trim().to_string()).collect::<Vec<_>>().join("; ")
    };
    let c = Check1 {
        id: format!("reduce:{}", r.id),
        ok: r.reducible,
        bound: min.map_or("-".into(), |m| m.to_string()),
        mode,
        detail,
    };
    if as_check {
        out.check(c);
    } else {
        out.failed |= !c.ok;
        out.value(serde_json::to_value(&r).expect("serializable"));
    }
    Ok(())
}

fn props(out: &mut Out, t: &TargetGraph, specs: &[String]) -> Res<()> {
    let mut pairs = Vec::new();
    for s in specs {
        let parsed = s.split_once(',').and_then(|(k, n)| Some((k.trim().parse().ok()?, n.trim().parse().ok()?)));
        pairs.push(parsed.ok_or_else(|| usage(format!("`{s}` is not k,n")))?);
    }
    if pairs.is_empty() {
        for k in 1..=3 {
            let r = check_property_p(t, k, 0);
            if let Some(m) = r.minimum {
                pairs.push((k, m));
            }
        }
    }
    for (k, n) in pairs {
        let r = check_property_p(t, k, n);
        out.line(r.line());
        out.value(serde_json::to_value(&r).expect("serializable"));
        if !r.holds {
            out.fail();
        }
    }
    for level in 1..=2 {
        let r = check_transitivity(t, level)?;
        out.line(r.line());
        out.value(serde_json::to_value(&r).expect("serializable"));
    }
    let r = check_antiautomorphic(t);
    out.line(r.line());
    out.value(serde_json::to_value(&r).expect("serializable"));
    Ok(())
}

fn target_suite(out: &mut Out) -> Res<()> {
    for q in [5i64, 9, 13] {
        let qu = q as usize;
        let families: [(String, TargetGraph, Vec<(usize, i64)>); 3] = [
            (format!("SP{q}"), gen_sp(qu)?, vec![(1, (q - 1) / 2), (2, (q - 5) / 4)]),
            (format!("rho(SP{q})"), rho_sp(qu)?, vec![(1, q - 1), (2, (q - 3) / 2), (3, ((q - 9) / 4).max(0))]),
            (format!("rho(SP{q}+)"), rho_sp_plus(qu)?, vec![(1, q), (2, (q - 1) / 2), (3, (q - 5) / 4)]),
        ];
        for (name, t, list) in families {
            for (k, n) in list.into_iter().filter(|&(_, n)| n >= 0) {
                let r = check_property_p(&t, k, n as usize);
                out.check(Check1 {
                    id: format!("props:{name}:P_{k}_{n}"),
                    ok: r.holds,
                    bound: n.to_string(),
                    mode: "exhaustive".into(),
                    detail: if r.holds { format!("min={}", r.minimum.map_or("-".into(), |m| m.to_string())) } else { r.line() },
                });
            }
            if name.starts_with("rho(SP") && !name.ends_with("+)") {
                continue;
            }
            let mut reports = vec![check_transitivity(&t, 1)?, check_transitivity(&t, 2)?];
            reports.push(check_antiautomorphic(&t));
            for r in reports {
                out.check(Check1 {
                    id: format!("props:{name}:{}", r.property),
                    ok: r.holds,
                    bound: "-".into(),
                    mode: "exhaustive".into(),
                    detail: if r.holds { String::new() } else { r.line() },
                });
            }
        }
    }
    Ok(())
}

fn audit_check(out: &mut Out, id: &str, a: &AuditTranscript) {
    out.check(Check1 {
        id: id.into(),
        ok: a.passed(),
        bound: "0".into(),
        mode: "exhaustive".into(),
        detail: if a.passed() { format!("{} checked, {} skipped", a.checked, a.skipped) } else { a.failures.join(",") },
    });
}

fn verify_all(out: &mut Out, quick: bool, global: &Global) -> Res<()> {
    target_suite(out)?;
    for p in ["cf", "p24star", "sp5claims"] {
        verify(out, p, global)?;
    }
    let mut theorems = vec![Theorem::Sp5, Theorem::Sp9, Theorem::Spq(9), Theorem::Spq(13)];
    if !quick {
        theorems.push(Theorem::Spq(17));
    }
    for th in theorems {
        for id in catalog(th) {
            reduce(out, &id.to_string(), Engine::Auto, true)?;
        }
    }
    for p in ["p754", "p75", "p77", "cases20"] {
        verify(out, p, global)?;
    }
    audit_check(out, "audit:sp9-degrees", &degree_case_audit_sp9());
    for q in [9, 13, 17, 25] {
        audit_check(out, &format!("audit:spq:{q}"), &threshold_audit_spq(q)?);
    }
    let summary = if out.failed { "verify-all: FAIL" } else { "verify-all: all checks passed" };
    out.line(summary);
    Ok(())
}

fn run(cli: &Cli, out: &mut Out) -> Res<String> {
    let global = &cli.global;
    let mut mode = if global.exhaustive { "exhaustive" } else { "default" }.to_string();
    match &cli.command {
        Command::Gen { kind, arg } => {
            let g = match kind.as_str() {
                "sp" => sp_graph(parse_q(arg)?)?,
                "sp+" => plus(&sp_graph(parse_q(arg)?)?),
                "sp-" => minus(&sp_graph(parse_q(arg)?)?)?,
                "rho" => rho(&read_graph(arg)?)?.graph().clone(),
                k => return Err(usage(format!("unknown generator `{k}` (sp, sp+, sp-, rho)"))),
            };
            if global.json {
                out.value(json!({"graph": g.serialize()}));
            } else {
                out.text.push_str(&g.serialize());
            }
        }
        Command::Props { graph, rho: use_rho, props: specs } => {
            let g = read_graph(graph)?;
            let t = if *use_rho { rho(&g)? } else { TargetGraph::new(g)? };
            props(out, &t, specs)?;
        }
        Command::Mad { graph } => {
            let c = mad_exact(&read_graph(graph)?)?;
            out.line(c.line());
            out.value(serde_json::to_value(&c).expect("serializable"));
        }
        Command::Girth { graph, planar } => {
            let r = check_mad_girth(&read_graph(graph)?, *planar)?;
            let girth = r.girth.map_or("inf".to_string(), |g| g.to_string());
            out.line(format!(
                "girth = {girth}  mad = {}  bound = {}  {}",
                format_rational(&r.mad),
                format_rational(&r.bound),
                if r.holds { "HOLDS" } else { "FAILS" }
            ));
            out.value(serde_json::to_value(&r).expect("serializable"));
            if !r.holds {
                out.fail();
            }
        }
        Command::Sphom { graph, target } => {
            let g = read_graph(graph)?;
            let t = TargetGraph::without_antitwins(read_graph(target)?)?;
            hom_output(out, sp_hom(&g, &t)?);
        }
        Command::Hom { graph, target } => {
            let g = read_graph(graph)?;
            hom_output(out, hom(&g, &read_graph(target)?)?);
        }
        Command::Chi { graph, kmax, sp } => {
            let g = read_graph(graph)?;
            let v = if *sp { chi_sp_exact(&g, *kmax)? } else { chi_s_exact(&g, *kmax)? };
            let name = if *sp { "chi_sp" } else { "chi_s" };
            out.line(format!("{name} = {v}"));
            out.value(json!({name: v.to_string()}));
        }
        Command::Switch { graph, set } => {
            let g = read_graph(graph)?;
            let members: Vec<usize> = set
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse().map_err(|_| usage(format!("`{s}` is not a vertex"))))
                .collect::<Res<_>>()?;
            let s = SwitchSet::new(members);
            s.validate(g.n())?;
            out.text.push_str(&g.switch(&s).serialize());
        }
        Command::Canon { graph } => {
            let g = read_graph(graph)?;
            let s = g.canonical_switch_set();
            if global.json {
                out.value(json!({"switch": s.members(), "graph": g.switching_canonical_form().serialize()}));
            } else {
                out.line(format!("# switch {s}"));
                out.text.push_str(&g.switching_canonical_form().serialize());
            }
        }
        Command::Equiv { first, second } => {
            let eq = read_graph(first)?.is_switching_equivalent(&read_graph(second)?);
            out.line(if eq { "EQUIVALENT" } else { "NOT EQUIVALENT" });
            out.value(json!({"equivalent": eq}));
            if !eq {
                out.fail();
            }
        }
        Command::Verify { prop } => {
            if global.exhaustive {
                mode = "exhaustive".into();
            } else if matches!(prop.as_str(), "p754" | "p75" | "p77" | "19-5-4" | "7-5" | "7-7") {
                mode = "sampled".into();
            }
            verify(out, prop, global)?;
        }
        Command::Reduce { id, engine } => {
            let engine = match engine.as_str() {
                "auto" => Engine::Auto,
                "tree" => Engine::Tree,
                "enum" | "enumeration" => Engine::Enumeration,
                e => return Err(usage(format!("unknown engine `{e}` (auto, tree, enum)"))),
            };
            parse_config_id(id)?;
            reduce(out, id, engine, false)?;
        }
        Command::Discharge { graph, theorem } => {
            let g = read_graph(graph)?;
            let th = parse_theorem(theorem)?;
            let r = run_discharge(&g, th)?;
            for l in r.lines() {
                out.line(l);
            }
            for (id, embeddings) in detect_all(&g, th) {
                let list: Vec<String> = embeddings.iter().map(|e| e.to_string()).collect();
                out.line(format!("configuration {id}: {}", list.join(" ")));
            }
            out.value(serde_json::to_value(&r).expect("serializable"));
            if !r.violations.is_empty() {
                out.fail();
            }
        }
        Command::Audit { which } => {
            let a = match which.to_ascii_lowercase().as_str() {
                "sp9-degrees" | "sp9" => degree_case_audit_sp9(),
                w => match w.strip_prefix("spq:") {
                    Some(q) => threshold_audit_spq(parse_q(q)?)?,
                    None => return Err(usage(format!("unknown audit `{which}` (sp9-degrees, spq:<q>)"))),
                },
            };
            transcript(out, &a);
        }
        Command::VerifyAll { quick } => {
            mode = if *quick { "quick".into() } else { mode };
            verify_all(out, *quick, global)?;
        }
    }
    Ok(mode)
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Props { .. } => "props",
        Command::Mad { .. } => "mad",
        Command::Girth { .. } => "girth",
        Command::Sphom { .. } => "sphom",
        Command::Hom { .. } => "hom",
        Command::Chi { .. } => "chi",
        Command::Switch { .. } => "switch",
        Command::Canon { .. } => "canon",
        Command::Equiv { .. } => "equiv",
        Command::Verify { .. } => "verify",
        Command::Reduce { .. } => "reduce",
        Command::Discharge { .. } => "discharge",
        Command::Audit { .. } => "audit",
        Command::VerifyAll { .. } => "verify-all",
    }
}

fn configure_threads(jobs: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    configure_threads(cli.global.jobs);
    let start = Instant::now();
    let mut out = Out { json: cli.global.json, text: String::new(), failed: false };
    let result = run(&cli, &mut out);
    let (code, outcome, mode) = match result {
        Ok(mode) if out.failed => (EXIT_FAIL, "fail".to_string(), mode),
        Ok(mode) => (0, "ok".to_string(), mode),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            (EXIT_USAGE, format!("usage: {m}"), String::new())
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            (EXIT_ERROR, format!("error: {e}"), String::new())
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            (EXIT_ERROR, format!("error: {e}"), String::new())
        }
    };
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.text.as_bytes());
    let _ = stdout.flush();
    if let Some(path) = &cli.global.out {
        if let Err(e) = std::fs::write(path, &out.text) {
            eprintln!("error: cannot write {path}: {e}");
        }
    }
    let seed = seed(&cli.global).unwrap_or(DEFAULT_SEED);
    let manifest = json!({
        "subcommand": subcommand_name(&cli.command),
        "arguments": std::env::args().skip(1).collect::<Vec<_>>(),
        "seed": seed,
        "mode": mode,
        "wall_time_ms": start.elapsed().as_millis() as u64,
        "outcome": outcome,
    });
    eprintln!("manifest {manifest}");
    ExitCode::from(code)
}
