//! One function per subcommand. Each returns the exit status and the exact
//! text to emit, so output placement stays in `main`.

use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::CommandFactory;
use serde::Serialize;
use serde_json::{json, Map, Value};

use diffiso::canon::{canon, CanonCache};
use diffiso::constructions::{ConstructionKind, ConstructionSpec};
use diffiso::family::{self, complement_family, dualize, find_involution_clique, FamilyFile};
use diffiso::lemmalab::{self, LemmaId, LemmaRequest, Sweep, DEFAULT_SAMPLES};
use diffiso::relation::f_r;
use diffiso::search::{self, SearchOptions};
use diffiso::{Caps, EdgeSpace, Family, RGraph, TOOL_VERSION};

use crate::args::{
    CanonArgs, Cli, Command, ConstructArgs, LemmaArgs, SearchArgs, SweepMode, TableArgs,
};
use crate::Status;

pub fn run(cli: &Cli) -> Result<(Status, String)> {
    let caps = Caps::from_env()?;
    match &cli.command {
        Command::Table(a) => table(cli, a),
        Command::Construct(a) => construct(cli, a, &caps),
        Command::Verify(a) => verify(cli, &a.path, &caps),
        Command::Search(a) => search(cli, a, &caps),
        Command::Lemma(a) => lemma(cli, a, &caps),
        Command::Canon(a) => canon_cmd(cli, a, &caps),
        Command::Dualize(a) => transform(cli, &a.path, "dualize", dualize),
        Command::Complement(a) => {
            transform(cli, &a.path, "complement", |f| Ok(complement_family(f)))
        }
    }
}

/// Usage errors found after parsing still go through clap so they look and
/// exit like parse-time ones.
fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(ErrorKind::ArgumentConflict, msg)
        .exit()
}

/// `{format, tool_version, ...body}` rendered with a trailing newline.
fn envelope(cli: &Cli, kind: &str, body: impl Serialize) -> Result<String> {
    let mut obj = Map::new();
    obj.insert("format".into(), format!("diffiso-{kind}/1").into());
    obj.insert("tool_version".into(), TOOL_VERSION.into());
    match serde_json::to_value(body)? {
        Value::Object(fields) => obj.extend(fields),
        other => {
            obj.insert("result".into(), other);
        }
    }
    render(cli, &Value::Object(obj))
}

fn render(cli: &Cli, v: &Value) -> Result<String> {
    let mut s = if cli.global.pretty {
        serde_json::to_string_pretty(v)?
    } else {
        serde_json::to_string(v)?
    };
    s.push('\n');
    Ok(s)
}

fn budget(cli: &Cli) -> Option<Duration> {
    cli.global.budget_secs.map(|s| {
        if !(s.is_finite() && s >= 0.0) {
            usage(format!(
                "--budget-secs must be a non-negative number, got {s}"
            ));
        }
        Duration::from_secs_f64(s)
    })
}

fn table(cli: &Cli, a: &TableArgs) -> Result<(Status, String)> {
    if a.r_max < 2 || a.n_max < a.r_max {
        usage(format!(
            "table needs 2 <= r-max <= n-max, got r-max={}, n-max={}",
            a.r_max, a.n_max
        ));
    }
    let mut rows = Vec::new();
    for r in 2..=a.r_max {
        for n in r..=a.n_max {
            let f = f_r(n, r)?;
            let pow = (f < 128).then(|| 1u128 << f).filter(|&p| p <= 1u128 << 64);
            rows.push((n, r, f, pow));
        }
    }
    if a.json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|&(n, r, f, pow)| json!({"n": n, "r": r, "f": f, "pow2_f": pow.map(|p| p.to_string())}))
            .collect();
        return Ok((Status::Ok, envelope(cli, "table", json!({"rows": rows}))?));
    }
    let mut out = format!("{:>3} {:>3} {:>6}  {}\n", "r", "n", "f_r(n)", "2^f_r(n)");
    for (n, r, f, pow) in rows {
        let pow = pow.map_or_else(|| "-".to_string(), |p| p.to_string());
        out.push_str(&format!("{r:>3} {n:>3} {f:>6}  {pow}\n"));
    }
    Ok((Status::Ok, out))
}

fn construct(cli: &Cli, a: &ConstructArgs, caps: &Caps) -> Result<(Status, String)> {
    let n = match (a.kind, a.n) {
        (ConstructionKind::MiddleLayer, _) => a.r + 1,
        (_, Some(n)) => n,
        (kind, None) => usage(format!("construct {kind} needs --n")),
    };
    let spec = ConstructionSpec {
        kind: a.kind,
        n,
        r: a.r,
        k: a.k,
        m: a.m,
    };
    let built = spec.build(caps)?;
    let fam = &built.family;
    let cache = CanonCache::new(fam.space(), caps)?;
    let report = family::is_difference_isomorphic(fam, &cache)?;
    // `checked` is false when S_n is too large to enumerate involutions.
    let involution_clique = match find_involution_clique(fam, caps) {
        Ok(p) => json!({"checked": true, "witness": p.map(|p| p.to_string())}),
        Err(e) if e.is_capacity() => json!({"checked": false, "witness": null}),
        Err(e) => return Err(e.into()),
    };
    let mut file = FamilyFile::from_family(fam)
        .with_meta("construction", serde_json::to_value(&spec)?)
        .with_meta(
            "verification",
            json!({
                "difference_isomorphic": report.ok,
                "checked_pairs": report.checked_pairs,
                "witness": report.witness,
            }),
        )
        .with_meta("involution_clique", involution_clique);
    if let Some(p) = &built.psi {
        file = file.with_meta("psi", p.to_string().into());
    }
    if let Some(p) = &built.phi {
        file = file.with_meta("phi", p.to_string().into());
    }
    if let Some(g) = &built.g0 {
        file = file.with_meta("g0", g.to_hex().into());
    }
    let digest = file.digest.clone();
    file = file.with_meta("verified_digest", json!(digest));
    let status = if report.ok {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok((status, file.to_json(cli.global.pretty)))
}

fn load(path: &Path) -> Result<FamilyFile> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(FamilyFile::parse(&text)?)
}

fn verify(cli: &Cli, path: &Path, caps: &Caps) -> Result<(Status, String)> {
    let file = load(path)?;
    let fam = file.members()?;
    let digest_match = file.digest_matches();
    let cache = CanonCache::new(fam.space(), caps)?;
    let report = family::is_difference_isomorphic(&fam, &cache)?;
    let ok = report.ok && digest_match != Some(false);
    let body = json!({
        "n": file.n,
        "r": file.r,
        "members": fam.len(),
        "digest_match": digest_match,
        "difference_isomorphic": report.ok,
        "ok": ok,
        "witness": report.witness,
        "checked_pairs": report.checked_pairs,
        "elapsed_ms": report.elapsed_ms,
    });
    Ok((
        if ok { Status::Ok } else { Status::Failed },
        envelope(cli, "verify", body)?,
    ))
}

fn search(cli: &Cli, a: &SearchArgs, caps: &Caps) -> Result<(Status, String)> {
    let budget = budget(cli);
    if a.duality {
        let rep = search::duality_check(a.n, a.r, budget, caps)?;
        let status = if rep.matches == Some(false) {
            Status::Failed
        } else {
            Status::Ok
        };
        return Ok((status, envelope(cli, "duality", rep)?));
    }
    let opts = SearchOptions {
        budget,
        seed_extremal: a.seed_extremal,
    };
    let res = search::solve(a.n, a.r, &opts, caps)?;
    let body = json!({
        "n": a.n,
        "r": a.r,
        "size": res.size,
        "exact": res.exact,
        "nodes_explored": res.nodes_explored,
        "seed_extremal": a.seed_extremal,
        "budget_secs": cli.global.budget_secs,
        "family": res.best_family.hex_members(),
        "elapsed_ms": res.elapsed.as_millis() as u64,
    });
    Ok((Status::Ok, envelope(cli, "search", body)?))
}

fn lemma(cli: &Cli, a: &LemmaArgs, caps: &Caps) -> Result<(Status, String)> {
    let id: LemmaId = match a.id.parse() {
        Ok(id) => id,
        Err(e) => usage(e),
    };
    let sweep = match a.mode {
        SweepMode::Exhaustive => {
            if a.samples.is_some() {
                usage("--samples requires --mode sampled");
            }
            Sweep::Exhaustive
        }
        SweepMode::Sampled => Sweep::Sampled {
            samples: a.samples.unwrap_or(DEFAULT_SAMPLES),
            seed: cli.global.seed,
        },
    };
    if a.n.is_some() && a.n_max.is_some() {
        usage("--n and --n-max are mutually exclusive");
    }
    let req = LemmaRequest {
        id,
        n: a.n,
        r: a.r,
        n_max: a.n_max,
        r_max: a.r_max,
        delta: a.delta,
        sweep,
    };
    let rep = lemmalab::run(&req, caps)?;
    let status = if rep.passed() {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok((status, envelope(cli, "lemma", rep)?))
}

fn canon_cmd(cli: &Cli, a: &CanonArgs, caps: &Caps) -> Result<(Status, String)> {
    let space = EdgeSpace::new(a.n, a.r)?;
    let g = RGraph::from_hex(&space, &a.graph)?;
    let cache = CanonCache::new(&space, caps)?;
    let c = canon(&g, &cache)?;
    let body = json!({"n": a.n, "r": a.r, "graph": g.to_hex(), "canon": c.to_hex(&space)});
    Ok((Status::Ok, envelope(cli, "canon", body)?))
}

fn transform(
    cli: &Cli,
    path: &Path,
    what: &str,
    op: impl Fn(&Family) -> diffiso::Result<Family>,
) -> Result<(Status, String)> {
    let src = load(path)?;
    let fam = src.to_family()?;
    let out = op(&fam)?;
    if out.len() != fam.len() {
        bail!("{what} changed the family size");
    }
    let file = FamilyFile::from_family(&out)
        .with_meta("transform", what.into())
        .with_meta("source_digest", json!(src.digest));
    Ok((Status::Ok, file.to_json(cli.global.pretty)))
}
