//! Subcommand implementations.

use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use beck_core::bijection::{franklin_phi, franklin_phi_inv, psi, psi_inv, zeta, ZetaVariant};
use beck_core::enumeration::count_class;
use beck_core::euler_pair::{search_counterexample, verify_tilde, WindowReport};
use beck_core::identities::{b_prime_stat, b_stat, verify, SizeTable, TSelector};
use beck_core::oeis::{self, crosscheck, lookup_offline, parse_bfile, MatchStatus, Reference, Source};
use beck_core::qseries::{gf_class, gf_deriv, gf_e, gf_t, DerivKind, Series};
use beck_core::{parse_partition, ClassSpec, DivisibleTuple, EulerPair, Family, Mode, TheoremId, VerificationRecord};
use rayon::prelude::*;
use serde::Serialize;

use crate::render::{self, Format};
use crate::{
    BijectionArg, Cli, Command, EulerArgs, FamilyArg, MapArgs, OeisArgs, Quantity, SeriesArgs, StatsArgs, VerifyArgs,
    ZetaArg,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

pub fn dispatch(cli: &Cli) -> Result<Status> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Verify(a) => verify_cmd(a, cli.format, out),
        Command::Stats(a) => stats_cmd(a, cli.format, out),
        Command::Map(a) => map_cmd(a, cli.format, out),
        Command::Series(a) => series_cmd(a, cli.format, out),
        Command::Euler(a) => euler_cmd(a, cli.format, out),
        Command::Oeis(a) => oeis_cmd(a, cli.format, out),
    }
}

/// One verification record as a flat row; CSV and JSON share it.
#[derive(Debug, Serialize)]
struct RecordRow {
    theorem: TheoremId,
    n: u64,
    r: u64,
    j: u64,
    t: Option<u64>,
    lhs: i64,
    rhs1: Option<i64>,
    rhs2: Option<i64>,
    ok: bool,
}

impl From<&VerificationRecord> for RecordRow {
    fn from(rec: &VerificationRecord) -> Self {
        RecordRow {
            theorem: rec.theorem,
            n: rec.n,
            r: rec.r,
            j: rec.j,
            t: rec.t,
            lhs: rec.lhs,
            rhs1: rec.rhs.first().map(|v| v.value),
            rhs2: rec.rhs.get(1).map(|v| v.value),
            ok: rec.ok,
        }
    }
}

fn report_records(
    command: &str,
    params: &impl Serialize,
    recs: &[VerificationRecord],
    format: Format,
    out: Option<&Path>,
) -> Result<Status> {
    let rows: Vec<RecordRow> = recs.iter().map(RecordRow::from).collect();
    render::write_out(out, &render::records(format, render::meta(command, params)?, &rows)?)?;
    let failed: Vec<_> = recs.iter().filter(|r| !r.ok).collect();
    for rec in &failed {
        let rhs: Vec<String> = rec.rhs.iter().map(|v| format!("{}={}", v.label, v.value)).collect();
        let t = rec.t.map(|t| format!(" t={t}")).unwrap_or_default();
        eprintln!(
            "FAIL {} n={} r={} j={}{t}: lhs={} {}{}",
            rec.theorem,
            rec.n,
            rec.r,
            rec.j,
            rec.lhs,
            rhs.join(" "),
            rec.defect.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
        );
    }
    if failed.is_empty() {
        Ok(Status::Pass)
    } else {
        eprintln!("{} of {} records failed", failed.len(), recs.len());
        Ok(Status::Fail)
    }
}

fn check_range(n_min: u64, n_max: u64) -> Result<()> {
    if n_min > n_max {
        bail!("--n-min {n_min} exceeds --n-max {n_max}");
    }
    Ok(())
}

fn theorems(names: &[String]) -> Result<Vec<TheoremId>> {
    let mut ids = Vec::new();
    for name in names {
        if name == "all" {
            ids.extend(TheoremId::CLASSICAL);
            continue;
        }
        let id: TheoremId = name.parse().map_err(|e: String| anyhow!(e))?;
        if !TheoremId::CLASSICAL.contains(&id) {
            bail!("{id} concerns Euler pairs; use the euler subcommand");
        }
        ids.push(id);
    }
    Ok(ids)
}

fn verify_cmd(a: &VerifyArgs, format: Format, out: Option<&Path>) -> Result<Status> {
    check_range(a.grid.n_min, a.grid.n_max)?;
    let ids = theorems(&a.theorem)?;
    let t = a.t.map_or(TSelector::All, TSelector::One);
    let recs = verify(&ids, a.grid.n_min..=a.grid.n_max, &a.grid.r, a.grid.j_max, t)?;
    report_records("verify", a, &recs, format, out)
}

#[derive(Debug, Serialize)]
struct StatsRow {
    n: u64,
    r: u64,
    j: u64,
    o_count: i64,
    d_count: i64,
    b: i64,
    b_le: i64,
    t: u64,
    e: i64,
    b_prime: i64,
    b_prime_le: i64,
    t_window: i64,
}

fn stats_cmd(a: &StatsArgs, format: Format, out: Option<&Path>) -> Result<Status> {
    check_range(a.grid.n_min, a.grid.n_max)?;
    for &r in &a.grid.r {
        if a.t >= r {
            bail!("--t {} must be below every r (got r={r})", a.t);
        }
    }
    let cells: Vec<(u64, u64)> =
        (a.grid.n_min..=a.grid.n_max).flat_map(|n| a.grid.r.iter().map(move |&r| (n, r))).collect();
    let tables: Vec<SizeTable> =
        cells.par_iter().map(|&(n, r)| SizeTable::build(n, r, a.grid.j_max)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for tab in &tables {
        for j in 0..=a.grid.j_max {
            let (o, d) = (&tab.o[j as usize], &tab.d[j as usize]);
            let (o_le, d_le) = (tab.o_le(j), tab.d_le(j));
            rows.push(StatsRow {
                n: tab.n,
                r: tab.r,
                j,
                o_count: o.count,
                d_count: d.count,
                b: o.ell - d.ell,
                b_le: o_le.ell - d_le.ell,
                t: a.t,
                e: tab.e(j, a.t),
                b_prime: d.ell_bar - o.ell_bar,
                b_prime_le: d_le.ell_bar - o_le.ell_bar,
                t_window: d.t_window,
            });
        }
    }
    render::write_out(out, &render::records(format, render::meta("stats", a)?, &rows)?)?;
    Ok(Status::Pass)
}

#[derive(Debug, Serialize)]
struct MapRow {
    bijection: BijectionArg,
    r: u64,
    input: String,
    output: String,
    case: Option<String>,
    collided_index: Option<usize>,
}

fn map_cmd(a: &MapArgs, format: Format, out: Option<&Path>) -> Result<Status> {
    let lambda = parse_partition(&a.partition)?;
    if a.bijection != BijectionArg::Zeta && !(a.m.is_empty() && a.k.is_empty()) {
        bail!("--m and --k apply only to zeta");
    }
    let (image, case, collided_index) = match a.bijection {
        BijectionArg::Psi => (psi(&lambda, a.r)?, None, None),
        BijectionArg::PsiInv => (psi_inv(&lambda, a.r)?, None, None),
        BijectionArg::Phi => (franklin_phi(&lambda, a.r)?, None, None),
        BijectionArg::PhiInv => (franklin_phi_inv(&lambda, a.r)?, None, None),
        BijectionArg::Zeta => {
            let tuple = DivisibleTuple::new(a.m.clone(), a.k.clone())?;
            let variant = match a.variant {
                ZetaArg::DivisibleParts => ZetaVariant::DivisibleParts,
                ZetaArg::RepeatedMults => ZetaVariant::RepeatedMults,
            };
            let z = zeta(&lambda, a.r, &tuple, variant)?;
            let case = serde_json::to_value(z.case)?.as_str().map(str::to_string);
            (z.image, case, z.collided_index)
        }
    };
    let row = MapRow {
        bijection: a.bijection,
        r: a.r,
        input: lambda.to_string(),
        output: image.to_string(),
        case,
        collided_index,
    };
    let text = match format {
        Format::Table => match (&row.case, row.collided_index) {
            (Some(case), Some(i)) => format!("{}\t{case} (m index {i})\n", row.output),
            (Some(case), None) => format!("{}\t{case}\n", row.output),
            _ => format!("{}\n", row.output),
        },
        _ => render::records(format, render::meta("map", a)?, std::slice::from_ref(&row))?,
    };
    render::write_out(out, &text)?;
    Ok(Status::Pass)
}

#[derive(Debug, Serialize)]
struct CoefficientRow {
    n: usize,
    j: usize,
    coefficient: i128,
}

fn build_series(a: &SeriesArgs) -> Result<Series> {
    let (n, j) = (a.n_max as usize, a.j_max as usize);
    let need_t = || a.t.ok_or_else(|| anyhow!("{} needs --t", a.which));
    let series = match a.which.as_str() {
        "O" | "o" => gf_class(Family::O, a.r, n, j)?,
        "D" | "d" => gf_class(Family::D, a.r, n, j)?,
        "E" | "e" => gf_e(a.r, need_t()?, n, j)?,
        "T" | "t" => gf_t(a.r, n, j)?,
        other => {
            let kind: DerivKind = other.parse().map_err(|e: String| anyhow!(e))?;
            let t = if kind.needs_t() { Some(need_t()?) } else { None };
            gf_deriv(kind, a.r, t, n, j)?
        }
    };
    Ok(series)
}

fn series_cmd(a: &SeriesArgs, format: Format, out: Option<&Path>) -> Result<Status> {
    let series = build_series(a)?;
    let text = match format {
        Format::Table => {
            let mut header = vec!["n".to_string()];
            header.extend((0..=series.j_max()).map(|j| format!("w^{j}")));
            let rows: Vec<Vec<String>> = (0..=series.n_max())
                .map(|n| {
                    let mut row = vec![n.to_string()];
                    row.extend(series.row(n).iter().map(i128::to_string));
                    row
                })
                .collect();
            render::table(&header, &rows)
        }
        _ => {
            let rows: Vec<CoefficientRow> =
                series.entries().map(|c| CoefficientRow { n: c.n, j: c.j, coefficient: c.coefficient }).collect();
            render::records(format, render::meta("series", a)?, &rows)?
        }
    };
    render::write_out(out, &text)?;
    Ok(Status::Pass)
}

fn read_set(path: &Path) -> Result<Vec<u64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|tok| !tok.is_empty())
        .map(|tok| tok.parse::<u64>().with_context(|| format!("{}: bad integer {tok:?}", path.display())))
        .collect()
}

fn build_pair(a: &EulerArgs) -> Result<EulerPair> {
    let pair = if let Some(d) = a.s1_multiples_of {
        EulerPair::multiples_of(a.r, d, a.bound)?
    } else if !a.s1_arithmetic.is_empty() {
        let [start, step] = a.s1_arithmetic[..] else {
            bail!("--s1-arithmetic takes START,STEP");
        };
        EulerPair::arithmetic(a.r, start, step, a.bound)?
    } else if let Some(path) = &a.s1_file {
        EulerPair::new(a.r, read_set(path)?, a.bound, None::<Vec<u64>>)?
    } else if !a.s1.is_empty() {
        EulerPair::new(a.r, a.s1.iter().copied(), a.bound, None::<Vec<u64>>)?
    } else {
        EulerPair::all_positive(a.r, a.bound)?
    };
    match &a.s2 {
        None => Ok(pair),
        Some(s2) => Ok(EulerPair::new(a.r, pair.s1, a.bound, Some(s2.iter().copied()))?),
    }
}

#[derive(Debug, Serialize)]
struct WindowRow {
    outcome: &'static str,
    n: Option<u64>,
    j: Option<u64>,
    o_count: Option<u64>,
    d_count: Option<u64>,
    n_max: Option<u64>,
    j_max: Option<u64>,
}

impl From<&WindowReport> for WindowRow {
    fn from(w: &WindowReport) -> Self {
        let empty = WindowRow { outcome: "", n: None, j: None, o_count: None, d_count: None, n_max: None, j_max: None };
        match *w {
            WindowReport::Verified { n_max, j_max } => {
                WindowRow { outcome: "verified", n_max: Some(n_max), j_max: Some(j_max), ..empty }
            }
            WindowReport::Inconclusive { n_max, j_max } => {
                WindowRow { outcome: "inconclusive", n_max: Some(n_max), j_max: Some(j_max), ..empty }
            }
            WindowReport::Counterexample { n, j, o_count, d_count } => WindowRow {
                outcome: "counterexample",
                n: Some(n),
                j: Some(j),
                o_count: Some(o_count),
                d_count: Some(d_count),
                ..empty
            },
        }
    }
}

#[derive(Serialize)]
struct EulerParams<'a> {
    #[serde(flatten)]
    args: &'a EulerArgs,
    pair: &'a EulerPair,
}

fn euler_cmd(a: &EulerArgs, format: Format, out: Option<&Path>) -> Result<Status> {
    let pair = build_pair(a)?;
    let params = EulerParams { args: a, pair: &pair };
    if a.search || !pair.subbarao_ok {
        if !pair.subbarao_ok {
            eprintln!("warning: S1/S2 fail the Subbarao condition on 1..={}; searching for unequal counts", a.bound);
        }
        let report = search_counterexample(&pair, a.n_max, a.j_max)?;
        let rows = [WindowRow::from(&report)];
        render::write_out(out, &render::records(format, render::meta("euler", &params)?, &rows)?)?;
        return Ok(Status::Pass);
    }
    let items: Vec<u8> = a.item.map_or_else(|| (1..=4).collect(), |i| vec![i]);
    let mut recs = Vec::new();
    for item in items {
        recs.extend(verify_tilde(item, &pair, 0..=a.n_max, a.j_max)?);
    }
    report_records("euler", &params, &recs, format, out)
}

#[derive(Debug, Serialize)]
struct OeisRow {
    sequence_id: String,
    status: MatchStatus,
    source: Option<String>,
    first_n: i64,
    computed_len: usize,
    shift: i64,
    prefix_len: usize,
    disagreement_n: Option<i64>,
    disagreement_computed: Option<i128>,
    disagreement_reference: Option<i128>,
}

fn fetch(id: &str, cache: Option<&Path>) -> Result<Reference> {
    let id = oeis::normalize_id(id)?;
    let name = oeis::bfile_name(&id)?;
    let url = format!("https://oeis.org/{id}/{name}");
    let text = ureq::get(&url)
        .timeout(Duration::from_secs(30))
        .call()
        .with_context(|| format!("fetching {url}"))?
        .into_string()?;
    let bfile = parse_bfile(&text)?;
    if let Some(dir) = cache {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(&name), &text)?;
    }
    Ok(Reference { id, source: Source::Online(url), bfile })
}

fn computed_values(a: &OeisArgs) -> Result<Vec<i128>> {
    let family = match a.family {
        FamilyArg::O => Family::O,
        FamilyArg::D => Family::D,
    };
    (a.n_min..=a.n_max)
        .into_par_iter()
        .map(|n| {
            Ok(match a.quantity {
                Quantity::Count => count_class(n, ClassSpec::exact(family, a.r, a.j)?)? as i128,
                Quantity::B => b_stat(n, a.r, a.j, Mode::Exact)? as i128,
                Quantity::BPrime => b_prime_stat(n, a.r, a.j, Mode::Exact)? as i128,
            })
        })
        .collect()
}

fn oeis_cmd(a: &OeisArgs, format: Format, out: Option<&Path>) -> Result<Status> {
    check_range(a.n_min, a.n_max)?;
    oeis::normalize_id(&a.id)?;
    let cache = oeis::cache_dir(a.oeis_cache_dir.as_deref());
    let mut reference = lookup_offline(&a.id, cache.as_deref())?;
    if reference.is_none() && a.online {
        match fetch(&a.id, cache.as_deref()) {
            Ok(r) => reference = Some(r),
            Err(e) => eprintln!("warning: {e:#}"),
        }
    }
    let values = computed_values(a)?;
    let rep = crosscheck(&a.id, &values, a.n_min as i64, reference.as_ref())?;
    let source = rep.source.as_ref().map(|s| match s {
        Source::Bundled => "bundled".to_string(),
        Source::Cache(p) => p.display().to_string(),
        Source::Online(url) => url.clone(),
    });
    let row = OeisRow {
        sequence_id: rep.sequence_id.clone(),
        status: rep.status,
        source,
        first_n: rep.first_n,
        computed_len: rep.computed_len,
        shift: rep.shift,
        prefix_len: rep.prefix_len,
        disagreement_n: rep.first_disagreement.as_ref().map(|d| d.n),
        disagreement_computed: rep.first_disagreement.as_ref().map(|d| d.computed),
        disagreement_reference: rep.first_disagreement.as_ref().map(|d| d.reference),
    };
    render::write_out(out, &render::records(format, render::meta("oeis", a)?, &[row])?)?;
    match rep.status {
        MatchStatus::Match => Ok(Status::Pass),
        MatchStatus::ReferenceUnavailable => {
            eprintln!("warning: reference {} unavailable offline; pass --online or --oeis-cache-dir", rep.sequence_id);
            Ok(Status::Pass)
        }
        MatchStatus::Mismatch => {
            if let Some(d) = &rep.first_disagreement {
                eprintln!("FAIL {} at n={}: computed {}, reference {}", rep.sequence_id, d.n, d.computed, d.reference);
            }
            Ok(Status::Fail)
        }
    }
}
