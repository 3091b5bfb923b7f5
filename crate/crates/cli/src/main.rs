use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reg235::checks;
use reg235::families::families;
use reg235::frobcount::{self, brute_force_triple_count, triple_count};
use reg235::ineq::{self, diff_table24, golden_table24, table_24, verify_prop22_all, SubgroupData};
use reg235::rootsys::TypeLabel;
use reg235::tablegen::generate_all;
use reg235::torsion::{Torsion, TripleReport};
use reg235::weylchar::{group, DataSource};
use reg235::{Error, Result};

#[derive(Parser)]
#[command(name = "reg235", version, about = "235-triples, Weyl group families and triple counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Directory holding E6.tbl, E7.tbl and E8.tbl (overrides REG235_DATA_DIR).
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Level {
    Fast,
    Full,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Scope {
    Prop22Regular,
    Prop22All,
    Dualities,
    Orthogonality,
    FrobeniusOracle,
}

#[derive(Subcommand)]
enum Command {
    /// List torsion classes of one order, or all 235-triples.
    Classify {
        group: String,
        /// Only list classes with g^n = 1 for this n.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        regular_only: bool,
    },
    /// Family table of E8 at its regular triple, checked against the reference copy.
    Table24,
    /// Run a verification scope on a Weyl group (or a finite group `<name>-group`).
    Verify {
        group: String,
        #[arg(value_enum)]
        scope: Scope,
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        verify_level: Level,
        #[arg(long)]
        regular_only: bool,
    },
    /// Regenerate the exceptional character tables into a directory.
    GenTables {
        dir: PathBuf,
        /// Ranks to generate, in order.
        #[arg(long, value_delimiter = ',', default_values_t = [6usize, 7, 8])]
        ranks: Vec<usize>,
    },
}

struct Out {
    buf: String,
    failed: bool,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::invariant(format!("JSON encoding: {e}")))
}

fn parse_label(s: &str) -> Result<TypeLabel> {
    let l: TypeLabel = s
        .parse()
        .map_err(|_| Error::Usage(format!("cannot parse group label {s:?}")))?;
    if !l.is_simple() {
        return Err(Error::Usage(format!("{s} is not a simple type")));
    }
    Ok(l)
}

fn pipe_types(t: &TripleReport) -> String {
    t.triple_types
        .iter()
        .map(|x| x.parse::<TypeLabel>().map(|l| l.to_string()).unwrap_or_else(|_| x.clone()))
        .collect::<Vec<_>>()
        .join("|")
}

fn classify(out: &mut Out, fmt: Format, group: &str, order: Option<u32>, regular_only: bool) -> Result<()> {
    let label = parse_label(group)?;
    let torsion = Torsion::new(&label)?;
    if let Some(n) = order {
        let classes = torsion.classes(n)?;
        match fmt {
            Format::Json => out.line(json(&classes)?),
            Format::Tsv => {
                out.line("kac\torder\tcentralizer\tnu\tstabilizer");
                for c in &classes {
                    let kac: Vec<String> = c.kac.iter().map(u32::to_string).collect();
                    out.line(format!("{}\t{}\t{}\t{}\t{}", kac.join(","), c.exact_order, c.centralizer, c.nu, c.stabilizer));
                }
            }
            Format::Text => {
                out.line(format!("{} elements with g^{n} = 1: {} classes", label.compact(), classes.len()));
                for c in &classes {
                    let kac: Vec<String> = c.kac.iter().map(u32::to_string).collect();
                    out.line(format!(
                        "  kac ({})  order {}  centralizer {}  nu {}  N_n {}",
                        kac.join(","),
                        c.exact_order,
                        c.centralizer,
                        c.nu,
                        c.stabilizer
                    ));
                }
            }
        }
        return Ok(());
    }
    let list = torsion.triples()?;
    let shown: Vec<(usize, &TripleReport)> = list
        .reports
        .iter()
        .enumerate()
        .filter(|(_, t)| t.regular || !regular_only)
        .collect();
    match fmt {
        Format::Json => {
            let v: Vec<&TripleReport> = shown.iter().map(|(_, t)| *t).collect();
            out.line(json(&v)?);
        }
        Format::Tsv => {
            out.line("index\ttypes\tdefect\tregular\tdegenerate\tcount\tiota");
            for (i, t) in &shown {
                out.line(format!(
                    "{i}\t{}\t{}\t{}\t{}\t{}\t{}",
                    pipe_types(t),
                    t.defect,
                    t.regular,
                    t.degenerate,
                    t.count,
                    t.iota_partner_index
                ));
            }
        }
        Format::Text => {
            out.line(format!(
                "{}: {} 235-triples, {} regular",
                label.compact(),
                list.reports.len(),
                list.regular().count()
            ));
            for (i, t) in &shown {
                let mut flags = vec![if t.regular { "regular" } else { "non-regular" }];
                if t.degenerate {
                    flags.push("degenerate");
                }
                out.line(format!(
                    "  #{i:<6} type {:<28} defect {:<3} count {:<5} iota #{}  {}",
                    t.types_compact(),
                    t.defect,
                    t.count.to_string(),
                    t.iota_partner_index,
                    flags.join(" ")
                ));
            }
        }
    }
    Ok(())
}

fn table24(out: &mut Out, fmt: Format, src: &DataSource) -> Result<()> {
    let lines = table_24(src)?;
    let golden = golden_table24()?;
    match fmt {
        Format::Json => out.line(json(&lines)?),
        Format::Tsv => lines.iter().for_each(|l| out.line(l.tsv())),
        Format::Text => lines.iter().for_each(|l| out.line(l.to_string())),
    }
    let diff = diff_table24(&golden, &lines);
    if !diff.is_empty() {
        eprintln!("table differs from the reference copy ({} computed, {} reference lines):", lines.len(), golden.len());
        eprint!("{diff}");
        out.failed = true;
    }
    Ok(())
}

fn report(out: &mut Out, ok: bool, what: String) {
    out.line(format!("{} {what}", if ok { "PASS" } else { "FAIL" }));
    out.failed |= !ok;
}

fn verify_prop22(out: &mut Out, fmt: Format, label: &TypeLabel, regular_only: bool, src: &DataSource) -> Result<()> {
    let (reports, skipped) = verify_prop22_all(label, regular_only, src)?;
    if fmt == Format::Json {
        out.line(json(&serde_json::json!({
            "group": label.compact(),
            "reports": reports,
            "skipped": skipped,
        }))?);
    }
    for r in &reports {
        let eq_a: Vec<String> = r.families.iter().filter(|c| c.lhs_a == c.rhs_a).map(|c| format!("({},{})", c.degree, c.a)).collect();
        let eq_b: Vec<String> = r.families.iter().filter(|c| c.lhs_b == c.rhs_b).map(|c| format!("({},{})", c.degree, c.a)).collect();
        if fmt != Format::Json {
            report(
                out,
                r.passed(),
                format!(
                    "prop22 {} ({}) {}: {} families, equality in (a) at [{}], in (b) at [{}]",
                    r.group,
                    r.triple_types.join(","),
                    if r.regular { "regular" } else { "non-regular" },
                    r.families.len(),
                    eq_a.join(" "),
                    eq_b.join(" ")
                ),
            );
            for f in &r.falsifications {
                out.line(format!("  falsification {}", json(f)?.replace('\n', " ")));
            }
        } else {
            out.failed |= !r.passed();
        }
    }
    for t in &skipped {
        let msg = format!("SKIP prop22 {} {}: conjectural, skipped", t.group, t.types_compact());
        if fmt == Format::Json {
            eprintln!("{msg}");
        } else {
            out.line(msg);
        }
    }
    if !skipped.is_empty() {
        eprintln!("warning: {} triples outside the hypothesis were skipped", skipped.len());
    }
    Ok(())
}

fn verify_dualities(out: &mut Out, label: &TypeLabel, src: &DataSource) -> Result<()> {
    let fs = families(label, src)?;
    let n = checks::dualities(&fs)?;
    report(out, true, format!("dualities {}: {n} character and family identities", label.compact()));
    let torsion = Torsion::new(label)?;
    let list = torsion.triples()?;
    for t in list.regular() {
        for k in 0..3 {
            let c = list.class(t, k);
            let sub = torsion.centralizer(&c.kac)?;
            let data = SubgroupData::new(&fs.group, ineq::fusion(&fs.group, &sub, src)?)?;
            data.check_duality(&fs.group)?;
            let mut fam_ok = true;
            for f in 0..fs.len() {
                let (a_n, _) = ineq::family_subgroup_invariants(&fs, f, &data);
                let (_, ap_dual) = ineq::family_subgroup_invariants(&fs, fs.dual(f)?, &data);
                fam_ok &= a_n + ap_dual == data.nu();
            }
            report(
                out,
                fam_ok,
                format!("dualities {} W_{} = W({}) of {}", label.compact(), [2, 3, 5][k], sub.label.compact(), t.types_compact()),
            );
        }
    }
    Ok(())
}

fn verify_orthogonality(out: &mut Out, label: &TypeLabel, level: Level, src: &DataSource) -> Result<()> {
    let g = group(label, src)?;
    checks::orthogonality(&g)?;
    report(out, true, format!("orthogonality {}: {} characters", label.compact(), g.num_chars()));
    checks::poincare_identity(&g)?;
    report(out, true, format!("poincare {}", label.compact()));
    if level == Level::Full && g.order() <= 50_000 {
        checks::matches_brute_force(&g, 50_000)?;
        report(out, true, format!("enumeration {}: table equals the enumerated table", label.compact()));
    }
    Ok(())
}

fn verify_frobenius(out: &mut Out, name: &str) -> Result<()> {
    let t = frobcount::builtin(name)?;
    let e = frobcount::elements(&t)?;
    let k = t.classes.len();
    let mut mismatches = 0;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let formula = triple_count(&t, a, b, c)?;
                let brute = brute_force_triple_count(&e, a, b, c);
                if formula != brute {
                    mismatches += 1;
                    out.line(format!(
                        "  mismatch ({}, {}, {}): character sum {formula}, enumeration {brute}",
                        t.classes[a].name, t.classes[b].name, t.classes[c].name
                    ));
                }
            }
        }
    }
    report(out, mismatches == 0, format!("frobenius-oracle {}: {} class triples, {mismatches} mismatches", t.name, k * k * k));
    Ok(())
}

fn verify(out: &mut Out, fmt: Format, g: &str, scope: Scope, level: Level, regular_only: bool, src: &DataSource) -> Result<()> {
    if scope == Scope::FrobeniusOracle {
        return verify_frobenius(out, g.strip_suffix("-group").unwrap_or(g));
    }
    let label = parse_label(g)?;
    if level == Level::Full {
        let grp = group(&label, src)?;
        checks::orthogonality(&grp)?;
        checks::poincare_identity(&grp)?;
    }
    match scope {
        Scope::Prop22Regular => verify_prop22(out, fmt, &label, true, src),
        Scope::Prop22All => verify_prop22(out, fmt, &label, regular_only, src),
        Scope::Dualities => verify_dualities(out, &label, src),
        Scope::Orthogonality => verify_orthogonality(out, &label, level, src),
        Scope::FrobeniusOracle => unreachable!(),
    }
}

fn run(cli: Cli) -> Result<Out> {
    let src = DataSource::resolve(cli.data_dir.as_deref());
    let mut out = Out {
        buf: String::new(),
        failed: false,
    };
    match cli.command {
        Command::Classify {
            group,
            order,
            regular_only,
        } => classify(&mut out, cli.format, &group, order, regular_only)?,
        Command::Table24 => table24(&mut out, cli.format, &src)?,
        Command::Verify {
            group,
            scope,
            verify_level,
            regular_only,
        } => verify(&mut out, cli.format, &group, scope, verify_level, regular_only, &src)?,
        Command::GenTables { dir, ranks } => generate_all(&dir, &ranks, |m| eprintln!("{m}"))?,
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.buf.as_bytes());
            ExitCode::from(if out.failed { 3 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
