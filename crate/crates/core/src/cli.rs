//! Command-line driver. Exit status 0 on success, 1 on domain errors, 2 on
//! usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache::CensusCache;
use crate::census::{
    find_reconstructions, known_pairs, reconstructibility_number, verify_invariant, ClassReport,
    Invariant,
};
use crate::deck::{
    compute_deck, count_j_vertices, deck_equal, derive_subdeck, Deck,
};
use crate::error::Error;
use crate::graph::Graph;
use crate::graph6::{from_graph6, parse_lines, to_graph6};
use crate::reconstruct::{phi_formula, reconstruct_degree_list, taylor_threshold, DegreeCounts};

const TSV_COLUMNS: &str = "\
TSV columns (--format tsv):
  deck, subdeck     header `k=<k> n=<n>`, then cardKey, multiplicity
  compare           k, verdict (EQUAL|DIFFERENT)
  degrees           degree, count
  phi               j, deck-side phi(j), formula-side phi(j)
  classes           digestHex, canonicalKey
  verify            firstKey, secondKey, witness
  reconstructions   canonicalKey
  rho               graph6, rho
  pairs             firstKey, secondKey, k, verdict, label
  threshold         l, g(l)";

#[derive(Debug, Parser)]
#[command(name = "kdeck", version, about = "k-decks of small graphs and reconstructibility censuses", after_help = TSV_COLUMNS)]
struct Cli {
    /// Directory for census caches
    #[arg(long, global = true, default_value = "./census-cache")]
    cache_dir: PathBuf,

    /// Worker threads for census work (results do not depend on it)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Summary)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Summary,
    Tsv,
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Graph in graph6
    #[arg(long = "g6")]
    g6: Option<String>,
    /// Named graph, e.g. cycle5+empty1 or claw_subdivided2
    #[arg(long)]
    named: Option<String>,
    /// File of graph6 lines, one graph per line
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the k-deck of a graph
    Deck {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short)]
        k: usize,
    },
    /// Compare the k-decks of two graphs
    Compare {
        #[arg(long)]
        g6a: Option<String>,
        #[arg(long)]
        g6b: Option<String>,
        #[arg(long)]
        named_a: Option<String>,
        #[arg(long)]
        named_b: Option<String>,
        #[arg(short)]
        k: usize,
    },
    /// Derive the (k-1)-deck from a k-deck
    Subdeck {
        #[command(flatten)]
        input: GraphInput,
        /// Deck file (`k=<k> n=<n>` header, then key<TAB>multiplicity)
        #[arg(long)]
        deck_file: Option<PathBuf>,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Degree list of a graph, or degree counts recovered from a k-deck
    Degrees {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        deck_file: Option<PathBuf>,
        /// Recover the degree list from the k-deck instead of reading it off
        #[arg(short)]
        k: Option<usize>,
        /// Counts a_i for i >= k as `i:a_i,...`; defaults to the graph's own
        /// counts, or to all zeros for a deck file
        #[arg(long)]
        high: Option<String>,
    },
    /// phi(j) from the deck and from the degree-count formula
    Phi {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short)]
        k: usize,
    },
    /// Partition all n-vertex graphs by k-deck
    Classes {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        /// Permit the 9-vertex census
        #[arg(long)]
        allow_n9: bool,
    },
    /// Check that each deck class agrees on an invariant
    Verify {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_parser = ["degree_list", "connectedness", "isomorphism"])]
        invariant: String,
        #[arg(long)]
        allow_n9: bool,
    },
    /// All n-vertex graphs with a given k-deck
    Reconstructions {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        deck_file: Option<PathBuf>,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Reconstructibility: the largest l with a unique (n-l)-deck
    Rho {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Known pairs of non-isomorphic graphs sharing an l-deck
    Pairs {
        #[arg(short)]
        l: usize,
        /// Also list the subdivided-claw pairs
        #[arg(long)]
        fixed: bool,
    },
    /// Order threshold g(l) for degree lists from the (n-l)-deck
    Threshold {
        #[arg(short)]
        l: u32,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DeckMismatch(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut buf = Vec::new();
    let result = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buf)),
            Err(e) => Err(Failure::Domain(Error::Parameter(e.to_string()))),
        },
        None => dispatch(&cli, &mut buf),
    };
    if let Err(e) = out.write_all(&buf) {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_graphs(input: &GraphInput) -> Outcome<Vec<Graph>> {
    match (&input.g6, &input.named, &input.file) {
        (Some(g6), None, None) => Ok(vec![from_graph6(g6.trim_end())?]),
        (None, Some(name), None) => Ok(vec![Graph::named(name)?]),
        (None, None, Some(path)) => Ok(parse_lines(&std::fs::read_to_string(path)?)?),
        (None, None, None) => Err(Failure::Usage("give one of --g6, --named or --file".into())),
        _ => Err(Failure::Usage("--g6, --named and --file are mutually exclusive".into())),
    }
}

fn one_graph(g6: &Option<String>, named: &Option<String>, side: &str) -> Outcome<Graph> {
    match (g6, named) {
        (Some(t), None) => Ok(from_graph6(t.trim_end())?),
        (None, Some(n)) => Ok(Graph::named(n)?),
        _ => Err(Failure::Usage(format!(
            "give exactly one of --g6{side} or --named-{side}"
        ))),
    }
}

fn read_deck(path: &PathBuf) -> Outcome<Deck> {
    Ok(Deck::from_text(&std::fs::read_to_string(path)?)?)
}

/// Decks named by a deck file or by graph inputs plus `-k`.
fn read_decks(input: &GraphInput, deck_file: &Option<PathBuf>, k: Option<usize>) -> Outcome<Vec<Deck>> {
    match (deck_file, k) {
        (Some(path), _) => {
            if input.g6.is_some() || input.named.is_some() || input.file.is_some() {
                return Err(Failure::Usage("--deck-file excludes graph inputs".into()));
            }
            Ok(vec![read_deck(path)?])
        }
        (None, Some(k)) => read_graphs(input)?
            .iter()
            .map(|g| compute_deck(g, k).map_err(Failure::from))
            .collect(),
        (None, None) => Err(Failure::Usage("graph inputs need -k".into())),
    }
}

fn parse_high(text: &str) -> Outcome<BTreeMap<usize, u64>> {
    let mut high = BTreeMap::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let parsed = part
            .split_once(':')
            .and_then(|(i, a)| Some((i.trim().parse().ok()?, a.trim().parse().ok()?)));
        let (i, a) = parsed.ok_or_else(|| Failure::Usage(format!("bad --high entry `{part}`")))?;
        high.insert(i, a);
    }
    Ok(high)
}

fn census_order(n: usize, allow_n9: bool) -> Outcome<()> {
    if n == 9 && !allow_n9 {
        return Err(Failure::Usage(
            "the 9-vertex census is opt-in; pass --allow-n9".into(),
        ));
    }
    Ok(())
}

fn write_deck(out: &mut dyn Write, deck: &Deck, format: Format) -> Outcome {
    match format {
        Format::Tsv => write!(out, "{}", deck.to_text())?,
        Format::Summary => {
            for (key, m) in deck.entries() {
                writeln!(out, "{key}\t{m}")?;
            }
            writeln!(
                out,
                "total={} distinct={} digest={}",
                deck.total(),
                deck.entries().len(),
                deck.digest()
            )?;
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Deck { input, k } => {
            for g in read_graphs(input)? {
                write_deck(out, &compute_deck(&g, *k)?, format)?;
            }
        }
        Command::Compare {
            g6a,
            g6b,
            named_a,
            named_b,
            k,
        } => {
            let a = one_graph(g6a, named_a, "a")?;
            let b = one_graph(g6b, named_b, "b")?;
            let equal = deck_equal(&compute_deck(&a, *k)?, &compute_deck(&b, *k)?)?;
            let verdict = if equal { "EQUAL" } else { "DIFFERENT" };
            match format {
                Format::Summary => writeln!(out, "{verdict}")?,
                Format::Tsv => writeln!(out, "{k}\t{verdict}")?,
            }
        }
        Command::Subdeck { input, deck_file, k } => {
            for deck in read_decks(input, deck_file, *k)? {
                write_deck(out, &derive_subdeck(&deck)?, format)?;
            }
        }
        Command::Degrees {
            input,
            deck_file,
            k,
            high,
        } => {
            let given = high.as_deref().map(parse_high).transpose()?;
            let mut results = Vec::new();
            if let Some(path) = deck_file {
                let deck = read_decks(input, &Some(path.clone()), None)?.remove(0);
                let n = deck.origin_order();
                let high = given.unwrap_or_else(|| (deck.card_size()..n).map(|i| (i, 0)).collect());
                results.push(reconstruct_degree_list(&deck, n, &high)?);
            } else {
                for g in read_graphs(input)? {
                    let counts = DegreeCounts::of(&g);
                    results.push(match k {
                        None => counts,
                        Some(k) => {
                            let deck = compute_deck(&g, *k)?;
                            let n = g.order();
                            let high = given.clone().unwrap_or_else(|| {
                                (*k..n).map(|i| (i, counts.counts()[i])).collect()
                            });
                            reconstruct_degree_list(&deck, n, &high)?
                        }
                    });
                }
            }
            for counts in results {
                match format {
                    Format::Summary => {
                        let list: Vec<String> = counts.degree_list().iter().map(|d| d.to_string()).collect();
                        writeln!(out, "({})", list.join(","))?;
                    }
                    Format::Tsv => {
                        for (i, a) in counts.counts().iter().enumerate() {
                            writeln!(out, "{i}\t{a}")?;
                        }
                    }
                }
            }
        }
        Command::Phi { input, k } => {
            for g in read_graphs(input)? {
                let deck = compute_deck(&g, *k)?;
                let counts = DegreeCounts::of(&g);
                let mut deck_side = Vec::new();
                let mut formula_side = Vec::new();
                for j in 0..*k {
                    deck_side.push(count_j_vertices(&deck, j)?);
                    formula_side.push(phi_formula(&counts, g.order(), *k, j)?);
                }
                match format {
                    Format::Summary => {
                        let show = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                        writeln!(
                            out,
                            "deck=({}) formula=({}) {}",
                            show(&deck_side),
                            show(&formula_side),
                            if deck_side == formula_side { "AGREE" } else { "DISAGREE" }
                        )?;
                    }
                    Format::Tsv => {
                        for j in 0..*k {
                            writeln!(out, "{j}\t{}\t{}", deck_side[j], formula_side[j])?;
                        }
                    }
                }
            }
        }
        Command::Classes { n, k, allow_n9 } => {
            census_order(*n, *allow_n9)?;
            let cache = CensusCache::new(&cli.cache_dir);
            let report = cache.classes(&cache.family(*n)?, *k)?;
            write!(out, "{}", emit_report(&report, format))?;
        }
        Command::Verify {
            n,
            k,
            invariant,
            allow_n9,
        } => {
            census_order(*n, *allow_n9)?;
            let invariant: Invariant = invariant.parse()?;
            let cache = CensusCache::new(&cli.cache_dir);
            let report = cache.classes(&cache.family(*n)?, *k)?;
            write!(out, "{}", emit_report(&verify_invariant(&report, invariant), format))?;
        }
        Command::Reconstructions { input, deck_file, k } => {
            for deck in read_decks(input, deck_file, *k)? {
                let found = find_reconstructions(&deck, deck.origin_order())?;
                if format == Format::Summary {
                    writeln!(out, "found={}", found.len())?;
                }
                for key in found {
                    writeln!(out, "{key}")?;
                }
            }
        }
        Command::Rho { input } => {
            for g in read_graphs(input)? {
                let rho = reconstructibility_number(&g)?;
                match format {
                    Format::Summary => writeln!(out, "{rho}")?,
                    Format::Tsv => writeln!(out, "{}\t{rho}", to_graph6(&g))?,
                }
            }
        }
        Command::Pairs { l, fixed } => {
            for p in known_pairs(*l, *fixed)? {
                let (a, b) = (crate::canonical_key(&p.first), crate::canonical_key(&p.second));
                match format {
                    Format::Summary => writeln!(out, "{}: k={} EQUAL ({a}, {b})", p.label, p.k)?,
                    Format::Tsv => writeln!(out, "{a}\t{b}\t{}\tEQUAL\t{}", p.k, p.label)?,
                }
            }
        }
        Command::Threshold { l } => {
            let g = taylor_threshold(*l)?;
            match format {
                Format::Summary => writeln!(out, "g({l}) = {g:.6}")?,
                Format::Tsv => writeln!(out, "{l}\t{g}")?,
            }
        }
    }
    Ok(())
}

/// Deterministic text for a class report.
///
/// Summary: one line `n=<n> k=<k> classes=<c> violations=<v>` (or
/// `shared=<s>` counting non-singleton classes when no invariant was
/// checked), followed by one tab-separated line per violation. TSV: a header
/// line, then one row per violation or per class member.
pub fn emit_report(report: &ClassReport, format: Format) -> String {
    let mut out = String::new();
    match (format, report.invariant_checked) {
        (Format::Summary, Some(_)) => {
            out.push_str(&format!(
                "n={} k={} classes={} violations={}\n",
                report.n,
                report.k,
                report.classes.len(),
                report.violations.len()
            ));
            for v in &report.violations {
                out.push_str(&format!("{}\t{}\t{}\n", v.first, v.second, v.witness));
            }
        }
        (Format::Summary, None) => {
            let shared = report.classes.iter().filter(|c| c.members.len() > 1).count();
            out.push_str(&format!(
                "n={} k={} classes={} shared={}\n",
                report.n,
                report.k,
                report.classes.len(),
                shared
            ));
        }
        (Format::Tsv, Some(_)) => {
            out.push_str("first\tsecond\twitness\n");
            for v in &report.violations {
                out.push_str(&format!("{}\t{}\t{}\n", v.first, v.second, v.witness));
            }
        }
        (Format::Tsv, None) => {
            out.push_str("digest\tkey\n");
            let mut rows: Vec<_> = report
                .classes
                .iter()
                .flat_map(|c| c.members.iter().map(move |m| (c.digest, m)))
                .collect();
            rows.sort();
            for (digest, key) in rows {
                out.push_str(&format!("{digest}\t{key}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_report(invariant: Option<Invariant>) -> ClassReport {
        ClassReport {
            n: 0,
            k: 0,
            classes: Vec::new(),
            invariant_checked: invariant,
            violations: Vec::new(),
        }
    }

    #[test]
    fn empty_reports_are_header_only() {
        assert_eq!(
            emit_report(&empty_report(Some(Invariant::DegreeList)), Format::Tsv),
            "first\tsecond\twitness\n"
        );
        assert_eq!(emit_report(&empty_report(None), Format::Tsv), "digest\tkey\n");
        assert_eq!(
            emit_report(&empty_report(Some(Invariant::Connectedness)), Format::Summary),
            "n=0 k=0 classes=0 violations=0\n"
        );
    }

    #[test]
    fn high_count_parsing() {
        assert_eq!(parse_high("3:1,4:0").ok(), Some(BTreeMap::from([(3, 1), (4, 0)])));
        assert!(parse_high("3=1").is_err());
        assert_eq!(parse_high("").ok(), Some(BTreeMap::new()));
    }
}
