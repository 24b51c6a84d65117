//! Command-line surface: ingestion writes a store directory, every other
//! subcommand reads one.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lodchem::analytics::{coverage_report, render_table};
use lodchem::ingest::{load_manifest_dir, load_manifest_file};
use lodchem::linkpath::{enumerate_paths, execute_linkpaths, SchemaGraph, DEFAULT_MAX_LEN};
use lodchem::litxval::{
    cross_validate, load_literature, read_corpus, AssociationTemplates, CorpusIndex, Dictionary, EntityKind, Extractor,
};
use lodchem::sparql::run_query;
use lodchem::{Execution, Store};

use crate::api::{router, AppState};
use crate::params::{parse_entity, parse_source};

#[derive(Debug, Parser)]
#[command(name = "lodchem", version, about = "Linked chemogenomics data: load, query, link and validate")]
pub struct Cli {
    /// Run every fan-out on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load datasets described by manifests (files or directories of them).
    Ingest {
        #[arg(required = true)]
        manifests: Vec<PathBuf>,
        #[arg(long)]
        store: PathBuf,
    },
    /// Serve the read-only HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long)]
        store: PathBuf,
    },
    /// Evaluate a query read from a file, or stdin with `-`.
    Query {
        file: String,
        #[arg(long)]
        store: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Enumerate link paths between two classes, and run them if a store is given.
    Lpg {
        from: String,
        to: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Cross-validate two entities against the loaded literature.
    Validate {
        a: String,
        b: String,
        #[arg(long)]
        store: PathBuf,
    },
    /// Coverage table over sources given as NAME=pred, NAME=left,right or NAME=@query.rq.
    Coverage {
        #[arg(required = true, num_args = 2..)]
        sources: Vec<String>,
        #[arg(long)]
        store: PathBuf,
    },
    /// Extract dictionary mentions from a JSONL corpus; dictionaries are KIND=path.tsv.
    Extract {
        corpus: PathBuf,
        #[arg(required = true)]
        dicts: Vec<String>,
        /// Also add the literature graph to this store.
        #[arg(long)]
        store: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

fn open_store(dir: &Path) -> Result<Store> {
    Store::load_dir(dir).with_context(|| format!("loading store from {}", dir.display()))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::Ingest { manifests, store } => {
            let mut s = if store.join("graphs").exists() { open_store(&store)? } else { Store::new() };
            let mut failed = false;
            for m in &manifests {
                let reports = if m.is_dir() {
                    load_manifest_dir(&mut s, m)
                } else {
                    load_manifest_file(&mut s, m).map(|r| vec![r])
                }
                .with_context(|| format!("loading {}", m.display()))?;
                for r in reports {
                    writeln!(out, "{}", r.summary())?;
                    for e in &r.errors {
                        writeln!(out, "  row {}: {}", e.row, e.message)?;
                    }
                    failed |= !r.errors.is_empty();
                }
            }
            s.save_dir(&store).with_context(|| format!("saving store to {}", store.display()))?;
            writeln!(out, "{} statements in {}", s.len(), store.display())?;
            if failed {
                eprintln!("some rows were skipped");
            }
        }
        Command::Serve { port, host, store } => {
            let state = AppState::new(open_store(&store)?);
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async {
                let listener = tokio::net::TcpListener::bind((host.as_str(), port))
                    .await
                    .with_context(|| format!("binding {host}:{port}"))?;
                writeln!(out, "listening on http://{}", listener.local_addr()?)?;
                out.flush()?;
                axum::serve(listener, router(state))
                    .with_graceful_shutdown(async {
                        let _ = tokio::signal::ctrl_c().await;
                    })
                    .await?;
                Ok::<_, anyhow::Error>(())
            })?;
        }
        Command::Query { file, store, format } => {
            let text = if file == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(&file).with_context(|| format!("reading {file}"))?
            };
            let s = open_store(&store)?;
            let t = run_query(&s, &text)?;
            match format {
                Format::Tsv => write!(out, "{}", t.to_tsv())?,
                Format::Json => writeln!(out, "{}", t.to_json())?,
            }
        }
        Command::Lpg { from, to, max_len, store } => {
            let g = SchemaGraph::builtin();
            match store {
                None => {
                    let paths = enumerate_paths(&g, g.class(&from)?, g.class(&to)?, max_len)?;
                    writeln!(out, "{} paths", paths.len())?;
                    for p in paths {
                        writeln!(out, "{}", p.nodes.join(" -> "))?;
                    }
                }
                Some(dir) => {
                    let s = open_store(&dir)?;
                    let r = execute_linkpaths(&s, &g, &from, &to, max_len, exec)?;
                    writeln!(out, "{} paths, {} combined rows", r.runs.len(), r.rows.len())?;
                    for run in &r.runs {
                        let status = run.error.as_deref().map(|e| format!(" error: {e}")).unwrap_or_default();
                        writeln!(out, "{}\t{}{status}", run.path.nodes.join(" -> "), run.rows)?;
                    }
                }
            }
        }
        Command::Validate { a, b, store } => {
            let s = open_store(&store)?;
            let index = CorpusIndex::from_store(&s);
            if index.is_empty() {
                bail!("the store has no literature graph; run `extract --store` first");
            }
            let a = parse_entity(&a).map_err(anyhow::Error::msg)?;
            let b = parse_entity(&b).map_err(anyhow::Error::msg)?;
            let r = cross_validate(&s, &index, &AssociationTemplates::standard(), &a, &b)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
        }
        Command::Coverage { sources, store } => {
            let s = open_store(&store)?;
            let specs = sources
                .iter()
                .map(|x| parse_source(x))
                .collect::<Result<Vec<_>, _>>()
                .map_err(anyhow::Error::msg)?;
            let r = coverage_report(&s, &specs)?;
            write!(out, "{}", render_table(&[("records", &r)]))?;
            writeln!(out, "shared by all\t{}", r.intersection)?;
        }
        Command::Extract { corpus, dicts, store } => {
            let f = std::fs::File::open(&corpus).with_context(|| format!("opening {}", corpus.display()))?;
            let docs = read_corpus(std::io::BufReader::new(f))?;
            let mut dictionaries = Vec::new();
            for spec in &dicts {
                let Some((kind, path)) = spec.split_once('=') else {
                    bail!("dictionary must be KIND=path, got {spec:?}");
                };
                let kind: EntityKind = kind.parse().map_err(anyhow::Error::msg)?;
                let f = std::fs::File::open(path).with_context(|| format!("opening {path}"))?;
                dictionaries.push(Dictionary::from_tsv(kind, f)?);
            }
            let mentions = Extractor::new(&dictionaries).extract_corpus(&docs, exec);
            if let Some(dir) = store {
                let mut s = if dir.join("graphs").exists() { open_store(&dir)? } else { Store::new() };
                let added = load_literature(&mut s, &docs, &mentions)?;
                s.save_dir(&dir)?;
                eprintln!("{added} literature statements added to {}", dir.display());
            }
            writeln!(out, "pmid\tstart\tend\tkind\tterm\tentity")?;
            for m in &mentions {
                writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", m.pmid, m.start, m.end, m.kind, m.term, m.entity)?;
            }
        }
    }
    Ok(())
}
