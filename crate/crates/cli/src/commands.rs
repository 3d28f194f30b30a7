use std::process::ExitCode;

use rmclass::{
    count_all, oracle, symmetry_check, tau_matrix, write_cells, AffineElement, Error, OracleTable, Provider,
    QuotientSpace, Result,
};

use crate::{CellArgs, Command, ProviderKind};

fn provider(kind: ProviderKind, file: Option<std::path::PathBuf>) -> Result<Provider> {
    match (kind, file) {
        (ProviderKind::Exhaustive, _) => Ok(Provider::Exhaustive),
        (ProviderKind::Canonical, _) => Ok(Provider::Canonical),
        (ProviderKind::Import, Some(path)) => Ok(Provider::Import(path)),
        (ProviderKind::Import, None) => Err(Error::InvalidParameters("--provider import needs --file".into())),
    }
}

impl CellArgs {
    fn provider(&self) -> Result<Provider> {
        provider(self.provider, self.file.clone())
    }
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Count { n, s, k, cells } => {
            let space = QuotientSpace::new(n, s, k)?;
            let result = count_all(n, &[space], &cells.provider()?, cells.seed)?.remove(0);
            println!("n={n}");
            println!("s={s}");
            println!("k={k}");
            println!("dimension={}", space.dimension());
            println!("provider={}", result.provider);
            println!("seed={}", cells.seed);
            println!("cells={}", result.cells);
            println!("elapsed_ms={}", result.elapsed.as_millis());
            println!("count={}", result.count);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_n,
            table,
            oracle: path,
            cells,
        } => {
            let source = match &path {
                Some(p) => OracleTable::parse(&std::fs::read_to_string(p)?)?,
                None => OracleTable::embedded(),
            };
            let selected = source.select(max_n, table.as_deref());
            let verdicts = oracle::verify(&selected, &cells.provider()?, cells.seed)?;
            let mut failed = 0usize;
            for v in &verdicts {
                let status = if v.passed() { "PASS" } else { "FAIL" };
                failed += usize::from(!v.passed());
                println!("{status} {} expected={} got={}", v.entry, v.entry.count, v.computed);
            }
            println!("total={}", verdicts.len());
            println!("passed={}", verdicts.len() - failed);
            println!("failed={failed}");
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Classes {
            n,
            file,
            provider: kind,
            seed,
        } => {
            let cells = provider(kind, None)?.cells(n, seed)?;
            let text = write_cells(n, &cells);
            match file {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    println!("n={n}");
                    println!("cells={}", cells.len());
                    println!("file={}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { element, s, k } => {
            let g: AffineElement = element.parse()?;
            let space = QuotientSpace::new(g.n(), s, k)?;
            let tau = tau_matrix(&g, space)?;
            let m = tau.matrix();
            println!("space={space}");
            println!("dimension={}", space.dimension());
            for r in 0..m.rows() {
                println!("row={}", m.row(r));
            }
            let rank = if m.rows() == 0 { 0 } else { m.add_identity()?.rank() };
            println!("rank_tau_plus_i={rank}");
            println!("fixed=2^{}", space.dimension() - rank);
            Ok(ExitCode::SUCCESS)
        }
        Command::Symmetry { n, cells } => {
            let pairs = symmetry_check(n, &cells.provider()?, cells.seed)?;
            let mut violations = 0usize;
            for p in &pairs {
                if !p.holds() {
                    violations += 1;
                    println!(
                        "VIOLATION space={} mirror={} count={} mirror_count={}",
                        p.space, p.mirror, p.count, p.mirror_count
                    );
                }
            }
            println!("pairs={}", pairs.len());
            println!("violations={violations}");
            Ok(if violations == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
