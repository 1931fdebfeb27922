use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use coxmfd::action::{certify, is_torsion_free, orbits, orientability, parse_action, verify_action, PermutationAction};
use coxmfd::euler::{euler_characteristic, lookup_simplex_volume, manifold_invariants, serre_sum, SymbolicVolume};
use coxmfd::gram::{gram_matrix, is_cofinite_simplex, signature, signature_exact, CValues, DEFAULT_TOL};
use coxmfd::roots::{fixed_roots, parse_word, root_action, root_system, element_order};
use coxmfd::search::{search_torsion_free, SearchConfig};
use coxmfd::symbol::{classify, lcm_finite_orders, parse_symbol, CoxeterSymbol, FiniteType};
use coxmfd::torsion::inventory;

#[derive(Parser)]
#[command(name = "coxmfd", version, about = "Hyperbolic manifolds from Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a symbol and report the group order.
    Classify { symbol: PathBuf },
    /// Gram matrix, signature and cofiniteness.
    Gram {
        symbol: PathBuf,
        /// Value for a dotted edge: `--c a b value`.
        #[arg(long = "c", num_args = 3, value_names = ["A", "B", "VALUE"], allow_hyphen_values = true)]
        c: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Euler characteristic, lcm of finite orders and the Serre sum.
    Euler {
        symbol: PathBuf,
        #[arg(long)]
        index: Option<BigUint>,
        #[arg(long)]
        dim: Option<usize>,
        /// Simplex covolume as coefficient and constant, e.g. `7/1536 zeta(3)`.
        #[arg(long, num_args = 2, value_names = ["COEFF", "CONST"])]
        simplex_volume: Vec<String>,
    },
    /// Prime-order torsion representatives.
    Torsion { symbol: PathBuf },
    /// Root system of a finite type, optionally the element of a word.
    Roots {
        #[arg(value_name = "TYPE")]
        ty: String,
        #[arg(long)]
        word: Option<String>,
    },
    /// Check an action against its symbol.
    Verify { symbol: PathBuf, action: PathBuf },
    /// Full manifold certificate.
    Certify {
        symbol: PathBuf,
        action: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["COEFF", "CONST"])]
        simplex_volume: Vec<String>,
    },
    /// Search for transitive torsion-free actions.
    Search {
        symbol: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        orientable: bool,
        #[arg(long, default_value_t = 10_000_000)]
        budget_nodes: u64,
        #[arg(long, default_value_t = 600)]
        budget_seconds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        max_solutions: usize,
        /// Directory for solution files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Check,
}

type Outcome = Result<Vec<String>, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_symbol(path: &Path) -> Result<CoxeterSymbol, Failure> {
    parse_symbol(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_action(path: &Path, sym: &CoxeterSymbol) -> Result<PermutationAction, Failure> {
    parse_action(&read(path)?, sym).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn simplex_volume(args: &[String]) -> Result<Option<SymbolicVolume>, Failure> {
    match args {
        [] => Ok(None),
        [c, k] => SymbolicVolume::parse(c, k).map(Some).map_err(usage),
        _ => Err(Failure::Usage("--simplex-volume takes a coefficient and a constant".into())),
    }
}

fn run_classify(path: &Path) -> Outcome {
    let sym = load_symbol(path)?;
    let c = classify(&sym);
    let order = c.order().map_or("infinite".to_string(), |o| o.to_string());
    Ok(vec![format!("type={} order={order}", c.type_string())])
}

fn run_gram(path: &Path, c: &[String], tol: f64) -> Outcome {
    let sym = load_symbol(path)?;
    let mut cv = CValues::new();
    for t in c.chunks(3) {
        let idx = |n: &str| sym.generator_index(n).ok_or_else(|| Failure::Usage(format!("unknown generator {n}")));
        let v: f64 = t[2].parse().map_err(|_| Failure::Usage(format!("bad value {}", t[2])))?;
        cv.insert((idx(&t[0])?, idx(&t[1])?), v);
    }
    let g = gram_matrix(&sym, &cv).map_err(usage)?;
    let numeric = signature(&g, tol);
    let exact = signature_exact(&g);
    let sig = exact.as_ref().unwrap_or(&numeric);
    let (neg, pos, zero) = sig.triple();
    let mut out = vec![format!("signature={sig} exact={} hyperbolic={}", exact.is_some(), neg == 1 && zero == 0 && pos > 0)];
    let cof = is_cofinite_simplex(&sym, None);
    let ideal: Vec<String> = cof.ideal_vertices.iter().map(|s| sym.subset_names(*s).join(",")).collect();
    out.push(format!("cofinite={:?} ideal_vertices={}", cof.status, ideal.len()).to_lowercase());
    for (i, row) in g.rows_text().iter().enumerate() {
        out.push(format!("row.{}={}", i + 1, row.join(" ")));
    }
    Ok(out)
}

fn run_euler(path: &Path, index: Option<BigUint>, dim: Option<usize>, sv: &[String]) -> Outcome {
    let sym = load_symbol(path)?;
    let chi = euler_characteristic(&sym);
    let mut out = vec![format!("chi={chi} lcm={} serre={}", lcm_finite_orders(&sym), serre_sum(&sym))];
    if let Some(index) = index {
        let dim = dim.unwrap_or(sym.rank().saturating_sub(1));
        let sv = match simplex_volume(sv)? {
            Some(v) => Some(v),
            None if dim % 2 == 1 => lookup_simplex_volume(&sym),
            None => None,
        };
        let m = manifold_invariants(&chi, &index, dim, sv.as_ref()).map_err(usage)?;
        out.push(format!("index={index} dim={dim} chi_m={} volume={} volume_approx={:e}", m.euler, m.volume, m.volume.approx));
    }
    Ok(out)
}

fn run_torsion(path: &Path) -> Outcome {
    let sym = load_symbol(path)?;
    let inv = inventory(&sym).map_err(usage)?;
    let primes: Vec<String> = inv.primes().iter().map(u64::to_string).collect();
    let mut out = vec![format!("primes={} classes={}", primes.join(","), inv.entries.len())];
    if !inv.unvalidated.is_empty() {
        let t: Vec<String> = inv.unvalidated.iter().map(FiniteType::to_string).collect();
        out.push(format!("unvalidated={}", t.join(",")));
    }
    out.extend(inv.lines(&sym));
    Ok(out)
}

fn run_roots(ty: &str, word: Option<&str>) -> Outcome {
    let t: FiniteType = ty.parse().map_err(usage)?;
    let mut out = Vec::new();
    match root_system(t) {
        Ok(rs) => {
            let positive = (0..rs.len()).filter(|&r| rs.is_positive(r)).count();
            out.push(format!("type={t} dim={} roots={} positive={positive} order={}", rs.dim(), rs.len(), t.order()));
        }
        Err(_) => out.push(format!("type={t} order={}", t.order())),
    }
    if let Some(w) = word {
        let w = parse_word(w).ok_or_else(|| Failure::Usage(format!("bad word `{w}`")))?;
        let g = root_action(t).map_err(usage)?.word_to_element(&w).map_err(usage)?;
        out.push(format!("element_order={} fixed_roots={}", element_order(&g), fixed_roots(&g)));
    }
    Ok(out)
}

fn run_verify(sym_path: &Path, act_path: &Path) -> Outcome {
    let sym = load_symbol(sym_path)?;
    let a = load_action(act_path, &sym)?;
    let relators = verify_action(&a, &sym);
    let orbs = orbits(&a);
    let mut out = vec![format!("degree={} orbits={}", a.degree(), orbs.orbits.len())];
    out.push(match &relators {
        Ok(()) => "check.relators=pass".to_string(),
        Err(v) => format!("check.relators=fail:{}", v.describe(&sym)),
    });
    let mut ok = relators.is_ok();
    if ok {
        let inv = inventory(&sym).map_err(usage)?;
        let r = is_torsion_free(&a, &inv);
        out.push(format!("torsion_free={}", r.torsion_free()));
        let o: Vec<String> = orientability(&a).iter().map(bool::to_string).collect();
        out.push(format!("orientable={}", o.join(",")));
        ok = orbs.is_transitive();
    }
    out.push(format!("transitive={}", orbs.is_transitive()));
    if ok {
        Ok(out)
    } else {
        print_lines(&out);
        Err(Failure::Check)
    }
}

fn run_certify(sym_path: &Path, act_path: &Path, dim: Option<usize>, sv: &[String]) -> Outcome {
    let sym = load_symbol(sym_path)?;
    let a = load_action(act_path, &sym)?;
    let sv = simplex_volume(sv)?;
    let cert = certify(&sym, &a, dim, sv.as_ref());
    let lines = cert.lines();
    if cert.valid {
        Ok(lines)
    } else {
        for c in cert.failures() {
            eprintln!("check {} failed{}", c.name, c.witness.as_ref().map_or(String::new(), |w| format!(": {w}")));
        }
        print_lines(&lines);
        Err(Failure::Check)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    path: &Path,
    degree: usize,
    orientable: bool,
    budget_nodes: u64,
    budget_seconds: u64,
    seed: u64,
    max_solutions: usize,
    out_dir: Option<&Path>,
) -> Outcome {
    let sym = load_symbol(path)?;
    let cfg = SearchConfig {
        degree,
        max_nodes: budget_nodes,
        max_time: Duration::from_secs(budget_seconds),
        orientable,
        seed,
        max_solutions,
    };
    let r = search_torsion_free(&sym, &cfg).map_err(usage)?;
    let mut out = vec![format!(
        "found={} exhausted={} budget_hit={} lcm={} lcm_rejected={} nodes={}",
        r.actions.len(),
        r.exhausted,
        r.budget_hit,
        r.lcm,
        r.rejected_by_lcm,
        r.nodes
    )];
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(usage)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("action");
        for (i, a) in r.actions.iter().enumerate() {
            let mut a = a.clone();
            a.name = format!("{stem}_{degree}_{}", i + 1);
            if a.symbol_name.is_none() {
                a.symbol_name = Some("gamma".into());
            }
            let file = dir.join(format!("{}.act", a.name));
            fs::write(&file, a.emit()).map_err(usage)?;
            out.push(format!("solution.{}={}", i + 1, file.display()));
        }
    }
    if r.actions.is_empty() {
        print_lines(&out);
        return Err(Failure::Check);
    }
    Ok(out)
}

fn print_lines(lines: &[String]) {
    for l in lines {
        println!("{l}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { symbol } => run_classify(&symbol),
        Command::Gram { symbol, c, tol } => run_gram(&symbol, &c, tol),
        Command::Euler { symbol, index, dim, simplex_volume } => run_euler(&symbol, index, dim, &simplex_volume),
        Command::Torsion { symbol } => run_torsion(&symbol),
        Command::Roots { ty, word } => run_roots(&ty, word.as_deref()),
        Command::Verify { symbol, action } => run_verify(&symbol, &action),
        Command::Certify { symbol, action, dim, simplex_volume } => run_certify(&symbol, &action, dim, &simplex_volume),
        Command::Search { symbol, degree, orientable, budget_nodes, budget_seconds, seed, max_solutions, out } => {
            run_search(&symbol, degree, orientable, budget_nodes, budget_seconds, seed, max_solutions, out.as_deref())
        }
    };
    match result {
        Ok(lines) => {
            print_lines(&lines);
            ExitCode::SUCCESS
        }
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
