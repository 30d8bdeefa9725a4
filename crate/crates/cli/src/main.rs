use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cornerhom::corners::{build_l, cellular_cohomology, FaceSubset};
use cornerhom::evaluator::{
    d1_check, d1_model, eval_hc, eval_hh_laurent, eval_hp, eval_quotient_and_traces, parse_manifest, random_d1_samples,
    s1_end_to_end, sheet_run, CosphereModel, HpVariant, Parsed, Sheet, SymbolModel, S1_WINDOWS,
};
use cornerhom::hochschild::{hochschild_complex, CircleRing, FiniteAlgebra, GradedAlgebra, Monomials, Window};
use cornerhom::poisson::{random_form, verify_identities, Patch};
use cornerhom::qlinalg::{parse_q, Q};
use cornerhom::spectral::barcode;
use cornerhom::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

/// Largest Hochschild degree the CLI will materialize.
const QMAX_BUDGET: usize = 5;

#[derive(Parser)]
#[command(name = "cornerhom", version, about = "Exact homology of symbol algebras and manifolds with corners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a manifest and print its face-lattice summary.
    Validate {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Laurent de Rham cohomology of M, or H_c of 𝓛(M) ∖ p⁻¹(X).
    Cohomology {
        #[arg(long)]
        manifest: PathBuf,
        /// Compute relative to the manifest's X.
        #[arg(long)]
        relative: bool,
        #[arg(long, value_enum, default_value_t = CohRoute::Both)]
        route: CohRoute,
    },
    /// Right-hand sides of the main theorems.
    Evaluate {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
        /// Largest degree for `hc`; defaults to `2 dim + 2`.
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// Hochschild homology dimensions of a builtin or a structure-constant algebra.
    Hochschild {
        #[arg(long, conflicts_with = "builtin")]
        algebra: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        weight: i64,
        #[arg(long, default_value_t = 2)]
        qmax: usize,
    },
    /// Pages of the order filtration of the S¹ symbol model.
    Spectral {
        #[arg(long, value_enum)]
        builtin: SpectralBuiltin,
        /// Page number; 0 prints E^∞.
        #[arg(long, default_value_t = 2)]
        page: i64,
        /// Stabilize the interior band over the default windows and sum both sheets.
        #[arg(long)]
        stabilize: bool,
    },
    /// Random checks of the Poisson calculus identities.
    PoissonCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Comma-separated exponents, one per boundary coordinate.
        #[arg(long, value_delimiter = ',')]
        c: Vec<i64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// χ ∘ b ∘ q against −√−1 δ ∘ χ on random antisymmetrized samples.
    D1Check {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CohRoute {
    Formula,
    Cellular,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Hp,
    Hh,
    Hc,
    Quotient,
    Traces,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Full,
    Order0,
    Laurent,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    /// Truncated symbols e^{imx}|ξ|^j on ξ > 0, window (1, 2, −4).
    S1Symbols,
    /// ℚ[x]
    Poly,
    /// ℚ[x, x⁻¹], pole bound 4
    Laurent,
    /// Trigonometric polynomials on the circle
    CircleRing,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectralBuiltin {
    S1Symbols,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    dim: usize,
    #[serde(default)]
    unit: Option<usize>,
    /// `table[i][j]` lists `[k, "p/q"]` terms of `e_i e_j`.
    table: Vec<Vec<Vec<(usize, String)>>>,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn manifest(path: &PathBuf) -> Result<Parsed> {
    parse_manifest(&read(path)?)
}

fn cosphere(p: &Parsed) -> Result<CosphereModel> {
    CosphereModel::new(p.manifold.clone(), p.assumptions)
}

fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join("\t"));
        out.push('\n');
    }
    out
}

fn degree_rows(v: &[usize]) -> Vec<Vec<String>> {
    v.iter().enumerate().map(|(q, d)| vec![q.to_string(), d.to_string()]).collect()
}

fn validate(path: &PathBuf) -> Result<String> {
    let p = manifest(path)?;
    let r = p.manifold.validate()?;
    let x: Vec<String> = p.x.faces.iter().map(|&f| p.manifold.face(f).id.clone()).collect();
    Ok(table(
        &["key", "value"],
        [
            vec!["name".into(), p.manifold.name.clone()],
            vec!["dim".into(), p.manifold.dim.to_string()],
            vec!["faces".into(), r.faces.to_string()],
            vec!["hyperfaces".into(), r.hyperfaces.to_string()],
            vec!["minimal_faces".into(), r.minimal_faces.to_string()],
            vec!["cells".into(), r.has_cells.to_string()],
            vec!["X".into(), x.join(",")],
        ],
    ))
}

fn cohomology(path: &PathBuf, relative: bool, route: CohRoute) -> Result<String> {
    let p = manifest(path)?;
    let m = &p.manifold;
    let x = if relative { p.x.clone() } else { FaceSubset::empty() };
    let formula = match route {
        CohRoute::Formula if relative => return Err(Error::input("the face formula computes absolute cohomology only")),
        CohRoute::Formula | CohRoute::Both if !relative => Some(m.laurent_cohomology_formula()?),
        _ => None,
    };
    let cellular = match route {
        CohRoute::Cellular | CohRoute::Both => Some(cellular_cohomology(m, &build_l(m)?, Some(&x))?),
        CohRoute::Formula => None,
    };
    if let (Some(a), Some(b)) = (&formula, &cellular) {
        if a != b {
            return Err(Error::defect(format!("face formula {a:?} disagrees with the glued space {b:?}")));
        }
    }
    let mut header = vec!["degree"];
    if formula.is_some() {
        header.push("formula");
    }
    if cellular.is_some() {
        header.push("cellular");
    }
    let rows = (0..=m.dim).map(|k| {
        let mut r = vec![k.to_string()];
        r.extend(formula.iter().chain(cellular.iter()).map(|v| v[k].to_string()));
        r
    });
    Ok(table(&header, rows))
}

fn evaluate(path: &PathBuf, theorem: Theorem, variant: Variant, m_max: Option<usize>) -> Result<String> {
    let p = manifest(path)?;
    let cm = cosphere(&p)?;
    Ok(match theorem {
        Theorem::Hp => {
            let v = match variant {
                Variant::Full => HpVariant::Full,
                Variant::Order0 => HpVariant::OrderZero,
                Variant::Laurent => HpVariant::Laurent,
            };
            let x = if v == HpVariant::Laurent { p.x.clone() } else { FaceSubset::empty() };
            let (even, odd) = eval_hp(&cm, v, &x)?;
            table(&["parity", "dim"], [vec!["even".into(), even.to_string()], vec!["odd".into(), odd.to_string()]])
        }
        Theorem::Hh => table(&["q", "dim"], degree_rows(&eval_hh_laurent(&cm, &p.x)?.dims)),
        Theorem::Hc => {
            let r = eval_hc(&cm, &p.x, m_max.unwrap_or(2 * cm.n() + 2))?;
            let rows = r.dims.iter().enumerate().map(|(m, d)| vec![m.to_string(), d.to_string(), r.checked.contains(&m).to_string()]);
            table(&["m", "dim", "direct_checked"], rows)
        }
        Theorem::Quotient => {
            let r = eval_quotient_and_traces(&cm, &p.x)?;
            for n in &r.notes {
                eprintln!("note: {n}");
            }
            table(&["q", "dim"], degree_rows(&r.quotient_hh))
        }
        Theorem::Traces => {
            let r = eval_quotient_and_traces(&cm, &FaceSubset::empty())?;
            table(
                &["key", "value"],
                [
                    vec!["trace_count".into(), r.trace_count.to_string()],
                    vec!["h_top".into(), r.h_top.to_string()],
                    vec!["asserted".into(), r.asserted.to_string()],
                ],
            )
        }
    })
}

fn load_algebra(path: &PathBuf) -> Result<FiniteAlgebra> {
    let f: AlgebraFile = serde_json::from_str(&read(path)?).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    let mut table = Vec::with_capacity(f.table.len());
    for (i, row) in f.table.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, terms) in row.iter().enumerate() {
            let mut t: Vec<(usize, Q)> = Vec::with_capacity(terms.len());
            for (k, c) in terms {
                t.push((*k, parse_q(c).ok_or_else(|| Error::input(format!("table[{i}][{j}]: bad rational {c}")))?));
            }
            r.push(t);
        }
        table.push(r);
    }
    FiniteAlgebra::new(f.name, f.dim, table, f.unit)
}

fn hh_dims<A: GradedAlgebra>(alg: &A, window: &Window, w: i64, qmax: usize) -> Result<Vec<usize>> {
    Ok(hochschild_complex(alg, window, w, qmax)?.homology_dims(qmax))
}

fn hochschild(algebra: Option<PathBuf>, builtin: Option<Builtin>, w: i64, qmax: usize) -> Result<String> {
    if qmax > QMAX_BUDGET {
        return Err(Error::budget(format!("--qmax {qmax} exceeds the budget of {QMAX_BUDGET}")));
    }
    let dims = match (algebra, builtin) {
        (Some(path), _) => {
            if w != 0 {
                return Err(Error::input("structure-constant algebras live in weight 0"));
            }
            hh_dims(&load_algebra(&path)?, &Window::finite(), 0, qmax)?
        }
        (None, Some(Builtin::S1Symbols)) => {
            let win = Window::symbol(1, 2, -4);
            hh_dims(&SymbolModel::for_window(Sheet::Plus, &win), &win, w, qmax)?
        }
        (None, Some(Builtin::Poly)) => hh_dims(&Monomials::polynomial(), &Window::nonnegative(w), w, qmax)?,
        (None, Some(Builtin::Laurent)) => hh_dims(&Monomials::laurent(), &Window::poles(w, 4), w, qmax)?,
        (None, Some(Builtin::CircleRing)) => hh_dims(&CircleRing::new(w.abs() + 4)?, &Window::poles(w, 4), w, qmax)?,
        (None, None) => return Err(Error::input("give --algebra or --builtin")),
    };
    Ok(table(&["q", "dim"], degree_rows(&dims)))
}

fn spectral(page: i64, stabilize: bool) -> Result<String> {
    if stabilize {
        let r = s1_end_to_end(&S1_WINDOWS)?;
        if !r.stable {
            return Err(Error::budget("interior band did not stabilize over the default windows"));
        }
        let rows = (0..3).map(|q| vec![q.to_string(), r.hh[q].to_string(), r.predicted[q].to_string()]);
        return Ok(table(&["q", "spectral", "predicted"], rows));
    }
    if page < 0 {
        return Err(Error::input("page must be 0 (E^∞) or positive"));
    }
    let mut rows = Vec::new();
    for sheet in [Sheet::Plus, Sheet::Minus] {
        let run = sheet_run(sheet, S1_WINDOWS[0])?;
        let win = Window::symbol(S1_WINDOWS[0].0, S1_WINDOWS[0].1, S1_WINDOWS[0].2);
        let dims = if page == 0 {
            run.einf.clone()
        } else {
            let m = SymbolModel::for_window(sheet, &win);
            barcode(&hochschild_complex(&m, &win, 0, 2)?.filtered).page_dims(page)
        };
        for ((k, h), d) in dims {
            if d > 0 && k + h <= 2 {
                rows.push(vec![format!("{sheet:?}").to_lowercase(), k.to_string(), h.to_string(), d.to_string()]);
            }
        }
    }
    Ok(table(&["sheet", "k", "h", "dim"], rows))
}

fn poisson_check(n: usize, k: usize, c: Vec<i64>, samples: usize, seed: u64) -> Result<String> {
    let p = Patch::new(n, k, c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms: Vec<_> = (0..samples).map(|_| random_form(&p, &mut rng)).collect();
    let r = verify_identities(&p, &forms)?;
    if !r.all_pass() {
        return Err(Error::defect(format!("identity failures: {r:?}")));
    }
    Ok(table(
        &["identity", "passed"],
        [
            ("samples", r.samples),
            ("delta_squared", r.delta_squared),
            ("d_squared", r.d_squared),
            ("star_involution", r.star_involution),
            ("conjugation", r.conjugation),
            ("homogeneity", r.homogeneity),
            ("star_bidegree", r.star_bidegree),
            ("routes_agree", r.routes_agree),
        ]
        .into_iter()
        .map(|(a, b)| vec![a.to_string(), b.to_string()]),
    ))
}

fn d1(samples: usize, seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_d1_samples(&mut rng, samples);
    let r = d1_check(&d1_model(), &s)?;
    let mut out = String::new();
    writeln!(out, "key\tvalue").unwrap();
    writeln!(out, "samples\t{}", r.samples).unwrap();
    writeln!(out, "passed\t{}", r.passed).unwrap();
    writeln!(out, "degenerate\t{}", r.degenerate).unwrap();
    Ok(out)
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Validate { manifest } => validate(&manifest),
        Command::Cohomology { manifest, relative, route } => cohomology(&manifest, relative, route),
        Command::Evaluate { manifest, theorem, variant, m_max } => evaluate(&manifest, theorem, variant, m_max),
        Command::Hochschild { algebra, builtin, weight, qmax } => hochschild(algebra, builtin, weight, qmax),
        Command::Spectral { builtin: SpectralBuiltin::S1Symbols, page, stabilize } => spectral(page, stabilize),
        Command::PoissonCheck { n, k, c, samples, seed } => poisson_check(n, k, c, samples, seed),
        Command::D1Check { samples, seed } => d1(samples, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cornerhom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
