use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mcluster::cluster::{ClusterModel, Models};
use mcluster::derived::{hom_orbit, Window};
use mcluster::endo::{endo_dims, factor_dims, verify_factor_theorem};
use mcluster::localise::localise_object;
use mcluster::quiver::{parse_quiver, positive_roots, Quiver};
use mcluster::verify::{run_verify_all, Scope, Status, VerifyOptions};
use mcluster::Error;

/// Higher cluster categories of Dynkin quivers.
#[derive(Parser)]
#[command(name = "mcluster", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// The m of C^m_H = D^b(H)/τ⁻¹[m].
    #[arg(long, global = true, default_value_t = 1)]
    m: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Shift window `LO:HI` of the derived model.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<Window>,
    /// Cap on the number of maximal m-rigid objects enumerated.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_cliques: usize,
    /// Include elapsed time in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots of the quiver.
    Roots { quiver: String },
    /// Vertices, arrows and meshes of the AR quiver of mod H.
    ArQuiver { quiver: String },
    /// The fundamental domain of C^m_H.
    Fd { quiver: String },
    /// Hom dimensions between two objects, in D and in C^m_H.
    Hom {
        quiver: String,
        x: String,
        y: String,
    },
    /// All maximal m-rigid objects.
    Enumerate { quiver: String },
    /// Complements of an almost complete m-rigid object.
    Complements {
        quiver: String,
        #[arg(long)]
        object: String,
        /// Summand to delete from the object first.
        #[arg(long)]
        drop: Option<String>,
    },
    /// Localise a maximal m-rigid object at one of its summands.
    Localise {
        quiver: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        at: String,
    },
    /// Endomorphism algebra of an m-rigid object.
    Endo {
        quiver: String,
        #[arg(long)]
        object: String,
        /// Also compare Γ/ΓeΓ with the localised algebra at this summand.
        #[arg(long)]
        factor_at: Option<String>,
    },
    /// Exhaustive verification suites.
    Verify {
        #[arg(value_enum)]
        scope: VerifyScope,
        quiver: String,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum VerifyScope {
    All,
    Cluster,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: i32 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i32 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err("LO exceeds HI".into());
    }
    Ok(Window { lo, hi })
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_) | Error::WindowOverflow { .. } | Error::WindowTooSmall(_) => EXIT_CAP,
        Error::Inconsistent(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn load_quiver(arg: &str) -> mcluster::Result<Quiver> {
    match Quiver::preset(arg) {
        Ok(q) => Ok(q),
        Err(e) if !Path::new(arg).exists() => Err(e),
        Err(_) => {
            let text = std::fs::read_to_string(arg)
                .map_err(|e| Error::InvalidArgument(format!("{arg}: {e}")))?;
            parse_quiver(&text)
        }
    }
}

struct Ctx {
    g: Global,
}

impl Ctx {
    fn model(&self, q: &Quiver) -> mcluster::Result<Arc<ClusterModel>> {
        let window = self.g.window.unwrap_or_else(|| Window::for_m(self.g.m));
        Ok(Arc::new(ClusterModel::with_window(q, self.g.m, window)?))
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.g.json {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("serializable")
            );
        } else {
            print!("{}", text());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { g: cli.global };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[derive(Serialize)]
struct ObjectList {
    m: usize,
    count: usize,
    objects: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct HomReport {
    x: String,
    y: String,
    hom_d: u32,
    /// `dim Hom_C(x, y[k])` for `k = 0..=m`, when both lie in the domain.
    ext_cluster: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct ComplementReport {
    m: usize,
    partial: Vec<String>,
    complements: Vec<String>,
}

fn run(ctx: &Ctx, cmd: Command) -> mcluster::Result<u8> {
    match cmd {
        Command::Roots { quiver } => {
            let q = load_quiver(&quiver)?;
            let roots: Vec<String> = positive_roots(&q).iter().map(|r| r.to_string()).collect();
            ctx.emit(&roots, || roots.iter().map(|r| format!("{r}\n")).collect());
        }
        Command::ArQuiver { quiver } => {
            let q = load_quiver(&quiver)?;
            let ar = mcluster::ar::knit_module_category(&q)?;
            #[derive(Serialize)]
            struct Out<'a> {
                vertices: &'a [mcluster::ar::ArVertex],
                arrows: &'a [(usize, usize)],
                meshes: &'a [mcluster::ar::Mesh],
            }
            let out = Out {
                vertices: ar.vertices(),
                arrows: ar.arrows(),
                meshes: ar.meshes(),
            };
            ctx.emit(&out, || {
                let mut s = String::new();
                for v in ar.vertices() {
                    let kind = match (v.projective_of, v.injective_of) {
                        (Some(i), Some(j)) => format!(" P({})=I({})", q.label(i), q.label(j)),
                        (Some(i), None) => format!(" P({})", q.label(i)),
                        (None, Some(i)) => format!(" I({})", q.label(i)),
                        (None, None) => String::new(),
                    };
                    let succ: Vec<String> = ar
                        .successors(v.id)
                        .iter()
                        .map(|&w| ar.vertex(w).dim.to_string())
                        .collect();
                    s += &format!(
                        "{:>3} {} orbit {} pos {}{kind} -> {}\n",
                        v.id,
                        v.dim,
                        q.label(v.orbit),
                        v.position,
                        succ.join(" ")
                    );
                }
                s
            });
        }
        Command::Fd { quiver } => {
            let cm = ctx.model(&load_quiver(&quiver)?)?;
            let names = cm.names(&cm.domain().vertices);
            ctx.emit(&names, || names.iter().map(|n| format!("{n}\n")).collect());
        }
        Command::Hom { quiver, x, y } => {
            let cm = ctx.model(&load_quiver(&quiver)?)?;
            let d = cm.derived();
            let (vx, vy) = (d.parse_name(&x)?, d.parse_name(&y)?);
            let ext = if cm.in_domain(vx) && cm.in_domain(vy) {
                Some(
                    (0..=cm.m())
                        .map(|k| hom_orbit(d, vx, vy, k, cm.m()))
                        .collect::<mcluster::Result<Vec<u32>>>()?,
                )
            } else {
                None
            };
            let out = HomReport {
                x: d.name(vx),
                y: d.name(vy),
                hom_d: d.hom_derived(vx, vy)?,
                ext_cluster: ext,
            };
            ctx.emit(&out, || {
                let mut s = format!("Hom_D({}, {}) = {}\n", out.x, out.y, out.hom_d);
                if let Some(e) = &out.ext_cluster {
                    for (k, v) in e.iter().enumerate() {
                        let name = if k == 0 {
                            "Hom_C".to_owned()
                        } else {
                            format!("Ext^{k}_C")
                        };
                        s += &format!("{name}({}, {}) = {v}\n", out.x, out.y);
                    }
                }
                s
            });
        }
        Command::Enumerate { quiver } => {
            let cm = ctx.model(&load_quiver(&quiver)?)?;
            let objects: Vec<Vec<String>> = cm
                .maximal_m_rigid(Some(ctx.g.max_cliques))?
                .iter()
                .map(|t| cm.names(&t.summands))
                .collect();
            let out = ObjectList {
                m: cm.m(),
                count: objects.len(),
                objects,
            };
            ctx.emit(&out, || {
                let mut s: String = out
                    .objects
                    .iter()
                    .map(|t| format!("{}\n", t.join(" ")))
                    .collect();
                s += &format!("{} maximal {}-rigid objects\n", out.count, out.m);
                s
            });
        }
        Command::Complements {
            quiver,
            object,
            drop,
        } => {
            let cm = ctx.model(&load_quiver(&quiver)?)?;
            let mut partial = cm.parse_object(&object)?;
            if let Some(drop) = drop {
                let v = cm.derived().parse_name(&drop)?;
                let before = partial.len();
                partial.retain(|&w| w != v);
                if partial.len() == before {
                    return Err(Error::InvalidArgument(format!("{drop} is not a summand")));
                }
            }
            let comps = cm.complements(&partial)?;
            let out = ComplementReport {
                m: cm.m(),
                partial: cm.names(&partial),
                complements: cm.names(&comps),
            };
            ctx.emit(&out, || {
                format!(
                    "{} complements of {{{}}}: {}\n",
                    out.complements.len(),
                    out.partial.join(", "),
                    out.complements.join(" ")
                )
            });
        }
        Command::Localise { quiver, object, at } => {
            let cm = ctx.model(&load_quiver(&quiver)?)?;
            let t = cm.parse_object(&object)?;
            let at = cm.derived().parse_name(&at)?;
            let models = Models::new();
            models.insert(cm.clone());
            let r = localise_object(&cm, &t, at, &models)?;
            let passed = r.passed();
            ctx.emit(&r, || {
                let arrows: Vec<String> = r
                    .h_prime
                    .arrows
                    .iter()
                    .map(|(a, b)| format!("{a}->{b}"))
                    .collect();
                let mut s = format!(
                    "H' vertices {} arrows {}\n",
                    r.h_prime.vertices.join(" "),
                    arrows.join(" ")
                );
                if !r.slice.is_identity() {
                    s += &format!(
                        "normalised over slice {:?}: {}\n",
                        r.slice.offsets,
                        r.object.join(" ")
                    );
                }
                s += &format!("image: {}\n", r.image.join(" "));
                s += &format!(
                    "in domain: {}, m-rigid: {}, maximal: {}\n",
                    r.in_domain, r.m_rigid, r.maximal
                );
                for (x, a, b) in &r.complements {
                    s += &format!("without {x}: {a} complements over H, {b} over H'\n");
                }
                s
            });
            return Ok(if passed { 0 } else { EXIT_FAIL });
        }
        Command::Endo {
            quiver,
            object,
            factor_at,
        } => {
            let cm = ctx.model(&load_quiver(&quiver)?)?;
            let t = cm.parse_object(&object)?;
            match factor_at {
                None => {
                    let e = endo_dims(&cm, &t)?;
                    ctx.emit(&e, || {
                        let mut s = format!("summands: {}\n", e.object.join(" "));
                        s += &matrix("hom", &e.hom_dims);
                        s += &matrix("arrows", &e.arrows);
                        s += &format!("total dimension {}\n", e.total_dim);
                        s
                    });
                }
                Some(at) => {
                    let at = cm.derived().parse_name(&at)?;
                    let models = Models::new();
                    models.insert(cm.clone());
                    if !cm.is_maximal_m_rigid(&t)? {
                        // Without maximality only the factor side is defined.
                        let f = factor_dims(&cm, &t, at)?;
                        ctx.emit(&f, || matrix("factor", &f.dims));
                        return Ok(0);
                    }
                    let r = verify_factor_theorem(&cm, &t, at, &models)?;
                    let passed = r.passed();
                    ctx.emit(&r, || {
                        let mut s = format!("summands: {}\n", r.object.join(" "));
                        s += &matrix("hom", &r.endo.hom_dims);
                        s += &format!("without {}: {}\n", r.at, r.factor.rest.join(" "));
                        s += &matrix("factor", &r.factor.dims);
                        s += &matrix("factor arrows", &r.factor.arrows);
                        s += &format!("localised: {}\n", r.localised.object.join(" "));
                        s += &matrix("localised hom", &r.localised.hom_dims);
                        s += &matrix("localised arrows", &r.localised.arrows);
                        s += &format!(
                            "dims agree: {}, arrows agree: {}\n",
                            r.dims_agree, r.arrows_agree
                        );
                        s
                    });
                    return Ok(if passed { 0 } else { EXIT_FAIL });
                }
            }
        }
        Command::Verify { scope, quiver } => {
            let q = load_quiver(&quiver)?;
            let opts = VerifyOptions {
                scope: match scope {
                    VerifyScope::All => Scope::All,
                    VerifyScope::Cluster => Scope::Cluster,
                },
                window: ctx.g.window,
                max_cliques: Some(ctx.g.max_cliques),
                timings: ctx.g.timings,
                ..VerifyOptions::default()
            };
            let r = run_verify_all(&quiver, &q, ctx.g.m, &opts)?;
            ctx.emit(&r, || {
                let mut s = String::new();
                for c in &r.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    s += &format!("{mark} {:<30} {}\n", c.name, c.details);
                }
                let c = &r.counts;
                s += &format!(
                    "{} maximal {}-rigid objects (formula {}), sizes {:?}, complements {:?}, {} tilting modules\n",
                    c.maximal_m_rigid, r.m, c.fuss_catalan, c.summand_sizes, c.complements, c.tilting_modules
                );
                if let Some(ms) = r.elapsed_ms {
                    s += &format!("elapsed {ms} ms\n");
                }
                s += &format!("{:?}\n", r.status).to_lowercase();
                s
            });
            return Ok(match r.status {
                Status::Pass => 0,
                Status::Fail => EXIT_FAIL,
                Status::Capped => EXIT_CAP,
            });
        }
    }
    Ok(0)
}

fn matrix(title: &str, rows: &[Vec<usize>]) -> String {
    let mut s = format!("{title}:\n");
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>2}")).collect();
        s += &format!("  {}\n", cells.join(" "));
    }
    s
}
