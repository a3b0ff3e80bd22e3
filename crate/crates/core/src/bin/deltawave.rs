use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use deltawave::error::{Error, Result};
use deltawave::estimates::{default_rho_ceiling, estimate_cstar};
use deltawave::euler::{solve_riemann, GasParams, State};
use deltawave::harness::{
    exact_path, render_table_text, run_comparison, run_member, run_table, write_centers_csv, write_compare_csv,
    write_table_csv, ExperimentConfig,
};
use deltawave::sdw::{build_interaction_ivp, integrate_sdw, solve_pgd_riemann};

#[derive(Parser)]
#[command(name = "deltawave", version, about = "Front tracking and delta-shock experiments for vanishing-pressure gas dynamics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one Riemann problem of the perturbed system.
    Riemann {
        #[arg(long)]
        eps: f64,
        /// Left state as `rho,u`.
        #[arg(long, value_parser = parse_state)]
        left: State,
        #[arg(long, value_parser = parse_state)]
        right: State,
        #[arg(long)]
        json: bool,
    },
    /// Solve one Riemann problem of pressureless gas dynamics.
    Pgd {
        #[arg(long, value_parser = parse_state)]
        left: State,
        #[arg(long, value_parser = parse_state)]
        right: State,
        #[arg(long)]
        json: bool,
    },
    /// Track one experiment at one eps; writes fronts.csv, profile.csv, glimm.csv.
    Track {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Defaults to the first entry of the eps list.
        #[arg(long)]
        eps: Option<f64>,
        /// Extra profile times, written as profile_<t>.csv.
        #[arg(long, value_delimiter = ',')]
        profile_times: Vec<f64>,
    },
    /// Build the interaction problem of the two delta shocks and write the
    /// path of the resulting one to sdw_path.csv.
    Sdw {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Integration end time (default 1e5).
        #[arg(long, default_value_t = 1e5)]
        until: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Reproduce a reference table; writes table.csv and table.txt.
    Table {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Compare tracked spikes with the exact path; writes compare.csv and
    /// centers_eps<eps>.csv.
    Compare {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Estimate the interaction constants; writes constants.json.
    Constants {
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper end of the density sample range (default 10/eps).
        #[arg(long)]
        rho_ceiling: Option<f64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// JSON experiment config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from a reference experiment (ex1, ex2, ex3).
    #[arg(long)]
    example: Option<String>,
    #[arg(long, value_delimiter = ',')]
    eps_list: Option<Vec<f64>>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    delta_r: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cstar_samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match (&self.config, &self.example) {
            (Some(_), Some(_)) => return Err(Error::Config("--config and --example are exclusive".into())),
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                ExperimentConfig::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            (None, Some(name)) => ExperimentConfig::example(name)?,
            (None, None) => ExperimentConfig::default(),
        };
        if let Some(v) = &self.eps_list {
            cfg.eps_list = v.clone();
        }
        if let Some(v) = self.t_end {
            cfg.t_end = v;
        }
        if let Some(v) = self.delta_r {
            cfg.delta_r = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.cstar_samples {
            cfg.cstar_samples = v;
        }
        if let Some(v) = &self.out {
            cfg.output_dir = v.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_state(s: &str) -> std::result::Result<State, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `rho,u`, got `{s}`"));
    }
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(State::new(num(parts[0])?, num(parts[1])?))
}

fn eps_params(eps: f64) -> Result<GasParams> {
    GasParams::new_inclusive(eps).map_err(|e| Error::Config(format!("--eps {eps}: {e}")))
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn finish(mut w: BufWriter<File>) -> Result<()> {
    w.flush()?;
    Ok(())
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Riemann { eps, left, right, json } => {
            let p = eps_params(eps)?;
            let sol = solve_riemann(&left, &right, &p)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&sol)?);
            } else {
                println!("pattern {}", sol.pattern);
                println!("middle rho={} u={}", sol.middle.rho, sol.middle.u);
                for w in sol.waves() {
                    println!(
                        "wave family={} kind={} amplitude={} speed=[{}, {}]",
                        w.family.index(),
                        w.kind.label(),
                        w.amplitude,
                        w.speed_lo,
                        w.speed_hi
                    );
                }
            }
        }
        Cmd::Pgd { left, right, json } => {
            let sol = solve_pgd_riemann(&left, &right)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&sol)?);
            } else {
                match sol.speed() {
                    Some(c) => println!("delta_shock speed={c} strength_rate={}", sol.strength_rate().unwrap_or(0.0)),
                    None => println!("{}", serde_json::to_string(&sol)?),
                }
            }
        }
        Cmd::Track { cfg, eps, profile_times } => {
            let cfg = cfg.resolve()?;
            let eps = eps.unwrap_or(cfg.eps_list[0]);
            let (row, traj) = run_member(&cfg, eps)?;
            let dir = &cfg.output_dir;
            traj.write_fronts_csv(create(dir, "fronts.csv")?)?;
            traj.write_glimm_csv(create(dir, "glimm.csv")?)?;
            let bx = traj.default_box();
            traj.write_profile_csv(create(dir, "profile.csv")?, traj.t_end(), bx.a, bx.b)?;
            for t in profile_times {
                if !(0.0..=traj.t_end()).contains(&t) {
                    return Err(Error::Domain(format!("profile time {t} outside [0, {}]", traj.t_end())));
                }
                traj.write_profile_csv(create(dir, &format!("profile_{t}.csv"))?, t, bx.a, bx.b)?;
            }
            let summary = serde_json::json!({
                "row": row,
                "report": traj.report,
                "checks": traj.checks,
                "constants": traj.constants,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Cmd::Sdw { cfg, until, tol } => {
            let cfg = cfg.resolve()?;
            cfg.validate_ordering()?;
            let ivp = build_interaction_ivp(&cfg.u0, &cfg.u1, &cfg.u2, cfg.a1, cfg.a2)?;
            let path = integrate_sdw(&ivp, until, tol)?;
            let mut w = create(&cfg.output_dir, "sdw_path.csv")?;
            path.write_csv(&mut w)?;
            finish(w)?;
            let last = path.samples.last().expect("path has samples");
            println!("X={} T={}", ivp.x, ivp.t);
            println!("xi(T)={} us(T)={}", ivp.xi_t, ivp.us_t);
            if let Some((a1, a2)) = path.roots {
                println!("roots A1={a1} A2={a2} target={}", path.target_root().unwrap_or(f64::NAN));
            }
            println!("trend {:?}", path.trend());
            println!("t={} xi={} us={} x={}", last.t, last.xi(), last.us(), last.x());
        }
        Cmd::Table { cfg } => {
            let cfg = cfg.resolve()?;
            let rows = run_table(&cfg)?;
            let mut w = create(&cfg.output_dir, "table.csv")?;
            write_table_csv(&rows, &mut w)?;
            finish(w)?;
            let text = render_table_text(&rows);
            let mut w = create(&cfg.output_dir, "table.txt")?;
            w.write_all(text.as_bytes())?;
            finish(w)?;
            print!("{text}");
        }
        Cmd::Compare { cfg } => {
            let cfg = cfg.resolve()?;
            let reports = run_comparison(&cfg)?;
            let mut w = create(&cfg.output_dir, "compare.csv")?;
            write_compare_csv(&reports, &mut w)?;
            finish(w)?;
            for r in &reports {
                let mut w = create(&cfg.output_dir, &format!("centers_eps{}.csv", r.eps))?;
                write_centers_csv(r, &mut w)?;
                finish(w)?;
            }
            let path = exact_path(&cfg)?;
            let mut w = create(&cfg.output_dir, "sdw_path.csv")?;
            path.write_csv(&mut w)?;
            finish(w)?;
            println!("{:>7} {:>12} {:>12} {:>10}", "eps", "sup_dev", "du_terminal", "eps_rho");
            for r in &reports {
                println!("{:>7} {:>12.4e} {:>12.4e} {:>10.4}", r.eps, r.sup_dev, r.du_terminal, r.eps_rho);
            }
        }
        Cmd::Constants { eps, samples, seed, rho_ceiling, out } => {
            let p = eps_params(eps)?;
            let ceiling = rho_ceiling.unwrap_or_else(|| default_rho_ceiling(&p));
            let c = estimate_cstar(samples, ceiling, &p, seed)?;
            let text = serde_json::to_string_pretty(&c)?;
            let mut w = create(&out, "constants.json")?;
            writeln!(w, "{text}")?;
            finish(w)?;
            println!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(64) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Config(_) | Error::Json(_)) {
                eprintln!("run `deltawave --help` for usage");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
