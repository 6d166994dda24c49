//! Experiment drivers. Each sweep point is independent; points run on a
//! rayon pool and are gathered in sweep order.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::config::{
    Experiment, InitialState, RunConfig, SweepAxis, DEFAULT_MAX_CYCLES, PHASE_GRANULARITY_CYCLES,
};
use super::output::{
    col, config_hash, write_manifest, write_tables, Cell, Column, Manifest, Table, MANIFEST_SCHEMA,
};
use crate::basis::{enumerate_basis, Boundary, FockBasis};
use crate::drive::{
    floquet_log_hamiltonian, floquet_operator, floquet_spectrum, DriveProtocol, FloquetSpectrum,
};
use crate::error::{Error, Result};
use crate::fpt;
use crate::hamiltonians::{
    build_third_charge_pxp, op_hf2_kernel, op_sigma_x_tilde, op_sigma_z_total, WorkingBasis,
};
use crate::observables::{
    commutator_norm, entanglement_entropy, ite_average, level_spacing_stats, magnetization_series,
    product_state_series, sff_averaged, steady_state_average, DEFAULT_BINS,
};
use crate::symmetry::SectorBasis;
use crate::xxzmap::{verify_obc, verify_pbc_k0, MappingReport};

/// Everything a run produced.
#[derive(Debug)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub d_sec: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Rows contributed by one sweep point, per output table.
struct Point {
    rows: Vec<Vec<Vec<Cell>>>,
    d_sec: usize,
}

fn spectrum(protocol: &DriveProtocol, basis: &dyn WorkingBasis) -> Result<FloquetSpectrum> {
    floquet_spectrum(&floquet_operator(protocol, basis)?, protocol.params.t1)
}

struct Context<'a> {
    cfg: &'a RunConfig,
    parent: FockBasis,
    sector: Option<SectorBasis>,
}

impl Context<'_> {
    fn sector(&self) -> Result<&SectorBasis> {
        self.sector
            .as_ref()
            .ok_or_else(|| Error::Config("experiment needs a symmetry sector basis".into()))
    }
}

fn schemas(cfg: &RunConfig) -> Vec<(String, Vec<Column>)> {
    let axis = col(cfg.sweep.axis.column(), "1");
    let name = cfg.experiment.name().to_string();
    match cfg.experiment {
        Experiment::SweepR => vec![
            (
                name,
                vec![
                    axis.clone(),
                    col("D_sec", "states"),
                    col("r_mean", "1"),
                    col("low_count", "bool"),
                ],
            ),
            (
                "sweep-r-hist".into(),
                vec![
                    axis,
                    col("r_lo", "1"),
                    col("r_hi", "1"),
                    col("density", "1/r"),
                ],
            ),
        ],
        Experiment::SpectrumEntanglement => vec![(
            name,
            vec![
                axis,
                col("index", "1"),
                col("quasienergy", "energy"),
                col("phase", "rad"),
                col("entropy", "nats"),
            ],
        )],
        Experiment::Dynamics => {
            let mut v = vec![(
                name,
                vec![
                    axis.clone(),
                    col("n", "cycles"),
                    col("Mz", "1"),
                    col("Mx", "1"),
                ],
            )];
            if cfg.steady.is_some() {
                v.push((
                    "dynamics-steady".into(),
                    vec![
                        axis,
                        col("n0", "cycles"),
                        col("window", "cycles"),
                        col("Mz_steady", "1"),
                        col("Mz_ite", "1"),
                    ],
                ));
            }
            v
        }
        Experiment::Sff => vec![(
            name,
            vec![
                axis,
                col("n", "cycles"),
                col("sff", "1"),
                col("sff_times_D", "1"),
            ],
        )],
        Experiment::VerifyMap => vec![(
            name,
            vec![
                col("sites", "1"),
                col("up", "1"),
                col("boundary", "text"),
                col("dim", "states"),
                col("J", "energy"),
                col("delta", "1"),
                col("entry_deviation", "energy"),
                col("spectral_deviation", "energy"),
                col("constant", "energy"),
                col("constant_closed_form", "energy"),
                col("pass", "bool"),
            ],
        )],
        Experiment::ChargeNorm => vec![(
            name,
            vec![
                axis,
                col("D_sec", "states"),
                col("commutator_norm", "energy^2"),
                col("kernel_commutator_norm", "energy"),
            ],
        )],
        Experiment::FptCompare => vec![(
            name,
            vec![
                axis,
                col("c1_re", "energy"),
                col("c1_im", "energy"),
                col("c1_oracle_re", "energy"),
                col("c1_oracle_im", "energy"),
                col("c2", "energy"),
                col("c2_oracle", "energy"),
                col("residual_rel", "1"),
            ],
        )],
        Experiment::AsymSweep => vec![(
            name,
            vec![
                axis,
                col("p", "1"),
                col("D_sec", "states"),
                col("r_mean", "1"),
                col("c1_plus_abs", "energy"),
                col("c1_minus_abs", "energy"),
            ],
        )],
    }
}

fn point(ctx: &Context<'_>, value: f64) -> Result<Point> {
    let cfg = ctx.cfg;
    let v = Cell::Float(value);
    match cfg.experiment {
        Experiment::SweepR => {
            let s = ctx.sector()?;
            let stats = level_spacing_stats(&spectrum(&cfg.protocol_at(value)?, s)?, DEFAULT_BINS)?;
            let main = vec![
                v.clone(),
                s.dim().into(),
                stats.mean.into(),
                stats.low_count.into(),
            ];
            let nb = stats.histogram.len() as f64;
            let hist = stats
                .histogram
                .iter()
                .enumerate()
                .map(|(i, &d)| {
                    vec![
                        v.clone(),
                        (i as f64 / nb).into(),
                        ((i + 1) as f64 / nb).into(),
                        d.into(),
                    ]
                })
                .collect();
            Ok(Point {
                rows: vec![vec![main], hist],
                d_sec: s.dim(),
            })
        }
        Experiment::SpectrumEntanglement => {
            let s = ctx.sector()?;
            let spec = spectrum(&cfg.protocol_at(value)?, s)?;
            let e = spec.quasienergies();
            let mut rows = Vec::with_capacity(spec.dim());
            for i in 0..spec.dim() {
                let ent = entanglement_entropy(&spec.vectors.column(i).to_owned(), s)?;
                rows.push(vec![
                    v.clone(),
                    i.into(),
                    e[i].into(),
                    spec.phases[i].into(),
                    ent.into(),
                ]);
            }
            Ok(Point {
                rows: vec![rows],
                d_sec: s.dim(),
            })
        }
        Experiment::Dynamics => dynamics_point(ctx, value),
        Experiment::Sff => {
            let s = ctx.sector()?;
            let proto = cfg.protocol_at(value)?;
            let k = cfg.sff.window_points;
            let w0 = proto.params.w0;
            let hw = cfg.sff.window_half_width * w0.abs();
            let window: Vec<f64> = if k == 1 {
                vec![w0]
            } else {
                (0..k)
                    .map(|i| w0 - hw + 2.0 * hw * i as f64 / (k - 1) as f64)
                    .collect()
            };
            let ns: Vec<u64> = (0..=cfg.sff.max_cycles)
                .step_by(cfg.sff.stride as usize)
                .collect();
            let ser = sff_averaged(&proto, s, &ns, &window)?;
            let d = s.dim() as f64;
            let rows = ser
                .n
                .iter()
                .zip(&ser.values)
                .map(|(&n, &k)| vec![v.clone(), n.into(), k.into(), (k * d).into()]);
            Ok(Point {
                rows: vec![rows.collect()],
                d_sec: s.dim(),
            })
        }
        Experiment::VerifyMap => {
            let l = value.round() as usize;
            let j = 0.5 * fpt::n_gamma(&cfg.protocol_at(value)?.params);
            let mut rows = Vec::new();
            let push = |rows: &mut Vec<Vec<Cell>>, r: MappingReport, bc: &str| {
                rows.push(vec![
                    r.sites.into(),
                    r.up.into(),
                    bc.into(),
                    r.dim.into(),
                    r.j.into(),
                    r.delta.into(),
                    r.entry_deviation.into(),
                    r.spectral_deviation.into(),
                    r.constant.into(),
                    r.constant_closed_form.into(),
                    r.pass.into(),
                ])
            };
            match cfg.boundary() {
                Boundary::Periodic => {
                    for n in (1..l).take_while(|&n| 2 * n < l) {
                        push(&mut rows, verify_pbc_k0(l, n, j, -0.5)?, "periodic");
                    }
                }
                Boundary::Open => {
                    for n in 0..=l.div_ceil(2) {
                        push(&mut rows, verify_obc(l, n, j)?, "open");
                    }
                }
            }
            Ok(Point {
                rows: vec![rows],
                d_sec: enumerate_basis(l, cfg.boundary())?.dim(),
            })
        }
        Experiment::ChargeNorm => {
            let s = ctx.sector()?;
            let c3 = build_third_charge_pxp(s, 1.0, -0.5)?;
            let h = floquet_log_hamiltonian(&spectrum(&cfg.protocol_at(value)?, s)?);
            let n = commutator_norm(&h, &c3)?;
            let k = commutator_norm(&op_hf2_kernel(s), &c3)?;
            Ok(Point {
                rows: vec![vec![vec![v, s.dim().into(), n.into(), k.into()]]],
                d_sec: s.dim(),
            })
        }
        Experiment::FptCompare => {
            let s = ctx.sector()?;
            let proto = cfg.protocol_at(value)?;
            let a1 = fpt::analytic(&proto, 1)?;
            let o1 = fpt::oracle_result(&proto, 1)?;
            let a2 = fpt::analytic(&proto, 2).ok();
            let o2 = fpt::oracle_result(&proto, 2)?;
            let h = floquet_log_hamiltonian(&spectrum(&proto, s)?);
            let approx = a1.matrix(s)?.add(&o2.matrix(s)?)?;
            let resid = h.sub(&approx)?.frobenius() / h.frobenius().max(f64::MIN_POSITIVE);
            let row = vec![
                v,
                a1.coefficient.re.into(),
                a1.coefficient.im.into(),
                o1.coefficient.re.into(),
                o1.coefficient.im.into(),
                a2.map(|r| r.coefficient.re).into(),
                o2.coefficient.re.into(),
                resid.into(),
            ];
            Ok(Point {
                rows: vec![vec![row]],
                d_sec: s.dim(),
            })
        }
        Experiment::AsymSweep => {
            let s = ctx.sector()?;
            let proto = cfg.protocol_at(value)?;
            let p = match proto.kind {
                crate::drive::DriveKind::SquareAsymmetric { p } => p,
                _ => {
                    return Err(Error::Config(
                        "asym-sweep needs the asymmetric protocol".into(),
                    ))
                }
            };
            let r = level_spacing_stats(&spectrum(&proto, s)?, DEFAULT_BINS)?.mean;
            let c = fpt::asym_coefficients(&proto.params, p)?;
            let row = vec![
                v,
                p.into(),
                s.dim().into(),
                r.into(),
                c.c1[0].norm().into(),
                c.c1[1].norm().into(),
            ];
            Ok(Point {
                rows: vec![vec![row]],
                d_sec: s.dim(),
            })
        }
    }
}

fn dynamics_point(ctx: &Context<'_>, value: f64) -> Result<Point> {
    let cfg = ctx.cfg;
    let proto = cfg.protocol_at(value)?;
    let ns = cfg.dynamics.schedule()?;
    let state = cfg.dynamics.initial_state;
    let word = state.word(cfg.sites);
    let v = Cell::Float(value);
    let (mz, mx, d_sec, steady) = match state {
        InitialState::Z2 => {
            let ops: [fn(&dyn WorkingBasis) -> _; 2] = [op_sigma_z_total, op_sigma_x_tilde];
            let mut s = product_state_series(&ctx.parent, word, &proto, &ops, &ns)?;
            if cfg.steady.is_some() {
                return Err(Error::Config(
                    "steady-state averages need a vac or afm start".into(),
                ));
            }
            let mx = s.pop().expect("two series");
            (s.pop().expect("two series"), mx, ctx.parent.dim(), None)
        }
        InitialState::Vac | InitialState::Afm => {
            let s = ctx.sector()?;
            let psi = s.product_state(word)?;
            let spec = spectrum(&proto, s)?;
            let z = op_sigma_z_total(s);
            let mz = magnetization_series(&spec, &psi, &z, &ns)?.values;
            let mx = magnetization_series(&spec, &psi, &op_sigma_x_tilde(s), &ns)?.values;
            let steady = match &cfg.steady {
                Some(st) => Some(vec![
                    v.clone(),
                    st.n0.into(),
                    st.window.into(),
                    steady_state_average(&spec, &psi, &z, st.n0, st.window)?.into(),
                    ite_average(&z).into(),
                ]),
                None => None,
            };
            (mz, mx, s.dim(), steady)
        }
    };
    let rows = ns
        .iter()
        .zip(mz.iter().zip(&mx))
        .map(|(&n, (&a, &b))| vec![v.clone(), n.into(), a.into(), b.into()]);
    let mut tables = vec![rows.collect()];
    if let Some(r) = steady {
        tables.push(vec![r]);
    }
    Ok(Point {
        rows: tables,
        d_sec,
    })
}

fn warnings(cfg: &RunConfig) -> Result<Vec<String>> {
    let mut w = Vec::new();
    if cfg.experiment == Experiment::Dynamics {
        let max = cfg.dynamics.schedule()?.last().copied().unwrap_or(0);
        if max > DEFAULT_MAX_CYCLES {
            w.push(format!(
                "cycle counts up to {max}: stroboscopic phases lose precision beyond about {PHASE_GRANULARITY_CYCLES:e} cycles"
            ));
        }
    }
    Ok(w)
}

/// Runs the experiment without touching the filesystem.
pub fn execute(cfg: &RunConfig, threads: usize) -> Result<RunOutput> {
    cfg.validate()?;
    if matches!(cfg.experiment, Experiment::SpectrumEntanglement) && cfg.sites % 2 == 1 {
        return Err(Error::Config(
            "half-chain entropy needs an even number of sites".into(),
        ));
    }
    if cfg.experiment == Experiment::ChargeNorm && cfg.parity.is_some() {
        return Err(Error::Config(
            "the third charge is parity-odd; leave parity unset".into(),
        ));
    }
    let grid = cfg.sweep.grid()?;
    let mut ctx = Context {
        cfg,
        parent: enumerate_basis(cfg.sites, cfg.boundary())?,
        sector: None,
    };
    if cfg.sweep.axis != SweepAxis::Sites {
        let s = SectorBasis::new(&ctx.parent, cfg.sector())
            .map_err(|e| Error::Config(e.to_string()))?;
        if s.dim() == 0 {
            return Err(Error::Config(format!(
                "sector {} is empty",
                cfg.sector().label()
            )));
        }
        ctx.sector = Some(s);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let points: Vec<Result<Point>> =
        pool.install(|| grid.par_iter().map(|&x| point(&ctx, x)).collect());
    let mut tables: Vec<Table> = schemas(cfg)
        .into_iter()
        .map(|(n, c)| Table::new(n, c))
        .collect();
    let mut d_sec = Vec::with_capacity(points.len());
    for p in points {
        let p = p?;
        d_sec.push(p.d_sec);
        for (t, rows) in tables.iter_mut().zip(p.rows) {
            for r in rows {
                t.push(r);
            }
        }
    }
    Ok(RunOutput {
        tables,
        d_sec,
        warnings: warnings(cfg)?,
    })
}

/// Runs the experiment and writes CSV tables plus a JSON manifest into `out`.
/// Returns the manifest path.
pub fn run(cfg: &RunConfig, threads: usize, out: &Path) -> Result<std::path::PathBuf> {
    let t0 = Instant::now();
    let result = execute(cfg, threads)?;
    let hash = config_hash(&cfg.canonical_json());
    let label = cfg.sector().label();
    let files = write_tables(out, &result.tables, cfg.sites, &label, &hash)?;
    let manifest = Manifest {
        schema: MANIFEST_SCHEMA,
        experiment: cfg.experiment.name().into(),
        code_version: env!("CARGO_PKG_VERSION"),
        config_hash: hash,
        config: serde_json::to_value(cfg)?,
        threads,
        wall_seconds: t0.elapsed().as_secs_f64(),
        d_sec: result.d_sec,
        files,
        warnings: result.warnings,
    };
    write_manifest(out, &manifest, cfg.sites, &label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(c: &Cell) -> f64 {
        match c {
            Cell::Float(v) => *v,
            other => panic!("not a float: {other:?}"),
        }
    }

    fn cfg(body: &str) -> RunConfig {
        RunConfig::from_toml(body).unwrap()
    }

    const SWEEP: &str = r#"
experiment = "sweep-r"
sites = 12
momentum = 0
parity = 1
[protocol]
kind = "two-tone"
lambda0 = 20.0
w0 = 1.0
w1 = 1.0
[sweep]
axis = "gamma_over_pi"
values = [1.9, 2.0, 2.1]
"#;

    #[test]
    fn output_is_independent_of_thread_count() {
        let c = cfg(SWEEP);
        let a = execute(&c, 1).unwrap();
        let b = execute(&c, 3).unwrap();
        for (x, y) in a.tables.iter().zip(&b.tables) {
            assert_eq!(x.to_csv().unwrap(), y.to_csv().unwrap());
        }
        assert_eq!(a.tables[0].rows.len(), 3);
        assert_eq!(a.d_sec, vec![a.d_sec[0]; 3]);
    }

    #[test]
    fn histogram_integrates_to_one() {
        let out = execute(&cfg(SWEEP), 2).unwrap();
        let hist = &out.tables[1];
        assert_eq!(hist.rows.len(), 3 * DEFAULT_BINS);
        let mut total = 0.0;
        for r in hist.rows.iter().take(DEFAULT_BINS) {
            if let (Cell::Float(lo), Cell::Float(hi), Cell::Float(d)) = (&r[1], &r[2], &r[3]) {
                total += d * (hi - lo);
            }
        }
        assert!((total - 1.0).abs() < 1e-9, "{total}");
    }

    #[test]
    fn dynamics_vac_starts_at_minus_one() {
        let body = SWEEP
            .replace("sweep-r", "dynamics")
            .replace("values = [1.9, 2.0, 2.1]", "values = [2.0]")
            .replace("[sweep]", "gamma_over_pi = 2.0\n[sweep]")
            + "[dynamics]\ninitial_state = \"vac\"\nmax_cycles = 100\n";
        let out = execute(&cfg(&body), 1).unwrap();
        let t = &out.tables[0];
        assert_eq!(t.rows[0][1], Cell::Int(0));
        assert!((num(&t.rows[0][2]) + 1.0).abs() < 1e-12);
        assert_eq!(t.rows.len(), 4);
    }

    #[test]
    fn z2_start_spans_sectors() {
        let body = SWEEP
            .replace("sweep-r", "dynamics")
            .replace("values = [1.9, 2.0, 2.1]", "values = [1.9]")
            + "[dynamics]\ninitial_state = \"z2\"\ncycles = [0, 3, 50]\n";
        let out = execute(&cfg(&body), 1).unwrap();
        let rows = &out.tables[0].rows;
        // half filling, and a product state has no transverse moment
        assert!(num(&rows[0][2]).abs() < 1e-12);
        assert!(num(&rows[0][3]).abs() < 1e-12);
        assert_eq!(rows.len(), 3);
    }

    #[test]
    fn odd_chain_entropy_is_a_config_error() {
        let body = SWEEP
            .replace("sweep-r", "spectrum-entanglement")
            .replace("sites = 12", "sites = 11");
        assert!(matches!(execute(&cfg(&body), 1), Err(Error::Config(_))));
    }
}
