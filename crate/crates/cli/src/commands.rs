use std::path::Path;

use coupled_osc::continuation::{continue_along, loop_around, monodromy, PathSpec};
use coupled_osc::export::{render_svg, Component, Document, MeshModel, SurfaceMesh, Window};
use coupled_osc::oracle::validate_closed_forms;
use coupled_osc::single::axis_scan;
use coupled_osc::spectral::{branch_points_for, energy_checked, Axis};
use coupled_osc::{Complex64, Frequencies, LevelSpec};
use serde::Serialize;
use serde_json::json;

use crate::{
    AxisArg, BranchPointsArgs, Cli, Command, ComponentArg, ContinueArgs, EnergyArgs, Failure, Format, FrequencyArgs,
    LevelArgs, Model, MonodromyArgs, OracleArgs, OutputArgs, ScanArgs, SingleOscCommand, SurfaceArgs,
};

type Outcome = Result<(), Failure>;

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::BranchPoints(args) => branch_points_cmd(args),
        Command::Energy(args) => energy_cmd(args),
        Command::Surface(args) => surface_cmd(args),
        Command::Continue(args) => continue_cmd(args),
        Command::Monodromy(args) => monodromy_cmd(args),
        Command::Oracle(args) => oracle_cmd(args),
        Command::SingleOsc(SingleOscCommand::Scan(args)) => scan_cmd(args),
    }
}

fn frequencies(args: &FrequencyArgs) -> Result<Frequencies<f64>, Failure> {
    Ok(Frequencies::new(args.nu, args.omega)?)
}

fn level(args: &LevelArgs) -> Result<LevelSpec, Failure> {
    Ok(LevelSpec::new(args.n, args.m)?)
}

fn write_text(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn emit<P: Serialize>(kind: &str, data: P, output: &OutputArgs) -> Outcome {
    let mut doc = Document::new(kind, data)?;
    if let Some(ts) = &output.timestamp {
        doc = doc.with_timestamp(ts.clone());
    }
    write_text(output.out.as_deref(), &doc.to_json_pretty()?)
}

fn stdout_only() -> OutputArgs {
    OutputArgs { out: None, timestamp: None }
}

fn branch_points_cmd(args: BranchPointsArgs) -> Outcome {
    let freqs = frequencies(&args.freqs)?;
    let level = level(&args.level)?;
    let points = branch_points_for(&freqs, level);
    match args.format {
        Format::Json => {
            emit("branch-points", json!({ "freqs": freqs, "level": level, "branch_points": points }), &stdout_only())
        }
        Format::Table => {
            let mut text = format!("{:<8} {:>24} {:>24}  {:<20} {}\n", "id", "re_g", "im_g", "kind", "multiplicity");
            for bp in points {
                let kind =
                    serde_json::to_value(bp.kind).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
                text.push_str(&format!(
                    "{:<8} {:>24} {:>24}  {:<20} {}\n",
                    bp.id.to_string(),
                    bp.g.re,
                    bp.g.im,
                    kind,
                    bp.multiplicity
                ));
            }
            write_text(None, &text)
        }
    }
}

fn energy_cmd(args: EnergyArgs) -> Outcome {
    let freqs = frequencies(&args.freqs)?;
    let level = level(&args.level)?;
    let g = Complex64::new(args.g_re, args.g_im);
    let value = energy_checked(&freqs, level, args.sheet, g)?;
    let data = json!({
        "freqs": freqs,
        "level": level,
        "sheet": args.sheet,
        "g": g,
        "energy": value.value,
        "advisories": value.advisories,
    });
    emit("energy", data, &stdout_only())
}

fn surface_cmd(args: SurfaceArgs) -> Outcome {
    let (nx, ny) = (args.res.0, args.res.1);
    let explicit = args.window.map(|[a, b, c, d]| Window::new(a, b, c, d)).transpose()?;
    let mut mesh = match args.model {
        Model::Coupled => {
            let (Some(nu), Some(omega)) = (args.nu, args.omega) else {
                return Err(Failure::validation("the coupled model needs --nu and --omega"));
            };
            let freqs = Frequencies::new(nu, omega)?;
            let window = explicit.unwrap_or_else(|| Window::default_for(&freqs));
            SurfaceMesh::coupled(&freqs, level(&args.level)?, window, nx, ny)?
        }
        Model::Ho | Model::HoMod => {
            let model = if args.model == Model::Ho { MeshModel::Ho } else { MeshModel::HoMod };
            let window = match explicit {
                Some(w) => w,
                None => Window::symmetric(1.5 * args.delta.abs().max(1.0))?,
            };
            SurfaceMesh::single(model, args.delta, window, nx, ny)?
        }
    };
    if let Some(ts) = &args.timestamp {
        mesh = mesh.with_timestamp(ts.clone());
    }
    let text = match args.out.as_deref() {
        Some(path) => match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => mesh.to_csv(),
            Some("json") => mesh.to_json()?,
            _ => return Err(Failure::validation("--out must end in .json or .csv")),
        },
        None => mesh.to_json()?,
    };
    write_text(args.out.as_deref(), &text)?;
    if let Some(svg_path) = &args.svg {
        let component = match args.svg_component {
            ComponentArg::Re => Component::Re,
            ComponentArg::Im => Component::Im,
            ComponentArg::Abs => Component::Abs,
        };
        write_text(Some(svg_path), &render_svg(&mesh, args.svg_sheet, component)?)?;
    }
    Ok(())
}

fn continue_cmd(args: ContinueArgs) -> Outcome {
    let freqs = frequencies(&args.freqs)?;
    let level = level(&args.level)?;
    let text = std::fs::read_to_string(&args.path)
        .map_err(|e| Failure::io(format!("cannot read path {}: {e}", args.path.display())))?;
    let path: PathSpec<f64> =
        serde_json::from_str(&text).map_err(|e| Failure::validation(format!("invalid path JSON: {e}")))?;
    path.validate()?;
    let trace = continue_along(&freqs, level, args.start_sheet, &path)?;
    emit("trace", trace, &args.output)
}

fn monodromy_cmd(args: MonodromyArgs) -> Outcome {
    let freqs = frequencies(&args.freqs)?;
    let level = level(&args.level)?;
    let path = loop_around(&freqs, args.around, args.radius, args.samples)?;
    let result = monodromy(&freqs, level, &path)?;
    let perm = result.permutation();
    match args.format {
        Format::Table => write_text(args.output.out.as_deref(), &format!("{perm}\n")),
        Format::Json => {
            let data = json!({
                "freqs": freqs,
                "level": level,
                "around": args.around,
                "radius": args.radius,
                "cycles": perm.to_string(),
                "order": perm.order(),
                "moved": perm.moved(),
                "monodromy": result,
            });
            emit("monodromy", data, &args.output)
        }
    }
}

fn oracle_cmd(args: OracleArgs) -> Outcome {
    let freqs = frequencies(&args.freqs)?;
    let g_list = args.g;
    if g_list.is_empty() {
        return Err(Failure::validation("--g needs at least one coupling"));
    }
    let report = validate_closed_forms(&freqs, &g_list, args.nmax, args.basis)?;
    emit("report", report, &args.output)
}

fn scan_cmd(args: ScanArgs) -> Outcome {
    let axis = match args.axis {
        AxisArg::Real => Axis::Real,
        AxisArg::Imag => Axis::Imaginary,
    };
    let extent = args.extent.unwrap_or_else(|| (3.0 * args.delta.abs()).max(3.0));
    let samples = axis_scan(axis, args.delta, extent, args.samples)?;
    let data = json!({ "axis": axis, "delta": args.delta, "extent": extent, "samples": samples });
    emit("scan", data, &args.output)
}
