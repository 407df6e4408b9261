use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::Path;

use transmod::io::{parse_edge_list_bytes_with, to_dot, write_edge_list, ParseOptions};
use transmod::reduce::{MergeStep, ReduceOptions};
use transmod::{
    build_permrep_with, decompose_digraph, decompose_undirected, decompose_via_reduction,
    orient_complement_with, reduce_with, transitive_orientation, ComplementStrategy, Digraph,
    EdgeOrientation, Error, Labels, ModuleOracle, PermRep, VertexSet,
};

use crate::{
    ClosureArgs, Command, ComplementArgs, DecomposeArgs, Failure, GraphFormat, Input, OracleArgs,
    OrientArgs, PermrepBuildArgs, PermrepCommand, PermrepQueryArgs, ReduceArgs, Strategy, Target,
    TreeFormat,
};

type Outcome = Result<String, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Decompose(args) => decompose(args),
        Command::Reduce(args) => reduce(args),
        Command::Orient(args) => orient(args),
        Command::Permrep(PermrepCommand::Build(args)) | Command::PermrepBuild(args) => {
            permrep_build(args)
        }
        Command::Permrep(PermrepCommand::Query(args)) | Command::PermrepQuery(args) => {
            permrep_query(args)
        }
        Command::Oracle(args) => oracle(args),
        Command::Closure(args) => closure(args),
        Command::Complement(args) => complement(args),
    }
}

fn read_source(path: Option<&Path>) -> Result<(Vec<u8>, String), Failure> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => {
            let name = p.display().to_string();
            let bytes = fs::read(p).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
            Ok((bytes, name))
        }
    }
}

fn read_stdin() -> Result<(Vec<u8>, String), Failure> {
    let mut bytes = Vec::new();
    io::stdin()
        .read_to_end(&mut bytes)
        .map_err(|e| Failure::Usage(format!("<stdin>: {e}")))?;
    Ok((bytes, "<stdin>".to_owned()))
}

fn load(input: &Input) -> Result<Digraph, Failure> {
    let (bytes, name) = read_source(input.input.as_deref())?;
    let opts = ParseOptions {
        undirected: input.undirected,
    };
    parse_edge_list_bytes_with(&bytes, opts).map_err(|e| Failure::Usage(format!("{name}: {e}")))
}

/// Maps a library error to a failure, naming vertices by their labels.
fn domain(g: &Digraph) -> impl Fn(Error) -> Failure + '_ {
    move |e| match e {
        Error::NotComparability(w) => Failure::Domain(format!(
            "not a comparability graph: {}",
            w.describe(|v| g.label(v).into_owned())
        )),
        Error::UnknownVertex(label) => Failure::Usage(format!("unknown vertex {label:?}")),
        other => Failure::Domain(other.to_string()),
    }
}

fn strategy(s: Strategy) -> ComplementStrategy {
    match s {
        Strategy::LiftFirst => ComplementStrategy::LiftFirst,
        Strategy::Direct => ComplementStrategy::Direct,
    }
}

fn graph_output(g: &Digraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Text => write_edge_list(g),
        GraphFormat::Dot => to_dot(g),
    }
}

fn decompose(args: DecomposeArgs) -> Outcome {
    let g = load(&args.input)?;
    let tree = if args.input.undirected {
        decompose_undirected(&g)
    } else if args.via_reduction {
        decompose_via_reduction(&g, args.pre_reduce)
    } else {
        decompose_digraph(&g)
    }
    .map_err(domain(&g))?;
    let labels = g.labels();
    Ok(match args.format {
        TreeFormat::Text => format!("{}\n", tree.render(labels)),
        TreeFormat::Structured => tree.to_structured(labels),
        TreeFormat::Dot => tree.to_dot(labels),
    })
}

fn joined_label(g: &Digraph, members: &VertexSet) -> String {
    members
        .iter()
        .map(|v| g.label(v).into_owned())
        .collect::<Vec<_>>()
        .join("+")
}

fn reduce(args: ReduceArgs) -> Outcome {
    let g = load(&args.input)?;
    let g = if args.pre_reduce {
        g.transitive_reduction().map_err(domain(&g))?
    } else {
        g
    };
    let kernel = reduce_with(&g, &ReduceOptions::default()).map_err(domain(&g))?;
    let names: Vec<String> = (0..kernel.len())
        .map(|k| joined_label(&g, &kernel.members(k)))
        .collect();

    let mut out = String::new();
    if args.trace {
        let _ = writeln!(out, "trace {}", kernel.log().len());
        for (i, step) in kernel.log().iter().enumerate() {
            let _ = writeln!(out, "{}", trace_line(&g, i + 1, step));
        }
    }
    let kg = kernel.graph();
    let _ = writeln!(out, "kernel {} {}", kg.n(), kg.edge_count());
    for name in &names {
        let _ = writeln!(out, "{name}");
    }
    for (a, b) in kg.edges() {
        let _ = writeln!(out, "{} {}", names[a], names[b]);
    }
    let _ = writeln!(out, "fragments {}", kernel.len());
    for (name, fragment) in names.iter().zip(kernel.fragments()) {
        let _ = writeln!(out, "fragment {name}");
        out.push_str(&fragment.to_structured(g.labels()));
    }
    Ok(out)
}

fn trace_line(g: &Digraph, index: usize, step: &MergeStep) -> String {
    let operand = |id: usize| {
        if id < g.n() {
            g.label(id).into_owned()
        } else {
            format!("#{id}")
        }
    };
    format!(
        "step {index}: {} {} {} -> #{}",
        step.rule,
        operand(step.left),
        operand(step.right),
        step.merged
    )
}

fn orientation_output(g: &Digraph, o: &EdgeOrientation, format: GraphFormat) -> String {
    let mut oriented = o.to_digraph();
    if let Some(labels) = g.labels() {
        oriented = oriented
            .with_labels(labels.clone())
            .expect("same vertex count");
    }
    graph_output(&oriented, format)
}

fn orient(args: OrientArgs) -> Outcome {
    let g = load(&args.input)?;
    match args.target {
        Target::ComplementOfClosure => {
            let result = orient_complement_with(&g, strategy(args.strategy)).map_err(domain(&g))?;
            let mut out = orientation_output(&g, &result.orientation, args.format);
            if args.format == GraphFormat::Text {
                let _ = writeln!(out, "# source: {}", result.source);
            }
            Ok(out)
        }
        Target::ComplementOfInput => {
            let o = transitive_orientation(&g.undirected_complement()).map_err(domain(&g))?;
            Ok(orientation_output(&g, &o, args.format))
        }
        Target::Input => {
            let o = transitive_orientation(&g.undirected_closure()).map_err(domain(&g))?;
            Ok(orientation_output(&g, &o, args.format))
        }
    }
}

fn permrep_build(args: PermrepBuildArgs) -> Outcome {
    let g = load(&args.input)?;
    if g.n() == 0 {
        return Err(Failure::Domain(Error::EmptyGraph.to_string()));
    }
    let g = if args.contract_sccs {
        let (dag, components) = g.scc_contract();
        let names: Vec<String> = components
            .blocks()
            .iter()
            .map(|b| joined_label(&g, b))
            .collect();
        let labels = Labels::from_names(names).map_err(domain(&g))?;
        dag.with_labels(labels).map_err(domain(&g))?
    } else {
        g
    };
    if !g.is_acyclic() {
        return Err(Failure::Domain(format!(
            "{} (use --contract-sccs to index strongly connected components)",
            Error::CyclicInput
        )));
    }
    let o = orient_complement_with(&g, strategy(args.strategy)).map_err(domain(&g))?;
    let rep = build_permrep_with(&g, &o.orientation).map_err(domain(&g))?;
    Ok(rep.to_text(g.labels()))
}

fn permrep_query(args: PermrepQueryArgs) -> Outcome {
    let (bytes, name) = read_source(Some(&args.orders))?;
    let text =
        String::from_utf8(bytes).map_err(|_| Failure::Usage(format!("{name}: not valid UTF-8")))?;
    let (rep, labels): (PermRep, Labels) =
        PermRep::from_text(&text).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    let lookup = |label: &str| {
        labels
            .id(label)
            .ok_or_else(|| Failure::Usage(format!("unknown vertex {label:?}")))
    };
    let (u, v) = (lookup(&args.u)?, lookup(&args.v)?);
    let reachable = rep
        .reachable(u, v)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(format!("{reachable}\n"))
}

fn oracle(args: OracleArgs) -> Outcome {
    let g = load(&args.input)?;
    let target = if args.closure {
        g.transitive_closure()
    } else {
        g.clone()
    };
    let oracle = ModuleOracle::new(&target).map_err(domain(&g))?;
    let strong = oracle.strong_modules();
    let mut out = String::new();
    for m in oracle.all_modules() {
        if m.len() < 2 {
            continue;
        }
        let kind = oracle.module_kind(&m).map_err(domain(&g))?;
        let status = if strong.contains(&m) {
            "strong"
        } else {
            "weak"
        };
        let members: Vec<String> = m.iter().map(|v| g.label(v).into_owned()).collect();
        let _ = writeln!(out, "{status} {kind} {}", members.join(" "));
    }
    Ok(out)
}

fn closure(args: ClosureArgs) -> Outcome {
    let g = load(&args.input)?;
    let result = if args.reduce {
        g.transitive_reduction().map_err(domain(&g))?
    } else {
        g.transitive_closure()
    };
    Ok(graph_output(&result, args.format))
}

fn complement(args: ComplementArgs) -> Outcome {
    let g = load(&args.input)?;
    let result = if args.input.undirected {
        g.undirected_complement()
    } else {
        g.complement()
    };
    Ok(graph_output(&result, args.format))
}
