use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use howe::classical::{centralizer_decomposition, dim_from_unipotent, p_prime_part, EigenData, GroupDescriptor};
use howe::finite_howe::{
    extremal, lusztig_compat_check, omega_multiplicity, theta_set, validate_extremal, Comparator, CompatInput,
    CompatStatus, OmegaCase, OmegaInstance,
};
use howe::hecke::{HeckeAlgebra, HeckeParams, SimpleParam};
use howe::laurent::LaurentCoeff;
use howe::partitions::Bipartition;
use howe::theta_transfer::{
    block_weyl_shape, occurrence_bounds, support_transfer, FirstOccurrenceTable, InertialClass, Reducibility, Side,
};
use howe::weyl::{CartanType, Isogeny, RootDatum, RootDatumDoc};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::output::{CliError, Output};

type CliResult = Result<Output, CliError>;

#[derive(Parser, Debug)]
#[command(name = "howe", version, about = "Exact computations for theta correspondences")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity of a pair of unipotent labels in Ω, or the whole
    /// expansion at fixed levels.
    Omega {
        #[arg(long, value_parser = parse_case)]
        case: OmegaCase,
        #[arg(long, value_parser = parse_bipartition, requires = "down")]
        up: Option<Bipartition>,
        #[arg(long, value_parser = parse_bipartition, requires = "up")]
        down: Option<Bipartition>,
        #[arg(long = "Nk")]
        n_k: Option<u32>,
        #[arg(long = "Nk-prime", alias = "Nkp")]
        n_prime_k: Option<u32>,
    },
    /// The labels of size N_k paired with a given label of size N'_k.
    ThetaSet {
        #[arg(long, value_parser = parse_case, default_value = "1")]
        case: OmegaCase,
        #[arg(long = "Nk")]
        n_k: u32,
        #[arg(long, value_parser = parse_bipartition)]
        down: Bipartition,
    },
    /// Closed-form maximal and minimal correspondents.
    Extremal {
        #[arg(long = "Nk")]
        n_k: u32,
        #[arg(long, value_parser = parse_bipartition)]
        down: Bipartition,
    },
    /// Checks the closed forms against brute force for all labels of size N'_k.
    ValidateExtremal {
        #[arg(long = "Nk")]
        n_k: u32,
        #[arg(long = "Nk-prime", alias = "Nkp")]
        n_prime_k: u32,
        /// `componentwise-sum`, `multiset-union` or `all`.
        #[arg(long, default_value = "all")]
        comparator: String,
        /// Only print the summary, not every finding.
        #[arg(long)]
        summary: bool,
    },
    /// Centralizer of a semisimple element given by eigenvalue orbits.
    Centralizer {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Order of a finite classical group.
    Order {
        #[arg(long, value_parser = parse_family)]
        family: howe::classical::Family,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Degree of a Lusztig-series character from its unipotent partner.
    Dim {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Normal forms and relation checks in an affine Hecke algebra.
    Hecke {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Cartan type such as `B2`, instead of an input document.
        #[arg(long = "type")]
        cartan: Option<String>,
        #[arg(long, default_value = "simply-connected")]
        isogeny: String,
        /// `generic` or `generic-unequal`.
        #[arg(long, default_value = "generic")]
        params: String,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Theta transfer of a supercuspidal support and its inertial class.
    ThetaInertial {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Compatibility of a theta pair with the Lusztig-series decomposition.
    CompatCheck {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn parse_bipartition(s: &str) -> Result<Bipartition, String> {
    s.parse().map_err(|e: howe::Error| e.to_string())
}

fn parse_case(s: &str) -> Result<OmegaCase, String> {
    match s {
        "1" => Ok(OmegaCase::Case1),
        "2" => Ok(OmegaCase::Case2),
        _ => Err(format!("case must be 1 or 2, got {s:?}")),
    }
}

fn parse_family(s: &str) -> Result<howe::classical::Family, String> {
    s.parse().map_err(|e: howe::Error| e.to_string())
}

fn read_document<T: DeserializeOwned>(input: Option<&PathBuf>) -> Result<T, CliError> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Parse(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize to JSON")
}

fn case_number(case: OmegaCase) -> u8 {
    case.into()
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Omega {
            case,
            up,
            down,
            n_k,
            n_prime_k,
        } => omega(case, up, down, n_k, n_prime_k),
        Command::ThetaSet { case, n_k, down } => {
            let members = theta_set(&down, n_k, case)?;
            Ok(Output::new(json!({
                "case": case_number(case),
                "n_k": n_k,
                "down": down,
                "count": members.len(),
                "members": members,
            })))
        }
        Command::Extremal { n_k, down } => {
            let e = extremal(&down, n_k)?;
            Ok(Output::new(json!({
                "n_k": n_k,
                "down": down,
                "max": e.max,
                "min": e.min,
                "max_witness": e.max_witness,
                "min_witness": e.min_witness,
            })))
        }
        Command::ValidateExtremal {
            n_k,
            n_prime_k,
            comparator,
            summary,
        } => validate(n_k, n_prime_k, &comparator, summary),
        Command::Centralizer { input } => centralizer(read_document(input.as_ref())?),
        Command::Order { family, rank, q } => order(GroupDescriptor::new(family, rank, q)?),
        Command::Dim { input } => dim(read_document(input.as_ref())?),
        Command::Hecke {
            input,
            cartan,
            isogeny,
            params,
            expr,
            verify,
        } => {
            let doc = match cartan {
                Some(ty) => HeckeDoc {
                    cartan: Some(ty),
                    isogeny: Some(isogeny),
                    datum: None,
                    params: Some(ParamsDoc::Named(params)),
                    rgroup: None,
                    expr,
                    verify,
                },
                None => {
                    let mut doc: HeckeDoc = read_document(input.as_ref())?;
                    doc.expr = expr.or(doc.expr);
                    doc.verify |= verify;
                    doc
                }
            };
            hecke(doc)
        }
        Command::ThetaInertial { input } => theta(read_document(input.as_ref())?),
        Command::CompatCheck { input } => compat(read_document(input.as_ref())?),
    }
}

fn omega(
    case: OmegaCase,
    up: Option<Bipartition>,
    down: Option<Bipartition>,
    n_k: Option<u32>,
    n_prime_k: Option<u32>,
) -> CliResult {
    match (up, down) {
        (Some(up), Some(down)) => {
            let m = match (n_k, n_prime_k) {
                (None, None) => omega_multiplicity(&up, &down, case),
                (a, b) => OmegaInstance::new(a.unwrap_or(up.size()), b.unwrap_or(down.size()), case)
                    .multiplicity(&up, &down)?,
            };
            Ok(Output::new(json!({
                "case": case_number(case),
                "up": up,
                "down": down,
                "multiplicity": m,
            })))
        }
        _ => {
            let (Some(n), Some(n2)) = (n_k, n_prime_k) else {
                return Err(CliError::Parse("omega needs --up and --down, or --Nk and --Nk-prime".into()));
            };
            let terms: Vec<Value> = OmegaInstance::new(n, n2, case)
                .expand()
                .into_iter()
                .map(|((up, down), m)| json!({"up": up, "down": down, "multiplicity": m}))
                .collect();
            let total: u64 = terms.iter().map(|t| t["multiplicity"].as_u64().unwrap_or(0)).sum();
            Ok(Output::new(json!({
                "case": case_number(case),
                "n_k": n,
                "n_prime_k": n2,
                "total": total,
                "terms": terms,
            })))
        }
    }
}

fn validate(n_k: u32, n_prime_k: u32, comparator: &str, summary: bool) -> CliResult {
    let comparators: Vec<Comparator> = if comparator == "all" {
        Comparator::ALL.to_vec()
    } else {
        vec![comparator.parse()?]
    };
    let mut reports = Vec::new();
    let mut diagnostics = Vec::new();
    for c in comparators {
        let r = validate_extremal(n_k, n_prime_k, c)?;
        let name = to_value(&c);
        let name = name.as_str().unwrap_or_default();
        if !r.all_members {
            diagnostics.push(format!("{name}: a closed form is not in its theta set"));
        }
        if !r.all_max_greatest || !r.all_min_least {
            let bad = r.findings.iter().filter(|f| !f.max_greatest || !f.min_least).count();
            diagnostics.push(format!("{name}: closed forms are not extremal for {bad} label(s)"));
        }
        let mut v = to_value(&r);
        if summary {
            if let Some(obj) = v.as_object_mut() {
                obj.remove("findings");
                obj.insert("labels".into(), json!(r.findings.len()));
            }
        }
        reports.push(v);
    }
    Ok(Output::new(json!({ "reports": reports })).with_diagnostics(diagnostics))
}

fn centralizer(s: EigenData) -> CliResult {
    let d = centralizer_decomposition(&s)?;
    let factors: Vec<Value> = d
        .factors
        .iter()
        .map(|f| {
            let mut v = to_value(f);
            if let Some(obj) = v.as_object_mut() {
                obj.insert("name".into(), json!(f.to_string()));
            }
            v
        })
        .collect();
    let ambiguous = d.ambiguous_count();
    let diagnostics = if ambiguous > 0 {
        vec![format!("{ambiguous} orthogonal factor(s) with undetermined sign")]
    } else {
        Vec::new()
    };
    Ok(Output::new(json!({
        "ambient": d.ambient,
        "factors": factors,
        "total_rank": d.total_rank(),
        "ambiguous": ambiguous,
    }))
    .with_diagnostics(diagnostics))
}

fn order(g: GroupDescriptor) -> CliResult {
    let o = g.order();
    let mut payload = json!({
        "group": g.to_string(),
        "order": o.to_string(),
        "cyclotomic": o.cyclotomic().to_string(),
    });
    let obj = payload.as_object_mut().expect("object literal");
    match g.q {
        Some(q) => {
            obj.insert("value".into(), big(&o.evaluate(q)));
            obj.insert("p_prime".into(), big(&o.p_prime_value(q)?));
        }
        None => {
            obj.insert("p_prime".into(), json!(p_prime_part(&g)?.to_string()));
        }
    }
    Ok(Output::new(payload))
}

fn big(n: &num_bigint::BigUint) -> Value {
    use num_traits::ToPrimitive;
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimDoc {
    group: GroupDescriptor,
    eigen: EigenData,
    dim_u: u64,
}

fn dim(doc: DimDoc) -> CliResult {
    let values = dim_from_unipotent(&doc.group, &doc.eigen, doc.dim_u)?;
    Ok(Output::new(json!({
        "group": doc.group.to_string(),
        "dim_u": doc.dim_u,
        "values": values,
    })))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ParamsDoc {
    Named(String),
    Explicit(Vec<SimpleParam>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RGroupDoc {
    generators: Vec<(String, Vec<Vec<i64>>)>,
    #[serde(default)]
    cocycle: Vec<((String, String), LaurentCoeff)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HeckeDoc {
    #[serde(rename = "type")]
    cartan: Option<String>,
    isogeny: Option<String>,
    datum: Option<RootDatumDoc>,
    params: Option<ParamsDoc>,
    rgroup: Option<RGroupDoc>,
    expr: Option<String>,
    #[serde(default)]
    verify: bool,
}

fn hecke(doc: HeckeDoc) -> CliResult {
    let datum = match (&doc.cartan, doc.datum) {
        (Some(ty), None) => {
            let ty: CartanType = ty.parse()?;
            let iso: Isogeny = serde_json::from_value(json!(doc.isogeny.as_deref().unwrap_or("simply-connected")))
                .map_err(|_| CliError::Parse(format!("unknown isogeny {:?}", doc.isogeny)))?;
            RootDatum::cartan(ty, iso)?
        }
        (None, Some(d)) => RootDatum::try_from(d)?,
        _ => return Err(CliError::Parse("give exactly one of \"type\" and \"datum\"".into())),
    };
    let params = match doc.params.unwrap_or(ParamsDoc::Named("generic".into())) {
        ParamsDoc::Named(n) if n == "generic" => HeckeParams::generic(datum)?,
        ParamsDoc::Named(n) if n == "generic-unequal" => HeckeParams::generic_unequal(datum)?,
        ParamsDoc::Named(n) => return Err(CliError::Parse(format!("unknown parameter preset {n:?}"))),
        ParamsDoc::Explicit(p) => HeckeParams::new(datum, p)?,
    };
    let h = match doc.rgroup {
        Some(r) => HeckeAlgebra::extend_by_rgroup(params, &r.generators, &r.cocycle)?,
        None => HeckeAlgebra::new(params),
    };
    if doc.expr.is_none() && !doc.verify {
        return Err(CliError::Parse("nothing to do: give an expression or ask to verify".into()));
    }
    let mut payload = json!({
        "rank": h.datum().rank(),
        "weyl_order": h.weyl().order(),
        "rgroup": h.rgroup().labels(),
        "params": h.params().simple_params(),
    });
    let obj = payload.as_object_mut().expect("object literal");
    let mut diagnostics = Vec::new();
    if let Some(text) = &doc.expr {
        let e = h.evaluate(text)?;
        obj.insert("expr".into(), json!(text));
        obj.insert("normal_form".into(), json!(h.display(&e)));
        obj.insert("terms".into(), to_value(&h.records(&e)));
    }
    if doc.verify {
        let report = h.verify_relations();
        diagnostics.extend(report.failures().map(|c| format!("relation fails: {}", c.relation)));
        obj.insert("relations".into(), to_value(&report));
    }
    Ok(Output::new(payload).with_diagnostics(diagnostics))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaDoc {
    source: InertialClass,
    target: Side,
    target_size: u32,
    first_occurrence: FirstOccurrenceTable,
    #[serde(default)]
    reducibility: Option<BTreeMap<String, Reducibility>>,
    /// Ambient size bound for the base's first occurrence.
    #[serde(default)]
    bound: Option<u32>,
}

fn theta(doc: ThetaDoc) -> CliResult {
    let t = support_transfer(&doc.source, &doc.target, doc.target_size, &doc.first_occurrence)?;
    let class = t.support.normalized();
    let mut payload = json!({
        "direction": t.direction,
        "d0": t.d0,
        "chain_length": t.chain_length,
        "support": t.support,
        "class": class,
    });
    let obj = payload.as_object_mut().expect("object literal");
    let mut diagnostics = Vec::new();
    if let Some(red) = &doc.reducibility {
        let mut red = red.clone();
        // The chain characters are unramified, hence self-dual with a parameter.
        red.entry("triv".into()).or_insert(Reducibility::SelfdualWithParameter);
        let source = block_weyl_shape(&doc.source, &red)?;
        let image = block_weyl_shape(&class, &red)?;
        if source.components.iter().chain(&image.components).any(|c| c.caller_decides) {
            diagnostics.push("non-self-dual components: the R-group contribution is left to the caller".into());
        }
        obj.insert("shapes".into(), json!({"source": source, "image": image}));
    }
    if let Some(bound) = doc.bound {
        let fo = doc.first_occurrence.get(&doc.source.base.label, &doc.target.tower())?;
        obj.insert("occurrence".into(), to_value(&occurrence_bounds(fo, bound)?));
    }
    Ok(Output::new(payload).with_diagnostics(diagnostics))
}

fn compat(input: CompatInput) -> CliResult {
    let report = lusztig_compat_check(&input)?;
    let diagnostics = report
        .bullets
        .iter()
        .filter(|b| b.status != CompatStatus::Pass)
        .map(|b| format!("{}: {}", to_value(&b.bullet).as_str().unwrap_or_default(), b.detail))
        .collect();
    Ok(Output::new(to_value(&report)).with_diagnostics(diagnostics))
}
