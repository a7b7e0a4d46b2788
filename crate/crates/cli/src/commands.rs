//! One function per subcommand. Each returns `Ok(false)` when a requested
//! verification ran and failed.

use num_bigint::BigInt;
use rayon::prelude::*;
use relmod::dimension::{self, SimpleModuleDescriptor, TableRow};
use relmod::functor::{relation_matrix, Evaluation, OrbitBasis, VRep};
use relmod::oracle::{verify_basis_with, VerifyOptions};
use relmod::poset::enumerate_posets;
use relmod::{Correspondence, Error, Lattice, Rational, RationalMatrix, Result};
use serde::Serialize;

use crate::output::{Format, Report};
use crate::{input, Cli, Command, RepArgs, VerifyArgs};

/// Largest number of relation pairs `rep --check` will multiply out.
const MAX_CHECK_PAIRS: u128 = 1 << 20;

pub fn run(cli: &Cli) -> Result<bool> {
    let f = cli.format;
    match &cli.command {
        Command::Dims { poset, x, dim_v } => dims(f, poset, *x, *dim_v),
        Command::Radical { n, table } => radical(f, *n, *table),
        Command::Posets { e } => posets(f, *e),
        Command::Table { n } => table(f, *n),
        Command::Rep(args) => rep(f, args),
        Command::Verify(args) => verify(f, cli.guard_cells, args),
    }
}

fn strings(header: &[&str]) -> Vec<String> {
    header.iter().map(|s| s.to_string()).collect()
}

fn covers_text(covers: &[(usize, usize)]) -> String {
    covers.iter().map(|(a, b)| format!("{a}<{b}")).collect::<Vec<_>>().join(" ")
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Serialize)]
struct DimsOut {
    poset: relmod::Poset,
    e: usize,
    aut: usize,
    g: usize,
    x: usize,
    dim_v: usize,
    #[serde(serialize_with = "decimal")]
    dim_fundamental: BigInt,
    #[serde(serialize_with = "decimal")]
    dim_simple: BigInt,
}

fn dims(f: Format, poset: &str, x: usize, dim_v: usize) -> Result<bool> {
    let d = SimpleModuleDescriptor::new(input::poset(poset)?, dim_v)?;
    let out = DimsOut {
        e: d.e(),
        aut: d.aut_order,
        g: d.g_size,
        x,
        dim_v,
        dim_fundamental: d.dim_fundamental(x)?,
        dim_simple: d.dim_simple(x)?,
        poset: d.poset.clone(),
    };
    let row = vec![
        out.e.to_string(),
        out.aut.to_string(),
        out.g.to_string(),
        x.to_string(),
        dim_v.to_string(),
        out.dim_fundamental.to_string(),
        out.dim_simple.to_string(),
    ];
    Report {
        json: &out,
        header: strings(&["e", "aut", "g", "x", "dim_v", "dim_fundamental", "dim_simple"]),
        rows: vec![row],
        preamble: vec![],
    }
    .emit(f)?;
    Ok(true)
}

fn table_rows(rows: &[TableRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.e.to_string(),
                covers_text(&r.covers),
                r.aut.to_string(),
                r.g.to_string(),
                r.sum.to_string(),
                r.total.to_string(),
            ]
        })
        .collect()
}

const TABLE_HEADER: [&str; 6] = ["e", "covers", "aut", "g", "sum", "total"];

#[derive(Serialize)]
struct RadicalOut<'a> {
    n: usize,
    #[serde(serialize_with = "decimal")]
    radical: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<&'a [TableRow]>,
}

fn radical(f: Format, n: usize, with_table: bool) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let rows = dimension::example_table(n)?;
    let radical = dimension::radical_from_table(n, &rows)?;
    let out = RadicalOut {
        n,
        radical: radical.clone(),
        table: with_table.then_some(rows.as_slice()),
    };
    let report = if with_table {
        Report {
            json: &out,
            header: strings(&TABLE_HEADER),
            rows: table_rows(&rows),
            preamble: vec![format!("radical dimension for n = {n}: {radical}")],
        }
    } else {
        Report {
            json: &out,
            header: strings(&["n", "radical"]),
            rows: vec![vec![n.to_string(), radical.to_string()]],
            preamble: vec![],
        }
    };
    report.emit(f)?;
    Ok(true)
}

#[derive(Serialize)]
struct TableOut<'a> {
    n: usize,
    rows: &'a [TableRow],
    #[serde(serialize_with = "decimal")]
    semisimple_total: BigInt,
}

fn table(f: Format, n: usize) -> Result<bool> {
    let rows = dimension::example_table(n)?;
    let total: BigInt = rows.iter().map(|r| &r.total).sum();
    let out = TableOut {
        n,
        rows: &rows,
        semisimple_total: total.clone(),
    };
    Report {
        json: &out,
        header: strings(&TABLE_HEADER),
        rows: table_rows(&rows),
        preamble: vec![format!("n = {n}, {} classes, total {total}", rows.len())],
    }
    .emit(f)?;
    Ok(true)
}

#[derive(Serialize)]
struct ClassOut {
    covers: Vec<(usize, usize)>,
    matrix: relmod::Poset,
    aut: usize,
    g: usize,
}

#[derive(Serialize)]
struct PosetsOut {
    e: usize,
    count: usize,
    classes: Vec<ClassOut>,
}

fn posets(f: Format, e: usize) -> Result<bool> {
    let classes: Vec<ClassOut> = enumerate_posets(e)?
        .into_par_iter()
        .map(|c| {
            Ok(ClassOut {
                covers: c.poset.cover_pairs(),
                g: dimension::g_size(&c.poset)?,
                aut: c.aut_order,
                matrix: c.poset,
            })
        })
        .collect::<Result<_>>()?;
    let rows = classes
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), covers_text(&c.covers), c.aut.to_string(), c.g.to_string()])
        .collect();
    let out = PosetsOut {
        e,
        count: classes.len(),
        classes,
    };
    Report {
        json: &out,
        header: strings(&["index", "covers", "aut", "g"]),
        rows,
        preamble: vec![format!("{} classes of posets on {e} elements", out.count)],
    }
    .emit(f)?;
    Ok(true)
}

#[derive(Serialize)]
struct OrbitOut {
    representative: usize,
    members: Vec<usize>,
}

#[derive(Serialize)]
struct RelationOut {
    relation: Vec<String>,
    matrix: RationalMatrix,
}

#[derive(Serialize)]
struct CheckOut {
    pairs: usize,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct RepOut {
    lattice: Vec<String>,
    group: Vec<Vec<usize>>,
    dim: usize,
    basis: Vec<Vec<String>>,
    orbits: Vec<OrbitOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<RationalMatrix>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    matrices: Vec<RelationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<CheckOut>,
}

/// Index of `u` in [`Correspondence::all_relations`].
fn relation_code(u: &Correspondence) -> usize {
    let n = u.source_size();
    (0..u.target_size())
        .flat_map(|y| u.row_iter(y).map(move |x| 1usize << (y * n + x)))
        .sum()
}

fn check_homomorphism(
    eval: &Evaluation,
    ob: &OrbitBasis,
    vrep: &VRep<Rational>,
) -> Result<CheckOut> {
    let x = eval.x;
    let pairs = 1u128 << (2 * x * x);
    if pairs > MAX_CHECK_PAIRS {
        return Err(Error::Guard {
            what: "relation pairs to check",
            requested: pairs,
            limit: MAX_CHECK_PAIRS,
        });
    }
    let relations = Correspondence::all_relations(x)?;
    let mats: Vec<RationalMatrix> = relations
        .par_iter()
        .map(|u| relation_matrix(eval, ob, u, vrep))
        .collect::<Result<_>>()?;
    let id = &mats[relation_code(&Correspondence::identity(x))];
    if *id != RationalMatrix::identity(id.rows()) {
        return Ok(CheckOut {
            pairs: 0,
            passed: false,
            witness: Some("the identity relation does not act as the identity".into()),
        });
    }
    let failure = (0..relations.len() * relations.len())
        .into_par_iter()
        .map(|k| -> Result<Option<usize>> {
            let (i, j) = (k / relations.len(), k % relations.len());
            let prod = relations[i].compose(&relations[j])?;
            Ok((mats[relation_code(&prod)] != mats[i].mul(&mats[j])?).then_some(k))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min();
    let witness = failure.map(|k| {
        let (i, j) = (k / relations.len(), k % relations.len());
        format!(
            "U = {:?}, V = {:?}",
            relations[i].rows_as_strings(),
            relations[j].rows_as_strings()
        )
    });
    Ok(CheckOut {
        pairs: relations.len() * relations.len(),
        passed: witness.is_none(),
        witness,
    })
}

fn map_labels(lat: &Lattice, m: &[u16]) -> Vec<String> {
    m.iter().map(|&t| lat.label(t as usize).to_string()).collect()
}

fn rep(f: Format, args: &RepArgs) -> Result<bool> {
    if args.relation.is_none() && !args.all && !args.check {
        return Err(Error::Precondition("give --relation FILE, --all or --check".into()));
    }
    let eval = Evaluation::new(args.source.lattice()?, args.x)?;
    let ob = OrbitBasis::new(&eval)?;
    let vrep = match args.vrep.as_str() {
        "trivial" => VRep::trivial(&ob.group),
        "sign" => VRep::sign(&ob.group),
        path => VRep::from_matrices(&ob.group, input::vrep_matrices(path, &ob.group)?)?,
    };
    let lat = &eval.lattice;
    let mut out = RepOut {
        lattice: lat.labels().to_vec(),
        group: ob.group.elements().iter().map(|p| p.images().to_vec()).collect(),
        dim: ob.orbit_count() * vrep.dim(),
        basis: eval.basis.maps().iter().map(|m| map_labels(lat, m)).collect(),
        orbits: ob
            .representatives
            .iter()
            .enumerate()
            .map(|(i, &rep)| OrbitOut {
                representative: rep,
                members: (0..eval.basis.len()).filter(|&p| ob.orbit_of[p].0 == i).collect(),
            })
            .collect(),
        matrix: None,
        matrices: Vec::new(),
        check: None,
    };
    if let Some(path) = &args.relation {
        let u = input::relation(path)?;
        out.matrices.push(RelationOut {
            relation: u.rows_as_strings(),
            matrix: relation_matrix(&eval, &ob, &u, &vrep)?,
        });
    }
    if args.all {
        for u in Correspondence::all_relations(args.x)? {
            out.matrices.push(RelationOut {
                relation: u.rows_as_strings(),
                matrix: relation_matrix(&eval, &ob, &u, &vrep)?,
            });
        }
    }
    if args.check {
        out.check = Some(check_homomorphism(&eval, &ob, &vrep)?);
    }
    let passed = out.check.as_ref().is_none_or(|c| c.passed);

    let mut header = strings(&["relation", "row"]);
    header.extend((0..out.dim).map(|j| format!("c{j}")));
    let mut rows = Vec::new();
    for r in &out.matrices {
        for (i, row) in r.matrix.rendered().into_iter().enumerate() {
            let mut cells = vec![r.relation.join("/"), i.to_string()];
            cells.extend(row);
            rows.push(cells);
        }
    }
    let mut preamble = vec![
        format!("module dimension {} ({} orbits on {} basis maps)", out.dim, ob.orbit_count(), eval.basis.len()),
    ];
    if let Some(c) = &out.check {
        preamble.push(match &c.witness {
            None => format!("homomorphism check passed on {} pairs", c.pairs),
            Some(w) => format!("homomorphism check FAILED: {w}"),
        });
    }
    if args.relation.is_some() && !args.all {
        out.matrix = out.matrices.pop().map(|r| r.matrix);
    }
    if out.dim == 0 {
        header.truncate(2);
    }
    Report {
        json: &out,
        header,
        rows,
        preamble,
    }
    .emit(f)?;
    Ok(passed)
}

fn verify(f: Format, guard_cells: u128, args: &VerifyArgs) -> Result<bool> {
    let lat = args.source.lattice()?;
    let opts = VerifyOptions {
        guard_cells,
        timings: args.timings,
        corrupt_u: args.corrupt_u,
    };
    let report = verify_basis_with(&lat, args.x, &opts)?;
    let rows = report
        .checks
        .iter()
        .map(|c| vec![c.name.to_string(), c.passed.to_string(), c.witness.clone().unwrap_or_default()])
        .collect();
    let preamble = vec![
        format!(
            "|T| = {}, |E| = {}, |G| = {}, |X| = {}, |B_X| = {}",
            report.lattice_size, report.irreducibles, report.g_size, report.x, report.basis_size
        ),
        format!(
            "N is {} x {}, rank {}; rank of M {}",
            report.n_rows, report.n_cols, report.rank_n, report.rank_m
        ),
    ];
    Report {
        json: &report,
        header: strings(&["check", "passed", "witness"]),
        rows,
        preamble,
    }
    .emit(f)?;
    Ok(report.passed)
}
