use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use torusgcd::curves::find_basis_curves;
use torusgcd::families::{self, GradedFixture};
use torusgcd::grading::choice_string;
use torusgcd::torusword::{abelianize, chain_a_cyc, cyclic_reduce, degree_word, normal_form_word};
use torusgcd::{
    ag_formula, ag_invariant, build_quiver, chain_complex, cut_algebra, degree,
    derived_equivalent_torus, enumerate_admissible_cuts, gcd_invariant, homology, io, AgInvariant,
    CrossingWord, DegreeMap, MarkoffDegree, Quiver, TorusInput, TorusWord, TriangulatedSurface,
};

use crate::{Command, Family, Format, Graded, OtherGraded};

pub enum CliError {
    Io(String),
    Domain(torusgcd::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(e) if e.is_invariant_violation() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(s) => write!(f, "{s}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<torusgcd::Error> for CliError {
    fn from(e: torusgcd::Error) -> Self {
        CliError::Domain(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Result<TriangulatedSurface> {
    Ok(io::parse_surface(&read(path)?)?)
}

fn load_degree(path: &Path, q: &Quiver) -> Result<DegreeMap> {
    Ok(io::parse_degree(&read(path)?, q)?)
}

fn load_curve(path: &Path, s: &TriangulatedSurface) -> Result<CrossingWord> {
    Ok(io::parse_curve(&read(path)?, s)?)
}

struct Loaded {
    surface: TriangulatedSurface,
    cut: DegreeMap,
    a: CrossingWord,
    b: CrossingWord,
}

impl Loaded {
    fn new(surface: &Path, cut: &Path, a: &Path, b: &Path) -> Result<Self> {
        let surface = load_surface(surface)?;
        let q = build_quiver(&surface);
        let cut = load_degree(cut, &q)?;
        let a = load_curve(a, &surface)?;
        let b = load_curve(b, &surface)?;
        Ok(Loaded { surface, cut, a, b })
    }

    fn input(&self) -> TorusInput<'_> {
        TorusInput { surface: &self.surface, cut: &self.cut, a: &self.a, b: &self.b }
    }
}

fn machine<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ArrowRecord {
    id: usize,
    source: i64,
    target: i64,
    triangle: i64,
}

#[derive(Serialize)]
struct QuiverReport {
    vertices: Vec<i64>,
    arrows: Vec<ArrowRecord>,
    internal_triangles: Vec<[usize; 3]>,
}

#[derive(Serialize)]
struct CutRecord {
    cut: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    gcd: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ag: Option<Vec<(u64, u64)>>,
}

#[derive(Serialize)]
struct AgReport {
    ag: Vec<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<(i64, i64)>,
}

#[derive(Serialize)]
struct EquivReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    equivalent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ag_equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    necessary_condition_only: Option<bool>,
}

#[derive(Serialize)]
struct OracleReport {
    word: String,
    class: (i64, i64),
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear: Option<i64>,
}

fn fmt_pairs(p: &[(u64, u64)]) -> String {
    p.iter().map(|(n, m)| format!("({n},{m})")).collect::<Vec<_>>().join(",")
}

pub fn run(command: Command, format: Format) -> Result<String> {
    let text = format == Format::Text;
    match command {
        Command::Validate { surface } => {
            let p = load_surface(&surface)?.profile()?;
            Ok(if text {
                format!(
                    "valid genus={} boundary={} marked={} punctures={} arcs={} boundary_segments={} triangles={} internal={}\n",
                    p.genus,
                    p.boundary_components,
                    p.marked_points,
                    p.punctures,
                    p.arcs,
                    p.boundary_segments,
                    p.triangles,
                    p.internal_triangles
                )
            } else {
                machine(&p)
            })
        }
        Command::Quiver { surface } => {
            let s = load_surface(&surface)?;
            let q = build_quiver(&s);
            let label = |e: torusgcd::EdgeId| s.edge(e).label;
            let report = QuiverReport {
                vertices: q.vertices().iter().map(|e| label(*e)).collect(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| ArrowRecord {
                        id: a.id.0,
                        source: label(a.source),
                        target: label(a.target),
                        triangle: s.triangle(a.triangle).label,
                    })
                    .collect(),
                internal_triangles: q.internal_triangles().iter().map(|t| t.arrows.map(|a| a.0)).collect(),
            };
            if !text {
                return Ok(machine(&report));
            }
            let mut out = format!(
                "vertices={} arrows={} internal_triangles={}\n",
                report.vertices.len(),
                report.arrows.len(),
                report.internal_triangles.len()
            );
            for a in &report.arrows {
                writeln!(out, "arrow {}: {} -> {} in triangle {}", a.id, a.source, a.target, a.triangle).unwrap();
            }
            Ok(out)
        }
        Command::Cuts { surface, report, a, b } => {
            let s = load_surface(&surface)?;
            let q = build_quiver(&s);
            let basis = if !report {
                None
            } else if let (Some(a), Some(b)) = (a, b) {
                Some((load_curve(&a, &s)?, load_curve(&b, &s)?))
            } else {
                let h1 = homology(&chain_complex(&q)?, &s.profile()?)?;
                Some(find_basis_curves(&s, &h1)?)
            };
            let mut records = Vec::new();
            for (choice, d) in enumerate_admissible_cuts(&q) {
                let mut rec = CutRecord { cut: choice_string(&choice), gcd: None, ag: None };
                if let Some((a, b)) = &basis {
                    rec.gcd = Some(gcd_invariant(&s, &q, &d, a, b)?.0);
                    rec.ag = Some(ag_invariant(&cut_algebra(&q, &d)?)?.pairs());
                }
                records.push(rec);
            }
            if !text {
                return Ok(machine(&records));
            }
            let mut out = String::new();
            for r in &records {
                match (&r.gcd, &r.ag) {
                    (Some(g), Some(ag)) => writeln!(out, "cut={} gcd={g} ag={}", r.cut, fmt_pairs(ag)).unwrap(),
                    _ => writeln!(out, "cut={}", r.cut).unwrap(),
                }
            }
            Ok(out)
        }
        Command::Degree { surface, cut, curve } => {
            let s = load_surface(&surface)?;
            let q = build_quiver(&s);
            let d = load_degree(&cut, &q)?;
            let c = load_curve(&curve, &s)?;
            let value = degree(&c, &q, &d)?;
            Ok(if text { format!("degree={value}\n") } else { machine(&serde_json::json!({ "degree": value })) })
        }
        Command::Invariant(g) => {
            let x = Loaded::new(&g.surface, &g.cut, &g.a, &g.b)?;
            let q = build_quiver(&x.surface);
            let value = gcd_invariant(&x.surface, &q, &x.cut, &x.a, &x.b)?.0;
            Ok(if text { format!("gcd={value}\n") } else { machine(&serde_json::json!({ "gcd": value })) })
        }
        Command::Ag { surface, cut } => {
            let s = load_surface(&surface)?;
            let q = build_quiver(&s);
            let d = load_degree(&cut, &q)?;
            let ag = ag_invariant(&cut_algebra(&q, &d)?)?.pairs();
            let p = s.profile()?;
            let formula = if p.genus == 1 && p.boundary_components == 1 { Some(ag_formula(&s, &q, &d)?) } else { None };
            let report = AgReport { ag, formula };
            if !text {
                return Ok(machine(&report));
            }
            let mut out = format!("ag={}\n", fmt_pairs(&report.ag));
            if let Some((n, m)) = report.formula {
                writeln!(out, "formula=({n},{m})").unwrap();
            }
            Ok(out)
        }
        Command::Equiv { first, second, advisory } => equiv(first, second, advisory, text),
        Command::Family { kind, s, r, cut, out } => {
            let fx = match kind {
                Family::P2 => families::p2_example(cut)?,
                Family::Lambda0 => families::bm_lambda0(s, r)?,
                Family::Lambda0Prime => families::bm_lambda0_prime(s)?,
            };
            fs::create_dir_all(&out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            let written = write_fixture(&fx, &out)?;
            Ok(if text {
                written.iter().map(|p| format!("wrote {p}\n")).collect()
            } else {
                machine(&serde_json::json!({ "written": written }))
            })
        }
        Command::Oracle { word, class, degree } => oracle(word, class, degree, text),
    }
}

fn equiv(first: Graded, second: OtherGraded, advisory: bool, text: bool) -> Result<String> {
    let x = Loaded::new(&first.surface, &first.cut, &first.a, &first.b)?;
    let y = Loaded::new(&second.surface, &second.cut, &second.a, &second.b)?;
    let mut report = EquivReport { equivalent: None, ag_equal: None, necessary_condition_only: None };
    match derived_equivalent_torus(x.input(), y.input()) {
        Ok(v) => report.equivalent = Some(v),
        Err(torusgcd::Error::UnsupportedProfile(_)) if advisory => {}
        Err(e) => return Err(e.into()),
    }
    if advisory {
        let ag = |l: &Loaded| -> Result<AgInvariant> {
            let q = build_quiver(&l.surface);
            Ok(ag_invariant(&cut_algebra(&q, &l.cut)?)?)
        };
        report.ag_equal = Some(ag(&x)? == ag(&y)?);
        report.necessary_condition_only = Some(true);
    }
    if !text {
        return Ok(machine(&report));
    }
    let mut out = String::new();
    if let Some(v) = report.equivalent {
        writeln!(out, "equivalent={v}").unwrap();
    }
    if let Some(v) = report.ag_equal {
        writeln!(out, "ag_equal={v} necessary_condition_only=true").unwrap();
    }
    Ok(out)
}

fn write_fixture(fx: &GradedFixture, dir: &Path) -> Result<Vec<String>> {
    let files = [
        ("surface.json", io::write_surface(&fx.surface)),
        ("cut.json", io::write_degree(&fx.cut)),
        ("a.json", io::write_curve(&fx.a, &fx.surface)),
        ("b.json", io::write_curve(&fx.b, &fx.surface)),
        ("c.json", io::write_curve(&fx.c, &fx.surface)),
    ];
    let mut written = Vec::new();
    for (name, contents) in files {
        let path = dir.join(name);
        write(&path, &contents)?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Domain(torusgcd::Error::InvalidParameters(format!("bad integer {x:?}"))))
        })
        .collect()
}

fn oracle(word: Option<String>, class: Option<String>, degree: Option<String>, text: bool) -> Result<String> {
    let bad = |m: &str| CliError::Domain(torusgcd::Error::InvalidParameters(m.into()));
    let w = match (word, class) {
        (Some(w), None) => cyclic_reduce(&w.parse::<TorusWord>()?)?,
        (None, Some(c)) => match parse_ints(&c)?[..] {
            [l, m] => normal_form_word(l, m)?,
            _ => return Err(bad("--class takes two integers λ,μ")),
        },
        _ => return Err(bad("give exactly one of --word and --class")),
    };
    if w.is_empty() {
        return Err(bad("the word reduces to the trivial loop"));
    }
    let class = abelianize(&w)?;
    let mut report = OracleReport { word: w.to_string(), class, degree: None, linear: None };
    if let Some(d) = degree {
        let v: [i64; 6] = parse_ints(&d)?.try_into().map_err(|_| bad("--degree takes six integers"))?;
        let d = MarkoffDegree::new(v)?;
        report.degree = Some(degree_word(&w, &d)?);
        // degree predicted by linearity from the (1,0) and (0,1) classes
        let da = d.pair(&chain_a_cyc(&normal_form_word(1, 0)?)?);
        let db = d.pair(&chain_a_cyc(&normal_form_word(0, 1)?)?);
        report.linear = Some(class.0 * da + class.1 * db);
    }
    if !text {
        return Ok(machine(&report));
    }
    let mut out = format!("word={} class=({},{})", report.word, class.0, class.1);
    if let (Some(d), Some(l)) = (report.degree, report.linear) {
        write!(out, " degree={d} linear={l}").unwrap();
    }
    out.push('\n');
    Ok(out)
}
