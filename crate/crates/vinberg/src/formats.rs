//! JSON and DOT formats for Cartan matrices, seeds, points and presentations.
//!
//! Rationals are written as strings (`"3"`, `"-1/2"`).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use vinberg_core::cartan::{CartanMatrix, Weight};
use vinberg_core::cluster::SeedState;
use vinberg_core::group::GroupPoint;
use vinberg_core::monoid::MonoidPresentation;
use vinberg_core::seed::{LabelKind, LeviSeed, MinorLabel, Seed};
use vinberg_core::Rational;

use crate::CliError;

pub fn rational_to_string(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(|_| CliError::Input(format!("not a rational: {s:?}")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CartanFile {
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub matrix: Vec<Vec<i64>>,
}

impl CartanFile {
    pub fn from_cartan(c: &CartanMatrix) -> Self {
        CartanFile {
            labels: Some(c.labels().to_vec()),
            matrix: c.entries().clone(),
        }
    }

    pub fn to_cartan(&self) -> Result<CartanMatrix, CliError> {
        let c = match &self.labels {
            Some(l) => CartanMatrix::new(l.clone(), self.matrix.clone()),
            None => CartanMatrix::from_entries(self.matrix.clone()),
        };
        Ok(c?)
    }
}

/// A specialization matrix, either bare or wrapped as `{"matrix": ...}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    Wrapped { matrix: Vec<Vec<i64>> },
    Bare(Vec<Vec<i64>>),
}

impl SpecFile {
    pub fn matrix(&self) -> &[Vec<i64>] {
        match self {
            SpecFile::Wrapped { matrix } | SpecFile::Bare(matrix) => matrix,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub u_word: Vec<usize>,
    pub v_word: Vec<usize>,
    pub level: usize,
    pub kind: String,
    pub torus_shift: Vec<i64>,
}

impl LabelJson {
    pub fn from_label(l: &MinorLabel) -> Self {
        LabelJson {
            u_word: l.u_word.clone(),
            v_word: l.v_word.clone(),
            level: l.level,
            kind: match l.kind {
                LabelKind::Minor => "minor".into(),
                LabelKind::FrameCharacter => "frame_character".into(),
            },
            torus_shift: l.torus_shift.0.clone(),
        }
    }

    pub fn to_label(&self) -> Result<MinorLabel, CliError> {
        let kind = match self.kind.as_str() {
            "minor" => LabelKind::Minor,
            "frame_character" => LabelKind::FrameCharacter,
            other => return Err(CliError::Input(format!("unknown label kind {other:?}"))),
        };
        Ok(MinorLabel {
            u_word: self.u_word.clone(),
            v_word: self.v_word.clone(),
            level: self.level,
            kind,
            torus_shift: Weight(self.torus_shift.clone()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: i64,
    pub name: String,
    pub level: usize,
    pub frozen: bool,
    #[serde(default = "one")]
    pub symmetrizer: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<LabelJson>,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFile {
    pub vertices: Vec<VertexJson>,
    pub epsilon: Vec<Vec<String>>,
    /// Frozen vertices whose valuations are required nonnegative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<String>>,
    /// Mutation path from the initial seed, by vertex name.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub path: Vec<String>,
    /// Cluster variables as Laurent polynomials in the initial cluster.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
}

impl SeedFile {
    pub fn from_seed(seed: &Seed, labels: Option<&[MinorLabel]>) -> Self {
        let vertices = (0..seed.len())
            .map(|p| VertexJson {
                id: seed.ids()[p],
                name: seed.names()[p].clone(),
                level: seed.levels()[p],
                frozen: !seed.is_mutable(p),
                symmetrizer: seed.symmetrizers()[p],
                label: labels.map(|l| LabelJson::from_label(&l[p])),
            })
            .collect();
        let epsilon = seed
            .epsilon()
            .iter()
            .map(|r| r.iter().map(rational_to_string).collect())
            .collect();
        SeedFile {
            vertices,
            epsilon,
            sigma: None,
            path: Vec::new(),
            variables: None,
        }
    }

    pub fn from_levi(fs: &LeviSeed) -> Self {
        let mut f = Self::from_seed(&fs.built.seed, Some(&fs.built.labels));
        let names = fs.built.seed.names();
        f.sigma = Some(fs.sigma.iter().map(|&p| names[p].clone()).collect());
        f
    }

    /// Seed file for a mutated state; variables are written in the names of
    /// the initial seed.
    pub fn from_state(state: &SeedState, initial_names: &[String], labels: Option<&[MinorLabel]>) -> Self {
        let mut f = Self::from_seed(&state.seed, labels);
        f.path = state.path.iter().map(|&p| initial_names[p].clone()).collect();
        f.variables = Some(state.vars.iter().map(|v| v.display(initial_names)).collect());
        f
    }

    pub fn to_seed(&self) -> Result<Seed, CliError> {
        let n = self.vertices.len();
        if self.epsilon.len() != n || self.epsilon.iter().any(|r| r.len() != n) {
            return Err(CliError::Input("epsilon must be square with one row per vertex".into()));
        }
        let epsilon = self
            .epsilon
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        let v = &self.vertices;
        Ok(Seed::from_matrix(
            v.iter().map(|x| x.id).collect(),
            v.iter().map(|x| x.name.clone()).collect(),
            v.iter().map(|x| !x.frozen).collect(),
            epsilon,
            v.iter().map(|x| x.symmetrizer).collect(),
            v.iter().map(|x| x.level).collect(),
        )?)
    }

    /// Labels, if every vertex carries one.
    pub fn labels(&self) -> Result<Option<Vec<MinorLabel>>, CliError> {
        self.vertices
            .iter()
            .map(|v| v.label.as_ref().map(|l| l.to_label()).transpose())
            .collect::<Result<Option<Vec<_>>, _>>()
    }
}

/// Graphviz rendering: an arrow `j -> k` for every `eps_jk > 0`, labelled
/// with the entry when it is not 1. Frozen vertices are boxes.
pub fn seed_to_dot(seed: &Seed) -> String {
    let mut out = String::from("digraph seed {\n");
    for p in 0..seed.len() {
        let shape = if seed.is_mutable(p) { "circle" } else { "box" };
        writeln!(out, "  \"{}\" [shape={shape}];", seed.names()[p]).unwrap();
    }
    for (j, k, e) in seed.arrows() {
        let (a, b) = (&seed.names()[j], &seed.names()[k]);
        if e == Rational::from_integer(1.into()) {
            writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
        } else {
            writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{e}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Plain-text table of a seed.
pub fn seed_to_text(seed: &Seed) -> String {
    let mut out = String::new();
    for p in 0..seed.len() {
        let kind = if seed.is_mutable(p) { "mutable" } else { "frozen" };
        writeln!(
            out,
            "{:>4} {:<6} level {:<2} {kind}",
            seed.ids()[p],
            seed.names()[p],
            seed.levels()[p]
        )
        .unwrap();
    }
    for row in seed.epsilon() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>5}")).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFile {
    pub matrix: Vec<Vec<String>>,
    pub torus: Vec<String>,
}

impl PointFile {
    pub fn from_point(p: &GroupPoint) -> Self {
        PointFile {
            matrix: p
                .matrix
                .iter()
                .map(|r| r.iter().map(rational_to_string).collect())
                .collect(),
            torus: p.torus.iter().map(rational_to_string).collect(),
        }
    }

    pub fn to_point(&self) -> Result<GroupPoint, CliError> {
        let matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        let torus = self
            .torus
            .iter()
            .map(|x| parse_rational(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPoint { matrix, torus })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub target: Vec<String>,
    /// `generator -> image` in the target ring.
    pub substitutions: Vec<(String, String)>,
    pub verified: bool,
}

impl PresentationFile {
    pub fn from_presentation(p: &MonoidPresentation) -> Result<Self, CliError> {
        Ok(PresentationFile {
            generators: p.generators.clone(),
            relations: p.relation_strings(),
            target: p.target_names.clone(),
            substitutions: p
                .generators
                .iter()
                .zip(&p.substitution)
                .map(|(g, s)| (g.clone(), s.to_canonical_string(&p.target_names)))
                .collect(),
            verified: p.verify()?,
        })
    }
}
