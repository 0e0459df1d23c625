//! Report types and their JSON encoding.
//!
//! Floats are written with 17 significant digits in scientific notation, so
//! a report pins every bit of every number and identical runs give
//! identical bytes.

use std::io;

use serde::ser::Serialize;
use serde::{Deserialize, Serialize as SerializeDerive};
use serde_json::ser::{Formatter, PrettyFormatter};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Pretty JSON with `{:.16e}` floats.
pub struct ExactFloatFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for ExactFloatFormatter<'_> {
    fn default() -> Self {
        ExactFloatFormatter {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

impl Formatter for ExactFloatFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, ExactFloatFormatter::default());
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly into memory");
    out.push(b'\n');
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, SerializeDerive, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub instance: Option<String>,
    pub status: Status,
    /// Human-readable lines, also printed to stdout.
    pub summary: Vec<String>,
    pub body: Body,
}

impl Report {
    pub fn new(
        command: &str,
        instance: Option<&str>,
        status: Status,
        summary: Vec<String>,
        body: Body,
    ) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            instance: instance.map(str::to_string),
            status,
            summary,
            body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Radius(RadiusBody),
    Center(CenterBody),
    NearCenter(NearCenterBody),
    Repair(RepairBody),
    Modulus(ModulusBody),
    Lemmas(LemmasBody),
    Garkavi(GarkaviBody),
    Corpus(CorpusBody),
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct RadiusBody {
    pub constraint: String,
    pub radius: f64,
    pub representative: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct ConstructiveBody {
    pub layout: String,
    pub subcase: String,
    pub alpha: f64,
    pub radius: f64,
    pub h: Vec<f64>,
    /// `r(h, F) - R`
    pub excess: f64,
    pub residual: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct CenterBody {
    pub constraint: String,
    /// `"affine_on_simplex"` when the family is read as vertex values.
    pub interpretation: String,
    pub radius: f64,
    pub representative: Vec<f64>,
    pub vertices: Vec<Vec<f64>>,
    /// The clamping construction for `V = B_Y`.
    pub constructive: Option<ConstructiveBody>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct NearCenterBody {
    pub constraint: String,
    pub delta: f64,
    pub radius: f64,
    pub vertices: Vec<Vec<f64>>,
    pub worst_distance: f64,
    pub witness: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct RepairBody {
    pub eps: f64,
    pub delta: f64,
    pub subcase: String,
    pub alpha: f64,
    pub radius: f64,
    pub g: Vec<f64>,
    pub z: Vec<f64>,
    pub g_prime: Vec<f64>,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
    pub displacement: f64,
    pub distance_to_center: f64,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct ModulusEntryBody {
    pub eps: f64,
    pub delta: f64,
    pub probes: usize,
    pub witness: Option<Vec<f64>>,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct ModulusBody {
    pub constraint: String,
    pub radius: f64,
    pub delta_max: f64,
    pub entries: Vec<ModulusEntryBody>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct LemmasBody {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    /// Largest observed value of the suite's defect measure; at most zero
    /// when every trial passes.
    pub worst_defect: f64,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct CertificateBody {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct TrendBody {
    pub n: usize,
    pub alpha: f64,
    pub radius: f64,
    pub phi_at_center: f64,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct GarkaviBody {
    pub n: usize,
    pub seed: u64,
    pub rejected_seeds: Vec<u64>,
    pub alpha: f64,
    pub gamma: f64,
    pub theta: f64,
    pub facets: usize,
    pub c1: f64,
    pub c2: f64,
    pub certificates: Vec<CertificateBody>,
    pub homogeneity: f64,
    pub symmetry: f64,
    pub triangle: f64,
    pub route_gap: f64,
    /// Hausdorff distance between `P_Y(x0)` and `B_gamma`.
    pub projection_gap: f64,
    /// `|d(x0, Y) - 1|`
    pub distance_gap: f64,
    pub projection_cases: usize,
    pub worst_outward: f64,
    pub worst_inward: f64,
    pub replays: usize,
    pub worst_replay: f64,
    pub covariance_gap: f64,
    /// The build with no margin between `U` and the small ball must fail.
    pub zero_margin_fails: bool,
    pub trend: Vec<TrendBody>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct ModulusSweep {
    pub constraint: String,
    pub eps: Vec<f64>,
    pub delta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct RepairSweep {
    pub eps: f64,
    pub delta: f64,
    pub subcase: String,
    pub trials: usize,
    pub failures: usize,
    pub worst_distance_to_center: f64,
    /// `max ||g - h2|| - eps`
    pub worst_overshoot: f64,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct CenterEntry {
    pub radius: f64,
    pub vertex_count: usize,
    pub constructive: ConstructiveBody,
    pub moduli: Vec<ModulusSweep>,
    pub repairs: Vec<RepairSweep>,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryBody {
    Center(CenterEntry),
    Garkavi(GarkaviBody),
    Error(String),
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct CorpusEntry {
    pub file: String,
    pub name: String,
    pub passed: bool,
    pub body: EntryBody,
}

#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct CorpusBody {
    pub entries: Vec<CorpusEntry>,
}
