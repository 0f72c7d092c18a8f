//! Problem instances and their JSON-lines file format.
//!
//! ```text
//! {"kind":"rects","n":2,"seed":7}
//! {"rect":[0,10,0,10]}
//! {"rect":[5,15,5,15]}
//! {"query":[3,12,3,12]}
//! ```

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AxisSeg2, Box3, Disk, Rect2};
use crate::sets::PairReport;

/// Object class of an instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kind {
    Segments,
    Rects,
    Boxes,
    Cubes,
    FatBoxes { alpha: f64 },
    Disks,
}

impl Kind {
    pub const DEFAULT_ALPHA: f64 = 2.0;

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Segments => "segments",
            Kind::Rects => "rects",
            Kind::Boxes => "boxes",
            Kind::Cubes => "cubes",
            Kind::FatBoxes { .. } => "fatboxes",
            Kind::Disks => "disks",
        }
    }

    /// Aspect-ratio bound for the fat engines.
    pub fn alpha(&self) -> Option<f64> {
        match self {
            Kind::Cubes => Some(1.0),
            Kind::FatBoxes { alpha } => Some(*alpha),
            _ => None,
        }
    }

    pub fn is_3d(&self) -> bool {
        matches!(self, Kind::Boxes | Kind::Cubes | Kind::FatBoxes { .. })
    }

    /// Parses a kind name; `fatboxes` takes `alpha` (default 2) and also
    /// accepts the inline form `fatboxes:4`.
    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Kind> {
        let (base, inline) = match name.split_once(':') {
            Some((b, a)) => {
                let a = a.parse::<f64>().map_err(|_| Error::InvalidParam(format!("bad alpha in {name:?}")))?;
                (b, Some(a))
            }
            None => (name, None),
        };
        let kind = match base {
            "segments" => Kind::Segments,
            "rects" => Kind::Rects,
            "boxes" => Kind::Boxes,
            "cubes" => Kind::Cubes,
            "fatboxes" => {
                let alpha = inline.or(alpha).unwrap_or(Kind::DEFAULT_ALPHA);
                if !(alpha.is_finite() && alpha >= 1.0) {
                    return Err(Error::InvalidAlpha(alpha));
                }
                Kind::FatBoxes { alpha }
            }
            "disks" => Kind::Disks,
            _ => return Err(Error::InvalidParam(format!("unknown kind {name:?}"))),
        };
        Ok(kind)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::FatBoxes { alpha } => write!(f, "fatboxes:{alpha}"),
            k => f.write_str(k.name()),
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::parse(s, None)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Objects {
    Segments(Vec<AxisSeg2>),
    Rects(Vec<Rect2>),
    Boxes(Vec<Box3>),
    Disks(Vec<Disk>),
}

impl Objects {
    pub fn empty_for(kind: Kind) -> Objects {
        match kind {
            Kind::Segments => Objects::Segments(Vec::new()),
            Kind::Rects => Objects::Rects(Vec::new()),
            Kind::Disks => Objects::Disks(Vec::new()),
            _ => Objects::Boxes(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Objects::Segments(v) => v.len(),
            Objects::Rects(v) => v.len(),
            Objects::Boxes(v) => v.len(),
            Objects::Disks(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The objects at `keep`, in that order.
    pub fn select(&self, keep: &[usize]) -> Objects {
        fn pick<T: Copy>(v: &[T], keep: &[usize]) -> Vec<T> {
            keep.iter().map(|&k| v[k]).collect()
        }
        match self {
            Objects::Segments(v) => Objects::Segments(pick(v, keep)),
            Objects::Rects(v) => Objects::Rects(pick(v, keep)),
            Objects::Boxes(v) => Objects::Boxes(pick(v, keep)),
            Objects::Disks(v) => Objects::Disks(pick(v, keep)),
        }
    }
}

/// A query range: a rectangle for planar kinds, a box for 3D ones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Query {
    Rect(Rect2),
    Box(Box3),
}

impl Query {
    fn coords(&self) -> Vec<i64> {
        match self {
            Query::Rect(r) => vec![r.xs.lo, r.xs.hi, r.ys.lo, r.ys.hi],
            Query::Box(b) => vec![b.xs.lo, b.xs.hi, b.ys.lo, b.ys.hi, b.zs.lo, b.zs.hi],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub kind: Kind,
    pub seed: u64,
    pub objects: Objects,
    pub queries: Vec<Query>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    kind: String,
    n: usize,
    seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct SegLine {
    o: String,
    fixed: i64,
    lo: i64,
    hi: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Line {
    Seg(SegLine),
    Rect([i64; 4]),
    Box([i64; 6]),
    Disk([f64; 3]),
    Query(Vec<i64>),
}

#[derive(Serialize, Deserialize)]
struct OutputLine {
    q: usize,
    pairs: Vec<[usize; 2]>,
}

fn rect_from(c: &[i64]) -> Result<Rect2> {
    Rect2::new(c[0], c[1], c[2], c[3])
}

fn box_from(c: &[i64]) -> Result<Box3> {
    Box3::new((c[0], c[1]), (c[2], c[3]), (c[4], c[5]))
}

impl Instance {
    pub fn new(kind: Kind, seed: u64, objects: Objects, queries: Vec<Query>) -> Result<Self> {
        let inst = Instance {
            kind,
            seed,
            objects,
            queries,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let objects_ok = matches!(
            (&self.objects, self.kind),
            (Objects::Segments(_), Kind::Segments)
                | (Objects::Rects(_), Kind::Rects)
                | (Objects::Disks(_), Kind::Disks)
                | (Objects::Boxes(_), Kind::Boxes | Kind::Cubes | Kind::FatBoxes { .. })
        );
        let queries_ok = self
            .queries
            .iter()
            .all(|q| matches!(q, Query::Box(_)) == self.kind.is_3d());
        if objects_ok && queries_ok {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected: self.kind.name().to_string(),
                found: "objects or queries of another dimension".to_string(),
            })
        }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Same queries, only the objects at `keep` (renumbered from 0).
    pub fn select(&self, keep: &[usize]) -> Instance {
        Instance {
            objects: self.objects.select(keep),
            ..self.clone()
        }
    }

    pub fn write_jsonl(&self, mut w: impl Write) -> Result<()> {
        let header = Header {
            kind: self.kind.name().to_string(),
            n: self.len(),
            seed: self.seed,
            alpha: match self.kind {
                Kind::FatBoxes { alpha } => Some(alpha),
                _ => None,
            },
        };
        serde_json::to_writer(&mut w, &header)?;
        writeln!(w)?;
        let mut put = |line: Line| -> Result<()> {
            serde_json::to_writer(&mut w, &line)?;
            writeln!(w)?;
            Ok(())
        };
        match &self.objects {
            Objects::Segments(v) => {
                for s in v {
                    put(Line::Seg(SegLine {
                        o: if s.is_horizontal() { "h" } else { "v" }.to_string(),
                        fixed: s.fixed,
                        lo: s.span.lo,
                        hi: s.span.hi,
                    }))?;
                }
            }
            Objects::Rects(v) => {
                for r in v {
                    put(Line::Rect([r.xs.lo, r.xs.hi, r.ys.lo, r.ys.hi]))?;
                }
            }
            Objects::Boxes(v) => {
                for b in v {
                    put(Line::Box([b.xs.lo, b.xs.hi, b.ys.lo, b.ys.hi, b.zs.lo, b.zs.hi]))?;
                }
            }
            Objects::Disks(v) => {
                for d in v {
                    put(Line::Disk([d.cx, d.cy, d.r]))?;
                }
            }
        }
        for q in &self.queries {
            put(Line::Query(q.coords()))?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn read_jsonl(r: impl BufRead) -> Result<Instance> {
        let mut lines = r.lines().enumerate().filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let parse_err = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
        let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing header".into()))?;
        let header: Header = serde_json::from_str(&header?).map_err(|e| parse_err(hl, e.to_string()))?;
        let kind = Kind::parse(&header.kind, header.alpha)?;
        let mut objects = Objects::empty_for(kind);
        let mut queries = Vec::new();
        for (ln, text) in lines {
            let line: Line = serde_json::from_str(&text?).map_err(|e| parse_err(ln, e.to_string()))?;
            let wrong = || parse_err(ln, format!("line does not match kind {}", kind.name()));
            if !queries.is_empty() && !matches!(line, Line::Query(_)) {
                return Err(parse_err(ln, "object after the first query".into()));
            }
            match (line, &mut objects) {
                (Line::Seg(s), Objects::Segments(v)) => v.push(match s.o.as_str() {
                    "h" => AxisSeg2::horizontal(s.fixed, s.lo, s.hi)?,
                    "v" => AxisSeg2::vertical(s.fixed, s.lo, s.hi)?,
                    o => return Err(parse_err(ln, format!("orientation must be h or v, got {o:?}"))),
                }),
                (Line::Rect(c), Objects::Rects(v)) => v.push(rect_from(&c)?),
                (Line::Box(c), Objects::Boxes(v)) => v.push(box_from(&c)?),
                (Line::Disk([cx, cy, r]), Objects::Disks(v)) => v.push(Disk::new(cx, cy, r)?),
                (Line::Query(c), _) => queries.push(match (c.len(), kind.is_3d()) {
                    (4, false) => Query::Rect(rect_from(&c)?),
                    (6, true) => Query::Box(box_from(&c)?),
                    _ => return Err(wrong()),
                }),
                _ => return Err(wrong()),
            }
        }
        if objects.len() != header.n {
            return Err(parse_err(hl, format!("header says n={} but {} objects follow", header.n, objects.len())));
        }
        Instance::new(kind, header.seed, objects, queries)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Instance> {
        let f = std::fs::File::open(path)?;
        Instance::read_jsonl(std::io::BufReader::new(f))
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let f = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(f);
        self.write_jsonl(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

/// Writes one `{"q":idx,"pairs":[[i,j],...]}` line per query.
pub fn write_outputs(mut w: impl Write, outputs: &[PairReport]) -> Result<()> {
    for (q, report) in outputs.iter().enumerate() {
        serde_json::to_writer(
            &mut w,
            &OutputLine {
                q,
                pairs: report.to_arrays(),
            },
        )?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn outputs_to_string(outputs: &[PairReport]) -> String {
    let mut buf = Vec::new();
    write_outputs(&mut buf, outputs).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}
