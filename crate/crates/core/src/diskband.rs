//! Virtual disk-band surfaces, their Gordon-Litherland forms, framed
//! virtual Kirby diagrams and the realization of allowable matrices.
//!
//! A surface is a single disk with `n` bands attached along the x-axis.
//! `feet` lists the 2n attaching intervals left to right by band id; the
//! first occurrence of a band is its left foot and its core runs left to
//! right. Band `b` carries `twists[b]` half twists (positive = right
//! handed). Events are band crossings in the order they occur along each
//! band.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exactmat::{MatrixError, SymMatrix};
use crate::gauss_io::{GaussCode, Pass, Strand};
use crate::goeritz::InvariantTriple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiskBandError {
    #[error("band id {0} out of range")]
    InvalidBandId(usize),
    #[error("band {0} crosses itself")]
    SelfCrossing(usize),
    #[error("invalid feet: {0}")]
    BadFeet(String),
    #[error("matrix is not allowable: odd dimension and every diagonal entry even")]
    NotAllowable,
    #[error("Euler number {0} is odd")]
    OddEuler(i64),
    #[error("matrix entry too large for a disk-band surface")]
    EntryTooLarge,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("linking data is not symmetric")]
    AsymmetricLinking,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BandEvent {
    /// Band `over` crosses over band `under`; `sign` is the sign of the
    /// crossing of their cores.
    Classical { over: usize, under: usize, sign: i8 },
    Virtual { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiskBandSurface {
    twists: Vec<i64>,
    feet: Vec<usize>,
    events: Vec<BandEvent>,
}

/// Which side of a band an edge starts on at the left foot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Outer,
    Inner,
}

/// One traversal of a band edge by the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRun {
    pub band: usize,
    pub edge: Edge,
    pub forward: bool,
}

/// The boundary of a surface together with its push-off into the surface.
/// Components `0..m` of `code` are the boundary, `m..2m` the push-offs.
#[derive(Debug, Clone)]
pub struct BoundaryLink {
    pub code: GaussCode,
    pub runs: Vec<Vec<EdgeRun>>,
}

impl BoundaryLink {
    pub fn n_boundary(&self) -> usize {
        self.runs.len()
    }
}

// strand slots across a band, left to right at the left foot
const OUTER: usize = 0;
const OUTER_PUSH: usize = 1;
const INNER_PUSH: usize = 2;
const INNER: usize = 3;
// half twist on four strands as adjacent transpositions
const HALF_TWIST: [usize; 6] = [0, 1, 2, 0, 1, 0];

impl DiskBandSurface {
    pub fn new(twists: Vec<i64>, feet: Vec<usize>, events: Vec<BandEvent>) -> Result<Self, DiskBandError> {
        let n = twists.len();
        if feet.len() != 2 * n {
            return Err(DiskBandError::BadFeet(format!("expected {} feet, found {}", 2 * n, feet.len())));
        }
        let mut count = vec![0; n];
        for &f in &feet {
            if f >= n {
                return Err(DiskBandError::InvalidBandId(f));
            }
            count[f] += 1;
        }
        if let Some(b) = count.iter().position(|&c| c != 2) {
            return Err(DiskBandError::BadFeet(format!("band {b} has {} feet", count[b])));
        }
        for e in &events {
            let (a, b) = match *e {
                BandEvent::Classical { over, under, sign } => {
                    if sign != 1 && sign != -1 {
                        return Err(DiskBandError::Parse { line: 0, msg: format!("bad sign {sign}") });
                    }
                    (over, under)
                }
                BandEvent::Virtual { a, b } => (a, b),
            };
            for x in [a, b] {
                if x >= n {
                    return Err(DiskBandError::InvalidBandId(x));
                }
            }
            if a == b {
                return Err(DiskBandError::SelfCrossing(a));
            }
        }
        Ok(DiskBandSurface { twists, feet, events })
    }

    pub fn n_bands(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn feet(&self) -> &[usize] {
        &self.feet
    }

    pub fn events(&self) -> &[BandEvent] {
        &self.events
    }

    /// Positions of the left and right foot of a band.
    pub fn feet_of(&self, b: usize) -> (usize, usize) {
        let mut it = self.feet.iter().enumerate().filter(|&(_, &x)| x == b).map(|(i, _)| i);
        (it.next().unwrap(), it.next().unwrap())
    }

    pub fn n_virtual(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, BandEvent::Virtual { .. })).count()
    }

    pub fn gl_matrix(&self) -> SymMatrix {
        let n = self.n_bands();
        let mut m = vec![vec![0i64; n]; n];
        for (i, &k) in self.twists.iter().enumerate() {
            m[i][i] = k;
        }
        for e in &self.events {
            if let BandEvent::Classical { over, under, sign } = *e {
                m[over][under] += sign as i64;
                m[under][over] += sign as i64;
            }
        }
        SymMatrix::from_i64_rows(&m).expect("symmetric by construction")
    }

    /// Boundary components as sequences of band edge traversals.
    pub fn boundary_runs(&self) -> Vec<Vec<EdgeRun>> {
        let n = self.n_bands();
        if n == 0 {
            return vec![Vec::new()];
        }
        // endpoint = 2 * foot position + (0 left end, 1 right end)
        let mut edge_at = vec![(0usize, Edge::Outer, true); 4 * n];
        let mut other_end = vec![0usize; 4 * n];
        for b in 0..n {
            let (p, q) = self.feet_of(b);
            let odd = self.twists[b] % 2 != 0;
            let (a_end, b_end) = if odd { (2 * q, 2 * q + 1) } else { (2 * q + 1, 2 * q) };
            for (edge, start, end) in [(Edge::Outer, 2 * p, a_end), (Edge::Inner, 2 * p + 1, b_end)] {
                edge_at[start] = (b, edge, true);
                edge_at[end] = (b, edge, false);
                other_end[start] = end;
                other_end[end] = start;
            }
        }
        let disk_arc = |x: usize| {
            let last = 4 * n - 1;
            match x {
                0 => last,
                x if x == last => 0,
                x if x % 2 == 1 => x + 1,
                x => x - 1,
            }
        };
        let mut used = vec![false; 4 * n];
        let mut out = Vec::new();
        // prefer starting at a left foot so that the first run is forward
        let starts = (0..4 * n).filter(|&x| edge_at[x].2).chain(0..4 * n);
        for start in starts {
            if used[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut x = start;
            loop {
                let (band, edge, forward) = edge_at[x];
                used[x] = true;
                used[other_end[x]] = true;
                comp.push(EdgeRun { band, edge, forward });
                x = disk_arc(other_end[x]);
                if x == start {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn n_boundary_components(&self) -> usize {
        self.boundary_runs().len()
    }

    /// Direction of the boundary along each band: +1 or -1 when both edges
    /// run the same way, 0 when they run opposite ways.
    pub fn band_directions(&self) -> Vec<i64> {
        let mut dir = vec![[0i64; 2]; self.n_bands()];
        for run in self.boundary_runs().iter().flatten() {
            dir[run.band][run.edge as usize] = if run.forward { 1 } else { -1 };
        }
        dir.iter().map(|d| (d[0] + d[1]) / 2).collect()
    }

    /// Diagram of the boundary and of its push-off into the surface.
    pub fn boundary_link(&self) -> BoundaryLink {
        let n = self.n_bands();
        let runs = self.boundary_runs();
        let mut dir = vec![[1i8; 4]; n];
        for run in runs.iter().flatten() {
            let d = if run.forward { 1 } else { -1 };
            let slots = match run.edge {
                Edge::Outer => [OUTER, OUTER_PUSH],
                Edge::Inner => [INNER, INNER_PUSH],
            };
            for s in slots {
                dir[run.band][s] = d;
            }
        }

        let mut passes: Vec<[Vec<Pass>; 4]> = (0..n).map(|_| Default::default()).collect();
        let mut order: Vec<[usize; 4]> = vec![[0, 1, 2, 3]; n];
        let mut next = 0usize;
        for b in 0..n {
            let h: i8 = if self.twists[b] > 0 { 1 } else { -1 };
            for _ in 0..self.twists[b].unsigned_abs() {
                for &k in &HALF_TWIST {
                    let (l, r) = (order[b][k], order[b][k + 1]);
                    let sign = h * dir[b][l] * dir[b][r];
                    let (ls, rs) = if h > 0 { (Strand::Over, Strand::Under) } else { (Strand::Under, Strand::Over) };
                    passes[b][l].push(Pass { crossing: next, strand: ls, sign });
                    passes[b][r].push(Pass { crossing: next, strand: rs, sign });
                    next += 1;
                    order[b].swap(k, k + 1);
                }
            }
        }
        for e in &self.events {
            let BandEvent::Classical { over: i, under: j, sign } = *e else {
                continue;
            };
            let ascending = [0, 1, 2, 3];
            let descending = [3, 2, 1, 0];
            let (j_seen_from_i, i_seen_from_j) = if sign > 0 { (ascending, descending) } else { (descending, ascending) };
            let base = next;
            next += 16;
            let id = |pa: usize, pb: usize| base + 4 * pa + pb;
            let sign_of = |pa: usize, pb: usize| sign * dir[i][order[i][pa]] * dir[j][order[j][pb]];
            for pa in 0..4 {
                for &pb in &j_seen_from_i {
                    let s = sign_of(pa, pb);
                    passes[i][order[i][pa]].push(Pass { crossing: id(pa, pb), strand: Strand::Over, sign: s });
                }
            }
            for pb in 0..4 {
                for &pa in &i_seen_from_j {
                    let s = sign_of(pa, pb);
                    passes[j][order[j][pb]].push(Pass { crossing: id(pa, pb), strand: Strand::Under, sign: s });
                }
            }
        }

        let trace = |push: bool| -> Vec<Vec<Pass>> {
            runs.iter()
                .map(|comp| {
                    let mut out = Vec::new();
                    for run in comp {
                        let slot = match (run.edge, push) {
                            (Edge::Outer, false) => OUTER,
                            (Edge::Outer, true) => OUTER_PUSH,
                            (Edge::Inner, false) => INNER,
                            (Edge::Inner, true) => INNER_PUSH,
                        };
                        let seq = &passes[run.band][slot];
                        if run.forward {
                            out.extend(seq.iter().copied());
                        } else {
                            out.extend(seq.iter().rev().copied());
                        }
                    }
                    out
                })
                .collect()
        };
        let mut comps = trace(false);
        comps.extend(trace(true));
        let labels = (1..=next).map(|i| i.to_string()).collect();
        let code = GaussCode::new(comps, labels).expect("boundary diagram is a valid code");
        BoundaryLink { code, runs }
    }

    /// Diagram of the boundary alone.
    pub fn boundary_code(&self) -> GaussCode {
        let link = self.boundary_link();
        let keep: Vec<usize> = (0..link.n_boundary()).collect();
        link.code.sublink(&keep).expect("sublink of a valid code")
    }

    /// Oriented Euler number: minus the virtual linking number of the
    /// boundary with its push-off, summed over all pairs of components.
    pub fn euler_number(&self) -> i64 {
        let link = self.boundary_link();
        let m = link.n_boundary();
        let vlk = link.code.linking().vlk;
        -(0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| vlk[i][m + j]).sum::<i64>()
    }

    /// Euler number using only each component's own push-off.
    pub fn euler_number_unoriented(&self) -> i64 {
        let link = self.boundary_link();
        let m = link.n_boundary();
        let vlk = link.code.linking().vlk;
        -(0..m).map(|i| vlk[i][m + i]).sum::<i64>()
    }

    pub fn surface_invariants(&self) -> Result<InvariantTriple, DiskBandError> {
        let e = self.euler_number();
        if e % 2 != 0 {
            return Err(DiskBandError::OddEuler(e));
        }
        Ok(InvariantTriple::from_form(&self.gl_matrix(), -e / 2, self.n_virtual()))
    }

    pub fn kirby_diagram(&self) -> FramedVirtualLink {
        let n = self.n_bands();
        let mut top: Vec<Vec<Pass>> = vec![Vec::new(); n];
        let mut bottom: Vec<Vec<Pass>> = vec![Vec::new(); n];
        let mut next = 0;
        for e in &self.events {
            if let BandEvent::Classical { over, under, sign } = *e {
                top[over].push(Pass { crossing: next, strand: Strand::Over, sign });
                top[under].push(Pass { crossing: next, strand: Strand::Under, sign });
                bottom[under].push(Pass { crossing: next + 1, strand: Strand::Over, sign });
                bottom[over].push(Pass { crossing: next + 1, strand: Strand::Under, sign });
                next += 2;
            }
        }
        let comps: Vec<Vec<Pass>> = top
            .into_iter()
            .zip(bottom)
            .map(|(mut t, b)| {
                t.extend(b.into_iter().rev());
                t
            })
            .collect();
        let labels = (1..=next).map(|i| i.to_string()).collect();
        let diagram = if n == 0 { None } else { Some(GaussCode::new(comps, labels).expect("valid code")) };
        let vlk = match &diagram {
            Some(d) => d.linking().vlk,
            None => Vec::new(),
        };
        FramedVirtualLink { framings: self.twists.clone(), vlk, diagram }
    }
}

/// Realizes an allowable symmetric matrix as the Gordon-Litherland form of
/// a disk-band surface with connected boundary.
pub fn realize(m: &SymMatrix) -> Result<DiskBandSurface, DiskBandError> {
    let n = m.dim();
    let entry = |i: usize, j: usize| m.get(i, j).to_i64().ok_or(DiskBandError::EntryTooLarge);
    let mut twists = Vec::with_capacity(n);
    for i in 0..n {
        twists.push(entry(i, i)?);
    }
    let odd = |i: usize| twists[i] % 2 != 0;
    let mut layout: Vec<usize> = (0..n).collect();
    if n % 2 == 1 {
        let k = (0..n).rev().find(|&i| odd(i)).ok_or(DiskBandError::NotAllowable)?;
        layout.remove(k);
        layout.push(k);
    }
    let mut feet = Vec::with_capacity(2 * n);
    let mut events = Vec::new();
    for pair in layout.chunks(2) {
        match *pair {
            [a, b] if odd(a) && odd(b) => feet.extend([a, a, b, b]),
            [a, b] => {
                feet.extend([a, b, a, b]);
                events.push(BandEvent::Virtual { a, b });
            }
            [a] => feet.extend([a, a]),
            _ => unreachable!(),
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let v = entry(i, j)?;
            let sign = if v > 0 { 1 } else { -1 };
            for _ in 0..v.unsigned_abs() {
                events.push(BandEvent::Classical { over: i, under: j, sign });
                events.push(BandEvent::Virtual { a: i, b: j });
            }
        }
    }
    DiskBandSurface::new(twists, feet, events)
}

/// Framed virtual link: framings and virtual linking numbers, with the
/// diagram kept while it is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedVirtualLink {
    framings: Vec<i64>,
    vlk: Vec<Vec<i64>>,
    diagram: Option<GaussCode>,
}

impl FramedVirtualLink {
    pub fn from_matrix(m: &SymMatrix) -> Result<FramedVirtualLink, DiskBandError> {
        let rows = m.to_i64_rows().ok_or(DiskBandError::EntryTooLarge)?;
        let n = rows.len();
        let framings = (0..n).map(|i| rows[i][i]).collect();
        let vlk = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { rows[i][j] }).collect()).collect();
        Ok(FramedVirtualLink { framings, vlk, diagram: None })
    }

    pub fn n_components(&self) -> usize {
        self.framings.len()
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn vlk(&self, i: usize, j: usize) -> i64 {
        self.vlk[i][j]
    }

    pub fn diagram(&self) -> Option<&GaussCode> {
        self.diagram.as_ref()
    }

    pub fn linking_matrix(&self) -> Result<SymMatrix, DiskBandError> {
        let n = self.n_components();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.framings[i] } else { self.vlk[i][j] }).collect())
            .collect();
        SymMatrix::from_i64_rows(&rows).map_err(|_| DiskBandError::AsymmetricLinking)
    }

    /// Slides component `i` over component `j` (`sign` = +1 adds, -1
    /// subtracts). The diagram is not carried along.
    pub fn handle_slide(&self, i: usize, j: usize, sign: i64) -> Result<FramedVirtualLink, DiskBandError> {
        let n = self.n_components();
        for x in [i, j] {
            if x >= n {
                return Err(DiskBandError::InvalidBandId(x));
            }
        }
        if i == j {
            return Err(DiskBandError::SelfCrossing(i));
        }
        let mut out = self.clone();
        out.diagram = None;
        out.framings[i] = self.framings[i] + self.framings[j] + sign * (self.vlk[i][j] + self.vlk[j][i]);
        for k in 0..n {
            if k == i {
                continue;
            }
            let (to_j, from_j) = if k == j { (self.framings[j], self.framings[j]) } else { (self.vlk[j][k], self.vlk[k][j]) };
            out.vlk[i][k] = self.vlk[i][k] + sign * to_j;
            out.vlk[k][i] = self.vlk[k][i] + sign * from_j;
        }
        Ok(out)
    }
}

impl fmt::Display for DiskBandSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.iter().map(|s| format!(" {s}")).collect::<String>();
        writeln!(f, "bands {}", self.n_bands())?;
        writeln!(f, "twists{}", join(self.twists.iter().map(|x| x.to_string()).collect()))?;
        writeln!(f, "feet{}", join(self.feet.iter().map(|x| x.to_string()).collect()))?;
        for e in &self.events {
            match *e {
                BandEvent::Classical { over, under, sign } => {
                    writeln!(f, "X {over} {under} {}", if sign > 0 { "+1" } else { "-1" })?
                }
                BandEvent::Virtual { a, b } => writeln!(f, "V {a} {b}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for DiskBandSurface {
    type Err = DiskBandError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut n = None;
        let mut twists = None;
        let mut feet = None;
        let mut events = Vec::new();
        for (k, raw) in s.lines().enumerate() {
            let line = k + 1;
            let err = |msg: &str| DiskBandError::Parse { line, msg: msg.to_string() };
            let text = raw.split('#').next().unwrap().trim();
            if text.is_empty() {
                continue;
            }
            let mut words = text.split_whitespace();
            let key = words.next().unwrap();
            let rest: Vec<&str> = words.collect();
            let ints = |w: &[&str]| -> Result<Vec<i64>, DiskBandError> {
                w.iter().map(|x| x.parse::<i64>().map_err(|_| err(&format!("bad integer {x:?}")))).collect()
            };
            let ids = |w: &[&str]| -> Result<Vec<usize>, DiskBandError> {
                w.iter().map(|x| x.parse::<usize>().map_err(|_| err(&format!("bad band id {x:?}")))).collect()
            };
            match key {
                "bands" => {
                    let v = ids(&rest)?;
                    if v.len() != 1 {
                        return Err(err("bands takes one value"));
                    }
                    n = Some(v[0]);
                }
                "twists" => twists = Some(ints(&rest)?),
                "feet" => feet = Some(ids(&rest)?),
                "X" => {
                    if rest.len() != 3 {
                        return Err(err("X takes over, under and sign"));
                    }
                    let b = ids(&rest[..2])?;
                    let sign = match rest[2] {
                        "+1" | "1" | "+" => 1,
                        "-1" | "-" => -1,
                        other => return Err(err(&format!("bad sign {other:?}"))),
                    };
                    events.push(BandEvent::Classical { over: b[0], under: b[1], sign });
                }
                "V" => {
                    let b = ids(&rest)?;
                    if b.len() != 2 {
                        return Err(err("V takes two bands"));
                    }
                    events.push(BandEvent::Virtual { a: b[0], b: b[1] });
                }
                other => return Err(err(&format!("unknown record {other:?}"))),
            }
        }
        let missing = |what: &str| DiskBandError::Parse { line: 0, msg: format!("missing {what} line") };
        let n = n.ok_or_else(|| missing("bands"))?;
        let twists = twists.ok_or_else(|| missing("twists"))?;
        if twists.len() != n {
            return Err(DiskBandError::Parse { line: 0, msg: format!("{} twists for {n} bands", twists.len()) });
        }
        DiskBandSurface::new(twists, feet.ok_or_else(|| missing("feet"))?, events)
    }
}
