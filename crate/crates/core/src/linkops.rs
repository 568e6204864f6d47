//! Diagram transforms (mirrors, orientation reversal, crossing change) and a
//! property harness checking how the invariants respond to them.

use std::fmt;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::carter::{End, SurfaceDiagram};
use crate::coloring::{checkerboard_colorings, Coloring, ColoringError};
use crate::diskband::FramedVirtualLink;
use crate::exactmat::SymMatrix;
use crate::gauss_io::{GaussCode, Pass};
use crate::goeritz::{coloring_invariants, GoeritzForm, InvariantTriple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkOpsError {
    #[error("no crossing with index {0}")]
    UnknownCrossing(usize),
    #[error("no component with index {0}")]
    UnknownComponent(usize),
    #[error("crossing {0} is not positive")]
    NotPositive(usize),
    #[error("code has a single component")]
    SingleComponent,
    #[error("diagram is not checkerboard colorable")]
    NotColorable,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    VerticalMirror,
    HorizontalMirror,
    ReverseComponent(usize),
    CrossingChange(usize),
}

pub fn apply(code: &GaussCode, t: Transform) -> Result<GaussCode, LinkOpsError> {
    let mut comps: Vec<Vec<Pass>> = code.components().to_vec();
    match t {
        Transform::VerticalMirror => {
            for p in comps.iter_mut().flatten() {
                p.strand = p.strand.flip();
                p.sign = -p.sign;
            }
        }
        Transform::HorizontalMirror => {
            for p in comps.iter_mut().flatten() {
                p.sign = -p.sign;
            }
        }
        Transform::ReverseComponent(i) => {
            let comp = comps.get_mut(i).ok_or(LinkOpsError::UnknownComponent(i))?;
            comp.reverse();
            let mut count = vec![0; code.n_crossings()];
            for p in comp.iter() {
                count[p.crossing] += 1;
            }
            // crossings with the rest of the link change sign, self-crossings keep it
            for p in comps.iter_mut().flatten() {
                if count[p.crossing] == 1 {
                    p.sign = -p.sign;
                }
            }
        }
        Transform::CrossingChange(c) => {
            if c >= code.n_crossings() {
                return Err(LinkOpsError::UnknownCrossing(c));
            }
            for p in comps.iter_mut().flatten().filter(|p| p.crossing == c) {
                p.strand = p.strand.flip();
                p.sign = -p.sign;
            }
        }
    }
    Ok(GaussCode::new(comps, code.labels().to_vec()).expect("transform preserves validity"))
}

fn map_location(code: &GaussCode, t: Transform, loc: (usize, usize), end: End) -> ((usize, usize), End) {
    match t {
        Transform::ReverseComponent(i) if loc.0 == i => {
            let m = code.components()[i].len();
            let flipped = if end == End::In { End::Out } else { End::In };
            ((i, m - 1 - loc.1), flipped)
        }
        _ => (loc, end),
    }
}

/// Carries a coloring of `code` across a transform, matching faces through
/// the corners they occupy at each crossing.
pub fn transport_coloring(
    diag: &SurfaceDiagram,
    coloring: &Coloring,
    t: Transform,
    target: &SurfaceDiagram,
) -> Result<Coloring, LinkOpsError> {
    let mut colors = vec![None; target.n_faces()];
    if diag.n_crossings() == 0 {
        colors = coloring.colors().iter().copied().map(Some).collect();
    }
    for c in 0..diag.n_crossings() {
        let rot = diag.rotation(c);
        for k in 0..4 {
            let (a, b) = (rot[k], rot[(k + 1) % 4]);
            let face = diag.face_of(b);
            let map = |d| {
                let (loc, end) = diag.dart_location(d);
                let (loc, end) = map_location(diag.code(), t, loc, end);
                target.dart_at(loc, end)
            };
            let f = target
                .corner_between(map(a), map(b))
                .expect("transforms preserve adjacency at crossings");
            colors[f] = Some(coloring.color(face));
        }
    }
    let colors = colors.into_iter().map(|c| c.ok_or(LinkOpsError::NotColorable)).collect::<Result<_, _>>()?;
    Ok(Coloring::from_colors(target, colors)?)
}

pub fn code_hash(code: &GaussCode) -> String {
    let digest = Sha256::digest(code.to_string().as_bytes());
    format!("{digest:x}")[..12].to_string()
}

/// One harness line: `PASS|FAIL <property> <code-hash> <details>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub property: String,
    pub code_hash: String,
    pub pass: bool,
    pub details: String,
}

impl Report {
    fn new(property: &str, code: &GaussCode, pass: bool, details: String) -> Report {
        Report { property: property.to_string(), code_hash: code_hash(code), pass, details }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {} {}", self.property, self.code_hash, self.details)
    }
}

fn colorings(diag: &SurfaceDiagram) -> Result<[Coloring; 2], LinkOpsError> {
    let (a, b) = checkerboard_colorings(diag)?.ok_or(LinkOpsError::NotColorable)?;
    Ok([a, b])
}

fn show(t: &InvariantTriple) -> String {
    format!("({},{},{})", t.sigma, t.det, t.nullity)
}

pub fn check_mirror_properties(code: &GaussCode) -> Result<Vec<Report>, LinkOpsError> {
    let diag = SurfaceDiagram::new(code);
    let cols = colorings(&diag)?;
    let mut out = Vec::new();
    for (name, t) in [("mirror-vertical", Transform::VerticalMirror), ("mirror-horizontal", Transform::HorizontalMirror)] {
        let image = apply(code, t)?;
        let idiag = SurfaceDiagram::new(&image);
        for (k, col) in cols.iter().enumerate() {
            let before = coloring_invariants(&diag, col);
            let icol = transport_coloring(&diag, col, t, &idiag)?;
            let after = coloring_invariants(&idiag, &icol);
            let pass = after.sigma == -before.sigma
                && after.det == before.det
                && after.nullity == before.nullity
                && idiag.genus() == diag.genus();
            let details = format!("coloring {k}: {} -> {}", show(&before), show(&after));
            out.push(Report::new(name, code, pass, details));
        }
    }
    Ok(out)
}

pub fn check_crossing_change(code: &GaussCode, c: usize) -> Result<Vec<Report>, LinkOpsError> {
    if c >= code.n_crossings() {
        return Err(LinkOpsError::UnknownCrossing(c));
    }
    if code.sign(c) < 0 {
        return Err(LinkOpsError::NotPositive(c));
    }
    let t = Transform::CrossingChange(c);
    let minus = apply(code, t)?;
    let diag = SurfaceDiagram::new(code);
    let mdiag = SurfaceDiagram::new(&minus);
    let mut out = Vec::new();
    for (k, col) in colorings(&diag)?.iter().enumerate() {
        let mcol = transport_coloring(&diag, col, t, &mdiag)?;
        let p = coloring_invariants(&diag, col);
        let m = coloring_invariants(&mdiag, &mcol);
        let delta = m.sigma - p.sigma;
        let pass = if p.nullity == m.nullity { delta == 0 || delta == 2 } else { delta == 1 };
        let mut details = format!("crossing {} coloring {k}: {} -> {}", code.label(c), show(&p), show(&m));
        if !pass && col.eta(c) > 0 {
            details.push_str(" flagged: eta(c+) = +1 case");
        }
        out.push(Report::new("crossing-change", code, pass, details));
    }
    Ok(out)
}

/// Predicted signature shift when component `i` is reversed.
pub fn orientation_reversal_shift(code: &GaussCode, i: usize) -> Result<i64, LinkOpsError> {
    if code.n_components() < 2 {
        return Err(LinkOpsError::SingleComponent);
    }
    if i >= code.n_components() {
        return Err(LinkOpsError::UnknownComponent(i));
    }
    let vlk = code.linking().vlk;
    Ok((0..code.n_components()).filter(|&j| j != i).map(|j| vlk[i][j] + vlk[j][i]).sum())
}

pub fn check_orientation_reversal(code: &GaussCode, i: usize) -> Result<Vec<Report>, LinkOpsError> {
    let predicted = orientation_reversal_shift(code, i)?;
    let t = Transform::ReverseComponent(i);
    let reversed = apply(code, t)?;
    let diag = SurfaceDiagram::new(code);
    let rdiag = SurfaceDiagram::new(&reversed);
    let mut out = Vec::new();
    for (k, col) in colorings(&diag)?.iter().enumerate() {
        let rcol = transport_coloring(&diag, col, t, &rdiag)?;
        let a = coloring_invariants(&diag, col);
        let b = coloring_invariants(&rdiag, &rcol);
        let shift = b.sigma - a.sigma;
        let pass = shift == predicted && a.det == b.det && a.nullity == b.nullity;
        let details = format!("component {i} coloring {k}: shift {shift} predicted {predicted}");
        out.push(Report::new("orientation-reversal", code, pass, details));
    }
    Ok(out)
}

/// `|sigma - sigma*| + |n - n*| <= 2g` across the two colorings.
pub fn check_duality_inequality(code: &GaussCode) -> Result<Report, LinkOpsError> {
    let diag = SurfaceDiagram::new(code);
    let [a, b] = colorings(&diag)?;
    let (ta, tb) = (coloring_invariants(&diag, &a), coloring_invariants(&diag, &b));
    let lhs = (ta.sigma - tb.sigma).abs() + (ta.nullity as i64 - tb.nullity as i64).abs();
    let g2 = 2 * diag.genus() as i64;
    let details = format!("{} vs {} bound {g2}", show(&ta), show(&tb));
    Ok(Report::new("duality-inequality", code, lhs <= g2, details))
}

/// Deleting any white face gives the same signature, |det| and nullity.
pub fn check_region_deletion(code: &GaussCode) -> Result<Vec<Report>, LinkOpsError> {
    let diag = SurfaceDiagram::new(code);
    let mut out = Vec::new();
    for (k, col) in colorings(&diag)?.iter().enumerate() {
        let g = GoeritzForm::new(&diag, col);
        let base = InvariantTriple::from_form(&g.reduced(), col.mu(), diag.genus());
        let mut pass = true;
        for j in 0..g.white_faces().len() {
            let m = g.reduce_at(j).expect("index in range");
            let t = InvariantTriple::from_form(&m, col.mu(), diag.genus());
            pass &= t.triple() == base.triple();
        }
        let details = format!("coloring {k}: {} white faces", g.white_faces().len());
        out.push(Report::new("region-deletion", code, pass, details));
    }
    Ok(out)
}

fn form_triple(m: &SymMatrix) -> (i64, BigInt, usize) {
    use num_traits::Signed;
    (m.signature(), m.determinant().abs(), m.nullity())
}

/// Applies a sequence of handle slides `(i, j, sign)` to the framed link of
/// `m` and checks that signature, |det| and nullity are unchanged, and that
/// the slid linking matrix is congruent to `m` by the matching slides.
pub fn check_handle_slides(m: &SymMatrix, slides: &[(usize, usize, i64)]) -> Report {
    let start = form_triple(m);
    let mut link = FramedVirtualLink::from_matrix(m).expect("small entries");
    let mut mat = m.clone();
    let mut pass = true;
    for &(i, j, s) in slides {
        if i == j || i >= m.dim() || j >= m.dim() {
            continue;
        }
        link = link.handle_slide(i, j, s).expect("valid slide");
        mat = mat.slide(i, j, s).expect("valid slide");
        let lm = link.linking_matrix().expect("symmetric");
        pass &= lm == mat && form_triple(&lm) == start;
    }
    let (sig, det, nul) = start;
    Report {
        property: "handle-slide".into(),
        code_hash: format!("{:x}", Sha256::digest(m.to_string().as_bytes()))[..12].to_string(),
        pass,
        details: format!("{} slides, ({sig},{det},{nul})", slides.len()),
    }
}
