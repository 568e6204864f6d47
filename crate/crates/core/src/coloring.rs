//! Checkerboard colorings of a Carter surface and the local crossing data
//! they induce: incidence numbers, crossing types and the correction term.

use std::collections::VecDeque;

use thiserror::Error;

use crate::carter::{FaceId, Role, SurfaceDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("diagram is not connected")]
    NotConnected,
    #[error("invalid coloring: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingType {
    I,
    II,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Color>,
    eta: Vec<i8>,
    types: Vec<CrossingType>,
    white_corners: Vec<(FaceId, FaceId)>,
    mu: i64,
}

impl Coloring {
    /// Checks that adjacent faces get different colors and computes the
    /// crossing data.
    pub fn from_colors(diag: &SurfaceDiagram, colors: Vec<Color>) -> Result<Coloring, ColoringError> {
        if colors.len() != diag.n_faces() {
            return Err(ColoringError::Invalid(format!(
                "{} colors for {} faces",
                colors.len(),
                diag.n_faces()
            )));
        }
        for (a, b) in diag.edge_sides() {
            if colors[a] == colors[b] {
                return Err(ColoringError::Invalid(format!("faces {a} and {b} share an edge and a color")));
            }
        }
        let n = diag.n_crossings();
        let mut eta = Vec::with_capacity(n);
        let mut types = Vec::with_capacity(n);
        let mut white_corners = Vec::with_capacity(n);
        let mut mu = 0;
        for c in 0..n {
            let e: i8 = if colors[diag.face_of(Role::OverOut.dart(c))] == Color::Black { 1 } else { -1 };
            let inner = diag
                .corner_between(Role::UnderIn.dart(c), Role::OverIn.dart(c))
                .expect("incoming darts are adjacent");
            let t = if colors[inner] == Color::Black { CrossingType::II } else { CrossingType::I };
            if t == CrossingType::II {
                mu += e as i64;
            }
            let whites: Vec<FaceId> = diag
                .rotation(c)
                .iter()
                .map(|&d| diag.corner_after(d))
                .filter(|&f| colors[f] == Color::White)
                .collect();
            white_corners.push((whites[0], whites[1]));
            eta.push(e);
            types.push(t);
        }
        Ok(Coloring { colors, eta, types, white_corners, mu })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, f: FaceId) -> Color {
        self.colors[f]
    }

    /// White faces in increasing face id order.
    pub fn white_faces(&self) -> Vec<FaceId> {
        (0..self.colors.len()).filter(|&f| self.colors[f] == Color::White).collect()
    }

    pub fn black_faces(&self) -> Vec<FaceId> {
        (0..self.colors.len()).filter(|&f| self.colors[f] == Color::Black).collect()
    }

    pub fn eta(&self, c: usize) -> i8 {
        self.eta[c]
    }

    pub fn crossing_type(&self, c: usize) -> CrossingType {
        self.types[c]
    }

    /// The two white faces meeting at a crossing (possibly equal).
    pub fn white_corners(&self, c: usize) -> (FaceId, FaceId) {
        self.white_corners[c]
    }

    /// Sum of incidence numbers over type II crossings.
    pub fn mu(&self) -> i64 {
        self.mu
    }

    pub fn dual(&self, diag: &SurfaceDiagram) -> Coloring {
        let colors = self.colors.iter().map(|c| c.other()).collect();
        Coloring::from_colors(diag, colors).expect("dual of a valid coloring is valid")
    }
}

/// The two checkerboard colorings, the first having face 0 white, or `None`
/// if the surface is not checkerboard colorable.
pub fn checkerboard_colorings(diag: &SurfaceDiagram) -> Result<Option<(Coloring, Coloring)>, ColoringError> {
    if !diag.is_connected() {
        return Err(ColoringError::NotConnected);
    }
    let n = diag.n_faces();
    let mut adj = vec![Vec::new(); n];
    for (a, b) in diag.edge_sides() {
        if a == b {
            return Ok(None);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colors: Vec<Option<Color>> = vec![None; n];
    let mut queue = VecDeque::new();
    colors[0] = Some(Color::White);
    queue.push_back(0);
    while let Some(f) = queue.pop_front() {
        let c = colors[f].unwrap();
        for &g in &adj[f] {
            match colors[g] {
                None => {
                    colors[g] = Some(c.other());
                    queue.push_back(g);
                }
                Some(x) if x == c => return Ok(None),
                Some(_) => {}
            }
        }
    }
    let colors: Vec<Color> = colors.into_iter().map(|c| c.expect("connected face graph")).collect();
    let xi = Coloring::from_colors(diag, colors).map_err(|e| ColoringError::Invalid(e.to_string()))?;
    let dual = xi.dual(diag);
    Ok(Some((xi, dual)))
}

pub fn is_colorable(diag: &SurfaceDiagram) -> Result<bool, ColoringError> {
    Ok(checkerboard_colorings(diag)?.is_some())
}
