//! Goeritz matrices of checkerboard colorings and the invariants
//! (signature, determinant, nullity) read off from them.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::carter::{FaceId, SurfaceDiagram};
use crate::coloring::{checkerboard_colorings, Coloring, ColoringError};
use crate::exactmat::SymMatrix;
use crate::gauss_io::GaussCode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoeritzError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("white face index {0} out of range")]
    NoSuchFace(usize),
}

/// Unreduced Goeritz matrix indexed by the white faces in face id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzForm {
    full: SymMatrix,
    white_faces: Vec<FaceId>,
}

impl GoeritzForm {
    pub fn new(diag: &SurfaceDiagram, coloring: &Coloring) -> GoeritzForm {
        let white_faces = coloring.white_faces();
        let k = white_faces.len();
        let index = |f: FaceId| white_faces.binary_search(&f).expect("white face");
        let mut g = vec![vec![0i64; k]; k];
        for c in 0..diag.n_crossings() {
            let (a, b) = coloring.white_corners(c);
            if a == b {
                continue;
            }
            let (i, j) = (index(a), index(b));
            let e = coloring.eta(c) as i64;
            g[i][j] -= e;
            g[j][i] -= e;
        }
        for (i, row) in g.iter_mut().enumerate() {
            let off: i64 = row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v).sum();
            row[i] = -off;
        }
        let full = SymMatrix::from_i64_rows(&g).expect("built symmetric");
        GoeritzForm { full, white_faces }
    }

    pub fn full(&self) -> &SymMatrix {
        &self.full
    }

    pub fn white_faces(&self) -> &[FaceId] {
        &self.white_faces
    }

    /// Reduced matrix with the least white face deleted.
    pub fn reduced(&self) -> SymMatrix {
        self.reduce_at(0).expect("at least one white face")
    }

    /// Reduced matrix with the `j`-th white face deleted.
    pub fn reduce_at(&self, j: usize) -> Result<SymMatrix, GoeritzError> {
        self.full.delete(j).map_err(|_| GoeritzError::NoSuchFace(j))
    }
}

fn serialize_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantTriple {
    pub sigma: i64,
    #[serde(serialize_with = "serialize_big")]
    pub det: BigInt,
    pub nullity: usize,
    pub mu: i64,
    #[serde(skip)]
    pub genus: usize,
}

impl InvariantTriple {
    /// Builds the triple of a symmetric form corrected by `mu`:
    /// signature minus `mu`, absolute determinant, nullity.
    pub fn from_form(g: &SymMatrix, mu: i64, genus: usize) -> InvariantTriple {
        InvariantTriple {
            sigma: g.signature() - mu,
            det: g.determinant().abs(),
            nullity: g.nullity(),
            mu,
            genus,
        }
    }

    pub fn triple(&self) -> (i64, BigInt, usize) {
        (self.sigma, self.det.clone(), self.nullity)
    }
}

pub fn coloring_invariants(diag: &SurfaceDiagram, coloring: &Coloring) -> InvariantTriple {
    let g = GoeritzForm::new(diag, coloring).reduced();
    InvariantTriple::from_form(&g, coloring.mu(), diag.genus())
}

/// Oriented Euler number of the black surface relative to the link.
pub fn euler_number(coloring: &Coloring) -> i64 {
    -2 * coloring.mu()
}

/// Euler number of the black surface, not corrected by the linking of the
/// boundary components.
pub fn euler_number_unoriented(coloring: &Coloring, code: &GaussCode) -> i64 {
    euler_number(coloring) + code.linking().lambda
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Certificate {
    Minimal,
    Inconclusive,
    NotColorable,
}

/// Minimal when both determinants are nonzero, which forces the Carter
/// surface to have minimal genus.
pub fn genus_certificate(a: &InvariantTriple, b: &InvariantTriple) -> Certificate {
    if a.det.sign() != num_bigint::Sign::NoSign && b.det.sign() != num_bigint::Sign::NoSign {
        Certificate::Minimal
    } else {
        Certificate::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub name: String,
    pub gauss_code: String,
    pub genus: usize,
    pub colorable: bool,
    pub invariants: Vec<InvariantTriple>,
    pub certificate: Certificate,
}

pub fn analyze(name: &str, code: &GaussCode) -> Result<InvariantRecord, GoeritzError> {
    let diag = SurfaceDiagram::new(code);
    let colorings = checkerboard_colorings(&diag)?;
    let (invariants, certificate, colorable) = match colorings {
        None => (Vec::new(), Certificate::NotColorable, false),
        Some((xi, dual)) => {
            let a = coloring_invariants(&diag, &xi);
            let b = coloring_invariants(&diag, &dual);
            let cert = genus_certificate(&a, &b);
            (vec![a, b], cert, true)
        }
    };
    Ok(InvariantRecord {
        name: name.to_string(),
        gauss_code: code.to_string(),
        genus: diag.genus(),
        colorable,
        invariants,
        certificate,
    })
}
