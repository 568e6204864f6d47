//! Carter surface of a Gauss code, as a combinatorial map.
//!
//! Each crossing is a 4-valent vertex carrying four darts. Dart `4c + r`
//! is the half-edge at crossing `c` with role `r` (see [`Role`]). The
//! counterclockwise rotation at a positive crossing is under-in, over-in,
//! under-out, over-out; a negative crossing uses the mirror order. Faces are
//! the orbits of `d -> next_ccw(mate(d))`.

use std::fmt::Write as _;

use crate::gauss_io::{GaussCode, PassLoc, Strand};

pub type Dart = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    UnderIn = 0,
    OverIn = 1,
    UnderOut = 2,
    OverOut = 3,
}

impl Role {
    pub fn of(d: Dart) -> Role {
        match d % 4 {
            0 => Role::UnderIn,
            1 => Role::OverIn,
            2 => Role::UnderOut,
            _ => Role::OverOut,
        }
    }

    pub fn dart(self, crossing: usize) -> Dart {
        4 * crossing + self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    In,
    Out,
}

fn role(strand: Strand, end: End) -> Role {
    match (strand, end) {
        (Strand::Under, End::In) => Role::UnderIn,
        (Strand::Over, End::In) => Role::OverIn,
        (Strand::Under, End::Out) => Role::UnderOut,
        (Strand::Over, End::Out) => Role::OverOut,
    }
}

/// A closed circle without crossings and the two faces it separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeLoop {
    pub component: usize,
    pub left: FaceId,
    pub right: FaceId,
}

#[derive(Debug, Clone)]
pub struct SurfaceDiagram {
    code: GaussCode,
    rotation: Vec<[Dart; 4]>,
    mate: Vec<Dart>,
    faces: Vec<Vec<Dart>>,
    face_of: Vec<FaceId>,
    free_loops: Vec<FreeLoop>,
    pieces: usize,
    genus: usize,
}

impl SurfaceDiagram {
    pub fn new(code: &GaussCode) -> SurfaceDiagram {
        let n = code.n_crossings();
        let rotation: Vec<[Dart; 4]> = (0..n)
            .map(|c| {
                let d = |r: Role| r.dart(c);
                if code.sign(c) > 0 {
                    [d(Role::UnderIn), d(Role::OverIn), d(Role::UnderOut), d(Role::OverOut)]
                } else {
                    [d(Role::UnderIn), d(Role::OverOut), d(Role::UnderOut), d(Role::OverIn)]
                }
            })
            .collect();

        let mut mate = vec![0; 4 * n];
        for comp in code.components() {
            let m = comp.len();
            for i in 0..m {
                let a = comp[i];
                let b = comp[(i + 1) % m];
                let out = role(a.strand, End::Out).dart(a.crossing);
                let inn = role(b.strand, End::In).dart(b.crossing);
                mate[out] = inn;
                mate[inn] = out;
            }
        }

        let mut pos = vec![0usize; 4 * n];
        for rot in &rotation {
            for (k, &d) in rot.iter().enumerate() {
                pos[d] = k;
            }
        }
        let next_ccw = |d: Dart| rotation[d / 4][(pos[d] + 1) % 4];

        let mut face_of = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                orbit.push(d);
                d = next_ccw(mate[d]);
                if d == start {
                    break;
                }
            }
            // start is the least unvisited dart, so the orbit is already canonical
            faces.push(orbit);
        }

        let mut free_loops = Vec::new();
        for (k, comp) in code.components().iter().enumerate() {
            if comp.is_empty() {
                let left = faces.len();
                faces.push(Vec::new());
                faces.push(Vec::new());
                free_loops.push(FreeLoop { component: k, left, right: left + 1 });
            }
        }

        // connected pieces among crossings
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for d in 0..4 * n {
            let (a, b) = (find(&mut parent, d / 4), find(&mut parent, mate[d] / 4));
            parent[a] = b;
        }
        let mut roots: Vec<usize> = (0..n).map(|c| find(&mut parent, c)).collect();
        let piece_of = roots.clone();
        roots.sort_unstable();
        roots.dedup();
        let mut genus2 = 0i64;
        for &r in &roots {
            let v = (0..n).filter(|&c| piece_of[c] == r).count() as i64;
            let f = faces
                .iter()
                .filter(|f| f.first().is_some_and(|&d| piece_of[d / 4] == r))
                .count() as i64;
            genus2 += 2 - v + 2 * v - f;
        }
        let genus = (genus2 / 2) as usize;

        SurfaceDiagram {
            code: code.clone(),
            rotation,
            mate,
            faces,
            face_of,
            pieces: roots.len() + free_loops.len(),
            free_loops,
            genus,
        }
    }

    pub fn code(&self) -> &GaussCode {
        &self.code
    }

    pub fn n_crossings(&self) -> usize {
        self.rotation.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    /// Faces as dart cycles, least dart first. Faces bounded by a circle
    /// without crossings have no darts.
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn free_loops(&self) -> &[FreeLoop] {
        &self.free_loops
    }

    pub fn is_connected(&self) -> bool {
        self.pieces == 1
    }

    pub fn rotation(&self, c: usize) -> [Dart; 4] {
        self.rotation[c]
    }

    pub fn mate(&self, d: Dart) -> Dart {
        self.mate[d]
    }

    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    /// The face in the corner between `d` and the next dart counterclockwise.
    pub fn corner_after(&self, d: Dart) -> FaceId {
        let rot = self.rotation[d / 4];
        let k = rot.iter().position(|&x| x == d).unwrap();
        self.face_of[rot[(k + 1) % 4]]
    }

    /// The face in the corner between two darts adjacent in the rotation,
    /// regardless of their order.
    pub fn corner_between(&self, a: Dart, b: Dart) -> Option<FaceId> {
        let rot = self.rotation[a / 4];
        let k = rot.iter().position(|&x| x == a)?;
        if rot[(k + 1) % 4] == b {
            Some(self.face_of[b])
        } else if rot[(k + 3) % 4] == b {
            Some(self.face_of[a])
        } else {
            None
        }
    }

    /// Pairs of faces on the two sides of each edge, including circles
    /// without crossings.
    pub fn edge_sides(&self) -> Vec<(FaceId, FaceId)> {
        let mut out: Vec<(FaceId, FaceId)> = (0..self.mate.len())
            .filter(|&d| Role::of(d) == Role::UnderOut || Role::of(d) == Role::OverOut)
            .map(|d| (self.face_of[d], self.face_of[self.mate[d]]))
            .collect();
        out.extend(self.free_loops.iter().map(|l| (l.left, l.right)));
        out
    }

    /// Dart at one end of a pass.
    pub fn dart_at(&self, loc: PassLoc, end: End) -> Dart {
        let p = self.code.components()[loc.0][loc.1];
        role(p.strand, end).dart(p.crossing)
    }

    /// Inverse of [`Self::dart_at`].
    pub fn dart_location(&self, d: Dart) -> (PassLoc, End) {
        let c = d / 4;
        let (strand, end) = match Role::of(d) {
            Role::UnderIn => (Strand::Under, End::In),
            Role::OverIn => (Strand::Over, End::In),
            Role::UnderOut => (Strand::Under, End::Out),
            Role::OverOut => (Strand::Over, End::Out),
        };
        (self.code.locate(c, strand), end)
    }

    /// Stable text dump used in debugging and golden tests.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        writeln!(s, "code {}", self.code).unwrap();
        writeln!(s, "crossings {}", self.n_crossings()).unwrap();
        for (c, rot) in self.rotation.iter().enumerate() {
            let sign = if self.code.sign(c) > 0 { '+' } else { '-' };
            writeln!(s, "x{} {sign} {} {} {} {}", c + 1, rot[0], rot[1], rot[2], rot[3]).unwrap();
        }
        writeln!(s, "faces {}", self.faces.len()).unwrap();
        for (i, f) in self.faces.iter().enumerate() {
            let darts: Vec<String> = f.iter().map(|d| d.to_string()).collect();
            writeln!(s, "f{i} {}", darts.join(" ")).unwrap();
        }
        writeln!(s, "genus {}", self.genus).unwrap();
        s
    }
}
