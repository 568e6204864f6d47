//! Signed Gauss codes for virtual link diagrams.
//!
//! A code is a `;`-separated list of components, each a word in tokens
//! `O<id><sign>` / `U<id><sign>`. Whitespace is ignored and a component may
//! be empty (an unknotted circle with no crossings).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("structure error: {0}")]
    Structure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flip(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

/// One passage of a component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: usize,
    pub strand: Strand,
    pub sign: i8,
}

/// Location of a pass: (component, position within component).
pub type PassLoc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode {
    components: Vec<Vec<Pass>>,
    labels: Vec<String>,
}

impl GaussCode {
    /// Builds a code from passes with arbitrary crossing indices into `labels`,
    /// validating it and renumbering crossings by first appearance.
    pub fn new(components: Vec<Vec<Pass>>, labels: Vec<String>) -> Result<Self, GaussError> {
        if components.is_empty() {
            return Err(GaussError::Structure("code has no components".into()));
        }
        let mut over: Vec<Option<i8>> = vec![None; labels.len()];
        let mut under: Vec<Option<i8>> = vec![None; labels.len()];
        for p in components.iter().flatten() {
            let Some(label) = labels.get(p.crossing) else {
                return Err(GaussError::Structure(format!("crossing index {} has no label", p.crossing)));
            };
            if p.sign != 1 && p.sign != -1 {
                return Err(GaussError::Structure(format!("crossing {label} has sign {}", p.sign)));
            }
            let slot = match p.strand {
                Strand::Over => &mut over[p.crossing],
                Strand::Under => &mut under[p.crossing],
            };
            if slot.is_some() {
                let which = if p.strand == Strand::Over { "O" } else { "U" };
                return Err(GaussError::Structure(format!("crossing {label} appears twice as {which}")));
            }
            *slot = Some(p.sign);
        }
        let mut renumber = vec![usize::MAX; labels.len()];
        let mut new_labels = Vec::new();
        for p in components.iter().flatten() {
            if renumber[p.crossing] == usize::MAX {
                renumber[p.crossing] = new_labels.len();
                new_labels.push(labels[p.crossing].clone());
            }
        }
        for (c, label) in labels.iter().enumerate() {
            match (over[c], under[c]) {
                (Some(a), Some(b)) if a != b => {
                    return Err(GaussError::Structure(format!("crossing {label} has mismatched signs")))
                }
                (Some(_), Some(_)) => {}
                (None, None) => {}
                (None, _) => return Err(GaussError::Structure(format!("crossing {label} has no over pass"))),
                (_, None) => return Err(GaussError::Structure(format!("crossing {label} has no under pass"))),
            }
        }
        let components = components
            .into_iter()
            .map(|comp| comp.into_iter().map(|p| Pass { crossing: renumber[p.crossing], ..p }).collect())
            .collect();
        Ok(GaussCode { components, labels: new_labels })
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn n_crossings(&self) -> usize {
        self.labels.len()
    }

    /// Original label of a crossing as written in the input.
    pub fn label(&self, c: usize) -> &str {
        &self.labels[c]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sign(&self, c: usize) -> i8 {
        let (k, i) = self.locate(c, Strand::Over);
        self.components[k][i].sign
    }

    /// Position of the over or under pass of crossing `c`.
    pub fn locate(&self, c: usize, strand: Strand) -> PassLoc {
        for (k, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                if p.crossing == c && p.strand == strand {
                    return (k, i);
                }
            }
        }
        panic!("crossing {c} not present");
    }

    /// Over and under locations of every crossing.
    pub fn crossing_locations(&self) -> Vec<(PassLoc, PassLoc)> {
        let mut over = vec![(0, 0); self.n_crossings()];
        let mut under = vec![(0, 0); self.n_crossings()];
        for (k, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                match p.strand {
                    Strand::Over => over[p.crossing] = (k, i),
                    Strand::Under => under[p.crossing] = (k, i),
                }
            }
        }
        over.into_iter().zip(under).collect()
    }

    pub fn linking(&self) -> LinkingData {
        let m = self.n_components();
        let mut vlk = vec![vec![0i64; m]; m];
        for (o, u) in self.crossing_locations() {
            if o.0 != u.0 {
                vlk[o.0][u.0] += self.components[o.0][o.1].sign as i64;
            }
        }
        let lambda = vlk.iter().flatten().sum();
        LinkingData { vlk, lambda }
    }

    /// The code restricted to the given components, in the given order.
    /// Crossings involving other components are dropped.
    pub fn sublink(&self, keep: &[usize]) -> Result<GaussCode, GaussError> {
        let locs = self.crossing_locations();
        let kept = |c: usize| keep.contains(&locs[c].0 .0) && keep.contains(&locs[c].1 .0);
        let comps = keep
            .iter()
            .map(|&k| self.components[k].iter().copied().filter(|p| kept(p.crossing)).collect())
            .collect();
        GaussCode::new(comps, self.labels.clone())
    }

    /// Unknotted single component.
    pub fn unknot() -> GaussCode {
        GaussCode { components: vec![Vec::new()], labels: Vec::new() }
    }
}

/// Virtual linking numbers: `vlk[i][j]` sums the signs of crossings where
/// component `i` passes over component `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingData {
    pub vlk: Vec<Vec<i64>>,
    pub lambda: i64,
}

pub fn parse(text: &str) -> Result<GaussCode, GaussError> {
    if text.trim().is_empty() {
        return Err(GaussError::Structure("empty code".into()));
    }
    let mut labels: Vec<String> = Vec::new();
    let mut components = vec![Vec::new()];
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b == b';' {
            components.push(Vec::new());
            i += 1;
            continue;
        }
        let strand = match b {
            b'O' => Strand::Over,
            b'U' => Strand::Under,
            _ => {
                return Err(GaussError::Syntax {
                    pos: i,
                    msg: format!("expected O or U, found {:?}", char::from(b)),
                })
            }
        };
        let start = i;
        i += 1;
        let id_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == id_start {
            return Err(GaussError::Syntax { pos: i, msg: "missing crossing id".into() });
        }
        let label = text[id_start..i].trim_start_matches('0');
        let label = if label.is_empty() { "0" } else { label };
        let sign = match bytes.get(i) {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => {
                return Err(GaussError::Syntax {
                    pos: start,
                    msg: format!("token {} lacks a sign", &text[start..i]),
                })
            }
        };
        i += 1;
        let crossing = match labels.iter().position(|l| l == label) {
            Some(c) => c,
            None => {
                labels.push(label.to_string());
                labels.len() - 1
            }
        };
        components.last_mut().unwrap().push(Pass { crossing, strand, sign });
    }
    GaussCode::new(components, labels)
}

impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, comp) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            for p in comp {
                let s = if p.strand == Strand::Over { 'O' } else { 'U' };
                let sign = if p.sign > 0 { '+' } else { '-' };
                write!(f, "{s}{}{sign}", self.labels[p.crossing])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_linking() {
        let c = parse("O1+U2+;U1+O2+").unwrap();
        let l = c.linking();
        assert_eq!(l.vlk[0][1], 1);
        assert_eq!(l.vlk[1][0], 1);
        assert_eq!(l.lambda, 2);
    }

    #[test]
    fn renumbers_by_first_appearance() {
        let c = parse("O7+ O3- U7+ U3-").unwrap();
        assert_eq!(c.n_crossings(), 2);
        assert_eq!(c.label(0), "7");
        assert_eq!(c.components()[0][1].crossing, 1);
        assert_eq!(c.to_string(), "O7+O3-U7+U3-");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse(""), Err(GaussError::Structure(_))));
        assert!(matches!(parse("O1+U1"), Err(GaussError::Syntax { .. })));
        assert!(matches!(parse("X1+U1+"), Err(GaussError::Syntax { .. })));
        assert!(matches!(parse("O1+O1+"), Err(GaussError::Structure(_))));
        assert!(matches!(parse("O1+U1-"), Err(GaussError::Structure(_))));
        assert!(matches!(parse("O1+U2+"), Err(GaussError::Structure(_))));
    }

    #[test]
    fn empty_components_allowed() {
        let c = parse("O1+U1+;").unwrap();
        assert_eq!(c.n_components(), 2);
        assert!(c.components()[1].is_empty());
        assert_eq!(parse(&c.to_string()).unwrap(), c);
    }
}
