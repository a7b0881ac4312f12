//! Explicit minimal designs for `32 <= n <= 70`, built as disjoint unions of
//! small covering designs ("pieces").

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::design::Design;
use crate::error::ConstructionError;
use crate::vertex_set::VertexSet;

/// The seven covering pieces. Each covers every pair of its own vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

const PIECE_A: &[[usize; 6]] = &[[1, 2, 3, 4, 5, 6]];
const PIECE_B: &[[usize; 6]] = &[[1, 2, 3, 4, 5, 6], [1, 2, 3, 4, 7, 8], [1, 2, 5, 6, 7, 8]];
const PIECE_C: &[[usize; 6]] = &[[1, 2, 3, 4, 5, 6], [1, 2, 3, 7, 8, 9], [4, 5, 6, 7, 8, 9]];
const PIECE_D: &[[usize; 6]] = &[
    [1, 2, 3, 4, 9, 10],
    [1, 2, 5, 6, 9, 10],
    [1, 2, 7, 8, 9, 10],
    [3, 4, 5, 6, 7, 8],
];
// Fano plane with every point doubled.
const PIECE_E: &[[usize; 6]] = &[
    [1, 2, 3, 4, 9, 10],
    [1, 2, 5, 6, 13, 14],
    [1, 2, 7, 8, 11, 12],
    [3, 4, 5, 6, 11, 12],
    [3, 4, 7, 8, 13, 14],
    [5, 6, 7, 8, 9, 10],
    [9, 10, 11, 12, 13, 14],
];
const PIECE_F: &[[usize; 6]] = &[
    [1, 2, 3, 4, 5, 6],
    [1, 2, 3, 7, 8, 9],
    [1, 2, 3, 10, 11, 12],
    [4, 5, 6, 7, 8, 9],
    [4, 5, 6, 10, 11, 12],
    [7, 8, 9, 10, 11, 12],
];

impl PieceKind {
    pub const ALL: [PieceKind; 7] = [
        PieceKind::A,
        PieceKind::B,
        PieceKind::C,
        PieceKind::D,
        PieceKind::E,
        PieceKind::F,
        PieceKind::G,
    ];

    /// Number of vertices.
    pub fn order(self) -> usize {
        match self {
            PieceKind::A => 6,
            PieceKind::B => 8,
            PieceKind::C => 9,
            PieceKind::D => 10,
            PieceKind::E => 14,
            PieceKind::F => 12,
            PieceKind::G => 13,
        }
    }

    /// Number of blocks.
    pub fn size(self) -> usize {
        match self {
            PieceKind::A => 1,
            PieceKind::B | PieceKind::C => 3,
            PieceKind::D => 4,
            PieceKind::F => 6,
            PieceKind::E | PieceKind::G => 7,
        }
    }

    pub fn label(self) -> char {
        match self {
            PieceKind::A => 'A',
            PieceKind::B => 'B',
            PieceKind::C => 'C',
            PieceKind::D => 'D',
            PieceKind::E => 'E',
            PieceKind::F => 'F',
            PieceKind::G => 'G',
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for PieceKind {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PieceKind::ALL
            .into_iter()
            .find(|k| s.len() == 1 && s.starts_with(k.label()))
            .ok_or_else(|| ConstructionError::UnknownPiece(s.to_string()))
    }
}

/// Block lists of a piece with every label shifted by `offset`.
pub fn piece_blocks(kind: PieceKind, offset: usize) -> Vec<Vec<usize>> {
    let raw: Vec<Vec<usize>> = match kind {
        PieceKind::A => to_vecs(PIECE_A),
        PieceKind::B => to_vecs(PIECE_B),
        PieceKind::C => to_vecs(PIECE_C),
        PieceKind::D => to_vecs(PIECE_D),
        PieceKind::E => to_vecs(PIECE_E),
        PieceKind::F => to_vecs(PIECE_F),
        PieceKind::G => to_vecs(PIECE_E)
            .into_iter()
            .map(|block| {
                if !block.contains(&14) {
                    return block;
                }
                let present: VertexSet = block.iter().filter(|&&v| v != 14).collect();
                let fill = (1..=13).find(|v| !present.contains(*v)).expect("a block has 6 < 13 labels");
                let mut out: Vec<usize> = present.iter().chain([fill]).collect();
                out.sort_unstable();
                out
            })
            .collect(),
    };
    raw.into_iter()
        .map(|b| b.into_iter().map(|v| v + offset).collect())
        .collect()
}

fn to_vecs(blocks: &[[usize; 6]]) -> Vec<Vec<usize>> {
    blocks.iter().map(|b| b.to_vec()).collect()
}

/// Pieces laid side by side, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pieces: Vec<PieceKind>,
}

impl Configuration {
    pub fn new(pieces: Vec<PieceKind>) -> Result<Self, ConstructionError> {
        if pieces.len() > 5 {
            return Err(ConstructionError::TooManyPieces(pieces.len()));
        }
        Ok(Configuration { pieces })
    }

    pub fn pieces(&self) -> &[PieceKind] {
        &self.pieces
    }

    pub fn order(&self) -> usize {
        self.pieces.iter().map(|p| p.order()).sum()
    }

    pub fn size(&self) -> usize {
        self.pieces.iter().map(|p| p.size()).sum()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `A,C,E`, `(A,C,E)` or `ACE`.
impl FromStr for Configuration {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let pieces = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .map(|c| c.to_string().parse())
            .collect::<Result<Vec<PieceKind>, _>>()?;
        Configuration::new(pieces)
    }
}

/// Minimal ticket counts and their configurations for `n = 32..=70`.
const CONFIGURATIONS: [(usize, usize, &str); 39] = [
    (32, 7, "AAAAB"),
    (33, 7, "AAAAC"),
    (34, 8, "AAAAD"),
    (35, 9, "AAABC"),
    (36, 9, "AAACC"),
    (37, 10, "AAACD"),
    (38, 11, "AAAAE"),
    (39, 11, "AACCC"),
    (40, 12, "AACCD"),
    (41, 13, "AAACE"),
    (42, 13, "ACCCC"),
    (43, 14, "ACCCD"),
    (44, 15, "AACCE"),
    (45, 15, "CCCCC"),
    (46, 16, "CCCCD"),
    (47, 17, "ACCCE"),
    (48, 18, "ACCDE"),
    (49, 19, "AACEE"),
    (50, 19, "CCCCE"),
    (51, 20, "CCCDE"),
    (52, 21, "ACCEE"),
    (53, 22, "ACDEE"),
    (54, 23, "AAEEE"),
    (55, 23, "CCCEE"),
    (56, 24, "CCDEE"),
    (57, 25, "ACEEE"),
    (58, 26, "ADEEE"),
    (59, 27, "BCEEE"),
    (60, 27, "CCEEE"),
    (61, 28, "CDEEE"),
    (62, 29, "DDEEE"),
    (63, 30, "CEEEF"),
    (64, 31, "DEEEF"),
    (65, 31, "CEEEE"),
    (66, 32, "DEEEE"),
    (67, 34, "EEEFG"),
    (68, 34, "EEEEF"),
    (69, 35, "EEEEG"),
    (70, 35, "EEEEE"),
];

/// Tabulated minimal ticket count `L(n,6,6,2)` for `32 <= n <= 70`.
pub fn tabulated_value(n: usize) -> Option<usize> {
    CONFIGURATIONS.iter().find(|row| row.0 == n).map(|row| row.1)
}

pub fn config_for(n: usize) -> Result<Configuration, ConstructionError> {
    let row = CONFIGURATIONS
        .iter()
        .find(|row| row.0 == n)
        .ok_or(ConstructionError::OutOfRange(n))?;
    row.2.parse()
}

/// Disjoint union of the pieces, offsets accumulating left to right.
pub fn assemble(config: &Configuration) -> Design {
    let mut blocks = Vec::with_capacity(config.size());
    let mut offset = 0;
    for &piece in config.pieces() {
        blocks.extend(piece_blocks(piece, offset));
        offset += piece.order();
    }
    Design::new(offset, 6, &blocks).expect("pieces are 6-uniform on their own labels")
}
