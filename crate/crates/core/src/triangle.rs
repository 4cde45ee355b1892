//! Blocks of the generalized Pascal triangle `P(i, j) = binom(w_i, w_j)` and
//! the normalized square sets they colour.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::binomial::{CountArith, Exact, Modular, PrefixTrie, ResidueSpec};
use crate::error::{Error, Result};
use crate::numeration::NumerationSystem;
use crate::scalar::Real;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockMode {
    /// Exact `u64` entries; overflow is an error.
    Exact,
    /// Residues modulo a prime.
    Residue(u64),
}

/// The top-left `rows × cols` corner of the triangle, rows indexed by `w_i`
/// and columns by `w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleBlock {
    row_words: Vec<Word>,
    col_words: Vec<Word>,
    entries: Vec<u64>,
    mode: BlockMode,
}

fn rows_in<A: CountArith<Value = u64>>(arith: &A, trie: &PrefixTrie, rows: &[Word]) -> Result<Vec<u64>> {
    let per_row: Vec<Vec<u64>> = rows.par_iter().map(|u| trie.row(arith, u)).collect::<Result<_>>()?;
    Ok(per_row.concat())
}

impl TriangleBlock {
    pub fn new<T: Real>(sys: &NumerationSystem<T>, rows: usize, cols: usize, mode: BlockMode) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(
                "a triangle block needs at least one row and column".into(),
            ));
        }
        let words = sys.enumerate_language(rows.max(cols));
        let row_words = words[..rows].to_vec();
        let col_words = words[..cols].to_vec();
        let trie = PrefixTrie::new(&col_words);
        let entries = match mode {
            BlockMode::Exact => rows_in(&Exact::<u64>::new(), &trie, &row_words)?,
            BlockMode::Residue(q) => rows_in(&Modular::new(q)?, &trie, &row_words)?,
        };
        Ok(TriangleBlock {
            row_words,
            col_words,
            entries,
            mode,
        })
    }

    pub fn rows(&self) -> usize {
        self.row_words.len()
    }

    pub fn cols(&self) -> usize {
        self.col_words.len()
    }

    pub fn mode(&self) -> BlockMode {
        self.mode
    }

    pub fn row_word(&self, i: usize) -> &Word {
        &self.row_words[i]
    }

    pub fn col_word(&self, j: usize) -> &Word {
        &self.col_words[j]
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols() + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols()..(i + 1) * self.cols()]
    }

    /// CSV with header `i,j,word_i,word_j,value`; ε is written as an empty field.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "i,j,word_i,word_j,value")?;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                writeln!(
                    out,
                    "{i},{j},{},{},{}",
                    self.row_words[i].to_plain(),
                    self.col_words[j].to_plain(),
                    self.get(i, j)
                )?;
            }
        }
        Ok(())
    }
}

/// `triangle_block(sys, rows, cols, mode)`
pub fn triangle_block<T: Real>(
    sys: &NumerationSystem<T>,
    rows: usize,
    cols: usize,
    mode: BlockMode,
) -> Result<TriangleBlock> {
    TriangleBlock::new(sys, rows, cols, mode)
}

/// A cell `(col, row) = (val(v), val(u))` of the lattice. Ordered row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u64,
    pub col: u64,
}

/// `𝒰_{n,r}`: the cells `(val(v), val(u))` with `binom(u, v) ≡ r (mod q)`
/// among the first `U_β(n)` words, each standing for the square
/// `((col, row) + [0,1]²) / U_β(n)`.
///
/// Coordinates are abstract lattice indices with `y = row` growing upward;
/// the bitmap writer flips nothing because image rows also start at `w_0 = ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSet {
    level: usize,
    size: u64,
    residue: ResidueSpec,
    cells: Vec<Cell>,
}

impl SquareSet {
    pub fn from_block(block: &TriangleBlock, level: usize, residue: ResidueSpec) -> Result<Self> {
        if block.mode() != BlockMode::Residue(residue.modulus()) || block.rows() != block.cols() {
            return Err(Error::InvalidArgument(
                "square sets are built from a square residue block with the same modulus".into(),
            ));
        }
        let size = block.rows() as u64;
        let cells = (0..block.rows())
            .flat_map(|i| (0..block.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| block.get(i, j) == residue.residue())
            .map(|(i, j)| Cell {
                row: i as u64,
                col: j as u64,
            })
            .collect();
        Ok(SquareSet {
            level,
            size,
            residue,
            cells,
        })
    }

    /// Builds a set directly from cells on a `size × size` grid.
    pub fn from_cells(level: usize, size: u64, residue: ResidueSpec, mut cells: Vec<Cell>) -> Result<Self> {
        if let Some(c) = cells.iter().find(|c| c.row >= size || c.col >= size) {
            return Err(Error::InvalidArgument(format!(
                "cell ({}, {}) outside {size}×{size}",
                c.col, c.row
            )));
        }
        cells.sort();
        cells.dedup();
        Ok(SquareSet {
            level,
            size,
            residue,
            cells,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Side of the grid, `U_β(n)`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn residue(&self) -> ResidueSpec {
        self.residue
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, col: u64, row: u64) -> bool {
        self.cells.binary_search(&Cell { row, col }).is_ok()
    }

    /// `[x0, y0, x1, y1]` of the square of `cell` inside `[0,1]²`.
    pub fn square<T: Real>(&self, cell: Cell) -> [T; 4] {
        let n = T::from_count(self.size);
        let x = T::from_count(cell.col);
        let y = T::from_count(cell.row);
        [x / n, y / n, (x + T::one()) / n, (y + T::one()) / n]
    }

    /// Plain PBM (`P1`), `scale` pixels per cell, image row 0 = `w_0` at the top.
    pub fn write_pbm<W: Write>(&self, scale: usize, mut out: W) -> Result<()> {
        if scale == 0 {
            return Err(Error::InvalidArgument("scale must be at least 1".into()));
        }
        let side = self.size as usize * scale;
        write!(out, "P1\n{side} {side}\n")?;
        let mut line = vec![b'0'; self.size as usize];
        let mut cells = self.cells.iter().peekable();
        for row in 0..self.size {
            line.fill(b'0');
            while let Some(c) = cells.next_if(|c| c.row == row) {
                line[c.col as usize] = b'1';
            }
            let pixels: Vec<u8> = line.iter().flat_map(|&p| std::iter::repeat_n(p, scale)).collect();
            let mut text = String::with_capacity(2 * side);
            for chunk in pixels.chunks(PBM_PIXELS_PER_LINE) {
                let tokens: Vec<&str> = chunk.iter().map(|&p| if p == b'1' { "1" } else { "0" }).collect();
                text.push_str(&tokens.join(" "));
                text.push('\n');
            }
            for _ in 0..scale {
                out.write_all(text.as_bytes())?;
            }
        }
        Ok(())
    }

    /// CSV with header `col,row`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "col,row")?;
        for c in &self.cells {
            writeln!(out, "{},{}", c.col, c.row)?;
        }
        Ok(())
    }
}

/// 35 tokens of `d ` fit in 70 characters.
const PBM_PIXELS_PER_LINE: usize = 35;

/// `𝒰_{n,r}` for the system: residues of the `U_β(n) × U_β(n)` block.
pub fn u_set<T: Real>(sys: &NumerationSystem<T>, level: usize, residue: ResidueSpec) -> Result<SquareSet> {
    let size = sys.u(level)?;
    let size = usize::try_from(size).map_err(|_| Error::Overflow(format!("U_β({level})")))?;
    let block = TriangleBlock::new(sys, size, size, BlockMode::Residue(residue.modulus()))?;
    SquareSet::from_block(&block, level, residue)
}

/// Writes the set as a PBM file.
pub fn render_square_set(set: &SquareSet, scale: usize, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    set.write_pbm(scale, &mut out)?;
    out.flush()?;
    Ok(())
}
