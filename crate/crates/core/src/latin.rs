//! Latin squares and mutually orthogonal families of prime order.

use crate::{Error, Result};

/// A `q x q` grid over the symbols `0..q`, stored row-major.
///
/// Construction only checks shape and symbol range; whether the grid is
/// actually Latin is answered by [`LatinSquare::is_latin`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    order: u32,
    cells: Vec<u32>,
}

impl LatinSquare {
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::MalformedSquare("empty grid"));
        }
        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::MalformedSquare("grid is not square"));
            }
            if row.iter().any(|&v| v as usize >= order) {
                return Err(Error::MalformedSquare("cell value out of range"));
            }
            cells.extend_from_slice(row);
        }
        Ok(Self {
            order: order as u32,
            cells,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn cell(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.order as usize + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.order as usize)
    }

    /// True iff every row and every column is a permutation of `0..q`.
    pub fn is_latin(&self) -> bool {
        let q = self.order as usize;
        let mut seen = vec![false; q];
        for r in 0..q {
            seen.fill(false);
            for c in 0..q {
                let v = self.cell(r, c) as usize;
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        for c in 0..q {
            seen.fill(false);
            for r in 0..q {
                let v = self.cell(r, c) as usize;
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }
}

/// True iff superimposing `a` and `b` yields all `q^2` ordered pairs.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    if a.order != b.order {
        return Err(Error::OrderMismatch(a.order, b.order));
    }
    let q = a.order as usize;
    let mut seen = vec![false; q * q];
    for (&x, &y) in a.cells.iter().zip(&b.cells) {
        let slot = x as usize * q + y as usize;
        if seen[slot] {
            return Ok(false);
        }
        seen[slot] = true;
    }
    Ok(true)
}

/// An ordered family of pairwise orthogonal Latin squares of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolsFamily {
    order: u32,
    squares: Vec<LatinSquare>,
}

impl MolsFamily {
    /// Validates every square and every pair before accepting the family.
    pub fn new(order: u32, squares: Vec<LatinSquare>) -> Result<Self> {
        if order >= 2 && squares.len() > (order - 1) as usize {
            return Err(Error::TooManySquares {
                requested: squares.len() as u32,
                max: order - 1,
            });
        }
        for (i, a) in squares.iter().enumerate() {
            if a.order != order {
                return Err(Error::OrderMismatch(order, a.order));
            }
            if !a.is_latin() {
                return Err(Error::MalformedSquare("square is not Latin"));
            }
            for b in &squares[i + 1..] {
                if !are_orthogonal(a, b)? {
                    return Err(Error::MalformedSquare("squares are not orthogonal"));
                }
            }
        }
        Ok(Self { order, squares })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

/// The cyclic family over `Z_q`: square `a` (for `a = 1..=count`) has
/// `cell(i, j) = (a*i + j) mod q`.
pub fn cyclic_mols(q: u32, count: u32) -> Result<MolsFamily> {
    if !is_prime(q) {
        return Err(Error::NonPrimeOrder(q));
    }
    if count > q - 1 {
        return Err(Error::TooManySquares {
            requested: count,
            max: q - 1,
        });
    }
    let qq = q as u64;
    let squares = (1..=count as u64)
        .map(|a| {
            let cells = (0..qq)
                .flat_map(|i| (0..qq).map(move |j| ((a * i + j) % qq) as u32))
                .collect();
            LatinSquare { order: q, cells }
        })
        .collect();
    Ok(MolsFamily { order: q, squares })
}
