//! Source and side-information files: raw packed symbols, a whole number
//! of blocks.

use std::path::Path;

use swld::codec::{alphabet, pack_symbols, symbol_width, unpack_symbols};
use swld::gf::Symbol;
use swld::planner::Family;

use crate::Failure;

pub fn read_blocks(path: &Path, family: Family, m: u32, n: usize) -> Result<Vec<Vec<Symbol>>, Failure> {
    let bytes = std::fs::read(path)?;
    let width = symbol_width(family, m);
    if bytes.is_empty() || bytes.len() % (width * n) != 0 {
        return Err(Failure::usage(format!(
            "{}: {} bytes is not a whole number of {n}-symbol blocks",
            path.display(),
            bytes.len()
        )));
    }
    let symbols = unpack_symbols(&bytes, width);
    let q = alphabet(family, m);
    if let Some(s) = symbols.iter().find(|&&s| s as usize >= q) {
        return Err(Failure::usage(format!("{}: symbol {s} outside GF({q})", path.display())));
    }
    Ok(symbols.chunks(n).map(<[Symbol]>::to_vec).collect())
}

pub fn write_blocks(path: &Path, blocks: &[Vec<Symbol>], family: Family, m: u32) -> Result<(), Failure> {
    let mut out = Vec::new();
    for b in blocks {
        pack_symbols(b, symbol_width(family, m), &mut out);
    }
    std::fs::write(path, out)?;
    Ok(())
}
