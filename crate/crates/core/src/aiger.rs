// SPDX-License-Identifier: Apache-2.0
//! AIGER reader and writer, ASCII (`aag`) and binary (`aig`).
//!
//! Latches are read as a combinational view: each latch output becomes an
//! extra primary input and each next-state function an extra primary
//! output.

use std::path::Path;

use rustc_hash::FxHashMap;

use crate::aig::{Aig, Lit};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AigerHeader {
    pub binary: bool,
    pub m: u32,
    pub i: u32,
    pub l: u32,
    pub o: u32,
    pub a: u32,
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Reader<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    /// Next text line without its terminator, or `None` at end of input.
    fn line(&mut self) -> Option<&'a str> {
        if self.at_end() {
            return None;
        }
        let rest = &self.bytes[self.pos..];
        let end = rest.iter().position(|&b| b == b'\n').unwrap_or(rest.len());
        let raw = &rest[..end];
        self.pos += (end + 1).min(rest.len());
        self.line += 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        Some(std::str::from_utf8(raw).unwrap_or("\u{fffd}"))
    }

    fn required_line(&mut self, what: &str) -> Result<&'a str> {
        self.line()
            .ok_or_else(|| Error::Truncated(format!("missing {what}")))
    }

    fn varint(&mut self) -> Result<u32> {
        let mut x: u64 = 0;
        let mut shift = 0;
        loop {
            let Some(&b) = self.bytes.get(self.pos) else {
                return Err(Error::Truncated("binary AND section ends early".into()));
            };
            self.pos += 1;
            x |= ((b & 0x7f) as u64) << shift;
            if b & 0x80 == 0 {
                break;
            }
            shift += 7;
            if shift > 35 {
                return Err(Error::MalformedBody {
                    line: self.line,
                    msg: "delta does not fit in 32 bits".into(),
                });
            }
        }
        u32::try_from(x).map_err(|_| Error::MalformedBody {
            line: self.line,
            msg: "delta does not fit in 32 bits".into(),
        })
    }
}

fn parse_header(line: &str) -> Result<AigerHeader> {
    let mut fields = line.split_ascii_whitespace();
    let magic = fields.next().unwrap_or("");
    let binary = match magic {
        "aag" => false,
        "aig" => true,
        _ => return Err(Error::MalformedHeader(format!("unknown magic `{magic}`"))),
    };
    let nums: Vec<u32> = fields
        .map(|f| {
            f.parse::<u32>()
                .map_err(|_| Error::MalformedHeader(format!("bad number `{f}`")))
        })
        .collect::<Result<_>>()?;
    if nums.len() < 5 {
        return Err(Error::MalformedHeader(
            "expected five counts M I L O A".into(),
        ));
    }
    if nums.len() > 9 {
        return Err(Error::MalformedHeader("too many header fields".into()));
    }
    if let Some(pos) = nums[5..].iter().position(|&x| x > 0) {
        let name = ["bad-state", "invariant constraint", "justice", "fairness"][pos];
        return Err(Error::Unsupported(format!("{name} properties")));
    }
    let h = AigerHeader {
        binary,
        m: nums[0],
        i: nums[1],
        l: nums[2],
        o: nums[3],
        a: nums[4],
    };
    let sum = h.i as u64 + h.l as u64 + h.a as u64;
    if (h.m as u64) < sum {
        return Err(Error::MalformedHeader(format!(
            "M = {} is smaller than I + L + A = {sum}",
            h.m
        )));
    }
    if binary && h.m as u64 != sum {
        return Err(Error::MalformedHeader(
            "binary files need M = I + L + A".into(),
        ));
    }
    Ok(h)
}

fn parse_lits(line: &str, n: usize, lineno: usize, max_lit: u32) -> Result<Vec<u32>> {
    let lits: Vec<u32> = line
        .split_ascii_whitespace()
        .map(|f| {
            f.parse::<u32>().map_err(|_| Error::MalformedBody {
                line: lineno,
                msg: format!("bad literal `{f}`"),
            })
        })
        .collect::<Result<_>>()?;
    if lits.len() < n {
        return Err(Error::MalformedBody {
            line: lineno,
            msg: format!("expected {n} literals"),
        });
    }
    if let Some(&bad) = lits.iter().take(n).find(|&&l| l > max_lit) {
        return Err(Error::MalformedBody {
            line: lineno,
            msg: format!("literal {bad} exceeds maximum {max_lit}"),
        });
    }
    Ok(lits)
}

/// Parses an AIGER file in either format.
pub fn parse(bytes: &[u8]) -> Result<Aig> {
    let mut r = Reader {
        bytes,
        pos: 0,
        line: 0,
    };
    let header_line = r
        .line()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let h = parse_header(header_line)?;
    let max_lit = 2 * h.m + 1;
    let mut aig = Aig::new();
    // AIGER variable -> literal in `aig`
    let mut vars: FxHashMap<u32, Lit> = FxHashMap::default();
    vars.insert(0, Lit::FALSE);
    let mut input_vars = Vec::with_capacity(h.i as usize);

    for k in 0..h.i {
        let v = if h.binary {
            k + 1
        } else {
            let line = r.required_line("input")?;
            let lits = parse_lits(line, 1, r.line, max_lit)?;
            if lits[0] < 2 || lits[0] & 1 == 1 {
                return Err(Error::MalformedBody {
                    line: r.line,
                    msg: format!("invalid input literal {}", lits[0]),
                });
            }
            lits[0] / 2
        };
        if vars.insert(v, aig.add_pi()).is_some() {
            return Err(Error::MalformedBody {
                line: r.line,
                msg: format!("variable {v} defined twice"),
            });
        }
        input_vars.push(v);
    }

    let mut latch_next = Vec::with_capacity(h.l as usize);
    for k in 0..h.l {
        let line = r.required_line("latch")?;
        let (v, next) = if h.binary {
            let lits = parse_lits(line, 1, r.line, max_lit)?;
            (h.i + k + 1, lits[0])
        } else {
            let lits = parse_lits(line, 2, r.line, max_lit)?;
            if lits[0] < 2 || lits[0] & 1 == 1 {
                return Err(Error::MalformedBody {
                    line: r.line,
                    msg: format!("invalid latch literal {}", lits[0]),
                });
            }
            (lits[0] / 2, lits[1])
        };
        if vars.insert(v, aig.add_pi()).is_some() {
            return Err(Error::MalformedBody {
                line: r.line,
                msg: format!("variable {v} defined twice"),
            });
        }
        latch_next.push(next);
    }
    if h.l > 0 {
        log::warn!("{} latches converted to primary input/output pairs", h.l);
    }

    let mut outputs = Vec::with_capacity(h.o as usize);
    for _ in 0..h.o {
        let line = r.required_line("output")?;
        outputs.push(parse_lits(line, 1, r.line, max_lit)?[0]);
    }

    if h.binary {
        for k in 0..h.a {
            let lhs = 2 * (h.i + h.l + k + 1);
            let d0 = r.varint()?;
            let d1 = r.varint()?;
            if d0 == 0 || d0 > lhs {
                return Err(Error::FaninOrder {
                    lhs,
                    fanin: lhs.wrapping_sub(d0),
                });
            }
            let rhs0 = lhs - d0;
            if d1 > rhs0 {
                return Err(Error::MalformedBody {
                    line: r.line,
                    msg: format!("AND {lhs}: second fanin delta {d1} exceeds first fanin {rhs0}"),
                });
            }
            let rhs1 = rhs0 - d1;
            let a = vars[&(rhs0 >> 1)].xor(rhs0 & 1 == 1);
            let b = vars[&(rhs1 >> 1)].xor(rhs1 & 1 == 1);
            let l = aig.add_and_raw(a, b);
            vars.insert(lhs >> 1, l);
        }
    } else {
        let mut defs: FxHashMap<u32, (u32, u32)> = FxHashMap::default();
        let mut def_order = Vec::with_capacity(h.a as usize);
        for _ in 0..h.a {
            let line = r.required_line("AND gate")?;
            let lits = parse_lits(line, 3, r.line, max_lit)?;
            let (lhs, r0, r1) = (lits[0], lits[1], lits[2]);
            if lhs < 2 || lhs & 1 == 1 {
                return Err(Error::MalformedBody {
                    line: r.line,
                    msg: format!("invalid AND literal {lhs}"),
                });
            }
            if vars.contains_key(&(lhs >> 1)) || defs.insert(lhs >> 1, (r0, r1)).is_some() {
                return Err(Error::MalformedBody {
                    line: r.line,
                    msg: format!("variable {} defined twice", lhs >> 1),
                });
            }
            def_order.push(lhs >> 1);
        }
        for root in def_order {
            build_ascii(&mut aig, &mut vars, &defs, root)?;
        }
    }

    for (k, &o) in outputs.iter().chain(latch_next.iter()).enumerate() {
        let base = vars
            .get(&(o >> 1))
            .copied()
            .ok_or_else(|| Error::MalformedBody {
                line: 0,
                msg: format!("output {k} uses undefined literal {o}"),
            })?;
        aig.add_po(base.xor(o & 1 == 1));
    }

    // symbol table and comment
    let mut symbols = Vec::new();
    let mut comment = None;
    while let Some(line) = r.line() {
        if line == "c" {
            let rest = &bytes[r.pos.min(bytes.len())..];
            comment = Some(String::from_utf8_lossy(rest).into_owned());
            break;
        }
        let kind = line.chars().next();
        let is_symbol = matches!(kind, Some('i' | 'l' | 'o' | 'b' | 'c' | 'j' | 'f'))
            && line[1..].chars().next().is_some_and(|c| c.is_ascii_digit());
        if line.is_empty() {
            continue;
        }
        if !is_symbol {
            return Err(Error::MalformedBody {
                line: r.line,
                msg: format!("unexpected line `{line}`"),
            });
        }
        if let Some(rest) = line.strip_prefix('l') {
            // latch outputs are inputs now
            let (idx, name) = rest.split_once(' ').unwrap_or((rest, ""));
            if let Ok(i) = idx.parse::<u32>() {
                symbols.push(format!("i{} {name}", h.i + i));
                continue;
            }
        }
        symbols.push(line.to_string());
    }
    aig.set_symbols(symbols);
    aig.set_comment(comment);
    Ok(aig)
}

fn build_ascii(
    aig: &mut Aig,
    vars: &mut FxHashMap<u32, Lit>,
    defs: &FxHashMap<u32, (u32, u32)>,
    root: u32,
) -> Result<()> {
    if vars.contains_key(&root) {
        return Ok(());
    }
    // iterative post-order; `on_stack` detects cycles
    let mut on_stack = rustc_hash::FxHashSet::default();
    let mut stack = vec![(root, false)];
    while let Some((v, ready)) = stack.pop() {
        if vars.contains_key(&v) {
            continue;
        }
        let Some(&(r0, r1)) = defs.get(&v) else {
            return Err(Error::MalformedBody {
                line: 0,
                msg: format!("variable {v} is used but never defined"),
            });
        };
        if ready {
            let a = vars[&(r0 >> 1)].xor(r0 & 1 == 1);
            let b = vars[&(r1 >> 1)].xor(r1 & 1 == 1);
            let l = aig.add_and_raw(a, b);
            vars.insert(v, l);
            on_stack.remove(&v);
            continue;
        }
        if !on_stack.insert(v) {
            return Err(Error::MalformedBody {
                line: 0,
                msg: format!("combinational cycle through variable {v}"),
            });
        }
        stack.push((v, true));
        for f in [r1 >> 1, r0 >> 1] {
            if !vars.contains_key(&f) {
                if on_stack.contains(&f) {
                    return Err(Error::MalformedBody {
                        line: 0,
                        msg: format!("combinational cycle through variable {f}"),
                    });
                }
                stack.push((f, false));
            }
        }
    }
    Ok(())
}

/// Literal numbering of a compacted graph: node index `n` is variable `n`.
fn compacted(aig: &Aig) -> std::borrow::Cow<'_, Aig> {
    let ordered = aig.is_index_ordered()
        && aig.slot_count() == 1 + aig.num_pis() + aig.size()
        && aig
            .pis()
            .iter()
            .enumerate()
            .all(|(i, &p)| p as usize == i + 1);
    if ordered {
        std::borrow::Cow::Borrowed(aig)
    } else {
        std::borrow::Cow::Owned(aig.compact().0)
    }
}

fn write_trailer(out: &mut Vec<u8>, aig: &Aig) {
    for s in aig.symbols() {
        out.extend_from_slice(s.as_bytes());
        out.push(b'\n');
    }
    if let Some(c) = aig.comment() {
        out.extend_from_slice(b"c\n");
        out.extend_from_slice(c.as_bytes());
    }
}

pub fn write_ascii(aig: &Aig) -> Vec<u8> {
    let g = compacted(aig);
    let (i, a) = (g.num_pis(), g.size());
    let mut out = format!("aag {} {} 0 {} {}\n", i + a, i, g.num_pos(), a).into_bytes();
    for &p in g.pis() {
        out.extend_from_slice(format!("{}\n", 2 * p).as_bytes());
    }
    for p in g.pos() {
        out.extend_from_slice(format!("{}\n", p.raw()).as_bytes());
    }
    for n in (1 + i as u32)..g.slot_count() as u32 {
        let (x, y) = g.fanins(n).unwrap();
        out.extend_from_slice(format!("{} {} {}\n", 2 * n, y.raw(), x.raw()).as_bytes());
    }
    write_trailer(&mut out, &g);
    out
}

fn push_varint(out: &mut Vec<u8>, mut x: u32) {
    while x >= 0x80 {
        out.push((x as u8 & 0x7f) | 0x80);
        x >>= 7;
    }
    out.push(x as u8);
}

pub fn write_binary(aig: &Aig) -> Vec<u8> {
    let g = compacted(aig);
    let (i, a) = (g.num_pis(), g.size());
    let mut out = format!("aig {} {} 0 {} {}\n", i + a, i, g.num_pos(), a).into_bytes();
    for p in g.pos() {
        out.extend_from_slice(format!("{}\n", p.raw()).as_bytes());
    }
    for n in (1 + i as u32)..g.slot_count() as u32 {
        let (x, y) = g.fanins(n).unwrap();
        let lhs = 2 * n;
        push_varint(&mut out, lhs - y.raw());
        push_varint(&mut out, y.raw() - x.raw());
    }
    write_trailer(&mut out, &g);
    out
}

/// Reads an AIGER file; the format is taken from the magic bytes.
pub fn read_file(path: impl AsRef<Path>) -> Result<Aig> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let magic = bytes.get(..3).unwrap_or(&[]);
    if (ext == "aag" && magic == b"aig") || (ext == "aig" && magic == b"aag") {
        log::warn!("{}: extension does not match file contents", path.display());
    }
    let mut aig = parse(&bytes)?;
    if aig.name().is_empty() {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            aig.set_name(stem);
        }
    }
    Ok(aig)
}

/// Writes ASCII for a `.aag` extension and binary otherwise.
pub fn write_file(path: impl AsRef<Path>, aig: &Aig) -> Result<()> {
    let path = path.as_ref();
    let ascii = path.extension().and_then(|e| e.to_str()) == Some("aag");
    let bytes = if ascii {
        write_ascii(aig)
    } else {
        write_binary(aig)
    };
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
