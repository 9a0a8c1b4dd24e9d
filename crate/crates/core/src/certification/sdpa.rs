//! SDPA sparse (`.dat-s`) export of the parallel zero-error primal SDP.
//!
//! The instance is written in SDPA's "dual" form, maximize `F₀•Y` subject to
//! `Fᵢ•Y = cᵢ`, `Y ⪰ 0`, with `Y = blockdiag(T_1, …, T_N, T_?, σ)`. Each complex
//! Hermitian block `X = A + iB` enters through its real embedding
//! `[[A, −B], [B, A]]`; every functional is written as `½ Hᴿ • Xᴿ = tr(H X)`
//! for a Hermitian `H`, so a solver may search unstructured real blocks.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::certification::formula::{rational_string, rational_to_f64, success_probability_formula};
use crate::certification::testers::Hypotheses;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Upper-triangle entries `(i, j, value)` of one block of one constraint, 0-based.
type BlockEntries = Vec<(usize, usize, f64)>;

/// `½ Hᴿ` for a Hermitian `h`, upper triangle only.
fn embed_functional(h: &ComplexMatrix<f64>, scale: f64) -> BlockEntries {
    let n = h.rows();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let z = h[(a, b)] * scale;
            if b >= a && z.re != 0.0 {
                out.push((a, b, 0.5 * z.re));
                out.push((n + a, n + b, 0.5 * z.re));
            }
            if z.im != 0.0 {
                out.push((a, n + b, -0.5 * z.im));
            }
        }
    }
    out
}

/// Functional extracting `Re X_ab` (`a ≤ b`) from the embedding of an `n×n` block.
fn re_entry(a: usize, b: usize, n: usize, sign: f64) -> BlockEntries {
    let (a, b) = (a.min(b), a.max(b));
    let w = if a == b { 0.5 } else { 0.25 };
    vec![(a, b, sign * w), (n + a, n + b, sign * w)]
}

/// Functional extracting `Im X_ab` (`a ≠ b`).
fn im_entry(a: usize, b: usize, n: usize, sign: f64) -> BlockEntries {
    vec![(a, n + b, -0.25 * sign), (b, n + a, 0.25 * sign)]
}

/// Summary of a written instance.
#[derive(Clone, Debug, Serialize)]
pub struct ExportSummary {
    pub path: PathBuf,
    pub constraints: usize,
    pub block_sizes: Vec<usize>,
    pub expected_optimum: String,
    pub expected_optimum_value: f64,
}

/// Writes the parallel primal SDP for `(n, k, d)` to `path`.
///
/// The file is written to a sibling temporary and renamed into place, so a
/// failed export never leaves a partial file at `path`.
pub fn export_sdp(n: usize, k: usize, d: usize, path: &Path) -> Result<ExportSummary> {
    let h = Hypotheses::<f64>::build(n, k, d)?;
    let layout = *h.layout();
    let dim = layout.check_dense()?;
    let in_dim = d.pow(n as u32);
    let count = h.elements().len();
    let expected = success_probability_formula(k, d)?;
    let sigma_block = count + 1;

    // constraint 0 is the objective
    let mut constraints: Vec<(f64, Vec<(usize, BlockEntries)>)> = Vec::new();
    let objective: Vec<(usize, BlockEntries)> = h
        .elements()
        .iter()
        .enumerate()
        .map(|(i, (_, f))| (i, embed_functional(&f.matrix().transpose(), 1.0 / count as f64)))
        .collect();

    // zero-error: tr(T_rᵀ F_s) = tr(T_r F_sᵀ) = 0 for r ≠ s
    for (i, _) in h.elements().iter().enumerate() {
        for (j, (_, fs)) in h.elements().iter().enumerate() {
            if i != j {
                constraints.push((0.0, vec![(i, embed_functional(&fs.matrix().transpose(), 1.0))]));
            }
        }
    }

    // completeness: Σ T_r + T_? − 1_out ⊗ σ_in = 0, entry by entry
    let d_usize = d;
    let split = |x: usize| -> (usize, usize) {
        let (mut input, mut output) = (0usize, 0usize);
        for dev in 0..n {
            let pair = (x / (d_usize * d_usize).pow((n - 1 - dev) as u32)) % (d_usize * d_usize);
            input = input * d_usize + pair / d_usize;
            output = output * d_usize + pair % d_usize;
        }
        (input, output)
    };
    for a in 0..dim {
        let (ia, oa) = split(a);
        for b in a..dim {
            let (ib, ob) = split(b);
            for imaginary in [false, true] {
                if imaginary && a == b {
                    continue;
                }
                let entries = if imaginary { im_entry(a, b, dim, 1.0) } else { re_entry(a, b, dim, 1.0) };
                let mut blocks: Vec<(usize, BlockEntries)> = (0..=count).map(|blk| (blk, entries.clone())).collect();
                if oa == ob {
                    let sig = if imaginary {
                        if ia == ib {
                            None
                        } else {
                            Some(im_entry(ia, ib, in_dim, -1.0))
                        }
                    } else {
                        Some(re_entry(ia, ib, in_dim, -1.0))
                    };
                    if let Some(sig) = sig {
                        blocks.push((sigma_block, sig));
                    }
                }
                constraints.push((0.0, blocks));
            }
        }
    }

    // normalization: tr σ = 1
    let trace: BlockEntries = (0..in_dim).flat_map(|a| re_entry(a, a, in_dim, 1.0)).collect();
    constraints.push((1.0, vec![(sigma_block, trace)]));

    let mut block_sizes = vec![2 * dim; count + 1];
    block_sizes.push(2 * in_dim);

    let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{} is not a file path", path.display())))?
        .to_string_lossy()
        .into_owned();
    let tmp = parent.join(format!(".{file_name}.partial"));
    let write = || -> Result<()> {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        let names: Vec<String> = h.elements().iter().map(|(r, _)| r.to_string()).collect();
        writeln!(w, "* anomalyid parallel zero-error tester SDP: n={n} k={k} d={d}")?;
        writeln!(w, "* patterns (lexicographic on members): {}", names.join(" "))?;
        writeln!(
            w,
            "* blocks: 1..{count} = T_r in pattern order, {} = T_?, {} = sigma (inputs); each complex block X enters as [[Re X, -Im X], [Im X, Re X]]",
            count + 1,
            count + 2
        )?;
        writeln!(w, "* layout: device-major (in_1, out_1, ..., in_n, out_n); |1>> = sum_i |i>|i>")?;
        writeln!(w, "* objective: maximize (1/N) sum_r tr(T_r^T F_r) = F0 . Y")?;
        writeln!(w, "* expected optimum: {} = {:.15}", rational_string(&expected), rational_to_f64(&expected))?;
        writeln!(w, "{}", constraints.len())?;
        writeln!(w, "{}", block_sizes.len())?;
        writeln!(w, "{}", block_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "))?;
        writeln!(w, "{}", constraints.iter().map(|(c, _)| format_value(*c)).collect::<Vec<_>>().join(" "))?;
        let mut emit = |idx: usize, blocks: &[(usize, BlockEntries)]| -> Result<()> {
            for (blk, entries) in blocks {
                for &(i, j, v) in entries {
                    if v != 0.0 {
                        writeln!(w, "{idx} {} {} {} {}", blk + 1, i + 1, j + 1, format_value(v))?;
                    }
                }
            }
            Ok(())
        };
        emit(0, &objective)?;
        for (idx, (_, blocks)) in constraints.iter().enumerate() {
            emit(idx + 1, blocks)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))?.sync_all()?;
        Ok(())
    };
    if let Err(e) = write() {
        let _ = fs::remove_file(&tmp);
        return Err(e);
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(ExportSummary {
        path: path.to_path_buf(),
        constraints: constraints.len(),
        block_sizes,
        expected_optimum: rational_string(&expected),
        expected_optimum_value: rational_to_f64(&expected),
    })
}

/// 17 significant digits.
fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// A parsed `.dat-s` instance.
#[derive(Clone, Debug)]
pub struct SdpaInstance {
    pub block_sizes: Vec<usize>,
    pub c: Vec<f64>,
    /// `(constraint, block, i, j, value)`, all 0-based; constraint 0 is `F₀`.
    pub entries: Vec<(usize, usize, usize, usize, f64)>,
    pub comments: Vec<String>,
}

impl SdpaInstance {
    pub fn read(path: &Path) -> Result<Self> {
        let reader = BufReader::new(fs::File::open(path)?);
        let mut comments = Vec::new();
        let mut header: Vec<String> = Vec::new();
        let mut entries = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if t.starts_with('*') || t.starts_with('"') {
                comments.push(t.to_string());
                continue;
            }
            if header.len() < 4 {
                header.push(t.to_string());
                continue;
            }
            let f: Vec<&str> = t.split_whitespace().collect();
            let parse_err = || Error::Io(format!("malformed SDPA entry line: {t}"));
            if f.len() != 5 {
                return Err(parse_err());
            }
            let idx = |s: &str| s.parse::<usize>().map_err(|_| parse_err());
            let (con, blk, i, j) = (idx(f[0])?, idx(f[1])?, idx(f[2])?, idx(f[3])?);
            if blk == 0 || i == 0 || j == 0 {
                return Err(parse_err());
            }
            let v = f[4].parse::<f64>().map_err(|_| parse_err())?;
            entries.push((con, blk - 1, i - 1, j - 1, v));
        }
        if header.len() < 4 {
            return Err(Error::Io("truncated SDPA header".into()));
        }
        let m: usize = header[0].parse().map_err(|_| Error::Io("bad constraint count".into()))?;
        let nb: usize = header[1].parse().map_err(|_| Error::Io("bad block count".into()))?;
        let clean = |s: &str| s.replace([',', '{', '}', '(', ')'], " ");
        let block_sizes: Vec<usize> = clean(&header[2])
            .split_whitespace()
            .map(|x| x.parse::<i64>().map(|v| v.unsigned_abs() as usize))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Io("bad block structure".into()))?;
        let c: Vec<f64> = clean(&header[3])
            .split_whitespace()
            .map(|x| x.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Io("bad objective vector".into()))?;
        if block_sizes.len() != nb || c.len() != m {
            return Err(Error::Io("SDPA header sizes disagree".into()));
        }
        Ok(Self { block_sizes, c, entries, comments })
    }

    pub fn constraints(&self) -> usize {
        self.c.len()
    }

    /// `Fᵢ • Y` for `i = 0..=m`, given dense row-major real blocks.
    pub fn evaluate(&self, blocks: &[Vec<f64>]) -> Result<Vec<f64>> {
        if blocks.len() != self.block_sizes.len()
            || blocks.iter().zip(&self.block_sizes).any(|(b, &s)| b.len() != s * s)
        {
            return Err(Error::Shape("block values do not match the block structure".into()));
        }
        let mut out = vec![0.0; self.constraints() + 1];
        for &(con, blk, i, j, v) in &self.entries {
            let s = self.block_sizes[blk];
            let y = &blocks[blk];
            out[con] += if i == j { v * y[i * s + i] } else { v * (y[i * s + j] + y[j * s + i]) };
        }
        Ok(out)
    }
}

/// Row-major real embedding `[[Re X, −Im X], [Im X, Re X]]`.
pub fn real_embedding(x: &ComplexMatrix<f64>) -> Vec<f64> {
    let n = x.rows();
    let mut out = vec![0.0; 4 * n * n];
    for a in 0..n {
        for b in 0..n {
            let z = x[(a, b)];
            out[a * 2 * n + b] = z.re;
            out[a * 2 * n + n + b] = -z.im;
            out[(n + a) * 2 * n + b] = z.im;
            out[(n + a) * 2 * n + n + b] = z.re;
        }
    }
    out
}
