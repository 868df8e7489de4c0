//! Sharded point-count census and the groupoid trace sum.
//!
//! The scan splits the equations into units (degree, c_deg, c_{deg−1}) and
//! walks the remaining coefficients as an odometer with c₀ innermost. For
//! every x in F_q ∪ F_{q²} ∪ F_{q³} it keeps g(x) = f(x) − c₀; bumping the
//! digit c_i by one adds x^i, which wraps correctly modulo p. The inner loop
//! then only sums χ(g(x) + c₀).
//!
//! Cache layout (all integers little-endian):
//!
//! ```text
//! "HE3C"  u8 version  u32 q
//! n × { u8 degree  u8 lc  i16 s1  i16 s2  i16 s3 }
//! u64 n
//! ```

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::curve::{is_squarefree, CurveEquation};
use super::field::{Elem, FiniteField};
use super::frobenius::{frobenius_trace, weil_polynomial, FrobeniusData};
use super::FfError;
use crate::characters::Partition;
use crate::Rational;

pub const CACHE_MAGIC: &[u8; 4] = b"HE3C";
pub const CACHE_VERSION: u8 = 1;

/// What the census keeps of one equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveRecord {
    pub degree: u8,
    pub lc: u8,
    pub s: [i64; 3],
}

/// Per-equation records over F_q in enumeration order, plus the spectrum
/// (distinct Frobenius data with multiplicities) they induce.
#[derive(Clone, Debug)]
pub struct Census {
    q: u64,
    records: Vec<CurveRecord>,
    spectrum: BTreeMap<[i64; 3], (FrobeniusData, u64)>,
}

/// One groupoid-weighted trace sum and its ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSum {
    pub q: u64,
    pub lambda: Partition,
    pub raw_sum: BigInt,
    pub divisor: u64,
    pub value: Rational,
}

/// (q² − 1)(q² − q) = #GL₂(F_q) · (q − 1) / (q − 1).
pub fn groupoid_divisor(q: u64) -> u64 {
    (q * q - 1) * (q * q - q)
}

fn check_q(q: u64) -> Result<u32, FfError> {
    match q {
        3 | 5 => Ok(q as u32),
        _ => Err(FfError::UnsupportedQ(q)),
    }
}

impl Census {
    fn from_records(q: u64, records: Vec<CurveRecord>) -> Result<Self, FfError> {
        let mut spectrum: BTreeMap<[i64; 3], (FrobeniusData, u64)> = BTreeMap::new();
        for r in &records {
            if let Some(entry) = spectrum.get_mut(&r.s) {
                entry.1 += 1;
            } else {
                let d = weil_polynomial(r.s[0], r.s[1], r.s[2], q)?;
                spectrum.insert(r.s, (d, 1));
            }
        }
        Ok(Self { q, records, spectrum })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn records(&self) -> &[CurveRecord] {
        &self.records
    }

    pub fn curve_count(&self) -> u64 {
        self.records.len() as u64
    }

    /// Distinct (s₁, s₂, s₃) with their Frobenius data and multiplicity.
    pub fn spectrum(&self) -> impl Iterator<Item = (&FrobeniusData, u64)> {
        self.spectrum.values().map(|(d, n)| (d, *n))
    }

    pub fn trace_sum(&self, lambda: &Partition) -> Result<TraceSum, FfError> {
        let mut raw_sum = BigInt::zero();
        for (d, n) in self.spectrum() {
            raw_sum += frobenius_trace(d, lambda)? * BigInt::from(n);
        }
        let divisor = groupoid_divisor(self.q);
        let value = Rational::new(raw_sum.clone(), BigInt::from(divisor));
        Ok(TraceSum { q: self.q, lambda: *lambda, raw_sum, divisor, value })
    }
}

/// Lookup tables shared by all shards of one scan.
struct ScanTables {
    p: u32,
    fields: [FiniteField; 3],
    /// Concatenated over the three fields: x^i for i = 0..=8.
    powers: Vec<[Elem; 9]>,
    offsets: [usize; 4],
    /// chi_shift[k][c][y] = χ(y + c) in the k-th field, c ∈ F_p.
    chi_shift: [Vec<Vec<i8>>; 3],
}

impl ScanTables {
    fn new(p: u32) -> Result<Self, FfError> {
        let fields = [
            FiniteField::standard(p, 1)?,
            FiniteField::standard(p, 2)?,
            FiniteField::standard(p, 3)?,
        ];
        let mut powers = Vec::new();
        let mut offsets = [0; 4];
        for (k, f) in fields.iter().enumerate() {
            for x in f.elements() {
                let mut row = [0 as Elem; 9];
                row[0] = 1;
                for i in 1..9 {
                    row[i] = f.mul(row[i - 1], x);
                }
                powers.push(row);
            }
            offsets[k + 1] = powers.len();
        }
        let chi_shift = fields.clone().map(|f| {
            (0..p)
                .map(|c| f.elements().map(|y| f.chi(f.add(y, c as Elem))).collect())
                .collect()
        });
        Ok(Self { p, fields, powers, offsets, chi_shift })
    }

    /// Records for one unit (degree, lc, top = c_{deg−1}).
    fn scan_unit(&self, degree: u8, lc: u8, top: u8) -> Result<Vec<CurveRecord>, FfError> {
        let p = self.p;
        let q = p as i64;
        let deg = degree as usize;
        let mut coeffs = [0u8; 9];
        coeffs[deg] = lc;
        coeffs[deg - 1] = top;
        let mut g: Vec<Elem> = vec![0; self.powers.len()];
        for (k, f) in self.fields.iter().enumerate() {
            for idx in self.offsets[k]..self.offsets[k + 1] {
                let row = &self.powers[idx];
                let mut acc = 0;
                for i in (1..=deg).rev() {
                    acc = f.add(acc, f.mul(coeffs[i] as Elem, row[i]));
                }
                g[idx] = acc;
            }
        }
        let infinity: [i64; 3] = std::array::from_fn(|k| {
            if deg == 7 {
                1
            } else {
                1 + self.fields[k].chi(lc as Elem) as i64
            }
        });
        let free = deg - 2; // digits c_1..c_{deg−2}
        let states = (p as u64).pow(free as u32);
        let mut out = Vec::with_capacity((states * p as u64) as usize);
        for state in 0..states {
            if state > 0 {
                // odometer step: c_1 += 1 with carries; each bump adds x^i
                let mut i = 1;
                loop {
                    for (k, f) in self.fields.iter().enumerate() {
                        for idx in self.offsets[k]..self.offsets[k + 1] {
                            g[idx] = f.add(g[idx], self.powers[idx][i]);
                        }
                    }
                    coeffs[i] = ((coeffs[i] as u32 + 1) % p) as u8;
                    if coeffs[i] != 0 {
                        break;
                    }
                    i += 1;
                }
            }
            for c0 in 0..p as u8 {
                coeffs[0] = c0;
                if !is_squarefree(p, &coeffs[..=deg]) {
                    continue;
                }
                let mut s = [0i64; 3];
                for k in 0..3 {
                    let chi = &self.chi_shift[k][c0 as usize];
                    let sum: i64 = g[self.offsets[k]..self.offsets[k + 1]].iter().map(|&y| chi[y as usize] as i64).sum();
                    let size = q.pow(k as u32 + 1);
                    let count = size + sum + infinity[k];
                    s[k] = size + 1 - count;
                }
                if let Err(e) = weil_polynomial(s[0], s[1], s[2], p as u64) {
                    let curve = CurveEquation::new(p, coeffs).map(|c| c.to_string()).unwrap_or_default();
                    return Err(FfError::Curve { curve, source: Box::new(e) });
                }
                out.push(CurveRecord { degree, lc, s });
            }
        }
        Ok(out)
    }
}

fn units(p: u32) -> Vec<(u8, u8, u8)> {
    let mut v = Vec::new();
    for degree in [7u8, 8] {
        for lc in 1..p as u8 {
            for top in 0..p as u8 {
                v.push((degree, lc, top));
            }
        }
    }
    v
}

/// Counts every squarefree equation of degree 7 or 8 over F_q, q ∈ {3, 5},
/// with `shards` worker threads. Records come back in the order of
/// [`enumerate_curves`](super::enumerate_curves) whatever the shard count.
pub fn scan(q: u64, shards: usize, progress: bool) -> Result<Census, FfError> {
    let p = check_q(q)?;
    let tables = ScanTables::new(p)?;
    let units = units(p);
    let shards = shards.clamp(1, units.len());
    let done = std::sync::atomic::AtomicUsize::new(0);
    let mut per_unit: Vec<Option<Result<Vec<CurveRecord>, FfError>>> = vec![None; units.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|shard| {
                let (tables, units, done) = (&tables, &units, &done);
                scope.spawn(move || {
                    let mut mine = Vec::new();
                    for (i, &(d, lc, top)) in units.iter().enumerate().skip(shard).step_by(shards) {
                        mine.push((i, tables.scan_unit(d, lc, top)));
                        let n = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
                        if progress {
                            eprintln!("q={q}: unit {n}/{} done", units.len());
                        }
                    }
                    mine
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("scan worker panicked") {
                per_unit[i] = Some(r);
            }
        }
    });
    let mut records = Vec::new();
    for r in per_unit {
        records.extend(r.expect("every unit scanned")?);
    }
    Census::from_records(q, records)
}

fn census_cache() -> &'static Mutex<HashMap<u64, Arc<Census>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Census>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The census for q, computed once per process.
pub fn shared_census(q: u64) -> Result<Arc<Census>, FfError> {
    check_q(q)?;
    let mut cache = census_cache().lock().expect("census cache poisoned");
    if let Some(c) = cache.get(&q) {
        return Ok(c.clone());
    }
    let shards = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let census = Arc::new(scan(q, shards, false)?);
    cache.insert(q, census.clone());
    Ok(census)
}

/// Σ_f Tr(F, V_λ(H¹)) / ((q² − 1)(q² − q)) over all squarefree f.
pub fn trace_sum(lambda: &Partition, q: u64) -> Result<Rational, FfError> {
    Ok(shared_census(q)?.trace_sum(lambda)?.value)
}

pub fn write_cache<W: Write>(census: &Census, mut w: W) -> std::io::Result<()> {
    w.write_all(CACHE_MAGIC)?;
    w.write_all(&[CACHE_VERSION])?;
    w.write_all(&(census.q as u32).to_le_bytes())?;
    let mut buf = Vec::with_capacity(census.records.len() * 8);
    for r in &census.records {
        buf.push(r.degree);
        buf.push(r.lc);
        for s in r.s {
            buf.extend_from_slice(&(s as i16).to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    w.write_all(&(census.records.len() as u64).to_le_bytes())?;
    w.flush()
}

/// Reads a cache written by [`write_cache`], rejecting wrong magic, version,
/// q, trailer or record contents.
pub fn read_cache<R: Read>(mut r: R, expected_q: u64) -> Result<Census, FfError> {
    let bad = |m: &str| FfError::Cache(m.to_string());
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes).map_err(|e| FfError::Cache(e.to_string()))?;
    if bytes.len() < 17 || &bytes[..4] != CACHE_MAGIC {
        return Err(bad("bad magic"));
    }
    if bytes[4] != CACHE_VERSION {
        return Err(FfError::Cache(format!("version {} (expected {CACHE_VERSION})", bytes[4])));
    }
    let q = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as u64;
    if q != expected_q {
        return Err(FfError::Cache(format!("cache is for q = {q}, requested q = {expected_q}")));
    }
    let p = check_q(q)?;
    let body = &bytes[9..bytes.len() - 8];
    let n = u64::from_le_bytes(bytes[bytes.len() - 8..].try_into().unwrap());
    if body.len() % 8 != 0 || (body.len() / 8) as u64 != n {
        return Err(FfError::Cache(format!("trailer says {n} records, body holds {} bytes", body.len())));
    }
    let records = body
        .chunks_exact(8)
        .map(|c| {
            let s = |i: usize| i16::from_le_bytes([c[i], c[i + 1]]) as i64;
            let rec = CurveRecord { degree: c[0], lc: c[1], s: [s(2), s(4), s(6)] };
            if !(rec.degree == 7 || rec.degree == 8) || rec.lc == 0 || rec.lc as u32 >= p {
                return Err(bad("malformed record"));
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Census::from_records(q, records)
}
