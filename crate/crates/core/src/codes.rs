//! Defining-set linear codes: membership scans, generator matrices, exact
//! weight distributions, self-orthogonality, and small dual distances.
//!
//! The code attached to a function F and a value subset I has one coordinate
//! per point of `D = {x : F(x) in I}`; codewords are the trace functionals
//! `x -> sum_j Tr_t^{n_j}(alpha_j x_j) + beta`. Weights are enumerated with a
//! per-functional histogram of trace values over D, so the total cost is
//! `p^n * |D|` subfield-trace evaluations rather than `q^{k} * |D|`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{Field, GaloisError, Space};
use crate::spectral::{Codomain, VecFn};

#[derive(Debug, Error)]
pub enum CodesError {
    #[error("the value subset is empty")]
    EmptySubset,
    #[error("the value subset is the whole codomain")]
    FullSubset,
    #[error("subset spec needs a field codomain with odd characteristic")]
    BadSubsetForCodomain,
    #[error("coset parameter b = {0} does not divide the group order {1}")]
    BadCosetOrder(u64, u64),
    #[error("duplicate or out-of-range element in explicit subset")]
    BadExplicitSubset,
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

/// Which subset of the codomain defines the code's coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubsetSpec {
    /// `{0}`.
    Zero,
    /// A single element, by codomain code.
    Single(u32),
    /// The nonzero squares.
    Squares,
    /// The nonzero non-squares.
    NonSquares,
    /// The coset `gamma * H_b` of the subgroup of b-th powers.
    Coset { gamma: u32, b: u64 },
    /// An explicit duplicate-free list of codomain codes.
    Explicit(Vec<u32>),
}

impl SubsetSpec {
    /// Materializes the subset as a sorted list of codomain codes.
    pub fn materialize(&self, codomain: &Codomain) -> Result<Vec<u32>, CodesError> {
        let size = codomain.size();
        let field = match codomain {
            Codomain::Field(f) => Some(f),
            Codomain::Vector { .. } => None,
        };
        let mut out: Vec<u32> = match self {
            SubsetSpec::Zero => vec![0],
            SubsetSpec::Single(a) => {
                if u64::from(*a) >= size {
                    return Err(CodesError::BadExplicitSubset);
                }
                vec![*a]
            }
            SubsetSpec::Squares | SubsetSpec::NonSquares => {
                let f = field.ok_or(CodesError::BadSubsetForCodomain)?;
                if f.p() == 2 {
                    return Err(CodesError::BadSubsetForCodomain);
                }
                let want = if matches!(self, SubsetSpec::Squares) {
                    1
                } else {
                    -1
                };
                (1..size as u32)
                    .filter(|&c| f.eta(c).unwrap() == want)
                    .collect()
            }
            SubsetSpec::Coset { gamma, b } => {
                let f = field.ok_or(CodesError::BadSubsetForCodomain)?;
                let q1 = f.order() - 1;
                if *b == 0 || q1 % b != 0 {
                    return Err(CodesError::BadCosetOrder(*b, q1));
                }
                if *gamma == 0 || u64::from(*gamma) >= size {
                    return Err(CodesError::BadExplicitSubset);
                }
                let g = f.primitive();
                let step = f.pow(g, *b);
                let mut set = Vec::with_capacity((q1 / b) as usize);
                let mut h = 1u32;
                for _ in 0..q1 / b {
                    set.push(f.mul(*gamma, h));
                    h = f.mul(h, step);
                }
                set
            }
            SubsetSpec::Explicit(v) => {
                if v.iter().any(|&c| u64::from(c) >= size) {
                    return Err(CodesError::BadExplicitSubset);
                }
                v.clone()
            }
        };
        out.sort_unstable();
        out.dedup();
        if matches!(self, SubsetSpec::Explicit(v) if v.len() != out.len()) {
            return Err(CodesError::BadExplicitSubset);
        }
        if out.is_empty() {
            return Err(CodesError::EmptySubset);
        }
        if out.len() as u64 >= size {
            return Err(CodesError::FullSubset);
        }
        Ok(out)
    }
}

/// The points of `D_{F,I}` in canonical order, stored column-major per part.
pub struct DefiningSet {
    pub space: Arc<Space>,
    pub subset: Vec<u32>,
    pub points: Vec<u64>,
    /// `part_cols[j][i]` = part-j code of the i-th point.
    pub part_cols: Vec<Vec<u32>>,
}

impl DefiningSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.points.first() == Some(&0)
    }
}

/// Exact membership scan in canonical order.
pub fn defining_set(f: &VecFn, subset: &SubsetSpec) -> Result<DefiningSet, CodesError> {
    let members = subset.materialize(&f.codomain)?;
    let mut in_set = vec![false; f.codomain.size() as usize];
    for &c in &members {
        in_set[c as usize] = true;
    }
    let sp = Arc::clone(&f.space);
    let s = sp.parts().len();
    let mut points = Vec::new();
    let mut part_cols = vec![Vec::new(); s];
    let mut codes = vec![0u32; s];
    for x in 0..sp.size() {
        if in_set[f.values[x as usize] as usize] {
            points.push(x);
            sp.decode(x, &mut codes);
            for j in 0..s {
                part_cols[j].push(codes[j]);
            }
        }
    }
    Ok(DefiningSet {
        space: sp,
        subset: members,
        points,
        part_cols,
    })
}

/// A q-ary linear code via a generator matrix with labeled columns.
pub struct LinearCode {
    pub field: Arc<Field>,
    pub length: usize,
    /// Number of generator rows (before rank reduction).
    pub rows: usize,
    /// Rank of the generator matrix over `F_q`.
    pub dimension: usize,
    /// Row-major generator, entries are `F_q` codes.
    pub gen: Vec<Vec<u8>>,
    /// Defining-set point labels (empty for derived codes).
    pub labels: Vec<u64>,
}

impl LinearCode {
    pub fn q(&self) -> u64 {
        self.field.order()
    }
}

/// Exact weight distribution: sorted (weight, multiplicity) pairs including
/// weight 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDist {
    pub pairs: Vec<(u64, u64)>,
}

impl WeightDist {
    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> WeightDist {
        let mut map: HashMap<u64, u64> = HashMap::new();
        for (w, c) in counts {
            if c > 0 {
                *map.entry(w).or_insert(0) += c;
            }
        }
        let mut pairs: Vec<(u64, u64)> = map.into_iter().collect();
        pairs.sort_unstable();
        WeightDist { pairs }
    }

    pub fn total(&self) -> u64 {
        self.pairs.iter().map(|&(_, c)| c).sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.pairs.iter().find(|&&(w, _)| w > 0).map(|&(w, _)| w)
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.pairs.last().map(|&(w, _)| w)
    }

    pub fn nonzero_weight_count(&self) -> usize {
        self.pairs.iter().filter(|&&(w, _)| w > 0).count()
    }

    /// Compact `1 + A_1 z^{w_1} + ...` rendering.
    pub fn enumerator_string(&self) -> String {
        let mut parts = Vec::new();
        for &(w, c) in &self.pairs {
            if w == 0 {
                parts.push("1".to_string());
            } else {
                parts.push(format!("{c}z^{w}"));
            }
        }
        parts.join(" + ")
    }
}

/// Precomputed per-part trace functional tables: for part j,
/// `tr[j][y] = Tr_t^{n_j}(y)` as an `F_q` code.
fn trace_tables(sp: &Arc<Space>) -> Result<Vec<Vec<u8>>, CodesError> {
    let mut out = Vec::with_capacity(sp.parts().len());
    for tower in sp.towers() {
        let sup = tower.sup();
        let mut tab = Vec::with_capacity(sup.order() as usize);
        for y in 0..sup.order() as u32 {
            tab.push(tower.trace(y)? as u8);
        }
        out.push(tab);
    }
    Ok(out)
}

/// Generator matrix: for each part j a block of rows `Tr_t^{n_j}(g^r x_j)`
/// over the polynomial basis `1, g, g^2, ...` of the part over `F_q`, plus
/// the all-one row; rank computed by elimination over `F_q`.
pub fn build_code(ds: &DefiningSet) -> Result<LinearCode, CodesError> {
    let sp = &ds.space;
    let fq = Arc::clone(sp.base_field());
    let e = ds.len();
    let tr = trace_tables(sp)?;
    let mut gen: Vec<Vec<u8>> = Vec::new();
    for (j, part) in sp.parts().iter().enumerate() {
        let reldeg = part.degree() / sp.base_degree();
        let g = part.primitive();
        let mut basis_el = 1u32;
        for _ in 0..reldeg {
            let mut row = Vec::with_capacity(e);
            for i in 0..e {
                row.push(tr[j][part.mul(basis_el, ds.part_cols[j][i]) as usize]);
            }
            gen.push(row);
            basis_el = part.mul(basis_el, g);
        }
    }
    gen.push(vec![1u8; e]);
    let rows = gen.len();
    let dimension = rank(&fq, &gen);
    Ok(LinearCode {
        field: fq,
        length: e,
        rows,
        dimension,
        gen,
        labels: ds.points.clone(),
    })
}

fn rank(f: &Arc<Field>, rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut rank = 0usize;
    let mut col = 0usize;
    while rank < nrows && col < ncols {
        let Some(pivot) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        let inv = f.inv(u32::from(m[rank][col])) as u8;
        for c in col..ncols {
            m[rank][c] = f.mul(u32::from(inv), u32::from(m[rank][c])) as u8;
        }
        for r in 0..nrows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..ncols {
                    let sub = f.mul(u32::from(factor), u32::from(m[rank][c]));
                    m[r][c] = f.sub(u32::from(m[r][c]), sub) as u8;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Exact weight distribution by per-functional trace-value histograms,
/// parallel over the functional index. Every (alpha, beta) pair contributes
/// one codeword; when the generator has full rank this is the code's weight
/// distribution, otherwise each codeword is counted `q^{rows-rank}` times
/// and the histogram is renormalized.
pub fn weight_distribution(ds: &DefiningSet, code: &LinearCode) -> WeightDist {
    let sp = &ds.space;
    let q = sp.base_field().order();
    let e = ds.len();
    let s = sp.parts().len();
    let tr = trace_tables(sp).expect("towers already built");

    // F_q negation and addition tables (q is small).
    let fq = sp.base_field();
    let qs = q as usize;
    let mut add_tab = vec![0u8; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            add_tab[a * qs + b] = fq.add(a as u32, b as u32) as u8;
        }
    }
    let neg_tab: Vec<u8> = (0..qs).map(|b| fq.neg(b as u32) as u8).collect();

    let size = sp.size();
    let chunk = 1u64 << 12;
    let nchunks = size.div_ceil(chunk);
    let whist: Vec<u64> = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(size);
            let mut local = vec![0u64; e + 1];
            let mut acodes = vec![0u32; s];
            let mut hist = vec![0u64; qs];
            for alpha in lo..hi {
                sp.decode(alpha, &mut acodes);
                hist.iter_mut().for_each(|h| *h = 0);
                // Histogram of the trace functional over D.
                let active: Vec<usize> = (0..s).filter(|&j| acodes[j] != 0).collect();
                match active.len() {
                    0 => hist[0] = e as u64,
                    1 => {
                        let j = active[0];
                        let part = &sp.parts()[j];
                        let aj = acodes[j];
                        let col = &ds.part_cols[j];
                        let trj = &tr[j];
                        for &xj in col {
                            hist[trj[part.mul(aj, xj) as usize] as usize] += 1;
                        }
                    }
                    _ => {
                        for i in 0..e {
                            let mut v = 0u8;
                            for &j in &active {
                                let part = &sp.parts()[j];
                                let prod = part.mul(acodes[j], ds.part_cols[j][i]);
                                v = add_tab[v as usize * qs + tr[j][prod as usize] as usize];
                            }
                            hist[v as usize] += 1;
                        }
                    }
                }
                for beta in 0..qs {
                    let wt = e as u64 - hist[neg_tab[beta] as usize];
                    local[wt as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; e + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    // Each codeword appears q^{rows - rank} times in the (alpha, beta) scan.
    let overcount = q.pow((code.rows - code.dimension) as u32);
    WeightDist::from_counts(
        whist
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(w, c)| (w as u64, c / overcount)),
    )
}

/// True iff the generator Gram matrix `G G^T` vanishes over `F_q`.
pub fn is_self_orthogonal(code: &LinearCode) -> bool {
    let f = &code.field;
    let k = code.gen.len();
    for r in 0..k {
        for c in r..k {
            let mut acc = 0u32;
            for i in 0..code.length {
                acc = f.add(
                    acc,
                    f.mul(u32::from(code.gen[r][i]), u32::from(code.gen[c][i])),
                );
            }
            if acc != 0 {
                return false;
            }
        }
    }
    true
}

/// Result of the bounded dual-distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualDistance {
    Exact(u32),
    AtLeast(u32),
}

impl DualDistance {
    pub fn lower_bound(&self) -> u32 {
        match *self {
            DualDistance::Exact(d) => d,
            DualDistance::AtLeast(d) => d,
        }
    }
}

/// Packs a column into a u64 key (entries are < 32, at most 12 rows).
fn pack_column(col: &[u8]) -> u64 {
    let mut acc = 0u64;
    for &v in col {
        acc = (acc << 5) | u64::from(v);
    }
    acc
}

/// Scales a column so its first nonzero entry is 1; `None` for the zero
/// column.
fn normalize_column(f: &Arc<Field>, col: &[u8]) -> Option<Vec<u8>> {
    let lead = col.iter().position(|&v| v != 0)?;
    let inv = f.inv(u32::from(col[lead]));
    Some(
        col.iter()
            .map(|&v| f.mul(inv, u32::from(v)) as u8)
            .collect(),
    )
}

/// Minimum dual distance, exactly if it is at most `cap` (cap in 2..=4),
/// otherwise `AtLeast(cap + 1)`. Searches for the smallest number of
/// linearly dependent generator columns.
pub fn dual_distance_upto(code: &LinearCode, cap: u32) -> DualDistance {
    assert!((2..=4).contains(&cap), "cap must be 2, 3 or 4");
    let f = &code.field;
    let k = code.gen.len();
    let e = code.length;
    let columns: Vec<Vec<u8>> = (0..e)
        .map(|i| (0..k).map(|r| code.gen[r][i]).collect())
        .collect();

    // d = 1: a zero column.
    if columns.iter().any(|c| c.iter().all(|&v| v == 0)) {
        return DualDistance::Exact(1);
    }

    // d = 2: two proportional columns.
    let normalized: Vec<Vec<u8>> = columns
        .iter()
        .map(|c| normalize_column(f, c).expect("no zero column"))
        .collect();
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut dup = false;
    for c in &normalized {
        let key = pack_column(c);
        if let Some(n) = seen.get_mut(&key) {
            *n += 1;
            dup = true;
        } else {
            seen.insert(key, 1);
        }
    }
    if dup {
        return DualDistance::Exact(2);
    }
    if cap == 2 {
        return DualDistance::AtLeast(3);
    }

    // d = 3: some column is a 2-term combination of others. Any dependency
    // a c_i + b c_j = mu c_k can be scaled so b = 1, so scanning pairs with
    // one free scalar covers all of them.
    let q = f.order() as u32;
    let mut tmp = vec![0u8; k];
    for i in 0..e {
        for j in (i + 1)..e {
            for a in 1..q {
                for r in 0..k {
                    tmp[r] =
                        f.add(f.mul(a, u32::from(columns[i][r])), u32::from(columns[j][r])) as u8;
                }
                if let Some(norm) = normalize_column(f, &tmp) {
                    if seen.contains_key(&pack_column(&norm)) {
                        return DualDistance::Exact(3);
                    }
                }
            }
        }
    }
    if cap == 3 {
        return DualDistance::AtLeast(4);
    }

    // d = 4: a c_i + b c_j + c_k = mu c_l over triples.
    for i in 0..e {
        for j in (i + 1)..e {
            for l in (j + 1)..e {
                for a in 1..q {
                    for b in 1..q {
                        for r in 0..k {
                            let s1 = f.mul(a, u32::from(columns[i][r]));
                            let s2 = f.mul(b, u32::from(columns[j][r]));
                            tmp[r] = f.add(f.add(s1, s2), u32::from(columns[l][r])) as u8;
                        }
                        if let Some(norm) = normalize_column(f, &tmp) {
                            if seen.contains_key(&pack_column(&norm)) {
                                return DualDistance::Exact(4);
                            }
                        }
                    }
                }
            }
        }
    }
    DualDistance::AtLeast(5)
}

/// Direct count of `{x in D : sum_j Tr(alpha_j x_j) + beta = 0}`, the
/// reference for the closed-form codeword counts.
pub fn direct_zero_count(ds: &DefiningSet, alpha: u64, beta: u8) -> u64 {
    let sp = &ds.space;
    let s = sp.parts().len();
    let tr = trace_tables(sp).expect("towers already built");
    let fq = sp.base_field();
    let mut acodes = vec![0u32; s];
    sp.decode(alpha, &mut acodes);
    let mut count = 0u64;
    for i in 0..ds.len() {
        let mut v = 0u32;
        for j in 0..s {
            let prod = sp.parts()[j].mul(acodes[j], ds.part_cols[j][i]);
            v = fq.add(v, u32::from(tr[j][prod as usize]));
        }
        if fq.add(v, u32::from(beta)) == 0 {
            count += 1;
        }
    }
    count
}

/// Row span membership up to scalar: used by tests for cross-checks.
pub fn gram_matrix(code: &LinearCode) -> Vec<Vec<u8>> {
    let f = &code.field;
    let k = code.gen.len();
    let mut g = vec![vec![0u8; k]; k];
    for r in 0..k {
        for c in 0..k {
            let mut acc = 0u32;
            for i in 0..code.length {
                acc = f.add(
                    acc,
                    f.mul(u32::from(code.gen[r][i]), u32::from(code.gen[c][i])),
                );
            }
            g[r][c] = acc as u8;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, preset};

    #[test]
    fn subset_guards() {
        let f9 = Field::new(3, 2, None).unwrap();
        let cod = Codomain::Field(f9);
        assert!(matches!(
            SubsetSpec::Explicit(vec![]).materialize(&cod),
            Err(CodesError::EmptySubset)
        ));
        assert!(matches!(
            SubsetSpec::Explicit((0..9).collect()).materialize(&cod),
            Err(CodesError::FullSubset)
        ));
        assert!(matches!(
            SubsetSpec::Explicit(vec![1, 1]).materialize(&cod),
            Err(CodesError::BadExplicitSubset)
        ));
        let squares = SubsetSpec::Squares.materialize(&cod).unwrap();
        assert_eq!(squares.len(), 4);
        let h2 = SubsetSpec::Coset { gamma: 1, b: 2 }
            .materialize(&cod)
            .unwrap();
        assert_eq!(squares, h2);
    }

    #[test]
    fn example4_code_parameters() {
        let (f, _) = build(&preset("example4").unwrap().spec).unwrap();
        let ds = defining_set(&f, &SubsetSpec::Zero).unwrap();
        assert_eq!(ds.len(), 81);
        let code = build_code(&ds).unwrap();
        assert_eq!(code.length, 81);
        assert_eq!(code.dimension, 7);
        assert!(is_self_orthogonal(&code));
        let wd = weight_distribution(&ds, &code);
        assert_eq!(
            wd.pairs,
            vec![
                (0, 1),
                (48, 360),
                (51, 576),
                (54, 240),
                (57, 720),
                (60, 288),
                (81, 2)
            ]
        );
        assert_eq!(dual_distance_upto(&code, 3), DualDistance::Exact(3));
    }

    #[test]
    fn example5_code_parameters() {
        let (f, _) = build(&preset("example5").unwrap().spec).unwrap();
        let f9 = match &f.codomain {
            Codomain::Field(fd) => Arc::clone(fd),
            _ => panic!(),
        };
        let w = f9.primitive();
        let ds = defining_set(&f, &SubsetSpec::Single(w)).unwrap();
        assert_eq!(ds.len(), 72);
        let code = build_code(&ds).unwrap();
        assert_eq!(code.dimension, 4);
        assert!(is_self_orthogonal(&code));
        let wd = weight_distribution(&ds, &code);
        assert_eq!(
            wd.pairs,
            vec![
                (0, 1),
                (62, 2016),
                (63, 640),
                (64, 3240),
                (71, 576),
                (72, 88)
            ]
        );
        // Optimal dual: [72, 68, 4].
        assert_eq!(dual_distance_upto(&code, 4), DualDistance::Exact(4));
    }

    #[test]
    fn duplicated_column_gives_dual_distance_two() {
        let f = Field::new(3, 1, None).unwrap();
        let code = LinearCode {
            field: Arc::clone(&f),
            length: 3,
            rows: 2,
            dimension: 2,
            gen: vec![vec![1, 2, 1], vec![0, 1, 0]],
            labels: vec![],
        };
        assert_eq!(dual_distance_upto(&code, 3), DualDistance::Exact(2));
    }

    #[test]
    fn single_row_not_self_orthogonal() {
        let f = Field::new(3, 1, None).unwrap();
        let code = LinearCode {
            field: Arc::clone(&f),
            length: 3,
            rows: 1,
            dimension: 1,
            gen: vec![vec![1, 0, 0]],
            labels: vec![],
        };
        assert!(!is_self_orthogonal(&code));
    }

    /// For odd q, a zero Gram matrix is equivalent to every codeword having
    /// zero self-product; sample codewords both ways.
    #[test]
    fn gram_zero_matches_codeword_self_products() {
        let (f, _) = build(&preset("example4").unwrap().spec).unwrap();
        let ds = defining_set(&f, &SubsetSpec::Zero).unwrap();
        let code = build_code(&ds).unwrap();
        assert!(is_self_orthogonal(&code));
        let fq = &code.field;
        let k = code.gen.len();
        let mut state = 0x12345u64;
        for _ in 0..200 {
            // Random combination of generator rows.
            let mut word = vec![0u32; code.length];
            for r in 0..k {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                let coef = (state >> 33) % fq.order();
                for (i, w) in word.iter_mut().enumerate() {
                    *w = fq.add(*w, fq.mul(coef as u32, u32::from(code.gen[r][i])));
                }
            }
            let mut dot = 0u32;
            for &w in &word {
                dot = fq.add(dot, fq.mul(w, w));
            }
            assert_eq!(dot, 0);
        }
        // Negative control: a code with a nonzero self-product row.
        let bad = LinearCode {
            field: Arc::clone(fq),
            length: 2,
            rows: 1,
            dimension: 1,
            gen: vec![vec![1, 1]],
            labels: vec![],
        };
        assert!(!is_self_orthogonal(&bad));
    }

    #[test]
    fn weight_multiset_mass() {
        let (f, _) = build(&preset("example4").unwrap().spec).unwrap();
        let ds = defining_set(&f, &SubsetSpec::Single(1)).unwrap();
        let code = build_code(&ds).unwrap();
        let wd = weight_distribution(&ds, &code);
        assert_eq!(wd.total(), 3u64.pow(7));
        assert_eq!(wd.pairs[0], (0, 1));
    }
}
