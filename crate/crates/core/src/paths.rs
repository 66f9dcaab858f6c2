//! Alternating lattice paths and the path operators.
//!
//! For an integer sequence `beta` the operator `R_beta` is the sum, over all
//! alternating paths that stay weakly above the staircase of `beta`, of
//! `(qt)^(sum of valley heights)` times a word in the one-step operators
//!
//! ```text
//! O(m) = (-1)^m e_m        (m > 0, multiplication)
//! O(-n) = h_n^perp[MX]     (n > 0, skewing in the M-scaled alphabet)
//! O(0) = identity
//! ```
//!
//! Words act rightmost-first. Three interchangeable engines evaluate the
//! action: direct path enumeration, a sum over valley increments through the
//! coefficient operators `D_k` of the generating field `D(z)`, and the
//! normal-ordered coefficient extraction in [`crate::laurent`]. The operator
//! family `A_F` built from nested commutators of `D_0` and `e_1` lives here
//! as well, with its path-sum counterpart.

use crate::error::{Error, Result};
use crate::laurent;
use crate::linop::{mult_op, GradedOperator};
use crate::macdonald::WeightSpec;
use crate::qt::QtScalar;
use crate::symfunc::{pleth_diag, scale_m, skew_hall, Basis, SymFunc};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

// ---------------------------------------------------------------------------
// Alternating paths
// ---------------------------------------------------------------------------

/// An alternating lattice path: odd steps weakly up, even steps weakly down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AltPath {
    steps: Vec<i64>,
}

impl AltPath {
    pub fn new(steps: Vec<i64>) -> Result<Self> {
        if steps.len() % 2 != 0 {
            return Err(Error::BadPath("odd number of steps".into()));
        }
        for (i, &s) in steps.iter().enumerate() {
            if i % 2 == 0 && s < 0 {
                return Err(Error::BadPath(format!("up step {} at position {}", s, i + 1)));
            }
            if i % 2 == 1 && s > 0 {
                return Err(Error::BadPath(format!("down step {} at position {}", s, i + 1)));
            }
        }
        Ok(AltPath { steps })
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights after each step, starting from 0 (length = steps + 1).
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.steps.len() + 1);
        h.push(0);
        let mut y = 0;
        for &s in &self.steps {
            y += s;
            h.push(y);
        }
        h
    }

    /// Final height.
    pub fn degree(&self) -> i64 {
        self.steps.iter().sum()
    }

    /// Valley y-coordinates, i.e. heights at even x (including both ends).
    pub fn valley_heights(&self) -> Vec<i64> {
        self.heights().into_iter().step_by(2).collect()
    }
}

/// The minimal path `gamma_beta`: step pair `(max(0,b), min(0,b))` per entry.
pub fn gamma_of(beta: &[i64]) -> AltPath {
    let mut steps = Vec::with_capacity(2 * beta.len());
    for &b in beta {
        steps.push(b.max(0));
        steps.push(b.min(0));
    }
    AltPath { steps }
}

fn prefix_sums(beta: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(beta.len() + 1);
    out.push(0);
    let mut s = 0;
    for &b in beta {
        s += b;
        out.push(s);
    }
    out
}

/// Valley weight `(qt)^(sum of beta-heights of the valleys)`; errors unless
/// the path belongs to `R_beta`.
pub fn valley_weight(gamma: &AltPath, beta: &[i64]) -> Result<QtScalar> {
    let heights = check_membership(gamma, beta)?;
    let mut total = 0i64;
    for h in heights {
        total += h;
    }
    QtScalar::qt().pow(total)
}

/// Beta-heights of the valleys; errors unless `gamma` is in `R_beta`.
fn check_membership(gamma: &AltPath, beta: &[i64]) -> Result<Vec<i64>> {
    if gamma.len() != 2 * beta.len() {
        return Err(Error::BadPath(format!(
            "length {} does not match index sequence of length {}",
            gamma.len(),
            beta.len()
        )));
    }
    let b = prefix_sums(beta);
    let valleys = gamma.valley_heights();
    let mut hts = Vec::with_capacity(valleys.len());
    for (j, &v) in valleys.iter().enumerate() {
        let ht = v - b[j];
        if ht < 0 {
            return Err(Error::BadPath(format!("valley {} has negative beta-height {}", j, ht)));
        }
        hts.push(ht);
    }
    if *hts.last().unwrap_or(&0) != 0 {
        return Err(Error::BadPath("endpoint has nonzero beta-height".into()));
    }
    Ok(hts)
}

// ---------------------------------------------------------------------------
// One-step operators and D_k
// ---------------------------------------------------------------------------

fn sym_cache(
    cell: &'static OnceLock<Mutex<HashMap<u32, SymFunc>>>,
    key: u32,
    build: impl FnOnce() -> SymFunc,
) -> SymFunc {
    let cache = cell.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(key).or_insert_with(build).clone()
}

/// `e_m` in the p-basis, cached. Built from the single-row expansion so
/// high degrees never materialize full transition tables.
fn e_m_p(m: u32) -> SymFunc {
    static CACHE: OnceLock<Mutex<HashMap<u32, SymFunc>>> = OnceLock::new();
    sym_cache(&CACHE, m, || {
        let mut out = SymFunc::zero(Basis::P);
        for (mu, c) in crate::symfunc::e_single_row(m) {
            out.insert(mu, c);
        }
        out
    })
}

/// `h_n[MX]` in the p-basis, cached.
fn h_m_scaled_p(n: u32) -> SymFunc {
    static CACHE: OnceLock<Mutex<HashMap<u32, SymFunc>>> = OnceLock::new();
    sym_cache(&CACHE, n, || {
        let mut out = SymFunc::zero(Basis::P);
        for (mu, c) in crate::symfunc::h_single_row(n) {
            out.insert(mu, c);
        }
        pleth_diag(&out, scale_m).expect("plethysm of h_n")
    })
}

/// The one-step operator `O(m)` applied to `f`.
pub fn step_op_apply(m: i64, f: &SymFunc) -> Result<SymFunc> {
    if m > 0 {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        Ok(e_m_p(m as u32).mul(f)?.scale(&QtScalar::from_int(sign)))
    } else if m < 0 {
        skew_hall(&h_m_scaled_p((-m) as u32), f)
    } else {
        f.to_p()
    }
}

/// `D_k f = sum_{n >= 0, k+n >= 0} (-1)^(k+n) e_(k+n) h_n^perp[MX] f`.
pub fn dk_apply(k: i64, f: &SymFunc) -> Result<SymFunc> {
    let fp = f.to_p()?;
    if fp.is_zero() {
        return Ok(fp);
    }
    let dmax = fp.max_degree() as i64;
    let mut out = SymFunc::zero(Basis::P);
    for n in 0..=dmax {
        let m = k + n;
        if m < 0 {
            continue;
        }
        let skewed = skew_hall(&h_m_scaled_p(n as u32), &fp)?;
        if skewed.is_zero() {
            continue;
        }
        let term = step_op_apply(m, &skewed)?;
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Apply the decorated-path operator `O_beta(gamma)` to `f`.
pub fn path_op_apply(gamma: &AltPath, beta: &[i64], f: &SymFunc) -> Result<SymFunc> {
    let weight = valley_weight(gamma, beta)?;
    let mut cur = f.to_p()?;
    for &s in gamma.steps.iter().rev() {
        if cur.is_zero() {
            break;
        }
        cur = step_op_apply(s, &cur)?;
    }
    Ok(cur.scale(&weight))
}

// ---------------------------------------------------------------------------
// Concatenations of index sequences
// ---------------------------------------------------------------------------

/// A concatenation of index sequences, one per path-operator factor. The
/// grouping matters only through the set of non-consecutive index pairs in
/// the normal-ordered formulas.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BetaSeq {
    groups: Vec<Vec<i64>>,
}

impl BetaSeq {
    pub fn new(groups: Vec<Vec<i64>>) -> Self {
        BetaSeq { groups }
    }

    pub fn single(beta: &[i64]) -> Self {
        BetaSeq { groups: vec![beta.to_vec()] }
    }

    pub fn groups(&self) -> &[Vec<i64>] {
        &self.groups
    }

    pub fn concat(&self) -> Vec<i64> {
        self.groups.iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|g| g.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_size(&self) -> i64 {
        self.groups.iter().flatten().sum()
    }

    /// Group index of the 0-based position.
    fn group_of(&self, pos: usize) -> usize {
        let mut acc = 0;
        for (g, grp) in self.groups.iter().enumerate() {
            acc += grp.len();
            if pos < acc {
                return g;
            }
        }
        unreachable!("position out of range")
    }

    /// Whether consecutive positions `i` and `i+1` (0-based) are coupled by a
    /// geometric factor, i.e. belong to the same group.
    pub fn coupled(&self, i: usize) -> bool {
        i + 1 < self.len() && self.group_of(i) == self.group_of(i + 1)
    }

    /// Non-consecutive index pairs `(i, j)`, 0-based `i < j`: all pairs with
    /// `j > i + 1`, plus adjacent pairs that straddle a group boundary.
    pub fn is_ni(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < j);
        j > i + 1 || !self.coupled(i)
    }

    pub fn ni_pairs(&self) -> Vec<(usize, usize)> {
        let l = self.len();
        let mut out = Vec::new();
        for i in 0..l {
            for j in (i + 1)..l {
                if self.is_ni(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// Evaluation strategies for the path operators. All agree exactly.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Engine {
    /// Enumerate admissible paths and sum `path_op_apply`.
    Paths,
    /// Sum over valley increments through products of `D_k`.
    Increments,
    /// Normal-ordered coefficient extraction (module laurent).
    Voa,
}

impl Engine {
    pub fn from_name(s: &str) -> Result<Engine> {
        match s {
            "paths" => Ok(Engine::Paths),
            "increments" => Ok(Engine::Increments),
            "voa" => Ok(Engine::Voa),
            _ => Err(Error::InvalidParameter(format!("unknown engine {s:?}"))),
        }
    }
}

/// `R_beta f`.
pub fn r_apply(beta: &[i64], f: &SymFunc, engine: Engine) -> Result<SymFunc> {
    match engine {
        Engine::Paths => engine_paths(beta, &f.to_p()?),
        Engine::Increments => engine_increments(beta, &f.to_p()?),
        Engine::Voa => laurent::voa_apply(&BetaSeq::single(beta), f),
    }
}

/// `R_{beta^(1)} ... R_{beta^(m)} f`, rightmost factor applied first.
pub fn r_product_apply(betas: &BetaSeq, f: &SymFunc, engine: Engine) -> Result<SymFunc> {
    match engine {
        Engine::Voa => laurent::voa_apply(betas, f),
        _ => {
            let mut cur = f.to_p()?;
            for beta in betas.groups.iter().rev() {
                cur = r_apply(beta, &cur, engine)?;
                if cur.is_zero() {
                    break;
                }
            }
            Ok(cur)
        }
    }
}

/// Direct enumeration of all paths in `R_beta` that can act without hitting
/// negative degrees: valley and peak heights are bounded by `|beta| + deg f`
/// from below-degree annihilation, and valleys from below by the staircase.
fn engine_paths(beta: &[i64], fp: &SymFunc) -> Result<SymFunc> {
    if beta.is_empty() || fp.is_zero() {
        return Ok(fp.clone());
    }
    let l = beta.len();
    let n: i64 = beta.iter().sum();
    let d = fp.max_degree() as i64;
    let upper = n + d;
    if upper < 0 {
        return Ok(SymFunc::zero(Basis::P));
    }
    let b = prefix_sums(beta);
    let mut out = SymFunc::zero(Basis::P);
    // heights[j] = valley j, peaks chosen between consecutive valleys
    let mut valleys = vec![0i64; l + 1];
    valleys[l] = n;
    let mut peaks = vec![0i64; l];
    enumerate_valleys(1, l, &b, upper, &mut valleys, &mut peaks, &mut |valleys, peaks| {
        let mut steps = Vec::with_capacity(2 * l);
        for j in 0..l {
            steps.push(peaks[j] - valleys[j]);
            steps.push(valleys[j + 1] - peaks[j]);
        }
        let gamma = AltPath { steps };
        let term = path_op_apply(&gamma, beta, fp)?;
        out = out.add(&term)?;
        Ok(())
    })?;
    Ok(out)
}

fn enumerate_valleys(
    j: usize,
    l: usize,
    b: &[i64],
    upper: i64,
    valleys: &mut Vec<i64>,
    peaks: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64], &[i64]) -> Result<()>,
) -> Result<()> {
    if j == l {
        // last valley fixed to n; choose the final peak
        let lo = valleys[l - 1].max(valleys[l]);
        for p in lo..=upper {
            peaks[l - 1] = p;
            emit(valleys, peaks)?;
        }
        return Ok(());
    }
    for v in b[j]..=upper {
        valleys[j] = v;
        let lo = valleys[j - 1].max(v);
        for p in lo..=upper {
            peaks[j - 1] = p;
            enumerate_valleys(j + 1, l, b, upper, valleys, peaks, emit)?;
        }
    }
    Ok(())
}

/// Sum over valley increments: a right-to-left dynamic pass over valley
/// heights `s_j` in the exact window `[prefix_sum(beta, j), |beta| + deg f]`,
/// applying `(qt)^(height) D_(increment)` per step.
fn engine_increments(beta: &[i64], fp: &SymFunc) -> Result<SymFunc> {
    if beta.is_empty() || fp.is_zero() {
        return Ok(fp.clone());
    }
    let l = beta.len();
    let n: i64 = beta.iter().sum();
    let d = fp.max_degree() as i64;
    let upper = n + d;
    if upper < 0 {
        return Ok(SymFunc::zero(Basis::P));
    }
    let b = prefix_sums(beta);
    // state: valley height -> accumulated function (weights for valleys > j
    // already included)
    let mut state: BTreeMap<i64, SymFunc> = BTreeMap::new();
    state.insert(n, fp.clone());
    for j in (0..l).rev() {
        let mut next: BTreeMap<i64, SymFunc> = BTreeMap::new();
        let range = if j == 0 { 0..=0 } else { b[j]..=upper };
        for s in range {
            let mut acc = SymFunc::zero(Basis::P);
            for (&s_next, g) in &state {
                let term = dk_apply(s_next - s, g)?;
                if !term.is_zero() {
                    // weight for valley j+1 at height s_next
                    let w = QtScalar::qt().pow(s_next - b[j + 1])?;
                    acc = acc.add(&term.scale(&w))?;
                }
            }
            if !acc.is_zero() {
                next.insert(s, acc);
            }
        }
        state = next;
        if state.is_empty() {
            return Ok(SymFunc::zero(Basis::P));
        }
    }
    Ok(state.remove(&0).unwrap_or_else(|| SymFunc::zero(Basis::P)))
}

// ---------------------------------------------------------------------------
// Particle reparametrization
// ---------------------------------------------------------------------------

/// Distances between consecutive particles: reads `beta` left to right,
/// appending `beta_i` zeros and bumping the last entry except at the end.
pub fn psi(beta: &[i64]) -> Result<Vec<i64>> {
    if beta.is_empty() || beta[0] <= 0 || beta.iter().any(|&x| x < 0) {
        return Err(Error::PsiDomain(format!("{:?}", beta)));
    }
    let mut alpha: Vec<i64> = Vec::new();
    for (idx, &x) in beta.iter().enumerate() {
        alpha.extend(std::iter::repeat(0).take(x as usize));
        if idx + 1 < beta.len() {
            *alpha.last_mut().expect("first entry is positive") += 1;
        }
    }
    Ok(alpha)
}

/// Inverse of [`psi`]: place particle `j+1` at peak `pos_j + alpha_j`
/// (0-based, particle 1 on the first peak) and count particles per peak.
pub fn psi_inv(alpha: &[i64]) -> Result<Vec<i64>> {
    if alpha.is_empty() || alpha.iter().any(|&x| x < 0) {
        return Err(Error::PsiDomain(format!("{:?}", alpha)));
    }
    let total: i64 = alpha.iter().sum();
    let peaks = total as usize + 1;
    let mut beta = vec![0i64; peaks];
    let mut pos = 0usize;
    for &a in alpha {
        beta[pos] += 1;
        pos += a as usize;
    }
    Ok(beta)
}

/// `Q_alpha f = R_(psi^-1 alpha) f`.
pub fn q_apply(alpha: &[i64], f: &SymFunc, engine: Engine) -> Result<SymFunc> {
    r_apply(&psi_inv(alpha)?, f, engine)
}

/// The symmetrized operator: sum of `Q_(sigma alpha)` over all permutations.
pub fn q_sym_apply(alpha: &[i64], f: &SymFunc, engine: Engine) -> Result<SymFunc> {
    let mut out = SymFunc::zero(Basis::P);
    let mut perm = alpha.to_vec();
    let mut c = vec![0usize; perm.len()];
    // Heap's algorithm over all l! arrangements (repeats counted)
    out = out.add(&q_apply(&perm, f, engine)?)?;
    let mut i = 0;
    while i < perm.len() {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out = out.add(&q_apply(&perm, f, engine)?)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The operator family A_F
// ---------------------------------------------------------------------------

/// Construction route for `A_F^(l)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AOpEngine {
    /// Nested commutators of `D_0` and `-e_1`.
    Commutator,
    /// Weighted sum of `Q_alpha` over `alpha` in `{0..deg F}^l`.
    PathSum,
}

/// `A_F^(l) f` through the path-operator sum; used where materializing the
/// operator is unnecessary.
pub fn a_apply(spec: &WeightSpec, ell: u32, f: &SymFunc, engine: Engine) -> Result<SymFunc> {
    if ell == 0 {
        return Err(Error::InvalidParameter("A_F^(l) needs l >= 1".into()));
    }
    let k = spec.degree();
    let mut out = SymFunc::zero(Basis::P);
    let mut alpha = vec![0i64; ell as usize];
    loop {
        let mut weight = QtScalar::one();
        for &a in &alpha {
            weight = &weight * &spec.coeff(a as usize);
        }
        if !weight.is_zero() {
            out = out.add(&q_apply(&alpha, f, engine)?.scale(&weight))?;
        }
        // odometer over {0..k}^ell
        let mut pos = 0;
        loop {
            if pos == alpha.len() {
                return Ok(out);
            }
            if alpha[pos] < k as i64 {
                alpha[pos] += 1;
                break;
            }
            alpha[pos] = 0;
            pos += 1;
        }
    }
}

/// `A_F = sum_i a_i ad^i_{D_0/(-M)}(-e_1)` as a graded operator.
pub fn a_f_op(spec: &WeightSpec, window: u32) -> Result<GradedOperator> {
    let w0 = window + 1;
    let d0 = GradedOperator::from_action(0, w0, |f| dk_apply(0, f))?;
    let neg_e1 = mult_op(&e_m_p(1).neg(), w0)?;
    let minus_inv_m = QtScalar::from_int(-1).div(&QtScalar::m_scalar())?;
    let mut term = neg_e1;
    let mut acc = term.scale(&spec.coeff(0));
    for i in 1..=spec.degree() {
        term = d0.commutator(&term)?.scale(&minus_inv_m);
        let c = spec.coeff(i);
        if !c.is_zero() {
            acc = acc.add(&term.scale(&c))?;
        }
    }
    Ok(acc)
}

/// `A_F^(l)` as a graded operator on the requested window.
pub fn a_op(spec: &WeightSpec, ell: u32, window: u32, engine: AOpEngine) -> Result<GradedOperator> {
    if ell == 0 {
        return Err(Error::InvalidParameter("A_F^(l) needs l >= 1".into()));
    }
    match engine {
        AOpEngine::PathSum => GradedOperator::from_action(ell as i64, window, |f| {
            a_apply(spec, ell, f, Engine::Increments)
        }),
        AOpEngine::Commutator => {
            // windows shrink by one per nested commutator level
            let w0 = window + ell;
            let d0 = GradedOperator::from_action(0, w0, |f| dk_apply(0, f))?;
            let a_f = a_f_op(spec, w0)?;
            let minus_inv_m = QtScalar::from_int(-1).div(&QtScalar::m_scalar())?;
            let inv_m = QtScalar::one().div(&QtScalar::m_scalar())?;
            let mut cur = d0.commutator(&a_f)?.scale(&minus_inv_m);
            for _ in 2..=ell {
                cur = a_f.commutator(&cur)?.scale(&inv_m);
            }
            Ok(cur)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partitions_of, Partition};

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn gamma_of_examples() {
        assert_eq!(gamma_of(&[1, -2, 1, 3]).steps(), &[1, 0, 0, -2, 1, 0, 3, 0]);
        assert!(gamma_of(&[]).is_empty());
        assert_eq!(gamma_of(&[2]).steps(), &[2, 0]);
    }

    #[test]
    fn membership_and_weight() {
        let beta = [1i64, -2, 1, 3];
        // valleys 0, 2, -1, 1, 3 against staircase prefixes 0, 1, -1, 0, 3:
        // beta-heights (0, 1, 0, 1, 0), so the weight is (qt)^2
        let gamma = AltPath::new(vec![2, 0, 0, -3, 2, 0, 2, 0]).unwrap();
        let w = valley_weight(&gamma, &beta).unwrap();
        assert_eq!(w, QtScalar::qt().pow(2).unwrap());
        // gamma_beta itself has weight 1
        assert_eq!(valley_weight(&gamma_of(&beta), &beta).unwrap(), QtScalar::one());
        // a path dipping below the staircase is rejected
        let low = AltPath::new(vec![0, 0, 0, -2, 1, 0, 3, 0]).unwrap();
        assert!(valley_weight(&low, &beta).is_err());
    }

    #[test]
    fn paper_figure_word() {
        // steps (3,-1,0,-3,2,0,3,-1) lie over (1,-2,1,3) with weight
        // (qt)^(1+0+1) and word e_3 h_1^perp[MX] h_3^perp[MX] e_2 e_3
        // h_1^perp[MX] carrying the overall sign (-1)^(3+0+2+3) = 1
        let beta = [1i64, -2, 1, 3];
        let gamma = AltPath::new(vec![3, -1, 0, -3, 2, 0, 3, -1]).unwrap();
        assert_eq!(
            valley_weight(&gamma, &beta).unwrap(),
            QtScalar::qt().pow(2).unwrap()
        );
        let f = SymFunc::p(part(&[1]));
        let got = path_op_apply(&gamma, &beta, &f).unwrap();
        let mut manual = f.to_p().unwrap();
        for step in [-1i64, 3, 0, 2, -3, 0, -1, 3] {
            manual = step_op_apply(step, &manual).unwrap();
        }
        assert_eq!(got, manual.scale(&QtScalar::qt().pow(2).unwrap()));
        // single up step on 1: O(1) O(0) 1 = -e_1
        let single = AltPath::new(vec![1, 0]).unwrap();
        let res = path_op_apply(&single, &[1], &SymFunc::one()).unwrap();
        assert_eq!(res, SymFunc::e_n(1).to_p().unwrap().neg());
    }

    #[test]
    fn dk_on_one() {
        // D_n 1 = (-1)^n e_n for n >= 0, 0 for n < 0
        for n in 0..=4i64 {
            let want = e_m_p(n as u32).scale(&QtScalar::from_int(if n % 2 == 0 { 1 } else { -1 }));
            assert_eq!(dk_apply(n, &SymFunc::one()).unwrap(), want);
        }
        assert!(dk_apply(-1, &SymFunc::one()).unwrap().is_zero());
    }

    #[test]
    fn engines_on_single_entry() {
        // R_(n) 1 = (-1)^n e_n; R_(-1) 1 = 0
        for engine in [Engine::Paths, Engine::Increments, Engine::Voa] {
            for n in 0..=3i64 {
                let want =
                    e_m_p(n as u32).scale(&QtScalar::from_int(if n % 2 == 0 { 1 } else { -1 }));
                assert_eq!(r_apply(&[n], &SymFunc::one(), engine).unwrap(), want, "n={n}");
            }
            assert!(r_apply(&[-1], &SymFunc::one(), engine).unwrap().is_zero());
        }
    }

    #[test]
    fn engines_agree_small() {
        // a couple of mixed-sign sequences on p-basis inputs of degree <= 2
        let inputs = [SymFunc::one(), SymFunc::p(part(&[1])), SymFunc::p(part(&[2])), SymFunc::p(part(&[1, 1]))];
        for beta in [vec![1, -1], vec![-1, 1], vec![2, -1], vec![0, 1], vec![1, 0, -1]] {
            for f in &inputs {
                let a = r_apply(&beta, f, Engine::Paths).unwrap();
                let b = r_apply(&beta, f, Engine::Increments).unwrap();
                let c = r_apply(&beta, f, Engine::Voa).unwrap();
                assert_eq!(a, b, "paths vs increments at beta={beta:?} f={f}");
                assert_eq!(b, c, "increments vs voa at beta={beta:?} f={f}");
            }
        }
    }

    #[test]
    fn empty_sequence_is_identity() {
        let f = SymFunc::p(part(&[2, 1]));
        for engine in [Engine::Paths, Engine::Increments, Engine::Voa] {
            assert_eq!(r_apply(&[], &f, engine).unwrap(), f.to_p().unwrap());
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&[1, 2, 0, 1]).unwrap(), vec![1, 0, 2, 0]);
        assert_eq!(psi(&[1, 0, 0, 0]).unwrap(), vec![3]);
        assert_eq!(psi(&[3]).unwrap(), vec![0, 0, 0]);
        assert!(psi(&[0, 1]).is_err());
        assert!(psi(&[]).is_err());
    }

    #[test]
    fn psi_inv_examples() {
        assert_eq!(psi_inv(&[1, 0, 2, 0]).unwrap(), vec![1, 2, 0, 1]);
        assert_eq!(psi_inv(&[3]).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(psi_inv(&[0, 0, 0]).unwrap(), vec![3]);
        assert!(psi_inv(&[]).is_err());
    }

    #[test]
    fn psi_bijection() {
        // psi_inv . psi = id for valid beta with |beta| <= 5
        fn betas(len: usize, size: i64) -> Vec<Vec<i64>> {
            let mut out = Vec::new();
            let mut cur = vec![0i64; len];
            fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
                if i == cur.len() {
                    if left == 0 && cur[0] > 0 {
                        out.push(cur.clone());
                    }
                    return;
                }
                for v in 0..=left {
                    cur[i] = v;
                    rec(i + 1, left - v, cur, out);
                }
            }
            rec(0, size, &mut cur, &mut out);
            out
        }
        for size in 1..=5i64 {
            for len in 1..=4usize {
                for beta in betas(len, size) {
                    let alpha = psi(&beta).unwrap();
                    assert_eq!(psi_inv(&alpha).unwrap(), beta);
                }
            }
        }
        // psi . psi_inv = id for alpha with l(alpha) <= 5, |alpha| <= 4
        fn alphas(len: usize, max_size: i64) -> Vec<Vec<i64>> {
            let mut out = Vec::new();
            let mut cur = vec![0i64; len];
            fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
                if i == cur.len() {
                    out.push(cur.clone());
                    return;
                }
                for v in 0..=left {
                    cur[i] = v;
                    rec(i + 1, left - v, cur, out);
                }
            }
            rec(0, max_size, &mut cur, &mut out);
            out
        }
        for len in 1..=5usize {
            for alpha in alphas(len, 4) {
                let beta = psi_inv(&alpha).unwrap();
                assert_eq!(psi(&beta).unwrap(), alpha);
            }
        }
    }

    #[test]
    fn q_apply_examples() {
        // Q_(0) 1 = -e_1; Q_(0,0) 1 = e_2
        let m_e1 = e_m_p(1).neg();
        assert_eq!(q_apply(&[0], &SymFunc::one(), Engine::Increments).unwrap(), m_e1);
        assert_eq!(
            q_apply(&[0, 0], &SymFunc::one(), Engine::Increments).unwrap(),
            e_m_p(2)
        );
        // homogeneity: deg(Q_alpha f) - deg f = l(alpha)
        for alpha in [vec![1, 0], vec![2], vec![0, 1, 0]] {
            let f = SymFunc::p(part(&[2]));
            let img = q_apply(&alpha, &f, Engine::Increments).unwrap();
            assert_eq!(img.homogeneous_degree(), Some(2 + alpha.len() as u32));
        }
    }

    #[test]
    fn r_product_and_ni() {
        // R_(1) R_(1) 1 = D_1(-e_1) = e_1^2 - M e_2: the square plus the
        // corrective skew term from h_1^perp[MX] e_1 = M
        let seq = BetaSeq::new(vec![vec![1], vec![1]]);
        let correction = e_m_p(2).scale(&QtScalar::m_scalar());
        let want = e_m_p(1).mul(&e_m_p(1)).unwrap().sub(&correction).unwrap();
        for engine in [Engine::Paths, Engine::Increments, Engine::Voa] {
            assert_eq!(r_product_apply(&seq, &SymFunc::one(), engine).unwrap(), want);
        }
        // NI for ((2,0,0),(3)) is {(1,3),(1,4),(2,4),(3,4)} in 1-based labels
        let seq = BetaSeq::new(vec![vec![2, 0, 0], vec![3]]);
        let ni: Vec<(usize, usize)> =
            seq.ni_pairs().iter().map(|&(i, j)| (i + 1, j + 1)).collect();
        assert_eq!(ni, vec![(1, 3), (1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn a_op_first_cases() {
        // with F = 1 the only term is Q_(0...0), so A^(n) 1 = (-1)^n e_n
        let one_spec = WeightSpec::one();
        for n in 1..=3u32 {
            let v = a_apply(&one_spec, n, &SymFunc::one(), Engine::Increments).unwrap();
            let want = e_m_p(n).scale(&QtScalar::from_int(if n % 2 == 0 { 1 } else { -1 }));
            assert_eq!(v, want);
        }
    }

    #[test]
    fn a_n_p_n_relations() {
        // (-1/M)[D_0, -e_1] = Q_0 and (-1/M)[D_0, Q_(n-1)] = Q_n on window 3
        let w = 4u32;
        let d0 = GradedOperator::from_action(0, w + 1, |f| dk_apply(0, f)).unwrap();
        let neg_e1 = mult_op(&e_m_p(1).neg(), w + 1).unwrap();
        let minus_inv_m = QtScalar::from_int(-1).div(&QtScalar::m_scalar()).unwrap();
        let q0 = GradedOperator::from_action(1, w, |f| q_apply(&[0], f, Engine::Increments)).unwrap();
        let lhs = d0.commutator(&neg_e1).unwrap().scale(&minus_inv_m);
        assert!(lhs.equal_on(&q0, 3).unwrap());
        for n in 1..=2i64 {
            let qn_1 = GradedOperator::from_action(1, w, |f| {
                q_apply(&[n - 1], f, Engine::Increments)
            })
            .unwrap();
            let qn = GradedOperator::from_action(1, w, |f| q_apply(&[n], f, Engine::Increments))
                .unwrap();
            let lhs = d0.commutator(&qn_1).unwrap().scale(&minus_inv_m);
            assert!(lhs.equal_on(&qn, 3).unwrap(), "n={n}");
        }
    }

    #[test]
    fn a_op_engines_agree_f_one() {
        let spec = WeightSpec::one();
        for ell in 1..=2u32 {
            let a = a_op(&spec, ell, 3, AOpEngine::Commutator).unwrap();
            let b = a_op(&spec, ell, 3, AOpEngine::PathSum).unwrap();
            assert!(a.equal_on(&b, 3).unwrap(), "ell={ell}");
        }
    }

    #[test]
    fn annihilation_bound() {
        // any word whose suffix partial sum drops below -deg f kills f
        let f = SymFunc::p(part(&[1]));
        for engine in [Engine::Paths, Engine::Increments, Engine::Voa] {
            assert!(r_apply(&[3, -2, -2], &f, engine).unwrap().is_zero());
        }
        let mut count = 0;
        for lam in partitions_of(2) {
            let img = r_apply(&[-2], &SymFunc::p(lam), Engine::Increments).unwrap();
            if !img.is_zero() {
                count += 1;
            }
        }
        assert!(count > 0);
    }
}
