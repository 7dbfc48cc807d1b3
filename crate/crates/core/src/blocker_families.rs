//! The two parameterized families of blockers and their classification.
//!
//! Both families live on odd n = 2m-1 and consist, after rotating by k, of a
//! backbone of boundary edges together with beams leaving its interior.
//! Class A has a contiguous backbone [alpha, m-delta] with alpha upper and
//! delta lower beams whose reaches are the strictly decreasing sequences
//! eps and xi. Class B breaks the backbone into two runs of beta and gamma
//! edges joined by a bridge of width eta across the hole. classify inverts
//! generate: it reads the window, slots, and offsets of a candidate and
//! either recovers a valid descriptor or produces an avoiding witness.
//! An alternate description of Class A by anchored diagonals supports the
//! derivation of Class B members from broken Class A ancestors.

use crate::cyclic_geometry::{Edge, EdgeSet};
use crate::error::{DescriptorViolation, Error};
use crate::ham_paths::Path;
use crate::proof_witnesses::find_structured_witness;
use crate::support::{analyze, SupportAnalysis, SupportShape};
use serde::{Deserialize, Serialize};

/// Caterpillar family: backbone [alpha, m-delta], upper beams reaching
/// eps_i, lower beams reaching xi_j, all rotated by k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassAParams {
    pub m: usize,
    pub k: usize,
    pub alpha: usize,
    pub delta: usize,
    pub eps: Vec<usize>,
    pub xi: Vec<usize>,
}

/// Broken backbone family: runs of beta and gamma boundary edges around a
/// hole, a bridge of width eta across it, beams as in Class A.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassBParams {
    pub m: usize,
    pub k: usize,
    pub alpha: usize,
    pub delta: usize,
    pub beta: usize,
    pub gamma: usize,
    pub eta: usize,
    pub eps: Vec<usize>,
    pub xi: Vec<usize>,
}

/// Descriptor of a family member, tagged by class in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum BlockerDescriptor {
    A(ClassAParams),
    B(ClassBParams),
}

/// Outcome of classifying a candidate with blocker cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassificationResult {
    Matched(BlockerDescriptor),
    NotBlocker { witness: Path },
}

impl ClassAParams {
    pub fn n(&self) -> usize {
        2 * self.m - 1
    }

    /// Checks every family constraint, reporting the first violation.
    pub fn validate(&self) -> Result<(), DescriptorViolation> {
        let m = self.m as i64;
        if self.m < 2 {
            return Err(DescriptorViolation::OrderTooSmallForFamily { m: self.m });
        }
        if self.k >= self.n() {
            return Err(DescriptorViolation::RotationRange { k: self.k, n: self.n() });
        }
        if self.eps.len() != self.alpha {
            return Err(DescriptorViolation::EpsLength {
                alpha: self.alpha,
                actual: self.eps.len(),
            });
        }
        if self.xi.len() != self.delta {
            return Err(DescriptorViolation::XiLength {
                delta: self.delta,
                actual: self.xi.len(),
            });
        }
        let (alpha, delta) = (self.alpha as i64, self.delta as i64);
        if alpha + delta > m - 2 {
            return Err(DescriptorViolation::AlphaDeltaSum {
                sum: self.alpha + self.delta,
                limit: (m - 2).max(0) as usize,
            });
        }
        check_sequence(
            &self.eps,
            |i| alpha - i + 1,
            |i| m - delta - i - 1,
            SeqKind::Eps,
        )?;
        check_sequence(
            &self.xi,
            |j| delta + 1 - j,
            |j| m - j - alpha - 1,
            SeqKind::Xi,
        )?;
        if self.alpha > 0 && self.delta > 0 {
            let sum = self.eps[0] as i64 + self.xi[0] as i64;
            if sum > m - 2 {
                return Err(DescriptorViolation::JointEpsXi { sum, limit: m - 2 });
            }
        }
        Ok(())
    }
}

impl ClassBParams {
    pub fn n(&self) -> usize {
        2 * self.m - 1
    }

    /// Checks every family constraint, reporting the first violation.
    pub fn validate(&self) -> Result<(), DescriptorViolation> {
        let m = self.m as i64;
        if self.m < 2 {
            return Err(DescriptorViolation::OrderTooSmallForFamily { m: self.m });
        }
        if self.k >= self.n() {
            return Err(DescriptorViolation::RotationRange { k: self.k, n: self.n() });
        }
        if self.eps.len() != self.alpha {
            return Err(DescriptorViolation::EpsLength {
                alpha: self.alpha,
                actual: self.eps.len(),
            });
        }
        if self.xi.len() != self.delta {
            return Err(DescriptorViolation::XiLength {
                delta: self.delta,
                actual: self.xi.len(),
            });
        }
        let (alpha, delta) = (self.alpha as i64, self.delta as i64);
        let (beta, gamma) = (self.beta as i64, self.gamma as i64);
        if alpha + delta > m - 5 {
            return Err(DescriptorViolation::AlphaDeltaSumClassB {
                sum: self.alpha + self.delta,
                limit: (m - 5).max(0) as usize,
            });
        }
        if beta < 2 {
            return Err(DescriptorViolation::BetaTooSmall { beta: self.beta });
        }
        if gamma < 2 {
            return Err(DescriptorViolation::GammaTooSmall { gamma: self.gamma });
        }
        if beta + gamma != m - alpha - delta - 1 {
            return Err(DescriptorViolation::BetaGammaSum {
                sum: self.beta + self.gamma,
                expected: (m - alpha - delta - 1) as usize,
            });
        }
        let eta_limit = (beta - 1).min(gamma - 1);
        if self.eta < 1 || self.eta as i64 > eta_limit {
            return Err(DescriptorViolation::EtaRange { eta: self.eta, limit: eta_limit });
        }
        check_sequence(&self.eps, |_| 1, |i| alpha + beta - 1 - i, SeqKind::Eps)?;
        check_sequence(&self.xi, |_| 1, |j| gamma + delta - 1 - j, SeqKind::Xi)?;
        Ok(())
    }
}

enum SeqKind {
    Eps,
    Xi,
}

/// Strictly decreasing sequence with per-position bounds, 1-based.
fn check_sequence(
    seq: &[usize],
    lower: impl Fn(i64) -> i64,
    upper: impl Fn(i64) -> i64,
    kind: SeqKind,
) -> Result<(), DescriptorViolation> {
    for (idx, &value) in seq.iter().enumerate() {
        let pos = idx as i64 + 1;
        let v = value as i64;
        if v < lower(pos) {
            return Err(match kind {
                SeqKind::Eps => DescriptorViolation::EpsLowerBound {
                    i: idx + 1,
                    value: v,
                    bound: lower(pos),
                },
                SeqKind::Xi => DescriptorViolation::XiLowerBound {
                    j: idx + 1,
                    value: v,
                    bound: lower(pos),
                },
            });
        }
        if v > upper(pos) {
            return Err(match kind {
                SeqKind::Eps => DescriptorViolation::EpsUpperBound {
                    i: idx + 1,
                    value: v,
                    bound: upper(pos),
                },
                SeqKind::Xi => DescriptorViolation::XiUpperBound {
                    j: idx + 1,
                    value: v,
                    bound: upper(pos),
                },
            });
        }
        if idx > 0 && value >= seq[idx - 1] {
            return Err(match kind {
                SeqKind::Eps => DescriptorViolation::EpsNotStrictlyDecreasing { i: idx + 1 },
                SeqKind::Xi => DescriptorViolation::XiNotStrictlyDecreasing { j: idx + 1 },
            });
        }
    }
    Ok(())
}

impl BlockerDescriptor {
    pub fn m(&self) -> usize {
        match self {
            BlockerDescriptor::A(p) => p.m,
            BlockerDescriptor::B(p) => p.m,
        }
    }

    pub fn n(&self) -> usize {
        2 * self.m() - 1
    }

    pub fn k(&self) -> usize {
        match self {
            BlockerDescriptor::A(p) => p.k,
            BlockerDescriptor::B(p) => p.k,
        }
    }

    pub fn validate(&self) -> Result<(), DescriptorViolation> {
        match self {
            BlockerDescriptor::A(p) => p.validate(),
            BlockerDescriptor::B(p) => p.validate(),
        }
    }
}

/// Validates a descriptor, reporting the first violated constraint.
pub fn validate(d: &BlockerDescriptor) -> Result<(), DescriptorViolation> {
    d.validate()
}

/// Builds the edge set of a valid descriptor.
pub fn generate(d: &BlockerDescriptor) -> Result<EdgeSet, Error> {
    d.validate()?;
    let n = d.n();
    let mut edges: Vec<Edge> = Vec::with_capacity(d.m());
    match d {
        BlockerDescriptor::A(p) => {
            let (m, alpha, delta) = (p.m as i64, p.alpha as i64, p.delta as i64);
            for t in alpha..=(m - delta - 1) {
                edges.push(Edge::normalized(t, t + 1, n));
            }
            push_beams(&mut edges, m, &p.eps, &p.xi, n);
        }
        BlockerDescriptor::B(p) => {
            let (m, alpha, delta) = (p.m as i64, p.alpha as i64, p.delta as i64);
            let (beta, eta) = (p.beta as i64, p.eta as i64);
            for t in alpha..=(alpha + beta - 1) {
                edges.push(Edge::normalized(t, t + 1, n));
            }
            for t in (alpha + beta + 1)..=(m - delta - 1) {
                edges.push(Edge::normalized(t, t + 1, n));
            }
            edges.push(Edge::normalized(alpha + beta - eta, alpha + beta + 1 + eta, n));
            push_beams(&mut edges, m, &p.eps, &p.xi, n);
        }
    }
    let s = EdgeSet::from_edges(n, edges)?.rotated(d.k());
    debug_assert_eq!(s.len(), d.m(), "descriptor edges must be distinct");
    Ok(s)
}

fn push_beams(edges: &mut Vec<Edge>, m: i64, eps: &[usize], xi: &[usize], n: usize) {
    for (idx, &e) in eps.iter().enumerate() {
        let i = idx as i64 + 1;
        edges.push(Edge::normalized(i - 1 - e as i64, i + e as i64, n));
    }
    for (idx, &x) in xi.iter().enumerate() {
        let j = idx as i64 + 1;
        edges.push(Edge::normalized(m - j - x as i64, m - j + 1 + x as i64, n));
    }
}

/// Strictly decreasing sequences with per-position inclusive bounds, in
/// lexicographic order.
fn decreasing_sequences(len: usize, bounds: &[(i64, i64)]) -> Vec<Vec<usize>> {
    fn rec(idx: usize, bounds: &[(i64, i64)], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx == bounds.len() {
            out.push(cur.clone());
            return;
        }
        let (lo, mut hi) = bounds[idx];
        if idx > 0 {
            hi = hi.min(cur[idx - 1] as i64 - 1);
        }
        let mut v = lo.max(0);
        while v <= hi {
            cur.push(v as usize);
            rec(idx + 1, bounds, cur, out);
            cur.pop();
            v += 1;
        }
    }
    debug_assert_eq!(bounds.len(), len);
    let mut out = Vec::new();
    rec(0, bounds, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Every descriptor of order n in deterministic order: Class A sorted by
/// (k, alpha, delta, eps, xi), then Class B sorted by
/// (k, alpha, delta, beta, eta, eps, xi).
pub fn enumerate_descriptors(n: usize) -> Result<Vec<BlockerDescriptor>, Error> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder { n });
    }
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    let m = (n + 1) / 2;
    let m_i = m as i64;
    let mut out = Vec::new();
    for k in 0..n {
        for alpha in 0..=(m - 2) {
            for delta in 0..=(m - 2 - alpha) {
                let (a_i, d_i) = (alpha as i64, delta as i64);
                let eps_bounds: Vec<(i64, i64)> =
                    (1..=a_i).map(|i| (a_i - i + 1, m_i - d_i - i - 1)).collect();
                let xi_bounds: Vec<(i64, i64)> =
                    (1..=d_i).map(|j| (d_i + 1 - j, m_i - j - a_i - 1)).collect();
                for eps in decreasing_sequences(alpha, &eps_bounds) {
                    for xi in decreasing_sequences(delta, &xi_bounds) {
                        if alpha > 0 && delta > 0 && (eps[0] + xi[0]) as i64 > m_i - 2 {
                            continue;
                        }
                        let p = ClassAParams { m, k, alpha, delta, eps: eps.clone(), xi };
                        debug_assert!(p.validate().is_ok());
                        out.push(BlockerDescriptor::A(p));
                    }
                }
            }
        }
    }
    for k in 0..n {
        for alpha in 0..=m.saturating_sub(5) {
            for delta in 0..=(m.saturating_sub(5) - alpha) {
                let (a_i, d_i) = (alpha as i64, delta as i64);
                let run_total = m_i - a_i - d_i - 1;
                for beta in 2..=(run_total - 2) {
                    let gamma = run_total - beta;
                    for eta in 1..=((beta - 1).min(gamma - 1)) {
                        let eps_bounds: Vec<(i64, i64)> =
                            (1..=a_i).map(|i| (1, a_i + beta - 1 - i)).collect();
                        let xi_bounds: Vec<(i64, i64)> =
                            (1..=d_i).map(|j| (1, gamma + d_i - 1 - j)).collect();
                        for eps in decreasing_sequences(alpha, &eps_bounds) {
                            for xi in decreasing_sequences(delta, &xi_bounds) {
                                let p = ClassBParams {
                                    m,
                                    k,
                                    alpha,
                                    delta,
                                    beta: beta as usize,
                                    gamma: gamma as usize,
                                    eta: eta as usize,
                                    eps: eps.clone(),
                                    xi,
                                };
                                debug_assert!(p.validate().is_ok());
                                out.push(BlockerDescriptor::B(p));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Reads a descriptor candidate off a windowed support analysis. The result
/// still needs validation.
fn read_descriptor(a: &SupportAnalysis) -> Option<BlockerDescriptor> {
    let b = a.backbone.as_ref()?;
    let (alpha, delta, m) = (b.alpha, b.delta, a.m);
    let eps: Vec<usize> = (1..=alpha).map(|i| a.offsets[i - 1]).collect();
    let xi: Vec<usize> = (1..=delta).map(|j| a.offsets[m - j]).collect();
    match b.holes[..] {
        [] => Some(BlockerDescriptor::A(ClassAParams { m, k: a.c, alpha, delta, eps, xi })),
        [h] => Some(BlockerDescriptor::B(ClassBParams {
            m,
            k: a.c,
            alpha,
            delta,
            beta: h - 1 - alpha,
            gamma: m - delta - h,
            eta: a.offsets[h - 1],
            eps,
            xi,
        })),
        _ => None,
    }
}

/// Decides whether a candidate with blocker cardinality is a family member,
/// returning its descriptor or an avoiding witness.
pub fn classify(s: &EdgeSet) -> Result<ClassificationResult, Error> {
    let shape = analyze(s)?;
    if let SupportShape::Windowed(a) = &shape {
        if let Some(d) = read_descriptor(a) {
            if d.validate().is_ok() {
                let regenerated = generate(&d).expect("validated descriptor generates");
                assert_eq!(&regenerated, s, "slot readout must invert generate");
                return Ok(ClassificationResult::Matched(d));
            }
        }
    }
    match find_structured_witness(s) {
        Some((witness, _)) => Ok(ClassificationResult::NotBlocker { witness }),
        None => panic!(
            "candidate blocks every path but matches no family: characterization violated for {s:?}"
        ),
    }
}

/// Class A rephrased as anchored diagonals over the backbone complement:
/// diagonal nu anchors at position i_nu with span partner j_nu.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltDescriptionA {
    pub m: usize,
    pub alpha: usize,
    pub delta: usize,
    pub a_len: usize,
    pub b_len: usize,
    pub diagonals: Vec<(usize, usize)>,
}

impl AltDescriptionA {
    pub fn validate(&self) -> Result<(), DescriptorViolation> {
        let expected_a = self.m as i64 - self.alpha as i64 - self.delta as i64;
        let expected_b = self.m as i64 - 3 + self.alpha as i64 + self.delta as i64;
        if expected_a < 0
            || self.a_len as i64 != expected_a
            || self.b_len as i64 != expected_b
            || self.diagonals.len() != self.alpha + self.delta
        {
            return Err(DescriptorViolation::AltLengths {
                detail: format!(
                    "expected a_len {expected_a}, b_len {expected_b}, {} diagonals",
                    self.alpha + self.delta
                ),
            });
        }
        let limit = self.m as i64 - self.alpha as i64 - self.delta as i64 - 1;
        for (idx, &(i, j)) in self.diagonals.iter().enumerate() {
            let nu = idx + 1;
            if (i as i64) < 1 || i as i64 > limit {
                return Err(DescriptorViolation::AltChainRange { nu, i: i as i64, limit });
            }
            if idx > 0 && i < self.diagonals[idx - 1].0 {
                return Err(DescriptorViolation::AltChainNotIncreasing { nu });
            }
            let span: i64 = if nu <= self.alpha { 2 * nu as i64 - 2 } else { 2 * nu as i64 - 3 };
            if j as i64 != i as i64 + span {
                return Err(DescriptorViolation::AltSpanMismatch {
                    nu,
                    i: i as i64,
                    j: j as i64,
                });
            }
        }
        Ok(())
    }
}

/// Diagonal form of a Class A descriptor; the rotation k is dropped and
/// must be supplied again when converting back.
pub fn to_alt_description(p: &ClassAParams) -> Result<AltDescriptionA, Error> {
    p.validate()?;
    let (m, alpha, delta) = (p.m as i64, p.alpha as i64, p.delta as i64);
    let mut diagonals = Vec::with_capacity(p.alpha + p.delta);
    // Diagonal order u_alpha, ..., u_1, v_1, ..., v_delta.
    for nu in 1..=alpha {
        let i = 1 - nu + p.eps[(alpha - nu) as usize] as i64;
        diagonals.push((i as usize, (i + 2 * nu - 2) as usize));
    }
    for mu in 1..=delta {
        let nu = alpha + mu;
        let i = m - mu - p.xi[(mu - 1) as usize] as i64 - alpha;
        diagonals.push((i as usize, (i + 2 * nu - 3) as usize));
    }
    let alt = AltDescriptionA {
        m: p.m,
        alpha: p.alpha,
        delta: p.delta,
        a_len: (m - alpha - delta) as usize,
        b_len: (m - 3 + alpha + delta) as usize,
        diagonals,
    };
    alt.validate().map_err(Error::from)?;
    Ok(alt)
}

/// Inverse of [`to_alt_description`], restoring the rotation k.
pub fn from_alt_description(alt: &AltDescriptionA, k: usize) -> Result<ClassAParams, Error> {
    alt.validate()?;
    let (m, alpha, delta) = (alt.m as i64, alt.alpha as i64, alt.delta as i64);
    let mut eps = vec![0usize; alt.alpha];
    for nu in 1..=alpha {
        let i = alt.diagonals[(nu - 1) as usize].0 as i64;
        // eps index alpha+1-nu, 1-based.
        eps[(alpha - nu) as usize] = (i + nu - 1) as usize;
    }
    let mut xi = vec![0usize; alt.delta];
    for mu in 1..=delta {
        let i = alt.diagonals[(alpha + mu - 1) as usize].0 as i64;
        xi[(mu - 1) as usize] = (m - mu - alpha - i) as usize;
    }
    let p = ClassAParams { m: alt.m, k, alpha: alt.alpha, delta: alt.delta, eps, xi };
    p.validate()?;
    Ok(p)
}

/// Derives a Class B descriptor by breaking a Class A ancestor's backbone
/// after beta run edges and bridging the hole with width eta. Requires the
/// ancestor's diagonals to anchor clear of the break.
pub fn class_b_from_broken(p: &ClassAParams, beta: usize, eta: usize) -> Result<ClassBParams, Error> {
    p.validate()?;
    let (m, alpha, delta) = (p.m as i64, p.alpha as i64, p.delta as i64);
    let run_total = m - alpha - delta;
    if run_total < 5 {
        return Err(DescriptorViolation::BrokenBackboneTooShort { value: run_total }.into());
    }
    let beta_i = beta as i64;
    let gamma = m - alpha - delta - 1 - beta_i;
    if beta_i < 2 || gamma < 2 {
        return Err(DescriptorViolation::BreakPositionRange { beta }.into());
    }
    let limit = beta_i.min(gamma);
    if eta < 1 || eta as i64 >= limit {
        return Err(DescriptorViolation::BridgeWidthRange { eta, limit }.into());
    }
    let alt = to_alt_description(p)?;
    for (idx, &(i, _)) in alt.diagonals.iter().enumerate() {
        let nu = idx + 1;
        if nu <= p.alpha {
            if i as i64 > beta_i - 1 {
                return Err(DescriptorViolation::AnchorNotInUpperRun {
                    nu,
                    i,
                    limit: beta_i - 1,
                }
                .into());
            }
        } else if (i as i64) < beta_i + 2 || i as i64 > run_total - 1 {
            return Err(DescriptorViolation::AnchorNotInLowerRun {
                nu,
                i,
                low: beta_i + 2,
                high: run_total - 1,
            }
            .into());
        }
    }
    let out = ClassBParams {
        m: p.m,
        k: p.k,
        alpha: p.alpha,
        delta: p.delta,
        beta,
        gamma: gamma as usize,
        eta,
        eps: p.eps.clone(),
        xi: p.xi.clone(),
    };
    out.validate()?;
    Ok(out)
}
