//! Level quotients of automaton groups and the aperiodicity certificate.
//!
//! If a group `G'` of finite index acted on a tiling built from `∂ψ = 1`,
//! the chain would descend to the finite quotient graph, where summing the
//! equation over all vertices gives `|V| ≡ Σ (∂ψ)(v) ≡ 0 (mod p)`. The
//! certificate computes level-quotient orders, checks that `p` divides none
//! of them, and confirms with an exact GF(p) solve that the all-ones chain
//! is not a boundary on each quotient Cayley graph.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::automaton::{AutomatonSpec, Preset, DEFAULT_LEAF_CAP};
use crate::chain::{Chain0, Chain1, Modulus};
use crate::error::{Error, Result};
use crate::graph::{Edge, Genset, ToyGraph};
use crate::oracle::oracle_solve_finite;
use crate::perm::Perm;

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Generator permutations on level `n` of the tree, in genset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelQuotient {
    pub level: usize,
    pub generators: Vec<Perm>,
    pub genset: Genset,
}

pub fn level_quotient(spec: &AutomatonSpec, n: usize) -> Result<LevelQuotient> {
    level_quotient_capped(spec, n, DEFAULT_LEAF_CAP)
}

pub fn level_quotient_capped(spec: &AutomatonSpec, n: usize, leaf_cap: usize) -> Result<LevelQuotient> {
    let table = spec.level_table(n, leaf_cap)?;
    Ok(LevelQuotient {
        level: n,
        generators: spec.genset().iter().map(|&s| table.state(s).clone()).collect(),
        genset: spec.genset_info(),
    })
}

/// Finite permutation group with its elements in BFS order and its Cayley
/// graph (loops dropped, one edge per unordered pair and label).
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub level: usize,
    pub elements: Vec<Perm>,
    pub cayley: ToyGraph,
}

impl QuotientGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// BFS closure under right multiplication by the generators.
pub fn closure(q: &LevelQuotient, element_cap: usize) -> Result<QuotientGroup> {
    let degree = q.generators.first().map_or(1, Perm::len);
    let mut elements = vec![Perm::identity(degree)];
    let mut index: HashMap<Perm, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut edges = BTreeSet::new();
    let mut next = 0;
    while next < elements.len() {
        for (label, g) in q.generators.iter().enumerate() {
            let y = elements[next].then(g);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elements.len() >= element_cap {
                        return Err(Error::resource(
                            format!(
                                "level-{} quotient has at least {} elements",
                                q.level,
                                elements.len() + 1
                            ),
                            element_cap as u64,
                        ));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    elements.len() - 1
                }
            };
            if j != next {
                edges.insert(if next < j {
                    Edge { tail: next, head: j, label }
                } else {
                    Edge { tail: j, head: next, label: q.genset.inverse(label) }
                });
            }
        }
        next += 1;
    }
    let cayley = ToyGraph::new(elements.len(), edges.into_iter().collect(), &[])?;
    Ok(QuotientGroup {
        level: q.level,
        elements,
        cayley,
    })
}

pub fn quotient_order(q: &LevelQuotient) -> Result<u64> {
    closure(q, DEFAULT_ELEMENT_CAP).map(|g| g.order())
}

pub fn quotient_cayley(q: &LevelQuotient) -> Result<ToyGraph> {
    closure(q, DEFAULT_ELEMENT_CAP).map(|g| g.cayley)
}

/// Action on level `n` induced by an action on a deeper level.
pub fn project(perm: &Perm, d: usize, levels_up: usize) -> Perm {
    let shrink = d.pow(levels_up as u32);
    let images = (0..perm.len() / shrink)
        .map(|x| (perm.apply(x * shrink) / shrink) as u32)
        .collect();
    Perm::from_images(images).expect("level-preserving action")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub all_ones_is_boundary: bool,
    pub witness: Option<Chain1>,
}

/// Decides whether the all-ones chain is a boundary on a closed connected
/// graph, by exact elimination over GF(p).
pub fn obstruction_check(graph: &ToyGraph, p: Modulus) -> Result<Obstruction> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let witness = oracle_solve_finite(graph, &Chain0::ones(graph.vertex_count(), p))?;
    Ok(Obstruction {
        all_ones_is_boundary: witness.is_some(),
        witness,
    })
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Incomplete => "INCOMPLETE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub n: usize,
    pub order: Option<u64>,
    /// `[prime, exponent]` pairs.
    pub factorization: Vec<(u64, u32)>,
    pub p_divides: Option<bool>,
    /// Whether the all-ones chain is a boundary on the quotient Cayley graph.
    pub obstruction: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub group: String,
    pub p: u32,
    pub levels: Vec<LevelReport>,
    pub verdict: Verdict,
    pub scope: String,
    pub trusted_inputs: Vec<String>,
}

const SCOPE: &str = "PASS certifies the computed level quotients only: p divides none of their \
orders and the all-ones chain is not a boundary on their Cayley graphs. Extending this to every \
finite-index subgroup relies on the trusted inputs below.";

fn trusted_inputs(spec: &AutomatonSpec) -> Vec<String> {
    match spec.preset_id() {
        Some(Preset::Grigorchuk) => vec![
            "The first Grigorchuk group is a torsion 2-group, hence every finite quotient is a 2-group (Grigorchuk 1980).".into(),
            "The group is residually finite through its level quotients.".into(),
        ],
        Some(Preset::FabrykowskiGupta) => vec![
            "Every finite quotient of the Fabrykowski-Gupta group is a 3-group.".into(),
        ],
        None => vec!["No structural facts are known for custom automata; the verdict covers the computed levels only.".into()],
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertificateCaps {
    pub leaves: usize,
    pub elements: usize,
}

impl Default for CertificateCaps {
    fn default() -> Self {
        CertificateCaps {
            leaves: DEFAULT_LEAF_CAP,
            elements: DEFAULT_ELEMENT_CAP,
        }
    }
}

fn level_report(spec: &AutomatonSpec, p: Modulus, n: usize, caps: CertificateCaps) -> LevelReport {
    let mut report = LevelReport {
        n,
        order: None,
        factorization: Vec::new(),
        p_divides: None,
        obstruction: None,
        error: None,
    };
    let group = match level_quotient_capped(spec, n, caps.leaves).and_then(|q| closure(&q, caps.elements)) {
        Ok(g) => g,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    let order = group.order();
    report.order = Some(order);
    report.factorization = factorize(order);
    report.p_divides = Some(order % p.get() as u64 == 0);
    match obstruction_check(&group.cayley, p) {
        Ok(o) => report.obstruction = Some(o.all_ones_is_boundary),
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

pub fn aperiodicity_certificate(spec: &AutomatonSpec, p: Modulus, levels: RangeInclusive<usize>) -> CertificateReport {
    aperiodicity_certificate_capped(spec, p, levels, CertificateCaps::default())
}

pub fn aperiodicity_certificate_capped(
    spec: &AutomatonSpec,
    p: Modulus,
    levels: RangeInclusive<usize>,
    caps: CertificateCaps,
) -> CertificateReport {
    let levels: Vec<LevelReport> = levels.map(|n| level_report(spec, p, n, caps)).collect();
    let verdict = if levels.is_empty() || levels.iter().any(|l| l.error.is_some()) {
        Verdict::Incomplete
    } else if levels
        .iter()
        .all(|l| l.p_divides == Some(false) && l.obstruction == Some(false))
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    CertificateReport {
        group: spec.name().to_string(),
        p: p.get(),
        levels,
        verdict,
        scope: SCOPE.to_string(),
        trusted_inputs: trusted_inputs(spec),
    }
}

impl CertificateReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("aperiodicity certificate: group {} p = {}\n", self.group, self.p);
        for l in &self.levels {
            match (l.order, &l.error) {
                (_, Some(err)) => out.push_str(&format!("  level {}: error: {err}\n", l.n)),
                (Some(order), None) => {
                    let fact = l
                        .factorization
                        .iter()
                        .map(|(q, e)| if *e == 1 { q.to_string() } else { format!("{q}^{e}") })
                        .collect::<Vec<_>>()
                        .join(" * ");
                    let fact = if fact.is_empty() { "1".to_string() } else { fact };
                    out.push_str(&format!(
                        "  level {}: order {order} = {fact}; p divides: {}; all-ones is a boundary: {}\n",
                        l.n,
                        yes_no(l.p_divides),
                        yes_no(l.obstruction)
                    ));
                }
                (None, None) => out.push_str(&format!("  level {}: not computed\n", l.n)),
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out.push_str(&format!("scope: {}\n", self.scope));
        for t in &self.trusted_inputs {
            out.push_str(&format!("trusted: {t}\n"));
        }
        out
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    }
}
