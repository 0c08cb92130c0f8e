//! Definitional flatness check: does `Lan_Y(M) = − * M` preserve the
//! weighted limits of a class?
//!
//! Limits in `[A,V]` are computed pointwise, and the limit of `H: K → [A,V]`
//! weighted by `P` is `meet_k [P k, H k]` whatever the homs of `K` are. Extra
//! structure on `K` only restricts which `P` and `H` are functorial, so it is
//! enough to range over discrete index spaces of each size. For a discrete
//! `K` the limit is a finite meet of cotensors `[p, H]`, which is what gets
//! enumerated here.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::enriched::{LeftModule, Space};
use crate::quantale::{Base, QValue};

use super::scalar::{Encoder, Scalar, Tick};
use super::{FlatnessClass, FlatnessError};

/// Default cap on the number of equations one oracle run may evaluate.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Reads the enumeration budget from `QC_BUDGET`, falling back to
/// [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("QC_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    /// Values used for weights and for the entries of enumerated modules.
    pub grid: Vec<QValue>,
    /// Largest index space size for finite-limit weights.
    pub max_k: usize,
    pub budget: u64,
}

impl OracleConfig {
    pub fn new(base: Base) -> OracleConfig {
        OracleConfig { grid: default_grid(base), max_k: 2, budget: budget_from_env() }
    }
}

/// `{0, 1/2, 1, 2, ∞}` over R̄₊ and `{0, 1}` over Bool.
pub fn default_grid(base: Base) -> Vec<QValue> {
    match base {
        Base::RPlus => vec![QValue::ZERO, QValue::frac(1, 2), QValue::int(1), QValue::int(2), QValue::Infinity],
        Base::Bool => vec![QValue::FALSE, QValue::TRUE],
    }
}

/// A limit that `Lan_Y(M)` fails to preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleWitness {
    /// The empty limit: `join_x M(x)` is not the unit.
    Terminal { colimit: QValue },
    /// A finite meet of cotensors `[p, H]`; a single factor is a plain
    /// cotensor.
    Meet { factors: Vec<(QValue, Vec<QValue>)>, extension_of_limit: QValue, limit_of_extension: QValue },
    /// The colimit `M * Y` is not preserved by `[Q, −]`.
    Absolute { probe: Vec<QValue>, hom_into: QValue, colimit_of_homs: QValue },
}

fn list(values: &[QValue]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for OracleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleWitness::Terminal { colimit } => {
                write!(f, "empty limit: extension gives {colimit}, expected the unit")
            }
            OracleWitness::Meet { factors, extension_of_limit, limit_of_extension } => {
                let parts: Vec<String> =
                    factors.iter().map(|(p, h)| format!("[{p}, {}]", list(h))).collect();
                write!(
                    f,
                    "limit {}: extension of the limit is {extension_of_limit}, limit of the extensions is {limit_of_extension}",
                    parts.join(" ∧ ")
                )
            }
            OracleWitness::Absolute { probe, hom_into, colimit_of_homs } => write!(
                f,
                "probe {}: hom into the module is {hom_into}, weighted colimit of homs is {colimit_of_homs}",
                list(probe)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub holds: bool,
    pub witness: Option<OracleWitness>,
    /// Number of equations evaluated.
    pub checks: u64,
}

struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self, n: u64) -> Result<(), FlatnessError> {
        self.used += n;
        if self.used > self.limit {
            Err(FlatnessError::Budget { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Every table `points → grid` satisfying `ok(prefix)` on each prefix.
fn enumerate_tables<V: Scalar>(
    n: usize,
    grid: &[V],
    ok: &dyn Fn(&[V]) -> bool,
    counter: &mut Counter,
) -> Result<Vec<Vec<V>>, FlatnessError> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go<V: Scalar>(
        n: usize,
        grid: &[V],
        ok: &dyn Fn(&[V]) -> bool,
        cur: &mut Vec<V>,
        out: &mut Vec<Vec<V>>,
        counter: &mut Counter,
    ) -> Result<(), FlatnessError> {
        if cur.len() == n {
            out.push(cur.clone());
            return Ok(());
        }
        for &g in grid {
            counter.tick(1)?;
            cur.push(g);
            if ok(cur) {
                go(n, grid, ok, cur, out, counter)?;
            }
            cur.pop();
        }
        Ok(())
    }
    go(n, grid, ok, &mut cur, &mut out, counter)?;
    Ok(out)
}

/// Everything about a space and a grid that does not depend on the module.
struct Core<V> {
    n: usize,
    unit: V,
    initial: V,
    dist: Vec<V>,
    /// Candidate right modules `H`.
    hs: Vec<Vec<V>>,
    /// `(p, h, t)`: the cotensor `[p, hs[h]]` equals `ts[t]`.
    items: Vec<(V, usize, usize)>,
    /// Distinct cotensors, each with the first item producing it.
    ts: Vec<Vec<V>>,
    t_origin: Vec<usize>,
    /// Left modules used as probes for absoluteness.
    probes: Vec<Vec<V>>,
}

impl<V: Scalar> Core<V> {
    fn build(
        n: usize,
        dist: Vec<V>,
        grid: &[V],
        unit: V,
        initial: V,
        counter: &mut Counter,
    ) -> Result<Core<V>, FlatnessError> {
        let d = |x: usize, y: usize| dist[x * n + y];
        let right_ok = |vals: &[V]| {
            let k = vals.len() - 1;
            (0..=k).all(|x| d(x, k).tensor(vals[x]).le(vals[k]) && d(k, x).tensor(vals[k]).le(vals[x]))
        };
        let left_ok = |vals: &[V]| {
            let k = vals.len() - 1;
            (0..=k).all(|x| vals[k].tensor(d(x, k)).le(vals[x]) && vals[x].tensor(d(k, x)).le(vals[k]))
        };
        let mut hs = enumerate_tables(n, grid, &right_ok, counter)?;
        let mut probes = enumerate_tables(n, grid, &left_ok, counter)?;
        for a in 0..n {
            let row: Vec<V> = (0..n).map(|y| d(a, y)).collect();
            if !hs.contains(&row) {
                hs.push(row);
            }
            let col: Vec<V> = (0..n).map(|x| d(x, a)).collect();
            if !probes.contains(&col) {
                probes.push(col);
            }
        }
        let mut items = Vec::new();
        let mut ts: Vec<Vec<V>> = Vec::new();
        let mut t_origin = Vec::new();
        let mut seen: HashMap<Vec<V>, usize> = HashMap::new();
        for &p in grid {
            for (h, hv) in hs.iter().enumerate() {
                counter.tick(1)?;
                let t: Vec<V> = hv.iter().map(|&v| p.hom(v)).collect();
                let idx = match seen.get(&t) {
                    Some(&i) => i,
                    None => {
                        seen.insert(t.clone(), ts.len());
                        ts.push(t);
                        t_origin.push(items.len());
                        ts.len() - 1
                    }
                };
                items.push((p, h, idx));
            }
        }
        Ok(Core { n, unit, initial, dist, hs, items, ts, t_origin, probes })
    }

    /// `N * M` for a right module `N`.
    #[inline]
    fn apply(&self, m: &[V], nv: &[V]) -> V {
        m.iter().zip(nv).fold(self.initial, |acc, (&a, &b)| acc.join(a.tensor(b)))
    }

    fn check(
        &self,
        m: &[V],
        class: FlatnessClass,
        max_k: usize,
        counter: &mut Counter,
        decode: &dyn Fn(V) -> QValue,
    ) -> Result<Option<OracleWitness>, FlatnessError> {
        let dec = |vs: &[V]| vs.iter().map(|&v| decode(v)).collect::<Vec<_>>();
        if class == FlatnessClass::Empty {
            return Ok(None);
        }
        // Empty K: the limit is the constant-terminal right module, whose
        // image under `− * M` is `join_x M(x) ⊗ terminal`. Both bases have
        // the unit as terminal object.
        counter.tick(1)?;
        let colimit = m.iter().fold(self.initial, |acc, &a| acc.join(a.tensor(self.unit)));
        if colimit != self.unit {
            return Ok(Some(OracleWitness::Terminal { colimit: decode(colimit) }));
        }

        // One-point K: cotensors.
        let c_h: Vec<V> = self.hs.iter().map(|h| self.apply(m, h)).collect();
        let c_t: Vec<V> = self.ts.iter().map(|t| self.apply(m, t)).collect();
        counter.tick((self.hs.len() + self.ts.len()) as u64)?;
        for &(p, h, t) in &self.items {
            counter.tick(1)?;
            let rhs = p.hom(c_h[h]);
            if c_t[t] != rhs {
                return Ok(Some(OracleWitness::Meet {
                    factors: vec![(decode(p), dec(&self.hs[h]))],
                    extension_of_limit: decode(c_t[t]),
                    limit_of_extension: decode(rhs),
                }));
            }
        }
        if class == FlatnessClass::P1 {
            return Ok(None);
        }

        // Discrete K with 2..=max_k points. With cotensors preserved, the
        // limit of the extensions is the meet of the `c_t`.
        let mut chosen: Vec<usize> = Vec::new();
        let mut scratch = vec![Vec::new(); max_k + 1];
        if let Some(w) = self.meets(m, &c_t, max_k, 0, &mut chosen, &mut scratch, counter, &dec)? {
            return Ok(Some(w));
        }
        if class == FlatnessClass::P2 {
            return Ok(None);
        }

        // Absoluteness of `M * Y`: every `[Q, −]` preserves it.
        let mut probes = self.probes.clone();
        if !probes.iter().any(|q| q == m) {
            probes.push(m.to_vec());
        }
        for q in &probes {
            counter.tick((self.n * self.n) as u64)?;
            let hom_into = q.iter().zip(m).fold(self.unit, |acc, (&a, &b)| acc.meet(a.hom(b)));
            let colimit_of_homs = (0..self.n).fold(self.initial, |acc, x| {
                let hom_yx = q
                    .iter()
                    .enumerate()
                    .fold(self.unit, |acc, (z, &a)| acc.meet(a.hom(self.dist[z * self.n + x])));
                acc.join(m[x].tensor(hom_yx))
            });
            if hom_into != colimit_of_homs {
                return Ok(Some(OracleWitness::Absolute {
                    probe: dec(q),
                    hom_into: decode(hom_into),
                    colimit_of_homs: decode(colimit_of_homs),
                }));
            }
        }
        Ok(None)
    }

    /// Depth-first over strictly increasing index sets of cotensors. `scratch[d]`
    /// holds the pointwise meet of the first `d` chosen cotensors.
    #[allow(clippy::too_many_arguments)]
    fn meets(
        &self,
        m: &[V],
        c_t: &[V],
        max_k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        scratch: &mut Vec<Vec<V>>,
        counter: &mut Counter,
        dec: &dyn Fn(&[V]) -> Vec<QValue>,
    ) -> Result<Option<OracleWitness>, FlatnessError> {
        let depth = chosen.len();
        if depth == max_k {
            return Ok(None);
        }
        for t in start..self.ts.len() {
            let next: Vec<V> = if depth == 0 {
                self.ts[t].clone()
            } else {
                scratch[depth].iter().zip(&self.ts[t]).map(|(&a, &b)| a.meet(b)).collect()
            };
            chosen.push(t);
            if depth + 1 >= 2 {
                counter.tick(1)?;
                let lhs = self.apply(m, &next);
                let rhs = chosen.iter().fold(self.unit, |acc, &i| acc.meet(c_t[i]));
                if lhs != rhs {
                    let factors = chosen
                        .iter()
                        .map(|&i| {
                            let (p, h, _) = self.items[self.t_origin[i]];
                            let p = dec(&[p])[0];
                            (p, dec(&self.hs[h]))
                        })
                        .collect();
                    let one = |v: V| dec(&[v])[0];
                    return Ok(Some(OracleWitness::Meet {
                        factors,
                        extension_of_limit: one(lhs),
                        limit_of_extension: one(rhs),
                    }));
                }
            }
            scratch[depth + 1] = next;
            if let Some(w) = self.meets(m, c_t, max_k, t + 1, chosen, scratch, counter, dec)? {
                return Ok(Some(w));
            }
            chosen.pop();
        }
        Ok(None)
    }
}

enum Engine {
    Ticks(Encoder, Core<Tick>),
    Exact(Core<QValue>),
}

/// The module-independent part of the oracle for one space and
/// configuration; reuse it to check many modules on the same space.
pub struct OracleTable {
    space: Arc<Space>,
    config: OracleConfig,
    engine: Engine,
}

impl OracleTable {
    pub fn new(space: &Arc<Space>, config: &OracleConfig) -> Result<OracleTable, FlatnessError> {
        Self::with_extra(space, config, &[])
    }

    fn with_extra(space: &Arc<Space>, config: &OracleConfig, extra: &[QValue]) -> Result<OracleTable, FlatnessError> {
        let base = space.base();
        if let Some(v) = config.grid.iter().find(|v| v.base() != base) {
            return Err(FlatnessError::Enriched(crate::enriched::EnrichedError::Base(base, v.base())));
        }
        let mut counter = Counter { used: 0, limit: config.budget };
        let n = space.len();
        let all = space.matrix().iter().chain(&config.grid).chain(extra);
        let engine = match Encoder::for_values(base, all) {
            Some(enc) => {
                let code = |v: QValue| enc.encode(v).expect("value covered by the encoder");
                let dist = space.matrix().iter().map(|&v| code(v)).collect();
                let grid: Vec<Tick> = config.grid.iter().map(|&v| code(v)).collect();
                Engine::Ticks(enc, Core::build(n, dist, &grid, Tick(0), Tick::INF, &mut counter)?)
            }
            None => Engine::Exact(Core::build(
                n,
                space.matrix().to_vec(),
                &config.grid,
                base.unit(),
                base.initial(),
                &mut counter,
            )?),
        };
        Ok(OracleTable { space: space.clone(), config: config.clone(), engine })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    /// Number of candidate right modules and of distinct cotensors.
    pub fn sizes(&self) -> (usize, usize) {
        match &self.engine {
            Engine::Ticks(_, c) => (c.hs.len(), c.ts.len()),
            Engine::Exact(c) => (c.hs.len(), c.ts.len()),
        }
    }

    pub fn check(&self, m: &LeftModule, class: FlatnessClass) -> Result<OracleVerdict, FlatnessError> {
        if !crate::enriched::same_space(m.space(), &self.space) {
            return Err(FlatnessError::Enriched(crate::enriched::EnrichedError::SpaceMismatch));
        }
        let mut counter = Counter { used: 0, limit: self.config.budget };
        let witness = match &self.engine {
            Engine::Ticks(enc, core) => {
                let encoded: Option<Vec<Tick>> = m.values().iter().map(|&v| enc.encode(v)).collect();
                match encoded {
                    Some(mv) => core.check(&mv, class, self.config.max_k, &mut counter, &|t| enc.decode(t))?,
                    None => {
                        let wider = OracleTable::with_extra(&self.space, &self.config, m.values())?;
                        return wider.check(m, class);
                    }
                }
            }
            Engine::Exact(core) => core.check(m.values(), class, self.config.max_k, &mut counter, &|v| v)?,
        };
        Ok(OracleVerdict { holds: witness.is_none(), witness, checks: counter.used })
    }
}

/// Definitional flatness of `M` for a class of weights.
pub fn flatness_oracle(
    m: &LeftModule,
    class: FlatnessClass,
    config: &OracleConfig,
) -> Result<OracleVerdict, FlatnessError> {
    OracleTable::new(m.space(), config)?.check(m, class)
}
