//! Closed-form restriction formulas for generic orbits of types A, B, C, D.
//!
//! A and C sum `Lambda_q^- prod 1 / (w_i(x_{h_i}) - q(x_{h_i}))` over paths with
//! nondecreasing first-difference index `h`. B and D decompose over the fiber
//! of the projection to the orbit through `mu^1` and recurse on the fiber,
//! with `D_3` handled through `A_3`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{CartanType, Orbit, OrbitSpec, SignedPerm};
use crate::canonical::{PathTerm, RestrictionTable};
use crate::error::{Error, Result};
use crate::exactalg::{linfrac_sum_to_poly, LinFrac, Poly, Rational, Weight};
use crate::fibration::{certify_term, defining_p, horizontal_paths, BaseProjection, TermCertificate, TowerPath, TowerResult};
use crate::gkm::{OrientedGraphData, Path};

/// Certificate for a single path term of a typed formula.
#[derive(Clone, Debug, Serialize)]
pub struct TypedCertificate {
    #[serde(flatten)]
    pub term: TermCertificate,
    /// Every numerator form is proportional to a root.
    pub roots: bool,
    /// The constant lies in the set the formula asserts.
    pub constant_ok: bool,
}

impl TypedCertificate {
    pub fn passed(&self) -> bool {
        self.term.is_positive_product() && self.roots && self.constant_ok
    }
}

fn certify_typed(orbit: &Orbit, term: &LinFrac, allowed: &dyn Fn(&Rational) -> bool) -> TypedCertificate {
    let rs = orbit.root_system();
    let roots = term.num().iter().all(|f| rs.positive_roots().iter().any(|r| r.is_proportional(f.weight())));
    let t = certify_term(term, orbit.xi());
    let constant_ok = allowed(&t.constant);
    TypedCertificate { term: t, roots, constant_ok }
}

fn positive_integer(c: &Rational) -> bool {
    c.is_integer() && c.is_positive()
}

/// A/C: every monotone path term and the sum.
pub fn formula_ac(orbit: &Orbit, p: usize, q: usize) -> Result<TowerResult> {
    if !matches!(orbit.cartan(), CartanType::A | CartanType::C) {
        return Err(Error::Unsupported(format!("closed form A/C on type {}", orbit.cartan())));
    }
    let cg = orbit.canonical();
    let od = cg.oriented();
    let m = od.rank();
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    if cg.reaches(p, q) {
        let mut stack = vec![p];
        let mut hs = Vec::new();
        monotone_dfs(orbit, q, &mut stack, &mut hs, &mut found);
    }
    let lam = od.lambda_minus_frac(q);
    let wq = orbit.element(q);
    let mut paths = Vec::with_capacity(found.len());
    let mut terms = Vec::with_capacity(found.len());
    for (vs, hs) in found {
        let mut term = lam.clone();
        for (i, &h) in hs.iter().enumerate() {
            let x = Weight::unit(m, h - 1);
            let d = &orbit.element(vs[i]).act(&x) - &wq.act(&x);
            term = &term * &LinFrac::inv_weight(&d)?;
        }
        terms.push(term.clone());
        paths.push(TowerPath {
            certificate: certify_term(&term, od.xi()),
            monotone: true,
            term: PathTerm {
                path: vs.iter().map(|&v| od.id(v).to_string()).collect(),
                vertices: Path(vs),
                term,
                levels: hs,
            },
        });
    }
    let value = linfrac_sum_to_poly(&terms, m)?;
    Ok(TowerResult { value, paths })
}

fn monotone_dfs(
    orbit: &Orbit,
    q: usize,
    stack: &mut Vec<usize>,
    hs: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let v = *stack.last().unwrap();
    if v == q {
        out.push((stack.clone(), hs.clone()));
        return;
    }
    let cg = orbit.canonical();
    let floor = hs.last().copied().unwrap_or(0);
    for e in cg.out_edges(v) {
        let h = orbit.first_difference(v, e.dst).expect("distinct");
        if h < floor || !cg.reaches(e.dst, q) {
            continue;
        }
        if e.dst != q && orbit.first_difference(e.dst, q).is_some_and(|k| k < h) {
            continue;
        }
        stack.push(e.dst);
        hs.push(h);
        monotone_dfs(orbit, q, stack, hs, out);
        stack.pop();
        hs.pop();
    }
}

/// Flags of a horizontal path for types B and D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathClassification {
    pub complete: bool,
    /// `max {j : +-x_j both visited}`.
    pub k: Option<usize>,
    pub relevant: bool,
}

/// Classifies a base path given as signed codes `+-j` for `+-x_j`, ending
/// at `pi(s)` with code `s`. Type B also needs an `(-x_j, x_j)` step to be complete.
pub fn classify_path(cartan: CartanType, rank: usize, codes: &[i32], s: i32) -> PathClassification {
    let has = |c: i32| codes.contains(&c);
    let k = (1..=rank as i32).filter(|&j| has(j) && has(-j)).max().map(|j| j as usize);
    let flip_step = codes.windows(2).any(|w| w[0] == -w[1]);
    let both = has(s) && has(-s);
    let incomplete = match cartan {
        CartanType::B => both && !flip_step,
        _ => both,
    };
    let relevant = !incomplete || k.is_some_and(|k| k < rank && has(k as i32 + 1));
    PathClassification { complete: !incomplete, k, relevant }
}

/// A horizontal path with its `P` and, when relevant, `Q`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberPath {
    pub path: Vec<String>,
    #[serde(skip)]
    pub vertices: Path,
    pub base: Vec<String>,
    #[serde(skip)]
    pub codes: Vec<i32>,
    #[serde(flatten)]
    pub class: PathClassification,
    pub p: LinFrac,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<LinFrac>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<TypedCertificate>,
}

/// Contribution of one fiber point `s` to `alpha_p(q)`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberTerm {
    pub s: String,
    pub paths: Vec<FiberPath>,
    /// Sum of `Q` over relevant paths.
    pub sum: Poly,
    /// `hat-alpha_s(q)` on the fiber.
    pub fiber_value: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberResult {
    pub value: Poly,
    pub terms: Vec<FiberTerm>,
}

/// Pairing of incomplete paths by the `+-x_{k+1}` swap at one target.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PairingReport {
    pub target: String,
    pub complete: usize,
    pub pairs: usize,
    /// Incomplete paths without a unique partner.
    pub unpaired: Vec<Vec<String>>,
    /// Pairs with `P(g) + P(g') != Q(g)`.
    pub sum_failures: Vec<(Vec<String>, Vec<String>)>,
}

impl PairingReport {
    pub fn is_ok(&self) -> bool {
        self.unpaired.is_empty() && self.sum_failures.is_empty()
    }
}

/// Endpoint of a lifted base path computed two ways.
#[derive(Clone, Debug)]
pub struct LiftedPath {
    pub path: Path,
    /// `s_{beta_k} .. s_{beta_1}` applied to the start.
    pub by_reflections: usize,
}

/// Lifts a path in the level-1 graph starting at `pi(p)` by following the
/// unique edge over each base edge.
pub fn lift_path(orbit: &Orbit, p: usize, base_path: &[usize]) -> Result<LiftedPath> {
    let g = orbit.graph();
    let base = orbit.level_graph(1);
    let proj: Vec<usize> = orbit.tower().levels[0]
        .projection
        .iter()
        .map(|id| base.vertex_index(id))
        .collect::<Result<_>>()?;
    if base_path.first() != Some(&proj[p]) {
        return Err(Error::InvalidSpec("base path does not start at pi(p)".into()));
    }
    let mut vs = vec![p];
    let mut moment = g.moment(p).clone();
    for w in base_path.windows(2) {
        let beta = base.weight(w[0], w[1]).ok_or_else(|| Error::NotAnEdge(base.id(w[0]).into(), base.id(w[1]).into()))?;
        moment = super::reflect(&moment, beta)?;
        let v = *vs.last().unwrap();
        let next: Vec<usize> = g.neighbors(v).filter(|&u| proj[u] == w[1]).collect();
        match next.as_slice() {
            [u] => vs.push(*u),
            _ => return Err(Error::InvalidSpec(format!("{} lifts of a base edge at `{}`", next.len(), g.id(v)))),
        }
    }
    let by_reflections = (0..g.num_vertices())
        .find(|&i| g.moment(i) == &moment)
        .ok_or_else(|| Error::UnknownVertex(moment.to_string()))?;
    Ok(LiftedPath { path: Path(vs), by_reflections })
}

/// Type-specific engine for one orbit.
pub enum TypedEngine<'a> {
    Flag(&'a Orbit),
    Fiber(Box<FiberEngine<'a>>),
    Triality(Box<TrialityEngine<'a>>),
    RankOne(&'a Orbit),
}

/// Output of [`TypedEngine::restriction`].
#[derive(Clone, Debug)]
pub enum TypedResult {
    Flag(TowerResult),
    Fiber(FiberResult),
    /// Value, with the `A_3` ledger in `A_3` coordinates.
    Triality(Poly, TowerResult),
    RankOne(Poly),
}

impl TypedResult {
    pub fn value(&self) -> &Poly {
        match self {
            TypedResult::Flag(r) => &r.value,
            TypedResult::Fiber(r) => &r.value,
            TypedResult::Triality(v, _) => v,
            TypedResult::RankOne(v) => v,
        }
    }
}

impl<'a> TypedEngine<'a> {
    pub fn new(orbit: &'a Orbit) -> Result<Self> {
        match (orbit.cartan(), orbit.rank()) {
            (CartanType::A | CartanType::C, _) => Ok(TypedEngine::Flag(orbit)),
            (CartanType::B, 1) => Ok(TypedEngine::RankOne(orbit)),
            (CartanType::D, 3) => Ok(TypedEngine::Triality(Box::new(TrialityEngine::new(orbit)?))),
            (CartanType::D, n) if n < 3 => Err(Error::Unsupported(format!("typed formula for D{n}"))),
            _ => Ok(TypedEngine::Fiber(Box::new(FiberEngine::new(orbit)?))),
        }
    }

    pub fn restriction(&self, p: usize, q: usize) -> Result<TypedResult> {
        match self {
            TypedEngine::Flag(o) => Ok(TypedResult::Flag(formula_ac(o, p, q)?)),
            TypedEngine::Fiber(f) => Ok(TypedResult::Fiber(f.restriction(p, q)?)),
            TypedEngine::Triality(t) => {
                let r = t.a_result(p, q)?;
                Ok(TypedResult::Triality(r.value.substitute(&t.subs)?, r))
            }
            TypedEngine::RankOne(o) => Ok(TypedResult::RankOne(rank_one(o, p, q))),
        }
    }

    pub fn row(&self, p: usize) -> Result<Vec<Poly>> {
        match self {
            TypedEngine::Fiber(f) => f.row(p),
            TypedEngine::Triality(t) => {
                (0..t.orbit.num_vertices()).map(|q| t.a_result(p, q)?.value.substitute(&t.subs)).collect()
            }
            _ => {
                let n = self.orbit().num_vertices();
                (0..n).map(|q| Ok(self.restriction(p, q)?.value().clone())).collect()
            }
        }
    }

    pub fn orbit(&self) -> &Orbit {
        match self {
            TypedEngine::Flag(o) | TypedEngine::RankOne(o) => o,
            TypedEngine::Fiber(f) => f.orbit,
            TypedEngine::Triality(t) => t.orbit,
        }
    }

    pub fn table(&self, parallel: bool) -> Result<RestrictionTable> {
        let orbit = self.orbit();
        let n = orbit.num_vertices();
        let ids = (0..n).map(|i| orbit.id(i).to_string()).collect();
        let mut t = RestrictionTable::zeros(ids, orbit.oriented().rank());
        let rows: Vec<Vec<Poly>> = if parallel {
            (0..n).into_par_iter().map(|p| self.row(p)).collect::<Result<_>>()?
        } else {
            (0..n).map(|p| self.row(p)).collect::<Result<_>>()?
        };
        for (p, r) in rows.into_iter().enumerate() {
            t.set_row(p, r);
        }
        Ok(t)
    }

    /// Certificates of every contributing path term over all pairs: A/C
    /// terms need a positive integer constant, B terms 1 or 2, D terms 1.
    /// Returns `(terms checked, failures)`.
    pub fn certify_all(&self) -> Result<(usize, Vec<String>)> {
        let mut checked = 0;
        let mut failed = Vec::new();
        match self {
            TypedEngine::Flag(o) => {
                let n = o.num_vertices();
                for p in 0..n {
                    for q in 0..n {
                        for t in formula_ac(o, p, q)?.paths {
                            checked += 1;
                            if !certify_typed(o, &t.term.term, &positive_integer).passed() {
                                failed.push(t.term.path.join(" -> "));
                            }
                        }
                    }
                }
            }
            TypedEngine::Fiber(f) => {
                for p in 0..f.orbit.num_vertices() {
                    for path in f.paths_from(p)? {
                        if let Some(c) = &path.certificate {
                            checked += 1;
                            if !c.passed() {
                                failed.push(path.path.join(" -> "));
                            }
                        }
                    }
                }
                let (c, fl) = TypedEngine::new(&f.fiber.orbit)?.certify_all()?;
                checked += c;
                failed.extend(fl.into_iter().map(|s| format!("fiber: {s}")));
            }
            TypedEngine::Triality(t) => {
                let (c, fl) = TypedEngine::Flag(&t.a3).certify_all()?;
                checked += c;
                failed.extend(fl.into_iter().map(|s| format!("A3: {s}")));
            }
            TypedEngine::RankOne(_) => {}
        }
        Ok((checked, failed))
    }
}

fn rank_one(o: &Orbit, p: usize, q: usize) -> Poly {
    let m = o.oriented().rank();
    if p == q {
        o.oriented().lambda_minus(q).clone()
    } else if o.length(p) < o.length(q) {
        Poly::one(m)
    } else {
        Poly::zero(m)
    }
}

/// The standard orbit of one rank lower with its typed table.
pub struct StdFiber {
    pub orbit: Orbit,
    pub table: RestrictionTable,
}

/// Fiber decomposition over `pi: w -> w(mu^1)` for types B and D.
pub struct FiberEngine<'a> {
    orbit: &'a Orbit,
    base: BaseProjection,
    /// `+-j` for each base vertex `+-x_j`.
    codes: Vec<i32>,
    /// Index of each top vertex in the standard fiber orbit.
    local: Vec<usize>,
    /// Per base vertex, the fiber table in the ambient coordinates, indexed by local ids.
    fiber_tables: Vec<Vec<Vec<Poly>>>,
    fiber: StdFiber,
}

fn base_code(w: &Weight) -> Result<i32> {
    let nz: Vec<usize> = (0..w.rank()).filter(|&i| !w.coord(i).is_zero()).collect();
    match nz.as_slice() {
        [i] if w.coord(*i).abs().is_one() => Ok(w.coord(*i).signum() * (*i as i32 + 1)),
        _ => Err(Error::InvalidSpec(format!("{w} is not +-x_j"))),
    }
}

impl<'a> FiberEngine<'a> {
    pub fn new(orbit: &'a Orbit) -> Result<Self> {
        let cartan = orbit.cartan();
        let n = orbit.rank();
        if !matches!(cartan, CartanType::B | CartanType::D) || n < 2 {
            return Err(Error::Unsupported(format!("fiber formula on {cartan}{n}")));
        }
        let base_od = OrientedGraphData::new(orbit.level_graph(1).clone(), orbit.xi().clone())?;
        let codes = (0..base_od.num_vertices()).map(|b| base_code(base_od.graph().moment(b))).collect::<Result<Vec<_>>>()?;
        let base = BaseProjection::from_level(base_od, &orbit.tower().levels[0])?;
        let fiber_orbit = Orbit::new(OrbitSpec::new(cartan, n - 1)?)?;
        let table = TypedEngine::new(&fiber_orbit)?.table(false)?;
        let fiber = StdFiber { orbit: fiber_orbit, table };

        let mut local = Vec::with_capacity(orbit.num_vertices());
        for w in orbit.elements() {
            local.push(fiber.orbit.index_of(&fiber_element(cartan, n, w)).ok_or_else(|| {
                Error::InvalidSpec(format!("no fiber element for {w}"))
            })?);
        }
        let nb = base.base.num_vertices();
        let fsize = fiber.orbit.num_vertices();
        let mut fiber_tables = Vec::with_capacity(nb);
        for b in 0..nb {
            let c = codes[b];
            // pi(w) = -w(x_1), so w(1) = -c.
            let subs = fiber_substitution(cartan, n, c.unsigned_abs() as usize, -c.signum());
            let mut t = vec![vec![Poly::zero(n); fsize]; fsize];
            for (i, row) in t.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    let x = fiber.table.get(i, j);
                    if !x.is_zero() {
                        *v = x.substitute(&subs)?;
                    }
                }
            }
            fiber_tables.push(t);
        }
        Ok(FiberEngine { orbit, base, codes, local, fiber_tables, fiber })
    }

    pub fn orbit(&self) -> &Orbit {
        self.orbit
    }

    pub fn base(&self) -> &BaseProjection {
        &self.base
    }

    pub fn fiber(&self) -> &StdFiber {
        &self.fiber
    }

    /// `hat-alpha_s(q)` for `s`, `q` over the same base vertex.
    pub fn fiber_value(&self, s: usize, q: usize) -> Result<&Poly> {
        let b = self.base.proj[q];
        if self.base.proj[s] != b {
            return Err(Error::InvalidSpec("points in different fibers".into()));
        }
        Ok(&self.fiber_tables[b][self.local[s]][self.local[q]])
    }

    /// All horizontal paths from `p`, classified, with `P` and `Q`.
    pub fn paths_from(&self, p: usize) -> Result<Vec<FiberPath>> {
        let cg = self.orbit.canonical();
        let od = cg.oriented();
        let bg = self.base.base.graph();
        let cartan = self.orbit.cartan();
        let n = self.orbit.rank();
        let m = od.rank();
        let mut out = Vec::new();
        for path in horizontal_paths(cg, &self.base, p) {
            let s = path.last();
            let bv: Vec<usize> = path.vertices().iter().map(|&v| self.base.proj[v]).collect();
            let codes: Vec<i32> = bv.iter().map(|&b| self.codes[b]).collect();
            let sc = self.codes[self.base.proj[s]];
            let class = classify_path(cartan, n, &codes, sc);
            let p_term = defining_p(cg, &self.base, &path)?;
            let q_term = if !class.relevant {
                None
            } else if class.complete {
                Some(p_term.clone())
            } else {
                let k = class.k.expect("incomplete path has k");
                let ps = bg.moment(self.base.proj[s]);
                let num = LinFrac::from_weight(ps).scale(&Rational::from_integer(2));
                let den = ps + &Weight::unit(m, k);
                Some(&(&p_term * &num) * &LinFrac::inv_weight(&den)?)
            };
            let certificate = q_term.as_ref().map(|t| {
                let ok = |c: &Rational| match cartan {
                    CartanType::B => c.is_one() || *c == Rational::from_integer(2),
                    _ => c.is_one(),
                };
                certify_typed(self.orbit, t, &ok)
            });
            out.push(FiberPath {
                path: path.vertices().iter().map(|&v| od.id(v).to_string()).collect(),
                base: bv.iter().map(|&b| bg.moment(b).to_string()).collect(),
                vertices: path,
                codes,
                class,
                p: p_term,
                q: q_term,
                certificate,
            });
        }
        Ok(out)
    }

    /// `S(p, s) = sum of Q over relevant paths p -> s`, for every reachable `s`.
    fn sums(&self, paths: &[FiberPath]) -> Result<BTreeMap<usize, Poly>> {
        let m = self.orbit.oriented().rank();
        let mut sums: BTreeMap<usize, Poly> = BTreeMap::new();
        for fp in paths {
            if let Some(q) = &fp.q {
                let e = sums.entry(fp.vertices.last()).or_insert_with(|| Poly::zero(m));
                *e = &*e + &q.to_poly(m)?;
            }
        }
        Ok(sums)
    }

    pub fn row(&self, p: usize) -> Result<Vec<Poly>> {
        let n = self.orbit.num_vertices();
        let m = self.orbit.oriented().rank();
        let sums = self.sums(&self.paths_from(p)?)?;
        let mut row = vec![Poly::zero(m); n];
        for (q, out) in row.iter_mut().enumerate() {
            let b = self.base.proj[q];
            for (&s, sum) in &sums {
                if self.base.proj[s] != b || sum.is_zero() {
                    continue;
                }
                let f = &self.fiber_tables[b][self.local[s]][self.local[q]];
                if !f.is_zero() {
                    *out = &*out + &(sum * f);
                }
            }
        }
        Ok(row)
    }

    pub fn restriction(&self, p: usize, q: usize) -> Result<FiberResult> {
        let m = self.orbit.oriented().rank();
        let od = self.orbit.oriented();
        let b = self.base.proj[q];
        let mut grouped: BTreeMap<usize, Vec<FiberPath>> = BTreeMap::new();
        for fp in self.paths_from(p)? {
            let s = fp.vertices.last();
            if self.base.proj[s] == b {
                grouped.entry(s).or_default().push(fp);
            }
        }
        let mut value = Poly::zero(m);
        let mut terms = Vec::new();
        for (s, paths) in grouped {
            let sum = self.sums(&paths)?.remove(&s).unwrap_or_else(|| Poly::zero(m));
            let fiber_value = self.fiber_value(s, q)?.clone();
            value = &value + &(&sum * &fiber_value);
            terms.push(FiberTerm { s: od.id(s).to_string(), paths, sum, fiber_value });
        }
        Ok(FiberResult { value, terms })
    }

    /// Pairs incomplete paths by the `+-x_{k+1}` swap and checks
    /// `P(g) + P(g') = Q(g)`, for every target `s` reached from some start.
    pub fn pairing_all(&self) -> Result<Vec<PairingReport>> {
        let n = self.orbit.num_vertices();
        let mut by_target: BTreeMap<usize, Vec<FiberPath>> = BTreeMap::new();
        let mut per_start = Vec::with_capacity(n);
        for p in 0..n {
            per_start.push(self.paths_from(p)?);
        }
        let mut reports = Vec::new();
        for s in 0..n {
            by_target.clear();
            let mut rep = PairingReport { target: self.orbit.id(s).to_string(), ..Default::default() };
            for paths in &per_start {
                let mine: Vec<&FiberPath> = paths.iter().filter(|fp| fp.vertices.last() == s).collect();
                self.pair_group(&mine, &mut rep)?;
            }
            reports.push(rep);
        }
        Ok(reports)
    }

    /// Pairing at one target over every start.
    pub fn pairing_check(&self, s: usize) -> Result<PairingReport> {
        let mut rep = PairingReport { target: self.orbit.id(s).to_string(), ..Default::default() };
        for p in 0..self.orbit.num_vertices() {
            if !self.orbit.canonical().reaches(p, s) {
                continue;
            }
            let paths = self.paths_from(p)?;
            let mine: Vec<&FiberPath> = paths.iter().filter(|fp| fp.vertices.last() == s).collect();
            self.pair_group(&mine, &mut rep)?;
        }
        Ok(rep)
    }

    fn pair_group(&self, paths: &[&FiberPath], rep: &mut PairingReport) -> Result<()> {
        let m = self.orbit.oriented().rank();
        let key = |fp: &FiberPath| {
            let mut v = fp.codes.clone();
            v.sort();
            v
        };
        let mut relevant = Vec::new();
        let mut others: Vec<(&FiberPath, bool)> = Vec::new();
        for &fp in paths {
            if fp.class.complete {
                rep.complete += 1;
            } else if fp.class.relevant {
                relevant.push(fp);
            } else {
                others.push((fp, false));
            }
        }
        for g in relevant {
            let k = g.class.k.expect("incomplete") as i32;
            let mut want: Vec<i32> = g.codes.iter().map(|&c| if c == k + 1 { -(k + 1) } else { c }).collect();
            want.sort();
            let hits: Vec<usize> = (0..others.len()).filter(|&i| key(others[i].0) == want).collect();
            let [i] = hits.as_slice() else {
                rep.unpaired.push(g.path.clone());
                continue;
            };
            let (g2, used) = &mut others[*i];
            if *used {
                rep.unpaired.push(g.path.clone());
                continue;
            }
            *used = true;
            rep.pairs += 1;
            let lhs = linfrac_sum_to_poly(&[g.p.clone(), g2.p.clone()], m)?;
            let rhs = g.q.as_ref().expect("relevant").to_poly(m)?;
            if lhs != rhs {
                rep.sum_failures.push((g.path.clone(), g2.path.clone()));
            }
        }
        for (g2, used) in others {
            if !used {
                rep.unpaired.push(g2.path.clone());
            }
        }
        Ok(())
    }
}

/// The element of the rank `n - 1` group indexing `w(mu^n)` inside its fiber:
/// drop position 1, relabel the remaining coordinates in order, and for D
/// flip the last coordinate when the sign parity became odd.
fn fiber_element(cartan: CartanType, n: usize, w: &SignedPerm) -> SignedPerm {
    let j = w.one_line()[0].unsigned_abs() as i32;
    let mut v: Vec<i32> = w.one_line()[1..]
        .iter()
        .map(|&x| {
            let a = x.abs();
            x.signum() * if a > j { a - 1 } else { a }
        })
        .collect();
    if cartan == CartanType::D && v.iter().filter(|&&x| x < 0).count() % 2 == 1 {
        let last = n as i32 - 1;
        for x in &mut v {
            if x.abs() == last {
                *x = -*x;
            }
        }
    }
    SignedPerm::from_one_line(&v).expect("relabelled signed permutation")
}

/// Images of `y_1 .. y_{n-1}` in `x_1 .. x_n` for the fiber where `w(1) = sign * j`.
fn fiber_substitution(cartan: CartanType, n: usize, j: usize, sign: i32) -> Vec<Poly> {
    (1..n)
        .map(|k| {
            let x = if k < j { k } else { k + 1 };
            let v = Poly::var(n, x - 1);
            if cartan == CartanType::D && sign < 0 && k == n - 1 {
                -&v
            } else {
                v
            }
        })
        .collect()
}

/// `D_3` through `A_3`: the isomorphism `e_1 -> (x1+x2+x3)/2`,
/// `e_2 -> (x1-x2-x3)/2`, `e_3 -> (-x1+x2-x3)/2`, `e_4 -> (-x1-x2+x3)/2`.
pub struct TrialityEngine<'a> {
    orbit: &'a Orbit,
    a3: Orbit,
    /// A_3 vertex of each D_3 vertex.
    sigma: Vec<usize>,
    subs: Vec<Poly>,
}

const TRIALITY: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

fn triality_map(v: &Weight) -> Weight {
    let half = Rational::new(1, 2).expect("nonzero");
    let mut out = vec![Rational::zero(); 3];
    for (a, c) in v.coords().iter().enumerate() {
        for (i, o) in out.iter_mut().enumerate() {
            *o = &*o + &(&(c * &Rational::from_integer(TRIALITY[a][i])) * &half);
        }
    }
    Weight::new(out)
}

impl<'a> TrialityEngine<'a> {
    pub fn new(orbit: &'a Orbit) -> Result<Self> {
        if orbit.cartan() != CartanType::D || orbit.rank() != 3 {
            return Err(Error::Unsupported("triality needs D3".into()));
        }
        let a3 = Orbit::standard(CartanType::A, 3)?;
        let simple_a = a3.root_system().simple_roots().to_vec();
        let images: Vec<Weight> = simple_a.iter().map(triality_map).collect();
        let mut sigma = Vec::with_capacity(orbit.num_vertices());
        for w in orbit.elements() {
            let target: Vec<Weight> = images.iter().map(|r| w.act(r)).collect();
            let hit = (0..a3.num_vertices())
                .find(|&i| simple_a.iter().zip(&target).all(|(a, t)| &triality_map(&a3.element(i).act(a)) == t))
                .ok_or_else(|| Error::InvalidSpec(format!("no A3 element for {w}")))?;
            sigma.push(hit);
        }
        let half = Rational::new(1, 2).expect("nonzero");
        let subs = TRIALITY
            .iter()
            .map(|row| Poly::linear(&Weight::new(row.iter().map(|&c| &Rational::from_integer(c) * &half).collect())))
            .collect();
        Ok(TrialityEngine { orbit, a3, sigma, subs })
    }

    pub fn a3(&self) -> &Orbit {
        &self.a3
    }

    /// A_3 vertex matched to D_3 vertex `p`.
    pub fn sigma(&self, p: usize) -> usize {
        self.sigma[p]
    }

    fn a_result(&self, p: usize, q: usize) -> Result<TowerResult> {
        formula_ac(&self.a3, self.sigma[p], self.sigma[q])
    }
}
