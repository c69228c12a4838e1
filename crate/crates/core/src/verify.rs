//! Executable checks of the structural identities, usable from tests and
//! from the command line, over fixed seeds or random instances.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::cases::universal_seed;
use crate::composite::{aggregates, composite_mutate_matrix, enlarge, shrink, CompositeSeed};
use crate::error::{Error, Result};
use crate::invariants::{
    composite_step_closed_form, composite_trace, generalized_invariants, offsets, separation_composite,
    separation_generalized, shifted, sign_coherent_blocks, CompositeInvariants, FTable, GeneralizedInvariants,
};
use crate::pattern::{render_matrix, ExchangeMatrix, GeneralizedSeed, TreeWord};
use crate::polyring::{elementary_reduce, psi_hat, LaurentPolynomial, RationalFunction};
use crate::semifield::{psi, Flavor, SemifieldElement};

/// Check names, sorted.
pub const CHECK_NAMES: [&str; 8] = [
    "cg-relations",
    "enlargement",
    "f-relation",
    "f-symmetry",
    "laurent-positive",
    "separation",
    "x-realization",
    "y-realization",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    CgRelations,
    Enlargement,
    FRelation,
    FSymmetry,
    LaurentPositive,
    Separation,
    XRealization,
    YRealization,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::CgRelations,
        Check::Enlargement,
        Check::FRelation,
        Check::FSymmetry,
        Check::LaurentPositive,
        Check::Separation,
        Check::XRealization,
        Check::YRealization,
    ];

    pub fn name(self) -> &'static str {
        CHECK_NAMES[Check::ALL.iter().position(|&c| c == self).unwrap()]
    }

    /// Whether the check is meaningful for seeds over `flavor`; only the
    /// x-level realization needs universal coefficients.
    pub fn applies_to(self, flavor: Flavor) -> bool {
        self != Check::XRealization || flavor == Flavor::Universal
    }

    pub fn parse(name: &str) -> Result<Check> {
        CHECK_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| Check::ALL[i])
            .ok_or_else(|| Error::UnknownCheck {
                name: name.to_string(),
                valid: CHECK_NAMES.join(", "),
            })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one check at one vertex. `count` is the number of
/// individual equalities tested.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub instance: String,
    pub word: TreeWord,
    pub passed: bool,
    pub witness: Option<String>,
    pub count: usize,
    pub elapsed: Duration,
}

impl CheckReport {
    /// One line, without timing (stable across runs).
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {} {} {} count={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.instance,
            self.word,
            self.count
        );
        if let Some(w) = &self.witness {
            s.push_str(" witness: ");
            s.push_str(w);
        }
        s
    }
}

/// Tally of equalities; the first failure is kept as witness.
#[derive(Default)]
struct Tally {
    count: usize,
    witness: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }
}

/// A seed to check, with a short label for reports.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub seed: GeneralizedSeed,
}

impl Instance {
    pub fn new(label: impl Into<String>, seed: GeneralizedSeed) -> Self {
        Instance {
            label: label.into(),
            seed,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.seed.degrees()
    }
}

/// Runs `check` on `inst` at `w`. Errors inside the check make it fail
/// with the error as witness.
pub fn run_check(check: Check, inst: &Instance, w: &TreeWord) -> CheckReport {
    let start = Instant::now();
    let mut tally = Tally::default();
    let res = match check {
        Check::Enlargement => enlargement(inst, w, &mut tally),
        Check::YRealization => y_realization(inst, w, &mut tally),
        Check::XRealization => x_realization(inst, w, &mut tally),
        Check::CgRelations => cg_relations(inst, w, &mut tally),
        Check::FRelation => f_relation(inst, w, &mut tally),
        Check::FSymmetry => f_symmetry(inst, w, &mut tally),
        Check::LaurentPositive => laurent_positive(inst, w, &mut tally),
        Check::Separation => separation(inst, w, &mut tally),
    };
    if let Err(e) = res {
        tally.witness.get_or_insert(format!("error: {e}"));
    }
    let passed = tally.witness.is_none() && tally.count > 0;
    if tally.count == 0 && tally.witness.is_none() {
        tally.witness = Some("no equalities tested".into());
    }
    CheckReport {
        name: check.name().to_string(),
        instance: inst.label.clone(),
        word: w.clone(),
        passed,
        witness: tally.witness,
        count: tally.count,
        elapsed: start.elapsed(),
    }
}

/// Generalized and composite invariants at the end of a word, shared by
/// the checks through a small process-wide cache.
struct Traces {
    ft: Arc<FTable>,
    generalized: GeneralizedInvariants,
    composite: Vec<CompositeInvariants>,
}

type TraceKey = (Vec<Vec<i64>>, Vec<usize>, Vec<usize>);

const TRACE_CACHE_LIMIT: usize = 64;

fn traces(inst: &Instance, w: &TreeWord) -> Result<Arc<Traces>> {
    static CACHE: OnceLock<Mutex<FxHashMap<TraceKey, Arc<Traces>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let r = inst.degrees();
    let key = (inst.seed.b().rows().to_vec(), r.clone(), w.dirs().to_vec());
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let ft = FTable::new(&r)?;
    let generalized = generalized_invariants(inst.seed.b(), &r, w, &ft)?;
    let composite = composite_trace(inst.seed.b(), &r, w, &ft)?;
    let t = Arc::new(Traces {
        ft,
        generalized,
        composite,
    });
    let mut guard = cache.lock().unwrap();
    if guard.len() >= TRACE_CACHE_LIMIT {
        guard.clear();
    }
    guard.insert(key, t.clone());
    Ok(t)
}

fn enlargement(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    let r = inst.degrees();
    let mut b = inst.seed.b().clone();
    let mut big = enlarge(&b, &r);
    t.check(shrink(&big, &r).as_ref() == Some(&b), || format!("blocks of {}", big.render()));
    for &k in w.dirs() {
        let next_b = b.mutate(&r, k)?;
        let direct = composite_mutate_matrix(&enlarge(&b, &r), &r, k)?;
        let expected = enlarge(&next_b, &r);
        t.check(direct == expected, || {
            format!("k={}: {} vs {}", k + 1, direct.render(), expected.render())
        });
        big = composite_mutate_matrix(&big, &r, k)?;
        t.check(big == expected, || format!("running {} vs {}", big.render(), expected.render()));
        b = next_b;
    }
    Ok(())
}

fn render_elt(e: &SemifieldElement, inst: &Instance) -> String {
    e.render(inst.seed.vars())
}

fn y_realization(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    let g = inst.seed.walk(w)?;
    let c = CompositeSeed::initial(&inst.seed)?.walk(w)?;
    let sym = c.psi_symbols()?;
    let base = inst.seed.kind();
    let bar = c.extended().clone();
    let table = c.table().clone();
    let nv = table.nvars();
    for i in 0..g.rank() {
        let r = g.degrees()[i];
        let mut prod = SemifieldElement::one(&bar);
        for l in 0..r {
            prod = prod.mul(c.y(i, l))?;
        }
        let lhs = psi(&prod, &sym, base)?;
        let rhs = g.y()[i].pow(r as i64);
        t.check(lhs.equals(&rhs), || {
            format!("y{}: psi(prod) = {} vs {}", i + 1, render_elt(&lhs, inst), render_elt(&rhs, inst))
        });

        let yg = g.y()[i].embed(&bar)?;
        let mut first: Option<SemifieldElement> = None;
        for l in 0..r {
            let s = SemifieldElement::universal(&bar, RationalFunction::var(nv, table.splitting[i][l]))?;
            let q = c.y(i, l).div(&s.pow(c.sigma()[i] as i64).mul(&yg)?)?;
            let img = psi(&q, &sym, base)?;
            t.check(img.is_one(), || {
                format!("y{}_{}: psi of quotient is {}", i + 1, l + 1, render_elt(&img, inst))
            });
            match &first {
                None => first = Some(q),
                Some(f) => t.check(f.equals(&q), || {
                    format!("y{}: quotient depends on l ({} vs {})", i + 1, render_elt(f, inst), render_elt(&q, inst))
                }),
            }
        }
    }
    Ok(())
}

fn x_realization(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    if inst.seed.kind().flavor() != Flavor::Universal {
        return Err(Error::Unsupported(
            "x-realization needs universal coefficients".into(),
        ));
    }
    let g = inst.seed.walk(w)?;
    let c = CompositeSeed::initial(&inst.seed)?.walk(w)?;
    let sym = c.psi_hat_symbols()?;
    let agg = aggregates(&c, &g)?;
    let vars = inst.seed.vars();
    for i in 0..g.rank() {
        let img = psi_hat(&agg.x[i], &sym)?;
        t.check(!img.is_zero(), || format!("X{} maps to 0", i + 1));
        t.check(img.equals(&g.x()[i]), || {
            format!("x{}: {} vs {}", i + 1, img.render(vars), g.x()[i].render(vars))
        });
    }
    Ok(())
}

fn cg_relations(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    let r = inst.degrees();
    let n = r.len();
    let tr = traces(inst, w)?;
    let gi = &tr.generalized;
    let trace = &tr.composite;
    let ci = trace.last().unwrap();
    let off = offsets(&r);
    let sigma = &ci.sigma;

    for step in trace.iter() {
        t.check(sign_coherent_blocks(&step.c, &r), || {
            format!("C^c at {} is not block sign-coherent: {}", step.word, render_matrix(&step.c))
        });
    }
    let ct = shifted(&ci.c, &r, sigma);
    let gt = shifted(&ci.g, &r, sigma);
    t.check(ct.is_some(), || format!("shifted C^c depends on l, m: {}", render_matrix(&ci.c)));
    t.check(gt.is_some(), || format!("shifted G^c depends on l, m: {}", render_matrix(&ci.g)));
    let (Some(ct), Some(gt)) = (ct, gt) else {
        return Ok(());
    };
    for i in 0..n {
        for j in 0..n {
            let (ri, rj) = (r[i] as i64, r[j] as i64);
            let delta = (i == j) as i64;
            let cg = gi.c[i][j];
            let gg = gi.g[i][j];
            for m0 in 0..r[j] {
                let v: i64 = (0..r[i]).map(|l| ci.c[off[i] + l][off[j] + m0]).sum();
                t.check(v == cg, || format!("c{}{}: column sum {} vs {}", i + 1, j + 1, v, cg));
                let v: i64 = (0..r[i]).map(|l| ci.g[off[i] + l][off[j] + m0]).sum();
                t.check(v * rj == gg * ri, || format!("g{}{}: scaled column sum {} vs {}", i + 1, j + 1, v, gg));
            }
            for l0 in 0..r[i] {
                let v: i64 = (0..r[j]).map(|m| ci.c[off[i] + l0][off[j] + m]).sum();
                t.check(v * ri == cg * rj, || format!("c{}{}: scaled row sum {} vs {}", i + 1, j + 1, v, cg));
                let v: i64 = (0..r[j]).map(|m| ci.g[off[i] + l0][off[j] + m]).sum();
                t.check(v == gg, || format!("g{}{}: row sum {} vs {}", i + 1, j + 1, v, gg));
            }
            let v = ri * ct[i][j] + sigma[j] as i64 * delta;
            t.check(v == cg, || format!("c{}{}: shifted form {} vs {}", i + 1, j + 1, v, cg));
            let v = rj * gt[i][j] + sigma[j] as i64 * delta;
            t.check(v == gg, || format!("g{}{}: shifted form {} vs {}", i + 1, j + 1, v, gg));
        }
    }
    Ok(())
}

/// `ỹ_p ↦ s_q y_{block(q)}` with `q = perm[p]` on flat composite indices.
fn specialize_sy(p: &LaurentPolynomial, perm: &[usize], ft: &FTable) -> LaurentPolynomial {
    let yt = ft.flat_y_tilde();
    let s: Vec<usize> = ft.s.iter().flatten().copied().collect();
    let block: Vec<usize> = ft
        .degrees
        .iter()
        .enumerate()
        .flat_map(|(j, &r)| std::iter::repeat_n(j, r))
        .collect();
    p.map_monomials(ft.nvars(), |e| {
        let mut out = e.to_vec();
        for (pidx, &v) in yt.iter().enumerate() {
            let k = e[v];
            if k != 0 {
                out[v] -= k;
                let q = perm[pidx];
                out[s[q]] += k;
                out[ft.y[block[q]]] += k;
            }
        }
        out
    })
}

/// Rewrites a polynomial symmetric in the splitting blocks `which` in
/// their elementary symbols and sets `e_{jl} = z_{jl}`, `e_{j r_j} = 1`.
fn specialize_elementary(p: &LaurentPolynomial, ft: &FTable, which: &[usize]) -> Result<LaurentPolynomial> {
    let blocks: Vec<Vec<usize>> = which.iter().map(|&j| ft.s[j].clone()).collect();
    let reduced = elementary_reduce(p, &blocks)?;
    Ok(reduced.map_monomials(ft.nvars(), |e| {
        let mut out = e.to_vec();
        for &j in which {
            let blk = &ft.s[j];
            for (l, &v) in blk.iter().enumerate() {
                let k = e[v];
                out[v] = 0;
                if l + 1 < blk.len() {
                    out[ft.z[j][l]] += k;
                }
            }
        }
        out
    }))
}

/// Products `∏ F(s y)|_{e=z}` with every factor symmetric in each
/// splitting block except `i`: those blocks are specialized factor by
/// factor, block `i` only on the product. Factors and products are
/// memoized, so forms that reduce to the same factor list share one
/// product.
struct Specializer<'a> {
    ft: &'a FTable,
    i: usize,
    factors: FxHashMap<(usize, Vec<usize>), Arc<LaurentPolynomial>>,
    products: FxHashMap<Vec<LaurentPolynomial>, LaurentPolynomial>,
}

impl<'a> Specializer<'a> {
    fn new(ft: &'a FTable, i: usize) -> Self {
        Specializer {
            ft,
            i,
            factors: FxHashMap::default(),
            products: FxHashMap::default(),
        }
    }

    fn factor(&mut self, f: &[LaurentPolynomial], il: usize, perm: &[usize]) -> Result<Arc<LaurentPolynomial>> {
        let key = (il, perm.to_vec());
        if let Some(g) = self.factors.get(&key) {
            return Ok(g.clone());
        }
        let others: Vec<usize> = (0..self.ft.degrees.len()).filter(|&j| j != self.i).collect();
        let g = Arc::new(specialize_elementary(&specialize_sy(&f[il], perm, self.ft), self.ft, &others)?);
        self.factors.insert(key, g.clone());
        Ok(g)
    }

    fn product(&mut self, f: &[LaurentPolynomial], parts: &[(usize, Vec<usize>)]) -> Result<LaurentPolynomial> {
        let mut list = Vec::with_capacity(parts.len());
        for (il, perm) in parts {
            list.push((*self.factor(f, *il, perm)?).clone());
        }
        list.sort();
        if let Some(p) = self.products.get(&list) {
            return Ok(p.clone());
        }
        let mut prod = LaurentPolynomial::one(self.ft.nvars());
        for g in &list {
            prod = prod.mul(g);
        }
        let out = specialize_elementary(&prod, self.ft, &[self.i])?;
        self.products.insert(list, out.clone());
        Ok(out)
    }
}

fn f_relation(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    let r = inst.degrees();
    let tr = traces(inst, w)?;
    let (ft, gi) = (&*tr.ft, &tr.generalized);
    let ci = tr.composite.last().unwrap();
    let off = offsets(&r);
    let total: usize = r.iter().sum();
    let id: Vec<usize> = (0..total).collect();
    for i in 0..r.len() {
        let mut sp = Specializer::new(ft, i);
        let parts: Vec<(usize, Vec<usize>)> = (0..r[i]).map(|l| (off[i] + l, id.clone())).collect();
        let lhs = sp.product(&ci.f, &parts)?;
        t.check(lhs == gi.f[i], || {
            format!("F{}: {} vs {}", i + 1, lhs.render(&ft.table), gi.f[i].render(&ft.table))
        });
        for l0 in 0..r[i] {
            let parts: Vec<(usize, Vec<usize>)> = (0..r[i])
                .map(|m| {
                    let mut tau = id.clone();
                    tau.swap(off[i] + l0, off[i] + m);
                    (off[i] + l0, tau)
                })
                .collect();
            let rhs = sp.product(&ci.f, &parts)?;
            t.check(rhs == gi.f[i], || {
                format!(
                    "F{} transposed at l={}: {} vs {}",
                    i + 1,
                    l0 + 1,
                    rhs.render(&ft.table),
                    gi.f[i].render(&ft.table)
                )
            });
        }
    }
    Ok(())
}

fn f_symmetry(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    let r = inst.degrees();
    let tr = traces(inst, w)?;
    let (ft, trace) = (&*tr.ft, &tr.composite);
    let off = offsets(&r);
    let total: usize = r.iter().sum();
    let yt = ft.flat_y_tilde();
    let nv = ft.nvars();
    for (step, &k) in w.dirs().iter().enumerate() {
        let closed = composite_step_closed_form(&trace[step], &r, &ft, k)?;
        for (l, f) in closed.iter().enumerate() {
            let actual = &trace[step + 1].f[off[k] + l];
            t.check(f.equals(&RationalFunction::from_poly(actual)), || {
                format!(
                    "F{}_{} at {}: closed form {} vs {}",
                    k + 1,
                    l + 1,
                    trace[step + 1].word,
                    f.render(&ft.table),
                    actual.render(&ft.table)
                )
            });
        }
    }
    let ci = trace.last().unwrap();
    for (j, &rj) in r.iter().enumerate() {
        for a in 0..rj {
            for b in a + 1..rj {
                let (p, q) = (off[j] + a, off[j] + b);
                let mut sigma: Vec<usize> = (0..total).collect();
                sigma.swap(p, q);
                for il in 0..total {
                    let lhs = ci.f[il].map_monomials(nv, |e| {
                        let mut out = e.to_vec();
                        out[yt[p]] = e[yt[q]];
                        out[yt[q]] = e[yt[p]];
                        out
                    });
                    let rhs = &ci.f[sigma[il]];
                    t.check(lhs == *rhs, || {
                        format!(
                            "swap ({},{})<->({},{}) on F index {}: {} vs {}",
                            j + 1,
                            a + 1,
                            j + 1,
                            b + 1,
                            il + 1,
                            lhs.render(&ft.table),
                            rhs.render(&ft.table)
                        )
                    });
                }
            }
        }
    }
    if t.count == 0 {
        // No composite step and no block of size two or more: the identity
        // permutation is the only block-preserving one.
        for il in 0..total {
            t.check(ci.f[il].is_one() || !w.is_empty(), || "initial F is not 1".into());
        }
    }
    Ok(())
}

fn laurent_positive(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    let g = inst.seed.walk(w)?;
    for i in 0..g.rank() {
        t.check(g.x_is_laurent_positive(i), || {
            format!("x{} = {}", i + 1, g.x()[i].render(g.vars()))
        });
    }
    Ok(())
}

fn separation(inst: &Instance, w: &TreeWord, t: &mut Tally) -> Result<()> {
    let tr = traces(inst, w)?;
    let ft = &*tr.ft;
    let g = inst.seed.walk(w)?;
    let (x, y) = separation_generalized(&inst.seed, &tr.generalized, ft)?;
    let vars = inst.seed.vars();
    for i in 0..g.rank() {
        t.check(x[i].equals(&g.x()[i]), || {
            format!("x{}: {} vs {}", i + 1, x[i].render(vars), g.x()[i].render(vars))
        });
        t.check(y[i].equals(&g.y()[i]), || {
            format!("y{}: {} vs {}", i + 1, y[i].render(vars), g.y()[i].render(vars))
        });
    }
    let c0 = CompositeSeed::initial(&inst.seed)?;
    let c = c0.walk(w)?;
    let (x, y) = separation_composite(&c0, tr.composite.last().unwrap(), ft)?;
    for il in 0..x.len() {
        t.check(x[il].equals(&c.inner().x()[il]), || {
            format!("x^c index {}: {} vs {}", il + 1, x[il].render(vars), c.inner().x()[il].render(vars))
        });
        t.check(y[il].equals(&c.inner().y()[il]), || {
            format!("y^c index {}: {} vs {}", il + 1, y[il].render(vars), c.inner().y()[il].render(vars))
        });
    }
    Ok(())
}

/// Exchange matrix with skew-symmetrizer `d` whose upper triangle is
/// `upper` (row by row); an entry whose partner `-d_i b_ij / d_j` is not an
/// integer in `[-2, 2]` is replaced by 0.
pub fn matrix_from_upper(d: &[i64], upper: &[i64]) -> ExchangeMatrix {
    let n = d.len();
    let mut rows = vec![vec![0i64; n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = *it.next().expect("upper triangle length");
            let num = -d[i] * v;
            if num % d[j] == 0 && (num / d[j]).abs() <= 2 {
                rows[i][j] = v;
                rows[j][i] = num / d[j];
            }
        }
    }
    ExchangeMatrix::new(rows, None).expect("skew-symmetrizable by construction")
}

/// Random exchange matrix of rank `1..=3` with entries in `[-2, 2]` and
/// degrees in `1..=3`.
pub fn random_matrix(rng: &mut ChaCha8Rng) -> (ExchangeMatrix, Vec<usize>) {
    let n = rng.gen_range(1..=3);
    let r: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let upper: Vec<i64> = (0..n * (n - 1) / 2).map(|_| rng.gen_range(-2..=2)).collect();
    (matrix_from_upper(&d, &upper), r)
}

/// Random reduced word over `n` directions of length exactly `len`.
pub fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> TreeWord {
    let mut dirs: Vec<usize> = Vec::with_capacity(len);
    if n == 1 {
        if len > 0 {
            dirs.push(0);
        }
        return TreeWord::new(dirs, n).unwrap();
    }
    for _ in 0..len {
        let mut k = rng.gen_range(0..n);
        while dirs.last() == Some(&k) {
            k = rng.gen_range(0..n);
        }
        dirs.push(k);
    }
    TreeWord::new(dirs, n).unwrap()
}

/// Random instances with universal coefficients and words of length at
/// most `depth`, deterministic in `seed`.
pub fn random_instances(seed: u64, trials: usize, depth: usize) -> Result<Vec<(Instance, TreeWord)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let (b, r) = random_matrix(&mut rng);
        let len = rng.gen_range(0..=depth);
        let w = random_word(&mut rng, b.rank(), len);
        let label = format!("random#{:03}:B={}:r={:?}", trial + 1, render_matrix(b.rows()), r).replace(' ', "");
        out.push((Instance::new(label, universal_seed(b, &r)?), w));
    }
    Ok(out)
}

/// One unit of work for [`run_all`].
#[derive(Clone, Debug)]
pub struct Task {
    pub check: Check,
    pub instance: Instance,
    pub word: TreeWord,
}

/// Runs all tasks (in parallel with the `parallel` feature) and returns
/// the reports sorted by check name, then instance, then word.
pub fn run_all(tasks: &[Task]) -> Vec<CheckReport> {
    let mut out = run_tasks(tasks);
    out.sort_by(|a, b| {
        (a.name.as_str(), a.instance.as_str(), a.word.len(), &a.word).cmp(&(
            b.name.as_str(),
            b.instance.as_str(),
            b.word.len(),
            &b.word,
        ))
    });
    out
}

#[cfg(feature = "parallel")]
fn run_tasks(tasks: &[Task]) -> Vec<CheckReport> {
    use rayon::prelude::*;
    tasks
        .par_iter()
        .map(|t| run_check(t.check, &t.instance, &t.word))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_tasks(tasks: &[Task]) -> Vec<CheckReport> {
    run_tasks_sequential(tasks)
}

/// Sequential execution, available regardless of features.
pub fn run_tasks_sequential(tasks: &[Task]) -> Vec<CheckReport> {
    tasks
        .iter()
        .map(|t| run_check(t.check, &t.instance, &t.word))
        .collect()
}
