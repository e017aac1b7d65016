//! Bounded verification suites with a deterministic, serializable report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tlwb_diagram::{concat, is_admissible, reduce, Diagram, RuleSet};
use tlwb_factorize::{FactorizeError, Factorizer, Limits};
use tlwb_fullcomm::{canonical_form, commutation_class, enumerate_fc, FcError, Word};
use tlwb_ring::DeltaPoly;
use tlwb_tl::mono_mul;

use crate::{IsoError, Theta};

/// Counterexamples kept per suite; the failure count is always exact.
pub const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Suite {
    Relations,
    Welldef,
    Hom,
    Inj,
    Admis,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Relations,
        Suite::Welldef,
        Suite::Hom,
        Suite::Inj,
        Suite::Admis,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "RELATIONS",
            Suite::Welldef => "WELLDEF",
            Suite::Hom => "HOM",
            Suite::Inj => "INJ",
            Suite::Admis => "ADMIS",
            Suite::Roundtrip => "ROUNDTRIP",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownSuite(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: usize,
    pub max_len: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Number of sampled products for HOM and ADMIS.
    pub samples: usize,
    /// Longest factor in sampled products.
    pub product_len: usize,
}

impl VerifyConfig {
    pub fn new(n: usize, max_len: usize, seed: u64, suites: Vec<Suite>) -> Self {
        Self {
            n,
            max_len,
            seed,
            suites,
            samples: 500,
            product_len: max_len.min(5),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub stats: BTreeMap<String, usize>,
    pub counterexamples: Vec<String>,
}

impl SuiteReport {
    fn new(s: Suite) -> Self {
        Self {
            suite: s.name().into(),
            ..Self::default()
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(describe());
            }
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures == 0;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub max_len: usize,
    pub seed: u64,
    pub passed: bool,
    /// Set when a resource cap stopped the run; later suites are missing.
    pub aborted: Option<String>,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verify n={} max_len={} seed={}",
            self.n, self.max_len, self.seed
        )?;
        for s in &self.suites {
            let stats: Vec<String> = s.stats.iter().map(|(k, v)| format!(" {k}={v}")).collect();
            let verdict = if s.passed { "pass" } else { "FAIL" };
            writeln!(
                f,
                "{:<10} {verdict} checked={} failures={}{}",
                s.suite,
                s.checked,
                s.failures,
                stats.concat()
            )?;
            for c in &s.counterexamples {
                writeln!(f, "  {c}")?;
            }
        }
        if let Some(why) = &self.aborted {
            writeln!(f, "aborted: {why}")?;
        }
        write!(
            f,
            "{}",
            if self.passed {
                "all suites passed"
            } else {
                "verification failed"
            }
        )
    }
}

/// Shared state for one run: the map, the FC elements and their images.
struct Ctx {
    theta: Theta,
    words: Vec<Word>,
    images: Vec<(DeltaPoly, Diagram)>,
}

impl Ctx {
    fn word_index_below(&self, len: usize) -> usize {
        self.words.iter().take_while(|w| w.len() <= len).count()
    }
}

enum Stop {
    Cap(String),
    Error(IsoError),
}

impl From<IsoError> for Stop {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::Fc(FcError::ResourceCap { cap }) => {
                Stop::Cap(format!("commutation class cap of {cap} words"))
            }
            e => Stop::Error(e),
        }
    }
}

impl From<FcError> for Stop {
    fn from(e: FcError) -> Self {
        IsoError::from(e).into()
    }
}

impl From<tlwb_diagram::DiagramError> for Stop {
    fn from(e: tlwb_diagram::DiagramError) -> Self {
        Stop::Error(e.into())
    }
}

fn relations(ctx: &Ctx) -> Result<SuiteReport, Stop> {
    let mut r = SuiteReport::new(Suite::Relations);
    let g = ctx.theta.graph();
    let gens: Vec<_> = g.generators().collect();
    let word = |letters: &[usize]| {
        Word::from_indices(&letters.iter().map(|&i| i as u8).collect::<Vec<_>>())
    };
    for &s in &gens {
        let i = s.index();
        let di = ctx.theta.simple(i).expect("generator in range").clone();
        let sq = ctx.theta.word(&word(&[i, i]))?;
        r.check(sq == (DeltaPoly::delta(), di.clone()), || {
            format!("D_{i} D_{i} = {} * {{{}}}", sq.0, sq.1)
        });
        for &t in &gens {
            let j = t.index();
            if i == j {
                continue;
            }
            if g.bonded(s, t) {
                let b = ctx.theta.word(&word(&[i, j, i]))?;
                r.check(b == (DeltaPoly::one(), di.clone()), || {
                    format!("D_{i} D_{j} D_{i} = {} * {{{}}}", b.0, b.1)
                });
            } else if i < j {
                let (a, b) = (
                    ctx.theta.word(&word(&[i, j]))?,
                    ctx.theta.word(&word(&[j, i]))?,
                );
                r.check(a == b, || {
                    format!(
                        "D_{i} D_{j} = {} * {{{}}} but D_{j} D_{i} = {} * {{{}}}",
                        a.0, a.1, b.0, b.1
                    )
                });
            }
        }
    }
    Ok(r.finish())
}

fn welldef(ctx: &Ctx) -> Result<SuiteReport, Stop> {
    let mut r = SuiteReport::new(Suite::Welldef);
    let mut expressions = 0;
    for (w, img) in ctx.words.iter().zip(&ctx.images) {
        r.check(img.0.is_one(), || format!("{w}: coefficient {}", img.0));
        for v in commutation_class(w, ctx.theta.graph())? {
            expressions += 1;
            let other = ctx.theta.word(&v)?;
            r.check(other == *img, || {
                format!(
                    "{w} gives {{{}}} but {v} gives {} * {{{}}}",
                    img.1, other.0, other.1
                )
            });
        }
    }
    r.stats.insert("expressions".into(), expressions);
    Ok(r.finish())
}

fn sample_pairs(
    ctx: &Ctx,
    rng: &mut ChaCha8Rng,
    samples: usize,
    len: usize,
) -> Vec<(usize, usize)> {
    let m = ctx.word_index_below(len);
    (0..samples)
        .map(|_| (rng.random_range(0..m), rng.random_range(0..m)))
        .collect()
}

fn hom(ctx: &Ctx, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<SuiteReport, Stop> {
    let mut r = SuiteReport::new(Suite::Hom);
    let rules = ctx.theta.rules();
    for (a, b) in sample_pairs(ctx, rng, cfg.samples, cfg.product_len) {
        let (v, w) = (&ctx.words[a], &ctx.words[b]);
        let (c, u) = mono_mul(v, w, ctx.theta.graph())?;
        let (p, du) = ctx.theta.word(&u)?;
        let expect = (&c * &p, du);
        let (q, got) = reduce(concat(ctx.images[a].1.raw(), ctx.images[b].1.raw())?, rules)?;
        let got = (&q * &(&ctx.images[a].0 * &ctx.images[b].0), got);
        r.check(got == expect, || {
            format!(
                "{v} * {w}: algebra gives {} * {{{}}}, diagrams give {} * {{{}}}",
                expect.0, expect.1, got.0, got.1
            )
        });
    }
    Ok(r.finish())
}

fn inj(ctx: &Ctx) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Inj);
    let mut seen: BTreeMap<&Diagram, &Word> = BTreeMap::new();
    for (w, img) in ctx.words.iter().zip(&ctx.images) {
        let prev = seen.insert(&img.1, w);
        r.check(prev.is_none(), || {
            format!(
                "{} and {w} both give {{{}}}",
                prev.expect("collision"),
                img.1
            )
        });
    }
    r.stats.insert("fc_elements".into(), ctx.words.len());
    r.stats.insert("distinct_diagrams".into(), seen.len());
    r.finish()
}

fn admis(ctx: &Ctx, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<SuiteReport, Stop> {
    let mut r = SuiteReport::new(Suite::Admis);
    for (w, img) in ctx.words.iter().zip(&ctx.images) {
        r.check(img.0.is_one() && is_admissible(&img.1), || {
            format!("D_{w} = {} * {{{}}} is not admissible", img.0, img.1)
        });
    }
    for (a, b) in sample_pairs(ctx, rng, cfg.samples, cfg.max_len) {
        let (c, d) = reduce(
            concat(ctx.images[a].1.raw(), ctx.images[b].1.raw())?,
            ctx.theta.rules(),
        )?;
        r.check(c.as_delta_power().is_some() && is_admissible(&d), || {
            format!("D_{} D_{} = {c} * {{{d}}}", ctx.words[a], ctx.words[b])
        });
    }
    Ok(r.finish())
}

fn roundtrip(ctx: &Ctx) -> Result<SuiteReport, Stop> {
    let mut r = SuiteReport::new(Suite::Roundtrip);
    let g = ctx.theta.graph();
    let n = ctx.theta.n();
    let mut f = Factorizer::new(n, ctx.theta.rules().clone(), Limits::default())
        .map_err(|e| Stop::Cap(e.to_string()))?;
    let mut steps = 0;
    for (w, (_, d)) in ctx.words.iter().zip(&ctx.images) {
        let trace = match f.trace(d) {
            Ok(t) => t,
            Err(FactorizeError::ResourceCap { checks }) => {
                return Err(Stop::Cap(format!(
                    "factorization stopped after {checks} checks"
                )))
            }
            Err(e) => {
                r.check(false, || format!("{w}: {e}"));
                continue;
            }
        };
        let letters: Vec<u8> = trace.iter().map(|(i, _)| *i as u8).collect();
        let v = Word::from_indices(&letters);
        let same = canonical_form(&v, g)? == canonical_form(w, g)?;
        r.check(same && v.len() == w.len(), || {
            format!("{w} factorizes as {v}")
        });
        let mut cur = d.clone();
        for (i, next) in &trace {
            steps += 1;
            let di = ctx.theta.simple(*i).expect("generator in range");
            let (c, back) = reduce(concat(di.raw(), next.raw())?, ctx.theta.rules())?;
            let descends = f
                .length(next)
                .ok()
                .zip(f.length(&cur).ok())
                .is_some_and(|(a, b)| a + 1 == b);
            r.check(c.is_one() && back == cur && descends, || {
                format!("{w}: peel of {i} from {{{cur}}} fails")
            });
            cur = next.clone();
        }
    }
    r.stats.insert("peel_steps".into(), steps);
    Ok(r.finish())
}

fn run(cfg: &VerifyConfig, rules: RuleSet, out: &mut Vec<SuiteReport>) -> Result<(), Stop> {
    let theta = Theta::new(cfg.n, rules)?;
    let suites: BTreeSet<Suite> = cfg.suites.iter().copied().collect();
    let mut ctx = Ctx {
        theta,
        words: Vec::new(),
        images: Vec::new(),
    };
    for s in suites {
        if s != Suite::Relations && ctx.words.is_empty() {
            ctx.words = enumerate_fc(ctx.theta.graph(), cfg.max_len)?
                .into_iter()
                .flatten()
                .collect();
            ctx.images = ctx
                .words
                .iter()
                .map(|w| ctx.theta.word(w))
                .collect::<Result<_, _>>()?;
        }
        // Each suite draws from its own stream so selections do not interact.
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((s as u64 + 1) << 56));
        let rep = match s {
            Suite::Relations => relations(&ctx)?,
            Suite::Welldef => welldef(&ctx)?,
            Suite::Hom => hom(&ctx, cfg, &mut rng)?,
            Suite::Inj => inj(&ctx),
            Suite::Admis => admis(&ctx, cfg, &mut rng)?,
            Suite::Roundtrip => roundtrip(&ctx)?,
        };
        out.push(rep);
    }
    Ok(())
}

/// Runs the selected suites in a fixed order. Suite failures are report
/// entries; hitting a resource cap yields a partial report with `aborted`
/// set.
pub fn verify_suite(cfg: &VerifyConfig, rules: RuleSet) -> Result<Report, IsoError> {
    let mut suites = Vec::new();
    let aborted = match run(cfg, rules, &mut suites) {
        Ok(()) => None,
        Err(Stop::Cap(why)) => Some(why),
        Err(Stop::Error(e)) => return Err(e),
    };
    let passed = aborted.is_none() && suites.iter().all(|s| s.passed);
    Ok(Report {
        n: cfg.n,
        max_len: cfg.max_len,
        seed: cfg.seed,
        passed,
        aborted,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, max_len: usize, suites: &[Suite]) -> Report {
        verify_suite(
            &VerifyConfig::new(n, max_len, 42, suites.to_vec()),
            RuleSet::default(),
        )
        .unwrap()
    }

    #[test]
    fn relations_pass() {
        let r = run(2, 4, &[Suite::Relations]);
        assert!(r.passed);
        assert_eq!(r.suites[0].failures, 0);
        assert!(r.suites[0].checked > 0);
    }

    #[test]
    fn injectivity_of_the_identity_alone() {
        let r = run(2, 0, &[Suite::Inj]);
        assert!(r.passed);
        assert_eq!(r.suites[0].stats["fc_elements"], 1);
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("roundtrip".parse::<Suite>().unwrap(), Suite::Roundtrip);
        assert_eq!(" HOM".parse::<Suite>().unwrap(), Suite::Hom);
        assert!("homs".parse::<Suite>().is_err());
    }

    #[test]
    fn broken_rules_are_caught() {
        let rules: RuleSet = "loop[] -> () @ d".parse().unwrap();
        let r = verify_suite(&VerifyConfig::new(2, 2, 1, vec![Suite::Relations]), rules).unwrap();
        assert!(!r.passed);
        assert!(!r.suites[0].counterexamples.is_empty());
    }
}
