//! The map `b_w ↦ D_w` from the Temperley-Lieb algebra of affine type D to
//! decorated diagrams, and suites that check it is an isomorphism on
//! bounded pieces of the algebra.

use tlwb_coxeter::CoxeterGraph;
use tlwb_diagram::{
    concat, reduce, simple_diagram, tl_generator, Diagram, DiagramElement, DiagramError, RuleSet,
};
use tlwb_fullcomm::{FcError, Word};
use tlwb_ring::DeltaPoly;
use tlwb_tl::TlElement;

pub mod verify;

pub use verify::{verify_suite, Report, Suite, SuiteReport, VerifyConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Fc(#[from] FcError),
    #[error("letter {letter} is not a generator for n = {n}")]
    BadLetter { letter: usize, n: usize },
}

/// Reduced product of a sequence of diagrams, left to right.
pub fn product<'a>(
    k: usize,
    factors: impl IntoIterator<Item = &'a Diagram>,
    rules: &RuleSet,
) -> Result<(DeltaPoly, Diagram), DiagramError> {
    let mut acc = (DeltaPoly::one(), Diagram::identity(k));
    for d in factors {
        let (c, next) = reduce(concat(acc.1.raw(), d.raw())?, rules)?;
        acc = (&acc.0 * &c, next);
    }
    Ok(acc)
}

/// The map on words for a fixed rank, with the simple diagrams built once.
#[derive(Clone, Debug)]
pub struct Theta {
    n: usize,
    graph: CoxeterGraph,
    rules: RuleSet,
    simple: Vec<Diagram>,
}

impl Theta {
    pub fn new(n: usize, rules: RuleSet) -> Result<Self, IsoError> {
        let simple = (0..=n + 2)
            .map(|i| simple_diagram(n, i))
            .collect::<Result<_, _>>()?;
        let graph = CoxeterGraph::affine_d(n).map_err(|_| DiagramError::RankTooSmall(n))?;
        Ok(Self {
            n,
            graph,
            rules,
            simple,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn simple(&self, i: usize) -> Option<&Diagram> {
        self.simple.get(i)
    }

    /// `D_{i1} ... D_{ik}` reduced, with its scalar.
    pub fn word(&self, w: &Word) -> Result<(DeltaPoly, Diagram), IsoError> {
        let factors = w
            .letters()
            .iter()
            .map(|s| {
                self.simple.get(s.index()).ok_or(IsoError::BadLetter {
                    letter: s.index(),
                    n: self.n,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(product(self.n + 2, factors, &self.rules)?)
    }

    /// Linear extension of [`Theta::word`].
    pub fn element(&self, a: &TlElement) -> Result<DiagramElement, IsoError> {
        let mut out = DiagramElement::zero();
        for (w, c) in a.terms() {
            let (p, d) = self.word(w)?;
            out.add_term(d, &(c * &p));
        }
        Ok(out)
    }
}

/// `D_w` for the default rules.
pub fn d_of_word(w: &Word, n: usize) -> Result<(DeltaPoly, Diagram), IsoError> {
    Theta::new(n, RuleSet::default())?.word(w)
}

/// `θ(a)` for the default rules.
pub fn theta(a: &TlElement, n: usize) -> Result<DiagramElement, IsoError> {
    Theta::new(n, RuleSet::default())?.element(a)
}

/// The classical map for the path graph on `k - 1` nodes: generator `i`
/// goes to the undecorated cup and cap at `i + 1, i + 2`.
pub fn type_a_word(w: &Word, k: usize) -> Result<(DeltaPoly, Diagram), IsoError> {
    let factors = w
        .letters()
        .iter()
        .map(|s| tl_generator(k, s.index() + 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(product(k, &factors, &RuleSet::default())?)
}
