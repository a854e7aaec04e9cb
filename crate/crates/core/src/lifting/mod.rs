//! The lifting property `f ⋌ g`: for every commuting square
//!
//! ```text
//!   A --i--> X
//!   |        |
//!   f        g
//!   v        v
//!   B --j--> Y
//! ```
//!
//! there is a diagonal `d: B → X` with `f;d = i` and `d;g = j`.
//!
//! Maps are written as image vectors. For a presented left morphism the maps
//! out of `F_n` or `F_n/⟨R⟩` are generator tuples, and maps out of the
//! trivial group are `[0]`.

mod pool;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::budget::{ensure_within, Budget};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::hom::{
    hom_images, inner_automorphism_images, Homomorphism, PresentedKind, PresentedMorphism,
};

pub use pool::{
    pool_orthogonal, MorphismPool, OrthogonalityRelation, OrthogonalityReport, PairVerdict,
    PoolMember, Side,
};

/// A left morphism: concrete, or presented with a possibly infinite domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Morphism {
    Finite(Homomorphism),
    Presented(PresentedMorphism),
}

impl Morphism {
    pub fn as_finite(&self) -> Option<&Homomorphism> {
        match self {
            Morphism::Finite(h) => Some(h),
            Morphism::Presented(_) => None,
        }
    }
}

impl From<Homomorphism> for Morphism {
    fn from(h: Homomorphism) -> Self {
        Morphism::Finite(h)
    }
}

impl From<PresentedMorphism> for Morphism {
    fn from(p: PresentedMorphism) -> Self {
        Morphism::Presented(p)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morphism::Finite(h) => write!(f, "{} -> {}", h.source().name(), h.target().name()),
            Morphism::Presented(p) => write!(f, "{p}"),
        }
    }
}

/// The top and bottom maps of a square.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Square {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftStatus {
    Holds,
    HoldsUniquely,
    Fails,
}

/// A square on which the property under test fails, with the diagonals it
/// does have (empty for a plain failure, two or more for a uniqueness
/// failure).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingSquare {
    pub square: Square,
    pub diagonals: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftVerdict {
    pub status: LiftStatus,
    pub witness: Option<FailingSquare>,
    pub squares_checked: u64,
}

impl LiftVerdict {
    pub fn holds(&self) -> bool {
        self.status != LiftStatus::Fails
    }
}

/// How squares may be twisted by inner automorphisms when lifting up to
/// conjugation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugationMode {
    /// Replace `j` by `j;σ` for some inner automorphism `σ` of `Y`, provided
    /// the twisted square still commutes.
    #[default]
    TwistBottom,
    /// Replace `(i, j)` by `(i;τ, j;σ)` where `τ` is conjugation by some
    /// `x ∈ X` and `σ` conjugation by `g(x)`.
    TwistBoth,
}

/// A single square to solve.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub f: Morphism,
    pub g: Homomorphism,
    pub square: Square,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Exists,
    Unique,
    Conjugate(ConjugationMode),
}

/// A homomorphism set with an index from image vector to position.
pub(crate) struct HomSet {
    pub(crate) images: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl HomSet {
    fn new(images: Vec<Vec<usize>>) -> Self {
        let index = images
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        HomSet { images, index }
    }

    pub(crate) fn position(&self, images: &[usize]) -> Option<usize> {
        self.index.get(images).copied()
    }
}

type HomKey = ([u8; 16], [u8; 16]);

/// Lifting checks sharing a cache of hom-sets keyed by table fingerprints.
pub struct Lifter {
    budget: Budget,
    cache: Mutex<HashMap<HomKey, Arc<HomSet>>>,
}

impl Lifter {
    pub fn new(budget: Budget) -> Self {
        Lifter {
            budget,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub(crate) fn homs(&self, a: &FiniteGroup, b: &FiniteGroup) -> Result<Arc<HomSet>> {
        let key = (a.fingerprint(), b.fingerprint());
        if let Some(set) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(set.clone());
        }
        let set = Arc::new(HomSet::new(hom_images(a, b, &self.budget)?));
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, set.clone());
        Ok(set)
    }

    /// All diagonals of one square, after checking that it commutes.
    pub fn solve_square(&self, problem: &LiftingProblem) -> Result<Vec<Vec<usize>>> {
        let g = &problem.g;
        let Square { i, j } = &problem.square;
        match &problem.f {
            Morphism::Finite(f) => {
                check_map(f.source(), g.source(), i)?;
                check_map(f.target(), g.target(), j)?;
                if let Some(a) = f
                    .source()
                    .elements()
                    .find(|&a| g.apply(i[a]) != j[f.apply(a)])
                {
                    return Err(Error::SquareDoesNotCommute { element: a });
                }
                let bx = self.homs(f.target(), g.source())?;
                Ok(bx
                    .images
                    .iter()
                    .filter(|d| f.images().iter().zip(i).all(|(&b, &x)| d[b] == x))
                    .filter(|d| d.iter().zip(j).all(|(&x, &y)| g.apply(x) == y))
                    .cloned()
                    .collect())
            }
            Morphism::Presented(p) => self.solve_presented_square(p, g, i, j),
        }
    }

    fn solve_presented_square(
        &self,
        p: &PresentedMorphism,
        g: &Homomorphism,
        i: &[usize],
        j: &[usize],
    ) -> Result<Vec<Vec<usize>>> {
        let (x, y) = (g.source(), g.target());
        let tuple_ok = |t: &[usize], order: usize, need_relators: Option<&FiniteGroup>| {
            t.len() == p.rank
                && t.iter().all(|&e| e < order)
                && need_relators.is_none_or(|grp| p.satisfies(grp, t))
        };
        let trivial = |t: &[usize]| t == [0];
        let bad = |what: &str| {
            Error::Parse(format!(
                "square map {what} does not fit the presented morphism {p}"
            ))
        };
        match p.kind {
            PresentedKind::FreeToQuotient => {
                if !tuple_ok(i, x.order(), None) {
                    return Err(bad("i"));
                }
                if !tuple_ok(j, y.order(), Some(y)) {
                    return Err(bad("j"));
                }
                if let Some(k) = (0..p.rank).find(|&k| g.apply(i[k]) != j[k]) {
                    return Err(Error::SquareDoesNotCommute { element: k });
                }
                Ok(if p.satisfies(x, i) {
                    vec![i.to_vec()]
                } else {
                    vec![]
                })
            }
            PresentedKind::TrivialToQuotient => {
                if !trivial(i) {
                    return Err(bad("i"));
                }
                if !tuple_ok(j, y.order(), Some(y)) {
                    return Err(bad("j"));
                }
                let mut out = Vec::new();
                ensure_within(
                    "presented tuples",
                    (x.order() as u128).pow(p.rank as u32),
                    self.budget.max_tuples as u128,
                )?;
                crate::hom::for_each_tuple(x.order(), p.rank, |t| {
                    if t.iter().zip(j).all(|(&e, &v)| g.apply(e) == v) && p.satisfies(x, t) {
                        out.push(t.to_vec());
                    }
                });
                Ok(out)
            }
            PresentedKind::QuotientToTrivial => {
                if !tuple_ok(i, x.order(), Some(x)) {
                    return Err(bad("i"));
                }
                if !trivial(j) {
                    return Err(bad("j"));
                }
                if let Some(k) = (0..p.rank).find(|&k| g.apply(i[k]) != 0) {
                    return Err(Error::SquareDoesNotCommute { element: k });
                }
                Ok(if i.iter().all(|&e| e == 0) {
                    vec![vec![0]]
                } else {
                    vec![]
                })
            }
        }
    }

    /// `f ⋌ g`; on failure, the lexicographically least failing square.
    pub fn check_lift(&self, f: &Morphism, g: &Homomorphism) -> Result<LiftVerdict> {
        self.run(f, g, Mode::Exists)
    }

    /// `f ⋌ g` with every square having exactly one diagonal.
    pub fn check_unique_lift(&self, f: &Morphism, g: &Homomorphism) -> Result<LiftVerdict> {
        self.run(f, g, Mode::Unique)
    }

    /// Lifting up to conjugation, in the given twisting mode.
    pub fn check_lift_up_to_conj(
        &self,
        f: &Homomorphism,
        g: &Homomorphism,
        mode: ConjugationMode,
    ) -> Result<LiftVerdict> {
        self.run(&Morphism::Finite(f.clone()), g, Mode::Conjugate(mode))
    }

    /// Whether `A` is `f`-local: `f` has the unique lifting property with
    /// respect to `A → 1`.
    pub fn is_f_local(&self, f: &Morphism, a: &GroupRef) -> Result<bool> {
        Ok(self
            .check_unique_lift(f, &Homomorphism::to_trivial(a))?
            .holds())
    }

    fn run(&self, f: &Morphism, g: &Homomorphism, mode: Mode) -> Result<LiftVerdict> {
        match f {
            Morphism::Finite(f) => self.run_finite(f, g, mode),
            Morphism::Presented(p) => match mode {
                Mode::Conjugate(_) => Err(Error::Unsupported(
                    "lifting up to conjugation needs a concrete left map".into(),
                )),
                _ => self.run_presented(p, g, mode),
            },
        }
    }

    fn run_finite(&self, f: &Homomorphism, g: &Homomorphism, mode: Mode) -> Result<LiftVerdict> {
        let (a, b) = (f.source(), f.target());
        let (x, y) = (g.source(), g.target());
        let ax = self.homs(a, x)?;
        let by = self.homs(b, y)?;
        let bx = self.homs(b, x)?;
        let fi = f.images();

        // Bottom maps grouped by the composite f;j.
        let mut j_by_fj: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (jdx, j) in by.images.iter().enumerate() {
            j_by_fj
                .entry(fi.iter().map(|&e| j[e]).collect())
                .or_default()
                .push(jdx);
        }
        // Diagonals grouped by the square (f;d, d;g) they solve.
        let mut diagonals: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (didx, d) in bx.images.iter().enumerate() {
            let top: Vec<usize> = fi.iter().map(|&e| d[e]).collect();
            let bottom: Vec<usize> = d.iter().map(|&e| g.apply(e)).collect();
            let key = (
                ax.position(&top).expect("f;d is a hom"),
                by.position(&bottom).expect("d;g is a hom"),
            );
            diagonals.entry(key).or_default().push(didx);
        }
        let inner_y = match mode {
            Mode::Conjugate(ConjugationMode::TwistBottom) => inner_automorphism_images(y),
            _ => Vec::new(),
        };
        let conj_pairs: Vec<(Vec<usize>, Vec<usize>)> = match mode {
            Mode::Conjugate(ConjugationMode::TwistBoth) => {
                let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = x
                    .elements()
                    .map(|c| {
                        let gc = g.apply(c);
                        (
                            x.elements().map(|e| x.conjugate(c, e)).collect(),
                            y.elements().map(|e| y.conjugate(gc, e)).collect(),
                        )
                    })
                    .collect();
                pairs.sort();
                pairs.dedup();
                pairs
            }
            _ => Vec::new(),
        };

        let mut squares = 0u64;
        for (idx, i) in ax.images.iter().enumerate() {
            let ig: Vec<usize> = i.iter().map(|&e| g.apply(e)).collect();
            let Some(js) = j_by_fj.get(&ig) else { continue };
            for &jdx in js {
                squares += 1;
                if squares > self.budget.max_squares {
                    ensure_within(
                        "lifting squares",
                        squares as u128,
                        self.budget.max_squares as u128,
                    )?;
                }
                let found = diagonals.get(&(idx, jdx)).map_or(&[][..], Vec::as_slice);
                let ok = match mode {
                    Mode::Exists => !found.is_empty(),
                    Mode::Unique => found.len() == 1,
                    Mode::Conjugate(ConjugationMode::TwistBottom) => {
                        let j = &by.images[jdx];
                        inner_y.iter().any(|sigma| {
                            let twisted: Vec<usize> = j.iter().map(|&e| sigma[e]).collect();
                            let tdx = by.position(&twisted).expect("j;σ is a hom");
                            let commutes = fi.iter().zip(&ig).all(|(&e, &v)| twisted[e] == v);
                            commutes && diagonals.contains_key(&(idx, tdx))
                        })
                    }
                    Mode::Conjugate(ConjugationMode::TwistBoth) => {
                        let j = &by.images[jdx];
                        conj_pairs.iter().any(|(tau, sigma)| {
                            let ti: Vec<usize> = i.iter().map(|&e| tau[e]).collect();
                            let tj: Vec<usize> = j.iter().map(|&e| sigma[e]).collect();
                            let key = (
                                ax.position(&ti).expect("hom"),
                                by.position(&tj).expect("hom"),
                            );
                            diagonals.contains_key(&key)
                        })
                    }
                };
                if !ok {
                    let listed = if mode == Mode::Unique {
                        found.iter().map(|&d| bx.images[d].clone()).collect()
                    } else {
                        Vec::new()
                    };
                    return Ok(LiftVerdict {
                        status: LiftStatus::Fails,
                        witness: Some(FailingSquare {
                            square: Square {
                                i: i.clone(),
                                j: by.images[jdx].clone(),
                            },
                            diagonals: listed,
                        }),
                        squares_checked: squares,
                    });
                }
            }
        }
        let status = if mode == Mode::Unique {
            LiftStatus::HoldsUniquely
        } else {
            LiftStatus::Holds
        };
        Ok(LiftVerdict {
            status,
            witness: None,
            squares_checked: squares,
        })
    }

    fn run_presented(
        &self,
        p: &PresentedMorphism,
        g: &Homomorphism,
        mode: Mode,
    ) -> Result<LiftVerdict> {
        let (x, y) = (g.source(), g.target());
        let limit = self.budget.max_tuples as u128;
        let fail = |square: Square, diagonals: Vec<Vec<usize>>, squares: u64| LiftVerdict {
            status: LiftStatus::Fails,
            witness: Some(FailingSquare { square, diagonals }),
            squares_checked: squares,
        };
        let mut squares = 0u64;
        match p.kind {
            PresentedKind::FreeToQuotient => {
                // Squares are the tuples x with g(x) satisfying R; the only
                // candidate diagonal is x itself.
                ensure_within(
                    "presented tuples",
                    (x.order() as u128).pow(p.rank as u32),
                    limit,
                )?;
                let mut witness = None;
                crate::hom::for_each_tuple(x.order(), p.rank, |t| {
                    if witness.is_some() {
                        return;
                    }
                    let image: Vec<usize> = t.iter().map(|&e| g.apply(e)).collect();
                    if !p.satisfies(y, &image) {
                        return;
                    }
                    squares += 1;
                    if !p.satisfies(x, t) {
                        witness = Some(Square {
                            i: t.to_vec(),
                            j: image,
                        });
                    }
                });
                if let Some(square) = witness {
                    return Ok(fail(square, vec![], squares));
                }
            }
            PresentedKind::TrivialToQuotient => {
                ensure_within(
                    "presented tuples",
                    (x.order() as u128).pow(p.rank as u32),
                    limit,
                )?;
                ensure_within(
                    "presented tuples",
                    (y.order() as u128).pow(p.rank as u32),
                    limit,
                )?;
                let mut lifts: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
                crate::hom::for_each_tuple(x.order(), p.rank, |t| {
                    if p.satisfies(x, t) {
                        lifts
                            .entry(t.iter().map(|&e| g.apply(e)).collect())
                            .or_default()
                            .push(t.to_vec());
                    }
                });
                let mut witness = None;
                crate::hom::for_each_tuple(y.order(), p.rank, |t| {
                    if witness.is_some() || !p.satisfies(y, t) {
                        return;
                    }
                    squares += 1;
                    let found = lifts.get(t).map_or(&[][..], Vec::as_slice);
                    let ok = if mode == Mode::Unique {
                        found.len() == 1
                    } else {
                        !found.is_empty()
                    };
                    if !ok {
                        let listed = if mode == Mode::Unique {
                            found.to_vec()
                        } else {
                            vec![]
                        };
                        witness = Some((
                            Square {
                                i: vec![0],
                                j: t.to_vec(),
                            },
                            listed,
                        ));
                    }
                });
                if let Some((square, listed)) = witness {
                    return Ok(fail(square, listed, squares));
                }
            }
            PresentedKind::QuotientToTrivial => {
                ensure_within(
                    "presented tuples",
                    (x.order() as u128).pow(p.rank as u32),
                    limit,
                )?;
                let mut witness = None;
                crate::hom::for_each_tuple(x.order(), p.rank, |t| {
                    if witness.is_some()
                        || !t.iter().all(|&e| g.apply(e) == 0)
                        || !p.satisfies(x, t)
                    {
                        return;
                    }
                    squares += 1;
                    if t.iter().any(|&e| e != 0) {
                        witness = Some(Square {
                            i: t.to_vec(),
                            j: vec![0],
                        });
                    }
                });
                if let Some(square) = witness {
                    return Ok(fail(square, vec![], squares));
                }
            }
        }
        let status = if mode == Mode::Unique {
            LiftStatus::HoldsUniquely
        } else {
            LiftStatus::Holds
        };
        Ok(LiftVerdict {
            status,
            witness: None,
            squares_checked: squares,
        })
    }
}

fn check_map(source: &FiniteGroup, target: &FiniteGroup, images: &[usize]) -> Result<()> {
    if images.len() != source.order() {
        return Err(Error::ImageLength {
            expected: source.order(),
            found: images.len(),
        });
    }
    if let Some((element, &value)) = images
        .iter()
        .enumerate()
        .find(|(_, &v)| v >= target.order())
    {
        return Err(Error::ImageOutOfRange { element, value });
    }
    for a in source.elements() {
        for b in source.elements() {
            if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                return Err(Error::NotHomomorphism { a, b });
            }
        }
    }
    Ok(())
}

pub fn solve_square(problem: &LiftingProblem, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    Lifter::new(budget.clone()).solve_square(problem)
}

pub fn check_lift(f: &Morphism, g: &Homomorphism, budget: &Budget) -> Result<LiftVerdict> {
    Lifter::new(budget.clone()).check_lift(f, g)
}

pub fn check_unique_lift(f: &Morphism, g: &Homomorphism, budget: &Budget) -> Result<LiftVerdict> {
    Lifter::new(budget.clone()).check_unique_lift(f, g)
}

pub fn check_lift_up_to_conj(
    f: &Homomorphism,
    g: &Homomorphism,
    mode: ConjugationMode,
    budget: &Budget,
) -> Result<LiftVerdict> {
    Lifter::new(budget.clone()).check_lift_up_to_conj(f, g, mode)
}

pub fn is_f_local(f: &Morphism, a: &GroupRef, budget: &Budget) -> Result<bool> {
    Lifter::new(budget.clone()).is_f_local(f, a)
}
