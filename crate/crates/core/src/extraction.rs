//! From a CNF grammar to its Parikh image.
//!
//! The set Ω of production-count vectors of all derivations is built from
//! two finite families of trees:
//!
//! * **base trees**: complete parse trees from the start symbol in which no
//!   root-to-leaf path repeats a nonterminal;
//! * **pump trees**: X-rooted trees with a single open leaf (the foot) also
//!   labelled X, in which every root-to-leaf path has pairwise distinct
//!   labels except that X itself may occur once more below the root.
//!
//! Any parse tree shrinks to a base tree by repeatedly cutting out a pump
//! rooted at a deepest node that has a same-labelled descendant. Reversing
//! the cuts inserts pumps one at a time, each at a nonterminal already
//! present. So Ω is the union, over base trees b and over sets W of pumps
//! that can be inserted in some order where each one brings a new
//! nonterminal, of
//!
//! ```text
//! μ(b) + Σ_{q∈W} μ(q) + ⟨ μ(q) : q a pump using only nonterminals of b and W ⟩
//! ```
//!
//! Two linear maps then take Ω to bracket counts and bracket counts to
//! letter counts.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::cs::{
    build_annotated_grammar, build_erasing_homomorphism, AnnotatedGrammar, Bracket, Shape,
};
use crate::grammar::{to_cnf, CnfGrammar, CnfRhs, Grammar, ParseTree};
use crate::semilinear::{
    induced_map_of_homomorphism, LinearMap, LinearSet, NVector, ParikhImage, SemilinearError,
    SemilinearSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error(transparent)]
    Semilinear(#[from] SemilinearError),
    #[error("grammar has {0} nonterminals; at most 64 are supported")]
    TooManyNonterminals(usize),
}

/// μ(t): production-count vector of a tree.
pub fn production_counts(g: &CnfGrammar, t: &ParseTree) -> NVector {
    NVector::new(t.production_counts(g.num_rules()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpTree {
    pub root: usize,
    pub tree: ParseTree,
    pub counts: NVector,
    pub nonterminals: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseTree {
    pub tree: ParseTree,
    pub counts: NVector,
    pub nonterminals_used: BTreeSet<usize>,
}

type Mask = u64;

fn bit(n: usize) -> Mask {
    1 << n
}

fn mask_of(set: &BTreeSet<usize>) -> Mask {
    set.iter().fold(0, |m, &n| m | bit(n))
}

fn check_size(g: &CnfGrammar) -> Result<(), ExtractionError> {
    match g.nonterminals().len() {
        n if n > 64 => Err(ExtractionError::TooManyNonterminals(n)),
        _ => Ok(()),
    }
}

struct TreeGen<'g> {
    g: &'g CnfGrammar,
    // label allowed to occur a second time on each path, if any
    repeatable: Option<usize>,
    complete: HashMap<(usize, Mask, bool), Vec<ParseTree>>,
    spines: HashMap<(usize, Mask), Vec<ParseTree>>,
}

impl<'g> TreeGen<'g> {
    fn new(g: &'g CnfGrammar, repeatable: Option<usize>) -> Self {
        TreeGen {
            g,
            repeatable,
            complete: HashMap::new(),
            spines: HashMap::new(),
        }
    }

    /// Whether a child labelled `y` may appear below a path with labels
    /// `seen`; returns the child's `reused` flag.
    fn admit(&self, y: usize, seen: Mask, reused: bool) -> Option<bool> {
        if seen & bit(y) == 0 {
            Some(reused)
        } else if self.repeatable == Some(y) && !reused {
            Some(true)
        } else {
            None
        }
    }

    /// Complete trees rooted at `z`; `seen` already contains `z`.
    fn complete(&mut self, z: usize, seen: Mask, reused: bool) -> Vec<ParseTree> {
        if let Some(v) = self.complete.get(&(z, seen, reused)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for &p in self.g.rules_for(z) {
            match self.g.rule(p).rhs {
                CnfRhs::Terminal(a) => out.push(ParseTree::terminal(p, a)),
                CnfRhs::Binary(b, c) => {
                    let (Some(rb), Some(rc)) =
                        (self.admit(b, seen, reused), self.admit(c, seen, reused))
                    else {
                        continue;
                    };
                    let left = self.complete(b, seen | bit(b), rb);
                    if left.is_empty() {
                        continue;
                    }
                    let right = self.complete(c, seen | bit(c), rc);
                    for l in &left {
                        for r in &right {
                            out.push(ParseTree::binary(p, l.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        self.complete.insert((z, seen, reused), out.clone());
        out
    }

    /// Contexts rooted at `z` whose foot is the repeatable label.
    fn spine(&mut self, z: usize, seen: Mask) -> Vec<ParseTree> {
        if let Some(v) = self.spines.get(&(z, seen)) {
            return v.clone();
        }
        let x = self.repeatable.expect("spines only exist for pumps");
        let mut out = Vec::new();
        for &p in self.g.rules_for(z) {
            let CnfRhs::Binary(b, c) = self.g.rule(p).rhs else {
                continue;
            };
            for spine_left in [true, false] {
                let (s, o) = if spine_left { (b, c) } else { (c, b) };
                let open = if s == x {
                    vec![ParseTree::Foot(x)]
                } else if seen & bit(s) == 0 {
                    self.spine(s, seen | bit(s))
                } else {
                    continue;
                };
                if open.is_empty() {
                    continue;
                }
                let Some(ro) = self.admit(o, seen, false) else {
                    continue;
                };
                let closed = self.complete(o, seen | bit(o), ro);
                for t in &open {
                    for u in &closed {
                        let (l, r) = if spine_left { (t, u) } else { (u, t) };
                        out.push(ParseTree::binary(p, l.clone(), r.clone()));
                    }
                }
            }
        }
        self.spines.insert((z, seen), out.clone());
        out
    }
}

/// All pump trees, grouped by root nonterminal in index order.
pub fn enumerate_pump_trees(g: &CnfGrammar) -> Vec<PumpTree> {
    if check_size(g).is_err() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for x in 0..g.nonterminals().len() {
        let mut gen = TreeGen::new(g, Some(x));
        for tree in gen.spine(x, bit(x)) {
            out.push(PumpTree {
                root: x,
                counts: production_counts(g, &tree),
                nonterminals: tree.nonterminals(g),
                tree,
            });
        }
    }
    out
}

/// All complete trees from the start symbol with no repeated nonterminal on
/// any root-to-leaf path.
pub fn enumerate_base_trees(g: &CnfGrammar) -> Vec<BaseTree> {
    if check_size(g).is_err() {
        return Vec::new();
    }
    let s = g.start();
    TreeGen::new(g, None)
        .complete(s, bit(s), false)
        .into_iter()
        .map(|tree| BaseTree {
            counts: production_counts(g, &tree),
            nonterminals_used: tree.nonterminals(g),
            tree,
        })
        .collect()
}

/// Path property of pump trees: labels on each root-to-leaf path are
/// distinct, except the root label which may appear once more; the only
/// open leaf is the foot and it carries the root label.
pub fn is_pump_shaped(g: &CnfGrammar, t: &ParseTree) -> bool {
    let Some(x) = t.root(g) else { return false };
    if t.foot_count() != 1 || !matches!(find_foot(t), Some(f) if f == x) {
        return false;
    }
    t.paths(g).iter().all(|path| {
        let mut seen = BTreeSet::new();
        let mut x_count = 0;
        path.iter().all(|&n| {
            if n == x {
                x_count += 1;
                x_count <= 2
            } else {
                seen.insert(n)
            }
        })
    })
}

/// Path property of base trees: no nonterminal repeats on any path.
pub fn is_base_shaped(g: &CnfGrammar, t: &ParseTree) -> bool {
    t.foot_count() == 0
        && t.root(g) == Some(g.start())
        && t.paths(g).iter().all(|path| {
            let mut seen = BTreeSet::new();
            path.iter().all(|&n| seen.insert(n))
        })
}

fn find_foot(t: &ParseTree) -> Option<usize> {
    match t {
        ParseTree::Foot(n) => Some(*n),
        ParseTree::Node { children, .. } => children.iter().find_map(find_foot),
        ParseTree::Leaf(_) => None,
    }
}

/// One component of Ω before simplification, with the trees it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaComponent {
    /// Index into [`Omega::bases`].
    pub base_tree: usize,
    /// Pumps (indices into [`Omega::pumps`]) inserted once to bring in new
    /// nonterminals, in insertion order.
    pub introduced: Vec<usize>,
    /// One representative pump per period.
    pub period_pumps: Vec<usize>,
    pub set: LinearSet,
}

/// Ω: the semilinear set of production-count vectors of all derivations.
#[derive(Debug, Clone)]
pub struct Omega {
    pub bases: Vec<BaseTree>,
    pub pumps: Vec<PumpTree>,
    pub components: Vec<OmegaComponent>,
    /// Union of all components after exact simplification.
    pub set: SemilinearSet,
}

struct PumpClass {
    root: usize,
    labels: Mask,
    counts: NVector,
    representative: usize,
}

pub fn compute_omega(g: &CnfGrammar) -> Result<Omega, ExtractionError> {
    check_size(g)?;
    let dim = g.num_rules();
    let bases = enumerate_base_trees(g);
    let pumps = enumerate_pump_trees(g);

    let mut classes: Vec<PumpClass> = Vec::new();
    let mut class_index: HashMap<(usize, Mask, NVector), usize> = HashMap::new();
    for (i, p) in pumps.iter().enumerate() {
        let key = (p.root, mask_of(&p.nonterminals), p.counts.clone());
        class_index.entry(key).or_insert_with(|| {
            classes.push(PumpClass {
                root: p.root,
                labels: mask_of(&p.nonterminals),
                counts: p.counts.clone(),
                representative: i,
            });
            classes.len() - 1
        });
    }

    let mut periods_of: HashMap<Mask, (Vec<NVector>, Vec<usize>)> = HashMap::new();
    let introducers = minimal_introducers(&classes, &mut periods_of)?;

    // Search states are (labels present, counts so far). A state whose
    // counts lie in an already kept state's linear set with the same labels
    // is dropped together with everything reachable from it: both grow by
    // the same pumps, so the kept one keeps covering it. Visiting states by
    // increasing size means a kept state is never covered later.
    let mut kept: HashMap<Mask, Vec<LinearSet>> = HashMap::new();
    let mut queued: HashSet<(Mask, NVector)> = HashSet::new();
    let mut queue = BinaryHeap::new();
    for (bi, b) in bases.iter().enumerate() {
        let labels = mask_of(&b.nonterminals_used);
        if queued.insert((labels, b.counts.clone())) {
            queue.push(Reverse((
                b.counts.coord_sum(),
                labels,
                b.counts.clone(),
                bi,
                Vec::new(),
            )));
        }
    }
    let mut components = Vec::new();
    while let Some(Reverse((_, labels, counts, bi, order))) = queue.pop() {
        let (periods, period_pumps) = periods_for(&classes, &mut periods_of, labels)?.clone();
        let same_labels = kept.entry(labels).or_default();
        let mut covered = false;
        for k in same_labels.iter() {
            if k.member(&counts)?.is_some() {
                covered = true;
                break;
            }
        }
        if covered {
            continue;
        }
        let set = LinearSet::new(counts.clone(), periods)?;
        same_labels.push(set.clone());
        for &qi in &introducers {
            let q = &classes[qi];
            if labels & bit(q.root) != 0 && q.labels & !labels != 0 {
                let next = counts.checked_add(&q.counts)?;
                if queued.insert((labels | q.labels, next.clone())) {
                    let mut order = order.clone();
                    order.push(qi);
                    queue.push(Reverse((
                        next.coord_sum(),
                        labels | q.labels,
                        next,
                        bi,
                        order,
                    )));
                }
            }
        }
        components.push(OmegaComponent {
            base_tree: bi,
            introduced: order.iter().map(|&q| classes[q].representative).collect(),
            period_pumps,
            set,
        });
    }
    let raw = SemilinearSet::new(dim, components.iter().map(|c| c.set.clone()).collect())?;
    Ok(Omega {
        bases,
        pumps,
        components,
        set: raw.simplify(),
    })
}

fn periods_for<'a>(
    classes: &[PumpClass],
    cache: &'a mut HashMap<Mask, (Vec<NVector>, Vec<usize>)>,
    labels: Mask,
) -> Result<&'a (Vec<NVector>, Vec<usize>), ExtractionError> {
    match cache.entry(labels) {
        Entry::Occupied(e) => Ok(e.into_mut()),
        Entry::Vacant(e) => Ok(e.insert(irreducible_periods(classes, labels)?)),
    }
}

/// Classes worth inserting during the search. Among classes with the same
/// root and labels, `q` is skipped when `q - q'` is a sum of pumps inside
/// those labels for some kept `q'`: every state reached through `q` is then
/// covered by the one reached through `q'`.
fn minimal_introducers(
    classes: &[PumpClass],
    cache: &mut HashMap<Mask, (Vec<NVector>, Vec<usize>)>,
) -> Result<Vec<usize>, ExtractionError> {
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&i| {
        let c = &classes[i];
        (c.root, c.labels, c.counts.coord_sum(), c.counts.clone())
    });
    let mut keep: Vec<usize> = Vec::new();
    let mut group_start = 0;
    for &i in &order {
        let c = &classes[i];
        if keep.len() > group_start {
            let head = &classes[keep[group_start]];
            if (head.root, head.labels) != (c.root, c.labels) {
                group_start = keep.len();
            }
        }
        let dim = c.counts.dim();
        let monoid = LinearSet::new(
            NVector::zeros(dim),
            periods_for(classes, cache, c.labels)?.0.clone(),
        )?;
        let mut dominated = false;
        for &k in &keep[group_start..] {
            if let Some(d) = difference(&c.counts, &classes[k].counts) {
                if monoid.member(&d)?.is_some() {
                    dominated = true;
                    break;
                }
            }
        }
        if !dominated {
            keep.push(i);
        }
    }
    keep.sort_unstable();
    Ok(keep)
}

fn difference(a: &NVector, b: &NVector) -> Option<NVector> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x.checked_sub(*y))
        .collect::<Option<Vec<_>>>()
        .map(NVector::new)
}

/// Counts of pumps whose labels lie in `labels`, minus those that are sums
/// of smaller ones; the monoid they generate is unchanged. Returned with
/// one representative pump per period.
fn irreducible_periods(
    classes: &[PumpClass],
    labels: Mask,
) -> Result<(Vec<NVector>, Vec<usize>), ExtractionError> {
    let mut candidates: Vec<&PumpClass> =
        classes.iter().filter(|c| c.labels & !labels == 0).collect();
    candidates.sort_by_key(|c| (c.counts.coord_sum(), c.counts.clone()));
    let dim = candidates.first().map_or(0, |c| c.counts.dim());
    let mut kept = LinearSet::singleton(NVector::zeros(dim));
    let mut pumps = Vec::new();
    for c in candidates {
        if kept.member(&c.counts)?.is_none() {
            let mut periods = kept.periods().to_vec();
            periods.push(c.counts.clone());
            kept = LinearSet::new(NVector::zeros(dim), periods)?;
            pumps.push(c.representative);
        }
    }
    Ok((kept.periods().to_vec(), pumps))
}

/// The 4|P| × |P| matrix sending the unit vector of production p to one
/// each of `(p )p [p ]p`.
pub fn lambda_to_tilde_map(ann: &AnnotatedGrammar) -> LinearMap {
    let k = ann.base().num_rules();
    let columns = (0..k)
        .map(|p| {
            let mut col = vec![0; 4 * k];
            for s in [
                Shape::OpenRound,
                Shape::CloseRound,
                Shape::OpenSquare,
                Shape::CloseSquare,
            ] {
                col[Bracket::new(p, s).index()] = 1;
            }
            NVector::new(col)
        })
        .collect();
    LinearMap::from_columns(4 * k, columns).expect("columns have 4|P| rows")
}

/// Every intermediate stage of the computation.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub cnf: CnfGrammar,
    pub annotated: AnnotatedGrammar,
    pub omega: Omega,
    /// Ω pushed through [`lambda_to_tilde_map`]: ψ(Dyck ∩ R) over brackets.
    pub bracket_image: SemilinearSet,
    /// Φ, the map induced by the erasing homomorphism.
    pub erase_map: LinearMap,
    pub image: ParikhImage,
}

pub fn run_pipeline(g: &Grammar) -> Result<Pipeline, ExtractionError> {
    let cnf = to_cnf(g);
    let annotated = build_annotated_grammar(&cnf);
    let omega = compute_omega(&cnf)?;
    let bracket_image = omega.set.image(&lambda_to_tilde_map(&annotated))?;
    let h = build_erasing_homomorphism(&cnf).to_word_homomorphism();
    let erase_map = induced_map_of_homomorphism(&h, cnf.alphabet())?;
    let mut set = bracket_image.image(&erase_map)?;
    if cnf.epsilon_in_language() {
        let zero = LinearSet::singleton(NVector::zeros(cnf.alphabet().len()));
        set = set.union(&SemilinearSet::from_linear(zero))?;
    }
    let image = ParikhImage::new(cnf.alphabet().clone(), set.simplify())?;
    Ok(Pipeline {
        cnf,
        annotated,
        omega,
        bracket_image,
        erase_map,
        image,
    })
}

/// ψ(L(g)) as an explicit semilinear set over g's alphabet.
pub fn parikh_image(g: &Grammar) -> Result<ParikhImage, ExtractionError> {
    run_pipeline(g).map(|p| p.image)
}

/// The same image through a single composite matrix: `A -> a` goes to the
/// unit vector of `a`, binary rules to zero.
pub fn direct_parikh_image(g: &Grammar) -> Result<ParikhImage, ExtractionError> {
    let cnf = to_cnf(g);
    let omega = compute_omega(&cnf)?;
    let k = cnf.alphabet().len();
    let columns = cnf
        .rules()
        .iter()
        .map(|r| match r.rhs {
            CnfRhs::Terminal(a) => NVector::unit(k, a),
            CnfRhs::Binary(..) => NVector::zeros(k),
        })
        .collect();
    let m = LinearMap::from_columns(k, columns)?;
    let mut set = omega.set.image(&m)?;
    if cnf.epsilon_in_language() {
        set = set.union(&SemilinearSet::from_linear(LinearSet::singleton(
            NVector::zeros(k),
        )))?;
    }
    Ok(ParikhImage::new(cnf.alphabet().clone(), set)?)
}

/// Human-readable audit trail: the CNF rules, then each Ω component with
/// its base tree, the pumps inserted to introduce nonterminals, and one
/// pump per period.
pub fn render_trace(p: &Pipeline) -> String {
    let g = &p.cnf;
    let mut out = String::new();
    out.push_str("# rules\n");
    for i in 0..g.num_rules() {
        let _ = writeln!(out, "{i}: {}", g.render_rule(i));
    }
    if g.epsilon_in_language() {
        out.push_str("# epsilon in language: zero vector added\n");
    }
    let mut by_base: BTreeMap<usize, Vec<&OmegaComponent>> = BTreeMap::new();
    for c in &p.omega.components {
        by_base.entry(c.base_tree).or_default().push(c);
    }
    for (bi, comps) in by_base {
        let b = &p.omega.bases[bi];
        let _ = writeln!(out, "# base {} counts={}", b.tree.render(g), b.counts);
        for c in comps {
            let _ = writeln!(out, "component base={}", c.set.base());
            for &q in &c.introduced {
                let _ = writeln!(out, "  introduce {}", p.omega.pumps[q].tree.render(g));
            }
            for &q in &c.period_pumps {
                let pump = &p.omega.pumps[q];
                let _ = writeln!(out, "  period {} via {}", pump.counts, pump.tree.render(g));
            }
        }
    }
    out.push_str("# image\n");
    out.push_str(&p.image.to_text());
    out
}
