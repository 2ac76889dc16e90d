//! Interpolation, one-generator embedding extension, ideal
//! computation, and chain embeddings into the atomless algebra.

use std::collections::BTreeSet;

use crate::ba::{BaElem, BaError, FiniteBa};

/// The operations shared by the embedding codomains: finite algebras
/// and the atomless algebra of canonical elements.
pub trait BoolAlg {
    type Elem: Clone + Eq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.meet(a, b) == *a
    }

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// The countable atomless Boolean algebra of canonical elements.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FreeBa;

impl BoolAlg for FreeBa {
    type Elem = BaElem;

    fn zero(&self) -> BaElem {
        BaElem::zero()
    }

    fn one(&self) -> BaElem {
        BaElem::one()
    }

    fn meet(&self, a: &BaElem, b: &BaElem) -> BaElem {
        a.meet(b)
    }

    fn join(&self, a: &BaElem, b: &BaElem) -> BaElem {
        a.join(b)
    }

    fn complement(&self, a: &BaElem) -> BaElem {
        a.complement()
    }
}

impl BoolAlg for FiniteBa {
    type Elem = u64;

    fn zero(&self) -> u64 {
        FiniteBa::zero(self)
    }

    fn one(&self) -> u64 {
        FiniteBa::one(self)
    }

    fn meet(&self, a: &u64, b: &u64) -> u64 {
        FiniteBa::meet(self, *a, *b)
    }

    fn join(&self, a: &u64, b: &u64) -> u64 {
        FiniteBa::join(self, *a, *b)
    }

    fn complement(&self, a: &u64) -> u64 {
        FiniteBa::complement(self, *a)
    }
}

/// An embedding of a finite Boolean algebra, determined by its atom
/// images: pairwise disjoint, nonzero, and joining to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaEmbedding<B: BoolAlg> {
    domain: FiniteBa,
    atom_images: Vec<B::Elem>,
}

impl<B: BoolAlg> BaEmbedding<B> {
    pub fn new(alg: &B, domain: FiniteBa, atom_images: Vec<B::Elem>) -> Result<Self, BaError> {
        let e = BaEmbedding {
            domain,
            atom_images,
        };
        e.validate(alg)?;
        Ok(e)
    }

    pub fn domain(&self) -> &FiniteBa {
        &self.domain
    }

    pub fn atom_images(&self) -> &[B::Elem] {
        &self.atom_images
    }

    /// Image of an element mask: the join of its atoms' images.
    pub fn map(&self, alg: &B, mask: u64) -> B::Elem {
        let mut out = alg.zero();
        for i in 0..self.domain.atoms() {
            if mask & (1 << i) != 0 {
                out = alg.join(&out, &self.atom_images[i]);
            }
        }
        out
    }

    /// Checks injectivity and preservation of 0, 1, ∧, ∨, ¬: atom
    /// images must be nonzero, pairwise disjoint, and join to 1.
    pub fn validate(&self, alg: &B) -> Result<(), BaError> {
        if self.atom_images.len() != self.domain.atoms() {
            return Err(BaError::NotAnEmbedding(
                "one image per atom required".into(),
            ));
        }
        let mut total = alg.zero();
        for (i, img) in self.atom_images.iter().enumerate() {
            if alg.is_zero(img) {
                return Err(BaError::NotAnEmbedding(format!("atom {i} maps to 0")));
            }
            for (j, other) in self.atom_images.iter().enumerate().skip(i + 1) {
                if !alg.is_zero(&alg.meet(img, other)) {
                    return Err(BaError::NotAnEmbedding(format!(
                        "atoms {i} and {j} have overlapping images"
                    )));
                }
            }
            total = alg.join(&total, img);
        }
        if total != alg.one() {
            return Err(BaError::NotAnEmbedding("atom images do not cover 1".into()));
        }
        Ok(())
    }
}

/// Interpolation for the strong separation property: an element
/// strictly between every member of `lower` and every member of
/// `upper`.
///
/// With `f = ⋁ lower` and `g = ⋀ upper` (empty sides reading 0 and 1),
/// the precondition is `f < g`; the result is
/// `f ∨ (v_k ∧ g ∧ ¬f)` for a generator `v_k` past every support in
/// sight, and both strict inequalities are re-checked semantically.
pub fn interpolate(lower: &[BaElem], upper: &[BaElem]) -> Result<BaElem, BaError> {
    let f = lower
        .iter()
        .fold(BaElem::zero(), |acc, x| acc.join(x));
    let g = upper.iter().fold(BaElem::one(), |acc, y| acc.meet(y));
    if !f.lt(&g) {
        return Err(BaError::SeparationFailure {
            lower: f.to_string(),
            upper: g.to_string(),
        });
    }
    let fresh = BaElem::var(BaElem::fresh_index(lower.iter().chain(upper.iter())));
    let a = f.join(&fresh.meet(&g).meet(&f.complement()));
    for x in lower {
        if !x.lt(&a) {
            return Err(BaError::SeparationFailure {
                lower: x.to_string(),
                upper: a.to_string(),
            });
        }
    }
    for y in upper {
        if !a.lt(y) {
            return Err(BaError::SeparationFailure {
                lower: a.to_string(),
                upper: y.to_string(),
            });
        }
    }
    Ok(a)
}

/// Position of an adjoined element over a finite algebra: the largest
/// element below it and the smallest above it. Every relation to the
/// algebra follows from these two bounds, because the lower set is a
/// principal ideal and the upper set a principal filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutBounds {
    pub lower: u64,
    pub upper: u64,
}

impl CutBounds {
    pub fn new(domain: &FiniteBa, lower: u64, upper: u64) -> Result<Self, BaError> {
        domain.check(lower)?;
        domain.check(upper)?;
        if !domain.leq(lower, upper) {
            return Err(BaError::InvalidElement(format!(
                "cut bounds must be nested: {lower:#b} below {upper:#b}"
            )));
        }
        Ok(CutBounds { lower, upper })
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }
}

/// The extension produced by `extend_one`: the algebra generated by
/// the old domain and the new element, with the old elements' masks
/// re-expressed over the new atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension<B: BoolAlg> {
    pub embedding: BaEmbedding<B>,
    /// Mask of the adjoined element in the new algebra.
    pub adjoined: u64,
    /// Old atom index ↦ mask of its refinement in the new algebra.
    pub old_atom_masks: Vec<u64>,
}

impl<B: BoolAlg> Extension<B> {
    /// Image of an element of the old algebra under the extension.
    pub fn map_old(&self, alg: &B, old_mask: u64) -> B::Elem {
        let mut mask = 0u64;
        for (i, &m) in self.old_atom_masks.iter().enumerate() {
            if old_mask & (1 << i) != 0 {
                mask |= m;
            }
        }
        self.embedding.map(alg, mask)
    }
}

/// Extends `f : A → B` to the algebra generated by `A` and one new
/// element `x` described by `bounds`, sending `x ↦ y`.
///
/// Acceptance is exactly the separation condition: for all
/// `a ≤ x ≤ a'` in `A`, `f(a) ≤ y ≤ f(a')`; by principality this
/// reduces to the two bounds. Rejection carries a witnessing pair.
/// The extension maps a split atom `t` to `f(t) ∧ y` and
/// `f(t) ∧ ¬y`; it is an embedding exactly when those halves are
/// nonzero, which `validate` checks and strict cuts guarantee.
pub fn extend_one<B: BoolAlg>(
    alg: &B,
    f: &BaEmbedding<B>,
    bounds: CutBounds,
    y: &B::Elem,
) -> Result<Extension<B>, BaError> {
    let domain = *f.domain();
    let f_lower = f.map(alg, bounds.lower);
    let f_upper = f.map(alg, bounds.upper);
    if !alg.leq(&f_lower, y) {
        return Err(BaError::Rejected {
            lower_witness: format!("{:#b}", bounds.lower),
            upper_witness: format!("{:#b}", domain.one()),
        });
    }
    if !alg.leq(y, &f_upper) {
        return Err(BaError::Rejected {
            lower_witness: format!("{:#b}", domain.zero()),
            upper_witness: format!("{:#b}", bounds.upper),
        });
    }
    let mut atom_images: Vec<B::Elem> = Vec::new();
    let mut old_atom_masks: Vec<u64> = Vec::new();
    let mut adjoined = 0u64;
    for i in 0..domain.atoms() {
        let t = 1u64 << i;
        let image = &f.atom_images()[i];
        let split = domain.leq(t, bounds.upper) && !domain.leq(t, bounds.lower);
        if split {
            let inside = alg.meet(image, y);
            let outside = alg.meet(image, &alg.complement(y));
            let lo = atom_images.len() as u64;
            atom_images.push(inside);
            atom_images.push(outside);
            old_atom_masks.push(0b11 << lo);
            adjoined |= 1 << lo;
        } else {
            let idx = atom_images.len() as u64;
            atom_images.push(image.clone());
            old_atom_masks.push(1 << idx);
            if domain.leq(t, bounds.lower) {
                adjoined |= 1 << idx;
            }
        }
    }
    let new_domain = FiniteBa::new(atom_images.len())?;
    Ok(Extension {
        embedding: BaEmbedding {
            domain: new_domain,
            atom_images,
        },
        adjoined,
        old_atom_masks,
    })
}

/// Value for the next generator in the successive-extension procedure:
/// an interpolant strictly between the images of the cut bounds.
/// Degenerate cuts map through `f` directly.
pub fn find_extension_value(
    f: &BaEmbedding<FreeBa>,
    bounds: CutBounds,
) -> Result<BaElem, BaError> {
    let alg = FreeBa;
    if bounds.is_degenerate() {
        return Ok(f.map(&alg, bounds.lower));
    }
    interpolate(&[f.map(&alg, bounds.lower)], &[f.map(&alg, bounds.upper)])
}

/// The set `{a ∈ A : f(a) < b}` with its maximal elements. For `b`
/// outside the image the set is a principal ideal; the degenerate
/// in-image cases can have several maximal elements, which are all
/// reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealReport {
    pub elements: Vec<u64>,
    pub generators: Vec<u64>,
    pub principal: bool,
}

pub fn ideal_below<B: BoolAlg>(alg: &B, f: &BaEmbedding<B>, b: &B::Elem) -> IdealReport {
    let domain = f.domain();
    let elements: Vec<u64> = domain
        .elements()
        .filter(|&a| alg.lt(&f.map(alg, a), b))
        .collect();
    let generators: Vec<u64> = elements
        .iter()
        .copied()
        .filter(|&a| !elements.iter().any(|&c| c != a && domain.leq(a, c)))
        .collect();
    if elements.is_empty() {
        return IdealReport {
            elements,
            generators: vec![0],
            principal: true,
        };
    }
    let principal = generators.len() == 1;
    IdealReport {
        elements,
        generators,
        principal,
    }
}

/// Embeds a finite Boolean algebra into the atomless algebra: atoms
/// map to the cells of `⌈log₂ n⌉` fresh generators, surplus cells
/// merged into the last atom.
pub fn embed_into_atomless(domain: FiniteBa) -> Result<BaEmbedding<FreeBa>, BaError> {
    let n = domain.atoms();
    let bits = usize::BITS - (n - 1).leading_zeros();
    let bits = if n == 1 { 0 } else { bits };
    let cell = |j: usize| -> BaElem {
        let mut acc = BaElem::one();
        for i in 0..bits {
            let v = BaElem::var(i);
            let lit = if j & (1 << (bits - 1 - i)) == 0 {
                v
            } else {
                v.complement()
            };
            acc = acc.meet(&lit);
        }
        acc
    };
    let mut atom_images: Vec<BaElem> = (0..n - 1).map(cell).collect();
    let mut last = BaElem::zero();
    for j in n - 1..1 << bits {
        last = last.join(&cell(j));
    }
    if n == 1 {
        last = BaElem::one();
    }
    atom_images.push(last);
    BaEmbedding::new(&FreeBa, domain, atom_images)
}

/// A stage of a chain embedding: a partition of the final algebra's
/// atoms together with the image of each block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionEmbedding {
    pub blocks: Vec<BTreeSet<usize>>,
    pub images: Vec<BaElem>,
}

impl PartitionEmbedding {
    /// Image of a union of blocks.
    pub fn image_of_blocks(&self, idxs: &[usize]) -> BaElem {
        idxs.iter()
            .fold(BaElem::zero(), |acc, &i| acc.join(&self.images[i]))
    }

    fn as_embedding(&self) -> Result<BaEmbedding<FreeBa>, BaError> {
        BaEmbedding::new(
            &FreeBa,
            FiniteBa::new(self.blocks.len())?,
            self.images.clone(),
        )
    }
}

fn is_refinement(coarse: &[BTreeSet<usize>], fine: &[BTreeSet<usize>]) -> bool {
    coarse.iter().all(|block| {
        let parts: Vec<&BTreeSet<usize>> =
            fine.iter().filter(|p| p.is_subset(block)).collect();
        let covered: BTreeSet<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        covered == *block
    })
}

/// Runs the successive-extension procedure along a refinement chain of
/// partitions of a fixed finite atom set, starting from the coarsest
/// stage embedded by `embed_into_atomless`. Every stage is validated
/// as an embedding and checked to restrict to the previous one.
pub fn refine_chain_embedding(
    stages: &[Vec<BTreeSet<usize>>],
) -> Result<Vec<PartitionEmbedding>, BaError> {
    let alg = FreeBa;
    let first = stages
        .first()
        .ok_or_else(|| BaError::InvalidElement("chain must have at least one stage".into()))?;
    let base = embed_into_atomless(FiniteBa::new(first.len())?)?;
    let mut current = PartitionEmbedding {
        blocks: first.clone(),
        images: base.atom_images().to_vec(),
    };
    let mut out = vec![current.clone()];
    for target in stages.iter().skip(1) {
        if !is_refinement(&current.blocks, target) {
            return Err(BaError::NotARefinement(format!(
                "stage {target:?} does not refine {:?}",
                current.blocks
            )));
        }
        // Split blocks one adjoined element at a time until the stage
        // partition is reached.
        loop {
            let split_at = current
                .blocks
                .iter()
                .position(|b| !target.contains(b));
            let Some(i) = split_at else { break };
            let block = current.blocks[i].clone();
            let first_part = target
                .iter()
                .find(|p| p.is_subset(&block))
                .expect("refinement checked")
                .clone();
            let rest: BTreeSet<usize> = block.difference(&first_part).copied().collect();

            let f = current.as_embedding()?;
            let bounds = CutBounds::new(f.domain(), 0, 1 << i)?;
            let y = find_extension_value(&f, bounds)?;
            let ext = extend_one(&alg, &f, bounds, &y)?;
            ext.embedding.validate(&alg)?;

            // The split atom contributes two blocks; order follows the
            // extension's atom layout (inside y first).
            let mut blocks = Vec::with_capacity(current.blocks.len() + 1);
            let mut images = Vec::with_capacity(current.blocks.len() + 1);
            for (j, old_block) in current.blocks.iter().enumerate() {
                if j == i {
                    blocks.push(first_part.clone());
                    blocks.push(rest.clone());
                } else {
                    blocks.push(old_block.clone());
                }
            }
            for old_mask in &ext.old_atom_masks {
                for k in 0..ext.embedding.domain().atoms() {
                    if old_mask & (1 << k) != 0 {
                        images.push(ext.embedding.atom_images()[k].clone());
                    }
                }
            }
            let next = PartitionEmbedding { blocks, images };
            // Extension property: coarser blocks keep their images.
            for (j, old_block) in current.blocks.iter().enumerate() {
                let new_idxs: Vec<usize> = next
                    .blocks
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.is_subset(old_block))
                    .map(|(k, _)| k)
                    .collect();
                if next.image_of_blocks(&new_idxs) != current.images[j] {
                    return Err(BaError::NotAnEmbedding(format!(
                        "stage does not extend block {j}"
                    )));
                }
            }
            current = next;
        }
        current.as_embedding()?.validate(&alg)?;
        out.push(current.clone());
    }
    Ok(out)
}
