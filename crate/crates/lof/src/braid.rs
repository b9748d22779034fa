//! Signed permutations and the braid-generator representation.
//!
//! A [`SignedPerm`] sends basis vector `e_i` to `sign[i] * e_{perm[i]}`,
//! i.e. it is a permutation matrix whose entries are +1 or −1. The braid
//! generator on strands `i, i+1` sends `e_i` to `e_{i+1}` and `e_{i+1}` to
//! `−e_i`: the negative entry plays the role of the cross, so at two strands
//! the generator acts on value pairs exactly as the square root of negation
//! does. [`verify_relations`] checks the braid-group presentation,
//! [`find_quaternions`] searches SP₄ for triples realizing the quaternion
//! relations with −1 taken to be the all-negative identity.

use std::fmt;

use thiserror::Error;

use crate::calculi::TupleValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("strand count must be at least 2, got {0}")]
    TooFewStrands(usize),
    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { strands: usize, index: usize },
    #[error("mismatched strand counts: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
}

/// A signed permutation: `e_i ↦ sign[i] · e_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm {
            perm: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    /// The central element −1: the identity permutation with every sign
    /// negative.
    pub fn minus_identity(n: usize) -> SignedPerm {
        SignedPerm {
            perm: (0..n).collect(),
            sign: vec![-1; n],
        }
    }

    pub fn is_identity(&self) -> bool {
        self == &SignedPerm::identity(self.strands())
    }

    /// Flips every sign (multiplication by −1).
    pub fn negate(&self) -> SignedPerm {
        SignedPerm {
            perm: self.perm.clone(),
            sign: self.sign.iter().map(|s| -s).collect(),
        }
    }

    /// `self` after `inner`: `e_i ↦ inner ↦ self`.
    pub fn compose(&self, inner: &SignedPerm) -> Result<SignedPerm, BraidError> {
        if self.strands() != inner.strands() {
            return Err(BraidError::StrandMismatch {
                left: self.strands(),
                right: inner.strands(),
            });
        }
        let perm = inner.perm.iter().map(|&j| self.perm[j]).collect();
        let sign = inner
            .perm
            .iter()
            .zip(&inner.sign)
            .map(|(&j, s)| s * self.sign[j])
            .collect();
        Ok(SignedPerm { perm, sign })
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.strands();
        let mut perm = vec![0; n];
        let mut sign = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            sign[self.perm[i]] = self.sign[i];
        }
        SignedPerm { perm, sign }
    }

    pub fn pow(&self, k: usize) -> SignedPerm {
        let mut acc = SignedPerm::identity(self.strands());
        for _ in 0..k {
            acc = self.compose(&acc).expect("equal strand counts");
        }
        acc
    }

    /// The least k ≥ 1 with the k-th power equal to the identity.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc).expect("equal strand counts");
            k += 1;
        }
        k
    }

    /// Acts on a tuple of primary-arithmetic values; a negative sign crosses
    /// the component it moves.
    pub fn apply(&self, t: &TupleValue) -> Result<TupleValue, BraidError> {
        if t.arity() != self.strands() {
            return Err(BraidError::StrandMismatch {
                left: t.arity(),
                right: self.strands(),
            });
        }
        let mut out = TupleValue::unmarked(self.strands());
        for i in 0..self.strands() {
            out.0[self.perm[i]] = if self.sign[i] < 0 {
                t.0[i].cross()
            } else {
                t.0[i]
            };
        }
        Ok(out)
    }
}

impl fmt::Display for SignedPerm {
    /// Signed one-line notation: position k holds ±(image+1), so the
    /// generator on three strands prints as `(2,-1,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.strands() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.sign[i] as i64 * (self.perm[i] as i64 + 1))?;
        }
        f.write_str(")")
    }
}

/// The braid generator on strands `i, i+1` of `n`: `e_i ↦ e_{i+1}`,
/// `e_{i+1} ↦ −e_i`, identity elsewhere.
pub fn generator(n: usize, i: usize) -> Result<SignedPerm, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    if i + 2 > n {
        return Err(BraidError::GeneratorOutOfRange {
            strands: n,
            index: i,
        });
    }
    let mut g = SignedPerm::identity(n);
    g.perm[i] = i + 1;
    g.perm[i + 1] = i;
    g.sign[i + 1] = -1;
    Ok(g)
}

/// Composes a word of generator indices; the leftmost letter acts first.
pub fn word(n: usize, letters: &[usize]) -> Result<SignedPerm, BraidError> {
    let mut acc = SignedPerm::identity(n);
    for &i in letters {
        acc = generator(n, i)?.compose(&acc)?;
    }
    Ok(acc)
}

/// All `2^n · n!` signed permutations, in a deterministic order.
pub fn all_elements(n: usize) -> Vec<SignedPerm> {
    fn perms(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            perms(prefix, rest, out);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    let mut ps = Vec::new();
    perms(&mut Vec::new(), &mut (0..n).collect(), &mut ps);
    let mut out = Vec::new();
    for p in ps {
        for mask in 0..1u32 << n {
            out.push(SignedPerm {
                perm: p.clone(),
                sign: (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
            });
        }
    }
    out
}

/// Which presentation relations hold for the generators of SP_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationsReport {
    pub strands: usize,
    /// σᵢσⱼσᵢ = σⱼσᵢσⱼ for |i−j| = 1.
    pub braid_relation: bool,
    /// σᵢσⱼ = σⱼσᵢ for |i−j| ≥ 2.
    pub far_commutation: bool,
    /// σᵢ⁴ = identity.
    pub fourth_power_is_identity: bool,
    /// σᵢ² = σᵢ⁻²: a double crossing equals the opposite double crossing.
    pub square_equals_inverse_square: bool,
    /// σᵢ² = −1 literally; the block generator satisfies this only at two
    /// strands, where the square negates every strand there is.
    pub square_is_minus_identity: bool,
}

impl RelationsReport {
    /// The relations that are expected to hold at every width.
    pub fn representation_holds(&self) -> bool {
        self.braid_relation
            && self.far_commutation
            && self.fourth_power_is_identity
            && self.square_equals_inverse_square
    }
}

/// Checks the presentation relations for the generators of SP_n.
pub fn verify_relations(n: usize) -> Result<RelationsReport, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    let gens: Vec<SignedPerm> = (0..n - 1).map(|i| generator(n, i).unwrap()).collect();
    let mut braid = true;
    let mut far = true;
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let lhs = word(n, &[i, j, i]).unwrap();
            let rhs = word(n, &[j, i, j]).unwrap();
            if i.abs_diff(j) == 1 && lhs != rhs {
                braid = false;
            }
            if i.abs_diff(j) >= 2
                && word(n, &[i, j]).unwrap() != word(n, &[j, i]).unwrap()
            {
                far = false;
            }
        }
    }
    let fourth = gens.iter().all(|g| g.pow(4).is_identity());
    let square_inverse = gens.iter().all(|g| g.pow(2) == g.inverse().pow(2));
    let minus = gens
        .iter()
        .all(|g| g.pow(2) == SignedPerm::minus_identity(n));
    Ok(RelationsReport {
        strands: n,
        braid_relation: braid,
        far_commutation: far,
        fourth_power_is_identity: fourth,
        square_equals_inverse_square: square_inverse,
        square_is_minus_identity: minus,
    })
}

/// Searches SP₄ exhaustively for ordered triples (I, J, K) with
/// I² = J² = K² = IJK = −1, where −1 is the all-negative identity. The
/// product IJ means I acts first.
pub fn find_quaternions() -> Vec<[SignedPerm; 3]> {
    let minus = SignedPerm::minus_identity(4);
    let square_roots: Vec<SignedPerm> = all_elements(4)
        .into_iter()
        .filter(|g| g.pow(2) == minus)
        .collect();
    let mut out = Vec::new();
    for i in &square_roots {
        for j in &square_roots {
            // IJK = −1 forces K = (IJ)⁻¹ · (−1); I acting first makes the
            // group product IJ the composition j ∘ i.
            let ij = j.compose(i).unwrap();
            let k = ij.inverse().negate();
            if k.pow(2) == minus {
                out.push([i.clone(), j.clone(), k]);
            }
        }
    }
    out.sort();
    out
}
