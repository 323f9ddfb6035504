use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::structures::StructureKind;
use crate::vector::Point;

/// Default cap on the ground-set size accepted by [`build_instance`].
pub const DEFAULT_GROUND_CAP: usize = 4096;

/// A ground set together with every violating configuration inside it:
/// the 3-uniform conflict hypergraph, plus pair constraints for the
/// two-equal sunflowers `(x, x, z)`.
#[derive(Clone, Debug)]
pub struct ConflictInstance<V: Point> {
    ground: Family<V>,
    kind: StructureKind,
    triples: Vec<[u32; 3]>,
    pairs: Vec<[u32; 2]>,
}

impl<V: Point> ConflictInstance<V> {
    pub fn ground(&self) -> &Family<V> {
        &self.ground
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    /// Violating triples of ground indices, strictly increasing.
    pub fn triples(&self) -> &[[u32; 3]] {
        &self.triples
    }

    /// Index pairs that may not coexist, strictly increasing.
    pub fn pairs(&self) -> &[[u32; 2]] {
        &self.pairs
    }

    pub fn constraint_count(&self) -> usize {
        self.triples.len() + self.pairs.len()
    }

    /// Re-checks every stored constraint against the predicate.
    pub fn reverify(&self) -> bool {
        let m = self.ground.members();
        let pairs_ok = self.pairs.iter().all(|&[i, j]| {
            let (x, z) = (m[i as usize], m[j as usize]);
            i < j && (violates(self.kind, [x, x, z]) || violates(self.kind, [x, z, z]))
        });
        let triples_ok = self
            .triples
            .iter()
            .all(|&[i, j, l]| i < j && j < l && violates(self.kind, [m[i as usize], m[j as usize], m[l as usize]]));
        pairs_ok && triples_ok
    }

    /// Ground indices of `witness`, or an error if a member is missing.
    pub fn indices_of(&self, witness: &Family<V>) -> Result<Vec<usize>> {
        let position = |v: &V| self.ground.members().iter().position(|g| g == v);
        witness.iter().map(|v| position(v).ok_or_else(|| Error::NotInGround(v.to_row()))).collect()
    }
}

fn violates<V: Point>(kind: StructureKind, t: [V; 3]) -> bool {
    matches!(V::violation(kind, &t), Ok(Some(_)))
}

/// Pair and triple constraints found for one first index.
type Constraints = (Vec<[u32; 2]>, Vec<[u32; 3]>);

pub fn build_instance<V: Point>(ground: &Family<V>, kind: StructureKind) -> Result<ConflictInstance<V>> {
    build_instance_with_cap(ground, kind, DEFAULT_GROUND_CAP)
}

pub fn build_instance_with_cap<V: Point>(
    ground: &Family<V>,
    kind: StructureKind,
    cap: usize,
) -> Result<ConflictInstance<V>> {
    if kind.alphabet() != V::ALPHABET {
        return Err(Error::AlphabetMismatch { kind, alphabet: V::ALPHABET });
    }
    if ground.len() > cap {
        return Err(Error::GroundTooLarge { size: ground.len(), cap });
    }
    let m = ground.members();
    let size = m.len();
    let per_first: Vec<Constraints> = (0..size)
        .into_par_iter()
        .map(|i| {
            let mut pairs = Vec::new();
            let mut triples = Vec::new();
            for j in i + 1..size {
                if kind.allows_repeats() && (violates(kind, [m[i], m[i], m[j]]) || violates(kind, [m[i], m[j], m[j]])) {
                    pairs.push([i as u32, j as u32]);
                }
                for l in j + 1..size {
                    if violates(kind, [m[i], m[j], m[l]]) {
                        triples.push([i as u32, j as u32, l as u32]);
                    }
                }
            }
            (pairs, triples)
        })
        .collect();
    let (mut pairs, mut triples) = (Vec::new(), Vec::new());
    for (p, t) in per_first {
        pairs.extend(p);
        triples.extend(t);
    }
    Ok(ConflictInstance { ground: ground.clone(), kind, triples, pairs })
}

/// True iff `witness` is contained in the ground set and contains no
/// stored constraint.
pub fn verify_certificate<V: Point>(witness: &Family<V>, instance: &ConflictInstance<V>) -> Result<bool> {
    if witness.dim() != instance.ground.dim() {
        return Err(Error::DimensionMismatch { left: witness.dim(), right: instance.ground.dim() });
    }
    let mut inside = vec![false; instance.ground.len()];
    for i in instance.indices_of(witness)? {
        inside[i] = true;
    }
    let hit = |i: &u32| inside[*i as usize];
    let pair_hit = instance.pairs.iter().any(|p| p.iter().all(hit));
    let triple_hit = instance.triples.iter().any(|t| t.iter().all(hit));
    Ok(!pair_hit && !triple_hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{BinaryFamily, TernaryFamily};
    use crate::vector::{BinaryVector, TernaryVector};

    fn cube(n: usize) -> BinaryFamily {
        BinaryFamily::from_members(n, BinaryVector::all(n).unwrap()).unwrap()
    }

    #[test]
    fn square_weak_delta_triples() {
        // Ground order 00, 01, 10, 11. The four triples and their pairwise
        // intersections: (00,01,10) 0,0,0; (00,01,11) 0,0,1;
        // (00,10,11) 0,0,1; (01,10,11) 0,1,1.
        let inst = build_instance(&cube(2), StructureKind::WeakDelta).unwrap();
        assert_eq!(inst.triples(), &[[0, 1, 2]]);
        assert!(inst.pairs().is_empty());
        assert!(inst.reverify());
    }

    #[test]
    fn small_grounds_have_no_triples() {
        let g = BinaryFamily::from_rows(3, &["101", "011"]).unwrap();
        for kind in [StructureKind::WeakDelta, StructureKind::Equilateral] {
            assert_eq!(build_instance(&g, kind).unwrap().constraint_count(), 0);
        }
    }

    #[test]
    fn petal_triple_in_weight_one_slice() {
        let g = BinaryFamily::from_rows(3, &["100", "010", "001"]).unwrap();
        let inst = build_instance(&g, StructureKind::Sunflower).unwrap();
        assert_eq!(inst.triples(), &[[0, 1, 2]]);
        assert!(inst.pairs().is_empty());
    }

    #[test]
    fn nested_sets_become_pair_constraints() {
        let g = BinaryFamily::from_rows(2, &["01", "11"]).unwrap();
        let inst = build_instance(&g, StructureKind::Sunflower).unwrap();
        assert_eq!(inst.pairs(), &[[0, 1]]);
        assert!(inst.reverify());
    }

    #[test]
    fn caps_and_alphabet() {
        assert!(matches!(
            build_instance_with_cap(&cube(3), StructureKind::WeakDelta, 7),
            Err(Error::GroundTooLarge { size: 8, cap: 7 })
        ));
        assert!(matches!(build_instance(&cube(2), StructureKind::CapsetLine), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn certificate_checks() {
        let inst = build_instance(&cube(2), StructureKind::WeakDelta).unwrap();
        assert!(!verify_certificate(&cube(2), &inst).unwrap());
        assert!(verify_certificate(&BinaryFamily::new(2).unwrap(), &inst).unwrap());
        let three = BinaryFamily::from_rows(2, &["00", "10", "11"]).unwrap();
        assert!(verify_certificate(&three, &inst).unwrap());
        let foreign = BinaryFamily::from_rows(3, &["000"]).unwrap();
        assert!(verify_certificate(&foreign, &inst).is_err());

        let line = TernaryFamily::from_members(1, TernaryVector::all(1).unwrap()).unwrap();
        let inst = build_instance(&line, StructureKind::CapsetLine).unwrap();
        let partial = TernaryFamily::from_rows(1, &["0", "2"]).unwrap();
        assert!(verify_certificate(&partial, &inst).unwrap());
        let outside = TernaryFamily::from_rows(1, &["1"]).unwrap();
        let small = build_instance(&partial, StructureKind::CapsetLine).unwrap();
        assert!(matches!(verify_certificate(&outside, &small), Err(Error::NotInGround(_))));
    }
}
