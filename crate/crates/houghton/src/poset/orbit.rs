use serde::Serialize;

use super::{grade, leq, predecessor, predecessor_surjective, PosetError, Translation};
use crate::elements::GenMap;

/// `(gr(α_0), (t_1, …, t_p))` for a chain `α_0 < … < α_p` with
/// `t_j·α_{j−1} = α_j`; it separates the orbits of chains under right
/// multiplication by `G_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitInvariant {
    pub grade0: i64,
    pub translation_word: Vec<Translation>,
}

pub fn orbit_invariant(simplex: &[GenMap]) -> Result<OrbitInvariant, PosetError> {
    let first = simplex.first().ok_or(PosetError::NotAChain(0))?;
    let grade0 = grade(first)?;
    let mut translation_word = Vec::with_capacity(simplex.len().saturating_sub(1));
    for (j, pair) in simplex.windows(2).enumerate() {
        match leq(&pair[0], &pair[1]) {
            Some(t) if t.grade() > 0 => translation_word.push(t),
            _ => return Err(PosetError::NotAChain(j + 1)),
        }
    }
    Ok(OrbitInvariant { grade0, translation_word })
}

/// The bijective `α_00` with `t_1^k·α_00 = a`, `k = gr(a)`: canonical
/// predecessors below `t_1`, with the surjective variant for the last step.
pub fn descend_to_group(a: &GenMap) -> Result<GenMap, PosetError> {
    let k = grade(a)?;
    let mut cur = a.clone();
    for _ in 1..k {
        cur = predecessor(&cur, 1, None)?;
    }
    if k >= 1 {
        cur = predecessor_surjective(&cur, 1)?;
    }
    Ok(cur)
}

/// Some `g ∈ G_n` with `a[j]·g = b[j]` for every `j`, provided the two chains
/// have the same orbit invariant.
pub fn orbit_witness(a: &[GenMap], b: &[GenMap]) -> Result<GenMap, PosetError> {
    if a.len() != b.len() || orbit_invariant(a)? != orbit_invariant(b)? {
        return Err(PosetError::InvariantMismatch);
    }
    let g = descend_to_group(&a[0])?.invert()?.compose(&descend_to_group(&b[0])?)?;
    for (x, y) in a.iter().zip(b) {
        if x.compose(&g)? != *y {
            return Err(PosetError::WitnessFailed);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_examples() {
        let id = GenMap::identity(2);
        assert_eq!(orbit_invariant(&[id]).unwrap(), OrbitInvariant { grade0: 0, translation_word: vec![] });
        let t1 = GenMap::t(2, 1);
        let t12 = GenMap::translation(&[1, 1]);
        let inv = orbit_invariant(&[t1.clone(), t12.clone()]).unwrap();
        assert_eq!(inv.grade0, 1);
        assert_eq!(inv.translation_word, vec![Translation { exponents: vec![0, 1] }]);
        assert_eq!(orbit_invariant(&[t12, t1]), Err(PosetError::NotAChain(1)));
    }

    #[test]
    fn witness_for_identical_chains() {
        let chain = vec![GenMap::translation(&[1, 1]), GenMap::translation(&[2, 1])];
        assert_eq!(orbit_witness(&chain, &chain).unwrap(), GenMap::identity(2));
        let other = vec![GenMap::translation(&[1, 0]), GenMap::translation(&[2, 0])];
        assert_eq!(orbit_witness(&chain, &other), Err(PosetError::InvariantMismatch));
    }
}
