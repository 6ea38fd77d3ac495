//! Vectors in F_q^d, the form ||x|| = x_1^2 + ... + x_d^2, and spheres.
//!
//! Points are addressed by a lexicographic index in `[0, q^d)`: coordinate 0
//! is the least-significant base-q digit. This encoding is part of the
//! point-set file format and must not change.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// Default memory budget on q^d for enumerations.
pub const SPACE_BUDGET: usize = 1 << 24;

/// Budget on q^d for anything that materializes a full Fourier transform.
pub const FOURIER_BUDGET: usize = 1_000_000;

/// A vector of F_q^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecD {
    pub coords: Vec<Elem>,
}

impl VecD {
    pub fn new(coords: Vec<Elem>) -> Self {
        Self { coords }
    }

    pub fn zero(d: usize) -> Self {
        Self {
            coords: vec![Elem::ZERO; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// The ambient space F_q^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    field: Arc<FieldSpec>,
    dim: usize,
    size: usize,
}

impl Space {
    pub fn new(field: Arc<FieldSpec>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("dimension must be positive".into()));
        }
        let size = (field.order() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if size > SPACE_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                what: "q^d",
                size,
                limit: SPACE_BUDGET as u128,
            });
        }
        Ok(Self {
            field,
            dim,
            size: size as usize,
        })
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.field.order()
    }

    /// q^d.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn require_fourier_budget(&self) -> Result<()> {
        if self.size > FOURIER_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "q^d for Fourier work",
                size: self.size as u128,
                limit: FOURIER_BUDGET as u128,
            });
        }
        Ok(())
    }

    pub fn decode(&self, mut index: usize) -> VecD {
        let q = self.q();
        let coords = (0..self.dim)
            .map(|_| {
                let c = Elem((index % q) as u32);
                index /= q;
                c
            })
            .collect();
        VecD { coords }
    }

    /// Writes the coordinates of `index` into `out` (length d).
    #[inline]
    pub fn decode_into(&self, mut index: usize, out: &mut [Elem]) {
        let q = self.q();
        for c in out.iter_mut() {
            *c = Elem((index % q) as u32);
            index /= q;
        }
    }

    pub fn encode(&self, v: &VecD) -> Result<usize> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} coordinates, space has {}",
                v.dim(),
                self.dim
            )));
        }
        let q = self.q();
        let mut idx = 0usize;
        for c in v.coords.iter().rev() {
            if c.index() >= q {
                return Err(Error::InvalidElement(c.0));
            }
            idx = idx * q + c.index();
        }
        Ok(idx)
    }

    pub fn norm(&self, v: &VecD) -> Elem {
        norm_of(&self.field, &v.coords)
    }

    pub fn dot(&self, a: &VecD, b: &VecD) -> Elem {
        a.coords
            .iter()
            .zip(&b.coords)
            .fold(Elem::ZERO, |acc, (&x, &y)| {
                self.field.add(acc, self.field.mul(x, y))
            })
    }

    pub fn sub(&self, a: &VecD, b: &VecD) -> VecD {
        VecD {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| self.field.sub(x, y))
                .collect(),
        }
    }
}

/// ||v|| for a coordinate slice.
#[inline]
pub fn norm_of(field: &FieldSpec, coords: &[Elem]) -> Elem {
    coords
        .iter()
        .fold(Elem::ZERO, |acc, &c| field.add(acc, field.square(c)))
}

/// Level sets S_t = { x : ||x|| = t } for every t in F_q.
#[derive(Clone, Debug)]
pub struct SphereTable {
    q: usize,
    dim: usize,
    members: Vec<Vec<u32>>,
    radius: Vec<u32>,
}

impl SphereTable {
    /// Indices of the points of S_t, ascending.
    pub fn members(&self, t: Elem) -> &[u32] {
        &self.members[t.index()]
    }

    pub fn card(&self, t: Elem) -> usize {
        self.members[t.index()].len()
    }

    pub fn cards(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// ||x|| for the point with index `x`.
    #[inline]
    pub fn radius(&self, x: usize) -> Elem {
        Elem(self.radius[x])
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }
}

pub fn build_spheres(space: &Space) -> SphereTable {
    let field = space.field();
    let q = space.q();
    let mut members = vec![Vec::new(); q];
    let mut radius = Vec::with_capacity(space.size());
    let mut coords = vec![Elem::ZERO; space.dim()];
    for x in 0..space.size() {
        space.decode_into(x, &mut coords);
        let r = norm_of(field, &coords);
        members[r.index()].push(x as u32);
        radius.push(r.0);
    }
    SphereTable {
        q,
        dim: space.dim(),
        members,
        radius,
    }
}

/// |S_t| <= 2 q^{d-1} for every t.
pub fn sphere_card_bound_check(table: &SphereTable) -> bool {
    let cap = 2 * table.q.pow(table.dim as u32 - 1);
    table.members.iter().all(|m| m.len() <= cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: u64, k: u32, d: usize) -> Space {
        Space::new(Arc::new(FieldSpec::new(p, k, None).unwrap()), d).unwrap()
    }

    #[test]
    fn norm_examples() {
        let s = space(3, 1, 2);
        assert_eq!(s.norm(&VecD::zero(2)), Elem::ZERO);
        assert_eq!(s.norm(&VecD::new(vec![Elem(1), Elem(1)])), Elem(2));
        let s = space(5, 1, 2);
        assert_eq!(s.norm(&VecD::new(vec![Elem(1), Elem(2)])), Elem(0));
    }

    #[test]
    fn encoding_round_trip() {
        let s = space(5, 1, 3);
        for i in 0..s.size() {
            assert_eq!(s.encode(&s.decode(i)).unwrap(), i);
        }
        // coordinate 0 is least significant
        assert_eq!(s.encode(&VecD::new(vec![Elem(1), Elem(0), Elem(0)])).unwrap(), 1);
        assert_eq!(s.encode(&VecD::new(vec![Elem(0), Elem(1), Elem(0)])).unwrap(), 5);
        assert!(s.encode(&VecD::zero(2)).is_err());
    }

    #[test]
    fn budgets() {
        let f = Arc::new(FieldSpec::prime(3).unwrap());
        assert!(Space::new(f.clone(), 0).is_err());
        assert!(matches!(
            Space::new(f.clone(), 16),
            Err(Error::BudgetExceeded { .. })
        ));
        let s = Space::new(f, 13).unwrap();
        assert!(s.require_fourier_budget().is_err());
    }

    #[test]
    fn sphere_examples() {
        let t = build_spheres(&space(3, 1, 2));
        assert_eq!(t.cards(), vec![1, 4, 4]);
        let t = build_spheres(&space(5, 1, 2));
        assert_eq!(t.cards(), vec![9, 4, 4, 4, 4]);
        assert!(sphere_card_bound_check(&t));
        assert!(sphere_card_bound_check(&build_spheres(&space(3, 1, 2))));
        let t = build_spheres(&space(3, 1, 3));
        assert_eq!(t.total(), 27);
        assert!(sphere_card_bound_check(&t));
    }

    #[test]
    fn partition_and_cone_in_the_plane() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (7, 2)] {
            for d in [2usize, 3, 4] {
                let s = space(p, k, d);
                if s.size() > 1 << 16 {
                    continue;
                }
                let t = build_spheres(&s);
                assert_eq!(t.total(), s.size());
                assert!(sphere_card_bound_check(&t));
                if d == 2 {
                    let q = s.q();
                    let expect = if s.field().eta_minus_one() == 1 { 2 * q - 1 } else { 1 };
                    assert_eq!(t.card(Elem::ZERO), expect, "q={q}");
                }
            }
        }
    }

    #[test]
    fn norm_is_invariant_under_signs_and_permutations() {
        let s = space(7, 1, 3);
        let f = s.field().clone();
        for i in 0..s.size() {
            let v = s.decode(i);
            let n = s.norm(&v);
            let mut w = v.clone();
            w.coords.reverse();
            assert_eq!(s.norm(&w), n);
            w.coords[0] = f.neg(w.coords[0]);
            assert_eq!(s.norm(&w), n);
        }
    }
}
