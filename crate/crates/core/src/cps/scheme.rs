use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rational_rank, ExactMatrix, QuadraticField, QuadraticNumber};

/// A lattice `Γ ⊂ R^d x R^m` given by an exact basis.
///
/// Columns of `basis` generate `Γ`; the top `d` rows are the physical
/// projection and the bottom `m` rows the internal projection.
#[derive(Debug, Clone)]
pub struct CutProjectScheme {
    name: String,
    d: usize,
    m: usize,
    basis: ExactMatrix,
    physical: ExactMatrix,
    internal: ExactMatrix,
}

impl CutProjectScheme {
    pub fn new(name: impl Into<String>, d: usize, m: usize, basis: ExactMatrix) -> Result<Self> {
        let k = d + m;
        if d == 0 {
            return Err(Error::Shape("physical dimension must be at least 1".into()));
        }
        if basis.rows() != k || basis.cols() != k {
            return Err(Error::Shape(format!(
                "basis must be {k}x{k} for d = {d}, m = {m}, got {}x{}",
                basis.rows(),
                basis.cols()
            )));
        }
        Ok(CutProjectScheme {
            name: name.into(),
            d,
            m,
            physical: basis.row_block(0, d),
            internal: basis.row_block(d, k),
            basis,
        })
    }

    /// `Z^d` sitting in `R^d` with no internal space.
    pub fn integer_lattice(d: usize) -> Self {
        let basis = ExactMatrix::identity(d, QuadraticField::rational());
        Self::new(format!("Z^{d}"), d, 0, basis).expect("identity basis")
    }

    /// The Fibonacci scheme in `R x R`: generators `(1, 1)` and `(φ, φ')`
    /// with `φ = (1 + sqrt 5)/2` and `φ'` its conjugate.
    pub fn fibonacci() -> Self {
        let f = QuadraticField::new(5).expect("5 is squarefree");
        let half = crate::exact::ratio(1, 2);
        let phi = QuadraticNumber::new(half.clone(), half.clone(), f).expect("phi");
        let phi_conj = QuadraticNumber::new(half.clone(), -half, f).expect("phi'");
        let one = QuadraticNumber::from_int(1, f);
        let basis = ExactMatrix::from_rows(f, vec![vec![one.clone(), phi], vec![one, phi_conj]])
            .expect("2x2 basis");
        Self::new("fibonacci", 1, 1, basis).expect("fibonacci shape")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn physical_dim(&self) -> usize {
        self.d
    }

    pub fn internal_dim(&self) -> usize {
        self.m
    }

    /// Number of lattice generators, `d + m`.
    pub fn rank(&self) -> usize {
        self.d + self.m
    }

    pub fn field(&self) -> QuadraticField {
        self.basis.field()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn physical_block(&self) -> &ExactMatrix {
        &self.physical
    }

    pub fn internal_block(&self) -> &ExactMatrix {
        &self.internal
    }

    /// The same scheme with every basis entry multiplied by `factor`.
    pub fn scaled(&self, factor: &crate::exact::Rational) -> Result<Self> {
        Self::new(format!("{}*{factor}", self.name), self.d, self.m, self.basis.scaled(factor))
    }

    pub fn point(&self, index: Vec<i64>) -> LatticePoint {
        assert_eq!(index.len(), self.rank(), "index length");
        LatticePoint {
            physical: self.physical.mul_int_vec(&index),
            internal: self.internal.mul_int_vec(&index),
            index,
        }
    }

    pub fn physical_of(&self, index: &[i64]) -> Vec<QuadraticNumber> {
        self.physical.mul_int_vec(index)
    }

    pub fn internal_of(&self, index: &[i64]) -> Vec<QuadraticNumber> {
        self.internal.mul_int_vec(index)
    }
}

/// `γ ∈ Γ` by its integer coordinates, with both projections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePoint {
    pub index: Vec<i64>,
    pub physical: Vec<QuadraticNumber>,
    pub internal: Vec<QuadraticNumber>,
}

impl LatticePoint {
    pub fn physical_f64(&self) -> Vec<f64> {
        self.physical.iter().map(QuadraticNumber::to_f64).collect()
    }

    pub fn internal_f64(&self) -> Vec<f64> {
        self.internal.iter().map(QuadraticNumber::to_f64).collect()
    }
}

/// The star map `τ(γ) = p_H(p_G|Γ^-1(γ))` on a lattice point: its internal
/// coordinates, well defined when the physical projection is injective.
pub fn star_map(p: &LatticePoint) -> Vec<QuadraticNumber> {
    p.internal.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SchemeValidation {
    /// Basis columns are independent over `R`, so `Γ` is a lattice.
    pub lattice_full_rank: bool,
    /// Physical projection is injective on `Γ`.
    pub physical_injective: bool,
    /// Each internal coordinate of `Γ` is dense in `R`. Necessary, not
    /// sufficient, for density of `p_H(Γ)` in `R^m`.
    pub internal_dense_necessary: bool,
}

impl SchemeValidation {
    pub fn ranks_ok(&self) -> bool {
        self.lattice_full_rank && self.physical_injective
    }

    /// Name of the first failed check.
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.lattice_full_rank {
            Some("lattice_full_rank")
        } else if !self.physical_injective {
            Some("physical_injective")
        } else if !self.internal_dense_necessary {
            Some("internal_dense_necessary")
        } else {
            None
        }
    }
}

/// Rank checks on the basis.
///
/// * full rank: rank over `Q(sqrt D)`, which is the real rank;
/// * injectivity: `Z^k -> R^d` is injective iff the split rational system of
///   the physical block has rank `k`;
/// * density (necessary part): the image of `Z^k` under one internal row is
///   dense in `R` iff its entries span a `Q`-space of dimension at least 2.
pub fn validate_scheme(s: &CutProjectScheme) -> SchemeValidation {
    let k = s.rank();
    let lattice_full_rank = s.basis.rank() == k;
    let physical_injective = rational_rank(&s.physical) == k;
    let internal_dense_necessary =
        (0..s.m).all(|i| rational_rank(&s.internal.row_block(i, i + 1)) >= 2);
    SchemeValidation { lattice_full_rank, physical_injective, internal_dense_necessary }
}
