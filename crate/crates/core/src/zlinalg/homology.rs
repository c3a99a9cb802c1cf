use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::{IntMatrix, JsonInt};
use super::snf::{smith_normal_form, SmithDecomposition};
use crate::{Error, Result};

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_m`
/// with `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<JsonInt>,
}

impl HomologyGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if torsion.iter().any(|d| *d < BigInt::from(2)) {
            return Err(Error::Validation("torsion coefficients must be >= 2".into()));
        }
        if torsion.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::Validation(
                "torsion coefficients must form a divisibility chain".into(),
            ));
        }
        Ok(HomologyGroup {
            free_rank,
            torsion: torsion.into_iter().map(JsonInt).collect(),
        })
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.torsion.iter().map(|x| x.0.clone()).collect()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Direct sum with `Z^k`.
    pub fn with_free_summand(mut self, k: usize) -> Self {
        self.free_rank += k;
        self
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{}", d.0)));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of the relation matrix: `Z^ngens / rowspace(relations)`.
pub fn homology_from_presentation(relations: &IntMatrix, ngens: usize) -> Result<HomologyGroup> {
    Ok(Presentation::new(relations.clone(), ngens)?.group())
}

/// A presented abelian group together with the Smith basis used to put
/// elements in canonical form.
///
/// Row vectors `x` in generator coordinates map to Smith coordinates by
/// `y = x V`; there the relations span `d_i e_i`. The canonical
/// representative reduces each torsion coordinate into `[0, d_i)`, zeroes the
/// unit coordinates and maps back through `V^-1`.
#[derive(Clone, Debug)]
pub struct Presentation {
    relations: IntMatrix,
    ngens: usize,
    snf: SmithDecomposition,
    /// Modulus per Smith coordinate; zero for free coordinates.
    moduli: Vec<BigInt>,
}

impl Presentation {
    pub fn new(relations: IntMatrix, ngens: usize) -> Result<Self> {
        if relations.cols() != ngens {
            return Err(Error::dims("relation matrix columns", ngens, relations.cols()));
        }
        let snf = smith_normal_form(&relations);
        let mut moduli = vec![BigInt::zero(); ngens];
        for (i, d) in snf.d.diagonal().into_iter().enumerate() {
            moduli[i] = d;
        }
        Ok(Presentation {
            relations,
            ngens,
            snf,
            moduli,
        })
    }

    /// The free group on `ngens` generators.
    pub fn free(ngens: usize) -> Self {
        Self::new(IntMatrix::zeros(0, ngens), ngens).expect("widths agree")
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.snf
    }

    pub fn group(&self) -> HomologyGroup {
        let free_rank = self.moduli.iter().filter(|d| d.is_zero()).count();
        let torsion = self
            .moduli
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .map(JsonInt)
            .collect();
        HomologyGroup { free_rank, torsion }
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.ngens {
            return Err(Error::dims("homology class", self.ngens, x.len()));
        }
        Ok(())
    }

    /// Coordinates of `x` in the Smith basis, torsion parts reduced.
    pub fn smith_coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_len(x)?;
        let y = self.snf.v.vec_mul(x)?;
        Ok(y.into_iter()
            .zip(&self.moduli)
            .map(|(yi, d)| if d.is_zero() { yi } else { yi.mod_floor(d) })
            .collect())
    }

    /// Canonical representative of the class of `x`, in generator
    /// coordinates.
    pub fn canonical(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.smith_coordinates(x)?;
        self.snf.v_inv.vec_mul(&y)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.smith_coordinates(x)?.iter().all(Zero::is_zero))
    }

    pub fn equivalent(&self, x: &[BigInt], y: &[BigInt]) -> Result<bool> {
        self.check_len(y)?;
        let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&diff)
    }
}

/// The gcd of the entries, with `content(0) = 0`.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// `v` lies in `m Z^r`. For `m = 0` this means `v = 0`.
pub fn divisible_by(v: &[BigInt], m: &BigInt) -> bool {
    if m.is_zero() {
        v.iter().all(Zero::is_zero)
    } else {
        v.iter().all(|x| (x % m.abs()).is_zero())
    }
}
