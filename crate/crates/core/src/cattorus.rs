//! The mapping torus of Arnold's cat map `A = [[2, 1], [1, 1]]` and its
//! countable family of Bott-integrable contact forms `alpha_n`.
//!
//! The forms are `h1(t) dx + h2(t) dy` on `T^2 x R`, invariant under
//! `(x, y; t) -> (2x + y, x + y; t - 1)`. Derivatives are expanded by hand so
//! that the contact determinant identity can be checked to roundoff.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::curves::CurvePoint;
use crate::zlinalg::{homology_from_presentation, HomologyGroup, IntMatrix};
use crate::{Error, Result};

/// The monodromy and its expanding eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatConstants {
    pub a: [[i64; 2]; 2],
    pub lambda: f64,
    pub log_lambda: f64,
}

impl CatConstants {
    pub fn new() -> Self {
        let lambda = (3.0 + 5f64.sqrt()) / 2.0;
        CatConstants {
            a: CAT_MAP,
            lambda,
            log_lambda: lambda.ln(),
        }
    }

    pub fn lambda_inv(&self) -> f64 {
        (3.0 - 5f64.sqrt()) / 2.0
    }

    pub fn det(&self) -> i64 {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    /// The expanding eigenvector `((1 + sqrt 5)/2, 1)`.
    pub fn eigenvector(&self) -> [f64; 2] {
        [(1.0 + 5f64.sqrt()) / 2.0, 1.0]
    }
}

impl Default for CatConstants {
    fn default() -> Self {
        Self::new()
    }
}

pub const CAT_MAP: [[i64; 2]; 2] = [[2, 1], [1, 1]];

/// Coefficients of `alpha_n` at `t`, with exact derivatives.
pub fn alpha_n(n: u32, t: f64) -> CurvePoint {
    let sqrt5 = 5f64.sqrt();
    let k = (2.0 / 5.0f64).sqrt();
    let log_l = ((3.0 + sqrt5) / 2.0).ln();
    let w = 2.0 * PI * f64::from(n);
    let phase = FRAC_PI_4 + w * t;
    let (s, c) = phase.sin_cos();
    let grow = (log_l * t).exp();
    let decay = (-log_l * t).exp();
    let a = (sqrt5 - 1.0) / 2.0;
    let b = (sqrt5 + 1.0) / 2.0;

    let h1 = k * (s * grow - c * decay);
    let h2 = k * (a * s * grow + b * c * decay);
    // d/dt (s * grow) = (w c + L s) grow,  d/dt (c * decay) = -(w s + L c) decay
    let ds_grow = (w * c + log_l * s) * grow;
    let dc_decay = -(w * s + log_l * c) * decay;
    let dh1 = k * (ds_grow - dc_decay);
    let dh2 = k * (a * ds_grow + b * dc_decay);
    CurvePoint { h1, h2, dh1, dh2 }
}

/// Closed form of `h1 h2' - h1' h2` for `alpha_n`.
pub fn alpha_n_contact_determinant(n: u32, t: f64) -> f64 {
    let log_l = ((3.0 + 5f64.sqrt()) / 2.0).ln();
    let n = f64::from(n);
    -(2.0 / 5f64.sqrt()) * (2.0 * n * PI + (4.0 * n * PI * t).cos() * log_l)
}

/// `max |h(t) - M h(t - 1)|` for the coefficient vector `h = (h1, h2)`.
pub fn equivariance_residual(n: u32, t: f64, monodromy: [[i64; 2]; 2]) -> f64 {
    let now = alpha_n(n, t);
    let before = alpha_n(n, t - 1.0);
    let m = monodromy.map(|r| r.map(|x| x as f64));
    let e1 = now.h1 - (m[0][0] * before.h1 + m[0][1] * before.h2);
    let e2 = now.h2 - (m[1][0] * before.h1 + m[1][1] * before.h2);
    e1.abs().max(e2.abs())
}

/// Residual of the invariance condition under the cat map.
pub fn check_equivariance(n: u32, t: f64) -> f64 {
    equivariance_residual(n, t, CAT_MAP)
}

/// `(h2(1), h1(1), h2(2), h1(2), h2(3), h1(3))`, which should be the
/// Fibonacci numbers 1, 1, 2, 3, 5, 8.
pub fn fibonacci_row(n: u32) -> [f64; 6] {
    let p1 = alpha_n(n, 1.0);
    let p2 = alpha_n(n, 2.0);
    let p3 = alpha_n(n, 3.0);
    [p1.h2, p1.h1, p2.h2, p2.h1, p3.h2, p3.h1]
}

/// Relators of `pi_1(M)` over the generators `a, b, c`.
pub const CAT_RELATORS: [&str; 3] = ["[a,b]", "a c b^-1 a^-2 c^-1", "b c b^-1 a^-1 c^-1"];

pub const CAT_GENERATORS: [&str; 3] = ["a", "b", "c"];

/// Abelianized relation matrix of the cat-torus presentation: one row per
/// relator, one column per generator.
pub fn cat_h1_presentation() -> IntMatrix {
    relation_matrix(&CAT_RELATORS, &CAT_GENERATORS).expect("built-in relators parse")
}

pub fn cat_h1() -> HomologyGroup {
    homology_from_presentation(&cat_h1_presentation(), CAT_GENERATORS.len())
        .expect("presentation is square")
}

pub fn relation_matrix(relators: &[&str], generators: &[&str]) -> Result<IntMatrix> {
    let rows = relators
        .iter()
        .map(|w| abelianize(w, generators))
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(&rows, generators.len())
}

/// Exponent sums of a group word.
///
/// Words are sequences of generator names with optional integer powers
/// (`a`, `b^-1`, `a^2`) and commutators `[u, v]` of subwords. Whitespace
/// between tokens is optional when names are single letters.
pub fn abelianize(word: &str, generators: &[&str]) -> Result<Vec<i64>> {
    let mut parser = WordParser {
        src: word,
        pos: 0,
        generators,
    };
    let sums = parser.word()?;
    parser.skip_ws();
    if parser.pos != word.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(sums)
}

struct WordParser<'a> {
    src: &'a str,
    pos: usize,
    generators: &'a [&'a str],
}

impl WordParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::field(
            "relator",
            format!("{what} at byte {} of {:?}", self.pos, self.src),
        )
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn word(&mut self) -> Result<Vec<i64>> {
        let mut sums = vec![0; self.generators.len()];
        loop {
            self.skip_ws();
            match self.rest().chars().next() {
                None | Some(',') | Some(']') => return Ok(sums),
                Some('[') => {
                    self.pos += 1;
                    let u = self.word()?;
                    self.expect(',')?;
                    let v = self.word()?;
                    self.expect(']')?;
                    // [u, v] = u v u^-1 v^-1 abelianizes to zero, but the
                    // subwords are still parsed for well-formedness.
                    let _ = (u, v);
                    let _ = self.power()?;
                }
                Some(_) => {
                    let g = self.generator()?;
                    let p = self.power()?;
                    sums[g] += p;
                }
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn generator(&mut self) -> Result<usize> {
        let rest = self.rest();
        let best = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_empty() && rest.starts_with(*g))
            .max_by_key(|(_, g)| g.len());
        match best {
            Some((i, g)) => {
                self.pos += g.len();
                Ok(i)
            }
            None => Err(self.error("unknown generator")),
        }
    }

    fn power(&mut self) -> Result<i64> {
        self.skip_ws();
        if !self.rest().starts_with('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        let p = rest[..len]
            .parse::<i64>()
            .map_err(|_| self.error("bad exponent"))?;
        self.pos += len;
        Ok(p)
    }
}
