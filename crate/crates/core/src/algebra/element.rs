use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// An element of a complex Lie algebra, stored by its coordinates in the
/// algebra's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    coords: Vec<Complex64>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = Complex64::new(1.0, 0.0);
        e
    }

    pub fn from_coords(coords: Vec<Complex64>) -> Self {
        Self { coords }
    }

    pub fn from_real(coords: &[f64]) -> Self {
        Self {
            coords: coords.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [Complex64] {
        &mut self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coords: self.coords.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|&v| v * c).collect(),
        }
    }

    /// Multiplication by `i`, the complex structure on the algebra.
    pub fn times_i(&self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .map(|v| Complex64::new(-v.im, v.re))
                .collect(),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: Complex64, other: &Element) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += c * *b;
        }
    }

    pub fn distance(&self, other: &Element) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Element> for f64 {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale_re(self)
    }
}

impl Mul<&Element> for Complex64 {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}
